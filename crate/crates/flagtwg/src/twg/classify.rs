//! Matching fibre graphs against Hirzebruch-surface actions and their
//! equivariant connected sums.

use super::graph::{connected_sum, graphs_isomorphic, hirzebruch_graph, WeightGraph};
use super::TwgError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub model: String,
    pub diffeotype: String,
    /// signature and Euler characteristic of the model
    pub signature: i64,
    pub euler: i64,
}

#[derive(Debug, Clone)]
struct Model {
    name: String,
    diffeotype: String,
    signature: i64,
    euler: i64,
    graph: WeightGraph,
}

fn hirzebruch_diffeotype(q: i64) -> &'static str {
    if q % 2 == 0 {
        "S²×S²"
    } else {
        "ℂP²#ℂP̄²"
    }
}

/// Hirzebruch actions Hir(q; a, b) with |a| <= m + 1, |b| <= m, q <= 2m,
/// ordered by (q, |a|, |b|, b < 0, a < 0).
pub fn catalogue(m: u32) -> Vec<(i64, i64, i64, WeightGraph)> {
    let m = m as i64;
    let mut params = Vec::new();
    for q in 0..=2 * m {
        for a in -(m + 1)..=m + 1 {
            for b in -m..=m {
                if let Ok(g) = hirzebruch_graph(q, a, b) {
                    params.push((q, a, b, g));
                }
            }
        }
    }
    params.sort_by_key(|&(q, a, b, _)| (q, a.abs(), b.abs(), b < 0, a < 0));
    params
}

fn models(max_weight: u32) -> Vec<Model> {
    catalogue(max_weight.max(1))
        .into_iter()
        .map(|(q, a, b, graph)| Model {
            name: format!("Hir({q};{a},{b})"),
            diffeotype: hirzebruch_diffeotype(q).to_string(),
            signature: 0,
            euler: 4,
            graph,
        })
        .collect()
}

fn found(m: &Model) -> Classification {
    Classification { model: m.name.clone(), diffeotype: m.diffeotype.clone(), signature: m.signature, euler: m.euler }
}

/// Find a catalogue model with the same labelled graph: a single Hirzebruch
/// action for graphs of Euler characteristic 4, or a connected sum of two of
/// them for Euler characteristic 6.
pub fn classify_fiber(g: &WeightGraph) -> Result<Classification, TwgError> {
    let cat = models(g.max_weight());
    match g.euler_count() {
        4 => cat.iter().find(|m| graphs_isomorphic(&m.graph, g)).map(found).ok_or(TwgError::NoMatch),
        6 => {
            for (i, m1) in cat.iter().enumerate() {
                for m2 in &cat[i..] {
                    for v1 in m1.graph.round() {
                        for v2 in m2.graph.round() {
                            let Ok(sum) = connected_sum(&m1.graph, &v1.id, &m2.graph, &v2.id) else {
                                continue;
                            };
                            if graphs_isomorphic(&sum, g) {
                                return Ok(Classification {
                                    model: format!("{}#{}", m1.name, m2.name),
                                    diffeotype: format!("({})#({})", m1.diffeotype, m2.diffeotype),
                                    signature: m1.signature + m2.signature,
                                    euler: m1.euler + m2.euler - 2,
                                });
                            }
                        }
                    }
                }
            }
            Err(TwgError::NoMatch)
        }
        _ => Err(TwgError::NoMatch),
    }
}

/// Hirzebruch's congruence for an almost complex 4-manifold,
/// sigma = -chi mod 4 (so CP^2 with sigma 1, chi 3 passes). False means no
/// almost complex structure exists.
pub fn check_almost_complex_obstruction(signature: i64, euler: i64) -> bool {
    (signature + euler).rem_euclid(4) == 0
}
