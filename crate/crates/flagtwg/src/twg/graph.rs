//! Tangential weight graphs: signed round vertices for isolated fixed
//! points, integer-labelled square vertices for fixed surfaces, and
//! weighted edges for exceptional spheres.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::Neg;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use super::TwgError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn of(x: i64) -> Option<Sign> {
        match x.signum() {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoundVertex {
    pub id: String,
    pub sign: Sign,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SquareVertex {
    pub id: String,
    pub euler: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub a: String,
    pub b: String,
    pub weight: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawGraph")]
pub struct WeightGraph {
    round: Vec<RoundVertex>,
    square: Vec<SquareVertex>,
    edges: Vec<Edge>,
}

// deserialisation goes through validation
#[derive(Deserialize)]
struct RawGraph {
    round: Vec<RoundVertex>,
    square: Vec<SquareVertex>,
    edges: Vec<Edge>,
}

impl TryFrom<RawGraph> for WeightGraph {
    type Error = TwgError;
    fn try_from(r: RawGraph) -> Result<Self, TwgError> {
        WeightGraph::new(r.round, r.square, r.edges)
    }
}

impl WeightGraph {
    pub fn new(round: Vec<RoundVertex>, square: Vec<SquareVertex>, edges: Vec<Edge>) -> Result<Self, TwgError> {
        let g = WeightGraph { round, square, edges };
        g.validate()?;
        Ok(g)
    }

    pub fn empty() -> Self {
        WeightGraph { round: vec![], square: vec![], edges: vec![] }
    }

    fn validate(&self) -> Result<(), TwgError> {
        let bad = |m: String| Err(TwgError::InvalidGraph(m));
        let mut ids = BTreeSet::new();
        for id in self.round.iter().map(|v| &v.id).chain(self.square.iter().map(|v| &v.id)) {
            if !ids.insert(id) {
                return bad(format!("duplicate vertex id {id}"));
            }
        }
        let round: BTreeSet<&String> = self.round.iter().map(|v| &v.id).collect();
        let mut degree: BTreeMap<&String, usize> = BTreeMap::new();
        for e in &self.edges {
            if !round.contains(&e.a) || !round.contains(&e.b) {
                return bad(format!("edge {}-{} must join round vertices", e.a, e.b));
            }
            if e.a == e.b {
                return bad(format!("loop at {}", e.a));
            }
            if e.weight < 2 {
                return bad(format!("edge {}-{} has weight {} < 2", e.a, e.b, e.weight));
            }
            for v in [&e.a, &e.b] {
                *degree.entry(v).or_default() += 1;
            }
        }
        if let Some((v, _)) = degree.iter().find(|(_, &d)| d > 2) {
            return bad(format!("more than two edges at {v}"));
        }
        Ok(())
    }

    pub fn round(&self) -> &[RoundVertex] {
        &self.round
    }

    pub fn square(&self) -> &[SquareVertex] {
        &self.square
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn sign_of(&self, id: &str) -> Option<Sign> {
        self.round.iter().find(|v| v.id == id).map(|v| v.sign)
    }

    /// (neighbour, weight) pairs at a round vertex, sorted.
    pub fn incident(&self, id: &str) -> Vec<(String, u32)> {
        let mut out: Vec<(String, u32)> = self
            .edges
            .iter()
            .filter_map(|e| {
                if e.a == id {
                    Some((e.b.clone(), e.weight))
                } else if e.b == id {
                    Some((e.a.clone(), e.weight))
                } else {
                    None
                }
            })
            .collect();
        out.sort_by(|x, y| (x.1, &x.0).cmp(&(y.1, &y.0)));
        out
    }

    pub fn incident_weights(&self, id: &str) -> Vec<u32> {
        self.incident(id).into_iter().map(|(_, w)| w).collect()
    }

    pub fn max_weight(&self) -> u32 {
        self.edges.iter().map(|e| e.weight).max().unwrap_or(0)
    }

    /// Fixed-point Euler characteristic: one per point, two per sphere.
    pub fn euler_count(&self) -> usize {
        self.round.len() + 2 * self.square.len()
    }

    /// Copy with every vertex id passed through `f`.
    pub fn relabel(&self, f: impl Fn(&str) -> String) -> WeightGraph {
        WeightGraph {
            round: self.round.iter().map(|v| RoundVertex { id: f(&v.id), sign: v.sign }).collect(),
            square: self.square.iter().map(|v| SquareVertex { id: f(&v.id), euler: v.euler }).collect(),
            edges: self.edges.iter().map(|e| Edge { a: f(&e.a), b: f(&e.b), weight: e.weight }).collect(),
        }
    }

    /// Label-invariant form: equal iff the graphs are isomorphic.
    pub fn canonical_form(&self) -> CanonicalForm {
        let mut squares: Vec<i64> = self.square.iter().map(|v| v.euler).collect();
        squares.sort_unstable();

        // refine by (sign, incident weights) and only permute inside classes
        let key = |v: &RoundVertex| (v.sign, self.incident_weights(&v.id));
        let mut classes: BTreeMap<_, Vec<usize>> = BTreeMap::new();
        for (i, v) in self.round.iter().enumerate() {
            classes.entry(key(v)).or_default().push(i);
        }
        let signs: Vec<Sign> = classes
            .iter()
            .flat_map(|((s, _), members)| std::iter::repeat_n(*s, members.len()))
            .collect();
        let index: BTreeMap<&String, usize> = self.round.iter().enumerate().map(|(i, v)| (&v.id, i)).collect();

        let mut best: Option<Vec<(usize, usize, u32)>> = None;
        let per_class = classes.values().map(|m| m.iter().copied().permutations(m.len()));
        for choice in per_class.multi_cartesian_product() {
            let order: Vec<usize> = choice.into_iter().flatten().collect();
            let mut position = vec![0; order.len()];
            for (pos, &v) in order.iter().enumerate() {
                position[v] = pos;
            }
            let mut edges: Vec<(usize, usize, u32)> = self
                .edges
                .iter()
                .map(|e| {
                    let (x, y) = (position[index[&e.a]], position[index[&e.b]]);
                    (x.min(y), x.max(y), e.weight)
                })
                .collect();
            edges.sort_unstable();
            if best.as_ref().is_none_or(|b| edges < *b) {
                best = Some(edges);
            }
        }
        // no round vertices: multi_cartesian_product of nothing yields nothing
        let edges = best.unwrap_or_default();
        CanonicalForm { squares, signs, edges }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    squares: Vec<i64>,
    signs: Vec<Sign>,
    edges: Vec<(usize, usize, u32)>,
}

pub fn graphs_isomorphic(g1: &WeightGraph, g2: &WeightGraph) -> bool {
    g1.round.len() == g2.round.len()
        && g1.square.len() == g2.square.len()
        && g1.edges.len() == g2.edges.len()
        && g1.canonical_form() == g2.canonical_form()
}

/// Equivariant connected sum at isolated points of opposite sign with equal
/// incident weights. Edges of equal weight at v1 and v2 are spliced into
/// one edge between their far endpoints; vertex ids get prefixes `a/`, `b/`.
pub fn connected_sum(g1: &WeightGraph, v1: &str, g2: &WeightGraph, v2: &str) -> Result<WeightGraph, TwgError> {
    let (s1, s2) = match (g1.sign_of(v1), g2.sign_of(v2)) {
        (Some(s1), Some(s2)) => (s1, s2),
        _ => return Err(TwgError::InvalidGraph("gluing points must be round vertices".into())),
    };
    if s1 == s2 {
        return Err(TwgError::GluingMismatch("gluing points must have opposite signs".into()));
    }
    let (in1, in2) = (g1.incident(v1), g2.incident(v2));
    if in1.iter().map(|x| x.1).collect_vec() != in2.iter().map(|x| x.1).collect_vec() {
        return Err(TwgError::GluingMismatch("incident weights differ".into()));
    }
    let left = g1.relabel(|id| format!("a/{id}"));
    let right = g2.relabel(|id| format!("b/{id}"));
    let (v1, v2) = (format!("a/{v1}"), format!("b/{v2}"));

    let round = left.round.iter().chain(&right.round).filter(|v| v.id != v1 && v.id != v2).cloned().collect();
    let square = left.square.iter().chain(&right.square).cloned().collect();
    let mut edges: Vec<Edge> = left
        .edges
        .iter()
        .chain(&right.edges)
        .filter(|e| e.a != v1 && e.b != v1 && e.a != v2 && e.b != v2)
        .cloned()
        .collect();
    // both incidence lists are sorted by (weight, neighbour)
    for ((n1, w), (n2, _)) in in1.iter().zip(&in2) {
        edges.push(Edge { a: format!("a/{n1}"), b: format!("b/{n2}"), weight: *w });
    }
    WeightGraph::new(round, square, edges)
}

/// The graph of the circle action Hir(q; a, b) on a Hirzebruch surface.
/// Weight-1 edges are dropped since they are not exceptional spheres.
pub fn hirzebruch_graph(q: i64, a: i64, b: i64) -> Result<WeightGraph, TwgError> {
    if q < 0 {
        return Err(TwgError::BadParameters(format!("q = {q} must be nonnegative")));
    }
    if (a, b) == (1, 0) {
        return WeightGraph::new(
            vec![],
            vec![SquareVertex { id: "S13".into(), euler: q }, SquareVertex { id: "S24".into(), euler: -q }],
            vec![],
        );
    }
    if a == 0 || b == 0 || gcd(a, b) != 1 || a + q * b == 0 {
        return Err(TwgError::BadParameters(format!("Hir({q};{a},{b})")));
    }
    let s1 = Sign::of(a * b).expect("nonzero");
    let s4 = Sign::of(a * b + q * b * b).expect("a + qb nonzero");
    let round = vec![
        RoundVertex { id: "p1".into(), sign: s1 },
        RoundVertex { id: "p2".into(), sign: -s1 },
        RoundVertex { id: "p3".into(), sign: -s4 },
        RoundVertex { id: "p4".into(), sign: s4 },
    ];
    let edges = [("p1", "p2", a), ("p1", "p3", b), ("p2", "p4", b), ("p3", "p4", a + q * b)]
        .into_iter()
        .filter(|(_, _, w)| w.abs() >= 2)
        .map(|(x, y, w)| Edge { a: x.into(), b: y.into(), weight: w.unsigned_abs() as u32 })
        .collect();
    WeightGraph::new(round, vec![], edges)
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}
