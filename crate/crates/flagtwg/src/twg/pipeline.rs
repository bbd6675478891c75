//! From a partition and a flag variety to the ambient and fibre weight
//! graphs.

use std::collections::BTreeMap;

use super::tangent::{
    difference_matrix, exceptional_sphere_targets, fixed_flags, fixed_surface_euler, flag_key, isotropic_sphere_limit,
    isotropic_tangent, point_id, sign_of_fixed_point, surface_id,
};
use super::{CircleGroup, Edge, RoundVertex, SquareVertex, TwgError, WeightGraph};
use crate::flags::{Signature, SymplecticForm};
use crate::sl2reps::{invariant_symplectic_form, so2_weight_basis, Partition, WeightedBasis};
use crate::weyl::{Family, PositionPoset, RootSubset, RootSystem};

/// Which three-dimensional flag variety of the ambient space to act on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FlagKind {
    /// complete flags in C^3
    Full,
    /// lines in C^4
    Proj,
    /// Lagrangian planes in (C^4, omega)
    Lag,
}

impl std::str::FromStr for FlagKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "full" => Ok(FlagKind::Full),
            "proj" => Ok(FlagKind::Proj),
            "lag" => Ok(FlagKind::Lag),
            _ => Err(format!("unknown flag kind {s:?}")),
        }
    }
}

impl FlagKind {
    fn signature(self, n: usize) -> Result<Signature, TwgError> {
        Ok(match self {
            FlagKind::Full => Signature::full(n),
            FlagKind::Proj => Signature::new(vec![1], n)?,
            FlagKind::Lag => Signature::new(vec![n / 2], n)?,
        })
    }

    /// c1 of the variety as a multiple of the hyperplane class
    fn c1_coefficient(self, n: usize) -> Option<i64> {
        match self {
            FlagKind::Full => None,
            FlagKind::Proj => Some(n as i64),
            FlagKind::Lag => Some(n as i64 / 2 + 1),
        }
    }
}

/// Number of Schubert cells, |W / W_eta|, of the flag variety on C^n.
pub fn schubert_cell_count(kind: FlagKind, n: usize) -> Result<usize, TwgError> {
    let bad = |e: crate::weyl::WeylError| TwgError::Unsupported(e.to_string());
    let (system, eta): (RootSystem, RootSubset) = match kind {
        FlagKind::Full => {
            let s = RootSystem::new(Family::A, n - 1).map_err(bad)?;
            let all = s.all_roots();
            (s, all)
        }
        FlagKind::Proj => (RootSystem::new(Family::A, n - 1).map_err(bad)?, [1].into()),
        FlagKind::Lag => (RootSystem::new(Family::C, n / 2).map_err(bad)?, [n / 2].into()),
    };
    let all = system.all_roots();
    Ok(PositionPoset::new(system, &all, &eta).map_err(bad)?.len())
}

#[derive(Debug, Clone)]
pub struct CaseResult {
    pub partition: Partition,
    pub kind: FlagKind,
    pub group: CircleGroup,
    pub basis: WeightedBasis,
    pub ambient: WeightGraph,
    /// tangent weights of the flag variety at each isolated fixed point
    pub ambient_tangent: BTreeMap<String, Vec<i64>>,
    pub fiber: WeightGraph,
    pub fiber_tangent: BTreeMap<String, Vec<i64>>,
}

impl CaseResult {
    /// Isolated points plus two per fixed sphere.
    pub fn euler_count(&self) -> usize {
        self.ambient.euler_count()
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Two directions with a common divisor m >= 2 would make the Z/m-fixed set
/// at least two-dimensional, which the graph cannot record.
fn check_isotropy_weights(id: &str, weights: &[i64]) -> Result<(), TwgError> {
    for (i, &x) in weights.iter().enumerate() {
        for &y in &weights[i + 1..] {
            if gcd(x, y) >= 2 {
                return Err(TwgError::Unsupported(format!("weights {x} and {y} at {id} share a divisor")));
            }
        }
    }
    Ok(())
}

pub fn run_case(partition: &Partition, kind: FlagKind, group: CircleGroup) -> Result<CaseResult, TwgError> {
    let basis = so2_weight_basis(partition);
    let n = basis.len();
    let expected = match kind {
        FlagKind::Full => 3,
        FlagKind::Proj | FlagKind::Lag => 4,
    };
    if n != expected {
        return Err(TwgError::Unsupported(format!("{kind:?} flags need a partition of {expected}")));
    }
    let sig = kind.signature(n)?;
    let omega = match kind {
        FlagKind::Lag => Some(invariant_symplectic_form(partition)?),
        _ => None,
    };
    let (ambient, ambient_tangent) = ambient_graph(&basis, &sig, kind, group, omega.as_ref())?;
    let (fiber, fiber_tangent) = ambient_to_fiber_graph(&ambient, group, &ambient_tangent)?;
    Ok(CaseResult { partition: partition.clone(), kind, group, basis, ambient, ambient_tangent, fiber, fiber_tangent })
}

type Tangents = BTreeMap<String, Vec<i64>>;

fn ambient_graph(
    basis: &WeightedBasis,
    sig: &Signature,
    kind: FlagKind,
    group: CircleGroup,
    omega: Option<&SymplecticForm>,
) -> Result<(WeightGraph, Tangents), TwgError> {
    let locus = fixed_flags(basis, sig, group, omega)?;
    let by_key: BTreeMap<Vec<Vec<usize>>, String> =
        locus.isolated.iter().map(|p| (flag_key(&p.order, sig), point_id(basis, &p.order, sig))).collect();

    let mut round = Vec::new();
    let mut tangents = BTreeMap::new();
    let mut edges: BTreeMap<(String, String), u32> = BTreeMap::new();
    let mut add_edge = |a: &String, b: &String, w: u32| -> Result<(), TwgError> {
        let key = if a < b { (a.clone(), b.clone()) } else { (b.clone(), a.clone()) };
        match edges.insert(key, w) {
            Some(old) if old != w => Err(TwgError::Unsupported(format!("sphere {a}-{b} seen with weights {old} and {w}"))),
            _ => Ok(()),
        }
    };

    for p in &locus.isolated {
        let id = point_id(basis, &p.order, sig);
        let mut weights = match omega {
            None => difference_matrix(basis, &p.order, sig, group)?.values(),
            Some(w) => isotropic_tangent(basis, &p.order, sig, w, group)?.weights(),
        };
        weights.sort_unstable();
        let sign = sign_of_fixed_point(&weights)?;
        check_isotropy_weights(&id, &weights)?;

        match omega {
            None => {
                for t in exceptional_sphere_targets(basis, &p.order, sig, group)? {
                    let target = by_key
                        .get(&flag_key(&t.swapped, sig))
                        .ok_or_else(|| TwgError::Unsupported(format!("sphere from {id} ends off the fixed set")))?;
                    add_edge(&id, target, t.weight)?;
                }
            }
            Some(w) => {
                if sig.dims().len() != 1 {
                    return Err(TwgError::Unsupported("isotropic flags with several slots".into()));
                }
                let tangent = isotropic_tangent(basis, &p.order, sig, w, group)?;
                for (&wt, (cells, kernel)) in &tangent.blocks {
                    if wt.abs() < 2 || kernel.cols() == 0 {
                        continue;
                    }
                    if kernel.cols() > 1 {
                        return Err(TwgError::Unsupported(format!("weight {wt} repeated at {id}")));
                    }
                    let span = isotropic_sphere_limit(&p.order, sig.top(), cells, kernel)
                        .ok_or_else(|| TwgError::Unsupported(format!("sphere from {id} has no weight-vector limit")))?;
                    let target = by_key
                        .iter()
                        .find(|(k, _)| k[0] == span)
                        .map(|(_, v)| v)
                        .ok_or_else(|| TwgError::Unsupported(format!("sphere from {id} ends off the fixed set")))?;
                    add_edge(&id, target, wt.unsigned_abs() as u32)?;
                }
            }
        }
        round.push(RoundVertex { id: id.clone(), sign });
        tangents.insert(id, weights);
    }

    let mut square = Vec::new();
    if !locus.surfaces.is_empty() {
        let c1 = kind
            .c1_coefficient(basis.len())
            .ok_or_else(|| TwgError::Unsupported("fixed surfaces in a complete flag variety".into()))?;
        let e = fixed_surface_euler(c1, 1, 1)?;
        for s in &locus.surfaces {
            square.push(SquareVertex { id: surface_id(basis, s, sig), euler: e });
        }
    }
    let edges = edges.into_iter().map(|((a, b), weight)| Edge { a, b, weight }).collect();
    Ok((WeightGraph::new(round, square, edges)?, tangents))
}

/// Restrict the ambient graph to the fibre over the hyperbolic plane. At
/// each point one tangent weight is the normal direction, of weight h for
/// the hyperbolic plane; it is removed and the fibre keeps the ambient sign.
/// For SO(2) the weight-2 spheres meet the fibre transversally and drop
/// out; for PSO(2) every sphere stays. Fixed spheres get Euler numbers +e
/// and -e in order of their ids.
pub fn ambient_to_fiber_graph(
    ambient: &WeightGraph,
    group: CircleGroup,
    tangent: &BTreeMap<String, Vec<i64>>,
) -> Result<(WeightGraph, Tangents), TwgError> {
    let h = group.hyperbolic_weight();
    let mut fiber_tangent = BTreeMap::new();
    for v in ambient.round() {
        let missing = || TwgError::MissingHyperbolicWeight { vertex: v.id.clone(), weight: h };
        let mut ws = tangent.get(&v.id).cloned().ok_or_else(missing)?;
        let at = ws.iter().position(|&w| w == h).or_else(|| ws.iter().position(|&w| w == -h)).ok_or_else(missing)?;
        ws.remove(at);
        if sign_of_fixed_point(&ws)? != v.sign {
            // orient the fibre so it agrees with the ambient orientation
            if let Some(w) = ws.first_mut() {
                *w = -*w;
            }
        }
        ws.sort_unstable();
        fiber_tangent.insert(v.id.clone(), ws);
    }

    let edges = ambient
        .edges()
        .iter()
        .filter(|e| group == CircleGroup::PSO2 || e.weight as i64 != h)
        .cloned()
        .collect();

    let mut squares: Vec<SquareVertex> = ambient.square().to_vec();
    squares.sort_by(|a, b| a.id.cmp(&b.id));
    for (k, s) in squares.iter_mut().enumerate() {
        let e = s.euler.abs();
        s.euler = if k % 2 == 0 { e } else { -e };
    }
    let round = ambient.round().iter().map(|v| RoundVertex { id: v.id.clone(), sign: v.sign }).collect();
    Ok((WeightGraph::new(round, squares, edges)?, fiber_tangent))
}
