//! Partitions as SL(2)-representations: weights, Anosov types, invariant
//! symplectic forms, SO(2)-weight bases, and the Cartan projection.

use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use num_traits::Zero;
use thiserror::Error;

use crate::flags::{ExactMatrix, GaussianRational, SymplecticForm};
use crate::weyl::RootSubset;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Sl2Error {
    #[error("dimension must be at least 1")]
    ZeroDimension,
    #[error("invalid partition: {0}")]
    BadPartition(String),
    #[error("partition of odd total {0} cannot carry a symplectic form")]
    OddTotal(usize),
    #[error("partition does not admit an invariant symplectic form")]
    NotSymplectic,
    #[error("matrix is singular")]
    Singular,
    #[error("matrix must be square and nonempty")]
    NotSquare,
    #[error("SVD reconstruction error {0:e} exceeds tolerance")]
    Reconstruction(f64),
}

/// Non-increasing positive parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self, Sl2Error> {
        if parts.is_empty() || parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Sl2Error::BadPartition(format!("{parts:?}")));
        }
        Ok(Partition { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn total(&self) -> usize {
        self.parts.iter().sum()
    }

    /// All partitions of n in reverse lexicographic order.
    pub fn all_of(n: usize) -> Vec<Partition> {
        fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition { parts: cur.clone() });
                return;
            }
            for p in (1..=rest.min(max)).rev() {
                cur.push(p);
                go(rest - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if n > 0 {
            go(n, n, &mut Vec::new(), &mut out);
        }
        out
    }
}

impl FromStr for Partition {
    type Err = Sl2Error;
    fn from_str(s: &str) -> Result<Self, Sl2Error> {
        let parts = s
            .trim_matches(|c| c == '(' || c == ')')
            .split(',')
            .map(|t| t.trim().parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| Sl2Error::BadPartition(s.to_string()))?;
        Partition::new(parts)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// d-1, d-3, ..., 1-d.
pub fn irreducible_weights(d: usize) -> Result<Vec<i64>, Sl2Error> {
    if d == 0 {
        return Err(Sl2Error::ZeroDimension);
    }
    let top = d as i64 - 1;
    Ok((0..d as i64).map(|k| top - 2 * k).collect())
}

/// Weights of all parts, sorted descending.
pub fn partition_weights(p: &Partition) -> Vec<i64> {
    let mut w: Vec<i64> = p
        .parts
        .iter()
        .flat_map(|&d| irreducible_weights(d).expect("parts are positive"))
        .collect();
    w.sort_unstable_by(|a, b| b.cmp(a));
    w
}

/// {j : w_j != w_{j+1}} for the type-A simple roots of SL(n).
pub fn anosov_type(p: &Partition) -> RootSubset {
    let w = partition_weights(p);
    (1..w.len()).filter(|&j| w[j - 1] != w[j]).collect()
}

/// Anosov type in Sp(2n) coordinates: alpha_j = e_j - e_{j+1} for j < n and
/// alpha_n = 2 e_n, evaluated on the first n weights.
pub fn anosov_type_symplectic(p: &Partition) -> Result<RootSubset, Sl2Error> {
    if !admits_symplectic_form(p)? {
        return Err(Sl2Error::NotSymplectic);
    }
    let w = partition_weights(p);
    let n = w.len() / 2;
    let mut out: RootSubset = (1..n).filter(|&j| w[j - 1] != w[j]).collect();
    if w[n - 1] != 0 {
        out.insert(n);
    }
    Ok(out)
}

/// Every odd part appears an even number of times.
pub fn admits_symplectic_form(p: &Partition) -> Result<bool, Sl2Error> {
    if p.total() % 2 == 1 {
        return Err(Sl2Error::OddTotal(p.total()));
    }
    Ok(p
        .parts
        .iter()
        .filter(|&&d| d % 2 == 1)
        .all(|&d| p.parts.iter().filter(|&&e| e == d).count() % 2 == 0))
}

/// Weight vectors of a partition, grouped by part in part order and by
/// descending weight inside each part. The vector of weight w in a part of
/// dimension d is u^a v^(d-1-a) with a = (w + d - 1)/2, where u = X - iY and
/// v = X + iY.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedBasis {
    labels: Vec<String>,
    weights: Vec<i64>,
    part_of: Vec<usize>,
    dims: Vec<usize>,
}

impl WeightedBasis {
    pub fn from_weights(labels: Vec<String>, weights: Vec<i64>) -> Self {
        let n = weights.len();
        WeightedBasis { labels, weights, part_of: (0..n).collect(), dims: vec![1; n] }
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// Index of the part the k-th vector belongs to.
    pub fn part_of(&self, k: usize) -> usize {
        self.part_of[k]
    }

    pub fn same_parity(&self) -> bool {
        self.weights.windows(2).all(|w| (w[0] - w[1]) % 2 == 0)
    }

    fn exponent(&self, k: usize) -> usize {
        let m = self.dims[k] as i64 - 1;
        ((self.weights[k] + m) / 2) as usize
    }
}

fn weight_label(letter: &str, w: i64) -> String {
    format!("{letter}_{w}")
}

pub fn so2_weight_basis(p: &Partition) -> WeightedBasis {
    let nontrivial = p.parts.iter().filter(|&&d| d > 1).count();
    let trivial = p.parts.len() - nontrivial;
    let letters = ["a", "b", "c", "d", "e", "f"];
    let letter_for = |i: usize| -> String {
        if nontrivial <= letters.len() {
            letters[letters.len() - nontrivial + i].to_string()
        } else {
            format!("v{}", i + 1)
        }
    };
    // the single f-part owns weight 0 when its dimension is odd
    let f_has_zero = nontrivial > 0 && p.parts[nontrivial - 1] % 2 == 1;

    let mut basis = WeightedBasis { labels: vec![], weights: vec![], part_of: vec![], dims: vec![] };
    for (idx, &d) in p.parts.iter().enumerate() {
        let ws = irreducible_weights(d).expect("positive part");
        for w in ws {
            let label = if d > 1 {
                weight_label(&letter_for(idx), w)
            } else {
                let t = idx - nontrivial;
                match trivial {
                    1 if !f_has_zero => weight_label("f", 0),
                    2 => [weight_label("X", 2), weight_label("Y", 2)][t].clone(),
                    _ => weight_label(&format!("z{}", t + 1), 0),
                }
            };
            basis.labels.push(label);
            basis.weights.push(w);
            basis.part_of.push(idx);
            basis.dims.push(d);
        }
    }
    basis
}

fn binomial(n: usize, k: usize) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i as i64 + 1))
}

/// The transvectant pairing on Sym^m: <u^a v^(m-a), u^b v^(m-b)> =
/// (-1)^a / C(m, a) when a + b = m. Skew for odd m, symmetric for even m.
fn transvectant(m: usize, a: usize, b: usize) -> GaussianRational {
    if a + b != m {
        return GaussianRational::zero();
    }
    let sign = if a.is_multiple_of(2) { 1 } else { -1 };
    GaussianRational::ratio(sign, binomial(m, a))
}

/// An SL(2)-invariant symplectic form in the weight basis: the transvectant
/// on each even-dimensional part, and on each consecutive pair of equal odd
/// parts the symmetric transvectant made skew across the pair.
pub fn invariant_symplectic_form(p: &Partition) -> Result<SymplecticForm, Sl2Error> {
    if !admits_symplectic_form(p)? {
        return Err(Sl2Error::NotSymplectic);
    }
    let basis = so2_weight_basis(p);
    let n = basis.len();
    // partner[idx] = part paired with idx (itself for even parts)
    let mut partner = vec![usize::MAX; p.parts.len()];
    for (idx, &d) in p.parts.iter().enumerate() {
        if d % 2 == 0 {
            partner[idx] = idx;
        } else if partner[idx] == usize::MAX {
            let mate = (idx + 1..p.parts.len())
                .find(|&j| p.parts[j] == d && partner[j] == usize::MAX)
                .expect("odd parts come in pairs");
            partner[idx] = mate;
            partner[mate] = idx;
        }
    }
    let mut gram = ExactMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let (pi, pj) = (basis.part_of[i], basis.part_of[j]);
            if partner[pi] != pj {
                continue;
            }
            let m = basis.dims[i] - 1;
            let t = transvectant(m, basis.exponent(i), basis.exponent(j));
            gram[(i, j)] = match pi.cmp(&pj) {
                std::cmp::Ordering::Equal => t,
                std::cmp::Ordering::Less => -t,
                std::cmp::Ordering::Greater => t,
            };
        }
    }
    SymplecticForm::new(gram).map_err(|_| Sl2Error::NotSymplectic)
}

/// Logarithms of the singular values, descending. The only floating-point
/// computation in the crate.
pub fn cartan_projection(m: &DMatrix<f64>) -> Result<Vec<f64>, Sl2Error> {
    if m.nrows() != m.ncols() || m.nrows() == 0 {
        return Err(Sl2Error::NotSquare);
    }
    let svd = m.clone().svd(true, true);
    let (u, v_t) = (svd.u.as_ref().expect("requested"), svd.v_t.as_ref().expect("requested"));
    let rebuilt = u * DMatrix::from_diagonal(&svd.singular_values) * v_t;
    let err = (m - rebuilt).norm();
    if err > 1e-9 * m.norm().max(1.0) {
        return Err(Sl2Error::Reconstruction(err));
    }
    let mut s: Vec<f64> = svd.singular_values.iter().copied().collect();
    s.sort_by(|a, b| b.total_cmp(a));
    let largest = s[0];
    if s.last().is_some_and(|&x| x <= largest * f64::EPSILON * s.len() as f64) {
        return Err(Sl2Error::Singular);
    }
    Ok(s.into_iter().map(f64::ln).collect())
}
