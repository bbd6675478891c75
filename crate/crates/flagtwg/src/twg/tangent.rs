//! Fixed flags of a circle acting diagonally on a weight basis, and the
//! tangent weights at them read off difference matrices.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::{CircleGroup, TwgError};
use crate::flags::{ExactMatrix, GaussianRational, Signature, SymplecticForm};
use crate::sl2reps::WeightedBasis;

/// Entries (w_i - w_j)/divisor over the chart index set of a signature, at
/// the invariant flag whose basis is `order` (basis indices).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DifferenceMatrix {
    pub row_labels: Vec<String>,
    pub col_labels: Vec<String>,
    /// entries[i][j] is None outside the chart index set
    pub entries: Vec<Vec<Option<i64>>>,
}

impl DifferenceMatrix {
    pub fn values(&self) -> Vec<i64> {
        self.entries.iter().flatten().flatten().copied().collect()
    }

    /// (row, col, value) for every present entry, rows outer.
    pub fn cells(&self) -> Vec<(usize, usize, i64)> {
        let mut out = Vec::new();
        for (i, row) in self.entries.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if let Some(v) = v {
                    out.push((i, j, *v));
                }
            }
        }
        out
    }
}

fn check_order(basis: &WeightedBasis, order: &[usize], sig: &Signature) -> Result<(), TwgError> {
    let mut seen = vec![false; basis.len()];
    let valid = order.len() == basis.len()
        && sig.ambient() == basis.len()
        && order.iter().all(|&k| k < seen.len() && !std::mem::replace(&mut seen[k], true));
    if valid {
        Ok(())
    } else {
        Err(TwgError::BadOrder)
    }
}

pub fn difference_matrix(
    basis: &WeightedBasis,
    order: &[usize],
    sig: &Signature,
    group: CircleGroup,
) -> Result<DifferenceMatrix, TwgError> {
    group.check(basis)?;
    check_order(basis, order, sig)?;
    let n = basis.len();
    let top = sig.top();
    let w = basis.weights();
    let mut entries = vec![vec![None; top]; n];
    for (i, j) in sig.chart_indices() {
        entries[i][j] = Some((w[order[i]] - w[order[j]]) / group.divisor());
    }
    let labels: Vec<String> = order.iter().map(|&k| basis.labels()[k].clone()).collect();
    Ok(DifferenceMatrix { row_labels: labels.clone(), col_labels: labels[..top].to_vec(), entries })
}

/// Sign of the product of nonzero weights.
pub fn sign_of_fixed_point(weights: &[i64]) -> Result<super::Sign, TwgError> {
    if weights.contains(&0) {
        return Err(TwgError::ZeroWeight);
    }
    let negatives = weights.iter().filter(|&&w| w < 0).count();
    Ok(if negatives % 2 == 0 { super::Sign::Plus } else { super::Sign::Minus })
}

/// A chart direction with |weight| >= 2 closes up to an invariant sphere
/// whose far end is the flag with the two basis vectors swapped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SphereTarget {
    pub entry: (usize, usize),
    pub swapped: Vec<usize>,
    pub weight: u32,
}

pub fn exceptional_sphere_targets(
    basis: &WeightedBasis,
    order: &[usize],
    sig: &Signature,
    group: CircleGroup,
) -> Result<Vec<SphereTarget>, TwgError> {
    let dm = difference_matrix(basis, order, sig, group)?;
    Ok(dm
        .cells()
        .into_iter()
        .filter(|&(_, _, v)| v.abs() >= 2)
        .map(|(i, j, v)| {
            let mut swapped = order.to_vec();
            swapped.swap(i, j);
            SphereTarget { entry: (i, j), swapped, weight: v.unsigned_abs() as u32 }
        })
        .collect())
}

/// Tangent space of the isotropic flag variety at an invariant isotropic
/// flag, split by weight. The linearised isotropy conditions on the chart
/// are equivariant, so each condition lives in one weight and the kernel
/// splits blockwise.
#[derive(Debug, Clone)]
pub struct IsotropicTangent {
    /// per weight: chart cells of that weight and a kernel basis over them
    pub blocks: BTreeMap<i64, (Vec<(usize, usize)>, ExactMatrix)>,
}

impl IsotropicTangent {
    pub fn weights(&self) -> Vec<i64> {
        let mut out: Vec<i64> = self
            .blocks
            .iter()
            .flat_map(|(&w, (_, k))| std::iter::repeat_n(w, k.cols()))
            .collect();
        out.sort_unstable();
        out
    }
}

pub fn isotropic_tangent(
    basis: &WeightedBasis,
    order: &[usize],
    sig: &Signature,
    omega: &SymplecticForm,
    group: CircleGroup,
) -> Result<IsotropicTangent, TwgError> {
    let dm = difference_matrix(basis, order, sig, group)?;
    if omega.dim() != basis.len() {
        return Err(TwgError::BadOrder);
    }
    let g = omega.gram();
    let form = |a: usize, b: usize| g[(order[a], order[b])].clone();
    let top = sig.top();
    for a in 0..top {
        for b in 0..top {
            if !form(a, b).is_zero() {
                return Err(TwgError::NotIsotropic);
            }
        }
    }
    let cells = dm.cells();
    let col_of: BTreeMap<(usize, usize), usize> = cells.iter().enumerate().map(|(k, &(i, j, _))| ((i, j), k)).collect();

    // omega(u_a, u_b) with u_j = v_j + sum_i x_ij v_i, linear part only
    let mut rows: Vec<Vec<GaussianRational>> = Vec::new();
    for a in 0..top {
        for b in a + 1..top {
            let mut row = vec![GaussianRational::zero(); cells.len()];
            for (&(i, j), &k) in &col_of {
                if j == b {
                    row[k] += &form(a, i);
                }
                if j == a {
                    row[k] += &form(i, b);
                }
            }
            rows.push(row);
        }
    }

    let mut by_weight: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for (k, &(_, _, v)) in cells.iter().enumerate() {
        by_weight.entry(v).or_default().push(k);
    }
    for row in &rows {
        let touched: Vec<i64> = (0..cells.len()).filter(|&k| !row[k].is_zero()).map(|k| cells[k].2).collect();
        if touched.windows(2).any(|p| p[0] != p[1]) {
            return Err(TwgError::NotEquivariant);
        }
    }

    let mut blocks = BTreeMap::new();
    for (w, ks) in by_weight {
        let sub: Vec<Vec<GaussianRational>> = rows
            .iter()
            .filter(|r| ks.iter().any(|&k| !r[k].is_zero()))
            .map(|r| ks.iter().map(|&k| r[k].clone()).collect())
            .collect();
        let kernel = if sub.is_empty() {
            ExactMatrix::identity(ks.len())
        } else {
            ExactMatrix::from_rows(sub).expect("rectangular").nullspace()
        };
        let cells_w = ks.iter().map(|&k| (cells[k].0, cells[k].1)).collect();
        blocks.insert(w, (cells_w, kernel));
    }
    Ok(IsotropicTangent { blocks })
}

/// Weight multiset of the tangent space of the Lagrangian (or isotropic)
/// Grassmannian at an invariant flag.
pub fn tangent_weights_lagrangian(
    basis: &WeightedBasis,
    order: &[usize],
    sig: &Signature,
    omega: &SymplecticForm,
    group: CircleGroup,
) -> Result<Vec<i64>, TwgError> {
    Ok(isotropic_tangent(basis, order, sig, omega, group)?.weights())
}

/// Limit as t -> infinity of the chart point t * kernel, for a one-slot
/// signature: returns the basis indices spanning the limit subspace, or
/// None when a limit column is not a single weight vector.
pub fn isotropic_sphere_limit(
    order: &[usize],
    top: usize,
    cells: &[(usize, usize)],
    kernel: &ExactMatrix,
) -> Option<Vec<usize>> {
    let mut span = Vec::with_capacity(top);
    for j in 0..top {
        let rows: Vec<usize> = cells
            .iter()
            .enumerate()
            .filter(|(k, &(_, jj))| jj == j && !kernel[(*k, 0)].is_zero())
            .map(|(_, &(i, _))| i)
            .collect();
        match rows.as_slice() {
            [] => span.push(order[j]),
            [i] => span.push(order[*i]),
            _ => return None,
        }
    }
    span.sort_unstable();
    span.dedup();
    (span.len() == top).then_some(span)
}

/// A fixed point: the basis indices in flag order. Inside each signature
/// block the indices are increasing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedPoint {
    pub order: Vec<usize>,
}

/// A fixed projective line: `order` is a representative flag, and the
/// pencil (a, b) of equal-weight vectors spans the moving line, with `a` in
/// the representative's slot block and `b` further out.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedSurface {
    pub order: Vec<usize>,
    pub pencil: (usize, usize),
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FixedLocus {
    pub isolated: Vec<FixedPoint>,
    pub surfaces: Vec<FixedSurface>,
}

/// Block sizes d_1, d_2 - d_1, ..., n - d_l.
fn block_sizes(sig: &Signature) -> Vec<usize> {
    let mut prev = 0;
    let mut out = Vec::new();
    for &d in sig.dims() {
        out.push(d - prev);
        prev = d;
    }
    out.push(sig.ambient() - prev);
    out
}

/// Key identifying a fixed flag: the set of basis indices in each block.
pub fn flag_key(order: &[usize], sig: &Signature) -> Vec<Vec<usize>> {
    let mut start = 0;
    let mut key = Vec::new();
    for size in block_sizes(sig) {
        let mut block = order[start..start + size].to_vec();
        block.sort_unstable();
        key.push(block);
        start += size;
    }
    key
}

pub fn point_id(basis: &WeightedBasis, order: &[usize], sig: &Signature) -> String {
    let key = flag_key(order, sig);
    key[..key.len() - 1]
        .iter()
        .map(|b| b.iter().map(|&k| basis.labels()[k].as_str()).collect::<Vec<_>>().join(","))
        .collect::<Vec<_>>()
        .join("|")
}

pub fn surface_id(basis: &WeightedBasis, s: &FixedSurface, sig: &Signature) -> String {
    let (a, b) = s.pencil;
    let pencil = format!("<{},{}>", basis.labels()[a], basis.labels()[b]);
    let key = flag_key(&s.order, sig);
    key[..key.len() - 1]
        .iter()
        .map(|blk| {
            blk.iter()
                .map(|&k| if k == a { pencil.clone() } else { basis.labels()[k].clone() })
                .collect::<Vec<_>>()
                .join(",")
        })
        .collect::<Vec<_>>()
        .join("|")
}

fn unit_span(n: usize, vectors: &[Vec<(usize, GaussianRational)>]) -> ExactMatrix {
    let mut m = ExactMatrix::zeros(n, vectors.len());
    for (j, v) in vectors.iter().enumerate() {
        for (i, c) in v {
            m[(*i, j)] = c.clone();
        }
    }
    m
}

fn top_isotropic(n: usize, vectors: &[Vec<(usize, GaussianRational)>], omega: &SymplecticForm) -> bool {
    omega.restrict(&unit_span(n, vectors)).is_zero()
}

/// Invariant flags of the given signature. Each weight space is split among
/// the signature blocks; a split with no freedom is an isolated point, a
/// split giving one projective line of choices is a fixed surface, and
/// anything larger is rejected. With a form, only isotropic flags remain.
pub fn fixed_flags(
    basis: &WeightedBasis,
    sig: &Signature,
    group: CircleGroup,
    iso: Option<&SymplecticForm>,
) -> Result<FixedLocus, TwgError> {
    group.check(basis)?;
    if sig.ambient() != basis.len() {
        return Err(TwgError::BadOrder);
    }
    let mut spaces: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for (k, &w) in basis.weights().iter().enumerate() {
        spaces.entry(w).or_default().push(k);
    }
    let spaces: Vec<Vec<usize>> = spaces.into_values().rev().collect();
    let sizes = block_sizes(sig);

    let mut locus = FixedLocus::default();
    let mut blocks: Vec<Vec<usize>> = vec![Vec::new(); sizes.len()];
    let mut pencil: Option<(usize, usize)> = None;
    distribute(&spaces, 0, &sizes, &mut blocks, &mut pencil, &mut |blocks, pencil| {
        let order: Vec<usize> = blocks.iter().flat_map(|b| {
            let mut b = b.clone();
            b.sort_unstable();
            b
        }).collect();
        if let Some(omega) = iso {
            let n = basis.len();
            let top = sig.top();
            let fixed: Vec<Vec<(usize, GaussianRational)>> = order[..top]
                .iter()
                .filter(|&&k| pencil.is_none_or(|(a, _)| k != a))
                .map(|&k| vec![(k, GaussianRational::one())])
                .collect();
            let verdicts: Vec<bool> = match pencil {
                None => vec![top_isotropic(n, &fixed, omega)],
                Some((a, b)) => [(1, 0), (0, 1), (1, 1)]
                    .iter()
                    .map(|&(x, y)| {
                        let mut vs = fixed.clone();
                        vs.push(vec![(a, GaussianRational::int(x)), (b, GaussianRational::int(y))]);
                        top_isotropic(n, &vs, omega)
                    })
                    .collect(),
            };
            if verdicts.iter().all(|&v| !v) {
                return Ok(());
            }
            if verdicts.iter().any(|&v| !v) {
                return Err(TwgError::Unsupported("fixed pencil only partly isotropic".into()));
            }
        }
        match pencil {
            None => locus.isolated.push(FixedPoint { order }),
            Some(p) => locus.surfaces.push(FixedSurface { order, pencil: p }),
        }
        Ok(())
    })?;
    Ok(locus)
}

type Visit<'a> = dyn FnMut(&[Vec<usize>], Option<(usize, usize)>) -> Result<(), TwgError> + 'a;

/// Assign each weight space's vectors to blocks, in every way that gives
/// a component of dimension at most one.
fn distribute(
    spaces: &[Vec<usize>],
    s: usize,
    sizes: &[usize],
    blocks: &mut Vec<Vec<usize>>,
    pencil: &mut Option<(usize, usize)>,
    visit: &mut Visit<'_>,
) -> Result<(), TwgError> {
    if s == spaces.len() {
        return visit(blocks, *pencil);
    }
    let space = &spaces[s];
    let m = space.len();
    // counts c_r of this space in each block, summing to m
    let mut counts = vec![0; sizes.len()];
    let mut result = Ok(());
    compositions(m, sizes.len(), &mut counts, 0, &mut |counts| {
        if result.is_err() {
            return;
        }
        if counts.iter().zip(sizes).zip(blocks.iter()).any(|((&c, &sz), b)| b.len() + c > sz) {
            return;
        }
        // dimension of the partial flag variety of W_w with these counts
        let dim: usize = (0..counts.len())
            .flat_map(|r| (r + 1..counts.len()).map(move |t| (r, t)))
            .map(|(r, t)| counts[r] * counts[t])
            .sum();
        let new_pencil = match (dim, m) {
            (0, _) => None,
            (1, 2) => {
                let r = counts.iter().position(|&c| c == 1).expect("split pencil");
                let _ = r;
                Some((space[0], space[1]))
            }
            _ => {
                result = Err(TwgError::Unsupported(format!("fixed component of dimension {dim}")));
                return;
            }
        };
        if new_pencil.is_some() && pencil.is_some() {
            result = Err(TwgError::Unsupported("fixed component with two moving lines".into()));
            return;
        }
        let mut taken = 0;
        for (r, &c) in counts.iter().enumerate() {
            blocks[r].extend_from_slice(&space[taken..taken + c]);
            taken += c;
        }
        let saved = *pencil;
        if new_pencil.is_some() {
            *pencil = new_pencil;
        }
        result = distribute(spaces, s + 1, sizes, blocks, pencil, visit);
        *pencil = saved;
        for (r, &c) in counts.iter().enumerate() {
            let len = blocks[r].len();
            blocks[r].truncate(len - c);
        }
    });
    result
}

fn compositions(total: usize, parts: usize, cur: &mut Vec<usize>, at: usize, f: &mut dyn FnMut(&[usize])) {
    if at + 1 == parts {
        cur[at] = total;
        f(cur);
        return;
    }
    for c in 0..=total {
        cur[at] = c;
        compositions(total - c, parts, cur, at + 1, f);
    }
}

/// |e| for a fixed line C in a variety whose first Chern class is
/// `ambient_c1_coeff` times the hyperplane class: c1(T|_C) - c1(TC) - 0,
/// the last term because the normal direction to the fibre is trivial.
pub fn fixed_surface_euler(ambient_c1_coeff: i64, surface_degree: i64, hyperplane_pairing: i64) -> Result<i64, TwgError> {
    if surface_degree != 1 {
        return Err(TwgError::Unsupported(format!("fixed curve of degree {surface_degree}")));
    }
    Ok((ambient_c1_coeff * hyperplane_pairing - 2).abs())
}
