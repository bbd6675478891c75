//! Flags in C^n over the Gaussian rationals and their relative positions.
//!
//! Everything here is exact. Relative positions are discrete invariants
//! and the interesting configurations are the non-generic ones, which
//! rounding would destroy.

mod exact;
pub mod io;

use num_traits::{One, Zero};
use thiserror::Error;

pub use exact::{ExactMatrix, GaussianRational};

use crate::weyl::{DoubleCoset, Family, PositionPoset, RootSubset, WeylElement};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FlagError {
    #[error("signature must be strictly increasing with entries in 1..{0}")]
    BadSignature(usize),
    #[error("ambient dimensions differ ({0} vs {1})")]
    AmbientMismatch(usize, usize),
    #[error("flag basis has dependent columns")]
    DependentColumns,
    #[error("flag basis needs at least {0} columns")]
    TooFewColumns(usize),
    #[error("expected a full flag")]
    NotFull,
    #[error("flag is not isotropic")]
    NotIsotropic,
    #[error("symplectic form must be antisymmetric and invertible")]
    BadForm,
    #[error("flag type does not match the poset")]
    TypeMismatch,
    #[error("extended flags did not produce a signed permutation")]
    NotSigned,
    #[error("{0}")]
    Parse(String),
}

/// Dimensions d_1 < ... < d_l < n.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Signature {
    dims: Vec<usize>,
    ambient: usize,
}

impl Signature {
    pub fn new(dims: Vec<usize>, ambient: usize) -> Result<Self, FlagError> {
        let increasing = dims.windows(2).all(|w| w[0] < w[1]);
        if dims.is_empty() || !increasing || dims[0] == 0 || *dims.last().unwrap() >= ambient {
            return Err(FlagError::BadSignature(ambient));
        }
        Ok(Signature { dims, ambient })
    }

    pub fn full(ambient: usize) -> Self {
        Signature { dims: (1..ambient).collect(), ambient }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn top(&self) -> usize {
        *self.dims.last().expect("nonempty")
    }

    pub fn is_full(&self) -> bool {
        self.dims.len() + 1 == self.ambient
    }

    /// The flag type as a set of type-A simple roots.
    pub fn as_roots(&self) -> RootSubset {
        self.dims.iter().copied().collect()
    }

    /// Chart index set: pairs (i, j), 0-based, with j < d_r <= i for some r.
    pub fn chart_indices(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for j in 0..self.top() {
            let first_slot = self.dims.iter().find(|&&d| j < d).expect("j below top");
            for i in *first_slot..self.ambient {
                out.push((i, j));
            }
        }
        out.sort_unstable();
        out
    }
}

/// A flag of a given signature, stored through an invertible n x n basis
/// whose first d_j columns span F^{d_j}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactFlag {
    signature: Signature,
    basis: ExactMatrix,
}

impl ExactFlag {
    /// `vectors` needs at least d_l independent columns; the basis is
    /// completed by greedily appending standard basis vectors.
    pub fn new(signature: Signature, vectors: ExactMatrix) -> Result<Self, FlagError> {
        let n = signature.ambient();
        if vectors.rows() != n {
            return Err(FlagError::AmbientMismatch(n, vectors.rows()));
        }
        if vectors.cols() < signature.top() {
            return Err(FlagError::TooFewColumns(signature.top()));
        }
        if vectors.cols() > n || vectors.rank() != vectors.cols() {
            return Err(FlagError::DependentColumns);
        }
        let basis = complete_basis(&vectors);
        Ok(ExactFlag { signature, basis })
    }

    pub fn standard(signature: Signature) -> Self {
        let n = signature.ambient();
        ExactFlag { signature, basis: ExactMatrix::identity(n) }
    }

    /// Full flag built from the columns of an invertible matrix.
    pub fn full_from_basis(basis: ExactMatrix) -> Result<Self, FlagError> {
        Self::new(Signature::full(basis.rows()), basis)
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn ambient(&self) -> usize {
        self.signature.ambient()
    }

    pub fn basis(&self) -> &ExactMatrix {
        &self.basis
    }

    /// F^d for any d, using the stored completion.
    pub fn subspace(&self, d: usize) -> ExactMatrix {
        self.basis.leading_columns(d)
    }

    /// Same basis viewed as a full flag: an arbitrary but deterministic lift.
    pub fn lift_to_full(&self) -> ExactFlag {
        ExactFlag { signature: Signature::full(self.ambient()), basis: self.basis.clone() }
    }

    /// g F.
    pub fn transform(&self, g: &ExactMatrix) -> Result<ExactFlag, FlagError> {
        if !g.is_invertible() || g.rows() != self.ambient() {
            return Err(FlagError::DependentColumns);
        }
        Ok(ExactFlag { signature: self.signature.clone(), basis: g.mul(&self.basis) })
    }
}

fn complete_basis(vectors: &ExactMatrix) -> ExactMatrix {
    let n = vectors.rows();
    let mut basis = vectors.clone();
    let mut k = basis.cols();
    for e in 0..n {
        if k == n {
            break;
        }
        let mut unit = ExactMatrix::zeros(n, 1);
        unit[(e, 0)] = GaussianRational::one();
        let candidate = basis.hcat(&unit);
        if candidate.rank() > k {
            basis = candidate;
            k += 1;
        }
    }
    basis
}

/// dim(U cap V) = dim U + dim V - rank [U | V].
pub fn intersection_dim(u: &ExactMatrix, v: &ExactMatrix) -> Result<usize, FlagError> {
    if u.rows() != v.rows() {
        return Err(FlagError::AmbientMismatch(u.rows(), v.rows()));
    }
    Ok(u.rank() + v.rank() - u.hcat(v).rank())
}

/// The permutation sigma such that some basis v of F (F^k = <v_1..v_k>)
/// has H^j = <v_sigma(1), ..., v_sigma(j)>. Equivalently dim(F^k cap H^j)
/// jumps exactly at k in sigma({1..j}).
///
/// Computed by one elimination: write H in F-coordinates, then clear each
/// column below its lowest nonzero entry's row in the later columns. The
/// lowest nonzero rows are the values of sigma.
pub fn relative_position_full(f: &ExactFlag, h: &ExactFlag) -> Result<WeylElement, FlagError> {
    let n = f.ambient();
    if h.ambient() != n {
        return Err(FlagError::AmbientMismatch(n, h.ambient()));
    }
    if !f.signature.is_full() || !h.signature.is_full() {
        return Err(FlagError::NotFull);
    }
    let (reduced, _) = f.basis.hcat(&h.basis).rref();
    let mut c: Vec<Vec<GaussianRational>> =
        (0..n).map(|j| (0..n).map(|i| reduced[(i, n + j)].clone()).collect()).collect();
    let mut images = Vec::with_capacity(n);
    for j in 0..n {
        let pivot = (0..n).rev().find(|&i| !c[j][i].is_zero()).ok_or(FlagError::DependentColumns)?;
        let inv = c[j][pivot].inv().expect("nonzero pivot");
        let (done, rest) = c.split_at_mut(j + 1);
        let col = &done[j];
        for later in rest {
            if later[pivot].is_zero() {
                continue;
            }
            let factor = &later[pivot] * &inv;
            for i in 0..=pivot {
                let t = &factor * &col[i];
                later[i] = &later[i] - &t;
            }
        }
        images.push(pivot as i32 + 1);
    }
    Ok(WeylElement::new(Family::A, images).expect("lowest pivots form a permutation"))
}

/// Coset of the relative position of flags of types theta (of F) and eta
/// (of H) in the given poset. Both flags are lifted through their stored
/// bases; the coset does not depend on the lift.
pub fn relative_position_partial(
    f: &ExactFlag,
    h: &ExactFlag,
    poset: &PositionPoset,
) -> Result<DoubleCoset, FlagError> {
    let sys = poset.system();
    if sys.family() != Family::A || sys.ambient_dim() != f.ambient() {
        return Err(FlagError::TypeMismatch);
    }
    if f.signature.as_roots() != *poset.theta() || h.signature.as_roots() != *poset.eta() {
        return Err(FlagError::TypeMismatch);
    }
    let sigma = relative_position_full(&f.lift_to_full(), &h.lift_to_full())?;
    let idx = poset.coset_of(&sigma).map_err(|_| FlagError::TypeMismatch)?;
    Ok(poset.element(idx).clone())
}

/// Antisymmetric invertible Gram matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymplecticForm {
    gram: ExactMatrix,
}

impl SymplecticForm {
    pub fn new(gram: ExactMatrix) -> Result<Self, FlagError> {
        let n = gram.rows();
        let antisymmetric = (0..n).all(|i| (0..n).all(|j| gram[(i, j)] == -gram[(j, i)].clone()));
        if gram.cols() != n || n % 2 == 1 || !antisymmetric || !gram.is_invertible() {
            return Err(FlagError::BadForm);
        }
        Ok(SymplecticForm { gram })
    }

    /// On C^{2n} with basis e_1..e_n, e_-n..e_-1: omega(e_j, e_-k) = delta_jk,
    /// which puts an antidiagonal of +1 above and -1 below the middle.
    pub fn standard(n: usize) -> Self {
        let m = 2 * n;
        let mut gram = ExactMatrix::zeros(m, m);
        for j in 0..n {
            gram[(j, m - 1 - j)] = GaussianRational::one();
            gram[(m - 1 - j, j)] = -GaussianRational::one();
        }
        SymplecticForm { gram }
    }

    pub fn gram(&self) -> &ExactMatrix {
        &self.gram
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn pair(&self, u: &[GaussianRational], v: &[GaussianRational]) -> GaussianRational {
        let mut acc = GaussianRational::zero();
        for (i, ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            for (j, vj) in v.iter().enumerate() {
                let g = &self.gram[(i, j)];
                if !g.is_zero() && !vj.is_zero() {
                    acc += &(&(ui * g) * vj);
                }
            }
        }
        acc
    }

    /// Gram matrix of the form restricted to the column span of u.
    pub fn restrict(&self, u: &ExactMatrix) -> ExactMatrix {
        u.transpose().mul(&self.gram).mul(u)
    }
}

/// Whether omega vanishes on the top subspace of the flag.
pub fn is_isotropic(f: &ExactFlag, omega: &SymplecticForm) -> Result<bool, FlagError> {
    if f.ambient() != omega.dim() {
        return Err(FlagError::AmbientMismatch(f.ambient(), omega.dim()));
    }
    Ok(omega.restrict(&f.subspace(f.signature.top())).is_zero())
}

/// Basis of the omega-orthogonal complement of span(U).
pub fn omega_perp(u: &ExactMatrix, omega: &SymplecticForm) -> Result<ExactMatrix, FlagError> {
    if u.rows() != omega.dim() {
        return Err(FlagError::AmbientMismatch(u.rows(), omega.dim()));
    }
    Ok(u.transpose().mul(omega.gram()).nullspace())
}

/// Full flag through the given nested subspaces (each a column basis),
/// ending with the whole space.
fn flag_from_chain(chain: &[ExactMatrix]) -> Result<ExactFlag, FlagError> {
    let n = chain.last().map_or(0, ExactMatrix::rows);
    let mut basis = ExactMatrix::zeros(n, 0);
    for space in chain {
        for col in space.columns() {
            let v = ExactMatrix::from_columns(n, vec![col]).map_err(FlagError::Parse)?;
            let candidate = basis.hcat(&v);
            if candidate.rank() > basis.cols() {
                basis = candidate;
                break;
            }
        }
    }
    if basis.cols() != n {
        return Err(FlagError::DependentColumns);
    }
    ExactFlag::full_from_basis(basis)
}

/// Isotropic flag F^1 < ... < F^n extended by F^{-r} = (F^{r-1})^perp.
fn extend_isotropic(f: &ExactFlag, omega: &SymplecticForm) -> Result<ExactFlag, FlagError> {
    let n = f.ambient() / 2;
    let mut chain: Vec<ExactMatrix> = (1..=n).map(|k| f.subspace(k)).collect();
    for r in (1..=n).rev() {
        chain.push(omega_perp(&f.subspace(r - 1), omega)?);
    }
    flag_from_chain(&chain)
}

/// Signed permutation giving the relative position of two isotropic flags
/// of signature 1..n in (C^{2n}, omega).
pub fn relative_position_symplectic(
    f: &ExactFlag,
    h: &ExactFlag,
    omega: &SymplecticForm,
) -> Result<WeylElement, FlagError> {
    let m = omega.dim();
    let n = m / 2;
    if f.ambient() != m || h.ambient() != m {
        return Err(FlagError::AmbientMismatch(m, f.ambient().max(h.ambient())));
    }
    if f.signature.dims() != (1..=n).collect::<Vec<_>>() || h.signature.dims() != f.signature.dims() {
        return Err(FlagError::BadSignature(m));
    }
    if !is_isotropic(f, omega)? || !is_isotropic(h, omega)? {
        return Err(FlagError::NotIsotropic);
    }
    let full = relative_position_full(&extend_isotropic(f, omega)?, &extend_isotropic(h, omega)?)?;
    // position p in 1..2n carries the label p (p <= n) or -(2n+1-p)
    let label = |p: i32| if p as usize <= n { p } else { p - (m as i32 + 1) };
    let images: Vec<i32> = (1..=n as i32).map(|j| label(full.apply(j))).collect();
    let mirrored = (1..=n as i32).all(|j| label(full.apply(m as i32 + 1 - j)) == -images[j as usize - 1]);
    if !mirrored {
        return Err(FlagError::NotSigned);
    }
    WeylElement::new(Family::C, images).map_err(|_| FlagError::NotSigned)
}
