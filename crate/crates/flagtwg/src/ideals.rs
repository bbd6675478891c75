//! Ideals in position posets: fat, slim and balanced ideals, their
//! enumeration, and the minimal Anosov type they require.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::weyl::{DoubleCoset, PositionPoset, RootSubset, WeylError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IdealError {
    #[error("member set is not downward closed")]
    NotDownwardClosed,
    #[error("index {0} is not an element of the poset")]
    OutOfRange(usize),
    #[error("poset has odd cardinality {0}, so it has no balanced ideal")]
    OddCardinality(usize),
    #[error("ideal is not balanced")]
    NotBalanced,
    #[error("position does not belong to this poset")]
    PosetMismatch,
    #[error(transparent)]
    Weyl(#[from] WeylError),
}

/// A downward-closed subset of a position poset.
#[derive(Debug, Clone)]
pub struct Ideal<'a> {
    poset: &'a PositionPoset,
    members: BTreeSet<usize>,
}

impl PartialEq for Ideal<'_> {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.poset, other.poset) && self.members == other.members
    }
}

impl<'a> Ideal<'a> {
    pub fn new(poset: &'a PositionPoset, members: BTreeSet<usize>) -> Result<Self, IdealError> {
        if let Some(&i) = members.iter().find(|&&i| i >= poset.len()) {
            return Err(IdealError::OutOfRange(i));
        }
        let closed = members
            .iter()
            .all(|&y| (0..poset.len()).all(|x| !poset.leq(x, y) || members.contains(&x)));
        if !closed {
            return Err(IdealError::NotDownwardClosed);
        }
        Ok(Ideal { poset, members })
    }

    /// Down-closure of a set of generators.
    pub fn generated_by(poset: &'a PositionPoset, gens: &[usize]) -> Result<Self, IdealError> {
        if let Some(&i) = gens.iter().find(|&&i| i >= poset.len()) {
            return Err(IdealError::OutOfRange(i));
        }
        Ok(Ideal { poset, members: down_closure(poset, gens) })
    }

    pub fn poset(&self) -> &'a PositionPoset {
        self.poset
    }

    pub fn members(&self) -> &BTreeSet<usize> {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members.contains(&i)
    }

    /// Maximal members.
    pub fn generators(&self) -> Vec<usize> {
        self.members
            .iter()
            .copied()
            .filter(|&x| !self.members.iter().any(|&y| y != x && self.poset.leq(x, y)))
            .collect()
    }

    pub fn complement(&self) -> BTreeSet<usize> {
        (0..self.poset.len()).filter(|i| !self.members.contains(i)).collect()
    }

    pub fn w0_image(&self) -> Result<BTreeSet<usize>, IdealError> {
        let w0 = self.poset.w0_action()?;
        Ok(self.members.iter().map(|&i| w0[i]).collect())
    }

    /// Complement contained in w0 I.
    pub fn is_fat(&self) -> Result<bool, IdealError> {
        let image = self.w0_image()?;
        Ok(self.complement().is_subset(&image))
    }

    /// w0 I contained in the complement.
    pub fn is_slim(&self) -> Result<bool, IdealError> {
        let image = self.w0_image()?;
        Ok(image.is_disjoint(&self.members))
    }

    pub fn is_balanced(&self) -> Result<bool, IdealError> {
        Ok(self.w0_image()? == self.complement())
    }
}

fn down_closure(poset: &PositionPoset, gens: &[usize]) -> BTreeSet<usize> {
    (0..poset.len())
        .filter(|&x| gens.iter().any(|&g| poset.leq(x, g)))
        .collect()
}

/// All balanced ideals, found by walking antichains. An ideal only grows as
/// the antichain is extended, so branches past half the poset are cut.
pub fn enumerate_balanced_ideals(poset: &PositionPoset) -> Result<Vec<Ideal<'_>>, IdealError> {
    let w0 = poset.w0_action()?;
    let n = poset.len();
    if n % 2 == 1 {
        return Err(IdealError::OddCardinality(n));
    }
    let mut found = Vec::new();
    let mut chosen = Vec::new();
    extend_antichain(poset, w0, 0, &mut chosen, &mut found);
    Ok(found
        .into_iter()
        .map(|members| Ideal { poset, members })
        .collect())
}

fn extend_antichain(
    poset: &PositionPoset,
    w0: &[usize],
    start: usize,
    chosen: &mut Vec<usize>,
    found: &mut Vec<BTreeSet<usize>>,
) {
    let half = poset.len() / 2;
    let ideal = down_closure(poset, chosen);
    if ideal.len() > half {
        return;
    }
    if ideal.len() == half && ideal.iter().all(|&i| !ideal.contains(&w0[i])) {
        found.push(ideal);
    }
    for next in start..poset.len() {
        let free = chosen
            .iter()
            .all(|&c| !poset.leq(c, next) && !poset.leq(next, c));
        if free {
            chosen.push(next);
            extend_antichain(poset, w0, next + 1, chosen, found);
            chosen.pop();
        }
    }
}

/// Smallest theta' such that I is invariant under W_theta' acting on the
/// left, i.e. the simple roots whose reflections move I.
///
/// Read literally, "theta' = {alpha : s_alpha I = I}" collides with the
/// convention that W_theta' is generated by reflections outside theta'; the
/// complement is what reproduces the worked examples, so that is returned.
pub fn minimal_anosov_type(ideal: &Ideal<'_>) -> Result<RootSubset, IdealError> {
    if !ideal.is_balanced()? {
        return Err(IdealError::NotBalanced);
    }
    let poset = ideal.poset;
    let mut moved = RootSubset::new();
    for j in 1..=poset.system().rank() {
        let mut image = BTreeSet::new();
        for &i in &ideal.members {
            image.insert(poset.left_multiply(j, i)?);
        }
        if image != ideal.members {
            moved.insert(j);
        }
    }
    Ok(moved)
}

/// Whether a relative position lies in the ideal, i.e. whether the second
/// flag is in the I-thickening of the first.
pub fn thickening_membership(position: &DoubleCoset, ideal: &Ideal<'_>) -> Result<bool, IdealError> {
    let poset = ideal.poset;
    if position.left_type != *poset.theta() || position.right_type != *poset.eta() {
        return Err(IdealError::PosetMismatch);
    }
    let i = poset.coset_of(&position.min_rep).map_err(|_| IdealError::PosetMismatch)?;
    Ok(ideal.contains(i))
}
