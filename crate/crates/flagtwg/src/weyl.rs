//! Weyl groups of types A_{n-1} and C_n, realized as permutations and
//! signed permutations, with Bruhat order and double-coset posets.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;

use itertools::Itertools;
use thiserror::Error;

/// Set of simple-root indices, 1-based.
pub type RootSubset = BTreeSet<usize>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WeylError {
    #[error("rank must be positive")]
    ZeroRank,
    #[error("elements belong to different groups")]
    GroupMismatch,
    #[error("invalid group element: {0}")]
    InvalidElement(String),
    #[error("simple root index {0} out of range")]
    RootOutOfRange(usize),
    #[error("left type is not self-opposite, so w0 does not act")]
    NotSelfOpposite,
    #[error("left action needs trivial left type (theta = all simple roots)")]
    LeftActionUnavailable,
    #[error("poset types do not match")]
    PosetMismatch,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    C,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::A => write!(f, "A"),
            Family::C => write!(f, "C"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RootSystem {
    family: Family,
    rank: usize,
}

impl RootSystem {
    pub fn new(family: Family, rank: usize) -> Result<Self, WeylError> {
        if rank == 0 {
            return Err(WeylError::ZeroRank);
        }
        Ok(RootSystem { family, rank })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Dimension of the defining representation: n for SL(n), 2n for Sp(2n).
    pub fn ambient_dim(&self) -> usize {
        match self.family {
            Family::A => self.rank + 1,
            Family::C => 2 * self.rank,
        }
    }

    /// Number of letters the group permutes.
    pub fn degree(&self) -> usize {
        match self.family {
            Family::A => self.rank + 1,
            Family::C => self.rank,
        }
    }

    pub fn all_roots(&self) -> RootSubset {
        (1..=self.rank).collect()
    }

    pub fn check_subset(&self, s: &RootSubset) -> Result<(), WeylError> {
        match s.iter().find(|&&j| j == 0 || j > self.rank) {
            Some(&j) => Err(WeylError::RootOutOfRange(j)),
            None => Ok(()),
        }
    }

    pub fn identity(&self) -> WeylElement {
        WeylElement {
            family: self.family,
            images: (1..=self.degree() as i32).collect(),
        }
    }

    pub fn simple_reflection(&self, j: usize) -> Result<WeylElement, WeylError> {
        if j == 0 || j > self.rank {
            return Err(WeylError::RootOutOfRange(j));
        }
        let mut images: Vec<i32> = (1..=self.degree() as i32).collect();
        match self.family {
            Family::C if j == self.rank => images[j - 1] = -images[j - 1],
            _ => images.swap(j - 1, j),
        }
        Ok(WeylElement { family: self.family, images })
    }

    pub fn simple_reflections(&self) -> Vec<WeylElement> {
        (1..=self.rank)
            .map(|j| self.simple_reflection(j).expect("index in range"))
            .collect()
    }

    pub fn longest_element(&self) -> WeylElement {
        let n = self.degree() as i32;
        let images = match self.family {
            Family::A => (1..=n).rev().collect(),
            Family::C => (1..=n).map(|j| -j).collect(),
        };
        WeylElement { family: self.family, images }
    }

    /// nu(j) where nu(alpha) = -w0(alpha).
    pub fn opposition(&self, j: usize) -> usize {
        match self.family {
            Family::A => self.rank + 1 - j,
            Family::C => j,
        }
    }

    pub fn opposition_involution(&self) -> Vec<(usize, usize)> {
        (1..=self.rank).map(|j| (j, self.opposition(j))).collect()
    }

    pub fn is_self_opposite(&self, s: &RootSubset) -> bool {
        s.iter().all(|&j| s.contains(&self.opposition(j)))
    }

    pub fn order(&self) -> usize {
        let n = self.degree();
        let fact: usize = (1..=n).product();
        match self.family {
            Family::A => fact,
            Family::C => fact << n,
        }
    }

    /// All group elements, sorted by length then images.
    pub fn elements(&self) -> Vec<WeylElement> {
        let n = self.degree();
        let mut out = Vec::with_capacity(self.order());
        for perm in (1..=n as i32).permutations(n) {
            match self.family {
                Family::A => out.push(WeylElement { family: self.family, images: perm }),
                Family::C => {
                    for mask in 0..(1u32 << n) {
                        let images = perm
                            .iter()
                            .enumerate()
                            .map(|(k, &v)| if mask >> k & 1 == 1 { -v } else { v })
                            .collect();
                        out.push(WeylElement { family: self.family, images });
                    }
                }
            }
        }
        out.sort_by_cached_key(|w| (w.length(), w.images.clone()));
        out
    }

    /// Positive roots in epsilon coordinates.
    fn positive_roots(&self) -> Vec<Vec<i32>> {
        positive_roots(self.family, self.degree())
    }
}

fn positive_roots(family: Family, n: usize) -> Vec<Vec<i32>> {
    let mut roots = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let mut r = vec![0; n];
            r[i] = 1;
            r[j] = -1;
            roots.push(r.clone());
            if family == Family::C {
                r[j] = 1;
                roots.push(r);
            }
        }
        if family == Family::C {
            let mut r = vec![0; n];
            r[i] = 2;
            roots.push(r);
        }
    }
    roots
}

/// A permutation of 1..n (type A) or a signed permutation (type C),
/// stored by its values on 1..n.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylElement {
    family: Family,
    images: Vec<i32>,
}

impl WeylElement {
    pub fn new(family: Family, images: Vec<i32>) -> Result<Self, WeylError> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &v in &images {
            let a = v.unsigned_abs() as usize;
            if a == 0 || a > n || seen[a] || (family == Family::A && v < 0) {
                return Err(WeylError::InvalidElement(format!("{images:?}")));
            }
            seen[a] = true;
        }
        if family == Family::A && n < 2 || n == 0 {
            return Err(WeylError::InvalidElement(format!("{images:?}")));
        }
        Ok(WeylElement { family, images })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn images(&self) -> &[i32] {
        &self.images
    }

    pub fn system(&self) -> RootSystem {
        let rank = match self.family {
            Family::A => self.images.len() - 1,
            Family::C => self.images.len(),
        };
        RootSystem { family: self.family, rank }
    }

    /// Value at j, extended to negative j by sigma(-j) = -sigma(j).
    pub fn apply(&self, j: i32) -> i32 {
        let v = self.images[j.unsigned_abs() as usize - 1];
        if j < 0 {
            -v
        } else {
            v
        }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().zip(1..).all(|(&v, j)| v == j)
    }

    /// Composition: (self * other)(j) = self(other(j)).
    pub fn multiply(&self, other: &WeylElement) -> Result<WeylElement, WeylError> {
        if self.family != other.family || self.images.len() != other.images.len() {
            return Err(WeylError::GroupMismatch);
        }
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &WeylElement) -> WeylElement {
        WeylElement {
            family: self.family,
            images: other.images.iter().map(|&j| self.apply(j)).collect(),
        }
    }

    pub fn inverse(&self) -> WeylElement {
        let mut images = vec![0; self.images.len()];
        for (j, &v) in (1..).zip(&self.images) {
            images[v.unsigned_abs() as usize - 1] = if v < 0 { -j } else { j };
        }
        WeylElement { family: self.family, images }
    }

    /// Number of positive roots sent to negative roots.
    pub fn length(&self) -> usize {
        self.system()
            .positive_roots()
            .iter()
            .filter(|root| {
                let mut image = vec![0; root.len()];
                for (k, &c) in root.iter().enumerate() {
                    if c != 0 {
                        let v = self.images[k];
                        image[v.unsigned_abs() as usize - 1] += c * v.signum();
                    }
                }
                image.iter().find(|&&c| c != 0).is_some_and(|&c| c < 0)
            })
            .count()
    }

    /// A reduced word i_1 ... i_l with self = s_{i_1} ... s_{i_l}, found by
    /// stripping the first right descent repeatedly.
    pub fn reduced_word(&self) -> Vec<usize> {
        let sys = self.system();
        let gens = sys.simple_reflections();
        let mut w = self.clone();
        let mut len = w.length();
        let mut word = Vec::with_capacity(len);
        while len > 0 {
            let (j, next) = gens
                .iter()
                .enumerate()
                .map(|(j, s)| (j + 1, w.mul_unchecked(s)))
                .find(|(_, ws)| ws.length() < len)
                .expect("nonidentity element has a right descent");
            word.push(j);
            w = next;
            len -= 1;
        }
        word.reverse();
        word
    }

    /// Bruhat order via the subword property: the set of products of
    /// subwords of one reduced word of `other` is the interval [e, other].
    pub fn bruhat_leq(&self, other: &WeylElement) -> Result<bool, WeylError> {
        if self.family != other.family || self.images.len() != other.images.len() {
            return Err(WeylError::GroupMismatch);
        }
        let (l1, l2) = (self.length(), other.length());
        if l1 > l2 {
            return Ok(false);
        }
        if l1 == l2 {
            return Ok(self == other);
        }
        let sys = other.system();
        let gens = sys.simple_reflections();
        let mut reach: HashSet<WeylElement> = HashSet::from([sys.identity()]);
        for j in other.reduced_word() {
            let step: Vec<_> = reach.iter().map(|x| x.mul_unchecked(&gens[j - 1])).collect();
            reach.extend(step);
        }
        Ok(reach.contains(self))
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.images.iter().join(" "))
    }
}

/// A double coset W_theta w W_eta, where W_theta is generated by the simple
/// reflections NOT in theta.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoubleCoset {
    pub min_rep: WeylElement,
    pub left_type: RootSubset,
    pub right_type: RootSubset,
}

/// The poset W_theta\W/W_eta with the induced Bruhat order.
#[derive(Debug, Clone)]
pub struct PositionPoset {
    system: RootSystem,
    theta: RootSubset,
    eta: RootSubset,
    elements: Vec<DoubleCoset>,
    leq: Vec<Vec<bool>>,
    w0: Option<Vec<usize>>,
    lookup: HashMap<WeylElement, usize>,
}

impl PositionPoset {
    /// Partition W into double cosets; the w0 action is attached whenever
    /// theta is self-opposite.
    pub fn new(system: RootSystem, theta: &RootSubset, eta: &RootSubset) -> Result<Self, WeylError> {
        system.check_subset(theta)?;
        system.check_subset(eta)?;
        let gens = system.simple_reflections();
        let left: Vec<&WeylElement> = (1..=system.rank())
            .filter(|j| !theta.contains(j))
            .map(|j| &gens[j - 1])
            .collect();
        let right: Vec<&WeylElement> = (1..=system.rank())
            .filter(|j| !eta.contains(j))
            .map(|j| &gens[j - 1])
            .collect();

        let mut lookup = HashMap::new();
        let mut elements = Vec::new();
        // elements() is length-sorted, so the first unassigned element of a
        // coset is its minimal representative
        for w in system.elements() {
            if lookup.contains_key(&w) {
                continue;
            }
            let idx = elements.len();
            let mut queue = VecDeque::from([w.clone()]);
            lookup.insert(w.clone(), idx);
            while let Some(x) = queue.pop_front() {
                let moves = left
                    .iter()
                    .map(|s| s.mul_unchecked(&x))
                    .chain(right.iter().map(|s| x.mul_unchecked(s)));
                for y in moves.collect::<Vec<_>>() {
                    if !lookup.contains_key(&y) {
                        lookup.insert(y.clone(), idx);
                        queue.push_back(y);
                    }
                }
            }
            elements.push(DoubleCoset {
                min_rep: w,
                left_type: theta.clone(),
                right_type: eta.clone(),
            });
        }

        let leq = elements
            .iter()
            .map(|a| {
                elements
                    .iter()
                    .map(|b| a.min_rep.bruhat_leq(&b.min_rep).expect("same group"))
                    .collect()
            })
            .collect();

        let w0 = system.is_self_opposite(theta).then(|| {
            let top = system.longest_element();
            elements
                .iter()
                .map(|c| lookup[&top.mul_unchecked(&c.min_rep)])
                .collect()
        });

        Ok(PositionPoset {
            system,
            theta: theta.clone(),
            eta: eta.clone(),
            elements,
            leq,
            w0,
            lookup,
        })
    }

    pub fn system(&self) -> RootSystem {
        self.system
    }

    pub fn theta(&self) -> &RootSubset {
        &self.theta
    }

    pub fn eta(&self) -> &RootSubset {
        &self.eta
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[DoubleCoset] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &DoubleCoset {
        &self.elements[i]
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i][j]
    }

    /// Pairs (i, j) with i < j and nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i == j || !self.leq[i][j] {
                    continue;
                }
                let between = (0..n).any(|k| k != i && k != j && self.leq[i][k] && self.leq[k][j]);
                if !between {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn w0_action(&self) -> Result<&[usize], WeylError> {
        self.w0.as_deref().ok_or(WeylError::NotSelfOpposite)
    }

    pub fn has_w0_action(&self) -> bool {
        self.w0.is_some()
    }

    /// Index of the double coset containing w.
    pub fn coset_of(&self, w: &WeylElement) -> Result<usize, WeylError> {
        self.lookup.get(w).copied().ok_or(WeylError::GroupMismatch)
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.lookup[&self.system.longest_element()]
    }

    /// [w] -> [s_j w] on W/W_eta. Only defined when theta is everything.
    pub fn left_multiply(&self, j: usize, i: usize) -> Result<usize, WeylError> {
        if self.theta != self.system.all_roots() {
            return Err(WeylError::LeftActionUnavailable);
        }
        let s = self.system.simple_reflection(j)?;
        Ok(self.lookup[&s.mul_unchecked(&self.elements[i].min_rep)])
    }

    /// [w] -> [w^-1], landing in the poset with the two types swapped.
    pub fn invert_coset(&self, i: usize, target: &PositionPoset) -> Result<usize, WeylError> {
        if target.system != self.system || target.theta != self.eta || target.eta != self.theta {
            return Err(WeylError::PosetMismatch);
        }
        target.coset_of(&self.elements[i].min_rep.inverse())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(images: &[i32]) -> WeylElement {
        WeylElement::new(Family::A, images.to_vec()).unwrap()
    }

    fn c(images: &[i32]) -> WeylElement {
        WeylElement::new(Family::C, images.to_vec()).unwrap()
    }

    #[test]
    fn simple_reflections_match_conventions() {
        let a2 = RootSystem::new(Family::A, 2).unwrap();
        assert_eq!(a2.simple_reflections(), vec![a(&[2, 1, 3]), a(&[1, 3, 2])]);
        let c2 = RootSystem::new(Family::C, 2).unwrap();
        assert_eq!(c2.simple_reflections(), vec![c(&[2, 1]), c(&[1, -2])]);
        let a1 = RootSystem::new(Family::A, 1).unwrap();
        assert_eq!(a1.simple_reflections(), vec![a(&[2, 1])]);
    }

    #[test]
    fn products() {
        let s = a(&[2, 1, 3]);
        assert!(s.multiply(&s).unwrap().is_identity());
        assert_eq!(s.multiply(&a(&[1, 3, 2])).unwrap(), a(&[2, 3, 1]));
        // composition of signed permutation matrices: P(1,-2) P(2,1)
        assert_eq!(c(&[1, -2]).multiply(&c(&[2, 1])).unwrap(), c(&[-2, 1]));
        assert_eq!(c(&[2, 1]).multiply(&c(&[1, -2])).unwrap(), c(&[2, -1]));
        assert!(s.multiply(&c(&[1, 2])).is_err());
    }

    #[test]
    fn lengths() {
        assert_eq!(a(&[1, 2, 3]).length(), 0);
        assert_eq!(a(&[3, 2, 1]).length(), 3);
        assert_eq!(c(&[-1, -2]).length(), 4);
        assert_eq!(c(&[-2, -1]).length(), 3);
        assert_eq!(c(&[1, -2]).length(), 1);
    }

    #[test]
    fn longest_and_opposition() {
        let a2 = RootSystem::new(Family::A, 2).unwrap();
        assert_eq!(a2.longest_element(), a(&[3, 2, 1]));
        let c2 = RootSystem::new(Family::C, 2).unwrap();
        assert_eq!(c2.longest_element(), c(&[-1, -2]));
        let a3 = RootSystem::new(Family::A, 3).unwrap();
        assert_eq!(a3.opposition_involution(), vec![(1, 3), (2, 2), (3, 1)]);
        assert_eq!(c2.opposition_involution(), vec![(1, 1), (2, 2)]);
    }

    #[test]
    fn bruhat_examples() {
        assert!(a(&[2, 1, 3]).bruhat_leq(&a(&[2, 3, 1])).unwrap());
        assert!(!a(&[2, 3, 1]).bruhat_leq(&a(&[3, 1, 2])).unwrap());
        assert!(a(&[2, 3, 1]).bruhat_leq(&a(&[2, 3, 1])).unwrap());
    }

    #[test]
    fn reduced_word_multiplies_back() {
        let c3 = RootSystem::new(Family::C, 3).unwrap();
        let gens = c3.simple_reflections();
        for w in c3.elements() {
            let word = w.reduced_word();
            assert_eq!(word.len(), w.length());
            let prod = word
                .iter()
                .fold(c3.identity(), |acc, &j| acc.multiply(&gens[j - 1]).unwrap());
            assert_eq!(prod, w);
        }
    }

    #[test]
    fn group_orders() {
        for r in 1..=4 {
            let a = RootSystem::new(Family::A, r).unwrap();
            assert_eq!(a.elements().len(), a.order());
            let c = RootSystem::new(Family::C, r).unwrap();
            assert_eq!(c.elements().len(), c.order());
        }
        assert_eq!(RootSystem::new(Family::C, 3).unwrap().order(), 48);
    }

    #[test]
    fn chains() {
        let a3 = RootSystem::new(Family::A, 3).unwrap();
        let p = PositionPoset::new(a3, &a3.all_roots(), &RootSubset::from([1])).unwrap();
        assert_eq!(p.len(), 4);
        let lengths: Vec<_> = p.elements().iter().map(|c| c.min_rep.length()).collect();
        assert_eq!(lengths, vec![0, 1, 2, 3]);
        assert_eq!(p.covers().len(), 3);

        let c2 = RootSystem::new(Family::C, 2).unwrap();
        let p = PositionPoset::new(c2, &c2.all_roots(), &RootSubset::from([2])).unwrap();
        assert_eq!(p.len(), 4);
        assert_eq!(p.covers().len(), 3);
        assert_eq!(p.w0_action().unwrap(), &[3, 2, 1, 0]);
    }

    #[test]
    fn w0_needs_self_opposite_theta() {
        let a3 = RootSystem::new(Family::A, 3).unwrap();
        let p = PositionPoset::new(a3, &RootSubset::from([1]), &RootSubset::from([1])).unwrap();
        assert_eq!(p.w0_action(), Err(WeylError::NotSelfOpposite));
        let p = PositionPoset::new(a3, &RootSubset::from([1, 3]), &RootSubset::from([1])).unwrap();
        assert!(p.has_w0_action());
    }

    #[test]
    fn coset_inversion_round_trip() {
        let c2 = RootSystem::new(Family::C, 2).unwrap();
        let p = PositionPoset::new(c2, &RootSubset::from([2]), &RootSubset::from([1])).unwrap();
        let q = PositionPoset::new(c2, &RootSubset::from([1]), &RootSubset::from([2])).unwrap();
        for i in 0..p.len() {
            let j = p.invert_coset(i, &q).unwrap();
            assert_eq!(q.invert_coset(j, &p).unwrap(), i);
        }
    }
}
