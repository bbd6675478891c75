//! Dimensions of classical flag varieties, the census of three-dimensional
//! ones, and the table of partitions compatible with each of them.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::ideals::{enumerate_balanced_ideals, minimal_anosov_type, IdealError};
use crate::sl2reps::{admits_symplectic_form, anosov_type, anosov_type_symplectic, Partition};
use crate::weyl::{Family, PositionPoset, RootSubset, RootSystem};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DimsError {
    #[error("signature slot {0} out of range for {1}")]
    SlotOutOfRange(String, String),
    #[error("empty signature")]
    Empty,
    #[error("group parameter {0} too small")]
    TooSmall(usize),
    #[error("{0}")]
    Inconsistent(String),
    #[error(transparent)]
    Ideal(#[from] IdealError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Group {
    SL,
    SO,
    Sp,
}

/// One step of an isotropic or linear flag. SO(2p) splits the maximal
/// isotropic subspaces into two families, tagged separately.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Slot {
    Dim(usize),
    HalfSpin { plus: bool },
}

impl fmt::Display for Slot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Slot::Dim(k) => write!(f, "{k}"),
            Slot::HalfSpin { plus: true } => write!(f, "+"),
            Slot::HalfSpin { plus: false } => write!(f, "-"),
        }
    }
}

/// `n` is the matrix size for SL(n) and SO(n), and half of it for Sp(2n).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FlagVarietyDescriptor {
    pub group: Group,
    pub n: usize,
    pub slots: BTreeSet<Slot>,
}

impl FlagVarietyDescriptor {
    pub fn new(group: Group, n: usize, slots: impl IntoIterator<Item = Slot>) -> Result<Self, DimsError> {
        let d = FlagVarietyDescriptor { group, n, slots: slots.into_iter().collect() };
        d.validate()?;
        Ok(d)
    }

    pub fn group_name(&self) -> String {
        match self.group {
            Group::SL => format!("SL({})", self.n),
            Group::SO => format!("SO({})", self.n),
            Group::Sp => format!("Sp({})", 2 * self.n),
        }
    }

    fn validate(&self) -> Result<(), DimsError> {
        if self.slots.is_empty() {
            return Err(DimsError::Empty);
        }
        let min = match self.group {
            Group::SL => 2,
            Group::SO => 3,
            Group::Sp => 1,
        };
        if self.n < min {
            return Err(DimsError::TooSmall(self.n));
        }
        let even_so = self.group == Group::SO && self.n.is_multiple_of(2);
        for &slot in &self.slots {
            let ok = match (self.group, slot) {
                (Group::SL, Slot::Dim(k)) => (1..self.n).contains(&k),
                (Group::Sp, Slot::Dim(k)) => (1..=self.n).contains(&k),
                (Group::SO, Slot::Dim(k)) if even_so => k >= 1 && k + 2 <= self.n / 2,
                (Group::SO, Slot::Dim(k)) => (1..=self.n / 2).contains(&k),
                (Group::SO, Slot::HalfSpin { .. }) => even_so,
                _ => false,
            };
            if !ok {
                return Err(DimsError::SlotOutOfRange(slot.to_string(), self.group_name()));
            }
        }
        Ok(())
    }

    /// Plain subspace dimensions of the flag, with half-spin tags resolved:
    /// one tag means a maximal isotropic subspace, both tags mean the flag
    /// is determined by its (p-1)-dimensional member.
    fn effective_dims(&self) -> Vec<usize> {
        let p = self.n / 2;
        let mut dims: BTreeSet<usize> = self
            .slots
            .iter()
            .filter_map(|s| match s {
                Slot::Dim(k) => Some(*k),
                Slot::HalfSpin { .. } => None,
            })
            .collect();
        match self.slots.iter().filter(|s| matches!(s, Slot::HalfSpin { .. })).count() {
            1 => {
                dims.insert(p);
            }
            2 => {
                dims.insert(p - 1);
            }
            _ => {}
        }
        dims.into_iter().collect()
    }

    /// Conventional name of the variety.
    pub fn variety_name(&self) -> String {
        let dims = self.effective_dims();
        let single = self.slots.len() == 1;
        let list = |d: &[usize]| d.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
        match self.group {
            Group::SL if dims.len() + 1 == self.n => format!("Flag(C^{})", self.n),
            Group::SL if single && dims[0] == 1 => format!("CP^{}", self.n - 1),
            Group::SL if single => format!("Gr_{}(C^{})", dims[0], self.n),
            Group::SL => format!("Flag_{}(C^{})", list(&dims), self.n),
            Group::Sp if single && dims[0] == 1 => format!("CP^{}", 2 * self.n - 1),
            Group::Sp if single && dims[0] == self.n => format!("Lag(C^{})", 2 * self.n),
            Group::Sp => format!("IsoFlag_{}(C^{})", list(&dims), 2 * self.n),
            Group::SO if single && dims[0] == 1 => format!("Quad_{}", self.n - 2),
            Group::SO => {
                let tags: String = self
                    .slots
                    .iter()
                    .filter(|s| matches!(s, Slot::HalfSpin { .. }))
                    .map(ToString::to_string)
                    .collect();
                format!("IsoFlag_{}{}(C^{})", list(&dims), tags, self.n)
            }
        }
    }
}

impl fmt::Display for FlagVarietyDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.group_name(), self.variety_name())
    }
}

fn binom2(k: usize) -> usize {
    k * k.saturating_sub(1) / 2
}

/// Partial flags of the given dimensions inside C^top.
fn linear_flag_dim(dims: &[usize], top: usize) -> usize {
    let mut prev = 0;
    let mut total = 0;
    for &d in dims {
        total += (d - prev) * (top - d);
        prev = d;
    }
    total
}

/// Complex dimension: Grassmannian of the largest member plus the partial
/// flag variety of the remaining members inside it.
pub fn flag_dim(d: &FlagVarietyDescriptor) -> Result<usize, DimsError> {
    d.validate()?;
    let dims = d.effective_dims();
    let (&k, rest) = dims.split_last().expect("validated nonempty");
    let n = d.n;
    let top = match d.group {
        Group::SL => return Ok(linear_flag_dim(&dims, n)),
        Group::SO => k * (n - k) - binom2(k + 1),
        Group::Sp => k * (2 * n - k) - binom2(k),
    };
    Ok(top + linear_flag_dim(rest, k))
}

/// Simple-root labels of the group, in root order.
pub fn simple_root_slots(group: Group, n: usize) -> Vec<Slot> {
    match group {
        Group::SL => (1..n).map(Slot::Dim).collect(),
        Group::Sp => (1..=n).map(Slot::Dim).collect(),
        Group::SO if n % 2 == 1 => (1..=n / 2).map(Slot::Dim).collect(),
        Group::SO => {
            let p = n / 2;
            let mut v: Vec<Slot> = (1..=p.saturating_sub(2)).map(Slot::Dim).collect();
            v.push(Slot::HalfSpin { plus: false });
            v.push(Slot::HalfSpin { plus: true });
            v
        }
    }
}

/// Every flag variety of dimension exactly 3 for SL, Sp and SO of rank
/// 2..=max_rank, scanning all nonempty sets of simple roots.
pub fn enumerate_3dim_flag_varieties(max_rank: usize) -> Vec<FlagVarietyDescriptor> {
    let mut out = Vec::new();
    for rank in 2..=max_rank {
        let groups = [(Group::SL, rank + 1), (Group::Sp, rank), (Group::SO, 2 * rank + 1), (Group::SO, 2 * rank)];
        for (group, n) in groups {
            let roots = simple_root_slots(group, n);
            for mask in 1u64..(1 << roots.len()) {
                let slots = roots.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, s)| *s);
                let Ok(d) = FlagVarietyDescriptor::new(group, n, slots) else { continue };
                if flag_dim(&d) == Ok(3) {
                    out.push(d);
                }
            }
        }
    }
    out.sort();
    out
}

/// The census grouped by group, one row per group.
pub fn census_rows(max_rank: usize) -> Vec<(String, Vec<FlagVarietyDescriptor>)> {
    let mut rows: Vec<(String, Vec<FlagVarietyDescriptor>)> = Vec::new();
    for d in enumerate_3dim_flag_varieties(max_rank) {
        match rows.last_mut() {
            Some((g, list)) if *g == d.group_name() => list.push(d),
            _ => rows.push((d.group_name(), vec![d])),
        }
    }
    rows
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CaseRow {
    pub group: String,
    pub variety: String,
    pub partitions: Vec<String>,
}

/// theta' of the unique balanced ideal of W/W_eta.
fn required_type(system: RootSystem, eta: &[usize]) -> Result<RootSubset, DimsError> {
    let eta: RootSubset = eta.iter().copied().collect();
    let poset = PositionPoset::new(system, &system.all_roots(), &eta).map_err(IdealError::from)?;
    let ideals = enumerate_balanced_ideals(&poset)?;
    match ideals.as_slice() {
        [only] => Ok(minimal_anosov_type(only)?),
        _ => Err(DimsError::Inconsistent(format!("expected one balanced ideal, found {}", ideals.len()))),
    }
}

fn sl_partitions(n: usize, eta: &[usize]) -> Result<Vec<Partition>, DimsError> {
    let sys = RootSystem::new(Family::A, n - 1).map_err(IdealError::from)?;
    let need = required_type(sys, eta)?;
    Ok(Partition::all_of(n).into_iter().filter(|p| anosov_type(p).is_superset(&need)).collect())
}

fn sp_partitions(n: usize, eta: &[usize]) -> Result<Vec<Partition>, DimsError> {
    let sys = RootSystem::new(Family::C, n).map_err(IdealError::from)?;
    let need = required_type(sys, eta)?;
    Ok(Partition::all_of(2 * n)
        .into_iter()
        .filter(|p| admits_symplectic_form(p) == Ok(true))
        .filter(|p| anosov_type_symplectic(p).is_ok_and(|t| t.is_superset(&need)))
        .collect())
}

fn names(ps: &[Partition]) -> Vec<String> {
    ps.iter().map(ToString::to_string).collect()
}

/// For each target flag variety, the partitions whose Anosov type contains
/// the type demanded by its balanced ideal.
pub fn fullcases_table() -> Result<Vec<CaseRow>, DimsError> {
    let flag3 = sl_partitions(3, &[1, 2])?;
    let cp3_sl = sl_partitions(4, &[1])?;
    let cp3_sp = sp_partitions(2, &[1])?;
    if cp3_sl != cp3_sp {
        return Err(DimsError::Inconsistent("CP^3 rows for SL(4) and Sp(4) disagree".into()));
    }
    let lag = sp_partitions(2, &[2])?;
    Ok(vec![
        CaseRow { group: "SL(3)".into(), variety: "Flag(C^3)".into(), partitions: names(&flag3) },
        CaseRow { group: "SL(4)/Sp(4)".into(), variety: "CP^3".into(), partitions: names(&cp3_sl) },
        CaseRow { group: "Sp(4)".into(), variety: "Lag(C^4)".into(), partitions: names(&lag) },
    ])
}
