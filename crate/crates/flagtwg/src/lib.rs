//! Weyl-group combinatorics, exact relative positions of flags, SL(2)
//! weight data and tangential weight graphs of circle actions on
//! three-dimensional flag varieties.

pub mod dims;
pub mod export;
pub mod flags;
pub mod ideals;
pub mod sl2reps;
pub mod twg;
pub mod weyl;
