//! Circle actions on three-dimensional flag varieties and on the fibres of
//! their domains over the hyperbolic plane, encoded as weight graphs.

use thiserror::Error;

use crate::flags::FlagError;
use crate::sl2reps::{Sl2Error, WeightedBasis};

mod classify;
mod graph;
mod pipeline;
mod tangent;

pub use classify::{catalogue, check_almost_complex_obstruction, classify_fiber, Classification};
pub use graph::{
    connected_sum, graphs_isomorphic, hirzebruch_graph, CanonicalForm, Edge, RoundVertex, Sign, SquareVertex,
    WeightGraph,
};
pub use pipeline::{ambient_to_fiber_graph, run_case, schubert_cell_count, CaseResult, FlagKind};
pub use tangent::{
    difference_matrix, exceptional_sphere_targets, fixed_flags, fixed_surface_euler, flag_key, isotropic_tangent,
    point_id, sign_of_fixed_point, surface_id, tangent_weights_lagrangian, DifferenceMatrix, FixedLocus, FixedPoint,
    FixedSurface, IsotropicTangent, SphereTarget,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TwgError {
    #[error("invalid weight graph: {0}")]
    InvalidGraph(String),
    #[error("cannot glue: {0}")]
    GluingMismatch(String),
    #[error("bad parameters {0}")]
    BadParameters(String),
    #[error("PSO(2) needs all weights of one parity")]
    ParityViolation,
    #[error("zero tangent weight at an isolated fixed point")]
    ZeroWeight,
    #[error("flag order does not fit the basis and signature")]
    BadOrder,
    #[error("flag is not isotropic")]
    NotIsotropic,
    #[error("isotropy conditions mix weights")]
    NotEquivariant,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("no tangent weight {weight} or {neg} at {vertex}", neg = -weight)]
    MissingHyperbolicWeight { vertex: String, weight: i64 },
    #[error("no catalogue model matches")]
    NoMatch,
    #[error(transparent)]
    Flag(#[from] FlagError),
    #[error(transparent)]
    Sl2(#[from] Sl2Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CircleGroup {
    SO2,
    PSO2,
}

impl CircleGroup {
    /// Weight of the circle on the tangent plane of the hyperbolic plane at
    /// its fixed point.
    pub fn hyperbolic_weight(self) -> i64 {
        match self {
            CircleGroup::SO2 => 2,
            CircleGroup::PSO2 => 1,
        }
    }

    pub fn divisor(self) -> i64 {
        match self {
            CircleGroup::SO2 => 1,
            CircleGroup::PSO2 => 2,
        }
    }

    pub fn check(self, basis: &WeightedBasis) -> Result<(), TwgError> {
        if self == CircleGroup::PSO2 && !basis.same_parity() {
            return Err(TwgError::ParityViolation);
        }
        Ok(())
    }
}

impl std::str::FromStr for CircleGroup {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "so2" => Ok(CircleGroup::SO2),
            "pso2" => Ok(CircleGroup::PSO2),
            _ => Err(format!("unknown circle group {s:?}")),
        }
    }
}

impl std::fmt::Display for CircleGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            CircleGroup::SO2 => "SO(2)",
            CircleGroup::PSO2 => "PSO(2)",
        })
    }
}
