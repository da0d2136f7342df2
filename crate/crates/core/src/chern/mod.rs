//! Connections, the Atiyah class and the Chern character of a matrix factorization,
//! with exact checks for the identities it satisfies.
//!
//! `ch(E) = Σ_i str(At^{2i}) / (2i)!` is read in the homology of `(Ω•, df∧)`; each
//! component is stored as its normal form modulo `df∧Ω•`, so classes compare by
//! plain equality.

mod character;
mod checks;
mod connection;
mod kclass;
mod tower;

use thiserror::Error;

use crate::exterior::ExteriorError;
use crate::ideals::IdealsError;
use crate::mf::MfError;
use crate::ring::RingError;

pub use character::{chern_character, classical_chern, top_degree_supertrace, HomologyClass};
pub use checks::{
    cone_additivity_check, cone_connection, functoriality_check, pushforward,
    pushforward_connection, tensor_connection, tensor_multiplicativity_check,
};
pub use connection::{
    atiyah, atiyah_power, factorial, phi_tilde, phi_tilde_n, supertrace, AtiyahClass, Connection,
};
pub use kclass::KClass;
pub use tower::{phi_strictness_check, phi_tower_oracle, strictness_defect, Tower, MAX_TOWER_VARS};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChernError {
    #[error(transparent)]
    Mf(#[from] MfError),
    #[error(transparent)]
    Exterior(#[from] ExteriorError),
    #[error(transparent)]
    Ideals(#[from] IdealsError),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("{0} must be a matrix of 1-forms")]
    NotOneForms(&'static str),
    #[error("supertrace needs a declared (E0, E1) block split")]
    UndeclaredSplit,
    #[error("power {i} out of range 0..={n}")]
    PowerOutOfRange { i: usize, n: usize },
    #[error("internal consistency: str(At^{i}) is nonzero for odd {i}")]
    OddSupertrace { i: usize },
    #[error("internal consistency: df ^ str(At^{i}) is nonzero")]
    CycleFailure { i: usize },
    #[error("matrix is not idempotent: (e*e - e) is nonzero at ({row}, {col})")]
    NotIdempotent { row: usize, col: usize },
    #[error("tower oracle is limited to {max} variables, got {n}")]
    TowerTooLarge { n: usize, max: usize },
    #[error("source and target rings must have the same number of variables ({source_vars} vs {target_vars})")]
    DimensionMismatch {
        source_vars: usize,
        target_vars: usize,
    },
}

/// Outcome of a verification: either the identity holds or a description of the
/// first failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail(String),
}

impl Verdict {
    pub fn passed(&self) -> bool {
        matches!(self, Verdict::Pass)
    }

    fn from_mismatch(m: Option<impl std::fmt::Display>) -> Verdict {
        match m {
            None => Verdict::Pass,
            Some(e) => Verdict::Fail(e.to_string()),
        }
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::Pass => write!(f, "pass"),
            Verdict::Fail(why) => write!(f, "fail: {why}"),
        }
    }
}
