//! Model files, DOT export, and the law suites behind the command line.

mod dot;
mod model_file;
mod report;
mod suites;

use thiserror::Error;

use crate::filters::FilterError;
use crate::lattice::LatticeError;
use crate::logic::ParseError;
use crate::modal::ModalError;
use crate::semantics::SemanticsError;

pub use dot::{bimodule_dot, filters_dot, hasse_dot};
pub use model_file::{load_model, model_to_toml, parse_model, world_index, ModelFile};
pub use report::{Counterexample, Report};
pub use suites::{
    fragment_formulas, modal_sweep_formulas, run_suite, sweep_formulas, Suite, MAP_SWEEP_SIZE, MUTATION_SIZE,
    RANDOM_FORMULAS, RANDOM_MODAL_FORMULAS, SWEEP_SEED, UNIQUENESS_SIZE,
};

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Invalid(String),
    #[error("unknown world '{0}'")]
    UnknownWorld(String),
    #[error("unknown suite '{0}'")]
    UnknownSuite(String),
    #[error("model has no bimodule")]
    NoBimodule,
    #[error("base size {value} exceeds the cap {cap}")]
    CapExceeded { value: usize, cap: usize },
    #[error(transparent)]
    Formula(#[from] ParseError),
    #[error(transparent)]
    Semantics(#[from] SemanticsError),
    #[error(transparent)]
    Modal(#[from] ModalError),
    #[error(transparent)]
    Filter(#[from] FilterError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}
