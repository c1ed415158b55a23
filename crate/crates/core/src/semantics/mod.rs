//! Stable forcing, its filter-algebra reading, Kripke forcing for comparison,
//! the down-set model of a Heyting algebra, and countermodel search.

mod algebra;
mod forcing;
mod kripke;
mod model;
mod search;

use thiserror::Error;

use crate::filters::FilterError;
use crate::lattice::LatticeError;
use crate::modal::ModalError;

pub use algebra::{build_upset_model, eval_filter, heyting_eval};
pub use forcing::{explain, force, forcing_set, forcing_set_with, OrClause, Trace};
pub use kripke::{kripke_force, kripke_set};
pub use model::{HeytingAssignment, KripkeModel, StableModel, UnboundAtoms, Valuation};
pub use search::{
    all_valuations, countermodel_search, curated_theorems, modal_theorems, Countermodel, SearchOutcome,
    CURATED_THEOREMS, DEFAULT_VARS_CAP, MODAL_THEOREMS, VARS_HARD_CAP,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SemanticsError {
    #[error("formula uses a modality but the model has no bimodule")]
    MissingBimodule,
    #[error("formula uses a modality but the Kripke model has no relation")]
    MissingRelation,
    #[error("formula uses a modality but the algebra has no adjunction")]
    MissingAdjunction,
    #[error("atom '{0}' has no value")]
    UnboundAtom(String),
    #[error("world {world} out of range for {size} worlds")]
    WorldOutOfRange { world: usize, size: usize },
    #[error("frame not distributive: witness {0:?}")]
    NotDistributive([usize; 3]),
    #[error("valuation of '{0}' lives on a different frame")]
    ForeignValuation(String),
    #[error("bimodule lives on a different frame")]
    ForeignBimodule,
    #[error("adjunction lives on a different algebra")]
    ForeignAdjunction,
    #[error("value {value} of '{atom}' is out of range")]
    ValueOutOfRange { atom: String, value: usize },
    #[error("valuation of '{0}' is not an upper set")]
    NotUpperSet(String),
    #[error("relation violates the bimodule law")]
    NotABimodule,
    #[error("{what} {value} exceeds the cap {cap}")]
    CapExceeded { what: &'static str, value: usize, cap: usize },
    #[error(transparent)]
    Filter(#[from] FilterError),
    #[error(transparent)]
    Modal(#[from] ModalError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}
