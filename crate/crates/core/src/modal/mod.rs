//! Stable bimodules, the adjoint modalities they induce on filters, and the
//! correspondence with adjoint pairs on a Heyting algebra.

mod adjunction;
mod bimodule;

use thiserror::Error;

use crate::filters::FilterError;
use crate::lattice::LatticeError;

pub use adjunction::{
    bimodule_from_adjunction, enumerate_join_preserving, modal_embedding_check, right_adjoint_of, split_witness,
    AdjunctionViolation, EmbeddingReport, LatticeAdjunction,
};
pub use bimodule::{
    adjunction_on_filters, bimodule_conditions, bimodule_violation, box_r, box_set, check_adjunction_on_filters,
    check_stable_bimodule, diamond_r, diamond_set, enumerate_stable_bimodules, enumerate_stable_bimodules_by_scan,
    is_stable_bimodule, principal_roundtrip_failure, rows_from_table, single_bit_mutations, AdjunctionFailure,
    AdjunctionReport, BimoduleConditions, BimoduleViolation, StableBimodule, RELATION_SCAN_CAP,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModalError {
    #[error("relation table has {len} rows, expected {expected}")]
    TableSize { len: usize, expected: usize },
    #[error("not a stable bimodule: {message}")]
    NotStable { violation: BimoduleViolation, message: String },
    #[error("not an adjunction: {0:?}")]
    InvalidAdjunction(AdjunctionViolation),
    #[error("no right adjoint value at {at}")]
    NoRightAdjoint { at: usize },
    #[error("frame is not distributive: witness {0:?}")]
    NotDistributive([usize; 3]),
    #[error("frame of {size} elements exceeds the relation scan cap {cap}")]
    TooLarge { size: usize, cap: usize },
    #[error(transparent)]
    Filter(#[from] FilterError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}
