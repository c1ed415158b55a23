//! Filters on a finite distributive lattice and the filter locale `Filt(W)`:
//! its lattice and Heyting structure, compact elements, the extension of
//! join-preserving maps, and stable-map duality.

mod filter;
mod locale;
mod scott;
mod stable;

use thiserror::Error;

use crate::lattice::{LatticeError, MapLawFailure};

pub use filter::{
    filter_heyting, filter_join, filter_meet, filter_violation, heyting_sets, is_filter, is_filter_by_definition,
    join_sets, principal_filter, Filter, FilterCheck, FilterViolation,
};
pub use locale::{
    coherent_reconstruct, compact_elements, describe_set, enumerate_filters, filters_by_principal, filters_by_scan,
    CoherenceReport, FilterLattice, COMPACT_SCAN_CAP, FILTER_SCAN_CAP, ORIENTATION_NOTE,
};
pub use scott::{count_extensions, scott_extend, ScottExtension, UNIQUENESS_SCAN_CAP};
pub use stable::{
    duality_roundtrip, is_stable_map, preimage, preimage_set, stability_failure, DualityReport, DIRECTED_SCAN_CAP,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FilterError {
    #[error("filters live on different carriers")]
    CarrierMismatch,
    #[error("set mentions elements outside the carrier")]
    OutOfCarrier,
    #[error("not a filter: {0:?}")]
    NotAFilter(FilterViolation),
    #[error("carrier is not distributive: witness {0:?}")]
    NotDistributive([usize; 3]),
    #[error("map is not stable: {0:?}")]
    NotStable(MapLawFailure),
    #[error("subset scan and principal filters disagree")]
    EnumerationMismatch,
    #[error("no adjoint value at {at}")]
    NoAdjoint { at: usize },
    #[error("size {size} exceeds the scan cap {cap}")]
    TooLarge { size: usize, cap: usize },
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}
