//! Finite posets and lattices: validation, Heyting operations, the down-set
//! construction, and enumeration up to isomorphism.

mod birkhoff;
mod finite;
pub mod iso;
mod maps;
pub mod named;
mod poset;

use thiserror::Error;

pub use birkhoff::{
    birkhoff, downset_lattice, enumerate_distributive_lattices, posets_up_to_iso, GeneratedLattice,
    BIRKHOFF_BASE_CAP, DEFAULT_MAX_BASE, ENUMERATION_HARD_CAP,
};
pub use finite::{complete_lattice, FinLattice};
pub use maps::{enumerate_maps, JoinPreservingMap, MapLawFailure, MapLaws, MonotoneMap};
pub use poset::{check_poset, FinPoset};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("order table row {row} has {len} entries, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },
    #[error("reflexivity fails at {i}")]
    Reflexivity { i: usize },
    #[error("antisymmetry fails: {i} ⊑ {j} and {j} ⊑ {i}")]
    Antisymmetry { i: usize, j: usize },
    #[error("transitivity fails: {i} ⊑ {j} ⊑ {k} but not {i} ⊑ {k}")]
    Transitivity { i: usize, j: usize, k: usize },
    #[error("the empty order is not a lattice")]
    Empty,
    #[error("not a lattice: ({a}, {b}) lacks a meet or a join")]
    NotALattice { a: usize, b: usize },
    #[error("size {size} exceeds the cap of {cap}")]
    TooLarge { size: usize, cap: usize },
    #[error("index {index} out of range for {size} elements")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("map table has {len} entries, expected {expected}")]
    TableLength { len: usize, expected: usize },
    #[error("map is not monotone: {a} ⊑ {b} but f({a}) ⋢ f({b})")]
    NotMonotone { a: usize, b: usize },
    #[error("map does not preserve joins: {0:?}")]
    NotJoinPreserving(MapLawFailure),
    #[error("lattice is not distributive: witness {0:?}")]
    NotDistributive([usize; 3]),
}
