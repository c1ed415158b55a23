//! Stable semantics for intuitionistic and intuitionistic modal logic over
//! finite distributive lattices.
//!
//! Worlds form a distributive lattice whose top is an inconsistent world
//! forcing every formula. Formulas denote filters, disjunction is forced by a
//! pair of worlds whose meet lies below the current one, and a stable
//! bimodule on the frame yields an adjoint pair of modalities `dia ⊣ box`.

pub mod bitset;
pub mod lattice;
pub mod filters;
pub mod logic;
pub mod modal;
pub mod semantics;
pub mod harness;
