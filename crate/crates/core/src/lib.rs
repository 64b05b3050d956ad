//! Exact intersection arithmetic on Néron–Severi lattices of K3 surfaces,
//! del Pezzo and ruled surfaces, plus the threefold bookkeeping built on top
//! (curve blowups, the fiber degree game and h^{1,2} chains).
//!
//! Everything is computed over `BigInt` / `BigRational`. There is no floating
//! point anywhere in the crate.

pub mod arith;
pub mod enumerate;
pub mod expr;
pub mod k3;
pub mod lattice;
pub mod surfaces;
pub mod threefold;

pub use enumerate::{enum_classes, Constraint, DegreeWindow, EnumError};
pub use expr::{Combination, ExprError, Namespace};
pub use k3::{K3Error, PolarizedK3Model};
pub use lattice::{
    classify_gram, Classification, Definiteness, DivisorClass, Lattice, LatticeError, RationalClass, Signature,
};
