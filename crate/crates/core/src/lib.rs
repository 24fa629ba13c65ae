//! Executable algebraic automata theory at finite scale.
//!
//! Finite algebras of the predual variety pairs (BA/SET, DL01/POS, JSL0/JSL0,
//! VECT(p)/VECT(p), BR/SET_STAR and JSL01/JSL), automata enriched in them,
//! regular languages and their derivatives, D-monoids, preimages and a
//! bounded laboratory for Eilenberg-type correspondences.

pub mod algebra;
pub mod automata;
pub mod dot;
pub mod duality;
pub mod error;
pub mod gf;
pub mod lab;
pub mod langlib;
pub mod monoids;
pub mod preimage;

pub use algebra::{
    AlgMorphism, Counterexample, FactorizationPair, FinAlgebra, LawViolation, Table, VarietyTag,
};
pub use duality::PairTag;
pub use error::{Error, Result};
