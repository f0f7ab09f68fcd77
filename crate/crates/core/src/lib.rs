//! Exact apolarity toolkit for binary forms.
//!
//! Binary forms carry an action of the dual polynomial ring by
//! differentiation. The degree-k dual forms annihilating a whole system of
//! degree-d forms make up a linear subspace, and its squarefree elements are
//! in bijection with the ways of writing every form in the system as a
//! combination of the same k distinct d-th powers of linear forms. This crate
//! computes those spaces exactly over the rationals, extracts explicit
//! decompositions (falling back to verified complex arithmetic only where
//! roots are irrational), evaluates the closed-form predictions for generic
//! systems, and applies the same machinery to multisecant loci of projected
//! rational normal curves.

pub mod apolarity;
pub mod curves;
pub mod decompose;
pub mod error;
pub mod forms;
pub mod linalg;

pub use error::{Error, Result};
pub use forms::{BinaryForm, DualForm, LinearForm, ProjectivePoint};
