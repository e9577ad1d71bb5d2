// SPDX-License-Identifier: Apache-2.0

//! Weighted Dynkin diagrams of classical Lie algebras and the Gram matrices
//! of their alternating forms.
//!
//! The crate builds the diagrams attached to partition data, the Gram
//! matrices `(lambda([e_a, e_b]))` indexed by the roots of weight one, exact
//! determinants over the integers and fields of characteristic two, explicit
//! unimodular choices of `lambda` for special diagrams, and verification
//! routines showing degeneracy in characteristic two for the others.

pub mod char2_matrix;
pub mod chevalley;
pub mod diagrams;
pub mod error;
pub mod faithful;
pub mod gram;
pub mod lambda_construct;
pub mod linalg;
pub mod root_system;
pub mod verifier;

pub use error::{Error, Result};
