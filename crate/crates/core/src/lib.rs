//! Exact discrete-derivative calculus over small finite fields F_{p^n}.
//!
//! The crate provides:
//!
//! - construction of F_{p^n} with deterministic default moduli and exact
//!   element arithmetic ([`field`]);
//! - function representations (value tables, univariate polynomials,
//!   multivariate normal forms over a chosen basis) with exact conversions
//!   ([`func`], [`parse`]);
//! - the discrete derivative operator, its higher-order and generalized
//!   forms, and structural checks built on them ([`deriv`]);
//! - exact subset-sum census tables over F_p and Z/NZ with closed forms
//!   ([`census`]);
//! - existence tests and constructions for discrete antiderivatives and for
//!   functions with matching first-order derivatives ([`matching`]).
//!
//! Everything is computed exactly over integers mod p; there is no floating
//! point anywhere.

pub mod census;
pub mod deriv;
pub mod error;
pub mod field;
pub mod func;
pub mod io;
pub mod linalg;
pub mod matching;
pub mod parse;
pub mod sample;

pub use error::{AntiderivativeWitness, Error, Result};
pub use field::{Basis, FieldElement, FieldSpec};
pub use func::{ComponentSelector, FunctionTable, MultivariateAnf, UnivariatePoly};
pub use io::FunctionRepr;
