//! Exact computational model of the finite-dimensional Hopf algebra
//! `g(p1, p2)` generated by `e1, e2, f1, f2, K`.

pub mod algebra;
pub mod cyclotomic;
pub mod error;
pub mod functionals;
pub mod hopf;
pub mod ideals;
pub mod labels;
pub mod linalg;
pub mod realization;
pub mod rep;
pub mod report;
pub mod serial;
pub mod simple;
pub mod suites;

pub use algebra::{Algebra, Element, Gen, Monomial, Tensor};
pub use cyclotomic::{Cyclo, CycloField, Params};
pub use error::{Error, Result};
