//! Exact arithmetic for the discrete ordered calculus, with companion
//! engines for Poisson mechanics, the scalar-source recursion, q-calculus,
//! finite Hopf algebras, and network amplitudes.

pub mod dynamics;
pub mod error;
pub mod hopf;
pub mod ncalg;
pub mod netamp;
pub mod poisson;
pub mod qcalc;
pub mod sample;
pub mod scalar;
pub mod suites;

mod text;

pub use error::{Error, Result};
pub use ncalg::{Algebra, Atom, CommutationTable, Expr, FamilyKind, Monomial, Tree, Var};
pub use scalar::{Gaussian, Scalar};
