//! Exact symbolic kernels for degenerations of the generic square matrix.
//!
//! The crate is organized around six pieces:
//!
//! - [`poly`]: sparse multivariate polynomials over the rationals with
//!   monomial orders, derivatives, substitution and exact division;
//! - [`matrix`]: the degeneration families (generic, diagonally cloned,
//!   strategic zeros, custom) with determinants, cofactors, adjugates and
//!   gradient-ideal generators;
//! - [`syzygy`]: exact linear-syzygy spaces, linear rank, and the explicit
//!   syzygy block matrices of both families;
//! - [`hessian`]: Hessian matrices, rank certificates, specialization
//!   checks, factor multiplicities and the birationality checks;
//! - [`groebner`]: a Buchberger engine over the rationals with normal forms,
//!   dimension, ideal quotients, saturation and elimination;
//! - [`linalg`] / [`modp`]: the exact and prime-field linear algebra both
//!   sides share.
//!
//! All values are immutable after construction; every operation is a pure
//! function, so values may be shared across threads freely.

pub mod error;
pub mod groebner;
pub mod hessian;
pub mod linalg;
pub mod matrix;
pub mod modp;
pub mod monomial;
pub mod poly;
pub mod report;
pub mod syzygy;
pub mod vars;

#[cfg(test)]
pub(crate) mod testutil;

pub use error::{Error, Result};
pub use linalg::{PolyMat, ProbeConfig, RankOutcome};
pub use matrix::{Cell, Family, MatrixSpec, StripSide, SymbolicMatrix};
pub use monomial::{Monomial, MonomialOrder};
pub use poly::Polynomial;
pub use report::{Certification, CheckRecord, Status};
pub use vars::{VarId, VarName, VarTable};
