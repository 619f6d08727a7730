//! Exact symbolic computation for quantum tori, skein trace models, and
//! modified Dehn-Thurston coordinates.
//!
//! The crate is organized around a single exact representation: elements of a
//! quantum torus are finite sums of Weyl-normalized monomials with
//! coefficients in `Z[q^(1/2), q^(-1/2)]` extended by puncture variables.
//! On top of that sit the combinatorial layers: ideal triangulations with
//! their face matrices and coordinate monoids, the three DT pairs of pants
//! with closed-form traces, and the global surface assembly.

// Index loops read better than iterator chains for antisymmetric matrices.
#![allow(clippy::needless_range_loop)]

pub mod catalog;
pub mod dt;
pub mod error;
pub mod latex;
pub mod pants;
pub mod presented;
pub mod scalar;
pub mod surface;
pub mod torus;
pub mod tri;
pub mod verify;

pub use error::{Error, Result};
pub use scalar::{GroundScalar, ScalarKey, VarSet};
pub use torus::{weyl_normalize, AntisymForm, DegreeFunctional, ExpVec, TorusElement};
