//! Exact computations around linear Poisson structures on duals of Lie
//! algebras and their lifts through the real projective blowup of the
//! origin.
//!
//! The crate is organised in layers:
//!
//! * [`poly`], [`linalg`], [`exterior`]: exact rational polynomials, dense
//!   rational linear algebra, sparse exterior algebra.
//! * [`liealg`]: structure constants, the Chevalley–Eilenberg differential,
//!   heights, types, coadjoint orbit data, Killing form.
//! * [`classify`]: the exact constant-height decision with a sampling
//!   falsifier.
//! * [`spinor`]: linear Poisson bivectors, spinors `e^{i_π} λ`, blowup
//!   pullbacks, vanishing orders, lift verdicts.
//! * [`geometry`]: lifted vector fields and the distribution `D_[v]`.
//! * [`model_io`]: document format, catalog, reports; [`cli`]: command
//!   front end.

pub mod classify;
pub mod cli;
pub mod error;
pub mod exterior;
pub mod geometry;
pub mod liealg;
pub mod linalg;
pub mod model_io;
pub mod poly;
pub mod sampling;
pub mod spinor;

pub use error::{Error, Result};
pub use liealg::{Covector, ElementType, HeightReport, LieAlgebra};
