//! Workbench for finitely presented A∞-categories over exact fields.

pub mod category;
pub mod chain;
pub mod compare;
pub mod delta;
pub mod dold_kan;
pub mod dg;
pub mod error;
pub mod examples;
pub mod field;
pub mod functor;
pub mod graded;
pub mod homotopy;
pub mod io;
pub mod linalg;
pub mod modules;
pub mod nerve;
pub mod simplicial;
pub mod twisted;

pub use error::{Error, Result};
pub use field::{Field, Scalar};
