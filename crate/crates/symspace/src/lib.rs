//! Symplectic and indefinite orthogonal groups over involutive matrix
//! algebras, and explicit models of their Riemannian symmetric spaces.

pub mod algebra;
pub mod error;
pub mod groups;
pub mod hitchin;
pub mod models;
pub mod transforms;

pub use error::{Error, Result};
