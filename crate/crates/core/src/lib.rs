//! Exact computation of c-nilpotent multipliers of finite-dimensional
//! nilpotent Lie algebras over the rationals.

pub mod algebra;
pub mod capability;
pub mod catalog;
pub mod error;
pub mod freelie;
pub mod hall;
pub mod json;
pub mod linalg;
pub mod multiplier;
pub mod presentation;
pub mod report;

pub use error::{Error, Result};
