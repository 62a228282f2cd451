//! Computational arithmetic of supersingular rank-2 Drinfeld F_q[T]-modules:
//! morphism spaces filtered by tau-degree, Brandt matrices, and semifield
//! rank-metric codes on torsion modules.

pub mod drinfeld;
pub mod brandt;
pub mod codes;
pub mod homspace;
pub mod error;
pub mod gf;
pub mod linalg;
pub mod polyring;
pub mod skew;

pub use error::{Error, Result};
