//! Construction of improper affine fronts in affine 3-space from rational
//! Weierstrass data, flat fronts in hyperbolic 3-space from canonical
//! one-forms, and value-distribution analysis of the associated Gauss
//! maps on genus-0 punctured spheres.

pub mod affine;
pub mod error;
pub mod flat;
pub mod gallery;
pub mod mesh;
pub mod par;
pub mod quad;
pub mod rational;
pub mod valdist;
pub mod verify;

pub use error::{Error, Result};
