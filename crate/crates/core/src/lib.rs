//! Anomaly computations for cones over even spheres and over the torus.
//!
//! Everything numeric is an [`Enclosure`]: a midpoint with a rigorous radius.

pub mod error;
pub mod bounds;
pub mod exact;
pub mod lattice;
pub mod numerics;
pub mod report;
pub mod special;
pub mod sphere;
pub mod torus;

pub use error::{Error, Result};
pub use numerics::{Enclosure, ExtendedReal, Mag, Precision};
