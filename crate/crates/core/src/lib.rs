//! Numerical laboratory for renormalized gauge cocycles on the circle,
//! superconnection curvature and Chern–Simons descent, built on finite
//! Fourier truncations.

pub mod cocycle;
pub mod error;
pub mod fixtures;
pub mod gauge;
pub mod opcore;
pub mod renorm;
pub mod report;
pub mod superchern;

pub use error::{Error, Result};
pub use faer::c64;
pub use opcore::*;
