//! Herglotz-Nevanlinna functions on the upper half-plane.

pub mod asymptotics;
pub mod boundary;
pub mod bounds;
pub mod circuits;
pub mod error;
pub mod extrap;
pub mod grid;
pub mod herglotz;
pub mod lp;
pub mod measures;
pub mod passive_approx;
pub mod nnls;
pub mod ppoly;
pub mod quad;
pub mod splinehilbert;

pub use error::{Error, LimitSample, Result};
pub use num_complex::Complex64;
