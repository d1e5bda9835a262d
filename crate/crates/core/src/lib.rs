//! First-passage times of Brownian motion to convex moving boundaries.
//!
//! The density of `T = inf{t : B_t = f(t)}` is computed from a functional of
//! a 3-dimensional Bessel bridge ([`fpt`]), checked against direct
//! simulation and linear-boundary closed forms ([`oracle`]) and against the
//! associated backward PDE and its heat-equation representation ([`pde`]).

// `!(x > 0.0)` guards are deliberate: they reject NaN as well.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod boundary;
pub mod bridge;
pub mod cli;
pub mod error;
pub mod fpt;
pub mod io;
pub mod mc;
pub mod oracle;
pub mod pde;
pub mod quad;
pub mod rng;
pub mod stats;

pub use boundary::{level_density, Boundary, BoundarySpec, ValidationReport};
pub use bridge::{McConfig, PathGrid};
pub use error::{Error, Result};
pub use fpt::{DensityBounds, DensityCurve};
pub use mc::Estimate;
pub use oracle::EmpiricalDistribution;
pub use pde::{Equation, Field2D, FourierData, GridSpec};
