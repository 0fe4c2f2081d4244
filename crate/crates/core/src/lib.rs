//! Numerical laboratory for Yang-Mills gradient flows on a periodic 3-torus.
//!
//! The crate evolves su(n)-valued connection 1-forms under three coupled
//! dynamics and cross-checks every structural identity the continuum
//! equations satisfy:
//!
//! * parabolic: the Yang-Mills heat flow `∂_s A_i = D^l F_{li}`, integrated
//!   either in the DeTurck gauge (strictly parabolic) or directly in the
//!   caloric gauge,
//! * hyperbolic: the temporal-gauge Yang-Mills evolution with an optional
//!   tension-field source,
//! * pointwise matrix ODEs for gauge frames, used to move between gauges.
//!
//! Fields live on an N^3 periodic grid; derivatives are spectral (with a 2/3
//! dealiasing rule for products) with a second-order finite-difference path
//! kept as a cross-check.

pub mod algebra;
pub mod config;
pub mod diagnostics;
pub mod error;
pub mod field;
pub mod gauge;
pub mod grid;
pub mod heat;
pub mod io;
pub mod runner;
pub mod spectral;
pub mod transform;
pub mod wave;

pub use error::{Error, Result};
