//! Fréchet distance for piecewise polynomial curves.
//!
//! The crate decides whether the (continuous) Fréchet distance between two
//! piecewise polynomial curves in R^d is at most a given threshold, computes
//! the distance itself, simplifies curves, and produces (1+eps)
//! approximations that are fast on realistic (c-packed) inputs.
//!
//! See the `examples/` directory for runnable entry points covering each
//! capability.

pub mod approx;
pub mod bernstein;
pub mod curve;
pub mod oracle;
pub mod plot;
pub mod polysolve;
pub mod report;
pub mod decision;
pub mod distance;
pub mod simplify;
pub mod error;
pub mod freespace;
pub mod generate;

pub use curve::{NormConfig, PiecewiseCurve, PolynomialPiece};
pub use error::{Error, Result};
