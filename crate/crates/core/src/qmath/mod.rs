//! Dense complex linear algebra and the density-matrix calculus: tensor
//! products, gate application, partial trace and measurement.

mod density;
pub mod gates;
mod kernels;
mod matrix;
mod observable;

pub use density::{tensor, DensityMatrix, Outcome};
pub use matrix::{ComplexMatrix, C64, ONE, ZERO};
pub use observable::{eigendecompose_1q, Eigenspace, Observable};

/// Tolerance for hermiticity, unitarity, trace and projector checks.
pub const TOLERANCE: f64 = 1e-10;

/// Measurement branches below this probability are dropped.
pub const PROBABILITY_FLOOR: f64 = 1e-12;
