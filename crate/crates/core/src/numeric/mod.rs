//! Dense complex linear algebra over small Hilbert spaces.

mod eigen;
mod matrix;
mod measures;
mod state;

pub use eigen::{closed_form_2x2, hermitian_eigenvalues, jacobi_eigenvalues, Spectrum};
pub use matrix::{DensityMatrix, Matrix};
pub use measures::{entropy_of_spectrum, schmidt_rank, trace_distance, von_neumann_entropy};
pub use state::{partial_trace, tensor_product, StateVector};

/// Complex amplitude or matrix entry.
pub type ComplexScalar = num_complex::Complex64;

pub(crate) fn is_finite(z: ComplexScalar) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

/// Shorthand constructor used throughout the crate.
#[inline]
pub fn c(re: f64, im: f64) -> ComplexScalar {
    ComplexScalar::new(re, im)
}
