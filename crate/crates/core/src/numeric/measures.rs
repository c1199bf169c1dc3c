use super::{hermitian_eigenvalues, DensityMatrix, Matrix, Spectrum, StateVector};
use crate::{Error, Result};

/// `½‖p − q‖₁`, clamped to `[0, 1]`.
pub fn trace_distance(p: &DensityMatrix, q: &DensityMatrix) -> Result<f64> {
    if p.dim() != q.dim() {
        return Err(Error::DimensionMismatch(p.dim(), q.dim()));
    }
    // Subtract in a canonical operand order so the result is exactly symmetric.
    let (p, q) = if lexicographic_le(p, q) { (p, q) } else { (q, p) };
    let diff = p.sub(q)?;
    let spectrum = hermitian_eigenvalues(&diff)?;
    let d = 0.5 * spectrum.values().iter().map(|x| x.abs()).sum::<f64>();
    Ok(d.clamp(0.0, 1.0))
}

fn lexicographic_le(p: &Matrix, q: &Matrix) -> bool {
    for (x, y) in p.rows().flatten().zip(q.rows().flatten()) {
        match x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im)) {
            std::cmp::Ordering::Equal => continue,
            ord => return ord.is_lt(),
        }
    }
    true
}

/// Von Neumann entropy in bits.
pub fn von_neumann_entropy(p: &DensityMatrix) -> f64 {
    entropy_of_spectrum(p.spectrum())
}

/// `−Σ λ log₂ λ` with eigenvalues clamped into `[0, 1]` and `0·log 0 = 0`.
pub fn entropy_of_spectrum(spectrum: &Spectrum) -> f64 {
    spectrum
        .values()
        .iter()
        .map(|&x| x.clamp(0.0, 1.0))
        .filter(|&x| x > 0.0)
        .map(|x| -x * x.log2())
        .sum::<f64>()
        .max(0.0)
}

/// Number of Schmidt coefficients above `tol` across the cut separating
/// `keep` from the remaining subsystems.
pub fn schmidt_rank(state: &StateVector, keep: &[usize], tol: f64) -> Result<usize> {
    let rho = state.partial_trace(keep)?;
    Ok(rho.spectrum().values().iter().filter(|&&x| x > tol).count())
}
