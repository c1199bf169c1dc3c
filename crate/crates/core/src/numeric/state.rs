use super::{is_finite, ComplexScalar, DensityMatrix, Matrix};
use crate::tolerance::{EPS_NORM, MAX_TOTAL_DIM};
use crate::{Error, Result};

/// Normalized pure state of a composite system.
///
/// Amplitudes are stored in row-major order over the subsystem dimensions:
/// the last subsystem varies fastest.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amplitudes: Vec<ComplexScalar>,
    dims: Vec<usize>,
}

fn total_dim(dims: &[usize]) -> Result<usize> {
    if dims.is_empty() || dims.iter().any(|&d| d == 0) {
        return Err(Error::InvalidDims(dims.to_vec()));
    }
    let mut total: usize = 1;
    for &d in dims {
        total = match total.checked_mul(d) {
            Some(t) if t <= MAX_TOTAL_DIM => t,
            _ => {
                return Err(Error::DimensionOverflow {
                    total: total.saturating_mul(d),
                    max: MAX_TOTAL_DIM,
                })
            }
        };
    }
    Ok(total)
}

pub(crate) fn squared_norm(amplitudes: &[ComplexScalar]) -> f64 {
    amplitudes.iter().map(|z| z.norm_sqr()).sum()
}

impl StateVector {
    /// Builds a state from raw amplitudes, renormalizing to unit norm.
    pub fn new(amplitudes: Vec<ComplexScalar>, dims: Vec<usize>) -> Result<Self> {
        let total = total_dim(&dims)?;
        if amplitudes.len() != total {
            return Err(Error::ShapeMismatch {
                amplitudes: amplitudes.len(),
                dims,
            });
        }
        if !amplitudes.iter().all(|&z| is_finite(z)) {
            return Err(Error::NonFinite("state amplitudes"));
        }
        let norm = squared_norm(&amplitudes).sqrt();
        if norm < f64::MIN_POSITIVE.sqrt() {
            return Err(Error::ZeroNorm);
        }
        let amplitudes: Vec<_> = amplitudes.into_iter().map(|z| z / norm).collect();
        let state = Self { amplitudes, dims };
        debug_assert!((state.norm_sqr() - 1.0).abs() <= EPS_NORM);
        Ok(state)
    }

    /// Like [`StateVector::new`] but refuses inputs whose squared norm is not
    /// already one within `EPS_NORM`.
    pub fn new_normalized(amplitudes: Vec<ComplexScalar>, dims: Vec<usize>) -> Result<Self> {
        let n = squared_norm(&amplitudes);
        if n.is_finite() && (n - 1.0).abs() > EPS_NORM {
            return Err(Error::NotNormalized(n));
        }
        Self::new(amplitudes, dims)
    }

    /// Computational basis state `|k⟩` of a single `dim`-level system.
    pub fn basis(dim: usize, k: usize) -> Result<Self> {
        if k >= dim {
            return Err(Error::InvalidDims(vec![dim]));
        }
        let mut amps = vec![ComplexScalar::new(0.0, 0.0); dim];
        amps[k] = ComplexScalar::new(1.0, 0.0);
        Self::new(amps, vec![dim])
    }

    pub fn amplitudes(&self) -> &[ComplexScalar] {
        &self.amplitudes
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn len(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amplitudes.is_empty()
    }

    pub fn norm_sqr(&self) -> f64 {
        squared_norm(&self.amplitudes)
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Self) -> Result<ComplexScalar> {
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch(self.len(), other.len()));
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(x, y)| x.conj() * y)
            .sum())
    }

    /// Euclidean distance between raw amplitude vectors (phase sensitive).
    pub fn distance(&self, other: &Self) -> Result<f64> {
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch(self.len(), other.len()));
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(x, y)| (x - y).norm_sqr())
            .sum::<f64>()
            .sqrt())
    }

    /// `|ψ⟩⟨ψ|` over the full space.
    pub fn projector(&self) -> DensityMatrix {
        let n = self.len();
        let mut m = Matrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = self.amplitudes[i] * self.amplitudes[j].conj();
            }
        }
        DensityMatrix::new(m).expect("projector of a normalized state is a density matrix")
    }

    pub fn tensor(&self, rhs: &Self) -> Result<Self> {
        tensor_product(self, rhs)
    }

    pub fn partial_trace(&self, keep: &[usize]) -> Result<DensityMatrix> {
        partial_trace(self, keep)
    }
}

/// Kronecker product of two normalized states; subsystem lists concatenate.
pub fn tensor_product(lhs: &StateVector, rhs: &StateVector) -> Result<StateVector> {
    let dims: Vec<usize> = lhs.dims.iter().chain(&rhs.dims).copied().collect();
    total_dim(&dims)?;
    let amplitudes = lhs
        .amplitudes
        .iter()
        .flat_map(|&x| rhs.amplitudes.iter().map(move |&y| x * y))
        .collect();
    StateVector::new(amplitudes, dims)
}

/// Reduced density matrix on the subsystems listed in `keep`, tracing out
/// the rest.
pub fn partial_trace(state: &StateVector, keep: &[usize]) -> Result<DensityMatrix> {
    let count = state.dims.len();
    let mut kept = keep.to_vec();
    kept.sort_unstable();
    kept.dedup();
    if kept.is_empty() || kept.len() != keep.len() || kept.iter().any(|&k| k >= count) {
        return Err(Error::InvalidSubsystems {
            keep: keep.to_vec(),
            count,
        });
    }
    let traced: Vec<usize> = (0..count).filter(|k| !kept.contains(k)).collect();
    let kept_dim: usize = kept.iter().map(|&k| state.dims[k]).product();
    let traced_dim: usize = traced.iter().map(|&k| state.dims[k]).product();

    // Reshape ψ into a kept × traced matrix, then ρ = M M†.
    let mut reshaped = vec![ComplexScalar::new(0.0, 0.0); kept_dim * traced_dim];
    let mut digits = vec![0usize; count];
    for (flat, &amp) in state.amplitudes.iter().enumerate() {
        let mut rem = flat;
        for s in (0..count).rev() {
            digits[s] = rem % state.dims[s];
            rem /= state.dims[s];
        }
        let row = kept.iter().fold(0, |acc, &s| acc * state.dims[s] + digits[s]);
        let col = traced.iter().fold(0, |acc, &s| acc * state.dims[s] + digits[s]);
        reshaped[row * traced_dim + col] = amp;
    }

    let mut rho = Matrix::zeros(kept_dim);
    for i in 0..kept_dim {
        for j in 0..kept_dim {
            let ri = &reshaped[i * traced_dim..(i + 1) * traced_dim];
            let rj = &reshaped[j * traced_dim..(j + 1) * traced_dim];
            rho[(i, j)] = ri.iter().zip(rj).map(|(x, y)| x * y.conj()).sum();
        }
    }
    DensityMatrix::new(rho)
}
