use super::{ComplexScalar, Matrix};
use crate::tolerance::EPS_MAT;
use crate::{Error, Result};

const JACOBI_OFF_TOL: f64 = 1e-13;
const JACOBI_MAX_SWEEPS: usize = 50;

/// Real eigenvalues of a Hermitian operator, sorted descending.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    eigenvalues: Vec<f64>,
}

impl Spectrum {
    pub fn new(mut eigenvalues: Vec<f64>) -> Self {
        eigenvalues.sort_by(|a, b| b.total_cmp(a));
        Self { eigenvalues }
    }

    pub fn values(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    pub fn sum(&self) -> f64 {
        self.eigenvalues.iter().sum()
    }

    /// Largest pointwise deviation; infinite if the lengths differ.
    pub fn max_deviation(&self, other: &[f64]) -> f64 {
        if self.len() != other.len() {
            return f64::INFINITY;
        }
        let mut sorted = other.to_vec();
        sorted.sort_by(|a, b| b.total_cmp(a));
        self.eigenvalues
            .iter()
            .zip(&sorted)
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &Spectrum, tol: f64) -> bool {
        self.max_deviation(&other.eigenvalues) <= tol
    }
}

/// Eigenvalues of a Hermitian matrix: closed form for dimension ≤ 2, cyclic
/// Jacobi rotations above that.
pub fn hermitian_eigenvalues(m: &Matrix) -> Result<Spectrum> {
    let defect = m.hermiticity_defect();
    if defect > EPS_MAT * m.max_abs().max(1.0) {
        return Err(Error::NotHermitian(defect));
    }
    Ok(match m.dim() {
        0 => Spectrum::new(Vec::new()),
        1 => Spectrum::new(vec![m[(0, 0)].re]),
        2 => closed_form_2x2(m),
        _ => jacobi_eigenvalues(m),
    })
}

/// Roots of the characteristic quadratic of a 2×2 Hermitian matrix.
pub fn closed_form_2x2(m: &Matrix) -> Spectrum {
    assert_eq!(m.dim(), 2, "closed form requires a 2x2 matrix");
    let a = m[(0, 0)].re;
    let d = m[(1, 1)].re;
    let off = 0.5 * (m[(0, 1)] + m[(1, 0)].conj());
    let mean = 0.5 * (a + d);
    let radius = (0.5 * (a - d)).hypot(off.norm());
    Spectrum::new(vec![mean + radius, mean - radius])
}

fn off_diagonal_norm(a: &Matrix) -> f64 {
    let n = a.dim();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Cyclic complex Jacobi sweeps until the off-diagonal Frobenius norm drops
/// below `1e-13` (scaled by the matrix norm when that exceeds one) or fifty
/// sweeps have run. Usable at any dimension; it does not check Hermiticity.
pub fn jacobi_eigenvalues(m: &Matrix) -> Spectrum {
    let n = m.dim();
    let mut a = m.clone();
    for i in 0..n {
        a[(i, i)] = ComplexScalar::new(a[(i, i)].re, 0.0);
    }
    let threshold = JACOBI_OFF_TOL * m.frobenius().max(1.0);

    for _ in 0..JACOBI_MAX_SWEEPS {
        if off_diagonal_norm(&a) < threshold {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, p, q);
            }
        }
    }
    Spectrum::new((0..n).map(|i| a[(i, i)].re).collect())
}

// A ← J† A J, with J = diag(1, e^{-iφ}) followed by a real Givens rotation on
// the (p, q) plane, chosen so that the (p, q) entry vanishes.
fn rotate(a: &mut Matrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let r = apq.norm();
    if r == 0.0 {
        return;
    }
    let phase = apq / r;
    let theta = (a[(q, q)].re - a[(p, p)].re) / (2.0 * r);
    let t = if theta >= 0.0 {
        1.0 / (theta + theta.hypot(1.0))
    } else {
        -1.0 / (-theta + theta.hypot(1.0))
    };
    let c = 1.0 / t.hypot(1.0);
    let s = t * c;
    let n = a.dim();
    let jqp = -phase.conj() * s;
    let jqq = phase.conj() * c;

    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * c + akq * jqp;
        a[(k, q)] = akp * s + akq * jqq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = apk * c + aqk * jqp.conj();
        a[(q, k)] = apk * s + aqk * jqq.conj();
    }
    a[(p, q)] = ComplexScalar::new(0.0, 0.0);
    a[(q, p)] = ComplexScalar::new(0.0, 0.0);
    a[(p, p)].im = 0.0;
    a[(q, q)].im = 0.0;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::c;

    #[test]
    fn half_identity() {
        let m = Matrix::identity(2).scale(c(0.5, 0.0));
        assert_eq!(hermitian_eigenvalues(&m).unwrap().values(), &[0.5, 0.5]);
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = Matrix::from_rows(vec![
            vec![c(1.0, 0.0), c(0.0, 1.0)],
            vec![c(0.0, 1.0), c(1.0, 0.0)],
        ])
        .unwrap();
        assert!(matches!(hermitian_eigenvalues(&m), Err(Error::NotHermitian(_))));
    }

    #[test]
    fn jacobi_on_known_3x3() {
        // Tridiagonal [[2,-1,0],[-1,2,-1],[0,-1,2]] has eigenvalues 2-√2, 2, 2+√2.
        let m = Matrix::from_rows(vec![
            vec![c(2.0, 0.0), c(-1.0, 0.0), c(0.0, 0.0)],
            vec![c(-1.0, 0.0), c(2.0, 0.0), c(-1.0, 0.0)],
            vec![c(0.0, 0.0), c(-1.0, 0.0), c(2.0, 0.0)],
        ])
        .unwrap();
        let s = hermitian_eigenvalues(&m).unwrap();
        let r2 = 2f64.sqrt();
        assert!(s.max_deviation(&[2.0 + r2, 2.0, 2.0 - r2]) < 1e-13);
    }

    #[test]
    fn jacobi_on_complex_pauli_y() {
        let m = Matrix::from_rows(vec![
            vec![c(0.0, 0.0), c(0.0, -1.0)],
            vec![c(0.0, 1.0), c(0.0, 0.0)],
        ])
        .unwrap();
        assert!(jacobi_eigenvalues(&m).max_deviation(&[1.0, -1.0]) < 1e-15);
    }

    #[test]
    fn jacobi_on_complex_4x4_with_known_spectrum() {
        // U diag(d) U† with U a product of a Hadamard-like unitary and phases.
        let d = [0.4, 0.3, 0.2, 0.1];
        let h = 0.5;
        let u = Matrix::from_rows(vec![
            vec![c(h, 0.0), c(h, 0.0), c(h, 0.0), c(h, 0.0)],
            vec![c(h, 0.0), c(0.0, h), c(-h, 0.0), c(0.0, -h)],
            vec![c(h, 0.0), c(-h, 0.0), c(h, 0.0), c(-h, 0.0)],
            vec![c(h, 0.0), c(0.0, -h), c(-h, 0.0), c(0.0, h)],
        ])
        .unwrap();
        let mut diag = Matrix::zeros(4);
        for (i, &x) in d.iter().enumerate() {
            diag[(i, i)] = c(x, 0.0);
        }
        let m = u.mul(&diag).unwrap().mul(&u.adjoint()).unwrap();
        let s = hermitian_eigenvalues(&m).unwrap();
        assert!(s.max_deviation(&d) < 1e-14, "{:?}", s);
    }
}
