//! The arbitrary qubit, its orthogonal complement, the Hadamard matrix, the
//! hypothetical universal Hadamard machine, and the special ensemble on which
//! that machine is consistent.

mod formal;

pub use formal::{apply_machine, desired_action_labels, BranchLabel, Concretized, FormalState, Term};

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;

use crate::numeric::{c, is_finite, ComplexScalar, Matrix, StateVector};
use crate::tolerance::EPS_NORM;
use crate::{Error, Result};

/// Normalized qubit `a|0⟩ + b|1⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitSpec {
    a: ComplexScalar,
    b: ComplexScalar,
}

impl QubitSpec {
    /// Requires `|a|² + |b|² = 1` within `EPS_NORM`.
    pub fn new(a: ComplexScalar, b: ComplexScalar) -> Result<Self> {
        if !is_finite(a) || !is_finite(b) {
            return Err(Error::NonFinite("qubit amplitudes"));
        }
        let n = a.norm_sqr() + b.norm_sqr();
        if (n - 1.0).abs() > EPS_NORM {
            return Err(Error::NotNormalized(n));
        }
        Ok(Self { a, b })
    }

    /// Rescales `(a, b)` to unit norm.
    pub fn normalized(a: ComplexScalar, b: ComplexScalar) -> Result<Self> {
        if !is_finite(a) || !is_finite(b) {
            return Err(Error::NonFinite("qubit amplitudes"));
        }
        let n = (a.norm_sqr() + b.norm_sqr()).sqrt();
        if n == 0.0 || !n.is_finite() {
            return Err(Error::ZeroNorm);
        }
        Ok(Self { a: a / n, b: b / n })
    }

    pub fn zero() -> Self {
        Self {
            a: c(1.0, 0.0),
            b: c(0.0, 0.0),
        }
    }

    pub fn one() -> Self {
        Self {
            a: c(0.0, 0.0),
            b: c(1.0, 0.0),
        }
    }

    pub fn a(&self) -> ComplexScalar {
        self.a
    }

    pub fn b(&self) -> ComplexScalar {
        self.b
    }

    pub fn alpha_a(&self) -> f64 {
        self.a.re
    }

    pub fn beta_a(&self) -> f64 {
        self.a.im
    }

    pub fn alpha_b(&self) -> f64 {
        self.b.re
    }

    pub fn beta_b(&self) -> f64 {
        self.b.im
    }

    /// Both amplitudes nonzero. Basis states are admitted elsewhere but
    /// flagged through this.
    pub fn is_generic(&self) -> bool {
        self.a.norm() > EPS_NORM && self.b.norm() > EPS_NORM
    }

    pub fn to_state(&self) -> StateVector {
        StateVector::new(vec![self.a, self.b], vec![2]).expect("qubit spec is normalized")
    }

    /// `|ψ̄⟩ = b*|0⟩ − a*|1⟩`.
    pub fn orthogonal_complement(&self) -> Self {
        Self {
            a: self.b.conj(),
            b: -self.a.conj(),
        }
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Self) -> ComplexScalar {
        self.a.conj() * other.a + self.b.conj() * other.b
    }

    /// `(x, y, z) = (2 Re(a* b), 2 Im(a* b), |a|² − |b|²)`.
    pub fn bloch(&self) -> [f64; 3] {
        let ab = self.a.conj() * self.b;
        [2.0 * ab.re, 2.0 * ab.im, self.a.norm_sqr() - self.b.norm_sqr()]
    }
}

impl fmt::Display for QubitSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})|0> + ({})|1>", self.a, self.b)
    }
}

pub fn orthogonal_complement(psi: &QubitSpec) -> QubitSpec {
    psi.orthogonal_complement()
}

pub fn bloch_coordinates(psi: &QubitSpec) -> [f64; 3] {
    psi.bloch()
}

/// `(1/√2)[[1, 1], [1, −1]]`.
pub fn hadamard_matrix() -> Matrix {
    let h = FRAC_1_SQRT_2;
    Matrix::from_rows(vec![vec![c(h, 0.0), c(h, 0.0)], vec![c(h, 0.0), c(-h, 0.0)]])
        .expect("2x2")
}

/// Linear Hadamard applied to a qubit.
pub fn apply_hadamard(psi: &QubitSpec) -> [ComplexScalar; 2] {
    let h = FRAC_1_SQRT_2;
    [(psi.a + psi.b) * h, (psi.a - psi.b) * h]
}

/// What the universal machine is required to output on each branch label.
pub fn desired_action(label: BranchLabel, psi: &QubitSpec) -> Result<StateVector> {
    let mut amps = [c(0.0, 0.0); 2];
    for (coeff, out) in desired_action_labels(label)? {
        let v = out.qubit_amplitudes(psi)?;
        amps[0] += coeff * v[0];
        amps[1] += coeff * v[1];
    }
    StateVector::new(amps.to_vec(), vec![2])
}

/// Euclidean distance between `H|ψ⟩` and the machine's required output
/// `(|ψ⟩ + |ψ̄⟩)/√2`. Compares raw vectors, so global phase counts.
pub fn universality_defect(psi: &QubitSpec) -> f64 {
    let linear = apply_hadamard(psi);
    let wanted = desired_action(BranchLabel::Psi, psi).expect("Psi is in the machine domain");
    let w = wanted.amplitudes();
    ((linear[0] - w[0]).norm_sqr() + (linear[1] - w[1]).norm_sqr()).sqrt()
}

/// Same comparison up to a global phase: `min_χ ‖H|ψ⟩ − e^{iχ} out‖`.
/// Diagnostic only.
pub fn universality_defect_up_to_phase(psi: &QubitSpec) -> f64 {
    let linear = apply_hadamard(psi);
    let wanted = desired_action(BranchLabel::Psi, psi).expect("Psi is in the machine domain");
    let w = wanted.amplitudes();
    let overlap = linear[0].conj() * w[0] + linear[1].conj() * w[1];
    (2.0 - 2.0 * overlap.norm()).max(0.0).sqrt()
}

/// `|β_b| ≤ tol` and `|α_a − α_b| ≤ tol`.
pub fn in_ensemble(psi: &QubitSpec, tol: f64) -> bool {
    psi.beta_b().abs() <= tol && (psi.alpha_a() - psi.alpha_b()).abs() <= tol
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn factor(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        }
    }
}

/// Chart on the special ensemble `(α + iβ)|0⟩ + α|1⟩`, `2α² + β² = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnsembleParam {
    beta: f64,
    sign: Sign,
}

impl EnsembleParam {
    pub fn new(beta: f64, sign: Sign) -> Result<Self> {
        if !beta.is_finite() {
            return Err(Error::NonFinite("ensemble beta"));
        }
        if beta.abs() > 1.0 {
            return Err(Error::BetaOutOfRange(beta));
        }
        Ok(Self { beta, sign })
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    /// `sign · √((1 − β²)/2)`.
    pub fn alpha(&self) -> f64 {
        self.sign.factor() * ((1.0 - self.beta * self.beta) / 2.0).max(0.0).sqrt()
    }

    pub fn state(&self) -> QubitSpec {
        ensemble_state(self)
    }
}

pub fn ensemble_state(p: &EnsembleParam) -> QubitSpec {
    let alpha = p.alpha();
    QubitSpec::normalized(c(alpha, p.beta), c(alpha, 0.0))
        .expect("ensemble states have unit norm up to rounding")
}
