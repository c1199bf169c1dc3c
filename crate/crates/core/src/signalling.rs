//! No-signalling protocol.
//!
//! Alice (four levels) and Bob (one qubit) share
//! `½(|0⟩|0⟩ + |1⟩|ψ⟩ + |2⟩|1⟩ + |3⟩|ψ̄⟩)`. Bob runs the universal Hadamard
//! machine on his qubit and Alice's reduced state is compared before and
//! after. Any difference would let Bob signal to Alice without
//! communicating.

use crate::numeric::{partial_trace, trace_distance, DensityMatrix, Spectrum};
use crate::qubit::{apply_machine, BranchLabel, FormalState, QubitSpec, Term};
use crate::numeric::c;
use crate::tolerance::EPS_EIG;
use crate::Result;

pub const ALICE_DIM: usize = 4;
pub const ALICE: usize = 0;
pub const BOB: usize = 1;

/// Outcome of one run of the no-signalling protocol.
#[derive(Debug, Clone, PartialEq)]
pub struct SignallingVerdict {
    pub rho_before: DensityMatrix,
    pub rho_after: DensityMatrix,
    /// Trace distance between Alice's states.
    pub distance: f64,
    /// `α_a − α_b`, recovered from the change in the `|1⟩⟨0|` entry.
    pub residual_alpha: f64,
    /// `β_b`, recovered from the change in the `|3⟩⟨0|` entry.
    pub residual_beta: f64,
    pub signalling: bool,
    pub spectra_equal: bool,
    pub spectrum_before: Spectrum,
    pub spectrum_after: Spectrum,
    pub tol: f64,
}

pub fn build_signalling_resource(psi: &QubitSpec) -> FormalState {
    let half = c(0.5, 0.0);
    let terms = vec![
        Term::new(half, vec![BranchLabel::Basis(0), BranchLabel::ZERO]),
        Term::new(half, vec![BranchLabel::Basis(1), BranchLabel::Psi]),
        Term::new(half, vec![BranchLabel::Basis(2), BranchLabel::ONE]),
        Term::new(half, vec![BranchLabel::Basis(3), BranchLabel::PsiBar]),
    ];
    FormalState::new(*psi, vec![ALICE_DIM, 2], terms).expect("well-formed resource")
}

/// Bob's application of the machine to his qubit.
pub fn apply_machine_bob(resource: &FormalState) -> Result<FormalState> {
    apply_machine(resource, BOB)
}

fn alice_state(state: &FormalState) -> DensityMatrix {
    let concrete = state.to_state().expect("resource has nonzero norm");
    partial_trace(&concrete, &[ALICE]).expect("Alice is subsystem 0")
}

/// Alice's reduced state before Bob acts.
pub fn rdm_before(psi: &QubitSpec) -> DensityMatrix {
    alice_state(&build_signalling_resource(psi))
}

/// Alice's reduced state after Bob applies the machine.
pub fn rdm_after(psi: &QubitSpec) -> DensityMatrix {
    let after = apply_machine_bob(&build_signalling_resource(psi)).expect("Bob holds a qubit");
    alice_state(&after)
}

/// Solves the entry comparisons `ρ'(1,0) = ρ(1,0)` and `ρ'(3,0) = ρ(3,0)`
/// for the real residuals `(α_a − α_b, β_b)`.
///
/// The differences are `(α_b − α_a)/4` and `(2(α_a − α_b) + 4iβ_b)/8`.
pub fn coefficient_residuals(before: &DensityMatrix, after: &DensityMatrix) -> (f64, f64) {
    let d10 = after[(1, 0)] - before[(1, 0)];
    let d30 = after[(3, 0)] - before[(3, 0)];
    (-4.0 * d10.re, 2.0 * d30.im)
}

pub fn signalling_verdict(psi: &QubitSpec, tol: f64) -> SignallingVerdict {
    let rho_before = rdm_before(psi);
    let rho_after = rdm_after(psi);
    let distance = trace_distance(&rho_before, &rho_after).expect("both are 4x4");
    let (residual_alpha, residual_beta) = coefficient_residuals(&rho_before, &rho_after);
    let spectrum_before = rho_before.spectrum().clone();
    let spectrum_after = rho_after.spectrum().clone();
    let spectra_equal = spectrum_before.approx_eq(&spectrum_after, EPS_EIG);
    SignallingVerdict {
        signalling: distance > tol,
        rho_before,
        rho_after,
        distance,
        residual_alpha,
        residual_beta,
        spectra_equal,
        spectrum_before,
        spectrum_after,
        tol,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{von_neumann_entropy, ComplexScalar};
    use crate::qubit::{EnsembleParam, Sign};
    use crate::tolerance::{EPS_MAT, VIOLATION_TOL};

    const S: f64 = std::f64::consts::FRAC_1_SQRT_2;

    fn close(x: ComplexScalar, y: ComplexScalar, tol: f64) -> bool {
        (x - y).norm() <= tol
    }

    #[test]
    fn resource_is_normalized_and_maximally_entangled() {
        let psi = QubitSpec::new(c(S, 0.0), c(S, 0.0)).unwrap();
        let concrete = build_signalling_resource(&psi).concretize().unwrap();
        assert!(!concrete.renormalized);
        assert!((von_neumann_entropy(&rdm_before(&psi)) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn resource_amplitude_for_one_zero() {
        let psi = QubitSpec::new(c(0.6, 0.0), c(0.8, 0.0)).unwrap();
        let state = build_signalling_resource(&psi).to_state().unwrap();
        // |1⟩_A|0⟩_B has flat index 1·2 + 0.
        assert!(close(state.amplitudes()[2], c(0.3, 0.0), 1e-15));
    }

    #[test]
    fn before_entries() {
        let psi = QubitSpec::new(c(S, 0.0), c(0.0, S)).unwrap();
        let rho = rdm_before(&psi);
        assert!(close(rho[(1, 0)], psi.a() / 4.0, EPS_MAT));
        assert!(close(rho[(0, 3)], psi.b() / 4.0, EPS_MAT));
        assert!(close(rho[(2, 1)], c(0.0, -S / 4.0), EPS_MAT));

        let rho = rdm_before(&QubitSpec::zero());
        assert!(close(rho[(1, 0)], c(0.25, 0.0), EPS_MAT));
    }

    #[test]
    fn machine_expands_each_bob_branch() {
        let psi = QubitSpec::new(c(0.6, 0.0), c(0.0, 0.8)).unwrap();
        let after = apply_machine_bob(&build_signalling_resource(&psi)).unwrap();
        assert_eq!(after.terms().len(), 8);
        let k = 0.5 * S;
        assert_eq!(after.terms()[0], Term::new(c(k, 0.0), vec![BranchLabel::Basis(0), BranchLabel::ZERO]));
        assert_eq!(after.terms()[1], Term::new(c(k, 0.0), vec![BranchLabel::Basis(0), BranchLabel::ONE]));
        assert_eq!(after.terms()[6], Term::new(c(k, 0.0), vec![BranchLabel::Basis(3), BranchLabel::Psi]));
        assert_eq!(after.terms()[7], Term::new(c(-k, 0.0), vec![BranchLabel::Basis(3), BranchLabel::PsiBar]));
        assert!(!after.concretize().unwrap().renormalized);
    }

    #[test]
    fn after_has_flat_diagonal() {
        let psi = QubitSpec::new(c(0.6, 0.0), c(0.0, 0.8)).unwrap();
        let rho = rdm_after(&psi);
        for i in 0..4 {
            assert!(close(rho[(i, i)], c(0.25, 0.0), EPS_MAT));
        }
    }

    #[test]
    fn ensemble_state_does_not_signal() {
        let psi = EnsembleParam::new(0.5, Sign::Plus).unwrap().state();
        let v = signalling_verdict(&psi, VIOLATION_TOL);
        assert!(!v.signalling);
        assert!(v.residual_alpha.abs() < 1e-15 && v.residual_beta.abs() < 1e-15);
        assert!(v.spectra_equal);
    }

    #[test]
    fn generic_state_signals() {
        let psi = QubitSpec::new(c(S, 0.0), c(0.0, S)).unwrap();
        let v = signalling_verdict(&psi, VIOLATION_TOL);
        assert!(v.signalling);
        assert!((v.residual_alpha - S).abs() < 1e-14);
        assert!((v.residual_beta - S).abs() < 1e-14);
        assert!(v.spectra_equal);
    }
}
