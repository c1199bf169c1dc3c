//! Entanglement-monotonicity protocol.
//!
//! Alice holds one qubit and Bob two (`B1`, `B2`). The shared state
//! `|0⟩(|01⟩ − |10⟩)/√2 + |1⟩(|0ψ⟩ − |ψ0⟩)/√2` factorizes across the
//! Alice/Bob cut as `(|0⟩ + b|1⟩) ⊗ singlet`, so it carries no entanglement.
//! Bob applies the universal Hadamard machine to `B2`; entropy of Alice's
//! reduced state afterwards measures the entanglement created by a local
//! operation.

use crate::numeric::{
    c, entropy_of_spectrum, partial_trace, tensor_product, DensityMatrix, Matrix, StateVector,
};
use crate::qubit::{apply_machine, BranchLabel, FormalState, QubitSpec, Term};
use crate::tolerance::{CONSTRAINT_TOL, EPS_NORM};
use crate::{Error, Result};

pub const ALICE: usize = 0;
pub const B1: usize = 1;
pub const B2: usize = 2;

const IDENTITY_TOL: f64 = 1e-12;

/// Outcome of one run of the entanglement protocol.
#[derive(Debug, Clone, PartialEq)]
pub struct LoccVerdict {
    pub rho_before: DensityMatrix,
    pub rho_after: DensityMatrix,
    pub entropy_before: f64,
    pub entropy_after: f64,
    /// Normalization scalar `N` of the post-machine state.
    pub n: f64,
    pub lambda_plus: f64,
    pub lambda_minus: f64,
    /// `β_b² + ¾(α_a − α_b)²`.
    pub constraint_residual: f64,
    /// `(α_a + α_b)² − 4(N − 1)`; vanishes exactly when `λ₊ = 1`.
    pub purity_gap: f64,
    /// Squared norm of the resource as written, before rescaling.
    pub resource_norm_sqr: f64,
    pub violation: bool,
    pub constraint_violated: bool,
    pub degenerate: bool,
    pub tol: f64,
}

/// Prefactor written in front of the resource. It does not give unit norm;
/// concretization rescales and records that it did.
fn printed_prefactor(psi: &QubitSpec) -> f64 {
    1.0 / (1.0 + psi.b().norm_sqr())
}

pub fn build_locc_resource(psi: &QubitSpec) -> FormalState {
    const ZERO: BranchLabel = BranchLabel::ZERO;
    const ONE: BranchLabel = BranchLabel::ONE;
    const PSI: BranchLabel = BranchLabel::Psi;
    let k = printed_prefactor(psi) * std::f64::consts::FRAC_1_SQRT_2;
    let terms = vec![
        Term::new(c(k, 0.0), vec![ZERO, ZERO, ONE]),
        Term::new(c(-k, 0.0), vec![ZERO, ONE, ZERO]),
        Term::new(c(k, 0.0), vec![ONE, ZERO, PSI]),
        Term::new(c(-k, 0.0), vec![ONE, PSI, ZERO]),
    ];
    FormalState::new(*psi, vec![2, 2, 2], terms).expect("well-formed resource")
}

/// `(|0⟩ + b|1⟩)/√(1 + |b|²) ⊗ (|01⟩ − |10⟩)/√2`.
pub fn product_form(psi: &QubitSpec) -> StateVector {
    let alice = StateVector::new(vec![c(1.0, 0.0), psi.b()], vec![2]).expect("nonzero");
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let singlet = StateVector::new(
        vec![c(0.0, 0.0), c(r, 0.0), c(-r, 0.0), c(0.0, 0.0)],
        vec![2, 2],
    )
    .expect("normalized");
    tensor_product(&alice, &singlet).expect("dimension 8")
}

/// The antisymmetric `|0ψ⟩ − |ψ0⟩` branch equals `b(|01⟩ − |10⟩)` and
/// vanishes when `b = 0`.
pub fn is_degenerate(psi: &QubitSpec) -> bool {
    psi.b().norm() <= EPS_NORM
}

fn ensure_non_degenerate(psi: &QubitSpec) -> Result<()> {
    if is_degenerate(psi) {
        Err(Error::DegenerateResource(psi.b().norm()))
    } else {
        Ok(())
    }
}

pub fn rdm_before_locc(psi: &QubitSpec) -> Result<DensityMatrix> {
    ensure_non_degenerate(psi)?;
    Ok(rdm_before_unchecked(psi))
}

fn rdm_before_unchecked(psi: &QubitSpec) -> DensityMatrix {
    let state = build_locc_resource(psi).to_state().expect("nonzero resource");
    partial_trace(&state, &[ALICE]).expect("Alice is subsystem 0")
}

/// Bob's application of the machine to `B2`.
pub fn apply_machine_b2(resource: &FormalState) -> Result<FormalState> {
    apply_machine(resource, B2)
}

pub fn rdm_after_locc(psi: &QubitSpec) -> DensityMatrix {
    let after = apply_machine_b2(&build_locc_resource(psi)).expect("B2 is a qubit");
    let state = after.to_state().expect("nonzero post-machine state");
    partial_trace(&state, &[ALICE]).expect("Alice is subsystem 0")
}

/// `N = 2 + ¼((a − a*)² − (a + a*)(b + b*))`.
pub fn normalization(psi: &QubitSpec) -> f64 {
    let (a, b) = (psi.a(), psi.b());
    let v = (a - a.conj()).powi(2) - (a + a.conj()) * (b + b.conj());
    2.0 + 0.25 * v.re
}

/// `N = 1 + α_a² + α_b² + β_b² − α_a α_b`, equal to [`normalization`] on
/// normalized qubits.
pub fn normalization_real(psi: &QubitSpec) -> f64 {
    let (aa, ab, bb) = (psi.alpha_a(), psi.alpha_b(), psi.beta_b());
    1.0 + aa * aa + ab * ab + bb * bb - aa * ab
}

/// Squared norm of the post-machine superposition divided by the squared
/// printed prefactor. Computed from the concretized branches, independently
/// of the closed forms above.
pub fn normalization_from_state(psi: &QubitSpec) -> Result<f64> {
    let after = apply_machine_b2(&build_locc_resource(psi))?;
    let p = printed_prefactor(psi);
    Ok(after.concretize()?.formal_norm_sqr / (p * p))
}

/// `(1/N)[[1, (α_a + α_b)/2], [(α_a + α_b)/2, α_a² + α_b² + β_b² − α_a α_b]]`.
pub fn closed_form_after(psi: &QubitSpec) -> Result<Matrix> {
    let n = normalization_real(psi);
    if n <= EPS_NORM {
        return Err(Error::DegenerateNormalization(n));
    }
    let off = c(0.5 * (psi.alpha_a() + psi.alpha_b()) / n, 0.0);
    Matrix::from_rows(vec![
        vec![c(1.0 / n, 0.0), off],
        vec![off, c((n - 1.0) / n, 0.0)],
    ])
}

/// `λ± = ½ ± √((N − 2)² + (α_a + α_b)²) / (2N)`.
pub fn closed_form_eigenvalues(psi: &QubitSpec) -> Result<(f64, f64)> {
    let n = normalization(psi);
    if n <= EPS_NORM {
        return Err(Error::DegenerateNormalization(n));
    }
    let s = psi.alpha_a() + psi.alpha_b();
    let r = (n - 2.0).hypot(s) / (2.0 * n);
    Ok((0.5 + r, 0.5 - r))
}

/// `β_b² + ¾(α_a − α_b)²`; zero exactly on the special ensemble.
pub fn constraint_residual(psi: &QubitSpec) -> f64 {
    let d = psi.alpha_a() - psi.alpha_b();
    psi.beta_b().powi(2) + 0.75 * d * d
}

/// Runs the protocol; fails on the degenerate `b = 0` resource.
pub fn locc_verdict(psi: &QubitSpec, tol: f64) -> Result<LoccVerdict> {
    ensure_non_degenerate(psi)?;
    locc_verdict_unchecked(psi, tol)
}

/// Like [`locc_verdict`] but admits `b = 0`, marking the verdict degenerate.
/// The numerics remain well defined there; sweeps use this.
pub fn locc_verdict_unchecked(psi: &QubitSpec, tol: f64) -> Result<LoccVerdict> {
    let resource = build_locc_resource(psi);
    let before = resource.concretize()?;
    let after = apply_machine_b2(&resource)?.concretize()?;
    let rho_before = partial_trace(&before.state, &[ALICE])?;
    let rho_after = partial_trace(&after.state, &[ALICE])?;

    let n = normalization(psi);
    let p = printed_prefactor(psi);
    let n_state = after.formal_norm_sqr / (p * p);
    if (n - n_state).abs() > IDENTITY_TOL * n.abs().max(1.0) {
        return Err(Error::Inconsistent(format!(
            "N closed form {n} vs post-machine norm {n_state}"
        )));
    }
    let (lambda_plus, lambda_minus) = closed_form_eigenvalues(psi)?;

    // λ₊ = 1 ⇔ (α_a + α_b)² = 4(N − 1) ⇔ β_b² + ¾(α_a − α_b)² = 0. The gap
    // equals −4 × residual identically; check before reporting.
    let constraint_residual = constraint_residual(psi);
    let purity_gap = (psi.alpha_a() + psi.alpha_b()).powi(2) - 4.0 * (n - 1.0);
    if (purity_gap + 4.0 * constraint_residual).abs() > IDENTITY_TOL {
        return Err(Error::Inconsistent(format!(
            "purity gap {purity_gap} vs constraint residual {constraint_residual}"
        )));
    }

    let entropy_before = entropy_of_spectrum(rho_before.spectrum());
    let entropy_after = entropy_of_spectrum(rho_after.spectrum());
    Ok(LoccVerdict {
        rho_before,
        rho_after,
        entropy_before,
        entropy_after,
        n,
        lambda_plus,
        lambda_minus,
        constraint_residual,
        purity_gap,
        resource_norm_sqr: before.formal_norm_sqr,
        violation: entropy_after > tol,
        constraint_violated: constraint_residual > CONSTRAINT_TOL,
        degenerate: is_degenerate(psi),
        tol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{hermitian_eigenvalues, schmidt_rank, ComplexScalar};
    use crate::qubit::{EnsembleParam, Sign};
    use crate::tolerance::{EPS_EIG, EPS_MAT, VIOLATION_TOL};

    const S: f64 = std::f64::consts::FRAC_1_SQRT_2;

    fn generic() -> QubitSpec {
        QubitSpec::new(c(S, 0.0), c(0.0, S)).unwrap()
    }

    fn on_curve() -> QubitSpec {
        EnsembleParam::new(1.0 / 3f64.sqrt(), Sign::Plus).unwrap().state()
    }

    fn close(x: ComplexScalar, y: ComplexScalar, tol: f64) -> bool {
        (x - y).norm() <= tol
    }

    #[test]
    fn resource_is_product_and_matches_factorized_form() {
        let psi = generic();
        let concrete = build_locc_resource(&psi).concretize().unwrap();
        assert!(concrete.renormalized);
        assert!((concrete.formal_norm_sqr - 1.0 / 1.5).abs() < 1e-15);
        assert!((concrete.state.norm_sqr() - 1.0).abs() < 1e-15);
        assert_eq!(schmidt_rank(&concrete.state, &[ALICE], EPS_EIG).unwrap(), 1);
        assert!(concrete.state.distance(&product_form(&psi)).unwrap() < 1e-15);
    }

    #[test]
    fn zero_qubit_is_degenerate() {
        let psi = QubitSpec::zero();
        assert!(is_degenerate(&psi));
        assert!(matches!(rdm_before_locc(&psi), Err(Error::DegenerateResource(_))));
        assert!(matches!(locc_verdict(&psi, VIOLATION_TOL), Err(Error::DegenerateResource(_))));
        assert!(locc_verdict_unchecked(&psi, VIOLATION_TOL).unwrap().degenerate);
    }

    #[test]
    fn before_is_pure() {
        let psi = QubitSpec::new(c(0.6, 0.0), c(0.8, 0.0)).unwrap();
        let rho = rdm_before_locc(&psi).unwrap();
        assert!(close(rho[(0, 1)], c(0.8 / 1.64, 0.0), EPS_MAT));
        let s = hermitian_eigenvalues(&rho).unwrap();
        assert!(s.max_deviation(&[1.0, 0.0]) < EPS_EIG);
    }

    #[test]
    fn machine_on_b2_gives_eight_branches() {
        let after = apply_machine_b2(&build_locc_resource(&generic())).unwrap();
        assert_eq!(after.terms().len(), 8);
        let labels: Vec<_> = after.terms().iter().map(|t| t.labels.clone()).collect();
        assert!(labels.contains(&vec![BranchLabel::ONE, BranchLabel::ZERO, BranchLabel::Psi]));
        assert!(labels.contains(&vec![BranchLabel::ONE, BranchLabel::ZERO, BranchLabel::PsiBar]));
    }

    #[test]
    fn normalization_examples() {
        assert!((normalization(&generic()) - 2.0).abs() < 1e-15);
        assert!((normalization(&on_curve()) - 4.0 / 3.0).abs() < 1e-15);
        assert!((normalization_from_state(&generic()).unwrap() - 2.0).abs() < 1e-14);
    }

    #[test]
    fn after_examples() {
        let rho = rdm_after_locc(&generic());
        assert!((rho.trace().re - 1.0).abs() < EPS_MAT);
        // (α_a + α_b)/(2N) = (1/√2)/4
        assert!(close(rho[(0, 1)], c(S / 4.0, 0.0), EPS_MAT));
        let rho = rdm_after_locc(&on_curve());
        assert!(close(rho[(0, 1)], c(3f64.sqrt() / 4.0, 0.0), EPS_MAT));
    }

    #[test]
    fn eigenvalue_examples() {
        let (p, m) = closed_form_eigenvalues(&on_curve()).unwrap();
        assert!((p - 1.0).abs() < 1e-15 && m.abs() < 1e-15);
        let (p, m) = closed_form_eigenvalues(&generic()).unwrap();
        let r = 1.0 / (4.0 * 2f64.sqrt());
        assert!((p - 0.5 - r).abs() < 1e-15 && (m - 0.5 + r).abs() < 1e-15);
    }

    #[test]
    fn residual_examples() {
        assert!(constraint_residual(&on_curve()) < 1e-30);
        assert!((constraint_residual(&generic()) - 0.875).abs() < 1e-15);
        let psi = QubitSpec::new(c(0.6, 0.0), c(0.8, 0.0)).unwrap();
        assert!((constraint_residual(&psi) - 0.03).abs() < 1e-15);
    }

    #[test]
    fn verdicts() {
        let v = locc_verdict(&EnsembleParam::new(0.5, Sign::Plus).unwrap().state(), VIOLATION_TOL)
            .unwrap();
        assert!(!v.violation && !v.constraint_violated);
        assert!(v.entropy_after < 1e-12 && v.entropy_before < 1e-12);

        let v = locc_verdict(&generic(), VIOLATION_TOL).unwrap();
        assert!(v.violation && v.constraint_violated);
        assert!((v.entropy_after - 0.907_852_300_601_928_6).abs() < 1e-12);
        assert!((v.lambda_plus + v.lambda_minus - 1.0).abs() < EPS_EIG);
    }
}
