use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;

use super::QubitSpec;
use crate::numeric::{c, ComplexScalar, StateVector};
use crate::tolerance::EPS_NORM;
use crate::{Error, Result};

/// Symbolic ket on one subsystem.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BranchLabel {
    /// Computational basis state `|k⟩`.
    Basis(usize),
    /// The governing qubit `|ψ⟩`.
    Psi,
    /// Its orthogonal complement `|ψ̄⟩`.
    PsiBar,
}

impl BranchLabel {
    pub const ZERO: Self = BranchLabel::Basis(0);
    pub const ONE: Self = BranchLabel::Basis(1);

    /// Amplitudes of this label on a qubit.
    pub fn qubit_amplitudes(self, psi: &QubitSpec) -> Result<[ComplexScalar; 2]> {
        Ok(match self {
            BranchLabel::Basis(0) => [c(1.0, 0.0), c(0.0, 0.0)],
            BranchLabel::Basis(1) => [c(0.0, 0.0), c(1.0, 0.0)],
            BranchLabel::Psi => [psi.a(), psi.b()],
            BranchLabel::PsiBar => {
                let bar = psi.orthogonal_complement();
                [bar.a(), bar.b()]
            }
            BranchLabel::Basis(_) => {
                return Err(Error::InvalidLabel {
                    label: self.to_string(),
                    dim: 2,
                })
            }
        })
    }

    fn amplitudes(self, dim: usize, psi: &QubitSpec) -> Result<Vec<ComplexScalar>> {
        match self {
            BranchLabel::Basis(k) if k < dim => {
                let mut v = vec![c(0.0, 0.0); dim];
                v[k] = c(1.0, 0.0);
                Ok(v)
            }
            BranchLabel::Psi | BranchLabel::PsiBar if dim == 2 => {
                Ok(self.qubit_amplitudes(psi)?.to_vec())
            }
            _ => Err(Error::InvalidLabel {
                label: self.to_string(),
                dim,
            }),
        }
    }
}

impl fmt::Display for BranchLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BranchLabel::Basis(k) => write!(f, "{k}"),
            BranchLabel::Psi => f.write_str("psi"),
            BranchLabel::PsiBar => f.write_str("psibar"),
        }
    }
}

/// Expansion of the machine's output on a qubit label, in labels:
/// `|0⟩ → (|0⟩+|1⟩)/√2`, `|1⟩ → (|0⟩−|1⟩)/√2`, `|ψ⟩ → (|ψ⟩+|ψ̄⟩)/√2`,
/// `|ψ̄⟩ → (|ψ⟩−|ψ̄⟩)/√2`.
pub fn desired_action_labels(label: BranchLabel) -> Result<[(ComplexScalar, BranchLabel); 2]> {
    let p = c(FRAC_1_SQRT_2, 0.0);
    let m = c(-FRAC_1_SQRT_2, 0.0);
    Ok(match label {
        BranchLabel::Basis(0) => [(p, BranchLabel::ZERO), (p, BranchLabel::ONE)],
        BranchLabel::Basis(1) => [(p, BranchLabel::ZERO), (m, BranchLabel::ONE)],
        BranchLabel::Psi => [(p, BranchLabel::Psi), (p, BranchLabel::PsiBar)],
        BranchLabel::PsiBar => [(p, BranchLabel::Psi), (m, BranchLabel::PsiBar)],
        BranchLabel::Basis(_) => {
            return Err(Error::InvalidLabel {
                label: label.to_string(),
                dim: 2,
            })
        }
    })
}

/// One branch: a coefficient times a product of per-subsystem labels.
#[derive(Debug, Clone, PartialEq)]
pub struct Term {
    pub coeff: ComplexScalar,
    pub labels: Vec<BranchLabel>,
}

impl Term {
    pub fn new(coeff: ComplexScalar, labels: Vec<BranchLabel>) -> Self {
        Self { coeff, labels }
    }
}

/// Symbolic superposition of labelled product kets. Every `Psi`/`PsiBar`
/// label refers to the single governing qubit held by the state.
#[derive(Debug, Clone, PartialEq)]
pub struct FormalState {
    psi: QubitSpec,
    dims: Vec<usize>,
    terms: Vec<Term>,
}

/// Result of evaluating a [`FormalState`] to amplitudes.
#[derive(Debug, Clone, PartialEq)]
pub struct Concretized {
    pub state: StateVector,
    /// Squared norm of the written superposition before any rescaling.
    pub formal_norm_sqr: f64,
    /// Set when the written coefficients were off unit norm by more than
    /// `EPS_NORM` and the state had to be rescaled.
    pub renormalized: bool,
}

impl FormalState {
    pub fn new(psi: QubitSpec, dims: Vec<usize>, terms: Vec<Term>) -> Result<Self> {
        if dims.is_empty() || dims.contains(&0) {
            return Err(Error::InvalidDims(dims));
        }
        for term in &terms {
            if term.labels.len() != dims.len() {
                return Err(Error::ShapeMismatch {
                    amplitudes: term.labels.len(),
                    dims,
                });
            }
            for (&label, &d) in term.labels.iter().zip(&dims) {
                label.amplitudes(d, &psi)?;
            }
        }
        Ok(Self { psi, dims, terms })
    }

    pub fn psi(&self) -> &QubitSpec {
        &self.psi
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    /// Expands labels into amplitudes and sums the branches.
    pub fn concretize(&self) -> Result<Concretized> {
        if self.terms.is_empty() {
            return Err(Error::EmptyFormalState);
        }
        let total: usize = self.dims.iter().product();
        let mut amps = vec![c(0.0, 0.0); total];
        for term in &self.terms {
            let mut product = vec![term.coeff];
            for (&label, &d) in term.labels.iter().zip(&self.dims) {
                let factor = label.amplitudes(d, &self.psi)?;
                product = product
                    .iter()
                    .flat_map(|&x| factor.iter().map(move |&y| x * y))
                    .collect();
            }
            for (acc, x) in amps.iter_mut().zip(product) {
                *acc += x;
            }
        }
        let formal_norm_sqr: f64 = amps.iter().map(|z| z.norm_sqr()).sum();
        let renormalized = (formal_norm_sqr - 1.0).abs() > EPS_NORM;
        let state = StateVector::new(amps, self.dims.clone())?;
        Ok(Concretized {
            state,
            formal_norm_sqr,
            renormalized,
        })
    }

    pub fn to_state(&self) -> Result<StateVector> {
        Ok(self.concretize()?.state)
    }
}

impl fmt::Display for FormalState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, term) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({})|", term.coeff)?;
            for (j, label) in term.labels.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{label}")?;
            }
            f.write_str(">")?;
        }
        Ok(())
    }
}

/// Replaces the label on `subsystem` in every branch by the machine's
/// prescribed output. The subsystem must be a qubit.
pub fn apply_machine(state: &FormalState, subsystem: usize) -> Result<FormalState> {
    if state.dims.get(subsystem) != Some(&2) {
        return Err(Error::OutsideMachineDomain(subsystem));
    }
    let mut terms = Vec::with_capacity(2 * state.terms.len());
    for term in &state.terms {
        for (coeff, label) in desired_action_labels(term.labels[subsystem])? {
            let mut labels = term.labels.clone();
            labels[subsystem] = label;
            terms.push(Term::new(term.coeff * coeff, labels));
        }
    }
    FormalState::new(state.psi, state.dims.clone(), terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::tensor_product;

    #[test]
    fn single_branch_concretizes_to_basis() {
        let f = FormalState::new(
            QubitSpec::zero(),
            vec![2],
            vec![Term::new(c(1.0, 0.0), vec![BranchLabel::ZERO])],
        )
        .unwrap();
        let out = f.concretize().unwrap();
        assert!(!out.renormalized);
        assert_eq!(out.state.amplitudes(), &[c(1.0, 0.0), c(0.0, 0.0)]);
    }

    #[test]
    fn empty_state_is_rejected() {
        let f = FormalState::new(QubitSpec::zero(), vec![2], vec![]).unwrap();
        assert_eq!(f.concretize(), Err(Error::EmptyFormalState));
    }

    #[test]
    fn labels_must_fit_their_subsystem() {
        let bad = FormalState::new(
            QubitSpec::zero(),
            vec![4],
            vec![Term::new(c(1.0, 0.0), vec![BranchLabel::Psi])],
        );
        assert!(matches!(bad, Err(Error::InvalidLabel { .. })));
        let bad = FormalState::new(
            QubitSpec::zero(),
            vec![2],
            vec![Term::new(c(1.0, 0.0), vec![BranchLabel::Basis(2)])],
        );
        assert!(matches!(bad, Err(Error::InvalidLabel { .. })));
    }

    #[test]
    fn machine_refuses_non_qubit_subsystem() {
        let f = FormalState::new(
            QubitSpec::zero(),
            vec![4, 2],
            vec![Term::new(c(1.0, 0.0), vec![BranchLabel::Basis(3), BranchLabel::ONE])],
        )
        .unwrap();
        assert_eq!(apply_machine(&f, 0), Err(Error::OutsideMachineDomain(0)));
        assert_eq!(apply_machine(&f, 2), Err(Error::OutsideMachineDomain(2)));
        assert_eq!(apply_machine(&f, 1).unwrap().terms().len(), 2);
    }

    #[test]
    fn renormalization_is_flagged() {
        let f = FormalState::new(
            QubitSpec::zero(),
            vec![2],
            vec![
                Term::new(c(1.0, 0.0), vec![BranchLabel::ZERO]),
                Term::new(c(1.0, 0.0), vec![BranchLabel::ONE]),
            ],
        )
        .unwrap();
        let out = f.concretize().unwrap();
        assert!(out.renormalized);
        assert!((out.formal_norm_sqr - 2.0).abs() < 1e-15);
        let plus = StateVector::new(vec![c(1.0, 0.0), c(1.0, 0.0)], vec![2]).unwrap();
        assert!(out.state.distance(&plus).unwrap() < 1e-15);
    }

    #[test]
    fn machine_on_psi_matches_desired_action() {
        let psi = QubitSpec::new(c(0.6, 0.0), c(0.0, 0.8)).unwrap();
        let f = FormalState::new(psi, vec![2], vec![Term::new(c(1.0, 0.0), vec![BranchLabel::Psi])])
            .unwrap();
        let out = apply_machine(&f, 0).unwrap().to_state().unwrap();
        let want = super::super::desired_action(BranchLabel::Psi, &psi).unwrap();
        assert!(out.distance(&want).unwrap() < 1e-15);
        // Labels of a single qubit compose under tensor product like kets.
        let two = tensor_product(&out, &want).unwrap();
        assert_eq!(two.dims(), &[2, 2]);
    }
}
