//! Sweeps over qubit state space classifying every state by both protocols,
//! plus Bloch-sphere trajectories of the special ensemble and its
//! complements.

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::locc::{constraint_residual, locc_verdict_unchecked};
use crate::numeric::ComplexScalar;
use crate::qubit::{in_ensemble, EnsembleParam, QubitSpec, Sign};
use crate::signalling::signalling_verdict;
use crate::tolerance::VIOLATION_TOL;
use crate::{Error, Result};

pub const MAX_GRID_POINTS: u64 = 10_000_000;
/// Refinement only accepts seeds whose constraint residual is below this.
pub const REFINE_BASIN: f64 = 0.1;

/// Regular grid over `a = cos(θ/2)e^{iχ}`, `b = sin(θ/2)e^{i(χ+φ)}`.
///
/// `θ` covers `[0, π]` inclusive; `φ` and `χ` cover `[0, 2π)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SweepGrid {
    theta: usize,
    phi: usize,
    chi: usize,
}

impl SweepGrid {
    /// `theta` and `phi` need at least two points each; `chi` may be one,
    /// which pins the global phase to zero.
    pub fn new(theta: usize, phi: usize, chi: usize) -> Result<Self> {
        if theta < 2 || phi < 2 || chi < 1 {
            return Err(Error::InvalidGrid(format!(
                "resolutions must be theta >= 2, phi >= 2, chi >= 1; got {theta}x{phi}x{chi}"
            )));
        }
        let total = theta as u64 * phi as u64 * chi as u64;
        if total > MAX_GRID_POINTS {
            return Err(Error::GridTooLarge(total, MAX_GRID_POINTS));
        }
        Ok(Self { theta, phi, chi })
    }

    pub fn len(&self) -> usize {
        self.theta * self.phi * self.chi
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Grid parameters at a flat index; `θ` is the slowest axis, `χ` the
    /// fastest.
    pub fn params(&self, index: usize) -> (f64, f64, f64) {
        let k = index % self.chi;
        let j = (index / self.chi) % self.phi;
        let i = index / (self.chi * self.phi);
        let theta = PI * i as f64 / (self.theta - 1) as f64;
        let phi = 2.0 * PI * j as f64 / self.phi as f64;
        let chi = 2.0 * PI * k as f64 / self.chi as f64;
        (theta, phi, chi)
    }
}

pub fn qubit_at(theta: f64, phi: f64, chi: f64) -> QubitSpec {
    let a = ComplexScalar::from_polar((theta / 2.0).cos(), chi);
    let b = ComplexScalar::from_polar((theta / 2.0).sin(), chi + phi);
    QubitSpec::normalized(a, b).expect("grid amplitudes have unit norm")
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClassificationRecord {
    pub theta: f64,
    pub phi: f64,
    pub chi: f64,
    pub bloch: [f64; 3],
    pub signalling_distance: f64,
    pub entropy_after: f64,
    pub constraint_residual: f64,
    pub in_ensemble: bool,
    /// Both amplitudes nonzero.
    pub generic: bool,
}

pub fn classify(theta: f64, phi: f64, chi: f64) -> Result<ClassificationRecord> {
    let psi = qubit_at(theta, phi, chi);
    let signalling = signalling_verdict(&psi, VIOLATION_TOL);
    let locc = locc_verdict_unchecked(&psi, VIOLATION_TOL)?;
    Ok(ClassificationRecord {
        theta,
        phi,
        chi,
        bloch: psi.bloch(),
        signalling_distance: signalling.distance,
        entropy_after: locc.entropy_after,
        constraint_residual: constraint_residual(&psi),
        in_ensemble: in_ensemble(&psi, VIOLATION_TOL),
        generic: psi.is_generic(),
    })
}

/// One record per grid point, in grid order. Points are evaluated in
/// parallel; the output does not depend on scheduling.
pub fn sweep(grid: &SweepGrid) -> Result<Vec<ClassificationRecord>> {
    (0..grid.len())
        .into_par_iter()
        .map(|index| {
            let (theta, phi, chi) = grid.params(index);
            classify(theta, phi, chi)
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrajectoryKind {
    Ensemble,
    Complement,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectoryPoint {
    pub beta: f64,
    /// Signed `α`; its sign selects the branch of the ensemble.
    pub alpha: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

/// `points` uniformly spaced values of `β` in `[−1, 1]`, for `α > 0` then
/// `α < 0`.
pub fn trajectory(points: usize, which: TrajectoryKind) -> Result<Vec<TrajectoryPoint>> {
    if points < 2 {
        return Err(Error::InvalidGrid(format!("trajectory needs >= 2 points, got {points}")));
    }
    let mut out = Vec::with_capacity(2 * points);
    for sign in [Sign::Plus, Sign::Minus] {
        for k in 0..points {
            let beta = (-1.0 + 2.0 * k as f64 / (points - 1) as f64).clamp(-1.0, 1.0);
            let param = EnsembleParam::new(beta, sign)?;
            let psi = match which {
                TrajectoryKind::Ensemble => param.state(),
                TrajectoryKind::Complement => param.state().orthogonal_complement(),
            };
            let [x, y, z] = psi.bloch();
            out.push(TrajectoryPoint {
                beta,
                alpha: param.alpha(),
                x,
                y,
                z,
            });
        }
    }
    Ok(out)
}

/// Projects a near-consistent state onto the special ensemble: `β_b ← 0`,
/// `α_a, α_b ←` their mean, `β_a` kept, then renormalized.
pub fn zero_set_refine(seed: &QubitSpec, tol: f64) -> Result<QubitSpec> {
    let residual = constraint_residual(seed);
    if !(residual < REFINE_BASIN) {
        return Err(Error::OutsideBasin(residual, REFINE_BASIN));
    }
    let mean = 0.5 * (seed.alpha_a() + seed.alpha_b());
    let out = QubitSpec::normalized(
        ComplexScalar::new(mean, seed.beta_a()),
        ComplexScalar::new(mean, 0.0),
    )?;
    if !in_ensemble(&out, tol) {
        return Err(Error::Inconsistent(format!("refined state {out} left the ensemble")));
    }
    Ok(out)
}
