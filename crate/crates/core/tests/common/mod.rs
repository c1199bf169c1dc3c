//! Shared samplers and closed-form oracles. The oracles are transcribed
//! entry by entry from the known algebraic forms of Alice's reduced states
//! and share no code with the library's numeric path.
#![allow(dead_code)]

use hadamard_nogo::numeric::{c, ComplexScalar};
use hadamard_nogo::{EnsembleParam, QubitSpec, Sign};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type C = ComplexScalar;

/// Haar-random qubits with random global phase.
pub fn random_qubits(seed: u64, n: usize) -> Vec<QubitSpec> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let theta = (1.0 - 2.0 * rng.gen::<f64>()).acos();
            let phi = std::f64::consts::TAU * rng.gen::<f64>();
            let chi = std::f64::consts::TAU * rng.gen::<f64>();
            let a = C::from_polar((theta / 2.0).cos(), chi);
            let b = C::from_polar((theta / 2.0).sin(), chi + phi);
            QubitSpec::normalized(a, b).unwrap()
        })
        .collect()
}

/// `n` ensemble states with β spread over [−1, 1] and alternating α sign.
pub fn ensemble_points(n: usize) -> Vec<QubitSpec> {
    (0..n)
        .map(|k| {
            let beta = -1.0 + 2.0 * k as f64 / (n - 1) as f64;
            let sign = if k % 2 == 0 { Sign::Plus } else { Sign::Minus };
            EnsembleParam::new(beta, sign).unwrap().state()
        })
        .collect()
}

/// Alice's state before Bob acts, `(1/4)[...]` entry by entry.
pub fn rho_before_oracle(psi: &QubitSpec) -> [[C; 4]; 4] {
    let (a, b) = (psi.a(), psi.b());
    let (ac, bc) = (a.conj(), b.conj());
    let one = c(1.0, 0.0);
    let zero = c(0.0, 0.0);
    let q = 0.25;
    // rows are kets |i⟩, columns bras ⟨j|
    [
        [one * q, ac * q, zero, b * q],
        [a * q, one * q, b * q, zero],
        [zero, bc * q, one * q, -a * q],
        [bc * q, zero, -ac * q, one * q],
    ]
}

/// Alice's state after Bob's machine, `(1/8)[...]` entry by entry.
pub fn rho_after_oracle(psi: &QubitSpec) -> [[C; 4]; 4] {
    let (a, b) = (psi.a(), psi.b());
    let (ac, bc) = (a.conj(), b.conj());
    let e = 0.125;
    let d = c(0.25, 0.0);
    let zero = c(0.0, 0.0);
    let r10 = (a + bc + b - ac) * e;
    let r30 = (a - bc + b + ac) * e;
    let r01 = (ac + bc + b - a) * e;
    let r21 = (ac - bc + b + a) * e;
    let r12 = (a + bc - b + ac) * e;
    let r32 = (a - bc - b - ac) * e;
    let r03 = (a + bc - b + ac) * e;
    let r23 = (ac - bc - b - a) * e;
    [
        [d, r01, zero, r03],
        [r10, d, r12, zero],
        [zero, r21, d, r23],
        [r30, zero, r32, d],
    ]
}

/// Alice's state on the product resource: `[[1, b*], [b, |b|²]] / (1 + |b|²)`.
pub fn locc_before_oracle(psi: &QubitSpec) -> [[C; 2]; 2] {
    let b = psi.b();
    let k = 1.0 / (1.0 + b.norm_sqr());
    [[c(k, 0.0), b.conj() * k], [b * k, c(b.norm_sqr() * k, 0.0)]]
}

/// Alice's state after the machine on B2, in the complex-amplitude form
/// `(1/4N)[[4, s], [s, 4 + (a − a*)² − (a + a*)(b + b*)]]`, `s = a + a* + b + b*`.
pub fn locc_after_oracle(psi: &QubitSpec) -> [[C; 2]; 2] {
    let (a, b) = (psi.a(), psi.b());
    let n = 2.0 + 0.25 * ((a - a.conj()).powi(2) - (a + a.conj()) * (b + b.conj())).re;
    let s = a + a.conj() + b + b.conj();
    let dd = c(4.0, 0.0) + (a - a.conj()).powi(2) - (a + a.conj()) * (b + b.conj());
    let k = 1.0 / (4.0 * n);
    [[c(4.0 * k, 0.0), s * k], [s * k, dd * k]]
}

/// Eigenvalues of a 2×2 Hermitian matrix from the characteristic quadratic
/// `λ² − tλ + det = 0`.
pub fn quadratic_roots(m: [[C; 2]; 2]) -> (f64, f64) {
    let t = m[0][0].re + m[1][1].re;
    let det = m[0][0].re * m[1][1].re - m[0][1].norm_sqr();
    let disc = (t * t - 4.0 * det).max(0.0).sqrt();
    ((t + disc) / 2.0, (t - disc) / 2.0)
}

pub fn binary_entropy(p: f64) -> f64 {
    [p, 1.0 - p]
        .iter()
        .filter(|&&x| x > 0.0)
        .map(|&x| -x * x.log2())
        .sum()
}
