//! Numerical verification engine for the no-go arguments against a universal
//! Hadamard machine acting on arbitrary unknown qubits.
//!
//! The crate reproduces two protocols:
//!
//! * a no-signalling protocol, where Bob applies the hypothetical machine to
//!   his half of a shared entangled state and Alice compares her reduced
//!   density matrices ([`signalling`]);
//! * an entanglement-monotonicity protocol, where the machine acts on one of
//!   Bob's qubits in a state that is a product across the Alice/Bob cut and
//!   the entanglement entropy afterwards is measured ([`locc`]).
//!
//! Both protocols are consistent exactly on the one-parameter family
//! `(α + iβ)|0⟩ + α|1⟩` with `2α² + β² = 1`; [`characterize`] sweeps the qubit
//! state space to confirm it and emits Bloch-sphere trajectories.

pub mod characterize;
pub mod cli;
mod error;
pub mod locc;
pub mod numeric;
pub mod qubit;
pub mod signalling;
pub mod tolerance;

pub use error::{Error, Result};
pub use numeric::{ComplexScalar, DensityMatrix, Matrix, Spectrum, StateVector};
pub use qubit::{BranchLabel, EnsembleParam, FormalState, QubitSpec, Sign};
