//! Statevector simulation of the generalized Bernstein-Vazirani (GBV)
//! algorithm together with state and operator coherence-fraction analytics.
//!
//! The crate is organised bottom-up:
//!
//! - [`statevector`]: dense amplitudes, single-qubit gates, the fast
//!   Walsh-Hadamard transform and Haar-random states.
//! - [`coherence`]: fidelity, coherence fraction (overlap with the maximally
//!   coherent state), its operator form and the l1-norm of coherence.
//! - [`gbv`]: the linear phase oracle, the four-stage pipeline, identity
//!   verifiers, Born-rule sampling and the classical baseline.
//! - [`sweep`]: the product-state family `U(alpha, beta, theta)^{⊗n}`, its closed
//!   forms and parameter-grid sweeps.
//! - [`cli`]: the command-line surface used by the `gbv` binary.

pub mod cli;
pub mod coherence;
pub mod error;
pub mod gbv;
pub mod statevector;
pub mod sweep;

pub use error::{Error, Result};
pub use num_complex::Complex64;
