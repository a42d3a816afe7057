//! Fidelity and coherence-fraction functionals.
//!
//! The coherence fraction of `rho` is its overlap `<eta|rho|eta>` with the
//! maximally coherent state `|eta> = N^{-1/2} sum_x |x>`. For a pure state
//! this is `|sum_x a_x|^2 / N`; for an ensemble it is the weighted sum of the
//! member values.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gbv::{apply_phase_oracle, LinearOracle};
use crate::statevector::{
    apply_single_qubit_gate, inner_product, walsh_hadamard, PureStateEnsemble, SingleQubitGate,
    StateVector,
};

/// Largest register accepted by [`l1_coherence`], which touches all `N^2`
/// density-matrix entries.
pub const L1_MAX_QUBITS: usize = 12;

/// A coherence-fraction value tagged with what it was evaluated on.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CoherenceReport {
    pub subject: String,
    pub value: f64,
}

impl CoherenceReport {
    pub fn new(subject: impl Into<String>, value: f64) -> Self {
        debug_assert!(
            (0.0..=1.0 + 1e-12).contains(&value),
            "coherence fraction {value}"
        );
        Self {
            subject: subject.into(),
            value,
        }
    }
}

/// `|<a|b>|^2` for two unit-norm pure states.
pub fn fidelity_pure(a: &StateVector, b: &StateVector) -> Result<f64> {
    a.ensure_unit()?;
    b.ensure_unit()?;
    Ok(inner_product(a, b)?.norm_sqr())
}

/// `C_F(psi) = |<eta|psi>|^2 = |sum_x a_x|^2 / N`.
pub fn coherence_fraction(state: &StateVector) -> Result<f64> {
    state.ensure_unit()?;
    Ok(eta_overlap_sqr(state))
}

/// `<eta|v><v|eta>` without any normalization requirement on `v`.
pub(crate) fn eta_overlap_sqr(state: &StateVector) -> f64 {
    let sum: num_complex::Complex64 = state.amplitudes().iter().sum();
    sum.norm_sqr() / state.dimension() as f64
}

pub fn coherence_report(
    state: &StateVector,
    subject: impl Into<String>,
) -> Result<CoherenceReport> {
    Ok(CoherenceReport::new(subject, coherence_fraction(state)?))
}

/// `<eta|rho|eta> = sum_mu p_mu |<eta|psi_mu>|^2`.
pub fn coherence_fraction_ensemble(rho: &PureStateEnsemble) -> f64 {
    rho.members()
        .iter()
        .map(|(p, psi)| p * eta_overlap_sqr(psi))
        .sum()
}

/// Transforms accepted by [`operator_coherence_fraction`].
#[derive(Clone, Debug)]
pub enum GateAction {
    Identity,
    /// The same single-qubit unitary applied to every qubit.
    LocalTensorPower(SingleQubitGate),
    PhaseOracle(LinearOracle),
    HadamardTensorPower,
}

impl GateAction {
    /// Applies the transform to `state`.
    pub fn apply(&self, state: StateVector) -> Result<StateVector> {
        match self {
            GateAction::Identity => {
                state.ensure_unit()?;
                Ok(state)
            }
            GateAction::LocalTensorPower(gate) => {
                let n = state.num_qubits();
                (1..=n).try_fold(state, |s, q| apply_single_qubit_gate(s, gate, q))
            }
            GateAction::PhaseOracle(oracle) => apply_phase_oracle(state, oracle),
            GateAction::HadamardTensorPower => walsh_hadamard(state),
        }
    }
}

/// Operator coherence fraction `C_F(U rho U^dagger)` with `rho = |reference><reference|`.
pub fn operator_coherence_fraction(
    gate_action: &GateAction,
    reference: &StateVector,
) -> Result<f64> {
    reference.ensure_unit()?;
    coherence_fraction(&gate_action.apply(reference.clone())?)
}

/// l1-norm of coherence, `sum_{i != j} |rho_ij|`, with the entries
/// `rho_ij = sum_mu p_mu a_{mu i} conj(a_{mu j})` accumulated on demand.
pub fn l1_coherence(rho: &PureStateEnsemble) -> Result<f64> {
    let n = rho.num_qubits();
    if n > L1_MAX_QUBITS {
        return Err(Error::Size(format!(
            "l1_coherence supports at most {L1_MAX_QUBITS} qubits, got {n}"
        )));
    }
    let dim = 1usize << n;
    let members = rho.members();
    let mut total = 0.0;
    let mut row = vec![num_complex::Complex64::new(0.0, 0.0); dim];
    for i in 0..dim {
        row.iter_mut()
            .for_each(|r| *r = num_complex::Complex64::new(0.0, 0.0));
        for (p, psi) in members {
            let amps = psi.amplitudes();
            let ai = amps[i] * *p;
            for (r, aj) in row.iter_mut().zip(amps) {
                *r += ai * aj.conj();
            }
        }
        total += row
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, r)| r.norm())
            .sum::<f64>();
    }
    Ok(total)
}
