//! Dense statevectors and the local gate kernels used by the GBV pipeline.
//!
//! Basis index `x` encodes the bit string `x1 x2 ... xn` with `x1` the most
//! significant bit, so qubit `k` (1-based) lives at bit position `n - k`.
//! Hamming weights and dot products elsewhere in the crate use this encoding.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};

/// Largest supported register: 2^26 amplitudes, about 1 GiB.
pub const MAX_QUBITS: usize = 26;

/// Allowed deviation of `sum |a_x|^2` from one.
pub const NORM_TOLERANCE: f64 = 1e-10;

/// Elementwise tolerance for `G^dagger G = I`.
pub const UNITARITY_TOLERANCE: f64 = 1e-12;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

pub(crate) fn check_qubits(n: usize) -> Result<()> {
    if (1..=MAX_QUBITS).contains(&n) {
        Ok(())
    } else {
        Err(Error::Size(format!(
            "qubit count {n} outside supported range 1..={MAX_QUBITS}"
        )))
    }
}

/// `1/sqrt(N)`, correctly rounded since `1/N` is exact for powers of two.
#[inline]
fn inv_sqrt_dim(dim: usize) -> f64 {
    (1.0 / dim as f64).sqrt()
}

/// Number of set bits of `x`.
#[inline]
pub fn hamming_weight(x: u64) -> u32 {
    x.count_ones()
}

/// Amplitudes of an `n`-qubit register in the computational basis.
///
/// Every public constructor yields a unit-norm vector. The only exception is
/// the projected branch produced inside [`crate::gbv`], which carries the
/// `subnormalized` flag and is rejected by all other operations.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    n: usize,
    amplitudes: Vec<Complex64>,
    subnormalized: bool,
}

impl StateVector {
    /// Wraps `amplitudes` after checking the length is a power of two within
    /// range and the norm is one.
    pub fn from_amplitudes(amplitudes: Vec<Complex64>) -> Result<Self> {
        let len = amplitudes.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::Size(format!(
                "amplitude count {len} is not 2^n for n >= 1"
            )));
        }
        let n = len.trailing_zeros() as usize;
        check_qubits(n)?;
        let state = Self {
            n,
            amplitudes,
            subnormalized: false,
        };
        let norm = state.norm_sqr();
        if (norm - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::Validation(format!(
                "state norm^2 is {norm}, expected 1 within {NORM_TOLERANCE:e}"
            )));
        }
        Ok(state)
    }

    /// Same as [`from_amplitudes`](Self::from_amplitudes) but rescales to unit norm first.
    pub fn normalized(mut amplitudes: Vec<Complex64>) -> Result<Self> {
        let norm = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if !(norm.is_finite() && norm > 0.0) {
            return Err(Error::Validation("cannot normalize a zero vector".into()));
        }
        let inv = 1.0 / norm;
        amplitudes.iter_mut().for_each(|a| *a *= inv);
        Self::from_amplitudes(amplitudes)
    }

    /// Computational basis state `|index>`.
    pub fn basis_state(n: usize, index: u64) -> Result<Self> {
        check_qubits(n)?;
        let dim = 1u64 << n;
        if index >= dim {
            return Err(Error::Index(format!(
                "basis index {index} out of range for {n} qubits"
            )));
        }
        let mut amplitudes = vec![ZERO; dim as usize];
        amplitudes[index as usize] = ONE;
        Ok(Self {
            n,
            amplitudes,
            subnormalized: false,
        })
    }

    /// Flagged variant holding a projected, possibly subnormalized branch.
    pub(crate) fn projected_branch(n: usize, amplitudes: Vec<Complex64>) -> Self {
        debug_assert_eq!(amplitudes.len(), 1 << n);
        Self {
            n,
            amplitudes,
            subnormalized: true,
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    /// `N = 2^n`.
    pub fn dimension(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn amplitude(&self, index: u64) -> Complex64 {
        self.amplitudes[index as usize]
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn is_subnormalized(&self) -> bool {
        self.subnormalized
    }

    /// Born-rule probability of reading out `index`.
    pub fn probability(&self, index: u64) -> f64 {
        self.amplitude(index).norm_sqr()
    }

    pub(crate) fn ensure_unit(&self) -> Result<()> {
        if self.subnormalized {
            return Err(Error::Validation(
                "subnormalized projected branch is not accepted here".into(),
            ));
        }
        Ok(())
    }

    pub(crate) fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.amplitudes
    }

    /// Applies `gate` to qubit `qubit` (1-based, qubit 1 most significant).
    pub(crate) fn apply_gate_in_place(
        &mut self,
        gate: &SingleQubitGate,
        qubit: usize,
    ) -> Result<()> {
        if qubit == 0 || qubit > self.n {
            return Err(Error::Index(format!(
                "qubit {qubit} out of range 1..={}",
                self.n
            )));
        }
        let stride = 1usize << (self.n - qubit);
        let [[g00, g01], [g10, g11]] = gate.entries;
        for block in self.amplitudes.chunks_exact_mut(2 * stride) {
            let (lo, hi) = block.split_at_mut(stride);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x0, x1) = (*a, *b);
                *a = g00 * x0 + g01 * x1;
                *b = g10 * x0 + g11 * x1;
            }
        }
        Ok(())
    }

    /// In-place `H^{⊗n}`: `n` unscaled butterfly passes followed by a single
    /// `1/sqrt(N)` scaling.
    pub(crate) fn walsh_hadamard_in_place(&mut self) {
        let len = self.amplitudes.len();
        let mut half = 1;
        while half < len {
            for block in self.amplitudes.chunks_exact_mut(2 * half) {
                let (lo, hi) = block.split_at_mut(half);
                for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                    let t = *a;
                    *a = t + *b;
                    *b = t - *b;
                }
            }
            half <<= 1;
        }
        let scale = inv_sqrt_dim(len);
        self.amplitudes.iter_mut().for_each(|a| *a *= scale);
    }
}

/// A 2x2 unitary acting on one qubit, stored row-major.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SingleQubitGate {
    entries: [[Complex64; 2]; 2],
}

impl SingleQubitGate {
    /// Checks `G^dagger G = I` elementwise within [`UNITARITY_TOLERANCE`].
    pub fn new(entries: [[Complex64; 2]; 2]) -> Result<Self> {
        for i in 0..2 {
            for j in 0..2 {
                let entry =
                    entries[0][i].conj() * entries[0][j] + entries[1][i].conj() * entries[1][j];
                let expected = if i == j { ONE } else { ZERO };
                let dev = (entry - expected).norm();
                if dev.is_nan() || dev > UNITARITY_TOLERANCE {
                    return Err(Error::Validation(format!(
                        "gate is not unitary: (G^dagger G)[{i}][{j}] deviates by {dev:e}"
                    )));
                }
            }
        }
        Ok(Self { entries })
    }

    /// Skips validation for matrices unitary by construction.
    pub(crate) fn from_unitary_entries(entries: [[Complex64; 2]; 2]) -> Self {
        Self { entries }
    }

    pub fn identity() -> Self {
        Self {
            entries: [[ONE, ZERO], [ZERO, ONE]],
        }
    }

    pub fn hadamard() -> Self {
        let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        Self {
            entries: [[h, h], [h, -h]],
        }
    }

    pub fn pauli_x() -> Self {
        Self {
            entries: [[ZERO, ONE], [ONE, ZERO]],
        }
    }

    pub fn pauli_y() -> Self {
        let i = Complex64::i();
        Self {
            entries: [[ZERO, -i], [i, ZERO]],
        }
    }

    pub fn pauli_z() -> Self {
        Self {
            entries: [[ONE, ZERO], [ZERO, -ONE]],
        }
    }

    pub fn phase_s() -> Self {
        Self {
            entries: [[ONE, ZERO], [ZERO, Complex64::i()]],
        }
    }

    pub fn phase_t() -> Self {
        Self {
            entries: [
                [ONE, ZERO],
                [
                    ZERO,
                    Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4),
                ],
            ],
        }
    }

    pub fn entries(&self) -> [[Complex64; 2]; 2] {
        self.entries
    }

    /// `G|0>` as the pair `(c0, c1)`, i.e. the first column.
    pub fn first_column(&self) -> [Complex64; 2] {
        [self.entries[0][0], self.entries[1][0]]
    }
}

/// Mixed state `rho = sum_mu p_mu |psi_mu><psi_mu|` kept as its pure members.
#[derive(Clone, Debug)]
pub struct PureStateEnsemble {
    members: Vec<(f64, StateVector)>,
}

impl PureStateEnsemble {
    pub fn new(members: Vec<(f64, StateVector)>) -> Result<Self> {
        let Some((_, first)) = members.first() else {
            return Err(Error::Validation("ensemble has no members".into()));
        };
        let n = first.num_qubits();
        let mut total = 0.0;
        for (weight, state) in &members {
            if !(weight.is_finite() && *weight >= 0.0) {
                return Err(Error::Validation(format!(
                    "ensemble weight {weight} is not a probability"
                )));
            }
            if state.num_qubits() != n {
                return Err(Error::Size(format!(
                    "ensemble mixes {n}-qubit and {}-qubit members",
                    state.num_qubits()
                )));
            }
            state.ensure_unit()?;
            total += weight;
        }
        if (total - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::Validation(format!(
                "ensemble weights sum to {total}, expected 1"
            )));
        }
        Ok(Self { members })
    }

    pub fn pure(state: StateVector) -> Result<Self> {
        Self::new(vec![(1.0, state)])
    }

    pub fn num_qubits(&self) -> usize {
        self.members[0].1.num_qubits()
    }

    pub fn members(&self) -> &[(f64, StateVector)] {
        &self.members
    }
}

/// `|0^n>`.
pub fn zero_state(n: usize) -> Result<StateVector> {
    StateVector::basis_state(n, 0)
}

/// The maximally coherent state `|eta> = N^{-1/2} sum_x |x>`.
pub fn uniform_state(n: usize) -> Result<StateVector> {
    check_qubits(n)?;
    let dim = 1usize << n;
    let amp = Complex64::new(inv_sqrt_dim(dim), 0.0);
    Ok(StateVector {
        n,
        amplitudes: vec![amp; dim],
        subnormalized: false,
    })
}

/// `(I ⊗ ... ⊗ G ⊗ ... ⊗ I)|psi>` with `G` on `qubit` (1-based).
pub fn apply_single_qubit_gate(
    mut state: StateVector,
    gate: &SingleQubitGate,
    qubit: usize,
) -> Result<StateVector> {
    state.ensure_unit()?;
    state.apply_gate_in_place(gate, qubit)?;
    Ok(state)
}

/// `H^{⊗n}|psi>` in `O(N log N)`.
pub fn walsh_hadamard(mut state: StateVector) -> Result<StateVector> {
    state.ensure_unit()?;
    state.walsh_hadamard_in_place();
    Ok(state)
}

/// `|single>^{⊗copies}`; the amplitude at `x` is `c0^{n-H(x)} c1^{H(x)}`.
pub fn product_state(single: &StateVector, copies: usize) -> Result<StateVector> {
    if single.num_qubits() != 1 {
        return Err(Error::Size(format!(
            "product_state needs a 1-qubit factor, got {} qubits",
            single.num_qubits()
        )));
    }
    single.ensure_unit()?;
    check_qubits(copies)?;
    let [c0, c1] = [single.amplitudes[0], single.amplitudes[1]];
    Ok(hamming_product(c0, c1, copies))
}

/// Builds `sum_x c0^{n-H(x)} c1^{H(x)} |x>` from power tables.
pub(crate) fn hamming_product(c0: Complex64, c1: Complex64, n: usize) -> StateVector {
    let mut pow0 = Vec::with_capacity(n + 1);
    let mut pow1 = Vec::with_capacity(n + 1);
    let (mut p0, mut p1) = (ONE, ONE);
    for _ in 0..=n {
        pow0.push(p0);
        pow1.push(p1);
        p0 *= c0;
        p1 *= c1;
    }
    let amplitudes = (0..1u64 << n)
        .map(|x| {
            let h = hamming_weight(x) as usize;
            pow0[n - h] * pow1[h]
        })
        .collect();
    StateVector {
        n,
        amplitudes,
        subnormalized: false,
    }
}

/// `sum_x conj(a_x) b_x`.
pub fn inner_product(a: &StateVector, b: &StateVector) -> Result<Complex64> {
    if a.n != b.n {
        return Err(Error::Size(format!(
            "inner product of {}-qubit and {}-qubit states",
            a.n, b.n
        )));
    }
    Ok(a.amplitudes
        .iter()
        .zip(&b.amplitudes)
        .map(|(x, y)| x.conj() * y)
        .sum())
}

/// Haar-random pure state: `2^n` standard complex Gaussians, normalized.
/// Deterministic for a given `seed`.
pub fn random_state(n: usize, seed: u64) -> Result<StateVector> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_state_from_rng(n, &mut rng)
}

pub fn random_state_from_rng<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<StateVector> {
    check_qubits(n)?;
    let amplitudes = (0..1usize << n)
        .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
        .collect();
    StateVector::normalized(amplitudes)
}
