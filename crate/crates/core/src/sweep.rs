//! The product-state family `U(alpha, beta, theta)^{⊗n}` and its coherence dynamics.
//!
//! With `c = sin(2 theta) cos(alpha - beta)` the stage values under the
//! parity oracle are
//!
//! | stage         | closed form          |
//! |---------------|----------------------|
//! | input         | `1 / 2^n`            |
//! | post-unitary  | `((1 + c) / 2)^n`    |
//! | post-oracle   | `((1 - c) / 2)^n`    |
//! | post-hadamard | `((1 + c) / 2)^n / 2^n` |
//!
//! using `|e^{i alpha} cos(theta) ± e^{i beta} sin(theta)|^2 = 1 ± c`.

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gbv::{run_gbv_summary, LinearOracle, Prep, Stage};
use crate::statevector::{check_qubits, hamming_weight, SingleQubitGate, StateVector};

/// Largest allowed `|closed form - simulated|` on any sweep row.
pub const AGREEMENT_TOLERANCE: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LocalUnitaryParams {
    pub alpha: f64,
    pub beta: f64,
    pub theta: f64,
}

impl LocalUnitaryParams {
    pub fn new(alpha: f64, beta: f64, theta: f64) -> Self {
        Self { alpha, beta, theta }
    }

    /// `sin(2 theta) cos(alpha - beta)`.
    pub fn overlap_factor(&self) -> f64 {
        (2.0 * self.theta).sin() * (self.alpha - self.beta).cos()
    }

    /// `(e^{i alpha} cos(theta), e^{i beta} sin(theta))`, the state `U|0>`.
    pub fn single_qubit_amplitudes(&self) -> [Complex64; 2] {
        [
            Complex64::from_polar(self.theta.cos(), self.alpha),
            Complex64::from_polar(self.theta.sin(), self.beta),
        ]
    }
}

/// `[[e^{i alpha} cos t, e^{-i beta} sin t], [e^{i beta} sin t, -e^{-i alpha} cos t]]`.
///
/// Unitary for every finite choice of angles; non-finite angles yield NaN
/// entries that surface later as failed agreement checks.
pub fn local_unitary(params: &LocalUnitaryParams) -> SingleQubitGate {
    let LocalUnitaryParams { alpha, beta, theta } = *params;
    if !(0.0..=FRAC_PI_2).contains(&theta) {
        log::warn!("theta = {theta} lies outside [0, pi/2]");
    }
    let (cos, sin) = (theta.cos(), theta.sin());
    let entries = [
        [
            Complex64::from_polar(cos, alpha),
            Complex64::from_polar(sin, -beta),
        ],
        [
            Complex64::from_polar(sin, beta),
            -Complex64::from_polar(cos, -alpha),
        ],
    ];
    SingleQubitGate::from_unitary_entries(entries)
}

/// `|phi>^{⊗n}` with `|phi> = U(alpha, beta, theta)|0>`, evaluated amplitude by
/// amplitude from the Hamming-weight formula.
pub fn example_initial_state(params: &LocalUnitaryParams, n: usize) -> Result<StateVector> {
    check_qubits(n)?;
    let [c0, c1] = params.single_qubit_amplitudes();
    let amplitudes = (0..1u64 << n)
        .map(|x| {
            let h = hamming_weight(x);
            c0.powu(n as u32 - h) * c1.powu(h)
        })
        .collect();
    StateVector::from_amplitudes(amplitudes)
}

/// Closed-form coherence fraction of `stage` under the parity oracle.
pub fn closed_form_cf(stage: Stage, params: &LocalUnitaryParams, n: usize) -> f64 {
    let c = params.overlap_factor();
    let inv_dim = 0.5f64.powi(n as i32);
    match stage {
        Stage::Input => inv_dim,
        Stage::PostUnitary => ((1.0 + c) / 2.0).powi(n as i32),
        Stage::PostOracle => ((1.0 - c) / 2.0).powi(n as i32),
        Stage::PostHadamard => ((1.0 + c) / 2.0).powi(n as i32) * inv_dim,
    }
}

/// Closed form addressed by its stage label.
pub fn closed_form_cf_by_label(stage: &str, params: &LocalUnitaryParams, n: usize) -> Result<f64> {
    Ok(closed_form_cf(stage.parse()?, params, n))
}

/// The oracle with `z = 1^n`: `l(x)` is the parity of the Hamming weight of `x`.
pub fn parity_oracle(n: usize) -> Result<LinearOracle> {
    check_qubits(n)?;
    LinearOracle::new(n, (1u64 << n) - 1)
}

/// A closed-form value (when one applies) next to the simulated one.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct StagePair {
    pub closed_form: Option<f64>,
    pub simulated: f64,
}

impl StagePair {
    pub fn deviation(&self) -> Option<f64> {
        self.closed_form.map(|c| (c - self.simulated).abs())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRow {
    pub params: LocalUnitaryParams,
    pub n: usize,
    /// Indexed by [`Stage::index`].
    pub stages: [StagePair; 4],
    pub success_probability: f64,
}

impl SweepRow {
    pub fn stage(&self, stage: Stage) -> StagePair {
        self.stages[stage.index()]
    }

    pub fn max_deviation(&self) -> f64 {
        self.stages
            .iter()
            .filter_map(StagePair::deviation)
            .fold(0.0, f64::max)
    }
}

/// Runs the pipeline for `params` under the parity oracle and pairs every
/// stage with its closed form. Fails if any pair disagrees by more than
/// [`AGREEMENT_TOLERANCE`].
pub fn dynamics_trace(params: &LocalUnitaryParams, n: usize) -> Result<SweepRow> {
    dynamics_trace_with_oracle(params, &parity_oracle(n)?)
}

/// As [`dynamics_trace`] for an arbitrary secret. The post-oracle closed form
/// only holds for the parity oracle and is left absent otherwise; the other
/// stages do not depend on `z`.
pub fn dynamics_trace_with_oracle(
    params: &LocalUnitaryParams,
    oracle: &LinearOracle,
) -> Result<SweepRow> {
    let n = oracle.num_qubits();
    check_qubits(n)?;
    let parity = oracle.secret() == (1u64 << n) - 1;
    let summary = run_gbv_summary(oracle, &Prep::TensorPower(local_unitary(params)))?;
    let stages = Stage::ALL.map(|stage| StagePair {
        closed_form: (parity || stage != Stage::PostOracle)
            .then(|| closed_form_cf(stage, params, n)),
        simulated: summary.cf_trace[stage.index()],
    });
    let row = SweepRow {
        params: *params,
        n,
        stages,
        success_probability: summary.success_probability,
    };
    let dev = row.max_deviation();
    if dev.is_nan() || dev > AGREEMENT_TOLERANCE {
        return Err(Error::CheckFailed(format!(
            "closed form and simulation differ by {dev:e} at n={n}, {params:?}"
        )));
    }
    Ok(row)
}

/// Parameter grid; rows are produced in lexicographic `(n, alpha, beta, theta)`
/// order following each list's own order.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SweepGrid {
    pub alphas: Vec<f64>,
    pub betas: Vec<f64>,
    pub thetas: Vec<f64>,
    pub ns: Vec<usize>,
}

impl SweepGrid {
    pub fn points(&self) -> Vec<(usize, LocalUnitaryParams)> {
        let mut points = Vec::with_capacity(self.len());
        for &n in &self.ns {
            for &alpha in &self.alphas {
                for &beta in &self.betas {
                    for &theta in &self.thetas {
                        points.push((n, LocalUnitaryParams::new(alpha, beta, theta)));
                    }
                }
            }
        }
        points
    }

    pub fn len(&self) -> usize {
        self.ns.len() * self.alphas.len() * self.betas.len() * self.thetas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Evaluates [`dynamics_trace`] on every grid point. Points run in parallel;
/// rows come back in grid order.
pub fn sweep(grid: &SweepGrid) -> Result<Vec<SweepRow>> {
    if grid.is_empty() {
        return Err(Error::Validation("sweep grid has an empty axis".into()));
    }
    for &n in &grid.ns {
        check_qubits(n)?;
    }
    grid.points()
        .par_iter()
        .map(|(n, params)| dynamics_trace(params, *n))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::statevector::{product_state, uniform_state, zero_state};
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    fn p(alpha: f64, beta: f64, theta: f64) -> LocalUnitaryParams {
        LocalUnitaryParams::new(alpha, beta, theta)
    }

    fn assert_gate_close(g: &SingleQubitGate, expected: [[Complex64; 2]; 2]) {
        for (row, erow) in g.entries().iter().zip(expected) {
            for (a, b) in row.iter().zip(erow) {
                assert!((a - b).norm() < 1e-15, "{a} vs {b}");
            }
        }
    }

    #[test]
    fn local_unitary_examples() {
        let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
        assert_gate_close(&local_unitary(&p(0.0, 0.0, PI / 4.0)), [[h, h], [h, -h]]);
        assert_gate_close(
            &local_unitary(&p(0.0, 0.0, 0.0)),
            SingleQubitGate::pauli_z().entries(),
        );
        let col = local_unitary(&p(PI / 2.0, 0.0, PI / 4.0)).first_column();
        assert!((col[0] - Complex64::new(0.0, FRAC_1_SQRT_2)).norm() < 1e-15);
        assert!((col[1] - h).norm() < 1e-15);
    }

    #[test]
    fn local_unitary_accepts_out_of_range_theta() {
        let g = local_unitary(&p(0.4, 1.3, 2.5));
        SingleQubitGate::new(g.entries()).unwrap();
    }

    #[test]
    fn example_initial_state_examples() {
        for n in 1..=6 {
            let eta = example_initial_state(&p(0.0, 0.0, PI / 4.0), n).unwrap();
            for (a, b) in eta
                .amplitudes()
                .iter()
                .zip(uniform_state(n).unwrap().amplitudes())
            {
                assert!((a - b).norm() < 1e-15);
            }
            assert_eq!(
                example_initial_state(&p(0.0, 0.0, 0.0), n).unwrap(),
                zero_state(n).unwrap()
            );
        }
        let s = example_initial_state(&p(0.0, 0.0, PI / 8.0), 2).unwrap();
        assert_abs_diff_eq!(
            s.amplitude(0b11).re,
            (PI / 8.0).sin().powi(2),
            epsilon = 1e-15
        );
    }

    #[test]
    fn example_initial_state_matches_product_state() {
        let params = p(0.9, -0.4, 1.1);
        let single =
            StateVector::from_amplitudes(params.single_qubit_amplitudes().to_vec()).unwrap();
        for n in 1..=8 {
            let a = example_initial_state(&params, n).unwrap();
            let b = product_state(&single, n).unwrap();
            for (x, y) in a.amplitudes().iter().zip(b.amplitudes()) {
                assert!((x - y).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn closed_form_examples() {
        for n in 1..=8 {
            assert_abs_diff_eq!(
                closed_form_cf(Stage::PostUnitary, &p(PI / 4.0, PI / 4.0, PI / 4.0), n),
                1.0,
                epsilon = 1e-15
            );
            assert_abs_diff_eq!(
                closed_form_cf(Stage::PostOracle, &p(PI / 4.0, PI / 4.0, PI / 4.0), n),
                0.0,
                epsilon = 1e-15
            );
        }
        let v = closed_form_cf(Stage::PostUnitary, &p(PI, PI / 4.0, PI / 4.0), 2);
        assert_abs_diff_eq!(
            v,
            ((1.0 - 2f64.sqrt() / 2.0) / 2.0).powi(2),
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(v, 0.02144661, epsilon = 1e-8);
        assert!(matches!(
            closed_form_cf_by_label("after-oracle", &p(0.0, 0.0, 0.0), 2),
            Err(Error::Validation(_))
        ));
    }

    #[test]
    fn real_simplification_matches_complex_power() {
        for &(a, b, t) in &[
            (0.0, 0.0, PI / 8.0),
            (1.2, -0.3, 0.9),
            (PI, PI / 4.0, PI / 3.0),
        ] {
            let params = p(a, b, t);
            let [c0, c1] = params.single_qubit_amplitudes();
            for n in 1..=8u32 {
                let plus = (c0 + c1).powu(n).norm_sqr() / 2f64.powi(n as i32);
                let minus = (c0 - c1).powu(n).norm_sqr() / 2f64.powi(n as i32);
                assert_abs_diff_eq!(
                    plus,
                    closed_form_cf(Stage::PostUnitary, &params, n as usize),
                    epsilon = 1e-12
                );
                assert_abs_diff_eq!(
                    minus,
                    closed_form_cf(Stage::PostOracle, &params, n as usize),
                    epsilon = 1e-12
                );
            }
        }
    }

    #[test]
    fn parity_oracle_examples() {
        assert_eq!(parity_oracle(1).unwrap().bit_string(), "1");
        let o = parity_oracle(3).unwrap();
        assert_eq!(o.ell(0b110), 0);
        assert_eq!(o.ell(0b111), 1);
        for x in 0..8u64 {
            assert_eq!(o.ell(x) as u32, x.count_ones() % 2);
        }
    }

    #[test]
    fn dynamics_trace_examples() {
        let row = dynamics_trace(&p(0.0, 0.0, PI / 4.0), 2).unwrap();
        let sims: Vec<f64> = row.stages.iter().map(|s| s.simulated).collect();
        for (got, want) in sims.iter().zip([0.25, 1.0, 0.0, 0.25]) {
            assert_abs_diff_eq!(*got, want, epsilon = 1e-12);
        }

        let row = dynamics_trace(&p(PI / 4.0, PI / 4.0, PI / 4.0), 4).unwrap();
        assert_abs_diff_eq!(
            row.stage(Stage::PostUnitary).simulated,
            1.0,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(row.stage(Stage::PostOracle).simulated, 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(
            row.stage(Stage::PostHadamard).simulated,
            1.0 / 16.0,
            epsilon = 1e-12
        );

        let row = dynamics_trace(&p(0.0, 0.0, PI / 8.0), 2).unwrap();
        assert_abs_diff_eq!(
            row.stage(Stage::PostUnitary).simulated,
            0.72855339,
            epsilon = 1e-8
        );
        assert_abs_diff_eq!(
            row.stage(Stage::PostOracle).simulated,
            0.02144661,
            epsilon = 1e-8
        );
    }

    #[test]
    fn general_secret_leaves_oracle_closed_form_absent() {
        let oracle = LinearOracle::from_bit_string("101").unwrap();
        let row = dynamics_trace_with_oracle(&p(0.2, 0.5, 0.6), &oracle).unwrap();
        assert!(row.stage(Stage::PostOracle).closed_form.is_none());
        assert!(row.stage(Stage::PostUnitary).closed_form.is_some());
        assert!(row.max_deviation() <= AGREEMENT_TOLERANCE);
    }

    #[test]
    fn sweep_examples() {
        let grid = SweepGrid {
            alphas: vec![0.0],
            betas: vec![0.0],
            thetas: vec![PI / 8.0, PI / 4.0, PI / 3.0],
            ns: vec![2],
        };
        let rows = sweep(&grid).unwrap();
        assert_eq!(rows.len(), 3);
        let best = rows
            .iter()
            .max_by(|a, b| {
                a.stage(Stage::PostUnitary)
                    .simulated
                    .total_cmp(&b.stage(Stage::PostUnitary).simulated)
            })
            .unwrap();
        assert_eq!(best.params.theta, PI / 4.0);

        let grid = SweepGrid {
            alphas: vec![PI / 4.0, PI / 2.0, PI],
            betas: vec![PI / 4.0],
            thetas: vec![PI / 4.0],
            ns: vec![2],
        };
        let rows = sweep(&grid).unwrap();
        let values: Vec<f64> = rows
            .iter()
            .map(|r| r.stage(Stage::PostUnitary).simulated)
            .collect();
        assert!(values.windows(2).all(|w| w[0] > w[1]), "{values:?}");

        let grid = SweepGrid {
            alphas: vec![PI],
            betas: vec![PI / 4.0],
            thetas: vec![PI / 4.0],
            ns: vec![2, 4, 8],
        };
        let rows = sweep(&grid).unwrap();
        for (row, want) in rows.iter().zip([0.25, 1.0 / 16.0, 1.0 / 256.0]) {
            assert_eq!(row.stage(Stage::Input).closed_form, Some(want));
        }
    }

    #[test]
    fn sweep_order_is_lexicographic() {
        let grid = SweepGrid {
            alphas: vec![0.5, 0.1],
            betas: vec![0.0, 1.0],
            thetas: vec![0.3],
            ns: vec![3, 1],
        };
        let rows = sweep(&grid).unwrap();
        let keys: Vec<(usize, f64, f64)> = rows
            .iter()
            .map(|r| (r.n, r.params.alpha, r.params.beta))
            .collect();
        assert_eq!(
            keys,
            vec![
                (3, 0.5, 0.0),
                (3, 0.5, 1.0),
                (3, 0.1, 0.0),
                (3, 0.1, 1.0),
                (1, 0.5, 0.0),
                (1, 0.5, 1.0),
                (1, 0.1, 0.0),
                (1, 0.1, 1.0),
            ]
        );
    }

    #[test]
    fn empty_grid_is_rejected() {
        let grid = SweepGrid {
            alphas: vec![0.0],
            betas: vec![],
            thetas: vec![0.0],
            ns: vec![2],
        };
        assert!(matches!(sweep(&grid), Err(Error::Validation(_))));
    }

    #[test]
    fn complementarity_for_single_qubit() {
        for &(a, b, t) in &[(0.0, 0.0, 0.1), (1.0, 2.0, 0.7), (PI, 0.0, PI / 2.0)] {
            let params = p(a, b, t);
            let sum = closed_form_cf(Stage::PostUnitary, &params, 1)
                + closed_form_cf(Stage::PostOracle, &params, 1);
            assert_abs_diff_eq!(sum, 1.0, epsilon = 1e-12);
        }
    }
}
