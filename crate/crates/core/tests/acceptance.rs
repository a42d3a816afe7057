//! Acceptance suite. Each criterion prints one `[PASS]`/`[FAIL]` line; run with
//! `cargo test -p gbv-core --test acceptance -- --nocapture --test-threads=1`
//! to see them in order.

use std::alloc::{GlobalAlloc, Layout, System};
use std::cell::Cell;
use std::f64::consts::PI;
use std::time::{Duration, Instant};

use gbv_core::coherence::{coherence_fraction, l1_coherence};
use gbv_core::gbv::{
    classical_baseline, final_state, projected_final_cf, run_gbv, run_gbv_summary,
    sample_measurement, success_probability_direct, verify_theorem, verify_theorem_with,
    LinearOracle, Prep, SecretPolicy, Stage, Theorem,
};
use gbv_core::statevector::{random_state, walsh_hadamard, PureStateEnsemble, StateVector};
use gbv_core::sweep::{
    closed_form_cf, dynamics_trace, local_unitary, sweep, LocalUnitaryParams, SweepGrid,
};
use gbv_core::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

// Per-thread allocation accounting, used by the memory criterion.
struct CountingAlloc;

thread_local! {
    static CURRENT: Cell<usize> = const { Cell::new(0) };
    static PEAK: Cell<usize> = const { Cell::new(0) };
}

unsafe impl GlobalAlloc for CountingAlloc {
    unsafe fn alloc(&self, layout: Layout) -> *mut u8 {
        let ptr = System.alloc(layout);
        if !ptr.is_null() {
            track(layout.size() as isize);
        }
        ptr
    }

    unsafe fn dealloc(&self, ptr: *mut u8, layout: Layout) {
        System.dealloc(ptr, layout);
        track(-(layout.size() as isize));
    }

    unsafe fn alloc_zeroed(&self, layout: Layout) -> *mut u8 {
        let ptr = System.alloc_zeroed(layout);
        if !ptr.is_null() {
            track(layout.size() as isize);
        }
        ptr
    }

    unsafe fn realloc(&self, ptr: *mut u8, layout: Layout, new_size: usize) -> *mut u8 {
        let new = System.realloc(ptr, layout, new_size);
        if !new.is_null() {
            track(new_size as isize - layout.size() as isize);
        }
        new
    }
}

fn track(delta: isize) {
    let _ = CURRENT.try_with(|cur| {
        let now = (cur.get() as isize + delta).max(0) as usize;
        cur.set(now);
        let _ = PEAK.try_with(|peak| peak.set(peak.get().max(now)));
    });
}

#[global_allocator]
static ALLOC: CountingAlloc = CountingAlloc;

/// Bytes allocated by this thread while `f` runs, above what was live before.
fn peak_extra_bytes<T>(f: impl FnOnce() -> T) -> (T, usize) {
    let base = CURRENT.with(Cell::get);
    PEAK.with(|p| p.set(base));
    let out = f();
    let peak = PEAK.with(Cell::get);
    (out, peak.saturating_sub(base))
}

fn report(id: u32, title: &str, passed: bool, detail: String) {
    println!(
        "[{}] AC{id:<2} {title}: {detail}",
        if passed { "PASS" } else { "FAIL" }
    );
    assert!(passed, "AC{id} {title} failed: {detail}");
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

const N_1_TO_10: [usize; 10] = [1, 2, 3, 4, 5, 6, 7, 8, 9, 10];
const TRIALS: usize = 100;
const SEED: u64 = 20_240_601;

#[test]
fn ac01_bv_exactness() {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let ((max_dev, runs), elapsed) = timed(|| {
        let mut max_dev = 0.0f64;
        let mut runs = 0;
        for n in 1..=12usize {
            for _ in 0..50 {
                let z = rng.random_range(0..1u64 << n);
                let run = run_gbv(&LinearOracle::new(n, z).unwrap(), &Prep::Hadamard).unwrap();
                max_dev = max_dev.max((run.success_probability() - 1.0).abs());
                runs += 1;
            }
        }
        (max_dev, runs)
    });
    report(
        1,
        "BV exactness",
        max_dev <= 1e-12 && elapsed < Duration::from_secs(5),
        format!(
            "{runs} runs, max |P_succ - 1| = {max_dev:.2e} (tol 1e-12), {elapsed:.2?} (limit 5s)"
        ),
    );
}

#[test]
fn ac02_success_probability_equals_initial_coherence() {
    let (r, elapsed) =
        timed(|| verify_theorem(Theorem::SuccessProbability, &N_1_TO_10, TRIALS, SEED).unwrap());
    report(
        2,
        "P_succ = C_F(initial)",
        r.passed && r.max_deviation <= 1e-10 && elapsed < Duration::from_secs(30),
        format!(
            "{} trials/n over n=1..10, max dev {:.2e} (tol 1e-10), {elapsed:.2?} (limit 30s)",
            r.trials_per_n, r.max_deviation
        ),
    );
}

#[test]
fn ac03_post_unitary_coherence_equals_success() {
    let r = verify_theorem(Theorem::UnitaryCoherence, &N_1_TO_10, TRIALS, SEED).unwrap();
    report(
        3,
        "C_F(post-unitary) = P_succ",
        r.passed && r.max_deviation <= 1e-10,
        format!("max dev {:.2e} (tol 1e-10)", r.max_deviation),
    );
}

#[test]
fn ac04_oracle_cross_term() {
    let random = verify_theorem(Theorem::OracleCrossTerm, &N_1_TO_10, TRIALS, SEED).unwrap();
    let forced_zero = verify_theorem_with(
        Theorem::OracleCrossTerm,
        &N_1_TO_10,
        TRIALS,
        SEED,
        SecretPolicy::Fixed(0),
    )
    .unwrap();
    let worst = random.max_deviation.max(forced_zero.max_deviation);
    report(
        4,
        "C_F(post-oracle) + cross term = C_F(post-unitary)",
        random.passed && forced_zero.passed && worst <= 1e-10,
        format!(
            "random z max dev {:.2e}, z = 0^n max dev {:.2e} (tol 1e-10)",
            random.max_deviation, forced_zero.max_deviation
        ),
    );
}

#[test]
fn ac05_projected_final_coherence() {
    let r = verify_theorem(Theorem::HadamardProjection, &N_1_TO_10, TRIALS, SEED).unwrap();
    // Independent recount of the ordering bound on a fresh batch.
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 0x5eed);
    let mut bound_ok = true;
    let mut dev = 0.0f64;
    for n in N_1_TO_10 {
        for _ in 0..TRIALS {
            let psi = random_state(n, rng.random()).unwrap();
            let z = rng.random_range(0..1u64 << n);
            let run = run_gbv(&LinearOracle::new(n, z).unwrap(), &Prep::Raw(psi)).unwrap();
            let dim = (1u64 << n) as f64;
            let projected = projected_final_cf(&run);
            dev = dev.max((projected - success_probability_direct(&run) / dim).abs());
            bound_ok &= projected <= 1.0 / dim + 1e-12;
        }
    }
    report(
        5,
        "C_F(projected final) = P_succ/N and <= 1/N",
        r.passed && r.max_deviation <= 1e-12 && dev <= 1e-12 && bound_ok && r.ordering_violations == 0,
        format!(
            "verifier max dev {:.2e}, recount max dev {dev:.2e} (tol 1e-12), ordering violations {}",
            r.max_deviation, r.ordering_violations
        ),
    );
}

#[test]
fn ac06_closed_forms_match_simulation() {
    let axis = vec![0.0, PI / 4.0, PI / 2.0, 3.0 * PI / 4.0, PI];
    let grid = SweepGrid {
        alphas: axis.clone(),
        betas: axis,
        thetas: vec![0.0, PI / 8.0, PI / 4.0, 3.0 * PI / 8.0, PI / 2.0],
        ns: vec![1, 2, 4, 8],
    };
    let (rows, elapsed) = timed(|| sweep(&grid).unwrap());
    let worst = rows.iter().map(|r| r.max_deviation()).fold(0.0, f64::max);
    let complete = rows
        .iter()
        .all(|r| r.stages.iter().all(|s| s.closed_form.is_some()));
    report(
        6,
        "closed forms vs simulation",
        rows.len() == 500 && complete && worst <= 1e-10 && elapsed < Duration::from_secs(10),
        format!(
            "{} rows, max dev {worst:.2e} (tol 1e-10), {elapsed:.2?} (limit 10s)",
            rows.len()
        ),
    );
}

#[test]
fn ac07_dynamics_qualitative() {
    let cf = |a: f64, b: f64, t: f64, n: usize, s: Stage| {
        dynamics_trace(&LocalUnitaryParams::new(a, b, t), n)
            .unwrap()
            .stage(s)
            .simulated
    };
    let panel_a: Vec<f64> = [PI / 8.0, PI / 4.0, PI / 3.0]
        .iter()
        .map(|&t| cf(0.0, 0.0, t, 2, Stage::PostUnitary))
        .collect();
    let a_ok = panel_a[1] > panel_a[0] && panel_a[1] > panel_a[2];

    let c_ok = [2, 4, 8].iter().all(|&n| {
        (cf(PI / 4.0, PI / 4.0, PI / 4.0, n, Stage::PostUnitary) - 1.0).abs() <= 1e-12
            && cf(PI / 4.0, PI / 4.0, PI / 4.0, n, Stage::PostOracle).abs() <= 1e-12
    });

    let d_ok = [2usize, 4, 8].iter().all(|&n| {
        let params = LocalUnitaryParams::new(PI, PI / 4.0, PI / 4.0);
        let row = dynamics_trace(&params, n).unwrap();
        let expected = 1.0 / (1u64 << n) as f64;
        row.stage(Stage::Input).simulated == expected
            && closed_form_cf(Stage::Input, &params, n) == expected
    });
    report(
        7,
        "stage dynamics",
        a_ok && c_ok && d_ok,
        format!("cf_post_unitary at theta = pi/8, pi/4, pi/3: {panel_a:.6?} (peak at pi/4); balanced point n-independent: {c_ok}; input floor 1/N: {d_ok}"),
    );
}

/// `sum_{i != j} |rho_ij|` over every entry of `|psi><psi|`.
fn brute_force_off_diagonal(psi: &StateVector) -> f64 {
    let amps = psi.amplitudes();
    let mut total = 0.0;
    for (i, ai) in amps.iter().enumerate() {
        for (j, aj) in amps.iter().enumerate() {
            if i != j {
                total += (ai * aj.conj()).norm();
            }
        }
    }
    total
}

#[test]
fn ac08_l1_relation() {
    let mut worst = 0.0f64;
    let mut worst_lib = 0.0f64;
    for n in 1..=8usize {
        for trial in 0..50u64 {
            let psi = random_state(n, SEED + 1000 * n as u64 + trial).unwrap();
            let nonneg: Vec<Complex64> = psi
                .amplitudes()
                .iter()
                .map(|a| Complex64::new(a.norm(), 0.0))
                .collect();
            let psi = StateVector::normalized(nonneg).unwrap();
            let dim = psi.dimension() as f64;
            let lhs = dim * coherence_fraction(&psi).unwrap() - 1.0;
            let brute = brute_force_off_diagonal(&psi);
            worst = worst.max((lhs - brute).abs());
            let lib = l1_coherence(&PureStateEnsemble::pure(psi).unwrap()).unwrap();
            worst_lib = worst_lib.max((lib - brute).abs());
        }
    }
    report(
        8,
        "N*C_F - 1 = l1 coherence",
        worst <= 1e-10 && worst_lib <= 1e-10,
        format!("400 states, max dev {worst:.2e}; library l1 vs brute force {worst_lib:.2e} (tol 1e-10)"),
    );
}

#[test]
fn ac09_fwht_correctness() {
    let mut dense_dev = 0.0f64;
    for n in 1..=6usize {
        let dim = 1usize << n;
        let scale = 1.0 / (dim as f64).sqrt();
        for trial in 0..100u64 {
            let psi = random_state(n, SEED + 7919 * n as u64 + trial).unwrap();
            let amps = psi.amplitudes().to_vec();
            let fast = walsh_hadamard(psi).unwrap();
            for y in 0..dim {
                let dense: Complex64 = (0..dim)
                    .map(|x| {
                        amps[x]
                            * if (x & y).count_ones() % 2 == 0 {
                                scale
                            } else {
                                -scale
                            }
                    })
                    .sum();
                dense_dev = dense_dev.max((fast.amplitudes()[y] - dense).norm());
            }
        }
    }
    let mut involution_dev = 0.0f64;
    for n in 1..=12usize {
        for trial in 0..20u64 {
            let psi = random_state(n, SEED + 104_729 * n as u64 + trial).unwrap();
            let back = walsh_hadamard(walsh_hadamard(psi.clone()).unwrap()).unwrap();
            for (a, b) in back.amplitudes().iter().zip(psi.amplitudes()) {
                involution_dev = involution_dev.max((a - b).norm());
            }
        }
    }
    report(
        9,
        "FWHT correctness",
        dense_dev <= 1e-12 && involution_dev <= 1e-12,
        format!("dense max dev {dense_dev:.2e} (n<=6), involution max dev {involution_dev:.2e} (n<=12), tol 1e-12"),
    );
}

#[test]
fn ac10_classical_baseline() {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut ok = true;
    let mut cases = 0;
    for n in 1..=16usize {
        for _ in 0..50 {
            let z = rng.random_range(0..1u64 << n);
            let recovered = classical_baseline(&LinearOracle::new(n, z).unwrap());
            ok &= recovered.secret == z && recovered.queries == n;
            cases += 1;
        }
    }
    report(
        10,
        "classical baseline",
        ok,
        format!("{cases} secrets, each recovered in exactly n queries: {ok}"),
    );
}

#[test]
fn ac11_sampling() {
    let shots = 100_000u64;
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut worst_sigmas = 0.0f64;
    let mut ok = true;
    for run in 0..20u64 {
        let n = 1 + (run as usize % 4);
        let params = LocalUnitaryParams::new(
            rng.random_range(-PI..PI),
            rng.random_range(-PI..PI),
            rng.random_range(0.1..1.4),
        );
        let oracle = LinearOracle::new(n, rng.random_range(0..1u64 << n)).unwrap();
        let prep = Prep::TensorPower(local_unitary(&params));
        let p = closed_form_cf(Stage::PostUnitary, &params, n);
        let state = final_state(&oracle, &prep).unwrap();
        let hist = sample_measurement(&state, shots, SEED + run).unwrap();
        let sigma = (p * (1.0 - p) / shots as f64).sqrt();
        let dev = (hist.frequency(oracle.secret()) - p).abs();
        worst_sigmas = worst_sigmas.max(dev / sigma);
        ok &= dev <= 3.0 * sigma;
    }
    report(
        11,
        "Born-rule sampling",
        ok,
        format!("20 runs x {shots} shots, worst deviation {worst_sigmas:.2} sigma (limit 3)"),
    );
}

#[test]
fn ac12_performance_n22() {
    let n = 22;
    let footprint = (1usize << n) * std::mem::size_of::<Complex64>();
    let oracle = LinearOracle::new(n, 0b10_1100_1011_1001_0101_1011).unwrap();
    let prep = Prep::TensorPower(local_unitary(&LocalUnitaryParams::new(0.4, 0.1, PI / 5.0)));
    let ((summary, elapsed), extra) =
        peak_extra_bytes(|| timed(|| run_gbv_summary(&oracle, &prep).unwrap()));
    let params = LocalUnitaryParams::new(0.4, 0.1, PI / 5.0);
    let expected = closed_form_cf(Stage::PostUnitary, &params, n);
    let correct = (summary.success_probability - expected).abs() <= 1e-10
        && (summary.cf_trace[Stage::PostUnitary.index()] - expected).abs() <= 1e-10;
    let ratio = extra as f64 / footprint as f64;
    report(
        12,
        "n = 22 pipeline performance",
        correct && elapsed < Duration::from_secs(5) && ratio < 1.5,
        format!(
            "{elapsed:.2?} (limit 5s), peak extra memory {:.1} MiB = {ratio:.3}x statevector (limit 1.5x), P_succ matches closed form: {correct}",
            extra as f64 / (1 << 20) as f64
        ),
    );
}
