//! Command-line surface: `run`, `verify`, `sweep` and `sample`.
//!
//! Exit codes: 0 success, 1 check failure, 2 usage error, 3 I/O error.

use std::f64::consts::PI;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::Error;
use crate::gbv::{
    final_state, format_bits, run_gbv_summary, sample_measurement, verify_theorem_with,
    LinearOracle, Prep, SecretPolicy, Stage, Theorem, VerificationReport,
};
use crate::statevector::{check_qubits, SingleQubitGate};
use crate::sweep::{local_unitary, sweep, LocalUnitaryParams, SweepGrid, SweepRow};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;

/// Column order of sweep CSV output.
pub const SWEEP_HEADER: [&str; 12] = [
    "n",
    "alpha",
    "beta",
    "theta",
    "cf_input",
    "cf_post_unitary",
    "cf_post_oracle",
    "cf_post_hadamard",
    "cf_post_unitary_sim",
    "cf_post_oracle_sim",
    "cf_post_hadamard_sim",
    "p_succ",
];

#[derive(Debug, Parser)]
#[command(
    name = "gbv",
    version,
    about = "Generalized Bernstein-Vazirani simulator with coherence-fraction analytics"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run one pipeline and report stage coherence fractions.
    Run(RunArgs),
    /// Check the pipeline identities on Haar-random states.
    Verify(VerifyArgs),
    /// Evaluate closed forms and simulation on a parameter grid.
    Sweep(SweepArgs),
    /// Sample measurement outcomes of the final state.
    Sample(SampleArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct Output {
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Args)]
pub struct InstanceArgs {
    /// Qubit count; inferred from --z when omitted.
    #[arg(long)]
    pub n: Option<usize>,
    /// Secret bit string, most significant bit first.
    #[arg(long)]
    pub z: String,
    /// hadamard | identity | local:ALPHA,BETA,THETA | gates:G@Q;G@Q;...
    #[arg(long, default_value = "hadamard")]
    pub prep: String,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// 1, 2, 3, 4 or all.
    #[arg(long, default_value = "all", value_parser = parse_theorem_selector)]
    pub theorem: TheoremSelector,
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    /// Qubit counts: `LO..HI` (inclusive) or a comma list.
    #[arg(long = "n-range", visible_alias = "n", default_value = "1..10", value_parser = parse_n_list)]
    pub n_range: NList,
    /// Use this secret in every trial instead of a random one.
    #[arg(long)]
    pub z: Option<String>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Angle list `a,b,c` or `START:STOP:COUNT`; entries may use `pi`, e.g. `pi/8`.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_angle_list)]
    pub alpha: AngleList,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_angle_list)]
    pub beta: AngleList,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_angle_list)]
    pub theta: AngleList,
    #[arg(long = "n-range", visible_alias = "n", default_value = "2", value_parser = parse_n_list)]
    pub n_range: NList,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    #[arg(long, default_value_t = 1000)]
    pub shots: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Clone, PartialEq)]
pub enum TheoremSelector {
    All,
    One(Theorem),
}

impl TheoremSelector {
    fn theorems(&self) -> Vec<Theorem> {
        match self {
            TheoremSelector::All => Theorem::ALL.to_vec(),
            TheoremSelector::One(t) => vec![*t],
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NList(pub Vec<usize>);

#[derive(Debug, Clone, PartialEq)]
pub struct AngleList(pub Vec<f64>);

fn parse_theorem_selector(text: &str) -> Result<TheoremSelector, String> {
    if text.eq_ignore_ascii_case("all") {
        return Ok(TheoremSelector::All);
    }
    let k: u8 = text
        .parse()
        .map_err(|_| format!("expected 1, 2, 3, 4 or all, got {text:?}"))?;
    Theorem::from_number(k)
        .map(TheoremSelector::One)
        .map_err(|e| e.to_string())
}

/// `LO..HI`, `LO..=HI` (both inclusive) or `a,b,c`.
pub fn parse_n_list(text: &str) -> Result<NList, String> {
    let parse = |s: &str| -> Result<usize, String> {
        s.trim()
            .parse()
            .map_err(|_| format!("invalid qubit count {s:?}"))
    };
    let values = if let Some((lo, hi)) = text.split_once("..") {
        let (lo, hi) = (parse(lo)?, parse(hi.trim_start_matches('='))?);
        if lo > hi {
            return Err(format!("empty range {text:?}"));
        }
        (lo..=hi).collect()
    } else {
        text.split(',').map(parse).collect::<Result<Vec<_>, _>>()?
    };
    if values.is_empty() {
        return Err("no qubit counts given".into());
    }
    Ok(NList(values))
}

/// A decimal number of radians, or a multiple of pi such as `pi`, `-pi/4`,
/// `3pi/8` or `0.5*pi`.
pub fn parse_angle(text: &str) -> Result<f64, String> {
    let t = text.trim().to_ascii_lowercase();
    let Some(pos) = t.find("pi") else {
        let value = t.parse().map_err(|_| format!("invalid angle {text:?}"))?;
        return finite(value, text);
    };
    let (coef_text, rest) = (t[..pos].trim().trim_end_matches('*').trim(), &t[pos + 2..]);
    let coef = match coef_text {
        "" | "+" => 1.0,
        "-" => -1.0,
        c => c
            .parse::<f64>()
            .map_err(|_| format!("invalid angle {text:?}"))?,
    };
    let rest = rest.trim();
    let denom = if rest.is_empty() {
        1.0
    } else if let Some(d) = rest.strip_prefix('/') {
        d.trim()
            .parse::<f64>()
            .map_err(|_| format!("invalid angle {text:?}"))?
    } else {
        return Err(format!("invalid angle {text:?}"));
    };
    if denom == 0.0 {
        return Err(format!("zero denominator in {text:?}"));
    }
    finite(coef * PI / denom, text)
}

fn finite(value: f64, text: &str) -> Result<f64, String> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(format!("angle {text:?} is not finite"))
    }
}

/// Comma list of angles, or `START:STOP:COUNT` for `COUNT` evenly spaced
/// values including both ends.
pub fn parse_angle_list(text: &str) -> Result<AngleList, String> {
    let parts: Vec<&str> = text.split(':').collect();
    let values = match parts.as_slice() {
        [single] => single
            .split(',')
            .map(parse_angle)
            .collect::<Result<Vec<_>, _>>()?,
        [start, stop, count] => {
            let (start, stop) = (parse_angle(start)?, parse_angle(stop)?);
            let count: usize = count
                .trim()
                .parse()
                .map_err(|_| format!("invalid point count in {text:?}"))?;
            match count {
                0 => return Err(format!("zero point count in {text:?}")),
                1 => vec![start],
                _ => (0..count)
                    .map(|i| start + (stop - start) * i as f64 / (count - 1) as f64)
                    .collect(),
            }
        }
        _ => return Err(format!("expected a list or START:STOP:COUNT, got {text:?}")),
    };
    Ok(AngleList(values))
}

fn parse_gate(text: &str) -> Result<SingleQubitGate, String> {
    let t = text.trim().to_ascii_lowercase();
    if let Some(inner) = t.strip_prefix("u(").and_then(|s| s.strip_suffix(')')) {
        let params = parse_local_params(inner)?;
        return Ok(local_unitary(&params));
    }
    Ok(match t.as_str() {
        "i" | "id" => SingleQubitGate::identity(),
        "h" => SingleQubitGate::hadamard(),
        "x" => SingleQubitGate::pauli_x(),
        "y" => SingleQubitGate::pauli_y(),
        "z" => SingleQubitGate::pauli_z(),
        "s" => SingleQubitGate::phase_s(),
        "t" => SingleQubitGate::phase_t(),
        _ => return Err(format!("unknown gate {text:?}")),
    })
}

fn parse_local_params(text: &str) -> Result<LocalUnitaryParams, String> {
    let angles = text
        .split(',')
        .map(parse_angle)
        .collect::<Result<Vec<_>, _>>()?;
    match angles.as_slice() {
        [a, b, t] => Ok(LocalUnitaryParams::new(*a, *b, *t)),
        _ => Err(format!("expected ALPHA,BETA,THETA, got {text:?}")),
    }
}

/// Parses a preparation string: `hadamard`, `identity`,
/// `local:ALPHA,BETA,THETA` or `gates:G@Q;G@Q;...` with gates
/// `i h x y z s t u(ALPHA,BETA,THETA)`.
pub fn parse_prep(text: &str) -> Result<Prep, String> {
    let t = text.trim();
    match t.to_ascii_lowercase().as_str() {
        "hadamard" | "h" => return Ok(Prep::Hadamard),
        "identity" | "id" | "none" => return Ok(Prep::Identity),
        _ => {}
    }
    if let Some(params) = t.strip_prefix("local:") {
        return Ok(Prep::TensorPower(local_unitary(&parse_local_params(
            params,
        )?)));
    }
    if let Some(list) = t.strip_prefix("gates:") {
        let gates = list
            .split(';')
            .filter(|g| !g.trim().is_empty())
            .map(|item| {
                let (gate, qubit) = item
                    .rsplit_once('@')
                    .ok_or_else(|| format!("gate {item:?} lacks @QUBIT"))?;
                let qubit: usize = qubit
                    .trim()
                    .parse()
                    .map_err(|_| format!("invalid qubit index in {item:?}"))?;
                Ok((qubit, parse_gate(gate)?))
            })
            .collect::<Result<Vec<_>, String>>()?;
        return Ok(Prep::Gates(gates));
    }
    Err(format!("unknown prep {text:?}"))
}

/// Failure of one command, carrying the exit code it maps to.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        let code = match err {
            Error::Size(_) | Error::Index(_) | Error::Validation(_) => EXIT_USAGE,
            Error::CheckFailed(_) => EXIT_CHECK_FAILED,
            Error::Io(_) => EXIT_IO,
        };
        Self {
            code,
            message: err.to_string(),
        }
    }
}

/// Parses `args` (program name first) and runs the selected command.
/// Reports go to `stdout` unless `--out` is given; diagnostics go to stderr.
pub fn run_cli<I, T>(args: I, stdout: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            let code = err.exit_code();
            let _ = err.print();
            return if code == 0 { EXIT_OK } else { EXIT_USAGE };
        }
    };
    let result = match &cli.command {
        Command::Run(args) => cmd_run(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Sample(args) => cmd_sample(args),
    };
    let (output, report, code) = match result {
        Ok(done) => done,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            return failure.code;
        }
    };
    match emit(output, &report, stdout) {
        Ok(()) => code,
        Err(err) => {
            eprintln!("error: {err}");
            EXIT_IO
        }
    }
}

fn emit(output: &Output, report: &str, stdout: &mut dyn Write) -> std::io::Result<()> {
    match &output.out {
        Some(path) => fs::write(path, report),
        None => stdout.write_all(report.as_bytes()),
    }
}

type CommandResult<'a> = Result<(&'a Output, String, i32), Failure>;

/// Fixed-width scientific rendering with 17 significant digits.
pub fn format_float(value: f64) -> String {
    format!("{value:.16e}")
}

fn resolve_instance(args: &InstanceArgs) -> Result<(LinearOracle, Prep), Failure> {
    let oracle =
        LinearOracle::from_bit_string(&args.z).map_err(|e| Failure::usage(format!("--z: {e}")))?;
    if let Some(n) = args.n {
        if n != oracle.num_qubits() {
            return Err(Failure::usage(format!(
                "--z {:?} has {} bits but --n is {n}",
                args.z,
                oracle.num_qubits()
            )));
        }
    }
    check_qubits(oracle.num_qubits()).map_err(|e| Failure::usage(format!("--n: {e}")))?;
    let prep = parse_prep(&args.prep).map_err(|e| Failure::usage(format!("--prep: {e}")))?;
    Ok((oracle, prep))
}

#[derive(Serialize)]
struct RunReport<'a> {
    n: usize,
    z: String,
    prep: &'a str,
    cf_input: f64,
    cf_post_unitary: f64,
    cf_post_oracle: f64,
    cf_post_hadamard: f64,
    cf_post_hadamard_full: f64,
    success_probability: f64,
}

fn cmd_run(args: &RunArgs) -> CommandResult<'_> {
    let (oracle, prep) = resolve_instance(&args.instance)?;
    let summary = run_gbv_summary(&oracle, &prep)?;
    let cf = |s: Stage| summary.cf_trace[s.index()];
    let report = RunReport {
        n: summary.n,
        z: summary.secret.clone(),
        prep: &args.instance.prep,
        cf_input: cf(Stage::Input),
        cf_post_unitary: cf(Stage::PostUnitary),
        cf_post_oracle: cf(Stage::PostOracle),
        cf_post_hadamard: cf(Stage::PostHadamard),
        cf_post_hadamard_full: summary.full_final_cf,
        success_probability: summary.success_probability,
    };
    let text = match args.output.format.unwrap_or(Format::Text) {
        Format::Json => json_line(&report),
        Format::Csv => {
            let mut s = String::from(
                "n,z,prep,cf_input,cf_post_unitary,cf_post_oracle,cf_post_hadamard,cf_post_hadamard_full,success_probability\n",
            );
            let _ = writeln!(
                s,
                "{},{},\"{}\",{},{},{},{},{},{}",
                report.n,
                report.z,
                report.prep.replace('"', "\"\""),
                format_float(report.cf_input),
                format_float(report.cf_post_unitary),
                format_float(report.cf_post_oracle),
                format_float(report.cf_post_hadamard),
                format_float(report.cf_post_hadamard_full),
                format_float(report.success_probability),
            );
            s
        }
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "n                        {}", report.n);
            let _ = writeln!(s, "z (most significant first) {}", report.z);
            let _ = writeln!(s, "prep                     {}", report.prep);
            let _ = writeln!(s, "coherence fraction by stage:");
            for stage in Stage::ALL {
                let note = if stage == Stage::PostHadamard {
                    "  (z-projected branch)"
                } else {
                    ""
                };
                let _ = writeln!(
                    s,
                    "  {:<22} {}{note}",
                    stage.label(),
                    format_float(cf(stage))
                );
            }
            let _ = writeln!(
                s,
                "  {:<22} {}  (full state, diagnostic)",
                "post-hadamard",
                format_float(report.cf_post_hadamard_full)
            );
            let _ = writeln!(
                s,
                "success_probability      {}",
                format_float(report.success_probability)
            );
            s
        }
    };
    Ok((&args.output, text, EXIT_OK))
}

fn json_line<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

fn cmd_verify(args: &VerifyArgs) -> CommandResult<'_> {
    let ns = &args.n_range.0;
    for &n in ns {
        check_qubits(n).map_err(|e| Failure::usage(format!("--n-range: {e}")))?;
    }
    let policy = match &args.z {
        None => SecretPolicy::Random,
        Some(bits) => {
            let oracle = LinearOracle::from_bit_string(bits)
                .map_err(|e| Failure::usage(format!("--z: {e}")))?;
            if let Some(n) = ns.iter().find(|&&n| n != oracle.num_qubits()) {
                return Err(Failure::usage(format!(
                    "--z {bits:?} does not have {n} bits"
                )));
            }
            SecretPolicy::Fixed(oracle.secret())
        }
    };
    let reports = args
        .theorem
        .theorems()
        .into_iter()
        .map(|t| verify_theorem_with(t, ns, args.trials, args.seed, policy))
        .collect::<Result<Vec<VerificationReport>, Error>>()?;
    let all_passed = reports.iter().all(|r| r.passed);

    let text = match args.output.format.unwrap_or(Format::Text) {
        Format::Json => json_line(&reports),
        Format::Csv => {
            let mut s = String::from(
                "theorem,max_deviation,tolerance,ordering_violations,trials_per_n,passed\n",
            );
            for r in &reports {
                let _ = writeln!(
                    s,
                    "{},{},{},{},{},{}",
                    r.theorem,
                    format_float(r.max_deviation),
                    format_float(r.tolerance),
                    r.ordering_violations,
                    r.trials_per_n,
                    r.passed
                );
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(
                s,
                "seed {}  trials per n {}  n in {:?}",
                args.seed, args.trials, ns
            );
            for r in &reports {
                let _ = writeln!(
                    s,
                    "theorem {} {}  max_deviation {:.3e}  tolerance {:e}  {}",
                    r.theorem,
                    if r.passed { "PASS" } else { "FAIL" },
                    r.max_deviation,
                    r.tolerance,
                    r.name
                );
                if r.ordering_violations > 0 {
                    let _ = writeln!(
                        s,
                        "  ordering bound violated in {} trials",
                        r.ordering_violations
                    );
                }
            }
            s
        }
    };
    let code = if all_passed {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    };
    Ok((&args.output, text, code))
}

/// One sweep row as emitted in CSV/JSON; closed forms are `null` (JSON) or an
/// empty field (CSV) when absent.
#[derive(Serialize)]
struct FlatRow {
    n: usize,
    alpha: f64,
    beta: f64,
    theta: f64,
    cf_input: Option<f64>,
    cf_post_unitary: Option<f64>,
    cf_post_oracle: Option<f64>,
    cf_post_hadamard: Option<f64>,
    cf_post_unitary_sim: f64,
    cf_post_oracle_sim: f64,
    cf_post_hadamard_sim: f64,
    p_succ: f64,
}

impl From<&SweepRow> for FlatRow {
    fn from(row: &SweepRow) -> Self {
        let closed = |s: Stage| row.stage(s).closed_form;
        let sim = |s: Stage| row.stage(s).simulated;
        Self {
            n: row.n,
            alpha: row.params.alpha,
            beta: row.params.beta,
            theta: row.params.theta,
            cf_input: closed(Stage::Input),
            cf_post_unitary: closed(Stage::PostUnitary),
            cf_post_oracle: closed(Stage::PostOracle),
            cf_post_hadamard: closed(Stage::PostHadamard),
            cf_post_unitary_sim: sim(Stage::PostUnitary),
            cf_post_oracle_sim: sim(Stage::PostOracle),
            cf_post_hadamard_sim: sim(Stage::PostHadamard),
            p_succ: row.success_probability,
        }
    }
}

/// Renders sweep rows as CSV with [`SWEEP_HEADER`], `\n` line endings.
pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut writer = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    writer.write_record(SWEEP_HEADER).expect("in-memory write");
    let opt = |v: Option<f64>| v.map(format_float).unwrap_or_default();
    for row in rows {
        let flat = FlatRow::from(row);
        writer
            .write_record([
                flat.n.to_string(),
                format_float(flat.alpha),
                format_float(flat.beta),
                format_float(flat.theta),
                opt(flat.cf_input),
                opt(flat.cf_post_unitary),
                opt(flat.cf_post_oracle),
                opt(flat.cf_post_hadamard),
                format_float(flat.cf_post_unitary_sim),
                format_float(flat.cf_post_oracle_sim),
                format_float(flat.cf_post_hadamard_sim),
                format_float(flat.p_succ),
            ])
            .expect("in-memory write");
    }
    String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("ascii output")
}

pub fn sweep_json(rows: &[SweepRow]) -> String {
    let flat: Vec<FlatRow> = rows.iter().map(FlatRow::from).collect();
    json_line(&flat)
}

fn cmd_sweep(args: &SweepArgs) -> CommandResult<'_> {
    let grid = SweepGrid {
        alphas: args.alpha.0.clone(),
        betas: args.beta.0.clone(),
        thetas: args.theta.0.clone(),
        ns: args.n_range.0.clone(),
    };
    let rows = sweep(&grid)?;
    let text = match args.output.format.unwrap_or(Format::Csv) {
        Format::Json => sweep_json(&rows),
        Format::Csv | Format::Text => sweep_csv(&rows),
    };
    Ok((&args.output, text, EXIT_OK))
}

#[derive(Serialize)]
struct SampleReport<'a> {
    n: usize,
    z: String,
    prep: &'a str,
    shots: u64,
    seed: u64,
    success_probability: f64,
    frequency_of_z: f64,
    counts: Vec<(String, u64)>,
}

fn cmd_sample(args: &SampleArgs) -> CommandResult<'_> {
    let (oracle, prep) = resolve_instance(&args.instance)?;
    if args.shots == 0 {
        return Err(Failure::usage("--shots must be at least 1"));
    }
    let state = final_state(&oracle, &prep)?;
    let hist = sample_measurement(&state, args.shots, args.seed)?;
    let n = oracle.num_qubits();
    let report = SampleReport {
        n,
        z: oracle.bit_string(),
        prep: &args.instance.prep,
        shots: hist.shots,
        seed: hist.seed,
        success_probability: state.probability(oracle.secret()),
        frequency_of_z: hist.frequency(oracle.secret()),
        counts: hist
            .counts
            .iter()
            .map(|(k, v)| (format_bits(*k, n), *v))
            .collect(),
    };
    let text = match args.output.format.unwrap_or(Format::Text) {
        Format::Json => json_line(&report),
        Format::Csv => {
            let mut s = String::from("outcome,count\n");
            for (outcome, count) in &report.counts {
                let _ = writeln!(s, "{outcome},{count}");
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(
                s,
                "n {}  z {}  prep {}  shots {}  seed {}",
                report.n, report.z, report.prep, report.shots, report.seed
            );
            let _ = writeln!(
                s,
                "success_probability (analytic)  {}",
                format_float(report.success_probability)
            );
            let _ = writeln!(
                s,
                "frequency of z (sampled)        {}",
                format_float(report.frequency_of_z)
            );
            for (outcome, count) in &report.counts {
                let _ = writeln!(s, "{outcome} {count}");
            }
            s
        }
    };
    Ok((&args.output, text, EXIT_OK))
}
