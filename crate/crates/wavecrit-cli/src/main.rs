//! `wavecrit` — critical-exponent analysis and numerical verification for
//! the inhomogeneous evolution equation
//! `d^k u/dt^k - Lap u = |u|^p + |d^{k-1}u/dt^{k-1}|^q + w(t,x)`.
//!
//! Every subcommand prints a JSON report to stdout and writes
//! `report.json`, any CSV series, and `manifest.json` into the output
//! directory. Exit codes: 0 = answered/passed, 1 = ran but a check failed,
//! 2 = usage or validation error.

// negated float comparisons reject NaN along with out-of-range values
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod output;
mod sweep;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use wavecrit::criterion::{evaluate, radial_bump, GriddedField, Inhomogeneity};
use wavecrit::error::Error as LibError;
use wavecrit::exponents::{
    classify_fujita, classify_second, classify_sigma_example, exponent_set, ProblemParams,
};
use wavecrit::quad::{QuadratureConfig, Scheme};
use wavecrit::scaling::{geometric_ladder, verify_lemma, Lemma};
use wavecrit::simulator::{
    run as run_sim, stationary_initial_state, Boundary, SimConfig, State, DEFAULT_CFL,
};
use wavecrit::stationary::{
    certify, epsilon_bound, g_value, sample_table, StationaryParams, DEFAULT_N_GRID,
    DEFAULT_RESIDUAL_TOL, DEFAULT_R_MAX,
};
use wavecrit::testfunc::CutoffProfile;

use output::RunWriter;

#[derive(Parser)]
#[command(
    name = "wavecrit",
    version,
    about = "Critical-exponent classification, scaling verification, blow-up criterion evaluation,\n\
             stationary-solution certification and desk-scale simulation for the equation\n\
             d^k u/dt^k - Lap u = |u|^p + |d^{k-1} u/dt^{k-1}|^q + w(t,x)"
)]
struct Cli {
    /// Output directory for report.json / CSV series / manifest.json
    #[arg(long, global = true, env = "WAVECRIT_OUT_DIR", default_value = "wavecrit-out")]
    out_dir: PathBuf,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a parameter point against the critical exponents
    Classify(ClassifyArgs),
    /// Verify the T-scaling of one cutoff-integral estimate
    VerifyLemma(VerifyLemmaArgs),
    /// Evaluate the blow-up criterion functional J(T) on an inhomogeneity
    Criterion(CriterionArgs),
    /// Construct and certify a global stationary solution
    Stationary(StationaryArgs),
    /// Run the radial method-of-lines simulator
    Simulate(SimulateArgs),
    /// Sweep a (p, a) grid and emit a region map
    Sweep(SweepArgs),
}

#[derive(Args)]
struct LadderArgs {
    /// Smallest scale of the geometric T-ladder
    #[arg(long, default_value_t = 16.0)]
    tmin: f64,
    /// Largest scale of the geometric T-ladder
    #[arg(long, default_value_t = 4096.0)]
    tmax: f64,
    /// Number of ladder points
    #[arg(long, default_value_t = 9)]
    points: usize,
}

#[derive(Args)]
struct QuadArgs {
    /// Time-quadrature points
    #[arg(long, default_value_t = 513)]
    nt: usize,
    /// Radial-quadrature points
    #[arg(long, default_value_t = 1025)]
    nr: usize,
    #[arg(long, value_enum, default_value_t = SchemeArg::Simpson)]
    scheme: SchemeArg,
    /// Plateau start of the time cutoff
    #[arg(long, default_value_t = 0.25)]
    c1: f64,
    /// Plateau end of the time cutoff
    #[arg(long, default_value_t = 0.75)]
    c2: f64,
}

impl QuadArgs {
    fn config(&self) -> Result<QuadratureConfig> {
        Ok(QuadratureConfig::new(self.nt, self.nr, self.scheme.into())?)
    }

    fn profile(&self) -> Result<CutoffProfile> {
        Ok(CutoffProfile::new(self.c1, self.c2)?)
    }

    fn settings(&self) -> Value {
        json!({
            "nt": self.nt,
            "nr": self.nr,
            "scheme": format!("{:?}", Scheme::from(self.scheme)).to_lowercase(),
            "c1": self.c1,
            "c2": self.c2,
        })
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SchemeArg {
    Midpoint,
    Simpson,
}

impl From<SchemeArg> for Scheme {
    fn from(s: SchemeArg) -> Self {
        match s {
            SchemeArg::Midpoint => Scheme::Midpoint,
            SchemeArg::Simpson => Scheme::Simpson,
        }
    }
}

#[derive(Args)]
struct ClassifyArgs {
    /// Spatial dimension N
    #[arg(long = "N")]
    dim: u32,
    #[arg(long)]
    p: f64,
    #[arg(long)]
    q: f64,
    /// Order of the time derivative
    #[arg(long, default_value_t = 2)]
    k: u32,
    /// Also classify this spatial decay rate against a* = 2p/(p-1)
    #[arg(long)]
    a: Option<f64>,
    /// Also classify a time factor growing like t^{q sigma/(q-1)}
    #[arg(long)]
    sigma: Option<f64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum LemmaArg {
    #[value(name = "L1", alias = "l1")]
    L1,
    #[value(name = "L2", alias = "l2")]
    L2,
}

#[derive(Args)]
struct VerifyLemmaArgs {
    #[arg(long, value_enum)]
    lemma: LemmaArg,
    /// Exponent m > 1 of the estimate
    #[arg(long)]
    m: f64,
    /// Spatial dimension N
    #[arg(long = "N")]
    dim: u32,
    /// Spatial scaling rate (default 1/2, the balanced value for p = q = m)
    #[arg(long, default_value_t = 0.5)]
    theta: f64,
    /// Cutoff power (default 2m/(m-1), admissible for both estimates)
    #[arg(long)]
    ell: Option<f64>,
    /// Slope tolerance for the pass verdict
    #[arg(long, default_value_t = 0.05)]
    tol: f64,
    #[command(flatten)]
    ladder: LadderArgs,
    #[command(flatten)]
    quad: QuadArgs,
}

#[derive(Args)]
struct CriterionArgs {
    /// Spatial dimension N
    #[arg(long = "N")]
    dim: u32,
    #[arg(long)]
    p: f64,
    #[arg(long)]
    q: f64,
    #[arg(long, default_value_t = 2)]
    k: u32,
    /// w = compact bump in space, constant in time
    #[arg(long, conflicts_with_all = ["w_decay", "w_sigma", "w_csv"])]
    w_bump: bool,
    /// w = (1 + r)^{-a}, constant in time
    #[arg(long, value_name = "A", conflicts_with_all = ["w_sigma", "w_csv"])]
    w_decay: Option<f64>,
    /// w = t^{q sigma/(q-1)} times a compact bump
    #[arg(long, value_name = "SIGMA", conflicts_with = "w_csv")]
    w_sigma: Option<f64>,
    /// Gridded w from a CSV file with columns t,r,w
    #[arg(long, value_name = "FILE")]
    w_csv: Option<PathBuf>,
    /// Bump amplitude (for --w-bump / --w-sigma)
    #[arg(long, default_value_t = 1.0)]
    amplitude: f64,
    /// Bump radius (for --w-bump / --w-sigma)
    #[arg(long, default_value_t = 1.0)]
    radius: f64,
    /// Slope margin separating growth from decay evidence
    #[arg(long, default_value_t = 0.05)]
    margin: f64,
    #[command(flatten)]
    ladder: LadderArgs,
    #[command(flatten)]
    quad: QuadArgs,
}

#[derive(Args)]
struct StationaryArgs {
    /// Spatial dimension N
    #[arg(long = "N")]
    dim: u32,
    #[arg(long)]
    p: f64,
    /// Decay rate of g (a* <= a < N)
    #[arg(long)]
    a: f64,
    /// Profile rate (default a - 2, the tight-decay endpoint)
    #[arg(long)]
    delta: Option<f64>,
    /// Profile amplitude (default half the admissible bound)
    #[arg(long)]
    epsilon: Option<f64>,
    #[arg(long, default_value_t = DEFAULT_R_MAX)]
    r_max: f64,
    /// Certification grid points
    #[arg(long, default_value_t = DEFAULT_N_GRID)]
    grid: usize,
    /// Residual tolerance of the elliptic identity
    #[arg(long, default_value_t = DEFAULT_RESIDUAL_TOL)]
    tol: f64,
}

#[derive(Clone, Copy, ValueEnum)]
enum PresetArg {
    /// Stationary initial data with w = g: the profile must hold still
    StationaryCheck,
    /// Zero data forced by a positive bump in a nonexistence regime
    BlowupBump,
}

#[derive(Clone, Copy, ValueEnum)]
enum BoundaryArg {
    Dirichlet,
    Sponge,
}

impl From<BoundaryArg> for Boundary {
    fn from(b: BoundaryArg) -> Self {
        match b {
            BoundaryArg::Dirichlet => Boundary::Dirichlet,
            BoundaryArg::Sponge => Boundary::AbsorbingSponge,
        }
    }
}

#[derive(Args)]
struct SimulateArgs {
    #[arg(long, value_enum)]
    preset: PresetArg,
    /// Spatial dimension N (preset default)
    #[arg(long = "N")]
    dim: Option<u32>,
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    q: Option<f64>,
    #[arg(long, default_value_t = 2)]
    k: u32,
    /// Decay rate for the stationary-check preset
    #[arg(long)]
    a: Option<f64>,
    #[arg(long)]
    n_r: Option<usize>,
    #[arg(long)]
    r_max: Option<f64>,
    #[arg(long)]
    t_end: Option<f64>,
    /// Time step as a fraction of the grid spacing
    #[arg(long, default_value_t = DEFAULT_CFL)]
    cfl: f64,
    #[arg(long, default_value_t = 1e6)]
    threshold: f64,
    /// Forcing bump amplitude (blowup-bump preset)
    #[arg(long, default_value_t = 10.0)]
    amplitude: f64,
    /// Forcing bump radius (blowup-bump preset)
    #[arg(long, default_value_t = 2.0)]
    radius: f64,
    #[arg(long, value_enum, default_value_t = BoundaryArg::Dirichlet)]
    boundary: BoundaryArg,
    /// Write a (t, r, u) snapshot every this many steps
    #[arg(long)]
    snapshot_stride: Option<usize>,
}

#[derive(Args)]
struct SweepArgs {
    /// TOML or JSON sweep configuration
    #[arg(long)]
    config: PathBuf,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Classify(args) => cmd_classify(&cli.out_dir, args),
        Command::VerifyLemma(args) => cmd_verify_lemma(&cli.out_dir, args),
        Command::Criterion(args) => cmd_criterion(&cli.out_dir, args),
        Command::Stationary(args) => cmd_stationary(&cli.out_dir, args),
        Command::Simulate(args) => cmd_simulate(&cli.out_dir, args),
        Command::Sweep(args) => sweep::cmd_sweep(&cli.out_dir, &args.config),
    }
}

fn cmd_classify(out_dir: &std::path::Path, args: ClassifyArgs) -> Result<u8> {
    let params = ProblemParams::new(args.k, args.p, args.q, args.dim)?;
    let exponents = exponent_set(&params);
    let fujita = classify_fujita(&params);
    let second = args.a.map(|a| classify_second(&params, a));
    let sigma = args.sigma.map(|s| classify_sigma_example(&params, s));

    let settings = json!({
        "k": args.k, "p": args.p, "q": args.q, "N": args.dim,
        "a": args.a, "sigma": args.sigma,
    });
    let mut report = json!({
        "command": "classify",
        "theorem_tag": fujita.theorem_tag,
        "settings": settings,
        "exponents": exponents,
        "fujita": fujita,
    });
    if let Some(second) = &second {
        report["second_critical"] = serde_json::to_value(second)?;
    }
    if let Some(sigma) = &sigma {
        report["sigma_example"] = serde_json::to_value(sigma)?;
    }

    let mut writer = RunWriter::new(out_dir, &settings)?;
    writer.emit_report(&report)?;
    writer.finish()?;
    Ok(0)
}

fn cmd_verify_lemma(out_dir: &std::path::Path, args: VerifyLemmaArgs) -> Result<u8> {
    let lemma = match args.lemma {
        LemmaArg::L1 => Lemma::L1,
        LemmaArg::L2 => Lemma::L2,
    };
    let ell = args
        .ell
        .unwrap_or_else(|| 2.0 * args.m / (args.m - 1.0));
    let cfg = args.quad.config()?;
    let profile = args.quad.profile()?;
    let scales = geometric_ladder(args.ladder.tmin, args.ladder.tmax, args.ladder.points)?;

    let settings = json!({
        "lemma": format!("{lemma:?}"),
        "m": args.m, "N": args.dim, "theta": args.theta, "ell": ell,
        "tol": args.tol,
        "tmin": args.ladder.tmin, "tmax": args.ladder.tmax, "points": args.ladder.points,
        "quadrature": args.quad.settings(),
    });

    let report = verify_lemma(
        lemma, args.m, ell, args.theta, args.dim, profile, &scales, args.tol, &cfg,
    )?;

    let wrapped = json!({
        "command": "verify-lemma",
        "theorem_tag": lemma.theorem_tag(),
        "settings": settings,
        "result": report,
    });
    let mut writer = RunWriter::new(out_dir, &settings)?;
    writer.emit_report(&wrapped)?;
    writer.emit_samples("samples.csv", "T,value", &report.samples)?;
    writer.finish()?;
    Ok(if report.pass { 0 } else { 1 })
}

fn cmd_criterion(out_dir: &std::path::Path, args: CriterionArgs) -> Result<u8> {
    let params = ProblemParams::new(args.k, args.p, args.q, args.dim)?;
    let cfg = args.quad.config()?;
    let profile = args.quad.profile()?;
    let scales = geometric_ladder(args.ladder.tmin, args.ladder.tmax, args.ladder.points)?;

    let (w, w_kind, theorem_tag): (Inhomogeneity, Value, &str) =
        if let Some(path) = &args.w_csv {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()))?;
            let field = GriddedField::from_csv(&text)?;
            (
                Inhomogeneity::Gridded(field),
                json!({"kind": "csv", "path": path.display().to_string()}),
                "Theorem 1",
            )
        } else if let Some(sigma) = args.w_sigma {
            let expo = args.q * sigma / (args.q - 1.0);
            let bump = radial_bump(args.amplitude, args.radius);
            (
                Inhomogeneity::separable(move |t: f64| t.powf(expo), bump),
                json!({"kind": "sigma-power", "sigma": sigma,
                       "amplitude": args.amplitude, "radius": args.radius}),
                "Corollary 1",
            )
        } else if let Some(a) = args.w_decay {
            (
                Inhomogeneity::separable(|_| 1.0, move |r: f64| (1.0 + r).powf(-a)),
                json!({"kind": "power-decay", "a": a}),
                "Theorem 3(I)",
            )
        } else {
            // default: the compact bump
            (
                Inhomogeneity::bump(args.amplitude, args.radius),
                json!({"kind": "bump", "amplitude": args.amplitude, "radius": args.radius}),
                "Theorem 1",
            )
        };

    let settings = json!({
        "k": args.k, "p": args.p, "q": args.q, "N": args.dim,
        "w": w_kind,
        "margin": args.margin,
        "tmin": args.ladder.tmin, "tmax": args.ladder.tmax, "points": args.ladder.points,
        "quadrature": args.quad.settings(),
    });

    let report = evaluate(&scales, &w, &params, &profile, &cfg, args.margin)?;
    let wrapped = json!({
        "command": "criterion",
        "theorem_tag": theorem_tag,
        "settings": settings,
        "result": report,
    });
    let mut writer = RunWriter::new(out_dir, &settings)?;
    writer.emit_report(&wrapped)?;
    writer.emit_samples("samples.csv", "T,J", &report.values)?;
    writer.finish()?;
    Ok(0)
}

fn cmd_stationary(out_dir: &std::path::Path, args: StationaryArgs) -> Result<u8> {
    let delta = args.delta.unwrap_or(args.a - 2.0);
    let epsilon = args
        .epsilon
        .unwrap_or_else(|| 0.5 * epsilon_bound(args.dim, args.p, delta));
    let sp = StationaryParams::new(args.dim, args.p, args.a, delta, epsilon)?;

    let settings = json!({
        "N": args.dim, "p": args.p, "a": args.a,
        "delta": delta, "epsilon": epsilon,
        "r_max": args.r_max, "grid": args.grid, "tol": args.tol,
    });
    let mut writer = RunWriter::new(out_dir, &settings)?;

    match certify(&sp, args.r_max, args.grid, args.tol) {
        Ok(solution) => {
            let wrapped = json!({
                "command": "stationary",
                "theorem_tag": "Theorem 3(II)",
                "settings": settings,
                "result": solution,
            });
            writer.emit_report(&wrapped)?;
            let mut csv = String::from("r,u,g,residual\n");
            for row in sample_table(&sp, args.r_max, args.grid) {
                csv.push_str(&format!("{},{},{},{}\n", row.r, row.u, row.g, row.residual));
            }
            writer.emit_csv("table.csv", &csv)?;
            writer.finish()?;
            Ok(0)
        }
        Err(e @ LibError::Certification { .. }) => {
            eprintln!("certification failed: {e}");
            Ok(1)
        }
        Err(e) => Err(e.into()),
    }
}

fn cmd_simulate(out_dir: &std::path::Path, args: SimulateArgs) -> Result<u8> {
    match args.preset {
        PresetArg::StationaryCheck => simulate_stationary_check(out_dir, args),
        PresetArg::BlowupBump => simulate_blowup_bump(out_dir, args),
    }
}

const STATIONARY_DRIFT_BOUND: f64 = 1e-2;

fn simulate_stationary_check(out_dir: &std::path::Path, args: SimulateArgs) -> Result<u8> {
    let dim = args.dim.unwrap_or(5);
    let p = args.p.unwrap_or(3.0);
    let q = args.q.unwrap_or(2.0);
    let a = args.a.unwrap_or(3.0);
    let n_r = args.n_r.unwrap_or(512);
    let r_max = args.r_max.unwrap_or(20.0);
    let t_end = args.t_end.unwrap_or(10.0);

    let sp = StationaryParams::tight(dim, p, a)?;
    let params = ProblemParams::new(args.k, p, q, dim)?;
    let dr = r_max / (n_r - 1) as f64;
    let cfg = SimConfig {
        params,
        r_max,
        n_r,
        dt: args.cfl * dr,
        t_end,
        blowup_threshold: args.threshold,
        w: Inhomogeneity::separable(|_| 1.0, move |r| g_value(&sp, r)),
        boundary: args.boundary.into(),
        snapshot_stride: args.snapshot_stride,
    };
    let initial = stationary_initial_state(&sp, &cfg);

    let settings = json!({
        "preset": "stationary-check",
        "k": args.k, "p": p, "q": q, "N": dim, "a": a,
        "delta": sp.delta, "epsilon": sp.epsilon,
        "n_r": n_r, "r_max": r_max, "dt": cfg.dt, "t_end": t_end,
        "cfl": args.cfl, "threshold": args.threshold,
        "boundary": format!("{:?}", cfg.boundary),
        "drift_bound": STATIONARY_DRIFT_BOUND,
        "snapshot_stride": args.snapshot_stride,
    });

    let outcome = run_sim(&cfg, &initial)?;
    let drift = outcome.report.sup_drift_rel.unwrap_or(f64::INFINITY);
    let pass = !outcome.report.blew_up && drift < STATIONARY_DRIFT_BOUND;

    let wrapped = json!({
        "command": "simulate",
        "theorem_tag": "Theorem 3(II)",
        "settings": settings,
        "pass": pass,
        "result": outcome.report,
    });
    let mut writer = RunWriter::new(out_dir, &settings)?;
    writer.emit_report(&wrapped)?;
    emit_snapshots(&mut writer, &cfg, &outcome.snapshots)?;
    writer.finish()?;
    Ok(if pass { 0 } else { 1 })
}

fn simulate_blowup_bump(out_dir: &std::path::Path, args: SimulateArgs) -> Result<u8> {
    let dim = args.dim.unwrap_or(3);
    let p = args.p.unwrap_or(2.0);
    let q = args.q.unwrap_or(2.0);
    let n_r = args.n_r.unwrap_or(193);
    let r_max = args.r_max.unwrap_or(12.0);
    let t_end = args.t_end.unwrap_or(8.0);

    let params = ProblemParams::new(args.k, p, q, dim)?;
    let dr = r_max / (n_r - 1) as f64;
    let cfg = SimConfig {
        params,
        r_max,
        n_r,
        dt: args.cfl * dr,
        t_end,
        blowup_threshold: args.threshold,
        w: Inhomogeneity::bump(args.amplitude, args.radius),
        boundary: args.boundary.into(),
        snapshot_stride: args.snapshot_stride,
    };

    let settings = json!({
        "preset": "blowup-bump",
        "k": args.k, "p": p, "q": q, "N": dim,
        "amplitude": args.amplitude, "radius": args.radius,
        "n_r": n_r, "r_max": r_max, "dt": cfg.dt, "t_end": t_end,
        "cfl": args.cfl, "threshold": args.threshold,
        "boundary": format!("{:?}", cfg.boundary),
        "snapshot_stride": args.snapshot_stride,
    });

    let outcome = run_sim(&cfg, &State::zero(args.k, n_r))?;
    let pass = outcome.report.blew_up && outcome.report.refinement_consistent;

    let wrapped = json!({
        "command": "simulate",
        "theorem_tag": "Theorem 2(I)",
        "settings": settings,
        "pass": pass,
        "result": outcome.report,
    });
    let mut writer = RunWriter::new(out_dir, &settings)?;
    writer.emit_report(&wrapped)?;
    emit_snapshots(&mut writer, &cfg, &outcome.snapshots)?;
    writer.finish()?;
    Ok(if pass { 0 } else { 1 })
}

fn emit_snapshots(
    writer: &mut RunWriter,
    cfg: &SimConfig,
    snapshots: &[(f64, Vec<f64>)],
) -> Result<()> {
    if snapshots.is_empty() {
        return Ok(());
    }
    let grid = cfg.r_grid();
    let mut csv = String::from("t,r,u\n");
    for (t, profile) in snapshots {
        for (r, u) in grid.iter().zip(profile) {
            csv.push_str(&format!("{t},{r},{u}\n"));
        }
    }
    writer.emit_csv("snapshots.csv", &csv)
}

