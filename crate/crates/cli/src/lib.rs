//! The `bcfwt` command line: verification suites, grid evaluation of the
//! transforms and bases, and the convention ledger.

pub mod config;
pub mod grid;

use std::io::Write;

use anyhow::{bail, Context, Result};
use bcfwt_core::bargmann::{
    four_index_basis, kernel_k, phi_n, polyanalytic_order, psi_mn, psi_mn_stripped, strictness_witness, Direction,
    Family, FourIndex, KernelVariant,
};
use bcfwt_core::fwt::{
    complex_hermite_bc, complex_hermite_signal, elementary, fwt1d, fwt2d, fwt_bc_1d, fwt_bc_2d, hermite_signal,
    PhasePoint1D, PhasePoint2D,
};
use bcfwt_core::hermite::hermite_complex;
use bcfwt_core::quadrature::TensorRule;
use bcfwt_core::report::{format_sig17, to_json, Sig17};
use bcfwt_core::suites::{self, Settings};
use bcfwt_core::{Bicomplex, Complex64, HermiteIndex, IdentityReport, ScaleParam};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use config::{CommonArgs, Format, RunConfig};
use grid::points;

/// Environment variable capping the worker-thread count.
pub const THREADS_ENV: &str = "BCFWT_THREADS";

#[derive(Debug, Parser)]
#[command(name = "bcfwt", version, about = "Bicomplex Fourier–Wigner transforms: evaluation and verification")]
pub struct Cli {
    #[command(flatten)]
    pub common: CommonArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a verification suite and write its reports as JSON.
    Verify(VerifyArgs),
    /// Evaluate a transform or basis function on the grid.
    Eval {
        #[arg(value_enum)]
        target: EvalTarget,
        #[command(flatten)]
        args: EvalArgs,
    },
    /// Complex Hermite functions.
    #[command(subcommand)]
    Hermite(HermiteCommand),
    /// Fourier–Wigner transforms of Hermite inputs.
    #[command(subcommand)]
    Fwt(FwtCommand),
    /// Companion Bargmann spaces.
    #[command(subcommand)]
    Bargmann(BargmannCommand),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Moyal1d,
    Moyal2d,
    Closedform,
    Gram,
    Kernel,
    Isometry,
    Polyorder,
    Ledger,
}

impl Suite {
    pub fn name(&self) -> &'static str {
        match self {
            Suite::Moyal1d => "moyal1d",
            Suite::Moyal2d => "moyal2d",
            Suite::Closedform => "closedform",
            Suite::Gram => "gram",
            Suite::Kernel => "kernel",
            Suite::Isometry => "isometry",
            Suite::Polyorder => "polyorder",
            Suite::Ledger => "ledger",
        }
    }

    pub fn default_tol(&self) -> f64 {
        match self {
            Suite::Moyal1d | Suite::Closedform => 1e-8,
            Suite::Polyorder => 1e-4,
            _ => 1e-6,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Phi,
    Psi,
    Four,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Phi => Family::Phi,
            FamilyArg::Psi => Family::Psi,
            FamilyArg::Four => Family::Four,
        }
    }
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub suite: Suite,
    /// Basis family for `gram`.
    #[arg(long, value_enum, default_value = "four")]
    pub family: FamilyArg,
    /// Largest index enumerated by the suite (suite default when absent).
    #[arg(long)]
    pub maxorder: Option<usize>,
    /// Finite-difference step for `polyorder`.
    #[arg(long, default_value_t = 0.05)]
    pub h: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EvalTarget {
    Fwt1d,
    Fwtbc1d,
    Fwtbc2d,
    Phi,
    Psi,
    Fourindex,
    Kernel,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Printed,
    Corrected,
    Both,
}

#[derive(Debug, Clone, Args)]
pub struct EvalArgs {
    #[arg(long, default_value_t = 0)]
    pub m: usize,
    #[arg(long, default_value_t = 0)]
    pub n: usize,
    /// Window index m′ (2-d targets).
    #[arg(long, default_value_t = 0)]
    pub mp: usize,
    /// Window index n′ (2-d targets).
    #[arg(long, default_value_t = 0)]
    pub np: usize,
    /// Window index on e⁺ (`fwtbc1d`).
    #[arg(long, default_value_t = 0)]
    pub r: usize,
    /// Window index on e⁻ (`fwtbc1d`).
    #[arg(long, default_value_t = 0)]
    pub s: usize,
    /// Kernel variant.
    #[arg(long, value_enum, default_value = "corrected")]
    pub variant: VariantArg,
    /// Second kernel argument as `x1,y1,x2,y2` (a single number sets all four).
    #[arg(long = "W", value_name = "COORDS", default_value = "0")]
    pub w: String,
}

#[derive(Debug, Subcommand)]
pub enum HermiteCommand {
    /// Rows `m,n,alpha,re_z,im_z,re_h,im_h` over a grid in the plane.
    Eval {
        #[arg(long, default_value_t = 0)]
        m: usize,
        #[arg(long, default_value_t = 0)]
        n: usize,
        /// Scale α (defaults to σ).
        #[arg(long)]
        alpha: Option<f64>,
    },
}

#[derive(Debug, Subcommand)]
pub enum FwtCommand {
    /// `V^σ(h_m, h_n)` on a `(p, q)` grid.
    Eval1d(EvalArgs),
    /// Classical 2-d transform of `h_{m,n}` with window `h_{m′,n′}` on an
    /// `(x1, x2, y1, y2)` grid.
    Eval2d(EvalArgs),
    /// 1-d bicomplex transform of `f_{m,n}` with window `f_{r,s}`.
    Evalbc1d(EvalArgs),
    /// 2-d bicomplex transform of `h_{m,n}` with window `h_{m′,n′}`.
    Evalbc2d(EvalArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Builtin {
    /// Polynomial part of `ψ_{m,n}`.
    PsiStripped,
    Psi,
    /// `φ_n`.
    Phi,
    /// `(Z^e)ⁿ`.
    CompanionPower,
    /// Conjugate companion monomial of degree `n`.
    ConjPower,
    /// Strictness witness for `(m, n)`.
    Witness,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DirectionArg {
    Star,
    Bar,
    Dagger,
}

impl From<DirectionArg> for Direction {
    fn from(d: DirectionArg) -> Self {
        match d {
            DirectionArg::Star => Direction::Star,
            DirectionArg::Bar => Direction::Bar,
            DirectionArg::Dagger => Direction::Dagger,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum BargmannCommand {
    /// Gram matrix of a basis family, raw and normalized, as JSON.
    Gram {
        #[arg(long, value_enum, default_value = "four")]
        family: FamilyArg,
        #[arg(long, default_value_t = 1)]
        maxorder: usize,
    },
    /// Reproducing-kernel test at random points.
    KernelTest {
        #[arg(long, value_enum, default_value = "both")]
        variant: VariantArg,
    },
    /// Finite-difference polyanalytic-order residual of a builtin function.
    Polyorder {
        #[arg(long = "f", value_enum)]
        function: Builtin,
        #[arg(long, value_enum, default_value = "star")]
        direction: DirectionArg,
        /// Order k; the residual is the (k+1)-st derivative.
        #[arg(long)]
        order: usize,
        #[arg(long, default_value_t = 0)]
        m: usize,
        #[arg(long, default_value_t = 0)]
        n: usize,
        /// Point `x1,y1,x2,y2`.
        #[arg(long, default_value = "0.7,-0.4,0.2,1.1")]
        at: String,
        #[arg(long, default_value_t = bcfwt_core::bargmann::DEFAULT_FD_STEP)]
        h: f64,
    },
}

/// Applies [`THREADS_ENV`] to the global thread pool.
pub fn init_threads() -> Result<()> {
    if let Ok(v) = std::env::var(THREADS_ENV) {
        let n: usize = v.trim().parse().with_context(|| format!("{THREADS_ENV}={v:?}"))?;
        if n == 0 {
            bail!("{THREADS_ENV} must be at least 1");
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .context("configuring thread pool")?;
    }
    Ok(())
}

/// Runs a parsed command; returns the process exit status.
pub fn run(cli: Cli) -> Result<i32> {
    let cfg = RunConfig::resolve(&cli.common)?;
    match cli.command {
        Command::Verify(args) => verify(&cfg, &args),
        Command::Eval { target, args } => eval(&cfg, target, &args),
        Command::Hermite(HermiteCommand::Eval { m, n, alpha }) => hermite_eval(&cfg, m, n, alpha),
        Command::Fwt(cmd) => {
            let (target, args) = match cmd {
                FwtCommand::Eval1d(a) => (Plot::Fwt1d, a),
                FwtCommand::Eval2d(a) => (Plot::Fwt2d, a),
                FwtCommand::Evalbc1d(a) => (Plot::Fwtbc1d, a),
                FwtCommand::Evalbc2d(a) => (Plot::Fwtbc2d, a),
            };
            evaluate(&cfg, target, &args)
        }
        Command::Bargmann(cmd) => bargmann(&cfg, cmd),
    }
}

fn settings(cfg: &RunConfig) -> Settings {
    Settings {
        sigma: cfg.sigma,
        orders: cfg.orders,
        seed: cfg.seed,
        force: cfg.force,
        ..Default::default()
    }
}

fn write_output(cfg: &RunConfig, text: &str) -> Result<()> {
    match &cfg.output {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
            Ok(())
        }
    }
}

fn verify(cfg: &RunConfig, args: &VerifyArgs) -> Result<i32> {
    if cfg.format == Some(Format::Csv) {
        bail!("verify writes JSON reports; --out csv is not supported");
    }
    let mut s = settings(cfg);
    s.family = args.family.into();
    s.max_order = args.maxorder;
    s.fd_step = args.h;
    let suite = args.suite;
    let reports = suites::run(suite.name(), &s).expect("suite names are enumerated")?;
    write_output(cfg, &(to_json(&reports)? + "\n"))?;
    let tol = cfg.tol.unwrap_or_else(|| suite.default_tol());
    summarize(suite.name(), &reports, tol, suite != Suite::Ledger)
}

fn summarize(name: &str, reports: &[IdentityReport], tol: f64, enforce: bool) -> Result<i32> {
    let worst = reports.iter().map(|r| r.rel_residual).fold(0.0, f64::max);
    let failing: Vec<&IdentityReport> = reports.iter().filter(|r| !r.passes(tol)).collect();
    eprintln!(
        "{name}: {} reports, {} above tol {tol:e}, max rel residual {worst:.3e}",
        reports.len(),
        failing.len()
    );
    if !enforce {
        return Ok(0);
    }
    match failing.first() {
        Some(first) => {
            eprintln!("first failing report:\n{}", serde_json::to_string_pretty(first)?);
            Ok(1)
        }
        None => Ok(0),
    }
}

/// What an evaluation computes, with its axis names.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Plot {
    Fwt1d,
    Fwt2d,
    Fwtbc1d,
    Fwtbc2d,
    Phi,
    Psi,
    FourIndex,
    Kernel,
}

impl Plot {
    fn axes(&self) -> &'static [&'static str] {
        match self {
            Plot::Fwt1d => &["p", "q"],
            Plot::Fwt2d => &["x1", "x2", "y1", "y2"],
            _ => &["x1", "y1", "x2", "y2"],
        }
    }
}

fn eval(cfg: &RunConfig, target: EvalTarget, args: &EvalArgs) -> Result<i32> {
    let plot = match target {
        EvalTarget::Fwt1d => Plot::Fwt1d,
        EvalTarget::Fwtbc1d => Plot::Fwtbc1d,
        EvalTarget::Fwtbc2d => Plot::Fwtbc2d,
        EvalTarget::Phi => Plot::Phi,
        EvalTarget::Psi => Plot::Psi,
        EvalTarget::Fourindex => Plot::FourIndex,
        EvalTarget::Kernel => Plot::Kernel,
    };
    evaluate(cfg, plot, args)
}

fn parse_point(text: &str) -> Result<Bicomplex> {
    let v: Vec<f64> = text
        .split(',')
        .map(|t| t.trim().parse::<f64>().with_context(|| format!("coordinate {t:?}")))
        .collect::<Result<_>>()?;
    match v.as_slice() {
        [a] => Ok(Bicomplex::from_coords(*a, *a, *a, *a)),
        [x1, y1, x2, y2] => Ok(Bicomplex::from_coords(*x1, *y1, *x2, *y2)),
        _ => bail!("expected 1 or 4 comma-separated numbers, got {}", v.len()),
    }
}

fn index(m: usize, n: usize) -> Result<HermiteIndex> {
    Ok(HermiteIndex::new(m, n)?)
}

type Evaluator = Box<dyn Fn(&[f64]) -> bcfwt_core::Result<Bicomplex> + Sync>;

fn evaluator(cfg: &RunConfig, plot: Plot, a: &EvalArgs) -> Result<Evaluator> {
    let sigma = cfg.sigma;
    let bc = |p: &[f64]| Bicomplex::from_coords(p[0], p[1], p[2], p[3]);
    Ok(match plot {
        Plot::Fwt1d => {
            index(a.m, a.n)?;
            let rule = TensorRule::for_signals(1, cfg.orders.order1d, sigma)?;
            let (f, g) = (hermite_signal(a.m, sigma), hermite_signal(a.n, sigma));
            Box::new(move |p| Ok(fwt1d(&*f, &*g, sigma, PhasePoint1D::new(p[0], p[1]), &rule)?.into()))
        }
        Plot::Fwt2d => {
            let rule = TensorRule::for_signals(2, cfg.orders.order2d, sigma)?;
            let f = complex_hermite_signal(index(a.m, a.n)?, sigma);
            let g = complex_hermite_signal(index(a.mp, a.np)?, sigma);
            Box::new(move |p| {
                let pt = PhasePoint2D::new([p[0], p[1]], [p[2], p[3]]);
                Ok(fwt2d(&*f, &*g, sigma, pt, &rule)?.into())
            })
        }
        Plot::Fwtbc1d => {
            index(a.m, a.n)?;
            index(a.r, a.s)?;
            let rule = TensorRule::for_signals(1, cfg.orders.order1d, sigma)?;
            let (f, g) = (elementary(a.m, a.n, sigma), elementary(a.r, a.s, sigma));
            Box::new(move |p| fwt_bc_1d(&f, &g, sigma, bc(p), &rule))
        }
        Plot::Fwtbc2d => {
            let rule = TensorRule::for_signals(2, cfg.orders.order2d, sigma)?;
            let f = complex_hermite_bc(index(a.m, a.n)?, sigma);
            let g = complex_hermite_bc(index(a.mp, a.np)?, sigma);
            Box::new(move |p| fwt_bc_2d(&f, &g, sigma, bc(p), &rule))
        }
        Plot::Phi => {
            let n = a.n;
            Box::new(move |p| Ok(phi_n(n, sigma, bc(p))))
        }
        Plot::Psi => {
            let idx = index(a.m, a.n)?;
            Box::new(move |p| Ok(psi_mn(idx, sigma, bc(p))))
        }
        Plot::FourIndex => {
            let rule = TensorRule::for_signals(2, cfg.orders.order2d, sigma)?;
            let idx = FourIndex::new(a.m, a.n, a.mp, a.np)?;
            Box::new(move |p| four_index_basis(idx, sigma, bc(p), &rule))
        }
        Plot::Kernel => {
            let variant = match a.variant {
                VariantArg::Printed => KernelVariant::Printed,
                VariantArg::Corrected => KernelVariant::Corrected,
                VariantArg::Both => bail!("eval kernel takes --variant printed or corrected"),
            };
            let w = parse_point(&a.w).context("--W")?;
            Box::new(move |p| Ok(kernel_k(sigma, bc(p), w, variant)))
        }
    })
}

#[derive(Serialize)]
struct Table {
    columns: Vec<String>,
    rows: Vec<Vec<Sig17>>,
}

fn emit_table(cfg: &RunConfig, columns: Vec<String>, rows: Vec<Vec<f64>>) -> Result<()> {
    let text = match cfg.format.unwrap_or(Format::Csv) {
        Format::Csv => {
            let mut s = columns.join(",");
            s.push('\n');
            for row in &rows {
                let cells: Vec<String> = row.iter().map(|v| format_sig17(*v)).collect();
                s.push_str(&cells.join(","));
                s.push('\n');
            }
            s
        }
        Format::Json => {
            let table = Table {
                columns,
                rows: rows.into_iter().map(|r| r.into_iter().map(Sig17).collect()).collect(),
            };
            serde_json::to_string_pretty(&table)? + "\n"
        }
    };
    write_output(cfg, &text)
}

/// Value columns appended after the grid coordinates.
pub const VALUE_COLUMNS: [&str; 4] = ["z1_re", "z1_im", "z2_re", "z2_im"];

fn evaluate(cfg: &RunConfig, plot: Plot, args: &EvalArgs) -> Result<i32> {
    let names = plot.axes();
    let axes = cfg.grid.axes(names)?;
    let f = evaluator(cfg, plot, args)?;
    let pts = points(&axes);
    let rows: Vec<Vec<f64>> = pts
        .par_iter()
        .map(|p| {
            let v = f(p)?;
            let mut row = p.clone();
            row.extend([v.z1.re, v.z1.im, v.z2.re, v.z2.im]);
            Ok(row)
        })
        .collect::<bcfwt_core::Result<_>>()?;
    let columns = names.iter().chain(VALUE_COLUMNS.iter()).map(|s| s.to_string()).collect();
    emit_table(cfg, columns, rows)?;
    Ok(0)
}

fn hermite_eval(cfg: &RunConfig, m: usize, n: usize, alpha: Option<f64>) -> Result<i32> {
    let idx = index(m, n)?;
    let alpha = match alpha {
        Some(a) => ScaleParam::new(a).context("--alpha")?,
        None => cfg.sigma,
    };
    let axes = cfg.grid.axes(&["x", "y"])?;
    let rows: Vec<Vec<f64>> = points(&axes)
        .into_iter()
        .map(|p| {
            let z = Complex64::new(p[0], p[1]);
            let h = hermite_complex(idx, alpha, z);
            vec![m as f64, n as f64, alpha.get(), z.re, z.im, h.re, h.im]
        })
        .collect();
    let columns = ["m", "n", "alpha", "re_z", "im_z", "re_h", "im_h"].map(String::from).to_vec();
    emit_table(cfg, columns, rows)?;
    Ok(0)
}

#[derive(Serialize)]
struct GramOutput {
    family: &'static str,
    max_order: usize,
    #[serde(flatten)]
    gram: suites::GramOutcome,
}

#[derive(Serialize)]
struct PolyorderOutput {
    function: String,
    direction: String,
    order: usize,
    point: Vec<Sig17>,
    h: Sig17,
    residual: Sig17,
}

fn bargmann(cfg: &RunConfig, cmd: BargmannCommand) -> Result<i32> {
    let s = settings(cfg);
    let tol = cfg.tol.unwrap_or(1e-6);
    match cmd {
        BargmannCommand::Gram { family, maxorder } => {
            let g = suites::gram(family.into(), maxorder, &s)?;
            let pass = g.deviation <= tol;
            eprintln!(
                "gram: {n}x{n}, max |N - I| {:.3e} (tol {tol:e})",
                g.deviation,
                n = g.labels.len()
            );
            let name = match family {
                FamilyArg::Phi => "phi",
                FamilyArg::Psi => "psi",
                FamilyArg::Four => "four",
            };
            let out = GramOutput {
                family: name,
                max_order: maxorder,
                gram: g,
            };
            write_output(cfg, &(serde_json::to_string_pretty(&out)? + "\n"))?;
            Ok(if pass { 0 } else { 1 })
        }
        BargmannCommand::KernelTest { variant } => {
            let adj = suites::kernel(s.sigma, s.seed, 5, 3, tol, &s)?;
            let keep = |name: &str| match variant {
                VariantArg::Both => true,
                VariantArg::Printed => name == "kernel_printed",
                VariantArg::Corrected => name == "kernel_corrected",
            };
            let reports: Vec<IdentityReport> = adj.reports.iter().filter(|r| keep(&r.name)).cloned().collect();
            write_output(cfg, &(to_json(&reports)? + "\n"))?;
            eprintln!(
                "kernel: printed worst {:.3e}, corrected worst {:.3e}, normative {}",
                adj.worst_printed,
                adj.worst_corrected,
                adj.normative.map(|v| v.name()).unwrap_or("undecided")
            );
            let ok = match variant {
                VariantArg::Both => adj.normative.is_some(),
                _ => reports.iter().all(|r| r.passes(tol)),
            };
            Ok(if ok { 0 } else { 1 })
        }
        BargmannCommand::Polyorder {
            function,
            direction,
            order,
            m,
            n,
            at,
            h,
        } => {
            let z0 = parse_point(&at).context("--at")?;
            let sigma = cfg.sigma;
            let idx = index(m, n)?;
            let f = move |z: Bicomplex| -> Bicomplex {
                let w = z.companion();
                match function {
                    Builtin::PsiStripped => psi_mn_stripped(idx, sigma, z),
                    Builtin::Psi => psi_mn(idx, sigma, z),
                    Builtin::Phi => phi_n(n, sigma, z),
                    Builtin::CompanionPower => Bicomplex::from_components(w.w_plus.powu(n as u32), w.w_minus.powu(n as u32)),
                    Builtin::ConjPower => Bicomplex::from_components(
                        w.w_plus.conj().powu(n as u32),
                        w.w_minus.conj().powu(n as u32),
                    ),
                    Builtin::Witness => strictness_witness(m, n, sigma, z).unwrap_or(Bicomplex::ZERO),
                }
            };
            if function == Builtin::Witness {
                strictness_witness(m, n, sigma, z0)?;
            }
            let residual = polyanalytic_order(f, direction.into(), order, z0, h)?;
            let out = PolyorderOutput {
                function: format!("{function:?}"),
                direction: format!("{direction:?}").to_lowercase(),
                order,
                point: z0.coords().into_iter().map(Sig17).collect(),
                h: Sig17(h),
                residual: Sig17(residual),
            };
            write_output(cfg, &(serde_json::to_string_pretty(&out)? + "\n"))?;
            Ok(0)
        }
    }
}
