//! Run configuration: defaults, an optional TOML file and command-line
//! overrides, merged in that order.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use bcfwt_core::quadrature::{DEFAULT_ORDER_1D, DEFAULT_ORDER_2D, DEFAULT_ORDER_4D};
use bcfwt_core::report::Orders;
use bcfwt_core::ScaleParam;
use clap::{Args, ValueEnum};
use serde::Deserialize;

use crate::grid::GridSpec;

pub const DEFAULT_SEED: u64 = 7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

/// Flags shared by every subcommand.
#[derive(Debug, Clone, Default, Args)]
pub struct CommonArgs {
    /// TOML file with any of the keys below; flags take precedence.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Scale parameter σ > 0.
    #[arg(long, global = true)]
    pub sigma: Option<f64>,
    /// Gauss–Hermite nodes per axis for 1-d integrals
    #[arg(long, global = true)]
    pub order1d: Option<usize>,
    /// Nodes per axis for 2-d integrals
    #[arg(long, global = true)]
    pub order2d: Option<usize>,
    /// Nodes per axis for 4-d integrals
    #[arg(long, global = true)]
    pub order4d: Option<usize>,
    /// Relative-residual tolerance for `verify`.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Evaluation grid: `COUNT`, `MIN:MAX:COUNT`, or per-axis
    /// `NAME:MIN:MAX:COUNT,...`.
    #[arg(long, global = true)]
    pub grid: Option<String>,
    /// Seed for random test points
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Output format.
    #[arg(long, global = true, value_enum)]
    pub out: Option<Format>,
    /// Output file (stdout when absent).
    #[arg(short = 'o', long, global = true, value_name = "PATH")]
    pub output: Option<PathBuf>,
    /// Allow 4-d grids beyond the node budget.
    #[arg(long, global = true)]
    pub force: bool,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    sigma: Option<f64>,
    order1d: Option<usize>,
    order2d: Option<usize>,
    order4d: Option<usize>,
    tol: Option<f64>,
    grid: Option<String>,
    seed: Option<u64>,
    out: Option<Format>,
    output: Option<PathBuf>,
    force: Option<bool>,
}

/// Fully resolved configuration.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub sigma: ScaleParam,
    pub orders: Orders,
    /// `None` means the suite default.
    pub tol: Option<f64>,
    pub grid: GridSpec,
    pub seed: u64,
    pub format: Option<Format>,
    pub output: Option<PathBuf>,
    pub force: bool,
}

fn read_file(path: &Path) -> Result<FileConfig> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
    toml::from_str(&text).map_err(|e| anyhow::anyhow!("config {}: {e}", path.display()))
}

impl RunConfig {
    pub fn resolve(args: &CommonArgs) -> Result<Self> {
        let file = match &args.config {
            Some(p) => read_file(p)?,
            None => FileConfig::default(),
        };
        let sigma = args.sigma.or(file.sigma).unwrap_or(1.0);
        let sigma = ScaleParam::new(sigma).with_context(|| "--sigma")?;
        let order = |flag: Option<usize>, file: Option<usize>, default: usize, name: &str| -> Result<usize> {
            let v = flag.or(file).unwrap_or(default);
            if v == 0 {
                bail!("--{name} must be at least 1");
            }
            Ok(v)
        };
        let orders = Orders {
            order1d: order(args.order1d, file.order1d, DEFAULT_ORDER_1D, "order1d")?,
            order2d: order(args.order2d, file.order2d, DEFAULT_ORDER_2D, "order2d")?,
            order4d: order(args.order4d, file.order4d, DEFAULT_ORDER_4D, "order4d")?,
        };
        let tol = args.tol.or(file.tol);
        if let Some(t) = tol {
            if !(t > 0.0 && t.is_finite()) {
                bail!("--tol must be a positive number, got {t}");
            }
        }
        let grid_text = args.grid.clone().or(file.grid);
        let grid = match grid_text {
            Some(g) => GridSpec::parse(&g).with_context(|| format!("--grid {g:?}"))?,
            None => GridSpec::default(),
        };
        Ok(Self {
            sigma,
            orders,
            tol,
            grid,
            seed: args.seed.or(file.seed).unwrap_or(DEFAULT_SEED),
            format: args.out.or(file.out),
            output: args.output.clone().or(file.output),
            force: args.force || file.force.unwrap_or(false),
        })
    }
}
