use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "fiscap",
    version,
    about = "Fiscal capacity under moral tax compliance"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(flatten)]
    pub params: Params,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalOpts {
    /// Output format.
    #[arg(
        long,
        global = true,
        value_enum,
        env = "FISCAP_FORMAT",
        default_value = "json"
    )]
    pub format: Format,
    /// Write to this file instead of standard output.
    #[arg(long, short = 'o', global = true)]
    pub output: Option<PathBuf>,
    /// Flat `key = value` file of parameter bindings; flags take precedence.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Initial {
    Low,
    High,
}

/// Model parameters. Every field may also come from `--config`.
#[derive(Debug, Clone, Default, PartialEq, Args)]
pub struct Params {
    /// Income (default 1).
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub w: Option<f64>,
    /// Enforcement intensity (default 1).
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub c: Option<f64>,
    /// Institutional strength, in (0, 1).
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub sigma: Option<f64>,
    /// Degree of morality.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub kappa: Option<f64>,
    /// Share of revenue spent on the public good.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub g: Option<f64>,
    /// Common valuation of the public good.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub alpha: Option<f64>,
    /// Elite valuation.
    #[arg(long = "alpha-e", global = true, allow_hyphen_values = true)]
    pub alpha_e: Option<f64>,
    /// Citizen valuation.
    #[arg(long = "alpha-c", global = true, allow_hyphen_values = true)]
    pub alpha_c: Option<f64>,
    /// Low state valuation.
    #[arg(long = "alpha-l", global = true, allow_hyphen_values = true)]
    pub alpha_l: Option<f64>,
    /// High state valuation.
    #[arg(long = "alpha-h", global = true, allow_hyphen_values = true)]
    pub alpha_h: Option<f64>,
    /// Prior probability of the high state.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub rho: Option<f64>,
    /// Tax rate.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub t: Option<f64>,
    /// Number of simulated periods.
    #[arg(long, global = true)]
    pub horizon: Option<usize>,
    /// Period at which the state switches from low to high.
    #[arg(long, global = true)]
    pub shock: Option<usize>,
    /// State in period 0.
    #[arg(long, global = true, value_enum)]
    pub initial: Option<Initial>,
}

impl Params {
    /// Fills every unset field from `fallback`.
    pub fn or(self, fallback: Params) -> Params {
        Params {
            w: self.w.or(fallback.w),
            c: self.c.or(fallback.c),
            sigma: self.sigma.or(fallback.sigma),
            kappa: self.kappa.or(fallback.kappa),
            g: self.g.or(fallback.g),
            alpha: self.alpha.or(fallback.alpha),
            alpha_e: self.alpha_e.or(fallback.alpha_e),
            alpha_c: self.alpha_c.or(fallback.alpha_c),
            alpha_l: self.alpha_l.or(fallback.alpha_l),
            alpha_h: self.alpha_h.or(fallback.alpha_h),
            rho: self.rho.or(fallback.rho),
            t: self.t.or(fallback.t),
            horizon: self.horizon.or(fallback.horizon),
            shock: self.shock.or(fallback.shock),
            initial: self.initial.or(fallback.initial),
        }
    }

    /// Slot for a real-valued parameter; accepts `alpha_e` or `alpha-e`.
    pub fn real_mut(&mut self, name: &str) -> Option<&mut Option<f64>> {
        Some(match name.replace('-', "_").as_str() {
            "w" => &mut self.w,
            "c" => &mut self.c,
            "sigma" => &mut self.sigma,
            "kappa" => &mut self.kappa,
            "g" => &mut self.g,
            "alpha" => &mut self.alpha,
            "alpha_e" => &mut self.alpha_e,
            "alpha_c" => &mut self.alpha_c,
            "alpha_l" => &mut self.alpha_l,
            "alpha_h" => &mut self.alpha_h,
            "rho" => &mut self.rho,
            "t" => &mut self.t,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Optimal income report of a citizen.
    Report,
    /// Laffer curve, or its peak with `--peak`.
    Laffer(LafferArgs),
    /// Elite allocation, region and morality threshold.
    Elite,
    /// Equilibrium of the two-state signaling game.
    Classify(ClassifyArgs),
    /// Same-period tax-base multiplier of a credible reform.
    Jump,
    /// Period-by-period trajectory of the signaling game.
    Simulate,
    /// Evaluate another subcommand over a grid of one or two parameters.
    Sweep(SweepArgs),
    /// Check every closed form against its brute-force oracle.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Args)]
pub struct LafferArgs {
    /// Emit only the revenue-maximizing point.
    #[arg(long)]
    pub peak: bool,
    /// Lowest sampled rate (default 0).
    #[arg(long = "t-min")]
    pub t_min: Option<f64>,
    /// Highest sampled rate (default: where revenue returns to zero).
    #[arg(long = "t-max")]
    pub t_max: Option<f64>,
    /// Number of sampled rates.
    #[arg(long, default_value_t = 1001)]
    pub points: usize,
}

#[derive(Debug, Clone, Args)]
pub struct ClassifyArgs {
    /// Exit with status 2 when no pure-strategy equilibrium exists.
    #[arg(long)]
    pub strict: bool,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long, default_value_t = 1000)]
    pub draws: usize,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    /// `name:lo:hi:n`; give once or twice.
    #[arg(long = "axis", required = true, allow_hyphen_values = true)]
    pub axes: Vec<String>,
    #[command(subcommand)]
    pub target: SweepTarget,
}

/// Subcommands that can be swept.
#[derive(Debug, Clone, Subcommand)]
pub enum SweepTarget {
    Report,
    Laffer(LafferArgs),
    Elite,
    Classify(ClassifyArgs),
    Jump,
    Simulate,
    Verify(VerifyArgs),
}

impl From<SweepTarget> for Command {
    fn from(t: SweepTarget) -> Command {
        match t {
            SweepTarget::Report => Command::Report,
            SweepTarget::Laffer(a) => Command::Laffer(a),
            SweepTarget::Elite => Command::Elite,
            SweepTarget::Classify(a) => Command::Classify(a),
            SweepTarget::Jump => Command::Jump,
            SweepTarget::Simulate => Command::Simulate,
            SweepTarget::Verify(a) => Command::Verify(a),
        }
    }
}
