use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "heston-geom", version, about = "Distances in the Heston manifold and the small-maturity smile")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Tolerance on the argmin of minimizations (also used by the oracle refinement).
    #[arg(long, global = true, value_parser = positive)]
    pub tol: Option<f64>,
    /// Leave the tool/version banner out of JSON output.
    #[arg(long, global = true)]
    pub quiet_meta: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Distances from a point.
    #[command(subcommand)]
    Dist(DistCommand),
    /// Level curves.
    #[command(subcommand)]
    Levelset(LevelsetCommand),
    /// Small-maturity implied volatility for a strike ladder.
    Smile(SmileArgs),
    /// Formula against brute force.
    #[command(subcommand)]
    Oracle(OracleCommand),
}

#[derive(Debug, Subcommand)]
pub enum DistCommand {
    /// Distance between two points.
    Point(PointArgs),
    /// Distance from a point to the line x = β + γv.
    Line(LineArgs),
    /// Distance from (0, 1) to the level set with delta angle θ.
    LevelSet(ThetaArgs),
    /// Distance from (0, 1) to the horizontal line v = τ.
    Horizontal(TauArgs),
}

#[derive(Debug, Args)]
pub struct Correlation {
    /// Volatility of variance.
    #[arg(long, allow_negative_numbers = true)]
    pub c: Option<f64>,
    /// Correlation.
    #[arg(long, allow_negative_numbers = true)]
    pub rho: Option<f64>,
}

impl Correlation {
    pub fn is_set(&self) -> bool {
        self.c.is_some() || self.rho.is_some()
    }
}

#[derive(Debug, Args)]
pub struct PointArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub x0: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub v0: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub x1: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub v1: f64,
    #[command(flatten)]
    pub corr: Correlation,
}

#[derive(Debug, Args)]
pub struct LineArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub beta: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub gamma: f64,
    /// Start point abscissa; defaults to 0.
    #[arg(long, allow_negative_numbers = true)]
    pub x0: Option<f64>,
    /// Start point variance; defaults to 1.
    #[arg(long, allow_negative_numbers = true)]
    pub v0: Option<f64>,
    #[command(flatten)]
    pub corr: Correlation,
}

#[derive(Debug, Args)]
pub struct ThetaArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub theta: f64,
}

#[derive(Debug, Args)]
pub struct TauArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub tau: f64,
}

#[derive(Debug, Subcommand)]
pub enum LevelsetCommand {
    /// Sample a level curve from its boundary point up to x_max.
    Emit(EmitArgs),
}

#[derive(Debug, Args)]
pub struct EmitArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub theta: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub x_max: f64,
    #[arg(long, default_value_t = 101)]
    pub samples: usize,
}

#[derive(Debug, Args)]
pub struct SmileArgs {
    #[arg(long)]
    pub spot: f64,
    #[arg(long)]
    pub v0: f64,
    #[arg(long)]
    pub c: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub rho: f64,
    /// Comma-separated strikes.
    #[arg(long, value_delimiter = ',', required = true)]
    pub strikes: Vec<f64>,
}

#[derive(Debug, Subcommand)]
pub enum OracleCommand {
    /// Compare the closed-form path with the oracle on every (β, γ) pair.
    Compare(CompareArgs),
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    /// Comma-separated intercepts.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
    pub beta: Vec<f64>,
    /// Comma-separated slopes.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
    pub gamma: Vec<f64>,
    /// Oracle grid nodes.
    #[arg(long, value_parser = clap::value_parser!(u32).range(2..))]
    pub grid: Option<u32>,
}

fn positive(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(x) if x > 0.0 && x.is_finite() => Ok(x),
        Ok(_) => Err("must be a positive finite number".into()),
        Err(e) => Err(e.to_string()),
    }
}
