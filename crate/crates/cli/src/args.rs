//! Command-line grammar.

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "tiltbg",
    version,
    about = "Exact tilt-stability and Bogomolov–Gieseker computations on Fano threefolds"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: Options,
}

/// Flags shared by every subcommand. Rationals are written `p/q`, as
/// integers, or as finite decimals.
#[derive(Debug, Default, Args)]
pub struct Options {
    /// Model JSON file, or the name of a bundled model.
    #[arg(long, global = true, value_name = "PATH")]
    pub model: Option<String>,
    /// `line_bundle:m`, `ideal_sheaf:m:n`, `skyscraper:n`, inline JSON or a path.
    #[arg(long = "class", global = true, value_name = "SPEC|PATH", allow_hyphen_values = true)]
    pub class: Option<String>,
    /// A-function JSON file, or the name of a bundled A-function.
    #[arg(long = "A", global = true, value_name = "PATH")]
    pub a_function: Option<String>,
    #[arg(long, global = true, value_name = "p/q", allow_hyphen_values = true)]
    pub beta: Option<String>,
    /// α²; `plot walls` accepts a comma-separated list.
    #[arg(long, global = true, value_name = "p/q", allow_hyphen_values = true)]
    pub alpha2: Option<String>,
    #[arg(long, global = true, value_name = "p/q", allow_hyphen_values = true)]
    pub xi: Option<String>,
    #[arg(long, global = true, value_name = "p/q", allow_hyphen_values = true)]
    pub a: Option<String>,
    #[arg(long, global = true, value_name = "p/q", allow_hyphen_values = true)]
    pub b: Option<String>,
    /// Degree d, for `xi` and single-case `verify` runs.
    #[arg(long, global = true, value_name = "p/q")]
    pub d: Option<String>,
    /// Fano index r, for `xi` and single-case `verify` runs.
    #[arg(long, global = true)]
    pub r: Option<u32>,
    /// κ override for `xi` with `--r`/`--d`.
    #[arg(long, global = true, value_name = "p/q")]
    pub kappa: Option<String>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write the result here instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<String>,
    /// β-window `lo,hi` for β̄ searches and plots.
    #[arg(long, global = true, value_name = "p/q,p/q", allow_hyphen_values = true)]
    pub window: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
    Csv,
    Svg,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Model operations.
    Model {
        #[command(subcommand)]
        action: ModelAction,
    },
    /// κ(X) with its lattice ingredients.
    Kappa,
    /// μ at β and ν at (β, α²).
    Slope,
    /// The numerical wall through (β, α²).
    Wall,
    /// C(E) through (β, α²), after recentering so that ν vanishes there.
    Clocus,
    /// Z(E).
    Zlocus,
    /// The β̄ set of a class for an A-function.
    Betabar,
    /// D^{0,ξ} at (β, α²).
    Dvalue,
    /// D ≤ 0 at every β̄ of the class.
    Bgcheck,
    /// The strong BG statement at the base point (β, α²).
    Strongbg,
    /// χ(E), χ(E, E) and both evaluations of χ(E(−H)).
    Chi,
    /// The least ξ for a model, or for `--r`, `--d` and optionally `--kappa`.
    Xi,
    /// The central charge at (β, α²) with parameters a, b.
    Charge,
    /// Certified checks of the stated inequalities.
    Verify {
        #[arg(value_enum)]
        suite: SuiteArg,
    },
    /// SVG or CSV figures.
    Plot {
        #[arg(value_enum)]
        kind: PlotKind,
    },
}

#[derive(Debug, Subcommand)]
pub enum ModelAction {
    /// Structural checks on a model file.
    Validate,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    A1,
    A2,
    Note72,
    Remark75,
    Prop84,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PlotKind {
    Clocus,
    Zlocus,
    Afun,
    Walls,
    Betabar,
    Figure5,
}
