use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use framelab_core::spark::DEFAULT_ENUMERATION_CAP;

#[derive(Debug, Parser)]
#[command(name = "framelab", version, about = "Decide phase retrieval properties of finite real frames")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalOpts {
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for every randomized step.
    #[arg(long, global = true, env = "FRAMELAB_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Tolerance for floating-point rank and bound checks.
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tolerance: f64,
    /// Trial count for experiments.
    #[arg(long, global = true)]
    pub trials: Option<usize>,
    /// Perturbation budget for the density experiment.
    #[arg(long, global = true)]
    pub epsilon: Option<f64>,
    /// Largest frame accepted by partition enumeration.
    #[arg(long, global = true, default_value_t = DEFAULT_ENUMERATION_CAP)]
    pub cap: usize,
    /// Report wall-clock timings (makes output run-dependent).
    #[arg(long, global = true)]
    pub timings: bool,
}

impl GlobalOpts {
    pub fn echo(&self) -> Value {
        json!({
            "seed": self.seed,
            "tolerance": self.tolerance,
            "trials": self.trials,
            "epsilon": self.epsilon,
            "enumeration_cap": self.cap,
        })
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Frame bounds, full spark, complement property, PR and WPR in one report.
    Analyze { frame: PathBuf },
    /// Decide a single property; exit 0 for yes, 1 for no.
    Decide { property: Property, frame: PathBuf },
    /// WPR and PR decisions with witnesses, plus every line-complement ambiguity pair.
    Witness { frame: PathBuf },
    /// Classify a pair x, y by the five coordinate sets and the scalar a.
    Classify {
        /// Also check |<x, f>| = |<y, f>| against this frame.
        #[arg(long)]
        frame: Option<PathBuf>,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        y: String,
    },
    /// Coordinate projections: one projection with --coords, otherwise the
    /// projection equivalence report.
    Project {
        frame: PathBuf,
        /// 1-based coordinates, comma-separated.
        #[arg(long)]
        coords: Option<String>,
    },
    /// Build a frame.
    Construct {
        kind: ConstructKind,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        /// fullspark: complete with an orthonormal basis tail.
        #[arg(long)]
        orthonormal_tail: bool,
        /// failing: first vector of the seed pair.
        #[arg(long, allow_hyphen_values = true)]
        x: Option<String>,
        /// failing: second vector of the seed pair.
        #[arg(long, allow_hyphen_values = true)]
        y: Option<String>,
        /// Write the frame file here.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Built-in example frames.
    Examples {
        #[command(subcommand)]
        action: ExamplesAction,
    },
    /// Randomized experiments.
    Experiment {
        kind: ExperimentKind,
        /// density: base frame file.
        frame: Option<PathBuf>,
        /// p1, l1l3: ambient dimension.
        #[arg(long, default_value_t = 3)]
        n: usize,
        /// density: number of halving steps.
        #[arg(long)]
        sweep: Option<usize>,
    },
    /// Distance on the sphere between two subspaces of equal ambient dimension.
    Distance {
        /// Spanning vectors separated by ';'.
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        y: String,
    },
}

impl Command {
    pub fn name(&self) -> String {
        match self {
            Command::Analyze { .. } => "analyze".into(),
            Command::Decide { property, .. } => format!("decide {}", property.as_str()),
            Command::Witness { .. } => "witness".into(),
            Command::Classify { .. } => "classify".into(),
            Command::Project { .. } => "project".into(),
            Command::Construct { kind, .. } => format!("construct {}", kind.as_str()),
            Command::Examples { action } => match action {
                ExamplesAction::List => "examples list".into(),
                ExamplesAction::Get { .. } => "examples get".into(),
            },
            Command::Experiment { kind, .. } => format!("experiment {}", kind.as_str()),
            Command::Distance { .. } => "distance".into(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Property {
    Spark,
    Pr,
    Wpr,
}

impl Property {
    pub fn as_str(self) -> &'static str {
        match self {
            Property::Spark => "spark",
            Property::Pr => "pr",
            Property::Wpr => "wpr",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ConstructKind {
    P3,
    Fullspark,
    Failing,
}

impl ConstructKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ConstructKind::P3 => "p3",
            ConstructKind::Fullspark => "fullspark",
            ConstructKind::Failing => "failing",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ExperimentKind {
    Density,
    P1,
    L1l3,
}

impl ExperimentKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ExperimentKind::Density => "density",
            ExperimentKind::P1 => "p1",
            ExperimentKind::L1l3 => "l1l3",
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum ExamplesAction {
    List,
    Get {
        name: String,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}
