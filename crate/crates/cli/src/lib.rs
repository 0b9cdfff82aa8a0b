//! The `hsym` command line: ingestion of complexes, covers and manifests,
//! dispatch to the library, and deterministic JSON reports.

pub mod commands;
pub mod input;
pub mod manifest;
pub mod report;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use manifest::{ingest, Manifest};
pub use report::report_schema_version;

/// Environment variable that caps enumerations such as the supportiveness search.
pub const BUDGET_ENV: &str = "HSYM_BUDGET";

#[derive(Parser, Debug)]
#[command(name = "hsym", version, about = "Exact computations for higher-form symmetry algebras")]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Default)]
pub struct Common {
    /// TOML manifest naming the complex, coefficients and named entities
    #[arg(long, global = true, conflicts_with = "complex")]
    pub manifest: Option<PathBuf>,
    /// Built-in complex name or facet file
    #[arg(long, global = true)]
    pub complex: Option<String>,
    /// Coefficient group, e.g. "Z", "Z/4", "Z^2+Z/2" (default Z)
    #[arg(long = "A", global = true)]
    pub coefficients: Option<String>,
    /// Form degree; operators live in cohomological degree q + 1 (default 0)
    #[arg(long, global = true)]
    pub q: Option<usize>,
    /// Exit with status 1 when the verdict differs
    #[arg(long, global = true, value_enum)]
    pub expect: Option<Expect>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Expect {
    Pass,
    Fail,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Style {
    Vertex,
    Simplex,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Simplicial homology of the complex
    Homology {
        #[arg(long)]
        n: Option<usize>,
    },
    /// Compactly supported cohomology of an open
    #[command(name = "cohomology-c")]
    CohomologyC {
        #[arg(long, default_value = "whole")]
        open: String,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Compare compactly supported cohomology with homology of the nerve model
    Duality {
        #[arg(long, default_value = "whole")]
        open: String,
        /// Skip the ambient orientation even when one exists
        #[arg(long)]
        unoriented: bool,
    },
    /// The defect operator of a labelled submanifold
    Operator {
        #[arg(long)]
        support: String,
        #[arg(long, allow_hyphen_values = true)]
        label: String,
        /// Reverse the orientation of the support
        #[arg(long)]
        flip: bool,
    },
    /// Fuse two defect operators
    Fuse {
        #[arg(long)]
        support: String,
        #[arg(long, allow_hyphen_values = true)]
        label: String,
        #[arg(long, allow_hyphen_values = true)]
        label_b: String,
        /// Support of the second operator; needs --within
        #[arg(long, requires = "within")]
        support_b: Option<String>,
        /// Open containing both operators
        #[arg(long)]
        within: Option<String>,
    },
    /// Whether two defect operators agree inside an open
    Compare {
        #[arg(long)]
        support: String,
        #[arg(long, allow_hyphen_values = true)]
        label: String,
        #[arg(long)]
        support_b: String,
        #[arg(long, allow_hyphen_values = true)]
        label_b: String,
        #[arg(long, default_value = "whole")]
        within: String,
    },
    /// Homotopy groups of the compactly supported mapping space into B^n A
    Pi {
        #[arg(long, default_value = "whole")]
        open: String,
        /// Defaults to q + 1
        #[arg(long)]
        n: Option<usize>,
        /// All i from 0 to n when omitted
        #[arg(long)]
        i: Option<usize>,
    },
    /// Check that a cover is k-supportive up to s simplices
    #[command(name = "cover-check")]
    CoverCheck {
        #[command(flatten)]
        cover: CoverArg,
        #[arg(long, default_value_t = 0)]
        k: usize,
        #[arg(long)]
        s: usize,
        #[arg(long, default_value_t = 0)]
        subdivisions: usize,
    },
    /// The Weiss-style cover by complements
    Weiss {
        #[arg(long, value_enum, default_value = "vertex")]
        style: Style,
    },
    /// Compare the colimit over a cover with the value on its target
    Descent {
        #[command(flatten)]
        cover: CoverArg,
    },
    /// Arithmetic in the integral group ring
    #[command(name = "group-ring")]
    GroupRing {
        #[arg(long)]
        group: String,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: Option<String>,
    },
    /// Invertibility in the integral group ring
    Unit {
        #[arg(long)]
        group: String,
        #[arg(long, allow_hyphen_values = true)]
        element: String,
    },
    /// Anomalies of a finite symmetry group
    Anomaly {
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = 1)]
        degree: usize,
    },
    /// Random nested configurations checked for coherence
    Coherence {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: usize,
    },
}

#[derive(Args, Debug)]
pub struct CoverArg {
    /// weiss:vertex, weiss:simplex, a manifest cover name, or a cover file
    #[arg(long)]
    pub cover: String,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Homology { .. } => "homology",
            Command::CohomologyC { .. } => "cohomology-c",
            Command::Duality { .. } => "duality",
            Command::Operator { .. } => "operator",
            Command::Fuse { .. } => "fuse",
            Command::Compare { .. } => "compare",
            Command::Pi { .. } => "pi",
            Command::CoverCheck { .. } => "cover-check",
            Command::Weiss { .. } => "weiss",
            Command::Descent { .. } => "descent",
            Command::GroupRing { .. } => "group-ring",
            Command::Unit { .. } => "unit",
            Command::Anomaly { .. } => "anomaly",
            Command::Coherence { .. } => "coherence",
        }
    }
}

/// What the process prints and its exit status.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// Parses `args` (including the program name) and runs one command. Exit
/// status is 0 on success, 1 when the verdict contradicts `--expect`, and 2
/// on bad input or a library error.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { stdout: text, stderr: String::new(), code }
            } else {
                Outcome { stdout: String::new(), stderr: text, code }
            };
        }
    };
    let budget = std::env::var(BUDGET_ENV).ok();
    let name = cli.command.name();
    match commands::execute(&cli, budget.as_deref()) {
        Ok(done) => {
            let code = match (cli.common.expect, done.verdict) {
                (Some(Expect::Pass), Some(false)) | (Some(Expect::Fail), Some(true)) => 1,
                _ => 0,
            };
            Outcome { stdout: report::render(&report::envelope(name, done.body)), stderr: String::new(), code }
        }
        Err(e) => Outcome { stdout: report::render(&report::error_json(name, &e)), stderr: format!("error: {e}\n"), code: 2 },
    }
}
