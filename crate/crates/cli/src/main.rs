mod commands;
mod input;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Exact constructions and verifiers for Bier spheres, threshold complexes
/// and Kantorovich-Rubinstein polytopes.
///
/// Exit status: 0 on success or pass, 1 when a verification fails, 2 on
/// malformed input. Instance size is capped by BIERKR_MAX_N (default 8).
#[derive(Parser, Debug)]
#[command(name = "bierkr", version)]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

/// A simplicial complex: `--n` with `--facets`, or a JSON file.
#[derive(Args, Debug, Clone)]
pub struct ComplexArgs {
    /// Ground set size.
    #[arg(long, requires = "facets", conflicts_with = "input")]
    pub n: Option<usize>,
    /// Facets as JSON, 1-based, e.g. "[[1],[2],[3]]".
    #[arg(long)]
    pub facets: Option<String>,
    /// JSON file {"n": .., "facets": ..}; "-" reads stdin.
    #[arg(long)]
    pub input: Option<String>,
}

/// Weights: `--weights "1/3,1/3,1/3"` or a JSON file.
#[derive(Args, Debug, Clone)]
pub struct WeightArgs {
    /// Comma separated rationals ("p/q" or finite decimals).
    #[arg(long, conflicts_with = "input")]
    pub weights: Option<String>,
    /// JSON file {"weights": [..]}; "-" reads stdin.
    #[arg(long)]
    pub input: Option<String>,
    /// Divide by the sum instead of requiring weights that sum to 1.
    #[arg(long)]
    pub normalize: bool,
}

/// A weighted graph, inline or from a file.
#[derive(Args, Debug, Clone)]
pub struct GraphArgs {
    /// JSON {"n": .., "edges": [[i, j, "w"], ..]}, 1-based.
    #[arg(long, conflicts_with = "input")]
    pub graph: Option<String>,
    /// File holding the graph JSON; "-" reads stdin.
    #[arg(long)]
    pub input: Option<String>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum BatchKind {
    KrBier,
    Qalpha,
    Fan,
    Tree,
    Perm,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Alexander dual of a complex.
    Dual(ComplexArgs),
    /// Facets of the Bier sphere of a complex.
    Bier(ComplexArgs),
    /// f-vectors of a complex and of its Bier sphere.
    Fvector(ComplexArgs),
    /// Threshold complex {I : mu(I) < quota}.
    Threshold {
        #[command(flatten)]
        weights: WeightArgs,
        #[arg(long)]
        quota: String,
    },
    /// Short subsets, the threshold complex at quota 1/2.
    Short(WeightArgs),
    /// Whether no subset measures exactly the quota.
    Generic {
        #[command(flatten)]
        weights: WeightArgs,
        #[arg(long, default_value = "1/2")]
        quota: String,
    },
    /// Geodesic metric of a graph, or validation of a distance matrix.
    Metric {
        #[command(flatten)]
        graph: GraphArgs,
        /// Distance matrix as JSON rows of rational strings.
        #[arg(long, conflicts_with_all = ["graph", "input"])]
        matrix: Option<String>,
    },
    /// KR polytope: generators and facets.
    Kr {
        #[command(flatten)]
        graph: GraphArgs,
        /// Distance matrix; uses every pair instead of the graph edges.
        #[arg(long, conflicts_with_all = ["graph", "input"])]
        matrix: Option<String>,
    },
    /// Compare the KR polytope of the weighted cycle with Bier(Short(L)).
    VerifyKrBier(WeightArgs),
    /// Compare Q_alpha with the Bier sphere of the matching threshold complex.
    VerifyQalpha {
        #[command(flatten)]
        weights: WeightArgs,
        #[arg(long, default_value = "1")]
        alpha: String,
        /// Circuit vectors as JSON rows of rational strings.
        #[arg(long)]
        circuit: Option<String>,
        /// Nudge a non-generic quota on the Bier side instead of refusing.
        #[arg(long)]
        nudge: bool,
    },
    /// Check that the delta-realization cones form a complete fan.
    FanCheck(ComplexArgs),
    /// Volume of the star-shaped body in delta-basis measure.
    StarVolume(ComplexArgs),
    /// Check that the KR polytope of a weighted tree is a cross-polytope.
    TreeCheck(GraphArgs),
    /// Compare KR(L) and KR(L^sigma) under the induced relabelling.
    PermCheck {
        #[command(flatten)]
        weights: WeightArgs,
        /// 1-based images, e.g. "2,1,3,4".
        #[arg(long)]
        sigma: String,
    },
    /// Seeded random campaign of one verifier, one report per instance.
    Batch {
        #[arg(long)]
        seed: u64,
        #[arg(long, value_enum)]
        kind: BatchKind,
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long, default_value_t = 5)]
        n: usize,
        #[arg(long, default_value = "1")]
        alpha: String,
        /// Denominator for random weights.
        #[arg(long, default_value_t = 1000)]
        denominator: i64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(out) => {
            print!("{}", out.render(cli.format));
            ExitCode::from(out.status)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
