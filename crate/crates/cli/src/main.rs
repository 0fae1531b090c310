mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "shrubkit",
    version,
    about = "Tree-models, SC-trees and CMSO1 tools for graphs of bounded shrub-depth"
)]
struct Cli {
    /// Output style.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads for the solvers.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Structured,
}

#[derive(Subcommand)]
enum Command {
    /// Build a named graph or tree-model.
    Generate(GenerateArgs),
    /// Translate between graphs, tree-models, SC-trees, forests and expressions.
    Convert(ConvertArgs),
    /// Run an exact solver.
    Solve(SolveArgs),
    /// Check a witness against a graph (bare form: `verify --model M --graph G`).
    Verify(VerifyArgs),
    /// Parse, evaluate and transform CMSO1 formulas.
    Mso {
        #[command(subcommand)]
        command: MsoCommand,
    },
    /// Prune repeated sibling subtrees of a coloured tree.
    ReduceTree(ReduceArgs),
    /// List registered generators, converters and solvers.
    List,
}

#[derive(Args)]
pub struct GenerateArgs {
    /// Generator name (see `shrubkit list`).
    pub name: String,
    #[arg(long)]
    pub len: Option<usize>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub a: Option<usize>,
    #[arg(long)]
    pub b: Option<usize>,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Args)]
pub struct ConvertArgs {
    /// Converter name (see `shrubkit list`).
    pub name: String,
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Elimination forest for `td-to-tm`; an optimal one is computed if absent.
    #[arg(long)]
    pub forest: Option<PathBuf>,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Args)]
pub struct SolveArgs {
    /// Solver name (see `shrubkit list`).
    pub name: String,
    #[arg(long)]
    pub graph: Option<PathBuf>,
    #[arg(long)]
    pub d: Option<usize>,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub max_n: Option<usize>,
    #[arg(long)]
    pub at_most: Option<usize>,
    /// Where to write the witness.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Args)]
#[command(args_conflicts_with_subcommands = true)]
pub struct VerifyArgs {
    #[command(subcommand)]
    pub kind: Option<VerifyKind>,
    #[command(flatten)]
    pub tm: VerifyTm,
}

#[derive(Args)]
pub struct VerifyTm {
    #[arg(long)]
    pub model: Option<PathBuf>,
    #[arg(long)]
    pub graph: Option<PathBuf>,
    /// Largest allowed depth.
    #[arg(long)]
    pub d: Option<usize>,
    /// Largest allowed number of colours.
    #[arg(long)]
    pub m: Option<usize>,
}

#[derive(Subcommand)]
pub enum VerifyKind {
    /// Does the tree-model realize the graph exactly?
    Tm(VerifyTm),
    /// Does the SC-tree build the graph exactly?
    Sc {
        #[arg(long)]
        tree: PathBuf,
        #[arg(long)]
        graph: PathBuf,
        /// Largest allowed height.
        #[arg(long)]
        k: Option<usize>,
    },
    /// Is the forest an elimination forest of the graph?
    Td {
        #[arg(long)]
        forest: PathBuf,
        #[arg(long)]
        graph: PathBuf,
        /// Largest allowed height.
        #[arg(long)]
        k: Option<usize>,
    },
    /// Is the model a k-copied tree-model with parameters d, m, k?
    Kcopied {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        k: usize,
        /// Also require the model to realize this graph.
        #[arg(long)]
        graph: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
pub enum MsoCommand {
    /// Parse a formula and print it in canonical form.
    Parse {
        #[arg(long)]
        formula: PathBuf,
    },
    /// Evaluate a sentence on a graph.
    Check {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        formula: PathBuf,
    },
    /// Apply an interpretation to a graph, or rewrite a sentence through it.
    Interpret {
        /// Domain formula with free variable x.
        #[arg(long)]
        nu: PathBuf,
        /// Edge formula with free variables x, y.
        #[arg(long)]
        mu: PathBuf,
        #[arg(long, conflicts_with = "formula", required_unless_present = "formula")]
        graph: Option<PathBuf>,
        #[arg(long)]
        formula: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Expand by labels, copy, check the guard and interpret.
    Transduce {
        /// Input graph; its labels act as the expansion unless --predicates is given.
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, default_value_t = 1)]
        copies: usize,
        /// Guard sentence; `true` if absent.
        #[arg(long)]
        guard: Option<PathBuf>,
        #[arg(long)]
        nu: PathBuf,
        #[arg(long)]
        mu: PathBuf,
        /// Enumerate every labeling by these predicate names.
        #[arg(long, value_delimiter = ',')]
        predicates: Vec<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
pub struct ReduceArgs {
    /// Coloured tree, one `v parent colour` line per node.
    #[arg(long)]
    pub tree: PathBuf,
    /// Thresholds for heights 1, 2, ...; the last one repeats.
    #[arg(long, value_delimiter = ',', required = true)]
    pub thresholds: Vec<usize>,
    #[arg(long, default_value_t = 1)]
    pub modulus: usize,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let ctx = match commands::Context::new(cli.jobs) {
        Ok(ctx) => ctx,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let result = match cli.command {
        Command::Generate(a) => commands::generate(&ctx, a),
        Command::Convert(a) => commands::convert(&ctx, a),
        Command::Solve(a) => commands::solve(&ctx, a),
        Command::Verify(a) => commands::verify(a),
        Command::Mso { command } => commands::mso(&ctx, command),
        Command::ReduceTree(a) => commands::reduce(a),
        Command::List => Ok(commands::list(&ctx)),
    };
    match result.and_then(|r| r.emit(cli.format)) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
