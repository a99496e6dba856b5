//! `tsol`: fillings, normal forms, paths, orbit statistics, excess sets and
//! TEP basis changes from the command line, plus the HTTP service.
//!
//! Exit status: 0 on success, 2 on domain errors, 1 on usage, I/O or parse
//! errors.

mod commands;
mod fail;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use fail::Failure;

#[derive(Debug, Parser)]
#[command(name = "tsol", version, about = "Triangle solitaire workbench")]
pub struct Cli {
    /// Run the computation on a `tsol serve` instance instead of locally.
    #[arg(long, global = true, value_name = "URL")]
    pub remote: Option<String>,
    #[command(subcommand)]
    pub cmd: Cmd,
}

/// Where the input pattern comes from.
#[derive(Debug, Args, Clone)]
#[group(required = true, multiple = false)]
pub struct Source {
    /// `.pts` file, JSON pattern file, or `-` for stdin.
    #[arg(short = 'i', long = "in", value_name = "FILE")]
    pub input: Option<PathBuf>,
    /// The line L_n.
    #[arg(long, value_name = "N")]
    pub line: Option<usize>,
    /// P_{n,k} at the origin.
    #[arg(long, num_args = 2, value_names = ["N", "K"])]
    pub pnk: Option<Vec<i64>>,
}

#[derive(Debug, Args, Clone)]
pub struct Output {
    #[arg(short = 'o', long = "out", value_name = "FILE")]
    pub out: Option<PathBuf>,
    /// JSON instead of the text format.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Subcommand)]
pub enum Cmd {
    /// Filling closure of a pattern.
    Fill {
        #[command(flatten)]
        src: Source,
        #[command(flatten)]
        out: Output,
        /// Draw the filling as a board.
        #[arg(long, conflicts_with = "json")]
        ascii: bool,
    },
    /// Orbit normal form.
    NormalForm {
        #[command(flatten)]
        src: Source,
        #[command(flatten)]
        out: Output,
    },
    /// Move sequence from the input to `--to`, or to its normal form.
    Path {
        #[command(flatten)]
        src: Source,
        /// Target pattern file.
        #[arg(short = 'o', long = "to", visible_alias = "out", value_name = "FILE")]
        to: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Orbit of a pattern by breadth-first search.
    Orbit {
        #[command(flatten)]
        src: Source,
        #[command(flatten)]
        out: Output,
        /// Print only the number of patterns.
        #[arg(long)]
        count: bool,
        #[arg(long, value_name = "INT", default_value_t = commands::DEFAULT_CAP)]
        cap: usize,
    },
    /// Diameter of the orbit graph.
    Diameter {
        #[command(flatten)]
        src: Source,
        #[command(flatten)]
        out: Output,
        #[arg(long, value_name = "INT", default_value_t = commands::DEFAULT_CAP)]
        cap: usize,
    },
    /// Orbit sizes, bounds and diameters of the lines L_1..L_max.
    Census {
        #[arg(long, value_name = "N")]
        max_n: u32,
        /// Exact diameters up to this n, double-sweep lower bounds above.
        #[arg(long, value_name = "N", default_value_t = 5)]
        exact_up_to: u32,
        #[arg(long, value_name = "INT", default_value_t = commands::DEFAULT_CAP)]
        cap: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Excess sets: subsets whose removal keeps the filling.
    ExcessSets {
        #[command(flatten)]
        src: Source,
        #[command(flatten)]
        out: Output,
        #[arg(long, value_name = "INT", conflicts_with = "maximal")]
        max_card: Option<usize>,
        /// Only the inclusion-maximal sets.
        #[arg(long)]
        maximal: bool,
    },
    /// Complete a partial assignment on T_n under a TEP rule.
    TepComplete {
        /// Assignment file of `<x> <y> <symbol>` lines, or `-`.
        #[arg(short = 'i', long = "in", value_name = "FILE")]
        input: PathBuf,
        /// `xor`, `add-mod-M`, `affine-mod-M-U-V-C`, or a family file.
        #[arg(long, value_name = "SPEC")]
        rule: String,
        #[arg(short = 'n', long = "size", value_name = "N")]
        n: i64,
        #[command(flatten)]
        out: Output,
    },
    /// Compile the change from basis `--in` to basis `--to` into two-cell permutations.
    TepCompile {
        #[command(flatten)]
        src: Source,
        #[arg(long = "to", value_name = "FILE")]
        to: PathBuf,
        #[arg(long, value_name = "SPEC")]
        rule: String,
        #[arg(short = 'n', long = "size", value_name = "N")]
        n: i64,
        #[command(flatten)]
        out: Output,
    },
    /// Serve the JSON API over HTTP on localhost.
    Serve {
        #[arg(long, value_name = "INT", default_value_t = 8080)]
        port: u16,
        /// Static assets served under `/`.
        #[arg(long = "static", value_name = "DIR")]
        static_dir: Option<PathBuf>,
        /// Largest orbit the service will enumerate.
        #[arg(long, value_name = "INT")]
        cap: Option<usize>,
    },
}

fn main() {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("TSOL_LOG", "warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            std::process::exit(if e.use_stderr() { 1 } else { 0 });
        }
    };
    if let Err(f) = commands::run(cli) {
        eprintln!("tsol: {f}");
        std::process::exit(f.exit_code());
    }
}

impl Failure {
    fn exit_code(&self) -> i32 {
        if self.is_domain() {
            2
        } else {
            1
        }
    }
}
