use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use sharpmap_core::search::SearchConfig;

use crate::run::CliError;

#[derive(Debug, Parser)]
#[command(name = "sharpmap", version, about = "Exact sparse sphere-map polynomials")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Default, Clone)]
pub struct GlobalOpts {
    /// Worker threads for searches.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub workers: Option<u64>,
    /// Upper bound on supports examined by a search.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_combinations: Option<u64>,
    /// Largest term count a search may try.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_support: Option<u64>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// `key=value` file with defaults for the options above.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Homogenized,
    Eliminated,
    Symmetric,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Basis {
    Homogenized,
    Symmetric,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyKind {
    Invariant,
    Whitney,
    Substitute,
    Tensor,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Op {
    W,
    V,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print a linear system.
    System {
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long)]
        d: u32,
        #[arg(long, value_enum, default_value_t = Kind::Homogenized)]
        kind: Kind,
        /// Fix the terms every sparsest odd-degree solution shares.
        #[arg(long)]
        reduce: bool,
        /// Include the constant monomial as an unknown.
        #[arg(long)]
        constant: bool,
    },
    /// Find the sparsest nonnegative solutions.
    Search {
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long)]
        d: u32,
        #[arg(long, value_enum, default_value_t = Kind::Homogenized)]
        kind: Kind,
        /// Report every sparsest solution, not just the first.
        #[arg(long)]
        all: bool,
        /// Drop the requirement that some top-degree term is present.
        #[arg(long)]
        unconstrained: bool,
        #[arg(long)]
        reduce: bool,
        /// Also write the JSON report to this file.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// All sharp polynomials of an odd degree in two variables.
    Uniqueness {
        #[arg(long)]
        d: u32,
    },
    /// Fewest monomials of a symmetric solution.
    Symmetric {
        #[arg(long)]
        d: u32,
    },
    /// Minimize the coefficient sum.
    L1min {
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long)]
        d: u32,
        #[arg(long, value_enum, default_value_t = Basis::Homogenized)]
        basis: Basis,
        /// Pin the top pure powers to coefficient 1.
        #[arg(long)]
        pin_top: bool,
        #[arg(long)]
        constant: bool,
        /// Enumerate every optimal vertex.
        #[arg(long)]
        enumerate: bool,
    },
    /// Closed-form sharp families.
    Family {
        #[arg(long, value_enum)]
        kind: FamilyKind,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long)]
        d: Option<u32>,
        #[arg(long)]
        m: Option<u32>,
        #[arg(long)]
        a: Option<u32>,
        #[arg(long)]
        b: Option<u32>,
        /// Fraction string.
        #[arg(long)]
        c: Option<String>,
        #[arg(long, value_enum, default_value_t = Op::W)]
        op: Op,
        /// Polynomial JSON to transform (tensor only).
        #[arg(long)]
        poly: Option<PathBuf>,
    },
    /// Newton diagram of a two-variable polynomial.
    Graph {
        #[arg(long)]
        poly: PathBuf,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Sharpness certificate.
    Verify {
        #[arg(long)]
        poly: PathBuf,
        #[arg(long)]
        n: usize,
    },
    /// Term counts reachable by tensoring, with gap admissibility.
    Census {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        max_n: usize,
    },
}

/// Options after merging the config file under the command line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Resolved {
    pub search: SearchConfig,
    pub format: Format,
    pub output: Option<PathBuf>,
}

fn parse_positive(key: &str, value: &str) -> Result<u64, CliError> {
    match value.parse::<u64>() {
        Ok(v) if v > 0 => Ok(v),
        _ => Err(CliError::Usage(format!(
            "config key {key} needs a positive integer, got {value:?}"
        ))),
    }
}

/// Reads `key=value` lines; `#` starts a comment. Keys mirror the long flags.
pub fn read_config(path: &Path) -> Result<GlobalOpts, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
    parse_config(&text)
}

pub fn parse_config(text: &str) -> Result<GlobalOpts, CliError> {
    let mut opts = GlobalOpts::default();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            CliError::Usage(format!("config line {}: expected key=value", lineno + 1))
        })?;
        let (key, value) = (key.trim(), value.trim());
        match key {
            "workers" => opts.workers = Some(parse_positive(key, value)?),
            "max-combinations" => opts.max_combinations = Some(parse_positive(key, value)?),
            "max-support" => opts.max_support = Some(parse_positive(key, value)?),
            "format" => {
                opts.format = Some(
                    Format::from_str(value, false)
                        .map_err(|_| CliError::Usage(format!("config format must be json or text, got {value:?}")))?,
                )
            }
            "output" => opts.output = Some(PathBuf::from(value)),
            other => return Err(CliError::Usage(format!("unknown config key {other:?}"))),
        }
    }
    Ok(opts)
}

pub fn resolve(flags: &GlobalOpts) -> Result<Resolved, CliError> {
    let file = match &flags.config {
        Some(path) => read_config(path)?,
        None => GlobalOpts::default(),
    };
    let mut search = SearchConfig::default();
    if let Some(w) = flags.workers.or(file.workers) {
        search.workers = w as usize;
    }
    if let Some(m) = flags.max_combinations.or(file.max_combinations) {
        search.max_combinations = m;
    }
    if let Some(s) = flags.max_support.or(file.max_support) {
        search.max_support = Some(s as usize);
    }
    Ok(Resolved {
        search,
        format: flags.format.or(file.format).unwrap_or(Format::Json),
        output: flags.output.clone().or(file.output),
    })
}
