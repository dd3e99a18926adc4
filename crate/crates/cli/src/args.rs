use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "taurep",
    version,
    about = "Exact twisted divisor convolutions and tau-function identities"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Reject divisor tables and Eisenstein series with φ(-1)ψ(-1) ≠ (-1)^l
    /// instead of flagging them. Identity checks are always strict.
    #[arg(long, global = true)]
    pub strict_parity: bool,

    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Directory for memoized divisor tables.
    #[arg(long, global = true, env = "TAUREP_CACHE_DIR")]
    pub cache_dir: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SeriesKind {
    Delta,
    Eisenstein,
    Trace,
}

/// Either `--case` with `--D`/`--chi`, or explicit `--chi --ell --k --e`.
#[derive(Debug, Clone, Args)]
pub struct ConstructionArgs {
    /// Identity family: a1, a2, b or c.
    #[arg(long)]
    pub case: Option<String>,
    #[arg(long = "D")]
    pub d: Option<u64>,
    /// Character label `D.c`.
    #[arg(long)]
    pub chi: Option<String>,
    #[arg(long)]
    pub ell: Option<u32>,
    #[arg(long)]
    pub k: Option<u32>,
    #[arg(long)]
    pub e: Option<u32>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the Dirichlet characters modulo D, or dump one character's values.
    Chars {
        #[arg(long = "D")]
        d: u64,
        /// Print `n, χ(n)` for `0 ≤ n < D` instead of the list.
        #[arg(long)]
        chi: Option<String>,
    },
    /// Twisted divisor function σ_{l-1,φ,ψ}(n) for 0 ≤ n ≤ nmax.
    Sigma {
        #[arg(long)]
        l: u32,
        #[arg(long, default_value = "1.1")]
        phi: String,
        #[arg(long, default_value = "1.1")]
        psi: String,
        #[arg(long)]
        nmax: u64,
    },
    /// L(1-m, χ) as an exact cyclotomic number.
    Lvalue {
        #[arg(long = "char")]
        chi: String,
        #[arg(long)]
        m: u32,
    },
    /// Closed form for L(-3, χ_p) next to the Bernoulli evaluation.
    LvalueClosed {
        #[arg(long)]
        p: u64,
    },
    /// q-expansion coefficients 0..=nmax.
    Qexp {
        #[arg(long, value_enum)]
        series: SeriesKind,
        /// Eisenstein weight (also accepted as --l).
        #[arg(long = "weight", alias = "l")]
        weight: Option<u32>,
        #[arg(long, default_value = "1.1")]
        chi1: String,
        #[arg(long, default_value = "1.1")]
        chi2: String,
        #[command(flatten)]
        construction: ConstructionArgs,
        #[arg(long)]
        nmax: u64,
    },
    /// Ramanujan τ(n) for 1 ≤ n ≤ nmax.
    Tau {
        #[arg(long)]
        nmax: u64,
    },
    /// Convolution coefficients a(n) for 1 ≤ n ≤ nmax.
    Coeff {
        #[command(flatten)]
        construction: ConstructionArgs,
        #[arg(long)]
        nmax: u64,
        /// Also print a(n)/a(1).
        #[arg(long)]
        normalized: bool,
    },
    /// Check a(n) = τ(n)·a(1) for 1 ≤ n ≤ nmax.
    Verify {
        #[arg(long)]
        case: String,
        #[arg(long = "D")]
        d: u64,
        #[arg(long)]
        chi: Option<String>,
        #[arg(long)]
        nmax: u64,
    },
    /// a(1) over all admissible (ℓ, k, e) with ℓ + k + 2e ≤ kmax.
    ScanA1 {
        #[arg(long = "D")]
        d: u64,
        #[arg(long)]
        chi: String,
        #[arg(long)]
        kmax: u32,
    },
    /// Test the Hecke relations a(1)a(pn) + p^{K-1}a(1)a(n/p) = a(p)a(n).
    HeckeProbe {
        #[command(flatten)]
        construction: ConstructionArgs,
        #[arg(long)]
        nmax: u64,
        #[arg(long, value_delimiter = ',', default_value = "2,3")]
        primes: Vec<u64>,
    },
}
