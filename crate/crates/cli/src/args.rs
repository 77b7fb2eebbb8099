use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

#[derive(Parser, Debug)]
#[command(name = "tel", version, about = "Exact computations and moment experiments for partition categories, random groups and pseudopolynomials")]
pub struct Cli {
    /// Emit JSON (with the run manifest) instead of CSV.
    #[arg(long, global = true)]
    pub json: bool,

    /// Write output to this file; the run manifest goes to `<path>.manifest.json`.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,

    /// Worker threads (default: available parallelism). Output does not depend on it.
    #[arg(long, global = true, value_name = "K")]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(tag = "subcommand", rename_all = "kebab-case")]
pub enum Command {
    /// Bell number B_k.
    Bell {
        #[arg(long)]
        k: usize,
    },
    /// dim Hom(1, Std^k): generic when --n is omitted, else for S_n.
    Homdim {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Rank of the Gram matrix of partitions of [k] at t = n.
    GramRank {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: u64,
    },
    /// Rencontres numbers: permutations of S_n with r fixed points.
    Rencontres {
        #[arg(long)]
        n: usize,
    },
    /// Fixed points of uniform permutations of S_n.
    PermFix {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        mc: McArgs,
        /// Highest moment compared with the Bell numbers.
        #[arg(long, default_value_t = 4)]
        max_order: usize,
    },
    /// Cycle counts l_1..l_imax of uniform permutations of S_n.
    Cycles {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        imax: usize,
        #[command(flatten)]
        mc: McArgs,
        #[arg(long, default_value_t = 4)]
        max_order: usize,
    },
    /// Moments of the character chi_{lambda[n]} on S_n.
    CharMoments {
        /// Comma list of parts, e.g. 2,1 (empty for the trivial character).
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long)]
        n: u32,
        /// Highest moment.
        #[arg(long)]
        a: u32,
        /// Also sample this many permutations and compare.
        #[arg(long, value_name = "TRIALS")]
        mc: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Report where the moments stop changing for n up to --n.
        #[arg(long)]
        stabilize: bool,
    },
    /// |Fix| of uniform elements of GL_n(F_q).
    GlFix(GroupArgs),
    /// |Fix| of uniform elements of Aff_n(F_q).
    AffFix(GroupArgs),
    /// Mixed moments of the trace of Haar unitaries in U(n).
    UnitaryTrace {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        mc: McArgs,
        #[arg(long, default_value_t = 4)]
        max_order: usize,
    },
    /// Compare an empirical table with a target law.
    MomentsCompare {
        /// CSV histogram `value,count` or JSON empirical moments.
        #[arg(long)]
        empirical: PathBuf,
        /// poisson:LAMBDA | cgauss | qfix:Q | qaffine:Q
        #[arg(long)]
        target: String,
        /// Highest order built from a histogram.
        #[arg(long, default_value_t = 4)]
        max_order: usize,
        #[arg(long, default_value_t = 4.0)]
        z: f64,
        /// Require every observed value to be 0 or a power of this base.
        #[arg(long)]
        support_base: Option<u64>,
    },
    /// Exact positive-semidefiniteness of the Hankel matrix of a moment table.
    Hankel {
        /// CSV `order,moment` with rational moments.
        #[arg(long, conflicts_with = "law")]
        table: Option<PathBuf>,
        /// Built-in law instead of a file: poisson:LAMBDA | qfix:Q | qaffine:Q | 2re-cgauss
        #[arg(long)]
        law: Option<String>,
        #[arg(long)]
        order: usize,
    },
    /// rho(p) = #{x mod p : spec(x) = 0} for primes p <= pmax.
    PseudoRoots {
        #[arg(long)]
        pmax: u64,
        #[arg(long, default_value = "F")]
        spec: String,
        /// Print the histogram of rho against e^-1/r! instead of per-prime rows.
        #[arg(long)]
        summary: bool,
    },
    /// Moments of the normalised exponential sums W(a; p) over a.
    Expsum {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 4)]
        max_order: usize,
        /// exact | sampled:N
        #[arg(long, default_value = "exact")]
        mode: String,
        #[arg(long, default_value = "F")]
        spec: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Check (m - n) | (a_m - a_n) for 0 <= n < m <= N.
    HallCheck {
        #[arg(long = "N", value_name = "N")]
        bound: u64,
        #[arg(long, default_value = "F")]
        spec: String,
    },
}

#[derive(Args, Debug, Serialize)]
pub struct McArgs {
    #[arg(long)]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Args, Debug, Serialize)]
pub struct GroupArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub q: u64,
    /// Number of samples (ignored with --exact).
    #[arg(long, default_value_t = 0)]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Enumerate the whole group instead of sampling.
    #[arg(long)]
    pub exact: bool,
    /// Highest moment compared (default n).
    #[arg(long)]
    pub max_order: Option<usize>,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Bell { .. } => "bell",
            Command::Homdim { .. } => "homdim",
            Command::GramRank { .. } => "gram-rank",
            Command::Rencontres { .. } => "rencontres",
            Command::PermFix { .. } => "perm-fix",
            Command::Cycles { .. } => "cycles",
            Command::CharMoments { .. } => "char-moments",
            Command::GlFix(_) => "gl-fix",
            Command::AffFix(_) => "aff-fix",
            Command::UnitaryTrace { .. } => "unitary-trace",
            Command::MomentsCompare { .. } => "moments-compare",
            Command::Hankel { .. } => "hankel",
            Command::PseudoRoots { .. } => "pseudo-roots",
            Command::Expsum { .. } => "expsum",
            Command::HallCheck { .. } => "hall-check",
        }
    }

    pub fn seed(&self) -> Option<u64> {
        match self {
            Command::PermFix { mc, .. } | Command::Cycles { mc, .. } | Command::UnitaryTrace { mc, .. } => {
                Some(mc.seed)
            }
            Command::GlFix(g) | Command::AffFix(g) if !g.exact => Some(g.seed),
            Command::CharMoments { mc: Some(_), seed, .. } => Some(*seed),
            Command::Expsum { mode, seed, .. } if mode != "exact" => Some(*seed),
            _ => None,
        }
    }
}
