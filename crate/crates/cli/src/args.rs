use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use decomplab_core::addcat::Instance;
use decomplab_core::gamma::SphereModel;
use decomplab_core::homology::Coeff;
use decomplab_core::rognes::Minimality;

use crate::error::{CliError, Result};
use crate::suites::Suite;

#[derive(Debug, Parser)]
#[command(name = "decomplab", version, about = "Exact checks on decomposition posets, Γ-set filtrations and buildings")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub global: Global,
}

#[derive(Debug, Clone, Args)]
pub struct Global {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Output file (default: stdout).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Coefficients for reported homology: z, q, f2 or f3.
    #[arg(long, global = true, default_value = "z", value_parser = parse_coeff)]
    pub coeff: Coeff,
    /// Upper bound on enumerated simplices.
    #[arg(long, global = true)]
    pub max_cells: Option<u64>,
    /// Seed for sampled audits.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Cat {
    Vect,
    Finset,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SphereArg {
    /// Δ[k]/∂Δ[k].
    Minimal,
    /// (S¹)^∧k.
    Smash,
}

impl From<SphereArg> for SphereModel {
    fn from(s: SphereArg) -> Self {
        match s {
            SphereArg::Minimal => SphereModel::Minimal,
            SphereArg::Smash => SphereModel::Smash,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MinimalityArg {
    DownwardClosed,
    Subset,
}

impl From<MinimalityArg> for Minimality {
    fn from(m: MinimalityArg) -> Self {
        match m {
            MinimalityArg::DownwardClosed => Minimality::DownwardClosed,
            MinimalityArg::Subset => Minimality::Subset,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct InstanceArgs {
    #[arg(long, value_enum, default_value_t = Cat::Vect)]
    pub cat: Cat,
    /// Rank of the ambient object.
    #[arg(long)]
    pub n: usize,
    /// Field size (vector spaces only).
    #[arg(long, default_value_t = 2)]
    pub q: u32,
}

impl InstanceArgs {
    pub fn instance(&self) -> Result<Instance> {
        match self.cat {
            Cat::Finset => Ok(Instance::FinSet { n: self.n }),
            Cat::Vect => Ok(Instance::Vect { n: self.n, q: check_q(self.q)? }),
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct FieldArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 2)]
    pub q: u32,
}

#[derive(Debug, Clone, Args)]
pub struct SpanningArgs {
    #[arg(long)]
    pub k: usize,
    #[arg(long, default_value_t = 2)]
    pub q: u32,
    #[arg(long, value_enum, default_value_t = MinimalityArg::DownwardClosed)]
    pub minimality: MinimalityArg,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decomposition poset Decomp°_A (or its ordered variant) and its homology.
    Decomp {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long)]
        ordered: bool,
    },
    /// Tits building of F_q^n.
    Tits(FieldArgs),
    /// Split Tits building, with the subdivision comparison against ordered decompositions.
    SplitTits(FieldArgs),
    /// Minimal spanning posets P° with sizes and the size-law audit.
    Spanning(SpanningArgs),
    /// Common basis complex against P° after Σ′.
    Cbc(SpanningArgs),
    /// S_A(S^k) against Σ′N Decomp°_A in the stable window.
    Gamma {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long)]
        k: usize,
        /// Homology trusted through this degree (default 2k).
        #[arg(long)]
        trunc: Option<usize>,
        #[arg(long, value_enum, default_value_t = SphereArg::Minimal)]
        sphere: SphereArg,
    },
    /// dim Dec_n and its GL_n(F_q)-coinvariants over Q.
    Column(FieldArgs),
    /// Poset of proper ordered set partitions of an n-set.
    Permutahedron {
        #[arg(long)]
        n: usize,
    },
    /// Homotopy colimit of the δ-filtration of S_A(S^k) against S_A(S^k).
    Blowup {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long)]
        trunc: Option<usize>,
        #[arg(long, value_enum, default_value_t = SphereArg::Minimal)]
        sphere: SphereArg,
    },
    /// Runs verification suites and emits one record per claim.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        /// Include the k = 3, q = 2 spanning-poset comparison.
        #[arg(long)]
        stretch: bool,
        /// Fill the ms column (makes reports run-dependent).
        #[arg(long)]
        timing: bool,
    },
}

fn parse_coeff(s: &str) -> std::result::Result<Coeff, String> {
    match s.to_ascii_lowercase().as_str() {
        "z" | "q" | "f2" | "f3" => s.parse().map_err(|e: decomplab_core::Error| e.to_string()),
        _ => Err(format!("`{s}` is not one of z, q, f2, f3")),
    }
}

pub fn check_q(q: u32) -> Result<u32> {
    if q > 16 {
        return Err(CliError::Usage(format!("q = {q} exceeds 16")));
    }
    Ok(q)
}

/// Simplex budget from `--max-cells` and `DECOMPLAB_CAP_MB`, whichever is smaller.
pub fn cell_budget(max_cells: Option<u64>, cap_mb: Option<&str>) -> Result<Option<u64>> {
    // about 256 bytes per stored simplex with its face table
    let from_env = match cap_mb {
        None => None,
        Some(v) => {
            let mb: u64 = v
                .trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("DECOMPLAB_CAP_MB=`{v}` is not a whole number")))?;
            Some(mb.saturating_mul(1 << 20) / 256)
        }
    };
    let budget = match (max_cells, from_env) {
        (Some(a), Some(b)) => Some(a.min(b)),
        (a, b) => a.or(b),
    };
    if budget == Some(0) {
        return Err(CliError::Usage("cell budget must be positive".into()));
    }
    Ok(budget)
}
