use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "zzac", version, about = "Zigzag-coded node arrays on the local filesystem")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Construction {
    /// Two parities over GF(3), k = m + 1.
    OptimalR2,
    /// `s` copies of the two-parity code over GF(q).
    Dup,
    /// Weight-3 vectors over GF(q), m a multiple of 3.
    Weight3,
    /// Standard basis with r parities (r = 2 or 3).
    OptimalGeneral,
    /// Standard basis with random coefficients over GF(q).
    RandomCoeff,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a code and write its descriptor.
    Gen {
        construction: Construction,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        r: Option<usize>,
        #[arg(long)]
        s: Option<usize>,
        #[arg(long)]
        q: Option<u32>,
        #[arg(long)]
        alpha: Option<u32>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Descriptor path to write.
        #[arg(long, visible_alias = "spec")]
        out: PathBuf,
    },
    /// Shard a file into one chunk per node.
    Encode {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        root: PathBuf,
    },
    /// Mark nodes as failed by renaming their directories.
    Fail {
        #[arg(long)]
        root: PathBuf,
        #[arg(required = true)]
        nodes: Vec<usize>,
    },
    /// Restore failed nodes, reading only what the rebuild plan needs.
    Rebuild {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        root: PathBuf,
    },
    /// Reassemble the original file, decoding around failed nodes.
    Decode {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        root: PathBuf,
        #[arg(long)]
        output: PathBuf,
    },
    /// Check every stripe and correct a single bad column in place.
    Scrub {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        root: PathBuf,
    },
    /// Certify that the code tolerates any r erasures.
    Verify {
        #[arg(long)]
        spec: PathBuf,
    },
    /// Exact rebuilding ratio averaged over erasure sets of size e.
    Ratio {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, default_value_t = 1)]
        e: usize,
    },
}
