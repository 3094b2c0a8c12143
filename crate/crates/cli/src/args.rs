use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "ramsey-rings", version, about = "Finite Hindman-type configurations in Z[i] and the Lipschitz quaternions")]
pub struct Cli {
    /// Print compact single-line JSON.
    #[arg(long, global = true)]
    pub jsonl: bool,

    /// Ring to work in.
    #[arg(long, global = true, value_enum, default_value_t = RingKind::Gauss)]
    pub ring: RingKind,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RingKind {
    Gauss,
    Quat,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Side {
    /// x = q·z + r, classes of the left ideal L·z.
    Right,
    /// x = z·q + r, classes of the right ideal z·L.
    Left,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    #[value(name = "FS", alias = "fs")]
    Fs,
    #[value(name = "FP", alias = "fp")]
    Fp,
    #[value(name = "AP", alias = "ap")]
    Ap,
    #[value(name = "PS", alias = "ps")]
    Ps,
    #[value(name = "PP", alias = "pp")]
    Pp,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    /// Finite sums and finite products.
    FsFp,
    /// Finite sums and left products by earlier ordered products.
    Leftprod,
    /// Finite sums and all ordered products.
    Ap,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    #[value(name = "A", alias = "a")]
    A,
    #[value(name = "B", alias = "b")]
    B,
}

/// Where a sequence comes from.
#[derive(clap::Args, Debug, Clone)]
pub struct SeqArgs {
    /// Sequence spec: ones, zeros, naturals, const:E, random:SEED,
    /// interleave:SPEC, terms:E1,E2,... or file:PATH.
    #[arg(long = "seq", allow_hyphen_values = true)]
    pub seq: Vec<String>,
    /// Comma-separated terms; same as --seq terms:...
    #[arg(long, allow_hyphen_values = true)]
    pub terms: Option<String>,
    /// File with one term per line; same as --seq file:...
    #[arg(long)]
    pub file: Option<PathBuf>,
    /// Length of rule-based sequences.
    #[arg(long, default_value_t = 10_000)]
    pub bound: usize,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Division with remainder.
    Divrem {
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        #[arg(long, value_enum, default_value_t = Side::Right)]
        side: Side,
    },
    /// Canonical residue representatives modulo z.
    Cosets {
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        #[arg(long, value_enum, default_value_t = Side::Right)]
        side: Side,
    },
    /// A block H beyond index m whose sum is divisible by z.
    Extract {
        #[command(flatten)]
        seq: SeqArgs,
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        #[arg(long, default_value_t = 0)]
        m: usize,
        #[arg(long, value_enum, default_value_t = StrategyArg::A)]
        strategy: StrategyArg,
    },
    /// Ordered blocks on which every given sequence sums to a multiple of z.
    UnionExtract {
        #[command(flatten)]
        seq: SeqArgs,
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        #[arg(long, default_value_t = 4)]
        count: usize,
        /// Also print the blocks after each sequence is absorbed.
        #[arg(long)]
        levels: bool,
    },
    /// FS, FP, AP, PS or PP of a finite list.
    Config {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long, allow_hyphen_values = true)]
        terms: String,
    },
    /// A sum subsystem whose sums and products lie in a set.
    Build {
        #[command(flatten)]
        seq: SeqArgs,
        #[arg(long, allow_hyphen_values = true)]
        set: String,
        #[arg(long)]
        depth: usize,
        #[arg(long, value_enum, default_value_t = Mode::FsFp)]
        mode: Mode,
        #[arg(long, default_value_t = 500)]
        blocks_per_level: usize,
        #[arg(long, default_value_t = 10_000)]
        backtracks: usize,
    },
    /// Exhaustively check sums and products of a list against a set.
    Verify {
        #[arg(long, allow_hyphen_values = true)]
        terms: String,
        #[arg(long, allow_hyphen_values = true)]
        set: String,
        #[arg(long, value_enum, default_value_t = Mode::FsFp)]
        mode: Mode,
    },
    /// Bounded search for a shift a and index set H with a + Σ_H f ∈ A for every f.
    JWitness {
        #[command(flatten)]
        seq: SeqArgs,
        #[arg(long, allow_hyphen_values = true)]
        set: String,
        #[arg(long, default_value_t = 2)]
        a_radius: i64,
        #[arg(long, default_value_t = 8)]
        h_range: usize,
    },
    /// Whether every coloring of 1..N has a monochromatic x, y, x+y.
    Schur {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        colors: usize,
    },
    /// k terms whose finite sums share one color.
    Hindman {
        /// constant, parity, residue:Z, random:SEED[:COLORS] or file:PATH (JSON map).
        #[arg(long, default_value = "constant", allow_hyphen_values = true)]
        coloring: String,
        /// LO..HI or box:RADIUS; ignored for file colorings.
        #[arg(long, default_value = "1..100")]
        domain: String,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 1_000_000)]
        nodes: usize,
    },
    /// Whether the pairwise sums and products of distinct terms share a color.
    Pspp {
        #[arg(long, allow_hyphen_values = true)]
        terms: String,
        #[arg(long, default_value = "constant", allow_hyphen_values = true)]
        coloring: String,
        #[arg(long, default_value = "1..1000")]
        domain: String,
    },
    /// Run one command per line of FILE (or stdin), printing JSON lines.
    Batch { file: Option<PathBuf> },
}

/// Splits a command line on whitespace, honoring single and double quotes.
pub fn split_words(line: &str) -> Option<Vec<String>> {
    let mut words = Vec::new();
    let mut cur = String::new();
    let mut quote = None;
    let mut in_word = false;
    for ch in line.chars() {
        match (quote, ch) {
            (Some(q), c) if c == q => quote = None,
            (Some(_), c) => cur.push(c),
            (None, '"' | '\'') => {
                quote = Some(ch);
                in_word = true;
            }
            (None, c) if c.is_whitespace() => {
                if in_word {
                    words.push(std::mem::take(&mut cur));
                    in_word = false;
                }
            }
            (None, c) => {
                cur.push(c);
                in_word = true;
            }
        }
    }
    if quote.is_some() {
        return None;
    }
    if in_word {
        words.push(cur);
    }
    Some(words)
}
