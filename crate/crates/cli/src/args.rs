use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(name = "brauer", version, about = "Quaternion algebras and Brauer classes over Q, Q(x) and F_p(x)")]
pub struct Cli {
    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Hilbert symbols (a, b)_v.
    Hilbert(HilbertArgs),
    /// Brauer classes over Q.
    Brq {
        #[command(subcommand)]
        cmd: BrqCmd,
    },
    /// Quaternion algebras over Q(x).
    Qx {
        #[command(subcommand)]
        cmd: QxCmd,
    },
    /// Quaternion algebras over F_p(x).
    Ffx {
        #[command(subcommand)]
        cmd: FfxCmd,
    },
    /// Factor a polynomial over Q (or over F_p with --char).
    Factor(FactorArgs),
    /// Decide whether an element of Q[x]/(pi) is a square.
    Square(SquareArgs),
    /// Run the seeded property suites.
    Selftest(SelftestArgs),
}

#[derive(Args, Debug)]
pub struct HilbertArgs {
    #[arg(short, allow_hyphen_values = true)]
    pub a: String,
    #[arg(short, allow_hyphen_values = true)]
    pub b: String,
    /// A single prime place.
    #[arg(short, conflicts_with_all = ["real", "all"])]
    pub p: Option<String>,
    /// The real place only.
    #[arg(long, conflicts_with = "all")]
    pub real: bool,
    /// Every place where the symbol can be -1, with their product (default).
    #[arg(long)]
    pub all: bool,
}

#[derive(Subcommand, Debug)]
pub enum BrqCmd {
    /// Invariant vector of (a, b).
    Class {
        #[arg(short, allow_hyphen_values = true)]
        a: String,
        #[arg(short, allow_hyphen_values = true)]
        b: String,
    },
    /// Whether two classes (JSON files) have the same maximal subfields.
    Samesub { file1: PathBuf, file2: PathBuf },
    /// The two classes with invariants (1/n, 1/n, -1/n, -1/n) and (1/n, -1/n, 1/n, -1/n).
    Ex65 {
        #[arg(short)]
        n: u64,
        #[arg(short, value_delimiter = ',', required = true)]
        p: Vec<String>,
    },
    /// m times a class.
    Scale {
        file: PathBuf,
        #[arg(short, allow_hyphen_values = true)]
        m: i64,
    },
    /// A quaternion algebra (a, b) representing an exponent-2 class.
    Quaternion { file: PathBuf },
}

#[derive(Subcommand, Debug)]
pub enum QxCmd {
    /// Residue table of (f, g).
    Residues(PairArgs),
    /// Isomorphism decision for (f1, g1) and (f2, g2).
    Isom(TwoPairArgs),
    /// Whether two division algebras have the same maximal subfields.
    Samemax(TwoPairArgs),
    /// (f(a), g(a)) and its class in Br(Q).
    Specialize {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long, allow_hyphen_values = true)]
        at: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum FfxCmd {
    /// Residues of (f, g) at every candidate place, infinity included.
    Residues {
        #[arg(long = "char")]
        p: u64,
        #[command(flatten)]
        pair: PairArgs,
    },
    /// Isomorphism decision over F_p(x).
    Isom {
        #[arg(long = "char")]
        p: u64,
        #[command(flatten)]
        pairs: TwoPairArgs,
    },
}

#[derive(Args, Debug)]
pub struct PairArgs {
    #[arg(short, allow_hyphen_values = true)]
    pub f: String,
    #[arg(short, allow_hyphen_values = true)]
    pub g: String,
}

#[derive(Args, Debug)]
pub struct TwoPairArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub f1: String,
    #[arg(long, allow_hyphen_values = true)]
    pub g1: String,
    #[arg(long, allow_hyphen_values = true)]
    pub f2: String,
    #[arg(long, allow_hyphen_values = true)]
    pub g2: String,
}

#[derive(Args, Debug)]
pub struct FactorArgs {
    #[arg(short, allow_hyphen_values = true)]
    pub f: String,
    #[arg(long = "char")]
    pub p: Option<u64>,
}

#[derive(Args, Debug)]
pub struct SquareArgs {
    /// Monic irreducible pi.
    #[arg(long, allow_hyphen_values = true)]
    pub modulus: String,
    #[arg(long, allow_hyphen_values = true)]
    pub value: String,
}

#[derive(Args, Debug)]
pub struct SelftestArgs {
    #[arg(long, default_value_t = 50)]
    pub cases: usize,
}

/// Accepts the single-dash spellings `-f1 -g1 -f2 -g2`.
pub fn normalize_args<I, S>(argv: I) -> Vec<String>
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    argv.into_iter()
        .map(Into::into)
        .map(|a| match a.as_str() {
            "-f1" | "-g1" | "-f2" | "-g2" => format!("-{a}"),
            _ => a,
        })
        .collect()
}
