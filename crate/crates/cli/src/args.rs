//! Command line surface. Every computing subcommand documents its output
//! schema in the long help text.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "cantorx",
    about = "Exact truncated crossed-product K-theory and weighted-shift spectra",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    pub cmd: Cmd,
}

#[derive(Args, Clone)]
pub struct Common {
    /// Output path; stdout when omitted.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Seed for sampled checks; printed into every JSON output.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Subcommand)]
pub enum Cmd {
    /// Fibonacci words, factor complexity, slope and run lengths.
    #[command(subcommand)]
    Seq(SeqCmd),
    /// Boundary cylinder actions and witness words.
    #[command(subcommand)]
    Boundary(BoundaryCmd),
    /// The cut-circle system: metric, coding, measure.
    #[command(subcommand)]
    Denjoy(DenjoyCmd),
    /// Truncated K-group presentations and their verification.
    #[command(subcommand)]
    Ktheory(KtheoryCmd),
    /// Weighted shift truncations and spectral checks.
    #[command(subcommand)]
    Spectrum(SpectrumCmd),
}

/// How a `{1,2}` sequence is supplied.
#[derive(Args, Clone)]
pub struct SeqSource {
    /// One-sided Fibonacci generation, centered to a two-sided window.
    #[arg(long, conflicts_with_all = ["stage", "file"])]
    pub gen: Option<usize>,
    /// Two-sided Fibonacci stage.
    #[arg(long, conflicts_with = "file")]
    pub stage: Option<usize>,
    /// Sequence file: one line of 1/2 symbols with a '|' before index 0.
    #[arg(long)]
    pub file: Option<PathBuf>,
}

#[derive(Subcommand)]
pub enum SeqCmd {
    /// Emit a Fibonacci word.
    ///
    /// JSON schema: {"gen", "length", "count2", "word", "seed"}; with
    /// --stage the word field carries the two-sided line with separator.
    Fib {
        #[command(flatten)]
        common: Common,
        /// One-sided generation number.
        #[arg(long, conflicts_with = "stage")]
        gen: Option<usize>,
        /// Two-sided stage number.
        #[arg(long)]
        stage: Option<usize>,
    },
    /// Count distinct factors of each length up to a bound.
    ///
    /// JSON schema: {"complexity": {"k": p_k, ...}, "seed"}.
    Complexity {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        source: SeqSource,
        #[arg(long, default_value_t = 10)]
        max_k: usize,
    },
    /// Exact frequency of the symbol 2 on [-N, N].
    ///
    /// JSON schema: {"slope": "p/q", "decimal", "n", "seed"}.
    Slope {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        source: SeqSource,
        /// Window radius N (positive).
        #[arg(long)]
        n: usize,
    },
    /// Longest constant run of a symbol in the window.
    ///
    /// JSON schema: {"symbol", "longest_run", "seed"}.
    Runs {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        source: SeqSource,
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        symbol: u8,
    },
}

#[derive(Subcommand)]
pub enum BoundaryCmd {
    /// Act on a prefix cylinder by a generator letter.
    ///
    /// JSON schema: {"generator", "word", "level", "coeffs": {word: int},
    /// "seed"} where the map carries the level-(|word|+1) image.
    Act {
        #[command(flatten)]
        common: Common,
        /// Generator letter: one of a, A, b, B.
        #[arg(long)]
        generator: char,
        /// Cylinder word over [aAbB].
        #[arg(long, default_value = "")]
        word: String,
    },
    /// Construct a witness word.
    ///
    /// JSON schema: {"kind", "word", "length", "exponent_sum_a",
    /// "exponent_sum_b", "seed"}.
    Witness {
        #[command(flatten)]
        common: Common,
        #[command(subcommand)]
        kind: WitnessKind,
    },
}

#[derive(Subcommand)]
pub enum WitnessKind {
    /// Word moving one cylinder into a target prefix cylinder.
    Minimality {
        /// Target prefix word over [aAbB].
        #[arg(long, default_value = "")]
        prefix: String,
        /// First letter of the source word.
        #[arg(long)]
        source_first: char,
        /// Shift exponent N (nonzero).
        #[arg(long)]
        exponent: i64,
    },
    /// Word with zero exponent sums shrinking its own cylinder.
    Infiniteness {
        /// Source word over [aAbB], nonempty.
        #[arg(long)]
        word: String,
    },
}

#[derive(Subcommand)]
pub enum DenjoyCmd {
    /// Distance between two cut-circle points.
    ///
    /// Point syntax: orbit:<index>:<left|right> or angle:<radians>.
    /// JSON schema: {"value", "tail_bound", "seed"}.
    Distance {
        #[command(flatten)]
        common: Common,
        /// Rotation angle: "golden", a decimal, or forms like "2pi/7".
        #[arg(long)]
        lambda: String,
        #[arg(long, default_value_t = 8)]
        depth: usize,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
    },
    /// Itinerary of the rotation against the two-arc partition.
    ///
    /// Output: one text line of 1/2 symbols.
    Code {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        lambda: String,
        /// Start angle in radians.
        #[arg(long, default_value_t = 0.1)]
        start: f64,
        #[arg(long)]
        length: usize,
    },
    /// Integrate a clopen combination against the invariant measure.
    ///
    /// JSON schema: {"value", "seed"}. Coefficients: unit first, then
    /// the 2n+1 arc coefficients in index order.
    Measure {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        depth: usize,
        /// Comma-separated integers, length 2*depth + 2.
        #[arg(long)]
        coeffs: String,
    },
}

#[derive(Args, Clone)]
pub struct ModelArgs {
    /// Action model: point | denjoy | denjoy-both | two-point-swap.
    #[arg(long, default_value = "denjoy")]
    pub model: String,
    /// Clopen window depth (ignored by point and two-point-swap).
    #[arg(long, default_value_t = 3)]
    pub depth: usize,
    /// Boundary truncation level.
    #[arg(long, default_value_t = 1)]
    pub level: usize,
}

#[derive(Subcommand)]
pub enum KtheoryCmd {
    /// Direct presentation on the tensor lattice.
    ///
    /// JSON schema: {"model": {"kind","depth","level"}, "level",
    /// "free_rank", "torsion": [int], "checks": [], "seed"}.
    K0Direct {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        model: ModelArgs,
    },
    /// Reduced two-coordinate presentation.
    ///
    /// JSON schema: same as k0-direct.
    K0Reduced {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        model: ModelArgs,
    },
    /// Second-difference quotient of the rotation action.
    ///
    /// JSON schema: {"free_rank", "torsion": [int], "depth", "seed"}.
    Example16 {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        depth: usize,
    },
    /// Kernel of the truncated connecting map.
    ///
    /// JSON schema: {"model", "rank", "domain_columns", "seed"}.
    K1 {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        model: ModelArgs,
    },
    /// Sampled verification of the reduction maps.
    ///
    /// JSON schema: {"checks": [{"name","pass"}], "evaluated", "passed",
    /// "skipped_samples", "corrupted", "all_pass", "seed"}.
    Verify {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        /// Negative control: double the relation lattice first.
        #[arg(long)]
        corrupt: bool,
    },
    /// Invariants across a grid of depths and levels.
    ///
    /// JSON schema: {"family", "rows": [{"depth","level","free_rank",
    /// "torsion"}], "stable_from", "seed"}.
    Sweep {
        #[command(flatten)]
        common: Common,
        /// Family: example16 | point | denjoy-k0 | denjoy-both-k0 | denjoy-k1.
        #[arg(long)]
        family: String,
        /// Depth range lo:hi inclusive.
        #[arg(long, default_value = "1:4")]
        depths: String,
        /// Level range lo:hi inclusive.
        #[arg(long, default_value = "1:2")]
        levels: String,
    },
}

#[derive(Subcommand)]
pub enum SpectrumCmd {
    /// Truncate the weighted shift of a sequence.
    ///
    /// JSON schema: {"window", "dim", "weights": [..], "seed"}.
    Shift {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        source: SeqSource,
    },
    /// Joint-spectrum membership scores over a grid.
    ///
    /// CSV: lambda0,lambda1,score for two indices; lambda_re,lambda_im,
    /// score for one index.
    Joint {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        source: SeqSource,
        /// Comma-separated shift indices, e.g. 0,1.
        #[arg(long, default_value = "0,1")]
        gamma: String,
        #[arg(long, default_value_t = 0.5)]
        lo: f64,
        #[arg(long, default_value_t = 2.5)]
        hi: f64,
        #[arg(long, default_value_t = 41)]
        grid_n: usize,
    },
    /// Approximate-eigenvector residuals for unimodular weights.
    ///
    /// CSV: n,residual; `samples` random weight sequences per n.
    Witness {
        #[command(flatten)]
        common: Common,
        /// Comma-separated truncation lengths.
        #[arg(long, default_value = "50,200,800")]
        n_list: String,
        #[arg(long, default_value_t = 5)]
        samples: usize,
    },
    /// Eigenvalues of the wrap-around truncation of periodic weights.
    ///
    /// JSON schema: {"predicted_radius", "max_modulus_deviation",
    /// "eigenvalues": [[re,im]..], "seed"}.
    Periodic {
        #[command(flatten)]
        common: Common,
        /// Comma-separated positive weights forming one period.
        #[arg(long)]
        weights: String,
        #[arg(long, default_value_t = 8)]
        copies: usize,
    },
    /// Identities of the rotation-weight shift.
    ///
    /// JSON schema: {"theta", "sqrt_identity_residual",
    /// "commutation_residual", "seed"}.
    Rotation {
        #[command(flatten)]
        common: Common,
        /// "golden" for the golden-mean conjugate, or a decimal in (0,1).
        #[arg(long, default_value = "golden")]
        theta: String,
        #[arg(long, default_value_t = 128)]
        window: i64,
    },
    /// Run-length scan for constant sequences in the orbit closure.
    ///
    /// JSON schema: {"windows": [[radius,run1,run2]..], "verdict", "seed"}.
    Nonsimple {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        source: SeqSource,
        /// Use the all-words enumeration sequence of this radius instead.
        #[arg(long, conflicts_with_all = ["gen", "stage", "file"])]
        all_words: Option<usize>,
    },
}
