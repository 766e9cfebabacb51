use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "lzkit",
    version,
    about = "LZ78 parsing, coding and universal inference"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

/// How input bytes become symbols.
#[derive(Debug, Clone, Args)]
pub struct AlphabetArgs {
    /// Read '0'/'1' characters (one trailing newline is ignored).
    #[arg(long, conflicts_with = "symbols")]
    pub binary_ascii: bool,
    /// Explicit alphabet: symbol i is the i-th byte of this string.
    #[arg(long, value_name = "BYTES")]
    pub symbols: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// LZ78-compress a file.
    Compress {
        input: PathBuf,
        /// Defaults to INPUT.lz78.
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        alphabet: AlphabetArgs,
    },
    /// Restore a file written by `compress`.
    Decompress {
        input: PathBuf,
        /// Defaults to INPUT without `.lz78`, or INPUT.out.
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        alphabet: AlphabetArgs,
    },
    /// One-time-pad a compressed file (the same command with --decrypt undoes it).
    Encrypt {
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        /// Raw key file, read MSB-first.
        #[arg(
            long,
            conflicts_with = "key_seed",
            required_unless_present = "key_seed"
        )]
        key: Option<PathBuf>,
        /// Seeded pseudo-random key stream.
        #[arg(long)]
        key_seed: Option<u64>,
        #[arg(long)]
        decrypt: bool,
    },
    /// Phrase count and LZ complexity.
    Complexity {
        input: PathBuf,
        #[command(flatten)]
        alphabet: AlphabetArgs,
    },
    /// LZ divergence of X from Y.
    Divergence {
        x: PathBuf,
        y: PathBuf,
        #[command(flatten)]
        alphabet: AlphabetArgs,
    },
    /// Assign INPUT to the corpus class of smallest divergence.
    Classify {
        input: PathBuf,
        /// One training file per class; the file stem is the label.
        #[arg(long)]
        corpus: PathBuf,
        #[command(flatten)]
        alphabet: AlphabetArgs,
    },
    /// Test whether a binary sequence is a fair coin.
    TestRandom {
        input: PathBuf,
        #[arg(long, default_value_t = 0.1)]
        lambda: f64,
        #[command(flatten)]
        alphabet: AlphabetArgs,
    },
    /// Test whether a sequence is memoryless.
    TestMemoryless {
        input: PathBuf,
        #[arg(long, default_value_t = 0.1)]
        lambda: f64,
        #[command(flatten)]
        alphabet: AlphabetArgs,
    },
    /// Estimate the Markov order.
    OrderEstimate {
        input: PathBuf,
        #[arg(long, default_value_t = 0.1)]
        lambda: f64,
        #[arg(long, default_value_t = 8)]
        k_max: usize,
        #[command(flatten)]
        alphabet: AlphabetArgs,
    },
    /// Random-coding experiment: ML against the universal decoder.
    ChannelSim {
        /// Channel description (TOML).
        #[arg(long)]
        channel: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long = "M", value_name = "M")]
        m: u64,
        #[arg(long)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Sequentially predict a binary sequence.
    Predict {
        input: PathBuf,
        #[arg(long, default_value_t = 1.0)]
        alpha: f64,
        #[arg(long, value_enum, default_value_t = Mode::Deterministic)]
        mode: Mode,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        alphabet: AlphabetArgs,
    },
    /// Even-odds gambling on a binary sequence.
    Gamble {
        input: PathBuf,
        #[arg(long, default_value_t = 1.0)]
        alpha: f64,
        #[command(flatten)]
        alphabet: AlphabetArgs,
    },
    /// Exact universal rate-distortion point.
    Rd {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        file: PathBuf,
        #[arg(long, default_value = "hamming")]
        distortion: String,
        #[arg(long = "D", value_name = "D")]
        d: f64,
        #[command(flatten)]
        alphabet: AlphabetArgs,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Mode {
    Deterministic,
    Randomized,
}
