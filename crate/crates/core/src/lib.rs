//! LZ78 incremental parsing and the universal individual-sequence
//! algorithms built on it.
//!
//! * [`parsing`]: self-, cross- and joint parsing, `c log c / n` complexity and
//!   the conditional metric `u(x|y)`.
//! * [`codec`]: bit-exact LZ78 coder and one-time-pad encryption of its output.
//! * [`inference`]: empirical entropies, LZ hypothesis tests, Markov order estimation.
//! * [`divergence`]: LZ divergence and nearest-divergence classification.
//! * [`channel`]: unifilar finite-state channels, ML and universal (LZ) decoding.
//! * [`sequential`]: LZ-trie prediction and even-odds gambling.
//! * [`ensemble`]: exhaustive universal rate-distortion ensemble at tiny `n`.

pub mod channel;
pub mod codec;
pub mod divergence;
pub mod ensemble;
pub mod error;
pub mod inference;
pub mod parsing;
pub mod sequence;
pub mod sequential;
pub mod synth;

pub use error::{LzError, Result};
pub use parsing::{
    conditional_metric, cross_parse, incremental_parse, joint_parse, lz_complexity,
    CrossParseResult, JointParseResult, ParseResult, ParseTrie,
};
pub use sequence::{Alphabet, Sequence};
