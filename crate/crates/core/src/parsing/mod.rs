//! The incremental-parsing engine shared by every other module: LZ78
//! self-parsing, cross-parsing against a reference, joint parsing of aligned
//! pairs, and the phrase-count complexity functionals.

mod cross;
mod incremental;
mod index;
mod joint;
mod trie;

pub use cross::{cross_parse, CrossParseResult};
pub use incremental::{incremental_parse, incremental_parse_with_trie, ParseResult};
pub use index::SubstringIndex;
pub use joint::{conditional_metric, joint_parse, JointParseResult};
pub use trie::{ParseTrie, TrieNode, ROOT};

pub(crate) use cross::cross_parse_indexed;
pub(crate) use incremental::{parse_symbols, phrase_count};

use crate::error::{LzError, Result};
use crate::sequence::Sequence;

/// `c * log2(c)`, zero for `c <= 1`.
pub fn xlog2x(c: u64) -> f64 {
    if c <= 1 {
        0.0
    } else {
        let c = c as f64;
        c * c.log2()
    }
}

/// LZ complexity `c log2 c / n` in bits per symbol.
pub fn lz_complexity(x: &Sequence) -> Result<f64> {
    if x.is_empty() {
        return Err(LzError::EmptySequence("lz_complexity"));
    }
    let c = phrase_count(x.symbols());
    Ok(xlog2x(c as u64) / x.len() as f64)
}
