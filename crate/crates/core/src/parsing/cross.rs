use crate::error::{LzError, Result};
use crate::sequence::Sequence;

use super::index::SubstringIndex;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossParseResult {
    pub boundaries: Vec<(usize, usize)>,
}

impl CrossParseResult {
    /// `c(x <- y)`.
    pub fn count(&self) -> usize {
        self.boundaries.len()
    }
}

/// Greedy parse of `x` into the longest prefixes that occur somewhere in `y`.
///
/// A symbol of `x` that never occurs in `y` becomes a phrase on its own.
pub fn cross_parse(x: &Sequence, y: &Sequence) -> Result<CrossParseResult> {
    if y.is_empty() {
        return Err(LzError::EmptySequence("cross_parse reference y"));
    }
    x.check_compatible(y)?;
    let index = SubstringIndex::build(y.symbols());
    Ok(cross_parse_indexed(x.symbols(), &index))
}

pub(crate) fn cross_parse_indexed(x: &[u32], index: &SubstringIndex) -> CrossParseResult {
    let mut boundaries = Vec::new();
    let mut start = 0;
    while start < x.len() {
        let len = index.longest_prefix_match(&x[start..]).max(1);
        boundaries.push((start, start + len));
        start += len;
    }
    CrossParseResult { boundaries }
}
