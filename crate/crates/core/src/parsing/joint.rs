use std::collections::HashMap;

use crate::error::{LzError, Result};
use crate::sequence::Sequence;

use super::incremental::parse_symbols;
use super::xlog2x;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JointParseResult {
    /// Phrase partition of the aligned pair sequence.
    pub joint_boundaries: Vec<(usize, usize)>,
    /// Distinct y-side phrases in order of first appearance.
    pub distinct_y_phrases: Vec<Vec<u32>>,
    /// `c_l[l]`: joint phrases whose y-side is `distinct_y_phrases[l]`.
    pub c_l: Vec<u64>,
    /// The last joint phrase repeats an earlier one. It stays in
    /// `joint_boundaries` but is left out of the tallies.
    pub last_incomplete: bool,
}

impl JointParseResult {
    /// `c(y^n)` as induced by the joint parse.
    pub fn c_y(&self) -> usize {
        self.distinct_y_phrases.len()
    }

    /// `c(x^n, y^n)`: tallied (complete) joint phrases.
    pub fn c_joint(&self) -> usize {
        self.joint_boundaries.len() - usize::from(self.last_incomplete)
    }
}

/// Incremental parse of `((x_1, y_1), .., (x_n, y_n))` and the y-phrase
/// multiplicities it induces.
pub fn joint_parse(x: &Sequence, y: &Sequence) -> Result<JointParseResult> {
    check_pair(x, y)?;
    let pairs = Sequence::zip(x, y)?;
    let (parse, _) = parse_symbols(pairs.symbols());
    let ys = y.symbols();
    let mut slot: HashMap<&[u32], usize> = HashMap::new();
    let mut distinct_y_phrases = Vec::new();
    let mut c_l = Vec::new();
    let tallied = parse.complete_phrases();
    for &(s, e) in &parse.boundaries[..tallied] {
        let phrase = &ys[s..e];
        let l = *slot.entry(phrase).or_insert_with(|| {
            distinct_y_phrases.push(phrase.to_vec());
            c_l.push(0);
            c_l.len() - 1
        });
        c_l[l] += 1;
    }
    Ok(JointParseResult {
        joint_boundaries: parse.boundaries,
        distinct_y_phrases,
        c_l,
        last_incomplete: parse.last_incomplete,
    })
}

/// Ziv's conditional metric `u(x|y) = sum_l c_l log2 c_l`, in bits.
pub fn conditional_metric(x: &Sequence, y: &Sequence) -> Result<f64> {
    check_pair(x, y)?;
    Ok(joint_parse(x, y)?.c_l.iter().map(|&c| xlog2x(c)).sum())
}

fn check_pair(x: &Sequence, y: &Sequence) -> Result<()> {
    if x.len() != y.len() {
        return Err(LzError::LengthMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    if x.is_empty() {
        return Err(LzError::EmptySequence("joint parse needs n >= 1"));
    }
    Ok(())
}
