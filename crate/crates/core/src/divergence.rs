//! LZ divergence `Delta(x||y) = (c(x<-y) log2 n - c(x) log2 c(x)) / n` and a
//! nearest-divergence classifier.

use std::collections::HashSet;

use serde::Serialize;

use crate::error::{LzError, Result};
use crate::parsing::{cross_parse_indexed, phrase_count, xlog2x, SubstringIndex};
use crate::sequence::Sequence;

/// Bits per symbol; may be negative.
pub fn lz_divergence(x: &Sequence, y: &Sequence) -> Result<f64> {
    if x.is_empty() {
        return Err(LzError::EmptySequence("divergence input x"));
    }
    if y.is_empty() {
        return Err(LzError::EmptySequence("divergence reference y"));
    }
    x.check_compatible(y)?;
    Ok(divergence_indexed(
        x.symbols(),
        &SubstringIndex::build(y.symbols()),
    ))
}

fn divergence_indexed(x: &[u32], y_index: &SubstringIndex) -> f64 {
    let n = x.len() as f64;
    let cross = cross_parse_indexed(x, y_index).count() as f64;
    let own = phrase_count(x) as u64;
    (cross * n.log2() - xlog2x(own)) / n
}

/// Training data, one sequence per class.
#[derive(Debug, Clone)]
pub struct LabeledCorpus {
    classes: Vec<(String, Sequence)>,
}

impl LabeledCorpus {
    pub fn new(classes: Vec<(String, Sequence)>) -> Result<Self> {
        if classes.is_empty() {
            return Err(LzError::InvalidParameter("empty corpus".into()));
        }
        let mut seen = HashSet::new();
        for (label, seq) in &classes {
            if !seen.insert(label.as_str()) {
                return Err(LzError::InvalidParameter(format!(
                    "duplicate label {label:?}"
                )));
            }
            if seq.is_empty() {
                return Err(LzError::EmptySequence("training sequence"));
            }
            seq.check_compatible(&classes[0].1)?;
        }
        Ok(Self { classes })
    }

    /// Several training sequences per class, concatenated without separator.
    pub fn from_groups(groups: Vec<(String, Vec<Sequence>)>) -> Result<Self> {
        let mut classes = Vec::with_capacity(groups.len());
        for (label, seqs) in groups {
            let first = seqs
                .first()
                .ok_or(LzError::EmptySequence("class without training data"))?;
            let alphabet = first.alphabet().clone();
            let mut symbols = Vec::new();
            for s in &seqs {
                s.check_compatible(first)?;
                symbols.extend_from_slice(s.symbols());
            }
            classes.push((label, Sequence::new(alphabet, symbols)?));
        }
        Self::new(classes)
    }

    pub fn classes(&self) -> &[(String, Sequence)] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Score {
    pub label: String,
    pub delta: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Classification {
    pub label: String,
    /// One entry per class, in corpus order.
    pub scores: Vec<Score>,
}

/// A corpus with its substring indexes built once for repeated queries.
pub struct Classifier {
    labels: Vec<String>,
    indexes: Vec<SubstringIndex>,
    alphabet_size: u32,
}

impl Classifier {
    pub fn new(corpus: &LabeledCorpus) -> Result<Self> {
        if corpus.is_empty() {
            return Err(LzError::InvalidParameter("empty corpus".into()));
        }
        Ok(Self {
            labels: corpus.classes.iter().map(|(l, _)| l.clone()).collect(),
            indexes: corpus
                .classes
                .iter()
                .map(|(_, y)| SubstringIndex::build(y.symbols()))
                .collect(),
            alphabet_size: corpus.classes[0].1.alphabet().size(),
        })
    }

    /// Label with the smallest divergence; ties go to the earlier class.
    pub fn classify(&self, x: &Sequence) -> Result<Classification> {
        if x.is_empty() {
            return Err(LzError::EmptySequence("sequence to classify"));
        }
        if x.alphabet().size() != self.alphabet_size {
            return Err(LzError::AlphabetMismatch {
                left: x.alphabet().size(),
                right: self.alphabet_size,
            });
        }
        let scores: Vec<Score> = self
            .labels
            .iter()
            .zip(&self.indexes)
            .map(|(label, index)| Score {
                label: label.clone(),
                delta: divergence_indexed(x.symbols(), index),
            })
            .collect();
        let mut best = 0;
        for (i, s) in scores.iter().enumerate() {
            if s.delta < scores[best].delta {
                best = i;
            }
        }
        Ok(Classification {
            label: scores[best].label.clone(),
            scores,
        })
    }
}

pub fn classify(x: &Sequence, corpus: &LabeledCorpus) -> Result<Classification> {
    Classifier::new(corpus)?.classify(x)
}
