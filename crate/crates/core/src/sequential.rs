//! Sequential prediction and even-odds gambling driven by the LZ78 trie.
//!
//! The cursor walks the phrase trie as the sequence is parsed. At a node the
//! estimate of the next symbol is `(count_a + alpha) / (count_0 + count_1 + 2 alpha)`
//! where `count_a` is how often the parse has stepped into child `a`. A new
//! leaf ends the phrase and sends the cursor back to the root.

use rand::Rng;
use serde::Serialize;

use crate::error::{LzError, Result};
use crate::parsing::{ParseTrie, ROOT};
use crate::sequence::Sequence;
use crate::synth;

#[derive(Debug, Clone)]
pub struct PredictorState {
    trie: ParseTrie,
    cursor: u32,
    alpha: f64,
}

impl PredictorState {
    pub fn new(alpha: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha.is_finite()) {
            return Err(LzError::InvalidParameter(format!(
                "smoothing alpha = {alpha} must be positive"
            )));
        }
        Ok(Self {
            trie: ParseTrie::new(),
            cursor: ROOT,
            alpha,
        })
    }

    fn count(&self, symbol: u32) -> f64 {
        self.trie
            .child(self.cursor, symbol)
            .map_or(0.0, |c| self.trie.node(c).visits as f64)
    }

    /// Estimated probability that the next symbol is `symbol`.
    pub fn prob(&self, symbol: u32) -> f64 {
        let (c0, c1) = (self.count(0), self.count(1));
        let own = if symbol == 0 { c0 } else { c1 };
        (own + self.alpha) / (c0 + c1 + 2.0 * self.alpha)
    }

    /// Consume the actual next symbol.
    pub fn update(&mut self, symbol: u32) {
        match self.trie.child(self.cursor, symbol) {
            Some(next) => {
                self.trie.visit(next);
                self.cursor = next;
            }
            None => {
                let leaf = self.trie.insert(self.cursor, symbol);
                self.trie.visit(leaf);
                self.cursor = ROOT;
            }
        }
    }

    pub fn cursor(&self) -> u32 {
        self.cursor
    }

    pub fn trie(&self) -> &ParseTrie {
        &self.trie
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PredictionMode {
    /// Predict 1 iff the estimate exceeds one half.
    Deterministic,
    /// Draw the prediction from the estimate.
    Randomized,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PredictionReport {
    /// Estimated `P(x_i = 1)` before seeing `x_i`.
    pub p_one: Vec<f64>,
    pub predictions: Vec<u32>,
    pub errors: usize,
    pub error_rate: f64,
}

fn check_binary(x: &Sequence) -> Result<()> {
    if x.alphabet().size() != 2 {
        return Err(LzError::InvalidParameter(format!(
            "sequential predictor needs a binary alphabet, got size {}",
            x.alphabet().size()
        )));
    }
    Ok(())
}

pub fn predict_sequence(
    x: &Sequence,
    alpha: f64,
    mode: PredictionMode,
    seed: u64,
) -> Result<PredictionReport> {
    check_binary(x)?;
    let mut state = PredictorState::new(alpha)?;
    let mut rng = synth::rng(seed);
    let n = x.len();
    let mut p_one = Vec::with_capacity(n);
    let mut predictions = Vec::with_capacity(n);
    let mut errors = 0;
    for &sym in x.symbols() {
        let p = state.prob(1);
        let guess = match mode {
            PredictionMode::Deterministic => u32::from(p > 0.5),
            PredictionMode::Randomized => u32::from(rng.gen_bool(p)),
        };
        errors += usize::from(guess != sym);
        p_one.push(p);
        predictions.push(guess);
        state.update(sym);
    }
    Ok(PredictionReport {
        p_one,
        predictions,
        errors,
        error_rate: if n == 0 {
            0.0
        } else {
            errors as f64 / n as f64
        },
    })
}

/// `-sum log2 p(x_i)` under the trie estimator, in bits.
pub fn sequential_code_length(x: &Sequence, alpha: f64) -> Result<f64> {
    check_binary(x)?;
    let mut state = PredictorState::new(alpha)?;
    let mut bits = 0.0;
    for &sym in x.symbols() {
        bits -= state.prob(sym).log2();
        state.update(sym);
    }
    Ok(bits)
}

/// Proportional betting at even odds: stake fraction `p(a)` of the capital on
/// each outcome `a`. Returns `log2` capital growth per symbol.
pub fn gamble_sequence(x: &Sequence, alpha: f64) -> Result<f64> {
    check_binary(x)?;
    if x.is_empty() {
        return Err(LzError::EmptySequence("gambling needs n >= 1"));
    }
    let mut state = PredictorState::new(alpha)?;
    let mut log_capital = 0.0;
    for &sym in x.symbols() {
        let stake = state.prob(sym);
        log_capital += (2.0 * stake).log2();
        state.update(sym);
    }
    Ok(log_capital / x.len() as f64)
}
