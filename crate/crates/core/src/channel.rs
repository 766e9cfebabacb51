//! Unifilar finite-state channels and random-coding experiments comparing
//! maximum-likelihood decoding with Ziv's universal decoder.
//!
//! A channel in state `z` receiving `x` emits `y ~ P(.|x, z)` and moves to
//! `q(x, y, z)`. The universal decoder never sees the channel: it picks the
//! codeword minimising `u(x|y)` from the joint parse.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{LzError, Result};
use crate::parsing::conditional_metric;
use crate::sequence::{Alphabet, Sequence};
use crate::synth::{self, DetRng};

/// Rows may deviate from 1 by this much before renormalisation.
pub const ROW_TOLERANCE: f64 = 1e-9;

/// Default cap on `M * n` codebook symbols per trial.
pub const DEFAULT_BUDGET: u64 = 1 << 24;

/// Declarative channel description; the CLI reads it from TOML.
///
/// `next_state[z][x][y]` is `q(x, y, z)` and `emission[z][x][y]` is `P(y|x, z)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChannelSpec {
    pub states: usize,
    pub inputs: u32,
    pub outputs: u32,
    #[serde(default)]
    pub initial_state: usize,
    pub next_state: Vec<Vec<Vec<usize>>>,
    pub emission: Vec<Vec<Vec<f64>>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FsChannel {
    states: usize,
    inputs: u32,
    outputs: u32,
    initial_state: usize,
    // both indexed by (z * inputs + x) * outputs + y
    next: Vec<usize>,
    prob: Vec<f64>,
}

impl FsChannel {
    pub fn from_spec(spec: &ChannelSpec) -> Result<Self> {
        let bad = |msg: String| Err(LzError::InvalidChannel(msg));
        if spec.states == 0 || spec.inputs == 0 || spec.outputs == 0 {
            return bad("states, inputs and outputs must all be positive".into());
        }
        if spec.initial_state >= spec.states {
            return bad(format!(
                "initial state {} out of range 0..{}",
                spec.initial_state, spec.states
            ));
        }
        let (xs, ys) = (spec.inputs as usize, spec.outputs as usize);
        let shaped = |t: &[Vec<Vec<usize>>]| {
            t.len() == spec.states
                && t.iter()
                    .all(|r| r.len() == xs && r.iter().all(|c| c.len() == ys))
        };
        if !shaped(&spec.next_state) {
            return bad(format!(
                "next_state must have shape [{}][{xs}][{ys}]",
                spec.states
            ));
        }
        let shaped = spec.emission.len() == spec.states
            && spec
                .emission
                .iter()
                .all(|r| r.len() == xs && r.iter().all(|c| c.len() == ys));
        if !shaped {
            return bad(format!(
                "emission must have shape [{}][{xs}][{ys}]",
                spec.states
            ));
        }
        let mut next = Vec::with_capacity(spec.states * xs * ys);
        let mut prob = Vec::with_capacity(spec.states * xs * ys);
        for z in 0..spec.states {
            for x in 0..xs {
                let row = &spec.emission[z][x];
                if row.iter().any(|p| !p.is_finite() || *p < 0.0) {
                    return bad(format!(
                        "emission row (state {z}, input {x}) has a negative or non-finite entry"
                    ));
                }
                let sum: f64 = row.iter().sum();
                if (sum - 1.0).abs() > ROW_TOLERANCE {
                    return bad(format!("emission row (state {z}, input {x}) sums to {sum}"));
                }
                prob.extend(row.iter().map(|p| p / sum));
                for y in 0..ys {
                    let to = spec.next_state[z][x][y];
                    if to >= spec.states {
                        return bad(format!("next_state[{z}][{x}][{y}] = {to} out of range"));
                    }
                    next.push(to);
                }
            }
        }
        Ok(Self {
            states: spec.states,
            inputs: spec.inputs,
            outputs: spec.outputs,
            initial_state: spec.initial_state,
            next,
            prob,
        })
    }

    /// Binary symmetric channel with crossover `p`, as a one-state channel.
    pub fn bsc(p: f64) -> Result<Self> {
        Self::from_spec(&ChannelSpec {
            states: 1,
            inputs: 2,
            outputs: 2,
            initial_state: 0,
            next_state: vec![vec![vec![0, 0], vec![0, 0]]],
            emission: vec![vec![vec![1.0 - p, p], vec![p, 1.0 - p]]],
        })
    }

    /// `y = x` over an alphabet of the given size.
    pub fn noiseless(size: u32) -> Result<Self> {
        let s = size as usize;
        let eye = (0..s)
            .map(|x| (0..s).map(|y| f64::from(u8::from(x == y))).collect())
            .collect();
        Self::from_spec(&ChannelSpec {
            states: 1,
            inputs: size,
            outputs: size,
            initial_state: 0,
            next_state: vec![vec![vec![0; s]; s]],
            emission: vec![eye],
        })
    }

    pub fn states(&self) -> usize {
        self.states
    }

    pub fn inputs(&self) -> u32 {
        self.inputs
    }

    pub fn outputs(&self) -> u32 {
        self.outputs
    }

    pub fn initial_state(&self) -> usize {
        self.initial_state
    }

    fn slot(&self, z: usize, x: u32, y: u32) -> usize {
        (z * self.inputs as usize + x as usize) * self.outputs as usize + y as usize
    }

    /// `P(y|x, z)`.
    pub fn prob(&self, z: usize, x: u32, y: u32) -> f64 {
        self.prob[self.slot(z, x, y)]
    }

    /// `q(x, y, z)`.
    pub fn next_state(&self, z: usize, x: u32, y: u32) -> usize {
        self.next[self.slot(z, x, y)]
    }

    pub fn output_alphabet(&self) -> Alphabet {
        if self.outputs == 2 {
            Alphabet::binary()
        } else {
            Alphabet::new(self.outputs).expect("outputs > 0")
        }
    }

    fn check_input(&self, x: &Sequence) -> Result<()> {
        if x.alphabet().size() != self.inputs {
            return Err(LzError::AlphabetMismatch {
                left: x.alphabet().size(),
                right: self.inputs,
            });
        }
        Ok(())
    }

    fn sample(&self, x: &[u32], rng: &mut DetRng) -> Vec<u32> {
        let mut z = self.initial_state;
        let mut y = Vec::with_capacity(x.len());
        for &xi in x {
            let base = self.slot(z, xi, 0);
            let row = &self.prob[base..base + self.outputs as usize];
            let u: f64 = rng.gen();
            let mut acc = 0.0;
            let mut out = self.outputs - 1;
            for (j, &p) in row.iter().enumerate() {
                acc += p;
                if u < acc {
                    out = j as u32;
                    break;
                }
            }
            // never emit a zero-probability symbol from rounding in `acc`
            if row[out as usize] == 0.0 {
                out = row.iter().rposition(|&p| p > 0.0).unwrap() as u32;
            }
            y.push(out);
            z = self.next[base + out as usize];
        }
        y
    }
}

/// Pass `x` through the channel.
pub fn transmit(ch: &FsChannel, x: &Sequence, seed: u64) -> Result<Sequence> {
    ch.check_input(x)?;
    let y = ch.sample(x.symbols(), &mut synth::rng(seed));
    Sequence::new(ch.output_alphabet(), y)
}

/// `log2 P(y|x)` with the state driven by `q`; `-inf` for impossible pairs.
///
/// Terms are grouped by transition probability before summation, so pairs
/// with the same count per probability value get bit-identical likelihoods.
pub fn log_likelihood(ch: &FsChannel, x: &Sequence, y: &Sequence) -> Result<f64> {
    if x.len() != y.len() {
        return Err(LzError::LengthMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    ch.check_input(x)?;
    if y.alphabet().size() != ch.outputs {
        return Err(LzError::AlphabetMismatch {
            left: y.alphabet().size(),
            right: ch.outputs,
        });
    }
    Ok(log_likelihood_raw(ch, x.symbols(), y.symbols()))
}

fn log_likelihood_raw(ch: &FsChannel, x: &[u32], y: &[u32]) -> f64 {
    let mut counts = vec![0u64; ch.prob.len()];
    let mut z = ch.initial_state;
    for (&xi, &yi) in x.iter().zip(y) {
        let s = ch.slot(z, xi, yi);
        counts[s] += 1;
        z = ch.next[s];
    }
    // merge slots that share a probability, summed in ascending order of p
    let mut by_prob: Vec<(f64, u64)> = Vec::new();
    for (s, &c) in counts.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let p = ch.prob[s];
        if p == 0.0 {
            return f64::NEG_INFINITY;
        }
        by_prob.push((p, c));
    }
    by_prob.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut total = 0.0;
    let mut i = 0;
    while i < by_prob.len() {
        let p = by_prob[i].0;
        let mut c = 0;
        while i < by_prob.len() && by_prob[i].0 == p {
            c += by_prob[i].1;
            i += 1;
        }
        total += c as f64 * p.log2();
    }
    total
}

#[derive(Debug, Clone, PartialEq)]
pub struct Codebook {
    codewords: Vec<Sequence>,
    seed: u64,
}

impl Codebook {
    pub fn new(codewords: Vec<Sequence>, seed: u64) -> Result<Self> {
        if codewords.len() < 2 {
            return Err(LzError::InvalidParameter(format!(
                "codebook needs M >= 2, got {}",
                codewords.len()
            )));
        }
        let n = codewords[0].len();
        for c in &codewords {
            if c.len() != n {
                return Err(LzError::LengthMismatch {
                    left: c.len(),
                    right: n,
                });
            }
            c.check_compatible(&codewords[0])?;
        }
        Ok(Self { codewords, seed })
    }

    /// `m` codewords of length `n`, i.i.d. uniform symbols.
    pub fn random(m: usize, n: usize, alphabet: &Alphabet, seed: u64) -> Result<Self> {
        let mut rng = synth::rng(seed);
        Self::new(Self::draw(m, n, alphabet, &mut rng), seed)
    }

    fn draw(m: usize, n: usize, alphabet: &Alphabet, rng: &mut DetRng) -> Vec<Sequence> {
        let size = alphabet.size();
        (0..m)
            .map(|_| {
                let s = (0..n).map(|_| rng.gen_range(0..size)).collect();
                Sequence::new(alphabet.clone(), s).expect("in range")
            })
            .collect()
    }

    pub fn codewords(&self) -> &[Sequence] {
        &self.codewords
    }

    pub fn len(&self) -> usize {
        self.codewords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codewords.is_empty()
    }

    pub fn block_length(&self) -> usize {
        self.codewords[0].len()
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }
}

fn check_received(book: &Codebook, y: &Sequence) -> Result<()> {
    if y.len() != book.block_length() {
        return Err(LzError::LengthMismatch {
            left: y.len(),
            right: book.block_length(),
        });
    }
    Ok(())
}

/// Index of the most likely codeword; ties go to the lowest index.
pub fn ml_decode(ch: &FsChannel, book: &Codebook, y: &Sequence) -> Result<usize> {
    check_received(book, y)?;
    let mut best = (0, f64::NEG_INFINITY);
    for (i, c) in book.codewords.iter().enumerate() {
        let ll = log_likelihood(ch, c, y)?;
        if ll > best.1 {
            best = (i, ll);
        }
    }
    Ok(best.0)
}

/// Index of the codeword with the smallest `u(x|y)`; ties go to the lowest index.
pub fn ziv_decode(book: &Codebook, y: &Sequence) -> Result<usize> {
    check_received(book, y)?;
    let mut best = (0, f64::INFINITY);
    for (i, c) in book.codewords.iter().enumerate() {
        let u = conditional_metric(c, y)?;
        if u < best.1 {
            best = (i, u);
        }
    }
    Ok(best.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ExperimentConfig {
    pub n: usize,
    pub m: u64,
    pub trials: usize,
    pub seed: u64,
    /// Largest allowed `M * n`.
    pub budget: u64,
}

impl ExperimentConfig {
    pub fn new(n: usize, m: u64, trials: usize, seed: u64) -> Self {
        Self {
            n,
            m,
            trials,
            seed,
            budget: DEFAULT_BUDGET,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.m < 2 {
            return Err(LzError::InvalidParameter(format!(
                "M = {} must be >= 2",
                self.m
            )));
        }
        if self.trials == 0 || self.n == 0 {
            return Err(LzError::InvalidParameter(
                "trials and n must be >= 1".into(),
            ));
        }
        let symbols = u128::from(self.m) * self.n as u128;
        if symbols > u128::from(self.budget) {
            return Err(LzError::Guardrail {
                what: "M * n",
                requested: symbols,
                limit: u128::from(self.budget),
            });
        }
        Ok(())
    }
}

/// One random-coding trial, fully determined by the master seed and index.
#[derive(Debug, Clone)]
pub struct TrialInstance {
    pub book: Codebook,
    pub message: usize,
    pub received: Sequence,
}

impl TrialInstance {
    pub fn generate(ch: &FsChannel, cfg: &ExperimentConfig, trial: u64) -> Result<Self> {
        cfg.validate()?;
        let seed = synth::derive_seed(cfg.seed, trial);
        let mut rng = synth::rng(seed);
        let alphabet = if ch.inputs == 2 {
            Alphabet::binary()
        } else {
            Alphabet::new(ch.inputs)?
        };
        let words = Codebook::draw(cfg.m as usize, cfg.n, &alphabet, &mut rng);
        let message = rng.gen_range(0..cfg.m as usize);
        let y = ch.sample(words[message].symbols(), &mut rng);
        Ok(Self {
            book: Codebook::new(words, seed)?,
            message,
            received: Sequence::new(ch.output_alphabet(), y)?,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TrialOutcome {
    pub message: usize,
    pub ml: usize,
    pub ziv: usize,
}

pub fn run_trial(ch: &FsChannel, cfg: &ExperimentConfig, trial: u64) -> Result<TrialOutcome> {
    let t = TrialInstance::generate(ch, cfg, trial)?;
    Ok(TrialOutcome {
        message: t.message,
        ml: ml_decode(ch, &t.book, &t.received)?,
        ziv: ziv_decode(&t.book, &t.received)?,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChannelSummary {
    pub states: usize,
    pub inputs: u32,
    pub outputs: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentReport {
    pub channel: ChannelSummary,
    pub n: usize,
    pub m: u64,
    pub rate: f64,
    pub trials: usize,
    pub master_seed: u64,
    pub ml_errors: usize,
    pub ziv_errors: usize,
    pub ml_error_rate: f64,
    pub ziv_error_rate: f64,
    /// Normal-approximation 95% radius `1.96 sqrt(p (1 - p) / trials)`.
    pub ml_ci95: f64,
    pub ziv_ci95: f64,
}

fn ci95(p: f64, trials: usize) -> f64 {
    1.96 * (p * (1.0 - p) / trials as f64).sqrt()
}

/// Run `cfg.trials` independent trials (in parallel) and tally decoding errors.
/// The report depends only on the channel and `cfg`.
pub fn run_experiment(ch: &FsChannel, cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    cfg.validate()?;
    let outcomes = (0..cfg.trials as u64)
        .into_par_iter()
        .map(|t| run_trial(ch, cfg, t))
        .collect::<Result<Vec<_>>>()?;
    let ml_errors = outcomes.iter().filter(|o| o.ml != o.message).count();
    let ziv_errors = outcomes.iter().filter(|o| o.ziv != o.message).count();
    let ml_rate = ml_errors as f64 / cfg.trials as f64;
    let ziv_rate = ziv_errors as f64 / cfg.trials as f64;
    Ok(ExperimentReport {
        channel: ChannelSummary {
            states: ch.states,
            inputs: ch.inputs,
            outputs: ch.outputs,
        },
        n: cfg.n,
        m: cfg.m,
        rate: (cfg.m as f64).log2() / cfg.n as f64,
        trials: cfg.trials,
        master_seed: cfg.seed,
        ml_errors,
        ziv_errors,
        ml_error_rate: ml_rate,
        ziv_error_rate: ziv_rate,
        ml_ci95: ci95(ml_rate, cfg.trials),
        ziv_ci95: ci95(ziv_rate, cfg.trials),
    })
}
