//! Plug-in empirical entropies, LZ-based hypothesis tests and Markov order
//! estimation.
//!
//! The tests compare `rho_LZ` against a threshold:
//! * fair coin: accept H0 iff `rho_LZ(x) >= 1 - lambda`;
//! * memoryless: accept H0 iff `H_0(x) - rho_LZ(x) <= lambda`;
//! * order: the smallest `k` with `H_k(x) - rho_LZ(x) <= lambda`.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::error::{LzError, Result};
use crate::parsing::lz_complexity;
use crate::sequence::Sequence;

/// Counts `n(a, z)` of symbol `a` following the `k`-symbol context `z`.
/// Positions `1..=k` have no full context and are not counted.
#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalModel {
    pub order: usize,
    /// Context (oldest symbol first) to per-symbol counts.
    pub context_counts: BTreeMap<Vec<u32>, Vec<u64>>,
    pub total_positions: u64,
}

impl EmpiricalModel {
    pub fn fit(x: &Sequence, k: usize) -> Result<Self> {
        let n = x.len();
        if k >= n {
            return Err(LzError::InvalidParameter(format!(
                "order k = {k} needs k < n = {n}"
            )));
        }
        let size = x.alphabet().size() as usize;
        let s = x.symbols();
        let mut counts: HashMap<&[u32], Vec<u64>> = HashMap::new();
        for i in k..n {
            counts.entry(&s[i - k..i]).or_insert_with(|| vec![0; size])[s[i] as usize] += 1;
        }
        Ok(Self {
            order: k,
            context_counts: counts.into_iter().map(|(z, c)| (z.to_vec(), c)).collect(),
            total_positions: (n - k) as u64,
        })
    }

    /// Conditional plug-in entropy in bits per symbol.
    pub fn entropy(&self) -> f64 {
        let total = self.total_positions as f64;
        let mut h = 0.0;
        for row in self.context_counts.values() {
            let ctx: u64 = row.iter().sum();
            let ctx = ctx as f64;
            for &c in row.iter().filter(|&&c| c > 0) {
                let c = c as f64;
                h -= (c / total) * (c / ctx).log2();
            }
        }
        h.max(0.0)
    }
}

/// `H_k(x)`: empirical entropy under a `k`-th order Markov model.
pub fn empirical_entropy(x: &Sequence, k: usize) -> Result<f64> {
    Ok(EmpiricalModel::fit(x, k)?.entropy())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Hypothesis {
    H0,
    H1,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TestVerdict {
    pub decision: Hypothesis,
    /// Bits per symbol.
    pub statistic: f64,
    pub threshold: f64,
}

fn check_lambda(lambda: f64) -> Result<()> {
    if lambda > 0.0 && lambda < 1.0 {
        Ok(())
    } else {
        Err(LzError::InvalidParameter(format!(
            "lambda = {lambda} must lie in (0, 1)"
        )))
    }
}

fn check_len(x: &Sequence) -> Result<()> {
    if x.len() < 2 {
        return Err(LzError::InvalidParameter(format!(
            "test needs n >= 2, got {}",
            x.len()
        )));
    }
    Ok(())
}

/// Is `x` a fair coin? H0 iff `rho_LZ(x) >= 1 - lambda`.
pub fn test_fair_coin(x: &Sequence, lambda: f64) -> Result<TestVerdict> {
    if x.alphabet().size() != 2 {
        return Err(LzError::InvalidParameter(format!(
            "fair-coin test needs a binary alphabet, got size {}",
            x.alphabet().size()
        )));
    }
    check_lambda(lambda)?;
    check_len(x)?;
    let rho = lz_complexity(x)?;
    Ok(TestVerdict {
        decision: if rho >= 1.0 - lambda {
            Hypothesis::H0
        } else {
            Hypothesis::H1
        },
        statistic: rho,
        threshold: lambda,
    })
}

/// Is `x` memoryless? H0 iff `H_0(x) - rho_LZ(x) <= lambda`.
pub fn test_memoryless(x: &Sequence, lambda: f64) -> Result<TestVerdict> {
    check_lambda(lambda)?;
    check_len(x)?;
    let gap = empirical_entropy(x, 0)? - lz_complexity(x)?;
    Ok(TestVerdict {
        decision: if gap <= lambda {
            Hypothesis::H0
        } else {
            Hypothesis::H1
        },
        statistic: gap,
        threshold: lambda,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrderEstimate {
    /// Smallest qualifying order, if any.
    pub order: Option<usize>,
    pub rho_lz: f64,
    /// `H_k(x)` for every `k` examined, starting at 0.
    pub entropies: Vec<f64>,
}

/// Smallest `k <= k_max` with `H_k(x) - rho_LZ(x) <= lambda`.
pub fn estimate_markov_order(x: &Sequence, lambda: f64, k_max: usize) -> Result<Option<usize>> {
    Ok(markov_order_profile(x, lambda, k_max)?.order)
}

/// [`estimate_markov_order`] with the statistics it looked at.
pub fn markov_order_profile(x: &Sequence, lambda: f64, k_max: usize) -> Result<OrderEstimate> {
    check_lambda(lambda)?;
    if k_max >= x.len() {
        return Err(LzError::InvalidParameter(format!(
            "k_max = {k_max} needs k_max < n = {}",
            x.len()
        )));
    }
    let rho = lz_complexity(x)?;
    let mut entropies = Vec::new();
    for k in 0..=k_max {
        let h = empirical_entropy(x, k)?;
        entropies.push(h);
        if h - rho <= lambda {
            return Ok(OrderEstimate {
                order: Some(k),
                rho_lz: rho,
                entropies,
            });
        }
    }
    Ok(OrderEstimate {
        order: None,
        rho_lz: rho,
        entropies,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::synth;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn constant_is_zero_entropy() {
        let x = synth::constant(100, 1);
        for k in 0..5 {
            assert_eq!(empirical_entropy(&x, k).unwrap(), 0.0);
        }
    }

    #[test]
    fn alternating() {
        let x = synth::alternating(1000);
        assert_eq!(empirical_entropy(&x, 0).unwrap(), 1.0);
        assert_eq!(empirical_entropy(&x, 1).unwrap(), 0.0);
    }

    #[test]
    fn counts_exclude_startup() {
        let x = Sequence::from_binary_str("0001").unwrap();
        let m = EmpiricalModel::fit(&x, 1).unwrap();
        assert_eq!(m.total_positions, 3);
        assert_eq!(m.context_counts[&vec![0]], vec![2, 1]);
        // positions without context are dropped, so a higher order can
        // exceed a lower one on short inputs
        assert!(m.entropy() > empirical_entropy(&x, 0).unwrap());
    }

    #[test]
    fn k_must_be_below_n() {
        let x = synth::alternating(4);
        assert!(empirical_entropy(&x, 4).is_err());
        assert!(estimate_markov_order(&x, 0.1, 4).is_err());
    }

    #[test]
    fn bernoulli_plug_in() {
        let x = synth::bernoulli(1 << 16, 0.2, 11);
        let ones = x.symbols().iter().filter(|&&s| s == 1).count() as f64;
        let direct = synth::h2(ones / x.len() as f64);
        let h = empirical_entropy(&x, 0).unwrap();
        assert!(close(h, direct, 1e-12));
        assert!(close(h, synth::h2(0.2), 0.02));
    }

    #[test]
    fn fair_coin_decisions() {
        let alt = synth::alternating(4096);
        assert_eq!(test_fair_coin(&alt, 0.1).unwrap().decision, Hypothesis::H1);
        let coin = synth::fair_coin(1 << 16, 5);
        assert_eq!(test_fair_coin(&coin, 0.1).unwrap().decision, Hypothesis::H0);
        // lambda = 0.999 accepts anything with c >= 2
        let x = Sequence::from_binary_str("0000000001").unwrap();
        assert_eq!(test_fair_coin(&x, 0.999).unwrap().decision, Hypothesis::H0);
    }

    #[test]
    fn fair_coin_rejects_bad_input() {
        let ternary = Sequence::new(crate::Alphabet::new(3).unwrap(), vec![0, 1, 2]).unwrap();
        assert!(test_fair_coin(&ternary, 0.1).is_err());
        let x = synth::alternating(10);
        assert!(test_fair_coin(&x, 0.0).is_err());
        assert!(test_fair_coin(&x, 1.0).is_err());
        assert!(test_memoryless(&x, 1.5).is_err());
        assert!(test_fair_coin(&synth::alternating(1), 0.1).is_err());
    }

    #[test]
    fn memoryless_decisions() {
        let iid = synth::bernoulli(1 << 16, 0.3, 21);
        assert_eq!(test_memoryless(&iid, 0.1).unwrap().decision, Hypothesis::H0);
        let sticky = synth::flip_chain(1 << 16, 0.05, 22);
        assert_eq!(
            test_memoryless(&sticky, 0.1).unwrap().decision,
            Hypothesis::H1
        );
        let constant = synth::constant(500, 0);
        assert_eq!(
            test_memoryless(&constant, 0.1).unwrap().decision,
            Hypothesis::H0
        );
    }

    #[test]
    fn order_of_constant() {
        let x = synth::constant(1000, 0);
        assert_eq!(estimate_markov_order(&x, 0.1, 5).unwrap(), Some(0));
    }

    #[test]
    fn tiny_lambda_contract() {
        let x = synth::fair_coin(64, 8);
        let p = markov_order_profile(&x, 1e-6, 3).unwrap();
        if let Some(k) = p.order {
            assert!(p.entropies[k] - p.rho_lz <= 1e-6);
        }
        for (k, h) in p.entropies.iter().enumerate().take(p.order.unwrap_or(4)) {
            assert!(h - p.rho_lz > 1e-6, "k = {k} should not qualify");
        }
    }
}
