//! Exhaustive universal rate-distortion ensemble for tiny block lengths.
//!
//! Every sequence `s` of length `n` gets weight `2^{-c(s) log2 c(s)}`; the
//! universal distribution is the normalised weight. `rho(x, D)` is
//! `-log2 P_univ(B(x, D)) / n` for the distortion ball `B(x, D)`.

use rayon::prelude::*;

use crate::error::{LzError, Result};
use crate::parsing::{phrase_count, xlog2x};
use crate::sequence::{Alphabet, Sequence};

/// Default cap on the number of enumerated sequences.
pub const DEFAULT_LIMIT: u64 = 1 << 20;

/// Compensated (Neumaier) running sum.
#[derive(Debug, Clone, Copy, Default)]
pub struct NeumaierSum {
    sum: f64,
    carry: f64,
}

impl NeumaierSum {
    pub fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.carry += (self.sum - t) + v;
        } else {
            self.carry += (v - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

#[derive(Debug, Clone)]
pub struct UniversalDistribution {
    n: usize,
    alphabet: Alphabet,
    /// `c log2 c` per sequence, indexed by rank.
    costs: Vec<f64>,
    weights: Vec<f64>,
    z: f64,
}

pub fn build_universal(n: usize, alphabet: &Alphabet) -> Result<UniversalDistribution> {
    build_universal_with_limit(n, alphabet, DEFAULT_LIMIT)
}

pub fn build_universal_with_limit(
    n: usize,
    alphabet: &Alphabet,
    limit: u64,
) -> Result<UniversalDistribution> {
    let count = u32::try_from(n)
        .ok()
        .and_then(|e| u64::from(alphabet.size()).checked_pow(e))
        .filter(|&c| c <= limit)
        .ok_or_else(|| LzError::Guardrail {
            what: "|A|^n",
            requested: u128::from(alphabet.size()).saturating_pow(n.min(128) as u32),
            limit: u128::from(limit),
        })?;
    let size = alphabet.size();
    let costs: Vec<f64> = (0..count)
        .into_par_iter()
        .map(|rank| xlog2x(phrase_count(&unrank(rank, n, size)) as u64))
        .collect();
    let weights: Vec<f64> = costs.iter().map(|c| (-c).exp2()).collect();
    let mut z = NeumaierSum::default();
    weights.iter().for_each(|&w| z.add(w));
    Ok(UniversalDistribution {
        n,
        alphabet: alphabet.clone(),
        costs,
        weights,
        z: z.value(),
    })
}

/// Digits of `rank` in base `size`, most significant first.
fn unrank(mut rank: u64, n: usize, size: u32) -> Vec<u32> {
    let mut out = vec![0u32; n];
    for slot in out.iter_mut().rev() {
        *slot = (rank % u64::from(size)) as u32;
        rank /= u64::from(size);
    }
    out
}

impl UniversalDistribution {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// Normaliser `Z`.
    pub fn z(&self) -> f64 {
        self.z
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn weight(&self, rank: usize) -> f64 {
        self.weights[rank]
    }

    pub fn probability(&self, rank: usize) -> f64 {
        self.weights[rank] / self.z
    }

    /// `c log2 c` of the sequence at `rank`.
    pub fn cost(&self, rank: usize) -> f64 {
        self.costs[rank]
    }

    pub fn sequence(&self, rank: usize) -> Sequence {
        Sequence::new(
            self.alphabet.clone(),
            unrank(rank as u64, self.n, self.alphabet.size()),
        )
        .expect("digits are in range")
    }

    pub fn rank(&self, x: &Sequence) -> Result<usize> {
        self.check(x)?;
        let size = u64::from(self.alphabet.size());
        Ok(x.symbols()
            .iter()
            .fold(0u64, |r, &s| r * size + u64::from(s)) as usize)
    }

    fn check(&self, x: &Sequence) -> Result<()> {
        if x.len() != self.n {
            return Err(LzError::LengthMismatch {
                left: x.len(),
                right: self.n,
            });
        }
        if !x.alphabet().compatible(&self.alphabet) {
            return Err(LzError::AlphabetMismatch {
                left: x.alphabet().size(),
                right: self.alphabet.size(),
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Distortion {
    /// Number of positions where the symbols differ.
    Hamming,
}

impl Distortion {
    pub fn from_name(name: &str) -> Result<Self> {
        match name {
            "hamming" => Ok(Self::Hamming),
            other => Err(LzError::InvalidParameter(format!(
                "unknown distortion {other:?}"
            ))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::Hamming => "hamming",
        }
    }

    /// Unnormalised distortion `d(x, y)` between equal-length strings.
    pub fn measure(&self, x: &[u32], y: &[u32]) -> f64 {
        match self {
            Self::Hamming => x.iter().zip(y).filter(|(a, b)| a != b).count() as f64,
        }
    }
}

/// `B(x, D) = { y : d(x, y) <= n D }`.
#[derive(Debug, Clone)]
pub struct DistortionBall {
    pub center: Sequence,
    pub radius: f64,
    pub distortion: Distortion,
}

impl DistortionBall {
    pub fn contains(&self, candidate: &[u32]) -> bool {
        let budget = self.center.len() as f64 * self.radius;
        // absorb rounding in n * D so that e.g. D = 1/8 at n = 8 admits distance 1
        self.distortion.measure(self.center.symbols(), candidate) <= budget + 1e-9
    }
}

/// Ranks of the ball members, ascending.
pub fn ball_members(ball: &DistortionBall, dist: &UniversalDistribution) -> Result<Vec<usize>> {
    dist.check(&ball.center)?;
    let size = dist.alphabet.size();
    Ok((0..dist.len())
        .filter(|&r| ball.contains(&unrank(r as u64, dist.n, size)))
        .collect())
}

/// `rho(x, D) = -log2 P_univ(B(x, D)) / n`, exact by enumeration.
pub fn rd_point(x: &Sequence, d: f64, dist: &UniversalDistribution) -> Result<f64> {
    rd_point_with(x, d, Distortion::Hamming, dist)
}

pub fn rd_point_with(
    x: &Sequence,
    d: f64,
    distortion: Distortion,
    dist: &UniversalDistribution,
) -> Result<f64> {
    dist.check(x)?;
    if x.is_empty() {
        return Err(LzError::EmptySequence("rate-distortion center"));
    }
    if !(0.0..=1.0).contains(&d) {
        return Err(LzError::InvalidParameter(format!(
            "D = {d} must lie in [0, 1]"
        )));
    }
    let ball = DistortionBall {
        center: x.clone(),
        radius: d,
        distortion,
    };
    let members = ball_members(&ball, dist)?;
    // same summation order as Z, so the full ball has mass exactly 1
    let mut mass = NeumaierSum::default();
    members.iter().for_each(|&r| mass.add(dist.weights[r]));
    let p = mass.value() / dist.z;
    Ok(if p >= 1.0 {
        0.0
    } else {
        -p.log2() / x.len() as f64
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bin(s: &str) -> Sequence {
        Sequence::from_binary_str(s).unwrap()
    }

    #[test]
    fn n1_and_n2() {
        let d1 = build_universal(1, &Alphabet::binary()).unwrap();
        assert_eq!(d1.z(), 2.0);
        assert_eq!(d1.probability(0), 0.5);
        let d2 = build_universal(2, &Alphabet::binary()).unwrap();
        assert_eq!(d2.z(), 1.0);
        for r in 0..4 {
            assert_eq!(d2.weight(r), 0.25);
        }
    }

    #[test]
    fn rank_roundtrip() {
        let d = build_universal(5, &Alphabet::new(3).unwrap()).unwrap();
        for r in [0usize, 1, 77, 242] {
            assert_eq!(d.rank(&d.sequence(r)).unwrap(), r);
        }
        assert_eq!(
            d.rank(&Sequence::new(Alphabet::new(3).unwrap(), vec![0, 0, 0, 1, 2]).unwrap())
                .unwrap(),
            5
        );
    }

    #[test]
    fn guardrail() {
        let err = build_universal(21, &Alphabet::binary()).unwrap_err();
        assert!(err.is_guardrail());
        assert!(build_universal_with_limit(3, &Alphabet::binary(), 7).is_err());
        assert!(build_universal_with_limit(3, &Alphabet::binary(), 8).is_ok());
    }

    #[test]
    fn weight_ordering_at_n8() {
        let d = build_universal(8, &Alphabet::binary()).unwrap();
        let a = d.rank(&bin("00000000")).unwrap();
        let b = d.rank(&bin("01101000")).unwrap();
        assert_eq!(d.cost(a), 8.0);
        assert!(d.probability(a) > d.probability(b));
    }

    #[test]
    fn ball_of_radius_one_eighth() {
        let d = build_universal(8, &Alphabet::binary()).unwrap();
        let x = bin("00000000");
        let ball = DistortionBall {
            center: x.clone(),
            radius: 0.125,
            distortion: Distortion::Hamming,
        };
        assert_eq!(ball_members(&ball, &d).unwrap().len(), 9);
        let r0 = rd_point(&x, 0.0, &d).unwrap();
        let r1 = rd_point(&x, 0.125, &d).unwrap();
        assert!(r1 < r0);
        let want = (8.0 + d.z().log2()) / 8.0;
        assert!((r0 - want).abs() < 1e-12);
        assert_eq!(rd_point(&x, 1.0, &d).unwrap(), 0.0);
    }

    #[test]
    fn errors() {
        let d = build_universal(4, &Alphabet::binary()).unwrap();
        assert!(rd_point(&bin("000"), 0.5, &d).is_err());
        assert!(rd_point(&bin("0000"), 1.5, &d).is_err());
        assert!(Distortion::from_name("l2").is_err());
    }

    #[test]
    fn neumaier_beats_naive() {
        let mut s = NeumaierSum::default();
        for v in [1.0, 1e100, 1.0, -1e100] {
            s.add(v);
        }
        assert_eq!(s.value(), 2.0);
    }
}
