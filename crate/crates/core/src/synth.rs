//! Seeded binary sources used by experiments, tests and the CLI.
//!
//! All randomness in the crate flows through ChaCha8 seeded from a `u64`,
//! so results are reproducible across platforms and releases of `rand`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::sequence::{Alphabet, Sequence};

pub type DetRng = ChaCha8Rng;

pub fn rng(seed: u64) -> DetRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Seed for the `index`-th sub-run of a run seeded with `master` (splitmix64).
pub fn derive_seed(master: u64, index: u64) -> u64 {
    let mut z = master.wrapping_add(index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn binary(symbols: Vec<u32>) -> Sequence {
    Sequence::new(Alphabet::binary(), symbols).expect("binary symbols")
}

pub fn constant(n: usize, symbol: u32) -> Sequence {
    binary(vec![symbol; n])
}

/// `0101...`
pub fn alternating(n: usize) -> Sequence {
    binary((0..n).map(|i| (i % 2) as u32).collect())
}

/// i.i.d. symbols with `P(1) = p`.
pub fn bernoulli(n: usize, p: f64, seed: u64) -> Sequence {
    let mut rng = rng(seed);
    binary((0..n).map(|_| u32::from(rng.gen_bool(p))).collect())
}

pub fn fair_coin(n: usize, seed: u64) -> Sequence {
    bernoulli(n, 0.5, seed)
}

/// Uniform symbols over an alphabet of the given size.
pub fn uniform(n: usize, alphabet: Alphabet, seed: u64) -> Sequence {
    let mut rng = rng(seed);
    let size = alphabet.size();
    let symbols = (0..n).map(|_| rng.gen_range(0..size)).collect();
    Sequence::new(alphabet, symbols).expect("symbols drawn in range")
}

/// Symmetric binary first-order chain: uniform start, flips with probability `p_flip`.
pub fn flip_chain(n: usize, p_flip: f64, seed: u64) -> Sequence {
    markov_chain(n, &[p_flip, 1.0 - p_flip], seed)
}

/// Binary Markov chain of order `k = log2(kernel.len())`.
///
/// `kernel[z]` is `P(x_i = 1)` given the context `z = sum_j x_{i-j} 2^{j-1}`
/// (most recent symbol in the low bit). The first `k` symbols are uniform.
pub fn markov_chain(n: usize, kernel: &[f64], seed: u64) -> Sequence {
    assert!(kernel.len().is_power_of_two(), "kernel needs 2^k rows");
    let order = kernel.len().trailing_zeros() as usize;
    let mask = kernel.len() - 1;
    let mut rng = rng(seed);
    let mut ctx = 0usize;
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let p = if i < order { 0.5 } else { kernel[ctx] };
        let s = usize::from(rng.gen_bool(p));
        out.push(s as u32);
        ctx = ((ctx << 1) | s) & mask;
    }
    binary(out)
}

/// Binary entropy in bits.
pub fn h2(p: f64) -> f64 {
    if p <= 0.0 || p >= 1.0 {
        0.0
    } else {
        -p * p.log2() - (1.0 - p) * (1.0 - p).log2()
    }
}
