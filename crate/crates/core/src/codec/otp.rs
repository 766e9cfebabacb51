use rand::RngCore;

use crate::error::{LzError, Result};
use crate::synth::{self, DetRng};

use super::bits::{get_bit, BitWriter};
use super::{decode_payload, BitStream};

#[derive(Debug, Clone)]
enum Source {
    /// MSB-first bits of a key buffer.
    Bits { bytes: Vec<u8>, len: usize },
    /// Unbounded ChaCha8 stream.
    Seeded(Box<DetRng>),
}

/// Supply of one-time-pad key bits with a running consumption count.
#[derive(Debug, Clone)]
pub struct KeyStream {
    source: Source,
    consumed: usize,
    word: u64,
    word_left: u32,
}

impl KeyStream {
    pub fn from_bytes(bytes: Vec<u8>) -> Self {
        let len = bytes.len() * 8;
        Self::from_source(Source::Bits { bytes, len })
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        let mut w = BitWriter::new();
        bits.iter().for_each(|&b| w.push_bit(b));
        let (bytes, len) = w.finish();
        Self::from_source(Source::Bits { bytes, len })
    }

    pub fn seeded(seed: u64) -> Self {
        Self::from_source(Source::Seeded(Box::new(synth::rng(seed))))
    }

    fn from_source(source: Source) -> Self {
        Self {
            source,
            consumed: 0,
            word: 0,
            word_left: 0,
        }
    }

    pub fn consumed(&self) -> usize {
        self.consumed
    }

    /// Bits still available; `None` for an unbounded stream.
    pub fn available(&self) -> Option<usize> {
        match &self.source {
            Source::Bits { len, .. } => Some(len - self.consumed),
            Source::Seeded(_) => None,
        }
    }

    fn next_bit(&mut self) -> bool {
        let bit = match &mut self.source {
            Source::Bits { bytes, .. } => get_bit(bytes, self.consumed),
            Source::Seeded(rng) => {
                if self.word_left == 0 {
                    self.word = rng.next_u64();
                    self.word_left = 64;
                }
                self.word_left -= 1;
                (self.word >> self.word_left) & 1 == 1
            }
        };
        self.consumed += 1;
        bit
    }

    /// Take the next `k` bits, or fail without consuming anything.
    pub fn take(&mut self, k: usize) -> Result<Vec<bool>> {
        if let Some(available) = self.available() {
            if available < k {
                return Err(LzError::KeyExhausted {
                    needed: k,
                    available,
                });
            }
        }
        Ok((0..k).map(|_| self.next_bit()).collect())
    }
}

/// XOR the first `b.bit_len` payload bits with fresh key bits. Applying it
/// twice with the same key stream state restores the input.
pub fn otp_apply(b: &BitStream, key: &mut KeyStream) -> Result<BitStream> {
    let pad = key.take(b.bit_len)?;
    let mut payload = b.payload.clone();
    for (i, k) in pad.into_iter().enumerate() {
        if k {
            payload[i / 8] ^= 0x80 >> (i % 8);
        }
    }
    Ok(BitStream {
        payload,
        ..b.clone()
    })
}

/// Payload bit length of an encrypted stream, found by decoding it under
/// `key` without consuming from the caller's key.
pub fn decrypt_bit_len(cipher: &BitStream, key: &KeyStream) -> Result<usize> {
    let mut probe = key.clone();
    let total = cipher.payload.len() * 8;
    let usable = probe.available().map_or(total, |a| a.min(total));
    let pad = probe.take(usable)?;
    let mut plain = cipher.payload.clone();
    for (i, k) in pad.into_iter().enumerate() {
        if k {
            plain[i / 8] ^= 0x80 >> (i % 8);
        }
    }
    let (_, used) = decode_payload(&plain, cipher.n, cipher.alphabet_size, false)?;
    if used > usable {
        return Err(LzError::KeyExhausted {
            needed: used,
            available: usable,
        });
    }
    Ok(used)
}
