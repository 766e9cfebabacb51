//! Bit-exact LZ78 coder.
//!
//! Token `t` (1-based, one per complete phrase) is the prefix phrase id in
//! `ceil(log2 t)` bits followed by the new symbol in `ceil(log2 |A|)` bits.
//! An incomplete final phrase is written as its phrase id alone, in
//! `ceil(log2 c)` bits; the decoder recognises it because the phrase exactly
//! fills the `n` symbols announced in the header.
//!
//! File layout:
//!
//! | bytes | field                          |
//! |-------|--------------------------------|
//! | 4     | magic `LZ78`                   |
//! | 1     | format version (1)             |
//! | 4     | `n`, big-endian                |
//! | 2     | alphabet size, big-endian      |
//! | ...   | payload, MSB-first, zero-padded |

mod bits;
mod otp;

pub use bits::{BitReader, BitWriter};
pub use otp::{decrypt_bit_len, otp_apply, KeyStream};

use crate::error::{LzError, Result};
use crate::parsing::parse_symbols;
use crate::sequence::{ceil_log2, Alphabet, Sequence};

pub const MAGIC: &[u8; 4] = b"LZ78";
pub const FORMAT_VERSION: u8 = 1;
pub const HEADER_LEN: usize = 11;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitStream {
    pub version: u8,
    pub n: u32,
    pub alphabet_size: u32,
    pub payload: Vec<u8>,
    /// Meaningful payload bits. Streams read from disk start with the padded
    /// length; [`BitStream::resolve_bit_len`] narrows it by decoding.
    pub bit_len: usize,
}

impl BitStream {
    pub fn to_bytes(&self) -> Result<Vec<u8>> {
        let size = u16::try_from(self.alphabet_size).map_err(|_| {
            LzError::InvalidParameter(format!(
                "alphabet size {} does not fit the 16-bit header field",
                self.alphabet_size
            ))
        })?;
        let mut out = Vec::with_capacity(HEADER_LEN + self.payload.len());
        out.extend_from_slice(MAGIC);
        out.push(self.version);
        out.extend_from_slice(&self.n.to_be_bytes());
        out.extend_from_slice(&size.to_be_bytes());
        out.extend_from_slice(&self.payload);
        Ok(out)
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        if bytes.len() < HEADER_LEN {
            return Err(LzError::MalformedStream(format!(
                "{} bytes is shorter than the {HEADER_LEN}-byte header",
                bytes.len()
            )));
        }
        if &bytes[..4] != MAGIC {
            return Err(LzError::MalformedStream("bad magic".into()));
        }
        let version = bytes[4];
        if version != FORMAT_VERSION {
            return Err(LzError::MalformedStream(format!(
                "unsupported version {version}"
            )));
        }
        let n = u32::from_be_bytes(bytes[5..9].try_into().unwrap());
        let alphabet_size = u32::from(u16::from_be_bytes(bytes[9..11].try_into().unwrap()));
        if alphabet_size == 0 {
            return Err(LzError::MalformedStream("alphabet size 0".into()));
        }
        let payload = bytes[HEADER_LEN..].to_vec();
        Ok(Self {
            version,
            n,
            alphabet_size,
            bit_len: payload.len() * 8,
            payload,
        })
    }

    /// Set `bit_len` to the number of bits the decoder actually consumes.
    pub fn resolve_bit_len(&mut self) -> Result<usize> {
        let (_, used) = decode_payload(&self.payload, self.n, self.alphabet_size, true)?;
        self.bit_len = used;
        Ok(used)
    }
}

/// Encode `x`. The payload length always equals [`code_length`].
pub fn lz78_encode(x: &Sequence) -> BitStream {
    let symbols = x.symbols();
    let (parse, _) = parse_symbols(symbols);
    let sym_bits = x.alphabet().symbol_bits();
    let mut w = BitWriter::new();
    let complete = parse.complete_phrases();
    for t in 1..=complete {
        let (_, end) = parse.boundaries[t - 1];
        w.write(u64::from(parse.prefix_links[t - 1]), ceil_log2(t as u64));
        w.write(u64::from(symbols[end - 1]), sym_bits);
    }
    if parse.last_incomplete {
        let c = parse.c();
        w.write(u64::from(parse.phrase_ids[c - 1]), ceil_log2(c as u64));
    }
    let (payload, bit_len) = w.finish();
    BitStream {
        version: FORMAT_VERSION,
        n: x.len() as u32,
        alphabet_size: x.alphabet().size(),
        payload,
        bit_len,
    }
}

/// Exact inverse of [`lz78_encode`].
pub fn lz78_decode(b: &BitStream, alphabet: &Alphabet) -> Result<Sequence> {
    if b.alphabet_size != alphabet.size() {
        return Err(LzError::AlphabetMismatch {
            left: b.alphabet_size,
            right: alphabet.size(),
        });
    }
    let (symbols, _) = decode_payload(&b.payload, b.n, b.alphabet_size, true)?;
    Sequence::new(alphabet.clone(), symbols)
}

/// Payload bit length of `lz78_encode(x)` in closed form.
pub fn code_length(x: &Sequence) -> u64 {
    let (parse, _) = parse_symbols(x.symbols());
    let sym_bits = u64::from(x.alphabet().symbol_bits());
    let complete = parse.complete_phrases() as u64;
    let mut bits: u64 = (1..=complete)
        .map(|t| u64::from(ceil_log2(t)) + sym_bits)
        .sum();
    if parse.last_incomplete {
        bits += u64::from(ceil_log2(parse.c() as u64));
    }
    bits
}

/// Decode tokens until `n` symbols are out; returns the symbols and the
/// payload bits consumed. `strict` rejects anything after the last token
/// other than zero padding up to the next byte boundary.
pub(crate) fn decode_payload(
    payload: &[u8],
    n: u32,
    alphabet_size: u32,
    strict: bool,
) -> Result<(Vec<u32>, usize)> {
    let n = n as usize;
    let sym_bits = ceil_log2(u64::from(alphabet_size));
    let mut r = BitReader::new(payload);
    let mut out: Vec<u32> = Vec::with_capacity(n);
    // (start, len) of each phrase inside `out`; entry 0 is the empty phrase
    let mut phrases: Vec<(usize, usize)> = vec![(0, 0)];
    let mut t: u64 = 1;
    while out.len() < n {
        let width = ceil_log2(t);
        let id = r.read(width).ok_or_else(|| LzError::TruncatedPayload {
            token: t,
            needed: width as usize - r.remaining(),
        })?;
        if id >= t {
            return Err(LzError::PhraseIdOutOfRange { token: t, id });
        }
        let (start, len) = phrases[id as usize];
        let remaining = n - out.len();
        if len > remaining {
            return Err(LzError::MalformedStream(format!(
                "phrase {id} of length {len} overruns the {remaining} remaining symbols at token {t}"
            )));
        }
        let here = out.len();
        out.extend_from_within(start..start + len);
        if len == remaining && id != 0 {
            // index-only final token
            break;
        }
        let sym = r.read(sym_bits).ok_or_else(|| LzError::TruncatedPayload {
            token: t,
            needed: sym_bits as usize - r.remaining(),
        })? as u32;
        if sym >= alphabet_size {
            return Err(LzError::MalformedStream(format!(
                "symbol {sym} at token {t} outside alphabet of size {alphabet_size}"
            )));
        }
        out.push(sym);
        phrases.push((here, len + 1));
        t += 1;
    }
    let used = r.position();
    if strict {
        let expected_bytes = used.div_ceil(8);
        if payload.len() != expected_bytes {
            return Err(LzError::TrailingGarbage(format!(
                "{} payload bytes, {} expected",
                payload.len(),
                expected_bytes
            )));
        }
        if (used..payload.len() * 8).any(|i| bits::get_bit(payload, i)) {
            return Err(LzError::TrailingGarbage("nonzero padding bits".into()));
        }
    }
    Ok((out, used))
}
