//! Finite alphabets and the symbol strings every algorithm in the crate consumes.

use std::sync::Arc;

use crate::error::{LzError, Result};

/// Longest sequence the crate accepts; phrase ids and positions fit in `u32`.
pub const MAX_LEN: usize = u32::MAX as usize;

/// A finite alphabet `{0, .., size-1}` with an optional byte rendering.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    size: u32,
    bytes: Option<Arc<[u8]>>,
}

impl Alphabet {
    pub fn new(size: u32) -> Result<Self> {
        if size == 0 {
            return Err(LzError::InvalidAlphabet("size must be at least 1".into()));
        }
        Ok(Self { size, bytes: None })
    }

    pub fn binary() -> Self {
        Self {
            size: 2,
            bytes: Some(Arc::from(&b"01"[..])),
        }
    }

    /// All 256 byte values, symbol `i` rendered as byte `i`.
    pub fn full_bytes() -> Self {
        let all: Vec<u8> = (0..=255u8).collect();
        Self {
            size: 256,
            bytes: Some(Arc::from(all)),
        }
    }

    /// Symbol `i` is rendered as `bytes[i]`. The bytes must be distinct.
    pub fn with_bytes(bytes: &[u8]) -> Result<Self> {
        if bytes.is_empty() {
            return Err(LzError::InvalidAlphabet("empty symbol list".into()));
        }
        let mut seen = [false; 256];
        for &b in bytes {
            if seen[b as usize] {
                return Err(LzError::InvalidAlphabet(format!(
                    "byte {b:#04x} listed twice"
                )));
            }
            seen[b as usize] = true;
        }
        Ok(Self {
            size: bytes.len() as u32,
            bytes: Some(Arc::from(bytes)),
        })
    }

    /// The set of bytes present in `data`, ascending.
    pub fn infer_from_bytes(data: &[u8]) -> Result<Self> {
        let mut seen = [false; 256];
        for &b in data {
            seen[b as usize] = true;
        }
        let present: Vec<u8> = (0..=255u8).filter(|&b| seen[b as usize]).collect();
        Self::with_bytes(&present)
    }

    /// Alphabet of aligned pairs `(a, b)`, encoded as `a * right.size + b`.
    pub fn product(left: &Alphabet, right: &Alphabet) -> Result<Self> {
        let size = left.size.checked_mul(right.size).ok_or_else(|| {
            LzError::InvalidAlphabet(format!(
                "product of sizes {} and {} overflows",
                left.size, right.size
            ))
        })?;
        Self::new(size)
    }

    pub fn size(&self) -> u32 {
        self.size
    }

    pub fn byte_map(&self) -> Option<&[u8]> {
        self.bytes.as_deref()
    }

    pub fn symbol_of(&self, byte: u8) -> Option<u32> {
        match &self.bytes {
            Some(map) => map.iter().position(|&b| b == byte).map(|i| i as u32),
            None => (u32::from(byte) < self.size).then_some(u32::from(byte)),
        }
    }

    pub fn byte_of(&self, symbol: u32) -> Option<u8> {
        match &self.bytes {
            Some(map) => map.get(symbol as usize).copied(),
            None => u8::try_from(symbol).ok().filter(|_| symbol < self.size),
        }
    }

    /// Bits needed to write one symbol: `ceil(log2 size)`, 0 for a unary alphabet.
    pub fn symbol_bits(&self) -> u32 {
        ceil_log2(u64::from(self.size))
    }

    /// Two alphabets are interchangeable when they have the same size.
    pub fn compatible(&self, other: &Alphabet) -> bool {
        self.size == other.size
    }
}

/// `ceil(log2 v)` with `ceil_log2(0) = ceil_log2(1) = 0`.
pub fn ceil_log2(v: u64) -> u32 {
    if v <= 1 {
        0
    } else {
        64 - (v - 1).leading_zeros()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sequence {
    alphabet: Alphabet,
    symbols: Vec<u32>,
}

impl Sequence {
    pub fn new(alphabet: Alphabet, symbols: Vec<u32>) -> Result<Self> {
        if symbols.len() > MAX_LEN {
            return Err(LzError::SequenceTooLong(symbols.len()));
        }
        if let Some((position, &symbol)) = symbols
            .iter()
            .enumerate()
            .find(|(_, &s)| s >= alphabet.size)
        {
            return Err(LzError::SymbolOutOfRange {
                position,
                symbol,
                size: alphabet.size,
            });
        }
        Ok(Self { alphabet, symbols })
    }

    pub fn empty(alphabet: Alphabet) -> Self {
        Self {
            alphabet,
            symbols: Vec::new(),
        }
    }

    /// Map each byte through the alphabet's byte rendering.
    pub fn from_bytes(alphabet: Alphabet, data: &[u8]) -> Result<Self> {
        let mut symbols = Vec::with_capacity(data.len());
        for (position, &b) in data.iter().enumerate() {
            let s = alphabet.symbol_of(b).ok_or_else(|| {
                LzError::InvalidParameter(format!(
                    "byte {b:#04x} at position {position} is not in the alphabet"
                ))
            })?;
            symbols.push(s);
        }
        Self::new(alphabet, symbols)
    }

    /// Parse a string of `'0'`/`'1'` characters over the binary alphabet.
    pub fn from_binary_str(s: &str) -> Result<Self> {
        Self::from_bytes(Alphabet::binary(), s.as_bytes())
    }

    pub fn to_bytes(&self) -> Option<Vec<u8>> {
        self.symbols
            .iter()
            .map(|&s| self.alphabet.byte_of(s))
            .collect()
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn symbols(&self) -> &[u32] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn into_symbols(self) -> Vec<u32> {
        self.symbols
    }

    /// Aligned pair sequence over the product alphabet.
    pub fn zip(x: &Sequence, y: &Sequence) -> Result<Self> {
        if x.len() != y.len() {
            return Err(LzError::LengthMismatch {
                left: x.len(),
                right: y.len(),
            });
        }
        let alphabet = Alphabet::product(&x.alphabet, &y.alphabet)?;
        let ys = y.alphabet.size;
        let symbols = x
            .symbols
            .iter()
            .zip(&y.symbols)
            .map(|(&a, &b)| a * ys + b)
            .collect();
        Ok(Self { alphabet, symbols })
    }

    pub(crate) fn check_compatible(&self, other: &Sequence) -> Result<()> {
        if self.alphabet.compatible(&other.alphabet) {
            Ok(())
        } else {
            Err(LzError::AlphabetMismatch {
                left: self.alphabet.size,
                right: other.alphabet.size,
            })
        }
    }
}

impl std::fmt::Display for Sequence {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.to_bytes() {
            Some(bytes) => write!(f, "{}", String::from_utf8_lossy(&bytes)),
            None => write!(f, "{:?}", self.symbols),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ceil_log2_values() {
        let got: Vec<u32> = [0u64, 1, 2, 3, 4, 5, 8, 9, 256, 257]
            .iter()
            .map(|&v| ceil_log2(v))
            .collect();
        assert_eq!(got, vec![0, 0, 1, 2, 2, 3, 3, 4, 8, 9]);
    }

    #[test]
    fn rejects_out_of_range_symbols() {
        let err = Sequence::new(Alphabet::binary(), vec![0, 1, 2]).unwrap_err();
        assert!(matches!(err, LzError::SymbolOutOfRange { position: 2, .. }));
    }

    #[test]
    fn zero_size_alphabet_rejected() {
        assert!(Alphabet::new(0).is_err());
        assert!(Alphabet::with_bytes(b"aba").is_err());
    }

    #[test]
    fn inferred_alphabet_is_sorted() {
        let a = Alphabet::infer_from_bytes(b"zebra").unwrap();
        assert_eq!(a.byte_map().unwrap(), b"aberz");
        let s = Sequence::from_bytes(a, b"zebra").unwrap();
        assert_eq!(s.symbols(), &[4, 2, 1, 3, 0]);
        assert_eq!(s.to_string(), "zebra");
    }

    #[test]
    fn zip_encodes_pairs() {
        let x = Sequence::from_binary_str("0101").unwrap();
        let y = Sequence::from_binary_str("0011").unwrap();
        let p = Sequence::zip(&x, &y).unwrap();
        assert_eq!(p.alphabet().size(), 4);
        assert_eq!(p.symbols(), &[0, 2, 1, 3]);
    }
}
