//! Bit-packed vectors over GF(2).
//!
//! A [`BitVector`] stores bit `i` in byte `i / 8` at position `7 - (i % 8)`,
//! i.e. most significant bit first within each byte. Unused trailing bits of
//! the last byte are always zero, so equal vectors are byte-equal and the
//! packed form is stable across platforms. The length is fixed at creation.

use crate::error::{Error, Result};
use rand::Rng;

/// A fixed-length binary vector with MSB-first byte packing.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVector {
    len: usize,
    bytes: Vec<u8>,
}

impl BitVector {
    /// All-zero vector of `len` bits.
    pub fn zeros(len: usize) -> Self {
        BitVector {
            len,
            bytes: vec![0; len.div_ceil(8)],
        }
    }

    /// Builds a vector from booleans, one per bit.
    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = BitVector::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    /// Parses a string of `0`/`1` characters.
    pub fn parse_bits(s: &str) -> Result<Self> {
        let mut bits = Vec::with_capacity(s.len());
        for c in s.chars() {
            match c {
                '0' => bits.push(false),
                '1' => bits.push(true),
                _ => {
                    return Err(Error::InvalidParameter(format!(
                        "invalid bit character {c:?}"
                    )))
                }
            }
        }
        Ok(BitVector::from_bools(&bits))
    }

    /// Wraps packed bytes as a `len`-bit vector.
    ///
    /// Fails if the byte count is wrong or a trailing pad bit is set.
    pub fn from_bytes(bytes: Vec<u8>, len: usize) -> Result<Self> {
        if bytes.len() != len.div_ceil(8) {
            return Err(Error::LengthMismatch {
                expected: len.div_ceil(8),
                got: bytes.len(),
            });
        }
        if !len.is_multiple_of(8) {
            let mask = 0xffu8 >> (len % 8);
            if bytes[len / 8] & mask != 0 {
                return Err(Error::InvalidParameter(
                    "nonzero padding bits in last byte".into(),
                ));
            }
        }
        Ok(BitVector { len, bytes })
    }

    /// Uniform random vector drawn from `rng`.
    pub fn random<R: Rng + ?Sized>(len: usize, rng: &mut R) -> Self {
        let mut bytes = vec![0u8; len.div_ceil(8)];
        rng.fill(&mut bytes[..]);
        if !len.is_multiple_of(8) {
            bytes[len / 8] &= 0xffu8 << (8 - len % 8);
        }
        BitVector { len, bytes }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Packed bytes, MSB-first, trailing pad bits zero.
    pub fn as_bytes(&self) -> &[u8] {
        &self.bytes
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range (len {})", self.len);
        self.bytes[i / 8] & (0x80 >> (i % 8)) != 0
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit index {i} out of range (len {})", self.len);
        let mask = 0x80 >> (i % 8);
        if value {
            self.bytes[i / 8] |= mask;
        } else {
            self.bytes[i / 8] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit index {i} out of range (len {})", self.len);
        self.bytes[i / 8] ^= 0x80 >> (i % 8);
    }

    /// Number of set bits.
    pub fn weight(&self) -> usize {
        self.bytes.iter().map(|b| b.count_ones() as usize).sum()
    }

    /// Bitwise XOR, requiring equal lengths.
    pub fn xor(&self, other: &BitVector) -> Result<BitVector> {
        if self.len != other.len {
            return Err(Error::LengthMismatch {
                expected: self.len,
                got: other.len,
            });
        }
        let bytes = self
            .bytes
            .iter()
            .zip(&other.bytes)
            .map(|(a, b)| a ^ b)
            .collect();
        Ok(BitVector {
            len: self.len,
            bytes,
        })
    }

    /// Bitwise complement (pad bits stay zero).
    pub fn complement(&self) -> BitVector {
        let mut bytes: Vec<u8> = self.bytes.iter().map(|b| !b).collect();
        if !self.len.is_multiple_of(8) {
            bytes[self.len / 8] &= 0xffu8 << (8 - self.len % 8);
        }
        BitVector {
            len: self.len,
            bytes,
        }
    }

    /// Lowercase hex of the packed bytes.
    pub fn to_hex(&self) -> String {
        hex::encode(&self.bytes)
    }

    /// Parses lowercase/uppercase hex into a `len`-bit vector.
    pub fn from_hex(s: &str, len: usize) -> Result<Self> {
        let bytes = hex::decode(s.trim())
            .map_err(|e| Error::InvalidParameter(format!("bad hex: {e}")))?;
        BitVector::from_bytes(bytes, len)
    }

    /// Iterator over bits as booleans.
    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }
}

impl std::fmt::Debug for BitVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.len <= 64 {
            let s: String = self.iter().map(|b| if b { '1' } else { '0' }).collect();
            write!(f, "BitVector({s})")
        } else {
            write!(f, "BitVector(len={}, weight={})", self.len, self.weight())
        }
    }
}

/// Number of positions where `a` and `b` differ.
pub fn hamming_distance(a: &BitVector, b: &BitVector) -> Result<usize> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            expected: a.len(),
            got: b.len(),
        });
    }
    Ok(a.bytes
        .iter()
        .zip(&b.bytes)
        .map(|(x, y)| (x ^ y).count_ones() as usize)
        .sum())
}
