//! Deterministic master-seed expansion.
//!
//! Every consumer of randomness derives its own stream from the master seed
//! through a purpose tag (plus an optional index), so identical run
//! configurations replay bit-identically and distinct purposes never share
//! entropy. Expansion is counter-mode SHA-256: stream key =
//! SHA-256(master || 0 || tag || 0 || index), block i = SHA-256(key || i).

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

/// Parse a hex master seed ("0x" prefix optional).
pub fn parse_hex_seed(s: &str) -> Result<Vec<u8>> {
    let s = s.strip_prefix("0x").unwrap_or(s);
    if s.is_empty() || s.len() % 2 != 0 {
        return Err(Error::param(format!("seed hex must be a nonempty even-length string, got {s:?}")));
    }
    (0..s.len())
        .step_by(2)
        .map(|i| u8::from_str_radix(&s[i..i + 2], 16).map_err(|_| Error::param(format!("bad hex in seed: {s:?}"))))
        .collect()
}

#[derive(Debug, Clone)]
pub struct EntropyStream {
    key: [u8; 32],
    counter: u64,
    buf: [u8; 32],
    pos: usize,
    // bit-level reader state
    bit_buf: u64,
    bit_count: u32,
}

impl EntropyStream {
    pub fn new(master: &[u8], tag: &str) -> EntropyStream {
        EntropyStream::with_index(master, tag, 0)
    }

    /// A stream separated both by tag and by numeric index (e.g. one stream
    /// per trial or per replica).
    pub fn with_index(master: &[u8], tag: &str, index: u64) -> EntropyStream {
        let mut h = Sha256::new();
        h.update(master);
        h.update([0u8]);
        h.update(tag.as_bytes());
        h.update([0u8]);
        h.update(index.to_le_bytes());
        let key: [u8; 32] = h.finalize().into();
        EntropyStream { key, counter: 0, buf: [0; 32], pos: 32, bit_buf: 0, bit_count: 0 }
    }

    pub fn key(&self) -> [u8; 32] {
        self.key
    }

    fn refill(&mut self) {
        let mut h = Sha256::new();
        h.update(self.key);
        h.update(self.counter.to_le_bytes());
        self.buf = h.finalize().into();
        self.counter += 1;
        self.pos = 0;
    }

    pub fn next_byte(&mut self) -> u8 {
        if self.pos >= 32 {
            self.refill();
        }
        let b = self.buf[self.pos];
        self.pos += 1;
        b
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut v = [0u8; 8];
        for b in &mut v {
            *b = self.next_byte();
        }
        u64::from_le_bytes(v)
    }

    /// Draw `bits` bits (at most 57 per call), LSB-first.
    pub fn next_bits(&mut self, bits: u32) -> u64 {
        debug_assert!(bits <= 57);
        while self.bit_count < bits {
            self.bit_buf |= (self.next_byte() as u64) << self.bit_count;
            self.bit_count += 8;
        }
        let v = self.bit_buf & ((1u64 << bits) - 1);
        self.bit_buf >>= bits;
        self.bit_count -= bits;
        v
    }
}

/// Fixed-size bit string used where an operation takes entropy by value
/// (e.g. sample-space seeds built from explicit bits in tests).
pub struct BitReader<'a> {
    bytes: &'a [u8],
    /// total bits available
    len: u64,
    pos: u64,
}

impl<'a> BitReader<'a> {
    pub fn new(bytes: &'a [u8], bit_len: u64) -> Result<BitReader<'a>> {
        if bit_len > bytes.len() as u64 * 8 {
            return Err(Error::param("bit length exceeds byte buffer"));
        }
        Ok(BitReader { bytes, len: bit_len, pos: 0 })
    }

    pub fn remaining(&self) -> u64 {
        self.len - self.pos
    }

    pub fn take_bits(&mut self, bits: u32) -> Result<u64> {
        if self.remaining() < bits as u64 {
            return Err(Error::param(format!(
                "insufficient entropy: need {bits} bits, {} left",
                self.remaining()
            )));
        }
        let mut v = 0u64;
        for j in 0..bits {
            let p = self.pos + j as u64;
            let bit = (self.bytes[(p / 8) as usize] >> (p % 8)) & 1;
            v |= (bit as u64) << j;
        }
        self.pos += bits as u64;
        Ok(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn replay_is_identical() {
        let master = parse_hex_seed("deadbeef").unwrap();
        let mut a = EntropyStream::new(&master, "t");
        let mut b = EntropyStream::new(&master, "t");
        for _ in 0..100 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
    }

    #[test]
    fn tags_and_indices_separate() {
        let master = b"m";
        let keys = [
            EntropyStream::new(master, "a").key(),
            EntropyStream::new(master, "b").key(),
            EntropyStream::with_index(master, "a", 1).key(),
            EntropyStream::with_index(master, "a", 2).key(),
        ];
        for i in 0..keys.len() {
            for j in i + 1..keys.len() {
                assert_ne!(keys[i], keys[j]);
            }
        }
    }

    #[test]
    fn bit_reader_exhaustion() {
        let mut r = BitReader::new(&[0b1011_0101], 8).unwrap();
        assert_eq!(r.take_bits(3).unwrap(), 0b101);
        assert_eq!(r.take_bits(5).unwrap(), 0b10110);
        assert!(r.take_bits(1).is_err());
    }

    #[test]
    fn bad_hex_rejected() {
        assert!(parse_hex_seed("xyz").is_err());
        assert!(parse_hex_seed("abc").is_err());
        assert!(parse_hex_seed("").is_err());
        assert_eq!(parse_hex_seed("0xFF00").unwrap(), vec![0xff, 0]);
    }
}
