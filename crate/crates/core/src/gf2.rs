//! Binary field arithmetic GF(2^l) for 1 <= l <= 32.
//!
//! Every field uses a fixed irreducible modulus from [`MODULI`], so field
//! elements and polynomial evaluations are bit-exact across platforms and
//! implementations.

use crate::error::{Error, Result};

/// Irreducible polynomial for GF(2^l), indexed by l (entry 0 unused).
/// Low-weight trinomials/pentanomials; each includes the leading x^l term.
pub const MODULI: [u64; 33] = [
    0,
    0x3,
    0x7,
    0xB,
    0x13,
    0x25,
    0x43,
    0x83,
    0x11B,
    0x203,
    0x409,
    0x805,
    0x1009,
    0x201B,
    0x4021,
    0x8003,
    0x1002B,
    0x20009,
    0x40009,
    0x80027,
    0x100009,
    0x200005,
    0x400003,
    0x800021,
    0x100001B,
    0x2000009,
    0x400001B,
    0x8000027,
    0x10000003,
    0x20000005,
    0x40000003,
    0x80000009,
    0x10000008D,
];

#[cfg(target_arch = "x86_64")]
fn clmul_available() -> bool {
    use std::sync::OnceLock;
    static AVAIL: OnceLock<bool> = OnceLock::new();
    *AVAIL.get_or_init(|| std::arch::is_x86_feature_detected!("pclmulqdq"))
}

#[cfg(target_arch = "x86_64")]
#[target_feature(enable = "pclmulqdq", enable = "sse2")]
unsafe fn clmul_hw(a: u64, b: u64) -> u64 {
    use std::arch::x86_64::*;
    let va = _mm_set_epi64x(0, a as i64);
    let vb = _mm_set_epi64x(0, b as i64);
    _mm_cvtsi128_si64(_mm_clmulepi64_si128::<0>(va, vb)) as u64
}

fn clmul_soft(a: u64, mut b: u64) -> u64 {
    let mut r = 0u64;
    let mut shift = 0;
    while b != 0 {
        let tz = b.trailing_zeros();
        shift += tz;
        r ^= a << shift;
        b >>= tz + 1;
        shift += 1;
    }
    r
}

/// Carry-less product of two operands whose product fits in 64 bits.
#[inline]
fn clmul(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    #[cfg(target_arch = "x86_64")]
    {
        if clmul_available() {
            return unsafe { clmul_hw(a, b) };
        }
    }
    clmul_soft(a, b)
}

/// GF(2^l) with the fixed modulus from [`MODULI`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Field {
    log: u32,
    /// Modulus taps below the leading term (modulus ^ (1 << log)).
    low: u64,
}

impl Field {
    pub fn new(log: u32) -> Result<Field> {
        if !(1..=32).contains(&log) {
            return Err(Error::param(format!("field log {log} outside 1..=32")));
        }
        Ok(Field { log, low: MODULI[log as usize] ^ (1u64 << log) })
    }

    pub fn log(&self) -> u32 {
        self.log
    }

    pub fn modulus(&self) -> u64 {
        MODULI[self.log as usize]
    }

    /// Number of elements, 2^l.
    pub fn order(&self) -> u64 {
        1u64 << self.log
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        a ^ b
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        debug_assert!(a < self.order() && b < self.order());
        let mut p = clmul(a, b);
        // Fold the overflow back down; the taps are low-degree so this
        // terminates after at most a couple of rounds.
        let mask = self.order() - 1;
        while p >> self.log != 0 {
            let hi = p >> self.log;
            p = (p & mask) ^ clmul(hi, self.low);
        }
        p
    }

    /// Horner evaluation of sum coeffs[j] * x^j.
    pub fn eval_poly(&self, coeffs: &[u64], x: u64) -> u64 {
        let mut acc = 0u64;
        for &c in coeffs.iter().rev() {
            acc = self.mul(acc, x) ^ c;
        }
        acc
    }
}
