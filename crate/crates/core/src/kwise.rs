//! Seeded k-wise independent bit vectors with O(k log n) seeds.
//!
//! Bit i is the least significant bit of a random degree-(k-1) polynomial
//! over GF(2^l) evaluated at the i-th field element, where l =
//! ceil(log2(max(n,2))). Any k evaluation points give jointly uniform field
//! values (Vandermonde), so any k bits are jointly uniform.

use crate::entropy::{BitReader, EntropyStream};
use crate::error::{Error, Result};
use crate::gf2::Field;

/// Bits per field element for an n-bit sample space.
pub fn field_log(n: u64) -> u32 {
    let n = n.max(2);
    64 - (n - 1).leading_zeros() as u32
}

/// Seed length in bits: k * ceil(log2(max(n,2))).
pub fn seed_length_bits(n: u64, k: u32) -> Result<u64> {
    check_params(n, k)?;
    Ok(k as u64 * field_log(n) as u64)
}

fn check_params(n: u64, k: u32) -> Result<()> {
    if n == 0 {
        return Err(Error::param("sample space needs n >= 1"));
    }
    if k == 0 || k as u64 > n {
        return Err(Error::param(format!("independence k={k} outside 1..=n ({n})")));
    }
    Ok(())
}

#[derive(Debug, Clone)]
pub struct SampleSpace {
    n: u64,
    k: u32,
    field: Field,
    /// The seed: k coefficients, constant term first.
    coeffs: Vec<u64>,
}

impl SampleSpace {
    /// Draw the k*l seed bits from an entropy stream.
    pub fn new(n: u64, k: u32, entropy: &mut EntropyStream) -> Result<SampleSpace> {
        check_params(n, k)?;
        let field = Field::new(field_log(n))?;
        let coeffs = (0..k).map(|_| entropy.next_bits(field.log())).collect();
        Ok(SampleSpace { n, k, field, coeffs })
    }

    /// Build from an explicit bit string; errors if it holds fewer than
    /// k*ceil(log2(max(n,2))) bits.
    pub fn from_entropy_bits(n: u64, k: u32, bytes: &[u8], bit_len: u64) -> Result<SampleSpace> {
        check_params(n, k)?;
        let field = Field::new(field_log(n))?;
        let mut r = BitReader::new(bytes, bit_len)?;
        let coeffs = (0..k).map(|_| r.take_bits(field.log())).collect::<Result<Vec<_>>>()?;
        Ok(SampleSpace { n, k, field, coeffs })
    }

    /// Build from explicit polynomial coefficients (constant term first),
    /// used by exhaustive seed-space enumeration.
    pub fn from_coefficients(n: u64, k: u32, coeffs: Vec<u64>) -> Result<SampleSpace> {
        check_params(n, k)?;
        let field = Field::new(field_log(n))?;
        if coeffs.len() != k as usize {
            return Err(Error::param(format!("expected {k} coefficients, got {}", coeffs.len())));
        }
        if coeffs.iter().any(|&c| c >= field.order()) {
            return Err(Error::param("coefficient outside field"));
        }
        Ok(SampleSpace { n, k, field, coeffs })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn field_log(&self) -> u32 {
        self.field.log()
    }

    pub fn coefficients(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn bit(&self, i: u64) -> Result<bool> {
        if i >= self.n {
            return Err(Error::param(format!("bit index {i} out of range 0..{}", self.n)));
        }
        Ok(self.bit_unchecked(i))
    }

    #[inline]
    pub(crate) fn bit_unchecked(&self, i: u64) -> bool {
        self.field.eval_poly(&self.coeffs, i) & 1 == 1
    }
}
