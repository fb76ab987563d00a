//! Almost-k-wise-independent random orderings over [m].
//!
//! The rank of element i concatenates one bit per copy from s = 4*ceil(log2 m)
//! independent k-wise independent bit vectors, giving a rank in
//! {0,...,2^s-1}. Any two elements collide with probability exactly 2^-s =
//! 1/m^4 (power-of-two m), so the induced ordering is 1/m^2-almost k-wise
//! independent. Ties are broken by index to keep a total order; collisions
//! are counted so experiments can condition on collision-free runs.

use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};

use crate::entropy::EntropyStream;
use crate::error::{Error, Result};
use crate::kwise::{field_log, SampleSpace};

/// Outcome of comparing two distinct elements under the ordering; ties on
/// rank are resolved by index and recorded in the collision counter.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RankOrder {
    Less,
    Greater,
}

/// Number of bit-vector copies for universe size m.
pub fn copies_for(m: u64) -> u32 {
    4 * field_log(m)
}

#[derive(Debug)]
pub struct RandomOrdering {
    m: u64,
    k: u32,
    copies: Vec<SampleSpace>,
    collisions: AtomicU64,
}

impl RandomOrdering {
    pub fn new(m: u64, k: u32, entropy: &mut EntropyStream) -> Result<RandomOrdering> {
        if m < 2 {
            return Err(Error::param("ordering needs universe size m >= 2"));
        }
        if k < 2 || k as u64 > m {
            return Err(Error::param(format!("ordering independence k={k} outside 2..=m ({m})")));
        }
        let s = copies_for(m);
        let copies = (0..s).map(|_| SampleSpace::new(m, k, entropy)).collect::<Result<Vec<_>>>()?;
        Ok(RandomOrdering { m, k, copies, collisions: AtomicU64::new(0) })
    }

    /// Build from explicit copies (exhaustive enumeration in tests).
    pub fn from_copies(m: u64, k: u32, copies: Vec<SampleSpace>) -> Result<RandomOrdering> {
        if copies.len() != copies_for(m) as usize {
            return Err(Error::param(format!(
                "expected {} copies for m={m}, got {}",
                copies_for(m),
                copies.len()
            )));
        }
        if copies.iter().any(|c| c.n() != m || c.k() != k) {
            return Err(Error::param("copy dimensions disagree with ordering"));
        }
        Ok(RandomOrdering { m, k, copies, collisions: AtomicU64::new(0) })
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// s, the number of rank bits.
    pub fn s(&self) -> u32 {
        self.copies.len() as u32
    }

    pub fn seed_length_bits(&self) -> u64 {
        self.s() as u64 * self.k as u64 * field_log(self.m) as u64
    }

    /// Rank of element i: the s-bit integer whose bit for copy j (from the
    /// most significant end) is copies[j].bit(i).
    pub fn rank(&self, i: u64) -> Result<u128> {
        if i >= self.m {
            return Err(Error::param(format!("element {i} out of range 0..{}", self.m)));
        }
        Ok(self.rank_unchecked(i))
    }

    #[inline]
    pub(crate) fn rank_unchecked(&self, i: u64) -> u128 {
        let mut r = 0u128;
        for c in &self.copies {
            r = (r << 1) | c.bit_unchecked(i) as u128;
        }
        r
    }

    /// Compare two distinct elements; equal ranks fall back to index order
    /// and bump the collision counter.
    pub fn compare(&self, i: u64, j: u64) -> Result<RankOrder> {
        if i >= self.m || j >= self.m {
            return Err(Error::param("element out of range"));
        }
        if i == j {
            return Err(Error::param("compare requires distinct elements"));
        }
        let (ri, rj) = (self.rank_unchecked(i), self.rank_unchecked(j));
        if ri == rj {
            self.collisions.fetch_add(1, AtomicOrdering::Relaxed);
            return Ok(if i < j { RankOrder::Less } else { RankOrder::Greater });
        }
        Ok(if ri < rj { RankOrder::Less } else { RankOrder::Greater })
    }

    pub fn collision_count(&self) -> u64 {
        self.collisions.load(AtomicOrdering::Relaxed)
    }

    /// All m ranks (convenience for experiments and collision scans).
    pub fn ranks(&self) -> Vec<u128> {
        (0..self.m).map(|i| self.rank_unchecked(i)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        let mut e = EntropyStream::new(b"s", "o");
        let o = RandomOrdering::new(4, 2, &mut e).unwrap();
        assert_eq!(o.s(), 8);
        assert!(o.rank(0).unwrap() < 256);
        let o2 = RandomOrdering::new(2, 2, &mut e).unwrap();
        assert_eq!(o2.s(), 4);
        assert!(o2.rank(0).unwrap() < 16 && o2.rank(1).unwrap() < 16);
        assert!(RandomOrdering::new(1, 2, &mut e).is_err());
        assert!(RandomOrdering::new(4, 1, &mut e).is_err());
        assert!(RandomOrdering::new(4, 5, &mut e).is_err());
    }

    #[test]
    fn zero_seeded_ranks_are_zero_and_ties_break_by_index() {
        let m = 4;
        let k = 2;
        let copies = (0..copies_for(m))
            .map(|_| SampleSpace::from_coefficients(m, k, vec![0, 0]).unwrap())
            .collect();
        let o = RandomOrdering::from_copies(m, k, copies).unwrap();
        for i in 0..m {
            assert_eq!(o.rank(i).unwrap(), 0);
        }
        assert_eq!(o.compare(2, 3).unwrap(), RankOrder::Less);
        assert_eq!(o.compare(3, 2).unwrap(), RankOrder::Greater);
        assert_eq!(o.collision_count(), 2);
        assert!(o.compare(1, 1).is_err());
    }

    #[test]
    fn deterministic_replay() {
        let a = RandomOrdering::new(16, 4, &mut EntropyStream::new(b"m", "ord")).unwrap();
        let b = RandomOrdering::new(16, 4, &mut EntropyStream::new(b"m", "ord")).unwrap();
        assert_eq!(a.ranks(), b.ranks());
    }

    /// Per-copy exhaustive enumeration: for m=4, k=2 each copy's seed space
    /// (16 seeds) gives Pr[bit_i = bit_j] = 1/2 exactly for every pair, so
    /// over the s=8 independent copies Pr[rank(i)=rank(j)] = (1/2)^8 = 1/m^4.
    #[test]
    fn pairwise_collision_probability_exact() {
        let m = 4u64;
        let k = 2u32;
        let l = field_log(m);
        let seeds = 1u64 << (k * l);
        for i in 0..m {
            for j in 0..m {
                if i == j {
                    continue;
                }
                let mut equal = 0u64;
                for seed in 0..seeds {
                    let coeffs: Vec<u64> =
                        (0..k).map(|t| (seed >> (t * l)) & ((1 << l) - 1)).collect();
                    let sp = SampleSpace::from_coefficients(m, k, coeffs).unwrap();
                    if sp.bit(i).unwrap() == sp.bit(j).unwrap() {
                        equal += 1;
                    }
                }
                assert_eq!(equal, seeds / 2, "pair ({i},{j})");
            }
        }
        // (1/2)^s = 1/m^4 given s = 4 log2 m; spelled out for m=4:
        assert_eq!(copies_for(m), 8);
        assert_eq!(0.5f64.powi(8), (m as f64).powi(-4));
    }

    /// Full seed-space enumeration at the smallest legal instance m=2, k=2:
    /// conditioned on no collision, both relative orders are exactly equally
    /// frequent.
    #[test]
    fn projection_uniformity_exhaustive_m2() {
        let m = 2u64;
        let k = 2u32;
        let l = field_log(m); // 1
        let per_copy = 1u64 << (k * l); // 4 seeds per copy
        let s = copies_for(m); // 4 copies
        let total = per_copy.pow(s);
        let (mut less, mut greater, mut collide) = (0u64, 0u64, 0u64);
        for mut code in 0..total {
            let mut copies = Vec::with_capacity(s as usize);
            for _ in 0..s {
                let seed = code % per_copy;
                code /= per_copy;
                let coeffs: Vec<u64> = (0..k).map(|t| (seed >> (t * l)) & 1).collect();
                copies.push(SampleSpace::from_coefficients(m, k, coeffs).unwrap());
            }
            let o = RandomOrdering::from_copies(m, k, copies).unwrap();
            let (r0, r1) = (o.rank(0).unwrap(), o.rank(1).unwrap());
            match r0.cmp(&r1) {
                std::cmp::Ordering::Less => less += 1,
                std::cmp::Ordering::Greater => greater += 1,
                std::cmp::Ordering::Equal => collide += 1,
            }
        }
        assert_eq!(less, greater);
        // collision probability exactly 1/m^4 = 1/16 of the seed space
        assert_eq!(collide, total / 16);
    }
}
