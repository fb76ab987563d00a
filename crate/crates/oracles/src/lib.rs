//! Straight-line reference implementations used as test oracles.
//!
//! Everything here is written independently of the main crate's code paths:
//! plain loops, no Horner evaluation, no memoized recursion, no caches. These
//! functions are only ever pulled in as a dev-dependency.

/// Irreducible modulus for GF(2^l) (same published table the construction
/// fixes; duplicated here so the oracle shares no code with the library).
const MODULI: [u64; 33] = [
    0, 0x3, 0x7, 0xB, 0x13, 0x25, 0x43, 0x83, 0x11B, 0x203, 0x409, 0x805, 0x1009, 0x201B, 0x4021,
    0x8003, 0x1002B, 0x20009, 0x40009, 0x80027, 0x100009, 0x200005, 0x400003, 0x800021, 0x100001B,
    0x2000009, 0x400001B, 0x8000027, 0x10000003, 0x20000005, 0x40000003, 0x80000009, 0x10000008D,
];

fn gf_mul(log: u32, a: u64, b: u64) -> u64 {
    let mut prod: u128 = 0;
    for i in 0..64 {
        if b >> i & 1 == 1 {
            prod ^= (a as u128) << i;
        }
    }
    let m = MODULI[log as usize] as u128;
    let mut bl = 128 - prod.leading_zeros();
    while bl > log + 1 {
        prod ^= m << (bl - log - 1);
        bl = 128 - prod.leading_zeros();
    }
    if bl == log + 1 {
        prod ^= m;
    }
    prod as u64
}

/// LSB of sum coeffs[j] * x^j over GF(2^log), via explicit powers of x.
pub fn naive_poly_lsb(log: u32, coeffs: &[u64], x: u64) -> bool {
    let mut acc = 0u64;
    let mut xp = 1u64; // x^0
    for &c in coeffs {
        acc ^= gf_mul(log, c, xp);
        xp = gf_mul(log, xp, x);
    }
    acc & 1 == 1
}

/// Per-vertex Phase-1 result of the sequential hypergraph coloring pass:
/// vertices are visited in `order`; a vertex is frozen when some incident
/// edge already holds >= k1 vertices of one color and none of the other,
/// otherwise it takes `color(v)` (false = red, true = blue).
///
/// Returns None for frozen vertices, Some(color) otherwise.
pub fn sequential_phase1(
    m: usize,
    edges: &[Vec<u32>],
    order: &[u32],
    k1: u32,
    color: impl Fn(u32) -> bool,
) -> Vec<Option<bool>> {
    assert_eq!(order.len(), m);
    let mut incident: Vec<Vec<usize>> = vec![vec![]; m];
    for (e, vs) in edges.iter().enumerate() {
        for &v in vs {
            incident[v as usize].push(e);
        }
    }
    let mut red = vec![0u32; edges.len()];
    let mut blue = vec![0u32; edges.len()];
    let mut out: Vec<Option<bool>> = vec![None; m];
    let mut seen = vec![false; m];
    for &v in order {
        assert!(!seen[v as usize], "order visits {v} twice");
        seen[v as usize] = true;
        let dangerous = incident[v as usize]
            .iter()
            .any(|&e| (red[e] >= k1 && blue[e] == 0) || (blue[e] >= k1 && red[e] == 0));
        if !dangerous {
            let c = color(v);
            out[v as usize] = Some(c);
            for &e in &incident[v as usize] {
                if c {
                    blue[e] += 1;
                } else {
                    red[e] += 1;
                }
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LubyStatus {
    Bottom,
    Selected,
    Deleted,
}

/// Round-synchronous Luby simulation over the whole graph. In round i every
/// still-undecided vertex is first deleted if a neighbor was selected in
/// round i-1; it is then selected iff coin(v,i) holds and no neighbor that
/// was undecided entering the round has coin(u,i).
pub fn global_luby(
    adj: &[Vec<u32>],
    rounds: u32,
    coin: impl Fn(u32, u32) -> bool,
) -> Vec<LubyStatus> {
    let n = adj.len();
    let mut status = vec![LubyStatus::Bottom; n];
    for i in 1..=rounds {
        let prev = status.clone();
        for v in 0..n {
            if prev[v] != LubyStatus::Bottom {
                continue;
            }
            if adj[v].iter().any(|&u| prev[u as usize] == LubyStatus::Selected) {
                status[v] = LubyStatus::Deleted;
                continue;
            }
            if coin(v as u32, i) {
                let contended = adj[v]
                    .iter()
                    .any(|&u| prev[u as usize] == LubyStatus::Bottom && coin(u, i));
                if !contended {
                    status[v] = LubyStatus::Selected;
                }
            }
        }
    }
    status
}

/// Exhaustive check that `membership` is a maximal independent set.
pub fn is_maximal_independent_set(adj: &[Vec<u32>], membership: &[bool]) -> bool {
    for (v, nbrs) in adj.iter().enumerate() {
        if membership[v] {
            if nbrs.iter().any(|&u| membership[u as usize]) {
                return false;
            }
        } else if !nbrs.iter().any(|&u| membership[u as usize]) {
            return false;
        }
    }
    true
}

/// True iff no edge is monochromatic (false = red, true = blue).
pub fn is_proper_two_coloring(edges: &[Vec<u32>], colors: &[bool]) -> bool {
    edges.iter().all(|vs| {
        vs.iter().any(|&v| colors[v as usize]) && vs.iter().any(|&v| !colors[v as usize])
    })
}
