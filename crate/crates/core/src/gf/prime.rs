//! Arithmetic tables for the prime field F_p with p small.
//!
//! Every field element in the crate bottoms out in coefficient vectors over
//! some prime field, so these table lookups sit on the hot path of the
//! skew-polynomial and linear-algebra loops.

/// Add/mul/inv tables for F_p, p prime. Values are canonical residues in `0..p`.
#[derive(Debug)]
pub struct PrimeTables {
    pub p: u64,
    mul: Vec<u64>,
    inv: Vec<u64>,
    neg: Vec<u64>,
}

pub const MAX_PRIME: u64 = 4096;

impl PrimeTables {
    pub fn new(p: u64) -> Self {
        assert!(p >= 2 && p <= MAX_PRIME, "prime out of supported range");
        let pu = p as usize;
        let mut mul = vec![0u64; pu * pu];
        for a in 0..p {
            for b in 0..p {
                mul[(a * p + b) as usize] = (a * b) % p;
            }
        }
        let mut inv = vec![0u64; pu];
        for a in 1..p {
            // p is tiny; scan for the inverse once at construction.
            for b in 1..p {
                if (a * b) % p == 1 {
                    inv[a as usize] = b;
                    break;
                }
            }
        }
        let neg = (0..p).map(|a| (p - a) % p).collect();
        Self { p, mul, inv, neg }
    }

    #[inline(always)]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline(always)]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline(always)]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        self.mul[(a * self.p + b) as usize]
    }

    #[inline(always)]
    pub fn neg(&self, a: u64) -> u64 {
        self.neg[a as usize]
    }

    /// Inverse of a nonzero residue. Panics on zero.
    #[inline(always)]
    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(a != 0, "inverse of zero");
        self.inv[a as usize]
    }
}

/// Returns `Some((p, e))` with `n = p^e`, `p` prime, or `None`.
pub fn prime_power_decompose(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut m = n;
            let mut e = 0;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            return if m == 1 { Some((p, e)) } else { None };
        }
        p += 1;
    }
    Some((n, 1))
}
