//! Dense exact linear algebra over a small finite field F_q, with table-driven
//! scalar arithmetic. Entries are canonical indices in `0..q`: for prime q the
//! index is the residue itself; for prime powers the caller supplies tables
//! built from an explicit field representation.
//!
//! Elimination uses partial pivoting by first nonzero entry, so echelon forms
//! (and therefore kernel bases) are deterministic.

use std::sync::Arc;

/// Scalar arithmetic for F_q with elements encoded as indices `0..q`.
#[derive(Debug)]
pub struct SmallFq {
    pub q: u64,
    add: Vec<u64>,
    mul: Vec<u64>,
    neg: Vec<u64>,
    inv: Vec<u64>,
}

impl SmallFq {
    /// F_p for p prime: index arithmetic is plain modular arithmetic.
    pub fn new_prime(p: u64) -> Arc<Self> {
        let tables: Vec<(u64, u64, u64)> = (0..p)
            .flat_map(|a| (0..p).map(move |b| (a, b, 0)))
            .collect();
        let mut add = vec![0u64; (p * p) as usize];
        let mut mul = vec![0u64; (p * p) as usize];
        for (a, b, _) in tables {
            add[(a * p + b) as usize] = (a + b) % p;
            mul[(a * p + b) as usize] = (a * b) % p;
        }
        let neg = (0..p).map(|a| (p - a) % p).collect();
        let mut inv = vec![0u64; p as usize];
        for a in 1..p {
            for b in 1..p {
                if (a * b) % p == 1 {
                    inv[a as usize] = b;
                    break;
                }
            }
        }
        Arc::new(Self { q: p, add, mul, neg, inv })
    }

    /// Arbitrary tables (prime-power fields built by the field layer).
    pub fn from_tables(q: u64, add: Vec<u64>, mul: Vec<u64>, neg: Vec<u64>, inv: Vec<u64>) -> Arc<Self> {
        assert_eq!(add.len(), (q * q) as usize);
        assert_eq!(mul.len(), (q * q) as usize);
        assert_eq!(neg.len(), q as usize);
        assert_eq!(inv.len(), q as usize);
        Arc::new(Self { q, add, mul, neg, inv })
    }

    #[inline(always)]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        self.add[(a * self.q + b) as usize]
    }
    #[inline(always)]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg[b as usize])
    }
    #[inline(always)]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        self.mul[(a * self.q + b) as usize]
    }
    #[inline(always)]
    pub fn neg(&self, a: u64) -> u64 {
        self.neg[a as usize]
    }
    #[inline(always)]
    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(a != 0);
        self.inv[a as usize]
    }
}

/// Row-major dense matrix over a `SmallFq`.
#[derive(Clone, Debug)]
pub struct FqMat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u64>,
    pub fq: Arc<SmallFq>,
}

impl FqMat {
    pub fn zeros(fq: &Arc<SmallFq>, rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![0; rows * cols], fq: fq.clone() }
    }

    pub fn identity(fq: &Arc<SmallFq>, n: usize) -> Self {
        let mut m = Self::zeros(fq, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    #[inline(always)]
    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }
    #[inline(always)]
    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn matvec(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.cols);
        let fq = &self.fq;
        let mut out = vec![0u64; self.rows];
        for r in 0..self.rows {
            let row = self.row(r);
            let mut acc = 0;
            for (a, &x) in row.iter().zip(v) {
                if *a != 0 && x != 0 {
                    acc = fq.add(acc, fq.mul(*a, x));
                }
            }
            out[r] = acc;
        }
        out
    }

    pub fn matmul(&self, other: &FqMat) -> FqMat {
        assert_eq!(self.cols, other.rows);
        let fq = &self.fq;
        let mut out = FqMat::zeros(fq, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b != 0 {
                        let cur = out.get(i, j);
                        out.set(i, j, fq.add(cur, fq.mul(a, b)));
                    }
                }
            }
        }
        out
    }

    /// In-place reduced row echelon form. Returns the pivot columns in order.
    pub fn rref(&mut self) -> Vec<usize> {
        let fq = self.fq.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            // first row at or below r with nonzero entry in column c
            let mut pivot = None;
            for i in r..self.rows {
                if self.get(i, c) != 0 {
                    pivot = Some(i);
                    break;
                }
            }
            let Some(pi) = pivot else { continue };
            if pi != r {
                for j in 0..self.cols {
                    self.data.swap(r * self.cols + j, pi * self.cols + j);
                }
            }
            let inv = fq.inv(self.get(r, c));
            if inv != 1 {
                for j in c..self.cols {
                    let v = self.get(r, j);
                    self.set(r, j, fq.mul(v, inv));
                }
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let f = self.get(i, c);
                if f == 0 {
                    continue;
                }
                for j in c..self.cols {
                    let v = self.get(i, j);
                    let sub = fq.mul(f, self.get(r, j));
                    self.set(i, j, fq.sub(v, sub));
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Basis of the right kernel {x : Ax = 0}, deterministic: one vector per
    /// free column in increasing column order.
    pub fn kernel_basis(&self) -> Vec<Vec<u64>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let fq = &self.fq;
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if is_pivot[free] {
                continue;
            }
            let mut v = vec![0u64; self.cols];
            v[free] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                // x_pc = -sum over free columns of entry * x_free
                v[pc] = fq.neg(m.get(r, free));
            }
            basis.push(v);
        }
        basis
    }

    /// Solves Ax = b; returns None when inconsistent. When the solution is not
    /// unique, free variables are set to zero.
    pub fn solve(&self, b: &[u64]) -> Option<Vec<u64>> {
        assert_eq!(b.len(), self.rows);
        let fq = &self.fq;
        let mut aug = FqMat::zeros(fq, self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c));
            }
            aug.set(r, self.cols, b[r]);
        }
        let pivots = aug.rref();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![0u64; self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = aug.get(r, self.cols);
        }
        Some(x)
    }

    /// Inverse of a square matrix, or None if singular.
    pub fn inverse(&self) -> Option<FqMat> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let fq = &self.fq;
        let mut aug = FqMat::zeros(fq, n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c));
            }
            aug.set(r, n + r, 1);
        }
        let pivots = aug.rref();
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &c)| c != i) {
            return None;
        }
        let mut out = FqMat::zeros(fq, n, n);
        for r in 0..n {
            for c in 0..n {
                out.set(r, c, aug.get(r, n + c));
            }
        }
        Some(out)
    }
}
