//! Finite fields F_{q^n} with deterministic moduli, Frobenius, subfield
//! embeddings, and norms.
//!
//! Every context is realized absolutely as F_p[y]/(G) over its prime field,
//! with G monic irreducible. When a modulus is supplied (e.g. A/p built as
//! F_q[T]/(p)), G is that modulus, so coefficient vectors match the power
//! basis of t = class of T exactly. When no modulus is given, G is the
//! lexicographically smallest monic irreducible of the right degree
//! (coefficients compared low-degree-first as integers), so every run of the
//! artifact reproduces the same encodings. Embeddings between towers follow
//! construction chains; off-chain embeddings pick the smallest root of the
//! sub-modulus and are cached.

pub mod fpoly;
pub mod poly;
pub mod prime;

use crate::error::{Error, Result};
use crate::linalg::{FqMat, SmallFq};
use prime::{prime_power_decompose, PrimeTables};
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

pub use poly::{factor_poly, roots_in, Factorization, Poly};

/// Element of a `FieldCtx`: coefficient vector over the prime field with
/// respect to the power basis of the absolute modulus, always of full length.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldElem(pub(crate) Vec<u64>);

impl FieldElem {
    pub fn coeffs(&self) -> &[u64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// Linear map between the absolute coordinate spaces of two contexts.
#[derive(Debug)]
pub struct EmbedMap {
    pub src_deg: usize,
    pub dst_deg: usize,
    /// dst_deg x src_deg, row-major, over the common prime field.
    mat: Vec<u64>,
    prime: u64,
}

impl EmbedMap {
    fn identity(deg: usize, prime: u64) -> Self {
        let mut mat = vec![0u64; deg * deg];
        for i in 0..deg {
            mat[i * deg + i] = 1;
        }
        Self { src_deg: deg, dst_deg: deg, mat, prime }
    }

    fn from_columns(cols: &[FieldElem], dst_deg: usize, prime: u64) -> Self {
        let src_deg = cols.len();
        let mut mat = vec![0u64; dst_deg * src_deg];
        for (j, col) in cols.iter().enumerate() {
            for i in 0..dst_deg {
                mat[i * src_deg + j] = col.0[i];
            }
        }
        Self { src_deg, dst_deg, mat, prime }
    }

    fn compose(outer: &EmbedMap, inner: &EmbedMap) -> EmbedMap {
        assert_eq!(outer.src_deg, inner.dst_deg);
        let t = PrimeTables::new(outer.prime);
        let mut mat = vec![0u64; outer.dst_deg * inner.src_deg];
        for i in 0..outer.dst_deg {
            for k in 0..outer.src_deg {
                let a = outer.mat[i * outer.src_deg + k];
                if a == 0 {
                    continue;
                }
                for j in 0..inner.src_deg {
                    let b = inner.mat[k * inner.src_deg + j];
                    if b != 0 {
                        let idx = i * inner.src_deg + j;
                        mat[idx] = t.add(mat[idx], t.mul(a, b));
                    }
                }
            }
        }
        EmbedMap { src_deg: inner.src_deg, dst_deg: outer.dst_deg, mat, prime: outer.prime }
    }

    pub fn apply(&self, a: &FieldElem) -> FieldElem {
        assert_eq!(a.0.len(), self.src_deg);
        let t = PrimeTables::new(self.prime);
        let mut out = vec![0u64; self.dst_deg];
        for (j, &c) in a.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for i in 0..self.dst_deg {
                let m = self.mat[i * self.src_deg + j];
                if m != 0 {
                    out[i] = t.add(out[i], t.mul(m, c));
                }
            }
        }
        FieldElem(out)
    }

    /// Preimage under the embedding, if the element lies in the image.
    pub fn pullback(&self, a: &FieldElem) -> Option<FieldElem> {
        let fq = SmallFq::new_prime(self.prime);
        let mut m = FqMat::zeros(&fq, self.dst_deg, self.src_deg);
        m.data.copy_from_slice(&self.mat);
        m.solve(&a.0).map(FieldElem)
    }
}

struct BaseLink {
    base: Arc<FieldCtx>,
    embed: Arc<EmbedMap>,
}

/// F_q-structure data for contexts whose ground field F_q is not prime.
struct GroundData {
    ground: Arc<FieldCtx>,
    /// F_q-basis of the context (length n), as context elements.
    fq_basis: Vec<FieldElem>,
    /// abs_deg x abs_deg over the prime field: absolute coordinates ->
    /// stacked ground coordinates (n blocks of e prime digits).
    to_stacked: Vec<u64>,
    from_stacked: Vec<u64>,
}

/// A finite field F_{q^n} over the ground field F_q (q = p^e).
pub struct FieldCtx {
    p0: u64,
    e: usize,
    n: usize,
    abs_deg: usize,
    q: u64,
    abs_modulus: Vec<u64>,
    tables: PrimeTables,
    /// y^{abs_deg + i} mod G, padded to abs_deg, for i in 0..abs_deg-1.
    red_rows: Vec<Vec<u64>>,
    /// Row-major abs_deg x abs_deg matrix of x -> x^q over the prime field.
    frob_q: OnceLock<Vec<u64>>,
    gen_elem: FieldElem,
    base: Option<BaseLink>,
    ground: Option<GroundData>,
    /// Render elements as powers of the generator (quotient contexts A/p).
    t_label: bool,
    embed_cache: Mutex<HashMap<Vec<u64>, Arc<EmbedMap>>>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "FieldCtx(p={}, q={}, n={}, abs_deg={})",
            self.p0, self.q, self.n, self.abs_deg
        )
    }
}

impl FieldCtx {
    fn new_raw(
        p0: u64,
        e: usize,
        n: usize,
        abs_modulus: Vec<u64>,
        t_label: bool,
    ) -> FieldCtx {
        let abs_deg = abs_modulus.len() - 1;
        assert_eq!(abs_deg, e * n);
        let tables = PrimeTables::new(p0);
        assert_eq!(*abs_modulus.last().unwrap(), 1, "modulus must be monic");
        // reduction rows: y^{abs_deg+i} mod G for i in 0..abs_deg-1
        let mut red_rows = Vec::with_capacity(abs_deg.saturating_sub(1));
        let mut cur = {
            let mut v = vec![0u64; abs_deg + 1];
            v[abs_deg] = 1;
            fpoly::rem(&tables, &v, &abs_modulus)
        };
        for _ in 0..abs_deg.saturating_sub(1) {
            let mut padded = cur.clone();
            padded.resize(abs_deg, 0);
            red_rows.push(padded);
            let mut shifted = vec![0u64];
            shifted.extend_from_slice(&cur);
            cur = fpoly::rem(&tables, &shifted, &abs_modulus);
        }
        let gen_elem = if abs_deg == 1 {
            // the class of y in F_p[y]/(y + c) is the constant -c
            FieldElem(vec![tables.neg(abs_modulus[0])])
        } else {
            let mut v = vec![0u64; abs_deg];
            v[1] = 1;
            FieldElem(v)
        };
        let q = (0..e).fold(1u64, |acc, _| acc * p0);
        FieldCtx {
            p0,
            e,
            n,
            abs_deg,
            q,
            abs_modulus,
            tables,
            red_rows,
            frob_q: OnceLock::new(),
            gen_elem,
            base: None,
            ground: None,
            t_label,
            embed_cache: Mutex::new(HashMap::new()),
        }
    }

    // ----- structural accessors -----

    pub fn characteristic(&self) -> u64 {
        self.p0
    }

    /// Cardinality of the ground field F_q.
    pub fn ground_card(&self) -> u64 {
        self.q
    }

    /// Extension degree over the ground field F_q.
    pub fn extension_degree(&self) -> usize {
        self.n
    }

    /// Degree over the prime field.
    pub fn abs_degree(&self) -> usize {
        self.abs_deg
    }

    pub fn abs_modulus(&self) -> &[u64] {
        &self.abs_modulus
    }

    pub fn prime_tables(&self) -> &PrimeTables {
        &self.tables
    }

    pub fn cardinality_u128(&self) -> Option<u128> {
        let mut acc: u128 = 1;
        for _ in 0..self.abs_deg {
            acc = acc.checked_mul(self.p0 as u128)?;
        }
        Some(acc)
    }

    pub fn same_field(a: &Arc<FieldCtx>, b: &Arc<FieldCtx>) -> bool {
        Arc::ptr_eq(a, b) || (a.p0 == b.p0 && a.abs_modulus == b.abs_modulus && a.e == b.e)
    }

    // ----- element constructors -----

    pub fn zero(&self) -> FieldElem {
        FieldElem(vec![0; self.abs_deg])
    }

    pub fn one(&self) -> FieldElem {
        let mut v = vec![0; self.abs_deg];
        v[0] = 1;
        FieldElem(v)
    }

    /// Class of the modulus variable (t in A/p; the tower generator otherwise).
    pub fn gen(&self) -> FieldElem {
        self.gen_elem.clone()
    }

    /// Constant from the prime subfield.
    pub fn from_prime(&self, c: u64) -> FieldElem {
        let mut v = vec![0; self.abs_deg];
        v[0] = c % self.p0;
        FieldElem(v)
    }

    /// Element from absolute coordinates (padded or trimmed to full length).
    pub fn elem(&self, mut coeffs: Vec<u64>) -> FieldElem {
        for c in coeffs.iter_mut() {
            *c %= self.p0;
        }
        coeffs.resize(self.abs_deg, 0);
        FieldElem(coeffs)
    }

    // ----- arithmetic -----

    pub fn add(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        let t = &self.tables;
        FieldElem(a.0.iter().zip(&b.0).map(|(&x, &y)| t.add(x, y)).collect())
    }

    pub fn sub(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        let t = &self.tables;
        FieldElem(a.0.iter().zip(&b.0).map(|(&x, &y)| t.sub(x, y)).collect())
    }

    pub fn neg(&self, a: &FieldElem) -> FieldElem {
        let t = &self.tables;
        FieldElem(a.0.iter().map(|&x| t.neg(x)).collect())
    }

    pub fn scale(&self, c: u64, a: &FieldElem) -> FieldElem {
        let t = &self.tables;
        FieldElem(a.0.iter().map(|&x| t.mul(c, x)).collect())
    }

    pub fn mul(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        let n = self.abs_deg;
        debug_assert_eq!(a.0.len(), n);
        debug_assert_eq!(b.0.len(), n);
        let t = &self.tables;
        if n == 1 {
            return FieldElem(vec![t.mul(a.0[0], b.0[0])]);
        }
        let mut prod = vec![0u64; 2 * n - 1];
        for (i, &x) in a.0.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.0.iter().enumerate() {
                if y != 0 {
                    prod[i + j] = t.add(prod[i + j], t.mul(x, y));
                }
            }
        }
        // reduce overflow coefficients via precomputed rows
        for i in (n..2 * n - 1).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            prod[i] = 0;
            let row = &self.red_rows[i - n];
            for (k, &r) in row.iter().enumerate() {
                if r != 0 {
                    prod[k] = t.add(prod[k], t.mul(c, r));
                }
            }
        }
        prod.truncate(n);
        FieldElem(prod)
    }

    pub fn inv(&self, a: &FieldElem) -> Option<FieldElem> {
        if a.is_zero() {
            return None;
        }
        let t = &self.tables;
        // extended Euclid on (a, G) over F_p
        let mut r0: Vec<u64> = a.0.clone();
        fpoly::trim(&mut r0);
        let mut r1 = self.abs_modulus.clone();
        let mut s0: Vec<u64> = vec![1];
        let mut s1: Vec<u64> = vec![];
        while !r1.is_empty() {
            let (q, r) = fpoly::divrem(t, &r0, &r1);
            let qs1 = fpoly::mul(t, &q, &s1);
            let s = fpoly::sub(t, &s0, &qs1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        // r0 = gcd (a unit since G is irreducible and a != 0)
        debug_assert_eq!(r0.len(), 1);
        let g_inv = t.inv(r0[0]);
        let mut out: Vec<u64> = s0.iter().map(|&c| t.mul(c, g_inv)).collect();
        out.resize(self.abs_deg, 0);
        Some(FieldElem(out))
    }

    pub fn pow(&self, a: &FieldElem, mut e: u128) -> FieldElem {
        let mut acc = self.one();
        let mut b = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &b);
            }
            b = self.mul(&b, &b);
            e >>= 1;
        }
        acc
    }

    fn frob_q_matrix(&self) -> &Vec<u64> {
        self.frob_q.get_or_init(|| {
            let n = self.abs_deg;
            let t = &self.tables;
            // z = y^q mod G, columns j = z^j = y^{qj} mod G
            let z = fpoly::powmod_x(t, self.q as u128, &self.abs_modulus);
            let mut mat = vec![0u64; n * n];
            let mut col: Vec<u64> = vec![1];
            for j in 0..n {
                for (i, &c) in col.iter().enumerate() {
                    mat[i * n + j] = c;
                }
                if j + 1 < n {
                    col = fpoly::mulmod(t, &col, &z, &self.abs_modulus);
                }
            }
            mat
        })
    }

    /// a^{q^iters}: the q-power Frobenius iterated. F_q-linear and a field
    /// automorphism.
    pub fn frobenius(&self, a: &FieldElem, iters: usize) -> FieldElem {
        let n = self.abs_deg;
        let mat = self.frob_q_matrix();
        let t = &self.tables;
        let mut cur = a.0.clone();
        for _ in 0..iters % self.n.max(1) {
            let mut next = vec![0u64; n];
            for (j, &c) in cur.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                for i in 0..n {
                    let m = mat[i * n + j];
                    if m != 0 {
                        next[i] = t.add(next[i], t.mul(m, c));
                    }
                }
            }
            cur = next;
        }
        FieldElem(cur)
    }

    /// Canonical total order: coefficients compared low-degree-first as
    /// integers (i.e. the vector read as a base-p number).
    pub fn cmp_elems(a: &FieldElem, b: &FieldElem) -> std::cmp::Ordering {
        debug_assert_eq!(a.0.len(), b.0.len());
        for i in (0..a.0.len()).rev() {
            match a.0[i].cmp(&b.0[i]) {
                std::cmp::Ordering::Equal => continue,
                other => return other,
            }
        }
        std::cmp::Ordering::Equal
    }

    // ----- the F_q-coordinate view -----

    /// Number of F_q-coordinates of an element (= n).
    pub fn fq_dim(&self) -> usize {
        self.n
    }

    /// F_q-basis of the context as context elements.
    pub fn fq_basis(&self) -> Vec<FieldElem> {
        match &self.ground {
            None => (0..self.abs_deg)
                .map(|i| {
                    let mut v = vec![0; self.abs_deg];
                    v[i] = 1;
                    FieldElem(v)
                })
                .collect(),
            Some(g) => g.fq_basis.clone(),
        }
    }

    /// Coordinates of `a` over F_q, each encoded as an index in `0..q`
    /// (the ground element's coefficient vector read as a base-p integer).
    pub fn fq_coords(&self, a: &FieldElem) -> Vec<u64> {
        match &self.ground {
            None => a.0.clone(),
            Some(g) => {
                let t = &self.tables;
                let n = self.abs_deg;
                let mut stacked = vec![0u64; n];
                for (j, &c) in a.0.iter().enumerate() {
                    if c == 0 {
                        continue;
                    }
                    for i in 0..n {
                        let m = g.to_stacked[i * n + j];
                        if m != 0 {
                            stacked[i] = t.add(stacked[i], t.mul(m, c));
                        }
                    }
                }
                stacked
                    .chunks(self.e)
                    .map(|chunk| {
                        chunk
                            .iter()
                            .rev()
                            .fold(0u64, |acc, &d| acc * self.p0 + d)
                    })
                    .collect()
            }
        }
    }

    /// Inverse of `fq_coords`.
    pub fn from_fq_coords(&self, coords: &[u64]) -> FieldElem {
        assert_eq!(coords.len(), self.n);
        match &self.ground {
            None => FieldElem(coords.to_vec()),
            Some(g) => {
                let t = &self.tables;
                let n = self.abs_deg;
                let mut stacked = vec![0u64; n];
                for (v, &idx) in coords.iter().enumerate() {
                    let mut rem = idx;
                    for u in 0..self.e {
                        stacked[v * self.e + u] = rem % self.p0;
                        rem /= self.p0;
                    }
                }
                let mut out = vec![0u64; n];
                for (j, &c) in stacked.iter().enumerate() {
                    if c == 0 {
                        continue;
                    }
                    for i in 0..n {
                        let m = g.from_stacked[i * n + j];
                        if m != 0 {
                            out[i] = t.add(out[i], t.mul(m, c));
                        }
                    }
                }
                FieldElem(out)
            }
        }
    }

    /// The ground element with the given index (for scalar loops).
    pub fn scalar_from_index(&self, idx: u64) -> FieldElem {
        let mut coords = vec![0u64; self.n];
        coords[0] = idx;
        // index encodes the ground element; embed it as the constant block
        match &self.ground {
            None => FieldElem({
                let mut v = vec![0; self.abs_deg];
                v[0] = idx % self.p0;
                v
            }),
            Some(_) => {
                // the F_q-basis starts with 1, so coords = (idx, 0, ..) works
                // only if fq_basis[0] == 1; it is by construction.
                self.from_fq_coords(&coords)
            }
        }
    }

    /// Scalar tables for F_q element indices, for the linear-algebra layer.
    pub fn small_fq(self: &Arc<Self>) -> Arc<SmallFq> {
        if self.e == 1 {
            return SmallFq::new_prime(self.p0);
        }
        let ground = &self.ground.as_ref().unwrap().ground;
        let q = self.q;
        let idx_to_elem: Vec<FieldElem> = (0..q)
            .map(|i| {
                let mut digits = Vec::with_capacity(ground.abs_deg);
                let mut rem = i;
                for _ in 0..ground.abs_deg {
                    digits.push(rem % self.p0);
                    rem /= self.p0;
                }
                FieldElem(digits)
            })
            .collect();
        let elem_to_idx = |e: &FieldElem| -> u64 {
            e.0.iter().rev().fold(0u64, |acc, &d| acc * self.p0 + d)
        };
        let mut add = vec![0u64; (q * q) as usize];
        let mut mul = vec![0u64; (q * q) as usize];
        let mut neg = vec![0u64; q as usize];
        let mut inv = vec![0u64; q as usize];
        for a in 0..q {
            neg[a as usize] = elem_to_idx(&ground.neg(&idx_to_elem[a as usize]));
            if a != 0 {
                inv[a as usize] = elem_to_idx(&ground.inv(&idx_to_elem[a as usize]).unwrap());
            }
            for b in 0..q {
                add[(a * q + b) as usize] =
                    elem_to_idx(&ground.add(&idx_to_elem[a as usize], &idx_to_elem[b as usize]));
                mul[(a * q + b) as usize] =
                    elem_to_idx(&ground.mul(&idx_to_elem[a as usize], &idx_to_elem[b as usize]));
            }
        }
        SmallFq::from_tables(q, add, mul, neg, inv)
    }

    // ----- embeddings -----

    /// Embedding of `src` into `self`. Follows construction chains when
    /// possible (so embeddings compose); otherwise picks the smallest root of
    /// the source modulus and caches the result.
    pub fn embed_from(self: &Arc<Self>, src: &Arc<FieldCtx>) -> Result<Arc<EmbedMap>> {
        if src.p0 != self.p0 {
            return Err(Error::RingMismatch);
        }
        if FieldCtx::same_field(self, src) {
            return Ok(Arc::new(EmbedMap::identity(self.abs_deg, self.p0)));
        }
        if self.abs_deg % src.abs_deg != 0 {
            return Err(Error::NonDivisibleDegrees {
                big: self.abs_deg,
                small: src.abs_deg,
            });
        }
        if let Some(link) = &self.base {
            if link.base.abs_deg % src.abs_deg == 0 {
                let inner = link.base.embed_from(src)?;
                return Ok(Arc::new(EmbedMap::compose(&link.embed, &inner)));
            }
        }
        // off-chain: smallest root of the source modulus, cached
        {
            let cache = self.embed_cache.lock().unwrap();
            if let Some(e) = cache.get(&src.abs_modulus) {
                return Ok(e.clone());
            }
        }
        let lifted = Poly::from_prime_coeffs(self, &src.abs_modulus);
        let roots = poly::roots_in(&lifted, self)?;
        let root = roots.first().expect("subfield modulus must split").clone();
        let emb = Arc::new(embed_from_root(self, src.abs_deg, &root));
        self.embed_cache
            .lock()
            .unwrap()
            .insert(src.abs_modulus.clone(), emb.clone());
        Ok(emb)
    }

    // ----- rendering -----

    /// Human-readable form: comma-separated F_q digits (low degree first), or
    /// t^k when the context is a quotient A/p and the element is a power of
    /// the generator.
    pub fn render(&self, a: &FieldElem) -> String {
        if a.is_zero() {
            return "0".to_string();
        }
        if a == &self.one() {
            return "1".to_string();
        }
        if self.abs_deg == 1 {
            return a.0[0].to_string();
        }
        if self.t_label {
            if let Some(k) = self.dlog_of_gen_power(a) {
                return if k == 1 {
                    "t".to_string()
                } else {
                    format!("t^{k}")
                };
            }
        }
        format!(
            "[{}]",
            a.0.iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(",")
        )
    }

    /// Discrete log of `a` to base gen, if `a` lies in the cyclic group
    /// generated by gen. Bounded scan: group order is at most q^n - 1, which
    /// is small at desk scale.
    pub fn dlog_of_gen_power(&self, a: &FieldElem) -> Option<u128> {
        let card = self.cardinality_u128()?;
        if card > (1 << 24) {
            return None;
        }
        let g = self.gen();
        if g.is_zero() {
            return None;
        }
        let mut cur = self.one();
        for k in 0..card {
            if &cur == a {
                return Some(k);
            }
            cur = self.mul(&cur, &g);
            if cur == self.one() {
                break;
            }
        }
        if a == &self.one() {
            Some(0)
        } else {
            None
        }
    }
}

fn embed_from_root(dst: &Arc<FieldCtx>, src_deg: usize, root: &FieldElem) -> EmbedMap {
    let mut cols = Vec::with_capacity(src_deg);
    let mut cur = dst.one();
    for _ in 0..src_deg {
        cols.push(cur.clone());
        cur = dst.mul(&cur, root);
    }
    EmbedMap::from_columns(&cols, dst.abs_deg, dst.p0)
}

/// Builds the ground-coordinate data for a context with non-prime ground
/// field, given its F_q-basis.
fn build_ground_data(
    ctx: &Arc<FieldCtx>,
    ground: Arc<FieldCtx>,
    fq_basis: Vec<FieldElem>,
) -> Result<GroundData> {
    let e = ctx.e;
    let n = ctx.abs_deg;
    let emb = ctx.embed_from(&ground)?;
    let ground_basis_imgs: Vec<FieldElem> = (0..e)
        .map(|u| {
            let mut v = vec![0u64; ground.abs_deg];
            v[u] = 1;
            emb.apply(&FieldElem(v))
        })
        .collect();
    let fq_small = SmallFq::new_prime(ctx.p0);
    let mut m = FqMat::zeros(&fq_small, n, n);
    for (v, theta) in fq_basis.iter().enumerate() {
        for (u, g) in ground_basis_imgs.iter().enumerate() {
            let col = ctx.mul(g, theta);
            for i in 0..n {
                m.set(i, v * e + u, col.0[i]);
            }
        }
    }
    let minv = m.inverse().expect("F_q basis must be independent");
    Ok(GroundData {
        ground,
        fq_basis,
        to_stacked: minv.data,
        from_stacked: m.data,
    })
}

/// Constructs F_{q^n} over F_q. `q` must be a prime power. When `modulus` is
/// omitted the deterministic (lex-smallest) modulus is chosen; when supplied
/// it must be monic irreducible of degree n over F_q, and the context's
/// generator is the class of the modulus variable (so A/p has t = class of T).
pub fn make_field(q: u64, n: usize, modulus: Option<&Poly>) -> Result<Arc<FieldCtx>> {
    if n < 1 {
        return Err(Error::InvalidDegree(n));
    }
    let (p0, e32) = prime_power_decompose(q).ok_or(Error::NotPrimePower(q))?;
    let e = e32 as usize;
    if e == 1 {
        let abs_modulus = match modulus {
            None => {
                let t = PrimeTables::new(p0);
                fpoly::lex_smallest_irreducible(&t, n)
            }
            Some(m) => {
                let flat = m.to_prime_coeffs().ok_or_else(|| {
                    Error::Parse("modulus coefficients must lie in the prime field".into())
                })?;
                if flat.len() != n + 1 || *flat.last().unwrap() != 1 {
                    return Err(Error::Parse(format!(
                        "modulus must be monic of degree {n}"
                    )));
                }
                let t = PrimeTables::new(p0);
                if n > 1 && !fpoly::is_irreducible(&t, &flat) {
                    return Err(Error::ReducibleModulus { q, degree: n });
                }
                flat
            }
        };
        return Ok(Arc::new(FieldCtx::new_raw(
            p0,
            1,
            n,
            abs_modulus,
            modulus.is_some(),
        )));
    }
    // prime-power ground field: realize absolutely, then attach F_q structure
    let ground = make_field(p0, e, None)?;
    if n == 1 {
        return Ok(ground);
    }
    let t = PrimeTables::new(p0);
    let abs_modulus = fpoly::lex_smallest_irreducible(&t, e * n);
    let scratch = Arc::new(FieldCtx::new_raw(p0, e, n, abs_modulus.clone(), false));
    // generator: class of the supplied modulus variable, or the absolute gen
    let gen = match modulus {
        None => scratch.gen(),
        Some(m) => {
            if m.degree_over(&ground) != Some(n) || !m.is_monic_over(&ground) {
                return Err(Error::Parse(format!("modulus must be monic of degree {n}")));
            }
            if !poly::is_irreducible_over(m, &ground)? {
                return Err(Error::ReducibleModulus { q, degree: n });
            }
            let emb = scratch.embed_from(&ground)?;
            let lifted = m.map_coeffs(|c| emb.apply(c));
            let roots = poly::roots_in(&lifted, &scratch)?;
            roots
                .first()
                .cloned()
                .expect("irreducible modulus splits in the big field")
        }
    };
    let fq_basis: Vec<FieldElem> = {
        let mut basis = Vec::with_capacity(n);
        let mut cur = scratch.one();
        for _ in 0..n {
            basis.push(cur.clone());
            cur = scratch.mul(&cur, &gen);
        }
        basis
    };
    let gd = build_ground_data(&scratch, ground, fq_basis)?;
    // rebuild the context with all structure attached (coordinate data is
    // representation-based, so it carries over to the identical fresh context)
    let mut fresh = FieldCtx::new_raw(p0, e, n, abs_modulus, modulus.is_some());
    fresh.ground = Some(gd);
    fresh.gen_elem = gen;
    Ok(Arc::new(fresh))
}

/// Extends `base` by relative degree `r`, with the deterministic absolute
/// modulus and the smallest-root embedding of `base`.
pub fn extend_field(base: &Arc<FieldCtx>, r: usize) -> Result<Arc<FieldCtx>> {
    if r == 0 {
        return Err(Error::InvalidDegree(0));
    }
    if r == 1 {
        return Ok(base.clone());
    }
    let p0 = base.p0;
    let t = PrimeTables::new(p0);
    let abs_modulus = fpoly::lex_smallest_irreducible(&t, base.abs_deg * r);
    let scratch = Arc::new(FieldCtx::new_raw(
        p0,
        base.e,
        base.n * r,
        abs_modulus.clone(),
        false,
    ));
    let lifted = Poly::from_prime_coeffs(&scratch, &base.abs_modulus);
    let roots = poly::roots_in(&lifted, &scratch)?;
    let root = roots.first().expect("base modulus splits in the extension");
    let embed = Arc::new(embed_from_root(&scratch, base.abs_deg, root));
    let mut fresh = FieldCtx::new_raw(p0, base.e, base.n * r, abs_modulus, false);
    fresh.base = Some(BaseLink { base: base.clone(), embed });
    if base.e == 1 {
        return Ok(Arc::new(fresh));
    }
    let ctx = Arc::new(fresh);
    let base_gd = base.ground.as_ref().unwrap();
    let base_emb = ctx.embed_from(base)?;
    let mut fq_basis = Vec::with_capacity(ctx.n);
    let mut gen_pow = ctx.one();
    for _ in 0..r {
        for theta in &base_gd.fq_basis {
            fq_basis.push(ctx.mul(&base_emb.apply(theta), &gen_pow));
        }
        gen_pow = ctx.mul(&gen_pow, &ctx.gen());
    }
    let gd = build_ground_data(&ctx, base_gd.ground.clone(), fq_basis)?;
    let mut fresh = FieldCtx::new_raw(p0, base.e, base.n * r, ctx.abs_modulus.clone(), false);
    fresh.base = Some(BaseLink {
        base: base.clone(),
        embed: ctx.base.as_ref().unwrap().embed.clone(),
    });
    fresh.ground = Some(gd);
    Ok(Arc::new(fresh))
}

/// Iterated q-power map, spec operation form.
pub fn frobenius(ctx: &FieldCtx, a: &FieldElem, e: usize) -> FieldElem {
    ctx.frobenius(a, e)
}

/// Field norm from `src` down to `target`: the product of the Galois
/// conjugates over the target. The result is returned in target coordinates.
pub fn norm_to(
    src: &Arc<FieldCtx>,
    a: &FieldElem,
    target: &Arc<FieldCtx>,
) -> Result<FieldElem> {
    if src.p0 != target.p0 || src.e != target.e {
        return Err(Error::RingMismatch);
    }
    if src.n % target.n != 0 {
        return Err(Error::NonDivisibleDegrees {
            big: src.n,
            small: target.n,
        });
    }
    let sub_deg = target.n; // degree of target over F_q
    let steps = src.n / target.n;
    let mut acc = src.one();
    let mut conj = a.clone();
    for i in 0..steps {
        if i > 0 {
            conj = src.frobenius(&conj, sub_deg);
        }
        acc = src.mul(&acc, &conj);
    }
    let emb = src.embed_from(target)?;
    emb.pullback(&acc).ok_or_else(|| {
        Error::Unsupported("norm did not land in the embedded target field".into())
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_f3_with_modulus_y() {
        let f3 = make_field(3, 1, None).unwrap();
        assert_eq!(f3.abs_modulus(), &[0, 1]);
        assert_eq!(f3.abs_degree(), 1);
        let two = f3.from_prime(2);
        assert_eq!(f3.mul(&two, &two), f3.from_prime(1));
    }

    #[test]
    fn f9_has_lex_smallest_modulus_and_frobenius_cubes() {
        // Oracle: enumerate monic quadratics over F_3 low-first and find the
        // first irreducible by root absence; the context must use it.
        let mut expected = None;
        'outer: for code in 0..9u64 {
            let (c0, c1) = (code % 3, code / 3);
            if (0..3u64).all(|x| (c0 + c1 * x + x * x) % 3 != 0) {
                expected = Some(vec![c0, c1, 1]);
                break 'outer;
            }
        }
        let f9 = make_field(3, 2, None).unwrap();
        assert_eq!(f9.abs_modulus(), expected.unwrap().as_slice());
        // w^3 reduced mod w^2+1: w^3 = -w = 2w
        let w = f9.gen();
        let w3 = f9.pow(&w, 3);
        assert_eq!(f9.frobenius(&w, 1), w3);
        assert_eq!(f9.frobenius(&w, 1), f9.scale(2, &w));
    }

    #[test]
    fn frobenius_fixed_points_and_order() {
        let f81 = make_field(3, 4, None).unwrap();
        let a = f81.elem(vec![2, 1, 0, 2]);
        assert_eq!(f81.frobenius(&f81.one(), 5), f81.one());
        assert_eq!(f81.frobenius(&a, 4), a);
        // the map is additive and multiplicative
        let b = f81.elem(vec![1, 2, 2, 0]);
        assert_eq!(
            f81.frobenius(&f81.add(&a, &b), 1),
            f81.add(&f81.frobenius(&a, 1), &f81.frobenius(&b, 1))
        );
        assert_eq!(
            f81.frobenius(&f81.mul(&a, &b), 1),
            f81.mul(&f81.frobenius(&a, 1), &f81.frobenius(&b, 1))
        );
        // fixed field of one Frobenius step has exactly q elements
        let mut fixed = 0;
        for code in 0..81u64 {
            let v = f81.elem(vec![code % 3, (code / 3) % 3, (code / 9) % 3, code / 27]);
            if f81.frobenius(&v, 1) == v {
                fixed += 1;
            }
        }
        assert_eq!(fixed, 3);
    }

    #[test]
    fn field_axioms_random_sample() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed_0001);
        for (q, n) in [(2u64, 5usize), (3, 3), (5, 2), (9, 2)] {
            let f = make_field(q, n, None).unwrap();
            for _ in 0..50 {
                let r = |rng: &mut rand_chacha::ChaCha8Rng| {
                    f.elem((0..f.abs_degree()).map(|_| rng.gen_range(0..f.characteristic())).collect())
                };
                let (a, b, c) = (r(&mut rng), r(&mut rng), r(&mut rng));
                assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
                assert_eq!(
                    f.mul(&a, &f.add(&b, &c)),
                    f.add(&f.mul(&a, &b), &f.mul(&a, &c))
                );
                if !a.is_zero() {
                    assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), f.one());
                }
            }
        }
    }

    #[test]
    fn embeddings_compose_along_towers() {
        let f3 = make_field(3, 1, None).unwrap();
        let a = make_field(3, 2, None).unwrap();
        let b = extend_field(&a, 2).unwrap(); // F_81 over F_9
        let c = extend_field(&b, 2).unwrap(); // F_6561
        let e_ab = b.embed_from(&a).unwrap();
        let e_bc = c.embed_from(&b).unwrap();
        let e_ac = c.embed_from(&a).unwrap();
        for code in 0..9u64 {
            let x = a.elem(vec![code % 3, code / 3]);
            assert_eq!(e_bc.apply(&e_ab.apply(&x)), e_ac.apply(&x));
        }
        // embeddings are injective ring homomorphisms
        let x = a.elem(vec![1, 2]);
        let y = a.elem(vec![2, 2]);
        assert_eq!(
            e_ab.apply(&a.mul(&x, &y)),
            b.mul(&e_ab.apply(&x), &e_ab.apply(&y))
        );
        assert_eq!(
            e_ab.apply(&a.add(&x, &y)),
            b.add(&e_ab.apply(&x), &e_ab.apply(&y))
        );
        let e_3a = a.embed_from(&f3).unwrap();
        assert_eq!(e_3a.apply(&f3.from_prime(2)), a.from_prime(2));
    }

    #[test]
    fn norm_of_generator_down_one_step() {
        // norm of g in F_{q^2} over F_q is g^{q+1}
        let f9 = make_field(3, 2, None).unwrap();
        let f3 = make_field(3, 1, None).unwrap();
        let g = f9.gen();
        let norm = norm_to(&f9, &g, &f3).unwrap();
        let emb = f9.embed_from(&f3).unwrap();
        assert_eq!(emb.apply(&norm), f9.pow(&g, 4));
        // norm of 1 is 1 and the norm is multiplicative
        assert_eq!(norm_to(&f9, &f9.one(), &f3).unwrap(), f3.one());
        let a = f9.elem(vec![1, 1]);
        let b = f9.elem(vec![2, 1]);
        let nab = norm_to(&f9, &f9.mul(&a, &b), &f3).unwrap();
        let na = norm_to(&f9, &a, &f3).unwrap();
        let nb = norm_to(&f9, &b, &f3).unwrap();
        assert_eq!(nab, f3.mul(&na, &nb));
    }

    #[test]
    fn prime_power_ground_field_coords() {
        // F_81 over F_9: two F_9-coordinates per element
        let f = make_field(9, 2, None).unwrap();
        assert_eq!(f.fq_dim(), 2);
        assert_eq!(f.ground_card(), 9);
        let a = f.elem(vec![1, 2, 0, 1]);
        let coords = f.fq_coords(&a);
        assert_eq!(coords.len(), 2);
        assert_eq!(f.from_fq_coords(&coords), a);
        let fq = f.small_fq();
        assert_eq!(fq.q, 9);
        // table arithmetic agrees with the ground context
        for x in 0..9 {
            for y in 0..9 {
                let gx = f.scalar_from_index(x);
                let gy = f.scalar_from_index(y);
                let prod = f.mul(&gx, &gy);
                let pidx = f.fq_coords(&prod)[0];
                assert_eq!(pidx, fq.mul(x, y));
            }
        }
    }
}
