//! Morphism spaces M_s(phi, psi) = {u in Hom(phi, psi) : deg_tau u <= s},
//! computed as nested F_q-bases by solving the linearized commutation system
//! u phi_T = psi_T u over a working field k.
//!
//! Writing u = sum u_i tau^i with unknowns u_i in k and expanding both
//! products, the coefficient of tau^n gives one k-equation per n <= s + r;
//! over an F_q-basis of k this becomes a homogeneous F_q-linear system with
//! (s+1)m unknowns and (s+r+1)m equations, m = [k : F_q]. Multiplication by
//! constants and the q-power Frobenius are realized as m x m matrices over
//! F_q. Dense Gaussian elimination with first-nonzero pivoting makes the
//! echelon kernel basis, and hence the nested basis, deterministic.

use crate::drinfeld::{ClassSet, DrinfeldModule};
use crate::error::{Error, Result};
use crate::gf::{self, FieldCtx, FieldElem};
use crate::linalg::{FqMat, SmallFq};
use crate::polyring::PolyA;
use crate::skew::SkewPoly;
use std::sync::Arc;

/// Nested F_q-bases of M_0 <= M_1 <= ... <= M_s inside Hom(phi, psi).
pub struct HomSpace {
    pub source: DrinfeldModule,
    pub target: DrinfeldModule,
    pub field: Arc<FieldCtx>,
    /// [k : F_q].
    pub m: usize,
    pub fq: Arc<SmallFq>,
    /// Nested basis; element i enters at depth `intro_depth[i]` and has that
    /// exact tau-degree.
    basis: Vec<SkewPoly<FieldCtx>>,
    intro_depth: Vec<usize>,
    /// dims[s] = m_s for 0 <= s <= depth().
    pub dims: Vec<usize>,
    /// Scalar table: F_q index -> field element.
    scalars: Vec<FieldElem>,
}

impl HomSpace {
    pub fn depth(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn dim(&self, s: usize) -> usize {
        self.dims[s]
    }

    /// m_{s-1} with the m_{-1} = 0 convention.
    pub fn dim_below(&self, s: usize) -> usize {
        if s == 0 {
            0
        } else {
            self.dims[s - 1]
        }
    }

    pub fn basis(&self) -> &[SkewPoly<FieldCtx>] {
        &self.basis
    }

    pub fn basis_at_depth(&self, s: usize) -> &[SkewPoly<FieldCtx>] {
        &self.basis[..self.dims[s]]
    }

    /// Linear combination of the nested basis by F_q coordinate indices.
    pub fn element_from_coords(&self, coords: &[u64]) -> SkewPoly<FieldCtx> {
        let ring = self.field.as_ref();
        let mut acc: SkewPoly<FieldCtx> = SkewPoly::zero();
        for (i, &c) in coords.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let term = self.basis[i].scale(&self.scalars[c as usize], ring);
            acc = acc.add(&term, ring);
        }
        acc
    }

    /// Visits elements of M_s of exact tau-degree s. With `projective` set,
    /// one representative per F_q^x-orbit is visited (first nonzero
    /// coordinate normalized to 1); otherwise all q^{m_s} - q^{m_{s-1}}
    /// elements.
    pub fn scan_exact_degree<F: FnMut(&[u64], &SkewPoly<FieldCtx>)>(
        &self,
        s: usize,
        projective: bool,
        mut visit: F,
    ) {
        let n = self.dims[s];
        let lower = self.dim_below(s);
        if n == lower {
            return;
        }
        let q = self.fq.q;
        let mut coords = vec![0u64; n];
        for pivot in 0..n {
            let pivot_vals: Vec<u64> = if projective {
                vec![1]
            } else {
                (1..q).collect()
            };
            let free = n - pivot - 1;
            let total: u64 = q.checked_pow(free as u32).expect("enumeration too large");
            for &pv in &pivot_vals {
                for code in 0..total {
                    for c in coords.iter_mut() {
                        *c = 0;
                    }
                    coords[pivot] = pv;
                    let mut rem = code;
                    for k in 0..free {
                        coords[pivot + 1 + k] = rem % q;
                        rem /= q;
                    }
                    // exact degree s means: some coordinate in the tail block
                    // (indices >= lower) is nonzero
                    if pivot < lower && coords[lower..].iter().all(|&c| c == 0) {
                        continue;
                    }
                    let u = self.element_from_coords(&coords);
                    debug_assert_eq!(u.deg_tau(), Some(s));
                    visit(&coords, &u);
                }
            }
        }
    }

    /// All elements of exact tau-degree s (the set difference M_s minus
    /// M_{s-1}).
    pub fn exact_degree_elements(&self, s: usize) -> Vec<SkewPoly<FieldCtx>> {
        let mut out = Vec::new();
        self.scan_exact_degree(s, false, |_, u| out.push(u.clone()));
        out
    }
}

struct MulTables {
    m: usize,
    fq: Arc<SmallFq>,
    fq_basis: Vec<FieldElem>,
}

impl MulTables {
    fn new(k: &Arc<FieldCtx>, fq: &Arc<SmallFq>) -> Self {
        MulTables {
            m: k.fq_dim(),
            fq: fq.clone(),
            fq_basis: k.fq_basis(),
        }
    }

    /// m x m matrix over F_q of x -> c * x.
    fn mul_mat(&self, k: &FieldCtx, c: &FieldElem) -> FqMat {
        let mut out = FqMat::zeros(&self.fq, self.m, self.m);
        for (j, b) in self.fq_basis.iter().enumerate() {
            let col = k.fq_coords(&k.mul(c, b));
            for i in 0..self.m {
                out.set(i, j, col[i]);
            }
        }
        out
    }

    /// m x m matrix over F_q of x -> x^{q^e}.
    fn frob_mat(&self, k: &FieldCtx, e: usize) -> FqMat {
        let mut out = FqMat::zeros(&self.fq, self.m, self.m);
        for (j, b) in self.fq_basis.iter().enumerate() {
            let col = k.fq_coords(&k.frobenius(b, e));
            for i in 0..self.m {
                out.set(i, j, col[i]);
            }
        }
        out
    }
}

/// Solves for M_s(phi, psi) over the field `k`, producing nested bases up to
/// depth s. Both modules are rebased into k.
pub fn solve_hom_space(
    source: &DrinfeldModule,
    target: &DrinfeldModule,
    s_max: usize,
    k: &Arc<FieldCtx>,
) -> Result<HomSpace> {
    let src = source.rebase(k)?;
    let tgt = target.rebase(k)?;
    let m = k.fq_dim();
    let fq = k.small_fq();
    let tables = MulTables::new(k, &fq);
    let r_f = src.rank;
    let r_g = tgt.rank;
    let rmax = r_f.max(r_g);
    // twisted source constants f_a^{q^j} and their mul-matrices
    let mut f_tw_mats: Vec<Vec<FqMat>> = Vec::with_capacity(r_f + 1);
    for a in 0..=r_f {
        let mut per_j = Vec::with_capacity(s_max + 1);
        let mut cur = src.coeffs[a].clone();
        for j in 0..=s_max {
            if j > 0 {
                cur = k.frobenius(&cur, 1);
            }
            per_j.push(tables.mul_mat(k, &cur));
        }
        f_tw_mats.push(per_j);
    }
    let g_mats: Vec<FqMat> = (0..=r_g).map(|b| tables.mul_mat(k, &tgt.coeffs[b])).collect();
    let frob_pows: Vec<FqMat> = (0..=rmax).map(|e| tables.frob_mat(k, e)).collect();
    // g_b * frob^b blocks are reused across equations
    let g_frob: Vec<FqMat> = (0..=r_g).map(|b| g_mats[b].matmul(&frob_pows[b])).collect();

    let scalars: Vec<FieldElem> = (0..fq.q).map(|i| k.scalar_from_index(i)).collect();

    let mut basis: Vec<SkewPoly<FieldCtx>> = Vec::new();
    let mut intro_depth: Vec<usize> = Vec::new();
    let mut dims: Vec<usize> = Vec::new();
    // rows of the running echelon form for nested-basis extension, with the
    // coordinates padded to the current depth
    let mut echelon: Vec<Vec<u64>> = Vec::new();

    for s in 0..=s_max {
        let cols = (s + 1) * m;
        let rows = (s + rmax + 1) * m;
        let mut sys = FqMat::zeros(&fq, rows, cols);
        for n in 0..=(s + rmax) {
            let j_lo = n.saturating_sub(rmax);
            for j in j_lo..=n.min(s) {
                let a = n - j;
                let mut block: Option<FqMat> = None;
                if a <= r_f {
                    block = Some(f_tw_mats[a][j].clone());
                }
                if a <= r_g {
                    let gb = &g_frob[a];
                    block = Some(match block {
                        None => {
                            let mut neg = gb.clone();
                            for v in neg.data.iter_mut() {
                                *v = fq.neg(*v);
                            }
                            neg
                        }
                        Some(mut f_part) => {
                            for (x, y) in f_part.data.iter_mut().zip(&gb.data) {
                                *x = fq.sub(*x, *y);
                            }
                            f_part
                        }
                    });
                }
                if let Some(b) = block {
                    for bi in 0..m {
                        for bj in 0..m {
                            let v = b.get(bi, bj);
                            if v != 0 {
                                sys.set(n * m + bi, j * m + bj, v);
                            }
                        }
                    }
                }
            }
        }
        let kernel = sys.kernel_basis();
        // pad the running echelon rows to the new width
        for row in echelon.iter_mut() {
            row.resize(cols, 0);
        }
        // extend: reduce each kernel vector against the echelon; new pivots
        // become new basis vectors (they have exact degree s)
        for vec in kernel {
            let mut v = vec;
            reduce_row(&fq, &echelon, &mut v);
            if let Some(pos) = v.iter().position(|&c| c != 0) {
                let inv = fq.inv(v[pos]);
                if inv != 1 {
                    for c in v.iter_mut() {
                        *c = fq.mul(*c, inv);
                    }
                }
                // build the skew polynomial from coefficient blocks
                let mut coeffs = Vec::with_capacity(s + 1);
                for blk in 0..=s {
                    let idx_coords: Vec<u64> = v[blk * m..(blk + 1) * m].to_vec();
                    coeffs.push(k.from_fq_coords(&idx_coords));
                }
                let u = SkewPoly::from_coeffs(k.as_ref(), coeffs);
                insert_sorted(&fq, &mut echelon, v);
                basis.push(u);
                intro_depth.push(s);
            }
        }
        dims.push(basis.len());
    }
    Ok(HomSpace {
        source: src,
        target: tgt,
        field: k.clone(),
        m,
        fq,
        basis,
        intro_depth,
        dims,
        scalars,
    })
}

fn reduce_row(fq: &SmallFq, echelon: &[Vec<u64>], v: &mut [u64]) {
    for row in echelon {
        let pos = row.iter().position(|&c| c != 0).unwrap();
        if pos < v.len() && v[pos] != 0 {
            let f = v[pos]; // row is normalized with leading 1
            for (x, &y) in v.iter_mut().zip(row.iter()) {
                *x = fq.sub(*x, fq.mul(f, y));
            }
        }
    }
}

fn insert_sorted(fq: &SmallFq, echelon: &mut Vec<Vec<u64>>, v: Vec<u64>) {
    let _ = fq;
    let pos = v.iter().position(|&c| c != 0).unwrap();
    let at = echelon
        .iter()
        .position(|r| r.iter().position(|&c| c != 0).unwrap() > pos)
        .unwrap_or(echelon.len());
    echelon.insert(at, v);
}

/// Prop 2.5 field selection for a pair of supersingular classes: F_{p^2} for
/// endomorphisms or x-model pairs with matching norms, F_{p^{2(q-1)}}
/// otherwise.
pub fn working_field(cs: &ClassSet, i: usize, j: usize) -> Result<Arc<FieldCtx>> {
    if i == j {
        return Ok(cs.fp2.clone());
    }
    let (ci, cj) = (&cs.classes[i], &cs.classes[j]);
    if let (Some(xi), Some(xj)) = (&ci.x0, &cj.x0) {
        let q = cs.q as u128;
        let d = cs.d as u32;
        let exp = (q.pow(2 * d) - 1) / (q * q - 1);
        let ni = cs.fp2.pow(xi, exp);
        let nj = cs.fp2.pow(xj, exp);
        if ni == nj {
            return Ok(cs.fp2.clone());
        }
    }
    big_working_field(cs)
}

/// F_{p^{2(q-1)}}, the worst-case field of definition for rank-2 isogenies.
pub fn big_working_field(cs: &ClassSet) -> Result<Arc<FieldCtx>> {
    gf::extend_field(&cs.fp2, (cs.q - 1) as usize)
}

/// Solves M_s for the class pair (i, j) with the Prop 2.5 field, verifying
/// the stabilized dimensions and enlarging the field until they stabilize if
/// they fall short (pairs involving j = 0 are not covered by the
/// proposition).
pub fn solve_pair(cs: &ClassSet, i: usize, j: usize, s_max: usize) -> Result<HomSpace> {
    let src = &cs.classes[i].module;
    let tgt = &cs.classes[j].module;
    let mut k = working_field(cs, i, j)?;
    let mut hom = solve_hom_space(src, tgt, s_max, &k)?;
    if stabilized_dims_ok(cs, &hom) {
        return Ok(hom);
    }
    // escalate: F_{p^{2(q-1)}}, then quadratic enlargements until dims agree
    // across one enlargement
    let big = big_working_field(cs)?;
    if !FieldCtx::same_field(&k, &big) {
        k = big;
        hom = solve_hom_space(src, tgt, s_max, &k)?;
        if stabilized_dims_ok(cs, &hom) {
            return Ok(hom);
        }
    }
    loop {
        let k2 = gf::extend_field(&k, 2)?;
        let hom2 = solve_hom_space(src, tgt, s_max, &k2)?;
        if hom2.dims == hom.dims || stabilized_dims_ok(cs, &hom2) {
            return Ok(hom2);
        }
        k = k2;
        hom = hom2;
    }
}

fn stabilized_dims_ok(cs: &ClassSet, hom: &HomSpace) -> bool {
    let d = cs.d;
    for s in 0..=hom.depth() {
        if s + 2 >= d {
            let expected = 2 * (s + 1) as i64 - (d as i64 - 1);
            if hom.dims[s] as i64 != expected {
                return false;
            }
        }
    }
    true
}

/// Dimension table m_0..m_{s_max} for a class pair.
pub fn dim_table(cs: &ClassSet, i: usize, j: usize, s_max: usize) -> Result<Vec<usize>> {
    Ok(solve_pair(cs, i, j, s_max)?.dims.clone())
}

/// Endomorphism space of phi_T = t + tau^r over k = F_{q^{rd}}, for
/// gcd(r, d) = 1 (the supersingular case).
pub fn solve_end_space_rank_r(q: u64, p: &PolyA, r: usize, s_max: usize) -> Result<HomSpace> {
    let d = p.deg().ok_or(Error::ConstantInput)?;
    let g = gcd(r, d);
    if g != 1 {
        return Err(Error::NotSupersingular { r, d, g });
    }
    if !crate::polyring::is_prime(p)? {
        return Err(Error::NotPrime(p.to_string()));
    }
    let fp = gf::make_field(q, d, Some(&p.poly))?;
    let k = gf::extend_field(&fp, r)?;
    let mut coeffs = vec![fp.zero(); r + 1];
    coeffs[0] = fp.gen();
    coeffs[r] = fp.one();
    let phi = DrinfeldModule::new(&fp, &fp, p, coeffs)?;
    solve_hom_space(&phi, &phi, s_max, &k)
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
