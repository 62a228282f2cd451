//! Norm-ideal testing for isogenies and Brandt matrices B(m).
//!
//! The norm of an isogeny u is N(u) = p^{Ht(u)/d} chi(ker u), with chi the
//! product of the invariant factors of the kernel. The entry b_ij(m) counts
//! isogenies phi_i -> phi_j with norm ideal (m), divided by #Aut(phi_j).
//! Norm testing is done entirely by right division: for prime m it is
//! divisibility of phi_m by u; in general the invariant-factor exponents at
//! each prime l | m are recovered from the degree profile of
//! rgcd(u, phi_{l^j}).

use crate::drinfeld::{ClassSet, DrinfeldModule};
use crate::error::{Error, Result};
use crate::gf::FieldCtx;
use crate::homspace::{solve_pair, HomSpace};
use crate::polyring::{self, PolyA};
use crate::skew::SkewPoly;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::HashMap;
use std::sync::{Arc, Mutex};

/// n x n Brandt matrix with its class-ordering metadata.
#[derive(Clone, Debug, Serialize)]
pub struct BrandtMatrix {
    pub q: u64,
    pub p: String,
    pub m: String,
    /// Class encodings fixing the row/column order.
    pub ordering: Vec<String>,
    pub matrix: Vec<Vec<u64>>,
}

impl BrandtMatrix {
    pub fn n(&self) -> usize {
        self.matrix.len()
    }

    pub fn row_sums(&self) -> Vec<u64> {
        self.matrix.iter().map(|r| r.iter().sum()).collect()
    }
}

/// Local data at one prime divisor l of the separable part of m.
struct LocalPrime {
    deg_l: usize,
    e: usize,
    /// phi_{l^j} for j = 1..=e+1, over the working field of the pair.
    phi_powers: Vec<SkewPoly<FieldCtx>>,
}

/// Precomputed norm test for one (source module, m) pair over a fixed field.
pub struct NormTester {
    s: usize,
    v_times_d: usize,
    /// Set for prime m with v = 0: right-divisibility of phi_m decides.
    fast_prime: Option<SkewPoly<FieldCtx>>,
    locals: Vec<LocalPrime>,
    e_total_deg: usize,
}

impl NormTester {
    /// `phi` must live over the field in which candidate isogenies are given.
    pub fn new(phi: &DrinfeldModule, m: &PolyA, p: &PolyA) -> Result<Self> {
        Self::build(phi, m, p, true)
    }

    /// Skips the prime fast path, always running the rgcd-profile procedure.
    pub fn new_general(phi: &DrinfeldModule, m: &PolyA, p: &PolyA) -> Result<Self> {
        Self::build(phi, m, p, false)
    }

    fn build(phi: &DrinfeldModule, m: &PolyA, p: &PolyA, use_fast: bool) -> Result<Self> {
        let s = m.deg().ok_or(Error::ConstantInput)?;
        let d = p.deg().unwrap();
        // strip the p-part
        let mut m0 = m.clone();
        let mut v = 0usize;
        loop {
            let (quot, rem) = m0.divrem(p);
            if rem.is_zero() && m0.deg() >= p.deg() {
                m0 = quot;
                v += 1;
            } else {
                break;
            }
        }
        let fast_prime = if use_fast && v == 0 && polyring::is_prime(m).unwrap_or(false) {
            Some(phi.phi_of(m)?)
        } else {
            None
        };
        let mut locals = Vec::new();
        let mut e_total_deg = 0usize;
        if fast_prime.is_none() && m0.deg() != Some(0) {
            let fac = crate::gf::factor_poly(&m0.poly, &m0.ctx)?;
            for (l, e) in fac.factors {
                let la = PolyA::new(&m0.ctx, l);
                let deg_l = la.deg().unwrap();
                let mut phi_powers = Vec::with_capacity(e + 1);
                let mut lj = PolyA::one(&m0.ctx);
                for _ in 1..=e + 1 {
                    lj = lj.mul(&la);
                    phi_powers.push(phi.phi_of(&lj)?);
                }
                locals.push(LocalPrime { deg_l, e, phi_powers });
                e_total_deg += e * deg_l;
            }
        }
        Ok(NormTester {
            s,
            v_times_d: v * d,
            fast_prime,
            locals,
            e_total_deg,
        })
    }

    /// Decides N(u) = (m) for u of exact tau-degree deg m, by right division
    /// only.
    pub fn test(&self, u: &SkewPoly<FieldCtx>, ring: &FieldCtx) -> bool {
        debug_assert_eq!(u.deg_tau(), Some(self.s));
        let ht = u.height(ring).unwrap();
        if ht != self.v_times_d {
            return false;
        }
        if let Some(phi_m) = &self.fast_prime {
            // m prime, v = 0: N(u) = m iff u right-divides phi_m
            return phi_m.right_rem(u, ring).map(|r| r.is_zero()).unwrap_or(false);
        }
        let mut total = 0usize;
        for local in &self.locals {
            let mut prev = 0usize;
            let mut a = 0usize;
            let mut b = 0usize;
            for (jm1, phi_lj) in local.phi_powers.iter().enumerate() {
                let j = jm1 + 1;
                let g = match u.right_gcd(phi_lj, ring) {
                    Ok(g) => g,
                    Err(_) => return false,
                };
                let dj = g.deg_tau().unwrap_or(0);
                if dj % local.deg_l != 0 {
                    return false;
                }
                let delta = (dj - prev) / local.deg_l;
                // d_j / deg l = min(j, a) + min(j, b): increments read off a, b
                match delta {
                    2 => {
                        a = j;
                        b = j;
                    }
                    1 => b = j,
                    0 => {}
                    _ => return false,
                }
                prev = dj;
            }
            if a + b != local.e {
                return false;
            }
            total += (a + b) * local.deg_l;
        }
        debug_assert_eq!(total, self.e_total_deg);
        // no prime outside m0 contributes to the kernel
        total == self.s - self.v_times_d
    }
}

/// Spec-level norm test: N(u) = (m)? `phi` is the source of u and must share
/// u's coefficient field.
pub fn norm_ideal_equals(
    u: &SkewPoly<FieldCtx>,
    m: &PolyA,
    phi: &DrinfeldModule,
) -> Result<bool> {
    if u.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let s = m.deg().ok_or(Error::ConstantInput)?;
    if u.deg_tau() != Some(s) {
        return Err(Error::NormDegreeMismatch {
            expected: s,
            got: u.deg_tau().unwrap_or(0),
        });
    }
    let tester = NormTester::new(phi, m, &phi.p)?;
    Ok(tester.test(u, phi.field.as_ref()))
}

/// Shared class data plus hom-space cache for Brandt computations in one
/// characteristic. Hom spaces are cached per ordered pair and reused across
/// different m of equal degree.
pub struct BrandtContext {
    pub cs: ClassSet,
    cache: Mutex<HashMap<(usize, usize), Arc<HomSpace>>>,
}

impl BrandtContext {
    pub fn new(cs: ClassSet) -> Self {
        BrandtContext { cs, cache: Mutex::new(HashMap::new()) }
    }

    /// Hom space for the ordered pair, solved at least to `depth`.
    pub fn hom(&self, i: usize, j: usize, depth: usize) -> Result<Arc<HomSpace>> {
        if let Some(h) = self.cache.lock().unwrap().get(&(i, j)) {
            if h.depth() >= depth {
                return Ok(h.clone());
            }
        }
        let hom = Arc::new(solve_pair(&self.cs, i, j, depth)?);
        self.cache.lock().unwrap().insert((i, j), hom.clone());
        Ok(hom)
    }

    pub fn ordering(&self) -> Vec<String> {
        self.cs
            .classes
            .iter()
            .map(|c| c.encoding(self.cs.fp2.as_ref()))
            .collect()
    }
}

/// One Brandt entry: isogenies phi_i -> phi_j of norm (m), counted up to
/// Aut(phi_j). Enumeration is over F_q^x-orbit representatives, multiplied
/// back by (q - 1).
fn brandt_entry(ctx: &BrandtContext, i: usize, j: usize, m: &PolyA) -> Result<u64> {
    let s = m.deg().ok_or(Error::ConstantInput)?;
    let hom = ctx.hom(i, j, s)?;
    if hom.dim(s) == hom.dim_below(s) {
        return Ok(0);
    }
    let tester = NormTester::new(&hom.source, m, &ctx.cs.p)?;
    let ring = hom.field.as_ref();
    let mut count = 0u64;
    hom.scan_exact_degree(s, true, |_, u| {
        if tester.test(u, ring) {
            count += 1;
        }
    });
    let q = ctx.cs.q;
    let raw = count * (q - 1);
    let aut = ctx.cs.classes[j].aut_order;
    assert_eq!(raw % aut, 0, "raw isogeny count must be divisible by #Aut");
    Ok(raw / aut)
}

/// The m-th Brandt matrix in characteristic p. Entries are computed
/// independently per ordered pair, in parallel.
pub fn brandt_matrix(ctx: &BrandtContext, m: &PolyA) -> Result<BrandtMatrix> {
    if m.deg().is_none() || m.deg() == Some(0) {
        return Err(Error::ConstantInput);
    }
    if !m.is_monic() {
        return Err(Error::Parse("Brandt matrices are indexed by monic m".into()));
    }
    let n = ctx.cs.class_number();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
    let entries: Result<Vec<((usize, usize), u64)>> = pairs
        .par_iter()
        .map(|&(i, j)| brandt_entry(ctx, i, j, m).map(|e| ((i, j), e)))
        .collect();
    let mut matrix = vec![vec![0u64; n]; n];
    for ((i, j), e) in entries? {
        matrix[i][j] = e;
    }
    Ok(BrandtMatrix {
        q: ctx.cs.q,
        p: ctx.cs.p.to_string(),
        m: m.to_string(),
        ordering: ctx.ordering(),
        matrix,
    })
}

/// Row-sum consistency for prime m != p: every row sums to q^{deg m} + 1.
/// Returns None when the check does not apply (composite m or m = p).
pub fn check_row_sums(b: &BrandtMatrix, m: &PolyA, p: &PolyA) -> Option<bool> {
    if m == p || !polyring::is_prime(m).unwrap_or(false) {
        return None;
    }
    let expected = (b.q as u128).pow(m.deg().unwrap() as u32) + 1;
    Some(
        b.matrix
            .iter()
            .all(|row| row.iter().map(|&x| x as u128).sum::<u128>() == expected),
    )
}

/// Pairwise commutativity of Brandt matrices with a common class ordering.
pub fn check_commuting(mats: &[BrandtMatrix]) -> Result<bool> {
    if mats.len() < 2 {
        return Ok(true);
    }
    let first = &mats[0];
    for b in &mats[1..] {
        if b.p != first.p || b.ordering != first.ordering {
            return Err(Error::OrderingMismatch);
        }
    }
    let n = first.n();
    let mul = |a: &BrandtMatrix, b: &BrandtMatrix| -> Vec<Vec<u128>> {
        let mut out = vec![vec![0u128; n]; n];
        for i in 0..n {
            for k in 0..n {
                let av = a.matrix[i][k] as u128;
                if av == 0 {
                    continue;
                }
                for j in 0..n {
                    out[i][j] += av * b.matrix[k][j] as u128;
                }
            }
        }
        out
    };
    for x in 0..mats.len() {
        for y in x + 1..mats.len() {
            if mul(&mats[x], &mats[y]) != mul(&mats[y], &mats[x]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Mass recursion from the Eisenstein part of the theta series: for
/// s >= d - 1, q^{m_s} = q^{m_{s-1}} + q^{2s-d+1} (q^2 - 1), using dimension
/// data only.
pub fn check_mass_recursion(ctx: &BrandtContext, i: usize, j: usize, s: usize) -> Result<bool> {
    let d = ctx.cs.d;
    if s + 1 < d {
        return Err(Error::Unsupported(format!(
            "mass recursion asserted only for s >= d - 1 (s = {s}, d = {d})"
        )));
    }
    let hom = ctx.hom(i, j, s)?;
    let q = ctx.cs.q as u128;
    let lhs = q.pow(hom.dim(s) as u32);
    let prev = q.pow(hom.dim_below(s) as u32);
    let gain = q.pow((2 * s + 1 - d) as u32) * (q * q - 1);
    Ok(lhs == prev + gain)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::drinfeld::supersingular_classes;
    use crate::gf::make_field;
    use crate::polyring::parse_poly_a;

    fn ctx_for(q: u64, pstr: &str) -> BrandtContext {
        let ground = make_field(q, 1, None).unwrap();
        let p = parse_poly_a(&ground, pstr).unwrap();
        BrandtContext::new(supersingular_classes(q, &p).unwrap())
    }

    #[test]
    fn norm_of_phi_a_is_a_squared() {
        // ker phi_a = phi[a] = (A/a)^2, so chi = a^2
        let ground = make_field(3, 1, None).unwrap();
        let p = parse_poly_a(&ground, "T^3+2T+2").unwrap();
        let cs = supersingular_classes(3, &p).unwrap();
        let phi = &cs.classes[0].module;
        let a = parse_poly_a(&ground, "T+1").unwrap();
        let u = phi.phi_of(&a).unwrap();
        let a2 = a.mul(&a);
        assert!(norm_ideal_equals(&u, &a2, phi).unwrap());
        // and the norm is not any other monic quadratic
        for other in polyring::monic_of_degree(&ground, 2) {
            if other == a2 {
                continue;
            }
            assert!(!norm_ideal_equals(&u, &other, phi).unwrap(), "other = {other}");
        }
    }

    #[test]
    fn norm_of_tau_d_is_p_for_fp_rational_model() {
        // tau^d is an endomorphism of a model with x0 in F_p, of norm p
        let ground = make_field(3, 1, None).unwrap();
        let p = parse_poly_a(&ground, "T^3+2T+2").unwrap();
        let cs = supersingular_classes(3, &p).unwrap();
        // j = 0 model t + tau^2 is defined over F_p
        let jzero = cs.classes.last().unwrap();
        let ring = jzero.module.field.as_ref();
        let tau_d = SkewPoly::monomial(ring, ring.one(), 3);
        // it commutes with phi_T (coefficients fixed by q^d)
        let pt = jzero.module.phi_t();
        assert_eq!(tau_d.mul(&pt, ring), pt.mul(&tau_d, ring));
        assert!(norm_ideal_equals(&tau_d, &p, &jzero.module).unwrap());
    }

    #[test]
    fn degree_mismatch_is_an_error() {
        let ground = make_field(3, 1, None).unwrap();
        let p = parse_poly_a(&ground, "T^3+2T+2").unwrap();
        let cs = supersingular_classes(3, &p).unwrap();
        let phi = &cs.classes[0].module;
        let u = phi.phi_t();
        let m = parse_poly_a(&ground, "T").unwrap();
        assert!(matches!(
            norm_ideal_equals(&u, &m, phi),
            Err(Error::NormDegreeMismatch { .. })
        ));
    }

    #[test]
    fn fast_path_agrees_with_general_procedure() {
        // full cross-check: prime m via divisibility vs the rgcd profile
        let ground = make_field(3, 1, None).unwrap();
        let p = parse_poly_a(&ground, "T^3+2T+2").unwrap();
        let ctx = ctx_for(3, "T^3+2T+2");
        for m in polyring::primes_of_degree(&ground, 1) {
            for i in 0..ctx.cs.class_number() {
                for j in 0..ctx.cs.class_number() {
                    let hom = ctx.hom(i, j, 1).unwrap();
                    let ring = hom.field.as_ref();
                    let fast = NormTester::new(&hom.source, &m, &p).unwrap();
                    let general = NormTester::new_general(&hom.source, &m, &p).unwrap();
                    hom.scan_exact_degree(1, true, |_, u| {
                        assert_eq!(fast.test(u, ring), general.test(u, ring));
                    });
                }
            }
        }
    }

    #[test]
    fn row_sums_constant_for_prime_m() {
        let ground = make_field(3, 1, None).unwrap();
        let ctx = ctx_for(3, "T^3+2T+2");
        let m = parse_poly_a(&ground, "T").unwrap();
        let b = brandt_matrix(&ctx, &m).unwrap();
        assert_eq!(check_row_sums(&b, &m, &ctx.cs.p), Some(true));
        assert_eq!(b.row_sums(), vec![4, 4, 4, 4]);
        // composite m: not applicable
        let m2 = parse_poly_a(&ground, "T^2").unwrap();
        let b2 = brandt_matrix(&ctx, &m2).unwrap();
        assert_eq!(check_row_sums(&b2, &m2, &ctx.cs.p), None);
        // but the row sums equal sigma_p(m) even for composite m
        let sums = b2.row_sums();
        let expected = polyring::sigma_p(&m2, &ctx.cs.p).unwrap();
        assert!(sums.iter().all(|&x| x as u128 == expected), "{sums:?}");
    }

    #[test]
    fn b_of_p_has_single_unit_entry_per_row() {
        // m = p: the purely inseparable isogeny gives one entry 1 per row
        let ground = make_field(3, 1, None).unwrap();
        let ctx = ctx_for(3, "T^3+2T+2");
        let p = parse_poly_a(&ground, "T^3+2T+2").unwrap();
        let b = brandt_matrix(&ctx, &p).unwrap();
        for row in &b.matrix {
            assert_eq!(row.iter().sum::<u64>(), 1, "sigma_p(p) = 1");
        }
    }

    #[test]
    fn mass_recursion_holds_at_and_past_d_minus_1() {
        let ctx = ctx_for(3, "T^3+2T+2");
        for i in [0usize, 3] {
            for j in [0usize, 2] {
                for s in 2..=4usize {
                    assert!(check_mass_recursion(&ctx, i, j, s).unwrap(), "({i},{j}) s={s}");
                }
            }
        }
        assert!(check_mass_recursion(&ctx, 0, 0, 1).is_err());
        // d = 1: q^{m_1} - q^{m_0} = q^2 (q^2 - 1) from m_s = 2(s+1)
        let ctx1 = ctx_for(3, "T");
        assert!(check_mass_recursion(&ctx1, 0, 0, 1).unwrap());
    }

    #[test]
    fn commuting_brandt_matrices_and_negative_control() {
        let ground = make_field(3, 1, None).unwrap();
        let ctx = ctx_for(3, "T^3+2T+2");
        let mats: Vec<BrandtMatrix> = ["T", "T+1", "T+2"]
            .iter()
            .map(|s| brandt_matrix(&ctx, &parse_poly_a(&ground, s).unwrap()).unwrap())
            .collect();
        assert!(check_commuting(&mats).unwrap());
        assert!(check_commuting(&mats[..1]).unwrap());
        // corrupt one entry: commutativity must fail
        let mut bad = mats.clone();
        bad[0].matrix[0][1] += 3;
        assert!(!check_commuting(&bad).unwrap());
    }
}
