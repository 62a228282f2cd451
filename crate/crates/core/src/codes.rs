//! Torsion-module computation, matrix representation of isogenies on
//! phi[q'], bad-element and good-hyperplane search, and semifield-code
//! construction.
//!
//! For a prime q' != p, phi[q'] is a 2-dimensional vector space over
//! F_q' = A/q' (acting through phi). Realizing it takes an ambient field
//! F = F_{q^N} splitting phi_{q'}; N is found exactly as m times the order
//! of tau^m modulo the right ideal generated by phi_{q'} (phi_{q'}
//! right-divides tau^{mj} - 1 precisely when the torsion lies in F_{q^{mj}}).

use crate::brandt::{brandt_matrix, BrandtContext};
use crate::drinfeld::DrinfeldModule;
use crate::error::{Error, Result};
use crate::gf::{self, FieldCtx, FieldElem};
use crate::homspace::HomSpace;
use crate::linalg::FqMat;
use crate::polyring::{self, PolyA};
use crate::skew::SkewPoly;
use std::collections::HashSet;
use std::sync::Arc;

/// Cap on the ambient-field search: extensions of the working field up to
/// this relative degree are considered before giving up.
pub const TORSION_EXTENSION_CAP: usize = 4096;

/// An F_q'-basis (e1, e2) of phi[q'] inside an explicit ambient field.
pub struct TorsionBasis {
    pub qprime: PolyA,
    /// The residue field A/q', built with modulus q' itself.
    pub fq_ctx: Arc<FieldCtx>,
    /// Ambient field containing the full torsion.
    pub ambient: Arc<FieldCtx>,
    /// The module, rebased into the ambient field.
    pub module: DrinfeldModule,
    pub e1: FieldElem,
    pub e2: FieldElem,
    /// Matrix of the phi_T action on the 2 deg q'-dimensional F_q-space
    /// phi[q'], with respect to the basis phi_{T^i}(e1), phi_{T^i}(e2).
    pub phi_t_action: FqMat,
    /// Columns phi_{T^i}(e1), phi_{T^i}(e2) in ambient F_q-coordinates,
    /// used to express torsion points in (a, b) coordinates.
    coord_cols: FqMat,
}

impl TorsionBasis {
    /// (a, b) in F_q' x F_q' with x = phi_a(e1) + phi_b(e2).
    pub fn coords_of(&self, x: &FieldElem) -> Result<(FieldElem, FieldElem)> {
        let target = self.ambient.fq_coords(x);
        let sol = self
            .coord_cols
            .solve(&target)
            .ok_or_else(|| Error::Unsupported("point is not q'-torsion".into()))?;
        let dq = self.qprime.deg().unwrap();
        let a = self.fq_ctx.from_fq_coords(&sol[..dq]);
        let b = self.fq_ctx.from_fq_coords(&sol[dq..]);
        Ok((a, b))
    }
}

/// Order of tau^m in the quotient by the right ideal of phi_q: the minimal j
/// with phi_q right-dividing tau^{mj} - 1, i.e. the torsion splits in the
/// degree-j extension of the working field.
fn frobenius_order(
    phi_q: &SkewPoly<FieldCtx>,
    m: usize,
    ring: &FieldCtx,
) -> Result<usize> {
    let tau_m = SkewPoly::monomial(ring, ring.one(), m);
    let t1 = tau_m.right_rem(phi_q, ring)?;
    let one = SkewPoly::one(ring);
    let mut cur = t1.clone();
    for j in 1..=TORSION_EXTENSION_CAP {
        if cur == one {
            return Ok(j);
        }
        cur = tau_m.mul(&cur, ring).right_rem(phi_q, ring)?;
    }
    Err(Error::TorsionScheduleExhausted { cap: TORSION_EXTENSION_CAP })
}

/// Kernel of the q-linearized map x -> phi_q(x) on the ambient field, as
/// F_q-coordinate vectors.
fn linearized_kernel(
    phi_q: &SkewPoly<FieldCtx>,
    ambient: &Arc<FieldCtx>,
) -> Vec<Vec<u64>> {
    let m = ambient.fq_dim();
    let fq = ambient.small_fq();
    let basis = ambient.fq_basis();
    let mut mat = FqMat::zeros(&fq, m, m);
    for (j, b) in basis.iter().enumerate() {
        let img = phi_q.evaluate(ambient, b);
        let col = ambient.fq_coords(&img);
        for i in 0..m {
            mat.set(i, j, col[i]);
        }
    }
    mat.kernel_basis()
}

fn torsion_basis_in(
    module: &DrinfeldModule,
    qprime: &PolyA,
    ambient: &Arc<FieldCtx>,
) -> Result<TorsionBasis> {
    let dq = qprime.deg().unwrap();
    let q = ambient.ground_card();
    let reb = module.rebase(ambient)?;
    let phi_q = reb.phi_of(qprime)?;
    let kernel = linearized_kernel(&phi_q, ambient);
    assert_eq!(
        kernel.len(),
        2 * dq,
        "torsion kernel must have F_q-dimension 2 deg q'"
    );
    let e1 = ambient.from_fq_coords(&kernel[0]);
    // phi_{T^i}(e1) for i < deg q'
    let phi_t = reb.phi_t();
    let mut orbit1 = vec![e1.clone()];
    for _ in 1..dq {
        let prev = orbit1.last().unwrap();
        orbit1.push(phi_t.evaluate(ambient, prev));
    }
    // span F_q' e1 = all F_q-combinations of the orbit
    let mut span: HashSet<Vec<u64>> = HashSet::new();
    let total = q.pow(dq as u32);
    for code in 0..total {
        let mut rem = code;
        let mut acc = ambient.zero();
        for v in orbit1.iter() {
            let c = rem % q;
            rem /= q;
            if c != 0 {
                let scalar = ambient.scalar_from_index(c);
                acc = ambient.add(&acc, &ambient.mul(&scalar, v));
            }
        }
        span.insert(acc.coeffs().to_vec());
    }
    let e2 = kernel
        .iter()
        .map(|v| ambient.from_fq_coords(v))
        .find(|cand| !span.contains(&cand.coeffs().to_vec()))
        .expect("kernel is 2-dimensional over F_q', a second generator exists");
    let mut orbit2 = vec![e2.clone()];
    for _ in 1..dq {
        let prev = orbit2.last().unwrap();
        orbit2.push(phi_t.evaluate(ambient, prev));
    }
    // coordinate columns
    let m = ambient.fq_dim();
    let fq = ambient.small_fq();
    let mut coord_cols = FqMat::zeros(&fq, m, 2 * dq);
    for (idx, v) in orbit1.iter().chain(orbit2.iter()).enumerate() {
        let col = ambient.fq_coords(v);
        for i in 0..m {
            coord_cols.set(i, idx, col[i]);
        }
    }
    // matrix of phi_T on the torsion in the orbit basis
    let mut phi_t_action = FqMat::zeros(&fq, 2 * dq, 2 * dq);
    for (idx, v) in orbit1.iter().chain(orbit2.iter()).enumerate() {
        let img = phi_t.evaluate(ambient, v);
        let target = ambient.fq_coords(&img);
        let sol = coord_cols
            .solve(&target)
            .expect("phi_T preserves the torsion");
        for i in 0..2 * dq {
            phi_t_action.set(i, idx, sol[i]);
        }
    }
    let fq_ctx = gf::make_field(q, dq, Some(&qprime.poly))?;
    Ok(TorsionBasis {
        qprime: qprime.clone(),
        fq_ctx,
        ambient: ambient.clone(),
        module: reb,
        e1,
        e2,
        phi_t_action,
        coord_cols,
    })
}

/// Torsion basis of phi[q'] for a module over the working field k, in the
/// smallest extension of k that contains the full torsion.
pub fn torsion_basis(
    module: &DrinfeldModule,
    k: &Arc<FieldCtx>,
    qprime: &PolyA,
) -> Result<TorsionBasis> {
    if !polyring::is_prime(qprime)? {
        return Err(Error::NotPrime(qprime.to_string()));
    }
    if qprime == &module.p {
        return Err(Error::QprimeEqualsP);
    }
    let reb = module.rebase(k)?;
    let phi_q = reb.phi_of(qprime)?;
    let j = frobenius_order(&phi_q, k.fq_dim(), k.as_ref())?;
    let ambient = gf::extend_field(k, j)?;
    torsion_basis_in(module, qprime, &ambient)
}

/// Torsion bases for the source and target of a hom space over one common
/// ambient field.
pub fn torsion_pair(hom: &HomSpace, qprime: &PolyA) -> Result<(TorsionBasis, TorsionBasis)> {
    if !polyring::is_prime(qprime)? {
        return Err(Error::NotPrime(qprime.to_string()));
    }
    if qprime == &hom.source.p {
        return Err(Error::QprimeEqualsP);
    }
    let k = &hom.field;
    let m = k.fq_dim();
    let j_src = frobenius_order(&hom.source.phi_of(qprime)?, m, k.as_ref())?;
    let j_tgt = frobenius_order(&hom.target.phi_of(qprime)?, m, k.as_ref())?;
    let j = lcm(j_src, j_tgt);
    let ambient = gf::extend_field(k, j)?;
    Ok((
        torsion_basis_in(&hom.source, qprime, &ambient)?,
        torsion_basis_in(&hom.target, qprime, &ambient)?,
    ))
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// 2x2 matrix over F_q' of the map u: phi[q'] -> psi[q'], columns = images
/// of the source basis in target coordinates.
pub fn matrix_of(
    u: &SkewPoly<FieldCtx>,
    u_field: &Arc<FieldCtx>,
    src: &TorsionBasis,
    tgt: &TorsionBasis,
) -> Result<[[FieldElem; 2]; 2]> {
    assert!(
        FieldCtx::same_field(&src.ambient, &tgt.ambient),
        "torsion bases must share their ambient field"
    );
    let v1 = u.evaluate_via(u_field, &src.ambient, &src.e1)?;
    let v2 = u.evaluate_via(u_field, &src.ambient, &src.e2)?;
    let (a1, b1) = tgt.coords_of(&v1)?;
    let (a2, b2) = tgt.coords_of(&v2)?;
    Ok([[a1, a2], [b1, b2]])
}

pub fn det2(m: &[[FieldElem; 2]; 2], fq_ctx: &FieldCtx) -> FieldElem {
    fq_ctx.sub(
        &fq_ctx.mul(&m[0][0], &m[1][1]),
        &fq_ctx.mul(&m[0][1], &m[1][0]),
    )
}

/// Bad elements of M_s with respect to q': nonzero u with
/// rgcd(u, phi_{q'}) of positive degree (equivalently, u not invertible on
/// phi[q']). Reported as projective representatives.
pub struct BadElements {
    pub raw_count: u64,
    pub projective_count: u64,
    /// Coordinates (in the nested basis of M_s) of one representative per
    /// F_q^x-orbit, first nonzero coordinate normalized to 1.
    pub projective_reps: Vec<Vec<u64>>,
}

/// Visits all projective coordinate vectors of length n over F_q.
fn scan_projective<F: FnMut(&[u64])>(n: usize, q: u64, mut visit: F) {
    let mut coords = vec![0u64; n];
    for pivot in 0..n {
        let free = n - pivot - 1;
        let total = q.pow(free as u32);
        for code in 0..total {
            for c in coords.iter_mut() {
                *c = 0;
            }
            coords[pivot] = 1;
            let mut rem = code;
            for k in 0..free {
                coords[pivot + 1 + k] = rem % q;
                rem /= q;
            }
            visit(&coords);
        }
    }
}

pub fn bad_elements(hom: &HomSpace, s: usize, qprime: &PolyA) -> Result<BadElements> {
    if !polyring::is_prime(qprime)? {
        return Err(Error::NotPrime(qprime.to_string()));
    }
    if qprime == &hom.source.p {
        return Err(Error::QprimeEqualsP);
    }
    let ring = hom.field.as_ref();
    let phi_q = hom.source.phi_of(qprime)?;
    let n = hom.dim(s);
    let q = hom.fq.q;
    let mut reps = Vec::new();
    scan_projective(n, q, |coords| {
        let u = hom.element_from_coords(coords);
        let g = u.right_gcd(&phi_q, ring).expect("u nonzero");
        if g.deg_tau().unwrap_or(0) > 0 {
            reps.push(coords.to_vec());
        }
    });
    Ok(BadElements {
        raw_count: reps.len() as u64 * (q - 1),
        projective_count: reps.len() as u64,
        projective_reps: reps,
    })
}

/// Hyperplane search: hyperplanes are kernels of nonzero functionals up to
/// scaling. Returns the functionals (normalized) of hyperplanes containing
/// no bad element, along with the total hyperplane count.
pub struct HyperplaneSearch {
    pub total: u64,
    pub good_functionals: Vec<Vec<u64>>,
}

pub fn good_hyperplanes(
    hom: &HomSpace,
    s: usize,
    bad: &BadElements,
) -> HyperplaneSearch {
    let n = hom.dim(s);
    let q = hom.fq.q;
    let fq = hom.fq.clone();
    let mut total = 0u64;
    let mut good = Vec::new();
    scan_projective(n, q, |v| {
        total += 1;
        let blocked = bad.projective_reps.iter().any(|b| {
            let mut dot = 0u64;
            for (x, y) in v.iter().zip(b.iter()) {
                if *x != 0 && *y != 0 {
                    dot = fq.add(dot, fq.mul(*x, *y));
                }
            }
            dot == 0
        });
        if !blocked {
            good.push(v.to_vec());
        }
    });
    HyperplaneSearch { total, good_functionals: good }
}

/// Basis (in nested-basis coordinates) of the hyperplane cut out by a
/// functional.
pub fn hyperplane_basis(hom: &HomSpace, functional: &[u64]) -> Vec<Vec<u64>> {
    let fq = hom.fq.clone();
    let mut m = FqMat::zeros(&fq, 1, functional.len());
    for (j, &c) in functional.iter().enumerate() {
        m.set(0, j, c);
    }
    m.kernel_basis()
}

/// Where a semifield code came from.
#[derive(Clone, Debug)]
pub enum CodeProvenance {
    /// Zero Brandt entry b_ij(q') = 0: the full space M_s(phi_i, phi_j).
    ZeroEntry { i: usize, j: usize },
    /// A good hyperplane in M_s, recorded by its functional.
    Hyperplane { functional: Vec<u64> },
    /// d = 1: all of M_s is already invertible.
    FullSpace,
}

/// An F_q-linear MRD code in Mat_2(F_q') with d = m = n = 2: all nonzero
/// codewords invertible.
pub struct SemifieldCode {
    pub qprime: PolyA,
    pub fq_ctx: Arc<FieldCtx>,
    /// F_q-dimension, equal to 2 deg q'.
    pub dim: usize,
    pub basis_skew: Vec<SkewPoly<FieldCtx>>,
    pub basis_matrices: Vec<[[FieldElem; 2]; 2]>,
    pub provenance: CodeProvenance,
    /// Minimum rank distance (2: every nonzero codeword is invertible).
    pub min_rank_distance: usize,
    /// Number of nonzero codewords verified invertible.
    pub verified_words: u64,
}

/// Builds and fully verifies a semifield code from an invertible subspace of
/// M_s given by basis coordinates in the nested basis.
pub fn build_semifield_code(
    hom: &HomSpace,
    subspace_coords: &[Vec<u64>],
    qprime: &PolyA,
    provenance: CodeProvenance,
) -> Result<SemifieldCode> {
    let dq = qprime.deg().ok_or(Error::ConstantInput)?;
    let dim = subspace_coords.len();
    if dim != 2 * dq {
        return Err(Error::CodeDimensionMismatch { expected: 2 * dq, got: dim });
    }
    let (src_tb, tgt_tb) = torsion_pair(hom, qprime)?;
    let fq_ctx = src_tb.fq_ctx.clone();
    let basis_skew: Vec<SkewPoly<FieldCtx>> = subspace_coords
        .iter()
        .map(|c| hom.element_from_coords(c))
        .collect();
    let mut basis_matrices = Vec::with_capacity(dim);
    for u in &basis_skew {
        basis_matrices.push(matrix_of(u, &hom.field, &src_tb, &tgt_tb)?);
    }
    // verify every nonzero F_q-combination is invertible
    let q = hom.fq.q;
    let total = q.pow(dim as u32);
    let mut verified = 0u64;
    for code in 1..total {
        let mut rem = code;
        let mut acc = [
            [fq_ctx.zero(), fq_ctx.zero()],
            [fq_ctx.zero(), fq_ctx.zero()],
        ];
        for bm in basis_matrices.iter() {
            let c = rem % q;
            rem /= q;
            if c == 0 {
                continue;
            }
            let scalar = fq_ctx.scalar_from_index(c);
            for r in 0..2 {
                for cidx in 0..2 {
                    acc[r][cidx] =
                        fq_ctx.add(&acc[r][cidx], &fq_ctx.mul(&scalar, &bm[r][cidx]));
                }
            }
        }
        if det2(&acc, &fq_ctx).is_zero() {
            return Err(Error::SingularCodeword);
        }
        verified += 1;
    }
    Ok(SemifieldCode {
        qprime: qprime.clone(),
        fq_ctx,
        dim,
        basis_skew,
        basis_matrices,
        provenance,
        min_rank_distance: 2,
        verified_words: verified,
    })
}

/// Zero-entry strategy (d odd): for primes q' with
/// 2 deg q' = 2(s+1) - (d-1), report all (i, j, q') with b_ij(q') = 0.
pub fn search_zero_entry(
    ctx: &BrandtContext,
    target_s: usize,
) -> Result<Vec<(usize, usize, PolyA)>> {
    let d = ctx.cs.d;
    if d % 2 == 0 {
        return Err(Error::DEvenForZeroEntry(d));
    }
    let two_dq = 2 * (target_s + 1) - (d - 1);
    if two_dq == 0 || two_dq % 2 != 0 {
        return Err(Error::Unsupported(format!(
            "no prime degree satisfies 2 deg q' = {two_dq}"
        )));
    }
    let dq = two_dq / 2;
    let ground = &ctx.cs.p.ctx;
    let mut found = Vec::new();
    for qprime in polyring::primes_of_degree(ground, dq) {
        if qprime == ctx.cs.p {
            continue;
        }
        let b = brandt_matrix(ctx, &qprime)?;
        for i in 0..b.n() {
            for j in 0..b.n() {
                if b.matrix[i][j] == 0 {
                    found.push((i, j, qprime.clone()));
                }
            }
        }
    }
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brandt::BrandtContext;
    use crate::drinfeld::supersingular_classes;
    use crate::gf::make_field;
    use crate::homspace::solve_pair;
    use crate::polyring::parse_poly_a;

    #[test]
    fn torsion_kernel_dimension_and_membership() {
        let ground = make_field(3, 1, None).unwrap();
        let p = parse_poly_a(&ground, "T^3+2T+2").unwrap();
        let cs = supersingular_classes(3, &p).unwrap();
        let qp = parse_poly_a(&ground, "T+1").unwrap();
        let tb = torsion_basis(&cs.classes[0].module, &cs.fp2, &qp).unwrap();
        // both basis points are killed by phi_{q'}
        let phi_q = tb.module.phi_of(&qp).unwrap();
        assert!(phi_q.evaluate(&tb.ambient, &tb.e1).is_zero());
        assert!(phi_q.evaluate(&tb.ambient, &tb.e2).is_zero());
        // q' = p is rejected
        assert!(matches!(
            torsion_basis(&cs.classes[0].module, &cs.fp2, &p),
            Err(Error::QprimeEqualsP)
        ));
    }

    #[test]
    fn matrix_of_identity_and_scalars() {
        let ground = make_field(3, 1, None).unwrap();
        let p = parse_poly_a(&ground, "T^3+2T+2").unwrap();
        let cs = supersingular_classes(3, &p).unwrap();
        let hom = solve_pair(&cs, 0, 0, 2).unwrap();
        let qp = parse_poly_a(&ground, "T^2+1").unwrap();
        let (src, tgt) = torsion_pair(&hom, &qp).unwrap();
        let fqc = src.fq_ctx.clone();
        // identity morphism -> identity matrix
        let one = SkewPoly::one(hom.field.as_ref());
        let m = matrix_of(&one, &hom.field, &src, &tgt).unwrap();
        assert_eq!(m[0][0], fqc.one());
        assert_eq!(m[1][1], fqc.one());
        assert!(m[0][1].is_zero() && m[1][0].is_zero());
        // phi_a acts as the scalar a mod q'
        let a = parse_poly_a(&ground, "T+2").unwrap();
        let u = hom.source.phi_of(&a).unwrap();
        let ma = matrix_of(&u, &hom.field, &src, &tgt).unwrap();
        let a_mod = fqc.elem(vec![2, 1]); // T+2 as an element of A/(T^2+1)
        assert_eq!(ma[0][0], a_mod);
        assert_eq!(ma[1][1], a_mod);
        assert!(ma[0][1].is_zero() && ma[1][0].is_zero());
        // composition maps to matrix product (endomorphisms)
        let w = hom.source.phi_of(&parse_poly_a(&ground, "T").unwrap()).unwrap();
        let mw = matrix_of(&w, &hom.field, &src, &tgt).unwrap();
        let uw = u.mul(&w, hom.field.as_ref());
        let muw = matrix_of(&uw, &hom.field, &src, &tgt).unwrap();
        for r in 0..2 {
            for c in 0..2 {
                let mut acc = fqc.zero();
                for k in 0..2 {
                    acc = fqc.add(&acc, &fqc.mul(&ma[r][k], &mw[k][c]));
                }
                assert_eq!(acc, muw[r][c]);
            }
        }
    }

    #[test]
    fn singular_matrix_iff_positive_rgcd() {
        let ground = make_field(3, 1, None).unwrap();
        let p = parse_poly_a(&ground, "T^3+2T+2").unwrap();
        let cs = supersingular_classes(3, &p).unwrap();
        let hom = solve_pair(&cs, 0, 0, 2).unwrap();
        let qp = parse_poly_a(&ground, "T").unwrap();
        let (src, tgt) = torsion_pair(&hom, &qp).unwrap();
        let ring = hom.field.as_ref();
        let phi_q = hom.source.phi_of(&qp).unwrap();
        let fqc = src.fq_ctx.clone();
        let mut checked = 0;
        hom.scan_exact_degree(2, true, |_, u| {
            if checked >= 40 {
                return;
            }
            checked += 1;
            let g = u.right_gcd(&phi_q, ring).unwrap();
            let mat = matrix_of(u, &hom.field, &src, &tgt).unwrap();
            let singular = det2(&mat, &fqc).is_zero();
            assert_eq!(singular, g.deg_tau().unwrap_or(0) > 0);
        });
        assert!(checked > 0);
    }

    #[test]
    fn motivating_d1_full_space_code() {
        // d = 1: M_s is invertible on phi[q'] for deg q' = s + 1
        let ground = make_field(3, 1, None).unwrap();
        let p = parse_poly_a(&ground, "T").unwrap();
        let cs = supersingular_classes(3, &p).unwrap();
        let hom = solve_pair(&cs, 0, 0, 1).unwrap();
        assert_eq!(hom.dim(1), 4); // 2(s+1)
        let qp = parse_poly_a(&ground, "T^2+1").unwrap();
        let bad = bad_elements(&hom, 1, &qp).unwrap();
        assert_eq!(bad.raw_count, 0);
        let coords: Vec<Vec<u64>> = (0..4)
            .map(|i| {
                let mut v = vec![0u64; 4];
                v[i] = 1;
                v
            })
            .collect();
        let code = build_semifield_code(&hom, &coords, &qp, CodeProvenance::FullSpace).unwrap();
        assert_eq!(code.dim, 4);
        assert_eq!(code.verified_words, 80);
        assert_eq!(code.min_rank_distance, 2);
    }

    #[test]
    fn zero_entry_search_small() {
        let ground = make_field(3, 1, None).unwrap();
        let p = parse_poly_a(&ground, "T^3+2T+2").unwrap();
        let ctx = BrandtContext::new(supersingular_classes(3, &p).unwrap());
        // s = 1, d = 3: deg q' = 1; B(T) alone has six zeros
        let found = search_zero_entry(&ctx, 1).unwrap();
        assert!(!found.is_empty());
        // build one code from a zero entry
        let (i, j, qp) = found[0].clone();
        let hom = ctx.hom(i, j, 1).unwrap();
        let n = hom.dim(1);
        assert_eq!(n, 2);
        let coords: Vec<Vec<u64>> = (0..n)
            .map(|k| {
                let mut v = vec![0u64; n];
                v[k] = 1;
                v
            })
            .collect();
        let code =
            build_semifield_code(&hom, &coords, &qp, CodeProvenance::ZeroEntry { i, j }).unwrap();
        assert_eq!(code.verified_words, 8);
        // d even is rejected
        let p2 = parse_poly_a(&ground, "T^2+1").unwrap();
        let ctx2 = BrandtContext::new(supersingular_classes(3, &p2).unwrap());
        assert!(matches!(
            search_zero_entry(&ctx2, 2),
            Err(Error::DEvenForZeroEntry(2))
        ));
    }

    #[test]
    fn bad_element_scan_counts_with_kernel_size_argument() {
        // deg q' = s + 1 forces zero bad elements (kernel too small)
        let ground = make_field(3, 1, None).unwrap();
        let p = parse_poly_a(&ground, "T^2+2T+2").unwrap();
        let cs = supersingular_classes(3, &p).unwrap();
        let hom = solve_pair(&cs, 0, 0, 2).unwrap();
        let qp = parse_poly_a(&ground, "T^3+2T+1").unwrap();
        assert!(polyring::is_prime(&qp).unwrap());
        let bad = bad_elements(&hom, 2, &qp).unwrap();
        assert_eq!(bad.raw_count, 0);
    }
}
