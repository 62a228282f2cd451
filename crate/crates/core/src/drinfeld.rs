//! Drinfeld modules: construction, phi_a computation, heights,
//! supersingularity, j-invariants, the Deuring polynomial H_p, and
//! enumeration of all supersingular classes in characteristic p.

use crate::error::{Error, Result};
use crate::gf::{self, FieldCtx, FieldElem, Poly};
use crate::polyring::{self, PolyA};
use crate::skew::{SkewPoly, XPolyRing};
use std::sync::Arc;

/// A Drinfeld module phi_T = t + g_1 tau + ... + g_r tau^r over a field
/// containing A/p.
#[derive(Clone, Debug)]
pub struct DrinfeldModule {
    pub rank: usize,
    /// g_0 = t, g_1, ..., g_r; g_r != 0.
    pub coeffs: Vec<FieldElem>,
    /// Field the coefficients live in.
    pub field: Arc<FieldCtx>,
    /// The characteristic prime p of A.
    pub p: PolyA,
    /// The residue field A/p.
    pub fp: Arc<FieldCtx>,
}

impl PartialEq for DrinfeldModule {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank
            && FieldCtx::same_field(&self.field, &other.field)
            && self.coeffs == other.coeffs
            && self.p == other.p
    }
}

impl DrinfeldModule {
    /// Builds phi from tau-coefficients (g_0 must be the image of T).
    pub fn new(
        field: &Arc<FieldCtx>,
        fp: &Arc<FieldCtx>,
        p: &PolyA,
        coeffs: Vec<FieldElem>,
    ) -> Result<Self> {
        assert!(coeffs.len() >= 2, "rank must be at least 1");
        let rank = coeffs.len() - 1;
        if coeffs[rank].is_zero() {
            return Err(Error::Parse("leading coefficient g_r must be nonzero".into()));
        }
        let t_img = field.embed_from(fp)?.apply(&fp.gen());
        if coeffs[0] != t_img {
            return Err(Error::Parse("g_0 must be the image of T in A/p".into()));
        }
        Ok(DrinfeldModule {
            rank,
            coeffs,
            field: field.clone(),
            p: p.clone(),
            fp: fp.clone(),
        })
    }

    pub fn phi_t(&self) -> SkewPoly<FieldCtx> {
        SkewPoly::from_coeffs(self.field.as_ref(), self.coeffs.clone())
    }

    /// Re-expresses the module over a larger field.
    pub fn rebase(&self, big: &Arc<FieldCtx>) -> Result<DrinfeldModule> {
        let emb = big.embed_from(&self.field)?;
        Ok(DrinfeldModule {
            rank: self.rank,
            coeffs: self.coeffs.iter().map(|c| emb.apply(c)).collect(),
            field: big.clone(),
            p: self.p.clone(),
            fp: self.fp.clone(),
        })
    }

    /// Image of a in A under the ring homomorphism extending T -> phi_T
    /// (F_q maps to central constants).
    pub fn phi_of(&self, a: &PolyA) -> Result<SkewPoly<FieldCtx>> {
        let ring = self.field.as_ref();
        let emb = self.field.embed_from(&a.ctx)?;
        let digits: Vec<FieldElem> = a.coeff_elems().iter().map(|c| emb.apply(c)).collect();
        if digits.is_empty() {
            return Ok(SkewPoly::zero());
        }
        let phi_t = self.phi_t();
        let mut acc = SkewPoly::constant(ring, digits.last().unwrap().clone());
        for c in digits.iter().rev().skip(1) {
            acc = acc
                .mul(&phi_t, ring)
                .add(&SkewPoly::constant(ring, c.clone()), ring);
        }
        Ok(acc)
    }

    /// H(phi) = Ht(phi_p) / deg p.
    pub fn height_of(&self) -> Result<usize> {
        let phi_p = self.phi_of(&self.p)?;
        let d = self.p.deg().unwrap();
        let ht = phi_p
            .height(self.field.as_ref())
            .expect("phi_p is nonzero");
        debug_assert_eq!(ht % d, 0, "deg p divides the height");
        Ok(ht / d)
    }

    pub fn is_supersingular(&self) -> Result<bool> {
        Ok(self.height_of()? == self.rank)
    }

    /// j(phi) = g_1^{q+1} / g_2 for rank 2.
    pub fn j_invariant(&self) -> Result<FieldElem> {
        if self.rank != 2 {
            return Err(Error::RankMismatch { expected: 2, got: self.rank });
        }
        let f = &self.field;
        let g1 = &self.coeffs[1];
        let num = f.mul(&f.frobenius(g1, 1), g1); // g_1^{q+1}
        Ok(f.mul(&num, &f.inv(&self.coeffs[2]).unwrap()))
    }
}

/// Degree of H_p from the closed form.
pub fn deuring_degree(q: u64, d: usize) -> u128 {
    let qq = q as u128;
    let qd = qq.pow(d as u32);
    if d % 2 == 0 {
        (qd - 1) / (qq * qq - 1)
    } else {
        (qd - qq) / (qq * qq - 1)
    }
}

/// The Deuring polynomial H_p(x): coefficient of tau^d in phi_p for the
/// generic model phi_T = t + tau + x tau^2 over (A/p)[x], computed by Horner
/// on the base-T digits of p in the twisted ring over (A/p)[x].
pub fn deuring_poly(q: u64, p: &PolyA) -> Result<(Arc<FieldCtx>, Poly)> {
    if !polyring::is_prime(p)? {
        return Err(Error::NotPrime(p.to_string()));
    }
    let d = p.deg().unwrap();
    let fp = gf::make_field(q, d, Some(&p.poly))?;
    let ring = XPolyRing::new(&fp);
    let t = Poly::constant(fp.gen());
    let phi_t: SkewPoly<XPolyRing> =
        SkewPoly::from_coeffs(&ring, vec![t, Poly::one(&fp), Poly::x(&fp)]);
    let emb = fp.embed_from(&p.ctx)?;
    let digits: Vec<Poly> = p
        .coeff_elems()
        .iter()
        .map(|c| Poly::constant(emb.apply(c)))
        .collect();
    let mut acc = SkewPoly::constant(&ring, digits.last().unwrap().clone());
    for c in digits.iter().rev().skip(1) {
        acc = acc
            .mul(&phi_t, &ring)
            .add(&SkewPoly::constant(&ring, c.clone()), &ring);
    }
    let h = acc.coeff(d, &ring);
    Ok((fp, h))
}

/// One supersingular isomorphism class with its computational model.
#[derive(Clone, Debug)]
pub struct SupersingularClass {
    pub index: usize,
    /// Root x_0 of H_p for the model t + tau + x_0 tau^2, or None for the
    /// j = 0 class with model t + tau^2.
    pub x0: Option<FieldElem>,
    pub j_inv: FieldElem,
    /// #Aut(phi): q - 1 for j != 0, q^2 - 1 for j = 0.
    pub aut_order: u64,
    /// Model over F_{p^2}.
    pub module: DrinfeldModule,
}

impl SupersingularClass {
    pub fn encoding(&self, fp2: &FieldCtx) -> String {
        match &self.x0 {
            Some(x) => format!("x0={}", fp2.render(x)),
            None => "j=0".to_string(),
        }
    }
}

/// All supersingular classes in characteristic p, plus the Deuring polynomial
/// data used to enumerate them.
#[derive(Debug)]
pub struct ClassSet {
    pub q: u64,
    pub p: PolyA,
    pub d: usize,
    pub fp: Arc<FieldCtx>,
    pub fp2: Arc<FieldCtx>,
    pub h_p: Poly,
    pub h_p_factors: gf::Factorization,
    pub classes: Vec<SupersingularClass>,
    /// Type number: conjugacy classes of maximal orders.
    pub type_number: usize,
}

impl ClassSet {
    pub fn class_number(&self) -> usize {
        self.classes.len()
    }
}

/// Enumerates the supersingular classes: one per root of H_p in F_{p^2}
/// (ordered by the canonical coefficient encoding), plus the j = 0 class
/// appended last when d is odd.
pub fn supersingular_classes(q: u64, p: &PolyA) -> Result<ClassSet> {
    let (fp, h_p) = deuring_poly(q, p)?;
    let d = p.deg().unwrap();
    let h_p_factors = gf::factor_poly(&h_p, &fp)?;
    let fp2 = gf::extend_field(&fp, 2)?;
    let emb = fp2.embed_from(&fp)?;
    let h_in_fp2 = h_p.map_coeffs(|c| emb.apply(c));
    let roots = gf::roots_in(&h_in_fp2, &fp2)?;
    debug_assert_eq!(roots.len() as u128, deuring_degree(q, d));
    let t2 = emb.apply(&fp.gen());
    let mut classes = Vec::with_capacity(roots.len() + 1);
    for (index, x0) in roots.iter().enumerate() {
        let module = DrinfeldModule::new(
            &fp2,
            &fp,
            p,
            vec![t2.clone(), fp2.one(), x0.clone()],
        )?;
        let j_inv = module.j_invariant()?;
        classes.push(SupersingularClass {
            index,
            x0: Some(x0.clone()),
            j_inv,
            aut_order: q - 1,
            module,
        });
    }
    if d % 2 == 1 {
        let module = DrinfeldModule::new(
            &fp2,
            &fp,
            p,
            vec![t2.clone(), fp2.zero(), fp2.one()],
        )?;
        classes.push(SupersingularClass {
            index: classes.len(),
            x0: None,
            j_inv: fp2.zero(),
            aut_order: q * q - 1,
            module,
        });
    }
    let type_number = h_p_factors.factors.len() + usize::from(d % 2 == 1);
    Ok(ClassSet {
        q,
        p: p.clone(),
        d,
        fp,
        fp2,
        h_p,
        h_p_factors,
        classes,
        type_number,
    })
}

/// Twists psi into an isomorphic module with monic leading coefficient:
/// phi = alpha psi alpha^{-1} where alpha^{q^r - 1} = g_r. The returned
/// module may live in an extension of psi's field.
pub fn normalize_monic_leading(
    psi: &DrinfeldModule,
) -> Result<(DrinfeldModule, FieldElem, Arc<FieldCtx>)> {
    let r = psi.rank;
    let g_r = psi.coeffs[r].clone();
    let field = psi.field.clone();
    if g_r == field.one() {
        return Ok((psi.clone(), field.one(), field));
    }
    let q = field.ground_card() as u128;
    let exp = q.pow(r as u32) - 1;
    // root of X^{q^r - 1} - g_r, extending the field by the smallest factor
    // degree when no root exists yet
    let mut big = field.clone();
    let mut g_big = g_r.clone();
    let alpha = loop {
        let mut coeffs = vec![big.zero(); exp as usize + 1];
        coeffs[0] = big.neg(&g_big);
        coeffs[exp as usize] = big.one();
        let poly = Poly::from_coeffs(coeffs);
        let roots = gf::roots_in(&poly, &big)?;
        if let Some(root) = roots.first() {
            break root.clone();
        }
        let fac = gf::factor_poly(&poly, &big)?;
        let min_deg = fac
            .factors
            .iter()
            .filter_map(|(g, _)| g.deg())
            .min()
            .expect("nonzero polynomial has factors");
        big = gf::extend_field(&big, min_deg)?;
        g_big = big.embed_from(&field)?.apply(&g_r);
    };
    let emb = big.embed_from(&field)?;
    let alpha_inv = big.inv(&alpha).unwrap();
    // conjugation: g_i -> alpha * g_i * alpha^{-q^i}
    let mut coeffs = Vec::with_capacity(r + 1);
    for (i, g) in psi.coeffs.iter().enumerate() {
        let gi = emb.apply(g);
        let tw = big.frobenius(&alpha_inv, i);
        coeffs.push(big.mul(&big.mul(&alpha, &gi), &tw));
    }
    let phi = DrinfeldModule::new(&big, &psi.fp, &psi.p, coeffs)?;
    Ok((phi, alpha, big))
}
