//! The twisted polynomial ring R{tau} with tau a = a^q tau, generic over any
//! coefficient structure carrying a q-power endomorphism. Instantiated with a
//! field for isogeny arithmetic and with F_p[x] for the Deuring-polynomial
//! computation.
//!
//! Only right division is implemented; every algorithm here reduces norm and
//! divisibility questions to right division.

use crate::error::{Error, Result};
use crate::gf::{FieldCtx, FieldElem, Poly};
use std::fmt;
use std::sync::Arc;

/// Coefficient structure for the twisted ring: a commutative ring with a
/// distinguished q-power endomorphism.
pub trait TwistRing {
    type Elem: Clone + PartialEq + fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; None outside a field or for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    /// a -> a^{q^e}.
    fn q_power(&self, a: &Self::Elem, e: usize) -> Self::Elem;
}

impl TwistRing for FieldCtx {
    type Elem = FieldElem;

    fn zero(&self) -> FieldElem {
        FieldCtx::zero(self)
    }
    fn one(&self) -> FieldElem {
        FieldCtx::one(self)
    }
    fn is_zero(&self, a: &FieldElem) -> bool {
        FieldElem::is_zero(a)
    }
    fn add(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        FieldCtx::add(self, a, b)
    }
    fn sub(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        FieldCtx::sub(self, a, b)
    }
    fn neg(&self, a: &FieldElem) -> FieldElem {
        FieldCtx::neg(self, a)
    }
    fn mul(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        FieldCtx::mul(self, a, b)
    }
    fn inv(&self, a: &FieldElem) -> Option<FieldElem> {
        FieldCtx::inv(self, a)
    }
    fn q_power(&self, a: &FieldElem, e: usize) -> FieldElem {
        self.frobenius(a, e)
    }
}

/// The polynomial ring k[x] over a field context, as a twist-ring coefficient
/// structure: the q-power map raises coefficients to the q-th power and
/// scales exponents x^i -> x^{iq}.
#[derive(Clone)]
pub struct XPolyRing {
    pub field: Arc<FieldCtx>,
}

impl XPolyRing {
    pub fn new(field: &Arc<FieldCtx>) -> Self {
        XPolyRing { field: field.clone() }
    }
}

impl TwistRing for XPolyRing {
    type Elem = Poly;

    fn zero(&self) -> Poly {
        Poly::zero()
    }
    fn one(&self) -> Poly {
        Poly::one(&self.field)
    }
    fn is_zero(&self, a: &Poly) -> bool {
        Poly::is_zero(a)
    }
    fn add(&self, a: &Poly, b: &Poly) -> Poly {
        a.add(b, &self.field)
    }
    fn sub(&self, a: &Poly, b: &Poly) -> Poly {
        a.sub(b, &self.field)
    }
    fn neg(&self, a: &Poly) -> Poly {
        Poly::zero().sub(a, &self.field)
    }
    fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        a.mul(b, &self.field)
    }
    fn inv(&self, a: &Poly) -> Option<Poly> {
        if a.deg() == Some(0) {
            self.field.inv(&a.coeffs()[0]).map(Poly::constant)
        } else {
            None
        }
    }
    fn q_power(&self, a: &Poly, e: usize) -> Poly {
        let q = self.field.ground_card();
        let mut cur = a.clone();
        for _ in 0..e {
            let deg = match cur.deg() {
                None => return Poly::zero(),
                Some(d) => d,
            };
            let mut out = vec![self.field.zero(); deg * (q as usize) + 1];
            for (i, c) in cur.coeffs().iter().enumerate() {
                if !c.is_zero() {
                    out[i * q as usize] = self.field.frobenius(c, 1);
                }
            }
            cur = Poly::from_coeffs(out);
        }
        cur
    }
}

/// Element of R{tau}: coefficient i multiplies tau^i. The stored form has a
/// nonzero leading coefficient; the zero polynomial is the empty vector.
pub struct SkewPoly<R: TwistRing> {
    coeffs: Vec<R::Elem>,
}

impl<R: TwistRing> Clone for SkewPoly<R> {
    fn clone(&self) -> Self {
        SkewPoly { coeffs: self.coeffs.clone() }
    }
}

impl<R: TwistRing> PartialEq for SkewPoly<R> {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl<R: TwistRing> Eq for SkewPoly<R> {}

impl<R: TwistRing> fmt::Debug for SkewPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SkewPoly({:?})", self.coeffs)
    }
}

impl<R: TwistRing> SkewPoly<R> {
    pub fn zero() -> Self {
        SkewPoly { coeffs: Vec::new() }
    }

    pub fn from_coeffs(ring: &R, mut coeffs: Vec<R::Elem>) -> Self {
        while coeffs.last().is_some_and(|c| ring.is_zero(c)) {
            coeffs.pop();
        }
        SkewPoly { coeffs }
    }

    pub fn constant(ring: &R, c: R::Elem) -> Self {
        Self::from_coeffs(ring, vec![c])
    }

    pub fn one(ring: &R) -> Self {
        Self::constant(ring, ring.one())
    }

    /// c * tau^e.
    pub fn monomial(ring: &R, c: R::Elem, e: usize) -> Self {
        let mut coeffs = vec![ring.zero(); e + 1];
        coeffs[e] = c;
        Self::from_coeffs(ring, coeffs)
    }

    pub fn tau(ring: &R) -> Self {
        Self::monomial(ring, ring.one(), 1)
    }

    pub fn coeffs(&self) -> &[R::Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize, ring: &R) -> R::Elem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| ring.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn deg_tau(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    /// Lowest tau-exponent with nonzero coefficient (the height Ht).
    pub fn height(&self, ring: &R) -> Option<usize> {
        self.coeffs.iter().position(|c| !ring.is_zero(c))
    }

    pub fn add(&self, other: &Self, ring: &R) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(ring.add(&self.coeff(i, ring), &other.coeff(i, ring)));
        }
        Self::from_coeffs(ring, out)
    }

    pub fn sub(&self, other: &Self, ring: &R) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(ring.sub(&self.coeff(i, ring), &other.coeff(i, ring)));
        }
        Self::from_coeffs(ring, out)
    }

    /// Left scalar multiple c * f.
    pub fn scale(&self, c: &R::Elem, ring: &R) -> Self {
        Self::from_coeffs(ring, self.coeffs.iter().map(|a| ring.mul(c, a)).collect())
    }

    /// Product under the commutation rule tau a = a^q tau:
    /// (fg)_n = sum_{i+j=n} f_i (g_j)^{q^i}.
    pub fn mul(&self, other: &Self, ring: &R) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let n = self.coeffs.len() + other.coeffs.len() - 1;
        let mut out = vec![ring.zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if ring.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if ring.is_zero(b) {
                    continue;
                }
                let tw = ring.q_power(b, i);
                out[i + j] = ring.add(&out[i + j], &ring.mul(a, &tw));
            }
        }
        Self::from_coeffs(ring, out)
    }

    /// Right division: f = quotient * g + remainder with
    /// deg_tau(remainder) < deg_tau(g). Requires field coefficients.
    pub fn right_divmod(&self, g: &Self, ring: &R) -> Result<(Self, Self)> {
        if g.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let dg = g.deg_tau().unwrap();
        let g_lead = g.coeffs.last().unwrap();
        let mut rem = self.coeffs.clone();
        let trim = |v: &mut Vec<R::Elem>| {
            while v.last().is_some_and(|c| ring.is_zero(c)) {
                v.pop();
            }
        };
        trim(&mut rem);
        if rem.len() < g.coeffs.len() {
            return Ok((Self::zero(), Self::from_coeffs(ring, rem)));
        }
        let mut quot = vec![ring.zero(); rem.len() - dg];
        while rem.len() >= g.coeffs.len() {
            let e = rem.len() - g.coeffs.len();
            // (c tau^e) * g has leading coefficient c * g_lead^{q^e}
            let lead_tw = ring.q_power(g_lead, e);
            let c = ring
                .mul(rem.last().unwrap(), &ring.inv(&lead_tw).ok_or(Error::DivisionByZero)?);
            quot[e] = c.clone();
            for (j, gj) in g.coeffs.iter().enumerate() {
                let t = ring.mul(&c, &ring.q_power(gj, e));
                rem[e + j] = ring.sub(&rem[e + j], &t);
            }
            trim(&mut rem);
        }
        Ok((Self::from_coeffs(ring, quot), Self::from_coeffs(ring, rem)))
    }

    pub fn right_rem(&self, g: &Self, ring: &R) -> Result<Self> {
        Ok(self.right_divmod(g, ring)?.1)
    }

    /// Monic generator of the largest common right divisor.
    pub fn right_gcd(&self, other: &Self, ring: &R) -> Result<Self> {
        if self.is_zero() && other.is_zero() {
            return Err(Error::BothZero);
        }
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.right_rem(&b, ring)?;
            a = b;
            b = r;
        }
        // normalize to monic by left-scaling
        let lc = a.coeffs.last().unwrap();
        let inv = ring.inv(lc).ok_or(Error::DivisionByZero)?;
        Ok(a.scale(&inv, ring))
    }

    /// True when `self` right-divides `f` exactly.
    pub fn right_divides(&self, f: &Self, ring: &R) -> Result<bool> {
        Ok(f.right_rem(self, ring)?.is_zero())
    }
}

impl SkewPoly<FieldCtx> {
    /// The q-linearized evaluation f(beta) = sum f_i beta^{q^i}, with beta in
    /// an extension of the coefficient field reached by `embed`.
    pub fn evaluate_via(
        &self,
        src: &Arc<FieldCtx>,
        big: &Arc<FieldCtx>,
        beta: &FieldElem,
    ) -> Result<FieldElem> {
        let emb = big.embed_from(src)?;
        let mut acc = big.zero();
        let mut pow = beta.clone(); // beta^{q^i}
        for c in &self.coeffs {
            if !c.is_zero() {
                acc = big.add(&acc, &big.mul(&emb.apply(c), &pow));
            }
            pow = big.frobenius(&pow, 1);
        }
        Ok(acc)
    }

    /// Evaluation inside the coefficient field itself.
    pub fn evaluate(&self, ctx: &Arc<FieldCtx>, beta: &FieldElem) -> FieldElem {
        self.evaluate_via(ctx, ctx, beta).unwrap()
    }

    /// Maps coefficients into a larger field.
    pub fn map_into(&self, src: &Arc<FieldCtx>, big: &Arc<FieldCtx>) -> Result<SkewPoly<FieldCtx>> {
        let emb = big.embed_from(src)?;
        Ok(SkewPoly {
            coeffs: self.coeffs.iter().map(|c| emb.apply(c)).collect(),
        })
    }

    /// Rendering mirroring the basis listings: "c0 + c1 τ + ... + ck τ^k".
    pub fn render(&self, ctx: &FieldCtx) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let cs = ctx.render(c);
            let term = match i {
                0 => cs,
                1 if cs == "1" => "τ".to_string(),
                1 => format!("{cs}·τ"),
                _ if cs == "1" => format!("τ^{i}"),
                _ => format!("{cs}·τ^{i}"),
            };
            terms.push(term);
        }
        terms.join(" + ")
    }
}
