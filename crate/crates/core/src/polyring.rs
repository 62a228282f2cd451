//! The commutative ring A = F_q[T]: monic polynomials, primes, divisor
//! enumeration, and the divisor sum sigma_p with its closed form.

use crate::error::{Error, Result};
use crate::gf::{self, FieldCtx, FieldElem, Poly};
use std::fmt;
use std::sync::Arc;

/// Element of A = F_q[T], low degree first, no trailing zeros.
#[derive(Clone, Debug)]
pub struct PolyA {
    pub ctx: Arc<FieldCtx>,
    pub poly: Poly,
}

impl PartialEq for PolyA {
    fn eq(&self, other: &Self) -> bool {
        FieldCtx::same_field(&self.ctx, &other.ctx) && self.poly == other.poly
    }
}

impl Eq for PolyA {}

impl PolyA {
    pub fn new(ctx: &Arc<FieldCtx>, poly: Poly) -> Self {
        PolyA { ctx: ctx.clone(), poly }
    }

    pub fn zero(ctx: &Arc<FieldCtx>) -> Self {
        Self::new(ctx, Poly::zero())
    }

    pub fn one(ctx: &Arc<FieldCtx>) -> Self {
        Self::new(ctx, Poly::one(ctx))
    }

    pub fn t(ctx: &Arc<FieldCtx>) -> Self {
        Self::new(ctx, Poly::x(ctx))
    }

    pub fn from_prime_coeffs(ctx: &Arc<FieldCtx>, coeffs: &[u64]) -> Self {
        Self::new(ctx, Poly::from_prime_coeffs(ctx, coeffs))
    }

    pub fn deg(&self) -> Option<usize> {
        self.poly.deg()
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn is_monic(&self) -> bool {
        self.poly.is_monic_over(&self.ctx)
    }

    pub fn is_one(&self) -> bool {
        self.poly.deg() == Some(0) && self.poly.coeffs()[0] == self.ctx.one()
    }

    pub fn mul(&self, other: &PolyA) -> PolyA {
        Self::new(&self.ctx, self.poly.mul(&other.poly, &self.ctx))
    }

    pub fn add(&self, other: &PolyA) -> PolyA {
        Self::new(&self.ctx, self.poly.add(&other.poly, &self.ctx))
    }

    pub fn sub(&self, other: &PolyA) -> PolyA {
        Self::new(&self.ctx, self.poly.sub(&other.poly, &self.ctx))
    }

    pub fn divrem(&self, other: &PolyA) -> (PolyA, PolyA) {
        let (q, r) = self.poly.divrem(&other.poly, &self.ctx);
        (Self::new(&self.ctx, q), Self::new(&self.ctx, r))
    }

    pub fn divides(&self, other: &PolyA) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.poly.rem(&self.poly, &self.ctx).is_zero()
    }

    pub fn pow(&self, e: usize) -> PolyA {
        let mut acc = Self::one(&self.ctx);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Image of this polynomial under T -> t_image inside `big` (the
    /// structure map gamma extended to A, or reduction mod a prime).
    pub fn eval_in(&self, big: &Arc<FieldCtx>, t_image: &FieldElem) -> Result<FieldElem> {
        let emb = big.embed_from(&self.ctx)?;
        let mut acc = big.zero();
        for c in self.poly.coeffs().iter().rev() {
            acc = big.add(&big.mul(&acc, t_image), &emb.apply(c));
        }
        Ok(acc)
    }

    /// Base-q digit list (constant term first), as ground field elements.
    pub fn coeff_elems(&self) -> &[FieldElem] {
        self.poly.coeffs()
    }
}

impl fmt::Display for PolyA {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let ctx = &self.ctx;
        let mut terms = Vec::new();
        for (i, c) in self.poly.coeffs().iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let coeff_str = if c == &ctx.one() && i > 0 {
                String::new()
            } else {
                ctx.render(c)
            };
            let var = match i {
                0 => String::new(),
                1 => "T".to_string(),
                _ => format!("T^{i}"),
            };
            terms.push(match (coeff_str.is_empty(), var.is_empty()) {
                (true, false) => var,
                (false, true) => coeff_str,
                (false, false) => format!("{coeff_str}{var}"),
                (true, true) => unreachable!(),
            });
        }
        write!(f, "{}", terms.join("+"))
    }
}

/// Parses "T^4+T+2" (also accepting spaces, `**` for powers, and `*` between
/// coefficient and T). Coefficients are integers reduced into the prime field;
/// requires a prime ground field.
pub fn parse_poly_a(ctx: &Arc<FieldCtx>, s: &str) -> Result<PolyA> {
    if ctx.abs_degree() != 1 {
        return Err(Error::Unsupported(
            "polynomial strings are supported over prime F_q only".into(),
        ));
    }
    let cleaned: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let cleaned = cleaned.replace("**", "^");
    if cleaned.is_empty() {
        return Err(Error::Parse("empty polynomial string".into()));
    }
    // split into signed terms
    let mut terms: Vec<(bool, String)> = Vec::new();
    let mut cur = String::new();
    let mut neg = false;
    for (i, ch) in cleaned.chars().enumerate() {
        match ch {
            '+' | '-' if i > 0 => {
                terms.push((neg, std::mem::take(&mut cur)));
                neg = ch == '-';
            }
            '-' => neg = true,
            _ => cur.push(ch),
        }
    }
    terms.push((neg, cur));
    let p0 = ctx.characteristic();
    let mut coeffs: Vec<u64> = Vec::new();
    let mut bump = |deg: usize, val: u64, negated: bool| {
        if coeffs.len() <= deg {
            coeffs.resize(deg + 1, 0);
        }
        let v = val % p0;
        let v = if negated { (p0 - v) % p0 } else { v };
        coeffs[deg] = (coeffs[deg] + v) % p0;
    };
    for (negated, term) in terms {
        if term.is_empty() {
            return Err(Error::Parse(format!("malformed polynomial: {s}")));
        }
        let term = term.replace('*', "");
        if let Some(tpos) = term.find(['T', 't']) {
            let (coef_str, rest) = term.split_at(tpos);
            let rest = &rest[1..];
            let coef = if coef_str.is_empty() {
                1
            } else {
                coef_str
                    .parse::<u64>()
                    .map_err(|_| Error::Parse(format!("bad coefficient in: {s}")))?
            };
            let exp = if rest.is_empty() {
                1
            } else {
                let e = rest
                    .strip_prefix('^')
                    .ok_or_else(|| Error::Parse(format!("bad exponent in: {s}")))?;
                e.parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad exponent in: {s}")))?
            };
            bump(exp, coef, negated);
        } else {
            let coef = term
                .parse::<u64>()
                .map_err(|_| Error::Parse(format!("bad constant in: {s}")))?;
            bump(0, coef, negated);
        }
    }
    Ok(PolyA::from_prime_coeffs(ctx, &coeffs))
}

/// All monic polynomials of degree m, each exactly once, ordered by their
/// low-degree-first coefficient vector read as a base-q integer.
pub fn monic_of_degree(ctx: &Arc<FieldCtx>, m: usize) -> Vec<PolyA> {
    let q = ctx.ground_card();
    let count = q.checked_pow(m as u32).expect("degree too large to enumerate");
    let mut out = Vec::with_capacity(count as usize);
    for code in 0..count {
        let mut coeffs = Vec::with_capacity(m + 1);
        let mut rem = code;
        for _ in 0..m {
            coeffs.push(ctx.scalar_from_index(rem % q));
            rem /= q;
        }
        coeffs.push(ctx.one());
        out.push(PolyA::new(ctx, Poly::from_coeffs(coeffs)));
    }
    out
}

/// Irreducibility in A: f must be monic nonconstant.
pub fn is_prime(f: &PolyA) -> Result<bool> {
    match f.deg() {
        None | Some(0) => return Err(Error::ConstantInput),
        _ => {}
    }
    if !f.is_monic() {
        return Err(Error::Parse("primality is defined for monic polynomials".into()));
    }
    gf::poly::is_irreducible_over(&f.poly, &f.ctx)
}

/// All monic primes of the given degree, in enumeration order.
pub fn primes_of_degree(ctx: &Arc<FieldCtx>, deg: usize) -> Vec<PolyA> {
    monic_of_degree(ctx, deg)
        .into_iter()
        .filter(|f| is_prime(f).unwrap_or(false))
        .collect()
}

/// All monic divisors of a monic m, via factorization, sorted canonically.
pub fn monic_divisors(m: &PolyA) -> Result<Vec<PolyA>> {
    if m.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let fac = gf::factor_poly(&m.poly, &m.ctx)?;
    let mut divisors = vec![PolyA::one(&m.ctx)];
    for (g, mult) in &fac.factors {
        let ga = PolyA::new(&m.ctx, g.clone());
        let mut next = Vec::with_capacity(divisors.len() * (mult + 1));
        for d in &divisors {
            let mut cur = d.clone();
            next.push(cur.clone());
            for _ in 0..*mult {
                cur = cur.mul(&ga);
                next.push(cur.clone());
            }
        }
        divisors = next;
    }
    divisors.sort_by(|a, b| a.poly.cmp_canonical(&b.poly));
    Ok(divisors)
}

/// sigma_p(m) = sum of |m'| = q^{deg m'} over monic divisors m' of m with
/// p not dividing m'.
pub fn sigma_p(m: &PolyA, p: &PolyA) -> Result<u128> {
    let q = m.ctx.ground_card() as u128;
    let mut total: u128 = 0;
    for d in monic_divisors(m)? {
        if p.divides(&d) {
            continue;
        }
        let e = d.deg().unwrap_or(0) as u32;
        total += q.pow(e);
    }
    Ok(total)
}

/// Closed form for the degree-M sum of sigma_p over all monic m of degree M:
/// q^M (q^{M+1}-1)/(q-1) for M <= d-1, and q^{2M-d+1} (|p|-1)/(q-1) for
/// M >= d-1 (both agree at M = d-1).
pub fn sigma_p_degree_sum(big_m: usize, p: &PolyA) -> u128 {
    let q = p.ctx.ground_card() as u128;
    let d = p.deg().expect("p must be nonconstant");
    let m = big_m as u32;
    if big_m <= d - 1 {
        q.pow(m) * (q.pow(m + 1) - 1) / (q - 1)
    } else {
        let norm_p = q.pow(d as u32);
        q.pow(2 * m - d as u32 + 1) * (norm_p - 1) / (q - 1)
    }
}
