//! Dense univariate polynomials over a `FieldCtx`, with gcds, modular
//! exponentiation by iterated Frobenius, irreducibility testing, and full
//! factorization (squarefree / distinct-degree / equal-degree splitting).
//!
//! Equal-degree splitting is probabilistic with a PRNG seeded from a hash of
//! the input polynomial, so the factor list is identical across runs.

use super::{FieldCtx, FieldElem};
use crate::error::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::cmp::Ordering;
use std::sync::Arc;

/// Polynomial with coefficients in a `FieldCtx`, low degree first, trimmed.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly {
    pub(crate) coeffs: Vec<FieldElem>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn from_coeffs(mut coeffs: Vec<FieldElem>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn constant(c: FieldElem) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn one(ctx: &FieldCtx) -> Self {
        Self::constant(ctx.one())
    }

    pub fn x(ctx: &FieldCtx) -> Self {
        Self::from_coeffs(vec![ctx.zero(), ctx.one()])
    }

    pub fn from_prime_coeffs(ctx: &FieldCtx, coeffs: &[u64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| ctx.from_prime(c)).collect())
    }

    /// Flattens to prime-field coefficients when every coefficient is a
    /// prime-field constant.
    pub fn to_prime_coeffs(&self) -> Option<Vec<u64>> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            if c.0[1..].iter().any(|&d| d != 0) {
                return None;
            }
            out.push(c.0[0]);
        }
        Some(out)
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize, ctx: &FieldCtx) -> FieldElem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| ctx.zero())
    }

    pub fn deg(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree_over(&self, _ctx: &FieldCtx) -> Option<usize> {
        self.deg()
    }

    pub fn is_monic_over(&self, ctx: &FieldCtx) -> bool {
        self.coeffs.last() == Some(&ctx.one())
    }

    pub fn map_coeffs(&self, f: impl Fn(&FieldElem) -> FieldElem) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(f).collect())
    }

    pub fn add(&self, other: &Poly, ctx: &FieldCtx) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeff(i, ctx);
            let b = other.coeff(i, ctx);
            out.push(ctx.add(&a, &b));
        }
        Poly::from_coeffs(out)
    }

    pub fn sub(&self, other: &Poly, ctx: &FieldCtx) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeff(i, ctx);
            let b = other.coeff(i, ctx);
            out.push(ctx.sub(&a, &b));
        }
        Poly::from_coeffs(out)
    }

    pub fn mul(&self, other: &Poly, ctx: &FieldCtx) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![ctx.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = ctx.add(&out[i + j], &ctx.mul(a, b));
                }
            }
        }
        Poly::from_coeffs(out)
    }

    pub fn scale(&self, c: &FieldElem, ctx: &FieldCtx) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|a| ctx.mul(a, c)).collect())
    }

    pub fn divrem(&self, d: &Poly, ctx: &FieldCtx) -> (Poly, Poly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.coeffs.len() < d.coeffs.len() {
            return (Poly::zero(), self.clone());
        }
        let lead_inv = ctx.inv(d.coeffs.last().unwrap()).unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![ctx.zero(); rem.len() - d.coeffs.len() + 1];
        while rem.len() >= d.coeffs.len() {
            let shift = rem.len() - d.coeffs.len();
            let c = ctx.mul(rem.last().unwrap(), &lead_inv);
            quot[shift] = c.clone();
            for (j, bj) in d.coeffs.iter().enumerate() {
                let t = ctx.mul(&c, bj);
                rem[shift + j] = ctx.sub(&rem[shift + j], &t);
            }
            while rem.last().is_some_and(|x| x.is_zero()) {
                rem.pop();
            }
            if rem.is_empty() {
                break;
            }
        }
        (Poly::from_coeffs(quot), Poly::from_coeffs(rem))
    }

    pub fn rem(&self, d: &Poly, ctx: &FieldCtx) -> Poly {
        self.divrem(d, ctx).1
    }

    pub fn make_monic(&self, ctx: &FieldCtx) -> Poly {
        match self.coeffs.last() {
            None => Poly::zero(),
            Some(lc) => {
                let inv = ctx.inv(lc).unwrap();
                self.scale(&inv, ctx)
            }
        }
    }

    pub fn gcd(&self, other: &Poly, ctx: &FieldCtx) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b, ctx);
            a = b;
            b = r;
        }
        a.make_monic(ctx)
    }

    pub fn derivative(&self, ctx: &FieldCtx) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        let p0 = ctx.characteristic();
        let out = self.coeffs[1..]
            .iter()
            .enumerate()
            .map(|(i, c)| ctx.scale(((i as u64) + 1) % p0, c))
            .collect();
        Poly::from_coeffs(out)
    }

    pub fn eval(&self, x: &FieldElem, ctx: &FieldCtx) -> FieldElem {
        let mut acc = ctx.zero();
        for c in self.coeffs.iter().rev() {
            acc = ctx.add(&ctx.mul(&acc, x), c);
        }
        acc
    }

    pub fn mulmod(&self, other: &Poly, m: &Poly, ctx: &FieldCtx) -> Poly {
        self.mul(other, ctx).rem(m, ctx)
    }

    pub fn powmod(&self, mut e: u128, m: &Poly, ctx: &FieldCtx) -> Poly {
        let mut acc = Poly::one(ctx).rem(m, ctx);
        let mut b = self.rem(m, ctx);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mulmod(&b, m, ctx);
            }
            b = b.mulmod(&b, m, ctx);
            e >>= 1;
        }
        acc
    }

    /// self^{p^times} mod m, iterating small powers so no big exponent
    /// integers are ever formed (p = characteristic).
    pub fn pow_p_iter(&self, times: usize, m: &Poly, ctx: &FieldCtx) -> Poly {
        let p0 = ctx.characteristic();
        let mut cur = self.rem(m, ctx);
        for _ in 0..times {
            cur = cur.powmod(p0 as u128, m, ctx);
        }
        cur
    }

    /// Canonical order: by degree, then coefficient vectors compared from the
    /// top down.
    pub fn cmp_canonical(&self, other: &Poly) -> Ordering {
        match self.coeffs.len().cmp(&other.coeffs.len()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        for i in (0..self.coeffs.len()).rev() {
            match FieldCtx::cmp_elems(&self.coeffs[i], &other.coeffs[i]) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        Ordering::Equal
    }
}

/// x^{Q^times} mod m where Q is the cardinality of the context.
fn x_card_power(times: usize, m: &Poly, ctx: &FieldCtx) -> Poly {
    Poly::x(ctx).pow_p_iter(times * ctx.abs_degree(), m, ctx)
}

/// Irreducibility over the coefficient field of the context.
pub fn is_irreducible_over(f: &Poly, ctx: &Arc<FieldCtx>) -> Result<bool> {
    let n = match f.deg() {
        None => return Err(Error::ZeroPolynomial),
        Some(0) => return Ok(false),
        Some(n) => n,
    };
    if n == 1 {
        return Ok(true);
    }
    let x = Poly::x(ctx);
    if x_card_power(n, f, ctx).sub(&x, ctx).rem(f, ctx) != Poly::zero() {
        return Ok(false);
    }
    let mut nn = n;
    let mut primes = Vec::new();
    let mut d = 2;
    while d * d <= nn {
        if nn % d == 0 {
            primes.push(d);
            while nn % d == 0 {
                nn /= d;
            }
        }
        d += 1;
    }
    if nn > 1 {
        primes.push(nn);
    }
    for l in primes {
        let h = x_card_power(n / l, f, ctx).sub(&x, ctx);
        let g = h.gcd(f, ctx);
        if g.deg().is_some_and(|d| d > 0) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn fnv1a_seed(ctx: &FieldCtx, f: &Poly) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    let mut eat = |v: u64| {
        h ^= v;
        h = h.wrapping_mul(0x100000001b3);
    };
    eat(ctx.characteristic());
    for &c in ctx.abs_modulus() {
        eat(c);
    }
    for c in &f.coeffs {
        for &d in c.coeffs() {
            eat(d.wrapping_add(1));
        }
    }
    h
}

/// p-th root of a polynomial all of whose exponents are multiples of p.
fn pth_root(f: &Poly, ctx: &FieldCtx) -> Poly {
    let p0 = ctx.characteristic() as usize;
    let mut out = Vec::new();
    for (i, c) in f.coeffs.iter().enumerate() {
        if i % p0 == 0 {
            // c^{1/p} = c^{p^{D-1}} in a field with p^D elements
            let mut root = c.clone();
            for _ in 0..ctx.abs_degree().saturating_sub(1) {
                let mut acc = root.clone();
                for _ in 1..ctx.characteristic() {
                    acc = ctx.mul(&acc, &root);
                }
                root = acc;
            }
            out.push(root);
        } else {
            debug_assert!(c.is_zero());
        }
    }
    Poly::from_coeffs(out)
}

/// Squarefree decomposition of a monic polynomial in characteristic p.
fn squarefree_decompose(f: &Poly, ctx: &FieldCtx) -> Vec<(Poly, usize)> {
    let p0 = ctx.characteristic() as usize;
    let one = Poly::one(ctx);
    if f.deg() == Some(0) {
        return Vec::new();
    }
    let d = f.derivative(ctx);
    if d.is_zero() {
        let g = pth_root(f, ctx);
        return squarefree_decompose(&g, ctx)
            .into_iter()
            .map(|(h, m)| (h, m * p0))
            .collect();
    }
    let mut res = Vec::new();
    let mut c = f.gcd(&d, ctx);
    let mut w = f.divrem(&c, ctx).0;
    let mut i = 1;
    while w != one {
        let y = w.gcd(&c, ctx);
        let z = w.divrem(&y, ctx).0;
        if z != one {
            res.push((z, i));
        }
        c = c.divrem(&y, ctx).0;
        w = y;
        i += 1;
    }
    if c != one {
        let g = pth_root(&c, ctx);
        for (h, m) in squarefree_decompose(&g, ctx) {
            res.push((h, m * p0));
        }
    }
    res
}

/// Distinct-degree split of a squarefree monic polynomial: returns pairs
/// (product of irreducible factors of degree k, k).
fn distinct_degree_split(f: &Poly, ctx: &FieldCtx) -> Vec<(Poly, usize)> {
    let mut out = Vec::new();
    let mut rest = f.clone();
    let x = Poly::x(ctx);
    let mut h = x.clone();
    let mut k = 1;
    while rest.deg().is_some_and(|d| d >= 2 * k) {
        h = h.pow_p_iter(ctx.abs_degree(), &rest, ctx);
        let g = h.sub(&x, ctx).gcd(&rest, ctx);
        if g.deg().is_some_and(|d| d > 0) {
            out.push((g.clone(), k));
            rest = rest.divrem(&g, ctx).0;
            h = h.rem(&rest, ctx);
        }
        k += 1;
    }
    if rest.deg().is_some_and(|d| d > 0) {
        let d = rest.deg().unwrap();
        out.push((rest, d));
    }
    out
}

fn random_poly(rng: &mut ChaCha8Rng, deg_below: usize, ctx: &FieldCtx) -> Poly {
    let p0 = ctx.characteristic();
    let n = ctx.abs_degree();
    let coeffs = (0..deg_below)
        .map(|_| ctx.elem((0..n).map(|_| rng.gen_range(0..p0)).collect()))
        .collect();
    Poly::from_coeffs(coeffs)
}

/// Equal-degree split: f is monic squarefree, a product of irreducibles all
/// of degree `dd`. Cantor-Zassenhaus for odd characteristic, trace splitting
/// for characteristic 2.
fn equal_degree_split(f: &Poly, dd: usize, ctx: &FieldCtx, rng: &mut ChaCha8Rng) -> Vec<Poly> {
    let deg = f.deg().unwrap();
    if deg == dd {
        return vec![f.clone()];
    }
    let p0 = ctx.characteristic();
    let big_m = ctx.abs_degree() * dd; // [F_{Q^dd} : F_p]
    let one = Poly::one(ctx);
    loop {
        let r = random_poly(rng, deg, ctx);
        if r.deg().is_none() {
            continue;
        }
        let g0 = r.gcd(f, ctx);
        if g0.deg().is_some_and(|d| d > 0) && g0.deg() != f.deg() {
            let rest = f.divrem(&g0, ctx).0;
            let mut out = equal_degree_split(&g0, dd, ctx, rng);
            out.extend(equal_degree_split(&rest, dd, ctx, rng));
            return out;
        }
        let split = if p0 == 2 {
            // trace map sum_{i<M} r^{2^i} mod f
            let mut acc = r.rem(f, ctx);
            let mut cur = r.rem(f, ctx);
            for _ in 1..big_m {
                cur = cur.mulmod(&cur, f, ctx);
                acc = acc.add(&cur, ctx).rem(f, ctx);
            }
            acc
        } else {
            // r^{(Q^dd - 1)/2} via base-p digits: all digits are (p-1)/2
            let half = ((p0 - 1) / 2) as u128;
            let mut acc = Poly::one(ctx);
            let mut cur = r.rem(f, ctx);
            for i in 0..big_m {
                acc = acc.mulmod(&cur.powmod(half, f, ctx), f, ctx);
                if i + 1 < big_m {
                    cur = cur.powmod(p0 as u128, f, ctx);
                }
            }
            acc.sub(&one, ctx)
        };
        let g = split.gcd(f, ctx);
        if g.deg().is_some_and(|d| d > 0) && g.deg() != f.deg() {
            let rest = f.divrem(&g, ctx).0;
            let mut out = equal_degree_split(&g, dd, ctx, rng);
            out.extend(equal_degree_split(&rest, dd, ctx, rng));
            return out;
        }
    }
}

/// Factorization result: unit * product of factor^multiplicity = input.
#[derive(Clone, Debug)]
pub struct Factorization {
    pub unit: FieldElem,
    pub factors: Vec<(Poly, usize)>,
}

/// Factors a nonzero polynomial over the coefficient field into monic
/// irreducibles, sorted by degree then coefficient encoding.
pub fn factor_poly(f: &Poly, ctx: &Arc<FieldCtx>) -> Result<Factorization> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let unit = f.coeffs.last().unwrap().clone();
    let monic = f.make_monic(ctx);
    if monic.deg() == Some(0) {
        return Ok(Factorization { unit, factors: Vec::new() });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(fnv1a_seed(ctx, f));
    let mut factors: Vec<(Poly, usize)> = Vec::new();
    for (part, mult) in squarefree_decompose(&monic, ctx) {
        for (prod, dd) in distinct_degree_split(&part, ctx) {
            for irr in equal_degree_split(&prod, dd, ctx, &mut rng) {
                factors.push((irr, mult));
            }
        }
    }
    factors.sort_by(|a, b| a.0.cmp_canonical(&b.0).then(a.1.cmp(&b.1)));
    Ok(Factorization { unit, factors })
}

/// All roots of f in the given field, repeated per multiplicity, in the
/// canonical element order.
pub fn roots_in(f: &Poly, ctx: &Arc<FieldCtx>) -> Result<Vec<FieldElem>> {
    let fac = factor_poly(f, ctx)?;
    let mut roots = Vec::new();
    for (g, mult) in &fac.factors {
        if g.deg() == Some(1) {
            // monic x + c has root -c
            let root = ctx.neg(&g.coeffs[0]);
            for _ in 0..*mult {
                roots.push(root.clone());
            }
        }
    }
    roots.sort_by(FieldCtx::cmp_elems);
    Ok(roots)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;

    #[test]
    fn x_squared_plus_one_over_f3_irreducible() {
        // Oracle: no roots in F_3.
        let f3 = make_field(3, 1, None).unwrap();
        let f = Poly::from_prime_coeffs(&f3, &[1, 0, 1]);
        for c in 0..3 {
            assert!(!f.eval(&f3.from_prime(c), &f3).is_zero());
        }
        assert!(is_irreducible_over(&f, &f3).unwrap());
        let fac = factor_poly(&f, &f3).unwrap();
        assert_eq!(fac.factors.len(), 1);
        assert_eq!(fac.factors[0].1, 1);
        assert!(roots_in(&f, &f3).unwrap().is_empty());
    }

    #[test]
    fn x_minus_one_has_root_one() {
        let f3 = make_field(3, 1, None).unwrap();
        let f = Poly::from_prime_coeffs(&f3, &[2, 1]); // x + 2 = x - 1
        assert_eq!(roots_in(&f, &f3).unwrap(), vec![f3.one()]);
    }

    #[test]
    fn square_test_drives_quadratic_split() {
        // x^2 - t over A/p: two linear factors iff t is a square there.
        let f3 = make_field(3, 1, None).unwrap();
        let p = Poly::from_prime_coeffs(&f3, &[2, 2, 0, 1]); // T^3+2T+2
        let fp = make_field(3, 3, Some(&p)).unwrap();
        let t = fp.gen();
        // square test via exponentiation: t^{(27-1)/2}
        let is_square = fp.pow(&t, 13) == fp.one();
        let f = Poly::from_coeffs(vec![fp.neg(&t), fp.zero(), fp.one()]);
        let fac = factor_poly(&f, &fp).unwrap();
        if is_square {
            assert_eq!(fac.factors.len(), 2);
            assert!(fac.factors.iter().all(|(g, _)| g.deg() == Some(1)));
        } else {
            assert_eq!(fac.factors.len(), 1);
            assert_eq!(fac.factors[0].0.deg(), Some(2));
        }
    }

    #[test]
    fn factorization_remultiplies_random_polys() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed_0002);
        let fields = [
            make_field(3, 1, None).unwrap(),
            make_field(5, 1, None).unwrap(),
            make_field(3, 4, None).unwrap(),
        ];
        for round in 0..200 {
            let ctx = &fields[round % fields.len()];
            let deg = 1 + rng.gen_range(0..12);
            let coeffs: Vec<_> = (0..=deg)
                .map(|_| {
                    ctx.elem(
                        (0..ctx.abs_degree())
                            .map(|_| rng.gen_range(0..ctx.characteristic()))
                            .collect(),
                    )
                })
                .collect();
            let f = Poly::from_coeffs(coeffs);
            if f.is_zero() {
                continue;
            }
            let fac = factor_poly(&f, ctx).unwrap();
            let mut prod = Poly::constant(fac.unit.clone());
            for (g, m) in &fac.factors {
                assert!(is_irreducible_over(g, ctx).unwrap(), "non-irreducible factor");
                for _ in 0..*m {
                    prod = prod.mul(g, ctx);
                }
            }
            assert_eq!(prod, f, "re-multiplication mismatch in round {round}");
        }
    }
}
