//! Dense univariate polynomial arithmetic over a prime field, on raw
//! coefficient slices. This is the internal engine behind `FieldCtx`
//! construction (modular reduction tables, irreducibility of candidate
//! moduli, deterministic modulus search). Coefficients are stored low
//! degree first with no trailing zeros.

use super::prime::PrimeTables;
use once_cell::sync::Lazy;
use std::collections::HashMap;
use std::sync::Mutex;

pub fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

pub fn deg(v: &[u64]) -> Option<usize> {
    if v.is_empty() {
        None
    } else {
        Some(v.len() - 1)
    }
}

pub fn add(t: &PrimeTables, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut out = vec![0u64; a.len().max(b.len())];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *o = t.add(x, y);
    }
    trim(&mut out);
    out
}

pub fn sub(t: &PrimeTables, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut out = vec![0u64; a.len().max(b.len())];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *o = t.sub(x, y);
    }
    trim(&mut out);
    out
}

pub fn mul(t: &PrimeTables, a: &[u64], b: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = t.add(out[i + j], t.mul(x, y));
        }
    }
    trim(&mut out);
    out
}

/// Quotient and remainder of `a` by `b` (leading coefficient of `b` inverted).
pub fn divrem(t: &PrimeTables, a: &[u64], b: &[u64]) -> (Vec<u64>, Vec<u64>) {
    assert!(!b.is_empty(), "division by zero polynomial");
    let mut rem: Vec<u64> = a.to_vec();
    trim(&mut rem);
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let db = b.len() - 1;
    let lead_inv = t.inv(b[db]);
    let mut quot = vec![0u64; rem.len() - db];
    while rem.len() >= b.len() {
        let shift = rem.len() - b.len();
        let c = t.mul(*rem.last().unwrap(), lead_inv);
        quot[shift] = c;
        for (j, &bj) in b.iter().enumerate() {
            rem[shift + j] = t.sub(rem[shift + j], t.mul(c, bj));
        }
        trim(&mut rem);
    }
    trim(&mut quot);
    (quot, rem)
}

pub fn rem(t: &PrimeTables, a: &[u64], b: &[u64]) -> Vec<u64> {
    divrem(t, a, b).1
}

pub fn gcd(t: &PrimeTables, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut x: Vec<u64> = a.to_vec();
    let mut y: Vec<u64> = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = rem(t, &x, &y);
        x = y;
        y = r;
    }
    // make monic
    if let Some(&lc) = x.last() {
        if lc != 1 {
            let inv = t.inv(lc);
            for c in &mut x {
                *c = t.mul(*c, inv);
            }
        }
    }
    x
}

pub fn mulmod(t: &PrimeTables, a: &[u64], b: &[u64], m: &[u64]) -> Vec<u64> {
    rem(t, &mul(t, a, b), m)
}

/// x^e mod m by square-and-multiply over the exponent bits.
pub fn powmod_x(t: &PrimeTables, e: u128, m: &[u64]) -> Vec<u64> {
    let x = vec![0, 1];
    powmod(t, &x, e, m)
}

pub fn powmod(t: &PrimeTables, base: &[u64], mut e: u128, m: &[u64]) -> Vec<u64> {
    let mut acc = rem(t, &[1], m);
    let mut b = rem(t, base, m);
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(t, &acc, &b, m);
        }
        b = mulmod(t, &b, &b, m);
        e >>= 1;
    }
    acc
}

/// Repeatedly raises to the p-th power mod m, `times` times, i.e. base^{p^times} mod m.
pub fn pow_p_iter(t: &PrimeTables, base: &[u64], times: usize, m: &[u64]) -> Vec<u64> {
    let mut cur = rem(t, base, m);
    for _ in 0..times {
        cur = powmod(t, &cur, t.p as u128, m);
    }
    cur
}

fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Irreducibility of a monic degree-n polynomial over F_p: x^{p^n} = x mod f
/// and gcd(x^{p^{n/l}} - x, f) = 1 for every prime l | n.
pub fn is_irreducible(t: &PrimeTables, f: &[u64]) -> bool {
    let n = match deg(f) {
        Some(0) | None => return false,
        Some(n) => n,
    };
    if n == 1 {
        return true;
    }
    let xpn = pow_p_iter(t, &[0, 1], n, f);
    if xpn != vec![0, 1] {
        return false;
    }
    for l in prime_divisors(n) {
        let xpk = pow_p_iter(t, &[0, 1], n / l, f);
        let diff = sub(t, &xpk, &[0, 1]);
        if deg(&gcd(t, &diff, f)).is_some_and(|d| d > 0) {
            return false;
        }
    }
    true
}

static IRRED_CACHE: Lazy<Mutex<HashMap<(u64, usize), Vec<u64>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

/// The lexicographically smallest monic irreducible of degree n over F_p,
/// where candidates are ordered by their low-degree-first coefficient vector
/// read as a base-p integer. Results are cached per (p, n).
pub fn lex_smallest_irreducible(t: &PrimeTables, n: usize) -> Vec<u64> {
    assert!(n >= 1);
    if let Some(f) = IRRED_CACHE.lock().unwrap().get(&(t.p, n)) {
        return f.clone();
    }
    let p = t.p;
    let mut digits = vec![0u64; n];
    let f = loop {
        let mut cand = digits.clone();
        cand.push(1);
        if is_irreducible(t, &cand) {
            break cand;
        }
        // increment the base-p counter over the low coefficients
        let mut i = 0;
        loop {
            assert!(i < n, "no irreducible of degree {n} found over F_{p}");
            digits[i] += 1;
            if digits[i] < p {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    };
    IRRED_CACHE
        .lock()
        .unwrap()
        .insert((t.p, n), f.clone());
    f
}
