//! Dense univariate polynomials over `Z/l^N`.
//!
//! A polynomial is a `Vec<u64>` of coefficients in ascending order with no
//! trailing zeros; the zero polynomial is the empty vector. Division is only
//! ever by polynomials with a unit leading coefficient, which is all a local
//! coefficient ring allows.

use crate::error::{Error, Result};
use crate::ptower::Modulus;

pub type Poly = Vec<u64>;

pub fn trim(p: &mut Poly) {
    while p.last() == Some(&0) {
        p.pop();
    }
}

pub fn degree(p: &[u64]) -> Option<usize> {
    p.iter().rposition(|&c| c != 0)
}

pub fn from_i64(m: &Modulus, coeffs: &[i64]) -> Poly {
    let mut p: Poly = coeffs.iter().map(|&c| m.reduce_i64(c)).collect();
    trim(&mut p);
    p
}

/// Reduce coefficients into `m` (e.g. drop precision to the residue field).
pub fn reduce(m: &Modulus, p: &[u64]) -> Poly {
    let mut r: Poly = p.iter().map(|&c| m.reduce(c)).collect();
    trim(&mut r);
    r
}

pub fn is_monic(p: &[u64]) -> bool {
    p.last() == Some(&1)
}

pub fn add(m: &Modulus, a: &[u64], b: &[u64]) -> Poly {
    let n = a.len().max(b.len());
    let mut r: Poly = (0..n)
        .map(|i| m.add(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
        .collect();
    trim(&mut r);
    r
}

pub fn sub(m: &Modulus, a: &[u64], b: &[u64]) -> Poly {
    let n = a.len().max(b.len());
    let mut r: Poly = (0..n)
        .map(|i| m.sub(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
        .collect();
    trim(&mut r);
    r
}

pub fn scale(m: &Modulus, a: &[u64], c: u64) -> Poly {
    let mut r: Poly = a.iter().map(|&x| m.mul(x, c)).collect();
    trim(&mut r);
    r
}

pub fn mul(m: &Modulus, a: &[u64], b: &[u64]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut r = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            r[i + j] = m.add(r[i + j], m.mul(x, y));
        }
    }
    trim(&mut r);
    r
}

pub fn derivative(m: &Modulus, a: &[u64]) -> Poly {
    let mut r: Poly = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| m.mul(c, i as u64 % m.q()))
        .collect();
    trim(&mut r);
    r
}

/// Quotient and remainder; the divisor's leading coefficient must be a unit.
pub fn divrem(m: &Modulus, a: &[u64], b: &[u64]) -> (Poly, Poly) {
    let db = degree(b).expect("division by the zero polynomial");
    let lead_inv = m.inv(b[db]).expect("leading coefficient must be a unit");
    let mut r: Poly = a.to_vec();
    trim(&mut r);
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut quo = vec![0u64; r.len() - db];
    for k in (0..quo.len()).rev() {
        let c = m.mul(r[k + db], lead_inv);
        quo[k] = c;
        if c != 0 {
            for (j, &bj) in b[..=db].iter().enumerate() {
                r[k + j] = m.sub(r[k + j], m.mul(c, bj));
            }
        }
    }
    trim(&mut quo);
    trim(&mut r);
    (quo, r)
}

pub fn rem(m: &Modulus, a: &[u64], b: &[u64]) -> Poly {
    divrem(m, a, b).1
}

pub fn mulmod(m: &Modulus, a: &[u64], b: &[u64], g: &[u64]) -> Poly {
    rem(m, &mul(m, a, b), g)
}

pub fn powmod(m: &Modulus, a: &[u64], mut e: u128, g: &[u64]) -> Poly {
    let mut acc = rem(m, &[1], g);
    let mut base = rem(m, a, g);
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(m, &acc, &base, g);
        }
        base = mulmod(m, &base, &base, g);
        e >>= 1;
    }
    acc
}

/// Make monic over a field (precision-1 modulus).
pub fn monic(m: &Modulus, a: &[u64]) -> Poly {
    match degree(a) {
        None => Vec::new(),
        Some(d) => scale(m, a, m.inv(a[d]).expect("leading coefficient must be a unit")),
    }
}

/// Monic gcd over the residue field.
pub fn gcd(m: &Modulus, a: &[u64], b: &[u64]) -> Poly {
    debug_assert_eq!(m.precision(), 1);
    let (mut x, mut y) = (reduce(m, a), reduce(m, b));
    while !y.is_empty() {
        let r = rem(m, &x, &y);
        x = y;
        y = r;
    }
    monic(m, &x)
}

/// Extended gcd over the residue field: returns `(g, s, t)` with
/// `s*a + t*b = g` and `g` monic.
pub fn ext_gcd(m: &Modulus, a: &[u64], b: &[u64]) -> (Poly, Poly, Poly) {
    debug_assert_eq!(m.precision(), 1);
    let (mut r0, mut r1) = (reduce(m, a), reduce(m, b));
    let (mut s0, mut s1): (Poly, Poly) = (vec![1], Vec::new());
    let (mut t0, mut t1): (Poly, Poly) = (Vec::new(), vec![1]);
    while !r1.is_empty() {
        let (quo, r) = divrem(m, &r0, &r1);
        let s = sub(m, &s0, &mul(m, &quo, &s1));
        let t = sub(m, &t0, &mul(m, &quo, &t1));
        (r0, r1) = (r1, r);
        (s0, s1) = (s1, s);
        (t0, t1) = (t1, t);
    }
    match degree(&r0) {
        None => (r0, s0, t0),
        Some(d) => {
            let c = m.inv(r0[d]).unwrap();
            (scale(m, &r0, c), scale(m, &s0, c), scale(m, &t0, c))
        }
    }
}

/// Evaluate at an integer point.
pub fn eval(m: &Modulus, a: &[u64], x: u64) -> u64 {
    a.iter().rev().fold(0, |acc, &c| m.add(m.mul(acc, x), c))
}

/// Irreducibility over `F_l` by the gcd test `gcd(x^{l^i} - x, f) = 1` for
/// `i <= deg f / 2`.
pub fn is_irreducible(m: &Modulus, f: &[u64]) -> bool {
    let m = m.residue();
    let f = monic(&m, &reduce(&m, f));
    let Some(d) = degree(&f) else { return false };
    if d == 0 {
        return false;
    }
    let x: Poly = vec![0, 1];
    let mut xp = rem(&m, &x, &f);
    for _ in 1..=d / 2 {
        xp = powmod(&m, &xp, m.l() as u128, &f);
        let g = gcd(&m, &sub(&m, &xp, &x), &f);
        if degree(&g) != Some(0) {
            return false;
        }
    }
    true
}

/// Squarefree over `F_l`, i.e. `gcd(f, f') = 1`.
pub fn is_squarefree(m: &Modulus, f: &[u64]) -> bool {
    let m = m.residue();
    let f = reduce(&m, f);
    if f.is_empty() {
        return false;
    }
    degree(&gcd(&m, &f, &derivative(&m, &f))) == Some(0)
}

/// All monic polynomials of the given degree over `Z/q`, in a fixed order.
///
/// Linear polynomials come in root order `x - 0, x - 1, ...`; higher degrees
/// in lexicographic order of the coefficient vector.
pub fn monic_polys(m: &Modulus, deg: usize) -> impl Iterator<Item = Poly> + '_ {
    let q = m.q();
    let count = q.pow(deg as u32);
    (0..count).map(move |mut idx| {
        if deg == 1 {
            return vec![m.neg(idx), 1];
        }
        let mut p = Vec::with_capacity(deg + 1);
        for _ in 0..deg {
            p.push(idx % q);
            idx /= q;
        }
        p.push(1);
        p
    })
}

/// First monic irreducible polynomial of the given degree over `F_l`.
pub fn first_irreducible(m: &Modulus, deg: usize) -> Poly {
    let r = m.residue();
    let found = monic_polys(&r, deg).find(|p| is_irreducible(&r, p));
    found.expect("irreducible polynomials exist in every degree")
}

/// Parse the text form `[c0,c1,...,ck]` (ascending integer coefficients).
pub fn parse(text: &str) -> Result<Vec<i64>> {
    let t = text.trim();
    let inner = t
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| Error::Parse(format!("expected [c0,c1,...], got {t:?}")))?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    inner
        .split(',')
        .map(|c| {
            c.trim()
                .parse::<i64>()
                .map_err(|e| Error::Parse(format!("coefficient {c:?}: {e}")))
        })
        .collect()
}

/// Human form, e.g. `x^2 + 4x + 1`, highest degree first.
pub fn display(p: &[u64]) -> String {
    let mut terms = Vec::new();
    for (i, &c) in p.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let coef = if c == 1 && i > 0 { String::new() } else { c.to_string() };
        terms.push(match i {
            0 => coef,
            1 => format!("{coef}x"),
            _ => format!("{coef}x^{i}"),
        });
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

/// List form `[c0,c1,...]`.
pub fn list(p: &[u64]) -> String {
    let parts: Vec<String> = p.iter().map(u64::to_string).collect();
    format!("[{}]", parts.join(","))
}
