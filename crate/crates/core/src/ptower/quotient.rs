use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ptower::poly::{self, Poly};
use crate::ptower::Modulus;

/// An element of a [`QuotientRing`]: exactly `degree` coefficients, each
/// reduced into `[0, l^N)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Elem(pub(crate) Vec<u64>);

impl Elem {
    pub fn coeffs(&self) -> &[u64] {
        &self.0
    }

    pub fn into_coeffs(self) -> Vec<u64> {
        self.0
    }
}

/// `Z/l^N[x]/(g)` for a monic `g`.
///
/// This single type models `Z/l^N` itself (`g = x`), Galois rings (`g`
/// irreducible mod `l`) and the finite-precision etale algebras (`g`
/// squarefree mod `l`). Elements are always canonical: degree below
/// `deg g`, coefficients in `[0, l^N)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuotientRing {
    modulus: Modulus,
    g: Poly,
    degree: usize,
    irreducible: bool,
}

impl QuotientRing {
    pub fn new(modulus: Modulus, g: &[u64]) -> Result<Arc<Self>> {
        let g = poly::reduce(&modulus, g);
        let degree = match poly::degree(&g) {
            Some(d) if d >= 1 && poly::is_monic(&g) => d,
            _ => return Err(Error::NotMonic(poly::display(&g))),
        };
        let irreducible = poly::is_irreducible(&modulus, &g);
        Ok(Arc::new(Self {
            modulus,
            g,
            degree,
            irreducible,
        }))
    }

    /// `Z/l^N` as the quotient by `x`.
    pub fn integers(modulus: Modulus) -> Arc<Self> {
        Arc::new(Self {
            modulus,
            g: vec![0, 1],
            degree: 1,
            irreducible: true,
        })
    }

    pub fn modulus(&self) -> &Modulus {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn defining_poly(&self) -> &[u64] {
        &self.g
    }

    /// True when the residue ring is a field, i.e. the ring is local.
    pub fn is_local(&self) -> bool {
        self.irreducible
    }

    pub fn is_field(&self) -> bool {
        self.irreducible && self.modulus.precision() == 1
    }

    /// Number of elements, `(l^N)^deg`.
    pub fn size(&self) -> u128 {
        (self.modulus.q() as u128).pow(self.degree as u32)
    }

    /// Size of the residue ring `(Z/l)[x]/(g)`.
    pub fn residue_size(&self) -> u128 {
        (self.modulus.l() as u128).pow(self.degree as u32)
    }

    /// The same defining polynomial at precision 1.
    pub fn residue_ring(&self) -> Arc<Self> {
        self.at_precision(1)
    }

    pub fn at_precision(&self, precision: u32) -> Arc<Self> {
        let m = self.modulus.at_precision(precision);
        Arc::new(Self {
            modulus: m,
            g: poly::reduce(&m, &self.g),
            degree: self.degree,
            irreducible: self.irreducible,
        })
    }

    pub fn zero(&self) -> Elem {
        Elem(vec![0; self.degree])
    }

    pub fn one(&self) -> Elem {
        self.from_u64(1)
    }

    pub fn from_u64(&self, c: u64) -> Elem {
        let mut v = vec![0; self.degree];
        v[0] = self.modulus.reduce(c);
        Elem(v)
    }

    pub fn from_i64(&self, c: i64) -> Elem {
        let mut v = vec![0; self.degree];
        v[0] = self.modulus.reduce_i64(c);
        Elem(v)
    }

    /// Reduce an arbitrary integer coefficient list modulo `(l^N, g)`.
    pub fn from_coeffs(&self, coeffs: &[i64]) -> Elem {
        self.from_poly(&poly::from_i64(&self.modulus, coeffs))
    }

    /// Reduce a polynomial (coefficients already in range) modulo `g`.
    pub fn from_poly(&self, p: &[u64]) -> Elem {
        let p = poly::reduce(&self.modulus, p);
        let mut r = poly::rem(&self.modulus, &p, &self.g);
        r.resize(self.degree, 0);
        Elem(r)
    }

    /// The class of `x`.
    pub fn gen(&self) -> Elem {
        self.from_poly(&[0, 1])
    }

    pub fn is_zero(&self, a: &Elem) -> bool {
        a.0.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self, a: &Elem) -> bool {
        a.0[0] == 1 && a.0[1..].iter().all(|&c| c == 0)
    }

    /// True if all coefficients above the constant term vanish.
    pub fn is_scalar(&self, a: &Elem) -> bool {
        a.0[1..].iter().all(|&c| c == 0)
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        let m = &self.modulus;
        Elem(a.0.iter().zip(&b.0).map(|(&x, &y)| m.add(x, y)).collect())
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        let m = &self.modulus;
        Elem(a.0.iter().zip(&b.0).map(|(&x, &y)| m.sub(x, y)).collect())
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        let m = &self.modulus;
        Elem(a.0.iter().map(|&x| m.neg(x)).collect())
    }

    pub fn scale(&self, a: &Elem, c: u64) -> Elem {
        let m = &self.modulus;
        let c = m.reduce(c);
        Elem(a.0.iter().map(|&x| m.mul(x, c)).collect())
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        let mut out = vec![0; self.degree];
        self.mul_into(&a.0, &b.0, &mut out);
        Elem(out)
    }

    pub fn pow(&self, a: &Elem, mut e: u128) -> Elem {
        let mut acc = self.one();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Width of the unreduced product buffer used by [`Self::accumulate`].
    #[inline]
    pub(crate) fn wide_len(&self) -> usize {
        2 * self.degree - 1
    }

    /// `wide += a * b` without any reduction.
    #[inline]
    pub(crate) fn accumulate(&self, a: &[u64], b: &[u64], wide: &mut [u64]) {
        if self.degree == 1 {
            wide[0] += a[0] * b[0];
            return;
        }
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                wide[i + j] += x * y;
            }
        }
    }

    /// Fold an unreduced product buffer into canonical form.
    #[inline]
    pub(crate) fn reduce_wide(&self, wide: &mut [u64], out: &mut [u64]) {
        let q = self.modulus.q();
        if self.degree == 1 {
            out[0] = wide[0] % q;
            return;
        }
        for w in wide.iter_mut() {
            *w %= q;
        }
        let d = self.degree;
        for i in (d..wide.len()).rev() {
            let c = wide[i] % q;
            if c == 0 {
                continue;
            }
            for k in 0..d {
                wide[i - d + k] += c * (q - self.g[k]);
            }
        }
        for k in 0..d {
            out[k] = wide[k] % q;
        }
    }

    pub(crate) fn mul_into(&self, a: &[u64], b: &[u64], out: &mut [u64]) {
        let mut wide = vec![0u64; self.wide_len()];
        self.accumulate(a, b, &mut wide);
        self.reduce_wide(&mut wide, out);
    }

    /// Units are the elements coprime to `g` modulo `l`.
    pub fn is_unit(&self, a: &Elem) -> bool {
        if self.degree == 1 {
            return self.modulus.is_unit(a.0[0]);
        }
        let r = self.modulus.residue();
        let ab = poly::reduce(&r, &a.0);
        if ab.is_empty() {
            return false;
        }
        if self.irreducible {
            return true;
        }
        poly::degree(&poly::gcd(&r, &ab, &self.g)) == Some(0)
    }

    /// Inverse of a unit: Bezout modulo `l`, then Newton iteration
    /// `b <- b(2 - ab)` up to precision `N`.
    pub fn inverse(&self, a: &Elem) -> Option<Elem> {
        if self.degree == 1 {
            return self.modulus.inv(a.0[0]).map(|v| Elem(vec![v]));
        }
        let r = self.modulus.residue();
        let (gcd, s, _) = poly::ext_gcd(&r, &a.0, &self.g);
        if poly::degree(&gcd) != Some(0) {
            return None;
        }
        let mut b = self.from_poly(&s);
        let two = self.from_u64(2);
        let mut prec = 1;
        while prec < self.modulus.precision() {
            b = self.mul(&b, &self.sub(&two, &self.mul(a, &b)));
            prec *= 2;
        }
        debug_assert!(self.is_one(&self.mul(a, &b)));
        Some(b)
    }

    /// Horner evaluation of an integer polynomial at `a`.
    pub fn eval_poly(&self, p: &[u64], a: &Elem) -> Elem {
        p.iter()
            .rev()
            .fold(self.zero(), |acc, &c| self.add(&self.mul(&acc, a), &self.from_u64(c)))
    }

    /// Matrix of multiplication by `a` on the power basis; column `j` holds
    /// the coefficients of `a * x^j`.
    pub fn mult_matrix(&self, a: &Elem) -> Vec<Vec<u64>> {
        let d = self.degree;
        let x = self.gen();
        let mut cols = Vec::with_capacity(d);
        let mut cur = a.clone();
        for _ in 0..d {
            cols.push(cur.0.clone());
            cur = self.mul(&cur, &x);
        }
        (0..d).map(|i| (0..d).map(|j| cols[j][i]).collect()).collect()
    }

    /// Trace of the regular representation, an element of `Z/l^N`.
    pub fn regular_trace(&self, a: &Elem) -> u64 {
        let m = self.mult_matrix(a);
        (0..self.degree).fold(0, |acc, i| self.modulus.add(acc, m[i][i]))
    }

    /// Determinant of the regular representation.
    pub fn regular_norm(&self, a: &Elem) -> u64 {
        let base = QuotientRing::integers(self.modulus);
        let m = self.mult_matrix(a);
        let mat =
            crate::matring::Matrix::from_fn(base.clone(), self.degree, self.degree, |i, j| base.from_u64(m[i][j]));
        mat.det().expect("square").0[0]
    }

    /// Coefficient-wise image in a ring of lower precision with the same `g`.
    pub fn reduce_into(&self, target: &QuotientRing, a: &Elem) -> Elem {
        debug_assert_eq!(target.degree, self.degree);
        let q = target.modulus.q();
        Elem(a.0.iter().map(|&c| c % q).collect())
    }

    /// Canonical integer lift from a ring of lower precision with the same `g`.
    pub fn lift_from(&self, source: &QuotientRing, a: &Elem) -> Elem {
        debug_assert_eq!(source.degree, self.degree);
        Elem(a.0.clone())
    }

    /// Every element, in increasing order of the base-`q` digit vector.
    /// Callers are expected to check [`Self::size`] first.
    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        let q = self.modulus.q();
        let d = self.degree;
        let count = self.size();
        (0..count).map(move |mut idx| {
            let mut v = vec![0u64; d];
            for c in v.iter_mut() {
                *c = (idx % q as u128) as u64;
                idx /= q as u128;
            }
            Elem(v)
        })
    }

    pub fn units(&self) -> impl Iterator<Item = Elem> + '_ {
        self.elements().filter(|a| self.is_unit(a))
    }

    pub fn unit_count(&self) -> u128 {
        // |R^x| = l^{(N-1)deg} * prod over residue factors (l^{d_i} - 1).
        let r = self.residue_ring();
        let factors =
            crate::ptower::factor::factor_mod_l(r.modulus(), &r.g).expect("residue factorization at desk scale");
        let l = self.modulus.l() as u128;
        let mut count = l.pow((self.modulus.precision() - 1) * self.degree as u32);
        for f in factors {
            let d = poly::degree(&f.poly).unwrap() as u32;
            count *= l.pow(d * (f.multiplicity as u32 - 1)) * (l.pow(d) - 1);
        }
        count
    }

    /// Canonical text: an integer for `Z/l^N`, otherwise `[c0,c1,...]`.
    pub fn format(&self, a: &Elem) -> String {
        if self.degree == 1 {
            a.0[0].to_string()
        } else {
            poly::list(&a.0)
        }
    }
}

impl fmt::Display for QuotientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.g == [0, 1] {
            write!(f, "Z/{}", self.modulus)
        } else if self.irreducible {
            write!(f, "GR({}, {})", self.modulus, poly::display(&self.g))
        } else {
            write!(f, "Z/{}[x]/({})", self.modulus, poly::display(&self.g))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(l: u64, n: u32, g: &[i64]) -> Arc<QuotientRing> {
        let m = Modulus::new(l, n).unwrap();
        QuotientRing::new(m, &poly::from_i64(&m, g)).unwrap()
    }

    #[test]
    fn multiplication_reduces_by_g() {
        let r = ring(3, 2, &[1, 0, 1]);
        let x = r.gen();
        assert_eq!(r.mul(&x, &x), r.from_i64(-1));
        assert_eq!(r.size(), 81);
        assert_eq!(r.to_string(), "GR(3^2, x^2 + 1)");
    }

    #[test]
    fn inverses_of_units() {
        let r = ring(5, 2, &[2, 0, 1]);
        let mut checked = 0;
        for a in r.elements() {
            match r.inverse(&a) {
                Some(b) => {
                    assert!(r.is_one(&r.mul(&a, &b)));
                    checked += 1;
                }
                None => assert!(!r.is_unit(&a)),
            }
        }
        // (25^2) - (25^2 / 25) non-units
        assert_eq!(checked, 625 - 25);
        assert_eq!(r.unit_count(), 600);
    }

    #[test]
    fn split_ring_units() {
        let r = ring(5, 1, &[-1, 0, 1]);
        assert!(!r.is_local());
        assert_eq!(r.units().count(), 16);
        assert_eq!(r.unit_count(), 16);
        // x - 1 is a zero divisor.
        assert!(r.inverse(&r.from_coeffs(&[-1, 1])).is_none());
    }

    #[test]
    fn non_monic_rejected() {
        let m = Modulus::new(5, 1).unwrap();
        assert!(matches!(QuotientRing::new(m, &[1, 0, 2]), Err(Error::NotMonic(_))));
    }

    #[test]
    fn regular_trace_and_norm() {
        let r = ring(3, 1, &[1, 0, 1]);
        assert_eq!(r.regular_trace(&r.gen()), 0);
        assert_eq!(r.regular_trace(&r.one()), 2);
        assert_eq!(r.regular_norm(&r.gen()), 1);
    }
}
