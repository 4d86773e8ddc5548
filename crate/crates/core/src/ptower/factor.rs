//! Factorization modulo `l` and Hensel lifting to `l^N`.

use crate::error::{Error, Result};
use crate::ptower::poly::{self, Poly};
use crate::ptower::Modulus;

/// Budget of trial divisors for the exhaustive search.
const MAX_CANDIDATES: u64 = 4_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factor {
    pub poly: Poly,
    pub multiplicity: usize,
}

/// Factor a monic polynomial over `F_l` into monic irreducibles.
///
/// Roots are found first (candidates `x - r` for `r = 0, 1, ...`), then
/// higher-degree monic divisors are tried in increasing degree. Because
/// smaller factors are divided out before larger candidates are tried, every
/// divisor found is irreducible. Output order is the discovery order.
pub fn factor_mod_l(m: &Modulus, g: &[u64]) -> Result<Vec<Factor>> {
    let r = m.residue();
    let mut rest = poly::monic(&r, &poly::reduce(&r, g));
    let mut out = Vec::new();
    let mut k = 1;
    while poly::degree(&rest).is_some_and(|d| 2 * k <= d) {
        let candidates = r.l().checked_pow(k as u32).unwrap_or(u64::MAX);
        if candidates > MAX_CANDIDATES {
            return Err(Error::TooLarge(format!(
                "factoring degree {} over F_{}",
                poly::degree(&rest).unwrap(),
                r.l()
            )));
        }
        for cand in poly::monic_polys(&r, k) {
            let mut mult = 0;
            loop {
                let (quo, rem) = poly::divrem(&r, &rest, &cand);
                if !rem.is_empty() {
                    break;
                }
                rest = quo;
                mult += 1;
            }
            if mult > 0 {
                out.push(Factor {
                    poly: cand,
                    multiplicity: mult,
                });
            }
            if poly::degree(&rest).is_none_or(|d| 2 * k > d) {
                break;
            }
        }
        k += 1;
    }
    if poly::degree(&rest).is_some_and(|d| d > 0) {
        // Any repeated factor of what is left would have degree <= d/2 and
        // been found already.
        out.push(Factor {
            poly: rest,
            multiplicity: 1,
        });
    }
    Ok(out)
}

/// Lift `g = a * b (mod l)` with `a, b` monic and coprime mod `l` to a
/// factorization modulo `l^N`, one digit at a time.
pub fn hensel_lift_pair(m: &Modulus, g: &[u64], a0: &[u64], b0: &[u64]) -> (Poly, Poly) {
    let r = m.residue();
    let (one, _, t) = poly::ext_gcd(&r, a0, b0);
    assert_eq!(one, vec![1], "factors must be coprime modulo l");
    let mut a = a0.to_vec();
    let mut b = b0.to_vec();
    let mut lk = r.l();
    for _ in 1..m.precision() {
        // err = (g - ab) / l^k, read modulo l
        let diff = poly::sub(m, g, &poly::mul(m, &a, &b));
        debug_assert!(diff.iter().all(|c| c % lk == 0));
        let err: Poly = poly::reduce(&r, &diff.iter().map(|c| c / lk).collect::<Vec<_>>());
        // a, b are congruent to a0, b0 modulo l
        let da = poly::rem(&r, &poly::mul(&r, &t, &err), a0);
        let (db, rem) = poly::divrem(&r, &poly::sub(&r, &err, &poly::mul(&r, b0, &da)), a0);
        debug_assert!(rem.is_empty());
        a = poly::add(m, &a, &poly::scale(m, &da, lk));
        b = poly::add(m, &b, &poly::scale(m, &db, lk));
        lk *= r.l();
    }
    debug_assert_eq!(poly::mul(m, &a, &b), poly::reduce(m, g));
    (a, b)
}

/// Lift a full squarefree factorization modulo `l` to `l^N`, preserving order.
pub fn hensel_lift(m: &Modulus, g: &[u64], factors: &[Poly]) -> Vec<Poly> {
    let r = m.residue();
    let mut out = Vec::with_capacity(factors.len());
    let mut rest = poly::reduce(m, g);
    for (i, f) in factors.iter().enumerate() {
        if i + 1 == factors.len() {
            out.push(rest.clone());
            break;
        }
        let cofactor = factors[i + 1..]
            .iter()
            .fold(vec![1u64], |acc, h| poly::mul(&r, &acc, h));
        let (a, b) = hensel_lift_pair(m, &rest, f, &cofactor);
        out.push(a);
        rest = b;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factors_x2_minus_1_mod_5_in_root_order() {
        let m = Modulus::new(5, 1).unwrap();
        let f = factor_mod_l(&m, &[4, 0, 1]).unwrap();
        let polys: Vec<_> = f.iter().map(|x| x.poly.clone()).collect();
        assert_eq!(polys, vec![vec![4, 1], vec![1, 1]]);
    }

    #[test]
    fn finds_quadratic_factors_without_roots() {
        let m = Modulus::new(3, 1).unwrap();
        // x^4 + 1 = (x^2 + x + 2)(x^2 + 2x + 2) over F_3
        let f = factor_mod_l(&m, &[1, 0, 0, 0, 1]).unwrap();
        assert_eq!(f.len(), 2);
        let prod = poly::mul(&m, &f[0].poly, &f[1].poly);
        assert_eq!(prod, vec![1, 0, 0, 0, 1]);
    }

    #[test]
    fn multiplicities() {
        let m = Modulus::new(3, 1).unwrap();
        let f = factor_mod_l(&m, &[0, 0, 1]).unwrap();
        assert_eq!(
            f,
            vec![Factor {
                poly: vec![0, 1],
                multiplicity: 2
            }]
        );
    }

    #[test]
    fn hensel_lift_product_matches() {
        let m = Modulus::new(5, 3).unwrap();
        // x^3 - 11 x + 3 style cubic with distinct roots mod 5
        let g = poly::from_i64(&m, &[-6, 11, -6, 1]); // (x-1)(x-2)(x-3)
        let g = poly::add(&m, &g, &poly::scale(&m, &[7, 3, 2], 5));
        let fac: Vec<Poly> = factor_mod_l(&m, &g).unwrap().into_iter().map(|f| f.poly).collect();
        let lifted = hensel_lift(&m, &g, &fac);
        let prod = lifted.iter().fold(vec![1u64], |acc, h| poly::mul(&m, &acc, h));
        assert_eq!(prod, g);
        for (l, f) in lifted.iter().zip(&fac) {
            assert_eq!(&poly::reduce(&m.residue(), l), f);
            assert!(poly::is_monic(l));
        }
    }
}
