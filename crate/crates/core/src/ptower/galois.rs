use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::matring::Matrix;
use crate::ptower::poly;
use crate::ptower::quotient::{Elem, QuotientRing};
use crate::ptower::Modulus;

/// The Galois ring `GR(l^N, f) = Z/l^N[x]/(f)` with `f` irreducible mod `l`,
/// together with its Frobenius automorphism.
///
/// The embeddings over the base are ordered as Frobenius powers
/// `sigma_i = sigma^(i-1)`.
#[derive(Clone, Debug)]
pub struct GaloisRing {
    ring: Arc<QuotientRing>,
    base: Arc<QuotientRing>,
    // images sigma(x^i) for i < degree
    frob: Vec<Elem>,
}

impl GaloisRing {
    /// Build `GR(l^N, f)` from integer coefficients of a monic `f`.
    pub fn new(modulus: Modulus, f: &[i64]) -> Result<Self> {
        let ring = QuotientRing::new(modulus, &poly::from_i64(&modulus, f))?;
        Self::from_ring(ring)
    }

    pub fn from_ring(ring: Arc<QuotientRing>) -> Result<Self> {
        if !ring.is_local() {
            return Err(Error::NotIrreducible(poly::display(ring.defining_poly())));
        }
        let m = *ring.modulus();
        let base = QuotientRing::integers(m);
        let f = ring.defining_poly().to_vec();
        let df = poly::derivative(&m, &f);
        // x^l is a root of f mod l; Newton-refine it to a root mod l^N.
        let mut root = ring.pow(&ring.gen(), m.l() as u128);
        for _ in 0..=m.precision() {
            let val = ring.eval_poly(&f, &root);
            if ring.is_zero(&val) {
                break;
            }
            let slope = ring
                .inverse(&ring.eval_poly(&df, &root))
                .expect("f' is a unit at a simple root");
            root = ring.sub(&root, &ring.mul(&val, &slope));
        }
        debug_assert!(ring.is_zero(&ring.eval_poly(&f, &root)));
        let mut frob = Vec::with_capacity(ring.degree());
        let mut p = ring.one();
        for _ in 0..ring.degree() {
            frob.push(p.clone());
            p = ring.mul(&p, &root);
        }
        Ok(Self { ring, base, frob })
    }

    /// `Z/l^N` viewed as the trivial extension of itself.
    pub fn trivial(modulus: Modulus) -> Self {
        Self::from_ring(QuotientRing::integers(modulus)).expect("x is irreducible")
    }

    pub fn ring(&self) -> &Arc<QuotientRing> {
        &self.ring
    }

    pub fn base(&self) -> &Arc<QuotientRing> {
        &self.base
    }

    pub fn modulus(&self) -> &Modulus {
        self.ring.modulus()
    }

    /// Degree `n` over the base.
    pub fn degree(&self) -> usize {
        self.ring.degree()
    }

    pub fn frobenius(&self, a: &Elem) -> Elem {
        let m = self.ring.modulus();
        let mut out = self.ring.zero();
        for (c, img) in a.0.iter().zip(&self.frob) {
            if *c == 0 {
                continue;
            }
            for (o, v) in out.0.iter_mut().zip(&img.0) {
                *o = m.add(*o, m.mul(*c, *v));
            }
        }
        out
    }

    pub fn frobenius_pow(&self, a: &Elem, k: usize) -> Elem {
        (0..k % self.degree()).fold(a.clone(), |acc, _| self.frobenius(&acc))
    }

    /// `[a, sigma(a), ..., sigma^(n-1)(a)]`.
    pub fn conjugates(&self, a: &Elem) -> Vec<Elem> {
        let mut out = Vec::with_capacity(self.degree());
        let mut cur = a.clone();
        for _ in 0..self.degree() {
            let next = self.frobenius(&cur);
            out.push(cur);
            cur = next;
        }
        out
    }

    /// Sum of all conjugates; always lands in `Z/l^N`.
    pub fn trace(&self, a: &Elem) -> u64 {
        let s = self
            .conjugates(a)
            .iter()
            .fold(self.ring.zero(), |acc, c| self.ring.add(&acc, c));
        debug_assert!(self.ring.is_scalar(&s));
        s.0[0]
    }

    /// Product of all conjugates.
    pub fn norm(&self, a: &Elem) -> u64 {
        let p = self
            .conjugates(a)
            .iter()
            .fold(self.ring.one(), |acc, c| self.ring.mul(&acc, c));
        debug_assert!(self.ring.is_scalar(&p));
        p.0[0]
    }

    pub fn embed(&self, c: u64) -> Elem {
        self.ring.from_u64(c)
    }

    pub fn to_base(&self, a: &Elem) -> Option<u64> {
        self.ring.is_scalar(a).then(|| a.0[0])
    }

    pub fn is_fixed(&self, a: &Elem) -> bool {
        self.frobenius(a) == *a
    }

    pub fn power_basis(&self) -> Vec<Elem> {
        (0..self.degree())
            .map(|i| self.ring.pow(&self.ring.gen(), i as u128))
            .collect()
    }

    /// Apply `sigma^k` to every entry.
    pub fn frobenius_matrix(&self, m: &Matrix, k: usize) -> Matrix {
        m.map(|a| self.frobenius_pow(a, k))
    }

    /// Trace-dual basis of `basis`: `Tr(alpha_i beta_j) = delta_ij`.
    pub fn dual_basis(&self, basis: &[Elem]) -> Result<ExtensionBasis> {
        let n = self.degree();
        if basis.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "basis has {} elements, extension degree is {n}",
                basis.len()
            )));
        }
        let gram = Matrix::from_fn(self.base.clone(), n, n, |i, j| {
            self.base.from_u64(self.trace(&self.ring.mul(&basis[i], &basis[j])))
        });
        let inv = gram.inverse().map_err(|_| Error::RamifiedOrDegenerate)?;
        let dual: Vec<Elem> = (0..n)
            .map(|j| {
                (0..n).fold(self.ring.zero(), |acc, k| {
                    self.ring.add(&acc, &self.ring.scale(&basis[k], inv.get(j, k).0[0]))
                })
            })
            .collect();
        let ext = ExtensionBasis {
            conjugates: transpose(basis.iter().map(|a| self.conjugates(a)).collect()),
            dual_conjugates: transpose(dual.iter().map(|a| self.conjugates(a)).collect()),
            basis: basis.to_vec(),
            dual,
        };
        debug_assert!(ext.is_exact(self));
        Ok(ext)
    }
}

fn transpose(cols: Vec<Vec<Elem>>) -> Vec<Vec<Elem>> {
    let n = cols.len();
    (0..n).map(|i| (0..n).map(|j| cols[j][i].clone()).collect()).collect()
}

impl fmt::Display for GaloisRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "GR({}, {})",
            self.modulus(),
            poly::display(self.ring.defining_poly())
        )
    }
}

/// A basis of a Galois ring over its base with the trace-dual basis and the
/// conjugate tables `conjugates[i][j] = sigma^i(alpha_j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionBasis {
    pub basis: Vec<Elem>,
    pub dual: Vec<Elem>,
    pub conjugates: Vec<Vec<Elem>>,
    pub dual_conjugates: Vec<Vec<Elem>>,
}

impl ExtensionBasis {
    /// `Tr(alpha_i beta_j) = delta_ij` for all pairs.
    pub fn is_exact(&self, gr: &GaloisRing) -> bool {
        let r = gr.ring();
        self.basis.iter().enumerate().all(|(i, a)| {
            self.dual
                .iter()
                .enumerate()
                .all(|(j, b)| gr.trace(&r.mul(a, b)) == u64::from(i == j))
        })
    }

    /// The conjugate table as a matrix over the Galois ring.
    pub fn conjugate_matrix(&self, gr: &GaloisRing) -> Matrix {
        let n = self.basis.len();
        Matrix::from_fn(gr.ring().clone(), n, n, |i, j| self.conjugates[i][j].clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gr(l: u64, n: u32, f: &[i64]) -> GaloisRing {
        GaloisRing::new(Modulus::new(l, n).unwrap(), f).unwrap()
    }

    #[test]
    fn sizes_and_errors() {
        assert_eq!(gr(3, 2, &[1, 0, 1]).ring().size(), 81);
        let m5 = Modulus::new(5, 1).unwrap();
        assert!(matches!(
            GaloisRing::new(m5, &[-1, 0, 1]),
            Err(Error::NotIrreducible(_))
        ));
        assert!(matches!(Modulus::new(4, 1), Err(Error::BadModulus(_))));
    }

    #[test]
    fn frobenius_of_x_over_f9() {
        let g = gr(3, 1, &[1, 0, 1]);
        let x = g.ring().gen();
        assert_eq!(g.frobenius(&x), g.ring().from_coeffs(&[0, 2]));
    }

    #[test]
    fn traces_over_f9() {
        let g = gr(3, 1, &[1, 0, 1]);
        assert_eq!(g.trace(&g.ring().gen()), 0);
        assert_eq!(g.trace(&g.ring().one()), 2);
    }

    #[test]
    fn trace_matches_explicit_conjugates_mod_25() {
        // x^2 + 2 mod 25: the conjugate of a + bx is a - bx.
        let g = gr(5, 2, &[2, 0, 1]);
        let r = g.ring();
        for a in 0..25i64 {
            for b in [0i64, 1, 7, 24] {
                let e = r.from_coeffs(&[a, b]);
                let conj = r.from_coeffs(&[a, -b]);
                assert_eq!(g.frobenius(&e), conj);
                assert_eq!(g.trace(&e), (2 * a as u64) % 25);
            }
        }
    }

    #[test]
    fn dual_basis_over_f9() {
        let g = gr(3, 1, &[1, 0, 1]);
        let ext = g.dual_basis(&g.power_basis()).unwrap();
        let r = g.ring();
        assert_eq!(ext.dual, vec![r.from_u64(2), r.gen()]);
    }

    #[test]
    fn dual_basis_mod_25_solves_linear_system() {
        let g = gr(5, 2, &[2, 0, 1]);
        let r = g.ring();
        // Independent oracle: Tr(1*(a+bx)) = 2a, Tr(x*(a+bx)) = Tr(ax - 2b) = -4b.
        // beta_1: 2a = 1, -4b = 0 -> a = 13, b = 0
        // beta_2: 2a = 0, -4b = 1 -> b = -1/4 = 6 (since 4*6 = 24 = -1)
        let ext = g.dual_basis(&g.power_basis()).unwrap();
        assert_eq!(ext.dual, vec![r.from_u64(13), r.from_coeffs(&[0, 6])]);
        assert!(ext.is_exact(&g));
    }

    #[test]
    fn degenerate_basis_rejected() {
        let g = gr(5, 1, &[2, 0, 1]);
        let r = g.ring();
        let basis = vec![r.one(), r.from_u64(3)];
        assert_eq!(g.dual_basis(&basis), Err(Error::RamifiedOrDegenerate));
    }

    #[test]
    fn self_dual_when_gram_is_identity() {
        // Over Z/l^N (n = 1) the basis {1} has Gram [1].
        let g = GaloisRing::trivial(Modulus::new(7, 2).unwrap());
        let ext = g.dual_basis(&g.power_basis()).unwrap();
        assert_eq!(ext.dual, ext.basis);
    }
}
