use std::sync::Arc;

use crate::error::{Error, Result};
use crate::matring::Matrix;
use crate::ptower::factor::{factor_mod_l, hensel_lift};
use crate::ptower::galois::GaloisRing;
use crate::ptower::poly::{self, Poly};
use crate::ptower::quotient::{Elem, QuotientRing};
use crate::ptower::Modulus;

/// `Z/l^N[x]/(g)` for `g` squarefree mod `l`, split as a product of Galois
/// rings `prod_lambda Z/l^N[x]/(f_lambda)` by the CRT idempotents `e_lambda`.
#[derive(Clone, Debug)]
pub struct EtaleAlgebra {
    ring: Arc<QuotientRing>,
    base: Arc<QuotientRing>,
    factors: Vec<Poly>,
    components: Vec<GaloisRing>,
    idempotents: Vec<Elem>,
}

impl EtaleAlgebra {
    /// Factor `g` mod `l`, Hensel-lift the factorization to `l^N` and build
    /// the idempotents `e_lambda = (g/f_lambda) * ((g/f_lambda)^-1 mod f_lambda)`.
    pub fn split(modulus: Modulus, g: &[i64]) -> Result<Self> {
        let gp = poly::from_i64(&modulus, g);
        let ring = QuotientRing::new(modulus, &gp)?;
        let residue = factor_mod_l(&modulus, &gp)?;
        if residue.iter().any(|f| f.multiplicity > 1) {
            return Err(Error::RamifiedPrime(poly::display(&gp)));
        }
        let residue: Vec<Poly> = residue.into_iter().map(|f| f.poly).collect();
        let factors = hensel_lift(&modulus, &gp, &residue);
        let mut components = Vec::with_capacity(factors.len());
        let mut idempotents = Vec::with_capacity(factors.len());
        for f in &factors {
            let comp = GaloisRing::from_ring(QuotientRing::new(modulus, f)?)?;
            let (cofactor, rem) = poly::divrem(&modulus, &gp, f);
            debug_assert!(rem.is_empty());
            let c = comp
                .ring()
                .inverse(&comp.ring().from_poly(&cofactor))
                .expect("lifted factors are coprime");
            idempotents.push(ring.from_poly(&poly::mul(&modulus, &cofactor, c.coeffs())));
            components.push(comp);
        }
        Ok(Self {
            base: QuotientRing::integers(modulus),
            ring,
            factors,
            components,
            idempotents,
        })
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

    /// `e = [E : Q]`, the degree of `g`.
    pub fn degree(&self) -> usize {
        self.ring.degree()
    }

    pub fn num_components(&self) -> usize {
        self.components.len()
    }

    /// The lifted factors `f_lambda` modulo `l^N`.
    pub fn factors(&self) -> &[Poly] {
        &self.factors
    }

    pub fn components(&self) -> &[GaloisRing] {
        &self.components
    }

    pub fn component(&self, lambda: usize) -> &GaloisRing {
        &self.components[lambda]
    }

    pub fn idempotents(&self) -> &[Elem] {
        &self.idempotents
    }

    /// `pi_lambda`: reduce modulo `f_lambda`.
    pub fn project(&self, lambda: usize, v: &Elem) -> Elem {
        self.components[lambda].ring().from_poly(v.coeffs())
    }

    pub fn project_all(&self, v: &Elem) -> Vec<Elem> {
        (0..self.num_components()).map(|k| self.project(k, v)).collect()
    }

    /// Section of `pi_lambda`: `c |-> e_lambda * c`.
    pub fn section(&self, lambda: usize, c: &Elem) -> Elem {
        let lifted = self.ring.from_poly(c.coeffs());
        self.ring.mul(&self.idempotents[lambda], &lifted)
    }

    /// CRT reconstruction `sum_lambda e_lambda * c_lambda`.
    pub fn reconstruct(&self, parts: &[Elem]) -> Elem {
        parts
            .iter()
            .enumerate()
            .fold(self.ring.zero(), |acc, (k, c)| self.ring.add(&acc, &self.section(k, c)))
    }

    /// `Tr_{E/Q}` as the trace of the regular representation.
    pub fn trace(&self, a: &Elem) -> u64 {
        self.ring.regular_trace(a)
    }

    /// The same trace through the components: `sum_lambda Tr_lambda(pi_lambda a)`.
    pub fn trace_by_components(&self, a: &Elem) -> u64 {
        let m = self.modulus();
        self.components
            .iter()
            .enumerate()
            .fold(0, |acc, (k, c)| m.add(acc, c.trace(&self.project(k, a))))
    }

    /// Trace-dual of the power basis `1, x, ..., x^(e-1)` of the whole algebra.
    pub fn dual_power_basis(&self) -> Result<Vec<Elem>> {
        let r = &self.ring;
        let e = r.degree();
        let basis: Vec<Elem> = (0..e).map(|i| r.pow(&r.gen(), i as u128)).collect();
        let gram = Matrix::from_fn(self.base.clone(), e, e, |i, j| {
            self.base.from_u64(self.trace(&r.mul(&basis[i], &basis[j])))
        });
        let inv = gram.inverse().map_err(|_| Error::RamifiedOrDegenerate)?;
        Ok((0..e)
            .map(|j| {
                (0..e).fold(r.zero(), |acc, k| {
                    r.add(&acc, &r.scale(&basis[k], inv.get(j, k).coeffs()[0]))
                })
            })
            .collect())
    }

    /// The same algebra at precision 1.
    pub fn residue(&self) -> EtaleAlgebra {
        let m = self.modulus().residue();
        let g: Vec<i64> = self.ring.defining_poly().iter().map(|&c| c as i64).collect();
        EtaleAlgebra::split(m, &g).expect("residue of an etale algebra is etale")
    }

    /// Checks the idempotent relations: sum is 1, pairwise products vanish,
    /// each is idempotent.
    pub fn idempotents_valid(&self) -> bool {
        let r = &self.ring;
        let sum = self.idempotents.iter().fold(r.zero(), |acc, e| r.add(&acc, e));
        if !r.is_one(&sum) {
            return false;
        }
        self.idempotents.iter().enumerate().all(|(i, a)| {
            self.idempotents.iter().enumerate().all(|(j, b)| {
                let p = r.mul(a, b);
                if i == j {
                    p == *a
                } else {
                    r.is_zero(&p)
                }
            })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn split(l: u64, n: u32, g: &[i64]) -> Result<EtaleAlgebra> {
        EtaleAlgebra::split(Modulus::new(l, n).unwrap(), g)
    }

    #[test]
    fn split_x2_minus_1_mod_5() {
        let a = split(5, 1, &[-1, 0, 1]).unwrap();
        let r = a.ring();
        assert_eq!(a.factors(), &[vec![4, 1], vec![1, 1]]);
        assert_eq!(a.idempotents(), &[r.from_coeffs(&[3, 3]), r.from_coeffs(&[3, 2])]);
        assert!(a.idempotents_valid());
    }

    #[test]
    fn inert_and_ramified() {
        let a = split(3, 1, &[1, 0, 1]).unwrap();
        assert_eq!(a.num_components(), 1);
        assert!(a.ring().is_one(&a.idempotents()[0]));
        assert!(matches!(split(3, 1, &[0, 0, 1]), Err(Error::RamifiedPrime(_))));
    }

    #[test]
    fn projections() {
        let a = split(5, 1, &[-1, 0, 1]).unwrap();
        let r = a.ring();
        let x = r.gen();
        assert_eq!(
            a.project_all(&x),
            vec![a.component(0).embed(1), a.component(1).embed(4)]
        );
        for k in 0..2 {
            for (j, p) in a.project_all(&a.idempotents()[k]).iter().enumerate() {
                assert_eq!(*p, a.component(j).embed(u64::from(j == k)));
            }
            assert_eq!(a.project(k, &r.one()), a.component(k).embed(1));
        }
    }

    #[test]
    fn section_after_project_is_multiplication_by_idempotent() {
        let a = split(7, 2, &[3, 0, -2, 0, 1]).unwrap();
        let r = a.ring();
        for v in [r.from_coeffs(&[1, 2, 3, 4]), r.from_coeffs(&[48, 0, 13, 1])] {
            for k in 0..a.num_components() {
                assert_eq!(a.section(k, &a.project(k, &v)), r.mul(&a.idempotents()[k], &v));
            }
            assert_eq!(a.reconstruct(&a.project_all(&v)), v);
            assert_eq!(a.trace(&v), a.trace_by_components(&v));
        }
    }
}
