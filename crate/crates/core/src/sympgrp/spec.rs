use std::collections::HashSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::forms::similitude_factor;
use crate::matring::Matrix;
use crate::ptower::factor::factor_mod_l;
use crate::ptower::{Elem, QuotientRing};

/// `Sp_2h` and `GSp_2h` over a finite quotient ring, for the form
/// `J = [[0, I_h], [-I_h, 0]]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymplecticGroupSpec {
    h: usize,
    ring: Arc<QuotientRing>,
    j: Matrix,
}

/// `[[0, I_h], [-I_h, 0]]`.
pub fn standard_form(ring: &Arc<QuotientRing>, h: usize) -> Matrix {
    let mut j = Matrix::zeros(ring.clone(), 2 * h, 2 * h);
    let minus_one = ring.neg(&ring.one());
    for i in 0..h {
        j.set(i, h + i, &ring.one());
        j.set(h + i, i, &minus_one);
    }
    j
}

impl SymplecticGroupSpec {
    pub fn new(ring: Arc<QuotientRing>, h: usize) -> Result<Self> {
        if h == 0 {
            return Err(Error::DimensionMismatch("h must be positive".into()));
        }
        let j = standard_form(&ring, h);
        Ok(Self { h, ring, j })
    }

    pub fn h(&self) -> usize {
        self.h
    }

    /// Matrix size `2h`.
    pub fn size(&self) -> usize {
        2 * self.h
    }

    pub fn ring(&self) -> &Arc<QuotientRing> {
        &self.ring
    }

    pub fn j(&self) -> &Matrix {
        &self.j
    }

    /// The same group over the ring reduced to another precision.
    pub fn at_precision(&self, precision: u32) -> Self {
        Self::new(self.ring.at_precision(precision), self.h).expect("h is positive")
    }

    fn shape_ok(&self, x: &Matrix) -> bool {
        x.ring() == &self.ring && x.rows() == self.size() && x.cols() == self.size()
    }

    /// `X^T J X = J`.
    pub fn is_symplectic(&self, x: &Matrix) -> bool {
        self.shape_ok(x) && &(&x.transpose() * &self.j) * x == self.j
    }

    /// The unit `mu` with `X^T J X = mu J`, if any.
    pub fn similitude(&self, x: &Matrix) -> Option<Elem> {
        if !self.shape_ok(x) {
            return None;
        }
        similitude_factor(x, &self.j).ok().filter(|mu| self.ring.is_unit(mu))
    }

    pub fn is_similitude(&self, x: &Matrix) -> bool {
        self.similitude(x).is_some()
    }

    /// `I + c (v v^T J)`-style elementary generators: `[[I, cS], [0, I]]` and
    /// `[[I, 0], [cS, I]]` for `S` running over the symmetric basis
    /// `E_ii, E_ij + E_ji` and `c` over the additive generators `x^k`.
    pub fn standard_generators(&self) -> Vec<Matrix> {
        let (h, r) = (self.h, &self.ring);
        let n = 2 * h;
        let mut out = Vec::new();
        for k in 0..r.degree() {
            let c = r.pow(&r.gen(), k as u128);
            for i in 0..h {
                for j in i..h {
                    for upper in [true, false] {
                        let mut m = Matrix::identity(r.clone(), n);
                        let (ro, co) = if upper { (0, h) } else { (h, 0) };
                        m.set(ro + i, co + j, &c);
                        m.set(ro + j, co + i, &c);
                        out.push(m);
                    }
                }
            }
        }
        out
    }

    /// `diag(a I_h, I_h)`, a similitude with factor `a`.
    pub fn similitude_diagonal(&self, a: &Elem) -> Matrix {
        let mut m = Matrix::identity(self.ring.clone(), self.size());
        for i in 0..self.h {
            m.set(i, i, a);
        }
        m
    }

    /// Standard generators together with `diag(a I_h, I_h)` for `a` running
    /// over generators of the unit group.
    pub fn similitude_generators(&self) -> Vec<Matrix> {
        let mut gens = self.standard_generators();
        gens.extend(
            unit_group_generators(&self.ring)
                .iter()
                .map(|a| self.similitude_diagonal(a)),
        );
        gens
    }

    /// `|Sp_2h(R)|` from the order formula, one factor per component of
    /// `R` modulo `l`: `q^(h^2) prod (q^(2i) - 1)` times `l^(d (N-1) h (2h+1))`.
    pub fn group_order(&self) -> Result<u128> {
        let m = self.ring.modulus();
        let l = m.l() as u128;
        let h = self.h as u32;
        let mut total: u128 = 1;
        for f in factor_mod_l(m, self.ring.defining_poly())? {
            if f.multiplicity != 1 {
                return Err(Error::RamifiedPrime(crate::ptower::poly::display(&f.poly)));
            }
            let d = (f.poly.len() - 1) as u32;
            let q = l.pow(d);
            let mut ord = q.pow(h * h);
            for i in 1..=h {
                ord *= q.pow(2 * i) - 1;
            }
            ord *= l.pow(d * (m.precision() - 1) * h * (2 * h + 1));
            total *= ord;
        }
        Ok(total)
    }

    /// `|GSp_2h(R)| = |Sp_2h(R)| |R^x|`.
    pub fn similitude_group_order(&self) -> Result<u128> {
        Ok(self.group_order()? * self.ring.unit_count())
    }
}

/// A generating set of `R^x`, chosen greedily in element order.
pub fn unit_group_generators(ring: &QuotientRing) -> Vec<Elem> {
    let total = ring.unit_count() as usize;
    let mut gens: Vec<Elem> = Vec::new();
    let mut group: HashSet<Elem> = HashSet::from([ring.one()]);
    for u in ring.units() {
        if group.len() == total {
            break;
        }
        if group.contains(&u) {
            continue;
        }
        gens.push(u.clone());
        let mut frontier: Vec<Elem> = group.iter().cloned().collect();
        while let Some(a) = frontier.pop() {
            for g in &gens {
                let b = ring.mul(&a, g);
                if group.insert(b.clone()) {
                    frontier.push(b);
                }
            }
        }
    }
    gens
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ptower::{GaloisRing, Modulus};

    fn fp(l: u64) -> Arc<QuotientRing> {
        QuotientRing::integers(Modulus::new(l, 1).unwrap())
    }

    #[test]
    fn standard_form_properties() {
        let s = SymplecticGroupSpec::new(fp(5), 2).unwrap();
        assert!(s.j().is_alternating());
        assert!(s.ring().is_one(&s.j().det().unwrap()));
        for g in s.standard_generators() {
            assert!(s.is_symplectic(&g));
        }
    }

    #[test]
    fn order_formula_values() {
        assert_eq!(SymplecticGroupSpec::new(fp(5), 1).unwrap().group_order().unwrap(), 120);
        assert_eq!(
            SymplecticGroupSpec::new(fp(3), 2).unwrap().group_order().unwrap(),
            51840
        );
        let f9 = GaloisRing::new(Modulus::new(3, 1).unwrap(), &[1, 0, 1]).unwrap();
        assert_eq!(
            SymplecticGroupSpec::new(f9.ring().clone(), 1)
                .unwrap()
                .group_order()
                .unwrap(),
            720
        );
        let z25 = QuotientRing::integers(Modulus::new(5, 2).unwrap());
        assert_eq!(SymplecticGroupSpec::new(z25, 1).unwrap().group_order().unwrap(), 15000);
    }

    #[test]
    fn diagonal_similitude() {
        let r = fp(5);
        let s = SymplecticGroupSpec::new(r.clone(), 1).unwrap();
        let d = Matrix::from_ints(r.clone(), &[vec![2, 0], vec![0, 1]]).unwrap();
        assert_eq!(s.similitude(&d), Some(r.from_u64(2)));
        assert!(!s.is_symplectic(&d));
        assert_eq!(s.similitude(&Matrix::identity(r.clone(), 2)), Some(r.one()));
    }

    #[test]
    fn unit_generators_generate() {
        let r = QuotientRing::integers(Modulus::new(5, 2).unwrap());
        let gens = unit_group_generators(&r);
        // (Z/25)^x is cyclic of order 20
        assert_eq!(gens.len(), 1);
        assert_eq!(gens[0], r.from_u64(2));
    }
}
