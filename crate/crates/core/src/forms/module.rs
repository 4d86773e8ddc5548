use std::sync::Arc;

use crate::error::{Error, Result};
use crate::matring::Matrix;
use crate::ptower::{Elem, EtaleAlgebra, QuotientRing};

/// A free module `R^m` over `R = Z/l^N` with algebra generators acting by
/// matrices and an involution `alpha -> alpha'` given on the generators.
#[derive(Clone, Debug)]
pub struct ActionModule {
    ring: Arc<QuotientRing>,
    rank: usize,
    generators: Vec<Matrix>,
    involution: Vec<Matrix>,
    algebra: Option<EtaleAlgebra>,
}

impl ActionModule {
    pub fn new(ring: Arc<QuotientRing>, rank: usize, generators: Vec<Matrix>, involution: Vec<Matrix>) -> Result<Self> {
        if ring.degree() != 1 {
            return Err(Error::RingMismatch(ring.to_string(), "Z/l^N".into()));
        }
        if generators.len() != involution.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} generators but {} involution images",
                generators.len(),
                involution.len()
            )));
        }
        for a in generators.iter().chain(&involution) {
            if a.ring() != &ring {
                return Err(Error::RingMismatch(a.ring().to_string(), ring.to_string()));
            }
            if a.rows() != rank || a.cols() != rank {
                return Err(Error::DimensionMismatch(format!("action matrix is not {rank}x{rank}")));
            }
        }
        Ok(Self {
            ring,
            rank,
            generators,
            involution,
            algebra: None,
        })
    }

    /// Integers acting as scalars, with the identity involution.
    pub fn scalar(ring: Arc<QuotientRing>, rank: usize, scalars: &[i64]) -> Self {
        let generators: Vec<Matrix> = scalars
            .iter()
            .map(|&c| Matrix::scalar(ring.clone(), rank, &ring.from_i64(c)))
            .collect();
        Self {
            ring,
            rank,
            involution: generators.clone(),
            generators,
            algebra: None,
        }
    }

    /// The etale algebra acting through the matrix `x_action` of its
    /// generator `x`. The involution is the identity.
    pub fn etale(alg: &EtaleAlgebra, x_action: Matrix) -> Result<Self> {
        let ring = alg.base().clone();
        if x_action.ring() != &ring {
            return Err(Error::RingMismatch(x_action.ring().to_string(), ring.to_string()));
        }
        if !x_action.is_square() {
            return Err(Error::NotSquare {
                rows: x_action.rows(),
                cols: x_action.cols(),
            });
        }
        let rank = x_action.rows();
        let g = alg.ring().defining_poly();
        if !eval_at_matrix(&ring, g, &x_action).is_zero() {
            return Err(Error::BadAlgebra("action matrix does not satisfy g(X) = 0".into()));
        }
        Ok(Self {
            ring,
            rank,
            generators: vec![x_action.clone()],
            involution: vec![x_action],
            algebra: Some(alg.clone()),
        })
    }

    /// The algebra acting on `k` copies of itself. Coordinate `s * e + i`
    /// is the coefficient of `x^i` in the `s`-th copy.
    pub fn free_etale(alg: &EtaleAlgebra, k: usize) -> Self {
        let ring = alg.base().clone();
        let mx = alg.ring().mult_matrix(&alg.ring().gen());
        let e = alg.degree();
        let block = Matrix::from_fn(ring.clone(), e, e, |i, j| ring.from_u64(mx[i][j]));
        let x = Matrix::identity(ring.clone(), k).kron(&block);
        Self::etale(alg, x).expect("multiplication by x satisfies g")
    }

    pub fn ring(&self) -> &Arc<QuotientRing> {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn generators(&self) -> &[Matrix] {
        &self.generators
    }

    pub fn involution(&self) -> &[Matrix] {
        &self.involution
    }

    pub fn algebra(&self) -> Option<&EtaleAlgebra> {
        self.algebra.as_ref()
    }

    /// Matrix of an element of the etale algebra acting on the module.
    pub fn algebra_action(&self, a: &Elem) -> Result<Matrix> {
        let alg = self
            .algebra
            .as_ref()
            .ok_or_else(|| Error::BadAlgebra("no etale action".into()))?;
        if a.coeffs().len() != alg.degree() {
            return Err(Error::RingMismatch("element".into(), alg.ring().to_string()));
        }
        Ok(eval_at_matrix(&self.ring, a.coeffs(), &self.generators[0]))
    }

    /// Generators pairwise commute.
    pub fn is_commutative(&self) -> bool {
        self.generators
            .iter()
            .enumerate()
            .all(|(i, a)| self.generators[i + 1..].iter().all(|b| (a * b) == (b * a)))
    }

    /// `(AB)' = B'A'` whenever a product of two generators is again a
    /// generator; the only products the involution is defined on.
    pub fn is_anti_automorphic(&self) -> bool {
        let g = &self.generators;
        let s = &self.involution;
        for i in 0..g.len() {
            for j in 0..g.len() {
                let p = &g[i] * &g[j];
                if let Some(k) = g.iter().position(|c| c == &p) {
                    if s[k] != &s[j] * &s[i] {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Reduction modulo `l`.
    pub fn residue(&self) -> Self {
        let r = self.ring.residue_ring();
        let red = |v: &[Matrix]| v.iter().map(|m| m.reduce_to(&r)).collect::<Vec<_>>();
        Self {
            rank: self.rank,
            generators: red(&self.generators),
            involution: red(&self.involution),
            algebra: self.algebra.as_ref().map(EtaleAlgebra::residue),
            ring: r,
        }
    }

    fn check_gram(&self, g: &Matrix) -> bool {
        g.ring() == &self.ring && g.rows() == self.rank && g.cols() == self.rank
    }
}

/// `sum_i c_i X^i` for integer coefficients `c_i`.
pub(crate) fn eval_at_matrix(ring: &Arc<QuotientRing>, coeffs: &[u64], x: &Matrix) -> Matrix {
    let n = x.rows();
    coeffs.iter().rev().fold(Matrix::zeros(ring.clone(), n, n), |acc, &c| {
        &(&acc * x) + &Matrix::scalar(ring.clone(), n, &ring.from_u64(c))
    })
}

/// `A^T G = G A` for every action matrix `A`.
pub fn check_balanced(module: &ActionModule, gram: &Matrix) -> bool {
    module.check_gram(gram) && module.generators.iter().all(|a| &a.transpose() * gram == gram * a)
}

/// `A^T G = G A'` for every generator and its involution image.
pub fn check_adjoint(module: &ActionModule, gram: &Matrix) -> bool {
    module.check_gram(gram)
        && module
            .generators
            .iter()
            .zip(&module.involution)
            .all(|(a, a_inv)| &a.transpose() * gram == gram * a_inv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ptower::Modulus;

    #[test]
    fn scalar_action_is_always_balanced() {
        let r = QuotientRing::integers(Modulus::new(5, 1).unwrap());
        let m = ActionModule::scalar(r.clone(), 3, &[2, 3]);
        let g = Matrix::from_ints(r, &[vec![1, 2, 3], vec![4, 0, 1], vec![2, 2, 2]]).unwrap();
        assert!(check_balanced(&m, &g));
        assert!(check_adjoint(&m, &g));
    }

    #[test]
    fn trace_form_of_the_algebra_is_balanced() {
        let alg = EtaleAlgebra::split(Modulus::new(5, 1).unwrap(), &[-1, 0, 1]).unwrap();
        let m = ActionModule::free_etale(&alg, 1);
        let r = alg.ring();
        let basis = [r.one(), r.gen()];
        let g = Matrix::from_fn(alg.base().clone(), 2, 2, |i, j| {
            alg.base().from_u64(alg.trace(&r.mul(&basis[i], &basis[j])))
        });
        assert!(check_balanced(&m, &g));
        let generic = Matrix::from_ints(alg.base().clone(), &[vec![1, 2], vec![0, 1]]).unwrap();
        assert!(!check_balanced(&m, &generic));
    }

    #[test]
    fn rejects_action_not_satisfying_g() {
        let alg = EtaleAlgebra::split(Modulus::new(5, 1).unwrap(), &[-1, 0, 1]).unwrap();
        let x = Matrix::from_ints(alg.base().clone(), &[vec![1, 1], vec![0, 1]]).unwrap();
        assert!(matches!(ActionModule::etale(&alg, x), Err(Error::BadAlgebra(_))));
    }

    #[test]
    fn algebra_action_of_idempotents() {
        let alg = EtaleAlgebra::split(Modulus::new(5, 2).unwrap(), &[-1, 0, 1]).unwrap();
        let m = ActionModule::free_etale(&alg, 2);
        let es: Vec<Matrix> = alg.idempotents().iter().map(|e| m.algebra_action(e).unwrap()).collect();
        assert!((&es[0] * &es[0]) == es[0]);
        assert!((&es[0] * &es[1]).is_zero());
        assert!((&es[0] + &es[1]).is_identity());
    }
}
