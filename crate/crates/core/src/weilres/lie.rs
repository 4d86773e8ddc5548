use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matring::Matrix;
use crate::ptower::QuotientRing;

/// Which scalars the basis spans over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Scalars {
    /// The Galois ring the matrices are defined over.
    Extension,
    /// `Z/l^N` after restriction.
    Base,
}

/// A Lie subalgebra of `M_n(R)` given by a basis that is independent modulo
/// the maximal ideal, so its span is a free direct summand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixLieAlgebra {
    ring: Arc<QuotientRing>,
    size: usize,
    basis: Vec<Matrix>,
    scalars: Scalars,
}

fn unit(ring: &Arc<QuotientRing>, n: usize, i: usize, j: usize) -> Matrix {
    let mut m = Matrix::zeros(ring.clone(), n, n);
    m.set(i, j, &ring.one());
    m
}

impl MatrixLieAlgebra {
    /// Validates shapes, independence and closure under the bracket.
    pub fn new(ring: Arc<QuotientRing>, size: usize, basis: Vec<Matrix>, scalars: Scalars) -> Result<Self> {
        let g = Self::unchecked(ring, size, basis, scalars)?;
        if !g.is_closed()? {
            return Err(Error::BadAlgebra("basis is not closed under the bracket".into()));
        }
        Ok(g)
    }

    fn unchecked(ring: Arc<QuotientRing>, size: usize, basis: Vec<Matrix>, scalars: Scalars) -> Result<Self> {
        if !ring.is_local() {
            return Err(Error::BadAlgebra(format!("{ring} is not local")));
        }
        for b in &basis {
            if b.ring() != &ring {
                return Err(Error::RingMismatch(b.ring().to_string(), ring.to_string()));
            }
            if b.rows() != size || b.cols() != size {
                return Err(Error::DimensionMismatch(format!("basis element is not {size}x{size}")));
            }
        }
        let g = Self {
            ring,
            size,
            basis,
            scalars,
        };
        if g.stacked().pivot_columns().len() != g.basis.len() {
            return Err(Error::BadAlgebra("basis is dependent modulo the maximal ideal".into()));
        }
        Ok(g)
    }

    /// The algebra spanned by `spanning` over a field: an independent subset
    /// is kept, then closure is checked.
    pub fn from_spanning(ring: Arc<QuotientRing>, size: usize, spanning: &[Matrix], scalars: Scalars) -> Result<Self> {
        if !ring.is_field() {
            return Err(Error::NotAField(ring.to_string()));
        }
        let probe = Self {
            ring: ring.clone(),
            size,
            basis: spanning.to_vec(),
            scalars,
        };
        let keep = probe.stacked().pivot_columns();
        let basis = keep.into_iter().map(|i| spanning[i].clone()).collect();
        Self::new(ring, size, basis, scalars)
    }

    pub fn gl(ring: Arc<QuotientRing>, n: usize) -> Self {
        let basis = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .map(|(i, j)| unit(&ring, n, i, j))
            .collect();
        Self {
            ring,
            size: n,
            basis,
            scalars: Scalars::Extension,
        }
    }

    /// Trace-zero matrices.
    pub fn sl(ring: Arc<QuotientRing>, n: usize) -> Self {
        let mut basis = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    basis.push(unit(&ring, n, i, j));
                }
            }
        }
        for i in 0..n.saturating_sub(1) {
            basis.push(&unit(&ring, n, i, i) - &unit(&ring, n, n - 1, n - 1));
        }
        Self {
            ring,
            size: n,
            basis,
            scalars: Scalars::Extension,
        }
    }

    /// `X^T J + J X = 0` for `J = [[0, I_h], [-I_h, 0]]`; dimension `h(2h+1)`.
    pub fn sp(ring: Arc<QuotientRing>, h: usize) -> Self {
        let n = 2 * h;
        let mut basis = Vec::new();
        for i in 0..h {
            for j in 0..h {
                basis.push(&unit(&ring, n, i, j) - &unit(&ring, n, h + j, h + i));
            }
        }
        for i in 0..h {
            for j in i..h {
                let mut upper = unit(&ring, n, i, h + j);
                let mut lower = unit(&ring, n, h + i, j);
                if i != j {
                    upper = &upper + &unit(&ring, n, j, h + i);
                    lower = &lower + &unit(&ring, n, h + j, i);
                }
                basis.push(upper);
                basis.push(lower);
            }
        }
        Self {
            ring,
            size: n,
            basis,
            scalars: Scalars::Extension,
        }
    }

    pub fn diagonal(ring: Arc<QuotientRing>, n: usize) -> Self {
        let basis = (0..n).map(|i| unit(&ring, n, i, i)).collect();
        Self {
            ring,
            size: n,
            basis,
            scalars: Scalars::Extension,
        }
    }

    pub fn zero(ring: Arc<QuotientRing>, n: usize) -> Self {
        Self {
            ring,
            size: n,
            basis: Vec::new(),
            scalars: Scalars::Extension,
        }
    }

    pub fn ring(&self) -> &Arc<QuotientRing> {
        &self.ring
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn basis(&self) -> &[Matrix] {
        &self.basis
    }

    pub fn scalars(&self) -> Scalars {
        self.scalars
    }

    /// Rank of the algebra as a free module.
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn bracket(a: &Matrix, b: &Matrix) -> Matrix {
        &(a * b) - &(b * a)
    }

    /// Basis elements flattened into the columns of one matrix.
    fn stacked(&self) -> Matrix {
        let n2 = self.size * self.size;
        let mut m = Matrix::zeros(self.ring.clone(), n2, self.basis.len());
        for (k, b) in self.basis.iter().enumerate() {
            for (idx, e) in b.entries().iter().enumerate() {
                m.set(idx, k, e);
            }
        }
        m
    }

    /// Coordinates of `x` in the basis, if it lies in the span.
    pub fn coordinates(&self, x: &Matrix) -> Result<Option<Vec<crate::Elem>>> {
        if x.ring() != &self.ring {
            return Err(Error::RingMismatch(x.ring().to_string(), self.ring.to_string()));
        }
        if x.rows() != self.size || x.cols() != self.size {
            return Err(Error::DimensionMismatch(format!("expected {0}x{0}", self.size)));
        }
        if self.basis.is_empty() {
            return Ok(x.is_zero().then(Vec::new));
        }
        let rhs = Matrix::column_vector(self.ring.clone(), &x.entries());
        match self.stacked().solve(&rhs) {
            Ok(c) => Ok(Some(c.column(0))),
            Err(Error::Inconsistent | Error::Singular) => Ok(None),
            Err(e) => Err(e),
        }
    }

    pub fn contains(&self, x: &Matrix) -> Result<bool> {
        Ok(self.coordinates(x)?.is_some())
    }

    pub fn is_closed(&self) -> Result<bool> {
        for (i, a) in self.basis.iter().enumerate() {
            for b in &self.basis[i + 1..] {
                if !self.contains(&Self::bracket(a, b))? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Equality of spans. Both spans are direct summands, so mutual
    /// containment of bases decides it.
    pub fn same_span(&self, other: &Self) -> Result<bool> {
        if self.size != other.size || self.dim() != other.dim() {
            return Ok(false);
        }
        for b in &other.basis {
            if !self.contains(b)? {
                return Ok(false);
            }
        }
        for b in &self.basis {
            if !other.contains(b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// `[g, g]`, spanned by brackets of basis pairs. Field coefficients only.
pub fn derived_algebra(g: &MatrixLieAlgebra) -> Result<MatrixLieAlgebra> {
    let mut spanning = Vec::new();
    for (i, a) in g.basis.iter().enumerate() {
        for b in &g.basis[i + 1..] {
            spanning.push(MatrixLieAlgebra::bracket(a, b));
        }
    }
    MatrixLieAlgebra::from_spanning(g.ring.clone(), g.size, &spanning, g.scalars)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ptower::Modulus;

    fn f5() -> Arc<QuotientRing> {
        QuotientRing::integers(Modulus::new(5, 1).unwrap())
    }

    #[test]
    fn standard_dimensions() {
        let r = f5();
        assert_eq!(MatrixLieAlgebra::gl(r.clone(), 3).dim(), 9);
        assert_eq!(MatrixLieAlgebra::sl(r.clone(), 3).dim(), 8);
        for h in 1..=3 {
            let sp = MatrixLieAlgebra::sp(r.clone(), h);
            assert_eq!(sp.dim(), h * (2 * h + 1));
            assert!(sp.is_closed().unwrap());
        }
    }

    #[test]
    fn sp_members_satisfy_the_defining_identity() {
        let r = f5();
        let h = 2;
        let mut j = Matrix::zeros(r.clone(), 4, 4);
        j.set_block(0, 2, &Matrix::identity(r.clone(), 2));
        j.set_block(2, 0, &Matrix::identity(r.clone(), 2).scale(&r.from_i64(-1)));
        for b in MatrixLieAlgebra::sp(r.clone(), h).basis() {
            assert!((&(&b.transpose() * &j) + &(&j * b)).is_zero());
        }
    }

    #[test]
    fn derived_gl2_is_sl2() {
        let r = f5();
        let d = derived_algebra(&MatrixLieAlgebra::gl(r.clone(), 2)).unwrap();
        assert!(d.same_span(&MatrixLieAlgebra::sl(r, 2)).unwrap());
    }

    #[test]
    fn derived_of_abelian_is_zero() {
        let r = f5();
        let d = derived_algebra(&MatrixLieAlgebra::diagonal(r.clone(), 3)).unwrap();
        assert_eq!(d.dim(), 0);
    }

    #[test]
    fn membership() {
        let r = f5();
        let sl = MatrixLieAlgebra::sl(r.clone(), 2);
        let yes = Matrix::from_ints(r.clone(), &[vec![1, 2], vec![3, 4]]).unwrap();
        let no = Matrix::from_ints(r.clone(), &[vec![1, 2], vec![3, 1]]).unwrap();
        assert!(sl.contains(&yes).unwrap());
        assert!(!sl.contains(&no).unwrap());
    }

    #[test]
    fn rejects_non_closed_and_dependent_bases() {
        let r = f5();
        let e12 = unit(&r, 2, 0, 1);
        let e21 = unit(&r, 2, 1, 0);
        assert!(MatrixLieAlgebra::new(r.clone(), 2, vec![e12.clone(), e21], Scalars::Extension).is_err());
        assert!(MatrixLieAlgebra::new(r, 2, vec![e12.clone(), e12], Scalars::Extension).is_err());
    }

    #[test]
    fn membership_over_prime_power() {
        let r = QuotientRing::integers(Modulus::new(5, 2).unwrap());
        let sl = MatrixLieAlgebra::sl(r.clone(), 2);
        assert!(sl
            .contains(&Matrix::from_ints(r.clone(), &[vec![5, 1], vec![0, 20]]).unwrap())
            .unwrap());
        assert!(!sl
            .contains(&Matrix::from_ints(r, &[vec![5, 1], vec![0, 5]]).unwrap())
            .unwrap());
    }
}
