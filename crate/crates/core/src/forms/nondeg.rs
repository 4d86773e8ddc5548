use crate::error::{Error, Result};
use crate::matring::Matrix;
use crate::ptower::Elem;

/// Where nondegeneracy is tested.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Level {
    /// `det` nonzero modulo `l`.
    Residue,
    /// `det` a unit modulo `l^N`.
    Full,
}

pub fn is_nondegenerate(gram: &Matrix, level: Level) -> bool {
    let Ok(det) = gram.det() else {
        return false;
    };
    let r = gram.ring();
    match level {
        Level::Full => r.is_unit(&det),
        Level::Residue => {
            let res = r.residue_ring();
            !res.is_zero(&r.reduce_into(&res, &det))
        }
    }
}

/// The scalar `mu` with `g^T G g = mu G`.
pub fn similitude_factor(g: &Matrix, gram: &Matrix) -> Result<Elem> {
    let r = g.ring();
    let image = &(&g.transpose() * gram) * g;
    let (i, j) = (0..gram.rows())
        .flat_map(|i| (0..gram.cols()).map(move |j| (i, j)))
        .find(|&(i, j)| r.is_unit(&gram.get(i, j)))
        .ok_or(Error::NotSimilitude)?;
    let mu = r.mul(&image.get(i, j), &r.inverse(&gram.get(i, j)).expect("unit"));
    if image == gram.scale(&mu) {
        Ok(mu)
    } else {
        Err(Error::NotSimilitude)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ptower::{Modulus, QuotientRing};

    #[test]
    fn standard_and_zero_forms() {
        let r = QuotientRing::integers(Modulus::new(5, 2).unwrap());
        let j = Matrix::from_ints(r.clone(), &[vec![0, 1], vec![-1, 0]]).unwrap();
        assert!(is_nondegenerate(&j, Level::Residue) && is_nondegenerate(&j, Level::Full));
        let z = Matrix::zeros(r.clone(), 2, 2);
        assert!(!is_nondegenerate(&z, Level::Residue) && !is_nondegenerate(&z, Level::Full));
        let five = Matrix::from_ints(r, &[vec![0, 5], vec![-5, 0]]).unwrap();
        assert!(!is_nondegenerate(&five, Level::Full));
    }

    #[test]
    fn similitude_of_diagonal() {
        let r = QuotientRing::integers(Modulus::new(5, 1).unwrap());
        let j = Matrix::from_ints(r.clone(), &[vec![0, 1], vec![-1, 0]]).unwrap();
        assert!(r.is_one(&similitude_factor(&Matrix::identity(r.clone(), 2), &j).unwrap()));
        let d = Matrix::from_ints(r.clone(), &[vec![3, 0], vec![0, 1]]).unwrap();
        assert_eq!(similitude_factor(&d, &j).unwrap(), r.from_u64(3));
        let s = Matrix::from_ints(r.clone(), &[vec![1, 1], vec![0, 1]]).unwrap();
        let sym = Matrix::identity(r, 2);
        assert_eq!(similitude_factor(&s, &sym), Err(Error::NotSimilitude));
    }
}
