use proptest::prelude::*;
use weilkit::ptower::{GaloisRing, Modulus, QuotientRing};
use weilkit::random::{random_invertible, random_matrix, rng};
use weilkit::{Error, Matrix};

fn rings() -> Vec<std::sync::Arc<QuotientRing>> {
    vec![
        QuotientRing::integers(Modulus::new(5, 1).unwrap()),
        QuotientRing::integers(Modulus::new(3, 3).unwrap()),
        GaloisRing::new(Modulus::new(3, 2).unwrap(), &[1, 0, 1])
            .unwrap()
            .ring()
            .clone(),
        QuotientRing::new(Modulus::new(5, 2).unwrap(), &[24, 0, 1]).unwrap(),
    ]
}

#[test]
fn worked_examples() {
    let z9 = QuotientRing::integers(Modulus::new(3, 2).unwrap());
    let m = Matrix::from_ints(z9.clone(), &[vec![2, 1], vec![1, 2]]).unwrap();
    assert_eq!(m.det().unwrap(), z9.from_u64(3));
    assert!(matches!(m.inverse(), Err(Error::NotInvertible { .. })));
    let f3 = QuotientRing::integers(Modulus::new(3, 1).unwrap());
    let a = Matrix::from_ints(f3.clone(), &[vec![0, 1], vec![2, 0]]).unwrap();
    assert_eq!(
        a.inverse().unwrap(),
        Matrix::from_ints(f3.clone(), &[vec![0, 2], vec![1, 0]]).unwrap()
    );
    let k = Matrix::from_ints(f3.clone(), &[vec![1, 1], vec![2, 2]])
        .unwrap()
        .kernel()
        .unwrap();
    assert_eq!(k.len(), 1);
    assert_eq!((k[0][0].coeffs()[0] + k[0][1].coeffs()[0]) % 3, 0);
    let sq = Matrix::from_ints(f3, &[vec![1, 2, 3]]).unwrap();
    assert!(matches!(sq.det(), Err(Error::NotSquare { .. })));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn ring_axioms(ri in 0usize..4, n in 1usize..=4, seed in any::<u64>()) {
        let r = &rings()[ri];
        let mut g = rng(seed);
        let (a, b, c) = (random_matrix(r, n, n, &mut g), random_matrix(r, n, n, &mut g), random_matrix(r, n, n, &mut g));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!((&a * &b).det().unwrap(), r.mul(&a.det().unwrap(), &b.det().unwrap()));
    }

    #[test]
    fn inverse_and_solve(ri in 0usize..4, n in 1usize..=4, seed in any::<u64>()) {
        let r = &rings()[ri];
        let mut g = rng(seed);
        let a = random_invertible(r, n, &mut g);
        let inv = a.inverse().unwrap();
        prop_assert!((&a * &inv).is_identity() && (&inv * &a).is_identity());
        prop_assert!(r.is_one(&r.mul(&a.det().unwrap(), &inv.det().unwrap())));
        let b = random_matrix(r, n, 2, &mut g);
        prop_assert_eq!(&a * &a.solve(&b).unwrap(), b);
    }

    #[test]
    fn reduction_commutes_with_operations(n in 1usize..=4, seed in any::<u64>()) {
        let r = QuotientRing::integers(Modulus::new(7, 3).unwrap());
        let res = r.residue_ring();
        let mut g = rng(seed);
        let (a, b) = (random_matrix(&r, n, n, &mut g), random_matrix(&r, n, n, &mut g));
        prop_assert_eq!((&a * &b).reduce_to(&res), &a.reduce_to(&res) * &b.reduce_to(&res));
        prop_assert_eq!(r.reduce_into(&res, &a.det().unwrap()), a.reduce_to(&res).det().unwrap());
    }
}
