use serde::Serialize;

use crate::error::{Error, Result};
use crate::matring::Matrix;
use crate::sympgrp::{closure, SubgroupClosure, SymplecticGroupSpec};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CommutatorReport {
    pub group_order: u64,
    pub commutator_order: u64,
    pub sp_order: u64,
    pub contained_in_sp: bool,
    pub equals_sp: bool,
    /// Residue characteristic below 5, where `Sp_2h` need not be perfect.
    pub small_prime: bool,
}

fn inverse(x: &Matrix) -> Matrix {
    x.inverse().expect("group elements are invertible")
}

/// Normal closure of the commutators of `generators`, which is the derived
/// subgroup of the group they generate.
pub fn derived_subgroup(generators: &[Matrix], cap: usize) -> Result<SubgroupClosure> {
    let Some(first) = generators.first() else {
        return Err(Error::DimensionMismatch("no generators".into()));
    };
    let (ring, n) = (first.ring().clone(), first.rows());
    let inverses: Vec<Matrix> = generators.iter().map(inverse).collect();
    let mut gens: Vec<Matrix> = Vec::new();
    for (i, a) in generators.iter().enumerate() {
        for (j, b) in generators.iter().enumerate().skip(i + 1) {
            let c = &(&(&inverses[i] * &inverses[j]) * a) * b;
            if !c.is_identity() && !gens.contains(&c) {
                gens.push(c);
            }
        }
    }
    loop {
        let h = SubgroupClosure::generate(ring.clone(), n, &gens, cap)?;
        if h.cap_exceeded() {
            return Err(Error::CapExceeded(cap));
        }
        let mut added = false;
        for k in 0..gens.len() {
            for (g, g_inv) in generators.iter().zip(&inverses) {
                let conj = &(g_inv * &gens[k]) * g;
                if !h.contains(&conj) && !gens.contains(&conj) {
                    gens.push(conj);
                    added = true;
                }
            }
        }
        if !added {
            return Ok(h);
        }
    }
}

/// Derived subgroup of the group generated by similitudes, against `Sp`.
pub fn commutator_image_check(
    spec: &SymplecticGroupSpec,
    generators: &[Matrix],
    cap: usize,
) -> Result<CommutatorReport> {
    let group = closure(spec, generators, cap)?;
    if group.cap_exceeded() {
        return Err(Error::CapExceeded(cap));
    }
    let derived = derived_subgroup(generators, cap)?;
    let sp_order = spec.group_order()? as u64;
    let contained_in_sp = derived.elements().all(|x| spec.is_symplectic(&x));
    Ok(CommutatorReport {
        group_order: group.order() as u64,
        commutator_order: derived.order() as u64,
        sp_order,
        contained_in_sp,
        equals_sp: contained_in_sp && derived.order() as u64 == sp_order,
        small_prime: spec.ring().modulus().l() < 5,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ptower::{Modulus, QuotientRing};

    #[test]
    fn gsp2_f5_derived_is_sp2() {
        let s = SymplecticGroupSpec::new(QuotientRing::integers(Modulus::new(5, 1).unwrap()), 1).unwrap();
        let r = commutator_image_check(&s, &s.similitude_generators(), 1_000_000).unwrap();
        assert_eq!(r.group_order, 480);
        assert_eq!(r.commutator_order, 120);
        assert!(r.equals_sp);
    }

    #[test]
    fn abelian_generators_have_trivial_derived_group() {
        let s = SymplecticGroupSpec::new(QuotientRing::integers(Modulus::new(7, 1).unwrap()), 1).unwrap();
        let gens = vec![
            s.standard_generators()[0].clone(),
            s.similitude_diagonal(&s.ring().from_u64(1)),
        ];
        let r = commutator_image_check(&s, &gens, 1_000_000).unwrap();
        assert_eq!(r.commutator_order, 1);
    }
}
