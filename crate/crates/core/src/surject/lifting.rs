use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matring::Matrix;
use crate::random::{random_matrix, rng};
use crate::sympgrp::{closure, SymplecticGroupSpec};

/// Reduction-modulo-`l` data for a generating set of a subgroup of
/// `Sp_2h(R)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LiftingReport {
    pub h: usize,
    pub l: u64,
    pub precision: u32,
    /// `l < 5`: the reduction criterion is not claimed, only observed.
    pub small_prime: bool,
    pub generators: Vec<Matrix>,
    pub reductions: Vec<Matrix>,
    pub order_mod_l: u64,
    pub full_order_mod_l: u64,
    pub full_mod_l: bool,
    pub order: u64,
    pub full_order: u64,
    pub full: bool,
    pub kernel_observed: u64,
    pub kernel_predicted: u64,
    pub kernel_divides: bool,
    /// Full modulo `l` implies full.
    pub implication_holds: bool,
}

/// Closure orders modulo `l` and modulo `l^N` for the generated subgroup.
pub fn lifting_check(
    spec: &SymplecticGroupSpec,
    generators: &[Matrix],
    allow_small_prime: bool,
    cap: usize,
) -> Result<LiftingReport> {
    let m = *spec.ring().modulus();
    if m.l() < 5 && !allow_small_prime {
        return Err(Error::SmallPrime(m.l()));
    }
    for (i, g) in generators.iter().enumerate() {
        if !spec.is_symplectic(g) {
            return Err(Error::NotInGroup(format!("generator {i} is not symplectic")));
        }
    }
    let residue = spec.at_precision(1);
    let reductions: Vec<Matrix> = generators.iter().map(|g| g.reduce_to(residue.ring())).collect();
    let low = closure(&residue, &reductions, cap)?;
    let high = closure(spec, generators, cap)?;
    if low.cap_exceeded() || high.cap_exceeded() {
        return Err(Error::CapExceeded(cap));
    }
    let identity = Matrix::identity(residue.ring().clone(), spec.size());
    let kernel_observed = high
        .elements()
        .filter(|x| x.reduce_to(residue.ring()) == identity)
        .count() as u64;
    let d = spec.ring().degree() as u32;
    let h = spec.h() as u32;
    let kernel_predicted = m.l().pow((m.precision() - 1) * d * h * (2 * h + 1));
    let full_order_mod_l = residue.group_order()? as u64;
    let full_order = spec.group_order()? as u64;
    let full_mod_l = low.order() as u64 == full_order_mod_l;
    let full = high.order() as u64 == full_order;
    Ok(LiftingReport {
        h: spec.h(),
        l: m.l(),
        precision: m.precision(),
        small_prime: m.l() < 5,
        generators: generators.to_vec(),
        reductions,
        order_mod_l: low.order() as u64,
        full_order_mod_l,
        full_mod_l,
        order: high.order() as u64,
        full_order,
        full,
        kernel_observed,
        kernel_predicted,
        kernel_divides: kernel_predicted.is_multiple_of(kernel_observed),
        implication_holds: !full_mod_l || full,
    })
}

/// Newton refinement of a matrix that is symplectic modulo `l` to one that
/// is symplectic over the whole ring: `X <- X (I + J E / 2)` with
/// `E = X^T J X - J`, doubling the precision each step.
pub fn lift_symplectic(spec: &SymplecticGroupSpec, x: &Matrix) -> Result<Matrix> {
    let ring = spec.ring();
    let j = spec.j();
    let residue = spec.at_precision(1);
    if !residue.is_symplectic(&x.reduce_to(residue.ring())) {
        return Err(Error::NotInGroup("not symplectic modulo l".into()));
    }
    let half = ring.inverse(&ring.from_u64(2)).ok_or(Error::EvenCharacteristic)?;
    let mut x = x.clone();
    loop {
        let err = &(&(&x.transpose() * j) * &x) - j;
        if err.is_zero() {
            return Ok(x);
        }
        x = &x + &(&x * &(j * &err)).scale(&half);
    }
}

/// `lift(x + l R)` for a uniformly random `R`.
pub fn random_lift(spec: &SymplecticGroupSpec, x_mod_l: &Matrix, rng: &mut impl Rng) -> Result<Matrix> {
    let ring = spec.ring();
    let l = ring.from_u64(ring.modulus().l());
    let noise = random_matrix(ring, spec.size(), spec.size(), rng).scale(&l);
    lift_symplectic(spec, &(&x_mod_l.lift_to(ring) + &noise))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LiftTrials {
    pub seed: u64,
    pub reports: Vec<LiftingReport>,
    pub all_full: bool,
    /// Trials that were full modulo `l` but not full.
    pub counterexamples: usize,
}

/// Independent random lifts of the same residue generators, trial `i`
/// drawing from seed `seed + i`. Trials run in parallel.
pub fn random_lift_trials(
    spec: &SymplecticGroupSpec,
    residue_generators: &[Matrix],
    trials: usize,
    seed: u64,
    cap: usize,
) -> Result<LiftTrials> {
    let reports = (0..trials)
        .into_par_iter()
        .map(|i| {
            let mut r = rng(seed.wrapping_add(i as u64));
            let gens = residue_generators
                .iter()
                .map(|g| random_lift(spec, g, &mut r))
                .collect::<Result<Vec<_>>>()?;
            lifting_check(spec, &gens, true, cap)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(LiftTrials {
        seed,
        all_full: reports.iter().all(|r| r.full),
        counterexamples: reports.iter().filter(|r| !r.implication_holds).count(),
        reports,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KernelReport {
    pub from: String,
    pub to: String,
    pub size: u64,
    pub predicted: u64,
    pub elementary_abelian: bool,
}

/// Kernel of `Sp_2h(R_(k+1)) -> Sp_2h(R_k)` where `spec` lives at precision
/// `k + 1 >= 2`, enumerated as the symplectic matrices `I + l^k Y`.
pub fn reduction_kernel(spec: &SymplecticGroupSpec, cap: usize) -> Result<KernelReport> {
    let ring = spec.ring();
    let m = *ring.modulus();
    let k = m
        .precision()
        .checked_sub(1)
        .filter(|&k| k >= 1)
        .ok_or_else(|| Error::BadModulus("reduction kernel needs precision at least 2".into()))?;
    let n = spec.size();
    let d = ring.degree();
    let slots = n * n * d;
    let l = m.l();
    let total = (l as u128).checked_pow(slots as u32).unwrap_or(u128::MAX);
    if total > cap as u128 {
        return Err(Error::CapExceeded(cap));
    }
    let step = m.pow(l, u64::from(k));
    let identity = Matrix::identity(ring.clone(), n).into_data();
    let elements: Vec<Matrix> = (0..total as u64)
        .into_par_iter()
        .filter_map(|mut idx| {
            let mut data = identity.clone();
            for slot in data.iter_mut() {
                *slot = m.add(*slot, m.mul(idx % l, step));
                idx /= l;
            }
            let x = Matrix::from_data(ring.clone(), n, n, data);
            spec.is_symplectic(&x).then_some(x)
        })
        .collect();
    let h = spec.h() as u32;
    let predicted = l.pow(d as u32 * h * (2 * h + 1));
    let elementary_abelian = elements.iter().all(|x| x.pow(l).is_identity())
        && elements
            .par_iter()
            .enumerate()
            .all(|(i, a)| elements[i + 1..].iter().all(|b| (a * b) == (b * a)));
    Ok(KernelReport {
        from: ring.to_string(),
        to: ring.at_precision(k).to_string(),
        size: elements.len() as u64,
        predicted,
        elementary_abelian,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ptower::{Modulus, QuotientRing};

    fn spec(l: u64, n: u32) -> SymplecticGroupSpec {
        SymplecticGroupSpec::new(QuotientRing::integers(Modulus::new(l, n).unwrap()), 1).unwrap()
    }

    #[test]
    fn kernel_mod_25_has_125_elements() {
        let r = reduction_kernel(&spec(5, 2), 1_000_000).unwrap();
        assert_eq!(r.size, 125);
        assert_eq!(r.predicted, 125);
        assert!(r.elementary_abelian);
    }

    #[test]
    fn lifts_are_symplectic_and_reduce_correctly() {
        let s = spec(5, 3);
        let res = s.at_precision(1);
        let mut r = rng(3);
        for g in res.standard_generators() {
            let x = random_lift(&s, &g, &mut r).unwrap();
            assert!(s.is_symplectic(&x));
            assert_eq!(x.reduce_to(res.ring()), g);
        }
    }

    #[test]
    fn small_prime_is_an_error_unless_allowed() {
        let s = spec(3, 2);
        let gens = s.standard_generators();
        assert_eq!(lifting_check(&s, &gens, false, 1_000_000), Err(Error::SmallPrime(3)));
        assert!(lifting_check(&s, &gens, true, 1_000_000).unwrap().small_prime);
    }

    #[test]
    fn proper_subgroup_mod_l_is_not_full() {
        let s = spec(5, 2);
        let gens = vec![s.standard_generators()[0].clone()];
        let r = lifting_check(&s, &gens, false, 1_000_000).unwrap();
        assert!(!r.full_mod_l && !r.full);
        assert!(r.implication_holds && r.kernel_divides);
    }
}
