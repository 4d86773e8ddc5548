use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matring::Matrix;
use crate::ptower::Elem;
use crate::sympgrp::closure::SubgroupClosure;
use crate::sympgrp::spec::{standard_form, SymplecticGroupSpec};

/// How the group-level commutant was enumerated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CommutantMethod {
    /// Every element of the commutant algebra tested for membership.
    AlgebraSpan,
    /// Every element of the symplectic group tested for commuting.
    GroupFilter,
}

/// The commutant of an algebra in `M_n(F)` and in `Sp(G)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CommutantResult {
    pub algebra_dim: usize,
    pub algebra_basis: Vec<Matrix>,
    pub order: u64,
    pub generators: Vec<Matrix>,
    pub method: CommutantMethod,
    #[serde(skip)]
    pub elements: Vec<Matrix>,
}

/// Basis of `{X : XA = AX for all A}` over a field.
pub fn commutant_algebra(algebra: &[Matrix]) -> Result<Vec<Matrix>> {
    let Some(first) = algebra.first() else {
        return Err(Error::DimensionMismatch("no algebra generators".into()));
    };
    let ring = first.ring().clone();
    if !ring.is_field() {
        return Err(Error::NotAField(ring.to_string()));
    }
    let n = first.rows();
    let n2 = n * n;
    let mut sys = Matrix::zeros(ring.clone(), n2 * algebra.len(), n2);
    for (g, a) in algebra.iter().enumerate() {
        if a.ring() != &ring || a.rows() != n || a.cols() != n {
            return Err(Error::DimensionMismatch(format!(
                "generator {g} is not {n}x{n} over {ring}"
            )));
        }
        for i in 0..n {
            for j in 0..n {
                let row = g * n2 + i * n + j;
                for k in 0..n {
                    // (XA)_ij = sum_k X_ik A_kj, (AX)_ij = sum_k A_ik X_kj
                    let c = sys.get(row, i * n + k);
                    sys.set(row, i * n + k, &ring.add(&c, &a.get(k, j)));
                    let c = sys.get(row, k * n + j);
                    sys.set(row, k * n + j, &ring.sub(&c, &a.get(i, k)));
                }
            }
        }
    }
    Ok(sys
        .kernel()?
        .into_iter()
        .map(|v| Matrix::from_fn(ring.clone(), n, n, |i, j| v[i * n + j].clone()))
        .collect())
}

/// Elements of `Sp(form)` commuting with every algebra generator.
///
/// The commutant algebra is solved linearly; its span is enumerated when it
/// has at most `cap` elements. Otherwise, for the standard form, the
/// symplectic group is enumerated and filtered.
pub fn commutant(algebra: &[Matrix], form: &Matrix, cap: usize) -> Result<CommutantResult> {
    let basis = commutant_algebra(algebra)?;
    let ring = form.ring().clone();
    let n = form.rows();
    let is_member = |x: &Matrix| &(&x.transpose() * form) * x == *form;
    let q = ring.size();
    let span_size = q.checked_pow(basis.len() as u32).unwrap_or(u128::MAX);
    let (mut elements, method) = if span_size <= cap as u128 {
        let scalars: Vec<Elem> = ring.elements().collect();
        let m = ring.modulus();
        // scaled[k][s] = data of basis_k * scalar_s; sums are coefficient-wise
        let scaled: Vec<Vec<Vec<u64>>> = basis
            .iter()
            .map(|b| scalars.iter().map(|c| b.scale(c).into_data()).collect())
            .collect();
        let width = scalars.len();
        let len = n * n * ring.degree();
        let out: Vec<Matrix> = (0..span_size as usize)
            .into_par_iter()
            .filter_map(|mut idx| {
                let mut data = vec![0u64; len];
                for table in &scaled {
                    let part = &table[idx % width];
                    idx /= width;
                    for (d, &p) in data.iter_mut().zip(part) {
                        *d = m.add(*d, p);
                    }
                }
                let x = Matrix::from_data(ring.clone(), n, n, data);
                is_member(&x).then_some(x)
            })
            .collect();
        (out, CommutantMethod::AlgebraSpan)
    } else if n.is_multiple_of(2) && *form == standard_form(&ring, n / 2) {
        let spec = SymplecticGroupSpec::new(ring.clone(), n / 2)?;
        if spec.group_order()? > cap as u128 {
            return Err(Error::CapExceeded(cap));
        }
        let group = SubgroupClosure::generate(ring.clone(), n, &spec.standard_generators(), cap)?;
        let out = group
            .elements()
            .filter(|x| algebra.iter().all(|a| (x * a) == (a * x)))
            .collect();
        (out, CommutantMethod::GroupFilter)
    } else {
        return Err(Error::CapExceeded(cap));
    };
    elements.sort_by(|a, b| a.data().cmp(b.data()));
    let mut generators: Vec<Matrix> = Vec::new();
    let mut generated = SubgroupClosure::generate(ring.clone(), n, &[], cap)?;
    for x in &elements {
        if generated.order() == elements.len() {
            break;
        }
        if !generated.contains(x) {
            generators.push(x.clone());
            generated = SubgroupClosure::generate(ring.clone(), n, &generators, cap)?;
        }
    }
    Ok(CommutantResult {
        algebra_dim: basis.len(),
        algebra_basis: basis,
        order: elements.len() as u64,
        generators,
        method,
        elements,
    })
}
