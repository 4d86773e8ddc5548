use std::collections::HashSet;

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matring::Matrix;
use crate::ptower::EtaleAlgebra;
use crate::random::rng;
use crate::sympgrp::{closure, SymplecticGroupSpec};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrtReport {
    pub h: usize,
    pub ring: String,
    pub components: Vec<String>,
    /// Enumerated `|Sp_2h(O_E / l^N)|`.
    pub order: u64,
    /// Enumerated `|Sp_2h|` of each component.
    pub component_orders: Vec<u64>,
    pub formula_order: u64,
    pub orders_match: bool,
    pub seed: u64,
    pub samples: usize,
    pub images_symplectic: bool,
    pub injective_on_samples: bool,
    pub homomorphism_on_samples: bool,
    /// Reassembling the projections through the idempotents gives back
    /// every sampled element.
    pub reconstruction_ok: bool,
}

impl CrtReport {
    pub fn passed(&self) -> bool {
        self.orders_match
            && self.images_symplectic
            && self.injective_on_samples
            && self.homomorphism_on_samples
            && self.reconstruction_ok
    }
}

/// Matrix of the entrywise projections to component `lambda`.
pub fn project_matrix(alg: &EtaleAlgebra, lambda: usize, x: &Matrix) -> Matrix {
    x.map_into(alg.component(lambda).ring().clone(), |a| alg.project(lambda, a))
}

/// Entrywise CRT reconstruction from per-component matrices.
pub fn reconstruct_matrix(alg: &EtaleAlgebra, parts: &[Matrix]) -> Matrix {
    let (r, c) = (parts[0].rows(), parts[0].cols());
    Matrix::from_fn(alg.ring().clone(), r, c, |i, j| {
        let entries: Vec<_> = parts.iter().map(|p| p.get(i, j)).collect();
        alg.reconstruct(&entries)
    })
}

/// `Sp_2h` over the etale algebra against the product of `Sp_2h` over its
/// components, through the idempotent projections.
pub fn crt_product_check(h: usize, alg: &EtaleAlgebra, samples: usize, seed: u64, cap: usize) -> Result<CrtReport> {
    let spec = SymplecticGroupSpec::new(alg.ring().clone(), h)?;
    let whole = closure(&spec, &spec.standard_generators(), cap)?;
    if whole.cap_exceeded() {
        return Err(Error::CapExceeded(cap));
    }
    let comp_specs: Vec<SymplecticGroupSpec> = alg
        .components()
        .iter()
        .map(|c| SymplecticGroupSpec::new(c.ring().clone(), h))
        .collect::<Result<_>>()?;
    let mut component_orders = Vec::new();
    for s in &comp_specs {
        let c = closure(s, &s.standard_generators(), cap)?;
        if c.cap_exceeded() {
            return Err(Error::CapExceeded(cap));
        }
        component_orders.push(c.order() as u64);
    }
    let formula_order = spec.group_order()? as u64;
    let order = whole.order() as u64;
    let product: u64 = component_orders.iter().product();

    let mut rng = rng(seed);
    let picks: Vec<Matrix> = (0..samples)
        .map(|_| whole.element(rng.random_range(0..whole.order())))
        .collect();
    let project =
        |x: &Matrix| -> Vec<Matrix> { (0..alg.num_components()).map(|k| project_matrix(alg, k, x)).collect() };
    let images: Vec<Vec<Matrix>> = picks.iter().map(project).collect();
    let images_symplectic = images
        .iter()
        .all(|img| img.iter().zip(&comp_specs).all(|(m, s)| s.is_symplectic(m)));
    let distinct_sources: HashSet<&Matrix> = picks.iter().collect();
    let distinct_images: HashSet<&Vec<Matrix>> = images.iter().collect();
    let injective_on_samples = distinct_sources.len() == distinct_images.len();
    let homomorphism_on_samples = picks.windows(2).zip(images.windows(2)).all(|(x, img)| {
        let lhs = project(&(&x[0] * &x[1]));
        lhs.iter().enumerate().all(|(k, m)| *m == &img[0][k] * &img[1][k])
    });
    let reconstruction_ok = picks
        .iter()
        .zip(&images)
        .all(|(x, img)| reconstruct_matrix(alg, img) == *x);
    Ok(CrtReport {
        h,
        ring: alg.ring().to_string(),
        components: alg.components().iter().map(|c| c.to_string()).collect(),
        order,
        component_orders,
        formula_order,
        orders_match: order == product && order == formula_order,
        seed,
        samples,
        images_symplectic,
        injective_on_samples,
        homomorphism_on_samples,
        reconstruction_ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ptower::Modulus;

    #[test]
    fn linear_g_is_the_identity_map() {
        let alg = EtaleAlgebra::split(Modulus::new(5, 1).unwrap(), &[-2, 1]).unwrap();
        let r = crt_product_check(1, &alg, 50, 7, 1_000_000).unwrap();
        assert_eq!(r.order, 120);
        assert_eq!(r.component_orders, vec![120]);
        assert!(r.passed());
    }

    #[test]
    fn inert_case() {
        let alg = EtaleAlgebra::split(Modulus::new(3, 1).unwrap(), &[1, 0, 1]).unwrap();
        let r = crt_product_check(1, &alg, 100, 1, 1_000_000).unwrap();
        assert_eq!(r.order, 720);
        assert!(r.passed());
    }
}
