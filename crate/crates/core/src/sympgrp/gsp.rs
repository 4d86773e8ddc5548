use std::collections::HashSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matring::Matrix;
use crate::sympgrp::closure::closure;
use crate::sympgrp::spec::{unit_group_generators, SymplecticGroupSpec};

/// Orders and indices around `GSp_2h(R) = <Sp_2h(R), diag(a I_h, I_h)>`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GspDecomposition {
    pub h: usize,
    pub ring: String,
    /// Enumerated order of the group generated by `Sp` and the diagonals.
    pub gsp_order: u64,
    /// `|Sp| |R^x|` from the order formula.
    pub predicted_gsp_order: u64,
    pub generated_by_sp_and_diagonals: bool,
    pub sp_order: u64,
    /// Enumerated order of `R^x Sp`.
    pub scalar_sp_order: u64,
    /// `[GSp : R^x Sp]` by enumeration.
    pub index: u64,
    pub unit_count: u64,
    pub square_count: u64,
    /// `|R^x| / |(R^x)^2|`, the index read off the similitude character.
    pub index_by_squares: u64,
}

pub fn gsp_decomposition_check(spec: &SymplecticGroupSpec, cap: usize) -> Result<GspDecomposition> {
    let ring = spec.ring();
    let enumerate = |gens: &[Matrix]| -> Result<u64> {
        let c = closure(spec, gens, cap)?;
        if c.cap_exceeded() {
            return Err(Error::CapExceeded(cap));
        }
        Ok(c.order() as u64)
    };
    let sp_gens = spec.standard_generators();
    let sp_order = enumerate(&sp_gens)?;
    let gsp_order = enumerate(&spec.similitude_generators())?;
    let mut scalar_gens = sp_gens;
    scalar_gens.extend(
        unit_group_generators(ring)
            .iter()
            .map(|a| Matrix::scalar(ring.clone(), spec.size(), a)),
    );
    let scalar_sp_order = enumerate(&scalar_gens)?;
    let unit_count = ring.unit_count() as u64;
    let squares: HashSet<_> = ring.units().map(|u| ring.mul(&u, &u)).collect();
    let square_count = squares.len() as u64;
    let predicted_gsp_order = spec.similitude_group_order()? as u64;
    Ok(GspDecomposition {
        h: spec.h(),
        ring: ring.to_string(),
        gsp_order,
        predicted_gsp_order,
        generated_by_sp_and_diagonals: gsp_order == predicted_gsp_order && sp_order as u128 == spec.group_order()?,
        sp_order,
        scalar_sp_order,
        index: gsp_order / scalar_sp_order,
        unit_count,
        square_count,
        index_by_squares: unit_count / square_count,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ptower::{Modulus, QuotientRing};

    #[test]
    fn index_two_over_f3() {
        let r = QuotientRing::integers(Modulus::new(3, 1).unwrap());
        let d = gsp_decomposition_check(&SymplecticGroupSpec::new(r, 1).unwrap(), 1_000_000).unwrap();
        assert_eq!(d.gsp_order, 48);
        assert_eq!(d.scalar_sp_order, 24);
        assert_eq!(d.index, 2);
        assert_eq!(d.index_by_squares, 2);
        assert!(d.generated_by_sp_and_diagonals);
    }
}
