use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::forms::{check_adjoint, is_nondegenerate, ActionModule, Level};
use crate::matring::Matrix;
use crate::ptower::QuotientRing;
use crate::sympgrp::spec::standard_form;

/// A module of rank `4h` with anticommuting involutions `t, u`, a form, and
/// the involution images `t', u'`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeIIModel {
    pub t: Matrix,
    pub u: Matrix,
    pub form: Matrix,
    pub t_adj: Matrix,
    pub u_adj: Matrix,
}

impl TypeIIModel {
    /// `R^2 (x) R^2h` with `t = diag(1, -1) (x) I`, `u = [[0, 1], [1, 0]] (x) I`,
    /// the form `I_2 (x) J_h` and `t' = t`, `u' = u`.
    pub fn standard(ring: &Arc<QuotientRing>, h: usize) -> Self {
        let i2h = Matrix::identity(ring.clone(), 2 * h);
        let t = Matrix::from_ints(ring.clone(), &[vec![1, 0], vec![0, -1]])
            .expect("valid")
            .kron(&i2h);
        let u = Matrix::from_ints(ring.clone(), &[vec![0, 1], vec![1, 0]])
            .expect("valid")
            .kron(&i2h);
        let form = Matrix::identity(ring.clone(), 2).kron(&standard_form(ring, h));
        Self {
            t_adj: t.clone(),
            u_adj: u.clone(),
            t,
            u,
            form,
        }
    }
}

/// The splitting `T = X + Y` cut out by `e = (1 + t)/2`, with `W = X`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TypeIISplit {
    pub e: Matrix,
    pub f: Matrix,
    /// Columns span `X = eT`.
    pub x_basis: Matrix,
    /// Columns span `Y = (1 - e)T`.
    pub y_basis: Matrix,
    pub rank_x: usize,
    pub rank_y: usize,
    pub e_idempotent: bool,
    pub f_idempotent: bool,
    /// `u e u = 1 - e`.
    pub ueu_complement: bool,
    pub u_maps_x_onto_y: bool,
    /// Gram matrix of the form restricted to `W`.
    pub w_gram: Matrix,
    pub w_alternating: bool,
    pub w_nondegenerate: bool,
    pub w_nondegenerate_mod_l: bool,
    /// `psi(alpha v, w) = psi(v, alpha' w)` for `alpha` in `{t, u}`.
    pub adjoint_compatible: bool,
}

/// Columns at the unit pivots, a basis of the image of an idempotent.
fn image_basis(p: &Matrix) -> Matrix {
    p.select_columns(&p.pivot_columns())
}

pub fn type_ii_split(model: &TypeIIModel) -> Result<TypeIISplit> {
    let TypeIIModel {
        t,
        u,
        form,
        t_adj,
        u_adj,
    } = model;
    let ring = t.ring().clone();
    let n = t.rows();
    let two_inv = ring.inverse(&ring.from_u64(2)).ok_or(Error::EvenCharacteristic)?;
    for m in [u, form, t_adj, u_adj] {
        if m.ring() != &ring || m.rows() != n || m.cols() != n || !t.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "all matrices must be {n}x{n} over {ring}"
            )));
        }
    }
    if n % 2 != 0 {
        return Err(Error::DimensionMismatch(format!("module rank {n} is odd")));
    }
    let one = Matrix::identity(ring.clone(), n);
    if !(t * t).is_identity() || !(u * u).is_identity() {
        return Err(Error::BadAlgebra("t and u must be involutions".into()));
    }
    if (t * u) != -&(u * t) {
        return Err(Error::BadAlgebra("t and u must anticommute".into()));
    }
    let e = (&one + t).scale(&two_inv);
    let f = (&one + u).scale(&two_inv);
    let not_e = &one - &e;
    let x_basis = image_basis(&e);
    let y_basis = image_basis(&not_e);
    let ux = u * &x_basis;
    let u_maps_x_onto_y = &not_e * &ux == ux && ux.pivot_columns().len() == y_basis.cols();
    let w_gram = &(&x_basis.transpose() * form) * &x_basis;
    let module = ActionModule::new(
        ring.clone(),
        n,
        vec![t.clone(), u.clone()],
        vec![t_adj.clone(), u_adj.clone()],
    )?;
    Ok(TypeIISplit {
        e_idempotent: &e * &e == e,
        f_idempotent: &f * &f == f,
        ueu_complement: &(u * &e) * u == not_e,
        u_maps_x_onto_y,
        rank_x: x_basis.cols(),
        rank_y: y_basis.cols(),
        w_alternating: w_gram.is_alternating(),
        w_nondegenerate: is_nondegenerate(&w_gram, Level::Full),
        w_nondegenerate_mod_l: is_nondegenerate(&w_gram, Level::Residue),
        adjoint_compatible: check_adjoint(&module, form),
        e,
        f,
        x_basis,
        y_basis,
        w_gram,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ptower::Modulus;

    #[test]
    fn standard_model_h1() {
        let r = QuotientRing::integers(Modulus::new(5, 1).unwrap());
        let s = type_ii_split(&TypeIIModel::standard(&r, 1)).unwrap();
        assert_eq!((s.rank_x, s.rank_y), (2, 2));
        assert!(s.e_idempotent && s.f_idempotent && s.ueu_complement && s.u_maps_x_onto_y);
        assert!(s.w_alternating && s.w_nondegenerate && s.adjoint_compatible);
        let expected = Matrix::from_ints(
            r.clone(),
            &[vec![1, 0, 0, 0], vec![0, 1, 0, 0], vec![0, 0, 0, 0], vec![0, 0, 0, 0]],
        )
        .unwrap();
        assert_eq!(s.e, expected);
    }

    #[test]
    fn commuting_pair_is_rejected() {
        let r = QuotientRing::integers(Modulus::new(5, 1).unwrap());
        let mut m = TypeIIModel::standard(&r, 1);
        m.u = m.t.clone();
        assert!(matches!(type_ii_split(&m), Err(Error::BadAlgebra(_))));
    }

    #[test]
    fn wrong_involution_breaks_adjointness() {
        let r = QuotientRing::integers(Modulus::new(7, 1).unwrap());
        let mut m = TypeIIModel::standard(&r, 1);
        m.u_adj = -&m.u;
        assert!(!type_ii_split(&m).unwrap().adjoint_compatible);
    }
}
