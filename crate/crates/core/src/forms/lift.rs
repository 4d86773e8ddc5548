use std::sync::Arc;

use crate::error::{Error, Result};
use crate::forms::module::{check_balanced, ActionModule};
use crate::forms::nondeg::{is_nondegenerate, Level};
use crate::matring::Matrix;
use crate::ptower::{Elem, EtaleAlgebra, QuotientRing};

fn algebra_of(module: &ActionModule) -> Result<&EtaleAlgebra> {
    module
        .algebra()
        .ok_or_else(|| Error::BadAlgebra("module has no etale action".into()))
}

/// The unique algebra-valued form `phi` with `Tr(phi) = psi` that is
/// bilinear over the algebra, as a Gram matrix over the algebra ring in the
/// module's coordinates.
///
/// Computed as `phi(v, w) = sum_j beta_j psi(x^j v, w)` with `beta_j` the
/// trace-dual of the power basis, then re-derived by solving the linear
/// conditions directly; any disagreement or non-uniqueness is an error.
pub fn lift_trace_form(module: &ActionModule, psi: &Matrix) -> Result<Matrix> {
    let alg = algebra_of(module)?;
    if !check_balanced(module, psi) {
        return Err(Error::NotBalanced);
    }
    let a = alg.ring().clone();
    let m = module.rank();
    let x = &module.generators()[0];
    let duals = alg.dual_power_basis()?;
    let mut phi = Matrix::zeros(a.clone(), m, m);
    let mut xj_t_psi = psi.clone();
    for beta in &duals {
        for i in 0..m {
            for k in 0..m {
                let term = a.scale(beta, xj_t_psi.entry(i, k)[0]);
                phi.set(i, k, &a.add(&phi.get(i, k), &term));
            }
        }
        xj_t_psi = &x.transpose() * &xj_t_psi;
    }
    let solved = solve_lift(alg, x, psi)?;
    if solved != phi {
        return Err(Error::LiftMismatch);
    }
    Ok(phi)
}

/// Solves `Tr(phi_ab) = psi_ab`, `phi(Xv, w) = x phi(v, w)` and
/// `phi(v, Xw) = x phi(v, w)` for the `m^2 e` coefficients of `phi`,
/// requiring a unique solution.
fn solve_lift(alg: &EtaleAlgebra, x: &Matrix, psi: &Matrix) -> Result<Matrix> {
    let base = alg.base();
    let a = alg.ring();
    let m = x.rows();
    let e = alg.degree();
    let mx = a.mult_matrix(&a.gen());
    let traces: Vec<u64> = (0..e).map(|i| alg.trace(&a.pow(&a.gen(), i as u128))).collect();
    let var = |p: usize, q: usize, i: usize| (p * m + q) * e + i;
    let unknowns = m * m * e;
    let rows = m * m * (1 + 2 * e);
    let mut sys = vec![vec![0u64; unknowns]; rows];
    let mut rhs = vec![0u64; rows];
    let md = base.modulus();
    let mut row = 0;
    for p in 0..m {
        for q in 0..m {
            for i in 0..e {
                sys[row][var(p, q, i)] = traces[i];
            }
            rhs[row] = psi.entry(p, q)[0];
            row += 1;
            for left in [true, false] {
                for i in 0..e {
                    for c in 0..m {
                        let (coef, v) = if left {
                            (x.entry(c, p)[0], var(c, q, i))
                        } else {
                            (x.entry(c, q)[0], var(p, c, i))
                        };
                        sys[row][v] = md.add(sys[row][v], coef);
                    }
                    for j in 0..e {
                        let v = var(p, q, j);
                        sys[row][v] = md.sub(sys[row][v], mx[i][j]);
                    }
                    row += 1;
                }
            }
        }
    }
    let sys = Matrix::from_fn(base.clone(), rows, unknowns, |i, j| base.from_u64(sys[i][j]));
    if sys.pivot_columns().len() != unknowns {
        return Err(Error::LiftMismatch);
    }
    let rhs = Matrix::from_fn(base.clone(), rows, 1, |i, _| base.from_u64(rhs[i]));
    let sol = sys.solve(&rhs).map_err(|_| Error::LiftMismatch)?;
    Ok(Matrix::from_fn(a.clone(), m, m, |p, q| {
        Elem((0..e).map(|i| sol.entry(var(p, q, i), 0)[0]).collect())
    }))
}

/// Evaluates `phi(v, w) = v^T phi w` for base-ring vectors.
pub fn evaluate_phi(alg: &EtaleAlgebra, phi: &Matrix, v: &[Elem], w: &[Elem]) -> Elem {
    let a = alg.ring();
    let lift = |u: &[Elem]| -> Vec<Elem> { u.iter().map(|c| a.from_u64(c.coeffs()[0])).collect() };
    let (v, w) = (lift(v), lift(w));
    let mut acc = a.zero();
    for (i, vi) in v.iter().enumerate() {
        for (j, wj) in w.iter().enumerate() {
            acc = a.add(&acc, &a.mul(&a.mul(vi, &phi.get(i, j)), wj));
        }
    }
    acc
}

/// The balanced form on `A^k` with `psi(x^i u_s, x^j u_t) = Tr(x^(i+j) D_st)`,
/// in the coordinates of [`ActionModule::free_etale`].
pub fn trace_form(alg: &EtaleAlgebra, d: &Matrix) -> Matrix {
    let (a, base) = (alg.ring(), alg.base());
    let e = alg.degree();
    let k = d.rows();
    Matrix::from_fn(base.clone(), k * e, k * e, |p, q| {
        let xij = a.pow(&a.gen(), ((p % e) + (q % e)) as u128);
        base.from_u64(alg.trace(&a.mul(&xij, &d.get(p / e, q / e))))
    })
}

/// The algebra-valued form `x^(i+j) D_st` whose trace is [`trace_form`].
pub fn algebra_form(alg: &EtaleAlgebra, d: &Matrix) -> Matrix {
    let a = alg.ring();
    let e = alg.degree();
    let k = d.rows();
    Matrix::from_fn(a.clone(), k * e, k * e, |p, q| {
        a.mul(&a.pow(&a.gen(), ((p % e) + (q % e)) as u128), &d.get(p / e, q / e))
    })
}

/// The restriction of the form to `T_lambda = e_lambda T`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormComponent {
    /// Columns `v_1, ..., v_k` form a basis of `T_lambda` over the component
    /// ring, acting through `x`.
    pub basis: Matrix,
    /// `psi_lambda(v_s, v_t) = pi_lambda(phi(v_s, v_t))` over the component.
    pub gram: Matrix,
}

impl FormComponent {
    pub fn rank(&self) -> usize {
        self.basis.cols()
    }

    pub fn ring(&self) -> &Arc<QuotientRing> {
        self.gram.ring()
    }

    /// Coordinates over the component ring of a vector lying in `T_lambda`.
    pub fn coordinates(&self, module: &ActionModule, lambda: usize, v: &[Elem]) -> Result<Vec<Elem>> {
        let alg = algebra_of(module)?;
        let comp = alg.component(lambda).ring().clone();
        let n = comp.degree();
        let spanning = power_block(module, &self.basis, n);
        let rhs = Matrix::column_vector(module.ring().clone(), v);
        let c = spanning
            .solve(&rhs)
            .map_err(|_| Error::NotInImage("vector is outside T_lambda".into()))?;
        Ok((0..self.rank())
            .map(|s| Elem((0..n).map(|a| c.entry(s * n + a, 0)[0]).collect()))
            .collect())
    }
}

/// Columns `X^a v_s` ordered by `s`, then `a < n`.
fn power_block(module: &ActionModule, basis: &Matrix, n: usize) -> Matrix {
    let x = &module.generators()[0];
    let mut cols = Vec::with_capacity(basis.cols() * n);
    for s in 0..basis.cols() {
        let mut v = basis.select_columns(&[s]);
        for _ in 0..n {
            cols.push(v.clone());
            v = x * &v;
        }
    }
    cols.iter().skip(1).fold(cols[0].clone(), |acc, c| acc.hstack(c))
}

/// One Gram matrix per component `lambda` on `e_lambda T` over the
/// component Galois ring.
///
/// The component basis is chosen greedily among the columns of the matrix
/// of `e_lambda`, keeping a column when its `x`-orbit stays independent
/// modulo `l`. The choice only depends on residues, so splitting commutes
/// with reduction modulo `l`.
pub fn split_form(module: &ActionModule, phi: &Matrix) -> Result<Vec<FormComponent>> {
    let alg = algebra_of(module)?;
    let r = module.ring();
    let mut out = Vec::with_capacity(alg.num_components());
    for (lambda, e) in alg.idempotents().iter().enumerate() {
        let comp = alg.component(lambda);
        let n = comp.degree();
        let el = module.algebra_action(e)?;
        let target = el.reduce_to(&r.residue_ring()).rank()?;
        let mut chosen: Vec<usize> = Vec::new();
        let mut span: Option<Matrix> = None;
        for c in 0..el.cols() {
            if chosen.len() * n == target {
                break;
            }
            let block = power_block(module, &el.select_columns(&[c]), n);
            let trial = span.as_ref().map_or(block.clone(), |s| s.hstack(&block));
            if trial.pivot_columns().len() == trial.cols() {
                chosen.push(c);
                span = Some(trial);
            }
        }
        if chosen.len() * n != target {
            return Err(Error::NotFree(format!("component {lambda} is not free over its ring")));
        }
        let basis = el.select_columns(&chosen);
        let cols: Vec<Vec<Elem>> = (0..basis.cols()).map(|s| basis.column(s)).collect();
        let gram = Matrix::from_fn(comp.ring().clone(), cols.len(), cols.len(), |s, t| {
            alg.project(lambda, &evaluate_phi(alg, phi, &cols[s], &cols[t]))
        });
        out.push(FormComponent { basis, gram });
    }
    Ok(out)
}

/// A base form, its trace lift and its components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormBundle {
    pub psi: Matrix,
    pub phi: Matrix,
    pub components: Vec<FormComponent>,
    pub alternating: bool,
    /// Nondegenerate modulo `l`.
    pub nondegenerate: bool,
}

impl FormBundle {
    pub fn new(module: &ActionModule, psi: &Matrix) -> Result<Self> {
        let phi = lift_trace_form(module, psi)?;
        let components = split_form(module, &phi)?;
        Ok(Self {
            psi: psi.clone(),
            alternating: psi.is_alternating(),
            nondegenerate: is_nondegenerate(psi, Level::Residue),
            phi,
            components,
        })
    }

    /// Every component nondegenerate modulo `l`.
    pub fn components_nondegenerate(&self) -> bool {
        self.components
            .iter()
            .all(|c| is_nondegenerate(&c.gram, Level::Residue))
    }

    pub fn components_alternating(&self) -> bool {
        self.components.iter().all(|c| c.gram.is_alternating())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ptower::Modulus;

    fn trace_gram(alg: &EtaleAlgebra) -> Matrix {
        let r = alg.ring();
        let e = alg.degree();
        Matrix::from_fn(alg.base().clone(), e, e, |i, j| {
            alg.base().from_u64(alg.trace(&r.pow(&r.gen(), (i + j) as u128)))
        })
    }

    #[test]
    fn rank_one_lift_is_the_product() {
        for g in [[-1i64, 0, 1], [2, 0, 1]] {
            let alg = EtaleAlgebra::split(Modulus::new(5, 2).unwrap(), &g).unwrap();
            let module = ActionModule::free_etale(&alg, 1);
            let phi = lift_trace_form(&module, &trace_gram(&alg)).unwrap();
            let r = alg.ring();
            for i in 0..2 {
                for j in 0..2 {
                    assert_eq!(phi.get(i, j), r.pow(&r.gen(), (i + j) as u128));
                }
            }
        }
    }

    #[test]
    fn zero_form_lifts_to_zero() {
        let alg = EtaleAlgebra::split(Modulus::new(5, 1).unwrap(), &[-1, 0, 1]).unwrap();
        let module = ActionModule::free_etale(&alg, 2);
        let phi = lift_trace_form(&module, &Matrix::zeros(alg.base().clone(), 4, 4)).unwrap();
        assert!(phi.is_zero());
    }

    #[test]
    fn unbalanced_form_is_rejected() {
        let alg = EtaleAlgebra::split(Modulus::new(5, 1).unwrap(), &[-1, 0, 1]).unwrap();
        let module = ActionModule::free_etale(&alg, 1);
        let g = Matrix::from_ints(alg.base().clone(), &[vec![1, 2], vec![0, 1]]).unwrap();
        assert_eq!(lift_trace_form(&module, &g), Err(Error::NotBalanced));
    }

    #[test]
    fn split_components_of_the_product_form() {
        let alg = EtaleAlgebra::split(Modulus::new(5, 1).unwrap(), &[-1, 0, 1]).unwrap();
        let module = ActionModule::free_etale(&alg, 1);
        let bundle = FormBundle::new(&module, &trace_gram(&alg)).unwrap();
        assert_eq!(bundle.components.len(), 2);
        for c in &bundle.components {
            assert_eq!(c.rank(), 1);
            // basis vector is e_lambda itself, whose square projects to 1
            assert!(c.ring().is_one(&c.gram.get(0, 0)));
        }
        assert!(bundle.nondegenerate && bundle.components_nondegenerate());
    }

    #[test]
    fn inert_component_equals_phi() {
        let alg = EtaleAlgebra::split(Modulus::new(3, 1).unwrap(), &[1, 0, 1]).unwrap();
        let module = ActionModule::free_etale(&alg, 1);
        let bundle = FormBundle::new(&module, &trace_gram(&alg)).unwrap();
        assert_eq!(bundle.components.len(), 1);
        let c = &bundle.components[0];
        assert_eq!(c.gram.get(0, 0), alg.project(0, &bundle.phi.get(0, 0)));
    }
}
