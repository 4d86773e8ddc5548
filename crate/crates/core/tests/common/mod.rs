#![allow(dead_code)]

use std::sync::Arc;

use rand::Rng;
use weilkit::forms::ActionModule;
use weilkit::random::random_elem;
use weilkit::{Elem, EtaleAlgebra, Matrix, QuotientRing};

pub fn vectors(ring: &QuotientRing, len: usize) -> Vec<Vec<Elem>> {
    let elems: Vec<Elem> = ring.elements().collect();
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|v| {
                elems.iter().map(move |e| {
                    let mut w = v.clone();
                    w.push(e.clone());
                    w
                })
            })
            .collect();
    }
    out
}

/// Brute force: some nonzero `v` with `v^T G = 0`.
pub fn has_radical(gram: &Matrix) -> bool {
    let r = gram.ring();
    vectors(r, gram.rows()).into_iter().any(|v| {
        v.iter().any(|c| !r.is_zero(c))
            && (0..gram.cols()).all(|j| {
                let s = (0..gram.rows()).fold(r.zero(), |acc, i| r.add(&acc, &r.mul(&v[i], &gram.get(i, j))));
                r.is_zero(&s)
            })
    })
}

/// `psi` on the free module `A^k` from an algebra-valued matrix `D`:
/// `psi(x^i u_s, x^j u_t) = Tr(x^(i+j) D_st)`, with coordinate `s e + i`.
pub fn form_from_algebra_matrix(alg: &EtaleAlgebra, d: &Matrix) -> Matrix {
    let (a, base) = (alg.ring(), alg.base());
    let e = alg.degree();
    let k = d.rows();
    Matrix::from_fn(base.clone(), k * e, k * e, |p, q| {
        let (s, i, t, j) = (p / e, p % e, q / e, q % e);
        let xij = a.pow(&a.gen(), (i + j) as u128);
        base.from_u64(alg.trace(&a.mul(&xij, &d.get(s, t))))
    })
}

/// The algebra-valued lift matching [`form_from_algebra_matrix`].
pub fn phi_from_algebra_matrix(alg: &EtaleAlgebra, d: &Matrix) -> Matrix {
    let a = alg.ring();
    let e = alg.degree();
    let k = d.rows();
    Matrix::from_fn(a.clone(), k * e, k * e, |p, q| {
        let (s, i, t, j) = (p / e, p % e, q / e, q % e);
        a.mul(&a.pow(&a.gen(), (i + j) as u128), &d.get(s, t))
    })
}

pub fn random_algebra_matrix(alg: &EtaleAlgebra, k: usize, alternating: bool, rng: &mut impl Rng) -> Matrix {
    let a = alg.ring();
    let mut d = Matrix::zeros(a.clone(), k, k);
    for s in 0..k {
        for t in 0..k {
            if alternating {
                if s < t {
                    let c = random_elem(a, rng);
                    d.set(t, s, &a.neg(&c));
                    d.set(s, t, &c);
                }
            } else {
                d.set(s, t, &random_elem(a, rng));
            }
        }
    }
    d
}

pub fn free_module(alg: &EtaleAlgebra, k: usize) -> ActionModule {
    ActionModule::free_etale(alg, k)
}

pub fn ring_of(m: &Matrix) -> Arc<QuotientRing> {
    m.ring().clone()
}
