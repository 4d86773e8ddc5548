use std::sync::Arc;

use indexmap::IndexSet;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::matring::Matrix;
use crate::ptower::QuotientRing;
use crate::sympgrp::spec::SymplecticGroupSpec;

pub const DEFAULT_CAP: usize = 1_000_000;

/// A finitely generated matrix group with its enumerated elements, sorted
/// by their coefficient data.
#[derive(Clone, Debug)]
pub struct SubgroupClosure {
    ring: Arc<QuotientRing>,
    size: usize,
    generators: Vec<Matrix>,
    elements: IndexSet<Vec<u64>>,
    cap_exceeded: bool,
}

impl SubgroupClosure {
    /// Breadth-first closure of `generators` under right multiplication.
    /// Each frontier is expanded in parallel and merged in order, so the
    /// result does not depend on scheduling.
    pub fn generate(ring: Arc<QuotientRing>, size: usize, generators: &[Matrix], cap: usize) -> Result<Self> {
        for g in generators {
            if g.ring() != &ring {
                return Err(Error::RingMismatch(g.ring().to_string(), ring.to_string()));
            }
            if g.rows() != size || g.cols() != size {
                return Err(Error::DimensionMismatch(format!("generator is not {size}x{size}")));
            }
        }
        let mut elements = IndexSet::new();
        elements.insert(Matrix::identity(ring.clone(), size).into_data());
        let mut start = 0;
        let mut cap_exceeded = false;
        'bfs: while start < elements.len() {
            let end = elements.len();
            let products: Vec<Vec<u64>> = (start..end)
                .into_par_iter()
                .flat_map_iter(|i| {
                    let x = Matrix::from_data(ring.clone(), size, size, elements[i].clone());
                    generators.iter().map(move |g| (&x * g).into_data())
                })
                .collect();
            for p in products {
                elements.insert(p);
                if elements.len() > cap {
                    cap_exceeded = true;
                    break 'bfs;
                }
            }
            start = end;
        }
        elements.sort();
        Ok(Self {
            ring,
            size,
            generators: generators.to_vec(),
            elements,
            cap_exceeded,
        })
    }

    pub fn ring(&self) -> &Arc<QuotientRing> {
        &self.ring
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn generators(&self) -> &[Matrix] {
        &self.generators
    }

    /// Number of enumerated elements; the group order unless the cap was hit.
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn cap_exceeded(&self) -> bool {
        self.cap_exceeded
    }

    pub fn contains(&self, x: &Matrix) -> bool {
        x.ring() == &self.ring && x.rows() == self.size && x.cols() == self.size && self.elements.contains(x.data())
    }

    pub fn element(&self, i: usize) -> Matrix {
        Matrix::from_data(self.ring.clone(), self.size, self.size, self.elements[i].clone())
    }

    pub fn elements(&self) -> impl ExactSizeIterator<Item = Matrix> + '_ {
        (0..self.order()).map(|i| self.element(i))
    }

    /// Every product of two elements is an element.
    pub fn is_closed(&self) -> bool {
        (0..self.order()).into_par_iter().all(|i| {
            let a = self.element(i);
            (0..self.order()).all(|j| self.contains(&(&a * &self.element(j))))
        })
    }

    /// The set of reductions to the ring at another precision.
    pub fn reduce_to(&self, target: &Arc<QuotientRing>) -> IndexSet<Vec<u64>> {
        let mut out: IndexSet<Vec<u64>> = self.elements().map(|x| x.reduce_to(target).into_data()).collect();
        out.sort();
        out
    }

    pub fn data(&self) -> &IndexSet<Vec<u64>> {
        &self.elements
    }
}

/// Closure of similitude generators for `spec`.
pub fn closure(spec: &SymplecticGroupSpec, generators: &[Matrix], cap: usize) -> Result<SubgroupClosure> {
    for (i, g) in generators.iter().enumerate() {
        if !spec.is_similitude(g) {
            return Err(Error::NotInGroup(format!(
                "generator {i} is not a symplectic similitude"
            )));
        }
    }
    SubgroupClosure::generate(spec.ring().clone(), spec.size(), generators, cap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ptower::Modulus;

    fn spec(l: u64, h: usize) -> SymplecticGroupSpec {
        SymplecticGroupSpec::new(QuotientRing::integers(Modulus::new(l, 1).unwrap()), h).unwrap()
    }

    #[test]
    fn trivial_group() {
        let s = spec(5, 1);
        let c = closure(&s, &[Matrix::identity(s.ring().clone(), 2)], DEFAULT_CAP).unwrap();
        assert_eq!(c.order(), 1);
    }

    #[test]
    fn sp2_f5_order() {
        let s = spec(5, 1);
        let c = closure(&s, &s.standard_generators(), DEFAULT_CAP).unwrap();
        assert_eq!(c.order() as u128, s.group_order().unwrap());
        assert!(!c.cap_exceeded());
        assert!(c.is_closed());
    }

    #[test]
    fn single_transvection_is_cyclic_of_order_l() {
        let s = spec(7, 1);
        let c = closure(&s, &s.standard_generators()[..1], DEFAULT_CAP).unwrap();
        assert_eq!(c.order(), 7);
    }

    #[test]
    fn cap_is_reported() {
        let s = spec(5, 1);
        let c = closure(&s, &s.standard_generators(), 50).unwrap();
        assert!(c.cap_exceeded());
    }

    #[test]
    fn non_members_are_rejected() {
        let s = spec(5, 1);
        let x = Matrix::from_ints(s.ring().clone(), &[vec![1, 1], vec![1, 1]]).unwrap();
        assert!(matches!(closure(&s, &[x], 10), Err(Error::NotInGroup(_))));
    }

    #[test]
    fn ordering_is_canonical() {
        let s = spec(5, 1);
        let mut gens = s.standard_generators();
        let a = closure(&s, &gens, DEFAULT_CAP).unwrap();
        gens.reverse();
        let b = closure(&s, &gens, DEFAULT_CAP).unwrap();
        assert!(a.elements().eq(b.elements()));
    }
}
