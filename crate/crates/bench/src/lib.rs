//! Fixtures shared by the benchmarks.

use weilkit::ptower::poly;
use weilkit::{GaloisRing, Modulus};

/// `GR(l^precision, f)` with `f` the first monic irreducible of degree `n`
/// modulo `l`.
pub fn galois_ring(l: u64, n: usize, precision: u32) -> GaloisRing {
    let residue = Modulus::new(l, 1).expect("odd prime");
    let f: Vec<i64> = poly::first_irreducible(&residue, n)
        .into_iter()
        .map(|c| c as i64)
        .collect();
    GaloisRing::new(Modulus::new(l, precision).expect("small modulus"), &f).expect("irreducible")
}
