use std::fmt;

use crate::error::{Error, Result};

/// Largest admissible `l^N`; keeps every coefficient product and the
/// accumulated dot products of matrix multiplication inside `u64`.
pub const MAX_MODULUS: u64 = 1 << 24;

/// The coefficient ring `Z/l^N` for an odd prime `l`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Modulus {
    l: u64,
    precision: u32,
    q: u64,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Modulus {
    pub fn new(l: u64, precision: u32) -> Result<Self> {
        if l == 2 {
            return Err(Error::BadModulus("l = 2 is not supported".into()));
        }
        if !is_prime(l) {
            return Err(Error::BadModulus(format!("l = {l} is not prime")));
        }
        if precision == 0 {
            return Err(Error::BadModulus("precision must be at least 1".into()));
        }
        let q = l
            .checked_pow(precision)
            .filter(|q| *q <= MAX_MODULUS)
            .ok_or_else(|| Error::BadModulus(format!("{l}^{precision} exceeds {MAX_MODULUS}")))?;
        Ok(Self { l, precision, q })
    }

    #[inline]
    pub fn l(&self) -> u64 {
        self.l
    }

    #[inline]
    pub fn precision(&self) -> u32 {
        self.precision
    }

    /// `l^N`.
    #[inline]
    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn residue(&self) -> Modulus {
        self.at_precision(1)
    }

    pub fn at_precision(&self, precision: u32) -> Modulus {
        assert!(precision >= 1);
        Modulus {
            l: self.l,
            precision,
            q: self.l.pow(precision),
        }
    }

    #[inline]
    pub fn reduce(&self, v: u64) -> u64 {
        v % self.q
    }

    #[inline]
    pub fn reduce_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.q as i64) as u64
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.q {
            s - self.q
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.q - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.q - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.q
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1 % self.q;
        a %= self.q;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    #[inline]
    pub fn is_unit(&self, a: u64) -> bool {
        !a.is_multiple_of(self.l)
    }

    /// Inverse of a unit, `None` for elements of `lZ/l^N`.
    pub fn inv(&self, a: u64) -> Option<u64> {
        if !self.is_unit(a) {
            return None;
        }
        let (mut r0, mut r1) = (self.q as i64, (a % self.q) as i64);
        let (mut s0, mut s1) = (0i64, 1i64);
        while r1 != 0 {
            let t = r0 / r1;
            (r0, r1) = (r1, r0 - t * r1);
            (s0, s1) = (s1, s0 - t * s1);
        }
        debug_assert_eq!(r0, 1);
        Some(self.reduce_i64(s0))
    }

    /// `l`-adic valuation, capped at the precision for zero.
    pub fn valuation(&self, a: u64) -> u32 {
        let mut a = a % self.q;
        if a == 0 {
            return self.precision;
        }
        let mut v = 0;
        while a.is_multiple_of(self.l) {
            a /= self.l;
            v += 1;
        }
        v
    }

    /// Symmetric representative in `(-q/2, q/2]`.
    pub fn signed(&self, a: u64) -> i64 {
        let a = a % self.q;
        if a > self.q / 2 {
            a as i64 - self.q as i64
        } else {
            a as i64
        }
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}", self.l, self.precision)
    }
}
