//! Arithmetic in the prime field `F_p`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The prime field of characteristic `p`.
///
/// Elements are represented as `u32` values in `0..p`. For small primes an
/// inverse table is kept so that row reduction never pays for exponentiation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct PrimeField {
    p: u32,
    #[serde(skip)]
    inverses: Arc<[u32]>,
}

const INVERSE_TABLE_LIMIT: u32 = 1 << 16;

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let inverses = if p < INVERSE_TABLE_LIMIT {
            let mut inv = vec![0u32; p as usize];
            for a in 1..p {
                inv[a as usize] = pow_mod(a, p - 2, p);
            }
            inv.into()
        } else {
            Arc::from(Vec::new())
        };
        Ok(Self { p, inverses })
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let s = a as u64 + b as u64;
        (s % self.p as u64) as u32
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.p - b % self.p)
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    /// Multiplicative inverse. Panics on zero.
    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        assert!(!a.is_multiple_of(self.p), "inverse of zero in F_{}", self.p);
        if self.inverses.is_empty() {
            pow_mod(a, self.p - 2, self.p)
        } else {
            self.inverses[(a % self.p) as usize]
        }
    }

    /// Reduce a signed integer into `0..p`.
    #[inline]
    pub fn from_i64(&self, a: i64) -> u32 {
        a.rem_euclid(self.p as i64) as u32
    }

    /// `(-1)^k` as a field element.
    #[inline]
    pub fn sign(&self, odd: bool) -> u32 {
        if odd {
            self.neg(1)
        } else {
            1 % self.p
        }
    }

    /// Symmetric lift into `(-p/2, p/2]`, used for printing.
    pub fn lift(&self, a: u32) -> i64 {
        let a = a as i64;
        let p = self.p as i64;
        if a > p / 2 {
            a - p
        } else {
            a
        }
    }
}

impl TryFrom<u32> for PrimeField {
    type Error = Error;
    fn try_from(p: u32) -> Result<Self> {
        PrimeField::new(p)
    }
}

impl From<PrimeField> for u32 {
    fn from(f: PrimeField) -> u32 {
        f.p
    }
}

fn pow_mod(base: u32, mut exp: u32, p: u32) -> u32 {
    let m = p as u64;
    let mut acc = 1u64;
    let mut b = base as u64 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u32
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_composites() {
        assert!(PrimeField::new(4).is_err());
        assert!(PrimeField::new(1).is_err());
        assert!(PrimeField::new(0).is_err());
        assert!(PrimeField::new(7).is_ok());
    }

    #[test]
    fn inverses_are_inverses() {
        for p in [2, 3, 5, 7, 101, 65537] {
            let f = PrimeField::new(p).unwrap();
            for a in (1..p).step_by(((p / 50) as usize).max(1)) {
                assert_eq!(f.mul(a, f.inv(a)), 1, "p={p} a={a}");
            }
        }
    }

    #[test]
    fn signs_and_lifts() {
        let f = PrimeField::new(5).unwrap();
        assert_eq!(f.sign(true), 4);
        assert_eq!(f.lift(4), -1);
        assert_eq!(f.from_i64(-7), 3);
        let f2 = PrimeField::new(2).unwrap();
        assert_eq!(f2.sign(true), 1);
    }
}
