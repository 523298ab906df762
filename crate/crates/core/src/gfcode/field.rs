//! Arithmetic in a prime field `F_q`.

use serde::{Deserialize, Serialize};

use super::CodeError;

/// A validated prime modulus. Elements are plain `u64` values in `[0, q)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimeField {
    q: u64,
}

/// A field element tagged with its modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Gf {
    pub q: u64,
    pub value: u64,
}

impl Gf {
    pub fn new(field: &PrimeField, value: i64) -> Self {
        Self { q: field.q, value: field.from_i64(value) }
    }
}

impl PrimeField {
    /// Checks primality by trial division. Moduli above `u32::MAX` are
    /// rejected so products stay inside `u64`.
    pub fn new(q: u64) -> Result<Self, CodeError> {
        if q > u32::MAX as u64 || !is_prime(q) {
            return Err(CodeError::NotPrime(q));
        }
        Ok(Self { q })
    }

    pub fn order(&self) -> u64 {
        self.q
    }

    pub fn reduce(&self, x: u64) -> u64 {
        x % self.q
    }

    pub fn from_i64(&self, x: i64) -> u64 {
        x.rem_euclid(self.q as i64) as u64
    }

    pub fn elem(&self, x: i64) -> Gf {
        Gf::new(self, x)
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.q
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.q - b) % self.q
    }

    pub fn neg(&self, a: u64) -> u64 {
        (self.q - a) % self.q
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        (a * b) % self.q
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.q;
        base %= self.q;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Inverse by the extended Euclidean algorithm. Panics on zero.
    pub fn inv(&self, a: u64) -> u64 {
        let (mut r0, mut r1) = (self.q as i64, (a % self.q) as i64);
        assert!(r1 != 0, "zero has no inverse in F_{}", self.q);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let quot = r0 / r1;
            (r0, r1) = (r1, r0 - quot * r1);
            (t0, t1) = (t1, t0 - quot * t1);
        }
        debug_assert_eq!(r0, 1);
        self.from_i64(t0)
    }

    /// `a^e` for a possibly negative exponent; `a` must be nonzero if `e < 0`.
    pub fn pow_signed(&self, a: u64, e: i64) -> u64 {
        if e >= 0 {
            self.pow(a, e as u64)
        } else {
            self.pow(self.inv(a), e.unsigned_abs())
        }
    }

    /// `prod_i t_i^{m_i}` over a torus point.
    pub fn monomial(&self, point: &[u64], exponent: &[i64]) -> u64 {
        point
            .iter()
            .zip(exponent)
            .fold(1 % self.q, |acc, (&t, &e)| self.mul(acc, self.pow_signed(t, e)))
    }
}

pub fn is_prime(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= q {
        if q % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}
