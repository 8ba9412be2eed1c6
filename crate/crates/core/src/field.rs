//! Arithmetic in the prime field Z/pZ.
//!
//! All scalars are least non-negative residues stored as `u64`. The modulus
//! lives in a shared [`Fp`] context so that the prime stays configurable
//! (default 10000019) without tagging every element.

use crate::error::{CasError, Result};

/// Prime field context. Cheap to copy, shared by value everywhere.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fp {
    p: u64,
}

pub const DEFAULT_PRIME: u64 = 10_000_019;

impl Default for Fp {
    fn default() -> Self {
        Fp { p: DEFAULT_PRIME }
    }
}

impl Fp {
    pub fn new(p: u64) -> Result<Self> {
        if p < 2 || !is_prime_u64(p) {
            return Err(CasError::NotPrime(p));
        }
        Ok(Fp { p })
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn reduce_i64(&self, v: i64) -> u64 {
        let r = v.rem_euclid(self.p as i64);
        r as u64
    }

    #[inline]
    pub fn reduce_u64(&self, v: u64) -> u64 {
        v % self.p
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    /// a + b*c mod p
    #[inline]
    pub fn mul_add(&self, a: u64, b: u64, c: u64) -> u64 {
        ((a as u128 + b as u128 * c as u128) % self.p as u128) as u64
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse by extended Euclid.
    pub fn inv(&self, a: u64) -> Result<u64> {
        if a == 0 {
            return Err(CasError::DivisionByZero);
        }
        let (mut r0, mut r1) = (self.p as i128, (a % self.p) as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1, "modulus must be prime");
        Ok(t0.rem_euclid(self.p as i128) as u64)
    }

    /// Inverse via Fermat's little theorem; used to cross-check `inv`.
    pub fn inv_fermat(&self, a: u64) -> Result<u64> {
        if a == 0 {
            return Err(CasError::DivisionByZero);
        }
        Ok(self.pow(a, self.p - 2))
    }

    #[inline]
    pub fn div(&self, a: u64, b: u64) -> Result<u64> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Square root by Tonelli-Shanks (fast path for p = 3 mod 4).
    pub fn sqrt(&self, a: u64) -> Option<u64> {
        let a = a % self.p;
        if a == 0 {
            return Some(0);
        }
        if self.p == 2 {
            return Some(a);
        }
        if self.pow(a, (self.p - 1) / 2) != 1 {
            return None;
        }
        if self.p % 4 == 3 {
            let r = self.pow(a, (self.p + 1) / 4);
            return Some(r.min(self.p - r));
        }
        // Tonelli-Shanks
        let mut q = self.p - 1;
        let mut s = 0u32;
        while q.is_multiple_of(2) {
            q /= 2;
            s += 1;
        }
        let mut z = 2u64;
        while self.pow(z, (self.p - 1) / 2) != self.p - 1 {
            z += 1;
        }
        let mut m = s;
        let mut c = self.pow(z, q);
        let mut t = self.pow(a, q);
        let mut r = self.pow(a, q.div_ceil(2));
        while t != 1 {
            let mut i = 0u32;
            let mut tt = t;
            while tt != 1 {
                tt = self.mul(tt, tt);
                i += 1;
            }
            let b = self.pow(c, 1 << (m - i - 1));
            m = i;
            c = self.mul(b, b);
            t = self.mul(t, c);
            r = self.mul(r, b);
        }
        Some(r.min(self.p - r))
    }
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n.is_multiple_of(q) {
            return false;
        }
    }
    // deterministic Miller-Rabin for u64
    let mut d = n - 1;
    let mut s = 0u32;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut a: u64, mut e: u64| {
        let mut acc = 1u64;
        a %= n;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(acc, a);
            }
            a = mulmod(a, a);
            e >>= 1;
        }
        acc
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}
