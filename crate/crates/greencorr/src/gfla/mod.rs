//! Dense exact linear algebra over prime fields.

mod matrix;
mod poly;
mod subspace;

pub use matrix::FpMatrix;
pub use poly::Poly;
pub use subspace::{Echelon, Subspace};

use std::fmt;

/// Largest supported modulus.
pub const MAX_P: u32 = 1 << 16;

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[inline]
pub fn add(a: u32, b: u32, p: u32) -> u32 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub fn sub(a: u32, b: u32, p: u32) -> u32 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

#[inline]
pub fn neg(a: u32, p: u32) -> u32 {
    if a == 0 {
        0
    } else {
        p - a
    }
}

#[inline]
pub fn mul(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

pub fn pow(mut a: u32, mut e: u64, p: u32) -> u32 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul(r, a, p);
        }
        a = mul(a, a, p);
        e >>= 1;
    }
    r
}

/// Multiplicative inverse; panics on zero.
pub fn inv(a: u32, p: u32) -> u32 {
    assert!(a % p != 0, "inverse of zero mod {p}");
    pow(a, (p - 2) as u64, p)
}

/// Reduces a signed integer into `[0, p)`.
pub fn reduce(v: i64, p: u32) -> u32 {
    v.rem_euclid(p as i64) as u32
}

/// `(-1)^n` as a residue.
pub fn sign(n: i64, p: u32) -> u32 {
    if n.rem_euclid(2) == 0 {
        1 % p
    } else {
        p - 1
    }
}

/// A residue together with its modulus.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct FpScalar {
    value: u32,
    p: u32,
}

impl FpScalar {
    pub fn new(v: i64, p: u32) -> Self {
        FpScalar { value: reduce(v, p), p }
    }
    pub fn value(self) -> u32 {
        self.value
    }
    pub fn modulus(self) -> u32 {
        self.p
    }
    pub fn is_zero(self) -> bool {
        self.value == 0
    }
    pub fn inverse(self) -> Option<Self> {
        if self.value == 0 {
            None
        } else {
            Some(FpScalar { value: inv(self.value, self.p), p: self.p })
        }
    }
}

impl std::ops::Add for FpScalar {
    type Output = FpScalar;
    fn add(self, o: FpScalar) -> FpScalar {
        debug_assert_eq!(self.p, o.p);
        FpScalar { value: add(self.value, o.value, self.p), p: self.p }
    }
}

impl std::ops::Sub for FpScalar {
    type Output = FpScalar;
    fn sub(self, o: FpScalar) -> FpScalar {
        debug_assert_eq!(self.p, o.p);
        FpScalar { value: sub(self.value, o.value, self.p), p: self.p }
    }
}

impl std::ops::Mul for FpScalar {
    type Output = FpScalar;
    fn mul(self, o: FpScalar) -> FpScalar {
        debug_assert_eq!(self.p, o.p);
        FpScalar { value: mul(self.value, o.value, self.p), p: self.p }
    }
}

impl std::ops::Neg for FpScalar {
    type Output = FpScalar;
    fn neg(self) -> FpScalar {
        FpScalar { value: neg(self.value, self.p), p: self.p }
    }
}

impl fmt::Debug for FpScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalar_field_axioms_mod_7() {
        for a in 1..7 {
            let x = FpScalar::new(a, 7);
            assert_eq!((x * x.inverse().unwrap()).value(), 1);
            assert_eq!((x + (-x)).value(), 0);
        }
        assert_eq!(FpScalar::new(-1, 5).value(), 4);
    }

    #[test]
    fn primality() {
        let primes: Vec<u32> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert!(is_prime(65521));
    }
}
