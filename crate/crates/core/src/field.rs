//! Arithmetic in prime fields GF(p).

use std::fmt;

use crate::error::{Error, Result};

/// The prime field GF(p). Coefficients of polynomials are stored as bare
/// `u32` residues and interpreted through this handle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidRing(format!("characteristic {p} is not prime")));
        }
        Ok(Self { p })
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn reduce(&self, v: u64) -> u32 {
        (v % self.p as u64) as u32
    }

    /// Reduces a signed integer literal into `[0, p)`.
    pub fn from_i64(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let s = a as u64 + b as u64;
        if s >= self.p as u64 {
            (s - self.p as u64) as u32
        } else {
            s as u32
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            (a as u64 + self.p as u64 - b as u64) as u32
        }
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

    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut base = a % self.p;
        let mut acc = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse by Fermat's little theorem. Panics on zero.
    pub fn inv(&self, a: u32) -> u32 {
        assert!(!a.is_multiple_of(self.p), "inverse of zero in GF({})", self.p);
        self.pow(a, self.p as u64 - 2)
    }

    pub fn element(&self, v: u32) -> FieldElement {
        FieldElement { value: v % self.p, p: self.p }
    }
}

/// A standalone element of GF(p), carrying its characteristic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldElement {
    value: u32,
    p: u32,
}

impl FieldElement {
    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn field(&self) -> PrimeField {
        PrimeField { p: self.p }
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.p, other.p, "mixing elements of GF({}) and GF({})", self.p, other.p);
    }

    pub fn pow(&self, e: u64) -> Self {
        Self { value: self.field().pow(self.value, e), p: self.p }
    }

    pub fn inv(&self) -> Option<Self> {
        (self.value != 0).then(|| Self { value: self.field().inv(self.value), p: self.p })
    }
}

impl std::ops::Add for FieldElement {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.check(&rhs);
        Self { value: self.field().add(self.value, rhs.value), p: self.p }
    }
}

impl std::ops::Sub for FieldElement {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.check(&rhs);
        Self { value: self.field().sub(self.value, rhs.value), p: self.p }
    }
}

impl std::ops::Mul for FieldElement {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.check(&rhs);
        Self { value: self.field().mul(self.value, rhs.value), p: self.p }
    }
}

impl std::ops::Neg for FieldElement {
    type Output = Self;
    fn neg(self) -> Self {
        Self { value: self.field().neg(self.value), p: self.p }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let n = n as u64;
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_composite_characteristic() {
        assert!(PrimeField::new(4).is_err());
        assert!(PrimeField::new(1).is_err());
        assert!(PrimeField::new(0).is_err());
        assert!(PrimeField::new(11).is_ok());
    }

    #[test]
    fn arithmetic_mod_eleven() {
        let k = PrimeField::new(11).unwrap();
        assert_eq!(k.add(7, 9), 5);
        assert_eq!(k.sub(3, 9), 5);
        assert_eq!(k.neg(1), 10);
        assert_eq!(k.mul(6, 6), 3);
        assert_eq!(k.mul(k.inv(7), 7), 1);
        assert_eq!(k.from_i64(-1), 10);
    }

    #[test]
    fn fermat_identity() {
        for p in [2u32, 3, 5, 7, 11, 13] {
            let k = PrimeField::new(p).unwrap();
            for a in 0..p {
                assert_eq!(k.pow(a, p as u64), a);
            }
        }
    }

    #[test]
    fn element_ops() {
        let k = PrimeField::new(5).unwrap();
        let a = k.element(3);
        let b = k.element(4);
        assert_eq!((a + b).value(), 2);
        assert_eq!((a * b).value(), 2);
        assert_eq!((a - b).value(), 4);
        assert_eq!((-a).value(), 2);
        assert_eq!(a.inv().unwrap().value(), 2);
        assert!(k.element(0).inv().is_none());
    }
}
