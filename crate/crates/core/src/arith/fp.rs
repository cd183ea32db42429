use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Residue of `x` modulo `p` in `[0, p)`.
pub fn reduce(x: i64, p: u32) -> u32 {
    x.rem_euclid(p as i64) as u32
}

pub fn add_mod(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 + b as u64) % p as u64) as u32
}

pub fn sub_mod(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 + p as u64 - b as u64) % p as u64) as u32
}

pub fn mul_mod(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

pub fn pow_mod(mut a: u32, mut e: u64, p: u32) -> u32 {
    let mut acc = 1 % p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

/// Inverse of a nonzero residue modulo a prime.
pub fn inv_mod(a: u32, p: u32) -> u32 {
    assert!(a % p != 0, "zero has no inverse modulo {p}");
    pow_mod(a, p as u64 - 2, p)
}

/// An element of `F_p` that carries its prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FpScalar {
    value: u32,
    p: u32,
}

impl FpScalar {
    pub fn new(x: i64, p: u32) -> Self {
        Self { value: reduce(x, p), p }
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn prime(self) -> u32 {
        self.p
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn inverse(self) -> crate::Result<Self> {
        if self.value == 0 {
            return Err(crate::Error::Precondition("inverse of zero in F_p".into()));
        }
        Ok(Self { value: inv_mod(self.value, self.p), p: self.p })
    }

    fn same_field(self, other: Self) {
        assert_eq!(self.p, other.p, "mixing scalars of F_{} and F_{}", self.p, other.p);
    }
}

impl fmt::Display for FpScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for FpScalar {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.same_field(rhs);
        Self { value: add_mod(self.value, rhs.value, self.p), p: self.p }
    }
}

impl Sub for FpScalar {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.same_field(rhs);
        Self { value: sub_mod(self.value, rhs.value, self.p), p: self.p }
    }
}

impl Mul for FpScalar {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.same_field(rhs);
        Self { value: mul_mod(self.value, rhs.value, self.p), p: self.p }
    }
}

impl Neg for FpScalar {
    type Output = Self;
    fn neg(self) -> Self {
        Self { value: sub_mod(0, self.value, self.p), p: self.p }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverses_mod_seven() {
        for a in 1..7 {
            assert_eq!(mul_mod(a, inv_mod(a, 7), 7), 1);
        }
    }

    #[test]
    fn scalar_ops() {
        let a = FpScalar::new(-1, 5);
        assert_eq!(a.value(), 4);
        assert_eq!((a * a).value(), 1);
        assert_eq!((a + FpScalar::new(1, 5)).value(), 0);
        assert_eq!((-a).value(), 1);
    }

    #[test]
    #[should_panic(expected = "mixing")]
    fn mixing_fields_panics() {
        let _ = FpScalar::new(1, 3) + FpScalar::new(1, 5);
    }
}
