use super::cyclotomic::CyclotomicElem;
use super::fp::FpScalar;
use super::laurent::LaurentInt;

/// The commutative-ring operations needed by [`quantum_integer`].
pub trait Ring: Clone + PartialEq {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn ring_add(&self, other: &Self) -> Self;
    fn ring_mul(&self, other: &Self) -> Self;
}

/// Balanced quantum integer `[n]_x = x^{n-1} + x^{n-3} + ... + x^{1-n}`.
pub fn quantum_integer<R: Ring>(n: u32, x: &R, x_inv: &R) -> R {
    if n == 0 {
        return x.zero_like();
    }
    let mut term = (0..n - 1).fold(x.one_like(), |acc, _| acc.ring_mul(x));
    let step = x_inv.ring_mul(x_inv);
    let mut sum = x.zero_like();
    for _ in 0..n {
        sum = sum.ring_add(&term);
        term = term.ring_mul(&step);
    }
    sum
}

/// `[n]_y` as a Laurent polynomial.
pub fn quantum_laurent(n: u32) -> LaurentInt {
    quantum_integer(n, &LaurentInt::monomial(1, 1), &LaurentInt::monomial(-1, 1))
}

impl Ring for LaurentInt {
    fn zero_like(&self) -> Self {
        LaurentInt::zero()
    }
    fn one_like(&self) -> Self {
        LaurentInt::one()
    }
    fn ring_add(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn ring_mul(&self, other: &Self) -> Self {
        self.mul(other)
    }
}

impl Ring for CyclotomicElem {
    fn zero_like(&self) -> Self {
        CyclotomicElem::zero(self.p(), self.modulus())
    }
    fn one_like(&self) -> Self {
        CyclotomicElem::one(self.p(), self.modulus())
    }
    fn ring_add(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn ring_mul(&self, other: &Self) -> Self {
        self.mul(other)
    }
}

impl Ring for FpScalar {
    fn zero_like(&self) -> Self {
        FpScalar::new(0, self.prime())
    }
    fn one_like(&self) -> Self {
        FpScalar::new(1, self.prime())
    }
    fn ring_add(&self, other: &Self) -> Self {
        *self + *other
    }
    fn ring_mul(&self, other: &Self) -> Self {
        *self * *other
    }
}

impl Ring for i64 {
    fn zero_like(&self) -> Self {
        0
    }
    fn one_like(&self) -> Self {
        1
    }
    fn ring_add(&self, other: &Self) -> Self {
        super::checked::add(*self, *other)
    }
    fn ring_mul(&self, other: &Self) -> Self {
        super::checked::mul(*self, *other)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_quantum_integers() {
        assert!(quantum_laurent(0).is_zero());
        assert_eq!(quantum_laurent(1), LaurentInt::one());
        assert_eq!(quantum_laurent(3), LaurentInt::from_terms([(2, 1), (0, 1), (-2, 1)]));
        assert_eq!(quantum_integer(4, &1i64, &1i64), 4);
        assert_eq!(quantum_integer(5, &-1i64, &-1i64), 5);
        assert_eq!(quantum_integer(4, &-1i64, &-1i64), -4);
    }

    #[test]
    fn fp_quantum_integer_at_one_is_n() {
        let one = FpScalar::new(1, 7);
        assert_eq!(quantum_integer(9, &one, &one).value(), 2);
    }
}
