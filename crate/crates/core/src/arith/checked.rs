//! Overflow-checked integer helpers. Every overflow panics.

pub fn add(a: i64, b: i64) -> i64 {
    a.checked_add(b).expect("integer overflow in addition")
}

pub fn sub(a: i64, b: i64) -> i64 {
    a.checked_sub(b).expect("integer overflow in subtraction")
}

pub fn mul(a: i64, b: i64) -> i64 {
    a.checked_mul(b).expect("integer overflow in multiplication")
}

pub fn pow(a: i64, e: u32) -> i64 {
    a.checked_pow(e).expect("integer overflow in power")
}

/// Binomial coefficient, zero outside `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> i64 {
    if n < 0 || k < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: i128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as i128 / (i + 1) as i128;
        assert!(acc <= i64::MAX as i128, "integer overflow in binomial({n}, {k})");
    }
    acc as i64
}

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub fn is_odd_prime(p: u32) -> bool {
    p > 2 && is_prime(p)
}

pub fn require_odd_prime(p: u32) -> crate::Result<()> {
    if is_odd_prime(p) {
        Ok(())
    } else {
        Err(crate::Error::InvalidPrime(p))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(5, 6), 0);
        assert_eq!(binomial(5, -1), 0);
        assert_eq!(binomial(62, 31), 465428353255261088);
    }

    #[test]
    #[should_panic(expected = "overflow")]
    fn overflow_is_loud() {
        mul(i64::MAX / 2, 3);
    }

    #[test]
    fn primes() {
        let odd: Vec<u32> = (0..30).filter(|&p| is_odd_prime(p)).collect();
        assert_eq!(odd, vec![3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }
}
