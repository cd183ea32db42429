use std::fmt;

use super::checked;
use super::fp::reduce;
use super::laurent::LaurentInt;

/// Element of `Z[ζ_p]` or `F_q[ζ_p]` in the power basis `ζ^0, ..., ζ^{p-2}`.
///
/// `modulus == None` means integer coefficients; otherwise coefficients are
/// kept reduced into `[0, q)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CyclotomicElem {
    p: u32,
    modulus: Option<u32>,
    coeffs: Vec<i64>,
}

impl CyclotomicElem {
    pub fn zero(p: u32, modulus: Option<u32>) -> Self {
        Self { p, modulus, coeffs: vec![0; p as usize - 1] }
    }

    pub fn one(p: u32, modulus: Option<u32>) -> Self {
        Self::zeta_power(p, modulus, 0)
    }

    pub fn zeta_power(p: u32, modulus: Option<u32>, e: i64) -> Self {
        Self::from_exponents(p, modulus, [(e, 1)])
    }

    /// Builds `Σ c ζ^e` for arbitrary integer exponents.
    pub fn from_exponents<I: IntoIterator<Item = (i64, i64)>>(
        p: u32,
        modulus: Option<u32>,
        terms: I,
    ) -> Self {
        let mut full = vec![0i64; p as usize];
        for (e, c) in terms {
            let slot = &mut full[e.rem_euclid(p as i64) as usize];
            *slot = checked::add(*slot, c);
        }
        Self::from_full(p, modulus, &full)
    }

    /// Reduces a length-`p` coefficient vector using `ζ^{p-1} = -Σ_{j<p-1} ζ^j`.
    fn from_full(p: u32, modulus: Option<u32>, full: &[i64]) -> Self {
        let top = full[p as usize - 1];
        let coeffs = full[..p as usize - 1]
            .iter()
            .map(|&c| {
                let c = checked::sub(c, top);
                match modulus {
                    Some(q) => reduce(c, q) as i64,
                    None => c,
                }
            })
            .collect();
        Self { p, modulus, coeffs }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn modulus(&self) -> Option<u32> {
        self.modulus
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    fn compatible(&self, other: &Self) {
        assert!(
            self.p == other.p && self.modulus == other.modulus,
            "mixing cyclotomic rings (p={}, q={:?}) and (p={}, q={:?})",
            self.p,
            self.modulus,
            other.p,
            other.modulus
        );
    }

    fn full(&self) -> Vec<i64> {
        let mut full = self.coeffs.clone();
        full.push(0);
        full
    }

    pub fn add(&self, other: &Self) -> Self {
        self.compatible(other);
        let full: Vec<i64> =
            self.full().iter().zip(other.full()).map(|(&a, b)| checked::add(a, b)).collect();
        Self::from_full(self.p, self.modulus, &full)
    }

    pub fn neg(&self) -> Self {
        let full: Vec<i64> = self.full().iter().map(|&c| -c).collect();
        Self::from_full(self.p, self.modulus, &full)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: i64) -> Self {
        let full: Vec<i64> = self.full().iter().map(|&c| checked::mul(c, k)).collect();
        Self::from_full(self.p, self.modulus, &full)
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.compatible(other);
        let p = self.p as usize;
        let mut full = vec![0i64; p];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                let slot = &mut full[(i + j) % p];
                *slot = checked::add(*slot, checked::mul(a, b));
                if let Some(q) = self.modulus {
                    *slot = reduce(*slot, q) as i64;
                }
            }
        }
        Self::from_full(self.p, self.modulus, &full)
    }

    /// Complex conjugation `ζ -> ζ^{-1}`.
    pub fn conj(&self) -> Self {
        let p = self.p as usize;
        let full = self.full();
        let flipped: Vec<i64> = (0..p).map(|j| full[(p - j) % p]).collect();
        Self::from_full(self.p, self.modulus, &flipped)
    }

    /// Reduces integer coefficients modulo `q`.
    pub fn reduce_mod(&self, q: u32) -> Self {
        Self::from_full(self.p, Some(q), &self.full())
    }

    /// Coordinates in the basis `1, ζ+ζ^{-1}, ..., ζ^{(p-3)/2}+ζ^{-(p-3)/2}` of the
    /// conjugation-invariant subring, or `None` if the element is not invariant.
    pub fn real_subring_coords(&self) -> Option<Vec<i64>> {
        let p = self.p as usize;
        let d = self.full();
        if (1..p).any(|j| d[j] != d[p - j]) {
            return None;
        }
        let m = d[(p - 1) / 2];
        Some((0..(p - 1) / 2).map(|j| checked::sub(d[j], m)).collect())
    }

    pub fn to_complex(&self) -> (f64, f64) {
        let theta = 2.0 * std::f64::consts::PI / self.p as f64;
        self.coeffs.iter().enumerate().fold((0.0, 0.0), |(re, im), (j, &c)| {
            let a = theta * j as f64;
            (re + c as f64 * a.cos(), im + c as f64 * a.sin())
        })
    }
}

impl fmt::Display for CyclotomicElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(j, &c)| match j {
                0 => format!("{c}"),
                1 => format!("{c}z"),
                _ => format!("{c}z^{j}"),
            })
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Evaluates a Laurent polynomial at `x = sign * ζ_p`.
pub fn cyclotomic_eval(f: &LaurentInt, p: u32, sign: i8, modulus: Option<u32>) -> CyclotomicElem {
    assert!(sign == 1 || sign == -1, "sign must be +1 or -1");
    CyclotomicElem::from_exponents(
        p,
        modulus,
        f.terms().map(|(e, c)| {
            let c = if sign == -1 && e.rem_euclid(2) == 1 { -c } else { c };
            (e as i64, c)
        }),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::quantum::quantum_integer;

    #[test]
    fn zeta_to_the_fourth_at_five() {
        let x4 = LaurentInt::monomial(4, 1);
        let z = cyclotomic_eval(&x4, 5, 1, None);
        assert_eq!(z.coeffs(), &[-1, -1, -1, -1]);
        assert_eq!(cyclotomic_eval(&x4, 5, -1, None), z);
        let x3 = LaurentInt::monomial(3, 1);
        assert_eq!(cyclotomic_eval(&x3, 5, -1, None).coeffs(), &[0, 0, 0, -1]);
    }

    #[test]
    fn zeta_has_order_p() {
        for p in [3u32, 5, 7, 11] {
            let z = CyclotomicElem::zeta_power(p, None, 1);
            let mut acc = CyclotomicElem::one(p, None);
            for _ in 0..p {
                acc = acc.mul(&z);
            }
            assert_eq!(acc, CyclotomicElem::one(p, None));
            assert_eq!(z.mul(&z.conj()), CyclotomicElem::one(p, None));
        }
    }

    #[test]
    fn quantum_p_vanishes() {
        for p in [3u32, 5, 7] {
            let z = CyclotomicElem::zeta_power(p, None, 1);
            let zi = z.conj();
            assert!(quantum_integer(p, &z, &zi).is_zero());
            assert!(quantum_integer(2 * p, &z, &zi).is_zero());
        }
    }

    #[test]
    fn complex_embedding_agrees() {
        let f = LaurentInt::from_terms([(3, 2), (-1, -1), (0, 5)]);
        let p = 7;
        let z = cyclotomic_eval(&f, p, 1, None);
        let theta = 2.0 * std::f64::consts::PI / p as f64;
        let (re, im) = z.to_complex();
        let expect_re: f64 = f.terms().map(|(e, c)| c as f64 * (theta * e as f64).cos()).sum();
        let expect_im: f64 = f.terms().map(|(e, c)| c as f64 * (theta * e as f64).sin()).sum();
        assert!((re - expect_re).abs() < 1e-9 && (im - expect_im).abs() < 1e-9);
    }

    #[test]
    fn real_subring_coordinates() {
        let z = CyclotomicElem::zeta_power(7, None, 1);
        let s = z.add(&z.conj());
        assert_eq!(s.real_subring_coords(), Some(vec![0, 1, 0]));
        assert_eq!(z.real_subring_coords(), None);
        let zc = CyclotomicElem::zeta_power(7, None, 3).add(&CyclotomicElem::zeta_power(7, None, 4));
        assert_eq!(zc.real_subring_coords(), Some(vec![-1, -1, -1]));
    }
}
