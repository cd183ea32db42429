use std::collections::BTreeMap;
use std::fmt;

use super::checked;

/// Integer Laurent polynomial in one variable, stored sparsely by exponent.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentInt {
    terms: BTreeMap<i32, i64>,
}

impl LaurentInt {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 1)
    }

    pub fn monomial(exp: i32, coeff: i64) -> Self {
        let mut out = Self::zero();
        out.add_term(exp, coeff);
        out
    }

    pub fn from_terms<I: IntoIterator<Item = (i32, i64)>>(terms: I) -> Self {
        let mut out = Self::zero();
        for (e, c) in terms {
            out.add_term(e, c);
        }
        out
    }

    pub fn add_term(&mut self, exp: i32, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let slot = self.terms.entry(exp).or_insert(0);
        *slot = checked::add(*slot, coeff);
        if *slot == 0 {
            self.terms.remove(&exp);
        }
    }

    pub fn coeff(&self, exp: i32) -> i64 {
        self.terms.get(&exp).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, i64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.add_term(e, c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self::from_terms(self.terms().map(|(e, c)| (e, -c)))
    }

    pub fn scale(&self, k: i64) -> Self {
        Self::from_terms(self.terms().map(|(e, c)| (e, checked::mul(c, k))))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in other.terms() {
                let e = e1.checked_add(e2).expect("exponent overflow");
                out.add_term(e, checked::mul(c1, c2));
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// Substitutes `x -> x^{-1}`.
    pub fn bar(&self) -> Self {
        Self::from_terms(self.terms().map(|(e, c)| (-e, c)))
    }

    /// Substitutes `x -> -x`.
    pub fn negate_variable(&self) -> Self {
        Self::from_terms(self.terms().map(|(e, c)| (e, if e.rem_euclid(2) == 1 { -c } else { c })))
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.terms().map(|(e, c)| c as f64 * x.powi(e)).sum()
    }
}

impl fmt::Display for LaurentInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let (sign, mag) = if *c < 0 { ("-", -c) } else { ("+", *c) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match (*e, mag) {
                (0, m) => write!(f, "{m}")?,
                (1, 1) => write!(f, "y")?,
                (e, 1) => write!(f, "y^{e}")?,
                (1, m) => write!(f, "{m}y")?,
                (e, m) => write!(f, "{m}y^{e}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn no_zero_coefficients_are_stored() {
        let f = LaurentInt::from_terms([(1, 2), (1, -2), (-3, 1)]);
        assert_eq!(f.terms().count(), 1);
        assert_eq!(f.coeff(-3), 1);
    }

    #[test]
    fn product_and_bar() {
        let x = LaurentInt::monomial(1, 1);
        let xi = LaurentInt::monomial(-1, 1);
        let s = x.add(&xi);
        let sq = s.mul(&s);
        assert_eq!(sq, LaurentInt::from_terms([(2, 1), (0, 2), (-2, 1)]));
        assert_eq!(sq.bar(), sq);
        assert_eq!(x.negate_variable(), x.neg());
    }
}
