use std::collections::BTreeMap;
use std::fmt;

use crate::arith::checked;
use crate::{Error, Result};

/// Bit of `a_i` (1-based `i`).
pub fn a_bit(i: usize) -> u32 {
    1 << (i - 1)
}

/// Bit of `b_i` (1-based `i`) in genus `g`.
pub fn b_bit(g: usize, i: usize) -> u32 {
    1 << (g + i - 1)
}

/// Sign of `m1 ∧ m2` relative to the sorted monomial, or `None` when they overlap.
pub fn wedge_sign(m1: u32, m2: u32) -> Option<i64> {
    if m1 & m2 != 0 {
        return None;
    }
    let mut inversions = 0u32;
    let mut rest = m2;
    while rest != 0 {
        let y = rest.trailing_zeros();
        rest &= rest - 1;
        inversions += (m1 >> y).count_ones();
    }
    Some(if inversions % 2 == 0 { 1 } else { -1 })
}

/// Integer vector of `∧*H₁(Σ_g)`. Monomials are bitmasks over the generators
/// ordered `a_1, ..., a_g, b_1, ..., b_g`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExteriorVector {
    g: usize,
    coeffs: BTreeMap<u32, i64>,
}

impl ExteriorVector {
    pub fn zero(g: usize) -> Self {
        assert!(2 * g < 32, "genus {g} too large");
        Self { g, coeffs: BTreeMap::new() }
    }

    pub fn one(g: usize) -> Self {
        Self::monomial(g, 0)
    }

    pub fn monomial(g: usize, mask: u32) -> Self {
        Self::from_terms(g, [(mask, 1)])
    }

    pub fn a(g: usize, i: usize) -> Self {
        Self::monomial(g, a_bit(i))
    }

    pub fn b(g: usize, i: usize) -> Self {
        Self::monomial(g, b_bit(g, i))
    }

    pub fn from_terms<I: IntoIterator<Item = (u32, i64)>>(g: usize, terms: I) -> Self {
        let mut v = Self::zero(g);
        for (m, c) in terms {
            v.add_term(m, c);
        }
        v
    }

    /// `ω = Σ a_i ∧ b_i`.
    pub fn omega(g: usize) -> Self {
        Self::from_terms(g, (1..=g).map(|i| (a_bit(i) | b_bit(g, i), 1)))
    }

    pub fn genus(&self) -> usize {
        self.g
    }

    pub fn add_term(&mut self, mask: u32, c: i64) {
        if c == 0 {
            return;
        }
        let slot = self.coeffs.entry(mask).or_insert(0);
        *slot = checked::add(*slot, c);
        if *slot == 0 {
            self.coeffs.remove(&mask);
        }
    }

    pub fn coeff(&self, mask: u32) -> i64 {
        self.coeffs.get(&mask).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, i64)> + '_ {
        self.coeffs.iter().map(|(&m, &c)| (m, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn same_genus(&self, other: &Self) {
        assert_eq!(self.g, other.g, "exterior vectors of different genus");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.same_genus(other);
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m, c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, k: i64) -> Self {
        Self::from_terms(self.g, self.terms().map(|(m, c)| (m, checked::mul(c, k))))
    }

    pub fn inner(&self, other: &Self) -> i64 {
        self.same_genus(other);
        self.terms().fold(0, |acc, (m, c)| checked::add(acc, checked::mul(c, other.coeff(m))))
    }

    pub fn wedge(&self, other: &Self) -> Self {
        self.same_genus(other);
        let mut out = Self::zero(self.g);
        for (m1, c1) in self.terms() {
            for (m2, c2) in other.terms() {
                if let Some(s) = wedge_sign(m1, m2) {
                    out.add_term(m1 | m2, checked::mul(s, checked::mul(c1, c2)));
                }
            }
        }
        out
    }

    /// Adjoint of left multiplication `v ↦ y ∧ v`.
    pub fn contract(&self, y: &Self) -> Self {
        self.same_genus(y);
        let mut out = Self::zero(self.g);
        for (my, cy) in y.terms() {
            for (m, c) in self.terms() {
                if m & my == my {
                    let rest = m & !my;
                    let s = wedge_sign(my, rest).expect("disjoint");
                    out.add_term(rest, checked::mul(s, checked::mul(cy, c)));
                }
            }
        }
        out
    }

    /// The common degree of all terms, `None` for zero.
    pub fn degree(&self) -> Result<Option<usize>> {
        let mut degs = self.terms().map(|(m, _)| m.count_ones() as usize);
        let Some(d) = degs.next() else {
            return Ok(None);
        };
        if degs.all(|e| e == d) {
            Ok(Some(d))
        } else {
            Err(Error::NotHomogeneous)
        }
    }

    pub fn degree_part(&self, d: usize) -> Self {
        Self::from_terms(self.g, self.terms().filter(|(m, _)| m.count_ones() as usize == d))
    }

    /// `E v = v ∧ ω`.
    pub fn apply_e(&self) -> Self {
        self.wedge(&Self::omega(self.g))
    }

    /// `F = E*`.
    pub fn apply_f(&self) -> Self {
        self.contract(&Self::omega(self.g))
    }

    /// `H = deg - g`.
    pub fn apply_h(&self) -> Self {
        let g = self.g as i64;
        Self::from_terms(self.g, self.terms().map(|(m, c)| (m, checked::mul(c, m.count_ones() as i64 - g))))
    }

    pub fn e_power(&self, k: u32) -> Self {
        (0..k).fold(self.clone(), |v, _| v.apply_e())
    }

    pub fn reduce_mod(&self, p: u32) -> Self {
        Self::from_terms(self.g, self.terms().map(|(m, c)| (m, c.rem_euclid(p as i64))))
    }

    /// Every monomial of the given degree, increasing by mask.
    pub fn monomials_of_degree(g: usize, d: usize) -> Vec<u32> {
        (0..1u32 << (2 * g)).filter(|m| m.count_ones() as usize == d).collect()
    }

    pub fn mask_name(g: usize, mask: u32) -> String {
        let mut parts = Vec::new();
        for bit in 0..2 * g {
            if mask >> bit & 1 == 1 {
                parts.push(if bit < g { format!("a{}", bit + 1) } else { format!("b{}", bit - g + 1) });
            }
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("^")
        }
    }
}

impl fmt::Display for ExteriorVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> =
            self.terms().map(|(m, c)| format!("{c}·{}", Self::mask_name(self.g, m))).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wedge_signs() {
        let g = 2;
        let a1 = ExteriorVector::a(g, 1);
        let b1 = ExteriorVector::b(g, 1);
        let a2 = ExteriorVector::a(g, 2);
        assert_eq!(b1.wedge(&a1), a1.wedge(&b1).scale(-1));
        assert!(a1.wedge(&a1).is_zero());
        let x = b1.wedge(&a2);
        assert_eq!(x.coeff(a_bit(2) | b_bit(g, 1)), -1);
    }

    #[test]
    fn lefschetz_sl2() {
        for g in 1..=3 {
            for m in 0..1u32 << (2 * g) {
                let v = ExteriorVector::monomial(g, m);
                let comm = v.apply_f().apply_e().sub(&v.apply_e().apply_f());
                assert_eq!(comm, v.apply_h());
            }
        }
    }

    #[test]
    fn contraction_is_adjoint() {
        let g = 2;
        let y = ExteriorVector::a(g, 1).add(&ExteriorVector::b(g, 2).scale(3));
        for m1 in 0..16u32 {
            for m2 in 0..16u32 {
                let u = ExteriorVector::monomial(g, m1);
                let v = ExteriorVector::monomial(g, m2);
                assert_eq!(y.wedge(&u).inner(&v), u.inner(&v.contract(&y)));
            }
        }
    }

    #[test]
    fn homogeneity() {
        let g = 2;
        let mixed = ExteriorVector::one(g).add(&ExteriorVector::a(g, 1));
        assert_eq!(mixed.degree(), Err(Error::NotHomogeneous));
        assert_eq!(ExteriorVector::omega(g).degree(), Ok(Some(2)));
    }
}
