//! The tensor power `L^n` of the defining sl₂ lattice, with its sl₂ action,
//! symmetric-group actions and the cup/cap maps.

use std::collections::BTreeMap;
use std::fmt;

use crate::arith::checked;
use crate::arith::fp::reduce;

/// A monomial `e_{ε_1} ⊗ ... ⊗ e_{ε_n}`. Bit `j` of `mask` is set when position
/// `j + 1` carries `e₊`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignWord {
    pub n: usize,
    pub mask: u32,
}

impl SignWord {
    pub fn new(n: usize, mask: u32) -> Self {
        assert!(n < 32, "tensor length {n} exceeds 31");
        assert!(n == 31 || mask >> n == 0, "mask has bits beyond position {n}");
        Self { n, mask }
    }

    /// `+1` or `-1` at 1-based position `k`.
    pub fn sign_at(self, k: usize) -> i8 {
        if self.mask >> (k - 1) & 1 == 1 {
            1
        } else {
            -1
        }
    }

    pub fn plus_count(self) -> u32 {
        self.mask.count_ones()
    }

    /// Weight `#plus - #minus`.
    pub fn weight(self) -> i64 {
        2 * self.plus_count() as i64 - self.n as i64
    }
}

impl fmt::Display for SignWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for k in 1..=self.n {
            write!(f, "{}", if self.sign_at(k) > 0 { '+' } else { '-' })?;
        }
        Ok(())
    }
}

/// A permutation of `{0, ..., n-1}` given by its images.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<usize>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Self((0..n).collect())
    }

    pub fn from_images(images: Vec<usize>) -> crate::Result<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || seen[i] {
                return Err(crate::Error::Precondition(format!("{images:?} is not a permutation")));
            }
            seen[i] = true;
        }
        Ok(Self(images))
    }

    /// The transposition of 1-based points `i` and `j`.
    pub fn transposition(n: usize, i: usize, j: usize) -> Self {
        let mut v: Vec<usize> = (0..n).collect();
        v.swap(i - 1, j - 1);
        Self(v)
    }

    /// The representative `(1..k_1)(k_1+1..k_1+k_2)...` of a cycle type.
    pub fn cycle_type_representative(parts: &[usize]) -> Self {
        let n = parts.iter().sum();
        let mut v: Vec<usize> = (0..n).collect();
        let mut start = 0;
        for &len in parts {
            for i in 0..len {
                v[start + i] = start + (i + 1) % len;
            }
            start += len;
        }
        Self(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn image(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        Self(other.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn inverse(&self) -> Self {
        let mut v = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            v[j] = i;
        }
        Self(v)
    }

    /// Cycle lengths in non-increasing order.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut seen = vec![false; self.0.len()];
        let mut parts = Vec::new();
        for s in 0..self.0.len() {
            if seen[s] {
                continue;
            }
            let mut len = 0;
            let mut i = s;
            while !seen[i] {
                seen[i] = true;
                i = self.0[i];
                len += 1;
            }
            parts.push(len);
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        parts
    }

    pub fn sign(&self) -> i64 {
        let odd = self.cycle_type().iter().filter(|&&l| l % 2 == 0).count();
        if odd % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Every permutation of `n` points, in lexicographic order of images.
    pub fn all(n: usize) -> Vec<Self> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(n);
        let mut used = vec![false; n];
        fn rec(n: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Perm>) {
            if cur.len() == n {
                out.push(Perm(cur.clone()));
                return;
            }
            for i in 0..n {
                if !used[i] {
                    used[i] = true;
                    cur.push(i);
                    rec(n, cur, used, out);
                    cur.pop();
                    used[i] = false;
                }
            }
        }
        rec(n, &mut cur, &mut used, &mut out);
        out
    }
}

/// An integer vector in `L^n`, sparse over sign words.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TensorVector {
    n: usize,
    coeffs: BTreeMap<u32, i64>,
}

impl TensorVector {
    pub fn zero(n: usize) -> Self {
        assert!(n < 32, "tensor length {n} exceeds 31");
        Self { n, coeffs: BTreeMap::new() }
    }

    pub fn basis(word: SignWord) -> Self {
        let mut v = Self::zero(word.n);
        v.add_term(word.mask, 1);
        v
    }

    pub fn from_terms<I: IntoIterator<Item = (u32, i64)>>(n: usize, terms: I) -> Self {
        let mut v = Self::zero(n);
        for (m, c) in terms {
            v.add_term(m, c);
        }
        v
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn add_term(&mut self, mask: u32, c: i64) {
        if c == 0 {
            return;
        }
        debug_assert!(self.n == 31 || mask >> self.n == 0);
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

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn same_length(&self, other: &Self) {
        assert_eq!(self.n, other.n, "tensor vectors of different lengths");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.same_length(other);
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
        Self::from_terms(self.n, self.terms().map(|(m, c)| (m, checked::mul(c, k))))
    }

    /// Coefficients reduced into `[0, p)`, zero terms dropped.
    pub fn reduce_mod(&self, p: u32) -> Self {
        Self::from_terms(self.n, self.terms().map(|(m, c)| (m, reduce(c, p) as i64)))
    }

    pub fn inner(&self, other: &Self) -> i64 {
        self.same_length(other);
        let (small, big) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        small.terms().fold(0, |acc, (m, c)| checked::add(acc, checked::mul(c, big.coeff(m))))
    }

    pub fn apply_e(&self) -> Self {
        let mut out = Self::zero(self.n);
        for (m, c) in self.terms() {
            for j in 0..self.n {
                if m >> j & 1 == 0 {
                    out.add_term(m | 1 << j, c);
                }
            }
        }
        out
    }

    pub fn apply_f(&self) -> Self {
        let mut out = Self::zero(self.n);
        for (m, c) in self.terms() {
            for j in 0..self.n {
                if m >> j & 1 == 1 {
                    out.add_term(m & !(1 << j), c);
                }
            }
        }
        out
    }

    pub fn apply_h(&self) -> Self {
        Self::from_terms(
            self.n,
            self.terms().map(|(m, c)| (m, checked::mul(c, SignWord::new(self.n, m).weight()))),
        )
    }

    pub fn e_power(&self, k: u32) -> Self {
        (0..k).fold(self.clone(), |v, _| v.apply_e())
    }

    /// `σ(v_1 ⊗ ... ⊗ v_n) = v_{σ⁻¹(1)} ⊗ ... ⊗ v_{σ⁻¹(n)}`, times `sign(σ)` when `signed`.
    pub fn permute(&self, sigma: &Perm, signed: bool) -> Self {
        assert_eq!(sigma.len(), self.n, "permutation degree");
        let s = if signed { sigma.sign() } else { 1 };
        let mut out = Self::zero(self.n);
        for (m, c) in self.terms() {
            let mut img = 0u32;
            for i in 0..self.n {
                if m >> i & 1 == 1 {
                    img |= 1 << sigma.image(i);
                }
            }
            out.add_term(img, checked::mul(c, s));
        }
        out
    }

    /// `I_{k-1} ⊗ coev ⊗ I_{n-k+1}` with `coev(1) = e₋⊗e₊ - e₊⊗e₋`, for `1 <= k <= n+1`.
    pub fn coev(&self, k: usize) -> crate::Result<Self> {
        if k == 0 || k > self.n + 1 {
            return Err(crate::Error::OutOfRange(format!("coev_{k} on L^{}", self.n)));
        }
        let s = k - 1;
        let mut out = Self::zero(self.n + 2);
        for (m, c) in self.terms() {
            let low = m & ((1u32 << s) - 1);
            let high = (m >> s) << (s + 2);
            out.add_term(low | high | 0b10 << s, c);
            out.add_term(low | high | 0b01 << s, -c);
        }
        Ok(out)
    }

    /// `ev_k = -(coev_k)^*`, contracting positions `k` and `k+1`, for `1 <= k <= n-1`.
    pub fn ev(&self, k: usize) -> crate::Result<Self> {
        if self.n < 2 || k == 0 || k > self.n - 1 {
            return Err(crate::Error::OutOfRange(format!("ev_{k} on L^{}", self.n)));
        }
        let s = k - 1;
        let mut out = Self::zero(self.n - 2);
        for (m, c) in self.terms() {
            let pair = (m >> s) & 0b11;
            let sign = match pair {
                0b10 => -1,
                0b01 => 1,
                _ => continue,
            };
            let low = m & ((1u32 << s) - 1);
            let high = (m >> (s + 2)) << s;
            out.add_term(low | high, checked::mul(c, sign));
        }
        Ok(out)
    }
}

impl fmt::Display for TensorVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> =
            self.terms().map(|(m, c)| format!("{c}[{}]", SignWord::new(self.n, m))).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_words(n: usize) -> impl Iterator<Item = TensorVector> {
        (0..1u32 << n).map(move |m| TensorVector::basis(SignWord::new(n, m)))
    }

    #[test]
    fn sl2_relations_on_basis() {
        for n in 0..6 {
            for v in all_words(n) {
                let ef = v.apply_f().apply_e();
                let fe = v.apply_e().apply_f();
                assert_eq!(ef.sub(&fe), v.apply_h());
                let he = v.apply_e().apply_h();
                let eh = v.apply_h().apply_e();
                assert_eq!(he.sub(&eh), v.apply_e().scale(2));
            }
        }
    }

    #[test]
    fn e_is_adjoint_to_f() {
        for u in all_words(4) {
            for v in all_words(4) {
                assert_eq!(u.apply_e().inner(&v), u.inner(&v.apply_f()));
            }
        }
    }

    #[test]
    fn cup_cap_relations() {
        for n in 0..5 {
            for v in all_words(n) {
                for k in 1..=n + 1 {
                    let c = v.coev(k).unwrap();
                    assert_eq!(c.ev(k).unwrap(), v.scale(-2));
                    if k <= n {
                        assert_eq!(c.ev(k + 1).unwrap(), v);
                    }
                    if k > 1 {
                        assert_eq!(c.ev(k - 1).unwrap(), v);
                    }
                    assert!(c.apply_e().sub(&v.apply_e().coev(k).unwrap()).is_zero());
                }
            }
        }
    }

    #[test]
    fn ev_is_minus_adjoint_of_coev() {
        for u in all_words(2) {
            for v in all_words(4) {
                for k in 1..=3 {
                    assert_eq!(u.coev(k).unwrap().inner(&v), -u.inner(&v.ev(k).unwrap()));
                }
            }
        }
    }

    #[test]
    fn permutation_action_moves_factors() {
        let v = TensorVector::basis(SignWord::new(3, 0b001));
        let sigma = Perm::from_images(vec![2, 0, 1]).unwrap();
        assert_eq!(v.permute(&sigma, false), TensorVector::basis(SignWord::new(3, 0b100)));
        assert_eq!(v.permute(&sigma, true), TensorVector::basis(SignWord::new(3, 0b100)));
        let t = Perm::transposition(3, 1, 2);
        assert_eq!(v.permute(&t, true), TensorVector::basis(SignWord::new(3, 0b010)).scale(-1));
    }

    #[test]
    fn e_to_the_p_vanishes_mod_p() {
        for p in [3u32, 5] {
            for v in all_words(7) {
                assert!(v.e_power(p).reduce_mod(p).is_zero());
            }
        }
    }

    #[test]
    fn cycle_types() {
        let r = Perm::cycle_type_representative(&[3, 2, 1]);
        assert_eq!(r.cycle_type(), vec![3, 2, 1]);
        assert_eq!(r.sign(), -1);
        assert_eq!(Perm::all(4).len(), 24);
        let s = Perm::from_images(vec![1, 2, 0]).unwrap();
        assert_eq!(s.compose(&s.inverse()), Perm::identity(3));
    }
}
