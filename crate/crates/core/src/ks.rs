//! Kleshchev–Sheth composition factors of two-row Specht modules from the
//! base-`p` digits of `c = a - b + 1`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::arith::checked::require_odd_prime;
use crate::fusion::catalan;
use crate::specht::Diagram2;
use crate::{Error, Result};

/// Digits and derived indices of `c = a - b + 1` for `τ = [a, b]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KsContext {
    pub tau: Diagram2,
    pub p: u32,
    pub c: u64,
    digits: Vec<u32>,
}

impl KsContext {
    pub fn new(tau: Diagram2, p: u32) -> Result<Self> {
        require_odd_prime(p)?;
        let c = (tau.a - tau.b + 1) as u64;
        let mut digits = Vec::new();
        let mut x = c;
        while x > 0 {
            digits.push((x % p as u64) as u32);
            x /= p as u64;
        }
        Ok(Self { tau, p, c, digits })
    }

    /// `c_i`, zero beyond the top digit.
    pub fn digit(&self, i: usize) -> u32 {
        self.digits.get(i).copied().unwrap_or(0)
    }

    pub fn digits(&self) -> &[u32] {
        &self.digits
    }

    /// Index of the top nonzero digit.
    pub fn r(&self) -> usize {
        self.digits.len() - 1
    }

    /// `min{j >= 1 : c_j != 0}`.
    pub fn k_tau(&self) -> Option<usize> {
        (1..self.digits.len()).find(|&j| self.digit(j) != 0)
    }

    /// `min{j >= 1 : c_j != p - 1}`.
    pub fn h_tau(&self) -> usize {
        (1..).find(|&j| self.digit(j) != self.p - 1).expect("digits are eventually zero")
    }

    /// Every member of `A_τ` lies in `[0, M)` with `M = max(r + 1, R)` and
    /// `R` the least exponent with `p^R > b`.
    pub fn enumeration_bound(&self) -> usize {
        let b = self.tau.b as u64;
        let mut big_r = 0;
        let mut pw = 1u64;
        while pw <= b {
            pw *= self.p as u64;
            big_r += 1;
        }
        (self.r() + 1).max(big_r)
    }

    pub fn is_admissible(&self, set: &IntervalSet) -> bool {
        set.intervals().iter().all(|&(s, e)| self.digit(s) != 0 && self.digit(e) != self.p - 1)
    }

    /// `δ_I = Σ_{i∈I} (p - 1 - c_i) p^i + Σ_{starts s} p^s`.
    pub fn delta(&self, set: &IntervalSet) -> Result<u64> {
        if !self.is_admissible(set) {
            return Err(Error::Inadmissible(format!("{set} for c = {} at p = {}", self.c, self.p)));
        }
        let p = self.p as u64;
        let pw = |i: usize| p.checked_pow(i as u32).expect("integer overflow in p^i");
        let mut d = 0u64;
        for &(s, e) in set.intervals() {
            d += pw(s);
            for i in s..e {
                d += (p - 1 - self.digit(i) as u64) * pw(i);
            }
        }
        Ok(d)
    }

    /// `ν_I(τ) = [a + δ, b - δ]`, defined when `δ_I <= b`.
    pub fn nu(&self, set: &IntervalSet) -> Result<Diagram2> {
        let d = self.delta(set)? as usize;
        if d > self.tau.b {
            return Err(Error::OutOfRange(format!("δ = {d} exceeds b = {}", self.tau.b)));
        }
        Ok(Diagram2 { a: self.tau.a + d, b: self.tau.b - d })
    }

    /// Admissible interval sets inside `[0, bound)`, with their `δ`.
    pub fn admissible_within(&self, bound: usize) -> Vec<(IntervalSet, u64)> {
        assert!(bound < 63, "enumeration bound {bound} too large");
        let mut out = Vec::new();
        for mask in 0u64..1 << bound {
            let set = IntervalSet::from_mask(mask);
            if let Ok(d) = self.delta(&set) {
                out.push((set, d));
            }
        }
        out
    }

    /// `A_τ = {I admissible : δ_I <= b}`.
    pub fn admissible_sets(&self) -> Vec<(IntervalSet, u64)> {
        let b = self.tau.b as u64;
        self.admissible_within(self.enumeration_bound()).into_iter().filter(|(_, d)| *d <= b).collect()
    }
}

/// A finite union of disjoint, non-adjacent half-open intervals `[s, e)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntervalSet(Vec<(usize, usize)>);

impl IntervalSet {
    pub fn empty() -> Self {
        Self(Vec::new())
    }

    /// Canonical decomposition of a set of indices into maximal intervals.
    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        let set: BTreeSet<usize> = indices.into_iter().collect();
        let mut out: Vec<(usize, usize)> = Vec::new();
        for i in set {
            match out.last_mut() {
                Some((_, e)) if *e == i => *e += 1,
                _ => out.push((i, i + 1)),
            }
        }
        Self(out)
    }

    pub fn from_mask(mask: u64) -> Self {
        Self::from_indices((0..64).filter(|i| mask >> i & 1 == 1))
    }

    pub fn intervals(&self) -> &[(usize, usize)] {
        &self.0
    }

    pub fn indices(&self) -> Vec<usize> {
        self.0.iter().flat_map(|&(s, e)| s..e).collect()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.iter().any(|&(s, e)| s <= i && i < e)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `I \ [0, k)`.
    pub fn without_prefix(&self, k: usize) -> Self {
        Self::from_indices(self.indices().into_iter().filter(|&i| i >= k))
    }

    /// `I ∪ [0, k)`.
    pub fn with_prefix(&self, k: usize) -> Self {
        Self::from_indices(self.indices().into_iter().chain(0..k))
    }
}

impl fmt::Display for IntervalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "∅");
        }
        let parts: Vec<String> = self.0.iter().map(|(s, e)| format!("[{s},{e})")).collect();
        write!(f, "{}", parts.join("∪"))
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CompositionFactor {
    pub intervals: String,
    pub delta: u64,
    pub diagram: (usize, usize),
}

/// `{ν_I(τ) : I ∈ A_τ}` in enumeration order.
pub fn composition_factors(tau: Diagram2, p: u32) -> Result<Vec<CompositionFactor>> {
    let ctx = KsContext::new(tau, p)?;
    ctx.admissible_sets()
        .into_iter()
        .map(|(set, delta)| {
            let d = ctx.nu(&set)?;
            Ok(CompositionFactor { intervals: set.to_string(), delta, diagram: (d.a, d.b) })
        })
        .collect()
}

/// `dim D_p^τ` solved from `dim S^τ = Σ_{I ∈ A_τ} dim D_p^{ν_I(τ)}`.
pub fn ks_simple_dim(tau: Diagram2, p: u32) -> Result<i64> {
    fn rec(tau: Diagram2, p: u32, memo: &mut BTreeMap<Diagram2, i64>) -> Result<i64> {
        if let Some(&d) = memo.get(&tau) {
            return Ok(d);
        }
        let ctx = KsContext::new(tau, p)?;
        let mut dim = catalan(tau.n() as i64, tau.b as i64);
        for (set, _) in ctx.admissible_sets() {
            if !set.is_empty() {
                dim -= rec(ctx.nu(&set)?, p, memo)?;
            }
        }
        memo.insert(tau, dim);
        Ok(dim)
    }
    rec(tau, p, &mut BTreeMap::new())
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct PhiReport {
    pub k_tau: usize,
    pub bound: usize,
    pub hat_zero_size: usize,
    pub hat_plus_size: usize,
    pub failures: Vec<String>,
}

impl PhiReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks that `I ↦ I \ [0, k_τ)` is a bijection `Â⁰_{τ'} → Â⁺_τ` with inverse
/// `J ↦ J ∪ [0, k_τ)`, where `τ' = [a - c₀, b + c₀]`, that `δ^{τ'}_I = δ^τ_{φ(I)} + c₀`
/// and `ν_I(τ') = ν_{φ(I)}(τ)`, and the digit law for `c' = c - 2c₀`.
pub fn phi_bijection(tau: Diagram2, p: u32) -> Result<PhiReport> {
    let ctx = KsContext::new(tau, p)?;
    let c0 = ctx.digit(0) as usize;
    if c0 == 0 {
        return Err(Error::Precondition(format!("c = {} is divisible by p = {p}", ctx.c)));
    }
    if tau.a < tau.b + 2 * c0 {
        return Err(Error::Precondition(format!("{tau} needs a - b >= 2 c0 = {}", 2 * c0)));
    }
    let k = ctx.k_tau().expect("c > c0 forces a nonzero higher digit");
    let tau2 = Diagram2 { a: tau.a - c0, b: tau.b + c0 };
    let ctx2 = KsContext::new(tau2, p)?;
    let bound = ctx.enumeration_bound().max(ctx2.enumeration_bound()).max(k + 1);
    let mut failures = Vec::new();

    let pu = p;
    let expected_digit = |i: usize| -> u32 {
        if i == 0 {
            pu - ctx.digit(0)
        } else if i < k {
            pu - 1
        } else if i == k {
            ctx.digit(k) - 1
        } else {
            ctx.digit(i)
        }
    };
    for i in 0..=ctx.r() + 1 {
        if ctx2.digit(i) != expected_digit(i) {
            failures.push(format!("digit {i} of c' is {} not {}", ctx2.digit(i), expected_digit(i)));
        }
    }

    let hat_zero: Vec<(IntervalSet, u64)> =
        ctx2.admissible_within(bound).into_iter().filter(|(s, _)| s.contains(0)).collect();
    let hat_plus: BTreeMap<IntervalSet, u64> =
        ctx.admissible_within(bound).into_iter().filter(|(s, _)| !s.contains(0)).collect();
    let mut hit = BTreeSet::new();
    for (set, d2) in &hat_zero {
        if (0..k).any(|i| !set.contains(i)) {
            failures.push(format!("{set} misses part of [0,{k})"));
        }
        let image = set.without_prefix(k);
        match hat_plus.get(&image) {
            None => failures.push(format!("φ({set}) = {image} is not in Â⁺")),
            Some(&d) => {
                if *d2 != d + c0 as u64 {
                    failures.push(format!("δ'({set}) = {d2} but δ(φ) + c0 = {}", d + c0 as u64));
                }
                if !hit.insert(image.clone()) {
                    failures.push(format!("φ is not injective at {image}"));
                }
                let in_a2 = *d2 <= tau2.b as u64;
                let in_a = d <= tau.b as u64;
                if in_a2 != in_a {
                    failures.push(format!("membership in A differs for {set}"));
                } else if in_a && ctx2.nu(set)? != ctx.nu(&image)? {
                    failures.push(format!("ν differs for {set}"));
                }
            }
        }
        if set.without_prefix(k).with_prefix(k) != *set {
            failures.push(format!("φ⁻¹φ({set}) differs"));
        }
    }
    for set in hat_plus.keys() {
        if !hit.contains(set) {
            failures.push(format!("{set} ∈ Â⁺ has no preimage"));
        }
        let back = set.with_prefix(k);
        if !ctx2.is_admissible(&back) {
            failures.push(format!("φ⁻¹({set}) = {back} is not admissible"));
        }
    }
    Ok(PhiReport { k_tau: k, bound, hat_zero_size: hat_zero.len(), hat_plus_size: hat_plus.len(), failures })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_intervals() {
        let s = IntervalSet::from_indices([0, 1, 2, 5, 7, 8]);
        assert_eq!(s.intervals(), &[(0, 3), (5, 6), (7, 9)]);
        assert_eq!(s.to_string(), "[0,3)∪[5,6)∪[7,9)");
        assert_eq!(s.without_prefix(2).intervals(), &[(2, 3), (5, 6), (7, 9)]);
    }

    #[test]
    fn four_zero_at_three() {
        let ctx = KsContext::new(Diagram2 { a: 4, b: 0 }, 3).unwrap();
        assert_eq!(ctx.digits(), &[2, 1]);
        assert_eq!(ctx.k_tau(), Some(1));
        let report = phi_bijection(Diagram2 { a: 4, b: 0 }, 3).unwrap();
        assert!(report.ok(), "{report:?}");
        let ctx2 = KsContext::new(Diagram2 { a: 2, b: 2 }, 3).unwrap();
        let a2 = ctx2.admissible_sets();
        let zero: Vec<_> = a2.iter().filter(|(s, _)| s.contains(0)).collect();
        assert_eq!(zero.len(), 1);
        assert_eq!(zero[0].0.intervals(), &[(0, 1)]);
        assert_eq!(zero[0].1, 2);
    }

    #[test]
    fn enumeration_reaches_past_top_digit() {
        let ctx = KsContext::new(Diagram2 { a: 10, b: 10 }, 3).unwrap();
        let far = IntervalSet::from_indices([0, 1]);
        assert_eq!(ctx.delta(&far).unwrap(), 8);
        assert!(ctx.admissible_sets().iter().any(|(s, _)| *s == far));
    }

    #[test]
    fn inadmissible_is_an_error() {
        let ctx = KsContext::new(Diagram2 { a: 2, b: 2 }, 3).unwrap();
        assert!(ctx.delta(&IntervalSet::from_indices([1])).is_err());
    }

    #[test]
    fn ks_dims_small() {
        assert_eq!(ks_simple_dim(Diagram2 { a: 2, b: 2 }, 3).unwrap(), 1);
        assert_eq!(ks_simple_dim(Diagram2 { a: 3, b: 1 }, 3).unwrap(), 3);
        assert_eq!(ks_simple_dim(Diagram2 { a: 4, b: 0 }, 3).unwrap(), 1);
    }
}
