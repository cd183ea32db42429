//! Dimension formulas for the simple quotients, Fibonacci identities and the
//! truncated fusion algebra behind the Verlinde counts.

use std::fmt;

use crate::arith::checked::{self, binomial};
use crate::arith::quantum::quantum_integer;
use crate::arith::CyclotomicElem;
use crate::{Error, Result};

/// `C(n, j) = binom(n, j) - binom(n, j - 1)`; this is `dim S^{[n-j, j]}` for `j <= n/2`.
pub fn catalan(n: i64, j: i64) -> i64 {
    checked::sub(binomial(n, j), binomial(n, j - 1))
}

/// `d_k^n = Σ_s C(n, b + s p)` with `b = (n + 1 - k)/2`, for `0 <= k <= p`.
pub fn d_dim(p: u32, n: u32, k: u32) -> Result<i64> {
    checked::require_odd_prime(p)?;
    if k > p {
        return Err(Error::OutOfRange(format!("k = {k} exceeds p = {p}")));
    }
    if (n + 1 + k) % 2 != 0 {
        return Err(Error::Parity(format!("k = {k} and n + 1 = {} differ in parity", n + 1)));
    }
    let (n, p) = (n as i64, p as i64);
    let b = (n + 1 - k as i64) / 2;
    let lo = (-b).div_euclid(p) - 1;
    let hi = (n + 1 - b).div_euclid(p) + 1;
    Ok((lo..=hi).fold(0, |acc, s| checked::add(acc, catalan(n, b + s * p))))
}

/// Fibonacci numbers with `f_0 = 0`, `f_1 = 1`, extended to negative indices.
pub fn fib(i: i64) -> i64 {
    if i < 0 {
        let f = fib(-i);
        return if i % 2 == 0 { -f } else { f };
    }
    let (mut a, mut b) = (0i64, 1i64);
    for _ in 0..i {
        let next = checked::add(a, b);
        a = b;
        b = next;
    }
    a
}

fn alternating_catalan(n: i64, x: i64, plus: i64, minus: i64) -> i64 {
    let mut acc = 0i64;
    let mut s = 0;
    while x - plus.min(minus) - 5 * s >= 0 {
        acc = checked::add(acc, catalan(n, x - plus - 5 * s));
        acc = checked::sub(acc, catalan(n, x - minus - 5 * s));
        s += 1;
    }
    acc
}

/// The four alternating Catalan sums equal to `f_{2r}, f_{2r}, f_{2r+1}, f_{2r+1}`.
pub fn fibonacci_catalan_sums(r: i64) -> [i64; 4] {
    [
        alternating_catalan(2 * r, r, 1, 3),
        alternating_catalan(2 * r + 1, r, 1, 2),
        alternating_catalan(2 * r + 1, r, 0, 3),
        alternating_catalan(2 * r + 2, r + 1, 0, 4),
    ]
}

/// Multiplicities of the labels `{1}, ..., {p-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FusionElement {
    p: u32,
    mults: Vec<i64>,
}

impl FusionElement {
    pub fn zero(p: u32) -> Self {
        Self { p, mults: vec![0; p as usize - 1] }
    }

    /// The label `{k}`, `1 <= k <= p-1`.
    pub fn label(p: u32, k: u32) -> Result<Self> {
        if k == 0 || k >= p {
            return Err(Error::OutOfRange(format!("label {{{k}}} outside 1..{}", p - 1)));
        }
        let mut e = Self::zero(p);
        e.mults[k as usize - 1] = 1;
        Ok(e)
    }

    pub fn from_mults(p: u32, mults: Vec<i64>) -> Result<Self> {
        if mults.len() != p as usize - 1 {
            return Err(Error::DimensionMismatch { expected: p as usize - 1, found: mults.len() });
        }
        Ok(Self { p, mults })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// Multiplicity of `{k}`.
    pub fn mult(&self, k: u32) -> i64 {
        if k == 0 || k >= self.p {
            0
        } else {
            self.mults[k as usize - 1]
        }
    }

    pub fn mults(&self) -> &[i64] {
        &self.mults
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.p, other.p, "fusion elements for different p");
        let mults = self.mults.iter().zip(&other.mults).map(|(&a, &b)| checked::add(a, b)).collect();
        Self { p: self.p, mults }
    }

    pub fn scale(&self, k: i64) -> Self {
        Self { p: self.p, mults: self.mults.iter().map(|&a| checked::mul(a, k)).collect() }
    }

    /// Quantum dimension at `q = e^{iπ/p}`.
    pub fn quantum_dimension(&self) -> f64 {
        let t = std::f64::consts::PI / self.p as f64;
        self.mults
            .iter()
            .enumerate()
            .map(|(i, &m)| m as f64 * ((i + 1) as f64 * t).sin() / t.sin())
            .sum()
    }
}

impl fmt::Display for FusionElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .mults
            .iter()
            .enumerate()
            .filter(|(_, &m)| m != 0)
            .map(|(i, &m)| if m == 1 { format!("{{{}}}", i + 1) } else { format!("{m}{{{}}}", i + 1) })
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Structure constants `{j}∘{k} = Σ_l N[j][k][l] {l}` (0-based).
#[derive(Clone, Debug)]
pub struct FusionRing {
    p: u32,
    constants: Vec<Vec<Vec<i64>>>,
}

impl FusionRing {
    /// Derived from `{2}∘{k} = {k+1} + {k-1}` (truncated at `p-1`) via
    /// `{j+1} = {2}∘{j} - {j-1}`.
    pub fn new(p: u32) -> Result<Self> {
        if p < 3 || p % 2 == 0 {
            return Err(Error::OutOfRange(format!("fusion ring needs odd p >= 3, got {p}")));
        }
        let r = p as usize - 1;
        let mut two = vec![vec![0i64; r]; r];
        for k in 0..r {
            if k + 1 < r {
                two[k][k + 1] = 1;
            }
            if k > 0 {
                two[k][k - 1] = 1;
            }
        }
        let mut rows: Vec<Vec<Vec<i64>>> = Vec::with_capacity(r);
        rows.push((0..r).map(|k| (0..r).map(|l| i64::from(k == l)).collect()).collect());
        if r > 1 {
            rows.push(two.clone());
        }
        for j in 2..r {
            let next: Vec<Vec<i64>> = (0..r)
                .map(|k| {
                    (0..r)
                        .map(|l| {
                            let via_two: i64 = (0..r).map(|m| rows[j - 1][k][m] * two[m][l]).sum();
                            via_two - rows[j - 2][k][l]
                        })
                        .collect()
                })
                .collect();
            rows.push(next);
        }
        if rows.iter().flatten().flatten().any(|&x| x < 0) {
            return Err(Error::Precondition("negative fusion coefficient".into()));
        }
        Ok(Self { p, constants: rows })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// `N_{jk}^l` with 1-based labels.
    pub fn constant(&self, j: u32, k: u32, l: u32) -> i64 {
        self.constants[j as usize - 1][k as usize - 1][l as usize - 1]
    }

    pub fn multiply(&self, a: &FusionElement, b: &FusionElement) -> FusionElement {
        assert!(a.p == self.p && b.p == self.p, "fusion elements for a different p");
        let r = self.p as usize - 1;
        let mut out = vec![0i64; r];
        for (j, &x) in a.mults.iter().enumerate().filter(|(_, &x)| x != 0) {
            for (k, &y) in b.mults.iter().enumerate().filter(|(_, &y)| y != 0) {
                let xy = checked::mul(x, y);
                for (l, slot) in out.iter_mut().enumerate() {
                    *slot = checked::add(*slot, checked::mul(xy, self.constants[j][k][l]));
                }
            }
        }
        FusionElement { p: self.p, mults: out }
    }

    pub fn power(&self, a: &FusionElement, g: u32) -> FusionElement {
        let one = FusionElement::label(self.p, 1).expect("unit label");
        (0..g).fold(one, |acc, _| self.multiply(&acc, a))
    }

    /// `f_p = 2{1} + {2}`.
    pub fn f_element(&self) -> FusionElement {
        let one = FusionElement::label(self.p, 1).expect("unit label");
        let two = FusionElement::label(self.p, 2).expect("label 2");
        one.scale(2).add(&two)
    }

    /// `F_p = Σ_j {2j+1}∘{2j+1}`.
    pub fn big_f(&self) -> FusionElement {
        (1..self.p)
            .step_by(2)
            .map(|k| {
                let l = FusionElement::label(self.p, k).expect("label");
                self.multiply(&l, &l)
            })
            .fold(FusionElement::zero(self.p), |acc, x| acc.add(&x))
    }

    /// `F*_p = Σ_k {k}∘{k}` over all labels.
    pub fn big_f_star(&self) -> FusionElement {
        (1..self.p)
            .map(|k| {
                let l = FusionElement::label(self.p, k).expect("label");
                self.multiply(&l, &l)
            })
            .fold(FusionElement::zero(self.p), |acc, x| acc.add(&x))
    }

    /// Matrix of multiplication by `a`, entry `[l][k]` the multiplicity of `{l}` in `a∘{k}`.
    pub fn multiplication_matrix(&self, a: &FusionElement) -> Vec<Vec<f64>> {
        let r = self.p as usize - 1;
        let mut m = vec![vec![0.0; r]; r];
        for k in 0..r {
            let col = self.multiply(a, &FusionElement::label(self.p, k as u32 + 1).expect("label"));
            for (l, &x) in col.mults.iter().enumerate() {
                m[l][k] = x as f64;
            }
        }
        m
    }
}

/// Multiplicity of `{k}` in `f_p^g`.
pub fn verlinde_dim(p: u32, k: u32, g: u32) -> Result<i64> {
    let ring = FusionRing::new(p)?;
    if k == 0 || k >= p {
        return Err(Error::OutOfRange(format!("label {k} outside 1..{}", p - 1)));
    }
    Ok(ring.power(&ring.f_element(), g).mult(k))
}

/// `Σ_n 2^{g-n} binom(g, n) d_k^n` over `n ≡ k - 1 (mod 2)`, `k - 1 <= n <= g`.
pub fn assembled_dim(p: u32, k: u32, g: u32) -> Result<i64> {
    let mut acc = 0i64;
    for n in (k.saturating_sub(1)..=g).filter(|n| (n + 1 + k) % 2 == 0) {
        let w = checked::mul(checked::pow(2, g - n), binomial(g as i64, n as i64));
        acc = checked::add(acc, checked::mul(w, d_dim(p, n, k)?));
    }
    Ok(acc)
}

/// Closed forms for `dim D^{(k)}(Σ_g)` at `p = 5`, indexed `k = 1..=4`.
pub fn p5_closed_forms(g: u32) -> [i64; 4] {
    let g = g as i64;
    let (scale, low, high) = if g % 2 == 0 {
        (checked::pow(5, (g / 2) as u32), fib(g - 1), fib(g))
    } else {
        let s = checked::pow(5, ((g - 1) / 2) as u32);
        (s, checked::add(fib(g - 2), fib(g)), checked::add(fib(g - 1), fib(g + 1)))
    };
    let a = checked::mul(scale, low);
    let b = checked::mul(scale, high);
    let (odd, even) = (fib(2 * g + 1), fib(2 * g));
    [
        checked::add(a, odd) / 2,
        checked::add(b, even) / 2,
        checked::sub(b, even) / 2,
        checked::sub(a, odd) / 2,
    ]
}

/// Integer polynomial, coefficients in ascending degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntPoly(pub Vec<i64>);

impl IntPoly {
    fn trim(mut self) -> Self {
        while self.0.last() == Some(&0) {
            self.0.pop();
        }
        self
    }

    fn add(&self, other: &Self) -> Self {
        let n = self.0.len().max(other.0.len());
        let get = |v: &Vec<i64>, i: usize| v.get(i).copied().unwrap_or(0);
        IntPoly((0..n).map(|i| checked::add(get(&self.0, i), get(&other.0, i))).collect()).trim()
    }

    fn scale(&self, k: i64) -> Self {
        IntPoly(self.0.iter().map(|&a| checked::mul(a, k)).collect()).trim()
    }

    fn mul(&self, other: &Self) -> Self {
        if self.0.is_empty() || other.0.is_empty() {
            return IntPoly(vec![]);
        }
        let mut out = vec![0i64; self.0.len() + other.0.len() - 1];
        for (i, &a) in self.0.iter().enumerate() {
            for (j, &b) in other.0.iter().enumerate() {
                out[i + j] = checked::add(out[i + j], checked::mul(a, b));
            }
        }
        IntPoly(out).trim()
    }

    pub fn eval(&self, x: i64) -> i64 {
        self.0.iter().rev().fold(0, |acc, &c| checked::add(checked::mul(acc, x), c))
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, &c) in self.0.iter().enumerate().rev().filter(|(_, &c)| c != 0) {
            let mag = c.abs();
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c < 0 { '-' } else { '+' })?;
            }
            first = false;
            match (e, mag) {
                (0, m) => write!(f, "{m}")?,
                (1, 1) => write!(f, "f")?,
                (1, m) => write!(f, "{m}f")?,
                (e, 1) => write!(f, "f^{e}")?,
                (e, m) => write!(f, "{m}f^{e}")?,
            }
        }
        Ok(())
    }
}

/// `R_p(f) = Σ_{j=0}^{(p-3)/2} n_j P_j(f - 2)` with Chebyshev `P_j`.
pub fn tschebycheff_r(p: u32) -> Result<IntPoly> {
    if p < 3 || p % 2 == 0 {
        return Err(Error::OutOfRange(format!("R_p needs odd p >= 3, got {p}")));
    }
    let x = IntPoly(vec![-2, 1]);
    let mut prev = IntPoly(vec![1]);
    let mut cur = x.clone();
    let mut acc = IntPoly(vec![]);
    for j in 0..=(p as i64 - 3) / 2 {
        let n_j = if j % 2 == 0 { (p as i64 - 1 - j) / 2 } else { (j + 1) / 2 };
        acc = acc.add(&prev.scale(n_j));
        let next = x.mul(&cur).add(&prev.scale(-1));
        prev = cur;
        cur = next;
    }
    Ok(acc)
}

/// Closed-form and power-iteration spectral radii of multiplication by `f_p` and `F_p`.
#[derive(Clone, Debug, PartialEq)]
pub struct PerronNorms {
    pub f_closed: f64,
    pub f_iterated: f64,
    pub big_f_closed: f64,
    pub big_f_iterated: f64,
}

fn power_iteration(m: &[Vec<f64>]) -> f64 {
    let n = m.len();
    let mut v = vec![1.0f64; n];
    let mut lambda = 0.0;
    for _ in 0..20_000 {
        let w: Vec<f64> = (0..n).map(|i| (0..n).map(|j| m[i][j] * v[j]).sum()).collect();
        let norm = w.iter().map(|x| x * x).sum::<f64>().sqrt();
        let prev_norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        let next = norm / prev_norm;
        v = w.iter().map(|x| x / norm).collect();
        if (next - lambda).abs() < 1e-15 * next.max(1.0) {
            return next;
        }
        lambda = next;
    }
    lambda
}

pub fn perron_norms(p: u32) -> Result<PerronNorms> {
    let ring = FusionRing::new(p)?;
    let t = std::f64::consts::PI / p as f64;
    Ok(PerronNorms {
        f_closed: 4.0 * (t / 2.0).cos().powi(2),
        f_iterated: power_iteration(&ring.multiplication_matrix(&ring.f_element())),
        big_f_closed: p as f64 / (4.0 * t.sin().powi(2)),
        big_f_iterated: power_iteration(&ring.multiplication_matrix(&ring.big_f())),
    })
}

/// Both sides of `[2]^n_ζ = Σ_k d_k^n [k]_ζ` in `Z[ζ_p]`.
pub fn quantum_dim_identity(p: u32, n: u32) -> Result<(CyclotomicElem, CyclotomicElem)> {
    crate::arith::checked::require_odd_prime(p)?;
    let z = CyclotomicElem::zeta_power(p, None, 1);
    let zi = z.conj();
    let two = quantum_integer(2, &z, &zi);
    let lhs = (0..n).fold(CyclotomicElem::one(p, None), |acc, _| acc.mul(&two));
    let mut rhs = CyclotomicElem::zero(p, None);
    for k in (1..p).filter(|k| (n + 1 + k) % 2 == 0) {
        rhs = rhs.add(&quantum_integer(k, &z, &zi).scale(d_dim(p, n, k)?));
    }
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_d_dims() {
        assert_eq!(d_dim(3, 4, 1).unwrap(), 1);
        assert_eq!(d_dim(5, 4, 3).unwrap(), 3);
        assert_eq!(d_dim(5, 4, 1).unwrap(), 2);
        assert!(d_dim(5, 4, 2).is_err());
        assert!(d_dim(5, 4, 7).is_err());
    }

    #[test]
    fn boundary_labels_vanish() {
        for p in [3u32, 5, 7] {
            for n in (1..20).step_by(2) {
                assert_eq!(d_dim(p, n, 0).unwrap(), 0);
            }
            for n in (0..20).step_by(2) {
                assert_eq!(d_dim(p, n, p).unwrap(), 0);
            }
        }
    }

    #[test]
    fn fibonacci_with_negative_indices() {
        assert_eq!((-3..=7).map(fib).collect::<Vec<_>>(), vec![2, -1, 1, 0, 1, 1, 2, 3, 5, 8, 13]);
    }

    #[test]
    fn first_fibonacci_catalan_sum() {
        assert_eq!(fibonacci_catalan_sums(3)[0], 8);
    }

    #[test]
    fn fusion_relations() {
        for p in [3u32, 5, 7, 11] {
            let ring = FusionRing::new(p).unwrap();
            for k in 1..p {
                let l = FusionElement::label(p, k).unwrap();
                let last = FusionElement::label(p, p - 1).unwrap();
                assert_eq!(ring.multiply(&last, &l), FusionElement::label(p, p - k).unwrap());
                let one = FusionElement::label(p, 1).unwrap();
                assert_eq!(ring.multiply(&one, &l), l);
            }
        }
    }

    #[test]
    fn f5_squared() {
        let ring = FusionRing::new(5).unwrap();
        let f2 = ring.power(&ring.f_element(), 2);
        assert_eq!(f2.mults(), &[5, 4, 1, 0]);
    }

    #[test]
    fn printed_r_polynomials() {
        assert_eq!(tschebycheff_r(3).unwrap(), IntPoly(vec![1]));
        assert_eq!(tschebycheff_r(5).unwrap(), IntPoly(vec![0, 1]));
        assert_eq!(tschebycheff_r(7).unwrap(), IntPoly(vec![7, -7, 2]));
        assert_eq!(tschebycheff_r(7).unwrap().to_string(), "2f^2 - 7f + 7");
    }

    #[test]
    fn p5_closed_forms_small_genus() {
        assert_eq!(p5_closed_forms(0), [1, 0, 0, 0]);
        assert_eq!(p5_closed_forms(1), [2, 1, 0, 0]);
        assert_eq!(p5_closed_forms(2), [5, 4, 1, 0]);
        assert_eq!(p5_closed_forms(3), [14, 14, 6, 1]);
    }
}
