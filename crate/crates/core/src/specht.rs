//! Two-row Specht lattices inside `L^n`: tabloids, polytabloids, the standard
//! basis, Gram matrices and ordinary characters.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::arith::checked;
use crate::arith::fp::reduce;
use crate::arith::{FpMatrix, IntMatrix};
use crate::tensor::{Perm, TensorVector};
use crate::{Error, Result};

/// The two-row diagram `[a, b]` with `a >= b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Diagram2 {
    pub a: usize,
    pub b: usize,
}

impl Diagram2 {
    pub fn new(a: usize, b: usize) -> Result<Self> {
        if a < b {
            return Err(Error::OutOfRange(format!("[{a},{b}] has a shorter first row")));
        }
        Ok(Self { a, b })
    }

    /// The diagram of `n` boxes whose Specht lattice has highest weight `c - 1`.
    pub fn from_weight(n: usize, c: usize) -> Result<Self> {
        if c == 0 || c > n + 1 {
            return Err(Error::OutOfRange(format!("c = {c} with n = {n}")));
        }
        if (n + 1 - c) % 2 != 0 {
            return Err(Error::Parity(format!("c = {c} and n + 1 = {} differ in parity", n + 1)));
        }
        let b = (n + 1 - c) / 2;
        Ok(Self { a: n - b, b })
    }

    pub fn n(self) -> usize {
        self.a + self.b
    }

    /// `c = a - b + 1`.
    pub fn c(self) -> usize {
        self.a - self.b + 1
    }
}

impl fmt::Display for Diagram2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.a, self.b)
    }
}

/// A two-row tabloid, recorded by its bottom row.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Tabloid2 {
    pub n: usize,
    pub bottom: u32,
}

impl Tabloid2 {
    /// `e_{{t}}`: `e₊` on bottom-row entries, `e₋` on top-row entries.
    pub fn vector(self) -> TensorVector {
        TensorVector::from_terms(self.n, [(self.bottom, 1)])
    }
}

/// A two-row tableau. Column `k` is `(top[k], bottom[k])` for `k < bottom.len()`;
/// the remaining top entries sit in columns of height one.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tableau2 {
    pub top: Vec<usize>,
    pub bottom: Vec<usize>,
}

impl Tableau2 {
    pub fn new(top: Vec<usize>, bottom: Vec<usize>) -> Result<Self> {
        if top.len() < bottom.len() {
            return Err(Error::OutOfRange("bottom row longer than top row".into()));
        }
        Ok(Self { top, bottom })
    }

    pub fn diagram(&self) -> Diagram2 {
        Diagram2 { a: self.top.len(), b: self.bottom.len() }
    }

    pub fn entries(&self) -> Vec<usize> {
        let mut e: Vec<usize> = self.top.iter().chain(&self.bottom).copied().collect();
        e.sort_unstable();
        e
    }

    pub fn is_standard(&self) -> bool {
        let n = self.top.len() + self.bottom.len();
        let increasing = |r: &[usize]| r.windows(2).all(|w| w[0] < w[1]);
        self.entries() == (1..=n).collect::<Vec<_>>()
            && increasing(&self.top)
            && increasing(&self.bottom)
            && self.bottom.iter().zip(&self.top).all(|(j, i)| i < j)
    }

    /// Polytabloid `Π_k (1 - (i_k, j_k)) e_{{t}}` with entries placed by `pos`
    /// (a 0-based tensor position for each entry).
    pub fn polytabloid_with(&self, n: usize, pos: impl Fn(usize) -> usize) -> TensorVector {
        let b = self.bottom.len();
        let tops: Vec<u32> = self.top[..b].iter().map(|&x| 1u32 << pos(x)).collect();
        let bots: Vec<u32> = self.bottom.iter().map(|&x| 1u32 << pos(x)).collect();
        let mut v = TensorVector::zero(n);
        for s in 0u32..1 << b {
            let mut mask = 0u32;
            for k in 0..b {
                mask |= if s >> k & 1 == 1 { tops[k] } else { bots[k] };
            }
            v.add_term(mask, if s.count_ones() % 2 == 0 { 1 } else { -1 });
        }
        v
    }

    /// Polytabloid for a tableau filled with `1..=n`.
    pub fn polytabloid(&self) -> TensorVector {
        let n = self.top.len() + self.bottom.len();
        self.polytabloid_with(n, |x| x - 1)
    }

    /// Polytabloid for a tableau filled from the sorted label set `labels`,
    /// placing label `labels[r]` at position `r`.
    pub fn polytabloid_on(&self, labels: &[usize]) -> TensorVector {
        self.polytabloid_with(labels.len(), |x| {
            labels.binary_search(&x).expect("tableau entry outside label set")
        })
    }

    pub fn tabloid(&self) -> Tabloid2 {
        let n = self.top.len() + self.bottom.len();
        Tabloid2 { n, bottom: self.bottom.iter().fold(0, |m, &x| m | 1 << (x - 1)) }
    }
}

impl fmt::Display for Tableau2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}/{:?}", self.top, self.bottom)
    }
}

/// Standard tableaux of shape `d`, in lexicographic order of the bottom row.
pub fn standard_tableaux(d: Diagram2) -> Vec<Tableau2> {
    let n = d.n();
    let mut out = Vec::new();
    let mut bottom = Vec::with_capacity(d.b);
    fn rec(n: usize, b: usize, bottom: &mut Vec<usize>, out: &mut Vec<Tableau2>) {
        if bottom.len() == b {
            let top = (1..=n).filter(|x| !bottom.contains(x)).collect();
            out.push(Tableau2 { top, bottom: bottom.clone() });
            return;
        }
        let k = bottom.len() + 1;
        let lo = (2 * k).max(bottom.last().map_or(0, |&x| x + 1));
        for j in lo..=n {
            bottom.push(j);
            rec(n, b, bottom, out);
            bottom.pop();
        }
    }
    rec(n, d.b, &mut bottom, &mut out);
    out
}

fn position_sum(mask: u32) -> u32 {
    (0..32).filter(|j| mask >> j & 1 == 1).map(|j| j + 1).sum()
}

/// The standard polytabloid basis of `S^{{c}} ⊂ L^n`.
#[derive(Clone, Debug)]
pub struct SpechtBasis {
    diagram: Diagram2,
    tableaux: Vec<Tableau2>,
    vectors: Vec<TensorVector>,
    lead: HashMap<u32, usize>,
}

/// Specht basis for `n` and highest weight parameter `c`.
pub fn specht_basis(n: usize, c: usize) -> Result<SpechtBasis> {
    Ok(SpechtBasis::new(Diagram2::from_weight(n, c)?))
}

impl SpechtBasis {
    pub fn new(diagram: Diagram2) -> Self {
        let tableaux = standard_tableaux(diagram);
        let vectors: Vec<TensorVector> = tableaux.iter().map(Tableau2::polytabloid).collect();
        let lead = tableaux.iter().enumerate().map(|(i, t)| (t.tabloid().bottom, i)).collect();
        Self { diagram, tableaux, vectors, lead }
    }

    pub fn diagram(&self) -> Diagram2 {
        self.diagram
    }

    pub fn n(&self) -> usize {
        self.diagram.n()
    }

    pub fn c(&self) -> usize {
        self.diagram.c()
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn tableaux(&self) -> &[Tableau2] {
        &self.tableaux
    }

    pub fn vectors(&self) -> &[TensorVector] {
        &self.vectors
    }

    pub fn combine(&self, coords: &[i64]) -> TensorVector {
        assert_eq!(coords.len(), self.dim(), "coordinate length");
        self.vectors
            .iter()
            .zip(coords)
            .fold(TensorVector::zero(self.n()), |acc, (v, &c)| acc.add(&v.scale(c)))
    }

    // A standard polytabloid is its own tabloid plus tabloids of strictly
    // smaller position sum, so peeling off the largest term never divides.
    fn solve(&self, v: &TensorVector, modulus: Option<u32>) -> Result<Vec<i64>> {
        if v.n() != self.n() {
            return Err(Error::DimensionMismatch { expected: self.n(), found: v.n() });
        }
        let norm = |c: i64| match modulus {
            Some(p) => reduce(c, p) as i64,
            None => c,
        };
        let mut work: BTreeMap<(u32, u32), i64> = BTreeMap::new();
        for (m, c) in v.terms() {
            let c = norm(c);
            if c != 0 {
                work.insert((position_sum(m), m), c);
            }
        }
        let mut out = vec![0i64; self.dim()];
        while let Some((&(_, m), &c)) = work.iter().next_back() {
            let idx = *self.lead.get(&m).ok_or_else(|| {
                Error::NotInSpan(format!("tabloid {m:#b} is not a standard leading term of {}", self.diagram))
            })?;
            out[idx] = c;
            for (m2, c2) in self.vectors[idx].terms() {
                let key = (position_sum(m2), m2);
                let slot = work.entry(key).or_insert(0);
                *slot = norm(checked::sub(*slot, checked::mul(c, c2)));
                if *slot == 0 {
                    work.remove(&key);
                }
            }
        }
        Ok(out)
    }

    /// Exact integer coordinates of `v` in the standard basis.
    pub fn coords(&self, v: &TensorVector) -> Result<Vec<i64>> {
        self.solve(v, None)
    }

    /// Coordinates of `v mod p` in the reduced basis.
    pub fn coords_mod(&self, v: &TensorVector, p: u32) -> Result<Vec<u32>> {
        Ok(self.solve(v, Some(p))?.into_iter().map(|c| c as u32).collect())
    }

    pub fn gram(&self) -> IntMatrix {
        let d = self.dim();
        let mut g = IntMatrix::zeros(d, d);
        for i in 0..d {
            for j in i..d {
                let x = self.vectors[i].inner(&self.vectors[j]);
                g.set(i, j, x);
                g.set(j, i, x);
            }
        }
        g
    }

    /// Matrix of `σ` (plain permutation action) in the standard basis.
    pub fn action_matrix(&self, sigma: &Perm) -> Result<IntMatrix> {
        let cols: Result<Vec<Vec<i64>>> =
            self.vectors.iter().map(|v| self.coords(&v.permute(sigma, false))).collect();
        Ok(IntMatrix::from_columns(self.dim(), &cols?))
    }

    pub fn character(&self, sigma: &Perm) -> Result<i64> {
        let mut tr = 0i64;
        for (i, v) in self.vectors.iter().enumerate() {
            tr = checked::add(tr, self.coords(&v.permute(sigma, false))?[i]);
        }
        Ok(tr)
    }

    /// `dim (ker F ∩ weight space)` over a large prime, for an independent span check.
    pub fn kernel_dimension_check(&self, q: u32) -> usize {
        let n = self.n();
        let b = self.diagram.b;
        let source: Vec<u32> = (0..1u32 << n).filter(|m| m.count_ones() as usize == b).collect();
        let target: Vec<u32> = (0..1u32 << n).filter(|m| m.count_ones() as usize + 1 == b).collect();
        if b == 0 {
            return source.len();
        }
        let index: HashMap<u32, usize> = target.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        let mut f = FpMatrix::zeros(target.len(), source.len(), q);
        for (j, &m) in source.iter().enumerate() {
            for (m2, c) in TensorVector::from_terms(n, [(m, 1)]).apply_f().terms() {
                f.set(index[&m2], j, reduce(c, q));
            }
        }
        source.len() - f.rank()
    }

    /// Rank of the basis vectors over `F_q`.
    pub fn rank_mod(&self, q: u32) -> usize {
        let n = self.n();
        let cols: Vec<Vec<u32>> = self
            .vectors
            .iter()
            .map(|v| {
                let mut col = vec![0u32; 1 << n];
                for (m, c) in v.terms() {
                    col[m as usize] = reduce(c, q);
                }
                col
            })
            .collect();
        FpMatrix::from_columns(q, 1 << n, &cols).rank()
    }
}

/// Character of `S^d` at `σ`.
pub fn ordinary_character(d: Diagram2, sigma: &Perm) -> Result<i64> {
    if sigma.len() != d.n() {
        return Err(Error::DimensionMismatch { expected: d.n(), found: sigma.len() });
    }
    SpechtBasis::new(d).character(sigma)
}

/// Partitions of `n` in non-increasing part order, listed in reverse lexicographic order.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for k in (1..=n.min(max)).rev() {
            cur.push(k);
            rec(n - k, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// Number of permutations of the given cycle type.
pub fn class_size(parts: &[usize]) -> i64 {
    let n: usize = parts.iter().sum();
    let mut z: i64 = 1;
    let mut counts: BTreeMap<usize, i64> = BTreeMap::new();
    for &k in parts {
        *counts.entry(k).or_insert(0) += 1;
    }
    for (&k, &m) in &counts {
        z = checked::mul(z, checked::pow(k as i64, m as u32));
        z = checked::mul(z, (1..=m).product());
    }
    (1..=n as i64).product::<i64>() / z
}

/// A lattice modulo the radical of its Gram form mod `p`. Quotient coordinates
/// refer to the pivot columns `P` of the Gram matrix, for which `G_{PP}` is invertible.
#[derive(Clone, Debug)]
pub struct QuotientSpace {
    p: u32,
    gram: FpMatrix,
    pivots: Vec<usize>,
    gram_pp_inv: FpMatrix,
    radical: Vec<Vec<u32>>,
}

impl QuotientSpace {
    /// Quotient of a lattice with Gram matrix `gram` by the radical of `gram mod p`.
    pub fn new(gram: &IntMatrix, p: u32) -> Self {
        Self::from_fp(gram.reduce(p), false)
    }

    /// Same quotient, but with the complement chosen by scanning columns right to left.
    pub fn new_reversed(gram: &IntMatrix, p: u32) -> Self {
        Self::from_fp(gram.reduce(p), true)
    }

    fn from_fp(gram: FpMatrix, reversed: bool) -> Self {
        let p = gram.prime();
        let d = gram.rows();
        let decomposition = gram.decompose();
        let pivots: Vec<usize> = if reversed {
            let order: Vec<usize> = (0..d).rev().collect();
            let all: Vec<usize> = (0..d).collect();
            let mut piv: Vec<usize> =
                gram.select(&all, &order).decompose().pivots.iter().map(|&c| order[c]).collect();
            piv.sort_unstable();
            piv
        } else {
            decomposition.pivots.clone()
        };
        let gram_pp_inv = gram
            .select(&pivots, &pivots)
            .inverse()
            .expect("principal minor on independent columns of a symmetric matrix is invertible");
        Self { p, gram, pivots, gram_pp_inv, radical: decomposition.kernel }
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn ambient_dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn radical(&self) -> &[Vec<u32>] {
        &self.radical
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn gram(&self) -> &FpMatrix {
        &self.gram
    }

    /// Quotient coordinates of an ambient vector.
    pub fn project(&self, y: &[u32]) -> Vec<u32> {
        let gy = self.gram.mul_vec(y);
        let sel: Vec<u32> = self.pivots.iter().map(|&i| gy[i]).collect();
        self.gram_pp_inv.mul_vec(&sel)
    }

    /// Ambient vector lifting quotient coordinates.
    pub fn lift(&self, z: &[u32]) -> Vec<u32> {
        let mut y = vec![0u32; self.ambient_dim()];
        for (&i, &c) in self.pivots.iter().zip(z) {
            y[i] = c;
        }
        y
    }

    pub fn contains_radical_vector(&self, y: &[u32]) -> bool {
        self.gram.mul_vec(y).iter().all(|&x| x == 0)
    }

    /// Matrix of the map induced on quotients by the ambient map `m`
    /// (columns indexed by `self`, rows by `target`).
    pub fn induced(&self, m: &FpMatrix, target: &QuotientSpace) -> Result<FpMatrix> {
        if m.cols() != self.ambient_dim() || m.rows() != target.ambient_dim() {
            return Err(Error::DimensionMismatch { expected: self.ambient_dim(), found: m.cols() });
        }
        for r in &self.radical {
            if !target.contains_radical_vector(&m.mul_vec(r)) {
                return Err(Error::Precondition("map does not preserve the radicals".into()));
            }
        }
        let cols: Vec<Vec<u32>> =
            self.pivots.iter().map(|&t| target.project(&m.column(t))).collect();
        Ok(FpMatrix::from_columns(self.p, target.dim(), &cols))
    }

    /// Restriction of the ambient map `m` to the radicals, in radical coordinates.
    pub fn restricted_to_radical(&self, m: &FpMatrix, target: &QuotientSpace) -> Result<FpMatrix> {
        let basis = FpMatrix::from_columns(self.p, target.ambient_dim(), &target.radical);
        let mut cols = Vec::with_capacity(self.radical.len());
        for r in &self.radical {
            let y = m.mul_vec(r);
            let x = basis
                .solve(&y)
                .ok_or_else(|| Error::NotInSpan("image of a radical vector leaves the radical".into()))?;
            cols.push(x);
        }
        Ok(FpMatrix::from_columns(self.p, target.radical.len(), &cols))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fusion::catalan;

    #[test]
    fn standard_counts_match_catalan_triangle() {
        for n in 0..=10 {
            for b in 0..=n / 2 {
                let d = Diagram2::new(n - b, b).unwrap();
                let ts = standard_tableaux(d);
                assert_eq!(ts.len() as i64, catalan(n as i64, b as i64));
                assert!(ts.iter().all(Tableau2::is_standard));
                let seqs: Vec<&Vec<usize>> = ts.iter().map(|t| &t.bottom).collect();
                assert!(seqs.windows(2).all(|w| w[0] < w[1]));
            }
        }
    }

    #[test]
    fn polytabloids_are_highest_weight() {
        for n in 0..=8 {
            for c in (1..=n + 1).filter(|c| (n + 1 - c) % 2 == 0) {
                let basis = specht_basis(n, c).unwrap();
                for v in basis.vectors() {
                    assert!(v.apply_f().is_zero());
                    assert_eq!(v.apply_h(), v.scale(1 - c as i64));
                }
                let q = 1_000_003;
                assert_eq!(basis.rank_mod(q), basis.dim());
                assert_eq!(basis.kernel_dimension_check(q), basis.dim());
            }
        }
    }

    #[test]
    fn coordinates_round_trip() {
        let basis = specht_basis(7, 2).unwrap();
        let coords: Vec<i64> = (0..basis.dim() as i64).map(|i| i * 3 - 7).collect();
        let v = basis.combine(&coords);
        assert_eq!(basis.coords(&v).unwrap(), coords);
        let reduced: Vec<u32> = coords.iter().map(|&c| reduce(c, 5)).collect();
        assert_eq!(basis.coords_mod(&v, 5).unwrap(), reduced);
        let stray = TensorVector::from_terms(7, [(0b11, 1)]);
        assert!(basis.coords(&stray).is_err());
    }

    #[test]
    fn characters_of_s4() {
        let expected = [
            (Diagram2 { a: 4, b: 0 }, [1, 1, 1, 1, 1]),
            (Diagram2 { a: 3, b: 1 }, [-1, -1, 0, 1, 3]),
            (Diagram2 { a: 2, b: 2 }, [0, 2, -1, 0, 2]),
        ];
        let classes = partitions(4);
        assert_eq!(classes, vec![vec![4], vec![3, 1], vec![2, 2], vec![2, 1, 1], vec![1, 1, 1, 1]]);
        let classes = [vec![4], vec![2, 2], vec![3, 1], vec![2, 1, 1], vec![1, 1, 1, 1]];
        for (d, row) in expected {
            for (cls, &chi) in classes.iter().zip(&row) {
                let sigma = Perm::cycle_type_representative(cls);
                assert_eq!(ordinary_character(d, &sigma).unwrap(), chi, "{d} at {cls:?}");
            }
        }
    }

    #[test]
    fn class_sizes_sum_to_factorial() {
        for n in 1..=8 {
            let total: i64 = partitions(n).iter().map(|c| class_size(c)).sum();
            assert_eq!(total, (1..=n as i64).product::<i64>());
        }
    }

    #[test]
    fn quotient_complement_is_irrelevant() {
        let basis = specht_basis(6, 1).unwrap();
        let g = basis.gram();
        let q1 = QuotientSpace::new(&g, 3);
        let q2 = QuotientSpace::new_reversed(&g, 3);
        assert_eq!(q1.dim(), q2.dim());
        let sigma = Perm::cycle_type_representative(&[3, 2, 1]);
        let a = basis.action_matrix(&sigma).unwrap().reduce(3);
        assert_eq!(q1.induced(&a, &q1).unwrap().trace(), q2.induced(&a, &q2).unwrap().trace());
    }
}
