use std::collections::{BTreeMap, HashMap};

use super::exterior::ExteriorVector;
use super::symplectic::SpWord;
use super::weights::{weight_decompose, Weight};
use crate::arith::checked::{self, binomial, require_odd_prime};
use crate::arith::fp::reduce;
use crate::arith::{FpMatrix, IntMatrix};
use crate::fusion::catalan;
use crate::specht::{Diagram2, QuotientSpace, SpechtBasis};
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct LefschetzBlock {
    pub weight: Weight,
    pub offset: usize,
    pub specht: SpechtBasis,
}

/// Basis of `V^{(j)}(Σ_g) = ker F ∩ ∧^{g-j+1}H`: for each `λ ∈ ∇_g^{(j)}`, the
/// images under `Υ_λ` of the standard basis of `S^{{j}} ⊂ L^{n(λ)}`.
#[derive(Clone, Debug)]
pub struct LefschetzBasis {
    g: usize,
    j: usize,
    blocks: Vec<LefschetzBlock>,
    vectors: Vec<ExteriorVector>,
    index: BTreeMap<Weight, usize>,
}

impl LefschetzBasis {
    pub fn new(g: usize, j: usize) -> Result<Self> {
        if j == 0 {
            return Err(Error::OutOfRange("Lefschetz label j must be >= 1".into()));
        }
        let mut blocks = Vec::new();
        let mut vectors = Vec::new();
        let mut index = BTreeMap::new();
        let mut cache: HashMap<usize, SpechtBasis> = HashMap::new();
        for weight in Weight::lefschetz_weights(g, j) {
            let n = weight.n();
            let specht = cache
                .entry(n)
                .or_insert_with(|| SpechtBasis::new(Diagram2::from_weight(n, j).expect("n >= j - 1 with matching parity")))
                .clone();
            index.insert(weight.clone(), blocks.len());
            let offset = vectors.len();
            for x in specht.vectors() {
                vectors.push(weight.upsilon(x)?);
            }
            blocks.push(LefschetzBlock { weight, offset, specht });
        }
        Ok(Self { g, j, blocks, vectors, index })
    }

    pub fn genus(&self) -> usize {
        self.g
    }

    pub fn label(&self) -> usize {
        self.j
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    /// Exterior degree `g - j + 1` (meaningless when the space is zero).
    pub fn degree(&self) -> i64 {
        self.g as i64 - self.j as i64 + 1
    }

    pub fn blocks(&self) -> &[LefschetzBlock] {
        &self.blocks
    }

    pub fn block_of(&self, weight: &Weight) -> Option<&LefschetzBlock> {
        self.index.get(weight).map(|&b| &self.blocks[b])
    }

    pub fn vectors(&self) -> &[ExteriorVector] {
        &self.vectors
    }

    fn solve(&self, v: &ExteriorVector, modulus: Option<u32>) -> Result<Vec<i64>> {
        let mut out = vec![0i64; self.dim()];
        for (weight, part) in weight_decompose(v) {
            let part = match modulus {
                Some(p) => part.reduce_mod(p),
                None => part,
            };
            if part.is_zero() {
                continue;
            }
            let &b = self
                .index
                .get(&weight)
                .ok_or_else(|| Error::NotInSpan(format!("weight {weight} is not in ∇^({})", self.j)))?;
            let block = &self.blocks[b];
            let x = weight.upsilon_inverse(&part)?;
            let coords = match modulus {
                Some(p) => block.specht.coords_mod(&x, p)?.into_iter().map(i64::from).collect(),
                None => block.specht.coords(&x)?,
            };
            out[block.offset..block.offset + coords.len()].copy_from_slice(&coords);
        }
        Ok(out)
    }

    pub fn coords(&self, v: &ExteriorVector) -> Result<Vec<i64>> {
        self.solve(v, None)
    }

    pub fn coords_mod(&self, v: &ExteriorVector, p: u32) -> Result<Vec<u32>> {
        Ok(self.solve(v, Some(p))?.into_iter().map(|c| c as u32).collect())
    }

    pub fn combine(&self, coords: &[i64]) -> ExteriorVector {
        self.vectors
            .iter()
            .zip(coords)
            .fold(ExteriorVector::zero(self.g), |acc, (v, &c)| acc.add(&v.scale(c)))
    }

    pub fn gram(&self) -> IntMatrix {
        let d = self.dim();
        let mut m = IntMatrix::zeros(d, d);
        for block in &self.blocks {
            let r = block.offset..block.offset + block.specht.dim();
            for i in r.clone() {
                for k in r.clone() {
                    m.set(i, k, self.vectors[i].inner(&self.vectors[k]));
                }
            }
        }
        m
    }

    /// Integer matrix of `f` from this space into `target`.
    pub fn map_matrix<F>(&self, target: &LefschetzBasis, f: F) -> Result<IntMatrix>
    where
        F: Fn(&ExteriorVector) -> Result<ExteriorVector>,
    {
        let cols = self.vectors.iter().map(|v| target.coords(&f(v)?)).collect::<Result<Vec<_>>>()?;
        Ok(IntMatrix::from_columns(target.dim(), &cols))
    }

    /// Matrix of `f` mod `p`, solving each image in `target` after reduction.
    pub fn map_matrix_mod<F>(&self, target: &LefschetzBasis, p: u32, f: F) -> Result<FpMatrix>
    where
        F: Fn(&ExteriorVector) -> Result<ExteriorVector>,
    {
        let cols = self.vectors.iter().map(|v| target.coords_mod(&f(v)?, p)).collect::<Result<Vec<_>>>()?;
        Ok(FpMatrix::from_columns(p, target.dim(), &cols))
    }

    pub fn action_matrix(&self, word: &SpWord) -> Result<IntMatrix> {
        self.map_matrix(self, |v| word.apply(v))
    }

    pub fn trace(&self, word: &SpWord) -> Result<i64> {
        let mut tr = 0i64;
        for (i, v) in self.vectors.iter().enumerate() {
            tr = checked::add(tr, self.coords(&word.apply(v)?)?[i]);
        }
        Ok(tr)
    }
}

/// `Σ_n binom(g, n) 2^{g-n} C(n, (n - j + 1)/2)`.
pub fn lefschetz_dim_formula(g: usize, j: usize) -> i64 {
    (0..=g)
        .filter(|&n| n + 1 >= j && (n + 1 - j) % 2 == 0)
        .map(|n| {
            let w = checked::mul(binomial(g as i64, n as i64), 1i64 << (g - n));
            checked::mul(w, catalan(n as i64, ((n + 1 - j) / 2) as i64))
        })
        .fold(0, checked::add)
}

/// `dim (ker F ∩ ∧^{g-j+1})` by elimination over `F_q`, independent of the basis.
pub fn kernel_dim_check(g: usize, j: usize, q: u32) -> usize {
    let d = g as i64 - j as i64 + 1;
    if d < 0 {
        return 0;
    }
    let src = ExteriorVector::monomials_of_degree(g, d as usize);
    if d < 2 {
        return src.len();
    }
    let dst = ExteriorVector::monomials_of_degree(g, d as usize - 2);
    let pos: HashMap<u32, usize> = dst.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let mut f = FpMatrix::zeros(dst.len(), src.len(), q);
    for (c, &m) in src.iter().enumerate() {
        for (m2, x) in ExteriorVector::monomial(g, m).apply_f().terms() {
            f.set(pos[&m2], c, reduce(x, q));
        }
    }
    src.len() - f.rank()
}

/// `V_p^{(j)}(Σ_g)` with its Gram radical and simple quotient.
#[derive(Clone, Debug)]
pub struct ModSpace {
    pub p: u32,
    pub basis: LefschetzBasis,
    pub quotient: QuotientSpace,
}

impl ModSpace {
    pub fn new(p: u32, g: usize, j: usize) -> Result<Self> {
        require_odd_prime(p)?;
        let basis = LefschetzBasis::new(g, j)?;
        let quotient = QuotientSpace::new(&basis.gram(), p);
        Ok(Self { p, basis, quotient })
    }

    /// `dim V̄_p^{(j)}`.
    pub fn quotient_dim(&self) -> usize {
        self.quotient.dim()
    }

    pub fn action_full(&self, word: &SpWord) -> Result<FpMatrix> {
        Ok(self.basis.action_matrix(word)?.reduce(self.p))
    }

    /// Matrix of the word on `V̄_p^{(j)}`; fails if the radical is not preserved.
    pub fn action_quotient(&self, word: &SpWord) -> Result<FpMatrix> {
        self.quotient.induced(&self.action_full(word)?, &self.quotient)
    }
}

/// Trace of a word on `V̄_p^{(j)}(Σ_g)`.
pub fn modular_quotient_trace(p: u32, j: usize, word: &SpWord, g: usize) -> Result<u32> {
    Ok(ModSpace::new(p, g, j)?.action_quotient(word)?.trace())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn genus_two_dimensions() {
        assert_eq!(LefschetzBasis::new(2, 1).unwrap().dim(), 5);
        assert_eq!(lefschetz_dim_formula(3, 1), 14);
        for g in 0..=4 {
            for j in 1..=g + 2 {
                let b = LefschetzBasis::new(g, j).unwrap();
                assert_eq!(b.dim() as i64, lefschetz_dim_formula(g, j));
                assert_eq!(b.dim(), kernel_dim_check(g, j, 1_000_003));
                for v in b.vectors() {
                    assert!(v.apply_f().is_zero());
                    if !v.is_zero() {
                        assert_eq!(v.degree().unwrap(), Some(g + 1 - j));
                    }
                }
            }
        }
    }

    #[test]
    fn gram_matches_specht_gram() {
        let b = LefschetzBasis::new(3, 2).unwrap();
        let g = b.gram();
        for block in b.blocks() {
            let sg = block.specht.gram();
            for i in 0..block.specht.dim() {
                for k in 0..block.specht.dim() {
                    assert_eq!(g.get(block.offset + i, block.offset + k), sg.get(i, k));
                }
            }
        }
    }

    #[test]
    fn identity_word_traces_dimension() {
        let b = LefschetzBasis::new(2, 1).unwrap();
        assert_eq!(b.trace(&SpWord::default()).unwrap(), 5);
    }
}
