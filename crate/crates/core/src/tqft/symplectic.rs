use std::fmt;

use rand::Rng;

use super::exterior::ExteriorVector;
use crate::arith::{checked, IntMatrix};
use crate::{Error, Result};

/// The matrix `Ω` of the intersection form, `(x, y) = xᵀ Ω y` with `(a_i, b_i) = 1`.
pub fn symplectic_form(g: usize) -> IntMatrix {
    let mut m = IntMatrix::zeros(2 * g, 2 * g);
    for i in 0..g {
        m.set(i, g + i, 1);
        m.set(g + i, i, -1);
    }
    m
}

pub fn is_symplectic(m: &IntMatrix, g: usize) -> bool {
    let w = symplectic_form(g);
    m.rows() == 2 * g && m.cols() == 2 * g && m.transpose().mul(&w).mul(m) == w
}

/// Coordinates of a degree-one vector.
pub fn h_coords(x: &ExteriorVector) -> Result<Vec<i64>> {
    let g = x.genus();
    let mut v = vec![0i64; 2 * g];
    for (m, c) in x.terms() {
        if m.count_ones() != 1 {
            return Err(Error::Precondition(format!("{x} is not in H")));
        }
        v[m.trailing_zeros() as usize] = c;
    }
    Ok(v)
}

/// `(x, y)` for `x, y ∈ H`.
pub fn pairing(x: &ExteriorVector, y: &ExteriorVector) -> Result<i64> {
    let w = symplectic_form(x.genus());
    let (u, v) = (h_coords(x)?, h_coords(y)?);
    Ok(u.iter().zip(w.mul_vec(&v)).fold(0, |acc, (&a, b)| checked::add(acc, checked::mul(a, b))))
}

/// A generator of the symplectic group or of its Lie algebra acting on `∧*H`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SpToken {
    /// `e_{α_i}`: `a_{i+1} ↦ a_i`, `b_i ↦ -b_{i+1}` for `i < g`; `b_g ↦ a_g`.
    LieE(usize),
    /// `f_{α_i} = e_{α_i}ᵀ`.
    LieF(usize),
    /// `S_j`: `a_j ↦ -b_j`, `b_j ↦ a_j`.
    S(usize),
    /// Handle permutation, 1-based images: `a_i ↦ a_{σ(i)}`, `b_i ↦ b_{σ(i)}`.
    Perm(Vec<usize>),
    /// `x ↦ x + (v, x) v`.
    Transvection(Vec<i64>),
    /// Transvection along `a_i`.
    TwistA(usize),
    /// Transvection along `b_i`.
    TwistB(usize),
    /// Transvection along `b_i - b_{i+1}`.
    TwistC(usize),
    /// Explicit integral symplectic matrix, columns are images of the generators.
    Matrix(IntMatrix),
}

impl SpToken {
    pub fn is_lie(&self) -> bool {
        matches!(self, SpToken::LieE(_) | SpToken::LieF(_))
    }

    /// Matrix on `H` (for Lie tokens, the derivation's matrix).
    pub fn linear_map(&self, g: usize) -> Result<IntMatrix> {
        let in_range = |i: usize| {
            if i == 0 || i > g {
                Err(Error::InvalidToken(format!("{self} needs 1 <= index <= {g}")))
            } else {
                Ok(())
            }
        };
        let mut m = IntMatrix::zeros(2 * g, 2 * g);
        match self {
            SpToken::LieE(i) | SpToken::LieF(i) => {
                in_range(*i)?;
                let i = *i - 1;
                if i + 1 < g {
                    m.set(i, i + 1, 1);
                    m.set(g + i + 1, g + i, -1);
                } else {
                    m.set(i, g + i, 1);
                }
                if matches!(self, SpToken::LieF(_)) {
                    m = m.transpose();
                }
            }
            SpToken::S(j) => {
                in_range(*j)?;
                m = IntMatrix::identity(2 * g);
                let j = *j - 1;
                m.set(j, j, 0);
                m.set(g + j, g + j, 0);
                m.set(g + j, j, -1);
                m.set(j, g + j, 1);
            }
            SpToken::Perm(images) => {
                let mut sorted = images.clone();
                sorted.sort_unstable();
                if images.len() != g || sorted != (1..=g).collect::<Vec<_>>() {
                    return Err(Error::InvalidToken(format!("{self} is not a permutation of 1..{g}")));
                }
                for (i, &s) in images.iter().enumerate() {
                    m.set(s - 1, i, 1);
                    m.set(g + s - 1, g + i, 1);
                }
            }
            SpToken::TwistA(i) | SpToken::TwistB(i) | SpToken::TwistC(i) => {
                in_range(*i)?;
                let mut v = vec![0i64; 2 * g];
                match self {
                    SpToken::TwistA(_) => v[*i - 1] = 1,
                    SpToken::TwistB(_) => v[g + *i - 1] = 1,
                    _ => {
                        if *i >= g {
                            return Err(Error::InvalidToken(format!("{self} needs i < {g}")));
                        }
                        v[g + *i - 1] = 1;
                        v[g + *i] = -1;
                    }
                }
                return SpToken::Transvection(v).linear_map(g);
            }
            SpToken::Transvection(v) => {
                if v.len() != 2 * g {
                    return Err(Error::InvalidToken(format!("{self} needs {} coordinates", 2 * g)));
                }
                let w = symplectic_form(g);
                let wv = w.transpose().mul_vec(v);
                m = IntMatrix::identity(2 * g);
                for col in 0..2 * g {
                    for row in 0..2 * g {
                        let x = checked::add(m.get(row, col), checked::mul(wv[col], v[row]));
                        m.set(row, col, x);
                    }
                }
            }
            SpToken::Matrix(a) => {
                if !is_symplectic(a, g) {
                    return Err(Error::InvalidToken("matrix is not integral symplectic".into()));
                }
                m = a.clone();
            }
        }
        Ok(m)
    }

    pub fn apply(&self, v: &ExteriorVector) -> Result<ExteriorVector> {
        let g = v.genus();
        let m = self.linear_map(g)?;
        let images: Vec<ExteriorVector> = (0..2 * g)
            .map(|j| ExteriorVector::from_terms(g, (0..2 * g).map(|i| (1u32 << i, m.get(i, j)))))
            .collect();
        let mut out = ExteriorVector::zero(g);
        for (mask, c) in v.terms() {
            let factors: Vec<usize> = (0..2 * g).filter(|b| mask >> b & 1 == 1).collect();
            let image = if self.is_lie() {
                let mut acc = ExteriorVector::zero(g);
                for k in 0..factors.len() {
                    let term = factors.iter().enumerate().fold(ExteriorVector::one(g), |t, (l, &b)| {
                        t.wedge(&if l == k { images[b].clone() } else { ExteriorVector::monomial(g, 1 << b) })
                    });
                    acc = acc.add(&term);
                }
                acc
            } else {
                factors.iter().fold(ExteriorVector::one(g), |t, &b| t.wedge(&images[b]))
            };
            out = out.add(&image.scale(c));
        }
        Ok(out)
    }

    pub fn parse(s: &str) -> Result<Self> {
        let bad = || Error::InvalidToken(s.to_string());
        let num = |t: &str| t.parse::<usize>().map_err(|_| bad());
        if let Some(rest) = s.strip_prefix('P') {
            let images = rest.split(',').map(num).collect::<Result<Vec<_>>>()?;
            return Ok(SpToken::Perm(images));
        }
        if !s.is_char_boundary(1) || !s.is_char_boundary(2.min(s.len())) {
            return Err(bad());
        }
        match s.split_at(1.min(s.len())) {
            ("e", i) => Ok(SpToken::LieE(num(i)?)),
            ("f", i) => Ok(SpToken::LieF(num(i)?)),
            ("S", j) => Ok(SpToken::S(num(j)?)),
            ("T", rest) if rest.len() >= 2 => match rest.split_at(1) {
                ("a", i) => Ok(SpToken::TwistA(num(i)?)),
                ("b", i) => Ok(SpToken::TwistB(num(i)?)),
                ("c", i) => Ok(SpToken::TwistC(num(i)?)),
                _ => Err(bad()),
            },
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for SpToken {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpToken::LieE(i) => write!(f, "e{i}"),
            SpToken::LieF(i) => write!(f, "f{i}"),
            SpToken::S(j) => write!(f, "S{j}"),
            SpToken::Perm(images) => {
                let parts: Vec<String> = images.iter().map(usize::to_string).collect();
                write!(f, "P{}", parts.join(","))
            }
            SpToken::TwistA(i) => write!(f, "Ta{i}"),
            SpToken::TwistB(i) => write!(f, "Tb{i}"),
            SpToken::TwistC(i) => write!(f, "Tc{i}"),
            SpToken::Transvection(v) => write!(f, "T{v:?}"),
            SpToken::Matrix(_) => write!(f, "M"),
        }
    }
}

/// A product of tokens; `apply` acts with the rightmost token first.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SpWord(pub Vec<SpToken>);

impl SpWord {
    /// Whitespace-separated tokens: `e<i>`, `f<i>`, `S<j>`, `P<σ(1)>,...,<σ(g)>`,
    /// `Ta<i>`, `Tb<i>`, `Tc<i>`.
    pub fn parse(s: &str) -> Result<Self> {
        Ok(Self(s.split_whitespace().map(SpToken::parse).collect::<Result<_>>()?))
    }

    pub fn tokens(&self) -> &[SpToken] {
        &self.0
    }

    pub fn is_group_word(&self) -> bool {
        self.0.iter().all(|t| !t.is_lie())
    }

    pub fn validate(&self, g: usize) -> Result<()> {
        for t in &self.0 {
            t.linear_map(g)?;
        }
        Ok(())
    }

    pub fn apply(&self, v: &ExteriorVector) -> Result<ExteriorVector> {
        let mut out = v.clone();
        for t in self.0.iter().rev() {
            out = t.apply(&out)?;
        }
        Ok(out)
    }

    /// Matrix on `H` of a group word.
    pub fn linear_map(&self, g: usize) -> Result<IntMatrix> {
        if !self.is_group_word() {
            return Err(Error::InvalidToken("Lie tokens have no group matrix".into()));
        }
        let mut m = IntMatrix::identity(2 * g);
        for t in &self.0 {
            m = m.mul(&t.linear_map(g)?);
        }
        Ok(m)
    }

    /// Inverse of a group word, as a single matrix token.
    pub fn inverse(&self, g: usize) -> Result<Self> {
        let m = self.linear_map(g)?;
        let w = symplectic_form(g);
        let inv = w.mul(&m.transpose()).mul(&w).scale(-1);
        Ok(Self(vec![SpToken::Matrix(inv)]))
    }

    /// Group product `self · other`.
    pub fn then(&self, other: &Self) -> Self {
        Self(self.0.iter().chain(&other.0).cloned().collect())
    }

    /// A seeded random group word built from `S_j`, adjacent handle swaps and twists.
    pub fn random_group_word<R: Rng>(rng: &mut R, g: usize, max_len: usize) -> Self {
        let len = rng.gen_range(1..=max_len);
        let tokens = (0..len)
            .map(|_| {
                let i = rng.gen_range(1..=g);
                match rng.gen_range(0..5) {
                    0 => SpToken::S(i),
                    1 if g > 1 => {
                        let i = rng.gen_range(1..g);
                        let mut images: Vec<usize> = (1..=g).collect();
                        images.swap(i - 1, i);
                        SpToken::Perm(images)
                    }
                    2 => SpToken::TwistA(i),
                    3 => SpToken::TwistB(i),
                    _ if g > 1 => SpToken::TwistC(rng.gen_range(1..g)),
                    _ => SpToken::TwistB(i),
                }
            })
            .collect();
        Self(tokens)
    }
}

impl fmt::Display for SpWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(SpToken::to_string).collect();
        write!(f, "{}", parts.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s_token_and_perm_examples() {
        let g = 2;
        let a1 = ExteriorVector::a(g, 1);
        assert_eq!(SpToken::S(1).apply(&a1).unwrap(), ExteriorVector::b(g, 1).scale(-1));
        let x = a1.wedge(&ExteriorVector::b(g, 2));
        let y = SpToken::Perm(vec![2, 1]).apply(&x).unwrap();
        assert_eq!(y, ExteriorVector::a(g, 2).wedge(&ExteriorVector::b(g, 1)));
    }

    #[test]
    fn group_tokens_are_symplectic() {
        let g = 3;
        let tokens = [
            SpToken::S(2),
            SpToken::Perm(vec![3, 1, 2]),
            SpToken::TwistA(1),
            SpToken::TwistB(3),
            SpToken::TwistC(2),
        ];
        for t in tokens {
            assert!(is_symplectic(&t.linear_map(g).unwrap(), g), "{t}");
        }
    }

    #[test]
    fn lie_tokens_kill_omega() {
        for g in 1..=3 {
            for i in 1..=g {
                for t in [SpToken::LieE(i), SpToken::LieF(i)] {
                    assert!(t.apply(&ExteriorVector::omega(g)).unwrap().is_zero(), "{t} g={g}");
                }
            }
        }
    }

    #[test]
    fn inverse_word() {
        let g = 2;
        let w = SpWord::parse("S1 Ta2 P2,1 Tc1").unwrap();
        let inv = w.inverse(g).unwrap();
        let v = ExteriorVector::a(g, 1).wedge(&ExteriorVector::b(g, 2));
        assert_eq!(w.apply(&inv.apply(&v).unwrap()).unwrap(), v);
    }

    #[test]
    fn malformed_tokens() {
        assert!(SpToken::parse("X1").is_err());
        assert!(SpToken::parse("Tz1").is_err());
        assert!(SpToken::S(4).linear_map(3).is_err());
        assert!(SpToken::Perm(vec![1, 1]).linear_map(2).is_err());
        let bad = IntMatrix::identity(4).scale(2);
        assert!(SpToken::Matrix(bad).linear_map(2).is_err());
    }
}
