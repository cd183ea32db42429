use std::collections::BTreeMap;
use std::fmt;

use super::exterior::{a_bit, b_bit, ExteriorVector};
use super::symplectic::SpToken;
use crate::tensor::TensorVector;
use crate::{Error, Result};

/// A weight `λ ∈ {-1, 0, 1}^g` of the maximal torus.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight(pub Vec<i8>);

impl Weight {
    pub fn genus(&self) -> usize {
        self.0.len()
    }

    /// `n(λ)`, the number of zero entries.
    pub fn n(&self) -> usize {
        self.0.iter().filter(|&&x| x == 0).count()
    }

    /// `N(λ)`, the 1-based indices with `λ_i = 0`.
    pub fn zero_set(&self) -> Vec<usize> {
        (1..=self.genus()).filter(|&i| self.0[i - 1] == 0).collect()
    }

    pub fn of_mask(g: usize, mask: u32) -> Self {
        Self(
            (1..=g)
                .map(|i| match (mask & a_bit(i) != 0, mask & b_bit(g, i) != 0) {
                    (true, false) => 1,
                    (false, true) => -1,
                    _ => 0,
                })
                .collect(),
        )
    }

    /// All of `{-1, 0, 1}^g` in lexicographic order.
    pub fn all(g: usize) -> Vec<Self> {
        let mut out = vec![Self(Vec::new())];
        for _ in 0..g {
            out = out
                .into_iter()
                .flat_map(|w| {
                    [-1i8, 0, 1].into_iter().map(move |x| {
                        let mut v = w.0.clone();
                        v.push(x);
                        Self(v)
                    })
                })
                .collect();
        }
        out
    }

    /// `∇_g^{(j)}`: `n(λ) >= j - 1` and `n(λ) ≡ j - 1 (mod 2)`.
    pub fn lefschetz_weights(g: usize, j: usize) -> Vec<Self> {
        Self::all(g)
            .into_iter()
            .filter(|w| j >= 1 && w.n() + 1 >= j && (w.n() + 1 - j) % 2 == 0)
            .collect()
    }

    /// `w(λ) = w_1(λ_1) ∧ ... ∧ w_g(λ_g)`.
    pub fn w_vector(&self) -> ExteriorVector {
        let g = self.genus();
        self.0.iter().enumerate().fold(ExteriorVector::one(g), |acc, (i, &x)| match x {
            1 => acc.wedge(&ExteriorVector::a(g, i + 1)),
            -1 => acc.wedge(&ExteriorVector::b(g, i + 1)),
            _ => acc,
        })
    }

    /// `Υ_λ(e_ε) = w(λ) ∧ o_{j_1}(ε_1) ∧ ... ∧ o_{j_n}(ε_n)`.
    pub fn upsilon_basis(&self, eps: u32) -> ExteriorVector {
        let g = self.genus();
        let n_set = self.zero_set();
        let mut v = self.w_vector();
        for (k, &j) in n_set.iter().enumerate() {
            if eps >> k & 1 == 1 {
                v = v.wedge(&ExteriorVector::a(g, j).wedge(&ExteriorVector::b(g, j)));
            }
        }
        v
    }

    pub fn upsilon(&self, x: &TensorVector) -> Result<ExteriorVector> {
        if x.n() != self.n() {
            return Err(Error::DimensionMismatch { expected: self.n(), found: x.n() });
        }
        let mut out = ExteriorVector::zero(self.genus());
        for (eps, c) in x.terms() {
            out = out.add(&self.upsilon_basis(eps).scale(c));
        }
        Ok(out)
    }

    /// Inverse of `Υ_λ` on `W(λ)`.
    pub fn upsilon_inverse(&self, v: &ExteriorVector) -> Result<TensorVector> {
        let g = self.genus();
        let n_set = self.zero_set();
        let mut out = TensorVector::zero(n_set.len());
        for (m, c) in v.terms() {
            if Weight::of_mask(g, m) != *self {
                return Err(Error::NotInSpan(format!("monomial {} is outside W({self})", ExteriorVector::mask_name(g, m))));
            }
            let mut eps = 0u32;
            for (k, &j) in n_set.iter().enumerate() {
                if m & a_bit(j) != 0 {
                    eps |= 1 << k;
                }
            }
            let sign = self.upsilon_basis(eps).coeff(m);
            out.add_term(eps, c * sign);
        }
        Ok(out)
    }

    /// `λ + α_i` with `α_i = ε_i - ε_{i+1}` for `i < g` and `α_g = 2ε_g`.
    pub fn shift_by_root(&self, i: usize) -> Vec<i8> {
        let mut v = self.0.clone();
        if i < self.genus() {
            v[i - 1] += 1;
            v[i] -= 1;
        } else {
            v[i - 1] += 2;
        }
        v
    }

    pub fn in_cube(v: &[i8]) -> bool {
        v.iter().all(|x| (-1..=1).contains(x))
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i8::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Components of `v` in the weight spaces `W(λ)`.
pub fn weight_decompose(v: &ExteriorVector) -> BTreeMap<Weight, ExteriorVector> {
    let g = v.genus();
    let mut out: BTreeMap<Weight, ExteriorVector> = BTreeMap::new();
    for (m, c) in v.terms() {
        out.entry(Weight::of_mask(g, m)).or_insert_with(|| ExteriorVector::zero(g)).add_term(m, c);
    }
    out
}

/// `H⁺(α) = i_*(α) ∧ a_{g+1}` from genus `g` to `g + 1`.
pub fn handle_plus(v: &ExteriorVector) -> ExteriorVector {
    let g = v.genus();
    let g1 = g + 1;
    let mut out = ExteriorVector::zero(g1);
    for (m, c) in v.terms() {
        let low = m & ((1 << g) - 1);
        let high = m >> g;
        out.add_term(low | high << g1, c);
    }
    out.wedge(&ExteriorVector::a(g1, g1))
}

/// `H⁻ = (H⁺)*` from genus `g + 1` to `g`.
pub fn handle_minus(v: &ExteriorVector) -> Result<ExteriorVector> {
    let g1 = v.genus();
    if g1 == 0 {
        return Err(Error::Precondition("no handle to remove in genus 0".into()));
    }
    let g = g1 - 1;
    let mut out = ExteriorVector::zero(g);
    for (m, c) in v.terms() {
        if m & b_bit(g1, g1) != 0 || m & a_bit(g1) == 0 {
            continue;
        }
        let rest = m & !a_bit(g1);
        let sign = super::exterior::wedge_sign(rest, a_bit(g1)).expect("disjoint");
        let low = rest & ((1 << g) - 1);
        let high = rest >> g1;
        out.add_term(low | high << g, c * sign);
    }
    Ok(out)
}

/// The entry of the table describing `Υ^{-1} e_{α_i} Υ` on `W(λ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RootAction {
    Identity,
    MinusIdentity,
    Coev(usize),
    MinusEv(usize),
    Zero,
}

pub fn root_action_table(lambda: &Weight, i: usize) -> RootAction {
    let g = lambda.genus();
    if i == g {
        return if lambda.0[g - 1] == -1 { RootAction::Identity } else { RootAction::Zero };
    }
    let n_set = lambda.zero_set();
    match (lambda.0[i - 1], lambda.0[i]) {
        (0, 1) => RootAction::Identity,
        (-1, 0) => RootAction::MinusIdentity,
        (-1, 1) => RootAction::Coev(n_set.iter().filter(|&&j| j < i).count() + 1),
        (0, 0) => RootAction::MinusEv(n_set.iter().position(|&j| j == i).expect("i in N(λ)") + 1),
        _ => RootAction::Zero,
    }
}

/// Compares `Υ_{λ+α_i}^{-1} e_{α_i} Υ_λ` with the table on every basis word of `L^{n(λ)}`.
pub fn root_action_check(lambda: &Weight, i: usize) -> Result<bool> {
    let n = lambda.n();
    let expected = root_action_table(lambda, i);
    let shifted = lambda.shift_by_root(i);
    for eps in 0..1u32 << n {
        let x = TensorVector::from_terms(n, [(eps, 1)]);
        let image = SpToken::LieE(i).apply(&lambda.upsilon(&x)?)?;
        let ok = match &expected {
            RootAction::Zero => image.is_zero(),
            action => {
                let target = Weight(shifted.clone());
                let pulled = target.upsilon_inverse(&image)?;
                let want = match action {
                    RootAction::Identity => x.clone(),
                    RootAction::MinusIdentity => x.scale(-1),
                    RootAction::Coev(k) => x.coev(*k)?,
                    RootAction::MinusEv(k) => x.ev(*k)?.scale(-1),
                    RootAction::Zero => unreachable!(),
                };
                pulled == want
            }
        };
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `π_A`: the handle permutation sending `{g-n+1, ..., g}` onto `A` and
/// increasing on both blocks (1-based images).
pub fn pi_a(a_set: &[usize], g: usize) -> Vec<usize> {
    let n = a_set.len();
    let complement: Vec<usize> = (1..=g).filter(|i| !a_set.contains(i)).collect();
    let mut images = vec![0; g];
    for (k, &c) in complement.iter().enumerate() {
        images[k] = c;
    }
    for (k, &x) in a_set.iter().enumerate() {
        images[g - n + k] = x;
    }
    images
}

/// `λ^π`: signs of `λ` in order, followed by `n(λ)` zeros.
pub fn normalized_weight(lambda: &Weight) -> Weight {
    let mut v: Vec<i8> = lambda.0.iter().copied().filter(|&x| x != 0).collect();
    v.resize(lambda.genus(), 0);
    Weight(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weight_space_counts() {
        for g in 0..=4 {
            let all = Weight::all(g);
            assert_eq!(all.len(), 3usize.pow(g as u32));
            for n in 0..=g {
                let count = all.iter().filter(|w| w.n() == n).count() as i64;
                let expected = crate::arith::checked::binomial(g as i64, n as i64) << (g - n);
                assert_eq!(count, expected);
            }
        }
    }

    #[test]
    fn upsilon_round_trip_and_sl2() {
        for g in 1..=3 {
            for lambda in Weight::all(g) {
                let n = lambda.n();
                for eps in 0..1u32 << n {
                    let x = TensorVector::from_terms(n, [(eps, 1)]);
                    let v = lambda.upsilon(&x).unwrap();
                    assert_eq!(v.len(), 1);
                    assert_eq!(lambda.upsilon_inverse(&v).unwrap(), x);
                    assert_eq!(lambda.upsilon(&x.apply_e()).unwrap(), v.apply_e());
                    assert_eq!(lambda.upsilon(&x.apply_f()).unwrap(), v.apply_f());
                }
            }
        }
    }

    #[test]
    fn handles_are_adjoint_and_split() {
        let g = 2;
        for m in 0..16u32 {
            let v = ExteriorVector::monomial(g, m);
            assert_eq!(handle_minus(&handle_plus(&v)).unwrap(), v);
            for m2 in 0..64u32 {
                let u = ExteriorVector::monomial(g + 1, m2);
                assert_eq!(handle_plus(&v).inner(&u), v.inner(&handle_minus(&u).unwrap()));
            }
        }
    }

    #[test]
    fn root_table_holds() {
        for g in 1..=3 {
            for lambda in Weight::all(g) {
                for i in 1..=g {
                    assert!(root_action_check(&lambda, i).unwrap(), "λ={lambda} i={i}");
                }
            }
        }
    }

    #[test]
    fn pi_a_example() {
        assert_eq!(pi_a(&[1, 3], 4), vec![2, 4, 1, 3]);
    }
}
