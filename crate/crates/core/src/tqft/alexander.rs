use super::exterior::ExteriorVector;
use super::lefschetz::{LefschetzBasis, ModSpace};
use super::symplectic::SpWord;
use crate::arith::checked::require_odd_prime;
use crate::arith::quantum::quantum_laurent;
use crate::arith::{cyclotomic_eval, CyclotomicElem, LaurentInt};
use crate::{Error, Result};

/// `T(y) = trace(y^{-H} w)` on `∧*H` and the traces `t_j` on `V^{(j)}`.
#[derive(Clone, Debug)]
pub struct AlexanderTrace {
    pub g: usize,
    pub poly: LaurentInt,
    /// `t_j` at index `j - 1`, for `1 <= j <= g + 1`.
    pub lefschetz_traces: Vec<i64>,
    /// `T(y) = Σ_j [j]_y t_j`.
    pub decomposition_holds: bool,
}

impl AlexanderTrace {
    /// `Δ(x) = T(-x) = Σ_j [j]_{-x} t_j`.
    pub fn alexander(&self) -> LaurentInt {
        self.poly.negate_variable()
    }

    pub fn lefschetz_sum(&self) -> LaurentInt {
        self.lefschetz_traces
            .iter()
            .enumerate()
            .fold(LaurentInt::zero(), |acc, (i, &t)| acc.add(&quantum_laurent(i as u32 + 1).scale(t)))
    }
}

fn require_group_word(word: &SpWord, g: usize) -> Result<()> {
    word.validate(g)?;
    if !word.is_group_word() {
        return Err(Error::InvalidToken(format!("'{word}' contains Lie-algebra tokens")));
    }
    Ok(())
}

pub fn alexander_trace(word: &SpWord, g: usize) -> Result<AlexanderTrace> {
    require_group_word(word, g)?;
    let mut poly = LaurentInt::zero();
    for m in 0u32..1 << (2 * g) {
        let c = word.apply(&ExteriorVector::monomial(g, m))?.coeff(m);
        poly.add_term(g as i32 - m.count_ones() as i32, c);
    }
    let lefschetz_traces =
        (1..=g + 1).map(|j| LefschetzBasis::new(g, j)?.trace(word)).collect::<Result<Vec<_>>>()?;
    let mut out = AlexanderTrace { g, poly, lefschetz_traces, decomposition_holds: false };
    out.decomposition_holds = out.lefschetz_sum() == out.poly;
    Ok(out)
}

/// Both sides of the root-of-unity identity for `Δ̄^{sign}` over `F_p[ζ_p]`.
#[derive(Clone, Debug)]
pub struct RootOfUnityCheck {
    pub p: u32,
    pub sign: i8,
    pub lhs: CyclotomicElem,
    /// `Σ_{k=1}^{p-1} (-sign)^{k-1} [k]_ζ t̄_k`.
    pub rhs: CyclotomicElem,
    /// The same sum folded over the pairs `k`, `p - k`.
    pub rhs_paired: CyclotomicElem,
    /// `t̄_k` at index `k - 1`.
    pub quotient_traces: Vec<u32>,
}

impl RootOfUnityCheck {
    pub fn ok(&self) -> bool {
        self.lhs == self.rhs && self.lhs == self.rhs_paired
    }
}

pub fn root_of_unity_check(p: u32, word: &SpWord, g: usize, sign: i8) -> Result<RootOfUnityCheck> {
    require_odd_prime(p)?;
    if sign != 1 && sign != -1 {
        return Err(Error::OutOfRange(format!("sign must be ±1, got {sign}")));
    }
    let trace = alexander_trace(word, g)?;
    let lhs = cyclotomic_eval(&trace.alexander(), p, sign, Some(p));
    let quotient_traces = (1..p as usize)
        .map(|k| {
            if k > g + 1 {
                Ok(0)
            } else {
                ModSpace::new(p, g, k)?.action_quotient(word).map(|m| m.trace())
            }
        })
        .collect::<Result<Vec<u32>>>()?;
    let qint = |k: usize| cyclotomic_eval(&quantum_laurent(k as u32), p, 1, Some(p));
    let t = |k: usize| i64::from(quotient_traces[k - 1]);
    let mut rhs = CyclotomicElem::zero(p, Some(p));
    for k in 1..p as usize {
        let s = if sign == -1 || k % 2 == 1 { 1 } else { -1 };
        rhs = rhs.add(&qint(k).scale(s * t(k)));
    }
    let mut rhs_paired = CyclotomicElem::zero(p, Some(p));
    for k in 1..=(p as usize - 1) / 2 {
        let term = if sign == 1 {
            qint(k).scale(if k % 2 == 1 { 1 } else { -1 } * (t(k) + t(p as usize - k)))
        } else {
            qint(k).scale(t(k) - t(p as usize - k))
        };
        rhs_paired = rhs_paired.add(&term);
    }
    Ok(RootOfUnityCheck { p, sign, lhs, rhs, rhs_paired, quotient_traces })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn genus_one_examples() {
        let id = alexander_trace(&SpWord::default(), 1).unwrap();
        assert_eq!(id.poly, LaurentInt::from_terms([(1, 1), (0, 2), (-1, 1)]));
        assert_eq!(id.lefschetz_traces, vec![2, 1]);
        assert!(id.decomposition_holds);
        let s = alexander_trace(&SpWord::parse("S1").unwrap(), 1).unwrap();
        assert_eq!(s.poly, LaurentInt::from_terms([(1, 1), (-1, 1)]));
        assert_eq!(s.lefschetz_traces, vec![0, 1]);
    }

    #[test]
    fn lie_tokens_rejected() {
        assert!(alexander_trace(&SpWord::parse("e1").unwrap(), 2).is_err());
    }

    #[test]
    fn root_of_unity_identity() {
        for sign in [1, -1] {
            assert!(root_of_unity_check(3, &SpWord::default(), 1, sign).unwrap().ok());
        }
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..3 {
            let w = SpWord::random_group_word(&mut rng, 2, 6);
            let t = alexander_trace(&w, 2).unwrap();
            assert!(t.decomposition_holds);
            for sign in [1, -1] {
                let c = root_of_unity_check(5, &w, 2, sign).unwrap();
                assert!(c.ok(), "{w} {sign}: {c:?}");
            }
        }
    }
}
