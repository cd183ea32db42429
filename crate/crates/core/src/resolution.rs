//! The complexes `C_{p,k}` of Specht lattices mod `p` joined by powers of `E`,
//! their exactness, and the simple quotients `D = S / radical`.

use serde::Serialize;

use crate::arith::checked::{self, require_odd_prime};
use crate::arith::fp::reduce;
use crate::arith::FpMatrix;
use crate::specht::{Diagram2, QuotientSpace, SpechtBasis};
use crate::tensor::Perm;
use crate::{Error, Result};

fn check_label(p: u32, n: usize, k: usize) -> Result<()> {
    require_odd_prime(p)?;
    if k == 0 || k >= p as usize {
        return Err(Error::OutOfRange(format!("k = {k} must lie in 1..{}", p - 1)));
    }
    if (n + 1 + k) % 2 != 0 {
        return Err(Error::Parity(format!("k = {k} and n + 1 = {} differ in parity", n + 1)));
    }
    Ok(())
}

/// `k_i`: `k` for even `i`, `p - k` for odd `i`.
pub fn strand_label(p: usize, k: usize, i: usize) -> usize {
    if i % 2 == 0 {
        k
    } else {
        p - k
    }
}

/// Weights `i p + k_i` that do not exceed `n + 1`.
pub fn complex_weights(p: u32, n: usize, k: usize) -> Result<Vec<usize>> {
    check_label(p, n, k)?;
    let p = p as usize;
    Ok((0..).map(|i| i * p + strand_label(p, k, i)).take_while(|&w| w <= n + 1).collect())
}

/// Top weight `n + 1 - 2l` predicted from the base-`p` split of `(n + 1 + k)/2`.
pub fn predicted_top_weight(p: u32, n: usize, k: usize) -> Option<usize> {
    if k > n + 1 {
        return None;
    }
    let q = ((n + 1 + k) / 2) % p as usize;
    let l = if q >= k { q - k } else { q };
    Some(n + 1 - 2 * l)
}

/// Matrix of `E^{c0}: S^{{c}} → S^{{c - 2 c0}}` over `F_p` in the standard bases.
pub fn e_power_map(p: u32, n: usize, c: usize, c0: usize) -> Result<FpMatrix> {
    require_odd_prime(p)?;
    let pu = p as usize;
    if c % pu == 0 {
        return Err(Error::Precondition(format!("c = {c} is divisible by p = {p}")));
    }
    if c0 % pu != c % pu {
        return Err(Error::Precondition(format!("c0 = {c0} is not congruent to c = {c} mod {p}")));
    }
    if c < 2 * c0 + 1 {
        return Err(Error::OutOfRange(format!("target weight c - 2c0 = {} < 1", c as i64 - 2 * c0 as i64)));
    }
    let source = SpechtBasis::new(Diagram2::from_weight(n, c)?);
    let target = SpechtBasis::new(Diagram2::from_weight(n, c - 2 * c0)?);
    e_power_between(p, &source, &target, c0)
}

pub(crate) fn e_power_between(
    p: u32,
    source: &SpechtBasis,
    target: &SpechtBasis,
    c0: usize,
) -> Result<FpMatrix> {
    let cols: Result<Vec<Vec<u32>>> = source
        .vectors()
        .iter()
        .map(|v| target.coords_mod(&v.e_power(c0 as u32).reduce_mod(p), p))
        .collect();
    Ok(FpMatrix::from_columns(p, target.dim(), &cols?))
}

#[derive(Clone, Debug, Serialize)]
pub struct ComplexTerm {
    pub index: usize,
    pub weight: usize,
    pub diagram: (usize, usize),
    pub dim: usize,
}

/// `C_{p,k}` on `L^n`: `maps[i - 1]` goes from term `i` to term `i - 1`.
#[derive(Clone, Debug)]
pub struct ComplexOverFp {
    pub p: u32,
    pub n: usize,
    pub k: usize,
    pub terms: Vec<ComplexTerm>,
    pub maps: Vec<FpMatrix>,
    bases: Vec<SpechtBasis>,
}

impl ComplexOverFp {
    pub fn basis(&self, i: usize) -> &SpechtBasis {
        &self.bases[i]
    }
}

pub fn build_complex(p: u32, n: usize, k: usize) -> Result<ComplexOverFp> {
    let weights = complex_weights(p, n, k)?;
    if let (Some(&top), Some(pred)) = (weights.last(), predicted_top_weight(p, n, k)) {
        if top != pred {
            return Err(Error::Precondition(format!(
                "top weight {top} disagrees with the base-{p} prediction {pred} (n={n}, k={k})"
            )));
        }
    }
    let bases: Vec<SpechtBasis> = weights
        .iter()
        .map(|&w| Diagram2::from_weight(n, w).map(SpechtBasis::new))
        .collect::<Result<_>>()?;
    let terms = weights
        .iter()
        .zip(&bases)
        .enumerate()
        .map(|(index, (&weight, b))| ComplexTerm {
            index,
            weight,
            diagram: (b.diagram().a, b.diagram().b),
            dim: b.dim(),
        })
        .collect();
    let maps = (1..bases.len())
        .map(|i| e_power_between(p, &bases[i], &bases[i - 1], strand_label(p as usize, k, i)))
        .collect::<Result<_>>()?;
    Ok(ComplexOverFp { p, n, k, terms, maps, bases })
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct NodeHomology {
    pub index: usize,
    pub weight: usize,
    pub dim: usize,
    pub kernel_dim: usize,
    pub image_dim: usize,
    pub homology: usize,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ExactnessReport {
    pub nodes: Vec<NodeHomology>,
    pub compositions_vanish: bool,
    pub image_in_radical: bool,
    pub radical_dim: usize,
    /// `dim S^{{k}} - rank(E^{p-k})`.
    pub d_dim: usize,
    pub exact: bool,
}

/// Homology at every node. At node 0 the outgoing map is `S → S / radical`.
pub fn verify_exactness(cx: &ComplexOverFp) -> ExactnessReport {
    let ranks: Vec<usize> = cx.maps.iter().map(FpMatrix::rank).collect();
    let compositions_vanish = cx.maps.windows(2).all(|w| w[0].mul(&w[1]).is_zero());
    let (radical_dim, image_in_radical, quotient) = match cx.bases.first() {
        Some(b0) => {
            let q = QuotientSpace::new(&b0.gram(), cx.p);
            let inside = cx
                .maps
                .first()
                .map_or(true, |m| m.columns().iter().all(|c| q.contains_radical_vector(c)));
            (q.radical().len(), inside, Some(q))
        }
        None => (0, true, None),
    };
    let mut nodes = Vec::with_capacity(cx.terms.len());
    for (i, t) in cx.terms.iter().enumerate() {
        let kernel_dim = if i == 0 { radical_dim } else { t.dim - ranks[i - 1] };
        let image_dim = ranks.get(i).copied().unwrap_or(0);
        nodes.push(NodeHomology {
            index: i,
            weight: t.weight,
            dim: t.dim,
            kernel_dim,
            image_dim,
            homology: kernel_dim.saturating_sub(image_dim),
        });
    }
    let d_dim = cx.terms.first().map_or(0, |t| t.dim - ranks.first().copied().unwrap_or(0));
    let exact = compositions_vanish
        && image_in_radical
        && nodes.iter().all(|n| n.kernel_dim == n.image_dim)
        && quotient.map_or(true, |q| q.dim() == d_dim);
    ExactnessReport { nodes, compositions_vanish, image_in_radical, radical_dim, d_dim, exact }
}

/// `D_p^τ = S^τ / radical` with the standard basis of `S^τ`.
#[derive(Clone, Debug)]
pub struct SimpleQuotient {
    pub basis: SpechtBasis,
    pub quotient: QuotientSpace,
}

pub fn simple_quotient(p: u32, tau: Diagram2) -> Result<SimpleQuotient> {
    require_odd_prime(p)?;
    let basis = SpechtBasis::new(tau);
    let quotient = QuotientSpace::new(&basis.gram(), p);
    Ok(SimpleQuotient { basis, quotient })
}

impl SimpleQuotient {
    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }

    /// Trace of `σ` on the quotient, in `F_p`.
    pub fn trace(&self, sigma: &Perm) -> Result<u32> {
        let a = self.basis.action_matrix(sigma)?.reduce(self.quotient.prime());
        Ok(self.quotient.induced(&a, &self.quotient)?.trace())
    }

    /// The same trace computed through the reversed-pivot complement.
    pub fn trace_alternate(&self, sigma: &Perm) -> Result<u32> {
        let p = self.quotient.prime();
        let q = QuotientSpace::new_reversed(&self.basis.gram(), p);
        let a = self.basis.action_matrix(sigma)?.reduce(p);
        Ok(q.induced(&a, &q)?.trace())
    }
}

/// Diagrams of the resolution of `D_p^τ`, in complex order.
pub fn resolution_diagrams(p: u32, tau: Diagram2) -> Result<Vec<Diagram2>> {
    let n = tau.n();
    complex_weights(p, n, tau.c())?.into_iter().map(|w| Diagram2::from_weight(n, w)).collect()
}

/// The listing `[a + ip, b - ip]`, `[b + ip - 1, a - ip + 1]` interleaved.
pub fn resolution_diagrams_listed(p: u32, tau: Diagram2) -> Vec<Diagram2> {
    let (a, b, p) = (tau.a as i64, tau.b as i64, p as i64);
    let mut out = vec![tau];
    for i in 1.. {
        let odd = (b + i * p - 1, a - i * p + 1);
        if odd.1 < 0 || odd.0 < odd.1 {
            break;
        }
        out.push(Diagram2 { a: odd.0 as usize, b: odd.1 as usize });
        let even = (a + i * p, b - i * p);
        if even.1 < 0 {
            break;
        }
        out.push(Diagram2 { a: even.0 as usize, b: even.1 as usize });
    }
    out
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CharacterCheck {
    pub lhs: u32,
    pub rhs: u32,
    pub ordinary: Vec<i64>,
}

/// Trace of `σ` on `D_p^τ` against `Σ_i (-1)^i χ^{τ_i}(σ) mod p`.
pub fn modular_character_check(p: u32, tau: Diagram2, sigma: &Perm) -> Result<CharacterCheck> {
    if tau.c() >= p as usize {
        return Err(Error::OutOfRange(format!("{tau} needs a - b <= p - 2")));
    }
    let lhs = simple_quotient(p, tau)?.trace(sigma)?;
    let ordinary: Vec<i64> = resolution_diagrams(p, tau)?
        .into_iter()
        .map(|d| SpechtBasis::new(d).character(sigma))
        .collect::<Result<_>>()?;
    let alt = ordinary
        .iter()
        .enumerate()
        .fold(0i64, |acc, (i, &x)| if i % 2 == 0 { checked::add(acc, x) } else { checked::sub(acc, x) });
    Ok(CharacterCheck { lhs, rhs: reduce(alt, p), ordinary })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hand_checked_weights() {
        assert_eq!(complex_weights(3, 4, 1).unwrap(), vec![1, 5]);
        assert_eq!(complex_weights(3, 6, 1).unwrap(), vec![1, 5, 7]);
        assert_eq!(complex_weights(5, 4, 1).unwrap(), vec![1]);
        assert!(complex_weights(3, 4, 2).is_err());
        assert!(complex_weights(4, 4, 1).is_err());
    }

    #[test]
    fn small_complex_is_exact() {
        let cx = build_complex(3, 4, 1).unwrap();
        let dims: Vec<usize> = cx.terms.iter().map(|t| t.dim).collect();
        assert_eq!(dims, vec![2, 1]);
        let r = verify_exactness(&cx);
        assert!(r.exact, "{r:?}");
        assert_eq!(r.d_dim, 1);
    }

    #[test]
    fn single_term_complex() {
        let cx = build_complex(5, 4, 1).unwrap();
        assert!(cx.maps.is_empty());
        let r = verify_exactness(&cx);
        assert!(r.exact);
        assert_eq!(r.d_dim, 2);
    }

    #[test]
    fn e_power_preconditions() {
        assert!(e_power_map(3, 4, 1, 1).is_err());
        assert!(e_power_map(3, 4, 3, 0).is_err());
        assert!(e_power_map(3, 4, 5, 2).is_ok());
    }

    #[test]
    fn character_example() {
        let check = modular_character_check(3, Diagram2 { a: 2, b: 2 }, &Perm::transposition(4, 1, 2)).unwrap();
        assert_eq!(check.ordinary, vec![0, 1]);
        assert_eq!(check.rhs, 2);
        assert_eq!(check.lhs, 2);
    }

    #[test]
    fn listed_diagrams_agree() {
        for p in [3u32, 5, 7] {
            for n in 0..=12usize {
                for b in 0..=n / 2 {
                    let tau = Diagram2 { a: n - b, b };
                    if tau.c() >= p as usize {
                        continue;
                    }
                    assert_eq!(resolution_diagrams(p, tau).unwrap(), resolution_diagrams_listed(p, tau));
                }
            }
        }
    }
}
