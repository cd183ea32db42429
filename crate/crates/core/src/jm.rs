//! Johnson–Morita extensions: the operators `ν`, `μ` on `∧*H`, the induced maps
//! between Lefschetz components, block representations of `JM_a(m, g)`, the
//! non-splitness witness and the two-strand resolution of the `U` modules.

use std::collections::{BTreeMap, HashMap};

use rand::Rng;
use serde::Serialize;

use crate::arith::checked;
use crate::arith::fp::{inv_mod, reduce};
use crate::arith::{FpMatrix, IntMatrix};
use crate::resolution::{e_power_map, strand_label};
use crate::tqft::exterior::ExteriorVector;
use crate::tqft::lefschetz::{LefschetzBasis, ModSpace};
use crate::tqft::symplectic::{pairing, SpToken, SpWord};
use crate::{Error, Result};

/// `J`: `a_i ↦ b_i`, `b_i ↦ -a_i`.
pub fn j_token(g: usize) -> SpToken {
    let mut m = IntMatrix::zeros(2 * g, 2 * g);
    for i in 0..g {
        m.set(g + i, i, 1);
        m.set(i, g + i, -1);
    }
    SpToken::Matrix(m)
}

fn homogeneous_degree(x: &ExteriorVector) -> Result<usize> {
    Ok(x.degree()?.unwrap_or(0))
}

/// `ν(x) v = x ∧ v`.
pub fn nu(x: &ExteriorVector, v: &ExteriorVector) -> Result<ExteriorVector> {
    homogeneous_degree(x)?;
    Ok(x.wedge(v))
}

/// `μ(x) = ν(Jx)*`.
pub fn mu(x: &ExteriorVector, v: &ExteriorVector) -> Result<ExteriorVector> {
    homogeneous_degree(x)?;
    let jx = j_token(x.genus()).apply(x)?;
    Ok(v.contract(&jx))
}

/// A random integral vector of degree `m` with a few small terms.
pub fn random_homogeneous<R: Rng>(rng: &mut R, g: usize, m: usize) -> ExteriorVector {
    let monos = ExteriorVector::monomials_of_degree(g, m);
    let mut v = ExteriorVector::zero(g);
    if monos.is_empty() {
        return v;
    }
    while v.is_zero() {
        for _ in 0..rng.gen_range(1..=3) {
            let c = rng.gen_range(-2..=2);
            v.add_term(monos[rng.gen_range(0..monos.len())], c);
        }
    }
    v
}

fn all_monomials(g: usize) -> impl Iterator<Item = ExteriorVector> {
    (0u32..1 << (2 * g)).map(move |m| ExteriorVector::monomial(g, m))
}

fn operators_agree<A, B>(g: usize, lhs: A, rhs: B) -> Result<bool>
where
    A: Fn(&ExteriorVector) -> Result<ExteriorVector>,
    B: Fn(&ExteriorVector) -> Result<ExteriorVector>,
{
    for v in all_monomials(g) {
        if lhs(&v)? != rhs(&v)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct JmIdentityReport {
    pub g: usize,
    pub checked: BTreeMap<String, usize>,
    pub failures: Vec<String>,
}

impl JmIdentityReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }

    fn record(&mut self, item: &str, ok: bool, detail: impl FnOnce() -> String) {
        *self.checked.entry(item.to_string()).or_default() += 1;
        if !ok {
            self.failures.push(format!("{item}: {}", detail()));
        }
    }
}

/// The five operator identities for `ν`, `μ` on `∧*H₁(Σ_g)`, on `trials` random
/// instances per degree `m <= 3`.
pub fn jm_identities_check<R: Rng>(g: usize, trials: usize, rng: &mut R) -> Result<JmIdentityReport> {
    let mut report = JmIdentityReport { g, ..Default::default() };
    let omega = ExteriorVector::omega(g);
    let ok = operators_agree(g, |v| nu(&omega, v), |v| Ok(v.apply_e()))?;
    report.record("generators", ok, || "ν(ω) ≠ E".into());
    let ok = operators_agree(g, |v| mu(&omega, v), |v| Ok(v.apply_f()))?;
    report.record("generators", ok, || "μ(ω) ≠ F".into());
    for m in 1..=3.min(2 * g) {
        for _ in 0..trials {
            let x = random_homogeneous(rng, g, m);
            let my = rng.gen_range(1..=m);
            let y = random_homogeneous(rng, g, my);
            let w = SpWord::random_group_word(rng, g, 4);
            let w_inv = w.inverse(g)?;
            let wx = w.apply(&x)?;
            let ok = operators_agree(g, |v| w.apply(&nu(&x, &w_inv.apply(v)?)?), |v| nu(&wx, v))?;
            report.record("covariance", ok, || format!("ν, x={x:?}, w={w}"));
            let ok = operators_agree(g, |v| w.apply(&mu(&x, &w_inv.apply(v)?)?), |v| mu(&wx, v))?;
            report.record("covariance", ok, || format!("μ, x={x:?}, w={w}"));
            let xy = x.wedge(&y);
            let ok = operators_agree(g, |v| nu(&xy, v), |v| nu(&x, &nu(&y, v)?))?;
            report.record("homomorphism", ok, || format!("ν, x={x:?}, y={y:?}"));
            let ok = operators_agree(g, |v| mu(&xy, v), |v| mu(&y, &mu(&x, v)?))?;
            report.record("homomorphism", ok, || format!("μ, x={x:?}, y={y:?}"));
            let ok = operators_agree(g, |v| Ok(nu(&x, v)?.apply_e()), |v| nu(&x, &v.apply_e()))?
                && operators_agree(g, |v| Ok(mu(&x, v)?.apply_f()), |v| mu(&x, &v.apply_f()))?;
            report.record("generators", ok, || format!("[E, ν(x)] or [F, μ(x)] ≠ 0, x={x:?}"));
            if m == 1 {
                let y1 = random_homogeneous(rng, g, 1);
                let c = pairing(&x, &y1)?;
                let ok = operators_agree(
                    g,
                    |v| Ok(mu(&x, &nu(&y1, v)?)?.add(&nu(&y1, &mu(&x, v)?)?)),
                    |v| Ok(v.scale(c)),
                )?;
                report.record("anticommutator", ok, || format!("x={x:?}, y={y1:?}"));
                let ok = operators_agree(
                    g,
                    |v| Ok(mu(&x, v)?.apply_e().sub(&mu(&x, &v.apply_e())?)),
                    |v| nu(&x, v),
                )? && operators_agree(
                    g,
                    |v| Ok(nu(&x, v)?.apply_f().sub(&nu(&x, &v.apply_f())?)),
                    |v| mu(&x, v),
                )?;
                report.record("commutators", ok, || format!("x={x:?}"));
            }
        }
    }
    Ok(report)
}

/// `μ(x) E^{l+m} w ∈ im(E^l)`, tested by rank over `F_q` for random `w` of degree `d`.
pub fn image_containment_check<R: Rng>(g: usize, m: usize, l: usize, d: usize, trials: usize, rng: &mut R) -> Result<bool> {
    const Q: u32 = 1_000_003;
    let src = ExteriorVector::monomials_of_degree(g, d + m);
    let dst_deg = d + m + 2 * l;
    if dst_deg > 2 * g {
        return Ok(true);
    }
    let dst = ExteriorVector::monomials_of_degree(g, dst_deg);
    let pos: HashMap<u32, usize> = dst.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let column = |v: &ExteriorVector| -> Vec<u32> {
        let mut c = vec![0u32; dst.len()];
        for (mask, x) in v.terms() {
            c[pos[&mask]] = reduce(x, Q);
        }
        c
    };
    let mut cols: Vec<Vec<u32>> = src.iter().map(|&s| column(&ExteriorVector::monomial(g, s).e_power(l as u32))).collect();
    let base_rank = FpMatrix::from_columns(Q, dst.len(), &cols).rank();
    for _ in 0..trials {
        let x = random_homogeneous(rng, g, m);
        let w = random_homogeneous(rng, g, d);
        let u = mu(&x, &w.e_power((l + m) as u32))?;
        cols.push(column(&u));
        let r = FpMatrix::from_columns(Q, dst.len(), &cols).rank();
        cols.pop();
        if r != base_rank {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Canonical representatives of `∧^m H / ω ∧ ∧^{m-2} H`.
#[derive(Clone, Debug)]
pub struct OmegaReducer {
    g: usize,
    m: usize,
    rows: BTreeMap<u32, ExteriorVector>,
}

impl OmegaReducer {
    pub fn new(g: usize, m: usize) -> Result<Self> {
        let mut rows: BTreeMap<u32, ExteriorVector> = BTreeMap::new();
        if m >= 2 {
            let omega = ExteriorVector::omega(g);
            for mono in ExteriorVector::monomials_of_degree(g, m - 2) {
                let mut v = omega.wedge(&ExteriorVector::monomial(g, mono));
                while let Some((lead, c)) = v.terms().max_by_key(|&(mask, _)| mask) {
                    match rows.get(&lead) {
                        Some(row) => v = v.sub(&row.scale(c)),
                        None => {
                            if c.abs() != 1 {
                                return Err(Error::Precondition(format!(
                                    "non-unit pivot {c} while reducing modulo ω ∧ ∧^{}",
                                    m - 2
                                )));
                            }
                            rows.insert(lead, v.scale(c));
                            break;
                        }
                    }
                }
            }
        }
        Ok(Self { g, m, rows })
    }

    pub fn degree(&self) -> usize {
        self.m
    }

    /// Monomials not used as pivots; their classes form a basis of the quotient.
    pub fn quotient_basis(&self) -> Vec<u32> {
        ExteriorVector::monomials_of_degree(self.g, self.m)
            .into_iter()
            .filter(|mask| !self.rows.contains_key(mask))
            .collect()
    }

    pub fn canonical(&self, x: &ExteriorVector) -> Result<ExteriorVector> {
        if !x.is_zero() && homogeneous_degree(x)? != self.m {
            return Err(Error::DimensionMismatch { expected: self.m, found: homogeneous_degree(x)? });
        }
        let mut v = x.clone();
        for (&pivot, row) in self.rows.iter().rev() {
            let c = v.coeff(pivot);
            if c != 0 {
                v = v.sub(&row.scale(c));
            }
        }
        Ok(v)
    }
}

/// `((1/a) x, γ) ∈ JM_a(m, g)` with `x` canonical modulo `ω ∧ ∧^{m-2}H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JmElement {
    pub x: ExteriorVector,
    pub a: i64,
    pub word: SpWord,
    pub m: usize,
}

impl JmElement {
    pub fn new(reducer: &OmegaReducer, x: &ExteriorVector, a: i64, word: SpWord) -> Result<Self> {
        if a == 0 {
            return Err(Error::OutOfRange("denominator must be nonzero".into()));
        }
        if !word.is_group_word() {
            return Err(Error::InvalidToken(format!("'{word}' contains Lie-algebra tokens")));
        }
        Ok(Self { x: reducer.canonical(x)?, a, word, m: reducer.degree() })
    }

    pub fn identity(g: usize, m: usize) -> Self {
        Self { x: ExteriorVector::zero(g), a: 1, word: SpWord::default(), m }
    }

    /// `(x₁, γ₁)(x₂, γ₂) = (x₁ + γ₁x₂, γ₁γ₂)`.
    pub fn compose(&self, other: &Self, reducer: &OmegaReducer) -> Result<Self> {
        let moved = self.word.apply(&other.x)?;
        let x = self.x.scale(other.a).add(&moved.scale(self.a));
        Self::new(reducer, &x, checked::mul(self.a, other.a), self.word.then(&other.word))
    }

    pub fn random<R: Rng>(rng: &mut R, reducer: &OmegaReducer, g: usize, word_len: usize) -> Result<Self> {
        let x = random_homogeneous(rng, g, reducer.degree());
        let a = [1, 1, 2, 3][rng.gen_range(0..4)];
        Self::new(reducer, &x, a, SpWord::random_group_word(rng, g, word_len))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Full,
    Radical,
    Quotient,
}

impl Variant {
    pub fn dim(self, space: &ModSpace) -> usize {
        match self {
            Variant::Full => space.basis.dim(),
            Variant::Radical => space.quotient.radical().len(),
            Variant::Quotient => space.quotient_dim(),
        }
    }

    /// Restricts or descends an ambient map between two spaces.
    pub fn apply(self, source: &ModSpace, target: &ModSpace, ambient: FpMatrix) -> Result<FpMatrix> {
        match self {
            Variant::Full => Ok(ambient),
            Variant::Radical => source.quotient.restricted_to_radical(&ambient, &target.quotient),
            Variant::Quotient => source.quotient.induced(&ambient, &target.quotient),
        }
    }
}

/// `μ(x)` from `V^{(j)}` to `V^{(j+m)}` over `Z`; fails if an image leaves the target lattice.
pub fn mu_matrix(source: &LefschetzBasis, target: &LefschetzBasis, x: &ExteriorVector) -> Result<IntMatrix> {
    source.map_matrix(target, |v| mu(x, v))
}

/// `μ(x)` on the chosen variant of `V_p^{(j)} → V_p^{(j+m)}`.
pub fn mu_induced(p: u32, j: usize, m: usize, x: &ExteriorVector, variant: Variant) -> Result<FpMatrix> {
    let deg = homogeneous_degree(x)?;
    if !x.is_zero() && deg != m {
        return Err(Error::DimensionMismatch { expected: m, found: deg });
    }
    let g = x.genus();
    let source = ModSpace::new(p, g, j)?;
    let target = ModSpace::new(p, g, j + m)?;
    mu_between(&source, &target, x, variant)
}

pub fn mu_between(source: &ModSpace, target: &ModSpace, x: &ExteriorVector, variant: Variant) -> Result<FpMatrix> {
    let ambient = mu_matrix(&source.basis, &target.basis, x)?.reduce(source.p);
    variant.apply(source, target, ambient)
}

/// `U_p^{(j)}(m, g) = V^{(j)} ⊕_μ V^{(j+m)}` in one of the three variants.
#[derive(Clone, Debug)]
pub struct BlockModule {
    pub p: u32,
    pub j: usize,
    pub m: usize,
    pub g: usize,
    pub variant: Variant,
    pub top: ModSpace,
    pub bottom: ModSpace,
}

impl BlockModule {
    pub fn new(p: u32, j: usize, m: usize, g: usize, variant: Variant) -> Result<Self> {
        Ok(Self { p, j, m, g, variant, top: ModSpace::new(p, g, j)?, bottom: ModSpace::new(p, g, j + m)? })
    }

    pub fn top_dim(&self) -> usize {
        self.variant.dim(&self.top)
    }

    pub fn bottom_dim(&self) -> usize {
        self.variant.dim(&self.bottom)
    }

    pub fn dim(&self) -> usize {
        self.top_dim() + self.bottom_dim()
    }

    fn group(&self, space: &ModSpace, word: &SpWord) -> Result<FpMatrix> {
        self.variant.apply(space, space, space.action_full(word)?)
    }

    /// `[γ 0; μ(x/a)γ γ]`.
    pub fn action(&self, e: &JmElement) -> Result<FpMatrix> {
        if e.m != self.m || e.x.genus() != self.g {
            return Err(Error::DimensionMismatch { expected: self.m, found: e.m });
        }
        let a = reduce(e.a, self.p);
        if a == 0 {
            return Err(Error::Precondition(format!("denominator {} vanishes mod {}", e.a, self.p)));
        }
        let gv = self.group(&self.top, &e.word)?;
        let gw = self.group(&self.bottom, &e.word)?;
        let mx = mu_between(&self.top, &self.bottom, &e.x, self.variant)?.scale(inv_mod(a, self.p));
        let lower = mx.mul(&gv);
        let (dv, dw) = (self.top_dim(), self.bottom_dim());
        let mut out = FpMatrix::zeros(dv + dw, dv + dw, self.p);
        for r in 0..dv {
            for c in 0..dv {
                out.set(r, c, gv.get(r, c));
            }
        }
        for r in 0..dw {
            for c in 0..dv {
                out.set(dv + r, c, lower.get(r, c));
            }
            for c in 0..dw {
                out.set(dv + r, dv + c, gw.get(r, c));
            }
        }
        Ok(out)
    }

    /// The bottom factor is invariant under `action`.
    pub fn bottom_invariant(&self, action: &FpMatrix) -> bool {
        let dv = self.top_dim();
        (0..dv).all(|r| (dv..self.dim()).all(|c| action.get(r, c) == 0))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct HomomorphismReport {
    pub pairs: usize,
    pub failures: usize,
    pub bottom_invariant: bool,
}

/// `action(e₁e₂) = action(e₁) action(e₂)` on `pairs` random element pairs.
pub fn homomorphism_check<R: Rng>(module: &BlockModule, pairs: usize, rng: &mut R) -> Result<HomomorphismReport> {
    let reducer = OmegaReducer::new(module.g, module.m)?;
    let mut failures = 0;
    let mut bottom_invariant = true;
    for _ in 0..pairs {
        let mut draw = || loop {
            let e = JmElement::random(rng, &reducer, module.g, 3)?;
            if e.a % module.p as i64 != 0 {
                return Ok::<_, Error>(e);
            }
        };
        let (e1, e2) = (draw()?, draw()?);
        let a1 = module.action(&e1)?;
        let a2 = module.action(&e2)?;
        let a12 = module.action(&e1.compose(&e2, &reducer)?)?;
        if a12 != a1.mul(&a2) {
            failures += 1;
        }
        bottom_invariant &= module.bottom_invariant(&a1) && module.bottom_invariant(&a12);
    }
    Ok(HomomorphismReport { pairs, failures, bottom_invariant })
}

#[derive(Clone, Debug, Serialize)]
pub struct NonsplitWitness {
    pub p: u32,
    pub k: usize,
    pub g: usize,
    pub x: String,
    pub top_dim: usize,
    pub bottom_dim: usize,
    pub searched: usize,
    /// Dimension of equivariant maps `V̄^{(k)} → V̄^{(k+3)}` for the group generators alone.
    pub equivariant_homs: usize,
    /// Whether an equivariant section exists once the abelian generator is added.
    pub section_exists: bool,
}

fn section_generators(g: usize) -> Vec<SpWord> {
    let mut gens: Vec<SpWord> = (1..=g).map(|i| SpWord(vec![SpToken::S(i)])).collect();
    gens.push(SpWord(vec![SpToken::TwistA(1)]));
    for i in 1..g {
        let mut images: Vec<usize> = (1..=g).collect();
        images.swap(i - 1, i);
        gens.push(SpWord(vec![SpToken::Perm(images)]));
        gens.push(SpWord(vec![SpToken::TwistC(i)]));
    }
    gens
}

/// Rows of `φ A - B φ = R` in the unknowns `φ` (row-major, `dw × dv`).
fn push_section_equations(
    rows: &mut Vec<Vec<i64>>,
    rhs: &mut Vec<u32>,
    a: &FpMatrix,
    b: &FpMatrix,
    r: &FpMatrix,
) {
    let (dw, dv) = (b.rows(), a.rows());
    let p = a.prime() as i64;
    for i in 0..dw {
        for c in 0..dv {
            let mut row = vec![0i64; dw * dv];
            for t in 0..dv {
                row[i * dv + t] += a.get(t, c) as i64;
            }
            for s in 0..dw {
                row[s * dv + c] -= b.get(i, s) as i64;
            }
            rows.push(row.into_iter().map(|x| x.rem_euclid(p)).collect());
            rhs.push(r.get(i, c));
        }
    }
}

/// First basis element `x` of `∧³H/ω∧H` with nonzero `μ̄(x): V̄^{(k)} → V̄^{(k+3)}`,
/// followed by a direct solve for an equivariant section of the extension.
pub fn nonsplit_witness(p: u32, k: usize, g: usize) -> Result<Option<NonsplitWitness>> {
    if k == 0 || k + 3 >= p as usize {
        return Err(Error::OutOfRange(format!("need 0 < k < p - 3, got k = {k}, p = {p}")));
    }
    let module = BlockModule::new(p, k, 3, g, Variant::Quotient)?;
    let (dv, dw) = (module.top_dim(), module.bottom_dim());
    if dv == 0 || dw == 0 {
        return Ok(None);
    }
    let reducer = OmegaReducer::new(g, 3)?;
    let candidates = reducer.quotient_basis();
    for (searched, &mask) in candidates.iter().enumerate() {
        let x = ExteriorVector::monomial(g, mask);
        let mbar = mu_between(&module.top, &module.bottom, &x, Variant::Quotient)?;
        if mbar.is_zero() {
            continue;
        }
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        let zero = FpMatrix::zeros(dw, dv, p);
        for w in section_generators(g) {
            let a = module.top.action_quotient(&w)?;
            let b = module.bottom.action_quotient(&w)?;
            push_section_equations(&mut rows, &mut rhs, &a, &b, &zero);
        }
        let group_system = FpMatrix::from_rows(p, &rows);
        let equivariant_homs = dw * dv - group_system.rank();
        push_section_equations(&mut rows, &mut rhs, &FpMatrix::identity(dv, p), &FpMatrix::identity(dw, p), &mbar);
        let section_exists = FpMatrix::from_rows(p, &rows).solve(&rhs).is_some();
        return Ok(Some(NonsplitWitness {
            p,
            k,
            g,
            x: ExteriorVector::mask_name(g, mask),
            top_dim: dv,
            bottom_dim: dw,
            searched: searched + 1,
            equivariant_homs,
            section_exists,
        }));
    }
    Ok(None)
}

/// Tries `g`, then `g + 1`, up to `max_g`.
pub fn witness_search(p: u32, k: usize, g: usize, max_g: usize) -> Result<Option<NonsplitWitness>> {
    for h in g..=max_g {
        if let Some(w) = nonsplit_witness(p, k, h)? {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// One strand `V^{(j_0)} ← V^{(j_1)} ← ...` of TQFT components with `E`-power maps.
#[derive(Clone, Debug)]
pub struct TqftStrand {
    pub p: u32,
    pub k: usize,
    pub labels: Vec<usize>,
    pub bases: Vec<LefschetzBasis>,
    /// `maps[i - 1]` goes from term `i` to term `i - 1`.
    pub maps: Vec<FpMatrix>,
}

/// `C_{p,k}` on `V^{(j)}(Σ_g)`, assembled blockwise from the Specht-level `E` powers.
pub fn build_tqft_strand(p: u32, k: usize, g: usize) -> Result<TqftStrand> {
    if k == 0 || k >= p as usize {
        return Err(Error::OutOfRange(format!("need 0 < k < p, got {k}")));
    }
    let pu = p as usize;
    let labels: Vec<usize> =
        (0..).map(|i| i * pu + strand_label(pu, k, i)).take_while(|&j| j <= g + 1).collect();
    let bases = labels.iter().map(|&j| LefschetzBasis::new(g, j)).collect::<Result<Vec<_>>>()?;
    let mut maps = Vec::new();
    for i in 1..labels.len() {
        let (src, dst) = (&bases[i], &bases[i - 1]);
        let c0 = (labels[i] - labels[i - 1]) / 2;
        let mut m = FpMatrix::zeros(dst.dim(), src.dim(), p);
        let mut cache: HashMap<usize, FpMatrix> = HashMap::new();
        for block in src.blocks() {
            let n = block.weight.n();
            let target = dst
                .block_of(&block.weight)
                .ok_or_else(|| Error::Precondition(format!("weight {} missing in target", block.weight)))?;
            if !cache.contains_key(&n) {
                cache.insert(n, e_power_map(p, n, labels[i], c0)?);
            }
            let e = &cache[&n];
            for r in 0..e.rows() {
                for c in 0..e.cols() {
                    m.set(target.offset + r, block.offset + c, e.get(r, c));
                }
            }
        }
        maps.push(m);
    }
    Ok(TqftStrand { p, k, labels, bases, maps })
}

impl TqftStrand {
    /// The same maps computed directly as `E^{c_0}` on exterior vectors.
    pub fn direct_maps(&self) -> Result<Vec<FpMatrix>> {
        (1..self.labels.len())
            .map(|i| {
                let c0 = ((self.labels[i] - self.labels[i - 1]) / 2) as u32;
                self.bases[i].map_matrix_mod(&self.bases[i - 1], self.p, |v| Ok(v.e_power(c0)))
            })
            .collect()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.bases.iter().map(LefschetzBasis::dim).collect()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct StrandReport {
    pub k: usize,
    pub labels: Vec<usize>,
    pub dims: Vec<usize>,
    pub ranks: Vec<usize>,
    pub quotient_dim: usize,
    pub compositions_vanish: bool,
    pub matches_direct: bool,
    pub exact: bool,
}

fn strand_report(strand: &TqftStrand) -> Result<StrandReport> {
    let dims = strand.dims();
    let ranks: Vec<usize> = strand.maps.iter().map(FpMatrix::rank).collect();
    let compositions_vanish = strand.maps.windows(2).all(|w| w[0].mul(&w[1]).is_zero());
    let matches_direct = strand.direct_maps()? == strand.maps;
    let (quotient_dim, mut exact) = match strand.bases.first() {
        None => (0, true),
        Some(b0) => {
            let q = ModSpace::new(strand.p, b0.genus(), strand.labels[0])?.quotient;
            let into_radical =
                strand.maps.first().map_or(true, |m| m.columns().iter().all(|c| q.contains_radical_vector(c)));
            let onto = ranks.first().copied().unwrap_or(0) == q.radical().len();
            (q.dim(), into_radical && onto)
        }
    };
    for i in 1..dims.len() {
        let kernel = dims[i] - ranks[i - 1];
        let image = ranks.get(i).copied().unwrap_or(0);
        exact &= kernel == image;
    }
    exact &= compositions_vanish;
    Ok(StrandReport { k: strand.k, labels: strand.labels.clone(), dims, ranks, quotient_dim, compositions_vanish, matches_direct, exact })
}

#[derive(Clone, Debug, Serialize)]
pub struct TwoStrandReport {
    pub p: u32,
    pub k: usize,
    pub g: usize,
    pub strands: Vec<StrandReport>,
    /// `dim U` at each position: the sum of both strands' terms.
    pub u_dims: Vec<usize>,
    pub u_quotient_dim: usize,
    pub compositions_vanish: bool,
    pub exact: bool,
}

impl TwoStrandReport {
    pub fn ok(&self) -> bool {
        self.exact && self.compositions_vanish && self.strands.iter().all(|s| s.matches_direct)
    }
}

fn direct_sum(a: Option<&FpMatrix>, b: Option<&FpMatrix>, shape: [(usize, usize); 2], p: u32) -> FpMatrix {
    let [(ra, ca), (rb, cb)] = shape;
    let mut m = FpMatrix::zeros(ra + rb, ca + cb, p);
    if let Some(a) = a {
        for r in 0..ra {
            for c in 0..ca {
                m.set(r, c, a.get(r, c));
            }
        }
    }
    if let Some(b) = b {
        for r in 0..rb {
            for c in 0..cb {
                m.set(ra + r, ca + c, b.get(r, c));
            }
        }
    }
    m
}

/// The two strands `C_{p,k}` and `C_{p,k+3}` and their direct sum on the `U` terms.
pub fn two_strand_check(p: u32, k: usize, g: usize) -> Result<TwoStrandReport> {
    if k == 0 || k + 3 >= p as usize {
        return Err(Error::OutOfRange(format!("need 0 < k < p - 3, got k = {k}, p = {p}")));
    }
    let s1 = build_tqft_strand(p, k, g)?;
    let s2 = build_tqft_strand(p, k + 3, g)?;
    let (d1, d2) = (s1.dims(), s2.dims());
    let len = d1.len().max(d2.len());
    let dim_at = |d: &[usize], i: usize| d.get(i).copied().unwrap_or(0);
    let u_dims: Vec<usize> = (0..len).map(|i| dim_at(&d1, i) + dim_at(&d2, i)).collect();
    let u_maps: Vec<FpMatrix> = (1..len)
        .map(|i| {
            direct_sum(
                s1.maps.get(i - 1),
                s2.maps.get(i - 1),
                [(dim_at(&d1, i - 1), dim_at(&d1, i)), (dim_at(&d2, i - 1), dim_at(&d2, i))],
                p,
            )
        })
        .collect();
    let compositions_vanish = u_maps.windows(2).all(|w| w[0].mul(&w[1]).is_zero());
    let strands = vec![strand_report(&s1)?, strand_report(&s2)?];
    let exact = strands.iter().all(|s| s.exact);
    let u_quotient_dim = strands.iter().map(|s| s.quotient_dim).sum();
    Ok(TwoStrandReport { p, k, g, strands, u_dims, u_quotient_dim, compositions_vanish, exact })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn genus_one_anticommutator() {
        let g = 1;
        let (a, b) = (ExteriorVector::a(g, 1), ExteriorVector::b(g, 1));
        for v in all_monomials(g) {
            let lhs = mu(&a, &nu(&b, &v).unwrap()).unwrap().add(&nu(&b, &mu(&a, &v).unwrap()).unwrap());
            assert_eq!(lhs, v);
        }
    }

    #[test]
    fn jm_identities_small() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for g in 1..=2 {
            let r = jm_identities_check(g, 4, &mut rng).unwrap();
            assert!(r.ok(), "{:?}", r.failures);
        }
    }

    #[test]
    fn image_containment_holds() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for (m, l, d) in [(1, 1, 0), (1, 0, 1), (2, 1, 0), (1, 2, 0)] {
            assert!(image_containment_check(3, m, l, d, 5, &mut rng).unwrap());
        }
    }

    #[test]
    fn omega_multiples_vanish_on_kernel() {
        let g = 3;
        let y = ExteriorVector::a(g, 2);
        let x = ExteriorVector::omega(g).wedge(&y);
        let reducer = OmegaReducer::new(g, 3).unwrap();
        assert!(reducer.canonical(&x).unwrap().is_zero());
        assert_eq!(reducer.quotient_basis().len(), 14);
        let m = mu_induced(5, 1, 3, &x, Variant::Full).unwrap();
        assert!(m.is_zero());
    }

    #[test]
    fn jm_identity_and_inverse() {
        let g = 2;
        let module = BlockModule::new(5, 1, 1, g, Variant::Full).unwrap();
        let reducer = OmegaReducer::new(g, 1).unwrap();
        let id = module.action(&JmElement::identity(g, 1)).unwrap();
        assert_eq!(id, FpMatrix::identity(module.dim(), 5));
        let x = ExteriorVector::a(g, 1);
        let e = JmElement::new(&reducer, &x, 1, SpWord::default()).unwrap();
        let f = JmElement::new(&reducer, &x.scale(-1), 1, SpWord::default()).unwrap();
        assert_eq!(module.action(&e).unwrap().mul(&module.action(&f).unwrap()), id);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let r = homomorphism_check(&module, 5, &mut rng).unwrap();
        assert_eq!(r.failures, 0);
        assert!(r.bottom_invariant);
    }

    #[test]
    fn witness_at_genus_three() {
        assert!(nonsplit_witness(5, 1, 2).unwrap().is_none());
        let w = nonsplit_witness(5, 1, 3).unwrap().expect("witness");
        assert_eq!((w.top_dim, w.bottom_dim), (14, 1));
        assert!(!w.section_exists);
        assert_eq!(w.equivariant_homs, 0);
    }

    #[test]
    fn two_strand_sequence() {
        let r = two_strand_check(5, 1, 3).unwrap();
        assert!(r.ok(), "{r:?}");
        let r = two_strand_check(7, 3, 4).unwrap();
        assert!(r.ok(), "{r:?}");
    }
}
