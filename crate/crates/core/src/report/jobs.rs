use std::collections::{BTreeMap, HashMap};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::{Check, Job};
use crate::fusion::{self, FusionRing};
use crate::jm::{self, BlockModule, Variant};
use crate::ks;
use crate::resolution::{build_complex, modular_character_check, simple_quotient, verify_exactness};
use crate::fusion::catalan;
use crate::specht::{partitions, Diagram2};
use crate::tensor::Perm;
use crate::tqft::{alexander_trace, root_of_unity_check, ModSpace, SpWord};
use crate::{Error, Result};

pub(super) type Outcome = (Value, Vec<Check>, BTreeMap<String, u64>);

/// Largest `n` for which Gram-radical dimensions are computed on request.
const GRAM_LIMIT: usize = 16;

fn done(results: Value, checks: Vec<Check>) -> Result<Outcome> {
    Ok((results, checks, BTreeMap::new()))
}

fn tau_of(job: &Job) -> Result<Diagram2> {
    let [a, b] = job.need(job.tau, "tau")?;
    Diagram2::new(a, b).map_err(|e| Error::Usage(e.to_string()))
}

fn prime_of(job: &Job) -> Result<u32> {
    let p = job.need(job.p, "p")?;
    crate::arith::checked::require_odd_prime(p).map_err(|e| Error::Usage(e.to_string()))?;
    Ok(p)
}

pub(super) fn resolve(job: &Job) -> Result<Outcome> {
    let p = prime_of(job)?;
    let (n, k) = (job.need(job.n, "n")?, job.need(job.k, "k")?);
    let cx = build_complex(p, n, k).map_err(|e| Error::Usage(e.to_string()))?;
    let report = verify_exactness(&cx);
    let terms: Vec<usize> = cx.terms.iter().rev().map(|t| t.weight).collect();
    let dims: Vec<usize> = cx.terms.iter().rev().map(|t| t.dim).collect();
    let diagrams: Vec<[usize; 2]> = cx.terms.iter().rev().map(|t| [t.diagram.0, t.diagram.1]).collect();
    let spec = format!("resolve --p {p} --n {n} --k {k}");
    let mut checks = Vec::new();
    let bad = report.nodes.iter().find(|x| x.kernel_dim != x.image_dim);
    let details = match bad {
        Some(x) => format!("{spec}: node {} (weight {}) has dim ker {} and dim im {}", x.index, x.weight, x.kernel_dim, x.image_dim),
        None if !report.compositions_vanish => format!("{spec}: consecutive maps do not compose to zero"),
        None if !report.image_in_radical => format!("{spec}: first map leaves the radical"),
        None => format!("{} terms, homology zero", terms.len()),
    };
    checks.push(Check::new("exactness", report.exact, details));
    if k < p as usize && !cx.terms.is_empty() {
        let formula = fusion::d_dim(p, n as u32, k as u32)?;
        checks.push(Check::new(
            "dimension-agreement",
            formula == report.d_dim as i64,
            format!("from complex {}, closed form {formula}", report.d_dim),
        ));
    }
    let results = json!({
        "terms": terms,
        "diagrams": diagrams,
        "dims": dims,
        "exact": report.exact,
        "dimD": report.d_dim,
        "radical_dim": report.radical_dim,
        "homology": report.nodes.iter().rev().map(|x| x.homology).collect::<Vec<_>>(),
    });
    done(results, checks)
}

pub(super) fn character(job: &Job) -> Result<Outcome> {
    let p = prime_of(job)?;
    let tau = tau_of(job)?;
    if tau.c() >= p as usize {
        return Err(Error::Usage(format!("character needs a - b < p, got {tau}")));
    }
    let n = tau.n();
    let cycles = match &job.cycle {
        Some(c) => {
            if c.iter().sum::<usize>() != n || c.contains(&0) {
                return Err(Error::Usage(format!("cycle type {c:?} is not a partition of {n}")));
            }
            vec![c.clone()]
        }
        None => partitions(n),
    };
    let mut rows = Vec::new();
    let mut failures = Vec::new();
    for parts in cycles {
        let sigma = Perm::cycle_type_representative(&parts);
        let r = modular_character_check(p, tau, &sigma)?;
        if r.lhs != r.rhs {
            failures.push(format!("{parts:?}: {} vs {}", r.lhs, r.rhs));
        }
        rows.push(json!({"cycle": parts, "trace": r.lhs, "alternating_sum": r.rhs, "ordinary": r.ordinary}));
    }
    let details = if failures.is_empty() { format!("{} cycle types", rows.len()) } else { failures.join("; ") };
    done(json!({"classes": rows}), vec![Check::new("character-identity", failures.is_empty(), details)])
}

pub(super) fn factors(job: &Job) -> Result<Outcome> {
    let p = prime_of(job)?;
    let tau = tau_of(job)?;
    let list = ks::composition_factors(tau, p)?;
    let ks_dim = ks::ks_simple_dim(tau, p)?;
    let specht_dim = catalan(tau.n() as i64, tau.b as i64);
    let mut checks = Vec::new();
    let mut results = json!({
        "factors": list,
        "specht_dim": specht_dim,
        "ks_dim": ks_dim,
    });
    if tau.n() <= GRAM_LIMIT {
        let gram = simple_quotient(p, tau)?.dim() as i64;
        let mut sum = 0i64;
        for f in &list {
            sum += simple_quotient(p, Diagram2::new(f.diagram.0, f.diagram.1)?)?.dim() as i64;
        }
        results["gram_dim"] = json!(gram);
        checks.push(Check::new("ks-gram-dim", gram == ks_dim, format!("recursive {ks_dim}, Gram {gram}")));
        checks.push(Check::new("ks-partition", sum == specht_dim, format!("Σ dim D = {sum}, dim S = {specht_dim}")));
    } else {
        checks.push(Check::skip("ks-partition", format!("n = {} above the Gram limit {GRAM_LIMIT}", tau.n())));
    }
    match ks::phi_bijection(tau, p) {
        Ok(r) => checks.push(Check::new(
            "phi-bijection",
            r.ok(),
            if r.ok() { format!("k_τ = {}, {} sets", r.k_tau, r.hat_zero_size) } else { r.failures.join("; ") },
        )),
        Err(e) => checks.push(Check::skip("phi-bijection", e.to_string())),
    }
    done(results, checks)
}

pub(super) fn dims(job: &Job) -> Result<Outcome> {
    let p = prime_of(job)?;
    let g = job.need(job.g, "g")?;
    let gu = g as u32;
    let labels: Vec<u32> = (1..p).collect();
    let verlinde = labels.iter().map(|&k| fusion::verlinde_dim(p, k, gu)).collect::<Result<Vec<_>>>()?;
    let assembled = labels.iter().map(|&k| fusion::assembled_dim(p, k, gu)).collect::<Result<Vec<_>>>()?;
    let mut checks =
        vec![Check::new("verlinde-assembled", verlinde == assembled, format!("{verlinde:?} vs {assembled:?}"))];
    let mut results = json!({"verlinde": verlinde, "assembled": assembled});
    if p == 5 {
        let closed = fusion::p5_closed_forms(gu);
        checks.push(Check::new("closed-form", closed.as_slice() == verlinde.as_slice(), format!("{closed:?}")));
        results["closed_form"] = json!(closed);
    }
    if g <= 4 {
        let mut quotient = Vec::new();
        for &k in &labels {
            let d = if k as usize <= g + 1 { ModSpace::new(p, g, k as usize)?.quotient_dim() as i64 } else { 0 };
            quotient.push(d);
        }
        checks.push(Check::new("gram-quotient", quotient == verlinde, format!("{quotient:?}")));
        results["gram_quotient"] = json!(quotient);
    }
    done(results, checks)
}

fn eval_f64(poly: &fusion::IntPoly, x: f64) -> f64 {
    poly.0.iter().rev().fold(0.0, |acc, &c| acc * x + c as f64)
}

pub(super) fn fusion(job: &Job) -> Result<Outcome> {
    let p = prime_of(job)?;
    let max_n = job.n.unwrap_or(12) as u32;
    let max_g = job.g.unwrap_or(6) as u32;
    let r = fusion::tschebycheff_r(p)?;
    let norms = fusion::perron_norms(p)?;
    let r_at_f = eval_f64(&r, norms.f_closed);
    let mut checks = Vec::new();
    checks.push(Check::new(
        "perron-closed-form",
        (norms.f_closed - norms.f_iterated).abs() < 1e-9 && (norms.big_f_closed - norms.big_f_iterated).abs() < 1e-9,
        format!("|f| {} / {}, |F| {} / {}", norms.f_closed, norms.f_iterated, norms.big_f_closed, norms.big_f_iterated),
    ));
    checks.push(Check::new(
        "r-polynomial-norm",
        (r_at_f - norms.big_f_closed).abs() < 1e-9,
        format!("R_p(|f|) = {r_at_f}"),
    ));
    let bad: Vec<u32> = (0..=max_n)
        .filter_map(|n| match fusion::quantum_dim_identity(p, n) {
            Ok((l, r)) if l == r => None,
            _ => Some(n),
        })
        .collect();
    checks.push(Check::new("quantum-dimension", bad.is_empty(), format!("n <= {max_n}, failing {bad:?}")));
    let ring = FusionRing::new(p)?;
    let (f, fs) = (ring.big_f(), ring.big_f_star());
    let mut ratios = Vec::new();
    for g in 0..=max_g {
        let a = ring.power(&fs, g).mult(1);
        let b = ring.power(&f, g).mult(1);
        ratios.push(a == b << g);
    }
    checks.push(Check::new("star-doubling", ratios.iter().all(|&x| x), format!("g <= {max_g}")));
    let mut results = json!({
        "r_polynomial": r.to_string(),
        "f_norm": norms.f_closed,
        "big_f_norm": norms.big_f_closed,
        "r_at_f_norm": r_at_f,
    });
    if p == 5 {
        let sums: Vec<[i64; 4]> = (1..=12).map(fusion::fibonacci_catalan_sums).collect();
        let ok = sums.iter().zip(1i64..).all(|(s, r)| {
            *s == [fusion::fib(2 * r), fusion::fib(2 * r), fusion::fib(2 * r + 1), fusion::fib(2 * r + 1)]
        });
        checks.push(Check::new("fibonacci-catalan", ok, "r <= 12"));
        results["fibonacci_catalan"] = json!(sums);
    }
    done(results, checks)
}

pub(super) fn alexander(job: &Job) -> Result<Outcome> {
    let g = job.need(job.g, "g")?;
    let word = match &job.word {
        Some(w) => SpWord::parse(w).map_err(|e| Error::Usage(e.to_string()))?,
        None => {
            let mut rng = ChaCha8Rng::seed_from_u64(job.seed_or_default());
            SpWord::random_group_word(&mut rng, g, 6)
        }
    };
    let trace = alexander_trace(&word, g).map_err(|e| Error::Usage(e.to_string()))?;
    let mut checks = vec![Check::new(
        "alexander-decomposition",
        trace.decomposition_holds,
        format!("T(y) = {}, Σ [j]_y t_j = {}", trace.poly, trace.lefschetz_sum()),
    )];
    let mut results = json!({
        "word": word.to_string(),
        "trace": trace.poly.to_string(),
        "alexander": trace.alexander().to_string(),
        "lefschetz_traces": trace.lefschetz_traces,
    });
    if job.p.is_some() {
        let p = prime_of(job)?;
        let signs: Vec<i8> = match job.sign {
            Some(s) => vec![s],
            None => vec![1, -1],
        };
        let mut rows = Vec::new();
        for s in signs {
            let t = root_of_unity_check(p, &word, g, s).map_err(|e| Error::Usage(e.to_string()))?;
            checks.push(Check::new(
                &format!("root-of-unity-{}", if s > 0 { "plus" } else { "minus" }),
                t.ok(),
                format!("lhs {}, rhs {}, paired {}", t.lhs, t.rhs, t.rhs_paired),
            ));
            rows.push(json!({"sign": s, "value": t.lhs.to_string(), "quotient_traces": t.quotient_traces}));
        }
        results["root_of_unity"] = json!(rows);
    }
    done(results, checks)
}

pub(super) fn jm(job: &Job) -> Result<Outcome> {
    let p = job.p.unwrap_or(5);
    crate::arith::checked::require_odd_prime(p).map_err(|e| Error::Usage(e.to_string()))?;
    let k = job.k.unwrap_or(1);
    let g = job.g.unwrap_or(3);
    if k == 0 || k + 3 >= p as usize {
        return Err(Error::Usage(format!("jm needs 0 < k < p - 3, got k = {k}, p = {p}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(job.seed_or_default());
    let (trials, pairs) = if job.quick { (5, 10) } else { (20, 50) };
    let mut checks = Vec::new();
    let mut results = json!({});

    let ids = jm::jm_identities_check(g.min(3), trials, &mut rng)?;
    checks.push(Check::new("jm-identities", ids.ok(), format!("{:?} {:?}", ids.checked, ids.failures)));

    let module = BlockModule::new(p, k, 3, g, Variant::Quotient)?;
    let hom = jm::homomorphism_check(&module, pairs, &mut rng)?;
    checks.push(Check::new(
        "block-homomorphism",
        hom.failures == 0 && hom.bottom_invariant,
        format!("{} pairs on a module of dim {}, {} failures", hom.pairs, module.dim(), hom.failures),
    ));

    let witness = jm::witness_search(p, k, g, g.max(4))?;
    match &witness {
        Some(w) => checks.push(Check::new(
            "non-split",
            !w.section_exists,
            format!("x = {} at genus {}, section exists: {}", w.x, w.g, w.section_exists),
        )),
        None => checks.push(Check::new("non-split", false, format!("no witness up to genus {}", g.max(4)))),
    }
    results["witness"] = json!(witness);

    let seq = jm::two_strand_check(p, k, g)?;
    checks.push(Check::new(
        "two-strand-sequence",
        seq.ok(),
        format!("U dims {:?}, quotient {}", seq.u_dims, seq.u_quotient_dim),
    ));
    results["sequence"] = json!(seq);
    done(results, checks)
}

/// Gram-radical quotient dimensions, memoised per diagram.
#[derive(Default)]
pub(super) struct GramCache {
    p: u32,
    dims: HashMap<Diagram2, usize>,
}

impl GramCache {
    pub(super) fn new(p: u32) -> Self {
        Self { p, dims: HashMap::new() }
    }

    pub(super) fn dim(&mut self, tau: Diagram2) -> Result<usize> {
        if let Some(&d) = self.dims.get(&tau) {
            return Ok(d);
        }
        let d = simple_quotient(self.p, tau)?.dim();
        self.dims.insert(tau, d);
        Ok(d)
    }
}
