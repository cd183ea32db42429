//! The acceptance criteria as a runnable suite.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use super::jobs::{GramCache, Outcome};
use super::{run_batch, with_workers, Check, Command, Job, RunOptions, Status};
use crate::fusion::{self, catalan, FusionRing};
use crate::jm::{self, BlockModule, Variant};
use crate::ks::{self, KsContext};
use crate::resolution::{build_complex, modular_character_check, verify_exactness};
use crate::specht::{partitions, Diagram2};
use crate::tensor::{Perm, TensorVector};
use crate::tqft::tableau_rules::tableau_rules_check;
use crate::tqft::weights::{handle_minus, handle_plus, root_action_check};
use crate::tqft::{alexander_trace, root_of_unity_check, ExteriorVector, ModSpace, SpWord, Weight};
use crate::Result;

pub const CRITERIA: [&str; 13] = [
    "exactness",
    "dimension-agreement",
    "ks-partition",
    "character-identity",
    "fibonacci-dimensions",
    "quantum-dimension",
    "verlinde-dimensions",
    "r-polynomials",
    "lattice-checks",
    "alexander-decomposition",
    "root-of-unity",
    "jm-suite",
    "determinism",
];

pub const R_PRINTED: [(u32, &str); 5] = [
    (5, "f"),
    (7, "2f^2 - 7f + 7"),
    (9, "2f^3 - 9f^2 + 9f + 3"),
    (11, "3f^4 - 22f^3 + 55f^2 - 55f + 22"),
    (13, "3f^5 - 26f^4 + 78f^3 - 91f^2 + 26f + 13"),
];

pub const TOLERANCE: f64 = 1e-9;

#[derive(Clone, Copy, Debug)]
pub struct SelftestConfig {
    pub seed: u64,
    pub quick: bool,
}

impl SelftestConfig {
    fn rng(&self, id: usize) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(id as u64))
    }

    fn pick<T>(&self, quick: T, full: T) -> T {
        if self.quick {
            quick
        } else {
            full
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub id: usize,
    pub name: &'static str,
    pub status: Status,
    pub details: String,
}

impl CriterionResult {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn line(&self) -> String {
        format!("criterion {:>2} {:<24} {}: {}", self.id, self.name, self.status.label(), self.details)
    }
}

/// Collects failures; the criterion passes when none are recorded.
struct Tally {
    checked: usize,
    failures: Vec<String>,
}

impl Tally {
    fn new() -> Self {
        Self { checked: 0, failures: Vec::new() }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.failures.len() < 8 {
            self.failures.push(what());
        } else if !ok {
            self.failures.push(String::new());
        }
    }

    fn finish(self, summary: String) -> (bool, String) {
        if self.failures.is_empty() {
            (true, format!("{summary}; {} checks", self.checked))
        } else {
            let shown: Vec<&str> = self.failures.iter().map(String::as_str).filter(|s| !s.is_empty()).collect();
            (false, format!("{} of {} failed: {}", self.failures.len(), self.checked, shown.join("; ")))
        }
    }
}

const PRIMES: [u32; 3] = [3, 5, 7];

fn two_row_diagrams(n: usize) -> impl Iterator<Item = Diagram2> {
    (0..=n / 2).map(move |b| Diagram2 { a: n - b, b })
}

fn c1_exactness(cfg: &SelftestConfig) -> Result<(bool, String)> {
    let max_n = cfg.pick(8, 12);
    let mut t = Tally::new();
    for p in PRIMES {
        for n in 0..=max_n {
            for k in (1..p as usize).filter(|k| (n + 1 + k) % 2 == 0 && *k <= n + 1) {
                let r = verify_exactness(&build_complex(p, n, k)?);
                let interior = r.nodes.iter().skip(1).all(|x| x.homology == 0);
                t.check(r.exact && interior, || {
                    let bad = r.nodes.iter().find(|x| x.kernel_dim != x.image_dim);
                    match bad {
                        Some(x) => format!("p={p} n={n} k={k}: node {} ker {} im {}", x.index, x.kernel_dim, x.image_dim),
                        None => format!("p={p} n={n} k={k}"),
                    }
                });
            }
        }
    }
    Ok(t.finish(format!("p in {PRIMES:?}, n <= {max_n}")))
}

fn c2_dimensions(cfg: &SelftestConfig) -> Result<(bool, String)> {
    let max_n = cfg.pick(8, 12);
    let mut t = Tally::new();
    for p in PRIMES {
        let mut gram = GramCache::new(p);
        for n in 0..=max_n {
            for tau in two_row_diagrams(n).filter(|d| d.c() < p as usize) {
                let k = tau.c();
                let from_complex = verify_exactness(&build_complex(p, n, k)?).d_dim as i64;
                let formula = fusion::d_dim(p, n as u32, k as u32)?;
                let radical = gram.dim(tau)? as i64;
                t.check(from_complex == formula && formula == radical, || {
                    format!("p={p} τ={tau}: complex {from_complex}, formula {formula}, Gram {radical}")
                });
            }
        }
    }
    Ok(t.finish(format!("τ with c < p, n <= {max_n}")))
}

fn random_phi_context<R: Rng>(rng: &mut R) -> (u32, Diagram2) {
    loop {
        let p = PRIMES[rng.gen_range(0..PRIMES.len())];
        let b = rng.gen_range(0..=30usize);
        let c = rng.gen_range(p as usize + 1..=(p as usize).pow(3));
        if c % p as usize != 0 {
            return (p, Diagram2 { a: b + c - 1, b });
        }
    }
}

fn c3_ks(cfg: &SelftestConfig) -> Result<(bool, String)> {
    let max_n = cfg.pick(8, 12);
    let contexts = cfg.pick(40, 200);
    let mut t = Tally::new();
    for p in PRIMES {
        let mut gram = GramCache::new(p);
        for n in 0..=max_n {
            for tau in two_row_diagrams(n) {
                let mut sum = 0i64;
                for f in ks::composition_factors(tau, p)? {
                    sum += gram.dim(Diagram2 { a: f.diagram.0, b: f.diagram.1 })? as i64;
                }
                let specht = catalan(n as i64, tau.b as i64);
                t.check(sum == specht, || format!("p={p} τ={tau}: Σ {sum} vs {specht}"));
                let rec = ks::ks_simple_dim(tau, p)?;
                let own = gram.dim(tau)? as i64;
                t.check(rec == own, || format!("p={p} τ={tau}: recursive {rec} vs Gram {own}"));
            }
        }
    }
    let mut rng = cfg.rng(3);
    for _ in 0..contexts {
        let (p, tau) = random_phi_context(&mut rng);
        let r = ks::phi_bijection(tau, p)?;
        t.check(r.ok(), || format!("φ at p={p} τ={tau}: {}", r.failures.join(", ")));
        let ctx = KsContext::new(tau, p)?;
        t.check(ctx.admissible_sets().iter().any(|(s, d)| s.is_empty() && *d == 0), || {
            format!("p={p} τ={tau}: ∅ not admissible")
        });
    }
    Ok(t.finish(format!("n <= {max_n}, {contexts} seeded φ contexts")))
}

fn c4_characters(cfg: &SelftestConfig) -> Result<(bool, String)> {
    let max_n = cfg.pick(7, 9);
    let mut t = Tally::new();
    for p in PRIMES {
        for n in 0..=max_n {
            let classes = partitions(n);
            for tau in two_row_diagrams(n).filter(|d| d.c() < p as usize) {
                for parts in &classes {
                    let r = modular_character_check(p, tau, &Perm::cycle_type_representative(parts))?;
                    t.check(r.lhs == r.rhs, || format!("p={p} τ={tau} σ={parts:?}: {} vs {}", r.lhs, r.rhs));
                }
            }
        }
    }
    Ok(t.finish(format!("every cycle type, n <= {max_n}")))
}

fn c5_fibonacci(cfg: &SelftestConfig) -> Result<(bool, String)> {
    let max_n = cfg.pick(10, 14);
    let mut t = Tally::new();
    let mut gram = GramCache::new(5);
    for n in 2..=max_n {
        let r = n / 2;
        let (main, other) = if n % 2 == 0 {
            (Diagram2 { a: r + 1, b: r - 1 }, Diagram2 { a: r, b: r })
        } else {
            (Diagram2 { a: r + 1, b: r }, Diagram2 { a: r + 2, b: r - 1 })
        };
        let (f_n, f_prev) = (fusion::fib(n as i64), fusion::fib(n as i64 - 1));
        let (d1, d2) = (gram.dim(main)? as i64, gram.dim(other)? as i64);
        t.check(d1 == f_n && d2 == f_prev, || format!("n={n}: {main} {d1} vs {f_n}, {other} {d2} vs {f_prev}"));
    }
    for r in 1..=12i64 {
        let want = [fusion::fib(2 * r), fusion::fib(2 * r), fusion::fib(2 * r + 1), fusion::fib(2 * r + 1)];
        let got = fusion::fibonacci_catalan_sums(r);
        t.check(got == want, || format!("r={r}: {got:?} vs {want:?}"));
    }
    Ok(t.finish(format!("n <= {max_n}, r <= 12")))
}

fn c6_quantum(cfg: &SelftestConfig) -> Result<(bool, String)> {
    let max_n = cfg.pick(8, 12);
    let mut t = Tally::new();
    for p in [3, 5, 7, 11] {
        for n in 0..=max_n {
            let (lhs, rhs) = fusion::quantum_dim_identity(p, n)?;
            t.check(lhs == rhs, || format!("p={p} n={n}: {lhs} vs {rhs}"));
        }
    }
    Ok(t.finish(format!("p in [3, 5, 7, 11], n <= {max_n}")))
}

fn c7_verlinde(cfg: &SelftestConfig) -> Result<(bool, String)> {
    let mut t = Tally::new();
    for p in PRIMES {
        for g in 0..=5u32 {
            for k in 1..p {
                let (v, a) = (fusion::verlinde_dim(p, k, g)?, fusion::assembled_dim(p, k, g)?);
                t.check(v == a, || format!("p={p} g={g} k={k}: {v} vs {a}"));
            }
        }
    }
    for g in 1..=8u32 {
        let closed = fusion::p5_closed_forms(g);
        let mults = [1, 2, 3, 4].map(|k| fusion::verlinde_dim(5, k, g).expect("p = 5"));
        t.check(closed == mults, || format!("g={g}: {closed:?} vs {mults:?}"));
    }
    t.check(fusion::p5_closed_forms(2) == [5, 4, 1, 0], || "g=2 values".into());
    t.check(fusion::p5_closed_forms(3) == [14, 14, 6, 1], || "g=3 values".into());
    for p in PRIMES {
        let ring = FusionRing::new(p)?;
        for g in 0..=6u32 {
            let star = ring.power(&ring.big_f_star(), g).mult(1);
            let plain = ring.power(&ring.big_f(), g).mult(1);
            t.check(star == plain << g, || format!("p={p} g={g}: {star} vs 2^g {plain}"));
        }
    }
    let max_g = cfg.pick(2, 3);
    for p in PRIMES {
        for g in 1..=max_g {
            for j in 1..(p as usize).min(g + 2) {
                let q = ModSpace::new(p, g, j)?.quotient_dim() as i64;
                let v = fusion::verlinde_dim(p, j as u32, g as u32)?;
                t.check(q == v, || format!("p={p} g={g} j={j}: quotient {q} vs {v}"));
            }
        }
    }
    Ok(t.finish(format!("g <= 5, closed forms g <= 8, doubling g <= 6, quotients g <= {max_g}")))
}

fn c8_polynomials(_: &SelftestConfig) -> Result<(bool, String)> {
    let mut t = Tally::new();
    for (p, printed) in R_PRINTED {
        let got = fusion::tschebycheff_r(p)?.to_string();
        t.check(got == printed, || format!("R_{p} = {got}"));
    }
    for p in [5, 7, 11, 13] {
        let r = fusion::tschebycheff_r(p)?;
        let n = fusion::perron_norms(p)?;
        let at = r.0.iter().rev().fold(0.0f64, |acc, &c| acc * n.f_closed + c as f64);
        t.check((at - n.big_f_closed).abs() < TOLERANCE, || format!("p={p}: R_p(|f|) = {at} vs {}", n.big_f_closed));
        t.check((n.f_closed - n.f_iterated).abs() < TOLERANCE, || format!("p={p}: |f| {} vs {}", n.f_closed, n.f_iterated));
        t.check((n.big_f_closed - n.big_f_iterated).abs() < TOLERANCE, || {
            format!("p={p}: |F| {} vs {}", n.big_f_closed, n.big_f_iterated)
        });
    }
    Ok(t.finish(format!("R_5..R_13 verbatim, tolerance {TOLERANCE:e}")))
}

fn upsilon_checks(t: &mut Tally, lambda: &Weight) -> Result<()> {
    let n = lambda.n();
    let images: Vec<ExteriorVector> =
        (0..1u32 << n).map(|e| lambda.upsilon(&TensorVector::from_terms(n, [(e, 1)]))).collect::<Result<_>>()?;
    for (e, v) in images.iter().enumerate() {
        let x = TensorVector::from_terms(n, [(e as u32, 1)]);
        let ok = lambda.upsilon(&x.apply_e())? == v.apply_e()
            && lambda.upsilon(&x.apply_f())? == v.apply_f()
            && lambda.upsilon(&x.apply_h())? == v.apply_h();
        t.check(ok, || format!("Υ at λ={lambda}, ε={e:b}"));
        let ok = images.iter().enumerate().all(|(f, w)| v.inner(w) == i64::from(e == f));
        t.check(ok, || format!("Υ isometry at λ={lambda}, ε={e:b}"));
    }
    Ok(())
}

fn c9_lattice(_: &SelftestConfig) -> Result<(bool, String)> {
    let max_g = 4;
    let mut t = Tally::new();
    let mut seen = BTreeMap::new();
    for g in 1..=max_g {
        for lambda in Weight::all(g) {
            upsilon_checks(&mut t, &lambda)?;
            for i in 1..=g {
                t.check(root_action_check(&lambda, i)?, || format!("root table λ={lambda} i={i}"));
            }
        }
        let r = tableau_rules_check(g)?;
        t.check(r.ok(), || format!("tableau rules g={g}: {:?}", r.failures));
        for (case, count) in r.checked {
            *seen.entry(case).or_insert(0usize) += count;
        }
    }
    let all = crate::tqft::tableau_rules::TableauRule::ALL.iter().all(|c| seen.get(c).copied().unwrap_or(0) > 0);
    t.check(all, || format!("tableau rule cases seen: {seen:?}"));
    for g in 0..=3 {
        for m in 0..1u32 << (2 * g) {
            let v = ExteriorVector::monomial(g, m);
            t.check(handle_minus(&handle_plus(&v))? == v, || format!("handles g={g} m={m:b}"));
        }
    }
    Ok(t.finish(format!("g <= {max_g}, handles g <= 3")))
}

fn c10_alexander(cfg: &SelftestConfig) -> Result<(bool, String)> {
    let words = cfg.pick(10, 25);
    let mut rng = cfg.rng(10);
    let mut t = Tally::new();
    for g in 1..=3 {
        for _ in 0..words {
            let w = SpWord::random_group_word(&mut rng, g, 6);
            let r = alexander_trace(&w, g)?;
            t.check(r.decomposition_holds, || format!("g={g} w={w}: {} vs {}", r.poly, r.lefschetz_sum()));
        }
    }
    Ok(t.finish(format!("g <= 3, {words} words each")))
}

fn c11_root_of_unity(cfg: &SelftestConfig) -> Result<(bool, String)> {
    let words = cfg.pick(4, 10);
    let mut rng = cfg.rng(11);
    let mut t = Tally::new();
    for p in [3, 5] {
        for g in 1..=3 {
            for sign in [1i8, -1] {
                for _ in 0..words {
                    let w = SpWord::random_group_word(&mut rng, g, 6);
                    let r = root_of_unity_check(p, &w, g, sign)?;
                    t.check(r.ok(), || format!("p={p} g={g} s={sign} w={w}: {} / {} / {}", r.lhs, r.rhs, r.rhs_paired));
                }
            }
        }
    }
    Ok(t.finish(format!("p in [3, 5], g <= 3, both signs, {words} words each")))
}

fn c12_jm(cfg: &SelftestConfig) -> Result<(bool, String)> {
    let (trials, pairs) = cfg.pick((5, 10), (20, 50));
    let mut rng = cfg.rng(12);
    let mut t = Tally::new();
    for g in 1..=3 {
        let r = jm::jm_identities_check(g, trials, &mut rng)?;
        t.check(r.ok(), || format!("identities g={g}: {:?}", r.failures));
    }
    for (m, l, d) in [(1, 1, 0), (1, 0, 1), (2, 1, 0), (1, 2, 0), (3, 1, 0)] {
        t.check(jm::image_containment_check(3, m, l, d, trials, &mut rng)?, || format!("image containment m={m} l={l} d={d}"));
    }
    let module = BlockModule::new(5, 1, 3, 3, Variant::Quotient)?;
    let h = jm::homomorphism_check(&module, pairs, &mut rng)?;
    t.check(h.failures == 0 && h.bottom_invariant, || format!("homomorphism: {} of {} pairs failed", h.failures, h.pairs));
    let witness = jm::witness_search(5, 1, 3, 4)?;
    let summary = match &witness {
        Some(w) => format!("witness {} at g={} with {} equivariant maps", w.x, w.g, w.equivariant_homs),
        None => "no witness".into(),
    };
    t.check(witness.as_ref().is_some_and(|w| !w.section_exists), || summary.clone());
    for (p, k, g) in [(5, 1, 3), (7, 3, 4)] {
        let r = jm::two_strand_check(p, k, g)?;
        t.check(r.ok(), || format!("two-strand sequence p={p} k={k} g={g}: {:?}", r.u_dims));
    }
    Ok(t.finish(format!("{pairs} pairs, {summary}")))
}

/// A fixed batch exercising every job kind.
pub fn determinism_batch(seed: u64) -> Vec<Job> {
    let mut jobs = Vec::new();
    let mut j = Job::new(Command::Resolve);
    (j.p, j.n, j.k) = (Some(5), Some(9), Some(2));
    jobs.push(j);
    let mut j = Job::new(Command::Character);
    (j.p, j.tau) = (Some(5), Some([4, 2]));
    jobs.push(j);
    let mut j = Job::new(Command::Factors);
    (j.p, j.tau) = (Some(3), Some([9, 2]));
    jobs.push(j);
    let mut j = Job::new(Command::Dims);
    (j.p, j.g) = (Some(5), Some(3));
    jobs.push(j);
    let mut j = Job::new(Command::Fusion);
    j.p = Some(7);
    jobs.push(j);
    let mut j = Job::new(Command::Alexander);
    (j.p, j.g, j.seed) = (Some(5), Some(2), Some(seed));
    jobs.push(j);
    let mut j = Job::new(Command::Jm);
    (j.seed, j.quick) = (Some(seed), true);
    jobs.push(j);
    jobs
}

fn c13_determinism(cfg: &SelftestConfig) -> Result<(bool, String)> {
    let jobs = determinism_batch(cfg.seed);
    let render = |workers: usize| -> Result<String> {
        let reports = with_workers(workers, || run_batch(&jobs, RunOptions::default()))??;
        Ok(super::Aggregate::new(reports).to_json())
    };
    let (a, b, c) = (render(1)?, render(4)?, render(4)?);
    let mut t = Tally::new();
    t.check(a == b, || "1 vs 4 workers differ".into());
    t.check(b == c, || "repeated runs differ".into());
    Ok(t.finish(format!("{} jobs, {} bytes", jobs.len(), a.len())))
}

/// Runs criterion `id` (1-based).
pub fn run_criterion(id: usize, cfg: &SelftestConfig) -> CriterionResult {
    let f = match id {
        1 => c1_exactness,
        2 => c2_dimensions,
        3 => c3_ks,
        4 => c4_characters,
        5 => c5_fibonacci,
        6 => c6_quantum,
        7 => c7_verlinde,
        8 => c8_polynomials,
        9 => c9_lattice,
        10 => c10_alexander,
        11 => c11_root_of_unity,
        12 => c12_jm,
        13 => c13_determinism,
        _ => panic!("no criterion {id}"),
    };
    let (status, details) = match f(cfg) {
        Ok((ok, d)) => (Status::from_bool(ok), d),
        Err(e) => (Status::Fail, format!("error: {e}")),
    };
    CriterionResult { id, name: CRITERIA[id - 1], status, details }
}

pub(super) fn selftest(job: &Job) -> Result<Outcome> {
    let cfg = SelftestConfig { seed: job.seed_or_default(), quick: job.quick };
    let results: Vec<CriterionResult> = (1..=CRITERIA.len()).map(|id| run_criterion(id, &cfg)).collect();
    let checks = results
        .iter()
        .map(|r| Check { name: format!("criterion-{}-{}", r.id, r.name), status: r.status, details: r.details.clone() })
        .collect();
    Ok((json!({"criteria": results.len(), "quick": cfg.quick, "seed": cfg.seed}), checks, BTreeMap::new()))
}
