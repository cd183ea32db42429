use modres_core::arith::{CyclotomicElem, FpMatrix, LaurentInt};
use modres_core::fusion::{catalan, d_dim, FusionElement, FusionRing};
use modres_core::ks::ks_simple_dim;
use modres_core::resolution::simple_quotient;
use modres_core::specht::Diagram2;
use modres_core::tensor::TensorVector;
use modres_core::tqft::symplectic::pairing;
use modres_core::tqft::{ExteriorVector, SpWord, Weight};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn prime() -> impl Strategy<Value = u32> {
    prop::sample::select(vec![3u32, 5, 7, 11, 13])
}

fn fusion_pair() -> impl Strategy<Value = (u32, Vec<i64>, Vec<i64>, Vec<i64>)> {
    prime().prop_flat_map(|p| {
        let v = || prop::collection::vec(-3i64..4, p as usize - 1);
        (Just(p), v(), v(), v())
    })
}

fn laurent() -> impl Strategy<Value = LaurentInt> {
    prop::collection::vec((-4i32..5, -5i64..6), 0..6).prop_map(LaurentInt::from_terms)
}

fn tensor(n: usize) -> impl Strategy<Value = TensorVector> {
    prop::collection::vec((0u32..1 << n, -3i64..4), 0..6).prop_map(move |t| TensorVector::from_terms(n, t))
}

fn exterior(g: usize) -> impl Strategy<Value = ExteriorVector> {
    prop::collection::vec((0u32..1 << (2 * g), -3i64..4), 0..6).prop_map(move |t| ExteriorVector::from_terms(g, t))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn catalan_column_sums(n in 0i64..20) {
        let total: i64 = (0..=n / 2).map(|j| catalan(n, j) * (n - 2 * j + 1)).sum();
        prop_assert_eq!(total, 1i64 << n);
    }

    #[test]
    fn catalan_reflection(n in 0i64..20, j in -5i64..25) {
        prop_assert_eq!(catalan(n, j), -catalan(n, n + 1 - j));
    }

    #[test]
    fn simple_dims_follow_fusion_by_two(p in prime(), n in 0u32..18, k in 1u32..13) {
        prop_assume!(k < p && (n + k) % 2 == 0);
        let below = |k: u32| if k == 0 { 0 } else { d_dim(p, n, k).unwrap() };
        let up = if k + 1 < p { d_dim(p, n, k + 1).unwrap() } else { 0 };
        prop_assert_eq!(d_dim(p, n + 1, k).unwrap(), below(k - 1) + up);
    }

    #[test]
    fn fusion_is_commutative_and_associative((p, a, b, c) in fusion_pair()) {
        let ring = FusionRing::new(p).unwrap();
        let (a, b, c) = (
            FusionElement::from_mults(p, a).unwrap(),
            FusionElement::from_mults(p, b).unwrap(),
            FusionElement::from_mults(p, c).unwrap(),
        );
        prop_assert_eq!(ring.multiply(&a, &b), ring.multiply(&b, &a));
        prop_assert_eq!(ring.multiply(&ring.multiply(&a, &b), &c), ring.multiply(&a, &ring.multiply(&b, &c)));
        prop_assert_eq!(ring.multiply(&a, &b.add(&c)), ring.multiply(&a, &b).add(&ring.multiply(&a, &c)));
    }

    #[test]
    fn laurent_ring_laws(a in laurent(), b in laurent(), c in laurent()) {
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.negate_variable().negate_variable(), a.clone());
        prop_assert_eq!(a.bar().mul(&b.bar()), a.mul(&b).bar());
    }

    #[test]
    fn cyclotomic_matches_complex_values(p in prime(), a in laurent(), b in laurent()) {
        let za = modres_core::arith::cyclotomic_eval(&a, p, 1, None);
        let zb = modres_core::arith::cyclotomic_eval(&b, p, 1, None);
        let (x, y) = za.mul(&zb).to_complex();
        let (xa, ya) = za.to_complex();
        let (xb, yb) = zb.to_complex();
        prop_assert!((x - (xa * xb - ya * yb)).abs() < 1e-6);
        prop_assert!((y - (xa * yb + ya * xb)).abs() < 1e-6);
        prop_assert_eq!(za.conj().conj(), za.clone());
        let back = za.sub(&zb).add(&zb);
        prop_assert_eq!(back, za);
        prop_assert!(CyclotomicElem::zero(p, None).is_zero());
    }

    #[test]
    fn rank_nullity(p in prime(), rows in prop::collection::vec(prop::collection::vec(-9i64..10, 5), 1..7)) {
        let m = FpMatrix::from_rows(p, &rows);
        prop_assert_eq!(m.rank() + m.kernel().len(), m.cols());
        for v in m.kernel() {
            prop_assert!(m.mul_vec(&v).iter().all(|&x| x == 0));
        }
        prop_assert_eq!(m.transpose().rank(), m.rank());
    }

    #[test]
    fn tensor_sl2_relations(v in tensor(6)) {
        let ef = v.apply_f().apply_e();
        let fe = v.apply_e().apply_f();
        prop_assert_eq!(ef.sub(&fe), v.apply_h());
        prop_assert_eq!(v.apply_e().inner(&v), v.inner(&v.apply_f()));
    }

    #[test]
    fn exterior_sl2_relations(v in exterior(3)) {
        prop_assert_eq!(v.apply_f().apply_e().sub(&v.apply_e().apply_f()), v.apply_h());
        prop_assert_eq!(v.apply_e().inner(&v), v.inner(&v.apply_f()));
    }

    #[test]
    fn symplectic_words_preserve_pairing(seed in any::<u64>(), g in 1usize..4, i in 0usize..12, j in 0usize..12) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = SpWord::random_group_word(&mut rng, g, 6);
        let basis = |k: usize| if k % 2 == 0 { ExteriorVector::a(g, k / 2 % g + 1) } else { ExteriorVector::b(g, k / 2 % g + 1) };
        let (x, y) = (basis(i), basis(j));
        prop_assert_eq!(pairing(&w.apply(&x).unwrap(), &w.apply(&y).unwrap()).unwrap(), pairing(&x, &y).unwrap());
        let v = x.wedge(&ExteriorVector::b(g, 1)).add(&y);
        prop_assert_eq!(w.inverse(g).unwrap().apply(&w.apply(&v).unwrap()).unwrap(), v);
        let omega = ExteriorVector::omega(g);
        prop_assert_eq!(w.apply(&omega).unwrap(), omega);
    }

    #[test]
    fn upsilon_is_isometric(g in 1usize..5, pick in any::<prop::sample::Index>(), u in tensor(4), v in tensor(4)) {
        let weights: Vec<Weight> = Weight::all(g).into_iter().filter(|w| w.n() <= 4).collect();
        let lambda = pick.get(&weights);
        let n = lambda.n();
        let restrict = |x: &TensorVector| TensorVector::from_terms(n, x.terms().filter(|(m, _)| *m < 1 << n));
        let (u, v) = (restrict(&u), restrict(&v));
        prop_assert_eq!(lambda.upsilon(&u).unwrap().inner(&lambda.upsilon(&v).unwrap()), u.inner(&v));
        prop_assert_eq!(lambda.upsilon_inverse(&lambda.upsilon(&u).unwrap()).unwrap(), u);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn ks_dimension_is_gram_dimension(p in prop::sample::select(vec![3u32, 5, 7]), n in 0usize..11, b in 0usize..6) {
        prop_assume!(2 * b <= n);
        let tau = Diagram2::new(n - b, b).unwrap();
        prop_assert_eq!(ks_simple_dim(tau, p).unwrap(), simple_quotient(p, tau).unwrap().dim() as i64);
    }
}
