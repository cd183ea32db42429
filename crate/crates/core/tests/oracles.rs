//! Independent computations of values the library derives another way.

use std::f64::consts::PI;

use modres_core::fusion::{d_dim, verlinde_dim};
use modres_core::specht::{partitions, Diagram2, SpechtBasis};
use modres_core::tensor::Perm;
use modres_core::tqft::{alexander_trace, SpWord};
use modres_core::arith::IntMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// `d_k^n` for p = 5 and p = 7, odd labels first; n = 0..=8.
const D5: [[i64; 2]; 9] = [[1, 0], [1, 0], [1, 1], [2, 1], [2, 3], [5, 3], [5, 8], [13, 8], [13, 21]];
const D7: [[i64; 3]; 9] = [
    [1, 0, 0],
    [1, 0, 0],
    [1, 1, 0],
    [2, 1, 0],
    [2, 3, 1],
    [5, 4, 1],
    [5, 9, 5],
    [14, 14, 5],
    [14, 28, 19],
];

fn gram_rank(p: u32, n: usize, k: usize) -> i64 {
    if k > n + 1 {
        return 0;
    }
    let d = Diagram2::from_weight(n, k).unwrap();
    SpechtBasis::new(d).gram().reduce(p).rank() as i64
}

fn labels(p: u32, n: usize) -> Vec<usize> {
    (1..p as usize).filter(|k| (n + 1 + k) % 2 == 0).collect()
}

#[test]
fn simple_dims_from_gram_rank() {
    for n in 0..=8 {
        let five: Vec<i64> = labels(5, n).into_iter().map(|k| gram_rank(5, n, k)).collect();
        let seven: Vec<i64> = labels(7, n).into_iter().map(|k| gram_rank(7, n, k)).collect();
        assert_eq!(five, D5[n], "p=5 n={n}");
        assert_eq!(seven, D7[n], "p=7 n={n}");
        for (p, ks) in [(5, labels(5, n)), (7, labels(7, n))] {
            for k in ks {
                assert_eq!(d_dim(p, n as u32, k as u32).unwrap(), gram_rank(p, n, k));
            }
        }
    }
}

/// Multiplicity of `{k}` in `(2{1} + {2})^g` through the modular S-matrix.
fn verlinde_numeric(p: u32, k: u32, g: u32) -> i64 {
    let s = |a: u32, b: u32| (2.0 / p as f64).sqrt() * (PI * (a * b) as f64 / p as f64).sin();
    let total: f64 = (1..p)
        .map(|j| {
            let lambda = 2.0 + 2.0 * (PI * j as f64 / p as f64).cos();
            s(1, j) * s(k, j) * lambda.powi(g as i32)
        })
        .sum();
    total.round() as i64
}

#[test]
fn verlinde_against_s_matrix() {
    let frozen3 = [[2, 1], [5, 4], [14, 13], [41, 40]];
    let frozen7 = [[14, 14, 6, 1, 0, 0], [42, 48, 27, 8, 1, 0]];
    for g in 1..=4u32 {
        let got: Vec<i64> = (1..3).map(|k| verlinde_numeric(3, k, g)).collect();
        assert_eq!(got, frozen3[g as usize - 1]);
    }
    for (i, g) in [3u32, 4].into_iter().enumerate() {
        let got: Vec<i64> = (1..7).map(|k| verlinde_numeric(7, k, g)).collect();
        assert_eq!(got, frozen7[i]);
    }
    for p in [3u32, 5, 7, 11] {
        for g in 0..=6 {
            for k in 1..p {
                assert_eq!(verlinde_dim(p, k, g).unwrap(), verlinde_numeric(p, k, g), "p={p} k={k} g={g}");
            }
        }
    }
}

/// `χ^{[n-j, j]} = π_j - π_{j-1}` with `π_j` the number of `j`-subsets fixed by `σ`.
fn two_row_character(n: usize, j: usize, parts: &[usize]) -> i64 {
    let fixed_subsets = |j: usize| -> i64 {
        let mut ways = vec![0i64; j + 1];
        ways[0] = 1;
        for &c in parts {
            for t in (c..=j).rev() {
                ways[t] += ways[t - c];
            }
        }
        ways[j]
    };
    assert!(2 * j <= n);
    fixed_subsets(j) - if j > 0 { fixed_subsets(j - 1) } else { 0 }
}

#[test]
fn characters_from_fixed_subsets() {
    for n in 1..=9 {
        for parts in partitions(n) {
            let sigma = Perm::cycle_type_representative(&parts);
            for j in 0..=n / 2 {
                let basis = SpechtBasis::new(Diagram2::new(n - j, j).unwrap());
                assert_eq!(basis.character(&sigma).unwrap(), two_row_character(n, j, &parts), "n={n} {parts:?} j={j}");
            }
        }
    }
}

#[test]
fn alexander_trace_is_characteristic_polynomial() {
    let mut rng = ChaCha8Rng::seed_from_u64(61);
    for g in 1..=3 {
        for _ in 0..10 {
            let w = SpWord::random_group_word(&mut rng, g, 6);
            let m = w.linear_map(g).unwrap();
            let t = alexander_trace(&w, g).unwrap();
            for y in 1..=4i64 {
                let mut shifted = IntMatrix::identity(2 * g).scale(y);
                shifted = shifted.add(&m);
                let lhs: f64 = t.poly.eval_f64(y as f64) * (y as f64).powi(g as i32);
                assert_eq!(lhs.round() as i64, shifted.determinant(), "g={g} w={w} y={y}");
            }
        }
    }
}
