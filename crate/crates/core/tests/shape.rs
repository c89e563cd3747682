mod common;

use std::collections::BTreeMap;

use jacklab::algebra::{rat, LaurentA, Rational};
use jacklab::partitions::{enumerate_partitions, Partition};
use jacklab::shape::{
    fluctuation_y, free_cumulants, free_cumulants_f64, plambda_moments, r_to_s, s_functional,
    s_functional_f64, s_to_r, scaled_s, shape_vector,
};
use proptest::prelude::*;

fn partition() -> impl Strategy<Value = Partition> {
    prop::collection::vec(1u32..7, 1..6).prop_map(Partition::from_unsorted)
}

/// Kerov's transition measure of λ drawn with boxes A × 1/A: atoms at the
/// minima x_i of the profile with weights ∏(x_i − y_j) / ∏_{k≠i}(x_i − x_k).
fn transition_measure(l: &Partition, a: f64) -> Vec<(f64, f64)> {
    let content = |i: usize, j: usize| a * j as f64 - i as f64 / a;
    let xs: Vec<f64> = l.addable_cells().into_iter().map(|(i, j)| content(i, j)).collect();
    let ys: Vec<f64> = l.removable_cells().into_iter().map(|(i, j)| content(i + 1, j + 1)).collect();
    xs.iter()
        .enumerate()
        .map(|(i, &x)| {
            let num: f64 = ys.iter().map(|y| x - y).product();
            let den: f64 = xs.iter().enumerate().filter(|(k, _)| *k != i).map(|(_, xk)| x - xk).product();
            (x, num / den)
        })
        .collect()
}

/// Moments from free cumulants through M(z) = 1 + Σ R_k z^k M(z)^k.
fn moments_from_free(r: &BTreeMap<usize, f64>, kmax: usize) -> Vec<f64> {
    let mul = |p: &[f64], q: &[f64]| {
        let mut out = vec![0.0; kmax + 1];
        for i in 0..=kmax {
            for j in 0..=kmax - i {
                out[i + j] += p[i] * q[j];
            }
        }
        out
    };
    let mut m = vec![0.0; kmax + 1];
    m[0] = 1.0;
    for _ in 0..=kmax {
        let mut next = vec![0.0; kmax + 1];
        next[0] = 1.0;
        let mut pow = m.clone();
        for k in 1..=kmax {
            let rk = r.get(&k).copied().unwrap_or(0.0);
            for (d, c) in pow.iter().enumerate() {
                if d + k <= kmax {
                    next[d + k] += rk * c;
                }
            }
            pow = mul(&pow, &m);
        }
        m = next;
    }
    m
}

/// (k−1) ∬_λ (A x − y/A)^{k−2} by Gauss–Legendre on every box.
fn s_by_boxes(l: &Partition, k: usize, a: f64) -> f64 {
    let rule = common::gauss_legendre(8);
    let mut total = 0.0;
    for (i, &row) in l.parts().iter().enumerate() {
        for j in 0..row as usize {
            for (x, wx) in &rule {
                for (y, wy) in &rule {
                    let (px, py) = (j as f64 + 0.5 + x / 2.0, i as f64 + 0.5 + y / 2.0);
                    total += wx * wy / 4.0 * (a * px - py / a).powi(k as i32 - 2);
                }
            }
        }
    }
    (k - 1) as f64 * total
}

#[test]
fn small_values() {
    let l = Partition::new(vec![2, 1]).unwrap();
    assert_eq!(s_functional(&l, 2).unwrap(), LaurentA::from_int(3));
    // ∬ x = 2 + 1/2 and ∬ y = 1/2·2 + 3/2, so S_3 = 2 (5A/2 − 5/(2A))
    let s3 = s_functional(&l, 3).unwrap();
    assert_eq!(s3, &LaurentA::monomial(1, rat(5, 1)) - &LaurentA::monomial(-1, rat(5, 1)));
    assert!(s_functional(&l, 1).is_err());
    assert!(plambda_moments(&l, 4, 1.0, 5).is_err());
}

#[test]
fn free_cumulants_of_the_transition_measure() {
    let kmax = 8;
    for n in 1..=8 {
        for l in enumerate_partitions(n) {
            for alpha in [1.0, 2.0, 0.3] {
                let tm = transition_measure(&l, f64::sqrt(alpha));
                let direct: Vec<f64> = (0..=kmax).map(|k| tm.iter().map(|(x, w)| w * x.powi(k as i32)).sum()).collect();
                let r = free_cumulants_f64(&l, kmax, alpha);
                let via = moments_from_free(&r, kmax);
                for k in 0..=kmax {
                    let scale = direct[k].abs().max(1.0);
                    assert!((direct[k] - via[k]).abs() < 1e-8 * scale, "{l} α={alpha} k={k}: {} vs {}", direct[k], via[k]);
                }
            }
        }
    }
}

#[test]
fn symbolic_transforms_round_trip() {
    for l in enumerate_partitions(6) {
        let s = shape_vector(&l, 8).unwrap();
        let r = free_cumulants(&l, 8).unwrap();
        assert_eq!(s_to_r(&s).unwrap(), r);
        assert_eq!(r_to_s(&r).unwrap(), s);
        assert_eq!(r[&2], LaurentA::from_int(6));
    }
    let gap: BTreeMap<usize, Rational> = [(2, rat(1, 1)), (4, rat(1, 1))].into_iter().collect();
    assert!(r_to_s(&gap).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn exact_and_float_shape_functionals_agree(l in partition(), k in 2usize..9, num in 1i64..9, den in 1i64..9) {
        let a = num as f64 / den as f64;
        let exact = s_functional(&l, k).unwrap().substitute(&rat(num, den)).unwrap();
        let exact = jacklab::algebra::rat_to_f64(&exact);
        let float = s_functional_f64(&l, k, a * a);
        let boxes = s_by_boxes(&l, k, a);
        let scale = exact.abs().max(1.0);
        prop_assert!((exact - float).abs() < 1e-9 * scale);
        prop_assert!((exact - boxes).abs() < 1e-9 * scale);
    }

    #[test]
    fn float_transforms_round_trip(v in prop::collection::vec(-5.0f64..5.0, 1..9)) {
        let s: BTreeMap<usize, f64> = v.iter().enumerate().map(|(i, x)| (i + 2, *x)).collect();
        let back = r_to_s(&s_to_r(&s).unwrap()).unwrap();
        for (k, x) in &s {
            prop_assert!((back[k] - x).abs() < 1e-8 * x.abs().max(1.0));
        }
    }

    #[test]
    fn plambda_low_moments(l in partition(), alpha in 0.2f64..5.0) {
        let n = l.size();
        let m = plambda_moments(&l, n, alpha, 4).unwrap();
        prop_assert!((m[0] - 1.0).abs() < 1e-12);
        // ∫ u dP_Λ = S_3 / (2 n^{3/2}) = scaled_s / 2
        prop_assert!((m[1] - scaled_s(&l, 3, alpha) / 2.0).abs() < 1e-12);
    }

    #[test]
    fn fluctuation_is_centred_scaled_s(l in partition(), k in 2usize..6, alpha in 0.2f64..5.0, s_ref in -2.0f64..2.0) {
        let n = l.size() as f64;
        let y = fluctuation_y(&l, k, alpha, s_ref);
        prop_assert!((y - n.sqrt() * (scaled_s(&l, k, alpha) - s_ref)).abs() < 1e-9);
    }
}
