//! Probability measures on partitions of n, growth kernels and samplers.

mod character;
mod io;
mod kernels;
mod measure;
mod sampling;

pub use character::{
    character_coefficients, measure_from_character, measure_from_character_f64, rectangle_half_size,
    rectangle_removal_measure, removal_start, CharacterKind, CharacterSpec,
};
pub use io::{read_measure_csv, read_samples_jsonl, write_measure_csv, write_samples_jsonl, SampleRecord};
pub use kernels::{down_row_probabilities, down_transitions_at, Direction, GrowthKernel, NumericKernel};
pub use measure::{
    jack_plancherel, jack_plancherel_f64, jack_plancherel_weight, jack_plancherel_weight_f64,
    MeasureOnYn,
};
pub use sampling::{
    sample_exact, sample_growth, sample_rectangle_removal, trial_rng, ExactSampler, GrowthSampler,
};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat, Rational, Surd};
    use crate::partitions::{enumerate_partitions, Partition};
    use num_traits::{One, Zero};

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn regular_n2() {
        for a in [int(1), int(4), rat(2, 7)] {
            let m = measure_from_character(&CharacterSpec::regular(2), &a).unwrap();
            let expect = Rational::one() / (Rational::one() + &a);
            assert_eq!(m.weight(&p(&[2])), Surd::rational(expect.clone()));
            assert_eq!(jack_plancherel(2, &a).unwrap().weight(&p(&[2])), expect);
        }
    }

    #[test]
    fn regular_matches_hook_formula() {
        for a in [int(2), rat(1, 3)] {
            for n in 0..=6 {
                let m = measure_from_character(&CharacterSpec::regular(n), &a).unwrap();
                assert_eq!(m, jack_plancherel(n, &a).unwrap().to_surd(), "n={n} α={a}");
            }
        }
    }

    #[test]
    fn down_kernel_float_matches_exact() {
        let a = rat(5, 2);
        for big in enumerate_partitions(7) {
            let exact = down_transitions_at(&big, &a);
            let sum: Rational = exact.values().sum();
            assert_eq!(sum, Rational::one());
            for (row, q) in down_row_probabilities(&big, 2.5) {
                let e = crate::algebra::rat_to_f64(&exact[&big.remove_box(row)]);
                assert!((q - e).abs() < 1e-12, "{big} row {row}: {q} vs {e}");
            }
        }
    }

    #[test]
    fn non_reducible_is_reported() {
        let mut t = std::collections::BTreeMap::new();
        t.insert(p(&[1, 1]), Rational::one());
        t.insert(p(&[2]), int(5));
        let chi = CharacterSpec::explicit(2, t).unwrap();
        match measure_from_character(&chi, &int(1)) {
            Err(crate::Error::NonReducible { partition, .. }) => assert_eq!(partition, p(&[1, 1])),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn rectangle_small() {
        let m = rectangle_removal_measure(1, 2).unwrap();
        assert_eq!(m.weight(&p(&[1])), Rational::one());
        assert!(rectangle_removal_measure(1, 1).is_err());
        let chi = CharacterSpec::rectangle_removal(2, 2).unwrap();
        assert_eq!(chi.n(), 4);
        let back = measure_from_character(&chi, &int(2)).unwrap();
        let direct = rectangle_removal_measure(2, 2).unwrap().to_surd();
        assert_eq!(back, direct);
        assert!(back.total() == Surd::one() && !back.weight(&p(&[2, 2])).is_zero());
    }

    #[test]
    fn growth_sampler_matches_pieri() {
        let mut g = GrowthSampler::new(0.7).unwrap();
        let mut rng = trial_rng(9, 0);
        for _ in 0..40 {
            let lambda = Partition::new(g.parts().to_vec()).unwrap();
            let reference = crate::jack::pieri_p1_f64(&lambda, 0.7);
            let (rows, probs) = g.probabilities();
            let got: Vec<(usize, f64)> = rows.iter().copied().zip(probs.iter().copied()).collect();
            assert_eq!(got.len(), reference.len());
            for ((r1, p1), (r2, p2)) in got.iter().zip(&reference) {
                assert_eq!(r1, r2);
                assert!((p1 - p2).abs() < 1e-12);
            }
            g.step(&mut rng);
        }
    }

    #[test]
    fn samplers_are_deterministic() {
        let a = sample_growth(50, 2.0, &mut trial_rng(3, 1)).unwrap();
        let b = sample_growth(50, 2.0, &mut trial_rng(3, 1)).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.size(), 50);
        let r = sample_rectangle_removal(5, 4, &mut trial_rng(1, 0)).unwrap();
        assert_eq!(r.size(), 50);
    }
}
