//! Seeded Monte Carlo runs: limit shapes, fluctuations of S_k, and the
//! rectangle-removal heatmaps. Trial t at size n draws from the RNG stream
//! `(n << 32) | t`, so outputs do not depend on the thread count.

mod clt;
mod config;
mod lln;
mod output;
mod rectangle;
pub mod stats;
mod svg;

pub use clt::{
    clt_experiment, mean_delta_moments, CltPerN, CltReport, DeltaMoment, DeltaMomentsReport, SRef,
    SRefSource, ShuffleControl, YkStats, KURTOSIS_THRESHOLD, SKEWNESS_THRESHOLD,
};
pub use config::{stream_id, AlphaConfig, ExperimentConfig, FamilyConfig, Plan};
pub use lln::{lln_experiment, LlnPerN, LlnReport};
pub use output::{write_clt, write_delta_moments, write_heatmap, write_json, write_lln};
pub use rectangle::{
    boundary_edges, rectangle_from_config, rectangle_removal_experiment, Edge, HeatmapData, Segment,
};
pub use svg::{heatmap_svg, profiles_svg};

#[cfg(test)]
mod tests {
    use super::*;

    fn regular(n_grid: Vec<usize>, trials: usize) -> ExperimentConfig {
        ExperimentConfig::regular(AlphaConfig::constant("1"), n_grid, trials, 11)
    }

    #[test]
    fn single_box_profile() {
        let r = lln_experiment(&regular(vec![1], 1)).unwrap();
        assert_eq!(r.per_n[0].median_distance, 0.0);
        assert!((r.per_n[0].mean_area - 1.0).abs() < 1e-12);
    }

    #[test]
    fn unit_area_for_every_n() {
        let mut cfg = regular(vec![5, 20, 40], 30);
        cfg.alpha = Some(AlphaConfig::constant("5/2"));
        let r = lln_experiment(&cfg).unwrap();
        for p in &r.per_n {
            assert!((p.mean_area - 1.0).abs() < 1e-6, "{}", p.mean_area);
            assert!(p.geometry_ok);
        }
    }

    #[test]
    fn y2_vanishes_with_exact_reference() {
        let r = clt_experiment(&regular(vec![30], 50)).unwrap();
        let y2 = &r.per_n[0].yk[0];
        assert_eq!(y2.k, 2);
        assert_eq!(y2.stats.mean.value, 0.0);
        assert_eq!(y2.stats.variance.value, 0.0);
        assert_eq!(y2.stats.skewness.value, 0.0);
        let m = mean_delta_moments(&regular(vec![30], 50), &[0]).unwrap();
        assert_eq!(m.moments[0].by_n[&30].value, 0.0);
    }

    #[test]
    fn thread_count_does_not_matter() {
        let cfg = regular(vec![25], 40);
        let plan = cfg.plan().unwrap();
        let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let three = rayon::ThreadPoolBuilder::new().num_threads(3).build().unwrap();
        let a = one.install(|| plan.sample(25).unwrap());
        let b = three.install(|| plan.sample(25).unwrap());
        assert_eq!(a, b);
    }

    #[test]
    fn config_round_trips_through_toml_shapes() {
        let cfg = ExperimentConfig::rectangle(5, 4, 10, 7);
        let json = serde_json::to_string(&cfg).unwrap();
        let back: ExperimentConfig = serde_json::from_str(&json).unwrap();
        assert_eq!(back, cfg);
        assert_eq!(back.plan().unwrap().n_grid, vec![50]);
        let bad = ExperimentConfig { trials: 0, ..cfg };
        assert!(bad.plan().is_err());
    }

    #[test]
    fn explicit_family_samples_its_measure() {
        let mut table = std::collections::BTreeMap::new();
        table.insert("[1,1]".to_string(), "1".to_string());
        table.insert("[2]".to_string(), "0".to_string());
        let cfg = ExperimentConfig {
            family: FamilyConfig::Explicit { n: 2, table },
            ..regular(vec![], 20)
        };
        let plan = cfg.plan().unwrap();
        assert!(plan.sample(2).unwrap().iter().all(|l| l.size() == 2));
    }
}
