use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rayon::prelude::*;
use serde::Serialize;

use super::config::{stream_id, ExperimentConfig, Plan};
use super::stats::{bootstrap_ci, covariance, mean, moment_stats, Estimate, MomentStats};
use crate::error::{Error, Result};
use crate::measures::trial_rng;
use crate::shape::scaled_s;

pub const SKEWNESS_THRESHOLD: f64 = 0.15;
pub const KURTOSIS_THRESHOLD: f64 = 0.3;

// RNG streams for resampling sit above every (n, trial) stream.
const BOOTSTRAP_STREAM: u64 = 1 << 63;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SRefSource {
    Supplied,
    /// s₂ = 1 since S₂ = n.
    Exact,
    EmpiricalLargestN,
}

#[derive(Clone, Debug, Serialize)]
pub struct SRef {
    pub k: usize,
    pub value: f64,
    pub source: SRefSource,
    /// n at which an empirical value was taken.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct YkStats {
    pub k: usize,
    pub stats: MomentStats,
    pub skewness_ok: bool,
    pub kurtosis_ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ShuffleControl {
    pub k1: usize,
    pub k2: usize,
    pub covariance: Estimate,
    pub contains_zero: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CltPerN {
    pub n: usize,
    pub alpha: f64,
    pub yk: Vec<YkStats>,
    /// Sample covariances of (Y_k) in k-range order.
    pub covariance: Vec<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shuffled_control: Option<ShuffleControl>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CltReport {
    pub config: ExperimentConfig,
    pub seed: u64,
    pub k_range: Vec<usize>,
    pub skewness_threshold: f64,
    pub kurtosis_threshold: f64,
    pub s_ref: Vec<SRef>,
    pub per_n: Vec<CltPerN>,
}

impl CltReport {
    /// Whether every nondegenerate Y_k passes both thresholds.
    pub fn passes(&self) -> bool {
        self.per_n
            .iter()
            .flat_map(|r| &r.yk)
            .all(|y| y.skewness_ok && y.kurtosis_ok)
    }
}

/// n^{−k/2} S_k per trial, laid out as `[k index][trial]`.
fn scaled_samples(plan: &Plan, n: usize, ks: &[usize]) -> Result<Vec<Vec<f64>>> {
    let alpha = plan.alpha(n);
    let rows: Vec<Vec<f64>> = plan
        .sample(n)?
        .par_iter()
        .map(|l| ks.iter().map(|&k| scaled_s(l, k, alpha)).collect())
        .collect();
    Ok((0..ks.len()).map(|j| rows.iter().map(|r| r[j]).collect()).collect())
}

struct Fluctuations {
    s_ref: Vec<SRef>,
    /// (n, Y values as `[k index][trial]`).
    per_n: Vec<(usize, Vec<Vec<f64>>)>,
}

fn fluctuations(cfg: &ExperimentConfig, plan: &Plan, ks: &[usize]) -> Result<Fluctuations> {
    let mut scaled = Vec::new();
    for &n in &plan.n_grid {
        scaled.push((n, scaled_samples(plan, n, ks)?));
    }
    let (top_n, top) = scaled.iter().max_by_key(|(n, _)| *n).expect("nonempty grid");
    let s_ref: Vec<SRef> = ks
        .iter()
        .enumerate()
        .map(|(j, &k)| match cfg.s_ref.get(&k) {
            Some(&value) => SRef { k, value, source: SRefSource::Supplied, n: None },
            None if k == 2 => SRef { k, value: 1.0, source: SRefSource::Exact, n: None },
            None => SRef {
                k,
                value: mean(&top[j]),
                source: SRefSource::EmpiricalLargestN,
                n: Some(*top_n),
            },
        })
        .collect();
    let per_n = scaled
        .iter()
        .map(|(n, cols)| {
            let rn = (*n as f64).sqrt();
            let ys = cols
                .iter()
                .zip(&s_ref)
                .map(|(c, s)| c.iter().map(|x| rn * (x - s.value)).collect())
                .collect();
            (*n, ys)
        })
        .collect();
    Ok(Fluctuations { s_ref, per_n })
}

fn dedup_sorted(ks: &[usize]) -> Vec<usize> {
    let mut v = ks.to_vec();
    v.sort_unstable();
    v.dedup();
    v
}

/// Y_k = √n (n^{−k/2} S_k − s_k) over the grid, with moments, bootstrap
/// intervals, covariances and a shuffled-pairing control.
pub fn clt_experiment(cfg: &ExperimentConfig) -> Result<CltReport> {
    let plan = cfg.plan()?;
    let ks = dedup_sorted(&cfg.k_range);
    if ks.is_empty() {
        return Err(Error::InvalidArgument("empty k-range".into()));
    }
    let fl = fluctuations(cfg, &plan, &ks)?;
    let reps = cfg.bootstrap;
    let mut per_n = Vec::new();
    for (n, ys) in &fl.per_n {
        let n = *n;
        let yk = ks
            .iter()
            .zip(ys)
            .map(|(&k, y)| {
                let stats = moment_stats(y, reps, cfg.seed, BOOTSTRAP_STREAM | stream_id(n, 16 * k));
                YkStats {
                    k,
                    skewness_ok: stats.skewness.value.abs() < SKEWNESS_THRESHOLD,
                    kurtosis_ok: stats.excess_kurtosis.value.abs() < KURTOSIS_THRESHOLD,
                    stats,
                }
            })
            .collect();
        let cov = ys
            .iter()
            .map(|a| ys.iter().map(|b| covariance(a, b)).collect())
            .collect();
        // the first two k with nonconstant Y
        let live: Vec<usize> = (0..ks.len()).filter(|&j| ks[j] > 2).take(2).collect();
        let shuffled_control = (live.len() == 2).then(|| {
            let (a, b) = (&ys[live[0]], &ys[live[1]]);
            let mut perm: Vec<usize> = (0..b.len()).collect();
            perm.shuffle(&mut trial_rng(cfg.seed, BOOTSTRAP_STREAM | stream_id(n, 1)));
            let b: Vec<f64> = perm.iter().map(|&i| b[i]).collect();
            let value = covariance(a, &b);
            let ci = bootstrap_ci(a.len(), reps, cfg.seed, BOOTSTRAP_STREAM | stream_id(n, 2), |idx| {
                let x: Vec<f64> = idx.iter().map(|&i| a[i]).collect();
                let y: Vec<f64> = idx.iter().map(|&i| b[i]).collect();
                covariance(&x, &y)
            });
            ShuffleControl {
                k1: ks[live[0]],
                k2: ks[live[1]],
                covariance: Estimate { value, ci },
                contains_zero: ci[0] <= 0.0 && 0.0 <= ci[1],
            }
        });
        per_n.push(CltPerN { n, alpha: plan.alpha(n), yk, covariance: cov, shuffled_control });
    }
    Ok(CltReport {
        config: cfg.clone(),
        seed: cfg.seed,
        k_range: ks,
        skewness_threshold: SKEWNESS_THRESHOLD,
        kurtosis_threshold: KURTOSIS_THRESHOLD,
        s_ref: fl.s_ref,
        per_n,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct DeltaMoment {
    pub k: usize,
    /// n ↦ estimate of ∫ u^k E[Δ_n](u) du.
    pub by_n: BTreeMap<usize, Estimate>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DeltaMomentsReport {
    pub config: ExperimentConfig,
    pub seed: u64,
    pub s_ref: Vec<SRef>,
    pub moments: Vec<DeltaMoment>,
}

/// ∫ u^k E[Δ_n](u) du = 2/(k+1) E[Y_{k+2}] across the grid.
pub fn mean_delta_moments(cfg: &ExperimentConfig, ks: &[usize]) -> Result<DeltaMomentsReport> {
    let plan = cfg.plan()?;
    let ks = dedup_sorted(ks);
    let shifted: Vec<usize> = ks.iter().map(|k| k + 2).collect();
    let fl = fluctuations(cfg, &plan, &shifted)?;
    let moments = ks
        .iter()
        .enumerate()
        .map(|(j, &k)| {
            let c = 2.0 / (k + 1) as f64;
            let by_n = fl
                .per_n
                .iter()
                .map(|(n, ys)| {
                    let y = &ys[j];
                    let ci = bootstrap_ci(y.len(), cfg.bootstrap, cfg.seed, BOOTSTRAP_STREAM | stream_id(*n, 16 * k + 3), |idx| {
                        c * idx.iter().map(|&i| y[i]).sum::<f64>() / idx.len() as f64
                    });
                    (*n, Estimate { value: c * mean(y), ci })
                })
                .collect();
            DeltaMoment { k, by_n }
        })
        .collect();
    Ok(DeltaMomentsReport { config: cfg.clone(), seed: cfg.seed, s_ref: fl.s_ref, moments })
}
