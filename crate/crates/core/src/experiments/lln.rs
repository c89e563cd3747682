use rayon::prelude::*;
use serde::Serialize;

use super::config::{ExperimentConfig, Plan};
use super::stats::{mean, median, quantile};
use crate::error::Result;
use crate::partitions::{AnisotropicDiagram, Profile};

#[derive(Clone, Debug, Serialize)]
pub struct LlnPerN {
    pub n: usize,
    pub alpha: f64,
    /// Area under (mean profile − |u|)/2; 1 up to rounding.
    pub mean_area: f64,
    pub mean_profile: Vec<f64>,
    pub median_distance: f64,
    pub q10_distance: f64,
    pub q90_distance: f64,
    pub mean_distance: f64,
    /// Every trial satisfies |u| ≤ ω(u) ≤ √(u²+4) at its corners.
    pub geometry_ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct LlnReport {
    pub config: ExperimentConfig,
    pub seed: u64,
    pub u_grid: Vec<f64>,
    /// n of the mean profile used as reference for the distances.
    pub reference_n: usize,
    pub per_n: Vec<LlnPerN>,
    pub median_decreasing: bool,
}

fn scaled_profiles(plan: &Plan, n: usize) -> Result<Vec<Profile<f64>>> {
    let alpha = plan.alpha(n);
    Ok(plan
        .sample(n)?
        .into_par_iter()
        .map(|l| AnisotropicDiagram::jack_scaled(l, alpha).profile())
        .collect())
}

fn within_bounds(p: &Profile<f64>) -> bool {
    p.corners()
        .iter()
        .all(|&(u, v)| v >= u.abs() - 1e-12 && v <= (u * u + 4.0).sqrt() + 1e-12)
}

fn sup_distance(p: &Profile<f64>, grid: &[f64], reference: &[f64]) -> f64 {
    grid.iter()
        .zip(reference)
        .map(|(u, r)| (p.eval(u) - r).abs())
        .fold(0.0, f64::max)
}

/// Profiles of Λ_n = T_{√(α/n),1/√(αn)} λ_n sampled on a common u-grid that
/// covers every trial's support; distances are to the mean profile at the
/// largest n of the grid.
pub fn lln_experiment(cfg: &ExperimentConfig) -> Result<LlnReport> {
    let plan = cfg.plan()?;
    let mut all = Vec::with_capacity(plan.n_grid.len());
    for &n in &plan.n_grid {
        all.push(scaled_profiles(&plan, n)?);
    }
    let half = all
        .iter()
        .flatten()
        .map(|p| {
            let (a, b) = p.support();
            a.abs().max(b.abs())
        })
        .fold(2.0f64, f64::max);
    let m = cfg.profile_grid;
    let u_grid: Vec<f64> = (0..m)
        .map(|j| -half + 2.0 * half * j as f64 / (m - 1) as f64)
        .collect();
    let mean_profiles: Vec<Vec<f64>> = all
        .iter()
        .map(|ps| {
            u_grid
                .iter()
                .map(|u| ps.iter().map(|p| p.eval(u)).sum::<f64>() / ps.len() as f64)
                .collect()
        })
        .collect();
    let (ref_idx, reference_n) = plan
        .n_grid
        .iter()
        .copied()
        .enumerate()
        .max_by_key(|&(_, n)| n)
        .expect("nonempty grid");
    let reference = mean_profiles[ref_idx].clone();
    let mut per_n = Vec::new();
    for ((&n, ps), mp) in plan.n_grid.iter().zip(&all).zip(mean_profiles) {
        let d: Vec<f64> = ps.par_iter().map(|p| sup_distance(p, &u_grid, &reference)).collect();
        let areas: Vec<f64> = ps.iter().map(Profile::excess_area).collect();
        per_n.push(LlnPerN {
            n,
            alpha: plan.alpha(n),
            mean_area: mean(&areas),
            mean_profile: mp,
            median_distance: median(&d),
            q10_distance: quantile(&d, 0.1),
            q90_distance: quantile(&d, 0.9),
            mean_distance: mean(&d),
            geometry_ok: ps.iter().all(within_bounds),
        });
    }
    let mut by_n: Vec<&LlnPerN> = per_n.iter().collect();
    by_n.sort_by_key(|r| r.n);
    let median_decreasing = by_n.windows(2).all(|w| w[1].median_distance < w[0].median_distance);
    Ok(LlnReport {
        config: cfg.clone(),
        seed: cfg.seed,
        u_grid,
        reference_n,
        per_n,
        median_decreasing,
    })
}
