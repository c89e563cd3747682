use std::collections::BTreeMap;
use std::path::PathBuf;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{parse_rational, Rational};
use crate::cumulants::{rectangle_side, AlphaRule};
use crate::error::{Error, Result};
use crate::measures::{
    measure_from_character_f64, sample_rectangle_removal, trial_rng, CharacterSpec, ExactSampler,
    GrowthSampler,
};
use crate::partitions::Partition;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum FamilyConfig {
    Regular,
    /// Half of the rectangle (i^{αi}) removed; n-grid entries must be α i²/2,
    /// or the grid may be left empty when `i` is given.
    RectangleRemoval {
        alpha: u32,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        i: Option<u32>,
    },
    /// χ(π) for every π ⊢ n, keys and values as strings (`"[2,1]" = "1/3"`).
    Explicit { n: usize, table: BTreeMap<String, String> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum AlphaConfig {
    Constant { value: String },
    DoubleScaling { g: f64, gp: f64 },
}

impl AlphaConfig {
    pub fn constant(value: &str) -> Self {
        AlphaConfig::Constant { value: value.to_string() }
    }

    pub fn rule(&self) -> Result<AlphaRule> {
        match self {
            AlphaConfig::Constant { value } => {
                let q = parse_rational(value)
                    .ok_or_else(|| Error::Parse(format!("bad rational α {value:?}")))?;
                Ok(AlphaRule::Constant(q))
            }
            AlphaConfig::DoubleScaling { g, gp } => Ok(AlphaRule::DoubleScaling { g: *g, gp: *gp }),
        }
    }
}

fn default_k_range() -> Vec<usize> {
    vec![2, 3, 4]
}

fn default_profile_grid() -> usize {
    401
}

fn default_bootstrap() -> usize {
    200
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct ExperimentConfig {
    pub family: FamilyConfig,
    /// Defaults to α = 1, or to the family's own α for rectangle removal.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<AlphaConfig>,
    #[serde(default)]
    pub n_grid: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out_dir: Option<PathBuf>,
    #[serde(default = "default_k_range")]
    pub k_range: Vec<usize>,
    #[serde(default = "default_profile_grid")]
    pub profile_grid: usize,
    #[serde(default = "default_bootstrap")]
    pub bootstrap: usize,
    /// Reference values s_k for Y_k; missing k are estimated.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub s_ref: BTreeMap<usize, f64>,
}

impl ExperimentConfig {
    pub fn regular(alpha: AlphaConfig, n_grid: Vec<usize>, trials: usize, seed: u64) -> Self {
        ExperimentConfig {
            family: FamilyConfig::Regular,
            alpha: Some(alpha),
            n_grid,
            trials,
            seed,
            out_dir: None,
            k_range: default_k_range(),
            profile_grid: default_profile_grid(),
            bootstrap: default_bootstrap(),
            s_ref: BTreeMap::new(),
        }
    }

    pub fn rectangle(i: u32, alpha: u32, trials: usize, seed: u64) -> Self {
        ExperimentConfig {
            family: FamilyConfig::RectangleRemoval { alpha, i: Some(i) },
            alpha: None,
            n_grid: Vec::new(),
            trials,
            seed,
            out_dir: None,
            k_range: default_k_range(),
            profile_grid: default_profile_grid(),
            bootstrap: default_bootstrap(),
            s_ref: BTreeMap::new(),
        }
    }

    /// Checks the invariants and resolves the sampling route.
    pub fn plan(&self) -> Result<Plan> {
        if self.trials == 0 {
            return Err(Error::InvalidArgument("trials must be at least 1".into()));
        }
        if self.profile_grid < 2 {
            return Err(Error::InvalidArgument("profile grid needs at least 2 points".into()));
        }
        if let Some(k) = self.k_range.iter().find(|&&k| k < 2) {
            return Err(Error::InvalidArgument(format!("k-range entries must be ≥ 2, got {k}")));
        }
        let requested = self.alpha.as_ref().map(AlphaConfig::rule).transpose()?;
        let (rule, n_grid, source) = match &self.family {
            FamilyConfig::Regular => {
                let rule = requested.unwrap_or(AlphaRule::Constant(Rational::from_integer(1.into())));
                (rule, self.n_grid.clone(), Source::Growth)
            }
            FamilyConfig::RectangleRemoval { alpha, i } => {
                if *alpha == 0 {
                    return Err(Error::InvalidArgument("α must be positive".into()));
                }
                let own = AlphaRule::Constant(Rational::from_integer((*alpha).into()));
                if requested.as_ref().is_some_and(|r| *r != own) {
                    return Err(Error::InvalidArgument(format!(
                        "rectangle removal runs at its own α = {alpha}"
                    )));
                }
                let mut grid = self.n_grid.clone();
                if let Some(i) = i {
                    let n = crate::measures::rectangle_half_size(*i, *alpha)?;
                    if grid.is_empty() {
                        grid.push(n);
                    } else if grid != [n] {
                        return Err(Error::InvalidArgument(format!("i = {i} fixes the grid to [{n}]")));
                    }
                }
                for &n in &grid {
                    if rectangle_side(n, *alpha).is_none() {
                        return Err(Error::InvalidArgument(format!(
                            "n = {n} is not of the form {alpha}·i²/2"
                        )));
                    }
                }
                (own, grid, Source::Rectangle { alpha: *alpha })
            }
            FamilyConfig::Explicit { n, table } => {
                let rule = requested.unwrap_or(AlphaRule::Constant(Rational::from_integer(1.into())));
                let AlphaRule::Constant(q) = &rule else {
                    return Err(Error::InvalidArgument("explicit characters need a constant α".into()));
                };
                let mut parsed = BTreeMap::new();
                for (k, v) in table {
                    let value = parse_rational(v)
                        .ok_or_else(|| Error::Parse(format!("bad rational {v:?} for χ({k})")))?;
                    parsed.insert(k.parse::<Partition>()?, value);
                }
                let spec = CharacterSpec::explicit(*n, parsed)?;
                let measure = measure_from_character_f64(&spec, crate::algebra::rat_to_f64(q))?;
                let grid = if self.n_grid.is_empty() { vec![*n] } else { self.n_grid.clone() };
                if grid != [*n] {
                    return Err(Error::InvalidArgument(format!("an explicit character fixes n = {n}")));
                }
                (rule, grid, Source::Exact(Arc::new(ExactSampler::new(&measure))))
            }
        };
        if n_grid.is_empty() {
            return Err(Error::InvalidArgument("empty n-grid".into()));
        }
        for &n in &n_grid {
            let a = rule.alpha_f64(n);
            if !(a.is_finite() && a > 0.0) {
                return Err(Error::InvalidArgument(format!("α({n}) = {a} is not positive")));
            }
        }
        Ok(Plan { rule, n_grid, source, trials: self.trials, seed: self.seed })
    }
}

#[derive(Clone, Debug)]
enum Source {
    Growth,
    Rectangle { alpha: u32 },
    Exact(Arc<ExactSampler>),
}

/// A validated configuration ready to sample.
#[derive(Clone, Debug)]
pub struct Plan {
    pub rule: AlphaRule,
    pub n_grid: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
    source: Source,
}

/// RNG stream of one trial: n in the high bits, trial index in the low.
pub fn stream_id(n: usize, trial: usize) -> u64 {
    ((n as u64) << 32) | trial as u64
}

impl Plan {
    pub fn alpha(&self, n: usize) -> f64 {
        self.rule.alpha_f64(n)
    }

    /// One diagram per trial, in trial order; independent of the thread count.
    pub fn sample(&self, n: usize) -> Result<Vec<Partition>> {
        let seed = self.seed;
        match &self.source {
            Source::Growth => {
                let sampler = GrowthSampler::new(self.alpha(n))?;
                Ok((0..self.trials)
                    .into_par_iter()
                    .map_init(
                        || sampler.clone(),
                        |s, t| s.run(n, &mut trial_rng(seed, stream_id(n, t))),
                    )
                    .collect())
            }
            Source::Rectangle { alpha } => {
                let i = rectangle_side(n, *alpha).expect("grid validated");
                (0..self.trials)
                    .into_par_iter()
                    .map(|t| sample_rectangle_removal(i, *alpha, &mut trial_rng(seed, stream_id(n, t))))
                    .collect()
            }
            Source::Exact(s) => Ok((0..self.trials)
                .into_par_iter()
                .map(|t| s.sample(&mut trial_rng(seed, stream_id(n, t))))
                .collect()),
        }
    }
}
