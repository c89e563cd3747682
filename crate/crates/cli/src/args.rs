use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use jacklab::algebra::{parse_rational, Rational};
use jacklab::cumulants::AlphaRule;
use jacklab::partitions::Partition;
use jacklab::{Error, Result};

#[derive(Debug, Parser)]
#[command(
    name = "jacklab",
    version,
    about = "Jack characters, Jack-deformed measures and random Young diagrams"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub flags: Flags,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// θ_π(λ) for all λ, π ⊢ n (symbolic in A unless --alpha is given).
    JackTable,
    /// χ_λ(π) and Ch_π(λ).
    Character,
    /// Exact weights of ℙ_χ on partitions of n.
    Measure,
    /// Random diagrams from the growth or removal process.
    Sample,
    /// Diagnostic sequences of the approximate factorization conditions.
    Afp,
    /// Kerov expansion of Ch_l in free cumulants and γ.
    Kerov,
    /// Monte Carlo experiments.
    Experiment {
        #[arg(value_enum)]
        kind: ExperimentKind,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentKind {
    Lln,
    Clt,
    Rectangle,
    Moments,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyArg {
    Regular,
    Rectangle,
    Explicit,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    Csv,
    Json,
    Svg,
}

#[derive(Clone, Debug, Default, Args)]
pub struct Flags {
    #[arg(long, global = true)]
    pub n: Option<usize>,
    /// Rational α, e.g. `4` or `1/2`.
    #[arg(long, global = true, conflicts_with = "double_scaling")]
    pub alpha: Option<String>,
    /// `g,gprime`: −A + 1/A = g√n + g′.
    #[arg(long, global = true, value_name = "G,GPRIME")]
    pub double_scaling: Option<String>,
    #[arg(long, global = true)]
    pub pi: Option<String>,
    #[arg(long, global = true)]
    pub lambda: Option<String>,
    #[arg(long, global = true, value_enum)]
    pub family: Option<FamilyArg>,
    #[arg(long, global = true)]
    pub i: Option<u32>,
    /// Character argument for `kerov`.
    #[arg(long, global = true)]
    pub l: Option<usize>,
    #[arg(long, global = true)]
    pub trials: Option<usize>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// TOML file with the same keys as the flags (kebab-case) plus
    /// experiment settings.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Comma-separated sizes, e.g. `100,400,1600`.
    #[arg(long, global = true, value_delimiter = ',')]
    pub n_grid: Option<Vec<usize>>,
    /// Comma-separated k for the Y_k statistics.
    #[arg(long, global = true, value_delimiter = ',')]
    pub k_range: Option<Vec<usize>>,
}

/// Keys accepted in a `--config` file.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct FileConfig {
    pub n: Option<usize>,
    pub alpha: Option<String>,
    pub double_scaling: Option<String>,
    pub pi: Option<String>,
    pub lambda: Option<String>,
    pub family: Option<FamilyArg>,
    pub i: Option<u32>,
    pub l: Option<usize>,
    pub trials: Option<usize>,
    pub seed: Option<u64>,
    pub jobs: Option<usize>,
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
    pub n_grid: Option<Vec<usize>>,
    pub k_range: Option<Vec<usize>>,
    pub moments: Option<Vec<usize>>,
    pub profile_grid: Option<usize>,
    pub bootstrap: Option<usize>,
    pub s_ref: Option<BTreeMap<String, f64>>,
    /// χ(π) for an explicit character, `"[2,1]" = "1/3"`.
    pub table: Option<BTreeMap<String, String>>,
}

/// Flags over file over defaults; echoed into every report.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub struct Settings {
    pub command: Command,
    pub n: Option<usize>,
    pub alpha: Option<String>,
    pub double_scaling: Option<String>,
    pub pi: Option<String>,
    pub lambda: Option<String>,
    pub family: FamilyArg,
    pub i: Option<u32>,
    pub l: Option<usize>,
    pub trials: usize,
    pub seed: u64,
    pub jobs: usize,
    /// Not echoed: the report lives there.
    #[serde(skip)]
    pub out: PathBuf,
    pub format: Option<Format>,
    pub config: Option<PathBuf>,
    pub n_grid: Option<Vec<usize>>,
    pub k_range: Option<Vec<usize>>,
    pub moments: Option<Vec<usize>>,
    pub profile_grid: Option<usize>,
    pub bootstrap: Option<usize>,
    pub s_ref: Option<BTreeMap<String, f64>>,
    pub table: Option<BTreeMap<String, String>>,
}

pub const DEFAULT_TRIALS: usize = 100;
pub const DEFAULT_SEED: u64 = 0;

impl Settings {
    pub fn resolve(command: Command, flags: Flags) -> Result<Settings> {
        let file = match &flags.config {
            Some(path) => {
                let text = std::fs::read_to_string(path)?;
                toml::from_str::<FileConfig>(&text)
                    .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?
            }
            None => FileConfig::default(),
        };
        // a flag for either α form overrides both file keys
        let (alpha, double_scaling) = if flags.alpha.is_some() || flags.double_scaling.is_some() {
            (flags.alpha, flags.double_scaling)
        } else {
            (file.alpha, file.double_scaling)
        };
        if alpha.is_some() && double_scaling.is_some() {
            return Err(Error::InvalidArgument(
                "give either alpha or double-scaling, not both".into(),
            ));
        }
        let jobs = flags
            .jobs
            .or(file.jobs)
            .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
        if jobs == 0 {
            return Err(Error::InvalidArgument("--jobs must be at least 1".into()));
        }
        Ok(Settings {
            command,
            n: flags.n.or(file.n),
            alpha,
            double_scaling,
            pi: flags.pi.or(file.pi),
            lambda: flags.lambda.or(file.lambda),
            family: flags.family.or(file.family).unwrap_or(FamilyArg::Regular),
            i: flags.i.or(file.i),
            l: flags.l.or(file.l),
            trials: flags.trials.or(file.trials).unwrap_or(DEFAULT_TRIALS),
            seed: flags.seed.or(file.seed).unwrap_or(DEFAULT_SEED),
            jobs,
            out: flags.out.or(file.out).unwrap_or_else(|| PathBuf::from(".")),
            format: flags.format.or(file.format),
            config: flags.config,
            n_grid: flags.n_grid.or(file.n_grid),
            k_range: flags.k_range.or(file.k_range),
            moments: file.moments,
            profile_grid: file.profile_grid,
            bootstrap: file.bootstrap,
            s_ref: file.s_ref,
            table: file.table,
        })
    }

    pub fn require_n(&self) -> Result<usize> {
        self.n
            .ok_or_else(|| Error::InvalidArgument("--n is required".into()))
    }

    pub fn partition(&self, which: &str) -> Result<Partition> {
        let raw = match which {
            "pi" => &self.pi,
            _ => &self.lambda,
        };
        raw.as_deref()
            .ok_or_else(|| Error::InvalidArgument(format!("--{which} is required")))?
            .parse()
    }

    pub fn alpha_rule(&self) -> Result<AlphaRule> {
        if let Some(ds) = &self.double_scaling {
            let (g, gp) = parse_pair(ds)?;
            return Ok(AlphaRule::DoubleScaling { g, gp });
        }
        Ok(AlphaRule::Constant(
            self.exact_alpha()?
                .unwrap_or_else(|| Rational::from_integer(1.into())),
        ))
    }

    /// The constant α if one was given.
    pub fn exact_alpha(&self) -> Result<Option<Rational>> {
        self.alpha
            .as_deref()
            .map(|a| {
                let q = parse_rational(a)
                    .ok_or_else(|| Error::Parse(format!("bad rational α {a:?}")))?;
                if q <= Rational::from_integer(0.into()) {
                    return Err(Error::InvalidArgument(format!(
                        "α must be positive, got {q}"
                    )));
                }
                Ok(q)
            })
            .transpose()
    }

    pub fn integer_alpha(&self) -> Result<u32> {
        let q = self
            .exact_alpha()?
            .ok_or_else(|| Error::InvalidArgument("--alpha is required".into()))?;
        if !q.is_integer() {
            return Err(Error::InvalidArgument(format!(
                "this family needs an integer α, got {q}"
            )));
        }
        u32::try_from(q.to_integer())
            .map_err(|_| Error::InvalidArgument(format!("α = {q} is too large")))
    }
}

fn parse_pair(s: &str) -> Result<(f64, f64)> {
    let bad = || Error::Parse(format!("expected `g,gprime`, got {s:?}"));
    let (a, b) = s.split_once(',').ok_or_else(bad)?;
    let g: f64 = a.trim().parse().map_err(|_| bad())?;
    let gp: f64 = b.trim().parse().map_err(|_| bad())?;
    if !g.is_finite() || !gp.is_finite() {
        return Err(bad());
    }
    Ok((g, gp))
}
