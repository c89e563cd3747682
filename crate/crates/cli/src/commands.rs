use std::collections::BTreeMap;
use std::fs::{self, File};
use std::io::BufWriter;
use std::path::{Path, PathBuf};

use serde_json::{json, Value};

use jacklab::algebra::{parse_rational, Field, Rational, Surd};
use jacklab::cumulants::{
    cond_a_sequence, cond_b_sequence, cond_c_sequence, cond_d_sequence, enhanced_afp_fit,
    rectangle_side, AfpReport, AlphaRule, CharacterFamily, PolyFn,
};
use jacklab::experiments::{
    clt_experiment, lln_experiment, mean_delta_moments, rectangle_from_config, write_clt,
    write_delta_moments, write_heatmap, write_json, write_lln, AlphaConfig, ExperimentConfig,
    FamilyConfig,
};
use jacklab::jack::{irr_character, normalized_character, ThetaAt, ThetaTable};
use jacklab::kerov::{gamma_linear_candidate, kerov_expansion_oracle_report, top_degree_formula};
use jacklab::measures::{
    jack_plancherel, jack_plancherel_f64, measure_from_character, rectangle_half_size,
    rectangle_removal_measure, write_measure_csv, write_samples_jsonl, CharacterSpec, SampleRecord,
};
use jacklab::partitions::Partition;
use jacklab::{Error, Result};

use crate::args::{Command, ExperimentKind, FamilyArg, Format, Settings};

/// What a command produced, for `report.json`.
pub struct Outcome {
    pub result: Value,
    pub files: Vec<PathBuf>,
}

pub fn dispatch(s: &Settings) -> Result<Outcome> {
    match s.command {
        Command::JackTable => jack_table(s),
        Command::Character => character(s),
        Command::Measure => measure(s),
        Command::Sample => sample(s),
        Command::Afp => afp(s),
        Command::Kerov => kerov(s),
        Command::Experiment { kind } => experiment(s, kind),
    }
}

fn sqrt_alpha(alpha: &Rational) -> Surd {
    Surd::sqrt(alpha)
}

fn jack_table(s: &Settings) -> Result<Outcome> {
    let n = s.require_n()?;
    if s.double_scaling.is_some() {
        return Err(Error::InvalidArgument(
            "jack-table needs a constant α or none".into(),
        ));
    }
    let format = s.format.unwrap_or(Format::Json);
    let alpha = s.exact_alpha()?;
    let (parts, cells): (Vec<Partition>, Vec<Vec<Value>>) = match &alpha {
        Some(q) => {
            let t = ThetaAt::compute(n, q)?;
            let cells = t
                .rows()
                .iter()
                .map(|r| r.iter().map(|x| json!(x.to_string())).collect())
                .collect();
            (t.parts.clone(), cells)
        }
        None => {
            let t = ThetaTable::symbolic(n)?;
            let cells = (0..t.parts.len())
                .map(|i| {
                    (0..t.parts.len())
                        .map(|j| json!(t.theta_by_index(i, j)))
                        .collect()
                })
                .collect();
            (t.parts.clone(), cells)
        }
    };
    fs::create_dir_all(&s.out)?;
    let path = match format {
        Format::Csv => {
            let p = s.out.join("theta.csv");
            let mut w = csv::Writer::from_path(&p)?;
            w.write_record(["lambda", "pi", "theta"])?;
            for (i, row) in cells.iter().enumerate() {
                for (j, c) in row.iter().enumerate() {
                    let text = match c {
                        Value::String(x) => x.clone(),
                        other => other.to_string(),
                    };
                    w.write_record([
                        serde_json::to_string(&parts[i])?,
                        serde_json::to_string(&parts[j])?,
                        text,
                    ])?;
                }
            }
            w.flush()?;
            p
        }
        Format::Json => {
            let p = s.out.join("theta.json");
            write_json(
                &p,
                &json!({ "n": n, "alpha": alpha.as_ref().map(|q| q.to_string()), "partitions": parts, "theta": cells }),
            )?;
            p
        }
        Format::Svg => {
            return Err(Error::InvalidArgument(
                "jack-table writes csv or json".into(),
            ))
        }
    };
    println!(
        "θ table for n = {n} ({} partitions) written to {}",
        parts.len(),
        path.display()
    );
    Ok(Outcome {
        result: json!({ "n": n, "partitions": parts.len() }),
        files: vec![path],
    })
}

fn character(s: &Settings) -> Result<Outcome> {
    let lambda = s.partition("lambda")?;
    let pi = s.partition("pi")?;
    if let Some(n) = s.n {
        if lambda.size() != n {
            return Err(Error::SizeMismatch(format!(
                "λ = {lambda} is not a partition of {n}"
            )));
        }
    }
    if s.double_scaling.is_some() {
        return Err(Error::InvalidArgument(
            "characters take a constant α".into(),
        ));
    }
    let chi = pi
        .pad_ones(lambda.size())
        .map(|padded| irr_character(&lambda, &padded))
        .transpose()?;
    let ch = normalized_character(&pi, &lambda)?;
    let mut result = json!({
        "lambda": lambda,
        "pi": pi,
        "chi": chi,
        "ch": ch,
    });
    match &chi {
        Some(c) => println!("chi = {c}"),
        None => println!("chi undefined: |π| > |λ|"),
    }
    println!("Ch = {ch}");
    if let Some(alpha) = s.exact_alpha()? {
        let a = sqrt_alpha(&alpha);
        let mut at = serde_json::Map::new();
        at.insert("alpha".into(), json!(alpha.to_string()));
        at.insert("A".into(), json!(a.to_string()));
        if let Some(c) = &chi {
            let v = c.at_alpha(&alpha)?;
            println!("chi at A = {a}: {v} ≈ {}", v.as_f64());
            at.insert("chi".into(), json!(v.to_string()));
            at.insert("chi_decimal".into(), json!(v.as_f64()));
        }
        let v = ch.at_alpha(&alpha)?;
        println!("Ch at A = {a}: {v} ≈ {}", v.as_f64());
        at.insert("ch".into(), json!(v.to_string()));
        at.insert("ch_decimal".into(), json!(v.as_f64()));
        result["evaluated"] = Value::Object(at);
    }
    Ok(Outcome {
        result,
        files: Vec::new(),
    })
}

fn explicit_spec(s: &Settings, n: usize) -> Result<CharacterSpec> {
    let table = s.table.as_ref().ok_or_else(|| {
        Error::InvalidArgument("the explicit family needs a `table` in --config".into())
    })?;
    let mut parsed = BTreeMap::new();
    for (k, v) in table {
        let q = parse_rational(v)
            .ok_or_else(|| Error::Parse(format!("bad rational {v:?} for χ({k})")))?;
        parsed.insert(k.parse::<Partition>()?, q);
    }
    CharacterSpec::explicit(n, parsed)
}

/// n for the rectangle family, from --i and cross-checked with --n.
fn rectangle_n(s: &Settings, alpha: u32) -> Result<(u32, usize)> {
    let i = match (s.i, s.n) {
        (Some(i), _) => i,
        (None, Some(n)) => rectangle_side(n, alpha).ok_or_else(|| {
            Error::InvalidArgument(format!("n = {n} is not of the form {alpha}·i²/2"))
        })?,
        (None, None) => return Err(Error::InvalidArgument("--i is required".into())),
    };
    let n = rectangle_half_size(i, alpha)?;
    if s.n.is_some_and(|m| m != n) {
        return Err(Error::SizeMismatch(format!(
            "i = {i}, α = {alpha} removes {n} boxes"
        )));
    }
    Ok((i, n))
}

fn measure(s: &Settings) -> Result<Outcome> {
    let format = s.format.unwrap_or(Format::Csv);
    let rule = s.alpha_rule()?;
    let mut rows: Vec<(String, String)> = Vec::new();
    let mut buf = Vec::new();
    let n;
    match (s.family, &rule) {
        (FamilyArg::Regular, AlphaRule::Constant(q)) => {
            n = s.require_n()?;
            let m = jack_plancherel(n, q)?;
            write_measure_csv(&m, &mut buf)?;
            rows.extend(
                m.iter()
                    .rev()
                    .map(|(l, w)| (serde_json::to_string(l).unwrap(), w.to_string())),
            );
        }
        (FamilyArg::Regular, AlphaRule::DoubleScaling { .. }) => {
            n = s.require_n()?;
            let m = jack_plancherel_f64(n, rule.alpha_f64(n))?;
            write_measure_csv(&m, &mut buf)?;
            rows.extend(
                m.iter()
                    .rev()
                    .map(|(l, w)| (serde_json::to_string(l).unwrap(), w.to_string())),
            );
        }
        (FamilyArg::Rectangle, _) => {
            let alpha = s.integer_alpha()?;
            let (i, m) = rectangle_n(s, alpha)?;
            n = m;
            let m = rectangle_removal_measure(i, alpha)?;
            write_measure_csv(&m, &mut buf)?;
            rows.extend(
                m.iter()
                    .rev()
                    .map(|(l, w)| (serde_json::to_string(l).unwrap(), w.to_string())),
            );
        }
        (FamilyArg::Explicit, AlphaRule::Constant(q)) => {
            n = s.require_n()?;
            let m = measure_from_character(&explicit_spec(s, n)?, q)?;
            write_measure_csv(&m, &mut buf)?;
            rows.extend(
                m.iter()
                    .rev()
                    .map(|(l, w)| (serde_json::to_string(l).unwrap(), w.to_string())),
            );
        }
        (FamilyArg::Explicit, _) => {
            return Err(Error::InvalidArgument(
                "explicit characters take a constant α".into(),
            ));
        }
    }
    fs::create_dir_all(&s.out)?;
    let path = match format {
        Format::Csv => {
            let p = s.out.join("measure.csv");
            fs::write(&p, &buf)?;
            p
        }
        Format::Json => {
            let p = s.out.join("measure.json");
            let weights: Vec<Value> = rows.iter().map(|(l, w)| json!({ "partition": serde_json::from_str::<Value>(l).unwrap(), "weight": w })).collect();
            write_json(&p, &json!({ "n": n, "weights": weights }))?;
            p
        }
        Format::Svg => return Err(Error::InvalidArgument("measure writes csv or json".into())),
    };
    for (l, w) in &rows {
        println!("{l}\t{w}");
    }
    Ok(Outcome {
        result: json!({ "n": n, "support": rows.len() }),
        files: vec![path],
    })
}

/// The experiment configuration implied by the settings.
fn experiment_config(s: &Settings) -> Result<ExperimentConfig> {
    let alpha = match (&s.alpha, &s.double_scaling) {
        (Some(a), _) => Some(AlphaConfig::constant(a)),
        (None, Some(_)) => match s.alpha_rule()? {
            AlphaRule::DoubleScaling { g, gp } => Some(AlphaConfig::DoubleScaling { g, gp }),
            AlphaRule::Constant(_) => unreachable!(),
        },
        (None, None) => None,
    };
    let family = match s.family {
        FamilyArg::Regular => FamilyConfig::Regular,
        FamilyArg::Rectangle => {
            let alpha = s.integer_alpha()?;
            let (i, _) = rectangle_n(s, alpha)?;
            FamilyConfig::RectangleRemoval { alpha, i: Some(i) }
        }
        FamilyArg::Explicit => FamilyConfig::Explicit {
            n: s.require_n()?,
            table: s.table.clone().ok_or_else(|| {
                Error::InvalidArgument("the explicit family needs a `table` in --config".into())
            })?,
        },
    };
    let n_grid = match (&s.n_grid, s.n, s.family) {
        (Some(g), _, _) => g.clone(),
        (None, _, FamilyArg::Rectangle) => Vec::new(),
        (None, Some(n), _) => vec![n],
        (None, None, _) => {
            return Err(Error::InvalidArgument(
                "--n or an n-grid is required".into(),
            ))
        }
    };
    let mut cfg = ExperimentConfig::regular(AlphaConfig::constant("1"), n_grid, s.trials, s.seed);
    cfg.family = family;
    cfg.alpha = alpha;
    if let Some(k) = &s.k_range {
        cfg.k_range = k.clone();
    }
    if let Some(g) = s.profile_grid {
        cfg.profile_grid = g;
    }
    if let Some(b) = s.bootstrap {
        cfg.bootstrap = b;
    }
    if let Some(r) = &s.s_ref {
        for (k, v) in r {
            let k: usize = k
                .parse()
                .map_err(|_| Error::Parse(format!("bad s-ref key {k:?}")))?;
            cfg.s_ref.insert(k, *v);
        }
    }
    Ok(cfg)
}

fn sample(s: &Settings) -> Result<Outcome> {
    let cfg = experiment_config(s)?;
    let plan = cfg.plan()?;
    let mut records = Vec::new();
    for &n in &plan.n_grid {
        for (t, partition) in plan.sample(n)?.into_iter().enumerate() {
            records.push(SampleRecord {
                trial: t as u64,
                seed: s.seed,
                partition,
            });
        }
    }
    fs::create_dir_all(&s.out)?;
    let path = s.out.join("samples.jsonl");
    write_samples_jsonl(&records, BufWriter::new(File::create(&path)?))?;
    println!("{} diagrams written to {}", records.len(), path.display());
    Ok(Outcome {
        result: json!({ "n_grid": plan.n_grid, "trials": s.trials, "seed": s.seed }),
        files: vec![path],
    })
}

fn family(s: &Settings) -> Result<CharacterFamily> {
    match s.family {
        FamilyArg::Regular => CharacterFamily::regular(s.alpha_rule()?),
        FamilyArg::Rectangle => CharacterFamily::rectangle_removal(s.integer_alpha()?),
        FamilyArg::Explicit => Err(Error::InvalidArgument(
            "afp needs a family indexed by n (regular or rectangle)".into(),
        )),
    }
}

fn afp(s: &Settings) -> Result<Outcome> {
    let fam = family(s)?;
    let grid: Vec<usize> = match &s.n_grid {
        Some(g) => g.clone(),
        None => {
            let top = s.require_n()?;
            match s.family {
                FamilyArg::Rectangle => {
                    let a = s.integer_alpha()?;
                    (1..=top)
                        .filter(|&n| rectangle_side(n, a).is_some())
                        .collect()
                }
                _ => (1..=top).collect(),
            }
        }
    };
    let from = |min: usize| {
        grid.iter()
            .copied()
            .filter(|&n| n >= min)
            .collect::<Vec<usize>>()
    };
    let mut reports: Vec<AfpReport> = Vec::new();
    for ls in [vec![2], vec![3], vec![2, 2], vec![2, 3]] {
        let g = from(ls.iter().sum());
        if !g.is_empty() {
            reports.push(cond_a_sequence(&fam, &ls, &g)?);
        }
    }
    for ls in [vec![1, 1], vec![2, 2], vec![1, 2]] {
        let g = from(ls.iter().sum());
        reports.push(cond_b_sequence(&fam, &ls, &g)?);
        reports.push(cond_d_sequence(&fam, &ls, &g)?);
    }
    let g = from(2);
    reports.push(cond_c_sequence(&fam, &[PolyFn::S(3), PolyFn::S(3)], &g)?);
    reports.push(cond_c_sequence(&fam, &[PolyFn::Gamma, PolyFn::R(3)], &g)?);
    let g = from(3);
    let enhanced = if g.len() >= 3 {
        Some(enhanced_afp_fit(&fam, &[1, 2, 3], &g)?)
    } else {
        None
    };
    for r in &reports {
        println!(
            "{:?}({}): identically zero = {}, last = {:.6e}",
            r.condition,
            r.indices.join(","),
            r.identically_zero(),
            r.values.last().copied().unwrap_or(f64::NAN)
        );
    }
    fs::create_dir_all(&s.out)?;
    let path = s.out.join("afp.json");
    write_json(
        &path,
        &json!({ "sequences": reports, "enhanced": enhanced }),
    )?;
    Ok(Outcome {
        result: json!({ "n_grid": grid, "sequences": reports.len() }),
        files: vec![path],
    })
}

fn kerov(s: &Settings) -> Result<Outcome> {
    let l =
        s.l.or(s.n)
            .ok_or_else(|| Error::InvalidArgument("--l is required".into()))?;
    let report = kerov_expansion_oracle_report(l)?;
    let top = top_degree_formula(l)?;
    let oracle_top = report.polynomial.homogeneous_part(l + 1);
    let gamma = gamma_linear_candidate(l)?;
    println!("Ch_{l} = {}", report.polynomial);
    println!(
        "top degree: formula {} ({})",
        top,
        if top == oracle_top {
            "matches"
        } else {
            "differs"
        }
    );
    let result = json!({
        "l": l,
        "polynomial": serde_json::from_str::<Value>(&report.polynomial.to_json())?,
        "display": report.polynomial.to_string(),
        "top_degree_formula": top.to_string(),
        "top_degree_matches": top == oracle_top,
        "gamma_linear_candidate": gamma.to_string(),
        "sizes": report.sizes,
        "a_values": report.a_values.iter().map(|a| a.to_string()).collect::<Vec<_>>(),
        "equations": report.equations,
        "unknowns": report.unknowns,
        "enlargements": report.enlargements,
    });
    Ok(Outcome {
        result,
        files: Vec::new(),
    })
}

fn experiment(s: &Settings, kind: ExperimentKind) -> Result<Outcome> {
    let svg = s.format == Some(Format::Svg);
    let dir: &Path = &s.out;
    match kind {
        ExperimentKind::Rectangle => {
            let mut s2 = s.clone();
            s2.family = FamilyArg::Rectangle;
            let cfg = experiment_config(&s2)?;
            let h = rectangle_from_config(&cfg)?;
            let files = write_heatmap(dir, &h, svg)?;
            println!(
                "n = {}: {} trials, sizes conserved = {}, mean profile in square = {}",
                h.n, h.trials, h.sizes_conserved, h.mean_in_square
            );
            Ok(Outcome {
                result: serde_json::to_value(&h)?,
                files,
            })
        }
        ExperimentKind::Lln => {
            let r = lln_experiment(&experiment_config(s)?)?;
            for p in &r.per_n {
                println!(
                    "n = {}: median sup-distance {:.5}, area {:.9}",
                    p.n, p.median_distance, p.mean_area
                );
            }
            println!("median decreasing: {}", r.median_decreasing);
            let files = write_lln(dir, &r, svg)?;
            Ok(Outcome {
                result: serde_json::to_value(&r)?,
                files,
            })
        }
        ExperimentKind::Clt => {
            let r = clt_experiment(&experiment_config(s)?)?;
            for p in &r.per_n {
                for y in &p.yk {
                    println!(
                        "n = {} k = {}: mean {:.4} var {:.4} skewness {:.4} excess kurtosis {:.4}",
                        p.n,
                        y.k,
                        y.stats.mean.value,
                        y.stats.variance.value,
                        y.stats.skewness.value,
                        y.stats.excess_kurtosis.value
                    );
                }
            }
            let files = write_clt(dir, &r)?;
            Ok(Outcome {
                result: serde_json::to_value(&r)?,
                files,
            })
        }
        ExperimentKind::Moments => {
            let ks = s.moments.clone().unwrap_or_else(|| vec![0, 1, 2]);
            let r = mean_delta_moments(&experiment_config(s)?, &ks)?;
            for m in &r.moments {
                for (n, e) in &m.by_n {
                    println!(
                        "k = {} n = {n}: {:.5} [{:.5}, {:.5}]",
                        m.k, e.value, e.ci[0], e.ci[1]
                    );
                }
            }
            let files = write_delta_moments(dir, &r)?;
            Ok(Outcome {
                result: serde_json::to_value(&r)?,
                files,
            })
        }
    }
}
