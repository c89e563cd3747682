//! File emission. All writers are deterministic in their inputs.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;

use super::clt::{CltReport, DeltaMomentsReport};
use super::lln::LlnReport;
use super::rectangle::HeatmapData;
use super::svg::{heatmap_svg, profiles_svg};
use crate::error::Result;

pub fn write_json<T: Serialize + ?Sized>(path: &Path, value: &T) -> Result<()> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    fs::write(path, s)?;
    Ok(())
}

fn write_csv<R: Serialize>(path: &Path, rows: impl IntoIterator<Item = R>) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct UV {
    u: f64,
    v: f64,
}

/// `heatmap.csv`, `heatmap_stretched.csv`, `mean_profile.csv`,
/// `mean_profile_stretched.csv`, the two SVGs and `report.json`.
pub fn write_heatmap(dir: &Path, h: &HeatmapData, svg: bool) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir)?;
    let mut out = Vec::new();
    for (tag, stretch) in [("", 1.0), ("_stretched", h.stretch_factor())] {
        let p = dir.join(format!("heatmap{tag}.csv"));
        write_csv(&p, h.segments(stretch))?;
        out.push(p);
        let p = dir.join(format!("mean_profile{tag}.csv"));
        write_csv(&p, h.mean_profile.iter().map(|&(u, v)| UV { u, v: v * stretch }))?;
        out.push(p);
        if svg {
            let p = dir.join(format!("heatmap{tag}.svg"));
            fs::write(&p, heatmap_svg(h, stretch))?;
            out.push(p);
        }
    }
    let p = dir.join("report.json");
    write_json(&p, h)?;
    out.push(p);
    Ok(out)
}

/// `mean_profile.csv` at the reference n, an optional SVG of all mean
/// profiles, and `report.json`.
pub fn write_lln(dir: &Path, r: &LlnReport, svg: bool) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir)?;
    let mut out = Vec::new();
    let reference = r.per_n.iter().find(|p| p.n == r.reference_n).expect("reference n present");
    let p = dir.join("mean_profile.csv");
    write_csv(
        &p,
        r.u_grid.iter().zip(&reference.mean_profile).map(|(&u, &v)| UV { u, v }),
    )?;
    out.push(p);
    if svg {
        let p = dir.join("mean_profiles.svg");
        let curves: Vec<Vec<f64>> = r.per_n.iter().map(|x| x.mean_profile.clone()).collect();
        fs::write(&p, profiles_svg(&r.u_grid, &curves))?;
        out.push(p);
    }
    let p = dir.join("report.json");
    write_json(&p, r)?;
    out.push(p);
    Ok(out)
}

/// `ykstats.json` (statistics only) and `report.json` (with the config).
pub fn write_clt(dir: &Path, r: &CltReport) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir)?;
    let a = dir.join("ykstats.json");
    write_json(&a, &r.per_n)?;
    let b = dir.join("report.json");
    write_json(&b, r)?;
    Ok(vec![a, b])
}

pub fn write_delta_moments(dir: &Path, r: &DeltaMomentsReport) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir)?;
    let p = dir.join("report.json");
    write_json(&p, r)?;
    Ok(vec![p])
}
