use rayon::prelude::*;
use serde::Serialize;

use super::config::ExperimentConfig;
use crate::error::{Error, Result};
use crate::partitions::{AnisotropicDiagram, Partition};

/// A unit edge of the box grid in box coordinates: from (x, y) to
/// (x+1, y) when horizontal, to (x, y+1) otherwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Edge {
    pub x: u32,
    pub y: u32,
    pub horizontal: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Segment {
    pub u1: f64,
    pub v1: f64,
    pub u2: f64,
    pub v2: f64,
    pub freq: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct HeatmapData {
    pub i: u32,
    pub alpha: u32,
    pub n: usize,
    pub trials: usize,
    pub seed: u64,
    /// Rows R = αi and columns C = i of the starting rectangle.
    pub rows: u32,
    pub cols: u32,
    pub box_width: f64,
    pub box_height: f64,
    /// Every grid edge inside the rectangle, sorted, with the fraction of
    /// trials whose boundary path uses it.
    pub edges: Vec<(Edge, f64)>,
    /// (u, E ω_{Λ_n}(u)) on a uniform grid over [−√2, √2].
    pub mean_profile: Vec<(f64, f64)>,
    pub sizes_conserved: bool,
    pub trials_in_square: bool,
    pub mean_in_square: bool,
}

/// The R + C unit edges of the boundary path of λ ⊆ (C^R) from (0, R)
/// to (C, 0).
pub fn boundary_edges(lambda: &Partition, rows: u32, cols: u32) -> Vec<Edge> {
    let (mut x, mut y) = (0u32, rows);
    let mut out = Vec::with_capacity((rows + cols) as usize);
    while (x, y) != (cols, 0) {
        if y > 0 && lambda.part(y as usize - 1) <= x {
            y -= 1;
            out.push(Edge { x, y, horizontal: false });
        } else {
            out.push(Edge { x, y, horizontal: true });
            x += 1;
        }
    }
    out
}

fn edge_index(e: &Edge, rows: u32, cols: u32) -> usize {
    if e.horizontal {
        (e.y * cols + e.x) as usize
    } else {
        ((rows + 1) * cols + e.x * rows + e.y) as usize
    }
}

fn all_edges(rows: u32, cols: u32) -> Vec<Edge> {
    let mut v: Vec<Edge> = (0..=rows)
        .flat_map(|y| (0..cols).map(move |x| Edge { x, y, horizontal: true }))
        .chain((0..=cols).flat_map(|x| (0..rows).map(move |y| Edge { x, y, horizontal: false })))
        .collect();
    v.sort();
    v
}

fn in_square(u: f64, v: f64) -> bool {
    let top = 2.0 * std::f64::consts::SQRT_2;
    v >= u.abs() - 1e-12 && v <= top - u.abs() + 1e-12
}

impl HeatmapData {
    fn russian(&self, x: u32, y: u32) -> (f64, f64) {
        let (a, b) = (x as f64 * self.box_width, y as f64 * self.box_height);
        (a - b, a + b)
    }

    /// Heatmap segments in the scaled Russian plane; `stretch` multiplies v.
    pub fn segments(&self, stretch: f64) -> Vec<Segment> {
        self.edges
            .iter()
            .map(|(e, freq)| {
                let (x2, y2) = if e.horizontal { (e.x + 1, e.y) } else { (e.x, e.y + 1) };
                let (u1, v1) = self.russian(e.x, e.y);
                let (u2, v2) = self.russian(x2, y2);
                Segment { u1, v1: v1 * stretch, u2, v2: v2 * stretch, freq: *freq }
            })
            .collect()
    }

    pub fn stretch_factor(&self) -> f64 {
        (self.n as f64).sqrt()
    }

    /// Profile of the limit shape, the lower half of the square.
    pub fn limit_profile(&self) -> Vec<(f64, f64)> {
        let r = std::f64::consts::SQRT_2;
        vec![(-1.2 * r, 1.2 * r), (-r, r), (r, r), (1.2 * r, 1.2 * r)]
    }
}

/// Samples the removal process per trial and accumulates the edge
/// frequencies of the boundary of λ_n inside the rectangle (i^{αi}).
pub fn rectangle_removal_experiment(i: u32, alpha: u32, trials: usize, seed: u64) -> Result<HeatmapData> {
    rectangle_from_config(&ExperimentConfig::rectangle(i, alpha, trials, seed))
}

pub fn rectangle_from_config(cfg: &ExperimentConfig) -> Result<HeatmapData> {
    let super::FamilyConfig::RectangleRemoval { alpha, .. } = cfg.family else {
        return Err(Error::InvalidArgument("heatmaps need the rectangle-removal family".into()));
    };
    let plan = cfg.plan()?;
    let &[n] = plan.n_grid.as_slice() else {
        return Err(Error::InvalidArgument("heatmaps take a single n".into()));
    };
    let i = crate::cumulants::rectangle_side(n, alpha).expect("validated");
    let (rows, cols) = (alpha * i, i);
    let a = alpha as f64;
    let diagrams = plan.sample(n)?;
    let sizes_conserved = diagrams.iter().all(|l| l.size() == n);
    let nedges = (2 * rows * cols + rows + cols) as usize;
    let counts = diagrams
        .par_iter()
        .fold(
            || vec![0u64; nedges],
            |mut acc, l| {
                for e in boundary_edges(l, rows, cols) {
                    acc[edge_index(&e, rows, cols)] += 1;
                }
                acc
            },
        )
        .reduce(
            || vec![0u64; nedges],
            |mut x, y| {
                x.iter_mut().zip(y).for_each(|(s, t)| *s += t);
                x
            },
        );
    let profiles: Vec<_> = diagrams
        .into_iter()
        .map(|l| AnisotropicDiagram::jack_scaled(l, a).profile())
        .collect();
    let trials_in_square = profiles
        .iter()
        .all(|p| p.corners().iter().all(|&(u, v)| in_square(u, v)));
    let r = std::f64::consts::SQRT_2;
    let m = cfg.profile_grid;
    let mean_profile: Vec<(f64, f64)> = (0..m)
        .map(|j| {
            let u = -r + 2.0 * r * j as f64 / (m - 1) as f64;
            let v = profiles.iter().map(|p| p.eval(&u)).sum::<f64>() / profiles.len() as f64;
            (u, v)
        })
        .collect();
    let mean_in_square = mean_profile.iter().all(|&(u, v)| in_square(u, v));
    let t = cfg.trials as f64;
    let edges = all_edges(rows, cols)
        .into_iter()
        .map(|e| {
            let c = counts[edge_index(&e, rows, cols)];
            (e, c as f64 / t)
        })
        .collect();
    let nf = n as f64;
    Ok(HeatmapData {
        i,
        alpha,
        n,
        trials: cfg.trials,
        seed: cfg.seed,
        rows,
        cols,
        box_width: (a / nf).sqrt(),
        box_height: 1.0 / (a * nf).sqrt(),
        edges,
        mean_profile,
        sizes_conserved,
        trials_in_square,
        mean_in_square,
    })
}
