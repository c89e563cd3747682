//! Samplers and the per-trial random number streams.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::partitions::Partition;

use super::character::{rectangle_half_size, removal_start};
use super::kernels::{down_row_probabilities, NumericKernel};
use super::measure::MeasureOnYn;

/// Independent stream number `trial` of the generator seeded by `seed`.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Index drawn with probability proportional to `weights`.
fn pick<R: Rng + ?Sized>(weights: &[(usize, f64)], rng: &mut R) -> usize {
    let total: f64 = weights.iter().map(|(_, w)| w).sum();
    let mut u = rng.random::<f64>() * total;
    for (row, w) in weights {
        if u < *w {
            return *row;
        }
        u -= w;
    }
    // rounding left u just above the last cumulative weight
    weights.iter().rev().find(|(_, w)| *w > 0.0).expect("nonempty").0
}

/// CDF-inversion sampler over a numeric measure.
#[derive(Clone, Debug)]
pub struct ExactSampler {
    atoms: Vec<Partition>,
    cdf: Vec<f64>,
}

impl ExactSampler {
    pub fn new(m: &MeasureOnYn<f64>) -> Self {
        let mut atoms = Vec::new();
        let mut cdf = Vec::new();
        let mut acc = 0.0;
        for (p, w) in m.iter().rev() {
            if *w > 0.0 {
                acc += w;
                atoms.push(p.clone());
                cdf.push(acc);
            }
        }
        ExactSampler { atoms, cdf }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Partition {
        let total = *self.cdf.last().expect("measure has nonempty support");
        let u = rng.random::<f64>() * total;
        let k = self.cdf.partition_point(|&c| c <= u).min(self.atoms.len() - 1);
        self.atoms[k].clone()
    }
}

pub fn sample_exact<R: Rng + ?Sized>(m: &MeasureOnYn<f64>, rng: &mut R) -> Partition {
    ExactSampler::new(m).sample(rng)
}

/// Growth process on a bare part list with reused buffers; each step
/// evaluates the Pieri product formula over the corners.
#[derive(Clone, Debug)]
pub struct GrowthSampler {
    alpha: f64,
    parts: Vec<u32>,
    add_rows: Vec<usize>,
    add_x: Vec<f64>,
    rem_y: Vec<f64>,
    probs: Vec<f64>,
}

impl GrowthSampler {
    pub fn new(alpha: f64) -> Result<Self> {
        NumericKernel::up(alpha)?;
        Ok(GrowthSampler {
            alpha,
            parts: Vec::new(),
            add_rows: Vec::new(),
            add_x: Vec::new(),
            rem_y: Vec::new(),
            probs: Vec::new(),
        })
    }

    pub fn reset(&mut self) {
        self.parts.clear();
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Transition probabilities from the current diagram, indexed like
    /// the addable rows.
    pub fn probabilities(&mut self) -> (&[usize], &[f64]) {
        let a = self.alpha;
        self.add_rows.clear();
        self.add_x.clear();
        self.rem_y.clear();
        let len = self.parts.len();
        for i in 0..=len {
            let p = if i < len { self.parts[i] } else { 0 };
            let above = if i == 0 { u32::MAX } else { self.parts[i - 1] };
            if above > p {
                self.add_rows.push(i);
                self.add_x.push(a * p as f64 - i as f64);
            }
            if i < len {
                let below = if i + 1 < len { self.parts[i + 1] } else { 0 };
                if p > below {
                    self.rem_y.push(a * p as f64 - (i + 1) as f64);
                }
            }
        }
        self.probs.clear();
        for (k, &x) in self.add_x.iter().enumerate() {
            let mut c = 1.0;
            // rem_y has one entry fewer than add_x; pair factors to keep
            // magnitudes tame
            let mut r = 0;
            for (k2, &x2) in self.add_x.iter().enumerate() {
                if k2 == k {
                    continue;
                }
                if r < self.rem_y.len() {
                    c *= x - self.rem_y[r];
                    r += 1;
                }
                c /= x - x2;
            }
            for &y in &self.rem_y[r..] {
                c *= x - y;
            }
            self.probs.push(c);
        }
        (&self.add_rows, &self.probs)
    }

    pub fn step<R: Rng + ?Sized>(&mut self, rng: &mut R) {
        self.probabilities();
        let total: f64 = self.probs.iter().sum();
        let mut u = rng.random::<f64>() * total;
        let mut pick = None;
        for (k, &p) in self.probs.iter().enumerate() {
            if u < p {
                pick = Some(k);
                break;
            }
            u -= p;
        }
        let k = pick.unwrap_or_else(|| self.probs.iter().rposition(|&p| p > 0.0).expect("nonempty"));
        let row = self.add_rows[k];
        if row == self.parts.len() {
            self.parts.push(1);
        } else {
            self.parts[row] += 1;
        }
    }

    pub fn run<R: Rng + ?Sized>(&mut self, n: usize, rng: &mut R) -> Partition {
        self.reset();
        for _ in 0..n {
            self.step(rng);
        }
        Partition::new(self.parts.clone()).expect("growth keeps parts decreasing")
    }
}

/// n steps of the up kernel from ∅; the result is Jack–Plancherel
/// distributed.
pub fn sample_growth<R: Rng + ?Sized>(n: usize, alpha: f64, rng: &mut R) -> Result<Partition> {
    Ok(GrowthSampler::new(alpha)?.run(n, rng))
}

/// Removes αi²/2 boxes from the rectangle (i^{αi}) with the down kernel.
pub fn sample_rectangle_removal<R: Rng + ?Sized>(i: u32, alpha: u32, rng: &mut R) -> Result<Partition> {
    let n = rectangle_half_size(i, alpha)?;
    let a = alpha as f64;
    let mut lambda = removal_start(i, alpha);
    for _ in 0..n {
        let row = pick(&down_row_probabilities(&lambda, a), rng);
        lambda = lambda.remove_box(row);
    }
    Ok(lambda)
}
