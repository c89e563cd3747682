//! Finite-n diagnostic sequences for approximate factorization.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::algebra::{Field, Rational};
use crate::error::{Error, Result};
use crate::partitions::Partition;

use super::family::{AlphaValue, CharacterFamily};
use super::functions::{
    classical_cumulant_at, disjoint_cumulant_at, partition_cumulant_at, AlphaPoint, PolyFn,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Condition {
    A,
    B,
    C,
    D,
}

/// Least-squares fit of y ≈ limit + rate/√n.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Fit {
    pub limit: f64,
    pub rate: f64,
    /// Euclidean norm of the residual vector.
    pub residual: f64,
}

pub fn least_squares_fit(ns: &[usize], ys: &[f64]) -> Result<Fit> {
    if ns.len() != ys.len() {
        return Err(Error::SizeMismatch("grid and values differ in length".into()));
    }
    let mut distinct: Vec<usize> = ns.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    if distinct.len() < 3 || distinct[0] == 0 {
        return Err(Error::InvalidArgument(
            "degenerate grid: need at least 3 distinct positive n".into(),
        ));
    }
    let xs: Vec<f64> = ns.iter().map(|&n| 1.0 / (n as f64).sqrt()).collect();
    let k = xs.len() as f64;
    let (sx, sy) = (xs.iter().sum::<f64>(), ys.iter().sum::<f64>());
    let (mx, my) = (sx / k, sy / k);
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let rate = sxy / sxx;
    let limit = my - rate * mx;
    let residual = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| (y - limit - rate * x).powi(2))
        .sum::<f64>()
        .sqrt();
    Ok(Fit { limit, rate, residual })
}

#[derive(Clone, Debug, Serialize)]
pub struct AfpReport {
    pub condition: Condition,
    pub indices: Vec<String>,
    pub n_grid: Vec<usize>,
    pub alpha: Vec<String>,
    /// Unscaled cumulant, exact when α is rational.
    pub raw: Vec<String>,
    pub exact_zero: Vec<bool>,
    pub values: Vec<f64>,
    pub fit: Option<Fit>,
}

impl AfpReport {
    /// Every entry of the sequence is exactly zero.
    pub fn identically_zero(&self) -> bool {
        self.exact_zero.iter().all(|&z| z)
    }
}

struct Entry {
    raw: String,
    zero: bool,
    value: f64,
}

fn entry<W: Field + std::fmt::Display>(w: W) -> Entry {
    Entry { raw: w.to_string(), zero: w.is_zero(), value: w.as_f64() }
}

fn sequence<F>(
    condition: Condition,
    indices: Vec<String>,
    fam: &CharacterFamily,
    grid: &[usize],
    exponent: f64,
    mut one: F,
) -> Result<AfpReport>
where
    F: FnMut(usize, &AlphaValue) -> Result<Entry>,
{
    let mut report = AfpReport {
        condition,
        indices,
        n_grid: grid.to_vec(),
        alpha: Vec::new(),
        raw: Vec::new(),
        exact_zero: Vec::new(),
        values: Vec::new(),
        fit: None,
    };
    for &n in grid {
        let alpha = fam.alpha(n);
        let mut e = one(n, &alpha)?;
        e.value *= (n as f64).powf(exponent);
        report.alpha.push(alpha.to_string());
        report.raw.push(e.raw);
        report.exact_zero.push(e.zero);
        report.values.push(e.value);
    }
    report.fit = least_squares_fit(grid, &report.values).ok();
    Ok(report)
}

/// Dispatches on exact or numeric α.
fn at_alpha<T>(
    alpha: &AlphaValue,
    exact: impl FnOnce(&Rational) -> Result<T>,
    numeric: impl FnOnce(&f64) -> Result<T>,
) -> Result<T> {
    match alpha {
        AlphaValue::Exact(q) => exact(q),
        AlphaValue::Numeric(x) => numeric(x),
    }
}

fn rows(ls: &[usize], min: usize) -> Result<Vec<Partition>> {
    if ls.is_empty() {
        return Err(Error::InvalidArgument("need at least one index".into()));
    }
    ls.iter()
        .map(|&l| {
            if l < min {
                Err(Error::InvalidArgument(format!("index {l} is below {min}")))
            } else {
                Ok(Partition::row(l as u32))
            }
        })
        .collect()
}

/// k_ℓ(l_1, …, l_ℓ) n^{(Σl_i + ℓ − 2)/2}.
pub fn cond_a_sequence(fam: &CharacterFamily, ls: &[usize], grid: &[usize]) -> Result<AfpReport> {
    let pis = rows(ls, 2)?;
    let ell = ls.len();
    let exponent = (ls.iter().sum::<usize>() + ell) as f64 / 2.0 - 1.0;
    sequence(Condition::A, ls.iter().map(|l| l.to_string()).collect(), fam, grid, exponent, |n, a| {
        let spec = fam.spec(n)?;
        at_alpha(
            a,
            |q| Ok(entry(partition_cumulant_at(q, &spec, &pis)?)),
            |x| Ok(entry(partition_cumulant_at(x, &spec, &pis)?)),
        )
    })
}

fn degree_exponent(fs: &[PolyFn]) -> f64 {
    let deg: usize = fs.iter().map(PolyFn::degree).sum();
    -(deg as f64 - 2.0 * (fs.len() as f64 - 1.0)) / 2.0
}

fn classical<P: AlphaPoint>(p: &P, fam: &CharacterFamily, n: usize, fs: &[PolyFn]) -> Result<P::W> {
    let spec = fam.spec(n)?;
    let m = p.measure(&spec)?;
    classical_cumulant_at(p, &m, fs)
}

/// κ_ℓ(Ch_{l_1}, …, Ch_{l_ℓ}) n^{−(Σ deg − 2(ℓ−1))/2}.
pub fn cond_b_sequence(fam: &CharacterFamily, ls: &[usize], grid: &[usize]) -> Result<AfpReport> {
    let fs: Vec<PolyFn> = rows(ls, 1)?.into_iter().map(PolyFn::Ch).collect();
    let mut r = cond_c_sequence(fam, &fs, grid)?;
    r.condition = Condition::B;
    Ok(r)
}

/// κ_ℓ(x_1, …, x_ℓ) n^{−(Σ deg − 2(ℓ−1))/2} for general functions.
pub fn cond_c_sequence(fam: &CharacterFamily, fs: &[PolyFn], grid: &[usize]) -> Result<AfpReport> {
    if fs.is_empty() {
        return Err(Error::InvalidArgument("need at least one function".into()));
    }
    let exponent = degree_exponent(fs);
    let names = fs.iter().map(|f| f.to_string()).collect();
    sequence(Condition::C, names, fam, grid, exponent, |n, a| {
        at_alpha(
            a,
            |q| Ok(entry(classical(q, fam, n, fs)?)),
            |x| Ok(entry(classical(x, fam, n, fs)?)),
        )
    })
}

/// κ_•ℓ(Ch_{l_1}, …, Ch_{l_ℓ}) n^{−(Σ deg − 2(ℓ−1))/2}.
pub fn cond_d_sequence(fam: &CharacterFamily, ls: &[usize], grid: &[usize]) -> Result<AfpReport> {
    let pis = rows(ls, 1)?;
    let fs: Vec<PolyFn> = pis.iter().cloned().map(PolyFn::Ch).collect();
    let exponent = degree_exponent(&fs);
    let names = fs.iter().map(|f| f.to_string()).collect();
    sequence(Condition::D, names, fam, grid, exponent, |n, a| {
        let spec = fam.spec(n)?;
        at_alpha(
            a,
            |q| Ok(entry(disjoint_cumulant_at(q, &spec, &pis)?)),
            |x| Ok(entry(disjoint_cumulant_at(x, &spec, &pis)?)),
        )
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct RefinedConstant {
    /// The character argument l; the fit estimates a_{l+1} and b_{l+1}.
    pub l: usize,
    pub values: Vec<f64>,
    pub a: f64,
    pub b: f64,
    pub residual: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct EnhancedAfpReport {
    pub n_grid: Vec<usize>,
    pub constants: Vec<RefinedConstant>,
    /// sup_l |a_l|^{1/l} / l^m for m = 1 and m = 2.
    pub growth_m1: f64,
    pub growth_m2: f64,
}

/// Fits χ_n(l) n^{(l−1)/2} ≈ a_{l+1} + b_{l+1}/√n for each l.
pub fn enhanced_afp_fit(fam: &CharacterFamily, ls: &[usize], grid: &[usize]) -> Result<EnhancedAfpReport> {
    let mut constants = Vec::new();
    for &l in ls {
        if l == 0 {
            return Err(Error::InvalidArgument("χ(l) needs l ≥ 1".into()));
        }
        let pi = Partition::row(l as u32);
        let values = grid
            .iter()
            .map(|&n| {
                let spec = fam.spec(n)?;
                let chi = at_alpha(
                    &fam.alpha(n),
                    |q| Ok(spec.value(&pi, q)?.as_f64()),
                    |x| spec.value_f64(&pi, *x),
                )?;
                Ok(chi * (n as f64).powf((l as f64 - 1.0) / 2.0))
            })
            .collect::<Result<Vec<f64>>>()?;
        let fit = least_squares_fit(grid, &values)?;
        constants.push(RefinedConstant { l, values, a: fit.limit, b: fit.rate, residual: fit.residual });
    }
    let growth = |m: i32| {
        constants
            .iter()
            .filter(|c| c.a != 0.0)
            .map(|c| {
                let idx = (c.l + 1) as f64;
                c.a.abs().powf(1.0 / idx) / idx.powi(m)
            })
            .fold(0.0, f64::max)
    };
    let (growth_m1, growth_m2) = (growth(1), growth(2));
    Ok(EnhancedAfpReport { n_grid: grid.to_vec(), constants, growth_m1, growth_m2 })
}

/// Limits r_l of n^{−l/2} E[R_l] fitted over the grid.
pub fn limit_free_cumulants(
    fam: &CharacterFamily,
    ls: &[usize],
    grid: &[usize],
) -> Result<BTreeMap<usize, Fit>> {
    let mut out = BTreeMap::new();
    for &l in ls {
        let f = PolyFn::R(l);
        let values = grid
            .iter()
            .map(|&n| {
                let spec = fam.spec(n)?;
                let mean = at_alpha(
                    &fam.alpha(n),
                    |q| Ok(q.measure(&spec)?.expectation(|lam| q.eval(&f, lam))?.as_f64()),
                    |x| x.measure(&spec)?.expectation(|lam| x.eval(&f, lam)),
                )?;
                Ok(mean / (n as f64).powf(l as f64 / 2.0))
            })
            .collect::<Result<Vec<f64>>>()?;
        out.insert(l, least_squares_fit(grid, &values)?);
    }
    Ok(out)
}
