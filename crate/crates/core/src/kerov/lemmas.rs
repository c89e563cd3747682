//! Counting and growth checks on moments and free cumulants.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::Serialize;

use super::perms::{all_permutations, perm_length};
use crate::algebra::factorial;
use crate::error::{Error, Result};

pub const CENSUS_CAP: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusReport {
    pub l: usize,
    pub r: usize,
    pub count: u64,
    /// l^{2r} / r! as an exact fraction `numerator/denominator`.
    pub bound: String,
    pub within_bound: bool,
}

/// #{π ∈ S_l : ‖π‖ = r}, compared against l^{2r}/r!.
pub fn permutation_length_census(l: usize, r: usize) -> Result<CensusReport> {
    if l > CENSUS_CAP {
        return Err(Error::CapExceeded { what: "permutation census", requested: l, cap: CENSUS_CAP });
    }
    let count = all_permutations(l).iter().filter(|p| perm_length(p) == r).count() as u64;
    let num = num_traits::pow(BigInt::from(l), 2 * r);
    let den = factorial(r);
    let within_bound = BigInt::from(count) * &den <= num;
    Ok(CensusReport {
        l,
        r,
        count,
        bound: format!("{num}/{den}"),
        within_bound,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Support {
    HalfLineRight,
    HalfLineLeft,
    FullLine,
}

/// True iff |m_l| ≤ C^l l^{2l} (half-line) or |m_l| ≤ C^l l^l (full line)
/// for every supplied m_1, m_2, ….
pub fn carleman_check(moments: &[f64], support: Support, c: f64) -> bool {
    let p = match support {
        Support::HalfLineRight | Support::HalfLineLeft => 2.0,
        Support::FullLine => 1.0,
    };
    moments.iter().enumerate().all(|(i, &m)| {
        let l = (i + 1) as f64;
        if m == 0.0 {
            return true;
        }
        if !m.is_finite() || c <= 0.0 {
            return false;
        }
        let lhs = m.abs().ln();
        let rhs = l * c.ln() + p * l * l.ln();
        lhs <= rhs + 1e-12 * rhs.abs().max(1.0)
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct GrowthReport {
    pub m: u32,
    /// Smallest C with |r_l| ≤ C^l l^{ml} over the supplied range.
    pub smallest_c: f64,
    pub r2: Option<f64>,
    pub r2_is_one: bool,
}

/// Growth of estimated limit free cumulants r_l.
pub fn free_cumulant_growth(r: &BTreeMap<usize, f64>, m: u32, tol: f64) -> GrowthReport {
    let smallest_c = r
        .iter()
        .filter(|(_, v)| **v != 0.0)
        .map(|(&l, v)| {
            let lf = l as f64;
            (v.abs().ln() / lf - m as f64 * lf.ln()).exp()
        })
        .fold(0.0, f64::max);
    let r2 = r.get(&2).copied();
    GrowthReport {
        m,
        smallest_c,
        r2,
        r2_is_one: r2.is_some_and(|x| (x - 1.0).abs() <= tol),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FamilyGrowthReport {
    pub n_grid: Vec<usize>,
    /// Fitted limits of n^{−l/2} E[R_l] with their 1/√n rates.
    pub estimates: BTreeMap<usize, crate::cumulants::Fit>,
    pub growth: GrowthReport,
}

/// Estimates r_l from exact expectations over the grid and reports the
/// smallest C with |r_l| ≤ C^l l^{ml}.
pub fn free_cumulant_growth_check(
    fam: &crate::cumulants::CharacterFamily,
    ls: &[usize],
    grid: &[usize],
) -> Result<FamilyGrowthReport> {
    let estimates = crate::cumulants::limit_free_cumulants(fam, ls, grid)?;
    let r: BTreeMap<usize, f64> = estimates.iter().map(|(l, f)| (*l, f.limit)).collect();
    let growth = free_cumulant_growth(&r, fam.alpha_rule().growth_exponent(), 1e-9);
    Ok(FamilyGrowthReport { n_grid: grid.to_vec(), estimates, growth })
}
