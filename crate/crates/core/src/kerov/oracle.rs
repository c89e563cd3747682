//! Kerov expansions by evaluation and exact linear solve.

use std::collections::BTreeMap;

use rayon::prelude::*;

use super::graded::{GradedPolynomial, KerovMonomial};
use num_traits::Zero;

use crate::algebra::{linalg, rat, LaurentA, Rational};
use crate::error::{Error, Result};
use crate::jack::normalized_character;
use crate::partitions::{enumerate_partitions, Partition};
use crate::shape::free_cumulants;

pub const ORACLE_CAP: usize = 6;
/// Largest diagram size the oracle will evaluate at.
pub const ORACLE_SIZE_CAP: usize = 10;

/// All monomials of degree ≤ d.
pub fn monomials_up_to(d: usize) -> Vec<KerovMonomial> {
    let mut out = Vec::new();
    for a in 0..=d {
        for rest in 0..=d - a {
            for p in enumerate_partitions(rest) {
                if p.parts().iter().all(|&k| k >= 2) {
                    out.push(KerovMonomial { gamma_power: a as u32, r_parts: p });
                }
            }
        }
    }
    out
}

/// Evaluation data recorded with an oracle result.
#[derive(Clone, Debug)]
pub struct OracleReport {
    pub polynomial: GradedPolynomial,
    pub sizes: Vec<usize>,
    pub a_values: Vec<Rational>,
    pub equations: usize,
    pub unknowns: usize,
    /// Number of times the point set was enlarged after a rank deficiency.
    pub enlargements: usize,
}

fn initial_a_values() -> Vec<Rational> {
    vec![rat(1, 1), rat(2, 1), rat(3, 1), rat(1, 2), rat(5, 1)]
}

fn extra_a_values() -> Vec<Rational> {
    vec![rat(1, 3), rat(7, 1), rat(2, 5), rat(3, 2), rat(11, 1), rat(1, 4), rat(5, 3)]
}

struct PointData {
    ch: LaurentA,
    r: BTreeMap<usize, LaurentA>,
}

fn point_data(l: usize, lambda: &Partition) -> Result<PointData> {
    let ch = normalized_character(&Partition::row(l as u32), lambda)?;
    let r = if lambda.is_empty() {
        (2..=l + 1).map(|k| (k, LaurentA::zero())).collect()
    } else {
        free_cumulants(lambda, l + 1)?
    };
    Ok(PointData { ch, r })
}

fn rows_for(
    data: &[&PointData],
    monos: &[KerovMonomial],
    a_values: &[Rational],
) -> Result<(Vec<Vec<Rational>>, Vec<Rational>)> {
    let mut a = Vec::new();
    let mut b = Vec::new();
    for av in a_values {
        let gamma = LaurentA::gamma().substitute(av)?;
        for d in data {
            let r: BTreeMap<usize, Rational> = d
                .r
                .iter()
                .map(|(k, v)| Ok((*k, v.substitute(av)?)))
                .collect::<Result<_>>()?;
            let row = monos.iter().map(|m| m.eval(&gamma, &r)).collect::<Result<Vec<_>>>()?;
            a.push(row);
            b.push(d.ch.substitute(av)?);
        }
    }
    Ok((a, b))
}

/// Coefficients of Ch_l in the monomials of degree ≤ l + 1, solved on
/// (λ, A) evaluation points.
pub fn kerov_expansion_oracle(l: usize) -> Result<GradedPolynomial> {
    Ok(kerov_expansion_oracle_report(l)?.polynomial)
}

pub fn kerov_expansion_oracle_report(l: usize) -> Result<OracleReport> {
    if l > ORACLE_CAP {
        return Err(Error::CapExceeded { what: "Kerov oracle", requested: l, cap: ORACLE_CAP });
    }
    if l == 0 {
        return Err(Error::InvalidArgument("Ch_l needs l ≥ 1".into()));
    }
    let monos = monomials_up_to(l + 1);
    // enlargement schedule: smaller sizes, then more values of A, then
    // larger sizes
    let mut sizes = vec![l + 1, l + 2];
    let mut a_values = initial_a_values();
    let mut extra_a = extra_a_values().into_iter();
    let mut enlargements = 0;
    let mut cache: BTreeMap<usize, Vec<PointData>> = BTreeMap::new();
    loop {
        for &s in &sizes {
            if !cache.contains_key(&s) {
                let data = enumerate_partitions(s)
                    .par_iter()
                    .map(|p| point_data(l, p))
                    .collect::<Result<Vec<_>>>()?;
                cache.insert(s, data);
            }
        }
        let data: Vec<&PointData> = sizes.iter().flat_map(|s| cache[s].iter()).collect();
        let (a, b) = rows_for(&data, &monos, &a_values)?;
        let equations = a.len();
        match linalg::solve_overdetermined(a, b) {
            Ok(x) => {
                let mut poly = GradedPolynomial::new();
                for (m, c) in monos.iter().zip(x) {
                    poly.add_term(m.clone(), c);
                }
                sizes.sort_unstable();
                return Ok(OracleReport {
                    polynomial: poly,
                    sizes,
                    a_values,
                    equations,
                    unknowns: monos.len(),
                    enlargements,
                });
            }
            Err(Error::RankDeficient { rank, unknowns, .. }) => {
                enlargements += 1;
                let below: Vec<usize> = (0..=l).filter(|s| !sizes.contains(s)).collect();
                if !below.is_empty() {
                    sizes.extend(below);
                } else if let Some(av) = extra_a.next() {
                    a_values.push(av);
                } else {
                    let next = sizes.iter().max().unwrap() + 1;
                    if next > ORACLE_SIZE_CAP {
                        return Err(Error::RankDeficient {
                            rank,
                            unknowns,
                            context: format!("Kerov oracle for l = {l} at the evaluation cap"),
                        });
                    }
                    sizes.push(next);
                }
            }
            Err(e) => return Err(e),
        }
    }
}

/// Evaluates a Kerov expansion at λ, symbolically in A.
pub fn eval_at_partition(poly: &GradedPolynomial, lambda: &Partition) -> Result<LaurentA> {
    let kmax = poly
        .terms()
        .flat_map(|(m, _)| m.r_parts.parts().iter().copied())
        .max()
        .unwrap_or(2) as usize;
    let r = if lambda.is_empty() {
        (2..=kmax).map(|k| (k, LaurentA::zero())).collect()
    } else {
        free_cumulants(lambda, kmax)?
    };
    poly.eval(&LaurentA::gamma(), &r)
}
