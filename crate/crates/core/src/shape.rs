//! Shape functionals S_k, free cumulants R_k and the fluctuation
//! functionals Y_k.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::Zero;

use crate::algebra::{factorial, falling_factorial, LaurentA, Rational, Ring};
use crate::error::{Error, Result};
use crate::partitions::Partition;

/// Values indexed by k ≥ 2.
pub type ShapeVector<T> = BTreeMap<usize, T>;
pub type FreeCumulantVector<T> = BTreeMap<usize, T>;

fn pow_big(base: u64, e: u32) -> BigInt {
    num_traits::pow(BigInt::from(base), e as usize)
}

/// S_k(λ) = (k−1) ∬_λ (A x − y/A)^{k−2} dx dy, row by row.
pub fn s_functional(lambda: &Partition, k: usize) -> Result<LaurentA> {
    if k < 2 {
        return Err(Error::InvalidArgument(format!("S_k needs k ≥ 2, got {k}")));
    }
    let m = k - 2;
    // coefficient of A^{2t−m}: Σ_i C(m,t)(−1)^{m−t} λ_i^{t+1}/(t+1) · ∫_{i−1}^{i} y^s dy
    let mut out = LaurentA::new();
    for t in 0..=m {
        let s = (m - t) as u32;
        let mut acc = BigInt::zero();
        for (row, &li) in lambda.parts().iter().enumerate() {
            let i = row as u64 + 1;
            let x = pow_big(li as u64, t as u32 + 1);
            let y = pow_big(i, s + 1) - pow_big(i - 1, s + 1);
            acc += x * y;
        }
        let sign = if (m - t) % 2 == 0 { 1 } else { -1 };
        let c = Rational::new(
            acc * binomial(BigInt::from(m as u64), BigInt::from(t as u64)) * sign * (k as i64 - 1),
            BigInt::from((t as u64 + 1) * (s as u64 + 1)),
        );
        out.add_term(2 * t as i32 - m as i32, c);
    }
    Ok(out)
}

/// S_2 … S_K of λ.
pub fn shape_vector(lambda: &Partition, kmax: usize) -> Result<ShapeVector<LaurentA>> {
    (2..=kmax).map(|k| Ok((k, s_functional(lambda, k)?))).collect()
}

/// S_k(λ) at a real α, via the antiderivative of (a x − y/a)^m on each row.
pub fn s_functional_f64(lambda: &Partition, k: usize, alpha: f64) -> f64 {
    assert!(k >= 2);
    if k == 2 {
        return lambda.size() as f64;
    }
    let a = alpha.sqrt();
    let m = (k - 2) as i32;
    // F(x, y) = −(a x − y/a)^{m+2} / ((m+1)(m+2)) has ∂x∂y F = (a x − y/a)^m
    let f = |x: f64, y: f64| -(a * x - y / a).powi(m + 2) / ((m + 1) * (m + 2)) as f64;
    let mut total = 0.0;
    for (row, &li) in lambda.parts().iter().enumerate() {
        let (y0, y1) = (row as f64, row as f64 + 1.0);
        let x1 = li as f64;
        total += f(x1, y1) - f(0.0, y1) - f(x1, y0) + f(0.0, y0);
    }
    (k - 1) as f64 * total
}

/// Σ over compositions of `l` into `i` parts ≥ 2 of ∏ x_{k_j}, for all i.
fn composition_power_sums<T: Ring>(x: &BTreeMap<usize, T>, l: usize) -> Vec<T> {
    // p[i][s] = Σ over compositions of s into i parts ≥ 2
    let imax = l / 2;
    let mut p: Vec<Vec<T>> = vec![vec![T::zero(); l + 1]; imax + 1];
    p[0][0] = T::one();
    for i in 1..=imax {
        for s in 2 * i..=l {
            let mut acc = T::zero();
            for k in 2..=s - 2 * (i - 1) {
                let prev = &p[i - 1][s - k];
                if !prev.is_zero() {
                    acc = acc + x[&k].clone() * prev.clone();
                }
            }
            p[i][s] = acc;
        }
    }
    p.into_iter().map(|row| row[l].clone()).collect()
}

fn check_complete<T>(v: &BTreeMap<usize, T>) -> Result<usize> {
    let kmax = v.keys().next_back().copied().unwrap_or(1);
    for k in 2..=kmax {
        if !v.contains_key(&k) {
            return Err(Error::InvalidArgument(format!("missing entry for k = {k}")));
        }
    }
    Ok(kmax)
}

/// S_l = Σ_i (1/i!) (l−1)^{falling (i−1)} Σ_{k_1+…+k_i = l} R_{k_1}⋯R_{k_i}.
pub fn r_to_s<T: Ring>(r: &FreeCumulantVector<T>) -> Result<ShapeVector<T>> {
    let kmax = check_complete(r)?;
    let mut out = BTreeMap::new();
    for l in 2..=kmax {
        let sums = composition_power_sums(r, l);
        let mut acc = T::zero();
        for (i, s) in sums.iter().enumerate().skip(1) {
            if s.is_zero() {
                continue;
            }
            let c = Rational::new(falling_factorial(l - 1, i - 1), factorial(i));
            acc = acc + s.scale(&c);
        }
        out.insert(l, acc);
    }
    Ok(out)
}

/// R_l = Σ_i (1/i!) (−l+1)^{i−1} Σ_{k_1+…+k_i = l} S_{k_1}⋯S_{k_i}.
pub fn s_to_r<T: Ring>(s: &ShapeVector<T>) -> Result<FreeCumulantVector<T>> {
    let kmax = check_complete(s)?;
    let mut out = BTreeMap::new();
    for l in 2..=kmax {
        let sums = composition_power_sums(s, l);
        let mut acc = T::zero();
        for (i, x) in sums.iter().enumerate().skip(1) {
            if x.is_zero() {
                continue;
            }
            let base = BigInt::from(1 - l as i64);
            let c = Rational::new(num_traits::pow(base, i - 1), factorial(i));
            acc = acc + x.scale(&c);
        }
        out.insert(l, acc);
    }
    Ok(out)
}

/// R_2 … R_K of λ, symbolic in `A`.
pub fn free_cumulants(lambda: &Partition, kmax: usize) -> Result<FreeCumulantVector<LaurentA>> {
    s_to_r(&shape_vector(lambda, kmax)?)
}

/// R_2 … R_K of λ at a real α.
pub fn free_cumulants_f64(lambda: &Partition, kmax: usize, alpha: f64) -> FreeCumulantVector<f64> {
    let s: BTreeMap<usize, f64> = (2..=kmax)
        .map(|k| (k, s_functional_f64(lambda, k, alpha)))
        .collect();
    s_to_r(&s).expect("complete by construction")
}

/// ∫ u^k dP_Λ for k = 0 … K−2, Λ the unit-area scaling of λ.
pub fn plambda_moments(lambda: &Partition, n: usize, alpha: f64, kmax: usize) -> Result<Vec<f64>> {
    if lambda.size() != n {
        return Err(Error::SizeMismatch(format!("{lambda} does not have {n} boxes")));
    }
    if n == 0 {
        return Err(Error::InvalidArgument("P_Λ needs a nonempty diagram".into()));
    }
    let nf = n as f64;
    Ok((0..=kmax.saturating_sub(2))
        .map(|k| {
            s_functional_f64(lambda, k + 2, alpha) / ((k + 1) as f64 * nf.powf((k + 2) as f64 / 2.0))
        })
        .collect())
}

/// Y_k = √n (n^{−k/2} S_k(λ) − s_ref).
pub fn fluctuation_y(lambda: &Partition, k: usize, alpha: f64, s_ref: f64) -> f64 {
    let n = lambda.size() as f64;
    n.sqrt() * (s_functional_f64(lambda, k, alpha) / n.powf(k as f64 / 2.0) - s_ref)
}

/// n^{−k/2} S_k(λ).
pub fn scaled_s(lambda: &Partition, k: usize, alpha: f64) -> f64 {
    let n = lambda.size() as f64;
    s_functional_f64(lambda, k, alpha) / n.powf(k as f64 / 2.0)
}
