//! Independent oracles shared by the integration tests. Nothing here calls
//! into the library except for plain data types.
#![allow(dead_code)]

use std::collections::BTreeMap;

use jacklab::algebra::Rational;
use jacklab::partitions::Partition;
use num_bigint::BigInt;
use num_traits::{One, Zero};

pub fn parts(p: &Partition) -> Vec<usize> {
    p.parts().iter().map(|&x| x as usize).collect()
}

/// Murnaghan–Nakayama by rim-hook removal on beta numbers.
pub fn mn_character(lambda: &[usize], pi: &[usize]) -> i64 {
    let n = lambda.len();
    let beta: Vec<usize> = lambda.iter().enumerate().map(|(i, &l)| l + n - 1 - i).collect();
    mn_beta(&beta, pi)
}

fn mn_beta(beta: &[usize], pi: &[usize]) -> i64 {
    let Some((&r, rest)) = pi.split_first() else {
        return 1;
    };
    let mut total = 0;
    for (i, &b) in beta.iter().enumerate() {
        if b < r || beta.contains(&(b - r)) {
            continue;
        }
        let between = beta.iter().filter(|&&c| c > b - r && c < b).count();
        let mut next = beta.to_vec();
        next[i] = b - r;
        let sign = if between % 2 == 0 { 1 } else { -1 };
        total += sign * mn_beta(&next, rest);
    }
    total
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |a, k| a * k)
}

/// n!/∏ hooks.
pub fn hook_dim(lambda: &[usize]) -> BigInt {
    let n: usize = lambda.iter().sum();
    let mut prod = BigInt::one();
    for (i, &li) in lambda.iter().enumerate() {
        for j in 0..li {
            let arm = li - j - 1;
            let leg = lambda[i + 1..].iter().filter(|&&lk| lk > j).count();
            prod *= arm + leg + 1;
        }
    }
    factorial(n) / prod
}

/// Number of standard tableaux, by removing corners.
pub fn path_dim(lambda: &[usize], memo: &mut BTreeMap<Vec<usize>, BigInt>) -> BigInt {
    if lambda.iter().sum::<usize>() <= 1 {
        return BigInt::one();
    }
    if let Some(v) = memo.get(lambda) {
        return v.clone();
    }
    let mut total = BigInt::zero();
    for i in 0..lambda.len() {
        let corner = i + 1 == lambda.len() || lambda[i + 1] < lambda[i];
        if corner {
            let mut smaller = lambda.to_vec();
            smaller[i] -= 1;
            while smaller.last() == Some(&0) {
                smaller.pop();
            }
            total += path_dim(&smaller, memo);
        }
    }
    memo.insert(lambda.to_vec(), total.clone());
    total
}

/// α^n n! / ∏_□ (α a + l + 1)(α a + l + α).
pub fn jack_plancherel_oracle(lambda: &[usize], alpha: &Rational) -> Rational {
    let n: usize = lambda.iter().sum();
    let mut w = Rational::from_integer(factorial(n));
    for _ in 0..n {
        w *= alpha;
    }
    for (i, &li) in lambda.iter().enumerate() {
        for j in 0..li {
            let a = Rational::from_integer(BigInt::from(li - j - 1));
            let l = Rational::from_integer(BigInt::from(lambda[i + 1..].iter().filter(|&&lk| lk > j).count()));
            let one = Rational::one();
            w /= (alpha * &a + &l + one) * (alpha * &a + &l + alpha);
        }
    }
    w
}

/// Gauss–Legendre nodes and weights on [−1, 1], Newton on P_m.
pub fn gauss_legendre(m: usize) -> Vec<(f64, f64)> {
    let legendre = |x: f64| {
        let (mut p0, mut p1) = (1.0, x);
        for k in 2..=m {
            let k = k as f64;
            let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        let dp = m as f64 * (x * p1 - p0) / (x * x - 1.0);
        (p1, dp)
    };
    (0..m)
        .map(|i| {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (m as f64 + 0.5)).cos();
            for _ in 0..100 {
                let (p, dp) = legendre(x);
                let dx = p / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, dp) = legendre(x);
            (x, 2.0 / ((1.0 - x * x) * dp * dp))
        })
        .collect()
}

/// ∫_a^b f by composite Gauss–Legendre on `pieces` equal panels.
pub fn integrate(f: impl Fn(f64) -> f64, a: f64, b: f64, rule: &[(f64, f64)], pieces: usize) -> f64 {
    let h = (b - a) / pieces as f64;
    (0..pieces)
        .map(|p| {
            let (lo, hi) = (a + p as f64 * h, a + (p + 1) as f64 * h);
            let (mid, half) = ((lo + hi) / 2.0, (hi - lo) / 2.0);
            rule.iter().map(|(x, w)| w * f(mid + half * x)).sum::<f64>() * half
        })
        .sum()
}

/// All compositions of `total` into parts ≥ 2.
pub fn compositions_ge2(total: usize) -> Vec<Vec<usize>> {
    if total == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 2..=total {
        for mut rest in compositions_ge2(total - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn falling(n: usize, k: usize) -> BigInt {
    (0..k).fold(BigInt::one(), |a, i| a * (n - i))
}

/// Σ_i (1/i!) (l−1)^{falling(i−1)} Σ_{k_1+…+k_i = l} x_{k_1}⋯x_{k_i}.
pub fn composition_transform(x: &BTreeMap<usize, Rational>, l: usize) -> Rational {
    compositions_ge2(l)
        .into_iter()
        .map(|ks| {
            let i = ks.len();
            let c = Rational::new(falling(l - 1, i - 1), factorial(i));
            ks.iter().fold(c, |acc, k| acc * &x[k])
        })
        .sum()
}

/// Σ_i (1/(i−1)!) (l−1)^{falling(i−1)} Σ_{k_1+…+k_i = l} y_{k_1} x_{k_2}⋯x_{k_i}.
pub fn composition_transform_b(
    x: &BTreeMap<usize, Rational>,
    y: &BTreeMap<usize, Rational>,
    l: usize,
) -> Rational {
    compositions_ge2(l)
        .into_iter()
        .map(|ks| {
            let i = ks.len();
            let c = Rational::new(falling(l - 1, i - 1), factorial(i - 1));
            ks[1..].iter().fold(c * &y[&ks[0]], |acc, k| acc * &x[k])
        })
        .sum()
}

/// Lexicographic permutations of 0..l.
pub fn permutations(l: usize) -> Vec<Vec<usize>> {
    if l == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(l - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, l - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

/// Number of pairs in S_l × S_l generating a transitive group.
pub fn transitive_pair_count(l: usize) -> usize {
    let perms = permutations(l);
    let mut count = 0;
    for a in &perms {
        for b in &perms {
            let mut seen = vec![false; l];
            let mut stack = vec![0];
            seen[0] = true;
            while let Some(x) = stack.pop() {
                for y in [a[x], b[x]] {
                    if !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
            if seen.iter().all(|&s| s) {
                count += 1;
            }
        }
    }
    count
}

pub fn cycle_count(p: &[usize]) -> usize {
    let mut seen = vec![false; p.len()];
    let mut c = 0;
    for s in 0..p.len() {
        if !seen[s] {
            c += 1;
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                x = p[x];
            }
        }
    }
    c
}
