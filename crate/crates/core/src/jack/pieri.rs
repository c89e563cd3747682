//! Coefficients of `p_1 · J_λ = Σ_Λ c^Λ_λ J_Λ`.
//!
//! The fast path is the product formula over addable and removable corners
//! in anisotropic contents; [`pieri_p1_oracle_at`] solves the defining linear
//! system through θ tables and is the reference.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::table::ThetaAt;
use crate::algebra::{int, linalg, LaurentA, Rational};
use crate::error::{Error, Result};
use crate::partitions::Partition;

/// `c = num/den` with `num`, `den` polynomials in `A`.
#[derive(Clone, Debug, PartialEq)]
pub struct RatFunA {
    pub num: LaurentA,
    pub den: LaurentA,
}

impl RatFunA {
    pub fn eval(&self, a: &Rational) -> Result<Rational> {
        let d = self.den.substitute(a)?;
        if d.is_zero() {
            return Err(Error::InvalidArgument(format!("pole at A = {a}")));
        }
        Ok(self.num.substitute(a)? / d)
    }

    pub fn eval_f64(&self, a: f64) -> Result<f64> {
        Ok(self.num.substitute_f64(a)? / self.den.substitute_f64(a)?)
    }
}

impl std::fmt::Display for RatFunA {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

/// Anisotropic content `α·(j) − i` data of the corners of λ:
/// addable cells `(row, α·col − row)` and removable cells
/// `α·(col+1) − (row+1)`, rows and columns 0-indexed.
fn corner_contents<T, F>(lambda: &Partition, lin: F) -> (Vec<(usize, T)>, Vec<T>)
where
    F: Fn(i64, i64) -> T,
{
    let add = lambda
        .addable_cells()
        .into_iter()
        .map(|(i, j)| (i, lin(j as i64, -(i as i64))))
        .collect();
    let rem = lambda
        .removable_cells()
        .into_iter()
        .map(|(i, j)| lin(j as i64 + 1, -(i as i64 + 1)))
        .collect();
    (add, rem)
}

/// Product formula at a rational α; keys are the partitions λ + □.
pub fn pieri_p1_at(lambda: &Partition, alpha: &Rational) -> BTreeMap<Partition, Rational> {
    let (add, rem) = corner_contents(lambda, |a, b| {
        alpha * Rational::from_integer(a.into()) + Rational::from_integer(b.into())
    });
    let mut out = BTreeMap::new();
    for (k, (row, x)) in add.iter().enumerate() {
        let mut c = Rational::one();
        for y in &rem {
            c *= x - y;
        }
        for (k2, (_, x2)) in add.iter().enumerate() {
            if k2 != k {
                c /= x - x2;
            }
        }
        out.insert(lambda.add_box(*row), c);
    }
    out
}

/// Product formula as rational functions of `A`.
pub fn pieri_p1(lambda: &Partition) -> BTreeMap<Partition, RatFunA> {
    let (add, rem) = corner_contents(lambda, |a, b| {
        LaurentA::monomial(2, int(a)) + LaurentA::constant(int(b))
    });
    let mut out = BTreeMap::new();
    for (k, (row, x)) in add.iter().enumerate() {
        let mut num = LaurentA::one();
        for y in &rem {
            num = &num * &(x - y);
        }
        let mut den = LaurentA::one();
        for (k2, (_, x2)) in add.iter().enumerate() {
            if k2 != k {
                den = &den * &(x - x2);
            }
        }
        out.insert(lambda.add_box(*row), RatFunA { num, den });
    }
    out
}

/// Product formula in floating point: `(row of the new box, probability)`.
pub fn pieri_p1_f64(lambda: &Partition, alpha: f64) -> Vec<(usize, f64)> {
    let (add, rem) = corner_contents(lambda, |a, b| alpha * a as f64 + b as f64);
    // interleave numerator and denominator factors to keep magnitudes tame
    add.iter()
        .enumerate()
        .map(|(k, (row, x))| {
            let mut c = 1.0;
            let mut dens = add.iter().enumerate().filter(|(k2, _)| *k2 != k).map(|(_, (_, x2))| x - x2);
            for y in &rem {
                c *= x - y;
                if let Some(d) = dens.next() {
                    c /= d;
                }
            }
            for d in dens {
                c /= d;
            }
            (*row, c)
        })
        .collect()
}

/// Solves `p_1 J_λ = Σ_Λ c_Λ J_Λ` over all Λ ⊢ |λ|+1 from θ tables at α.
/// Fails if the solution has support outside λ + □.
pub fn pieri_p1_oracle_at(
    lambda: &Partition,
    alpha: &Rational,
) -> Result<BTreeMap<Partition, Rational>> {
    let n = lambda.size();
    let lower = ThetaAt::cached(n, alpha)?;
    let upper = ThetaAt::cached(n + 1, alpha)?;
    let size = upper.parts.len();
    // [p_ρ](p_1 J_λ) = θ_{ρ − (1)}(λ) when ρ has a part 1
    let l = lower.index_of(lambda)?;
    let rhs: Vec<Rational> = upper
        .parts
        .iter()
        .map(|rho| {
            if rho.parts().last() == Some(&1) {
                let mut parts = rho.parts().to_vec();
                parts.pop();
                let pi = Partition::new(parts).expect("still decreasing");
                lower.theta_by_index(l, lower.index_of(&pi).expect("size n")).clone()
            } else {
                Rational::zero()
            }
        })
        .collect();
    // Σ_Λ c_Λ θ_ρ(Λ) = rhs_ρ: matrix rows ρ, columns Λ
    let a: Vec<Vec<Rational>> = (0..size)
        .map(|r| (0..size).map(|c| upper.theta_by_index(c, r).clone()).collect())
        .collect();
    let sol = linalg::solve(a, rhs)?;
    let allowed: Vec<Partition> = lambda
        .addable_cells()
        .into_iter()
        .map(|(i, _)| lambda.add_box(i))
        .collect();
    let mut out = BTreeMap::new();
    for (c, big) in sol.into_iter().zip(&upper.parts) {
        if allowed.contains(big) {
            out.insert(big.clone(), c);
        } else if !c.is_zero() {
            return Err(Error::SingularSystem(format!(
                "p_1 J_{lambda} has a component along J_{big}"
            )));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn small_cases() {
        let e = pieri_p1_at(&Partition::empty(), &int(3));
        assert_eq!(e, BTreeMap::from([(p(&[1]), int(1))]));
        let one = pieri_p1_at(&p(&[1]), &int(3));
        assert_eq!(one[&p(&[2])], rat(1, 4));
        assert_eq!(one[&p(&[1, 1])], rat(3, 4));
        let sym = pieri_p1(&p(&[1]));
        assert_eq!(sym[&p(&[2])].eval(&int(2)).unwrap(), rat(1, 5));
    }

    #[test]
    fn oracle_agrees_small() {
        for n in 0..5 {
            for lam in crate::partitions::enumerate_partitions(n) {
                for alpha in [int(1), rat(1, 4), int(9)] {
                    assert_eq!(
                        pieri_p1_oracle_at(&lam, &alpha).unwrap(),
                        pieri_p1_at(&lam, &alpha)
                    );
                }
            }
        }
    }

    #[test]
    fn float_path() {
        let lam = p(&[4, 2, 2, 1]);
        let exact = pieri_p1_at(&lam, &rat(5, 2));
        for (row, c) in pieri_p1_f64(&lam, 2.5) {
            let e = crate::algebra::rat_to_f64(&exact[&lam.add_box(row)]);
            assert!((e - c).abs() < 1e-14);
        }
    }
}
