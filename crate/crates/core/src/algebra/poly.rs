//! Dense univariate polynomials over Q, used to reconstruct α-polynomial
//! coefficients from their values at rational points.

use num_traits::Zero;

use super::scalar::Rational;

/// Coefficients (low degree first) of the unique polynomial of degree
/// `< xs.len()` through the given points. Newton divided differences.
pub fn interpolate(xs: &[Rational], ys: &[Rational]) -> Vec<Rational> {
    assert_eq!(xs.len(), ys.len());
    let n = xs.len();
    let mut dd: Vec<Rational> = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - j]);
        }
    }
    // expand Σ dd[k] ∏_{i<k} (x − xs[i]) by Horner from the top
    let mut coeffs: Vec<Rational> = vec![Rational::zero(); n.max(1)];
    for k in (0..n).rev() {
        // coeffs ← coeffs·(x − xs[k]) + dd[k]
        let mut next = vec![Rational::zero(); n.max(1)];
        for (d, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if d + 1 < next.len() {
                next[d + 1] += c;
            }
            next[d] -= c * &xs[k];
        }
        next[0] += &dd[k];
        coeffs = next;
    }
    trim(&mut coeffs);
    coeffs
}

pub fn eval(coeffs: &[Rational], x: &Rational) -> Rational {
    coeffs
        .iter()
        .rev()
        .fold(Rational::zero(), |acc, c| acc * x + c)
}

fn trim(c: &mut Vec<Rational>) {
    while c.last().is_some_and(|x| x.is_zero()) {
        c.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::{int, rat};

    #[test]
    fn recovers_cubic() {
        let p = [int(1), rat(-1, 2), int(0), int(3)];
        let xs: Vec<_> = (0..5).map(|k| int(k + 1)).collect();
        let ys: Vec<_> = xs.iter().map(|x| eval(&p, x)).collect();
        assert_eq!(interpolate(&xs, &ys), p.to_vec());
    }

    #[test]
    fn zero_polynomial() {
        let xs = [int(1), int(2)];
        let ys = [int(0), int(0)];
        assert!(interpolate(&xs, &ys).is_empty());
    }
}
