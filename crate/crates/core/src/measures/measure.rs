use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::algebra::{factorial, int, Field, Rational, Ring, Surd};
use crate::error::{Error, Result};
use crate::partitions::{enumerate_partitions, Partition};

/// A probability assignment on partitions of `n`; only nonzero weights are
/// stored.
#[derive(Clone, Debug, PartialEq)]
pub struct MeasureOnYn<W> {
    n: usize,
    weights: BTreeMap<Partition, W>,
}

impl<W> MeasureOnYn<W> {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Support in increasing lexicographic order.
    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (&Partition, &W)> {
        self.weights.iter()
    }

    pub fn support_size(&self) -> usize {
        self.weights.len()
    }
}

impl<W: Ring> MeasureOnYn<W> {
    pub fn from_weights(n: usize, weights: impl IntoIterator<Item = (Partition, W)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (p, w) in weights {
            if p.size() != n {
                return Err(Error::SizeMismatch(format!("{p} is not a partition of {n}")));
            }
            if !w.is_zero() {
                map.insert(p, w);
            }
        }
        Ok(MeasureOnYn { n, weights: map })
    }

    pub fn point_mass(lambda: Partition) -> Self {
        MeasureOnYn {
            n: lambda.size(),
            weights: BTreeMap::from([(lambda, W::one())]),
        }
    }

    pub fn weight(&self, lambda: &Partition) -> W {
        self.weights.get(lambda).cloned().unwrap_or_else(W::zero)
    }

    pub fn total(&self) -> W {
        self.weights.values().fold(W::zero(), |acc, w| acc + w.clone())
    }

    /// Σ_λ ℙ(λ) f(λ).
    pub fn expectation<F>(&self, mut f: F) -> Result<W>
    where
        F: FnMut(&Partition) -> Result<W>,
    {
        let mut acc = W::zero();
        for (p, w) in &self.weights {
            acc = acc + w.clone() * f(p)?;
        }
        Ok(acc)
    }

    pub fn map<V: Ring>(&self, f: impl Fn(&W) -> V) -> MeasureOnYn<V> {
        MeasureOnYn {
            n: self.n,
            weights: self
                .weights
                .iter()
                .map(|(p, w)| (p.clone(), f(w)))
                .filter(|(_, v)| !v.is_zero())
                .collect(),
        }
    }
}

impl<W: Field> MeasureOnYn<W> {
    pub fn to_f64(&self) -> MeasureOnYn<f64> {
        self.map(|w| w.as_f64())
    }
}

impl MeasureOnYn<Rational> {
    pub fn to_surd(&self) -> MeasureOnYn<Surd> {
        self.map(|w| Surd::rational(w.clone()))
    }
}

fn check_alpha(alpha: &Rational) -> Result<()> {
    if *alpha <= Rational::zero() {
        return Err(Error::InvalidArgument(format!("α must be positive, got {alpha}")));
    }
    Ok(())
}

fn check_alpha_f64(alpha: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(Error::InvalidArgument(format!("α must be positive, got {alpha}")));
    }
    Ok(())
}

/// c_λ(α) c′_λ(α) = ∏_s (α a + l + 1)(α(a+1) + l).
fn hook_products(lambda: &Partition, alpha: &Rational) -> Rational {
    let mut prod = Rational::one();
    for (a, l) in lambda.arm_legs() {
        let (a, l) = (int(a as i64), int(l as i64));
        prod *= (alpha * &a + &l + Rational::one()) * (alpha * (a + Rational::one()) + l);
    }
    prod
}

/// ℙ(λ) = α^n n! / (c_λ c′_λ).
pub fn jack_plancherel_weight(lambda: &Partition, alpha: &Rational) -> Result<Rational> {
    check_alpha(alpha)?;
    let n = lambda.size();
    Ok(alpha.pow(n as i32) * Rational::from_integer(factorial(n)) / hook_products(lambda, alpha))
}

pub fn jack_plancherel_weight_f64(lambda: &Partition, alpha: f64) -> Result<f64> {
    check_alpha_f64(alpha)?;
    let n = lambda.size();
    let mut log = n as f64 * alpha.ln() + (1..=n).map(|k| (k as f64).ln()).sum::<f64>();
    for (a, l) in lambda.arm_legs() {
        let (a, l) = (a as f64, l as f64);
        log -= (alpha * a + l + 1.0).ln() + (alpha * (a + 1.0) + l).ln();
    }
    Ok(log.exp())
}

/// Jack–Plancherel measure on all partitions of `n` by the hook-product
/// formula.
pub fn jack_plancherel(n: usize, alpha: &Rational) -> Result<MeasureOnYn<Rational>> {
    check_alpha(alpha)?;
    let w = enumerate_partitions(n)
        .into_iter()
        .map(|p| {
            let x = jack_plancherel_weight(&p, alpha)?;
            Ok((p, x))
        })
        .collect::<Result<Vec<_>>>()?;
    MeasureOnYn::from_weights(n, w)
}

pub fn jack_plancherel_f64(n: usize, alpha: f64) -> Result<MeasureOnYn<f64>> {
    check_alpha_f64(alpha)?;
    let w = enumerate_partitions(n)
        .into_iter()
        .map(|p| {
            let x = jack_plancherel_weight_f64(&p, alpha)?;
            Ok((p, x))
        })
        .collect::<Result<Vec<_>>>()?;
    MeasureOnYn::from_weights(n, w)
}

pub(crate) fn validate_alpha(alpha: &Rational) -> Result<()> {
    check_alpha(alpha)
}

pub(crate) fn validate_alpha_f64(alpha: f64) -> Result<()> {
    check_alpha_f64(alpha)
}
