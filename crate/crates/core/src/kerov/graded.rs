//! Polynomials in γ and the free cumulants R_2, R_3, ….

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{Rational, Ring};
use crate::error::{Error, Result};
use crate::partitions::Partition;

/// γ^a · R_{k_1} ⋯ R_{k_j} with every k_i ≥ 2.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct KerovMonomial {
    pub gamma_power: u32,
    pub r_parts: Partition,
}

impl KerovMonomial {
    pub fn new(gamma_power: u32, r_parts: Partition) -> Result<Self> {
        if r_parts.parts().iter().any(|&k| k < 2) {
            return Err(Error::InvalidArgument(format!(
                "free cumulant indices must be ≥ 2, got {r_parts}"
            )));
        }
        Ok(KerovMonomial { gamma_power, r_parts })
    }

    pub fn degree(&self) -> usize {
        self.gamma_power as usize + self.r_parts.size()
    }

    pub fn eval<R: Ring>(&self, gamma: &R, r: &BTreeMap<usize, R>) -> Result<R> {
        let mut acc = gamma.pow(self.gamma_power);
        for &k in self.r_parts.parts() {
            let rk = r.get(&(k as usize)).ok_or_else(|| {
                Error::InvalidArgument(format!("value of R_{k} not supplied"))
            })?;
            acc = acc * rk.clone();
        }
        Ok(acc)
    }
}

impl fmt::Display for KerovMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut factors = Vec::new();
        match self.gamma_power {
            0 => {}
            1 => factors.push("γ".to_string()),
            p => factors.push(format!("γ^{p}")),
        }
        for (k, m) in self.r_parts.multiplicities().into_iter().rev() {
            if m == 1 {
                factors.push(format!("R_{k}"));
            } else {
                factors.push(format!("R_{k}^{m}"));
            }
        }
        if factors.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", factors.join(" "))
        }
    }
}

/// Rational combination of [`KerovMonomial`]s, graded by
/// deg γ = 1 and deg R_k = k.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GradedPolynomial {
    terms: BTreeMap<KerovMonomial, Rational>,
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    gamma_power: u32,
    r_parts: Vec<u32>,
    coefficient: String,
}

impl GradedPolynomial {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_term(&mut self, m: KerovMonomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m.clone()).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn coeff(&self, m: &KerovMonomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&KerovMonomial, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(KerovMonomial::degree).max()
    }

    pub fn homogeneous_part(&self, d: usize) -> GradedPolynomial {
        self.filter(|m| m.degree() == d)
    }

    pub fn filter(&self, keep: impl Fn(&KerovMonomial) -> bool) -> GradedPolynomial {
        GradedPolynomial {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Sets γ = 0.
    pub fn at_gamma_zero(&self) -> GradedPolynomial {
        self.filter(|m| m.gamma_power == 0)
    }

    pub fn scale(&self, c: &Rational) -> GradedPolynomial {
        let mut out = GradedPolynomial::new();
        for (m, x) in &self.terms {
            out.add_term(m.clone(), x * c);
        }
        out
    }

    pub fn sub(&self, other: &GradedPolynomial) -> GradedPolynomial {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn eval<R: Ring>(&self, gamma: &R, r: &BTreeMap<usize, R>) -> Result<R> {
        let mut acc = R::zero();
        for (m, c) in &self.terms {
            acc = acc + m.eval(gamma, r)?.scale(c);
        }
        Ok(acc)
    }

    pub fn to_json(&self) -> String {
        let list: Vec<TermJson> = self
            .terms
            .iter()
            .map(|(m, c)| TermJson {
                gamma_power: m.gamma_power,
                r_parts: m.r_parts.parts().to_vec(),
                coefficient: c.to_string(),
            })
            .collect();
        serde_json::to_string(&list).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let list: Vec<TermJson> = serde_json::from_str(text)?;
        let mut out = GradedPolynomial::new();
        for t in list {
            let c = crate::algebra::parse_rational(&t.coefficient)
                .ok_or_else(|| Error::Parse(format!("bad coefficient {}", t.coefficient)))?;
            let m = KerovMonomial::new(t.gamma_power, Partition::from_unsorted(t.r_parts))?;
            out.add_term(m, c);
        }
        Ok(out)
    }
}

impl fmt::Display for GradedPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // highest degree first
        let mut items: Vec<_> = self.terms.iter().collect();
        items.sort_by(|a, b| b.0.degree().cmp(&a.0.degree()).then(b.0.cmp(a.0)));
        for (idx, (m, c)) in items.into_iter().enumerate() {
            let neg = *c < Rational::zero();
            let abs = if neg { -c.clone() } else { c.clone() };
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let mono = m.to_string();
            if abs.is_one() {
                write!(f, "{mono}")?;
            } else if mono == "1" {
                write!(f, "{abs}")?;
            } else {
                write!(f, "{abs} {mono}")?;
            }
        }
        Ok(())
    }
}
