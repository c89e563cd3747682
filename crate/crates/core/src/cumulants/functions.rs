//! α-polynomial functions on Young diagrams and their cumulants.

use std::fmt;

use num_traits::Zero;
use rayon::prelude::*;

use crate::algebra::{falling_factorial, Field, LaurentA, Rational, Ring, Surd};
use crate::error::{Error, Result};
use crate::jack::normalized_character;
use crate::measures::{
    jack_plancherel, jack_plancherel_f64, measure_from_character, measure_from_character_f64,
    rectangle_removal_measure, CharacterKind, CharacterSpec, MeasureOnYn,
};
use crate::partitions::Partition;
use crate::shape::{free_cumulants, s_functional};

use super::setpart::mobius_cumulant;

/// Largest n for which moments are computed by enumerating all partitions.
pub const ENUMERATION_CAP: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolyFn {
    Ch(Partition),
    S(usize),
    R(usize),
    Gamma,
    Const(Rational),
}

impl PolyFn {
    pub fn ch(l: u32) -> PolyFn {
        PolyFn::Ch(Partition::row(l))
    }

    /// deg Ch_π = |π| + ℓ(π), deg S_k = deg R_k = k, deg γ = 1.
    pub fn degree(&self) -> usize {
        match self {
            PolyFn::Ch(p) => p.size() + p.len(),
            PolyFn::S(k) | PolyFn::R(k) => *k,
            PolyFn::Gamma => 1,
            PolyFn::Const(_) => 0,
        }
    }

    /// Value at λ as a Laurent polynomial in A.
    pub fn symbolic(&self, lambda: &Partition) -> Result<LaurentA> {
        match self {
            PolyFn::Ch(p) => normalized_character(p, lambda),
            PolyFn::S(k) => s_functional(lambda, *k),
            PolyFn::R(k) => {
                if *k < 2 {
                    return Err(Error::InvalidArgument(format!("R_k needs k ≥ 2, got {k}")));
                }
                Ok(free_cumulants(lambda, *k)?.remove(k).expect("computed up to k"))
            }
            PolyFn::Gamma => Ok(LaurentA::gamma()),
            PolyFn::Const(c) => Ok(LaurentA::constant(c.clone())),
        }
    }
}

impl fmt::Display for PolyFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyFn::Ch(p) if p.len() == 1 => write!(f, "Ch_{}", p.part(0)),
            PolyFn::Ch(p) => write!(f, "Ch_{}", p.key()),
            PolyFn::S(k) => write!(f, "S_{k}"),
            PolyFn::R(k) => write!(f, "R_{k}"),
            PolyFn::Gamma => write!(f, "γ"),
            PolyFn::Const(c) => write!(f, "{c}"),
        }
    }
}

/// Evaluation of characters, measures and functions at one value of α:
/// exactly in Q(√α) for rational α, in floating point otherwise.
pub trait AlphaPoint: Sync {
    type W: Field + Send + Sync;
    fn chi(&self, spec: &CharacterSpec, pi: &Partition) -> Result<Self::W>;
    fn measure(&self, spec: &CharacterSpec) -> Result<MeasureOnYn<Self::W>>;
    fn eval(&self, f: &PolyFn, lambda: &Partition) -> Result<Self::W>;
    fn from_rational(&self, q: &Rational) -> Self::W {
        Self::W::from_rational(q)
    }
}

impl AlphaPoint for Rational {
    type W = Surd;

    fn chi(&self, spec: &CharacterSpec, pi: &Partition) -> Result<Surd> {
        spec.value(pi, self)
    }

    fn measure(&self, spec: &CharacterSpec) -> Result<MeasureOnYn<Surd>> {
        match spec.kind() {
            CharacterKind::Regular => Ok(jack_plancherel(spec.n(), self)?.to_surd()),
            CharacterKind::RectangleRemoval { i, alpha } => {
                if spec.intrinsic_alpha().as_ref() != Some(self) {
                    return Err(wrong_alpha(spec, &self.to_string()));
                }
                Ok(rectangle_removal_measure(*i, *alpha)?.to_surd())
            }
            CharacterKind::Explicit(_) => measure_from_character(spec, self),
        }
    }

    fn eval(&self, f: &PolyFn, lambda: &Partition) -> Result<Surd> {
        f.symbolic(lambda)?.at_alpha(self)
    }
}

impl AlphaPoint for f64 {
    type W = f64;

    fn chi(&self, spec: &CharacterSpec, pi: &Partition) -> Result<f64> {
        spec.value_f64(pi, *self)
    }

    fn measure(&self, spec: &CharacterSpec) -> Result<MeasureOnYn<f64>> {
        match spec.kind() {
            CharacterKind::Regular => jack_plancherel_f64(spec.n(), *self),
            CharacterKind::RectangleRemoval { i, alpha } => {
                let own = spec.intrinsic_alpha().map(|q| crate::algebra::rat_to_f64(&q));
                if own.is_none_or(|x| (x - self).abs() > 1e-12 * x) {
                    return Err(wrong_alpha(spec, &self.to_string()));
                }
                Ok(rectangle_removal_measure(*i, *alpha)?.to_f64())
            }
            CharacterKind::Explicit(_) => measure_from_character_f64(spec, *self),
        }
    }

    fn eval(&self, f: &PolyFn, lambda: &Partition) -> Result<f64> {
        f.symbolic(lambda)?.substitute_f64(self.sqrt())
    }
}

fn wrong_alpha(spec: &CharacterSpec, alpha: &str) -> Error {
    let own = spec.intrinsic_alpha().map(|q| q.to_string()).unwrap_or_default();
    Error::InvalidArgument(format!("character is defined at α = {own}, not {alpha}"))
}

fn check_cap(n: usize) -> Result<()> {
    if n > ENUMERATION_CAP {
        return Err(Error::CapExceeded { what: "enumeration", requested: n, cap: ENUMERATION_CAP });
    }
    Ok(())
}

/// κ_ℓ(f_1, …, f_ℓ) under `m`, with moments by full enumeration.
pub fn classical_cumulant_at<P: AlphaPoint>(
    point: &P,
    m: &MeasureOnYn<P::W>,
    fs: &[PolyFn],
) -> Result<P::W> {
    check_cap(m.n())?;
    let support: Vec<(&Partition, &P::W)> = m.iter().collect();
    // values[λ][i] = f_i(λ)
    let values: Vec<Vec<P::W>> = support
        .par_iter()
        .map(|(lambda, _)| fs.iter().map(|f| point.eval(f, lambda)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    mobius_cumulant(fs.len(), |block| {
        let mut acc = P::W::zero();
        for ((_, w), vals) in support.iter().zip(&values) {
            let mut term = (*w).clone();
            for &i in block {
                term = term * vals[i].clone();
            }
            acc = acc + term;
        }
        Ok(acc)
    })
}

pub fn classical_cumulant(m: &MeasureOnYn<f64>, fs: &[PolyFn], alpha: f64) -> Result<f64> {
    classical_cumulant_at(&alpha, m, fs)
}

pub fn classical_cumulant_exact(m: &MeasureOnYn<Surd>, fs: &[PolyFn], alpha: &Rational) -> Result<Surd> {
    classical_cumulant_at(alpha, m, fs)
}

fn concat_block(pis: &[Partition], block: &[usize]) -> Partition {
    block.iter().fold(Partition::empty(), |acc, &i| acc.concat(&pis[i]))
}

/// k_ℓ(π_1, …, π_ℓ): cumulants of χ on the semigroup of partitions.
pub fn partition_cumulant_at<P: AlphaPoint>(
    point: &P,
    chi: &CharacterSpec,
    pis: &[Partition],
) -> Result<P::W> {
    let total: usize = pis.iter().map(Partition::size).sum();
    if total > chi.n() {
        return Err(Error::SizeMismatch(format!(
            "partitions with {total} boxes in total exceed n = {}",
            chi.n()
        )));
    }
    mobius_cumulant(pis.len(), |block| point.chi(chi, &concat_block(pis, block)))
}

pub fn partition_cumulant(chi: &CharacterSpec, pis: &[Partition], alpha: &Rational) -> Result<Surd> {
    partition_cumulant_at(alpha, chi, pis)
}

/// κ_•ℓ(Ch_{π_1}, …, Ch_{π_ℓ}): products are concatenations, with
/// E[Ch_π] = n^{falling |π|} χ(π).
pub fn disjoint_cumulant_at<P: AlphaPoint>(
    point: &P,
    chi: &CharacterSpec,
    pis: &[Partition],
) -> Result<P::W> {
    let n = chi.n();
    mobius_cumulant(pis.len(), |block| {
        let pi = concat_block(pis, block);
        if pi.size() > n {
            return Ok(P::W::zero());
        }
        let ff = Rational::from_integer(falling_factorial(n, pi.size()));
        Ok(point.chi(chi, &pi)?.scale(&ff))
    })
}

pub fn disjoint_cumulant(chi: &CharacterSpec, pis: &[Partition], alpha: &Rational) -> Result<Surd> {
    disjoint_cumulant_at(alpha, chi, pis)
}
