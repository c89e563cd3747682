//! Reducible characters and the measures they define.

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use num_traits::{One, Zero};

use crate::algebra::{falling_factorial, int, linalg, Field, Rational, Ring, Surd};
use crate::jack::ThetaTable;
use crate::error::{Error, Result};
use crate::jack::{ThetaAt, DEFAULT_SYMBOLIC_CAP};
use crate::kerov::{eval_at_partition, kerov_expansion_oracle, ORACLE_CAP};
use crate::partitions::{enumerate_partitions, Partition};

use super::kernels::down_transitions_at;
use super::measure::MeasureOnYn;

#[derive(Clone, Debug)]
pub enum CharacterKind {
    /// χ(1^n) = 1, zero elsewhere.
    Regular,
    /// Law of the diagram left after removing half of the boxes of the
    /// rectangle with `alpha·i` rows of length `i`.
    RectangleRemoval { i: u32, alpha: u32 },
    /// Values on all partitions of n.
    Explicit(BTreeMap<Partition, Rational>),
}

#[derive(Clone, Debug)]
pub struct CharacterSpec {
    n: usize,
    kind: CharacterKind,
    rectangle: Arc<OnceLock<MeasureOnYn<Rational>>>,
}

impl CharacterSpec {
    pub fn regular(n: usize) -> Self {
        CharacterSpec { n, kind: CharacterKind::Regular, rectangle: Default::default() }
    }

    pub fn rectangle_removal(i: u32, alpha: u32) -> Result<Self> {
        let n = rectangle_half_size(i, alpha)?;
        Ok(CharacterSpec {
            n,
            kind: CharacterKind::RectangleRemoval { i, alpha },
            rectangle: Default::default(),
        })
    }

    /// Requires a value for every partition of n and χ(1^n) = 1.
    pub fn explicit(n: usize, table: BTreeMap<Partition, Rational>) -> Result<Self> {
        for p in enumerate_partitions(n) {
            if !table.contains_key(&p) {
                return Err(Error::InvalidArgument(format!("no value for {p}")));
            }
        }
        if let Some(p) = table.keys().find(|p| p.size() != n) {
            return Err(Error::SizeMismatch(format!("{p} is not a partition of {n}")));
        }
        if table[&Partition::column(n as u32)] != Rational::one() {
            return Err(Error::InvalidArgument("χ(1^n) must equal 1".into()));
        }
        Ok(CharacterSpec { n, kind: CharacterKind::Explicit(table), rectangle: Default::default() })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> &CharacterKind {
        &self.kind
    }

    /// The α a rectangle-removal character is tied to.
    pub fn intrinsic_alpha(&self) -> Option<Rational> {
        match self.kind {
            CharacterKind::RectangleRemoval { alpha, .. } => Some(int(alpha as i64)),
            _ => None,
        }
    }

    fn rectangle_measure(&self) -> Result<&MeasureOnYn<Rational>> {
        let CharacterKind::RectangleRemoval { i, alpha } = self.kind else {
            unreachable!("only called for rectangle removal")
        };
        if let Some(m) = self.rectangle.get() {
            return Ok(m);
        }
        let m = rectangle_removal_measure(i, alpha)?;
        Ok(self.rectangle.get_or_init(|| m))
    }

    /// χ(π) for |π| ≤ n, with π padded by ones.
    pub fn value(&self, pi: &Partition, alpha: &Rational) -> Result<Surd> {
        let padded = pi.pad_ones(self.n).ok_or_else(|| {
            Error::SizeMismatch(format!("{pi} has more than {} boxes", self.n))
        })?;
        if padded.parts().iter().all(|&p| p == 1) {
            return Ok(Surd::one());
        }
        match &self.kind {
            CharacterKind::Regular => Ok(Surd::zero()),
            CharacterKind::Explicit(t) => Ok(Surd::rational(t[&padded].clone())),
            CharacterKind::RectangleRemoval { .. } => {
                let own = self.intrinsic_alpha().unwrap();
                if *alpha != own {
                    return Err(Error::InvalidArgument(format!(
                        "rectangle-removal character is defined at α = {own}, not {alpha}"
                    )));
                }
                self.rectangle_value(&padded, alpha)
            }
        }
    }

    /// χ(π) at a real α. Regular and explicit characters do not depend on
    /// α; a rectangle-removal character only exists at its own α.
    pub fn value_f64(&self, pi: &Partition, alpha: f64) -> Result<f64> {
        let at = match self.intrinsic_alpha() {
            Some(own) => {
                let x = crate::algebra::rat_to_f64(&own);
                if (x - alpha).abs() > 1e-12 * x {
                    return Err(Error::InvalidArgument(format!(
                        "rectangle-removal character is defined at α = {own}, not {alpha}"
                    )));
                }
                own
            }
            None => Rational::one(),
        };
        Ok(self.value(pi, &at)?.as_f64())
    }

    fn rectangle_value(&self, padded: &Partition, alpha: &Rational) -> Result<Surd> {
        let m = self.rectangle_measure()?;
        if self.n <= DEFAULT_SYMBOLIC_CAP {
            let t = ThetaAt::cached(self.n, alpha)?;
            return m.to_surd().expectation(|lambda| {
                crate::jack::irr_character_in_at(&t, lambda, padded)
            });
        }
        // χ(l, 1^{n−l}) = E[Ch_l] / n^{falling l} through the Kerov expansion
        let nontrivial: Vec<u32> = padded.parts().iter().copied().filter(|&p| p > 1).collect();
        if nontrivial.len() != 1 || nontrivial[0] as usize > ORACLE_CAP {
            return Err(Error::CapExceeded {
                what: "character table size",
                requested: self.n,
                cap: DEFAULT_SYMBOLIC_CAP,
            });
        }
        let l = nontrivial[0] as usize;
        let poly = kerov_expansion_oracle(l)?;
        let mean = m.to_surd().expectation(|lambda| eval_at_partition(&poly, lambda)?.at_alpha(alpha))?;
        let norm = Rational::from_integer(falling_factorial(self.n, l));
        Ok(mean.scale(&(Rational::one() / norm)))
    }
}

/// n = α i² / 2 boxes remain after the removal.
pub fn rectangle_half_size(i: u32, alpha: u32) -> Result<usize> {
    if i == 0 || alpha == 0 {
        return Err(Error::InvalidArgument("i and α must be positive".into()));
    }
    let full = alpha as usize * (i as usize).pow(2);
    if full % 2 != 0 {
        return Err(Error::InvalidArgument(format!("α i² = {full} is odd")));
    }
    Ok(full / 2)
}

/// The rectangle with α·i rows of length i.
pub fn removal_start(i: u32, alpha: u32) -> Partition {
    Partition::rectangle(alpha * i, i)
}

/// Exact law after removing half of the boxes of the rectangle.
pub fn rectangle_removal_measure(i: u32, alpha: u32) -> Result<MeasureOnYn<Rational>> {
    let n = rectangle_half_size(i, alpha)?;
    let a = int(alpha as i64);
    let start = removal_start(i, alpha);
    let mut dist: BTreeMap<Partition, Rational> = BTreeMap::from([(start, Rational::one())]);
    for _ in 0..n {
        let mut next: BTreeMap<Partition, Rational> = BTreeMap::new();
        for (big, w) in &dist {
            for (small, q) in down_transitions_at(big, &a) {
                *next.entry(small).or_insert_with(Rational::zero) += w * q;
            }
        }
        dist = next;
    }
    MeasureOnYn::from_weights(n, dist)
}

/// Coefficients of χ in the irreducible characters χ_λ, solved from
/// χ(π) = Σ_λ c_λ χ_λ(π) over all π ⊢ n.
pub fn character_coefficients(chi: &CharacterSpec, alpha: &Rational) -> Result<Vec<(Partition, Surd)>> {
    let n = chi.n();
    if n > DEFAULT_SYMBOLIC_CAP {
        return Err(Error::CapExceeded { what: "character table size", requested: n, cap: DEFAULT_SYMBOLIC_CAP });
    }
    let t = ThetaAt::cached(n, alpha)?;
    let size = t.parts.len();
    // Σ_λ c_λ θ_π(λ) = χ(π) A^{‖π‖} n!/z_π
    let a = Surd::sqrt(alpha);
    let nfact = crate::algebra::factorial(n);
    let rhs = t
        .parts
        .iter()
        .map(|pi| {
            let scale = Rational::new(nfact.clone(), pi.z_factor());
            Ok(chi.value(pi, alpha)? * a.pow(pi.length_stat() as u32).scale(&scale))
        })
        .collect::<Result<Vec<Surd>>>()?;
    let m: Vec<Vec<Surd>> = (0..size)
        .map(|p| (0..size).map(|l| Surd::rational(t.theta_by_index(l, p).clone())).collect())
        .collect();
    let sol = linalg::solve(m, rhs).map_err(|e| match e {
        Error::SingularSystem(s) => Error::SingularSystem(format!("θ matrix for n = {n}: {s}")),
        other => other,
    })?;
    Ok(t.parts.iter().cloned().zip(sol).collect())
}

/// ℙ_χ; fails with `NonReducible` on a negative coefficient.
pub fn measure_from_character(chi: &CharacterSpec, alpha: &Rational) -> Result<MeasureOnYn<Surd>> {
    let coeffs = character_coefficients(chi, alpha)?;
    if let Some((p, w)) = coeffs.iter().find(|(_, w)| w.signum() < 0) {
        return Err(Error::NonReducible { partition: p.clone(), weight: w.to_string() });
    }
    MeasureOnYn::from_weights(chi.n(), coeffs)
}

/// ℙ_χ at a real α through the symbolic θ table; weights below −1e−9 are
/// reported as `NonReducible`.
pub fn measure_from_character_f64(chi: &CharacterSpec, alpha: f64) -> Result<MeasureOnYn<f64>> {
    let n = chi.n();
    if n > DEFAULT_SYMBOLIC_CAP {
        return Err(Error::CapExceeded { what: "character table size", requested: n, cap: DEFAULT_SYMBOLIC_CAP });
    }
    if !(alpha > 0.0) {
        return Err(Error::InvalidArgument(format!("α must be positive, got {alpha}")));
    }
    let t = ThetaTable::symbolic(n)?;
    let a = alpha.sqrt();
    let nfact = crate::algebra::factorial(n);
    let size = t.parts.len();
    let rhs = t
        .parts
        .iter()
        .map(|pi| {
            let scale = crate::algebra::rat_to_f64(&Rational::new(nfact.clone(), pi.z_factor()));
            Ok(chi.value_f64(pi, alpha)? * a.powi(pi.length_stat() as i32) * scale)
        })
        .collect::<Result<Vec<f64>>>()?;
    let m: Vec<Vec<f64>> = (0..size)
        .map(|p| {
            (0..size)
                .map(|l| t.theta_by_index(l, p).substitute_f64(a))
                .collect::<Result<Vec<f64>>>()
        })
        .collect::<Result<_>>()?;
    let sol = linalg::solve(m, rhs)?;
    if let Some((p, w)) = t.parts.iter().zip(&sol).find(|(_, w)| **w < -1e-9) {
        return Err(Error::NonReducible { partition: p.clone(), weight: w.to_string() });
    }
    MeasureOnYn::from_weights(n, t.parts.iter().cloned().zip(sol.into_iter().map(|w| w.max(0.0))))
}
