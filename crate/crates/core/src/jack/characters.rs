//! Irreducible and normalized Jack characters.

use num_traits::{One, Zero};

use super::table::{ThetaAt, ThetaTable};
use crate::algebra::{factorial, falling_factorial, Field, LaurentA, Rational, Ring, Surd};
use crate::error::{Error, Result};
use crate::partitions::Partition;

fn check_sizes(lambda: &Partition, pi: &Partition) -> Result<()> {
    if lambda.size() != pi.size() {
        return Err(Error::SizeMismatch(format!(
            "character needs |λ| = |π|, got {lambda} and {pi}"
        )));
    }
    Ok(())
}

/// z_π / n!
fn prefactor(pi: &Partition) -> Rational {
    Rational::new(pi.z_factor(), factorial(pi.size()))
}

/// χ_λ(π) = A^{−‖π‖} (z_π/n!) θ_π(λ), symbolic in `A`.
pub fn irr_character(lambda: &Partition, pi: &Partition) -> Result<LaurentA> {
    check_sizes(lambda, pi)?;
    let t = ThetaTable::symbolic(lambda.size())?;
    Ok(irr_character_in(&t, lambda, pi)?)
}

pub fn irr_character_in(t: &ThetaTable, lambda: &Partition, pi: &Partition) -> Result<LaurentA> {
    Ok(t
        .theta(lambda, pi)?
        .shift(-(pi.length_stat() as i32))
        .scale(&prefactor(pi)))
}

/// `A^{-k}` for `A = √α`.
pub(crate) fn a_pow_neg(alpha: &Rational, k: usize) -> Surd {
    let a = Surd::sqrt(alpha);
    a.inv().expect("α > 0").pow(k as u32)
}

/// χ_λ(π) at a rational α, exactly in Q(√α).
pub fn irr_character_at(lambda: &Partition, pi: &Partition, alpha: &Rational) -> Result<Surd> {
    check_sizes(lambda, pi)?;
    let t = ThetaAt::cached(lambda.size(), alpha)?;
    irr_character_in_at(&t, lambda, pi)
}

pub fn irr_character_in_at(t: &ThetaAt, lambda: &Partition, pi: &Partition) -> Result<Surd> {
    let th = t.theta(lambda, pi)?;
    Ok(a_pow_neg(&t.alpha, pi.length_stat()) * Surd::rational(th * prefactor(pi)))
}

/// χ_λ(π) at a real α > 0, through the symbolic table.
pub fn irr_character_f64(lambda: &Partition, pi: &Partition, alpha: f64) -> Result<f64> {
    irr_character(lambda, pi)?.substitute_f64(alpha.sqrt())
}

/// Ch_π(λ) = n^{falling |π|} χ_λ(π ∪ 1^{n−|π|}) for n = |λ| ≥ |π|, else 0.
pub fn normalized_character(pi: &Partition, lambda: &Partition) -> Result<LaurentA> {
    let n = lambda.size();
    if pi.is_empty() {
        return Ok(LaurentA::one());
    }
    let Some(padded) = pi.pad_ones(n) else {
        return Ok(LaurentA::zero());
    };
    let c = irr_character(lambda, &padded)?;
    Ok(c.scale(&Rational::from_integer(falling_factorial(n, pi.size()))))
}

pub fn normalized_character_at(pi: &Partition, lambda: &Partition, alpha: &Rational) -> Result<Surd> {
    let n = lambda.size();
    if pi.is_empty() {
        return Ok(Surd::one());
    }
    let Some(padded) = pi.pad_ones(n) else {
        return Ok(Surd::zero());
    };
    let c = irr_character_at(lambda, &padded, alpha)?;
    Ok(c * Surd::rational(Rational::from_integer(falling_factorial(n, pi.size()))))
}
