//! Sequences of characters χ_n indexed by n, with an α-rule.

use std::fmt;
use std::sync::Arc;

use num_traits::ToPrimitive;

use crate::algebra::{int, rat_to_f64, Rational};
use crate::error::{Error, Result};
use crate::measures::CharacterSpec;

/// α as a function of n.
#[derive(Clone, Debug, PartialEq)]
pub enum AlphaRule {
    Constant(Rational),
    /// A = √α solves −A + 1/A = g√n + g′, so γ/√n = g + g′/√n exactly.
    DoubleScaling { g: f64, gp: f64 },
}

/// α at a given n: exact when the rule is constant.
#[derive(Clone, Debug, PartialEq)]
pub enum AlphaValue {
    Exact(Rational),
    Numeric(f64),
}

impl AlphaValue {
    pub fn as_f64(&self) -> f64 {
        match self {
            AlphaValue::Exact(q) => rat_to_f64(q),
            AlphaValue::Numeric(x) => *x,
        }
    }
}

impl fmt::Display for AlphaValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlphaValue::Exact(q) => write!(f, "{q}"),
            AlphaValue::Numeric(x) => write!(f, "{x}"),
        }
    }
}

impl AlphaRule {
    pub fn at(&self, n: usize) -> AlphaValue {
        match self {
            AlphaRule::Constant(q) => AlphaValue::Exact(q.clone()),
            AlphaRule::DoubleScaling { .. } => AlphaValue::Numeric(self.alpha_f64(n)),
        }
    }

    pub fn alpha_f64(&self, n: usize) -> f64 {
        match self {
            AlphaRule::Constant(q) => rat_to_f64(q),
            AlphaRule::DoubleScaling { g, gp } => {
                let c = g * (n as f64).sqrt() + gp;
                // (−c + √(c²+4))/2 written to avoid cancellation for large c
                let a = if c > 0.0 { 2.0 / (c + (c * c + 4.0).sqrt()) } else { (-c + (c * c + 4.0).sqrt()) / 2.0 };
                a * a
            }
        }
    }

    /// m = 1 for a constant α (or g = 0), else 2.
    pub fn growth_exponent(&self) -> u32 {
        match self {
            AlphaRule::DoubleScaling { g, .. } if *g != 0.0 => 2,
            _ => 1,
        }
    }

    fn validate(&self) -> Result<()> {
        match self {
            AlphaRule::Constant(q) if *q <= int(0) => {
                Err(Error::InvalidArgument(format!("α must be positive, got {q}")))
            }
            AlphaRule::DoubleScaling { g, gp } if !g.is_finite() || !gp.is_finite() => {
                Err(Error::InvalidArgument("double-scaling parameters must be finite".into()))
            }
            _ => Ok(()),
        }
    }
}

pub type SpecGenerator = Arc<dyn Fn(usize) -> Result<CharacterSpec> + Send + Sync>;

#[derive(Clone)]
pub enum FamilyKind {
    Regular,
    /// n = α i²/2 for i = 1, 2, …
    RectangleRemoval { alpha: u32 },
    Explicit(SpecGenerator),
}

impl fmt::Debug for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyKind::Regular => write!(f, "Regular"),
            FamilyKind::RectangleRemoval { alpha } => write!(f, "RectangleRemoval {{ alpha: {alpha} }}"),
            FamilyKind::Explicit(_) => write!(f, "Explicit(..)"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CharacterFamily {
    kind: FamilyKind,
    alpha_rule: AlphaRule,
}

impl CharacterFamily {
    pub fn regular(alpha_rule: AlphaRule) -> Result<Self> {
        alpha_rule.validate()?;
        Ok(CharacterFamily { kind: FamilyKind::Regular, alpha_rule })
    }

    pub fn rectangle_removal(alpha: u32) -> Result<Self> {
        if alpha == 0 {
            return Err(Error::InvalidArgument("α must be positive".into()));
        }
        Ok(CharacterFamily {
            kind: FamilyKind::RectangleRemoval { alpha },
            alpha_rule: AlphaRule::Constant(int(alpha as i64)),
        })
    }

    pub fn explicit(generator: SpecGenerator, alpha_rule: AlphaRule) -> Result<Self> {
        alpha_rule.validate()?;
        Ok(CharacterFamily { kind: FamilyKind::Explicit(generator), alpha_rule })
    }

    pub fn kind(&self) -> &FamilyKind {
        &self.kind
    }

    pub fn alpha_rule(&self) -> &AlphaRule {
        &self.alpha_rule
    }

    pub fn alpha(&self, n: usize) -> AlphaValue {
        self.alpha_rule.at(n)
    }

    pub fn spec(&self, n: usize) -> Result<CharacterSpec> {
        match &self.kind {
            FamilyKind::Regular => Ok(CharacterSpec::regular(n)),
            FamilyKind::RectangleRemoval { alpha } => {
                let i = rectangle_side(n, *alpha).ok_or_else(|| {
                    Error::InvalidArgument(format!("n = {n} is not of the form {alpha}·i²/2"))
                })?;
                CharacterSpec::rectangle_removal(i, *alpha)
            }
            FamilyKind::Explicit(g) => {
                let spec = g(n)?;
                if spec.n() != n {
                    return Err(Error::SizeMismatch(format!(
                        "generator returned a character of size {} for n = {n}",
                        spec.n()
                    )));
                }
                Ok(spec)
            }
        }
    }
}

/// i with α i² = 2n.
pub fn rectangle_side(n: usize, alpha: u32) -> Option<u32> {
    let twice = 2 * n;
    if alpha == 0 || twice % alpha as usize != 0 {
        return None;
    }
    let sq = twice / alpha as usize;
    let i = (sq as f64).sqrt().round().to_u32()?;
    (i as usize * i as usize == sq && i > 0).then_some(i)
}
