//! Exact arithmetic in Q(√d) for a fixed positive rational d.
//!
//! Values at a concrete rational α live here: A = √α is either rational
//! (α a perfect square) or a genuine quadratic surd.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::scalar::{rat_to_f64, Field, Rational, Ring};

/// `rat + irr·√d`. `radicand` is `None` only when `irr` is zero.
#[derive(Clone, Debug)]
pub struct Surd {
    rat: Rational,
    irr: Rational,
    radicand: Option<Arc<Rational>>,
}

fn exact_sqrt_int(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Square root of a nonnegative rational when it is rational.
pub fn exact_sqrt(q: &Rational) -> Option<Rational> {
    let n = exact_sqrt_int(q.numer())?;
    let d = exact_sqrt_int(q.denom())?;
    Some(Rational::new(n, d))
}

impl Surd {
    pub fn rational(q: Rational) -> Self {
        Surd {
            rat: q,
            irr: Rational::zero(),
            radicand: None,
        }
    }

    /// `√d` for `d > 0`.
    pub fn sqrt(d: &Rational) -> Self {
        assert!(d.is_positive(), "square root of a nonpositive rational");
        match exact_sqrt(d) {
            Some(r) => Surd::rational(r),
            None => Surd {
                rat: Rational::zero(),
                irr: Rational::from_integer(1.into()),
                radicand: Some(Arc::new(d.clone())),
            },
        }
    }

    pub fn rational_part(&self) -> &Rational {
        &self.rat
    }

    pub fn irrational_part(&self) -> &Rational {
        &self.irr
    }

    pub fn radicand(&self) -> Option<&Rational> {
        self.radicand.as_deref()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.irr.is_zero().then_some(&self.rat)
    }

    fn normalized(mut self) -> Self {
        if self.irr.is_zero() {
            self.radicand = None;
        }
        self
    }

    fn common_radicand(&self, other: &Surd) -> Option<Arc<Rational>> {
        match (&self.radicand, &other.radicand) {
            (Some(a), Some(b)) => {
                debug_assert!(a == b, "mixing different quadratic fields");
                Some(a.clone())
            }
            (Some(a), None) | (None, Some(a)) => Some(a.clone()),
            (None, None) => None,
        }
    }

    /// Exact sign: -1, 0 or 1.
    pub fn signum(&self) -> i32 {
        let Some(d) = &self.radicand else {
            return sign_of(&self.rat);
        };
        let sa = sign_of(&self.rat);
        let sb = sign_of(&self.irr);
        if sa == 0 {
            return sb;
        }
        if sb == 0 || sa == sb {
            return sa;
        }
        // opposite signs: compare a² with b²·d
        let a2 = &self.rat * &self.rat;
        let b2d = &self.irr * &self.irr * d.as_ref();
        match a2.cmp(&b2d) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => 0,
        }
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    /// Conjugate `rat − irr·√d`.
    pub fn conj(&self) -> Self {
        Surd {
            rat: self.rat.clone(),
            irr: -self.irr.clone(),
            radicand: self.radicand.clone(),
        }
    }

    /// Field norm `rat² − irr²·d`.
    pub fn norm(&self) -> Rational {
        match &self.radicand {
            Some(d) => &self.rat * &self.rat - &self.irr * &self.irr * d.as_ref(),
            None => &self.rat * &self.rat,
        }
    }
}

fn sign_of(q: &Rational) -> i32 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

impl PartialEq for Surd {
    fn eq(&self, other: &Self) -> bool {
        self.rat == other.rat && self.irr == other.irr
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.radicand {
            None => write!(f, "{}", self.rat),
            Some(d) => write!(f, "{} + {}*sqrt({})", self.rat, self.irr, d),
        }
    }
}

impl Add for Surd {
    type Output = Surd;
    fn add(self, rhs: Surd) -> Surd {
        let radicand = self.common_radicand(&rhs);
        Surd {
            rat: self.rat + rhs.rat,
            irr: self.irr + rhs.irr,
            radicand,
        }
        .normalized()
    }
}

impl Sub for Surd {
    type Output = Surd;
    fn sub(self, rhs: Surd) -> Surd {
        self + (-rhs)
    }
}

impl Neg for Surd {
    type Output = Surd;
    fn neg(self) -> Surd {
        Surd {
            rat: -self.rat,
            irr: -self.irr,
            radicand: self.radicand,
        }
    }
}

impl Mul for Surd {
    type Output = Surd;
    fn mul(self, rhs: Surd) -> Surd {
        let radicand = self.common_radicand(&rhs);
        let cross = match &radicand {
            Some(d) => &self.irr * &rhs.irr * d.as_ref(),
            None => Rational::zero(),
        };
        Surd {
            rat: &self.rat * &rhs.rat + cross,
            irr: &self.rat * &rhs.irr + &self.irr * &rhs.rat,
            radicand,
        }
        .normalized()
    }
}

impl Div for Surd {
    type Output = Surd;
    fn div(self, rhs: Surd) -> Surd {
        self * rhs.inv().expect("division by zero")
    }
}

impl Zero for Surd {
    fn zero() -> Self {
        Surd::rational(Rational::zero())
    }
    fn is_zero(&self) -> bool {
        self.rat.is_zero() && self.irr.is_zero()
    }
}

impl One for Surd {
    fn one() -> Self {
        Surd::rational(Rational::one())
    }
}

impl Ring for Surd {
    fn from_rational(q: &Rational) -> Self {
        Surd::rational(q.clone())
    }
}

impl Field for Surd {
    fn inv(&self) -> Option<Self> {
        let n = self.norm();
        if n.is_zero() {
            return None;
        }
        let c = self.conj();
        Some(
            Surd {
                rat: c.rat / &n,
                irr: c.irr / &n,
                radicand: c.radicand,
            }
            .normalized(),
        )
    }
    fn as_f64(&self) -> f64 {
        match &self.radicand {
            None => rat_to_f64(&self.rat),
            Some(d) => rat_to_f64(&self.rat) + rat_to_f64(&self.irr) * rat_to_f64(d).sqrt(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::{int, rat};

    #[test]
    fn perfect_squares_collapse() {
        let a = Surd::sqrt(&rat(9, 4));
        assert_eq!(a.as_rational(), Some(&rat(3, 2)));
    }

    #[test]
    fn sqrt_two_squared() {
        let a = Surd::sqrt(&int(2));
        let sq = a.clone() * a.clone();
        assert_eq!(sq.as_rational(), Some(&int(2)));
        let inv = a.inv().unwrap();
        assert_eq!((inv * a).as_rational(), Some(&int(1)));
    }

    #[test]
    fn exact_sign() {
        let a = Surd::sqrt(&int(2));
        // 1.5 - sqrt(2) > 0, 1.4 - sqrt(2) < 0
        let x = Surd::rational(rat(3, 2)) - a.clone();
        let y = Surd::rational(rat(7, 5)) - a;
        assert_eq!(x.signum(), 1);
        assert_eq!(y.signum(), -1);
    }
}
