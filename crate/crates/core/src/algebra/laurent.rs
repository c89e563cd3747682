//! Laurent polynomials in the indeterminate `A` with rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::scalar::{int, rat_to_f64, Field, Rational, Ring};
use super::surd::Surd;
use crate::error::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentA {
    coeffs: BTreeMap<i32, Rational>,
}

impl LaurentA {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(0, c)
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(int(c))
    }

    pub fn monomial(exp: i32, c: Rational) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(exp, c);
        }
        LaurentA { coeffs }
    }

    /// The indeterminate `A`.
    pub fn a() -> Self {
        Self::monomial(1, int(1))
    }

    /// `A^e` for any integer `e`.
    pub fn a_pow(e: i32) -> Self {
        Self::monomial(e, int(1))
    }

    /// `α = A²`.
    pub fn alpha() -> Self {
        Self::a_pow(2)
    }

    /// `γ = −A + 1/A`.
    pub fn gamma() -> Self {
        Self::monomial(1, int(-1)) + Self::monomial(-1, int(1))
    }

    /// Builds `Σ c_k α^k` from coefficients listed from low to high degree.
    pub fn from_alpha_poly(coeffs: &[Rational]) -> Self {
        let mut out = LaurentA::new();
        for (k, c) in coeffs.iter().enumerate() {
            out.add_term(2 * k as i32, c.clone());
        }
        out
    }

    pub fn coeff(&self, exp: i32) -> Rational {
        self.coeffs.get(&exp).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &Rational)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn min_exp(&self) -> Option<i32> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn add_term(&mut self, exp: i32, c: Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.coeffs.entry(exp).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&exp);
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return LaurentA::new();
        }
        LaurentA {
            coeffs: self.coeffs.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    /// Multiplies by `A^k`.
    pub fn shift(&self, k: i32) -> Self {
        LaurentA {
            coeffs: self.coeffs.iter().map(|(e, x)| (e + k, x.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        Ring::pow(self, e)
    }

    /// Generic evaluation given `A` and `1/A` in some ring.
    pub fn eval<R: Ring>(&self, a: &R, a_inv: &R) -> R {
        let mut acc = R::zero();
        for (e, c) in &self.coeffs {
            let base = if *e >= 0 {
                a.pow(*e as u32)
            } else {
                a_inv.pow(e.unsigned_abs())
            };
            acc = acc + base * R::from_rational(c);
        }
        acc
    }

    /// Evaluation at `A = a`, `a > 0`.
    pub fn substitute(&self, a: &Rational) -> Result<Rational> {
        if !a.is_positive() {
            return Err(Error::InvalidArgument(format!("A must be positive, got {a}")));
        }
        Ok(self.eval(a, &a.recip()))
    }

    pub fn substitute_f64(&self, a: f64) -> Result<f64> {
        if !(a > 0.0 && a.is_finite()) {
            return Err(Error::InvalidArgument(format!("A must be positive, got {a}")));
        }
        Ok(self.eval_f64(a))
    }

    pub(crate) fn eval_f64(&self, a: f64) -> f64 {
        self.coeffs
            .iter()
            .map(|(e, c)| rat_to_f64(c) * a.powi(*e))
            .sum()
    }

    /// Evaluation at `A = √α` for rational `α > 0`, exactly.
    pub fn at_alpha(&self, alpha: &Rational) -> Result<Surd> {
        if !alpha.is_positive() {
            return Err(Error::InvalidArgument(format!("α must be positive, got {alpha}")));
        }
        let a = Surd::sqrt(alpha);
        let a_inv = a.inv().expect("nonzero");
        Ok(self.eval(&a, &a_inv))
    }

    /// For an even Laurent polynomial, the value at the rational point `α`.
    pub fn even_at_alpha(&self, alpha: &Rational) -> Option<Rational> {
        if self.coeffs.keys().any(|e| e % 2 != 0) {
            return None;
        }
        let inv = alpha.recip();
        Some(self.coeffs.iter().fold(Rational::zero(), |acc, (e, c)| {
            let b = if *e >= 0 {
                num_traits::pow(alpha.clone(), (*e / 2) as usize)
            } else {
                num_traits::pow(inv.clone(), (-*e / 2) as usize)
            };
            acc + b * c
        }))
    }

    /// Splits `x` into the parts of even and odd `A`-degree.
    pub fn parity_parts(&self) -> (LaurentA, LaurentA) {
        let mut even = LaurentA::new();
        let mut odd = LaurentA::new();
        for (e, c) in &self.coeffs {
            if e % 2 == 0 {
                even.add_term(*e, c.clone());
            } else {
                odd.add_term(*e, c.clone());
            }
        }
        (even, odd)
    }

    pub fn to_json_map(&self) -> BTreeMap<String, String> {
        self.coeffs
            .iter()
            .map(|(e, c)| (e.to_string(), c.to_string()))
            .collect()
    }

    pub fn from_json_map<'a, I>(entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (&'a String, &'a String)>,
    {
        let mut out = LaurentA::new();
        for (k, v) in entries {
            let e: i32 = k
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad exponent {k:?}")))?;
            let c: Rational = v
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad rational {v:?}")))?;
            out.add_term(e, c);
        }
        Ok(out)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }
}

impl Serialize for LaurentA {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut m = s.serialize_map(Some(self.coeffs.len()))?;
        for (e, c) in &self.coeffs {
            m.serialize_entry(&e.to_string(), &c.to_string())?;
        }
        m.end()
    }
}

impl<'de> Deserialize<'de> for LaurentA {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw: BTreeMap<String, String> = BTreeMap::deserialize(d)?;
        LaurentA::from_json_map(raw.iter()).map_err(D::Error::custom)
    }
}

impl fmt::Display for LaurentA {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.coeffs.iter().rev() {
            let (neg, mag) = if c.is_negative() {
                (true, -c.clone())
            } else {
                (false, c.clone())
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let show_coeff = !mag.is_one() || *e == 0;
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match *e {
                0 => {}
                1 => write!(f, "{}A", if show_coeff { "*" } else { "" })?,
                _ => write!(f, "{}A^{e}", if show_coeff { "*" } else { "" })?,
            }
        }
        Ok(())
    }
}

impl AddAssign<&LaurentA> for LaurentA {
    fn add_assign(&mut self, rhs: &LaurentA) {
        for (e, c) in &rhs.coeffs {
            self.add_term(*e, c.clone());
        }
    }
}

impl Add<&LaurentA> for &LaurentA {
    type Output = LaurentA;
    fn add(self, rhs: &LaurentA) -> LaurentA {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentA {
    type Output = LaurentA;
    fn add(mut self, rhs: LaurentA) -> LaurentA {
        self += &rhs;
        self
    }
}

impl Neg for LaurentA {
    type Output = LaurentA;
    fn neg(self) -> LaurentA {
        LaurentA {
            coeffs: self.coeffs.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

impl Neg for &LaurentA {
    type Output = LaurentA;
    fn neg(self) -> LaurentA {
        -self.clone()
    }
}

impl Sub<&LaurentA> for &LaurentA {
    type Output = LaurentA;
    fn sub(self, rhs: &LaurentA) -> LaurentA {
        let mut out = self.clone();
        for (e, c) in &rhs.coeffs {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl Sub for LaurentA {
    type Output = LaurentA;
    fn sub(self, rhs: LaurentA) -> LaurentA {
        &self - &rhs
    }
}

impl Mul<&LaurentA> for &LaurentA {
    type Output = LaurentA;
    fn mul(self, rhs: &LaurentA) -> LaurentA {
        let mut out = LaurentA::new();
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &rhs.coeffs {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Mul for LaurentA {
    type Output = LaurentA;
    fn mul(self, rhs: LaurentA) -> LaurentA {
        &self * &rhs
    }
}

impl Zero for LaurentA {
    fn zero() -> Self {
        LaurentA::new()
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for LaurentA {
    fn one() -> Self {
        LaurentA::from_int(1)
    }
}

impl Ring for LaurentA {
    fn from_rational(q: &Rational) -> Self {
        LaurentA::constant(q.clone())
    }
}
