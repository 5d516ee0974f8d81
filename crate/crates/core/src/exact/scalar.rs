//! Exact scalars.
//!
//! [`Rational`] is the ground field for everything in the crate. [`Dual`]
//! adjoins a nilpotent `ε` (`ε² = 0`) to a scalar so that forward-mode
//! derivatives can be pushed through exact solves; it is a local ring, so
//! only elements with a non-zero real part are invertible.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Rational = BigRational;

/// Shorthand for the integer `n` as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for `p/q`. Panics if `q == 0`.
pub fn frac(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Coefficient ring for matrices, polynomials and linear solves.
///
/// `try_inv` returns `None` for non-units; pivoting code only ever divides
/// by units, which makes Gaussian elimination valid over [`Dual`] as well.
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn from_rational(r: Rational) -> Self;
    fn try_inv(&self) -> Option<Self>;

    fn is_unit(&self) -> bool {
        self.try_inv().is_some()
    }

    fn from_int(n: i64) -> Self {
        Self::from_rational(int(n))
    }
}

impl Scalar for Rational {
    fn from_rational(r: Rational) -> Self {
        r
    }

    fn try_inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }
}

/// `re + eps·ε` with `ε² = 0`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Dual<S = Rational> {
    pub re: S,
    pub eps: S,
}

impl<S: Scalar> Dual<S> {
    pub fn new(re: S, eps: S) -> Self {
        Dual { re, eps }
    }

    pub fn constant(re: S) -> Self {
        Dual { re, eps: S::zero() }
    }
}

impl<S: Scalar> fmt::Display for Dual<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}ε", self.re, self.eps)
    }
}

impl<S: Scalar> Add for Dual<S> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Dual::new(self.re + rhs.re, self.eps + rhs.eps)
    }
}

impl<S: Scalar> Sub for Dual<S> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Dual::new(self.re - rhs.re, self.eps - rhs.eps)
    }
}

impl<S: Scalar> Mul for Dual<S> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let eps = self.re.clone() * rhs.eps + self.eps * rhs.re.clone();
        Dual::new(self.re * rhs.re, eps)
    }
}

impl<S: Scalar> Neg for Dual<S> {
    type Output = Self;
    fn neg(self) -> Self {
        Dual::new(-self.re, -self.eps)
    }
}

impl<S: Scalar> Zero for Dual<S> {
    fn zero() -> Self {
        Dual::new(S::zero(), S::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.eps.is_zero()
    }
}

impl<S: Scalar> One for Dual<S> {
    fn one() -> Self {
        Dual::new(S::one(), S::zero())
    }
}

impl<S: Scalar> Scalar for Dual<S> {
    fn from_rational(r: Rational) -> Self {
        Dual::constant(S::from_rational(r))
    }

    // (a + bε)⁻¹ = a⁻¹ − b a⁻² ε
    fn try_inv(&self) -> Option<Self> {
        let inv = self.re.try_inv()?;
        let eps = -(self.eps.clone() * inv.clone() * inv.clone());
        Some(Dual::new(inv, eps))
    }
}

/// Renders a rational as `p/q`, or `p` when the denominator is one.
pub fn rational_to_string(r: &Rational) -> String {
    r.to_string()
}

/// Parses `p/q`, `p`, or `-p/q`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = num.parse().ok()?;
    let d: BigInt = den.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(Rational::new(n, d))
}

/// Serializes rationals as `"p/q"` strings.
pub fn ser_rationals<Z: serde::Serializer>(v: &[Rational], s: Z) -> Result<Z::Ok, Z::Error> {
    use serde::Serialize;
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().serialize(s)
}

/// Serializes a grid of rationals as nested arrays of `"p/q"` strings.
pub fn ser_rational_rows<Z: serde::Serializer>(v: &[Vec<Rational>], s: Z) -> Result<Z::Ok, Z::Error> {
    use serde::Serialize;
    v.iter()
        .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>())
        .collect::<Vec<_>>()
        .serialize(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_strings_round_trip() {
        for s in ["-3/4", "2", "0", "17/5"] {
            let r = parse_rational(s).unwrap();
            assert_eq!(rational_to_string(&r), s);
        }
        assert_eq!(parse_rational("6/8").unwrap(), frac(3, 4));
        assert!(parse_rational("1/0").is_none());
        assert!(parse_rational("x").is_none());
    }

    #[test]
    fn dual_arithmetic_is_forward_derivative() {
        // f(t) = t³ − 2t at t = 3: f = 21, f' = 25
        let t = Dual::new(int(3), int(1));
        let f = t.clone() * t.clone() * t.clone() - Dual::from_int(2) * t;
        assert_eq!(f, Dual::new(int(21), int(25)));
    }

    #[test]
    fn dual_units() {
        let x = Dual::new(int(2), int(5));
        let inv = x.try_inv().unwrap();
        assert_eq!(x * inv, Dual::one());
        assert!(Dual::new(int(0), int(1)).try_inv().is_none());
    }
}
