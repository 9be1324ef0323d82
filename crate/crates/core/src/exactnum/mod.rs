//! Exact arithmetic substrate.
//!
//! Everything symbolic in the crate is carried over exact rationals:
//! [`LaurentPoly`] holds polynomials and intermediate operator outputs
//! (negative exponents allowed), and [`RatFunc`] holds operator coefficients
//! in canonical gcd-reduced form with a monic denominator.

mod laurent;
mod ratfunc;

pub use laurent::LaurentPoly;
pub use ratfunc::RatFunc;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision exact rational; the ground field for all symbolic work.
pub type Rational = num_rational::BigRational;

/// Shorthand constructor `n/d`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p/q"`, `"-p/q"` or an integer.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let err = || Error::ParseRational(s.to_string());
    let t = s.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| err())?;
    let den: BigInt = den.parse().map_err(|_| err())?;
    if den.is_zero() {
        return Err(err());
    }
    Ok(Rational::new(num, den))
}

/// Canonical lossless text form: `p/q`, or `p` when the denominator is 1.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Fallback for values whose parts overflow f64 individually.
        let n = r.numer().to_string();
        let d = r.denom().to_string();
        let lead = |s: &str| -> (f64, i32) {
            let neg = s.starts_with('-');
            let digits = s.trim_start_matches('-');
            let take = digits.len().min(17);
            let m: f64 = digits[..take].parse().unwrap_or(0.0);
            let e = (digits.len() - take) as i32;
            (if neg { -m } else { m }, e)
        };
        let (nm, ne) = lead(&n);
        let (dm, de) = lead(&d);
        nm / dm * 10f64.powi(ne - de)
    })
}

/// Rising factorial `(a)_k = a (a+1) ... (a+k-1)`, `(a)_0 = 1`.
pub fn pochhammer(a: &Rational, k: usize) -> Rational {
    let mut acc = Rational::one();
    let mut term = a.clone();
    for _ in 0..k {
        acc *= &term;
        term += Rational::one();
    }
    acc
}

pub fn factorial(k: usize) -> Rational {
    pochhammer(&Rational::one(), k)
}

/// `r^n` for a possibly negative integer exponent.
pub fn powi(r: &Rational, n: i64) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..n.unsigned_abs() {
        acc *= r;
    }
    if n < 0 {
        acc.recip()
    } else {
        acc
    }
}

pub fn sign_pow(n: usize) -> Rational {
    if n % 2 == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// Exact square root when `r` is the square of a rational.
pub fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer();
    let d = r.denom();
    let sn = n.sqrt();
    let sd = d.sqrt();
    if &(&sn * &sn) == n && &(&sd * &sd) == d {
        Some(Rational::new(sn, sd))
    } else {
        None
    }
}

/// Orientation part of an affine substitution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_rational(self) -> Rational {
        match self {
            Sign::Plus => Rational::one(),
            Sign::Minus => -Rational::one(),
        }
    }

    pub fn compose(self, other: Sign) -> Sign {
        if self == other {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    /// `sign^k`
    pub fn pow(self, k: u32) -> Sign {
        if self == Sign::Minus && k % 2 == 1 {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }
}

/// The substitution `x -> eps * x + delta` with `eps = ±1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AffineMap {
    pub eps: Sign,
    pub delta: Rational,
}

impl AffineMap {
    pub fn identity() -> Self {
        AffineMap {
            eps: Sign::Plus,
            delta: Rational::zero(),
        }
    }

    /// `R f(x) = f(-x)`
    pub fn reflection() -> Self {
        AffineMap {
            eps: Sign::Minus,
            delta: Rational::zero(),
        }
    }

    /// `T^± f(x) = f(x ± 1)` for `shift = ±1`.
    pub fn shift(shift: Rational) -> Self {
        AffineMap {
            eps: Sign::Plus,
            delta: shift,
        }
    }

    pub fn new(eps: Sign, delta: Rational) -> Self {
        AffineMap { eps, delta }
    }

    pub fn is_identity(&self) -> bool {
        self.eps == Sign::Plus && self.delta.is_zero()
    }

    /// `self ∘ inner`: first apply `inner`'s substitution to the function, then `self`'s.
    ///
    /// With `(A f)(x) = f(A x)`, `(A_outer (A_inner f))(x) = f(A_inner(A_outer x))`.
    pub fn then_substitute(&self, inner: &AffineMap) -> AffineMap {
        // A_inner(A_outer x) = e_i (e_o x + d_o) + d_i
        let eps = self.eps.compose(inner.eps);
        let delta = inner.eps.as_rational() * &self.delta + &inner.delta;
        AffineMap { eps, delta }
    }

    pub fn apply_to(&self, x: &Rational) -> Rational {
        self.eps.as_rational() * x + &self.delta
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("3/6").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("-4").unwrap(), int(-4));
        assert_eq!(parse_rational(" 7 / -14 ").unwrap(), rat(-1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("a/b").is_err());
        assert_eq!(format_rational(&rat(-2, 4)), "-1/2");
        assert_eq!(format_rational(&int(5)), "5");
    }

    #[test]
    fn pochhammer_values() {
        assert_eq!(pochhammer(&int(3), 0), int(1));
        assert_eq!(pochhammer(&int(3), 3), int(60));
        assert_eq!(pochhammer(&int(-2), 3), int(0));
        assert_eq!(pochhammer(&rat(1, 2), 2), rat(3, 4));
    }

    #[test]
    fn sqrt_of_squares() {
        assert_eq!(rational_sqrt(&rat(16, 25)), Some(rat(4, 5)));
        assert_eq!(rational_sqrt(&rat(1, 2)), None);
        assert_eq!(rational_sqrt(&rat(-1, 4)), None);
    }

    #[test]
    fn affine_composition_matches_sequential_substitution() {
        // T+R f(x) = f(-x - 1)
        let t_plus = AffineMap::shift(int(1));
        let r = AffineMap::reflection();
        let composed = t_plus.then_substitute(&r);
        assert_eq!(composed, AffineMap::new(Sign::Minus, int(-1)));
    }

    #[test]
    fn to_f64_huge_parts() {
        let big = Rational::new(BigInt::from(10).pow(400) * 3, BigInt::from(10).pow(400));
        assert!((to_f64(&big) - 3.0).abs() < 1e-12);
    }
}
