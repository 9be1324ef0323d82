use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{AffineMap, LaurentPoly, Rational};
use crate::error::{Error, Result};

/// Rational function `num / den` in canonical form.
///
/// Invariants: both parts are polynomials (no negative exponents), `den` is monic,
/// `gcd(num, den) = 1`, and zero is `0 / 1`. Equality of canonical forms is
/// equality of functions.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RatFunc {
    /// Reduces `num / den` to canonical form. Laurent inputs are cleared of
    /// negative exponents first.
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let shift = [num.min_exponent(), den.min_exponent()]
            .into_iter()
            .flatten()
            .map(|e| -e)
            .max()
            .unwrap_or(0)
            .max(0);
        let (num, den) = if shift > 0 {
            (num.shift_exponents(shift), den.shift_exponents(shift))
        } else {
            (num, den)
        };
        // Strip common powers of x before the general gcd.
        let common_x = num.min_exponent().unwrap().min(den.min_exponent().unwrap());
        let (num, den) = if common_x > 0 {
            (num.shift_exponents(-common_x), den.shift_exponents(-common_x))
        } else {
            (num, den)
        };
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.degree() == Some(0) {
            (num, den)
        } else {
            (num.exact_div(&g).unwrap(), den.exact_div(&g).unwrap())
        };
        let lead = den.leading_coeff().unwrap().clone();
        if !lead.is_one() {
            let inv = lead.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        Ok(RatFunc { num, den })
    }

    pub fn zero() -> Self {
        RatFunc {
            num: LaurentPoly::zero(),
            den: LaurentPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        RatFunc {
            num: LaurentPoly::constant(c),
            den: LaurentPoly::one(),
        }
    }

    /// `x`
    pub fn x() -> Self {
        Self::from_laurent(&LaurentPoly::x())
    }

    pub fn from_laurent(p: &LaurentPoly) -> Self {
        if p.is_polynomial() {
            return RatFunc {
                num: p.clone(),
                den: LaurentPoly::one(),
            };
        }
        Self::new(p.clone(), LaurentPoly::one()).expect("nonzero denominator")
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The numerator when the reduced denominator is 1, else `NotPolynomial`.
    pub fn to_polynomial(&self) -> Result<LaurentPoly> {
        if self.den.degree() == Some(0) {
            Ok(self.num.clone())
        } else {
            Err(Error::NotPolynomial(format!("({}) / ({})", self.num, self.den)))
        }
    }

    /// The Laurent form when the denominator is a pure power of `x`.
    pub fn to_laurent(&self) -> Option<LaurentPoly> {
        let d = self.den.degree()?;
        (self.den.terms().count() == 1).then(|| self.num.shift_exponents(-d))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn mul_laurent(&self, p: &LaurentPoly) -> Self {
        Self::new(&self.num * p, self.den.clone()).expect("nonzero denominator")
    }

    pub fn recip(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn derivative(&self) -> Self {
        let num = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        Self::new(num, &self.den * &self.den).expect("nonzero denominator")
    }

    /// `r(eps x + delta)`
    pub fn substitute_affine(&self, map: &AffineMap) -> Self {
        Self::new(self.num.compose_affine(map), self.den.compose_affine(map))
            .expect("affine substitution keeps the denominator nonzero")
    }

    pub fn eval(&self, x: &Rational) -> Result<Rational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(self.num.eval(x) / d)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.num.eval_f64(x) / self.den.eval_f64(x)
    }

    /// Equality decided by cross-multiplication, independent of canonical form.
    pub fn cross_eq(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({self})")
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.degree() == Some(0) {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.den == rhs.den {
            return RatFunc::new(&self.num + &rhs.num, self.den.clone()).unwrap();
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RatFunc::new(num, &self.den * &rhs.den).unwrap()
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::new(&self.num * &rhs.num, &self.den * &rhs.den).unwrap()
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: RatFunc) -> RatFunc {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: &RatFunc) -> RatFunc {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, rat};

    fn poly(c: &[Rational]) -> LaurentPoly {
        LaurentPoly::from_coeffs(c.iter().cloned())
    }

    #[test]
    fn common_factor_cancels() {
        let r = RatFunc::new(poly(&[int(-1), int(0), int(1)]), poly(&[int(-1), int(1)])).unwrap();
        assert_eq!(r.to_polynomial().unwrap(), poly(&[int(1), int(1)]));
    }

    #[test]
    fn scalar_normalization() {
        let r = RatFunc::new(poly(&[int(0), int(2)]), poly(&[int(4)])).unwrap();
        assert_eq!(r.to_polynomial().unwrap(), poly(&[int(0), rat(1, 2)]));
    }

    #[test]
    fn divide_by_x_with_gamma() {
        let g = rat(1, 2);
        let num = poly(&[int(0), -(&g * &g), int(0), int(1)]);
        let r = RatFunc::new(num, LaurentPoly::x()).unwrap();
        assert_eq!(r.to_polynomial().unwrap(), poly(&[rat(-1, 4), int(0), int(1)]));
    }

    #[test]
    fn zero_denominator_rejected() {
        assert_eq!(
            RatFunc::new(LaurentPoly::one(), LaurentPoly::zero()),
            Err(Error::ZeroDenominator)
        );
    }

    #[test]
    fn polynomial_check() {
        let g = rat(1, 3);
        let already = RatFunc::new(poly(&[-(&g * &g), int(0), int(1)]), LaurentPoly::one()).unwrap();
        assert_eq!(already.to_polynomial().unwrap(), poly(&[rat(-1, 9), int(0), int(1)]));
        let pole = RatFunc::new(poly(&[int(1), int(0), int(1)]), LaurentPoly::x()).unwrap();
        assert!(matches!(pole.to_polynomial(), Err(Error::NotPolynomial(_))));
    }

    #[test]
    fn canonical_form_monic_and_reduced() {
        let r = RatFunc::new(poly(&[int(3), int(3)]), poly(&[int(6), int(0), int(-6)])).unwrap();
        // (3 + 3x) / (6 - 6x^2) = -(1/2) / (x - 1)
        assert!(r.den().is_monic());
        assert_eq!(r.den(), &poly(&[int(-1), int(1)]));
        assert_eq!(r.num(), &poly(&[rat(-1, 2)]));
    }

    #[test]
    fn laurent_inputs_are_cleared() {
        let mut num = LaurentPoly::zero();
        num.add_term(-2, int(1));
        let r = RatFunc::new(num, LaurentPoly::one()).unwrap();
        assert_eq!(r.den(), &poly(&[int(0), int(0), int(1)]));
        assert_eq!(r.to_laurent().unwrap().min_exponent(), Some(-2));
    }

    #[test]
    fn derivative_quotient_rule() {
        // d/dx 1/(x+1) = -1/(x+1)^2
        let r = RatFunc::new(LaurentPoly::one(), poly(&[int(1), int(1)])).unwrap();
        let d = r.derivative();
        let expect = RatFunc::new(poly(&[int(-1)]), poly(&[int(1), int(2), int(1)])).unwrap();
        assert_eq!(d, expect);
        assert!(d.cross_eq(&expect));
    }
}
