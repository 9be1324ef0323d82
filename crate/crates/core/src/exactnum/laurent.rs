use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::{to_f64, AffineMap, RatFunc, Rational, Sign};

/// Finite Laurent polynomial over the rationals: exponent -> nonzero coefficient.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, Rational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Self::monomial(1, Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(0, c)
    }

    pub fn monomial(exp: i64, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        LaurentPoly { terms }
    }

    /// Builds `c_0 + c_1 x + ...` from ascending coefficients.
    pub fn from_coeffs<I: IntoIterator<Item = Rational>>(coeffs: I) -> Self {
        let mut p = LaurentPoly::zero();
        for (i, c) in coeffs.into_iter().enumerate() {
            p.add_term(i as i64, c);
        }
        p
    }

    /// `x - a`
    pub fn linear_root(a: &Rational) -> Self {
        let mut p = Self::x();
        p.add_term(0, -a.clone());
        p
    }

    pub fn add_term(&mut self, exp: i64, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exp) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: i64) -> Rational {
        self.terms.get(&exp).cloned().unwrap_or_else(Rational::zero)
    }

    /// Highest exponent; `None` is the degree sentinel of the zero polynomial.
    pub fn degree(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.terms.values().next_back()
    }

    /// True when no negative exponents are present.
    pub fn is_polynomial(&self) -> bool {
        self.min_exponent().is_none_or(|e| e >= 0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff().is_some_and(|c| c.is_one())
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect(),
        }
    }

    /// Multiplication by `x^k`.
    pub fn shift_exponents(&self, k: i64) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, v)| (e + k, v.clone())).collect(),
        }
    }

    /// Term-wise `n x^(n-1)`, negative `n` included.
    pub fn derivative(&self) -> Self {
        let mut out = LaurentPoly::zero();
        for (e, c) in &self.terms {
            if *e != 0 {
                out.add_term(e - 1, c * Rational::from_integer((*e).into()));
            }
        }
        out
    }

    pub fn nth_derivative(&self, k: u32) -> Self {
        let mut p = self.clone();
        for _ in 0..k {
            p = p.derivative();
        }
        p
    }

    /// `p(-x)`
    pub fn reflect(&self) -> Self {
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (*e, if e % 2 == 0 { c.clone() } else { -c }))
                .collect(),
        }
    }

    /// `p(eps x + delta)`. Negative exponents under a nonzero shift produce poles
    /// away from the origin, so the result is a rational function in general.
    pub fn substitute_affine(&self, map: &AffineMap) -> RatFunc {
        if map.delta.is_zero() || self.is_polynomial() {
            return RatFunc::from_laurent(&self.substitute_polynomial_part(map));
        }
        // p = q / x^m with q a polynomial: p(y) = q(y) / y^m.
        let m = -self.min_exponent().unwrap_or(0);
        let q = self.shift_exponents(m);
        let num = q.substitute_polynomial_part(map);
        let den = Self::affine_image_of_x(map).pow(m as u32);
        RatFunc::new(num, den).expect("affine image of x is nonzero")
    }

    /// `p(eps x + delta)` when the result stays a Laurent polynomial
    /// (`p` is a polynomial, or `delta = 0`).
    pub fn compose_affine(&self, map: &AffineMap) -> Self {
        assert!(
            map.delta.is_zero() || self.is_polynomial(),
            "shifted substitution of a Laurent polynomial with poles"
        );
        self.substitute_polynomial_part(map)
    }

    fn substitute_polynomial_part(&self, map: &AffineMap) -> Self {
        if map.delta.is_zero() {
            return match map.eps {
                Sign::Plus => self.clone(),
                Sign::Minus => self.reflect(),
            };
        }
        // Horner in y = eps x + delta over descending exponents.
        let y = Self::affine_image_of_x(map);
        let Some(deg) = self.degree() else {
            return Self::zero();
        };
        let mut acc = LaurentPoly::zero();
        for e in (0..=deg).rev() {
            acc = &acc * &y;
            acc.add_term(0, self.coeff(e));
        }
        acc
    }

    /// `eps x + delta`
    fn affine_image_of_x(map: &AffineMap) -> Self {
        let mut y = LaurentPoly::monomial(1, map.eps.as_rational());
        y.add_term(0, map.delta.clone());
        y
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = LaurentPoly::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            acc += c * super::powi(x, *e);
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.terms.iter().map(|(e, c)| to_f64(c) * x.powi(*e as i32)).sum()
    }

    /// Ascending coefficients `c_0..c_deg` as floats; requires a polynomial.
    pub fn to_f64_coeffs(&self) -> Vec<f64> {
        assert!(self.is_polynomial());
        match self.degree() {
            None => Vec::new(),
            Some(d) => (0..=d).map(|e| to_f64(&self.coeff(e))).collect(),
        }
    }

    /// Maximum absolute coefficient, as an exact rational.
    pub fn max_abs_coeff(&self) -> Rational {
        self.terms
            .values()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(Rational::zero)
    }

    /// Polynomial long division. Both operands must be polynomials and the divisor nonzero.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        assert!(self.is_polynomial() && divisor.is_polynomial());
        let dd = divisor.degree().expect("division by zero polynomial");
        let lead = divisor.leading_coeff().unwrap().clone();
        let mut quotient = LaurentPoly::zero();
        let mut rem = self.clone();
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let c = rem.leading_coeff().unwrap() / &lead;
            let shift = rd - dd;
            quotient.add_term(shift, c.clone());
            for (e, v) in &divisor.terms {
                rem.add_term(e + shift, -(v * &c));
            }
        }
        (quotient, rem)
    }

    /// Quotient when `divisor` divides `self` exactly.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(divisor);
        r.is_zero().then_some(q)
    }

    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            Some(c) => self.scale(&c.recip()),
            None => Self::zero(),
        }
    }

    /// Monic gcd over the rationals (polynomials only).
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.monic();
        let mut b = other.monic();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.monic();
        }
        a
    }

    /// Even/odd split `p(x) = E(x^2) + x O(x^2)`, returned as `(E, O)` in the variable `t = x^2`.
    pub fn even_odd_split(&self) -> (Self, Self) {
        assert!(self.is_polynomial());
        let mut even = LaurentPoly::zero();
        let mut odd = LaurentPoly::zero();
        for (e, c) in &self.terms {
            if e % 2 == 0 {
                even.add_term(e / 2, c.clone());
            } else {
                odd.add_term((e - 1) / 2, c.clone());
            }
        }
        (even, odd)
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

/// Descending order, e.g. `x^2 - 3/4`, `-2*x^-3`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let var = match e {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{e}"),
            };
            if *e == 0 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{var}")?;
            } else {
                write!(f, "{mag}*{var}")?;
            }
        }
        Ok(())
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: &LaurentPoly) -> LaurentPoly {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, rat};

    fn p(coeffs: &[(i64, Rational)]) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e, c) in coeffs {
            out.add_term(*e, c.clone());
        }
        out
    }

    #[test]
    fn difference_of_squares() {
        let a = p(&[(1, int(1)), (0, int(1))]);
        let b = p(&[(1, int(1)), (0, int(-1))]);
        assert_eq!(&a * &b, p(&[(2, int(1)), (0, int(-1))]));
    }

    #[test]
    fn additive_identity() {
        let a = p(&[(3, rat(2, 3)), (-1, int(5))]);
        assert_eq!(&a + &LaurentPoly::zero(), a);
    }

    #[test]
    fn laurent_times_x() {
        let a = p(&[(-1, int(1)), (0, int(1))]);
        assert_eq!(&a * &LaurentPoly::x(), p(&[(0, int(1)), (1, int(1))]));
    }

    #[test]
    fn derivative_power_rule() {
        assert_eq!(p(&[(3, int(1))]).derivative(), p(&[(2, int(3))]));
        assert!(LaurentPoly::constant(int(5)).derivative().is_zero());
        assert_eq!(p(&[(-2, int(1))]).derivative(), p(&[(-3, int(-2))]));
    }

    #[test]
    fn affine_substitutions() {
        let x2 = p(&[(2, int(1))]);
        let refl = x2.substitute_affine(&AffineMap::reflection());
        assert_eq!(refl.to_polynomial().unwrap(), x2);

        // T+R acting on x: -x - 1
        let map = AffineMap::new(Sign::Minus, int(-1));
        let img = LaurentPoly::x().compose_affine(&map);
        assert_eq!(img, p(&[(1, int(-1)), (0, int(-1))]));

        let x3 = p(&[(3, int(1))]);
        let shifted = x3.compose_affine(&AffineMap::shift(int(1)));
        assert_eq!(
            shifted,
            LaurentPoly::from_coeffs([int(1), int(3), int(3), int(1)])
        );
    }

    #[test]
    fn shifted_pole_becomes_rational_function() {
        // 1/x under x -> x + 1 is 1/(x + 1)
        let inv = p(&[(-1, int(1))]);
        let r = inv.substitute_affine(&AffineMap::shift(int(1)));
        assert_eq!(r.num(), &LaurentPoly::one());
        assert_eq!(r.den(), &LaurentPoly::from_coeffs([int(1), int(1)]));
        assert!(r.to_polynomial().is_err());
    }

    #[test]
    fn degree_sentinel_and_display() {
        assert_eq!(LaurentPoly::zero().degree(), None);
        let q = p(&[(2, int(1)), (0, rat(-3, 4))]);
        assert_eq!(q.to_string(), "x^2 - 3/4");
        let r = p(&[(-3, int(-2)), (1, rat(5, 2))]);
        assert_eq!(r.to_string(), "5/2*x - 2*x^-3");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
    }

    #[test]
    fn division_and_gcd() {
        let a = LaurentPoly::from_coeffs([int(-1), int(0), int(1)]);
        let b = LaurentPoly::from_coeffs([int(-1), int(1)]);
        assert_eq!(
            a.exact_div(&b).unwrap(),
            LaurentPoly::from_coeffs([int(1), int(1)])
        );
        let c = LaurentPoly::from_coeffs([int(1), int(1)]);
        assert_eq!(a.gcd(&(&c * &c)), c);
        assert!(a.exact_div(&LaurentPoly::from_coeffs([int(2), int(1)])).is_none());
    }

    #[test]
    fn even_odd_split_roundtrip() {
        let q = LaurentPoly::from_coeffs([int(1), int(2), int(3), int(4), int(5)]);
        let (e, o) = q.even_odd_split();
        assert_eq!(e, LaurentPoly::from_coeffs([int(1), int(3), int(5)]));
        assert_eq!(o, LaurentPoly::from_coeffs([int(2), int(4)]));
    }
}
