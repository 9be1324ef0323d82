//! Dunkl-type operators as finite sums of terms
//! `coeff(x) · d^k/dx^k [ f(eps x + delta) ]`.

mod algebra;
mod catalog;

pub use algebra::{
    verify_algebra, AlgebraFamily, AlgebraRelationReport, Generator, WordExpr,
    YStructureConstants,
};
pub use catalog::{ChiharaCoefficients, OperatorSpec};

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{int, AffineMap, LaurentPoly, RatFunc, Rational, Sign};
use crate::families::{generate_monic, ChiharaParams, Family};

/// One summand `coeff(x) · d^k/dx^k [ f(eps x + delta) ]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OperatorTerm {
    pub coeff: RatFunc,
    pub deriv_order: u32,
    pub map: AffineMap,
}

impl OperatorTerm {
    pub fn new(coeff: RatFunc, deriv_order: u32, map: AffineMap) -> Self {
        OperatorTerm {
            coeff,
            deriv_order,
            map,
        }
    }

    pub fn identity() -> Self {
        Self::new(RatFunc::one(), 0, AffineMap::identity())
    }
}

type TermKey = (u32, Sign, Rational);

fn key_of(t: &OperatorTerm) -> TermKey {
    (t.deriv_order, t.map.eps, t.map.delta.clone())
}

/// A linear operator given as a sum of [`OperatorTerm`]s. Terms sharing the same
/// derivative order and affine part are merged; zero terms are dropped.
#[derive(Clone, PartialEq, Eq)]
pub struct DunklOperator {
    terms: Vec<OperatorTerm>,
}

impl DunklOperator {
    pub fn new(terms: impl IntoIterator<Item = OperatorTerm>) -> Self {
        let mut merged: BTreeMap<TermKey, OperatorTerm> = BTreeMap::new();
        for t in terms {
            match merged.get_mut(&key_of(&t)) {
                Some(existing) => existing.coeff = &existing.coeff + &t.coeff,
                None => {
                    merged.insert(key_of(&t), t);
                }
            }
        }
        DunklOperator {
            terms: merged.into_values().filter(|t| !t.coeff.is_zero()).collect(),
        }
    }

    pub fn zero() -> Self {
        DunklOperator { terms: Vec::new() }
    }

    pub fn identity() -> Self {
        Self::new([OperatorTerm::identity()])
    }

    /// `∂_x`
    pub fn derivative() -> Self {
        Self::new([OperatorTerm::new(RatFunc::one(), 1, AffineMap::identity())])
    }

    /// `R`
    pub fn reflection() -> Self {
        Self::new([OperatorTerm::new(RatFunc::one(), 0, AffineMap::reflection())])
    }

    /// Pure substitution `f(x) -> f(map x)`.
    pub fn substitution(map: AffineMap) -> Self {
        Self::new([OperatorTerm::new(RatFunc::one(), 0, map)])
    }

    /// Multiplication by `r(x)`.
    pub fn multiplication(r: RatFunc) -> Self {
        Self::new([OperatorTerm::new(r, 0, AffineMap::identity())])
    }

    pub fn terms(&self) -> &[OperatorTerm] {
        &self.terms
    }

    /// `r(x) · self`
    pub fn left_mul(&self, r: &RatFunc) -> Self {
        Self::new(self.terms.iter().map(|t| {
            OperatorTerm::new(&t.coeff * r, t.deriv_order, t.map.clone())
        }))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.left_mul(&RatFunc::constant(c.clone()))
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(self.terms.iter().chain(other.terms.iter()).cloned())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&int(-1)))
    }

    /// The operator `self ∘ inner` (apply `inner` first), expanded term by term.
    ///
    /// For inner `c1 ∂^{k1} A1` and outer `c2 ∂^{k2} A2` the product is
    /// `c2 e2^{k1} Σ_j C(k2, j) (c1∘A2)^{(k2-j)} ∂^{k1+j} (A1 then A2)`.
    pub fn compose(&self, inner: &Self) -> Self {
        let mut out = Vec::new();
        for outer_t in &self.terms {
            for inner_t in &inner.terms {
                let c1 = inner_t.coeff.substitute_affine(&outer_t.map);
                let sign = outer_t.map.eps.pow(inner_t.deriv_order).as_rational();
                let map = outer_t.map.then_substitute(&inner_t.map);
                let k2 = outer_t.deriv_order;
                let mut deriv = c1;
                let mut derivs = vec![deriv.clone()];
                for _ in 0..k2 {
                    deriv = deriv.derivative();
                    derivs.push(deriv.clone());
                }
                let mut binom = Rational::one();
                for j in 0..=k2 {
                    // term: C(k2, j) (c1∘A2)^{(k2-j)} ∂^{k1+j}
                    let c = (&derivs[(k2 - j) as usize] * &outer_t.coeff).scale(&(&binom * &sign));
                    out.push(OperatorTerm::new(c, inner_t.deriv_order + j, map.clone()));
                    binom = binom * int((k2 - j) as i64) / int(j as i64 + 1);
                }
            }
        }
        Self::new(out)
    }

    /// Applies the operator to a polynomial and returns the exact result,
    /// raising `NotPolynomial` if the sum of terms still has a pole.
    pub fn apply(&self, f: &LaurentPoly) -> Result<LaurentPoly> {
        self.apply_rational(f).to_polynomial()
    }

    /// Exact action as a rational function (no polynomial check).
    pub fn apply_rational(&self, f: &LaurentPoly) -> RatFunc {
        if !f.is_polynomial() {
            return self.terms.iter().fold(RatFunc::zero(), |acc, t| {
                let mut r = f.substitute_affine(&t.map);
                for _ in 0..t.deriv_order {
                    r = r.derivative();
                }
                &acc + &(&r * &t.coeff)
            });
        }
        // Common denominator: lcm of all coefficient denominators.
        let mut lcm = LaurentPoly::one();
        for t in &self.terms {
            let g = lcm.gcd(t.coeff.den());
            lcm = (&lcm * t.coeff.den()).exact_div(&g).expect("gcd divides");
        }
        let mut num = LaurentPoly::zero();
        for t in &self.terms {
            let g = f.compose_affine(&t.map).nth_derivative(t.deriv_order);
            if g.is_zero() {
                continue;
            }
            let factor = lcm.exact_div(t.coeff.den()).expect("lcm is a multiple");
            num = &num + &(&(&factor * t.coeff.num()) * &g);
        }
        RatFunc::new(num, lcm).expect("nonzero denominator")
    }

    /// Action on `e^{-x^2/2} p(x)`; only derivatives, reflections and Laurent coefficients are allowed.
    pub fn apply_gaussian(&self, f: &GaussianPoly) -> Result<GaussianPoly> {
        let mut out = LaurentPoly::zero();
        for t in &self.terms {
            if !t.map.delta.is_zero() {
                return Err(Error::UnsupportedTermForGaussianClass(format!(
                    "shift by {}",
                    t.map.delta
                )));
            }
            let coeff = t.coeff.to_laurent().ok_or_else(|| {
                Error::UnsupportedTermForGaussianClass(format!("coefficient {}", t.coeff))
            })?;
            let mut g = GaussianPoly::new(match t.map.eps {
                Sign::Plus => f.poly.clone(),
                Sign::Minus => f.poly.reflect(),
            });
            for _ in 0..t.deriv_order {
                g = g.derivative();
            }
            out = &out + &(&coeff * &g.poly);
        }
        if out.is_polynomial() {
            Ok(GaussianPoly::new(out))
        } else {
            Err(Error::NotPolynomial(format!("exp(-x^2/2) * ({out})")))
        }
    }
}

impl fmt::Debug for DunklOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.terms).finish()
    }
}

/// `e^{-x^2/2} · poly(x)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaussianPoly {
    pub poly: LaurentPoly,
}

impl GaussianPoly {
    pub fn new(poly: LaurentPoly) -> Self {
        GaussianPoly { poly }
    }

    /// `∂[e^{-x^2/2} p] = e^{-x^2/2} (p' - x p)`
    pub fn derivative(&self) -> Self {
        GaussianPoly::new(&self.poly.derivative() - &(&LaurentPoly::x() * &self.poly))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        GaussianPoly::new(self.poly.scale(c))
    }
}

/// `op(p) - lambda p`; zero exactly when `p` is an eigenfunction.
pub fn eigencheck(op: &DunklOperator, poly: &LaurentPoly, lambda: &Rational) -> Result<LaurentPoly> {
    Ok(&op.apply(poly)? - &poly.scale(lambda))
}

/// Gaussian-class analogue of [`eigencheck`].
pub fn eigencheck_gaussian(
    op: &DunklOperator,
    f: &GaussianPoly,
    lambda: &Rational,
) -> Result<LaurentPoly> {
    Ok(&op.apply_gaussian(f)?.poly - &f.poly.scale(lambda))
}

/// Residual of `(x - gamma)/(2x) (I - R) C_n = (n mod 2) C_n`.
pub fn reflection_parity_check(params: &ChiharaParams, n: usize) -> Result<LaurentPoly> {
    let c = generate_monic(&Family::Chihara(params.clone()), n)?.pop().unwrap();
    let op = OperatorSpec::ReflectionComponent {
        gamma: params.gamma.clone(),
    }
    .build()?;
    eigencheck(&op, &c, &int((n % 2) as i64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    fn x_pow(k: i64) -> LaurentPoly {
        LaurentPoly::monomial(k, Rational::one())
    }

    fn involution(gamma: Rational) -> DunklOperator {
        OperatorSpec::InvolutionP { gamma }.build().unwrap()
    }

    #[test]
    fn involution_examples() {
        let p = involution(rat(1, 2));
        assert_eq!(p.apply(&LaurentPoly::x()).unwrap(), LaurentPoly::from_coeffs([int(1), int(-1)]));
        assert_eq!(p.apply(&x_pow(2)).unwrap(), x_pow(2));
        assert_eq!(p.terms().len(), 2);
    }

    #[test]
    fn pole_reported() {
        let op = DunklOperator::multiplication(RatFunc::new(LaurentPoly::one(), LaurentPoly::x()).unwrap());
        assert!(matches!(op.apply(&LaurentPoly::one()), Err(Error::NotPolynomial(_))));
    }

    #[test]
    fn composition_matches_double_application() {
        let mu = rat(3, 4);
        let d = OperatorSpec::DunklDerivative { mu: mu.clone() }.build().unwrap();
        let shift_r = DunklOperator::substitution(AffineMap::new(Sign::Minus, int(-1)))
            .left_mul(&RatFunc::from_laurent(&LaurentPoly::from_coeffs([int(2), int(1)])))
            .add(&DunklOperator::derivative().left_mul(&RatFunc::x()));
        let ops = [d.clone(), shift_r.clone(), DunklOperator::reflection()];
        for a in &ops {
            for b in &ops {
                let ab = a.compose(b);
                for j in 0..7 {
                    let f = x_pow(j);
                    assert_eq!(ab.apply(&f).unwrap(), a.apply(&b.apply(&f).unwrap()).unwrap());
                }
            }
        }
    }

    #[test]
    fn gaussian_examples() {
        let d = DunklOperator::derivative();
        let g = d.apply_gaussian(&GaussianPoly::new(LaurentPoly::one())).unwrap();
        assert_eq!(g.poly, LaurentPoly::from_coeffs([int(0), int(-1)]));
        let mu = rat(2, 3);
        let dm = OperatorSpec::DunklDerivative { mu: mu.clone() }.build().unwrap();
        let g = dm.apply_gaussian(&GaussianPoly::new(LaurentPoly::x())).unwrap();
        assert_eq!(g.poly, LaurentPoly::from_coeffs([int(1) + &mu * int(2), int(0), int(-1)]));
        let shift = DunklOperator::substitution(AffineMap::shift(int(1)));
        assert!(matches!(
            shift.apply_gaussian(&GaussianPoly::new(LaurentPoly::one())),
            Err(Error::UnsupportedTermForGaussianClass(_))
        ));
    }

    #[test]
    fn reflection_parity() {
        let p = ChiharaParams::new(int(1), int(1), rat(1, 2));
        for n in 0..8 {
            assert!(reflection_parity_check(&p, n).unwrap().is_zero(), "n = {n}");
        }
    }
}
