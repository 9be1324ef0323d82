use num_traits::Zero;

use super::WeightSpec;
use crate::dunklop::ChiharaCoefficients;
use crate::exactnum::{int, to_f64, LaurentPoly, RatFunc, Rational};
use crate::families::ChiharaParams;

/// Outcome of the Pearson-type checks on the Chihara weight.
#[derive(Debug, Clone, PartialEq)]
pub struct PearsonReport {
    /// Formal logarithmic derivative minus its partial-fraction form; must be zero.
    pub log_derivative_residual: RatFunc,
    /// `(U - S')/S` minus the logarithmic derivative; must be zero.
    pub operator_residual: RatFunc,
    /// Largest `|(x+γ)ω(-x) + (γ-x)ω(x)| / |ω(x)|` over the samples.
    pub reflection_residual: f64,
    pub samples_per_component: usize,
}

impl PearsonReport {
    pub fn passed(&self, tol: f64) -> bool {
        self.log_derivative_residual.is_zero()
            && self.operator_residual.is_zero()
            && self.reflection_residual <= tol
    }
}

fn frac(num: LaurentPoly, den: LaurentPoly) -> RatFunc {
    RatFunc::new(num, den).expect("nonzero denominator")
}

fn lin(c0: Rational) -> LaurentPoly {
    LaurentPoly::from_coeffs([c0, int(1)])
}

/// Exact logarithmic-derivative identities plus a sampled reflection condition.
pub fn verify_pearson(params: &ChiharaParams, samples_per_component: usize) -> PearsonReport {
    let (a, b, g) = (&params.alpha, &params.beta, &params.gamma);
    let g2 = g * g;
    let x = LaurentPoly::x();
    let x2_minus_g2 = LaurentPoly::from_coeffs([-g2.clone(), int(0), int(1)]);
    let outer = LaurentPoly::from_coeffs([&g2 + int(1), int(0), int(-1)]);

    // 1/(x+γ) + 2αx/(x²-γ²) - 2βx/(1+γ²-x²)
    let formal = &(&frac(LaurentPoly::one(), lin(g.clone()))
        + &frac(x.scale(&(a * int(2))), x2_minus_g2.clone()))
        - &frac(x.scale(&(b * int(2))), outer.clone());
    // α/(x-γ) + (α+1)/(x+γ) - 2βx/(γ²+1-x²)
    let partial = &(&frac(LaurentPoly::constant(a.clone()), lin(-g))
        + &frac(LaurentPoly::constant(a + int(1)), lin(g.clone())))
        - &frac(x.scale(&(b * int(2))), outer);
    let log_derivative_residual = &formal - &partial;

    let coeffs = ChiharaCoefficients::new(params, &Rational::zero());
    let from_operator = &(&coeffs.u - &coeffs.s.derivative()) * &coeffs.s.recip().expect("S is nonzero");
    let operator_residual = &from_operator - &partial;

    let spec = WeightSpec::Chihara(params.clone());
    let gf = to_f64(g);
    let mut worst: f64 = 0.0;
    for (lo, hi) in spec.support() {
        for k in 0..samples_per_component {
            let xs = lo + (hi - lo) * (k as f64 + 0.5) / samples_per_component as f64;
            let w = spec.weight(xs);
            let r = (xs + gf) * spec.weight(-xs) + (gf - xs) * w;
            worst = worst.max(r.abs() / w.abs());
        }
    }
    PearsonReport {
        log_derivative_residual,
        operator_residual,
        reflection_residual: worst,
        samples_per_component,
    }
}
