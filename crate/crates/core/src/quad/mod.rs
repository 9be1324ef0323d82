//! Floating-point orthogonality checks.
//!
//! Family weights on two symmetric intervals are folded onto a single interval:
//! writing `f g = E(x²) + x O(x²)` and `t = x² - γ²`, the inner product becomes
//! `∫ (E + γ O)(t + γ²) w(t) dt` for a classical weight `w`, so a Gauss rule in
//! `t` is exact up to rounding.

mod gauss;
mod pearson;
mod oracle;

pub use gauss::{gauss_rule, symtridiag_eigen, QuadratureRule, SymTridiag, WeightClass};
pub use oracle::{adaptive_simpson, direct_inner_product};
pub use pearson::{verify_pearson, PearsonReport};

use num_traits::Zero;
use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};
use crate::exactnum::{int, pochhammer, factorial, rat, to_f64, AffineMap, LaurentPoly, Rational};
use crate::families::{ChiharaParams, Family, YParams};

/// Weight of one of the four families with a continuous orthogonality measure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WeightSpec {
    /// `sign(x)(x+γ)(x²-γ²)^α(1+γ²-x²)^β` on `[-√(1+γ²), -|γ|] ∪ [|γ|, √(1+γ²)]`
    Chihara(ChiharaParams),
    /// `|x|^{2α+1}(1-x²)^β` on `[-1, 1]`
    Gegenbauer { alpha: Rational, beta: Rational },
    /// `sign(x)(x+γ)(x²-γ²)^{μ-1/2} e^{-x²}` on `(-∞, -|γ|] ∪ [|γ|, ∞)`
    Y(YParams),
    /// `|x|^{2μ} e^{-x²}` on the real line
    GeneralizedHermite { mu: Rational },
}

/// Raw shape of a weight: which exponents and which shift.
struct Shape {
    gamma: Rational,
    a: Rational,
    b: Option<Rational>,
}

impl WeightSpec {
    pub fn family(&self) -> Family {
        match self {
            WeightSpec::Chihara(p) => Family::Chihara(p.clone()),
            WeightSpec::Gegenbauer { alpha, beta } => Family::Gegenbauer {
                alpha: alpha.clone(),
                beta: beta.clone(),
            },
            WeightSpec::Y(p) => Family::Y(p.clone()),
            WeightSpec::GeneralizedHermite { mu } => Family::GeneralizedHermite { mu: mu.clone() },
        }
    }

    fn shape(&self) -> Shape {
        let half = rat(1, 2);
        match self {
            WeightSpec::Chihara(p) => Shape {
                gamma: p.gamma.clone(),
                a: p.alpha.clone(),
                b: Some(p.beta.clone()),
            },
            WeightSpec::Gegenbauer { alpha, beta } => Shape {
                gamma: Rational::zero(),
                a: alpha.clone(),
                b: Some(beta.clone()),
            },
            WeightSpec::Y(p) => Shape {
                gamma: p.gamma.clone(),
                a: &p.mu - half,
                b: None,
            },
            WeightSpec::GeneralizedHermite { mu } => Shape {
                gamma: Rational::zero(),
                a: mu - half,
                b: None,
            },
        }
    }

    pub fn gamma(&self) -> Rational {
        self.shape().gamma
    }

    /// Classical weight in `t = x² - γ²` after folding.
    pub fn reduced_class(&self) -> WeightClass {
        let s = self.shape();
        match s.b {
            Some(b) => WeightClass::Jacobi {
                a: to_f64(&s.a),
                b: to_f64(&b),
            },
            None => WeightClass::GeneralizedLaguerre { a: to_f64(&s.a) },
        }
    }

    /// Constant factor in front of the reduced integral (`e^{-γ²}` for the unbounded families).
    pub fn reduced_prefactor(&self) -> f64 {
        let s = self.shape();
        if s.b.is_some() {
            1.0
        } else {
            (-to_f64(&(&s.gamma * &s.gamma))).exp()
        }
    }

    /// Support intervals, left to right.
    pub fn support(&self) -> Vec<(f64, f64)> {
        let s = self.shape();
        let g = to_f64(&s.gamma).abs();
        let outer = if s.b.is_some() {
            (1.0 + g * g).sqrt()
        } else {
            f64::INFINITY
        };
        if g == 0.0 {
            vec![(-outer, outer)]
        } else {
            vec![(-outer, -g), (g, outer)]
        }
    }

    /// Weight value; zero outside the support.
    pub fn weight(&self, x: f64) -> f64 {
        let s = self.shape();
        let g = to_f64(&s.gamma);
        let a = to_f64(&s.a);
        let t = x * x - g * g;
        let inside = self
            .support()
            .iter()
            .any(|&(lo, hi)| x >= lo && x <= hi);
        if !inside || t < 0.0 {
            return 0.0;
        }
        let radial = match &s.b {
            Some(b) => {
                let r = 1.0 - t;
                if r < 0.0 {
                    return 0.0;
                }
                r.powf(to_f64(b))
            }
            None => (-x * x).exp(),
        };
        // sign(x)(x + γ) reduces to |x| at γ = 0
        x.signum() * (x + g) * t.powf(a) * radial
    }

    fn validate(&self) -> Result<()> {
        let s = self.shape();
        let ok = s.a > int(-1) && s.b.as_ref().is_none_or(|b| *b > int(-1));
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidWeight(format!("{self:?} is not positive definite")))
        }
    }

    /// Exact `k_n / k_0` (Gamma-free).
    pub fn normalized_norm(&self, n: usize) -> Result<Rational> {
        let m = n / 2;
        let s = self.shape();
        match s.b {
            Some(b) => {
                let a = s.a;
                let ab1 = &a + &b + int(1);
                let odd = n % 2 == 1;
                let k = if odd { 1 } else { 0 };
                let num = pochhammer(&(&a + int(1)), m + k)
                    * pochhammer(&(&b + int(1)), m)
                    * factorial(m)
                    * &ab1;
                let top = pochhammer(&(int(m as i64) + &ab1 + int(k as i64)), m);
                let den = pochhammer(&ab1, m + k)
                    * (int(2 * m as i64) + &ab1 + int(k as i64))
                    * &top
                    * &top;
                if den.is_zero() {
                    return Err(Error::DegenerateParameters {
                        family: "norm",
                        n,
                        reason: "vanishing Pochhammer factor".into(),
                    });
                }
                Ok(num / den)
            }
            None => {
                let base = s.a + int(1);
                Ok(factorial(m) * pochhammer(&base, m + n % 2))
            }
        }
    }

    /// Exact `k_n / k_{n-1}`.
    pub fn norm_ratio(&self, n: usize) -> Result<Rational> {
        Ok(self.normalized_norm(n)? / self.normalized_norm(n - 1)?)
    }

    /// Absolute `k_0` (uses log-Gamma).
    pub fn zeroth_norm(&self) -> f64 {
        self.reduced_prefactor() * self.reduced_class().moment(0)
    }

    /// Polynomial in `t` whose reduced integral equals `∫ h ω dx`.
    pub fn reduce(&self, h: &LaurentPoly) -> LaurentPoly {
        let g = self.gamma();
        let (even, odd) = h.even_odd_split();
        let combined = &even + &odd.scale(&g);
        combined.compose_affine(&AffineMap::shift(&g * &g))
    }

    /// Gauss rule large enough for products of degree up to `max_product_degree`.
    pub fn rule_for_degree(&self, max_product_degree: usize) -> Result<QuadratureRule> {
        self.validate()?;
        gauss_rule(self.reduced_class(), max_product_degree.div_ceil(2) + 2)
    }

    /// `<f, g>` with the default rule size.
    pub fn inner_product(&self, f: &LaurentPoly, g: &LaurentPoly) -> Result<f64> {
        let deg = poly_degree(f) + poly_degree(g);
        let rule = self.rule_for_degree(deg)?;
        self.inner_product_with(&rule, f, g)
    }

    /// `<f, g>` with a given rule; fails if the rule is not exact for the reduced integrand.
    pub fn inner_product_with(
        &self,
        rule: &QuadratureRule,
        f: &LaurentPoly,
        g: &LaurentPoly,
    ) -> Result<f64> {
        let reduced = self.reduce(&(f * g));
        let needed = poly_degree(&reduced);
        if needed > rule.exact_degree {
            return Err(Error::RuleTooSmall {
                nodes: rule.nodes.len(),
                exact: rule.exact_degree,
                needed,
            });
        }
        Ok(self.reduced_prefactor() * integrate_exactly_at_nodes(rule, &reduced))
    }

    /// Gram matrix `[<P_m, P_n>]` with one shared rule.
    pub fn gram_matrix(&self, polys: &[LaurentPoly]) -> Result<Vec<Vec<f64>>> {
        let max_deg = polys.iter().map(poly_degree).max().unwrap_or(0);
        let rule = self.rule_for_degree(2 * max_deg)?;
        polys
            .iter()
            .map(|p| polys.iter().map(|q| self.inner_product_with(&rule, p, q)).collect())
            .collect()
    }
}

fn poly_degree(p: &LaurentPoly) -> usize {
    p.degree().unwrap_or(0).max(0) as usize
}

/// Evaluates the integrand exactly at each (float) node and rounds once, so the
/// only float error is in the nodes, weights and the final sum.
fn integrate_exactly_at_nodes(rule: &QuadratureRule, p: &LaurentPoly) -> f64 {
    rule.nodes
        .iter()
        .zip(&rule.weights)
        .map(|(&t, &w)| {
            let exact_t = Rational::from_float(t).expect("finite node");
            w * to_f64(&p.eval(&exact_t))
        })
        .sum()
}

/// Largest `|<P_m,P_n>| / sqrt(<P_m,P_m><P_n,P_n>)` over `m != n`.
pub fn max_offdiagonal(gram: &[Vec<f64>]) -> f64 {
    let mut worst: f64 = 0.0;
    for (m, row) in gram.iter().enumerate() {
        for (n, v) in row.iter().enumerate() {
            if m != n {
                worst = worst.max(v.abs() / (gram[m][m] * gram[n][n]).sqrt());
            }
        }
    }
    worst
}

/// Exact norm ratio alongside the quadrature estimate `<P_n,P_n> / <P_{n-1},P_{n-1}>`.
pub fn norm_ratio_check(spec: &WeightSpec, n: usize) -> Result<(Rational, f64)> {
    let polys = crate::families::generate_monic(&spec.family(), n)?;
    let rule = spec.rule_for_degree(2 * n)?;
    let hn = spec.inner_product_with(&rule, &polys[n], &polys[n])?;
    let hm = spec.inner_product_with(&rule, &polys[n - 1], &polys[n - 1])?;
    Ok((spec.norm_ratio(n)?, hn / hm))
}

/// `k_n / k_{n-1} - u_n` for `n = 1..=n_max`, all of which should vanish.
pub fn norm_recurrence_residuals(spec: &WeightSpec, n_max: usize) -> Result<Vec<Rational>> {
    let family = spec.family();
    (1..=n_max)
        .map(|n| Ok(spec.norm_ratio(n)? - family.recurrence_coeffs(n)?.1))
        .collect()
}

/// Absolute norm `k_0` from its closed form: `B(α+1, β+1)` or `e^{-γ²} Γ(μ+1/2)`.
pub fn closed_form_zeroth_norm(spec: &WeightSpec) -> f64 {
    let s = spec.shape();
    let a = to_f64(&s.a);
    match s.b {
        Some(b) => {
            let b = to_f64(&b);
            (ln_gamma(a + 1.0) + ln_gamma(b + 1.0) - ln_gamma(a + b + 2.0)).exp()
        }
        None => spec.reduced_prefactor() * ln_gamma(a + 1.0).exp(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::generate_monic;

    fn chihara(a: Rational, b: Rational, g: Rational) -> WeightSpec {
        WeightSpec::Chihara(ChiharaParams::new(a, b, g))
    }

    #[test]
    fn inner_product_examples() {
        let w = chihara(int(1), int(1), rat(1, 2));
        let c = generate_monic(&w.family(), 1).unwrap();
        assert!(w.inner_product(&c[0], &c[1]).unwrap().abs() < 1e-12);
        let w0 = chihara(int(0), int(0), rat(2, 7));
        let one = LaurentPoly::one();
        assert!((w0.inner_product(&one, &one).unwrap() - 1.0).abs() < 1e-14);
        let y = WeightSpec::Y(YParams::new(rat(1, 2), int(0)));
        assert!((y.inner_product(&one, &one).unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn rule_too_small() {
        let w = chihara(int(1), int(1), rat(1, 2));
        let rule = gauss_rule(w.reduced_class(), 2).unwrap();
        let p = LaurentPoly::monomial(5, int(1));
        assert!(matches!(
            w.inner_product_with(&rule, &p, &p),
            Err(Error::RuleTooSmall { nodes: 2, exact: 3, needed: 5 })
        ));
    }

    #[test]
    fn norm_ratio_examples() {
        let w = chihara(rat(1, 3), rat(5, 2), rat(1, 2));
        let (a, b) = (rat(1, 3), rat(5, 2));
        assert_eq!(w.norm_ratio(1).unwrap(), (&a + int(1)) / (&a + &b + int(2)));
        let w = chihara(int(1), int(1), rat(1, 2));
        assert_eq!(w.norm_ratio(2).unwrap(), rat(1, 10));
        let y = WeightSpec::Y(YParams::new(rat(3, 2), rat(1, 4)));
        assert_eq!(y.norm_ratio(1).unwrap(), int(2));
    }

    #[test]
    fn norm_ratios_are_recurrence_coefficients() {
        for w in [
            chihara(int(1), int(1), rat(1, 2)),
            chihara(rat(-1, 3), rat(3, 4), rat(-2, 5)),
            WeightSpec::Y(YParams::new(rat(3, 4), rat(2, 5))),
            WeightSpec::GeneralizedHermite { mu: rat(1, 3) },
        ] {
            assert!(norm_recurrence_residuals(&w, 30).unwrap().iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn zeroth_norms() {
        let w = chihara(rat(1, 2), int(2), rat(1, 3));
        let one = LaurentPoly::one();
        let q = w.inner_product(&one, &one).unwrap();
        assert!((q / closed_form_zeroth_norm(&w) - 1.0).abs() < 1e-13);
        assert!((w.zeroth_norm() / closed_form_zeroth_norm(&w) - 1.0).abs() < 1e-13);
        let y = WeightSpec::Y(YParams::new(rat(3, 2), rat(1, 2)));
        let q = y.inner_product(&one, &one).unwrap();
        // e^{-1/4} Γ(2)
        assert!((q - (-0.25f64).exp()).abs() < 1e-13);
    }

    #[test]
    fn weight_outside_support_is_zero() {
        let w = chihara(int(1), int(1), rat(1, 2));
        assert_eq!(w.weight(0.1), 0.0);
        assert_eq!(w.weight(2.0), 0.0);
        assert!(w.weight(0.9) > 0.0 && w.weight(-0.9) > 0.0);
    }
}
