use num_traits::Zero;

use super::{DunklOperator, OperatorTerm};
use crate::error::{Error, Result};
use crate::exactnum::{int, rat, AffineMap, LaurentPoly, RatFunc, Rational, Sign};
use crate::families::{CbiParams, ChiharaParams, YParams};

/// Builds `(sum_k c_k x^k) / x^p` from ascending coefficients.
fn over_x_pow(coeffs: impl IntoIterator<Item = Rational>, p: i64) -> RatFunc {
    let num = LaurentPoly::from_coeffs(coeffs);
    RatFunc::new(num, LaurentPoly::monomial(p, int(1))).expect("x^p is nonzero")
}

/// `p(x) / x^k`
fn div_x_pow(p: LaurentPoly, k: i64) -> RatFunc {
    RatFunc::from_laurent(&p.shift_exponents(-k))
}

fn ratfunc(num: LaurentPoly, den: LaurentPoly, family: &'static str) -> Result<RatFunc> {
    RatFunc::new(num, den).map_err(|_| Error::DegenerateParameters {
        family,
        n: 0,
        reason: "operator coefficient has a zero denominator".into(),
    })
}

fn lin(c0: Rational, c1: i64) -> LaurentPoly {
    LaurentPoly::from_coeffs([c0, int(c1)])
}

fn term(coeff: RatFunc, k: u32, map: AffineMap) -> OperatorTerm {
    OperatorTerm::new(coeff, k, map)
}

/// `c (I - R)`
fn one_minus_r(c: &RatFunc) -> [OperatorTerm; 2] {
    [
        term(c.clone(), 0, AffineMap::identity()),
        term(-c, 0, AffineMap::reflection()),
    ]
}

/// Coefficients `S, T, U, V` of `S ∂² + T ∂R + U ∂ + V (I - R)` for the Chihara family.
///
/// The fields are public so a single coefficient can be perturbed and the
/// eigen-equation shown to break.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChiharaCoefficients {
    pub s: RatFunc,
    pub t: RatFunc,
    pub u: RatFunc,
    pub v: RatFunc,
}

impl ChiharaCoefficients {
    pub fn new(p: &ChiharaParams, eps: &Rational) -> Self {
        let (a, b, g) = (&p.alpha, &p.beta, &p.gamma);
        let g2 = g * g;
        let x = LaurentPoly::x();
        // x^2 - g^2 and x^2 - g^2 - 1
        let q0 = LaurentPoly::from_coeffs([-g2.clone(), int(0), int(1)]);
        let q1 = LaurentPoly::from_coeffs([-&g2 - int(1), int(0), int(1)]);
        let x_minus_g = LaurentPoly::linear_root(g);
        let k = a + b + rat(3, 2);
        let ah = a + rat(1, 2);

        let s = div_x_pow((&q0 * &q1).scale(&rat(1, 4)), 2);
        let t = div_x_pow((&x_minus_g * &q1).scale(&(g / int(4))), 3);

        // g (x^2-g^2-1)(2g - x) / 4x^3 + (x^2-g^2) k / 2x - (a+1/2) / 2x
        let two_g_minus_x = LaurentPoly::from_coeffs([g * int(2), int(-1)]);
        let u_first = (&q1 * &two_g_minus_x).scale(&(g / int(4)));
        let u_rest = &(&q0.scale(&(&k / int(2))) - &LaurentPoly::constant(&ah / int(2))) * &x.pow(2);
        let u = div_x_pow(&u_first + &u_rest, 3);

        // g (x^2-g^2-1)(x - 3g/2) / 4x^4 - (x^2-g^2) k / 4x^2 + (a+1/2)/4x^2 + eps (x-g)/2x
        let x_minus_3g2 = LaurentPoly::linear_root(&(g * rat(3, 2)));
        let v_first = (&q1 * &x_minus_3g2).scale(&(g / int(4)));
        let v_mid = &(&LaurentPoly::constant(&ah / int(4)) - &q0.scale(&(&k / int(4)))) * &x.pow(2);
        let v_last = &x_minus_g.scale(&(eps / int(2))) * &x.pow(3);
        let v = div_x_pow(&(&v_first + &v_mid) + &v_last, 4);

        ChiharaCoefficients { s, t, u, v }
    }

    /// `S ∂² + T ∂R + U ∂ + V (I - R)`, where `∂R` differentiates `f(-x)`.
    pub fn operator(&self) -> DunklOperator {
        let mut terms = vec![
            term(self.s.clone(), 2, AffineMap::identity()),
            term(self.t.clone(), 1, AffineMap::reflection()),
            term(self.u.clone(), 1, AffineMap::identity()),
        ];
        terms.extend(one_minus_r(&self.v));
        DunklOperator::new(terms)
    }
}

/// Catalogue of the operators with known polynomial eigenfunctions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OperatorSpec {
    /// Second-order differential Dunkl operator of the Chihara family, parameter `eps` on the odd spectrum.
    ChiharaD { params: ChiharaParams, eps: Rational },
    /// Second-order Dunkl shift operator of the CBI family; `alpha` shifts the odd spectrum.
    CbiK { params: CbiParams, alpha: Rational },
    /// Chihara operator at `gamma = 0` (generalized Gegenbauer).
    GegenbauerW { alpha: Rational, beta: Rational, eps: Rational },
    /// `(1 - x²)(D^mu)² - 2(alpha + 1) x D^mu`; eigenfunctions are Gegenbauer `(mu - 1/2, alpha)`.
    GegenbauerQ { mu: Rational, alpha: Rational },
    /// `D^mu = ∂ + (mu / x)(I - R)`
    DunklDerivative { mu: Rational },
    /// Operator of the `Y` family.
    YZ { params: YParams, eps: Rational },
    /// Generalized Hermite operator.
    GhOmega { mu: Rational, eps: Rational },
    /// Dunkl oscillator `-(D^mu)²/2 + x²/2 + (eps/2)(I - R)`, acting on the Gaussian class.
    GhOmegaTilde { mu: Rational, eps: Rational },
    /// `P = R + (gamma / x)(I - R)`
    InvolutionP { gamma: Rational },
    /// `(x - gamma) / (2x) · (I - R)`
    ReflectionComponent { gamma: Rational },
}

impl OperatorSpec {
    pub fn name(&self) -> &'static str {
        match self {
            OperatorSpec::ChiharaD { .. } => "chihara_D",
            OperatorSpec::CbiK { .. } => "cbi_K",
            OperatorSpec::GegenbauerW { .. } => "gegenbauer_W",
            OperatorSpec::GegenbauerQ { .. } => "gegenbauer_Q",
            OperatorSpec::DunklDerivative { .. } => "dunkl_derivative",
            OperatorSpec::YZ { .. } => "y_Z",
            OperatorSpec::GhOmega { .. } => "gh_Omega",
            OperatorSpec::GhOmegaTilde { .. } => "gh_OmegaTilde",
            OperatorSpec::InvolutionP { .. } => "involution_P",
            OperatorSpec::ReflectionComponent { .. } => "reflection_component",
        }
    }

    pub fn build(&self) -> Result<DunklOperator> {
        match self {
            OperatorSpec::ChiharaD { params, eps } => {
                Ok(ChiharaCoefficients::new(params, eps).operator())
            }
            OperatorSpec::GegenbauerW { alpha, beta, eps } => {
                let p = ChiharaParams::new(alpha.clone(), beta.clone(), Rational::zero());
                Ok(ChiharaCoefficients::new(&p, eps).operator())
            }
            OperatorSpec::CbiK { params, alpha } => cbi_operator(params, alpha),
            OperatorSpec::DunklDerivative { mu } => Ok(dunkl_derivative(mu)),
            OperatorSpec::GegenbauerQ { mu, alpha } => {
                let d = dunkl_derivative(mu);
                let d2 = d.compose(&d);
                let one_minus_x2 = RatFunc::from_laurent(&LaurentPoly::from_coeffs([int(1), int(0), int(-1)]));
                let lin_x = RatFunc::from_laurent(&LaurentPoly::monomial(1, -(alpha + int(1)) * int(2)));
                Ok(d2.left_mul(&one_minus_x2).add(&d.left_mul(&lin_x)))
            }
            OperatorSpec::YZ { params, eps } => Ok(y_operator(params, eps)),
            OperatorSpec::GhOmega { mu, eps } => {
                let s = RatFunc::constant(rat(-1, 2));
                let u = over_x_pow([-mu.clone(), int(0), int(1)], 1);
                let v = over_x_pow([mu / int(2), int(0), (eps - int(1)) / int(2)], 2);
                let mut terms = vec![
                    term(s, 2, AffineMap::identity()),
                    term(u, 1, AffineMap::identity()),
                ];
                terms.extend(one_minus_r(&v));
                Ok(DunklOperator::new(terms))
            }
            OperatorSpec::GhOmegaTilde { mu, eps } => {
                let d = dunkl_derivative(mu);
                let kinetic = d.compose(&d).scale(&rat(-1, 2));
                let potential = DunklOperator::multiplication(RatFunc::from_laurent(
                    &LaurentPoly::monomial(2, rat(1, 2)),
                ));
                let parity = DunklOperator::new(one_minus_r(&RatFunc::constant(eps / int(2))));
                Ok(kinetic.add(&potential).add(&parity))
            }
            OperatorSpec::InvolutionP { gamma } => {
                let c = over_x_pow([gamma.clone()], 1);
                Ok(DunklOperator::new(one_minus_r(&c)).add(&DunklOperator::reflection()))
            }
            OperatorSpec::ReflectionComponent { gamma } => {
                let c = over_x_pow([-gamma / int(2), rat(1, 2)], 1);
                Ok(DunklOperator::new(one_minus_r(&c)))
            }
        }
    }

    /// Eigenvalue on the degree-`n` polynomial of the associated family, when there is one.
    pub fn eigenvalue(&self, n: usize) -> Option<Rational> {
        let m = int((n / 2) as i64);
        let odd = n % 2 == 1;
        match self {
            OperatorSpec::ChiharaD { params: ChiharaParams { alpha, beta, .. }, eps }
            | OperatorSpec::GegenbauerW { alpha, beta, eps } => Some(if odd {
                &m * (&m + alpha + beta + int(2)) + eps
            } else {
                &m * (&m + alpha + beta + int(1))
            }),
            OperatorSpec::CbiK { params, alpha } => {
                let g = params.g();
                Some(if odd {
                    &m * (&m + &g + int(2)) + params.omega() + alpha
                } else {
                    &m * (&m + &g + int(1))
                })
            }
            OperatorSpec::GegenbauerQ { mu, alpha } => Some(if odd {
                -(&m * int(2) + mu * int(2) + int(1)) * (&m * int(2) + alpha * int(2) + int(2))
            } else {
                -&m * int(2) * (&m * int(2) + alpha * int(2) + mu * int(2) + int(1))
            }),
            OperatorSpec::YZ { eps, .. } => Some(if odd { m + eps } else { m }),
            OperatorSpec::GhOmega { eps, .. } => {
                Some(if odd { m * int(2) + eps } else { m * int(2) })
            }
            OperatorSpec::GhOmegaTilde { mu, eps } => Some(if odd {
                m * int(2) + mu + rat(3, 2) + eps
            } else {
                m * int(2) + mu + rat(1, 2)
            }),
            OperatorSpec::ReflectionComponent { .. } => Some(int(odd as i64)),
            OperatorSpec::DunklDerivative { .. } | OperatorSpec::InvolutionP { .. } => None,
        }
    }
}

fn dunkl_derivative(mu: &Rational) -> DunklOperator {
    let c = over_x_pow([mu.clone()], 1);
    DunklOperator::new(one_minus_r(&c)).add(&DunklOperator::derivative())
}

fn y_operator(p: &YParams, eps: &Rational) -> DunklOperator {
    let (mu, g) = (&p.mu, &p.gamma);
    let g2 = g * g;
    let s = over_x_pow([g2.clone(), int(0), int(-1)], 2).scale(&rat(1, 4));
    // -T with T = g (x - g) / 4x^3
    let minus_t = over_x_pow([&g2 / int(4), -g / int(4)], 3);
    // x/2 + g/4x^2 - g^2/2x^3 - (mu + g^2)/2x
    let u = over_x_pow(
        [-&g2 / int(2), g / int(4), -(mu + &g2) / int(2), int(0), rat(1, 2)],
        3,
    );
    // 3g^2/8x^4 - g/4x^3 + (mu+g^2)/4x^2 + eps (x - g)/2x - 1/4
    let v = over_x_pow(
        [
            &g2 * rat(3, 8),
            -g / int(4),
            (mu + &g2) / int(4),
            -(eps * g) / int(2),
            eps / int(2) - rat(1, 4),
        ],
        4,
    );
    let mut terms = vec![
        term(s, 2, AffineMap::identity()),
        term(minus_t, 1, AffineMap::reflection()),
        term(u, 1, AffineMap::identity()),
    ];
    terms.extend(one_minus_r(&v));
    DunklOperator::new(terms)
}

fn cbi_operator(p: &CbiParams, alpha: &Rational) -> Result<DunklOperator> {
    let (p1, p2, r1, r2) = (&p.rho1, &p.rho2, &p.r1, &p.r2);
    let h = rat(1, 2);
    let fam = "cbi";
    // A = (x+p1+1)(x+p2+1)(x-r1+1/2)(x-r2+1/2) / 2(x+1)(2x+1)
    let a = ratfunc(
        &(&(&lin(p1 + int(1), 1) * &lin(p2 + int(1), 1)) * &lin(&h - r1, 1)) * &lin(&h - r2, 1),
        &lin(int(1), 1) * &lin(int(2), 4),
        fam,
    )?;
    // B = (x-p1-1)(x-p2)(x+r1-1/2)(x+r2-1/2) / 2x(2x-1)
    let b = ratfunc(
        &(&(&lin(-p1 - int(1), 1) * &lin(-p2, 1)) * &lin(r1 - &h, 1)) * &lin(r2 - &h, 1),
        &LaurentPoly::monomial(1, int(2)) * &lin(int(-1), 2),
        fam,
    )?;
    // C = (x+p1+1)(x-p2)(x-r1+1/2)(x-r2+1/2) / 2x(2x+1) + (alpha - x^2)(x-p2) / 2x
    let c_first = ratfunc(
        &(&(&lin(p1 + int(1), 1) * &lin(-p2, 1)) * &lin(&h - r1, 1)) * &lin(&h - r2, 1),
        &LaurentPoly::monomial(1, int(2)) * &lin(int(1), 2),
        fam,
    )?;
    let c_second = ratfunc(
        &LaurentPoly::from_coeffs([alpha.clone(), int(0), int(-1)]) * &lin(-p2, 1),
        LaurentPoly::monomial(1, int(2)),
        fam,
    )?;
    let c = &c_first + &c_second;
    // D = p2 (x+p1+1)(x-r1+1/2)(x-r2+1/2) / 2x(x+1)(2x+1)
    let d = ratfunc(
        (&(&lin(p1 + int(1), 1) * &lin(&h - r1, 1)) * &lin(&h - r2, 1)).scale(p2),
        &(&LaurentPoly::monomial(1, int(2)) * &lin(int(1), 1)) * &lin(int(1), 2),
        fam,
    )?;
    let t_plus = AffineMap::shift(int(1));
    let t_minus = AffineMap::shift(int(-1));
    let t_plus_r = AffineMap::new(Sign::Minus, int(-1));
    let id = AffineMap::identity;
    let r = AffineMap::reflection;
    Ok(DunklOperator::new([
        term(a.clone(), 0, t_plus),
        term(-&a, 0, id()),
        term(b.clone(), 0, t_minus),
        term(-&b, 0, r()),
        term(c.clone(), 0, id()),
        term(-&c, 0, r()),
        term(d.clone(), 0, t_plus_r),
        term(-&d, 0, id()),
    ]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dunklop::eigencheck;
    use crate::families::{generate_monic, Family};

    #[test]
    fn involution_terms() {
        let gamma = rat(1, 2);
        let p = OperatorSpec::InvolutionP { gamma: gamma.clone() }.build().unwrap();
        let expected = DunklOperator::new([
            term(over_x_pow([gamma.clone()], 1), 0, AffineMap::identity()),
            term(over_x_pow([-gamma, int(1)], 1), 0, AffineMap::reflection()),
        ]);
        assert_eq!(p, expected);
    }

    #[test]
    fn dunkl_derivative_terms() {
        let mu = rat(3, 4);
        let d = OperatorSpec::DunklDerivative { mu: mu.clone() }.build().unwrap();
        assert_eq!(d.terms().len(), 3);
        let expected = DunklOperator::new([
            term(RatFunc::one(), 1, AffineMap::identity()),
            term(over_x_pow([mu.clone()], 1), 0, AffineMap::identity()),
            term(over_x_pow([-mu], 1), 0, AffineMap::reflection()),
        ]);
        assert_eq!(d, expected);
    }

    #[test]
    fn chihara_low_degree_eigen() {
        let p = ChiharaParams::new(int(1), int(1), rat(1, 2));
        let eps = rat(2, 3);
        let spec = OperatorSpec::ChiharaD { params: p.clone(), eps: eps.clone() };
        let op = spec.build().unwrap();
        assert!(op.apply(&LaurentPoly::one()).unwrap().is_zero());
        let polys = generate_monic(&Family::Chihara(p), 3).unwrap();
        assert_eq!(spec.eigenvalue(1).unwrap(), eps);
        assert_eq!(spec.eigenvalue(2).unwrap(), int(4));
        for (n, c) in polys.iter().enumerate() {
            assert!(eigencheck(&op, c, &spec.eigenvalue(n).unwrap()).unwrap().is_zero());
        }
    }

    #[test]
    fn gegenbauer_q_second_eigenvalue() {
        let spec = OperatorSpec::GegenbauerQ { mu: rat(1, 3), alpha: rat(2, 5) };
        assert_eq!(spec.eigenvalue(2).unwrap(), -(int(3) + rat(4, 5) + rat(2, 3)) * int(2));
    }

    #[test]
    fn gaussian_ground_state() {
        let mu = rat(3, 4);
        let spec = OperatorSpec::GhOmegaTilde { mu: mu.clone(), eps: rat(1, 3) };
        let op = spec.build().unwrap();
        let psi0 = crate::dunklop::GaussianPoly::new(LaurentPoly::one());
        let out = op.apply_gaussian(&psi0).unwrap();
        assert_eq!(out.poly, LaurentPoly::constant(mu + rat(1, 2)));
    }
}
