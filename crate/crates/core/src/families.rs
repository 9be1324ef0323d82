//! Polynomial families, built both from their monic three-term recurrences
//! `x P_n = P_{n+1} + b_n P_n + u_n P_{n-1}` and, where one exists, from the
//! terminating hypergeometric closed form.

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{int, pochhammer, powi, rat, sign_pow, LaurentPoly, Rational};

fn half() -> Rational {
    rat(1, 2)
}

fn nonzero(family: &'static str, n: usize, what: &str, d: Rational) -> Result<Rational> {
    if d.is_zero() {
        Err(Error::DegenerateParameters {
            family,
            n,
            reason: format!("{what} vanishes"),
        })
    } else {
        Ok(d)
    }
}

/// Chihara parameters `(alpha, beta, gamma)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ChiharaParams {
    pub alpha: Rational,
    pub beta: Rational,
    pub gamma: Rational,
}

impl ChiharaParams {
    pub fn new(alpha: Rational, beta: Rational, gamma: Rational) -> Self {
        ChiharaParams { alpha, beta, gamma }
    }

    /// `alpha > -1` and `beta > -1`.
    pub fn is_positive_definite(&self) -> bool {
        self.alpha > int(-1) && self.beta > int(-1)
    }

    /// Sub-diagonal coefficient `sigma_n`; `sigma_0 = 0`.
    pub fn sigma(&self, n: usize) -> Result<Rational> {
        if n == 0 {
            return Ok(Rational::zero());
        }
        let (a, b) = (&self.alpha, &self.beta);
        let m = int((n / 2) as i64);
        let ab = a + b;
        if n % 2 == 0 {
            let den = (&m * int(2) + &ab) * (&m * int(2) + &ab + int(1));
            let den = nonzero("chihara", n, "2n+a+b (2n+a+b+1)", den)?;
            Ok(&m * (&m + b) / den)
        } else {
            let den = (&m * int(2) + &ab + int(1)) * (&m * int(2) + &ab + int(2));
            let den = nonzero("chihara", n, "(2n+a+b+1)(2n+a+b+2)", den)?;
            Ok((&m + a + int(1)) * (&m + &ab + int(1)) / den)
        }
    }
}

/// Complementary Bannai–Ito parameters.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CbiParams {
    pub rho1: Rational,
    pub rho2: Rational,
    pub r1: Rational,
    pub r2: Rational,
}

impl CbiParams {
    pub fn new(rho1: Rational, rho2: Rational, r1: Rational, r2: Rational) -> Self {
        CbiParams { rho1, rho2, r1, r2 }
    }

    /// `g = rho1 + rho2 - r1 - r2`
    pub fn g(&self) -> Rational {
        &self.rho1 + &self.rho2 - &self.r1 - &self.r2
    }

    /// `omega = rho1 (1 - r1 - r2) + r1 r2 - 3 (r1 + r2) / 2 + 5/4`
    pub fn omega(&self) -> Rational {
        let (r1, r2) = (&self.r1, &self.r2);
        &self.rho1 * (int(1) - r1 - r2) + r1 * r2 - (r1 + r2) * rat(3, 2) + rat(5, 4)
    }

    pub fn swapped(&self) -> Self {
        CbiParams::new(self.rho1.clone(), self.rho2.clone(), self.r2.clone(), self.r1.clone())
    }

    pub fn tau(&self, n: usize) -> Result<Rational> {
        if n == 0 {
            return Ok(Rational::zero());
        }
        let g = self.g();
        let m = int((n / 2) as i64);
        let (p1, p2, r1, r2) = (&self.rho1, &self.rho2, &self.r1, &self.r2);
        if n % 2 == 0 {
            let den = (&m * int(2) + &g) * (&m * int(2) + &g + int(1));
            let den = nonzero("cbi", n, "(2n+g)(2n+g+1)", den)?;
            let num = &m * (&m + p1 - r1 + half()) * (&m + p1 - r2 + half()) * (&m - r1 - r2);
            Ok(-num / den)
        } else {
            let den = (&m * int(2) + &g + int(1)) * (&m * int(2) + &g + int(2));
            let den = nonzero("cbi", n, "(2n+g+1)(2n+g+2)", den)?;
            let num = (&m + &g + int(1))
                * (&m + p1 + p2 + int(1))
                * (&m + p2 - r1 + half())
                * (&m + p2 - r2 + half());
            Ok(-num / den)
        }
    }
}

/// Big -1 Jacobi parameters `(a, b, c)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BigM1JacobiParams {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
}

impl BigM1JacobiParams {
    pub fn new(a: Rational, b: Rational, c: Rational) -> Self {
        BigM1JacobiParams { a, b, c }
    }

    /// `A_n`; also the ratio `J_{n+1}(1) / J_n(1)`.
    pub fn a_coeff(&self, n: usize) -> Result<Rational> {
        let (a, b, c) = (&self.a, &self.b, &self.c);
        let nn = int(n as i64);
        let den = nonzero("big-1-jacobi", n, "2n+a+b+2", &nn * int(2) + a + b + int(2))?;
        if n % 2 == 0 {
            Ok((int(1) + c) * (a + &nn + int(1)) / den)
        } else {
            Ok((int(1) - c) * (&nn + a + b + int(1)) / den)
        }
    }

    /// `C_n`, with `C_0 = 0`.
    pub fn c_coeff(&self, n: usize) -> Result<Rational> {
        if n == 0 {
            return Ok(Rational::zero());
        }
        let (a, b, c) = (&self.a, &self.b, &self.c);
        let nn = int(n as i64);
        let den = nonzero("big-1-jacobi", n, "2n+a+b", &nn * int(2) + a + b)?;
        if n % 2 == 0 {
            Ok((int(1) - c) * &nn / den)
        } else {
            Ok((int(1) + c) * (&nn + b) / den)
        }
    }

    /// Closed-form diagonal `(-1)^{n+1} c` of the kernel-polynomial recurrence.
    pub fn kernel_diag(&self, n: usize) -> Rational {
        -sign_pow(n) * &self.c
    }

    /// Closed-form `f_n` of the kernel-polynomial recurrence.
    pub fn kernel_sub(&self, n: usize) -> Result<Rational> {
        if n == 0 {
            return Ok(Rational::zero());
        }
        let (a, b, c) = (&self.a, &self.b, &self.c);
        let nn = int(n as i64);
        let den = (&nn * int(2) + a + b) * (&nn * int(2) + a + b + int(2));
        let den = nonzero("big-1-jacobi kernel", n, "(2n+a+b)(2n+a+b+2)", den)?;
        let one_mc2 = int(1) - c * c;
        if n % 2 == 0 {
            Ok(one_mc2 * &nn * (&nn + a + int(1)) / den)
        } else {
            Ok(one_mc2 * (&nn + b) * (&nn + a + b + int(1)) / den)
        }
    }
}

/// Big q-Jacobi parameters with rational `q`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BigQJacobiParams {
    pub qalpha: Rational,
    pub qbeta: Rational,
    pub qgamma: Rational,
    pub q: Rational,
}

impl BigQJacobiParams {
    pub fn new(qalpha: Rational, qbeta: Rational, qgamma: Rational, q: Rational) -> Self {
        BigQJacobiParams {
            qalpha,
            qbeta,
            qgamma,
            q,
        }
    }

    pub fn upsilon(&self, n: usize) -> Result<Rational> {
        let (al, be, ga) = (&self.qalpha, &self.qbeta, &self.qgamma);
        let qp = |k: i64| powi(&self.q, k);
        let k = n as i64;
        let ab = al * be;
        let den = (int(1) - &ab * qp(2 * k + 1)) * (int(1) - &ab * qp(2 * k + 2));
        let den = nonzero("big-q-jacobi", n, "(1-ab q^{2n+1})(1-ab q^{2n+2})", den)?;
        let num = (int(1) - al * qp(k + 1)) * (int(1) - &ab * qp(k + 1)) * (int(1) - ga * qp(k + 1));
        Ok(num / den)
    }

    /// Uses the factor `(1 - q^n)`; `nu_0 = 0`.
    pub fn nu(&self, n: usize) -> Result<Rational> {
        if n == 0 {
            return Ok(Rational::zero());
        }
        let (al, be, ga) = (&self.qalpha, &self.qbeta, &self.qgamma);
        if ga.is_zero() {
            return Err(Error::DegenerateParameters {
                family: "big-q-jacobi",
                n,
                reason: "gamma must be nonzero".into(),
            });
        }
        let qp = |k: i64| powi(&self.q, k);
        let k = n as i64;
        let ab = al * be;
        let den = (int(1) - &ab * qp(2 * k)) * (int(1) - &ab * qp(2 * k + 1));
        let den = nonzero("big-q-jacobi", n, "(1-ab q^{2n})(1-ab q^{2n+1})", den)?;
        let num = -(al * ga) * qp(k + 1)
            * (int(1) - qp(k))
            * (int(1) - &ab / ga * qp(k))
            * (int(1) - be * qp(k));
        Ok(num / den)
    }
}

/// Parameters of the one-parameter extension of the generalized Hermite family.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct YParams {
    pub mu: Rational,
    pub gamma: Rational,
}

impl YParams {
    pub fn new(mu: Rational, gamma: Rational) -> Self {
        YParams { mu, gamma }
    }

    /// `theta_{2n} = n`, `theta_{2n+1} = n + mu + 1/2`.
    pub fn theta(&self, n: usize) -> Rational {
        if n == 0 {
            return Rational::zero();
        }
        let m = int((n / 2) as i64);
        if n % 2 == 0 {
            m
        } else {
            m + &self.mu + half()
        }
    }
}

/// Identifier of a polynomial family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyId {
    Chihara,
    Cbi,
    BigMinusOneJacobi,
    BigQJacobi,
    Gegenbauer,
    Y,
    GeneralizedHermite,
    ClassicalJacobi,
}

impl FamilyId {
    pub fn name(self) -> &'static str {
        match self {
            FamilyId::Chihara => "chihara",
            FamilyId::Cbi => "cbi",
            FamilyId::BigMinusOneJacobi => "big-1-jacobi",
            FamilyId::BigQJacobi => "big-q-jacobi",
            FamilyId::Gegenbauer => "gegenbauer",
            FamilyId::Y => "y",
            FamilyId::GeneralizedHermite => "gen-hermite",
            FamilyId::ClassicalJacobi => "jacobi",
        }
    }
}

impl std::str::FromStr for FamilyId {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Ok(match s {
            "chihara" => FamilyId::Chihara,
            "cbi" => FamilyId::Cbi,
            "big-1-jacobi" | "big-minus-one-jacobi" => FamilyId::BigMinusOneJacobi,
            "big-q-jacobi" => FamilyId::BigQJacobi,
            "gegenbauer" => FamilyId::Gegenbauer,
            "y" => FamilyId::Y,
            "gen-hermite" | "hermite" => FamilyId::GeneralizedHermite,
            "jacobi" => FamilyId::ClassicalJacobi,
            other => return Err(format!("unknown family {other:?}")),
        })
    }
}

/// A polynomial family with its parameters.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Family {
    Chihara(ChiharaParams),
    Cbi(CbiParams),
    BigMinusOneJacobi(BigM1JacobiParams),
    BigQJacobi(BigQJacobiParams),
    /// Chihara at `gamma = 0`.
    Gegenbauer { alpha: Rational, beta: Rational },
    Y(YParams),
    /// `Y` at `gamma = 0`.
    GeneralizedHermite { mu: Rational },
    /// Monic Jacobi polynomials for the weight `(1-z)^alpha (1+z)^beta` on `[-1, 1]`.
    ClassicalJacobi { alpha: Rational, beta: Rational },
}

impl Family {
    pub fn id(&self) -> FamilyId {
        match self {
            Family::Chihara(_) => FamilyId::Chihara,
            Family::Cbi(_) => FamilyId::Cbi,
            Family::BigMinusOneJacobi(_) => FamilyId::BigMinusOneJacobi,
            Family::BigQJacobi(_) => FamilyId::BigQJacobi,
            Family::Gegenbauer { .. } => FamilyId::Gegenbauer,
            Family::Y(_) => FamilyId::Y,
            Family::GeneralizedHermite { .. } => FamilyId::GeneralizedHermite,
            Family::ClassicalJacobi { .. } => FamilyId::ClassicalJacobi,
        }
    }

    pub fn name(&self) -> &'static str {
        self.id().name()
    }

    /// Named parameter tuple, in a fixed order.
    pub fn params(&self) -> Vec<(&'static str, Rational)> {
        match self {
            Family::Chihara(p) => vec![
                ("alpha", p.alpha.clone()),
                ("beta", p.beta.clone()),
                ("gamma", p.gamma.clone()),
            ],
            Family::Cbi(p) => vec![
                ("rho1", p.rho1.clone()),
                ("rho2", p.rho2.clone()),
                ("r1", p.r1.clone()),
                ("r2", p.r2.clone()),
            ],
            Family::BigMinusOneJacobi(p) => {
                vec![("a", p.a.clone()), ("b", p.b.clone()), ("c", p.c.clone())]
            }
            Family::BigQJacobi(p) => vec![
                ("qalpha", p.qalpha.clone()),
                ("qbeta", p.qbeta.clone()),
                ("qgamma", p.qgamma.clone()),
                ("q", p.q.clone()),
            ],
            Family::Gegenbauer { alpha, beta } | Family::ClassicalJacobi { alpha, beta } => {
                vec![("alpha", alpha.clone()), ("beta", beta.clone())]
            }
            Family::Y(p) => vec![("mu", p.mu.clone()), ("gamma", p.gamma.clone())],
            Family::GeneralizedHermite { mu } => vec![("mu", mu.clone())],
        }
    }

    /// `(b_n, u_n)` of the monic recurrence; `u_0 = 0`.
    pub fn recurrence_coeffs(&self, n: usize) -> Result<(Rational, Rational)> {
        match self {
            Family::Chihara(p) => Ok((sign_pow(n) * &p.gamma, p.sigma(n)?)),
            Family::Cbi(p) => Ok((sign_pow(n) * &p.rho2, p.tau(n)?)),
            Family::BigMinusOneJacobi(p) => {
                let diag = int(1) - p.a_coeff(n)? - p.c_coeff(n)?;
                let sub = if n == 0 {
                    Rational::zero()
                } else {
                    p.a_coeff(n - 1)? * p.c_coeff(n)?
                };
                Ok((diag, sub))
            }
            Family::BigQJacobi(p) => {
                let diag = int(1) - p.upsilon(n)? - p.nu(n)?;
                let sub = if n == 0 {
                    Rational::zero()
                } else {
                    p.upsilon(n - 1)? * p.nu(n)?
                };
                Ok((diag, sub))
            }
            Family::Gegenbauer { alpha, beta } => {
                let c = ChiharaParams::new(alpha.clone(), beta.clone(), Rational::zero());
                Ok((Rational::zero(), c.sigma(n)?))
            }
            Family::Y(p) => Ok((sign_pow(n) * &p.gamma, p.theta(n))),
            Family::GeneralizedHermite { mu } => {
                let p = YParams::new(mu.clone(), Rational::zero());
                Ok((Rational::zero(), p.theta(n)))
            }
            Family::ClassicalJacobi { alpha, beta } => jacobi_coeffs(n, alpha, beta),
        }
    }
}

fn jacobi_coeffs(n: usize, a: &Rational, b: &Rational) -> Result<(Rational, Rational)> {
    let ab = a + b;
    let nn = int(n as i64);
    let diag = if n == 0 {
        (b - a) / nonzero("jacobi", n, "a+b+2", &ab + int(2))?
    } else {
        let den = (&nn * int(2) + &ab) * (&nn * int(2) + &ab + int(2));
        (b * b - a * a) / nonzero("jacobi", n, "(2n+a+b)(2n+a+b+2)", den)?
    };
    let sub = match n {
        0 => Rational::zero(),
        1 => {
            let den = (&ab + int(2)) * (&ab + int(2)) * (&ab + int(3));
            int(4) * (a + int(1)) * (b + int(1)) / nonzero("jacobi", n, "(a+b+2)^2 (a+b+3)", den)?
        }
        _ => {
            let s = &nn * int(2) + &ab;
            let den = &s * &s * (&s + int(1)) * (&s - int(1));
            let num = int(4) * &nn * (&nn + a) * (&nn + b) * (&nn + &ab);
            num / nonzero("jacobi", n, "(2n+a+b)^2 (2n+a+b+1)(2n+a+b-1)", den)?
        }
    };
    Ok((diag, sub))
}

/// Monic polynomials `P_0..=P_N` from `P_{n+1} = (x - b_n) P_n - u_n P_{n-1}`.
pub fn generate_monic(family: &Family, n_max: usize) -> Result<Vec<LaurentPoly>> {
    let mut out = Vec::with_capacity(n_max + 1);
    out.push(LaurentPoly::one());
    for n in 0..n_max {
        let (diag, sub) = family.recurrence_coeffs(n)?;
        let mut next = &LaurentPoly::linear_root(&diag) * &out[n];
        if n > 0 {
            next = &next - &out[n - 1].scale(&sub);
        }
        out.push(next);
    }
    Ok(out)
}

/// Terminating series `Σ_{k=0}^{n} Π(a_i)_k / Π(d_j)_k · z^k / k!` with rational
/// numerator parameters, the first of which is `-n`.
pub fn hypergeometric_terminating(
    num_params: &[Rational],
    den_params: &[Rational],
    argument: &LaurentPoly,
) -> Result<LaurentPoly> {
    let polys: Vec<LaurentPoly> = num_params.iter().cloned().map(LaurentPoly::constant).collect();
    hypergeometric_terminating_poly(&polys, den_params, argument)
}

/// As [`hypergeometric_terminating`], but numerator parameters may be polynomials
/// in `x` (needed for `(rho2 ± x)_k`). The first parameter must be the constant `-n`.
pub fn hypergeometric_terminating_poly(
    num_params: &[LaurentPoly],
    den_params: &[Rational],
    argument: &LaurentPoly,
) -> Result<LaurentPoly> {
    let first = num_params
        .first()
        .ok_or_else(|| Error::NonTerminatingSeries("no numerator parameters".into()))?;
    let n = terminating_order(first)?;
    let mut total = LaurentPoly::one();
    let mut term = LaurentPoly::one();
    for k in 1..=n {
        let shift = int(k as i64 - 1);
        for a in num_params {
            let mut factor = a.clone();
            factor.add_term(0, shift.clone());
            term = &term * &factor;
        }
        let mut scalar = int(k as i64);
        for d in den_params {
            let f = d + &shift;
            if f.is_zero() {
                return Err(Error::DenominatorPochhammerZero { k });
            }
            scalar *= f;
        }
        term = (&term * argument).scale(&scalar.recip());
        total = &total + &term;
    }
    Ok(total)
}

fn terminating_order(first: &LaurentPoly) -> Result<usize> {
    let bad = || Error::NonTerminatingSeries(first.to_string());
    if first.degree().is_some_and(|d| d != 0) || !first.is_polynomial() {
        return Err(bad());
    }
    let c = first.coeff(0);
    if !c.is_integer() || c.is_positive() {
        return Err(bad());
    }
    (-c).to_integer().to_usize().ok_or_else(bad)
}

fn x_squared_minus(c: &Rational) -> LaurentPoly {
    let mut p = LaurentPoly::monomial(2, Rational::one());
    p.add_term(0, -(c * c));
    p
}

fn prefactor(num: Rational, den: Rational, family: &'static str, n: usize) -> Result<Rational> {
    Ok(num / nonzero(family, n, "prefactor denominator", den)?)
}

/// Closed-form (hypergeometric) construction of `P_n`.
pub fn explicit_poly(family: &Family, n: usize) -> Result<LaurentPoly> {
    let m = n / 2;
    let mi = int(m as i64);
    let odd = n % 2 == 1;
    match family {
        Family::Chihara(p) => chihara_explicit(&p.alpha, &p.beta, &p.gamma, n, "chihara"),
        Family::Gegenbauer { alpha, beta } => {
            chihara_explicit(alpha, beta, &Rational::zero(), n, "gegenbauer")
        }
        Family::Y(p) => y_explicit(&p.mu, &p.gamma, n),
        Family::GeneralizedHermite { mu } => y_explicit(mu, &Rational::zero(), n),
        Family::Cbi(p) => {
            let g = p.g();
            let (p1, p2, r1, r2) = (&p.rho1, &p.rho2, &p.r1, &p.r2);
            let k = if odd { int(1) } else { int(0) };
            // (rho2 + x + k), (rho2 - x + k)
            let plus = {
                let mut q = LaurentPoly::x();
                q.add_term(0, p2 + &k);
                q
            };
            let minus = {
                let mut q = LaurentPoly::monomial(1, int(-1));
                q.add_term(0, p2 + &k);
                q
            };
            let d1 = p1 + p2 + int(1) + &k;
            let d2 = p2 - r1 + half() + &k;
            let d3 = p2 - r2 + half() + &k;
            let top = &mi + &g + int(1) + &k;
            let eta = prefactor(
                pochhammer(&d1, m) * pochhammer(&d2, m) * pochhammer(&d3, m),
                pochhammer(&top, m),
                "cbi",
                n,
            )?;
            let series = hypergeometric_terminating_poly(
                &[LaurentPoly::constant(-mi.clone()), LaurentPoly::constant(top), plus, minus],
                &[d1, d2, d3],
                &LaurentPoly::one(),
            )?;
            let body = series.scale(&eta);
            Ok(if odd {
                &LaurentPoly::linear_root(p2) * &body
            } else {
                body
            })
        }
        Family::BigMinusOneJacobi(_) | Family::BigQJacobi(_) | Family::ClassicalJacobi { .. } => {
            Err(Error::NoExplicitForm {
                family: family.name(),
            })
        }
    }
}

fn chihara_explicit(
    alpha: &Rational,
    beta: &Rational,
    gamma: &Rational,
    n: usize,
    family: &'static str,
) -> Result<LaurentPoly> {
    let m = n / 2;
    let mi = int(m as i64);
    let k = if n % 2 == 1 { int(1) } else { int(0) };
    let base = alpha + int(1) + &k;
    let top = &mi + alpha + beta + int(1) + &k;
    let pre = sign_pow(m) * prefactor(pochhammer(&base, m), pochhammer(&top, m), family, n)?;
    let series =
        hypergeometric_terminating(&[-mi, top], &[base], &x_squared_minus(gamma))?.scale(&pre);
    Ok(if n % 2 == 1 {
        &LaurentPoly::linear_root(gamma) * &series
    } else {
        series
    })
}

fn y_explicit(mu: &Rational, gamma: &Rational, n: usize) -> Result<LaurentPoly> {
    let m = n / 2;
    let k = if n % 2 == 1 { rat(3, 2) } else { half() };
    let base = mu + k;
    let pre = sign_pow(m) * pochhammer(&base, m);
    let series =
        hypergeometric_terminating(&[-int(m as i64)], &[base], &x_squared_minus(gamma))?.scale(&pre);
    Ok(if n % 2 == 1 {
        &LaurentPoly::linear_root(gamma) * &series
    } else {
        series
    })
}

/// Monic Jacobi polynomial of degree `n` for the weight `(1-z)^alpha (1+z)^beta`.
pub fn classical_jacobi_monic(n: usize, alpha: &Rational, beta: &Rational) -> Result<LaurentPoly> {
    let fam = Family::ClassicalJacobi {
        alpha: alpha.clone(),
        beta: beta.clone(),
    };
    Ok(generate_monic(&fam, n)?.pop().unwrap())
}

/// `p(q(x))` by Horner's rule.
fn compose_poly(p: &LaurentPoly, q: &LaurentPoly) -> LaurentPoly {
    let deg = p.degree().unwrap_or(0);
    let mut acc = LaurentPoly::zero();
    for e in (0..=deg).rev() {
        acc = &acc * q;
        acc.add_term(0, p.coeff(e));
    }
    acc
}

/// Chihara polynomial rebuilt from monic Jacobi polynomials in `y = 1 - 2x² + 2γ²`:
/// `C_{2m} = (-2)^{-m} P_m^{(α,β)}(y)` and `C_{2m+1} = (x - γ)(-2)^{-m} P_m^{(α+1,β)}(y)`.
pub fn jacobi_connection(params: &ChiharaParams, n: usize) -> Result<LaurentPoly> {
    let m = n / 2;
    let g = &params.gamma;
    let y = LaurentPoly::from_coeffs([int(1) + int(2) * g * g, int(0), int(-2)]);
    let alpha = if n % 2 == 1 { &params.alpha + int(1) } else { params.alpha.clone() };
    let jac = classical_jacobi_monic(m, &alpha, &params.beta)?;
    let even = compose_poly(&jac, &y).scale(&powi(&rat(-1, 2), m as i64));
    Ok(if n % 2 == 1 {
        &LaurentPoly::linear_root(g) * &even
    } else {
        even
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chihara(a: Rational, b: Rational, g: Rational) -> Family {
        Family::Chihara(ChiharaParams::new(a, b, g))
    }

    #[test]
    fn chihara_coefficients() {
        let f = chihara(int(1), int(1), rat(1, 2));
        assert_eq!(f.recurrence_coeffs(1).unwrap(), (rat(-1, 2), rat(1, 2)));
        assert_eq!(f.recurrence_coeffs(2).unwrap(), (rat(1, 2), rat(1, 10)));
    }

    #[test]
    fn big_minus_one_jacobi_sub() {
        let f = Family::BigMinusOneJacobi(BigM1JacobiParams::new(int(1), int(1), rat(3, 5)));
        assert_eq!(f.recurrence_coeffs(1).unwrap().1, rat(16, 25));
    }

    #[test]
    fn y_coefficients() {
        let f = Family::Y(YParams::new(rat(3, 2), rat(1, 3)));
        assert_eq!(f.recurrence_coeffs(1).unwrap(), (rat(-1, 3), int(2)));
    }

    #[test]
    fn degenerate_denominator_reported() {
        // 2m + a + b vanishes at n = 2 when a + b = -2
        let f = chihara(rat(-3, 2), rat(-1, 2), int(0));
        assert!(matches!(
            f.recurrence_coeffs(2),
            Err(Error::DegenerateParameters { n: 2, .. })
        ));
    }

    #[test]
    fn generate_small_cases() {
        let f = chihara(int(1), int(1), rat(1, 2));
        assert_eq!(generate_monic(&f, 0).unwrap(), vec![LaurentPoly::one()]);
        let ps = generate_monic(&f, 2).unwrap();
        assert_eq!(ps[1], LaurentPoly::linear_root(&rat(1, 2)));
        assert_eq!(ps[2].to_string(), "x^2 - 3/4");
    }

    #[test]
    fn hypergeometric_examples() {
        let z = LaurentPoly::x();
        let two_term = hypergeometric_terminating(&[int(-1), int(5)], &[int(2)], &z).unwrap();
        assert_eq!(two_term, LaurentPoly::from_coeffs([int(1), rat(-5, 2)]));
        let trivial = hypergeometric_terminating(&[int(0)], &[int(3)], &z).unwrap();
        assert_eq!(trivial, LaurentPoly::one());
        let quad = hypergeometric_terminating(&[int(-2), int(4)], &[int(2)], &z).unwrap();
        assert_eq!(quad, LaurentPoly::from_coeffs([int(1), int(-4), rat(10, 3)]));
    }

    #[test]
    fn hypergeometric_errors() {
        let z = LaurentPoly::x();
        assert_eq!(
            hypergeometric_terminating(&[int(-2)], &[int(-1)], &z),
            Err(Error::DenominatorPochhammerZero { k: 2 })
        );
        assert!(matches!(
            hypergeometric_terminating(&[rat(1, 2)], &[int(1)], &z),
            Err(Error::NonTerminatingSeries(_))
        ));
    }

    #[test]
    fn explicit_small_cases() {
        let f = chihara(int(1), int(1), rat(1, 2));
        assert_eq!(explicit_poly(&f, 1).unwrap(), LaurentPoly::linear_root(&rat(1, 2)));
        assert_eq!(explicit_poly(&f, 2).unwrap().to_string(), "x^2 - 3/4");
        let cbi = Family::Cbi(CbiParams::new(rat(5, 2), rat(3, 4), rat(1, 3), rat(2, 7)));
        assert_eq!(explicit_poly(&cbi, 1).unwrap(), LaurentPoly::linear_root(&rat(3, 4)));
        let j = Family::BigMinusOneJacobi(BigM1JacobiParams::new(int(1), int(1), rat(3, 5)));
        assert!(matches!(explicit_poly(&j, 2), Err(Error::NoExplicitForm { .. })));
    }

    /// Gram–Schmidt against exact moments of (1-z)^a (1+z)^b on [-1, 1], integer a, b >= 0.
    fn gram_schmidt_jacobi(n: usize, a: u32, b: u32) -> LaurentPoly {
        let one_minus = LaurentPoly::from_coeffs([int(1), int(-1)]);
        let one_plus = LaurentPoly::from_coeffs([int(1), int(1)]);
        let w = &one_minus.pow(a) * &one_plus.pow(b);
        let integrate = |p: &LaurentPoly| -> Rational {
            let q = p * &w;
            q.terms()
                .map(|(e, c)| {
                    if e % 2 == 1 {
                        Rational::zero()
                    } else {
                        c * rat(2, e + 1)
                    }
                })
                .sum()
        };
        let mut basis: Vec<LaurentPoly> = Vec::new();
        for k in 0..=n {
            let mut v = LaurentPoly::monomial(k as i64, int(1));
            for q in &basis {
                let c = integrate(&(&v * q)) / integrate(&(q * q));
                v = &v - &q.scale(&c);
            }
            basis.push(v);
        }
        basis.pop().unwrap()
    }

    #[test]
    fn classical_jacobi_matches_gram_schmidt() {
        assert_eq!(classical_jacobi_monic(0, &int(0), &int(0)).unwrap(), LaurentPoly::one());
        assert_eq!(classical_jacobi_monic(1, &int(0), &int(0)).unwrap(), LaurentPoly::x());
        assert_eq!(
            classical_jacobi_monic(2, &int(0), &int(0)).unwrap(),
            LaurentPoly::from_coeffs([rat(-1, 3), int(0), int(1)])
        );
        for (a, b) in [(0u32, 0u32), (1, 2), (3, 1), (2, 2)] {
            for n in 0..6 {
                let direct =
                    classical_jacobi_monic(n, &int(a as i64), &int(b as i64)).unwrap();
                assert_eq!(direct, gram_schmidt_jacobi(n, a, b), "a={a} b={b} n={n}");
            }
        }
    }

    #[test]
    fn jacobi_connection_matches_recurrence() {
        for p in [
            ChiharaParams::new(int(1), int(1), rat(1, 2)),
            ChiharaParams::new(rat(-1, 3), rat(5, 2), rat(-2, 7)),
        ] {
            let ps = generate_monic(&Family::Chihara(p.clone()), 8).unwrap();
            for (n, c) in ps.iter().enumerate() {
                assert_eq!(&jacobi_connection(&p, n).unwrap(), c, "n={n}");
            }
        }
    }

    #[test]
    fn cbi_symmetric_in_r1_r2() {
        let p = CbiParams::new(rat(5, 2), rat(3, 4), rat(1, 3), rat(2, 7));
        let a = generate_monic(&Family::Cbi(p.clone()), 8).unwrap();
        let b = generate_monic(&Family::Cbi(p.swapped()), 8).unwrap();
        assert_eq!(a, b);
        for n in 0..=8 {
            assert_eq!(explicit_poly(&Family::Cbi(p.swapped()), n).unwrap(), a[n]);
        }
    }

    #[test]
    fn big_q_jacobi_monic_generation() {
        let f = Family::BigQJacobi(BigQJacobiParams::new(rat(1, 3), rat(1, 5), rat(2, 7), rat(1, 2)));
        let ps = generate_monic(&f, 6).unwrap();
        for (n, p) in ps.iter().enumerate() {
            assert_eq!(p.degree(), Some(n as i64));
            assert!(p.is_monic());
        }
    }
}
