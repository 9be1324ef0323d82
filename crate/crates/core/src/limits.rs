//! Floating-point verification of the three limit processes that land on the
//! Chihara and Y families, with measured convergence orders.
//!
//! Every case is reduced to the same shape: for a step `h` the source family,
//! already rescaled, yields monic recurrence coefficients `(b_n(h), u_n(h))`.
//! These are compared against the target coefficients and the polynomials they
//! generate, and the errors are tracked along a geometric step sequence.

use std::fmt;
use std::str::FromStr;

use num_traits::One;

use crate::error::{Error, Result};
use crate::exactnum::{int, rat, to_f64, Rational};
use crate::families::{CbiParams, ChiharaParams, YParams};

/// Errors below this level at every step are treated as exact and not tracked.
const NOISE_FLOOR: f64 = 1e-13;

/// Accepted band for empirical convergence orders.
pub const ORDER_BAND: (f64, f64) = (0.8, 1.2);

/// Largest relative drift allowed between the last two β→∞ constants.
pub const CONSTANT_DRIFT: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LimitId {
    CbiHTo0,
    BigQQToMinus1,
    ChiharaBetaToInf,
}

impl LimitId {
    pub const ALL: [LimitId; 3] = [LimitId::CbiHTo0, LimitId::BigQQToMinus1, LimitId::ChiharaBetaToInf];

    pub fn name(self) -> &'static str {
        match self {
            LimitId::CbiHTo0 => "cbi_h_to_0",
            LimitId::BigQQToMinus1 => "bigq_q_to_minus1",
            LimitId::ChiharaBetaToInf => "chihara_beta_to_inf",
        }
    }
}

impl fmt::Display for LimitId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for LimitId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        LimitId::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| Error::InvalidLimitCase(format!("unknown limit case {s:?}")))
    }
}

/// Source parameters of a limit case; the step enters through the maps below.
#[derive(Debug, Clone, PartialEq)]
pub enum LimitParams {
    /// CBI with `rho_i = a_i/h + b_i`, `r_i = a_i/h`; target Chihara
    /// `(b2 - 1/2, b1 + 1/2, a2/s)` with `s = sqrt(a1² - a2²)`.
    Cbi { a1: Rational, a2: Rational, b1: Rational, b2: Rational },
    /// Big q-Jacobi with `q = -e^ε`, `A = e^{2εβ}`, `B = -e^{ε(2α+1)}`, `G = -g`;
    /// target Chihara `(α, β, g/sqrt(1 - g²))` after `x -> x sqrt(1 - g²)`.
    BigQ { alpha: Rational, beta: Rational, g: Rational },
    /// Chihara with `β = 1/h` and `x -> x/sqrt(β)`; target Y `(μ, γ)` with `α = μ - 1/2`.
    BetaInf { mu: Rational, gamma: Rational },
}

impl LimitParams {
    pub fn default_for(id: LimitId) -> Self {
        match id {
            LimitId::CbiHTo0 => LimitParams::Cbi {
                a1: int(5),
                a2: int(3),
                b1: rat(3, 2),
                b2: rat(1, 2),
            },
            LimitId::BigQQToMinus1 => LimitParams::BigQ {
                alpha: rat(1, 2),
                beta: rat(3, 2),
                g: rat(3, 10),
            },
            LimitId::ChiharaBetaToInf => LimitParams::BetaInf {
                mu: int(1),
                gamma: rat(1, 3),
            },
        }
    }

    pub fn id(&self) -> LimitId {
        match self {
            LimitParams::Cbi { .. } => LimitId::CbiHTo0,
            LimitParams::BigQ { .. } => LimitId::BigQQToMinus1,
            LimitParams::BetaInf { .. } => LimitId::ChiharaBetaToInf,
        }
    }

    pub fn named(&self) -> Vec<(&'static str, Rational)> {
        match self {
            LimitParams::Cbi { a1, a2, b1, b2 } => {
                vec![("a1", a1.clone()), ("a2", a2.clone()), ("b1", b1.clone()), ("b2", b2.clone())]
            }
            LimitParams::BigQ { alpha, beta, g } => {
                vec![("alpha", alpha.clone()), ("beta", beta.clone()), ("g", g.clone())]
            }
            LimitParams::BetaInf { mu, gamma } => vec![("mu", mu.clone()), ("gamma", gamma.clone())],
        }
    }

    fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidLimitCase(m.to_string()));
        match self {
            LimitParams::Cbi { a1, a2, .. } if a1 * a1 <= a2 * a2 => bad("cbi limit needs a1² > a2²"),
            LimitParams::BigQ { g, .. } if g * g >= Rational::one() => bad("big q limit needs |g| < 1"),
            _ => Ok(()),
        }
    }

    /// Target `(b_n, u_n)` in floating point.
    fn target(&self, n: usize) -> Result<(f64, f64)> {
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        match self {
            LimitParams::Cbi { a1, a2, b1, b2 } => {
                let s = to_f64(&(a1 * a1 - a2 * a2)).sqrt();
                let c = ChiharaParams::new(b2 - rat(1, 2), b1 + rat(1, 2), int(0));
                Ok((sign * to_f64(a2) / s, to_f64(&c.sigma(n)?)))
            }
            LimitParams::BigQ { alpha, beta, g } => {
                let gf = to_f64(g);
                let c = ChiharaParams::new(alpha.clone(), beta.clone(), int(0));
                Ok((sign * gf / (1.0 - gf * gf).sqrt(), to_f64(&c.sigma(n)?)))
            }
            LimitParams::BetaInf { mu, gamma } => {
                let y = YParams::new(mu.clone(), gamma.clone());
                Ok((sign * to_f64(gamma), to_f64(&y.theta(n))))
            }
        }
    }

    /// Rescaled source `(b_n(h), u_n(h))`.
    fn source(&self, h: f64, n: usize) -> Result<(f64, f64)> {
        let degenerate = |_| Error::DegenerateStep { step: h, n };
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        let hr = Rational::from_float(h).filter(|r| *r > int(0)).ok_or(Error::DegenerateStep { step: h, n })?;
        let out = match self {
            LimitParams::Cbi { a1, a2, b1, b2 } => {
                let s2 = to_f64(&(a1 * a1 - a2 * a2));
                let (r1, r2) = (a1 / &hr, a2 / &hr);
                let p = CbiParams::new(&r1 + b1, &r2 + b2, r1, r2);
                let tau = p.tau(n).map_err(degenerate)?;
                (sign * to_f64(&(&p.rho2 * &hr)) / s2.sqrt(), to_f64(&(tau * &hr * &hr)) / s2)
            }
            LimitParams::BetaInf { mu, gamma } => {
                let beta = Rational::one() / &hr;
                let c = ChiharaParams::new(mu - rat(1, 2), beta.clone(), gamma.clone());
                let sigma = c.sigma(n).map_err(degenerate)?;
                (sign * to_f64(gamma), to_f64(&(sigma * beta)))
            }
            LimitParams::BigQ { alpha, beta, g } => {
                let q = BigQFloat::new(h, to_f64(alpha), to_f64(beta), to_f64(g));
                let s2 = 1.0 - q.g * q.g;
                let diag = 1.0 - q.upsilon(n) - q.nu(n);
                let sub = if n == 0 { 0.0 } else { q.upsilon(n - 1) * q.nu(n) };
                (diag / s2.sqrt(), sub / s2)
            }
        };
        if out.0.is_finite() && out.1.is_finite() {
            Ok(out)
        } else {
            Err(Error::DegenerateStep { step: h, n })
        }
    }
}

/// Big q-Jacobi coefficients at `q = -e^ε`. Every factor `1 - c q^k` with `c` a
/// signed exponential is evaluated as `1 ∓ e^{x}` through `expm1` so that the
/// vanishing factors keep full relative precision as `ε -> 0`.
struct BigQFloat {
    eps: f64,
    alpha: f64,
    beta: f64,
    g: f64,
}

impl BigQFloat {
    fn new(eps: f64, alpha: f64, beta: f64, g: f64) -> Self {
        BigQFloat { eps, alpha, beta, g }
    }

    /// `1 - sign·e^{expo}`
    fn one_minus(sign: f64, expo: f64) -> f64 {
        if sign > 0.0 {
            -expo.exp_m1()
        } else {
            1.0 + expo.exp()
        }
    }

    fn parity(k: usize) -> f64 {
        if k % 2 == 0 {
            1.0
        } else {
            -1.0
        }
    }

    /// `1 - AB q^j`, with `AB = -e^{ε(2α+2β+1)}`.
    fn one_minus_abq(&self, j: usize) -> f64 {
        let e = self.eps;
        Self::one_minus(-Self::parity(j), e * (2.0 * self.alpha + 2.0 * self.beta + 1.0 + j as f64))
    }

    fn upsilon(&self, k: usize) -> f64 {
        let (e, kf) = (self.eps, k as f64);
        let p = Self::parity(k + 1);
        let a = Self::one_minus(p, e * (2.0 * self.beta + kf + 1.0));
        let ab = self.one_minus_abq(k + 1);
        // 1 - G q^{k+1} with G = -g
        let gq = 1.0 + self.g * p * (e * (kf + 1.0)).exp();
        a * ab * gq / (self.one_minus_abq(2 * k + 1) * self.one_minus_abq(2 * k + 2))
    }

    fn nu(&self, k: usize) -> f64 {
        if k == 0 {
            return 0.0;
        }
        let (e, kf) = (self.eps, k as f64);
        let p = Self::parity(k);
        // -A G q^{k+1} = g e^{ε(2β+k+1)} (-1)^{k+1}
        let lead = self.g * Self::parity(k + 1) * (e * (2.0 * self.beta + kf + 1.0)).exp();
        let qk = Self::one_minus(p, e * kf);
        // 1 - (AB/G) q^k = 1 - (1/g) e^{ε(2α+2β+1+k)} (-1)^k
        let abg = 1.0 - p * (e * (2.0 * self.alpha + 2.0 * self.beta + 1.0 + kf)).exp() / self.g;
        // 1 - B q^k = 1 + (-1)^k e^{ε(2α+1+k)}
        let bq = Self::one_minus(-p, e * (2.0 * self.alpha + 1.0 + kf));
        lead * qk * abg * bq / (self.one_minus_abq(2 * k) * self.one_minus_abq(2 * k + 1))
    }
}

/// A limit process together with its step sequence.
#[derive(Debug, Clone, PartialEq)]
pub struct LimitCase {
    pub params: LimitParams,
    pub degree_cap: usize,
    pub steps: Vec<f64>,
    /// Negative control: compare against the target with the sign of γ flipped.
    pub flip_target_gamma: bool,
}

impl LimitCase {
    /// Pinned parameters, degrees up to 6, steps `1e-3, 1e-4, 1e-5`.
    pub fn new(id: LimitId) -> Self {
        LimitCase {
            params: LimitParams::default_for(id),
            degree_cap: 6,
            steps: geometric_steps(1e-3, 0.1, 3),
            flip_target_gamma: false,
        }
    }

    pub fn id(&self) -> LimitId {
        self.params.id()
    }

    pub fn with_steps(mut self, steps: Vec<f64>) -> Self {
        self.steps = steps;
        self
    }

    pub fn flipped(mut self) -> Self {
        self.flip_target_gamma = true;
        self
    }

    fn validate(&self) -> Result<()> {
        self.params.validate()?;
        if self.steps.len() < 3 {
            return Err(Error::InvalidLimitCase("at least 3 steps are required".into()));
        }
        if self.steps.iter().any(|h| !(h.is_finite() && *h > 0.0)) {
            return Err(Error::InvalidLimitCase("steps must be positive and finite".into()));
        }
        if self.steps.windows(2).any(|w| w[1] >= w[0]) {
            return Err(Error::InvalidLimitCase("steps must be strictly decreasing".into()));
        }
        if self.degree_cap == 0 {
            return Err(Error::InvalidLimitCase("degree cap must be positive".into()));
        }
        Ok(())
    }
}

/// `first, first·r, first·r², ...`
pub fn geometric_steps(first: f64, ratio: f64, count: usize) -> Vec<f64> {
    (0..count).map(|i| first * ratio.powi(i as i32)).collect()
}

/// Errors along the step sequence for one tracked quantity.
#[derive(Debug, Clone, PartialEq)]
pub struct ErrorSeries {
    /// e.g. `P_4`, `b_3`, `u_2`
    pub label: String,
    pub degree: usize,
    pub errors: Vec<f64>,
    /// Empirical orders between consecutive steps.
    pub orders: Vec<f64>,
}

impl ErrorSeries {
    fn new(label: String, degree: usize, errors: Vec<f64>, steps: &[f64]) -> Self {
        let orders = errors
            .windows(2)
            .zip(steps.windows(2))
            .map(|(e, h)| (e[0] / e[1]).ln() / (h[0] / h[1]).ln())
            .collect();
        ErrorSeries {
            label,
            degree,
            errors,
            orders,
        }
    }

    pub fn is_tracked(&self) -> bool {
        self.errors.iter().any(|&e| e > NOISE_FLOOR)
    }

    pub fn monotone(&self) -> bool {
        self.errors.windows(2).all(|w| w[1] < w[0])
    }

    pub fn orders_in_band(&self) -> bool {
        self.orders
            .iter()
            .all(|p| (ORDER_BAND.0..=ORDER_BAND.1).contains(p))
    }
}

/// Outcome of [`run_limit`].
#[derive(Debug, Clone, PartialEq)]
pub struct LimitReport {
    pub case: LimitCase,
    /// Coefficient errors of `P_1..=P_cap`, then `b_n` and `u_n` errors for `n < cap`.
    pub series: Vec<ErrorSeries>,
    /// `β·|β σ_n(β) - ϑ_n|` per step, for `n = 1..=cap` (β→∞ case only).
    pub beta_constants: Option<Vec<Vec<f64>>>,
}

impl LimitReport {
    pub fn tracked(&self) -> impl Iterator<Item = &ErrorSeries> {
        self.series.iter().filter(|s| s.is_tracked())
    }

    pub fn monotone(&self) -> bool {
        self.tracked().all(ErrorSeries::monotone)
    }

    pub fn orders_in_band(&self) -> bool {
        self.tracked().all(ErrorSeries::orders_in_band)
    }

    /// Largest relative change of the β→∞ constants between the last two steps.
    pub fn constant_drift(&self) -> Option<f64> {
        let consts = self.beta_constants.as_ref()?;
        let (a, b) = (&consts[consts.len() - 2], &consts[consts.len() - 1]);
        Some(
            a.iter()
                .zip(b)
                .filter(|(x, _)| **x > NOISE_FLOOR)
                .map(|(x, y)| ((y - x) / x).abs())
                .fold(0.0, f64::max),
        )
    }

    pub fn constants_stable(&self) -> bool {
        let finite = self
            .beta_constants
            .iter()
            .flatten()
            .flatten()
            .all(|c| c.is_finite());
        finite && self.constant_drift().is_none_or(|d| d <= CONSTANT_DRIFT)
    }

    pub fn converged(&self) -> bool {
        self.tracked().next().is_some() && self.monotone() && self.orders_in_band() && self.constants_stable()
    }

    /// Largest tracked error at the smallest step.
    pub fn final_error(&self) -> f64 {
        self.tracked()
            .map(|s| *s.errors.last().unwrap())
            .fold(0.0, f64::max)
    }

    pub fn order_range(&self) -> (f64, f64) {
        self.tracked()
            .flat_map(|s| s.orders.iter().copied())
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), p| (lo.min(p), hi.max(p)))
    }
}

/// Monic polynomials from `(b_n, u_n)`, coefficients in increasing degree.
pub fn monic_from_coeffs(coeffs: &[(f64, f64)]) -> Vec<Vec<f64>> {
    let mut polys = vec![vec![1.0]];
    for (n, &(b, u)) in coeffs.iter().enumerate() {
        let cur = &polys[n];
        let mut next = vec![0.0; n + 2];
        for (e, v) in cur.iter().enumerate() {
            next[e + 1] += v;
            next[e] -= b * v;
        }
        if n > 0 {
            for (e, v) in polys[n - 1].iter().enumerate() {
                next[e] -= u * v;
            }
        }
        polys.push(next);
    }
    polys
}

fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

/// Runs the limit along its step sequence and measures errors and orders.
pub fn run_limit(case: &LimitCase) -> Result<LimitReport> {
    case.validate()?;
    let cap = case.degree_cap;
    let flip = if case.flip_target_gamma { -1.0 } else { 1.0 };
    let target: Vec<(f64, f64)> = (0..cap)
        .map(|n| case.params.target(n).map(|(b, u)| (flip * b, u)))
        .collect::<Result<_>>()?;
    let target_polys = monic_from_coeffs(&target);

    let mut poly_err = vec![Vec::new(); cap + 1];
    let mut diag_err = vec![Vec::new(); cap];
    let mut sub_err = vec![Vec::new(); cap];
    let mut constants = Vec::new();
    for &h in &case.steps {
        let source: Vec<(f64, f64)> = (0..cap).map(|n| case.params.source(h, n)).collect::<Result<_>>()?;
        let polys = monic_from_coeffs(&source);
        for n in 1..=cap {
            poly_err[n].push(max_abs_diff(&polys[n], &target_polys[n]));
        }
        for n in 0..cap {
            diag_err[n].push((source[n].0 - target[n].0).abs());
            sub_err[n].push((source[n].1 - target[n].1).abs());
        }
        if let LimitParams::BetaInf { .. } = case.params {
            let beta = 1.0 / h;
            let row = (1..=cap)
                .map(|n| {
                    let (_, u) = case.params.source(h, n)?;
                    let (_, t) = case.params.target(n)?;
                    Ok(beta * (u - t).abs())
                })
                .collect::<Result<Vec<_>>>()?;
            constants.push(row);
        }
    }

    let steps = &case.steps;
    let mut series = Vec::new();
    for n in 1..=cap {
        series.push(ErrorSeries::new(format!("P_{n}"), n, std::mem::take(&mut poly_err[n]), steps));
    }
    for n in 0..cap {
        series.push(ErrorSeries::new(format!("b_{n}"), n, std::mem::take(&mut diag_err[n]), steps));
        series.push(ErrorSeries::new(format!("u_{n}"), n, std::mem::take(&mut sub_err[n]), steps));
    }
    Ok(LimitReport {
        case: case.clone(),
        series,
        beta_constants: matches!(case.params, LimitParams::BetaInf { .. }).then_some(constants),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_cases_converge_at_first_order() {
        for id in LimitId::ALL {
            let r = run_limit(&LimitCase::new(id)).unwrap();
            let (lo, hi) = r.order_range();
            assert!(r.converged(), "{id}: orders {lo}..{hi}, final {}", r.final_error());
            assert!(r.final_error() < 1e-2, "{id}");
        }
    }

    #[test]
    fn flipped_gamma_does_not_converge() {
        for id in LimitId::ALL {
            let r = run_limit(&LimitCase::new(id).flipped()).unwrap();
            assert!(!r.converged(), "{id}");
        }
    }

    #[test]
    fn beta_constant_example() {
        // β = 10⁴, α = 1/2: |β σ_2 - 1| stays below 1e-3
        let p = LimitParams::BetaInf { mu: int(1), gamma: rat(1, 3) };
        let (_, u) = p.source(1e-4, 2).unwrap();
        assert!((u - 1.0).abs() <= 1e-3);
        let r = run_limit(&LimitCase::new(LimitId::ChiharaBetaToInf)).unwrap();
        assert!(r.constants_stable(), "drift {:?}", r.constant_drift());
    }

    #[test]
    fn big_q_factors_match_direct_formula() {
        // Direct evaluation is accurate enough at a moderate ε.
        let (eps, al, be, ga) = (1e-2f64, 0.5, 1.5, 0.3);
        let q = -eps.exp();
        let (a, b, g) = ((2.0 * eps * be).exp(), -(eps * (2.0 * al + 1.0)).exp(), -ga);
        let ups = |k: i32| {
            (1.0 - a * q.powi(k + 1)) * (1.0 - a * b * q.powi(k + 1)) * (1.0 - g * q.powi(k + 1))
                / ((1.0 - a * b * q.powi(2 * k + 1)) * (1.0 - a * b * q.powi(2 * k + 2)))
        };
        let nu = |k: i32| {
            -a * g * q.powi(k + 1) * (1.0 - q.powi(k)) * (1.0 - a * b / g * q.powi(k)) * (1.0 - b * q.powi(k))
                / ((1.0 - a * b * q.powi(2 * k)) * (1.0 - a * b * q.powi(2 * k + 1)))
        };
        let f = BigQFloat::new(eps, al, be, ga);
        for k in 0..6 {
            assert!((f.upsilon(k) - ups(k as i32)).abs() < 1e-9 * ups(k as i32).abs().max(1.0));
            assert!((f.nu(k) - nu(k as i32)).abs() < 1e-9 * nu(k as i32).abs().max(1.0));
        }
    }

    #[test]
    fn invalid_cases() {
        let short = LimitCase::new(LimitId::CbiHTo0).with_steps(vec![1e-3, 1e-4]);
        assert!(matches!(run_limit(&short), Err(Error::InvalidLimitCase(_))));
        let rising = LimitCase::new(LimitId::CbiHTo0).with_steps(vec![1e-5, 1e-4, 1e-3]);
        assert!(run_limit(&rising).is_err());
        let mut bad = LimitCase::new(LimitId::CbiHTo0);
        bad.params = LimitParams::Cbi { a1: int(3), a2: int(5), b1: int(1), b2: int(1) };
        assert!(run_limit(&bad).is_err());
    }

    #[test]
    fn degenerate_step_reported() {
        // α = -2 and β = 1/h = 1 make (α+β+1)(α+β+2) vanish at n = 1.
        let p = LimitParams::BetaInf { mu: rat(-3, 2), gamma: int(0) };
        assert!(matches!(p.source(1.0, 1), Err(Error::DegenerateStep { n: 1, .. })));
    }

    #[test]
    fn monic_from_coeffs_small() {
        let p = monic_from_coeffs(&[(0.5, 0.0), (-0.5, 0.5)]);
        assert_eq!(p[1], vec![-0.5, 1.0]);
        assert_eq!(p[2], vec![-0.75, 0.0, 1.0]);
    }

    #[test]
    fn names_round_trip() {
        for id in LimitId::ALL {
            assert_eq!(id.name().parse::<LimitId>().unwrap(), id);
        }
        assert!("nope".parse::<LimitId>().is_err());
    }
}
