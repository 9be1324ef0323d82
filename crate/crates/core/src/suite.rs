//! The ten acceptance criteria, each run over pinned parameter sets and turned
//! into [`VerificationRecord`]s.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_traits::{Signed, Zero};

use crate::dunklop::{
    eigencheck, eigencheck_gaussian, reflection_parity_check, verify_algebra, AlgebraFamily,
    ChiharaCoefficients, DunklOperator, GaussianPoly, OperatorSpec,
};
use crate::error::{Error, Result};
use crate::exactnum::{int, rat, to_f64, LaurentPoly, RatFunc, Rational};
use crate::families::{
    explicit_poly, generate_monic, jacobi_connection, BigM1JacobiParams, CbiParams, ChiharaParams,
    Family, YParams,
};
use crate::limits::{run_limit, LimitCase, LimitId, ORDER_BAND};
use crate::quad::{
    direct_inner_product, max_offdiagonal, norm_ratio_check, norm_recurrence_residuals, verify_pearson,
    WeightSpec,
};
use crate::report::{degree_range, format_params, VerificationRecord};
use crate::transforms::{
    christoffel, coefficient_map_residuals, evaluation_ratio_residuals, geronimus, kernel_polynomials,
    kernel_recurrence_residuals, kernel_to_chihara, kernel_to_chihara_float, KernelMap,
};

const GRAM_TOL: f64 = 1e-10;
const NORM_TOL: f64 = 1e-10;
const ORACLE_TOL: f64 = 1e-8;
const REFLECTION_TOL: f64 = 1e-12;
const ORACLE_CUTOFF: f64 = 12.0;
const KERNEL_FLOAT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Criterion {
    Construction,
    Eigen,
    Algebra,
    JacobiConnection,
    Orthogonality,
    Norms,
    Pearson,
    Transforms,
    Limits,
    NegativeControls,
}

impl Criterion {
    pub const ALL: [Criterion; 10] = [
        Criterion::Construction,
        Criterion::Eigen,
        Criterion::Algebra,
        Criterion::JacobiConnection,
        Criterion::Orthogonality,
        Criterion::Norms,
        Criterion::Pearson,
        Criterion::Transforms,
        Criterion::Limits,
        Criterion::NegativeControls,
    ];

    /// 1-based position in [`Criterion::ALL`].
    pub fn number(self) -> usize {
        Criterion::ALL.iter().position(|&c| c == self).unwrap() + 1
    }

    pub fn name(self) -> &'static str {
        match self {
            Criterion::Construction => "construction",
            Criterion::Eigen => "eigen",
            Criterion::Algebra => "algebra",
            Criterion::JacobiConnection => "jacobi_connection",
            Criterion::Orthogonality => "orthogonality",
            Criterion::Norms => "norms",
            Criterion::Pearson => "pearson",
            Criterion::Transforms => "transforms",
            Criterion::Limits => "limits",
            Criterion::NegativeControls => "negative_controls",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            Criterion::Construction => "explicit and recurrence polynomials agree exactly",
            Criterion::Eigen => "operator eigen-equations hold with zero residual",
            Criterion::Algebra => "quadratic algebra relations hold on monomials",
            Criterion::JacobiConnection => "Chihara polynomials rebuilt from Jacobi polynomials",
            Criterion::Orthogonality => "Gram matrices diagonal; reduction matches direct integration",
            Criterion::Norms => "quadrature norm ratios and exact norm recurrence",
            Criterion::Pearson => "weight satisfies the Pearson-type equations",
            Criterion::Transforms => "Christoffel/Geronimus round trip and kernel map",
            Criterion::Limits => "limit processes converge at first order",
            Criterion::NegativeControls => "perturbed inputs are detected",
        }
    }
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Criterion {
    type Err = Error;

    /// Accepts the name or the 1-based number.
    fn from_str(s: &str) -> Result<Self> {
        if let Ok(k) = s.parse::<usize>() {
            if (1..=Criterion::ALL.len()).contains(&k) {
                return Ok(Criterion::ALL[k - 1]);
            }
        }
        Criterion::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::UnknownCriterion(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CriterionResult {
    pub criterion: Criterion,
    pub records: Vec<VerificationRecord>,
    pub millis: u64,
}

impl CriterionResult {
    pub fn passed(&self) -> bool {
        !self.records.is_empty() && self.records.iter().all(VerificationRecord::passed)
    }

    pub fn failures(&self) -> usize {
        self.records.iter().filter(|r| !r.passed()).count()
    }
}

pub fn run_criterion(criterion: Criterion) -> CriterionResult {
    let start = Instant::now();
    let records = match criterion {
        Criterion::Construction => construction(),
        Criterion::Eigen => eigen(),
        Criterion::Algebra => algebra(),
        Criterion::JacobiConnection => connection(),
        Criterion::Orthogonality => orthogonality(),
        Criterion::Norms => norms(),
        Criterion::Pearson => pearson(),
        Criterion::Transforms => transforms(),
        Criterion::Limits => limits(),
        Criterion::NegativeControls => negative_controls(),
    };
    CriterionResult {
        criterion,
        records,
        millis: start.elapsed().as_millis() as u64,
    }
}

fn params_string(ps: &[(&'static str, Rational)]) -> String {
    format_params(ps.iter().map(|(k, v)| (*k, v)))
}

fn failed(suite: &str, target: &str, params: String, degrees: String, e: &Error) -> VerificationRecord {
    VerificationRecord::check(suite, target, params, degrees, false, &e.to_string())
}

/// Exact record from a computation returning the largest absolute residual.
fn exact(
    suite: &str,
    target: &str,
    params: String,
    degrees: String,
    f: impl FnOnce() -> Result<Rational>,
) -> VerificationRecord {
    let start = Instant::now();
    let rec = match f() {
        Ok(r) => VerificationRecord::exact(suite, target, params, degrees, &r),
        Err(e) => failed(suite, target, params, degrees, &e),
    };
    rec.with_millis(start.elapsed().as_millis() as u64)
}

fn float(
    suite: &str,
    target: &str,
    params: String,
    degrees: String,
    tolerance: f64,
    f: impl FnOnce() -> Result<f64>,
) -> VerificationRecord {
    let start = Instant::now();
    let rec = match f() {
        Ok(r) => VerificationRecord::float(suite, target, params, degrees, r, tolerance),
        Err(e) => failed(suite, target, params, degrees, &e),
    };
    rec.with_millis(start.elapsed().as_millis() as u64)
}

fn max_poly_residual<'a>(polys: impl IntoIterator<Item = &'a LaurentPoly>) -> Rational {
    polys
        .into_iter()
        .map(LaurentPoly::max_abs_coeff)
        .max()
        .unwrap_or_else(Rational::zero)
}

fn max_abs(values: impl IntoIterator<Item = Rational>) -> Rational {
    values.into_iter().map(|v| v.abs()).max().unwrap_or_else(Rational::zero)
}

fn ratfunc_residual(r: &RatFunc) -> Rational {
    r.num().max_abs_coeff()
}

pub fn chihara_sets() -> Vec<ChiharaParams> {
    vec![
        ChiharaParams::new(int(1), int(1), rat(1, 2)),
        ChiharaParams::new(rat(-1, 3), rat(3, 4), rat(-2, 5)),
        ChiharaParams::new(rat(5, 2), rat(1, 3), rat(3, 7)),
    ]
}

pub fn cbi_sets() -> Vec<CbiParams> {
    vec![
        CbiParams::new(rat(5, 2), rat(3, 4), rat(1, 3), rat(2, 7)),
        CbiParams::new(rat(7, 3), rat(1, 2), rat(-1, 4), rat(3, 5)),
        CbiParams::new(int(4), rat(2, 3), rat(1, 5), rat(-1, 6)),
    ]
}

pub fn gegenbauer_sets() -> Vec<(Rational, Rational)> {
    vec![(rat(1, 2), int(2)), (rat(-1, 3), rat(3, 4)), (int(2), rat(5, 3))]
}

pub fn y_sets() -> Vec<YParams> {
    vec![
        YParams::new(rat(3, 4), rat(2, 5)),
        YParams::new(rat(1, 3), rat(-1, 3)),
        YParams::new(rat(3, 2), rat(1, 2)),
    ]
}

pub fn hermite_mus() -> Vec<Rational> {
    vec![rat(3, 2), rat(1, 3), rat(2, 5)]
}

fn construction_families() -> Vec<(Family, usize)> {
    let mut out = Vec::new();
    out.extend(chihara_sets().into_iter().map(|p| (Family::Chihara(p), 16)));
    out.extend(cbi_sets().into_iter().map(|p| (Family::Cbi(p), 12)));
    out.extend(
        gegenbauer_sets()
            .into_iter()
            .map(|(alpha, beta)| (Family::Gegenbauer { alpha, beta }, 16)),
    );
    out.extend(y_sets().into_iter().map(|p| (Family::Y(p), 16)));
    out.extend(hermite_mus().into_iter().map(|mu| (Family::GeneralizedHermite { mu }, 16)));
    out
}

pub fn construction_record(fam: &Family, n_max: usize) -> VerificationRecord {
    exact("construction", fam.name(), params_string(&fam.params()), degree_range(0, n_max), || {
        let polys = generate_monic(fam, n_max)?;
        let diffs = (0..=n_max)
            .map(|n| Ok(&explicit_poly(fam, n)? - &polys[n]))
            .collect::<Result<Vec<_>>>()?;
        Ok(max_poly_residual(&diffs))
    })
}

fn construction() -> Vec<VerificationRecord> {
    construction_families()
        .iter()
        .map(|(fam, n_max)| construction_record(fam, *n_max))
        .collect()
}

/// Operator, its eigenfunction family and the degree cap.
pub fn eigen_cases() -> Vec<(OperatorSpec, Family, usize)> {
    let mut out = Vec::new();
    for p in chihara_sets() {
        for eps in [int(0), rat(2, 3), int(5)] {
            out.push((OperatorSpec::ChiharaD { params: p.clone(), eps }, Family::Chihara(p.clone()), 16));
        }
    }
    for p in cbi_sets() {
        for alpha in [int(0), rat(7, 5)] {
            out.push((OperatorSpec::CbiK { params: p.clone(), alpha }, Family::Cbi(p.clone()), 12));
        }
    }
    for (alpha, beta) in gegenbauer_sets() {
        let fam = Family::Gegenbauer { alpha: alpha.clone(), beta: beta.clone() };
        out.push((OperatorSpec::GegenbauerW { alpha, beta, eps: rat(2, 3) }, fam, 16));
    }
    for (mu, alpha) in [(rat(3, 4), rat(1, 3)), (rat(3, 2), int(2)), (rat(1, 5), rat(-1, 4))] {
        let fam = Family::Gegenbauer { alpha: &mu - rat(1, 2), beta: alpha.clone() };
        out.push((OperatorSpec::GegenbauerQ { mu, alpha }, fam, 16));
    }
    for p in y_sets() {
        for eps in [int(0), rat(2, 3)] {
            out.push((OperatorSpec::YZ { params: p.clone(), eps }, Family::Y(p.clone()), 16));
        }
    }
    for mu in hermite_mus() {
        let fam = Family::GeneralizedHermite { mu: mu.clone() };
        out.push((OperatorSpec::GhOmega { mu: mu.clone(), eps: int(5) }, fam.clone(), 16));
        out.push((OperatorSpec::GhOmegaTilde { mu, eps: rat(2, 3) }, fam, 12));
    }
    out
}

fn operator_params(spec: &OperatorSpec, fam: &Family) -> String {
    let extra = match spec {
        OperatorSpec::ChiharaD { eps, .. }
        | OperatorSpec::GegenbauerW { eps, .. }
        | OperatorSpec::YZ { eps, .. }
        | OperatorSpec::GhOmega { eps, .. }
        | OperatorSpec::GhOmegaTilde { eps, .. } => vec![("eps", eps.clone())],
        OperatorSpec::CbiK { alpha, .. } => vec![("op_alpha", alpha.clone())],
        OperatorSpec::GegenbauerQ { mu, alpha } => vec![("mu", mu.clone()), ("op_alpha", alpha.clone())],
        _ => vec![],
    };
    let mut ps = match spec {
        OperatorSpec::GegenbauerQ { .. } => Vec::new(),
        _ => fam.params(),
    };
    ps.extend(extra);
    params_string(&ps)
}

fn eigen_residual(op: &DunklOperator, spec: &OperatorSpec, fam: &Family, n_max: usize) -> Result<Rational> {
    let polys = generate_monic(fam, n_max)?;
    let mut worst = Rational::zero();
    for (n, p) in polys.iter().enumerate() {
        let lambda = spec
            .eigenvalue(n)
            .ok_or_else(|| Error::NotPolynomial(format!("{} has no eigenvalue", spec.name())))?;
        worst = worst.max(eigencheck(op, p, &lambda)?.max_abs_coeff());
    }
    Ok(worst)
}

/// Largest eigen-equation residual over `0..=n_max`; Gaussian-class operators act on `P_n e^{-x²/2}`.
pub fn eigen_record(spec: &OperatorSpec, fam: &Family, n_max: usize) -> VerificationRecord {
    exact("eigen", spec.name(), operator_params(spec, fam), degree_range(0, n_max), || {
        let op = spec.build()?;
        if let OperatorSpec::GhOmegaTilde { .. } = spec {
            let mut worst = Rational::zero();
            for (n, h) in generate_monic(fam, n_max)?.into_iter().enumerate() {
                let lambda = spec.eigenvalue(n).expect("Gaussian-class eigenvalue");
                worst = worst.max(eigencheck_gaussian(&op, &GaussianPoly::new(h), &lambda)?.max_abs_coeff());
            }
            Ok(worst)
        } else {
            eigen_residual(&op, spec, fam, n_max)
        }
    })
}

fn eigen() -> Vec<VerificationRecord> {
    let mut out: Vec<VerificationRecord> = eigen_cases()
        .iter()
        .map(|(spec, fam, n_max)| eigen_record(spec, fam, *n_max))
        .collect();
    for p in chihara_sets() {
        let fam = Family::Chihara(p.clone());
        out.push(exact(
            "eigen",
            "reflection_component",
            params_string(&fam.params()),
            degree_range(0, 16),
            || {
                let rs = (0..=16).map(|n| reflection_parity_check(&p, n)).collect::<Result<Vec<_>>>()?;
                Ok(max_poly_residual(&rs))
            },
        ));
    }
    out
}

pub fn algebra_cases() -> Vec<AlgebraFamily> {
    let mut out = Vec::new();
    for p in chihara_sets() {
        for eps in [rat(2, 3), int(5)] {
            out.push(AlgebraFamily::Chihara { params: p.clone(), eps });
        }
    }
    for p in y_sets() {
        for eps in [rat(2, 3), int(5)] {
            out.push(AlgebraFamily::y(p.clone(), eps));
        }
    }
    out
}

fn algebra_params(fam: &AlgebraFamily) -> (String, String) {
    match fam {
        AlgebraFamily::Chihara { params, eps } => {
            let f = Family::Chihara(params.clone());
            let mut ps = f.params();
            ps.push(("eps", eps.clone()));
            ("chihara".to_string(), params_string(&ps))
        }
        AlgebraFamily::Y { params, eps, .. } => {
            let f = Family::Y(params.clone());
            let mut ps = f.params();
            ps.push(("eps", eps.clone()));
            ("y".to_string(), params_string(&ps))
        }
    }
}

pub fn algebra_records(fam: &AlgebraFamily, cap: usize) -> Vec<VerificationRecord> {
    let (name, params) = algebra_params(fam);
    let start = Instant::now();
    match verify_algebra(fam, cap) {
        Ok(reports) => {
            let each = start.elapsed().as_millis() as u64 / reports.len().max(1) as u64;
            reports
                .iter()
                .map(|r| {
                    VerificationRecord::exact(
                        "algebra",
                        &format!("{name}:{}", r.relation),
                        params.clone(),
                        degree_range(0, cap),
                        &r.max_residual(),
                    )
                    .with_millis(each)
                })
                .collect()
        }
        Err(e) => vec![failed("algebra", &name, params, degree_range(0, cap), &e)],
    }
}

fn algebra() -> Vec<VerificationRecord> {
    algebra_cases().iter().flat_map(|f| algebra_records(f, 12)).collect()
}

pub fn connection_record(p: &ChiharaParams, n_max: usize) -> VerificationRecord {
    let fam = Family::Chihara(p.clone());
    exact("jacobi_connection", "chihara", params_string(&fam.params()), degree_range(0, n_max), || {
        let polys = generate_monic(&fam, n_max)?;
        let diffs = (0..=n_max)
            .map(|n| Ok(&jacobi_connection(p, n)? - &polys[n]))
            .collect::<Result<Vec<_>>>()?;
        Ok(max_poly_residual(&diffs))
    })
}

fn connection() -> Vec<VerificationRecord> {
    chihara_sets().iter().map(|p| connection_record(p, 8)).collect()
}

pub fn weight_specs() -> Vec<WeightSpec> {
    vec![
        WeightSpec::Chihara(ChiharaParams::new(int(1), int(1), rat(1, 2))),
        WeightSpec::Chihara(ChiharaParams::new(rat(-1, 3), rat(3, 4), rat(-2, 5))),
        WeightSpec::Gegenbauer { alpha: rat(1, 2), beta: int(2) },
        WeightSpec::Gegenbauer { alpha: rat(-1, 3), beta: rat(3, 4) },
        WeightSpec::Y(YParams::new(rat(3, 4), rat(2, 5))),
        WeightSpec::Y(YParams::new(rat(1, 3), rat(-1, 3))),
        WeightSpec::GeneralizedHermite { mu: rat(3, 2) },
        WeightSpec::GeneralizedHermite { mu: rat(1, 3) },
    ]
}

fn spec_params(spec: &WeightSpec) -> String {
    params_string(&spec.family().params())
}

fn oracle_pairs() -> Vec<(LaurentPoly, LaurentPoly)> {
    let p = |c: &[Rational]| LaurentPoly::from_coeffs(c.iter().cloned());
    vec![
        (LaurentPoly::one(), LaurentPoly::one()),
        (p(&[int(1), int(2), rat(-1, 3)]), p(&[rat(1, 2), int(-1), int(0), int(1)])),
        (p(&[int(0), int(1)]), p(&[int(0), int(0), int(0), int(1)])),
    ]
}

/// Largest normalized off-diagonal Gram entry for `P_0..=P_{n_max}`.
pub fn gram_record(spec: &WeightSpec, n_max: usize) -> VerificationRecord {
    float("orthogonality", spec.family().name(), spec_params(spec), degree_range(0, n_max), GRAM_TOL, || {
        let polys = generate_monic(&spec.family(), n_max)?;
        Ok(max_offdiagonal(&spec.gram_matrix(&polys)?))
    })
}

/// Two-interval reduction against direct adaptive integration of the raw weight.
pub fn oracle_record(spec: &WeightSpec) -> VerificationRecord {
    float("orthogonality", "reduction_vs_direct", spec_params(spec), degree_range(0, 3), ORACLE_TOL, || {
        let mut worst: f64 = 0.0;
        for (f, g) in oracle_pairs() {
            let reduced = spec.inner_product(&f, &g)?;
            let direct = direct_inner_product(spec, &f, &g, ORACLE_CUTOFF);
            worst = worst.max((reduced - direct).abs() / reduced.abs().max(1.0));
        }
        Ok(worst)
    })
}

fn orthogonality() -> Vec<VerificationRecord> {
    let mut out: Vec<VerificationRecord> = weight_specs().iter().map(|s| gram_record(s, 12)).collect();
    out.push(oracle_record(&WeightSpec::Chihara(ChiharaParams::new(int(1), int(1), rat(1, 2)))));
    out.push(oracle_record(&WeightSpec::Chihara(ChiharaParams::new(rat(1, 2), int(2), rat(-1, 3)))));
    out
}

/// Quadrature norm ratios for `1..=n_ratio` and the exact norm recurrence for `1..=n_exact`.
pub fn norm_records(spec: &WeightSpec, n_ratio: usize, n_exact: usize) -> Vec<VerificationRecord> {
    let name = spec.family().name();
    vec![
        float("norms", name, spec_params(spec), degree_range(1, n_ratio), NORM_TOL, || {
            let mut worst: f64 = 0.0;
            for n in 1..=n_ratio {
                let (exact, quad) = norm_ratio_check(spec, n)?;
                let e = to_f64(&exact);
                worst = worst.max(((quad - e) / e).abs());
            }
            Ok(worst)
        }),
        exact(
            "norms",
            &format!("{name}:norm_recurrence"),
            spec_params(spec),
            degree_range(1, n_exact),
            || Ok(max_abs(norm_recurrence_residuals(spec, n_exact)?)),
        ),
    ]
}

fn norms() -> Vec<VerificationRecord> {
    weight_specs().iter().flat_map(|s| norm_records(s, 12, 30)).collect()
}

pub fn pearson_sets() -> Vec<ChiharaParams> {
    vec![
        ChiharaParams::new(int(1), int(2), rat(1, 3)),
        ChiharaParams::new(int(1), int(1), rat(1, 2)),
        ChiharaParams::new(rat(1, 2), rat(3, 4), int(0)),
        ChiharaParams::new(rat(-1, 3), rat(3, 4), rat(-2, 5)),
        ChiharaParams::new(rat(5, 2), rat(1, 3), rat(3, 7)),
    ]
}

pub fn pearson_records(p: &ChiharaParams, samples: usize) -> Vec<VerificationRecord> {
    let params = params_string(&Family::Chihara(p.clone()).params());
    let start = Instant::now();
    let r = verify_pearson(p, samples);
    let ms = start.elapsed().as_millis() as u64;
    vec![
        VerificationRecord::exact(
            "pearson",
            "log_derivative",
            params.clone(),
            "-".to_string(),
            &ratfunc_residual(&r.log_derivative_residual),
        )
        .with_millis(ms),
        VerificationRecord::exact(
            "pearson",
            "operator_log_derivative",
            params.clone(),
            "-".to_string(),
            &ratfunc_residual(&r.operator_residual),
        ),
        VerificationRecord::float(
            "pearson",
            "reflection_condition",
            format!("{params};samples_per_component={samples}"),
            "-".to_string(),
            r.reflection_residual,
            REFLECTION_TOL,
        ),
    ]
}

fn pearson() -> Vec<VerificationRecord> {
    pearson_sets().iter().flat_map(|p| pearson_records(p, 20)).collect()
}

pub fn transform_sets() -> Vec<BigM1JacobiParams> {
    vec![
        BigM1JacobiParams::new(int(1), int(1), rat(3, 5)),
        BigM1JacobiParams::new(rat(1, 2), rat(3, 2), rat(5, 13)),
        BigM1JacobiParams::new(int(2), rat(1, 3), rat(3, 5)),
    ]
}

pub fn transform_records(p: &BigM1JacobiParams, n_max: usize) -> Vec<VerificationRecord> {
    let params = params_string(&Family::BigMinusOneJacobi(p.clone()).params());
    let degrees = degree_range(0, n_max);
    let record = |target: &str, f: &dyn Fn() -> Result<Rational>| {
        exact("transforms", target, params.clone(), degrees.clone(), f)
    };
    let mut out = vec![
        record("christoffel_geronimus_round_trip", &|| {
            let j = generate_monic(&Family::BigMinusOneJacobi(p.clone()), n_max + 1)?;
            let a = (0..=n_max).map(|n| p.a_coeff(n)).collect::<Result<Vec<_>>>()?;
            let c = (0..=n_max).map(|n| p.c_coeff(n)).collect::<Result<Vec<_>>>()?;
            let back = geronimus(&christoffel(&j, &a)?, &c);
            let diffs: Vec<_> = back.iter().zip(&j).map(|(x, y)| x - y).collect();
            Ok(max_poly_residual(&diffs))
        }),
        record("evaluation_ratio", &|| Ok(max_abs(evaluation_ratio_residuals(p, n_max)?))),
        record("kernel_recurrence", &|| {
            let k = kernel_polynomials(p, n_max)?;
            let r = kernel_recurrence_residuals(p, &k)?;
            Ok(max_abs(r.into_iter().flat_map(|(d, u)| [d, u])))
        }),
    ];
    if let Err(Error::IrrationalScale(_)) = KernelMap::exact(p) {
        out.push(float("transforms", "kernel_to_chihara", params, degrees, KERNEL_FLOAT_TOL, || {
            kernel_to_chihara_float(p, n_max)
        }));
        return out;
    }
    out.push(record("kernel_to_chihara", &|| {
        let map = KernelMap::exact(p)?;
        let k = kernel_polynomials(p, n_max)?;
        Ok(max_poly_residual(&kernel_to_chihara(&map, &k)?))
    }));
    out.push(record("coefficient_map", &|| {
        Ok(max_abs(coefficient_map_residuals(&KernelMap::exact(p)?, n_max)?))
    }));
    out
}

fn transforms() -> Vec<VerificationRecord> {
    transform_sets().iter().flat_map(|p| transform_records(p, 12)).collect()
}

fn limit_params(case: &LimitCase) -> String {
    let steps = case.steps.iter().map(|h| format!("{h:e}")).collect::<Vec<_>>().join(",");
    format!("{};steps={steps}", params_string(&case.params.named()))
}

/// Order band, monotone decay and, for β→∞, stability of the error constant.
pub fn limit_records(case: &LimitCase) -> Vec<VerificationRecord> {
    let id = case.id();
    let params = limit_params(case);
    let degrees = degree_range(1, case.degree_cap);
    let start = Instant::now();
    let report = match run_limit(case) {
        Ok(r) => r,
        Err(e) => return vec![failed("limits", id.name(), params, degrees, &e)],
    };
    let ms = start.elapsed().as_millis() as u64;
    let deviation = if report.tracked().next().is_some() {
        let (lo, hi) = report.order_range();
        (1.0 - lo).max(hi - 1.0)
    } else {
        f64::NAN
    };
    let mut out = vec![
        VerificationRecord::float(
            "limits",
            &format!("{id}:order"),
            params.clone(),
            degrees.clone(),
            deviation,
            (ORDER_BAND.1 - 1.0).min(1.0 - ORDER_BAND.0),
        )
        .with_millis(ms),
        VerificationRecord::check(
            "limits",
            &format!("{id}:monotone"),
            params.clone(),
            degrees.clone(),
            report.monotone(),
            "error does not decrease along the steps",
        ),
    ];
    if let Some(drift) = report.constant_drift() {
        out.push(VerificationRecord::float(
            "limits",
            &format!("{id}:constant_drift"),
            params,
            degrees,
            drift,
            crate::limits::CONSTANT_DRIFT,
        ));
    }
    out
}

fn limits() -> Vec<VerificationRecord> {
    LimitId::ALL.into_iter().flat_map(|id| limit_records(&LimitCase::new(id))).collect()
}

/// A single-coefficient perturbation of the Chihara operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Perturbation {
    /// Adds 1 to the named coefficient.
    S,
    T,
    U,
    V,
    /// Replaces `α + 1/2` by `α + 3/2` in the `1/x` term of `U`.
    UAlphaTerm,
}

impl Perturbation {
    pub const ALL: [Perturbation; 5] =
        [Perturbation::UAlphaTerm, Perturbation::S, Perturbation::T, Perturbation::U, Perturbation::V];

    fn label(self) -> &'static str {
        match self {
            Perturbation::S => "S",
            Perturbation::T => "T",
            Perturbation::U => "U",
            Perturbation::V => "V",
            Perturbation::UAlphaTerm => "U:alpha_term",
        }
    }
}

pub fn perturbed_chihara_operator(params: &ChiharaParams, eps: &Rational, which: Perturbation) -> DunklOperator {
    let mut c = ChiharaCoefficients::new(params, eps);
    let one = RatFunc::constant(int(1));
    match which {
        Perturbation::S => c.s = &c.s + &one,
        Perturbation::T => c.t = &c.t + &one,
        Perturbation::U => c.u = &c.u + &one,
        Perturbation::V => c.v = &c.v + &one,
        Perturbation::UAlphaTerm => {
            let shift = RatFunc::new(LaurentPoly::constant(rat(-1, 2)), LaurentPoly::x()).expect("x is nonzero");
            c.u = &c.u + &shift;
        }
    }
    c.operator()
}

fn negative_controls() -> Vec<VerificationRecord> {
    let mut out = Vec::new();
    let p = chihara_sets().remove(0);
    let fam = Family::Chihara(p.clone());
    let eps = rat(2, 3);
    let spec = OperatorSpec::ChiharaD { params: p.clone(), eps: eps.clone() };
    let mut ps = fam.params();
    ps.push(("eps", eps.clone()));
    for which in Perturbation::ALL {
        let op = perturbed_chihara_operator(&p, &eps, which);
        let detected = eigen_residual(&op, &spec, &fam, 16).map(|r| !r.is_zero()).unwrap_or(true);
        out.push(VerificationRecord::check(
            "negative_controls",
            &format!("chihara_D:perturbed_{}", which.label()),
            params_string(&ps),
            degree_range(0, 16),
            detected,
            "perturbed operator still passes the eigen-equations",
        ));
    }

    let src = transform_sets().remove(0);
    let n_max = 12;
    let params = params_string(&Family::BigMinusOneJacobi(src.clone()).params());
    let detected = (|| -> Result<bool> {
        let j = generate_monic(&Family::BigMinusOneJacobi(src.clone()), n_max + 1)?;
        let a = (0..=n_max).map(|n| src.a_coeff(n)).collect::<Result<Vec<_>>>()?;
        Ok((0..=n_max).all(|n| {
            let mut bad = a.clone();
            bad[n] += int(1);
            christoffel(&j, &bad) == Err(Error::NotDivisible { n })
        }))
    })()
    .unwrap_or(false);
    out.push(VerificationRecord::check(
        "negative_controls",
        "christoffel:perturbed_A_n",
        params,
        degree_range(0, n_max),
        detected,
        "perturbed A_n still divides exactly",
    ));

    for id in LimitId::ALL {
        let case = LimitCase::new(id).flipped();
        let detected = run_limit(&case).map(|r| !r.converged()).unwrap_or(true);
        out.push(VerificationRecord::check(
            "negative_controls",
            &format!("{id}:flipped_gamma"),
            limit_params(&case),
            degree_range(1, case.degree_cap),
            detected,
            "flipped target still converges",
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn criterion_names() {
        for c in Criterion::ALL {
            assert_eq!(c.name().parse::<Criterion>().unwrap(), c);
            assert_eq!(c.number().to_string().parse::<Criterion>().unwrap(), c);
        }
        assert!("11".parse::<Criterion>().is_err());
    }

    #[test]
    fn fast_criteria_pass() {
        for c in [Criterion::JacobiConnection, Criterion::Pearson, Criterion::Limits, Criterion::Transforms] {
            let r = run_criterion(c);
            assert!(r.passed(), "{c}: {:?}", r.records.iter().find(|r| !r.passed()));
        }
    }
}
