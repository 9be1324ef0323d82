use std::fmt::Write as _;
use std::time::Instant;

use dunklpoly::dunklop::{eigencheck, eigencheck_gaussian, reflection_parity_check, AlgebraFamily, GaussianPoly};
use dunklpoly::families::{explicit_poly, generate_monic};
use dunklpoly::limits::run_limit;
use dunklpoly::quad::{max_offdiagonal, norm_ratio_check};
use dunklpoly::report::{degree_range, format_params, VerificationRecord};
use dunklpoly::suite::{self, Criterion, CriterionResult};
use dunklpoly::{Family, FamilyId, LimitCase, LimitId, OperatorSpec, Rational};
use rayon::prelude::*;

use crate::args::{FamilyArgs, ParamArgs};
use crate::CliError;

/// Result of a subcommand: human-readable text plus any verification records.
#[derive(Debug, Default)]
pub struct Output {
    pub text: String,
    pub records: Vec<VerificationRecord>,
}

impl Output {
    fn text(text: String) -> Self {
        Output { text, records: Vec::new() }
    }

    fn records(records: Vec<VerificationRecord>) -> Self {
        let mut text = String::new();
        for r in &records {
            let _ = writeln!(text, "{:<10} {} {} [{}] residual={}", r.outcome, r.suite, r.target, r.degrees, r.residual);
        }
        Output { text, records }
    }
}

pub fn coeffs(family: &FamilyArgs, n: usize, table: bool) -> Result<Output, CliError> {
    let fam = family.family()?;
    let mut text = String::new();
    let lo = if table { 0 } else { n };
    for k in lo..=n {
        let (d, s) = fam.recurrence_coeffs(k)?;
        if table {
            let _ = writeln!(text, "{k} {d} {s}");
        } else {
            let _ = writeln!(text, "diag {d}\nsub {s}");
        }
    }
    Ok(Output::text(text))
}

pub fn poly(family: &FamilyArgs, n: usize, explicit: bool) -> Result<Output, CliError> {
    let fam = family.family()?;
    let p = if explicit {
        explicit_poly(&fam, n)?
    } else {
        generate_monic(&fam, n)?.pop().expect("degree n is present")
    };
    Ok(Output::text(format!("{p}\n")))
}

fn eps_of(eps: &Option<String>) -> Result<Rational, CliError> {
    let v = eps.as_deref().ok_or_else(|| CliError::Usage("missing required flag --eps".into()))?;
    crate::args::parse_flag("eps", v)
}

/// Operator and eigenfunction family named on the command line.
fn operator_case(
    name: &str,
    params: &ParamArgs,
    eps: &Option<String>,
    op_alpha: &Option<String>,
) -> Result<(OperatorSpec, Family), CliError> {
    let needs_no_eps = |flag: &Option<String>, what: &str| match flag {
        Some(_) => Err(CliError::Usage(format!("--{what} does not apply to {name}"))),
        None => Ok(()),
    };
    if name != "cbi_K" {
        needs_no_eps(op_alpha, "op-alpha")?;
    }
    Ok(match name {
        "chihara_D" => {
            let p = params.chihara(name)?;
            (OperatorSpec::ChiharaD { params: p.clone(), eps: eps_of(eps)? }, Family::Chihara(p))
        }
        "reflection_component" => {
            needs_no_eps(eps, "eps")?;
            let p = params.chihara(name)?;
            (OperatorSpec::ReflectionComponent { gamma: p.gamma.clone() }, Family::Chihara(p))
        }
        "cbi_K" => {
            needs_no_eps(eps, "eps")?;
            let p = params.cbi(name)?;
            let alpha = match op_alpha {
                Some(v) => crate::args::parse_flag("op-alpha", v)?,
                None => Rational::from_integer(0.into()),
            };
            (OperatorSpec::CbiK { params: p.clone(), alpha }, Family::Cbi(p))
        }
        "gegenbauer_W" => {
            params.only(&["alpha", "beta"], name)?;
            let (alpha, beta) = (params.get("alpha")?, params.get("beta")?);
            let fam = Family::Gegenbauer { alpha: alpha.clone(), beta: beta.clone() };
            (OperatorSpec::GegenbauerW { alpha, beta, eps: eps_of(eps)? }, fam)
        }
        "gegenbauer_Q" => {
            needs_no_eps(eps, "eps")?;
            params.only(&["mu", "alpha"], name)?;
            let (mu, alpha) = (params.get("mu")?, params.get("alpha")?);
            let fam = Family::Gegenbauer {
                alpha: &mu - Rational::new(1.into(), 2.into()),
                beta: alpha.clone(),
            };
            (OperatorSpec::GegenbauerQ { mu, alpha }, fam)
        }
        "y_Z" => {
            let p = params.y(name)?;
            (OperatorSpec::YZ { params: p.clone(), eps: eps_of(eps)? }, Family::Y(p))
        }
        "gh_Omega" | "gh_OmegaTilde" => {
            params.only(&["mu"], name)?;
            let mu = params.get("mu")?;
            let fam = Family::GeneralizedHermite { mu: mu.clone() };
            let eps = eps_of(eps)?;
            let spec = if name == "gh_Omega" {
                OperatorSpec::GhOmega { mu, eps }
            } else {
                OperatorSpec::GhOmegaTilde { mu, eps }
            };
            (spec, fam)
        }
        other => return Err(CliError::Usage(format!("--operator: unknown operator {other:?}"))),
    })
}

pub fn eigencheck_cmd(
    name: &str,
    params: &ParamArgs,
    eps: &Option<String>,
    op_alpha: &Option<String>,
    cap: usize,
) -> Result<Output, CliError> {
    let (spec, fam) = operator_case(name, params, eps, op_alpha)?;
    let op = spec.build()?;
    let polys = generate_monic(&fam, cap)?;
    let mut ps = fam.params();
    match &spec {
        OperatorSpec::ChiharaD { eps, .. }
        | OperatorSpec::GegenbauerW { eps, .. }
        | OperatorSpec::YZ { eps, .. }
        | OperatorSpec::GhOmega { eps, .. }
        | OperatorSpec::GhOmegaTilde { eps, .. } => ps.push(("eps", eps.clone())),
        OperatorSpec::CbiK { alpha, .. } => ps.push(("op_alpha", alpha.clone())),
        _ => {}
    }
    let params_str = format_params(ps.iter().map(|(k, v)| (*k, v)));
    let mut records = Vec::new();
    for (n, p) in polys.into_iter().enumerate() {
        let start = Instant::now();
        let lambda = spec.eigenvalue(n).expect("catalogued operators have eigenvalues");
        let residual = match &spec {
            OperatorSpec::GhOmegaTilde { .. } => eigencheck_gaussian(&op, &GaussianPoly::new(p), &lambda),
            OperatorSpec::ReflectionComponent { .. } => match &fam {
                Family::Chihara(cp) => reflection_parity_check(cp, n),
                _ => unreachable!("reflection component pairs with the Chihara family"),
            },
            _ => eigencheck(&op, &p, &lambda),
        };
        let rec = match residual {
            Ok(r) => VerificationRecord::exact("eigen", spec.name(), params_str.clone(), degree_range(n, n), &r.max_abs_coeff()),
            Err(e) => VerificationRecord::check("eigen", spec.name(), params_str.clone(), degree_range(n, n), false, &e.to_string()),
        };
        records.push(rec.with_millis(start.elapsed().as_millis() as u64));
    }
    let mut out = Output::records(Vec::new());
    for r in &records {
        let _ = writeln!(out.text, "n={} {} residual={}", r.degrees.split("..=").next().unwrap_or(""), r.outcome, r.residual);
    }
    out.records = records;
    Ok(out)
}

pub fn algebra(family: &FamilyArgs, eps: &str, degree: usize) -> Result<Output, CliError> {
    let eps = crate::args::parse_flag("eps", eps)?;
    let fam = match family.id()? {
        FamilyId::Chihara => AlgebraFamily::Chihara { params: family.params.chihara("chihara")?, eps },
        FamilyId::Y => AlgebraFamily::y(family.params.y("y")?, eps),
        other => {
            return Err(CliError::Usage(format!(
                "--family: no algebra relations for {} (use chihara or y)",
                other.name()
            )))
        }
    };
    Ok(Output::records(suite::algebra_records(&fam, degree)))
}

pub fn gram(family: &FamilyArgs, n: usize, matrix: bool, oracle: bool) -> Result<Output, CliError> {
    let spec = family.weight()?;
    let mut records = vec![suite::gram_record(&spec, n)];
    if oracle {
        records.push(suite::oracle_record(&spec));
    }
    let mut out = Output::records(records);
    if matrix {
        let polys = generate_monic(&spec.family(), n)?;
        let g = spec.gram_matrix(&polys)?;
        for (i, row) in g.iter().enumerate() {
            let line: Vec<String> = row
                .iter()
                .enumerate()
                .map(|(j, v)| format!("{:.3e}", v / (g[i][i] * g[j][j]).sqrt()))
                .collect();
            let _ = writeln!(out.text, "{}", line.join(" "));
        }
        let _ = writeln!(out.text, "max normalized off-diagonal {:e}", max_offdiagonal(&g));
    }
    Ok(out)
}

pub fn norms(family: &FamilyArgs, n: usize, exact_n: usize) -> Result<Output, CliError> {
    let spec = family.weight()?;
    let mut text = String::from("n exact quadrature rel_error\n");
    for k in 1..=n {
        let (exact, quad) = norm_ratio_check(&spec, k)?;
        let e = dunklpoly::exactnum::to_f64(&exact);
        let _ = writeln!(text, "{k} {exact} {quad:.16e} {:.3e}", ((quad - e) / e).abs());
    }
    let mut out = Output::records(suite::norm_records(&spec, n, exact_n));
    out.text = text + &out.text;
    Ok(out)
}

pub fn pearson(params: &ParamArgs, samples: usize) -> Result<Output, CliError> {
    if samples == 0 {
        return Err(CliError::Usage("--samples must be positive".into()));
    }
    Ok(Output::records(suite::pearson_records(&params.chihara("pearson")?, samples)))
}

pub fn transform(params: &ParamArgs, n: usize) -> Result<Output, CliError> {
    Ok(Output::records(suite::transform_records(&params.big_minus_one("transform")?, n)))
}

pub fn limits(case: &str, steps: Vec<f64>, degree_cap: usize, flip: bool) -> Result<Output, CliError> {
    let id: LimitId = case.parse().map_err(|e| CliError::Usage(format!("--case: {e}")))?;
    let mut case = LimitCase::new(id).with_steps(steps);
    case.degree_cap = degree_cap;
    if flip {
        case = case.flipped();
    }
    let report = run_limit(&case).map_err(|e| match e {
        dunklpoly::Error::InvalidLimitCase(m) => CliError::Usage(format!("--steps/--degree-cap: {m}")),
        other => CliError::Core(other),
    })?;

    let mut text = String::new();
    let named = case.params.named();
    let _ = writeln!(text, "case {id} {}", format_params(named.iter().map(|(k, v)| (*k, v))));
    let header: Vec<String> = case.steps.iter().map(|h| format!("{:>12}", format!("e(h={h:e})"))).collect();
    let orders: Vec<String> = case.steps.windows(2).map(|_| format!("{:>6}", "order")).collect();
    let _ = writeln!(text, "{:<6} {} {}", "coeff", header.join(" "), orders.join(" "));
    for s in report.tracked() {
        let errs: Vec<String> = s.errors.iter().map(|e| format!("{e:>12.4e}")).collect();
        let ords: Vec<String> = s.orders.iter().map(|p| format!("{p:.4}")).collect();
        let _ = writeln!(text, "{:<6} {} {}", s.label, errs.join(" "), ords.join(" "));
    }
    let per_step: Vec<String> = (0..case.steps.len())
        .map(|i| {
            let e = report.tracked().map(|s| s.errors[i]).fold(0.0, f64::max);
            format!("h={:e} max_error={e:.4e}", case.steps[i])
        })
        .collect();
    let _ = writeln!(text, "{}", per_step.join("  "));
    let (lo, hi) = report.order_range();
    let _ = writeln!(
        text,
        "order range [{lo:.4}, {hi:.4}], monotone {}, converged {}",
        report.monotone(),
        report.converged()
    );
    if let Some(consts) = &report.beta_constants {
        let last: Vec<String> = consts.last().unwrap().iter().map(|c| format!("{c:.4}")).collect();
        let _ = writeln!(text, "beta constants at smallest step: {}", last.join(" "));
    }

    let mut out = Output::records(suite::limit_records(&case));
    out.text = text + &out.text;
    Ok(out)
}

pub fn weight_sample(family: &FamilyArgs, points: usize, extent: f64) -> Result<String, CliError> {
    if points == 0 {
        return Err(CliError::Usage("--points must be positive".into()));
    }
    if !(extent.is_finite() && extent > 0.0) {
        return Err(CliError::Usage("--extent must be positive".into()));
    }
    let spec = family.weight()?;
    let mut csv = String::from("x,weight\n");
    for (lo, hi) in spec.support() {
        let (lo, hi) = (lo.max(-extent), hi.min(extent));
        if lo >= hi {
            continue;
        }
        for k in 0..points {
            let x = lo + (hi - lo) * (k as f64 + 0.5) / points as f64;
            let _ = writeln!(csv, "{x:e},{:e}", spec.weight(x));
        }
    }
    Ok(csv)
}

pub fn suite_cmd(all: bool, names: &[String]) -> Result<Output, CliError> {
    let criteria: Vec<Criterion> = if all || names.is_empty() {
        if !all {
            return Err(CliError::Usage("suite needs --all or at least one --criterion".into()));
        }
        Criterion::ALL.to_vec()
    } else {
        names
            .iter()
            .map(|s| s.parse().map_err(|e| CliError::Usage(format!("--criterion: {e}"))))
            .collect::<Result<_, _>>()?
    };
    let results: Vec<CriterionResult> = criteria.par_iter().map(|&c| suite::run_criterion(c)).collect();
    let mut text = String::new();
    for r in &results {
        let c = r.criterion;
        let _ = writeln!(
            text,
            "{} [{:>2}] {:<18} {:>3} records {:>3} failed {:>6} ms  {}",
            if r.passed() { "PASS" } else { "FAIL" },
            c.number(),
            c.name(),
            r.records.len(),
            r.failures(),
            r.millis,
            c.description()
        );
    }
    let passed = results.iter().filter(|r| r.passed()).count();
    let _ = writeln!(text, "{passed}/{} criteria passed", results.len());
    Ok(Output {
        text,
        records: results.into_iter().flat_map(|r| r.records).collect(),
    })
}
