use dunklpoly::dunklop::{eigencheck, eigencheck_gaussian, GaussianPoly, OperatorSpec};
use dunklpoly::exactnum::{int, rat};
use dunklpoly::families::{generate_monic, CbiParams, ChiharaParams, Family, YParams};
use dunklpoly::Rational;

fn check_family(spec: &OperatorSpec, family: &Family, n_max: usize) {
    let op = spec.build().unwrap();
    for (n, p) in generate_monic(family, n_max).unwrap().iter().enumerate() {
        let lambda = spec.eigenvalue(n).unwrap();
        let r = eigencheck(&op, p, &lambda).unwrap();
        assert!(r.is_zero(), "{} n={n}: residual {r}", spec.name());
    }
}

#[test]
fn chihara_operator() {
    let p = ChiharaParams::new(rat(-1, 3), rat(3, 4), rat(-2, 5));
    for eps in [int(0), rat(2, 3), int(5)] {
        let spec = OperatorSpec::ChiharaD { params: p.clone(), eps };
        check_family(&spec, &Family::Chihara(p.clone()), 10);
    }
}

#[test]
fn cbi_operator() {
    let p = CbiParams::new(rat(5, 2), rat(3, 4), rat(1, 3), rat(2, 7));
    for alpha in [int(0), rat(7, 5)] {
        let spec = OperatorSpec::CbiK { params: p.clone(), alpha };
        check_family(&spec, &Family::Cbi(p.clone()), 8);
    }
}

#[test]
fn gegenbauer_operators() {
    let (a, b) = (rat(1, 2), int(2));
    let spec = OperatorSpec::GegenbauerW { alpha: a.clone(), beta: b.clone(), eps: rat(2, 3) };
    check_family(&spec, &Family::Gegenbauer { alpha: a, beta: b }, 10);

    let (mu, alpha) = (rat(3, 4), rat(1, 3));
    let spec = OperatorSpec::GegenbauerQ { mu: mu.clone(), alpha: alpha.clone() };
    let fam = Family::Gegenbauer { alpha: mu - rat(1, 2), beta: alpha };
    check_family(&spec, &fam, 10);
}

#[test]
fn y_and_hermite_operators() {
    let p = YParams::new(rat(3, 4), rat(2, 5));
    let spec = OperatorSpec::YZ { params: p.clone(), eps: rat(2, 3) };
    check_family(&spec, &Family::Y(p), 10);

    let mu = rat(1, 3);
    let spec = OperatorSpec::GhOmega { mu: mu.clone(), eps: int(5) };
    check_family(&spec, &Family::GeneralizedHermite { mu: mu.clone() }, 10);

    let spec = OperatorSpec::GhOmegaTilde { mu: mu.clone(), eps: rat(2, 3) };
    let op = spec.build().unwrap();
    let polys = generate_monic(&Family::GeneralizedHermite { mu }, 8).unwrap();
    for (n, h) in polys.into_iter().enumerate() {
        let lambda: Rational = spec.eigenvalue(n).unwrap();
        let r = eigencheck_gaussian(&op, &GaussianPoly::new(h), &lambda).unwrap();
        assert!(r.is_zero(), "n={n}");
    }
}
