use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 10_000;
const SPLIT_TOL: f64 = 1e-15;

/// Symmetric tridiagonal matrix; `offdiag[i]` couples rows `i` and `i + 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymTridiag {
    pub diag: Vec<f64>,
    pub offdiag: Vec<f64>,
}

impl SymTridiag {
    pub fn new(diag: Vec<f64>, offdiag: Vec<f64>) -> Self {
        assert_eq!(offdiag.len() + 1, diag.len().max(1), "offdiag must be one shorter than diag");
        SymTridiag { diag, offdiag }
    }

    pub fn norm_inf(&self) -> f64 {
        (0..self.diag.len())
            .map(|i| {
                let left = if i > 0 { self.offdiag[i - 1].abs() } else { 0.0 };
                let right = self.offdiag.get(i).map_or(0.0, |v| v.abs());
                self.diag[i].abs() + left + right
            })
            .fold(0.0, f64::max)
    }
}

/// Eigenvalues (ascending) and the first component of each unit eigenvector,
/// by implicit-shift QL with splitting at negligible off-diagonals.
pub fn symtridiag_eigen(t: &SymTridiag) -> Result<(Vec<f64>, Vec<f64>)> {
    let n = t.diag.len();
    let mut d = t.diag.clone();
    let mut e = t.offdiag.clone();
    e.push(0.0);
    // Only the first row of the eigenvector matrix is needed; rotations act on it independently.
    let mut z = vec![0.0; n];
    if n > 0 {
        z[0] = 1.0;
    }
    let mut sweeps = 0;
    for l in 0..n {
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= SPLIT_TOL * dd || e[m] == 0.0 {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            sweeps += 1;
            if sweeps > MAX_SWEEPS {
                return Err(Error::NoConvergence { sweeps: MAX_SWEEPS });
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut deflated = false;
            for i in (l..m).rev() {
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                let zf = z[i + 1];
                z[i + 1] = s * z[i] + c * zf;
                z[i] = c * z[i] - s * zf;
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| d[a].total_cmp(&d[b]));
    Ok((order.iter().map(|&i| d[i]).collect(), order.iter().map(|&i| z[i]).collect()))
}

/// Classical weights used after reducing the family weights to a single interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WeightClass {
    /// `t^a (1 - t)^b` on `[0, 1]`
    Jacobi { a: f64, b: f64 },
    /// `t^a e^{-t}` on `[0, ∞)`
    GeneralizedLaguerre { a: f64 },
}

impl WeightClass {
    fn validate(&self) -> Result<()> {
        let ok = match *self {
            WeightClass::Jacobi { a, b } => a > -1.0 && b > -1.0,
            WeightClass::GeneralizedLaguerre { a } => a > -1.0,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidWeight(format!("{self:?}: exponents must exceed -1")))
        }
    }

    /// `∫ t^j w(t) dt`
    pub fn moment(&self, j: usize) -> f64 {
        match *self {
            WeightClass::Jacobi { a, b } => {
                let j = j as f64;
                (ln_gamma(a + 1.0 + j) + ln_gamma(b + 1.0) - ln_gamma(a + b + 2.0 + j)).exp()
            }
            WeightClass::GeneralizedLaguerre { a } => ln_gamma(a + 1.0 + j as f64).exp(),
        }
    }

    /// Monic recurrence coefficients `(b_k, u_k)` for `k < n`.
    fn recurrence(&self, n: usize) -> Vec<(f64, f64)> {
        match *self {
            WeightClass::Jacobi { a, b } => {
                // t = (1 + z)/2 maps to the classical Jacobi weight (1-z)^b (1+z)^a.
                let (al, be) = (b, a);
                let ab = al + be;
                (0..n)
                    .map(|k| {
                        let kf = k as f64;
                        let bz = if k == 0 {
                            (be - al) / (ab + 2.0)
                        } else {
                            (be * be - al * al) / ((2.0 * kf + ab) * (2.0 * kf + ab + 2.0))
                        };
                        let uz = match k {
                            0 => 0.0,
                            1 => 4.0 * (al + 1.0) * (be + 1.0) / ((ab + 2.0).powi(2) * (ab + 3.0)),
                            _ => {
                                let s = 2.0 * kf + ab;
                                4.0 * kf * (kf + al) * (kf + be) * (kf + ab)
                                    / (s * s * (s + 1.0) * (s - 1.0))
                            }
                        };
                        ((1.0 + bz) / 2.0, uz / 4.0)
                    })
                    .collect()
            }
            WeightClass::GeneralizedLaguerre { a } => (0..n)
                .map(|k| {
                    let kf = k as f64;
                    (2.0 * kf + a + 1.0, kf * (kf + a))
                })
                .collect(),
        }
    }
}

/// Gauss rule for a [`WeightClass`]; exact up to rounding for degree `exact_degree = 2n - 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub weight_class: WeightClass,
    pub exact_degree: usize,
}

impl QuadratureRule {
    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&t, &w)| w * f(t)).sum()
    }

    /// Largest relative moment error over `t^j`, `j <= min(2n - 1, 8)`.
    pub fn moment_residual(&self) -> f64 {
        (0..=self.exact_degree.min(8))
            .map(|j| {
                let exact = self.weight_class.moment(j);
                let got = self.integrate(|t| t.powi(j as i32));
                ((got - exact) / exact).abs()
            })
            .fold(0.0, f64::max)
    }
}

/// Golub–Welsch construction of the `n`-point Gauss rule.
pub fn gauss_rule(weight_class: WeightClass, n: usize) -> Result<QuadratureRule> {
    weight_class.validate()?;
    if n == 0 {
        return Err(Error::InvalidWeight("a Gauss rule needs at least one node".into()));
    }
    let coeffs = weight_class.recurrence(n);
    let diag = coeffs.iter().map(|c| c.0).collect();
    let offdiag = coeffs[1..].iter().map(|c| c.1.sqrt()).collect();
    let (nodes, first) = symtridiag_eigen(&SymTridiag::new(diag, offdiag))?;
    let mu0 = weight_class.moment(0);
    let weights = first.iter().map(|v| mu0 * v * v).collect();
    Ok(QuadratureRule {
        nodes,
        weights,
        weight_class,
        exact_degree: 2 * n - 1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn small_matrices() {
        let (ev, _) = symtridiag_eigen(&SymTridiag::new(vec![5.0], vec![])).unwrap();
        assert_eq!(ev, vec![5.0]);
        let a = 1.0 / 3f64.sqrt();
        let (ev, _) = symtridiag_eigen(&SymTridiag::new(vec![0.0, 0.0], vec![a])).unwrap();
        assert_relative_eq!(ev[0], -a, epsilon = 1e-15);
        assert_relative_eq!(ev[1], a, epsilon = 1e-15);
        let (ev, _) = symtridiag_eigen(&SymTridiag::new(vec![0.0; 3], vec![0.7, 0.7])).unwrap();
        let r = 0.7 * 2f64.sqrt();
        for (got, want) in ev.iter().zip([-r, 0.0, r]) {
            assert!((got - want).abs() < 1e-14);
        }
    }

    #[test]
    fn eigen_residual_small() {
        let t = SymTridiag::new(vec![1.0, -2.0, 3.5, 0.25, 4.0], vec![0.5, 1.5, -0.75, 2.0]);
        let (ev, _) = symtridiag_eigen(&t).unwrap();
        // Determinant of T - λI by the continuant recurrence vanishes at each eigenvalue.
        for &l in &ev {
            let (mut p0, mut p1) = (1.0, t.diag[0] - l);
            for i in 1..5 {
                let p2 = (t.diag[i] - l) * p1 - t.offdiag[i - 1].powi(2) * p0;
                p0 = p1;
                p1 = p2;
            }
            assert!(p1.abs() < 1e-10 * t.norm_inf().powi(5));
        }
        assert!(ev.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn rule_examples() {
        let r = gauss_rule(WeightClass::Jacobi { a: 0.0, b: 0.0 }, 1).unwrap();
        assert_relative_eq!(r.nodes[0], 0.5, epsilon = 1e-15);
        assert_relative_eq!(r.weights[0], 1.0, epsilon = 1e-15);
        let r = gauss_rule(WeightClass::Jacobi { a: 0.0, b: 0.0 }, 2).unwrap();
        let h = 1.0 / (2.0 * 3f64.sqrt());
        assert_relative_eq!(r.nodes[0], 0.5 - h, epsilon = 1e-14);
        assert_relative_eq!(r.nodes[1], 0.5 + h, epsilon = 1e-14);
        assert_relative_eq!(r.weights[0], 0.5, epsilon = 1e-14);
        let r = gauss_rule(WeightClass::GeneralizedLaguerre { a: 0.0 }, 1).unwrap();
        assert_relative_eq!(r.nodes[0], 1.0, epsilon = 1e-15);
        assert_relative_eq!(r.weights[0], 1.0, epsilon = 1e-15);
    }

    #[test]
    fn moments_reproduced() {
        for wc in [
            WeightClass::Jacobi { a: 1.5, b: 0.25 },
            WeightClass::Jacobi { a: -0.5, b: -0.5 },
            WeightClass::GeneralizedLaguerre { a: 1.0 },
            WeightClass::GeneralizedLaguerre { a: -1.0 / 6.0 },
        ] {
            for n in 1..20 {
                let r = gauss_rule(wc, n).unwrap();
                assert!(r.moment_residual() < 1e-13, "{wc:?} n={n}: {}", r.moment_residual());
                assert!(r.weights.iter().all(|&w| w > 0.0));
            }
        }
    }

    #[test]
    fn invalid_weight() {
        assert!(gauss_rule(WeightClass::Jacobi { a: -1.0, b: 0.0 }, 3).is_err());
    }
}
