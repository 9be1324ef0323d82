//! Christoffel and Geronimus transforms at the kernel point `x = 1`, and the
//! rescaling that carries the resulting kernel polynomials onto the Chihara family.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{int, powi, rat, rational_sqrt, to_f64, LaurentPoly, Rational};
use crate::families::{generate_monic, BigM1JacobiParams, ChiharaParams, Family};

/// `K_n = (J_{n+1} - A_n J_n) / (x - 1)` for every consecutive pair of `polys`.
pub fn christoffel(polys: &[LaurentPoly], ratios: &[Rational]) -> Result<Vec<LaurentPoly>> {
    let x_minus_one = LaurentPoly::linear_root(&Rational::one());
    polys
        .windows(2)
        .zip(ratios)
        .enumerate()
        .map(|(n, (pair, a))| {
            (&pair[1] - &pair[0].scale(a))
                .exact_div(&x_minus_one)
                .ok_or(Error::NotDivisible { n })
        })
        .collect()
}

/// `J_n = K_n - C_n K_{n-1}`, with `K_{-1} = 0`.
pub fn geronimus(kernels: &[LaurentPoly], c_ratios: &[Rational]) -> Vec<LaurentPoly> {
    kernels
        .iter()
        .enumerate()
        .map(|(n, k)| {
            if n == 0 {
                k.clone()
            } else {
                k - &kernels[n - 1].scale(&c_ratios[n])
            }
        })
        .collect()
}

/// Recovers `(b_n, u_n)` from a monic list by peeling off `x P_n - P_{n+1}`;
/// fails with `NotDivisible` if the list does not obey a three-term recurrence.
pub fn recurrence_from_list(polys: &[LaurentPoly]) -> Result<Vec<(Rational, Rational)>> {
    let mut out = Vec::new();
    for n in 0..polys.len().saturating_sub(1) {
        let deg = n as i64;
        let diag = polys[n].coeff(deg - 1) - polys[n + 1].coeff(deg);
        let rest = &(&(&LaurentPoly::x() * &polys[n]) - &polys[n + 1]) - &polys[n].scale(&diag);
        let sub = if n == 0 {
            if !rest.is_zero() {
                return Err(Error::NotDivisible { n });
            }
            Rational::zero()
        } else {
            let sub = rest.coeff(deg - 1);
            if rest != polys[n - 1].scale(&sub) {
                return Err(Error::NotDivisible { n });
            }
            sub
        };
        out.push((diag, sub));
    }
    Ok(out)
}

/// Parameter map from big -1 Jacobi `(a, b, c)` to Chihara
/// `(b/2 - 1/2, a/2 + 1/2, -c/s)` with scale `s = sqrt(1 - c²)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelMap {
    pub source: BigM1JacobiParams,
    pub target: ChiharaParams,
    pub scale: Rational,
}

impl KernelMap {
    /// Exact map; requires `1 - c²` to be the square of a rational.
    pub fn exact(source: &BigM1JacobiParams) -> Result<Self> {
        let one_mc2 = int(1) - &source.c * &source.c;
        let scale = rational_sqrt(&one_mc2)
            .filter(|s| !s.is_zero())
            .ok_or_else(|| Error::IrrationalScale(one_mc2.to_string()))?;
        let target = ChiharaParams::new(
            &source.b / int(2) - rat(1, 2),
            &source.a / int(2) + rat(1, 2),
            -&source.c / &scale,
        );
        Ok(KernelMap {
            source: source.clone(),
            target,
            scale,
        })
    }
}

/// Kernel polynomials `K_0..K_N` of the big -1 Jacobi family at `x = 1`.
pub fn kernel_polynomials(params: &BigM1JacobiParams, n_max: usize) -> Result<Vec<LaurentPoly>> {
    let fam = Family::BigMinusOneJacobi(params.clone());
    let polys = generate_monic(&fam, n_max + 1)?;
    let ratios = (0..=n_max).map(|n| params.a_coeff(n)).collect::<Result<Vec<_>>>()?;
    christoffel(&polys, &ratios)
}

/// `s^{-n} K_n(s x)`
pub fn rescale(k: &LaurentPoly, n: usize, s: &Rational) -> LaurentPoly {
    let mut out = LaurentPoly::zero();
    for (e, c) in k.terms() {
        out.add_term(e, c * powi(s, e - n as i64));
    }
    out
}

/// Residuals `s^{-n} K_n(s x) - C_n(x)` against the mapped Chihara polynomials.
pub fn kernel_to_chihara(map: &KernelMap, kernels: &[LaurentPoly]) -> Result<Vec<LaurentPoly>> {
    let n_max = kernels.len().saturating_sub(1);
    let chihara = generate_monic(&Family::Chihara(map.target.clone()), n_max)?;
    Ok(kernels
        .iter()
        .zip(&chihara)
        .enumerate()
        .map(|(n, (k, c))| &rescale(k, n, &map.scale) - c)
        .collect())
}

/// Float path for generic `c`: largest coefficient discrepancy between the
/// rescaled kernels and the Chihara recurrence built with `gamma = -c/s`,
/// relative to the largest coefficient of the Chihara polynomial.
pub fn kernel_to_chihara_float(params: &BigM1JacobiParams, n_max: usize) -> Result<f64> {
    let kernels = kernel_polynomials(params, n_max)?;
    let c = to_f64(&params.c);
    let s = (1.0 - c * c).sqrt();
    let gamma = -c / s;
    let alpha = to_f64(&params.b) / 2.0 - 0.5;
    let beta = to_f64(&params.a) / 2.0 + 0.5;
    let sigma = |n: usize| -> f64 {
        let m = (n / 2) as f64;
        if n == 0 {
            0.0
        } else if n % 2 == 0 {
            m * (m + beta) / ((2.0 * m + alpha + beta) * (2.0 * m + alpha + beta + 1.0))
        } else {
            (m + alpha + 1.0) * (m + alpha + beta + 1.0)
                / ((2.0 * m + alpha + beta + 1.0) * (2.0 * m + alpha + beta + 2.0))
        }
    };
    let mut prev: Vec<f64> = Vec::new();
    let mut cur: Vec<f64> = vec![1.0];
    let mut worst: f64 = 0.0;
    for (n, k) in kernels.iter().enumerate() {
        let scaled: Vec<f64> = (0..=n)
            .map(|e| to_f64(&k.coeff(e as i64)) * s.powi(e as i32 - n as i32))
            .collect();
        let norm = cur.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let err = scaled
            .iter()
            .zip(&cur)
            .fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
        worst = worst.max(err / norm);
        // C_{n+1} = (x - (-1)^n gamma) C_n - sigma_n C_{n-1}
        let diag = if n % 2 == 0 { gamma } else { -gamma };
        let mut next = vec![0.0; n + 2];
        for (e, v) in cur.iter().enumerate() {
            next[e + 1] += v;
            next[e] -= diag * v;
        }
        for (e, v) in prev.iter().enumerate() {
            next[e] -= sigma(n) * v;
        }
        prev = std::mem::replace(&mut cur, next);
    }
    Ok(worst)
}

/// `J_{n+1}(1) - A_n J_n(1)` for `n < polys.len() - 1`.
pub fn evaluation_ratio_residuals(params: &BigM1JacobiParams, n_max: usize) -> Result<Vec<Rational>> {
    let polys = generate_monic(&Family::BigMinusOneJacobi(params.clone()), n_max + 1)?;
    let one = Rational::one();
    (0..=n_max)
        .map(|n| Ok(polys[n + 1].eval(&one) - params.a_coeff(n)? * polys[n].eval(&one)))
        .collect()
}

/// Differences between the recurrence recovered from `kernels` and the closed forms
/// `(-1)^{n+1} c`, `f_n`.
pub fn kernel_recurrence_residuals(
    params: &BigM1JacobiParams,
    kernels: &[LaurentPoly],
) -> Result<Vec<(Rational, Rational)>> {
    recurrence_from_list(kernels)?
        .into_iter()
        .enumerate()
        .map(|(n, (d, u))| Ok((d - params.kernel_diag(n), u - params.kernel_sub(n)?)))
        .collect()
}

/// `sigma_n (1 - c²) - f_n` under the parameter map.
pub fn coefficient_map_residuals(map: &KernelMap, n_max: usize) -> Result<Vec<Rational>> {
    let one_mc2 = &map.scale * &map.scale;
    (1..=n_max)
        .map(|n| Ok(map.target.sigma(n)? * &one_mc2 - map.source.kernel_sub(n)?))
        .collect()
}
