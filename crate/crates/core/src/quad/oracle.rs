//! Brute-force reference integration straight from the weight definition.

use super::WeightSpec;
use crate::exactnum::LaurentPoly;

const MAX_DEPTH: u32 = 50;

/// Adaptive Simpson on `[a, b]` with local error control and Richardson correction.
pub fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    #[allow(clippy::too_many_arguments)]
    fn rec(f: &dyn Fn(f64) -> f64, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: u32) -> f64 {
        let m = 0.5 * (a + b);
        let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
        let (flm, frm) = (f(lm), f(rm));
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            return left + right + delta / 15.0;
        }
        rec(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1)
            + rec(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
    }
    let m = 0.5 * (a + b);
    let (fa, fm, fb) = (f(a), f(m), f(b));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    rec(f, a, b, fa, fm, fb, whole, tol, MAX_DEPTH)
}

/// `∫ f g ω` over the raw support, truncated to `[-cutoff, cutoff]` for unbounded weights.
pub fn direct_inner_product(spec: &WeightSpec, f: &LaurentPoly, g: &LaurentPoly, cutoff: f64) -> f64 {
    let integrand = |x: f64| f.eval_f64(x) * g.eval_f64(x) * spec.weight(x);
    spec.support()
        .into_iter()
        .map(|(lo, hi)| adaptive_simpson(&integrand, lo.max(-cutoff), hi.min(cutoff), 1e-12))
        .sum()
}
