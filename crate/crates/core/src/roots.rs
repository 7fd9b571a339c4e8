//! Scalar root finding: closed-form cubics and safeguarded bisection.

use crate::scalar::Scalar;

/// Bisection iteration cap.
pub const MAX_ITERATIONS: usize = 200;

/// Real roots of `c3 u^3 + c2 u^2 + c1 u + c0`, sorted ascending. A double
/// root is reported twice.
pub fn cubic_real_roots<T: Scalar>(c3: T, c2: T, c1: T, c0: T) -> Vec<T> {
    let two = T::lit(2.0);
    let three = T::lit(3.0);
    let b = c2 / c3;
    let c = c1 / c3;
    let d = c0 / c3;
    // u = t - b/3 gives t^3 + p t + q = 0
    let shift = b / three;
    let p = c - b * b / three;
    let q = two * b * b * b / T::lit(27.0) - b * c / three + d;
    let half_q = q / two;
    let third_p = p / three;
    let disc = half_q * half_q + third_p * third_p * third_p;

    let mut roots = if p == T::zero() && q == T::zero() {
        vec![T::zero(); 3]
    } else if disc < T::zero() {
        // three distinct real roots
        let m = two * (-third_p).sqrt();
        let arg = (three * q / (two * p) * (-three / p).sqrt()).max(-T::one()).min(T::one());
        let theta = arg.acos() / three;
        let tau = two * T::PI() / three;
        (0..3)
            .map(|k| m * (theta - tau * T::lit(k as f64)).cos())
            .collect()
    } else if disc == T::zero() {
        let s = (-half_q).cbrt();
        vec![two * s, -s, -s]
    } else {
        // one real root; pick the cube-root branch that avoids cancellation
        let sq = disc.sqrt();
        let w = -half_q - sq.copysign(half_q);
        let s = w.cbrt();
        let t = if s == T::zero() { T::zero() } else { s - third_p / s };
        vec![t]
    };
    for r in roots.iter_mut() {
        *r = *r - shift;
    }
    roots.sort_by(|x, y| x.partial_cmp(y).unwrap_or(std::cmp::Ordering::Equal));
    roots
}

/// Bisection on a bracket with a sign change. Returns `None` when the
/// endpoints have the same strict sign. Terminates on an exact zero, when
/// the bracket stops shrinking, or after [`MAX_ITERATIONS`].
pub fn bisect<T: Scalar, F: Fn(T) -> T>(f: F, lo: T, hi: T) -> Option<T> {
    let (mut lo, mut hi) = (lo, hi);
    let mut flo = f(lo);
    let fhi = f(hi);
    if flo == T::zero() {
        return Some(lo);
    }
    if fhi == T::zero() {
        return Some(hi);
    }
    if flo.signum() == fhi.signum() || flo.is_nan() || fhi.is_nan() {
        return None;
    }
    for _ in 0..MAX_ITERATIONS {
        let mid = lo + (hi - lo) / T::lit(2.0);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid);
        if fm == T::zero() {
            return Some(mid);
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    // endpoint with the smaller residual
    if f(lo).abs() <= f(hi).abs() {
        Some(lo)
    } else {
        Some(hi)
    }
}

/// Solves `f(u) = level` for `u` in `[lo, hi]` where `f` is monotone there.
pub fn monotone_level_root<T: Scalar, F: Fn(T) -> T>(f: F, level: T, lo: T, hi: T) -> Option<T> {
    bisect(|u| f(u) - level, lo, hi)
}
