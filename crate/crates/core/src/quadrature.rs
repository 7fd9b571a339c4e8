//! Adaptive Gauss–Kronrod (7/15) quadrature.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

const MAX_DEPTH: usize = 50;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];

// Gauss weights for the nodes XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

fn kronrod<T: Scalar, F: Fn(T) -> T>(f: &F, lo: T, hi: T) -> (T, T) {
    let half = (hi - lo) / T::lit(2.0);
    let center = lo + half;
    let fc = f(center);
    let mut kron = fc * T::lit(WGK[7]);
    let mut gauss = fc * T::lit(WG[3]);
    for i in 0..7 {
        let dx = half * T::lit(XGK[i]);
        let pair = f(center - dx) + f(center + dx);
        kron = kron + pair * T::lit(WGK[i]);
        if i % 2 == 1 {
            gauss = gauss + pair * T::lit(WG[i / 2]);
        }
    }
    (kron * half, ((kron - gauss) * half).abs())
}

/// `∫_lo^hi f` to absolute tolerance `tol`.
pub fn integrate<T: Scalar, F: Fn(T) -> T>(f: F, lo: T, hi: T, tol: T) -> Result<T> {
    if lo == hi {
        return Ok(T::zero());
    }
    let mut total = T::zero();
    let mut stack = vec![(lo, hi, tol, 0usize)];
    while let Some((a, b, eps, depth)) = stack.pop() {
        let (value, err) = kronrod(&f, a, b);
        if err <= eps || depth >= MAX_DEPTH {
            if err > eps {
                return Err(Error::NoConvergence {
                    solver: "adaptive Gauss-Kronrod quadrature",
                    iterations: depth,
                    residuals: vec![err.as_f64()],
                });
            }
            total = total + value;
            continue;
        }
        let mid = a + (b - a) / T::lit(2.0);
        let half_eps = eps / T::lit(2.0);
        stack.push((mid, b, half_eps, depth + 1));
        stack.push((a, mid, half_eps, depth + 1));
    }
    Ok(total)
}
