//! Slow reference computations for auditing the solvers. Nothing outside
//! tests depends on this module; it is compiled only for tests or with the
//! `oracle` feature.

use thiserror::Error;

use crate::model::{DiffusivityModel, ReactionDiffusion};
use crate::shock::ShockPair;

const SIMPSON_MAX_DEPTH: usize = 60;
const BISECTION_STEPS: usize = 200;

#[derive(Debug, Error, PartialEq)]
pub enum OracleError {
    #[error("invalid oracle configuration: {0}")]
    Config(String),
    #[error("adaptive Simpson did not converge on [{lo}, {hi}] (error estimate {estimate:e})")]
    NoConvergence { lo: f64, hi: f64, estimate: f64 },
    #[error("stencil at x = {x}, t = {t} reaches across the shock or the support edge")]
    StencilTooClose { x: f64, t: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OracleConfig {
    pub quad_tol: f64,
    pub h_x: f64,
    pub h_t: f64,
    pub grid_intervals: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            quad_tol: 1e-12,
            h_x: 1e-4,
            h_t: 1e-4,
            grid_intervals: 1_000_000,
        }
    }
}

impl OracleConfig {
    pub fn with_step(self, h: f64) -> Self {
        Self {
            h_x: h,
            h_t: h,
            ..self
        }
    }

    pub fn validate(&self) -> Result<(), OracleError> {
        let positive = self.quad_tol > 0.0 && self.h_x > 0.0 && self.h_t > 0.0;
        if !positive || self.grid_intervals < 2 {
            return Err(OracleError::Config(format!("{self:?}")));
        }
        Ok(())
    }
}

/// Adaptive Simpson quadrature.
pub fn quadrature<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, tol: f64) -> Result<f64, OracleError> {
    if lo == hi {
        return Ok(0.0);
    }
    let (fa, fm, fb) = (f(lo), f((lo + hi) / 2.0), f(hi));
    let whole = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb);
    simpson_step(&f, lo, hi, fa, fm, fb, whole, tol, 0)
}

#[allow(clippy::too_many_arguments)]
fn simpson_step<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: usize,
) -> Result<f64, OracleError> {
    let m = (a + b) / 2.0;
    let (lm, rm) = ((a + m) / 2.0, (m + b) / 2.0);
    let (flm, frm) = (f(lm), f(rm));
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if delta.abs() <= 15.0 * tol {
        return Ok(left + right + delta / 15.0);
    }
    if depth >= SIMPSON_MAX_DEPTH {
        return Err(OracleError::NoConvergence {
            lo: a,
            hi: b,
            estimate: delta.abs() / 15.0,
        });
    }
    Ok(simpson_step(f, a, m, fa, flm, fm, left, tol / 2.0, depth + 1)?
        + simpson_step(f, m, b, fm, frm, fb, right, tol / 2.0, depth + 1)?)
}

/// Composite midpoint rule with `n` cells.
pub fn midpoint_rule<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, n: usize) -> f64 {
    let h = (hi - lo) / n as f64;
    (0..n).map(|i| f(lo + (i as f64 + 0.5) * h)).sum::<f64>() * h
}

/// Plain bisection; `None` without a sign change.
pub fn bisection<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64) -> Option<f64> {
    let (mut lo, mut hi) = (lo, hi);
    let mut flo = f(lo);
    let fhi = f(hi);
    if flo == 0.0 {
        return Some(lo);
    }
    if fhi == 0.0 {
        return Some(hi);
    }
    if flo * fhi > 0.0 || flo.is_nan() || fhi.is_nan() {
        return None;
    }
    for _ in 0..BISECTION_STEPS {
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return Some(mid);
        }
        if (fm < 0.0) == (flo < 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Some(0.5 * (lo + hi))
}

/// Every root of `f` on `[lo, hi]` signalled by a sign change across `n`
/// equal subintervals, refined by bisection.
pub fn bisection_root_grid<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, n: usize) -> Vec<f64> {
    assert!(n >= 2, "bisection grid needs n >= 2");
    let h = (hi - lo) / n as f64;
    let mut roots: Vec<f64> = Vec::new();
    let mut x0 = lo;
    let mut f0 = f(x0);
    for i in 1..=n {
        let x1 = if i == n { hi } else { lo + i as f64 * h };
        let f1 = f(x1);
        let hit = if f0 == 0.0 {
            Some(x0)
        } else if f0 * f1 < 0.0 {
            bisection(&f, x0, x1)
        } else if i == n && f1 == 0.0 {
            Some(x1)
        } else {
            None
        };
        if let Some(r) = hit {
            if roots.last().is_none_or(|&last| (r - last).abs() > 1e-14) {
                roots.push(r);
            }
        }
        x0 = x1;
        f0 = f1;
    }
    roots
}

pub fn central_difference<F: Fn(f64) -> f64>(f: F, x: f64, h: f64) -> f64 {
    (f(x + h) - f(x - h)) / (2.0 * h)
}

pub fn second_difference<F: Fn(f64) -> f64>(f: F, x: f64, h: f64) -> f64 {
    (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h)
}

/// Continuity pairs found by brute force: for each of `n` values of `u_l`
/// on `[lo, a]`, the partner `u_r` on `[b, hi]` comes from a sign-change
/// scan over `n` cells; sign changes of `D(u_r) - D(u_l)` are then refined
/// by nested bisection.
pub fn continuity_pairs_grid(model: &DiffusivityModel<f64>, lo: f64, hi: f64, n: usize) -> Vec<(f64, f64)> {
    let (a, b) = (model.a(), model.b());
    let partner = |u_l: f64| -> Option<f64> {
        let level = model.phi(u_l);
        bisection_root_grid(|u| model.phi(u) - level, b, hi, n).first().copied()
    };
    let reduced = |u_l: f64| match partner(u_l) {
        Some(u_r) => model.diffusivity(u_r) - model.diffusivity(u_l),
        None => f64::NAN,
    };
    let h = (a - lo) / n as f64;
    let values: Vec<(f64, f64)> = (0..=n).map(|i| {
        let u = if i == n { a } else { lo + i as f64 * h };
        (u, reduced(u))
    }).collect();
    let mut pairs = Vec::new();
    for w in values.windows(2) {
        let ((x0, f0), (x1, f1)) = (w[0], w[1]);
        if f0.is_finite() && f1.is_finite() && f0 * f1 < 0.0 {
            if let Some(u_l) = bisection(reduced, x0, x1) {
                if let Some(u_r) = partner(u_l) {
                    pairs.push((u_l, u_r));
                }
            }
        }
    }
    pairs
}

/// `Φ^{-1}` restricted to a monotone piece `[lo, hi]`.
pub fn invert_on_piece(model: &DiffusivityModel<f64>, level: f64, lo: f64, hi: f64) -> Option<f64> {
    bisection(|u| model.phi(u) - level, lo, hi)
}

/// Shocked travelling-wave density at `(x, t)`; `None` outside the support.
pub fn shocked_wave_density(sys: &ReactionDiffusion<f64>, pair: &ShockPair<f64>, x: f64, t: f64) -> Option<f64> {
    let level = sys.level(x, t);
    if level >= pair.phi_level {
        invert_on_piece(&sys.model, level, pair.u_r, 1.0)
    } else {
        invert_on_piece(&sys.model, level, 0.0, pair.u_l)
    }
}

/// `|u_t - (D(u) u_x)_x - R(u)|` at each `(x, t)` for the shocked solution,
/// with central time differences and the conservative spatial stencil using
/// `D((u_i + u_{i±1})/2)`. Every point needs its stencil, widened to `3h`,
/// inside the support and on one side of the shock.
pub fn pde_residual(
    sys: &ReactionDiffusion<f64>,
    pair: &ShockPair<f64>,
    points: &[(f64, f64)],
    cfg: &OracleConfig,
) -> Result<Vec<f64>, OracleError> {
    cfg.validate()?;
    let (hx, ht) = (cfg.h_x, cfg.h_t);
    let m = &sys.model;
    let support = m.phi(0.0);
    let p = &sys.params;
    let reaction = |u: f64| (p.growth / m.diffusivity(u) + p.kappa) * m.phi(u);
    points
        .iter()
        .map(|&(x, t)| {
            let side = sys.level(x, t) >= pair.phi_level;
            for (dx, dt) in [(3.0 * hx, 0.0), (-3.0 * hx, 0.0), (0.0, 3.0 * ht), (0.0, -3.0 * ht)] {
                let v = sys.level(x + dx, t + dt);
                if (v >= pair.phi_level) != side || v <= support {
                    return Err(OracleError::StencilTooClose { x, t });
                }
            }
            let u = |x: f64, t: f64| shocked_wave_density(sys, pair, x, t).ok_or(OracleError::StencilTooClose { x, t });
            let (uc, ue, uw) = (u(x, t)?, u(x + hx, t)?, u(x - hx, t)?);
            let (un, us) = (u(x, t + ht)?, u(x, t - ht)?);
            let u_t = (un - us) / (2.0 * ht);
            let flux_e = m.diffusivity(0.5 * (uc + ue)) * (ue - uc);
            let flux_w = m.diffusivity(0.5 * (uc + uw)) * (uc - uw);
            let diffusion = (flux_e - flux_w) / (hx * hx);
            Ok((u_t - diffusion - reaction(uc)).abs())
        })
        .collect()
}

/// Observed order `log(e_coarse / e_fine) / log(h_coarse / h_fine)`.
pub fn convergence_order(e_coarse: f64, e_fine: f64, h_coarse: f64, h_fine: f64) -> f64 {
    (e_coarse / e_fine).ln() / (h_coarse / h_fine).ln()
}
