//! Shock placement in multi-valued profiles.
//!
//! Both rules keep the flux potential continuous, `Φ(u_l) = Φ(u_r)`. The
//! continuity rule additionally keeps `Φ' = D` continuous; the equal-area
//! rule asks that the level `Φ(u_l)` cut off lobes of equal area from `Φ`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{DiffusivityKind, DiffusivityModel, ReactionDiffusion};
use crate::roots::{bisect, monotone_level_root, MAX_ITERATIONS};
use crate::scalar::Scalar;
use crate::solution::{Branch, Family, MultiValuedProfile, ProfileSample};

/// Absolute residual target for the 2×2 shock systems.
pub const RESIDUAL_TOL: f64 = 1e-13;

/// Number of subintervals scanned for sign changes of the reduced
/// continuity function.
const SCAN_INTERVALS: usize = 256;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ShockRule {
    Continuity,
    EqualArea,
}

impl ShockRule {
    pub fn as_str(&self) -> &'static str {
        match self {
            ShockRule::Continuity => "continuity",
            ShockRule::EqualArea => "equal_area",
        }
    }
}

impl fmt::Display for ShockRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Position of a shock in space-time.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ShockLocation<T> {
    pub t: T,
    pub x: T,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ShockPair<T> {
    pub u_l: T,
    pub u_r: T,
    pub rule: ShockRule,
    pub phi_level: T,
    pub location: Option<ShockLocation<T>>,
}

impl<T: Scalar> ShockPair<T> {
    fn new(model: &DiffusivityModel<T>, u_l: T, u_r: T, rule: ShockRule) -> Self {
        Self {
            u_l,
            u_r,
            rule,
            phi_level: model.phi(u_l),
            location: None,
        }
    }

    pub fn width(&self) -> T {
        self.u_r - self.u_l
    }

    /// Travelling-wave shock coordinate `z_s = ln(Φ(u_l)/c1) / k`.
    pub fn travelling_location(&self, sys: &ReactionDiffusion<T>) -> Result<T> {
        Family::Travelling.check(&sys.params)?;
        Ok((self.phi_level / sys.params.c1).ln() / sys.params.k)
    }

    /// Shock positions of `family` at time `t` (none once the profile has
    /// dropped below the shock level).
    pub fn locations(&self, sys: &ReactionDiffusion<T>, family: Family, t: T) -> Result<Vec<T>> {
        Ok(sys.level_set(family, t, self.phi_level)?.positions())
    }

    pub fn located(self, t: T, x: T) -> Self {
        Self {
            location: Some(ShockLocation { t, x }),
            ..self
        }
    }

    /// `max(|Φ(u_r) - Φ(u_l)|, |D(u_r) - D(u_l)|)`.
    pub fn continuity_residual(&self, model: &DiffusivityModel<T>) -> T {
        let f1 = model.phi(self.u_r) - model.phi(self.u_l);
        let f2 = model.diffusivity(self.u_r) - model.diffusivity(self.u_l);
        f1.abs().max(f2.abs())
    }

    /// `∫_{u_l}^{u_r} (Φ(u) - Φ(u_l)) du` from the exact antiderivative.
    pub fn equal_area_residual(&self, model: &DiffusivityModel<T>) -> T {
        equal_area_integral(model, self.u_l, self.u_r, model.phi(self.u_l))
    }
}

fn equal_area_integral<T: Scalar>(model: &DiffusivityModel<T>, lo: T, hi: T, level: T) -> T {
    model.flux_potential().integral(lo, hi) - level * (hi - lo)
}

/// Closed-form continuity endpoints for `D = (u - a)(u - b)`; valid for any
/// `a <= b`, collapsing to `(a, a)` when `a = b`.
pub fn quadratic_shock_endpoints<T: Scalar>(a: T, b: T) -> (T, T) {
    let two = T::lit(2.0);
    let spread = T::lit(3.0).sqrt() * (b - a);
    ((a + b - spread) / two, (a + b + spread) / two)
}

fn require_positive<T: Scalar>(pair: ShockPair<T>) -> Result<ShockPair<T>> {
    if pair.u_l <= T::zero() {
        return Err(Error::InfeasibleShock {
            u_l: pair.u_l.as_f64(),
        });
    }
    if pair.u_r >= T::one() {
        return Err(Error::Domain(format!(
            "upper shock endpoint u_r = {} is not below 1",
            pair.u_r
        )));
    }
    Ok(pair)
}

/// Continuity shock for the quadratic diffusivity in closed form.
pub fn shock_quadratic_closed_form<T: Scalar>(model: &DiffusivityModel<T>) -> Result<ShockPair<T>> {
    if model.kind() != DiffusivityKind::Quadratic {
        return Err(Error::InvalidModel(
            "closed-form shock endpoints need a quadratic diffusivity".into(),
        ));
    }
    let (u_l, u_r) = quadratic_shock_endpoints(model.a(), model.b());
    require_positive(ShockPair::new(model, u_l, u_r, ShockRule::Continuity))
}

/// Lower bracket end for the left shock endpoint. The multivalued band
/// may start below zero; shocks found there are reported as infeasible.
fn lower_bracket<T: Scalar>(model: &DiffusivityModel<T>) -> (T, T) {
    let (lo, hi) = model.multivalued_band();
    let lo = if lo.is_finite() { lo } else { model.a() - T::one() };
    let hi = if hi.is_finite() { hi } else { model.b() + T::one() };
    (lo, hi)
}

/// Upper-piece density with the same flux potential as `u_l`.
fn partner<T: Scalar>(model: &DiffusivityModel<T>, u_l: T, upper_end: T) -> Option<T> {
    monotone_level_root(|u| model.phi(u), model.phi(u_l), model.b(), upper_end)
}

/// Damped Newton iteration on `Φ(u_r) = Φ(u_l)`, `D(u_r) = D(u_l)`,
/// confined to `u_l < a`, `u_r > b`.
fn continuity_newton<T: Scalar>(
    model: &DiffusivityModel<T>,
    start: (T, T),
) -> std::result::Result<(T, T), Vec<f64>> {
    let residual = |l: T, r: T| {
        [
            model.phi(r) - model.phi(l),
            model.diffusivity(r) - model.diffusivity(l),
        ]
    };
    let norm = |f: [T; 2]| f[0].abs().max(f[1].abs());
    let tol = T::tol(RESIDUAL_TOL);
    let (mut l, mut r) = start;
    let mut f = residual(l, r);
    for _ in 0..MAX_ITERATIONS {
        if norm(f) <= tol {
            return Ok((l, r));
        }
        let j11 = -model.diffusivity(l);
        let j12 = model.diffusivity(r);
        let j21 = -model.diffusivity_prime(l);
        let j22 = model.diffusivity_prime(r);
        let det = j11 * j22 - j12 * j21;
        if det == T::zero() || !det.is_finite() {
            break;
        }
        let dl = (f[0] * j22 - f[1] * j12) / det;
        let dr = (j11 * f[1] - j21 * f[0]) / det;
        let mut step = T::one();
        let mut improved = false;
        for _ in 0..60 {
            let nl = l - step * dl;
            let nr = r - step * dr;
            if nl < model.a() && nr > model.b() {
                let nf = residual(nl, nr);
                if norm(nf) < norm(f) {
                    l = nl;
                    r = nr;
                    f = nf;
                    improved = true;
                    break;
                }
            }
            step = step / T::lit(2.0);
        }
        if !improved {
            break;
        }
    }
    if norm(f) <= tol {
        Ok((l, r))
    } else {
        Err(f.iter().map(|x| x.as_f64()).collect())
    }
}

/// Every continuity pair with `u_l` in the lower part of the multivalued
/// band and `u_r` in the upper part, widest first. Pairs are not checked
/// for `u_l > 0`.
pub fn continuity_candidates<T: Scalar>(model: &DiffusivityModel<T>) -> Result<Vec<ShockPair<T>>> {
    let (band_lo, band_hi) = lower_bracket(model);
    let reduced = |u_l: T| match partner(model, u_l, band_hi) {
        Some(u_r) => model.diffusivity(u_r) - model.diffusivity(u_l),
        None => T::nan(),
    };
    let mut found: Vec<(T, T)> = Vec::new();
    let mut last_residuals = Vec::new();
    let step = (model.a() - band_lo) / T::lit(SCAN_INTERVALS as f64);
    let mut left = band_lo;
    let mut f_left = reduced(left);
    for i in 1..=SCAN_INTERVALS {
        let right = if i == SCAN_INTERVALS {
            model.a()
        } else {
            band_lo + step * T::lit(i as f64)
        };
        let f_right = reduced(right);
        if f_left.is_finite() && f_right.is_finite() && (f_left.signum() != f_right.signum() || f_right == T::zero()) {
            if let Some(u_l) = bisect(reduced, left, right) {
                if let Some(u_r) = partner(model, u_l, band_hi) {
                    match continuity_newton(model, (u_l, u_r)) {
                        Ok(p) => found.push(p),
                        Err(res) => last_residuals = res,
                    }
                }
            }
        }
        left = right;
        f_left = f_right;
    }
    // independent Newton start from the quadratic closed form on the roots
    if let Ok(p) = continuity_newton(model, quadratic_shock_endpoints(model.a(), model.b())) {
        found.push(p);
    }
    let dedup = T::tol(1e-9);
    let mut pairs: Vec<ShockPair<T>> = Vec::new();
    for (l, r) in found {
        if l >= model.a() || r <= model.b() {
            continue;
        }
        if pairs
            .iter()
            .all(|p| (p.u_l - l).abs() > dedup || (p.u_r - r).abs() > dedup)
        {
            pairs.push(ShockPair::new(model, l, r, ShockRule::Continuity));
        }
    }
    if pairs.is_empty() {
        return Err(Error::NoConvergence {
            solver: "continuity shock (Newton with bisection fallback)",
            iterations: MAX_ITERATIONS,
            residuals: last_residuals,
        });
    }
    pairs.sort_by(|p, q| {
        q.width()
            .partial_cmp(&p.width())
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    Ok(pairs)
}

/// Shock with `Φ` and `D` continuous; the widest pair when several exist.
pub fn shock_by_continuity<T: Scalar>(model: &DiffusivityModel<T>) -> Result<ShockPair<T>> {
    let widest = continuity_candidates(model)?.remove(0);
    require_positive(widest)
}

/// Shock with `Φ` continuous and equal lobe areas.
///
/// The signed area `G(ℓ) = ∫_{u_l(ℓ)}^{u_r(ℓ)} (Φ - ℓ) du` has
/// `dG/dℓ = -(u_r - u_l) < 0` across the band `[Φ(b), Φ(a)]`, so the level
/// is unique and found by bisection.
pub fn shock_by_equal_area<T: Scalar>(model: &DiffusivityModel<T>) -> Result<ShockPair<T>> {
    let (band_lo, band_hi) = lower_bracket(model);
    let phi = |u: T| model.phi(u);
    // the level stays within [Φ(b), Φ(a)], so a missing sign change only
    // means rounding at a bracket end
    let clamped = |level: T, lo: T, hi: T| {
        monotone_level_root(phi, level, lo, hi).unwrap_or_else(|| {
            if (phi(lo) - level).abs() <= (phi(hi) - level).abs() {
                lo
            } else {
                hi
            }
        })
    };
    let ends = |level: T| (clamped(level, band_lo, model.a()), clamped(level, model.b(), band_hi));
    let area = |level: T| {
        let (l, r) = ends(level);
        equal_area_integral(model, l, r, level)
    };
    let level = bisect(area, model.phi(model.b()), model.phi(model.a())).ok_or_else(|| {
        Error::NoConvergence {
            solver: "equal-area shock (level bisection)",
            iterations: 0,
            residuals: vec![
                area(model.phi(model.b())).as_f64(),
                area(model.phi(model.a())).as_f64(),
            ],
        }
    })?;
    let (u_l, u_r) = ends(level);
    let pair = ShockPair {
        u_l,
        u_r,
        rule: ShockRule::EqualArea,
        phi_level: level,
        location: None,
    };
    let residual = pair.equal_area_residual(model);
    if residual.abs() > T::tol(1e-12) {
        return Err(Error::NoConvergence {
            solver: "equal-area shock",
            iterations: MAX_ITERATIONS,
            residuals: vec![residual.as_f64()],
        });
    }
    require_positive(pair)
}

pub fn shock_by_rule<T: Scalar>(model: &DiffusivityModel<T>, rule: ShockRule) -> Result<ShockPair<T>> {
    match rule {
        ShockRule::Continuity => shock_by_continuity(model),
        ShockRule::EqualArea => shock_by_equal_area(model),
    }
}

/// Density of the shocked single-valued solution at flux level `v`: upper
/// branch above the shock level, lower branch below. `None` outside the
/// support.
pub fn shocked_density<T: Scalar>(model: &DiffusivityModel<T>, pair: &ShockPair<T>, v: T) -> Option<T> {
    let phi = |u: T| model.phi(u);
    if v >= pair.phi_level {
        monotone_level_root(phi, v, pair.u_r, T::one())
    } else {
        monotone_level_root(phi, v, T::zero(), pair.u_l)
    }
}

/// Where the shocked profile jumps between the upper and lower branch.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ShockCrossing<T> {
    pub x: T,
    /// Whether the upper branch lies to the left of the jump.
    pub upper_on_left: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ShockedProfile<T> {
    pub t: T,
    /// One sample per `x`, strictly increasing in `x`.
    pub samples: Vec<ProfileSample<T>>,
    pub crossings: Vec<ShockCrossing<T>>,
    pub pair: ShockPair<T>,
}

/// Keeps the upper branch where the level is at or above `Φ(u_l)` and the
/// lower branch elsewhere, and locates each jump by bisection on the level.
pub fn apply_shock<T: Scalar>(
    sys: &ReactionDiffusion<T>,
    profile: &MultiValuedProfile<T>,
    pair: &ShockPair<T>,
) -> Result<ShockedProfile<T>> {
    let t = profile.t;
    let slack = T::tol(1e-9);
    let mut samples: Vec<ProfileSample<T>> = Vec::new();
    let mut sides: Vec<bool> = Vec::new();
    let mut i = 0;
    let all = &profile.samples;
    while i < all.len() {
        let x = all[i].x;
        let mut j = i;
        while j < all.len() && all[j].x == x {
            j += 1;
        }
        let group = &all[i..j];
        let upper = sys.level(x, t) >= pair.phi_level;
        let chosen = if upper {
            group
                .iter()
                .filter(|s| s.u >= pair.u_r - slack)
                .max_by(|p, q| p.u.partial_cmp(&q.u).unwrap_or(std::cmp::Ordering::Equal))
        } else {
            group
                .iter()
                .filter(|s| s.u <= pair.u_l + slack)
                .min_by(|p, q| p.u.partial_cmp(&q.u).unwrap_or(std::cmp::Ordering::Equal))
        };
        let chosen = chosen.ok_or(Error::ShockMismatch { x: x.as_f64() })?;
        samples.push(ProfileSample {
            x,
            u: chosen.u,
            branch: if upper { Branch::Upper } else { Branch::Lower },
        });
        sides.push(upper);
        i = j;
    }
    let mut crossings = Vec::new();
    for w in 0..samples.len().saturating_sub(1) {
        if sides[w] != sides[w + 1] {
            let (x0, x1) = (samples[w].x, samples[w + 1].x);
            let x = bisect(|x| sys.level(x, t) - pair.phi_level, x0, x1).unwrap_or(x0);
            crossings.push(ShockCrossing {
                x,
                upper_on_left: sides[w],
            });
        }
    }
    let pair = match crossings.first() {
        Some(c) => pair.located(t, c.x),
        None => *pair,
    };
    Ok(ShockedProfile {
        t,
        samples,
        crossings,
        pair,
    })
}

/// Values on either side of a shock.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Jump<T> {
    /// Value at `u_l`.
    pub lower: T,
    /// Value at `u_r`.
    pub upper: T,
    pub jump: T,
}

impl<T: Scalar> Jump<T> {
    fn new(lower: T, upper: T) -> Self {
        Self {
            lower,
            upper,
            jump: (upper - lower).abs(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ShockJumps<T> {
    pub phi: Jump<T>,
    pub diffusivity: Jump<T>,
    pub reaction: Jump<T>,
    pub u_x: Jump<T>,
    pub u_t: Jump<T>,
}

/// Jumps of `Φ`, `D`, `R`, `u_x` and `u_t` across the shock. Gradients use
/// `Φ_x = e^{At} Ψ'(x_s)` at the pair's location, or the travelling-wave
/// identity `Φ_z = k Φ` when the pair is not located.
pub fn shock_continuity_report<T: Scalar>(
    sys: &ReactionDiffusion<T>,
    pair: &ShockPair<T>,
) -> Result<ShockJumps<T>> {
    let m = &sys.model;
    let (l, r) = (pair.u_l, pair.u_r);
    let grad = match pair.location {
        Some(loc) => sys.level_gradient(loc.x, loc.t),
        None => sys.params.k * pair.phi_level,
    };
    let growth = sys.params.growth;
    let (dl, dr) = (m.diffusivity(l), m.diffusivity(r));
    Ok(ShockJumps {
        phi: Jump::new(m.phi(l), m.phi(r)),
        diffusivity: Jump::new(dl, dr),
        reaction: Jump::new(sys.reaction(l)?, sys.reaction(r)?),
        u_x: Jump::new(grad / dl, grad / dr),
        u_t: Jump::new(growth * m.phi(l) / dl, growth * m.phi(r) / dr),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::linspace;
    use crate::solution::Family;

    fn quad(a: f64, b: f64) -> DiffusivityModel<f64> {
        DiffusivityModel::<f64>::quadratic(a, b).unwrap()
    }

    #[test]
    fn closed_form_reference_endpoints() {
        let p = shock_quadratic_closed_form(&quad(0.2, 0.4)).unwrap();
        assert!((p.u_l - 0.126_794_919_243_112_27).abs() < 1e-12);
        assert!((p.u_r - 0.473_205_080_756_887_7).abs() < 1e-12);
        assert!(p.continuity_residual(&quad(0.2, 0.4)) <= 1e-12);
        assert_eq!(quadratic_shock_endpoints(0.3, 0.3), (0.3, 0.3));
        let err = shock_quadratic_closed_form(&quad(0.05, 0.4)).unwrap_err();
        match err {
            Error::InfeasibleShock { u_l } => assert!((u_l + 0.078_108_891_324_553_4).abs() < 1e-12),
            e => panic!("{e}"),
        }
        let quartic = DiffusivityModel::<f64>::quartic(0.2, 0.4, 0.6, 0.2).unwrap();
        assert!(shock_quadratic_closed_form(&quartic).is_err());
    }

    #[test]
    fn numerical_continuity_matches_closed_form() {
        for &(a, b) in &[(0.2, 0.4), (0.1, 0.3), (0.25, 0.6)] {
            let m = quad(a, b);
            let exact = shock_quadratic_closed_form(&m).unwrap();
            let num = shock_by_continuity(&m).unwrap();
            assert!((exact.u_l - num.u_l).abs() < 1e-12, "{a} {b}");
            assert!((exact.u_r - num.u_r).abs() < 1e-12, "{a} {b}");
        }
        assert!(matches!(shock_by_continuity(&quad(0.05, 0.4)), Err(Error::InfeasibleShock { .. })));
    }

    #[test]
    fn quartic_rules_differ() {
        let m = DiffusivityModel::<f64>::quartic(0.2, 0.4, 0.6, 0.2).unwrap();
        let c = shock_by_continuity(&m).unwrap();
        let e = shock_by_equal_area(&m).unwrap();
        assert!(c.continuity_residual(&m) <= 1e-12);
        assert!(e.equal_area_residual(&m).abs() <= 1e-12);
        assert!((m.phi(e.u_l) - m.phi(e.u_r)).abs() <= 1e-12);
        assert!((c.u_l - e.u_l).abs() > 1e-3);
        assert!(c.width() > e.width());
    }

    #[test]
    fn symmetric_quartic_rules_agree() {
        let m = DiffusivityModel::<f64>::quartic(0.2, 0.4, 0.3, 0.2).unwrap();
        let c = shock_by_continuity(&m).unwrap();
        let e = shock_by_equal_area(&m).unwrap();
        assert!((c.u_l + c.u_r - 0.6).abs() < 1e-12);
        assert!((c.u_l - e.u_l).abs() < 1e-10 && (c.u_r - e.u_r).abs() < 1e-10);
    }

    #[test]
    fn travelling_wave_shock_placement() {
        let sys = ReactionDiffusion::with_unit_wavenumber(quad(0.2, 0.4), 0.0).unwrap();
        let pair = shock_by_continuity(&sys.model).unwrap();
        let z_s = pair.travelling_location(&sys).unwrap();
        let grid = linspace(-15.0, 0.0, 1501);
        let profile = sys.travelling_wave_profile(&grid).unwrap();
        let shocked = apply_shock(&sys, &profile, &pair).unwrap();
        assert_eq!(shocked.crossings.len(), 1);
        assert!((shocked.crossings[0].x - z_s).abs() < 1e-10);
        assert!(shocked.crossings[0].upper_on_left);
        for w in shocked.samples.windows(2) {
            assert!(w[0].x < w[1].x);
            assert!(w[1].u < w[0].u);
        }
        assert!(shocked.samples.iter().all(|s| s.u <= pair.u_l + 1e-12 || s.u >= pair.u_r - 1e-12));
    }

    #[test]
    fn receding_profile_has_one_jump() {
        let m = quad(0.2, 0.4);
        let phi0 = m.phi(0.0);
        let sys = ReactionDiffusion::with_unit_wavenumber(m, -phi0).unwrap();
        let pair = shock_by_continuity(&sys.model).unwrap();
        let l0 = sys.boundary_position(Family::Receding, 0.0).unwrap().positions()[0];
        let grid = linspace(0.0, l0, 800);
        let shocked = apply_shock(&sys, &sys.sample_profile(0.0, &grid).unwrap(), &pair).unwrap();
        assert_eq!(shocked.crossings.len(), 1);
        let xs = pair.locations(&sys, Family::Receding, 0.0).unwrap();
        assert!((shocked.crossings[0].x - xs[0]).abs() < 1e-10);
        for w in shocked.samples.windows(2) {
            assert!(w[1].u < w[0].u);
        }
    }

    #[test]
    fn colliding_profile_becomes_smooth() {
        let m = quad(0.2, 0.4);
        let phi0 = m.phi(0.0);
        let sys = ReactionDiffusion::with_unit_wavenumber(m, phi0).unwrap();
        let pair = shock_by_continuity(&sys.model).unwrap();
        // centre level 2 c1 e^{At} below Φ(u_l)
        let t = ((pair.phi_level / (2.0 * sys.params.c1)).ln() / sys.params.growth) + 0.5;
        let grid = linspace(-3.0, 3.0, 301);
        let profile = sys.sample_profile(t, &grid).unwrap();
        let shocked = apply_shock(&sys, &profile, &pair).unwrap();
        assert!(shocked.crossings.is_empty());
        assert!(shocked.samples.iter().all(|s| s.u < pair.u_l));
        // earlier both fronts carry a shock
        let t_early = t - 20.0;
        let profile = sys.sample_profile(t_early, &linspace(-8.0, 8.0, 801)).unwrap();
        assert_eq!(apply_shock(&sys, &profile, &pair).unwrap().crossings.len(), 2);
    }

    #[test]
    fn continuity_preserves_everything() {
        let sys = ReactionDiffusion::with_unit_wavenumber(quad(0.2, 0.4), 0.0).unwrap();
        let pair = shock_by_continuity(&sys.model).unwrap();
        let j = shock_continuity_report(&sys, &pair).unwrap();
        for jump in [j.phi, j.diffusivity, j.reaction, j.u_x, j.u_t] {
            assert!(jump.jump <= 1e-10, "{jump:?}");
        }
    }

    #[test]
    fn equal_area_on_quartic_breaks_d_and_r() {
        let m = DiffusivityModel::<f64>::quartic(0.2, 0.4, 0.6, 0.2).unwrap();
        let sys = ReactionDiffusion::with_unit_wavenumber(m, 0.0).unwrap();
        let e = shock_by_equal_area(&sys.model).unwrap();
        let j = shock_continuity_report(&sys, &e).unwrap();
        assert!(j.diffusivity.jump > 1e-4);
        assert!(j.reaction.jump > 1e-4);
        assert!(j.phi.jump <= 1e-12);
        let c = shock_by_continuity(&sys.model).unwrap();
        let j = shock_continuity_report(&sys, &c).unwrap();
        assert!(j.diffusivity.jump <= 1e-10 && j.reaction.jump <= 1e-10);
    }

    #[test]
    fn mismatched_pair_is_rejected() {
        let sys = ReactionDiffusion::with_unit_wavenumber(quad(0.2, 0.4), 0.0).unwrap();
        let other = shock_by_continuity(&quad(0.1, 0.3)).unwrap();
        let profile = sys.travelling_wave_profile(&linspace(-10.0, 0.0, 200)).unwrap();
        let fake = ShockPair { phi_level: sys.model.phi(0.15), ..other };
        assert!(matches!(apply_shock(&sys, &profile, &fake), Err(Error::ShockMismatch { .. })));
    }

    #[test]
    fn single_precision_shock() {
        let m = DiffusivityModel::<f32>::quadratic(0.2, 0.4).unwrap();
        let p = shock_by_continuity(&m).unwrap();
        assert!((p.u_l - 0.126_794_92).abs() < 1e-5);
        let e = shock_by_equal_area(&m).unwrap();
        assert!((e.u_r - 0.473_205_1).abs() < 1e-4);
    }
}
