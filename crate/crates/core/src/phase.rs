//! Phase plane of the travelling-wave system
//! `D(u) u_z = q`, `D(u) q_z = -c q - D(u) R(u)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::ReactionDiffusion;
use crate::quadrature::integrate;
use crate::scalar::{linspace, Scalar};
use crate::shock::ShockPair;

/// `|D(u)|` below which a point is reported as lying on a wall.
pub const WALL_EPSILON: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhasePoint<T> {
    pub u: T,
    pub q: T,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FieldSample<T> {
    pub u: T,
    pub q: T,
    /// `(du/dz, dq/dz)`, absent on a wall.
    pub direction: Option<(T, T)>,
}

impl<T: Scalar> FieldSample<T> {
    pub fn on_wall(&self) -> bool {
        self.direction.is_none()
    }
}

/// Right-hand side at `(u, q)` with `c = -k D(0)` and the pole-free
/// `D R = (A + κ D) Φ`.
pub fn vector_field<T: Scalar>(sys: &ReactionDiffusion<T>, point: PhasePoint<T>) -> FieldSample<T> {
    let PhasePoint { u, q } = point;
    let d = sys.model.diffusivity(u);
    let direction = if d.abs() < T::lit(WALL_EPSILON) {
        None
    } else {
        let c = sys.params.wave_speed();
        Some((q / d, (-c * q - sys.diffusion_reaction_product(u)) / d))
    };
    FieldSample { u, q, direction }
}

/// Field on an `n × n` grid, `u` varying fastest.
pub fn direction_field<T: Scalar>(
    sys: &ReactionDiffusion<T>,
    u_range: (T, T),
    q_range: (T, T),
    n: usize,
) -> Vec<FieldSample<T>> {
    let us = linspace(u_range.0, u_range.1, n);
    let qs = linspace(q_range.0, q_range.1, n);
    qs.iter()
        .flat_map(|&q| us.iter().map(move |&u| PhasePoint { u, q }))
        .map(|p| vector_field(sys, p))
        .collect()
}

/// The analytic wave `q = kΦ(u)` as two branches separated by the shock.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhaseTrajectory<T> {
    /// `u ∈ [0, u_l]`, ending at `(0, kΦ(0))`.
    pub lower: Vec<PhasePoint<T>>,
    /// `u ∈ [u_r, 1]`, starting from `(1, 0)`.
    pub upper: Vec<PhasePoint<T>>,
    pub pair: ShockPair<T>,
}

pub fn trajectory_flux<T: Scalar>(sys: &ReactionDiffusion<T>, u: T) -> T {
    sys.params.k * sys.model.phi(u)
}

/// Grid points inside the shock are skipped; both branches include their
/// shock endpoint.
pub fn analytic_trajectory<T: Scalar>(
    sys: &ReactionDiffusion<T>,
    pair: &ShockPair<T>,
    u_grid: &[T],
) -> Result<PhaseTrajectory<T>> {
    if let Some(&u) = u_grid.iter().find(|&&u| !(T::zero()..=T::one()).contains(&u)) {
        return Err(Error::Domain(format!("trajectory density {u} outside [0, 1]")));
    }
    let point = |u: T| PhasePoint {
        u,
        q: trajectory_flux(sys, u),
    };
    let mut lower: Vec<T> = u_grid.iter().copied().filter(|&u| u < pair.u_l).collect();
    let mut upper: Vec<T> = u_grid.iter().copied().filter(|&u| u > pair.u_r).collect();
    lower.push(pair.u_l);
    upper.push(pair.u_r);
    let sort = |v: &mut Vec<T>| v.sort_by(|x, y| x.partial_cmp(y).unwrap_or(std::cmp::Ordering::Equal));
    sort(&mut lower);
    sort(&mut upper);
    upper.reverse();
    Ok(PhaseTrajectory {
        lower: lower.into_iter().map(point).collect(),
        upper: upper.into_iter().map(point).collect(),
        pair: *pair,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Nullclines<T> {
    /// `q_z = 0`: `q = -D R / c = (A + κD)Φ / (k D(0))`.
    pub q_nullcline: Vec<PhasePoint<T>>,
    /// `u_z = 0`: `q = 0`.
    pub u_nullcline: Vec<PhasePoint<T>>,
    /// Walls of singularities `u = a`, `u = b`.
    pub walls: [T; 2],
}

pub fn q_nullcline<T: Scalar>(sys: &ReactionDiffusion<T>, u: T) -> T {
    -sys.diffusion_reaction_product(u) / sys.params.wave_speed()
}

pub fn nullclines_and_walls<T: Scalar>(sys: &ReactionDiffusion<T>, u_grid: &[T]) -> Nullclines<T> {
    Nullclines {
        q_nullcline: u_grid
            .iter()
            .map(|&u| PhasePoint {
                u,
                q: q_nullcline(sys, u),
            })
            .collect(),
        u_nullcline: u_grid.iter().map(|&u| PhasePoint { u, q: T::zero() }).collect(),
        walls: [sys.model.a(), sys.model.b()],
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FrontVariant {
    /// `∫₀^{u_a} D R du < -½ g(u_a)²`.
    Smooth,
    /// `∫₀^{u_a} D R du < -½ g(u_a)² + ½ g(0)²`.
    Sharp,
}

impl fmt::Display for FrontVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FrontVariant::Smooth => "smooth",
            FrontVariant::Sharp => "sharp",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LeftMovingReport<T> {
    pub u_a: T,
    pub variant: FrontVariant,
    /// `∫₀^{u_a} D R du`.
    pub integral: T,
    pub bound: T,
    /// `bound - integral`; the condition holds when positive.
    pub margin: T,
    pub holds: bool,
}

/// Necessary condition for a left-moving wave, with `g(u) = D u_z = kΦ(u)`
/// taken from the analytic wave.
pub fn left_moving_condition<T: Scalar>(
    sys: &ReactionDiffusion<T>,
    pair: &ShockPair<T>,
    u_a: T,
    variant: FrontVariant,
) -> Result<LeftMovingReport<T>> {
    if !(u_a > T::zero() && u_a < pair.u_l) {
        return Err(Error::Domain(format!(
            "u_a = {u_a} must lie in (0, u_l) = (0, {})",
            pair.u_l
        )));
    }
    let integral = integrate(|u| sys.diffusion_reaction_product(u), T::zero(), u_a, T::tol(1e-10))?;
    let g = |u: T| trajectory_flux(sys, u);
    let half = T::lit(0.5);
    let mut bound = -half * g(u_a) * g(u_a);
    if variant == FrontVariant::Sharp {
        bound = bound + half * g(T::zero()) * g(T::zero());
    }
    let margin = bound - integral;
    Ok(LeftMovingReport {
        u_a,
        variant,
        integral,
        bound,
        margin,
        holds: margin > T::zero(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::DiffusivityModel;
    use crate::shock::shock_by_continuity;

    fn reference() -> ReactionDiffusion<f64> {
        ReactionDiffusion::with_unit_wavenumber(DiffusivityModel::quadratic(0.2, 0.4).unwrap(), 0.0)
            .unwrap()
    }

    #[test]
    fn equilibrium_and_walls() {
        let sys = reference();
        let f = vector_field(&sys, PhasePoint { u: 1.0, q: 0.0 });
        assert_eq!(f.direction, Some((0.0, 0.0)));
        for u in [0.2, 0.4] {
            assert!(vector_field(&sys, PhasePoint { u, q: 0.01 }).on_wall());
            assert!(sys.diffusion_reaction_product(u).abs() > 1e-3);
        }
    }

    #[test]
    fn flow_reverses_between_walls() {
        let sys = reference();
        let left = vector_field(&sys, PhasePoint { u: 0.1, q: 0.02 }).direction.unwrap();
        let mid = vector_field(&sys, PhasePoint { u: 0.3, q: 0.02 }).direction.unwrap();
        assert!(left.0 > 0.0 && mid.0 < 0.0);
    }

    #[test]
    fn field_is_tangent_to_the_wave() {
        let sys = reference();
        for u in [0.05, 0.3, 0.6, 0.95] {
            let q = trajectory_flux(&sys, u);
            let (du, dq) = vector_field(&sys, PhasePoint { u, q }).direction.unwrap();
            let slope = sys.params.k * sys.model.diffusivity(u);
            let angle = (dq.atan2(du) - slope.atan2(1.0)).abs();
            let angle = angle.min((angle - std::f64::consts::PI).abs());
            assert!(angle < 1e-12, "u = {u}: {angle}");
        }
    }

    #[test]
    fn trajectory_branches() {
        let sys = reference();
        let pair = shock_by_continuity(&sys.model).unwrap();
        let tr = analytic_trajectory(&sys, &pair, &linspace(0.0, 1.0, 101)).unwrap();
        let first = tr.upper.first().unwrap();
        assert_eq!((first.u, first.q), (1.0, 0.0));
        let end = tr.lower.first().unwrap();
        assert_eq!(end.u, 0.0);
        assert!((end.q + 0.113_333_333_333_333_33).abs() < 1e-15);
        let (l, r) = (tr.lower.last().unwrap(), tr.upper.last().unwrap());
        assert!((l.q - r.q).abs() < 1e-12);
        assert!(analytic_trajectory(&sys, &pair, &[1.1]).is_err());
    }

    #[test]
    fn nullcline_end_values() {
        let sys = reference();
        let n = nullclines_and_walls(&sys, &[0.0, 1.0]);
        assert_eq!(n.q_nullcline[0].q, 0.0);
        assert_eq!(n.q_nullcline[1].q, 0.0);
        assert_eq!(n.walls, [0.2, 0.4]);
        // on the q-nullcline the field is horizontal
        let q = q_nullcline(&sys, 0.7);
        let (_, dq) = vector_field(&sys, PhasePoint { u: 0.7, q }).direction.unwrap();
        assert!(dq.abs() < 1e-15);
    }

    #[test]
    fn sharp_condition_holds_and_smooth_fails_near_zero() {
        let sys = reference();
        let pair = shock_by_continuity(&sys.model).unwrap();
        let sharp = left_moving_condition(&sys, &pair, 0.05, FrontVariant::Sharp).unwrap();
        assert!(sharp.holds && sharp.margin > 0.0);
        let smooth = left_moving_condition(&sys, &pair, 1e-3, FrontVariant::Smooth).unwrap();
        assert!(!smooth.holds);
        assert!(left_moving_condition(&sys, &pair, 0.0, FrontVariant::Sharp).is_err());
        assert!(left_moving_condition(&sys, &pair, pair.u_l, FrontVariant::Sharp).is_err());
    }

    #[test]
    fn field_grid_size() {
        let sys = reference();
        let field = direction_field(&sys, (0.0, 1.05), (-0.15, 0.05), 40);
        assert_eq!(field.len(), 1600);
    }
}
