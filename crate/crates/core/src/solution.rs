//! Exact solutions `Φ(u) = e^{At} Ψ(x)` with `Ψ(x) = c1 e^{kx} + c2 e^{-kx}`,
//! inverted branch by branch, plus the moving boundary `u(L(t), t) = 0`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{DiffusivityKind, DiffusivityModel, ReactionDiffusion, SolutionParams};
use crate::roots::{bisect, cubic_real_roots};
use crate::scalar::Scalar;

/// Solution of the spatial Helmholtz equation `Ψ'' + κΨ = 0` with `κ = -k^2`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HelmholtzProfile<T> {
    pub c1: T,
    pub c2: T,
    pub k: T,
}

impl<T: Scalar> HelmholtzProfile<T> {
    pub fn from_params(params: &SolutionParams<T>) -> Self {
        Self {
            c1: params.c1,
            c2: params.c2,
            k: params.k,
        }
    }

    #[inline]
    pub fn psi(&self, x: T) -> T {
        self.c1 * (self.k * x).exp() + self.c2 * (-self.k * x).exp()
    }

    #[inline]
    pub fn psi_prime(&self, x: T) -> T {
        self.k * (self.c1 * (self.k * x).exp() - self.c2 * (-self.k * x).exp())
    }
}

/// Which monotone piece of `Φ` a density value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    Lower,
    Middle,
    Upper,
}

impl Branch {
    pub fn as_str(&self) -> &'static str {
        match self {
            Branch::Lower => "lower",
            Branch::Middle => "middle",
            Branch::Upper => "upper",
        }
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BranchRoot<T> {
    pub u: T,
    pub branch: Branch,
}

/// All `u ∈ [0, 1]` with `Φ(u) = v`, ascending, labelled by monotone piece:
/// lower on `[0, a]`, middle on `[a, b]`, upper on `[b, 1]`.
pub fn invert_flux_potential<T: Scalar>(
    model: &DiffusivityModel<T>,
    v: T,
) -> Result<Vec<BranchRoot<T>>> {
    let roots = match model.kind() {
        DiffusivityKind::Quadratic => invert_cubic(model, v),
        _ => invert_by_pieces(model, v),
    };
    if roots.is_empty() {
        return Err(Error::NoRoot {
            level: v.as_f64(),
            lo: 0.0,
            hi: 1.0,
        });
    }
    Ok(roots)
}

fn pieces<T: Scalar>(model: &DiffusivityModel<T>) -> [(T, T, Branch); 3] {
    [
        (T::zero(), model.a(), Branch::Lower),
        (model.a(), model.b(), Branch::Middle),
        (model.b(), T::one(), Branch::Upper),
    ]
}

fn invert_by_pieces<T: Scalar>(model: &DiffusivityModel<T>, v: T) -> Vec<BranchRoot<T>> {
    pieces(model)
        .into_iter()
        .filter_map(|(lo, hi, branch)| {
            bisect(|u| model.phi(u) - v, lo, hi).map(|u| BranchRoot { u, branch })
        })
        .collect()
}

fn invert_cubic<T: Scalar>(model: &DiffusivityModel<T>, v: T) -> Vec<BranchRoot<T>> {
    let c = model.flux_potential().polynomial().coeffs();
    let raw = cubic_real_roots(c[3], c[2], c[1], c[0] - v);
    let edge = T::tol(1e-12);
    let residual_tol = T::tol(1e-15) * (T::one() + v.abs());
    let labelled: Vec<(T, Branch)> = if raw.len() == 3 {
        raw.iter()
            .copied()
            .zip([Branch::Lower, Branch::Middle, Branch::Upper])
            .collect()
    } else {
        raw.iter()
            .map(|&u| {
                let branch = if u <= model.a() {
                    Branch::Lower
                } else if u >= model.b() {
                    Branch::Upper
                } else {
                    Branch::Middle
                };
                (u, branch)
            })
            .collect()
    };
    let piece_bounds = |branch: Branch| match branch {
        Branch::Lower => (T::zero(), model.a()),
        Branch::Middle => (model.a(), model.b()),
        Branch::Upper => (model.b(), T::one()),
    };
    labelled
        .into_iter()
        .filter(|&(u, _)| u >= -edge && u <= T::one() + edge)
        .map(|(u, branch)| {
            let u = u.max(T::zero()).min(T::one());
            let u = if (model.phi(u) - v).abs() > residual_tol {
                let (lo, hi) = piece_bounds(branch);
                bisect(|w| model.phi(w) - v, lo, hi).unwrap_or(u)
            } else {
                u
            };
            BranchRoot { u, branch }
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProfileSample<T> {
    pub x: T,
    pub u: T,
    pub branch: Branch,
}

/// Multi-valued density profile at a fixed time, before any shock.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MultiValuedProfile<T> {
    pub t: T,
    /// Sorted by `x`, then by decreasing `u`.
    pub samples: Vec<ProfileSample<T>>,
    pub band: [T; 2],
}

impl<T: Scalar> MultiValuedProfile<T> {
    /// Samples of a single branch in increasing `x`; plotting the three
    /// polylines traces the fold as one continuous curve.
    pub fn branch(&self, branch: Branch) -> Vec<ProfileSample<T>> {
        self.samples.iter().filter(|s| s.branch == branch).copied().collect()
    }

    pub fn is_multivalued(&self) -> bool {
        self.samples.windows(2).any(|w| w[0].x == w[1].x)
    }
}

impl<T: Scalar> ReactionDiffusion<T> {
    pub fn helmholtz(&self) -> HelmholtzProfile<T> {
        HelmholtzProfile::from_params(&self.params)
    }

    /// Flux-potential level `e^{At} Ψ(x)`.
    #[inline]
    pub fn level(&self, x: T, t: T) -> T {
        (self.params.growth * t).exp() * self.helmholtz().psi(x)
    }

    /// `∂x Φ(u) = D(u) u_x = e^{At} Ψ'(x)`.
    #[inline]
    pub fn level_gradient(&self, x: T, t: T) -> T {
        (self.params.growth * t).exp() * self.helmholtz().psi_prime(x)
    }

    /// Every branch value of the solution at each grid point. Points where
    /// the level lies outside the range of `Φ` on `[0, 1]` are left out.
    pub fn sample_profile(&self, t: T, x_grid: &[T]) -> Result<MultiValuedProfile<T>> {
        if x_grid.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::Domain("x grid must be strictly increasing".into()));
        }
        let mut samples = Vec::with_capacity(x_grid.len());
        for &x in x_grid {
            let v = self.level(x, t);
            match invert_flux_potential(&self.model, v) {
                Ok(mut roots) => {
                    roots.reverse();
                    samples.extend(roots.into_iter().map(|r| ProfileSample {
                        x,
                        u: r.u,
                        branch: r.branch,
                    }));
                }
                Err(Error::NoRoot { .. }) => {}
                Err(e) => return Err(e),
            }
        }
        let (lo, hi) = self.model.multivalued_band();
        Ok(MultiValuedProfile {
            t,
            samples,
            band: [lo, hi],
        })
    }

    /// Travelling coordinate of density `u`: `z = ln(Φ(u)/c1) / k`.
    pub fn wave_coordinate(&self, u: T) -> T {
        (self.model.phi(u) / self.params.c1).ln() / self.params.k
    }

    /// Multi-valued travelling wave `u(z)`, `z = x - ct`.
    pub fn travelling_wave_profile(&self, z_grid: &[T]) -> Result<MultiValuedProfile<T>> {
        Family::Travelling.check(&self.params)?;
        self.sample_profile(T::zero(), z_grid)
    }

    /// Left clipping point of the travelling wave: where `u = 1 - eps`.
    pub fn travelling_wave_z_min(&self, eps: T) -> T {
        self.wave_coordinate(T::one() - eps)
    }
}

/// The three solution families distinguished by `(c1, c2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// `c2 = -c1`: front receding towards `x = 0`, `u(0, t) = 1`.
    Receding,
    /// `c2 = c1`: two fronts meeting at `x = 0`.
    Colliding,
    /// `c2 = 0`: constant-speed wave.
    Travelling,
}

impl Family {
    pub fn as_str(&self) -> &'static str {
        match self {
            Family::Receding => "receding",
            Family::Colliding => "colliding",
            Family::Travelling => "travelling",
        }
    }

    pub fn check<T: Scalar>(&self, params: &SolutionParams<T>) -> Result<()> {
        if params.c1 >= T::zero() {
            return Err(Error::FamilyMismatch {
                family: self.as_str(),
                requirement: "c1 < 0",
            });
        }
        let (ok, requirement) = match self {
            Family::Receding => (params.c2 == -params.c1, "c2 = -c1"),
            Family::Colliding => (params.c2 == params.c1, "c2 = c1"),
            Family::Travelling => (params.c2 == T::zero(), "c2 = 0"),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::FamilyMismatch {
                family: self.as_str(),
                requirement,
            })
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Position(s) of the sharp front `u = 0` at one time.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundaryPosition<T> {
    Single(T),
    Pair { left: T, right: T },
    /// Colliding fronts have met; the solution is zero everywhere.
    Collided,
}

impl<T: Scalar> BoundaryPosition<T> {
    pub fn positions(&self) -> Vec<T> {
        match *self {
            BoundaryPosition::Single(x) => vec![x],
            BoundaryPosition::Pair { left, right } => vec![left, right],
            BoundaryPosition::Collided => Vec::new(),
        }
    }
}

/// Kinematics of one front.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundaryState<T> {
    pub t: T,
    pub position: T,
    /// `-D(u) u_x` at the front.
    pub flux: T,
    /// `u_x` at the front.
    pub gradient: T,
    /// `L'(t)`.
    pub speed: T,
}

impl<T: Scalar> BoundaryState<T> {
    /// `u_x - κ Φ(0) / L'(t)`.
    pub fn stefan_residual(&self, params: &SolutionParams<T>, phi0: T) -> T {
        self.gradient - params.kappa * phi0 / self.speed
    }
}

impl<T: Scalar> ReactionDiffusion<T> {
    /// Scaled argument of the closed-form inverse of `e^{At} Ψ(x) = level`:
    /// `level e^{-At} / c1`.
    fn level_ratio(&self, t: T, level: T) -> T {
        level * (-self.params.growth * t).exp() / self.params.c1
    }

    /// `t*` at which colliding fronts meet.
    pub fn collision_time(&self) -> Result<T> {
        Family::Colliding.check(&self.params)?;
        let ratio0 = self.model.phi(T::zero()) / (T::lit(2.0) * self.params.c1);
        Ok(ratio0.ln() / self.params.growth)
    }

    /// Points where `e^{At} Ψ(x) = level`, in closed form per family.
    pub fn level_set(&self, family: Family, t: T, level: T) -> Result<BoundaryPosition<T>> {
        family.check(&self.params)?;
        let k = self.params.k;
        let r = self.level_ratio(t, level);
        let pos = match family {
            Family::Receding => BoundaryPosition::Single((r / T::lit(2.0)).asinh() / k),
            Family::Colliding => {
                let s = r / T::lit(2.0);
                if s < T::one() {
                    BoundaryPosition::Collided
                } else {
                    let l = s.acosh() / k;
                    BoundaryPosition::Pair { left: -l, right: l }
                }
            }
            Family::Travelling => BoundaryPosition::Single(r.ln() / k),
        };
        if pos.positions().iter().any(|x| !x.is_finite()) {
            return Err(Error::NoBoundary { t: t.as_f64() });
        }
        Ok(pos)
    }

    /// Solves `Ψ(L) = Φ(0) e^{-At}` in closed form.
    pub fn boundary_position(&self, family: Family, t: T) -> Result<BoundaryPosition<T>> {
        self.level_set(family, t, self.model.phi(T::zero()))
    }

    /// Front position, flux, slope and speed; the speed is the exact
    /// derivative of the closed-form `L(t)`.
    pub fn boundary_states(&self, family: Family, t: T) -> Result<Vec<BoundaryState<T>>> {
        let pos = self.boundary_position(family, t)?;
        let a = self.params.growth;
        let k = self.params.k;
        let r = self.level_ratio(t, self.model.phi(T::zero()));
        let speeds: Vec<T> = match (family, pos) {
            (Family::Receding, _) => {
                let s = r / T::lit(2.0);
                vec![-a * s / (k * (T::one() + s * s).sqrt())]
            }
            (Family::Colliding, BoundaryPosition::Pair { .. }) => {
                let s = r / T::lit(2.0);
                let v = -a * s / (k * (s * s - T::one()).sqrt());
                vec![-v, v]
            }
            (Family::Colliding, _) => return Err(Error::NoBoundary { t: t.as_f64() }),
            (Family::Travelling, _) => vec![-a / k],
        };
        let d0 = self.model.diffusivity(T::zero());
        Ok(pos
            .positions()
            .into_iter()
            .zip(speeds)
            .map(|(x, speed)| {
                let grad_phi = self.level_gradient(x, t);
                BoundaryState {
                    t,
                    position: x,
                    flux: -grad_phi,
                    gradient: grad_phi / d0,
                    speed,
                }
            })
            .collect())
    }

    /// Stefan-like residual `u_x|_{L} - κ Φ(0) / L'(t)` for every front.
    pub fn stefan_residuals(&self, family: Family, t: T) -> Result<Vec<T>> {
        let phi0 = self.model.phi(T::zero());
        Ok(self
            .boundary_states(family, t)?
            .iter()
            .map(|s| s.stefan_residual(&self.params, phi0))
            .collect())
    }
}
