//! Linear stability: constant states, the essential spectrum of the
//! travelling wave, the pointwise Sturm criterion and the `(a, b)` scan.

use std::fmt;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{DiffusivityModel, ReactionDiffusion};
use crate::scalar::{linspace, Scalar};
use crate::shock::{quadratic_shock_endpoints, ShockPair, ShockRule};

/// Distance kept from `u = 0` and `u = 1` by the interior trace samples.
pub const TRACE_DELTA: f64 = 1e-9;

/// Default number of trace samples per interval.
pub const TRACE_SAMPLES: usize = 200;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConstantState {
    Zero,
    One,
}

impl ConstantState {
    pub fn value<T: Scalar>(&self) -> T {
        match self {
            ConstantState::Zero => T::zero(),
            ConstantState::One => T::one(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    Stable,
    Unstable,
    Marginal,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Classification::Stable => "stable",
            Classification::Unstable => "unstable",
            Classification::Marginal => "marginal",
        })
    }
}

/// Classification of `u = ū` with its witness: the growth rate `R'(ū)` of
/// the most unstable mode, which sits at `α = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConstantStateReport<T> {
    pub state: ConstantState,
    pub classification: Classification,
    pub reaction_derivative: T,
    pub diffusivity: T,
    pub most_unstable_alpha: T,
}

pub fn classify_constant_state<T: Scalar>(
    sys: &ReactionDiffusion<T>,
    state: ConstantState,
) -> Result<ConstantStateReport<T>> {
    let u = state.value::<T>();
    let r_prime = sys.reaction_derivative(u)?;
    // a + b = 1 gives R'(1) = 0 up to rounding
    let scale = sys.params.kappa.abs().max(T::one());
    let classification = if r_prime.abs() <= T::tol(1e-14) * scale {
        Classification::Marginal
    } else if r_prime < T::zero() {
        Classification::Stable
    } else {
        Classification::Unstable
    };
    Ok(ConstantStateReport {
        state,
        classification,
        reaction_derivative: r_prime,
        diffusivity: sys.model.diffusivity(u),
        most_unstable_alpha: T::zero(),
    })
}

/// Samples `λ(α)` of a dispersion relation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DispersionCurve<T> {
    pub alphas: Vec<T>,
    pub lambdas: Vec<Complex<T>>,
}

impl<T: Scalar> DispersionCurve<T> {
    /// `(α, Re λ)` with the largest real part.
    pub fn max_real(&self) -> Option<(T, T)> {
        self.alphas
            .iter()
            .zip(&self.lambdas)
            .map(|(&a, l)| (a, l.re))
            .fold(None, |best, (a, re)| match best {
                Some((_, r)) if r >= re => best,
                _ => Some((a, re)),
            })
    }
}

/// `λ(α) = -α² D(ū) + R'(ū)` for perturbations of a constant state.
pub fn constant_state_dispersion<T: Scalar>(
    sys: &ReactionDiffusion<T>,
    state: ConstantState,
    alphas: &[T],
) -> Result<DispersionCurve<T>> {
    let u = state.value::<T>();
    let d = sys.model.diffusivity(u);
    let r_prime = sys.reaction_derivative(u)?;
    Ok(DispersionCurve {
        alphas: alphas.to_vec(),
        lambdas: alphas
            .iter()
            .map(|&a| Complex::new(-a * a * d + r_prime, T::zero()))
            .collect(),
    })
}

/// Boundary of the essential spectrum of the travelling wave, from the far
/// field `u → 1`: `λ(α) = -α² D(1) - i k D(0) α + R'(1)`.
pub fn essential_spectrum_curve<T: Scalar>(
    sys: &ReactionDiffusion<T>,
    alphas: &[T],
) -> Result<DispersionCurve<T>> {
    let d1 = sys.model.diffusivity(T::one());
    let drift = sys.params.k * sys.model.diffusivity(T::zero());
    let r_prime = sys.reaction_derivative(T::one())?;
    Ok(DispersionCurve {
        alphas: alphas.to_vec(),
        lambdas: alphas
            .iter()
            .map(|&a| Complex::new(-a * a * d1 + r_prime, -drift * a))
            .collect(),
    })
}

/// Derivatives along the travelling wave at density `u`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct WaveDerivatives<T> {
    pub u_z: T,
    pub u_zz: T,
    pub d_z: T,
    pub d_zz: T,
}

/// From `Φ(ū(z)) = c1 e^{kz}`: `u_z = kΦ/D` and
/// `d(u_z)/du = k (1 - Φ D' / D²)`.
pub fn wave_derivatives<T: Scalar>(sys: &ReactionDiffusion<T>, u: T) -> WaveDerivatives<T> {
    let m = &sys.model;
    let k = sys.params.k;
    let d = m.diffusivity(u);
    let dp = m.diffusivity_prime(u);
    let phi = m.phi(u);
    let u_z = k * phi / d;
    let u_zz = u_z * k * (T::one() - phi * dp / (d * d));
    WaveDerivatives {
        u_z,
        u_zz,
        d_z: dp * u_z,
        d_zz: m.diffusivity_second(u) * u_z * u_z + dp * u_zz,
    }
}

/// `½ D(ū)_zz + R'(ū)` at density `u`.
pub fn sturm_criterion<T: Scalar>(sys: &ReactionDiffusion<T>, u: T) -> Result<T> {
    let r_prime = sys.reaction_derivative(u)?;
    if u == T::one() {
        return Ok(r_prime);
    }
    Ok(wave_derivatives(sys, u).d_zz / T::lit(2.0) + r_prime)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SturmCriterionTrace<T> {
    pub u: Vec<T>,
    pub criterion: Vec<T>,
}

impl<T: Scalar> SturmCriterionTrace<T> {
    /// `(u, value)` at the largest criterion value.
    pub fn max(&self) -> Option<(T, T)> {
        self.u
            .iter()
            .zip(&self.criterion)
            .map(|(&u, &c)| (u, c))
            .fold(None, |best, (u, c)| match best {
                Some((_, m)) if m >= c => best,
                _ => Some((u, c)),
            })
    }

    pub fn is_negative(&self) -> bool {
        !self.criterion.is_empty() && self.criterion.iter().all(|&c| c < T::zero())
    }
}

fn trace_points<T: Scalar>(u_l: T, u_r: T, n: usize) -> Vec<T> {
    let delta = T::lit(TRACE_DELTA);
    let mut u = Vec::with_capacity(2 * n + 2);
    if u_l > delta {
        u.push(T::zero());
        u.extend(linspace(delta, u_l, n));
    }
    u.extend(linspace(u_r, T::one() - delta, n));
    u.push(T::one());
    u
}

/// Criterion sampled on `[0, u_l] ∪ [u_r, 1]`: `n` points on
/// `[δ, u_l]` and on `[u_r, 1 - δ]` plus the end states. The lower interval
/// is dropped when `u_l ≤ 0`.
pub fn sturm_criterion_trace<T: Scalar>(
    sys: &ReactionDiffusion<T>,
    pair: &ShockPair<T>,
    n: usize,
) -> Result<SturmCriterionTrace<T>> {
    if pair.rule != ShockRule::Continuity {
        return Err(Error::InvalidParams(
            "the Sturm criterion is evaluated on the continuity-rule shock".into(),
        ));
    }
    if n < 2 {
        return Err(Error::InvalidParams(format!("need at least 2 samples per interval, got {n}")));
    }
    let u = trace_points(pair.u_l, pair.u_r, n);
    let criterion = u
        .iter()
        .map(|&u| sturm_criterion(sys, u))
        .collect::<Result<Vec<_>>>()?;
    Ok(SturmCriterionTrace { u, criterion })
}

/// Grid `a = i/n`, `b = j/n` over `0 < a < b < 1`, `a + b < 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegionGrid {
    pub n: usize,
    pub samples_per_interval: usize,
}

impl RegionGrid {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            samples_per_interval: TRACE_SAMPLES,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegionCell<T> {
    pub i: usize,
    pub j: usize,
    pub a: T,
    pub b: T,
    pub shock_feasible: bool,
    pub sturm_ok: bool,
    pub stable: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StabilityRegionMask<T> {
    pub grid: RegionGrid,
    pub cells: Vec<RegionCell<T>>,
}

/// Why a stable cell borders an unstable one.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryCounts {
    /// Neighbour fails `b < a(2 + √3)`.
    pub feasibility: usize,
    /// Neighbour is feasible but fails the Sturm criterion.
    pub sturm: usize,
}

impl<T: Scalar> StabilityRegionMask<T> {
    pub fn cell(&self, i: usize, j: usize) -> Option<&RegionCell<T>> {
        self.cells.iter().find(|c| c.i == i && c.j == j)
    }

    pub fn stable_count(&self) -> usize {
        self.cells.iter().filter(|c| c.stable).count()
    }

    /// Counts stable/unstable neighbour pairs inside the grid by the
    /// condition that fails on the unstable side.
    pub fn boundary_counts(&self) -> BoundaryCounts {
        let n = self.grid.n;
        let mut index = vec![None; (n + 1) * (n + 1)];
        for (k, c) in self.cells.iter().enumerate() {
            index[c.i * (n + 1) + c.j] = Some(k);
        }
        let mut counts = BoundaryCounts::default();
        for c in self.cells.iter().filter(|c| c.stable) {
            let neighbours = [
                (c.i + 1, c.j),
                (c.i.wrapping_sub(1), c.j),
                (c.i, c.j + 1),
                (c.i, c.j.wrapping_sub(1)),
            ];
            for (i, j) in neighbours {
                if i > n || j > n {
                    continue;
                }
                if let Some(other) = index[i * (n + 1) + j].map(|k| &self.cells[k]) {
                    if !other.shock_feasible {
                        counts.feasibility += 1;
                    } else if !other.sturm_ok {
                        counts.sturm += 1;
                    }
                }
            }
        }
        counts
    }
}

/// Feasibility `b < a(2 + √3)`, i.e. a positive left shock endpoint for the
/// quadratic diffusivity.
pub fn shock_feasible<T: Scalar>(a: T, b: T) -> bool {
    b < a * (T::lit(2.0) + T::lit(3.0).sqrt())
}

/// Evaluates one quadratic model of the scan. The criterion sign does not
/// depend on `k`, so the unit-wavenumber travelling wave is used.
pub fn classify_cell<T: Scalar>(a: T, b: T, samples_per_interval: usize) -> Result<(bool, bool)> {
    let model = DiffusivityModel::quadratic(a, b)?;
    let sys = ReactionDiffusion::with_unit_wavenumber(model, T::zero())?;
    let (u_l, u_r) = quadratic_shock_endpoints(a, b);
    let pair = ShockPair {
        u_l,
        u_r,
        rule: ShockRule::Continuity,
        phi_level: sys.model.phi(u_r),
        location: None,
    };
    let trace = sturm_criterion_trace(&sys, &pair, samples_per_interval)?;
    Ok((shock_feasible(a, b), trace.is_negative()))
}

pub fn stability_region_scan<T: Scalar>(grid: RegionGrid) -> Result<StabilityRegionMask<T>> {
    if grid.n < 2 {
        return Err(Error::InvalidParams(format!("scan needs n >= 2, got {}", grid.n)));
    }
    let n = grid.n;
    let step = T::one() / T::lit(n as f64);
    let mut cells = Vec::new();
    for i in 1..n {
        for j in (i + 1)..n {
            if i + j >= n {
                break;
            }
            let a = T::lit(i as f64) * step;
            let b = T::lit(j as f64) * step;
            let (shock_feasible, sturm_ok) = classify_cell(a, b, grid.samples_per_interval)?;
            cells.push(RegionCell {
                i,
                j,
                a,
                b,
                shock_feasible,
                sturm_ok,
                stable: shock_feasible && sturm_ok,
            });
        }
    }
    Ok(StabilityRegionMask { grid, cells })
}
