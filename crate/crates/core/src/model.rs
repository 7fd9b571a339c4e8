//! Diffusivity family, flux potential, and the reaction term tied to them.
//!
//! Every diffusivity is stored as `(u - a)(u - b) * cofactor(u)` with the
//! roots kept explicitly, so `D(a)` and `D(b)` are exactly zero. The flux
//! potential is anchored at `u* = 1` and stored as `(u - 1) * reduced(u)`,
//! so `Φ(1)` is exactly zero as well.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::scalar::Scalar;

/// Default half-width of the excluded band around the poles of `R` at `a`, `b`.
pub const POLE_GUARD: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DiffusivityKind {
    Quadratic,
    Quartic,
    GenericPolynomial,
}

/// Antiderivative of the diffusivity with `Φ(1) = 0`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FluxPotential<T> {
    expanded: Polynomial<T>,
    reduced: Polynomial<T>,
    integral: Polynomial<T>,
}

impl<T: Scalar> FluxPotential<T> {
    fn from_diffusivity(d: &Polynomial<T>) -> Self {
        let anti = d.antiderivative();
        let expanded = anti.add(&Polynomial::constant(-anti.eval(T::one())));
        let (reduced, _remainder) = expanded.deflate(T::one());
        let integral = expanded.antiderivative();
        Self {
            expanded,
            reduced,
            integral,
        }
    }

    /// `Φ(u)`, exactly zero at `u = 1`.
    #[inline]
    pub fn eval(&self, u: T) -> T {
        (u - T::one()) * self.reduced.eval(u)
    }

    /// Monomial coefficients of `Φ`.
    pub fn polynomial(&self) -> &Polynomial<T> {
        &self.expanded
    }

    /// `∫_lo^hi Φ(u) du` from the exact antiderivative.
    pub fn integral(&self, lo: T, hi: T) -> T {
        self.integral.eval(hi) - self.integral.eval(lo)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiffusivityModel<T> {
    kind: DiffusivityKind,
    a: T,
    b: T,
    shift: T,
    offset: T,
    cofactor: Polynomial<T>,
    expanded: Polynomial<T>,
    first: Polynomial<T>,
    second: Polynomial<T>,
    flux: FluxPotential<T>,
}

impl<T: Scalar> DiffusivityModel<T> {
    /// `D(u) = (u - a)(u - b)`.
    pub fn quadratic(a: T, b: T) -> Result<Self> {
        Self::check_roots(a, b)?;
        Ok(Self::assemble(
            DiffusivityKind::Quadratic,
            a,
            b,
            T::zero(),
            T::zero(),
            Polynomial::constant(T::one()),
        ))
    }

    /// `D(u) = (u - a)(u - b)((u - c)^2 + d)` with `d > 0`.
    pub fn quartic(a: T, b: T, c: T, d: T) -> Result<Self> {
        Self::check_roots(a, b)?;
        if !c.is_finite() || !d.is_finite() || d <= T::zero() {
            return Err(Error::InvalidModel(format!(
                "quartic factor needs finite c and d > 0, got c = {c}, d = {d}"
            )));
        }
        let cofactor = Polynomial::new(vec![c * c + d, -(c + c), T::one()]);
        Ok(Self::assemble(DiffusivityKind::Quartic, a, b, c, d, cofactor))
    }

    /// Arbitrary polynomial diffusivity given by ascending monomial
    /// coefficients. The two simple roots must be supplied; they are divided
    /// out and the remaining cofactor must stay positive on `[0, 1]`.
    pub fn generic(coeffs: Vec<T>, a: T, b: T) -> Result<Self> {
        Self::check_roots(a, b)?;
        let poly = Polynomial::new(coeffs);
        if poly.degree() < 2 {
            return Err(Error::InvalidModel("polynomial diffusivity needs degree >= 2".into()));
        }
        let scale = poly
            .coeffs()
            .iter()
            .fold(T::zero(), |m, c| m.max(c.abs()))
            .max(T::one());
        let (q1, ra) = poly.deflate(a);
        let (cofactor, rb) = q1.deflate(b);
        let tol = T::tol(1e-10) * scale;
        if ra.abs() > tol || rb.abs() > tol {
            return Err(Error::InvalidModel(format!(
                "supplied roots are not roots of D: D(a) = {ra}, residual at b = {rb}"
            )));
        }
        let n = 257;
        for i in 0..n {
            let u = T::lit(i as f64 / (n - 1) as f64);
            if cofactor.eval(u) <= T::zero() {
                return Err(Error::InvalidModel(format!(
                    "D must be negative only on (a, b); cofactor vanishes or changes sign near u = {u}"
                )));
            }
        }
        Ok(Self::assemble(
            DiffusivityKind::GenericPolynomial,
            a,
            b,
            T::zero(),
            T::zero(),
            cofactor,
        ))
    }

    fn check_roots(a: T, b: T) -> Result<()> {
        if !a.is_finite() || !b.is_finite() || a >= b {
            return Err(Error::InvalidModel(format!(
                "diffusivity roots must be finite with a < b, got a = {a}, b = {b}"
            )));
        }
        Ok(())
    }

    fn assemble(
        kind: DiffusivityKind,
        a: T,
        b: T,
        shift: T,
        offset: T,
        cofactor: Polynomial<T>,
    ) -> Self {
        let expanded = Polynomial::from_roots(&[a, b]).mul(&cofactor);
        let first = expanded.derivative();
        let second = first.derivative();
        let flux = FluxPotential::from_diffusivity(&expanded);
        Self {
            kind,
            a,
            b,
            shift,
            offset,
            cofactor,
            expanded,
            first,
            second,
            flux,
        }
    }

    pub fn kind(&self) -> DiffusivityKind {
        self.kind
    }

    pub fn a(&self) -> T {
        self.a
    }

    pub fn b(&self) -> T {
        self.b
    }

    /// Quartic center shift `c` (zero for other kinds).
    pub fn shift(&self) -> T {
        self.shift
    }

    /// Quartic offset `d` (zero for other kinds).
    pub fn offset(&self) -> T {
        self.offset
    }

    /// Monomial coefficients of `D`.
    pub fn polynomial(&self) -> &Polynomial<T> {
        &self.expanded
    }

    pub fn flux_potential(&self) -> &FluxPotential<T> {
        &self.flux
    }

    /// `D(u)`, exactly zero at the stored roots.
    #[inline]
    pub fn diffusivity(&self, u: T) -> T {
        (u - self.a) * (u - self.b) * self.cofactor.eval(u)
    }

    #[inline]
    pub fn diffusivity_prime(&self, u: T) -> T {
        self.first.eval(u)
    }

    #[inline]
    pub fn diffusivity_second(&self, u: T) -> T {
        self.second.eval(u)
    }

    /// `D`, `D'` or `D''` by `order`; orders above two are zero for the
    /// quadratic kind only, so they are rejected.
    pub fn eval_diffusivity(&self, u: T, order: u8) -> Result<T> {
        match order {
            0 => Ok(self.diffusivity(u)),
            1 => Ok(self.diffusivity_prime(u)),
            2 => Ok(self.diffusivity_second(u)),
            _ => Err(Error::Domain(format!("derivative order must be 0, 1 or 2, got {order}"))),
        }
    }

    #[inline]
    pub fn phi(&self, u: T) -> T {
        self.flux.eval(u)
    }

    /// Whether `D` is symmetric about the midpoint of its roots.
    pub fn is_symmetric(&self) -> bool {
        match self.kind {
            DiffusivityKind::Quadratic => true,
            DiffusivityKind::Quartic => {
                let mid = (self.a + self.b) / T::lit(2.0);
                (self.shift - mid).abs() <= T::tol(1e-14)
            }
            DiffusivityKind::GenericPolynomial => {
                let mid = (self.a + self.b) / T::lit(2.0);
                (1..=16).all(|i| {
                    let s = T::lit(i as f64 / 16.0);
                    let l = self.diffusivity(mid - s);
                    let r = self.diffusivity(mid + s);
                    (l - r).abs() <= T::tol(1e-12) * (T::one() + l.abs())
                })
            }
        }
    }

    /// Bounds `[lo, hi]` of the density band over which `Φ(u) = v` has three
    /// solutions: `lo` is the lower-piece point with `Φ(lo) = Φ(b)` and `hi`
    /// the upper-piece point with `Φ(hi) = Φ(a)`. For the quadratic kind
    /// these are `(3a - b)/2` and `(3b - a)/2`. `lo` may be negative.
    pub fn multivalued_band(&self) -> (T, T) {
        let two = T::lit(2.0);
        let three = T::lit(3.0);
        match self.kind {
            DiffusivityKind::Quadratic => {
                ((three * self.a - self.b) / two, (three * self.b - self.a) / two)
            }
            _ => {
                let lo = crate::roots::monotone_level_root(
                    |u| self.phi(u),
                    self.phi(self.b),
                    self.a - T::one(),
                    self.a,
                )
                .unwrap_or(T::neg_infinity());
                let hi = crate::roots::monotone_level_root(
                    |u| self.phi(u),
                    self.phi(self.a),
                    self.b,
                    self.b + T::one(),
                )
                .unwrap_or(T::infinity());
                (lo, hi)
            }
        }
    }
}

/// Constants of one member of the exact solution family
/// `Φ(u) = e^{At} (c1 e^{kx} + c2 e^{-kx})`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolutionParams<T> {
    pub kappa: T,
    pub k: T,
    /// Growth rate `A = -κ D(0)`.
    pub growth: T,
    pub u_star: T,
    pub c1: T,
    pub c2: T,
}

impl<T: Scalar> SolutionParams<T> {
    /// From the Helmholtz constant `κ < 0`; `k = sqrt(-κ)`.
    pub fn new(model: &DiffusivityModel<T>, kappa: T, c1: T, c2: T) -> Result<Self> {
        if !kappa.is_finite() || kappa >= T::zero() {
            return Err(Error::InvalidParams(format!("kappa must be negative, got {kappa}")));
        }
        Self::build(model, kappa, (-kappa).sqrt(), c1, c2)
    }

    /// From the wavenumber `k > 0`; `κ = -k^2` exactly.
    pub fn from_wavenumber(model: &DiffusivityModel<T>, k: T, c1: T, c2: T) -> Result<Self> {
        if !k.is_finite() || k <= T::zero() {
            return Err(Error::InvalidParams(format!("k must be positive, got {k}")));
        }
        Self::build(model, -(k * k), k, c1, c2)
    }

    fn build(model: &DiffusivityModel<T>, kappa: T, k: T, c1: T, c2: T) -> Result<Self> {
        if !c1.is_finite() || !c2.is_finite() {
            return Err(Error::InvalidParams("c1 and c2 must be finite".into()));
        }
        Ok(Self {
            kappa,
            k,
            growth: -(kappa * model.diffusivity(T::zero())),
            u_star: T::one(),
            c1,
            c2,
        })
    }

    /// Shifts the time origin by `tau`: the returned parameters at time `t`
    /// describe the original solution at `t + tau`.
    pub fn with_time_gauge(self, tau: T) -> Self {
        let s = (self.growth * tau).exp();
        Self {
            c1: self.c1 * s,
            c2: self.c2 * s,
            ..self
        }
    }

    /// Travelling-wave speed `c = -A/k = -k D(0)`.
    pub fn wave_speed(&self) -> T {
        -self.growth / self.k
    }
}

/// A diffusivity model together with one set of solution constants.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReactionDiffusion<T> {
    pub model: DiffusivityModel<T>,
    pub params: SolutionParams<T>,
}

impl<T: Scalar> ReactionDiffusion<T> {
    pub fn new(model: DiffusivityModel<T>, params: SolutionParams<T>) -> Self {
        Self { model, params }
    }

    /// Reference setup: `κ = -1` with `c1 = Φ(0)`, `c2` given.
    pub fn with_unit_wavenumber(model: DiffusivityModel<T>, c2: T) -> Result<Self> {
        let c1 = model.phi(T::zero());
        let params = SolutionParams::from_wavenumber(&model, T::one(), c1, c2)?;
        Ok(Self::new(model, params))
    }

    fn guard(&self, u: T, guard: T) -> Result<()> {
        for root in [self.model.a(), self.model.b()] {
            if (u - root).abs() < guard {
                return Err(Error::PoleAtRoot {
                    u: u.as_f64(),
                    root: root.as_f64(),
                    guard: guard.as_f64(),
                });
            }
        }
        Ok(())
    }

    /// `D(u) R(u) = (A + κ D(u)) Φ(u)`, finite everywhere.
    #[inline]
    pub fn diffusion_reaction_product(&self, u: T) -> T {
        (self.params.growth + self.params.kappa * self.model.diffusivity(u)) * self.model.phi(u)
    }

    /// `R(u) = (A / D(u) + κ) Φ(u)` with the default pole guard.
    pub fn reaction(&self, u: T) -> Result<T> {
        self.reaction_guarded(u, T::lit(POLE_GUARD))
    }

    pub fn reaction_guarded(&self, u: T, guard: T) -> Result<T> {
        self.guard(u, guard)?;
        Ok(self.diffusion_reaction_product(u) / self.model.diffusivity(u))
    }

    /// `R'(u)`; at `u = 0` and `u = 1` the closed forms
    /// `κ D'(0) Φ(0) / D(0)` and `-κ D(1) (D(0)/D(1) - 1)` are used.
    pub fn reaction_derivative(&self, u: T) -> Result<T> {
        self.reaction_derivative_guarded(u, T::lit(POLE_GUARD))
    }

    pub fn reaction_derivative_guarded(&self, u: T, guard: T) -> Result<T> {
        let m = &self.model;
        let kappa = self.params.kappa;
        if u == T::zero() {
            let d0 = m.diffusivity(T::zero());
            return Ok(kappa * m.diffusivity_prime(T::zero()) * m.phi(T::zero()) / d0);
        }
        if u == T::one() {
            let d0 = m.diffusivity(T::zero());
            let d1 = m.diffusivity(T::one());
            return Ok(-kappa * d1 * (d0 / d1 - T::one()));
        }
        self.guard(u, guard)?;
        let a = self.params.growth;
        let d = m.diffusivity(u);
        Ok(-a * m.diffusivity_prime(u) * m.phi(u) / (d * d) + a + kappa * d)
    }
}

/// Outcome of checking the parameter-regime constraints.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FeasibilityReport {
    /// `0 < a < b < 1`.
    pub ordered_roots: bool,
    /// `a + b < 1`: reaction negative at low density and positive at high.
    pub sum_below_one: bool,
    /// `Φ(u) < 0` on `[0, 1)`; for the quadratic kind `b < (a + 2)/3`.
    pub flux_potential_negative: bool,
    /// `b < a(2 + √3)`, so the continuity shock has `u_l > 0`.
    pub shock_lower_positive: bool,
    pub kappa_negative: bool,
    pub overall: bool,
}

/// Reports every regime constraint; never fails.
pub fn validate_params<T: Scalar>(
    model: &DiffusivityModel<T>,
    params: &SolutionParams<T>,
) -> FeasibilityReport {
    let (a, b) = (model.a(), model.b());
    let ordered_roots = T::zero() < a && a < b && b < T::one();
    let sum_below_one = a + b < T::one();
    let flux_potential_negative = match model.kind() {
        DiffusivityKind::Quadratic => b < (a + T::lit(2.0)) / T::lit(3.0),
        // Φ increases on [0, a], so its maximum over [0, 1) is Φ(a).
        _ => model.phi(a) < T::zero() && model.phi(T::zero()) < T::zero(),
    };
    let shock_lower_positive = b < a * (T::lit(2.0) + T::lit(3.0).sqrt());
    let kappa_negative = params.kappa < T::zero();
    FeasibilityReport {
        ordered_roots,
        sum_below_one,
        flux_potential_negative,
        shock_lower_positive,
        kappa_negative,
        overall: ordered_roots
            && sum_below_one
            && flux_potential_negative
            && shock_lower_positive
            && kappa_negative,
    }
}
