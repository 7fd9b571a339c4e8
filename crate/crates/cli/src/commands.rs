//! The five subcommands. Each reads a [`RunConfig`] and writes its
//! artifacts through a [`Sink`].

use rdshock_core::phase::{
    analytic_trajectory, direction_field, left_moving_condition, nullclines_and_walls, trajectory_flux,
    LeftMovingReport,
};
use rdshock_core::scalar::linspace;
use rdshock_core::shock::{
    apply_shock, continuity_candidates, shock_by_continuity, shock_by_equal_area, shock_by_rule,
    shock_continuity_report, Jump, ShockLocation, ShockedProfile,
};
use rdshock_core::solution::BoundaryState;
use rdshock_core::stability::{
    classify_constant_state, constant_state_dispersion, essential_spectrum_curve, stability_region_scan,
    sturm_criterion_trace, BoundaryCounts, ConstantStateReport, DispersionCurve, RegionGrid,
    SturmCriterionTrace,
};
use rdshock_core::{
    ConstantState, Error, Family, FrontVariant, MultiValuedProfile, ShockPair, ShockRule, System,
};
use serde::{Deserialize, Serialize};

use crate::config::{Format, RunConfig};
use crate::output::{flag, float, Sink, Table};

/// Tolerance of the shock-compare equality flag.
pub const EQUALITY_TOL: f64 = 1e-9;

fn grid(lo: f64, hi: f64, n: usize, what: &str) -> anyhow::Result<Vec<f64>> {
    if n < 2 || hi.is_nan() || lo.is_nan() || hi <= lo {
        return Err(crate::config::ConfigError(format!("{what}: need at least 2 points on an increasing range")).into());
    }
    Ok(linspace(lo, hi, n))
}

/// Jumps in the serialized shock report.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct JumpReport {
    #[serde(rename = "D")]
    pub d: Jump<f64>,
    #[serde(rename = "R")]
    pub r: Jump<f64>,
    pub ux: Jump<f64>,
    pub ut: Jump<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ShockReport {
    pub rule: ShockRule,
    pub u_l: f64,
    pub u_r: f64,
    pub phi_level: f64,
    pub location: Option<ShockLocation<f64>>,
    pub jumps: JumpReport,
}

impl ShockReport {
    pub fn new(sys: &System, pair: &ShockPair<f64>) -> anyhow::Result<Self> {
        let j = shock_continuity_report(sys, pair)?;
        Ok(Self {
            rule: pair.rule,
            u_l: pair.u_l,
            u_r: pair.u_r,
            phi_level: pair.phi_level,
            location: pair.location,
            jumps: JumpReport {
                d: j.diffusivity,
                r: j.reaction,
                ux: j.u_x,
                ut: j.u_t,
            },
        })
    }
}

/// The shock pair with its closed-form positions at every requested time.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolveShockReport {
    pub shock: ShockReport,
    pub positions: Vec<ShockPositions>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ShockPositions {
    pub t: f64,
    pub x: Vec<f64>,
}

fn profile_table(t: f64, samples: &[rdshock_core::solution::ProfileSample<f64>]) -> Table {
    let mut table = Table::new(&["x", "u", "branch", "t"]);
    for s in samples {
        table.push(vec![float(s.x), float(s.u), s.branch.to_string(), float(t)]);
    }
    table
}

pub fn solve(cfg: &RunConfig, sink: &mut Sink, format: Format) -> anyhow::Result<()> {
    let sys = cfg.build_system()?;
    let family = cfg.family();
    family.check(&sys.params)?;
    let rule = cfg.command.rule.unwrap_or(ShockRule::Continuity);
    let pair = shock_by_rule(&sys.model, rule)?;
    let (default_lo, default_hi) = match family {
        Family::Receding => (0.0, 15.0),
        Family::Colliding => (-15.0, 15.0),
        Family::Travelling => (-15.0, 1.0),
    };
    let c = &cfg.command;
    let xs = grid(
        c.x_min.unwrap_or(default_lo),
        c.x_max.unwrap_or(default_hi),
        c.x_points.unwrap_or(641),
        "command.x_min/x_max/x_points",
    )?;
    let mut located = pair;
    let mut positions = Vec::new();
    for (i, t) in cfg.times().into_iter().enumerate() {
        let profile: MultiValuedProfile<f64> = sys.sample_profile(t, &xs)?;
        let shocked: ShockedProfile<f64> = apply_shock(&sys, &profile, &pair)?;
        let x = pair.locations(&sys, family, t)?;
        if let (None, Some(&first)) = (located.location, x.first()) {
            located = pair.located(t, first);
        }
        positions.push(ShockPositions { t, x });
        match format {
            Format::Csv => {
                sink.table(&format!("profile_{i:03}.csv"), &profile_table(t, &profile.samples))?;
                sink.table(&format!("shocked_{i:03}.csv"), &profile_table(t, &shocked.samples))?;
            }
            Format::Json => {
                sink.json(&format!("profile_{i:03}.json"), &profile)?;
                sink.json(&format!("shocked_{i:03}.json"), &shocked)?;
            }
        }
    }
    let report = SolveShockReport {
        shock: ShockReport::new(&sys, &located)?,
        positions,
    };
    sink.json("shock.json", &report)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundaryRow {
    pub t: f64,
    #[serde(rename = "L")]
    pub position: f64,
    pub flux: f64,
    pub speed: f64,
    pub stefan_residual: f64,
}

pub fn boundary_rows(sys: &System, family: Family, times: &[f64]) -> anyhow::Result<Vec<BoundaryRow>> {
    let phi0 = sys.model.phi(0.0);
    let mut rows = Vec::new();
    for &t in times {
        let states: Vec<BoundaryState<f64>> = match sys.boundary_states(family, t) {
            Ok(s) => s,
            // colliding fronts have met
            Err(Error::NoBoundary { .. }) if family == Family::Colliding => continue,
            Err(e) => return Err(e.into()),
        };
        rows.extend(states.iter().map(|s| BoundaryRow {
            t,
            position: s.position,
            flux: s.flux,
            speed: s.speed,
            stefan_residual: s.stefan_residual(&sys.params, phi0),
        }));
    }
    Ok(rows)
}

pub fn boundary(cfg: &RunConfig, sink: &mut Sink, format: Format) -> anyhow::Result<()> {
    let sys = cfg.build_system()?;
    let c = &cfg.command;
    let times = grid(
        c.t_start.unwrap_or(0.0),
        c.t_end.unwrap_or(40.0),
        c.t_steps.unwrap_or(41),
        "command.t_start/t_end/t_steps",
    )?;
    let rows = boundary_rows(&sys, cfg.family(), &times)?;
    match format {
        Format::Csv => {
            let mut table = Table::new(&["t", "L", "flux", "speed", "stefan_residual"]);
            for r in &rows {
                table.push(vec![
                    float(r.t),
                    float(r.position),
                    float(r.flux),
                    float(r.speed),
                    float(r.stefan_residual),
                ]);
            }
            sink.table("boundary.csv", &table)
        }
        Format::Json => sink.json("boundary.json", &rows),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RuleDifference {
    pub u_l: f64,
    pub u_r: f64,
    pub location: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ShockComparison {
    pub continuity: ShockReport,
    pub equal_area: ShockReport,
    pub equal: bool,
    pub tolerance: f64,
    pub difference: RuleDifference,
    /// Every continuity pair found, widest first; only filled in verbose runs.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub continuity_candidates: Vec<[f64; 2]>,
}

pub fn compare_rules(sys: &System, family: Family, t: f64) -> anyhow::Result<ShockComparison> {
    let locate = |pair: ShockPair<f64>| -> anyhow::Result<ShockPair<f64>> {
        Ok(match pair.locations(sys, family, t)?.first() {
            Some(&x) => pair.located(t, x),
            None => pair,
        })
    };
    let c = locate(shock_by_continuity(&sys.model)?)?;
    let e = locate(shock_by_equal_area(&sys.model)?)?;
    let du_l = e.u_l - c.u_l;
    let du_r = e.u_r - c.u_r;
    let location = match (c.location, e.location) {
        (Some(p), Some(q)) => Some(q.x - p.x),
        _ => None,
    };
    Ok(ShockComparison {
        continuity: ShockReport::new(sys, &c)?,
        equal_area: ShockReport::new(sys, &e)?,
        equal: du_l.abs() <= EQUALITY_TOL && du_r.abs() <= EQUALITY_TOL,
        tolerance: EQUALITY_TOL,
        difference: RuleDifference {
            u_l: du_l,
            u_r: du_r,
            location,
        },
        continuity_candidates: Vec::new(),
    })
}

pub fn shock_compare(cfg: &RunConfig, sink: &mut Sink, verbose: bool) -> anyhow::Result<()> {
    let sys = cfg.build_system()?;
    let t = cfg.times().first().copied().unwrap_or(0.0);
    let mut report = compare_rules(&sys, cfg.family(), t)?;
    if verbose {
        report.continuity_candidates = continuity_candidates(&sys.model)?
            .iter()
            .map(|p| [p.u_l, p.u_r])
            .collect();
    }
    sink.json("shock_compare.json", &report)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StabilitySummary {
    pub constant_states: Vec<ConstantStateReport<f64>>,
    pub essential_max_re_lambda: f64,
    pub essential_max_alpha: f64,
    pub sturm_pair: ShockPair<f64>,
    pub sturm_max: f64,
    pub sturm_max_u: f64,
    pub sturm_negative: bool,
    pub scan_n: usize,
    pub stable_cells: usize,
    pub boundary_counts: BoundaryCounts,
}

fn dispersion_table(curve: &DispersionCurve<f64>) -> Table {
    let mut table = Table::new(&["alpha", "re_lambda", "im_lambda"]);
    for (a, l) in curve.alphas.iter().zip(&curve.lambdas) {
        table.push(vec![float(*a), float(l.re), float(l.im)]);
    }
    table
}

fn trace_table(trace: &SturmCriterionTrace<f64>) -> Table {
    let mut table = Table::new(&["u", "criterion"]);
    for (u, c) in trace.u.iter().zip(&trace.criterion) {
        table.push(vec![float(*u), float(*c)]);
    }
    table
}

pub fn stability(cfg: &RunConfig, sink: &mut Sink, format: Format) -> anyhow::Result<()> {
    let sys = cfg.build_system()?;
    let c = &cfg.command;
    let states = [ConstantState::Zero, ConstantState::One]
        .into_iter()
        .map(|s| classify_constant_state(&sys, s))
        .collect::<Result<Vec<_>, _>>()?;
    let alphas = grid(
        c.alpha_min.unwrap_or(-5.0),
        c.alpha_max.unwrap_or(5.0),
        c.alpha_points.unwrap_or(201),
        "command.alpha_min/alpha_max/alpha_points",
    )?;
    let essential = essential_spectrum_curve(&sys, &alphas)?;
    let zero = constant_state_dispersion(&sys, ConstantState::Zero, &alphas)?;
    let one = constant_state_dispersion(&sys, ConstantState::One, &alphas)?;
    // the widest continuity pair, also when u_l <= 0
    let pair = continuity_candidates(&sys.model)?.remove(0);
    let trace = sturm_criterion_trace(&sys, &pair, c.trace_samples.unwrap_or(200))?;
    let scan = RegionGrid::new(c.scan_n.unwrap_or(100));
    let mask = stability_region_scan::<f64>(RegionGrid {
        samples_per_interval: c.trace_samples.unwrap_or(scan.samples_per_interval),
        ..scan
    })?;
    let (alpha_max, re_max) = essential.max_real().unwrap_or((f64::NAN, f64::NAN));
    let (u_max, sturm_max) = trace.max().unwrap_or((f64::NAN, f64::NAN));
    let summary = StabilitySummary {
        constant_states: states.clone(),
        essential_max_re_lambda: re_max,
        essential_max_alpha: alpha_max,
        sturm_pair: pair,
        sturm_max,
        sturm_max_u: u_max,
        sturm_negative: trace.is_negative(),
        scan_n: mask.grid.n,
        stable_cells: mask.stable_count(),
        boundary_counts: mask.boundary_counts(),
    };
    sink.json("constant_states.json", &states)?;
    match format {
        Format::Csv => {
            sink.table("essential_spectrum.csv", &dispersion_table(&essential))?;
            sink.table("dispersion_u0.csv", &dispersion_table(&zero))?;
            sink.table("dispersion_u1.csv", &dispersion_table(&one))?;
            sink.table("sturm_trace.csv", &trace_table(&trace))?;
        }
        Format::Json => {
            sink.json("essential_spectrum.json", &essential)?;
            sink.json("dispersion_u0.json", &zero)?;
            sink.json("dispersion_u1.json", &one)?;
            sink.json("sturm_trace.json", &trace)?;
        }
    }
    let mut table = Table::new(&["a", "b", "shock_feasible", "sturm_ok", "stable"]);
    for cell in &mask.cells {
        table.push(vec![
            float(cell.a),
            float(cell.b),
            flag(cell.shock_feasible).into(),
            flag(cell.sturm_ok).into(),
            flag(cell.stable).into(),
        ]);
    }
    sink.table("stability_mask.csv", &table)?;
    sink.json("stability_mask.json", &mask)?;
    sink.json("stability_summary.json", &summary)
}

pub fn phase_plane(cfg: &RunConfig, sink: &mut Sink, format: Format) -> anyhow::Result<()> {
    let sys = cfg.build_system()?;
    let c = &cfg.command;
    let q0 = trajectory_flux(&sys, 0.0);
    let (u_lo, u_hi) = (c.u_min.unwrap_or(0.0), c.u_max.unwrap_or(1.05));
    let (q_lo, q_hi) = (c.q_min.unwrap_or(1.2 * q0), c.q_max.unwrap_or(-0.4 * q0));
    let n = c.field_n.unwrap_or(40);
    grid(u_lo, u_hi, n, "command.u_min/u_max/field_n")?;
    grid(q_lo, q_hi, n, "command.q_min/q_max/field_n")?;
    let field = direction_field(&sys, (u_lo, u_hi), (q_lo, q_hi), n);
    let pair = shock_by_continuity(&sys.model)?;
    let curve_points = c.curve_points.unwrap_or(201);
    let trajectory = analytic_trajectory(&sys, &pair, &grid(0.0, 1.0, curve_points, "command.curve_points")?)?;
    let nullclines = nullclines_and_walls(&sys, &grid(u_lo, u_hi, curve_points, "command.curve_points")?);
    let left_moving: Vec<LeftMovingReport<f64>> = (1..=20)
        .flat_map(|i| {
            let u_a = pair.u_l * i as f64 / 21.0;
            [FrontVariant::Smooth, FrontVariant::Sharp].map(|v| left_moving_condition(&sys, &pair, u_a, v))
        })
        .collect::<Result<_, _>>()?;
    match format {
        Format::Csv => {
            let mut table = Table::new(&["u", "q", "du_dz", "dq_dz", "wall_flag"]);
            for s in &field {
                let (du, dq) = match s.direction {
                    Some((du, dq)) => (float(du), float(dq)),
                    None => (String::new(), String::new()),
                };
                table.push(vec![float(s.u), float(s.q), du, dq, flag(s.on_wall()).into()]);
            }
            sink.table("field.csv", &table)?;
            let mut table = Table::new(&["u", "q", "branch"]);
            for (name, branch) in [("upper", &trajectory.upper), ("lower", &trajectory.lower)] {
                for p in branch.iter() {
                    table.push(vec![float(p.u), float(p.q), name.into()]);
                }
            }
            sink.table("trajectory.csv", &table)?;
            let mut table = Table::new(&["u", "q", "which"]);
            for p in &nullclines.q_nullcline {
                table.push(vec![float(p.u), float(p.q), "q_nullcline".into()]);
            }
            for p in &nullclines.u_nullcline {
                table.push(vec![float(p.u), float(p.q), "u_nullcline".into()]);
            }
            for wall in nullclines.walls {
                for q in [q_lo, q_hi] {
                    table.push(vec![float(wall), float(q), "wall".into()]);
                }
            }
            sink.table("nullclines.csv", &table)?;
        }
        Format::Json => {
            sink.json("field.json", &field)?;
            sink.json("trajectory.json", &trajectory)?;
            sink.json("nullclines.json", &nullclines)?;
        }
    }
    sink.json("left_moving.json", &left_moving)
}
