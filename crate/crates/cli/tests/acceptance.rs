//! Acceptance checks, one line per criterion. Exits non-zero if any fail.

use std::fs;
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rdshock_core::oracle::{
    central_difference, continuity_pairs_grid, convergence_order, pde_residual, shocked_wave_density,
    OracleConfig,
};
use rdshock_core::phase::{analytic_trajectory, left_moving_condition, trajectory_flux, vector_field, PhasePoint};
use rdshock_core::scalar::linspace;
use rdshock_core::shock::{
    shock_by_continuity, shock_by_equal_area, shock_continuity_report,
    shock_quadratic_closed_form, shocked_density,
};
use rdshock_core::stability::{
    classify_constant_state, essential_spectrum_curve, stability_region_scan, RegionGrid,
};
use rdshock_core::{
    Classification, ConstantState, DiffusivityModel, Error, Family, FrontVariant, Model, ReactionDiffusion, System,
};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn reference_model() -> Model {
    DiffusivityModel::quadratic(0.2, 0.4).unwrap()
}

fn reference(c2_sign: f64) -> System {
    let m = reference_model();
    let phi0 = m.phi(0.0);
    ReactionDiffusion::with_unit_wavenumber(m, c2_sign * phi0).unwrap()
}

fn err(e: Error) -> String {
    e.to_string()
}

fn shock_endpoints_closed_form(timed: &mut Duration) -> Outcome {
    let m = reference_model();
    let start = Instant::now();
    let pair = shock_quadratic_closed_form(&m).map_err(err)?;
    *timed = start.elapsed();
    let expected_l = (0.6 - 3f64.sqrt() * 0.2) / 2.0;
    let expected_r = (0.6 + 3f64.sqrt() * 0.2) / 2.0;
    ensure((pair.u_l - expected_l).abs() <= 1e-12 && (pair.u_r - expected_r).abs() <= 1e-12, || {
        format!("pair ({}, {})", pair.u_l, pair.u_r)
    })?;
    ensure((pair.u_l - 0.126_794_9).abs() < 1e-7 && (pair.u_r - 0.473_205_1).abs() < 1e-7, || {
        "pair differs from 0.1267949…, 0.4732051…".into()
    })?;
    let residual = pair.continuity_residual(&m);
    ensure(residual <= 1e-12, || format!("residual {residual:e}"))?;
    let numerical = shock_by_continuity(&m).map_err(err)?;
    ensure((numerical.u_l - pair.u_l).abs() <= 1e-12, || "numerical solver disagrees".into())?;
    ensure(*timed < Duration::from_millis(1), || format!("took {timed:?}"))?;
    Ok(format!("u_l = {:.16}, u_r = {:.16}, residual {residual:.1e}", pair.u_l, pair.u_r))
}

fn symmetric_rules_agree(_: &mut Duration) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst: f64 = 0.0;
    let mut count = 0;
    while count < 50 {
        let a: f64 = rng.gen_range(0.1..0.35);
        let b = a + rng.gen_range(0.05..0.25);
        let m = if count % 5 == 0 {
            DiffusivityModel::quadratic(a, b).unwrap()
        } else {
            DiffusivityModel::quartic(a, b, (a + b) / 2.0, rng.gen_range(0.02..1.0)).unwrap()
        };
        let c = match shock_by_continuity(&m) {
            Ok(p) => p,
            Err(Error::InfeasibleShock { .. } | Error::Domain(_)) => continue,
            Err(e) => return Err(err(e)),
        };
        let e = shock_by_equal_area(&m).map_err(err)?;
        worst = worst.max((c.u_l - e.u_l).abs()).max((c.u_r - e.u_r).abs());
        count += 1;
    }
    ensure(worst <= 1e-9, || format!("max endpoint difference {worst:e}"))?;
    Ok(format!("50 symmetric models, max endpoint difference {worst:.1e}"))
}

fn quartic_rules_diverge(timed: &mut Duration) -> Outcome {
    let m: Model = DiffusivityModel::quartic(0.2, 0.4, 0.6, 0.2).unwrap();
    let sys = ReactionDiffusion::with_unit_wavenumber(m.clone(), 0.0).map_err(err)?;
    let start = Instant::now();
    let c = shock_by_continuity(&m).map_err(err)?;
    let e = shock_by_equal_area(&m).map_err(err)?;
    let jc = shock_continuity_report(&sys, &c).map_err(err)?;
    let je = shock_continuity_report(&sys, &e).map_err(err)?;
    *timed = start.elapsed();
    let gap = (c.u_l - e.u_l).abs();
    ensure(gap > 1e-3, || format!("|Δu_l| = {gap:e}"))?;
    ensure(jc.diffusivity.jump <= 1e-10 && jc.reaction.jump <= 1e-10, || {
        format!("continuity jumps D {:e}, R {:e}", jc.diffusivity.jump, jc.reaction.jump)
    })?;
    ensure(je.diffusivity.jump > 0.0, || "equal-area pair keeps D continuous".into())?;
    // pin the pair with the brute-force grid oracle
    let (lo, hi) = m.multivalued_band();
    let grid = continuity_pairs_grid(&m, lo, hi, 2000);
    let pinned = grid.iter().any(|&(l, r)| (l - c.u_l).abs() < 1e-9 && (r - c.u_r).abs() < 1e-9);
    ensure(pinned, || format!("grid oracle pairs {grid:?}"))?;
    ensure(*timed < Duration::from_secs(1), || format!("took {timed:?}"))?;
    Ok(format!(
        "continuity ({:.8}, {:.8}), equal-area ({:.8}, {:.8}), |Δu_l| = {gap:.5}, ΔD equal-area = {:.2e}",
        c.u_l, c.u_r, e.u_l, e.u_r, je.diffusivity.jump
    ))
}

fn stefan_condition(timed: &mut Duration) -> Outcome {
    let start = Instant::now();
    let cases = [
        (Family::Receding, reference(-1.0), linspace(0.0, 40.0, 20)),
        (Family::Colliding, reference(1.0), linspace(-40.0, -9.0, 20)),
        (Family::Travelling, reference(0.0), linspace(0.0, 40.0, 20)),
    ];
    let mut worst: f64 = 0.0;
    let mut fronts = 0;
    for (family, sys, times) in &cases {
        for &t in times {
            for r in sys.stefan_residuals(*family, t).map_err(err)? {
                worst = worst.max(r.abs());
                fronts += 1;
            }
        }
    }
    *timed = start.elapsed();
    ensure(worst <= 1e-8, || format!("max residual {worst:e}"))?;
    ensure(*timed < Duration::from_secs(1), || format!("took {timed:?}"))?;
    Ok(format!("{fronts} fronts over 3 families, max residual {worst:.1e}"))
}

fn travelling_speed(timed: &mut Duration) -> Outcome {
    let sys = reference(0.0);
    let start = Instant::now();
    let pair = shock_by_continuity(&sys.model).map_err(err)?;
    let mut worst_speed: f64 = 0.0;
    for t in linspace(0.0, 40.0, 21) {
        let state = sys.boundary_states(Family::Travelling, t).map_err(err)?[0];
        worst_speed = worst_speed.max((state.speed + 0.08).abs());
        let l = |t: f64| sys.boundary_position(Family::Travelling, t).unwrap().positions()[0];
        let measured = (l(t + 1.0) - l(t - 1.0)) / 2.0;
        worst_speed = worst_speed.max((measured + 0.08).abs());
    }
    let c = sys.params.wave_speed();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst_shift: f64 = 0.0;
    let mut checked = 0;
    while checked < 100 {
        let x: f64 = rng.gen_range(-12.0..0.0);
        let t: f64 = rng.gen_range(-5.0..5.0);
        let dt: f64 = rng.gen_range(-5.0..5.0);
        let u0 = shocked_density(&sys.model, &pair, sys.level(x, t));
        let u1 = shocked_density(&sys.model, &pair, sys.level(x + c * dt, t + dt));
        match (u0, u1) {
            (Some(a), Some(b)) => {
                worst_shift = worst_shift.max((a - b).abs());
                checked += 1;
            }
            (None, None) => {}
            _ => return Err(format!("support differs at x = {x}")),
        }
    }
    *timed = start.elapsed();
    ensure(worst_speed <= 1e-10, || format!("speed error {worst_speed:e}"))?;
    ensure(worst_shift <= 1e-10, || format!("translation error {worst_shift:e}"))?;
    ensure(*timed < Duration::from_secs(1), || format!("took {timed:?}"))?;
    Ok(format!("c = {c}, speed error {worst_speed:.1e}, translation error {worst_shift:.1e}"))
}

fn pde_residual_check(timed: &mut Duration) -> Outcome {
    let sys = reference(0.0);
    let start = Instant::now();
    let pair = shock_by_continuity(&sys.model).map_err(err)?;
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut points = Vec::new();
    while points.len() < 200 {
        let x: f64 = rng.gen_range(-12.0..-0.05);
        let t: f64 = rng.gen_range(-1.0..1.0);
        let u = shocked_wave_density(&sys, &pair, x, t).ok_or("point outside support")?;
        let xs = (pair.phi_level / sys.params.c1).ln() - sys.params.wave_speed() * t;
        if (x - xs).abs() > 0.05 && u < 0.99 && (u - 0.2).abs() > 0.02 && (u - 0.4).abs() > 0.02 {
            points.push((x, t));
        }
    }
    let max_residual = |h: f64| -> Result<f64, String> {
        let r = pde_residual(&sys, &pair, &points, &OracleConfig::default().with_step(h)).map_err(|e| e.to_string())?;
        Ok(r.into_iter().fold(0.0, f64::max))
    };
    let fine = max_residual(1e-4)?;
    let steps = [4e-3, 2e-3, 1e-3];
    let errors = steps.iter().map(|&h| max_residual(h)).collect::<Result<Vec<_>, _>>()?;
    let orders: Vec<f64> = (0..2)
        .map(|i| convergence_order(errors[i], errors[i + 1], steps[i], steps[i + 1]))
        .collect();
    *timed = start.elapsed();
    ensure(fine <= 1e-4, || format!("residual {fine:e} at h = 1e-4"))?;
    ensure(orders.iter().all(|o| (1.7..=2.3).contains(o)), || format!("orders {orders:?}"))?;
    ensure(*timed < Duration::from_secs(10), || format!("took {timed:?}"))?;
    Ok(format!("max residual {fine:.1e} at h = 1e-4, observed orders {:.3}, {:.3}", orders[0], orders[1]))
}

fn constant_states(timed: &mut Duration) -> Outcome {
    let sys = reference(0.0);
    let start = Instant::now();
    let zero = classify_constant_state(&sys, ConstantState::Zero).map_err(err)?;
    let one = classify_constant_state(&sys, ConstantState::One).map_err(err)?;
    let other = ReactionDiffusion::with_unit_wavenumber(DiffusivityModel::quadratic(0.5, 0.6).unwrap(), 0.0)
        .map_err(err)?;
    let unstable = classify_constant_state(&other, ConstantState::One).map_err(err)?;
    *timed = start.elapsed();
    let r = |u: f64| sys.diffusion_reaction_product(u) / sys.model.diffusivity(u);
    let (fd0, fd1) = (central_difference(r, 0.0, 1e-5), central_difference(r, 1.0, 1e-5));
    ensure((zero.reaction_derivative + 0.85).abs() < 1e-12, || format!("R'(0) = {}", zero.reaction_derivative))?;
    ensure((one.reaction_derivative + 0.4).abs() < 1e-12, || format!("R'(1) = {}", one.reaction_derivative))?;
    ensure((zero.reaction_derivative - fd0).abs() <= 1e-6 * fd0.abs(), || format!("FD R'(0) = {fd0}"))?;
    ensure((one.reaction_derivative - fd1).abs() <= 1e-6 * fd1.abs(), || format!("FD R'(1) = {fd1}"))?;
    ensure(
        zero.classification == Classification::Stable && one.classification == Classification::Stable,
        || "reference states not both stable".into(),
    )?;
    ensure(
        unstable.reaction_derivative > 0.0 && unstable.classification == Classification::Unstable,
        || format!("a = 0.5, b = 0.6: {unstable:?}"),
    )?;
    ensure(*timed < Duration::from_millis(1), || format!("took {timed:?}"))?;
    Ok(format!(
        "R'(0) = {:.15}, R'(1) = {:.15}, a = 0.5, b = 0.6 gives R'(1) = {:.4} (unstable)",
        zero.reaction_derivative, one.reaction_derivative, unstable.reaction_derivative
    ))
}

fn essential_spectrum(timed: &mut Duration) -> Outcome {
    let sys = reference(0.0);
    let alphas = linspace(-5.0, 5.0, 201);
    let start = Instant::now();
    let curve = essential_spectrum_curve(&sys, &alphas).map_err(err)?;
    *timed = start.elapsed();
    let r1 = sys.reaction_derivative(1.0).map_err(err)?;
    let (alpha, re) = curve.max_real().ok_or("empty curve")?;
    ensure(alpha == 0.0 && (re - r1).abs() <= 1e-12, || format!("max Re λ = {re} at α = {alpha}"))?;
    let drift = sys.params.k * sys.model.diffusivity(0.0);
    let exact = alphas.iter().zip(&curve.lambdas).all(|(&a, l)| l.im == -drift * a);
    ensure(exact, || "Im λ differs from -kD(0)α".into())?;
    Ok(format!("max Re λ = {re} at α = 0, Im λ = -{drift}α on {} samples", alphas.len()))
}

fn stability_scan(timed: &mut Duration) -> Outcome {
    let start = Instant::now();
    let mask = stability_region_scan::<f64>(RegionGrid::new(100)).map_err(err)?;
    *timed = start.elapsed();
    let stable = mask.stable_count();
    ensure(stable > 0, || "stable set is empty".into())?;
    let reference = mask.cell(20, 40).ok_or("(0.2, 0.4) missing")?;
    ensure(reference.stable, || "(0.2, 0.4) is not stable".into())?;
    let excluded = mask.cell(5, 40).ok_or("(0.05, 0.4) missing")?;
    ensure(!excluded.stable && !excluded.shock_feasible, || "(0.05, 0.4) not excluded by feasibility".into())?;
    // each row's stable run ends, as b grows, at one of the two borders
    let (mut left, mut top) = (0, 0);
    for cell in mask.cells.iter().filter(|c| c.stable) {
        let above = mask.cell(cell.i, cell.j + 1);
        match above {
            None => return Err(format!("stable run reaches the grid edge at ({}, {})", cell.a, cell.b)),
            Some(next) if next.stable => {}
            Some(next) if !next.shock_feasible => left += 1,
            Some(_) => top += 1,
        }
    }
    let counts = mask.boundary_counts();
    ensure(left > 0 && top > 0, || format!("borders: feasibility {left}, Sturm {top}"))?;
    ensure(*timed < Duration::from_secs(60), || format!("took {timed:?}"))?;
    Ok(format!(
        "{} cells, {stable} stable; rows end on b < a(2+√3) in {left}, on the Sturm criterion in {top}; neighbour counts {counts:?}",
        mask.cells.len()
    ))
}

fn phase_plane(timed: &mut Duration) -> Outcome {
    let sys = reference(0.0);
    let start = Instant::now();
    let pair = shock_by_continuity(&sys.model).map_err(err)?;
    let trajectory = analytic_trajectory(&sys, &pair, &linspace(0.0, 1.0, 201)).map_err(err)?;
    let first = trajectory.upper.first().ok_or("empty upper branch")?;
    let end = trajectory.lower.first().ok_or("empty lower branch")?;
    let q0 = trajectory_flux(&sys, 0.0);
    ensure(first.u == 1.0 && first.q == 0.0, || format!("upper end {first:?}"))?;
    ensure(end.u == 0.0 && end.q == q0, || format!("lower end {end:?}"))?;
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut worst: f64 = 0.0;
    for _ in 0..500 {
        let u: f64 = rng.gen_range(pair.u_r..1.0);
        let q = trajectory_flux(&sys, u);
        let (du, dq) = vector_field(&sys, PhasePoint { u, q }).direction.ok_or("unexpected wall")?;
        let slope = sys.params.k * sys.model.diffusivity(u);
        let angle = (du * slope - dq).atan2(du + dq * slope).abs();
        worst = worst.max(angle.min(std::f64::consts::PI - angle));
    }
    let mut wall_products = Vec::new();
    for wall in [sys.model.a(), sys.model.b()] {
        let f = vector_field(&sys, PhasePoint { u: wall, q: 0.01 });
        ensure(f.on_wall(), || format!("u = {wall} not flagged"))?;
        wall_products.push(sys.diffusion_reaction_product(wall));
    }
    *timed = start.elapsed();
    ensure(worst <= 1e-8, || format!("max angle {worst:e}"))?;
    ensure(wall_products.iter().all(|p| p.abs() > 1e-6), || format!("D R at walls {wall_products:?}"))?;
    ensure(*timed < Duration::from_secs(1), || format!("took {timed:?}"))?;
    Ok(format!(
        "ends (1, 0) and (0, {q0:.6}); max angle {worst:.1e} rad over 500 points; D R at walls {:.5}, {:.5}",
        wall_products[0], wall_products[1]
    ))
}

fn left_moving(timed: &mut Duration) -> Outcome {
    let sys = reference(0.0);
    let start = Instant::now();
    let pair = shock_by_continuity(&sys.model).map_err(err)?;
    let mut smallest = f64::INFINITY;
    for i in 1..=20 {
        let u_a = pair.u_l * i as f64 / 21.0;
        let r = left_moving_condition(&sys, &pair, u_a, FrontVariant::Sharp).map_err(err)?;
        ensure(r.holds, || format!("fails at u_a = {u_a}: margin {}", r.margin))?;
        smallest = smallest.min(r.margin);
    }
    *timed = start.elapsed();
    ensure(*timed < Duration::from_secs(1), || format!("took {timed:?}"))?;
    Ok(format!("20 values of u_a in (0, {:.6}), smallest margin {smallest:.3e}", pair.u_l))
}

fn determinism(_: &mut Duration) -> Outcome {
    let configs = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs");
    let base = std::env::temp_dir().join(format!("rdshock-acceptance-{}", std::process::id()));
    let runs = [
        ("solve", "travelling.toml"),
        ("solve", "colliding.toml"),
        ("boundary", "receding.toml"),
        ("shock-compare", "quartic.toml"),
        ("stability", "unstable.toml"),
        ("phase-plane", "phase_plane.toml"),
    ];
    let mut files = 0;
    for (cmd, config) in runs {
        let mut outputs = Vec::new();
        for run in 0..2 {
            let dir = base.join(format!("{cmd}-{config}-{run}"));
            let status = Command::new(env!("CARGO_BIN_EXE_rdshock"))
                .args([cmd, "--config"])
                .arg(configs.join(config))
                .arg("--out")
                .arg(&dir)
                .env_remove("RDSHOCK_OUT")
                .output()
                .map_err(|e| e.to_string())?;
            ensure(status.status.success(), || format!("{cmd} {config} exited with {}", status.status))?;
            let mut names: Vec<_> = fs::read_dir(&dir)
                .map_err(|e| e.to_string())?
                .map(|e| e.unwrap().path())
                .collect();
            names.sort();
            let contents: Vec<(String, Vec<u8>)> = names
                .iter()
                .map(|p| (p.file_name().unwrap().to_string_lossy().into_owned(), fs::read(p).unwrap()))
                .collect();
            outputs.push(contents);
        }
        ensure(outputs[0] == outputs[1], || format!("{cmd} {config} outputs differ"))?;
        files += outputs[0].len();
    }
    let _ = fs::remove_dir_all(&base);
    Ok(format!("6 runs repeated, {files} files byte-identical"))
}

type Check = fn(&mut Duration) -> Outcome;

fn main() {
    let checks: [(&str, Check); 12] = [
        ("shock endpoints, closed form", shock_endpoints_closed_form),
        ("rule equivalence under symmetry", symmetric_rules_agree),
        ("rule divergence for the quartic", quartic_rules_diverge),
        ("Stefan-like boundary condition", stefan_condition),
        ("travelling-wave speed and translation", travelling_speed),
        ("PDE residual and convergence order", pde_residual_check),
        ("constant-state stability", constant_states),
        ("essential spectrum", essential_spectrum),
        ("stability region scan", stability_scan),
        ("phase plane", phase_plane),
        ("left-moving sharp-front condition", left_moving),
        ("deterministic output", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in checks.iter().enumerate() {
        let mut timed = Duration::ZERO;
        let start = Instant::now();
        let outcome = check(&mut timed);
        let total = start.elapsed();
        let timing = if timed > Duration::ZERO {
            format!("{:.3} ms timed, {:.3} ms total", timed.as_secs_f64() * 1e3, total.as_secs_f64() * 1e3)
        } else {
            format!("{:.3} ms", total.as_secs_f64() * 1e3)
        };
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name} [{timing}]: {detail}", i + 1),
            Err(reason) => {
                failed += 1;
                println!("FAIL {:>2} {name} [{timing}]: {reason}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", checks.len() - failed, checks.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
