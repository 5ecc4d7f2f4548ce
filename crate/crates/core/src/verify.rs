//! Seeded randomized property suites.
//!
//! Each suite draws an ensemble of valid parameters with [`SuiteRng`] and
//! checks one model identity per property, keeping the worst case.

use std::f64::consts::{FRAC_PI_6, PI};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::algebra2d::{mat_inv, Mat2, Vec2};
use crate::control::{
    commanded_acceleration, implication_residual, motion_satisfying_impedance, torque_controller,
    ControllerVariant, DesiredTrajectoryPoint, ErrorState, ImpedanceParams,
};
use crate::dynamics::{
    dynamics_residual, free_response, free_response_acceleration, image_space_operators,
    image_space_residual, integrate, mass_matrix, ForcePair, InitialConditions, MassParams,
    StageState, Torque,
};
use crate::frames::{
    camera_to_image, image_to_stage, rotation_matrix, stage_to_camera, stage_to_image,
    transformation_matrix, FrameParams, StageCoord,
};
use crate::numdiff::{default_step, first_derivative, second_derivative};
use crate::rng::SuiteRng;
use crate::sim::{compare_variants, run_closed_loop, MembraneModel, Scenario, TrajectorySpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Suite {
    Frames,
    Dynamics,
    Implication,
    Discrepancy,
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Frames => "frames",
            Suite::Dynamics => "dynamics",
            Suite::Implication => "implication",
            Suite::Discrepancy => "discrepancy",
            Suite::All => "all",
        }
    }

    /// Ensemble size used when no trial count is given.
    pub fn default_trials(self) -> usize {
        match self {
            Suite::Dynamics => 1_000,
            _ => 10_000,
        }
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        [
            Suite::Frames,
            Suite::Dynamics,
            Suite::Implication,
            Suite::Discrepancy,
            Suite::All,
        ]
        .into_iter()
        .find(|v| v.name() == s)
        .ok_or_else(|| {
            format!(
                "unknown suite `{s}` (expected frames, dynamics, implication, discrepancy or all)"
            )
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Bound {
    /// Worst value must be `<=` the limit.
    AtMost,
    /// Worst value must be `>=` the limit.
    AtLeast,
    /// Worst value must be strictly `>` the limit.
    Above,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PropertyOutcome {
    pub suite: &'static str,
    pub property: &'static str,
    pub worst: f64,
    pub bound: Bound,
    pub limit: f64,
    pub trials: usize,
}

impl PropertyOutcome {
    pub fn passed(&self) -> bool {
        match self.bound {
            Bound::AtMost => self.worst <= self.limit,
            Bound::AtLeast => self.worst >= self.limit,
            Bound::Above => self.worst > self.limit,
        }
    }
}

impl fmt::Display for PropertyOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let op = match self.bound {
            Bound::AtMost => "<=",
            Bound::AtLeast => ">=",
            Bound::Above => ">",
        };
        write!(
            f,
            "[{}] {}/{}: worst {:.3e} {} {:.3e} ({} trials)",
            if self.passed() { "PASS" } else { "FAIL" },
            self.suite,
            self.property,
            self.worst,
            op,
            self.limit,
            self.trials
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub outcomes: Vec<PropertyOutcome>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(PropertyOutcome::passed)
    }
}

/// Runs `suite` with the given seed. `trials = None` uses each sub-suite's
/// default ensemble size.
pub fn run_suite(suite: Suite, seed: u64, trials: Option<usize>) -> SuiteReport {
    let pick = |s: Suite| trials.unwrap_or_else(|| s.default_trials());
    let mut outcomes = Vec::new();
    let mut run = |s: Suite| {
        let n = pick(s);
        let mut rng = SuiteRng::new(seed);
        let results = match s {
            Suite::Frames => frames_suite(&mut rng, n),
            Suite::Dynamics => dynamics_suite(&mut rng, n),
            Suite::Implication => implication_suite(&mut rng, n),
            Suite::Discrepancy => discrepancy_suite(&mut rng, n),
            Suite::All => unreachable!(),
        };
        outcomes.extend(results);
    };
    match suite {
        Suite::All => {
            for s in [
                Suite::Frames,
                Suite::Dynamics,
                Suite::Implication,
                Suite::Discrepancy,
            ] {
                run(s);
            }
        }
        s => run(s),
    }
    SuiteReport { seed, outcomes }
}

// Ensembles

pub fn random_frame(rng: &mut SuiteRng) -> FrameParams {
    FrameParams::new(
        rng.uniform(-PI, PI),
        rng.uniform(1e-3, 100.0),
        rng.uniform(1e-3, 100.0),
        rng.log_uniform(0.5, 50.0),
        rng.log_uniform(0.5, 50.0),
    )
    .expect("ensemble draws are valid frames")
}

pub fn random_masses(rng: &mut SuiteRng) -> MassParams {
    MassParams::new(
        rng.log_uniform(0.1, 10.0),
        rng.log_uniform(0.1, 10.0),
        rng.log_uniform(0.1, 10.0),
    )
    .expect("ensemble draws are valid masses")
}

pub fn random_impedance(rng: &mut SuiteRng) -> ImpedanceParams {
    ImpedanceParams::new(
        rng.log_uniform(0.1, 10.0),
        rng.log_uniform(0.1, 100.0),
        rng.log_uniform(0.1, 1000.0),
    )
    .expect("ensemble draws are valid impedances")
}

pub fn random_desired(rng: &mut SuiteRng) -> DesiredTrajectoryPoint {
    DesiredTrajectoryPoint {
        qd: rng.vec2(-10.0, 10.0),
        qd_dot: rng.vec2(-10.0, 10.0),
        qd_ddot: rng.vec2(-10.0, 10.0),
    }
}

fn rel_scale(v: Vec2) -> f64 {
    v.norm_inf().max(1.0)
}

fn max_entry_error(a: Mat2, b: Mat2) -> f64 {
    a.sub_mat(b).norm_max()
}

fn outcome(
    suite: &'static str,
    property: &'static str,
    worst: f64,
    bound: Bound,
    limit: f64,
    trials: usize,
) -> PropertyOutcome {
    PropertyOutcome {
        suite,
        property,
        worst,
        bound,
        limit,
        trials,
    }
}

fn frames_suite(rng: &mut SuiteRng, trials: usize) -> Vec<PropertyOutcome> {
    let mut composition = 0.0f64;
    let mut orthogonality = 0.0f64;
    let mut det_rot = 0.0f64;
    let mut det_t = 0.0f64;
    let mut inverse = 0.0f64;
    let mut round_trip = 0.0f64;

    for _ in 0..trials {
        let p = random_frame(rng);
        let s = StageCoord(rng.vec2(-1e3, 1e3));

        let one_step = stage_to_image(&p, s);
        let two_step = camera_to_image(&p, stage_to_camera(&p, s));
        composition = composition.max((one_step.0 - two_step.0).norm_inf());

        let r = rotation_matrix(p.alpha());
        orthogonality = orthogonality.max(max_entry_error(r.transpose() * r, Mat2::IDENTITY));
        det_rot = det_rot.max((r.det() - 1.0).abs());

        let t = transformation_matrix(&p);
        let fxfy = p.fx() * p.fy();
        det_t = det_t.max((t.det() - fxfy).abs() / fxfy);
        inverse = match mat_inv(t) {
            Ok(t_inv) => inverse.max(max_entry_error(t * t_inv, Mat2::IDENTITY)),
            Err(_) => f64::INFINITY,
        };

        round_trip = match image_to_stage(&p, one_step) {
            Ok(back) => round_trip.max((back.0 - s.0).norm_inf()),
            Err(_) => f64::INFINITY,
        };
    }

    vec![
        outcome(
            "frames",
            "composition",
            composition,
            Bound::AtMost,
            1e-9,
            trials,
        ),
        outcome(
            "frames",
            "rotation_orthogonal",
            orthogonality,
            Bound::AtMost,
            1e-12,
            trials,
        ),
        outcome(
            "frames",
            "rotation_det",
            det_rot,
            Bound::AtMost,
            1e-12,
            trials,
        ),
        outcome(
            "frames",
            "transform_det",
            det_t,
            Bound::AtMost,
            1e-12,
            trials,
        ),
        outcome(
            "frames",
            "transform_inverse",
            inverse,
            Bound::AtMost,
            1e-12,
            trials,
        ),
        outcome(
            "frames",
            "round_trip",
            round_trip,
            Bound::AtMost,
            1e-9,
            trials,
        ),
    ]
}

/// Worst per-component residual of the closed form substituted into the
/// torque-free dynamics, relative to `max(1, |xd0|, |yd0|)`.
pub fn closed_form_residual(mp: &MassParams, ic: &InitialConditions, samples: usize) -> f64 {
    let horizon = 10.0 * mp.moving_x();
    let scale = 1.0f64.max(ic.xd0.abs()).max(ic.yd0.abs());
    (0..samples)
        .map(|i| {
            let t = horizon * i as f64 / (samples - 1) as f64;
            let s = free_response(mp, ic, t);
            let a = free_response_acceleration(mp, ic, t);
            dynamics_residual(mp, a, s.qdot, Torque::ZERO, ForcePair::ZERO).norm_inf() / scale
        })
        .fold(0.0, f64::max)
}

/// Worst position error of RK4 against the closed form over `[0, t_end]`.
pub fn rk4_error(mp: &MassParams, ic: &InitialConditions, t_end: f64, dt: f64) -> f64 {
    match integrate(
        mp,
        ic.state(),
        |_| Torque::ZERO,
        |_| ForcePair::ZERO,
        t_end,
        dt,
    ) {
        Ok(traj) => traj
            .iter()
            .map(|(t, s)| (s.q - free_response(mp, ic, *t).q).norm_inf())
            .fold(0.0, f64::max),
        Err(_) => f64::INFINITY,
    }
}

/// Worst image-space residual on a free-response trajectory mapped through
/// the frame transform, with image derivatives taken by finite differences.
pub fn image_space_fd_residual(
    mp: &MassParams,
    p: &FrameParams,
    ic: &InitialConditions,
    times: &[f64],
) -> f64 {
    let ops = match image_space_operators(mp, p) {
        Ok(ops) => ops,
        Err(_) => return f64::INFINITY,
    };
    let image = |t: f64| stage_to_image(p, StageCoord(free_response(mp, ic, t).q)).0;
    times
        .iter()
        .map(|&t| {
            let h = default_step(t);
            let udot = Vec2::new(
                first_derivative(|t| image(t).a0, t, h),
                first_derivative(|t| image(t).a1, t, h),
            );
            let uddot = Vec2::new(
                second_derivative(|t| image(t).a0, t, h),
                second_derivative(|t| image(t).a1, t, h),
            );
            image_space_residual(ops, uddot, udot, Torque::ZERO, ForcePair::ZERO).norm_inf()
        })
        .fold(0.0, f64::max)
}

fn unit_masses() -> MassParams {
    MassParams::new(1.0, 1.0, 1.0).expect("unit masses")
}

fn dynamics_suite(rng: &mut SuiteRng, trials: usize) -> Vec<PropertyOutcome> {
    let mut closed_form = 0.0f64;
    let mut asymptote = 0.0f64;
    let mut image_space = 0.0f64;
    let image_trials = trials.min(100);

    for i in 0..trials {
        let mp = random_masses(rng);
        let ic = InitialConditions {
            x0: rng.uniform(-10.0, 10.0),
            y0: rng.uniform(-10.0, 10.0),
            xd0: rng.uniform(-10.0, 10.0),
            yd0: rng.uniform(-10.0, 10.0),
        };
        closed_form = closed_form.max(closed_form_residual(&mp, &ic, 100));

        let t_inf = 50.0 * mp.moving_x().max(mp.moving_y());
        let limit = Vec2::new(
            ic.x0 + ic.xd0 * mp.moving_x(),
            ic.y0 + ic.yd0 * mp.moving_y(),
        );
        let q = free_response(&mp, &ic, t_inf).q;
        asymptote = asymptote.max((q - limit).norm_inf() / rel_scale(limit));

        if i < image_trials {
            // moderate magnitudes keep finite-difference cancellation well
            // below the bound
            let p = FrameParams::new(
                rng.uniform(-PI, PI),
                rng.uniform(1e-2, 1.0),
                rng.uniform(1e-2, 1.0),
                rng.uniform(0.5, 5.0),
                rng.uniform(0.5, 5.0),
            )
            .expect("valid frame");
            let ic = InitialConditions {
                x0: rng.uniform(-1.0, 1.0),
                y0: rng.uniform(-1.0, 1.0),
                xd0: rng.uniform(-1.0, 1.0),
                yd0: rng.uniform(-1.0, 1.0),
            };
            let times: Vec<f64> = (1..=20).map(|j| j as f64 * 0.5).collect();
            let r = image_space_fd_residual(&mp, &p, &ic, &times);
            image_space = image_space.max(r);
        }
    }

    let mp = unit_masses();
    let ic = InitialConditions {
        x0: 0.0,
        y0: 0.0,
        xd0: 1.0,
        yd0: 1.0,
    };
    let rk4 = rk4_error(&mp, &ic, 10.0, 1e-3);

    let e1 = rk4_error(&mp, &ic, 10.0, 1e-2);
    let e2 = rk4_error(&mp, &ic, 10.0, 5e-3);
    let e3 = rk4_error(&mp, &ic, 10.0, 2.5e-3);
    let order_ratio = (e1 / e2).min(e2 / e3);

    // zero input: kinetic energy ½·q̇ᵀ·M·q̇ must not grow between samples
    let m = mass_matrix(&mp);
    let energy = |s: &StageState| 0.5 * s.qdot.dot(m * s.qdot);
    let ic = InitialConditions {
        x0: 0.3,
        y0: -0.2,
        xd0: 2.0,
        yd0: -1.5,
    };
    let energy_growth = integrate(
        &mp,
        ic.state(),
        |_| Torque::ZERO,
        |_| ForcePair::ZERO,
        10.0,
        1e-3,
    )
    .map(|traj| {
        traj.windows(2)
            .map(|w| energy(&w[1].1) - energy(&w[0].1))
            .fold(f64::NEG_INFINITY, f64::max)
    })
    .unwrap_or(f64::INFINITY);

    vec![
        outcome(
            "dynamics",
            "closed_form_residual",
            closed_form,
            Bound::AtMost,
            1e-10,
            trials,
        ),
        outcome(
            "dynamics",
            "rk4_vs_closed_form",
            rk4,
            Bound::AtMost,
            1e-6,
            1,
        ),
        outcome(
            "dynamics",
            "rk4_order_ratio",
            order_ratio,
            Bound::AtLeast,
            8.0,
            1,
        ),
        outcome(
            "dynamics",
            "asymptote",
            asymptote,
            Bound::AtMost,
            1e-8,
            trials,
        ),
        outcome(
            "dynamics",
            "image_space_residual",
            image_space,
            Bound::AtMost,
            1e-6,
            image_trials,
        ),
        outcome(
            "dynamics",
            "energy_non_increasing",
            energy_growth,
            Bound::AtMost,
            1e-9,
            1,
        ),
    ]
}

struct ControlDraw {
    mp: MassParams,
    ip: ImpedanceParams,
    p: FrameParams,
    d: DesiredTrajectoryPoint,
    q: Vec2,
    qdot: Vec2,
    fe: ForcePair,
    fed: ForcePair,
}

fn control_draw(rng: &mut SuiteRng, frame: Option<FrameParams>) -> ControlDraw {
    let mp = random_masses(rng);
    let ip = random_impedance(rng);
    let p = match frame {
        Some(p) => p,
        None => random_frame(rng),
    };
    ControlDraw {
        mp,
        ip,
        p,
        d: random_desired(rng),
        q: rng.vec2(-10.0, 10.0),
        qdot: rng.vec2(-10.0, 10.0),
        fe: ForcePair(rng.vec2(-10.0, 10.0)),
        fed: ForcePair(rng.vec2(-10.0, 10.0)),
    }
}

impl ControlDraw {
    fn error_state(&self) -> ErrorState {
        let m = motion_satisfying_impedance(&self.ip, &self.d, self.q, self.qdot, self.fe);
        crate::control::error_state(&self.d, m.q, m.qdot, m.qddot)
    }

    fn torque(&self, v: ControllerVariant) -> Torque {
        let es = self.error_state();
        torque_controller(
            v, &self.mp, &self.p, &self.ip, &self.d, self.qdot, &es, self.fe, self.fed,
        )
        .expect("valid frames are invertible")
    }
}

fn implication_suite(rng: &mut SuiteRng, trials: usize) -> Vec<PropertyOutcome> {
    let mut implication = 0.0f64;
    let mut homogeneity = 0.0f64;

    for _ in 0..trials {
        let draw = control_draw(rng, None);
        let actual = motion_satisfying_impedance(&draw.ip, &draw.d, draw.q, draw.qdot, draw.fe);
        let tau = draw.torque(ControllerVariant::StageConsistent);
        implication = match implication_residual(
            ControllerVariant::StageConsistent,
            &draw.mp,
            &draw.p,
            &draw.ip,
            &draw.d,
            actual,
            draw.fe,
            draw.fed,
        ) {
            Ok(r) => implication.max(r.norm_inf() / rel_scale(tau.0)),
            Err(_) => f64::INFINITY,
        };

        let lambda = rng.log_uniform(1e-3, 1e3);
        let scaled_ip = ImpedanceParams::new(
            lambda * draw.ip.m(),
            lambda * draw.ip.b(),
            lambda * draw.ip.k(),
        )
        .expect("positive scaling keeps gains valid");
        let scaled_fe = ForcePair(draw.fe.0.scale(lambda));
        let es = draw.error_state();
        for v in ControllerVariant::ALL {
            let base = draw.torque(v);
            let fe_term = if v == ControllerVariant::McPaper {
                draw.fe.0 - scaled_fe.0
            } else {
                Vec2::ZERO
            };
            let scaled = torque_controller(
                v, &draw.mp, &draw.p, &scaled_ip, &draw.d, draw.qdot, &es, scaled_fe, draw.fed,
            )
            .expect("valid frames are invertible");
            // McPaper adds f_e itself, which the scaling does change
            let diff = (scaled.0 + fe_term - base.0).norm_inf() / rel_scale(base.0);
            homogeneity = homogeneity.max(diff);
        }
    }

    vec![
        outcome(
            "implication",
            "stage_consistent_residual",
            implication,
            Bound::AtMost,
            1e-9,
            trials,
        ),
        outcome(
            "implication",
            "impedance_homogeneity",
            homogeneity,
            Bound::AtMost,
            1e-9,
            trials,
        ),
    ]
}

/// Frame used for the published-variant comparison: α = π/6, fx = 2, fy = 4.
pub fn discrepancy_frame() -> FrameParams {
    FrameParams::new(FRAC_PI_6, 0.5, 0.5, 2.0, 4.0).expect("valid frame")
}

pub fn identity_frame() -> FrameParams {
    FrameParams::new(0.0, 0.5, 0.5, 1.0, 1.0).expect("valid frame")
}

/// Contact scenario used for the closed-loop discrepancy checks.
pub fn contact_scenario(frame: FrameParams) -> Scenario {
    Scenario {
        masses: unit_masses(),
        frame,
        impedance: ImpedanceParams::new(1.0, 20.0, 100.0).expect("valid gains"),
        trajectory: TrajectorySpec::quintic(Vec2::new(0.0, 0.0), Vec2::new(2.0, 0.5), 2.0)
            .expect("valid spec"),
        membrane: MembraneModel::new(40.0, 2.0, 1.0).expect("valid membrane"),
        fed: ForcePair::new(0.5, -0.25),
        t_end: 4.0,
        dt: 1e-3,
    }
}

fn rms_force_gap(rows: &[crate::sim::TraceRow], fed: ForcePair) -> f64 {
    let sum: f64 = rows.iter().map(|r| (r.fe().0 - fed.0).norm_sq()).sum();
    (sum / rows.len().max(1) as f64).sqrt()
}

fn discrepancy_suite(rng: &mut SuiteRng, trials: usize) -> Vec<PropertyOutcome> {
    let skewed = discrepancy_frame();
    let identity = identity_frame();
    let mut min_separation = f64::INFINITY;
    let mut identity_gap = 0.0f64;
    let mut mc_gap = 0.0f64;

    for _ in 0..trials {
        let mut draw = control_draw(rng, Some(skewed));
        let es = draw.error_state();
        let c = commanded_acceleration(&draw.ip, &draw.d, &es, draw.fe);
        let corrected = draw.torque(ControllerVariant::Corrected);
        if c != Vec2::ZERO {
            let sim = draw.torque(ControllerVariant::SimPaper);
            min_separation = min_separation.min((sim.0 - corrected.0).norm_inf());
        }
        let mc = draw.torque(ControllerVariant::McPaper);
        let gap = (mc.0 - corrected.0) - (draw.fe.0 - draw.fed.0);
        mc_gap = mc_gap.max(gap.norm_inf() / rel_scale(corrected.0));

        draw.p = identity;
        let corrected = draw.torque(ControllerVariant::Corrected);
        let sim = draw.torque(ControllerVariant::SimPaper);
        identity_gap = identity_gap.max((sim.0 - corrected.0).norm_inf());
        let mc = draw.torque(ControllerVariant::McPaper);
        let gap = (mc.0 - corrected.0) - (draw.fe.0 - draw.fed.0);
        mc_gap = mc_gap.max(gap.norm_inf() / rel_scale(corrected.0));
    }

    // Closed loop, identity transform: Corrected and SimPaper traces coincide
    // bit for bit.
    let sc = contact_scenario(identity);
    let trace_mismatch = match (
        run_closed_loop(ControllerVariant::Corrected, &sc),
        run_closed_loop(ControllerVariant::SimPaper, &sc),
    ) {
        (Ok(a), Ok(b)) => {
            let differing = a
                .trace
                .iter()
                .zip(&b.trace)
                .filter(|(x, y)| {
                    x.values()
                        .iter()
                        .zip(y.values())
                        .any(|(p, q)| p.to_bits() != q.to_bits())
                })
                .count();
            (differing + a.trace.len().abs_diff(b.trace.len())) as f64
        }
        _ => f64::INFINITY,
    };

    // Closed loop, McPaper against the oracle along its own trajectory.
    let mc_closed_loop = match run_closed_loop(ControllerVariant::McPaper, &sc) {
        Ok(out) => {
            let expected = rms_force_gap(&out.trace, sc.fed);
            (out.metrics.torque_divergence_rms - expected).abs() / expected
        }
        Err(_) => f64::INFINITY,
    };

    // Skewed frame: McPaper against Corrected evaluated at the same states.
    let sc = contact_scenario(skewed);
    let mc_pairwise = match compare_variants(
        ControllerVariant::Corrected,
        &[ControllerVariant::McPaper],
        &sc,
    ) {
        Ok(report) => {
            let run = report.run(ControllerVariant::McPaper).expect("run present");
            let pair = report
                .pair(ControllerVariant::McPaper)
                .expect("pair present");
            let expected = rms_force_gap(&run.trace, sc.fed);
            (pair.torque_divergence_rms - expected).abs() / expected
        }
        Err(_) => f64::INFINITY,
    };

    vec![
        outcome(
            "discrepancy",
            "sim_paper_separation_min",
            min_separation,
            Bound::Above,
            0.0,
            trials,
        ),
        outcome(
            "discrepancy",
            "identity_transform_gap",
            identity_gap,
            Bound::AtMost,
            0.0,
            trials,
        ),
        outcome(
            "discrepancy",
            "mc_paper_force_gap",
            mc_gap,
            Bound::AtMost,
            1e-12,
            2 * trials,
        ),
        outcome(
            "discrepancy",
            "identity_trace_mismatch_rows",
            trace_mismatch,
            Bound::AtMost,
            0.0,
            1,
        ),
        outcome(
            "discrepancy",
            "mc_paper_closed_loop_rel",
            mc_closed_loop,
            Bound::AtMost,
            1e-9,
            1,
        ),
        outcome(
            "discrepancy",
            "mc_paper_pairwise_rel",
            mc_pairwise,
            Bound::AtMost,
            1e-9,
            1,
        ),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_parse() {
        for s in [
            Suite::Frames,
            Suite::Dynamics,
            Suite::Implication,
            Suite::Discrepancy,
            Suite::All,
        ] {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("bogus".parse::<Suite>().is_err());
    }

    #[test]
    fn small_suites_pass() {
        let report = run_suite(Suite::All, 1, Some(200));
        for o in &report.outcomes {
            assert!(o.passed(), "{o}");
        }
    }

    #[test]
    fn reports_are_reproducible() {
        let a = run_suite(Suite::Implication, 9, Some(50));
        let b = run_suite(Suite::Implication, 9, Some(50));
        assert_eq!(a, b);
    }
}
