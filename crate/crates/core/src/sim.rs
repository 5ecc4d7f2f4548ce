//! Closed-loop injection scenarios.
//!
//! A run samples the desired trajectory, evaluates the membrane contact
//! force, forms the impedance-target error state, asks the selected
//! controller for a torque and advances the stage one RK4 step with that
//! torque held constant. Every row also carries the `StageConsistent` torque
//! at the same state so divergence can be measured along the run.

use serde::Serialize;

use crate::algebra2d::Vec2;
use crate::control::{
    force_control_residual, torque_controller, ControllerVariant, DesiredTrajectoryPoint,
    ErrorState, ImpedanceParams,
};
use crate::dynamics::{
    acceleration, rk4_step, step_times, ForcePair, MassParams, StageState, Torque,
};
use crate::error::{require_non_negative, require_positive, ModelError, Result};
use crate::frames::FrameParams;

/// Desired stage trajectory.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum TrajectorySpec {
    /// Minimum-jerk move from `start` to `end`, holding `end` afterwards.
    Quintic {
        start: Vec2,
        end: Vec2,
        duration: f64,
    },
    /// `start + amplitude·sin(2πf·t)`.
    Sinusoid {
        start: Vec2,
        amplitude: Vec2,
        frequency: f64,
        duration: f64,
    },
}

impl TrajectorySpec {
    pub fn quintic(start: Vec2, end: Vec2, duration: f64) -> Result<Self> {
        require_positive("duration", duration)?;
        Ok(Self::Quintic {
            start,
            end,
            duration,
        })
    }

    pub fn sinusoid(start: Vec2, amplitude: Vec2, frequency: f64, duration: f64) -> Result<Self> {
        require_positive("duration", duration)?;
        require_positive("frequency", frequency)?;
        Ok(Self::Sinusoid {
            start,
            amplitude,
            frequency,
            duration,
        })
    }

    pub fn duration(&self) -> f64 {
        match *self {
            TrajectorySpec::Quintic { duration, .. }
            | TrajectorySpec::Sinusoid { duration, .. } => duration,
        }
    }
}

/// Desired position, velocity and acceleration at `t`, all analytic.
pub fn sample_trajectory(spec: &TrajectorySpec, t: f64) -> DesiredTrajectoryPoint {
    match *spec {
        TrajectorySpec::Quintic {
            start,
            end,
            duration,
        } => {
            if t >= duration {
                return DesiredTrajectoryPoint {
                    qd: end,
                    ..Default::default()
                };
            }
            let tau = (t / duration).max(0.0);
            let (t2, t3) = (tau * tau, tau * tau * tau);
            let s = t3 * (10.0 - 15.0 * tau + 6.0 * t2);
            let ds = 30.0 * t2 * (1.0 - 2.0 * tau + t2) / duration;
            let dds = 60.0 * tau * (1.0 - 3.0 * tau + 2.0 * t2) / (duration * duration);
            let delta = end - start;
            DesiredTrajectoryPoint {
                qd: start + delta.scale(s),
                qd_dot: delta.scale(ds),
                qd_ddot: delta.scale(dds),
            }
        }
        TrajectorySpec::Sinusoid {
            start,
            amplitude,
            frequency,
            ..
        } => {
            let w = 2.0 * std::f64::consts::PI * frequency;
            let (s, c) = (w * t).sin_cos();
            DesiredTrajectoryPoint {
                qd: start + amplitude.scale(s),
                qd_dot: amplitude.scale(w * c),
                qd_ddot: amplitude.scale(-w * w * s),
            }
        }
    }
}

/// One-sided spring-dashpot along x, active once the tip passes `contact_x`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MembraneModel {
    stiffness: f64,
    damping: f64,
    contact_x: f64,
}

impl MembraneModel {
    pub fn new(stiffness: f64, damping: f64, contact_x: f64) -> Result<Self> {
        Ok(Self {
            stiffness: require_non_negative("stiffness", stiffness)?,
            damping: require_non_negative("damping", damping)?,
            contact_x: crate::error::require_finite("contact_x", contact_x)?,
        })
    }

    /// A membrane that never pushes back.
    pub fn none() -> Self {
        Self {
            stiffness: 0.0,
            damping: 0.0,
            contact_x: 0.0,
        }
    }

    pub fn stiffness(&self) -> f64 {
        self.stiffness
    }
    pub fn damping(&self) -> f64 {
        self.damping
    }
    pub fn contact_x(&self) -> f64 {
        self.contact_x
    }
}

pub fn membrane_force(mm: &MembraneModel, q: Vec2, qdot: Vec2) -> ForcePair {
    if q.a0 > mm.contact_x {
        let push = mm.stiffness * (q.a0 - mm.contact_x) + mm.damping * qdot.a0;
        ForcePair::new(push.max(0.0), 0.0)
    } else {
        ForcePair::ZERO
    }
}

/// Everything a closed-loop run needs besides the controller variant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Scenario {
    pub masses: MassParams,
    pub frame: FrameParams,
    pub impedance: ImpedanceParams,
    pub trajectory: TrajectorySpec,
    pub membrane: MembraneModel,
    pub fed: ForcePair,
    pub t_end: f64,
    pub dt: f64,
}

impl Scenario {
    /// The stage starts on the desired trajectory with zero tracking error.
    pub fn initial_state(&self) -> StageState {
        let d = sample_trajectory(&self.trajectory, 0.0);
        StageState::new(d.qd, d.qd_dot)
    }
}

/// One sample of a closed-loop run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TraceRow {
    pub t: f64,
    pub x: f64,
    pub y: f64,
    pub xdot: f64,
    pub ydot: f64,
    pub xd: f64,
    pub yd: f64,
    pub fex: f64,
    pub fey: f64,
    pub taux: f64,
    pub tauy: f64,
    pub taux_oracle: f64,
    pub tauy_oracle: f64,
}

impl TraceRow {
    pub const HEADER: &'static str =
        "t,x,y,xdot,ydot,xd,yd,fex,fey,taux,tauy,taux_oracle,tauy_oracle";

    pub fn values(&self) -> [f64; 13] {
        [
            self.t,
            self.x,
            self.y,
            self.xdot,
            self.ydot,
            self.xd,
            self.yd,
            self.fex,
            self.fey,
            self.taux,
            self.tauy,
            self.taux_oracle,
            self.tauy_oracle,
        ]
    }

    pub fn q(&self) -> Vec2 {
        Vec2::new(self.x, self.y)
    }
    pub fn qdot(&self) -> Vec2 {
        Vec2::new(self.xdot, self.ydot)
    }
    pub fn fe(&self) -> ForcePair {
        ForcePair::new(self.fex, self.fey)
    }
    pub fn tau(&self) -> Torque {
        Torque::new(self.taux, self.tauy)
    }
    pub fn tau_oracle(&self) -> Torque {
        Torque::new(self.taux_oracle, self.tauy_oracle)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RunMetrics {
    /// Per-axis RMS of the position error `q_d − q`.
    pub rms_tracking_error: Vec2,
    /// Worst `‖m·ë + b·ė + k·e − f_e‖∞` with `ë` taken from the dynamics
    /// under the applied torque.
    pub max_impedance_residual: f64,
    /// RMS of `‖τ − τ_oracle‖₂` over the run.
    pub torque_divergence_rms: f64,
    pub samples: usize,
    /// True when the run stopped on a non-finite state; the metrics then
    /// cover only the finite prefix.
    pub diverged: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunOutput {
    pub variant: ControllerVariant,
    pub trace: Vec<TraceRow>,
    pub metrics: RunMetrics,
    /// Set when the run aborted on divergence. The last trace row is then the
    /// first non-finite state.
    pub divergence: Option<ModelError>,
}

/// Impedance-target error state at a sampled configuration: `e`, `ė` from
/// the state, `ë` from the impedance law.
pub fn target_error_state(
    ip: &ImpedanceParams,
    d: &DesiredTrajectoryPoint,
    state: StageState,
    fe: ForcePair,
) -> ErrorState {
    let e = d.qd - state.q;
    let edot = d.qd_dot - state.qdot;
    ErrorState {
        e,
        edot,
        eddot: ip.target_error_acceleration(e, edot, fe),
    }
}

struct Controlled {
    d: DesiredTrajectoryPoint,
    fe: ForcePair,
    es: ErrorState,
    tau: Torque,
    tau_oracle: Torque,
}

fn evaluate(v: ControllerVariant, sc: &Scenario, t: f64, s: StageState) -> Result<Controlled> {
    let d = sample_trajectory(&sc.trajectory, t);
    let fe = membrane_force(&sc.membrane, s.q, s.qdot);
    let es = target_error_state(&sc.impedance, &d, s, fe);
    let ctrl = |v| {
        torque_controller(
            v,
            &sc.masses,
            &sc.frame,
            &sc.impedance,
            &d,
            s.qdot,
            &es,
            fe,
            sc.fed,
        )
    };
    let tau = ctrl(v)?;
    let tau_oracle = if v == ControllerVariant::StageConsistent {
        tau
    } else {
        ctrl(ControllerVariant::StageConsistent)?
    };
    Ok(Controlled {
        d,
        fe,
        es,
        tau,
        tau_oracle,
    })
}

fn row(t: f64, s: StageState, c: &Controlled) -> TraceRow {
    TraceRow {
        t,
        x: s.q.a0,
        y: s.q.a1,
        xdot: s.qdot.a0,
        ydot: s.qdot.a1,
        xd: c.d.qd.a0,
        yd: c.d.qd.a1,
        fex: c.fe.0.a0,
        fey: c.fe.0.a1,
        taux: c.tau.0.a0,
        tauy: c.tau.0.a1,
        taux_oracle: c.tau_oracle.0.a0,
        tauy_oracle: c.tau_oracle.0.a1,
    }
}

#[derive(Default)]
struct MetricsAccumulator {
    err_sq: Vec2,
    tau_div_sq: f64,
    max_impedance_residual: f64,
    samples: usize,
}

impl MetricsAccumulator {
    fn push(&mut self, sc: &Scenario, s: StageState, c: &Controlled) {
        let e = c.es.e;
        self.err_sq = self.err_sq + e.hadamard(e);
        self.tau_div_sq += (c.tau.0 - c.tau_oracle.0).norm_sq();

        let realized_qddot = acceleration(&sc.masses, s.qdot, c.tau, sc.fed);
        let realized = ErrorState {
            eddot: c.d.qd_ddot - realized_qddot,
            ..c.es
        };
        let r = force_control_residual(&sc.impedance, &realized, c.fe).norm_inf();
        self.max_impedance_residual = self.max_impedance_residual.max(r);
        self.samples += 1;
    }

    fn finish(&self, diverged: bool) -> RunMetrics {
        let n = self.samples.max(1) as f64;
        RunMetrics {
            rms_tracking_error: Vec2::new((self.err_sq.a0 / n).sqrt(), (self.err_sq.a1 / n).sqrt()),
            max_impedance_residual: self.max_impedance_residual,
            torque_divergence_rms: (self.tau_div_sq / n).sqrt(),
            samples: self.samples,
            diverged,
        }
    }
}

/// Runs one controller variant through the scenario from `t = 0` to `t_end`.
///
/// Fails only on invalid step parameters. Divergence is reported through
/// [`RunOutput::divergence`] together with the partial trace.
pub fn run_closed_loop(v: ControllerVariant, sc: &Scenario) -> Result<RunOutput> {
    require_positive("t_end", sc.t_end)?;
    let times = step_times(sc.t_end, sc.dt)?;
    let mut trace = Vec::with_capacity(times.len());
    let mut acc = MetricsAccumulator::default();
    let mut s = sc.initial_state();
    let mut divergence = None;

    for (i, &t) in times.iter().enumerate() {
        if !s.is_finite() {
            trace.push(TraceRow {
                t,
                x: s.q.a0,
                y: s.q.a1,
                xdot: s.qdot.a0,
                ydot: s.qdot.a1,
                xd: f64::NAN,
                yd: f64::NAN,
                fex: f64::NAN,
                fey: f64::NAN,
                taux: f64::NAN,
                tauy: f64::NAN,
                taux_oracle: f64::NAN,
                tauy_oracle: f64::NAN,
            });
            log::warn!("{v}: non-finite state at t = {t}");
            divergence = Some(ModelError::NonFiniteState {
                last_finite: i - 1,
                t,
            });
            break;
        }
        let c = evaluate(v, sc, t, s)?;
        trace.push(row(t, s, &c));
        acc.push(sc, s, &c);
        if let Some(&t_next) = times.get(i + 1) {
            let tau = c.tau;
            let fed = sc.fed;
            s = rk4_step(&sc.masses, s, t, t_next - t, &|_| tau, &|_| fed);
        }
    }

    Ok(RunOutput {
        variant: v,
        trace,
        metrics: acc.finish(divergence.is_some()),
        divergence,
    })
}

/// Divergence of one variant against the comparison base.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PairwiseDivergence {
    pub variant: ControllerVariant,
    /// RMS of `‖τ_variant − τ_base‖₂`, both evaluated at the variant's own
    /// states.
    pub torque_divergence_rms: f64,
    /// RMS of `‖q_variant − q_base‖₂` between the two runs, over their common
    /// finite prefix.
    pub tracking_divergence_rms: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonReport {
    pub base: ControllerVariant,
    /// Base run first, then the others in the order given.
    pub runs: Vec<RunOutput>,
    pub pairwise: Vec<PairwiseDivergence>,
}

impl ComparisonReport {
    pub fn run(&self, v: ControllerVariant) -> Option<&RunOutput> {
        self.runs.iter().find(|r| r.variant == v)
    }

    pub fn pair(&self, v: ControllerVariant) -> Option<&PairwiseDivergence> {
        self.pairwise.iter().find(|p| p.variant == v)
    }
}

fn finite_rows(run: &RunOutput) -> &[TraceRow] {
    match run.divergence {
        Some(_) => &run.trace[..run.trace.len().saturating_sub(1)],
        None => &run.trace,
    }
}

fn base_torque_divergence(base: ControllerVariant, sc: &Scenario, run: &RunOutput) -> Result<f64> {
    let rows = finite_rows(run);
    let mut sum = 0.0;
    for r in rows {
        let s = StageState::new(r.q(), r.qdot());
        let c = evaluate(base, sc, r.t, s)?;
        sum += (r.tau().0 - c.tau.0).norm_sq();
    }
    Ok((sum / rows.len().max(1) as f64).sqrt())
}

fn tracking_divergence(a: &RunOutput, b: &RunOutput) -> f64 {
    let (ra, rb) = (finite_rows(a), finite_rows(b));
    let n = ra.len().min(rb.len());
    let sum: f64 = ra
        .iter()
        .zip(rb)
        .map(|(x, y)| (x.q() - y.q()).norm_sq())
        .sum();
    (sum / n.max(1) as f64).sqrt()
}

/// Runs `base` and every variant in `others` on the same scenario.
///
/// Runs are independent and execute on their own threads. A diverging
/// variant is reported with its partial metrics and does not affect the rest.
pub fn compare_variants(
    base: ControllerVariant,
    others: &[ControllerVariant],
    sc: &Scenario,
) -> Result<ComparisonReport> {
    let mut variants = vec![base];
    variants.extend(others.iter().copied().filter(|&v| v != base));

    let runs: Vec<Result<RunOutput>> = std::thread::scope(|scope| {
        let handles: Vec<_> = variants
            .iter()
            .map(|&v| scope.spawn(move || run_closed_loop(v, sc)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("simulation thread panicked"))
            .collect()
    });
    let runs = runs.into_iter().collect::<Result<Vec<_>>>()?;

    let base_run = &runs[0];
    let mut pairwise = Vec::with_capacity(runs.len() - 1);
    for run in &runs[1..] {
        pairwise.push(PairwiseDivergence {
            variant: run.variant,
            torque_divergence_rms: base_torque_divergence(base, sc, run)?,
            tracking_divergence_rms: tracking_divergence(run, base_run),
        });
    }
    Ok(ComparisonReport {
        base,
        runs,
        pairwise,
    })
}
