//! Impedance force control and the image-based torque controller.
//!
//! The impedance law shapes the stage-frame tracking error into
//! `m·ë + b·ė + k·e = f_e`. Substituting `ë` from that law into the inverted
//! stage dynamics gives the torque controller. Four formulations are kept so
//! the published variants can be compared against each other:
//!
//! | variant           | torque                                   |
//! |-------------------|------------------------------------------|
//! | `Corrected`       | `M·T·c + (B·T⁻¹)·T·q̇ + f_ed`             |
//! | `SimPaper`        | `M·c + B·q̇ + f_ed` (T dropped)           |
//! | `McPaper`         | `M·T·c + (B·T⁻¹)·T·q̇ + f_e` (f_ed → f_e)  |
//! | `StageConsistent` | `M·c + B·q̇ + f_ed`                       |
//!
//! with the commanded acceleration `c = q̈_d + (b·ė + k·e − f_e)/m`.
//!
//! `StageConsistent` is the plain inversion of the stage dynamics and is the
//! only one that reproduces the impedance law for stage-frame errors; it is
//! the oracle every other variant is measured against.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::algebra2d::{mat_inv, Vec2};
use crate::dynamics::{damping_matrix, mass_matrix, ForcePair, MassParams, Torque};
use crate::error::{require_positive, ModelError, Result};
use crate::frames::{transformation_matrix, FrameParams};

/// Desired inertia, damping and stiffness of the impedance law (per axis).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ImpedanceParams {
    m: f64,
    b: f64,
    k: f64,
}

impl ImpedanceParams {
    pub fn new(m: f64, b: f64, k: f64) -> Result<Self> {
        Ok(Self {
            m: require_positive("m", m)?,
            b: require_positive("b", b)?,
            k: require_positive("k", k)?,
        })
    }

    pub fn m(&self) -> f64 {
        self.m
    }
    pub fn b(&self) -> f64 {
        self.b
    }
    pub fn k(&self) -> f64 {
        self.k
    }

    /// Error acceleration demanded by the law: `ë = (f_e − b·ė − k·e)/m`.
    pub fn target_error_acceleration(&self, e: Vec2, edot: Vec2, fe: ForcePair) -> Vec2 {
        (fe.0 - edot.scale(self.b) - e.scale(self.k)).scale(1.0 / self.m)
    }
}

/// Desired position, velocity and acceleration at one instant.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct DesiredTrajectoryPoint {
    pub qd: Vec2,
    pub qd_dot: Vec2,
    pub qd_ddot: Vec2,
}

/// Stage-frame position error and its first two derivatives.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct ErrorState {
    pub e: Vec2,
    pub edot: Vec2,
    pub eddot: Vec2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ControllerVariant {
    Corrected,
    SimPaper,
    McPaper,
    StageConsistent,
}

impl ControllerVariant {
    pub const ALL: [ControllerVariant; 4] = [
        ControllerVariant::Corrected,
        ControllerVariant::SimPaper,
        ControllerVariant::McPaper,
        ControllerVariant::StageConsistent,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ControllerVariant::Corrected => "Corrected",
            ControllerVariant::SimPaper => "SimPaper",
            ControllerVariant::McPaper => "McPaper",
            ControllerVariant::StageConsistent => "StageConsistent",
        }
    }
}

impl fmt::Display for ControllerVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error(
    "unknown controller variant `{0}` (expected Corrected, SimPaper, McPaper or StageConsistent)"
)]
pub struct UnknownVariant(pub String);

impl FromStr for ControllerVariant {
    type Err = UnknownVariant;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        ControllerVariant::ALL
            .into_iter()
            .find(|v| v.name() == s)
            .ok_or_else(|| UnknownVariant(s.to_owned()))
    }
}

/// `e = q_d − q`, `ė = q̇_d − q̇`, `ë = q̈_d − q̈`.
pub fn error_state(
    d: &DesiredTrajectoryPoint,
    actual_q: Vec2,
    actual_qdot: Vec2,
    actual_qddot: Vec2,
) -> ErrorState {
    ErrorState {
        e: d.qd - actual_q,
        edot: d.qd_dot - actual_qdot,
        eddot: d.qd_ddot - actual_qddot,
    }
}

/// `m·ë + b·ė + k·e − f_e`; zero iff the impedance law holds.
pub fn force_control_residual(ip: &ImpedanceParams, es: &ErrorState, fe: ForcePair) -> Vec2 {
    es.eddot.scale(ip.m) + es.edot.scale(ip.b) + es.e.scale(ip.k) - fe.0
}

/// Magnitude the force-control residual is judged against.
pub fn force_control_scale(ip: &ImpedanceParams, es: &ErrorState, fe: ForcePair) -> f64 {
    1.0f64
        .max(es.eddot.scale(ip.m).norm_inf())
        .max(es.edot.scale(ip.b).norm_inf())
        .max(es.e.scale(ip.k).norm_inf())
        .max(fe.0.norm_inf())
}

/// Inverse dynamics `M·q̈ + B·q̇ + f_ed`.
pub fn required_torque(mp: &MassParams, qddot: Vec2, qdot: Vec2, fed: ForcePair) -> Torque {
    Torque(mass_matrix(mp) * qddot + damping_matrix() * qdot + fed.0)
}

/// Commanded acceleration `c = q̈_d + (b·ė + k·e − f_e)/m`.
pub fn commanded_acceleration(
    ip: &ImpedanceParams,
    d: &DesiredTrajectoryPoint,
    es: &ErrorState,
    fe: ForcePair,
) -> Vec2 {
    d.qd_ddot + (es.edot.scale(ip.b) + es.e.scale(ip.k) - fe.0).scale(1.0 / ip.m)
}

#[allow(clippy::too_many_arguments)]
pub fn torque_controller(
    v: ControllerVariant,
    mp: &MassParams,
    p: &FrameParams,
    ip: &ImpedanceParams,
    d: &DesiredTrajectoryPoint,
    qdot: Vec2,
    es: &ErrorState,
    fe: ForcePair,
    fed: ForcePair,
) -> Result<Torque> {
    let m = mass_matrix(mp);
    let b = damping_matrix();
    let c = commanded_acceleration(ip, d, es, fe);
    let tau = match v {
        ControllerVariant::SimPaper | ControllerVariant::StageConsistent => {
            m * c + b * qdot + fed.0
        }
        ControllerVariant::Corrected | ControllerVariant::McPaper => {
            let t = transformation_matrix(p);
            let n = b * mat_inv(t)?;
            let shared = m * (t * c) + n * (t * qdot);
            if v == ControllerVariant::Corrected {
                shared + fed.0
            } else {
                shared + fe.0
            }
        }
    };
    Ok(Torque(tau))
}

/// Actual motion `(q, q̇, q̈)` of the stage at one instant.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ActualMotion {
    pub q: Vec2,
    pub qdot: Vec2,
    pub qddot: Vec2,
}

/// Tolerance factor for the impedance-law precondition.
pub const IMPLICATION_PRECONDITION_TOL: f64 = 1e-9;

/// Controller torque minus the torque the dynamics actually need.
///
/// When the supplied motion satisfies the impedance law, the
/// `StageConsistent` residual vanishes to rounding. Fails with
/// [`ModelError::PreconditionViolated`] if the motion does not satisfy the
/// law, since the residual would then say nothing about the controller.
#[allow(clippy::too_many_arguments)]
pub fn implication_residual(
    v: ControllerVariant,
    mp: &MassParams,
    p: &FrameParams,
    ip: &ImpedanceParams,
    d: &DesiredTrajectoryPoint,
    actual: ActualMotion,
    fe: ForcePair,
    fed: ForcePair,
) -> Result<Vec2> {
    let es = error_state(d, actual.q, actual.qdot, actual.qddot);
    let residual = force_control_residual(ip, &es, fe).norm_inf();
    let tolerance = IMPLICATION_PRECONDITION_TOL * force_control_scale(ip, &es, fe);
    if residual.is_nan() || residual > tolerance {
        return Err(ModelError::PreconditionViolated {
            residual,
            tolerance,
        });
    }
    let tau = torque_controller(v, mp, p, ip, d, actual.qdot, &es, fe, fed)?;
    let needed = required_torque(mp, actual.qddot, actual.qdot, fed);
    Ok(tau.0 - needed.0)
}

/// Builds the actual motion that satisfies the impedance law exactly for the
/// given position and velocity: `q̈ = q̈_d − (f_e − b·ė − k·e)/m`.
pub fn motion_satisfying_impedance(
    ip: &ImpedanceParams,
    d: &DesiredTrajectoryPoint,
    q: Vec2,
    qdot: Vec2,
    fe: ForcePair,
) -> ActualMotion {
    let eddot = ip.target_error_acceleration(d.qd - q, d.qd_dot - qdot, fe);
    ActualMotion {
        q,
        qdot,
        qddot: d.qd_ddot - eddot,
    }
}
