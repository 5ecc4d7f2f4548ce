//! Dynamics of the 2-DOF xy motion stage.
//!
//! `M q̈ + B q̇ = τ − f_ed`, with `M = diag(mx + my + mp, my + mp)` and the
//! positioning-table matrix `B = I`. Torques and forces share one vector
//! equation and are treated as commensurable generalized forces.

use serde::Serialize;

use crate::algebra2d::{mat_inv, Mat2, Vec2};
use crate::error::{require_finite, require_positive, ModelError, Result};
use crate::frames::{transformation_matrix, FrameParams};

/// Masses of the x table, the y table and the working plate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MassParams {
    mx: f64,
    my: f64,
    mp: f64,
}

impl MassParams {
    pub fn new(mx: f64, my: f64, mp: f64) -> Result<Self> {
        Ok(Self {
            mx: require_positive("mx", mx)?,
            my: require_positive("my", my)?,
            mp: require_positive("mp", mp)?,
        })
    }

    pub fn mx(&self) -> f64 {
        self.mx
    }
    pub fn my(&self) -> f64 {
        self.my
    }
    pub fn mp(&self) -> f64 {
        self.mp
    }

    /// Mass moved along x: both tables and the plate.
    pub fn moving_x(&self) -> f64 {
        self.mx + self.my + self.mp
    }

    /// Mass moved along y: the y table and the plate.
    pub fn moving_y(&self) -> f64 {
        self.my + self.mp
    }
}

/// Stage configuration: positions and velocities.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct StageState {
    pub q: Vec2,
    pub qdot: Vec2,
}

impl StageState {
    pub const fn new(q: Vec2, qdot: Vec2) -> Self {
        Self { q, qdot }
    }

    pub fn at_rest(q: Vec2) -> Self {
        Self::new(q, Vec2::ZERO)
    }

    pub fn is_finite(&self) -> bool {
        self.q.is_finite() && self.qdot.is_finite()
    }
}

/// A planar force, either a desired actuator force or an applied contact force.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct ForcePair(pub Vec2);

impl ForcePair {
    pub const ZERO: ForcePair = ForcePair(Vec2::ZERO);

    pub const fn new(fx: f64, fy: f64) -> Self {
        Self(Vec2::new(fx, fy))
    }
}

/// Motor input torques `(τx, τy)`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct Torque(pub Vec2);

impl Torque {
    pub const ZERO: Torque = Torque(Vec2::ZERO);

    pub const fn new(tx: f64, ty: f64) -> Self {
        Self(Vec2::new(tx, ty))
    }
}

pub fn mass_matrix(mp: &MassParams) -> Mat2 {
    Mat2::diag(mp.moving_x(), mp.moving_y())
}

/// The positioning-table matrix, which is the identity.
pub fn damping_matrix() -> Mat2 {
    Mat2::IDENTITY
}

/// `M·q̈ + B·q̇ − (τ − f_ed)`; zero iff the dynamics hold at this instant.
pub fn dynamics_residual(
    mp: &MassParams,
    qddot: Vec2,
    qdot: Vec2,
    tau: Torque,
    fed: ForcePair,
) -> Vec2 {
    mass_matrix(mp) * qddot + damping_matrix() * qdot - (tau.0 - fed.0)
}

/// Acceleration implied by the dynamics, `M⁻¹(τ − f_ed − B·q̇)`.
pub fn acceleration(mp: &MassParams, qdot: Vec2, tau: Torque, fed: ForcePair) -> Vec2 {
    let rhs = tau.0 - fed.0 - damping_matrix() * qdot;
    // M is diagonal
    Vec2::new(rhs.a0 / mp.moving_x(), rhs.a1 / mp.moving_y())
}

/// Initial conditions of a torque-free, force-free run.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct InitialConditions {
    pub x0: f64,
    pub y0: f64,
    pub xd0: f64,
    pub yd0: f64,
}

impl InitialConditions {
    pub fn state(&self) -> StageState {
        StageState::new(Vec2::new(self.x0, self.y0), Vec2::new(self.xd0, self.yd0))
    }
}

/// Closed-form solution with `τ = f_ed = 0`.
///
/// Each axis decays independently: `x(t) = x0 + xd0·Mx·(1 − e^(−t/Mx))`
/// with `Mx = mx + my + mp`, and likewise for y with `My = my + mp`.
pub fn free_response(mp: &MassParams, ic: &InitialConditions, t: f64) -> StageState {
    let (mx, my) = (mp.moving_x(), mp.moving_y());
    let ex = (-t / mx).exp();
    let ey = (-t / my).exp();
    // 1 − e^(−t/M) via expm1: exact at t = 0 and accurate for small t
    let q = Vec2::new(
        ic.x0 + ic.xd0 * mx * -(-t / mx).exp_m1(),
        ic.y0 + ic.yd0 * my * -(-t / my).exp_m1(),
    );
    let qdot = Vec2::new(ic.xd0 * ex, ic.yd0 * ey);
    StageState::new(q, qdot)
}

/// Analytic second derivative of [`free_response`].
pub fn free_response_acceleration(mp: &MassParams, ic: &InitialConditions, t: f64) -> Vec2 {
    let (mx, my) = (mp.moving_x(), mp.moving_y());
    Vec2::new(
        -(ic.xd0 / mx) * (-t / mx).exp(),
        -(ic.yd0 / my) * (-t / my).exp(),
    )
}

/// One classical Runge–Kutta step of the first-order system
/// `q̇ = v`, `v̇ = M⁻¹(τ(t) − f_ed(t) − B·v)`.
pub fn rk4_step<T, F>(
    mp: &MassParams,
    s: StageState,
    t: f64,
    h: f64,
    tau_of_t: &T,
    fed_of_t: &F,
) -> StageState
where
    T: Fn(f64) -> Torque + ?Sized,
    F: Fn(f64) -> ForcePair + ?Sized,
{
    let deriv = |t: f64, s: StageState| -> StageState {
        StageState::new(s.qdot, acceleration(mp, s.qdot, tau_of_t(t), fed_of_t(t)))
    };
    let axpy = |s: StageState, k: StageState, a: f64| -> StageState {
        StageState::new(s.q + k.q.scale(a), s.qdot + k.qdot.scale(a))
    };

    let half = 0.5 * h;
    let k1 = deriv(t, s);
    let k2 = deriv(t + half, axpy(s, k1, half));
    let k3 = deriv(t + half, axpy(s, k2, half));
    let k4 = deriv(t + h, axpy(s, k3, h));

    let sixth = h / 6.0;
    let dq = k1.q + k2.q.scale(2.0) + k3.q.scale(2.0) + k4.q;
    let dv = k1.qdot + k2.qdot.scale(2.0) + k3.qdot.scale(2.0) + k4.qdot;
    StageState::new(s.q + dq.scale(sixth), s.qdot + dv.scale(sixth))
}

/// Sample times `0, dt, 2·dt, …` ending exactly on `t_end`, with a shorter
/// final step when `t_end` is not a multiple of `dt`.
pub fn step_times(t_end: f64, dt: f64) -> Result<Vec<f64>> {
    require_positive("dt", dt)?;
    require_finite("t_end", t_end)?;
    if t_end < 0.0 {
        return Err(ModelError::InvalidParameter {
            name: "t_end",
            constraint: ">= 0",
            value: t_end,
        });
    }
    let ratio = t_end / dt;
    let nearest = ratio.round();
    let (full, partial) = if (ratio - nearest).abs() <= 1e-9 * nearest.max(1.0) {
        (nearest as usize, false)
    } else {
        (ratio.floor() as usize, true)
    };
    let mut times: Vec<f64> = (0..=full).map(|i| i as f64 * dt).collect();
    if partial {
        times.push(t_end);
    } else if let Some(last) = times.last_mut() {
        *last = t_end;
    }
    Ok(times)
}

/// Fixed-step RK4 integration from `t = 0` to `t_end`.
///
/// Returns every sample including the initial state. Fails with
/// [`ModelError::NonFiniteState`] as soon as any component stops being finite.
pub fn integrate<T, F>(
    mp: &MassParams,
    s0: StageState,
    tau_of_t: T,
    fed_of_t: F,
    t_end: f64,
    dt: f64,
) -> Result<Vec<(f64, StageState)>>
where
    T: Fn(f64) -> Torque,
    F: Fn(f64) -> ForcePair,
{
    let times = step_times(t_end, dt)?;
    if !s0.is_finite() {
        return Err(ModelError::NonFiniteState {
            last_finite: 0,
            t: 0.0,
        });
    }
    let mut out = Vec::with_capacity(times.len());
    out.push((times[0], s0));
    let mut s = s0;
    for w in times.windows(2) {
        let (t0, t1) = (w[0], w[1]);
        s = rk4_step(mp, s, t0, t1 - t0, &tau_of_t, &fed_of_t);
        if !s.is_finite() {
            return Err(ModelError::NonFiniteState {
                last_finite: out.len() - 1,
                t: t1,
            });
        }
        out.push((t1, s));
    }
    Ok(out)
}

/// The image-space inertia and positioning-table matrices `(M·T⁻¹, B·T⁻¹)`.
///
/// For any stage trajectory obeying the dynamics, the image trajectory
/// `u = T·q + offset` satisfies `iner·ü + pos_tab·u̇ = τ − f_ed`.
pub fn image_space_operators(mp: &MassParams, p: &FrameParams) -> Result<(Mat2, Mat2)> {
    let t_inv = mat_inv(transformation_matrix(p))?;
    Ok((mass_matrix(mp) * t_inv, damping_matrix() * t_inv))
}

/// `iner·ü + pos_tab·u̇ − (τ − f_ed)` in image coordinates.
pub fn image_space_residual(
    operators: (Mat2, Mat2),
    uddot: Vec2,
    udot: Vec2,
    tau: Torque,
    fed: ForcePair,
) -> Vec2 {
    let (iner, pos_tab) = operators;
    iner * uddot + pos_tab * udot - (tau.0 - fed.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_masses() -> MassParams {
        MassParams::new(1.0, 1.0, 1.0).unwrap()
    }

    #[test]
    fn mass_params_validation() {
        assert!(MassParams::new(1.0, 0.0, 1.0).is_err());
        assert!(MassParams::new(-1.0, 1.0, 1.0).is_err());
        assert!(MassParams::new(1.0, 1.0, f64::NAN).is_err());
        let err = MassParams::new(1.0, 1.0, 0.0).unwrap_err();
        assert_eq!(err.to_string(), "mp must be > 0 (got 0)");
    }

    #[test]
    fn mass_and_damping_matrices() {
        assert_eq!(mass_matrix(&unit_masses()), Mat2::diag(3.0, 2.0));
        let m = mass_matrix(&MassParams::new(0.2, 3.0, 1e-3).unwrap());
        assert_eq!(m.m01, 0.0);
        assert_eq!(m.m10, 0.0);
        assert!(m.m00 > 0.0 && m.m11 > 0.0);

        assert_eq!(damping_matrix(), Mat2::new(1.0, 0.0, 0.0, 1.0));
        assert_eq!(damping_matrix().det(), 1.0);
        let v = Vec2::new(-4.5, 0.125);
        assert_eq!(damping_matrix() * v, v);
    }

    #[test]
    fn residual_examples() {
        let mp = unit_masses();
        let tau = Torque::new(0.7, -1.1);
        let fed = ForcePair::new(0.7, -1.1);
        assert_eq!(
            dynamics_residual(&mp, Vec2::ZERO, Vec2::ZERO, tau, fed),
            Vec2::ZERO
        );

        let r = dynamics_residual(
            &mp,
            Vec2::new(1.0, 1.0),
            Vec2::ZERO,
            Torque::new(3.0, 2.0),
            ForcePair::ZERO,
        );
        assert_eq!(r, Vec2::ZERO);

        let r = dynamics_residual(
            &mp,
            Vec2::ZERO,
            Vec2::new(1.0, 0.0),
            Torque::ZERO,
            ForcePair::ZERO,
        );
        assert_eq!(r, Vec2::new(1.0, 0.0));
    }

    #[test]
    fn free_response_examples() {
        let mp = MassParams::new(0.5, 2.0, 1.5).unwrap();
        let ic = InitialConditions {
            x0: 1.0,
            y0: -2.0,
            xd0: 0.3,
            yd0: 4.0,
        };
        let s = free_response(&mp, &ic, 0.0);
        assert_eq!(s.q, Vec2::new(1.0, -2.0));
        assert_eq!(s.qdot, Vec2::new(0.3, 4.0));

        let rest = InitialConditions {
            x0: 5.0,
            y0: 6.0,
            xd0: 0.0,
            yd0: 0.0,
        };
        for &t in &[0.0, 0.1, 7.0, 1e4] {
            assert_eq!(free_response(&mp, &rest, t).q, Vec2::new(5.0, 6.0));
        }

        let ic = InitialConditions {
            x0: 0.0,
            y0: 0.0,
            xd0: 1.0,
            yd0: 0.0,
        };
        let x = free_response(&unit_masses(), &ic, 3.0).q.a0;
        let expected = 3.0 * (1.0 - (-1.0f64).exp());
        assert!((x - expected).abs() < 1e-15);
        assert!((x - 1.896_361_676_485_673).abs() < 1e-12);
    }

    #[test]
    fn step_times_land_on_end() {
        let t = step_times(1.0, 0.3).unwrap();
        assert_eq!(t.len(), 5);
        assert_eq!(*t.last().unwrap(), 1.0);
        assert!((t[3] - 0.9).abs() < 1e-15);

        let t = step_times(10.0, 1e-3).unwrap();
        assert_eq!(t.len(), 10_001);
        assert_eq!(*t.last().unwrap(), 10.0);

        assert_eq!(step_times(0.0, 0.1).unwrap(), vec![0.0]);
        assert!(step_times(1.0, 0.0).is_err());
        assert!(step_times(1.0, -1e-3).is_err());
        assert!(step_times(-1.0, 1e-3).is_err());
    }

    #[test]
    fn integrate_rejects_bad_step() {
        let r = integrate(
            &unit_masses(),
            StageState::default(),
            |_| Torque::ZERO,
            |_| ForcePair::ZERO,
            1.0,
            0.0,
        );
        assert!(matches!(
            r,
            Err(ModelError::InvalidParameter { name: "dt", .. })
        ));
    }

    #[test]
    fn equilibrium_is_preserved() {
        let q0 = Vec2::new(0.4, -0.2);
        let traj = integrate(
            &unit_masses(),
            StageState::at_rest(q0),
            |_| Torque::new(1.5, -2.0),
            |_| ForcePair::new(1.5, -2.0),
            2.0,
            1e-2,
        )
        .unwrap();
        assert!(traj.iter().all(|(_, s)| s.q == q0 && s.qdot == Vec2::ZERO));
    }

    #[test]
    fn integrate_tracks_closed_form() {
        let mp = unit_masses();
        let ic = InitialConditions {
            x0: 0.0,
            y0: 1.0,
            xd0: 1.0,
            yd0: -0.5,
        };
        let traj = integrate(
            &mp,
            ic.state(),
            |_| Torque::ZERO,
            |_| ForcePair::ZERO,
            10.0,
            1e-3,
        )
        .unwrap();
        let worst = traj
            .iter()
            .map(|(t, s)| (s.q - free_response(&mp, &ic, *t).q).norm_inf())
            .fold(0.0, f64::max);
        assert!(worst < 1e-6, "worst {worst:e}");
    }

    #[test]
    fn divergence_is_reported() {
        let mp = unit_masses();
        let r = integrate(
            &mp,
            StageState::default(),
            |t| Torque::new(if t > 0.05 { f64::INFINITY } else { 0.0 }, 0.0),
            |_| ForcePair::ZERO,
            1.0,
            0.01,
        );
        match r {
            Err(ModelError::NonFiniteState { last_finite, .. }) => {
                assert!((4..=5).contains(&last_finite))
            }
            other => panic!("expected divergence, got {other:?}"),
        }
    }

    #[test]
    fn image_space_operator_examples() {
        let mp = unit_masses();
        let p = FrameParams::new(0.0, 1.0, 1.0, 1.0, 1.0).unwrap();
        let (iner, pos) = image_space_operators(&mp, &p).unwrap();
        assert_eq!(iner, mass_matrix(&mp));
        assert_eq!(pos, Mat2::IDENTITY);

        let p = FrameParams::new(0.0, 1.0, 1.0, 2.0, 4.0).unwrap();
        let (iner, pos) = image_space_operators(&mp, &p).unwrap();
        assert!(iner.sub_mat(Mat2::diag(1.5, 0.5)).norm_max() < 1e-15);
        assert!(pos.sub_mat(Mat2::diag(0.5, 0.25)).norm_max() < 1e-15);
    }
}
