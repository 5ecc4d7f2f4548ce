//! JSON scenario configuration.
//!
//! ```json
//! {
//!   "frame":      { "alpha": 0.5235987755982988, "dx": 0.5, "dy": 0.5, "fx": 2.0, "fy": 4.0 },
//!   "masses":     { "mx": 1.0, "my": 1.0, "mp": 1.0 },
//!   "impedance":  { "m": 1.0, "b": 20.0, "k": 100.0 },
//!   "trajectory": { "kind": "quintic", "start": [0.0, 0.0], "end": [2.0, 0.5], "duration": 2.0 },
//!   "membrane":   { "stiffness": 40.0, "damping": 2.0, "contact_x": 1.0 },
//!   "fed":        [0.5, -0.25],
//!   "run":        { "t_end": 4.0, "dt": 0.001, "variants": ["StageConsistent", "McPaper"] },
//!   "seed":       42
//! }
//! ```
//!
//! Unknown keys are rejected at every level. A sinusoid trajectory takes
//! `amplitude` and `frequency` in place of `end`.

use serde::Deserialize;
use thiserror::Error;

use crate::algebra2d::Vec2;
use crate::control::{ControllerVariant, ImpedanceParams};
use crate::dynamics::{ForcePair, MassParams};
use crate::error::ModelError;
use crate::frames::FrameParams;
use crate::sim::{MembraneModel, Scenario, TrajectorySpec};

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("parse error at {path} (line {line}, column {column}): {message}")]
    Parse {
        path: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{0}")]
    Invariant(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub scenario: Scenario,
    pub variants: Vec<ControllerVariant>,
    pub seed: u64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    frame: RawFrame,
    masses: RawMasses,
    impedance: RawImpedance,
    trajectory: RawTrajectory,
    membrane: RawMembrane,
    fed: [f64; 2],
    run: RawRun,
    #[serde(default)]
    seed: u64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFrame {
    alpha: f64,
    dx: f64,
    dy: f64,
    fx: f64,
    fy: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMasses {
    mx: f64,
    my: f64,
    mp: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawImpedance {
    m: f64,
    b: f64,
    k: f64,
}

#[derive(Deserialize, Clone, Copy, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
enum TrajectoryKind {
    Quintic,
    Sinusoid,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTrajectory {
    kind: TrajectoryKind,
    start: [f64; 2],
    end: Option<[f64; 2]>,
    duration: f64,
    amplitude: Option<[f64; 2]>,
    frequency: Option<f64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMembrane {
    stiffness: f64,
    damping: f64,
    contact_x: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRun {
    t_end: f64,
    dt: f64,
    variants: Vec<String>,
}

fn invariant(section: &str, err: ModelError) -> ConfigError {
    match err {
        ModelError::InvalidParameter {
            name,
            constraint,
            value,
        } => ConfigError::Invariant(format!(
            "{section}.{name} must be {constraint} (got {value})"
        )),
        other => ConfigError::Invariant(format!("{section}: {other}")),
    }
}

fn require(section: &str, name: &str, kind: &str) -> ConfigError {
    ConfigError::Invariant(format!("{section}.{name} is required for kind {kind}"))
}

fn positive(section: &str, name: &'static str, value: f64) -> Result<f64, ConfigError> {
    crate::error::require_positive(name, value).map_err(|e| invariant(section, e))
}

/// Parses and validates a scenario document.
pub fn parse_config(text: &str) -> Result<ScenarioConfig, ConfigError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let raw: RawConfig = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        ConfigError::Parse {
            path,
            line: inner.line(),
            column: inner.column(),
            message: inner.to_string(),
        }
    })?;

    let f = &raw.frame;
    let frame =
        FrameParams::new(f.alpha, f.dx, f.dy, f.fx, f.fy).map_err(|e| invariant("frame", e))?;
    let m = &raw.masses;
    let masses = MassParams::new(m.mx, m.my, m.mp).map_err(|e| invariant("masses", e))?;
    let i = &raw.impedance;
    let impedance = ImpedanceParams::new(i.m, i.b, i.k).map_err(|e| invariant("impedance", e))?;

    let tr = &raw.trajectory;
    let trajectory = match tr.kind {
        TrajectoryKind::Quintic => {
            let end = tr
                .end
                .ok_or_else(|| require("trajectory", "end", "quintic"))?;
            TrajectorySpec::quintic(tr.start.into(), end.into(), tr.duration)
        }
        TrajectoryKind::Sinusoid => {
            let amplitude = tr
                .amplitude
                .ok_or_else(|| require("trajectory", "amplitude", "sinusoid"))?;
            let frequency = tr
                .frequency
                .ok_or_else(|| require("trajectory", "frequency", "sinusoid"))?;
            TrajectorySpec::sinusoid(tr.start.into(), amplitude.into(), frequency, tr.duration)
        }
    }
    .map_err(|e| invariant("trajectory", e))?;

    let mb = &raw.membrane;
    let membrane = MembraneModel::new(mb.stiffness, mb.damping, mb.contact_x)
        .map_err(|e| invariant("membrane", e))?;

    let fed = ForcePair(Vec2::from(raw.fed));
    if !fed.0.is_finite() {
        return Err(ConfigError::Invariant("fed must be finite".into()));
    }

    let t_end = positive("run", "t_end", raw.run.t_end)?;
    let dt = positive("run", "dt", raw.run.dt)?;
    let variants = raw
        .run
        .variants
        .iter()
        .enumerate()
        .map(|(idx, name)| {
            name.parse::<ControllerVariant>()
                .map_err(|e| ConfigError::Invariant(format!("run.variants[{idx}]: {e}")))
        })
        .collect::<Result<Vec<_>, _>>()?;

    Ok(ScenarioConfig {
        scenario: Scenario {
            masses,
            frame,
            impedance,
            trajectory,
            membrane,
            fed,
            t_end,
            dt,
        },
        variants,
        seed: raw.seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"{
        "frame": { "alpha": 0.0, "dx": 0.5, "dy": 0.5, "fx": 1.0, "fy": 1.0 },
        "masses": { "mx": 1.0, "my": 1.0, "mp": 1.0 },
        "impedance": { "m": 1.0, "b": 20.0, "k": 100.0 },
        "trajectory": { "kind": "quintic", "start": [0.0, 0.0], "end": [1.0, 0.5], "duration": 2.0 },
        "membrane": { "stiffness": 0.0, "damping": 0.0, "contact_x": 10.0 },
        "fed": [0.0, 0.0],
        "run": { "t_end": 5.0, "dt": 0.001, "variants": ["StageConsistent"] },
        "seed": 42
    }"#;

    #[test]
    fn minimal_document_parses() {
        let cfg = parse_config(MINIMAL).unwrap();
        assert_eq!(cfg.variants, vec![ControllerVariant::StageConsistent]);
        assert_eq!(cfg.seed, 42);
        assert_eq!(cfg.scenario.dt, 0.001);
        assert_eq!(cfg.scenario.masses.moving_x(), 3.0);
    }

    #[test]
    fn negative_mass_names_field() {
        let text = MINIMAL.replace(r#""mx": 1.0"#, r#""mx": -1"#);
        let err = parse_config(&text).unwrap_err();
        assert!(matches!(err, ConfigError::Invariant(_)));
        assert!(
            err.to_string().starts_with("masses.mx must be > 0"),
            "{err}"
        );
    }

    #[test]
    fn unknown_key_rejected() {
        let text = MINIMAL.replace(r#""frame":"#, r#""frames":"#);
        let err = parse_config(&text).unwrap_err();
        assert!(matches!(err, ConfigError::Parse { .. }));
        assert!(err.to_string().contains("frames"), "{err}");

        let text = MINIMAL.replace(r#""mp": 1.0"#, r#""mp": 1.0, "mz": 2.0"#);
        let err = parse_config(&text).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("masses") && msg.contains("mz"), "{msg}");
    }

    #[test]
    fn other_invariants() {
        let err = parse_config(&MINIMAL.replace(r#""dt": 0.001"#, r#""dt": 0"#)).unwrap_err();
        assert!(err.to_string().starts_with("run.dt must be > 0"), "{err}");

        let err = parse_config(&MINIMAL.replace(r#""dx": 0.5"#, r#""dx": 0.0"#)).unwrap_err();
        assert!(err.to_string().starts_with("frame.dx must be > 0"), "{err}");

        let err = parse_config(&MINIMAL.replace(r#""k": 100.0"#, r#""k": -5"#)).unwrap_err();
        assert!(
            err.to_string().starts_with("impedance.k must be > 0"),
            "{err}"
        );

        let err =
            parse_config(&MINIMAL.replace(r#""duration": 2.0"#, r#""duration": 0"#)).unwrap_err();
        assert!(
            err.to_string()
                .starts_with("trajectory.duration must be > 0"),
            "{err}"
        );

        let err = parse_config(&MINIMAL.replace("StageConsistent", "Bogus")).unwrap_err();
        assert!(err.to_string().contains("run.variants[0]"), "{err}");
    }

    #[test]
    fn sinusoid_requires_its_fields() {
        let text = MINIMAL.replace(r#""kind": "quintic""#, r#""kind": "sinusoid""#);
        let err = parse_config(&text).unwrap_err();
        assert!(err.to_string().contains("trajectory.amplitude"), "{err}");

        let text = MINIMAL.replace(
            r#""kind": "quintic", "start": [0.0, 0.0], "end": [1.0, 0.5]"#,
            r#""kind": "sinusoid", "start": [0.0, 0.0], "amplitude": [0.1, 0.2], "frequency": 0.5"#,
        );
        let cfg = parse_config(&text).unwrap();
        assert!(matches!(
            cfg.scenario.trajectory,
            TrajectorySpec::Sinusoid { .. }
        ));
    }

    #[test]
    fn malformed_json_reports_position() {
        let err = parse_config("{\n  \"frame\": [").unwrap_err();
        match err {
            ConfigError::Parse { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
    }
}
