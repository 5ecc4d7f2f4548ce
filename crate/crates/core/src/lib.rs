//! Numerical model of a robotic cell-injection stage.
//!
//! * [`algebra2d`] – fixed-size 2-vectors and 2×2 matrices.
//! * [`frames`] – stage, camera and image coordinate transforms.
//! * [`dynamics`] – 2-DOF stage dynamics, closed-form free response, RK4.
//! * [`control`] – impedance law and the image-based torque controller
//!   variants.
//! * [`sim`] – closed-loop scenarios and variant comparison.
//! * [`verify`] – seeded randomized property suites.
//! * [`cli`] – configuration, trace emission and command implementations.

pub mod algebra2d;
pub mod cli;
pub mod control;
pub mod dynamics;
pub mod error;
pub mod frames;
pub mod numdiff;
pub mod rng;
pub mod sim;
pub mod verify;

pub use algebra2d::{Mat2, Vec2};
pub use control::{ControllerVariant, DesiredTrajectoryPoint, ErrorState, ImpedanceParams};
pub use dynamics::{ForcePair, MassParams, StageState, Torque};
pub use error::ModelError;
pub use frames::{CameraCoord, FrameParams, ImageCoord, StageCoord};
