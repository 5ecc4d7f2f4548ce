//! Stage, camera and image coordinate frames.
//!
//! The stage frame is attached to the positioning table, the camera frame is
//! rotated by `alpha` and offset by `(dx, dy)` from it, and image pixels are
//! camera lengths scaled by the display resolutions `(fx, fy)`.
//!
//! The rotation matrix is `[[cos α, sin α], [-sin α, cos α]]`, the transpose
//! of the usual counter-clockwise convention. It is used verbatim.

use serde::{Deserialize, Serialize};

use crate::algebra2d::{mat_inv, Mat2, Vec2};
use crate::error::{require_finite, require_positive, Result};

/// Calibration of the camera relative to the stage.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FrameParams {
    alpha: f64,
    dx: f64,
    dy: f64,
    fx: f64,
    fy: f64,
}

impl FrameParams {
    /// Requires finite `alpha` and strictly positive offsets and resolutions.
    pub fn new(alpha: f64, dx: f64, dy: f64, fx: f64, fy: f64) -> Result<Self> {
        Ok(Self {
            alpha: require_finite("alpha", alpha)?,
            dx: require_positive("dx", dx)?,
            dy: require_positive("dy", dy)?,
            fx: require_positive("fx", fx)?,
            fy: require_positive("fy", fy)?,
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }
    pub fn dx(&self) -> f64 {
        self.dx
    }
    pub fn dy(&self) -> f64 {
        self.dy
    }
    pub fn fx(&self) -> f64 {
        self.fx
    }
    pub fn fy(&self) -> f64 {
        self.fy
    }

    pub fn displacement(&self) -> Vec2 {
        Vec2::new(self.dx, self.dy)
    }

    /// Offset of the stage origin in image coordinates, `(fx·dx, fy·dy)`.
    pub fn image_offset(&self) -> Vec2 {
        Vec2::new(self.fx * self.dx, self.fy * self.dy)
    }

    pub fn display_resolution(&self) -> Mat2 {
        display_resolution_matrix(self.fx, self.fy)
    }
}

macro_rules! frame_coord {
    ($(#[$doc:meta])* $name:ident) => {
        $(#[$doc])*
        #[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
        pub struct $name(pub Vec2);

        impl $name {
            pub const fn new(a0: f64, a1: f64) -> Self {
                Self(Vec2::new(a0, a1))
            }

            pub fn vec(self) -> Vec2 {
                self.0
            }
        }
    };
}

frame_coord!(
    /// Point in the stage frame `(x, y)`, length units.
    StageCoord
);
frame_coord!(
    /// Point in the camera frame `(xc, yc)`, length units.
    CameraCoord
);
frame_coord!(
    /// Point in the image frame `(u, v)`, pixels.
    ImageCoord
);

pub fn rotation_matrix(alpha: f64) -> Mat2 {
    let (s, c) = alpha.sin_cos();
    Mat2::new(c, s, -s, c)
}

pub fn display_resolution_matrix(fx: f64, fy: f64) -> Mat2 {
    Mat2::diag(fx, fy)
}

/// `T = diag(fx, fy) · R(α)`, written out entrywise.
pub fn transformation_matrix(p: &FrameParams) -> Mat2 {
    let (s, c) = p.alpha.sin_cos();
    Mat2::new(p.fx * c, p.fx * s, -p.fy * s, p.fy * c)
}

pub fn stage_to_camera(p: &FrameParams, s: StageCoord) -> CameraCoord {
    CameraCoord(rotation_matrix(p.alpha) * s.0 + p.displacement())
}

pub fn camera_to_image(p: &FrameParams, c: CameraCoord) -> ImageCoord {
    ImageCoord::new(p.fx * c.0.a0, p.fy * c.0.a1)
}

/// One-step stage → image map `T·s + (fx·dx, fy·dy)`.
pub fn stage_to_image(p: &FrameParams, s: StageCoord) -> ImageCoord {
    ImageCoord(transformation_matrix(p) * s.0 + p.image_offset())
}

/// Inverse of [`stage_to_image`].
pub fn image_to_stage(p: &FrameParams, u: ImageCoord) -> Result<StageCoord> {
    let t_inv = mat_inv(transformation_matrix(p))?;
    Ok(StageCoord(t_inv * (u.0 - p.image_offset())))
}
