//! Numerical defaults. Every tunable threshold lives here so that reports can
//! print the exact configuration they were produced with.

use serde::{Deserialize, Serialize};

/// Tolerances and hard limits for series and quadrature.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Budget {
    pub series_tol: f64,
    pub quad_tol: f64,
    pub max_terms: usize,
    pub quad_max_depth: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            series_tol: 1e-15,
            quad_tol: 1e-12,
            max_terms: 400_000,
            quad_max_depth: 48,
        }
    }
}

impl Budget {
    pub fn with_series_tol(mut self, tol: f64) -> Self {
        self.series_tol = tol;
        self
    }

    pub fn with_quad_tol(mut self, tol: f64) -> Self {
        self.quad_tol = tol;
        self
    }
}

/// Parameters of the instanton sums.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct InstantonParams {
    /// Overall scale of the central charge inside the instanton sums.
    pub scale_r: f64,
    /// Lattice cut; `None` picks the smallest cut with 2π(N − |t| − 1) > 46.
    pub n_max: Option<i64>,
    /// Fourier cut; `None` adapts to each |t − n|.
    pub m_max: Option<usize>,
    /// |N| below this raises a degeneracy error.
    pub degeneracy_tol: f64,
}

impl Default for InstantonParams {
    fn default() -> Self {
        InstantonParams {
            scale_r: 1.0,
            n_max: None,
            m_max: None,
            degeneracy_tol: 1e-10,
        }
    }
}

/// Geometric thresholds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Thresholds {
    pub wall_tol: f64,
    pub ray_angle_tol: f64,
    pub jump_guard: f64,
}

impl Default for Thresholds {
    fn default() -> Self {
        Thresholds {
            wall_tol: 1e-12,
            ray_angle_tol: 1e-12,
            jump_guard: 1e-6,
        }
    }
}

pub const WALL_TOL: f64 = 1e-12;
pub const RAY_ANGLE_TOL: f64 = 1e-12;
