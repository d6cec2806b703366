//! Local hitting-time and effective-resistance estimators.
//!
//! - [`meeting_time_estimate`]: pairs of walks from `u` and `v` annihilate
//!   when they meet; visits of `v` before annihilation are counted.
//! - [`cutoff_estimate`]: a truncated spectral series whose terms are
//!   estimated from fixed-length walks started at `v`.
//! - [`walk_sampling_estimate`]: the plain average of capped first-passage
//!   times.

mod cutoff;
mod meeting;
mod sampling;

use std::time::Duration;

use serde::{Deserialize, Serialize};

pub use cutoff::{cutoff_estimate, cutoff_levels, cutoff_walks_per_level, CutoffOptions, CutoffScaling};
pub use meeting::{
    effective_resistance_meeting, meeting_time_estimate, meeting_time_trace, theoretical_params,
    MeetingStep, ResistanceEstimate, TheoreticalParams,
};
pub use sampling::walk_sampling_estimate;

use crate::error::{Error, Result};

/// Ensemble size used when no override is given.
pub const DEFAULT_WALKS: usize = 10_000;

/// Knobs shared by the estimators. `walks` and `t_max` override the
/// theoretical values, which are astronomically large in practice.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EstimatorParams {
    pub epsilon: f64,
    pub t_mix: Option<usize>,
    pub lambda: Option<f64>,
    pub walks: Option<usize>,
    pub t_max: Option<usize>,
    pub seed: u64,
}

impl Default for EstimatorParams {
    fn default() -> Self {
        Self {
            epsilon: 0.1,
            t_mix: None,
            lambda: None,
            walks: None,
            t_max: None,
            seed: 0,
        }
    }
}

impl EstimatorParams {
    pub fn practical(walks: usize, t_max: usize, seed: u64) -> Self {
        Self {
            walks: Some(walks),
            t_max: Some(t_max),
            seed,
            ..Self::default()
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub(crate) fn validate(&self) -> Result<()> {
        if !(self.epsilon > 0.0 && self.epsilon.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "epsilon must be positive, got {}",
                self.epsilon
            )));
        }
        if self.walks == Some(0) {
            return Err(Error::InvalidParameter("walks must be at least 1".into()));
        }
        if self.t_max == Some(0) {
            return Err(Error::InvalidParameter("t_max must be at least 1".into()));
        }
        if self.t_mix == Some(0) {
            return Err(Error::InvalidParameter("t_mix must be at least 1".into()));
        }
        if let Some(l) = self.lambda {
            if !(0.0..1.0).contains(&l) {
                return Err(Error::InvalidParameter(format!("lambda must lie in [0, 1), got {l}")));
            }
        }
        Ok(())
    }
}

/// Which estimator produced an [`HtEstimate`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    Meeting,
    Cutoff,
    Sampling,
}

impl Algorithm {
    pub const ALL: [Algorithm; 3] = [Algorithm::Meeting, Algorithm::Cutoff, Algorithm::Sampling];

    pub fn as_str(self) -> &'static str {
        match self {
            Algorithm::Meeting => "meeting",
            Algorithm::Cutoff => "cutoff",
            Algorithm::Sampling => "sampling",
        }
    }
}

impl std::fmt::Display for Algorithm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.as_str() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown algorithm {s:?}")))
    }
}

/// Estimator-specific diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub enum Diagnostics {
    Meeting {
        t_max: usize,
        /// Last step processed before both ensembles emptied (or `t_max`).
        last_step: usize,
        /// Walkers of the `u` ensemble alive at the end.
        survivors: usize,
        theoretical: Option<TheoreticalParams>,
    },
    Cutoff {
        levels: usize,
        walks_per_level: u64,
        /// `r` from the formula, before any override or cap.
        theoretical_walks: f64,
        per_level: Vec<f64>,
    },
    Sampling {
        cap: u64,
        truncated: u64,
        /// Sample variance of the individual (capped) hitting times.
        sample_variance: f64,
    },
    None,
}

/// Output of an estimator call.
#[derive(Debug, Clone, PartialEq)]
pub struct HtEstimate {
    /// `None` exactly when `failed`.
    pub value: Option<f64>,
    pub failed: bool,
    pub walks_used: u64,
    pub total_steps: u64,
    pub wall_time: Duration,
    pub diagnostics: Diagnostics,
}

impl HtEstimate {
    pub(crate) fn zero() -> Self {
        Self {
            value: Some(0.0),
            failed: false,
            walks_used: 0,
            total_steps: 0,
            wall_time: Duration::ZERO,
            diagnostics: Diagnostics::None,
        }
    }
}
