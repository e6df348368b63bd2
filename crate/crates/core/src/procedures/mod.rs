//! Constructive procedures that build spanning structures under degree
//! hypotheses.
//!
//! Each procedure evaluates its hypotheses first and reports
//! `hypotheses_met` alongside the result, so a failure outside the regime is
//! distinguishable from a failure inside it. Failures are data
//! ([`StageFailure`]), not errors.

use serde::{Deserialize, Serialize};

pub mod absorbing;
pub mod assembly;
pub mod connecting;
pub mod dirac;
pub mod extenders;
pub mod lift;
pub mod rmatching;
pub mod switching;

pub use absorbing::{
    absorb, build_absorbing_path, count_absorbers, enumerate_absorbers,
    enumerate_absorbers_avoiding, Absorber, AbsorberConfig,
};
pub use assembly::{assemble_loose_hc, assemble_loose_hc_with, AssemblyConfig, AssemblyOutcome};
pub use connecting::{
    build_reservoir, build_reservoir_with, connect_pairs, connecting_hypothesis, Reservoir,
    ReservoirConfig,
};
pub use dirac::dirac_cycle;
pub use extenders::{
    augment_step_3, perfect_matching_via_extenders, perfect_matching_via_extenders_from,
    AugmentCase, Augmentation, AugmentationState, ExtenderOutcome,
};
pub use lift::{berge_lift, LiftOutcome};
pub use rmatching::{augment_step_r, augment_step_r_report, RAugmentation, RStepReport};
pub use switching::{c43_switch_augment, c43_switch_fixpoint};

/// Where and why a procedure stopped.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageFailure {
    pub stage: String,
    pub detail: String,
}

impl StageFailure {
    pub fn new(stage: impl Into<String>, detail: impl Into<String>) -> Self {
        Self {
            stage: stage.into(),
            detail: detail.into(),
        }
    }
}

impl std::fmt::Display for StageFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.stage, self.detail)
    }
}
