//! Exact thresholds on small vertex sets and tightness checks of the
//! degree conditions against the extremal constructions.

pub mod enumerate;
pub mod threshold;
pub mod tightness;

pub use enumerate::{canonical_form, enumerate_hypergraphs, isomorphism_classes, EnumerationSummary, Mode};
pub use threshold::{exact_threshold, Method, ThresholdConfig, ThresholdReport, Witness};
pub use tightness::{tightness_report, TheoremId, TightnessConfig, TightnessReport, TightnessRow};
