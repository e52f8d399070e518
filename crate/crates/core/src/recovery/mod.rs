//! Inverting the second moment: from an [`InvariantSet`] back to the
//! O(n)-orbits of δ-functions that produce it.
//!
//! [`InvariantSet`]: crate::invariants::InvariantSet

mod bound;
mod distinct;
mod enumerate;
mod layout;
mod unique;

pub use bound::{orbit_count_bound, orbit_count_bound_for};
pub use distinct::{recover_distinct_weight_products, weight_products_distinct};
pub use enumerate::{enumerate_orbits, enumerate_orbits_with, EnumerationOptions, RecoveryResult};
pub use unique::recover_unique;

use crate::signal::SparseSignal;

/// Some recovered weight is negative. The second moment never distinguishes
/// x from −x; an all-positive representative is the one a positivity prior
/// would pick, so the ambiguity only matters once a weight is negative.
pub fn is_sign_ambiguous(signal: &SparseSignal) -> bool {
    signal.weights().iter().any(|&w| w < 0.0)
}
