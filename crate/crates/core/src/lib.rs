//! Recovery of sparse weighted point-mass signals in ℝⁿ, up to an orthogonal
//! transformation, from their second moment over O(n).
//!
//! A signal `x = Σ w_i δ_{t_i}` is encoded by the multiset of pair-orbit
//! triples `(‖t_i‖², ‖t_j‖², t_i·t_j)` together with the weight products
//! `w_i w_j`. For collision-free supports this encoding is exactly the
//! information carried by the second moment, and [`recovery`] inverts it:
//! uniquely when the magnitudes are distinct or the weight products are
//! distinct, and by exhaustive Gram-matrix enumeration otherwise.

pub mod cli;
pub mod demo;
pub mod error;
pub mod experiment;
pub mod invariants;
pub mod io;
pub mod recovery;
pub mod sampling;
pub mod signal;
pub mod tolerance;
pub mod turnpike;

pub use error::{BeltwayError, Result};
pub use invariants::{
    is_collision_free, is_radially_collision_free, magnitude_partition, pair_orbit_triple,
    second_moment_invariants, InvariantEntry, InvariantSet, MagnitudePartition, OrbitTriple,
};
pub use recovery::{
    enumerate_orbits, orbit_count_bound, recover_distinct_weight_products, recover_unique,
    weight_products_distinct, EnumerationOptions, RecoveryResult,
};
pub use signal::{
    gram_matrix, homometric_partner, orbit_equivalent, psd_factor, reduce_to_triangular,
    GramMatrix, Point, SparseSignal,
};
pub use tolerance::Tolerances;
