//! Twist, loop complementation and dual-twist on set systems over `[n]`, the
//! action of flip vectors and permutations on them, orbit and stabilizer
//! search, tight 3-matroid lifts of vf-safe delta-matroids, and ribbon graphs
//! with their medial graphs.

pub mod error;
pub mod group;
pub mod multimatroid;
pub mod orbit;
pub mod ribbon;
pub mod set_system;

pub use error::{Error, Result};
pub use group::{reduce_word, Flip, FlipVector, Perm, TwualityElement};
pub use set_system::{DeltaMatroidWitness, ElementSet, RibbonLoopClass, SetSystem};
pub use multimatroid::{
    extract, lift, lift_unchecked, orbit_via_lift, Multimatroid, Projection, SubTransversal,
    TransversalTriple,
};
pub use orbit::{
    cycle_condition, normalize_rep, orbit, stabilizer_search, transport, uniformize, OrbitMode,
    OrbitReport, StabilizerMode,
};
pub use ribbon::{delta_matroid_of, medial, verify_transition_lift, RibbonGraph};
pub use set_system::MAX_GROUND;
