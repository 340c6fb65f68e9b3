//! Weyl groups of finite-type semisimple Lie algebras realized on the integral
//! points of two ellipsoids.
//!
//! For a Cartan matrix `A` with invariant form `⟨·,·⟩` and `δ` the half-sum
//! of positive roots, the *primary ellipsoid* is `⟨x, x − 2δ⟩ = 0` and the
//! *secondary ellipsoid* is its image under `x ↦ 1̃ − A·x`. The Weyl group acts
//! on the integral points of both; the orbit of the origin is a copy of the
//! group, ordered componentwise, from which the Bruhat order and all reduced
//! expressions are recovered.

pub mod cartan;
pub mod diophantine;
pub mod ellipsoid;
pub mod error;
pub mod linalg;
pub mod order;
pub mod verify;
pub mod weyl;

pub use cartan::{build_cartan, parse_type, CartanData, Family, LieTypeSpec, Root};
pub use diophantine::{
    enumerate_secondary_nonneg, expand_orbit, orbit_seeds, orbit_size, OrbitRecord,
    DEFAULT_EXPAND_CAP,
};
pub use ellipsoid::{apply_t, h_vector, primary_form, secondary_form, QuadForm};
pub use error::{Error, Result};
pub use order::{Poset, PosetKind, ReducedWordSet};
pub use weyl::{
    build_group_table, coxeter_length, p_map, s_map, GroupTable, WeylElement, DEFAULT_GROUP_CAP,
};
