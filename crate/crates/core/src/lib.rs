//! Finite Boolean inverse monoids, their germ groupoids, and the bisection
//! monoids that recover them.
//!
//! The pipeline is: a [`FiniteInverseMonoid`] (abstract table or partial
//! bijections), its idempotent [`BooleanAlgebraView`] with characters given by
//! atoms, the germ groupoid [`GermGroupoid`], and the monoid of bisections
//! [`BisectionMonoid`]. Every construction is exhaustive and deterministic;
//! the `verify_*` functions return [`Report`]s with first-counterexample
//! witnesses.

pub mod bisection;
pub mod coarse;
pub mod config;
mod error;
pub mod germ;
pub mod groupoid;
pub mod io;
pub mod lemmas;
pub mod monoid;
pub mod partial;
pub mod report;
pub mod stone;
pub mod suite;
pub mod symmetric;
pub mod verify;

pub use bisection::{
    all_bisections, basic_bisection, epsilon, is_bisection, Bisection, BisectionMonoid,
};
pub use coarse::{
    coarse_groupoid, partial_translations, verify_translation_idempotents, CoarseSpace,
};
pub use config::Caps;
pub use error::{Error, Result};
pub use germ::{alpha, build_germ_groupoid, char_support, germ_equivalent, Germ, GermGroupoid};
pub use groupoid::{groupoid_isomorphic, FiniteGroupoid};
pub use lemmas::{
    verify_ample_structure, verify_epsilon_isomorphism, verify_germ_coherence,
    verify_intersection_lemma,
};
pub use monoid::FiniteInverseMonoid;
pub use partial::{PartialBijection, PointSet};
pub use report::{Check, Report};
pub use stone::{BooleanAlgebraView, Character};
pub use symmetric::{symmetric_inverse_monoid, PartialBijectionMonoid};
pub use verify::verify_boolean_inverse_monoid;
