//! Fiber products of branched covers of Riemann surfaces, computed in the
//! permutation (monodromy) model.
//!
//! A branched cover of a closed surface is represented by its monodromy data:
//! one permutation per branch value plus handle generator pairs for
//! positive-genus bases, with the surface-group relation holding.  The fiber
//! product of two covers over a common base is decomposed into irreducible
//! components as orbits of the paired monodromy action; per-component genera,
//! the singular-point/cone catalog, irreducibility criteria, the component
//! count bound, dessin d'enfants, and Jacobian dimension bookkeeping are all
//! derived from that combinatorial picture.  A numerical-monodromy layer turns
//! explicit rational self-maps of the sphere into validated covers.
//!
//! # Composition convention
//!
//! Products of permutations apply the **left factor first** throughout the
//! crate: `(p * q)(x) = q(p(x))`, written [`Permutation::then`].  The
//! surface-group relation, commutators, conjugation and monodromy loop
//! composition all use this order.

pub mod cover;
pub mod dessin;
pub mod fiber;
pub mod gauss;
pub mod label;
pub mod mononum;
pub mod perm;
pub mod sample;

pub use cover::{BranchPoint, BranchedCover, CoverError, CoverViolation};
pub use dessin::{Dessin, DessinError, Teo2Report, Valence};
pub use fiber::{
    CriteriaReport, FiberComponent, FiberDecomposition, FiberError, IsomorphismReport,
    JacobianHypothesis, JacobianOutcome, JacobianReport, SingularPoint,
};
pub use gauss::GaussianRational;
pub use label::BranchLabel;
pub use mononum::{
    CriticalValue, MapError, MonodromyError, RationalMap, TrackerConfig, ValuePosition,
};
pub use perm::{
    orbits, simultaneous_conjugator, CycleType, GroupOrder, PermError, Permutation,
};
