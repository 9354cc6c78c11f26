//! Exact-arithmetic Lie theory over small prime fields.
//!
//! `liecheck` builds the Lie algebra of a simple algebraic group from its
//! root system, in a Chevalley basis with structure constants fixed by the
//! extraspecial-pair convention, and then verifies a battery of identities
//! about long-root elements, invariant forms, cocharacter gradings and
//! reduced enveloping algebra modules.  Everything is computed exactly over
//! F_p; there are no floating-point tolerances anywhere.
//!
//! The crate is organised bottom-up:
//!
//! * [`fp`] — prime fields and exact dense linear algebra,
//! * [`roots`] — root systems of types A–G in integer ε-coordinates,
//! * [`algebra`] — Chevalley bases, brackets, root-group automorphisms and
//!   the restricted p-th power map,
//! * [`forms`] — the normalized invariant form and functional machinery,
//! * [`cone`] — the cone of long-root elements as an explicit point set,
//! * [`grading`] — cocharacter gradings, support clearing and scaled limits,
//! * [`rep`] — baby Verma modules over reduced enveloping algebras and the
//!   freeness/support tests built on them,
//! * [`scenario`] — the named check suites exposed by the `liecheck` binary.

pub mod algebra;
pub mod cone;
pub mod error;
pub mod forms;
pub mod fp;
pub mod grading;
pub mod rep;
pub mod report;
pub mod roots;
pub mod scenario;

pub use error::LieError;

/// Result alias used throughout the crate.
pub type Result<T> = std::result::Result<T, LieError>;
