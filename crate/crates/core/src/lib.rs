//! Local-unitary invariants of two-qubit mixed states in the Bloch-matrix
//! model.
//!
//! The crate covers the state model ([`states`]), the local-unitary and
//! finite Weyl groups ([`groups`]), polynomial and rational invariants
//! ([`invariants`]), canonical forms with equivalence witnesses ([`orbit`]),
//! the JSON state schema ([`io`]) and a seeded verification battery
//! ([`verify`]).

pub mod error;
pub mod linalg;

pub use error::{Error, Result};
pub mod groups;
pub mod states;
pub mod invariants;
pub mod orbit;
pub mod io;
pub mod verify;
