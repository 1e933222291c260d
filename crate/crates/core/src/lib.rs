//! Finite digital topological groups: digital images in `Z^n` whose points
//! carry a group structure with continuous multiplication and inversion.
//!
//! Every constructor verifies its output, and every theorem-level statement
//! the library relies on is re-checked at run time. A failed check surfaces
//! as [`Error::TheoremFalsified`] rather than a silently wrong answer.

pub mod construct;
pub mod dtg;
pub mod enumerate;
pub mod error;
pub mod graph;
pub mod groups;
pub mod io;
pub mod lattice;
pub mod morphisms;

#[cfg(test)]
mod testutil;

pub use construct::{fixture, Ambient, Fixture, FIXTURE_NAMES};
pub use dtg::{verify_dtg, ContinuityReport, Dtg, Violation};
pub use error::{Error, Result};
pub use graph::{AsGraph, Permutation, SearchLimits, SimpleGraph};
pub use groups::{FiniteGroup, Subgroup};
pub use lattice::{Adjacency, DigitalImage, NpLevel, Point};
pub use morphisms::DtgHom;
