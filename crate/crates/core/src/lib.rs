//! Exact enumeration of generating trees and the combinatorial families that
//! grow along them: parallelogram polyominoes, Baxter / Schröder / Catalan
//! slicings, triples of non-intersecting lattice paths, pattern-avoiding
//! permutations and packed floorplans.
//!
//! The [`series`] module solves the functional equations of the skinny and
//! row-restricted slicing families order by order and checks the algebraic
//! identities and kernel determinants associated with them. Everything is
//! exact: big integers for counts, big rationals for series.

pub mod enumerate;
pub mod error;
pub mod floorplan;
pub mod nilp;
pub mod perm;
pub mod polyomino;
pub mod rules;
pub mod series;
pub mod verify;

pub use error::{Error, Result};
pub use rules::{Label, RuleId, SuccessionRule};
