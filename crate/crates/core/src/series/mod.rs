//! Exact power series, the functional-equation solvers and the kernel
//! computations for row-restricted slicings.

mod algebraic;
mod kernel;
mod poly2;
mod solve;
mod truncated;
mod vpoly;

pub use algebraic::*;
pub use kernel::*;
pub use poly2::{Poly2, Var};
pub use solve::{rr_components, solve_system, SystemId};
pub use truncated::TruncatedSeries;
pub use vpoly::VPoly;
