//! Parallelogram polyominoes and their Baxter slicings.

mod family;
mod shape;
mod slicing;

pub use family::{catalan_slicing, children, count_slicings_of_shape, ell_r, family_label, is_member};
pub use shape::ParallelogramPolyomino;
pub use slicing::{BaxterSlicing, Block, Move, Orientation};
