use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::shape::ParallelogramPolyomino;
use super::slicing::{BaxterSlicing, Block, Move, Orientation};
use crate::error::{Error, Result};
use crate::rules::{Label, RuleId};

/// `(ℓ, r)` of a horizontal block: its width, and the length of the run of
/// lower-border east steps ending below its right edge.
pub fn ell_r(slicing: &BaxterSlicing, block: &Block) -> Result<(u32, u32)> {
    if block.orientation != Orientation::H {
        return Err(Error::NotHorizontal);
    }
    if !slicing.blocks().contains(block) {
        return Err(Error::UnknownBlock);
    }
    Ok((block.width(), slicing.shape().lower_run_ending_at(block.rect[2])))
}

pub fn is_member(slicing: &BaxterSlicing, family: RuleId) -> bool {
    let shape = slicing.shape();
    match family {
        RuleId::Bax => true,
        RuleId::Cat => is_member(slicing, RuleId::RowRestricted(1)),
        RuleId::SchWest | RuleId::NewSch => is_member(slicing, RuleId::Skinny(1)),
        RuleId::Skinny(m) => {
            slicing.horizontal_blocks().all(|b| b.width() as u64 <= shape.lower_run_ending_at(b.rect[2]) as u64 + m)
        }
        RuleId::RowRestricted(m) => slicing.horizontal_blocks().all(|b| b.width() as u64 <= m),
    }
}

/// The label the family's rule assigns to a member slicing, read off the
/// geometry: the widest admissible new row, and the rightmost column height.
pub fn family_label(slicing: &BaxterSlicing, family: RuleId) -> Result<Label> {
    let (h, k) = slicing.geometric_dims();
    let (h, k) = (h as u64, k as u64);
    let width = slicing.shape().width();
    let h = match family {
        RuleId::Bax => h,
        RuleId::NewSch => h.min(slicing.shape().lower_run_ending_at(width) as u64 + 1),
        RuleId::Skinny(m) => h.min(slicing.shape().lower_run_ending_at(width) as u64 + m),
        RuleId::RowRestricted(m) => h.min(m),
        other => return Err(Error::UnsupportedFamily(other.to_string())),
    };
    Ok(Label::Binary(h, k))
}

/// Children of a member slicing in the production order of the family's
/// rule: new rows of width 1..h, then new columns of height 1..k.
pub fn children(slicing: &BaxterSlicing, family: RuleId) -> Result<Vec<BaxterSlicing>> {
    family.validate()?;
    let Label::Binary(h, k) = family_label(slicing, family)? else { unreachable!() };
    if !is_member(slicing, family) {
        return Err(Error::NotInFamily(family.to_string()));
    }
    let rows = (1..=h as u32).map(Move::Row);
    let cols = (1..=k as u32).map(Move::Col);
    Ok(rows.chain(cols).map(|mv| slicing.with_move(mv).expect("move within geometric bounds")).collect())
}

/// The unique slicing of `shape` whose horizontal blocks all have width 1.
pub fn catalan_slicing(shape: &ParallelogramPolyomino) -> BaxterSlicing {
    let mut moves = Vec::with_capacity(shape.size() as usize - 1);
    let mut p = shape.clone();
    while p.size() > 1 {
        if p.top_row_width() == 1 {
            moves.push(Move::Row(1));
            p = p.without_top_row().expect("a one-cell top row sits on a taller column");
        } else {
            moves.push(Move::Col(p.right_column_height()));
            p = p.without_right_column().expect("top row has at least two cells");
        }
    }
    moves.reverse();
    BaxterSlicing::from_moves(&moves).expect("peeled moves replay")
}

/// Number of Baxter slicings with the given shape.
pub fn count_slicings_of_shape(shape: &ParallelogramPolyomino) -> BigUint {
    fn go(p: &ParallelogramPolyomino, memo: &mut HashMap<ParallelogramPolyomino, BigUint>) -> BigUint {
        if p.size() == 1 {
            return BigUint::one();
        }
        if let Some(c) = memo.get(p) {
            return c.clone();
        }
        let mut total = BigUint::zero();
        if let Some(q) = p.without_top_row() {
            total += go(&q, memo);
        }
        if let Some(q) = p.without_right_column() {
            total += go(&q, memo);
        }
        memo.insert(p.clone(), total.clone());
        total
    }
    go(shape, &mut HashMap::new())
}
