use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::shape::ParallelogramPolyomino;
use crate::error::{Error, Result};
use crate::rules::Label;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Orientation {
    H,
    V,
}

/// A horizontal (height 1) or vertical (width 1) block, as the half-open
/// cell rectangle `[x1, x2) x [y1, y2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Block {
    #[serde(rename = "o")]
    pub orientation: Orientation,
    pub rect: [u32; 4],
}

impl Block {
    pub fn new(orientation: Orientation, rect: [u32; 4]) -> Result<Self> {
        let [x1, y1, x2, y2] = rect;
        if x2 <= x1 || y2 <= y1 {
            return Err(Error::MalformedSlicing(format!("empty block {rect:?}")));
        }
        let ok = match orientation {
            Orientation::H => y2 == y1 + 1,
            Orientation::V => x2 == x1 + 1,
        };
        if !ok {
            return Err(Error::MalformedSlicing(format!(
                "{orientation:?} block {rect:?} is neither a row nor a column"
            )));
        }
        Ok(Block { orientation, rect })
    }

    pub fn width(&self) -> u32 {
        self.rect[2] - self.rect[0]
    }

    pub fn height(&self) -> u32 {
        self.rect[3] - self.rect[1]
    }

    pub fn cells(&self) -> impl Iterator<Item = (u32, u32)> {
        let [x1, y1, x2, y2] = self.rect;
        (x1..x2).flat_map(move |x| (y1..y2).map(move |y| (x, y)))
    }
}

/// One growth step: a new topmost row of the given width, or a new
/// rightmost column of the given height.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Move {
    Row(u32),
    Col(u32),
}

/// A parallelogram polyomino together with its building history.
///
/// The move sequence is the identity of the object; the shape and the
/// block list (most recently added first) are derived from it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BaxterSlicing {
    shape: ParallelogramPolyomino,
    blocks: Vec<Block>,
    moves: Vec<Move>,
}

impl BaxterSlicing {
    pub fn unit() -> Self {
        BaxterSlicing {
            shape: ParallelogramPolyomino::unit(),
            blocks: vec![Block { orientation: Orientation::H, rect: [0, 0, 1, 1] }],
            moves: Vec::new(),
        }
    }

    pub fn from_moves(moves: &[Move]) -> Result<Self> {
        let mut s = Self::unit();
        for (i, &mv) in moves.iter().enumerate() {
            s = s.with_move(mv).ok_or(Error::IllegalMove(i))?;
        }
        Ok(s)
    }

    /// The slicing grown by one move, or `None` when the move exceeds the
    /// current topmost-row width / rightmost-column height.
    pub fn with_move(&self, mv: Move) -> Option<Self> {
        let (h, k) = self.geometric_dims();
        let mut shape = self.shape.clone();
        let block = match mv {
            Move::Row(w) if (1..=h).contains(&w) => {
                let (width, height) = (shape.width(), shape.height());
                shape.push_row(w);
                Block { orientation: Orientation::H, rect: [width - w, height, width, height + 1] }
            }
            Move::Col(c) if (1..=k).contains(&c) => {
                let (width, height) = (shape.width(), shape.height());
                shape.push_column(c);
                Block { orientation: Orientation::V, rect: [width, height - c, width + 1, height] }
            }
            _ => return None,
        };
        let mut blocks = Vec::with_capacity(self.blocks.len() + 1);
        blocks.push(block);
        blocks.extend_from_slice(&self.blocks);
        let mut moves = self.moves.clone();
        moves.push(mv);
        Some(BaxterSlicing { shape, blocks, moves })
    }

    /// Rebuilds a slicing from its blocks alone, in any order.
    pub fn from_blocks(blocks: &[Block]) -> Result<Self> {
        let moves = peel(blocks)?;
        Self::from_moves(&moves)
    }

    pub fn shape(&self) -> &ParallelogramPolyomino {
        &self.shape
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn moves(&self) -> &[Move] {
        &self.moves
    }

    pub fn size(&self) -> u32 {
        self.shape.size()
    }

    /// Recovers the building history by peeling the blocks geometrically.
    pub fn to_moves(&self) -> Result<Vec<Move>> {
        peel(&self.blocks)
    }

    /// `(width of topmost row, height of rightmost column)`.
    pub fn geometric_dims(&self) -> (u32, u32) {
        (self.shape.top_row_width(), self.shape.right_column_height())
    }

    /// The Bax-rule label of the slicing.
    pub fn label(&self) -> Label {
        let (h, k) = self.geometric_dims();
        Label::Binary(h as u64, k as u64)
    }

    pub fn horizontal_blocks(&self) -> impl Iterator<Item = &Block> {
        self.blocks.iter().filter(|b| b.orientation == Orientation::H)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&SlicingJson { moves: self.moves.clone(), blocks: self.blocks.clone() }).unwrap()
    }

    /// Parses the JSON form; the block list must describe the same slicing as the moves.
    pub fn from_json(s: &str) -> Result<Self> {
        let raw: SlicingJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        let slicing = Self::from_moves(&raw.moves)?;
        let given: HashSet<Block> = raw.blocks.iter().copied().collect();
        let ours: HashSet<Block> = slicing.blocks.iter().copied().collect();
        if given != ours || raw.blocks.len() != slicing.blocks.len() {
            return Err(Error::MalformedSlicing("blocks disagree with moves".into()));
        }
        Ok(slicing)
    }
}

#[derive(Serialize, Deserialize)]
struct SlicingJson {
    moves: Vec<Move>,
    blocks: Vec<Block>,
}

/// Peels a block set: each step removes the unique block that is the whole
/// topmost row (horizontal) or the whole rightmost column (vertical).
fn peel(blocks: &[Block]) -> Result<Vec<Move>> {
    let malformed = |m: &str| Error::MalformedSlicing(m.to_string());
    for b in blocks {
        Block::new(b.orientation, b.rect)?;
    }
    let mut cells = HashSet::new();
    for b in blocks {
        for c in b.cells() {
            if !cells.insert(c) {
                return Err(malformed("blocks overlap"));
            }
        }
    }
    let mut shape = shape_of(&cells).ok_or_else(|| malformed("cells do not form a parallelogram polyomino"))?;
    if shape.size() as usize != blocks.len() {
        return Err(malformed("number of blocks differs from the size"));
    }
    let mut remaining: Vec<Block> = blocks.to_vec();
    let mut moves = Vec::with_capacity(blocks.len());
    while remaining.len() > 1 {
        let (w, h) = (shape.width(), shape.height());
        let top = [w - shape.top_row_width(), h - 1, w, h];
        let right = [w - 1, h - shape.right_column_height(), w, h];
        let candidates: Vec<usize> = remaining
            .iter()
            .enumerate()
            .filter(|(_, b)| match b.orientation {
                Orientation::H => b.rect == top && shape.right_column_height() >= 2,
                Orientation::V => b.rect == right && shape.top_row_width() >= 2,
            })
            .map(|(i, _)| i)
            .collect();
        let [idx] = candidates[..] else {
            return Err(malformed("no block is the topmost row or rightmost column"));
        };
        let b = remaining.swap_remove(idx);
        match b.orientation {
            Orientation::H => {
                moves.push(Move::Row(b.width()));
                shape = shape.without_top_row().expect("checked above");
            }
            Orientation::V => {
                moves.push(Move::Col(b.height()));
                shape = shape.without_right_column().expect("checked above");
            }
        }
    }
    match remaining.first() {
        Some(b) if b.rect == [0, 0, 1, 1] => {}
        _ => return Err(malformed("last block must be the unit cell at the origin")),
    }
    moves.reverse();
    Ok(moves)
}

fn shape_of(cells: &HashSet<(u32, u32)>) -> Option<ParallelogramPolyomino> {
    let width = cells.iter().map(|c| c.0).max()? + 1;
    let mut columns = Vec::with_capacity(width as usize);
    for x in 0..width {
        let ys: Vec<u32> = cells.iter().filter(|c| c.0 == x).map(|c| c.1).collect();
        let (&lo, &hi) = (ys.iter().min()?, ys.iter().max()?);
        if (hi - lo + 1) as usize != ys.len() {
            return None;
        }
        columns.push((lo, hi + 1));
    }
    ParallelogramPolyomino::new(columns).ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_slicing() {
        let s = BaxterSlicing::from_moves(&[]).unwrap();
        assert_eq!(s.size(), 1);
        assert_eq!(s.label(), Label::Binary(1, 1));
        assert!(s.to_moves().unwrap().is_empty());
    }

    #[test]
    fn replay_col_then_row() {
        let s = BaxterSlicing::from_moves(&[Move::Col(1), Move::Row(2)]).unwrap();
        assert_eq!(s.size(), 3);
        assert_eq!(s.shape().columns(), &[(0, 2), (0, 2)]);
        assert_eq!(s.blocks()[0], Block { orientation: Orientation::H, rect: [0, 1, 2, 2] });
        assert_eq!(s.blocks()[1], Block { orientation: Orientation::V, rect: [1, 0, 2, 1] });
        assert_eq!(s.label(), Label::Binary(2, 2));
    }

    #[test]
    fn illegal_moves() {
        assert_eq!(BaxterSlicing::from_moves(&[Move::Row(5)]), Err(Error::IllegalMove(0)));
        assert_eq!(BaxterSlicing::from_moves(&[Move::Row(1), Move::Col(3)]), Err(Error::IllegalMove(1)));
        assert_eq!(BaxterSlicing::from_moves(&[Move::Col(0)]), Err(Error::IllegalMove(0)));
    }

    #[test]
    fn interior_square_block_is_malformed() {
        let blocks = [
            Block { orientation: Orientation::H, rect: [0, 0, 2, 2] },
            Block { orientation: Orientation::V, rect: [2, 0, 3, 2] },
        ];
        assert!(matches!(BaxterSlicing::from_blocks(&blocks), Err(Error::MalformedSlicing(_))));
    }

    #[test]
    fn wrong_orientation_does_not_peel() {
        // the top cell of a 2-cell column labeled as a vertical block
        let blocks = [
            Block { orientation: Orientation::V, rect: [0, 1, 1, 2] },
            Block { orientation: Orientation::H, rect: [0, 0, 1, 1] },
        ];
        assert!(BaxterSlicing::from_blocks(&blocks).is_err());
    }

    #[test]
    fn json_round_trip() {
        let s = BaxterSlicing::from_moves(&[Move::Col(1), Move::Row(2), Move::Col(2)]).unwrap();
        let js = s.to_json();
        assert!(js.starts_with(r#"{"moves":[{"col":1},{"row":2},{"col":2}],"blocks":[{"o":"V","rect":[2,0,3,2]}"#));
        assert_eq!(BaxterSlicing::from_json(&js).unwrap(), s);
        assert!(BaxterSlicing::from_json(r#"{"moves":[{"col":1}],"blocks":[]}"#).is_err());
    }
}
