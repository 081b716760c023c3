use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A parallelogram polyomino stored column by column as half-open cell
/// intervals `[bottom, top)`, with the bottom-left corner at the origin.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawShape", into = "RawShape")]
pub struct ParallelogramPolyomino {
    columns: Vec<(u32, u32)>,
}

#[derive(Serialize, Deserialize)]
struct RawShape {
    columns: Vec<[u32; 2]>,
}

impl TryFrom<RawShape> for ParallelogramPolyomino {
    type Error = Error;
    fn try_from(raw: RawShape) -> Result<Self> {
        Self::new(raw.columns.into_iter().map(|[b, t]| (b, t)).collect())
    }
}

impl From<ParallelogramPolyomino> for RawShape {
    fn from(p: ParallelogramPolyomino) -> Self {
        RawShape { columns: p.columns.into_iter().map(|(b, t)| [b, t]).collect() }
    }
}

impl ParallelogramPolyomino {
    pub fn new(columns: Vec<(u32, u32)>) -> Result<Self> {
        let bad = |msg: &str| Err(Error::InvalidShape(msg.to_string()));
        if columns.is_empty() {
            return bad("no columns");
        }
        if columns[0].0 != 0 {
            return bad("first column must start at 0");
        }
        for (i, &(b, t)) in columns.iter().enumerate() {
            if b >= t {
                return bad("empty column");
            }
            if i > 0 {
                let (pb, pt) = columns[i - 1];
                if b < pb || t < pt {
                    return bad("column bounds must weakly increase");
                }
                if b >= pt {
                    return bad("consecutive columns must share an edge");
                }
            }
        }
        Ok(ParallelogramPolyomino { columns })
    }

    pub fn unit() -> Self {
        ParallelogramPolyomino { columns: vec![(0, 1)] }
    }

    /// The full `height x width` rectangle.
    pub fn rectangle(height: u32, width: u32) -> Self {
        assert!(height >= 1 && width >= 1);
        ParallelogramPolyomino { columns: vec![(0, height); width as usize] }
    }

    pub fn columns(&self) -> &[(u32, u32)] {
        &self.columns
    }

    pub fn width(&self) -> u32 {
        self.columns.len() as u32
    }

    pub fn height(&self) -> u32 {
        self.columns.last().unwrap().1
    }

    pub fn size(&self) -> u32 {
        self.width() + self.height() - 1
    }

    pub fn bottom(&self, col: usize) -> u32 {
        self.columns[col].0
    }

    /// Number of cells in the topmost row.
    pub fn top_row_width(&self) -> u32 {
        let h = self.height();
        self.columns.iter().rev().take_while(|c| c.1 == h).count() as u32
    }

    /// Number of cells in the rightmost column.
    pub fn right_column_height(&self) -> u32 {
        let (b, t) = *self.columns.last().unwrap();
        t - b
    }

    /// Number of unit east steps of the lower border ending at abscissa
    /// `x`, counted leftwards until a north step or the bottom-left corner.
    pub fn lower_run_ending_at(&self, x: u32) -> u32 {
        assert!(x >= 1 && x <= self.width());
        let y = self.columns[x as usize - 1].0;
        self.columns[..x as usize].iter().rev().take_while(|c| c.0 == y).count() as u32
    }

    /// The shape with its topmost row deleted, when that leaves a
    /// parallelogram polyomino of size one less.
    pub fn without_top_row(&self) -> Option<Self> {
        if self.right_column_height() < 2 {
            return None;
        }
        let h = self.height();
        let columns = self.columns.iter().map(|&(b, t)| if t == h { (b, t - 1) } else { (b, t) }).collect();
        Some(ParallelogramPolyomino { columns })
    }

    /// The shape with its rightmost column deleted, when that leaves a
    /// parallelogram polyomino of size one less.
    pub fn without_right_column(&self) -> Option<Self> {
        if self.top_row_width() < 2 {
            return None;
        }
        let mut columns = self.columns.clone();
        columns.pop();
        Some(ParallelogramPolyomino { columns })
    }

    /// Adds a row of `width` cells on top, flush with the right edge.
    pub(crate) fn push_row(&mut self, width: u32) {
        let h = self.height();
        let w = self.columns.len();
        for c in &mut self.columns[w - width as usize..] {
            debug_assert_eq!(c.1, h);
            c.1 = h + 1;
        }
    }

    /// Adds a column of `height` cells on the right, flush with the top.
    pub(crate) fn push_column(&mut self, height: u32) {
        let h = self.height();
        self.columns.push((h - height, h));
    }

    pub fn contains(&self, x: u32, y: u32) -> bool {
        self.columns.get(x as usize).is_some_and(|&(b, t)| b <= y && y < t)
    }

    pub fn cells(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.columns.iter().enumerate().flat_map(|(x, &(b, t))| (b..t).map(move |y| (x as u32, y)))
    }

    pub fn cell_count(&self) -> usize {
        self.columns.iter().map(|&(b, t)| (t - b) as usize).sum()
    }

    /// A snake contains no 2x2 square of cells.
    pub fn is_snake(&self) -> bool {
        !self.cells().any(|(x, y)| self.contains(x + 1, y) && self.contains(x, y + 1) && self.contains(x + 1, y + 1))
    }

    /// All parallelogram polyominoes of the given size, built column by
    /// column without reference to any growth rule.
    pub fn all_of_size(size: u32) -> Vec<Self> {
        let mut out = Vec::new();
        if size == 0 {
            return out;
        }
        // width + height = size + 1
        for width in 1..=size {
            let height = size + 1 - width;
            let mut cols = Vec::with_capacity(width as usize);
            extend_columns(&mut cols, width as usize, height, &mut out);
        }
        out.sort();
        out
    }
}

fn extend_columns(cols: &mut Vec<(u32, u32)>, width: usize, height: u32, out: &mut Vec<ParallelogramPolyomino>) {
    if cols.len() == width {
        if cols.last().unwrap().1 == height {
            out.push(ParallelogramPolyomino { columns: cols.clone() });
        }
        return;
    }
    let (b_range, t_min) = match cols.last() {
        None => (0..=0, 1),
        Some(&(pb, pt)) => (pb..=pt - 1, pt),
    };
    for b in b_range {
        for t in t_min.max(b + 1)..=height {
            cols.push((b, t));
            extend_columns(cols, width, height, out);
            cols.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(ParallelogramPolyomino::new(vec![(0, 2), (1, 3)]).is_ok());
        assert!(ParallelogramPolyomino::new(vec![(1, 2)]).is_err());
        assert!(ParallelogramPolyomino::new(vec![(0, 1), (1, 2)]).is_err());
        assert!(ParallelogramPolyomino::new(vec![(0, 3), (0, 2)]).is_err());
        assert!(ParallelogramPolyomino::new(vec![]).is_err());
    }

    #[test]
    fn measurements() {
        let p = ParallelogramPolyomino::new(vec![(0, 3), (0, 3), (1, 3)]).unwrap();
        assert_eq!((p.width(), p.height(), p.size()), (3, 3, 5));
        assert_eq!(p.top_row_width(), 3);
        assert_eq!(p.right_column_height(), 2);
        assert_eq!(p.lower_run_ending_at(3), 1);
        assert_eq!(p.lower_run_ending_at(2), 2);
        assert!(!p.is_snake());
    }

    #[test]
    fn shape_counts_are_catalan() {
        let catalan = [1usize, 2, 5, 14, 42, 132, 429, 1430];
        for (i, &c) in catalan.iter().enumerate() {
            assert_eq!(ParallelogramPolyomino::all_of_size(i as u32 + 1).len(), c);
        }
    }

    #[test]
    fn removals() {
        let bar = ParallelogramPolyomino::rectangle(1, 3);
        assert!(bar.without_top_row().is_none());
        assert_eq!(bar.without_right_column().unwrap(), ParallelogramPolyomino::rectangle(1, 2));
        let col = ParallelogramPolyomino::rectangle(3, 1);
        assert!(col.without_right_column().is_none());
        // removing the top row would also remove the one-cell rightmost column
        let p = ParallelogramPolyomino::new(vec![(0, 2), (1, 2)]).unwrap();
        assert!(p.without_top_row().is_none());
    }
}
