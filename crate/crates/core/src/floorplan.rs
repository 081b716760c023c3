//! Packed floorplans: rectangle partitions avoiding a corner pattern, grown
//! by adding a block at the north-east corner.

use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rules::Label;

/// Block rectangle `[x1, y1, x2, y2]`.
pub type Rect = [u32; 4];

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PackedFloorplan {
    /// `[height, width]`.
    dim: [u32; 2],
    blocks: Vec<Rect>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SegmentOrientation {
    H,
    V,
}

/// A maximal horizontal or vertical line segment of the block boundaries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Segment {
    pub orientation: SegmentOrientation,
    /// `y` for horizontal segments, `x` for vertical ones.
    pub at: u32,
    pub lo: u32,
    pub hi: u32,
    pub internal: bool,
}

impl Segment {
    fn strictly_contains(&self, v: u32) -> bool {
        self.lo < v && v < self.hi
    }
}

fn check_partition(blocks: &[Rect], d: u32, l: u32) -> Result<()> {
    let err = Error::NotAPartition(d, l);
    let mut covered = HashSet::new();
    for &[x1, y1, x2, y2] in blocks {
        if x1 >= x2 || y1 >= y2 || x2 > l || y2 > d {
            return Err(err);
        }
        for x in x1..x2 {
            for y in y1..y2 {
                if !covered.insert((x, y)) {
                    return Err(err);
                }
            }
        }
    }
    if covered.len() != (d * l) as usize {
        return Err(err);
    }
    Ok(())
}

fn packed(blocks: &[Rect]) -> bool {
    // bottom-right corner of b1 weakly north-west of the top-left corner of b2
    !blocks.iter().any(|b1| blocks.iter().any(|b2| b1 != b2 && b1[2] <= b2[0] && b1[1] >= b2[3]))
}

/// Whether a partition of the `d x l` rectangle is packed.
pub fn is_packed(blocks: &[Rect], dim: [u32; 2]) -> Result<bool> {
    check_partition(blocks, dim[0], dim[1])?;
    Ok(packed(blocks))
}

impl PackedFloorplan {
    pub fn new(dim: [u32; 2], mut blocks: Vec<Rect>) -> Result<Self> {
        check_partition(&blocks, dim[0], dim[1])?;
        if blocks.len() as u32 != dim[0] + dim[1] - 1 || !packed(&blocks) {
            return Err(Error::NotPacked);
        }
        blocks.sort_by_key(|b| (b[1], b[0]));
        Ok(PackedFloorplan { dim, blocks })
    }

    pub fn single() -> Self {
        PackedFloorplan { dim: [1, 1], blocks: vec![[0, 0, 1, 1]] }
    }

    fn from_parts(dim: [u32; 2], mut blocks: Vec<Rect>) -> Self {
        blocks.sort_by_key(|b| (b[1], b[0]));
        PackedFloorplan { dim, blocks }
    }

    pub fn height(&self) -> u32 {
        self.dim[0]
    }

    pub fn width(&self) -> u32 {
        self.dim[1]
    }

    pub fn dim(&self) -> [u32; 2] {
        self.dim
    }

    pub fn blocks(&self) -> &[Rect] {
        &self.blocks
    }

    pub fn size(&self) -> usize {
        self.blocks.len()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).unwrap()
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let raw: PackedFloorplan = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Self::new(raw.dim, raw.blocks)
    }

    /// Maximal segments: collinear unit edges of block boundaries merged.
    pub fn segments(&self) -> Vec<Segment> {
        let (d, l) = (self.height(), self.width());
        let mut horizontal: BTreeMap<u32, Vec<(u32, u32)>> = BTreeMap::new();
        let mut vertical: BTreeMap<u32, Vec<(u32, u32)>> = BTreeMap::new();
        for &[x1, y1, x2, y2] in &self.blocks {
            horizontal.entry(y1).or_default().push((x1, x2));
            horizontal.entry(y2).or_default().push((x1, x2));
            vertical.entry(x1).or_default().push((y1, y2));
            vertical.entry(x2).or_default().push((y1, y2));
        }
        let mut out = Vec::new();
        for (orientation, lines, border) in
            [(SegmentOrientation::H, horizontal, [0, d]), (SegmentOrientation::V, vertical, [0, l])]
        {
            for (at, mut pieces) in lines {
                pieces.sort();
                let mut merged: Vec<(u32, u32)> = Vec::new();
                for (lo, hi) in pieces {
                    match merged.last_mut() {
                        Some(last) if lo <= last.1 => last.1 = last.1.max(hi),
                        _ => merged.push((lo, hi)),
                    }
                }
                let internal = !border.contains(&at);
                out.extend(merged.into_iter().map(|(lo, hi)| Segment { orientation, at, lo, hi, internal }));
            }
        }
        out
    }

    fn internal(&self, orientation: SegmentOrientation) -> Vec<Segment> {
        self.segments().into_iter().filter(|s| s.internal && s.orientation == orientation).collect()
    }

    /// Heights of internal horizontal segments reaching the right border, ascending.
    fn right_border_heights(&self) -> Vec<u32> {
        self.internal(SegmentOrientation::H).iter().filter(|s| s.hi == self.width()).map(|s| s.at).collect()
    }

    /// Abscissae of internal vertical segments reaching the top border, ascending.
    fn top_border_abscissae(&self) -> Vec<u32> {
        self.internal(SegmentOrientation::V).iter().filter(|s| s.hi == self.height()).map(|s| s.at).collect()
    }

    /// `(1 + #internal segments meeting the right border, 1 + #meeting the top border)`.
    pub fn label(&self) -> Label {
        Label::Binary(1 + self.right_border_heights().len() as u64, 1 + self.top_border_abscissae().len() as u64)
    }

    /// New block in a new rightmost column, from height `ys` to the top.
    pub fn insert_right(&self, ys: u32) -> Self {
        let (d, l) = (self.height(), self.width());
        let mut blocks: Vec<Rect> = self
            .blocks
            .iter()
            .map(|&[x1, y1, x2, y2]| if x2 == l && y2 <= ys { [x1, y1, x2 + 1, y2] } else { [x1, y1, x2, y2] })
            .collect();
        blocks.push([l, ys, l + 1, d]);
        Self::from_parts([d, l + 1], blocks)
    }

    /// New block in a new topmost row, from abscissa `xs` to the right.
    pub fn insert_top(&self, xs: u32) -> Self {
        let (d, l) = (self.height(), self.width());
        let mut blocks: Vec<Rect> = self
            .blocks
            .iter()
            .map(|&[x1, y1, x2, y2]| if y2 == d && x2 <= xs { [x1, y1, x2, y2 + 1] } else { [x1, y1, x2, y2] })
            .collect();
        blocks.push([xs, d, l, d + 1]);
        Self::from_parts([d + 1, l], blocks)
    }

    /// The block containing the top-right corner.
    pub fn north_east_block(&self) -> Rect {
        *self.blocks.iter().find(|b| b[2] == self.width() && b[3] == self.height()).expect("partition")
    }

    /// Undoes the last insertion, reading its kind off the junction at the
    /// bottom-left corner of the north-east block.
    pub fn parent(&self) -> Option<Self> {
        if self.size() == 1 {
            return None;
        }
        let (d, l) = (self.height(), self.width());
        let ne = self.north_east_block();
        let [x1, y1, _, _] = ne;
        let from_right = y1 == 0
            || (x1 > 0
                && self.internal(SegmentOrientation::V).iter().any(|s| s.at == x1 && s.lo == y1 && s.hi >= ne[3]));
        let blocks: Vec<Rect> = if from_right {
            if ne[2] - ne[0] != 1 {
                return None;
            }
            self.blocks
                .iter()
                .filter(|&&b| b != ne)
                .map(|&[a, b, c, e]| if c == l { [a, b, c - 1, e] } else { [a, b, c, e] })
                .collect()
        } else {
            if ne[3] - ne[1] != 1 {
                return None;
            }
            self.blocks
                .iter()
                .filter(|&&b| b != ne)
                .map(|&[a, b, c, e]| if e == d { [a, b, c, e - 1] } else { [a, b, c, e] })
                .collect()
        };
        let dim = if from_right { [d, l - 1] } else { [d - 1, l] };
        Some(Self::from_parts(dim, blocks))
    }

    /// The topmost internal segment meeting the right border under which an
    /// internal vertical segment ends, if any.
    pub fn p_f(&self) -> Option<Segment> {
        let verticals = self.internal(SegmentOrientation::V);
        self.internal(SegmentOrientation::H)
            .into_iter()
            .filter(|s| s.hi == self.width())
            .filter(|s| verticals.iter().any(|v| v.hi == s.at && s.strictly_contains(v.at)))
            .max_by_key(|s| s.at)
    }

    /// Heights at which a right insertion keeps the floorplan Schröder.
    fn schroeder_right_heights(&self) -> Vec<u32> {
        let floor = self.p_f().map_or(0, |p| p.at);
        std::iter::once(0).chain(self.right_border_heights().into_iter().filter(|&y| y >= floor)).collect()
    }

    /// Label under the Schröder growth.
    pub fn schroeder_label(&self) -> Label {
        Label::Binary(self.schroeder_right_heights().len() as u64, 1 + self.top_border_abscissae().len() as u64)
    }
}

/// Children by right insertions (stop height ascending), then top insertions
/// (stop abscissa ascending).
pub fn children_pfp(f: &PackedFloorplan) -> Vec<PackedFloorplan> {
    let rights = std::iter::once(0).chain(f.right_border_heights()).map(|y| f.insert_right(y));
    let tops = std::iter::once(0).chain(f.top_border_abscissae()).map(|x| f.insert_top(x));
    rights.chain(tops).collect()
}

pub fn has_schroeder_forbidden_config(f: &PackedFloorplan) -> bool {
    let hs = f.internal(SegmentOrientation::H);
    let vs = f.internal(SegmentOrientation::V);
    // v1 ends on h1 from below, h1 ends on v2 from the left, v2 ends on h2 from above
    vs.iter().any(|v1| {
        hs.iter().filter(|h1| h1.at == v1.hi && h1.strictly_contains(v1.at)).any(|h1| {
            vs.iter()
                .filter(|v2| v2.at == h1.hi && v2.strictly_contains(h1.at))
                .any(|v2| hs.iter().any(|h2| h2.at == v2.lo && h2.strictly_contains(v2.at)))
        })
    })
}

pub fn children_schroeder_pfp(f: &PackedFloorplan) -> Result<Vec<PackedFloorplan>> {
    if has_schroeder_forbidden_config(f) {
        return Err(Error::NotSchroeder);
    }
    let rights = f.schroeder_right_heights().into_iter().map(|y| f.insert_right(y));
    let tops = std::iter::once(0).chain(f.top_border_abscissae()).map(|x| f.insert_top(x));
    Ok(rights.chain(tops).collect())
}

pub fn is_catalan_pfp(f: &PackedFloorplan) -> bool {
    let hs = f.internal(SegmentOrientation::H);
    !f.internal(SegmentOrientation::V).iter().any(|v| hs.iter().any(|h| h.at == v.lo && h.strictly_contains(v.at)))
}

/// All packed floorplans with `n` blocks, found by tiling every `d x l`
/// rectangle with `d + l = n + 1` by brute force.
pub fn all_packed_brute_force(n: u32) -> Vec<PackedFloorplan> {
    fn fill(d: u32, l: u32, n: usize, grid: &mut Vec<bool>, blocks: &mut Vec<Rect>, out: &mut Vec<PackedFloorplan>) {
        let Some(first) = grid.iter().position(|&c| !c) else {
            if blocks.len() == n && packed(blocks) {
                out.push(PackedFloorplan::from_parts([d, l], blocks.clone()));
            }
            return;
        };
        if blocks.len() == n {
            return;
        }
        let (x0, y0) = (first as u32 % l, first as u32 / l);
        let idx = |x: u32, y: u32| (y * l + x) as usize;
        let mut x_max = l;
        for y2 in y0 + 1..=d {
            for x2 in x0 + 1..=x_max {
                if grid[idx(x2 - 1, y2 - 1)] {
                    x_max = x2 - 1;
                    break;
                }
            }
            if x_max == x0 {
                break;
            }
            for x2 in x0 + 1..=x_max {
                let cells: Vec<usize> = (x0..x2).flat_map(|x| (y0..y2).map(move |y| idx(x, y))).collect();
                for &c in &cells {
                    grid[c] = true;
                }
                blocks.push([x0, y0, x2, y2]);
                fill(d, l, n, grid, blocks, out);
                blocks.pop();
                for &c in &cells {
                    grid[c] = false;
                }
            }
        }
    }
    let mut out = Vec::new();
    for d in 1..=n {
        let l = n + 1 - d;
        fill(d, l, n as usize, &mut vec![false; (d * l) as usize], &mut Vec::new(), &mut out);
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rules::{level_counts_u64, RuleId, SuccessionRule};
    use std::collections::BTreeSet;

    fn levels(n: usize) -> Vec<Vec<PackedFloorplan>> {
        let mut out = vec![vec![PackedFloorplan::single()]];
        while out.len() < n {
            let next = out.last().unwrap().iter().flat_map(children_pfp).collect();
            out.push(next);
        }
        out
    }

    fn schroeder_levels(n: usize) -> Vec<Vec<PackedFloorplan>> {
        let mut out = vec![vec![PackedFloorplan::single()]];
        while out.len() < n {
            let next = out.last().unwrap().iter().flat_map(|f| children_schroeder_pfp(f).unwrap()).collect();
            out.push(next);
        }
        out
    }

    fn pfp(dim: [u32; 2], blocks: &[Rect]) -> PackedFloorplan {
        PackedFloorplan::new(dim, blocks.to_vec()).unwrap()
    }

    #[test]
    fn single_block() {
        let f = PackedFloorplan::single();
        let segs = f.segments();
        assert_eq!(segs.len(), 4);
        assert!(segs.iter().all(|s| !s.internal));
        assert!(!has_schroeder_forbidden_config(&f));
        assert!(is_catalan_pfp(&f));
        assert_eq!(is_packed(f.blocks(), f.dim()), Ok(true));
        let kids = children_pfp(&f);
        assert_eq!(kids.iter().map(|k| k.dim()).collect::<Vec<_>>(), vec![[1, 2], [2, 1]]);
    }

    #[test]
    fn packedness_and_partitions() {
        assert_eq!(is_packed(&[[0, 0, 1, 2], [1, 0, 2, 1], [1, 1, 2, 2]], [2, 2]), Ok(true));
        assert_eq!(is_packed(&[[0, 1, 1, 2], [0, 0, 1, 1], [1, 0, 2, 2]], [2, 2]), Ok(true));
        assert_eq!(is_packed(&[[0, 0, 2, 1], [0, 1, 1, 2], [1, 1, 2, 2]], [2, 2]), Ok(true));
        assert_eq!(is_packed(&[[0, 0, 1, 1], [1, 1, 2, 2]], [2, 2]), Err(Error::NotAPartition(2, 2)));
        assert_eq!(is_packed(&[[0, 0, 2, 2], [0, 0, 1, 1]], [2, 2]), Err(Error::NotAPartition(2, 2)));
        let pinwheel = [[0, 0, 2, 1], [2, 0, 3, 2], [1, 2, 3, 3], [0, 1, 1, 3], [1, 1, 2, 2]];
        assert_eq!(is_packed(&pinwheel, [3, 3]), Ok(true));
        // four blocks meeting at a cross: the top-left block is north-west of the bottom-right one
        let cross = [[0, 0, 1, 1], [1, 0, 3, 1], [0, 1, 1, 2], [1, 1, 3, 2]];
        assert_eq!(is_packed(&cross, [2, 3]), Ok(false));
        assert_eq!(PackedFloorplan::new([2, 3], cross.to_vec()), Err(Error::NotPacked));
    }

    #[test]
    fn json_form() {
        let f = PackedFloorplan::single().insert_top(0);
        assert_eq!(f.to_json(), r#"{"dim":[2,1],"blocks":[[0,0,1,1],[0,1,1,2]]}"#);
        assert_eq!(PackedFloorplan::from_json(&f.to_json()).unwrap(), f);
        assert!(PackedFloorplan::from_json(r#"{"dim":[2,2],"blocks":[[0,0,2,2]]}"#).is_err());
    }

    #[test]
    fn baxter_growth() {
        let bax = level_counts_u64(&RuleId::Bax, 9).unwrap();
        for (i, level) in levels(9).iter().enumerate() {
            let n = i + 1;
            assert_eq!(level.len() as u64, bax[i]);
            if n <= 8 {
                let distinct: HashSet<_> = level.iter().collect();
                assert_eq!(distinct.len(), level.len());
                for f in level {
                    assert!(packed(f.blocks()));
                    assert_eq!(f.blocks().len(), f.height() as usize + f.width() as usize - 1);
                }
            }
            if n <= 7 {
                for f in level {
                    assert_eq!(f.segments().iter().filter(|s| s.internal).count(), n - 1);
                    let kids = children_pfp(f);
                    let expected = RuleId::Bax.productions(f.label()).unwrap();
                    assert_eq!(kids.iter().map(|k| k.label()).collect::<Vec<_>>(), expected);
                    for k in &kids {
                        assert_eq!(k.parent().as_ref(), Some(f));
                    }
                }
            }
        }
    }

    #[test]
    fn brute_force_agrees_with_growth() {
        let grown = levels(6);
        for n in 1..=6u32 {
            let mut g = grown[n as usize - 1].clone();
            g.sort();
            assert_eq!(all_packed_brute_force(n), g);
        }
    }

    #[test]
    fn label_three_two_node() {
        // right border split twice, top border split once
        let f = pfp([3, 2], &[[0, 0, 1, 3], [1, 0, 2, 1], [1, 1, 2, 2], [1, 2, 2, 3]]);
        assert_eq!(f.label(), Label::Binary(3, 2));
        let kids = children_pfp(&f);
        assert_eq!(kids.len(), 5);
        assert_eq!(
            kids.iter().map(|k| k.label()).collect::<Vec<_>>(),
            RuleId::Bax.productions(Label::Binary(3, 2)).unwrap()
        );
    }

    #[test]
    fn schroeder_forbidden_configuration() {
        let five = &levels(5)[4];
        let bad: Vec<_> = five.iter().filter(|f| has_schroeder_forbidden_config(f)).collect();
        assert_eq!(bad.len(), 2);
        let grown: BTreeSet<_> = schroeder_levels(5)[4].iter().cloned().collect();
        let filtered: BTreeSet<_> = five.iter().filter(|f| !has_schroeder_forbidden_config(f)).cloned().collect();
        assert_eq!(grown.len(), 90);
        assert_eq!(grown, filtered);
        let six_bad = levels(6)[5].iter().filter(|f| has_schroeder_forbidden_config(f)).count();
        assert_eq!(six_bad, 422 - 394);
        assert_eq!(children_schroeder_pfp(bad[0]), Err(Error::NotSchroeder));
    }

    #[test]
    fn schroeder_growth() {
        let sch = level_counts_u64(&RuleId::NewSch, 9).unwrap();
        let all = levels(7);
        for (i, level) in schroeder_levels(9).iter().enumerate() {
            assert_eq!(level.len() as u64, sch[i]);
            if i < 7 {
                let grown: BTreeSet<_> = level.iter().cloned().collect();
                let filtered: BTreeSet<_> =
                    all[i].iter().filter(|f| !has_schroeder_forbidden_config(f)).cloned().collect();
                assert_eq!(grown, filtered);
                for f in level {
                    let kids = children_schroeder_pfp(f).unwrap();
                    let expected = RuleId::NewSch.productions(f.schroeder_label()).unwrap();
                    assert_eq!(kids.iter().map(|k| k.schroeder_label()).collect::<Vec<_>>(), expected);
                }
            }
        }
    }

    #[test]
    fn catalan_floorplans() {
        let cat = level_counts_u64(&RuleId::Cat, 9).unwrap();
        for (i, level) in levels(9).iter().enumerate() {
            let catalan: Vec<_> = level.iter().filter(|f| is_catalan_pfp(f)).collect();
            assert_eq!(catalan.len() as u64, cat[i]);
            if i < 8 {
                assert!(catalan.iter().all(|f| !has_schroeder_forbidden_config(f)));
            }
        }
    }
}
