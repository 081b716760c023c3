//! Triples of non-intersecting lattice paths and their correspondence with
//! Baxter slicings.

use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polyomino::{BaxterSlicing, Move, ParallelogramPolyomino};

/// Three N/E step strings of length `n - 1`. Paths start at (0,2), (1,1)
/// and (2,0) respectively.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct NilpTriple {
    pub u: String,
    pub m: String,
    pub d: String,
    pub n: usize,
}

/// Per-step statistics keyed by step index within the path.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct StepStats {
    /// E steps of `u` before each of its N steps.
    pub h_u: BTreeMap<usize, u32>,
    /// E steps of `m` before each of its N steps.
    pub h_m: BTreeMap<usize, u32>,
    /// Length of the maximal run of E steps of `d` ending at each E step.
    pub k_d: BTreeMap<usize, u32>,
}

fn points(path: &str, start: (i64, i64)) -> Vec<(i64, i64)> {
    let mut p = start;
    let mut out = vec![p];
    for c in path.chars() {
        match c {
            'N' => p.1 += 1,
            _ => p.0 += 1,
        }
        out.push(p);
    }
    out
}

fn counts(path: &str) -> (usize, usize) {
    let n = path.chars().filter(|&c| c == 'N').count();
    (n, path.len() - n)
}

impl NilpTriple {
    pub fn new(u: &str, m: &str, d: &str) -> Result<Self> {
        let t = NilpTriple { u: u.into(), m: m.into(), d: d.into(), n: u.len() + 1 };
        t.validate()?;
        Ok(t)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidTriple(msg.to_string()));
        for p in [&self.u, &self.m, &self.d] {
            if !p.chars().all(|c| c == 'N' || c == 'E') {
                return bad("steps must be N or E");
            }
            if self.n == 0 || p.len() != self.n - 1 {
                return bad("each path must have n - 1 steps");
            }
        }
        if counts(&self.u) != counts(&self.m) || counts(&self.m) != counts(&self.d) {
            return bad("paths must have the same numbers of N and E steps");
        }
        let pu: HashSet<_> = points(&self.u, (0, 2)).into_iter().collect();
        let pm = points(&self.m, (1, 1));
        let pd = points(&self.d, (2, 0));
        if pm.iter().any(|p| pu.contains(p)) || pd.iter().any(|p| pu.contains(p)) || pd.iter().any(|p| pm.contains(p)) {
            return bad("paths meet");
        }
        Ok(())
    }

    pub fn step_stats(&self) -> StepStats {
        fn east_before_north(path: &str) -> BTreeMap<usize, u32> {
            let mut e = 0;
            let mut out = BTreeMap::new();
            for (i, c) in path.chars().enumerate() {
                if c == 'E' {
                    e += 1;
                } else {
                    out.insert(i, e);
                }
            }
            out
        }
        let mut k_d = BTreeMap::new();
        let mut run = 0;
        for (i, c) in self.d.chars().enumerate() {
            if c == 'E' {
                run += 1;
                k_d.insert(i, run);
            } else {
                run = 0;
            }
        }
        StepStats { h_u: east_before_north(&self.u), h_m: east_before_north(&self.m), k_d }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).unwrap()
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let t: NilpTriple = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        t.validate()?;
        Ok(t)
    }
}

pub fn slicing_to_nilp(s: &BaxterSlicing) -> NilpTriple {
    let cols = s.shape().columns();
    let mut upper = String::new();
    let mut lower = String::new();
    let mut prev_top = 0;
    let mut prev_bottom = 0;
    for &(b, t) in cols {
        upper.extend(std::iter::repeat_n('N', (t - prev_top) as usize));
        upper.push('E');
        lower.extend(std::iter::repeat_n('N', (b - prev_bottom) as usize));
        lower.push('E');
        prev_top = t;
        prev_bottom = b;
    }
    lower.extend(std::iter::repeat_n('N', (prev_top - prev_bottom) as usize));
    let m = s
        .moves()
        .iter()
        .map(|mv| match mv {
            Move::Row(_) => 'N',
            Move::Col(_) => 'E',
        })
        .collect();
    let trim = |p: &str| p[1..p.len() - 1].to_string();
    NilpTriple { u: trim(&upper), m, d: trim(&lower), n: s.size() as usize }
}

/// Rebuilds the contour from `u` and `d`, then reads the building history
/// off `m` by peeling the contour from its last step backwards.
pub fn nilp_to_slicing(t: &NilpTriple) -> Result<BaxterSlicing> {
    t.validate()?;
    let upper = format!("N{}E", t.u);
    let lower = format!("E{}N", t.d);
    let mut tops = Vec::new();
    let mut y = 0;
    for c in upper.chars() {
        match c {
            'N' => y += 1,
            _ => tops.push(y),
        }
    }
    let mut bottoms = Vec::new();
    y = 0;
    for c in lower.chars() {
        match c {
            'N' => y += 1,
            _ => bottoms.push(y),
        }
    }
    let columns = bottoms.into_iter().zip(tops).collect();
    let mut shape = ParallelogramPolyomino::new(columns).map_err(|e| Error::InvalidTriple(format!("contour: {e}")))?;
    let mut moves = Vec::with_capacity(t.m.len());
    for c in t.m.chars().rev() {
        let next = if c == 'N' {
            moves.push(Move::Row(shape.top_row_width()));
            shape.without_top_row()
        } else {
            moves.push(Move::Col(shape.right_column_height()));
            shape.without_right_column()
        };
        shape = next.ok_or_else(|| Error::InvalidTriple("middle path does not peel the contour".into()))?;
    }
    moves.reverse();
    BaxterSlicing::from_moves(&moves).map_err(|e| Error::InvalidTriple(e.to_string()))
}

/// Whether every horizontal block encoded by `t` is at most one wider than
/// the lower-border run beneath its right end.
///
/// The N steps of `u` and `m` are matched by rank, as are the E steps of `m`
/// and `d`. For the i-th N step, `h_m - h_u` is the block width minus one
/// and the E-run of `d` matched to the last preceding E step of `m` is the
/// run beneath it; a run reaching the start of `d` also covers the step
/// trimmed from the contour.
pub fn is_schroeder_triple(t: &NilpTriple) -> Result<bool> {
    t.validate()?;
    let stats = t.step_stats();
    let e_m: Vec<usize> = t.m.char_indices().filter(|c| c.1 == 'E').map(|c| c.0).collect();
    let e_d: Vec<usize> = t.d.char_indices().filter(|c| c.1 == 'E').map(|c| c.0).collect();
    for ((_, &hu), (&nm, &hm)) in stats.h_u.iter().zip(&stats.h_m) {
        if hm == 0 {
            continue;
        }
        let last_e = e_m.iter().rposition(|&i| i < nm).expect("h_m > 0");
        let ed = e_d[last_e];
        let mut k = stats.k_d[&ed];
        if k as usize == ed + 1 {
            k += 1;
        }
        if hm as i64 - hu as i64 > k as i64 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All valid triples of size `n`, by brute force over step strings.
pub fn all_triples(n: usize) -> Vec<NilpTriple> {
    assert!(n >= 1);
    let len = n - 1;
    let mut by_norths: Vec<Vec<String>> = vec![Vec::new(); len + 1];
    for mask in 0u32..1 << len {
        let s: String = (0..len).map(|i| if mask >> i & 1 == 1 { 'N' } else { 'E' }).collect();
        by_norths[mask.count_ones() as usize].push(s);
    }
    let mut out = Vec::new();
    for group in &by_norths {
        for u in group {
            for m in group {
                for d in group {
                    let t = NilpTriple { u: u.clone(), m: m.clone(), d: d.clone(), n };
                    if t.validate().is_ok() {
                        out.push(t);
                    }
                }
            }
        }
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyomino::{children, is_member};
    use crate::rules::{level_counts_u64, RuleId};
    use Move::{Col, Row};

    fn all_slicings(n: u32) -> Vec<BaxterSlicing> {
        let mut level = vec![BaxterSlicing::unit()];
        for _ in 1..n {
            level = level.iter().flat_map(|s| children(s, RuleId::Bax).unwrap()).collect();
        }
        level
    }

    #[test]
    fn unit_and_empty() {
        let t = slicing_to_nilp(&BaxterSlicing::unit());
        assert_eq!(t, NilpTriple::new("", "", "").unwrap());
        assert_eq!(nilp_to_slicing(&t).unwrap(), BaxterSlicing::unit());
        assert!(is_schroeder_triple(&t).unwrap());
    }

    #[test]
    fn small_example() {
        let s = BaxterSlicing::from_moves(&[Row(1), Col(2), Col(1), Row(3)]).unwrap();
        let t = slicing_to_nilp(&s);
        assert_eq!((t.u.as_str(), t.m.as_str(), t.d.as_str()), ("NNEE", "NEEN", "ENEN"));
        assert_eq!(t.to_json(), r#"{"u":"NNEE","m":"NEEN","d":"ENEN","n":5}"#);
        assert_eq!(NilpTriple::from_json(&t.to_json()).unwrap(), t);
        assert!(!is_schroeder_triple(&t).unwrap());
        let stats = t.step_stats();
        assert_eq!(stats.h_u, BTreeMap::from([(0, 0), (1, 0)]));
        assert_eq!(stats.h_m, BTreeMap::from([(0, 0), (3, 2)]));
        assert_eq!(stats.k_d, BTreeMap::from([(0, 1), (2, 1)]));
    }

    #[test]
    fn invalid_triples() {
        assert!(NilpTriple::new("N", "E", "N").is_err());
        assert!(NilpTriple::new("N", "NE", "N").is_err());
        assert!(NilpTriple::new("X", "N", "N").is_err());
        // d climbs into m
        assert!(NilpTriple::new("EN", "EN", "NE").is_err());
        assert!(NilpTriple::from_json(r#"{"u":"E","m":"N","d":"E","n":2}"#).is_err());
    }

    #[test]
    fn bijection_exhaustive() {
        let bax = level_counts_u64(&RuleId::Bax, 7).unwrap();
        for n in 1..=7u32 {
            let slicings = all_slicings(n);
            let mut images: Vec<_> = slicings.iter().map(slicing_to_nilp).collect();
            for (s, t) in slicings.iter().zip(&images) {
                t.validate().unwrap();
                assert_eq!(&nilp_to_slicing(t).unwrap(), s);
            }
            images.sort();
            let triples = all_triples(n as usize);
            assert_eq!(triples.len() as u64, bax[n as usize - 1]);
            assert_eq!(images, triples);
        }
    }

    #[test]
    fn schroeder_triples_match_skinny_one() {
        let sch = level_counts_u64(&RuleId::NewSch, 7).unwrap();
        for n in 1..=7u32 {
            let slicings = all_slicings(n);
            for s in &slicings {
                let t = slicing_to_nilp(s);
                assert_eq!(is_schroeder_triple(&t).unwrap(), is_member(s, RuleId::NewSch), "{:?}", s.moves());
            }
            let count = all_triples(n as usize).iter().filter(|t| is_schroeder_triple(t).unwrap()).count();
            assert_eq!(count as u64, sch[n as usize - 1]);
        }
    }
}
