//! Succession rules and generating-tree level counting.
//!
//! A succession rule gives the label of the root and, for every label, the
//! ordered list of labels of its children. Level sizes are computed by a
//! dynamic program over label multiplicities, never materializing the tree.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// A node label: `(k)` for one-dimensional rules, `(h,k)` for two-dimensional ones.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Unary(u64),
    Binary(u64, u64),
}

impl Label {
    /// Sum of the label components.
    pub fn weight(self) -> u64 {
        match self {
            Label::Unary(a) => a,
            Label::Binary(a, b) => a + b,
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Unary(a) => write!(f, "({a})"),
            Label::Binary(a, b) => write!(f, "({a},{b})"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RuleId {
    /// `(k) -> (1),…,(k+1)`, root `(1)`.
    Cat,
    /// One-dimensional Schröder rule, `(j) -> (3),…,(j),(j+1),(j+1)`, root `(2)`.
    SchWest,
    /// Two-dimensional Schröder rule interpolating between `Cat` and `Bax`.
    NewSch,
    Bax,
    /// Rule of the m-skinny slicings.
    Skinny(u64),
    /// Rule of the m-row-restricted slicings, `m >= 1`.
    RowRestricted(u64),
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RuleId::Cat => write!(f, "Cat"),
            RuleId::SchWest => write!(f, "Sch"),
            RuleId::NewSch => write!(f, "NewSch"),
            RuleId::Bax => write!(f, "Bax"),
            RuleId::Skinny(m) => write!(f, "Skinny({m})"),
            RuleId::RowRestricted(m) => write!(f, "RowRestricted({m})"),
        }
    }
}

/// Anything that describes a generating tree by labels.
pub trait SuccessionRule {
    fn root(&self) -> Label;
    fn productions(&self, label: Label) -> Result<Vec<Label>>;
}

impl RuleId {
    pub fn validate(self) -> Result<Self> {
        match self {
            RuleId::RowRestricted(0) => {
                Err(Error::InvalidRule("0-row-restricted is degenerate (one object per size)".into()))
            }
            r => Ok(r),
        }
    }

    fn arity_error(self, label: Label) -> Error {
        Error::ArityMismatch { rule: self.to_string(), label: label.to_string() }
    }
}

impl SuccessionRule for RuleId {
    fn root(&self) -> Label {
        match self {
            RuleId::Cat => Label::Unary(1),
            RuleId::SchWest => Label::Unary(2),
            _ => Label::Binary(1, 1),
        }
    }

    fn productions(&self, label: Label) -> Result<Vec<Label>> {
        let rule = self.validate()?;
        match (rule, label) {
            (RuleId::Cat, Label::Unary(k)) => Ok((1..=k + 1).map(Label::Unary).collect()),
            (RuleId::SchWest, Label::Unary(j)) => {
                let mut out: Vec<Label> = (3..=j + 1).map(Label::Unary).collect();
                out.push(Label::Unary(j + 1));
                Ok(out)
            }
            (RuleId::Cat | RuleId::SchWest, l) => Err(rule.arity_error(l)),
            (_, Label::Unary(_)) => Err(rule.arity_error(label)),
            (_, Label::Binary(h, k)) => {
                let mut out: Vec<Label> = (1..=h).map(|i| Label::Binary(i, k + 1)).collect();
                match rule {
                    RuleId::Bax => out.extend((1..=k).map(|j| Label::Binary(h + 1, j))),
                    RuleId::NewSch => {
                        out.extend((1..k).map(|j| Label::Binary(2, j)));
                        out.push(Label::Binary(h + 1, k));
                    }
                    RuleId::Skinny(m) => {
                        // the displayed rule caps the first coordinate at min(h, m) + 1
                        let cap = h.min(m) + 1;
                        out.extend((1..k).map(|j| Label::Binary(cap, j)));
                        out.push(Label::Binary(h + 1, k));
                    }
                    RuleId::RowRestricted(m) => {
                        let next = if h < m { h + 1 } else { m };
                        out.extend((1..=k).map(|j| Label::Binary(next, j)));
                    }
                    RuleId::Cat | RuleId::SchWest => unreachable!(),
                }
                Ok(out)
            }
        }
    }
}

/// Multiplicity of each label on one level of a generating tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelProfile {
    pub depth: usize,
    pub counts: BTreeMap<Label, BigUint>,
}

impl LevelProfile {
    pub fn root<R: SuccessionRule + ?Sized>(rule: &R) -> Self {
        let mut counts = BTreeMap::new();
        counts.insert(rule.root(), BigUint::one());
        LevelProfile { depth: 1, counts }
    }

    pub fn next<R: SuccessionRule + ?Sized>(&self, rule: &R) -> Result<Self> {
        let mut counts: BTreeMap<Label, BigUint> = BTreeMap::new();
        for (&label, mult) in &self.counts {
            for child in rule.productions(label)? {
                *counts.entry(child).or_insert_with(BigUint::zero) += mult;
            }
        }
        Ok(LevelProfile { depth: self.depth + 1, counts })
    }

    pub fn size(&self) -> BigUint {
        self.counts.values().sum()
    }
}

/// Number of nodes at depth `1..=n_max`.
pub fn level_counts<R: SuccessionRule + ?Sized>(rule: &R, n_max: usize) -> Result<Vec<BigUint>> {
    let mut out = Vec::with_capacity(n_max);
    if n_max == 0 {
        return Ok(out);
    }
    let mut level = LevelProfile::root(rule);
    out.push(level.size());
    for _ in 1..n_max {
        level = level.next(rule)?;
        out.push(level.size());
    }
    Ok(out)
}

/// Level counts as `u64`, for tests and printing; panics on overflow.
pub fn level_counts_u64<R: SuccessionRule + ?Sized>(rule: &R, n_max: usize) -> Result<Vec<u64>> {
    Ok(level_counts(rule, n_max)?.into_iter().map(|c| u64::try_from(c).expect("level count overflows u64")).collect())
}

/// Labels appearing on levels `1..=depth`.
pub fn reachable_labels<R: SuccessionRule + ?Sized>(rule: &R, depth: usize) -> Result<BTreeSet<Label>> {
    let mut seen = BTreeSet::new();
    let mut frontier: BTreeSet<Label> = BTreeSet::from([rule.root()]);
    for _ in 0..depth {
        let mut next = BTreeSet::new();
        for &l in &frontier {
            if seen.insert(l) {
                next.extend(rule.productions(l)?);
            }
        }
        frontier = next;
    }
    Ok(seen)
}

/// Checks that collapsing each two-dimensional label with `collapse` turns
/// `fine` into `coarse` production by production (as multisets), for every
/// label reachable within `depth`.
pub fn check_collapse<F, C>(fine: &F, coarse: &C, depth: usize, collapse: impl Fn(Label) -> Label) -> Result<bool>
where
    F: SuccessionRule + ?Sized,
    C: SuccessionRule + ?Sized,
{
    if collapse(fine.root()) != coarse.root() {
        return Ok(false);
    }
    for label in reachable_labels(fine, depth)? {
        let mut got: Vec<Label> = fine.productions(label)?.into_iter().map(&collapse).collect();
        let mut want = coarse.productions(collapse(label))?;
        got.sort();
        want.sort();
        if got != want {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `(h,k) -> (h+k)` turns rule NewSch into rule Sch.
pub fn check_newsch_sch_isomorphism(depth: usize) -> Result<bool> {
    check_collapse(&RuleId::NewSch, &RuleId::SchWest, depth, |l| Label::Unary(l.weight()))
}

/// Outcome of building the canonical embedding of the NewSch tree into the Bax tree.
#[derive(Debug, Clone)]
pub struct EmbeddingReport {
    pub ok: bool,
    /// Image sizes on levels `1..=depth`.
    pub image_level_sizes: Vec<usize>,
    /// Bax-tree paths (production indices from the root) of the image at the last level.
    pub image_paths: Vec<Vec<usize>>,
}

/// Index in the Bax production list of `(h', k)` that receives production
/// `index` of NewSch applied to `(h, k)`.
pub fn embed_production_index(h: u64, h_image: u64, index: usize) -> usize {
    let h = h as usize;
    if index < h {
        index
    } else {
        h_image as usize + (index - h)
    }
}

/// Builds the canonical injection from the tree of `source` (NewSch-shaped)
/// into the tree of rule Bax and verifies it level by level: every image
/// label `(i', j)` of a node labeled `(i, j)` has `i' >= i`, and images are
/// distinct on each level.
pub fn embed_into_bax<R: SuccessionRule + ?Sized>(source: &R, depth: usize) -> Result<EmbeddingReport> {
    let bax = RuleId::Bax;
    // (source label, image label, image path)
    let mut level = vec![(source.root(), bax.root(), Vec::<usize>::new())];
    let mut ok = source.root() == bax.root();
    let mut sizes = vec![1usize];
    for _ in 1..depth {
        let mut next = Vec::new();
        for (label, image, path) in &level {
            let (Label::Binary(h, _), Label::Binary(h_img, _)) = (*label, *image) else {
                return Err(Error::InvalidRule("embedding needs binary labels".into()));
            };
            let src_children = source.productions(*label)?;
            let img_children = bax.productions(*image)?;
            for (idx, child) in src_children.into_iter().enumerate() {
                let img_idx = embed_production_index(h, h_img, idx);
                let Some(&img_child) = img_children.get(img_idx) else {
                    ok = false;
                    continue;
                };
                match (child, img_child) {
                    (Label::Binary(i, j), Label::Binary(i2, j2)) if j == j2 && i2 >= i => {}
                    _ => ok = false,
                }
                let mut p = path.clone();
                p.push(img_idx);
                next.push((child, img_child, p));
            }
        }
        let distinct: HashSet<&Vec<usize>> = next.iter().map(|(_, _, p)| p).collect();
        if distinct.len() != next.len() {
            ok = false;
        }
        sizes.push(next.len());
        level = next;
    }
    Ok(EmbeddingReport { ok, image_level_sizes: sizes, image_paths: level.into_iter().map(|(_, _, p)| p).collect() })
}

pub fn check_sch_in_bax_embedding(depth: usize) -> Result<bool> {
    Ok(embed_into_bax(&RuleId::NewSch, depth)?.ok)
}

/// All production-index paths of length `depth - 1` in the tree of `rule`.
pub fn tree_paths<R: SuccessionRule + ?Sized>(rule: &R, depth: usize) -> Result<Vec<(Label, Vec<usize>)>> {
    let mut level = vec![(rule.root(), Vec::new())];
    for _ in 1..depth {
        let mut next = Vec::new();
        for (label, path) in &level {
            for (i, child) in rule.productions(*label)?.into_iter().enumerate() {
                let mut p = path.clone();
                p.push(i);
                next.push((child, p));
            }
        }
        level = next;
    }
    Ok(level)
}

/// Paths of the Bax tree at `depth` not covered by the canonical NewSch subtree.
pub fn bax_paths_outside_canonical_subtree(depth: usize) -> Result<Vec<Vec<usize>>> {
    let image: HashSet<Vec<usize>> = embed_into_bax(&RuleId::NewSch, depth)?.image_paths.into_iter().collect();
    Ok(tree_paths(&RuleId::Bax, depth)?.into_iter().map(|(_, p)| p).filter(|p| !image.contains(p)).collect())
}

/// Level sizes of the degenerate 0-row-restricted family: one object per size.
pub fn row_restricted_zero_counts(n_max: usize) -> Vec<BigUint> {
    vec![BigUint::one(); n_max]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(h: u64, k: u64) -> Label {
        Label::Binary(h, k)
    }

    /// Expands the tree node by node; independent of the label DP.
    fn explicit_tree_counts(rule: RuleId, n: usize) -> Vec<u64> {
        let mut level = vec![rule.root()];
        let mut out = vec![1];
        for _ in 1..n {
            level = level.iter().flat_map(|&l| rule.productions(l).unwrap()).collect();
            out.push(level.len() as u64);
        }
        out
    }

    #[test]
    fn roots() {
        assert_eq!(RuleId::Cat.root(), Label::Unary(1));
        assert_eq!(RuleId::SchWest.root(), Label::Unary(2));
        assert_eq!(RuleId::Bax.root(), b(1, 1));
        assert_eq!(RuleId::NewSch.root(), b(1, 1));
        assert_eq!(RuleId::Skinny(3).root(), b(1, 1));
        assert_eq!(RuleId::RowRestricted(2).root(), b(1, 1));
    }

    #[test]
    fn production_examples() {
        assert_eq!(RuleId::Bax.productions(b(2, 2)).unwrap(), vec![b(1, 3), b(2, 3), b(3, 1), b(3, 2)]);
        assert_eq!(RuleId::NewSch.productions(b(1, 1)).unwrap(), vec![b(1, 2), b(2, 1)]);
        assert_eq!(
            RuleId::Skinny(0).productions(b(3, 4)).unwrap(),
            vec![b(1, 5), b(2, 5), b(3, 5), b(1, 1), b(1, 2), b(1, 3), b(4, 4)]
        );
        assert_eq!(RuleId::Cat.productions(Label::Unary(3)).unwrap(), (1..=4).map(Label::Unary).collect::<Vec<_>>());
        assert_eq!(
            RuleId::SchWest.productions(Label::Unary(4)).unwrap(),
            vec![Label::Unary(3), Label::Unary(4), Label::Unary(5), Label::Unary(5)]
        );
        // h >= m: the column productions are capped at m + 1
        assert_eq!(
            RuleId::Skinny(2).productions(b(4, 3)).unwrap(),
            vec![b(1, 4), b(2, 4), b(3, 4), b(4, 4), b(3, 1), b(3, 2), b(5, 3)]
        );
        // h < m: like Bax
        assert_eq!(RuleId::Skinny(5).productions(b(2, 2)).unwrap(), RuleId::Bax.productions(b(2, 2)).unwrap());
        assert_eq!(RuleId::RowRestricted(2).productions(b(2, 2)).unwrap(), vec![b(1, 3), b(2, 3), b(2, 1), b(2, 2)]);
    }

    #[test]
    fn arity_mismatch() {
        assert!(matches!(RuleId::Bax.productions(Label::Unary(2)), Err(Error::ArityMismatch { .. })));
        assert!(matches!(RuleId::Cat.productions(b(1, 1)), Err(Error::ArityMismatch { .. })));
        assert!(RuleId::RowRestricted(0).productions(b(1, 1)).is_err());
    }

    #[test]
    fn production_lengths_match_closed_forms() {
        let rules = [
            RuleId::Cat,
            RuleId::SchWest,
            RuleId::NewSch,
            RuleId::Bax,
            RuleId::Skinny(0),
            RuleId::Skinny(2),
            RuleId::RowRestricted(1),
            RuleId::RowRestricted(3),
        ];
        for rule in rules {
            for label in reachable_labels(&rule, 10).unwrap() {
                let n = rule.productions(label).unwrap().len() as u64;
                let want = match (rule, label) {
                    (RuleId::Cat, Label::Unary(k)) => k + 1,
                    (RuleId::SchWest, Label::Unary(j)) => j,
                    (_, Label::Binary(h, k)) => h + k,
                    _ => unreachable!(),
                };
                assert_eq!(n, want, "{rule} {label}");
            }
        }
    }

    #[test]
    fn level_count_examples() {
        assert_eq!(level_counts_u64(&RuleId::Bax, 5).unwrap(), vec![1, 2, 6, 22, 92]);
        assert_eq!(level_counts_u64(&RuleId::Skinny(0), 6).unwrap(), vec![1, 2, 6, 21, 80, 322]);
        assert_eq!(level_counts_u64(&RuleId::Cat, 5).unwrap(), vec![1, 2, 5, 14, 42]);
        assert_eq!(level_counts_u64(&RuleId::RowRestricted(3), 6).unwrap(), vec![1, 2, 6, 22, 91, 405]);
        assert!(level_counts(&RuleId::Cat, 0).unwrap().is_empty());
    }

    #[test]
    fn dp_matches_explicit_expansion() {
        for rule in [RuleId::Cat, RuleId::Bax, RuleId::NewSch, RuleId::Skinny(0), RuleId::RowRestricted(2)] {
            assert_eq!(level_counts_u64(&rule, 8).unwrap(), explicit_tree_counts(rule, 8), "{rule}");
        }
    }

    #[test]
    fn rule_coincidences() {
        let c = |r: RuleId, n| level_counts(&r, n).unwrap();
        assert_eq!(c(RuleId::NewSch, 12), c(RuleId::SchWest, 12));
        assert_eq!(c(RuleId::Skinny(1), 12), c(RuleId::NewSch, 12));
        assert_eq!(c(RuleId::RowRestricted(1), 12), c(RuleId::Cat, 12));
        assert_eq!(c(RuleId::Skinny(0), 14), c(RuleId::RowRestricted(2), 14));
        let (cat, sch, bax) = (c(RuleId::Cat, 14), c(RuleId::NewSch, 14), c(RuleId::Bax, 14));
        for n in 0..14 {
            assert!(cat[n] <= sch[n] && sch[n] <= bax[n]);
        }
    }

    #[test]
    fn isomorphism_checks() {
        assert!(check_newsch_sch_isomorphism(1).unwrap());
        assert!(check_newsch_sch_isomorphism(8).unwrap());
    }

    struct Corrupted;
    impl SuccessionRule for Corrupted {
        fn root(&self) -> Label {
            b(1, 1)
        }
        fn productions(&self, label: Label) -> Result<Vec<Label>> {
            let mut p = RuleId::NewSch.productions(label)?;
            if let (Label::Binary(h, k), Some(last)) = (label, p.last_mut()) {
                if h + k >= 4 {
                    *last = b(h + 2, k);
                }
            }
            Ok(p)
        }
    }

    #[test]
    fn corrupted_rule_fails_isomorphism() {
        let collapse = |l: Label| Label::Unary(l.weight());
        assert!(!check_collapse(&Corrupted, &RuleId::SchWest, 6, collapse).unwrap());
        assert!(!embed_into_bax(&Corrupted, 6).unwrap().ok);
    }

    #[test]
    fn embedding() {
        assert!(check_sch_in_bax_embedding(1).unwrap());
        assert!(check_sch_in_bax_embedding(3).unwrap());
        let rep = embed_into_bax(&RuleId::NewSch, 7).unwrap();
        assert!(rep.ok);
        let sch: Vec<usize> = level_counts_u64(&RuleId::NewSch, 7).unwrap().into_iter().map(|c| c as usize).collect();
        assert_eq!(rep.image_level_sizes, sch);
        assert_eq!(bax_paths_outside_canonical_subtree(5).unwrap().len(), 2);
        assert!(bax_paths_outside_canonical_subtree(4).unwrap().is_empty());
    }
}
