//! Baxter permutations, the class S cut out by two bivincular patterns, and
//! growth by insertion of a new maximum.

use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Permutation {
    values: Vec<u32>,
}

impl TryFrom<Vec<u32>> for Permutation {
    type Error = Error;
    fn try_from(values: Vec<u32>) -> Result<Self> {
        Self::new(values)
    }
}

impl From<Permutation> for Vec<u32> {
    fn from(p: Permutation) -> Self {
        p.values
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.len() <= 9 {
            write!(f, "{}", self.values.iter().join(""))
        } else {
            write!(f, "{}", self.values.iter().join(","))
        }
    }
}

impl std::str::FromStr for Permutation {
    type Err = Error;
    /// Digit strings (`2413`) or comma-separated values (`10,2,...`).
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidPermutation(s.to_string());
        let values = if s.contains(',') {
            s.split(',').map(|v| v.trim().parse().map_err(|_| bad())).collect::<Result<Vec<u32>>>()?
        } else {
            s.chars().map(|c| c.to_digit(10).ok_or_else(bad)).collect::<Result<Vec<u32>>>()?
        };
        Self::new(values)
    }
}

/// The two bivincular patterns excluded from S.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bivincular {
    P41323,
    P42313,
}

impl Permutation {
    pub fn new(values: Vec<u32>) -> Result<Self> {
        let n = values.len() as u32;
        let mut seen = vec![false; values.len()];
        for &v in &values {
            if v == 0 || v > n || std::mem::replace(&mut seen[v as usize - 1], true) {
                return Err(Error::InvalidPermutation(format!("{values:?}")));
            }
        }
        Ok(Permutation { values })
    }

    pub fn identity(n: u32) -> Self {
        Permutation { values: (1..=n).collect() }
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// All permutations of size `n` in lexicographic order.
    pub fn all(n: u32) -> impl Iterator<Item = Permutation> {
        (1..=n).permutations(n as usize).map(|values| Permutation { values })
    }

    /// Inserts `n + 1` at `site`, the gap before position `site`.
    pub fn insert_max(&self, site: usize) -> Permutation {
        let mut values = self.values.clone();
        values.insert(site, self.len() as u32 + 1);
        Permutation { values }
    }

    /// The permutation with its maximum removed.
    pub fn remove_max(&self) -> Permutation {
        let n = self.len() as u32;
        Permutation { values: self.values.iter().copied().filter(|&v| v != n).collect() }
    }

    /// Positions of left-to-right maxima, from the left.
    pub fn lr_maxima(&self) -> Vec<usize> {
        let mut best = 0;
        let mut out = Vec::new();
        for (i, &v) in self.values.iter().enumerate() {
            if v > best {
                best = v;
                out.push(i);
            }
        }
        out
    }

    /// Positions of right-to-left maxima, from the right.
    pub fn rl_maxima(&self) -> Vec<usize> {
        let mut best = 0;
        let mut out = Vec::new();
        for (i, &v) in self.values.iter().enumerate().rev() {
            if v > best {
                best = v;
                out.push(i);
            }
        }
        out
    }
}

pub fn is_baxter(p: &Permutation) -> bool {
    let s = &p.values;
    let n = s.len();
    for j in 0..n.saturating_sub(1) {
        let (a, b) = (s[j], s[j + 1]);
        let (lo, hi) = (a.min(b), a.max(b));
        for i in 0..j {
            if !(lo < s[i] && s[i] < hi) {
                continue;
            }
            for &sk in &s[j + 2..] {
                // 2-41-3 when descending, 3-14-2 when ascending
                if (a > b && s[i] < sk && sk < a) || (a < b && b > s[i] && sk < s[i] && sk > a) {
                    return false;
                }
            }
        }
    }
    true
}

pub fn contains_bivincular(p: &Permutation, which: Bivincular) -> bool {
    let s = &p.values;
    (0..s.len()).combinations(5).any(|ix| {
        let [i, j, k, l, m] = [s[ix[0]], s[ix[1]], s[ix[2]], s[ix[3]], s[ix[4]]];
        let shape = match which {
            Bivincular::P41323 => j < l && l < k,
            Bivincular::P42313 => l < j && j < k,
        };
        shape && m == k + 1 && m < i
    })
}

pub fn in_class_s(p: &Permutation) -> bool {
    is_baxter(p) && !contains_bivincular(p, Bivincular::P41323) && !contains_bivincular(p, Bivincular::P42313)
}

/// Active sites of a member of S: `(left, right)`. Left sites precede
/// qualifying left-to-right maxima and are listed from the left; right sites
/// follow right-to-left maxima and are listed from the right end.
pub fn active_sites_s(p: &Permutation) -> Result<(Vec<usize>, Vec<usize>)> {
    if !in_class_s(p) {
        return Err(Error::NotInS);
    }
    if p.is_empty() {
        return Ok((vec![0], vec![0]));
    }
    let s = &p.values;
    let left = p
        .lr_maxima()
        .into_iter()
        .filter(|&i| {
            let rest = &s[i + 1..];
            !(0..rest.len()).any(|a| {
                rest[a] > s[i]
                    && (a + 1..rest.len()).any(|b| rest[b] < rest[a] && rest[b + 1..].contains(&(rest[a] + 1)))
            })
        })
        .collect();
    let right = p.rl_maxima().into_iter().map(|i| i + 1).collect();
    Ok((left, right))
}

/// Children in S: insertions at left sites, then at right sites.
pub fn children_s(p: &Permutation) -> Result<Vec<Permutation>> {
    let (left, right) = active_sites_s(p)?;
    Ok(left.into_iter().chain(right).map(|site| p.insert_max(site)).collect())
}

/// Baxter children by insertion of a maximum left of a left-to-right maximum
/// (from the left) or right of a right-to-left maximum (from the right).
pub fn children_baxter(p: &Permutation) -> Vec<Permutation> {
    let left = p.lr_maxima();
    let right = p.rl_maxima().into_iter().map(|i| i + 1);
    left.into_iter().chain(right).map(|site| p.insert_max(site)).collect()
}

/// The Baxter permutation reached by following production indices of the
/// Bax rule from the root `1`.
pub fn baxter_from_bax_path(path: &[usize]) -> Result<Permutation> {
    let mut p = Permutation::identity(1);
    for (step, &i) in path.iter().enumerate() {
        let kids = children_baxter(&p);
        p = kids.get(i).cloned().ok_or(Error::IllegalMove(step))?;
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rules::{bax_paths_outside_canonical_subtree, level_counts_u64, Label, RuleId, SuccessionRule};
    use std::collections::BTreeSet;

    fn perm(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn parsing_and_display() {
        assert_eq!(perm("2413").values(), &[2, 4, 1, 3]);
        assert_eq!(perm("2413").to_string(), "2413");
        let big = Permutation::identity(10);
        assert_eq!(big.to_string(), "1,2,3,4,5,6,7,8,9,10");
        assert_eq!(big.to_string().parse::<Permutation>().unwrap(), big);
        assert!("1224".parse::<Permutation>().is_err());
        assert!("1x".parse::<Permutation>().is_err());
        assert_eq!(serde_json::to_string(&perm("312")).unwrap(), "[3,1,2]");
        assert!(serde_json::from_str::<Permutation>("[1,3]").is_err());
    }

    #[test]
    fn baxter_examples() {
        assert!(is_baxter(&perm("1")));
        assert!(Permutation::all(3).all(|p| is_baxter(&p)));
        assert!(!is_baxter(&perm("2413")));
        assert!(!is_baxter(&perm("3142")));
        assert!(is_baxter(&perm("2143")));
        assert_eq!(Permutation::all(5).filter(is_baxter).count(), 92);
    }

    #[test]
    fn baxter_counts_brute_force() {
        let bax = level_counts_u64(&RuleId::Bax, 8).unwrap();
        for n in 1..=8u32 {
            assert_eq!(Permutation::all(n).filter(is_baxter).count() as u64, bax[n as usize - 1]);
        }
    }

    #[test]
    fn bivincular_examples() {
        assert!(contains_bivincular(&perm("51324"), Bivincular::P41323));
        assert!(!contains_bivincular(&perm("51324"), Bivincular::P42313));
        assert!(contains_bivincular(&perm("52314"), Bivincular::P42313));
        assert!(Permutation::all(4)
            .all(|p| !contains_bivincular(&p, Bivincular::P41323) && !contains_bivincular(&p, Bivincular::P42313)));
        let outside: Vec<_> = Permutation::all(5).filter(|p| is_baxter(p) && !in_class_s(p)).collect();
        assert_eq!(outside, vec![perm("51324"), perm("52314")]);
        assert!(in_class_s(&perm("12345")));
    }

    #[test]
    fn class_s_counts_brute_force() {
        let sch = level_counts_u64(&RuleId::NewSch, 8).unwrap();
        for n in 1..=8u32 {
            let members: Vec<_> = Permutation::all(n).filter(in_class_s).collect();
            assert_eq!(members.len() as u64, sch[n as usize - 1]);
            for p in members.iter().filter(|p| p.len() > 1) {
                assert!(in_class_s(&p.remove_max()));
            }
        }
    }

    #[test]
    fn growth_of_s() {
        let root = perm("1");
        let (l, r) = active_sites_s(&root).unwrap();
        assert_eq!((l.len(), r.len()), (1, 1));
        assert_eq!(children_s(&root).unwrap(), vec![perm("21"), perm("12")]);
        assert_eq!(children_s(&perm("2413")), Err(Error::NotInS));

        let sch = level_counts_u64(&RuleId::NewSch, 9).unwrap();
        let mut level = vec![root];
        for n in 1..=9usize {
            assert_eq!(level.len() as u64, sch[n - 1]);
            if n <= 8 {
                let grown: BTreeSet<_> = level.iter().cloned().collect();
                let filtered: BTreeSet<_> = Permutation::all(n as u32).filter(in_class_s).collect();
                assert_eq!(grown, filtered);
            }
            if n == 9 {
                break;
            }
            let mut next = Vec::new();
            for p in &level {
                let (l, r) = active_sites_s(p).unwrap();
                let label = Label::Binary(l.len() as u64, r.len() as u64);
                let kids = children_s(p).unwrap();
                if n <= 7 {
                    let expected = RuleId::NewSch.productions(label).unwrap();
                    let got: Vec<_> = kids
                        .iter()
                        .map(|c| {
                            let (l, r) = active_sites_s(c).unwrap();
                            Label::Binary(l.len() as u64, r.len() as u64)
                        })
                        .collect();
                    assert_eq!(got, expected, "{p}");
                    let ours: BTreeSet<_> = l.iter().chain(&r).copied().collect();
                    for site in p.lr_maxima().into_iter().chain(p.rl_maxima().into_iter().map(|i| i + 1)) {
                        assert_eq!(in_class_s(&p.insert_max(site)), ours.contains(&site), "{p} at {site}");
                    }
                }
                next.extend(kids);
            }
            level = next;
        }
    }

    #[test]
    fn baxter_tree_paths() {
        let outside: BTreeSet<_> = bax_paths_outside_canonical_subtree(5)
            .unwrap()
            .iter()
            .map(|path| baxter_from_bax_path(path).unwrap())
            .collect();
        assert_eq!(outside, BTreeSet::from([perm("13254"), perm("23154")]));
        let all: BTreeSet<_> = crate::rules::tree_paths(&RuleId::Bax, 6)
            .unwrap()
            .iter()
            .map(|(_, path)| baxter_from_bax_path(path).unwrap())
            .collect();
        let brute: BTreeSet<_> = Permutation::all(6).filter(is_baxter).collect();
        assert_eq!(all, brute);
    }
}
