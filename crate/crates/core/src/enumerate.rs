//! Level-by-level generation of every family, in generating-tree order.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::floorplan::{children_pfp, children_schroeder_pfp, is_catalan_pfp, PackedFloorplan};
use crate::nilp::{is_schroeder_triple, slicing_to_nilp, NilpTriple};
use crate::perm::{children_baxter, children_s, Permutation};
use crate::polyomino::{children, BaxterSlicing};
use crate::rules::{level_counts, RuleId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// Catalan slicings (all horizontal blocks of width 1).
    Cat,
    /// Schröder slicings.
    Sch,
    Bax,
    Skinny(u64),
    RowRestricted(u64),
    /// The Schröder permutation class S.
    PermS,
    PermBax,
    Pfp,
    SchPfp,
    CatPfp,
    Nilp,
    SchNilp,
}

pub const FAMILY_NAMES: &str = "cat|sch|bax|skinny:m|rowres:m|perm-s|perm-bax|pfp|sch-pfp|cat-pfp|nilp|sch-nilp";

impl Family {
    /// The succession rule whose level counts give this family's counts.
    pub fn rule(self) -> RuleId {
        match self {
            Family::Cat | Family::CatPfp => RuleId::Cat,
            Family::Sch | Family::PermS | Family::SchPfp | Family::SchNilp => RuleId::NewSch,
            Family::Bax | Family::PermBax | Family::Pfp | Family::Nilp => RuleId::Bax,
            Family::Skinny(m) => RuleId::Skinny(m),
            Family::RowRestricted(m) => RuleId::RowRestricted(m),
        }
    }

    /// The rule driving slicing growth, for slicing families.
    fn slicing_rule(self) -> Option<RuleId> {
        match self {
            Family::Cat => Some(RuleId::RowRestricted(1)),
            Family::Sch => Some(RuleId::NewSch),
            Family::Bax | Family::Nilp | Family::SchNilp => Some(RuleId::Bax),
            Family::Skinny(m) => Some(RuleId::Skinny(m)),
            Family::RowRestricted(m) => Some(RuleId::RowRestricted(m)),
            _ => None,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Cat => write!(f, "cat"),
            Family::Sch => write!(f, "sch"),
            Family::Bax => write!(f, "bax"),
            Family::Skinny(m) => write!(f, "skinny:{m}"),
            Family::RowRestricted(m) => write!(f, "rowres:{m}"),
            Family::PermS => write!(f, "perm-s"),
            Family::PermBax => write!(f, "perm-bax"),
            Family::Pfp => write!(f, "pfp"),
            Family::SchPfp => write!(f, "sch-pfp"),
            Family::CatPfp => write!(f, "cat-pfp"),
            Family::Nilp => write!(f, "nilp"),
            Family::SchNilp => write!(f, "sch-nilp"),
        }
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("unknown family {s:?}, expected one of {FAMILY_NAMES}"));
        let fam = match s {
            "cat" => Family::Cat,
            "sch" => Family::Sch,
            "bax" => Family::Bax,
            "perm-s" => Family::PermS,
            "perm-bax" => Family::PermBax,
            "pfp" => Family::Pfp,
            "sch-pfp" => Family::SchPfp,
            "cat-pfp" => Family::CatPfp,
            "nilp" => Family::Nilp,
            "sch-nilp" => Family::SchNilp,
            _ => match s.split_once(':') {
                Some(("skinny", m)) => Family::Skinny(m.parse().map_err(|_| bad())?),
                Some(("rowres", m)) => Family::RowRestricted(m.parse().map_err(|_| bad())?),
                _ => return Err(bad()),
            },
        };
        fam.rule().validate()?;
        Ok(fam)
    }
}

/// One enumerated object.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Object {
    Slicing(BaxterSlicing),
    Permutation(Permutation),
    Floorplan(PackedFloorplan),
    Triple(NilpTriple),
}

impl Object {
    pub fn to_json(&self) -> String {
        match self {
            Object::Slicing(s) => s.to_json(),
            Object::Permutation(p) => serde_json::to_string(p).expect("serializable"),
            Object::Floorplan(f) => f.to_json(),
            Object::Triple(t) => t.to_json(),
        }
    }
}

/// Expands a level in parallel; the output keeps the order of the parents.
fn grow<T, F>(roots: Vec<T>, n: usize, f: F) -> Result<Vec<T>>
where
    T: Send + Sync,
    F: Fn(&T) -> Result<Vec<T>> + Sync,
{
    let mut level = roots;
    for _ in 1..n {
        let next: Vec<Vec<T>> = level.par_iter().map(&f).collect::<Result<_>>()?;
        level = next.into_iter().flatten().collect();
    }
    Ok(level)
}

/// Slicings of size `n` grown by the rule's children, in tree order.
pub fn slicings(rule: RuleId, n: usize) -> Result<Vec<BaxterSlicing>> {
    if n == 0 {
        return Ok(Vec::new());
    }
    grow(vec![BaxterSlicing::unit()], n, |s| children(s, rule))
}

/// All objects of size `n ≥ 1`, in generating-tree order.
pub fn enumerate(family: Family, n: usize) -> Result<Vec<Object>> {
    if n == 0 {
        return Ok(Vec::new());
    }
    if let Some(rule) = family.slicing_rule() {
        let level = slicings(rule, n)?;
        return Ok(match family {
            Family::Nilp => level.par_iter().map(|s| Object::Triple(slicing_to_nilp(s))).collect(),
            Family::SchNilp => level
                .par_iter()
                .map(slicing_to_nilp)
                .filter(|t| is_schroeder_triple(t).unwrap_or(false))
                .map(Object::Triple)
                .collect(),
            _ => level.into_iter().map(Object::Slicing).collect(),
        });
    }
    let one = Permutation::identity(1);
    Ok(match family {
        Family::PermS => grow(vec![one], n, children_s)?.into_iter().map(Object::Permutation).collect(),
        Family::PermBax => {
            grow(vec![one], n, |p| Ok(children_baxter(p)))?.into_iter().map(Object::Permutation).collect()
        }
        Family::Pfp => grow(vec![PackedFloorplan::single()], n, |f| Ok(children_pfp(f)))?
            .into_iter()
            .map(Object::Floorplan)
            .collect(),
        Family::SchPfp => grow(vec![PackedFloorplan::single()], n, children_schroeder_pfp)?
            .into_iter()
            .map(Object::Floorplan)
            .collect(),
        Family::CatPfp => grow(vec![PackedFloorplan::single()], n, |f| Ok(children_pfp(f)))?
            .into_par_iter()
            .filter(is_catalan_pfp)
            .map(Object::Floorplan)
            .collect(),
        _ => unreachable!("slicing families handled above"),
    })
}

/// Object counts for sizes `1..=n`.
pub fn object_counts(family: Family, n: usize) -> Result<Vec<u64>> {
    (1..=n).map(|k| enumerate(family, k).map(|v| v.len() as u64)).collect()
}

/// Rule counts for sizes `1..=n`.
pub fn rule_counts(family: Family, n: usize) -> Result<Vec<BigUint>> {
    level_counts(&family.rule(), n)
}
