//! Named end-to-end checks, grouped in suites. Every check can also run on a
//! deliberately corrupted input, where it must fail.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::enumerate::{enumerate, object_counts, slicings, Family, Object};
use crate::error::{Error, Result};
use crate::floorplan::has_schroeder_forbidden_config;
use crate::nilp::{all_triples, is_schroeder_triple, nilp_to_slicing, slicing_to_nilp, NilpTriple};
use crate::perm::{baxter_from_bax_path, children_s, in_class_s, is_baxter, Permutation};
use crate::polyomino::{count_slicings_of_shape, is_member, BaxterSlicing, Move, ParallelogramPolyomino};
use crate::rules::{
    bax_paths_outside_canonical_subtree, check_collapse, check_newsch_sch_isomorphism, embed_into_bax,
    level_counts_u64, Label, RuleId,
};
use crate::series::{
    a106228_cubic, catalan_quadratic, catalan_series, check_algebraic, check_cofactors, check_cofactors_with,
    check_det_recurrences, check_det_recurrences_with, kernel_numerator, one_plus, perturbed_kernel_matrix, rr2_cubic,
    rr2_rearranged, rr3_cubic, rr_components, schroeder_quadratic, schroeder_series, sk2_quintic, solve_system,
    verify_kernel_root, verify_kernel_solution_consistency, verify_kernel_solution_consistency_with, Poly2, SystemId,
    TruncatedSeries, Var, PRINTED_ROOTS,
};

pub const BAXTER: [u64; 8] = [1, 2, 6, 22, 92, 422, 2074, 10754];
pub const SCHROEDER: [u64; 7] = [1, 2, 6, 22, 90, 394, 1806];
pub const CATALAN: [u64; 9] = [1, 2, 5, 14, 42, 132, 429, 1430, 4862];
pub const ZERO_SKINNY: [u64; 6] = [1, 2, 6, 21, 80, 322];
pub const GF_3RR: [u64; 10] = [1, 2, 6, 22, 91, 405, 1893, 9163, 45531, 230902];
pub const GF_4RR: [u64; 10] = [1, 2, 6, 22, 92, 421, 2051, 10449, 55023, 297139];
pub const GF_5RR: [u64; 10] = [1, 2, 6, 22, 92, 422, 2073, 10724, 57716, 320312];
pub const GF_2SK: [u64; 10] = [1, 2, 6, 22, 92, 419, 2022, 10168, 52718, 279820];
pub const GF_3SK: [u64; 10] = [1, 2, 6, 22, 92, 422, 2070, 10668, 57061, 314061];

/// The printed series, with the system that produces each.
pub const PRINTED_SERIES: [(&str, SystemId, &[u64]); 6] = [
    ("0sk", SystemId::ZeroSkinny, &ZERO_SKINNY),
    ("rr3", SystemId::RowRestricted(3), &GF_3RR),
    ("rr4", SystemId::RowRestricted(4), &GF_4RR),
    ("rr5", SystemId::RowRestricted(5), &GF_5RR),
    ("sk2", SystemId::Skinny(2), &GF_2SK),
    ("sk3", SystemId::Skinny(3), &GF_3SK),
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    Rules,
    Bijections,
    Series,
    Kernel,
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Rules => "rules",
            Suite::Bijections => "bijections",
            Suite::Series => "series",
            Suite::Kernel => "kernel",
        })
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rules" => Ok(Suite::Rules),
            "bijections" => Ok(Suite::Bijections),
            "series" => Ok(Suite::Series),
            "kernel" => Ok(Suite::Kernel),
            _ => Err(Error::Parse(format!("unknown suite {s:?}"))),
        }
    }
}

/// Whether a check sees its genuine input or a corrupted one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Honest,
    Corrupt,
}

impl Mode {
    fn corrupt(self) -> bool {
        self == Mode::Corrupt
    }
}

pub struct Check {
    pub name: String,
    pub suite: Suite,
    run: Box<dyn Fn(Mode) -> Result<bool> + Send + Sync>,
}

impl Check {
    fn new(name: impl Into<String>, suite: Suite, run: impl Fn(Mode) -> Result<bool> + Send + Sync + 'static) -> Self {
        Check { name: name.into(), suite, run: Box::new(run) }
    }

    /// Errors count as failures.
    pub fn run(&self, mode: Mode) -> bool {
        (self.run)(mode).unwrap_or(false)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub name: String,
    pub suite: Suite,
    pub pass: bool,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CHECK {} {}", self.name, if self.pass { "PASS" } else { "FAIL" })
    }
}

/// Runs the checks of `suite` (all suites when `None`) in parallel; the
/// outcomes come back in registry order.
pub fn run_suite(suite: Option<Suite>, mode: Mode) -> Vec<Outcome> {
    registry()
        .into_par_iter()
        .filter(|c| suite.is_none_or(|s| s == c.suite))
        .map(|c| Outcome { pass: c.run(mode), name: c.name, suite: c.suite })
        .collect()
}

/// The last entry plus one.
fn bumped(v: &[u64]) -> Vec<u64> {
    let mut v = v.to_vec();
    if let Some(last) = v.last_mut() {
        *last += 1;
    }
    v
}

fn expected(v: &[u64], mode: Mode) -> Vec<u64> {
    if mode.corrupt() {
        bumped(v)
    } else {
        v.to_vec()
    }
}

fn series_tail(s: &TruncatedSeries) -> Option<Vec<u64>> {
    s.integer_coeffs()?.iter().skip(1).map(|c| u64::try_from(c).ok()).collect()
}

/// Adds one to the coefficient of `x^k`.
fn perturb(s: &TruncatedSeries, k: usize) -> TruncatedSeries {
    let mut s = s.clone();
    s.set_coeff(k, s.coeff(k) + num_rational::BigRational::from_integer(1.into()));
    s
}

fn perms(v: &[&str]) -> BTreeSet<Permutation> {
    v.iter().map(|s| s.parse().expect("literal permutation")).collect()
}

fn bax_slicings_upto(n: usize) -> Result<Vec<BaxterSlicing>> {
    let mut out = Vec::new();
    for k in 1..=n {
        out.extend(slicings(RuleId::Bax, k)?);
    }
    Ok(out)
}

fn binomial(n: u64, k: u64) -> BigUint {
    (0..k).fold(BigUint::from(1u32), |acc, i| acc * (n - i) / (i + 1))
}

fn rules_checks() -> Vec<Check> {
    vec![
        Check::new("skinny0-eq-rowres2-n14", Suite::Rules, |mode| {
            let other = if mode.corrupt() { RuleId::RowRestricted(3) } else { RuleId::RowRestricted(2) };
            Ok(level_counts_u64(&RuleId::Skinny(0), 14)? == level_counts_u64(&other, 14)?)
        }),
        Check::new("newsch-sch-collapse-d12", Suite::Rules, |mode| {
            if mode.corrupt() {
                check_collapse(&RuleId::Bax, &RuleId::SchWest, 12, |l| Label::Unary(l.weight()))
            } else {
                check_newsch_sch_isomorphism(12)
            }
        }),
        Check::new("sch-in-bax-embedding-d8", Suite::Rules, |mode| {
            let report = embed_into_bax(&RuleId::NewSch, 8)?;
            let sizes: Vec<u64> = report.image_level_sizes.iter().map(|&s| s as u64).collect();
            let rule = if mode.corrupt() { RuleId::Bax } else { RuleId::NewSch };
            Ok(report.ok && sizes == level_counts_u64(&rule, 8)?)
        }),
        Check::new("bax-complement-d5", Suite::Rules, |mode| {
            let got: BTreeSet<Permutation> = bax_paths_outside_canonical_subtree(5)?
                .iter()
                .map(|p| baxter_from_bax_path(p))
                .collect::<Result<_>>()?;
            let want = if mode.corrupt() { perms(&["51324", "52314"]) } else { perms(&["13254", "23154"]) };
            Ok(got == want)
        }),
        Check::new("rule-counts-baxter-n8", Suite::Rules, |mode| {
            Ok(level_counts_u64(&RuleId::Bax, 8)? == expected(&BAXTER, mode))
        }),
        Check::new("rule-counts-schroeder-n7", Suite::Rules, |mode| {
            let want = expected(&SCHROEDER, mode);
            Ok(level_counts_u64(&RuleId::NewSch, 7)? == want && level_counts_u64(&RuleId::SchWest, 7)? == want)
        }),
        Check::new("rule-counts-catalan-n9", Suite::Rules, |mode| {
            let want = expected(&CATALAN, mode);
            Ok(level_counts_u64(&RuleId::Cat, 9)? == want && level_counts_u64(&RuleId::RowRestricted(1), 9)? == want)
        }),
        Check::new("slicing-growth-eq-filter-n7", Suite::Rules, |mode| {
            let families = [
                RuleId::NewSch,
                RuleId::Skinny(0),
                RuleId::Skinny(2),
                RuleId::RowRestricted(1),
                RuleId::RowRestricted(3),
            ];
            for n in 1..=7 {
                let all = slicings(RuleId::Bax, n)?;
                for fam in families {
                    let filter_rule = match (mode, fam) {
                        (Mode::Corrupt, RuleId::RowRestricted(m)) => RuleId::RowRestricted(m + 1),
                        _ => fam,
                    };
                    let grown: BTreeSet<_> = slicings(fam, n)?.into_iter().map(|s| s.moves().to_vec()).collect();
                    let filtered: BTreeSet<_> =
                        all.iter().filter(|s| is_member(s, filter_rule)).map(|s| s.moves().to_vec()).collect();
                    if grown != filtered {
                        return Ok(false);
                    }
                }
            }
            Ok(true)
        }),
    ]
}

fn bijection_checks() -> Vec<Check> {
    vec![
        Check::new("nilp-roundtrip-n7", Suite::Bijections, |mode| {
            let all = bax_slicings_upto(7)?;
            Ok(all.par_iter().all(|s| {
                let mut t = slicing_to_nilp(s);
                if mode.corrupt() {
                    t = NilpTriple { u: t.d.clone(), d: t.u.clone(), ..t };
                }
                t.validate().is_ok() && nilp_to_slicing(&t).is_ok_and(|back| &back == s)
            }))
        }),
        Check::new("nilp-bijective-n7", Suite::Bijections, |mode| {
            for n in 1..=7 {
                let mut images: Vec<_> = slicings(RuleId::Bax, n)?.iter().map(slicing_to_nilp).collect();
                if mode.corrupt() {
                    images.pop();
                }
                images.sort();
                let triples = all_triples(n);
                if images != triples {
                    return Ok(false);
                }
            }
            Ok(true)
        }),
        Check::new("schroeder-triple-eq-skinny1-n7", Suite::Bijections, |mode| {
            let family = if mode.corrupt() { RuleId::Skinny(2) } else { RuleId::Skinny(1) };
            let all = bax_slicings_upto(7)?;
            Ok(all
                .par_iter()
                .all(|s| is_schroeder_triple(&slicing_to_nilp(s)).is_ok_and(|b| b == is_member(s, family))))
        }),
        Check::new("perm-s-growth-eq-filter-n7", Suite::Bijections, |mode| {
            let mut level = vec![Permutation::identity(1)];
            for n in 1..=7u32 {
                if n > 1 {
                    level = level.iter().map(children_s).collect::<Result<Vec<_>>>()?.concat();
                }
                let grown: BTreeSet<_> = level.iter().cloned().collect();
                let filtered: BTreeSet<_> =
                    Permutation::all(n).filter(|p| if mode.corrupt() { is_baxter(p) } else { in_class_s(p) }).collect();
                if grown.len() != level.len() || grown != filtered {
                    return Ok(false);
                }
            }
            Ok(true)
        }),
        Check::new("perm-s-size5-excluded", Suite::Bijections, |mode| {
            let got: BTreeSet<_> = Permutation::all(5).filter(|p| is_baxter(p) && !in_class_s(p)).collect();
            let want = if mode.corrupt() { perms(&["13254", "23154"]) } else { perms(&["51324", "52314"]) };
            Ok(got == want)
        }),
        Check::new("family-counts-baxter-n8", Suite::Bijections, |mode| {
            let want = expected(&BAXTER, mode);
            for fam in [Family::Bax, Family::Nilp, Family::PermBax, Family::Pfp] {
                if object_counts(fam, 8)? != want {
                    return Ok(false);
                }
            }
            Ok((1..=8).map(|n| Permutation::all(n).filter(is_baxter).count() as u64).collect::<Vec<_>>() == want)
        }),
        Check::new("family-counts-schroeder-n7", Suite::Bijections, |mode| {
            let want = expected(&SCHROEDER, mode);
            for fam in [Family::Sch, Family::SchNilp, Family::PermS, Family::SchPfp] {
                if object_counts(fam, 7)? != want {
                    return Ok(false);
                }
            }
            Ok(true)
        }),
        Check::new("family-counts-catalan-n9", Suite::Bijections, |mode| {
            let want = expected(&CATALAN, mode);
            Ok(object_counts(Family::CatPfp, 9)? == want && object_counts(Family::RowRestricted(1), 9)? == want)
        }),
        Check::new("sch-pfp-forbidden-size5", Suite::Bijections, |mode| {
            let bad = enumerate(Family::Pfp, 5)?
                .into_iter()
                .filter(|o| matches!(o, Object::Floorplan(f) if has_schroeder_forbidden_config(f)))
                .count();
            Ok(bad == if mode.corrupt() { 0 } else { 2 })
        }),
        Check::new("rowres3-rejects-wide-row", Suite::Bijections, |mode| {
            let s = BaxterSlicing::from_moves(&[Move::Col(1), Move::Col(1), Move::Col(1), Move::Row(4)])?;
            let m = if mode.corrupt() { 4 } else { 3 };
            Ok(s.size() == 5 && !is_member(&s, RuleId::RowRestricted(m)))
        }),
        Check::new("rectangles-k8", Suite::Bijections, |mode| {
            let shift = u64::from(mode.corrupt());
            Ok((1..=8u32).all(|k| {
                (1..=8u32).all(|l| {
                    count_slicings_of_shape(&ParallelogramPolyomino::rectangle(k, l))
                        == binomial((k + l - 2) as u64 + shift, (l - 1) as u64)
                })
            }))
        }),
        Check::new("snakes-n10", Suite::Bijections, |mode| {
            let want = BigUint::from(1u32 + u32::from(mode.corrupt()));
            Ok((1..=10).all(|n| {
                ParallelogramPolyomino::all_of_size(n)
                    .iter()
                    .filter(|s| s.is_snake())
                    .all(|s| count_slicings_of_shape(s) == want)
            }))
        }),
    ]
}

fn series_checks() -> Vec<Check> {
    let mut checks: Vec<Check> = PRINTED_SERIES
        .iter()
        .map(|&(tag, sys, printed)| {
            Check::new(format!("series-{tag}-printed"), Suite::Series, move |mode| {
                let got = series_tail(&solve_system(sys, printed.len())?);
                Ok(got == Some(expected(printed, mode)))
            })
        })
        .collect();
    checks.push(Check::new("series-eq-rules-n20", Suite::Series, |mode| {
        let systems = [
            SystemId::ZeroSkinny,
            SystemId::Skinny(2),
            SystemId::Skinny(3),
            SystemId::RowRestricted(2),
            SystemId::RowRestricted(3),
            SystemId::RowRestricted(4),
            SystemId::RowRestricted(5),
        ];
        for sys in systems {
            let rule = match (mode, sys) {
                (Mode::Corrupt, SystemId::RowRestricted(m)) => RuleId::RowRestricted(m as u64 + 1),
                _ => sys.rule(),
            };
            if series_tail(&solve_system(sys, 20)?) != Some(level_counts_u64(&rule, 20)?) {
                return Ok(false);
            }
        }
        Ok(true)
    }));
    checks.push(Check::new("series-eq-objects-n8", Suite::Series, |mode| {
        let pairs = [
            (SystemId::ZeroSkinny, Family::Skinny(0)),
            (SystemId::Skinny(2), Family::Skinny(2)),
            (SystemId::Skinny(3), Family::Skinny(3)),
            (SystemId::RowRestricted(2), Family::RowRestricted(2)),
            (SystemId::RowRestricted(3), Family::RowRestricted(3)),
            (SystemId::RowRestricted(4), Family::RowRestricted(4)),
            (SystemId::RowRestricted(5), Family::RowRestricted(5)),
        ];
        for (sys, fam) in pairs {
            let fam = match (mode, fam) {
                (Mode::Corrupt, Family::Skinny(m)) => Family::Skinny(m + 1),
                _ => fam,
            };
            if series_tail(&solve_system(sys, 8)?) != Some(object_counts(fam, 8)?) {
                return Ok(false);
            }
        }
        Ok(true)
    }));
    checks.push(Check::new("zero-skinny-eq-rowres2-series-n20", Suite::Series, |mode| {
        let other = if mode.corrupt() { SystemId::RowRestricted(3) } else { SystemId::RowRestricted(2) };
        Ok(solve_system(SystemId::ZeroSkinny, 20)? == solve_system(other, 20)?)
    }));
    type Alg = (&'static str, fn() -> Poly2, fn() -> Result<TruncatedSeries>);
    let algebraic: [Alg; 7] = [
        ("alg-rr2-cubic-n12", rr2_cubic, || solve_system(SystemId::RowRestricted(2), 12)),
        ("alg-rr2-rearranged-n12", rr2_rearranged, || solve_system(SystemId::RowRestricted(2), 12)),
        ("alg-a106228-n12", a106228_cubic, || Ok(one_plus(&solve_system(SystemId::RowRestricted(2), 12)?))),
        ("alg-rr3-cubic-n12", rr3_cubic, || solve_system(SystemId::RowRestricted(3), 12)),
        ("alg-sk2-quintic-n12", sk2_quintic, || solve_system(SystemId::Skinny(2), 12)),
        ("alg-catalan-n12", catalan_quadratic, || catalan_series(12)),
        ("alg-schroeder-n12", schroeder_quadratic, || schroeder_series(12)),
    ];
    for (name, poly, series) in algebraic {
        checks.push(Check::new(name, Suite::Series, move |mode| {
            let f = series()?;
            let f = if mode.corrupt() { perturb(&f, 6) } else { f };
            Ok(check_algebraic(&poly(), &f))
        }));
    }
    checks
}

fn kernel_checks() -> Vec<Check> {
    let mut checks = vec![
        Check::new("det-k1-k2", Suite::Kernel, |mode| {
            Ok(if mode.corrupt() {
                check_det_recurrences_with(2, perturbed_kernel_matrix)
            } else {
                check_det_recurrences(2)
            })
        }),
        Check::new("det-rec-m5", Suite::Kernel, |mode| {
            Ok(if mode.corrupt() {
                check_det_recurrences_with(5, perturbed_kernel_matrix)
            } else {
                check_det_recurrences(5)
            })
        }),
        Check::new("det-rec-m8", Suite::Kernel, |mode| {
            Ok(if mode.corrupt() {
                check_det_recurrences_with(8, perturbed_kernel_matrix)
            } else {
                check_det_recurrences(8)
            })
        }),
        Check::new("cofactors-m6", Suite::Kernel, |mode| {
            Ok(if mode.corrupt() { check_cofactors_with(6, perturbed_kernel_matrix) } else { check_cofactors(6) })
        }),
        Check::new("numerator-at-zero-m5", Suite::Kernel, |mode| {
            let extra = u32::from(mode.corrupt());
            let one_minus_v = Poly2::from_terms(&[(1, 0, 0), (-1, 0, 1)]);
            for m in 3..=5usize {
                let at_zero = kernel_numerator(m)?.eval(Var::X, &num_rational::BigRational::from_integer(0.into()));
                if at_zero != one_minus_v.pow(m as u32 - 2 + extra) {
                    return Ok(false);
                }
            }
            Ok(true)
        }),
    ];
    for (m, idx, coeffs) in PRINTED_ROOTS {
        checks.push(Check::new(format!("kernel-root-m{m}-{idx}"), Suite::Kernel, move |mode| {
            let mut c: Vec<i64> = coeffs.to_vec();
            if mode.corrupt() {
                c[2] += 1;
            }
            let c: Vec<_> = c.into_iter().map(|k| num_rational::BigRational::from_integer(k.into())).collect();
            verify_kernel_root(m, &c)
        }));
    }
    checks.push(Check::new("kernel-consistency-m3-n10", Suite::Kernel, |mode| {
        if !mode.corrupt() {
            return verify_kernel_solution_consistency(3, 10);
        }
        let h = rr_components(3, 10)?;
        verify_kernel_solution_consistency_with(&perturb(&h[0], 3), &(&h[1] + &h[2]))
    }));
    checks
}

/// Every check, in report order.
pub fn registry() -> Vec<Check> {
    let mut all = rules_checks();
    all.extend(bijection_checks());
    all.extend(series_checks());
    all.extend(kernel_checks());
    all
}
