use num_bigint::BigInt;
use num_traits::Zero;

use super::poly2::Poly2;
use super::truncated::TruncatedSeries;
use crate::error::Result;
use crate::rules::{level_counts, RuleId};

/// `P(x, F(x)) ≡ 0 mod x^{N+1}` where `N` is the order of `F`. The second
/// variable of `P` stands for the unknown series.
pub fn check_algebraic(p: &Poly2, f: &TruncatedSeries) -> bool {
    p.eval_series(f).is_zero_through(f.order())
}

fn parse(s: &str) -> Poly2 {
    s.parse().expect("well-formed built-in polynomial")
}

/// Satisfied by the generating function of 2-row-restricted slicings.
pub fn rr2_cubic() -> Poly2 {
    parse("x*y^3 + 2*x*y^2 + 2*x*y - y + x")
}

/// Satisfied by `1 + H` where `H` counts 2-row-restricted slicings.
pub fn a106228_cubic() -> Poly2 {
    parse("x*y^3 - x*y^2 + x*y - y + 1")
}

/// The 2-row-restricted equation with the root `λ = H/(x(H+1))` cleared.
pub fn rr2_rearranged() -> Poly2 {
    // H(1 - x(H+1)^2) - x(H+1)
    parse("y - x*y^3 - 2*x*y^2 - x*y - x*y - x")
}

/// Satisfied by the generating function of 3-row-restricted slicings.
pub fn rr3_cubic() -> Poly2 {
    parse(
        "x + 2*x^2 + x^3 - y - 2*x*y + 2*x^2*y + 3*x^3*y + 2*y^2 - 2*x^2*y^2 + 3*x^3*y^2 \
         - y^3 + 3*x*y^3 - 2*x^2*y^3 + x^3*y^3",
    )
}

/// Satisfied by the generating function of 2-skinny slicings.
pub fn sk2_quintic() -> Poly2 {
    parse(
        "x^3 - x^2*y + 6*x^3*y - 6*x^2*y^2 + 15*x^3*y^2 + 2*x*y^3 - 13*x^2*y^3 + 19*x^3*y^3 \
         + 5*x*y^4 - 12*x^2*y^4 + 12*x^3*y^4 - y^5 + 3*x*y^5 - 4*x^2*y^5 + 3*x^3*y^5",
    )
}

/// `x C^2 - C + 1`, for `C = 1 + Σ_{n≥1} Cat_n x^n`.
pub fn catalan_quadratic() -> Poly2 {
    parse("x*y^2 - y + 1")
}

/// `x F^2 + (x - 1) F + 1`, for `F = Σ_{n≥0} Sch_n x^n`.
pub fn schroeder_quadratic() -> Poly2 {
    parse("x*y^2 + x*y - y + 1")
}

/// Level counts of `rule` as coefficients of `x^1, x^2, ...`, or of
/// `x^0, x^1, ...` when `from_zero`.
fn level_series(rule: &RuleId, order: usize, from_zero: bool) -> Result<TruncatedSeries> {
    let mut coeffs: Vec<BigInt> = level_counts(rule, order + 1)?.into_iter().map(BigInt::from).collect();
    if !from_zero {
        coeffs.insert(0, BigInt::zero());
    }
    Ok(TruncatedSeries::from_integers(coeffs, order))
}

/// Catalan numbers `1, 1, 2, 5, ...` as level counts of the Catalan rule.
pub fn catalan_series(order: usize) -> Result<TruncatedSeries> {
    Ok(one_plus(&level_series(&RuleId::Cat, order, false)?))
}

/// Large Schröder numbers `1, 2, 6, 22, ...` as level counts of the
/// Schröder rule.
pub fn schroeder_series(order: usize) -> Result<TruncatedSeries> {
    level_series(&RuleId::SchWest, order, true)
}

/// `1 + F` for a series without constant term.
pub fn one_plus(f: &TruncatedSeries) -> TruncatedSeries {
    debug_assert!(f.coeff(0).is_zero());
    &TruncatedSeries::one(f.order()) + f
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{solve_system, SystemId};

    #[test]
    fn printed_polynomials() {
        let n = 12;
        let rr2 = solve_system(SystemId::RowRestricted(2), n).unwrap();
        assert!(check_algebraic(&rr2_cubic(), &rr2));
        assert!(check_algebraic(&rr2_rearranged(), &rr2));
        assert!(check_algebraic(&a106228_cubic(), &one_plus(&rr2)));
        assert!(check_algebraic(&rr3_cubic(), &solve_system(SystemId::RowRestricted(3), n).unwrap()));
        assert!(check_algebraic(&sk2_quintic(), &solve_system(SystemId::Skinny(2), n).unwrap()));
        assert!(check_algebraic(&catalan_quadratic(), &catalan_series(n).unwrap()));
        assert!(check_algebraic(&schroeder_quadratic(), &schroeder_series(n).unwrap()));
    }

    #[test]
    fn wrong_series_fail() {
        let n = 12;
        let rr3 = solve_system(SystemId::RowRestricted(3), n).unwrap();
        assert!(!check_algebraic(&rr2_cubic(), &rr3));
        assert!(!check_algebraic(&sk2_quintic(), &rr3));
        assert!(!check_algebraic(&catalan_quadratic(), &schroeder_series(n).unwrap()));
    }

    #[test]
    fn named_series_prefixes() {
        assert_eq!(catalan_series(5).unwrap(), TruncatedSeries::from_integers([1, 1, 2, 5, 14, 42], 5));
        assert_eq!(schroeder_series(5).unwrap(), TruncatedSeries::from_integers([1, 2, 6, 22, 90, 394], 5));
    }
}
