use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::One;

use super::poly2::{Poly2, Var};
use super::truncated::TruncatedSeries;
use super::vpoly::VPoly;
use crate::error::{Error, Result};
use crate::rules::RuleId;

/// The functional-equation systems handled by [`solve_system`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SystemId {
    ZeroSkinny,
    Skinny(u32),
    RowRestricted(u32),
}

impl SystemId {
    pub fn validate(self) -> Result<Self> {
        match self {
            SystemId::Skinny(m) | SystemId::RowRestricted(m) if m < 2 => {
                Err(Error::InvalidSystem(format!("{self} needs m >= 2")))
            }
            _ => Ok(self),
        }
    }

    /// The succession rule generating the same family.
    pub fn rule(self) -> RuleId {
        match self {
            SystemId::ZeroSkinny => RuleId::Skinny(0),
            SystemId::Skinny(m) => RuleId::Skinny(m as u64),
            SystemId::RowRestricted(m) => RuleId::RowRestricted(m as u64),
        }
    }
}

impl fmt::Display for SystemId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SystemId::ZeroSkinny => write!(f, "0sk"),
            SystemId::Skinny(m) => write!(f, "sk:{m}"),
            SystemId::RowRestricted(m) => write!(f, "rr:{m}"),
        }
    }
}

impl FromStr for SystemId {
    type Err = Error;
    /// `0sk`, `sk:m` or `rr:m`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("unknown system {s:?}"));
        let sys = match s.split_once(':') {
            None if s == "0sk" => SystemId::ZeroSkinny,
            Some(("sk", m)) => SystemId::Skinny(m.parse().map_err(|_| bad())?),
            Some(("rr", m)) => SystemId::RowRestricted(m.parse().map_err(|_| bad())?),
            _ => return Err(bad()),
        };
        sys.validate()
    }
}

/// The generating function of the family through `x^order`; the constant
/// term is zero and coefficient `n` counts objects of size `n`.
pub fn solve_system(sys: SystemId, order: usize) -> Result<TruncatedSeries> {
    if order == 0 {
        return Err(Error::InvalidSystem("order must be at least 1".into()));
    }
    match sys.validate()? {
        SystemId::ZeroSkinny => solve_zero_skinny(order),
        SystemId::Skinny(m) => solve_skinny(m as usize, order),
        SystemId::RowRestricted(m) => {
            let parts = rr_components(m as usize, order)?;
            Ok(parts.iter().fold(TruncatedSeries::zero(order), |acc, h| &acc + h))
        }
    }
}

/// `H_1(1), ..., H_m(1)` for the row-restricted system, where `H_i` counts
/// slicings whose label has first coordinate `i`.
pub fn rr_components(m: usize, order: usize) -> Result<Vec<TruncatedSeries>> {
    SystemId::RowRestricted(m as u32).validate()?;
    let xv = VPoly::from_coeffs(vec![TruncatedSeries::zero(order), TruncatedSeries::x(order)], order);
    let mut h = vec![VPoly::zero(order); m];
    // every right-hand side carries a factor x: each sweep fixes one more order
    for _ in 0..order {
        let deltas: Vec<VPoly> = h.iter().map(VPoly::delta_v).collect::<Result<_>>()?;
        let mut next = Vec::with_capacity(m);
        let mut tail = h.iter().fold(VPoly::zero(order), |acc, p| &acc + p);
        next.push(&xv + &tail.mul_xv());
        for i in 1..m {
            tail = &tail - &h[i - 1];
            let hi = if i < m - 1 {
                &deltas[i - 1].mul_xv() + &tail.mul_xv()
            } else {
                &(&deltas[i] + &deltas[i - 1]).mul_xv() + &h[i].mul_xv()
            };
            next.push(hi);
        }
        h = next;
    }
    Ok(h.iter().map(VPoly::at_one).collect())
}

fn at_u_one(p: &Poly2) -> Poly2 {
    p.eval(Var::X, &BigRational::one())
}

/// `(f(1) - f(v)) / (1 - v)` for a polynomial in `v` alone.
fn delta(f: &Poly2) -> Result<Poly2> {
    (&Poly2::constant(f.eval_at_ones()) - f).div_one_minus(Var::Y)
}

/// `(v f(1) - f(v)) / (1 - v)`.
fn delta_shifted(f: &Poly2) -> Result<Poly2> {
    (&Poly2::monomial(f.eval_at_ones(), 0, 1) - f).div_one_minus(Var::Y)
}

// Per-order coefficients are polynomials in (u, v), stored with u in the first slot.

fn solve_zero_skinny(order: usize) -> Result<TruncatedSeries> {
    let uv = Poly2::monomial(BigRational::one(), 1, 1);
    let u = Poly2::x();
    let mut g = uv.clone();
    let mut out = vec![BigRational::default(), g.eval_at_ones()];
    for _ in 2..=order {
        let g1 = at_u_one(&g);
        let rows = &uv * &(&g1 - &g).div_one_minus(Var::X)?;
        let cols = &u * &delta_shifted(&g1)?;
        g = &(&rows + &cols) + &(&u * &g);
        out.push(g.eval_at_ones());
    }
    Ok(TruncatedSeries::from_coeffs(out, order))
}

fn solve_skinny(m: usize, order: usize) -> Result<TruncatedSeries> {
    let v = Poly2::y();
    let u = Poly2::x();
    let uv = Poly2::monomial(BigRational::one(), 1, 1);
    // p[i] = [x^n] F_{i+1}(1, v) for i < m - 1; b = [x^n] F_m(u, v)
    let mut p = vec![Poly2::zero(); m - 1];
    p[0] = v.clone();
    let mut b = Poly2::zero();
    let total = |p: &[Poly2], b: &Poly2| p.iter().map(Poly2::eval_at_ones).sum::<BigRational>() + b.eval_at_ones();
    let mut out = vec![BigRational::default(), total(&p, &b)];
    for _ in 2..=order {
        let mut q: Vec<Poly2> = p.clone();
        q.push(at_u_one(&b));
        let mut next = Vec::with_capacity(m - 1);
        let mut tail = q.iter().fold(Poly2::zero(), |acc, f| &acc + f);
        next.push(&v * &tail);
        for i in 1..m - 1 {
            tail = &tail - &q[i - 1];
            next.push(&(&v * &delta(&q[i - 1])?) + &(&v * &tail));
        }
        let qm = &q[m - 1];
        let from_below = Poly2::monomial(BigRational::one(), m as u32, 1);
        let capped = Poly2::monomial(BigRational::one(), m as u32 + 1, 0);
        let rows = (&qm.shift(m as u32 - 1, 0) - &b).div_one_minus(Var::X)?;
        b = &(&(&from_below * &delta(&q[m - 2])?) + &(&capped * &delta_shifted(qm)?)) + &(&(&u * &b) + &(&uv * &rows));
        p = next;
        out.push(total(&p, &b));
    }
    Ok(TruncatedSeries::from_coeffs(out, order))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rules::level_counts;

    fn ints(s: &TruncatedSeries) -> Vec<i64> {
        s.integer_coeffs().unwrap().iter().map(|c| i64::try_from(c).unwrap()).collect()
    }

    #[test]
    fn parse_system_ids() {
        assert_eq!("0sk".parse::<SystemId>().unwrap(), SystemId::ZeroSkinny);
        assert_eq!("sk:3".parse::<SystemId>().unwrap(), SystemId::Skinny(3));
        assert_eq!("rr:2".parse::<SystemId>().unwrap(), SystemId::RowRestricted(2));
        assert!("rr:1".parse::<SystemId>().is_err());
        assert!("sk".parse::<SystemId>().is_err());
        assert!("xx:2".parse::<SystemId>().is_err());
        assert_eq!(SystemId::Skinny(2).to_string(), "sk:2");
    }

    #[test]
    fn small_orders() {
        assert_eq!(ints(&solve_system(SystemId::ZeroSkinny, 6).unwrap()), [0, 1, 2, 6, 21, 80, 322]);
        assert_eq!(ints(&solve_system(SystemId::ZeroSkinny, 2).unwrap()), [0, 1, 2]);
        assert_eq!(
            ints(&solve_system(SystemId::RowRestricted(3), 10).unwrap()),
            [0, 1, 2, 6, 22, 91, 405, 1893, 9163, 45531, 230902]
        );
        assert_eq!(
            ints(&solve_system(SystemId::Skinny(2), 10).unwrap()),
            [0, 1, 2, 6, 22, 92, 419, 2022, 10168, 52718, 279820]
        );
        assert_eq!(
            ints(&solve_system(SystemId::Skinny(3), 10).unwrap()),
            [0, 1, 2, 6, 22, 92, 422, 2070, 10668, 57061, 314061]
        );
        assert!(solve_system(SystemId::Skinny(1), 5).is_err());
        assert!(solve_system(SystemId::RowRestricted(2), 0).is_err());
    }

    #[test]
    fn agrees_with_rule_counts() {
        let n = 20;
        let systems = [
            SystemId::ZeroSkinny,
            SystemId::Skinny(2),
            SystemId::Skinny(3),
            SystemId::Skinny(4),
            SystemId::RowRestricted(2),
            SystemId::RowRestricted(3),
            SystemId::RowRestricted(5),
        ];
        for sys in systems {
            let s = solve_system(sys, n).unwrap();
            let counts = level_counts(&sys.rule(), n).unwrap();
            let ours: Vec<_> = s.integer_coeffs().unwrap()[1..].iter().map(|c| c.to_biguint().unwrap()).collect();
            assert_eq!(ours, counts, "{sys}");
        }
    }

    #[test]
    fn rr_components_split_the_total() {
        let parts = rr_components(3, 8).unwrap();
        assert_eq!(ints(&parts[0])[..4], [0, 1, 1, 2]);
        let total = parts.iter().fold(TruncatedSeries::zero(8), |a, p| &a + p);
        assert_eq!(total, solve_system(SystemId::RowRestricted(3), 8).unwrap());
    }
}
