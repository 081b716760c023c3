use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::Zero;

use super::poly2::{Poly2, Var};
use super::solve::rr_components;
use super::truncated::{rat, TruncatedSeries};
use crate::error::{Error, Result};

/// A quotient of polynomials in `(x, v)`; `v` lives in the second slot of
/// [`Poly2`].
#[derive(Debug, Clone)]
pub struct RationalFnV {
    num: Poly2,
    den: Poly2,
}

impl RationalFnV {
    pub fn new(num: Poly2, den: Poly2) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::NonDivisible('/'));
        }
        Ok(RationalFnV { num, den }.reduced())
    }

    pub fn poly(p: Poly2) -> Self {
        RationalFnV { num: p, den: Poly2::one() }
    }

    /// `p / (1 - v)^k`.
    pub fn over_one_minus_v(p: Poly2, k: u32) -> Self {
        RationalFnV { num: p, den: one_minus_v().pow(k) }.reduced()
    }

    pub fn num(&self) -> &Poly2 {
        &self.num
    }

    pub fn den(&self) -> &Poly2 {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Cancels common factors `1 - v` and makes the denominator's
    /// lowest-order coefficient 1.
    fn reduced(mut self) -> Self {
        if self.num.is_zero() {
            return RationalFnV::poly(Poly2::zero());
        }
        while let (Ok(n), Ok(d)) = (self.num.div_one_minus(Var::Y), self.den.div_one_minus(Var::Y)) {
            self.num = n;
            self.den = d;
        }
        if let Ok(q) = self.num.div_exact(&self.den) {
            return RationalFnV::poly(q);
        }
        let (_, lead) = self.den.terms().next().map(|(k, c)| (*k, c.clone())).unwrap();
        let inv = lead.recip();
        RationalFnV { num: self.num.scale(&inv), den: self.den.scale(&inv) }
    }

    /// The polynomial itself when the denominator is constant.
    pub fn to_poly(&self) -> Option<Poly2> {
        self.num.div_exact(&self.den).ok()
    }
}

impl PartialEq for RationalFnV {
    fn eq(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

impl Add for &RationalFnV {
    type Output = RationalFnV;
    fn add(self, rhs: Self) -> RationalFnV {
        if self.den == rhs.den {
            return RationalFnV { num: &self.num + &rhs.num, den: self.den.clone() }.reduced();
        }
        RationalFnV { num: &(&self.num * &rhs.den) + &(&rhs.num * &self.den), den: &self.den * &rhs.den }.reduced()
    }
}

impl Neg for &RationalFnV {
    type Output = RationalFnV;
    fn neg(self) -> RationalFnV {
        RationalFnV { num: -&self.num, den: self.den.clone() }
    }
}

impl Sub for &RationalFnV {
    type Output = RationalFnV;
    fn sub(self, rhs: Self) -> RationalFnV {
        self + &(-rhs)
    }
}

impl Mul for &RationalFnV {
    type Output = RationalFnV;
    fn mul(self, rhs: Self) -> RationalFnV {
        RationalFnV { num: &self.num * &rhs.num, den: &self.den * &rhs.den }.reduced()
    }
}

fn one_minus_v() -> Poly2 {
    Poly2::from_terms(&[(1, 0, 0), (-1, 0, 1)])
}

fn xv() -> Poly2 {
    Poly2::from_terms(&[(1, 1, 1)])
}

fn one_minus_xv() -> Poly2 {
    Poly2::from_terms(&[(1, 0, 0), (-1, 1, 1)])
}

/// `xv / (1 - v)`, the subdiagonal entry.
fn sub_entry() -> RationalFnV {
    RationalFnV::over_one_minus_v(xv(), 1)
}

pub type Matrix = Vec<Vec<RationalFnV>>;

/// The `m × m` kernel matrix of the row-restricted system.
pub fn kernel_matrix(m: usize) -> Matrix {
    let mut k = kernel_block(m);
    if m >= 1 {
        k[m - 1][m - 1] = &k[m - 1][m - 1] + &sub_entry();
    }
    k
}

/// The top-left `n × n` block of the `(n+1) × (n+1)` kernel matrix.
pub fn kernel_block(n: usize) -> Matrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| match j as isize - i as isize {
                    0 => RationalFnV::poly(one_minus_xv()),
                    d if d > 0 => RationalFnV::poly(-&xv()),
                    -1 => sub_entry(),
                    _ => RationalFnV::poly(Poly2::zero()),
                })
                .collect()
        })
        .collect()
}

/// [`kernel_matrix`] with `x^2` added to its top-left entry.
pub fn perturbed_kernel_matrix(m: usize) -> Matrix {
    let mut k = kernel_matrix(m);
    if m >= 1 {
        k[0][0] = &k[0][0] + &RationalFnV::poly(Poly2::from_terms(&[(1, 2, 0)]));
    }
    k
}

/// Fraction-free (Bareiss) determinant of a polynomial matrix.
pub fn det_bareiss(mut a: Vec<Vec<Poly2>>) -> Poly2 {
    let n = a.len();
    if n == 0 {
        return Poly2::one();
    }
    let mut sign = false;
    let mut prev = Poly2::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = !sign;
                }
                None => return Poly2::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = t.div_exact(&prev).expect("Bareiss steps divide exactly");
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign {
        -&d
    } else {
        d
    }
}

/// Determinant of a matrix of rational functions: each row is brought to a
/// common denominator before elimination.
pub fn det_rational(m: &Matrix) -> RationalFnV {
    let mut den = Poly2::one();
    let mut rows = Vec::with_capacity(m.len());
    for row in m {
        let mut d = Poly2::one();
        for e in row {
            if d.div_exact(&e.den).is_err() {
                d = &d * &e.den;
            }
        }
        rows.push(row.iter().map(|e| (&e.num * &d).div_exact(&e.den).expect("common denominator")).collect());
        den = &den * &d;
    }
    RationalFnV { num: det_bareiss(rows), den }.reduced()
}

/// `|K_m(v)|`.
pub fn kernel_det(m: usize) -> RationalFnV {
    det_rational(&kernel_matrix(m))
}

/// `N_m = |K_m(v)| (1 - v)^{m-2}`, a polynomial for `m ≥ 2`.
pub fn kernel_numerator(m: usize) -> Result<Poly2> {
    numerator_of(&kernel_det(m), m)
}

fn numerator_of(det: &RationalFnV, m: usize) -> Result<Poly2> {
    let scaled = det * &RationalFnV::poly(one_minus_v().pow(m.saturating_sub(2) as u32));
    scaled.to_poly().ok_or_else(|| Error::InvalidSystem(format!("|K_{m}| (1-v)^{} is not a polynomial", m - 2)))
}

/// Checks the determinant recurrence, the three-term recurrence and the
/// shape of the numerator for every `3 ≤ m ≤ m_max`.
pub fn check_det_recurrences(m_max: usize) -> bool {
    check_det_recurrences_with(m_max, kernel_matrix)
}

pub fn check_det_recurrences_with(m_max: usize, build: impl Fn(usize) -> Matrix) -> bool {
    let dets: Vec<RationalFnV> = (0..=m_max).map(|m| det_rational(&build(m))).collect();
    let a = sub_entry();
    let xv = RationalFnV::poly(xv());
    let one_minus_xv = RationalFnV::poly(one_minus_xv());
    let k1 = RationalFnV::over_one_minus_v(Poly2::from_terms(&[(1, 0, 0), (-1, 0, 1), (1, 1, 2)]), 1);
    let k2 = &RationalFnV::poly(Poly2::from_terms(&[(1, 0, 0), (-2, 1, 1), (1, 2, 2)])) + &a;
    if m_max >= 2 && (dets[1] != k1 || dets[2] != k2) {
        return false;
    }
    let three = RationalFnV::poly(Poly2::from_terms(&[(1, 0, 0), (-1, 0, 1), (-2, 1, 1), (1, 1, 2)]));
    for m in 3..=m_max {
        let mut rec = &one_minus_xv * &dets[m - 1];
        let mut a_pow = RationalFnV::poly(Poly2::one());
        for j in 2..=m - 2 {
            a_pow = &a_pow * &a;
            let term = &(&xv * &a_pow) * &dets[m - j];
            rec = if j % 2 == 0 { &rec + &term } else { &rec - &term };
        }
        let mut tail = &xv * &one_minus_xv;
        for _ in 0..m - 2 {
            tail = &tail * &a;
        }
        rec = if m % 2 == 1 { &rec + &tail } else { &rec - &tail };
        if rec != dets[m] {
            return false;
        }
        let lhs = &RationalFnV::poly(one_minus_v()) * &dets[m];
        if lhs != &(&three * &dets[m - 1]) + &(&xv * &dets[m - 2]) {
            return false;
        }
        if !has_basic_form(&dets[m], m) {
            return false;
        }
    }
    true
}

fn has_basic_form(det: &RationalFnV, m: usize) -> bool {
    let Ok(n) = numerator_of(det, m) else { return false };
    let p = &n - &one_minus_v().pow(m as u32 - 2);
    !p.is_zero() && p.eval(Var::X, &rat(0)).is_zero() && !p.eval(Var::Y, &rat(1)).is_zero()
}

/// `N_m(0, v) = (1 - v)^{m-2}`: at `x = 0` all finite roots sit at `v = 1`.
pub fn check_numerator_at_zero(m: usize) -> Result<bool> {
    Ok(kernel_numerator(m)?.eval(Var::X, &rat(0)) == one_minus_v().pow(m as u32 - 2))
}

fn minor(m: &Matrix, row: usize, col: usize) -> Matrix {
    m.iter()
        .enumerate()
        .filter(|&(i, _)| i != row)
        .map(|(_, r)| r.iter().enumerate().filter(|&(j, _)| j != col).map(|(_, e)| e.clone()).collect())
        .collect()
}

/// Cofactor of entry `(i, j)`, both 1-based.
pub fn cofactor(m: &Matrix, i: usize, j: usize) -> RationalFnV {
    let d = det_rational(&minor(m, i - 1, j - 1));
    if (i + j).is_multiple_of(2) {
        d
    } else {
        -&d
    }
}

/// The last-column cofactors `C_{i,m}` are nonzero and match their closed
/// forms for `2 ≤ m ≤ m_max`.
pub fn check_cofactors(m_max: usize) -> bool {
    check_cofactors_with(m_max, kernel_matrix)
}

pub fn check_cofactors_with(m_max: usize, build: impl Fn(usize) -> Matrix) -> bool {
    let a = sub_entry();
    let a_pow = |e: usize| (0..e).fold(RationalFnV::poly(Poly2::one()), |acc, _| &acc * &a);
    let signed = |f: RationalFnV, e: usize| if e.is_multiple_of(2) { f } else { -&f };
    for m in 2..=m_max {
        let k = build(m);
        for i in 1..=m {
            let expected = match i {
                1 => signed(a_pow(m - 1), m + 1),
                2 => signed(&RationalFnV::poly(one_minus_xv()) * &a_pow(m - 2), m),
                _ => signed(&a_pow(m - i) * &det_rational(&kernel_block(i - 1)), m + i),
            };
            let c = cofactor(&k, i, m);
            if c.is_zero() || c != expected {
                return false;
            }
        }
    }
    true
}

/// The finite kernel roots as printed: `(m, index, coefficients of x^0..x^5)`.
pub const PRINTED_ROOTS: [(usize, usize, [i64; 6]); 6] = [
    (3, 1, [1, 1, 4, 15, 64, 290]),
    (4, 1, [1, 0, 0, 1, 0, 4]),
    (4, 2, [1, 1, 5, 19, 91, 440]),
    (5, 1, [1, 1, 6, 21, 122, 538]),
    (5, 2, [1, 0, 1, 2, 5, 14]),
    (5, 3, [1, 0, -1, 2, -9, 46]),
];

/// Substitutes the series `v = λ(x)` into `N_m(x, v)` and checks the
/// residual vanishes through the precision of `coeffs`.
pub fn verify_kernel_root(m: usize, coeffs: &[BigRational]) -> Result<bool> {
    if coeffs.is_empty() {
        return Err(Error::InvalidSystem("empty root series".into()));
    }
    let lambda = TruncatedSeries::from_coeffs(coeffs.to_vec(), coeffs.len() - 1);
    Ok(kernel_numerator(m)?.eval_series(&lambda).is_zero_through(lambda.order()))
}

/// Extends a simple root `v = λ(x)` of `p(x, v)` to `order` by solving for
/// one coefficient at a time.
pub fn refine_root(p: &Poly2, seed: &TruncatedSeries, order: usize) -> Result<TruncatedSeries> {
    let start = seed.order();
    if !p.eval_series(seed).is_zero_through(start) {
        return Err(Error::RootRefinementFailed(start));
    }
    // [x^k] p(x, λ + c x^k) = [x^k] p(x, λ) + c ∂_v p(0, λ(0))
    let slope = p.derivative(Var::Y).eval(Var::X, &rat(0)).eval(Var::Y, &seed.coeff(0)).coeff(0, 0);
    if slope.is_zero() && order > start {
        return Err(Error::RootRefinementFailed(start + 1));
    }
    let mut lambda = TruncatedSeries::from_coeffs(seed.coeffs().to_vec(), order);
    for k in start + 1..=order {
        let r = p.eval_series(&lambda.truncate(k));
        if !r.is_zero_through(k - 1) {
            return Err(Error::RootRefinementFailed(k));
        }
        lambda.set_coeff(k, -r.coeff(k) / &slope);
    }
    Ok(lambda)
}

/// The finite root of `N_3` through `x^order`, seeded with its printed
/// expansion.
pub fn lambda_3(order: usize) -> Result<TruncatedSeries> {
    let seed = TruncatedSeries::from_integers(PRINTED_ROOTS[0].2, 5);
    if order <= 5 {
        return Ok(seed.truncate(order));
    }
    refine_root(&kernel_numerator(3)?, &seed, order)
}

/// The two linear equations of the worked `m = 3` example hold for the
/// solver's `H_1(1)` and `H_2(1) + H_3(1)` modulo `x^{N-4}`.
pub fn verify_kernel_solution_consistency(m: usize, n: usize) -> Result<bool> {
    if m != 3 {
        return Err(Error::InvalidSystem("the consistency check covers m = 3 only".into()));
    }
    let h = rr_components(3, n)?;
    verify_kernel_solution_consistency_with(&h[0], &(&h[1] + &h[2]))
}

pub fn verify_kernel_solution_consistency_with(h1: &TruncatedSeries, h23: &TruncatedSeries) -> Result<bool> {
    let n = h1.order().min(h23.order());
    if n < 5 {
        return Err(Error::InvalidSystem("order must be at least 5".into()));
    }
    let keep = n - 4;
    let x = TruncatedSeries::x(n);
    let one = TruncatedSeries::one(n);
    let l = lambda_3(n)?;
    let xl = &x * &l;
    let (l2, l3) = (l.pow(2), l.pow(3));
    let c = |k: i64| TruncatedSeries::constant(rat(k), n);
    let x2 = x.pow(2);
    let coef23 = [one.clone(), -&l, &c(-2) * &xl, &c(2) * &(&x * &l2), &c(2) * &(&x2 * &l2), -&(&x2 * &l3)]
        .iter()
        .fold(TruncatedSeries::zero(n), |acc, t| &acc + t);
    let bracket = &(&(&x2 * &l2) - &(&(&xl * &(&one - &xl)) * h1)) + &(&coef23 * h23);
    // 1 - λ = x g with g a unit; the prefactor xλ/(1-λ)^2 becomes λ/(x g^2)
    let g = (&one - &l).unshift(1)?;
    let g2_inv = g.pow(2).inverse()?;
    let t = &(&l.truncate(n - 1) * &bracket.truncate(n - 1)) * &g2_inv;
    let first = t.is_zero_through(keep);
    let second = (&(&x - &(&(&one - &x) * h1)) + &(&x * h23)).is_zero_through(keep);
    Ok(first && second)
}
