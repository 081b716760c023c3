use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::truncated::{rat, TruncatedSeries};
use crate::error::{Error, Result};

/// A polynomial in two variables with rational coefficients, keyed by
/// `(i, j)` for the monomial `x^i y^j`.
///
/// In the kernel computations the second variable plays the role of the
/// catalytic variable `v`; in the skinny solver the pair is `(u, v)`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Hash)]
pub struct Poly2 {
    terms: BTreeMap<(u32, u32), BigRational>,
}

/// Which of the two variables an operation acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Var {
    X,
    Y,
}

impl Var {
    fn name(self) -> char {
        match self {
            Var::X => 'x',
            Var::Y => 'y',
        }
    }
}

impl Poly2 {
    pub fn zero() -> Self {
        Poly2::default()
    }

    pub fn one() -> Self {
        Self::monomial(BigRational::one(), 0, 0)
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn monomial(c: BigRational, i: u32, j: u32) -> Self {
        let mut p = Poly2::zero();
        p.add_term(i, j, c);
        p
    }

    pub fn x() -> Self {
        Self::monomial(BigRational::one(), 1, 0)
    }

    pub fn y() -> Self {
        Self::monomial(BigRational::one(), 0, 1)
    }

    /// Builds a polynomial from `(coefficient, i, j)` integer triples.
    pub fn from_terms(terms: &[(i64, u32, u32)]) -> Self {
        let mut p = Poly2::zero();
        for &(c, i, j) in terms {
            p.add_term(i, j, rat(c));
        }
        p
    }

    pub fn add_term(&mut self, i: u32, j: u32, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry((i, j)).or_insert_with(BigRational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &BigRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, i: u32, j: u32) -> BigRational {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self, var: Var) -> Option<u32> {
        self.terms.keys().map(|&(i, j)| if var == Var::X { i } else { j }).max()
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut p = Poly2::zero();
        for (&(i, j), a) in &self.terms {
            p.add_term(i, j, a * c);
        }
        p
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Poly2::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Multiplication by `x^a y^b`.
    pub fn shift(&self, a: u32, b: u32) -> Self {
        Poly2 { terms: self.terms.iter().map(|(&(i, j), c)| ((i + a, j + b), c.clone())).collect() }
    }

    /// Substitutes a constant for one variable.
    pub fn eval(&self, var: Var, value: &BigRational) -> Self {
        let mut p = Poly2::zero();
        for (&(i, j), c) in &self.terms {
            let (e, key) = if var == Var::X { (i, (0, j)) } else { (j, (i, 0)) };
            p.add_term(key.0, key.1, c * num_traits::pow(value.clone(), e as usize));
        }
        p
    }

    pub fn derivative(&self, var: Var) -> Self {
        let mut p = Poly2::zero();
        for (&(i, j), c) in &self.terms {
            let e = if var == Var::X { i } else { j };
            if e > 0 {
                let (a, b) = if var == Var::X { (i - 1, j) } else { (i, j - 1) };
                p.add_term(a, b, c * rat(e as i64));
            }
        }
        p
    }

    /// Sum of all coefficients.
    pub fn eval_at_ones(&self) -> BigRational {
        self.terms.values().sum()
    }

    /// Exact quotient by `1 - var`.
    pub fn div_one_minus(&self, var: Var) -> Result<Self> {
        // (1 - t) q = p  ⇔  q_k = Σ_{l ≤ k} p_l  with  Σ_l p_l = 0, per power of the other variable
        let mut by_other: BTreeMap<u32, BTreeMap<u32, BigRational>> = BTreeMap::new();
        for (&(i, j), c) in &self.terms {
            let (e, o) = if var == Var::X { (i, j) } else { (j, i) };
            by_other.entry(o).or_default().insert(e, c.clone());
        }
        let mut q = Poly2::zero();
        for (o, coeffs) in by_other {
            let top = *coeffs.keys().max().unwrap();
            let mut run = BigRational::zero();
            for e in 0..=top {
                if let Some(c) = coeffs.get(&e) {
                    run += c;
                }
                if e < top {
                    let (i, j) = if var == Var::X { (e, o) } else { (o, e) };
                    q.add_term(i, j, run.clone());
                }
            }
            if !run.is_zero() {
                return Err(Error::NonDivisible(var.name()));
            }
        }
        Ok(q)
    }

    /// Exact division by an arbitrary nonzero polynomial.
    pub fn div_exact(&self, d: &Poly2) -> Result<Self> {
        // lexicographic order with y first; a single divisor leaves remainder 0 iff divisible
        let lead = |p: &Poly2| p.terms.iter().max_by_key(|(&(i, j), _)| (j, i)).map(|(&k, c)| (k, c.clone()));
        let ((di, dj), dc) = lead(d).ok_or(Error::NonDivisible('/'))?;
        let mut r = self.clone();
        let mut q = Poly2::zero();
        while let Some(((ri, rj), rc)) = lead(&r) {
            if ri < di || rj < dj {
                return Err(Error::NonDivisible('/'));
            }
            let t = Poly2::monomial(rc / &dc, ri - di, rj - dj);
            r = &r - &(&t * d);
            q = &q + &t;
        }
        Ok(q)
    }

    /// `P(x, f(x))` for a series `f`, truncated at the order of `f`.
    pub fn eval_series(&self, f: &TruncatedSeries) -> TruncatedSeries {
        let order = f.order();
        let max_j = self.degree(Var::Y).unwrap_or(0);
        let mut powers = vec![TruncatedSeries::one(order)];
        for _ in 0..max_j {
            powers.push(powers.last().unwrap() * f);
        }
        let mut acc = TruncatedSeries::zero(order);
        for (&(i, j), c) in &self.terms {
            if (i as usize) <= order {
                acc = &acc + &powers[j as usize].scale(c).shift(i as usize);
            }
        }
        acc
    }
}

impl Add for &Poly2 {
    type Output = Poly2;
    fn add(self, rhs: Self) -> Poly2 {
        let mut p = self.clone();
        for (&(i, j), c) in &rhs.terms {
            p.add_term(i, j, c.clone());
        }
        p
    }
}

impl Sub for &Poly2 {
    type Output = Poly2;
    fn sub(self, rhs: Self) -> Poly2 {
        let mut p = self.clone();
        for (&(i, j), c) in &rhs.terms {
            p.add_term(i, j, -c.clone());
        }
        p
    }
}

impl Neg for &Poly2 {
    type Output = Poly2;
    fn neg(self) -> Poly2 {
        self.scale(&-BigRational::one())
    }
}

impl Mul for &Poly2 {
    type Output = Poly2;
    fn mul(self, rhs: Self) -> Poly2 {
        let mut p = Poly2::zero();
        for (&(i, j), a) in &self.terms {
            for (&(k, l), b) in &rhs.terms {
                p.add_term(i + k, j + l, a * b);
            }
        }
        p
    }
}

impl fmt::Display for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (&(i, j), c)) in self.terms.iter().enumerate() {
            let sign = if c.is_negative() {
                "-"
            } else if n > 0 {
                "+"
            } else {
                ""
            };
            if n > 0 {
                write!(f, " {sign} ")?;
            } else {
                write!(f, "{sign}")?;
            }
            let a = c.abs();
            let mut parts = Vec::new();
            if !a.is_one() || (i == 0 && j == 0) {
                parts.push(a.to_string());
            }
            for (v, e) in [('x', i), ('y', j)] {
                match e {
                    0 => {}
                    1 => parts.push(v.to_string()),
                    _ => parts.push(format!("{v}^{e}")),
                }
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

impl FromStr for Poly2 {
    type Err = Error;

    /// Sums of terms `c*x^i*y^j`; every factor is optional and `c` may be a
    /// fraction `p/q`. Whitespace is ignored.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |m: &str| Error::Parse(format!("{m} in polynomial {s:?}"));
        let text: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if text.is_empty() {
            return Err(bad("empty input"));
        }
        let mut terms = Vec::new();
        let mut start = 0;
        for (k, ch) in text.char_indices() {
            if (ch == '+' || ch == '-') && k > 0 && !text[..k].ends_with('^') {
                terms.push(&text[start..k]);
                start = k;
            }
        }
        terms.push(&text[start..]);
        let mut p = Poly2::zero();
        for term in terms {
            let (neg, body) = match term.as_bytes().first() {
                Some(b'-') => (true, &term[1..]),
                Some(b'+') => (false, &term[1..]),
                _ => (false, term),
            };
            if body.is_empty() {
                return Err(bad("dangling sign"));
            }
            let mut c = BigRational::one();
            let (mut i, mut j) = (0u32, 0u32);
            for factor in body.split('*') {
                let (base, exp) = match factor.split_once('^') {
                    Some((b, e)) => (b, e.parse::<u32>().map_err(|_| bad("bad exponent"))?),
                    None => (factor, 1),
                };
                match base {
                    "x" => i += exp,
                    "y" => j += exp,
                    _ => {
                        let v: BigRational = base.parse().map_err(|_| bad("bad coefficient"))?;
                        c *= num_traits::pow(v, exp as usize);
                    }
                }
            }
            p.add_term(i, j, if neg { -c } else { c });
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let p: Poly2 = "x*y^3 + 2*x*y^2 + 2*x*y - y + x".parse().unwrap();
        assert_eq!(p, Poly2::from_terms(&[(1, 1, 3), (2, 1, 2), (2, 1, 1), (-1, 0, 1), (1, 1, 0)]));
        assert_eq!(p.to_string(), "-y + x + 2*x*y + 2*x*y^2 + x*y^3");
        assert_eq!(p.to_string().parse::<Poly2>().unwrap(), p);
        let q: Poly2 = "3/2*x^2 - 1".parse().unwrap();
        assert_eq!(q.coeff(2, 0), BigRational::new(3.into(), 2.into()));
        assert!("x^".parse::<Poly2>().is_err());
        assert!("2*z".parse::<Poly2>().is_err());
        assert!("".parse::<Poly2>().is_err());
        assert!("x+".parse::<Poly2>().is_err());
    }

    #[test]
    fn exact_divisions() {
        let one_minus_y = Poly2::from_terms(&[(1, 0, 0), (-1, 0, 1)]);
        let p = Poly2::from_terms(&[(1, 1, 0), (3, 0, 2), (-2, 2, 5)]);
        let prod = &p * &one_minus_y;
        assert_eq!(prod.div_one_minus(Var::Y).unwrap(), p);
        assert_eq!(prod.div_exact(&one_minus_y).unwrap(), p);
        assert_eq!(prod.div_exact(&p).unwrap(), one_minus_y);
        assert_eq!(p.div_one_minus(Var::Y), Err(Error::NonDivisible('y')));
        let one_minus_x = Poly2::from_terms(&[(1, 0, 0), (-1, 1, 0)]);
        assert_eq!((&p * &one_minus_x).div_one_minus(Var::X).unwrap(), p);
        assert!(p.div_exact(&one_minus_x).is_err());
    }

    #[test]
    fn series_substitution() {
        // x*y^2 - y + 1 vanishes at the Catalan series
        let p = Poly2::from_terms(&[(1, 1, 2), (-1, 0, 1), (1, 0, 0)]);
        let c = TruncatedSeries::from_integers([1, 1, 2, 5, 14, 42, 132], 6);
        assert!(p.eval_series(&c).is_zero_through(6));
        let wrong = TruncatedSeries::from_integers([1, 1, 2, 5, 14, 42, 131], 6);
        assert!(!p.eval_series(&wrong).is_zero_through(6));
        assert_eq!(p.eval(Var::X, &rat(0)), Poly2::from_terms(&[(-1, 0, 1), (1, 0, 0)]));
    }
}
