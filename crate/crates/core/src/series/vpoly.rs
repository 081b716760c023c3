use std::ops::{Add, Sub};

use super::truncated::TruncatedSeries;
use crate::error::{Error, Result};

/// A polynomial in the catalytic variable `v` whose coefficients are power
/// series in `x`, all truncated at the same order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VPoly {
    order: usize,
    coeffs: Vec<TruncatedSeries>,
}

impl VPoly {
    pub fn zero(order: usize) -> Self {
        VPoly { order, coeffs: Vec::new() }
    }

    /// From series coefficients of `v^0, v^1, ...`.
    pub fn from_coeffs(coeffs: Vec<TruncatedSeries>, order: usize) -> Self {
        let coeffs = coeffs.into_iter().map(|c| c.truncate(order)).collect();
        let mut p = VPoly { order, coeffs };
        p.trim();
        p
    }

    /// A polynomial in `v` with constant (in `x`) integer coefficients.
    pub fn from_integers(coeffs: &[i64], order: usize) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| TruncatedSeries::from_integers([c], order)).collect(), order)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero_through(self.order)) {
            self.coeffs.pop();
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeff(&self, j: usize) -> TruncatedSeries {
        self.coeffs.get(j).cloned().unwrap_or_else(|| TruncatedSeries::zero(self.order))
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// The series `f(1)`.
    pub fn at_one(&self) -> TruncatedSeries {
        self.coeffs.iter().fold(TruncatedSeries::zero(self.order), |acc, c| &acc + c)
    }

    /// Multiplication by `x v`, keeping the `v`-degree at most the order.
    pub fn mul_xv(&self) -> Self {
        let mut coeffs = vec![TruncatedSeries::zero(self.order)];
        coeffs.extend(self.coeffs.iter().map(|c| c.shift(1)));
        coeffs.truncate(self.order + 1);
        Self::from_coeffs(coeffs, self.order)
    }

    /// `(f(1) - f(v)) / (1 - v)`.
    pub fn delta_v(&self) -> Result<Self> {
        let mut g: Vec<TruncatedSeries> = self.coeffs.iter().map(|c| -c).collect();
        if g.is_empty() {
            return Ok(VPoly::zero(self.order));
        }
        g[0] = &g[0] + &self.at_one();
        // (1 - v) q = g  ⇔  q_k = g_0 + ... + g_k, and the full sum vanishes
        let mut q = Vec::with_capacity(g.len());
        let mut run = TruncatedSeries::zero(self.order);
        for c in &g {
            run = &run + c;
            q.push(run.clone());
        }
        if !q.pop().unwrap().is_zero_through(self.order) {
            return Err(Error::NonDivisible('v'));
        }
        Ok(Self::from_coeffs(q, self.order))
    }
}

impl Add for &VPoly {
    type Output = VPoly;
    fn add(self, rhs: Self) -> VPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        VPoly::from_coeffs((0..n).map(|j| &self.coeff(j) + &rhs.coeff(j)).collect(), self.order.min(rhs.order))
    }
}

impl Sub for &VPoly {
    type Output = VPoly;
    fn sub(self, rhs: Self) -> VPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        VPoly::from_coeffs((0..n).map(|j| &self.coeff(j) - &rhs.coeff(j)).collect(), self.order.min(rhs.order))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divided_difference() {
        let n = 3;
        assert_eq!(VPoly::from_integers(&[0, 0, 1], n).delta_v().unwrap(), VPoly::from_integers(&[1, 1], n));
        assert_eq!(VPoly::from_integers(&[7], n).delta_v().unwrap(), VPoly::zero(n));
        assert_eq!(VPoly::from_integers(&[0, 2, 0, 1], n).delta_v().unwrap(), VPoly::from_integers(&[3, 1, 1], n));
        assert_eq!(VPoly::zero(n).delta_v().unwrap(), VPoly::zero(n));
    }

    #[test]
    fn shifts_and_sums() {
        let p = VPoly::from_integers(&[1, 2], 2);
        let q = p.mul_xv();
        assert_eq!(q.coeff(1), TruncatedSeries::from_integers([0, 1], 2));
        assert_eq!(q.coeff(2), TruncatedSeries::from_integers([0, 2], 2));
        assert_eq!(p.at_one(), TruncatedSeries::from_integers([3], 2));
        assert_eq!(&(&p + &q) - &q, p);
        assert_eq!(p.degree(), Some(1));
    }
}
