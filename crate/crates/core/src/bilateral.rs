//! Bilateral sums with a quadratic exponent and simple binomial denominators:
//!
//! `sum_n (-1)^(a n) s^n q^(A n^2 + B n + C) / prod_j (1 - s_j q^(c_j n + d_j))`
//!
//! Every theta series, generalized Lambert series and rank generating function
//! in the crate reduces to this shape. Denominators with a negative exponent are
//! expanded through `1/(1 - s q^-e) = -s q^e / (1 - s q^e)`, so terms may start
//! below `q^0`; whether the total is a power series is left to the caller.

use crate::error::{Error, Result};
use crate::series::LaurentSeries;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Denominator {
    pub sign: i8,
    pub slope: i64,
    pub offset: i64,
}

impl Denominator {
    /// `1 - sign * q^(slope n + offset)`
    pub fn new(sign: i8, slope: i64, offset: i64) -> Self {
        Denominator { sign, slope, offset }
    }

    fn exponent(&self, n: i64) -> i64 {
        self.slope * n + self.offset
    }

    /// Lowest exponent contributed by the expansion of `1 / (1 - s q^e)`.
    fn lift(&self, n: i64) -> i64 {
        (-self.exponent(n)).max(0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilateralSum {
    pub alternating: bool,
    pub ratio_sign: i8,
    pub quad: i64,
    pub lin: i64,
    pub constant: i64,
    pub denominators: Vec<Denominator>,
    pub omit_zero: bool,
}

impl BilateralSum {
    pub fn new(quad: i64, lin: i64) -> Self {
        assert!(quad > 0, "bilateral sums need a positive quadratic exponent");
        BilateralSum {
            alternating: false,
            ratio_sign: 1,
            quad,
            lin,
            constant: 0,
            denominators: Vec::new(),
            omit_zero: false,
        }
    }

    pub fn alternating(mut self) -> Self {
        self.alternating = !self.alternating;
        self
    }

    pub fn ratio_sign(mut self, sign: i8) -> Self {
        self.ratio_sign *= sign;
        self
    }

    pub fn constant(mut self, c: i64) -> Self {
        self.constant += c;
        self
    }

    pub fn over(mut self, d: Denominator) -> Self {
        self.denominators.push(d);
        self
    }

    pub fn omit_zero(mut self) -> Self {
        self.omit_zero = true;
        self
    }

    fn exponent(&self, n: i64) -> i128 {
        let n = n as i128;
        self.quad as i128 * n * n + self.lin as i128 * n + self.constant as i128
    }

    /// The exact set of `n` whose quadratic exponent lies below `order`. Because
    /// denominators only ever raise a term's lowest exponent, no `n` outside this
    /// interval can contribute.
    pub fn index_range(&self, order: i64) -> Option<(i64, i64)> {
        let vertex = (-(self.lin as f64) / (2.0 * self.quad as f64)).floor() as i64;
        let centre = if self.exponent(vertex + 1) < self.exponent(vertex) {
            vertex + 1
        } else {
            vertex
        };
        let order = order as i128;
        if self.exponent(centre) >= order {
            return None;
        }
        let mut hi = centre;
        while self.exponent(hi + 1) < order {
            hi += 1;
        }
        let mut lo = centre;
        while self.exponent(lo - 1) < order {
            lo -= 1;
        }
        Some((lo, hi))
    }

    pub fn expand(&self, order: i64) -> Result<LaurentSeries> {
        self.expand_with_margin(order, 0)
    }

    /// Expands the sum, widening the summation interval by `margin` indices on
    /// each side. Any margin must leave the result unchanged.
    pub fn expand_with_margin(&self, order: i64, margin: i64) -> Result<LaurentSeries> {
        let mut acc = LaurentSeries::zero(order);
        let Some((lo, hi)) = self.index_range(order) else {
            return Ok(acc);
        };
        for n in (lo - margin)..=(hi + margin) {
            if n == 0 && self.omit_zero {
                continue;
            }
            let Some(term) = self.term(n, order)? else {
                continue;
            };
            acc = acc.add(&term);
        }
        Ok(acc.truncate(order))
    }

    fn term(&self, n: i64, order: i64) -> Result<Option<LaurentSeries>> {
        let exp = self.exponent(n);
        let lowest: i128 = exp + self.denominators.iter().map(|d| d.lift(n) as i128).sum::<i128>();
        for d in &self.denominators {
            if d.exponent(n) == 0 && d.sign > 0 {
                return Err(Error::PoleHit { n });
            }
        }
        if lowest >= order as i128 {
            return Ok(None);
        }
        let mut sign: i8 = 1;
        if self.alternating && n % 2 != 0 {
            sign = -sign;
        }
        if self.ratio_sign < 0 && n % 2 != 0 {
            sign = -sign;
        }
        let mut term = LaurentSeries::signed_monomial(sign, exp as i64, order);
        for d in &self.denominators {
            term = term.div_binomial(d.sign, d.exponent(n))?;
        }
        Ok(Some(term))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_range_is_tight() {
        // n^2 < 10  <=>  |n| <= 3
        let s = BilateralSum::new(1, 0);
        assert_eq!(s.index_range(10), Some((-3, 3)));
        // 3n^2 + 3n < 7  <=>  n in {-2, -1, 0, 1}
        let s = BilateralSum::new(3, 3);
        assert_eq!(s.index_range(7), Some((-2, 1)));
        assert_eq!(BilateralSum::new(1, 0).constant(5).index_range(5), None);
    }

    #[test]
    fn plain_theta_sum() {
        // sum q^(n^2) = 1 + 2q + 2q^4 + 2q^9
        let s = BilateralSum::new(1, 0).expand(12).unwrap();
        assert_eq!(s.to_i64_vec(12), vec![1, 2, 0, 0, 2, 0, 0, 0, 0, 2, 0, 0]);
    }

    #[test]
    fn pole_is_reported() {
        let s = BilateralSum::new(1, 1).over(Denominator::new(1, 1, 0));
        assert_eq!(s.expand(10), Err(Error::PoleHit { n: 0 }));
        assert!(s.omit_zero().expand(10).is_ok());
    }

    #[test]
    fn margin_does_not_change_result() {
        let s = BilateralSum::new(3, 3).alternating().over(Denominator::new(1, 3, 1));
        let a = s.expand(60).unwrap();
        let b = s.expand_with_margin(60, 20).unwrap();
        assert_eq!(a, b);
    }
}
