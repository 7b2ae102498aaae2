//! Truncated Laurent series in one variable `q` with exact rational coefficients.
//!
//! A [`LaurentSeries`] stores integer numerators over one shared positive
//! denominator, starting at `min_exp`, together with an exclusive truncation
//! `order`: every coefficient of `q^n` with `n < order` is exact, nothing is
//! known about `n >= order`. All arithmetic propagates the order
//! pessimistically, so equality checks between two series are only ever made
//! on the intersection of their guaranteed ranges.
//!
//! The zero series has no stored coefficients and reports `min_exp == order`,
//! i.e. its valuation is only known to be at least the truncation bound.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational coefficient, always in lowest terms with a positive denominator.
pub type Coefficient = BigRational;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentSeries {
    min_exp: i64,
    nums: Vec<BigInt>,
    denom: BigInt,
    order: i64,
}

impl LaurentSeries {
    pub fn zero(order: i64) -> Self {
        LaurentSeries {
            min_exp: order,
            nums: Vec::new(),
            denom: BigInt::one(),
            order,
        }
    }

    pub fn one(order: i64) -> Self {
        Self::monomial(Coefficient::one(), 0, order)
    }

    /// `c * q^exp`, known below `order`.
    pub fn monomial(c: Coefficient, exp: i64, order: i64) -> Self {
        if exp >= order {
            return Self::zero(order);
        }
        let (num, den) = c.into_raw();
        Self::from_parts(exp, vec![num], den, order)
    }

    /// `±q^exp` as a series known below `order`.
    pub fn signed_monomial(sign: i8, exp: i64, order: i64) -> Self {
        Self::monomial(Coefficient::from_integer(BigInt::from(sign)), exp, order)
    }

    pub fn constant(c: Coefficient, order: i64) -> Self {
        Self::monomial(c, 0, order)
    }

    /// Builds `sum_i ints[i] q^(min_exp + i)`, truncated at `order`.
    pub fn from_ints(min_exp: i64, ints: &[i64], order: i64) -> Self {
        let nums = ints.iter().map(|&c| BigInt::from(c)).collect();
        Self::from_parts(min_exp, nums, BigInt::one(), order)
    }

    /// Builds `sum_i coeffs[i] q^(min_exp + i)`, truncated at `order`.
    pub fn from_coeffs(min_exp: i64, coeffs: &[Coefficient], order: i64) -> Self {
        let mut denom = BigInt::one();
        for c in coeffs {
            denom = denom.lcm(c.denom());
        }
        let nums = coeffs.iter().map(|c| c.numer() * (&denom / c.denom())).collect();
        Self::from_parts(min_exp, nums, denom, order)
    }

    /// Canonicalizing constructor: drops indices at or beyond `order`, trims
    /// zeros at both ends and reduces the shared denominator.
    pub(crate) fn from_parts(min_exp: i64, mut nums: Vec<BigInt>, denom: BigInt, order: i64) -> Self {
        debug_assert!(denom.is_positive());
        let keep = (order - min_exp).clamp(0, nums.len() as i64) as usize;
        nums.truncate(keep);
        while nums.last().is_some_and(Zero::is_zero) {
            nums.pop();
        }
        let lead = nums.iter().position(|c| !c.is_zero());
        let Some(lead) = lead else {
            return Self::zero(order);
        };
        if lead > 0 {
            nums.drain(..lead);
        }
        let mut s = LaurentSeries {
            min_exp: min_exp + lead as i64,
            nums,
            denom,
            order,
        };
        s.reduce();
        s
    }

    fn reduce(&mut self) {
        if self.denom.is_one() {
            return;
        }
        let mut g = self.denom.clone();
        for c in &self.nums {
            g = g.gcd(c);
            if g.is_one() {
                return;
            }
        }
        for c in &mut self.nums {
            *c /= &g;
        }
        self.denom /= &g;
    }

    /// Lowest exponent with a nonzero coefficient; equals `order` for the zero series.
    pub fn min_exp(&self) -> i64 {
        self.min_exp
    }

    /// Exclusive truncation bound.
    pub fn order(&self) -> i64 {
        self.order
    }

    /// One past the highest stored nonzero exponent.
    pub fn end_exp(&self) -> i64 {
        self.min_exp + self.nums.len() as i64
    }

    pub fn is_zero(&self) -> bool {
        self.nums.is_empty()
    }

    /// The shared denominator of all stored coefficients (in lowest terms).
    pub fn denominator(&self) -> &BigInt {
        &self.denom
    }

    pub fn has_integer_coefficients(&self) -> bool {
        self.denom.is_one()
    }

    pub fn denominator_is_power_of_two(&self) -> bool {
        let d = &self.denom;
        (d & (d - BigInt::one())).is_zero()
    }

    pub fn is_power_series(&self) -> bool {
        self.is_zero() || self.min_exp >= 0
    }

    /// Errors with [`Error::NegativeExponent`] unless every stored exponent is nonnegative.
    pub fn ensure_power_series(self) -> Result<Self> {
        if self.is_power_series() {
            Ok(self)
        } else {
            Err(Error::NegativeExponent { min_exp: self.min_exp })
        }
    }

    pub fn coeff(&self, n: i64) -> Result<Coefficient> {
        if n >= self.order {
            return Err(Error::BeyondTruncation {
                exp: n,
                order: self.order,
            });
        }
        Ok(self.coeff_unchecked(n))
    }

    fn coeff_unchecked(&self, n: i64) -> Coefficient {
        match self.numer_at(n) {
            Some(c) => Coefficient::new(c.clone(), self.denom.clone()),
            None => Coefficient::zero(),
        }
    }

    fn numer_at(&self, n: i64) -> Option<&BigInt> {
        if n < self.min_exp {
            return None;
        }
        self.nums.get((n - self.min_exp) as usize)
    }

    /// Nonzero terms `(exp, coefficient)` in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, Coefficient)> + '_ {
        self.nums
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.min_exp + i as i64, Coefficient::new(c.clone(), self.denom.clone())))
    }

    /// Coefficients of `q^lo .. q^(hi-1)` as exact rationals; `hi` is clamped to the order.
    pub fn coeff_range(&self, lo: i64, hi: i64) -> Vec<Coefficient> {
        (lo..hi.min(self.order)).map(|n| self.coeff_unchecked(n)).collect()
    }

    /// Coefficients `q^0 .. q^(len-1)` as `i64`, panicking on fractions or overflow.
    /// Meant for tests and small tables.
    pub fn to_i64_vec(&self, len: usize) -> Vec<i64> {
        assert!(self.has_integer_coefficients(), "series has fractional coefficients");
        (0..len as i64)
            .map(|n| {
                assert!(n < self.order, "q^{n} is beyond the truncation order {}", self.order);
                self.numer_at(n)
                    .map_or(0, |c| c.to_i64().expect("coefficient overflows i64"))
            })
            .collect()
    }

    /// Lowers the truncation order to `order` (never raises it).
    pub fn truncate(&self, order: i64) -> Self {
        let order = order.min(self.order);
        Self::from_parts(self.min_exp, self.nums.clone(), self.denom.clone(), order)
    }

    /// Multiplication by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero(self.order + k);
        }
        LaurentSeries {
            min_exp: self.min_exp + k,
            nums: self.nums.clone(),
            denom: self.denom.clone(),
            order: self.order + k,
        }
    }

    pub fn scale(&self, c: &Coefficient) -> Self {
        if c.is_zero() {
            return Self::zero(self.order);
        }
        let nums = self.nums.iter().map(|x| x * c.numer()).collect();
        Self::from_parts(self.min_exp, nums, &self.denom * c.denom(), self.order)
    }

    pub fn scale_int(&self, k: i64) -> Self {
        self.scale(&Coefficient::from_integer(BigInt::from(k)))
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, true)
    }

    fn combine(&self, other: &Self, negate_other: bool) -> Self {
        let order = self.order.min(other.order);
        if other.is_zero() {
            return self.truncate(order);
        }
        if self.is_zero() {
            let t = other.truncate(order);
            return if negate_other { -&t } else { t };
        }
        let denom = self.denom.lcm(&other.denom);
        let fa = &denom / &self.denom;
        let fb = &denom / &other.denom;
        let lo = self.min_exp.min(other.min_exp);
        let hi = self.end_exp().max(other.end_exp()).min(order);
        if hi <= lo {
            return Self::zero(order);
        }
        let mut nums = vec![BigInt::zero(); (hi - lo) as usize];
        for (i, c) in self.nums.iter().enumerate() {
            let idx = self.min_exp + i as i64 - lo;
            if idx >= nums.len() as i64 {
                break;
            }
            nums[idx as usize] = if fa.is_one() { c.clone() } else { c * &fa };
        }
        for (i, c) in other.nums.iter().enumerate() {
            let idx = other.min_exp + i as i64 - lo;
            if idx >= nums.len() as i64 {
                break;
            }
            let term = if fb.is_one() { c.clone() } else { c * &fb };
            if negate_other {
                nums[idx as usize] -= term;
            } else {
                nums[idx as usize] += term;
            }
        }
        Self::from_parts(lo, nums, denom, order)
    }

    /// Cauchy product. The result is known below
    /// `min(a.order + b.min_exp, b.order + a.min_exp)`.
    pub fn mul(&self, other: &Self) -> Self {
        let order = (self.order + other.min_exp).min(other.order + self.min_exp);
        if self.is_zero() || other.is_zero() {
            return Self::zero(order);
        }
        let min_exp = self.min_exp + other.min_exp;
        let len = (order - min_exp).max(0) as usize;
        let nums = convolve(&self.nums, &other.nums, len);
        Self::from_parts(min_exp, nums, &self.denom * &other.denom, order)
    }

    pub fn square(&self) -> Self {
        self.mul(self)
    }

    /// Integer power; negative exponents go through [`LaurentSeries::inverse`].
    pub fn pow(&self, k: i32) -> Result<Self> {
        if k == 0 {
            return Ok(Self::one(self.order - self.min_exp));
        }
        let base = if k < 0 { self.inverse()? } else { self.clone() };
        let mut acc = base.clone();
        for _ in 1..k.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    /// Multiplicative inverse. For `a = c q^v + ...` the result starts at `q^-v`
    /// and is known below `a.order - 2v`.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroLeadingTerm);
        }
        let v = self.min_exp;
        let order = self.order - 2 * v;
        let len = (self.order - v).max(0) as usize;
        let a = &self.nums;
        let lead = &a[0];
        let nums;
        let mut denom = BigInt::one();
        if lead.abs().is_one() {
            // c_0 = lead, c_n = -lead * sum_{k=1}^{n} a_k c_{n-k}
            let mut c: Vec<BigInt> = Vec::with_capacity(len);
            for n in 0..len {
                if n == 0 {
                    c.push(lead.clone());
                    continue;
                }
                let mut acc = BigInt::zero();
                for k in 1..=n.min(a.len() - 1) {
                    if a[k].is_zero() || c[n - k].is_zero() {
                        continue;
                    }
                    acc += &a[k] * &c[n - k];
                }
                c.push(if lead.is_positive() { -acc } else { acc });
            }
            nums = c.into_iter().map(|x| x * &self.denom).collect::<Vec<_>>();
        } else {
            let inv_lead = Coefficient::new(BigInt::one(), lead.clone());
            let mut c: Vec<Coefficient> = Vec::with_capacity(len);
            for n in 0..len {
                if n == 0 {
                    c.push(inv_lead.clone());
                    continue;
                }
                let mut acc = Coefficient::zero();
                for k in 1..=n.min(a.len() - 1) {
                    if a[k].is_zero() || c[n - k].is_zero() {
                        continue;
                    }
                    acc += &c[n - k] * Coefficient::from_integer(a[k].clone());
                }
                c.push(-acc * &inv_lead);
            }
            for x in &c {
                denom = denom.lcm(x.denom());
            }
            nums = c
                .iter()
                .map(|x| x.numer() * (&denom / x.denom()) * &self.denom)
                .collect();
        }
        Ok(Self::from_parts(-v, nums, denom, order))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inverse()?))
    }

    /// Multiplies by the binomial `1 - sign * q^e`.
    pub fn mul_binomial(&self, sign: i8, e: i64) -> Self {
        if e < 0 {
            // 1 - s q^e = -s q^e (1 - s q^-e)
            return self.mul_binomial(sign, -e).shift(e).scale_int(-sign as i64);
        }
        if e == 0 {
            return self.scale_int(1 - sign as i64);
        }
        if self.is_zero() {
            return self.clone();
        }
        let len = (self.end_exp() + e).min(self.order) - self.min_exp;
        let mut nums = self.nums.clone();
        nums.resize(len.max(0) as usize, BigInt::zero());
        let e = e as usize;
        for n in (e..nums.len()).rev() {
            if n - e < self.nums.len() && !self.nums[n - e].is_zero() {
                if sign > 0 {
                    nums[n] -= &self.nums[n - e];
                } else {
                    nums[n] += &self.nums[n - e];
                }
            }
        }
        Self::from_parts(self.min_exp, nums, self.denom.clone(), self.order)
    }

    /// Divides by the binomial `1 - sign * q^e`, expanding the geometric series
    /// in positive powers of `q` whatever the sign of `e`.
    pub fn div_binomial(&self, sign: i8, e: i64) -> Result<Self> {
        if e == 0 {
            return if sign > 0 {
                Err(Error::ZeroExponent)
            } else {
                Ok(self.scale(&Coefficient::new(BigInt::one(), BigInt::from(2))))
            };
        }
        if e < 0 {
            // 1/(1 - s q^e) = -s q^-e / (1 - s q^-e)
            return self.shift(-e).scale_int(-sign as i64).div_binomial(sign, -e);
        }
        if self.is_zero() {
            return Ok(self.clone());
        }
        let len = (self.order - self.min_exp).max(0) as usize;
        let mut nums = self.nums.clone();
        nums.resize(len, BigInt::zero());
        let e = e as usize;
        for n in e..len {
            let (head, tail) = nums.split_at_mut(n);
            let prev = &head[n - e];
            if prev.is_zero() {
                continue;
            }
            if sign > 0 {
                tail[0] += prev;
            } else {
                tail[0] -= prev;
            }
        }
        Ok(Self::from_parts(self.min_exp, nums, self.denom.clone(), self.order))
    }

    /// The substitution `q -> q^k`.
    pub fn substitute_power(&self, k: i64) -> Self {
        assert!(k >= 1, "substitute_power needs k >= 1");
        if k == 1 {
            return self.clone();
        }
        if self.is_zero() {
            return Self::zero(self.order * k);
        }
        let mut nums = vec![BigInt::zero(); (self.nums.len() - 1) * k as usize + 1];
        for (i, c) in self.nums.iter().enumerate() {
            nums[i * k as usize] = c.clone();
        }
        Self::from_parts(self.min_exp * k, nums, self.denom.clone(), self.order * k)
    }

    /// Dissection: `sum_n a_(m n + d) q^n`, known below `ceil((order - d) / m)`.
    pub fn extract_progression(&self, m: i64, d: i64) -> Result<Self> {
        if m < 1 || !(0..m).contains(&d) {
            return Err(Error::InvalidArgument(format!(
                "progression needs m >= 1 and 0 <= d < m, got m = {m}, d = {d}"
            )));
        }
        if !self.is_power_series() {
            return Err(Error::NegativeExponent { min_exp: self.min_exp });
        }
        let order = num_integer::Integer::div_ceil(&(self.order - d), &m).max(0);
        let nums = (0..order)
            .map(|n| self.numer_at(m * n + d).cloned().unwrap_or_default())
            .collect();
        Ok(Self::from_parts(0, nums, self.denom.clone(), order))
    }

    /// First exponent on the common guaranteed range where the two series differ.
    pub fn first_difference(&self, other: &Self) -> Option<(i64, Coefficient, Coefficient)> {
        let order = self.order.min(other.order);
        let lo = self.min_exp.min(other.min_exp);
        (lo..order).find_map(|n| {
            let (a, b) = (self.coeff_unchecked(n), other.coeff_unchecked(n));
            (a != b).then_some((n, a, b))
        })
    }

    /// Equality on the intersection of the two guaranteed ranges.
    pub fn agrees_with(&self, other: &Self) -> bool {
        self.first_difference(other).is_none()
    }
}

fn small_bound(xs: &[BigInt]) -> Option<(Vec<i64>, u128)> {
    let mut out = Vec::with_capacity(xs.len());
    let mut max = 0u128;
    for x in xs {
        let v = x.to_i64()?;
        max = max.max(v.unsigned_abs() as u128);
        out.push(v);
    }
    Some((out, max))
}

fn convolve(a: &[BigInt], b: &[BigInt], len: usize) -> Vec<BigInt> {
    let (a, b) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    if let (Some((sa, ma)), Some((sb, mb))) = (small_bound(a), small_bound(b)) {
        let terms = a.len().min(b.len()) as u128;
        if ma
            .checked_mul(mb)
            .and_then(|p| p.checked_mul(terms))
            .is_some_and(|p| p < (1u128 << 126))
        {
            let mut out = vec![0i128; len];
            for (i, &x) in sa.iter().enumerate() {
                if x == 0 || i >= len {
                    continue;
                }
                let x = x as i128;
                for (j, &y) in sb.iter().enumerate().take(len - i) {
                    out[i + j] += x * y as i128;
                }
            }
            return out.into_iter().map(BigInt::from).collect();
        }
    }
    let mut out = vec![BigInt::zero(); len];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() || i >= len {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

impl Neg for &LaurentSeries {
    type Output = LaurentSeries;
    fn neg(self) -> LaurentSeries {
        LaurentSeries {
            min_exp: self.min_exp,
            nums: self.nums.iter().map(|c| -c).collect(),
            denom: self.denom.clone(),
            order: self.order,
        }
    }
}

impl Neg for LaurentSeries {
    type Output = LaurentSeries;
    fn neg(self) -> LaurentSeries {
        -&self
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&LaurentSeries> for &LaurentSeries {
            type Output = LaurentSeries;
            fn $method(self, rhs: &LaurentSeries) -> LaurentSeries {
                LaurentSeries::$method(self, rhs)
            }
        }
        impl $trait<LaurentSeries> for LaurentSeries {
            type Output = LaurentSeries;
            fn $method(self, rhs: LaurentSeries) -> LaurentSeries {
                LaurentSeries::$method(&self, &rhs)
            }
        }
        impl $trait<&LaurentSeries> for LaurentSeries {
            type Output = LaurentSeries;
            fn $method(self, rhs: &LaurentSeries) -> LaurentSeries {
                LaurentSeries::$method(&self, rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl fmt::Display for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.terms() {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let unit = mag.is_one();
            match (e, unit) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => write_power(f, e)?,
                (_, false) => {
                    write!(f, "{mag}*")?;
                    write_power(f, e)?
                }
            }
        }
        if !first {
            write!(f, " + ")?;
        }
        write!(f, "O(")?;
        write_power(f, self.order)?;
        write!(f, ")")
    }
}

fn write_power(f: &mut fmt::Formatter<'_>, e: i64) -> fmt::Result {
    match e {
        1 => write!(f, "q"),
        0 => write!(f, "1"),
        _ => write!(f, "q^{e}"),
    }
}
