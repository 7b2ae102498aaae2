//! Infinite products: Pochhammer symbols, the two-sided product `P(z, q)`,
//! theta series, and the product-only identities they satisfy.
//!
//! Generic variables (`z`, `x`, `zeta`, `t`) are instantiated as signed
//! monomials `±q^j`. A [`ProductSpec`] is a declarative quotient of
//! Pochhammer factors; evaluating one costs a single linear pass per binomial
//! factor, so no power series inversion is ever needed for products.

use std::fmt;
use std::ops::{Div, Mul, Neg};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::bilateral::BilateralSum;
use crate::error::{Error, Result};
use crate::report::IdentityReport;
use crate::series::{Coefficient, LaurentSeries};

/// `sign * q^exp` with `sign = ±1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SignedMonomial {
    pub sign: i8,
    pub exp: i64,
}

impl SignedMonomial {
    pub const ONE: SignedMonomial = SignedMonomial { sign: 1, exp: 0 };
    pub const MINUS_ONE: SignedMonomial = SignedMonomial { sign: -1, exp: 0 };

    pub fn new(sign: i8, exp: i64) -> Self {
        assert!(sign == 1 || sign == -1, "monomial sign must be +1 or -1");
        SignedMonomial { sign, exp }
    }

    /// `q^exp`
    pub fn q(exp: i64) -> Self {
        Self::new(1, exp)
    }

    /// `-q^exp`
    pub fn neg_q(exp: i64) -> Self {
        Self::new(-1, exp)
    }

    pub fn inv(self) -> Self {
        Self::new(self.sign, -self.exp)
    }

    pub fn pow(self, k: i64) -> Self {
        let sign = if k.rem_euclid(2) == 1 { self.sign } else { 1 };
        Self::new(sign, self.exp * k)
    }

    pub fn shift(self, k: i64) -> Self {
        Self::new(self.sign, self.exp + k)
    }

    pub fn to_series(self, order: i64) -> LaurentSeries {
        LaurentSeries::signed_monomial(self.sign, self.exp, order)
    }
}

impl Neg for SignedMonomial {
    type Output = Self;

    fn neg(self) -> Self {
        Self::new(-self.sign, self.exp)
    }
}

impl Mul for SignedMonomial {
    type Output = Self;

    fn mul(self, other: Self) -> Self {
        Self::new(self.sign * other.sign, self.exp + other.exp)
    }
}

impl Div for SignedMonomial {
    type Output = Self;

    fn div(self, other: Self) -> Self {
        Self::new(self.sign * other.sign, self.exp - other.exp)
    }
}

impl fmt::Display for SignedMonomial {
    /// Compact form used inside identity ids: `q5`, `-q10`, `1`, `-q-2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.sign < 0 { "-" } else { "" };
        if self.exp == 0 {
            write!(f, "{sign}1")
        } else {
            write!(f, "{sign}q{}", self.exp)
        }
    }
}

/// `(arg; q^modulus)_inf ^ multiplicity`
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PochFactor {
    pub arg: SignedMonomial,
    pub modulus: i64,
    pub multiplicity: i32,
}

/// `prefactor * q^leading_exp * prod factors`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductSpec {
    pub factors: Vec<PochFactor>,
    pub prefactor: Coefficient,
    pub leading_exp: i64,
}

impl Default for ProductSpec {
    fn default() -> Self {
        Self::one()
    }
}

impl ProductSpec {
    pub fn one() -> Self {
        ProductSpec {
            factors: Vec::new(),
            prefactor: Coefficient::one(),
            leading_exp: 0,
        }
    }

    pub fn constant(c: Coefficient) -> Self {
        Self::one().times(&c)
    }

    pub fn int(k: i64) -> Self {
        Self::constant(Coefficient::from_integer(k.into()))
    }

    pub fn times(mut self, c: &Coefficient) -> Self {
        self.prefactor *= c;
        self
    }

    pub fn times_int(self, k: i64) -> Self {
        self.times(&Coefficient::from_integer(k.into()))
    }

    pub fn times_frac(self, num: i64, den: i64) -> Self {
        self.times(&BigRational::new(num.into(), den.into()))
    }

    pub fn q_power(mut self, e: i64) -> Self {
        self.leading_exp += e;
        self
    }

    pub fn times_monomial(self, m: SignedMonomial) -> Self {
        self.times_int(m.sign as i64).q_power(m.exp)
    }

    pub fn negate(self) -> Self {
        self.times_int(-1)
    }

    pub fn poch(mut self, arg: SignedMonomial, modulus: i64, multiplicity: i32) -> Self {
        assert!(modulus >= 1, "Pochhammer modulus must be positive");
        if multiplicity != 0 {
            self.factors.push(PochFactor {
                arg,
                modulus,
                multiplicity,
            });
        }
        self
    }

    /// `(q^e1, q^e2, ...; q^modulus)_inf ^ multiplicity`
    pub fn pochs(self, exps: &[i64], modulus: i64, multiplicity: i32) -> Self {
        exps.iter()
            .fold(self, |s, &e| s.poch(SignedMonomial::q(e), modulus, multiplicity))
    }

    /// `(-q^e1, -q^e2, ...; q^modulus)_inf ^ multiplicity`
    pub fn neg_pochs(self, exps: &[i64], modulus: i64, multiplicity: i32) -> Self {
        exps.iter()
            .fold(self, |s, &e| s.poch(SignedMonomial::neg_q(e), modulus, multiplicity))
    }

    pub fn mul(&self, other: &ProductSpec) -> ProductSpec {
        let mut factors = self.factors.clone();
        factors.extend_from_slice(&other.factors);
        ProductSpec {
            factors,
            prefactor: &self.prefactor * &other.prefactor,
            leading_exp: self.leading_exp + other.leading_exp,
        }
    }

    pub fn inv(&self) -> ProductSpec {
        assert!(!self.prefactor.is_zero(), "cannot invert a zero product");
        ProductSpec {
            factors: self
                .factors
                .iter()
                .map(|f| PochFactor {
                    multiplicity: -f.multiplicity,
                    ..*f
                })
                .collect(),
            prefactor: self.prefactor.recip(),
            leading_exp: -self.leading_exp,
        }
    }

    pub fn div(&self, other: &ProductSpec) -> ProductSpec {
        self.mul(&other.inv())
    }

    pub fn pow(&self, k: i32) -> ProductSpec {
        let base = if k < 0 { self.inv() } else { self.clone() };
        (0..k.unsigned_abs()).fold(ProductSpec::one(), |acc, _| acc.mul(&base))
    }

    /// `P(z, q^base)` with the argument brought into `0 <= exp < base` by
    /// repeated use of `P(zq, q) = -z^-1 P(z, q)`; the accumulated `-z^-1`
    /// factors become the prefactor and leading power.
    pub fn big_p(z: SignedMonomial, base: i64) -> ProductSpec {
        assert!(base >= 1);
        let mut spec = ProductSpec::one();
        let mut z = z;
        while z.exp >= base {
            // P(w q) = -w^-1 P(w) with w = z / q
            let w = z.shift(-base);
            spec = spec.times_monomial(w.inv().neg());
            z = w;
        }
        while z.exp < 0 {
            // P(z) = -z P(z q)
            spec = spec.times_monomial(z.neg());
            z = z.shift(base);
        }
        spec.mul(&Self::big_p_direct(z, base))
    }

    /// `P(z, q^base) = (z; q^base)_inf (q^base / z; q^base)_inf` written out
    /// without any normalization of the argument.
    pub fn big_p_direct(z: SignedMonomial, base: i64) -> ProductSpec {
        ProductSpec::one().poch(z, base, 1).poch(z.inv().shift(base), base, 1)
    }

    /// `P(0) = (q^base; q^base)_inf`, which is not `P(z)` at `z = 1`.
    pub fn p_zero(base: i64) -> ProductSpec {
        ProductSpec::one().poch(SignedMonomial::q(base), base, 1)
    }

    /// `(q^m; q^m)_inf`
    pub fn euler(m: i64) -> ProductSpec {
        Self::p_zero(m)
    }

    /// `(q)_inf / (-q)_inf`
    pub fn q_over_neg_q() -> ProductSpec {
        ProductSpec::one()
            .poch(SignedMonomial::q(1), 1, 1)
            .poch(SignedMonomial::neg_q(1), 1, -1)
    }

    pub fn eval(&self, order: i64) -> Result<LaurentSeries> {
        if self.prefactor.is_zero() {
            return Ok(LaurentSeries::zero(order));
        }
        let mut work = order - self.leading_exp;
        for f in &self.factors {
            if f.multiplicity > 0 {
                for e in laurent_exponents(f) {
                    work -= e * f.multiplicity as i64;
                }
            }
        }
        let mut acc = LaurentSeries::one(work);
        // Positive-exponent binomials first, while the accumulator is still a
        // power series, so that factors at or beyond the working order are inert.
        for f in &self.factors {
            let mut e = first_positive(f);
            while e < work {
                if e > 0 {
                    acc = apply_binomial(acc, f.arg.sign, e, f.multiplicity)?;
                }
                e += f.modulus;
            }
        }
        for f in &self.factors {
            for e in laurent_exponents(f).chain(zero_exponent(f)) {
                acc = apply_binomial(acc, f.arg.sign, e, f.multiplicity)?;
            }
        }
        Ok(acc.shift(self.leading_exp).scale(&self.prefactor).truncate(order))
    }
}

fn first_positive(f: &PochFactor) -> i64 {
    if f.arg.exp > 0 {
        f.arg.exp
    } else {
        let k = (-f.arg.exp) / f.modulus + 1;
        f.arg.exp + k * f.modulus
    }
}

/// Exponents of the finitely many factors `1 - s q^e` with `e < 0`.
fn laurent_exponents(f: &PochFactor) -> impl Iterator<Item = i64> + '_ {
    (0..).map(move |k| f.arg.exp + k * f.modulus).take_while(|&e| e < 0)
}

fn zero_exponent(f: &PochFactor) -> Option<i64> {
    (f.arg.exp <= 0 && f.arg.exp.rem_euclid(f.modulus) == 0).then_some(0)
}

fn apply_binomial(mut acc: LaurentSeries, sign: i8, e: i64, multiplicity: i32) -> Result<LaurentSeries> {
    for _ in 0..multiplicity.unsigned_abs() {
        acc = if multiplicity > 0 {
            acc.mul_binomial(sign, e)
        } else {
            acc.div_binomial(sign, e).map_err(|err| match err {
                Error::ZeroExponent => Error::ZeroLeadingTerm,
                other => other,
            })?
        };
    }
    Ok(acc)
}

/// Formal sum of product terms.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ProductSum {
    pub terms: Vec<ProductSpec>,
}

impl ProductSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn plus(mut self, term: ProductSpec) -> Self {
        self.terms.push(term);
        self
    }

    pub fn minus(self, term: ProductSpec) -> Self {
        self.plus(term.negate())
    }

    pub fn eval(&self, order: i64) -> Result<LaurentSeries> {
        let mut acc = LaurentSeries::zero(order);
        for t in &self.terms {
            acc = acc.add(&t.eval(order)?);
        }
        Ok(acc)
    }
}

impl From<ProductSpec> for ProductSum {
    fn from(term: ProductSpec) -> Self {
        ProductSum { terms: vec![term] }
    }
}

/// `(arg; q^modulus)_inf` truncated below `order`.
pub fn pochhammer_inf(arg: SignedMonomial, modulus: i64, order: i64) -> Result<LaurentSeries> {
    ProductSpec::one().poch(arg, modulus, 1).eval(order)
}

pub fn eval_product(spec: &ProductSpec, order: i64) -> Result<LaurentSeries> {
    spec.eval(order)
}

/// `P(z, q^base)`.
pub fn big_p(z: SignedMonomial, base: i64, order: i64) -> Result<LaurentSeries> {
    ProductSpec::big_p(z, base).eval(order)
}

/// `sum_n z^n q^(base n^2)`, summed directly.
pub fn theta(z: SignedMonomial, base: i64, order: i64) -> Result<LaurentSeries> {
    BilateralSum::new(base, z.exp).ratio_sign(z.sign).expand(order)
}

/// Right side of the triple product identity, `(-zq, -q/z, q^2; q^2)_inf` in base `q^base`.
pub fn triple_product(z: SignedMonomial, base: i64) -> ProductSpec {
    ProductSpec::one()
        .poch(z.neg().shift(base), 2 * base, 1)
        .poch(z.inv().neg().shift(base), 2 * base, 1)
        .poch(SignedMonomial::q(2 * base), 2 * base, 1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DissectionVariant {
    /// base 9 / 18 dissection
    Base9,
    /// base 25 / 50 dissection
    Base25,
}

/// Both sides of the dissections of `(q)_inf / (-q)_inf`.
pub fn dissection_sides(variant: DissectionVariant) -> (ProductSum, ProductSum) {
    let lhs = ProductSum::from(ProductSpec::q_over_neg_q());
    let rhs = match variant {
        DissectionVariant::Base9 => ProductSum::new()
            .plus(ProductSpec::one().pochs(&[9], 9, 1).neg_pochs(&[9], 9, -1))
            .plus(ProductSpec::int(-2).q_power(1).pochs(&[3, 15, 18], 18, 1)),
        DissectionVariant::Base25 => ProductSum::new()
            .plus(ProductSpec::one().pochs(&[25], 25, 1).neg_pochs(&[25], 25, -1))
            .plus(ProductSpec::int(-2).q_power(1).pochs(&[15, 35, 50], 50, 1))
            .plus(ProductSpec::int(2).q_power(4).pochs(&[5, 45, 50], 50, 1)),
    };
    (lhs, rhs)
}

pub fn verify_sides(id: &str, lhs: &ProductSum, rhs: &ProductSum, order: i64) -> Result<IdentityReport> {
    Ok(IdentityReport::compare(id, &lhs.eval(order)?, &rhs.eval(order)?, order))
}

pub fn verify_dissection(variant: DissectionVariant, order: i64) -> Result<IdentityReport> {
    let (lhs, rhs) = dissection_sides(variant);
    let id = match variant {
        DissectionVariant::Base9 => "lemma3.1.eq1",
        DissectionVariant::Base25 => "lemma3.1.eq2",
    };
    verify_sides(id, &lhs, &rhs, order)
}

/// The Hickerson family of two-variable product identities.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Hickerson {
    /// `P(x)P(z)(q)^2` as a two-term sum over base `q^2`
    First,
    /// difference of the sign-twisted products
    Second,
    /// sum of the sign-twisted products
    Third,
    /// three times the first twist minus the second
    Fourth,
}

impl Hickerson {
    pub const ALL: [Hickerson; 4] = [Hickerson::First, Hickerson::Second, Hickerson::Third, Hickerson::Fourth];

    pub fn label(self) -> &'static str {
        match self {
            Hickerson::First => "lemma3.2",
            Hickerson::Second => "lemma3.3",
            Hickerson::Third => "lemma3.4",
            Hickerson::Fourth => "lemma3.5",
        }
    }
}

pub fn hickerson_sides(which: Hickerson, x: SignedMonomial, z: SignedMonomial, base: i64) -> (ProductSum, ProductSum) {
    let b = base;
    let p = |w: SignedMonomial| ProductSpec::big_p(w, b);
    let p2 = |w: SignedMonomial| ProductSpec::big_p(w, 2 * b);
    let e1 = ProductSpec::euler(b).pow(2);
    let e2 = ProductSpec::euler(2 * b).pow(2);
    let qq = SignedMonomial::q(b);
    let twist_a = p(x.neg()).mul(&p(z)).mul(&e1);
    let twist_b = p(x).mul(&p(z.neg())).mul(&e1);
    match which {
        Hickerson::First => {
            let lhs = p(x).mul(&p(z)).mul(&e1);
            let r1 = p2(x.mul(z).neg()).mul(&p2(qq.mul(z).div(x).neg())).mul(&e2);
            let r2 = p2(x.mul(z).mul(qq).neg())
                .mul(&p2(z.div(x).neg()))
                .mul(&e2)
                .times_monomial(x)
                .negate();
            (lhs.into(), ProductSum::new().plus(r1).plus(r2))
        }
        Hickerson::Second => {
            let lhs = ProductSum::new().plus(twist_a).minus(twist_b);
            let rhs = p2(z.div(x))
                .mul(&p2(x.mul(z).mul(qq)))
                .mul(&e2)
                .times_monomial(x)
                .times_int(2);
            (lhs, rhs.into())
        }
        Hickerson::Third => {
            let lhs = ProductSum::new().plus(twist_a).plus(twist_b);
            let rhs = p2(x.mul(z)).mul(&p2(qq.mul(z).div(x))).mul(&e2).times_int(2);
            (lhs, rhs.into())
        }
        Hickerson::Fourth => {
            let lhs = ProductSum::new().plus(twist_a.times_int(3)).minus(twist_b);
            let r1 = p2(x.mul(z)).mul(&p2(z.mul(qq).div(x))).mul(&e2).times_int(2);
            let r2 = p2(x.mul(z).mul(qq))
                .mul(&p2(z.div(x)))
                .mul(&e2)
                .times_monomial(x)
                .times_int(4);
            (lhs, ProductSum::new().plus(r1).plus(r2))
        }
    }
}

pub fn verify_hickerson(
    which: Hickerson,
    x: SignedMonomial,
    z: SignedMonomial,
    base: i64,
    order: i64,
) -> Result<IdentityReport> {
    let (lhs, rhs) = hickerson_sides(which, x, z, base);
    let id = format!("{}@x={x},z={z},base={base}", which.label());
    verify_sides(&id, &lhs, &rhs, order)
}

/// The three terms of the addition theorem; their sum vanishes.
pub fn addition_terms(z: SignedMonomial, zeta: SignedMonomial, t: SignedMonomial, base: i64) -> ProductSum {
    let p = |w: SignedMonomial| ProductSpec::big_p(w, base);
    ProductSum::new()
        .plus(p(z).pow(2).mul(&p(zeta.mul(t))).mul(&p(zeta.div(t))))
        .minus(p(zeta).pow(2).mul(&p(z.mul(t))).mul(&p(z.div(t))))
        .plus(
            p(t).pow(2)
                .mul(&p(z.mul(zeta)))
                .mul(&p(z.div(zeta)))
                .times_monomial(zeta.div(t)),
        )
}

pub fn verify_addition(
    z: SignedMonomial,
    zeta: SignedMonomial,
    t: SignedMonomial,
    base: i64,
    order: i64,
) -> Result<IdentityReport> {
    let id = format!("addition@z={z},zeta={zeta},t={t},base={base}");
    let sum = addition_terms(z, zeta, t, base).eval(order)?;
    Ok(IdentityReport::vanishes(id, &sum, order))
}

/// The relations between the normalized products `P(a) = P(y^a, y^ell)` in
/// the variable `y`: `P(ell - a) = P(a)` and `P(-a) = P(ell + a) = -y^-a P(a)`,
/// plus `P(z^-1 q, q) = P(z, q)` and `P(zq, q) = -z^-1 P(z, q)` for `z = y^a`.
/// Every left side is expanded directly from the defining product, without the
/// argument normalization used by [`ProductSpec::big_p`].
pub fn verify_p_relations(ell: i64, order: i64) -> Result<IdentityReport> {
    let mut parts = Vec::new();
    let direct = |j: i64| ProductSpec::big_p_direct(SignedMonomial::q(j), ell).eval(order);
    for a in 1..ell {
        let pa = ProductSpec::big_p(SignedMonomial::q(a), ell).eval(order)?;
        let twisted = pa.shift(-a).scale_int(-1);
        parts.push(IdentityReport::compare(
            format!("p3@a={a}"),
            &direct(ell - a)?,
            &pa,
            order,
        ));
        parts.push(IdentityReport::compare(
            format!("p4-@a={a}"),
            &direct(-a)?,
            &twisted,
            order,
        ));
        parts.push(IdentityReport::compare(
            format!("p4+@a={a}"),
            &direct(ell + a)?,
            &twisted,
            order,
        ));
        // (p1), (p2) at z = y^a with q = y^ell
        let z = SignedMonomial::q(a);
        let p1 = ProductSpec::big_p_direct(z.inv().shift(ell), ell).eval(order)?;
        parts.push(IdentityReport::compare(format!("p1@a={a}"), &p1, &direct(a)?, order));
        let p2 = ProductSpec::big_p_direct(z.shift(ell), ell).eval(order)?;
        let rhs = direct(a)?.shift(-a).scale_int(-1);
        parts.push(IdentityReport::compare(format!("p2@a={a}"), &p2, &rhs, order));
    }
    Ok(IdentityReport::merge(format!("p-relations@ell={ell}"), parts))
}

/// Theta series against its triple-product form.
pub fn verify_triple_product(z: SignedMonomial, base: i64, order: i64) -> Result<IdentityReport> {
    let lhs = theta(z, base, order)?;
    let rhs = triple_product(z, base).eval(order)?;
    Ok(IdentityReport::compare(
        format!("jtp@z={z},base={base}"),
        &lhs,
        &rhs,
        order,
    ))
}

/// Integer coefficient helper for tests and tables.
pub fn int(k: i64) -> Coefficient {
    Coefficient::from_integer(BigInt::from(k))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent oracle: multiply out `prod_{k} (1 - a q^(r + k m))` term by term
    /// in plain `i64` arithmetic.
    fn naive_poch(sign: i64, r: i64, m: i64, order: usize) -> Vec<i64> {
        let mut c = vec![0i64; order];
        c[0] = 1;
        let mut e = r;
        while (e as usize) < order {
            for n in (e as usize..order).rev() {
                c[n] -= sign * c[n - e as usize];
            }
            e += m;
        }
        c
    }

    #[test]
    fn euler_product_is_pentagonal() {
        let s = pochhammer_inf(SignedMonomial::q(1), 1, 13).unwrap();
        let oracle = naive_poch(1, 1, 1, 13);
        assert_eq!(s.to_i64_vec(13), oracle);
        assert_eq!(oracle, vec![1, -1, -1, 0, 0, 1, 0, 1, 0, 0, 0, 0, -1]);
    }

    #[test]
    fn pochhammer_matches_naive_expansion() {
        for (sign, r, m) in [(1, 2, 5), (-1, 3, 7), (-1, 1, 1), (1, 9, 9)] {
            let s = pochhammer_inf(SignedMonomial::new(sign as i8, r), m, 60).unwrap();
            assert_eq!(s.to_i64_vec(60), naive_poch(sign, r, m, 60), "({sign}q^{r}; q^{m})");
        }
    }

    #[test]
    fn one_minus_x_one_plus_x() {
        let spec = ProductSpec::one()
            .pochs(&[1], 1, 1)
            .neg_pochs(&[1], 1, 1)
            .pochs(&[2], 2, -1);
        assert_eq!(spec.eval(50).unwrap(), LaurentSeries::one(50));
    }

    #[test]
    fn unit_argument_gives_zero() {
        assert!(pochhammer_inf(SignedMonomial::ONE, 1, 20).unwrap().is_zero());
        assert!(big_p(SignedMonomial::ONE, 7, 20).unwrap().is_zero());
    }

    #[test]
    fn empty_product_is_one() {
        assert_eq!(ProductSpec::one().eval(10).unwrap(), LaurentSeries::one(10));
    }

    #[test]
    fn dividing_by_vanishing_factor_errors() {
        let spec = ProductSpec::one().poch(SignedMonomial::ONE, 3, -1);
        assert_eq!(spec.eval(10), Err(Error::ZeroLeadingTerm));
    }

    #[test]
    fn overpartition_product() {
        let spec = ProductSpec::one().neg_pochs(&[1], 1, 1).pochs(&[1], 1, -1);
        assert_eq!(spec.eval(8).unwrap().to_i64_vec(8), vec![1, 2, 4, 8, 14, 24, 40, 64]);
    }

    #[test]
    fn p_at_minus_one_has_constant_two() {
        let s = big_p(SignedMonomial::MINUS_ONE, 5, 20).unwrap();
        assert_eq!(s.coeff(0).unwrap(), int(2));
    }

    #[test]
    fn p_matches_pochhammer_pair() {
        // P(q^2, q^5) = (q^2, q^3; q^5)_inf
        let p = big_p(SignedMonomial::q(2), 5, 100).unwrap();
        let direct = ProductSpec::one().pochs(&[2, 3], 5, 1).eval(100).unwrap();
        assert_eq!(p, direct);
    }

    #[test]
    fn p_reflection_sampled() {
        // P(z^-1 q, q) = P(z, q) at z = q^2, base 7
        let z = SignedMonomial::q(2);
        let lhs = big_p(z.inv().shift(7), 7, 120).unwrap();
        let rhs = big_p(z, 7, 120).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn normalization_agrees_with_direct_laurent_expansion() {
        for j in [-13, -7, -1, 0, 3, 7, 9, 16] {
            for sign in [1, -1] {
                let z = SignedMonomial::new(sign, j);
                let a = ProductSpec::big_p(z, 7).eval(80).unwrap();
                let b = ProductSpec::big_p_direct(z, 7).eval(80).unwrap();
                assert!(a.agrees_with(&b), "z = {z}");
            }
        }
    }

    #[test]
    fn theta_examples() {
        let t = theta(SignedMonomial::MINUS_ONE, 1, 17).unwrap();
        let mut want = vec![0i64; 17];
        want[0] = 1;
        for k in 1..5 {
            want[k * k] = if k % 2 == 1 { -2 } else { 2 };
        }
        assert_eq!(t.to_i64_vec(17), want);
        let t = theta(SignedMonomial::ONE, 1, 10).unwrap();
        assert_eq!(t.to_i64_vec(10), vec![1, 2, 0, 0, 2, 0, 0, 0, 0, 2]);
    }

    #[test]
    fn triple_product_samples() {
        for (z, base) in [
            (SignedMonomial::q(1), 1),
            (SignedMonomial::MINUS_ONE, 1),
            (SignedMonomial::neg_q(2), 3),
            (SignedMonomial::q(3), 5),
        ] {
            assert!(
                verify_triple_product(z, base, 80).unwrap().pass,
                "z = {z}, base = {base}"
            );
        }
    }

    #[test]
    fn dissection_both_variants() {
        assert!(verify_dissection(DissectionVariant::Base9, 100).unwrap().pass);
        assert!(verify_dissection(DissectionVariant::Base25, 150).unwrap().pass);
    }

    #[test]
    fn dissection_sign_mutation_fails_at_q1() {
        let (lhs, mut rhs) = dissection_sides(DissectionVariant::Base9);
        rhs.terms[1] = rhs.terms[1].clone().negate();
        let r = verify_sides("mutant", &lhs, &rhs, 100).unwrap();
        assert!(!r.pass);
        assert_eq!(r.mismatch_exp(), Some(1));
    }

    #[test]
    fn hickerson_assembly_cases() {
        let r = verify_hickerson(
            Hickerson::Second,
            SignedMonomial::neg_q(5),
            SignedMonomial::neg_q(10),
            25,
            300,
        );
        assert!(r.unwrap().pass);
        let r = verify_hickerson(Hickerson::Fourth, SignedMonomial::q(5), SignedMonomial::q(10), 25, 300);
        assert!(r.unwrap().pass);
    }

    #[test]
    fn hickerson_all_small_cases() {
        for which in Hickerson::ALL {
            for (x, z) in [(1i64, 2i64), (3, -2), (-4, 5)] {
                let x = SignedMonomial::new(x.signum() as i8, i64::abs(x));
                let z = SignedMonomial::new(z.signum() as i8, i64::abs(z));
                let r = verify_hickerson(which, x, z, 11, 120).unwrap();
                assert!(r.pass, "{}: {:?}", r.id, r.first_mismatch);
            }
        }
    }

    #[test]
    fn addition_theorem_cases() {
        let q = SignedMonomial::q;
        assert!(verify_addition(q(20), q(10), q(5), 50, 400).unwrap().pass);
        assert!(verify_addition(q(20), q(15), q(10), 50, 400).unwrap().pass);
        assert!(verify_addition(q(3), q(3), q(1), 7, 100).unwrap().pass);
    }

    #[test]
    fn p_relations_hold() {
        for ell in [3, 5, 7] {
            let r = verify_p_relations(ell, 200).unwrap();
            assert!(r.pass, "{:?}", r);
        }
    }

    #[test]
    fn p_zero_is_euler_product_in_base() {
        for ell in [3, 5] {
            let a = ProductSpec::p_zero(ell).eval(100).unwrap();
            let b = pochhammer_inf(SignedMonomial::q(ell), ell, 100).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn monomial_display() {
        assert_eq!(SignedMonomial::neg_q(5).to_string(), "-q5");
        assert_eq!(SignedMonomial::ONE.to_string(), "1");
        assert_eq!(SignedMonomial::q(-2).to_string(), "q-2");
    }
}
