//! Generalized Lambert series `Σ(z, ζ, q)`, the index forms `Σ(a, b)` and
//! `Σ(0, b)`, the sums `S̄(b)`, and the g-functions built from them.
//!
//! Index forms live in the variable `q` with `y = q^ell`: `Σ(a, b)` is
//! `Σ(y^a, y^b, y^ell)`, so a spec for it has `z = q^(ell a)`,
//! `ζ = q^(ell b)` and base `ell^2`. Indices outside `(0, ell)` need no special
//! treatment: every term is expanded exactly, whatever the sign of its
//! denominator exponent, and the power-series property of the total is
//! checked afterwards.

use crate::bilateral::{BilateralSum, Denominator};
use crate::error::{Error, Result};
use crate::products::{ProductSpec, SignedMonomial};
use crate::report::IdentityReport;
use crate::series::{Coefficient, LaurentSeries};

/// `Σ(z, ζ, q^base) = sum_n (-1)^n ζ^n q^(base (n^2 + n)) / (1 - z q^(base n))`.
/// With `primed` set, `z` must be `1` and the `n = 0` term is dropped.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LambertSpec {
    pub z: SignedMonomial,
    pub zeta: SignedMonomial,
    pub base: i64,
    pub primed: bool,
}

impl LambertSpec {
    pub fn new(z: SignedMonomial, zeta: SignedMonomial, base: i64) -> Self {
        LambertSpec {
            z,
            zeta,
            base,
            primed: false,
        }
    }

    /// `Σ(a, b) = Σ(y^a, y^b, y^ell)` with `y = q^ell`.
    pub fn index(a: i64, b: i64, ell: i64) -> Self {
        Self::new(SignedMonomial::q(ell * a), SignedMonomial::q(ell * b), ell * ell)
    }

    /// `Σ(0, b)`: the primed sum with `z = 1`, again with `y = q^ell`.
    pub fn index_zero(b: i64, ell: i64) -> Self {
        LambertSpec {
            z: SignedMonomial::ONE,
            zeta: SignedMonomial::q(ell * b),
            base: ell * ell,
            primed: true,
        }
    }

    fn to_bilateral(self) -> Result<BilateralSum> {
        if self.base < 1 {
            return Err(Error::InvalidArgument(format!(
                "Lambert base must be positive, got {}",
                self.base
            )));
        }
        if self.primed && self.z != SignedMonomial::ONE {
            return Err(Error::InvalidArgument("primed Lambert sums need z = 1".into()));
        }
        let mut sum = BilateralSum::new(self.base, self.base + self.zeta.exp)
            .alternating()
            .ratio_sign(self.zeta.sign)
            .over(Denominator::new(self.z.sign, self.base, self.z.exp));
        if self.primed {
            sum = sum.omit_zero();
        }
        Ok(sum)
    }
}

/// `1 / (1 - q^e)`; for `e < 0` this is `-sum_{k >= 1} q^(-k e)`.
pub fn expand_geom(e: i64, order: i64) -> Result<LaurentSeries> {
    if e == 0 {
        return Err(Error::ZeroExponent);
    }
    LaurentSeries::one(order).div_binomial(1, e)
}

pub fn sigma(spec: &LambertSpec, order: i64) -> Result<LaurentSeries> {
    spec.to_bilateral()?.expand(order)
}

/// Expansion with the summation interval widened by `margin` on each side;
/// used to confirm that the interval is large enough.
pub fn sigma_with_margin(spec: &LambertSpec, order: i64, margin: i64) -> Result<LaurentSeries> {
    spec.to_bilateral()?.expand_with_margin(order, margin)
}

/// `Σ'_{n != 0} (-1)^n q^(b n + ell n (n+1)) / (1 - q^(ell n))`, in its own variable.
pub fn sigma_primed(b: i64, ell: i64, order: i64) -> Result<LaurentSeries> {
    let spec = LambertSpec {
        z: SignedMonomial::ONE,
        zeta: SignedMonomial::q(b),
        base: ell,
        primed: true,
    };
    sigma(&spec, order)
}

fn s_bar_sum(b: i64, ell: i64) -> BilateralSum {
    BilateralSum::new(1, b)
        .alternating()
        .over(Denominator::new(1, ell, 0))
        .omit_zero()
}

/// `S̄(b) = Σ'_{n != 0} (-1)^n q^(n^2 + b n) / (1 - q^(ell n))`.
pub fn s_bar(b: i64, ell: i64, order: i64) -> Result<LaurentSeries> {
    s_bar_sum(b, ell).expand(order)
}

pub fn s_bar_with_margin(b: i64, ell: i64, order: i64, margin: i64) -> Result<LaurentSeries> {
    s_bar_sum(b, ell).expand_with_margin(order, margin)
}

/// `g(a) = g(y^a, y^ell)` for `a` not a multiple of `ell`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GFuncSpec {
    pub a: i64,
    pub ell: i64,
}

impl GFuncSpec {
    pub fn new(a: i64, ell: i64) -> Result<Self> {
        if ell < 2 || a.rem_euclid(ell) == 0 {
            return Err(Error::InvalidArgument(format!(
                "g(a) needs a not divisible by ell, got a = {a}, ell = {ell}"
            )));
        }
        Ok(GFuncSpec { a, ell })
    }

    /// The generic instantiation `(z, base)` with `z = y^a = q^(ell a)`.
    pub fn instantiation(self) -> (SignedMonomial, i64) {
        (SignedMonomial::q(self.ell * self.a), self.ell * self.ell)
    }
}

/// `z P(z^2) P(-1) / (P(z) P(-z))`, all in base `q^base`.
pub fn g_prefactor(z: SignedMonomial, base: i64) -> ProductSpec {
    let p = |w| ProductSpec::big_p(w, base);
    p(z.pow(2))
        .mul(&p(SignedMonomial::MINUS_ONE))
        .div(&p(z).mul(&p(-z)))
        .times_monomial(z)
}

/// `g(z, q^base) = z P(z^2)P(-1)/(P(z)P(-z)) Σ(z, 1) - z^2 Σ(z^2, z^2)
///   - Σ'_n (-1)^n z^(-2n) q^(n(n+1)) / (1 - q^n)`, with `q -> q^base` throughout.
pub fn g_generic(z: SignedMonomial, base: i64, order: i64) -> Result<LaurentSeries> {
    let first = eval_padded(&g_prefactor(z, base), order)?;
    let sig = sigma(
        &LambertSpec::new(z, SignedMonomial::ONE, base),
        order - first.min_exp().min(0),
    )?;
    let f1 = first.mul(&sig);
    let z2 = z.pow(2);
    let f2 = sigma(&LambertSpec::new(z2, z2, base), order - z2.exp.min(0))?.shift(z2.exp);
    let f3 = BilateralSum::new(base, base - 2 * z.exp)
        .alternating()
        .over(Denominator::new(1, base, 0))
        .omit_zero()
        .expand(order)?;
    Ok((f1 - f2 - f3).truncate(order))
}

pub fn g_func(spec: GFuncSpec, order: i64) -> Result<LaurentSeries> {
    let (z, base) = spec.instantiation();
    g_generic(z, base, order)?.ensure_power_series()
}

fn half() -> Coefficient {
    Coefficient::new(1.into(), 2.into())
}

/// Lemma relating the two-sided Lambert sum in `ζ^(±2n)` to a single
/// `Σ(z, 1, q)` plus a product (the four-term identity), at `q -> q^base`.
pub fn lambert_product_sides(
    zeta: SignedMonomial,
    z: SignedMonomial,
    base: i64,
    order: i64,
) -> Result<(LaurentSeries, LaurentSeries)> {
    let b = base;
    let k = zeta.exp;
    let sz = z.sign * zeta.sign;
    let left1 = BilateralSum::new(b, b - 2 * k)
        .alternating()
        .over(Denominator::new(sz, b, z.exp - k));
    let left2 = BilateralSum::new(b, b + 2 * k)
        .constant(2 * k)
        .alternating()
        .over(Denominator::new(sz, b, z.exp + k));
    let lhs = left1.expand(order)?.add(&left2.expand(order)?);

    let q = SignedMonomial::q(b);
    let poch =
        |spec: ProductSpec, args: &[SignedMonomial], mult: i32| args.iter().fold(spec, |s, &a| s.poch(a, b, mult));
    let zi = z.inv();
    let ze = zeta.inv();
    let lead = poch(
        ProductSpec::one().times_monomial(zeta),
        &[zeta.pow(2), q * ze.pow(2), SignedMonomial::MINUS_ONE, -q],
        1,
    );
    let lead = poch(lead, &[zeta, q * ze, -zeta, -(q * ze)], -1);
    let tail = poch(
        ProductSpec::one(),
        &[zeta, q * ze, zeta.pow(2), q * ze.pow(2), -z, -(q * zi), q, q],
        1,
    );
    let tail = poch(
        tail,
        &[
            z,
            q * zi,
            z * zeta,
            q * zi * ze,
            z * ze,
            q * zeta * zi,
            -zeta,
            -(q * ze),
        ],
        -1,
    );
    let lead_series = eval_padded(&lead, order)?;
    let sig_order = order - lead_series.min_exp().min(0);
    let sig = sigma(&LambertSpec::new(z, SignedMonomial::ONE, b), sig_order)?;
    let rhs = lead_series.mul(&sig).add(&eval_padded(&tail, order)?);
    Ok((lhs.truncate(order), rhs.truncate(order)))
}

/// Evaluates a product so that it is known below `order` even after any
/// negative leading power is taken into account by later multiplications.
pub(crate) fn eval_padded(spec: &ProductSpec, order: i64) -> Result<LaurentSeries> {
    let s = spec.eval(order)?;
    if s.min_exp() < 0 {
        spec.eval(order - s.min_exp())
    } else {
        Ok(s)
    }
}

pub fn verify_lambert_product(
    zeta: SignedMonomial,
    z: SignedMonomial,
    base: i64,
    order: i64,
) -> Result<IdentityReport> {
    let (lhs, rhs) = lambert_product_sides(zeta, z, base, order)?;
    Ok(IdentityReport::compare(
        format!("lemma4.1@zeta={zeta},z={z},base={base}"),
        &lhs,
        &rhs,
        order,
    ))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GRelation {
    /// `2g(z) - g(z^2) + 1/2` as a sum of two products
    Duplication,
    /// `g(z) + g(z^-1 q) = 1`
    Reflection,
}

pub fn g_relation_sides(
    part: GRelation,
    z: SignedMonomial,
    base: i64,
    order: i64,
) -> Result<(LaurentSeries, LaurentSeries)> {
    let b = base;
    match part {
        GRelation::Duplication => {
            let lhs = g_generic(z, b, order)?
                .scale_int(2)
                .sub(&g_generic(z.pow(2), b, order)?)
                .add(&LaurentSeries::constant(half(), order));
            let p = |w| ProductSpec::big_p(w, b);
            let e2 = ProductSpec::euler(b).pow(2);
            let minus_one = SignedMonomial::MINUS_ONE;
            let r1 = e2.mul(&p(-z.pow(4))).div(&p(z.pow(4)).mul(&p(minus_one)));
            let r2 = p(minus_one)
                .pow(2)
                .mul(&e2)
                .mul(&p(z.pow(2)))
                .div(&p(z).pow(2).mul(&p(-z).pow(2)))
                .times_monomial(z);
            let rhs = eval_padded(&r1, order)?.add(&eval_padded(&r2, order)?);
            Ok((lhs, rhs.truncate(order)))
        }
        GRelation::Reflection => {
            let lhs = g_generic(z, b, order)?.add(&g_generic(z.inv().shift(b), b, order)?);
            Ok((lhs, LaurentSeries::one(order)))
        }
    }
}

pub fn verify_g_relation(part: GRelation, z: SignedMonomial, base: i64, order: i64) -> Result<IdentityReport> {
    let (lhs, rhs) = g_relation_sides(part, z, base, order)?;
    let label = match part {
        GRelation::Duplication => "part1",
        GRelation::Reflection => "part2",
    };
    Ok(IdentityReport::compare(
        format!("lemma4.2.{label}@z={z},base={base}"),
        &lhs,
        &rhs,
        order,
    ))
}

/// `g(z, q) - g(zq, q) = -2`.
pub fn verify_g_constant(z: SignedMonomial, base: i64, order: i64) -> Result<IdentityReport> {
    let lhs = g_generic(z, base, order)?.sub(&g_generic(z.shift(base), base, order)?);
    let rhs = LaurentSeries::constant(Coefficient::from_integer((-2).into()), order);
    Ok(IdentityReport::compare(
        format!("constant@z={z},base={base}"),
        &lhs,
        &rhs,
        order,
    ))
}

/// `g(z^-1, q) + g(z, q) = -1`.
pub fn verify_gees(z: SignedMonomial, base: i64, order: i64) -> Result<IdentityReport> {
    let lhs = g_generic(z.inv(), base, order)?.add(&g_generic(z, base, order)?);
    let rhs = LaurentSeries::constant(Coefficient::from_integer((-1).into()), order);
    Ok(IdentityReport::compare(
        format!("gees@z={z},base={base}"),
        &lhs,
        &rhs,
        order,
    ))
}

/// `z^2 Σ(z, ζ, q) + ζ Σ(zq, ζ, q) = -sum_n (-1)^n ζ^n q^(n(n-1)) (1 + z q^n)`.
pub fn verify_sigma_shift(z: SignedMonomial, zeta: SignedMonomial, base: i64, order: i64) -> Result<IdentityReport> {
    let b = base;
    let pad = order + 2 * z.exp.abs() + zeta.exp.abs();
    let lhs = sigma(&LambertSpec::new(z, zeta, b), pad)?
        .scale_int(z.sign as i64 * z.sign as i64)
        .shift(2 * z.exp)
        .add(
            &sigma(&LambertSpec::new(z.shift(b), zeta, b), pad)?
                .scale_int(zeta.sign as i64)
                .shift(zeta.exp),
        );
    let theta_a = BilateralSum::new(b, zeta.exp - b)
        .alternating()
        .ratio_sign(zeta.sign)
        .expand(pad)?;
    let theta_b = BilateralSum::new(b, zeta.exp)
        .alternating()
        .ratio_sign(zeta.sign)
        .expand(pad)?
        .scale_int(z.sign as i64)
        .shift(z.exp);
    let rhs = -(theta_a + theta_b);
    Ok(IdentityReport::compare(
        format!("sigma@z={z},zeta={zeta},base={base}"),
        &lhs,
        &rhs,
        order,
    ))
}

/// `z^2 Σ(z, 1, q) + Σ(zq, 1, q) = -z (q)_inf / (-q)_inf`.
pub fn verify_step(z: SignedMonomial, base: i64, order: i64) -> Result<IdentityReport> {
    let b = base;
    let pad = order + 2 * z.exp.abs();
    let one = SignedMonomial::ONE;
    let lhs = sigma(&LambertSpec::new(z, one, b), pad)?
        .shift(2 * z.exp)
        .add(&sigma(&LambertSpec::new(z.shift(b), one, b), pad)?);
    let rhs = ProductSpec::one()
        .poch(SignedMonomial::q(b), b, 1)
        .poch(SignedMonomial::neg_q(b), b, -1)
        .times_monomial(-z);
    let rhs = eval_padded(&rhs, order)?;
    Ok(IdentityReport::compare(
        format!("step@z={z},base={base}"),
        &lhs,
        &rhs,
        order,
    ))
}

/// `Σ(z, 1, q) + z^-2 Σ(z^-1, 1, q) = -z^-1 sum_n (-1)^n q^(n^2)`.
pub fn verify_short(z: SignedMonomial, base: i64, order: i64) -> Result<IdentityReport> {
    let b = base;
    let pad = order + 2 * z.exp.abs();
    let one = SignedMonomial::ONE;
    let lhs = sigma(&LambertSpec::new(z, one, b), pad)?
        .add(&sigma(&LambertSpec::new(z.inv(), one, b), pad)?.shift(-2 * z.exp));
    let rhs = crate::products::theta(SignedMonomial::MINUS_ONE, b, pad)?
        .scale_int(-(z.sign as i64))
        .shift(-z.exp);
    Ok(IdentityReport::compare(
        format!("short@z={z},base={base}"),
        &lhs,
        &rhs,
        order,
    ))
}

/// `S̄(ell) = -(q)_inf / (2 (-q)_inf) + 1/2`.
pub fn verify_s_bar_at_ell(ell: i64, order: i64) -> Result<IdentityReport> {
    let lhs = s_bar(ell, ell, order)?;
    let rhs = ProductSpec::q_over_neg_q()
        .times_frac(-1, 2)
        .eval(order)?
        .add(&LaurentSeries::constant(half(), order));
    Ok(IdentityReport::compare(
        format!("lemma2.1@ell={ell}"),
        &lhs,
        &rhs,
        order,
    ))
}

/// `S̄(b) = -S̄(ell - b)` for every `b` in `-ell ..= 2 ell`.
pub fn verify_rels(ell: i64, order: i64) -> Result<IdentityReport> {
    let mut parts = Vec::new();
    for b in -ell..=2 * ell {
        let lhs = s_bar(b, ell, order)?;
        let rhs = -s_bar(ell - b, ell, order)?;
        parts.push(IdentityReport::compare(format!("rels@b={b}"), &lhs, &rhs, order));
    }
    Ok(IdentityReport::merge(format!("rels@ell={ell}"), parts))
}

/// `g(a) + g(ell - a) = 1`.
pub fn verify_g2(a: i64, ell: i64, order: i64) -> Result<IdentityReport> {
    let lhs = g_func(GFuncSpec::new(a, ell)?, order)?.add(&g_func(GFuncSpec::new(ell - a, ell)?, order)?);
    Ok(IdentityReport::compare(
        format!("g2@a={a},ell={ell}"),
        &lhs,
        &LaurentSeries::one(order),
        order,
    ))
}

/// `2g(a) - g(2a) + 1/2 = P(-y^4a)P(0)^2/(P(4a)P(-1)) + y^a P(-1)^2 P(0)^2 P(2a)/(P(a)^2 P(-y^a)^2)`.
pub fn g1_sides(a: i64, ell: i64, order: i64) -> Result<(LaurentSeries, LaurentSeries)> {
    let lhs = g_func(GFuncSpec::new(a, ell)?, order)?
        .scale_int(2)
        .sub(&g_func(GFuncSpec::new(2 * a, ell)?, order)?)
        .add(&LaurentSeries::constant(half(), order));
    let rhs = g1_rhs(a, ell).eval(order)?;
    Ok((lhs, rhs))
}

pub fn g1_rhs(a: i64, ell: i64) -> crate::products::ProductSum {
    let base = ell * ell;
    let p = |k: i64| ProductSpec::big_p(SignedMonomial::q(ell * k), base);
    let p_neg = |k: i64| ProductSpec::big_p(SignedMonomial::neg_q(ell * k), base);
    let p0 = ProductSpec::p_zero(base);
    let t1 = p_neg(4 * a).mul(&p0.pow(2)).div(&p(4 * a).mul(&p_neg(0)));
    let t2 = p_neg(0)
        .pow(2)
        .mul(&p0.pow(2))
        .mul(&p(2 * a))
        .div(&p(a).pow(2).mul(&p_neg(a).pow(2)))
        .q_power(ell * a);
    crate::products::ProductSum::new().plus(t1).plus(t2)
}

pub fn verify_g1(a: i64, ell: i64, order: i64) -> Result<IdentityReport> {
    let (lhs, rhs) = g1_sides(a, ell, order)?;
    Ok(IdentityReport::compare(
        format!("g1@a={a},ell={ell}"),
        &lhs,
        &rhs,
        order,
    ))
}
