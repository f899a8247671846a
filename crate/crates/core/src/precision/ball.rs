use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;

use super::float::Float;
use super::mag::Mag;
use super::PrecCtx;
use crate::error::{Error, Result};

/// A real number known to lie in `[mid - rad, mid + rad]`.
///
/// Each ball remembers the working precision it was produced at; binary
/// operations round to the larger of the two.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ball {
    pub(super) mid: Float,
    pub(super) rad: Mag,
    pub(super) prec: u32,
}

impl Ball {
    pub fn new(mid: Float, rad: Mag, ctx: PrecCtx) -> Self {
        let (mid, err) = mid.round(ctx.bits());
        Ball { mid, rad: rad.add_up(&err), prec: ctx.bits() }
    }

    pub fn zero(ctx: PrecCtx) -> Self {
        Ball { mid: Float::zero(), rad: Mag::zero(), prec: ctx.bits() }
    }

    pub fn one(ctx: PrecCtx) -> Self {
        Ball::from_i64(1, ctx)
    }

    pub fn from_i64(v: i64, ctx: PrecCtx) -> Self {
        Ball::new(Float::from_i64(v), Mag::zero(), ctx)
    }

    pub fn from_bigint(v: &BigInt, ctx: PrecCtx) -> Self {
        Ball::new(Float::from_bigint(v.clone()), Mag::zero(), ctx)
    }

    pub fn from_ratio(r: &BigRational, ctx: PrecCtx) -> Self {
        let (mid, err) = Float::from_ratio_rounded(r.numer(), r.denom(), ctx.bits());
        Ball { mid, rad: err, prec: ctx.bits() }
    }

    pub fn from_ints(num: i64, den: i64, ctx: PrecCtx) -> Self {
        Ball::from_ratio(&BigRational::new(num.into(), den.into()), ctx)
    }

    /// Exact conversion of an `f64` (the binary value, not its decimal reading).
    pub fn from_f64(v: f64, ctx: PrecCtx) -> Self {
        Ball::new(Float::from_f64(v).unwrap_or_default(), Mag::zero(), ctx)
    }

    /// Ball for a decimal string such as `"0.3"` or `"-1.25e-3"`, read exactly.
    pub fn from_decimal_str(s: &str, ctx: PrecCtx) -> Result<Self> {
        let r = crate::exact::parse_decimal_rational(s)
            .ok_or_else(|| Error::Domain(format!("not a decimal number: {s}")))?;
        Ok(Ball::from_ratio(&r, ctx))
    }

    pub fn mid(&self) -> &Float {
        &self.mid
    }

    pub fn rad(&self) -> Mag {
        self.rad
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn ctx(&self) -> PrecCtx {
        PrecCtx::raw(self.prec)
    }

    /// Rounds to a new working precision (coarsening adds the rounding error).
    pub fn with_prec(&self, ctx: PrecCtx) -> Ball {
        Ball::new(self.mid.clone(), self.rad, ctx)
    }

    /// Adds `extra` to the radius.
    pub fn add_error(&self, extra: Mag) -> Ball {
        Ball { mid: self.mid.clone(), rad: self.rad.add_up(&extra), prec: self.prec }
    }

    pub fn is_exact(&self) -> bool {
        self.rad.is_zero()
    }

    /// Upper bound on `|x|` over the ball.
    pub fn abs_upper(&self) -> Mag {
        Mag::from_float_up(&self.mid).add_up(&self.rad)
    }

    /// Lower bound on `|x|` over the ball (zero if the ball touches 0).
    pub fn abs_lower(&self) -> Mag {
        let m = self.mid.abs();
        let d = m.sub_exact(&self.rad.to_float());
        if d.is_positive() {
            Mag::from_float_down(&d)
        } else {
            Mag::zero()
        }
    }

    pub fn lower(&self) -> Float {
        self.mid.sub_exact(&self.rad.to_float())
    }

    pub fn upper(&self) -> Float {
        self.mid.add_exact(&self.rad.to_float())
    }

    pub fn contains_zero(&self) -> bool {
        self.mid.abs() <= self.rad.to_float()
    }

    /// Certainly `> 0`.
    pub fn is_positive(&self) -> bool {
        self.lower().is_positive()
    }

    /// Certainly `< 0`.
    pub fn is_negative(&self) -> bool {
        self.upper().is_negative()
    }

    /// The two balls share at least one point.
    pub fn overlaps(&self, other: &Ball) -> bool {
        let d = self.mid.sub_exact(&other.mid).abs();
        d <= self.rad.add_up(&other.rad).to_float()
    }

    /// `other` lies entirely inside `self`.
    pub fn contains(&self, other: &Ball) -> bool {
        self.lower() <= other.lower() && other.upper() <= self.upper()
    }

    pub fn contains_float(&self, x: &Float) -> bool {
        self.lower() <= *x && *x <= self.upper()
    }

    pub fn contains_int(&self, v: i64) -> bool {
        self.contains_float(&Float::from_i64(v))
    }

    /// Smallest ball containing both.
    pub fn union(&self, other: &Ball) -> Ball {
        let lo = self.lower().min(other.lower());
        let hi = self.upper().max(other.upper());
        let prec = self.prec.max(other.prec);
        Ball::from_endpoints(&lo, &hi, PrecCtx::raw(prec))
    }

    pub fn from_endpoints(lo: &Float, hi: &Float, ctx: PrecCtx) -> Ball {
        let sum = lo.add_exact(hi);
        let mid_exact = sum.mul_2exp(-1);
        let (mid, err) = mid_exact.round(ctx.bits());
        let half = hi.sub_exact(lo).mul_2exp(-1);
        Ball { mid, rad: Mag::from_float_up(&half).add_up(&err), prec: ctx.bits() }
    }

    /// Approximate midpoint, for seeding iterations and display only.
    pub fn mid_f64(&self) -> f64 {
        self.mid.to_f64()
    }

    /// `log10` of the radius (`-inf` for exact balls).
    pub fn rad_log10(&self) -> f64 {
        self.rad.log2() * std::f64::consts::LOG10_2
    }

    fn p(&self, other: &Ball) -> u32 {
        self.prec.max(other.prec)
    }

    pub fn add_ball(&self, other: &Ball) -> Ball {
        let prec = self.p(other);
        let (mid, err) = self.mid.add_rounded(&other.mid, prec);
        Ball { mid, rad: self.rad.add_up(&other.rad).add_up(&err), prec }
    }

    pub fn sub_ball(&self, other: &Ball) -> Ball {
        self.add_ball(&other.neg_ball())
    }

    pub fn neg_ball(&self) -> Ball {
        Ball { mid: self.mid.neg(), rad: self.rad, prec: self.prec }
    }

    pub fn abs(&self) -> Ball {
        if self.contains_zero() {
            let hi = self.abs_upper().to_float();
            Ball::from_endpoints(&Float::zero(), &hi, self.ctx())
        } else {
            Ball { mid: self.mid.abs(), rad: self.rad, prec: self.prec }
        }
    }

    pub fn mul_ball(&self, other: &Ball) -> Ball {
        let prec = self.p(other);
        let (mid, err) = self.mid.mul_exact(&other.mid).round(prec);
        let am = Mag::from_float_up(&self.mid);
        let bm = Mag::from_float_up(&other.mid);
        let rad = am.mul_up(&other.rad).add_up(&bm.mul_up(&self.rad)).add_up(&self.rad.mul_up(&other.rad)).add_up(&err);
        Ball { mid, rad, prec }
    }

    pub fn sqr(&self) -> Ball {
        self.mul_ball(self)
    }

    /// Multiplication by `2^e`, exact.
    pub fn mul_2exp(&self, e: i64) -> Ball {
        Ball { mid: self.mid.mul_2exp(e), rad: self.rad.mul_2exp(e), prec: self.prec }
    }

    pub fn mul_i64(&self, k: i64) -> Ball {
        self.mul_ball(&Ball::from_i64(k, self.ctx()))
    }

    pub fn div(&self, other: &Ball) -> Result<Ball> {
        let prec = self.p(other);
        let bm_lo = Mag::from_float_down(&other.mid);
        let den_lo = other.abs_lower();
        if den_lo.is_zero() || bm_lo.is_zero() {
            return Err(Error::DivisorStraddlesZero);
        }
        let (mid, err) = self.mid.div_rounded(&other.mid, prec);
        let num =
            Mag::from_float_up(&self.mid).mul_up(&other.rad).add_up(&Mag::from_float_up(&other.mid).mul_up(&self.rad));
        let rad = num.div_up(&bm_lo.mul_down(&den_lo)).add_up(&err);
        Ok(Ball { mid, rad, prec })
    }

    /// Division by a nonzero machine integer.
    pub fn div_i64(&self, k: i64) -> Ball {
        assert!(k != 0);
        let (mid, err) = self.mid.div_rounded(&Float::from_i64(k), self.prec);
        let rad = self.rad.div_up(&Mag::from_u64(k.unsigned_abs())).add_up(&err);
        Ball { mid, rad, prec: self.prec }
    }

    pub fn recip(&self) -> Result<Ball> {
        Ball::one(self.ctx()).div(self)
    }

    /// `x^k` for any integer `k` (negative powers need a ball excluding 0).
    pub fn pow_int(&self, k: i64) -> Result<Ball> {
        if k < 0 {
            return self.pow_int(-k)?.recip();
        }
        let mut acc = Ball::one(self.ctx());
        let mut base = self.clone();
        let mut e = k as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_ball(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.sqr();
            }
        }
        Ok(acc)
    }

    /// `x^(p/q)` computed as an `q`-th root followed by an integer power.
    /// Non-integer powers require a base that is certainly positive.
    pub fn pow_ratio(&self, r: &BigRational) -> Result<Ball> {
        if r.is_integer() {
            let k: i64 =
                r.to_integer().try_into().map_err(|_| Error::UnsupportedArgument(format!("exponent {r} too large")))?;
            return self.pow_int(k);
        }
        if !self.is_positive() {
            return Err(Error::NegativeBaseEvenRoot);
        }
        let q: u32 = r
            .denom()
            .try_into()
            .map_err(|_| Error::UnsupportedArgument(format!("root index {} too large", r.denom())))?;
        let p: i64 = r.numer().try_into().map_err(|_| Error::UnsupportedArgument(format!("exponent {r} too large")))?;
        self.nth_root(q)?.pow_int(p)
    }

    pub fn pow_ints(&self, num: i64, den: i64) -> Result<Ball> {
        self.pow_ratio(&BigRational::new(num.into(), den.into()))
    }

    /// Decimal rendering of the midpoint with `digits` significant digits.
    pub fn mid_decimal(&self, digits: usize) -> String {
        decimal_string(&self.mid, digits)
    }

    /// Number of decimal digits after the point that the radius certifies.
    pub fn certified_decimals(&self) -> Option<usize> {
        if self.rad.is_zero() {
            return None;
        }
        let d = -self.rad_log10();
        if d < 1.0 {
            Some(0)
        } else {
            Some(d.floor() as usize - 1)
        }
    }
}

/// Significant-digit decimal rendering of an exact binary value.
pub fn decimal_string(x: &Float, digits: usize) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    let digits = digits.max(1);
    let approx_e10 = (x.log2_abs() * std::f64::consts::LOG10_2).floor() as i64;
    let k = digits as i64 - 1 - approx_e10 + 2;
    let n = x.scaled_decimal_floor(k);
    let s = n.to_string();
    let e10 = s.len() as i64 - 1 - k;
    let body: String = s.chars().take(digits).collect();
    let sign = if x.is_negative() { "-" } else { "" };
    if (-6..21).contains(&e10) {
        if e10 >= 0 {
            let int_len = (e10 + 1) as usize;
            if body.len() <= int_len {
                let zeros = "0".repeat(int_len - body.len());
                format!("{sign}{body}{zeros}")
            } else {
                format!("{sign}{}.{}", &body[..int_len], &body[int_len..])
            }
        } else {
            let zeros = "0".repeat((-e10 - 1) as usize);
            format!("{sign}0.{zeros}{body}")
        }
    } else if body.len() > 1 {
        format!("{sign}{}.{}e{e10}", &body[..1], &body[1..])
    } else {
        format!("{sign}{body}e{e10}")
    }
}

impl fmt::Display for Ball {
    /// `mid +/- rad` with as many digits as the radius allows (capped at 60).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = match self.certified_decimals() {
            None => 60,
            Some(d) => {
                let lead = (self.mid.log2_abs() * std::f64::consts::LOG10_2).floor();
                let lead = if lead.is_finite() { lead.max(0.0) as usize + 1 } else { 1 };
                (d + lead).clamp(1, 60)
            }
        };
        write!(f, "{} +/- {:.3e}", decimal_string(&self.mid, digits), self.rad.to_f64())
    }
}

macro_rules! ball_binop {
    ($tr:ident, $method:ident, $impl:ident) => {
        impl $tr<&Ball> for &Ball {
            type Output = Ball;
            fn $method(self, rhs: &Ball) -> Ball {
                self.$impl(rhs)
            }
        }
        impl $tr<Ball> for Ball {
            type Output = Ball;
            fn $method(self, rhs: Ball) -> Ball {
                (&self).$impl(&rhs)
            }
        }
        impl $tr<&Ball> for Ball {
            type Output = Ball;
            fn $method(self, rhs: &Ball) -> Ball {
                (&self).$impl(rhs)
            }
        }
        impl $tr<Ball> for &Ball {
            type Output = Ball;
            fn $method(self, rhs: Ball) -> Ball {
                self.$impl(&rhs)
            }
        }
    };
}

ball_binop!(Add, add, add_ball);
ball_binop!(Sub, sub, sub_ball);
ball_binop!(Mul, mul, mul_ball);

impl Neg for Ball {
    type Output = Ball;
    fn neg(self) -> Ball {
        self.neg_ball()
    }
}

impl Neg for &Ball {
    type Output = Ball;
    fn neg(self) -> Ball {
        self.neg_ball()
    }
}

/// Converts an integer ratio into a `BigRational` (test and catalog helper).
pub fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(num.into(), den.into())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(b: u32) -> PrecCtx {
        PrecCtx::new(b).unwrap()
    }

    #[test]
    fn one_plus_one() {
        let c = ctx(128);
        let two = Ball::one(c) + Ball::one(c);
        assert!(two.contains_int(2));
        assert!(two.is_exact());
    }

    #[test]
    fn product_radius_follows_propagation_rule() {
        let c = ctx(512);
        // 10^-50 rounded up into a Mag
        let r = Mag::from_float_up(
            &Ball::from_ratio(&BigRational::new(1.into(), num_traits::pow(BigInt::from(10), 50)), c).upper(),
        );
        let a = Ball::new(Float::one(), r, c);
        let p = &a * &a;
        // |a|rb + |b|ra + ra rb <= 3e-50 with margin for the rounded-up radius
        let bound = Ball::from_ratio(&BigRational::new(3.into(), num_traits::pow(BigInt::from(10), 50)), c);
        assert!(p.rad().to_float() <= bound.upper());
        // endpoint check: (1±r)^2 extremes lie inside
        let lo = Float::one().sub_exact(&r.to_float());
        let hi = Float::one().add_exact(&r.to_float());
        assert!(p.contains_float(&lo.mul_exact(&lo)));
        assert!(p.contains_float(&hi.mul_exact(&hi)));
    }

    #[test]
    fn division_by_straddling_ball_fails() {
        let c = ctx(64);
        let z = Ball::new(Float::zero(), Mag::pow2(-10), c);
        assert_eq!(Ball::one(c).div(&z), Err(Error::DivisorStraddlesZero));
    }

    #[test]
    fn third_times_three() {
        let c = ctx(200);
        let t = Ball::one(c).div(&Ball::from_i64(3, c)).unwrap();
        assert!(t.mul_i64(3).contains_int(1));
        assert!(t.rad().log2() < -195.0);
    }

    #[test]
    fn negative_base_fractional_power_rejected() {
        let c = ctx(64);
        let x = Ball::from_i64(-2, c);
        assert_eq!(x.pow_ints(1, 2), Err(Error::NegativeBaseEvenRoot));
        assert!(x.pow_ints(3, 1).unwrap().contains_int(-8));
    }

    #[test]
    fn decimal_rendering() {
        let c = ctx(128);
        let x = Ball::from_ints(1, 8, c);
        assert_eq!(x.mid_decimal(3), "0.125");
        let y = Ball::from_i64(123456, c);
        assert_eq!(y.mid_decimal(3), "123000");
        let z = Ball::from_ratio(&BigRational::new(1.into(), num_traits::pow(BigInt::from(10), 30)), c);
        assert!(z.mid_decimal(5).starts_with("1.0000") || z.mid_decimal(5).starts_with("9.9999"));
    }

    #[test]
    fn union_contains_both() {
        let c = ctx(64);
        let a = Ball::from_i64(1, c);
        let b = Ball::from_i64(3, c);
        let u = a.union(&b);
        assert!(u.contains(&a) && u.contains(&b));
        assert!(u.contains_int(2));
    }
}
