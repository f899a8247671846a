//! Low-precision nonnegative magnitudes used for ball radii.
//!
//! A `Mag` is `man * 2^exp` with a 30-bit mantissa. Operations suffixed
//! `_up` return upper bounds, `_down` lower bounds.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use super::float::Float;

const MAG_BITS: u32 = 30;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Mag {
    man: u64,
    exp: i64,
}

impl Mag {
    pub const fn zero() -> Self {
        Mag { man: 0, exp: 0 }
    }

    pub fn is_zero(&self) -> bool {
        self.man == 0
    }

    /// Exactly `2^e`.
    pub fn pow2(e: i64) -> Self {
        Mag { man: 1 << (MAG_BITS - 1), exp: e - (MAG_BITS as i64 - 1) }
    }

    pub fn from_u64(v: u64) -> Self {
        Mag::from_u128_up(v as u128, 0)
    }

    fn from_u128_up(m: u128, exp: i64) -> Self {
        Mag::from_u128(m, exp, true)
    }

    fn from_u128_down(m: u128, exp: i64) -> Self {
        Mag::from_u128(m, exp, false)
    }

    fn from_u128(m: u128, exp: i64, up: bool) -> Self {
        if m == 0 {
            return Mag::zero();
        }
        let bits = 128 - m.leading_zeros();
        if bits > MAG_BITS {
            let shift = bits - MAG_BITS;
            let mut man = (m >> shift) as u64;
            let mut e = exp + shift as i64;
            if up && m & ((1u128 << shift) - 1) != 0 {
                man += 1;
                if man == 1 << MAG_BITS {
                    man >>= 1;
                    e += 1;
                }
            }
            Mag { man, exp: e }
        } else {
            let shift = MAG_BITS - bits;
            Mag { man: (m as u64) << shift, exp: exp - shift as i64 }
        }
    }

    /// Upper bound for `|x|`.
    pub fn from_float_up(x: &Float) -> Self {
        Mag::from_bigint(x.mantissa(), x.exponent(), true)
    }

    /// Lower bound for `|x|`.
    pub fn from_float_down(x: &Float) -> Self {
        Mag::from_bigint(x.mantissa(), x.exponent(), false)
    }

    fn from_bigint(m: &BigInt, exp: i64, up: bool) -> Self {
        let a = m.abs();
        let bits = a.bits();
        if bits <= 100 {
            return Mag::from(a.to_u128().unwrap_or(0), exp, up);
        }
        let shift = bits - 100;
        let top = (&a >> shift).to_u128().unwrap_or(0);
        let exact = a.trailing_zeros().map(|tz| tz >= shift).unwrap_or(true);
        let top = if up && !exact { top + 1 } else { top };
        Mag::from_u128(top, exp + shift as i64, up)
    }

    #[inline]
    fn from(m: u128, exp: i64, up: bool) -> Self {
        Mag::from_u128(m, exp, up)
    }

    /// Exact value as a [`Float`].
    pub fn to_float(&self) -> Float {
        Float::from_parts(BigInt::from(self.man), self.exp)
    }

    pub fn to_f64(&self) -> f64 {
        if self.man == 0 {
            return 0.0;
        }
        let e = self.exp.clamp(-3000, 3000) as i32;
        (self.man as f64) * 2f64.powi(e)
    }

    /// Approximate `log2`; `-inf` for zero.
    pub fn log2(&self) -> f64 {
        if self.man == 0 {
            return f64::NEG_INFINITY;
        }
        (self.man as f64).log2() + self.exp as f64
    }

    /// Smallest `t` with `self < 2^t`, or `None` for zero.
    pub fn top(&self) -> Option<i64> {
        if self.man == 0 {
            None
        } else {
            Some(self.exp + MAG_BITS as i64)
        }
    }

    pub fn add_up(&self, other: &Mag) -> Mag {
        if self.is_zero() {
            return *other;
        }
        if other.is_zero() {
            return *self;
        }
        let (hi, lo) = if self.exp >= other.exp { (self, other) } else { (other, self) };
        let gap = hi.exp - lo.exp;
        if gap >= 64 {
            return Mag::from_u128_up(((hi.man as u128) << 2) + 1, hi.exp - 2);
        }
        Mag::from_u128_up(((hi.man as u128) << gap) + lo.man as u128, lo.exp)
    }

    pub fn mul_up(&self, other: &Mag) -> Mag {
        if self.is_zero() || other.is_zero() {
            return Mag::zero();
        }
        Mag::from_u128_up(self.man as u128 * other.man as u128, self.exp + other.exp)
    }

    pub fn mul_down(&self, other: &Mag) -> Mag {
        if self.is_zero() || other.is_zero() {
            return Mag::zero();
        }
        Mag::from_u128_down(self.man as u128 * other.man as u128, self.exp + other.exp)
    }

    /// Upper bound for `self / den`; `den` must be a nonzero lower bound.
    pub fn div_up(&self, den: &Mag) -> Mag {
        assert!(!den.is_zero(), "Mag::div_up by zero");
        if self.is_zero() {
            return Mag::zero();
        }
        let num = (self.man as u128) << 64;
        let q = num / den.man as u128 + 1;
        Mag::from_u128_up(q, self.exp - 64 - den.exp)
    }

    pub fn div_down(&self, den: &Mag) -> Mag {
        assert!(!den.is_zero(), "Mag::div_down by zero");
        if self.is_zero() {
            return Mag::zero();
        }
        let num = (self.man as u128) << 64;
        let q = num / den.man as u128;
        Mag::from_u128_down(q, self.exp - 64 - den.exp)
    }

    pub fn mul_2exp(&self, e: i64) -> Mag {
        if self.is_zero() {
            return *self;
        }
        Mag { man: self.man, exp: self.exp + e }
    }

    pub fn mul_u64_up(&self, k: u64) -> Mag {
        self.mul_up(&Mag::from_u64(k))
    }

    /// Lower bound for `sqrt(self)`.
    pub fn sqrt_down(&self) -> Mag {
        if self.is_zero() {
            return *self;
        }
        let (mut m, mut e) = (self.man as u128, self.exp);
        m <<= 60;
        e -= 60;
        if e % 2 != 0 {
            m <<= 1;
            e -= 1;
        }
        Mag::from_u128_down(isqrt_u128(m), e / 2)
    }

    /// Upper bound for `sqrt(self)`.
    pub fn sqrt_up(&self) -> Mag {
        if self.is_zero() {
            return *self;
        }
        let (mut m, mut e) = (self.man as u128, self.exp);
        m <<= 60;
        e -= 60;
        if e % 2 != 0 {
            m <<= 1;
            e -= 1;
        }
        Mag::from_u128_up(isqrt_u128(m) + 1, e / 2)
    }

    pub fn pow_down(&self, k: u64) -> Mag {
        self.pow_with(k, Mag::mul_down)
    }

    pub fn pow_up(&self, k: u64) -> Mag {
        self.pow_with(k, Mag::mul_up)
    }

    // square-and-multiply; every factor is rounded the same way
    fn pow_with(&self, mut k: u64, mul: fn(&Mag, &Mag) -> Mag) -> Mag {
        let mut acc = Mag::from_u64(1);
        let mut base = *self;
        while k > 0 {
            if k & 1 == 1 {
                acc = mul(&acc, &base);
            }
            k >>= 1;
            if k > 0 {
                base = mul(&base, &base);
            }
        }
        acc
    }

    /// Upper bound for `first / (1 - ratio)`; `None` unless `ratio < 1`.
    pub fn geometric_sum_up(first: &Mag, ratio: &Mag) -> Option<Mag> {
        let d = Float::one().sub_exact(&ratio.to_float());
        if !d.is_positive() {
            return None;
        }
        Some(first.div_up(&Mag::from_float_down(&d)))
    }

    /// Upper bound for `e^x - 1`, `x >= 0`.
    pub fn expm1_up(&self) -> Mag {
        if self.is_zero() {
            return *self;
        }
        let half = Mag::pow2(-1);
        if *self <= half {
            // e^x <= 1/(1-x) on [0,1), so e^x - 1 <= x/(1-x) <= 2x for x <= 1/2
            return self.mul_2exp(1);
        }
        // e^x < 2^(1.45 x)
        let e2 = (self.to_f64() * 1.45).ceil() as i64 + 1;
        Mag::pow2(e2)
    }

    /// Upper bound for `1 / (1 - x)` when `x < 1/2`.
    pub fn one_over_one_minus_up(&self) -> Option<Mag> {
        if *self >= Mag::pow2(-1) {
            return None;
        }
        let lower = Float::one().sub_exact(&self.to_float());
        Some(Mag::from_u64(1).div_up(&Mag::from_float_down(&lower)))
    }
}

fn isqrt_u128(v: u128) -> u128 {
    if v == 0 {
        return 0;
    }
    let mut x = (v as f64).sqrt() as u128;
    while x.saturating_mul(x) > v {
        x -= 1;
    }
    while (x + 1).saturating_mul(x + 1) <= v {
        x += 1;
    }
    x
}

impl PartialOrd for Mag {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Mag {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.is_zero(), other.is_zero()) {
            (true, true) => Ordering::Equal,
            (true, false) => Ordering::Less,
            (false, true) => Ordering::Greater,
            _ => self.exp.cmp(&other.exp).then(self.man.cmp(&other.man)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn add_rounds_up() {
        let a = Mag::from_u64((1 << 40) + 1);
        assert!(a.to_float() >= Float::from_i64((1 << 40) + 1));
        let b = a.add_up(&Mag::pow2(-200));
        assert!(b > a);
    }

    #[test]
    fn bounds_bracket_division() {
        let a = Mag::from_u64(1);
        let b = Mag::from_u64(3);
        let up = a.div_up(&b).to_float().mul_exact(&Float::from_i64(3));
        let down = a.div_down(&b).to_float().mul_exact(&Float::from_i64(3));
        assert!(up >= Float::one());
        assert!(down <= Float::one());
    }

    #[test]
    fn sqrt_bounds() {
        let two = Mag::from_u64(2);
        let lo = two.sqrt_down().to_float();
        let hi = two.sqrt_up().to_float();
        assert!(lo.mul_exact(&lo) <= Float::from_i64(2));
        assert!(hi.mul_exact(&hi) >= Float::from_i64(2));
    }

    #[test]
    fn from_float_brackets() {
        let x = Float::from_parts(BigInt::from(0x1234_5678_9abc_def1u64) * 977, -40);
        assert!(Mag::from_float_up(&x).to_float() >= x);
        assert!(Mag::from_float_down(&x).to_float() <= x);
    }
}
