//! Exact binary floating-point values `man * 2^exp` with unbounded mantissa.
//!
//! All arithmetic here is either exact or returns the rounding error as a
//! [`Mag`] so that the ball layer can fold it into the radius.

use std::cmp::Ordering;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::mag::Mag;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Float {
    man: BigInt,
    exp: i64,
}

impl Default for Float {
    fn default() -> Self {
        Float::zero()
    }
}

impl Float {
    pub fn zero() -> Self {
        Float { man: BigInt::zero(), exp: 0 }
    }

    pub fn one() -> Self {
        Float { man: BigInt::one(), exp: 0 }
    }

    /// Builds `man * 2^exp`, normalized so the mantissa is odd (or zero).
    pub fn from_parts(man: BigInt, exp: i64) -> Self {
        Float { man, exp }.normalized()
    }

    pub fn from_i64(v: i64) -> Self {
        Float::from_parts(BigInt::from(v), 0)
    }

    pub fn from_bigint(v: BigInt) -> Self {
        Float::from_parts(v, 0)
    }

    /// Exact conversion of a finite `f64`.
    pub fn from_f64(v: f64) -> Option<Self> {
        if !v.is_finite() {
            return None;
        }
        if v == 0.0 {
            return Some(Float::zero());
        }
        let bits = v.to_bits();
        let sign = if bits >> 63 == 1 { -1i64 } else { 1 };
        let raw_exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (man, exp) = if raw_exp == 0 { (frac, -1074) } else { (frac | (1u64 << 52), raw_exp - 1075) };
        Some(Float::from_parts(BigInt::from(man) * sign, exp))
    }

    fn normalized(mut self) -> Self {
        if self.man.is_zero() {
            self.exp = 0;
            return self;
        }
        if let Some(tz) = self.man.trailing_zeros() {
            if tz > 0 {
                self.man >>= tz;
                self.exp += tz as i64;
            }
        }
        self
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.man
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.man.is_zero()
    }

    pub fn sign(&self) -> Sign {
        self.man.sign()
    }

    pub fn is_negative(&self) -> bool {
        self.man.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.man.is_positive()
    }

    /// Number of significant bits in the mantissa.
    pub fn bits(&self) -> u64 {
        self.man.bits()
    }

    /// Smallest `t` with `|x| < 2^t`; `None` for zero.
    pub fn top(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.exp + self.man.bits() as i64)
        }
    }

    pub fn neg(&self) -> Float {
        Float { man: -&self.man, exp: self.exp }
    }

    pub fn abs(&self) -> Float {
        Float { man: self.man.abs(), exp: self.exp }
    }

    pub fn mul_2exp(&self, e: i64) -> Float {
        if self.is_zero() {
            return Float::zero();
        }
        Float { man: self.man.clone(), exp: self.exp + e }
    }

    /// Exact sum. Only call when the exponent gap is moderate; see [`Float::add_rounded`].
    pub fn add_exact(&self, other: &Float) -> Float {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let e = self.exp.min(other.exp);
        let a = &self.man << (self.exp - e) as u64;
        let b = &other.man << (other.exp - e) as u64;
        Float::from_parts(a + b, e)
    }

    pub fn sub_exact(&self, other: &Float) -> Float {
        self.add_exact(&other.neg())
    }

    pub fn mul_exact(&self, other: &Float) -> Float {
        if self.is_zero() || other.is_zero() {
            return Float::zero();
        }
        Float::from_parts(&self.man * &other.man, self.exp + other.exp)
    }

    /// Rounds to at most `prec` significant bits (toward −∞); returns the
    /// rounded value and an upper bound on the discarded part.
    pub fn round(&self, prec: u32) -> (Float, Mag) {
        let bits = self.bits();
        if bits <= prec as u64 {
            return (self.clone(), Mag::zero());
        }
        let shift = bits - prec as u64;
        let man = &self.man >> shift;
        let exp = self.exp + shift as i64;
        (Float::from_parts(man, exp), Mag::pow2(exp))
    }

    /// Sum rounded to `prec` bits. A summand far below the rounding
    /// threshold is not materialized; its magnitude goes into the error.
    pub fn add_rounded(&self, other: &Float, prec: u32) -> (Float, Mag) {
        let (ta, tb) = match (self.top(), other.top()) {
            (None, _) => return other.round(prec),
            (_, None) => return self.round(prec),
            (Some(a), Some(b)) => (a, b),
        };
        let (big, small, tbig, tsmall) = if ta >= tb { (self, other, ta, tb) } else { (other, self, tb, ta) };
        if tsmall < tbig - prec as i64 - 4 {
            let (r, err) = big.round(prec);
            return (r, err.add_up(&Mag::pow2(tsmall)));
        }
        big.add_exact(small).round(prec)
    }

    /// Quotient rounded to `prec` bits with its error bound. `den` must be nonzero.
    pub fn div_rounded(&self, den: &Float, prec: u32) -> (Float, Mag) {
        assert!(!den.is_zero(), "division by exact zero");
        if self.is_zero() {
            return (Float::zero(), Mag::zero());
        }
        let target = prec as i64 + 2 + den.bits() as i64 - self.bits() as i64;
        let s = target.max(0) as u64;
        let (q, rem) = (&self.man << s).div_rem(&den.man);
        let exp = self.exp - s as i64 - den.exp;
        let ulp = if rem.is_zero() { Mag::zero() } else { Mag::pow2(exp) };
        let (r, err) = Float::from_parts(q, exp).round(prec);
        (r, err.add_up(&ulp))
    }

    /// Square root of a nonnegative value, rounded down to about `prec` bits.
    pub fn sqrt_rounded(&self, prec: u32) -> (Float, Mag) {
        self.nth_root_rounded(2, prec)
    }

    /// Real `n`-th root of a nonnegative value, truncated; error below one ulp.
    pub fn nth_root_rounded(&self, n: u32, prec: u32) -> (Float, Mag) {
        assert!(n >= 1);
        assert!(!self.is_negative(), "root of negative value");
        if self.is_zero() {
            return (Float::zero(), Mag::zero());
        }
        if n == 1 {
            return self.round(prec);
        }
        let n64 = n as i64;
        let want = n64 * (prec as i64 + 2);
        let mut s = (want - self.bits() as i64).max(0);
        let rem = (self.exp - s).rem_euclid(n64);
        s += rem;
        let m = &self.man << s as u64;
        let root = if n == 2 { m.sqrt() } else { m.nth_root(n) };
        let exp = (self.exp - s) / n64;
        let (r, err) = Float::from_parts(root, exp).round(prec);
        (r, err.add_up(&Mag::pow2(exp)))
    }

    /// `num / den` rounded to `prec` bits.
    pub fn from_ratio_rounded(num: &BigInt, den: &BigInt, prec: u32) -> (Float, Mag) {
        Float::from_bigint(num.clone()).div_rounded(&Float::from_bigint(den.clone()), prec)
    }

    /// Nearest-integer approximation (ties away from zero are fine).
    pub fn round_to_integer(&self) -> BigInt {
        if self.exp >= 0 {
            return &self.man << self.exp as u64;
        }
        let sh = (-self.exp) as u64;
        let half = BigInt::one() << (sh - 1);
        (&self.man + half) >> sh
    }

    /// `floor(x)` as an integer.
    pub fn floor(&self) -> BigInt {
        if self.exp >= 0 {
            &self.man << self.exp as u64
        } else {
            &self.man >> (-self.exp) as u64
        }
    }

    /// Approximate value, saturating to 0 or ±∞ outside the `f64` range.
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.bits() as i64;
        let shift = (bits - 60).max(0);
        let top = (&self.man >> shift as u64).to_f64().unwrap_or(0.0);
        let e = self.exp + shift;
        if e > 2000 {
            return top.signum() * f64::INFINITY;
        }
        if e < -2200 {
            return 0.0;
        }
        top * 2f64.powi(e as i32)
    }

    /// Approximate `log2 |x|`; `-inf` for zero. Works beyond the `f64` range.
    pub fn log2_abs(&self) -> f64 {
        if self.is_zero() {
            return f64::NEG_INFINITY;
        }
        let bits = self.bits() as i64;
        let shift = (bits - 60).max(0);
        let top = (&self.man >> shift as u64).abs().to_f64().unwrap_or(1.0);
        top.log2() + (self.exp + shift) as f64
    }

    /// `floor(|x| * 10^k)` for `k >= 0` or negative `k`, exact.
    pub fn scaled_decimal_floor(&self, k: i64) -> BigInt {
        let ten = BigInt::from(10u32);
        let (mut num, mut den) = (self.man.abs(), BigInt::one());
        if k >= 0 {
            num *= num_traits::pow(ten, k as usize);
        } else {
            den *= num_traits::pow(ten, (-k) as usize);
        }
        if self.exp >= 0 {
            num <<= self.exp as u64;
        } else {
            den <<= (-self.exp) as u64;
        }
        num.div_floor(&den)
    }
}

impl PartialOrd for Float {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Float {
    fn cmp(&self, other: &Self) -> Ordering {
        let (sa, sb) = (sign_rank(self), sign_rank(other));
        if sa != sb {
            return sa.cmp(&sb);
        }
        if sa == 0 {
            return Ordering::Equal;
        }
        let (ta, tb) = (self.top().unwrap_or(0), other.top().unwrap_or(0));
        if ta != tb {
            let mag = ta.cmp(&tb);
            return if sa > 0 { mag } else { mag.reverse() };
        }
        match self.sub_exact(other).sign() {
            Sign::Minus => Ordering::Less,
            Sign::NoSign => Ordering::Equal,
            Sign::Plus => Ordering::Greater,
        }
    }
}

fn sign_rank(x: &Float) -> i8 {
    match x.sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_reports_error_bound() {
        let x = Float::from_i64(0b1011_0111);
        let (r, err) = x.round(4);
        assert_eq!(r, Float::from_i64(0b1011_0000));
        assert!(err.to_float() >= Float::from_i64(0b0111));
    }

    #[test]
    fn div_rounded_third() {
        let (q, err) = Float::from_i64(1).div_rounded(&Float::from_i64(3), 64);
        let three_q = q.mul_exact(&Float::from_i64(3));
        let diff = Float::one().sub_exact(&three_q).abs();
        assert!(diff <= err.to_float().mul_exact(&Float::from_i64(3)));
        assert!(err.to_float() < Float::one().mul_2exp(-60));
    }

    #[test]
    fn sqrt_of_two_brackets() {
        let (r, err) = Float::from_i64(2).sqrt_rounded(128);
        let lo = r.mul_exact(&r);
        let hi_r = r.add_exact(&err.to_float());
        let hi = hi_r.mul_exact(&hi_r);
        assert!(lo <= Float::from_i64(2));
        assert!(hi >= Float::from_i64(2));
    }

    #[test]
    fn far_apart_sum_goes_to_error() {
        let one = Float::one();
        let tiny = Float::one().mul_2exp(-100_000);
        let (s, err) = one.add_rounded(&tiny, 64);
        assert_eq!(s, one);
        assert!(err.to_float() >= tiny);
    }

    #[test]
    fn ordering_handles_signs_and_exponents() {
        let a = Float::from_i64(-3);
        let b = Float::one().mul_2exp(-500);
        assert!(a < b);
        assert!(Float::from_i64(5) > Float::from_i64(4));
        assert!(Float::from_i64(-5) < Float::from_i64(-4));
    }

    #[test]
    fn from_f64_exact() {
        let f = Float::from_f64(0.375).unwrap();
        assert_eq!(f, Float::from_parts(BigInt::from(3), -3));
    }
}
