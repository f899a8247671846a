//! Elementary functions on balls.
//!
//! Each function evaluates at the midpoint with a certified series (all
//! rounding tracked by ball arithmetic at guard precision), then widens by a
//! bound on the function's variation over the input radius.

use super::ball::Ball;
use super::constants::const_pi;
use super::float::Float;
use super::mag::Mag;
use super::PrecCtx;
use crate::error::{Error, Result};

impl Ball {
    pub fn sqrt(&self) -> Result<Ball> {
        if self.mid.is_zero() && self.rad.is_zero() {
            return Ok(self.clone());
        }
        if !self.is_positive() {
            return Err(Error::domain("sqrt of an enclosure that is not strictly positive"));
        }
        let (mid, err) = self.mid.sqrt_rounded(self.prec);
        // |sqrt(x) - sqrt(m)| <= r / (sqrt(m - r) + sqrt(m)) <= r / sqrt(m)
        let spread = if self.rad.is_zero() {
            Mag::zero()
        } else {
            self.rad.div_up(&Mag::from_float_down(&self.mid).sqrt_down())
        };
        Ok(Ball { mid, rad: spread.add_up(&err), prec: self.prec })
    }

    /// Real `n`-th root. Even roots need a positive ball; odd roots of a
    /// negative ball are taken as `-(-x)^(1/n)`.
    pub fn nth_root(&self, n: u32) -> Result<Ball> {
        match n {
            0 => return Err(Error::domain("zeroth root")),
            1 => return Ok(self.clone()),
            2 => return self.sqrt(),
            _ => {}
        }
        if self.mid.is_zero() && self.rad.is_zero() {
            return Ok(self.clone());
        }
        if n % 2 == 1 && self.is_negative() {
            return Ok(self.neg_ball().nth_root(n)?.neg_ball());
        }
        if !self.is_positive() {
            return Err(Error::NegativeBaseEvenRoot);
        }
        let (mid, err) = self.mid.nth_root_rounded(n, self.prec);
        let spread = if self.rad.is_zero() {
            Mag::zero()
        } else {
            // |x^(1/n) - m^(1/n)| <= r / (n * (m - r)^((n-1)/n))
            let (low_root, _) = self.lower().nth_root_rounded(n, 64);
            let low = Mag::from_float_down(&low_root).pow_down(n as u64 - 1).mul_down(&Mag::from_u64(n as u64));
            self.rad.div_up(&low)
        };
        Ok(Ball { mid, rad: spread.add_up(&err), prec: self.prec })
    }

    pub fn exp(&self) -> Ball {
        let e = exp_mid(&self.mid, self.ctx());
        if self.rad.is_zero() {
            return e;
        }
        // e^(m+d) - e^m = e^m (e^d - 1)
        let spread = e.abs_upper().mul_up(&self.rad.expm1_up());
        e.add_error(spread)
    }

    pub fn log(&self) -> Result<Ball> {
        if !self.is_positive() {
            return Err(Error::domain("log of an enclosure that is not strictly positive"));
        }
        let l = log_mid(&self.mid, self.ctx())?;
        if self.rad.is_zero() {
            return Ok(l);
        }
        let spread = self.rad.div_up(&Mag::from_float_down(&self.lower()));
        Ok(l.add_error(spread))
    }

    pub fn sin_cos(&self) -> (Ball, Ball) {
        let (s, c) = sin_cos_mid(&self.mid, self.ctx());
        (s.add_error(self.rad), c.add_error(self.rad))
    }

    pub fn sin(&self) -> Ball {
        self.sin_cos().0
    }

    pub fn cos(&self) -> Ball {
        self.sin_cos().1
    }
}

/// Certified `exp(m)` for an exact `m`.
fn exp_mid(m: &Float, ctx: PrecCtx) -> Ball {
    if m.is_zero() {
        return Ball::one(ctx);
    }
    let top = m.top().unwrap_or(0);
    let squarings = (top + 16).max(0) as u32;
    let w = PrecCtx::raw(ctx.bits() + squarings + 24);
    let t = Ball::new(m.mul_2exp(-(squarings as i64)), Mag::zero(), w);
    let eps = Mag::pow2(-(w.bits() as i64) - 4);
    let mut sum = Ball::one(w);
    let mut term = Ball::one(w);
    let mut k = 1i64;
    loop {
        term = (&term * &t).div_i64(k);
        let tm = term.abs_upper();
        if tm < eps {
            // |t| < 2^-16, so the remaining terms sum to less than twice this one
            sum = sum.add_error(tm.mul_2exp(1));
            break;
        }
        sum = &sum + &term;
        k += 1;
    }
    for _ in 0..squarings {
        sum = sum.sqr();
    }
    sum.with_prec(ctx)
}

/// Certified `log(m)` for an exact `m > 0`: Newton iteration on `exp`,
/// then an a-posteriori bound from `m / exp(y) - 1`.
fn log_mid(m: &Float, ctx: PrecCtx) -> Result<Ball> {
    if *m == Float::one() {
        return Ok(Ball::zero(ctx));
    }
    let w = ctx.bits() + 24;
    let seed = m.log2_abs() * std::f64::consts::LN_2;
    let mut y = Float::from_f64(seed).unwrap_or_default();
    let mut cur = 40u32;
    let mut extra_steps = 2;
    loop {
        cur = (cur * 2).min(w);
        let c = PrecCtx::raw(cur + 16);
        let e = exp_mid(&y.neg(), c);
        let corr = &Ball::new(m.clone(), Mag::zero(), c) * &e - Ball::one(c);
        y = y.add_rounded(corr.mid(), cur + 16).0;
        if cur == w {
            if extra_steps == 0 {
                break;
            }
            extra_steps -= 1;
        }
    }
    let wc = PrecCtx::raw(w);
    let e = exp_mid(&y, wc);
    let d = Ball::new(m.clone(), Mag::zero(), wc).div(&e)? - Ball::one(wc);
    let delta = d.abs_upper();
    // |log(1 + d)| <= |d| / (1 - |d|)
    let scale =
        delta.one_over_one_minus_up().ok_or_else(|| Error::domain("logarithm refinement failed to converge"))?;
    Ok(Ball::new(y, delta.mul_up(&scale), wc).with_prec(ctx))
}

/// Certified `(sin m, cos m)` for an exact `m`, with argument reduction by a
/// π enclosure carrying 64 guard bits beyond the magnitude of `m`.
fn sin_cos_mid(m: &Float, ctx: PrecCtx) -> (Ball, Ball) {
    if m.is_zero() {
        return (Ball::zero(ctx), Ball::one(ctx));
    }
    let mag_bits = m.top().unwrap_or(0).max(0) as u32;
    let w = PrecCtx::raw(ctx.bits() + 64 + mag_bits);
    let half_pi = const_pi(w).mul_2exp(-1);
    let (q, _) = m.div_rounded(half_pi.mid(), 64 + mag_bits);
    let k = q.round_to_integer();
    let t = Ball::new(m.clone(), Mag::zero(), w) - &half_pi * &Ball::from_bigint(&k, w);
    let (s, c) = taylor_sin_cos(&t, w);
    let quadrant = {
        let r = &k % num_bigint::BigInt::from(4);
        let r: i64 = r.try_into().unwrap_or(0);
        r.rem_euclid(4)
    };
    let (s, c) = match quadrant {
        0 => (s, c),
        1 => (c, -s),
        2 => (-s, -c),
        _ => (-c, s),
    };
    (s.with_prec(ctx), c.with_prec(ctx))
}

/// Taylor series for `|t| <= ~π/4`.
fn taylor_sin_cos(t: &Ball, w: PrecCtx) -> (Ball, Ball) {
    let eps = Mag::pow2(-(w.bits() as i64) - 4);
    let t2 = t.sqr();

    let mut cos_sum = Ball::one(w);
    let mut term = Ball::one(w);
    let mut j = 1i64;
    loop {
        term = -(&term * &t2).div_i64((2 * j - 1) * (2 * j));
        let tm = term.abs_upper();
        if tm < eps {
            cos_sum = cos_sum.add_error(tm.mul_2exp(1));
            break;
        }
        cos_sum = &cos_sum + &term;
        j += 1;
    }

    let mut sin_sum = t.clone();
    let mut term = t.clone();
    let mut j = 1i64;
    loop {
        term = -(&term * &t2).div_i64((2 * j) * (2 * j + 1));
        let tm = term.abs_upper();
        if tm < eps {
            sin_sum = sin_sum.add_error(tm.mul_2exp(1));
            break;
        }
        sin_sum = &sin_sum + &term;
        j += 1;
    }
    (sin_sum, cos_sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::precision::ratio;

    fn ctx(b: u32) -> PrecCtx {
        PrecCtx::new(b).unwrap()
    }

    #[test]
    fn exp_zero_is_one() {
        let c = ctx(128);
        assert!(Ball::zero(c).exp().contains_int(1));
    }

    #[test]
    fn exp_log_round_trip() {
        let c = ctx(256);
        let x = Ball::from_ints(7, 3, c);
        let y = x.log().unwrap().exp();
        assert!(y.overlaps(&x));
        assert!(y.rad_log10() < -70.0);
    }

    #[test]
    fn exp_minus_pi_against_independent_series() {
        // independent oracle: plain Taylor series of e^x at x = -π, no squaring
        let c = ctx(256);
        let w = PrecCtx::raw(600);
        let x = -const_pi(w);
        let mut sum = Ball::one(w);
        let mut term = Ball::one(w);
        for k in 1..400 {
            term = (&term * &x).div_i64(k);
            sum = &sum + &term;
        }
        // remaining terms are below π^400/400! < 2^-1000
        let sum = sum.add_error(Mag::pow2(-1000));
        let e = (-const_pi(c)).exp();
        assert!(e.overlaps(&sum));
        assert!(e.mid_decimal(12).starts_with("0.0432139182"));
    }

    #[test]
    fn cos_pi_third() {
        let c = ctx(256);
        let x = const_pi(c).div_i64(3);
        let v = x.cos();
        assert!(v.overlaps(&Ball::from_ints(1, 2, c)));
        assert!(v.rad_log10() < -70.0);
    }

    #[test]
    fn sin_pi_contains_zero() {
        let c = ctx(256);
        assert!(const_pi(c).sin().contains_zero());
    }

    #[test]
    fn large_argument_reduction() {
        // cos(2πN) = 1 for N = 10^5: argument near 6.3e5
        let c = ctx(256);
        let x = const_pi(c.with_guard(40)).mul_i64(200_000).with_prec(c);
        let v = x.cos();
        assert!(v.contains_int(1) || v.overlaps(&Ball::one(c)));
        assert!(v.rad_log10() < -50.0);
    }

    #[test]
    fn sqrt_square_round_trip() {
        let c = ctx(128);
        let r = Ball::from_i64(2, c).sqrt().unwrap();
        assert!(r.sqr().contains_int(2));
    }

    #[test]
    fn nth_roots() {
        let c = ctx(192);
        let r = Ball::from_i64(27, c).nth_root(3).unwrap();
        assert!(r.contains_int(3));
        let r = Ball::from_i64(-32, c).nth_root(5).unwrap();
        assert!(r.contains_int(-2));
        assert!(Ball::from_i64(-4, c).nth_root(4).is_err());
        let x = Ball::from_ints(5, 7, c).pow_ratio(&ratio(3, 7)).unwrap();
        let back = x.pow_ratio(&ratio(7, 3)).unwrap();
        assert!(back.overlaps(&Ball::from_ints(5, 7, c)));
    }

    #[test]
    fn log_of_nonpositive_is_domain_error() {
        let c = ctx(64);
        assert!(matches!(Ball::zero(c).log(), Err(Error::Domain(_))));
        assert!(matches!(Ball::from_i64(-1, c).sqrt(), Err(Error::Domain(_))));
    }

    #[test]
    fn pythagorean_identity_on_wide_ball() {
        let c = ctx(128);
        let x = Ball::new(Float::from_i64(3), Mag::pow2(-40), c);
        let (s, co) = x.sin_cos();
        let one = &s.sqr() + &co.sqr();
        assert!(one.contains_int(1));
    }
}
