//! Γ at rational arguments via Spouge's approximation.
//!
//! For `Re z > 0` and integer `a >= 3`,
//! `Γ(z+1) = (z+a)^(z+1/2) e^-(z+a) [√(2π) + Σ_{k=1}^{a-1} c_k/(z+k)] (1 + ε)`
//! with `c_k = (-1)^(k-1) (a-k)^(k-1/2) e^(a-k) / (k-1)!` and
//! `|ε| <= a^(-1/2) (2π)^-(a+1/2)`. The coefficients cancel heavily, so the
//! sum runs at extra precision and the final radius is checked.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::ball::Ball;
use super::constants::const_pi;
use super::mag::Mag;
use super::PrecCtx;
use crate::error::{Error, Result};

/// Certified Γ(p) for rational `0 < p <= 2`.
pub fn gamma_rational(p: &BigRational, ctx: PrecCtx) -> Result<Ball> {
    if !p.is_positive() || p.is_zero() || *p > BigRational::from_integer(2.into()) {
        return Err(Error::UnsupportedArgument(format!("gamma argument {p} outside (0, 2]")));
    }
    let target = ctx.bits() + 16;
    // (2π)^-(a+1/2) < 2^-(2.5 a)
    let a = ((target as f64 + 10.0) / 2.5).ceil() as u64 + 1;
    let mut extra = a as u32 + 32;
    let goal = Mag::pow2(-(ctx.bits() as i64) - 4);
    let mut last = None;
    for _ in 0..4 {
        let w = PrecCtx::raw(target + extra);
        let g = spouge(p, a, w)?.div(&Ball::from_ratio(p, w))?;
        let rel = g.rad().div_up(&g.abs_lower().max(Mag::pow2(-(w.bits() as i64))));
        if rel <= goal {
            return Ok(g.with_prec(ctx));
        }
        last = Some(g);
        extra *= 2;
    }
    Ok(last.expect("loop runs at least once").with_prec(ctx))
}

/// Γ(z + 1) for rational `z > 0` with Spouge parameter `a`.
fn spouge(z: &BigRational, a: u64, w: PrecCtx) -> Result<Ball> {
    let two_pi = const_pi(w).mul_2exp(1);
    let mut sum = two_pi.sqrt()?;
    let e = Ball::one(w).exp();
    let mut e_pow = Ball::from_i64(a as i64 - 1, w).exp();
    let mut fact = BigInt::one();
    for k in 1..a {
        if k > 1 {
            fact *= BigInt::from(k - 1);
            e_pow = e_pow.div(&e)?;
        }
        let base = a - k;
        let power = num_traits::pow(BigInt::from(base), (k - 1) as usize);
        let mut c = Ball::from_ratio(&BigRational::new(power, fact.clone()), w)
            * Ball::from_i64(base as i64, w).sqrt()?
            * &e_pow;
        if k % 2 == 0 {
            c = -c;
        }
        let zk = z + BigRational::from_integer(BigInt::from(k));
        sum = sum + c.div(&Ball::from_ratio(&zk, w))?;
    }
    let zpa = z + BigRational::from_integer(BigInt::from(a));
    let half = BigRational::new(1.into(), 2.into());
    let zpa_ball = Ball::from_ratio(&zpa, w);
    let pre = (Ball::from_ratio(&(z + half), w) * zpa_ball.log()?).exp() * (-zpa_ball).exp();
    let g = pre * sum;
    let eps = Mag::pow2(-((2.5 * a as f64).floor() as i64));
    // |Γ - G| <= ε|Γ| <= 2ε|G|
    Ok(g.add_error(g.abs_upper().mul_up(&eps).mul_2exp(1)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::precision::ratio;

    fn c() -> PrecCtx {
        PrecCtx::new(256).unwrap()
    }

    #[test]
    fn gamma_one_and_two() {
        assert!(gamma_rational(&ratio(1, 1), c()).unwrap().contains_int(1));
        assert!(gamma_rational(&ratio(2, 1), c()).unwrap().contains_int(1));
    }

    #[test]
    fn gamma_half_is_sqrt_pi() {
        let g = gamma_rational(&ratio(1, 2), c()).unwrap();
        let s = const_pi(c()).sqrt().unwrap();
        assert!(g.overlaps(&s));
        assert!(g.rad_log10() < -70.0);
    }

    #[test]
    fn reflection_quarter() {
        // Γ(1/4)Γ(3/4) = π / sin(π/4) = π√2
        let ctx = c();
        let prod = gamma_rational(&ratio(1, 4), ctx).unwrap() * gamma_rational(&ratio(3, 4), ctx).unwrap();
        let pi = const_pi(ctx);
        let expected = pi.div(&pi.div_i64(4).sin()).unwrap();
        assert!(prod.overlaps(&expected));
        assert!(prod.overlaps(&(&pi * &Ball::from_i64(2, ctx).sqrt().unwrap())));
    }

    #[test]
    fn out_of_range() {
        assert!(matches!(gamma_rational(&ratio(0, 1), c()), Err(Error::UnsupportedArgument(_))));
        assert!(matches!(gamma_rational(&ratio(5, 2), c()), Err(Error::UnsupportedArgument(_))));
        assert!(matches!(gamma_rational(&ratio(-1, 2), c()), Err(Error::UnsupportedArgument(_))));
    }
}
