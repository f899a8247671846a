use std::cell::RefCell;
use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::ball::Ball;
use super::mag::Mag;
use super::PrecCtx;

thread_local! {
    static PI_CACHE: RefCell<HashMap<u32, Ball>> = RefCell::new(HashMap::new());
}

/// Enclosure of π at `ctx` (Machin's formula with alternating-tail bounds).
pub fn const_pi(ctx: PrecCtx) -> Ball {
    if let Some(b) = PI_CACHE.with(|c| c.borrow().get(&ctx.bits()).cloned()) {
        return b;
    }
    let w = PrecCtx::raw(ctx.bits() + 16);
    let pi = (atan_inv(5, w).mul_i64(16) - atan_inv(239, w).mul_i64(4)).with_prec(ctx);
    PI_CACHE.with(|c| c.borrow_mut().insert(ctx.bits(), pi.clone()));
    pi
}

/// `atan(1/n)` for an integer `n >= 2`.
fn atan_inv(n: u64, w: PrecCtx) -> Ball {
    let n_big = BigInt::from(n);
    let n2 = &n_big * &n_big;
    let eps = Mag::pow2(-(w.bits() as i64) - 4);
    let mut power = n_big.clone();
    let mut sum = Ball::zero(w);
    let mut k: u64 = 0;
    loop {
        let den = &power * BigInt::from(2 * k + 1);
        let term = Ball::from_ratio(&BigRational::new(BigInt::one(), den), w);
        if term.abs_upper() < eps {
            // alternating series with decreasing terms: tail below the first omitted term
            return sum.add_error(term.abs_upper());
        }
        sum = if k.is_multiple_of(2) { &sum + &term } else { &sum - &term };
        power *= &n2;
        k += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pi_64_bits() {
        let c = PrecCtx::new(64).unwrap();
        let p = const_pi(c);
        assert!(p.mid_decimal(15).starts_with("3.14159265358979"));
        assert!(p.rad().log2() < -58.0);
    }

    #[test]
    fn pi_256_tight() {
        let c = PrecCtx::new(256).unwrap();
        assert!(const_pi(c).rad().log2() < -250.0);
    }

    #[test]
    fn pi_matches_gauss_legendre() {
        // independent route: Gauss–Legendre / Brent–Salamin via the AGM
        let c = PrecCtx::new(256).unwrap();
        let w = PrecCtx::raw(400);
        let one = Ball::one(w);
        let mut a = one.clone();
        let mut b = Ball::from_ints(1, 2, w).sqrt().unwrap();
        let mut t = Ball::from_ints(1, 4, w);
        let mut p = one.clone();
        for _ in 0..12 {
            let an = (&a + &b).mul_2exp(-1);
            let bn = (&a * &b).sqrt().unwrap();
            let d = &a - &an;
            t = &t - &(&p * &d.sqr());
            p = p.mul_2exp(1);
            a = an;
            b = bn;
        }
        let gl = (&a + &b).sqr().div(&t.mul_2exp(2)).unwrap();
        // the iteration error after 12 steps is far below 2^-300; the ball only tracks rounding
        let gl = gl.add_error(Mag::pow2(-300));
        assert!(const_pi(c).overlaps(&gl));
    }
}
