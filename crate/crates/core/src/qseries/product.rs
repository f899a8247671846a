use crate::error::{Error, Result};
use crate::precision::{Ball, Float, Mag, PrecCtx};

use super::SeriesTail;

const MAX_FACTORS: usize = 2_000_000;

/// Certified `(a; q)_∞ = ∏_{k>=0} (1 - a q^k)`.
pub fn pochhammer_inf(a: &Ball, q: &Ball, ctx: PrecCtx) -> Result<Ball> {
    pochhammer_with_tail(a, q, ctx).map(|(b, _)| b)
}

/// As [`pochhammer_inf`], also reporting how many factors were multiplied
/// out and the bound used for the rest.
pub fn pochhammer_with_tail(a: &Ball, q: &Ball, ctx: PrecCtx) -> Result<(Ball, SeriesTail)> {
    let qa = q.abs_upper();
    if qa >= Mag::from_u64(1) {
        return Err(Error::NotConvergent);
    }
    let one = Ball::one(ctx);
    if a.is_exact() && a.mid().is_zero() {
        return Ok((one, SeriesTail { terms_used: 0, tail_bound: Mag::zero() }));
    }
    let aa = a.abs_upper();
    let one_minus_q = Float::one().sub_exact(&qa.to_float());
    let one_minus_q = Mag::from_float_down(&one_minus_q);

    // rough factor count from the analytic bound, padded for rounding growth
    let est = {
        let lq = -qa.log2();
        let need = ctx.bits() as f64 + 8.0 + aa.log2().max(0.0) - one_minus_q.log2();
        if lq.is_finite() && lq > 0.0 {
            (need / lq).ceil().max(1.0) as usize
        } else {
            1
        }
    };
    let guard = 24 + usize::BITS - est.leading_zeros();
    let w = ctx.with_guard(guard);
    let target = Mag::pow2(-(ctx.bits() as i64) - 6);

    let q = q.with_prec(w);
    let mut prod = Ball::one(w);
    let mut aqk = a.with_prec(w);
    let mut aqk_mag = aa;
    let mut k = 0usize;
    loop {
        let factor = &Ball::one(w) - &aqk;
        if factor.contains_zero() {
            return Err(Error::FactorNearZero);
        }
        prod = &prod * &factor;
        aqk = &aqk * &q;
        aqk_mag = aqk_mag.mul_up(&qa);
        k += 1;
        if k.is_multiple_of(8) || k >= est {
            // |log ∏_{j>=k}(1 - a q^j)| <= |a||q|^k / ((1 - |q|)(1 - |a||q|^k))
            if let Some(s) = aqk_mag.one_over_one_minus_up() {
                let t = aqk_mag.mul_up(&s).div_up(&one_minus_q);
                if t <= target || qa.is_zero() {
                    let spread = prod.abs_upper().mul_up(&t.expm1_up());
                    let out = prod.add_error(spread).with_prec(ctx);
                    return Ok((out, SeriesTail { terms_used: k, tail_bound: t }));
                }
            }
        }
        if k > MAX_FACTORS {
            return Err(Error::NotConvergent);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(b: u32) -> PrecCtx {
        PrecCtx::new(b).unwrap()
    }

    #[test]
    fn zero_base_is_one() {
        let c = ctx(128);
        let q = Ball::from_ints(1, 3, c);
        assert!(pochhammer_inf(&Ball::zero(c), &q, c).unwrap().contains_int(1));
    }

    #[test]
    fn zero_nome_leaves_one_factor() {
        let c = ctx(128);
        let a = Ball::from_ints(2, 7, c);
        let v = pochhammer_inf(&a, &Ball::zero(c), c).unwrap();
        assert!(v.overlaps(&Ball::from_ints(5, 7, c)));
    }

    #[test]
    fn euler_function_at_one_tenth() {
        // oracle: 200 factors at double precision; the omitted factors change
        // the product by less than 10^-200
        let c = ctx(256);
        let w = ctx(512);
        let q = Ball::from_ints(1, 10, w);
        let mut p = Ball::one(w);
        let mut qk = q.clone();
        for _ in 0..200 {
            p = &p * &(&Ball::one(w) - &qk);
            qk = &qk * &q;
        }
        let p = p.add_error(Mag::pow2(-660));
        let v = pochhammer_inf(&Ball::from_ints(1, 10, c), &Ball::from_ints(1, 10, c), c).unwrap();
        assert!(v.overlaps(&p));
        assert!(v.mid_decimal(10).starts_with("0.8900100999"));
        assert!(v.rad_log10() < -70.0);
    }

    #[test]
    fn nome_outside_disc_rejected() {
        let c = ctx(64);
        let r = pochhammer_inf(&Ball::one(c), &Ball::from_i64(1, c), c);
        assert_eq!(r, Err(Error::NotConvergent));
    }

    #[test]
    fn zero_factor_detected() {
        let c = ctx(64);
        let q = Ball::from_ints(1, 2, c);
        let r = pochhammer_inf(&Ball::from_i64(4, c), &q, c);
        assert_eq!(r, Err(Error::FactorNearZero));
    }

    #[test]
    fn tail_reported() {
        let c = ctx(128);
        let q = Ball::from_ints(1, 2, c);
        let (_, tail) = pochhammer_with_tail(&q, &q, c).unwrap();
        assert!(tail.terms_used > 100);
        assert!(tail.tail_bound <= Mag::pow2(-130));
    }
}
