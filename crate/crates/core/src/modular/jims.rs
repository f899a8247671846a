use crate::error::{Error, Result};
use crate::precision::{const_pi, Ball, Float, Mag, PrecCtx};

/// Residual of
/// `1/2 + Σ e^(-πn²x) cos(πn²√(1-x²)) = (√2 + √(1+x))/√(1-x) Σ e^(-πn²x) sin(πn²√(1-x²))`
/// for `0 < x < 1`, both sums over `n >= 1`.
///
/// The cosine arguments grow like `πN²`, so the working precision is raised
/// by their bit size before summing.
pub fn jims_identity(x: &Ball, ctx: PrecCtx) -> Result<Ball> {
    let (lhs, rhs) = jims_sides(x, ctx, 1)?;
    Ok(&lhs - &rhs)
}

/// Both sides separately; `stretch` multiplies the number of summed terms.
pub fn jims_sides(x: &Ball, ctx: PrecCtx, stretch: u64) -> Result<(Ball, Ball)> {
    if !x.is_positive() || x.upper() >= Float::one() {
        return Err(Error::domain("x must lie strictly inside (0, 1)"));
    }
    let xf = x.mid_f64().max(1e-300);
    // e^(-πN²x) below 2^-(bits+40)
    let need = (ctx.bits() as f64 + 40.0) * std::f64::consts::LN_2;
    let n_max = stretch.max(1) * ((need / (std::f64::consts::PI * xf)).sqrt().ceil() as u64).max(2);
    let arg_bits = ((std::f64::consts::PI * (n_max * n_max) as f64).log2().ceil() as u32).max(1);
    let w = ctx.with_guard(arg_bits + 48);

    let x = x.with_prec(w);
    let one = Ball::one(w);
    let pi = const_pi(w);
    let s = (&one - &x.sqr()).sqrt()?;
    let a = &pi * &x;
    let b = &pi * &s;

    let mut cos_sum = Ball::zero(w);
    let mut sin_sum = Ball::zero(w);
    for n in 1..=n_max {
        let n2 = Ball::from_bigint(&((n * n) as i64).into(), w);
        let e = (-(&a * &n2)).exp();
        let (sn, cs) = (&b * &n2).sin_cos();
        cos_sum = &cos_sum + &(&e * &cs);
        sin_sum = &sin_sum + &(&e * &sn);
    }
    // omitted terms: Σ_{n>N} e^(-πn²x) <= e^(-πx(N+1)²) / (1 - e^(-πx(2N+3)))
    let first = (-(&a.mul_i64(((n_max + 1) * (n_max + 1)) as i64))).exp().abs_upper();
    let ratio = (-(&a.mul_i64((2 * n_max + 3) as i64))).exp().abs_upper();
    let tail = Mag::geometric_sum_up(&first, &ratio).ok_or(Error::NotConvergent)?;
    let cos_sum = cos_sum.add_error(tail);
    let sin_sum = sin_sum.add_error(tail);

    let lhs = &one.mul_2exp(-1) + &cos_sum;
    let factor = (&Ball::from_i64(2, w).sqrt()? + &(&one + &x).sqrt()?).div(&(&one - &x).sqrt()?)?;
    let rhs = &factor * &sin_sum;
    Ok((lhs.with_prec(ctx), rhs.with_prec(ctx)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn residual_vanishes() {
        let c = PrecCtx::new(256).unwrap();
        for s in ["0.3", "0.6", "0.9"] {
            let x = Ball::from_decimal_str(s, c).unwrap();
            let r = jims_identity(&x, c).unwrap();
            assert!(r.contains_zero(), "{s}");
            assert!(r.rad_log10() < -60.0, "{s}: {}", r.rad_log10());
        }
    }

    #[test]
    fn sides_match_longer_sum_at_double_precision() {
        let c = PrecCtx::new(128).unwrap();
        let x = Ball::from_decimal_str("0.3", c).unwrap();
        let (l, r) = jims_sides(&x, c, 1).unwrap();
        let (l2, r2) = jims_sides(&x, c.doubled(), 2).unwrap();
        assert!(l.overlaps(&l2) && r.overlaps(&r2));
        // neither side is close to zero, so the residual test is not vacuous
        assert!(l.abs_lower() > Mag::pow2(-4));
    }

    #[test]
    fn domain() {
        let c = PrecCtx::new(64).unwrap();
        assert!(jims_identity(&Ball::from_i64(1, c), c).is_err());
        assert!(jims_identity(&Ball::zero(c), c).is_err());
    }
}
