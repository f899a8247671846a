use super::ball::Ball;
use super::PrecCtx;
use crate::error::{Error, Result};

/// Arithmetic–geometric mean of two positive balls.
///
/// Iterates until the midpoints agree to the working precision; the result is
/// the hull of the final pair, which brackets the true mean.
pub fn agm(a: &Ball, b: &Ball, ctx: PrecCtx) -> Result<Ball> {
    if !a.is_positive() || !b.is_positive() {
        return Err(Error::domain("agm requires strictly positive arguments"));
    }
    let w = PrecCtx::raw(ctx.bits() + 32);
    let mut x = a.with_prec(w);
    let mut y = b.with_prec(w);
    for _ in 0..256 {
        let gap = x.mid().sub_exact(y.mid()).abs();
        let scale = x.mid().abs().mul_2exp(-(w.bits() as i64) + 8);
        if gap <= scale {
            break;
        }
        let nx = (&x + &y).mul_2exp(-1);
        let ny = (&x * &y).sqrt()?;
        x = nx;
        y = ny;
    }
    Ok(x.union(&y).with_prec(ctx))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c() -> PrecCtx {
        PrecCtx::new(256).unwrap()
    }

    #[test]
    fn fixed_point() {
        let one = Ball::one(c());
        assert!(agm(&one, &one, c()).unwrap().contains_int(1));
    }

    #[test]
    fn homogeneity() {
        let ctx = c();
        let base = agm(&Ball::from_i64(1, ctx), &Ball::from_i64(4, ctx), ctx).unwrap();
        let scaled = agm(&Ball::from_i64(2, ctx), &Ball::from_i64(8, ctx), ctx).unwrap();
        assert!(scaled.overlaps(&base.mul_i64(2)));
        for lam in [Ball::from_i64(10, ctx), Ball::from_ints(1, 3, ctx)] {
            let a = Ball::from_ints(3, 2, ctx);
            let b = Ball::from_ints(5, 7, ctx);
            let lhs = agm(&(&lam * &a), &(&lam * &b), ctx).unwrap();
            let rhs = &lam * &agm(&a, &b, ctx).unwrap();
            assert!(lhs.overlaps(&rhs));
        }
    }

    #[test]
    fn rejects_nonpositive() {
        let ctx = c();
        assert!(agm(&Ball::zero(ctx), &Ball::one(ctx), ctx).is_err());
    }

    #[test]
    fn tight() {
        let ctx = c();
        let two = Ball::from_i64(2, ctx).sqrt().unwrap();
        let m = agm(&Ball::one(ctx), &two, ctx).unwrap();
        assert!(m.rad_log10() < -70.0);
    }
}
