use serde::Serialize;

use crate::error::{Error, Result};
use crate::precision::{Ball, Float, Mag, PrecCtx};
use crate::qseries::{phi, phi_series, pochhammer_inf, theta_f, QValue};

/// Which root of `x² - (2 + 5p)x + (1 - p)³ = 0` matched `φ⁴(q)/φ⁴(q⁷)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    Plus,
    Minus,
    /// The discriminant could not be separated from zero; the two roots coincide.
    Double,
}

/// `p, u, v, w` at a nome together with the cubic `ξ³ + c2 ξ² + c1 ξ + c0`.
#[derive(Clone, Debug)]
pub struct SepticState {
    pub q: QValue,
    pub p: Ball,
    pub u: Ball,
    pub v: Ball,
    pub w: Ball,
    pub ratio4: Ball,
    pub branch: Branch,
    pub c2: Ball,
    pub c1: Ball,
    pub c0: Ball,
}

fn require_positive(q: &QValue) -> Result<()> {
    if !q.is_positive() {
        return Err(Error::domain("the septic quantities need a positive nome"));
    }
    let one = Float::one();
    if q.to_ball(PrecCtx::raw(64)).upper() >= one {
        return Err(Error::domain("nome must satisfy |q| < 1"));
    }
    Ok(())
}

/// `u = 2q^(1/7) f(q⁵, q⁹)/φ(q⁷)`, `v = 2q^(4/7) f(q³, q¹¹)/φ(q⁷)`,
/// `w = 2q^(9/7) f(q, q¹³)/φ(q⁷)`.
pub fn compute_uvw(q: &QValue, ctx: PrecCtx) -> Result<(Ball, Ball, Ball)> {
    require_positive(q)?;
    let w = ctx.with_guard(32);
    let t = q.root(7)?;
    let b = |v: QValue| v.to_ball(w);
    let phi7 = phi(q.pow(7), w)?;
    let part = |lead: u32, e1: u32, e2: u32| -> Result<Ball> {
        let f = theta_f(&b(q.pow(e1)), &b(q.pow(e2)), w)?;
        Ok((&b(t.pow(lead)) * &f).mul_2exp(1).div(&phi7)?.with_prec(ctx))
    };
    Ok((part(1, 5, 9)?, part(4, 3, 11)?, part(9, 1, 13)?))
}

/// `p = 8q² (-q; q²)_∞ / (-q⁷; q¹⁴)_∞⁷`.
pub fn compute_p(q: &QValue, ctx: PrecCtx) -> Result<Ball> {
    require_positive(q)?;
    let w = ctx.with_guard(32);
    let b = |k: u32| q.pow(k).to_ball(w);
    let num = pochhammer_inf(&-b(1), &b(2), w)?;
    let den = pochhammer_inf(&-b(7), &b(14), w)?.pow_int(7)?;
    Ok((&b(2).mul_i64(8) * &num).div(&den)?.with_prec(ctx))
}

/// `φ⁴(q)/φ⁴(q⁷)` from the series route.
pub fn ratio4_oracle(q: &QValue, ctx: PrecCtx) -> Result<Ball> {
    let w = ctx.with_guard(32);
    let r = phi_series(q, w)?.div(&phi_series(q.pow(7), w)?)?;
    Ok(r.pow_int(4)?.with_prec(ctx))
}

/// `R² - (2 + 5p)R + (1 - p)³` with `R = φ⁴(q)/φ⁴(q⁷)` from the series.
pub fn verify_quartic_relation(q: &QValue, ctx: PrecCtx) -> Result<Ball> {
    let w = ctx.with_guard(32);
    let p = compute_p(q, w)?;
    let r = ratio4_oracle(q, w)?;
    Ok(quartic(&r, &p, w).with_prec(ctx))
}

fn quartic(x: &Ball, p: &Ball, w: PrecCtx) -> Ball {
    let one = Ball::one(w);
    let lin = &Ball::from_i64(2, w) + &p.mul_i64(5);
    &(&x.sqr() - &(&lin * x)) + &(&one - p).pow_int(3).expect("integer power")
}

/// `1 + u + v + w - φ(q^(1/7))/φ(q⁷)`, the quotient side from the series.
pub fn uvw_sum_residual(q: &QValue, ctx: PrecCtx) -> Result<Ball> {
    let w = ctx.with_guard(32);
    let (u, v, ww) = compute_uvw(q, w)?;
    let quot = phi_series(q.root(7)?, w)?.div(&phi_series(q.pow(7), w)?)?;
    let lhs = &(&(&Ball::one(w) + &u) + &v) + &ww;
    Ok((&lhs - &quot).with_prec(ctx))
}

/// `p - uvw`.
pub fn p_residual(q: &QValue, ctx: PrecCtx) -> Result<Ball> {
    let w = ctx.with_guard(32);
    let (u, v, ww) = compute_uvw(q, w)?;
    let p = compute_p(q, w)?;
    Ok((&p - &(&(&u * &v) * &ww)).with_prec(ctx))
}

/// The root of the quadratic in `φ⁴(q)/φ⁴(q⁷)` that agrees with the series.
pub fn solve_ratio4(p: &Ball, q: &QValue, ctx: PrecCtx) -> Result<(Ball, Branch)> {
    let w = ctx.with_guard(16);
    let p = p.with_prec(w);
    let lin = &Ball::from_i64(2, w) + &p.mul_i64(5);
    let disc = &lin.sqr() - &(&Ball::one(w) - &p).pow_int(3)?.mul_i64(4);
    if disc.is_negative() {
        return Err(Error::domain("quadratic for the theta ratio has no real root"));
    }
    if disc.contains_zero() {
        // both roots lie in lin/2 ± √(upper)/2
        let s = Mag::from_float_up(&disc.upper()).sqrt_up();
        let x = lin.mul_2exp(-1).add_error(s.mul_2exp(-1));
        return Ok((x.with_prec(ctx), Branch::Double));
    }
    let s = disc.sqrt()?;
    let plus = (&lin + &s).mul_2exp(-1);
    let minus = (&lin - &s).mul_2exp(-1);
    let oracle = ratio4_oracle(q, w)?;
    match (plus.overlaps(&oracle), minus.overlaps(&oracle)) {
        (true, false) => Ok((plus.with_prec(ctx), Branch::Plus)),
        (false, true) => Ok((minus.with_prec(ctx), Branch::Minus)),
        (true, true) => Err(Error::BothRootsMatch),
        (false, false) => Err(Error::NoRootMatches),
    }
}

impl SepticState {
    /// All septic quantities at `q`, with the quadratic branch chosen against the series.
    pub fn compute(q: &QValue, ctx: PrecCtx) -> Result<SepticState> {
        let w = ctx.with_guard(16);
        let (u, v, ww) = compute_uvw(q, w)?;
        let p = compute_p(q, w)?;
        let (ratio4, branch) = solve_ratio4(&p, q, w)?;
        let c2 = (&(&Ball::one(w) + &p.mul_i64(3)) - &ratio4).mul_2exp(1);
        let c1 = &p.sqr() * &(&p + &Ball::from_i64(4, w));
        let c0 = -p.pow_int(4)?;
        let r = |b: Ball| b.with_prec(ctx);
        Ok(SepticState {
            q: q.clone(),
            p: r(p),
            u: r(u),
            v: r(v),
            w: r(ww),
            ratio4: r(ratio4),
            branch,
            c2: r(c2),
            c1: r(c1),
            c0: r(c0),
        })
    }

    /// `ξ³ + c2 ξ² + c1 ξ + c0`.
    pub fn cubic_at(&self, x: &Ball) -> Ball {
        &(&(&(x + &self.c2) * x) + &self.c1) * x + self.c0.clone()
    }

    pub fn cubic_derivative_at(&self, x: &Ball) -> Ball {
        &(&(&x.mul_i64(3) + &self.c2.mul_i64(2)) * x) + &self.c1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qseries::QPoint;

    fn ctx(b: u32) -> PrecCtx {
        PrecCtx::new(b).unwrap()
    }

    fn real(s: &str, c: PrecCtx) -> QValue {
        QValue::Real(Ball::from_decimal_str(s, c).unwrap())
    }

    fn special() -> QValue {
        QValue::Point(QPoint::pos(1, 7))
    }

    #[test]
    fn sum_identity_at_point_three() {
        let c = ctx(256);
        let r = uvw_sum_residual(&real("0.3", c), c).unwrap();
        assert!(r.contains_zero() && r.rad_log10() < -60.0);
    }

    #[test]
    fn p_is_one_at_the_special_point() {
        let c = ctx(512);
        let p = compute_p(&special(), c).unwrap();
        assert!(p.contains_int(1));
        assert!(p.rad_log10() < -100.0);
    }

    #[test]
    fn p_matches_uvw_at_point_two() {
        let c = ctx(256);
        assert!(p_residual(&real("0.2", c), c).unwrap().contains_zero());
    }

    #[test]
    fn small_q_leading_orders() {
        let c = ctx(128);
        let q = real("0.000001", c);
        let (u, _, _) = compute_uvw(&q, c).unwrap();
        let lead = q.root(7).unwrap().to_ball(c).mul_i64(2);
        assert!((u.mid_f64() / lead.mid_f64() - 1.0).abs() < 0.01);
        let q = real("0.0001", c);
        let p = compute_p(&q, c).unwrap();
        assert!((p.mid_f64() / 8e-8 - 1.0).abs() < 1e-3);
    }

    #[test]
    fn quartic_relation_residuals() {
        let c = ctx(256);
        for q in [real("0.25", c), real("0.5", c), special()] {
            assert!(verify_quartic_relation(&q, c).unwrap().contains_zero());
        }
    }

    #[test]
    fn ratio4_is_seven_at_the_special_point() {
        let c = ctx(512);
        let q = special();
        let p = compute_p(&q, c).unwrap();
        let (x, b) = solve_ratio4(&p, &q, c).unwrap();
        assert!(x.contains_int(7));
        assert_eq!(b, Branch::Plus);
    }

    #[test]
    fn ratio4_at_point_three_matches_series() {
        let c = ctx(256);
        let q = real("0.3", c);
        let p = compute_p(&q, c).unwrap();
        let (x, _) = solve_ratio4(&p, &q, c).unwrap();
        assert!(x.overlaps(&ratio4_oracle(&q, c).unwrap()));
    }

    #[test]
    fn degenerate_p_gives_double_root_one() {
        let c = ctx(128);
        let (x, b) = solve_ratio4(&Ball::zero(c), &real("0.1", c), c).unwrap();
        assert_eq!(b, Branch::Double);
        assert!(x.contains_int(1));
    }

    #[test]
    fn special_point_coefficients() {
        let s = SepticState::compute(&special(), ctx(512)).unwrap();
        assert!(s.c2.contains_int(-6) && s.c1.contains_int(5) && s.c0.contains_int(-1));
    }

    #[test]
    fn negative_nome_rejected() {
        let c = ctx(64);
        let q = QValue::Point(QPoint::pos(1, 7).negated());
        assert!(matches!(compute_uvw(&q, c), Err(Error::Domain(_))));
        assert!(matches!(compute_p(&q, c), Err(Error::Domain(_))));
    }
}
