use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::precision::{agm, const_pi, Ball, Float, Mag, PrecCtx};
use crate::qseries::{chi, phi, phi_series, psi, QPoint};

fn guard(ctx: PrecCtx) -> PrecCtx {
    ctx.with_guard(32)
}

/// `₂F₁(1/2, 1/2; 1; x) = 1 / agm(1, √(1-x))` for `x < 1`.
///
/// Negative `x` is accepted as well (the change-of-sign transform produces it).
pub fn hyp2f1_half(x: &Ball, ctx: PrecCtx) -> Result<Ball> {
    if x.is_exact() && x.mid().is_zero() {
        return Ok(Ball::one(ctx));
    }
    let w = guard(ctx);
    let x = x.with_prec(w);
    let c = &Ball::one(w) - &x;
    if !c.is_positive() {
        return Err(Error::domain("hypergeometric argument must be below 1"));
    }
    let g = agm(&Ball::one(w), &c.sqrt()?, w)?;
    Ok(g.recip()?.with_prec(ctx))
}

/// Direct series `Σ ((1/2)_n / n!)² x^n`. Consecutive coefficients have
/// ratio `((2n+1)/(2n+2))² < 1`, so the tail after the last term `t` is at
/// most `t |x| / (1 - |x|)`.
pub fn hyp2f1_half_series(x: &Ball, ctx: PrecCtx) -> Result<Ball> {
    let w = guard(ctx);
    let x = x.with_prec(w);
    let xa = x.abs_upper();
    if xa >= Mag::from_u64(1) {
        return Err(Error::domain("series needs |x| < 1"));
    }
    let target = Mag::pow2(-(w.bits() as i64));
    let mut sum = Ball::one(w);
    let mut term = Ball::one(w);
    let mut n: i64 = 0;
    loop {
        let f = (2 * n + 1) * (2 * n + 1);
        let g = (2 * n + 2) * (2 * n + 2);
        term = (&term * &x).mul_i64(f).div_i64(g);
        n += 1;
        let tm = term.abs_upper();
        if let Some(tail) = Mag::geometric_sum_up(&tm.mul_up(&xa), &xa) {
            if tail <= target {
                sum = &sum + &term;
                return Ok(sum.add_error(tail).with_prec(ctx));
            }
        }
        sum = &sum + &term;
        if n > 10_000_000 {
            return Err(Error::NotConvergent);
        }
    }
}

fn check_unit_interval(x: &Ball) -> Result<()> {
    let one = Float::one();
    if !x.is_positive() || x.upper() >= one {
        return Err(Error::domain("x must lie strictly inside (0, 1)"));
    }
    Ok(())
}

/// `q = exp(-π ₂F₁(1-x) / ₂F₁(x))`.
pub fn nome(x: &Ball, ctx: PrecCtx) -> Result<Ball> {
    check_unit_interval(x)?;
    let w = guard(ctx);
    let x = x.with_prec(w);
    let a = hyp2f1_half(&x, w)?;
    let b = hyp2f1_half(&(&Ball::one(w) - &x), w)?;
    let y = &const_pi(w) * &b.div(&a)?;
    Ok((-y).exp().with_prec(ctx))
}

fn check_nome(q: &Ball) -> Result<()> {
    if !q.is_positive() || q.upper() >= Float::one() {
        return Err(Error::domain("nome must lie strictly inside (0, 1)"));
    }
    Ok(())
}

/// `x` with `nome(x) = q`, via `x = 16 q ψ⁴(q²) / φ⁴(q)`.
///
/// Equivalent to `1 - (φ(-q)/φ(q))⁴` but keeps full relative accuracy when
/// `q` is small.
pub fn modulus_from_q(q: &Ball, ctx: PrecCtx) -> Result<Ball> {
    check_nome(q)?;
    let w = guard(ctx);
    let q = q.with_prec(w);
    let ps = psi(q.sqr(), w)?;
    let ph = phi(q.clone(), w)?;
    let r = ps.div(&ph)?.pow_int(4)?;
    Ok((&r * &q).mul_i64(16).with_prec(ctx))
}

/// `1 - x = (φ(-q)/φ(q))⁴`, accurate when `x` is close to 1.
pub fn modulus_complement_from_q(q: &Ball, ctx: PrecCtx) -> Result<Ball> {
    check_nome(q)?;
    let w = guard(ctx);
    let q = q.with_prec(w);
    let r = phi(-&q, w)?.div(&phi(q, w)?)?;
    Ok(r.pow_int(4)?.with_prec(ctx))
}

/// The complement route applied literally: `1 - (φ(-q)/φ(q))⁴`, series evaluation.
pub fn modulus_from_q_by_sign_change(q: &Ball, ctx: PrecCtx) -> Result<Ball> {
    check_nome(q)?;
    let w = guard(ctx);
    let q = q.with_prec(w);
    let r = phi_series(-&q, w)?.div(&phi_series(q, w)?)?;
    Ok((&Ball::one(w) - &r.pow_int(4)?).with_prec(ctx))
}

/// `φ²(q) / φ²(qⁿ)`.
pub fn multiplier(q: &Ball, n: u32, ctx: PrecCtx) -> Result<Ball> {
    check_nome(q)?;
    if n == 0 {
        return Err(Error::domain("degree must be positive"));
    }
    let w = guard(ctx);
    let q = q.with_prec(w);
    let a = phi(q.clone(), w)?;
    let b = phi(q.pow_int(n as i64)?, w)?;
    Ok(a.div(&b)?.sqr().with_prec(ctx))
}

/// `α_n` and `1 - α_n` for the nome `e^(-π√n)`.
pub fn singular_modulus_pair(n: &BigRational, ctx: PrecCtx) -> Result<(Ball, Ball)> {
    let q = QPoint::positive(n.clone())?;
    let w = guard(ctx);
    let qb = q.to_ball(w);
    let a = modulus_from_q(&qb, w)?;
    let c = modulus_complement_from_q(&qb, w)?;
    Ok((a.with_prec(ctx), c.with_prec(ctx)))
}

/// `α_n`, with `φ²(e^(-π√n)) = ₂F₁(1/2, 1/2; 1; α_n)`.
pub fn singular_modulus_sq(n: &BigRational, ctx: PrecCtx) -> Result<Ball> {
    Ok(singular_modulus_pair(n, ctx)?.0)
}

/// `G_n = 2^(-1/4) q^(-1/24) χ(q)` at `q = e^(-π√n)`.
pub fn class_invariant(n: &BigRational, ctx: PrecCtx) -> Result<Ball> {
    let q = QPoint::positive(n.clone())?;
    let w = guard(ctx);
    // q^(-1/24) = exp(π√n / 24)
    let lead = q.y(w).div_i64(24).exp();
    let two = Ball::from_i64(2, w).pow_ints(-1, 4)?;
    Ok((&(&two * &lead) * &chi(&q, w)?).with_prec(ctx))
}

/// `{4α(1-α)}^(-1/24)` from a modulus and its complement.
pub fn class_invariant_from_modulus(alpha: &Ball, alpha_c: &Ball, ctx: PrecCtx) -> Result<Ball> {
    let w = guard(ctx);
    let t = (&alpha.with_prec(w) * &alpha_c.with_prec(w)).mul_i64(4);
    Ok(t.pow_ints(-1, 24)?.with_prec(ctx))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::precision::ratio;

    fn ctx(b: u32) -> PrecCtx {
        PrecCtx::new(b).unwrap()
    }

    fn dec(s: &str, c: PrecCtx) -> Ball {
        Ball::from_decimal_str(s, c).unwrap()
    }

    #[test]
    fn hyp_at_zero_and_half() {
        let c = ctx(256);
        assert!(hyp2f1_half(&Ball::zero(c), c).unwrap().contains_int(1));
        let z = hyp2f1_half(&Ball::from_ints(1, 2, c), c).unwrap();
        let p = phi(QPoint::pos(1, 1), c).unwrap().sqr();
        assert!(z.overlaps(&p));
        assert!(z.rad_log10() < -70.0);
    }

    #[test]
    fn agm_route_matches_series() {
        let c = ctx(256);
        for s in ["0.3", "0.05", "0.7", "-0.4"] {
            let x = dec(s, c);
            let a = hyp2f1_half(&x, c).unwrap();
            let b = hyp2f1_half_series(&x, c).unwrap();
            assert!(a.overlaps(&b), "{s}");
        }
    }

    #[test]
    fn nome_of_half_is_e_minus_pi() {
        let c = ctx(256);
        let q = nome(&Ball::from_ints(1, 2, c), c).unwrap();
        assert!(q.overlaps(&QPoint::pos(1, 1).to_ball(c)));
    }

    #[test]
    fn nome_round_trip() {
        let c = ctx(256);
        for s in ["0.1", "0.3", "0.5", "0.7", "0.9"] {
            let x = dec(s, c);
            let q = nome(&x, c).unwrap();
            let back = modulus_from_q(&q, c).unwrap();
            assert!(back.overlaps(&x), "{s}");
            assert!(back.rad_log10() < -60.0);
        }
        let n = nome(&dec("0.1", c), c).unwrap().mid_decimal(8);
        // independent value: mpmath qfrom(m=0.1)
        assert!(n.starts_with("0.00658465"), "{n}");
    }

    #[test]
    fn modulus_routes_agree() {
        let c = ctx(256);
        for s in ["0.01", "0.3", "0.6"] {
            let q = dec(s, c);
            let a = modulus_from_q(&q, c).unwrap();
            let b = modulus_from_q_by_sign_change(&q, c).unwrap();
            let k = modulus_complement_from_q(&q, c).unwrap();
            assert!(a.overlaps(&b), "{s}");
            assert!((&a + &k).contains_int(1), "{s}");
            assert!(a.is_positive() && a.upper() < Float::one());
        }
        let h = modulus_from_q(&QPoint::pos(1, 1).to_ball(c), c).unwrap();
        assert!(h.overlaps(&Ball::from_ints(1, 2, c)));
    }

    #[test]
    fn nome_domain() {
        let c = ctx(64);
        assert!(nome(&Ball::from_i64(1, c), c).is_err());
        assert!(modulus_from_q(&Ball::from_ints(3, 2, c), c).is_err());
        assert!(modulus_from_q(&Ball::from_ints(-1, 2, c), c).is_err());
    }

    #[test]
    fn multiplier_values() {
        let c = ctx(400);
        let q = QPoint::pos(1, 1).to_ball(c);
        assert!(multiplier(&q, 1, c).unwrap().contains_int(1));
        let m3 = multiplier(&q, 3, c).unwrap().sqr();
        let s3 = Ball::from_i64(3, c).sqrt().unwrap();
        assert!(m3.overlaps(&(&s3.mul_i64(6) - &Ball::from_i64(9, c))));
        let m5 = multiplier(&q, 5, c).unwrap();
        let s5 = Ball::from_i64(5, c).sqrt().unwrap();
        assert!(m5.overlaps(&(&s5.mul_i64(5) - &Ball::from_i64(10, c))));
    }

    #[test]
    fn multiplier_composes() {
        let c = ctx(256);
        let q = dec("0.2", c);
        let m9 = multiplier(&q, 9, c).unwrap();
        let m33 = &multiplier(&q, 3, c).unwrap() * &multiplier(&q.pow_int(3).unwrap(), 3, c).unwrap();
        assert!(m9.overlaps(&m33));
    }

    #[test]
    fn singular_moduli() {
        let c = ctx(256);
        assert!(singular_modulus_sq(&ratio(1, 1), c).unwrap().overlaps(&Ball::from_ints(1, 2, c)));
        let a7 = singular_modulus_sq(&ratio(7, 1), c).unwrap();
        let z = hyp2f1_half(&a7, c).unwrap();
        assert!(z.overlaps(&phi(QPoint::pos(7, 1), c).unwrap().sqr()));
        let vals: Vec<Ball> = (1..=4).map(|n| singular_modulus_sq(&ratio(n, 1), c).unwrap()).collect();
        for w in vals.windows(2) {
            assert!(w[1].upper() < w[0].lower());
        }
    }

    #[test]
    fn class_invariants() {
        let c = ctx(256);
        assert!(class_invariant(&ratio(1, 1), c).unwrap().contains_int(1));
        for n in [1, 3, 7, 9, 169] {
            let g = class_invariant(&ratio(n, 1), c).unwrap();
            let (a, k) = singular_modulus_pair(&ratio(n, 1), c).unwrap();
            assert!(g.overlaps(&class_invariant_from_modulus(&a, &k, c).unwrap()), "G_{n}");
        }
        let s3 = Ball::from_i64(3, c).sqrt().unwrap();
        let g9 = (&Ball::one(c) + &s3).div(&Ball::from_i64(2, c).sqrt().unwrap()).unwrap().pow_ints(1, 3).unwrap();
        assert!(class_invariant(&ratio(9, 1), c).unwrap().overlaps(&g9));
    }

    #[test]
    fn g9_from_degree_three_modulus() {
        // with q = e^{-π}, β = x(q³) has degree 3 over α = 1/2
        let c = ctx(256);
        let q3 = QPoint::pos(9, 1).to_ball(c);
        let b = modulus_from_q(&q3, c).unwrap();
        let bc = modulus_complement_from_q(&q3, c).unwrap();
        let g = class_invariant_from_modulus(&b, &bc, c).unwrap();
        assert!(g.overlaps(&class_invariant(&ratio(9, 1), c).unwrap()));
    }
}
