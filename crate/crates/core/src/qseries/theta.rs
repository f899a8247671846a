use crate::error::{Error, Result};
use crate::precision::{Ball, Mag, PrecCtx};

use super::product::pochhammer_inf;
use super::{Nome, SeriesTail};

/// Which representation to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Route {
    Product,
    Series,
}

const MAX_TERMS: usize = 1_000_000;

fn working(ctx: PrecCtx) -> PrecCtx {
    ctx.with_guard(32)
}

fn target(w: PrecCtx) -> Mag {
    Mag::pow2(-(w.bits() as i64))
}

fn check_disc(q: &Ball) -> Result<Mag> {
    let qa = q.abs_upper();
    if qa >= Mag::from_u64(1) {
        return Err(Error::NotConvergent);
    }
    Ok(qa)
}

/// Ramanujan's `f(a, b) = Σ_{n∈ℤ} a^(n(n+1)/2) b^(n(n-1)/2)`, `|ab| < 1`.
pub fn theta_f(a: &Ball, b: &Ball, ctx: PrecCtx) -> Result<Ball> {
    let w = working(ctx);
    let (a, b) = (a.with_prec(w), b.with_prec(w));
    let ab = &a * &b;
    let abm = check_disc(&ab)?;
    let mut sum = Ball::one(w);
    sum = &sum + &one_side(&a, &ab, abm, w)?;
    sum = &sum + &one_side(&b, &ab, abm, w)?;
    Ok(sum.with_prec(ctx))
}

/// `Σ_{n>=1} t_n` with `t_1 = a`, `t_(n+1) = t_n a (ab)^n`. Once the term
/// ratio bound `|a||ab|^(n+1)` is at most 1/2 the rest is geometric.
fn one_side(a: &Ball, ab: &Ball, abm: Mag, w: PrecCtx) -> Result<Ball> {
    let am = a.abs_upper();
    let half = Mag::pow2(-1);
    let mut sum = Ball::zero(w);
    let mut t = a.clone();
    let mut abn = ab.clone();
    let mut abn_mag = abm;
    let mut scale = Mag::from_u64(1);
    for _ in 0..MAX_TERMS {
        let tm = t.abs_upper();
        if tm.is_zero() {
            return Ok(sum);
        }
        let rho = am.mul_up(&abn_mag);
        if rho <= half {
            if let Some(tail) = Mag::geometric_sum_up(&tm, &rho) {
                if tail <= target(w).mul_up(&scale) {
                    return Ok(sum.add_error(tail));
                }
            }
        }
        sum = &sum + &t;
        scale = scale.max(tm);
        t = &(&t * a) * &abn;
        abn = &abn * ab;
        abn_mag = abn_mag.mul_up(&abm);
    }
    Err(Error::NotConvergent)
}

/// `Σ_{n=0..=N} c_n q^(e_n)` where the exponents step by `gap(n)` and every
/// omitted term is bounded through `tail(N, |q|)`.
fn lacunary(
    q: &Ball,
    n_max: usize,
    w: PrecCtx,
    coeff: impl Fn(usize) -> i64,
    gap: impl Fn(usize) -> u64,
    tail: impl Fn(usize, Mag) -> Option<Mag>,
) -> Result<(Ball, SeriesTail)> {
    let qa = check_disc(q)?;
    let mut sum = Ball::from_i64(coeff(0), w);
    let mut qe = Ball::one(w);
    let mut cur_gap = 0u64;
    let mut step = Ball::one(w);
    for n in 1..=n_max {
        let g = gap(n - 1);
        while cur_gap < g {
            step = &step * q;
            cur_gap += 1;
        }
        // gaps only grow, so `step` is never rebuilt
        qe = &qe * &step;
        sum = &sum + &qe.mul_i64(coeff(n));
    }
    let t = tail(n_max, qa).ok_or(Error::NotConvergent)?;
    Ok((sum.add_error(t), SeriesTail { terms_used: n_max + 1, tail_bound: t }))
}

fn auto_terms(
    q: &Ball,
    ctx: PrecCtx,
    first_guess: impl Fn(f64, f64) -> usize,
    fixed: impl Fn(&Ball, usize, PrecCtx) -> Result<(Ball, SeriesTail)>,
) -> Result<Ball> {
    let w = working(ctx);
    let qa = check_disc(q)?;
    if qa.is_zero() {
        return Ok(fixed(q, 0, w)?.0.with_prec(ctx));
    }
    let lq = -qa.log2();
    let mut n = first_guess(w.bits() as f64 + 4.0, lq).max(1);
    loop {
        let (v, tail) = fixed(q, n, w)?;
        if tail.tail_bound <= target(w) {
            return Ok(v.with_prec(ctx));
        }
        if n > MAX_TERMS {
            return Err(Error::NotConvergent);
        }
        n += n / 2 + 1;
    }
}

/// `φ(q) = 1 + 2 Σ_{n=1..=N} q^(n²)` with the tail `2|q|^((N+1)²)/(1 - |q|^(2N+3))`.
pub fn phi_series_terms(q: &Ball, n: usize, ctx: PrecCtx) -> Result<(Ball, SeriesTail)> {
    let q = q.with_prec(ctx);
    lacunary(
        &q,
        n,
        ctx,
        |k| if k == 0 { 1 } else { 2 },
        |k| 2 * k as u64 + 1,
        |n, qa| {
            let n = n as u64;
            Mag::geometric_sum_up(&qa.pow_up((n + 1) * (n + 1)).mul_2exp(1), &qa.pow_up(2 * n + 3))
        },
    )
}

/// `ψ(q) = Σ_{n=0..=N} q^(n(n+1)/2)` with the tail `|q|^T/(1 - |q|^(N+2))`, `T = (N+1)(N+2)/2`.
pub fn psi_series_terms(q: &Ball, n: usize, ctx: PrecCtx) -> Result<(Ball, SeriesTail)> {
    let q = q.with_prec(ctx);
    lacunary(
        &q,
        n,
        ctx,
        |_| 1,
        |k| k as u64 + 1,
        |n, qa| {
            let n = n as u64;
            Mag::geometric_sum_up(&qa.pow_up((n + 1) * (n + 2) / 2), &qa.pow_up(n + 2))
        },
    )
}

/// Pentagonal series `1 + Σ_{n=1..=N} (-1)^n (q^(n(3n-1)/2) + q^(n(3n+1)/2))`.
pub fn f_neg_series_terms(q: &Ball, n: usize, ctx: PrecCtx) -> Result<(Ball, SeriesTail)> {
    let q = q.with_prec(ctx);
    let qa = check_disc(&q)?;
    let mut sum = Ball::one(ctx);
    // q^(P_k) with P_k = k(3k-1)/2, and q^k separating the pair
    let mut qp = Ball::one(ctx);
    let mut step = q.clone();
    let q3 = q.pow_int(3)?;
    let mut qk = Ball::one(ctx);
    for k in 1..=n {
        qp = &qp * &step;
        qk = &qk * &q;
        let pair = &qp + &(&qp * &qk);
        sum = if k % 2 == 1 { &sum - &pair } else { &sum + &pair };
        step = &step * &q3;
    }
    let n = n as u64;
    let first = qa.pow_up((n + 1) * (3 * n + 2) / 2).mul_2exp(1);
    let t = Mag::geometric_sum_up(&first, &qa.pow_up(3 * n + 4)).ok_or(Error::NotConvergent)?;
    Ok((sum.add_error(t), SeriesTail { terms_used: 2 * n as usize + 1, tail_bound: t }))
}

fn sqrt_guess(need: f64, lq: f64) -> usize {
    (need / lq).sqrt().ceil() as usize
}

pub fn phi_series(q: impl Nome, ctx: PrecCtx) -> Result<Ball> {
    let q = q.nome_ball(working(ctx));
    auto_terms(&q, ctx, sqrt_guess, phi_series_terms)
}

pub fn psi_series(q: impl Nome, ctx: PrecCtx) -> Result<Ball> {
    let q = q.nome_ball(working(ctx));
    auto_terms(&q, ctx, |need, lq| sqrt_guess(2.0 * need, lq), psi_series_terms)
}

pub fn f_neg_series(q: impl Nome, ctx: PrecCtx) -> Result<Ball> {
    let q = q.nome_ball(working(ctx));
    auto_terms(&q, ctx, |need, lq| sqrt_guess(need / 1.5, lq), f_neg_series_terms)
}

/// `φ(q) = (-q; q²)²_∞ (q²; q²)_∞`.
pub fn phi_product(q: impl Nome, ctx: PrecCtx) -> Result<Ball> {
    let w = working(ctx);
    let q = q.nome_ball(w);
    let q2 = q.sqr();
    let a = pochhammer_inf(&-&q, &q2, w)?;
    let b = pochhammer_inf(&q2, &q2, w)?;
    Ok((&a.sqr() * &b).with_prec(ctx))
}

/// `ψ(q) = (q²; q²)_∞ / (q; q²)_∞`.
pub fn psi_product(q: impl Nome, ctx: PrecCtx) -> Result<Ball> {
    let w = working(ctx);
    let q = q.nome_ball(w);
    let q2 = q.sqr();
    let num = pochhammer_inf(&q2, &q2, w)?;
    let den = pochhammer_inf(&q, &q2, w)?;
    Ok(num.div(&den)?.with_prec(ctx))
}

/// `f(-q) = (q; q)_∞`.
pub fn f_neg_product(q: impl Nome, ctx: PrecCtx) -> Result<Ball> {
    let w = working(ctx);
    let q = q.nome_ball(w);
    Ok(pochhammer_inf(&q, &q, w)?.with_prec(ctx))
}

pub fn phi(q: impl Nome, ctx: PrecCtx) -> Result<Ball> {
    phi_product(q, ctx)
}

pub fn psi(q: impl Nome, ctx: PrecCtx) -> Result<Ball> {
    psi_product(q, ctx)
}

pub fn f_neg(q: impl Nome, ctx: PrecCtx) -> Result<Ball> {
    f_neg_product(q, ctx)
}

pub fn phi_via(q: impl Nome, route: Route, ctx: PrecCtx) -> Result<Ball> {
    match route {
        Route::Product => phi_product(q, ctx),
        Route::Series => phi_series(q, ctx),
    }
}

pub fn psi_via(q: impl Nome, route: Route, ctx: PrecCtx) -> Result<Ball> {
    match route {
        Route::Product => psi_product(q, ctx),
        Route::Series => psi_series(q, ctx),
    }
}

pub fn f_neg_via(q: impl Nome, route: Route, ctx: PrecCtx) -> Result<Ball> {
    match route {
        Route::Product => f_neg_product(q, ctx),
        Route::Series => f_neg_series(q, ctx),
    }
}

/// `χ(q) = (-q; q²)_∞`.
pub fn chi(q: impl Nome, ctx: PrecCtx) -> Result<Ball> {
    let w = working(ctx);
    let q = q.nome_ball(w);
    Ok(pochhammer_inf(&-&q, &q.sqr(), w)?.with_prec(ctx))
}
