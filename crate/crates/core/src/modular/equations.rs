use std::fmt;

use crate::error::{Error, Result};
use crate::precision::{Ball, PrecCtx};
use crate::qseries::phi;

use super::elliptic::{hyp2f1_half, modulus_complement_from_q, modulus_from_q, multiplier};

/// Expressions in `α`, `β`, their complements and the multiplier `m`,
/// just enough to state the degree-3 equations and rewrite them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModExpr {
    Alpha,
    Beta,
    OneMinusAlpha,
    OneMinusBeta,
    M,
    Int(i64),
    Add(Box<ModExpr>, Box<ModExpr>),
    Sub(Box<ModExpr>, Box<ModExpr>),
    Mul(Box<ModExpr>, Box<ModExpr>),
    Div(Box<ModExpr>, Box<ModExpr>),
    Sqrt(Box<ModExpr>),
}

/// Values for the variables of a [`ModExpr`].
#[derive(Clone, Debug)]
pub struct ModulusPair {
    pub alpha: Ball,
    pub beta: Ball,
    pub alpha_c: Ball,
    pub beta_c: Ball,
    pub n: u32,
    pub m: Ball,
}

impl ModulusPair {
    /// `α = x(q)`, `β = x(qⁿ)`, `m = φ²(q)/φ²(qⁿ)`.
    pub fn from_nome(q: &Ball, n: u32, ctx: PrecCtx) -> Result<Self> {
        let qn = q.pow_int(n as i64)?;
        Ok(ModulusPair {
            alpha: modulus_from_q(q, ctx)?,
            beta: modulus_from_q(&qn, ctx)?,
            alpha_c: modulus_complement_from_q(q, ctx)?,
            beta_c: modulus_complement_from_q(&qn, ctx)?,
            n,
            m: multiplier(q, n, ctx)?,
        })
    }
}

use ModExpr::*;

fn b(e: ModExpr) -> Box<ModExpr> {
    Box::new(e)
}

impl ModExpr {
    pub fn eval(&self, v: &ModulusPair, ctx: PrecCtx) -> Result<Ball> {
        Ok(match self {
            Alpha => v.alpha.clone(),
            Beta => v.beta.clone(),
            OneMinusAlpha => v.alpha_c.clone(),
            OneMinusBeta => v.beta_c.clone(),
            M => v.m.clone(),
            Int(k) => Ball::from_i64(*k, ctx),
            Add(a, c) => &a.eval(v, ctx)? + &c.eval(v, ctx)?,
            Sub(a, c) => &a.eval(v, ctx)? - &c.eval(v, ctx)?,
            Mul(a, c) => &a.eval(v, ctx)? * &c.eval(v, ctx)?,
            Div(a, c) => a.eval(v, ctx)?.div(&c.eval(v, ctx)?)?,
            Sqrt(a) => a.eval(v, ctx)?.sqrt()?,
        })
    }

    /// `α -> 1-β`, `β -> 1-α`, `m -> n/m`.
    pub fn reciprocal(&self, n: i64) -> ModExpr {
        match self {
            Alpha => OneMinusBeta,
            Beta => OneMinusAlpha,
            OneMinusAlpha => Beta,
            OneMinusBeta => Alpha,
            M => Div(b(Int(n)), b(M)),
            Int(k) => Int(*k),
            Add(a, c) => Add(b(a.reciprocal(n)), b(c.reciprocal(n))),
            Sub(a, c) => Sub(b(a.reciprocal(n)), b(c.reciprocal(n))),
            Mul(a, c) => Mul(b(a.reciprocal(n)), b(c.reciprocal(n))),
            Div(a, c) => Div(b(a.reciprocal(n)), b(c.reciprocal(n))),
            Sqrt(a) => Sqrt(b(a.reciprocal(n))),
        }
    }
}

impl fmt::Display for ModExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Alpha => write!(f, "a"),
            Beta => write!(f, "b"),
            OneMinusAlpha => write!(f, "(1 - a)"),
            OneMinusBeta => write!(f, "(1 - b)"),
            M => write!(f, "m"),
            Int(k) => write!(f, "{k}"),
            Add(x, y) => write!(f, "({x} + {y})"),
            Sub(x, y) => write!(f, "({x} - {y})"),
            Mul(x, y) => write!(f, "({x} * {y})"),
            Div(x, y) => write!(f, "({x} / {y})"),
            Sqrt(x) => write!(f, "sqrt{x}"),
        }
    }
}

/// `lhs = rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModEquation {
    pub degree: u32,
    pub lhs: ModExpr,
    pub rhs: ModExpr,
}

impl ModEquation {
    pub fn residual(&self, v: &ModulusPair, ctx: PrecCtx) -> Result<Ball> {
        Ok(&self.lhs.eval(v, ctx)? - &self.rhs.eval(v, ctx)?)
    }

    pub fn reciprocal(&self) -> ModEquation {
        let n = self.degree as i64;
        ModEquation { degree: self.degree, lhs: self.lhs.reciprocal(n), rhs: self.rhs.reciprocal(n) }
    }
}

fn ratio_sqrt(num: ModExpr, den: ModExpr) -> ModExpr {
    Sqrt(b(Div(b(num), b(den))))
}

/// `m² = √(β/α) + √((1-β)/(1-α)) - √(β(1-β)/(α(1-α)))`.
pub fn degree3_first() -> ModEquation {
    let rhs = Sub(
        b(Add(b(ratio_sqrt(Beta, Alpha)), b(ratio_sqrt(OneMinusBeta, OneMinusAlpha)))),
        b(ratio_sqrt(Mul(b(Beta), b(OneMinusBeta)), Mul(b(Alpha), b(OneMinusAlpha)))),
    );
    ModEquation { degree: 3, lhs: Mul(b(M), b(M)), rhs }
}

/// `9/m² = √(α/β) + √((1-α)/(1-β)) - √(α(1-α)/(β(1-β)))`.
pub fn degree3_second() -> ModEquation {
    let rhs = Sub(
        b(Add(b(ratio_sqrt(Alpha, Beta)), b(ratio_sqrt(OneMinusAlpha, OneMinusBeta)))),
        b(ratio_sqrt(Mul(b(Alpha), b(OneMinusAlpha)), Mul(b(Beta), b(OneMinusBeta)))),
    );
    ModEquation { degree: 3, lhs: Div(b(Int(9)), b(Mul(b(M), b(M)))), rhs }
}

fn check_nome(q: &Ball) -> Result<()> {
    if !q.is_positive() || q.upper() >= crate::precision::Float::one() {
        return Err(Error::domain("q must lie strictly inside (0, 1)"));
    }
    Ok(())
}

/// Residuals of the two degree-3 equations with `α = x(q)`, `β = x(q³)`.
pub fn verify_degree3(q: &Ball, ctx: PrecCtx) -> Result<(Ball, Ball)> {
    check_nome(q)?;
    let w = ctx.with_guard(32);
    let v = ModulusPair::from_nome(&q.with_prec(w), 3, w)?;
    let r1 = degree3_first().residual(&v, w)?;
    let r2 = degree3_second().residual(&v, w)?;
    Ok((r1.with_prec(ctx), r2.with_prec(ctx)))
}

/// `n F(1-α)/F(α) - F(1-β)/F(β)` for `α = x(q)`, `β = x(qⁿ)`, with `F = ₂F₁(1/2, 1/2; 1; ·)`.
pub fn degree_relation_residual(q: &Ball, n: u32, ctx: PrecCtx) -> Result<Ball> {
    check_nome(q)?;
    let w = ctx.with_guard(32);
    let v = ModulusPair::from_nome(&q.with_prec(w), n, w)?;
    let quot = |x: &Ball, xc: &Ball| -> Result<Ball> { hyp2f1_half(xc, w)?.div(&hyp2f1_half(x, w)?) };
    let lhs = quot(&v.alpha, &v.alpha_c)?.mul_i64(n as i64);
    let rhs = quot(&v.beta, &v.beta_c)?;
    Ok((&lhs - &rhs).with_prec(ctx))
}

/// `PQ + 5/(PQ) - ((Q/P)² + 3 Q/P + 3 P/Q - (P/Q)²)` with
/// `P = φ(q)/φ(q⁵)`, `Q = φ(q³)/φ(q¹⁵)`.
pub fn verify_degree15(q: &Ball, ctx: PrecCtx) -> Result<Ball> {
    check_nome(q)?;
    let w = ctx.with_guard(32);
    let q = q.with_prec(w);
    let f = |k: i64| -> Result<Ball> { phi(q.pow_int(k)?, w) };
    let p = f(1)?.div(&f(5)?)?;
    let qq = f(3)?.div(&f(15)?)?;
    let pq = &p * &qq;
    let r = qq.div(&p)?;
    let s = p.div(&qq)?;
    let lhs = &pq + &Ball::from_i64(5, w).div(&pq)?;
    let rhs = &(&(&r.sqr() + &r.mul_i64(3)) + &s.mul_i64(3)) - &s.sqr();
    Ok((&lhs - &rhs).with_prec(ctx))
}
