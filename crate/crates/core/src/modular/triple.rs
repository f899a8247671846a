use crate::error::{Error, Result};
use crate::precision::{Ball, PrecCtx};
use crate::qseries::phi;

use super::elliptic::{hyp2f1_half, nome};

/// A point `(x, q, z)` of the correspondence `z = ₂F₁(1/2, 1/2; 1; x) = φ²(q)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModularTriple {
    pub x: Ball,
    pub q: Ball,
    pub z: Ball,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Transform {
    /// `q -> q²`
    Duplication,
    /// `q -> √q`
    Dimidiation,
    /// `q -> -q`
    ChangeOfSign,
}

impl Transform {
    pub const ALL: [Transform; 3] = [Transform::Duplication, Transform::Dimidiation, Transform::ChangeOfSign];
}

impl ModularTriple {
    /// The triple attached to `0 < x < 1`.
    pub fn from_x(x: &Ball, ctx: PrecCtx) -> Result<Self> {
        let q = nome(x, ctx)?;
        let z = hyp2f1_half(x, ctx)?;
        Ok(ModularTriple { x: x.with_prec(ctx), q, z })
    }

    pub fn transform(&self, kind: Transform, ctx: PrecCtx) -> Result<Self> {
        transform(self, kind, ctx)
    }

    /// `z` overlaps `φ²(q)` and `₂F₁(x)`; for positive `q` also `q` overlaps `nome(x)`.
    pub fn is_consistent(&self, ctx: PrecCtx) -> Result<bool> {
        let p = phi(self.q.clone(), ctx)?.sqr();
        if !self.z.overlaps(&p) {
            return Ok(false);
        }
        if !self.z.overlaps(&hyp2f1_half(&self.x, ctx)?) {
            return Ok(false);
        }
        if self.q.is_positive() && self.x.is_positive() {
            return Ok(self.q.overlaps(&nome(&self.x, ctx)?));
        }
        Ok(true)
    }

    /// Componentwise overlap.
    pub fn overlaps(&self, other: &ModularTriple) -> bool {
        self.x.overlaps(&other.x) && self.q.overlaps(&other.q) && self.z.overlaps(&other.z)
    }
}

pub fn transform(t: &ModularTriple, kind: Transform, ctx: PrecCtx) -> Result<ModularTriple> {
    let w = ctx.with_guard(16);
    let one = Ball::one(w);
    let x = t.x.with_prec(w);
    let z = t.z.with_prec(w);
    let out = match kind {
        Transform::Duplication => {
            let c = &one - &x;
            if !c.is_positive() {
                return Err(Error::domain("duplication needs x < 1"));
            }
            let s = c.sqrt()?;
            let sp = &one + &s;
            // (1 - s)/(1 + s) = x/(1 + s)²
            let ratio = x.div(&sp.sqr())?;
            ModularTriple { x: ratio.sqr(), q: t.q.sqr(), z: (&z * &sp).mul_2exp(-1) }
        }
        Transform::Dimidiation => {
            if !x.is_positive() || !t.q.is_positive() {
                return Err(Error::domain("dimidiation needs x > 0 and q > 0"));
            }
            let r = x.sqrt()?;
            let rp = &one + &r;
            ModularTriple { x: r.mul_i64(4).div(&rp.sqr())?, q: t.q.sqrt()?, z: &z * &rp }
        }
        Transform::ChangeOfSign => {
            let d = &x - &one;
            if !d.is_negative() {
                return Err(Error::domain("change of sign needs x < 1"));
            }
            let c = -&d;
            ModularTriple { x: x.div(&d)?, q: -&t.q, z: &z * &c.sqrt()? }
        }
    };
    Ok(ModularTriple { x: out.x.with_prec(ctx), q: out.q.with_prec(ctx), z: out.z.with_prec(ctx) })
}
