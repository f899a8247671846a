use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::exact::rational_text;
use crate::precision::{Ball, PrecCtx};
use crate::qseries::{phi, QPoint};

/// `h_{k,n} = φ(e^(-π√(n/k))) / (k^(1/4) φ(e^(-π√(nk))))`; the primed
/// quotient uses the nomes `-e^(-2π√(n/k))` and `-e^(-2π√(nk))`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct YiQuotient {
    pub k: BigRational,
    pub n: BigRational,
    pub primed: bool,
}

impl YiQuotient {
    pub fn new(k: BigRational, n: BigRational) -> Self {
        YiQuotient { k, n, primed: false }
    }

    pub fn primed(k: BigRational, n: BigRational) -> Self {
        YiQuotient { k, n, primed: true }
    }

    /// Numerator and denominator nomes.
    pub fn points(&self) -> Result<(QPoint, QPoint)> {
        if !self.k.is_positive() || !self.n.is_positive() {
            return Err(Error::domain("h_{k,n} needs k, n > 0"));
        }
        let a = &self.n / &self.k;
        let b = &self.n * &self.k;
        if self.primed {
            let four = BigRational::from(BigInt::from(4));
            Ok((QPoint::new(-1, a * &four)?, QPoint::new(-1, b * four)?))
        } else {
            Ok((QPoint::positive(a)?, QPoint::positive(b)?))
        }
    }

    pub fn eval(&self, ctx: PrecCtx) -> Result<Ball> {
        yi_h(self, ctx)
    }
}

impl fmt::Display for YiQuotient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = if self.primed { "yihp" } else { "yih" };
        write!(f, "{name}({}, {})", rational_text(&self.k), rational_text(&self.n))
    }
}

pub fn yi_h(h: &YiQuotient, ctx: PrecCtx) -> Result<Ball> {
    let (a, b) = h.points()?;
    let w = ctx.with_guard(32);
    let k4 = Ball::from_ratio(&h.k, w).pow_ints(1, 4)?;
    let num = phi(&a, w)?;
    let den = &k4 * &phi(&b, w)?;
    Ok(num.div(&den)?.with_prec(ctx))
}

/// Residual of `h_{a,b} h_{kc,kd} = h_{ka,kb} h_{c,d}`, which needs `ab = cd`.
pub fn yi_product_theorem(
    k: &BigRational,
    a: &BigRational,
    b: &BigRational,
    c: &BigRational,
    d: &BigRational,
    ctx: PrecCtx,
) -> Result<Ball> {
    if a * b != c * d {
        return Err(Error::PreconditionViolated(format!(
            "ab = {} but cd = {}",
            rational_text(&(a * b)),
            rational_text(&(c * d))
        )));
    }
    let w = ctx.with_guard(16);
    let h = |x: &BigRational, y: &BigRational| yi_h(&YiQuotient::new(x.clone(), y.clone()), w);
    let lhs = &h(a, b)? * &h(&(k * c), &(k * d))?;
    let rhs = &h(&(k * a), &(k * b))? * &h(c, d)?;
    Ok((&lhs - &rhs).with_prec(ctx))
}
