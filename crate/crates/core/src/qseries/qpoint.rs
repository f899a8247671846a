use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::precision::{const_pi, Ball, PrecCtx};

/// The nome `q = sign * exp(-π √r)` with `r > 0` rational.
///
/// Powers and roots act on `r` exactly: `q^k` has `r k²`, `q^(1/k)` has `r / k²`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QPoint {
    negative: bool,
    r: BigRational,
}

impl QPoint {
    pub fn new(sign: i32, r: BigRational) -> Result<Self> {
        if sign != 1 && sign != -1 {
            return Err(Error::domain(format!("qpoint sign must be +1 or -1, got {sign}")));
        }
        if !r.is_positive() {
            return Err(Error::domain(format!("qpoint r must be positive, got {r}")));
        }
        Ok(QPoint { negative: sign < 0, r })
    }

    /// `e^(-π √r)`.
    pub fn positive(r: BigRational) -> Result<Self> {
        QPoint::new(1, r)
    }

    /// `e^(-π √(num/den))`; panics on a non-positive ratio.
    pub fn pos(num: i64, den: i64) -> Self {
        QPoint::positive(BigRational::new(num.into(), den.into())).expect("positive ratio")
    }

    pub fn sign(&self) -> i32 {
        if self.negative {
            -1
        } else {
            1
        }
    }

    pub fn is_negative(&self) -> bool {
        self.negative
    }

    pub fn r(&self) -> &BigRational {
        &self.r
    }

    /// `-q`.
    pub fn negated(&self) -> QPoint {
        QPoint { negative: !self.negative, r: self.r.clone() }
    }

    /// `q^k` for `k >= 1`.
    pub fn pow(&self, k: u32) -> QPoint {
        assert!(k >= 1, "QPoint::pow needs k >= 1");
        let kk = BigInt::from(k) * BigInt::from(k);
        QPoint { negative: self.negative && k % 2 == 1, r: &self.r * BigRational::from(kk) }
    }

    /// `q^(num/den)` for a positive nome.
    pub fn pow_ratio(&self, e: &BigRational) -> Result<QPoint> {
        if !e.is_positive() {
            return Err(Error::domain("qpoint exponent must be positive"));
        }
        if self.negative && !e.is_integer() {
            return Err(Error::domain("fractional power of a negative nome"));
        }
        let negative = self.negative && e.numer().is_odd();
        Ok(QPoint { negative, r: &self.r * e * e })
    }

    /// `q^(1/k)`; only for a positive nome.
    pub fn root(&self, k: u32) -> Result<QPoint> {
        self.pow_ratio(&BigRational::new(BigInt::one(), BigInt::from(k)))
    }

    /// The nome with `r` replaced by `1/r`. For positive nomes
    /// `φ(e^(-π√r)) = r^(-1/4) φ(e^(-π/√r))`.
    pub fn inverted(&self) -> QPoint {
        QPoint { negative: self.negative, r: self.r.recip() }
    }

    /// `π √r`, so that `|q| = exp(-y)`.
    pub fn y(&self, ctx: PrecCtx) -> Ball {
        let w = ctx.with_guard(16);
        let s = Ball::from_ratio(&self.r, w).sqrt().expect("r > 0");
        (&const_pi(w) * &s).with_prec(ctx)
    }

    pub fn to_ball(&self, ctx: PrecCtx) -> Ball {
        // relative error of exp(-y) equals the absolute error of y
        let w = ctx.with_guard(24);
        let q = (-self.y(w)).exp().with_prec(ctx);
        if self.negative {
            -q
        } else {
            q
        }
    }
}

impl fmt::Display for QPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = if self.negative { '-' } else { '+' };
        write!(f, "qpoint({s}1, {})", self.r)
    }
}

/// Anything that can be turned into an enclosure of a nome.
pub trait Nome {
    fn nome_ball(&self, ctx: PrecCtx) -> Ball;
}

impl Nome for Ball {
    fn nome_ball(&self, ctx: PrecCtx) -> Ball {
        if self.prec() < ctx.bits() {
            self.clone()
        } else {
            self.with_prec(ctx)
        }
    }
}

impl Nome for QPoint {
    fn nome_ball(&self, ctx: PrecCtx) -> Ball {
        self.to_ball(ctx)
    }
}

impl<T: Nome + ?Sized> Nome for &T {
    fn nome_ball(&self, ctx: PrecCtx) -> Ball {
        (**self).nome_ball(ctx)
    }
}

/// A nome that is either an exact [`QPoint`] or an arbitrary real enclosure.
/// Powers of a `QPoint` stay exact; powers of a real nome are ball powers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QValue {
    Point(QPoint),
    Real(Ball),
}

impl QValue {
    pub fn pow(&self, k: u32) -> QValue {
        match self {
            QValue::Point(p) => QValue::Point(p.pow(k)),
            QValue::Real(b) => QValue::Real(b.pow_int(k as i64).expect("nonnegative power")),
        }
    }

    /// `q^(1/k)`, defined for positive nomes only.
    pub fn root(&self, k: u32) -> Result<QValue> {
        match self {
            QValue::Point(p) => Ok(QValue::Point(p.root(k)?)),
            QValue::Real(b) => {
                if !b.is_positive() {
                    return Err(Error::domain("fractional power of a nome that is not certainly positive"));
                }
                Ok(QValue::Real(b.nth_root(k)?))
            }
        }
    }

    pub fn is_positive(&self) -> bool {
        match self {
            QValue::Point(p) => !p.is_negative(),
            QValue::Real(b) => b.is_positive(),
        }
    }

    pub fn to_ball(&self, ctx: PrecCtx) -> Ball {
        self.nome_ball(ctx)
    }
}

impl From<QPoint> for QValue {
    fn from(p: QPoint) -> Self {
        QValue::Point(p)
    }
}

impl From<Ball> for QValue {
    fn from(b: Ball) -> Self {
        QValue::Real(b)
    }
}

impl Nome for QValue {
    fn nome_ball(&self, ctx: PrecCtx) -> Ball {
        match self {
            QValue::Point(p) => p.nome_ball(ctx),
            QValue::Real(b) => b.nome_ball(ctx),
        }
    }
}

impl fmt::Display for QValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QValue::Point(p) => p.fmt(f),
            QValue::Real(b) => write!(f, "{}", b.mid_decimal(20)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::precision::ratio;

    #[test]
    fn exponent_bookkeeping() {
        let q = QPoint::pos(1, 7);
        assert_eq!(q.pow(7).r(), &ratio(7, 1));
        assert_eq!(q.root(7).unwrap().r(), &ratio(1, 343));
        assert_eq!(q.pow(2).r(), &ratio(4, 7));
        let n = q.negated();
        assert!(n.pow(3).is_negative());
        assert!(!n.pow(2).is_negative());
        assert!(n.root(7).is_err());
    }

    #[test]
    fn rejects_nonpositive_r() {
        assert!(QPoint::new(1, ratio(-3, 1)).is_err());
        assert!(QPoint::new(1, ratio(0, 1)).is_err());
        assert!(QPoint::new(2, ratio(1, 1)).is_err());
    }

    #[test]
    fn ball_matches_power_of_ball() {
        let c = PrecCtx::new(200).unwrap();
        let q = QPoint::pos(3, 1);
        let a = q.pow(5).to_ball(c);
        let b = q.to_ball(c).pow_int(5).unwrap();
        assert!(a.overlaps(&b));
        let r = q.root(3).unwrap().to_ball(c).pow_int(3).unwrap();
        assert!(r.overlaps(&q.to_ball(c)));
        assert!(a.rad_log10() < -50.0 + a.mid_f64().log10());
    }

    #[test]
    fn e_minus_pi() {
        let c = PrecCtx::new(128).unwrap();
        let q = QPoint::pos(1, 1).to_ball(c);
        assert!(q.mid_decimal(12).starts_with("0.0432139182"));
        let m = QPoint::pos(1, 1).negated().to_ball(c);
        assert!(m.is_negative());
    }
}
