use std::fmt;

use num_rational::BigRational;

use crate::error::Result;
use crate::modular::{class_invariant, hyp2f1_half, YiQuotient};
use crate::precision::{agm, Ball, PrecCtx};
use crate::qseries::{chi, f_neg_via, phi_via, psi_via, theta_f, QPoint, Route};

use super::expr::{escalate, exponent_text, Expr};
use super::number::rational_text;

/// Where a theta function is evaluated: an exact nome or a computed value.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum NomeArg {
    Point(QPoint),
    Value(Box<ThetaExpr>),
}

/// Left-hand sides: theta functions at nomes combined with arithmetic.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ThetaExpr {
    Const(Expr),
    Phi(NomeArg),
    Psi(NomeArg),
    FNeg(NomeArg),
    Chi(NomeArg),
    F(Box<ThetaExpr>, Box<ThetaExpr>),
    Agm(Box<ThetaExpr>, Box<ThetaExpr>),
    Hyp(Box<ThetaExpr>),
    ClassInv(BigRational),
    YiH(YiQuotient),
    Add(Box<ThetaExpr>, Box<ThetaExpr>),
    Sub(Box<ThetaExpr>, Box<ThetaExpr>),
    Mul(Box<ThetaExpr>, Box<ThetaExpr>),
    Div(Box<ThetaExpr>, Box<ThetaExpr>),
    Pow(Box<ThetaExpr>, BigRational),
    Neg(Box<ThetaExpr>),
}

impl std::ops::Div for ThetaExpr {
    type Output = ThetaExpr;

    fn div(self, other: ThetaExpr) -> ThetaExpr {
        ThetaExpr::Div(Box::new(self), Box::new(other))
    }
}

impl ThetaExpr {
    pub fn phi_at(p: QPoint) -> ThetaExpr {
        ThetaExpr::Phi(NomeArg::Point(p))
    }

    pub fn pow(self, e: BigRational) -> ThetaExpr {
        ThetaExpr::Pow(Box::new(self), e)
    }

    pub fn eval(&self, ctx: PrecCtx) -> Result<Ball> {
        self.eval_via(Route::Product, ctx)
    }

    /// Evaluation with theta functions computed along `route`.
    pub fn eval_via(&self, route: Route, ctx: PrecCtx) -> Result<Ball> {
        escalate(ctx, |w| self.eval_at(route, w))
    }

    /// Any constant subtree as an [`Expr`]; `None` once a theta function appears.
    pub fn as_expr(&self) -> Option<Expr> {
        let bx = |e: Expr| Box::new(e);
        Some(match self {
            ThetaExpr::Const(e) => e.clone(),
            ThetaExpr::Add(a, b) => Expr::Add(bx(a.as_expr()?), bx(b.as_expr()?)),
            ThetaExpr::Sub(a, b) => Expr::Sub(bx(a.as_expr()?), bx(b.as_expr()?)),
            ThetaExpr::Mul(a, b) => Expr::Mul(bx(a.as_expr()?), bx(b.as_expr()?)),
            ThetaExpr::Div(a, b) => Expr::Div(bx(a.as_expr()?), bx(b.as_expr()?)),
            ThetaExpr::Pow(a, r) => Expr::PowRat(bx(a.as_expr()?), r.clone()),
            ThetaExpr::Neg(a) => Expr::Neg(bx(a.as_expr()?)),
            _ => return None,
        })
    }

    fn eval_at(&self, route: Route, w: PrecCtx) -> Result<Ball> {
        let ev = |e: &ThetaExpr| e.eval_at(route, w);
        Ok(match self {
            ThetaExpr::Const(e) => e.eval_at(w)?,
            ThetaExpr::Phi(a) => match a {
                NomeArg::Point(p) => phi_via(p, route, w)?,
                NomeArg::Value(v) => phi_via(ev(v)?, route, w)?,
            },
            ThetaExpr::Psi(a) => match a {
                NomeArg::Point(p) => psi_via(p, route, w)?,
                NomeArg::Value(v) => psi_via(ev(v)?, route, w)?,
            },
            ThetaExpr::FNeg(a) => match a {
                NomeArg::Point(p) => f_neg_via(p, route, w)?,
                NomeArg::Value(v) => f_neg_via(ev(v)?, route, w)?,
            },
            ThetaExpr::Chi(a) => match a {
                NomeArg::Point(p) => chi(p, w)?,
                NomeArg::Value(v) => chi(ev(v)?, w)?,
            },
            ThetaExpr::F(a, b) => theta_f(&ev(a)?, &ev(b)?, w)?,
            ThetaExpr::Agm(a, b) => agm(&ev(a)?, &ev(b)?, w)?,
            ThetaExpr::Hyp(x) => hyp2f1_half(&ev(x)?, w)?,
            ThetaExpr::ClassInv(n) => class_invariant(n, w)?,
            ThetaExpr::YiH(h) => h.eval(w)?,
            ThetaExpr::Add(a, b) => &ev(a)? + &ev(b)?,
            ThetaExpr::Sub(a, b) => &ev(a)? - &ev(b)?,
            ThetaExpr::Mul(a, b) => &ev(a)? * &ev(b)?,
            ThetaExpr::Div(a, b) => ev(a)?.div(&ev(b)?)?,
            ThetaExpr::Pow(a, r) => ev(a)?.pow_ratio(r)?,
            ThetaExpr::Neg(a) => -ev(a)?,
        })
    }
}

impl From<Expr> for ThetaExpr {
    fn from(e: Expr) -> Self {
        ThetaExpr::Const(e)
    }
}

impl fmt::Display for NomeArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NomeArg::Point(p) => write!(f, "{p}"),
            NomeArg::Value(v) => write!(f, "{v}"),
        }
    }
}

impl fmt::Display for ThetaExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ThetaExpr::Const(e) => write!(f, "{e}"),
            ThetaExpr::Phi(a) => write!(f, "phi({a})"),
            ThetaExpr::Psi(a) => write!(f, "psi({a})"),
            ThetaExpr::FNeg(a) => write!(f, "fneg({a})"),
            ThetaExpr::Chi(a) => write!(f, "chi({a})"),
            ThetaExpr::F(a, b) => write!(f, "f({a}, {b})"),
            ThetaExpr::Agm(a, b) => write!(f, "agm({a}, {b})"),
            ThetaExpr::Hyp(x) => write!(f, "hyp({x})"),
            ThetaExpr::ClassInv(n) => write!(f, "classinv({})", rational_text(n)),
            ThetaExpr::YiH(h) => write!(f, "{h}"),
            ThetaExpr::Add(a, b) => write!(f, "({a} + {b})"),
            ThetaExpr::Sub(a, b) => write!(f, "({a} - {b})"),
            ThetaExpr::Mul(a, b) => write!(f, "({a} * {b})"),
            ThetaExpr::Div(a, b) => write!(f, "({a} / {b})"),
            ThetaExpr::Pow(a, r) => {
                if matches!(**a, ThetaExpr::Pow(..)) {
                    write!(f, "({a})^{}", exponent_text(r))
                } else {
                    write!(f, "{a}^{}", exponent_text(r))
                }
            }
            ThetaExpr::Neg(a) => write!(f, "(-{a})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::expr::{gamma, pi};
    use crate::precision::ratio;

    #[test]
    fn routes_agree_on_a_quotient() {
        let c = PrecCtx::new(256).unwrap();
        let e = ThetaExpr::phi_at(QPoint::pos(9, 1)) / ThetaExpr::phi_at(QPoint::pos(1, 1));
        let a = e.eval_via(Route::Product, c).unwrap();
        let b = e.eval_via(Route::Series, c).unwrap();
        assert!(a.overlaps(&b));
        assert_eq!(e.to_string(), "(phi(qpoint(+1, 9)) / phi(qpoint(+1, 1)))");
    }

    #[test]
    fn constant_subtrees_convert() {
        let e = (ThetaExpr::Const(pi()) / ThetaExpr::Const(gamma(3, 4))).pow(ratio(1, 2));
        assert!(e.as_expr().is_some());
        assert!(ThetaExpr::phi_at(QPoint::pos(1, 1)).as_expr().is_none());
    }
}
