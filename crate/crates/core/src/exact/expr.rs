use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::precision::{const_pi, gamma_rational, Ball, PrecCtx};

use super::number::rational_text;

/// Exact closed-form real expression.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Expr {
    Int(BigInt),
    Rat(BigRational),
    Pi,
    /// `Γ(p)` for rational `p`.
    GammaRat(BigRational),
    /// `cos(pπ)` for rational `p`.
    CosPiRat(BigRational),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    PowRat(Box<Expr>, BigRational),
    Neg(Box<Expr>),
}

pub fn int(v: i64) -> Expr {
    Expr::Int(BigInt::from(v))
}

pub fn rat(n: i64, d: i64) -> Expr {
    Expr::Rat(BigRational::new(n.into(), d.into()))
}

pub fn pi() -> Expr {
    Expr::Pi
}

pub fn gamma(n: i64, d: i64) -> Expr {
    Expr::GammaRat(BigRational::new(n.into(), d.into()))
}

pub fn cospi(n: i64, d: i64) -> Expr {
    Expr::CosPiRat(BigRational::new(n.into(), d.into()))
}

/// `√n`.
pub fn sqrt_of(n: i64) -> Expr {
    int(n).sqrt()
}

impl Expr {
    pub fn pow(self, n: i64, d: i64) -> Expr {
        Expr::PowRat(Box::new(self), BigRational::new(n.into(), d.into()))
    }

    pub fn sqrt(self) -> Expr {
        self.pow(1, 2)
    }

    pub fn cbrt(self) -> Expr {
        self.pow(1, 3)
    }

    /// Evaluates with automatic precision doubling (up to three times) when
    /// a divisor or a fractional-power base is not yet separated from zero.
    pub fn eval(&self, ctx: PrecCtx) -> Result<Ball> {
        escalate(ctx, |w| self.eval_at(w))
    }

    /// Single evaluation at a fixed working precision, no escalation.
    pub fn eval_at(&self, w: PrecCtx) -> Result<Ball> {
        Ok(match self {
            Expr::Int(v) => Ball::from_bigint(v, w),
            Expr::Rat(r) => Ball::from_ratio(r, w),
            Expr::Pi => const_pi(w),
            Expr::GammaRat(p) => gamma_rational(p, w).map_err(|e| match e {
                Error::UnsupportedArgument(_) => Error::UnsupportedGammaArgument(rational_text(p)),
                e => e,
            })?,
            Expr::CosPiRat(p) => cos_pi_rational(p, w),
            Expr::Add(a, b) => &a.eval_at(w)? + &b.eval_at(w)?,
            Expr::Sub(a, b) => &a.eval_at(w)? - &b.eval_at(w)?,
            Expr::Mul(a, b) => &a.eval_at(w)? * &b.eval_at(w)?,
            Expr::Div(a, b) => a.eval_at(w)?.div(&b.eval_at(w)?)?,
            Expr::PowRat(a, r) => a.eval_at(w)?.pow_ratio(r)?,
            Expr::Neg(a) => -a.eval_at(w)?,
        })
    }

    /// Rational leaves in pre-order: literals and the arguments of `gamma` and `cospi`.
    pub fn leaves(&self) -> Vec<BigRational> {
        let mut out = Vec::new();
        self.visit_leaves(&mut |r| out.push(r));
        out
    }

    fn visit_leaves(&self, f: &mut dyn FnMut(BigRational)) {
        match self {
            Expr::Int(v) => f(BigRational::from(v.clone())),
            Expr::Rat(r) | Expr::GammaRat(r) | Expr::CosPiRat(r) => f(r.clone()),
            Expr::Pi => {}
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.visit_leaves(f);
                b.visit_leaves(f);
            }
            Expr::PowRat(a, _) | Expr::Neg(a) => a.visit_leaves(f),
        }
    }

    /// Copy with the `index`-th leaf (pre-order) shifted by `delta`.
    pub fn perturb_leaf(&self, index: usize, delta: &BigRational) -> Option<Expr> {
        let mut seen = 0;
        let out = self.perturb_inner(index, delta, &mut seen);
        (seen > index).then_some(out)
    }

    fn perturb_inner(&self, index: usize, delta: &BigRational, seen: &mut usize) -> Expr {
        let bx = |e: Expr| Box::new(e);
        match self {
            Expr::Int(_) | Expr::Rat(_) | Expr::GammaRat(_) | Expr::CosPiRat(_) => {
                let here = *seen;
                *seen += 1;
                if here != index {
                    return self.clone();
                }
                match self {
                    Expr::Int(v) => Expr::Rat(BigRational::from(v.clone()) + delta),
                    Expr::Rat(r) => Expr::Rat(r + delta),
                    Expr::GammaRat(r) => Expr::GammaRat(r + delta),
                    Expr::CosPiRat(r) => Expr::CosPiRat(r + delta),
                    _ => unreachable!(),
                }
            }
            Expr::Pi => self.clone(),
            Expr::Add(a, b) => {
                Expr::Add(bx(a.perturb_inner(index, delta, seen)), bx(b.perturb_inner(index, delta, seen)))
            }
            Expr::Sub(a, b) => {
                Expr::Sub(bx(a.perturb_inner(index, delta, seen)), bx(b.perturb_inner(index, delta, seen)))
            }
            Expr::Mul(a, b) => {
                Expr::Mul(bx(a.perturb_inner(index, delta, seen)), bx(b.perturb_inner(index, delta, seen)))
            }
            Expr::Div(a, b) => {
                Expr::Div(bx(a.perturb_inner(index, delta, seen)), bx(b.perturb_inner(index, delta, seen)))
            }
            Expr::PowRat(a, r) => Expr::PowRat(bx(a.perturb_inner(index, delta, seen)), r.clone()),
            Expr::Neg(a) => Expr::Neg(bx(a.perturb_inner(index, delta, seen))),
        }
    }
}

/// Runs `f` at `ctx` plus guard bits, doubling on an undecided sign. The
/// kernel's straddle errors become the expression-level ones.
pub(crate) fn escalate(ctx: PrecCtx, f: impl Fn(PrecCtx) -> Result<Ball>) -> Result<Ball> {
    let mut w = ctx.with_guard(64);
    for attempt in 0..4 {
        match f(w) {
            Ok(b) => return Ok(b.with_prec(ctx)),
            Err(Error::DivisorStraddlesZero | Error::NegativeBaseEvenRoot) if attempt < 3 => w = w.doubled(),
            Err(Error::DivisorStraddlesZero) => return Err(Error::DivisionByZeroEnclosure),
            Err(Error::NegativeBaseEvenRoot) => return Err(Error::NegativeEvenRootEnclosure),
            Err(e) => return Err(e),
        }
    }
    unreachable!()
}

/// `cos(pπ)`, exact for the rational values where the cosine is `0`, `±1/2` or `±1`.
fn cos_pi_rational(p: &BigRational, w: PrecCtx) -> Ball {
    // reduce p modulo 2 exactly
    let two = BigRational::from(BigInt::from(2));
    let k = (p / &two).floor();
    let r = p - &two * k;
    let den = r.denom().clone();
    let num = r.numer().clone();
    let exact = |v: i64, d: i64| Ball::from_ints(v, d, w);
    if den == BigInt::from(1) {
        return if num.is_zero() { exact(1, 1) } else { exact(-1, 1) };
    }
    if den == BigInt::from(2) {
        return Ball::zero(w);
    }
    if den == BigInt::from(3) {
        // r in {1/3, 2/3, 4/3, 5/3}
        let n: i64 = (&num).try_into().unwrap_or(0);
        return if n == 1 || n == 5 { exact(1, 2) } else { exact(-1, 2) };
    }
    let g = w.with_guard(8);
    let x = &const_pi(g) * &Ball::from_ratio(&r, g);
    x.cos().with_prec(w)
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Int(v) => {
                if v.is_negative() {
                    write!(f, "({v})")
                } else {
                    write!(f, "{v}")
                }
            }
            Expr::Rat(r) => {
                if r.is_integer() && !r.is_negative() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "({})", rational_text(r))
                }
            }
            Expr::Pi => write!(f, "pi"),
            Expr::GammaRat(p) => write!(f, "gamma({})", rational_text(p)),
            Expr::CosPiRat(p) => write!(f, "cospi({})", rational_text(p)),
            Expr::Add(a, b) => write!(f, "({a} + {b})"),
            Expr::Sub(a, b) => write!(f, "({a} - {b})"),
            Expr::Mul(a, b) => write!(f, "({a} * {b})"),
            Expr::Div(a, b) => write!(f, "({a} / {b})"),
            Expr::PowRat(a, r) => {
                if matches!(**a, Expr::PowRat(..)) {
                    write!(f, "({a})^{}", exponent_text(r))
                } else {
                    write!(f, "{a}^{}", exponent_text(r))
                }
            }
            Expr::Neg(a) => write!(f, "(-{a})"),
        }
    }
}

pub(crate) fn exponent_text(r: &BigRational) -> String {
    if r.is_integer() && !r.is_negative() {
        r.numer().to_string()
    } else {
        format!("({})", rational_text(r))
    }
}

macro_rules! expr_binop {
    ($tr:ident, $m:ident, $variant:ident) => {
        impl $tr<Expr> for Expr {
            type Output = Expr;
            fn $m(self, rhs: Expr) -> Expr {
                Expr::$variant(Box::new(self), Box::new(rhs))
            }
        }
        impl $tr<&Expr> for Expr {
            type Output = Expr;
            fn $m(self, rhs: &Expr) -> Expr {
                Expr::$variant(Box::new(self), Box::new(rhs.clone()))
            }
        }
        impl $tr<Expr> for &Expr {
            type Output = Expr;
            fn $m(self, rhs: Expr) -> Expr {
                Expr::$variant(Box::new(self.clone()), Box::new(rhs))
            }
        }
        impl $tr<&Expr> for &Expr {
            type Output = Expr;
            fn $m(self, rhs: &Expr) -> Expr {
                Expr::$variant(Box::new(self.clone()), Box::new(rhs.clone()))
            }
        }
    };
}

expr_binop!(Add, add, Add);
expr_binop!(Sub, sub, Sub);
expr_binop!(Mul, mul, Mul);
expr_binop!(Div, div, Div);

impl Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::Neg(Box::new(self))
    }
}

impl Neg for &Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::Neg(Box::new(self.clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::precision::ratio;

    fn ctx(b: u32) -> PrecCtx {
        PrecCtx::new(b).unwrap()
    }

    #[test]
    fn rational_leaf_is_exact() {
        let v = rat(3, 4).eval(ctx(128)).unwrap();
        assert!(v.is_exact());
        assert_eq!(v.mid_f64(), 0.75);
    }

    #[test]
    fn g9_sixth_powers() {
        // G⁶ - G⁻⁶ = 2√3 for G = ((1 + √3)/√2)^(1/3)
        let c = ctx(256);
        let g = ((int(1) + sqrt_of(3)) / sqrt_of(2)).cbrt();
        let e = g.clone().pow(6, 1) - g.pow(-6, 1);
        let v = e.eval(c).unwrap();
        assert!(v.overlaps(&(sqrt_of(3) * int(2)).eval(c).unwrap()));
    }

    #[test]
    fn exact_cosines() {
        let c = ctx(128);
        assert!(cospi(1, 3).eval(c).unwrap().contains_float(&crate::precision::Float::from_parts(1.into(), -1)));
        assert!(cospi(1, 2).eval(c).unwrap().contains_zero());
        assert!(cospi(-7, 3).eval(c).unwrap().overlaps(&Ball::from_ints(1, 2, c)));
        assert!(cospi(5, 1).eval(c).unwrap().contains_int(-1));
        let v = cospi(1, 7).eval(c).unwrap();
        assert!((v.mid_f64() - (std::f64::consts::PI / 7.0).cos()).abs() < 1e-15);
    }

    #[test]
    fn straddles_are_reported() {
        let c = ctx(64);
        let z = sqrt_of(2) * sqrt_of(2) - int(2);
        assert_eq!((int(1) / z.clone()).eval(c), Err(Error::DivisionByZeroEnclosure));
        assert_eq!(z.pow(1, 2).eval(c), Err(Error::NegativeEvenRootEnclosure));
        assert!(matches!(gamma(5, 2).eval(c), Err(Error::UnsupportedGammaArgument(_))));
    }

    #[test]
    fn leaves_and_perturbation() {
        let e = (int(1) + rat(1, 8) * gamma(1, 8)) / pi().pow(1, 4);
        assert_eq!(e.leaves(), vec![ratio(1, 1), ratio(1, 8), ratio(1, 8)]);
        let d = ratio(1, 1_000_000);
        let p = e.perturb_leaf(2, &d).unwrap();
        assert_eq!(p.leaves()[2], ratio(1, 8) + &d);
        assert_eq!(p.leaves()[1], ratio(1, 8));
        assert!(e.perturb_leaf(3, &d).is_none());
    }

    #[test]
    fn rendering() {
        let e = int(7).pow(-3, 4) * (int(1) + cospi(1, 7).pow(2, 7));
        assert_eq!(e.to_string(), "(7^(-3/4) * (1 + cospi(1/7)^(2/7)))");
        assert_eq!(rat(-1, 2).to_string(), "(-1/2)");
        assert_eq!(sqrt_of(3).sqrt().to_string(), "(3^(1/2))^(1/2)");
    }
}
