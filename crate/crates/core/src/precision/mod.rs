//! Ball-arithmetic kernel: certified enclosures for arithmetic, elementary
//! functions, π, the arithmetic–geometric mean and Γ at rational arguments.

mod agm;
mod ball;
mod constants;
mod elementary;
mod float;
mod gamma;
mod mag;

pub use agm::agm;
pub use ball::{decimal_string, ratio, Ball};
pub use constants::const_pi;
pub use float::Float;
pub use gamma::gamma_rational;
pub use mag::Mag;

use crate::error::{Error, Result};

/// Default working precision in bits.
pub const DEFAULT_BITS: u32 = 512;

/// Working precision, in bits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrecCtx {
    bits: u32,
}

impl PrecCtx {
    pub fn new(bits: u32) -> Result<Self> {
        if bits < 64 {
            return Err(Error::PrecisionTooLow(bits));
        }
        Ok(PrecCtx { bits })
    }

    /// Internal constructor that skips the 64-bit floor (guard-bit arithmetic).
    pub(crate) fn raw(bits: u32) -> Self {
        PrecCtx { bits: bits.max(2) }
    }

    pub fn bits(self) -> u32 {
        self.bits
    }

    /// Same context with `extra` guard bits.
    pub fn with_guard(self, extra: u32) -> Self {
        PrecCtx { bits: self.bits + extra }
    }

    pub fn doubled(self) -> Self {
        PrecCtx { bits: self.bits * 2 }
    }

    /// Approximate decimal digits carried by this precision.
    pub fn decimal_digits(self) -> usize {
        (self.bits as f64 * std::f64::consts::LOG10_2).floor() as usize
    }
}

impl Default for PrecCtx {
    fn default() -> Self {
        PrecCtx { bits: DEFAULT_BITS }
    }
}

/// Binary operations of the kernel.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
    /// Raise `a` to a rational power; `b` is ignored.
    PowRational(num_rational::BigRational),
}

/// Applies `op` to `a` and `b`, rounding to `ctx`.
pub fn ball_arith(a: &Ball, b: &Ball, op: &ArithOp, ctx: PrecCtx) -> Result<Ball> {
    let (a, b) = (a.with_prec(ctx), b.with_prec(ctx));
    match op {
        ArithOp::Add => Ok(&a + &b),
        ArithOp::Sub => Ok(&a - &b),
        ArithOp::Mul => Ok(&a * &b),
        ArithOp::Div => a.div(&b),
        ArithOp::PowRational(r) => a.pow_ratio(r),
    }
}

/// Elementary functions of the kernel.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Elementary {
    Exp,
    Log,
    Sqrt,
    NthRoot(u32),
    Cos,
    Sin,
}

pub fn elementary(x: &Ball, f: Elementary, ctx: PrecCtx) -> Result<Ball> {
    let x = x.with_prec(ctx);
    match f {
        Elementary::Exp => Ok(x.exp()),
        Elementary::Log => x.log(),
        Elementary::Sqrt => x.sqrt(),
        Elementary::NthRoot(n) => x.nth_root(n),
        Elementary::Cos => Ok(x.cos()),
        Elementary::Sin => Ok(x.sin()),
    }
}
