//! Closed-form expressions, the identity catalog and its verifier.

mod catalog;
mod expr;
mod number;
mod parse;
mod theta_expr;
mod verify;

pub use catalog::{
    build_catalog, g169_expr, g9_expr, ln7_lhs, ln7_rhs, ln7_rhs_with_factor, Catalog, Identity, Status,
};
pub use expr::{cospi, gamma, int, pi, rat, sqrt_of, Expr};
pub use number::{parse_decimal_rational, rational_text};
pub use parse::{parse_expr, parse_theta_expr};
pub use theta_expr::{NomeArg, ThetaExpr};
pub use verify::{agreement_digits, d_target, perturbed, verify_identity, VerifyReport};

/// Certified enclosure of `e`, escalating precision on an undecided sign.
pub fn eval_expr(e: &Expr, ctx: crate::precision::PrecCtx) -> crate::error::Result<crate::precision::Ball> {
    e.eval(ctx)
}
