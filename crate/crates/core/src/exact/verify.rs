use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::precision::{Ball, Mag, PrecCtx};

use super::catalog::{Identity, Status};

/// Outcome of checking one identity.
#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub id: String,
    pub lhs: Ball,
    pub rhs: Ball,
    pub agreement_digits: u32,
    pub status: Status,
    /// Precision of the final attempt.
    pub prec_bits: u32,
    /// True when an inconclusive first attempt was rerun at doubled precision.
    pub escalated: bool,
}

/// Digits both radii must beat: 100 at 512 bits, scaled linearly.
pub fn d_target(bits: u32) -> u32 {
    (bits as u64 * 100 / 512) as u32
}

/// `⌊-log₁₀(|lhs.mid - rhs.mid| + lhs.rad + rhs.rad)⌋`, clamped at 0.
pub fn agreement_digits(lhs: &Ball, rhs: &Ball, ctx: PrecCtx) -> u32 {
    let gap = Mag::from_float_up(&lhs.mid().sub_exact(rhs.mid()));
    let total = gap.add_up(&lhs.rad()).add_up(&rhs.rad());
    if total.is_zero() {
        return ctx.decimal_digits() as u32;
    }
    let d = -total.log2() * std::f64::consts::LOG10_2;
    if d <= 0.0 {
        0
    } else {
        d.floor() as u32
    }
}

fn radius_below(b: &Ball, digits: u32) -> bool {
    b.is_exact() || b.rad_log10() < -(digits as f64)
}

fn attempt(ident: &Identity, ctx: PrecCtx) -> Result<(Ball, Ball)> {
    let wrap = |e: Error| Error::Evaluation { id: ident.id.clone(), source: Box::new(e) };
    let lhs = ident.lhs.eval(ctx).map_err(wrap)?;
    let rhs = ident.rhs.eval(ctx).map_err(wrap)?;
    Ok((lhs, rhs))
}

/// Verified iff the balls overlap and both radii are below `10^-D_target`.
/// Overlap with radii still too wide triggers one rerun at doubled precision.
pub fn verify_identity(ident: &Identity, ctx: PrecCtx) -> Result<VerifyReport> {
    let d = d_target(ctx.bits());
    let (mut lhs, mut rhs) = attempt(ident, ctx)?;
    let mut used = ctx;
    let mut escalated = false;
    let tight = |l: &Ball, r: &Ball| radius_below(l, d) && radius_below(r, d);
    if lhs.overlaps(&rhs) && !tight(&lhs, &rhs) {
        used = ctx.doubled();
        (lhs, rhs) = attempt(ident, used)?;
        escalated = true;
    }
    let status = if lhs.overlaps(&rhs) && tight(&lhs, &rhs) { Status::Verified } else { Status::Unverified };
    Ok(VerifyReport {
        id: ident.id.clone(),
        agreement_digits: agreement_digits(&lhs, &rhs, used),
        lhs,
        rhs,
        status,
        prec_bits: used.bits(),
        escalated,
    })
}

/// The identity with its `index`-th rhs leaf shifted by `delta`.
pub fn perturbed(ident: &Identity, index: usize, delta: &BigRational) -> Option<Identity> {
    ident.rhs.perturb_leaf(index, delta).map(|rhs| ident.with_rhs(rhs))
}
