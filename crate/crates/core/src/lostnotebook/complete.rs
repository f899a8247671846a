use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::exact::{cospi, int, verify_identity, Expr, Identity, ThetaExpr, VerifyReport};
use crate::precision::{Ball, PrecCtx};
use crate::qseries::{QPoint, QValue};

use super::cubic::{assign_roots, cubic_roots, RootAssignment};
use super::septic::{Branch, SepticState};

/// Everything the pipeline decided at one nome.
#[derive(Clone, Debug)]
pub struct Pipeline {
    pub state: SepticState,
    pub roots: [Ball; 3],
    pub assignment: RootAssignment,
    /// Precision the pipeline finally ran at.
    pub prec_bits: u32,
}

/// The completed identity together with how it was obtained.
#[derive(Clone, Debug)]
pub struct Completion {
    pub identity: Identity,
    pub report: VerifyReport,
    pub branch: Branch,
    pub permutation_index: usize,
    pub pipeline: Pipeline,
}

fn retryable(e: &Error) -> bool {
    matches!(e, Error::BothRootsMatch | Error::MultiplePermutationsMatch | Error::RootsNotSeparable)
}

/// State, certified roots and root assignment at `q`, doubling the precision
/// up to three times while a branch or permutation is still ambiguous.
pub fn run_pipeline(q: &QValue, ctx: PrecCtx) -> Result<Pipeline> {
    let mut w = ctx;
    let mut last = None;
    for _ in 0..4 {
        let attempt = (|| -> Result<Pipeline> {
            let state = SepticState::compute(q, w)?;
            let roots = cubic_roots(&state, w)?;
            let assignment = assign_roots(&state, &roots, w)?;
            Ok(Pipeline { state, roots, assignment, prec_bits: w.bits() })
        })();
        match attempt {
            Err(e) if retryable(&e) => {
                last = Some(e);
                w = w.doubled();
            }
            other => return other,
        }
    }
    Err(last.expect("at least one attempt"))
}

/// The integer a ball certainly contains, if its radius leaves only one candidate.
fn certain_integer(b: &Ball) -> Option<BigInt> {
    if b.rad_log10() > -2.0 {
        return None;
    }
    let n = b.mid().round_to_integer();
    b.contains_int(n.to_i64()?).then_some(n)
}

/// `1/(2cos(kπ/7))²`.
fn septic_root_expr(k: i64) -> Expr {
    int(1) / (int(2) * cospi(k, 7)).pow(2, 1)
}

/// The `k` in `1..=3` whose closed form overlaps `root`.
fn identify_root(root: &Ball, ctx: PrecCtx) -> Result<i64> {
    let hits: Vec<i64> =
        (1..=3).filter(|&k| septic_root_expr(k).eval(ctx).map(|v| v.overlaps(root)).unwrap_or(false)).collect();
    match hits.as_slice() {
        [k] => Ok(*k),
        [] => Err(Error::NoRootMatches),
        _ => Err(Error::RootsNotSeparable),
    }
}

/// `(b, e)` with `b^e = n` and `e` maximal.
fn perfect_power(n: &BigInt) -> (BigInt, u32) {
    let bits = n.bits() as u32;
    for e in (2..=bits.max(2)).rev() {
        let b = n.nth_root(e);
        if b > BigInt::one() && num_traits::pow(b.clone(), e as usize) == *n {
            return (b, e);
        }
    }
    (n.clone(), 1)
}

/// The septic point `q = e^(-π/√7)`.
pub fn septic_point() -> QPoint {
    QPoint::pos(1, 7)
}

/// Runs the pipeline at `e^(-π/√7)` and turns its numeric answers into the
/// closed form for `φ(e^(-7π√7))/φ(e^(-π√7))`, then verifies it.
pub fn complete_evaluation(ctx: PrecCtx) -> Result<Completion> {
    complete_with_factor(ctx, false)
}

/// As [`complete_evaluation`] but with the leading factor's exponent sign
/// flipped, reproducing the printed misprint.
pub fn complete_misprinted(ctx: PrecCtx) -> Result<Completion> {
    complete_with_factor(ctx, true)
}

fn complete_with_factor(ctx: PrecCtx, misprint: bool) -> Result<Completion> {
    let q = septic_point();
    let pipeline = run_pipeline(&QValue::Point(q.clone()), ctx)?;
    let s = &pipeline.state;
    let w = PrecCtx::new(pipeline.prec_bits)?;

    let p = certain_integer(&s.p).ok_or_else(|| Error::domain("p is not an integer at this nome"))?;
    if p != BigInt::one() {
        return Err(Error::domain("closed form emission needs p = 1"));
    }
    certain_integer(&s.ratio4).ok_or_else(|| Error::domain("theta ratio is not an integer at this nome"))?;

    let a = &pipeline.assignment;
    let ka = identify_root(&a.alpha, w)?;
    let kb = identify_root(&a.beta, w)?;
    let kg = identify_root(&a.gamma, w)?;

    // with α = 1/(2c_a)², β = 1/(2c_b)², p = 1: (α²p/β)^(1/7) = (c_b/(2c_a²))^(2/7)
    let term = |den: i64, num: i64| (num, (cospi(num, 7) / (int(2) * cospi(den, 7).pow(2, 1))).pow(2, 7));
    let mut terms = vec![term(ka, kb), term(kb, kg), term(kg, ka)];
    terms.sort_by_key(|t| t.0);
    let sum = terms.into_iter().fold(int(1), |acc, (_, t)| acc + t);

    // φ(q^(1/7))/φ(q⁷) = 1 + u + v + w; inverting the numerator's nome,
    // φ(e^(-π√r)) = r^(-1/4) φ(e^(-π/√r)), leaves the factor (1/r)^(-1/4).
    let num_point = q.root(7)?;
    let den_point = q.pow(7);
    let inv = num_point.inverted();
    if !inv.r().is_integer() {
        return Err(Error::domain("inverted nome is not an integer point"));
    }
    let (base, e) = perfect_power(&inv.r().to_integer());
    let mut exponent = BigRational::new(-BigInt::from(e), BigInt::from(4));
    if misprint {
        exponent = exponent.abs();
    }
    let factor = Expr::PowRat(Box::new(Expr::Int(base)), exponent);
    let rhs = factor * sum;
    let lhs = ThetaExpr::phi_at(inv) / ThetaExpr::phi_at(den_point);

    let identity = Identity::new("ln7", lhs, rhs, "lost notebook completion at e^-7pi*sqrt7");
    let report = verify_identity(&identity, ctx)?;
    let mut identity = identity;
    identity.status = report.status;
    Ok(Completion { identity, branch: s.branch, permutation_index: a.permutation_index, report, pipeline })
}
