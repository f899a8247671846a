use std::io::Write;

use clap::ValueEnum;
use num_rational::BigRational;
use num_traits::{One, Signed};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::parse_decimal_rational;
use crate::lostnotebook::{p_residual, uvw_sum_residual, verify_quartic_relation};
use crate::modular::{jims_identity, verify_degree15, verify_degree3, yi_product_theorem};
use crate::precision::{Ball, PrecCtx};
use crate::qseries::QValue;

use super::report::{rounded_log10, to_json, Residual, SweepPoint, SweepReport, TOOL_VERSION};
use super::{with_jobs, EXIT_FAIL, EXIT_OK, EXIT_USAGE};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SweepTarget {
    Deg3,
    Deg15,
    YiProduct,
    Jims,
    Septic,
}

impl SweepTarget {
    fn name(self) -> &'static str {
        match self {
            SweepTarget::Deg3 => "deg3",
            SweepTarget::Deg15 => "deg15",
            SweepTarget::YiProduct => "yi_product",
            SweepTarget::Jims => "jims",
            SweepTarget::Septic => "septic",
        }
    }
}

enum Point {
    Unit(BigRational),
    Tuple(Box<[BigRational; 5]>),
}

fn rational(s: &str) -> Result<BigRational> {
    parse_decimal_rational(s.trim()).ok_or_else(|| Error::domain(format!("not a number: {s}")))
}

fn parse_point(target: SweepTarget, s: &str) -> Result<Point> {
    if target == SweepTarget::YiProduct {
        let parts: Vec<BigRational> = s.split(':').map(rational).collect::<Result<_>>()?;
        let [k, a, b, c, d]: [BigRational; 5] =
            parts.try_into().map_err(|_| Error::domain(format!("expected k:a:b:c:d, got {s}")))?;
        if [&k, &a, &b, &c, &d].iter().any(|v| !v.is_positive()) {
            return Err(Error::domain(format!("yi-product entries must be positive: {s}")));
        }
        if &a * &b != &c * &d {
            return Err(Error::PreconditionViolated(format!("ab != cd in {s}")));
        }
        return Ok(Point::Tuple(Box::new([k, a, b, c, d])));
    }
    let x = rational(s)?;
    if !x.is_positive() || x >= BigRational::one() {
        return Err(Error::domain(format!("point {s} is outside (0, 1)")));
    }
    Ok(Point::Unit(x))
}

fn residual(name: &str, b: &Ball) -> Residual {
    let m = b.abs_upper().log2() * std::f64::consts::LOG10_2;
    Residual { contains_zero: b.contains_zero(), magnitude_log10: rounded_log10(m), name: name.into() }
}

fn residuals(target: SweepTarget, p: &Point, ctx: PrecCtx) -> Result<Vec<Residual>> {
    let unit = |x: &BigRational| Ball::from_ratio(x, ctx);
    Ok(match (target, p) {
        (SweepTarget::Deg3, Point::Unit(x)) => {
            let (a, b) = verify_degree3(&unit(x), ctx)?;
            vec![residual("first", &a), residual("second", &b)]
        }
        (SweepTarget::Deg15, Point::Unit(x)) => vec![residual("degree15", &verify_degree15(&unit(x), ctx)?)],
        (SweepTarget::Jims, Point::Unit(x)) => vec![residual("jims", &jims_identity(&unit(x), ctx)?)],
        (SweepTarget::Septic, Point::Unit(x)) => {
            let q = QValue::Real(unit(x));
            vec![
                residual("p_minus_uvw", &p_residual(&q, ctx)?),
                residual("uvw_sum", &uvw_sum_residual(&q, ctx)?),
                residual("quartic", &verify_quartic_relation(&q, ctx)?),
            ]
        }
        (SweepTarget::YiProduct, Point::Tuple(t)) => {
            let [k, a, b, c, d] = t.as_ref();
            vec![residual("product", &yi_product_theorem(k, a, b, c, d, ctx)?)]
        }
        _ => unreachable!("points are parsed per target"),
    })
}

/// Runs a sweep; returns the exit code and the JSON report (empty on a usage error).
pub fn run_sweep(
    target: SweepTarget,
    grid: &[String],
    ctx: PrecCtx,
    jobs: usize,
    err: &mut dyn Write,
) -> (i32, String) {
    let mut points = Vec::with_capacity(grid.len());
    for s in grid {
        match parse_point(target, s) {
            Ok(p) => points.push((s.trim().to_string(), p)),
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                return (EXIT_USAGE, String::new());
            }
        }
    }
    let results: Vec<SweepPoint> = with_jobs(jobs, || {
        points
            .par_iter()
            .map(|(text, p)| match residuals(target, p, ctx) {
                Ok(rs) => SweepPoint {
                    error: None,
                    pass: rs.iter().all(|r| r.contains_zero),
                    point: text.clone(),
                    residuals: rs,
                },
                Err(e) => {
                    SweepPoint { error: Some(e.to_string()), pass: false, point: text.clone(), residuals: vec![] }
                }
            })
            .collect()
    });
    let domain = results.iter().any(|p| p.error.is_some());
    let ok = results.iter().all(|p| p.pass);
    let report = SweepReport {
        points: results,
        prec_bits: ctx.bits(),
        target: target.name().into(),
        tool_version: TOOL_VERSION.into(),
    };
    let code = if domain {
        EXIT_USAGE
    } else if ok {
        EXIT_OK
    } else {
        EXIT_FAIL
    };
    (code, to_json(&report))
}
