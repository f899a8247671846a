//! Command-line front end. [`run`] parses arguments, runs one subcommand and
//! returns the exit code: 0 all checks pass, 1 a mathematical check failed,
//! 2 usage or domain error.

mod report;
mod sweep;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use crate::error::Error;
use crate::exact::{build_catalog, parse_theta_expr, verify_identity, Identity, Status};
use crate::lostnotebook::{complete_evaluation, Branch};
use crate::precision::PrecCtx;
use crate::qseries::Route;

pub use report::{to_json, CompleteReport, Report, Residual, SweepPoint, SweepReport, VerifyEntry, TOOL_VERSION};
pub use sweep::{run_sweep, SweepTarget};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "thetaval", version, about = "Certified theta-function evaluation and identity verification")]
pub struct Cli {
    /// Working precision in bits.
    #[arg(long, global = true, env = "THETAVAL_PREC_BITS", default_value_t = 512)]
    pub prec: u32,
    /// Precision in decimal digits (3.33 bits per digit); overrides --prec.
    #[arg(long, global = true)]
    pub digits: Option<u32>,
    /// Parallel workers for verify and sweep.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
    #[command(subcommand)]
    pub cmd: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Verify catalog entries and write a JSON report.
    Verify {
        ids: Vec<String>,
        #[arg(long)]
        all: bool,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Record wall-clock time per entry (otherwise runtime_ms is 0 and reports are reproducible).
        #[arg(long)]
        timings: bool,
    },
    /// Evaluate an expression and print its certified digits.
    Eval {
        expr: String,
        #[arg(long, value_enum, default_value_t = RouteArg::Product)]
        route: RouteArg,
    },
    /// Check residuals of an identity family on a grid.
    Sweep {
        #[arg(value_enum)]
        target: SweepTarget,
        /// Comma-separated points; `k:a:b:c:d` tuples for yi-product.
        #[arg(long, value_delimiter = ',', required = true)]
        grid: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Rederive and verify the completed septic evaluation.
    Complete {
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List catalog entries with provenance as JSON.
    Catalog,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum RouteArg {
    Product,
    Series,
}

impl Cli {
    pub fn ctx(&self) -> Result<PrecCtx, Error> {
        let bits = match self.digits {
            Some(d) => (d as f64 * 3.33).ceil() as u32,
            None => self.prec,
        };
        PrecCtx::new(bits)
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{text}") } else { write!(out, "{text}") };
            return code;
        }
    };
    let ctx = match cli.ctx() {
        Ok(c) => c,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_USAGE;
        }
    };
    let jobs = cli.jobs.max(1);
    match &cli.cmd {
        Command::Verify { ids, all, out: path, timings } => cmd_verify(ids, *all, ctx, *timings, jobs, path, out, err),
        Command::Eval { expr, route } => cmd_eval(expr, *route, ctx, out, err),
        Command::Sweep { target, grid, out: path } => {
            let (code, text) = run_sweep(*target, grid, ctx, jobs, err);
            if code == EXIT_USAGE && text.is_empty() {
                return code;
            }
            emit(&text, path, out, err).unwrap_or(code)
        }
        Command::Complete { out: path } => cmd_complete(ctx, path, out, err),
        Command::Catalog => {
            let _ = writeln!(out, "{}", build_catalog().to_json());
            EXIT_OK
        }
    }
}

/// Runs `f` on a pool of `jobs` threads.
pub(crate) fn with_jobs<R: Send>(jobs: usize, f: impl FnOnce() -> R + Send) -> R {
    match rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build() {
        Ok(pool) => pool.install(f),
        Err(_) => f(),
    }
}

/// Writes `text` to `path` or `out`; `Some(code)` on an I/O failure.
fn emit(text: &str, path: &Option<PathBuf>, out: &mut dyn Write, err: &mut dyn Write) -> Option<i32> {
    let res = match path {
        Some(p) => std::fs::write(p, text),
        None => out.write_all(text.as_bytes()),
    };
    match res {
        Ok(()) => None,
        Err(e) => {
            let _ = writeln!(err, "error: cannot write report: {e}");
            Some(EXIT_USAGE)
        }
    }
}

fn status_text(s: Status) -> &'static str {
    match s {
        Status::Verified => "verified",
        Status::Unverified => "unverified",
    }
}

fn verify_entry(e: &Identity, ctx: PrecCtx, timings: bool) -> VerifyEntry {
    let t0 = Instant::now();
    let res = verify_identity(e, ctx);
    let runtime_ms = if timings { t0.elapsed().as_millis() as u64 } else { 0 };
    match res {
        Ok(r) => VerifyEntry {
            agreement_digits: r.agreement_digits,
            error: None,
            escalated: r.escalated,
            final_prec_bits: r.prec_bits,
            id: r.id,
            lhs_mid_decimal: r.lhs.mid_decimal(50),
            provenance: e.provenance.clone(),
            runtime_ms,
            status: status_text(r.status).into(),
        },
        Err(err) => VerifyEntry {
            agreement_digits: 0,
            error: Some(err.to_string()),
            escalated: false,
            final_prec_bits: ctx.bits(),
            id: e.id.clone(),
            lhs_mid_decimal: String::new(),
            provenance: e.provenance.clone(),
            runtime_ms,
            status: "unverified".into(),
        },
    }
}

/// Verifies the requested entries, or every entry with `all`.
pub fn verify_report(ids: &[String], all: bool, ctx: PrecCtx, timings: bool, jobs: usize) -> Result<Report, Error> {
    let catalog = build_catalog();
    if !all && ids.is_empty() {
        return Err(Error::UnsupportedArgument("name entry ids or pass --all".into()));
    }
    let selected: Vec<&Identity> = if all {
        catalog.entries.iter().collect()
    } else {
        ids.iter().map(|id| catalog.get(id)).collect::<Result<_, _>>()?
    };
    let entries = with_jobs(jobs, || selected.par_iter().map(|e| verify_entry(e, ctx, timings)).collect());
    Ok(Report { entries, prec_bits: ctx.bits(), tool_version: TOOL_VERSION.into() })
}

#[allow(clippy::too_many_arguments)]
fn cmd_verify(
    ids: &[String],
    all: bool,
    ctx: PrecCtx,
    timings: bool,
    jobs: usize,
    path: &Option<PathBuf>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    let report = match verify_report(ids, all, ctx, timings, jobs) {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_USAGE;
        }
    };
    if let Some(code) = emit(&to_json(&report), path, out, err) {
        return code;
    }
    if report.entries.iter().all(|e| e.status == "verified") {
        EXIT_OK
    } else {
        EXIT_FAIL
    }
}

fn cmd_eval(text: &str, route: RouteArg, ctx: PrecCtx, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let e = match parse_theta_expr(text) {
        Ok(e) => e,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_USAGE;
        }
    };
    let route = match route {
        RouteArg::Product => Route::Product,
        RouteArg::Series => Route::Series,
    };
    match e.eval_via(route, ctx) {
        Ok(v) => {
            let cap = ctx.decimal_digits().min(1000);
            let lead = (v.mid_f64().abs().log10().floor().max(0.0) as usize) + 1;
            let digits = match v.certified_decimals() {
                None => cap,
                Some(d) => (d + lead).min(cap).max(1),
            };
            let _ = writeln!(out, "{}", v.mid_decimal(digits));
            if v.is_exact() {
                let _ = writeln!(out, "radius 0");
            } else {
                let _ = writeln!(out, "radius 1e{}", v.rad_log10().ceil() as i64);
            }
            EXIT_OK
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_FAIL
        }
    }
}

fn branch_text(b: Branch) -> &'static str {
    match b {
        Branch::Plus => "plus",
        Branch::Minus => "minus",
        Branch::Double => "double",
    }
}

fn cmd_complete(ctx: PrecCtx, path: &Option<PathBuf>, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let done = match complete_evaluation(ctx) {
        Ok(d) => d,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_FAIL;
        }
    };
    let s = &done.pipeline.state;
    let shown = ctx.decimal_digits().min(40);
    let show = |b: &crate::precision::Ball| b.mid_decimal(shown);
    let rep = CompleteReport {
        agreement_digits: done.report.agreement_digits,
        branch: branch_text(done.branch).into(),
        c0: show(&s.c0),
        c1: show(&s.c1),
        c2: show(&s.c2),
        final_prec_bits: done.report.prec_bits,
        lhs_text: done.identity.lhs.to_string(),
        p: show(&s.p),
        permutation_index: done.permutation_index,
        pipeline_prec_bits: done.pipeline.prec_bits,
        prec_bits: ctx.bits(),
        ratio4: show(&s.ratio4),
        rhs_text: done.identity.rhs.to_string(),
        roots: done.pipeline.roots.iter().map(show).collect(),
        status: status_text(done.report.status).into(),
        tool_version: TOOL_VERSION.into(),
    };
    if let Some(code) = emit(&to_json(&rep), path, out, err) {
        return code;
    }
    if done.report.status == Status::Verified {
        EXIT_OK
    } else {
        EXIT_FAIL
    }
}
