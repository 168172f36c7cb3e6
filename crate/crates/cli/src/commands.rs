use std::fmt;
use std::io::Write;
use std::path::Path;
use std::time::Instant;

use copositive::cone2d::{
    curve_angular_set, format_significant, hom_convex_check_against, AngleUnit, Cone2,
    HomConvexOptions, SamplingPlan, DEFAULT_TOL_ORIGIN,
};
use copositive::format::{
    format_cone, parse_cone_spec, parse_vector, CounterexampleReport, FormatError, ProblemFile,
    VerdictReport,
};
use copositive::quadform::{oracle_search, OracleOptions, QuadError};
use copositive::selftest::{run_all, Scale};
use copositive::slemma::{certify as run_certify, emit_lmi, joint_range_curve, SlemmaError};
use copositive::{CertifyOptions, QuadraticFunction};

use crate::{ConeOp, CertifyArgs, CurveArgs, EXIT_NOINPUT, EXIT_NUMERIC, EXIT_SLATER, EXIT_USAGE};

/// Samples of the whole curve used as the reference direction set for
/// `curve --check`.
const CHECK_REFERENCE_SAMPLES: usize = 10_000;
const CHECK_EPS: f64 = 1e-3;

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    msg: String,
}

impl CliError {
    fn new(code: u8, msg: impl Into<String>) -> Self {
        CliError {
            code,
            msg: msg.into(),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.msg)
    }
}

impl From<FormatError> for CliError {
    fn from(e: FormatError) -> Self {
        CliError::new(EXIT_USAGE, e.to_string())
    }
}

impl From<SlemmaError> for CliError {
    fn from(e: SlemmaError) -> Self {
        let code = match e {
            SlemmaError::SlaterViolated { .. } => EXIT_SLATER,
            SlemmaError::DimensionMismatch { .. }
            | SlemmaError::Quad(QuadError::DimensionMismatch { .. }) => EXIT_USAGE,
            _ => EXIT_NUMERIC,
        };
        CliError::new(code, e.to_string())
    }
}

impl From<QuadError> for CliError {
    fn from(e: QuadError) -> Self {
        SlemmaError::from(e).into()
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::new(EXIT_NUMERIC, format!("write failed: {e}"))
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn load(path: &Path) -> Result<ProblemFile> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::new(EXIT_NOINPUT, format!("{}: {e}", path.display())))?;
    let problem = ProblemFile::from_json(&text)
        .map_err(|e| CliError::new(EXIT_USAGE, format!("{}: {e}", path.display())))?;
    Ok(problem)
}

fn load_functions(path: &Path) -> Result<(ProblemFile, QuadraticFunction, QuadraticFunction)> {
    let problem = load(path)?;
    let (g, h) = problem
        .functions()
        .map_err(|e| CliError::new(EXIT_USAGE, format!("{}: {e}", path.display())))?;
    Ok((problem, g, h))
}

fn point(flag: &str, text: &str, n: usize) -> Result<Vec<f64>> {
    let x = parse_vector(text)?;
    if x.len() != n {
        return Err(CliError::new(
            EXIT_USAGE,
            format!("--{flag} has {} entries, the problem has n = {n}", x.len()),
        ));
    }
    Ok(x)
}

pub fn certify(args: &CertifyArgs, out: &mut impl Write) -> Result<u8> {
    let (problem, g, h) = load_functions(&args.path)?;
    let x0 = match &args.x0 {
        Some(text) => Some(point("x0", text, g.dim())?),
        None => problem.x0.clone(),
    };
    let defaults = CertifyOptions::default();
    let opts = CertifyOptions {
        tol_cert: args.tol.unwrap_or(defaults.tol_cert),
        indeterminate_band: args.band.unwrap_or(defaults.indeterminate_band),
        oracle_budget: args.budget.unwrap_or(defaults.oracle_budget),
        seed: args.seed,
        force: args.force,
        x0,
        ..defaults
    };
    for (name, v) in [("tol", opts.tol_cert), ("band", opts.indeterminate_band)] {
        if !(v.is_finite() && v >= 0.0) {
            return Err(CliError::new(EXIT_USAGE, format!("--{name} must be a finite nonnegative number")));
        }
    }
    let start = Instant::now();
    let report = run_certify(&g, &h, &opts)?;
    let wall = args.timing.then(|| start.elapsed().as_secs_f64() * 1e3);
    let verdict = VerdictReport::new(&report, &opts, wall);
    for w in &verdict.warnings {
        eprintln!("copos: warning: {w}");
    }
    writeln!(out, "{}", verdict.to_json())?;
    Ok(verdict.exit_code() as u8)
}

pub fn lift(path: &Path, out: &mut impl Write) -> Result<u8> {
    let (_, g, h) = load_functions(path)?;
    let record = emit_lmi(&g, &h)?;
    let json = serde_json::to_string_pretty(&record).expect("finite record serializes");
    writeln!(out, "{json}")?;
    Ok(0)
}

pub fn cone(op: &ConeOp, unit: AngleUnit, out: &mut impl Write) -> Result<u8> {
    let parse = |s: &str| parse_cone_spec(s, unit);
    let show = |k: &Cone2| format_cone(k, unit);
    match op {
        ConeOp::Dual { cone } => writeln!(out, "{}", show(&parse(cone)?.dual()))?,
        ConeOp::Intersect { a, b } => writeln!(out, "{}", show(&parse(a)?.intersect(&parse(b)?)))?,
        ConeOp::Sum { a, b } => writeln!(out, "{}", show(&parse(a)?.sum(&parse(b)?)))?,
        ConeOp::Check { a, b } => {
            let (a, b) = (parse(a)?, parse(b)?);
            let lhs = a.intersect(&b).dual();
            let rhs = a.dual().sum(&b.dual());
            if lhs.approx_eq(&rhs, copositive::cone2d::TOL_ANG) {
                writeln!(out, "equal: {}", show(&lhs))?;
            } else {
                writeln!(out, "differ: {} vs {}", show(&lhs), show(&rhs))?;
                return Ok(1);
            }
        }
    }
    Ok(0)
}

fn parse_range(text: &str) -> Result<(f64, f64)> {
    let v = parse_vector(text)?;
    let bad = || CliError::new(EXIT_USAGE, format!("bad --range {text:?}: expected R >= 0 or lo,hi"));
    match v[..] {
        [r] if r >= 0.0 => Ok((-r, r)),
        [lo, hi] if lo <= hi => Ok((lo, hi)),
        _ => Err(bad()),
    }
}

pub fn curve(args: &CurveArgs, out: &mut impl Write) -> Result<u8> {
    let (_, g, h) = load_functions(&args.path)?;
    let x1 = point("x1", &args.x1, g.dim())?;
    let x2 = point("x2", &args.x2, g.dim())?;
    let (lo, hi) = parse_range(&args.range)?;
    if args.samples == 0 {
        return Err(CliError::new(EXIT_USAGE, "--samples must be positive"));
    }
    let curve = joint_range_curve(&g, &h, &x1, &x2)?;
    let unit = args.units.unit();
    let small = DEFAULT_TOL_ORIGIN * curve.coeff_scale();
    let mut points = Vec::with_capacity(args.samples);
    writeln!(out, "t,a,b,theta")?;
    for k in 0..args.samples {
        let t = if args.samples == 1 {
            lo
        } else {
            lo + (hi - lo) * k as f64 / (args.samples - 1) as f64
        };
        let p = curve.eval(t);
        let theta = if p[0].hypot(p[1]) <= small {
            "nan".to_string()
        } else {
            format_significant(unit.from_radians(p[1].atan2(p[0])), 12)
        };
        writeln!(out, "{t},{},{},{theta}", p[0], p[1])?;
        points.push(p);
    }
    if !args.check {
        return Ok(0);
    }
    let reference = curve_angular_set(
        &curve,
        &SamplingPlan::Compactified {
            count: CHECK_REFERENCE_SAMPLES,
        },
    );
    let report = hom_convex_check_against(
        &points,
        &reference,
        &HomConvexOptions {
            eps: CHECK_EPS,
            ..HomConvexOptions::default()
        },
    );
    writeln!(out, "# homconvex={}", report.passed)?;
    if report.passed {
        return Ok(0);
    }
    if let Some(w) = report.worst {
        writeln!(
            out,
            "# witness: samples {} and {}, s={}, point=({},{}), theta={}, distance={}",
            w.i,
            w.j,
            w.t,
            w.point[0],
            w.point[1],
            format_significant(unit.from_radians(w.angle), 12),
            format_significant(unit.from_radians(w.distance), 12),
        )?;
    }
    Ok(1)
}

pub fn oracle(path: &Path, budget: usize, seed: u64, out: &mut impl Write) -> Result<u8> {
    let (_, g, h) = load_functions(path)?;
    let report = oracle_search(
        &g,
        &h,
        &OracleOptions {
            budget,
            seed,
            ..OracleOptions::default()
        },
    )?;
    match report.witness {
        Some(w) => {
            let json = serde_json::to_string_pretty(&CounterexampleReport {
                x: w.x,
                g: w.g_val,
                h: w.h_val,
            })
            .expect("finite witness serializes");
            writeln!(out, "{json}")?;
            Ok(1)
        }
        None => {
            writeln!(out, "none")?;
            Ok(0)
        }
    }
}

pub fn selftest(full: bool, out: &mut impl Write) -> Result<u8> {
    let scale = if full { Scale::Full } else { Scale::Quick };
    let reports = run_all(scale);
    for r in &reports {
        writeln!(out, "{r}")?;
    }
    let passed = reports.iter().filter(|r| r.passed).count();
    writeln!(out, "selftest: {passed} of {} criteria passed", reports.len())?;
    Ok(if passed == reports.len() { 0 } else { 1 })
}
