use std::fmt::Write as _;

use num_traits::Signed;
use serde::Serialize;
use tensorwalk::characters::signed_fixed_point_sum;
use tensorwalk::gl_walk::{check_gl_bounds, count_gl_families, gl_separation_curve, gl_separation_routes, gl_spectrum};
use tensorwalk::limits::max_n;
use tensorwalk::occupancy::{occupancy_exact, occupancy_mc_parallel, qspan_exact, qspan_mc_parallel};
use tensorwalk::partition::Partition;
use tensorwalk::scalar::{format_exact, format_float, to_f64};
use tensorwalk::sn_walk::{check_kernel_routes, profile_point, separation_closed_form, separation_closed_form_curve, spectrum_sn};
use tensorwalk::{Curve, Error, ExactScalar, SnWalk, Spectrum};

use crate::{Command, CrosscheckArgs, GlArgs, OccupancyArgs, OutputFormat, ProfileArgs, RunConfig, SnArgs, SpectrumArgs};

/// Largest `n` for the closed-form-only separation and the profile.
pub const CLOSED_FORM_MAX_N: usize = 512;

pub struct Report {
    pub body: String,
    /// False when a check in the report failed.
    pub passed: bool,
}

#[derive(Debug)]
pub enum CommandError {
    Usage(String),
    Consistency(String),
}

fn with_context(context: &str) -> impl Fn(Error) -> CommandError + '_ {
    move |e| match e {
        Error::Consistency(_) => CommandError::Consistency(format!("{context}: {e}")),
        _ => CommandError::Usage(format!("{context}: {e}")),
    }
}

fn usage(msg: impl Into<String>) -> CommandError {
    CommandError::Usage(msg.into())
}

pub fn run(config: &RunConfig) -> Result<Report, CommandError> {
    let format = config.format;
    match &config.command {
        Command::SnSep(args) => sn_sep(args, format),
        Command::SnTv(args) => sn_tv(args, format),
        Command::GlSep(args) => gl_sep(args, format),
        Command::Profile(args) => profile(args, format),
        Command::Occupancy(args) => occupancy(args, format),
        Command::Crosscheck(args) => crosscheck(args, format),
        Command::Spectrum(args) => spectrum(args, format),
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

fn curve_report(curve: &Curve, format: OutputFormat) -> Report {
    let body = match format {
        OutputFormat::Csv => curve.to_csv(),
        OutputFormat::Json => to_json(curve),
    };
    Report { body, passed: true }
}

fn sn_sep(args: &SnArgs, format: OutputFormat) -> Result<Report, CommandError> {
    let n = args.n;
    if n < 2 {
        return Err(usage("sn-sep needs n >= 2"));
    }
    let curve = if n <= max_n() {
        let walk = SnWalk::new(n).map_err(with_context("sn-sep"))?;
        walk.separation_curve(args.rmax).map_err(with_context("sn-sep"))?
    } else if n <= CLOSED_FORM_MAX_N {
        log::info!("n = {n} is above the multi-route limit {}; using the closed form only", max_n());
        separation_closed_form_curve(n, args.rmax)
    } else {
        return Err(usage(format!("sn-sep supports n <= {CLOSED_FORM_MAX_N}")));
    };
    Ok(curve_report(&curve, format))
}

fn sn_tv(args: &SnArgs, format: OutputFormat) -> Result<Report, CommandError> {
    if args.n < 2 {
        return Err(usage("sn-tv needs n >= 2"));
    }
    let walk = SnWalk::new(args.n).map_err(with_context("sn-tv"))?;
    Ok(curve_report(&walk.tv_curve(args.rmax), format))
}

fn gl_sep(args: &GlArgs, format: OutputFormat) -> Result<Report, CommandError> {
    let curve = gl_separation_curve(args.n, args.q, args.rmax).map_err(with_context("gl-sep"))?;
    Ok(curve_report(&curve, format))
}

#[derive(Serialize)]
struct ProfileRecord {
    n: usize,
    c: f64,
    r: u32,
    s_exact: String,
    s_float: f64,
    limit: f64,
    scaled_error: f64,
}

fn profile(args: &ProfileArgs, format: OutputFormat) -> Result<Report, CommandError> {
    if let Some(&n) = args.n.iter().find(|&&n| !(2..=CLOSED_FORM_MAX_N).contains(&n)) {
        return Err(usage(format!("profile needs 2 <= n <= {CLOSED_FORM_MAX_N}, got {n}")));
    }
    if let Some(c) = args.c.iter().find(|c| !c.is_finite()) {
        return Err(usage(format!("profile needs finite c, got {c}")));
    }
    let mut records = Vec::new();
    for &n in &args.n {
        for &c in &args.c {
            let p = profile_point(n, c);
            records.push(ProfileRecord {
                n,
                c,
                r: p.r,
                s_exact: format_exact(&p.exact),
                s_float: p.value,
                limit: p.limit,
                scaled_error: p.scaled_error,
            });
        }
    }
    let body = match format {
        OutputFormat::Json => to_json(&records),
        OutputFormat::Csv => {
            let mut out = String::from("n,c,r,s_exact,s_float,limit,scaled_error\n");
            for rec in &records {
                writeln!(
                    out,
                    "{},{},{},{},{},{},{}",
                    rec.n,
                    rec.c,
                    rec.r,
                    rec.s_exact,
                    format_float(rec.s_float),
                    format_float(rec.limit),
                    format_float(rec.scaled_error)
                )
                .unwrap();
            }
            out
        }
    };
    Ok(Report { body, passed: true })
}

#[derive(Serialize)]
struct OccupancyRecord {
    a: usize,
    r: u32,
    n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    q: Option<u64>,
    exact: String,
    estimate: f64,
    stderr: f64,
    samples: u64,
    seed: u64,
}

fn occupancy(args: &OccupancyArgs, format: OutputFormat) -> Result<Report, CommandError> {
    let (n, r) = (args.n, args.rmax);
    if n == 0 {
        return Err(usage("occupancy needs n >= 1"));
    }
    let ctx = with_context("occupancy");
    let mut records = Vec::new();
    for a in 0..=n {
        let (exact, est) = match args.q {
            None => (
                occupancy_exact(a, r, n),
                occupancy_mc_parallel(a, r, n, args.samples, args.seed, args.streams).map_err(&ctx)?,
            ),
            Some(q) => (
                qspan_exact(a, r, n, q),
                qspan_mc_parallel(a, r, n, q, args.samples, args.seed, args.streams).map_err(&ctx)?,
            ),
        };
        if !est.within_sigmas(to_f64(&exact), 4.0) {
            log::warn!("a = {a}: estimate {} is more than 4 standard errors from {}", est.estimate, to_f64(&exact));
        }
        records.push(OccupancyRecord {
            a,
            r,
            n,
            q: args.q,
            exact: format_exact(&exact),
            estimate: est.estimate,
            stderr: est.stderr,
            samples: est.samples,
            seed: args.seed,
        });
    }
    let body = match format {
        OutputFormat::Json => to_json(&records),
        OutputFormat::Csv => {
            let mut out = String::from(if args.q.is_some() {
                "a,r,n,q,exact,estimate,stderr,samples,seed\n"
            } else {
                "a,r,n,exact,estimate,stderr,samples,seed\n"
            });
            for rec in &records {
                write!(out, "{},{},{},", rec.a, rec.r, rec.n).unwrap();
                if let Some(q) = rec.q {
                    write!(out, "{q},").unwrap();
                }
                writeln!(
                    out,
                    "{},{},{},{},{}",
                    rec.exact,
                    format_float(rec.estimate),
                    format_float(rec.stderr),
                    rec.samples,
                    rec.seed
                )
                .unwrap();
            }
            out
        }
    };
    Ok(Report { body, passed: true })
}

#[derive(Serialize)]
struct CheckRow {
    check: String,
    status: &'static str,
    detail: String,
}

type CheckResult = Result<String, String>;

fn check(cond: bool, ok: impl Into<String>, fail: impl FnOnce() -> String) -> CheckResult {
    if cond {
        Ok(ok.into())
    } else {
        Err(fail())
    }
}

fn sn_checks(n: usize, r_max: u32) -> Result<Vec<(String, CheckResult)>, CommandError> {
    let walk = SnWalk::new(n).map_err(with_context("crosscheck"))?;
    let k = walk.kernel();
    let mut rows: Vec<(String, CheckResult)> = Vec::new();

    rows.push((
        "kernel: characters = boxes".into(),
        check_kernel_routes(n).map(|_| format!("{} states", k.len())).map_err(|e| e.to_string()),
    ));
    rows.push(("kernel: row sums".into(), check(k.rows_sum_to_one(), "exact", || "a row does not sum to 1".into())));
    rows.push((
        "kernel: detailed balance".into(),
        check(k.detailed_balance_holds() && k.is_stationary(), "Plancherel measure", || "violated".into()),
    ));
    let bad_class = (0..walk.table().classes().len()).find(|&c| {
        let g = walk.eigenfunction(c);
        let mu = walk.eigenvalue_of_class(c);
        k.apply(&g) != g.iter().map(|x| x * &mu).collect::<Vec<ExactScalar>>()
    });
    rows.push((
        "eigenfunctions K g_C = (fp(C)/n) g_C".into(),
        check(bad_class.is_none(), format!("{} classes", walk.table().classes().len()), || {
            format!("fails for class {}", walk.table().classes()[bad_class.unwrap()].cycle_type)
        }),
    ));
    rows.push((
        format!("separation routes, r <= {r_max}"),
        walk.separation_curve(r_max).map(|_| "matrix, spectral, nonneg, occupancy, closed, lagrange".into()).map_err(|e| e.to_string()),
    ));
    let tv_bad = (0..=r_max).find(|&r| walk.tv_exact(r) > separation_closed_form(n, r));
    rows.push((
        format!("tv <= separation, r <= {r_max}"),
        check(tv_bad.is_none(), "holds", || format!("fails at r = {}", tv_bad.unwrap())),
    ));
    rows.push((
        "distance (n) to (1^n)".into(),
        walk.distance_to(&Partition::column(n))
            .map_err(|e| e.to_string())
            .and_then(|d| check(d == n - 1, format!("{d}"), || format!("{d}, expected {}", n - 1))),
    ));
    let fp_result: Result<usize, Error> = walk
        .states()
        .iter()
        .flat_map(|l| (0..=n).map(move |i| (l, i)))
        .map(|(l, i)| walk.table().fixed_point_character_sum(l, i))
        .try_fold(0, |acc, r| r.map(|_| acc + 1));
    rows.push(("fixed-point character sums".into(), fp_result.map(|c| format!("{c} sums")).map_err(|e| e.to_string())));
    let signed_bad = (0..=n).find(|&i| {
        let by_classes: i64 = walk
            .table()
            .classes()
            .iter()
            .filter(|c| c.fixed_points == i)
            .map(|c| i64::from(c.sign) * c.class_size as i64)
            .sum();
        signed_fixed_point_sum(n, i) != by_classes.into()
    });
    rows.push((
        "signed fixed-point sums".into(),
        check(signed_bad.is_none(), format!("{} values", n + 1), || format!("fails at i = {}", signed_bad.unwrap())),
    ));
    let neg = (0..=r_max).find_map(|r| {
        (0..walk.states().len()).find(|&l| walk.nonneg_terms(r, l).iter().any(|t| t.is_negative())).map(|l| (r, l))
    });
    rows.push((
        "nonnegative expansion terms".into(),
        check(neg.is_none(), "all >= 0", || {
            let (r, l) = neg.unwrap();
            format!("negative term at r = {r}, {}", walk.states()[l])
        }),
    ));
    if n <= 7 {
        let top = r_max.min(12);
        let bad: Result<Option<(u32, Partition)>, Error> = (0..=top)
            .flat_map(|r| walk.states().iter().map(move |l| (r, l)))
            .try_fold(None, |found, (r, l)| {
                if found.is_some() {
                    return Ok(found);
                }
                Ok(if walk.tensor_power_check(r, l)? { None } else { Some((r, l.clone())) })
            });
        rows.push((
            format!("tensor powers, r <= {top}"),
            match bad {
                Ok(None) => Ok("K^r((n), l) n^r / d_l = multiplicity".into()),
                Ok(Some((r, l))) => Err(format!("fails at r = {r}, {l}")),
                Err(e) => Err(e.to_string()),
            },
        ));
    }
    Ok(rows)
}

fn gl_checks(n: usize, q: u64, r_max: u32) -> Result<Vec<(String, CheckResult)>, CommandError> {
    gl_separation_routes(n, q, 0).map_err(with_context("crosscheck"))?;
    let mut rows: Vec<(String, CheckResult)> = Vec::new();
    let mut route_result = Ok("closed, qspan, lagrange".to_string());
    let mut unit_result = Ok(format!("r < {n}"));
    for r in 0..=r_max {
        match gl_separation_routes(n, q, r) {
            Ok(routes) => {
                if !routes.agree() && route_result.is_ok() {
                    route_result = Err(format!("r = {r}: {routes:?}"));
                }
                if (r as usize) < n && routes.closed_form != ExactScalar::from_integer(1.into()) && unit_result.is_ok() {
                    unit_result = Err(format!("s({r}) = {}", routes.closed_form));
                }
            }
            Err(e) => route_result = Err(e.to_string()),
        }
    }
    rows.push((format!("separation routes, r <= {r_max}"), route_result));
    rows.push(("s(r) = 1 before n steps".into(), unit_result));
    let c_max = r_max.saturating_sub(n as u32);
    let bounds_bad = (0..=c_max).find(|&c| !matches!(check_gl_bounds(n, q, c), Ok(true)));
    rows.push((
        format!("separation bounds, c <= {c_max}"),
        check(bounds_bad.is_none(), "hold", || format!("fail at c = {}", bounds_bad.unwrap())),
    ));
    rows.push((
        "families avoiding the unit cuspidal".into(),
        count_gl_families(n, q, true)
            .map_err(|e| e.to_string())
            .and_then(|c| check(c > 0u32.into(), c.to_string(), || "none".into())),
    ));
    Ok(rows)
}

fn crosscheck(args: &CrosscheckArgs, format: OutputFormat) -> Result<Report, CommandError> {
    let rows = match args.q {
        None => {
            if args.n < 2 {
                return Err(usage("crosscheck needs n >= 2"));
            }
            sn_checks(args.n, args.rmax.unwrap_or(4 * args.n as u32))?
        }
        Some(q) => gl_checks(args.n, q, args.rmax.unwrap_or(3 * args.n as u32))?,
    };
    let rows: Vec<CheckRow> = rows
        .into_iter()
        .map(|(check, result)| match result {
            Ok(detail) => CheckRow { check, status: "pass", detail },
            Err(detail) => CheckRow { check, status: "FAIL", detail },
        })
        .collect();
    let passed = rows.iter().all(|r| r.status == "pass");
    let body = match format {
        OutputFormat::Json => to_json(&rows),
        OutputFormat::Csv => {
            let mut out = String::from("check,status,detail\n");
            for row in &rows {
                writeln!(out, "\"{}\",{},\"{}\"", row.check, row.status, row.detail.replace('"', "'")).unwrap();
            }
            out
        }
    };
    Ok(Report { body, passed })
}

#[derive(Serialize)]
struct SpectrumRow {
    eigenvalue_exact: String,
    eigenvalue_float: f64,
    multiplicity: Option<String>,
}

fn spectrum(args: &SpectrumArgs, format: OutputFormat) -> Result<Report, CommandError> {
    let spec: Spectrum = match args.q {
        None => spectrum_sn(args.n).map_err(with_context("spectrum"))?,
        Some(q) => gl_spectrum(args.n, q).map_err(with_context("spectrum"))?,
    };
    let rows: Vec<SpectrumRow> = spec
        .entries()
        .iter()
        .map(|e| SpectrumRow {
            eigenvalue_exact: format_exact(&e.eigenvalue),
            eigenvalue_float: to_f64(&e.eigenvalue),
            multiplicity: e.multiplicity.as_ref().map(|m| m.to_string()),
        })
        .collect();
    let body = match format {
        OutputFormat::Json => to_json(&rows),
        OutputFormat::Csv => {
            let mut out = String::from("eigenvalue_exact,eigenvalue_float,multiplicity\n");
            for row in &rows {
                writeln!(
                    out,
                    "{},{},{}",
                    row.eigenvalue_exact,
                    format_float(row.eigenvalue_float),
                    row.multiplicity.as_deref().unwrap_or("")
                )
                .unwrap();
            }
            out
        }
    };
    Ok(Report { body, passed: true })
}
