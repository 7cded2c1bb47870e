//! The `binomdiv` command-line front end.
//!
//! [`run`] takes an argument vector and two output streams and returns the
//! process exit code: 0 when every check passed or values were emitted, 1
//! when a counterexample or mismatch was found, 2 on usage errors.

pub mod cache;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::{self, Write};

use binomdiv_core::conjectures::{
    self, Counterexample, FSearchResult, FStatus, Finding, ScanReport, DEFAULT_F_CAP, PUBLISHED_F_VALUES,
};
use binomdiv_core::inequalities::{self, InequalityTheorem, LemmaReport, ResidueScan};
use binomdiv_core::theorems::{self, SweepBounds, SweepReport, TheoremId, Verdict};
use binomdiv_core::{ConjectureId, Error, FactorialRatio, Integrality, Parity, SequenceId};
use clap::error::ErrorKind;
use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{json, Value};

use cache::{Cache, CacheRecord};

pub const CACHE_ENV: &str = "BINOMDIV_CACHE";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Plain,
}

#[derive(Debug, Parser)]
#[command(
    name = "binomdiv",
    version,
    about = "Exact checks of binomial divisibility theorems, floor inequalities and conjectures"
)]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    format: Format,
    /// Cache file, or `off`. Defaults to $BINOMDIV_CACHE, else off.
    #[arg(long, global = true, value_name = "PATH|off")]
    cache: Option<String>,
    /// Worker threads for scans.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    workers: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Sweep a theorem verifier over a parameter box.
    Verify {
        /// 1.1i, 1.1ii, 1.2i, 1.2ii, 1.2iii, 1.3, 1.4 or bober
        #[arg(long)]
        theorem: TheoremId,
        #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u64).range(1..))]
        k_max: u64,
        #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u64).range(1..))]
        l_max: u64,
        #[arg(long, default_value_t = 50)]
        m_max: u64,
        #[arg(long, default_value_t = 200, value_parser = clap::value_parser!(u64).range(1..))]
        n_max: u64,
    },
    /// Print a sequence table.
    Seq {
        /// catalan, catalan:h, s, t, S:k or Q:m
        name: SequenceId,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        max: u64,
    },
    /// Exhaustive residue scan of a floor-function inequality.
    Ineq {
        /// 2.1, 2.2, 2.3i, 2.3ii, 3.3 or L2.1
        #[arg(long)]
        theorem: InequalityTheorem,
        /// Largest modulus (largest denominator for L2.1).
        #[arg(long, value_parser = clap::value_parser!(i64).range(1..))]
        m_max: i64,
    },
    /// Falsification scan of a conjecture.
    Conjecture {
        /// 1.1, 1.2 or 1.3
        id: ConjectureId,
        #[command(flatten)]
        ranges: Ranges,
    },
    /// Search for f(k,l), the least n with (ln+1) not dividing C(kn+ln, kn).
    #[command(group(ArgGroup::new("target").required(true).args(["k", "pairs"])))]
    Fsearch {
        #[arg(long, requires = "l", value_parser = clap::value_parser!(u64).range(1..))]
        k: Option<u64>,
        #[arg(long, requires = "k", value_parser = clap::value_parser!(u64).range(1..))]
        l: Option<u64>,
        /// Search every published pair and compare.
        #[arg(long, value_enum, conflicts_with_all = ["k", "l"])]
        pairs: Option<PairSet>,
        #[arg(long, default_value_t = DEFAULT_F_CAP, value_parser = clap::value_parser!(u64).range(1..))]
        cap: u64,
    },
    /// Evaluate a factorial ratio given in canonical text form.
    Ratio {
        /// e.g. "(15n-1)! (2)! (4n)! / (12n+2)! (2n)! (5n-1)!"
        text: FactorialRatio,
        #[arg(long)]
        n: u64,
        /// Also reduce the value modulo M.
        #[arg(long = "mod", value_name = "M", value_parser = clap::value_parser!(u64).range(2..))]
        modulus: Option<u64>,
    },
}

#[derive(Debug, Args)]
struct Ranges {
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    m_max: Option<u64>,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    k_max: Option<u64>,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    l_max: Option<u64>,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    n_max: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PairSet {
    /// The twelve pairs with published values.
    Paper,
}

enum Failure {
    Usage(String),
    Core(Error),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

type Out<'a> = &'a mut (dyn Write + Send);

struct Ctx {
    format: Format,
    cache: Option<Cache>,
}

pub fn run<I, T>(argv: I, out: Out<'_>, err: Out<'_>) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    0
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    2
                }
            };
        }
    };

    let cache_arg = cli.cache.clone().or_else(|| std::env::var(CACHE_ENV).ok());
    let ctx = Ctx {
        format: cli.format,
        cache: cache_arg.filter(|p| !p.is_empty() && p != "off").map(Cache::new),
    };

    let result = match cli.workers {
        None => execute(&cli.command, &ctx, out, err),
        Some(w) => match rayon::ThreadPoolBuilder::new().num_threads(w as usize).build() {
            Ok(pool) => pool.install(|| execute(&cli.command, &ctx, out, err)),
            Err(e) => Err(Failure::Usage(format!("cannot start {w} workers: {e}"))),
        },
    };
    let code = match result {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Core(e)) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::Mismatch(_) | Error::NotIntegral { .. } => 1,
                _ => 2,
            }
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    };
    let _ = out.flush();
    code
}

fn execute(cmd: &Command, ctx: &Ctx, out: Out<'_>, err: Out<'_>) -> Result<i32, Failure> {
    match *cmd {
        Command::Verify {
            theorem,
            k_max,
            l_max,
            m_max,
            n_max,
        } => verify(
            ctx,
            out,
            err,
            theorem,
            SweepBounds {
                k_max,
                l_max,
                m_max,
                n_max,
            },
        ),
        Command::Seq { name, max } => seq(ctx, out, name, max),
        Command::Ineq { theorem, m_max } => ineq(ctx, out, err, theorem, m_max),
        Command::Conjecture { id, ref ranges } => conjecture(ctx, out, err, id, ranges),
        Command::Fsearch { k, l, pairs, cap } => {
            let targets: Vec<(u64, u64, Option<u64>)> = match (pairs, k, l) {
                (Some(PairSet::Paper), _, _) => PUBLISHED_F_VALUES.iter().map(|&(k, l, f)| (k, l, Some(f))).collect(),
                (None, Some(k), Some(l)) => vec![(k, l, None)],
                _ => return Err(Failure::Usage("give --k and --l, or --pairs paper".into())),
            };
            fsearch(ctx, out, err, &targets, cap)
        }
        Command::Ratio { ref text, n, modulus } => ratio(ctx, out, text, n, modulus),
    }
}

fn emit_json(out: Out<'_>, value: &Value) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)
}

fn csv_record<I, S>(out: Out<'_>, fields: I) -> io::Result<()>
where
    I: IntoIterator<Item = S>,
    S: AsRef<[u8]>,
{
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(fields).map_err(io::Error::other)?;
    let bytes = w.into_inner().map_err(|e| io::Error::other(e.to_string()))?;
    out.write_all(&bytes)
}

fn joined_params<'a>(params: impl IntoIterator<Item = &'a (String, u64)>) -> String {
    let mut s = String::new();
    for (name, v) in params {
        if !s.is_empty() {
            s.push(';');
        }
        let _ = write!(s, "{name}={v}");
    }
    s
}

/// Looks the result up in the cache, computing and appending it on a miss.
fn cached<T, F>(ctx: &Ctx, err: Out<'_>, op: &str, params: &str, compute: F) -> Result<T, Failure>
where
    T: Serialize + DeserializeOwned,
    F: FnOnce() -> Result<T, Error>,
{
    let Some(cache) = &ctx.cache else {
        return Ok(compute()?);
    };
    if let Some(rec) = cache.lookup(op, params, err) {
        match serde_json::from_value(rec.payload) {
            Ok(v) => return Ok(v),
            Err(e) => {
                let _ = writeln!(err, "warning: unreadable cached {op} payload ({e}); recomputing");
            }
        }
    }
    let value = compute()?;
    store(cache, err, op, params, &value);
    Ok(value)
}

fn store<T: Serialize>(cache: &Cache, err: Out<'_>, op: &str, params: &str, value: &T) {
    let payload = match serde_json::to_value(value) {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "warning: cannot serialize {op} result: {e}");
            return;
        }
    };
    if let Err(e) = cache.append(&CacheRecord::new(op, params, payload)) {
        let _ = writeln!(err, "warning: cannot write cache {}: {e}", cache.path().display());
    }
}

fn verdict_detail(v: &Verdict) -> String {
    if let Some(w) = &v.witness {
        return w.detail.clone();
    }
    let failing: Vec<&str> = v
        .checks
        .iter()
        .filter(|c| !c.holds)
        .map(|c| c.detail.as_str())
        .collect();
    if failing.is_empty() {
        v.checks.first().map(|c| c.detail.clone()).unwrap_or_default()
    } else {
        failing.join("; ")
    }
}

fn verdict_params(v: &Verdict) -> String {
    joined_params(&v.params)
}

fn verify(ctx: &Ctx, out: Out<'_>, err: Out<'_>, theorem: TheoremId, b: SweepBounds) -> Result<i32, Failure> {
    let params = format!(
        "theorem={theorem};k_max={};l_max={};m_max={};n_max={}",
        b.k_max, b.l_max, b.m_max, b.n_max
    );
    let report: SweepReport = cached(ctx, err, "verify", &params, || theorems::sweep(theorem, b))?;
    match ctx.format {
        Format::Json => emit_json(
            out,
            &json!({ "command": "verify", "holds": report.holds(), "report": report }),
        )?,
        Format::Csv => {
            csv_record(out, ["kind", "theorem", "params", "outcome", "detail"])?;
            let summary = format!(
                "verdicts={};failures={};inconclusive={};odd_quotients={};even_quotients={}",
                report.verdicts,
                report.failures.len(),
                report.inconclusive.len(),
                report.odd_quotients,
                report.even_quotients
            );
            let outcome = if report.holds() { "holds" } else { "fails" };
            let name = theorem.to_string();
            csv_record(out, ["summary", &name, &params, outcome, &summary])?;
            for (kind, list) in [("failure", &report.failures), ("inconclusive", &report.inconclusive)] {
                for v in list {
                    let outcome = format!("{:?}", v.outcome).to_lowercase();
                    csv_record(out, [kind, &name, &verdict_params(v), &outcome, &verdict_detail(v)])?;
                }
            }
        }
        Format::Plain => {
            writeln!(
                out,
                "theorem {theorem}: {} verdicts over k <= {}, l <= {}, m <= {}, n <= {}",
                report.verdicts, b.k_max, b.l_max, b.m_max, b.n_max
            )?;
            if report.odd_quotients + report.even_quotients > 0 {
                writeln!(
                    out,
                    "parity clauses: {} odd quotients, {} even quotients",
                    report.odd_quotients, report.even_quotients
                )?;
            }
            for v in &report.failures {
                writeln!(out, "FAIL {} [{}]: {}", v.claim, verdict_params(v), verdict_detail(v))?;
            }
            for v in &report.inconclusive {
                writeln!(
                    out,
                    "inconclusive {} [{}]: {}",
                    v.claim,
                    verdict_params(v),
                    verdict_detail(v)
                )?;
            }
            writeln!(out, "{}", if report.holds() { "holds" } else { "FAILS" })?;
        }
    }
    Ok(if report.holds() { 0 } else { 1 })
}

fn seq(ctx: &Ctx, out: Out<'_>, id: SequenceId, max: u64) -> Result<i32, Failure> {
    let rows = id
        .stream(id.first_index()..=max)
        .map(|r| r.map(|(n, v)| (n, v.to_str_radix(10))))
        .collect::<Result<Vec<_>, Error>>()?;
    match ctx.format {
        Format::Json => {
            let values: Vec<Value> = rows.iter().map(|(n, v)| json!({ "n": n, "value": v })).collect();
            emit_json(
                out,
                &json!({ "command": "seq", "sequence": id.to_string(), "values": values }),
            )?;
        }
        Format::Csv => {
            csv_record(out, ["n", "value"])?;
            for (n, v) in &rows {
                csv_record(out, [n.to_string().as_str(), v])?;
            }
        }
        Format::Plain => {
            for (n, v) in &rows {
                writeln!(out, "{n} {v}")?;
            }
        }
    }
    Ok(0)
}

fn ineq(ctx: &Ctx, out: Out<'_>, err: Out<'_>, theorem: InequalityTheorem, m_max: i64) -> Result<i32, Failure> {
    if theorem == InequalityTheorem::L2_1 {
        let params = format!("theorem={theorem};den_max={m_max}");
        let report: LemmaReport = cached(ctx, err, "ineq", &params, || inequalities::check_lemma_2_1(m_max))?;
        match ctx.format {
            Format::Json => emit_json(
                out,
                &json!({ "command": "ineq", "holds": report.holds(), "report": report }),
            )?,
            Format::Csv => {
                csv_record(
                    out,
                    [
                        "theorem",
                        "den_max",
                        "first_points",
                        "second_points",
                        "second_hypotheses",
                        "violation",
                    ],
                )?;
                csv_record(
                    out,
                    [
                        theorem.to_string(),
                        report.den_max.to_string(),
                        report.first_points.to_string(),
                        report.second_points.to_string(),
                        report.second_hypotheses.to_string(),
                        report.violation.clone().unwrap_or_default(),
                    ],
                )?;
            }
            Format::Plain => {
                writeln!(out, "lemma L2.1, part (i): {} grid points", report.first_points)?;
                writeln!(
                    out,
                    "lemma L2.1, part (ii): {} rationals with denominator <= {}, {} meeting the hypothesis",
                    report.second_points, report.den_max, report.second_hypotheses
                )?;
                match &report.violation {
                    Some(v) => writeln!(out, "VIOLATION {v}")?,
                    None => writeln!(out, "holds")?,
                }
            }
        }
        return Ok(if report.holds() { 0 } else { 1 });
    }

    if m_max < theorem.min_modulus() {
        return Err(Failure::Usage(format!(
            "--m-max for {theorem} must be at least {}",
            theorem.min_modulus()
        )));
    }
    let params = format!("theorem={theorem};m_max={m_max}");
    let report: ResidueScan = cached(ctx, err, "ineq", &params, || {
        inequalities::exhaustive_scan(theorem, m_max)
    })?;
    let moduli = report
        .exception_moduli
        .iter()
        .map(i64::to_string)
        .collect::<Vec<_>>()
        .join(";");
    let mismatch = report
        .mismatch
        .as_ref()
        .map(|d| format!("m={} k={:?} l={:?} n={} defect={}", d.modulus, d.k, d.l, d.n, d.defect))
        .unwrap_or_default();
    match ctx.format {
        Format::Json => emit_json(
            out,
            &json!({ "command": "ineq", "holds": report.holds(), "report": report }),
        )?,
        Format::Csv => {
            csv_record(
                out,
                [
                    "theorem",
                    "m_min",
                    "m_max",
                    "cases",
                    "exceptions",
                    "exception_moduli",
                    "defect_min",
                    "defect_max",
                    "mismatch",
                ],
            )?;
            csv_record(
                out,
                [
                    theorem.to_string(),
                    report.m_min.to_string(),
                    report.m_max.to_string(),
                    report.cases.to_string(),
                    report.exceptions.to_string(),
                    moduli,
                    report.defect_min.to_string(),
                    report.defect_max.to_string(),
                    mismatch,
                ],
            )?;
        }
        Format::Plain => {
            writeln!(
                out,
                "theorem {theorem}: {} residue cases for {} <= m <= {}",
                report.cases, report.m_min, report.m_max
            )?;
            writeln!(out, "defect range [{}, {}]", report.defect_min, report.defect_max)?;
            if report.exceptions > 0 {
                writeln!(
                    out,
                    "{} exception classes, at m in {{{}}}",
                    report.exceptions,
                    moduli.replace(';', ", ")
                )?;
            }
            if report.mismatch.is_some() {
                writeln!(out, "MISMATCH {mismatch}")?;
            }
            writeln!(out, "{}", if report.holds() { "holds" } else { "FAILS" })?;
        }
    }
    Ok(if report.holds() { 0 } else { 1 })
}

fn conjecture(ctx: &Ctx, out: Out<'_>, err: Out<'_>, id: ConjectureId, r: &Ranges) -> Result<i32, Failure> {
    let reject = |flag: &str, given: Option<u64>| match given {
        Some(_) => Err(Failure::Usage(format!("{flag} does not apply to conjecture {id}"))),
        None => Ok(()),
    };
    let (params, bounds) = match id {
        ConjectureId::C1_1 => {
            reject("--l-max", r.l_max)?;
            let b = [r.m_max.unwrap_or(16), r.k_max.unwrap_or(8), r.n_max.unwrap_or(10_000)];
            if b[0] < 2 {
                return Err(Failure::Usage("--m-max must be at least 2".into()));
            }
            (format!("m_max={};k_max={};n_max={}", b[0], b[1], b[2]), b)
        }
        ConjectureId::C1_2 => {
            reject("--m-max", r.m_max)?;
            reject("--k-max", r.k_max)?;
            reject("--l-max", r.l_max)?;
            let n = r.n_max.unwrap_or(300);
            (format!("n_max={n}"), [n, 0, 0])
        }
        ConjectureId::C1_3 => {
            reject("--m-max", r.m_max)?;
            let b = [r.k_max.unwrap_or(8), r.l_max.unwrap_or(8), r.n_max.unwrap_or(100)];
            if b[0] < 2 || b[1] < 2 {
                return Err(Failure::Usage("--k-max and --l-max must be at least 2".into()));
            }
            (format!("k_max={};l_max={};n_max={}", b[0], b[1], b[2]), b)
        }
    };

    // Findings go to stderr as they arrive in plain mode; stdout only ever
    // carries the finished report, so it is the same whether or not the
    // cache answered.
    let progress = ctx.format == Format::Plain;
    let op = format!("conjecture:{id}");
    let report: ScanReport = cached(ctx, &mut *err, &op, &params, || {
        let mut log = |f: Finding<'_>| {
            if progress {
                let (kind, c) = match f {
                    Finding::Counterexample(c) => ("counterexample", c),
                    Finding::Alarm(c) => ("ALARM", c),
                };
                eprintln!("{kind} [{}]: {}", joined_params(&c.params), c.detail);
            }
        };
        match id {
            ConjectureId::C1_1 => conjectures::conj_1_1_scan_with(bounds[0], bounds[1], bounds[2], &mut log),
            ConjectureId::C1_2 => conjectures::conj_1_2_scan_with(bounds[0], &mut log),
            ConjectureId::C1_3 => conjectures::conj_1_3_scan_with(bounds[0], bounds[1], bounds[2], &mut log),
        }
    })?;

    let ranges = report
        .ranges
        .iter()
        .map(|r| format!("{}={}..{}", r.name, r.min, r.max))
        .collect::<Vec<_>>()
        .join(";");
    let ok = report.survived();
    match ctx.format {
        Format::Json => emit_json(
            out,
            &json!({ "command": "conjecture", "survived": ok, "report": report }),
        )?,
        Format::Csv => {
            csv_record(out, ["kind", "params", "detail"])?;
            let row = |out: Out<'_>, kind: &str, c: &Counterexample| {
                csv_record(out, [kind, &joined_params(&c.params), &c.detail])
            };
            for c in &report.counterexamples {
                row(out, "counterexample", c)?;
            }
            for c in &report.alarms {
                row(out, "alarm", c)?;
            }
            for &(family, k, l) in &report.survivors {
                csv_record(out, ["survivor", &format!("family={family};k={k};l={l}"), ""])?;
            }
            let summary = format!(
                "cases={};counterexamples={};alarms={}",
                report.cases,
                report.counterexamples.len(),
                report.alarms.len()
            );
            csv_record(out, ["summary", &ranges, &summary])?;
        }
        Format::Plain => {
            writeln!(
                out,
                "conjecture {id}: {} cases over {}",
                report.cases,
                ranges.replace(';', ", ")
            )?;
            for c in &report.counterexamples {
                writeln!(out, "counterexample [{}]: {}", joined_params(&c.params), c.detail)?;
            }
            for c in &report.alarms {
                writeln!(out, "ALARM [{}]: {}", joined_params(&c.params), c.detail)?;
            }
            for family in [1u8, 2] {
                let pairs: Vec<String> = report
                    .survivors
                    .iter()
                    .filter(|s| s.0 == family)
                    .map(|&(_, k, l)| format!("({k},{l})"))
                    .collect();
                if !pairs.is_empty() {
                    writeln!(out, "family {family} survivors: {}", pairs.join(" "))?;
                }
            }
            writeln!(
                out,
                "{}",
                if ok {
                    "no counterexamples"
                } else {
                    "REFUTED or alarm raised"
                }
            )?;
        }
    }
    Ok(if ok { 0 } else { 1 })
}

fn status_fields(r: &FSearchResult) -> (&'static str, String) {
    match r.status {
        FStatus::Zero => ("zero", "0".into()),
        FStatus::Found(n) => ("found", n.to_string()),
        FStatus::UnknownUpTo(_) => ("unknown", String::new()),
    }
}

fn fsearch(
    ctx: &Ctx,
    out: Out<'_>,
    err: Out<'_>,
    targets: &[(u64, u64, Option<u64>)],
    cap: u64,
) -> Result<i32, Failure> {
    let key = |k: u64, l: u64| format!("k={k};l={l};cap={cap}");
    let mut results: Vec<Option<FSearchResult>> = vec![None; targets.len()];
    if let Some(cache) = &ctx.cache {
        for (slot, &(k, l, _)) in results.iter_mut().zip(targets) {
            if let Some(rec) = cache.lookup("fsearch", &key(k, l), err) {
                *slot = serde_json::from_value(rec.payload).ok();
            }
        }
    }
    let missing: Vec<(u64, u64)> = targets
        .iter()
        .zip(&results)
        .filter(|(_, r)| r.is_none())
        .map(|(&(k, l, _), _)| (k, l))
        .collect();
    let fresh = conjectures::f_search_many(&missing, cap)?;
    if let Some(cache) = &ctx.cache {
        for r in &fresh {
            store(cache, err, "fsearch", &key(r.k, r.l), r);
        }
    }
    let mut fresh = fresh.into_iter();
    let results: Vec<FSearchResult> = results
        .into_iter()
        .map(|r| r.or_else(|| fresh.next()).expect("one fresh result per missing pair"))
        .collect();

    let matches: Vec<Option<bool>> = targets
        .iter()
        .zip(&results)
        .map(|(&(_, _, published), r)| published.map(|f| r.status == FStatus::Found(f)))
        .collect();
    let mismatches = matches.iter().filter(|m| **m == Some(false)).count();

    match ctx.format {
        Format::Json => {
            let rows: Vec<Value> = targets
                .iter()
                .zip(&results)
                .zip(&matches)
                .map(|((&(_, _, published), r), m)| {
                    json!({ "k": r.k, "l": r.l, "status": r.status, "published": published, "matches": m })
                })
                .collect();
            emit_json(
                out,
                &json!({ "command": "fsearch", "cap": cap, "mismatches": mismatches, "results": rows }),
            )?;
        }
        Format::Csv => {
            csv_record(out, ["k", "l", "cap", "status", "value", "published", "match"])?;
            for ((&(_, _, published), r), m) in targets.iter().zip(&results).zip(&matches) {
                let (status, value) = status_fields(r);
                csv_record(
                    out,
                    [
                        r.k.to_string(),
                        r.l.to_string(),
                        cap.to_string(),
                        status.to_string(),
                        value,
                        published.map(|f| f.to_string()).unwrap_or_default(),
                        m.map(|m| m.to_string()).unwrap_or_default(),
                    ],
                )?;
            }
        }
        Format::Plain => {
            for ((&(_, _, published), r), m) in targets.iter().zip(&results).zip(&matches) {
                match (published, m) {
                    (Some(f), Some(true)) => writeln!(out, "{r}  (published {f}, ok)")?,
                    (Some(f), _) => writeln!(out, "{r}  (published {f}, MISMATCH)")?,
                    _ => writeln!(out, "{r}")?,
                }
            }
            let compared = matches.iter().filter(|m| m.is_some()).count();
            if compared > 0 {
                writeln!(
                    out,
                    "{} of {compared} published values reproduced",
                    compared - mismatches
                )?;
            }
        }
    }
    Ok(if mismatches == 0 { 0 } else { 1 })
}

fn ratio(ctx: &Ctx, out: Out<'_>, r: &FactorialRatio, n: u64, modulus: Option<u64>) -> Result<i32, Failure> {
    let profile = r.profile(n)?;
    let integrality = r.is_integer_at(n)?;
    let (value, parity, residue) = match integrality {
        Integrality::Integral => {
            let parity = match r.parity(n)? {
                Parity::Even => "even",
                Parity::Odd => "odd",
            };
            let residue = modulus.map(|m| r.reconstruct_mod(n, m)).transpose()?;
            (Some(r.reconstruct(n)?.to_str_radix(10)), Some(parity), residue)
        }
        Integrality::NotIntegral { .. } => (None, None, None),
    };
    let negative = match integrality {
        Integrality::NotIntegral { prime, exponent } => Some((prime, exponent)),
        Integrality::Integral => None,
    };
    match ctx.format {
        Format::Json => {
            let entries: Vec<Value> = profile.entries().iter().map(|&(p, e)| json!([p, e])).collect();
            emit_json(
                out,
                &json!({
                    "command": "ratio",
                    "ratio": r.to_string(),
                    "n": n,
                    "profile": entries,
                    "integral": negative.is_none(),
                    "negative_prime": negative.map(|(p, e)| json!({ "prime": p, "exponent": e })),
                    "parity": parity,
                    "value": value,
                    "modulus": modulus,
                    "residue": residue,
                }),
            )?;
        }
        Format::Csv => {
            csv_record(
                out,
                [
                    "ratio",
                    "n",
                    "integral",
                    "negative_prime",
                    "parity",
                    "value",
                    "modulus",
                    "residue",
                ],
            )?;
            let opt = |v: Option<String>| v.unwrap_or_default();
            csv_record(
                out,
                [
                    r.to_string(),
                    n.to_string(),
                    negative.is_none().to_string(),
                    opt(negative.map(|(p, _)| p.to_string())),
                    opt(parity.map(str::to_string)),
                    opt(value.clone()),
                    opt(modulus.map(|m| m.to_string())),
                    opt(residue.map(|x| x.to_string())),
                ],
            )?;
        }
        Format::Plain => {
            writeln!(out, "{r} at n = {n}")?;
            writeln!(out, "profile {profile}")?;
            match negative {
                Some((p, e)) => writeln!(out, "not an integer: exponent of {p} is {e}")?,
                None => {
                    writeln!(out, "integer, {}", parity.unwrap_or_default())?;
                    writeln!(out, "value {}", value.clone().unwrap_or_default())?;
                    if let (Some(m), Some(x)) = (modulus, residue) {
                        writeln!(out, "value mod {m} = {x}")?;
                    }
                }
            }
        }
    }
    Ok(0)
}
