//! Command-line front end of the `modspec` binary.
//!
//! Results go to standard output as JSON (or a CSV projection of it);
//! diagnostics go to standard error. Exit codes: 0 on success, 1 when a
//! check fails, 2 on usage or input errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Value};

use crate::group::{self, Group};
use crate::hecke::{self, FourierExpansion};
use crate::maass::{self, Archive, ArchiveRecord, Parity, SolverConfig, SpectralCandidate};
use crate::rep::{self, Psi};
use crate::trace::{self, TestFunction};
use crate::{holo, selftest, Error, Result};

/// Seed used when `--seed` is not given.
pub const DEFAULT_SEED: u64 = 20_240_917;
/// Bound on `|X^gn|` in `trace gn-cancel` unless `--tol` overrides it.
pub const GN_TOL: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Parser, Debug)]
#[command(name = "modspec", version, about = "Maass forms, trace formula and Hecke algebra around Gamma0(9)")]
struct Cli {
    #[command(flatten)]
    config: RunConfig,
    #[command(subcommand)]
    command: Command,
}

/// Options shared by every subcommand.
#[derive(Args, Clone, Debug, Serialize)]
pub struct RunConfig {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Seed for the pseudorandom checks.
    #[arg(long, default_value_t = DEFAULT_SEED, global = true)]
    pub seed: u64,
    /// Worker threads for the eigenvalue search.
    #[arg(long, default_value_t = 1, global = true)]
    pub workers: usize,
    /// Overrides the acceptance tolerance of the command.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
}

impl RunConfig {
    fn validate(&self) -> Result<()> {
        if self.workers == 0 {
            return Err(Error::Domain("--workers must be at least 1".into()));
        }
        if let Some(t) = self.tol {
            if !(t > 0.0) {
                return Err(Error::Domain("--tol must be positive".into()));
            }
        }
        Ok(())
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Subgroup data.
    #[command(subcommand)]
    Group(GroupCmd),
    /// Selberg trace formula terms.
    #[command(subcommand)]
    Trace(TraceCmd),
    /// Hecke operators and twists on coefficient files.
    #[command(subcommand)]
    Hecke(HeckeCmd),
    /// Representations of PGL2(F3).
    #[command(subcommand)]
    Rep(RepCmd),
    /// Maass form eigenvalues.
    #[command(subcommand)]
    Spectrum(SpectrumCmd),
    /// Holomorphic q-expansion checks.
    #[command(subcommand)]
    Holo(HoloCmd),
    /// Runs the invariant suite.
    Selftest,
}

#[derive(Subcommand, Debug)]
enum GroupCmd {
    /// Index, cusps, elliptic points and genus.
    Info { name: String },
    /// Coset representatives of SUB in SUPER (default PSL2(Z)).
    Cosets {
        sub: String,
        #[arg(default_value = "psl2z")]
        sup: String,
    },
    /// Compares the word and congruence descriptions of Gamma^3.
    Gamma3Check {
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
    },
}

#[derive(Args, Debug, Clone, Copy)]
struct FamilyArgs {
    #[arg(long, value_enum, default_value_t = Family::Sinc4)]
    family: Family,
    /// Scale of the sinc4 family.
    #[arg(long = "T", default_value_t = 2.0)]
    t: f64,
    /// Width of the Gaussian family.
    #[arg(long, default_value_t = 1.0)]
    sigma: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Family {
    Sinc4,
    Gaussian,
}

impl FamilyArgs {
    fn test_function(&self) -> Result<TestFunction> {
        match self.family {
            Family::Sinc4 => TestFunction::sinc_fourth(self.t),
            Family::Gaussian => TestFunction::gaussian(self.sigma),
        }
    }
}

#[derive(Subcommand, Debug)]
enum TraceCmd {
    /// Identity, elliptic and parabolic terms for one group.
    Eval {
        #[arg(long)]
        group: String,
        #[command(flatten)]
        family: FamilyArgs,
    },
    /// The combination X(9) + 3X(1) - 3X(3) - X(Gamma^3) of every term.
    GnCancel {
        #[command(flatten)]
        family: FamilyArgs,
    },
}

#[derive(Subcommand, Debug)]
enum HeckeCmd {
    /// Builds (F+, F-) from a coefficient file of [n, re, im] rows.
    Pair {
        #[arg(long)]
        input: PathBuf,
    },
    /// Coset and coefficient identities relating T_p to J and T^(1/3).
    TpIdentities {
        #[arg(long)]
        p: u64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Switch {
    On,
    Off,
}

#[derive(Subcommand, Debug)]
enum RepCmd {
    /// Decomposes the representation induced from a subgroup image (with J).
    Decompose {
        #[arg(long)]
        subgroup: String,
        /// Induce the sign of the determinant instead of the trivial character.
        #[arg(long, value_enum, default_value_t = Switch::Off)]
        sign: Switch,
    },
    /// Kernel of W, the S3 case and the four correspondences.
    Checks,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ParityArg {
    Even,
    Odd,
    Both,
}

#[derive(Subcommand, Debug)]
enum SpectrumCmd {
    /// Searches a window and appends the accepted eigenvalues to the archive.
    Scan {
        #[arg(long)]
        level: u64,
        #[arg(long)]
        from: f64,
        #[arg(long)]
        to: f64,
        #[arg(long, value_enum, default_value_t = ParityArg::Both)]
        parity: ParityArg,
        #[arg(long, default_value_t = 0.01)]
        step: f64,
        /// Archive file; defaults to $MODSPEC_ARCHIVE, then spectrum.jsonl.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Labels every archived eigenvalue against the lower levels.
    Classify {
        #[arg(long)]
        archive: Option<PathBuf>,
    },
    /// Parity doublings and Gamma^3 lifts among the archived eigenvalues.
    Report {
        #[arg(long)]
        archive: Option<PathBuf>,
        #[arg(long, default_value_t = 9)]
        level: u64,
        #[arg(long, default_value_t = 12.0)]
        r_max: f64,
    },
}

#[derive(Subcommand, Debug)]
enum HoloCmd {
    /// The weight-12 example and the dimension cancellation.
    Check {
        #[arg(long, default_value_t = 200)]
        kmax: u32,
    },
}

/// What a command produced, and whether its checks held.
struct Outcome {
    value: Value,
    holds: bool,
}

impl Outcome {
    fn ok(v: impl Serialize) -> Result<Self> {
        Ok(Outcome { value: serde_json::to_value(v)?, holds: true })
    }
    fn checked(v: impl Serialize, holds: bool) -> Result<Self> {
        Ok(Outcome { value: serde_json::to_value(v)?, holds })
    }
}

/// Parses `std::env::args` and runs the command.
pub fn run() -> i32 {
    let mut out = std::io::stdout().lock();
    let mut err = std::io::stderr().lock();
    run_with(std::env::args_os(), &mut out, &mut err)
}

/// Same as [`run`] with explicit arguments and streams.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let result = cli.config.validate().and_then(|_| dispatch(&cli.command, &cli.config));
    match result {
        Ok(outcome) => {
            let text = match cli.config.format {
                Format::Json => serde_json::to_string_pretty(&outcome.value).map(|s| s + "\n").map_err(Error::from),
                Format::Csv => to_csv(&outcome.value),
            };
            match text {
                Ok(t) => {
                    let _ = out.write_all(t.as_bytes());
                }
                Err(e) => {
                    let _ = writeln!(err, "modspec: {e}");
                    return 1;
                }
            }
            if outcome.holds {
                0
            } else {
                let _ = writeln!(err, "modspec: check failed");
                1
            }
        }
        Err(e) => {
            let _ = writeln!(err, "modspec: {e}");
            exit_code(&e)
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::CheckFailed(_) | Error::Convergence { .. } => 1,
        _ => 2,
    }
}

fn parse_group(name: &str) -> Result<Group> {
    name.parse()
}

fn dispatch(cmd: &Command, cfg: &RunConfig) -> Result<Outcome> {
    match cmd {
        Command::Group(c) => group_cmd(c),
        Command::Trace(c) => trace_cmd(c, cfg),
        Command::Hecke(c) => hecke_cmd(c, cfg),
        Command::Rep(c) => rep_cmd(c),
        Command::Spectrum(c) => spectrum_cmd(c, cfg),
        Command::Holo(HoloCmd::Check { kmax }) => {
            let twist = holo::verify_twist_example()?;
            let dims = holo::gn_dimension_cancellation(*kmax)?;
            let holds = twist.holds && dims.holds;
            Outcome::checked(json!({ "twist_example": twist, "dimension_cancellation": dims }), holds)
        }
        Command::Selftest => {
            let report = selftest::run(cfg.seed);
            let holds = report.all_pass();
            Outcome::checked(report, holds)
        }
    }
}

fn group_cmd(c: &GroupCmd) -> Result<Outcome> {
    match c {
        GroupCmd::Info { name } => {
            let g = parse_group(name)?;
            let s = g.signature()?;
            Outcome::ok(json!({
                "group": g.to_string(),
                "mu": s.index,
                "kappa": s.cusps,
                "v2": s.v2,
                "v3": s.v3,
                "genus": s.genus,
                "cusp_widths": s.cusp_widths,
            }))
        }
        GroupCmd::Cosets { sub, sup } => {
            let (g, h) = (parse_group(sub)?, parse_group(sup)?);
            let reps = group::coset_reps(&g, &h)?;
            let rows: Vec<[i64; 4]> = reps
                .iter()
                .map(|m| m.entries_i64().ok_or_else(|| Error::Domain("entries too large".into())))
                .collect::<Result<_>>()?;
            Outcome::ok(json!({ "sub": g.to_string(), "super": h.to_string(), "count": rows.len(), "reps": rows }))
        }
        GroupCmd::Gamma3Check { samples } => {
            let r = group::gamma3_dual_check(*samples, 0)?;
            let holds = r.holds;
            Outcome::checked(r, holds)
        }
    }
}

fn trace_cmd(c: &TraceCmd, cfg: &RunConfig) -> Result<Outcome> {
    match c {
        TraceCmd::Eval { group, family } => {
            let g = parse_group(group)?;
            let f = family.test_function()?;
            Outcome::ok(trace::trace_terms(&g, &f)?)
        }
        TraceCmd::GnCancel { family } => {
            let f = family.test_function()?;
            let tol = cfg.tol.unwrap_or(GN_TOL);
            let r = trace::genuinely_new_residuals(&f)?;
            let holds = r.max_abs() <= tol;
            Outcome::checked(json!({ "residuals": r, "tolerance": tol, "holds": holds }), holds)
        }
    }
}

fn read_coefficients(path: &std::path::Path) -> Result<FourierExpansion<Complex64>> {
    let text = std::fs::read_to_string(path)?;
    let rows: Vec<(i64, f64, f64)> = serde_json::from_str(&text)?;
    let m = rows.iter().map(|r| r.0.unsigned_abs() as usize).max().unwrap_or(0);
    if m == 0 {
        return Err(Error::Domain("coefficient file has no nonzero n".into()));
    }
    let mut vals = std::collections::HashMap::new();
    for (n, re, im) in rows {
        if n == 0 {
            return Err(Error::Domain("a(0) is not allowed for a cusp form".into()));
        }
        if vals.insert(n, Complex64::new(re, im)).is_some() {
            return Err(Error::Domain(format!("a({n}) given twice")));
        }
    }
    Ok(FourierExpansion::from_fn(0.0, 9, m, |n| vals.get(&n).copied().unwrap_or_default()))
}

fn rows(e: &FourierExpansion<Complex64>) -> Vec<(i64, f64, f64)> {
    e.iter().map(|(n, a)| (n, a.re, a.im)).collect()
}

fn hecke_cmd(c: &HeckeCmd, cfg: &RunConfig) -> Result<Outcome> {
    match c {
        HeckeCmd::Pair { input } => {
            let phi = read_coefficients(input)?;
            let (plus, minus) = hecke::build_pair(&phi)?;
            Outcome::ok(json!({ "cplus": rows(&plus), "cminus": rows(&minus) }))
        }
        HeckeCmd::TpIdentities { p } => {
            let mut checks = hecke::tp_coset_checks(*p)?;
            checks.extend(hecke::tp_coefficient_checks(*p, cfg.seed)?);
            let holds = checks.iter().all(|c| c.holds);
            Outcome::checked(json!({ "p": p, "checks": checks }), holds)
        }
    }
}

fn rep_cmd(c: &RepCmd) -> Result<Outcome> {
    match c {
        RepCmd::Decompose { subgroup, sign } => {
            let g = parse_group(subgroup)?;
            let psi = if *sign == Switch::On { Psi::Sign } else { Psi::Trivial };
            let d = rep::decompose_named(&g, psi)?;
            Outcome::ok(json!({ "subgroup": g.to_string(), "psi": psi, "summary": d.summary(), "multiplicities": d.multiplicities }))
        }
        RepCmd::Checks => {
            let kernel = rep::kernel_of_w_check()?;
            let s3 = rep::pgl2f2_s3_check()?;
            let items = rep::correspondence_items()?;
            let holds = kernel.holds && s3.holds && items.iter().all(|i| i.holds);
            Outcome::checked(json!({ "kernel_of_w": kernel, "pgl2f2": s3, "correspondences": items }), holds)
        }
    }
}

fn candidates(records: &[ArchiveRecord]) -> Vec<SpectralCandidate> {
    records.iter().map(ArchiveRecord::to_candidate).collect()
}

fn spectrum_cmd(c: &SpectrumCmd, cfg: &RunConfig) -> Result<Outcome> {
    match c {
        SpectrumCmd::Scan { level, from, to, parity, step, out } => {
            if !matches!(level, 1 | 3 | 9) {
                return Err(Error::Domain(format!("level {level} is not one of 1, 3, 9")));
            }
            let solver = SolverConfig { grid_step: *step, residual_tol: cfg.tol.unwrap_or(1e-6), ..SolverConfig::default() };
            let archive = Archive::resolve(out.as_deref());
            // a foreign or corrupt archive is rejected before any computing
            let existing = candidates(&archive.load()?);
            let parities = match parity {
                ParityArg::Even => vec![Parity::Even],
                ParityArg::Odd => vec![Parity::Odd],
                ParityArg::Both => vec![Parity::Even, Parity::Odd],
            };
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(cfg.workers)
                .build()
                .map_err(|e| Error::Unsupported(format!("worker pool: {e}")))?;
            let mut found = Vec::new();
            for p in parities {
                found.extend(pool.install(|| maass::find_eigenvalues(*level, *from, *to, p, &solver))?);
            }
            let mut context = existing.clone();
            context.extend(found.iter().cloned());
            for cand in &mut found {
                cand.labels = maass::classify(cand, &context);
            }
            let records: Vec<ArchiveRecord> = found.iter().map(ArchiveRecord::from_candidate).collect();
            archive.append(&records)?;
            Outcome::ok(json!({ "archive": archive.path(), "found": records }))
        }
        SpectrumCmd::Classify { archive } => {
            let archive = Archive::resolve(archive.as_deref());
            let all = candidates(&archive.load()?);
            let labelled: Vec<Value> = all
                .iter()
                .map(|c| json!({ "level": c.level, "R": c.r, "parity": c.parity, "label": maass::classify(c, &all) }))
                .collect();
            Outcome::ok(labelled)
        }
        SpectrumCmd::Report { archive, level, r_max } => {
            let archive = Archive::resolve(archive.as_deref());
            let all = candidates(&archive.load()?);
            Outcome::ok(maass::multiplicity_report(&all, *level, *r_max))
        }
    }
}

/// Flattens the first array of objects found in `v` (or `v` itself) into
/// CSV; nested values become compact JSON cells.
fn to_csv(v: &Value) -> Result<String> {
    let rows: Vec<&Value> = match v {
        Value::Array(a) => a.iter().collect(),
        Value::Object(o) => match o.values().find(|x| matches!(x, Value::Array(a) if a.first().is_some_and(Value::is_object))) {
            Some(Value::Array(a)) => a.iter().collect(),
            _ => vec![v],
        },
        _ => vec![v],
    };
    let mut header: Vec<String> = Vec::new();
    for r in &rows {
        if let Value::Object(o) = r {
            for k in o.keys() {
                if !header.contains(k) {
                    header.push(k.clone());
                }
            }
        }
    }
    let cell = |x: Option<&Value>| match x {
        None | Some(Value::Null) => String::new(),
        Some(Value::String(s)) => s.clone(),
        Some(other) => other.to_string(),
    };
    let mut w = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| Error::Unsupported(format!("csv: {e}"));
    if header.is_empty() {
        w.write_record(["value"]).map_err(csv_err)?;
        for r in &rows {
            w.write_record([cell(Some(r))]).map_err(csv_err)?;
        }
    } else {
        w.write_record(&header).map_err(csv_err)?;
        for r in &rows {
            w.write_record(header.iter().map(|k| cell(r.get(k)))).map_err(csv_err)?;
        }
    }
    let bytes = w.into_inner().map_err(|e| Error::Unsupported(format!("csv: {e}")))?;
    String::from_utf8(bytes).map_err(|e| Error::Unsupported(format!("csv: {e}")))
}
