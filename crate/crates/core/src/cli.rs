//! Command-line interface. [`run`] returns the exit code and captured output
//! so the binary stays a thin wrapper and tests can drive it directly.
//!
//! Exit codes: 0 success, 1 a check failed, 2 usage or input error,
//! 3 unsupported mode, 4 resource budget exceeded.

use crate::classfile::{build_class, write_class, ClassFileError, ClassSpec};
use crate::clkit::{affine_parameter, is_degree_one, spread_profile, ClassError, Host, LineClass};
use crate::exactmath::{fmt_rational, gaussian_binomial, ExactInt, MathError, PrimePower};
use crate::galois::{catalog_entry, FieldError, MAX_Q};
use crate::geometry::{
    all_spreads_pg32, regular_spread_pg3, AffineSpace, GeometryError, ProjectiveSpace, Subspace, DEFAULT_BUDGET,
    ORDERING_VERSION,
};
use crate::sieve::{fmt_plain, run_sieve, FeasibilityReport, Mode, SieveConfig, SieveError, SpaceKind};
use crate::verifiers::{
    sample_planes_meeting, search_cl_pg32, star3, verify_chain, verify_count1, verify_count2, verify_drudge,
    verify_le_compare, verify_le_extra, verify_le_extra_as_stated, verify_main1_doublecount, verify_maineq2,
    verify_metsch_all, verify_modular_t, verify_segre, verify_skewlines, CheckResult, CompareObject,
    DEFAULT_PLANE_SAMPLES,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Instant;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_UNSUPPORTED: i32 = 3;
pub const EXIT_BUDGET: i32 = 4;

/// Default number of sample points for per-point checks.
pub const DEFAULT_POINT_SAMPLES: usize = 20;

#[derive(Debug, Parser)]
#[command(name = "clsieve", version, about = "Cameron-Liebler line class parameter sieve and verifiers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Apply every feasibility condition to a range of parameters.
    Sieve(SieveArgs),
    /// Run a brute-force check on an explicit class.
    Verify(VerifyArgs),
    /// Exhaustive search for classes of PG(3,2) with a given parameter.
    Search(SearchArgs),
    /// Point, line and spread counts of a space.
    Geometry(GeometryArgs),
    /// Supported field orders and their defining polynomials.
    Catalog(CatalogArgs),
    /// Build a class, summarise it and optionally write it to a file.
    Class(ClassArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Space {
    Pg,
    Ag,
}

impl From<Space> for SpaceKind {
    fn from(s: Space) -> Self {
        match s {
            Space::Pg => SpaceKind::Pg,
            Space::Ag => SpaceKind::Ag,
        }
    }
}

#[derive(Debug, Args)]
struct Common {
    /// Worker threads (default: all cores). Output does not depend on it.
    #[arg(long)]
    jobs: Option<usize>,
    /// Cap on materialised point-line incidence bits.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Seed for sampling.
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Add wall-clock timing to the output (makes it non-reproducible).
    #[arg(long)]
    timing: bool,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
}

#[derive(Debug, Args)]
struct SieveArgs {
    #[arg(long, value_enum)]
    space: Space,
    #[arg(long)]
    n: u32,
    #[arg(long, default_value_t = 1)]
    k: u32,
    #[arg(long)]
    q: u64,
    /// Largest parameter to test (default: the full parameter, or half of it
    /// with --fold-complement).
    #[arg(long)]
    x_max: Option<u64>,
    /// Only enumerate up to half the full parameter.
    #[arg(long)]
    fold_complement: bool,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CheckName {
    Skewlines,
    Metsch,
    Main1,
    LeExtra,
    LeExtraAsStated,
    Count1,
    Count2,
    Maineq2,
    Chain,
    ModularT,
    Drudge,
    LeCompare,
    Segre,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long, value_enum)]
    check: CheckName,
    #[arg(long, value_enum, default_value_t = Space::Pg)]
    space: Space,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    q: u64,
    /// pencil[:P], hyperplane[:H], union[:P:H], complement:<spec>,
    /// file:<path>, empty or full.
    #[arg(long, default_value = "pencil")]
    class: String,
    #[arg(long)]
    point: Option<usize>,
    /// Plane index in canonical order (modular-t).
    #[arg(long)]
    plane: Option<usize>,
    #[arg(long)]
    line: Option<usize>,
    /// Subspace index in canonical order, with --dim (drudge).
    #[arg(long)]
    subspace: Option<usize>,
    /// Dimension of --subspace (drudge; default n-1).
    #[arg(long)]
    dim: Option<usize>,
    /// Subspace dimensions for the segre check.
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    j: Option<usize>,
    /// Sample size for sampled points or planes.
    #[arg(long)]
    samples: Option<usize>,
    /// Enumerate everything instead of sampling.
    #[arg(long)]
    full: bool,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct SearchArgs {
    #[arg(long, value_enum, default_value_t = Space::Pg)]
    space: Space,
    #[arg(long, default_value_t = 3)]
    n: usize,
    #[arg(long, default_value_t = 2)]
    q: u64,
    #[arg(long)]
    x: usize,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct GeometryArgs {
    #[arg(long, value_enum, default_value_t = Space::Pg)]
    space: Space,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    q: u64,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct CatalogArgs {
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct ClassArgs {
    #[arg(long, value_enum, default_value_t = Space::Pg)]
    space: Space,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    q: u64,
    #[arg(long, default_value = "pencil")]
    class: String,
    /// Write the class file here.
    #[arg(long)]
    out: Option<std::path::PathBuf>,
    #[command(flatten)]
    common: Common,
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Unsupported(String),
    Budget(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Unsupported(_) => EXIT_UNSUPPORTED,
            CliError::Budget(_) => EXIT_BUDGET,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Unsupported(m) | CliError::Budget(m) => m,
        }
    }
}

impl From<GeometryError> for CliError {
    fn from(e: GeometryError) -> Self {
        match e {
            GeometryError::Budget { .. } => CliError::Budget(e.to_string()),
            GeometryError::Field(_) => CliError::Unsupported(e.to_string()),
            GeometryError::Domain(_) => CliError::Usage(e.to_string()),
        }
    }
}

impl From<ClassError> for CliError {
    fn from(e: ClassError) -> Self {
        match e {
            ClassError::Geometry(g) => g.into(),
            ClassError::Unsupported(_) => CliError::Unsupported(e.to_string()),
            ClassError::Math(MathError::NotPrimePower(_)) => CliError::Unsupported(e.to_string()),
            ClassError::Domain(_) | ClassError::Math(_) => CliError::Usage(e.to_string()),
        }
    }
}

impl From<ClassFileError> for CliError {
    fn from(e: ClassFileError) -> Self {
        match e {
            ClassFileError::Class(c) => c.into(),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<SieveError> for CliError {
    fn from(e: SieveError) -> Self {
        match e {
            SieveError::Unsupported(_) => CliError::Unsupported(e.to_string()),
            SieveError::TooMany(_) => CliError::Budget(e.to_string()),
        }
    }
}

impl From<MathError> for CliError {
    fn from(e: MathError) -> Self {
        CliError::Unsupported(e.to_string())
    }
}

struct Rendered {
    code: i32,
    text: String,
}

/// Runs the tool on a full argument vector (program name first).
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args: Vec<std::ffi::OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => Outcome {
                    code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                },
                _ => Outcome {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: text,
                },
            };
        }
    };
    let command_line = args
        .iter()
        .skip(1)
        .map(|a| a.to_string_lossy().into_owned())
        .collect::<Vec<_>>()
        .join(" ");
    let common = match &cli.command {
        Command::Sieve(a) => &a.common,
        Command::Verify(a) => &a.common,
        Command::Search(a) => &a.common,
        Command::Geometry(a) => &a.common,
        Command::Catalog(a) => &a.common,
        Command::Class(a) => &a.common,
    };
    let ctx = Context {
        command_line,
        seed: common.seed,
        timing: common.timing,
        format: common.format,
        budget: common.budget,
        start: Instant::now(),
    };
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(j) = common.jobs {
        pool = pool.num_threads(j.max(1));
    }
    let pool = match pool.build() {
        Ok(p) => p,
        Err(e) => {
            return Outcome {
                code: EXIT_USAGE,
                stdout: String::new(),
                stderr: format!("error: cannot start worker pool: {e}\n"),
            }
        }
    };
    let result = pool.install(|| match &cli.command {
        Command::Sieve(a) => cmd_sieve(&ctx, a),
        Command::Verify(a) => cmd_verify(&ctx, a),
        Command::Search(a) => cmd_search(&ctx, a),
        Command::Geometry(a) => cmd_geometry(&ctx, a),
        Command::Catalog(_) => cmd_catalog(&ctx),
        Command::Class(a) => cmd_class(&ctx, a),
    });
    match result {
        Ok(r) => Outcome {
            code: r.code,
            stdout: if ctx.format == Format::Table {
                format!("{}{}", ctx.manifest_line(), r.text)
            } else {
                r.text
            },
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: e.code(),
            stdout: String::new(),
            stderr: format!("error: {}\n", e.message()),
        },
    }
}

struct Context {
    command_line: String,
    seed: u64,
    timing: bool,
    format: Format,
    budget: u64,
    start: Instant,
}

impl Context {
    fn manifest(&self) -> Value {
        let mut m = json!({
            "tool": "clsieve",
            "version": env!("CARGO_PKG_VERSION"),
            "ordering_version": ORDERING_VERSION,
            "command": self.command_line,
            "seed": self.seed.to_string(),
        });
        if self.timing {
            m["elapsed_ms"] = json!(self.start.elapsed().as_millis().to_string());
        }
        m
    }

    fn manifest_line(&self) -> String {
        format!(
            "# clsieve {} ordering-version {} seed {}: {}\n",
            env!("CARGO_PKG_VERSION"),
            ORDERING_VERSION,
            self.seed,
            self.command_line
        )
    }

    fn json(&self, mut payload: Value) -> String {
        payload["manifest"] = self.manifest();
        let mut s = serde_json::to_string_pretty(&payload).expect("serialisable");
        s.push('\n');
        s
    }

    fn timing_line(&self) -> String {
        if self.timing {
            format!("elapsed: {} ms\n", self.start.elapsed().as_millis())
        } else {
            String::new()
        }
    }

    fn reject_csv(&self, what: &str) -> Result<(), CliError> {
        if self.format == Format::Csv {
            return Err(CliError::Usage(format!("--format csv is only available for sieve, not {what}")));
        }
        Ok(())
    }
}

fn order(q: u64) -> Result<PrimePower, CliError> {
    let pp = PrimePower::new(q)?;
    if pp.q() > MAX_Q {
        return Err(CliError::Unsupported(FieldError::Unsupported(pp.q()).to_string()));
    }
    Ok(pp)
}

// ---------------------------------------------------------------- sieve

#[derive(Serialize)]
struct TrialView {
    m: u64,
    value: String,
}

#[derive(Serialize)]
struct VerdictView {
    name: &'static str,
    applicable: bool,
    feasible: bool,
    witness: Option<String>,
    reason: String,
    exhaustion: Vec<TrialView>,
}

#[derive(Serialize)]
struct ReportView {
    x: String,
    complement: String,
    verdicts: Vec<VerdictView>,
    feasible: bool,
    complement_feasible: bool,
}

fn report_view(r: &FeasibilityReport) -> ReportView {
    ReportView {
        x: fmt_rational(&r.x),
        complement: fmt_rational(&r.complement),
        verdicts: r
            .verdicts
            .iter()
            .map(|v| VerdictView {
                name: v.name,
                applicable: v.applicable,
                feasible: v.feasible,
                witness: v.witness.as_ref().map(|w| w.to_string()),
                reason: v.reason.clone(),
                exhaustion: v
                    .exhaustion
                    .iter()
                    .map(|t| TrialView {
                        m: t.residue,
                        value: t.value.to_string(),
                    })
                    .collect(),
            })
            .collect(),
        feasible: r.feasible,
        complement_feasible: r.complement_feasible,
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn cmd_sieve(ctx: &Context, a: &SieveArgs) -> Result<Rendered, CliError> {
    let mode = Mode {
        space: a.space.into(),
        n: a.n,
        k: a.k,
        q: order(a.q)?,
    };
    let config = SieveConfig {
        mode,
        x_max: a.x_max.map(ExactInt::from),
        fold_complement: a.fold_complement,
    };
    let reports = run_sieve(&config)?;
    let label = format!("{}({},{})", mode.space.as_str().to_uppercase(), a.n, a.q);
    let text = match ctx.format {
        Format::Json => ctx.json(json!({
            "schema": "clsieve-sieve/1",
            "space": mode.space.as_str(),
            "n": a.n,
            "k": a.k,
            "q": a.q,
            "full_parameter": fmt_rational(&mode.full_parameter()),
            "fold_complement": a.fold_complement,
            "reports": reports.iter().map(report_view).collect::<Vec<_>>(),
        })),
        Format::Csv => {
            let mut out = String::from("x,condition,applicable,feasible,witness\n");
            for r in &reports {
                let x = fmt_plain(&r.x);
                for v in &r.verdicts {
                    let w = v.witness.as_ref().map(|w| w.to_string()).unwrap_or_default();
                    let _ = writeln!(out, "{x},{},{},{},{}", v.name, v.applicable, v.feasible, csv_field(&w));
                }
                let _ = writeln!(out, "{x},all,true,{},", r.feasible);
            }
            out
        }
        Format::Table => {
            let feasible = reports.iter().filter(|r| r.feasible).count();
            let mut out = format!(
                "{label}, k = {}: full parameter {}, {} parameters tested, {} feasible\n",
                a.k,
                fmt_plain(&mode.full_parameter()),
                reports.len(),
                feasible
            );
            let _ = writeln!(out, "{:>12}  {:>12}  {:<8}  {:<10}  excluded by", "x", "complement", "feasible", "compl.");
            for r in &reports {
                let excluded: Vec<&str> = r.verdicts.iter().filter(|v| v.excludes()).map(|v| v.name).collect();
                let _ = writeln!(
                    out,
                    "{:>12}  {:>12}  {:<8}  {:<10}  {}",
                    fmt_plain(&r.x),
                    fmt_plain(&r.complement),
                    if r.feasible { "yes" } else { "no" },
                    if r.complement_feasible { "yes" } else { "no" },
                    excluded.join(", ")
                );
            }
            out.push_str(&ctx.timing_line());
            out
        }
    };
    Ok(Rendered { code: EXIT_OK, text })
}

// --------------------------------------------------------------- verify

#[derive(Serialize)]
struct CheckView {
    name: String,
    host: String,
    inputs: BTreeMap<String, String>,
    lhs: String,
    rhs: String,
    modulus: String,
    pass: bool,
    applicable: bool,
    note: String,
}

fn check_view(c: &CheckResult) -> CheckView {
    CheckView {
        name: c.name.clone(),
        host: c.host.clone(),
        inputs: c.inputs.iter().cloned().collect(),
        lhs: fmt_plain(&c.lhs),
        rhs: fmt_plain(&c.rhs),
        modulus: c.modulus.to_string(),
        pass: c.pass,
        applicable: c.applicable,
        note: c.note.clone(),
    }
}

/// Deterministic point sample: point 0 plus `count - 1` seeded distinct
/// points, ascending; every point when `count` covers the space.
pub fn sample_points(num_points: usize, count: usize, seed: u64) -> Vec<usize> {
    if count >= num_points {
        return (0..num_points).collect();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pts: Vec<usize> = sample(&mut rng, num_points - 1, count.saturating_sub(1))
        .into_iter()
        .map(|p| p + 1)
        .collect();
    pts.push(0);
    pts.sort_unstable();
    pts
}

/// A seeded random `d`-space of PG(n,q).
pub fn random_subspace(space: &ProjectiveSpace, d: usize, rng: &mut impl Rng) -> Subspace {
    loop {
        let rows = (0..=d)
            .map(|_| (0..=space.n()).map(|_| rng.gen_range(0..space.q()) as u8).collect())
            .collect();
        if let Some(s) = Subspace::from_vectors(space, rows) {
            if s.dim() == d {
                return s;
            }
        }
    }
}

fn nth_subspace(space: &ProjectiveSpace, d: usize, i: usize) -> Result<Subspace, CliError> {
    let mut all = space.enumerate_subspaces(d)?;
    if i >= all.len() {
        return Err(CliError::Usage(format!("subspace index {i} out of range 0..{}", all.len())));
    }
    Ok(all.swap_remove(i))
}

enum Built {
    Projective(ProjectiveSpace),
    Affine(AffineSpace),
}

impl Built {
    fn new(space: Space, n: usize, q: u64, budget: u64) -> Result<Self, CliError> {
        order(q)?;
        Ok(match space {
            Space::Pg => Built::Projective(ProjectiveSpace::with_budget(n, q, budget)?),
            Space::Ag => Built::Affine(AffineSpace::with_budget(n, q, budget)?),
        })
    }

    fn host(&self) -> Host<'_> {
        match self {
            Built::Projective(s) => Host::Projective(s),
            Built::Affine(a) => Host::Affine(a),
        }
    }
}

fn point_list(ctx: &Context, a: &VerifyArgs, space: &ProjectiveSpace, all_by_default: bool) -> Vec<usize> {
    if let Some(p) = a.point {
        return vec![p];
    }
    if a.full || all_by_default {
        return (0..space.num_points()).collect();
    }
    sample_points(space.num_points(), a.samples.unwrap_or(DEFAULT_POINT_SAMPLES), ctx.seed)
}

fn run_checks(ctx: &Context, a: &VerifyArgs, l: &LineClass) -> Result<Vec<CheckResult>, CliError> {
    let space = l.space();
    let mut out = Vec::new();
    match a.check {
        CheckName::Skewlines => {
            let lines: Vec<usize> = match a.line {
                Some(x) => vec![x],
                None => (0..space.num_lines()).collect(),
            };
            for line in lines {
                out.push(verify_skewlines(l, line)?);
            }
        }
        CheckName::Metsch => out = verify_metsch_all(l)?,
        CheckName::Main1 => {
            let affine = l
                .host()
                .affine()
                .ok_or_else(|| CliError::Unsupported("main1 needs --space ag".into()))?;
            let pts: Vec<usize> = match a.point {
                Some(p) => vec![p],
                None => affine.infinity_points().collect(),
            };
            for p in pts {
                out.push(verify_main1_doublecount(l, p)?);
            }
        }
        CheckName::LeExtra | CheckName::LeExtraAsStated | CheckName::Count1 | CheckName::Count2 | CheckName::Chain => {
            if l.host().is_affine() {
                return Err(CliError::Unsupported("per-point identities need --space pg".into()));
            }
            if a.check == CheckName::Count2 && (space.n() < 7 || space.n().is_multiple_of(2)) {
                return Err(CliError::Usage(format!("count2 needs n >= 7 odd, got {}", space.n())));
            }
            for p in point_list(ctx, a, space, false) {
                let star = star3(space, p)?;
                match a.check {
                    CheckName::LeExtra => out.push(verify_le_extra(l, &star)?),
                    CheckName::LeExtraAsStated => out.push(verify_le_extra_as_stated(l, &star)?),
                    CheckName::Count1 => {
                        let (x, y) = verify_count1(l, &star)?;
                        out.push(x);
                        out.push(y);
                    }
                    CheckName::Count2 => out.push(verify_count2(l, &star)?),
                    _ => out.push(verify_chain(l, &star)?),
                }
            }
        }
        CheckName::Maineq2 => {
            for p in point_list(ctx, a, space, true) {
                out.push(verify_maineq2(l, p)?);
            }
        }
        CheckName::ModularT => {
            let planes = match a.plane {
                Some(i) => vec![nth_subspace(space, 2, i)?],
                None if a.full => space.enumerate_subspaces(2)?,
                None => sample_planes_meeting(l, a.samples.unwrap_or(DEFAULT_PLANE_SAMPLES), ctx.seed),
            };
            for pi in &planes {
                out.push(verify_modular_t(l, pi)?);
            }
        }
        CheckName::Drudge => {
            let dim = a.dim.unwrap_or(space.n() - 1);
            let taus = match a.subspace {
                Some(i) => vec![nth_subspace(space, dim, i)?],
                None => space.enumerate_subspaces(dim)?,
            };
            for tau in &taus {
                let pts: Vec<usize> = match a.point {
                    Some(p) => vec![p],
                    None => tau.points().iter().map(|&p| p as usize).collect(),
                };
                for p in pts {
                    out.push(verify_drudge(l, p, tau)?);
                }
            }
        }
        CheckName::LeCompare => {
            let affine = l
                .host()
                .affine()
                .ok_or_else(|| CliError::Unsupported("le-compare needs --space ag".into()))?;
            if a.point.is_none() {
                for pi in affine.enumerate_subspaces(affine.n() - 1)? {
                    out.push(verify_le_compare(l, CompareObject::Hyperplane(&pi))?);
                }
            }
            let pts: Vec<usize> = match a.point {
                Some(p) => vec![p],
                None => affine.affine_points().collect(),
            };
            for p in pts {
                out.push(verify_le_compare(l, CompareObject::Point(p))?);
            }
        }
        CheckName::Segre => {
            let (Some(m), Some(j)) = (a.m, a.j) else {
                return Err(CliError::Usage("segre needs --m and --j".into()));
            };
            if m + j >= space.n() {
                return Err(CliError::Usage(format!("need m + j < n, got m = {m}, j = {j}")));
            }
            let us = if a.full {
                space.enumerate_subspaces(m)?
            } else {
                let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
                let count = a.samples.unwrap_or(DEFAULT_POINT_SAMPLES);
                (0..count).map(|_| random_subspace(space, m, &mut rng)).collect()
            };
            for u in &us {
                out.push(verify_segre(space, u, j)?);
            }
        }
    }
    Ok(out)
}

fn cmd_verify(ctx: &Context, a: &VerifyArgs) -> Result<Rendered, CliError> {
    ctx.reject_csv("verify")?;
    let spec: ClassSpec = a.class.parse()?;
    let built = Built::new(a.space, a.n, a.q, ctx.budget)?;
    let class = build_class(built.host(), &spec)?;
    let results = run_checks(ctx, a, &class)?;
    let failed = results.iter().filter(|r| r.failed()).count();
    let skipped = results.iter().filter(|r| !r.applicable).count();
    let passed = results.len() - failed - skipped;
    let code = if failed > 0 { EXIT_CHECK_FAILED } else { EXIT_OK };
    let check = a.check.to_possible_value().expect("named").get_name().to_string();
    let parameter = class.parameter().map(fmt_rational);
    let text = match ctx.format {
        Format::Json => ctx.json(json!({
            "schema": "clsieve-verify/1",
            "check": check,
            "host": built.host().describe(),
            "class": spec.to_string(),
            "class_size": class.len(),
            "parameter": parameter,
            "results": results.iter().map(check_view).collect::<Vec<_>>(),
            "summary": {"total": results.len(), "passed": passed, "failed": failed, "not_applicable": skipped},
        })),
        _ => {
            let mut out = format!(
                "{check} on {} for class {} ({} lines, x = {})\n",
                built.host().describe(),
                spec,
                class.len(),
                parameter.as_deref().unwrap_or("undefined")
            );
            for r in &results {
                let status = match (r.applicable, r.pass) {
                    (false, _) => "N/A ",
                    (true, true) => "PASS",
                    (true, false) => "FAIL",
                };
                let inputs: Vec<String> = r.inputs.iter().map(|(k, v)| format!("{k}={v}")).collect();
                let relation = if r.modulus == ExactInt::from(0) {
                    format!("{} = {}", fmt_plain(&r.lhs), fmt_plain(&r.rhs))
                } else {
                    format!("{} = {} mod {}", fmt_plain(&r.lhs), fmt_plain(&r.rhs), r.modulus)
                };
                let _ = writeln!(out, "{status} {} {}: {relation}", r.name, inputs.join(" "));
            }
            let _ = writeln!(
                out,
                "{} checks: {passed} passed, {failed} failed, {skipped} not applicable",
                results.len()
            );
            out.push_str(&ctx.timing_line());
            out
        }
    };
    Ok(Rendered { code, text })
}

// --------------------------------------------------------------- search

fn cmd_search(ctx: &Context, a: &SearchArgs) -> Result<Rendered, CliError> {
    ctx.reject_csv("search")?;
    if a.space != Space::Pg || a.n != 3 || a.q != 2 {
        return Err(CliError::Unsupported("exhaustive search is only available for PG(3,2)".into()));
    }
    let space = ProjectiveSpace::with_budget(3, 2, ctx.budget)?;
    let outcome = search_cl_pg32(&space, a.x)?;
    let classes: Vec<Vec<usize>> = outcome.classes.iter().map(|c| c.lines().collect()).collect();
    let text = match ctx.format {
        Format::Json => ctx.json(json!({
            "schema": "clsieve-search/1",
            "space": "pg", "n": 3, "q": 2,
            "x": a.x,
            "count": classes.len(),
            "nodes": outcome.nodes.to_string(),
            "degree_one": true,
            "classes": classes,
        })),
        _ => {
            let mut out = format!(
                "PG(3,2), x = {}: {} classes ({} search nodes), all degree-one\n",
                a.x,
                classes.len(),
                outcome.nodes
            );
            for c in &classes {
                let parts: Vec<String> = c.iter().map(|l| l.to_string()).collect();
                let _ = writeln!(out, "{}", parts.join(" "));
            }
            out.push_str(&ctx.timing_line());
            out
        }
    };
    Ok(Rendered { code: EXIT_OK, text })
}

// ------------------------------------------------------------- geometry

fn cmd_geometry(ctx: &Context, a: &GeometryArgs) -> Result<Rendered, CliError> {
    ctx.reject_csv("geometry")?;
    let pp = order(a.q)?;
    if a.n < 1 {
        return Err(CliError::Usage("n must be at least 1".into()));
    }
    let n = a.n as i64;
    let (points, lines) = match a.space {
        Space::Pg => (gaussian_binomial(n + 1, 1, pp), gaussian_binomial(n + 1, 2, pp)),
        Space::Ag => AffineSpace::counts(a.n, pp),
    };
    let modulus = catalog_entry(pp.q()).map(|e| e.text.to_string());
    let built = match a.space {
        Space::Pg => ProjectiveSpace::with_budget(a.n, a.q, ctx.budget).map(Built::Projective),
        Space::Ag => AffineSpace::with_budget(a.n, a.q, ctx.budget).map(Built::Affine),
    };
    let built = match built {
        Ok(b) => Some(b),
        Err(GeometryError::Budget { .. }) => None,
        Err(e) => return Err(e.into()),
    };
    let mut spreads: Option<String> = None;
    let mut regular_spread: Option<usize> = None;
    let mut parallel_classes: Option<String> = None;
    if let Some(b) = &built {
        match b {
            Built::Projective(s) => {
                if s.n() == 3 {
                    regular_spread = Some(regular_spread_pg3(s)?.len());
                    if s.q() == 2 {
                        spreads = Some(all_spreads_pg32(s)?.len().to_string());
                    }
                }
                debug_assert_eq!(ExactInt::from(s.num_lines()), lines);
            }
            Built::Affine(af) => {
                parallel_classes = Some(af.infinity_points().len().to_string());
            }
        }
    }
    let label = format!("{}({},{})", SpaceKind::from(a.space).as_str().to_uppercase(), a.n, a.q);
    let text = match ctx.format {
        Format::Json => ctx.json(json!({
            "schema": "clsieve-geometry/1",
            "space": SpaceKind::from(a.space).as_str(),
            "n": a.n,
            "q": a.q,
            "points": points.to_string(),
            "lines": lines.to_string(),
            "field_modulus": modulus,
            "materialized": built.is_some(),
            "regular_spread_size": regular_spread,
            "spreads": spreads,
            "parallel_classes": parallel_classes,
        })),
        _ => {
            let mut out = format!("{label}: {points} points, {lines} lines\n");
            if let Some(m) = &modulus {
                let _ = writeln!(out, "field: GF({}) = GF({})[t]/({m})", a.q, pp.p());
            }
            if built.is_none() {
                let _ = writeln!(out, "not materialised: exceeds the incidence budget of {} bits", ctx.budget);
            }
            if let Some(r) = regular_spread {
                let _ = writeln!(out, "regular spread: {r} lines");
            }
            if let Some(s) = &spreads {
                let _ = writeln!(out, "{s} spreads");
            }
            if let Some(p) = &parallel_classes {
                let _ = writeln!(out, "{p} parallel classes");
            }
            out.push_str(&ctx.timing_line());
            out
        }
    };
    Ok(Rendered { code: EXIT_OK, text })
}

// -------------------------------------------------------------- catalog

fn cmd_catalog(ctx: &Context) -> Result<Rendered, CliError> {
    ctx.reject_csv("catalog")?;
    let rows: Vec<(u32, u32, u32, String)> = (2..=MAX_Q as u64)
        .filter_map(|q| PrimePower::new(q).ok())
        .map(|pp| {
            let modulus = catalog_entry(pp.q()).map_or_else(|| "prime field".to_string(), |e| e.text.to_string());
            (pp.q(), pp.p(), pp.e(), modulus)
        })
        .collect();
    let text = match ctx.format {
        Format::Json => ctx.json(json!({
            "schema": "clsieve-catalog/1",
            "fields": rows.iter().map(|(q, p, e, m)| json!({"q": q, "p": p, "e": e, "modulus": m})).collect::<Vec<_>>(),
        })),
        _ => {
            let mut out = format!("{:>3}  {:>3}  {:>2}  modulus\n", "q", "p", "e");
            for (q, p, e, m) in &rows {
                let _ = writeln!(out, "{q:>3}  {p:>3}  {e:>2}  {m}");
            }
            out
        }
    };
    Ok(Rendered { code: EXIT_OK, text })
}

// ---------------------------------------------------------------- class

fn cmd_class(ctx: &Context, a: &ClassArgs) -> Result<Rendered, CliError> {
    ctx.reject_csv("class")?;
    let spec: ClassSpec = a.class.parse()?;
    let built = Built::new(a.space, a.n, a.q, ctx.budget)?;
    let host = built.host();
    let class = build_class(host, &spec)?;
    let degree_one = match host {
        Host::Projective(_) => match is_degree_one(&class) {
            Ok(d) => Some(d.member),
            Err(ClassError::Geometry(GeometryError::Budget { .. })) => None,
            Err(e) => return Err(e.into()),
        },
        Host::Affine(_) => None,
    };
    let parallel = match host {
        Host::Affine(_) => Some(match affine_parameter(&class) {
            Ok(x) => format!("constant {}", fmt_plain(&x)),
            Err(f) => format!(
                "not constant: direction {} has {}, direction {} has {}",
                f.first_direction, f.first_count, f.other_direction, f.other_count
            ),
        }),
        Host::Projective(_) => None,
    };
    let spreads = match host {
        Host::Projective(s) if s.n() == 3 && s.q() == 2 => {
            let profile = spread_profile(&class, &all_spreads_pg32(s)?)?;
            Some(match profile.constant_value() {
                Some(v) => format!("constant {v} over 56 spreads"),
                None => "not constant".to_string(),
            })
        }
        _ => None,
    };
    if let Some(path) = &a.out {
        std::fs::write(path, write_class(&class))
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))?;
    }
    let parameter = class.parameter().map(fmt_rational);
    let text = match ctx.format {
        Format::Json => ctx.json(json!({
            "schema": "clsieve-class/1",
            "host": host.describe(),
            "class": spec.to_string(),
            "size": class.len(),
            "parameter": parameter,
            "degree_one": degree_one,
            "parallel_classes": parallel,
            "spread_profile": spreads,
            "lines": class.lines().collect::<Vec<_>>(),
        })),
        _ => {
            let mut out = format!(
                "{} on {}: {} lines, x = {}\n",
                spec,
                host.describe(),
                class.len(),
                parameter.as_deref().unwrap_or("undefined")
            );
            match degree_one {
                Some(d) => {
                    let _ = writeln!(out, "degree-one: {}", if d { "yes" } else { "no" });
                }
                None if !host.is_affine() => {
                    let _ = writeln!(out, "degree-one: not computed (space too large)");
                }
                None => {}
            }
            if let Some(p) = &parallel {
                let _ = writeln!(out, "parallel classes: {p}");
            }
            if let Some(s) = &spreads {
                let _ = writeln!(out, "spreads: {s}");
            }
            if let Some(path) = &a.out {
                let _ = writeln!(out, "written to {}", path.display());
            }
            out.push_str(&ctx.timing_line());
            out
        }
    };
    Ok(Rendered { code: EXIT_OK, text })
}
