//! The `qpsi` command line: numeric evaluation, identity suites and exact
//! catalog expansion.
//!
//! Exit codes: 0 success or all checks pass, 1 a check failed, 2 usage error
//! or unknown id, 3 domain error (pole, divergence, non-convergence).

pub mod complex;
pub mod report;

use std::collections::BTreeMap;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::Rational64;
use qpsi_core::catalog;
use qpsi_core::elliptic::{jacobi_combo_oracle, wp_diff_oracle, EllipticContext};
use qpsi_core::error::QError;
use qpsi_core::identities::{self, Nome, Status};
use qpsi_core::mu::{mu, mu_hermite, w_report, MuPoint};
use qpsi_core::qcore::{pochhammer, theta_jtp, vartheta11, PochIndex, QContext, C64};
use qpsi_core::series::{eval as series_eval, HypergeometricSpec};

use complex::{format_complex, parse_complex};
use report::{CatalogJson, ComplexJson, EntryJson, IdentityJson, NomeJson, SuiteJson, Summary};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;

/// Environment variable overriding the per-series term budget.
pub const MAX_TERMS_ENV: &str = "QPSI_MAX_TERMS";

const DEFAULT_TOL: f64 = 1e-12;
const SAMPLED_Q_MIN: f64 = 0.05;
const SAMPLED_Q_MAX: f64 = 0.4;

#[derive(Parser, Debug)]
#[command(name = "qpsi", version, about = "Bilateral q-series, the generalized mu-function and mock theta identities")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate one function numerically.
    Eval(EvalArgs),
    /// Check one registered identity, or one catalog entry (`orderK.name`).
    Verify(VerifyArgs),
    /// Check every registered identity and optionally the catalog.
    Suite(SuiteArgs),
    /// Exact q-expansion of a catalog entry.
    Expand(ExpandArgs),
    /// Inspect or verify the mock theta catalog.
    Catalog {
        #[command(subcommand)]
        command: CatalogCommand,
    },
    /// List identity ids and catalog entry names.
    List,
}

#[derive(Args, Debug, Clone)]
pub struct NomeArgs {
    /// Nome q with 0 < |q| < 1.
    #[arg(long, value_parser = parse_complex, conflicts_with = "tau", allow_hyphen_values = true)]
    pub q: Option<C64>,
    /// Modular parameter tau with Im tau > 0.
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub tau: Option<C64>,
    /// Relative truncation tolerance for series and products.
    #[arg(long, default_value_t = DEFAULT_TOL)]
    pub tol: f64,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Expr {
    Pochhammer,
    Theta,
    Vartheta11,
    Phi,
    Psi,
    Mu,
    W,
    Hermite,
    WpDiff,
    JacobiCombo,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum TextJson {
    Text,
    Json,
}

#[derive(Args, Debug)]
pub struct EvalArgs {
    pub expr: Expr,
    #[command(flatten)]
    pub nome: NomeArgs,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub a: Option<C64>,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub b: Option<C64>,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub c: Option<C64>,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub x: Option<C64>,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub u: Option<C64>,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub v: Option<C64>,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub alpha: Option<C64>,
    /// Pochhammer length: an integer or `inf`.
    #[arg(long, allow_hyphen_values = true)]
    pub n: Option<String>,
    /// Hermite degree.
    #[arg(long)]
    pub k: Option<u32>,
    /// Upper parameter of phi/psi; repeat for each.
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub upper: Vec<C64>,
    /// Lower parameter of phi/psi; repeat for each.
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub lower: Vec<C64>,
    /// Generic `name=value` parameter, e.g. `--param u=0.3+0.1i`.
    #[arg(long = "param", value_parser = parse_param, allow_hyphen_values = true)]
    pub params: Vec<(String, C64)>,
    #[arg(long, value_enum, default_value_t = TextJson::Text)]
    pub format: TextJson,
}

#[derive(Args, Debug)]
pub struct CheckArgs {
    #[command(flatten)]
    pub nome: NomeArgs,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 20)]
    pub draws: usize,
    /// Override every identity's pass tolerance.
    #[arg(long)]
    pub check_tol: Option<f64>,
    /// Smallest |q| when the nome is sampled (no --q/--tau).
    #[arg(long, default_value_t = SAMPLED_Q_MIN)]
    pub q_min: f64,
    /// Largest |q| when the nome is sampled.
    #[arg(long, default_value_t = SAMPLED_Q_MAX)]
    pub q_max: f64,
    /// Catalog comparison order in powers of q.
    #[arg(long, default_value_t = 40)]
    pub order: i64,
    /// Write the JSON report here and print a summary instead.
    #[arg(long)]
    pub out: Option<std::path::PathBuf>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    pub id: String,
    #[command(flatten)]
    pub check: CheckArgs,
}

#[derive(Args, Debug)]
pub struct SuiteArgs {
    /// Comma-separated identity ids or catalog names; default all identities.
    #[arg(long, value_delimiter = ',')]
    pub ids: Option<Vec<String>>,
    /// Also verify every catalog entry.
    #[arg(long)]
    pub catalog: bool,
    #[command(flatten)]
    pub check: CheckArgs,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExpandFormat {
    Csv,
    Json,
    Text,
}

#[derive(Args, Debug)]
pub struct ExpandArgs {
    pub name: String,
    #[arg(long, default_value_t = 40)]
    pub order: i64,
    #[arg(long, value_enum, default_value_t = ExpandFormat::Csv)]
    pub format: ExpandFormat,
    /// Which printed form to expand: lhs, rhs_w or rhs_bilateral.
    #[arg(long, default_value = "lhs", value_parser = parse_form)]
    pub form: catalog::Form,
}

fn parse_form(s: &str) -> Result<catalog::Form, String> {
    catalog::Form::ALL
        .into_iter()
        .find(|f| f.as_str() == s)
        .ok_or_else(|| format!("unknown form '{s}' (lhs, rhs_w, rhs_bilateral)"))
}

#[derive(serde::Serialize)]
struct CoeffJson {
    exponent: String,
    coefficient: String,
}

#[derive(serde::Serialize)]
struct ExpandJson {
    name: String,
    form: &'static str,
    order: String,
    terms: Vec<CoeffJson>,
}

#[derive(Subcommand, Debug)]
pub enum CatalogCommand {
    /// Print the registry.
    Export {
        #[arg(long, value_enum, default_value_t = TextJson::Json)]
        format: TextJson,
    },
    /// Compare the three printed forms of every entry exactly.
    Verify {
        #[arg(long, default_value_t = 40)]
        order: i64,
        #[arg(long, value_enum, default_value_t = TextJson::Json)]
        format: TextJson,
    },
}

fn parse_param(s: &str) -> Result<(String, C64), String> {
    let (k, v) = s.split_once('=').ok_or_else(|| format!("expected name=value, got '{s}'"))?;
    Ok((k.trim().to_string(), parse_complex(v)?))
}

/// Failure carrying its exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
    broken_pipe: bool,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        CliError { code: EXIT_USAGE, message: message.into(), broken_pipe: false }
    }
}

impl From<QError> for CliError {
    fn from(e: QError) -> Self {
        let code = match e {
            QError::UnknownIdentity(_) | QError::UnknownEntry(_) | QError::InvalidContext(_) => EXIT_USAGE,
            _ => EXIT_DOMAIN,
        };
        CliError { code, message: e.to_string(), broken_pipe: false }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        let broken_pipe = e.kind() == std::io::ErrorKind::BrokenPipe;
        CliError { code: EXIT_USAGE, message: format!("i/o: {e}"), broken_pipe }
    }
}

type CliResult = Result<i32, CliError>;

/// Parse `args` (including the program name) and run; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) if e.broken_pipe => EXIT_PASS,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message);
            e.code
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> CliResult {
    match cmd {
        Command::Eval(a) => cmd_eval(&a, out),
        Command::Verify(a) => cmd_verify(&a, out),
        Command::Suite(a) => cmd_suite(&a, out),
        Command::Expand(a) => cmd_expand(&a, out),
        Command::Catalog { command } => cmd_catalog(command, out),
        Command::List => cmd_list(out),
    }
}

fn max_terms_override() -> Result<Option<usize>, CliError> {
    match std::env::var(MAX_TERMS_ENV) {
        Ok(s) => s
            .trim()
            .parse::<usize>()
            .map(Some)
            .map_err(|_| CliError::usage(format!("{MAX_TERMS_ENV} must be a positive integer, got '{s}'"))),
        Err(_) => Ok(None),
    }
}

fn configure(ctx: QContext, tol: f64) -> Result<QContext, CliError> {
    let mut ctx = ctx.with_tol(tol)?;
    if let Some(m) = max_terms_override()? {
        ctx = ctx.with_max_terms(m)?;
    }
    Ok(ctx)
}

/// Context from `--q` / `--tau`, or `None` when neither is given.
fn context(n: &NomeArgs) -> Result<Option<QContext>, CliError> {
    let ctx = match (n.q, n.tau) {
        (Some(q), None) => QContext::from_q(q)?,
        (None, Some(t)) => QContext::from_tau(t)?,
        (None, None) => return Ok(None),
        (Some(_), Some(_)) => return Err(CliError::usage("give only one of --q and --tau")),
    };
    configure(ctx, n.tol).map(Some)
}

// ---------------------------------------------------------------------------
// eval

#[derive(serde::Serialize)]
struct EvalJson {
    expr: String,
    value: ComplexJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    window: Option<(i64, i64)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    tail_estimate: Option<f64>,
}

struct Params {
    map: BTreeMap<String, C64>,
    expr: &'static str,
}

impl Params {
    fn get(&self, name: &str) -> Result<C64, CliError> {
        self.map
            .get(name)
            .copied()
            .ok_or_else(|| CliError::usage(format!("{} needs --{name}", self.expr)))
    }
}

fn expr_name(e: Expr) -> &'static str {
    match e {
        Expr::Pochhammer => "pochhammer",
        Expr::Theta => "theta",
        Expr::Vartheta11 => "vartheta11",
        Expr::Phi => "phi",
        Expr::Psi => "psi",
        Expr::Mu => "mu",
        Expr::W => "w",
        Expr::Hermite => "hermite",
        Expr::WpDiff => "wp_diff",
        Expr::JacobiCombo => "jacobi_combo",
    }
}

fn cmd_eval(a: &EvalArgs, out: &mut dyn Write) -> CliResult {
    let ctx = context(&a.nome)?.ok_or_else(|| CliError::usage("eval needs one of --q or --tau"))?;
    let mut map = BTreeMap::new();
    for (k, v) in [("a", a.a), ("b", a.b), ("c", a.c), ("x", a.x), ("u", a.u), ("v", a.v), ("alpha", a.alpha)] {
        if let Some(v) = v {
            map.insert(k.to_string(), v);
        }
    }
    let mut upper = a.upper.clone();
    let mut lower = a.lower.clone();
    for (k, v) in &a.params {
        match k.as_str() {
            "upper" => upper.push(*v),
            "lower" => lower.push(*v),
            _ => {
                map.insert(k.clone(), *v);
            }
        }
    }
    let p = Params { map, expr: expr_name(a.expr) };

    let (value, window, tail) = match a.expr {
        Expr::Pochhammer => {
            let n = match a.n.as_deref() {
                None => return Err(CliError::usage("pochhammer needs --n (integer or inf)")),
                Some("inf") | Some("infinity") => PochIndex::Infinite,
                Some(s) => PochIndex::Finite(
                    s.parse::<i64>().map_err(|_| CliError::usage(format!("--n must be an integer or inf, got '{s}'")))?,
                ),
            };
            let v = pochhammer(&ctx, p.get("a")?, n)?;
            (v.value, Some((0, v.truncation_terms as i64)), Some(v.tail_bound))
        }
        Expr::Theta => (theta_jtp(&ctx, p.get("x")?)?, None, None),
        Expr::Vartheta11 => (vartheta11(&ctx, p.get("u")?)?, None, None),
        Expr::Phi | Expr::Psi => {
            let x = p.get("x")?;
            let spec = if a.expr == Expr::Phi {
                HypergeometricSpec::phi(&upper, &lower, x)
            } else {
                HypergeometricSpec::psi(&upper, &lower, x)
            };
            let r = series_eval(&ctx, &spec)?;
            (r.value, Some((r.n_min, r.n_max)), Some(r.tail_estimate))
        }
        Expr::Mu => {
            let point = MuPoint::new(ctx, p.get("u")?, p.get("v")?, p.get("alpha")?)?;
            let r = mu(&point)?;
            (r.value, Some((r.report.n_min, r.report.n_max)), Some(r.report.tail_estimate))
        }
        Expr::W => {
            let r = w_report(&ctx, p.get("a")?, p.get("b")?, p.get("c")?)?;
            (r.value, Some((r.n_min, r.n_max)), Some(r.tail_estimate))
        }
        Expr::Hermite => {
            let k = a.k.ok_or_else(|| CliError::usage("hermite needs --k"))?;
            (mu_hermite(&ctx, k, p.get("u")?, p.get("v")?), Some((0, k as i64)), Some(0.0))
        }
        Expr::WpDiff => {
            let ec = EllipticContext::new(ctx)?;
            (wp_diff_oracle(&ec, p.get("u")?, p.get("v")?)?, None, None)
        }
        Expr::JacobiCombo => {
            let ec = EllipticContext::new(ctx)?;
            (jacobi_combo_oracle(&ec, p.get("u")?)?, None, None)
        }
    };
    if !value.is_finite() {
        return Err(CliError {
            code: EXIT_DOMAIN,
            message: format!("{} is not finite here", p.expr),
            broken_pipe: false,
        });
    }
    match a.format {
        TextJson::Text => {
            writeln!(out, "value: {}", format_complex(value))?;
            match window {
                Some((lo, hi)) => writeln!(out, "window: [{lo}, {hi}]")?,
                None => writeln!(out, "window: closed form")?,
            }
            if let Some(t) = tail {
                writeln!(out, "tail_estimate: {t:e}")?;
            }
        }
        TextJson::Json => {
            let j = EvalJson { expr: p.expr.to_string(), value: value.into(), window, tail_estimate: tail };
            writeln!(out, "{}", to_json(&j))?;
        }
    }
    Ok(EXIT_PASS)
}

// ---------------------------------------------------------------------------
// verify / suite

fn to_json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("report types serialize")
}

fn is_catalog_name(id: &str) -> bool {
    id.starts_with("order") && id.contains('.')
}

struct Plan {
    ctx: QContext,
    nome: Nome,
    nome_json: NomeJson,
}

fn plan(c: &CheckArgs) -> Result<Plan, CliError> {
    match context(&c.nome)? {
        Some(ctx) => Ok(Plan {
            ctx,
            nome: Nome::Fixed,
            nome_json: NomeJson::Fixed { q: ctx.q().into(), tau: ctx.tau().into() },
        }),
        None => {
            if !(0.0 < c.q_min && c.q_min <= c.q_max && c.q_max < 1.0) {
                return Err(CliError::usage("need 0 < --q-min <= --q-max < 1"));
            }
            // the fixed context only carries tolerances; each draw samples its own nome
            let ctx = configure(QContext::from_q(C64::new(c.q_min, 0.0))?, c.nome.tol)?;
            Ok(Plan {
                ctx,
                nome: Nome::Sampled { min: c.q_min, max: c.q_max },
                nome_json: NomeJson::Sampled { min: c.q_min, max: c.q_max },
            })
        }
    }
}

fn run_identities(ids: &[String], c: &CheckArgs, p: &Plan) -> Result<Vec<identities::IdentityReport>, CliError> {
    let mut reps = Vec::new();
    for id in ids {
        let d = identities::find(id)?;
        let tol = c.check_tol.unwrap_or(d.default_tol);
        reps.push(identities::run_descriptor(&p.ctx, &d, c.seed, c.draws, p.nome, tol));
    }
    Ok(reps)
}

fn run_catalog(names: &[String], order: i64) -> Result<Vec<catalog::EntryReport>, CliError> {
    if order <= 0 {
        return Err(CliError::usage("--order must be positive"));
    }
    let mut reps = Vec::new();
    for n in names {
        let e = catalog::find_entry(n)?;
        reps.push(catalog::verify(&e, catalog::entry_order(&e, order))?);
    }
    Ok(reps)
}

fn emit_suite(s: &SuiteJson, c: &CheckArgs, out: &mut dyn Write) -> CliResult {
    let text = to_json(s);
    match &c.out {
        Some(path) => {
            std::fs::write(path, format!("{text}\n"))?;
            for r in &s.identities {
                writeln!(out, "{:<24} {:<12} max_rel_err {:e}", r.id, r.status, r.max_rel_err)?;
            }
            for r in s.catalog.iter().flatten() {
                writeln!(out, "{:<24} {}", r.name, r.status)?;
            }
            writeln!(
                out,
                "passed {} failed {} inconclusive {}",
                s.summary.passed, s.summary.failed, s.summary.inconclusive
            )?;
        }
        None => writeln!(out, "{text}")?,
    }
    Ok(if s.summary.all_pass() { EXIT_PASS } else { EXIT_FAIL })
}

fn build_suite(
    ident_ids: &[String],
    cat_names: Option<&[String]>,
    c: &CheckArgs,
) -> Result<SuiteJson, CliError> {
    let p = plan(c)?;
    let ident = run_identities(ident_ids, c, &p)?;
    let cat = match cat_names {
        Some(names) => Some(run_catalog(names, c.order)?),
        None => None,
    };
    let mut summary = Summary::default();
    ident.iter().for_each(|r| summary.add(r.status));
    cat.iter().flatten().for_each(|r| summary.add(r.status));
    Ok(SuiteJson {
        seed: c.seed,
        draws: c.draws,
        nome: p.nome_json,
        identities: ident.iter().map(IdentityJson::from).collect(),
        catalog: cat.map(|v| v.iter().map(CatalogJson::from).collect()),
        summary,
    })
}

fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write) -> CliResult {
    let c = &a.check;
    if is_catalog_name(&a.id) {
        let reps = run_catalog(std::slice::from_ref(&a.id), c.order)?;
        let j = CatalogJson::from(&reps[0]);
        match &c.out {
            Some(path) => {
                std::fs::write(path, format!("{}\n", to_json(&j)))?;
                writeln!(out, "{} {}", j.name, j.status)?;
            }
            None => writeln!(out, "{}", to_json(&j))?,
        }
        return Ok(if reps[0].status == Status::Pass { EXIT_PASS } else { EXIT_FAIL });
    }
    let p = plan(c)?;
    let rep = &run_identities(std::slice::from_ref(&a.id), c, &p)?[0];
    let j = IdentityJson::from(rep);
    match &c.out {
        Some(path) => {
            std::fs::write(path, format!("{}\n", to_json(&j)))?;
            writeln!(out, "{} {} max_rel_err {:e}", j.id, j.status, j.max_rel_err)?;
        }
        None => writeln!(out, "{}", to_json(&j))?,
    }
    Ok(if rep.status == Status::Pass { EXIT_PASS } else { EXIT_FAIL })
}

fn cmd_suite(a: &SuiteArgs, out: &mut dyn Write) -> CliResult {
    let (ident, mut cat): (Vec<String>, Vec<String>) = match &a.ids {
        Some(list) => list.iter().filter(|s| !s.is_empty()).cloned().partition(|s| !is_catalog_name(s)),
        None => (identities::registry().iter().map(|d| d.id.to_string()).collect(), Vec::new()),
    };
    if a.catalog {
        cat = catalog::list_entries().iter().map(|e| e.name.to_string()).collect();
    }
    let cat = if cat.is_empty() { None } else { Some(cat.as_slice()) };
    let s = build_suite(&ident, cat, &a.check)?;
    emit_suite(&s, &a.check, out)
}

// ---------------------------------------------------------------------------
// expand / catalog / list

fn cmd_expand(a: &ExpandArgs, out: &mut dyn Write) -> CliResult {
    if a.order <= 0 {
        return Err(CliError::usage("--order must be positive"));
    }
    let order = Rational64::from_integer(a.order);
    let s = catalog::find_entry(&a.name)?.eval(a.form, order)?;
    match a.format {
        ExpandFormat::Csv => write!(out, "{}", s.to_csv())?,
        ExpandFormat::Json => {
            let j = ExpandJson {
                name: a.name.clone(),
                form: a.form.as_str(),
                order: s.order().unwrap_or(order).to_string(),
                terms: s
                    .terms()
                    .map(|(e, c)| CoeffJson { exponent: e.to_string(), coefficient: c.to_string() })
                    .collect(),
            };
            writeln!(out, "{}", to_json(&j))?;
        }
        ExpandFormat::Text => writeln!(out, "{s}")?,
    }
    Ok(EXIT_PASS)
}

fn cmd_catalog(cmd: CatalogCommand, out: &mut dyn Write) -> CliResult {
    match cmd {
        CatalogCommand::Export { format } => {
            let entries = catalog::list_entries();
            match format {
                TextJson::Json => {
                    let j: Vec<EntryJson> = entries.iter().map(EntryJson::from).collect();
                    writeln!(out, "{}", to_json(&j))?;
                }
                TextJson::Text => {
                    for e in &entries {
                        writeln!(out, "{:<20} {}", e.name, e.definition)?;
                    }
                }
            }
            Ok(EXIT_PASS)
        }
        CatalogCommand::Verify { order, format } => {
            let names: Vec<String> = catalog::list_entries().iter().map(|e| e.name.to_string()).collect();
            let reps = run_catalog(&names, order)?;
            let mut summary = Summary::default();
            reps.iter().for_each(|r| summary.add(r.status));
            match format {
                TextJson::Json => {
                    let j: Vec<CatalogJson> = reps.iter().map(CatalogJson::from).collect();
                    writeln!(out, "{}", to_json(&j))?;
                }
                TextJson::Text => {
                    for r in &reps {
                        writeln!(out, "{:<20} {}", r.name, r.status.as_str())?;
                        for f in &r.findings {
                            writeln!(
                                out,
                                "    {} vs {}: first difference at q^{}: {} vs {}",
                                f.left.as_str(),
                                f.right.as_str(),
                                f.exponent,
                                f.left_coeff,
                                f.right_coeff
                            )?;
                        }
                        for am in &r.amendments {
                            writeln!(out, "    amendment: {}", am.describe())?;
                        }
                    }
                    writeln!(out, "passed {} failed {}", summary.passed, summary.failed)?;
                }
            }
            Ok(if summary.all_pass() { EXIT_PASS } else { EXIT_FAIL })
        }
    }
}

fn cmd_list(out: &mut dyn Write) -> CliResult {
    for d in identities::registry() {
        writeln!(out, "{:<24} {}", d.id, d.paper_ref)?;
    }
    for e in catalog::list_entries() {
        writeln!(out, "{:<24} {}", e.name, e.definition)?;
    }
    Ok(EXIT_PASS)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let (mut o, mut e) = (Vec::new(), Vec::new());
        let code = run(std::iter::once("qpsi").chain(args.iter().copied()), &mut o, &mut e);
        (code, String::from_utf8(o).unwrap(), String::from_utf8(e).unwrap())
    }

    #[test]
    fn theta_text_output() {
        let (code, out, _) = call(&["eval", "theta", "--x", "0.5", "--q", "0.2"]);
        assert_eq!(code, EXIT_PASS);
        assert!(out.starts_with("value: "));
        assert!(out.contains("window: closed form"));
    }

    #[test]
    fn conflicting_nome_is_usage() {
        let (code, _, err) = call(&["eval", "theta", "--x", "0.5", "--q", "0.2", "--tau", "1i"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(!err.is_empty());
    }

    #[test]
    fn pochhammer_needs_length() {
        let (code, _, err) = call(&["eval", "pochhammer", "--a", "0.5", "--q", "0.2"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("--n"));
    }

    #[test]
    fn param_flag_feeds_upper() {
        let (a, x, _) = call(&["eval", "phi", "--upper", "0.5", "--lower", "0.3", "--x", "0.4", "--q", "0.2"]);
        let (b, y, _) = call(&["eval", "phi", "--param", "upper=0.5", "--param", "lower=0.3", "--param", "x=0.4", "--q", "0.2"]);
        assert_eq!((a, b), (0, 0));
        assert_eq!(x, y);
    }
}
