//! The `n2coset` front end: argument parsing, command dispatch and the
//! mapping of failures onto exit codes.
//!
//! Exit codes: 0 success, 1 internal error or failed verification, 2 guarded
//! mathematical error, 3 unsupported rule, 64 usage error.

pub mod grammar;
mod render;
mod suites;

use std::ffi::OsString;

use catalog::{Algebra, CatalogError, Family, MinimalModel, ModuleLabel};
use characters::{char_fock, char_ghost, char_n2, char_sl2, AnnulusRegime, CharError, CharKind, Method};
use clap::{Parser, Subcommand, ValueEnum};
use fusion::{fuse_exact, groth_fuse_n2, groth_fuse_sl2, FusionError, FusionResult};
use series_core::{parse_rat, Rational};

pub use suites::{run_suite, Suite};

#[derive(Parser, Debug)]
#[command(name = "n2coset", version, about = "Exact characters, fusion rules and checks for N=2 minimal models M(u,v)")]
pub struct Cli {
    /// Model parameter u ≥ 2.
    #[arg(long = "u", global = true)]
    pub u: Option<i64>,
    /// Model parameter v ≥ 1, coprime to u.
    #[arg(long = "v", global = true, default_value_t = 1)]
    pub v: i64,
    /// Truncation order "num/den"; defaults to 8 for v = 1 and 6 otherwise.
    #[arg(long = "q-order", global = true)]
    pub q_order: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Width of the y window in branching checks; defaults to 2u.
    #[arg(long = "y-window", global = true)]
    pub y_window: Option<i64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Kac table of M(u,1).
    Kac {
        /// Print only the reduced table.
        #[arg(long)]
        reduced: bool,
    },
    /// Character of a module.
    Character {
        label: String,
        /// residue-eg, appell-lerch, resolution, typical or sflow.
        #[arg(long)]
        method: Option<String>,
        /// Supercharacter instead of character.
        #[arg(long = "super")]
        sup: bool,
    },
    /// Fusion product of two modules.
    Fuse {
        a: String,
        b: String,
        /// Grothendieck product only; no exact rule needed.
        #[arg(long)]
        grothendieck: bool,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
    },
}

/// Validated global options.
#[derive(Clone, Debug)]
pub struct CliConfig {
    pub m: MinimalModel,
    pub q_order: Rational,
    pub format: Format,
    pub y_window: i64,
}

impl CliConfig {
    pub fn new(u: i64, v: i64, q_order: Option<&str>, format: Format, y_window: Option<i64>) -> Result<Self, CliError> {
        if u < 2 || v < 1 {
            return Err(CliError::Usage(format!("need u ≥ 2 and v ≥ 1, got u = {u}, v = {v}")));
        }
        let m = MinimalModel::new(u, v).map_err(|e| CliError::Usage(e.to_string()))?;
        let q_order = match q_order {
            Some(s) => parse_rat(s).map_err(|e| CliError::Usage(format!("--q-order: {e}")))?,
            None => series_core::int(if v == 1 { 8 } else { 6 }),
        };
        if q_order <= series_core::int(0) {
            return Err(CliError::Usage("--q-order must be positive".into()));
        }
        let y_window = y_window.unwrap_or(2 * u);
        if y_window < 1 {
            return Err(CliError::Usage("--y-window must be positive".into()));
        }
        Ok(CliConfig { m, q_order, format, y_window })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CliError {
    #[error("usage error: {0}")]
    Usage(String),
    #[error("{0}")]
    Guarded(String),
    #[error("{0}")]
    Unsupported(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 64,
            CliError::Guarded(_) => 2,
            CliError::Unsupported(_) => 3,
            CliError::Internal(_) => 1,
        }
    }
}

impl From<CatalogError> for CliError {
    fn from(e: CatalogError) -> Self {
        match e {
            CatalogError::LabelOutOfRange(_) | CatalogError::ParityMismatch(_) => CliError::Guarded(e.to_string()),
            CatalogError::InvalidModel(_) => CliError::Usage(e.to_string()),
            CatalogError::Unsupported(_) => CliError::Unsupported(e.to_string()),
        }
    }
}

impl From<CharError> for CliError {
    fn from(e: CharError) -> Self {
        match e {
            CharError::Catalog(c) => c.into(),
            CharError::Special(_) | CharError::Series(_) => CliError::Internal(e.to_string()),
            _ => CliError::Guarded(e.to_string()),
        }
    }
}

impl From<FusionError> for CliError {
    fn from(e: FusionError) -> Self {
        match e {
            FusionError::Catalog(c) => c.into(),
            FusionError::NoKnownExactRule(_) => CliError::Unsupported(e.to_string()),
            FusionError::LabelOutOfRange(_) => CliError::Guarded(e.to_string()),
        }
    }
}

/// What the binary prints and returns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome { stdout: text, stderr: String::new(), code: 0 },
                _ => Outcome { stdout: String::new(), stderr: text, code: 64 },
            };
        }
    };
    match execute(&cli) {
        Ok((text, passed)) => Outcome { stdout: text, stderr: String::new(), code: if passed { 0 } else { 1 } },
        Err(e) => Outcome { stdout: String::new(), stderr: format!("n2coset: {e}\n"), code: e.exit_code() },
    }
}

/// Runs a parsed command; the flag is false when a verification failed.
pub fn execute(cli: &Cli) -> Result<(String, bool), CliError> {
    let u = cli.u.ok_or_else(|| CliError::Usage("--u is required".into()))?;
    let cfg = CliConfig::new(u, cli.v, cli.q_order.as_deref(), cli.format, cli.y_window)?;
    match &cli.command {
        Command::Kac { reduced } => {
            if cfg.m.v != 1 {
                return Err(CliError::Usage("the Kac table is tabulated for v = 1 only".into()));
            }
            let table = catalog::kac_table(cfg.m.u)?;
            Ok((render::kac(&table, *reduced, cfg.format), true))
        }
        Command::Character { label, method, sup } => {
            let l = parse_label(&cfg.m, label)?;
            let ch = character(&cfg, &l, method.as_deref(), *sup)?;
            Ok((render::character(&ch, cfg.format), true))
        }
        Command::Fuse { a, b, grothendieck } => {
            let a = parse_label(&cfg.m, a)?;
            let b = parse_label(&cfg.m, b)?;
            let res = fuse(&cfg.m, &a, &b, *grothendieck)?;
            Ok((render::fusion(&res, cfg.format), true))
        }
        Command::Verify { suite } => {
            let out = run_suite(&cfg, *suite)?;
            let passed = out.passed();
            Ok((render::suite(&out, cfg.format), passed))
        }
    }
}

/// Syntax check with a position, then semantic validation.
pub fn parse_label(m: &MinimalModel, spec: &str) -> Result<ModuleLabel, CliError> {
    grammar::check(spec).map_err(|e| CliError::Usage(format!("label {spec:?} {e}")))?;
    Ok(ModuleLabel::parse(m, spec)?)
}

/// A computed character: an ordinary series or a delta comb.
pub type Character = CharKind;

/// Dispatches on the label's algebra. N=2 labels default to the typical
/// route for relaxed modules and to the Appell-Lerch route otherwise.
pub fn character(cfg: &CliConfig, l: &ModuleLabel, method: Option<&str>, sup: bool) -> Result<Character, CliError> {
    let n = &cfg.q_order;
    let m = &cfg.m;
    let method: Option<Method> = method.map(|s| s.parse().map_err(CliError::Usage)).transpose()?;
    if method.is_some() && l.algebra != Algebra::N2 {
        return Err(CliError::Usage("--method applies to N2 labels only".into()));
    }
    if sup && !matches!(l.algebra, Algebra::N2 | Algebra::Ghost) {
        return Err(CliError::Usage("--super applies to N2 and GH labels only".into()));
    }
    match l.algebra {
        Algebra::Ghost => Ok(CharKind::OrdinarySeries(char_ghost(l.i, sup, n))),
        Algebra::Fock => Ok(CharKind::OrdinarySeries(char_fock(&l.p, &m.t(), n))),
        Algebra::Virasoro => special_functions::vir_char(m.u, m.v, l.r, l.s, n)
            .map(CharKind::OrdinarySeries)
            .map_err(|e| CliError::Guarded(e.to_string())),
        Algebra::SL2 => {
            let regime = match l.family {
                Family::Dplus => AnnulusRegime::OuterAnnulus,
                _ => AnnulusRegime::InnerAnnulus,
            };
            Ok(char_sl2(m, l, regime, n)?)
        }
        Algebra::N2 => {
            let method = method.unwrap_or(if l.family == Family::ETypical { Method::Typical } else { Method::AppellLerch });
            Ok(CharKind::OrdinarySeries(char_n2(m, l, method, sup, n)?))
        }
    }
}

/// Exact product when a rule is known; with `grothendieck_only` the exact
/// part is attempted but optional.
pub fn fuse(m: &MinimalModel, a: &ModuleLabel, b: &ModuleLabel, grothendieck_only: bool) -> Result<FusionResult, CliError> {
    let sl2 = a.algebra == Algebra::SL2 || b.algebra == Algebra::SL2;
    if sl2 {
        if !grothendieck_only {
            return Err(CliError::Unsupported("no exact sl2 fusion rule; use --grothendieck".into()));
        }
        let g = groth_fuse_sl2(m, a, b)?;
        return Ok(FusionResult { exact: None, grothendieck: g, conjectural: false });
    }
    if grothendieck_only {
        let g = groth_fuse_n2(m, a, b)?;
        return match fuse_exact(m, a, b) {
            Ok(r) => Ok(FusionResult { grothendieck: g, ..r }),
            Err(FusionError::NoKnownExactRule(_)) => Ok(FusionResult { exact: None, grothendieck: g, conjectural: false }),
            Err(e) => Err(e.into()),
        };
    }
    Ok(fuse_exact(m, a, b)?)
}
