//! Command-line front end.
//!
//! Exit codes: `0` success, `1` a verification check failed, `2` bad input,
//! `3` even period where an odd one is required, `4` resource cap hit.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::derived::{derived_hall_number, GradedObject};
use crate::embed::Embedding;
use crate::error::{HallError, Result};
use crate::extended::ExtendedAlgebra;
use crate::hall::HallContext;
use crate::periodic::PeriodicAlgebra;
use crate::repcat::{Limits, Quiver, RepCategory};
use crate::suites::{self, DimBound, SuiteReport};

pub const SCHEMA: &str = "1";

pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_BAD_INPUT: i32 = 2;
pub const EXIT_EVEN_PERIOD: i32 = 3;
pub const EXIT_RESOURCE: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "periodic-hall", version, about = "Exact arithmetic in periodic derived Hall algebras of quiver representations")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Default, Clone)]
pub struct GlobalArgs {
    /// Preset (`A1`, `A2`, `A3`) or literal `n; s->t, ...`.
    #[arg(long, global = true)]
    pub quiver: Option<String>,
    /// Prime field size.
    #[arg(long, global = true)]
    pub q: Option<u32>,
    /// Period.
    #[arg(long, global = true)]
    pub m: Option<usize>,
    #[arg(long, value_enum, global = true)]
    pub format: Option<Format>,
    /// Seed for randomized suites.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Cap on elements visited by any exhaustive loop (exit 4 when exceeded)
    #[arg(long, global = true)]
    pub max_enumeration: Option<u64>,
    /// Cap on the F_q-dimension of an enumerated chain-map space (exit 4 when exceeded)
    #[arg(long, global = true)]
    pub max_chain_dim: Option<u32>,
    /// File of `key = value` lines; flags take precedence over it.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Multiply two element literals.
    Multiply {
        #[arg(value_enum)]
        algebra: AlgebraKind,
        lhs: String,
        rhs: String,
    },
    /// Run a property suite.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        /// Total dimension (`2`) or componentwise dimension vector (`1,1`).
        #[arg(long)]
        dim_bound: Option<String>,
        #[arg(long, default_value_t = 50)]
        samples: usize,
        /// Largest number of nonzero degrees in enumerated basis elements.
        #[arg(long, default_value_t = 2)]
        max_degrees: usize,
    },
    /// Tabulate classes or structure constants.
    List {
        #[command(subcommand)]
        what: ListCommand,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum AlgebraKind {
    Periodic,
    Extended,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Assoc,
    Embedding,
    Partition,
    Identities,
}

#[derive(Subcommand, Debug)]
pub enum ListCommand {
    /// Isomorphism classes with dimension vector below a bound.
    IsoClasses {
        #[arg(long)]
        bound: String,
    },
    /// Submodule count `g^L_{M,N}`: submodules of `L` isomorphic to `N`
    /// with quotient isomorphic to `M`.
    HallNumber {
        #[arg(long = "L")]
        middle: String,
        #[arg(long = "M")]
        quotient: String,
        #[arg(long = "N")]
        sub: String,
    },
    /// `H^L_{X,Y}` for graded objects.
    DerivedHallNumber {
        #[arg(long = "X")]
        source: String,
        #[arg(long = "Y")]
        target: String,
        #[arg(long = "L")]
        cone: String,
    },
}

/// Fully resolved settings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    pub quiver: String,
    pub q: u32,
    pub m: usize,
    pub format: Format,
    pub seed: u64,
    pub limits: Limits,
}

impl Default for Config {
    fn default() -> Self {
        Config { quiver: "A2".into(), q: 2, m: 3, format: Format::Text, seed: 0, limits: Limits::default() }
    }
}

impl Config {
    /// Flag over config file over default.
    pub fn resolve(flags: &GlobalArgs) -> Result<Self> {
        let mut c = Config::default();
        if let Some(path) = &flags.config {
            let text = std::fs::read_to_string(path)
                .map_err(|e| HallError::Invalid(format!("cannot read config {}: {e}", path.display())))?;
            c.apply_file(&text)?;
        }
        if let Some(x) = &flags.quiver {
            c.quiver = x.clone();
        }
        if let Some(x) = flags.q {
            c.q = x;
        }
        if let Some(x) = flags.m {
            c.m = x;
        }
        if let Some(x) = flags.format {
            c.format = x;
        }
        if let Some(x) = flags.seed {
            c.seed = x;
        }
        if let Some(x) = flags.max_enumeration {
            c.limits.max_enumeration = x;
        }
        if let Some(x) = flags.max_chain_dim {
            c.limits.max_chain_dim = x;
        }
        Ok(c)
    }

    fn apply_file(&mut self, text: &str) -> Result<()> {
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let bad = |what: &str| HallError::Parse(format!("config line {}: {what}", lineno + 1));
            let (k, v) = line.split_once('=').ok_or_else(|| bad("expected key = value"))?;
            let (k, v) = (k.trim().replace('_', "-"), v.trim());
            let num = |v: &str| v.parse::<u64>().map_err(|_| bad("expected a number"));
            match k.as_str() {
                "quiver" => self.quiver = v.into(),
                "q" => self.q = num(v)? as u32,
                "m" => self.m = num(v)? as usize,
                "seed" => self.seed = num(v)?,
                "max-enumeration" => self.limits.max_enumeration = num(v)?,
                "max-chain-dim" => self.limits.max_chain_dim = num(v)? as u32,
                "format" => {
                    self.format = Format::from_str(v, true).map_err(|_| bad("format is text or json"))?
                }
                _ => return Err(bad(&format!("unknown key `{k}`"))),
            }
        }
        Ok(())
    }

    pub fn category(&self) -> Result<RepCategory> {
        RepCategory::with_limits(Quiver::parse(&self.quiver)?, self.q, self.limits)
    }

    fn header(&self) -> Value {
        json!({"schema": SCHEMA, "quiver": self.quiver, "q": self.q, "m": self.m})
    }
}

pub fn exit_code(e: &HallError) -> i32 {
    match e {
        HallError::Parse(_) | HallError::Invalid(_) | HallError::DivisionByZero => EXIT_BAD_INPUT,
        HallError::EvenPeriod { .. } => EXIT_EVEN_PERIOD,
        HallError::ResourceLimit { .. } => EXIT_RESOURCE,
    }
}

/// Parses `args` (program name first), runs the command, and returns the
/// process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let _ = if code == 0 { write!(out, "{e}") } else { write!(err, "{e}") };
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    let config = Config::resolve(&cli.global)?;
    let (text, json, code) = match &cli.command {
        Command::Multiply { algebra, lhs, rhs } => multiply(&config, *algebra, lhs, rhs)?,
        Command::Verify { suite, dim_bound, samples, max_degrees } => {
            verify(&config, *suite, dim_bound.as_deref(), *samples, *max_degrees)?
        }
        Command::List { what } => list(&config, what)?,
    };
    let written = match config.format {
        Format::Text => writeln!(out, "{text}"),
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&json).expect("serializable")),
    };
    written.map_err(|e| HallError::Invalid(format!("cannot write output: {e}")))?;
    Ok(code)
}

type Outcome = (String, Value, i32);

fn context(config: &Config) -> Result<Arc<HallContext>> {
    Ok(Arc::new(HallContext::new(config.category()?)))
}

fn multiply(config: &Config, kind: AlgebraKind, lhs: &str, rhs: &str) -> Result<Outcome> {
    let ctx = context(config)?;
    let (product, name) = match kind {
        AlgebraKind::Periodic => {
            let alg = PeriodicAlgebra::new(ctx, config.m)?;
            let p = alg.multiply(&alg.parse(lhs)?, &alg.parse(rhs)?)?;
            ((p.to_string(), p.to_json()), "periodic")
        }
        AlgebraKind::Extended => {
            let alg = ExtendedAlgebra::new(ctx, config.m)?;
            let p = alg.multiply(&alg.parse(lhs)?, &alg.parse(rhs)?)?;
            ((p.to_string(), p.to_json()), "extended")
        }
    };
    let mut json = config.header();
    json["algebra"] = name.into();
    json["lhs"] = lhs.into();
    json["rhs"] = rhs.into();
    json["product"] = product.1;
    Ok((product.0, json, 0))
}

fn verify(config: &Config, suite: Suite, bound: Option<&str>, samples: usize, max_degrees: usize) -> Result<Outcome> {
    let ctx = context(config)?;
    let m = config.m;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let default_bound = match suite {
        Suite::Partition => "3",
        Suite::Assoc => "1,1",
        Suite::Embedding | Suite::Identities => "2",
    };
    let bound: DimBound = bound.unwrap_or(default_bound).parse()?;
    let reports: Vec<SuiteReport> = match suite {
        Suite::Embedding => {
            let emb = Embedding::new(ctx.clone(), m)?;
            let basis = emb.periodic().basis_objects_from(&bound.classes(ctx.cat())?, max_degrees);
            vec![suites::embedding_suite(&emb, &basis)?]
        }
        Suite::Assoc => {
            let classes = bound.classes(ctx.cat())?;
            let ext = ExtendedAlgebra::new(ctx.clone(), m)?;
            let mut out = Vec::new();
            // the periodic algebra only exists for odd periods
            if m % 2 == 1 {
                let per = PeriodicAlgebra::new(ctx.clone(), m)?;
                out.push(suites::periodic_assoc_suite(&per, &classes, samples, &mut rng)?);
            }
            out.push(suites::extended_assoc_suite(&ext, &classes, samples, &mut rng)?);
            out.push(suites::k_relations_suite(&ext, &classes, samples, &mut rng)?);
            out
        }
        Suite::Partition => {
            let total = match &bound {
                DimBound::Total(d) => *d,
                DimBound::Vector(v) => v.iter().sum(),
            };
            vec![suites::partition_suite(ctx.cat(), total)?, suites::riedtmann_suite(ctx.cat(), total)?]
        }
        Suite::Identities => vec![suites::identities_suite(m, ctx.cat().vertex_count(), samples, &mut rng)?],
    };
    let passed = reports.iter().all(SuiteReport::passed);
    let mut text: Vec<String> = reports.iter().map(|r| r.to_string()).collect();
    text.push(if passed { "PASS".into() } else { "FAIL".into() });
    let mut json = config.header();
    json["suite"] = format!("{suite:?}").to_lowercase().into();
    json["seed"] = config.seed.into();
    json["passed"] = passed.into();
    json["reports"] = serde_json::to_value(&reports).expect("serializable");
    Ok((text.join("\n"), json, if passed { 0 } else { EXIT_CHECK_FAILED }))
}

fn list(config: &Config, what: &ListCommand) -> Result<Outcome> {
    let cat = config.category()?;
    let mut json = config.header();
    match what {
        ListCommand::IsoClasses { bound } => {
            let classes = bound.parse::<DimBound>()?.classes(&cat)?;
            let mut rows = Vec::new();
            let mut lines = Vec::new();
            for c in &classes {
                let aut = cat.aut_count(c)?;
                lines.push(format!("{c}\t{}\taut={aut}", c.dim()));
                rows.push(json!({"class": c.to_string(), "dim": c.dim().0, "aut": aut.to_string()}));
            }
            json["classes"] = rows.into();
            Ok((lines.join("\n"), json, 0))
        }
        ListCommand::HallNumber { middle, quotient, sub } => {
            let (l, m, n) = (cat.parse_class(middle)?, cat.parse_class(quotient)?, cat.parse_class(sub)?);
            let g = cat.submodule_hall_number(&l, &m, &n)?;
            json["value"] = g.to_string().into();
            Ok((g.to_string(), json, 0))
        }
        ListCommand::DerivedHallNumber { source, target, cone } => {
            let x = GradedObject::parse(&cat, source)?;
            let y = GradedObject::parse(&cat, target)?;
            let l = GradedObject::parse(&cat, cone)?;
            let h = derived_hall_number(&cat, &x, &y, &l)?;
            json["value"] = h.to_string().into();
            json["coeffs"] = h.to_strings().into();
            Ok((h.to_string(), json, 0))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("periodic-hall").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn flags_override_config_file_over_defaults() {
        let dir = std::env::temp_dir().join(format!("periodic-hall-cfg-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("c.conf");
        std::fs::write(&path, "# sample\nq = 3\nm = 5\nformat = json\nmax_chain_dim = 9\n").unwrap();
        let cli = parse(&["--config", path.to_str().unwrap(), "--m", "1", "list", "iso-classes", "--bound", "1"]);
        let c = Config::resolve(&cli.global).unwrap();
        assert_eq!((c.q, c.m, c.format, c.limits.max_chain_dim), (3, 1, Format::Json, 9));
        assert_eq!(c.quiver, "A2");
        std::fs::write(&path, "colour = blue\n").unwrap();
        assert!(matches!(Config::resolve(&cli.global), Err(HallError::Parse(_))));
    }

    #[test]
    fn global_flags_after_subcommand() {
        let cli = parse(&["multiply", "periodic", "[0]", "[S1@0]", "--q", "3", "--m", "5"]);
        assert_eq!((cli.global.q, cli.global.m), (Some(3), Some(5)));
    }

    #[test]
    fn command_tree_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }

    #[test]
    fn error_codes() {
        assert_eq!(exit_code(&HallError::EvenPeriod { m: 2 }), EXIT_EVEN_PERIOD);
        assert_eq!(exit_code(&HallError::Parse("x".into())), EXIT_BAD_INPUT);
        assert_eq!(exit_code(&HallError::ResourceLimit { what: "x", needed: 2, cap: 1 }), EXIT_RESOURCE);
    }
}
