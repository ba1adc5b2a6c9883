//! Command-line front end. Every subcommand prints one JSON document on
//! standard output; failures print a JSON error on standard error.
//!
//! Exit codes: 0 computed, 1 usage or parse error, 2 resource bound hit,
//! 3 degenerate-input convention applied.

mod commands;

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::error::Error;
use crate::parse::RingDescriptor;
use crate::ring::{Limits, MonomialOrder, RingCtx};

pub const SCHEMA_VERSION: u32 = 1;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_RESOURCE: i32 = 2;
pub const EXIT_DEGENERATE: i32 = 3;

/// Captured result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommandOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser, Debug)]
#[command(name = "perfcalc", version, about = "Prime-characteristic commutative algebra at desk scale")]
struct Cli {
    #[command(flatten)]
    run: RunFlags,
    #[command(subcommand)]
    command: Command,
}

/// Bounds shared by every subcommand; flags override the config file.
#[derive(Args, Debug, Default)]
struct RunFlags {
    /// TOML file with any of the bound keys below
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    max_degree: Option<u32>,
    #[arg(long, global = true)]
    max_level: Option<u32>,
    /// Largest Frobenius exponent E checked by closure commands
    #[arg(long, global = true)]
    bound: Option<u32>,
    /// Largest witness degree D tried by tclose-search
    #[arg(long, global = true)]
    degree_cap: Option<u32>,
    #[arg(long, global = true)]
    seed: Option<u64>,
}

/// Resolved run bounds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub max_degree: u32,
    pub max_level: u32,
    pub bound: u32,
    pub degree_cap: u32,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { max_degree: 600, max_level: 6, bound: 2, degree_cap: 20, seed: 0 }
    }
}

impl RunConfig {
    fn load(path: &Path) -> Result<Self, Error> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| Error::InvalidArgument(format!("bad config {}: {e}", path.display())))
    }

    fn resolve(flags: &RunFlags) -> Result<Self, Error> {
        let mut cfg = match &flags.config {
            Some(path) => Self::load(path)?,
            None => RunConfig::default(),
        };
        if let Some(v) = flags.max_degree {
            cfg.max_degree = v;
        }
        if let Some(v) = flags.max_level {
            cfg.max_level = v;
        }
        if let Some(v) = flags.bound {
            cfg.bound = v;
        }
        if let Some(v) = flags.degree_cap {
            cfg.degree_cap = v;
        }
        if let Some(v) = flags.seed {
            cfg.seed = v;
        }
        for (name, v) in [
            ("max_degree", cfg.max_degree),
            ("max_level", cfg.max_level),
            ("bound", cfg.bound),
            ("degree_cap", cfg.degree_cap),
        ] {
            if v == 0 {
                return Err(Error::InvalidArgument(format!("{name} must be positive")));
            }
        }
        Ok(cfg)
    }

    fn limits(&self) -> Limits {
        Limits { max_degree: self.max_degree, max_level: self.max_level, ..Limits::default() }
    }
}

#[derive(Args, Debug, Clone)]
struct RingArgs {
    /// Ring descriptor, e.g. `GF(11)[x,y,z,u,v]`
    #[arg(long)]
    ring: String,
    /// Hypersurface modulus F; the ring becomes S/(F)
    #[arg(long)]
    modulus: Option<String>,
    /// Monomial order: grevlex or lex
    #[arg(long)]
    order: Option<String>,
}

impl RingArgs {
    fn build(&self, cfg: &RunConfig) -> Result<Arc<RingCtx>, Error> {
        let mut desc = RingDescriptor::parse(&self.ring)?;
        if let Some(m) = &self.modulus {
            if desc.modulus.is_some() {
                return Err(Error::InvalidArgument("modulus given both in --ring and --modulus".into()));
            }
            desc.modulus = Some(m.clone());
        }
        if let Some(o) = &self.order {
            desc.order = o.parse::<MonomialOrder>()?;
        }
        desc.build(cfg.limits())
    }
}

#[derive(Args, Debug, Clone)]
struct ActionArgs {
    #[command(flatten)]
    ring: RingArgs,
    /// Images of the variables, e.g. `1,2,3,0`; defaults to the shift
    #[arg(long)]
    perm: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Fedder's F-purity criterion for a hypersurface
    Fedder {
        #[command(flatten)]
        ring: RingArgs,
    },
    /// gcd in the perfection
    PerfGcd {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Principal generator of (a : b) in the perfection
    PerfColon {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Equality of perfection elements
    PerfEq {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Bounded Frobenius-closure membership
    Fclosure {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long)]
        f: String,
        #[arg(long)]
        ideal: String,
    },
    /// Replays a tight-closure witness
    TcloseVerify {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long)]
        c: String,
        #[arg(long)]
        f: String,
        #[arg(long)]
        ideal: String,
    },
    /// Searches monomial tight-closure witnesses
    TcloseSearch {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long)]
        f: String,
        #[arg(long)]
        ideal: String,
    },
    /// Colon ideal (I : f)
    Colon {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long)]
        ideal: String,
        #[arg(long)]
        f: String,
    },
    /// Intersection of two ideals
    Intersect {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long)]
        ideal: String,
        #[arg(long)]
        other: String,
    },
    /// Ideal membership
    Member {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long)]
        ideal: String,
        #[arg(long)]
        f: String,
    },
    /// Reduced Gröbner basis
    Gb {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long)]
        ideal: String,
    },
    /// Hilbert function of the invariants, three ways
    InvHilbert {
        #[command(flatten)]
        action: ActionArgs,
        /// Largest degree
        #[arg(long)]
        degree: u32,
    },
    /// Orbit sums of one degree
    InvOrbits {
        #[command(flatten)]
        action: ActionArgs,
        #[arg(long)]
        degree: u32,
    },
    /// Invariance test
    InvCheck {
        #[command(flatten)]
        action: ActionArgs,
        #[arg(long)]
        f: String,
    },
    /// Degreewise generation test for candidate invariants
    InvGenerates {
        #[command(flatten)]
        action: ActionArgs,
        #[arg(long, default_value = "")]
        gens: String,
        #[arg(long)]
        degree: u32,
    },
    /// Compares (f : g)^[q] with (f^q : g^q) over sampled pairs
    RemarkExperiment {
        #[command(flatten)]
        ring: RingArgs,
        /// `random` or `monomials`
        #[arg(long, default_value = "random")]
        mode: String,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        /// Degree bound for sampled f and g
        #[arg(long, default_value_t = 3)]
        pair_degree: u32,
        /// Term bound for random f and g
        #[arg(long, default_value_t = 3)]
        terms: usize,
        /// Frobenius exponent e
        #[arg(short, long, default_value_t = 1)]
        e: u32,
    },
}

/// Successful command result before serialization.
struct Report {
    body: Value,
    degenerate: bool,
}

impl Report {
    fn new(body: Value) -> Self {
        Report { body, degenerate: false }
    }
}

fn exit_code(err: &Error) -> i32 {
    if err.is_resource_bound() {
        EXIT_RESOURCE
    } else if matches!(err, Error::Degenerate(_)) {
        EXIT_DEGENERATE
    } else {
        EXIT_USAGE
    }
}

fn error_kind(err: &Error) -> &'static str {
    match err {
        Error::InvalidRing(_) => "invalid_ring",
        Error::ContextMismatch(_) => "context_mismatch",
        Error::DegreeBound { .. } => "degree_bound",
        Error::LevelBound { .. } => "level_bound",
        Error::ResourceBound(_) => "resource_bound",
        Error::ZeroDivisor => "zero_divisor",
        Error::QuotientRing(_) => "quotient_ring",
        Error::Degenerate(_) => "degenerate",
        Error::Parse { .. } => "parse",
        Error::UnknownVariable(_) => "unknown_variable",
        Error::NotInvariant(_) => "not_invariant",
        Error::InvalidArgument(_) => "invalid_argument",
    }
}

fn render(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("JSON values always serialize");
    s.push('\n');
    s
}

fn error_output(code: i32, kind: &str, message: String, position: Option<usize>) -> CommandOutput {
    let mut err = json!({ "kind": kind, "message": message });
    if let Some(pos) = position {
        err["position"] = json!(pos);
    }
    CommandOutput { code, stdout: String::new(), stderr: render(&json!({ "schema": SCHEMA_VERSION, "error": err })) }
}

/// Runs one invocation; `argv[0]` is the program name.
pub fn run_command<I, T>(argv: I) -> CommandOutput
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    CommandOutput { code: EXIT_OK, stdout: e.to_string(), stderr: String::new() }
                }
                _ => error_output(EXIT_USAGE, "usage", e.to_string().trim_end().to_string(), None),
            };
        }
    };
    let result = RunConfig::resolve(&cli.run).and_then(|cfg| commands::dispatch(&cli.command, &cfg));
    match result {
        Ok(report) => {
            let mut body = report.body;
            body["schema"] = json!(SCHEMA_VERSION);
            body["degenerate"] = json!(report.degenerate);
            let code = if report.degenerate { EXIT_DEGENERATE } else { EXIT_OK };
            CommandOutput { code, stdout: render(&body), stderr: String::new() }
        }
        Err(err) => {
            let pos = match &err {
                Error::Parse { pos, .. } => Some(*pos),
                _ => None,
            };
            error_output(exit_code(&err), error_kind(&err), err.to_string(), pos)
        }
    }
}
