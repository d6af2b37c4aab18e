//! `mixedwd`: one verb per invocation, JSON report on stdout.

use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

mod verbs;

#[derive(Parser, Debug)]
#[command(name = "mixedwd", version, about = "Exact computations with mixed Weil-Deligne representations")]
struct Cli {
    /// Print a human-readable summary to stderr.
    #[arg(long, global = true)]
    pretty: bool,
    /// Add decimal approximations of the payload as `payload_float`.
    #[arg(long, global = true)]
    float: bool,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand, Debug)]
enum Verb {
    /// Axioms, Weil weights and Frobenius semisimplicity of a representation.
    Check { input: PathBuf },
    /// Mixedness certificate of a filtered representation.
    Analyze { input: PathBuf },
    /// Canonical splitting of the weight filtration.
    Split { input: PathBuf },
    /// Structure decomposition into `V^(i,j) ⊗ std_j`.
    Decompose { input: PathBuf },
    /// Clebsch-Gordan generators for `std_j1 ⊗ std_j2`.
    Cg {
        #[arg(long)]
        j1: usize,
        #[arg(long)]
        j2: usize,
        #[arg(long, default_value = "2")]
        q: String,
    },
    /// Action of an element of ML2 on a mixed representation.
    Ml2(Ml2Args),
    /// Truncated free-algebra model with its weight filtration.
    #[command(name = "pi1-build")]
    Pi1Build { input: PathBuf },
    /// Dimensions of the local Selmer schemes of a datum.
    Selmer {
        input: PathBuf,
        #[arg(long, default_value_t = 1)]
        deg: usize,
    },
    /// Normal form of a cocycle (`g`) or of a crystalline element (`f`).
    Normalize {
        input: PathBuf,
        /// JSON `{"x", "v", "u"}`; missing vectors are zero.
        #[arg(long)]
        cocycle: PathBuf,
        #[arg(long, value_parser = ["f", "g"], default_value = "g")]
        mode: String,
    },
    /// Selmer dimension of a curve's fundamental group.
    #[command(name = "curve-dim")]
    CurveDim(CurveArgs),
    /// Lyndon word counts (and optionally the words).
    Lyndon {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        words: bool,
    },
}

#[derive(Args, Debug)]
struct Ml2Args {
    input: PathBuf,
    #[arg(long, allow_hyphen_values = true)]
    a: String,
    #[arg(long, allow_hyphen_values = true)]
    b: String,
    #[arg(long, allow_hyphen_values = true)]
    c: String,
    #[arg(long, allow_hyphen_values = true)]
    d: String,
    #[arg(long = "sqrt-det", allow_hyphen_values = true)]
    sqrt_det: String,
}

#[derive(Args, Debug)]
struct CurveArgs {
    /// JSON `{"g", "g0", "n", "deg", "nu"}` instead of flags.
    #[arg(long, conflicts_with_all = ["g", "g0", "n", "deg", "nu"])]
    input: Option<PathBuf>,
    #[arg(long)]
    g: Option<u64>,
    #[arg(long, default_value_t = 0)]
    g0: u64,
    #[arg(long, default_value_t = 1)]
    n: u64,
    #[arg(long, default_value_t = 1)]
    deg: u64,
    /// `LABEL=MULTIPLICITY`, repeatable; labels are s, st, u<k>, u<k>^-1.
    #[arg(long)]
    nu: Vec<String>,
    /// Also count with the Lyndon word oracle.
    #[arg(long)]
    oracle: bool,
}

/// Failure with its exit code: 1 domain, 2 input.
pub struct Failure {
    pub code: u8,
    pub diagnostics: Vec<String>,
    pub payload: Value,
}

impl Failure {
    pub fn input(msg: impl Into<String>) -> Self {
        Failure {
            code: 2,
            diagnostics: vec![msg.into()],
            payload: Value::Null,
        }
    }

    pub fn domain(msg: impl ToString) -> Self {
        Failure {
            code: 1,
            diagnostics: vec![msg.to_string()],
            payload: Value::Null,
        }
    }
}

impl From<mixedwd::json::InputError> for Failure {
    fn from(e: mixedwd::json::InputError) -> Self {
        let code = match e {
            mixedwd::json::InputError::Schema(_) => 2,
            mixedwd::json::InputError::Domain(_) => 1,
        };
        Failure {
            code,
            diagnostics: e.messages(),
            payload: Value::Null,
        }
    }
}

/// A successful payload with its stderr summary.
pub struct Output {
    pub payload: Value,
    pub summary: String,
}

pub fn read_json(path: &PathBuf) -> Result<Value, Failure> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| Failure::input(format!("stdin: {e}")))?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?
    };
    serde_json::from_str(&text).map_err(|e| Failure::input(format!("{}: invalid JSON: {e}", path.display())))
}

fn verb_name(v: &Verb) -> &'static str {
    match v {
        Verb::Check { .. } => "check",
        Verb::Analyze { .. } => "analyze",
        Verb::Split { .. } => "split",
        Verb::Decompose { .. } => "decompose",
        Verb::Cg { .. } => "cg",
        Verb::Ml2(_) => "ml2",
        Verb::Pi1Build { .. } => "pi1-build",
        Verb::Selmer { .. } => "selmer",
        Verb::Normalize { .. } => "normalize",
        Verb::CurveDim(_) => "curve-dim",
        Verb::Lyndon { .. } => "lyndon",
    }
}

fn dispatch(v: &Verb) -> Result<Output, Failure> {
    match v {
        Verb::Check { input } => verbs::check(&read_json(input)?),
        Verb::Analyze { input } => verbs::analyze(&read_json(input)?),
        Verb::Split { input } => verbs::split(&read_json(input)?),
        Verb::Decompose { input } => verbs::decompose(&read_json(input)?),
        Verb::Cg { j1, j2, q } => verbs::cg(*j1, *j2, q),
        Verb::Ml2(a) => verbs::ml2(&read_json(&a.input)?, [&a.a, &a.b, &a.c, &a.d, &a.sqrt_det]),
        Verb::Pi1Build { input } => verbs::pi1_build(&read_json(input)?),
        Verb::Selmer { input, deg } => verbs::selmer(&read_json(input)?, *deg),
        Verb::Normalize { input, cocycle, mode } => verbs::normalize(&read_json(input)?, &read_json(cocycle)?, mode == "f"),
        Verb::CurveDim(a) => {
            let doc = match &a.input {
                Some(p) => read_json(p)?,
                None => verbs::curve_doc(a.g, a.g0, a.n, a.deg, &a.nu)?,
            };
            verbs::curve_dim(&doc, a.oracle)
        }
        Verb::Lyndon { m, n, words } => verbs::lyndon(*m, *n, *words),
    }
}

fn emit(verb: &str, result: Result<Output, Failure>, pretty: bool, float: bool) -> ExitCode {
    let (status, payload, diagnostics, code, summary) = match result {
        Ok(o) => ("ok", o.payload, Vec::new(), 0, o.summary),
        Err(f) => {
            let s = f.diagnostics.join("\n");
            ("error", f.payload, f.diagnostics, f.code, s)
        }
    };
    let mut report = json!({
        "verb": verb,
        "status": status,
        "payload": payload,
        "diagnostics": diagnostics,
    });
    if float {
        report["payload_float"] = mixedwd::json::floatify(&report["payload"]);
    }
    // a closed pipe is not an error of ours
    let _ = writeln!(std::io::stdout().lock(), "{}", serde_json::to_string_pretty(&report).expect("serializable"));
    if pretty {
        eprintln!("{verb}: {status}");
        if !summary.is_empty() {
            eprintln!("{summary}");
        }
    }
    ExitCode::from(code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand) {
                e.exit();
            }
            let msg = e.render().to_string();
            return emit("", Err(Failure::input(msg.trim().to_string())), false, false);
        }
    };
    let verb = verb_name(&cli.verb);
    emit(verb, dispatch(&cli.verb), cli.pretty, cli.float)
}
