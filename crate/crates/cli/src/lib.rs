//! Command dispatch for the `sigmagal` binary.
//!
//! [`run`] parses arguments, validates flag combinations, calls the library
//! and writes either a plain-text or a JSON report. Exit codes: 0 on success,
//! 2 for bad input, 3 when a resource cap is hit, 1 for internal failures.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::Serialize;

use sigmagal::expr::{parse_list, parse_matrix, parse_ratfunc};
use sigmagal::galois::{analyze, Problem};
use sigmagal::jets::{build_jet_matrix, LinearSystem};
use sigmagal::ratfield::{AlphaField, CoeffField, DeltaKind, OperatorSpec, SigmaKind, DEFAULT_DEGREE_CAP, Q};
use sigmagal::sigmalattice::{GroupKind, SigmaExponentVector, SigmaLatticeGroup};
use sigmagal::Error;

pub mod report;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "sigmagal", version, about = "σ-Galois groups of first-order and diagonal δσ-equations over ℚ(x)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Shared {
    /// shift[:step], qdilation:q or mahler:d
    #[arg(long, default_value = "shift")]
    op: String,
    /// Derivation; defaults to ddx for shifts and xddx otherwise.
    #[arg(long, value_enum)]
    delta: Option<DeltaArg>,
    /// σ-order bound D.
    #[arg(long, default_value_t = 3)]
    order: usize,
    #[arg(long)]
    json: bool,
    /// Largest x-degree allowed after a Mahler substitution.
    #[arg(long, default_value_t = DEFAULT_DEGREE_CAP)]
    degree_cap: usize,
    /// Work over ℚ(α); enables `alpha` in expressions (jet only).
    #[arg(long)]
    param: bool,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum DeltaArg {
    Ddx,
    Xddx,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum KindArg {
    Multiplicative,
    Additive,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Group of δ(y) = a·y.
    AnalyzeRank1 {
        #[arg(long)]
        a: String,
        #[command(flatten)]
        shared: Shared,
    },
    /// Group of δ(y) = b inside Ga.
    AnalyzeAdditive {
        #[arg(long)]
        b: String,
        #[command(flatten)]
        shared: Shared,
    },
    /// Group of δ(y_i) = a_i·y_i; `--a "[a1, a2, ...]"`.
    AnalyzeDiagonal {
        #[arg(long)]
        a: String,
        #[command(flatten)]
        shared: Shared,
    },
    /// Order-d jet matrix A_d of δ(Y) = A·Y; `--matrix "[[..],[..]]"`.
    Jet {
        #[arg(long)]
        matrix: String,
        #[command(flatten)]
        shared: Shared,
    },
    /// Inspect a group given by generators, e.g. `--generators "[[1,-2,1]]"`.
    GroupOps {
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long)]
        generators: String,
        /// Another group (same format); reports whether it is a subgroup.
        #[arg(long)]
        contains: Option<String>,
        #[arg(long, value_enum, default_value = "multiplicative")]
        kind: KindArg,
        #[command(flatten)]
        shared: Shared,
    },
}

/// A failure with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: &'static str,
    pub message: String,
    pub exit: i32,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let exit = if e.is_resource() {
            EXIT_RESOURCE
        } else if matches!(e, Error::Internal(_)) {
            EXIT_INTERNAL
        } else {
            EXIT_INPUT
        };
        Failure { code: e.code(), message: e.to_string(), exit }
    }
}

fn input_error(code: &'static str, message: impl Into<String>) -> Failure {
    Failure { code, message: message.into(), exit: EXIT_INPUT }
}

fn parse_q(text: &str) -> Result<Q, Failure> {
    let v = parse_ratfunc::<Q>(text)?;
    v.as_constant().ok_or_else(|| input_error("invalid-operator", format!("operator parameter must be a constant, got {text}")))
}

/// Builds the operator, checking flag combinations before any computation.
fn operator(shared: &Shared) -> Result<OperatorSpec, Failure> {
    let (name, param) = match shared.op.split_once(':') {
        Some((n, p)) => (n.trim(), Some(p.trim())),
        None => (shared.op.trim(), None),
    };
    let sigma = match (name, param) {
        ("shift", p) if shared.param => {
            if p.is_some_and(|p| parse_q(p).ok() != Some(Q::from_integer(1.into()))) {
                return Err(input_error("invalid-operator", "with --param the shift is alpha -> alpha + 1 (step 1)"));
            }
            SigmaKind::ParamShift
        }
        ("shift", None) => SigmaKind::Shift { step: Q::from_integer(1.into()) },
        ("shift", Some(p)) => SigmaKind::Shift { step: parse_q(p)? },
        ("qdilation", Some(p)) => SigmaKind::QDilation { q: parse_q(p)? },
        ("mahler", Some(p)) => {
            let d = p.parse::<u32>().map_err(|_| input_error("invalid-operator", format!("Mahler degree must be an integer >= 2, got {p}")))?;
            SigmaKind::Mahler { d }
        }
        ("qdilation" | "mahler", None) => {
            return Err(input_error("invalid-operator", format!("{name} needs a parameter, e.g. {name}:2")));
        }
        _ => return Err(input_error("invalid-operator", format!("unknown operator '{}'", shared.op))),
    };
    let delta = match shared.delta {
        Some(DeltaArg::Ddx) => DeltaKind::Ddx,
        Some(DeltaArg::Xddx) => DeltaKind::XDdx,
        None => match sigma {
            SigmaKind::Shift { .. } | SigmaKind::ParamShift => DeltaKind::Ddx,
            _ => DeltaKind::XDdx,
        },
    };
    Ok(OperatorSpec::new(sigma, delta)?.with_degree_cap(shared.degree_cap))
}

fn no_param(shared: &Shared) -> Result<(), Failure> {
    if shared.param {
        return Err(input_error("parameter-field", "group analysis works over ℚ(x); --param is only for jet"));
    }
    Ok(())
}

fn emit_json<T: Serialize>(out: &mut dyn Write, v: &T) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(v).map_err(|e| Failure { code: "internal", message: e.to_string(), exit: EXIT_INTERNAL })?;
    writeln!(out, "{text}").map_err(io_failure)
}

fn io_failure(e: std::io::Error) -> Failure {
    Failure { code: "io", message: e.to_string(), exit: EXIT_INTERNAL }
}

fn analyze_cmd(problem: Problem, op: &OperatorSpec, shared: &Shared, out: &mut dyn Write) -> Result<(), Failure> {
    let rep = analyze(&problem, op, shared.order)?;
    if shared.json {
        emit_json(out, &report::ReportJson::new(&rep))
    } else {
        out.write_all(report::human_report(&rep).as_bytes()).map_err(io_failure)
    }
}

fn jet_cmd<F: CoeffField>(matrix: &str, shared: &Shared, out: &mut dyn Write) -> Result<(), Failure> {
    let op = operator(shared)?;
    let m = parse_matrix::<F>(matrix)?;
    let sys = LinearSystem::new(m, op.clone())?;
    let jet = build_jet_matrix(&sys, shared.order)?;
    let rows = report::render_matrix(&jet.dense());
    if shared.json {
        let j = report::JetJson { operator: report::OperatorJson::new(&op), order: shared.order, dim: jet.dim(), matrix: rows };
        emit_json(out, &j)
    } else {
        let text = format!(
            "operator: {op}\norder: {}\nA_{} ({}x{}):\n{}",
            shared.order,
            shared.order,
            jet.dim(),
            jet.dim(),
            report::human_matrix(&rows)
        );
        out.write_all(text.as_bytes()).map_err(io_failure)
    }
}

/// Parses `[[1,-2,1],[2]]` (n = 1) or `[[[1],[-2]], ...]` (per-variable order lists).
fn parse_generators(text: &str, n: usize) -> Result<Vec<SigmaExponentVector>, Failure> {
    let bad = |m: String| input_error("syntax", m);
    let v: serde_json::Value = serde_json::from_str(text).map_err(|e| bad(format!("generators: {e}")))?;
    let list = v.as_array().ok_or_else(|| bad("generators must be a JSON array".into()))?;
    let ints = |v: &serde_json::Value| -> Result<Vec<BigInt>, Failure> {
        v.as_array()
            .ok_or_else(|| bad("expected an array of integers".into()))?
            .iter()
            .map(|x| {
                let s = x.to_string();
                s.parse::<BigInt>().map_err(|_| bad(format!("not an integer: {s}")))
            })
            .collect()
    };
    list.iter()
        .map(|g| {
            let arr = g.as_array().ok_or_else(|| bad("each generator must be an array".into()))?;
            let nested = arr.first().is_some_and(|x| x.is_array());
            if n == 1 && !nested {
                return Ok(SigmaExponentVector::new(1, ints(g)?));
            }
            if arr.len() != n {
                return Err(bad(format!("generator needs {n} per-variable lists, got {}", arr.len())));
            }
            let per_var: Vec<Vec<BigInt>> = arr.iter().map(ints).collect::<Result<_, _>>()?;
            let orders = per_var.iter().map(Vec::len).max().unwrap_or(0);
            let mut coeffs = vec![BigInt::from(0); n * orders];
            for (i, exps) in per_var.into_iter().enumerate() {
                for (j, e) in exps.into_iter().enumerate() {
                    coeffs[j * n + i] = e;
                }
            }
            Ok(SigmaExponentVector::new(n, coeffs))
        })
        .collect()
}

fn group_ops_cmd(n: usize, generators: &str, contains: Option<&str>, kind: KindArg, shared: &Shared, out: &mut dyn Write) -> Result<(), Failure> {
    let kind = match kind {
        KindArg::Multiplicative => GroupKind::Multiplicative,
        KindArg::Additive => GroupKind::Additive,
    };
    let g = SigmaLatticeGroup::new(n, kind, parse_generators(generators, n)?)?;
    let contains = match contains {
        Some(text) => {
            let h = SigmaLatticeGroup::new(n, kind, parse_generators(text, n)?)?;
            Some(g.contains(&h, shared.order)?)
        }
        None => None,
    };
    if shared.json {
        emit_json(out, &report::group_ops_json(&g, shared.order, contains))
    } else {
        out.write_all(report::human_group_ops(&g, shared.order, contains).as_bytes()).map_err(io_failure)
    }
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> Result<(), Failure> {
    match cli.command {
        Command::AnalyzeRank1 { a, shared } => {
            no_param(&shared)?;
            let op = operator(&shared)?;
            analyze_cmd(Problem::Multiplicative(parse_ratfunc::<Q>(&a)?), &op, &shared, out)
        }
        Command::AnalyzeAdditive { b, shared } => {
            no_param(&shared)?;
            let op = operator(&shared)?;
            analyze_cmd(Problem::Additive(parse_ratfunc::<Q>(&b)?), &op, &shared, out)
        }
        Command::AnalyzeDiagonal { a, shared } => {
            no_param(&shared)?;
            let op = operator(&shared)?;
            let list = parse_list::<Q>(&a)?;
            if list.is_empty() {
                return Err(input_error("invalid-argument", "need at least one coefficient"));
            }
            analyze_cmd(Problem::Diagonal(list), &op, &shared, out)
        }
        Command::Jet { matrix, shared } => {
            if shared.param {
                jet_cmd::<AlphaField>(&matrix, &shared, out)
            } else {
                jet_cmd::<Q>(&matrix, &shared, out)
            }
        }
        Command::GroupOps { n, generators, contains, kind, shared } => {
            no_param(&shared)?;
            if n == 0 {
                return Err(input_error("invalid-argument", "--n must be positive"));
            }
            group_ops_cmd(n, &generators, contains.as_deref(), kind, &shared, out)
        }
    }
}

/// Runs one command line (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
                    let _ = out.write_all(text.as_bytes());
                    if e.kind() == ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand {
                        EXIT_INPUT
                    } else {
                        EXIT_OK
                    }
                }
                _ => {
                    let _ = write!(err, "error[usage]: {text}");
                    EXIT_INPUT
                }
            };
        }
    };
    match dispatch(cli, out) {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(err, "error[{}]: {}", f.code, f.message);
            f.exit
        }
    }
}
