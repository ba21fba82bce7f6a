//! Batch command-line front end: classification, normalization, equivalence,
//! enumeration and residue checks with JSON (default) or table output.
//!
//! Exit status: 0 = ok, 1 = domain error, 2 = usage or parse error.

use clap::{Parser, Subcommand, ValueEnum};
use multiloop::azumaya::{
    enumerate_toral, enumerate_toral_with_factor_count, index_and_split, orbit_equivalent,
    skew_normal_form, unimodular_act, BrauerMatrix, OrbitVerdict, ToralDescriptor,
};
use multiloop::basefield::FieldDescriptor;
use multiloop::quadform::{
    count_loop_classes, count_loop_classes_with_hyperbolic, is_isometric_r, RDiagonalForm,
};
use multiloop::Error;
use serde_json::{json, Value};
use std::process::ExitCode;

const DEFAULT_BUDGET: usize = 100_000;
const BUDGET_ENV: &str = "MULTILOOP_BUDGET";

#[derive(Parser)]
#[command(name = "multiloop", version, about = "Exact classification over Laurent polynomial rings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output mode (the table view is derived from the JSON payload)
    #[arg(long, global = true, value_enum, default_value_t = OutputMode::Json)]
    output: OutputMode,
    /// Worker threads for enumerate/count workloads (output is unaffected)
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputMode {
    Json,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// Diagonal quadratic forms over R_n
    #[command(subcommand)]
    Qf(QfCommand),
    /// Brauer classes of toral Azumaya algebras
    #[command(subcommand)]
    Az(AzCommand),
}

#[derive(Subcommand)]
enum QfCommand {
    /// Compute the canonical loop normal form of a diagonal form
    Normalize {
        /// Base field for entry-array payloads: Q, R, or Fq:<q>
        #[arg(long)]
        field: Option<String>,
        /// Variable count for entry-array payloads
        #[arg(long)]
        n: Option<usize>,
        /// Form: JSON object, JSON array of monomials, or a file path
        form: String,
    },
    /// Decide isometry of two diagonal forms over R_n
    Isometric {
        #[arg(long)]
        field: Option<String>,
        #[arg(long)]
        n: Option<usize>,
        a: String,
        b: String,
    },
    /// Witt decomposition over the iterated Laurent series field F_n
    Witt {
        #[arg(long)]
        field: Option<String>,
        #[arg(long)]
        n: Option<usize>,
        form: String,
    },
    /// First/second residues at a coordinate valuation and the unramified flag
    Residue {
        /// Variable index (1-based)
        #[arg(long)]
        at: usize,
        #[arg(long)]
        field: Option<String>,
        #[arg(long)]
        n: Option<usize>,
        form: String,
    },
    /// Count isometry classes of dimension-d forms over R_n
    Count {
        #[arg(long)]
        field: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        dim: usize,
    },
}

#[derive(Subcommand)]
enum AzCommand {
    /// The Brauer matrix of a toral descriptor
    Matrix { descriptor: String },
    /// Alternating normal form of a skew matrix, with unimodular witness
    Normalize { matrix: String },
    /// Index and split degree of a degree-d class (division iff s0 = 1)
    Division {
        #[arg(long)]
        degree: u64,
        /// Toral descriptor or Brauer matrix (JSON or file path)
        input: String,
    },
    /// Enumerate all toral descriptors of a given degree
    Enumerate {
        #[arg(long)]
        degree: u64,
        #[arg(long)]
        vars: usize,
    },
    /// Decide GL_n(Z)-orbit equivalence of two Brauer matrices
    Equivalent {
        /// Search budget in visited matrices (default 100000, or MULTILOOP_BUDGET)
        #[arg(long)]
        budget: Option<usize>,
        a: String,
        b: String,
    },
    /// Entrywise sum of two Brauer matrices (Brauer-class addition)
    Tensor { a: String, b: String },
}

enum CliError {
    /// Malformed input: exit 2, nothing computed.
    Usage(String),
    /// A domain error from the library: exit 1.
    Domain(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(m) => CliError::Usage(m),
            other => CliError::Domain(other),
        }
    }
}

fn error_name(e: &Error) -> &'static str {
    match e {
        Error::ZeroScalar => "ZeroScalar",
        Error::SingularForm => "SingularForm",
        Error::FieldMismatch => "FieldMismatch",
        Error::ZeroElement => "ZeroElement",
        Error::NonMonomialEntry => "NonMonomialEntry",
        Error::IndexOutOfRange { .. } => "IndexOutOfRange",
        Error::UnsupportedField(_) => "UnsupportedField",
        Error::InvalidDescriptor(_) => "InvalidDescriptor",
        Error::SizeMismatch => "SizeMismatch",
        Error::NotUnimodular => "NotUnimodular",
        Error::NotSkewSymmetric => "NotSkewSymmetric",
        Error::DegreeIncompatible { .. } => "DegreeIncompatible",
        Error::TooManyVariables { .. } => "TooManyVariables",
        Error::Parse(_) => "Parse",
    }
}

/// Inline JSON is taken as-is; anything else is read as a file path.
fn read_payload(arg: &str) -> Result<String, CliError> {
    let trimmed = arg.trim_start();
    if trimmed.starts_with('{') || trimmed.starts_with('[') {
        return Ok(arg.to_string());
    }
    std::fs::read_to_string(arg)
        .map_err(|e| CliError::Usage(format!("cannot read payload file '{arg}': {e}")))
}

/// A form payload is either a self-contained JSON object or an array of
/// monomial strings interpreted with --field and --n.
fn parse_form(
    payload: &str,
    field: &Option<String>,
    n: &Option<usize>,
) -> Result<RDiagonalForm, CliError> {
    let text = read_payload(payload)?;
    let value: Value = serde_json::from_str(&text)
        .map_err(|e| CliError::Usage(format!("invalid JSON payload: {e}")))?;
    match &value {
        Value::Object(_) => {
            serde_json::from_value(value).map_err(|e| CliError::Usage(e.to_string()))
        }
        Value::Array(items) => {
            let field = field
                .as_ref()
                .ok_or_else(|| CliError::Usage("--field is required with entry arrays".into()))?;
            let n =
                n.ok_or_else(|| CliError::Usage("--n is required with entry arrays".into()))?;
            let descriptor = FieldDescriptor::parse(field)?;
            let entries: Result<Vec<&str>, CliError> = items
                .iter()
                .map(|v| {
                    v.as_str()
                        .ok_or_else(|| CliError::Usage("entries must be strings".into()))
                })
                .collect();
            Ok(RDiagonalForm::parse(descriptor, n, &entries?)?)
        }
        _ => Err(CliError::Usage("form payload must be an object or array".into())),
    }
}

fn parse_matrix(payload: &str) -> Result<BrauerMatrix, CliError> {
    let text = read_payload(payload)?;
    let value: Value = serde_json::from_str(&text)
        .map_err(|e| CliError::Usage(format!("invalid JSON payload: {e}")))?;
    if value.get("factors").is_some() {
        let t: ToralDescriptor =
            serde_json::from_value(value).map_err(|e| CliError::Usage(e.to_string()))?;
        return Ok(t.brauer_matrix()?);
    }
    serde_json::from_value(value).map_err(|e| CliError::Usage(e.to_string()))
}

fn parse_descriptor(payload: &str) -> Result<ToralDescriptor, CliError> {
    let text = read_payload(payload)?;
    serde_json::from_str(&text).map_err(|e| CliError::Usage(e.to_string()))
}

/// Splits a list of independent work items across scoped worker threads and
/// re-joins the results in submission order, so the output is identical to
/// the sequential run.
fn partitioned<T: Send, R: Send>(
    items: Vec<T>,
    jobs: usize,
    work: impl Fn(T) -> R + Sync,
) -> Vec<R> {
    if jobs <= 1 || items.len() <= 1 {
        return items.into_iter().map(work).collect();
    }
    let chunk = items.len().div_ceil(jobs);
    let mut chunks: Vec<Vec<T>> = Vec::new();
    let mut current = Vec::new();
    for item in items {
        current.push(item);
        if current.len() == chunk {
            chunks.push(std::mem::take(&mut current));
        }
    }
    if !current.is_empty() {
        chunks.push(current);
    }
    let work = &work;
    std::thread::scope(|scope| {
        let handles: Vec<_> = chunks
            .into_iter()
            .map(|part| scope.spawn(move || part.into_iter().map(work).collect::<Vec<R>>()))
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("worker thread"))
            .collect()
    })
}

fn run(command: Command, jobs: usize) -> Result<(Value, Vec<String>), CliError> {
    let mut diagnostics = Vec::new();
    let payload = match command {
        Command::Qf(qf) => match qf {
            QfCommand::Normalize { field, n, form } => {
                let q = parse_form(&form, &field, &n)?;
                let nf = q.loop_normal_form()?;
                serde_json::to_value(nf).expect("serializable")
            }
            QfCommand::Isometric { field, n, a, b } => {
                let fa = parse_form(&a, &field, &n)?;
                let fb = parse_form(&b, &field, &n)?;
                if fa.dim() != fb.dim() {
                    diagnostics.push("dimensions differ".to_string());
                }
                json!({ "isometric": is_isometric_r(&fa, &fb)? })
            }
            QfCommand::Witt { field, n, form } => {
                let q = parse_form(&form, &field, &n)?;
                serde_json::to_value(q.witt_decompose_f()?).expect("serializable")
            }
            QfCommand::Residue { at, field, n, form } => {
                let q = parse_form(&form, &field, &n)?;
                let (first, second) = q.second_residue(at)?;
                let unramified = q.is_unramified_at(at)?;
                json!({
                    "at": at,
                    "first": first.iter().map(|u| u.to_string()).collect::<Vec<_>>(),
                    "second": second.iter().map(|u| u.to_string()).collect::<Vec<_>>(),
                    "unramified": unramified,
                })
            }
            QfCommand::Count { field, n, dim } => {
                let descriptor = FieldDescriptor::parse(&field)?;
                let count = if jobs > 1 {
                    let parts = partitioned((0..=dim / 2).collect(), jobs, |h| {
                        count_loop_classes_with_hyperbolic(descriptor, n, dim, h)
                    });
                    parts.into_iter().try_fold(0u64, |acc, p| Ok::<_, Error>(acc + p?))?
                } else {
                    count_loop_classes(descriptor, n, dim)?
                };
                json!({ "count": count })
            }
        },
        Command::Az(az) => match az {
            AzCommand::Matrix { descriptor } => {
                let t = parse_descriptor(&descriptor)?;
                serde_json::to_value(t.brauer_matrix()?).expect("serializable")
            }
            AzCommand::Normalize { matrix } => {
                let b = parse_matrix(&matrix)?;
                let (nf, witness) = skew_normal_form(&b);
                let transported = unimodular_act(&witness, &b)?;
                json!({
                    "blocks": serde_json::to_value(&nf.blocks).expect("serializable"),
                    "rank_zero": nf.rank_zero,
                    "witness": serde_json::to_value(&witness).expect("serializable"),
                    "transported": serde_json::to_value(&transported).expect("serializable"),
                })
            }
            AzCommand::Division { degree, input } => {
                let b = parse_matrix(&input)?;
                let (index, s0) = index_and_split(&b, degree)?;
                json!({ "index": index, "s0": s0, "division": s0 == 1 })
            }
            AzCommand::Enumerate { degree, vars } => {
                let list: Vec<ToralDescriptor> = if jobs > 1 {
                    partitioned((0..=vars / 2).collect(), jobs, |m| {
                        enumerate_toral_with_factor_count(degree, vars, m)
                    })
                    .into_iter()
                    .flatten()
                    .collect()
                } else {
                    enumerate_toral(degree, vars)
                };
                json!({
                    "count": list.len(),
                    "descriptors": serde_json::to_value(&list).expect("serializable"),
                })
            }
            AzCommand::Equivalent { budget, a, b } => {
                let ma = parse_matrix(&a)?;
                let mb = parse_matrix(&b)?;
                let budget = budget
                    .or_else(|| {
                        std::env::var(BUDGET_ENV).ok().and_then(|v| v.parse().ok())
                    })
                    .unwrap_or(DEFAULT_BUDGET);
                let verdict = orbit_equivalent(&ma, &mb, budget)?;
                if verdict == OrbitVerdict::Unknown {
                    diagnostics
                        .push(format!("search budget {budget} exhausted with equal invariants"));
                }
                serde_json::to_value(&verdict).expect("serializable")
            }
            AzCommand::Tensor { a, b } => {
                let ma = parse_matrix(&a)?;
                let mb = parse_matrix(&b)?;
                serde_json::to_value(ma.tensor(&mb)?).expect("serializable")
            }
        },
    };
    Ok((payload, diagnostics))
}

/// The table view: a flat, aligned rendering of the JSON payload.
fn render_table(value: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                match v {
                    Value::Object(_) | Value::Array(_) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render_table(v, indent + 1, out);
                    }
                    _ => out.push_str(&format!("{pad}{k}: {}\n", render_scalar(v))),
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                match item {
                    Value::Object(_) | Value::Array(_) => {
                        out.push_str(&format!("{pad}-\n"));
                        render_table(item, indent + 1, out);
                    }
                    _ => out.push_str(&format!("{pad}- {}\n", render_scalar(item))),
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", render_scalar(other))),
    }
}

fn render_scalar(value: &Value) -> String {
    match value {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command, cli.jobs) {
        Ok((payload, diagnostics)) => {
            let result = json!({
                "status": "ok",
                "payload": payload,
                "diagnostics": diagnostics,
            });
            match cli.output {
                OutputMode::Json => {
                    println!("{}", serde_json::to_string_pretty(&result).expect("serializable"));
                }
                OutputMode::Table => {
                    let mut out = String::new();
                    render_table(&result["payload"], 0, &mut out);
                    for d in result["diagnostics"].as_array().into_iter().flatten() {
                        out.push_str(&format!("note: {}\n", render_scalar(d)));
                    }
                    print!("{out}");
                }
            }
            ExitCode::SUCCESS
        }
        Err(CliError::Domain(e)) => {
            let result = json!({
                "status": "error",
                "error": error_name(&e),
                "message": e.to_string(),
            });
            eprintln!("{}", serde_json::to_string_pretty(&result).expect("serializable"));
            ExitCode::from(1)
        }
        Err(CliError::Usage(message)) => {
            let result = json!({
                "status": "error",
                "error": "Usage",
                "message": message,
            });
            eprintln!("{}", serde_json::to_string_pretty(&result).expect("serializable"));
            ExitCode::from(2)
        }
    }
}
