//! `discforge` command-line front end.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use discforge::config::{cayley_of_segments, dual_of, GaleConfiguration, PointConfiguration};
use discforge::defect::{self, DEFAULT_SIZE_BOUND};
use discforge::disc;
use discforge::lattice::{lattice_index, IntMatrix};
use discforge::matroid;
use discforge::poly::default_var_names;
use discforge::Error;

#[derive(Parser)]
#[command(
    name = "discforge",
    version,
    about = "Gale duality, dual defect tests and sparse discriminants"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Largest n for support lattice enumeration.
    #[arg(long, global = true, env = "DISCFORGE_SIZE_BOUND", default_value_t = DEFAULT_SIZE_BOUND)]
    size_bound: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Side {
    /// Point configuration: a d x n matrix whose columns are the points.
    A,
    /// Gale vectors: an n x m matrix whose rows are the vectors.
    B,
}

#[derive(Args)]
struct Input {
    /// Matrix as JSON, e.g. "[[1,1,1],[0,1,2]]".
    #[arg(long, conflicts_with = "file", required_unless_present = "file")]
    matrix: Option<String>,
    /// File holding the matrix JSON.
    file: Option<PathBuf>,
}

#[derive(Args)]
struct SidedInput {
    #[command(flatten)]
    input: Input,
    /// Which side the matrix describes (default depends on the command).
    #[arg(long, value_enum)]
    side: Option<Side>,
}

#[derive(Subcommand)]
enum Command {
    /// Gale dual of a point configuration.
    Gale(Input),
    /// Point configuration dual to Gale vectors.
    Dual(Input),
    /// Index of the lattice spanned by the rows.
    Index(Input),
    /// Reduced configuration: one vector per line.
    Reduce(SidedInput),
    /// Dual defect decision with witness.
    Defect(SidedInput),
    /// Dimension of the dual variety.
    Dualdim(SidedInput),
    /// Greedy decomposition and the rho bound.
    Decompose(SidedInput),
    /// Sparse discriminant.
    Discriminant {
        #[command(flatten)]
        input: SidedInput,
        /// Also print how the polynomial was obtained.
        #[arg(long)]
        trace: bool,
    },
    /// Whether a point of the torus lies on the discriminant locus.
    Member {
        #[command(flatten)]
        input: SidedInput,
        /// Comma separated rationals, one per point, e.g. "-1,3,-3,1/2".
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Cayley configuration of segments, e.g. "1,1,2".
    Cayley { spec: String },
    /// Divisibility check for the restriction to x_j = 0 along a line.
    CheckSpecialization {
        #[command(flatten)]
        input: SidedInput,
        /// Direction of the line, comma separated.
        #[arg(long, allow_hyphen_values = true)]
        direction: String,
        /// Row on the line to set to zero (0-based).
        #[arg(long)]
        row: usize,
    },
    /// Compare the restrictions to x_k = 0 and x_l = 0 for parallel rows.
    CheckGrouping {
        #[command(flatten)]
        input: SidedInput,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: usize,
    },
}

enum Failure {
    Parse(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

fn exit_code(f: &Failure) -> u8 {
    match f {
        Failure::Parse(_) | Failure::Lib(Error::Parse(_) | Error::DimensionMismatch(_)) => 2,
        Failure::Lib(Error::Unsupported(_)) => 4,
        Failure::Lib(_) => 3,
    }
}

fn read_matrix(input: &Input) -> Outcome<IntMatrix> {
    let text = match (&input.matrix, &input.file) {
        (Some(m), _) => m.clone(),
        (None, Some(p)) => {
            fs::read_to_string(p).map_err(|e| Failure::Parse(format!("{}: {e}", p.display())))?
        }
        (None, None) => return Err(Failure::Parse("no input matrix".into())),
    };
    let v: Value = serde_json::from_str(&text).map_err(|e| Failure::Parse(e.to_string()))?;
    // A file may hold either the bare matrix or an object with a "matrix" key.
    let v = match v {
        Value::Object(mut o) => o
            .remove("matrix")
            .ok_or_else(|| Failure::Parse("object without a \"matrix\" key".into()))?,
        other => other,
    };
    serde_json::from_value(v).map_err(|e| Failure::Parse(e.to_string()))
}

fn points(input: &SidedInput, default: Side) -> Outcome<PointConfiguration> {
    let m = read_matrix(&input.input)?;
    Ok(match input.side.unwrap_or(default) {
        Side::A => PointConfiguration::new(m)?,
        Side::B => dual_of(&GaleConfiguration::new(m))?.config,
    })
}

fn gale(input: &SidedInput, default: Side) -> Outcome<GaleConfiguration> {
    let m = read_matrix(&input.input)?;
    Ok(match input.side.unwrap_or(default) {
        Side::A => PointConfiguration::new(m)?.gale_dual(),
        Side::B => GaleConfiguration::new(m),
    })
}

fn parse_list<T: std::str::FromStr>(s: &str) -> Outcome<Vec<T>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| Failure::Parse(format!("cannot parse {:?}", t.trim())))
        })
        .collect()
}

fn matrix_text(m: &IntMatrix) -> String {
    (0..m.rows())
        .map(|i| {
            m.row(i)
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect::<Vec<_>>()
        .join("\n")
}

fn to_json<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report serializes")
}

/// Output in both formats.
struct Report {
    json: Value,
    text: String,
}

fn run(cli: &Cli) -> Outcome<Report> {
    let bound = cli.size_bound;
    Ok(match &cli.command {
        Command::Gale(input) => {
            let b = PointConfiguration::new(read_matrix(input)?)?.gale_dual();
            Report {
                json: json!({ "gale": to_json(b.matrix()) }),
                text: matrix_text(b.matrix()),
            }
        }
        Command::Dual(input) => {
            let d = dual_of(&GaleConfiguration::new(read_matrix(input)?))?;
            if d.pyramid {
                eprintln!("warning: the input has a zero row, so the dual is a pyramid");
            }
            Report {
                json: json!({ "matrix": to_json(d.config.matrix()), "pyramid": d.pyramid }),
                text: matrix_text(d.config.matrix()),
            }
        }
        Command::Index(input) => {
            let q: BigInt = lattice_index(&read_matrix(input)?)?;
            Report {
                json: json!({ "index": q.to_string() }),
                text: q.to_string(),
            }
        }
        Command::Reduce(input) => {
            let r = matroid::reduce_with_sources(&gale(input, Side::B)?);
            Report {
                json: json!({ "matrix": to_json(r.config.matrix()), "sources": r.sources }),
                text: matrix_text(r.config.matrix()),
            }
        }
        Command::Defect(input) => {
            let a = points(input, Side::A)?;
            let mut report = defect::is_dual_defect(&a.gale_dual())?;
            if report.defect && a.n() <= bound {
                report = report.with_dual_dim(&a, bound)?;
            }
            let text = format!(
                "defect: {}\nmethod: {:?}\ndual_dim: {}\nwitness: {}",
                report.defect,
                report.method,
                report.dual_dim.map_or("unknown".into(), |d| d.to_string()),
                serde_json::to_string(&report.witness).expect("witness serializes"),
            );
            Report {
                json: to_json(&report),
                text,
            }
        }
        Command::Dualdim(input) => {
            let d = defect::dual_variety_dim(&points(input, Side::A)?, bound)?;
            Report {
                json: json!({ "dual_dim": d }),
                text: d.to_string(),
            }
        }
        Command::Decompose(input) => {
            let r = defect::rho_bound(&gale(input, Side::B)?)?;
            Report {
                text: format!(
                    "rho: {}\nsufficient_defect: {}\nparts: {:?}",
                    r.rho, r.sufficient_defect, r.decomposition.parts
                ),
                json: to_json(&r),
            }
        }
        Command::Discriminant { input, trace } => {
            let r = disc::discriminant(&gale(input, Side::A)?)?;
            let names = default_var_names(r.polynomial.nvars());
            let poly = to_json(&r.polynomial.to_json(&names));
            if *trace {
                let prov = to_json(&r.provenance);
                Report {
                    text: format!("{}\n{}", r.polynomial, prov),
                    json: json!({ "polynomial": poly, "provenance": prov }),
                }
            } else {
                Report {
                    text: r.polynomial.to_string(),
                    json: poly,
                }
            }
        }
        Command::Member { input, point } => {
            let x = parse_list(point)?;
            let m = disc::membership(&gale(input, Side::A)?, &x)?;
            Report {
                json: json!({ "member": m }),
                text: m.to_string(),
            }
        }
        Command::Cayley { spec } => {
            let c = cayley_of_segments(&parse_list::<u32>(spec)?)?;
            Report {
                json: json!({ "matrix": to_json(c.matrix()) }),
                text: matrix_text(c.matrix()),
            }
        }
        Command::CheckSpecialization {
            input,
            direction,
            row,
        } => {
            let dir: Vec<BigInt> = parse_list(direction)?;
            let c = disc::check_specialization(&gale(input, Side::B)?, &dir, *row)?;
            let names = default_var_names(c.restricted.nvars());
            Report {
                text: format!(
                    "divides: {}\nsub_discriminant: {}\nrestricted: {}",
                    c.divides, c.sub_discriminant, c.restricted
                ),
                json: json!({
                    "divides": c.divides,
                    "complement": c.complement,
                    "sub_discriminant": c.sub_discriminant.to_json(&names),
                    "restricted": c.restricted.to_json(&names),
                    "quotient": c.quotient.map(|q| q.to_json(&names)),
                }),
            }
        }
        Command::CheckGrouping { input, k, l } => {
            let ok = disc::check_restriction_grouping(&gale(input, Side::B)?, *k, *l)?;
            Report {
                json: json!({ "equal": ok }),
                text: ok.to_string(),
            }
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(r) => {
            match cli.format {
                Format::Json => println!("{}", r.json),
                Format::Text => println!("{}", r.text),
            }
            ExitCode::SUCCESS
        }
        Err(f) => {
            match &f {
                Failure::Parse(msg) => eprintln!("error: malformed input: {msg}"),
                Failure::Lib(e) => eprintln!("error: {e} ({e:?})"),
            }
            ExitCode::from(exit_code(&f))
        }
    }
}
