//! Argument handling for the `nilmult` binary, kept in a library so tests can
//! drive it with in-memory streams.

use std::io::Write;
use std::path::Path;

use clap::{Args, Parser, Subcommand, ValueEnum};
use nilmult::algebra::NilpotentAlgebra;
use nilmult::hall::{witt, HallBasis, DEFAULT_CEILING};
use nilmult::linalg::{rat, SparseVec};
use nilmult::multiplier::Analyzer;
use nilmult::report::{compare, expected_table, render_table};
use nilmult::{catalog, Error};
use serde_json::json;

#[derive(Parser, Debug)]
#[command(
    name = "nilmult",
    version,
    about = "c-nilpotent multipliers of nilpotent Lie algebras over Q"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    format: Format,

    /// Largest free-algebra basis to build.
    #[arg(long, default_value_t = DEFAULT_CEILING, global = true)]
    ceiling: usize,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Number of basic commutators of a given length (Witt's formula).
    Witt(Grading),
    /// List the Hall basis up to a given length.
    Basis(Grading),
    /// Structure constants and series of an algebra.
    Show(AlgebraArg),
    /// Dimension of the c-nilpotent multiplier.
    Mult {
        #[command(flatten)]
        algebra: AlgebraArg,
        /// Multiplier level.
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u8).range(1..=2))]
        c: u8,
    },
    /// s2 and the classification verdict.
    Classify(AlgebraArg),
    /// 2-capability with a witness from the 2-epicenter.
    Capable2(AlgebraArg),
    /// Recompute the corpus table and compare it with the shipped values.
    Report {
        /// Report JSON to compare against instead of the shipped table.
        #[arg(long)]
        expected: Option<String>,
    },
}

#[derive(Args, Debug)]
struct Grading {
    #[arg(long)]
    generators: usize,
    #[arg(long)]
    length: usize,
}

#[derive(Args, Debug)]
struct AlgebraArg {
    /// Catalog name, sum such as "L4_3+A(1)", or path to an algebra JSON file.
    #[arg(long)]
    algebra: String,
}

/// Runs the command line and returns the process exit code: 0 on success, 1
/// on user error, 2 on internal failure.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(Failure::Lib(e)) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_internal() {
                2
            } else {
                1
            }
        }
        Err(Failure::Report(lines)) => {
            for line in lines {
                let _ = writeln!(err, "{line}");
            }
            2
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

enum Failure {
    Lib(Error),
    Report(Vec<String>),
    Io(std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

fn load(source: &str) -> Result<NilpotentAlgebra, Error> {
    let path = Path::new(source);
    if path.is_file() || source.ends_with(".json") {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidArgument(format!("cannot read {source}: {e}")))?;
        return nilmult::json::from_json_str(&text);
    }
    catalog::catalog(source)
}

fn pretty(value: &serde_json::Value) -> String {
    serde_json::to_string_pretty(value).expect("serializable")
}

/// `2*x1 - x3` style rendering of a vector in the algebra basis.
fn render_vec(v: &SparseVec) -> String {
    let (zero, one) = (rat(0), rat(1));
    let mut s = String::new();
    for (i, c) in v.iter() {
        let negative = c < &zero;
        let magnitude = if negative { -c.clone() } else { c.clone() };
        if s.is_empty() {
            if negative {
                s.push('-');
            }
        } else {
            s.push_str(if negative { " - " } else { " + " });
        }
        if magnitude != one {
            s.push_str(&format!("{magnitude}*"));
        }
        s.push_str(&format!("x{}", i + 1));
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

fn vec_json(v: &SparseVec) -> serde_json::Value {
    v.iter()
        .map(|(i, c)| ((i + 1).to_string(), json!(c.to_string())))
        .collect::<serde_json::Map<_, _>>()
        .into()
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32, Failure> {
    let analyzer = Analyzer::new(cli.ceiling);
    let json_out = cli.format == Format::Json;
    match &cli.command {
        Command::Witt(g) => {
            let value = witt(g.generators as u64, g.length as u64)?;
            if json_out {
                let v = json!({ "generators": g.generators, "length": g.length, "witt": value.to_string() });
                writeln!(out, "{}", pretty(&v))?;
            } else {
                writeln!(out, "{value}")?;
            }
        }
        Command::Basis(g) => {
            let basis = HallBasis::generate_with_ceiling(g.generators, g.length, cli.ceiling)?;
            if json_out {
                let rows: Vec<_> = (0..basis.len())
                    .map(|r| json!({ "rank": r + 1, "length": basis.get(r).length(), "element": basis.render(r) }))
                    .collect();
                writeln!(out, "{}", pretty(&json!(rows)))?;
            } else {
                for r in 0..basis.len() {
                    writeln!(
                        out,
                        "{:>6}  {:>2}  {}",
                        r + 1,
                        basis.get(r).length(),
                        basis.render(r)
                    )?;
                }
            }
        }
        Command::Show(a) => {
            let l = load(&a.algebra)?;
            if json_out {
                writeln!(out, "{}", nilmult::json::to_json_string(&l))?;
            } else {
                let s = l.series();
                writeln!(out, "name: {}", l.label())?;
                writeln!(out, "dim: {}", l.dim())?;
                writeln!(out, "class: {}", s.class)?;
                let lcs: Vec<String> = s.lcs_dims.iter().map(usize::to_string).collect();
                writeln!(out, "lower central series: {}", lcs.join(" "))?;
                writeln!(out, "derived dim: {}", s.derived_dim)?;
                writeln!(out, "center dim: {}", s.center_dim)?;
                if !l.is_abelian() {
                    writeln!(out, "brackets:")?;
                }
                for ((i, j), v) in l.structure_constants() {
                    writeln!(out, "  [x{},x{}] = {}", i + 1, j + 1, render_vec(v))?;
                }
            }
        }
        Command::Mult { algebra, c } => {
            let l = load(&algebra.algebra)?;
            let row = analyzer.report(&l, *c as usize, false)?;
            if json_out {
                writeln!(
                    out,
                    "{}",
                    serde_json::to_string_pretty(&row).expect("serializable")
                )?;
            } else {
                writeln!(out, "{}", row.dim_multiplier)?;
            }
        }
        Command::Classify(a) => {
            let l = load(&a.algebra)?;
            let c = analyzer.classify(&l)?;
            if json_out {
                let v = json!({ "name": l.label(), "s2": c.s2, "verdict": c.verdict.as_str() });
                writeln!(out, "{}", pretty(&v))?;
            } else {
                writeln!(out, "s2: {}", c.s2)?;
                writeln!(out, "verdict: {}", c.verdict)?;
            }
        }
        Command::Capable2(a) => {
            let l = load(&a.algebra)?;
            let cap = analyzer.capability(&l)?;
            let witness = cap.witness();
            if json_out {
                let v = json!({
                    "name": l.label(),
                    "two_capable": cap.capable(),
                    "epicenter_dim": cap.epicenter.dim(),
                    "witness": witness.as_ref().map(vec_json),
                });
                writeln!(out, "{}", pretty(&v))?;
            } else {
                writeln!(out, "{}", cap.capable())?;
                if let Some(w) = witness {
                    writeln!(out, "witness: {}", render_vec(&w))?;
                }
            }
        }
        Command::Report { expected } => {
            let rows = analyzer.corpus_report()?;
            if json_out {
                writeln!(
                    out,
                    "{}",
                    serde_json::to_string_pretty(&rows).expect("serializable")
                )?;
            } else {
                write!(out, "{}", render_table(&rows))?;
            }
            let expected = match expected {
                None => expected_table()?,
                Some(path) => {
                    let text = std::fs::read_to_string(path)?;
                    serde_json::from_str(&text)
                        .map_err(|e| Error::Parse(format!("invalid report JSON in {path}: {e}")))?
                }
            };
            let diff = compare(&rows, &expected);
            if !diff.is_empty() {
                return Err(Failure::Report(
                    diff.into_iter()
                        .map(|m| {
                            format!(
                                "mismatch: {} {}: expected {}, found {}",
                                m.name, m.field, m.expected, m.found
                            )
                        })
                        .collect(),
                ));
            }
        }
    }
    Ok(0)
}
