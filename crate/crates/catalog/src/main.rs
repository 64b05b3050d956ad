use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use dpverify::ops::{blowup, eliminations, feasible, triple};
use dpverify::schema::LatticeSpec;
use dpverify::value::{class, int, rational};
use dpverify::{builtin, emit_report, load_case, parse_case_file, resolve, run_cases, Format, Summary};
use dpverify_core::threefold::{dpd_transform, dpd_transform_by_system, FiberGame, GameResult, PipelineInput};
use dpverify_core::{enum_classes, Constraint, DegreeWindow, Lattice, Namespace};

const USAGE_ERROR: u8 = 2;

#[derive(Parser)]
#[command(name = "dpverify", version, about = "Exact verification of del Pezzo fibration constructions")]
struct Cli {
    /// Print the builtin case ids in table order and exit.
    #[arg(long)]
    list_cases: bool,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Run case files and emit a verification report.
    Verify {
        /// Builtin case id or path to a case file; repeatable.
        #[arg(long = "case", value_name = "ID|PATH")]
        cases: Vec<String>,
        /// Run every builtin case.
        #[arg(long, conflicts_with = "cases")]
        all: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: FormatArg,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Include per-case wall time (makes output differ between runs).
        #[arg(long)]
        timing: bool,
    },
    /// List lattice classes of a given square under linear constraints.
    Enumerate {
        /// Builtin case id, case file, or a bare `{"basis", "gram"}` file.
        #[arg(long, value_name = "ID|FILE")]
        lattice: String,
        #[arg(long, allow_hyphen_values = true)]
        square: i64,
        /// Lower end of the degree window (defaults to 0 when --deg-max is given).
        #[arg(long, allow_hyphen_values = true)]
        deg_min: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        deg_max: Option<i64>,
        /// Class measuring degree for the window.
        #[arg(long, default_value = "H")]
        degree_by: String,
        /// `EXPR=VALUE`, e.g. `H-Gamma=0`; repeatable.
        #[arg(long = "constraint", value_name = "EXPR=VALUE", allow_hyphen_values = true)]
        constraints: Vec<String>,
    },
    /// Evaluate the fiber degree game for ad-hoc input.
    Game {
        #[arg(long)]
        d: i64,
        #[arg(long, allow_hyphen_values = true)]
        kw3: i64,
        #[arg(long, allow_hyphen_values = true)]
        kwb: i64,
        #[arg(long, allow_hyphen_values = true)]
        g: i64,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(USAGE_ERROR) } else { ExitCode::SUCCESS };
        }
    };
    if cli.list_cases {
        let ids: String = builtin::ids().map(|id| format!("{id}\n")).collect();
        return emit_stdout(&ids);
    }
    let result = match cli.command {
        Some(Command::Verify { cases, all, format, out, timing }) => verify(cases, all, format, out, timing),
        Some(Command::Enumerate { lattice, square, deg_min, deg_max, degree_by, constraints }) => {
            enumerate(&lattice, square, deg_min, deg_max, &degree_by, &constraints).map(print_json)
        }
        Some(Command::Game { d, kw3, kwb, g }) => game(d, kw3, kwb, g).map(print_json),
        None => Err("no subcommand given; try --help".to_string()),
    };
    match result {
        Ok(code) => code,
        Err(message) => {
            eprintln!("dpverify: {message}");
            ExitCode::from(USAGE_ERROR)
        }
    }
}

fn print_json(v: Value) -> ExitCode {
    emit_stdout(&format!("{}\n", serde_json::to_string_pretty(&v).expect("serializable")))
}

/// Write to stdout, treating a closed pipe as success.
fn emit_stdout(text: &str) -> ExitCode {
    let mut out = std::io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("dpverify: {e}");
            ExitCode::from(USAGE_ERROR)
        }
    }
}

fn verify(
    sources: Vec<String>,
    all: bool,
    format: FormatArg,
    out: Option<PathBuf>,
    timing: bool,
) -> Result<ExitCode, String> {
    let sources: Vec<String> =
        if all || sources.is_empty() { builtin::ids().map(str::to_string).collect() } else { sources };
    let cases = sources.iter().map(|s| load_case(s).map_err(|e| e.to_string())).collect::<Result<Vec<_>, _>>()?;
    let mut reports = run_cases(&cases);
    if !timing {
        reports = reports.into_iter().map(|r| r.without_timing()).collect();
    }
    let format = match format {
        FormatArg::Json => Format::Json,
        FormatArg::Text => Format::Text,
    };
    emit_report(&reports, format, out.as_deref()).map_err(|e| e.to_string())?;
    Ok(ExitCode::from(Summary::of(&reports).exit_code() as u8))
}

fn load_namespace(source: &str) -> Result<Namespace, String> {
    if builtin::source(source).is_some() {
        let case = load_case(source).map_err(|e| e.to_string())?;
        return case.namespace.ok_or_else(|| format!("case {source} has no lattice"));
    }
    let text = std::fs::read_to_string(source).map_err(|e| format!("reading {source}: {e}"))?;
    if let Ok(spec) = serde_json::from_str::<LatticeSpec>(&text) {
        let gram = spec.gram.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        let lattice = Lattice::new(source, spec.basis, gram).map_err(|e| format!("{source}: {e}"))?;
        return Ok(Namespace::new(&lattice));
    }
    let case =
        resolve(parse_case_file(&text).map_err(|e| format!("{source}: {e}"))?).map_err(|e| format!("{source}: {e}"))?;
    case.namespace.ok_or_else(|| format!("{source} has no lattice"))
}

fn enumerate(
    source: &str,
    square: i64,
    deg_min: Option<i64>,
    deg_max: Option<i64>,
    degree_by: &str,
    constraint_args: &[String],
) -> Result<Value, String> {
    let ns = load_namespace(source)?;
    let lattice: &Arc<Lattice> = ns.lattice();
    let mut constraints = Vec::new();
    let mut constraint_json = Vec::new();
    for arg in constraint_args {
        let (lhs, rhs) = arg.rsplit_once('=').ok_or_else(|| format!("constraint `{arg}` is not EXPR=VALUE"))?;
        let value: i64 = rhs.trim().parse().map_err(|_| format!("constraint `{arg}`: `{rhs}` is not an integer"))?;
        let functional = ns.eval(lhs).map_err(|e| format!("constraint `{arg}`: {e}"))?;
        constraint_json.push(json!({"class": class(&functional), "value": value}));
        constraints.push(Constraint::new(functional, value));
    }
    let window = match (deg_min, deg_max) {
        (None, None) => None,
        (min, max) => {
            let functional = ns.eval(degree_by).map_err(|e| format!("--degree-by `{degree_by}`: {e}"))?;
            let min = min.unwrap_or(0);
            let max = max.ok_or("--deg-min needs --deg-max")?;
            Some(DegreeWindow::new(functional, min, max))
        }
    };
    let found =
        enum_classes(lattice, &BigInt::from(square), &constraints, window.as_ref()).map_err(|e| e.to_string())?;
    let classes: Vec<Value> = found
        .iter()
        .map(|c| {
            let mut entry = json!({"class": class(c), "label": c.to_string()});
            if let Some(w) = &window {
                entry["degree"] = int(&c.pair(&w.functional).expect("same lattice"));
            }
            entry
        })
        .collect();
    Ok(json!({
        "basis": lattice.basis_names(),
        "square": square,
        "constraints": constraint_json,
        "window": window.as_ref().map(|w| json!({"class": class(&w.functional), "min": int(&w.min), "max": int(&w.max)})),
        "count": found.len(),
        "classes": classes,
    }))
}

fn game_json(r: &GameResult) -> Value {
    json!({"kx3": rational(&r.kx3), "kx_dot_c": rational(&r.kx_dot_c), "z": rational(&r.z)})
}

fn game(d: i64, kw3: i64, kwb: i64, g: i64) -> Result<Value, String> {
    let input = PipelineInput::new(kw3, kwb, g, d).map_err(|e| e.to_string())?;
    let closed = dpd_transform(&input);
    let system = dpd_transform_by_system(&input).map_err(|e| e.to_string())?;
    let fiber_game = FiberGame::new(input.degree);
    let admissible = fiber_game.admissible_triple().map_err(|e| e.to_string())?;
    Ok(json!({
        "input": {"d": d, "kw3": kw3, "kw_dot_b": kwb, "g_b": g},
        "blowup": blowup(&input.blowup()),
        "closed_form": game_json(&closed),
        "system": game_json(&system),
        "agree": closed == system,
        "admissible_triple": triple(&admissible),
        "feasible": feasible(&fiber_game.feasible_triples()),
        "eliminations": eliminations(&fiber_game.eliminations()),
    }))
}
