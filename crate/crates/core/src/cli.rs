//! Command-line front end. Machine output is JSON on stdout; diagnostics go to stderr.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::characters::{dump_window, NamedCharacter, WeightBox};
use crate::error::{Error, Result};
use crate::euler::euler_mult;
use crate::localcoh::{iterated_lc, iterated_to_json, OrbitId};
use crate::orbits::{classify_orbit, Tensor222};
use crate::quiver::{check_all, hypermatrix_quiver, DEFAULT_LENGTH_CAP};
use crate::simples::{mult_composite, mult_simple, witness_table, ModuleId, SimpleId};
use crate::verify::{run_target, VerifyOptions, DEFAULT_ORACLE_DEGREE, DEFAULT_SEED};
use crate::weights::TripleWeight;

#[derive(Debug, Parser)]
#[command(name = "hyperdmod", version, about = "Equivariant D-modules on 2x2x2 hypermatrices")]
pub struct Cli {
    /// Pretty-print the JSON output.
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct WeightArg {
    /// Triple weight as JSON, e.g. `[[3,1],[2,2],[2,2]]`.
    #[arg(long, allow_hyphen_values = true)]
    pub weight: String,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Multiplicity of a weight in S, SymV, E, S_h, S_h_sqrt, a simple, or a composite module.
    Mult {
        #[arg(long)]
        module: String,
        #[command(flatten)]
        weight: WeightArg,
    },
    /// Multiplicity of a weight in a simple module, or "unknown".
    SimpleMult {
        #[arg(long)]
        simple: String,
        #[command(flatten)]
        weight: WeightArg,
    },
    /// Every nonzero multiplicity of a character inside a box of weights.
    Dump {
        #[arg(long)]
        module: String,
        /// `lo,hi`: bounds on all six weight entries.
        #[arg(long = "box", allow_hyphen_values = true)]
        window: String,
    },
    /// Multiplicity in the Euler characteristic of the Segre desingularization.
    Euler {
        #[command(flatten)]
        weight: WeightArg,
    },
    /// Path spaces of the bound quiver.
    Quiver {
        #[command(subcommand)]
        action: QuiverAction,
    },
    /// Iterated local cohomology along a comma-separated list of orbits.
    Lc {
        #[arg(long)]
        module: String,
        #[arg(long, default_value = "")]
        supports: String,
    },
    /// Orbit of a tensor read from a JSON file.
    Classify {
        #[arg(long)]
        tensor: PathBuf,
    },
    /// Run an acceptance check by name, or `all`.
    Verify {
        target: String,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_ORACLE_DEGREE)]
        dmax: usize,
    },
    /// The eight witness weights.
    WitnessTable,
}

#[derive(Debug, Subcommand)]
pub enum QuiverAction {
    /// Basis of the paths between two vertices modulo the relations.
    Paths {
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long, default_value_t = DEFAULT_LENGTH_CAP)]
        cap: usize,
    },
    /// All structural checks.
    Check,
}

/// A successful command: JSON for stdout, lines for stderr, and the exit code.
struct Output {
    value: Value,
    diagnostics: Vec<String>,
    code: i32,
}

impl Output {
    fn ok(value: Value) -> Self {
        Self { value, diagnostics: Vec::new(), code: 0 }
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn parse_box(text: &str) -> Result<WeightBox> {
    let (lo, hi) = text
        .split_once(',')
        .ok_or_else(|| Error::Parse(format!("box `{text}` is not of the form lo,hi")))?;
    let parse = |s: &str| s.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad bound `{s}`")));
    Ok(WeightBox::new(parse(lo)?, parse(hi)?))
}

/// Input weights are kept small enough that every later shift stays far from overflow.
const MAX_WEIGHT_ENTRY: i64 = 1 << 20;

fn parse_weight(arg: &WeightArg) -> Result<TripleWeight> {
    let w = TripleWeight::parse_json(&arg.weight)?;
    if w.max_abs() > MAX_WEIGHT_ENTRY {
        return Err(Error::Parse(format!("weight entries must have absolute value at most {MAX_WEIGHT_ENTRY}")));
    }
    Ok(w)
}

fn parse_supports(text: &str) -> Result<Vec<OrbitId>> {
    text.split(',').map(str::trim).filter(|s| !s.is_empty()).map(str::parse).collect()
}

fn execute(command: Command) -> Result<Output> {
    match command {
        Command::Mult { module, weight } => {
            let w = parse_weight(&weight)?;
            Ok(Output::ok(match module.parse::<NamedCharacter>() {
                Ok(c) => json!(c.mult(&w)?),
                Err(_) => to_value(&mult_composite(module.parse::<ModuleId>()?, &w)?),
            }))
        }
        Command::SimpleMult { simple, weight } => {
            let s: SimpleId = simple.parse()?;
            let w = parse_weight(&weight)?;
            Ok(Output::ok(to_value(&mult_simple(s, &w)?)))
        }
        Command::Dump { module, window } => {
            let class = dump_window(module.parse()?, parse_box(&window)?)?;
            Ok(Output::ok(to_value(&class)))
        }
        Command::Euler { weight } => {
            let w = parse_weight(&weight)?;
            Ok(Output::ok(json!(euler_mult(&w)?)))
        }
        Command::Quiver { action: QuiverAction::Paths { from, to, cap } } => {
            let basis = hypermatrix_quiver().path_basis(&from, &to, cap)?;
            Ok(Output::ok(json!({
                "from": basis.from,
                "to": basis.to,
                "dim": basis.dim(),
                "dims_by_length": basis.dims,
                "representatives": basis.representatives,
            })))
        }
        Command::Quiver { action: QuiverAction::Check } => {
            let checks = check_all()?;
            let diagnostics = checks
                .iter()
                .map(|c| format!("{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail))
                .collect();
            let code = i32::from(!checks.iter().all(|c| c.passed));
            Ok(Output { value: to_value(&checks), diagnostics, code })
        }
        Command::Lc { module, supports } => {
            let m: ModuleId = module.parse()?;
            let map = iterated_lc(m, &parse_supports(&supports)?)?;
            Ok(Output::ok(iterated_to_json(&map)))
        }
        Command::Classify { tensor } => {
            let text = std::fs::read_to_string(&tensor)
                .map_err(|e| Error::Io { path: tensor.display().to_string(), reason: e.to_string() })?;
            let orbit = classify_orbit(&Tensor222::parse_json(&text)?)?;
            Ok(Output::ok(json!({ "orbit": orbit })))
        }
        Command::Verify { target, seed, dmax } => {
            let reports = run_target(&target, VerifyOptions { seed, d_max: dmax })?;
            let diagnostics = reports
                .iter()
                .map(|r| format!("{} {}: {}", if r.passed { "PASS" } else { "FAIL" }, r.name, r.detail))
                .collect();
            let passed = reports.iter().all(|r| r.passed);
            let mut value = json!({ "target": target, "seed": seed, "passed": passed, "criteria": reports });
            if let [report] = reports.as_slice() {
                if let Some(Value::Object(data)) = &report.data {
                    value.as_object_mut().expect("object").extend(data.clone());
                }
            }
            Ok(Output { value, diagnostics, code: i32::from(!passed) })
        }
        Command::WitnessTable => Ok(Output::ok(to_value(&witness_table()))),
    }
}

/// Parse `argv`, run the command, and return the process exit code.
pub fn run<I, T>(argv: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let pretty = cli.json;
    match execute(cli.command) {
        Ok(output) => {
            for line in &output.diagnostics {
                let _ = writeln!(err, "{line}");
            }
            let text = if pretty {
                serde_json::to_string_pretty(&output.value)
            } else {
                serde_json::to_string(&output.value)
            }
            .expect("JSON value");
            let _ = writeln!(out, "{text}");
            output.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_parse() {
                2
            } else {
                1
            }
        }
    }
}
