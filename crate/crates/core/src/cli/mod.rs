//! Command-line plumbing shared by the `depth` and `hochschild` binaries.

pub mod sequence;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Subcommand, ValueEnum};
use num_bigint::BigUint;
use rayon::prelude::*;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::burnside::{
    burnside_chain, eta_profile, intersection_index_count, subgroup_depth_bound, Over, DEFAULT_CHAIN_CAP,
};
use crate::error::{DepthError, Result};
use crate::exact_matrix::IntMatrix;
use crate::hochschild::{check_complex, Bimodule};
use crate::hopf::{
    depth_interval, describe, integral_and_normality, module_depth_over_h, module_depth_over_r, quotient_module_v,
    radical_and_chevalley, restriction_monotonicity, small_quantum, taft, HopfAlgebra, HopfJson, HopfSubalgebra,
    SubalgebraJson,
};
use crate::matrix_depth::{
    bipartite_odd_depth, branch_matrix, check_perron, min_h_depth, min_odd_depth, module_depth_h, InclusionData,
};
use crate::perm_group::{group_closure_capped, GroupSpec};
use crate::scalars::Rational;
use sequence::{sequence_depth, SequenceDepth};

pub const CAPS_ENV: &str = "DEPTHLAB_CAPS";

/// Resource limits, overridable through `DEPTHLAB_CAPS="key=value,..."`.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Caps {
    pub group_order: usize,
    pub tensor_degree: usize,
    /// Largest number of entries in an input inclusion matrix.
    pub matrix_entries: usize,
    pub parallelism: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Self {
            group_order: crate::perm_group::MAX_GROUP_ORDER,
            tensor_degree: crate::hochschild::MAX_DEGREE,
            matrix_entries: 10_000,
            parallelism: std::thread::available_parallelism().map_or(1, |n| n.get()),
        }
    }
}

impl Caps {
    /// Parses `key=value` pairs separated by commas; unknown keys and
    /// non-positive values are rejected.
    pub fn parse(spec: &str) -> Result<Self> {
        let mut caps = Self::default();
        for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| DepthError::invalid(format!("cap {item:?} is not key=value")))?;
            let value: usize = value
                .trim()
                .parse()
                .map_err(|_| DepthError::invalid(format!("cap {key} needs a positive integer")))?;
            if value == 0 {
                return Err(DepthError::invalid(format!("cap {key} must be positive")));
            }
            match key.trim() {
                "group_order" => caps.group_order = value,
                "tensor_degree" => caps.tensor_degree = value,
                "matrix_entries" => caps.matrix_entries = value,
                "parallelism" => caps.parallelism = value,
                other => return Err(DepthError::invalid(format!("unknown cap {other:?}"))),
            }
        }
        Ok(caps)
    }

    pub fn from_env() -> Result<Self> {
        match std::env::var(CAPS_ENV) {
            Ok(s) => Self::parse(&s),
            Err(_) => Ok(Self::default()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OverArg {
    Sub,
    Big,
}

#[derive(Clone, Debug, Subcommand)]
pub enum DepthCommand {
    /// Depths of a semisimple inclusion from its inclusion matrix.
    Matrix(MatrixArgs),
    /// The symmetric group ladder `C S_n in C S_(n+1)`.
    Symmetric {
        /// One or more values of n.
        #[arg(long, required = true, num_args = 1..)]
        n: Vec<usize>,
    },
    /// Burnside-ring bounds for a subgroup pair.
    Group {
        #[arg(long)]
        group: PathBuf,
        #[arg(long)]
        subgroup: PathBuf,
        #[arg(long, value_enum, default_value = "sub")]
        over: OverArg,
    },
    /// The Taft algebra `H_n` over its group subalgebra.
    Taft {
        #[arg(long)]
        n: usize,
    },
    /// The small quantum group of dimension `d^3` over its Borel part.
    Quantum {
        #[arg(long)]
        d: usize,
    },
    /// A Hopf algebra and subalgebra from JSON files.
    Hopf {
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        subalgebra: PathBuf,
    },
    /// Divisibility depth of an integer sequence prefix.
    Seq {
        #[arg(long, value_delimiter = ',', required = true)]
        values: Vec<u64>,
        /// Number of consecutive indices tested; defaults to half the prefix.
        #[arg(long)]
        probe: Option<usize>,
    },
}

#[derive(Clone, Debug, Args)]
pub struct MatrixArgs {
    #[arg(long)]
    pub file: PathBuf,
    #[arg(long)]
    pub triv_row: Option<usize>,
    /// JSON array of the dimensions of the row simples.
    #[arg(long, requires = "index")]
    pub dims: Option<PathBuf>,
    /// Index `[A : B]` as an integer or fraction.
    #[arg(long, requires = "dims")]
    pub index: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PairArg {
    Taft2,
    Taft3,
    Taft4,
    Taft5,
    Taft6,
    Quantum2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CoefficientArg {
    /// `H` itself with the adjoint action.
    Adjoint,
}

#[derive(Clone, Debug, Subcommand)]
pub enum HochschildCommand {
    /// Builds the cochain complex and checks that it squares to zero.
    Check {
        #[arg(long, value_enum)]
        pair: PairArg,
        #[arg(long, value_enum, default_value = "adjoint")]
        module: CoefficientArg,
        #[arg(long, default_value_t = 2)]
        max_degree: usize,
    },
}

#[derive(Clone, Debug)]
pub enum Command {
    Depth(DepthCommand),
    Hochschild(HochschildCommand),
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub command: Command,
    pub caps: Caps,
    /// Where to write the report besides standard output.
    pub output: Option<PathBuf>,
}

fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn read_input(path: &Path, inputs: &mut Vec<Value>) -> Result<String> {
    let bytes = std::fs::read(path)
        .map_err(|e| DepthError::invalid(format!("cannot read {}: {e}", path.display())))?;
    inputs.push(json!({ "path": path.display().to_string(), "sha256": sha256_hex(&bytes) }));
    String::from_utf8(bytes).map_err(|_| DepthError::invalid(format!("{} is not UTF-8", path.display())))
}

fn parameters_input(params: &Value, inputs: &mut Vec<Value>) {
    let text = serde_json::to_string(params).expect("json");
    inputs.push(json!({ "parameters": params, "sha256": sha256_hex(text.as_bytes()) }));
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable report")
}

fn matrix_report(data: &InclusionData) -> Result<Value> {
    let mut reports = vec![to_value(&min_odd_depth(data)?), to_value(&min_h_depth(data)?)];
    if data.triv_row().is_some() {
        reports.push(to_value(&module_depth_h(data)?));
    }
    let mut out = json!({});
    match bipartite_odd_depth(data) {
        Ok(r) => reports.push(to_value(&r)),
        Err(e @ DepthError::Disconnected { .. }) => out["bipartite_error"] = json!(e.to_string()),
        Err(e) => return Err(e),
    }
    out["reports"] = json!(reports);
    Ok(out)
}

fn interval_of(report: &Value) -> [u64; 2] {
    let v = &report["reports"][1]["value"];
    [v[0].as_u64().unwrap_or(0), v[1].as_u64().unwrap_or(u64::MAX)]
}

fn parse_dims(text: &str) -> Result<Vec<BigUint>> {
    let raw: Vec<Value> = serde_json::from_str(text).map_err(|e| DepthError::Parse {
        position: e.column(),
        message: format!("line {}: {e}", e.line()),
    })?;
    raw.iter()
        .map(|v| match v {
            Value::Number(n) => n
                .as_u64()
                .map(BigUint::from)
                .ok_or_else(|| DepthError::invalid(format!("dimension {n} is not a nonnegative integer"))),
            Value::String(s) => s
                .parse()
                .map_err(|_| DepthError::invalid(format!("dimension {s:?} is not an integer"))),
            other => Err(DepthError::invalid(format!("dimension {other} is not an integer"))),
        })
        .collect()
}

fn parse_rational(s: &str) -> Result<Rational> {
    s.trim()
        .parse::<Rational>()
        .map_err(|_| DepthError::invalid(format!("index {s:?} is not a rational number")))
}

fn symmetric_case(n: usize) -> Result<Value> {
    let data = branch_matrix(n)?;
    let mut v = matrix_report(&data)?;
    v["n"] = json!(n);
    Ok(v)
}

fn unsupported_or<T: serde::Serialize>(r: Result<T>) -> Result<Value> {
    match r {
        Ok(v) => Ok(to_value(&v)),
        Err(DepthError::Unsupported(msg)) => Ok(json!({ "unsupported": msg })),
        Err(e) => Err(e),
    }
}

/// Full report for a Hopf subalgebra pair.
pub fn hopf_pair_report(h: &HopfAlgebra, r: &HopfSubalgebra) -> Result<Value> {
    let v = quotient_module_v(h, r)?;
    let depth_r = module_depth_over_r(h, r)?;
    let interval = depth_interval(h, r)?;
    let integral = integral_and_normality(h, r)?;
    let radical = radical_and_chevalley(r.algebra())?;
    let ladder = restriction_monotonicity(h, r, &v.module)?;
    let rad_labels: Vec<String> = radical.radical.iter().map(|e| describe(r.algebra(), e)).collect();
    Ok(json!({
        "dim_H": h.dim(),
        "dim_R": r.dim(),
        "dim_V": v.module.dim(),
        "V_basis": v.reps().iter().map(|&i| format!("{}bar", h.labels()[i])).collect::<Vec<_>>(),
        "reports": [to_value(&depth_r), to_value(&interval)],
        "module_depth_H": unsupported_or(module_depth_over_h(h, r))?,
        "depth_ladder": {
            "over_R": ladder.over_r,
            "over_H": ladder.over_h,
            "holds": ladder.holds,
        },
        "integral": {
            "element": describe(h, &integral.integral.element),
            "is_normal": integral.is_normal,
            "V_iso_check": integral.v_iso_check,
            "R_semisimple": integral.r_semisimple,
        },
        "radical_R": {
            "basis": rad_labels,
            "is_hopf_ideal": radical.is_hopf_ideal,
            "split_commutative_quotient": radical.split_commutative,
        },
    }))
}

fn run_depth(cmd: &DepthCommand, caps: &Caps, inputs: &mut Vec<Value>) -> Result<Value> {
    match cmd {
        DepthCommand::Matrix(args) => {
            let text = read_input(&args.file, inputs)?;
            let m = IntMatrix::from_json_str(&text)?;
            let entries = m.rows() * m.cols();
            if entries > caps.matrix_entries {
                return Err(DepthError::cap("inclusion matrix entries", caps.matrix_entries));
            }
            let mut data = InclusionData::new(m)?;
            if let Some(row) = args.triv_row {
                data = data.with_triv_row(row)?;
            }
            let mut perron = None;
            if let (Some(dims), Some(index)) = (&args.dims, &args.index) {
                let dims = parse_dims(&read_input(dims, inputs)?)?;
                data = data.with_dims(dims, parse_rational(index)?)?;
                perron = Some(check_perron(&data)?);
            }
            let mut out = matrix_report(&data)?;
            if let Some(p) = perron {
                out["perron_consistent"] = json!(p);
            }
            Ok(out)
        }
        DepthCommand::Symmetric { n } => {
            parameters_input(&json!({ "n": n }), inputs);
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(caps.parallelism)
                .build()
                .map_err(|e| DepthError::invalid(format!("thread pool: {e}")))?;
            let cases = pool.install(|| n.par_iter().map(|&k| symmetric_case(k)).collect::<Result<Vec<_>>>())?;
            Ok(json!({ "cases": cases }))
        }
        DepthCommand::Group { group, subgroup, over } => {
            let gspec = GroupSpec::from_json_str(&read_input(group, inputs)?)?;
            let hspec = GroupSpec::from_json_str(&read_input(subgroup, inputs)?)?;
            if hspec.degree != gspec.degree {
                return Err(DepthError::DimensionMismatch("group and subgroup degrees differ".into()));
            }
            let g = group_closure_capped(gspec.degree, &gspec.generators, caps.group_order)?;
            if let Some(p) = hspec.generators.iter().find(|p| !g.contains(p)) {
                return Err(DepthError::invalid(format!("subgroup generator {p} is not in the group")));
            }
            let h = g.subgroup(&hspec.generators)?;
            let chain = match over {
                OverArg::Sub => burnside_chain(&g, &h, Over::Sub(&h), DEFAULT_CHAIN_CAP)?,
                OverArg::Big => burnside_chain(&g, &h, Over::Big, DEFAULT_CHAIN_CAP)?,
            };
            let bound = subgroup_depth_bound(&g, &h)?;
            Ok(json!({
                "group_order": g.order(),
                "subgroup_order": h.order(),
                "normal": bound.normal,
                "reports": bound.reports,
                "depth_upper_bound": bound.depth_upper(),
                "h_depth_upper_bound": bound.h_depth_upper(),
                "chain": chain,
                "eta_profile": eta_profile(&g, &h)?,
                "intersection_class_count": intersection_index_count(&g, &h)?,
            }))
        }
        DepthCommand::Taft { n } => {
            parameters_input(&json!({ "taft": n }), inputs);
            let (h, r) = taft(*n)?;
            let mut report = hopf_pair_report(&h, &r)?;
            // The minimum depth of a Taft pair is known to be 3.
            let [lo, hi] = interval_of(&report);
            report["known_values"] = json!({
                "depth": 3,
                "interval_contains_depth": lo <= 3 && 3 <= hi,
            });
            Ok(report)
        }
        DepthCommand::Quantum { d } => {
            parameters_input(&json!({ "small_quantum": d }), inputs);
            let (h, r) = small_quantum(*d)?;
            let mut report = hopf_pair_report(&h, &r)?;
            if *d == 2 {
                // Published bounds for the eight-dimensional pair, kept next
                // to the exact values rather than replacing them.
                let [_, hi] = interval_of(&report);
                let module = report["reports"][0]["value"].as_u64().unwrap_or(u64::MAX);
                report["known_values"] = json!({
                    "module_depth_R_at_most": 2,
                    "depth_at_most": 6,
                    "within_bounds": module <= 2 && hi <= 6,
                });
            }
            Ok(report)
        }
        DepthCommand::Hopf { file, subalgebra } => {
            let h = HopfJson::from_json_str(&read_input(file, inputs)?)?.build()?;
            let r = SubalgebraJson::from_json_str(&read_input(subalgebra, inputs)?)?.build(&h)?;
            hopf_pair_report(&h, &r)
        }
        DepthCommand::Seq { values, probe } => {
            let probe = probe.unwrap_or((values.len() / 2).max(1));
            parameters_input(&json!({ "values": values, "probe": probe }), inputs);
            let result = sequence_depth(values, probe)?;
            let depth = match result {
                SequenceDepth::Depth(m) => json!(m),
                SequenceDepth::ExceedsProbe { .. } => json!("exceeds probe"),
            };
            Ok(json!({ "depth": depth, "detail": result, "probe": probe }))
        }
    }
}

fn run_hochschild(cmd: &HochschildCommand, caps: &Caps, inputs: &mut Vec<Value>) -> Result<Value> {
    let HochschildCommand::Check {
        pair,
        module,
        max_degree,
    } = cmd;
    if *max_degree > caps.tensor_degree {
        return Err(DepthError::cap("cochain degree", caps.tensor_degree));
    }
    let name = pair.to_possible_value().expect("named").get_name().to_string();
    parameters_input(&json!({ "pair": name, "module": "adjoint", "max_degree": max_degree }), inputs);
    let (h, r) = match pair {
        PairArg::Taft2 => taft(2)?,
        PairArg::Taft3 => taft(3)?,
        PairArg::Taft4 => taft(4)?,
        PairArg::Taft5 => taft(5)?,
        PairArg::Taft6 => taft(6)?,
        PairArg::Quantum2 => small_quantum(2)?,
    };
    let m = match module {
        CoefficientArg::Adjoint => Bimodule::regular(&h),
    };
    let report = check_complex(&h, &r, &m, *max_degree)?;
    Ok(json!({
        "square_is_zero": report.square_is_zero(),
        "complex": report,
    }))
}

/// Runs a command and returns its JSON report.
pub fn run(config: &RunConfig) -> Result<Value> {
    let mut inputs = Vec::new();
    let (name, body) = match &config.command {
        Command::Depth(cmd) => (depth_name(cmd), run_depth(cmd, &config.caps, &mut inputs)?),
        Command::Hochschild(cmd) => ("hochschild check", run_hochschild(cmd, &config.caps, &mut inputs)?),
    };
    let mut out = json!({
        "command": name,
        "version": env!("CARGO_PKG_VERSION"),
        "inputs": inputs,
    });
    if let Value::Object(fields) = body {
        for (k, v) in fields {
            out[k] = v;
        }
    }
    Ok(out)
}

fn depth_name(cmd: &DepthCommand) -> &'static str {
    match cmd {
        DepthCommand::Matrix(_) => "depth matrix",
        DepthCommand::Symmetric { .. } => "depth symmetric",
        DepthCommand::Group { .. } => "depth group",
        DepthCommand::Taft { .. } => "depth taft",
        DepthCommand::Quantum { .. } => "depth quantum",
        DepthCommand::Hopf { .. } => "depth hopf",
        DepthCommand::Seq { .. } => "depth seq",
    }
}

/// Runs, prints the report (or an error object) and returns the exit code.
pub fn execute(config: &RunConfig) -> i32 {
    match run(config) {
        Ok(report) => {
            let text = serde_json::to_string_pretty(&report).expect("json");
            // A closed pipe downstream is not an error of the computation.
            let _ = writeln!(std::io::stdout().lock(), "{text}");
            if let Some(path) = &config.output {
                if let Err(e) = std::fs::write(path, format!("{text}\n")) {
                    eprintln!("cannot write {}: {e}", path.display());
                    return 2;
                }
            }
            0
        }
        Err(e) => report_error(&e),
    }
}

/// Prints a JSON error object to standard error and returns the exit code.
pub fn report_error(e: &DepthError) -> i32 {
    let code = e.exit_code();
    let body = json!({ "error": e.to_string(), "exit_code": code });
    eprintln!("{}", serde_json::to_string_pretty(&body).expect("json"));
    code
}
