//! Argument parsing and subcommand dispatch for the `fourlist` binary.
//!
//! Every run prints one JSON report to stdout. Exit codes: 0 success or
//! verified true, 1 verified false, 2 bad input, 3 size cap exceeded.

use clap::{Args, Parser, Subcommand, ValueEnum};
use fourlist::coloring::{count_extensions_with, ColoringError, CountOptions, ListAssignment};
use fourlist::configurations::{
    check_reducible_abstract, check_reducible_concrete, find_poppies, find_small_4faces,
    find_stamens, scan_reducible_up_to_size, ConfigError, Configuration, ScanMode, ScanOptions,
    DEFAULT_ABSTRACT_CAP, DEFAULT_CONCRETE_CAP, DEFAULT_STAMEN_VERTICES,
};
use fourlist::corpus;
use fourlist::discharging::{
    apply_rules, check_charge_identity, check_hypotheses, threshold_arithmetic,
    verify_claim_bounds, DischargeError, DischargeParams, Rule1Mode,
};
use fourlist::harness::{
    criticality_check, main_bound_check, per_component_bound, CriticalityParams,
    CriticalityReading, HarnessError, DEFAULT_COUNT_CAP, DEFAULT_CRITICALITY_CAP,
};
use fourlist::io::{
    digest_inputs, import_graph6, parse_embedding, to_json, EmbeddingDocument, ExitStatus,
    Instance, IoError, RunReport,
};
use fourlist::rational::{self, Rational};
use fourlist::VertexId;
use serde_json::{json, Value};
use std::ffi::OsString;
use std::path::PathBuf;

fn parse_biguint(s: &str) -> Result<num_bigint::BigUint, String> {
    s.parse()
        .map_err(|_| format!("{s:?} is not a non-negative integer"))
}

#[derive(Parser, Debug)]
#[command(name = "fourlist", version, about = "Exact list-coloring and discharging checks")]
pub struct Cli {
    /// Worker threads for parallel searches; defaults to all cores.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Input {
    /// Embedding JSON document.
    #[arg(required_unless_present_any = ["fixture", "graph6"])]
    pub path: Option<PathBuf>,
    /// Load a bundled fixture by name instead of a file.
    #[arg(long, conflicts_with_all = ["path", "graph6"])]
    pub fixture: Option<String>,
    /// Read a graph6 file instead of JSON.
    #[arg(long, conflicts_with = "path")]
    pub graph6: Option<PathBuf>,
    /// JSON-lines rotation side file for --graph6, one line per graph.
    #[arg(long, requires = "graph6")]
    pub rotations: Option<PathBuf>,
    /// Which graph of the graph6 file to use, counting from 0.
    #[arg(long, default_value_t = 0, requires = "graph6")]
    pub index: usize,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Trace the faces of the embedding.
    Faces {
        #[command(flatten)]
        input: Input,
    },
    /// Euler characteristic and genus.
    Genus {
        #[command(flatten)]
        input: Input,
    },
    /// Count L-colorings extending the document's precoloring.
    Count {
        #[command(flatten)]
        input: Input,
        /// Stop once this many colorings are known.
        #[arg(long, value_parser = parse_biguint)]
        threshold: Option<num_bigint::BigUint>,
    },
    /// Decide whether a vertex set Q is a reducible configuration.
    CheckReducible {
        #[command(flatten)]
        input: Input,
        /// Comma-separated vertices of Q.
        #[arg(long, value_delimiter = ',', required = true)]
        q: Vec<VertexId>,
        /// Quantify over all residual lists instead of using the document's.
        #[arg(long = "abstract")]
        abstract_: bool,
        /// Vertex cap: G in concrete mode, Q in abstract mode.
        #[arg(long)]
        cap: Option<usize>,
    },
    /// List small 4-faces, stamens and poppies.
    FindConfigs {
        #[command(flatten)]
        input: Input,
        /// Largest stamen, in vertices.
        #[arg(long, default_value_t = DEFAULT_STAMEN_VERTICES)]
        max_stamen: usize,
    },
    /// Run the discharging rules and check the final-charge claims.
    Discharge {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value = "4/195", value_parser = rational::parse)]
        gamma: Rational,
        #[arg(long, value_enum, default_value_t = Rule1Arg::PerStamen)]
        rule1: Rule1Arg,
        /// Largest configuration the hypothesis scan looks for.
        #[arg(long, default_value_t = 8)]
        scan_size: usize,
        /// Do not scan for reducible configurations.
        #[arg(long)]
        skip_scan: bool,
    },
    /// Compare the number of extensions with the exponential bound.
    VerifyBound {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value = "1/8", value_parser = rational::parse)]
        epsilon: Rational,
        #[arg(long, default_value = "130", value_parser = rational::parse)]
        alpha: Rational,
        /// Replace α by this value and label the report as rescaled.
        #[arg(long, value_parser = rational::parse)]
        rescaled_alpha: Option<Rational>,
        #[arg(long, default_value_t = DEFAULT_COUNT_CAP)]
        cap: usize,
    },
    /// Decide exponential criticality exhaustively.
    Criticality {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value = "1/8", value_parser = rational::parse)]
        epsilon: Rational,
        #[arg(long, default_value = "130", value_parser = rational::parse)]
        alpha: Rational,
        #[arg(long, value_enum, default_value_t = ReadingArg::Joint)]
        reading: ReadingArg,
        #[arg(long, default_value_t = DEFAULT_CRITICALITY_CAP)]
        cap: usize,
    },
    /// Test every connected vertex set of G − V(H) up to a size.
    Scan {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 8)]
        max_size: usize,
        /// Use the document's lists instead of all residual lists.
        #[arg(long)]
        concrete: bool,
        /// Stop at the first size with a reducible set.
        #[arg(long)]
        stop_at_first: bool,
        /// Report only reducible sets.
        #[arg(long)]
        reducible_only: bool,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy)]
pub enum Rule1Arg {
    PerStamen,
    Strict,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
pub enum ReadingArg {
    Joint,
    Split,
}

/// What a run produced: the report (absent for help and usage errors),
/// free text for stdout and stderr, and the exit code.
pub struct Outcome {
    pub report: Option<RunReport>,
    pub stdout: String,
    pub stderr: String,
    pub code: u8,
}

enum Failure {
    Input(String),
    Cap(String),
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<ColoringError> for Failure {
    fn from(e: ColoringError) -> Self {
        match e {
            ColoringError::SizeCapExceeded { .. } => Failure::Cap(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

impl From<ConfigError> for Failure {
    fn from(e: ConfigError) -> Self {
        match e {
            ConfigError::SizeCapExceeded { .. } => Failure::Cap(e.to_string()),
            ConfigError::Coloring(c) => c.into(),
            _ => Failure::Input(e.to_string()),
        }
    }
}

impl From<DischargeError> for Failure {
    fn from(e: DischargeError) -> Self {
        match e {
            DischargeError::Scan(c) => c.into(),
            _ => Failure::Input(e.to_string()),
        }
    }
}

impl From<HarnessError> for Failure {
    fn from(e: HarnessError) -> Self {
        match e {
            HarnessError::SizeCapExceeded { .. } => Failure::Cap(e.to_string()),
            HarnessError::Coloring(c) => c.into(),
            HarnessError::Config(c) => c.into(),
            HarnessError::Discharge(d) => d.into(),
            _ => Failure::Input(e.to_string()),
        }
    }
}

/// Parses `argv` (including the program name) and runs the subcommand.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let (stdout, stderr) = if e.use_stderr() {
                (String::new(), text)
            } else {
                (text, String::new())
            };
            return Outcome {
                report: None,
                stdout,
                stderr,
                code: e.exit_code() as u8,
            };
        }
    };
    if let Some(jobs) = cli.jobs {
        // A second call in the same process keeps the first pool.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global();
    }
    let name = command_name(&cli.command);
    let loaded = load(input_of(&cli.command));
    let (digest, outcome) = match loaded {
        Ok((bytes, instance)) => {
            let (flags, result) = dispatch(&cli.command, &instance);
            let flags_text = to_json(&flags);
            let digest = digest_inputs([name.as_bytes(), &bytes, flags_text.as_bytes()]);
            (digest, result)
        }
        Err(f) => (digest_inputs([name.as_bytes()]), Err(f)),
    };
    let (result, status, stderr) = match outcome {
        Ok((value, status)) => (value, status, String::new()),
        Err(Failure::Input(m)) => (json!({ "error": m }), ExitStatus::InputError, m + "\n"),
        Err(Failure::Cap(m)) => (json!({ "error": m }), ExitStatus::CapExceeded, m + "\n"),
    };
    Outcome {
        report: Some(RunReport {
            command: name.to_string(),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            inputs_digest: digest,
            result,
            exit_status: status,
        }),
        stdout: String::new(),
        stderr,
        code: status.code(),
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Faces { .. } => "faces",
        Command::Genus { .. } => "genus",
        Command::Count { .. } => "count",
        Command::CheckReducible { .. } => "check-reducible",
        Command::FindConfigs { .. } => "find-configs",
        Command::Discharge { .. } => "discharge",
        Command::VerifyBound { .. } => "verify-bound",
        Command::Criticality { .. } => "criticality",
        Command::Scan { .. } => "scan",
    }
}

fn input_of(c: &Command) -> &Input {
    match c {
        Command::Faces { input }
        | Command::Genus { input }
        | Command::Count { input, .. }
        | Command::CheckReducible { input, .. }
        | Command::FindConfigs { input, .. }
        | Command::Discharge { input, .. }
        | Command::VerifyBound { input, .. }
        | Command::Criticality { input, .. }
        | Command::Scan { input, .. } => input,
    }
}

fn read(path: &PathBuf) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

/// The validated instance and the bytes that identify it.
fn load(input: &Input) -> Result<(Vec<u8>, Instance), Failure> {
    let (bytes, doc) = if let Some(name) = &input.fixture {
        let f = corpus::by_name(name)
            .ok_or_else(|| Failure::Input(format!("no fixture named {name:?}")))?;
        let doc = EmbeddingDocument::from_fixture(&f);
        (doc.to_json().into_bytes(), doc)
    } else if let Some(g6) = &input.graph6 {
        let text = read(g6)?;
        let rot = input.rotations.as_ref().map(read).transpose()?;
        let mut docs = import_graph6(&text, rot.as_deref())?;
        if input.index >= docs.len() {
            return Err(Failure::Input(format!(
                "--index {} but the file has {} graphs",
                input.index,
                docs.len()
            )));
        }
        let doc = docs.swap_remove(input.index);
        (doc.to_json().into_bytes(), doc)
    } else {
        let path = input.path.as_ref().expect("clap requires an input");
        let text = read(path)?;
        let doc = parse_embedding(&text)?;
        (text.into_bytes(), doc)
    };
    Ok((bytes, doc.validate()?))
}

type Result2 = Result<(Value, ExitStatus), Failure>;

fn lists_or_four(inst: &Instance) -> ListAssignment {
    inst.lists
        .clone()
        .unwrap_or_else(|| ListAssignment::uniform(inst.graph.vertex_count(), &[1, 2, 3, 4]))
}

fn value<T: serde::Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("reports serialize")
}

fn r(x: &Rational) -> Value {
    Value::String(rational::format(x))
}

fn dispatch(c: &Command, inst: &Instance) -> (Value, Result2) {
    match c {
        Command::Faces { .. } => (json!({}), Ok((faces(inst), ExitStatus::Success))),
        Command::Genus { .. } => (json!({}), Ok((value(&inst.graph.genus()), ExitStatus::Success))),
        Command::Count { threshold, .. } => (
            json!({ "threshold": threshold.as_ref().map(|t| t.to_string()) }),
            count(inst, threshold.clone()),
        ),
        Command::CheckReducible {
            q, abstract_, cap, ..
        } => (
            json!({ "q": q, "abstract": abstract_, "cap": cap }),
            check_reducible(inst, q, *abstract_, *cap),
        ),
        Command::FindConfigs { max_stamen, .. } => (
            json!({ "max_stamen": max_stamen }),
            Ok((find_configs(inst, *max_stamen), ExitStatus::Success)),
        ),
        Command::Discharge {
            gamma,
            rule1,
            scan_size,
            skip_scan,
            ..
        } => {
            let mode = match rule1 {
                Rule1Arg::PerStamen => Rule1Mode::PerStamen,
                Rule1Arg::Strict => Rule1Mode::Strict,
            };
            (
                json!({ "gamma": r(gamma), "rule1": value(&mode), "scan_size": scan_size, "skip_scan": skip_scan }),
                discharge(inst, gamma, mode, (!skip_scan).then_some(*scan_size)),
            )
        }
        Command::VerifyBound {
            epsilon,
            alpha,
            rescaled_alpha,
            cap,
            ..
        } => (
            json!({
                "epsilon": r(epsilon),
                "alpha": r(alpha),
                "rescaled_alpha": rescaled_alpha.as_ref().map(r),
                "cap": cap,
            }),
            verify_bound(inst, epsilon, alpha, rescaled_alpha.as_ref(), *cap),
        ),
        Command::Criticality {
            epsilon,
            alpha,
            reading,
            cap,
            ..
        } => {
            let reading = match reading {
                ReadingArg::Joint => CriticalityReading::Joint,
                ReadingArg::Split => CriticalityReading::Split,
            };
            (
                json!({ "epsilon": r(epsilon), "alpha": r(alpha), "reading": value(&reading), "cap": cap }),
                criticality(inst, epsilon, alpha, reading, *cap),
            )
        }
        Command::Scan {
            max_size,
            concrete,
            stop_at_first,
            reducible_only,
            ..
        } => (
            json!({
                "max_size": max_size,
                "concrete": concrete,
                "stop_at_first": stop_at_first,
                "reducible_only": reducible_only,
            }),
            scan(inst, *max_size, *concrete, *stop_at_first, *reducible_only),
        ),
    }
}

fn faces(inst: &Instance) -> Value {
    let g = &inst.graph;
    let faces: Vec<Value> = g
        .faces()
        .iter()
        .enumerate()
        .map(|(i, f)| json!({ "index": i, "length": f.len(), "walk": f.vertices }))
        .collect();
    json!({
        "n": g.vertex_count(),
        "edges": g.edge_count(),
        "chi": g.euler_characteristic(),
        "faces": faces,
    })
}

fn count(inst: &Instance, threshold: Option<num_bigint::BigUint>) -> Result2 {
    let lists = lists_or_four(inst);
    let result = count_extensions_with(
        inst.graph.graph(),
        &lists,
        &inst.precoloring,
        &CountOptions {
            threshold,
            parallel: true,
        },
    )?;
    Ok((value(&result), ExitStatus::Success))
}

fn check_reducible(inst: &Instance, q: &[VertexId], abstract_: bool, cap: Option<usize>) -> Result2 {
    let g = inst.graph.graph();
    let verdict = if abstract_ {
        if let Some(&v) = q.iter().find(|&&v| v < g.vertex_count() && inst.h.contains_vertex(v)) {
            return Err(ConfigError::MeetsH(v).into());
        }
        let c = Configuration::from_vertex_set(g, q)?;
        check_reducible_abstract(&c, 4, cap.unwrap_or(DEFAULT_ABSTRACT_CAP))?
    } else {
        let lists = lists_or_four(inst);
        check_reducible_concrete(g, &inst.h, q, &lists, cap.unwrap_or(DEFAULT_CONCRETE_CAP))?
    };
    let status = ExitStatus::from_verdict(verdict.reducible);
    Ok((
        json!({ "mode": if abstract_ { "abstract" } else { "concrete" }, "q": q, "verdict": value(&verdict) }),
        status,
    ))
}

fn find_configs(inst: &Instance, max_stamen: usize) -> Value {
    let g = &inst.graph;
    let four_faces: Vec<Value> = find_small_4faces(g, &inst.h)
        .into_iter()
        .map(|f| json!({ "face": f, "walk": g.faces()[f].vertices }))
        .collect();
    let stamens: Vec<_> = (0..g.vertex_count())
        .flat_map(|v| find_stamens(g.graph(), &inst.h, v, max_stamen))
        .collect();
    json!({
        "four_faces": four_faces,
        "stamens": value(&stamens),
        "poppies": value(&find_poppies(g.graph(), &inst.h, max_stamen)),
    })
}

fn discharge(inst: &Instance, gamma: &Rational, mode: Rule1Mode, scan: Option<usize>) -> Result2 {
    let p = DischargeParams::new(gamma.clone())?;
    let (g, h) = (&inst.graph, &inst.h);
    let d = apply_rules(g, h, &p, mode);
    let identity = check_charge_identity(&d.initial, g.euler_characteristic(), h.vertex_count(), &p);
    let conserved = d.initial.total() == d.final_.total();
    let hypotheses = scan.map(|s| check_hypotheses(g, h, s)).transpose()?;
    let claims = verify_claim_bounds(g, h, &p, &d.final_, hypotheses);
    let bounds = match per_component_bound(g, h, &p) {
        Ok(b) => value(&b),
        Err(e) => json!({ "error": e.to_string() }),
    };
    let pass = identity.holds && conserved && claims.all_pass;
    Ok((
        json!({
            "gamma": r(gamma),
            "rule1_mode": value(&mode),
            "identity": value(&identity),
            "conserved": conserved,
            "thresholds": value(&threshold_arithmetic(gamma)),
            "claims": value(&claims),
            "discharge": value(&d),
            "vertex_bounds": bounds,
        }),
        ExitStatus::from_verdict(pass),
    ))
}

fn verify_bound(
    inst: &Instance,
    epsilon: &Rational,
    alpha: &Rational,
    rescaled: Option<&Rational>,
    cap: usize,
) -> Result2 {
    let params = match rescaled {
        Some(a) => CriticalityParams::rescaled(epsilon.clone(), a.clone())?,
        None => CriticalityParams::new(epsilon.clone(), alpha.clone())?,
    };
    let lists = inst.k_lists(4)?;
    let report = main_bound_check(&inst.graph, &inst.h, &lists, &inst.precoloring, &params, cap)?;
    let status = ExitStatus::from_verdict(report.pass);
    Ok((
        json!({ "standard_regime": params.standard_regime(), "bound": value(&report) }),
        status,
    ))
}

fn criticality(
    inst: &Instance,
    epsilon: &Rational,
    alpha: &Rational,
    reading: CriticalityReading,
    cap: usize,
) -> Result2 {
    let params = CriticalityParams::new(epsilon.clone(), alpha.clone())?;
    let lists = lists_or_four(inst);
    let report = criticality_check(&inst.graph, &inst.h, &lists, &params, reading, cap)?;
    let status = ExitStatus::from_verdict(report.critical);
    Ok((value(&report), status))
}

fn scan(inst: &Instance, max_size: usize, concrete: bool, stop_at_first: bool, reducible_only: bool) -> Result2 {
    let lists;
    let mode = if concrete {
        lists = inst.k_lists(4)?;
        ScanMode::Concrete(&lists)
    } else {
        ScanMode::Abstract
    };
    let opts = ScanOptions {
        max_size,
        stop_at_first,
        reducible_only,
        ..Default::default()
    };
    let entries = scan_reducible_up_to_size(inst.graph.graph(), &inst.h, mode, &opts)?;
    let reducible = entries.iter().filter(|e| e.verdict.reducible).count();
    Ok((
        json!({
            "mode": if concrete { "concrete" } else { "abstract" },
            "sets_checked": entries.len(),
            "reducible": reducible,
            "entries": value(&entries),
        }),
        ExitStatus::Success,
    ))
}
