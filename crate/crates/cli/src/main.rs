use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use twistlab::boolalg::BoolAlg;
use twistlab::evaluator::{EvalContext, EvalError};
use twistlab::folast::{self, free_vars};
use twistlab::lab::{self, LabError, SuiteConfig, Verdict};
use twistlab::proplogic::{self, proof, MatrixSpec, PropError};
use twistlab::twist::{designated_set, twist_domain, SemanticsKind, TwistVal};
use twistlab::universe::{UniverseError, UniverseStore};

#[derive(Parser)]
#[command(name = "twistlab", version, about = "Twist-valued models of set theory over finite Boolean algebras")]
struct Cli {
    #[command(flatten)]
    opts: Options,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Options {
    /// Number of atoms of the Boolean algebra 2^n.
    #[arg(long, global = true, default_value_t = 1)]
    atoms: u32,
    #[arg(long, global = true, value_enum, default_value_t = Semantics::Lpt0)]
    semantics: Semantics,
    /// Universe level to enumerate.
    #[arg(long, global = true, default_value_t = 3)]
    rank: u32,
    /// Largest number of elements or assignments to enumerate.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    budget: u64,
    /// Sample size for sampled checks.
    #[arg(long, global = true)]
    sample: Option<u64>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Universe dump to load, or to write when it does not exist yet.
    #[arg(long, global = true)]
    store: Option<PathBuf>,
    /// Record elapsed time in suite reports.
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Semantics {
    Lpt0,
    Ps3,
}

impl From<Semantics> for SemanticsKind {
    fn from(s: Semantics) -> Self {
        match s {
            Semantics::Lpt0 => SemanticsKind::Lpt0,
            Semantics::Ps3 => SemanticsKind::Ps3,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Matrix {
    Mpt0,
    Twist,
}

#[derive(Subcommand)]
enum Command {
    /// Print the algebra, the size of its twist domain and the designated values.
    Algebra,
    /// Enumerate the universe up to --rank and print or save the dump.
    Enumerate,
    /// Evaluate a formula; free variables range over the universe.
    Eval {
        #[arg(short = 'e', long = "expr")]
        expr: String,
    },
    /// Decide whether a propositional formula is a tautology.
    Taut {
        #[arg(short = 'e', long = "expr")]
        expr: String,
        #[arg(long, value_enum, default_value_t = Matrix::Mpt0)]
        matrix: Matrix,
    },
    /// Check a Hilbert-style proof script.
    Prove { file: PathBuf },
    /// Run lab checks (all of them when none are named).
    Suite { names: Vec<String> },
    /// Print a named construction: u-incons, fail-leibniz, ebq or consistency.
    Witness { name: String },
}

enum Outcome {
    Success,
    CheckFailed,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Outcome::Success) => ExitCode::SUCCESS,
        Ok(Outcome::CheckFailed) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(if is_budget(&err) { 3 } else { 2 })
        }
    }
}

fn is_budget(err: &anyhow::Error) -> bool {
    err.chain().any(|cause| {
        if let Some(e) = cause.downcast_ref::<LabError>() {
            return e.is_budget();
        }
        matches!(cause.downcast_ref::<EvalError>(), Some(EvalError::Budget { .. }))
            || matches!(cause.downcast_ref::<UniverseError>(), Some(UniverseError::Budget { .. }))
            || matches!(cause.downcast_ref::<PropError>(), Some(PropError::Budget { .. }))
    })
}

fn run(cli: &Cli) -> Result<Outcome> {
    let opts = &cli.opts;
    let alg = BoolAlg::powerset(opts.atoms)?;
    match &cli.command {
        Command::Algebra => algebra(opts, alg),
        Command::Enumerate => enumerate(opts, alg),
        Command::Eval { expr } => eval(opts, alg, expr),
        Command::Taut { expr, matrix } => taut(opts, alg, expr, *matrix),
        Command::Prove { file } => prove(opts, file),
        Command::Suite { names } => suite(opts, names),
        Command::Witness { name } => witness(opts, alg, name),
    }
}

fn emit(opts: &Options, value: &Value, text: impl FnOnce() -> String) {
    match opts.format {
        Format::Json => println!("{value}"),
        Format::Text => println!("{}", text()),
    }
}

fn value_json(t: TwistVal) -> Value {
    json!({
        "z1": format!("{:#x}", t.z1().mask()),
        "z2": format!("{:#x}", t.z2().mask()),
        "symbol": t.symbol(),
    })
}

fn value_text(t: TwistVal) -> String {
    let coords = format!("({:#x},{:#x})", t.z1().mask(), t.z2().mask());
    match t.symbol() {
        Some(s) => format!("{coords} = {s}"),
        None => coords,
    }
}

fn algebra(opts: &Options, alg: BoolAlg) -> Result<Outcome> {
    let elements: Vec<String> = alg.elements().map(|x| format!("{:#x}", x.mask())).collect();
    let designated: Vec<String> = designated_set(alg).into_iter().map(|t| t.to_string()).collect();
    let domain = twist_domain(alg).len();
    let value = json!({
        "atoms": alg.atoms(),
        "elements": elements,
        "twist_domain_size": domain,
        "designated": designated,
    });
    emit(opts, &value, || {
        format!(
            "algebra 2^{} with {} elements: {}\ntwist domain size: {domain}\ndesignated ({}): {}",
            alg.atoms(),
            elements.len(),
            elements.join(" "),
            designated.len(),
            designated.join(" ")
        )
    });
    Ok(Outcome::Success)
}

fn fresh_store(opts: &Options, alg: BoolAlg) -> Result<UniverseStore> {
    let mut store = UniverseStore::new(alg);
    store.enumerate_rank(opts.rank, opts.budget)?;
    Ok(store)
}

/// Loads `--store` if it exists; otherwise enumerates and, when a path was
/// given, saves the dump there.
fn load_or_enumerate(opts: &Options, alg: BoolAlg) -> Result<UniverseStore> {
    if let Some(path) = &opts.store {
        if path.exists() {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            return UniverseStore::load(alg, &text).with_context(|| format!("loading {}", path.display()));
        }
    }
    let store = fresh_store(opts, alg)?;
    if let Some(path) = &opts.store {
        fs::write(path, store.dump()).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(store)
}

fn enumerate(opts: &Options, alg: BoolAlg) -> Result<Outcome> {
    let store = fresh_store(opts, alg)?;
    match &opts.store {
        Some(path) => {
            fs::write(path, store.dump()).with_context(|| format!("writing {}", path.display()))?;
            let value = json!({ "atoms": alg.atoms(), "rank": opts.rank, "elements": store.len(), "store": path });
            emit(opts, &value, || format!("wrote {} elements to {}", store.len(), path.display()));
        }
        None => print!("{}", store.dump()),
    }
    Ok(Outcome::Success)
}

fn eval(opts: &Options, alg: BoolAlg, expr: &str) -> Result<Outcome> {
    let phi = folast::parse(expr)?;
    let store = load_or_enumerate(opts, alg)?;
    let carrier = store.ids().collect();
    let ctx = EvalContext::with_carrier(store, opts.semantics.into(), carrier)?;
    let vars: Vec<String> = free_vars(&phi).into_iter().collect();
    if vars.is_empty() {
        let val = ctx.val_formula(&phi, &Default::default())?;
        let value = json!({
            "formula": phi.to_string(),
            "carrier_size": ctx.carrier().len(),
            "value": value_json(val),
            "designated": val.is_designated(),
        });
        emit(opts, &value, || format!("{phi}\n{}", value_text(val)));
        return Ok(Outcome::Success);
    }
    let counter = ctx.first_invalid_assignment(&phi, opts.budget)?;
    let at = match &counter {
        Some(a) => Some(ctx.val_formula(&phi, a)?),
        None => None,
    };
    let value = json!({
        "formula": phi.to_string(),
        "free_variables": vars,
        "carrier_size": ctx.carrier().len(),
        "valid": counter.is_none(),
        "counter_assignment": counter,
        "value_at_counter_assignment": at.map(value_json),
    });
    emit(opts, &value, || match (&counter, at) {
        (Some(a), Some(v)) => {
            let binding: Vec<String> = a.iter().map(|(k, id)| format!("{k} = {id}")).collect();
            format!("{phi}\nnot valid: {} gives {}", binding.join(", "), value_text(v))
        }
        _ => format!("{phi}\nvalid over {} elements", ctx.carrier().len()),
    });
    Ok(Outcome::Success)
}

fn taut(opts: &Options, alg: BoolAlg, expr: &str, matrix: Matrix) -> Result<Outcome> {
    let formula = proplogic::parse(expr)?;
    let spec = match matrix {
        Matrix::Mpt0 => MatrixSpec::Mpt0,
        Matrix::Twist => MatrixSpec::Twist(alg),
    };
    let verdict = proplogic::is_tautology(&formula, spec)?;
    let countervaluation = verdict.countervaluation.as_ref().map(|v| {
        v.iter().map(|(k, x)| (k.clone(), Value::String(x.to_string()))).collect::<Map<String, Value>>()
    });
    let value = json!({
        "formula": formula.to_string(),
        "matrix": spec.to_string(),
        "tautology": verdict.holds,
        "countervaluation": countervaluation,
    });
    emit(opts, &value, || match &verdict.countervaluation {
        None => format!("{formula}\ntautology of {spec}"),
        Some(v) => {
            let pairs: Vec<String> = v.iter().map(|(k, x)| format!("{k} = {x}")).collect();
            format!("{formula}\nnot a tautology of {spec}: {}", pairs.join(", "))
        }
    });
    Ok(Outcome::Success)
}

fn prove(opts: &Options, file: &Path) -> Result<Outcome> {
    let text = fs::read_to_string(file).with_context(|| format!("reading {}", file.display()))?;
    let script = proof::ProofScript::parse(&text)?;
    let verdict = proof::check_proof(&script)?;
    let conclusion = script.conclusion().map(|f| f.to_string());
    let value = json!({
        "file": file,
        "steps": script.lines.len(),
        "conclusion": conclusion,
        "ok": verdict.ok,
        "first_bad_line": verdict.first_bad_line,
        "reason": verdict.reason,
    });
    emit(opts, &value, || match (&verdict.first_bad_line, &verdict.reason) {
        (Some(line), Some(reason)) => format!("step {line} is wrong: {reason}"),
        _ => format!("proof of {} checked ({} steps)", conclusion.as_deref().unwrap_or("nothing"), script.lines.len()),
    });
    Ok(if verdict.ok { Outcome::Success } else { Outcome::CheckFailed })
}

fn suite(opts: &Options, names: &[String]) -> Result<Outcome> {
    let cfg = SuiteConfig {
        atoms: opts.atoms,
        semantics: opts.semantics.into(),
        rank: opts.rank,
        budget: opts.budget,
        sample: opts.sample,
        seed: opts.seed,
        timing: opts.timing,
    };
    let names: Vec<&str> = names.iter().map(String::as_str).collect();
    let reports = lab::run_suite(&names, &cfg)?;
    for report in &reports {
        let value = serde_json::to_value(report)?;
        emit(opts, &value, || {
            let verdict = serde_json::to_value(report.verdict).expect("verdicts serialize");
            format!("{:<18} {}: {}", verdict.as_str().unwrap_or_default(), report.check, report.summary)
        });
    }
    if reports.iter().any(|r| r.verdict == Verdict::Fail) {
        return Ok(Outcome::CheckFailed);
    }
    Ok(Outcome::Success)
}

fn witness(opts: &Options, alg: BoolAlg, name: &str) -> Result<Outcome> {
    if !lab::WITNESS_NAMES.contains(&name) {
        bail!("unknown witness `{name}` (expected one of {})", lab::WITNESS_NAMES.join(", "));
    }
    let mut ctx = EvalContext::new(UniverseStore::new(alg), opts.semantics.into());
    let built = lab::build_witness(&mut ctx, name)?;
    let value = serde_json::to_value(&built)?;
    emit(opts, &value, || {
        let mut out = format!("{} over 2^{} ({})", built.name, built.atoms, built.semantics);
        for e in &built.elements {
            out.push_str(&format!("\n  {} = {} {}", e.name, e.id, e.entries));
        }
        for v in &built.values {
            out.push_str(&format!("\n  {} = {}", v.label, v.value));
        }
        out
    });
    Ok(Outcome::Success)
}
