use std::thread;
use std::time::Instant;

use super::checks::*;
use super::witness::{ebq_failure_witness, inconsistent_set_witness, leibniz_failure_witness};
use super::{CheckReport, LabError};
use crate::boolalg::BoolAlg;
use crate::evaluator::{EvalContext, EvalError};
use crate::folast::{parse, FOFormula};
use crate::twist::{SemanticsKind, TwistVal};
use crate::universe::{ElemId, HFSet, UniverseStore};

pub const CHECK_NAMES: [&str; 13] = [
    "regularity",
    "basic-identities",
    "leibniz-pure",
    "leibniz-failure",
    "inconsistent-set",
    "bq",
    "ebq-failure",
    "mixing",
    "maximum-principle",
    "zf-instances",
    "consistency",
    "check-names",
    "reasonable-implication",
];

/// Shared parameters of a suite run. Checks whose cost grows quickly cap the
/// universe level at 2; the report records the level actually used.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteConfig {
    pub atoms: u32,
    pub semantics: SemanticsKind,
    pub rank: u32,
    /// Largest universe level that may be enumerated.
    pub budget: u64,
    /// Overrides the per-check sample size (10000 triples, 20 mixtures).
    pub sample: Option<u64>,
    pub seed: u64,
    pub timing: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            atoms: 1,
            semantics: SemanticsKind::Lpt0,
            rank: 3,
            budget: 1_000_000,
            sample: None,
            seed: 0,
            timing: false,
        }
    }
}

const CAPPED_RANK: u32 = 2;

fn universe(cfg: &SuiteConfig, rank: u32) -> Result<(EvalContext, Vec<ElemId>), LabError> {
    let alg = BoolAlg::powerset(cfg.atoms).map_err(|e| EvalError::Twist(e.into()))?;
    let mut store = UniverseStore::new(alg);
    let level = store.enumerate_rank(rank, cfg.budget)?;
    let ctx = EvalContext::with_carrier(store, cfg.semantics, level.clone())?;
    Ok((ctx, level))
}

/// Pure formulas in `x`; `#w` names `{<empty, 1>}`.
const PURE_BATTERY: [&str; 5] = [
    "~(#w in x)",
    "exists y in x . y = empty",
    "x = x",
    "forall y in x . ~(y = empty)",
    "empty in x -> x = #w",
];

fn pure_battery(ctx: &mut EvalContext) -> Result<Vec<FOFormula>, LabError> {
    let one = TwistVal::one(ctx.algebra());
    let w = ctx.store_mut().make_element([(ElemId::EMPTY, one)])?;
    Ok(PURE_BATTERY
        .iter()
        .map(|src| parse(&src.replace("#w", &format!("#{}", w.0))).expect("battery parses"))
        .collect())
}

/// The first report that did not pass, or the first report with every
/// summary attached.
fn merge(reports: Vec<CheckReport>) -> CheckReport {
    if let Some(bad) = reports.iter().find(|r| !r.passed()) {
        return bad.clone();
    }
    let summary = reports.iter().map(|r| r.summary.as_str()).collect::<Vec<_>>().join("; ");
    CheckReport { summary, ..reports.into_iter().next().expect("at least one report") }
}

/// Runs one of [`CHECK_NAMES`] on a fresh universe.
pub fn run_check(name: &str, cfg: &SuiteConfig) -> Result<CheckReport, LabError> {
    let start = Instant::now();
    let capped = cfg.rank.min(CAPPED_RANK);
    let mut report = match name {
        "regularity" => {
            let (ctx, ids) = universe(cfg, cfg.rank)?;
            check_regularity(&ctx, &ids)?
        }
        "basic-identities" => {
            let (mut ctx, ids) = universe(cfg, cfg.rank)?;
            let low = ctx.store_mut().enumerate_rank(capped, cfg.budget)?;
            let count = cfg.sample.unwrap_or(10_000);
            merge(vec![
                check_basic_identities(&ctx, &ids, TripleSample::Seeded { from: &ids, count, seed: cfg.seed })?,
                check_basic_identities(&ctx, &low, TripleSample::All(&low))?,
            ])
        }
        "leibniz-pure" => {
            let (mut ctx, ids) = universe(cfg, capped)?;
            let pairs: Vec<(ElemId, ElemId)> = ids.iter().flat_map(|&u| ids.iter().map(move |&v| (u, v))).collect();
            let mut reports = Vec::new();
            for phi in pure_battery(&mut ctx)? {
                reports.push(check_leibniz_pure(&ctx, &phi, "x", &pairs)?);
            }
            merge(reports)
        }
        "leibniz-failure" => {
            let (mut ctx, _) = universe(cfg, 1)?;
            leibniz_failure_witness(&mut ctx)?
        }
        "inconsistent-set" => {
            let (mut ctx, _) = universe(cfg, 1)?;
            inconsistent_set_witness(&mut ctx)?
        }
        "bq" => {
            let (mut ctx, ids) = universe(cfg, capped)?;
            let mut reports = Vec::new();
            for phi in pure_battery(&mut ctx)? {
                reports.push(check_bq(&ctx, &phi, "x", &ids)?);
            }
            merge(reports)
        }
        "ebq-failure" => {
            let (mut ctx, _) = universe(cfg, capped)?;
            ebq_failure_witness(&mut ctx)?
        }
        "mixing" => {
            let (mut ctx, ids) = universe(cfg, capped)?;
            check_mixing_sampled(&mut ctx, &ids, cfg.sample.unwrap_or(20), cfg.seed)?
        }
        "maximum-principle" => {
            let (mut ctx, _) = universe(cfg, capped)?;
            let first = ctx.store_mut().check_name(&HFSet::empty());
            let second = ctx.store_mut().check_name(&HFSet::from_members([HFSet::empty()]));
            let formulas = ["x = empty".to_string(), "empty in x".to_string(), format!("x = #{} | x = #{}", first.0, second.0)];
            let mut reports = Vec::new();
            for src in formulas {
                let phi = parse(&src).expect("formula parses");
                reports.push(maximum_principle_check(&mut ctx, &phi, "x")?);
            }
            merge(reports)
        }
        "zf-instances" => {
            let (mut ctx, ids) = universe(cfg, capped)?;
            let separation = ["~(x = empty)", "exists y in x . y = empty"].map(|s| parse(s).expect("formula parses"));
            zf_instance_checks(&mut ctx, &ids, &separation)?
        }
        "consistency" => {
            let (mut ctx, ids) = universe(cfg, cfg.rank)?;
            check_consistency(&mut ctx, &ids)?
        }
        "check-names" => {
            let (mut ctx, _) = universe(cfg, 1)?;
            check_check_names(&mut ctx, cfg.rank, cfg.budget)?
        }
        "reasonable-implication" => {
            let (ctx, _) = universe(cfg, 1)?;
            check_reasonable_implication(&ctx)?
        }
        other => return Err(LabError::UnknownCheck(other.to_string())),
    };
    report.check = name.to_string();
    if cfg.timing {
        report.elapsed_ms = Some(start.elapsed().as_millis() as u64);
    }
    Ok(report)
}

/// Runs the named checks (all of them when `names` is empty) concurrently and
/// returns the reports in the requested order.
pub fn run_suite(names: &[&str], cfg: &SuiteConfig) -> Result<Vec<CheckReport>, LabError> {
    let names: Vec<&str> = if names.is_empty() { CHECK_NAMES.to_vec() } else { names.to_vec() };
    if let Some(bad) = names.iter().find(|n| !CHECK_NAMES.contains(n)) {
        return Err(LabError::UnknownCheck(bad.to_string()));
    }
    thread::scope(|scope| {
        let handles: Vec<_> = names.iter().map(|&name| scope.spawn(move || run_check(name, cfg))).collect();
        handles.into_iter().map(|h| h.join().expect("check thread panicked")).collect()
    })
}
