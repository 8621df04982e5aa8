//! Executable checks of the structural facts about twist-valued universes,
//! and the explicit constructions behind the inconsistent set, the failure of
//! the Leibniz rule and the failure of bounded quantification.
//!
//! Every check returns a [`CheckReport`]. When a check fails, the offending
//! item is evaluated a second time on a memo-free copy of the context and the
//! outcome is recorded next to the counterexample.

mod checks;
mod suite;
mod witness;

use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::boolalg::BAElem;
use crate::evaluator::{Assignment, EvalContext, EvalError};
use crate::folast::{free_vars, is_pure, FOFormula};
use crate::twist::SemanticsKind;
use crate::universe::{ElemId, UniverseError};

pub use checks::{
    check_basic_identities, check_bq, check_check_names, check_consistency, check_leibniz_pure, check_mixing,
    check_mixing_sampled, check_reasonable_implication, check_regularity, consistency_predicate,
    maximum_principle_check, zf_instance_checks, TripleSample,
};
pub use suite::{run_check, run_suite, SuiteConfig, CHECK_NAMES};
pub use witness::{
    build_witness, ebq_failure_witness, inconsistent_set_witness, leibniz_failure_witness, NamedElement, NamedValue,
    Witness, WITNESS_NAMES,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LabError {
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error("`{0}` contains `!`, but this check needs a pure formula")]
    NotPure(String),
    #[error("`{formula}` may only have `{var}` free")]
    FreeVariables { formula: String, var: String },
    #[error("unknown check `{0}`")]
    UnknownCheck(String),
    #[error("unknown witness `{0}`")]
    UnknownWitness(String),
}

impl From<UniverseError> for LabError {
    fn from(e: UniverseError) -> Self {
        LabError::Eval(e.into())
    }
}

impl LabError {
    pub fn is_budget(&self) -> bool {
        matches!(self, LabError::Eval(EvalError::Budget { .. }) | LabError::Eval(EvalError::Universe(UniverseError::Budget { .. })))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    HypothesisNotMet,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckParams {
    pub atoms: u8,
    pub semantics: SemanticsKind,
    pub rank: Option<u32>,
    pub carrier_size: usize,
    pub sample_size: Option<u64>,
    pub seed: Option<u64>,
}

impl CheckParams {
    pub fn of(ctx: &EvalContext) -> Self {
        CheckParams {
            atoms: ctx.algebra().atoms(),
            semantics: ctx.semantics(),
            rank: None,
            carrier_size: ctx.carrier().len(),
            sample_size: None,
            seed: None,
        }
    }

    pub fn rank(mut self, rank: u32) -> Self {
        self.rank = Some(rank);
        self
    }

    pub fn sample(mut self, size: u64, seed: u64) -> Self {
        self.sample_size = Some(size);
        self.seed = Some(seed);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub params: CheckParams,
    pub verdict: Verdict,
    pub counterexample: Option<Value>,
    /// Left empty unless timing was requested, so that reports are
    /// reproducible byte for byte.
    pub elapsed_ms: Option<u64>,
    pub summary: String,
}

impl CheckReport {
    fn new(check: &str, params: CheckParams, counterexample: Option<Value>, summary: String) -> Self {
        let verdict = if counterexample.is_some() { Verdict::Fail } else { Verdict::Pass };
        CheckReport { check: check.to_string(), params, verdict, counterexample, elapsed_ms: None, summary }
    }

    fn hypothesis_not_met(check: &str, params: CheckParams, detail: Value, summary: String) -> Self {
        CheckReport {
            check: check.to_string(),
            params,
            verdict: Verdict::HypothesisNotMet,
            counterexample: Some(detail),
            elapsed_ms: None,
            summary,
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    /// One line of JSON.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("reports serialize")
    }
}

const SAME_ALGEBRA: &str = "values come from the store's algebra";

fn meet(a: BAElem, b: BAElem) -> BAElem {
    a.meet(b).expect(SAME_ALGEBRA)
}

fn join(a: BAElem, b: BAElem) -> BAElem {
    a.join(b).expect(SAME_ALGEBRA)
}

fn imp(a: BAElem, b: BAElem) -> BAElem {
    a.imp(b).expect(SAME_ALGEBRA)
}

fn leq(a: BAElem, b: BAElem) -> bool {
    a.leq(b).expect(SAME_ALGEBRA)
}

fn bind(var: &str, id: ElemId) -> Assignment {
    Assignment::from([(var.to_string(), id)])
}

fn require_pure(phi: &FOFormula) -> Result<(), LabError> {
    if is_pure(phi) {
        Ok(())
    } else {
        Err(LabError::NotPure(phi.to_string()))
    }
}

fn require_only_free(phi: &FOFormula, var: &str) -> Result<(), LabError> {
    if free_vars(phi).iter().all(|v| v == var) {
        Ok(())
    } else {
        Err(LabError::FreeVariables { formula: phi.to_string(), var: var.to_string() })
    }
}

fn max_rank(ctx: &EvalContext, ids: &[ElemId]) -> Result<u32, EvalError> {
    let mut r = 0;
    for &id in ids {
        r = r.max(ctx.store().rank(id)?);
    }
    Ok(r)
}

/// Probes `items` in order and stops at the first one `probe` flags. That
/// item is probed again without the memo.
fn first_failure<T>(
    ctx: &EvalContext,
    items: impl IntoIterator<Item = T>,
    probe: impl Fn(&EvalContext, &T) -> Result<Option<Value>, EvalError>,
) -> Result<Option<Value>, EvalError> {
    for item in items {
        if let Some(found) = probe(ctx, &item)? {
            let again = probe(&ctx.without_memo(), &item)?;
            let reproduced = again.as_ref() == Some(&found);
            return Ok(Some(json!({ "witness": found, "reproduced_without_memo": reproduced })));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolalg::BoolAlg;
    use crate::folast::parse;
    use crate::twist::TwistVal;
    use crate::universe::UniverseStore;

    fn small(semantics: SemanticsKind) -> SuiteConfig {
        SuiteConfig { semantics, rank: 2, ..SuiteConfig::default() }
    }

    fn context(atoms: u32, rank: u32, semantics: SemanticsKind) -> (EvalContext, Vec<ElemId>) {
        let mut store = UniverseStore::new(BoolAlg::powerset(atoms).unwrap());
        let ids = store.enumerate_rank(rank, 1_000_000).unwrap();
        (EvalContext::with_carrier(store, semantics, ids.clone()).unwrap(), ids)
    }

    #[test]
    fn every_check_passes_at_rank_two() {
        for semantics in SemanticsKind::ALL {
            for report in run_suite(&[], &small(semantics)).unwrap() {
                assert!(report.passed(), "{}", report.to_json());
            }
        }
    }

    #[test]
    fn reports_serialize_with_fixed_keys() {
        let report = run_check("regularity", &small(SemanticsKind::Lpt0)).unwrap();
        let value: Value = serde_json::from_str(&report.to_json()).unwrap();
        let keys: Vec<&String> = value.as_object().unwrap().keys().collect();
        assert_eq!(keys, ["check", "counterexample", "elapsed_ms", "params", "summary", "verdict"]);
        assert_eq!(value["verdict"], "pass");
        assert_eq!(value["params"]["carrier_size"], 4);
        assert!(value["elapsed_ms"].is_null());
    }

    #[test]
    fn suite_output_is_reproducible() {
        let cfg = SuiteConfig { seed: 7, ..small(SemanticsKind::Lpt0) };
        let render = || run_suite(&[], &cfg).unwrap().iter().map(CheckReport::to_json).collect::<Vec<_>>();
        assert_eq!(render(), render());
    }

    #[test]
    fn unknown_names_are_rejected_up_front() {
        let err = run_suite(&["regularity", "nope"], &small(SemanticsKind::Lpt0)).unwrap_err();
        assert_eq!(err, LabError::UnknownCheck("nope".into()));
        let (mut ctx, _) = context(1, 1, SemanticsKind::Lpt0);
        assert!(matches!(build_witness(&mut ctx, "nope"), Err(LabError::UnknownWitness(_))));
    }

    #[test]
    fn wrong_expectation_yields_a_reproduced_counterexample() {
        let (mut ctx, _) = context(1, 1, SemanticsKind::Lpt0);
        let expected = vec![Some("0".to_string()); 4];
        let report = witness::compare_witness(&mut ctx, "inconsistent-set", "u-incons", &expected).unwrap();
        assert_eq!(report.verdict, Verdict::Fail);
        let ce = report.counterexample.unwrap();
        assert_eq!(ce["reproduced_without_memo"], true);
        assert_eq!(ce["witness"]["found"]["values"][0]["value"], "1/2");
    }

    #[test]
    fn first_failure_stops_at_the_first_flagged_item() {
        let (ctx, ids) = context(1, 2, SemanticsKind::Lpt0);
        let flagged = first_failure(&ctx, ids.iter().copied(), |ctx, &u| {
            Ok((!ctx.val_eq(u, u)?.z2().is_bottom()).then(|| json!({ "u": u })))
        })
        .unwrap()
        .unwrap();
        // {<empty, 1/2>} is the first element of V_2 whose self-equality is 1/2
        assert_eq!(flagged["witness"]["u"], 3);
        assert_eq!(flagged["reproduced_without_memo"], true);
    }

    #[test]
    fn pure_only_checks_reject_negation() {
        let (ctx, ids) = context(1, 2, SemanticsKind::Lpt0);
        let phi = parse("!(x = x)").unwrap();
        assert!(matches!(check_leibniz_pure(&ctx, &phi, "x", &[(ids[0], ids[1])]), Err(LabError::NotPure(_))));
        assert!(matches!(check_bq(&ctx, &phi, "x", &ids), Err(LabError::NotPure(_))));
        let two_free = parse("x = y").unwrap();
        assert!(matches!(check_bq(&ctx, &two_free, "x", &ids), Err(LabError::FreeVariables { .. })));
    }

    #[test]
    fn bq_needs_domains_in_the_carrier() {
        let (mut ctx, ids) = context(1, 2, SemanticsKind::Lpt0);
        ctx.set_carrier(vec![]).unwrap();
        let report = check_bq(&ctx, &parse("x = x").unwrap(), "x", &ids).unwrap();
        assert_eq!(report.verdict, Verdict::HypothesisNotMet);
    }

    #[test]
    fn mixing_hypothesis_is_checked_first() {
        let (mut ctx, ids) = context(2, 2, SemanticsKind::Lpt0);
        let alg = ctx.algebra();
        let a = alg.atom(0).unwrap();
        let full = ctx.store_mut().make_element([(ids[0], TwistVal::one(alg))]).unwrap();
        // empty and {<empty, 1>} are apart, so overlapping weights break the hypothesis
        let report = check_mixing(&mut ctx, &[alg.top(), alg.top()], &[ids[0], full]).unwrap();
        assert_eq!(report.verdict, Verdict::HypothesisNotMet);
        let report = check_mixing(&mut ctx, &[a, a.compl()], &[ids[0], full]).unwrap();
        assert!(report.passed(), "{}", report.to_json());
        let report = check_mixing(&mut ctx, &[alg.top()], &[ids[5]]).unwrap();
        assert!(report.passed());
        assert!(check_mixing(&mut ctx, &[a], &[]).is_err());
    }

    #[test]
    fn any_member_gives_an_inconsistent_singleton() {
        for atoms in 1..=2 {
            let (mut ctx, ids) = context(atoms, 2, SemanticsKind::Lpt0);
            let half = TwistVal::half(ctx.algebra());
            for w in ids {
                let u = ctx.store_mut().make_element([(w, half)]).unwrap();
                assert_eq!(ctx.val_eq(u, u).unwrap(), half);
            }
        }
    }

    #[test]
    fn maximum_principle_outside_a_closed_carrier() {
        let (mut ctx, ids) = context(1, 2, SemanticsKind::Lpt0);
        // nothing in {<empty, 1>, <empty, 1/2>} equals empty, and the mixture
        // of zero weights, {<empty, 0>}, lies outside
        ctx.set_carrier(ids[2..].to_vec()).unwrap();
        let report = maximum_principle_check(&mut ctx, &parse("x = empty").unwrap(), "x").unwrap();
        assert_eq!(report.verdict, Verdict::HypothesisNotMet);
    }

    #[test]
    fn budget_errors_are_classified() {
        let cfg = SuiteConfig { rank: 4, ..SuiteConfig::default() };
        assert!(run_check("regularity", &cfg).unwrap_err().is_budget());
        let cfg = SuiteConfig { rank: 5, ..SuiteConfig::default() };
        assert!(run_check("check-names", &cfg).unwrap_err().is_budget());
    }
}
