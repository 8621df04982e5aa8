use serde::Serialize;
use serde_json::json;

use super::{meet, join, imp, bind, CheckParams, CheckReport, LabError};
use crate::evaluator::EvalContext;
use crate::folast::{FOFormula, Term};
use crate::twist::{SemanticsKind, TwistVal};
use crate::universe::ElemId;

pub const WITNESS_NAMES: [&str; 4] = ["u-incons", "fail-leibniz", "ebq", "consistency"];

/// Largest universe level a witness may enumerate for its carrier.
const WITNESS_BUDGET: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NamedElement {
    pub name: String,
    pub id: ElemId,
    pub entries: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NamedValue {
    pub label: String,
    pub value: String,
}

/// A named construction together with the values it produces.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub name: String,
    pub atoms: u8,
    pub semantics: SemanticsKind,
    pub carrier_size: usize,
    pub elements: Vec<NamedElement>,
    pub values: Vec<NamedValue>,
}

impl Witness {
    pub fn value(&self, label: &str) -> Option<&str> {
        self.values.iter().find(|v| v.label == label).map(|v| v.value.as_str())
    }

    pub fn element(&self, name: &str) -> Option<ElemId> {
        self.elements.iter().find(|e| e.name == name).map(|e| e.id)
    }
}

struct Recorder {
    elements: Vec<NamedElement>,
    values: Vec<NamedValue>,
}

impl Recorder {
    fn new() -> Self {
        Recorder { elements: Vec::new(), values: Vec::new() }
    }

    fn element(
        &mut self,
        ctx: &mut EvalContext,
        name: &str,
        pairs: Vec<(ElemId, TwistVal)>,
    ) -> Result<ElemId, LabError> {
        let id = ctx.store_mut().make_element(pairs)?;
        let entries = ctx.store().describe(id)?;
        self.elements.push(NamedElement { name: name.to_string(), id, entries });
        Ok(id)
    }

    fn value(&mut self, label: &str, value: impl ToString) {
        self.values.push(NamedValue { label: label.to_string(), value: value.to_string() });
    }

    fn finish(self, name: &str, ctx: &EvalContext, carrier_size: usize) -> Witness {
        Witness {
            name: name.to_string(),
            atoms: ctx.algebra().atoms(),
            semantics: ctx.semantics(),
            carrier_size,
            elements: self.elements,
            values: self.values,
        }
    }
}

/// Runs `f` with `carrier` installed, then puts the old carrier back.
fn with_carrier<R>(
    ctx: &mut EvalContext,
    carrier: Vec<ElemId>,
    f: impl FnOnce(&EvalContext) -> Result<R, LabError>,
) -> Result<R, LabError> {
    let saved = ctx.carrier().to_vec();
    ctx.set_carrier(carrier)?;
    let out = f(ctx);
    ctx.set_carrier(saved).expect("the previous carrier was valid");
    out
}

fn c(id: ElemId) -> Term {
    Term::Const(id)
}

/// `u = {<empty, 1/2>}` and the contradiction `sigma & !sigma` for
/// `sigma = forall x . x = x`, quantifying over the universe level of `u`.
fn u_incons(ctx: &mut EvalContext) -> Result<Witness, LabError> {
    let alg = ctx.algebra();
    let mut rec = Recorder::new();
    let empty = rec.element(ctx, "empty", vec![])?;
    let u = rec.element(ctx, "u", vec![(empty, TwistVal::half(alg))])?;
    let level = ctx.store().rank(u)?;
    let carrier = ctx.store_mut().enumerate_rank(level, WITNESS_BUDGET)?;
    let size = carrier.len();
    let sigma = FOFormula::forall("x", FOFormula::eq(Term::Var("x".into()), Term::Var("x".into())));
    let (uu, s, ns, both) = with_carrier(ctx, carrier, |ctx| {
        let none = Default::default();
        Ok((
            ctx.val_eq(u, u)?,
            ctx.val_formula(&sigma, &none)?,
            ctx.val_formula(&FOFormula::pneg(sigma.clone()), &none)?,
            ctx.val_formula(&FOFormula::and(sigma.clone(), FOFormula::pneg(sigma.clone())), &none)?,
        ))
    })?;
    rec.value("[[u = u]]", uu);
    rec.value("[[sigma]]", s);
    rec.value("[[!sigma]]", ns);
    rec.value("[[sigma & !sigma]]", both);
    Ok(rec.finish("u-incons", ctx, size))
}

/// `w = {<empty, 1>}`, `u = {<w, 1/2>}`, `v = {<w, 1>}` and the Leibniz
/// instance for `!(w in x)`.
fn fail_leibniz(ctx: &mut EvalContext) -> Result<Witness, LabError> {
    let alg = ctx.algebra();
    let mut rec = Recorder::new();
    let empty = rec.element(ctx, "empty", vec![])?;
    let w = rec.element(ctx, "w", vec![(empty, TwistVal::one(alg))])?;
    let u = rec.element(ctx, "u", vec![(w, TwistVal::half(alg))])?;
    let v = rec.element(ctx, "v", vec![(w, TwistVal::one(alg))])?;
    let phi_u = FOFormula::pneg(FOFormula::mem(c(w), c(u)));
    let phi_v = FOFormula::pneg(FOFormula::mem(c(w), c(v)));
    let rule = FOFormula::imp(FOFormula::and(FOFormula::eq(c(u), c(v)), phi_u.clone()), phi_v.clone());
    let none = Default::default();
    rec.value("[[w in u]]", ctx.val_mem(w, u)?);
    rec.value("[[w in v]]", ctx.val_mem(w, v)?);
    rec.value("[[u = v]]", ctx.val_eq(u, v)?);
    rec.value("[[!(w in u)]]", ctx.val_formula(&phi_u, &none)?);
    rec.value("[[!(w in v)]]", ctx.val_formula(&phi_v, &none)?);
    rec.value("[[((u = v) & !(w in u)) -> !(w in v)]]", ctx.val_formula(&rule, &none)?);
    let size = ctx.carrier().len();
    Ok(rec.finish("fail-leibniz", ctx, size))
}

/// `w = {<empty, 1>}`, `v = {<w, 1/2>}`, `y = {<w, 1>}`, `u = {<y, 1>}` and
/// both sides of the bounded quantifier equalities for `phi(x) = !(w in x)`
/// and its strong negation. The carrier is extended by `empty, w, v, y`.
fn ebq(ctx: &mut EvalContext) -> Result<Witness, LabError> {
    let alg = ctx.algebra();
    let one = TwistVal::one(alg);
    let mut rec = Recorder::new();
    let empty = rec.element(ctx, "empty", vec![])?;
    let w = rec.element(ctx, "w", vec![(empty, one)])?;
    let v = rec.element(ctx, "v", vec![(w, TwistVal::half(alg))])?;
    let y = rec.element(ctx, "y", vec![(w, one)])?;
    let u = rec.element(ctx, "u", vec![(y, one)])?;

    let mut carrier = ctx.carrier().to_vec();
    for id in [empty, w, v, y] {
        if !carrier.contains(&id) {
            carrier.push(id);
        }
    }
    let size = carrier.len();
    let phi = FOFormula::pneg(FOFormula::mem(c(w), Term::Var("x".into())));
    let not_phi = FOFormula::snot(phi.clone());
    let entries = ctx.store().get(u)?.entries().to_vec();
    let values = with_carrier(ctx, carrier, |ctx| {
        let none = Default::default();
        let at = |f: &FOFormula, id| ctx.val_formula(f, &bind("x", id));
        let exists = ctx.val_formula(&FOFormula::exists_in("x", c(u), phi.clone()), &none)?.z1();
        let forall = ctx.val_formula(&FOFormula::forall_in("x", c(u), not_phi.clone()), &none)?.z1();
        let mut join_side = alg.bottom();
        let mut meet_side = alg.top();
        for &(x, ux) in &entries {
            join_side = join(join_side, meet(ux.z1(), at(&phi, x)?.z1()));
            meet_side = meet(meet_side, imp(ux.z1(), at(&not_phi, x)?.z1()));
        }
        Ok(vec![
            ("[[v = y]]", ctx.val_eq(v, y)?.to_string()),
            ("[[phi(v)]]", at(&phi, v)?.to_string()),
            ("[[phi(y)]]", at(&phi, y)?.to_string()),
            ("[[exists x in u . phi(x)]]_1", exists.to_string()),
            ("join over dom(u) of u(x)_1 & [[phi(x)]]_1", join_side.to_string()),
            ("[[forall x in u . ~phi(x)]]_1", forall.to_string()),
            ("meet over dom(u) of u(x)_1 -> [[~phi(x)]]_1", meet_side.to_string()),
        ])
    })?;
    for (label, value) in values {
        rec.value(label, value);
    }
    Ok(rec.finish("ebq", ctx, size))
}

/// `v = {<empty, 1>}` and `w = {<empty, 1/2>}` under the consistency
/// predicate `C(x) = ~!(x = x)`.
fn consistency(ctx: &mut EvalContext) -> Result<Witness, LabError> {
    let alg = ctx.algebra();
    let mut rec = Recorder::new();
    let empty = rec.element(ctx, "empty", vec![])?;
    let v = rec.element(ctx, "v", vec![(empty, TwistVal::one(alg))])?;
    let w = rec.element(ctx, "w", vec![(empty, TwistVal::half(alg))])?;
    let cons = |id| FOFormula::snot(FOFormula::pneg(FOFormula::eq(c(id), c(id))));
    let none = Default::default();
    rec.value("[[v = v]]", ctx.val_eq(v, v)?);
    rec.value("[[w = w]]", ctx.val_eq(w, w)?);
    rec.value("[[C(v)]]", ctx.val_formula(&cons(v), &none)?);
    rec.value("[[C(w)]]", ctx.val_formula(&cons(w), &none)?);
    let size = ctx.carrier().len();
    Ok(rec.finish("consistency", ctx, size))
}

/// Builds one of [`WITNESS_NAMES`] in the context's store.
pub fn build_witness(ctx: &mut EvalContext, name: &str) -> Result<Witness, LabError> {
    match name {
        "u-incons" => u_incons(ctx),
        "fail-leibniz" => fail_leibniz(ctx),
        "ebq" => ebq(ctx),
        "consistency" => consistency(ctx),
        other => Err(LabError::UnknownWitness(other.to_string())),
    }
}

/// Builds the witness and compares it with `expected`, position by position;
/// `None` entries are reported but not asserted.
pub(super) fn compare_witness(
    ctx: &mut EvalContext,
    check: &str,
    name: &str,
    expected: &[Option<String>],
) -> Result<CheckReport, LabError> {
    let found = build_witness(ctx, name)?;
    let ids: Vec<ElemId> = found.elements.iter().map(|e| e.id).collect();
    let mut params = CheckParams::of(ctx).rank(super::max_rank(ctx, &ids)?);
    params.carrier_size = found.carrier_size;
    let summary = found.values.iter().map(|v| format!("{} = {}", v.label, v.value)).collect::<Vec<_>>().join("; ");
    let agrees = found.values.len() == expected.len()
        && found.values.iter().zip(expected).all(|(v, e)| e.as_ref().map_or(true, |e| *e == v.value));
    if agrees {
        return Ok(CheckReport::new(check, params, None, summary));
    }
    let again = build_witness(&mut ctx.without_memo(), name)?;
    let counterexample = json!({
        "witness": { "expected": expected, "found": &found },
        "reproduced_without_memo": again.values == found.values,
    });
    Ok(CheckReport::new(check, params, Some(counterexample), summary))
}

/// The value chain of the Leibniz counterexample: `[[w in u]]`, `[[w in v]]`,
/// `[[u = v]]`, `[[!(w in u)]]`, `[[!(w in v)]]` and the rule instance.
pub fn leibniz_failure_witness(ctx: &mut EvalContext) -> Result<CheckReport, LabError> {
    let alg = ctx.algebra();
    let [one, half, zero] = [TwistVal::one(alg), TwistVal::half(alg), TwistVal::zero(alg)];
    let equality = match ctx.semantics() {
        SemanticsKind::Lpt0 => half,
        SemanticsKind::Ps3 => one,
    };
    let chain = [half, one, equality, half, zero, zero];
    let expected: Vec<Option<String>> = chain.iter().map(|v| Some(v.to_string())).collect();
    compare_witness(ctx, "leibniz-failure", "fail-leibniz", &expected)
}

/// `[[u = u]]` for the inconsistent set and the value of `sigma & !sigma`.
pub fn inconsistent_set_witness(ctx: &mut EvalContext) -> Result<CheckReport, LabError> {
    let alg = ctx.algebra();
    let [one, half, zero] = [TwistVal::one(alg), TwistVal::half(alg), TwistVal::zero(alg)];
    let chain = match ctx.semantics() {
        SemanticsKind::Lpt0 => [half, half, half, half],
        SemanticsKind::Ps3 => [one, one, zero, zero],
    };
    let expected: Vec<Option<String>> = chain.iter().map(|v| Some(v.to_string())).collect();
    compare_witness(ctx, "inconsistent-set", "u-incons", &expected)
}

/// Both bounded quantifier equalities fail on the witness: `1` against `0`
/// for the existential, `0` against `1` for the universal.
pub fn ebq_failure_witness(ctx: &mut EvalContext) -> Result<CheckReport, LabError> {
    let alg = ctx.algebra();
    let (top, bottom) = (Some(alg.top().to_string()), Some(alg.bottom().to_string()));
    let expected = [None, None, None, top.clone(), bottom.clone(), bottom, top];
    compare_witness(ctx, "ebq-failure", "ebq", &expected)
}
