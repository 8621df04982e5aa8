use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::witness::compare_witness;
use super::{
    bind, first_failure, imp, join, leq, max_rank, meet, require_only_free, require_pure, CheckParams, CheckReport,
    LabError,
};
use crate::boolalg::{BAElem, BoolAlg};
use crate::evaluator::{EvalContext, EvalError};
use crate::folast::{is_restricted, parse, FOFormula, Term};
use crate::twist::{check_reasonable_implication as scan_implication, SemanticsKind, TwistVal};
use crate::universe::{hf_universe, mixture, ElemId, HFSet, UniverseError, UniverseStore};

/// `[[u in u]]_1 = 0` for every `u` in `ids`.
pub fn check_regularity(ctx: &EvalContext, ids: &[ElemId]) -> Result<CheckReport, LabError> {
    let params = CheckParams::of(ctx).rank(max_rank(ctx, ids)?);
    let failure = first_failure(ctx, ids.iter().copied(), |ctx, &u| {
        let v = ctx.val_mem(u, u)?;
        Ok((!v.z1().is_bottom()).then(|| json!({ "u": u, "u_in_u": v })))
    })?;
    Ok(CheckReport::new("regularity", params, failure, format!("[[u in u]]_1 = 0 for {} elements", ids.len())))
}

/// Where the triples for the transitivity and congruence inequalities come
/// from.
#[derive(Debug, Clone, Copy)]
pub enum TripleSample<'a> {
    /// Every ordered triple.
    All(&'a [ElemId]),
    /// `count` triples drawn uniformly with a ChaCha8 generator.
    Seeded { from: &'a [ElemId], count: u64, seed: u64 },
}

#[derive(Debug, Clone, Copy)]
enum Identity {
    Reflexive(ElemId),
    Domain(ElemId),
    Symmetric(ElemId, ElemId),
    Triple(ElemId, ElemId, ElemId),
}

/// First coordinate of the defining expression of `[[u = v]]`, computed with
/// `u`'s domain first.
fn equality_from_definition(ctx: &EvalContext, u: ElemId, v: ElemId) -> Result<BAElem, EvalError> {
    let mut acc = ctx.algebra().top();
    for (a, b) in [(u, v), (v, u)] {
        for &(x, ax) in ctx.store().get(a)?.entries() {
            acc = meet(acc, imp(ax.z1(), ctx.val_mem(x, b)?.z1()));
        }
    }
    Ok(acc)
}

fn probe_identity(ctx: &EvalContext, item: &Identity) -> Result<Option<Value>, EvalError> {
    let eq1 = |a, b| ctx.val_eq(a, b).map(|t| t.z1());
    let mem1 = |a, b| ctx.val_mem(a, b).map(|t| t.z1());
    Ok(match *item {
        Identity::Reflexive(u) => {
            let v = ctx.val_eq(u, u)?;
            (!v.z1().is_top()).then(|| json!({ "item": "i", "u": u, "u_eq_u": v }))
        }
        Identity::Domain(u) => {
            let mut found = None;
            for &(x, ux) in ctx.store().get(u)?.entries() {
                let m = ctx.val_mem(x, u)?;
                if !leq(ux.z1(), m.z1()) {
                    found = Some(json!({ "item": "ii", "u": u, "x": x, "u_of_x": ux, "x_in_u": m }));
                    break;
                }
            }
            found
        }
        Identity::Symmetric(u, v) => {
            let forward = equality_from_definition(ctx, u, v)?;
            let backward = equality_from_definition(ctx, v, u)?;
            let (uv, vu) = (eq1(u, v)?, eq1(v, u)?);
            (forward != backward || uv != vu || uv != forward).then(|| {
                json!({ "item": "iii", "u": u, "v": v, "u_eq_v": uv.to_string(), "v_eq_u": vu.to_string() })
            })
        }
        Identity::Triple(u, v, w) => {
            let (uv, vw, uw) = (eq1(u, v)?, eq1(v, w)?, eq1(u, w)?);
            let (u_in_w, v_in_w, u_in_v) = (mem1(u, w)?, mem1(v, w)?, mem1(u, v)?);
            let item = if !leq(meet(uv, vw), uw) {
                Some("iv")
            } else if !leq(meet(uv, u_in_w), v_in_w) {
                Some("v")
            } else if !leq(meet(vw, u_in_v), u_in_w) {
                Some("vi")
            } else {
                None
            };
            item.map(|item| json!({ "item": item, "u": u, "v": v, "w": w }))
        }
    })
}

/// Reflexivity, domain membership and symmetry of equality over `ids`, and
/// transitivity plus both congruence laws for membership over `triples`.
pub fn check_basic_identities(
    ctx: &EvalContext,
    ids: &[ElemId],
    triples: TripleSample<'_>,
) -> Result<CheckReport, LabError> {
    let triple_list: Vec<(ElemId, ElemId, ElemId)> = match triples {
        TripleSample::All(from) => {
            from.iter().flat_map(|&u| from.iter().flat_map(move |&v| from.iter().map(move |&w| (u, v, w)))).collect()
        }
        TripleSample::Seeded { from, count, seed } if !from.is_empty() => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut pick = || from[rng.gen_range(0..from.len())];
            (0..count).map(|_| (pick(), pick(), pick())).collect()
        }
        TripleSample::Seeded { .. } => Vec::new(),
    };
    let mut params = CheckParams::of(ctx).rank(max_rank(ctx, ids)?);
    if let TripleSample::Seeded { count, seed, .. } = triples {
        params = params.sample(count, seed);
    }
    let items = ids
        .iter()
        .map(|&u| Identity::Reflexive(u))
        .chain(ids.iter().map(|&u| Identity::Domain(u)))
        .chain(ids.iter().enumerate().flat_map(|(i, &u)| ids[i..].iter().map(move |&v| Identity::Symmetric(u, v))))
        .chain(triple_list.iter().map(|&(u, v, w)| Identity::Triple(u, v, w)));
    let failure = first_failure(ctx, items, probe_identity)?;
    let summary = format!(
        "items i-iii over {} elements ({} unordered pairs), items iv-vi over {} triples",
        ids.len(),
        ids.len() * (ids.len() + 1) / 2,
        triple_list.len()
    );
    Ok(CheckReport::new("basic-identities", params, failure, summary))
}

/// `[[u = v]]_1 & [[phi(u)]]_1 <= [[phi(v)]]_1` for each pair, where `phi`
/// is pure with at most `var` free.
pub fn check_leibniz_pure(
    ctx: &EvalContext,
    phi: &FOFormula,
    var: &str,
    pairs: &[(ElemId, ElemId)],
) -> Result<CheckReport, LabError> {
    require_pure(phi)?;
    require_only_free(phi, var)?;
    let ids: Vec<ElemId> = pairs.iter().flat_map(|&(u, v)| [u, v]).collect();
    let params = CheckParams::of(ctx).rank(max_rank(ctx, &ids)?);
    let failure = first_failure(ctx, pairs.iter().copied(), |ctx, &(u, v)| {
        let eq = ctx.val_eq(u, v)?;
        let at_u = ctx.val_formula(phi, &bind(var, u))?;
        let at_v = ctx.val_formula(phi, &bind(var, v))?;
        Ok((!leq(meet(eq.z1(), at_u.z1()), at_v.z1())).then(|| {
            json!({ "formula": phi.to_string(), "u": u, "v": v, "u_eq_v": eq, "phi_u": at_u, "phi_v": at_v })
        }))
    })?;
    Ok(CheckReport::new("leibniz-pure", params, failure, format!("`{phi}` over {} pairs", pairs.len())))
}

/// Both bounded quantifier equalities for pure `phi` and each `u`:
///
/// ```text
/// [[exists x in u . phi]]_1 = join_{x in dom u} u(x)_1 & [[phi(x)]]_1
/// [[forall x in u . phi]]_1 = meet_{x in dom u} u(x)_1 -> [[phi(x)]]_1
/// ```
///
/// The hypothesis is that the carrier contains every `dom(u)`.
pub fn check_bq(ctx: &EvalContext, phi: &FOFormula, var: &str, us: &[ElemId]) -> Result<CheckReport, LabError> {
    require_pure(phi)?;
    require_only_free(phi, var)?;
    let params = CheckParams::of(ctx).rank(max_rank(ctx, us)?);
    let carrier: BTreeSet<ElemId> = ctx.carrier().iter().copied().collect();
    for &u in us {
        if let Some(x) = ctx.store().get(u)?.domain().find(|x| !carrier.contains(x)) {
            let detail = json!({ "u": u, "outside_carrier": x });
            return Ok(CheckReport::hypothesis_not_met("bq", params, detail, "carrier does not contain dom(u)".into()));
        }
    }
    let failure = first_failure(ctx, us.iter().copied(), |ctx, &u| {
        let none = Default::default();
        let exists = ctx.val_formula(&FOFormula::exists_in(var, Term::Const(u), phi.clone()), &none)?.z1();
        let forall = ctx.val_formula(&FOFormula::forall_in(var, Term::Const(u), phi.clone()), &none)?.z1();
        let alg = ctx.algebra();
        let (mut join_side, mut meet_side) = (alg.bottom(), alg.top());
        for &(x, ux) in ctx.store().get(u)?.entries() {
            let at = ctx.val_formula(phi, &bind(var, x))?.z1();
            join_side = join(join_side, meet(ux.z1(), at));
            meet_side = meet(meet_side, imp(ux.z1(), at));
        }
        Ok((exists != join_side || forall != meet_side).then(|| {
            json!({
                "formula": phi.to_string(),
                "u": u,
                "exists_lhs": exists.to_string(),
                "exists_rhs": join_side.to_string(),
                "forall_lhs": forall.to_string(),
                "forall_rhs": meet_side.to_string(),
            })
        }))
    })?;
    Ok(CheckReport::new("bq", params, failure, format!("`{phi}` over {} elements", us.len())))
}

/// The mixing lemma for one family: if `a_i & a_j <= [[u_i = u_j]]_1` for all
/// `i, j`, the mixture `u` satisfies `a_i <= [[u = u_i]]_1`.
pub fn check_mixing(ctx: &mut EvalContext, weights: &[BAElem], elements: &[ElemId]) -> Result<CheckReport, LabError> {
    if weights.len() != elements.len() {
        return Err(UniverseError::LengthMismatch {
            what: "mixture weights",
            expected: elements.len(),
            found: weights.len(),
        }
        .into());
    }
    let params = CheckParams::of(ctx).rank(max_rank(ctx, elements)?);
    let family = json!({
        "weights": weights.iter().map(|a| a.to_string()).collect::<Vec<_>>(),
        "elements": elements,
    });
    for (i, (&a, &u)) in weights.iter().zip(elements).enumerate() {
        for (j, (&b, &v)) in weights.iter().zip(elements).enumerate() {
            if !leq(meet(a, b), ctx.val_eq(u, v)?.z1()) {
                let detail = json!({ "family": family, "i": i, "j": j });
                return Ok(CheckReport::hypothesis_not_met("mixing", params, detail, "a_i & a_j exceeds [[u_i = u_j]]_1".into()));
            }
        }
    }
    let mixed = mixture(ctx, weights, elements)?;
    let failure = first_failure(ctx, 0..elements.len(), |ctx, &i| {
        let eq = ctx.val_eq(mixed, elements[i])?;
        Ok((!leq(weights[i], eq.z1())).then(|| json!({ "family": family, "mixture": mixed, "i": i, "u_eq_u_i": eq })))
    })?;
    Ok(CheckReport::new("mixing", params, failure, format!("mixture {mixed} of {} elements", elements.len())))
}

/// `draws` random families of one to three elements of `pool` with arbitrary
/// weights. Families that miss the hypothesis are counted and skipped.
pub fn check_mixing_sampled(
    ctx: &mut EvalContext,
    pool: &[ElemId],
    draws: u64,
    seed: u64,
) -> Result<CheckReport, LabError> {
    let alg = ctx.algebra();
    let params = CheckParams::of(ctx).rank(max_rank(ctx, pool)?).sample(draws, seed);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut met = 0u64;
    for _ in 0..draws {
        let k = rng.gen_range(1..=3usize);
        let elements: Vec<ElemId> = (0..k).map(|_| pool[rng.gen_range(0..pool.len())]).collect();
        let weights: Vec<BAElem> =
            (0..k).map(|_| alg.element(rng.gen_range(0..alg.size()) as u32).expect("mask below size")).collect();
        let report = check_mixing(ctx, &weights, &elements)?;
        match report.verdict {
            super::Verdict::Pass => met += 1,
            super::Verdict::HypothesisNotMet => {}
            super::Verdict::Fail => {
                return Ok(CheckReport::new("mixing", params, report.counterexample, report.summary));
            }
        }
    }
    let summary = format!("{met} of {draws} families met the hypothesis and all of those satisfied the conclusion");
    if met == 0 {
        return Ok(CheckReport::hypothesis_not_met("mixing", params, json!({ "draws": draws }), summary));
    }
    Ok(CheckReport::new("mixing", params, None, summary))
}

/// Builds the mixture `u = sum a_k . c_k` over the carrier enumeration with
/// `a_k = [[phi(c_k)]]_1 & ~join_{j<k} [[phi(c_j)]]_1` and compares
/// `[[phi(u)]]_1` with `[[exists x . phi]]_1`. Exact equality needs the
/// mixture to lie in the carrier; otherwise the hypothesis is reported as
/// not met.
pub fn maximum_principle_check(ctx: &mut EvalContext, phi: &FOFormula, var: &str) -> Result<CheckReport, LabError> {
    require_pure(phi)?;
    require_only_free(phi, var)?;
    let carrier = ctx.carrier().to_vec();
    let params = CheckParams::of(ctx).rank(max_rank(ctx, &carrier)?);
    let alg = ctx.algebra();
    let sup = ctx.val_formula(&FOFormula::exists(var, phi.clone()), &Default::default())?.z1();
    let mut weights = Vec::with_capacity(carrier.len());
    let mut seen = alg.bottom();
    for &c in &carrier {
        let at = ctx.val_formula(phi, &bind(var, c))?.z1();
        weights.push(meet(at, seen.compl()));
        seen = join(seen, at);
    }
    let mixed = mixture(ctx, &weights, &carrier)?;
    let failure = first_failure(ctx, [mixed], |ctx, &u| {
        let at = ctx.val_formula(phi, &bind(var, u))?.z1();
        Ok((at != sup).then(|| json!({ "formula": phi.to_string(), "mixture": u, "phi_u": at.to_string(), "exists": sup.to_string() })))
    })?;
    let summary = format!("`{phi}`: [[exists {var}]]_1 = {sup}, attained by mixture {mixed}");
    match failure {
        Some(detail) if !carrier.contains(&mixed) => Ok(CheckReport::hypothesis_not_met(
            "maximum-principle",
            params,
            detail,
            format!("mixture {mixed} lies outside the carrier"),
        )),
        failure => Ok(CheckReport::new("maximum-principle", params, failure, summary)),
    }
}

#[derive(Debug, Clone, Copy)]
enum ZfInstance {
    Extensionality(ElemId, ElemId),
    Pairing(ElemId, ElemId, ElemId),
    Union(ElemId, ElemId, ElemId),
    Separation(usize, ElemId, ElemId),
}

/// Instances of extensionality, pairing, union and separation with explicit
/// witnesses over `ids`. Every `dom(u)` must lie in the carrier. Separation
/// formulas must be pure and restricted with only `x` free.
pub fn zf_instance_checks(
    ctx: &mut EvalContext,
    ids: &[ElemId],
    separation: &[FOFormula],
) -> Result<CheckReport, LabError> {
    for phi in separation {
        if !is_restricted(phi).map_err(EvalError::from)? {
            return Err(LabError::NotPure(format!("{phi} (unrestricted quantifier)")));
        }
        require_only_free(phi, "x")?;
    }
    let params = CheckParams::of(ctx).rank(max_rank(ctx, ids)?);
    let carrier = ctx.carrier().to_vec();
    let in_carrier: BTreeSet<ElemId> = carrier.iter().copied().collect();
    for &u in ids {
        if let Some(x) = ctx.store().get(u)?.domain().find(|x| !in_carrier.contains(x)) {
            let detail = json!({ "u": u, "outside_carrier": x });
            return Ok(CheckReport::hypothesis_not_met("zf-instances", params, detail, "carrier does not contain dom(u)".into()));
        }
    }
    let alg = ctx.algebra();
    let one = TwistVal::one(alg);
    let none = Default::default();
    let mut items = Vec::new();
    for &u in ids {
        for &v in ids {
            items.push(ZfInstance::Extensionality(u, v));
            let pair = if u == v { vec![(u, one)] } else { vec![(u, one), (v, one)] };
            items.push(ZfInstance::Pairing(u, v, ctx.store_mut().make_element(pair)?));
        }
    }
    let exists_member = |u: ElemId, z: Term| FOFormula::exists_in("y", Term::Const(u), FOFormula::mem(z, Term::Var("y".into())));
    for &u in ids {
        let mut union_domain = BTreeSet::new();
        for x in ctx.store().get(u)?.domain().collect::<Vec<_>>() {
            union_domain.extend(ctx.store().get(x)?.domain());
        }
        let mut pairs = Vec::new();
        for &z in &union_domain {
            let b = ctx.val_formula(&exists_member(u, Term::Const(z)), &none)?.z1();
            pairs.push((z, TwistVal::classical(b)));
        }
        let s = ctx.store_mut().make_element(pairs)?;
        items.extend(union_domain.iter().map(|&z| ZfInstance::Union(u, s, z)));
    }
    for (k, phi) in separation.iter().enumerate() {
        for &u in ids {
            let mut pairs = Vec::new();
            for &(x, ux) in ctx.store().get(u)?.entries().to_vec().iter() {
                pairs.push((x, ux.and(ctx.val_formula(phi, &bind("x", x))?).map_err(EvalError::from)?));
            }
            let v = ctx.store_mut().make_element(pairs)?;
            items.push(ZfInstance::Separation(k, u, v));
        }
    }
    let ctx = &*ctx;
    let x = || Term::Var("x".into());
    let failure = first_failure(ctx, items.iter().copied(), |ctx, item| {
        let (kind, formula, assignments): (&str, FOFormula, Vec<ElemId>) = match *item {
            ZfInstance::Extensionality(u, v) => {
                let same = FOFormula::iff(FOFormula::mem(x(), Term::Const(u)), FOFormula::mem(x(), Term::Const(v)));
                let f = FOFormula::imp(FOFormula::forall("x", same), FOFormula::eq(Term::Const(u), Term::Const(v)));
                ("extensionality", f, vec![])
            }
            ZfInstance::Pairing(u, v, p) => {
                let f = FOFormula::and(FOFormula::mem(Term::Const(u), Term::Const(p)), FOFormula::mem(Term::Const(v), Term::Const(p)));
                ("pairing", f, vec![])
            }
            ZfInstance::Union(u, s, z) => {
                let f = FOFormula::iff(FOFormula::mem(Term::Const(z), Term::Const(s)), exists_member(u, Term::Const(z)));
                ("union", f, vec![])
            }
            ZfInstance::Separation(k, u, v) => {
                let rhs = FOFormula::and(FOFormula::mem(x(), Term::Const(u)), separation[k].clone());
                ("separation", FOFormula::iff(FOFormula::mem(x(), Term::Const(v)), rhs), carrier.clone())
            }
        };
        if assignments.is_empty() {
            let val = ctx.val_formula(&formula, &none)?;
            return Ok((!val.is_designated()).then(|| json!({ "axiom": kind, "formula": formula.to_string(), "value": val })));
        }
        for &a in &assignments {
            let val = ctx.val_formula(&formula, &bind("x", a))?;
            if !val.is_designated() {
                return Ok(Some(json!({ "axiom": kind, "formula": formula.to_string(), "x": a, "value": val })));
            }
        }
        Ok(None)
    })?;
    let summary = format!(
        "{} instances of extensionality, pairing, union and separation over {} elements",
        items.len(),
        ids.len()
    );
    Ok(CheckReport::new("zf-instances", params, failure, summary))
}

/// `[[C(u)]]` for the consistency predicate `C(x) = ~!(x = x)`.
pub fn consistency_predicate(ctx: &EvalContext, u: ElemId) -> Result<TwistVal, LabError> {
    Ok(ctx.val_eq(u, u)?.neg().snot())
}

/// The consistency predicate on its two witnesses and, over `ids`, the
/// absence of the value `1/2`: every `[[C(u)]]` has the form `(~a, a)`.
pub fn check_consistency(ctx: &mut EvalContext, ids: &[ElemId]) -> Result<CheckReport, LabError> {
    let alg = ctx.algebra();
    let (one, zero) = (TwistVal::one(alg), TwistVal::zero(alg));
    let for_w = match ctx.semantics() {
        SemanticsKind::Lpt0 => zero,
        SemanticsKind::Ps3 => one,
    };
    let expected = [None, None, Some(one.to_string()), Some(for_w.to_string())];
    let witness = compare_witness(ctx, "consistency", "consistency", &expected)?;
    let mut params = CheckParams::of(ctx).rank(max_rank(ctx, ids)?);
    params.carrier_size = witness.params.carrier_size;
    if !witness.passed() {
        return Ok(CheckReport { params, ..witness });
    }
    let failure = first_failure(ctx, ids.iter().copied(), |ctx, &u| {
        let val = ctx.val_eq(u, u)?.neg().snot();
        Ok((val.z2() != val.z1().compl()).then(|| json!({ "u": u, "c_u": val })))
    })?;
    let summary = format!("{}; classical over {} elements", witness.summary, ids.len());
    Ok(CheckReport::new("consistency", params, failure, summary))
}

/// Restricted pure formulas in `x` and `y` paired with their meaning on
/// hereditarily finite sets.
type Oracle = fn(&HFSet, &HFSet) -> bool;

const CHECK_NAME_BATTERY: [(&str, Oracle); 5] = [
    ("x in y", |x, y| y.contains(x)),
    ("x = y", |x, y| x == y),
    ("forall z in x . z in y", |x, y| x.members().all(|z| y.contains(z))),
    ("exists z in y . x in z", |x, y| y.members().any(|z| z.contains(x))),
    ("exists z in x . forall w in z . w in y", |x, y| x.members().any(|z| z.members().all(|w| y.contains(w)))),
];

/// Check-names of all hereditarily finite sets of rank at most
/// `max_hf_rank`: membership and equality are decided exactly, the battery
/// of restricted formulas takes only the values `0` and `1` and agrees with
/// native evaluation, and values coincide with those over a second algebra
/// (`2^2` if the context is over `2`, else `2`). Quantifiers range over the
/// check-names.
pub fn check_check_names(ctx: &mut EvalContext, max_hf_rank: u32, budget: u64) -> Result<CheckReport, LabError> {
    if max_hf_rank > 4 {
        return Err(EvalError::Budget { needed: num_bigint::BigUint::from(2u32).pow(1 << 17), budget }.into());
    }
    let sets = hf_universe(max_hf_rank + 1);
    let needed = (sets.len() as u64).pow(2);
    if needed > budget {
        return Err(EvalError::Budget { needed: needed.into(), budget }.into());
    }
    let other_alg = if ctx.algebra().atoms() == 1 { BoolAlg::powerset(2) } else { Ok(BoolAlg::two()) }
        .expect("two atoms are allowed");
    let mut other = EvalContext::new(UniverseStore::new(other_alg), ctx.semantics());
    let names: Vec<ElemId> = sets.iter().map(|x| ctx.store_mut().check_name(x)).collect();
    let other_names: Vec<ElemId> = sets.iter().map(|x| other.store_mut().check_name(x)).collect();
    other.set_carrier(other_names.clone())?;
    let saved = ctx.carrier().to_vec();
    ctx.set_carrier(names.clone())?;

    let (small, large) = if ctx.algebra().atoms() < other_alg.atoms() { (ctx.algebra(), other_alg) } else { (other_alg, ctx.algebra()) };
    let embedding = small.embedding_into(large).expect("smaller into larger");
    let lift = |t: TwistVal| if t.algebra() == small { t.embed(&embedding).expect("embeddable") } else { t };

    let battery: Vec<(FOFormula, Oracle)> =
        CHECK_NAME_BATTERY.iter().map(|&(src, oracle)| (parse(src).expect("battery parses"), oracle)).collect();
    let mut params = CheckParams::of(ctx).rank(max_hf_rank);
    params.carrier_size = names.len();
    let pairs: Vec<(usize, usize)> = (0..sets.len()).flat_map(|i| (0..sets.len()).map(move |j| (i, j))).collect();
    let result = first_failure(ctx, pairs.iter().copied(), |ctx, &(i, j)| {
        let (x, y) = (&sets[i], &sets[j]);
        let direct = [
            ("x in y", ctx.val_mem(names[i], names[j])?, y.contains(x)),
            ("x = y", ctx.val_eq(names[i], names[j])?, x == y),
        ];
        for (label, val, truth) in direct {
            let expected = if truth { TwistVal::one(ctx.algebra()) } else { TwistVal::zero(ctx.algebra()) };
            if val != expected {
                return Ok(Some(json!({ "x": x.to_string(), "y": y.to_string(), "atomic": label, "value": val })));
            }
        }
        let here = [("x".to_string(), names[i]), ("y".to_string(), names[j])].into();
        let there = [("x".to_string(), other_names[i]), ("y".to_string(), other_names[j])].into();
        for (phi, oracle) in &battery {
            let val = ctx.val_formula(phi, &here)?;
            let other_val = other.val_formula(phi, &there)?;
            let alg = ctx.algebra();
            let expected = if oracle(x, y) { TwistVal::one(alg) } else { TwistVal::zero(alg) };
            if val != expected || lift(val) != lift(other_val) {
                return Ok(Some(json!({
                    "x": x.to_string(),
                    "y": y.to_string(),
                    "formula": phi.to_string(),
                    "value": val,
                    "other_algebra_value": other_val,
                    "expected": expected,
                })));
            }
        }
        Ok(None)
    });
    ctx.set_carrier(saved).expect("the previous carrier was valid");
    let summary = format!(
        "{} hereditarily finite sets, {} pairs, {} restricted formulas, compared with 2^{}",
        sets.len(),
        pairs.len(),
        battery.len(),
        other_alg.atoms()
    );
    Ok(CheckReport::new("check-names", params, result?, summary))
}

/// `=>` satisfies P1 to P3 on every triple of the context's twist domain,
/// `->` does not, and `(1, 1/2, 1/2)` violates P1 for `->`.
pub fn check_reasonable_implication(ctx: &EvalContext) -> Result<CheckReport, LabError> {
    let alg = ctx.algebra();
    let params = CheckParams::of(ctx);
    let strong = scan_implication(alg, SemanticsKind::Ps3);
    let weak = scan_implication(alg, SemanticsKind::Lpt0);
    let (one, half) = (TwistVal::one(alg), TwistVal::half(alg));
    let bound = half.imp(half).map_err(EvalError::from)?;
    let p1_broken = one.and(half).map_err(EvalError::from)?.leq(half).map_err(EvalError::from)?
        && !one.leq(bound).map_err(EvalError::from)?;
    let ok = strong.holds && !weak.holds && p1_broken;
    let failure = (!ok).then(|| {
        json!({
            "strong_implication": strong,
            "weak_implication": weak,
            "p1_fails_at_1_half_half": p1_broken,
        })
    });
    let weak_note = match &weak.counterexample {
        Some(c) => format!("-> fails {:?} at ({}, {}, {})", c.property, c.z, c.w, c.u),
        None => "-> satisfies P1-P3".to_string(),
    };
    let summary = format!("=> satisfies P1-P3 on {} triples; {weak_note}", strong.triples_checked);
    Ok(CheckReport::new("reasonable-implication", params, failure, summary))
}
