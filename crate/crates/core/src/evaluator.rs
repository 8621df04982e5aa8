//! Twist truth values of set-theoretic formulas.
//!
//! Membership and equality are computed by the mutual recursion
//!
//! ```text
//! [[u in v]] = join_{x in dom v} v(x) & [[x = u]]
//! [[u = v]]  = meet_{x in dom u} (u(x) => [[x in v]]) & meet_{x in dom v} (v(x) => [[x in u]])
//! ```
//!
//! where `=>` is the implication of the context's [`SemanticsKind`].
//! Quantifiers range over an explicit finite carrier.

use std::collections::{BTreeMap, HashMap};
use std::sync::RwLock;

use num_bigint::BigUint;
use thiserror::Error;

use crate::boolalg::BoolAlg;
use crate::folast::{free_vars, FOFormula, FormulaError, Term};
use crate::twist::{SemanticsKind, TwistError, TwistVal};
use crate::universe::{ElemId, UniverseError, UniverseStore};

pub type Assignment = BTreeMap<String, ElemId>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error(transparent)]
    Universe(#[from] UniverseError),
    #[error(transparent)]
    Twist(#[from] TwistError),
    #[error(transparent)]
    Formula(#[from] FormulaError),
    #[error("variable `{0}` is not bound")]
    UnboundVariable(String),
    #[error("`=>` is only available under ps3 semantics")]
    StrongImplicationUnderLpt0,
    #[error("{needed} assignments needed but the budget is {budget}")]
    Budget { needed: BigUint, budget: u64 },
    #[error("recursion on ({u}, {v}) did not decrease the rank measure {measure}")]
    Termination { u: ElemId, v: ElemId, measure: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Atom {
    Mem,
    Eq,
}

#[derive(Debug)]
pub struct EvalContext {
    store: UniverseStore,
    semantics: SemanticsKind,
    carrier: Vec<ElemId>,
    memo: RwLock<HashMap<(Atom, ElemId, ElemId), TwistVal>>,
    memoize: bool,
}

impl EvalContext {
    /// A context with an empty carrier.
    pub fn new(store: UniverseStore, semantics: SemanticsKind) -> Self {
        EvalContext { store, semantics, carrier: Vec::new(), memo: RwLock::new(HashMap::new()), memoize: true }
    }

    pub fn with_carrier(store: UniverseStore, semantics: SemanticsKind, carrier: Vec<ElemId>) -> Result<Self, EvalError> {
        let mut ctx = EvalContext::new(store, semantics);
        ctx.set_carrier(carrier)?;
        Ok(ctx)
    }

    /// A copy that recomputes every atomic value from scratch.
    pub fn without_memo(&self) -> Self {
        EvalContext {
            store: self.store.clone(),
            semantics: self.semantics,
            carrier: self.carrier.clone(),
            memo: RwLock::new(HashMap::new()),
            memoize: false,
        }
    }

    pub fn store(&self) -> &UniverseStore {
        &self.store
    }

    /// The store only grows, so cached values stay valid.
    pub fn store_mut(&mut self) -> &mut UniverseStore {
        &mut self.store
    }

    pub fn into_store(self) -> UniverseStore {
        self.store
    }

    pub fn algebra(&self) -> BoolAlg {
        self.store.algebra()
    }

    pub fn semantics(&self) -> SemanticsKind {
        self.semantics
    }

    pub fn set_semantics(&mut self, semantics: SemanticsKind) {
        if semantics != self.semantics {
            self.semantics = semantics;
            self.memo.write().expect("memo lock").clear();
        }
    }

    pub fn carrier(&self) -> &[ElemId] {
        &self.carrier
    }

    pub fn set_carrier(&mut self, carrier: Vec<ElemId>) -> Result<(), EvalError> {
        for &id in &carrier {
            self.store.get(id)?;
        }
        self.carrier = carrier;
        Ok(())
    }

    pub fn memo_len(&self) -> usize {
        self.memo.read().expect("memo lock").len()
    }

    /// `[[u in v]]`
    pub fn val_mem(&self, u: ElemId, v: ElemId) -> Result<TwistVal, EvalError> {
        self.mem(u, v, None)
    }

    /// `[[u = v]]`
    pub fn val_eq(&self, u: ElemId, v: ElemId) -> Result<TwistVal, EvalError> {
        self.eq(u, v, None)
    }

    fn measure(&self, u: ElemId, v: ElemId, bound: Option<u32>) -> Result<u32, EvalError> {
        let m = self.store.rank(u)? + self.store.rank(v)?;
        match bound {
            Some(b) if m >= b => Err(EvalError::Termination { u, v, measure: b }),
            _ => Ok(m),
        }
    }

    fn cached(&self, key: (Atom, ElemId, ElemId)) -> Option<TwistVal> {
        if !self.memoize {
            return None;
        }
        self.memo.read().expect("memo lock").get(&key).copied()
    }

    fn remember(&self, key: (Atom, ElemId, ElemId), val: TwistVal) {
        if self.memoize {
            self.memo.write().expect("memo lock").entry(key).or_insert(val);
        }
    }

    fn mem(&self, u: ElemId, v: ElemId, bound: Option<u32>) -> Result<TwistVal, EvalError> {
        let measure = self.measure(u, v, bound)?;
        let key = (Atom::Mem, u, v);
        if let Some(val) = self.cached(key) {
            return Ok(val);
        }
        let mut acc = TwistVal::zero(self.algebra());
        for &(x, vx) in self.store.get(v)?.entries() {
            acc = acc.or(vx.and(self.eq(x, u, Some(measure))?)?)?;
        }
        self.remember(key, acc);
        Ok(acc)
    }

    fn eq(&self, u: ElemId, v: ElemId, bound: Option<u32>) -> Result<TwistVal, EvalError> {
        let measure = self.measure(u, v, bound)?;
        // the defining expression is symmetric, so one orientation suffices
        let (u, v) = if u <= v { (u, v) } else { (v, u) };
        let key = (Atom::Eq, u, v);
        if let Some(val) = self.cached(key) {
            return Ok(val);
        }
        let mut acc = TwistVal::one(self.algebra());
        for (a, b) in [(u, v), (v, u)] {
            for &(x, ax) in self.store.get(a)?.entries() {
                let inner = self.mem(x, b, Some(measure))?;
                acc = acc.and(ax.implies(inner, self.semantics)?)?;
            }
        }
        self.remember(key, acc);
        Ok(acc)
    }

    /// The value of `phi` under `assignment`, quantifiers ranging over the
    /// carrier.
    pub fn val_formula(&self, phi: &FOFormula, assignment: &Assignment) -> Result<TwistVal, EvalError> {
        if self.semantics == SemanticsKind::Lpt0 && mentions_strong_implication(phi) {
            return Err(EvalError::StrongImplicationUnderLpt0);
        }
        let mut scope = Vec::new();
        self.formula(phi, assignment, &mut scope)
    }

    fn term(&self, t: &Term, assignment: &Assignment, scope: &[(String, ElemId)]) -> Result<ElemId, EvalError> {
        match t {
            Term::Const(id) => {
                self.store.get(*id)?;
                Ok(*id)
            }
            Term::Var(name) => scope
                .iter()
                .rev()
                .find(|(n, _)| n == name)
                .map(|(_, id)| *id)
                .or_else(|| assignment.get(name).copied())
                .ok_or_else(|| EvalError::UnboundVariable(name.clone())),
        }
    }

    fn formula(
        &self,
        phi: &FOFormula,
        assignment: &Assignment,
        scope: &mut Vec<(String, ElemId)>,
    ) -> Result<TwistVal, EvalError> {
        use FOFormula::*;
        Ok(match phi {
            Mem(a, b) => self.val_mem(self.term(a, assignment, scope)?, self.term(b, assignment, scope)?)?,
            Eq(a, b) => self.val_eq(self.term(a, assignment, scope)?, self.term(b, assignment, scope)?)?,
            And(a, b) => self.formula(a, assignment, scope)?.and(self.formula(b, assignment, scope)?)?,
            Or(a, b) => self.formula(a, assignment, scope)?.or(self.formula(b, assignment, scope)?)?,
            Imp(a, b) => self.formula(a, assignment, scope)?.imp(self.formula(b, assignment, scope)?)?,
            SImp(a, b) => self.formula(a, assignment, scope)?.simp(self.formula(b, assignment, scope)?)?,
            Snot(a) => self.formula(a, assignment, scope)?.snot(),
            Pneg(a) => self.formula(a, assignment, scope)?.neg(),
            Forall(x, body) | Exists(x, body) => {
                let universal = matches!(phi, Forall(..));
                let mut acc = if universal { TwistVal::one(self.algebra()) } else { TwistVal::zero(self.algebra()) };
                for &id in &self.carrier {
                    scope.push((x.clone(), id));
                    let val = self.formula(body, assignment, scope);
                    scope.pop();
                    acc = if universal { acc.and(val?)? } else { acc.or(val?)? };
                }
                acc
            }
        })
    }

    /// Designation of `phi` under one assignment.
    pub fn is_valid(&self, phi: &FOFormula, assignment: &Assignment) -> Result<bool, EvalError> {
        Ok(self.val_formula(phi, assignment)?.is_designated())
    }

    /// Designation of `phi` under every assignment of its free variables into
    /// the carrier.
    pub fn is_valid_all(&self, phi: &FOFormula, budget: u64) -> Result<bool, EvalError> {
        Ok(self.first_invalid_assignment(phi, budget)?.is_none())
    }

    /// The first assignment (in carrier order, last variable fastest) under
    /// which `phi` is not designated.
    pub fn first_invalid_assignment(&self, phi: &FOFormula, budget: u64) -> Result<Option<Assignment>, EvalError> {
        let vars: Vec<String> = free_vars(phi).into_iter().collect();
        let needed = BigUint::from(self.carrier.len()).pow(vars.len() as u32);
        if needed > BigUint::from(budget) {
            return Err(EvalError::Budget { needed, budget });
        }
        if self.carrier.is_empty() && !vars.is_empty() {
            return Ok(None);
        }
        let mut digits = vec![0usize; vars.len()];
        loop {
            let assignment: Assignment =
                vars.iter().zip(&digits).map(|(v, &d)| (v.clone(), self.carrier[d])).collect();
            if !self.is_valid(phi, &assignment)? {
                return Ok(Some(assignment));
            }
            let mut i = digits.len();
            loop {
                if i == 0 {
                    return Ok(None);
                }
                i -= 1;
                digits[i] += 1;
                if digits[i] < self.carrier.len() {
                    break;
                }
                digits[i] = 0;
            }
        }
    }
}

fn mentions_strong_implication(phi: &FOFormula) -> bool {
    use FOFormula::*;
    match phi {
        Mem(..) | Eq(..) => false,
        SImp(..) => true,
        And(a, b) | Or(a, b) | Imp(a, b) => mentions_strong_implication(a) || mentions_strong_implication(b),
        Snot(a) | Pneg(a) | Forall(_, a) | Exists(_, a) => mentions_strong_implication(a),
    }
}
