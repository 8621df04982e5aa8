//! Bounded twist-valued universes.
//!
//! An element is a finite map from earlier elements to twist values. Elements
//! live in a [`UniverseStore`] that interns entry maps, so two elements are
//! the same id exactly when their maps are equal. The empty element is always
//! id 0 and has rank 1; `V_0` is empty.

use std::collections::{BTreeSet, HashMap};
use std::fmt::{self, Write as _};

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::boolalg::{BAElem, BoolAlg};
use crate::evaluator::{EvalContext, EvalError};
use crate::twist::{twist_domain, TwistError, TwistVal};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ElemId(pub u32);

impl ElemId {
    pub const EMPTY: ElemId = ElemId(0);
}

impl fmt::Display for ElemId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum UniverseError {
    #[error("unknown element {0}")]
    UnknownId(ElemId),
    #[error("key {0} appears twice")]
    DuplicateKey(ElemId),
    #[error(transparent)]
    Twist(#[from] TwistError),
    #[error("enumeration needs {needed} elements but the budget is {budget}")]
    Budget { needed: BigUint, budget: u64 },
    #[error("{what}: expected {expected} items, found {found}")]
    LengthMismatch { what: &'static str, expected: usize, found: usize },
    #[error("line {line}: {message}")]
    Load { line: usize, message: String },
    #[error("element belongs to 2^{found}, store is over 2^{expected}")]
    StoreMismatch { expected: u8, found: u8 },
}

/// A twist-valued set: entries sorted by key id.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UElem {
    entries: Vec<(ElemId, TwistVal)>,
    rank: u32,
}

impl UElem {
    pub fn entries(&self) -> &[(ElemId, TwistVal)] {
        &self.entries
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn domain(&self) -> impl Iterator<Item = ElemId> + '_ {
        self.entries.iter().map(|(k, _)| *k)
    }

    pub fn get(&self, key: ElemId) -> Option<TwistVal> {
        self.entries
            .binary_search_by_key(&key, |(k, _)| *k)
            .ok()
            .map(|i| self.entries[i].1)
    }
}

#[derive(Debug, Clone)]
pub struct UniverseStore {
    alg: BoolAlg,
    elems: Vec<UElem>,
    index: HashMap<Vec<(ElemId, TwistVal)>, ElemId>,
}

impl UniverseStore {
    pub fn new(alg: BoolAlg) -> Self {
        let mut store = UniverseStore { alg, elems: Vec::new(), index: HashMap::new() };
        store.intern(Vec::new(), 1);
        store
    }

    pub fn algebra(&self) -> BoolAlg {
        self.alg
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn ids(&self) -> impl Iterator<Item = ElemId> {
        (0..self.elems.len() as u32).map(ElemId)
    }

    pub fn empty_element(&self) -> ElemId {
        ElemId::EMPTY
    }

    pub fn contains(&self, id: ElemId) -> bool {
        (id.0 as usize) < self.elems.len()
    }

    pub fn get(&self, id: ElemId) -> Result<&UElem, UniverseError> {
        self.elems.get(id.0 as usize).ok_or(UniverseError::UnknownId(id))
    }

    pub fn rank(&self, id: ElemId) -> Result<u32, UniverseError> {
        Ok(self.get(id)?.rank)
    }

    fn intern(&mut self, entries: Vec<(ElemId, TwistVal)>, rank: u32) -> ElemId {
        if let Some(&id) = self.index.get(&entries) {
            return id;
        }
        let id = ElemId(self.elems.len() as u32);
        self.index.insert(entries.clone(), id);
        self.elems.push(UElem { entries, rank });
        id
    }

    /// Interns `{<key, value>, ...}`. Pair order does not matter.
    pub fn make_element<I>(&mut self, pairs: I) -> Result<ElemId, UniverseError>
    where
        I: IntoIterator<Item = (ElemId, TwistVal)>,
    {
        let mut entries: Vec<(ElemId, TwistVal)> = pairs.into_iter().collect();
        entries.sort_by_key(|(k, _)| *k);
        let mut rank = 1;
        for (i, (key, val)) in entries.iter().enumerate() {
            if i > 0 && entries[i - 1].0 == *key {
                return Err(UniverseError::DuplicateKey(*key));
            }
            rank = rank.max(self.rank(*key)? + 1);
            if val.algebra() != self.alg {
                return Err(UniverseError::StoreMismatch {
                    expected: self.alg.atoms(),
                    found: val.algebra().atoms(),
                });
            }
        }
        Ok(self.intern(entries, rank))
    }

    /// Looks up an element without interning it.
    pub fn find(&self, pairs: &[(ElemId, TwistVal)]) -> Option<ElemId> {
        let mut entries = pairs.to_vec();
        entries.sort_by_key(|(k, _)| *k);
        self.index.get(&entries).copied()
    }

    /// All of `V_max_rank` in a fixed order, interning as needed.
    ///
    /// `V_k` is every map from a subset of `V_{k-1}` into `T_A`; each level is
    /// listed by counting in base `1 + |T_A|` with one digit per element of the
    /// previous level (digit 0 meaning "absent"), least significant first.
    pub fn enumerate_rank(&mut self, max_rank: u32, budget: u64) -> Result<Vec<ElemId>, UniverseError> {
        let values = twist_domain(self.alg);
        let base = values.len() as u64 + 1;
        let mut level: Vec<ElemId> = Vec::new();
        for _ in 0..max_rank {
            let needed = BigUint::from(base).pow(level.len() as u32);
            if needed > BigUint::from(budget) {
                return Err(UniverseError::Budget { needed, budget });
            }
            let count = u64::try_from(&needed).expect("bounded by budget");
            let mut next = Vec::with_capacity(count as usize);
            let mut digits = vec![0u64; level.len()];
            for _ in 0..count {
                let entries: Vec<(ElemId, TwistVal)> = level
                    .iter()
                    .zip(&digits)
                    .filter(|(_, d)| **d > 0)
                    .map(|(k, d)| (*k, values[*d as usize - 1]))
                    .collect();
                next.push(self.make_element(entries)?);
                for d in digits.iter_mut() {
                    *d += 1;
                    if *d < base {
                        break;
                    }
                    *d = 0;
                }
            }
            level = next;
        }
        Ok(level)
    }

    /// The check-name `x^ = {<y^, 1> : y in x}`.
    pub fn check_name(&mut self, x: &HFSet) -> ElemId {
        let one = TwistVal::one(self.alg);
        let pairs: Vec<(ElemId, TwistVal)> = x.members().map(|y| (self.check_name(y), one)).collect();
        self.make_element(pairs).expect("check-name keys are interned and distinct")
    }

    /// Copies `id` from `source` into this store, mapping values through the
    /// canonical embedding of the smaller algebra.
    pub fn import(&mut self, source: &UniverseStore, id: ElemId) -> Result<ElemId, UniverseError> {
        let embedding = source.alg.embedding_into(self.alg).map_err(TwistError::from)?;
        let mut cache = HashMap::new();
        self.import_with(source, id, &embedding, &mut cache)
    }

    fn import_with(
        &mut self,
        source: &UniverseStore,
        id: ElemId,
        embedding: &crate::boolalg::Embedding,
        cache: &mut HashMap<ElemId, ElemId>,
    ) -> Result<ElemId, UniverseError> {
        if let Some(&done) = cache.get(&id) {
            return Ok(done);
        }
        let mut pairs = Vec::new();
        for &(key, val) in source.get(id)?.entries() {
            pairs.push((self.import_with(source, key, embedding, cache)?, val.embed(embedding)?));
        }
        let out = self.make_element(pairs)?;
        cache.insert(id, out);
        Ok(out)
    }

    /// `{#k:v, ...}` with values printed as by [`TwistVal`]'s `Display`.
    pub fn describe(&self, id: ElemId) -> Result<String, UniverseError> {
        let body: Vec<String> = self.get(id)?.entries.iter().map(|(k, v)| format!("{k}:{v}")).collect();
        Ok(format!("{{{}}}", body.join(", ")))
    }

    /// One line per element: `<id> <rank> {<key>:(<z1>,<z2>), ...}` with hex
    /// masks.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (i, e) in self.elems.iter().enumerate() {
            let body: Vec<String> = e
                .entries
                .iter()
                .map(|(k, v)| format!("{}:({:x},{:x})", k.0, v.z1().mask(), v.z2().mask()))
                .collect();
            writeln!(out, "{i} {} {{{}}}", e.rank, body.join(", ")).expect("writing to a string");
        }
        out
    }

    /// Inverse of [`UniverseStore::dump`]. Ids must be dense from 0, keys
    /// must refer to earlier lines and ranks must be consistent.
    pub fn load(alg: BoolAlg, text: &str) -> Result<UniverseStore, UniverseError> {
        let mut store = UniverseStore { alg, elems: Vec::new(), index: HashMap::new() };
        for (n, raw) in text.lines().enumerate() {
            let line = n + 1;
            if raw.trim().is_empty() {
                continue;
            }
            let bad = |message: String| UniverseError::Load { line, message };
            let (id_text, rest) = raw.trim().split_once(' ').ok_or_else(|| bad("missing rank".into()))?;
            let (rank_text, body) = rest.split_once(' ').ok_or_else(|| bad("missing entry map".into()))?;
            let id: u32 = id_text.parse().map_err(|_| bad(format!("bad id `{id_text}`")))?;
            let rank: u32 = rank_text.parse().map_err(|_| bad(format!("bad rank `{rank_text}`")))?;
            if id as usize != store.elems.len() {
                return Err(bad(format!("expected id {}, found {id}", store.elems.len())));
            }
            let inner = body
                .trim()
                .strip_prefix('{')
                .and_then(|b| b.strip_suffix('}'))
                .ok_or_else(|| bad("entry map must be wrapped in braces".into()))?;
            let mut pairs = Vec::new();
            for item in inner.split("),").map(str::trim).filter(|s| !s.is_empty()) {
                let item = item.trim_end_matches(')');
                let (key, val) = item.split_once(":(").ok_or_else(|| bad(format!("bad entry `{item}`")))?;
                let (z1, z2) = val.split_once(',').ok_or_else(|| bad(format!("bad value `{val}`")))?;
                let key: u32 = key.trim().parse().map_err(|_| bad(format!("bad key `{key}`")))?;
                if key >= id {
                    return Err(bad(format!("key {key} does not precede element {id}")));
                }
                let mask = |s: &str| u32::from_str_radix(s.trim(), 16).map_err(|_| bad(format!("bad mask `{s}`")));
                let v = TwistVal::from_masks(alg, mask(z1)?, mask(z2)?).map_err(|e| bad(e.to_string()))?;
                pairs.push((ElemId(key), v));
            }
            if pairs.windows(2).any(|w| w[0].0 >= w[1].0) {
                return Err(bad("keys must be strictly ascending".into()));
            }
            let before = store.elems.len();
            let got = store.make_element(pairs)?;
            if store.elems.len() == before {
                return Err(bad(format!("duplicate of element {got}")));
            }
            if store.elems[got.0 as usize].rank != rank {
                return Err(bad(format!("rank {rank} recorded, {} computed", store.elems[got.0 as usize].rank)));
            }
        }
        if store.elems.first().map(|e| e.entries.is_empty()) != Some(true) {
            return Err(UniverseError::Load { line: 1, message: "element 0 must be the empty element".into() });
        }
        Ok(store)
    }
}

/// The twist mixture `sum a_i . u_i`: domain is the union of the domains and
/// `u(z) = (b, ~b)` with `b = join_i (a_i & [[z in u_i]]_1)`.
pub fn mixture(ctx: &mut EvalContext, weights: &[BAElem], elements: &[ElemId]) -> Result<ElemId, EvalError> {
    if weights.len() != elements.len() {
        return Err(UniverseError::LengthMismatch {
            what: "mixture weights",
            expected: elements.len(),
            found: weights.len(),
        }
        .into());
    }
    let alg = ctx.store().algebra();
    let mut domain = BTreeSet::new();
    for &u in elements {
        domain.extend(ctx.store().get(u)?.domain());
    }
    let mut pairs = Vec::with_capacity(domain.len());
    for z in domain {
        let mut b = alg.bottom();
        for (&a, &u) in weights.iter().zip(elements) {
            let m = ctx.val_mem(z, u)?.z1();
            b = b.join(a.meet(m).map_err(TwistError::from)?).map_err(TwistError::from)?;
        }
        pairs.push((z, TwistVal::classical(b)));
    }
    Ok(ctx.store_mut().make_element(pairs)?)
}

/// A core of `u` relative to `carrier`: carrier members `x` with
/// `[[x in u]]_1 = 1`, keeping the lowest id of each `[[. = .]]_1 = 1` class.
pub fn core(ctx: &EvalContext, u: ElemId, carrier: &[ElemId]) -> Result<Vec<ElemId>, EvalError> {
    let mut candidates = Vec::new();
    for &x in carrier {
        if ctx.val_mem(x, u)?.z1().is_top() {
            candidates.push(x);
        }
    }
    candidates.sort();
    candidates.dedup();
    let mut kept: Vec<ElemId> = Vec::new();
    for x in candidates {
        let mut fresh = true;
        for &y in &kept {
            if ctx.val_eq(x, y)?.z1().is_top() {
                fresh = false;
                break;
            }
        }
        if fresh {
            kept.push(x);
        }
    }
    Ok(kept)
}

/// A hereditarily finite set.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct HFSet(BTreeSet<HFSet>);

impl HFSet {
    pub fn empty() -> Self {
        HFSet(BTreeSet::new())
    }

    pub fn from_members<I: IntoIterator<Item = HFSet>>(members: I) -> Self {
        HFSet(members.into_iter().collect())
    }

    pub fn members(&self) -> impl Iterator<Item = &HFSet> {
        self.0.iter()
    }

    pub fn contains(&self, y: &HFSet) -> bool {
        self.0.contains(y)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Von Neumann rank: `rank(empty) = 0`.
    pub fn rank(&self) -> u32 {
        self.0.iter().map(|y| y.rank() + 1).max().unwrap_or(0)
    }
}

impl fmt::Display for HFSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_char('{')?;
        for (i, y) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{y}")?;
        }
        f.write_char('}')
    }
}

/// Every hereditarily finite set of rank below `levels`, i.e. the
/// cumulative level `V_levels`, sorted.
pub fn hf_universe(levels: u32) -> Vec<HFSet> {
    let mut current: Vec<HFSet> = Vec::new();
    for _ in 0..levels {
        let n = current.len();
        assert!(n < 20, "hereditarily finite level too large to list");
        let mut next: Vec<HFSet> = (0u64..(1u64 << n))
            .map(|bits| HFSet::from_members((0..n).filter(|i| bits >> i & 1 == 1).map(|i| current[i].clone())))
            .collect();
        next.sort();
        current = next;
    }
    current
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::twist::SemanticsKind;
    use proptest::prelude::*;

    fn two() -> BoolAlg {
        BoolAlg::two()
    }

    #[test]
    fn empty_element_is_canonical() {
        let mut s = UniverseStore::new(two());
        assert_eq!(s.empty_element(), ElemId::EMPTY);
        assert_eq!(s.make_element([]).unwrap(), ElemId::EMPTY);
        assert_eq!(s.rank(ElemId::EMPTY).unwrap(), 1);
    }

    #[test]
    fn make_element_ranks_and_interning() {
        let a = two();
        let mut s = UniverseStore::new(a);
        let w = s.make_element([(ElemId::EMPTY, TwistVal::one(a))]).unwrap();
        assert_eq!(s.rank(w).unwrap(), 2);
        let u = s.make_element([(w, TwistVal::half(a))]).unwrap();
        assert_eq!(s.rank(u).unwrap(), 3);
        assert_eq!(s.make_element([(w, TwistVal::half(a))]).unwrap(), u);
        assert_ne!(s.make_element([(w, TwistVal::one(a))]).unwrap(), u);
        assert_eq!(s.make_element([(ElemId(99), TwistVal::one(a))]), Err(UniverseError::UnknownId(ElemId(99))));
        assert_eq!(
            s.make_element([(w, TwistVal::one(a)), (w, TwistVal::half(a))]),
            Err(UniverseError::DuplicateKey(w))
        );
        let wide = TwistVal::one(BoolAlg::powerset(2).unwrap());
        assert!(matches!(s.make_element([(w, wide)]), Err(UniverseError::StoreMismatch { .. })));
    }

    #[test]
    fn enumeration_counts() {
        let a = two();
        let mut s = UniverseStore::new(a);
        assert!(s.enumerate_rank(0, 10).unwrap().is_empty());
        assert_eq!(s.enumerate_rank(1, 10).unwrap(), vec![ElemId::EMPTY]);
        let v2 = s.enumerate_rank(2, 10).unwrap();
        assert_eq!(v2.len(), 4);
        let expected: Vec<ElemId> = [None, Some(TwistVal::zero(a)), Some(TwistVal::one(a)), Some(TwistVal::half(a))]
            .into_iter()
            .map(|v| s.find(&v.map(|v| vec![(ElemId::EMPTY, v)]).unwrap_or_default()).unwrap())
            .collect();
        assert_eq!(v2, expected);
        let v3 = s.enumerate_rank(3, 1000).unwrap();
        assert_eq!(v3.len(), 256);
        assert_eq!(v3.iter().collect::<BTreeSet<_>>().len(), 256);
        assert!(v3.iter().all(|&id| s.rank(id).unwrap() <= 3));
        match s.enumerate_rank(4, 1_000_000) {
            Err(UniverseError::Budget { needed, .. }) => assert_eq!(needed, BigUint::from(4u32).pow(256)),
            other => panic!("expected budget error, got {other:?}"),
        }
    }

    #[test]
    fn enumeration_counts_larger_algebras() {
        for (n, v2) in [(2u32, 10usize), (3, 28)] {
            let mut s = UniverseStore::new(BoolAlg::powerset(n).unwrap());
            assert_eq!(s.enumerate_rank(2, 100).unwrap().len(), v2);
            assert!(matches!(s.enumerate_rank(3, 1_000_000), Err(UniverseError::Budget { .. })));
        }
    }

    #[test]
    fn enumeration_is_deterministic() {
        let mut a = UniverseStore::new(two());
        let mut b = UniverseStore::new(two());
        assert_eq!(a.enumerate_rank(3, 1000).unwrap(), b.enumerate_rank(3, 1000).unwrap());
        assert_eq!(a.dump(), b.dump());
    }

    #[test]
    fn check_names() {
        let mut s = UniverseStore::new(two());
        let e = HFSet::empty();
        assert_eq!(s.check_name(&e), ElemId::EMPTY);
        let one = HFSet::from_members([e.clone()]);
        let id = s.check_name(&one);
        assert_eq!(s.get(id).unwrap().entries(), &[(ElemId::EMPTY, TwistVal::one(two()))]);
        let sets = hf_universe(4);
        assert_eq!(sets.len(), 16);
        let ids: Vec<ElemId> = sets.iter().map(|x| s.check_name(x)).collect();
        for (x, &ix) in sets.iter().zip(&ids) {
            assert_eq!(s.rank(ix).unwrap(), x.rank() + 1);
            for (y, &iy) in sets.iter().zip(&ids) {
                assert_eq!(x == y, ix == iy);
            }
        }
    }

    #[test]
    fn hf_levels() {
        assert_eq!(hf_universe(0).len(), 0);
        assert_eq!(hf_universe(1), vec![HFSet::empty()]);
        assert_eq!(hf_universe(3).len(), 4);
        assert_eq!(hf_universe(5).len(), 65536);
        assert_eq!(HFSet::from_members([HFSet::empty()]).to_string(), "{{}}");
    }

    #[test]
    fn dump_round_trip() {
        let a = BoolAlg::powerset(2).unwrap();
        let mut s = UniverseStore::new(a);
        s.enumerate_rank(2, 100).unwrap();
        let x = s.make_element([(ElemId(3), TwistVal::from_masks(a, 1, 3).unwrap()), (ElemId(1), TwistVal::half(a))]).unwrap();
        let text = s.dump();
        assert!(text.starts_with("0 1 {}\n"));
        let loaded = UniverseStore::load(a, &text).unwrap();
        assert_eq!(loaded.dump(), text);
        assert_eq!(loaded.get(x).unwrap(), s.get(x).unwrap());
    }

    #[test]
    fn load_rejects_bad_input() {
        let a = two();
        assert!(UniverseStore::load(a, "0 1 {}\n2 2 {0:(1,0)}\n").is_err());
        assert!(UniverseStore::load(a, "0 1 {}\n1 3 {0:(1,0)}\n").is_err());
        assert!(UniverseStore::load(a, "0 1 {}\n1 2 {0:(0,0)}\n").is_err());
        assert!(UniverseStore::load(a, "0 1 {}\n1 2 {1:(1,0)}\n").is_err());
        assert!(UniverseStore::load(a, "0 1 {}\n1 1 {}\n").is_err());
        assert!(UniverseStore::load(a, "0 2 {0:(1,0)}\n").is_err());
        let e = UniverseStore::load(a, "0 1 {}\n1 2 {0:(1,0)\n").unwrap_err();
        assert!(matches!(e, UniverseError::Load { line: 2, .. }));
    }

    #[test]
    fn import_preserves_structure() {
        let small = {
            let mut s = UniverseStore::new(two());
            s.enumerate_rank(2, 10).unwrap();
            s
        };
        let mut big = UniverseStore::new(BoolAlg::powerset(3).unwrap());
        let half = big.import(&small, ElemId(3)).unwrap();
        assert_eq!(big.get(half).unwrap().entries()[0].1, TwistVal::half(big.algebra()));
    }

    #[test]
    fn mixture_and_core() {
        let a = BoolAlg::powerset(2).unwrap();
        let mut ctx = EvalContext::new(UniverseStore::new(a), SemanticsKind::Lpt0);
        let one = TwistVal::one(a);
        let e = ElemId::EMPTY;
        let w = ctx.store_mut().make_element([(e, one)]).unwrap();
        let ww = ctx.store_mut().make_element([(w, one)]).unwrap();
        let u = ctx.store_mut().make_element([(e, one), (w, one)]).unwrap();
        let single = mixture(&mut ctx, &[a.top()], &[u]).unwrap();
        for &(z, v) in ctx.store().get(single).unwrap().entries().to_vec().iter() {
            assert_eq!(v.z1(), ctx.val_mem(z, u).unwrap().z1());
            assert_eq!(v.z2(), v.z1().compl());
        }
        let atom = a.atom(0).unwrap();
        let mixed = mixture(&mut ctx, &[atom, atom.compl()], &[w, ww]).unwrap();
        assert!(atom.leq(ctx.val_eq(mixed, w).unwrap().z1()).unwrap());
        assert!(atom.compl().leq(ctx.val_eq(mixed, ww).unwrap().z1()).unwrap());
        assert!(mixture(&mut ctx, &[a.top()], &[u, w]).is_err());

        assert!(core(&ctx, e, &[e, w, u]).unwrap().is_empty());
        let carrier = vec![e, w, ww, u];
        assert_eq!(core(&ctx, u, &carrier).unwrap(), vec![e, w]);
        // same members as w, different entry map
        let zero = TwistVal::zero(a);
        let w_dup = ctx.store_mut().make_element([(e, one), (w, zero)]).unwrap();
        assert_ne!(w_dup, w);
        let wider: Vec<ElemId> = carrier.iter().copied().chain([w_dup]).collect();
        assert_eq!(core(&ctx, u, &wider).unwrap().len(), 2);
    }

    proptest! {
        #[test]
        fn interning_matches_structure(picks in prop::collection::vec((0usize..4, 0usize..3), 0..4)) {
            let a = two();
            let mut s = UniverseStore::new(a);
            let base = s.enumerate_rank(2, 10).unwrap();
            let dom = twist_domain(a);
            let mut pairs: Vec<(ElemId, TwistVal)> = picks.iter().map(|&(k, v)| (base[k], dom[v])).collect();
            pairs.sort_by_key(|p| p.0);
            pairs.dedup_by_key(|p| p.0);
            let x = s.make_element(pairs.clone()).unwrap();
            let mut reversed = pairs.clone();
            reversed.reverse();
            prop_assert_eq!(s.make_element(reversed).unwrap(), x);
            prop_assert_eq!(s.get(x).unwrap().entries(), &pairs[..]);
        }
    }
}
