//! Twist domains `T_A = {(z1, z2) : z1 | z2 = 1}` and the two twist-structure
//! algebras built on them.
//!
//! The carrier and every operation except implication are shared between the
//! LPT0 structure and the (PS3, ¬) structure, so both live here and the
//! implication is chosen through [`SemanticsKind`].

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::boolalg::{AlgebraError, BAElem, BoolAlg};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TwistError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("pair ({z1:?}, {z2:?}) is not in the twist domain: z1 | z2 != 1")]
    NotInDomain { z1: BAElem, z2: BAElem },
}

/// Which implication drives the structure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SemanticsKind {
    /// `(z1 -> w1, z1 & w2)`
    Lpt0,
    /// `(z1 -> w1, z1 & ~w1)`
    Ps3,
}

impl SemanticsKind {
    pub const ALL: [SemanticsKind; 2] = [SemanticsKind::Lpt0, SemanticsKind::Ps3];

    pub fn name(self) -> &'static str {
        match self {
            SemanticsKind::Lpt0 => "lpt0",
            SemanticsKind::Ps3 => "ps3",
        }
    }
}

impl fmt::Display for SemanticsKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SemanticsKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "lpt0" => Ok(SemanticsKind::Lpt0),
            "ps3" => Ok(SemanticsKind::Ps3),
            other => Err(format!("unknown semantics `{other}` (expected lpt0 or ps3)")),
        }
    }
}

/// A twist value `(z1, z2)` with `z1 | z2 = 1`.
///
/// Ordering (`Ord`) is lexicographic on the coordinate masks and is only used
/// for deterministic enumeration; the lattice order is [`TwistVal::leq`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TwistVal {
    z1: BAElem,
    z2: BAElem,
}

impl fmt::Debug for TwistVal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.symbol() {
            Some(s) => write!(f, "TwistVal({s})"),
            None => write!(f, "TwistVal({:?}, {:?})", self.z1, self.z2),
        }
    }
}

/// Prints `1`, `1/2`, `0` over the two-element algebra and `(z1,z2)` hex
/// masks otherwise.
impl fmt::Display for TwistVal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.symbol() {
            Some(s) => f.write_str(s),
            None => write!(f, "({},{})", self.z1, self.z2),
        }
    }
}

impl Serialize for TwistVal {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl TwistVal {
    pub fn new(z1: BAElem, z2: BAElem) -> Result<Self, TwistError> {
        if !z1.join(z2)?.is_top() {
            return Err(TwistError::NotInDomain { z1, z2 });
        }
        Ok(TwistVal { z1, z2 })
    }

    /// Builds a value from raw coordinate masks.
    pub fn from_masks(alg: BoolAlg, z1: u32, z2: u32) -> Result<Self, TwistError> {
        TwistVal::new(alg.element(z1)?, alg.element(z2)?)
    }

    /// `(1, 0)`, the top.
    pub fn one(alg: BoolAlg) -> Self {
        TwistVal { z1: alg.top(), z2: alg.bottom() }
    }

    /// `(1, 1)`.
    pub fn half(alg: BoolAlg) -> Self {
        TwistVal { z1: alg.top(), z2: alg.top() }
    }

    /// `(0, 1)`, the bottom.
    pub fn zero(alg: BoolAlg) -> Self {
        TwistVal { z1: alg.bottom(), z2: alg.top() }
    }

    /// `(a, ~a)`: the image of a Boolean element.
    pub fn classical(a: BAElem) -> Self {
        TwistVal { z1: a, z2: a.compl() }
    }

    pub fn z1(self) -> BAElem {
        self.z1
    }

    pub fn z2(self) -> BAElem {
        self.z2
    }

    pub fn algebra(self) -> BoolAlg {
        self.z1.algebra()
    }

    /// `1`, `1/2` or `0` when over the two-element algebra.
    pub fn symbol(self) -> Option<&'static str> {
        if self.z1.atoms() != 1 {
            return None;
        }
        Some(match (self.z1.mask(), self.z2.mask()) {
            (1, 0) => "1",
            (1, 1) => "1/2",
            _ => "0",
        })
    }

    pub fn is_designated(self) -> bool {
        self.z1.is_top()
    }

    pub fn and(self, w: TwistVal) -> Result<TwistVal, TwistError> {
        Ok(TwistVal { z1: self.z1.meet(w.z1)?, z2: self.z2.join(w.z2)? })
    }

    pub fn or(self, w: TwistVal) -> Result<TwistVal, TwistError> {
        Ok(TwistVal { z1: self.z1.join(w.z1)?, z2: self.z2.meet(w.z2)? })
    }

    /// LPT0 implication `(z1 -> w1, z1 & w2)`.
    pub fn imp(self, w: TwistVal) -> Result<TwistVal, TwistError> {
        Ok(TwistVal { z1: self.z1.imp(w.z1)?, z2: self.z1.meet(w.z2)? })
    }

    /// PS3 implication `(z1 -> w1, z1 & ~w1)`.
    pub fn simp(self, w: TwistVal) -> Result<TwistVal, TwistError> {
        Ok(TwistVal { z1: self.z1.imp(w.z1)?, z2: self.z1.meet(w.z1.compl())? })
    }

    /// The implication selected by `kind`.
    pub fn implies(self, w: TwistVal, kind: SemanticsKind) -> Result<TwistVal, TwistError> {
        match kind {
            SemanticsKind::Lpt0 => self.imp(w),
            SemanticsKind::Ps3 => self.simp(w),
        }
    }

    /// Strong negation `(~z1, z1)`.
    pub fn snot(self) -> TwistVal {
        TwistVal { z1: self.z1.compl(), z2: self.z1 }
    }

    /// Paraconsistent negation `(z2, z1)`.
    pub fn neg(self) -> TwistVal {
        TwistVal { z1: self.z2, z2: self.z1 }
    }

    /// Consistency `(~(z1 & z2), z1 & z2)`.
    pub fn circ(self) -> TwistVal {
        let both = BAElem::meet(self.z1, self.z2).expect("coordinates share an algebra");
        TwistVal { z1: both.compl(), z2: both }
    }

    /// Lattice order: `z1 <= w1` and `z2 >= w2`.
    pub fn leq(self, w: TwistVal) -> Result<bool, TwistError> {
        Ok(self.z1.leq(w.z1)? && w.z2.leq(self.z2)?)
    }

    /// Infimum; the empty meet is `1`.
    pub fn big_meet<I>(alg: BoolAlg, xs: I) -> Result<TwistVal, TwistError>
    where
        I: IntoIterator<Item = TwistVal>,
    {
        xs.into_iter().try_fold(TwistVal::one(alg), |acc, x| acc.and(x))
    }

    /// Supremum; the empty join is `0`.
    pub fn big_join<I>(alg: BoolAlg, xs: I) -> Result<TwistVal, TwistError>
    where
        I: IntoIterator<Item = TwistVal>,
    {
        xs.into_iter().try_fold(TwistVal::zero(alg), |acc, x| acc.or(x))
    }

    /// Image under a complete Boolean embedding, coordinatewise.
    pub fn embed(self, e: &crate::boolalg::Embedding) -> Result<TwistVal, TwistError> {
        TwistVal::new(e.apply(self.z1)?, e.apply(self.z2)?)
    }
}

/// All of `T_A`, lexicographic in `(z1, z2)`. Has `3^n` elements.
pub fn twist_domain(alg: BoolAlg) -> Vec<TwistVal> {
    twist_domain_iter(alg).collect()
}

/// Lazy form of [`twist_domain`], same order.
pub fn twist_domain_iter(alg: BoolAlg) -> impl Iterator<Item = TwistVal> {
    let full = alg.top().mask();
    (0..=full).flat_map(move |z1| {
        // z2 = ~z1 | s for every s below z1, s increasing
        let forced = full & !z1;
        let mut next = Some(0u32);
        std::iter::from_fn(move || {
            let s = next?;
            next = if s == z1 { None } else { Some(((s | !z1).wrapping_add(1)) & z1) };
            Some(TwistVal {
                z1: alg.element(z1).expect("mask below top"),
                z2: alg.element(forced | s).expect("mask below top"),
            })
        })
    })
}

/// The designated set `D_A = {(1, a)}`.
pub fn designated_set(alg: BoolAlg) -> Vec<TwistVal> {
    alg.elements().map(|a| TwistVal { z1: alg.top(), z2: a }).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ImplicationProperty {
    /// `z & w <= u` implies `z <= w => u`
    P1,
    /// `z <= w` implies `u => z <= u => w`
    P2,
    /// `z <= w` implies `w => u <= z => u`
    P3,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ImplicationCounterexample {
    pub property: ImplicationProperty,
    pub z: TwistVal,
    pub w: TwistVal,
    pub u: TwistVal,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ImplicationReport {
    pub holds: bool,
    pub triples_checked: u64,
    pub counterexample: Option<ImplicationCounterexample>,
}

/// Scans every triple of `T_A` for the three reasonable-implication
/// properties of the implication selected by `kind`. Stops at the first
/// violation; triples are visited in domain order and P1 is tried before P2
/// and P3.
pub fn check_reasonable_implication(alg: BoolAlg, kind: SemanticsKind) -> ImplicationReport {
    let dom = twist_domain(alg);
    let imp = |a: TwistVal, b: TwistVal| a.implies(b, kind).expect("same algebra");
    let leq = |a: TwistVal, b: TwistVal| a.leq(b).expect("same algebra");
    let mut checked = 0u64;
    for &z in &dom {
        for &w in &dom {
            for &u in &dom {
                checked += 1;
                let property = if leq(z.and(w).expect("same algebra"), u) && !leq(z, imp(w, u)) {
                    Some(ImplicationProperty::P1)
                } else if leq(z, w) && !leq(imp(u, z), imp(u, w)) {
                    Some(ImplicationProperty::P2)
                } else if leq(z, w) && !leq(imp(w, u), imp(z, u)) {
                    Some(ImplicationProperty::P3)
                } else {
                    None
                };
                if let Some(property) = property {
                    return ImplicationReport {
                        holds: false,
                        triples_checked: checked,
                        counterexample: Some(ImplicationCounterexample { property, z, w, u }),
                    };
                }
            }
        }
    }
    ImplicationReport { holds: true, triples_checked: checked, counterexample: None }
}
