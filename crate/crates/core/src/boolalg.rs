//! Finite powerset Boolean algebras `2^n`.
//!
//! Every finite Boolean algebra is isomorphic to the powerset of its atoms, so
//! elements are represented as atom masks. Each element remembers the atom
//! count of the algebra it was built in; mixing elements of different algebras
//! is reported as an [`AlgebraError::Mismatch`].

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest supported atom count.
pub const MAX_ATOMS: u8 = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("atom count {0} out of range 1..={MAX_ATOMS}")]
    Size(u32),
    #[error("algebra mismatch: operand from 2^{found} used in 2^{expected}")]
    Mismatch { expected: u8, found: u8 },
    #[error("mask {mask:#x} mentions atoms outside 2^{atoms}")]
    MaskOutOfRange { mask: u32, atoms: u8 },
    #[error("cannot embed 2^{from} into the smaller algebra 2^{into}")]
    Embedding { from: u8, into: u8 },
}

/// The powerset algebra on `atoms` atoms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BoolAlg {
    atoms: u8,
}

/// An element of a [`BoolAlg`]: a set of atoms.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BAElem {
    atoms: u8,
    mask: u32,
}

impl fmt::Debug for BAElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#x}/2^{}", self.mask, self.atoms)
    }
}

impl fmt::Display for BAElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:x}", self.mask)
    }
}

fn full_mask(atoms: u8) -> u32 {
    if atoms >= 32 {
        u32::MAX
    } else {
        (1u32 << atoms) - 1
    }
}

impl BoolAlg {
    /// Builds `2^n`.
    pub fn powerset(n: u32) -> Result<Self, AlgebraError> {
        if n == 0 || n > u32::from(MAX_ATOMS) {
            return Err(AlgebraError::Size(n));
        }
        Ok(BoolAlg { atoms: n as u8 })
    }

    /// The two-element algebra.
    pub fn two() -> Self {
        BoolAlg { atoms: 1 }
    }

    pub fn atoms(&self) -> u8 {
        self.atoms
    }

    /// Number of elements, `2^n`.
    pub fn size(&self) -> u64 {
        1u64 << self.atoms
    }

    pub fn bottom(&self) -> BAElem {
        BAElem { atoms: self.atoms, mask: 0 }
    }

    pub fn top(&self) -> BAElem {
        BAElem { atoms: self.atoms, mask: full_mask(self.atoms) }
    }

    /// The singleton `{i}`.
    pub fn atom(&self, i: u8) -> Result<BAElem, AlgebraError> {
        if i >= self.atoms {
            return Err(AlgebraError::MaskOutOfRange { mask: 1u32.wrapping_shl(u32::from(i)), atoms: self.atoms });
        }
        Ok(BAElem { atoms: self.atoms, mask: 1 << i })
    }

    /// The element with the given atom mask.
    pub fn element(&self, mask: u32) -> Result<BAElem, AlgebraError> {
        if mask & !full_mask(self.atoms) != 0 {
            return Err(AlgebraError::MaskOutOfRange { mask, atoms: self.atoms });
        }
        Ok(BAElem { atoms: self.atoms, mask })
    }

    /// All elements in increasing mask order.
    pub fn elements(&self) -> impl Iterator<Item = BAElem> + '_ {
        let atoms = self.atoms;
        (0..=full_mask(atoms)).map(move |mask| BAElem { atoms, mask })
    }

    pub fn contains(&self, x: BAElem) -> bool {
        x.atoms == self.atoms
    }

    fn check(&self, x: BAElem) -> Result<BAElem, AlgebraError> {
        if x.atoms == self.atoms {
            Ok(x)
        } else {
            Err(AlgebraError::Mismatch { expected: self.atoms, found: x.atoms })
        }
    }

    pub fn meet(&self, x: BAElem, y: BAElem) -> Result<BAElem, AlgebraError> {
        self.check(x)?.meet(self.check(y)?)
    }

    pub fn join(&self, x: BAElem, y: BAElem) -> Result<BAElem, AlgebraError> {
        self.check(x)?.join(self.check(y)?)
    }

    pub fn compl(&self, x: BAElem) -> Result<BAElem, AlgebraError> {
        Ok(self.check(x)?.compl())
    }

    /// `x -> y`, i.e. `~x | y`.
    pub fn imp(&self, x: BAElem, y: BAElem) -> Result<BAElem, AlgebraError> {
        self.check(x)?.imp(self.check(y)?)
    }

    pub fn leq(&self, x: BAElem, y: BAElem) -> Result<bool, AlgebraError> {
        self.check(x)?.leq(self.check(y)?)
    }

    /// Infimum of a finite family; the empty meet is top.
    pub fn big_meet<I>(&self, xs: I) -> Result<BAElem, AlgebraError>
    where
        I: IntoIterator<Item = BAElem>,
    {
        xs.into_iter().try_fold(self.top(), |acc, x| acc.meet(self.check(x)?))
    }

    /// Supremum of a finite family; the empty join is bottom.
    pub fn big_join<I>(&self, xs: I) -> Result<BAElem, AlgebraError>
    where
        I: IntoIterator<Item = BAElem>,
    {
        xs.into_iter().try_fold(self.bottom(), |acc, x| acc.join(self.check(x)?))
    }

    /// A complete embedding of `self` into `target` (which must have at least
    /// as many atoms). Atom `i < m-1` goes to `{i}` and the last atom absorbs
    /// the remaining atoms of `target`, so the image is a complete subalgebra.
    pub fn embedding_into(&self, target: BoolAlg) -> Result<Embedding, AlgebraError> {
        if target.atoms < self.atoms {
            return Err(AlgebraError::Embedding { from: self.atoms, into: target.atoms });
        }
        let last = self.atoms - 1;
        let blocks = (0..self.atoms)
            .map(|i| {
                if i == last {
                    full_mask(target.atoms) & !full_mask(last)
                } else {
                    1u32 << i
                }
            })
            .collect();
        Ok(Embedding { source: *self, target, blocks })
    }
}

impl BAElem {
    pub fn mask(self) -> u32 {
        self.mask
    }

    pub fn atoms(self) -> u8 {
        self.atoms
    }

    pub fn algebra(self) -> BoolAlg {
        BoolAlg { atoms: self.atoms }
    }

    pub fn is_top(self) -> bool {
        self.mask == full_mask(self.atoms)
    }

    pub fn is_bottom(self) -> bool {
        self.mask == 0
    }

    fn same(self, other: BAElem) -> Result<(), AlgebraError> {
        if self.atoms == other.atoms {
            Ok(())
        } else {
            Err(AlgebraError::Mismatch { expected: self.atoms, found: other.atoms })
        }
    }

    pub fn meet(self, other: BAElem) -> Result<BAElem, AlgebraError> {
        self.same(other)?;
        Ok(BAElem { atoms: self.atoms, mask: self.mask & other.mask })
    }

    pub fn join(self, other: BAElem) -> Result<BAElem, AlgebraError> {
        self.same(other)?;
        Ok(BAElem { atoms: self.atoms, mask: self.mask | other.mask })
    }

    pub fn compl(self) -> BAElem {
        BAElem { atoms: self.atoms, mask: !self.mask & full_mask(self.atoms) }
    }

    pub fn imp(self, other: BAElem) -> Result<BAElem, AlgebraError> {
        self.compl().join(other)
    }

    pub fn leq(self, other: BAElem) -> Result<bool, AlgebraError> {
        self.same(other)?;
        Ok(self.mask & other.mask == self.mask)
    }
}

/// Complete Boolean embedding between two powerset algebras.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Embedding {
    source: BoolAlg,
    target: BoolAlg,
    blocks: Vec<u32>,
}

impl Embedding {
    pub fn source(&self) -> BoolAlg {
        self.source
    }

    pub fn target(&self) -> BoolAlg {
        self.target
    }

    pub fn apply(&self, x: BAElem) -> Result<BAElem, AlgebraError> {
        self.source.check(x)?;
        let mask = self
            .blocks
            .iter()
            .enumerate()
            .filter(|(i, _)| x.mask & (1 << i) != 0)
            .fold(0, |acc, (_, b)| acc | b);
        Ok(BAElem { atoms: self.target.atoms, mask })
    }
}
