//! Propositional formulas over `&`, `|`, `->`, `~`, `!` with the derived
//! `=>`, `O` and `<->`, their evaluation in finite logical matrices, and a
//! Hilbert-style proof checker.

mod matrix;
pub mod proof;

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::folast::syntax::{parse_surface, Surface};
use crate::folast::ParseError;

pub use matrix::{
    eval, is_tautology, matrix_consequence, MatrixSpec, MatrixValue, Tv3, Valuation, Verdict, VALUATION_BUDGET,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PropError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("variable `{0}` has no value")]
    Unbound(String),
    #[error("value {value} does not belong to the matrix {matrix}")]
    ForeignValue { value: String, matrix: String },
    #[error("{needed} valuations needed, budget is {budget}")]
    Budget { needed: String, budget: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PropFormula {
    Var(String),
    And(Box<PropFormula>, Box<PropFormula>),
    Or(Box<PropFormula>, Box<PropFormula>),
    Imp(Box<PropFormula>, Box<PropFormula>),
    SNot(Box<PropFormula>),
    PNeg(Box<PropFormula>),
}

impl PropFormula {
    pub fn var(name: &str) -> Self {
        PropFormula::Var(name.to_string())
    }

    pub fn and(a: PropFormula, b: PropFormula) -> Self {
        PropFormula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: PropFormula, b: PropFormula) -> Self {
        PropFormula::Or(Box::new(a), Box::new(b))
    }

    pub fn imp(a: PropFormula, b: PropFormula) -> Self {
        PropFormula::Imp(Box::new(a), Box::new(b))
    }

    pub fn snot(a: PropFormula) -> Self {
        PropFormula::SNot(Box::new(a))
    }

    pub fn pneg(a: PropFormula) -> Self {
        PropFormula::PNeg(Box::new(a))
    }

    /// `a => b`, i.e. `!~(a -> b)`.
    pub fn simp(a: PropFormula, b: PropFormula) -> Self {
        PropFormula::pneg(PropFormula::snot(PropFormula::imp(a, b)))
    }

    /// `O a`, i.e. `~(a & !a)`.
    pub fn circ(a: PropFormula) -> Self {
        PropFormula::snot(PropFormula::and(a.clone(), PropFormula::pneg(a)))
    }

    pub fn iff(a: PropFormula, b: PropFormula) -> Self {
        PropFormula::and(PropFormula::imp(a.clone(), b.clone()), PropFormula::imp(b, a))
    }

    pub fn vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        let mut stack = vec![self];
        while let Some(f) = stack.pop() {
            match f {
                PropFormula::Var(v) => {
                    out.insert(v.clone());
                }
                PropFormula::And(a, b) | PropFormula::Or(a, b) | PropFormula::Imp(a, b) => {
                    stack.push(a);
                    stack.push(b);
                }
                PropFormula::SNot(a) | PropFormula::PNeg(a) => stack.push(a),
            }
        }
        out
    }

    pub fn depth(&self) -> usize {
        match self {
            PropFormula::Var(_) => 0,
            PropFormula::And(a, b) | PropFormula::Or(a, b) | PropFormula::Imp(a, b) => 1 + a.depth().max(b.depth()),
            PropFormula::SNot(a) | PropFormula::PNeg(a) => 1 + a.depth(),
        }
    }
}

impl fmt::Display for PropFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn operand(a: &PropFormula, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            match a {
                PropFormula::Var(_) | PropFormula::SNot(_) | PropFormula::PNeg(_) => write!(f, "{a}"),
                _ => write!(f, "({a})"),
            }
        }
        let (a, op, b) = match self {
            PropFormula::Var(v) => return f.write_str(v),
            PropFormula::SNot(a) => {
                f.write_str("~")?;
                return operand(a, f);
            }
            PropFormula::PNeg(a) => {
                f.write_str("!")?;
                return operand(a, f);
            }
            PropFormula::And(a, b) => (a, " & ", b),
            PropFormula::Or(a, b) => (a, " | ", b),
            PropFormula::Imp(a, b) => (a, " -> ", b),
        };
        operand(a, f)?;
        f.write_str(op)?;
        operand(b, f)
    }
}

impl std::str::FromStr for PropFormula {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}

/// Parses the propositional fragment of the formula grammar.
pub fn parse(src: &str) -> Result<PropFormula, ParseError> {
    lower(parse_surface(src)?)
}

fn lower(s: Surface) -> Result<PropFormula, ParseError> {
    let not_propositional = |what: &str| ParseError {
        line: 1,
        col: 1,
        message: format!("{what} is not allowed in a propositional formula"),
    };
    Ok(match s {
        Surface::Atom { name, .. } => PropFormula::Var(name),
        Surface::Mem(..) => return Err(not_propositional("`in`")),
        Surface::Eq(..) => return Err(not_propositional("`=`")),
        Surface::Quantified { line, col, .. } => {
            return Err(ParseError { line, col, message: "quantifiers are not allowed in a propositional formula".into() })
        }
        Surface::And(a, b) => PropFormula::and(lower(*a)?, lower(*b)?),
        Surface::Or(a, b) => PropFormula::or(lower(*a)?, lower(*b)?),
        Surface::Imp(a, b) => PropFormula::imp(lower(*a)?, lower(*b)?),
        Surface::SImp(a, b) => PropFormula::simp(lower(*a)?, lower(*b)?),
        Surface::Iff(a, b) => PropFormula::iff(lower(*a)?, lower(*b)?),
        Surface::Snot(a) => PropFormula::snot(lower(*a)?),
        Surface::Pneg(a) => PropFormula::pneg(lower(*a)?),
        Surface::Circ(a) => PropFormula::circ(lower(*a)?),
    })
}
