use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use serde::{Serialize, Serializer};

use super::{PropError, PropFormula};
use crate::boolalg::BoolAlg;
use crate::twist::{twist_domain, TwistVal};

/// Largest number of valuations a decision procedure will enumerate.
pub const VALUATION_BUDGET: u64 = 10_000_000;

/// The three truth values of MPT0. `Half` and `One` are designated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tv3 {
    Zero,
    Half,
    One,
}

impl Tv3 {
    pub const ALL: [Tv3; 3] = [Tv3::One, Tv3::Half, Tv3::Zero];

    pub fn and(self, other: Tv3) -> Tv3 {
        self.min(other)
    }

    pub fn or(self, other: Tv3) -> Tv3 {
        self.max(other)
    }

    pub fn imp(self, other: Tv3) -> Tv3 {
        match self {
            Tv3::Zero => Tv3::One,
            _ => other,
        }
    }

    /// `~`
    pub fn snot(self) -> Tv3 {
        match self {
            Tv3::Zero => Tv3::One,
            _ => Tv3::Zero,
        }
    }

    /// `!`
    pub fn neg(self) -> Tv3 {
        match self {
            Tv3::One => Tv3::Zero,
            Tv3::Half => Tv3::Half,
            Tv3::Zero => Tv3::One,
        }
    }

    /// `O`
    pub fn circ(self) -> Tv3 {
        match self {
            Tv3::Half => Tv3::Zero,
            _ => Tv3::One,
        }
    }

    /// The PS3 implication `=>`.
    pub fn simp(self, other: Tv3) -> Tv3 {
        match (self, other) {
            (Tv3::Zero, _) => Tv3::One,
            (_, Tv3::Zero) => Tv3::Zero,
            _ => Tv3::One,
        }
    }

    pub fn is_designated(self) -> bool {
        self != Tv3::Zero
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Tv3::Zero => "0",
            Tv3::Half => "1/2",
            Tv3::One => "1",
        }
    }

    /// The corresponding element of the twist structure over `2`.
    pub fn to_twist(self) -> TwistVal {
        let two = BoolAlg::two();
        match self {
            Tv3::Zero => TwistVal::zero(two),
            Tv3::Half => TwistVal::half(two),
            Tv3::One => TwistVal::one(two),
        }
    }
}

impl fmt::Display for Tv3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// Which finite matrix to evaluate in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixSpec {
    Mpt0,
    /// The twist matrix over `2^n` with designated set `{(1, a)}`.
    Twist(BoolAlg),
}

impl fmt::Display for MatrixSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatrixSpec::Mpt0 => f.write_str("MPT0"),
            MatrixSpec::Twist(alg) => write!(f, "twist(2^{})", alg.atoms()),
        }
    }
}

impl MatrixSpec {
    pub fn values(&self) -> Vec<MatrixValue> {
        match self {
            MatrixSpec::Mpt0 => Tv3::ALL.iter().map(|&v| MatrixValue::Three(v)).collect(),
            MatrixSpec::Twist(alg) => twist_domain(*alg).into_iter().map(MatrixValue::Twist).collect(),
        }
    }

    fn owns(&self, v: &MatrixValue) -> bool {
        match (self, v) {
            (MatrixSpec::Mpt0, MatrixValue::Three(_)) => true,
            (MatrixSpec::Twist(alg), MatrixValue::Twist(t)) => t.algebra() == *alg,
            _ => false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MatrixValue {
    Three(Tv3),
    Twist(TwistVal),
}

impl MatrixValue {
    pub fn is_designated(&self) -> bool {
        match self {
            MatrixValue::Three(v) => v.is_designated(),
            MatrixValue::Twist(t) => t.is_designated(),
        }
    }
}

impl fmt::Display for MatrixValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatrixValue::Three(v) => write!(f, "{v}"),
            MatrixValue::Twist(t) => write!(f, "{t}"),
        }
    }
}

impl Serialize for MatrixValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

pub type Valuation = BTreeMap<String, MatrixValue>;

/// Outcome of a tautology or consequence check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub holds: bool,
    pub countervaluation: Option<Valuation>,
}

pub fn eval(formula: &PropFormula, valuation: &Valuation, matrix: MatrixSpec) -> Result<MatrixValue, PropError> {
    for v in valuation.values() {
        if !matrix.owns(v) {
            return Err(PropError::ForeignValue { value: v.to_string(), matrix: matrix.to_string() });
        }
    }
    eval_owned(formula, valuation)
}

fn eval_owned(formula: &PropFormula, valuation: &Valuation) -> Result<MatrixValue, PropError> {
    use MatrixValue::{Three, Twist};
    let same = "operands come from one matrix";
    Ok(match formula {
        PropFormula::Var(name) => *valuation.get(name).ok_or_else(|| PropError::Unbound(name.clone()))?,
        PropFormula::SNot(a) => match eval_owned(a, valuation)? {
            Three(x) => Three(x.snot()),
            Twist(x) => Twist(x.snot()),
        },
        PropFormula::PNeg(a) => match eval_owned(a, valuation)? {
            Three(x) => Three(x.neg()),
            Twist(x) => Twist(x.neg()),
        },
        PropFormula::And(a, b) | PropFormula::Or(a, b) | PropFormula::Imp(a, b) => {
            match (eval_owned(a, valuation)?, eval_owned(b, valuation)?) {
                (Three(x), Three(y)) => Three(match formula {
                    PropFormula::And(..) => x.and(y),
                    PropFormula::Or(..) => x.or(y),
                    _ => x.imp(y),
                }),
                (Twist(x), Twist(y)) => Twist(
                    match formula {
                        PropFormula::And(..) => x.and(y),
                        PropFormula::Or(..) => x.or(y),
                        _ => x.imp(y),
                    }
                    .expect(same),
                ),
                _ => unreachable!("{same}"),
            }
        }
    })
}

pub fn is_tautology(formula: &PropFormula, matrix: MatrixSpec) -> Result<Verdict, PropError> {
    matrix_consequence(&[], formula, matrix)
}

/// Whether every valuation designating all `premises` designates
/// `conclusion`. Variables are enumerated in name order, the last one fastest.
pub fn matrix_consequence(
    premises: &[PropFormula],
    conclusion: &PropFormula,
    matrix: MatrixSpec,
) -> Result<Verdict, PropError> {
    let mut vars = conclusion.vars();
    for p in premises {
        vars.extend(p.vars());
    }
    let vars: Vec<String> = vars.into_iter().collect();
    let values = matrix.values();
    let needed = BigUint::from(values.len()).pow(vars.len() as u32);
    if needed > BigUint::from(VALUATION_BUDGET) {
        return Err(PropError::Budget { needed: needed.to_string(), budget: VALUATION_BUDGET });
    }
    let mut digits = vec![0usize; vars.len()];
    loop {
        let valuation: Valuation = vars.iter().zip(&digits).map(|(v, &d)| (v.clone(), values[d])).collect();
        let mut premises_hold = true;
        for p in premises {
            if !eval_owned(p, &valuation)?.is_designated() {
                premises_hold = false;
                break;
            }
        }
        if premises_hold && !eval_owned(conclusion, &valuation)?.is_designated() {
            return Ok(Verdict { holds: false, countervaluation: Some(valuation) });
        }
        let mut i = digits.len();
        loop {
            if i == 0 {
                return Ok(Verdict { holds: true, countervaluation: None });
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < values.len() {
                break;
            }
            digits[i] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::proplogic::parse;

    fn three(pairs: &[(&str, Tv3)]) -> Valuation {
        pairs.iter().map(|(k, v)| (k.to_string(), MatrixValue::Three(*v))).collect()
    }

    #[test]
    fn literal_tables() {
        use Tv3::*;
        assert_eq!([One, Half, Zero].map(|a| One.imp(a)), [One, Half, Zero]);
        assert_eq!([One, Half, Zero].map(|a| Half.imp(a)), [One, Half, Zero]);
        assert_eq!([One, Half, Zero].map(|a| Zero.imp(a)), [One, One, One]);
        assert_eq!([One, Half, Zero].map(Tv3::snot), [Zero, Zero, One]);
        assert_eq!([One, Half, Zero].map(Tv3::neg), [Zero, Half, One]);
        assert_eq!([One, Half, Zero].map(Tv3::circ), [One, Zero, One]);
        assert_eq!([One, Half, Zero].map(|a| Half.simp(a)), [One, One, Zero]);
        assert_eq!([One, Half, Zero].map(|a| Zero.simp(a)), [One, One, One]);
    }

    #[test]
    fn evaluation_examples() {
        let v = three(&[("p", Tv3::Half)]);
        let m = MatrixSpec::Mpt0;
        assert_eq!(eval(&parse("p & !p").unwrap(), &v, m).unwrap(), MatrixValue::Three(Tv3::Half));
        assert_eq!(eval(&parse("~(p & !p)").unwrap(), &v, m).unwrap(), MatrixValue::Three(Tv3::Zero));
        assert_eq!(eval(&parse("p & q").unwrap(), &v, m), Err(PropError::Unbound("q".into())));
        assert!(eval(&parse("p").unwrap(), &v, MatrixSpec::Twist(BoolAlg::two())).is_err());
    }

    #[test]
    fn tautologies_and_consequence() {
        let m = MatrixSpec::Mpt0;
        assert!(is_tautology(&parse("(p & ~p) -> q").unwrap(), m).unwrap().holds);
        assert!(is_tautology(&parse("p | !p").unwrap(), m).unwrap().holds);
        let v = is_tautology(&parse("(p & !p) -> q").unwrap(), m).unwrap();
        assert!(!v.holds);
        assert_eq!(v.countervaluation, Some(three(&[("p", Tv3::Half), ("q", Tv3::Zero)])));

        let p = parse("p").unwrap();
        let np = parse("!p").unwrap();
        let q = parse("q").unwrap();
        assert!(!matrix_consequence(&[p.clone(), np.clone()], &q, m).unwrap().holds);
        assert!(matrix_consequence(&[parse("O p").unwrap(), p, np], &q, m).unwrap().holds);
    }

    #[test]
    fn budget_is_enforced() {
        let many = (0..15).map(|i| format!("p{i}")).collect::<Vec<_>>().join(" | ");
        let f = parse(&many).unwrap();
        assert!(matches!(is_tautology(&f, MatrixSpec::Mpt0), Err(PropError::Budget { .. })));
    }
}
