//! Proof checking for the Hilbert calculus LPT0: sixteen axiom schemas and
//! modus ponens.
//!
//! A script has one step per line:
//!
//! ```text
//! 1. p -> ((p -> p) -> p) ; Ax1
//! 2. (p -> ((p -> p) -> p)) -> ((p -> (p -> p)) -> (p -> p)) ; Ax2
//! 3. (p -> (p -> p)) -> (p -> p) ; MP 1 2
//! ```
//!
//! `MP i j` takes `phi` from line `i` and `phi -> psi` from line `j`.

use std::collections::HashMap;
use std::sync::OnceLock;

use serde::Serialize;
use thiserror::Error;

use super::{parse, PropFormula};
use crate::folast::ParseError;

/// Schema names in the order they are tried by [`match_axiom`].
pub const SCHEMA_NAMES: [&str; 16] = [
    "Ax1", "Ax2", "Ax3", "Ax4", "Ax5", "Ax6", "Ax7", "Ax8", "Ax9", "TND", "exp", "TNDn", "dneg", "negor", "negand",
    "negimp",
];

const SCHEMA_TEXT: [&str; 16] = [
    "a -> (b -> a)",
    "(a -> (b -> c)) -> ((a -> b) -> (a -> c))",
    "a -> (b -> (a & b))",
    "(a & b) -> a",
    "(a & b) -> b",
    "a -> (a | b)",
    "b -> (a | b)",
    "(a -> c) -> ((b -> c) -> ((a | b) -> c))",
    "a | (a -> b)",
    "a | ~a",
    "a -> (~a -> b)",
    "a | !a",
    "!!a <-> a",
    "!(a | b) <-> (!a & !b)",
    "!(a & b) <-> (!a | !b)",
    "!(a -> b) <-> (a & !b)",
];

/// The schemas as formulas whose variables `a`, `b`, `c` are metavariables.
pub fn schemas() -> &'static [(&'static str, PropFormula)] {
    static CELL: OnceLock<Vec<(&'static str, PropFormula)>> = OnceLock::new();
    CELL.get_or_init(|| {
        SCHEMA_NAMES
            .iter()
            .zip(SCHEMA_TEXT)
            .map(|(name, text)| (*name, parse(text).expect("schema text parses")))
            .collect()
    })
}

pub fn schema(name: &str) -> Option<&'static PropFormula> {
    schemas().iter().find(|(n, _)| *n == name).map(|(_, f)| f)
}

/// Replaces each metavariable of a schema.
pub fn instantiate(schema: &PropFormula, subst: &HashMap<String, PropFormula>) -> PropFormula {
    match schema {
        PropFormula::Var(v) => subst.get(v).cloned().unwrap_or_else(|| schema.clone()),
        PropFormula::And(a, b) => PropFormula::and(instantiate(a, subst), instantiate(b, subst)),
        PropFormula::Or(a, b) => PropFormula::or(instantiate(a, subst), instantiate(b, subst)),
        PropFormula::Imp(a, b) => PropFormula::imp(instantiate(a, subst), instantiate(b, subst)),
        PropFormula::SNot(a) => PropFormula::snot(instantiate(a, subst)),
        PropFormula::PNeg(a) => PropFormula::pneg(instantiate(a, subst)),
    }
}

fn matches<'f>(pattern: &PropFormula, formula: &'f PropFormula, binding: &mut HashMap<String, &'f PropFormula>) -> bool {
    use PropFormula::*;
    match (pattern, formula) {
        (Var(m), _) => match binding.get(m) {
            Some(bound) => *bound == formula,
            None => {
                binding.insert(m.clone(), formula);
                true
            }
        },
        (And(a, b), And(x, y)) | (Or(a, b), Or(x, y)) | (Imp(a, b), Imp(x, y)) => {
            matches(a, x, binding) && matches(b, y, binding)
        }
        (SNot(a), SNot(x)) | (PNeg(a), PNeg(x)) => matches(a, x, binding),
        _ => false,
    }
}

/// Whether `formula` is an instance of the named schema.
pub fn is_instance(name: &str, formula: &PropFormula) -> bool {
    schema(name).is_some_and(|s| matches(s, formula, &mut HashMap::new()))
}

/// The first schema, in listing order, that `formula` instantiates.
pub fn match_axiom(formula: &PropFormula) -> Option<&'static str> {
    schemas()
        .iter()
        .find(|(_, s)| matches(s, formula, &mut HashMap::new()))
        .map(|(name, _)| *name)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Justification {
    Axiom(String),
    /// Minor premise line, major premise line (1-based).
    ModusPonens(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofLine {
    pub index: usize,
    pub formula: PropFormula,
    pub justification: Justification,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ProofScript {
    pub lines: Vec<ProofLine>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProofError {
    #[error("script line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("script line {line}: {source}")]
    Formula { line: usize, source: ParseError },
    #[error("step {step}: MP cites line {cited}, which is not an earlier step")]
    BadIndex { step: usize, cited: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProofVerdict {
    pub ok: bool,
    pub first_bad_line: Option<usize>,
    pub reason: Option<String>,
}

impl ProofScript {
    pub fn parse(text: &str) -> Result<ProofScript, ProofError> {
        let mut lines = Vec::new();
        for (n, raw) in text.lines().enumerate() {
            let line = n + 1;
            let raw = raw.trim();
            if raw.is_empty() || raw.starts_with("//") {
                continue;
            }
            let syntax = |message: String| ProofError::Syntax { line, message };
            let (head, rest) = raw.split_once('.').ok_or_else(|| syntax("expected `<index>. <formula> ; <rule>`".into()))?;
            let index: usize = head.trim().parse().map_err(|_| syntax(format!("bad step index `{}`", head.trim())))?;
            if index != lines.len() + 1 {
                return Err(syntax(format!("expected step {}, found {index}", lines.len() + 1)));
            }
            let (formula_text, rule) = rest.rsplit_once(';').ok_or_else(|| syntax("missing `; <rule>`".into()))?;
            let formula = parse(formula_text).map_err(|source| ProofError::Formula { line, source })?;
            let words: Vec<&str> = rule.split_whitespace().collect();
            let justification = match words.as_slice() {
                ["MP", i, j] => {
                    let num = |s: &str| s.parse::<usize>().map_err(|_| syntax(format!("bad line number `{s}`")));
                    Justification::ModusPonens(num(i)?, num(j)?)
                }
                [name] if schema(name).is_some() => Justification::Axiom(name.to_string()),
                _ => return Err(syntax(format!("unknown rule `{}`", rule.trim()))),
            };
            lines.push(ProofLine { index, formula, justification });
        }
        Ok(ProofScript { lines })
    }

    pub fn conclusion(&self) -> Option<&PropFormula> {
        self.lines.last().map(|l| &l.formula)
    }
}

/// Checks every step. Citations of lines that do not precede the step are
/// errors; everything else that fails is reported as the first bad line.
pub fn check_proof(script: &ProofScript) -> Result<ProofVerdict, ProofError> {
    for (pos, line) in script.lines.iter().enumerate() {
        if let Justification::ModusPonens(i, j) = line.justification {
            for cited in [i, j] {
                if cited == 0 || cited > pos {
                    return Err(ProofError::BadIndex { step: line.index, cited });
                }
            }
        }
    }
    for line in &script.lines {
        let failure = match &line.justification {
            Justification::Axiom(name) => {
                (!is_instance(name, &line.formula)).then(|| format!("not an instance of {name}"))
            }
            Justification::ModusPonens(i, j) => {
                let minor = &script.lines[i - 1].formula;
                let major = &script.lines[j - 1].formula;
                match major {
                    PropFormula::Imp(a, b) if **a == *minor && **b == line.formula => None,
                    _ => Some(format!("line {j} is not `{minor} -> {}`", line.formula)),
                }
            }
        };
        if let Some(reason) = failure {
            return Ok(ProofVerdict { ok: false, first_bad_line: Some(line.index), reason: Some(reason) });
        }
    }
    Ok(ProofVerdict { ok: true, first_bad_line: None, reason: None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolalg::BoolAlg;
    use crate::proplogic::{is_tautology, MatrixSpec};

    const IDENTITY: &str = "\
1. (p -> ((p -> p) -> p)) -> ((p -> (p -> p)) -> (p -> p)) ; Ax2
2. p -> ((p -> p) -> p) ; Ax1
3. (p -> (p -> p)) -> (p -> p) ; MP 2 1
4. p -> (p -> p) ; Ax1
5. p -> p ; MP 4 3
";

    #[test]
    fn identity_proof_checks() {
        let script = ProofScript::parse(IDENTITY).unwrap();
        assert_eq!(script.lines.len(), 5);
        let v = check_proof(&script).unwrap();
        assert!(v.ok, "{v:?}");
        assert_eq!(script.conclusion(), Some(&parse("p -> p").unwrap()));
    }

    #[test]
    fn bad_steps_are_located() {
        let swapped = IDENTITY.replace("MP 4 3", "MP 3 4");
        let v = check_proof(&ProofScript::parse(&swapped).unwrap()).unwrap();
        assert_eq!(v.first_bad_line, Some(5));
        let wrong_axiom = IDENTITY.replace("p -> ((p -> p) -> p) ; Ax1", "p -> ((p -> p) -> p) ; Ax4");
        let v = check_proof(&ProofScript::parse(&wrong_axiom).unwrap()).unwrap();
        assert_eq!(v.first_bad_line, Some(2));
        let forward = IDENTITY.replace("MP 2 1", "MP 2 4");
        assert_eq!(check_proof(&ProofScript::parse(&forward).unwrap()), Err(ProofError::BadIndex { step: 3, cited: 4 }));
        assert!(ProofScript::parse("1. p ; Ax99").is_err());
        assert!(ProofScript::parse("2. p -> (q -> p) ; Ax1").is_err());
        assert!(matches!(ProofScript::parse("1. p -> ; Ax1"), Err(ProofError::Formula { line: 1, .. })));
    }

    #[test]
    fn axiom_matching() {
        assert_eq!(match_axiom(&parse("p -> (q -> p)").unwrap()), Some("Ax1"));
        assert_eq!(match_axiom(&parse("p | ~p").unwrap()), Some("TND"));
        assert_eq!(match_axiom(&parse("p & q").unwrap()), None);
        // both Ax6 and Ax7 fit; listing order decides
        assert_eq!(match_axiom(&parse("p -> (p | p)").unwrap()), Some("Ax6"));
        assert_eq!(match_axiom(&parse("!(p -> q) <-> (p & !q)").unwrap()), Some("negimp"));
        assert_eq!(match_axiom(&parse("((p & q) -> r) | ~((p & q) -> r)").unwrap()), Some("TND"));
    }

    #[test]
    fn schemas_are_sound() {
        let vars = ["p", "q"];
        let matrices = [
            MatrixSpec::Mpt0,
            MatrixSpec::Twist(BoolAlg::powerset(1).unwrap()),
            MatrixSpec::Twist(BoolAlg::powerset(2).unwrap()),
        ];
        for (name, s) in schemas() {
            for a in vars {
                for b in vars {
                    for c in vars {
                        let subst: HashMap<String, PropFormula> = [("a", a), ("b", b), ("c", c)]
                            .into_iter()
                            .map(|(m, v)| (m.to_string(), PropFormula::var(v)))
                            .collect();
                        let inst = instantiate(s, &subst);
                        assert!(is_instance(name, &inst));
                        for m in matrices {
                            assert!(is_tautology(&inst, m).unwrap().holds, "{name} as {inst} in {m}");
                        }
                    }
                }
            }
        }
    }

    /// A two-valued valuation that reads `!` by the shape of its argument.
    /// It satisfies every schema and respects modus ponens, yet falsifies
    /// `!~p -> p` when `p` is false, so that formula has no LPT0 proof from
    /// the sixteen schemas alone.
    fn bivaluation(f: &PropFormula, atoms: &HashMap<String, bool>) -> bool {
        use PropFormula::*;
        match f {
            Var(v) => atoms[v],
            And(a, b) => bivaluation(a, atoms) && bivaluation(b, atoms),
            Or(a, b) => bivaluation(a, atoms) || bivaluation(b, atoms),
            Imp(a, b) => !bivaluation(a, atoms) || bivaluation(b, atoms),
            SNot(a) => !bivaluation(a, atoms),
            PNeg(inner) => match inner.as_ref() {
                Var(_) | SNot(_) => true,
                PNeg(a) => bivaluation(a, atoms),
                Or(a, b) => bivaluation(&PropFormula::pneg((**a).clone()), atoms)
                    && bivaluation(&PropFormula::pneg((**b).clone()), atoms),
                And(a, b) => bivaluation(&PropFormula::pneg((**a).clone()), atoms)
                    || bivaluation(&PropFormula::pneg((**b).clone()), atoms),
                Imp(a, b) => bivaluation(a, atoms) && bivaluation(&PropFormula::pneg((**b).clone()), atoms),
            },
        }
    }

    fn small_formulas() -> Vec<PropFormula> {
        let mut layer: Vec<PropFormula> = vec![PropFormula::var("p"), PropFormula::var("q")];
        let mut all = layer.clone();
        for _ in 0..2 {
            let mut next = Vec::new();
            for a in &layer {
                next.push(PropFormula::snot(a.clone()));
                next.push(PropFormula::pneg(a.clone()));
                for b in &all {
                    next.push(PropFormula::and(a.clone(), b.clone()));
                    next.push(PropFormula::or(a.clone(), b.clone()));
                    next.push(PropFormula::imp(a.clone(), b.clone()));
                }
            }
            all.extend(next.iter().cloned());
            layer = next;
        }
        all
    }

    #[test]
    fn negated_strong_negation_axiom_is_independent() {
        let target = parse("!~p -> p").unwrap();
        assert!(is_tautology(&target, MatrixSpec::Mpt0).unwrap().holds);
        let pool: Vec<PropFormula> = small_formulas().into_iter().filter(|f| f.depth() <= 1).collect();
        let assignments: Vec<HashMap<String, bool>> = [(false, false), (false, true), (true, false), (true, true)]
            .iter()
            .map(|&(p, q)| HashMap::from([("p".to_string(), p), ("q".to_string(), q)]))
            .collect();
        for (name, s) in schemas() {
            for a in &pool {
                for b in &pool {
                    for c in [&pool[0], &pool[1]] {
                        let subst: HashMap<String, PropFormula> =
                            [("a", a), ("b", b), ("c", c)].into_iter().map(|(m, f)| (m.to_string(), f.clone())).collect();
                        let inst = instantiate(s, &subst);
                        for atoms in &assignments {
                            assert!(bivaluation(&inst, atoms), "{name} instance {inst} fails");
                        }
                    }
                }
            }
        }
        let falsifying = HashMap::from([("p".to_string(), false)]);
        assert!(!bivaluation(&target, &falsifying));
    }
}
