//! The first-order language of set theory with `in` and `=`, paraconsistent
//! and strong negation, and quantifiers.
//!
//! Derived forms (`O`, `<->`, bounded quantifiers) are expanded while
//! parsing, so an [`FOFormula`] only ever contains primitive nodes and
//! [`render`] followed by [`parse`] is the identity.

mod lexer;
pub(crate) mod syntax;

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::universe::ElemId;
use syntax::{parse_surface, Quant, Surface};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{col}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error("formula contains `!`, so it is not pure")]
    NotPure,
    #[error("substituting `{term}` for `{var}` would be captured by the quantifier on `{binder}`")]
    Capture { var: String, term: String, binder: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(String),
    Const(ElemId),
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => f.write_str(v),
            Term::Const(id) => write!(f, "#{}", id.0),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FOFormula {
    Mem(Term, Term),
    Eq(Term, Term),
    And(Box<FOFormula>, Box<FOFormula>),
    Or(Box<FOFormula>, Box<FOFormula>),
    /// `->`
    Imp(Box<FOFormula>, Box<FOFormula>),
    /// `=>`
    SImp(Box<FOFormula>, Box<FOFormula>),
    /// `~`
    Snot(Box<FOFormula>),
    /// `!`
    Pneg(Box<FOFormula>),
    Forall(String, Box<FOFormula>),
    Exists(String, Box<FOFormula>),
}

impl FOFormula {
    pub fn mem(a: Term, b: Term) -> Self {
        FOFormula::Mem(a, b)
    }

    pub fn eq(a: Term, b: Term) -> Self {
        FOFormula::Eq(a, b)
    }

    pub fn and(a: FOFormula, b: FOFormula) -> Self {
        FOFormula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: FOFormula, b: FOFormula) -> Self {
        FOFormula::Or(Box::new(a), Box::new(b))
    }

    pub fn imp(a: FOFormula, b: FOFormula) -> Self {
        FOFormula::Imp(Box::new(a), Box::new(b))
    }

    pub fn simp(a: FOFormula, b: FOFormula) -> Self {
        FOFormula::SImp(Box::new(a), Box::new(b))
    }

    pub fn snot(a: FOFormula) -> Self {
        FOFormula::Snot(Box::new(a))
    }

    pub fn pneg(a: FOFormula) -> Self {
        FOFormula::Pneg(Box::new(a))
    }

    /// `O a`, i.e. `~(a & !a)`.
    pub fn circ(a: FOFormula) -> Self {
        FOFormula::snot(FOFormula::and(a.clone(), FOFormula::pneg(a)))
    }

    /// `(a -> b) & (b -> a)`.
    pub fn iff(a: FOFormula, b: FOFormula) -> Self {
        FOFormula::and(FOFormula::imp(a.clone(), b.clone()), FOFormula::imp(b, a))
    }

    pub fn forall(var: &str, body: FOFormula) -> Self {
        FOFormula::Forall(var.to_string(), Box::new(body))
    }

    pub fn exists(var: &str, body: FOFormula) -> Self {
        FOFormula::Exists(var.to_string(), Box::new(body))
    }

    /// `forall x (x in bound -> body)`.
    pub fn forall_in(var: &str, bound: Term, body: FOFormula) -> Self {
        FOFormula::forall(var, FOFormula::imp(FOFormula::Mem(Term::Var(var.into()), bound), body))
    }

    /// `exists x (x in bound & body)`.
    pub fn exists_in(var: &str, bound: Term, body: FOFormula) -> Self {
        FOFormula::exists(var, FOFormula::and(FOFormula::Mem(Term::Var(var.into()), bound), body))
    }
}

impl fmt::Display for FOFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(self))
    }
}

impl std::str::FromStr for FOFormula {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}

pub fn parse(src: &str) -> Result<FOFormula, ParseError> {
    lower(parse_surface(src)?)
}

fn lower(s: Surface) -> Result<FOFormula, ParseError> {
    let bin = |a: Box<Surface>, b: Box<Surface>| -> Result<(FOFormula, FOFormula), ParseError> {
        Ok((lower(*a)?, lower(*b)?))
    };
    Ok(match s {
        Surface::Atom { name, line, col } => {
            return Err(ParseError {
                line,
                col,
                message: format!("`{name}` is a term, not a formula; expected `in` or `=` after it"),
            })
        }
        Surface::Mem(a, b) => FOFormula::Mem(a, b),
        Surface::Eq(a, b) => FOFormula::Eq(a, b),
        Surface::And(a, b) => {
            let (a, b) = bin(a, b)?;
            FOFormula::and(a, b)
        }
        Surface::Or(a, b) => {
            let (a, b) = bin(a, b)?;
            FOFormula::or(a, b)
        }
        Surface::Imp(a, b) => {
            let (a, b) = bin(a, b)?;
            FOFormula::imp(a, b)
        }
        Surface::SImp(a, b) => {
            let (a, b) = bin(a, b)?;
            FOFormula::simp(a, b)
        }
        Surface::Iff(a, b) => {
            let (a, b) = bin(a, b)?;
            FOFormula::iff(a, b)
        }
        Surface::Snot(a) => FOFormula::snot(lower(*a)?),
        Surface::Pneg(a) => FOFormula::pneg(lower(*a)?),
        Surface::Circ(a) => FOFormula::circ(lower(*a)?),
        Surface::Quantified { quant, var, bound, body, line, col } => {
            let body = lower(*body)?;
            match bound {
                Some(Term::Var(b)) if b == var => {
                    return Err(ParseError {
                        line,
                        col,
                        message: format!("bound of the quantifier on `{var}` mentions `{var}` itself"),
                    })
                }
                Some(t) => match quant {
                    Quant::Forall => FOFormula::forall_in(&var, t, body),
                    Quant::Exists => FOFormula::exists_in(&var, t, body),
                },
                None => match quant {
                    Quant::Forall => FOFormula::forall(&var, body),
                    Quant::Exists => FOFormula::exists(&var, body),
                },
            }
        }
    })
}

/// Prints a formula so that [`parse`] gives it back unchanged. Binary and
/// quantified subformulas are parenthesized.
pub fn render(phi: &FOFormula) -> String {
    let mut out = String::new();
    write_formula(phi, &mut out);
    out
}

fn write_formula(phi: &FOFormula, out: &mut String) {
    use FOFormula::*;
    match phi {
        Mem(a, b) => out.push_str(&format!("{a} in {b}")),
        Eq(a, b) => out.push_str(&format!("{a} = {b}")),
        And(a, b) => write_binary(a, " & ", b, out),
        Or(a, b) => write_binary(a, " | ", b, out),
        Imp(a, b) => write_binary(a, " -> ", b, out),
        SImp(a, b) => write_binary(a, " => ", b, out),
        Snot(a) => {
            out.push('~');
            write_operand(a, out);
        }
        Pneg(a) => {
            out.push('!');
            write_operand(a, out);
        }
        Forall(x, body) => {
            out.push_str(&format!("forall {x} . "));
            write_formula(body, out);
        }
        Exists(x, body) => {
            out.push_str(&format!("exists {x} . "));
            write_formula(body, out);
        }
    }
}

fn write_binary(a: &FOFormula, op: &str, b: &FOFormula, out: &mut String) {
    write_operand(a, out);
    out.push_str(op);
    write_operand(b, out);
}

fn write_operand(phi: &FOFormula, out: &mut String) {
    let atomic = matches!(phi, FOFormula::Mem(..) | FOFormula::Eq(..) | FOFormula::Snot(_) | FOFormula::Pneg(_));
    if atomic {
        write_formula(phi, out);
    } else {
        out.push('(');
        write_formula(phi, out);
        out.push(')');
    }
}

/// No `!` anywhere.
pub fn is_pure(phi: &FOFormula) -> bool {
    use FOFormula::*;
    match phi {
        Mem(..) | Eq(..) => true,
        And(a, b) | Or(a, b) | Imp(a, b) | SImp(a, b) => is_pure(a) && is_pure(b),
        Snot(a) => is_pure(a),
        Pneg(_) => false,
        Forall(_, a) | Exists(_, a) => is_pure(a),
    }
}

/// Every quantifier has the shape `forall x (x in t -> ...)` or
/// `exists x (x in t & ...)` with `t` not the bound variable. Decided on
/// syntax alone.
pub fn is_restricted(phi: &FOFormula) -> Result<bool, FormulaError> {
    if !is_pure(phi) {
        return Err(FormulaError::NotPure);
    }
    Ok(restricted(phi))
}

fn restricted(phi: &FOFormula) -> bool {
    use FOFormula::*;
    let guarded = |x: &String, guard: &FOFormula| match guard {
        Mem(Term::Var(v), bound) => v == x && bound != &Term::Var(x.clone()),
        _ => false,
    };
    match phi {
        Mem(..) | Eq(..) => true,
        And(a, b) | Or(a, b) | Imp(a, b) | SImp(a, b) => restricted(a) && restricted(b),
        Snot(a) | Pneg(a) => restricted(a),
        Forall(x, body) => match body.as_ref() {
            Imp(g, rest) => guarded(x, g) && restricted(rest),
            _ => false,
        },
        Exists(x, body) => match body.as_ref() {
            And(g, rest) => guarded(x, g) && restricted(rest),
            _ => false,
        },
    }
}

pub fn free_vars(phi: &FOFormula) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    collect_free(phi, &mut Vec::new(), &mut out);
    out
}

fn collect_free(phi: &FOFormula, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
    use FOFormula::*;
    let mut term = |t: &Term, bound: &Vec<String>| {
        if let Term::Var(v) = t {
            if !bound.contains(v) {
                out.insert(v.clone());
            }
        }
    };
    match phi {
        Mem(a, b) | Eq(a, b) => {
            term(a, bound);
            term(b, bound);
        }
        And(a, b) | Or(a, b) | Imp(a, b) | SImp(a, b) => {
            collect_free(a, bound, out);
            collect_free(b, bound, out);
        }
        Snot(a) | Pneg(a) => collect_free(a, bound, out),
        Forall(x, a) | Exists(x, a) => {
            bound.push(x.clone());
            collect_free(a, bound, out);
            bound.pop();
        }
    }
}

/// Element constants occurring in the formula.
pub fn constants(phi: &FOFormula) -> BTreeSet<ElemId> {
    use FOFormula::*;
    let mut out = BTreeSet::new();
    let mut stack = vec![phi];
    while let Some(f) = stack.pop() {
        match f {
            Mem(a, b) | Eq(a, b) => {
                for t in [a, b] {
                    if let Term::Const(id) = t {
                        out.insert(*id);
                    }
                }
            }
            And(a, b) | Or(a, b) | Imp(a, b) | SImp(a, b) => {
                stack.push(a);
                stack.push(b);
            }
            Snot(a) | Pneg(a) | Forall(_, a) | Exists(_, a) => stack.push(a),
        }
    }
    out
}

/// `phi[var/t]`, replacing free occurrences only.
pub fn substitute(phi: &FOFormula, var: &str, t: &Term) -> Result<FOFormula, FormulaError> {
    use FOFormula::*;
    let swap = |s: &Term| if matches!(s, Term::Var(v) if v == var) { t.clone() } else { s.clone() };
    Ok(match phi {
        Mem(a, b) => Mem(swap(a), swap(b)),
        Eq(a, b) => Eq(swap(a), swap(b)),
        And(a, b) => FOFormula::and(substitute(a, var, t)?, substitute(b, var, t)?),
        Or(a, b) => FOFormula::or(substitute(a, var, t)?, substitute(b, var, t)?),
        Imp(a, b) => FOFormula::imp(substitute(a, var, t)?, substitute(b, var, t)?),
        SImp(a, b) => FOFormula::simp(substitute(a, var, t)?, substitute(b, var, t)?),
        Snot(a) => FOFormula::snot(substitute(a, var, t)?),
        Pneg(a) => FOFormula::pneg(substitute(a, var, t)?),
        Forall(x, _) | Exists(x, _) if x == var => phi.clone(),
        Forall(x, a) | Exists(x, a) => {
            if let Term::Var(y) = t {
                if y == x && free_vars(a).contains(var) {
                    return Err(FormulaError::Capture {
                        var: var.to_string(),
                        term: y.clone(),
                        binder: x.clone(),
                    });
                }
            }
            let body = Box::new(substitute(a, var, t)?);
            match phi {
                Forall(..) => Forall(x.clone(), body),
                _ => Exists(x.clone(), body),
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v(s: &str) -> Term {
        Term::Var(s.into())
    }

    fn c(n: u32) -> Term {
        Term::Const(ElemId(n))
    }

    #[test]
    fn parses_basic_forms() {
        assert_eq!(parse("forall x . x = x").unwrap(), FOFormula::forall("x", FOFormula::eq(v("x"), v("x"))));
        assert_eq!(parse("!(#3 in #5)").unwrap(), FOFormula::pneg(FOFormula::mem(c(3), c(5))));
        assert_eq!(
            parse("exists x in #2 . !( #1 in x )").unwrap(),
            FOFormula::exists(
                "x",
                FOFormula::and(FOFormula::mem(v("x"), c(2)), FOFormula::pneg(FOFormula::mem(c(1), v("x"))))
            )
        );
        assert_eq!(parse("empty in x").unwrap(), FOFormula::mem(c(0), v("x")));
    }

    #[test]
    fn derived_forms_expand() {
        let a = FOFormula::mem(v("x"), v("y"));
        assert_eq!(parse("O x in y").unwrap(), FOFormula::circ(a.clone()));
        assert_eq!(
            parse("x in y <-> x = y").unwrap(),
            FOFormula::iff(a, FOFormula::eq(v("x"), v("y")))
        );
        assert!(parse("forall x in x . x = x").is_err());
        assert!(parse("p & q").is_err());
    }

    #[test]
    fn round_trips() {
        for src in ["forall x . x = x", "!(#3 in #5)", "exists x in #2 . !( #1 in x )", "~~!x in y => (forall z . z = z) | a = b"] {
            let phi = parse(src).unwrap();
            assert_eq!(parse(&render(&phi)).unwrap(), phi, "{src}");
        }
        assert_eq!(render(&parse("a in b & c in d & e = f").unwrap()), "(a in b & c in d) & e = f");
    }

    #[test]
    fn purity() {
        assert!(is_pure(&parse("forall x . x = x").unwrap()));
        assert!(!is_pure(&parse("!(w in x)").unwrap()));
        assert!(is_pure(&parse("~(w in x)").unwrap()));
    }

    #[test]
    fn restriction() {
        assert!(is_restricted(&parse("forall x in y . x = x").unwrap()).unwrap());
        assert!(!is_restricted(&parse("forall x . x = x").unwrap()).unwrap());
        assert!(is_restricted(&parse("x in y").unwrap()).unwrap());
        assert!(is_restricted(&parse("exists x in y . forall z in x . z = y").unwrap()).unwrap());
        assert_eq!(is_restricted(&parse("!(x in y)").unwrap()), Err(FormulaError::NotPure));
    }

    #[test]
    fn substitution_and_free_vars() {
        let phi = parse("x = x").unwrap();
        assert_eq!(substitute(&phi, "x", &c(1)).unwrap(), FOFormula::eq(c(1), c(1)));
        assert_eq!(free_vars(&parse("forall x . x in y").unwrap()), BTreeSet::from(["y".to_string()]));
        let closed = parse("forall x . x = x").unwrap();
        assert_eq!(substitute(&closed, "x", &c(1)).unwrap(), closed);
        let risky = parse("forall y . x in y").unwrap();
        assert!(matches!(substitute(&risky, "x", &v("y")), Err(FormulaError::Capture { .. })));
        assert_eq!(constants(&parse("#4 in x & #2 = #4").unwrap()), BTreeSet::from([ElemId(2), ElemId(4)]));
    }

    fn arb_term() -> impl Strategy<Value = Term> {
        prop_oneof![
            prop::sample::select(vec!["x", "y", "z"]).prop_map(|s| Term::Var(s.to_string())),
            (0u32..6).prop_map(|n| Term::Const(ElemId(n))),
        ]
    }

    fn arb_formula() -> impl Strategy<Value = FOFormula> {
        let leaf = prop_oneof![
            (arb_term(), arb_term()).prop_map(|(a, b)| FOFormula::Mem(a, b)),
            (arb_term(), arb_term()).prop_map(|(a, b)| FOFormula::Eq(a, b)),
        ];
        leaf.prop_recursive(4, 32, 2, |inner| {
            let var = prop::sample::select(vec!["x", "y", "z"]);
            prop_oneof![
                (inner.clone(), inner.clone()).prop_map(|(a, b)| FOFormula::and(a, b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| FOFormula::or(a, b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| FOFormula::imp(a, b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| FOFormula::simp(a, b)),
                inner.clone().prop_map(FOFormula::snot),
                inner.clone().prop_map(FOFormula::pneg),
                (var.clone(), inner.clone()).prop_map(|(x, a)| FOFormula::forall(x, a)),
                (var, inner).prop_map(|(x, a)| FOFormula::exists(x, a)),
            ]
        })
    }

    fn subformulas(phi: &FOFormula) -> Vec<&FOFormula> {
        use FOFormula::*;
        let mut out = vec![phi];
        match phi {
            And(a, b) | Or(a, b) | Imp(a, b) | SImp(a, b) => {
                out.extend(subformulas(a));
                out.extend(subformulas(b));
            }
            Snot(a) | Pneg(a) | Forall(_, a) | Exists(_, a) => out.extend(subformulas(a)),
            Mem(..) | Eq(..) => {}
        }
        out
    }

    proptest! {
        #[test]
        fn parse_inverts_render(phi in arb_formula()) {
            let text = render(&phi);
            prop_assert_eq!(parse(&text).unwrap(), phi.clone());
            prop_assert_eq!(render(&parse(&text).unwrap()), text);
        }

        #[test]
        fn purity_is_hereditary(phi in arb_formula()) {
            if is_pure(&phi) {
                for s in subformulas(&phi) {
                    prop_assert!(is_pure(s));
                }
            }
        }

        #[test]
        fn closing_substitution_removes_var(phi in arb_formula()) {
            let out = substitute(&phi, "x", &Term::Const(ElemId(9))).unwrap();
            prop_assert!(!free_vars(&out).contains("x"));
            let mut expected = free_vars(&phi);
            expected.remove("x");
            prop_assert_eq!(free_vars(&out), expected);
        }
    }
}
