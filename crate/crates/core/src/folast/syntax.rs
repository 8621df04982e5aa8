//! Concrete syntax shared by the propositional and first-order languages.
//!
//! The parser produces a surface tree that still contains derived forms and
//! bare identifiers; each language lowers it into its own AST.

use super::lexer::{tokenize, Spanned, Tok};
use super::{ParseError, Term};
use crate::universe::ElemId;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Quant {
    Forall,
    Exists,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Surface {
    /// A bare identifier in formula position.
    Atom { name: String, line: usize, col: usize },
    Mem(Term, Term),
    Eq(Term, Term),
    And(Box<Surface>, Box<Surface>),
    Or(Box<Surface>, Box<Surface>),
    Imp(Box<Surface>, Box<Surface>),
    SImp(Box<Surface>, Box<Surface>),
    Iff(Box<Surface>, Box<Surface>),
    Snot(Box<Surface>),
    Pneg(Box<Surface>),
    Circ(Box<Surface>),
    Quantified { quant: Quant, var: String, bound: Option<Term>, body: Box<Surface>, line: usize, col: usize },
}

pub(crate) fn parse_surface(src: &str) -> Result<Surface, ParseError> {
    let mut p = Parser { toks: tokenize(src)?, pos: 0 };
    let f = p.formula()?;
    p.expect(&Tok::Eof)?;
    Ok(f)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Spanned {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error_here(&self, message: String) -> ParseError {
        let t = self.peek();
        ParseError { line: t.line, col: t.col, message }
    }

    fn expect(&mut self, want: &Tok) -> Result<Spanned, ParseError> {
        if &self.peek().tok == want {
            Ok(self.bump())
        } else {
            Err(self.error_here(format!("expected {want}, found {}", self.peek().tok)))
        }
    }

    // implications are right-associative and share one level
    fn formula(&mut self) -> Result<Surface, ParseError> {
        let lhs = self.disjunction()?;
        let make: fn(Box<Surface>, Box<Surface>) -> Surface = match self.peek().tok {
            Tok::Arrow => Surface::Imp,
            Tok::DoubleArrow => Surface::SImp,
            Tok::Iff => Surface::Iff,
            _ => return Ok(lhs),
        };
        self.bump();
        let rhs = self.formula()?;
        Ok(make(Box::new(lhs), Box::new(rhs)))
    }

    fn disjunction(&mut self) -> Result<Surface, ParseError> {
        let mut acc = self.conjunction()?;
        while self.peek().tok == Tok::Or {
            self.bump();
            let rhs = self.conjunction()?;
            acc = Surface::Or(Box::new(acc), Box::new(rhs));
        }
        Ok(acc)
    }

    fn conjunction(&mut self) -> Result<Surface, ParseError> {
        let mut acc = self.prefixed()?;
        while self.peek().tok == Tok::And {
            self.bump();
            let rhs = self.prefixed()?;
            acc = Surface::And(Box::new(acc), Box::new(rhs));
        }
        Ok(acc)
    }

    fn prefixed(&mut self) -> Result<Surface, ParseError> {
        let make: fn(Box<Surface>) -> Surface = match self.peek().tok {
            Tok::Tilde => Surface::Snot,
            Tok::Bang => Surface::Pneg,
            Tok::Circ => Surface::Circ,
            _ => return self.primary(),
        };
        self.bump();
        Ok(make(Box::new(self.prefixed()?)))
    }

    fn primary(&mut self) -> Result<Surface, ParseError> {
        match self.peek().tok.clone() {
            Tok::LParen => {
                self.bump();
                let f = self.formula()?;
                self.expect(&Tok::RParen)?;
                Ok(f)
            }
            Tok::Forall | Tok::Exists => self.quantified(),
            Tok::Ident(_) | Tok::Const(_) | Tok::Empty => {
                let start = self.peek().clone();
                let lhs = self.term()?;
                match self.peek().tok {
                    Tok::In => {
                        self.bump();
                        Ok(Surface::Mem(lhs, self.term()?))
                    }
                    Tok::Equals => {
                        self.bump();
                        Ok(Surface::Eq(lhs, self.term()?))
                    }
                    _ => match (lhs, start.tok) {
                        (Term::Var(name), _) => Ok(Surface::Atom { name, line: start.line, col: start.col }),
                        (_, tok) => Err(ParseError {
                            line: start.line,
                            col: start.col,
                            message: format!("{tok} must be followed by `in` or `=`"),
                        }),
                    },
                }
            }
            other => Err(self.error_here(format!("expected a formula, found {other}"))),
        }
    }

    fn quantified(&mut self) -> Result<Surface, ParseError> {
        let head = self.bump();
        let quant = if head.tok == Tok::Forall { Quant::Forall } else { Quant::Exists };
        let var = match self.bump().tok {
            Tok::Ident(v) => v,
            other => {
                return Err(ParseError {
                    line: head.line,
                    col: head.col,
                    message: format!("expected a variable after {}, found {other}", head.tok),
                })
            }
        };
        let bound = if self.peek().tok == Tok::In {
            self.bump();
            Some(self.term()?)
        } else {
            None
        };
        self.expect(&Tok::Dot)?;
        let body = self.formula()?;
        Ok(Surface::Quantified { quant, var, bound, body: Box::new(body), line: head.line, col: head.col })
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        match self.peek().tok.clone() {
            Tok::Ident(v) => {
                self.bump();
                Ok(Term::Var(v))
            }
            Tok::Const(n) => {
                self.bump();
                Ok(Term::Const(ElemId(n)))
            }
            Tok::Empty => {
                self.bump();
                Ok(Term::Const(ElemId::EMPTY))
            }
            other => Err(self.error_here(format!("expected a term, found {other}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn var(s: &str) -> Term {
        Term::Var(s.into())
    }

    #[test]
    fn precedence() {
        let f = parse_surface("a & b | c -> d -> e").unwrap();
        let Surface::Imp(lhs, rhs) = f else { panic!("top should be ->") };
        assert!(matches!(*lhs, Surface::Or(_, _)));
        assert!(matches!(*rhs, Surface::Imp(_, _)));
    }

    #[test]
    fn prefix_binds_tightest() {
        let f = parse_surface("!x in y & z = w").unwrap();
        let Surface::And(l, r) = f else { panic!() };
        assert_eq!(*l, Surface::Pneg(Box::new(Surface::Mem(var("x"), var("y")))));
        assert_eq!(*r, Surface::Eq(var("z"), var("w")));
    }

    #[test]
    fn quantifier_scope_runs_to_end() {
        let f = parse_surface("p & forall x . x = x | q").unwrap();
        let Surface::And(_, r) = f else { panic!() };
        let Surface::Quantified { body, .. } = *r else { panic!() };
        assert!(matches!(*body, Surface::Or(_, _)));
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_surface("(p & q").unwrap_err();
        assert_eq!((e.line, e.col), (1, 7));
        let e = parse_surface("#1 & p").unwrap_err();
        assert_eq!((e.line, e.col), (1, 1));
        assert!(parse_surface("forall . p").is_err());
        assert!(parse_surface("p q").is_err());
    }
}
