use std::fmt;

use super::ParseError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Tok {
    Ident(String),
    Const(u32),
    LParen,
    RParen,
    And,
    Or,
    Arrow,
    DoubleArrow,
    Iff,
    Tilde,
    Bang,
    Circ,
    Dot,
    Equals,
    In,
    Forall,
    Exists,
    Empty,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "identifier `{s}`"),
            Tok::Const(n) => write!(f, "constant `#{n}`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::And => f.write_str("`&`"),
            Tok::Or => f.write_str("`|`"),
            Tok::Arrow => f.write_str("`->`"),
            Tok::DoubleArrow => f.write_str("`=>`"),
            Tok::Iff => f.write_str("`<->`"),
            Tok::Tilde => f.write_str("`~`"),
            Tok::Bang => f.write_str("`!`"),
            Tok::Circ => f.write_str("`O`"),
            Tok::Dot => f.write_str("`.`"),
            Tok::Equals => f.write_str("`=`"),
            Tok::In => f.write_str("`in`"),
            Tok::Forall => f.write_str("`forall`"),
            Tok::Exists => f.write_str("`exists`"),
            Tok::Empty => f.write_str("`empty`"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

/// A token with its 1-based source position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Spanned {
    pub tok: Tok,
    pub line: usize,
    pub col: usize,
}

pub(crate) fn tokenize(src: &str) -> Result<Vec<Spanned>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);

    while i < chars.len() {
        let c = chars[i];
        let (tl, tc) = (line, col);
        let err = |msg: String| ParseError { line: tl, col: tc, message: msg };
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        let peek = chars.get(i + 1).copied();
        let (tok, len) = match c {
            '(' => (Tok::LParen, 1),
            ')' => (Tok::RParen, 1),
            '&' => (Tok::And, 1),
            '|' => (Tok::Or, 1),
            '~' => (Tok::Tilde, 1),
            '!' => (Tok::Bang, 1),
            '.' => (Tok::Dot, 1),
            '-' if peek == Some('>') => (Tok::Arrow, 2),
            '=' if peek == Some('>') => (Tok::DoubleArrow, 2),
            '=' => (Tok::Equals, 1),
            '<' if peek == Some('-') && chars.get(i + 2) == Some(&'>') => (Tok::Iff, 3),
            '#' => {
                let digits: String =
                    chars[i + 1..].iter().take_while(|d| d.is_ascii_digit()).collect();
                if digits.is_empty() {
                    return Err(err("expected digits after `#`".into()));
                }
                let n = digits
                    .parse::<u32>()
                    .map_err(|_| err(format!("constant `#{digits}` is too large")))?;
                (Tok::Const(n), 1 + digits.len())
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let word: String = chars[i..]
                    .iter()
                    .take_while(|d| d.is_ascii_alphanumeric() || **d == '_' || **d == '\'')
                    .collect();
                let len = word.len();
                let tok = match word.as_str() {
                    "in" => Tok::In,
                    "forall" => Tok::Forall,
                    "exists" => Tok::Exists,
                    "empty" => Tok::Empty,
                    "O" => Tok::Circ,
                    _ => Tok::Ident(word),
                };
                (tok, len)
            }
            other => return Err(err(format!("unexpected character `{other}`"))),
        };
        out.push(Spanned { tok, line: tl, col: tc });
        i += len;
        col += len;
    }
    out.push(Spanned { tok: Tok::Eof, line, col });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(s: &str) -> Vec<Tok> {
        tokenize(s).unwrap().into_iter().map(|t| t.tok).collect()
    }

    #[test]
    fn operators_and_keywords() {
        assert_eq!(
            toks("forall x in #12 . O x -> y <-> !~z => w"),
            vec![
                Tok::Forall,
                Tok::Ident("x".into()),
                Tok::In,
                Tok::Const(12),
                Tok::Dot,
                Tok::Circ,
                Tok::Ident("x".into()),
                Tok::Arrow,
                Tok::Ident("y".into()),
                Tok::Iff,
                Tok::Bang,
                Tok::Tilde,
                Tok::Ident("z".into()),
                Tok::DoubleArrow,
                Tok::Ident("w".into()),
                Tok::Eof,
            ]
        );
    }

    #[test]
    fn identifiers_that_start_with_keywords() {
        assert_eq!(toks("Ox inner"), vec![Tok::Ident("Ox".into()), Tok::Ident("inner".into()), Tok::Eof]);
    }

    #[test]
    fn positions_track_lines() {
        let t = tokenize("p\n  & q").unwrap();
        assert_eq!((t[1].line, t[1].col), (2, 3));
        let e = tokenize("p $").unwrap_err();
        assert_eq!((e.line, e.col), (1, 3));
        assert!(tokenize("#").is_err());
    }
}
