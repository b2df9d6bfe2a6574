//! Lattice expressions such as `C2+N5+C3` or `(C2xC3)+C2`.
//!
//! Grammar (whitespace is ignored):
//!
//! ```text
//! sum     := product ('+' product)*      glued sum, left-associative
//! product := factor ('x' factor)*        direct product, binds tighter
//! factor  := atom | '(' sum ')'
//! atom    := 'C' digits | 'chain:' digits | 'B4' | 'B8' | 'N5' | 'M3'
//! ```

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::lattice::Lattice;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LatticeExpr {
    Chain(usize),
    Named(String),
    Glued(Box<LatticeExpr>, Box<LatticeExpr>),
    Product(Box<LatticeExpr>, Box<LatticeExpr>),
}

impl LatticeExpr {
    pub fn parse(input: &str) -> Result<Self> {
        let tokens = tokenize(input)?;
        let mut p = Parser {
            tokens: &tokens,
            pos: 0,
            input,
        };
        let e = p.sum()?;
        if p.pos != tokens.len() {
            return Err(p.error("trailing input"));
        }
        Ok(e)
    }

    pub fn eval(&self) -> Result<Lattice> {
        match self {
            LatticeExpr::Chain(k) => Lattice::chain(*k),
            LatticeExpr::Named(name) => Lattice::named(name),
            LatticeExpr::Glued(a, b) => a.eval()?.glued_sum(&b.eval()?),
            LatticeExpr::Product(a, b) => a.eval()?.direct_product(&b.eval()?),
        }
    }

    /// Element count, without building the lattice.
    pub fn size(&self) -> usize {
        match self {
            LatticeExpr::Chain(k) => *k,
            LatticeExpr::Named(name) => match name.as_str() {
                "B4" => 4,
                "B8" => 8,
                _ => 5,
            },
            LatticeExpr::Glued(a, b) => a.size() + b.size() - 1,
            LatticeExpr::Product(a, b) => a.size() * b.size(),
        }
    }

    pub fn glued(self, other: LatticeExpr) -> Self {
        LatticeExpr::Glued(Box::new(self), Box::new(other))
    }

    pub fn product(self, other: LatticeExpr) -> Self {
        LatticeExpr::Product(Box::new(self), Box::new(other))
    }
}

impl FromStr for LatticeExpr {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

impl fmt::Display for LatticeExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatticeExpr::Chain(k) => write!(f, "C{k}"),
            LatticeExpr::Named(name) => f.write_str(name),
            LatticeExpr::Glued(a, b) => {
                write!(f, "{a}+")?;
                match **b {
                    LatticeExpr::Glued(..) => write!(f, "({b})"),
                    _ => write!(f, "{b}"),
                }
            }
            LatticeExpr::Product(a, b) => {
                let wrap = |e: &LatticeExpr, f: &mut fmt::Formatter<'_>, right: bool| match e {
                    LatticeExpr::Glued(..) => write!(f, "({e})"),
                    LatticeExpr::Product(..) if right => write!(f, "({e})"),
                    _ => write!(f, "{e}"),
                };
                wrap(a, f, false)?;
                f.write_str("x")?;
                wrap(b, f, true)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Atom(LatticeExpr),
    Plus,
    Times,
    Open,
    Close,
}

fn tokenize(input: &str) -> Result<Vec<Token>> {
    let err = |reason: String| Error::Parse {
        input: input.into(),
        reason,
    };
    let chars: Vec<char> = input.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let digits = |start: usize| {
        let mut j = start;
        while j < chars.len() && chars[j].is_ascii_digit() {
            j += 1;
        }
        j
    };
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' => i += 1,
            '+' => {
                out.push(Token::Plus);
                i += 1;
            }
            'x' | '×' => {
                out.push(Token::Times);
                i += 1;
            }
            '(' => {
                out.push(Token::Open);
                i += 1;
            }
            ')' => {
                out.push(Token::Close);
                i += 1;
            }
            'C' | 'c' => {
                let (start, end) = if input[char_offset(&chars, i)..].starts_with("chain:") {
                    (i + 6, digits(i + 6))
                } else {
                    (i + 1, digits(i + 1))
                };
                let k: usize = chars[start..end]
                    .iter()
                    .collect::<String>()
                    .parse()
                    .map_err(|_| err(format!("chain atom at position {i} needs a length")))?;
                if k == 0 {
                    return Err(err("chains have at least one element".into()));
                }
                out.push(Token::Atom(LatticeExpr::Chain(k)));
                i = end;
            }
            'B' | 'N' | 'M' => {
                let end = digits(i + 1);
                let name: String = chars[i..end].iter().collect();
                if !matches!(name.as_str(), "B4" | "B8" | "N5" | "M3") {
                    return Err(err(format!("unknown atom `{name}`")));
                }
                out.push(Token::Atom(LatticeExpr::Named(name)));
                i = end;
            }
            _ => return Err(err(format!("unexpected character `{c}` at position {i}"))),
        }
    }
    Ok(out)
}

fn char_offset(chars: &[char], i: usize) -> usize {
    chars[..i].iter().map(|c| c.len_utf8()).sum()
}

struct Parser<'a> {
    tokens: &'a [Token],
    pos: usize,
    input: &'a str,
}

impl Parser<'_> {
    fn error(&self, reason: &str) -> Error {
        Error::Parse {
            input: self.input.into(),
            reason: format!("{reason} at token {}", self.pos),
        }
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn sum(&mut self) -> Result<LatticeExpr> {
        let mut e = self.product()?;
        while self.peek() == Some(&Token::Plus) {
            self.pos += 1;
            e = e.glued(self.product()?);
        }
        Ok(e)
    }

    fn product(&mut self) -> Result<LatticeExpr> {
        let mut e = self.factor()?;
        while self.peek() == Some(&Token::Times) {
            self.pos += 1;
            e = e.product(self.factor()?);
        }
        Ok(e)
    }

    fn factor(&mut self) -> Result<LatticeExpr> {
        match self.peek().cloned() {
            Some(Token::Atom(a)) => {
                self.pos += 1;
                Ok(a)
            }
            Some(Token::Open) => {
                self.pos += 1;
                let e = self.sum()?;
                if self.peek() != Some(&Token::Close) {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            _ => Err(self.error("expected an atom or `(`")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence_and_associativity() {
        let e = LatticeExpr::parse("C2+N5+C3").unwrap();
        let expected = LatticeExpr::Chain(2)
            .glued(LatticeExpr::Named("N5".into()))
            .glued(LatticeExpr::Chain(3));
        assert_eq!(e, expected);

        let e = LatticeExpr::parse("(C2xC3)+C2").unwrap();
        assert_eq!(
            e,
            LatticeExpr::Chain(2)
                .product(LatticeExpr::Chain(3))
                .glued(LatticeExpr::Chain(2))
        );
        assert_eq!(LatticeExpr::parse("C2xC3+C2").unwrap(), e);
        assert_eq!(LatticeExpr::parse(" chain:4 + B4 ").unwrap().size(), 7);
    }

    #[test]
    fn sizes_match_evaluation() {
        for s in [
            "C2+N5+C3",
            "(C2xC3)+C2",
            "B4+C2+B4",
            "B8",
            "M3xC2",
            "C1",
            "(B4+B4)xC2",
        ] {
            let e = LatticeExpr::parse(s).unwrap();
            assert_eq!(e.eval().unwrap().size(), e.size(), "{s}");
        }
    }

    #[test]
    fn display_round_trips() {
        for s in [
            "C2+N5+C3",
            "C2xC3+C2",
            "B4+(C2+B4)",
            "(B4+C2)xC2",
            "C2x(C2xC2)",
            "M3",
        ] {
            let e = LatticeExpr::parse(s).unwrap();
            assert_eq!(LatticeExpr::parse(&e.to_string()).unwrap(), e, "{s}");
        }
    }

    #[test]
    fn errors() {
        for bad in ["", "C", "C0", "B5", "N5+", "(C2", "C2)", "Q3", "C2 C3"] {
            assert!(
                matches!(LatticeExpr::parse(bad), Err(Error::Parse { .. })),
                "{bad}"
            );
        }
    }
}
