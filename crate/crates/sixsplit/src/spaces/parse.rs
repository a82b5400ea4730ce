use num_bigint::BigUint;
use num_traits::ToPrimitive;
use thiserror::Error;

use super::atom::SpaceAtom;
use super::expr::{SpaceExpr, Term};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at byte {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("unknown atom name `{name}` at byte {pos}")]
    UnknownAtom { pos: usize, name: String },
}

fn syntax(pos: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        pos,
        message: message.into(),
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Word(String),
    Int(BigUint),
    Label(String),
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Wedge,
    Smash,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn tokens(src: &'a str) -> Result<Vec<(usize, Tok)>, ParseError> {
        let mut lx = Lexer {
            src: src.as_bytes(),
            pos: 0,
        };
        let mut out = Vec::new();
        while let Some(t) = lx.next_token()? {
            out.push(t);
        }
        Ok(out)
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn next_token(&mut self) -> Result<Option<(usize, Tok)>, ParseError> {
        while matches!(self.peek(), Some(c) if c.is_ascii_whitespace()) {
            self.pos += 1;
        }
        let start = self.pos;
        let Some(c) = self.peek() else {
            return Ok(None);
        };
        let tok = match c {
            b'(' => {
                self.pos += 1;
                Tok::LParen
            }
            b')' => {
                self.pos += 1;
                Tok::RParen
            }
            b'[' => {
                self.pos += 1;
                Tok::LBracket
            }
            b']' => {
                self.pos += 1;
                Tok::RBracket
            }
            b',' => {
                self.pos += 1;
                Tok::Comma
            }
            b'^' => {
                self.pos += 1;
                Tok::Smash
            }
            b'0'..=b'9' => {
                let mut end = self.pos;
                while matches!(self.src.get(end), Some(d) if d.is_ascii_digit()) {
                    end += 1;
                }
                let digits = std::str::from_utf8(&self.src[self.pos..end]).unwrap();
                self.pos = end;
                Tok::Int(digits.parse().unwrap())
            }
            c if c.is_ascii_alphabetic() => {
                // Longest keyword match, so that `S3vS5` splits correctly.
                const KEYWORDS: [&str; 9] =
                    ["SCP", "Sus", "CIA", "OPQ", "CA", "pt", "S", "P", "v"];
                let rest = &self.src[self.pos..];
                let word = match KEYWORDS.iter().find(|k| rest.starts_with(k.as_bytes())) {
                    Some(k) => k.to_string(),
                    None => {
                        let mut end = self.pos;
                        while matches!(self.src.get(end), Some(d) if d.is_ascii_alphabetic()) {
                            end += 1;
                        }
                        std::str::from_utf8(&self.src[self.pos..end]).unwrap().to_string()
                    }
                };
                self.pos += word.len();
                if word == "v" {
                    Tok::Wedge
                } else if word == "OPQ" {
                    // OPQ:<label>[...] -- the label runs up to the bracket.
                    if self.peek() != Some(b':') {
                        return Err(syntax(self.pos, "expected `:` after OPQ"));
                    }
                    self.pos += 1;
                    let lstart = self.pos;
                    while matches!(self.peek(), Some(d) if d != b'[' && !d.is_ascii_whitespace()) {
                        self.pos += 1;
                    }
                    if self.pos == lstart {
                        return Err(syntax(lstart, "empty opaque label"));
                    }
                    let label = std::str::from_utf8(&self.src[lstart..self.pos])
                        .unwrap()
                        .to_string();
                    Tok::Label(label)
                } else {
                    Tok::Word(word)
                }
            }
            other => {
                return Err(syntax(start, format!("unexpected character `{}`", other as char)));
            }
        };
        Ok(Some((start, tok)))
    }
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.at).map(|(_, t)| t.clone());
        self.at += 1;
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<(), ParseError> {
        let pos = self.pos();
        match self.bump() {
            Some(t) if t == want => Ok(()),
            _ => Err(syntax(pos, format!("expected {what}"))),
        }
    }

    fn expect_int(&mut self, what: &str) -> Result<BigUint, ParseError> {
        let pos = self.pos();
        match self.bump() {
            Some(Tok::Int(n)) => Ok(n),
            _ => Err(syntax(pos, format!("expected {what}"))),
        }
    }

    fn expect_small_int(&mut self, what: &str) -> Result<u32, ParseError> {
        let pos = self.pos();
        let n = self.expect_int(what)?;
        n.to_u32()
            .ok_or_else(|| syntax(pos, format!("{what} out of range")))
    }

    // expr := smash ('v' smash)*
    fn expr(&mut self) -> Result<Term, ParseError> {
        let mut parts = vec![self.smash()?];
        while matches!(self.peek(), Some(Tok::Wedge)) {
            self.bump();
            parts.push(self.smash()?);
        }
        Ok(if parts.len() == 1 {
            parts.pop().unwrap()
        } else {
            Term::Wedge(parts)
        })
    }

    // smash := primary ('^' primary)*, left associative
    fn smash(&mut self) -> Result<Term, ParseError> {
        let mut lhs = self.primary()?;
        while matches!(self.peek(), Some(Tok::Smash)) {
            self.bump();
            let rhs = self.primary()?;
            lhs = Term::Smash(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn primary(&mut self) -> Result<Term, ParseError> {
        let pos = self.pos();
        match self.bump() {
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(inner)
            }
            Some(Tok::Word(w)) => self.word(pos, w),
            Some(Tok::Label(label)) => {
                self.expect(Tok::LBracket, "`[` after opaque label")?;
                let mut cells = vec![self.expect_small_int("cell dimension")?];
                while matches!(self.peek(), Some(Tok::Comma)) {
                    self.bump();
                    cells.push(self.expect_small_int("cell dimension")?);
                }
                self.expect(Tok::RBracket, "`]`")?;
                Ok(Term::Atom(SpaceAtom::opaque(label, cells)))
            }
            _ => Err(syntax(pos, "expected a space expression")),
        }
    }

    fn word(&mut self, pos: usize, w: String) -> Result<Term, ParseError> {
        match w.as_str() {
            "Sus" => {
                self.expect(Tok::LParen, "`(` after Sus")?;
                let inner = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(Term::Suspension(Box::new(inner)))
            }
            "pt" => Ok(Term::Wedge(Vec::new())),
            "S" => {
                let n = self.expect_small_int("sphere dimension")?;
                if n < 1 {
                    return Err(syntax(pos, "sphere dimension must be at least 1"));
                }
                Ok(Term::Atom(SpaceAtom::sphere(n)))
            }
            "P" => {
                let dim = self.expect_small_int("Moore space dimension")?;
                if dim < 2 {
                    return Err(syntax(pos, "Moore space dimension must be at least 2"));
                }
                self.expect(Tok::LParen, "`(` after Moore space dimension")?;
                let order = self.expect_int("Moore space order")?;
                self.expect(Tok::RParen, "`)`")?;
                if order < BigUint::from(2u32) {
                    return Err(syntax(pos, "Moore space order must be at least 2"));
                }
                Ok(Term::Atom(SpaceAtom::moore(dim, order)))
            }
            "SCP" => {
                let n = self.expect_small_int("SCP index")?;
                if n != 3 {
                    return Err(ParseError::UnknownAtom {
                        pos,
                        name: format!("SCP{n}"),
                    });
                }
                Ok(Term::Atom(SpaceAtom::SigmaCp3))
            }
            "CA" => {
                let n = self.expect_small_int("CA index")?;
                if n != 1 {
                    return Err(ParseError::UnknownAtom {
                        pos,
                        name: format!("CA{n}"),
                    });
                }
                Ok(Term::Atom(SpaceAtom::ConeAlpha1))
            }
            "CIA" => {
                self.expect(Tok::LParen, "`(` after CIA")?;
                let r = self.expect_small_int("CIA exponent")?;
                self.expect(Tok::RParen, "`)`")?;
                if r < 1 {
                    return Err(syntax(pos, "CIA exponent must be at least 1"));
                }
                Ok(Term::Atom(SpaceAtom::cone_iota_alpha1(r)))
            }
            other => Err(ParseError::UnknownAtom {
                pos,
                name: other.to_string(),
            }),
        }
    }
}

/// Parse a space expression. The grammar: atoms `S<n>`, `P<n>(<m>)`, `SCP3`,
/// `CA1`, `CIA(<r>)`, `OPQ:<label>[d1,d2,...]`, the point `pt`; operators
/// `v` (wedge, lowest precedence) and `^` (smash); prefix `Sus(...)`;
/// parentheses group; whitespace is insignificant. The localization tag is
/// not part of the text and defaults to integral.
pub fn parse(text: &str) -> Result<SpaceExpr, ParseError> {
    let toks = Lexer::tokens(text)?;
    let mut p = Parser {
        toks,
        at: 0,
        end: text.len(),
    };
    let term = p.expr()?;
    if p.at != p.toks.len() {
        return Err(syntax(p.pos(), "trailing input"));
    }
    Ok(SpaceExpr::new(term, super::atom::Localization::Integral))
}
