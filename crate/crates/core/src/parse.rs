//! Parser for the matrix entry grammar.
//!
//! Entries are integer and rational literals (`a/b`), ring variables, and the
//! operators `+ - * ^` with parentheses; `*` is mandatory between factors.
//! Matrices are bracketed comma lists, `[ e11, e12, ... ]`, row-major, with
//! whitespace and backslash line continuations ignored.

use crate::error::{Error, Result};
use crate::mat::Mat;
use crate::poly::Poly;
use crate::ring::Ring;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
    line: usize,
    col: usize,
}

#[derive(Clone, PartialEq, Debug)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    End,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer { src: src.as_bytes(), pos: 0, line: 1, col: 1 }
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse { line: self.line, col: self.col, msg: msg.into() }
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.src.get(self.pos).copied();
        if let Some(c) = c {
            self.pos += 1;
            if c == b'\n' {
                self.line += 1;
                self.col = 1;
            } else {
                self.col += 1;
            }
        }
        c
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_ascii_whitespace() {
                self.bump();
            } else if c == b'\\' {
                // line continuation
                self.bump();
                while let Some(c2) = self.peek() {
                    if c2 == b'\n' {
                        self.bump();
                        break;
                    } else if c2.is_ascii_whitespace() {
                        self.bump();
                    } else {
                        break;
                    }
                }
            } else {
                break;
            }
        }
    }

    fn next(&mut self) -> Result<Tok> {
        self.skip_ws();
        let c = match self.peek() {
            None => return Ok(Tok::End),
            Some(c) => c,
        };
        let tok = match c {
            b'+' => {
                self.bump();
                Tok::Plus
            }
            b'-' => {
                self.bump();
                Tok::Minus
            }
            b'*' => {
                self.bump();
                Tok::Star
            }
            b'^' => {
                self.bump();
                Tok::Caret
            }
            b'/' => {
                self.bump();
                Tok::Slash
            }
            b'(' => {
                self.bump();
                Tok::LParen
            }
            b')' => {
                self.bump();
                Tok::RParen
            }
            b'[' => {
                self.bump();
                Tok::LBracket
            }
            b']' => {
                self.bump();
                Tok::RBracket
            }
            b',' => {
                self.bump();
                Tok::Comma
            }
            b'0'..=b'9' => {
                let mut digits = String::new();
                while let Some(c) = self.peek() {
                    if c.is_ascii_digit() {
                        digits.push(c as char);
                        self.bump();
                    } else {
                        break;
                    }
                }
                Tok::Int(digits.parse().unwrap())
            }
            c if c.is_ascii_alphabetic() => {
                let mut name = String::new();
                while let Some(c) = self.peek() {
                    if c.is_ascii_alphanumeric() || c == b'_' {
                        name.push(c as char);
                        self.bump();
                    } else {
                        break;
                    }
                }
                Tok::Ident(name)
            }
            other => return Err(self.err(format!("unexpected character `{}`", other as char))),
        };
        Ok(tok)
    }
}

struct Parser<'a> {
    lex: Lexer<'a>,
    cur: Tok,
    ring: &'a Ring,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str, ring: &'a Ring) -> Result<Self> {
        let mut lex = Lexer::new(src);
        let cur = lex.next()?;
        Ok(Parser { lex, cur, ring })
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse { line: self.lex.line, col: self.lex.col, msg: msg.into() }
    }

    fn advance(&mut self) -> Result<Tok> {
        let next = self.lex.next()?;
        Ok(std::mem::replace(&mut self.cur, next))
    }

    fn expect(&mut self, tok: Tok) -> Result<()> {
        if self.cur == tok {
            self.advance()?;
            Ok(())
        } else {
            Err(self.err(format!("expected {:?}, found {:?}", tok, self.cur)))
        }
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = if self.cur == Tok::Minus {
            self.advance()?;
            self.term()?.neg()
        } else {
            self.term()?
        };
        loop {
            match self.cur {
                Tok::Plus => {
                    self.advance()?;
                    acc = acc.add(&self.term()?);
                }
                Tok::Minus => {
                    self.advance()?;
                    acc = acc.sub(&self.term()?);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        while self.cur == Tok::Star {
            self.advance()?;
            acc = acc.mul(&self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly> {
        let base = self.base()?;
        if self.cur == Tok::Caret {
            self.advance()?;
            let exp = match self.advance()? {
                Tok::Int(n) => n,
                other => return Err(self.err(format!("expected exponent, found {other:?}"))),
            };
            let exp: u32 = exp
                .try_into()
                .map_err(|_| self.err("exponent out of range"))?;
            let mut acc = Poly::one(self.ring.nvars());
            for _ in 0..exp {
                acc = acc.mul(&base);
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<Poly> {
        let nv = self.ring.nvars();
        match self.advance()? {
            Tok::Int(n) => {
                // rational literal a/b
                if self.cur == Tok::Slash {
                    self.advance()?;
                    match self.advance()? {
                        Tok::Int(d) => {
                            if d.is_zero() {
                                return Err(self.err("zero denominator"));
                            }
                            Ok(Poly::constant(nv, BigRational::new(n, d)))
                        }
                        other => Err(self.err(format!("expected denominator, found {other:?}"))),
                    }
                } else {
                    Ok(Poly::constant(nv, BigRational::from(n)))
                }
            }
            Tok::Ident(name) => match self.ring.var_index(&name) {
                Some(i) => Ok(Poly::var(nv, i)),
                None => Err(self.err(format!("unknown variable `{name}`"))),
            },
            Tok::LParen => {
                let inner = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(inner)
            }
            Tok::Minus => Ok(self.factor()?.neg()),
            other => Err(self.err(format!("unexpected token {other:?}"))),
        }
    }
}

/// Parse a single ring element.
pub fn parse_entry(src: &str, ring: &Ring) -> Result<Poly> {
    let mut p = Parser::new(src, ring)?;
    let e = p.expr()?;
    if p.cur != Tok::End {
        return Err(p.err(format!("trailing input {:?}", p.cur)));
    }
    Ok(e)
}

/// Parse a bracketed comma list of `rows x cols` entries into a matrix.
pub fn parse_matrix(src: &str, rows: usize, cols: usize, ring: &Ring) -> Result<Mat> {
    let mut p = Parser::new(src, ring)?;
    p.expect(Tok::LBracket)?;
    let mut entries = Vec::with_capacity(rows * cols);
    if p.cur != Tok::RBracket {
        loop {
            entries.push(p.expr()?);
            if p.cur == Tok::Comma {
                p.advance()?;
            } else {
                break;
            }
        }
    }
    p.expect(Tok::RBracket)?;
    if p.cur != Tok::End {
        return Err(p.err("trailing input after `]`"));
    }
    if entries.len() != rows * cols {
        return Err(Error::Parse {
            line: 1,
            col: 1,
            msg: format!("expected {} entries for {rows}x{cols}, found {}", rows * cols, entries.len()),
        });
    }
    Mat::new(ring.clone(), rows, cols, entries)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn entries() {
        let r = Ring::parse("QQ[x,y,z]").unwrap();
        let e = parse_entry("x^2*y-x^2", &r).unwrap();
        assert_eq!(e.display(r.vars()), "x^2*y-x^2");
        let e = parse_entry("-x*y^2+x*y", &r).unwrap();
        assert_eq!(e.display(r.vars()), "-x*y^2+x*y");
        let q = Ring::rationals();
        let e = parse_entry("1/2", &q).unwrap();
        assert_eq!(e.display(&[]), "1/2");
        assert!(parse_entry("w", &r).is_err());
        assert!(parse_entry("1/0", &q).is_err());
    }

    #[test]
    fn matrices() {
        let r = Ring::parse("QQ[x,y,z]").unwrap();
        let m = parse_matrix("[ x*y, y*z, z, 0, 0, x ]", 2, 3, &r).unwrap();
        assert_eq!(m.rows(), 2);
        assert_eq!(m.at(0, 2).display(r.vars()), "z");
        // line continuations as in the paper's session transcripts
        let m2 = parse_matrix("[ x*y, y*z, \\\n z, 0, 0, x ]", 2, 3, &r).unwrap();
        assert_eq!(m, m2);
        let empty = parse_matrix("[ ]", 0, 0, &r).unwrap();
        assert_eq!(empty.rows(), 0);
        assert!(parse_matrix("[ x ]", 1, 2, &r).is_err());
    }

    #[test]
    fn round_trip_display() {
        let r = Ring::parse("QQ[x,y,z]").unwrap();
        let src = "[ x*y, y*z, z, 0, 0, x^3*z, x^2*z^2, 0, x*z^2, -z^2 ]";
        let m = parse_matrix(src, 2, 5, &r).unwrap();
        let rendered = format!("[ {} ]", m.entry_strings().join(", "));
        let back = parse_matrix(&rendered, 2, 5, &r).unwrap();
        assert_eq!(m, back);
    }
}
