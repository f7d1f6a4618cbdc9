//! Matrix text grammar.
//!
//! Two spellings are accepted:
//!
//! * plain: `a b; c d`, where the entries of a row are separated by
//!   whitespace and/or a comma;
//! * JSON: `[[a, b], [c, d]]`.
//!
//! Integers are signed decimal with no size limit. Error positions are
//! 0-based character offsets into the input.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::matrix::IntMat2;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    LBracket,
    RBracket,
    Comma,
    Semi,
    End,
}

struct Lexer<'a> {
    chars: Vec<char>,
    pos: usize,
    _src: &'a str,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer {
            chars: src.chars().collect(),
            pos: 0,
            _src: src,
        }
    }

    fn skip_ws(&mut self) -> bool {
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
        self.pos > start
    }

    /// Next token, its start position, and whether whitespace preceded it.
    fn next(&mut self) -> Result<(Tok, usize, bool)> {
        let spaced = self.skip_ws();
        let start = self.pos;
        let Some(&ch) = self.chars.get(self.pos) else {
            return Ok((Tok::End, start, spaced));
        };
        let tok = match ch {
            '[' => Tok::LBracket,
            ']' => Tok::RBracket,
            ',' => Tok::Comma,
            ';' => Tok::Semi,
            '-' | '+' | '0'..='9' => {
                let mut end = self.pos;
                if ch == '-' || ch == '+' {
                    end += 1;
                }
                let digits_start = end;
                while end < self.chars.len() && self.chars[end].is_ascii_digit() {
                    end += 1;
                }
                if end == digits_start {
                    return Err(err(start, "expected digits after sign"));
                }
                let text: String = self.chars[self.pos..end].iter().collect();
                self.pos = end;
                let v: BigInt = text.parse().map_err(|_| err(start, "invalid integer"))?;
                return Ok((Tok::Int(v), start, spaced));
            }
            other => return Err(err(start, &format!("unexpected character '{other}'"))),
        };
        self.pos += 1;
        Ok((tok, start, spaced))
    }
}

fn err(pos: usize, msg: &str) -> Error {
    Error::Parse {
        pos,
        msg: msg.to_string(),
    }
}

fn expect(lx: &mut Lexer, want: Tok, what: &str) -> Result<()> {
    let (tok, pos, _) = lx.next()?;
    if tok == want {
        Ok(())
    } else {
        Err(err(pos, &format!("expected {what}")))
    }
}

fn expect_int(lx: &mut Lexer) -> Result<(BigInt, usize, bool)> {
    match lx.next()? {
        (Tok::Int(v), pos, spaced) => Ok((v, pos, spaced)),
        (_, pos, _) => Err(err(pos, "expected integer")),
    }
}

fn parse_json(lx: &mut Lexer) -> Result<IntMat2> {
    let mut e = Vec::with_capacity(4);
    expect(lx, Tok::LBracket, "'['")?;
    for row in 0..2 {
        if row == 1 {
            expect(lx, Tok::Comma, "',' between rows")?;
        }
        expect(lx, Tok::LBracket, "'['")?;
        e.push(expect_int(lx)?.0);
        expect(lx, Tok::Comma, "','")?;
        e.push(expect_int(lx)?.0);
        expect(lx, Tok::RBracket, "']' (rows have exactly two entries)")?;
    }
    expect(lx, Tok::RBracket, "']' (exactly two rows)")?;
    finish(lx)?;
    let mut it = e.into_iter();
    Ok(IntMat2 {
        a: it.next().unwrap(),
        b: it.next().unwrap(),
        c: it.next().unwrap(),
        d: it.next().unwrap(),
    })
}

/// Second entry of a plain row: needs whitespace or a comma before it.
fn second_entry(lx: &mut Lexer) -> Result<BigInt> {
    let (tok, pos, spaced) = lx.next()?;
    match tok {
        Tok::Comma => Ok(expect_int(lx)?.0),
        Tok::Int(v) if spaced => Ok(v),
        Tok::Int(_) => Err(err(pos, "entries must be separated by whitespace or ','")),
        _ => Err(err(pos, "expected integer (rows have exactly two entries)")),
    }
}

fn parse_plain(lx: &mut Lexer) -> Result<IntMat2> {
    let a = expect_int(lx)?.0;
    let b = second_entry(lx)?;
    expect(lx, Tok::Semi, "';' after the first row")?;
    let c = expect_int(lx)?.0;
    let d = second_entry(lx)?;
    finish(lx)?;
    Ok(IntMat2 { a, b, c, d })
}

fn finish(lx: &mut Lexer) -> Result<()> {
    match lx.next()? {
        (Tok::End, _, _) => Ok(()),
        (_, pos, _) => Err(err(pos, "trailing input")),
    }
}

pub fn parse_matrix(text: &str) -> Result<IntMat2> {
    let mut lx = Lexer::new(text);
    if text.trim_start().starts_with('[') {
        parse_json(&mut lx)
    } else {
        parse_plain(&mut lx)
    }
}

/// `a b; c d`.
pub fn format_matrix(m: &IntMat2) -> String {
    format!("{} {}; {} {}", m.a, m.b, m.c, m.d)
}
