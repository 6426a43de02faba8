//! Tokenizer and Pratt parser for the expression language.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := '-' unary | power
//! power := atom ('^' int)?            right associative, int may be signed or parenthesized
//! atom  := int | z | i | pi | name | exp '(' expr ')' | e '^' atom
//!        | f primes? ('(' expr ')')? | f '^' '(' int ')' '(' expr ')' | '(' expr ')'
//! ```

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Ast {
    Int(BigInt),
    Z,
    I,
    Pi,
    Param(String),
    Exp(Box<Ast>),
    /// `f^(dorder)(arg)`; `arg` is `None` for a bare `f`, meaning `f(z)`.
    F {
        dorder: u32,
        arg: Option<Box<Ast>>,
    },
    Neg(Box<Ast>),
    Add(Box<Ast>, Box<Ast>),
    Sub(Box<Ast>, Box<Ast>),
    Mul(Box<Ast>, Box<Ast>),
    Div(Box<Ast>, Box<Ast>),
    Pow(Box<Ast>, i64),
}

#[derive(Clone, PartialEq, Eq, Debug)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Prime,
    Equals,
    End,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
    start: usize,
    end: usize,
}

/// Where a piece of text sits inside a larger file, for error positions.
#[derive(Clone, Copy, Debug)]
pub struct Origin {
    pub line: usize,
    pub column: usize,
}

impl Default for Origin {
    fn default() -> Self {
        Origin { line: 1, column: 1 }
    }
}

fn lex(src: &str, origin: Origin) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let (mut line, mut col) = (origin.line, origin.column);
    let mut it = src.char_indices().peekable();
    while let Some(&(start, c)) = it.peek() {
        let (tl, tc) = (line, col);
        let simple = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '\'' => Some(Tok::Prime),
            '=' => Some(Tok::Equals),
            _ => None,
        };
        if let Some(tok) = simple {
            it.next();
            col += 1;
            out.push(Token { tok, line: tl, column: tc, start, end: start + 1 });
            continue;
        }
        if c == '\n' {
            it.next();
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            it.next();
            col += 1;
            continue;
        }
        let word = |it: &mut std::iter::Peekable<std::str::CharIndices>, pred: fn(char) -> bool| {
            let mut end = start;
            while let Some(&(k, ch)) = it.peek() {
                if !pred(ch) {
                    break;
                }
                end = k + ch.len_utf8();
                it.next();
            }
            end
        };
        if c.is_ascii_digit() {
            let end = word(&mut it, |ch| ch.is_ascii_digit());
            let n: BigInt = src[start..end].parse().expect("digits");
            col += end - start;
            out.push(Token { tok: Tok::Int(n), line: tl, column: tc, start, end });
        } else if c.is_alphabetic() || c == '_' {
            let end = word(&mut it, |ch| ch.is_alphanumeric() || ch == '_');
            col += src[start..end].chars().count();
            out.push(Token { tok: Tok::Ident(src[start..end].to_string()), line: tl, column: tc, start, end });
        } else {
            return Err(Error::SyntaxError { line: tl, column: tc, message: format!("unexpected character `{c}`") });
        }
    }
    out.push(Token { tok: Tok::End, line, column: col, start: src.len(), end: src.len() });
    Ok(out)
}

struct Parser<'a> {
    src: &'a str,
    toks: Vec<Token>,
    pos: usize,
}

/// Names with a fixed meaning that cannot be declared as parameters.
pub const RESERVED: [&str; 6] = ["z", "i", "pi", "exp", "e", "f"];

impl<'a> Parser<'a> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].tok
    }

    fn next(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error_here(&self, message: impl Into<String>) -> Error {
        let t = &self.toks[self.pos];
        Error::SyntaxError { line: t.line, column: t.column, message: message.into() }
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<()> {
        if *self.peek() == tok {
            self.next();
            Ok(())
        } else {
            Err(self.error_here(format!("expected {what}")))
        }
    }

    fn expr(&mut self) -> Result<Ast> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.next();
                    lhs = Ast::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.next();
                    lhs = Ast::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Ast> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.next();
                    lhs = Ast::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Tok::Slash => {
                    self.next();
                    lhs = Ast::Div(Box::new(lhs), Box::new(self.unary()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Ast> {
        if *self.peek() == Tok::Minus {
            self.next();
            return Ok(Ast::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Ast> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        let mut exps = Vec::new();
        while *self.peek() == Tok::Caret {
            self.next();
            exps.push(self.int_exponent()?);
        }
        // right associative: a^2^3 = a^(2^3)
        let mut e = exps.pop().expect("at least one exponent");
        while let Some(k) = exps.pop() {
            let v = u32::try_from(e)
                .ok()
                .and_then(|e| k.checked_pow(e))
                .ok_or_else(|| self.error_here("exponent must be a small nonnegative integer"))?;
            e = v;
        }
        Ok(Ast::Pow(Box::new(base), e))
    }

    /// An integer exponent: `3`, `-2`, `(3)` or `(-2)`.
    fn int_exponent(&mut self) -> Result<i64> {
        let start = self.toks[self.pos].start;
        let (paren, checkpoint) = (*self.peek() == Tok::LParen, self.pos);
        if paren {
            self.next();
        }
        let neg = *self.peek() == Tok::Minus;
        if neg {
            self.next();
        }
        let ok = match self.peek().clone() {
            Tok::Int(n) => {
                self.next();
                if !paren || *self.peek() == Tok::RParen {
                    if paren {
                        self.next();
                    }
                    Some(n)
                } else {
                    None
                }
            }
            _ => None,
        };
        match ok {
            Some(n) => {
                let v = n.to_i64().ok_or_else(|| self.error_here("exponent too large"))?;
                Ok(if neg { -v } else { v })
            }
            None => {
                // report the whole offending exponent
                self.pos = checkpoint;
                let _ = if paren { self.atom() } else { self.unary() };
                let end = self.toks[self.pos.saturating_sub(1)].end.max(start);
                Err(Error::NonIntegerExponent { text: self.src[start..end].trim().to_string() })
            }
        }
    }

    fn atom(&mut self) -> Result<Ast> {
        let t = self.next();
        match t.tok {
            Tok::Int(n) => Ok(Ast::Int(n)),
            Tok::LParen => {
                let e = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(e)
            }
            Tok::Ident(name) => match name.as_str() {
                "z" => Ok(Ast::Z),
                "i" => Ok(Ast::I),
                "pi" => Ok(Ast::Pi),
                "exp" => {
                    self.expect(Tok::LParen, "`(` after exp")?;
                    let e = self.expr()?;
                    self.expect(Tok::RParen, "`)`")?;
                    Ok(Ast::Exp(Box::new(e)))
                }
                "e" => {
                    if *self.peek() != Tok::Caret {
                        return Err(Error::SyntaxError {
                            line: t.line,
                            column: t.column,
                            message: "bare `e` is not a value; write exp(1) or e^(...)".into(),
                        });
                    }
                    self.next();
                    let arg = if *self.peek() == Tok::Minus {
                        self.next();
                        Ast::Neg(Box::new(self.atom()?))
                    } else {
                        self.atom()?
                    };
                    Ok(Ast::Exp(Box::new(arg)))
                }
                "f" => self.f_term(),
                _ => Ok(Ast::Param(name)),
            },
            Tok::End => {
                Err(Error::SyntaxError { line: t.line, column: t.column, message: "unexpected end of input".into() })
            }
            other => Err(Error::SyntaxError {
                line: t.line,
                column: t.column,
                message: format!("unexpected {}", describe(&other)),
            }),
        }
    }

    fn f_term(&mut self) -> Result<Ast> {
        let mut dorder = 0u32;
        while *self.peek() == Tok::Prime {
            self.next();
            dorder += 1;
        }
        // f^(k)(...) is a derivative; any other f^... is a power handled by the caller
        if dorder == 0
            && *self.peek() == Tok::Caret
            && *self.peek_at(1) == Tok::LParen
            && matches!(self.peek_at(2), Tok::Int(_))
            && *self.peek_at(3) == Tok::RParen
            && *self.peek_at(4) == Tok::LParen
        {
            self.next();
            self.next();
            let Tok::Int(k) = self.next().tok else { unreachable!() };
            self.next();
            dorder = k.to_u32().ok_or_else(|| self.error_here("derivative order too large"))?;
        }
        let arg = if *self.peek() == Tok::LParen {
            self.next();
            let e = self.expr()?;
            self.expect(Tok::RParen, "`)`")?;
            Some(Box::new(e))
        } else {
            None
        };
        Ok(Ast::F { dorder, arg })
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Int(n) => format!("number `{n}`"),
        Tok::Ident(s) => format!("name `{s}`"),
        Tok::Plus => "`+`".into(),
        Tok::Minus => "`-`".into(),
        Tok::Star => "`*`".into(),
        Tok::Slash => "`/`".into(),
        Tok::Caret => "`^`".into(),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::Prime => "`'`".into(),
        Tok::Equals => "`=`".into(),
        Tok::End => "end of input".into(),
    }
}

fn parser(src: &str, origin: Origin) -> Result<Parser<'_>> {
    Ok(Parser { src, toks: lex(src, origin)?, pos: 0 })
}

fn finish(p: &Parser<'_>) -> Result<()> {
    match p.peek() {
        Tok::End => Ok(()),
        t => Err(p.error_here(format!("unexpected {}", describe(t)))),
    }
}

pub fn parse(src: &str) -> Result<Ast> {
    parse_at(src, Origin::default())
}

pub fn parse_at(src: &str, origin: Origin) -> Result<Ast> {
    let mut p = parser(src, origin)?;
    let e = p.expr()?;
    finish(&p)?;
    Ok(e)
}

/// `lhs = rhs`.
pub fn parse_equation_at(src: &str, origin: Origin) -> Result<(Ast, Ast)> {
    let mut p = parser(src, origin)?;
    let lhs = p.expr()?;
    p.expect(Tok::Equals, "`=` between the two sides")?;
    let rhs = p.expr()?;
    finish(&p)?;
    Ok((lhs, rhs))
}

pub fn parse_equation(src: &str) -> Result<(Ast, Ast)> {
    parse_equation_at(src, Origin::default())
}
