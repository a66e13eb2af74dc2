use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::error::Result;
use crate::poly::{Polynomial, Rational};

use super::lexer::{syntax, tokenize, Pos, Spanned, Token};

/// Recursive-descent parser over a token stream.
#[derive(Clone)]
pub(crate) struct Parser<'a> {
    toks: &'a [Spanned],
    at: usize,
    end: Pos,
}

impl<'a> Parser<'a> {
    pub(crate) fn new(toks: &'a [Spanned], end: Pos) -> Self {
        Parser { toks, at: 0, end }
    }

    pub(crate) fn peek(&self) -> Option<&'a Token> {
        self.toks.get(self.at).map(|s| &s.token)
    }

    pub(crate) fn pos(&self) -> Pos {
        self.toks.get(self.at).map_or(self.end, |s| s.pos)
    }

    pub(crate) fn at_end(&self) -> bool {
        self.at >= self.toks.len()
    }

    pub(crate) fn bump(&mut self) -> Option<&'a Token> {
        let t = self.peek();
        if t.is_some() {
            self.at += 1;
        }
        t
    }

    pub(crate) fn expect(&mut self, want: &Token) -> Result<()> {
        match self.peek() {
            Some(t) if t == want => {
                self.at += 1;
                Ok(())
            }
            Some(t) => Err(syntax(
                format!("expected `{}`, found `{}`", want.describe(), t.describe()),
                self.pos(),
            )),
            None => Err(syntax(
                format!("expected `{}`, found end of input", want.describe()),
                self.pos(),
            )),
        }
    }

    pub(crate) fn expr(&mut self, n: usize) -> Result<Polynomial> {
        let mut acc = self.term(n)?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.at += 1;
                    acc = &acc + &self.term(n)?;
                }
                Some(Token::Minus) => {
                    self.at += 1;
                    acc = &acc - &self.term(n)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self, n: usize) -> Result<Polynomial> {
        let mut acc = self.unary(n)?;
        while let Some(Token::Star) = self.peek() {
            self.at += 1;
            acc = &acc * &self.unary(n)?;
        }
        Ok(acc)
    }

    fn unary(&mut self, n: usize) -> Result<Polynomial> {
        match self.peek() {
            Some(Token::Minus) => {
                self.at += 1;
                Ok(-&self.unary(n)?)
            }
            Some(Token::Plus) => {
                self.at += 1;
                self.unary(n)
            }
            _ => self.power(n),
        }
    }

    fn power(&mut self, n: usize) -> Result<Polynomial> {
        let (base, fraction) = self.atom(n)?;
        if let Some(Token::Caret) = self.peek() {
            let caret = self.pos();
            if fraction {
                return Err(syntax(
                    "parenthesize a p/q literal before raising it to a power",
                    caret,
                ));
            }
            self.at += 1;
            let pos = self.pos();
            return match self.bump() {
                Some(Token::Int(k)) => {
                    let k = k
                        .to_u32()
                        .ok_or_else(|| syntax(format!("exponent {k} is too large"), pos))?;
                    Ok(base.pow(k))
                }
                Some(Token::Minus) => Err(syntax(
                    "negative exponent: `^` takes a non-negative integer literal",
                    pos,
                )),
                Some(t) => Err(syntax(
                    format!(
                        "`^` takes a non-negative integer literal, found `{}`",
                        t.describe()
                    ),
                    pos,
                )),
                None => Err(syntax("expected an exponent after `^`", pos)),
            };
        }
        Ok(base)
    }

    /// The parsed atom and whether it was a `p/q` literal.
    fn atom(&mut self, n: usize) -> Result<(Polynomial, bool)> {
        let pos = self.pos();
        match self.bump() {
            Some(Token::Var(i)) => {
                if *i > n {
                    return Err(syntax(
                        format!("variable X{i} is out of range for n = {n} (X0..X{n})"),
                        pos,
                    ));
                }
                Ok((Polynomial::var(n, *i), false))
            }
            Some(Token::Int(p)) => {
                if let Some(Token::Slash) = self.peek() {
                    self.at += 1;
                    let qpos = self.pos();
                    let q: &BigInt = match self.bump() {
                        Some(Token::Int(q)) => q,
                        _ => {
                            return Err(syntax(
                                "`/` is only allowed between integer literals (p/q)",
                                qpos,
                            ))
                        }
                    };
                    if q.is_zero() {
                        return Err(syntax("zero denominator", qpos));
                    }
                    let c = Rational::new(p.clone(), q.clone());
                    return Ok((Polynomial::constant(n, c), true));
                }
                Ok((
                    Polynomial::constant(n, Rational::from_integer(p.clone())),
                    false,
                ))
            }
            Some(Token::LParen) => {
                let inner = self.expr(n)?;
                self.expect(&Token::RParen)?;
                Ok((inner, false))
            }
            Some(t) => Err(syntax(
                format!(
                    "expected a variable, number or `(`, found `{}`",
                    t.describe()
                ),
                pos,
            )),
            None => Err(syntax("unexpected end of input", pos)),
        }
    }
}

pub(crate) fn end_of(src: &str) -> Pos {
    let line = src.matches('\n').count() + 1;
    let column = src.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    Pos { line, column }
}

/// Parses an expression in `X0..Xn`.
pub fn parse_polynomial(src: &str, n: usize) -> Result<Polynomial> {
    let toks = tokenize(src)?;
    let mut p = Parser::new(&toks, end_of(src));
    if p.at_end() {
        return Err(syntax("empty expression", p.pos()));
    }
    let out = p.expr(n)?;
    if !p.at_end() {
        let t = p.peek().expect("not at end");
        return Err(syntax(
            format!("unexpected `{}` after expression", t.describe()),
            p.pos(),
        ));
    }
    Ok(out)
}
