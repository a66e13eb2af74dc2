use num_bigint::BigInt;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Token {
    Var(usize),
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Colon,
    Comma,
    Equals,
}

impl Token {
    pub fn describe(&self) -> String {
        match self {
            Token::Var(i) => format!("X{i}"),
            Token::Int(v) => v.to_string(),
            Token::Ident(s) => s.clone(),
            Token::Plus => "+".into(),
            Token::Minus => "-".into(),
            Token::Star => "*".into(),
            Token::Slash => "/".into(),
            Token::Caret => "^".into(),
            Token::LParen => "(".into(),
            Token::RParen => ")".into(),
            Token::LBracket => "[".into(),
            Token::RBracket => "]".into(),
            Token::Colon => ":".into(),
            Token::Comma => ",".into(),
            Token::Equals => "=".into(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub column: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Spanned {
    pub token: Token,
    pub pos: Pos,
}

pub fn syntax(message: impl Into<String>, pos: Pos) -> Error {
    Error::Syntax {
        message: message.into(),
        line: pos.line,
        column: pos.column,
    }
}

/// Highest variable index the grammar accepts.
pub const MAX_VARIABLE: usize = 99;

pub fn tokenize(src: &str) -> Result<Vec<Spanned>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let mut line = 1;
    let mut col = 1;
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, column: col };
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
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let single = match c {
            '+' => Some(Token::Plus),
            '-' => Some(Token::Minus),
            '*' => Some(Token::Star),
            '/' => Some(Token::Slash),
            '^' => Some(Token::Caret),
            '(' => Some(Token::LParen),
            ')' => Some(Token::RParen),
            '[' => Some(Token::LBracket),
            ']' => Some(Token::RBracket),
            ':' => Some(Token::Colon),
            ',' => Some(Token::Comma),
            '=' => Some(Token::Equals),
            _ => None,
        };
        if let Some(token) = single {
            out.push(Spanned { token, pos });
            i += 1;
            col += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            if i < chars.len() && (chars[i].is_alphabetic() || chars[i] == '_') {
                return Err(syntax(
                    "implicit multiplication is not allowed; write `*` between factors",
                    Pos {
                        line,
                        column: col + (i - start),
                    },
                ));
            }
            let digits: String = chars[start..i].iter().collect();
            out.push(Spanned {
                token: Token::Int(digits.parse().expect("ascii digits")),
                pos,
            });
            col += i - start;
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            col += i - start;
            let token = match variable_index(&word) {
                Some(Ok(idx)) => Token::Var(idx),
                Some(Err(())) => {
                    return Err(syntax(
                        format!("variable `{word}` is outside X0..X{MAX_VARIABLE}"),
                        pos,
                    ))
                }
                None => Token::Ident(word),
            };
            out.push(Spanned { token, pos });
            continue;
        }
        return Err(syntax(format!("unexpected character `{c}`"), pos));
    }
    Ok(out)
}

fn variable_index(word: &str) -> Option<std::result::Result<usize, ()>> {
    let digits = word.strip_prefix('X')?;
    if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    if digits.len() > 1 && digits.starts_with('0') {
        return Some(Err(()));
    }
    match digits.parse::<usize>() {
        Ok(v) if v <= MAX_VARIABLE => Some(Ok(v)),
        _ => Some(Err(())),
    }
}
