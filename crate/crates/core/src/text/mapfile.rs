use std::collections::BTreeMap;

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::maps::{AffinePolyMap, ProjectiveMap};

use super::expr::{end_of, Parser};
use super::lexer::{syntax, tokenize, Pos, Token};

/// Named maps over a fixed ambient dimension.
///
/// ```text
/// # comment
/// n = 4
/// map a1 = [X0*X2 : X1*X2 : X2^2 : X1*X3 : X2*X4]
/// affine psi = (X1 + X2^2, X2, X3)
/// ```
///
/// Affine maps with `m` components use the variables `X1..Xm`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapFile {
    ambient_n: usize,
    maps: BTreeMap<String, ProjectiveMap>,
    affine: BTreeMap<String, AffinePolyMap>,
}

impl MapFile {
    pub fn new(ambient_n: usize) -> Self {
        MapFile {
            ambient_n,
            maps: BTreeMap::new(),
            affine: BTreeMap::new(),
        }
    }

    pub fn parse(src: &str) -> Result<MapFile> {
        let toks = tokenize(src)?;
        let mut p = Parser::new(&toks, end_of(src));
        let mut file: Option<MapFile> = None;
        while !p.at_end() {
            let pos = p.pos();
            let keyword = match p.bump() {
                Some(Token::Ident(k)) => k.as_str(),
                Some(t) => {
                    return Err(syntax(
                        format!(
                            "expected `n`, `map` or `affine` at start of statement, found `{}`",
                            t.describe()
                        ),
                        pos,
                    ))
                }
                None => unreachable!("checked at_end"),
            };
            match (keyword, file.as_mut()) {
                ("n", None) => {
                    p.expect(&Token::Equals)?;
                    let vpos = p.pos();
                    let n = match p.bump() {
                        Some(Token::Int(v)) => v
                            .to_usize()
                            .filter(|v| (1..=super::lexer::MAX_VARIABLE).contains(v)),
                        _ => None,
                    }
                    .ok_or_else(|| syntax("`n = ` takes an integer in 1..=99", vpos))?;
                    file = Some(MapFile::new(n));
                }
                ("n", Some(_)) => return Err(syntax("duplicate `n = ` header", pos)),
                (_, None) => {
                    return Err(syntax(
                        "map files must start with an `n = <dim>` header",
                        pos,
                    ))
                }
                ("map", Some(f)) => {
                    let (name, npos) = statement_name(&mut p)?;
                    f.check_fresh(&name, npos)?;
                    p.expect(&Token::LBracket)?;
                    let mut comps = vec![p.expr(f.ambient_n)?];
                    while let Some(Token::Colon) = p.peek() {
                        p.bump();
                        comps.push(p.expr(f.ambient_n)?);
                    }
                    p.expect(&Token::RBracket)?;
                    if comps.len() != f.ambient_n + 1 {
                        return Err(syntax(
                            format!(
                                "map `{name}` has {} components; n = {} needs {}",
                                comps.len(),
                                f.ambient_n,
                                f.ambient_n + 1
                            ),
                            npos,
                        ));
                    }
                    let map = ProjectiveMap::new(comps)
                        .map_err(|e| syntax(format!("map `{name}`: {e}"), npos))?;
                    f.maps.insert(name, map);
                }
                ("affine", Some(f)) => {
                    let (name, npos) = statement_name(&mut p)?;
                    f.check_fresh(&name, npos)?;
                    let m = count_tuple(&p);
                    p.expect(&Token::LParen)?;
                    let mut comps = vec![p.expr(m)?];
                    while let Some(Token::Comma) = p.peek() {
                        p.bump();
                        comps.push(p.expr(m)?);
                    }
                    p.expect(&Token::RParen)?;
                    let map = AffinePolyMap::new(comps)
                        .map_err(|e| syntax(format!("affine map `{name}`: {e}"), npos))?;
                    f.affine.insert(name, map);
                }
                (other, Some(_)) => {
                    return Err(syntax(
                        format!("unknown statement `{other}` (expected `map` or `affine`)"),
                        pos,
                    ))
                }
            }
        }
        file.ok_or_else(|| syntax("map files must start with an `n = <dim>` header", p.pos()))
    }

    fn check_fresh(&self, name: &str, pos: Pos) -> Result<()> {
        if self.maps.contains_key(name) || self.affine.contains_key(name) {
            return Err(syntax(format!("duplicate name `{name}`"), pos));
        }
        Ok(())
    }

    pub fn ambient_n(&self) -> usize {
        self.ambient_n
    }

    pub fn map(&self, name: &str) -> Result<&ProjectiveMap> {
        self.maps.get(name).ok_or_else(|| {
            Error::UnknownName(format!(
                "no projective map `{name}` (available: {})",
                self.maps.keys().cloned().collect::<Vec<_>>().join(", ")
            ))
        })
    }

    pub fn affine(&self, name: &str) -> Result<&AffinePolyMap> {
        self.affine.get(name).ok_or_else(|| {
            Error::UnknownName(format!(
                "no affine map `{name}` (available: {})",
                self.affine.keys().cloned().collect::<Vec<_>>().join(", ")
            ))
        })
    }

    pub fn maps(&self) -> &BTreeMap<String, ProjectiveMap> {
        &self.maps
    }

    pub fn affine_maps(&self) -> &BTreeMap<String, AffinePolyMap> {
        &self.affine
    }

    pub fn insert_map(&mut self, name: &str, map: ProjectiveMap) -> Result<()> {
        if map.ambient_n() != self.ambient_n {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_n,
                found: map.ambient_n(),
            });
        }
        self.check_fresh(name, Pos { line: 0, column: 0 })?;
        self.maps.insert(name.to_string(), map);
        Ok(())
    }

    pub fn insert_affine(&mut self, name: &str, map: AffinePolyMap) -> Result<()> {
        self.check_fresh(name, Pos { line: 0, column: 0 })?;
        self.affine.insert(name.to_string(), map);
        Ok(())
    }

    /// Canonical text; parses back to an equal file.
    pub fn to_text(&self) -> String {
        let mut out = format!("n = {}\n", self.ambient_n);
        for (name, f) in &self.maps {
            out.push_str(&format!("map {name} = {}\n", render_map(f)));
        }
        for (name, f) in &self.affine {
            out.push_str(&format!("affine {name} = {}\n", render_affine(f)));
        }
        out
    }
}

pub fn render_map(f: &ProjectiveMap) -> String {
    let parts: Vec<String> = f.components().iter().map(|c| c.to_string()).collect();
    format!("[{}]", parts.join(" : "))
}

pub fn render_affine(f: &AffinePolyMap) -> String {
    let parts: Vec<String> = f.components().iter().map(|c| c.to_string()).collect();
    format!("({})", parts.join(", "))
}

fn statement_name(p: &mut Parser<'_>) -> Result<(String, Pos)> {
    let pos = p.pos();
    let name = match p.bump() {
        Some(Token::Ident(name)) => name.clone(),
        Some(t) => {
            return Err(syntax(
                format!("expected a map name, found `{}`", t.describe()),
                pos,
            ))
        }
        None => return Err(syntax("expected a map name", pos)),
    };
    p.expect(&Token::Equals)?;
    Ok((name, pos))
}

/// Number of top-level entries of the parenthesized tuple at the cursor.
fn count_tuple(p: &Parser<'_>) -> usize {
    let mut depth = 0usize;
    let mut count = 1;
    let mut probe = p.clone();
    while let Some(t) = probe.bump() {
        match t {
            Token::LParen => depth += 1,
            Token::RParen => {
                depth -= 1;
                if depth == 0 {
                    break;
                }
            }
            Token::Comma if depth == 1 => count += 1,
            _ => {}
        }
    }
    count
}
