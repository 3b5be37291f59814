//! `.struct` files:
//!
//! ```text
//! universe 1 2
//! rel Awake/2: (1,1) (2,1) (2,2)
//! const monday = 1
//! fun next/1: (1)->2, (2)->1
//! ```

use crate::error::{Error, ParseError, Position, Result};
use crate::parser::lexer::{tokenize, Cursor, Tok};
use crate::structure::Structure;

pub fn parse_structure(src: &str) -> Result<Structure> {
    let mut cur = Cursor::new(tokenize(src, true)?);
    let mut m: Option<Structure> = None;
    cur.skip_newlines();
    while !cur.at_end() {
        let pos = cur.pos();
        let keyword = cur.ident("`universe`, `rel`, `const` or `fun`")?;
        match keyword.as_str() {
            "universe" => {
                if m.is_some() {
                    return Err(ParseError::new(pos, "universe declared twice").into());
                }
                let mut names = Vec::new();
                while !matches!(cur.peek(), Tok::Newline | Tok::Eof) {
                    names.push(cur.name("an element name")?);
                }
                m = Some(Structure::new(&names).map_err(|e| at(pos, e))?);
            }
            "rel" | "const" | "fun" => {
                let Some(m) = m.as_mut() else {
                    return Err(ParseError::new(pos, "`universe` must come first").into());
                };
                match keyword.as_str() {
                    "rel" => relation(&mut cur, m, pos)?,
                    "const" => {
                        let name = cur.name("a constant name")?;
                        cur.expect(&Tok::Eq)?;
                        let value = cur.name("an element name")?;
                        m.add_constant(&name, &value).map_err(|e| at(pos, e))?;
                    }
                    _ => function(&mut cur, m, pos)?,
                }
            }
            other => {
                return Err(ParseError::new(pos, format!("unknown declaration `{other}`")).into())
            }
        }
        if !matches!(cur.peek(), Tok::Newline | Tok::Eof) {
            return Err(cur.unexpected("expected end of line").into());
        }
        cur.skip_newlines();
    }
    m.ok_or_else(|| Error::Structure("missing `universe` declaration".into()))
}

fn at(pos: Position, e: Error) -> Error {
    match e {
        Error::Structure(msg) => Error::Structure(format!("{pos}: {msg}")),
        other => other,
    }
}

fn arity(cur: &mut Cursor) -> Result<usize> {
    cur.expect(&Tok::Slash)?;
    match cur.peek().clone() {
        Tok::Number(n) => {
            let pos = cur.pos();
            cur.bump();
            n.parse()
                .map_err(|_| ParseError::new(pos, "arity too large").into())
        }
        _ => Err(cur.unexpected("expected an arity").into()),
    }
}

fn tuple(cur: &mut Cursor) -> Result<Vec<String>> {
    cur.expect(&Tok::LParen)?;
    let mut items = Vec::new();
    if cur.eat(&Tok::RParen) {
        return Ok(items);
    }
    loop {
        items.push(cur.name("an element name")?);
        if cur.eat(&Tok::RParen) {
            return Ok(items);
        }
        cur.expect(&Tok::Comma)?;
    }
}

fn relation(cur: &mut Cursor, m: &mut Structure, pos: Position) -> Result<()> {
    let name = cur.ident("a relation name")?;
    let k = arity(cur)?;
    cur.expect(&Tok::Colon)?;
    let mut tuples = Vec::new();
    while cur.peek() == &Tok::LParen {
        tuples.push(tuple(cur)?);
        cur.eat(&Tok::Comma);
    }
    m.add_relation(&name, k, &tuples).map_err(|e| at(pos, e))
}

fn function(cur: &mut Cursor, m: &mut Structure, pos: Position) -> Result<()> {
    let name = cur.ident("a function name")?;
    let k = arity(cur)?;
    cur.expect(&Tok::Colon)?;
    let mut graph = Vec::new();
    while cur.peek() == &Tok::LParen {
        let args = tuple(cur)?;
        cur.expect(&Tok::Arrow)?;
        let value = cur.name("an element name")?;
        graph.push((args, value));
        if !cur.eat(&Tok::Comma) {
            break;
        }
    }
    m.add_function(&name, k, &graph).map_err(|e| at(pos, e))
}
