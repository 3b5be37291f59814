//! `.prof` files: mixed strategies for both players.
//!
//! ```text
//! eloise 1/2:
//!   @/0 -> 1
//!   @/0/0/0[x=1,y=1,z=1] -> left
//!   @/0/0/0 -> right
//! eloise 1/2:
//!   ...
//! abelard:
//!   @/0/0/0/1[z=x,x!=y] -> left
//! ```
//!
//! Each block is one reduced strategy with its mass (default 1); `I` and `II`
//! may stand for `eloise` and `abelard`. A rule `@selector[constraints] ->
//! action` applies to the information sets at the selector (an occurrence
//! path, or a declared label in hand-built games) whose visible values satisfy
//! every constraint: `v=e` (an element), `v=w` and `v!=w` (variables). At each
//! reachable information set the applicable rule with the most constraints
//! decides. Strategy listings are valid profile rules.

use crate::error::{Error, ParseError, Result};
use crate::game::{ExtensiveGame, InfoKey, InfoSet, Player};
use crate::parser::lexer::{tokenize, Cursor, Tok};
use crate::rational::{one, Rational};
use crate::strategy::{count_reduced, enumerate_reduced, resolve_reduced, MixedStrategy};
use crate::structure::Structure;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Profile {
    pub eloise: MixedStrategy,
    pub abelard: MixedStrategy,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Constraint {
    Eq(String, String),
    Ne(String, String),
}

#[derive(Debug, Clone)]
struct Rule {
    line: usize,
    selector: String,
    constraints: Vec<Constraint>,
    action: String,
}

#[derive(Debug, Clone)]
struct Block {
    line: usize,
    player: Player,
    mass: Rational,
    rules: Vec<Rule>,
}

fn parse_blocks(src: &str) -> Result<Vec<Block>, ParseError> {
    let mut cur = Cursor::new(tokenize(src, true)?);
    let mut blocks: Vec<Block> = Vec::new();
    loop {
        cur.skip_newlines();
        if cur.at_end() {
            return Ok(blocks);
        }
        let line = cur.pos().line;
        if cur.eat(&Tok::At) {
            let Some(block) = blocks.last_mut() else {
                return Err(ParseError::new(
                    cur.pos(),
                    "rule before any `eloise:` or `abelard:` header",
                ));
            };
            let mut selector = String::new();
            loop {
                match cur.peek().clone() {
                    Tok::Slash => selector.push('/'),
                    Tok::Ident(s) | Tok::Number(s) | Tok::Quoted(s) => selector.push_str(&s),
                    _ => break,
                }
                cur.bump();
            }
            if selector.is_empty() {
                return Err(cur.unexpected("expected an information set selector"));
            }
            let mut constraints = Vec::new();
            if cur.eat(&Tok::LBracket) && !cur.eat(&Tok::RBracket) {
                loop {
                    let var = cur.ident("a variable")?;
                    let c = if cur.eat(&Tok::Eq) {
                        Constraint::Eq(var, cur.name("an element or variable")?)
                    } else if cur.eat(&Tok::Ne) {
                        Constraint::Ne(var, cur.name("a variable")?)
                    } else {
                        return Err(cur.unexpected("expected `=` or `!=`"));
                    };
                    constraints.push(c);
                    if !cur.eat(&Tok::Comma) {
                        break;
                    }
                }
                cur.expect(&Tok::RBracket)?;
            }
            cur.expect(&Tok::Arrow)?;
            let action = cur.name("an action")?;
            block.rules.push(Rule {
                line,
                selector,
                constraints,
                action,
            });
        } else {
            let who = cur.ident("a player header or a rule")?;
            let player = match who.as_str() {
                "eloise" | "I" => Player::Eloise,
                "abelard" | "II" => Player::Abelard,
                _ => {
                    return Err(ParseError::new(
                        cur.pos(),
                        format!("unknown player `{who}`"),
                    ))
                }
            };
            let mass = if matches!(cur.peek(), Tok::Colon) {
                one()
            } else {
                cur.rational()?
            };
            cur.expect(&Tok::Colon)?;
            blocks.push(Block {
                line,
                player,
                mass,
                rules: Vec::new(),
            });
        }
        if !matches!(cur.peek(), Tok::Newline | Tok::Eof) {
            return Err(cur.unexpected("expected end of line"));
        }
    }
}

fn selector_of(key: &InfoKey) -> String {
    match key {
        InfoKey::Label(l) => l.clone(),
        InfoKey::Occurrence { occurrence, .. } => occurrence.to_string(),
    }
}

/// Whether `rule` covers `set`. A constraint on a variable the mover cannot
/// see never holds.
fn applies(rule: &Rule, set: &InfoSet, m: Option<&Structure>) -> bool {
    if selector_of(&set.key) != rule.selector {
        return false;
    }
    let visible: &[(String, String)] = match &set.key {
        InfoKey::Occurrence { visible, .. } => visible,
        InfoKey::Label(_) => &[],
    };
    let value = |v: &str| {
        visible
            .iter()
            .find(|(w, _)| w == v)
            .map(|(_, e)| e.as_str())
    };
    let is_element = |e: &str| m.is_some_and(|m| m.element(e).is_some());
    rule.constraints.iter().all(|c| match c {
        Constraint::Eq(v, rhs) => match value(v) {
            None => false,
            Some(x) if is_element(rhs) => x == rhs,
            Some(x) => value(rhs) == Some(x),
        },
        Constraint::Ne(v, w) => match (value(v), value(w)) {
            (Some(x), Some(y)) => x != y,
            _ => false,
        },
    })
}

/// Parses a profile for `g`; `m` is the structure of a semantic game, used to
/// tell elements from variables in constraints.
pub fn parse_profile(src: &str, g: &ExtensiveGame, m: Option<&Structure>) -> Result<Profile> {
    let blocks = parse_blocks(src)?;
    let mut mixes: [Vec<(crate::strategy::ReducedStrategy, Rational)>; 2] =
        [Vec::new(), Vec::new()];
    for b in &blocks {
        for r in &b.rules {
            let hit = g
                .infosets()
                .iter()
                .any(|s| s.player == b.player && selector_of(&s.key) == r.selector);
            if !hit {
                return Err(Error::Profile(format!(
                    "line {}: {} has no information set at `{}`",
                    r.line, b.player, r.selector
                )));
            }
        }
        let strategy = resolve_reduced(g, b.player, |set| {
            let info = g.infoset(set);
            let applicable: Vec<&Rule> = b.rules.iter().filter(|r| applies(r, info, m)).collect();
            let Some(most) = applicable.iter().map(|r| r.constraints.len()).max() else {
                return Err(Error::Profile(format!(
                    "block at line {}: no rule for reachable information set @{}",
                    b.line, info.key
                )));
            };
            let top: Vec<&&Rule> = applicable
                .iter()
                .filter(|r| r.constraints.len() == most)
                .collect();
            if let Some(other) = top.iter().find(|r| r.action != top[0].action) {
                return Err(Error::Profile(format!(
                    "lines {} and {} choose different actions at @{}",
                    top[0].line, other.line, info.key
                )));
            }
            info.actions
                .iter()
                .position(|a| *a == top[0].action)
                .ok_or_else(|| {
                    Error::Profile(format!(
                        "line {}: `{}` is not an action at @{}",
                        top[0].line, top[0].action, info.key
                    ))
                })
        })?;
        let i = if b.player == Player::Eloise { 0 } else { 1 };
        mixes[i].push((strategy, b.mass.clone()));
    }
    let [e, a] = mixes;
    Ok(Profile {
        eloise: finish(g, Player::Eloise, e)?,
        abelard: finish(g, Player::Abelard, a)?,
    })
}

fn finish(
    g: &ExtensiveGame,
    p: Player,
    entries: Vec<(crate::strategy::ReducedStrategy, Rational)>,
) -> Result<MixedStrategy> {
    if !entries.is_empty() {
        return MixedStrategy::new(p, entries);
    }
    match count_reduced(g, p, 1) {
        Ok(1) => Ok(MixedStrategy::pure(enumerate_reduced(g, p, 1)?.remove(0))),
        _ => Err(Error::Profile(format!("no strategy given for {p}"))),
    }
}
