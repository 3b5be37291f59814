//! `.nat` files: Nature's behavioral strategy for a semantic game.
//!
//! ```text
//! z: 1 -> 1/3, 2 -> 2/3
//! t | x=1 : 1 -> 1, 2 -> 0 ; t | x=2 : 1 -> 1/2, 2 -> 1/2
//! @/0/1 : left -> 1/4, right -> 3/4
//! ```
//!
//! A rule targets the chance quantifier over a variable, or a chance
//! disjunction by occurrence, optionally guarded by values of variables
//! assigned earlier. Rules are separated by newlines or `;`. At each chance
//! point the applicable rule with the most guard conditions wins; points no
//! rule covers are uniform. Values a rule leaves out get mass 0.

use crate::error::{Error, ParseError, Result};
use crate::formula::{Formula, OccurrenceId};
use crate::game::{Player, SemanticGame};
use crate::parser::lexer::{tokenize, Cursor, Tok};
use crate::rational::{format_rational, one, sum, zero, Rational};
use crate::strategy::{uniform_nature, BehavioralStrategy};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Target {
    Var(String),
    Occurrence(OccurrenceId),
}

#[derive(Debug, Clone)]
struct Rule {
    line: usize,
    target: Target,
    guard: Vec<(String, String)>,
    masses: Vec<(String, Rational)>,
}

fn parse_rules(src: &str) -> Result<Vec<Rule>, ParseError> {
    let mut cur = Cursor::new(tokenize(src, true)?);
    let mut rules = Vec::new();
    loop {
        while cur.eat(&Tok::Newline) || cur.eat(&Tok::Semi) {}
        if cur.at_end() {
            return Ok(rules);
        }
        let line = cur.pos().line;
        let target = if cur.eat(&Tok::At) {
            Target::Occurrence(cur.occurrence()?)
        } else {
            Target::Var(cur.ident("a variable or `@occurrence`")?)
        };
        let mut guard = Vec::new();
        if cur.eat(&Tok::Pipe) {
            loop {
                let var = cur.ident("a guard variable")?;
                cur.expect(&Tok::Eq)?;
                let value = cur.name("an element")?;
                guard.push((var, value));
                if !(cur.eat(&Tok::Comma) || cur.eat(&Tok::And)) {
                    break;
                }
            }
        }
        cur.expect(&Tok::Colon)?;
        let mut masses = Vec::new();
        loop {
            let value = cur.name("a value")?;
            cur.expect(&Tok::Arrow)?;
            let p = cur.rational()?;
            masses.push((value, p));
            if !cur.eat(&Tok::Comma) {
                break;
            }
        }
        if !matches!(cur.peek(), Tok::Newline | Tok::Semi | Tok::Eof) {
            return Err(cur.unexpected("expected `,`, `;` or end of line"));
        }
        rules.push(Rule {
            line,
            target,
            guard,
            masses,
        });
    }
}

/// Nature's strategy for `g` described by `src`; chance points no rule
/// covers get the uniform distribution.
pub fn parse_nature_strategy(src: &str, g: &SemanticGame) -> Result<BehavioralStrategy> {
    let rules = parse_rules(src)?;
    let m = &g.structure;
    // Per-rule checks that do not depend on a chance point.
    for r in &rules {
        let err = |msg: String| Error::Nature(format!("line {}: {msg}", r.line));
        let sites: Vec<usize> = (0..g.game.len())
            .filter(|&n| {
                g.game.player(n) == Some(Player::Nature) && matches_target(g, n, &r.target)
            })
            .collect();
        if sites.is_empty() {
            return Err(err(match &r.target {
                Target::Var(v) => format!("no chance quantifier binds `{v}`"),
                Target::Occurrence(o) => format!("no chance disjunction at {o}"),
            }));
        }
        let actions = &g
            .game
            .infoset(g.game.infoset_of(sites[0]).expect("decision"))
            .actions;
        for (value, p) in &r.masses {
            if !actions.contains(value) {
                return Err(err(format!("`{value}` is not an available choice")));
            }
            if *p < zero() {
                return Err(err(format!("negative probability {}", format_rational(p))));
            }
        }
        for (i, (value, _)) in r.masses.iter().enumerate() {
            if r.masses[..i].iter().any(|(v, _)| v == value) {
                return Err(err(format!("`{value}` listed twice")));
            }
        }
        let total = sum(r.masses.iter().map(|(_, p)| p));
        if total != one() {
            return Err(err(format!(
                "probabilities sum to {}, not 1",
                format_rational(&total)
            )));
        }
        for (var, value) in &r.guard {
            if m.element(value).is_none() {
                return Err(err(format!("`{value}` is not an element of the universe")));
            }
            if let Some(&n) = sites.iter().find(|&&n| g.assignment(n).get(var).is_none()) {
                return Err(err(format!(
                    "guard variable `{var}` is not yet assigned at {}",
                    g.node_label(n)
                )));
            }
        }
    }

    let mut lambda = uniform_nature(&g.game);
    for (&set, dist) in lambda.dist.iter_mut() {
        let n = g.game.infoset(set).members[0];
        let s = g.assignment(n);
        let applicable: Vec<&Rule> = rules
            .iter()
            .filter(|r| matches_target(g, n, &r.target))
            .filter(|r| r.guard.iter().all(|(v, e)| s.get(v) == m.element(e)))
            .collect();
        let Some(most) = applicable.iter().map(|r| r.guard.len()).max() else {
            continue;
        };
        let top: Vec<&&Rule> = applicable
            .iter()
            .filter(|r| r.guard.len() == most)
            .collect();
        let actions = &g.game.infoset(set).actions;
        let resolve = |r: &Rule| -> Vec<Rational> {
            actions
                .iter()
                .map(|a| {
                    r.masses
                        .iter()
                        .find(|(v, _)| v == a)
                        .map_or_else(zero, |(_, p)| p.clone())
                })
                .collect()
        };
        let chosen = resolve(top[0]);
        if let Some(other) = top[1..].iter().find(|r| resolve(r) != chosen) {
            return Err(Error::Nature(format!(
                "lines {} and {} give different distributions at {}",
                top[0].line,
                other.line,
                g.node_label(n)
            )));
        }
        *dist = chosen;
    }
    Ok(lambda)
}

fn matches_target(g: &SemanticGame, n: usize, target: &Target) -> bool {
    match (target, g.subformula(n)) {
        (Target::Var(v), Formula::Chance { var, .. }) => v == var,
        (Target::Occurrence(o), Formula::ChanceOr { .. }) => g.occurrence(n) == o,
        _ => false,
    }
}
