//! `.game` files: one node per line, children indented below their parent.
//!
//! ```text
//! player=II info=root
//!   action=1 player=I info=a
//!     action=1 win=I
//! ```
//!
//! Keys: `player=<I|II|chance>`, `info=<label>`, `action=<name>`, `p=<p/q>`
//! (chance children only) and `win=<I|II>` (leaves only). Nodes without an
//! `info` label form singleton information sets named by their action path.

use std::collections::HashMap;

use crate::error::{Error, ParseError, Position, Result};
use crate::game::{ExtensiveGame, GameBuilder, Player};
use crate::rational::parse_rational;

pub fn parse_extensive_game(src: &str) -> Result<ExtensiveGame> {
    let mut b = GameBuilder::new();
    // (indentation, node id, is leaf)
    let mut stack: Vec<(usize, usize, bool)> = Vec::new();
    let mut seen_root = false;
    let mut child_indent: HashMap<usize, usize> = HashMap::new();
    for (i, raw) in src.lines().enumerate() {
        let line_no = i + 1;
        let text = raw.split('#').next().unwrap_or("");
        if text.trim().is_empty() {
            continue;
        }
        let indent = text.len() - text.trim_start().len();
        if text[..indent].contains('\t') {
            return Err(syntax(line_no, 1, "tabs are not allowed in indentation"));
        }
        let mut player = None;
        let mut label = None;
        let mut action = None;
        let mut prob = None;
        let mut win = None;
        let mut column = indent + 1;
        for field in text[indent..].split(' ') {
            if field.is_empty() {
                column += 1;
                continue;
            }
            let Some((key, value)) = field.split_once('=') else {
                return Err(syntax(
                    line_no,
                    column,
                    format!("expected key=value, found `{field}`"),
                ));
            };
            let dup = match key {
                "player" => player
                    .replace(parse_player(value, true, line_no, column)?)
                    .is_some(),
                "info" => label.replace(value.to_string()).is_some(),
                "action" => action.replace(value.to_string()).is_some(),
                "p" => {
                    let p = parse_rational(value).ok_or_else(|| {
                        syntax(line_no, column, format!("invalid probability `{value}`"))
                    })?;
                    prob.replace(p).is_some()
                }
                "win" => win
                    .replace(parse_player(value, false, line_no, column)?)
                    .is_some(),
                other => return Err(syntax(line_no, column, format!("unknown key `{other}`"))),
            };
            if dup {
                return Err(syntax(line_no, column, format!("duplicate key `{key}`")));
            }
            if value.is_empty() {
                return Err(syntax(line_no, column, format!("empty value for `{key}`")));
            }
            column += field.chars().count() + 1;
        }
        while stack.last().is_some_and(|&(d, _, _)| d >= indent) {
            stack.pop();
        }
        let parent = match stack.last() {
            Some(&(_, id, leaf)) => {
                if leaf {
                    return Err(game_error(
                        line_no,
                        "unreachable node: its parent is a leaf",
                    ));
                }
                match child_indent.get(&id) {
                    Some(&c) if c != indent => {
                        return Err(game_error(
                            line_no,
                            "inconsistent indentation among siblings",
                        ))
                    }
                    _ => {
                        child_indent.insert(id, indent);
                    }
                }
                Some(id)
            }
            None if seen_root => {
                return Err(game_error(
                    line_no,
                    "unreachable node: a game has a single root",
                ))
            }
            None => None,
        };
        if parent.is_none() && action.is_some() {
            return Err(game_error(line_no, "the root has no action"));
        }
        seen_root = true;
        let id = b
            .add(parent, player, label, action, prob, win)
            .map_err(|e| relabel(line_no, e))?;
        stack.push((indent, id, win.is_some()));
    }
    b.build()
}

fn parse_player(value: &str, chance_ok: bool, line: usize, column: usize) -> Result<Player> {
    match value {
        "I" => Ok(Player::Eloise),
        "II" => Ok(Player::Abelard),
        "chance" if chance_ok => Ok(Player::Nature),
        other => Err(syntax(line, column, format!("unknown player `{other}`"))),
    }
}

fn syntax(line: usize, column: usize, msg: impl Into<String>) -> Error {
    ParseError::new(Position { line, column }, msg).into()
}

fn game_error(line: usize, msg: &str) -> Error {
    Error::Game(format!("line {line}: {msg}"))
}

fn relabel(line: usize, e: Error) -> Error {
    match e {
        Error::Game(msg) => Error::Game(format!("line {line}: {msg}")),
        other => other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn single_node() {
        let g = parse_extensive_game("win=I\n").unwrap();
        assert_eq!(g.len(), 1);
        assert_eq!(g.winner(0), Some(Player::Eloise));
    }

    #[test]
    fn chance_root() {
        let g = parse_extensive_game(
            "player=chance\n  action=h p=1/3 win=I\n  action=t p=2/3 win=II\n",
        )
        .unwrap();
        assert_eq!(g.declared_chance(0), Some(&[ratio(1, 3), ratio(2, 3)][..]));
    }

    #[test]
    fn differing_action_sets() {
        let src = "player=II\n  action=l player=I info=i\n    action=a win=I\n    action=b win=II\n  action=r player=I info=i\n    action=a win=I\n    action=c win=II\n";
        let err = parse_extensive_game(src).unwrap_err();
        assert!(err.to_string().contains("differing action sets"), "{err}");
    }

    #[test]
    fn errors() {
        let cases = [
            (
                "player=chance\n  action=h p=1/2 win=I\n  action=t p=1/3 win=II\n",
                "sum",
            ),
            ("win=I\n  action=x win=II\n", "unreachable"),
            ("win=I\nwin=II\n", "single root"),
            ("player=I\n  action=a\n", "no winner"),
            (
                "player=I\n  action=a win=I\n  action=a win=II\n",
                "duplicate action",
            ),
            ("player=III\n", "unknown player"),
            ("player=I colour=red\n", "unknown key"),
            (
                "player=I\n    action=a win=I\n  action=b win=II\n",
                "inconsistent indentation",
            ),
            ("player=I\n  action=a p=1/2 win=I\n", "non-chance"),
        ];
        for (src, needle) in cases {
            let err = parse_extensive_game(src).unwrap_err().to_string();
            assert!(err.contains(needle), "{src:?}: {err}");
        }
    }
}
