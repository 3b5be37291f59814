//! Graphviz export of game trees.

use std::fmt::Write;

use crate::game::extensive::{ExtensiveGame, NodeId, Player};
use crate::game::semantic::SemanticGame;
use crate::rational::{format_rational, Rational};

/// Renders `g` as a DOT digraph. Chance edges carry `prob(node, action)` when
/// known and the placeholder `p` otherwise; information sets with two or more
/// members become dotted same-rank clusters.
pub fn export_dot(
    g: &ExtensiveGame,
    label: impl Fn(NodeId) -> String,
    prob: impl Fn(NodeId, usize) -> Option<Rational>,
) -> String {
    let mut out = String::from("digraph game {\n  node [shape=ellipse];\n");
    for n in 0..g.len() {
        let text = escape(&label(n));
        let _ = match g.winner(n) {
            Some(Player::Eloise) => writeln!(
                out,
                "  n{n} [label=\"{text}\", shape=box, style=filled, fillcolor=lightgray];"
            ),
            Some(_) => writeln!(out, "  n{n} [label=\"{text}\", shape=box];"),
            None if g.player(n) == Some(Player::Nature) => {
                writeln!(out, "  n{n} [label=\"{text}\", shape=diamond];")
            }
            None => writeln!(out, "  n{n} [label=\"{text}\"];"),
        };
    }
    for n in 0..g.len() {
        let nature = g.player(n) == Some(Player::Nature);
        for (a, &c) in g.children(n).iter().enumerate() {
            let mut edge = escape(g.action_name(n, a));
            if nature {
                let p = prob(n, a).map_or_else(|| "p".to_string(), |p| format_rational(&p));
                edge = format!("{edge} : {p}");
            }
            let _ = writeln!(out, "  n{n} -> n{c} [label=\"{edge}\"];");
        }
    }
    for (i, set) in g.infosets().iter().enumerate() {
        if set.members.len() < 2 {
            continue;
        }
        let members: Vec<String> = set.members.iter().map(|m| format!("n{m};")).collect();
        let _ = writeln!(
            out,
            "  subgraph cluster_info{i} {{ style=dotted; rank=same; label=\"{}\"; {} }}",
            escape(&set.key.to_string()),
            members.join(" ")
        );
    }
    out.push_str("}\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

impl ExtensiveGame {
    /// DOT text using information-set labels and declared chance probabilities.
    pub fn to_dot(&self) -> String {
        export_dot(
            self,
            |n| match self.winner(n) {
                Some(w) => format!("{} wins", w.symbol()),
                None => {
                    let set = self.infoset(self.infoset_of(n).expect("decision"));
                    format!("{} {}", set.player.symbol(), set.key)
                }
            },
            |n, a| {
                let set = self.infoset_of(n)?;
                self.declared_chance(set).map(|p| p[a].clone())
            },
        )
    }
}

impl SemanticGame {
    /// DOT text; chance edges are labeled from `prob` when given.
    pub fn to_dot(&self, prob: Option<&dyn Fn(NodeId, usize) -> Option<Rational>>) -> String {
        export_dot(
            &self.game,
            |n| self.node_label(n),
            |n, a| prob.and_then(|f| f(n, a)),
        )
    }
}
