//! Explicit finite extensive games with imperfect information, chance moves and
//! win-lose outcomes.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::formula::OccurrenceId;
use crate::rational::{one, sum, zero, Rational};

pub const DEFAULT_NODE_CAP: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Player {
    Eloise,
    Abelard,
    Nature,
}

impl Player {
    pub fn opponent(self) -> Player {
        match self {
            Player::Eloise => Player::Abelard,
            Player::Abelard => Player::Eloise,
            Player::Nature => Player::Nature,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Player::Eloise => "E",
            Player::Abelard => "A",
            Player::Nature => "N",
        }
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Player::Eloise => "eloise",
            Player::Abelard => "abelard",
            Player::Nature => "nature",
        })
    }
}

pub type NodeId = usize;
pub type InfoSetId = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NodeContent {
    /// `children[i]` is reached by the `i`-th action of the node's information set.
    Decision {
        infoset: InfoSetId,
        children: Vec<NodeId>,
    },
    Terminal {
        winner: Player,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Node {
    pub parent: Option<NodeId>,
    /// Index of the action leading here from the parent.
    pub action: Option<usize>,
    pub content: NodeContent,
}

/// How an information set is identified in strategy listings and profiles.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum InfoKey {
    /// A declared label (hand-built games).
    Label(String),
    /// An occurrence together with the values the mover can see.
    Occurrence {
        occurrence: OccurrenceId,
        visible: Vec<(String, String)>,
    },
}

impl fmt::Display for InfoKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InfoKey::Label(l) => f.write_str(l),
            InfoKey::Occurrence {
                occurrence,
                visible,
            } => {
                write!(f, "{occurrence}")?;
                if !visible.is_empty() {
                    let parts: Vec<String> =
                        visible.iter().map(|(v, e)| format!("{v}={e}")).collect();
                    write!(f, "[{}]", parts.join(","))?;
                }
                Ok(())
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InfoSet {
    pub player: Player,
    pub key: InfoKey,
    /// Member nodes in increasing id order.
    pub members: Vec<NodeId>,
    pub actions: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensiveGame {
    nodes: Vec<Node>,
    infosets: Vec<InfoSet>,
    /// Declared chance probabilities per information set (hand-built games).
    chance: Vec<Option<Vec<Rational>>>,
}

impl ExtensiveGame {
    /// Assembles a game from nodes in preorder (root first) and information
    /// sets; validates structural invariants and sorts nothing.
    pub fn new(
        nodes: Vec<Node>,
        infosets: Vec<InfoSet>,
        chance: Vec<Option<Vec<Rational>>>,
    ) -> Result<Self> {
        let g = ExtensiveGame {
            nodes,
            infosets,
            chance,
        };
        g.validate()?;
        Ok(g)
    }

    fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Game(msg));
        if self.nodes.is_empty() {
            return bad("empty game".into());
        }
        if self.chance.len() != self.infosets.len() {
            return bad("chance table does not match information sets".into());
        }
        for (id, node) in self.nodes.iter().enumerate() {
            if (id == 0) != node.parent.is_none() {
                return bad(format!("node {id} has an inconsistent parent"));
            }
            if let NodeContent::Decision { infoset, children } = &node.content {
                let Some(set) = self.infosets.get(*infoset) else {
                    return bad(format!("node {id} refers to a missing information set"));
                };
                if !set.members.contains(&id) {
                    return bad(format!("node {id} is not listed in its information set"));
                }
                if children.len() != set.actions.len() || children.is_empty() {
                    return bad(format!("node {id} does not match its action set"));
                }
                for (a, &c) in children.iter().enumerate() {
                    let child = &self.nodes[c];
                    if child.parent != Some(id) || child.action != Some(a) {
                        return bad(format!("node {c} has an inconsistent parent"));
                    }
                }
            }
        }
        for (i, set) in self.infosets.iter().enumerate() {
            if set.members.is_empty() {
                return bad(format!("information set {} is empty", set.key));
            }
            if set.player == Player::Nature && set.members.len() != 1 {
                return bad(format!(
                    "chance information set {} is not a singleton",
                    set.key
                ));
            }
            for &m in &set.members {
                if self.infoset_of(m) != Some(i) || self.player(m) != Some(set.player) {
                    return bad(format!("information set {} has a stray member", set.key));
                }
            }
            if let Some(probs) = &self.chance[i] {
                if set.player != Player::Nature || probs.len() != set.actions.len() {
                    return bad(format!("bad chance probabilities at {}", set.key));
                }
                if probs.iter().any(|p| *p < zero()) || sum(probs) != one() {
                    return bad(format!(
                        "chance probabilities at {} do not form a distribution",
                        set.key
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn root(&self) -> NodeId {
        0
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn node(&self, id: NodeId) -> &Node {
        &self.nodes[id]
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn infosets(&self) -> &[InfoSet] {
        &self.infosets
    }

    pub fn infoset(&self, id: InfoSetId) -> &InfoSet {
        &self.infosets[id]
    }

    pub fn declared_chance(&self, id: InfoSetId) -> Option<&[Rational]> {
        self.chance[id].as_deref()
    }

    pub fn infoset_of(&self, node: NodeId) -> Option<InfoSetId> {
        match &self.nodes[node].content {
            NodeContent::Decision { infoset, .. } => Some(*infoset),
            NodeContent::Terminal { .. } => None,
        }
    }

    pub fn player(&self, node: NodeId) -> Option<Player> {
        self.infoset_of(node).map(|i| self.infosets[i].player)
    }

    pub fn children(&self, node: NodeId) -> &[NodeId] {
        match &self.nodes[node].content {
            NodeContent::Decision { children, .. } => children,
            NodeContent::Terminal { .. } => &[],
        }
    }

    pub fn winner(&self, node: NodeId) -> Option<Player> {
        match &self.nodes[node].content {
            NodeContent::Terminal { winner } => Some(*winner),
            NodeContent::Decision { .. } => None,
        }
    }

    pub fn is_terminal(&self, node: NodeId) -> bool {
        self.winner(node).is_some()
    }

    pub fn terminals(&self) -> impl Iterator<Item = NodeId> + '_ {
        (0..self.nodes.len()).filter(|&n| self.is_terminal(n))
    }

    /// Information sets owned by `p`, in game order.
    pub fn information_partition(&self, p: Player) -> Vec<InfoSetId> {
        (0..self.infosets.len())
            .filter(|&i| self.infosets[i].player == p)
            .collect()
    }

    /// Moves from the root to `node`, as (mover node, action index).
    pub fn path(&self, node: NodeId) -> Vec<(NodeId, usize)> {
        let mut out = Vec::new();
        let mut cur = node;
        while let (Some(parent), Some(action)) = (self.nodes[cur].parent, self.nodes[cur].action) {
            out.push((parent, action));
            cur = parent;
        }
        out.reverse();
        out
    }

    pub fn action_name(&self, node: NodeId, action: usize) -> &str {
        let set = self.infoset_of(node).expect("decision node");
        &self.infosets[set].actions[action]
    }

    /// True if `ancestor` lies on the path from the root to `node` (inclusive).
    pub fn is_prefix(&self, ancestor: NodeId, node: NodeId) -> bool {
        let mut cur = Some(node);
        while let Some(n) = cur {
            if n == ancestor {
                return true;
            }
            cur = self.nodes[n].parent;
        }
        false
    }

    /// Number of full pure strategies of `p`: the product of action counts.
    pub fn pure_strategy_count(&self, p: Player) -> num_bigint::BigUint {
        self.information_partition(p)
            .into_iter()
            .map(|i| num_bigint::BigUint::from(self.infosets[i].actions.len()))
            .product()
    }
}

/// Incremental construction of a hand-built game from labeled nodes.
#[derive(Debug, Default)]
pub struct GameBuilder {
    nodes: Vec<PendingNode>,
}

#[derive(Debug)]
struct PendingNode {
    parent: Option<usize>,
    player: Option<Player>,
    label: Option<String>,
    action: Option<String>,
    probability: Option<Rational>,
    winner: Option<Player>,
    children: Vec<usize>,
}

impl GameBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a node; nodes must arrive in preorder with the root first.
    #[allow(clippy::too_many_arguments)]
    pub fn add(
        &mut self,
        parent: Option<usize>,
        player: Option<Player>,
        label: Option<String>,
        action: Option<String>,
        probability: Option<Rational>,
        winner: Option<Player>,
    ) -> Result<usize> {
        let id = self.nodes.len();
        match parent {
            None if id != 0 => return Err(Error::Game("a game has a single root".into())),
            Some(p) if p >= id => {
                return Err(Error::Game("nodes must be listed in preorder".into()))
            }
            _ => {}
        }
        if parent.is_some() && action.is_none() {
            return Err(Error::Game(format!("node {id} needs an action name")));
        }
        if let Some(p) = parent {
            let siblings = &self.nodes[p].children;
            if siblings.iter().any(|&s| self.nodes[s].action == action) {
                return Err(Error::Game(format!(
                    "duplicate action `{}` below one node",
                    action.unwrap_or_default()
                )));
            }
            if self.nodes[p].winner.is_some() {
                return Err(Error::Game("a terminal node cannot have children".into()));
            }
            self.nodes[p].children.push(id);
        }
        self.nodes.push(PendingNode {
            parent,
            player,
            label,
            action,
            probability,
            winner,
            children: Vec::new(),
        });
        Ok(id)
    }

    pub fn build(self) -> Result<ExtensiveGame> {
        if self.nodes.is_empty() {
            return Err(Error::Game("empty game".into()));
        }
        let mut infosets: Vec<InfoSet> = Vec::new();
        let mut chance: Vec<Option<Vec<Rational>>> = Vec::new();
        let mut by_label: HashMap<String, InfoSetId> = HashMap::new();
        let mut node_set = vec![None; self.nodes.len()];
        for (id, n) in self.nodes.iter().enumerate() {
            if n.children.is_empty() {
                if n.winner.is_none() {
                    return Err(Error::Game(format!(
                        "leaf {} has no winner",
                        self.describe(id)
                    )));
                }
                if n.winner == Some(Player::Nature) {
                    return Err(Error::Game("Nature cannot win".into()));
                }
                continue;
            }
            if n.winner.is_some() {
                return Err(Error::Game(format!(
                    "node {} has both children and a winner",
                    self.describe(id)
                )));
            }
            let player = n.player.ok_or_else(|| {
                Error::Game(format!("decision node {} has no player", self.describe(id)))
            })?;
            let label = n.label.clone().unwrap_or_else(|| self.describe(id));
            let actions: Vec<String> = n
                .children
                .iter()
                .map(|&c| self.nodes[c].action.clone().expect("child action"))
                .collect();
            let set = match by_label.get(&label) {
                Some(&s) => {
                    let existing = &infosets[s];
                    if existing.player != player {
                        return Err(Error::Game(format!(
                            "information set `{label}` has members owned by different players"
                        )));
                    }
                    let mut a = existing.actions.clone();
                    let mut b = actions.clone();
                    a.sort();
                    b.sort();
                    if a != b {
                        return Err(Error::Game(format!(
                            "information set `{label}` has members with differing action sets"
                        )));
                    }
                    if player == Player::Nature {
                        return Err(Error::Game(format!(
                            "chance information set `{label}` must be a singleton"
                        )));
                    }
                    infosets[s].members.push(id);
                    s
                }
                None => {
                    let s = infosets.len();
                    by_label.insert(label.clone(), s);
                    infosets.push(InfoSet {
                        player,
                        key: InfoKey::Label(label.clone()),
                        members: vec![id],
                        actions: actions.clone(),
                    });
                    chance.push(None);
                    s
                }
            };
            node_set[id] = Some(set);
            if player == Player::Nature {
                let probs: Vec<Option<Rational>> = n
                    .children
                    .iter()
                    .map(|&c| self.nodes[c].probability.clone())
                    .collect();
                if probs.iter().all(Option::is_some) {
                    let probs: Vec<Rational> = probs.into_iter().map(Option::unwrap).collect();
                    if probs.iter().any(|p| *p < zero()) {
                        return Err(Error::Game(format!(
                            "negative chance probability below {}",
                            self.describe(id)
                        )));
                    }
                    if sum(&probs) != one() {
                        return Err(Error::Game(format!(
                            "chance probabilities below {} sum to {}, not 1",
                            self.describe(id),
                            crate::rational::format_rational(&sum(&probs))
                        )));
                    }
                    chance[set] = Some(probs);
                } else if probs.iter().any(Option::is_some) {
                    return Err(Error::Game(format!(
                        "chance node {} gives probabilities for some actions only",
                        self.describe(id)
                    )));
                }
            } else if n
                .children
                .iter()
                .any(|&c| self.nodes[c].probability.is_some())
            {
                return Err(Error::Game(format!(
                    "probabilities below non-chance node {}",
                    self.describe(id)
                )));
            }
        }
        let nodes = self
            .nodes
            .iter()
            .enumerate()
            .map(|(id, n)| {
                let action = n.parent.map(|p| {
                    let set = node_set[p].expect("parent is a decision node");
                    let name = n.action.as_ref().expect("child action");
                    infosets[set]
                        .actions
                        .iter()
                        .position(|a| a == name)
                        .expect("validated action")
                });
                let content = match node_set[id] {
                    Some(set) => {
                        let mut children = vec![0; n.children.len()];
                        for &c in &n.children {
                            let name = self.nodes[c].action.as_ref().expect("child action");
                            let idx = infosets[set]
                                .actions
                                .iter()
                                .position(|a| a == name)
                                .expect("validated action");
                            children[idx] = c;
                        }
                        NodeContent::Decision {
                            infoset: set,
                            children,
                        }
                    }
                    None => NodeContent::Terminal {
                        winner: n.winner.expect("validated leaf"),
                    },
                };
                Node {
                    parent: n.parent,
                    action,
                    content,
                }
            })
            .collect();
        ExtensiveGame::new(nodes, infosets, chance)
    }

    /// Path label of a node: its action names from the root, e.g. `/1/2`.
    fn describe(&self, id: usize) -> String {
        let mut parts = Vec::new();
        let mut cur = id;
        while let Some(p) = self.nodes[cur].parent {
            parts.push(self.nodes[cur].action.clone().unwrap_or_default());
            cur = p;
        }
        if parts.is_empty() {
            return "/".into();
        }
        parts.reverse();
        format!("/{}", parts.join("/"))
    }
}
