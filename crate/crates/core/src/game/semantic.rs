//! The semantic game of a sentence on a finite structure.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::formula::{free_variables, occurrences, Formula, OccurrenceId, SlashSet};
use crate::game::extensive::{
    ExtensiveGame, InfoKey, InfoSet, Node, NodeContent, NodeId, Player, DEFAULT_NODE_CAP,
};
use crate::structure::{eval_literal, suitable, Assignment, Elem, Structure};

#[derive(Debug, Clone)]
pub struct SemanticGame {
    pub game: ExtensiveGame,
    pub formula: Formula,
    pub structure: Structure,
    /// Occurrence ids in preorder.
    pub occurrences: Vec<OccurrenceId>,
    node_occurrence: Vec<usize>,
    node_assignment: Vec<Assignment>,
}

/// Number of nodes of the game tree: 1 per literal, `1 + |L| + |R|` per
/// binary node, `1 + n * |body|` per quantifier over a universe of size `n`.
pub fn tree_size(phi: &Formula, universe: usize) -> u128 {
    match phi {
        Formula::Lit(_) => 1,
        Formula::Or { left, right, .. }
        | Formula::And { left, right, .. }
        | Formula::ChanceOr { left, right } => 1u128
            .saturating_add(tree_size(left, universe).saturating_add(tree_size(right, universe))),
        Formula::Exists { body, .. }
        | Formula::Forall { body, .. }
        | Formula::Chance { body, .. } => {
            1u128.saturating_add((universe as u128).saturating_mul(tree_size(body, universe)))
        }
    }
}

pub fn build_semantic_game(m: &Structure, phi: &Formula) -> Result<SemanticGame> {
    build_semantic_game_capped(m, phi, DEFAULT_NODE_CAP)
}

pub fn build_semantic_game_capped(
    m: &Structure,
    phi: &Formula,
    node_cap: usize,
) -> Result<SemanticGame> {
    let free = free_variables(phi);
    if !free.is_empty() {
        return Err(Error::NotASentence(free.into_iter().collect()));
    }
    suitable(m, phi).map_err(Error::Unsuitable)?;
    let size = tree_size(phi, m.size());
    if size > node_cap as u128 {
        return Err(Error::NodeCapExceeded {
            count: usize::try_from(size).unwrap_or(usize::MAX),
            cap: node_cap,
        });
    }
    let occurrences: Vec<OccurrenceId> = occurrences(phi).into_iter().map(|(id, _)| id).collect();
    let occ_index: HashMap<OccurrenceId, usize> = occurrences
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, id)| (id, i))
        .collect();
    let mut b = Builder {
        m,
        occ_index: &occ_index,
        nodes: Vec::with_capacity(size as usize),
        node_occurrence: Vec::with_capacity(size as usize),
        node_assignment: Vec::with_capacity(size as usize),
        infosets: Vec::new(),
        infoset_occurrence: Vec::new(),
        groups: HashMap::new(),
    };
    b.build(phi, OccurrenceId::root(), None, None, Assignment::empty())?;

    // Order information sets by occurrence, then by first member.
    let mut order: Vec<usize> = (0..b.infosets.len()).collect();
    order.sort_by_key(|&i| (b.infoset_occurrence[i], b.infosets[i].members[0]));
    let mut remap = vec![0; order.len()];
    for (new, &old) in order.iter().enumerate() {
        remap[old] = new;
    }
    let mut infosets: Vec<Option<InfoSet>> = b.infosets.into_iter().map(Some).collect();
    let infosets: Vec<InfoSet> = order
        .iter()
        .map(|&old| infosets[old].take().expect("each set moved once"))
        .collect();
    let mut nodes = b.nodes;
    for node in &mut nodes {
        if let NodeContent::Decision { infoset, .. } = &mut node.content {
            *infoset = remap[*infoset];
        }
    }
    let chance = vec![None; infosets.len()];
    let game = ExtensiveGame::new(nodes, infosets, chance)?;
    Ok(SemanticGame {
        game,
        formula: phi.clone(),
        structure: m.clone(),
        occurrences,
        node_occurrence: b.node_occurrence,
        node_assignment: b.node_assignment,
    })
}

struct Builder<'a> {
    m: &'a Structure,
    occ_index: &'a HashMap<OccurrenceId, usize>,
    nodes: Vec<Node>,
    node_occurrence: Vec<usize>,
    node_assignment: Vec<Assignment>,
    infosets: Vec<InfoSet>,
    infoset_occurrence: Vec<usize>,
    groups: HashMap<(usize, Vec<Elem>), usize>,
}

impl Builder<'_> {
    fn build(
        &mut self,
        phi: &Formula,
        id: OccurrenceId,
        parent: Option<NodeId>,
        action: Option<usize>,
        s: Assignment,
    ) -> Result<NodeId> {
        let node = self.nodes.len();
        let occ = self.occ_index[&id];
        self.nodes.push(Node {
            parent,
            action,
            content: NodeContent::Terminal {
                winner: Player::Nature,
            },
        });
        self.node_occurrence.push(occ);
        self.node_assignment.push(s.clone());

        let (player, actions): (Player, Vec<String>) = match phi {
            Formula::Lit(lit) => {
                let winner = if eval_literal(self.m, &s, lit)? {
                    Player::Eloise
                } else {
                    Player::Abelard
                };
                self.nodes[node].content = NodeContent::Terminal { winner };
                return Ok(node);
            }
            Formula::Or { .. } => (Player::Eloise, binary_actions()),
            Formula::And { .. } => (Player::Abelard, binary_actions()),
            Formula::ChanceOr { .. } => (Player::Nature, binary_actions()),
            Formula::Exists { .. } => (Player::Eloise, self.m.universe().to_vec()),
            Formula::Forall { .. } => (Player::Abelard, self.m.universe().to_vec()),
            Formula::Chance { .. } => (Player::Nature, self.m.universe().to_vec()),
        };
        let empty = SlashSet::new();
        let slash = phi.slash().unwrap_or(&empty);
        let infoset = self.infoset_for(node, occ, &id, player, slash, &s, actions);

        let mut children = Vec::new();
        match phi {
            Formula::Or { left, right, .. }
            | Formula::And { left, right, .. }
            | Formula::ChanceOr { left, right } => {
                children.push(self.build(left, id.child(0), Some(node), Some(0), s.clone())?);
                children.push(self.build(right, id.child(1), Some(node), Some(1), s)?);
            }
            Formula::Exists { var, body, .. }
            | Formula::Forall { var, body, .. }
            | Formula::Chance { var, body } => {
                for (i, e) in self.m.elements().enumerate() {
                    let child =
                        self.build(body, id.child(0), Some(node), Some(i), s.bind(var, e))?;
                    children.push(child);
                }
            }
            Formula::Lit(_) => unreachable!(),
        }
        self.nodes[node].content = NodeContent::Decision { infoset, children };
        Ok(node)
    }

    #[allow(clippy::too_many_arguments)]
    fn infoset_for(
        &mut self,
        node: NodeId,
        occ: usize,
        id: &OccurrenceId,
        player: Player,
        slash: &SlashSet,
        s: &Assignment,
        actions: Vec<String>,
    ) -> usize {
        let visible: Vec<(&str, Elem)> = s
            .current()
            .into_iter()
            .filter(|(v, _)| player == Player::Nature || !slash.contains(*v))
            .collect();
        let key = InfoKey::Occurrence {
            occurrence: id.clone(),
            visible: visible
                .iter()
                .map(|(v, e)| (v.to_string(), self.m.name(*e).to_string()))
                .collect(),
        };
        if player != Player::Nature {
            let group = (occ, visible.iter().map(|(_, e)| *e).collect::<Vec<_>>());
            if let Some(&set) = self.groups.get(&group) {
                self.infosets[set].members.push(node);
                return set;
            }
            self.groups.insert(group, self.infosets.len());
        }
        self.infosets.push(InfoSet {
            player,
            key,
            members: vec![node],
            actions,
        });
        self.infoset_occurrence.push(occ);
        self.infosets.len() - 1
    }
}

fn binary_actions() -> Vec<String> {
    vec!["left".to_string(), "right".to_string()]
}

impl SemanticGame {
    pub fn occurrence(&self, node: NodeId) -> &OccurrenceId {
        &self.occurrences[self.node_occurrence[node]]
    }

    /// Preorder index of the node's occurrence.
    pub fn occurrence_index(&self, node: NodeId) -> usize {
        self.node_occurrence[node]
    }

    pub fn assignment(&self, node: NodeId) -> &Assignment {
        &self.node_assignment[node]
    }

    pub fn subformula(&self, node: NodeId) -> &Formula {
        self.formula
            .at(self.occurrence(node))
            .expect("occurrence of this formula")
    }

    pub fn winner(&self, node: NodeId) -> Result<Player> {
        self.game.winner(node).ok_or(Error::NotTerminal)
    }

    /// The moves of a history: `(x,a)` for variable moves and the chosen
    /// occurrence for connective moves.
    pub fn moves(&self, node: NodeId) -> Vec<String> {
        self.game
            .path(node)
            .into_iter()
            .map(|(mover, action)| match self.subformula(mover) {
                Formula::Exists { var, .. }
                | Formula::Forall { var, .. }
                | Formula::Chance { var, .. } => {
                    format!("({var},{})", self.game.action_name(mover, action))
                }
                _ => self.occurrence(mover).child(action as u8).to_string(),
            })
            .collect()
    }

    /// Nodes at a given occurrence, in id order.
    pub fn nodes_at(&self, id: &OccurrenceId) -> Vec<NodeId> {
        (0..self.game.len())
            .filter(|&n| self.occurrence(n) == id)
            .collect()
    }

    /// Text label of a node: owner or winner, occurrence, current assignment.
    pub fn node_label(&self, node: NodeId) -> String {
        let who = match self.game.winner(node) {
            Some(w) => format!("{} wins", w.symbol()),
            None => self
                .game
                .player(node)
                .expect("decision")
                .symbol()
                .to_string(),
        };
        let s = self.assignment(node).display(&self.structure);
        if s.is_empty() {
            format!("{who} {}", self.occurrence(node))
        } else {
            format!("{who} {} [{s}]", self.occurrence(node))
        }
    }
}
