//! Exact best responses against a mixed strategy, by branch and bound over
//! information-set choices.
//!
//! The bound lets every decision node of the responder pick its best child
//! independently. It is attained whenever the nodes that matter in each
//! information set agree on their choice; otherwise the lowest conflicting
//! information set is fixed to each of its actions in turn.

use crate::error::{Error, Result};
use crate::game::{ExtensiveGame, InfoSetId, NodeId, Player};
use crate::rational::{zero, Rational};
use crate::strategy::{resolve_reduced, BehavioralStrategy, ReducedStrategy};

/// A best response of `p` to `opponent` (a mix of the other player's reduced
/// strategies) and the probability that `p` wins with it.
pub fn best_response(
    g: &ExtensiveGame,
    lambda: &BehavioralStrategy,
    p: Player,
    opponent: &[(ReducedStrategy, Rational)],
) -> Result<(ReducedStrategy, Rational)> {
    let gain = terminal_gain(g, lambda, p, opponent)?;
    let live = live_nodes(g, &gain);
    let mut search = Search {
        g,
        p,
        gain: &gain,
        live: &live,
        decided: vec![None; g.infosets().len()],
        best: None,
    };
    search.branch();
    let (value, decided, chosen) = search.best.expect("the search visits at least one leaf");
    let strategy = resolve_reduced(g, p, |set| Ok(decided[set].or(chosen[set]).unwrap_or(0)))?;
    Ok((strategy, value))
}

/// Probability mass of each terminal under Nature and the opponent's mix,
/// times `p`'s payoff there.
fn terminal_gain(
    g: &ExtensiveGame,
    lambda: &BehavioralStrategy,
    p: Player,
    opponent: &[(ReducedStrategy, Rational)],
) -> Result<Vec<Rational>> {
    let mut gain = vec![zero(); g.len()];
    for (tau, nu) in opponent {
        let mut stack = vec![(g.root(), nu.clone())];
        while let Some((n, mass)) = stack.pop() {
            let Some(set) = g.infoset_of(n) else {
                if g.winner(n) == Some(p) {
                    gain[n] += mass;
                }
                continue;
            };
            let info = g.infoset(set);
            let children = g.children(n);
            if info.player == p {
                for &c in children {
                    stack.push((c, mass.clone()));
                }
            } else if info.player == Player::Nature {
                let d = lambda
                    .at(set)
                    .ok_or_else(|| Error::MissingChance(info.key.to_string()))?;
                for (a, q) in d.iter().enumerate() {
                    if *q > zero() {
                        stack.push((children[a], &mass * q));
                    }
                }
            } else {
                let a = tau.action(set).ok_or_else(|| {
                    Error::Profile(format!(
                        "{} strategy does not cover reachable information set @{}",
                        info.player, info.key
                    ))
                })?;
                stack.push((children[a], mass));
            }
        }
    }
    Ok(gain)
}

/// Nodes with a positive-gain terminal below them.
fn live_nodes(g: &ExtensiveGame, gain: &[Rational]) -> Vec<bool> {
    let mut live: Vec<bool> = gain.iter().map(|x| *x > zero()).collect();
    // Children have larger ids than their parents.
    for n in (1..g.len()).rev() {
        if live[n] {
            let parent = g.node(n).parent.expect("non-root");
            live[parent] = true;
        }
    }
    live
}

type Incumbent = (Rational, Vec<Option<usize>>, Vec<Option<usize>>);

struct Search<'a> {
    g: &'a ExtensiveGame,
    p: Player,
    gain: &'a [Rational],
    live: &'a [bool],
    decided: Vec<Option<usize>>,
    best: Option<Incumbent>,
}

impl Search<'_> {
    fn branch(&mut self) {
        let mut argmax: Vec<usize> = vec![0; self.g.len()];
        let bound = self.relax(self.g.root(), &mut argmax);
        if let Some((value, _, _)) = &self.best {
            if bound <= *value {
                return;
            }
        }
        let (chosen, conflict) = self.collect_choices(&argmax);
        match conflict {
            None => self.best = Some((bound, self.decided.clone(), chosen)),
            Some(set) => {
                for a in 0..self.g.infoset(set).actions.len() {
                    self.decided[set] = Some(a);
                    self.branch();
                }
                self.decided[set] = None;
            }
        }
    }

    /// Upper bound on the gain below `n`; records each responder node's
    /// preferred child.
    fn relax(&self, n: NodeId, argmax: &mut [usize]) -> Rational {
        let Some(set) = self.g.infoset_of(n) else {
            return self.gain[n].clone();
        };
        if !self.live[n] {
            return zero();
        }
        let children = self.g.children(n);
        if self.g.infoset(set).player != self.p {
            return children.iter().map(|&c| self.relax(c, argmax)).sum();
        }
        if let Some(a) = self.decided[set] {
            argmax[n] = a;
            return self.relax(children[a], argmax);
        }
        let mut best: Option<(usize, Rational)> = None;
        for (a, &c) in children.iter().enumerate() {
            let v = self.relax(c, argmax);
            if best.as_ref().is_none_or(|(_, b)| v > *b) {
                best = Some((a, v));
            }
        }
        let (a, v) = best.expect("decision nodes have actions");
        argmax[n] = a;
        v
    }

    /// Choices per information set along the relaxed play, and the lowest
    /// undecided information set whose live members disagree.
    fn collect_choices(&self, argmax: &[usize]) -> (Vec<Option<usize>>, Option<InfoSetId>) {
        let mut chosen: Vec<Option<usize>> = vec![None; self.g.infosets().len()];
        let mut conflict: Option<InfoSetId> = None;
        let mut stack = vec![self.g.root()];
        while let Some(n) = stack.pop() {
            let Some(set) = self.g.infoset_of(n) else {
                continue;
            };
            if !self.live[n] {
                continue;
            }
            let children = self.g.children(n);
            if self.g.infoset(set).player != self.p {
                stack.extend(children.iter().rev());
                continue;
            }
            let a = argmax[n];
            match chosen[set] {
                Some(b) if b != a => {
                    conflict = Some(conflict.map_or(set, |c| c.min(set)));
                }
                _ => chosen[set] = Some(a),
            }
            stack.push(children[a]);
        }
        (chosen, conflict)
    }
}
