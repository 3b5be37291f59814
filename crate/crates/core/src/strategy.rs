//! Reduced pure strategies, mixed strategies, Nature's behavioral strategies
//! and the outcome distributions they induce.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::game::{ExtensiveGame, InfoSetId, NodeId, Player};
use crate::rational::{format_rational, one, ratio, sum, zero, Rational};

pub const DEFAULT_BUDGET: usize = 100_000;

/// A pure strategy restricted to the information sets its owner can reach
/// given its own choices. A strategy defined on every information set of
/// its owner is an ordinary pure strategy.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ReducedStrategy {
    pub player: Player,
    /// `(information set, action index)`, sorted by information set.
    choices: Vec<(InfoSetId, usize)>,
}

pub type PureStrategy = ReducedStrategy;

impl ReducedStrategy {
    pub fn new(player: Player, mut choices: Vec<(InfoSetId, usize)>) -> Self {
        choices.sort_unstable();
        choices.dedup_by_key(|c| c.0);
        ReducedStrategy { player, choices }
    }

    pub fn action(&self, infoset: InfoSetId) -> Option<usize> {
        self.choices
            .binary_search_by_key(&infoset, |c| c.0)
            .ok()
            .map(|i| self.choices[i].1)
    }

    pub fn choices(&self) -> &[(InfoSetId, usize)] {
        &self.choices
    }

    /// Extends to a full pure strategy, using `fill` on information sets
    /// outside the domain.
    pub fn extend(
        &self,
        g: &ExtensiveGame,
        mut fill: impl FnMut(InfoSetId) -> usize,
    ) -> PureStrategy {
        let choices = g
            .information_partition(self.player)
            .into_iter()
            .map(|i| (i, self.action(i).unwrap_or_else(|| fill(i))))
            .collect();
        ReducedStrategy::new(self.player, choices)
    }

    /// One line per information set: `@<key> -> <action>`.
    pub fn lines(&self, g: &ExtensiveGame) -> Vec<String> {
        self.choices
            .iter()
            .map(|&(i, a)| {
                let set = g.infoset(i);
                format!("@{} -> {}", set.key, set.actions[a])
            })
            .collect()
    }

    pub fn describe(&self, g: &ExtensiveGame) -> String {
        self.lines(g).join("; ")
    }
}

/// A finitely supported distribution over reduced strategies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixedStrategy {
    pub player: Player,
    pub support: Vec<(ReducedStrategy, Rational)>,
}

impl MixedStrategy {
    pub fn pure(s: ReducedStrategy) -> Self {
        MixedStrategy {
            player: s.player,
            support: vec![(s, one())],
        }
    }

    /// Merges duplicate strategies, drops zero masses and checks the masses
    /// form a distribution.
    pub fn new(player: Player, entries: Vec<(ReducedStrategy, Rational)>) -> Result<Self> {
        let mut merged: Vec<(ReducedStrategy, Rational)> = Vec::new();
        for (s, p) in entries {
            if s.player != player {
                return Err(Error::Profile(format!(
                    "strategy of {} in a mix for {player}",
                    s.player
                )));
            }
            if p < zero() {
                return Err(Error::Profile(format!(
                    "negative mass {}",
                    format_rational(&p)
                )));
            }
            match merged.iter_mut().find(|(t, _)| *t == s) {
                Some(slot) => slot.1 += p,
                None => merged.push((s, p)),
            }
        }
        let total = sum(merged.iter().map(|(_, p)| p));
        if total != one() {
            return Err(Error::Profile(format!(
                "masses for {player} sum to {}, not 1",
                format_rational(&total)
            )));
        }
        merged.retain(|(_, p)| *p > zero());
        Ok(MixedStrategy {
            player,
            support: merged,
        })
    }

    pub fn uniform(player: Player, strategies: Vec<ReducedStrategy>) -> Self {
        let n = strategies.len() as i64;
        MixedStrategy {
            player,
            support: strategies.into_iter().map(|s| (s, ratio(1, n))).collect(),
        }
    }
}

/// Nature's moves: a distribution over actions at each chance point.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BehavioralStrategy {
    pub dist: BTreeMap<InfoSetId, Vec<Rational>>,
}

impl BehavioralStrategy {
    pub fn at(&self, infoset: InfoSetId) -> Option<&[Rational]> {
        self.dist.get(&infoset).map(Vec::as_slice)
    }

    pub fn probability(&self, node_infoset: InfoSetId, action: usize) -> Option<Rational> {
        self.at(node_infoset).map(|d| d[action].clone())
    }
}

/// The uniform distribution at every chance point.
pub fn uniform_nature(g: &ExtensiveGame) -> BehavioralStrategy {
    let dist = g
        .information_partition(Player::Nature)
        .into_iter()
        .map(|i| {
            let n = g.infoset(i).actions.len() as i64;
            (i, vec![ratio(1, n); n as usize])
        })
        .collect();
    BehavioralStrategy { dist }
}

/// Declared chance probabilities where the game gives them, uniform elsewhere.
pub fn default_nature(g: &ExtensiveGame) -> BehavioralStrategy {
    let mut lambda = uniform_nature(g);
    for (i, d) in lambda.dist.iter_mut() {
        if let Some(p) = g.declared_chance(*i) {
            *d = p.to_vec();
        }
    }
    lambda
}

/// All reduced strategies of `p` in deterministic order: depth-first over the
/// lowest-numbered undecided reachable information set, actions in order.
pub fn enumerate_reduced(
    g: &ExtensiveGame,
    p: Player,
    budget: usize,
) -> Result<Vec<ReducedStrategy>> {
    let mut out = Vec::new();
    walk_reduced(g, p, &mut |s| {
        if out.len() >= budget {
            return Err(Error::BudgetExceeded {
                player: p.to_string(),
                count: out.len() + 1,
                budget,
            });
        }
        out.push(s);
        Ok(())
    })?;
    Ok(out)
}

/// Number of reduced strategies of `p`, counting up to `limit`.
pub fn count_reduced(g: &ExtensiveGame, p: Player, limit: usize) -> Result<usize> {
    let mut n = 0usize;
    walk_reduced(g, p, &mut |_| {
        n += 1;
        if n > limit {
            return Err(Error::BudgetExceeded {
                player: p.to_string(),
                count: n,
                budget: limit,
            });
        }
        Ok(())
    })?;
    Ok(n)
}

#[derive(Clone)]
struct Frontier {
    choices: Vec<(InfoSetId, usize)>,
    decided: BTreeMap<InfoSetId, usize>,
    pending: BTreeMap<InfoSetId, Vec<NodeId>>,
}

fn walk_reduced(
    g: &ExtensiveGame,
    p: Player,
    emit: &mut dyn FnMut(ReducedStrategy) -> Result<()>,
) -> Result<()> {
    let mut f = Frontier {
        choices: Vec::new(),
        decided: BTreeMap::new(),
        pending: BTreeMap::new(),
    };
    expand(g, p, &mut f, g.root());
    recurse(g, p, f, emit)
}

fn expand(g: &ExtensiveGame, p: Player, f: &mut Frontier, start: NodeId) {
    let mut stack = vec![start];
    while let Some(n) = stack.pop() {
        let Some(set) = g.infoset_of(n) else { continue };
        let children = g.children(n);
        if g.infoset(set).player != p {
            stack.extend(children.iter().rev());
        } else if let Some(&a) = f.decided.get(&set) {
            stack.push(children[a]);
        } else {
            f.pending.entry(set).or_default().push(n);
        }
    }
}

fn recurse(
    g: &ExtensiveGame,
    p: Player,
    mut f: Frontier,
    emit: &mut dyn FnMut(ReducedStrategy) -> Result<()>,
) -> Result<()> {
    let Some((set, nodes)) = f.pending.pop_first() else {
        return emit(ReducedStrategy::new(p, f.choices));
    };
    let actions = g.infoset(set).actions.len();
    for a in 0..actions {
        let mut next = if a + 1 == actions {
            std::mem::replace(
                &mut f,
                Frontier {
                    choices: Vec::new(),
                    decided: BTreeMap::new(),
                    pending: BTreeMap::new(),
                },
            )
        } else {
            f.clone()
        };
        next.choices.push((set, a));
        next.decided.insert(set, a);
        for &n in &nodes {
            expand(g, p, &mut next, g.children(n)[a]);
        }
        recurse(g, p, next, emit)?;
    }
    Ok(())
}

/// The reduced strategy that plays `choose(set)` at every information set of
/// `p` reachable under its own earlier choices.
pub fn resolve_reduced(
    g: &ExtensiveGame,
    p: Player,
    mut choose: impl FnMut(InfoSetId) -> Result<usize>,
) -> Result<ReducedStrategy> {
    let mut chosen: BTreeMap<InfoSetId, usize> = BTreeMap::new();
    let mut stack = vec![g.root()];
    while let Some(n) = stack.pop() {
        let Some(set) = g.infoset_of(n) else { continue };
        let children = g.children(n);
        if g.infoset(set).player != p {
            stack.extend(children.iter().rev());
            continue;
        }
        let a = match chosen.get(&set) {
            Some(&a) => a,
            None => {
                let a = choose(set)?;
                if a >= children.len() {
                    return Err(Error::Invalid(format!("action {a} out of range")));
                }
                chosen.insert(set, a);
                a
            }
        };
        stack.push(children[a]);
    }
    Ok(ReducedStrategy::new(p, chosen.into_iter().collect()))
}

/// True iff every move of `sigma`'s owner on the way to `node` is the one
/// `sigma` prescribes.
pub fn follows(g: &ExtensiveGame, node: NodeId, sigma: &ReducedStrategy) -> bool {
    g.path(node).into_iter().all(|(mover, action)| {
        let set = g.infoset_of(mover).expect("decision node");
        g.infoset(set).player != sigma.player || sigma.action(set) == Some(action)
    })
}

/// Terminal nodes reached with positive probability, with their probabilities.
pub fn outcome_distribution(
    g: &ExtensiveGame,
    lambda: &BehavioralStrategy,
    sigma: &ReducedStrategy,
    tau: &ReducedStrategy,
) -> Result<Vec<(NodeId, Rational)>> {
    let mut out = Vec::new();
    let mut stack = vec![(g.root(), one())];
    while let Some((n, mass)) = stack.pop() {
        let Some(set) = g.infoset_of(n) else {
            out.push((n, mass));
            continue;
        };
        let info = g.infoset(set);
        let children = g.children(n);
        match info.player {
            Player::Nature => {
                let d = lambda
                    .at(set)
                    .ok_or_else(|| Error::MissingChance(info.key.to_string()))?;
                for (a, p) in d.iter().enumerate().rev() {
                    if *p > zero() {
                        stack.push((children[a], &mass * p));
                    }
                }
            }
            player => {
                let s = if player == Player::Eloise { sigma } else { tau };
                let a = s.action(set).ok_or_else(|| {
                    Error::Profile(format!(
                        "{player} strategy does not cover reachable information set @{}",
                        info.key
                    ))
                })?;
                stack.push((children[a], mass));
            }
        }
    }
    out.sort_by_key(|(n, _)| *n);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::build_semantic_game;
    use crate::parser::formula::parse_formula;
    use crate::structure::Structure;

    fn mp(n: usize) -> ExtensiveGame {
        let phi = parse_formula("forall x (exists y/{x}) x = y").unwrap();
        build_semantic_game(&Structure::numbered(n), &phi)
            .unwrap()
            .game
    }

    #[test]
    fn matching_pennies_has_two_strategies_each() {
        let g = mp(2);
        let e = enumerate_reduced(&g, Player::Eloise, 10).unwrap();
        assert_eq!(e.len(), 2);
        assert_eq!(e[0].lines(&g), vec!["@/0 -> 1"]);
        assert_eq!(e[1].lines(&g), vec!["@/0 -> 2"]);
        assert_eq!(enumerate_reduced(&g, Player::Abelard, 10).unwrap().len(), 2);
    }

    #[test]
    fn budget_is_enforced() {
        let g = mp(3);
        assert!(matches!(
            enumerate_reduced(&g, Player::Eloise, 2),
            Err(Error::BudgetExceeded {
                count: 3,
                budget: 2,
                ..
            })
        ));
        assert_eq!(count_reduced(&g, Player::Eloise, 10).unwrap(), 3);
    }

    #[test]
    fn player_without_moves_has_one_empty_strategy() {
        let phi = parse_formula("exists x x = x").unwrap();
        let g = build_semantic_game(&Structure::numbered(2), &phi)
            .unwrap()
            .game;
        let a = enumerate_reduced(&g, Player::Abelard, 10).unwrap();
        assert_eq!(a.len(), 1);
        assert!(a[0].choices().is_empty());
        assert!(g.terminals().all(|t| follows(&g, t, &a[0])));
    }

    #[test]
    fn outcome_of_deterministic_play_is_a_point_mass() {
        let g = mp(2);
        let e = enumerate_reduced(&g, Player::Eloise, 10).unwrap();
        let a = enumerate_reduced(&g, Player::Abelard, 10).unwrap();
        let lambda = uniform_nature(&g);
        assert!(lambda.dist.is_empty());
        let d = outcome_distribution(&g, &lambda, &e[0], &a[1]).unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].1, one());
        assert!(follows(&g, d[0].0, &e[0]) && follows(&g, d[0].0, &a[1]));
        assert!(!follows(&g, d[0].0, &e[1]));
    }

    #[test]
    fn stochastic_outcome_masses() {
        let phi = parse_formula("forall x (exists y/{x}) chance z x = y = z").unwrap();
        let g = build_semantic_game(&Structure::numbered(2), &phi)
            .unwrap()
            .game;
        let mut lambda = uniform_nature(&g);
        for d in lambda.dist.values_mut() {
            *d = vec![ratio(1, 3), ratio(2, 3)];
        }
        let e = enumerate_reduced(&g, Player::Eloise, 10).unwrap();
        let a = enumerate_reduced(&g, Player::Abelard, 10).unwrap();
        let d = outcome_distribution(&g, &lambda, &e[0], &a[0]).unwrap();
        let masses: Vec<_> = d.iter().map(|(_, p)| p.clone()).collect();
        assert_eq!(masses, vec![ratio(1, 3), ratio(2, 3)]);
        assert!(matches!(
            outcome_distribution(&g, &BehavioralStrategy::default(), &e[0], &a[0]),
            Err(Error::MissingChance(_))
        ));
    }

    #[test]
    fn mixed_strategy_validation() {
        let g = mp(2);
        let e = enumerate_reduced(&g, Player::Eloise, 10).unwrap();
        let m = MixedStrategy::new(
            Player::Eloise,
            vec![
                (e[0].clone(), ratio(1, 4)),
                (e[0].clone(), ratio(1, 4)),
                (e[1].clone(), ratio(1, 2)),
            ],
        )
        .unwrap();
        assert_eq!(m.support.len(), 2);
        assert!(MixedStrategy::new(Player::Eloise, vec![(e[0].clone(), ratio(1, 2))]).is_err());
        assert!(MixedStrategy::new(Player::Abelard, vec![(e[0].clone(), one())]).is_err());
    }
}
