//! Win probabilities of a fixed profile conditioned on an event.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::formula::{Formula, Term};
use crate::game::{ExtensiveGame, NodeId, Player, SemanticGame};
use crate::rational::{zero, Rational};
use crate::strategy::{outcome_distribution, BehavioralStrategy, MixedStrategy};
use crate::structure::{eval_literal, Assignment};

/// A quantifier-free condition on the final assignment of a play. A play on
/// which one of its variables is unassigned fails the event.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EventPredicate {
    formula: Formula,
    text: String,
    negated: bool,
}

impl EventPredicate {
    pub fn new(formula: Formula, text: &str) -> Self {
        EventPredicate {
            formula,
            text: text.to_string(),
            negated: false,
        }
    }

    /// Every play.
    pub fn always() -> Self {
        let t = crate::formula::Literal::neg(crate::formula::Atom::Falsum);
        EventPredicate::new(Formula::lit(t), "true")
    }

    /// The complementary event.
    pub fn complement(&self) -> Self {
        EventPredicate {
            negated: !self.negated,
            ..self.clone()
        }
    }

    pub fn text(&self) -> String {
        if self.negated {
            format!("not ({})", self.text)
        } else {
            self.text.clone()
        }
    }

    /// Whether the play ending at `node` belongs to the event.
    pub fn holds(&self, g: &SemanticGame, node: NodeId) -> bool {
        self.negated != holds(&self.formula, g, g.assignment(node))
    }
}

fn holds(phi: &Formula, g: &SemanticGame, s: &Assignment) -> bool {
    match phi {
        Formula::Lit(lit) => {
            // Bind each variable (and each `y@k`) to its value in `s`.
            let mut env = Assignment::empty();
            for v in lit.variables() {
                let value = match v.split_once('@') {
                    Some((name, k)) => k.parse().ok().and_then(|k| s.binding(name, k)),
                    None => s.get(&v),
                };
                match value {
                    Some(e) => env = env.bind(&v, e),
                    None => return false,
                }
            }
            eval_literal(&g.structure, &env, lit).unwrap_or(false)
        }
        Formula::Or { left, right, .. } => holds(left, g, s) || holds(right, g, s),
        Formula::And { left, right, .. } => holds(left, g, s) && holds(right, g, s),
        _ => false,
    }
}

/// Variables an event refers to, with `y@k` reported as `y`.
pub fn event_variables(e: &EventPredicate) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    for lit in e.formula.literals() {
        for t in lit.atom.terms() {
            collect(t, &mut out);
        }
    }
    out
}

fn collect(t: &Term, out: &mut Vec<String>) {
    match t {
        Term::Var(v) => {
            let name = v.split('@').next().unwrap_or(v).to_string();
            if !out.contains(&name) {
                out.push(name);
            }
        }
        Term::Const(_) => {}
        Term::App(_, args) => args.iter().for_each(|a| collect(a, out)),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Conditional {
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub p_event: Rational,
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub p_win_and_event: Rational,
    /// `p_win_and_event / p_event`.
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub value: Rational,
}

/// Probability of each terminal under the mixed profile, in node order.
pub fn profile_distribution(
    g: &ExtensiveGame,
    lambda: &BehavioralStrategy,
    mu: &MixedStrategy,
    nu: &MixedStrategy,
) -> Result<Vec<(NodeId, Rational)>> {
    let mut mass = vec![zero(); g.len()];
    for (sigma, p) in &mu.support {
        for (tau, q) in &nu.support {
            let pq = p * q;
            for (n, r) in outcome_distribution(g, lambda, sigma, tau)? {
                mass[n] += &pq * r;
            }
        }
    }
    Ok(mass
        .into_iter()
        .enumerate()
        .filter(|(_, m)| *m > zero())
        .collect())
}

/// `P(Eloise wins and event) / P(event)` under the profile.
pub fn conditional_value(
    g: &ExtensiveGame,
    lambda: &BehavioralStrategy,
    mu: &MixedStrategy,
    nu: &MixedStrategy,
    event: &dyn Fn(NodeId) -> bool,
) -> Result<Conditional> {
    let mut p_event = zero();
    let mut p_win_and_event = zero();
    for (n, m) in profile_distribution(g, lambda, mu, nu)? {
        if event(n) {
            if g.winner(n) == Some(Player::Eloise) {
                p_win_and_event += &m;
            }
            p_event += m;
        }
    }
    if p_event == zero() {
        return Err(Error::ZeroProbabilityEvent);
    }
    Ok(Conditional {
        value: &p_win_and_event / &p_event,
        p_event,
        p_win_and_event,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::build_semantic_game;
    use crate::parser::event::parse_event;
    use crate::parser::formula::parse_formula;
    use crate::rational::{one, ratio};
    use crate::strategy::{enumerate_reduced, uniform_nature};
    use crate::structure::Structure;

    #[test]
    fn whole_space_gives_expected_payoff() {
        let phi = parse_formula("forall x (exists y/{x}) chance z x = y = z").unwrap();
        let g = build_semantic_game(&Structure::numbered(2), &phi).unwrap();
        let lambda = uniform_nature(&g.game);
        let mu = MixedStrategy::uniform(
            Player::Eloise,
            enumerate_reduced(&g.game, Player::Eloise, 10).unwrap(),
        );
        let nu = MixedStrategy::uniform(
            Player::Abelard,
            enumerate_reduced(&g.game, Player::Abelard, 10).unwrap(),
        );
        let all = EventPredicate::always();
        let c = conditional_value(&g.game, &lambda, &mu, &nu, &|n| all.holds(&g, n)).unwrap();
        assert_eq!(c.p_event, one());
        assert_eq!(c.value, ratio(1, 4));

        let ev = parse_event("z = 1", &g.structure).unwrap();
        let a = conditional_value(&g.game, &lambda, &mu, &nu, &|n| ev.holds(&g, n)).unwrap();
        let not = ev.complement();
        let b = conditional_value(&g.game, &lambda, &mu, &nu, &|n| not.holds(&g, n)).unwrap();
        assert_eq!(a.p_event.clone() + b.p_event.clone(), one());
        assert_eq!(a.value * a.p_event + b.value * b.p_event, c.value);

        let never = parse_event("false", &g.structure).unwrap();
        assert_eq!(
            conditional_value(&g.game, &lambda, &mu, &nu, &|n| never.holds(&g, n)),
            Err(Error::ZeroProbabilityEvent)
        );
    }

    #[test]
    fn indexed_bindings() {
        let phi = parse_formula("chance y chance y y = y").unwrap();
        let g = build_semantic_game(&Structure::numbered(2), &phi).unwrap();
        let ev = parse_event("y@1 = 1 /\\ y@2 = 2", &g.structure).unwrap();
        let hits: Vec<NodeId> = g.game.terminals().filter(|&n| ev.holds(&g, n)).collect();
        assert_eq!(hits.len(), 1);
        let missing = parse_event("y@3 = 1", &g.structure).unwrap();
        assert!(g.game.terminals().all(|n| !missing.holds(&g, n)));
        assert!(g
            .game
            .terminals()
            .all(|n| missing.complement().holds(&g, n)));
        assert_eq!(event_variables(&ev), vec!["y".to_string()]);
    }
}
