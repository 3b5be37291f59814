//! Monte Carlo plays of a mixed profile.
//!
//! One ChaCha8 stream seeded from a `u64` drives every draw: for each play,
//! Eloise's strategy, then Abelard's, then Nature's moves in play order. A
//! draw picks the first outcome whose cumulative probability, scaled to
//! `2^64` and rounded down, exceeds a uniform 64-bit integer.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::game::{ExtensiveGame, NodeId, Player};
use crate::rational::Rational;
use crate::strategy::{BehavioralStrategy, MixedStrategy};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimulationReport {
    pub seed: u64,
    pub plays: u64,
    pub wins: u64,
    pub event_hits: u64,
    pub event_wins: u64,
    pub win_frequency: f64,
}

impl SimulationReport {
    /// Eloise's win frequency among plays in the event.
    pub fn conditional_frequency(&self) -> Option<f64> {
        (self.event_hits > 0).then(|| self.event_wins as f64 / self.event_hits as f64)
    }
}

/// Thresholds `floor(F_i * 2^64)` of the cumulative distribution `F`.
fn thresholds(probs: &[Rational]) -> Vec<u128> {
    let scale = BigInt::from(1u128 << 64);
    let mut cum = Rational::from_integer(0.into());
    probs
        .iter()
        .map(|p| {
            cum += p;
            (&cum * Rational::from_integer(scale.clone()))
                .floor()
                .to_integer()
                .to_u128()
                .expect("probabilities lie in [0,1]")
        })
        .collect()
}

fn draw(rng: &mut ChaCha8Rng, thresholds: &[u128]) -> usize {
    let u = rng.next_u64() as u128;
    thresholds
        .iter()
        .position(|&t| u < t)
        .unwrap_or(thresholds.len() - 1)
}

pub fn simulate(
    g: &ExtensiveGame,
    lambda: &BehavioralStrategy,
    mu: &MixedStrategy,
    nu: &MixedStrategy,
    plays: u64,
    seed: u64,
    event: Option<&dyn Fn(NodeId) -> bool>,
) -> Result<SimulationReport> {
    if plays == 0 {
        return Err(Error::Invalid(
            "the number of plays must be positive".into(),
        ));
    }
    let mix = |m: &MixedStrategy| {
        thresholds(&m.support.iter().map(|(_, p)| p.clone()).collect::<Vec<_>>())
    };
    let (mu_t, nu_t) = (mix(mu), mix(nu));
    let chance: Vec<Option<Vec<u128>>> = (0..g.infosets().len())
        .map(|set| lambda.at(set).map(thresholds))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = SimulationReport {
        seed,
        plays,
        wins: 0,
        event_hits: 0,
        event_wins: 0,
        win_frequency: 0.0,
    };
    for _ in 0..plays {
        let sigma = &mu.support[draw(&mut rng, &mu_t)].0;
        let tau = &nu.support[draw(&mut rng, &nu_t)].0;
        let mut n = g.root();
        while let Some(set) = g.infoset_of(n) {
            let info = g.infoset(set);
            let a = match info.player {
                Player::Nature => {
                    let t = chance[set]
                        .as_ref()
                        .ok_or_else(|| Error::MissingChance(info.key.to_string()))?;
                    draw(&mut rng, t)
                }
                p => {
                    let s = if p == Player::Eloise { sigma } else { tau };
                    s.action(set).ok_or_else(|| {
                        Error::Profile(format!(
                            "{p} strategy does not cover reachable information set @{}",
                            info.key
                        ))
                    })?
                }
            };
            n = g.children(n)[a];
        }
        let win = g.winner(n) == Some(Player::Eloise);
        report.wins += win as u64;
        if event.is_some_and(|e| e(n)) {
            report.event_hits += 1;
            report.event_wins += win as u64;
        }
    }
    report.win_frequency = report.wins as f64 / plays as f64;
    Ok(report)
}
