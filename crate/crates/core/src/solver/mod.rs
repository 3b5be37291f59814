//! Expected payoffs, payoff matrices, exact equilibria, conditional win
//! probabilities and simulation.

pub mod best_response;
pub mod conditional;
pub mod lp;
pub mod matrix;
pub mod simulate;
pub mod truth;

use crate::error::Result;
use crate::game::{ExtensiveGame, Player};
use crate::rational::{zero, Rational};
use crate::strategy::{outcome_distribution, BehavioralStrategy, ReducedStrategy};

pub use best_response::best_response;
pub use conditional::{conditional_value, profile_distribution, Conditional, EventPredicate};
pub use lp::{col_payoffs, row_payoffs, solve_zero_sum, verify_equilibrium, Equilibrium};
pub use matrix::{build_matrix, build_matrix_capped, compute_cells, reduce_matrix, PayoffMatrix};
pub use simulate::{simulate, SimulationReport};
pub use truth::{
    classical_status, solve_game, solve_matrix, truth_value, Classical, Method, NatureSpec,
    Solution, SolveConfig, DEFAULT_CELL_CAP,
};

/// Probability that Eloise wins under the profile.
pub fn expected_payoff(
    g: &ExtensiveGame,
    lambda: &BehavioralStrategy,
    sigma: &ReducedStrategy,
    tau: &ReducedStrategy,
) -> Result<Rational> {
    let mut total = zero();
    for (n, mass) in outcome_distribution(g, lambda, sigma, tau)? {
        if g.winner(n) == Some(Player::Eloise) {
            total += mass;
        }
    }
    Ok(total)
}
