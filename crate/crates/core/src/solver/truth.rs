//! Equilibrium values of games and truth values of sentences.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::formula::Formula;
use crate::game::{
    build_semantic_game_capped, ExtensiveGame, Player, SemanticGame, DEFAULT_NODE_CAP,
};
use crate::rational::{one, zero, Rational};
use crate::solver::best_response::best_response;
use crate::solver::lp::{solve_zero_sum, verify_equilibrium, Equilibrium};
use crate::solver::matrix::{compute_cells, reduce_matrix, PayoffMatrix};
use crate::strategy::{
    count_reduced, enumerate_reduced, resolve_reduced, BehavioralStrategy, MixedStrategy,
    ReducedStrategy, DEFAULT_BUDGET,
};
use crate::structure::Structure;

pub const DEFAULT_CELL_CAP: usize = 250_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveConfig {
    /// Maximum number of reduced strategies materialized per player.
    pub budget: usize,
    pub node_cap: usize,
    pub weak_dominance: bool,
    /// Largest full payoff matrix built directly; bigger games are solved
    /// by strategy generation.
    pub cell_cap: usize,
}

impl Default for SolveConfig {
    fn default() -> Self {
        SolveConfig {
            budget: DEFAULT_BUDGET,
            node_cap: DEFAULT_NODE_CAP,
            weak_dominance: true,
            cell_cap: DEFAULT_CELL_CAP,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Method {
    /// Full payoff matrix, reduced and solved.
    Matrix {
        rows: usize,
        cols: usize,
        reduced_rows: usize,
        reduced_cols: usize,
    },
    /// Strategy generation: restricted matrices grown by exact best
    /// responses until neither player can improve.
    Generation {
        iterations: usize,
        rows: usize,
        cols: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub value: Rational,
    pub eloise: MixedStrategy,
    pub abelard: MixedStrategy,
    pub method: Method,
    /// Reduction steps of the (final) matrix.
    pub log: Vec<String>,
}

/// Solves `g` with Nature playing `lambda`.
pub fn solve_game(
    g: &ExtensiveGame,
    lambda: &BehavioralStrategy,
    config: &SolveConfig,
) -> Result<Solution> {
    let rows = count_reduced(g, Player::Eloise, config.budget);
    let cols = count_reduced(g, Player::Abelard, config.budget);
    match (rows, cols) {
        (Ok(r), Ok(c)) if r.saturating_mul(c) <= config.cell_cap => {
            solve_by_matrix(g, lambda, config)
        }
        (Ok(_), Ok(_))
        | (Err(Error::BudgetExceeded { .. }), _)
        | (_, Err(Error::BudgetExceeded { .. })) => solve_by_generation(g, lambda, config),
        (Err(e), _) | (_, Err(e)) => Err(e),
    }
}

/// Solves the reduced matrix and expresses the mixes over `m`'s strategies.
pub fn solve_matrix(m: &PayoffMatrix, weak: bool) -> (Equilibrium, PayoffMatrix) {
    let reduced = reduce_matrix(m, weak);
    let eq = solve_zero_sum(&reduced.cells);
    let mut row_mix = vec![zero(); m.rows.len()];
    for (i, p) in eq.row_mix.iter().enumerate() {
        row_mix[reduced.row_origin[i][0]] += p;
    }
    let mut col_mix = vec![zero(); m.cols.len()];
    for (j, q) in eq.col_mix.iter().enumerate() {
        col_mix[reduced.col_origin[j][0]] += q;
    }
    let lifted = Equilibrium {
        value: eq.value,
        row_mix,
        col_mix,
    };
    (lifted, reduced)
}

fn mixes(
    rows: &[ReducedStrategy],
    cols: &[ReducedStrategy],
    eq: &Equilibrium,
) -> Result<(MixedStrategy, MixedStrategy)> {
    let pick = |player, strategies: &[ReducedStrategy], mix: &[Rational]| {
        MixedStrategy::new(
            player,
            strategies
                .iter()
                .zip(mix)
                .filter(|(_, p)| **p > zero())
                .map(|(s, p)| (s.clone(), p.clone()))
                .collect(),
        )
    };
    Ok((
        pick(Player::Eloise, rows, &eq.row_mix)?,
        pick(Player::Abelard, cols, &eq.col_mix)?,
    ))
}

fn solve_by_matrix(
    g: &ExtensiveGame,
    lambda: &BehavioralStrategy,
    config: &SolveConfig,
) -> Result<Solution> {
    let rows = enumerate_reduced(g, Player::Eloise, config.budget)?;
    let cols = enumerate_reduced(g, Player::Abelard, config.budget)?;
    let cells = compute_cells(g, lambda, &rows, &cols)?;
    let full = PayoffMatrix::from_cells(rows, cols, cells);
    let (eq, reduced) = solve_matrix(&full, config.weak_dominance);
    if !verify_equilibrium(&full.cells, &eq) {
        return Err(Error::Invalid(
            "solver produced an unverifiable equilibrium".into(),
        ));
    }
    let (eloise, abelard) = mixes(&full.rows, &full.cols, &eq)?;
    Ok(Solution {
        value: eq.value,
        eloise,
        abelard,
        method: Method::Matrix {
            rows: full.rows.len(),
            cols: full.cols.len(),
            reduced_rows: reduced.rows.len(),
            reduced_cols: reduced.cols.len(),
        },
        log: reduced.log,
    })
}

fn solve_by_generation(
    g: &ExtensiveGame,
    lambda: &BehavioralStrategy,
    config: &SolveConfig,
) -> Result<Solution> {
    let mut rows = vec![resolve_reduced(g, Player::Eloise, |_| Ok(0))?];
    let mut cols = vec![resolve_reduced(g, Player::Abelard, |_| Ok(0))?];
    let mut cells = compute_cells(g, lambda, &rows, &cols)?;
    let mut iterations = 0;
    loop {
        iterations += 1;
        let m = PayoffMatrix::from_cells(rows.clone(), cols.clone(), cells.clone());
        let (eq, reduced) = solve_matrix(&m, config.weak_dominance);
        let (eloise, abelard) = mixes(&rows, &cols, &eq)?;
        let (row_br, row_best) = best_response(g, lambda, Player::Eloise, &abelard.support)?;
        let (col_br, col_best) = best_response(g, lambda, Player::Abelard, &eloise.support)?;
        let col_best = one() - col_best;
        if row_best == eq.value && col_best == eq.value {
            return Ok(Solution {
                value: eq.value,
                eloise,
                abelard,
                method: Method::Generation {
                    iterations,
                    rows: rows.len(),
                    cols: cols.len(),
                },
                log: reduced.log,
            });
        }
        if row_best > eq.value {
            if rows.contains(&row_br) {
                return Err(Error::Invalid("strategy generation stalled".into()));
            }
            let new = compute_cells(g, lambda, std::slice::from_ref(&row_br), &cols)?;
            cells.extend(new);
            rows.push(row_br);
        }
        if col_best < eq.value {
            if cols.contains(&col_br) {
                return Err(Error::Invalid("strategy generation stalled".into()));
            }
            let new = compute_cells(g, lambda, &rows, std::slice::from_ref(&col_br))?;
            for (row, c) in cells.iter_mut().zip(new) {
                row.extend(c);
            }
            cols.push(col_br);
        }
        for (player, n) in [(Player::Eloise, rows.len()), (Player::Abelard, cols.len())] {
            if n > config.budget {
                return Err(Error::BudgetExceeded {
                    player: player.to_string(),
                    count: n,
                    budget: config.budget,
                });
            }
        }
    }
}

/// How Nature moves in a semantic game.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NatureSpec {
    Uniform,
    /// Rules in the `.nat` format.
    Rules(String),
}

impl NatureSpec {
    pub fn resolve(&self, g: &SemanticGame) -> Result<BehavioralStrategy> {
        match self {
            NatureSpec::Uniform => Ok(crate::strategy::uniform_nature(&g.game)),
            NatureSpec::Rules(src) => crate::parser::nature::parse_nature_strategy(src, g),
        }
    }
}

/// The value `v` with `M |=^v phi(lambda)`, plus optimal mixes.
pub fn truth_value(
    m: &Structure,
    phi: &Formula,
    nature: &NatureSpec,
    config: &SolveConfig,
) -> Result<Solution> {
    let g = build_semantic_game_capped(m, phi, config.node_cap)?;
    let lambda = nature.resolve(&g)?;
    solve_game(&g.game, &lambda, config)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Classical {
    True,
    False,
    Indeterminate(Rational),
}

/// True iff Eloise has a winning strategy, false iff Abelard has one.
pub fn classical_status(m: &Structure, phi: &Formula, config: &SolveConfig) -> Result<Classical> {
    if phi.has_chance() {
        return Err(Error::ChancePresent);
    }
    let v = truth_value(m, phi, &NatureSpec::Uniform, config)?.value;
    Ok(if v == one() {
        Classical::True
    } else if v == zero() {
        Classical::False
    } else {
        Classical::Indeterminate(v)
    })
}
