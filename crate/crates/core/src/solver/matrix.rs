//! Payoff matrices over reduced strategies and their reduction by duplicate
//! merging and dominance elimination.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::game::{ExtensiveGame, Player};
use crate::rational::Rational;
use crate::solver::expected_payoff;
use crate::strategy::{count_reduced, enumerate_reduced, BehavioralStrategy, ReducedStrategy};

/// Expected payoffs to Eloise; rows are her strategies, columns Abelard's.
/// `row_origin[i]` lists the original row indices merged into row `i`
/// (the first one is the representative), likewise for columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PayoffMatrix {
    pub rows: Vec<ReducedStrategy>,
    pub cols: Vec<ReducedStrategy>,
    pub cells: Vec<Vec<Rational>>,
    pub row_origin: Vec<Vec<usize>>,
    pub col_origin: Vec<Vec<usize>>,
    pub log: Vec<String>,
}

impl PayoffMatrix {
    pub fn from_cells(
        rows: Vec<ReducedStrategy>,
        cols: Vec<ReducedStrategy>,
        cells: Vec<Vec<Rational>>,
    ) -> Self {
        PayoffMatrix {
            row_origin: (0..rows.len()).map(|i| vec![i]).collect(),
            col_origin: (0..cols.len()).map(|j| vec![j]).collect(),
            rows,
            cols,
            cells,
            log: Vec::new(),
        }
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.rows.len(), self.cols.len())
    }
}

/// Cells of `rows x cols`, computed in parallel; the result does not depend
/// on scheduling.
pub fn compute_cells(
    g: &ExtensiveGame,
    lambda: &BehavioralStrategy,
    rows: &[ReducedStrategy],
    cols: &[ReducedStrategy],
) -> Result<Vec<Vec<Rational>>> {
    rows.par_iter()
        .map(|s| {
            cols.iter()
                .map(|t| expected_payoff(g, lambda, s, t))
                .collect::<Result<Vec<_>>>()
        })
        .collect()
}

/// The full matrix over both players' reduced strategies.
pub fn build_matrix(
    g: &ExtensiveGame,
    lambda: &BehavioralStrategy,
    budget: usize,
) -> Result<PayoffMatrix> {
    let rows = enumerate_reduced(g, Player::Eloise, budget)?;
    let cols = enumerate_reduced(g, Player::Abelard, budget)?;
    let cells = compute_cells(g, lambda, &rows, &cols)?;
    Ok(PayoffMatrix::from_cells(rows, cols, cells))
}

/// Like [`build_matrix`], but refuses matrices with more than `cell_cap` cells.
pub fn build_matrix_capped(
    g: &ExtensiveGame,
    lambda: &BehavioralStrategy,
    budget: usize,
    cell_cap: usize,
) -> Result<PayoffMatrix> {
    let r = count_reduced(g, Player::Eloise, budget)?;
    let c = count_reduced(g, Player::Abelard, budget)?;
    if r.saturating_mul(c) > cell_cap {
        return Err(Error::BudgetExceeded {
            player: "matrix".into(),
            count: r.saturating_mul(c),
            budget: cell_cap,
        });
    }
    build_matrix(g, lambda, budget)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Side {
    Row,
    Col,
}

impl Side {
    fn name(self) -> &'static str {
        match self {
            Side::Row => "row",
            Side::Col => "column",
        }
    }
}

/// Iterates, until nothing changes: merge duplicate rows and columns, delete
/// strictly dominated ones, and (if `weak`) weakly dominated ones. The game
/// value is unchanged.
pub fn reduce_matrix(m: &PayoffMatrix, weak: bool) -> PayoffMatrix {
    let mut m = m.clone();
    loop {
        let mut changed = false;
        for side in [Side::Row, Side::Col] {
            changed |= merge_duplicates(&mut m, side);
        }
        for side in [Side::Row, Side::Col] {
            changed |= eliminate(&mut m, side, false);
        }
        if !changed && weak {
            for side in [Side::Row, Side::Col] {
                changed |= eliminate(&mut m, side, true);
            }
        }
        if !changed {
            return m;
        }
    }
}

fn line(m: &PayoffMatrix, side: Side, i: usize) -> Vec<&Rational> {
    match side {
        Side::Row => m.cells[i].iter().collect(),
        Side::Col => m.cells.iter().map(|r| &r[i]).collect(),
    }
}

fn origin(m: &PayoffMatrix, side: Side) -> &Vec<Vec<usize>> {
    match side {
        Side::Row => &m.row_origin,
        Side::Col => &m.col_origin,
    }
}

fn keep(m: &mut PayoffMatrix, side: Side, kept: &[usize]) {
    match side {
        Side::Row => {
            m.rows = kept.iter().map(|&i| m.rows[i].clone()).collect();
            m.row_origin = kept.iter().map(|&i| m.row_origin[i].clone()).collect();
            m.cells = kept.iter().map(|&i| m.cells[i].clone()).collect();
        }
        Side::Col => {
            m.cols = kept.iter().map(|&j| m.cols[j].clone()).collect();
            m.col_origin = kept.iter().map(|&j| m.col_origin[j].clone()).collect();
            m.cells = m
                .cells
                .iter()
                .map(|r| kept.iter().map(|&j| r[j].clone()).collect())
                .collect();
        }
    }
}

fn merge_duplicates(m: &mut PayoffMatrix, side: Side) -> bool {
    let n = match side {
        Side::Row => m.rows.len(),
        Side::Col => m.cols.len(),
    };
    let lines: Vec<Vec<&Rational>> = (0..n).map(|i| line(m, side, i)).collect();
    let mut kept: Vec<usize> = Vec::new();
    let mut merged_into: Vec<(usize, usize)> = Vec::new();
    for i in 0..n {
        match kept.iter().find(|&&k| lines[k] == lines[i]) {
            Some(&k) => merged_into.push((i, k)),
            None => kept.push(i),
        }
    }
    if merged_into.is_empty() {
        return false;
    }
    let mut origins = origin(m, side).clone();
    for &(i, k) in &merged_into {
        let moved = std::mem::take(&mut origins[i]);
        m.log.push(format!(
            "{} {} merged into {} {} (duplicate)",
            side.name(),
            moved[0],
            side.name(),
            origins[k][0]
        ));
        origins[k].extend(moved);
    }
    match side {
        Side::Row => m.row_origin = origins,
        Side::Col => m.col_origin = origins,
    }
    keep(m, side, &kept);
    true
}

/// `a` dominates `b` for the side's owner (rows maximize, columns minimize).
fn dominates(side: Side, a: &[&Rational], b: &[&Rational], weak: bool) -> bool {
    let better = |x: &Rational, y: &Rational| match side {
        Side::Row => x > y,
        Side::Col => x < y,
    };
    if weak {
        a.iter().zip(b).all(|(x, y)| x == y || better(x, y))
            && a.iter().zip(b).any(|(x, y)| better(x, y))
    } else {
        a.iter().zip(b).all(|(x, y)| better(x, y))
    }
}

fn eliminate(m: &mut PayoffMatrix, side: Side, weak: bool) -> bool {
    let n = match side {
        Side::Row => m.rows.len(),
        Side::Col => m.cols.len(),
    };
    if n < 2 {
        return false;
    }
    let lines: Vec<Vec<&Rational>> = (0..n).map(|i| line(m, side, i)).collect();
    let mut removed = Vec::new();
    let mut kept = Vec::new();
    for i in 0..n {
        match (0..n).find(|&k| k != i && dominates(side, &lines[k], &lines[i], weak)) {
            Some(k) => removed.push((i, k)),
            None => kept.push(i),
        }
    }
    if removed.is_empty() {
        return false;
    }
    let origins = origin(m, side);
    let kind = if weak { "weakly" } else { "strictly" };
    let entries: Vec<String> = removed
        .iter()
        .map(|&(i, k)| {
            format!(
                "{} {} eliminated: {kind} dominated by {} {}",
                side.name(),
                origins[i][0],
                side.name(),
                origins[k][0]
            )
        })
        .collect();
    m.log.extend(entries);
    keep(m, side, &kept);
    true
}
