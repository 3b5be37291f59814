//! Exact zero-sum matrix game solving by rational simplex.

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::rational::{one, sum, Rational};

/// Value and optimal mixes of a matrix game; the row player maximizes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Equilibrium {
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub value: Rational,
    #[serde(serialize_with = "crate::report::ser_rationals")]
    pub row_mix: Vec<Rational>,
    #[serde(serialize_with = "crate::report::ser_rationals")]
    pub col_mix: Vec<Rational>,
}

/// Solves the matrix game `cells` (rows maximize) exactly.
///
/// The payoffs are shifted to be at least 1 and the column player's program
/// `max sum(w) s.t. A w <= 1, w >= 0` is solved with Bland's rule; the row
/// mix is read off the reduced costs of the slack variables.
pub fn solve_zero_sum(cells: &[Vec<Rational>]) -> Equilibrium {
    let m = cells.len();
    assert!(m > 0, "matrix has no rows");
    let n = cells[0].len();
    assert!(n > 0, "matrix has no columns");
    let min = cells
        .iter()
        .flatten()
        .min()
        .expect("nonempty matrix")
        .clone();
    let shift = one() - min;
    let width = n + m + 1;
    let rhs = n + m;
    let mut t: Vec<Vec<Rational>> = Vec::with_capacity(m + 1);
    for (i, row) in cells.iter().enumerate() {
        assert_eq!(row.len(), n, "ragged matrix");
        let mut r = vec![Rational::zero(); width];
        for (j, c) in row.iter().enumerate() {
            r[j] = c + &shift;
        }
        r[n + i] = one();
        r[rhs] = one();
        t.push(r);
    }
    let mut obj = vec![Rational::zero(); width];
    for c in obj.iter_mut().take(n) {
        *c = -one();
    }
    t.push(obj);
    let mut basis: Vec<usize> = (n..n + m).collect();

    while let Some(enter) = (0..n + m).find(|&j| t[m][j].is_negative()) {
        let mut leave: Option<(usize, Rational)> = None;
        for i in 0..m {
            if t[i][enter].is_positive() {
                let ratio = &t[i][rhs] / &t[i][enter];
                let better = match &leave {
                    None => true,
                    Some((k, best)) => ratio < *best || (ratio == *best && basis[i] < basis[*k]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let (row, _) = leave.expect("program is bounded since all payoffs are positive");
        pivot(&mut t, row, enter);
        basis[row] = enter;
    }

    let z = t[m][rhs].clone();
    let mut w = vec![Rational::zero(); n];
    for (i, &b) in basis.iter().enumerate() {
        if b < n {
            w[b] = t[i][rhs].clone();
        }
    }
    let col_mix: Vec<Rational> = w.iter().map(|x| x / &z).collect();
    let row_mix: Vec<Rational> = (0..m).map(|i| &t[m][n + i] / &z).collect();
    let value = Rational::one() / &z - shift;
    Equilibrium {
        value,
        row_mix,
        col_mix,
    }
}

fn pivot(t: &mut [Vec<Rational>], row: usize, col: usize) {
    let p = t[row][col].clone();
    for x in t[row].iter_mut() {
        *x /= &p;
    }
    let pivot_row = t[row].clone();
    for (i, r) in t.iter_mut().enumerate() {
        if i == row || r[col].is_zero() {
            continue;
        }
        let factor = r[col].clone();
        for (x, y) in r.iter_mut().zip(&pivot_row) {
            if !y.is_zero() {
                *x -= &factor * y;
            }
        }
    }
}

fn is_distribution(p: &[Rational]) -> bool {
    p.iter().all(|x| !x.is_negative()) && sum(p) == one()
}

/// Row payoffs against a column mix.
pub fn row_payoffs(cells: &[Vec<Rational>], col_mix: &[Rational]) -> Vec<Rational> {
    cells
        .iter()
        .map(|row| row.iter().zip(col_mix).map(|(c, q)| c * q).sum())
        .collect()
}

/// Column payoffs (to the row player) against a row mix.
pub fn col_payoffs(cells: &[Vec<Rational>], row_mix: &[Rational]) -> Vec<Rational> {
    let n = cells.first().map_or(0, Vec::len);
    (0..n)
        .map(|j| cells.iter().zip(row_mix).map(|(row, p)| &row[j] * p).sum())
        .collect()
}

/// Exact check that the row mix guarantees at least `value` against every
/// column and the column mix concedes at most `value` to every row.
pub fn verify_equilibrium(cells: &[Vec<Rational>], eq: &Equilibrium) -> bool {
    if eq.row_mix.len() != cells.len()
        || cells.iter().any(|r| r.len() != eq.col_mix.len())
        || !is_distribution(&eq.row_mix)
        || !is_distribution(&eq.col_mix)
    {
        return false;
    }
    let worst = col_payoffs(cells, &eq.row_mix).into_iter().min();
    let best = row_payoffs(cells, &eq.col_mix).into_iter().max();
    worst.as_ref() == Some(&eq.value) && best.as_ref() == Some(&eq.value)
}
