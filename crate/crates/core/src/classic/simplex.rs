use nalgebra::DMatrix;

use crate::{Error, Result};

const PIVOT_TOL: f64 = 1e-12;
const PIVOT_CAP: usize = 100_000;

/// Optimal mixed strategies of a finite zero-sum game.
#[derive(Debug, Clone, PartialEq)]
pub struct GameSolution {
    /// `min_q max_i (Gq)_i`.
    pub value: f64,
    /// Maximising row player's strategy over rows.
    pub rows: Vec<f64>,
    /// Minimising column player's strategy over columns.
    pub cols: Vec<f64>,
}

/// Solves the matrix game `min_q max_λ λᵀGq` by the tableau simplex method
/// on `max 𝟙ᵀu` s.t. `G′u ≤ 𝟙`, `u ≥ 0`, where `G′ = G + shift > 0`.
/// Bland's rule prevents cycling on degenerate games.
pub fn solve_matrix_game(g: &DMatrix<f64>) -> Result<GameSolution> {
    let (m, k) = g.shape();
    if m == 0 || k == 0 {
        return Err(Error::InvalidInput("matrix game needs rows and columns".into()));
    }
    if g.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidInput("matrix game payoff is not finite".into()));
    }
    let shift = 1.0 - g.min();
    let width = k + m + 1;
    let rhs = k + m;
    let mut t = DMatrix::<f64>::zeros(m + 1, width);
    for i in 0..m {
        for j in 0..k {
            t[(i, j)] = g[(i, j)] + shift;
        }
        t[(i, k + i)] = 1.0;
        t[(i, rhs)] = 1.0;
    }
    for j in 0..k {
        t[(m, j)] = -1.0;
    }
    let mut basis: Vec<usize> = (k..k + m).collect();

    let mut pivots = 0;
    loop {
        let Some(enter) = (0..k + m).find(|&j| t[(m, j)] < -PIVOT_TOL) else {
            break;
        };
        let mut leave: Option<(usize, f64)> = None;
        for i in 0..m {
            let a = t[(i, enter)];
            if a > PIVOT_TOL {
                let ratio = t[(i, rhs)] / a;
                let replace = match leave {
                    None => true,
                    Some((r, best)) => ratio < best - PIVOT_TOL || (ratio <= best + PIVOT_TOL && basis[i] < basis[r]),
                };
                if replace {
                    leave = Some((i, ratio));
                }
            }
        }
        let Some((row, _)) = leave else {
            return Err(Error::InvalidInput("matrix game LP is unbounded".into()));
        };
        let pivot = t[(row, enter)];
        for j in 0..width {
            t[(row, j)] /= pivot;
        }
        for i in 0..=m {
            if i != row {
                let factor = t[(i, enter)];
                if factor != 0.0 {
                    for j in 0..width {
                        t[(i, j)] -= factor * t[(row, j)];
                    }
                }
            }
        }
        basis[row] = enter;
        pivots += 1;
        if pivots > PIVOT_CAP {
            return Err(Error::Resource(format!("simplex exceeded {PIVOT_CAP} pivots")));
        }
    }

    let z = t[(m, rhs)];
    let mut cols = vec![0.0; k];
    for (i, &var) in basis.iter().enumerate() {
        if var < k {
            cols[var] = t[(i, rhs)].max(0.0);
        }
    }
    let mut rows: Vec<f64> = (0..m).map(|i| t[(m, k + i)].max(0.0)).collect();
    normalise(&mut cols);
    normalise(&mut rows);
    Ok(GameSolution {
        value: 1.0 / z - shift,
        rows,
        cols,
    })
}

fn normalise(v: &mut [f64]) {
    let total: f64 = v.iter().sum();
    if total > 0.0 {
        v.iter_mut().for_each(|x| *x /= total);
    }
}
