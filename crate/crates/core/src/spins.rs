//! Spin vectors and their basis-index encoding.
//!
//! Bit `v` of a basis index holds vertex `v`: a clear bit is spin `+1`, a set
//! bit is spin `-1`. Bitstrings use the same convention, character `v`
//! describing vertex `v`.

use crate::{Error, Result};

/// Spin vector for basis index `index` over `n` vertices.
pub fn spins_from_index(index: usize, n: usize) -> Vec<i8> {
    (0..n).map(|v| spin_of(index, v)).collect()
}

#[inline]
pub fn spin_of(index: usize, v: usize) -> i8 {
    if (index >> v) & 1 == 0 {
        1
    } else {
        -1
    }
}

/// Basis index of a spin vector. Assumes entries are ±1.
pub fn index_of(x: &[i8]) -> usize {
    x.iter()
        .enumerate()
        .filter(|(_, &s)| s < 0)
        .fold(0usize, |acc, (v, _)| acc | (1 << v))
}

pub fn to_bitstring(x: &[i8]) -> String {
    x.iter().map(|&s| if s > 0 { '0' } else { '1' }).collect()
}

pub fn from_bitstring(s: &str) -> Result<Vec<i8>> {
    s.chars()
        .map(|c| match c {
            '0' => Ok(1),
            '1' => Ok(-1),
            other => Err(Error::InvalidInput(format!(
                "bitstring character {other:?} is not 0 or 1"
            ))),
        })
        .collect()
}

/// Checks length and that every entry is ±1.
pub fn check_spins(x: &[i8], n: usize) -> Result<()> {
    if x.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: x.len(),
        });
    }
    if let Some(bad) = x.iter().find(|&&s| s != 1 && s != -1) {
        return Err(Error::InvalidInput(format!("spin entry {bad} is not ±1")));
    }
    Ok(())
}

/// Global spin flip.
pub fn flipped(x: &[i8]) -> Vec<i8> {
    x.iter().map(|&s| -s).collect()
}

/// Quadratic form `xᵀ M x` for a spin vector.
pub fn quadratic_form(m: &nalgebra::DMatrix<f64>, x: &[i8]) -> f64 {
    let n = x.len();
    let mut total = 0.0;
    for i in 0..n {
        let xi = f64::from(x[i]);
        let mut row = 0.0;
        for j in 0..n {
            row += m[(i, j)] * f64::from(x[j]);
        }
        total += xi * row;
    }
    total
}
