use log::warn;
use nalgebra::DMatrix;

use crate::{Error, Result};

/// Hard cap for exhaustive search over sign classes.
pub const BRUTE_FORCE_CAP: usize = 26;
/// Above this size a slow-search warning is logged.
pub const BRUTE_FORCE_WARN: usize = 22;

/// Extremal sign vector of `xᵀMx` over `{±1}ⁿ`.
///
/// Walks the `2^(n−1)` sign classes with `x_{n−1} = +1` in Gray-code order,
/// updating `h = Mx` and the value in `O(n)` per flip. Ties keep the first
/// vector visited.
pub fn extremal_quadratic(m: &DMatrix<f64>, maximise: bool, cap: usize) -> Result<(f64, Vec<i8>)> {
    let n = m.nrows();
    if m.ncols() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: m.ncols(),
        });
    }
    if n == 0 {
        return Err(Error::InvalidInput("empty matrix".into()));
    }
    if n > cap {
        return Err(Error::Resource(format!(
            "exhaustive search over {n} vertices exceeds the cap of {cap}"
        )));
    }
    if n > BRUTE_FORCE_WARN {
        warn!("exhaustive search over 2^{} sign classes", n - 1);
    }
    let sym = (m + m.transpose()) * 0.5;
    let mut x = vec![1i8; n];
    let mut h: Vec<f64> = (0..n).map(|i| sym.row(i).sum()).collect();
    let mut value: f64 = h.iter().sum();
    let mut best = (value, x.clone());
    let better = |a: f64, b: f64| if maximise { a > b } else { a < b };
    for step in 1u64..(1u64 << (n - 1)) {
        let j = step.trailing_zeros() as usize;
        let xj = f64::from(x[j]);
        value += -4.0 * xj * h[j] + 4.0 * sym[(j, j)];
        for (i, hi) in h.iter_mut().enumerate() {
            *hi -= 2.0 * xj * sym[(i, j)];
        }
        x[j] = -x[j];
        if better(value, best.0) {
            best = (value, x.clone());
        }
    }
    // The running value accumulates rounding over many flips.
    best.0 = crate::spins::quadratic_form(&sym, &best.1);
    Ok(best)
}

/// `max_x xᵀMx` and a maximiser with `x_{n−1} = +1`.
pub fn brute_force_max_quadratic(m: &DMatrix<f64>) -> Result<(f64, Vec<i8>)> {
    extremal_quadratic(m, true, BRUTE_FORCE_CAP)
}

/// `min_x xᵀMx` and a minimiser with `x_{n−1} = +1`.
pub fn brute_force_min_quadratic(m: &DMatrix<f64>) -> Result<(f64, Vec<i8>)> {
    extremal_quadratic(m, false, BRUTE_FORCE_CAP)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spins::{quadratic_form, spins_from_index};

    fn naive(m: &DMatrix<f64>, maximise: bool) -> f64 {
        let n = m.nrows();
        let values = (0..1usize << n).map(|i| quadratic_form(m, &spins_from_index(i, n)));
        if maximise {
            values.fold(f64::NEG_INFINITY, f64::max)
        } else {
            values.fold(f64::INFINITY, f64::min)
        }
    }

    #[test]
    fn matches_naive_enumeration() {
        let m = DMatrix::from_fn(6, 6, |i, j| ((i * 7 + j * 3) % 5) as f64 - 2.0 + if i == j { 1.5 } else { 0.0 });
        let (hi, x) = brute_force_max_quadratic(&m).unwrap();
        assert!((hi - naive(&m, true)).abs() < 1e-12);
        assert!((quadratic_form(&m, &x) - hi).abs() < 1e-12);
        let (lo, _) = brute_force_min_quadratic(&m).unwrap();
        assert!((lo - naive(&m, false)).abs() < 1e-12);
    }

    #[test]
    fn single_edge_and_zero() {
        let v = DMatrix::from_row_slice(2, 2, &[0.25, -0.25, -0.25, 0.25]);
        assert_eq!(brute_force_max_quadratic(&v).unwrap().0, 1.0);
        assert_eq!(brute_force_max_quadratic(&DMatrix::zeros(3, 3)).unwrap().0, 0.0);
        assert_eq!(brute_force_max_quadratic(&DMatrix::identity(1, 1)).unwrap(), (1.0, vec![1]));
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(extremal_quadratic(&DMatrix::zeros(5, 5), true, 4), Err(Error::Resource(_))));
    }
}
