//! States invariant under the global flip `x ↦ x̄`.
//!
//! `|+⟩^⊗n`, every `Z_u Z_v` phase and every `X_u` rotation commute with
//! `X^⊗n`, so QAOA states satisfy `ψ(x) = ψ(x̄)`. Only the indices with the
//! top bit clear are stored; index `H + y` of the full vector (`H = 2ⁿ⁻¹`)
//! equals stored index `mask ^ y` with `mask = H − 1`. Sums over the full
//! cube of flip-invariant quantities are twice the stored sums.

use num_complex::Complex64;

use crate::objective::Autocorrelation;
use crate::qsim::kernels::{self, walsh_hadamard};

#[inline]
fn rotate(a: &mut Complex64, b: &mut Complex64, c: f64, s: f64) {
    let (x, y) = (*a, *b);
    *a = Complex64::new(c * x.re + s * y.im, c * x.im - s * y.re);
    *b = Complex64::new(c * y.re + s * x.im, c * y.im - s * x.re);
}

/// `exp(−i·sign·β X_top)`: pairs stored index `x` with `mask ^ x`.
fn top_rx(half: &mut [Complex64], beta: f64, sign: f64) {
    let (s, c) = (sign * beta).sin_cos();
    if half.len() == 1 {
        half[0] *= Complex64::new(c, -s);
        return;
    }
    let (lo, hi) = half.split_at_mut(half.len() / 2);
    for (a, b) in lo.iter_mut().zip(hi.iter_mut().rev()) {
        rotate(a, b, c, s);
    }
}

/// `Π_u exp(−iβ_u X_u)` on the stored half.
pub(crate) fn mixer(half: &mut [Complex64], betas: &[f64]) {
    let (top, rest) = betas.split_last().expect("at least one qubit");
    for (u, &beta) in rest.iter().enumerate() {
        kernels::rx(half, u, beta, 1.0);
    }
    if *top != 0.0 {
        top_rx(half, *top, 1.0);
    }
}

/// Undoes the mixer on both halves and returns the full-cube
/// `Im⟨λ|X_u|φ⟩` for every `u`.
pub(crate) fn mixer_undo_with_overlaps(lam: &mut [Complex64], phi: &mut [Complex64], betas: &[f64]) -> Vec<f64> {
    let (top, rest) = betas.split_last().expect("at least one qubit");
    let mut out = kernels::rx_layer_undo_with_overlaps(lam, phi, rest);
    let im = |a: Complex64, b: Complex64| a.re * b.im - a.im * b.re;
    let top_overlap = if lam.len() == 1 {
        im(lam[0], phi[0])
    } else {
        let h = lam.len() / 2;
        let (l0, l1) = lam.split_at(h);
        let (p0, p1) = phi.split_at(h);
        l0.iter().zip(p1.iter().rev()).map(|(a, b)| im(*a, *b)).sum::<f64>()
            + l1.iter().rev().zip(p0).map(|(a, b)| im(*a, *b)).sum::<f64>()
    };
    out.push(top_overlap);
    top_rx(lam, *top, -1.0);
    top_rx(phi, *top, -1.0);
    out.iter_mut().for_each(|o| *o *= 2.0);
    out
}

/// Stored-half transform `T[S] = Σ_x f(x) Π_{v∈S} x_v` over the low bits.
/// For a flip-invariant `f`, the full-cube coefficient of `{u, v}` is
/// `2·T[{u, v} without the top bit]`.
pub(crate) fn spectrum(f: Vec<f64>) -> Vec<f64> {
    walsh_hadamard(f)
}

/// Index into [`spectrum`] for pair `(u, v)`, `u < v < n`.
#[inline]
pub(crate) fn pair_index(u: usize, v: usize, n: usize) -> usize {
    if v == n - 1 {
        1 << u
    } else {
        (1 << u) | (1 << v)
    }
}

pub(crate) fn autocorrelation(half: &[Complex64], n: usize) -> Autocorrelation {
    let spec = spectrum(half.iter().map(|a| a.norm_sqr()).collect());
    let q = nalgebra::DMatrix::from_fn(n, n, |u, v| {
        if u == v {
            1.0
        } else {
            (2.0 * spec[pair_index(u.min(v), u.max(v), n)]).clamp(-1.0, 1.0)
        }
    });
    Autocorrelation::new(q).expect("statevector correlations are valid")
}

/// The full `2ⁿ` amplitude vector.
pub(crate) fn expand(half: &[Complex64]) -> Vec<Complex64> {
    half.iter().chain(half.iter().rev()).copied().collect()
}
