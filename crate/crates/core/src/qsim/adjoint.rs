use crate::qsim::ansatz::{forward_with_cap, ForwardPass};
use num_complex::Complex64;

use crate::qsim::kernels::diagonal_undo_with_overlap;
use crate::qsim::symmetric;
use crate::qsim::{AnsatzParams, Statevector, ZzOperator, MAX_QUBITS};
use crate::{Error, Result};

/// `⟨ψ|H|ψ⟩` for the diagonal `H = Σ c_p Z_u Z_v` over the pairs of `h`.
pub fn zz_energy(state: &Statevector, h: &ZzOperator, coeffs: &[f64]) -> Result<f64> {
    let d = h.diagonal(coeffs)?;
    Ok(state.amplitudes().iter().zip(&d).map(|(a, dx)| a.norm_sqr() * dx).sum())
}

/// Gradient of `⟨H⟩` for `H = Σ c_p Z_u Z_v` over the pairs of `h`, by
/// adjoint differentiation.
///
/// Both gate layers are products of commuting rotations
/// `exp(−iθG)`, so every generator in a layer can be moved to the layer
/// output, where `∂E/∂θ = 2 Im⟨λ|G|φ⟩`. The layer is then undone on both the
/// state `φ` and the adjoint `λ`. The result is in
/// [`AnsatzParams::flatten`] order.
pub fn adjoint_gradient(params: &AnsatzParams, cost: &ZzOperator, h: &ZzOperator, coeffs: &[f64]) -> Result<(f64, Vec<f64>)> {
    let fwd = forward_with_cap(params, cost, MAX_QUBITS)?;
    backward(&fwd, params, cost, h, coeffs)
}

/// Backward pass from a stored forward pass; returns `(⟨H⟩, ∇⟨H⟩)`.
pub fn backward(
    fwd: &ForwardPass,
    params: &AnsatzParams,
    cost: &ZzOperator,
    h: &ZzOperator,
    coeffs: &[f64],
) -> Result<(f64, Vec<f64>)> {
    if h.n_vertices() != cost.n_vertices() {
        return Err(Error::DimensionMismatch {
            expected: cost.n_vertices(),
            found: h.n_vertices(),
        });
    }
    let n = cost.n_vertices();
    let diag = h.diagonal_prefix(coeffs, n - 1)?;
    let mut phi = fwd.half.clone();
    let energy: f64 = 2.0 * phi.iter().zip(&diag).map(|(a, d)| a.norm_sqr() * d).sum::<f64>();
    let mut lam: Vec<Complex64> = phi.iter().zip(&diag).map(|(a, d)| a * d).collect();

    let m = cost.len();
    let width = n + m;
    let mut grad = vec![0.0; params.layers() * width];
    for l in (0..params.layers()).rev() {
        let offset = l * width;
        let overlaps = symmetric::mixer_undo_with_overlaps(&mut lam, &mut phi, &params.betas[l]);
        for (u, o) in overlaps.into_iter().enumerate() {
            grad[offset + m + u] = 2.0 * o;
        }
        let spectrum = symmetric::spectrum(diagonal_undo_with_overlap(&mut lam, &mut phi, &fwd.cost_factors[l]));
        for (e, &(u, v)) in cost.pairs().iter().enumerate() {
            grad[offset + e] = 4.0 * spectrum[symmetric::pair_index(u, v, n)];
        }
    }
    Ok((energy, grad))
}
