use log::debug;
use nalgebra::{Cholesky, DMatrix, DVector, SymmetricEigen};

use super::{finish, SdpBackend, SdpSolution};
use crate::objective::{Aggregation, QuadraticFamily};
use crate::{Error, Result};

/// Primal–dual path following with the HKM search direction and Mehrotra
/// predictor–corrector steps.
///
/// The problem is put in standard form
/// `min ⟨C, X⟩ + cᵀx` s.t. `⟨A_k, X⟩ + (Dx)_k = b_k`, `X ⪰ 0`, `x ≥ 0`,
/// with dual `max bᵀy` s.t. `Z = C − Σ y_k A_k ⪰ 0`, `s = c − Dᵀy ≥ 0`.
/// Minimax and maximin carry the epigraph variable `t` and one slack per
/// member in `x`.
#[derive(Debug, Clone)]
pub struct InteriorPoint {
    pub max_iters: usize,
    pub step_fraction: f64,
}

impl Default for InteriorPoint {
    fn default() -> Self {
        Self {
            max_iters: 200,
            step_fraction: 0.98,
        }
    }
}

enum Constraint {
    Diagonal(usize),
    Dense(DMatrix<f64>),
}

impl Constraint {
    fn inner(&self, y: &DMatrix<f64>) -> f64 {
        match self {
            Constraint::Diagonal(v) => y[(*v, *v)],
            Constraint::Dense(m) => m.iter().zip(y.iter()).map(|(a, b)| a * b).sum(),
        }
    }

    fn add_scaled(&self, out: &mut DMatrix<f64>, scale: f64) {
        match self {
            Constraint::Diagonal(v) => out[(*v, *v)] += scale,
            Constraint::Dense(m) => *out += m * scale,
        }
    }
}

struct StandardForm {
    n: usize,
    cons: Vec<Constraint>,
    d: DMatrix<f64>,
    b: DVector<f64>,
    c_mat: DMatrix<f64>,
    c_vec: DVector<f64>,
}

impl StandardForm {
    fn from_family(fam: &QuadraticFamily) -> Self {
        let n = fam.dim();
        let mut cons: Vec<Constraint> = (0..n).map(Constraint::Diagonal).collect();
        let mut b = vec![1.0; n];
        match fam.mode() {
            Aggregation::Minimax | Aggregation::Maximin => {
                let q = fam.len();
                let lp_sign = if fam.minimises() { 1.0 } else { -1.0 };
                let mut d = DMatrix::zeros(n + q, q + 1);
                for (i, m) in fam.members().iter().enumerate() {
                    cons.push(Constraint::Dense(m.clone()));
                    b.push(0.0);
                    d[(n + i, 0)] = -1.0;
                    d[(n + i, i + 1)] = lp_sign;
                }
                let mut c_vec = DVector::zeros(q + 1);
                c_vec[0] = lp_sign;
                Self {
                    n,
                    cons,
                    d,
                    b: DVector::from_vec(b),
                    c_mat: DMatrix::zeros(n, n),
                    c_vec,
                }
            }
            Aggregation::Sum | Aggregation::Pareto { .. } => Self {
                n,
                cons,
                d: DMatrix::zeros(n, 0),
                b: DVector::from_vec(b),
                c_mat: -fam.combined_matrix().expect("linear mode"),
                c_vec: DVector::zeros(0),
            },
        }
    }

    fn k(&self) -> usize {
        self.cons.len()
    }

    fn apply(&self, y: &DMatrix<f64>) -> DVector<f64> {
        DVector::from_iterator(self.k(), self.cons.iter().map(|c| c.inner(y)))
    }

    fn adjoint(&self, y: &DVector<f64>) -> DMatrix<f64> {
        let mut out = DMatrix::zeros(self.n, self.n);
        for (c, &v) in self.cons.iter().zip(y.iter()) {
            c.add_scaled(&mut out, v);
        }
        out
    }

    /// `H_kl = tr(A_k X A_l Z⁻¹) + (D diag(x/s) Dᵀ)_kl`.
    fn schur(&self, x_mat: &DMatrix<f64>, z_inv: &DMatrix<f64>, ratio: &DVector<f64>) -> DMatrix<f64> {
        let k = self.k();
        let mut h = DMatrix::zeros(k, k);
        let products: Vec<Option<DMatrix<f64>>> = self
            .cons
            .iter()
            .map(|c| match c {
                Constraint::Diagonal(_) => None,
                Constraint::Dense(m) => Some(x_mat * m * z_inv),
            })
            .collect();
        for l in 0..k {
            for kk in 0..=l {
                let value = match (&self.cons[kk], &self.cons[l], &products[l]) {
                    (Constraint::Diagonal(v), Constraint::Diagonal(w), _) => x_mat[(*v, *w)] * z_inv[(*w, *v)],
                    (Constraint::Diagonal(v), Constraint::Dense(_), Some(p)) => p[(*v, *v)],
                    (Constraint::Dense(m), _, Some(p)) => m.iter().zip(p.iter()).map(|(a, b)| a * b).sum(),
                    (Constraint::Dense(_), Constraint::Diagonal(w), None) => {
                        products[kk].as_ref().expect("dense product")[(*w, *w)]
                    }
                    _ => unreachable!(),
                };
                h[(kk, l)] = value;
                h[(l, kk)] = value;
            }
        }
        if self.d.ncols() > 0 {
            let scaled = DMatrix::from_fn(self.d.nrows(), self.d.ncols(), |r, c| self.d[(r, c)] * ratio[c]);
            h += &scaled * self.d.transpose();
        }
        h
    }
}

fn frob(a: &DMatrix<f64>, b: &DMatrix<f64>) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| x * y).sum()
}

fn sym(m: DMatrix<f64>) -> DMatrix<f64> {
    (&m + m.transpose()) * 0.5
}

/// Largest `α` with `M + αΔ ⪰ 0`, given the Cholesky factor of `M`.
fn max_step_psd(chol: &Cholesky<f64, nalgebra::Dyn>, delta: &DMatrix<f64>) -> f64 {
    let l = chol.l();
    let w = l.solve_lower_triangular(delta).expect("triangular solve");
    let s = l.solve_lower_triangular(&w.transpose()).expect("triangular solve");
    let eig = SymmetricEigen::new(sym(s));
    let low = eig.eigenvalues.iter().copied().fold(f64::INFINITY, f64::min);
    if low < 0.0 {
        -1.0 / low
    } else {
        f64::INFINITY
    }
}

fn max_step_lp(v: &DVector<f64>, dv: &DVector<f64>) -> f64 {
    v.iter()
        .zip(dv.iter())
        .filter(|(_, &d)| d < 0.0)
        .map(|(&x, &d)| -x / d)
        .fold(f64::INFINITY, f64::min)
}

struct Direction {
    dx_mat: DMatrix<f64>,
    dz: DMatrix<f64>,
    dx: DVector<f64>,
    ds: DVector<f64>,
    dy: DVector<f64>,
}

impl SdpBackend for InteriorPoint {
    fn name(&self) -> &'static str {
        "interior-point"
    }

    fn solve(&self, fam: &QuadraticFamily, tol: f64) -> Result<SdpSolution> {
        if !(tol > 0.0) {
            return Err(Error::InvalidInput(format!("tolerance {tol} must be positive")));
        }
        let sf = StandardForm::from_family(fam);
        let n = sf.n;
        let m = sf.c_vec.len();
        let total = (n + m) as f64;

        let mut x_mat = DMatrix::<f64>::identity(n, n);
        let mut x = DVector::from_element(m, 1.0);
        if m > 0 {
            let start = 1.0 + fam.members().iter().map(|mm| mm.trace()).fold(0.0, f64::max);
            x[0] = start;
            for (i, mm) in fam.members().iter().enumerate() {
                x[i + 1] = (start - mm.trace()).abs().max(1.0);
            }
        }
        let z_scale = 1.0 + sf.c_mat.amax() + sf.c_vec.amax();
        let mut z = DMatrix::<f64>::identity(n, n) * z_scale;
        let mut s = DVector::from_element(m, z_scale);
        let mut y = DVector::<f64>::zeros(sf.k());

        let b_norm = sf.b.norm();
        let c_norm = sf.c_mat.norm() + sf.c_vec.norm();
        let mut residuals = (f64::INFINITY, f64::INFINITY, f64::INFINITY);
        let mut converged = false;
        let mut iterations = 0;

        for iter in 0..self.max_iters {
            iterations = iter;
            let rp = &sf.b - sf.apply(&x_mat) - &sf.d * &x;
            let rd_mat = &sf.c_mat - sf.adjoint(&y) - &z;
            let rd_vec = &sf.c_vec - sf.d.transpose() * &y - &s;
            let pobj = frob(&sf.c_mat, &x_mat) + sf.c_vec.dot(&x);
            let dobj = sf.b.dot(&y);
            let pinf = rp.norm() / (1.0 + b_norm);
            let dinf = (rd_mat.norm() + rd_vec.norm()) / (1.0 + c_norm);
            let gap = (pobj - dobj).abs() / (1.0 + pobj.abs() + dobj.abs());
            residuals = (pinf, dinf, gap);
            debug!("ipm {iter}: pobj {pobj:.10} dobj {dobj:.10} pinf {pinf:.2e} dinf {dinf:.2e}");
            if pinf <= tol && dinf <= tol && gap <= tol {
                converged = true;
                break;
            }
            let mu = (frob(&x_mat, &z) + x.dot(&s)) / total;

            let (z_chol, x_chol) = match (Cholesky::new(z.clone()), Cholesky::new(x_mat.clone())) {
                (Some(zc), Some(xc)) => (zc, xc),
                _ => break,
            };
            let z_inv = z_chol.inverse();
            let ratio = DVector::from_fn(m, |i, _| x[i] / s[i]);
            let schur = sf.schur(&x_mat, &z_inv, &ratio);
            let solver = match Cholesky::new(schur.clone()) {
                Some(c) => Ok(c),
                None => Err(schur.lu()),
            };

            let direction = |sigma_mu: f64, corr: Option<&Direction>| -> Option<Direction> {
                // rhs = b − 𝒜(σμZ⁻¹ − ΔXₐΔZₐZ⁻¹ − X R_d Z⁻¹) − D(σμ/s − Δxₐ∘Δsₐ/s − x∘r_d/s)
                let mut base = &z_inv * sigma_mu;
                let mut lp_base = DVector::from_fn(m, |i, _| sigma_mu / s[i]);
                if let Some(a) = corr {
                    base -= &a.dx_mat * &a.dz * &z_inv;
                    for i in 0..m {
                        lp_base[i] -= a.dx[i] * a.ds[i] / s[i];
                    }
                }
                let lp = DVector::from_fn(m, |i, _| lp_base[i] - x[i] * rd_vec[i] / s[i]);
                let inner = &base - &x_mat * &rd_mat * &z_inv;
                let rhs = &sf.b - sf.apply(&inner) - &sf.d * &lp;
                let dy = match &solver {
                    Ok(c) => c.solve(&rhs),
                    Err(lu) => lu.solve(&rhs)?,
                };
                let dz = &rd_mat - sf.adjoint(&dy);
                let ds = &rd_vec - sf.d.transpose() * &dy;
                let dx_raw = sym(base - &x_mat - &x_mat * &dz * &z_inv);
                let dx = DVector::from_fn(m, |i, _| lp_base[i] - x[i] - x[i] * ds[i] / s[i]);
                Some(Direction {
                    dx_mat: dx_raw,
                    dz,
                    dx,
                    ds,
                    dy,
                })
            };

            let steps = |d: &Direction| -> (f64, f64) {
                let ap = max_step_psd(&x_chol, &d.dx_mat).min(max_step_lp(&x, &d.dx));
                let ad = max_step_psd(&z_chol, &d.dz).min(max_step_lp(&s, &d.ds));
                (ap, ad)
            };

            let Some(predictor) = direction(0.0, None) else { break };
            let (ap, ad) = steps(&predictor);
            let (ap, ad) = (ap.min(1.0), ad.min(1.0));
            let mu_aff = (frob(&(&x_mat + &predictor.dx_mat * ap), &(&z + &predictor.dz * ad))
                + (&x + &predictor.dx * ap).dot(&(&s + &predictor.ds * ad)))
                / total;
            let sigma = (mu_aff / mu).clamp(0.0, 1.0).powi(3);

            let Some(step) = direction(sigma * mu, Some(&predictor)) else { break };
            let (ap, ad) = steps(&step);
            let ap = (self.step_fraction * ap).min(1.0);
            let ad = (self.step_fraction * ad).min(1.0);

            x_mat += &step.dx_mat * ap;
            x += &step.dx * ap;
            z = sym(&z + &step.dz * ad);
            s += &step.ds * ad;
            y += &step.dy * ad;
            iterations = iter + 1;
        }
        finish(fam, &x_mat, iterations, residuals, converged)
    }
}
