//! Amplitude loops shared by the forward and adjoint passes.

use num_complex::Complex64;

#[inline]
fn rotate(a: &mut Complex64, b: &mut Complex64, c: f64, s: f64) {
    let (x, y) = (*a, *b);
    *a = Complex64::new(c * x.re + s * y.im, c * x.im - s * y.re);
    *b = Complex64::new(c * y.re + s * x.im, c * y.im - s * x.re);
}

#[inline]
fn im_conj_mul(a: Complex64, b: Complex64) -> f64 {
    a.re * b.im - a.im * b.re
}

/// `exp(−i·sign·β X_u)` in place.
pub(crate) fn rx(amps: &mut [Complex64], u: usize, beta: f64, sign: f64) {
    if beta == 0.0 {
        return;
    }
    let (s, c) = (sign * beta).sin_cos();
    let stride = 1usize << u;
    for pair in amps.chunks_exact_mut(2 * stride) {
        let (lo, hi) = pair.split_at_mut(stride);
        for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
            rotate(a, b, c, s);
        }
    }
}

/// Undoes `Π_u exp(−iβ_u X_u)` on both `lam` and `phi` and returns
/// `Im⟨λ|X_u|φ⟩` for every `u`. Every `X_u` commutes with the whole layer,
/// so the overlap may be taken at any stage of the undo.
pub(crate) fn rx_layer_undo_with_overlaps(lam: &mut [Complex64], phi: &mut [Complex64], betas: &[f64]) -> Vec<f64> {
    betas
        .iter()
        .enumerate()
        .map(|(u, &beta)| {
            let (s, c) = (-beta).sin_cos();
            let stride = 1usize << u;
            let mut acc = [0.0; 2];
            for (lp, pp) in lam.chunks_exact_mut(2 * stride).zip(phi.chunks_exact_mut(2 * stride)) {
                let (l0, l1) = lp.split_at_mut(stride);
                let (p0, p1) = pp.split_at_mut(stride);
                for (((a0, a1), b0), b1) in l0.iter_mut().zip(l1.iter_mut()).zip(p0.iter_mut()).zip(p1.iter_mut()) {
                    acc[0] += im_conj_mul(*a0, *b1);
                    acc[1] += im_conj_mul(*a1, *b0);
                    rotate(a0, a1, c, s);
                    rotate(b0, b1, c, s);
                }
            }
            acc[0] + acc[1]
        })
        .collect()
}

/// Multiplies both arrays by `conj(factors)` and returns `Im(conj(λ_x) φ_x)`
/// taken before the multiplication (the diagonal phase cancels in it).
pub(crate) fn diagonal_undo_with_overlap(lam: &mut [Complex64], phi: &mut [Complex64], factors: &[Complex64]) -> Vec<f64> {
    lam.iter_mut()
        .zip(phi.iter_mut())
        .zip(factors)
        .map(|((a, b), f)| {
            let w = im_conj_mul(*a, *b);
            *a *= f.conj();
            *b *= f.conj();
            w
        })
        .collect()
}

/// Unnormalised Walsh–Hadamard transform: entry `S` becomes
/// `Σ_x f(x) Π_{v∈S} x_v`.
pub(crate) fn walsh_hadamard(mut f: Vec<f64>) -> Vec<f64> {
    let mut h = 1;
    while h < f.len() {
        for block in f.chunks_exact_mut(2 * h) {
            let (lo, hi) = block.split_at_mut(h);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x, y) = (*a, *b);
                *a = x + y;
                *b = x - y;
            }
        }
        h *= 2;
    }
    f
}

/// Above this magnitude the two-term reduction below loses accuracy.
const FAST_PHASE_LIMIT: f64 = 1.0e5;

/// `(sin t, cos t)` for `|t| ≤ FAST_PHASE_LIMIT`: Cody–Waite reduction by
/// π/2 and the fdlibm kernel polynomials on [−π/4, π/4]. Branch free so the
/// loop over amplitudes vectorises.
#[inline(always)]
fn sin_cos_reduced(t: f64) -> (f64, f64) {
    const PIO2_1: f64 = 1.570_796_326_734_125_614_17e0;
    const PIO2_2: f64 = 6.077_100_506_303_965_976_60e-11;
    const PIO2_3: f64 = 2.022_266_248_711_166_455_80e-21;
    const ROUND: f64 = 6_755_399_441_055_744.0;
    let shifted = t * std::f64::consts::FRAC_2_PI + ROUND;
    let q = shifted.to_bits();
    let k = shifted - ROUND;
    let r = ((t - k * PIO2_1) - k * PIO2_2) - k * PIO2_3;
    let z = r * r;
    let s = r + r
        * z
        * (-1.666_666_666_666_663_243_48e-1
            + z * (8.333_333_333_322_489_461_24e-3
                + z * (-1.984_126_982_985_794_931_34e-4
                    + z * (2.755_731_370_707_006_767_89e-6
                        + z * (-2.505_076_025_340_686_341_95e-8 + z * 1.589_690_995_211_550_102_21e-10)))));
    let c = 1.0 - 0.5 * z
        + z * z
            * (4.166_666_666_666_660_190_37e-2
                + z * (-1.388_888_888_887_410_957_49e-3
                    + z * (2.480_158_728_947_672_941_78e-5
                        + z * (-2.755_731_435_139_066_330_35e-7
                            + z * (2.087_572_321_298_174_827_90e-9 + z * -1.135_964_755_778_819_482_65e-11)))));
    let (a, b) = if q & 1 == 0 { (s, c) } else { (c, s) };
    let one = 1.0f64.to_bits();
    let sa = f64::from_bits(((q & 2) << 62) ^ one);
    let sb = f64::from_bits((((q + 1) & 2) << 62) ^ one);
    (sa * a, sb * b)
}

/// `exp(−i·t)` for every phase.
pub(crate) fn phase_factors(phases: &[f64]) -> Vec<Complex64> {
    let fast = phases.iter().all(|t| t.abs() <= FAST_PHASE_LIMIT);
    phases
        .iter()
        .map(|&t| {
            let (s, c) = if fast { sin_cos_reduced(t) } else { t.sin_cos() };
            Complex64::new(c, -s)
        })
        .collect()
}
