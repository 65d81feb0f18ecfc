//! Quadrature rules: Gauss–Laguerre and Gauss–Hermite via Golub–Welsch,
//! a fixed 48-point Gauss–Legendre panel rule, and adaptive Simpson for
//! integrands with mild endpoint singularities (logs).

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
#[allow(unused_imports)] // used by the no_std float fallbacks
use num_traits::Float;

use crate::error::{Error, Result};
use crate::linalg::tridiag_ql_first_row;

#[path = "gl48_table.rs"]
mod gl48_table;
use gl48_table::{GL48_NODES, GL48_WEIGHTS};

/// Gauss–Laguerre nodes and weights for ∫₀^∞ f(s) e^{−s} ds ≈ Σ wᵢ f(sᵢ).
pub fn gauss_laguerre(n: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    #[cfg(feature = "std")]
    {
        // the 64/128-node rules are hot in matrix-element loops
        use std::sync::OnceLock;
        static GL64: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
        static GL128: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
        let slot = match n {
            64 => Some(&GL64),
            128 => Some(&GL128),
            _ => None,
        };
        if let Some(slot) = slot {
            if let Some(rule) = slot.get() {
                return Ok(rule.clone());
            }
            let rule = gauss_laguerre_uncached(n)?;
            let _ = slot.set(rule.clone());
            return Ok(rule);
        }
    }
    gauss_laguerre_uncached(n)
}

fn gauss_laguerre_uncached(n: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    // Jacobi matrix: diag 2k+1, offdiag k+1 (k = 0..n-1)
    let diag: Vec<f64> = (0..n).map(|k| 2.0 * k as f64 + 1.0).collect();
    let off: Vec<f64> = (0..n).map(|k| k as f64 + 1.0).collect();
    golub_welsch(&diag, &off, 1.0)
}

/// Gauss–Hermite nodes and weights for ∫_{−∞}^∞ f(t) e^{−t²} dt ≈ Σ wᵢ f(tᵢ).
pub fn gauss_hermite(n: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    let diag: Vec<f64> = vec![0.0; n];
    let off: Vec<f64> = (1..=n).map(|k| (k as f64 / 2.0).sqrt()).collect();
    golub_welsch(&diag, &off, core::f64::consts::PI.sqrt())
}

fn golub_welsch(diag: &[f64], off: &[f64], mu0: f64) -> Result<(Vec<f64>, Vec<f64>)> {
    let (ev, z) = tridiag_ql_first_row(diag, off)?;
    let mut pairs: Vec<(f64, f64)> = ev
        .into_iter()
        .zip(z.into_iter().map(|c| mu0 * c * c))
        .collect();
    pairs.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    Ok(pairs.into_iter().unzip())
}

/// Fixed 48-point Gauss–Legendre rule on [a, b].
pub fn gauss_legendre_48<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64) -> f64 {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut s = 0.0;
    for i in 0..48 {
        s += GL48_WEIGHTS[i] * f(c + h * GL48_NODES[i]);
    }
    s * h
}

/// Adaptive Simpson on [a, b] to absolute tolerance `tol`. Depth-limited;
/// integrable endpoint singularities (x^p log x) converge well before the
/// limit. Returns an accuracy error if the depth budget is exhausted on a
/// subinterval whose contribution still exceeds its share of the tolerance.
pub fn adaptive_simpson<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, tol: f64) -> Result<f64> {
    let fa = f(a);
    let fm = f(0.5 * (a + b));
    let fb = f(b);
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    let mut evals = 0usize;
    let r = simpson_rec(&mut f, a, b, fa, fm, fb, whole, tol, 60, &mut evals);
    if !r.1 {
        return Err(Error::Accuracy(format!(
            "adaptive Simpson failed to reach tolerance {tol:e} on [{a}, {b}]"
        )));
    }
    Ok(r.0)
}

#[allow(clippy::too_many_arguments)]
fn simpson_rec<F: FnMut(f64) -> f64>(
    f: &mut F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: usize,
    evals: &mut usize,
) -> (f64, bool) {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    *evals += 2;
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let err = left + right - whole;
    if err.abs() <= 15.0 * tol || (b - a) < 1e-15 * (1.0 + a.abs()) {
        return (left + right + err / 15.0, true);
    }
    if depth == 0 {
        // tolerate unconverged slivers whose own size is already negligible
        return (left + right, (left + right).abs() + err.abs() <= tol);
    }
    let (l, okl) = simpson_rec(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1, evals);
    let (r, okr) = simpson_rec(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1, evals);
    (l + r, okl && okr)
}

/// ∫₀^∞ f, splitting at `split` and mapping the tail through u = 1/x.
pub fn adaptive_semi_infinite<F: Fn(f64) -> f64>(f: F, split: f64, tol: f64) -> Result<f64> {
    let head = adaptive_simpson(&f, 0.0, split, tol / 2.0)?;
    let tail = adaptive_simpson(
        |u| {
            if u <= 0.0 {
                0.0
            } else {
                f(1.0 / u) / (u * u)
            }
        },
        0.0,
        1.0 / split,
        tol / 2.0,
    )?;
    Ok(head + tail)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn laguerre_polynomial_exactness() {
        let (x, w) = gauss_laguerre(64).unwrap();
        // ∫ s^k e^{-s} = k!
        let mut fact = 1.0f64;
        for k in 0..20 {
            if k > 0 {
                fact *= k as f64;
            }
            let s: f64 = x.iter().zip(&w).map(|(xi, wi)| wi * xi.powi(k as i32)).sum();
            assert!(
                (s - fact).abs() <= 1e-12 * fact.max(1.0),
                "k={k}: {s} vs {fact}"
            );
        }
        assert!((w.iter().sum::<f64>() - 1.0).abs() < 1e-13);
    }

    #[test]
    fn hermite_moments() {
        let (x, w) = gauss_hermite(48).unwrap();
        let pi = core::f64::consts::PI;
        let m0: f64 = w.iter().sum();
        let m2: f64 = x.iter().zip(&w).map(|(xi, wi)| wi * xi * xi).sum();
        let m4: f64 = x.iter().zip(&w).map(|(xi, wi)| wi * xi.powi(4)).sum();
        assert!((m0 - pi.sqrt()).abs() < 1e-12);
        assert!((m2 - 0.5 * pi.sqrt()).abs() < 1e-12);
        assert!((m4 - 0.75 * pi.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn simpson_log_singularity() {
        // ∫₀¹ ln x dx = -1
        let v = adaptive_simpson(|x| if x > 0.0 { x.ln() } else { 0.0 }, 0.0, 1.0, 1e-10).unwrap();
        assert!((v + 1.0).abs() < 1e-8, "{v}");
    }

    #[test]
    fn legendre_panel_exp() {
        let v = gauss_legendre_48(|x| x.exp(), 0.0, 1.0);
        assert!((v - (core::f64::consts::E - 1.0)).abs() < 1e-14);
    }

    #[test]
    fn semi_infinite_gaussian() {
        // ∫₀^∞ e^{-x²} = √π/2
        let v = adaptive_semi_infinite(|x| (-x * x).exp(), 2.0, 1e-10).unwrap();
        assert!((v - 0.5 * core::f64::consts::PI.sqrt()).abs() < 1e-9);
    }
}
