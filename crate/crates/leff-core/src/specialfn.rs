//! Scalar special functions: the principal Lambert W branch, the
//! field-dependent coupling α(B) and its c-generalization, the Macdonald
//! function K₀, and Γ / ψ.

use alloc::format;
use alloc::vec::Vec;
#[allow(unused_imports)] // used by the no_std float fallbacks
use num_traits::Float;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quad::gauss_legendre_48;

/// Euler–Mascheroni constant γ.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

pub fn euler_gamma() -> f64 {
    EULER_GAMMA
}

/// The coupling α, solving α = (2/c)·log(√B/α); c = 2 gives the standard
/// α(B) with α + log α = ½ log B, i.e. α(B) = W(√B).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CouplingAlpha {
    pub value: f64,
    pub b_field: f64,
    pub c: f64,
}

impl CouplingAlpha {
    /// Residual of the defining equation, |α − (2/c)log(√B/α)|.
    pub fn residual(&self) -> f64 {
        (self.value - (2.0 / self.c) * (self.b_field.sqrt() / self.value).ln()).abs()
    }
}

/// Principal branch W₀ of the Lambert W function for x ≥ 0.
///
/// Initial guess log(1+x) (exact at 0, asymptotically tight to within the
/// log log correction), then Halley iteration on w·e^w − x.
pub fn lambert_w0(x: f64) -> Result<f64> {
    if !(x >= 0.0) {
        return Err(Error::Domain(format!("lambert_w0 requires x >= 0, got {x}")));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    let mut w = (1.0 + x).ln();
    if w > 3.0 {
        // large-x refinement: W ≈ L1 − L2 + L2/L1
        let l1 = x.ln();
        let l2 = l1.ln();
        w = l1 - l2 + l2 / l1;
    }
    for _ in 0..60 {
        let ew = w.exp();
        let f = w * ew - x;
        let denom = ew * (w + 1.0) - (w + 2.0) * f / (2.0 * w + 2.0);
        let dw = f / denom;
        w -= dw;
        if dw.abs() <= 1e-16 * (1.0 + w.abs()) {
            break;
        }
    }
    Ok(w)
}

/// α(B): the unique positive solution of α + log α = ½ log B.
pub fn alpha_of_b(b_field: f64) -> Result<CouplingAlpha> {
    alpha_c(2.0, b_field)
}

/// α_c(B): the unique positive solution of α = (2/c) log(√B/α).
///
/// Safeguarded Newton on the strictly increasing
/// f(α) = α + (2/c) log α − (1/c) log B, bracketed from
/// [max(1e−12, ½logB − log log B − 1), ½logB + 1] (expanded if needed
/// for small B or c ≠ 2).
pub fn alpha_c(c: f64, b_field: f64) -> Result<CouplingAlpha> {
    if !(b_field > 0.0) {
        return Err(Error::Domain(format!("alpha requires B > 0, got {b_field}")));
    }
    if !(c > 0.0) {
        return Err(Error::Domain(format!("alpha_c requires c > 0, got {c}")));
    }
    let half_log_b = 0.5 * b_field.ln();
    let f = |a: f64| a + (2.0 / c) * a.ln() - (2.0 / c) * half_log_b;
    let mut lo = if half_log_b > 1.0 && half_log_b.ln() + 1.0 < half_log_b {
        (half_log_b - half_log_b.ln() - 1.0).max(1e-12)
    } else {
        1e-12
    };
    let mut hi = (half_log_b + 1.0).max(1.0);
    // expand until the root is bracketed (always terminates: f is increasing,
    // → −∞ as α → 0⁺ and → +∞ as α → ∞)
    while f(lo) > 0.0 {
        lo *= 0.5;
        if lo < 1e-300 {
            break;
        }
    }
    while f(hi) < 0.0 {
        hi *= 2.0;
    }
    let mut a = 0.5 * (lo + hi);
    for _ in 0..200 {
        let fa = f(a);
        if fa > 0.0 {
            hi = a;
        } else {
            lo = a;
        }
        let fp = 1.0 + (2.0 / c) / a;
        let newton = a - fa / fp;
        a = if newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        if (hi - lo) <= 1e-16 * (1.0 + a) {
            break;
        }
    }
    Ok(CouplingAlpha {
        value: a,
        b_field,
        c,
    })
}

/// Macdonald function K₀(x) to ~1e−12 relative accuracy.
///
/// x ≤ 2: ascending series K₀ = −(log(x/2)+γ)I₀(x) + Σ_{k≥1} (x²/4)^k/(k!)²·H_k.
/// x > 2: e^{−x}∫₀^T e^{−x(cosh t−1)} dt on Gauss–Legendre panels with the
/// tail cut where the integrand falls below e^{−42}.
pub fn bessel_k0(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!("bessel_k0 requires x > 0, got {x}")));
    }
    if x <= 2.0 {
        let q = 0.25 * x * x;
        let mut term = 1.0f64; // q^k/(k!)^2
        let mut i0 = 1.0f64;
        let mut hsum = 0.0f64; // Σ q^k/(k!)^2 H_k
        let mut h = 0.0f64;
        for k in 1..60 {
            term *= q / ((k * k) as f64);
            h += 1.0 / k as f64;
            i0 += term;
            hsum += term * h;
            if term * (1.0 + h) < 1e-18 {
                break;
            }
        }
        Ok(-((0.5 * x).ln() + EULER_GAMMA) * i0 + hsum)
    } else {
        let t_max = {
            let y = 1.0 + 42.0 / x;
            (y + (y * y - 1.0).sqrt()).ln() // acosh
        };
        let g = |t: f64| (-x * ((0.5 * t).sinh() * (0.5 * t).sinh() * 2.0)).exp();
        // cosh t − 1 = 2 sinh²(t/2) is exact near 0
        let mid = 0.5 * t_max;
        let v = gauss_legendre_48(g, 0.0, mid) + gauss_legendre_48(g, mid, t_max);
        Ok((-x).exp() * v)
    }
}

/// Digamma ψ(x) for x > 0: recurrence up to x ≥ 9, then the Bernoulli
/// asymptotic series.
pub fn digamma(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!("digamma requires x > 0, got {x}")));
    }
    let mut y = x;
    let mut acc = 0.0f64;
    while y < 9.0 {
        acc -= 1.0 / y;
        y += 1.0;
    }
    let inv = 1.0 / y;
    let inv2 = inv * inv;
    // B2/2 = 1/12, B4/4 = -1/120, B6/6 = 1/252, B8/8 = -1/240,
    // B10/10 = 1/132, B12/12 = -691/32760, B14/14 = 1/12
    let series = inv2
        * (1.0 / 12.0
            - inv2
                * (1.0 / 120.0
                    - inv2
                        * (1.0 / 252.0
                            - inv2
                                * (1.0 / 240.0
                                    - inv2
                                        * (1.0 / 132.0
                                            - inv2 * (691.0 / 32760.0 - inv2 / 12.0))))));
    Ok(acc + y.ln() - 0.5 * inv - series)
}

/// log Γ(x) for x > 0: recurrence up to x ≥ 10, then Stirling with Bernoulli
/// corrections.
pub fn ln_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!("ln_gamma requires x > 0, got {x}")));
    }
    let mut y = x;
    let mut shift = 0.0f64;
    while y < 10.0 {
        shift -= y.ln();
        y += 1.0;
    }
    let inv = 1.0 / y;
    let inv2 = inv * inv;
    // B_{2n}/(2n(2n-1) y^{2n-1})
    let series = inv
        * (1.0 / 12.0
            - inv2
                * (1.0 / 360.0
                    - inv2
                        * (1.0 / 1260.0
                            - inv2
                                * (1.0 / 1680.0
                                    - inv2 * (1.0 / 1188.0 - inv2 * 691.0 / 360360.0)))));
    let half_ln_2pi = 0.918_938_533_204_672_8; // ½ log(2π)
    Ok(shift + (y - 0.5) * y.ln() - y + half_ln_2pi + series)
}

pub fn gamma_fn(x: f64) -> Result<f64> {
    Ok(ln_gamma(x)?.exp())
}

/// Three-term asymptotic expansion of α(B), Eq.-level:
/// ½log B − log log B + log 2 (error O(log log B / log B)).
pub fn alpha_asymptotic_3term(b_field: f64) -> f64 {
    let l = b_field.ln();
    0.5 * l - l.ln() + core::f64::consts::LN_2
}

/// Sampled check that α is increasing in B; used by property tests and the
/// CLI sanity path.
pub fn alpha_monotone_on(bs: &[f64]) -> Result<bool> {
    let mut vals: Vec<f64> = Vec::with_capacity(bs.len());
    for &b in bs {
        vals.push(alpha_of_b(b)?.value);
    }
    Ok(vals.windows(2).all(|w| w[0] < w[1]))
}
