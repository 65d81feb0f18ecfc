//! Operator-valued effective potentials on the lowest-Landau space F_M and
//! the quadrature-derived constants attached to them.
//!
//! All matrix elements are computed at B = 1; field dependence enters only
//! through the scaling V^B(z) = √B V¹(√B z) and through the explicit log B /
//! α(B) couplings of the distributional potentials.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::cache::{CachedValue, ElementCache, NoCache};
use crate::error::{Error, Result};
use crate::landau::{binomial, enumerate_sigma, PartitionTuple, ProblemParams};
use crate::linalg::HermitianMatrix;
use crate::quad::{adaptive_simpson, gauss_laguerre};
use crate::specialfn::{bessel_k0, digamma, ln_gamma, EULER_GAMMA};

/// Which hyperplane a singular term lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum HyperplaneLabel {
    /// z_j = 0 (electron j at the nucleus).
    Nucleus(usize),
    /// z_j = z_k (electron coincidence).
    Pair(usize, usize),
}

/// Singular part of an effective 1D Hamiltonian: per hyperplane, matrix
/// coefficients of Pf(1/|·|) and δ(·).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistributionPotential1D {
    pub hyperplanes: Vec<HyperplaneLabel>,
    pub pf_coeff: Vec<HermitianMatrix>,
    pub delta_coeff: Vec<HermitianMatrix>,
}

/// Smooth matrix-valued potential z ↦ V(z).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PotentialKind {
    SingleParticle(usize),
    Pair(usize, usize),
}

#[derive(Debug, Clone)]
pub struct MatrixPotential1D {
    pub params: ProblemParams,
    pub basis: Vec<PartitionTuple>,
    pub kind: PotentialKind,
}

impl MatrixPotential1D {
    pub fn single(params: ProblemParams, j: usize) -> Result<Self> {
        params.validate()?;
        Ok(MatrixPotential1D {
            params,
            basis: enumerate_sigma(params.n, params.m)?,
            kind: PotentialKind::SingleParticle(j),
        })
    }

    pub fn pair(params: ProblemParams, j: usize, k: usize) -> Result<Self> {
        params.validate()?;
        Ok(MatrixPotential1D {
            params,
            basis: enumerate_sigma(params.n, params.m)?,
            kind: PotentialKind::Pair(j, k),
        })
    }

    /// B = 1 matrix at longitudinal separation z.
    pub fn evaluate(&self, z: f64) -> Result<HermitianMatrix> {
        match self.kind {
            PotentialKind::SingleParticle(j) => position_v_single(&self.params, j, z),
            PotentialKind::Pair(j, k) => position_v_pair(&self.params, j, k, z),
        }
    }
}

// --- scalar transverse integrals (B = 1) ------------------------------------

/// ⟨χ_m| (ρ² + z²)^{−1/2} |χ_m⟩ = (1/m!)∫₀^∞ s^m e^{−s} (2s + z²)^{−1/2} ds.
///
/// For |z| ≥ 1 a Gauss–Laguerre rule in s = ρ²/2 converges fast (doubling
/// check enforced). Near the origin the integrand has a branch point at
/// s = −z²/2 that stalls the Laguerre rule, so the integral is evaluated in
/// the radial variable w = √s where it is analytic for every z, including
/// z = 0 where the exact value is Γ(m+½)/(√2·m!).
pub fn v_single_scalar(m: usize, z: f64) -> Result<f64> {
    let mf = m as f64;
    if z.abs() >= 1.0 {
        let f = |s: f64| (2.0 * s + z * z).powf(-0.5);
        laguerre_moment_with_doubling(m, f)
    } else {
        let w_max = (mf + 45.0).sqrt();
        let ln_mfact = ln_gamma(mf + 1.0)?;
        let g = |w: f64| {
            if w <= 0.0 {
                return 0.0;
            }
            let ln_pow = (2.0 * mf + 1.0) * w.ln();
            2.0 * (ln_pow - w * w - ln_mfact).exp() / (2.0 * w * w + z * z).sqrt()
        };
        adaptive_simpson(g, 0.0, w_max, 1e-12)
    }
}

/// Pair analogue in the rotated relative mode: G_q(z) =
/// (1/q!)∫₀^∞ s^q e^{−s} (4s + z²)^{−1/2} ds.
pub fn v_pair_scalar(q: usize, z: f64) -> Result<f64> {
    let qf = q as f64;
    if z.abs() >= 1.0 {
        let f = |s: f64| (4.0 * s + z * z).powf(-0.5);
        laguerre_moment_with_doubling(q, f)
    } else {
        let w_max = (qf + 45.0).sqrt();
        let ln_qfact = ln_gamma(qf + 1.0)?;
        let g = |w: f64| {
            if w <= 0.0 {
                return 0.0;
            }
            let ln_pow = (2.0 * qf + 1.0) * w.ln();
            2.0 * (ln_pow - w * w - ln_qfact).exp() / (4.0 * w * w + z * z).sqrt()
        };
        adaptive_simpson(g, 0.0, w_max, 1e-12)
    }
}

/// (1/m!)∫ s^m e^{−s} f(s) ds with a 64→128 node-doubling accuracy check.
fn laguerre_moment_with_doubling<F: Fn(f64) -> f64>(m: usize, f: F) -> Result<f64> {
    let eval = |n: usize| -> Result<f64> {
        let (xs, ws) = gauss_laguerre(n)?;
        let ln_mfact = ln_gamma(m as f64 + 1.0)?;
        let mut acc = 0.0;
        for (x, w) in xs.iter().zip(&ws) {
            // w · x^m/m! · f(x), in logs to dodge overflow at large m
            let ln_scale = m as f64 * x.ln() - ln_mfact;
            acc += w * ln_scale.exp() * f(*x);
        }
        Ok(acc)
    };
    let v64 = eval(64)?;
    let v128 = eval(128)?;
    if (v64 - v128).abs() > 1e-8 * (1.0 + v128.abs()) {
        return Err(Error::Accuracy(format!(
            "Laguerre rule did not stabilize under node doubling: {v64} vs {v128}"
        )));
    }
    Ok(v128)
}

/// 2⟨χ_m| K₀(ρ|ζ|) |χ_m⟩ at B = 1, radial variable w = ρ/√2 … evaluated as
/// (4/m!)∫₀^∞ w^{2m+1} e^{−w²} K₀(√2 w |ζ|) dw (log-integrable at w = 0).
pub fn fourier_v_scalar(m: usize, zeta: f64) -> Result<f64> {
    if zeta == 0.0 {
        return Err(Error::Domain(
            "Fourier potential diverges logarithmically at ζ = 0".into(),
        ));
    }
    let az = zeta.abs();
    let mf = m as f64;
    let ln_mfact = ln_gamma(mf + 1.0)?;
    let w_max = (mf + 45.0).sqrt();
    let g = |w: f64| {
        if w <= 0.0 {
            return 0.0;
        }
        let arg = core::f64::consts::SQRT_2 * w * az;
        if arg > 700.0 {
            return 0.0;
        }
        let k0 = bessel_k0(arg).unwrap_or(0.0);
        let ln_pow = (2.0 * mf + 1.0) * w.ln();
        4.0 * (ln_pow - w * w - ln_mfact).exp() * k0
    };
    adaptive_simpson(g, 0.0, w_max, 1e-11)
}

/// ⟨ln s⟩ in the weight s^q e^{−s}/q! — by quadrature (tests compare against
/// ψ(q+1)). Used for the electron–electron log matrix.
pub fn log_moment_quadrature(q: usize) -> Result<f64> {
    let qf = q as f64;
    let ln_qfact = ln_gamma(qf + 1.0)?;
    let f = |s: f64| {
        if s <= 0.0 {
            return 0.0;
        }
        (qf * s.ln() - s - ln_qfact).exp() * s.ln()
    };
    let head = adaptive_simpson(&f, 0.0, 1.0, 5e-12)?;
    let tail = adaptive_simpson(&f, 1.0, qf + 50.0, 5e-12)?;
    Ok(head + tail)
}

// --- rotated-mode expansion for pair operators ------------------------------

/// Expansion of the two-particle state χ_a ⊗ χ_b over rotated modes
/// χ_p(u) ⊗ χ_q(v), u,v = (ζ₁ ± ζ₂)/√2: real coefficients d_{pq} with
/// p + q = a + b; Σ d² = 1.
pub fn pair_rotation_coefficients(a: usize, b: usize) -> Vec<f64> {
    let total = a + b;
    let mut out = vec![0.0f64; total + 1]; // index p, q = total − p
    let ln_af = ln_gamma(a as f64 + 1.0).unwrap();
    let ln_bf = ln_gamma(b as f64 + 1.0).unwrap();
    for p in 0..=total {
        let q = total - p;
        let mut s = 0.0f64;
        let lo = p.saturating_sub(b);
        let hi = p.min(a);
        for i in lo..=hi {
            let j = p - i;
            let sign = if (b - j) % 2 == 0 { 1.0 } else { -1.0 };
            s += sign * binomial(a, i) as f64 * binomial(b, j) as f64;
        }
        let ln_pf = ln_gamma(p as f64 + 1.0).unwrap();
        let ln_qf = ln_gamma(q as f64 + 1.0).unwrap();
        let norm = (0.5 * (ln_pf + ln_qf - ln_af - ln_bf)).exp();
        out[p] = s * norm * (0.5f64).powf(total as f64 / 2.0);
    }
    out
}

// --- matrix assembly --------------------------------------------------------

fn basis_of(params: &ProblemParams) -> Result<Vec<PartitionTuple>> {
    params.validate()?;
    enumerate_sigma(params.n, params.m)
}

fn check_particle(params: &ProblemParams, j: usize) -> Result<()> {
    if j >= params.n {
        return Err(Error::Domain(format!(
            "particle index {j} out of range for N = {}",
            params.n
        )));
    }
    Ok(())
}

fn cache_key(op: &str, m: &[usize], mp: &[usize], arg: f64) -> String {
    format!("{op}|B=1|m={m:?}|m'={mp:?}|arg={arg:.17e}")
}

fn cached_scalar(
    cache: &dyn ElementCache,
    key: &str,
    compute: impl FnOnce() -> Result<f64>,
) -> Result<f64> {
    if let Some(v) = cache.get(key) {
        return Ok(v.re);
    }
    let v = compute()?;
    cache.put(
        key,
        CachedValue {
            re: v,
            im: 0.0,
            est_error: 1e-10,
        },
    );
    Ok(v)
}

/// Π (ρ_j² + z²)^{−1/2} Π on F_M at B = 1: diagonal, entry I(m_j, z).
pub fn position_v_single(params: &ProblemParams, j: usize, z: f64) -> Result<HermitianMatrix> {
    position_v_single_cached(params, j, z, &NoCache)
}

pub fn position_v_single_cached(
    params: &ProblemParams,
    j: usize,
    z: f64,
    cache: &dyn ElementCache,
) -> Result<HermitianMatrix> {
    check_particle(params, j)?;
    let basis = basis_of(params)?;
    let mut mat = HermitianMatrix::zeros(basis.len());
    for (i, t) in basis.iter().enumerate() {
        let m = t.entries[j];
        let key = cache_key("vsingle", &[m], &[m], z.abs());
        let v = cached_scalar(cache, &key, || v_single_scalar(m, z))?;
        mat.set(i, i, Complex64::new(v, 0.0));
    }
    Ok(mat)
}

/// Π (ρ_jk² + z²)^{−1/2} Π on F_M at B = 1 via the u,v rotation; couples
/// tuples that agree outside {j, k}.
pub fn position_v_pair(
    params: &ProblemParams,
    j: usize,
    k: usize,
    z: f64,
) -> Result<HermitianMatrix> {
    pair_operator(params, j, k, &|q| {
        let key = cache_key("vpair", &[q], &[q], z.abs());
        let _ = key;
        v_pair_scalar(q, z)
    })
}

/// C^e_{jk} = −Π log(¼ ρ_jk²) Π: same coupling structure with the log kernel;
/// per-mode radial values by quadrature (¼ρ_jk² = ρ_v²/2 in the rotated
/// relative coordinate, whose s-average is ψ(q+1)).
pub fn constant_ce(params: &ProblemParams, j: usize, k: usize) -> Result<HermitianMatrix> {
    constant_ce_cached(params, j, k, &NoCache)
}

pub fn constant_ce_cached(
    params: &ProblemParams,
    j: usize,
    k: usize,
    cache: &dyn ElementCache,
) -> Result<HermitianMatrix> {
    pair_operator(params, j, k, &|q| {
        let key = cache_key("ce-logmom", &[q], &[q], 0.0);
        cached_scalar(cache, &key, || Ok(-(log_moment_quadrature(q)?)))
    })
}

/// Assembles a pair operator whose rotated-relative-mode kernel is diagonal
/// with values `kernel(q)`.
fn pair_operator(
    params: &ProblemParams,
    j: usize,
    k: usize,
    kernel: &dyn Fn(usize) -> Result<f64>,
) -> Result<HermitianMatrix> {
    if params.n < 2 {
        return Err(Error::Domain("pair operators need N >= 2".into()));
    }
    check_particle(params, j)?;
    check_particle(params, k)?;
    if j == k {
        return Err(Error::Domain("pair indices must differ".into()));
    }
    let (j, k) = if j < k { (j, k) } else { (k, j) };
    let basis = basis_of(params)?;
    let d = basis.len();
    let mut kernel_vals: Vec<Option<f64>> = vec![None; params.m + 1];
    let mut mat = HermitianMatrix::zeros(d);
    for r in 0..d {
        for c in r..d {
            let (tr, tc) = (&basis[r], &basis[c]);
            let mut agree = true;
            for l in 0..params.n {
                if l != j && l != k && tr.entries[l] != tc.entries[l] {
                    agree = false;
                    break;
                }
            }
            let (a, b) = (tr.entries[j], tr.entries[k]);
            let (ap, bp) = (tc.entries[j], tc.entries[k]);
            if !agree || a + b != ap + bp {
                continue;
            }
            let da = pair_rotation_coefficients(a, b);
            let db = pair_rotation_coefficients(ap, bp);
            let mut val = 0.0f64;
            for p in 0..=(a + b) {
                let q = a + b - p;
                if kernel_vals[q].is_none() {
                    kernel_vals[q] = Some(kernel(q)?);
                }
                val += da[p] * db[p] * kernel_vals[q].unwrap();
            }
            mat.set_sym(r, c, Complex64::new(val, 0.0));
        }
    }
    mat.check_hermitian(1e-12)?;
    Ok(mat)
}

/// 2 Π K₀(ρ_j |ζ|) Π: Fourier transform of the single-particle potential.
pub fn fourier_v_single(params: &ProblemParams, j: usize, zeta: f64) -> Result<HermitianMatrix> {
    fourier_v_single_cached(params, j, zeta, &NoCache)
}

pub fn fourier_v_single_cached(
    params: &ProblemParams,
    j: usize,
    zeta: f64,
    cache: &dyn ElementCache,
) -> Result<HermitianMatrix> {
    check_particle(params, j)?;
    let basis = basis_of(params)?;
    let mut mat = HermitianMatrix::zeros(basis.len());
    for (i, t) in basis.iter().enumerate() {
        let m = t.entries[j];
        let key = cache_key("fourier", &[m], &[m], zeta.abs());
        let v = cached_scalar(cache, &key, || fourier_v_scalar(m, zeta))?;
        mat.set(i, i, Complex64::new(v, 0.0));
    }
    Ok(mat)
}

/// C^n_j = −Π log(¼ ρ_j²) Π: diagonal with entries log 2 − ψ(m_j + 1).
pub fn constant_cn(params: &ProblemParams, j: usize) -> Result<HermitianMatrix> {
    check_particle(params, j)?;
    let basis = basis_of(params)?;
    let mut mat = HermitianMatrix::zeros(basis.len());
    for (i, t) in basis.iter().enumerate() {
        let m = t.entries[j] as f64;
        let v = core::f64::consts::LN_2 - digamma(m + 1.0)?;
        mat.set(i, i, Complex64::new(v, 0.0));
    }
    Ok(mat)
}

/// v_C: per nucleus plane −Z(Pf + (log B + C^n_j) δ), per pair plane
/// +(Pf + (log B + C^e_jk) δ).
pub fn assemble_v_c(params: &ProblemParams) -> Result<DistributionPotential1D> {
    let basis = basis_of(params)?;
    let d = basis.len();
    let log_b = params.b_field.ln();
    let mut hyperplanes = Vec::new();
    let mut pf = Vec::new();
    let mut delta = Vec::new();
    for j in 0..params.n {
        hyperplanes.push(HyperplaneLabel::Nucleus(j));
        pf.push(HermitianMatrix::scaled_identity(d, -params.z));
        let cn = constant_cn(params, j)?;
        let m = &(&HermitianMatrix::scaled_identity(d, log_b) + &cn) * (-params.z);
        delta.push(m);
    }
    for j in 0..params.n {
        for k in (j + 1)..params.n {
            hyperplanes.push(HyperplaneLabel::Pair(j, k));
            pf.push(HermitianMatrix::scaled_identity(d, 1.0));
            let ce = constant_ce(params, j, k)?;
            delta.push(&HermitianMatrix::scaled_identity(d, log_b) + &ce);
        }
    }
    Ok(DistributionPotential1D {
        hyperplanes,
        pf_coeff: pf,
        delta_coeff: delta,
    })
}

/// v_δ with the paper's coupling 2α(B): −2αZ δ on nucleus planes, +2α δ on
/// pair planes, no finite parts.
pub fn assemble_v_delta(params: &ProblemParams) -> Result<DistributionPotential1D> {
    let basis = basis_of(params)?;
    let d = basis.len();
    let alpha = crate::specialfn::alpha_of_b(params.b_field)?.value;
    let mut hyperplanes = Vec::new();
    let mut pf = Vec::new();
    let mut delta = Vec::new();
    for j in 0..params.n {
        hyperplanes.push(HyperplaneLabel::Nucleus(j));
        pf.push(HermitianMatrix::zeros(d));
        delta.push(HermitianMatrix::scaled_identity(d, -2.0 * alpha * params.z));
    }
    for j in 0..params.n {
        for k in (j + 1)..params.n {
            hyperplanes.push(HyperplaneLabel::Pair(j, k));
            pf.push(HermitianMatrix::zeros(d));
            delta.push(HermitianMatrix::scaled_identity(d, 2.0 * alpha));
        }
    }
    Ok(DistributionPotential1D {
        hyperplanes,
        pf_coeff: pf,
        delta_coeff: delta,
    })
}

// --- quadrature constants ---------------------------------------------------

/// std-only memo for expensive M-keyed constants (ledger construction hits
/// the same mode ranges over and over).
#[cfg(feature = "std")]
fn memo_by_key(slot: usize, key: usize, compute: impl FnOnce() -> Result<f64>) -> Result<f64> {
    use std::collections::BTreeMap;
    use std::sync::Mutex;
    static MEMO: Mutex<BTreeMap<(usize, usize), f64>> = Mutex::new(BTreeMap::new());
    if let Some(v) = MEMO.lock().unwrap().get(&(slot, key)) {
        return Ok(*v);
    }
    let v = compute()?;
    MEMO.lock().unwrap().insert((slot, key), v);
    Ok(v)
}

#[cfg(not(feature = "std"))]
fn memo_by_key(_slot: usize, _key: usize, compute: impl FnOnce() -> Result<f64>) -> Result<f64> {
    compute()
}

/// ((1/4π) ∫_ℝ (|log|η|| + 2)² / (η² + 4) dη)^{1/2}.
pub fn constant_c37() -> Result<f64> {
    memo_by_key(0, 0, constant_c37_uncached)
}

fn constant_c37_uncached() -> Result<f64> {
    let f = |eta: f64| {
        if eta <= 0.0 {
            return 0.0;
        }
        let t = eta.ln().abs() + 2.0;
        t * t / (eta * eta + 4.0)
    };
    let head = adaptive_simpson(f, 0.0, 1.0, 1e-9)?;
    // η = 1/u on the tail
    let tail = adaptive_simpson(
        |u| {
            if u <= 0.0 {
                return 0.0;
            }
            f(1.0 / u) / (u * u)
        },
        0.0,
        1.0,
        1e-9,
    )?;
    Ok((2.0 * (head + tail) / (4.0 * core::f64::consts::PI)).sqrt())
}

/// ⟨|log ρ|⟩ in mode m at B = 1 (ρ = √(2s)): quadrature with the kink at
/// s = 1/2 split out.
pub fn abs_log_rho_moment(m: usize) -> Result<f64> {
    let mf = m as f64;
    let ln_mfact = ln_gamma(mf + 1.0)?;
    let f = |s: f64| {
        if s <= 0.0 {
            return 0.0;
        }
        (mf * s.ln() - s - ln_mfact).exp() * 0.5 * (2.0 * s).ln().abs()
    };
    let a = adaptive_simpson(&f, 0.0, 0.5, 1e-11)?;
    let b = adaptive_simpson(&f, 0.5, mf + 50.0, 1e-11)?;
    Ok(a + b)
}

/// 2 + 2‖Π |log ρ| Π‖ over single-particle modes m ≤ M.
pub fn constant_cv11(params: &ProblemParams) -> Result<f64> {
    params.validate()?;
    let mut worst = 0.0f64;
    for m in 0..=params.m {
        worst = worst.max(memo_by_key(1, m, || abs_log_rho_moment(m))?);
    }
    Ok(2.0 + 2.0 * worst)
}

/// The explicit radical bounding ‖𝓕V₁¹ − its δ approximation‖:
/// (π² + 9log²2 + 64√2/π + sup_{|ζ|≤1}‖𝓕V+2log|ζ|‖² + (8√2/π)·sup_{|ζ|≥1}‖𝓕V‖²)^{1/2}.
pub fn constant_c63(params: &ProblemParams) -> Result<f64> {
    constant_c63_cached(params, &NoCache)
}

pub fn constant_c63_cached(params: &ProblemParams, cache: &dyn ElementCache) -> Result<f64> {
    params.validate()?;
    // single-particle quantity: only the mode range 0..=M matters; per-mode
    // sups are memoized since ledger builds revisit the same modes
    let pts = 400;
    let mode_sup_inner = |m: usize| -> Result<f64> {
        // log grid 1e−6 … 1: sup of |𝓕V + 2 log ζ| (small-ζ limit finite)
        let mut sup = 0.0f64;
        for i in 0..=pts {
            let zeta = 10f64.powf(-6.0 + 6.0 * i as f64 / pts as f64);
            let key = cache_key("fourier", &[m], &[m], zeta);
            let v = cached_scalar(cache, &key, || fourier_v_scalar(m, zeta))?;
            sup = sup.max((v + 2.0 * zeta.ln()).abs());
        }
        Ok(sup)
    };
    let mode_sup_outer = |m: usize| -> Result<f64> {
        // 1 … 50: 𝓕V decays exponentially, dense near 1
        let mut sup = 0.0f64;
        for i in 0..=pts {
            let zeta = 10f64.powf(1.7 * i as f64 / pts as f64);
            let key = cache_key("fourier", &[m], &[m], zeta);
            let v = cached_scalar(cache, &key, || fourier_v_scalar(m, zeta))?;
            sup = sup.max(v.abs());
        }
        Ok(sup)
    };
    let mut sup_inner = 0.0f64;
    let mut sup_outer = 0.0f64;
    for m in 0..=params.m {
        sup_inner = sup_inner.max(memo_by_key(2, m, || mode_sup_inner(m))?);
        sup_outer = sup_outer.max(memo_by_key(3, m, || mode_sup_outer(m))?);
    }
    let l2 = core::f64::consts::LN_2;
    let pi = core::f64::consts::PI;
    let sq2 = core::f64::consts::SQRT_2;
    Ok((pi * pi
        + 9.0 * l2 * l2
        + 64.0 * sq2 / pi
        + sup_inner * sup_inner
        + (8.0 * sq2 / pi) * sup_outer * sup_outer)
        .sqrt())
}

/// C_v² = ∫ ‖e(ζ)‖²/ζ² dζ for the asymptotic error
/// e(ζ) = 𝓕V(ζ) + (2log|ζ| + 2γ)·I − C^n, maximized over modes m ≤ M;
/// realized numerically, with the analytic large-ζ tail
/// (2log ζ + 2γ − C^n_m)²/ζ² integrated in closed form.
pub fn constant_c_frak_v(params: &ProblemParams) -> Result<f64> {
    constant_c_frak_v_cached(params, &NoCache)
}

pub fn constant_c_frak_v_cached(params: &ProblemParams, cache: &dyn ElementCache) -> Result<f64> {
    params.validate()?;
    let mut worst = 0.0f64;
    for m in 0..=params.m {
        worst = worst.max(memo_by_key(4, m, || c_frak_v_mode(m, cache))?);
    }
    Ok(worst)
}

fn c_frak_v_mode(m: usize, cache: &dyn ElementCache) -> Result<f64> {
    {
        let cn = core::f64::consts::LN_2 - digamma(m as f64 + 1.0)?;
        let e_abs = |zeta: f64| -> Result<f64> {
            let key = cache_key("fourier", &[m], &[m], zeta);
            let v = cached_scalar(cache, &key, || fourier_v_scalar(m, zeta))?;
            Ok((v + 2.0 * zeta.ln() + 2.0 * EULER_GAMMA - cn).abs())
        };
        // trapezoid on a log grid over [1e−6, T]; integrand ~ ζ³log²ζ near 0
        let t_cut = 60.0f64;
        let pts = 600usize;
        let mut total = 0.0f64;
        let mut prev: Option<(f64, f64)> = None;
        for i in 0..=pts {
            let zeta = 10f64.powf(-6.0 + (t_cut.log10() + 6.0) * i as f64 / pts as f64);
            let e = e_abs(zeta)?;
            let val = e * e / (zeta * zeta);
            if let Some((pz, pv)) = prev {
                total += 0.5 * (pv + val) * (zeta - pz);
            }
            prev = Some((zeta, val));
        }
        // tail: 𝓕V < 1e−20 here, so ‖e‖ = |2logζ + c| with c = 2γ − C^n;
        // ∫_T^∞ (2lnζ + c)²/ζ² dζ = (4ln²T + (4+4c)... ) computed exactly:
        // ∫ (2lnζ+c)²/ζ² = [−(2lnζ+c)²/ζ] + ∫ 4(2lnζ+c)/ζ² … closed form below
        let c = 2.0 * EULER_GAMMA - cn;
        let lt = t_cut.ln();
        let tail = ((2.0 * lt + c).powi(2) + 4.0 * (2.0 * lt + c) + 8.0) / t_cut;
        total += tail;
        Ok(total.sqrt())
    }
}

/// The asymptotic-comparison constant 2^{1/4} C_v / √π.
pub fn constant_c_asymp_vj(params: &ProblemParams) -> Result<f64> {
    Ok(2f64.powf(0.25) * constant_c_frak_v(params)? / core::f64::consts::PI.sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cache::MemCache;

    #[test]
    fn rotation_coefficients_unitary() {
        for (a, b) in [(0usize, 0usize), (0, 2), (1, 1), (3, 2), (4, 4)] {
            let d = pair_rotation_coefficients(a, b);
            let s: f64 = d.iter().map(|x| x * x).sum();
            assert!((s - 1.0).abs() < 1e-12, "(a,b)=({a},{b}): {s}");
        }
    }

    #[test]
    fn v_single_values() {
        // z = 0, m = 0: √(π/2); general z = 0: Γ(m+½)/(√2 m!)
        let v = v_single_scalar(0, 0.0).unwrap();
        assert!((v - (core::f64::consts::PI / 2.0).sqrt()).abs() < 1e-10, "{v}");
        for m in 1..6usize {
            let v = v_single_scalar(m, 0.0).unwrap();
            let exact = crate::specialfn::gamma_fn(m as f64 + 0.5).unwrap()
                / (core::f64::consts::SQRT_2 * crate::specialfn::gamma_fn(m as f64 + 1.0).unwrap());
            assert!((v - exact).abs() < 1e-9 * exact, "m={m}");
        }
        // Coulomb tail
        for m in [0usize, 3] {
            let z = 1e3;
            let v = v_single_scalar(m, z).unwrap();
            assert!((v * z - 1.0).abs() < 1e-3, "m={m}: {v}");
        }
        // independent adaptive oracle at (m=1, z=1): direct s-integral with
        // the singular point far from the contour
        let oracle = adaptive_simpson(
            |s| {
                if s <= 0.0 {
                    0.0
                } else {
                    s * (-s).exp() / (2.0 * s + 1.0).sqrt()
                }
            },
            0.0,
            60.0,
            1e-12,
        )
        .unwrap();
        assert!((v_single_scalar(1, 1.0).unwrap() - oracle).abs() < 1e-8);
        // continuity across the |z| = 1 method switch
        let lo = v_single_scalar(2, 1.0 - 1e-9).unwrap();
        let hi = v_single_scalar(2, 1.0 + 1e-9).unwrap();
        assert!((lo - hi).abs() < 1e-8);
    }

    #[test]
    fn position_v_single_matrix_shape() {
        let p = ProblemParams::new(1.0, 1.0, 2, 2).unwrap();
        let m = position_v_single(&p, 0, 0.5).unwrap();
        assert_eq!(m.dim, 3);
        // diagonal; basis order (0,2),(1,1),(2,0) — entry depends on m_0
        for r in 0..3 {
            for c in 0..3 {
                if r != c {
                    assert_eq!(m.get(r, c).norm(), 0.0);
                }
            }
        }
        assert!((m.get(0, 0).re - v_single_scalar(0, 0.5).unwrap()).abs() < 1e-12);
        assert!((m.get(2, 2).re - v_single_scalar(2, 0.5).unwrap()).abs() < 1e-12);
        // even in z
        let m2 = position_v_single(&p, 0, -0.5).unwrap();
        assert_eq!(m, m2);
        assert!(position_v_single(&p, 5, 0.0).is_err());
    }

    #[test]
    fn position_v_pair_cross_checks() {
        // N=2, M=0, z=0: 1×1, two routes
        let p = ProblemParams::new(1.0, 1.0, 2, 0).unwrap();
        let m = position_v_pair(&p, 0, 1, 0.0).unwrap();
        assert_eq!(m.dim, 1);
        let direct = 0.5 * core::f64::consts::PI.sqrt(); // ∫ e^{-s}(4s)^{-1/2} = ½Γ(½)
        assert!((m.get(0, 0).re - direct).abs() < 1e-9);
        // large z → identity/|z|
        let p2 = ProblemParams::new(1.0, 1.0, 2, 2).unwrap();
        let far = position_v_pair(&p2, 0, 1, 1e3).unwrap();
        for i in 0..3 {
            assert!((far.get(i, i).re * 1e3 - 1.0).abs() < 1e-3);
            for j in 0..3 {
                if i != j {
                    assert!(far.get(i, j).norm() * 1e3 < 1e-2);
                }
            }
        }
        // Hermitian, and parity-forced zeros: (0,2)↔(1,1) couples through
        // rotated modes of mixed parity, which the kernel (diagonal, even)
        // cannot mix when the d-coefficient parities are disjoint — here the
        // (1,1) state populates only even v-modes q ∈ {0,2} with u-parity
        // fixed, so the coupling is real and symmetric but non-zero only
        // where allowed; just assert Hermiticity and symmetry in j,k.
        let a = position_v_pair(&p2, 0, 1, 0.7).unwrap();
        let b = position_v_pair(&p2, 1, 0, 0.7).unwrap();
        assert_eq!(a, b);
        a.check_hermitian(1e-12).unwrap();
    }

    #[test]
    fn cn_matches_quadrature_oracle() {
        let p = ProblemParams::new(1.0, 1.0, 2, 3).unwrap();
        let cn = constant_cn(&p, 0).unwrap();
        let basis = enumerate_sigma(2, 3).unwrap();
        for (i, t) in basis.iter().enumerate() {
            let m = t.entries[0];
            // oracle: −⟨log(ρ²/4)⟩ = −⟨log(s/2)⟩ = ln2 − ⟨ln s⟩ by direct quadrature
            let oracle = core::f64::consts::LN_2 - log_moment_quadrature(m).unwrap();
            assert!((cn.get(i, i).re - oracle).abs() < 1e-9, "m={m}");
        }
        // m = 0 entry: log 2 + γ
        let p0 = ProblemParams::new(1.0, 1.0, 1, 0).unwrap();
        let c0 = constant_cn(&p0, 0).unwrap();
        assert!((c0.get(0, 0).re - (core::f64::consts::LN_2 + EULER_GAMMA)).abs() < 1e-12);
    }

    #[test]
    fn log_moment_is_digamma() {
        for q in 0..10usize {
            let quad = log_moment_quadrature(q).unwrap();
            let psi = digamma(q as f64 + 1.0).unwrap();
            assert!((quad - psi).abs() < 1e-9, "q={q}: {quad} vs {psi}");
        }
    }

    #[test]
    fn mixing_element_exact_value() {
        // ⟨X_(0,2)| C^e |X_(1,1)⟩ at N=2, B=1. Closed form 3√2/8 = 3/(4√2):
        // the printed value in the source derivation drops a factor 4.
        let p = ProblemParams::new(1.0, 1.0, 2, 2).unwrap();
        let ce = constant_ce(&p, 0, 1).unwrap();
        // basis order: (0,2), (1,1), (2,0)
        let got = ce.get(0, 1).re;
        let want = 3.0 * core::f64::consts::SQRT_2 / 8.0;
        assert!((got - want).abs() < 1e-9, "{got} vs {want}");
        // Hermiticity partner
        assert!((ce.get(1, 0).re - got).abs() < 1e-12);
        // independent oracle: expansion in rotated modes with ψ values
        let psi1 = -EULER_GAMMA;
        let psi3 = -EULER_GAMMA + 1.5;
        let oracle = -(core::f64::consts::SQRT_2 / 4.0) * (psi1 - psi3);
        assert!((got - oracle).abs() < 1e-9);
        // by symmetry ⟨X_(2,0)|C^e|X_(1,1)⟩ must equal it
        assert!((ce.get(2, 1).re - got).abs() < 1e-9);
    }

    #[test]
    fn ce_m0_value() {
        // N=2, M=0: ¼ρ₁₂² averages to s in the rotated relative mode, so the
        // single entry is −⟨ln s⟩ = −ψ(1) = γ (no log-2 shift, unlike C^n)
        let p = ProblemParams::new(1.0, 1.0, 2, 0).unwrap();
        let ce = constant_ce(&p, 0, 1).unwrap();
        let want = EULER_GAMMA;
        assert!((ce.get(0, 0).re - want).abs() < 1e-9, "{}", ce.get(0, 0).re);
    }

    #[test]
    fn fourier_asymptotics_and_decay() {
        let p = ProblemParams::new(1.0, 1.0, 1, 2).unwrap();
        // small ζ: 𝓕V + 2logζ + 2γ − C^n = O(ζ²|logζ|)
        let cn = constant_cn(&p, 0).unwrap().get(0, 0).re;
        let mut prev_c: Option<f64> = None;
        for &zeta in &[0.1f64, 0.05, 0.025] {
            let fv = fourier_v_scalar(2, zeta).unwrap();
            let e = (fv + 2.0 * zeta.ln() + 2.0 * EULER_GAMMA - cn).abs();
            let c = e / (zeta * zeta * zeta.ln().abs());
            if let Some(pc) = prev_c {
                assert!(c / pc < 3.0 && c / pc > 0.3, "unstable: {c} vs {pc}");
            }
            prev_c = Some(c);
        }
        // ζ = 1, m = 0 oracle
        let oracle = adaptive_simpson(
            |s| {
                if s <= 0.0 {
                    0.0
                } else {
                    2.0 * (-s).exp() * bessel_k0((2.0 * s).sqrt()).unwrap()
                }
            },
            0.0,
            60.0,
            1e-11,
        )
        .unwrap();
        assert!((fourier_v_scalar(0, 1.0).unwrap() - oracle).abs() < 1e-7);
        // large ζ decay
        assert!(fourier_v_scalar(1, 50.0).unwrap() < 1e-8);
        assert!(fourier_v_scalar(0, 0.0).is_err());
    }

    #[test]
    fn fourier_matches_numeric_transform() {
        // 𝓕V(ζ) = 2∫₀^∞ V(z) cos(ζz) dz with the Coulomb tail corrected by
        // the cosine-integral asymptotics: ∫_Z^∞ cos(ζz)/z dz = −Ci(ζZ).
        let big_z = 400.0f64;
        for m in 0..=3usize {
            for &zeta in &[0.2f64, 1.0, 5.0] {
                // chunked: a global absolute tolerance over a 400-long
                // oscillatory range forces needlessly deep recursion
                let mut head = 0.0f64;
                let mut a = 0.0f64;
                while a < big_z {
                    let b = (a + 4.0).min(big_z);
                    head += adaptive_simpson(
                        |z| v_single_scalar(m, z).unwrap() * (zeta * z).cos(),
                        a,
                        b,
                        1e-7,
                    )
                    .unwrap();
                    a = b;
                }
                let x = zeta * big_z;
                // V(z) = 1/z + O(1/z³) out here; tail = −Ci(ζZ), Ci by its
                // asymptotic expansion to O(x^{-4})
                let ci = x.sin() / x - x.cos() / (x * x) - 2.0 * x.sin() / (x * x * x);
                let numeric = 2.0 * (head - ci);
                let direct = fourier_v_scalar(m, zeta).unwrap();
                assert!(
                    (numeric - direct).abs() < 1e-4,
                    "m={m} ζ={zeta}: {numeric} vs {direct}"
                );
            }
        }
    }

    #[test]
    fn c37_value() {
        let c = constant_c37().unwrap();
        assert!((c * c - 1.525).abs() < 0.02, "C37² = {}", c * c);
        assert!(c >= (0.5f64).sqrt());
    }

    #[test]
    fn k0_log_envelope_sup() {
        // sup over ζ of (|log ζ|+1)^{−1} K₀(ζ) = 1, approached as ζ → 0
        let mut sup = 0.0f64;
        for i in 0..2000 {
            let zeta = 10f64.powf(-8.0 + 10.0 * i as f64 / 1999.0);
            let v = bessel_k0(zeta).unwrap() / (zeta.ln().abs() + 1.0);
            sup = sup.max(v);
        }
        // approach to 1 is logarithmic: at ζ = 1e−8 the ratio is only ≈ 0.954
        assert!(sup <= 1.0 + 1e-9, "{sup}");
        assert!(sup > 0.95, "{sup}");
    }

    #[test]
    fn cv11_values_and_growth() {
        let p0 = ProblemParams::new(1.0, 1.0, 1, 0).unwrap();
        let c0 = constant_cv11(&p0).unwrap();
        // oracle at M=0: ⟨|log ρ|⟩ with ρ=√(2s)
        let oracle = abs_log_rho_moment(0).unwrap();
        assert!((c0 - (2.0 + 2.0 * oracle)).abs() < 1e-10);
        // logarithmic growth: ⟨|log ρ|⟩_m ≈ ½ log(2m), so C_V11 ≈ 2 + log(2M)
        let mut prev = c0;
        for &mm in &[50usize, 100, 200] {
            let p = ProblemParams::new(1.0, 1.0, 1, mm).unwrap();
            let c = constant_cv11(&p).unwrap();
            assert!(c > prev);
            let model = 2.0 + (2.0 * mm as f64).ln();
            assert!((c / model - 1.0).abs() < 0.15, "M={mm}: {c} vs {model}");
            prev = c;
        }
    }

    #[test]
    fn c63_structure() {
        let p = ProblemParams::new(1.0, 1.0, 1, 0).unwrap();
        let cache = MemCache::new();
        let c = constant_c63_cached(&p, &cache).unwrap();
        let l2 = core::f64::consts::LN_2;
        let floor = (core::f64::consts::PI.powi(2) + 9.0 * l2 * l2).sqrt();
        assert!(c > floor);
        // ζ→0 limit of |𝓕V + 2logζ| is |−2γ + C^n₀₀| = |ln2 − 3γ|… check the
        // sampled sup is at least that limiting value
        let cn00 = l2 + EULER_GAMMA;
        let limit = (cn00 - 2.0 * EULER_GAMMA).abs();
        let pi = core::f64::consts::PI;
        let sq2 = core::f64::consts::SQRT_2;
        let inner_sq = c * c - pi * pi - 9.0 * l2 * l2 - 64.0 * sq2 / pi;
        assert!(inner_sq > limit * limit * 0.99);
        // warm cache: second run identical
        let c2 = constant_c63_cached(&p, &cache).unwrap();
        assert_eq!(c, c2);
        assert!(cache.len() > 0);
    }

    #[test]
    fn assemble_structures() {
        let p = ProblemParams::new((2.0f64).exp(), 1.0, 2, 1).unwrap();
        let vc = assemble_v_c(&p).unwrap();
        assert_eq!(vc.hyperplanes.len(), 3);
        assert_eq!(vc.hyperplanes[2], HyperplaneLabel::Pair(0, 1));
        // nucleus pf = −Z·I
        assert!((vc.pf_coeff[0].get(0, 0).re + 1.0).abs() < 1e-14);
        // nucleus delta = −Z(logB + C^n): diagonal entry for tuple (0,1) is
        // −(2 + ln2 − ψ(1)) at particle 0 mode 0
        let want = -(2.0 + core::f64::consts::LN_2 + EULER_GAMMA);
        assert!((vc.delta_coeff[0].get(0, 0).re - want).abs() < 1e-10);

        let vd = assemble_v_delta(&p).unwrap();
        let alpha = crate::specialfn::alpha_of_b(p.b_field).unwrap().value;
        assert!((alpha - 1.0).abs() < 1e-12);
        assert!(vd.pf_coeff.iter().all(|m| m.max_abs_entry() == 0.0));
        assert!((vd.delta_coeff[0].get(0, 0).re + 2.0).abs() < 1e-12);
        assert!((vd.delta_coeff[2].get(0, 0).re - 2.0).abs() < 1e-12);
    }

    #[test]
    fn cn_permutation_consistency() {
        // C^n_j depends on j only through index relabeling: for rep-symmetric
        // bases the diagonal multiset coincides
        let p = ProblemParams::new(1.0, 1.0, 3, 4).unwrap();
        let mut sets: Vec<Vec<i64>> = Vec::new();
        for j in 0..3 {
            let c = constant_cn(&p, j).unwrap();
            let mut d: Vec<i64> = (0..c.dim)
                .map(|i| (c.get(i, i).re * 1e12).round() as i64)
                .collect();
            d.sort_unstable();
            sets.push(d);
        }
        assert_eq!(sets[0], sets[1]);
        assert_eq!(sets[1], sets[2]);
        // ... but C^n_j is genuinely j-dependent entrywise
        let c0 = constant_cn(&p, 0).unwrap();
        let c1 = constant_cn(&p, 1).unwrap();
        assert!(c0 != c1);
    }

    #[test]
    fn c_frak_v_finite_and_stable() {
        let p = ProblemParams::new(1.0, 1.0, 1, 0).unwrap();
        let cv = constant_c_frak_v(&p).unwrap();
        assert!(cv.is_finite() && cv > 0.0);
        let ca = constant_c_asymp_vj(&p).unwrap();
        assert!((ca - 2f64.powf(0.25) * cv / core::f64::consts::PI.sqrt()).abs() < 1e-14);
    }
}
