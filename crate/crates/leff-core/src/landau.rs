//! Lowest Landau band combinatorics: the partition set Σ(M), its
//! symmetric-group orbit decomposition, the single-particle modes χ_m, and
//! the coset machinery used to fermionize the effective models.

use alloc::format;
use alloc::rc::Rc;
use alloc::vec;
use alloc::vec::Vec;
use num_complex::Complex64;
#[allow(unused_imports)] // used by the no_std float fallbacks
use num_traits::Float;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::specialfn::ln_gamma;

/// Physical configuration every computation is parameterized by.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProblemParams {
    /// Field strength B (atomic units).
    pub b_field: f64,
    /// Nuclear charge Z.
    pub z: f64,
    /// Electron count N.
    pub n: usize,
    /// Total z-angular momentum M.
    pub m: usize,
}

impl ProblemParams {
    pub fn new(b_field: f64, z: f64, n: usize, m: usize) -> Result<Self> {
        let p = ProblemParams { b_field, z, n, m };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.b_field > 0.0) {
            return Err(Error::Domain(format!("B must be positive, got {}", self.b_field)));
        }
        if !(self.z >= 0.0) {
            return Err(Error::Domain(format!("Z must be nonnegative, got {}", self.z)));
        }
        if self.n < 1 {
            return Err(Error::Domain("N must be at least 1".into()));
        }
        if self.n > MAX_N {
            return Err(Error::Unsupported(format!(
                "N = {} exceeds the supported maximum {MAX_N}",
                self.n
            )));
        }
        Ok(())
    }
}

/// Exhaustive symmetric-group operations stay cheap up to 8! elements.
pub const MAX_N: usize = 8;

/// An element of Σ(M): N nonnegative integers summing to M.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PartitionTuple {
    pub entries: Vec<usize>,
}

impl PartitionTuple {
    pub fn new(entries: Vec<usize>) -> Self {
        PartitionTuple { entries }
    }

    pub fn total(&self) -> usize {
        self.entries.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Canonical orbit representative: entries sorted descending.
    pub fn is_canonical(&self) -> bool {
        self.entries.windows(2).all(|w| w[0] >= w[1])
    }

    pub fn sorted_descending(&self) -> PartitionTuple {
        let mut e = self.entries.clone();
        e.sort_unstable_by(|a, b| b.cmp(a));
        PartitionTuple { entries: e }
    }

    /// Stabilizer order under coordinate permutations:
    /// product of (multiplicity of each distinct value)!.
    pub fn stabilizer_order(&self) -> usize {
        let mut sorted = self.entries.clone();
        sorted.sort_unstable();
        let mut ord = 1usize;
        let mut run = 1usize;
        for i in 1..sorted.len() {
            if sorted[i] == sorted[i - 1] {
                run += 1;
            } else {
                ord *= factorial(run);
                run = 1;
            }
        }
        ord * factorial(run)
    }

    pub fn all_distinct(&self) -> bool {
        self.stabilizer_order() == 1
    }
}

/// Whether an orbit sits in 𝓜₁ (trivial stabilizer) or 𝓜₂.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum OrbitClass {
    Free,
    NonTrivial,
}

/// S_N-orbit structure of Σ(M).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrbitDecomposition {
    pub representatives: Vec<PartitionTuple>,
    pub orbit_sizes: Vec<usize>,
    pub stabilizer_orders: Vec<usize>,
    pub class_flags: Vec<OrbitClass>,
}

pub fn factorial(n: usize) -> usize {
    (1..=n).product()
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc = 1usize;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// All of Σ(M) in lexicographic order; |Σ(M)| = C(M+N−1, N−1).
pub fn enumerate_sigma(n: usize, m: usize) -> Result<Vec<PartitionTuple>> {
    if n < 1 {
        return Err(Error::Domain("N must be at least 1".into()));
    }
    let mut out = Vec::with_capacity(binomial(m + n - 1, n - 1));
    let mut cur = vec![0usize; n];
    fill_sigma(&mut cur, 0, m, &mut out);
    Ok(out)
}

fn fill_sigma(cur: &mut Vec<usize>, idx: usize, remaining: usize, out: &mut Vec<PartitionTuple>) {
    if idx + 1 == cur.len() {
        cur[idx] = remaining;
        out.push(PartitionTuple::new(cur.clone()));
        return;
    }
    for v in 0..=remaining {
        cur[idx] = v;
        fill_sigma(cur, idx + 1, remaining - v, out);
    }
}

/// Orbit decomposition of a full Σ(M) listing.
pub fn orbit_decompose(sigma: &[PartitionTuple]) -> OrbitDecomposition {
    let mut seen: Vec<PartitionTuple> = Vec::new();
    let mut reps = Vec::new();
    let mut sizes = Vec::new();
    let mut stabs = Vec::new();
    let mut flags = Vec::new();
    for t in sigma {
        let rep = t.sorted_descending();
        if seen.contains(&rep) {
            continue;
        }
        seen.push(rep.clone());
        let n = rep.len();
        let stab = rep.stabilizer_order();
        reps.push(rep);
        stabs.push(stab);
        sizes.push(factorial(n) / stab);
        flags.push(if stab == 1 {
            OrbitClass::Free
        } else {
            OrbitClass::NonTrivial
        });
    }
    OrbitDecomposition {
        representatives: reps,
        orbit_sizes: sizes,
        stabilizer_orders: stabs,
        class_flags: flags,
    }
}

/// Smallest M for which some orbit has all entries distinct: 0+1+…+(N−1).
pub fn min_m_with_free_orbit(n: usize) -> usize {
    n * (n - 1) / 2
}

// --- permutations -----------------------------------------------------------
//
// A permutation is an array p with p[i] = image of i. Group product
// `compose(a, b)` is a∘b (apply b first). Tuples carry the left action
// act(p, m)[p[i]] = m[i], so orbit elements correspond to left cosets of the
// stabilizer.

pub type Perm = Vec<usize>;

pub fn perm_identity(n: usize) -> Perm {
    (0..n).collect()
}

pub fn perm_compose(a: &[usize], b: &[usize]) -> Perm {
    b.iter().map(|&i| a[i]).collect()
}

pub fn perm_inverse(p: &[usize]) -> Perm {
    let mut inv = vec![0usize; p.len()];
    for (i, &pi) in p.iter().enumerate() {
        inv[pi] = i;
    }
    inv
}

pub fn perm_sign(p: &[usize]) -> i32 {
    let mut visited = vec![false; p.len()];
    let mut sign = 1i32;
    for start in 0..p.len() {
        if visited[start] {
            continue;
        }
        let mut len = 0usize;
        let mut i = start;
        while !visited[i] {
            visited[i] = true;
            i = p[i];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

/// Left action on index tuples: entry at slot i moves to slot p[i].
pub fn perm_act(p: &[usize], m: &[usize]) -> Vec<usize> {
    let mut out = vec![0usize; m.len()];
    for (i, &v) in m.iter().enumerate() {
        out[p[i]] = v;
    }
    out
}

/// Same action on coordinate vectors.
pub fn perm_act_f64(p: &[usize], z: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0f64; z.len()];
    for (i, &v) in z.iter().enumerate() {
        out[p[i]] = v;
    }
    out
}

pub fn all_permutations(n: usize) -> Result<Vec<Perm>> {
    if n > MAX_N {
        return Err(Error::Unsupported(format!(
            "exhaustive permutation listing capped at N = {MAX_N}, got {n}"
        )));
    }
    let mut out = Vec::with_capacity(factorial(n));
    let mut cur = perm_identity(n);
    heap_permute(&mut cur, n, &mut out);
    Ok(out)
}

fn heap_permute(cur: &mut Perm, k: usize, out: &mut Vec<Perm>) {
    if k <= 1 {
        out.push(cur.clone());
        return;
    }
    for i in 0..k {
        heap_permute(cur, k - 1, out);
        if k % 2 == 0 {
            cur.swap(i, k - 1);
        } else {
            cur.swap(0, k - 1);
        }
    }
}

/// Canonically ordered coset representatives σ₁ = e, σ₂, …, σ_K of the
/// stabilizer of `rep`: orbit tuples are listed with `rep` first and the
/// rest ascending lexicographically; σ_j is the lexicographically smallest
/// permutation carrying `rep` to the j-th tuple.
pub fn coset_representatives(rep: &PartitionTuple) -> Result<(Vec<Perm>, Vec<PartitionTuple>)> {
    if !rep.is_canonical() {
        return Err(Error::Domain(
            "orbit representative must be sorted descending".into(),
        ));
    }
    let n = rep.len();
    let perms = all_permutations(n)?;
    let mut tuples: Vec<PartitionTuple> = Vec::new();
    for p in &perms {
        let t = PartitionTuple::new(perm_act(p, &rep.entries));
        if !tuples.contains(&t) {
            tuples.push(t);
        }
    }
    tuples.sort();
    // rep itself first (it is the lexicographically largest orbit element)
    if let Some(pos) = tuples.iter().position(|t| t == rep) {
        let r = tuples.remove(pos);
        tuples.insert(0, r);
    }
    let mut sigmas = Vec::with_capacity(tuples.len());
    for t in &tuples {
        let mut best: Option<Perm> = None;
        for p in &perms {
            if perm_act(p, &rep.entries) == t.entries {
                match &best {
                    Some(b) if p >= b => {}
                    _ => best = Some(p.clone()),
                }
            }
        }
        sigmas.push(best.expect("orbit tuple must be reachable"));
    }
    Ok((sigmas, tuples))
}

/// The homomorphism ρ : S_N → S_K of the fermionization lemma:
/// ρ(τ)(i) = j ⟺ τσᵢ lies in the coset σⱼ·G_rep.
pub fn rho_homomorphism(rep: &PartitionTuple, tau: &[usize]) -> Result<Perm> {
    let (sigmas, _tuples) = coset_representatives(rep)?;
    let k = sigmas.len();
    let mut out = vec![usize::MAX; k];
    for (i, sig_i) in sigmas.iter().enumerate() {
        let p = perm_compose(tau, sig_i);
        let mut found = None;
        for (j, sig_j) in sigmas.iter().enumerate() {
            // p ∈ σⱼ G_rep ⟺ σⱼ⁻¹ p stabilizes rep
            let q = perm_compose(&perm_inverse(sig_j), &p);
            if perm_act(&q, &rep.entries) == rep.entries {
                found = Some(j);
                break;
            }
        }
        out[i] = found.ok_or_else(|| Error::Internal("coset cover incomplete".into()))?;
    }
    Ok(out)
}

// --- single-particle modes --------------------------------------------------

/// A lowest Landau mode χ_m at field strength B.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LandauMode {
    pub m: usize,
    pub b_field: f64,
}

/// χ_m^B(x,y) = (B^{m+1}/(2π 2^m m!))^{1/2} ρ^m e^{imφ} e^{−Bρ²/4}.
pub fn chi_value(mode: &LandauMode, x: f64, y: f64) -> Complex64 {
    let b = mode.b_field;
    let m = mode.m as f64;
    let rho2 = x * x + y * y;
    let ln_norm = 0.5
        * ((m + 1.0) * b.ln()
            - (2.0 * core::f64::consts::PI).ln()
            - m * core::f64::consts::LN_2
            - ln_gamma(m + 1.0).expect("m+1 > 0"));
    let radial = if mode.m == 0 {
        1.0
    } else {
        (0.5 * m * rho2.ln()).exp()
    };
    if rho2 == 0.0 && mode.m > 0 {
        return Complex64::new(0.0, 0.0);
    }
    let amp = ln_norm.exp() * radial * (-b * rho2 / 4.0).exp();
    let phi = y.atan2(x);
    Complex64::new(0.0, m * phi).exp() * amp
}

// --- antisymmetric reconstruction -------------------------------------------

/// Coefficient functions a_j(z) = (−1)^{σⱼ} a₁(σⱼ·z) turning a single
/// longitudinal amplitude into a totally antisymmetric state
/// ψ = Σⱼ aⱼ ⊗ X_{σⱼ·rep}.
pub type CoefficientFn = Rc<dyn Fn(&[f64]) -> f64>;

pub fn antisymmetric_reconstruct(
    rep: &PartitionTuple,
    a1: CoefficientFn,
) -> Result<Vec<CoefficientFn>> {
    let n = rep.len();
    let (sigmas, _tuples) = coset_representatives(rep)?;
    if rep.stabilizer_order() > 1 {
        // non-trivial stabilizer forces a1 itself to be antisymmetric
        let probe: Vec<f64> = (0..n).map(|i| 0.37 + 0.59 * i as f64).collect();
        for t in 0..n.saturating_sub(1) {
            let mut swapped = probe.clone();
            swapped.swap(t, t + 1);
            let lhs = a1(&swapped);
            let rhs = -a1(&probe);
            if (lhs - rhs).abs() > 1e-9 * (1.0 + lhs.abs().max(rhs.abs())) {
                return Err(Error::Symmetry(
                    "representative has a non-trivial stabilizer, so the coefficient \
                     function must be antisymmetric"
                        .into(),
                ));
            }
        }
    }
    let mut out: Vec<CoefficientFn> = Vec::with_capacity(sigmas.len());
    for sigma in sigmas {
        let sign = perm_sign(&sigma) as f64;
        let a1c = a1.clone();
        out.push(Rc::new(move |z: &[f64]| sign * a1c(&perm_act_f64(&sigma, z))));
    }
    Ok(out)
}
