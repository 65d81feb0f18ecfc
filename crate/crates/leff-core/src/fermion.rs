//! Fermionized model assembly: averaged potentials on F_M, the block
//! decomposition of the antisymmetrization isometry over mode orbits, and
//! per-block δ-model spectra.

#[allow(unused_imports)]
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::landau::{enumerate_sigma, orbit_decompose, OrbitClass, PartitionTuple, ProblemParams};
use crate::linalg::HermitianMatrix;
use crate::potentials::{constant_ce, constant_cn};
use crate::solvers::{
    delta_exact_n1, delta_solve_n2_general, GridSpec, PairTerm, SpectrumResult,
};
use crate::specialfn::alpha_of_b;

/// Which function space a block of the fermionic decomposition carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SectorSpace {
    /// Free orbit (trivial stabilizer): plain L²(ℝᴺ).
    Unrestricted,
    /// Non-trivial stabilizer: antisymmetric subspace.
    Antisymmetric,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FermionBlock {
    pub representative: PartitionTuple,
    pub space: SectorSpace,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FermionDecomposition {
    pub blocks: Vec<FermionBlock>,
    /// Whether the Coulomb-model averaged pair constant couples two blocks.
    /// The δ-model analogue is always the identity (`delta_mixing`).
    pub mixing: Vec<Vec<bool>>,
}

impl FermionDecomposition {
    /// Block-coupling pattern of the δ model: scalar on F_M, hence identity.
    pub fn delta_mixing(&self) -> Vec<Vec<bool>> {
        let n = self.blocks.len();
        (0..n).map(|i| (0..n).map(|j| i == j).collect()).collect()
    }

    pub fn unrestricted_count(&self) -> usize {
        self.blocks
            .iter()
            .filter(|b| b.space == SectorSpace::Unrestricted)
            .count()
    }
}

/// (1/N)·Σ_j C_j^n: diagonal with orbit-constant entries.
pub fn averaged_cn(params: &ProblemParams) -> Result<HermitianMatrix> {
    params.validate()?;
    let mut acc = constant_cn(params, 0)?;
    for j in 1..params.n {
        acc = &acc + &constant_cn(params, j)?;
    }
    Ok(&acc * (1.0 / params.n as f64))
}

/// (N choose 2)⁻¹·Σ_{j<k} C_jk^e.
pub fn averaged_ce(params: &ProblemParams) -> Result<HermitianMatrix> {
    params.validate()?;
    if params.n < 2 {
        return Err(Error::Domain(
            "averaged pair constant is an empty sum for N = 1".into(),
        ));
    }
    let mut acc: Option<HermitianMatrix> = None;
    let mut pairs = 0usize;
    for j in 0..params.n {
        for k in (j + 1)..params.n {
            let c = constant_ce(params, j, k)?;
            acc = Some(match acc {
                Some(a) => &a + &c,
                None => c,
            });
            pairs += 1;
        }
    }
    Ok(&acc.unwrap() * (1.0 / pairs as f64))
}

/// Block decomposition over mode orbits with the Coulomb mixing pattern.
pub fn decompose_u_m(params: &ProblemParams) -> Result<FermionDecomposition> {
    params.validate()?;
    let orbits = orbit_decompose(&enumerate_sigma(params.n, params.m)?);
    let blocks: Vec<FermionBlock> = orbits
        .representatives
        .iter()
        .zip(&orbits.class_flags)
        .map(|(rep, class)| FermionBlock {
            representative: rep.clone(),
            space: match class {
                OrbitClass::Free => SectorSpace::Unrestricted,
                OrbitClass::NonTrivial => SectorSpace::Antisymmetric,
            },
        })
        .collect();
    let nb = blocks.len();
    let mut mixing = vec![vec![false; nb]; nb];
    for i in 0..nb {
        mixing[i][i] = true;
    }
    if params.n >= 2 {
        let ce = averaged_ce(params)?;
        let basis = enumerate_sigma(params.n, params.m)?;
        // basis tuple → owning block, via the descending orbit representative
        let owner: Vec<usize> = basis
            .iter()
            .map(|t| {
                let rep = t.sorted_descending();
                blocks
                    .iter()
                    .position(|b| b.representative == rep)
                    .expect("every tuple lies in some orbit")
            })
            .collect();
        for r in 0..basis.len() {
            for c in 0..basis.len() {
                if ce.get(r, c).norm() > 1e-10 {
                    mixing[owner[r]][owner[c]] = true;
                }
            }
        }
    }
    Ok(FermionDecomposition { blocks, mixing })
}

/// Spectra of the δ-model restricted to each block of the decomposition,
/// aligned with `decomposition.blocks`. N ≤ 2 (grid dimensionality).
pub fn fermionic_delta_spectrum(
    params: &ProblemParams,
    grid: &GridSpec,
) -> Result<(FermionDecomposition, Vec<SpectrumResult>)> {
    params.validate()?;
    if params.n > 2 {
        return Err(Error::Unsupported(
            "fermionic δ solver is limited to N <= 2".into(),
        ));
    }
    let decomp = decompose_u_m(params)?;
    if params.n == 1 {
        let r = delta_exact_n1(params)?;
        let spectra = vec![r; decomp.blocks.len()];
        return Ok((decomp, spectra));
    }
    // N = 2: the operator is the same for every block of a given space, so
    // solve once per space and reuse (identical blocks get identical values
    // by construction)
    let alpha = alpha_of_b(params.b_field)?.value;
    let scale = alpha * alpha;
    let mut cached: [Option<SpectrumResult>; 2] = [None, None];
    let mut spectra = Vec::with_capacity(decomp.blocks.len());
    for block in &decomp.blocks {
        let slot = match block.space {
            SectorSpace::Unrestricted => 0,
            SectorSpace::Antisymmetric => 1,
        };
        if cached[slot].is_none() {
            let pair = match block.space {
                SectorSpace::Unrestricted => PairTerm::Delta(2.0),
                SectorSpace::Antisymmetric => PairTerm::Dirichlet,
            };
            let mut r = delta_solve_n2_general(params.z, grid, pair)?;
            // undo the unit-coupling reduction: h_δ^B = α²·(reduced form)
            for ev in r.eigenvalues.iter_mut() {
                *ev *= scale;
            }
            for res in r.residual_norms.iter_mut() {
                *res *= scale;
            }
            r.params = *params;
            cached[slot] = Some(r);
        }
        spectra.push(cached[slot].clone().unwrap());
    }
    Ok((decomp, spectra))
}
