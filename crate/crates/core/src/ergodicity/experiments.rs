//! Numerical probes for questions that are open; nothing here asserts an answer.

use super::{CyclicPartition, PROJECTION_TOL};
use crate::hopf::FiniteQuantumGroup;
use crate::multimatrix::{AlgebraElement, LinearFunctional};
use crate::walks::{WalkState, SUPPORT_TOL};
use crate::Result;

/// Ranks of the supports of `ν_m = (1/m) Σ_{k≤m} ν^{⋆k}` for `m = 1..=n`.
pub fn cesaro_support_chain(nu: &WalkState, n: u64) -> Result<Vec<(u64, usize)>> {
    let g = nu.group();
    let t = nu.stochastic_map()?;
    let mut coeffs = g.counit().clone();
    let mut acc = LinearFunctional::zero(g.algebra());
    let mut out = Vec::with_capacity(n as usize);
    for m in 1..=n {
        coeffs = t.transpose_on_functionals(&coeffs)?;
        acc = acc.add(&coeffs);
        let density = g.density_of(&acc.scale((1.0 / m as f64).into()))?.hermitian_part();
        out.push((m, density.support_of_positive(SUPPORT_TOL)?.projection_rank()));
    }
    Ok(out)
}

/// Whether `p_ν ≤ p_μ`, and whether `p_{ν⋆ν} ≤ p_{μ⋆μ}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SupportSquaresOutcome {
    pub supports_ordered: bool,
    pub squares_ordered: bool,
}

pub fn support_squares_experiment(nu: &WalkState, mu: &WalkState) -> Result<SupportSquaresOutcome> {
    let pn = nu.support_projection()?;
    let pm = mu.support_projection()?;
    let pn2 = nu.convolve(nu)?.support_projection()?;
    let pm2 = mu.convolve(mu)?.support_projection()?;
    Ok(SupportSquaresOutcome {
        supports_ordered: pn.is_subprojection_of(&pm, PROJECTION_TOL),
        squares_ordered: pn2.is_subprojection_of(&pm2, PROJECTION_TOL),
    })
}

/// `‖Δ(p_i) − Σ_j p_{i−j} ⊗ p_j‖_∞` for each piece of a cyclic partition.
pub fn cyclic_comultiplication_residuals(g: &FiniteQuantumGroup, partition: &CyclicPartition) -> Result<Vec<f64>> {
    let d = partition.period;
    let p = &partition.projections;
    let t = g.tensor();
    (0..d)
        .map(|i| {
            let mut rhs = AlgebraElement::zeros(t.product());
            for j in 0..d {
                rhs = &rhs + &t.element(&p[(i + d - j) % d], &p[j])?;
            }
            Ok(g.comultiply(&p[i])?.distance(&rhs))
        })
        .collect()
}
