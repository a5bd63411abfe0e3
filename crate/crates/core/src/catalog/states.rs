use std::sync::Arc;

use nalgebra::{DMatrix, DVector};

use super::{check_unitary_representation, dual_delta, Origin};
use crate::hopf::FiniteQuantumGroup;
use crate::multimatrix::{AlgebraElement, LinearFunctional};
use crate::walks::WalkState;
use crate::{Error, Result, C64};

/// A probability measure on a classical group.
#[derive(Clone, Debug, PartialEq)]
pub enum ClassicalStateSpec {
    Point(usize),
    Uniform(Vec<usize>),
    /// One probability per element, in element order.
    Weights(Vec<f64>),
}

const WEIGHT_TOL: f64 = 1e-9;
const UNIT_TOL: f64 = 1e-9;

/// `μ(f) = Σ_t f(t) μ({t})` on `F(G)`; the density is `|G|·μ`.
pub fn classical_state(g: &Arc<FiniteQuantumGroup>, spec: &ClassicalStateSpec) -> Result<WalkState> {
    let Origin::Classical { group, .. } = g.origin() else {
        return Err(Error::Unsupported("classical states need a function algebra".into()));
    };
    let n = group.order();
    let weights = match spec {
        ClassicalStateSpec::Point(s) => {
            if *s >= n {
                return Err(Error::Validation(format!("no group element {s}")));
            }
            let mut w = vec![0.0; n];
            w[*s] = 1.0;
            w
        }
        ClassicalStateSpec::Uniform(subset) => {
            if subset.is_empty() || subset.iter().any(|&s| s >= n) {
                return Err(Error::Validation("uniform state needs a non-empty subset of the group".into()));
            }
            let mut w = vec![0.0; n];
            for &s in subset {
                w[s] = 1.0;
            }
            let count = w.iter().filter(|&&x| x > 0.0).count() as f64;
            w.iter().map(|x| x / count).collect()
        }
        ClassicalStateSpec::Weights(w) => {
            if w.len() != n {
                return Err(Error::Validation(format!("{} weights for a group of order {n}", w.len())));
            }
            if w.iter().any(|&x| !(x >= 0.0) || !x.is_finite()) {
                return Err(Error::Validation("weights must be non-negative".into()));
            }
            let total: f64 = w.iter().sum();
            if (total - 1.0).abs() > WEIGHT_TOL {
                return Err(Error::Validation(format!("weights sum to {total}, not 1")));
            }
            w.clone()
        }
    };
    let scalars: Vec<C64> = weights.iter().map(|&x| C64::new(x * n as f64, 0.0)).collect();
    WalkState::from_density(g, AlgebraElement::from_block_scalars(g.algebra(), &scalars)?)
}

/// `u(s) = ⟨ρ(s)ξ, ξ⟩`.
pub fn positive_definite_values(rho: &[DMatrix<C64>], xi: &DVector<C64>) -> Vec<C64> {
    rho.iter().map(|m| xi.dotc(&(m * xi))).collect()
}

/// The state on `ℂG` given by the positive-definite function `u(s) = ⟨ρ(s)ξ, ξ⟩`.
pub fn state_from_positive_definite(
    g: &Arc<FiniteQuantumGroup>,
    rho: &[DMatrix<C64>],
    xi: &DVector<C64>,
) -> Result<WalkState> {
    let Origin::Dual { group, basis_inv, .. } = g.origin() else {
        return Err(Error::Unsupported("positive-definite states live on group algebras".into()));
    };
    check_unitary_representation(group, rho, 1e-10)?;
    if xi.len() != rho[0].nrows() {
        return Err(Error::Validation("vector dimension does not match the representation".into()));
    }
    if (xi.norm() - 1.0).abs() > UNIT_TOL {
        return Err(Error::Validation(format!("vector has norm {}, expected 1", xi.norm())));
    }
    let u = DVector::from_vec(positive_definite_values(rho, xi));
    WalkState::from_functional(g, LinearFunctional::new(g.algebra(), basis_inv.transpose() * u)?)
}

/// `u(s) = ν(δ^s)` for a state on `ℂG`.
pub fn dual_values(state: &WalkState) -> Result<Vec<C64>> {
    let g = state.group();
    let Origin::Dual { basis, .. } = g.origin() else {
        return Err(Error::Unsupported("dual values need a group algebra".into()));
    };
    Ok((0..basis.ncols()).map(|s| state.functional().apply_coords(&basis.column(s).into_owned())).collect())
}

/// The pure state `a ↦ ⟨a_b v, v⟩` on block `b`.
pub fn pure_state(g: &Arc<FiniteQuantumGroup>, block: usize, vector: &DVector<C64>) -> Result<WalkState> {
    let s = g.algebra();
    if block >= s.block_count() {
        return Err(Error::Validation(format!("no block {block}")));
    }
    let n = s.block_dim(block);
    if vector.len() != n {
        return Err(Error::Validation(format!("vector of length {} for a {n}x{n} block", vector.len())));
    }
    if (vector.norm() - 1.0).abs() > UNIT_TOL {
        return Err(Error::Validation(format!("vector has norm {}, expected 1", vector.norm())));
    }
    let mut coeffs = DVector::zeros(s.total_dim());
    for r in 0..n {
        for c in 0..n {
            coeffs[s.coord_index(block, r, c)] = vector[r].conj() * vector[c];
        }
    }
    WalkState::from_functional(g, LinearFunctional::new(s, coeffs)?)
}

/// A character element with its label and representation dimension.
#[derive(Clone, Debug)]
pub struct CharacterElement {
    pub label: String,
    pub dim: usize,
    pub element: AlgebraElement,
    pub trivial: bool,
}

/// Orthonormal characters: `χ_α` as functions on `F(G)` (needs irreps), or `δ^g` on `ℂG`.
pub fn character_elements(g: &FiniteQuantumGroup) -> Result<Vec<CharacterElement>> {
    match g.origin() {
        Origin::Classical { irreps: Some(table), .. } => {
            let trivial = table.trivial_index();
            table
                .irreps()
                .iter()
                .enumerate()
                .map(|(i, r)| {
                    let scalars: Vec<C64> = (0..r.matrices.len()).map(|s| r.character(s)).collect();
                    Ok(CharacterElement {
                        label: r.name.clone(),
                        dim: r.dim,
                        element: AlgebraElement::from_block_scalars(g.algebra(), &scalars)?,
                        trivial: i == trivial,
                    })
                })
                .collect()
        }
        Origin::Classical { irreps: None, .. } => {
            Err(Error::Unsupported("no character table attached to this function algebra".into()))
        }
        Origin::Dual { group, .. } => (0..group.order())
            .map(|s| {
                Ok(CharacterElement {
                    label: group.name(s).to_string(),
                    dim: 1,
                    element: dual_delta(g, s)?,
                    trivial: s == group.identity(),
                })
            })
            .collect(),
        Origin::Quantum => Err(Error::Unsupported("no character data for this quantum group".into())),
    }
}

/// The state with density `Σ_α c_α χ_α`, coefficients in [`character_elements`] order.
pub fn central_state(g: &Arc<FiniteQuantumGroup>, coefficients: &[C64]) -> Result<WalkState> {
    let chars = character_elements(g)?;
    if coefficients.len() != chars.len() {
        return Err(Error::Validation(format!("{} coefficients for {} characters", coefficients.len(), chars.len())));
    }
    let mut f = AlgebraElement::zeros(g.algebra());
    for (c, ch) in coefficients.iter().zip(&chars) {
        f = &f + &ch.element.scale(*c);
    }
    WalkState::from_density(g, f)
}
