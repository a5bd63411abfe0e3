use nalgebra::DMatrix;

use super::{total_variation, WalkState};
use crate::hopf::is_group_like_projection;
use crate::multimatrix::{AlgebraElement, AlgebraMap};
use crate::{Error, Result, C64};

/// The spectral and iterative limits must agree to this accuracy.
pub const CESARO_AGREEMENT_TOL: f64 = 1e-9;
const FIXED_SPACE_TOL: f64 = 1e-8;
const ITERATION_TOL: f64 = 1e-12;
const MAX_SQUARINGS: usize = 60;
const LIMIT_SUPPORT_TOL: f64 = 1e-8;

/// Orthonormal basis (as columns) of `{x : m x = 0}`, up to `tol` relative to `‖m‖`.
pub(crate) fn null_space(m: &DMatrix<C64>, tol: f64) -> DMatrix<C64> {
    let n = m.ncols();
    let svd = m.clone().svd(false, true);
    let v_t = svd.v_t.expect("requested right singular vectors");
    let scale = svd.singular_values.max().max(1.0);
    let rows: Vec<usize> = (0..svd.singular_values.len()).filter(|&i| svd.singular_values[i] <= tol * scale).collect();
    // Rank-deficient wide factorisations drop rows of v_t; square inputs keep all of them.
    let mut out = DMatrix::zeros(n, rows.len());
    for (c, &i) in rows.iter().enumerate() {
        for j in 0..n {
            out[(j, c)] = v_t[(i, j)].conj();
        }
    }
    out
}

/// The limit `ν_∞ = lim (1/n) Σ_{k≤n} ν^{⋆k}` and its support.
#[derive(Clone, Debug)]
pub struct CesaroLimit {
    pub state: WalkState,
    pub support: AlgebraElement,
    /// Spectral projection of `T_ν` onto its fixed points.
    pub projection: AlgebraMap,
    /// Dimension of the fixed-point space of `T_ν`.
    pub fixed_dimension: usize,
    /// Largest coefficient gap between the spectral and iterative computations.
    pub agreement: f64,
}

fn spectral_projection(t: &DMatrix<C64>) -> Result<(DMatrix<C64>, usize)> {
    let d = t.nrows();
    let id = DMatrix::<C64>::identity(d, d);
    let v = null_space(&(t - &id), FIXED_SPACE_TOL);
    let w = null_space(&(t.adjoint() - &id), FIXED_SPACE_TOL);
    if v.ncols() != w.ncols() || v.ncols() == 0 {
        return Err(Error::Numeric(format!(
            "left and right fixed spaces have dimensions {} and {}",
            w.ncols(),
            v.ncols()
        )));
    }
    let gram = w.adjoint() * &v;
    let inv = gram.try_inverse().ok_or_else(|| Error::Numeric("eigenvalue 1 is not semisimple".into()))?;
    Ok((&v * inv * w.adjoint(), v.ncols()))
}

/// `((I + T)/2)^{2^j}` until successive squarings agree; the lazy operator shares the
/// fixed points of `T` but has no other peripheral eigenvalues.
fn iterated_projection(t: &DMatrix<C64>) -> Result<DMatrix<C64>> {
    let d = t.nrows();
    let mut l = (DMatrix::<C64>::identity(d, d) + t) * C64::new(0.5, 0.0);
    for _ in 0..MAX_SQUARINGS {
        let next = &l * &l;
        let gap = (&next - &l).camax();
        l = next;
        if gap < ITERATION_TOL {
            return Ok(l);
        }
    }
    Err(Error::Numeric("Cesàro iteration did not converge".into()))
}

/// Computes `ν_∞` twice, through the spectral projection of `T_ν` onto eigenvalue 1 and
/// through powers of the lazy operator, and requires agreement within
/// [`CESARO_AGREEMENT_TOL`]. The limit must be idempotent and its support group-like.
pub fn cesaro_limit(nu: &WalkState) -> Result<CesaroLimit> {
    let g = nu.group();
    let t = nu.stochastic_map()?;
    let (e, fixed_dimension) = spectral_projection(t.matrix())?;
    let lazy = iterated_projection(t.matrix())?;
    let eps = g.counit().coeffs();
    let spectral = e.transpose() * eps;
    let iterative = lazy.transpose() * eps;
    let agreement = (&spectral - &iterative).camax();
    if agreement > CESARO_AGREEMENT_TOL {
        return Err(Error::Consistency(format!("spectral and iterative Cesàro limits differ by {agreement:.3e}")));
    }
    let functional = crate::multimatrix::LinearFunctional::new(g.algebra(), spectral)?;
    let state = WalkState::from_functional(g, functional)?;
    let idem = total_variation(&state.convolve(&state)?, &state)?;
    if idem > CESARO_AGREEMENT_TOL {
        return Err(Error::Consistency(format!("Cesàro limit is not idempotent ({idem:.3e})")));
    }
    let support = state.density().support_of_positive(LIMIT_SUPPORT_TOL)?;
    if !is_group_like_projection(g, &support, 1e-8)? {
        return Err(Error::Consistency("Cesàro support is not group-like".into()));
    }
    let projection = AlgebraMap::new(g.algebra(), g.algebra(), e)?;
    Ok(CesaroLimit { state, support, projection, fixed_dimension, agreement })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{classical, classical_state, indicator, ClassicalStateSpec, GroupSpec};

    #[test]
    fn two_point_chain() {
        let g = classical(&GroupSpec::Cyclic(4)).unwrap();
        let nu = classical_state(&g, &ClassicalStateSpec::Point(2)).unwrap();
        let lim = cesaro_limit(&nu).unwrap();
        let expect = classical_state(&g, &ClassicalStateSpec::Uniform(vec![0, 2])).unwrap();
        assert!(lim.state.functional().max_abs_diff(expect.functional()) < 1e-10);
        assert!(lim.support.distance(&indicator(&g, &[0, 2]).unwrap()) < 1e-10);
    }

    #[test]
    fn ergodic_limit_is_haar() {
        let g = classical(&GroupSpec::Cyclic(5)).unwrap();
        let nu = classical_state(&g, &ClassicalStateSpec::Weights(vec![0.2, 0.5, 0.3, 0.0, 0.0])).unwrap();
        let lim = cesaro_limit(&nu).unwrap();
        assert!(lim.state.functional().max_abs_diff(g.haar()) < 1e-10);
        assert!(lim.support.distance(&g.unit()) < 1e-10);
        assert_eq!(lim.fixed_dimension, 1);
    }
}
