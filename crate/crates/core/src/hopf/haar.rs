use nalgebra::{DMatrix, DVector};

use super::HopfData;
use crate::multimatrix::{AlgebraElement, LinearFunctional, TensorStructure};
use crate::{Error, Result, C64};

const NULL_TOL: f64 = 1e-9;
const HAAR_CHECK_TOL: f64 = 1e-9;

/// The Haar state together with its block weights `h(a) = Σ_i w_i Tr(a_i)`.
#[derive(Clone, Debug)]
pub struct HaarState {
    pub functional: LinearFunctional,
    pub weights: Vec<f64>,
}

/// Solves `(h ⊗ I)Δ(f) = h(f)·1` over the basis with `h(1) = 1`.
///
/// Fails unless the solution space is one-dimensional and the solution is a faithful
/// trace fixed by the antipode.
pub fn compute_haar_state(data: &HopfData) -> Result<HaarState> {
    let a = &data.algebra;
    let d = a.total_dim();
    let tensor = TensorStructure::new(a, a);
    let unit = AlgebraElement::identity(a).coords();

    let mut system = DMatrix::<C64>::zeros(d * d, d);
    for k in 0..d {
        let v = data.comul_pair(&tensor, k);
        for out in 0..d {
            let row = k * d + out;
            for j in 0..d {
                system[(row, j)] = v[(j, out)];
            }
            system[(row, k)] -= unit[out];
        }
    }

    let svd = system.svd(false, true);
    let v_t = svd.v_t.expect("requested right singular vectors");
    let largest = svd.singular_values.max().max(1.0);
    let null: Vec<usize> = (0..d).filter(|&i| svd.singular_values[i] <= NULL_TOL * largest).collect();
    if null.len() != 1 {
        return Err(Error::Structural(format!(
            "invariant functionals form a space of dimension {}, expected 1",
            null.len()
        )));
    }
    let row = null[0];
    let mut h = DVector::from_fn(d, |j, _| v_t[(row, j)].conj());
    let norm = h.iter().zip(unit.iter()).map(|(c, u)| c * u).sum::<C64>();
    if norm.norm() < 1e-12 {
        return Err(Error::Structural("invariant functional vanishes on the unit".into()));
    }
    h /= norm;

    let mut weights = Vec::with_capacity(a.block_count());
    for b in 0..a.block_count() {
        let n = a.block_dim(b);
        let w = h[a.coord_index(b, 0, 0)];
        for r in 0..n {
            for c in 0..n {
                let z = h[a.coord_index(b, r, c)];
                let expect = if r == c { w } else { C64::new(0.0, 0.0) };
                if (z - expect).norm() > HAAR_CHECK_TOL {
                    return Err(Error::Structural("Haar functional is not tracial".into()));
                }
            }
        }
        if w.im.abs() > HAAR_CHECK_TOL || w.re <= HAAR_CHECK_TOL {
            return Err(Error::Structural(format!("Haar weight on block {b} is {w}, not faithful")));
        }
        weights.push(w.re);
    }
    let functional = LinearFunctional::weighted_trace(a, &weights)?;

    let antipode_t = data.antipode.transpose_on_functionals(&functional)?;
    if antipode_t.max_abs_diff(&functional) > HAAR_CHECK_TOL {
        return Err(Error::Structural("Haar state is not antipode invariant".into()));
    }
    Ok(HaarState { functional, weights })
}

/// Index of the unique 1×1 block carrying the counit.
pub fn counit_block(data: &HopfData) -> Result<usize> {
    let a = &data.algebra;
    let eps = data.counit.coeffs();
    let candidates: Vec<usize> = (0..a.block_count())
        .filter(|&b| a.block_dim(b) == 1 && (eps[a.coord_index(b, 0, 0)] - C64::new(1.0, 0.0)).norm() < 1e-9)
        .collect();
    match candidates.as_slice() {
        [b] => Ok(*b),
        [] => Err(Error::Structural("no 1x1 block on which the counit is 1".into())),
        _ => Err(Error::Structural("counit is 1 on several 1x1 blocks".into())),
    }
}
