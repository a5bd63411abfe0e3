use super::PROJECTION_TOL;
use crate::hopf::is_group_like_projection;
use crate::multimatrix::{AlgebraElement, LinearFunctional};
use crate::walks::{cesaro_limit, null_space, total_variation, CesaroLimit, WalkState};
use crate::{Error, Result, C64};

const REACH_TOL: f64 = 1e-12;
const FIXED_TOL: f64 = 1e-8;

/// `φ ⋆ φ = φ` within `tol` in total variation. A positive answer is returned only when
/// the density also has the shape `p / h(p)` for a group-like support `p`.
pub fn is_idempotent_state(phi: &WalkState, tol: f64) -> Result<bool> {
    let tv = total_variation(&phi.convolve(phi)?, phi)?;
    if tv > tol {
        return Ok(false);
    }
    let g = phi.group();
    let p = phi.density().support_of_positive(1e-8)?;
    let mass = g.haar().apply(&p).re;
    let shape = phi.density().distance(&p.scale_real(1.0 / mass));
    if shape > 1e-8 * (1.0 + 1.0 / mass) {
        return Err(Error::Consistency(format!("idempotent state density is not p/h(p) ({shape:.3e})")));
    }
    if !is_group_like_projection(g, &p, 1e-8)? {
        return Err(Error::Consistency("support of an idempotent state is not group-like".into()));
    }
    Ok(true)
}

/// The three agreeing irreducibility certificates.
#[derive(Clone, Debug)]
pub struct Irreducibility {
    pub irreducible: bool,
    pub cesaro: CesaroLimit,
    /// Fixed projections of `T_ν` other than `0` and `1` (subharmonic route).
    pub fixed_projections: Vec<AlgebraElement>,
    /// Support of `Σ_{k ≤ k₀} f_{ν^{⋆k}}` (reachability route).
    pub reachable: AlgebraElement,
    pub horizon: u64,
}

/// Projections among spectral projections of Hermitian fixed points of `T_ν`.
fn fixed_projections(nu: &WalkState) -> Result<Vec<AlgebraElement>> {
    let g = nu.group();
    let t = nu.stochastic_map()?;
    let d = g.order();
    let id = nalgebra::DMatrix::<C64>::identity(d, d);
    let basis = null_space(&(t.matrix() - id), FIXED_TOL);
    let unit = g.unit();
    let zero = AlgebraElement::zeros(g.algebra());
    let mut out: Vec<AlgebraElement> = Vec::new();
    for c in 0..basis.ncols() {
        let v = AlgebraElement::from_coords(g.algebra(), &basis.column(c).into_owned())?;
        let re = v.hermitian_part();
        let im = (&v - &v.adjoint()).scale(C64::new(0.0, -0.5));
        for h in [re, im] {
            let scale = h.max_abs();
            if scale < 1e-12 {
                continue;
            }
            for term in h.scale_real(1.0 / scale).spectral_decomposition()? {
                let p = term.projection;
                let fixed = t.apply(&p)?.distance(&p) <= PROJECTION_TOL;
                let trivial = p.distance(&unit) <= PROJECTION_TOL || p.distance(&zero) <= PROJECTION_TOL;
                if fixed && !trivial && out.iter().all(|q| q.distance(&p) > PROJECTION_TOL) {
                    out.push(p);
                }
            }
        }
    }
    Ok(out)
}

/// Support of `Σ_{k=1}^{k₀} f_{ν^{⋆k}}` with `k₀` the Hilbert dimension `Σ n_i`.
fn reachable_support(nu: &WalkState) -> Result<(AlgebraElement, u64)> {
    let g = nu.group();
    let horizon = g.algebra().hilbert_dim() as u64;
    let t = nu.stochastic_map()?;
    let mut coeffs = g.counit().clone();
    let mut acc = LinearFunctional::zero(g.algebra());
    for _ in 0..horizon {
        coeffs = t.transpose_on_functionals(&coeffs)?;
        acc = acc.add(&coeffs);
    }
    let density = g.density_of(&acc)?.hermitian_part();
    Ok((density.support_of_positive(REACH_TOL)?, horizon))
}

/// `ν` is irreducible iff its Cesàro support is `1`. The answer is confirmed by the
/// absence of non-trivial fixed projections of `T_ν` and by reachability within `Σ n_i`
/// steps; any disagreement is an internal error.
pub fn is_irreducible(nu: &WalkState) -> Result<Irreducibility> {
    let g = nu.group();
    let unit = g.unit();
    let cesaro = cesaro_limit(nu)?;
    let by_cesaro = cesaro.support.distance(&unit) <= PROJECTION_TOL;
    let fixed = fixed_projections(nu)?;
    let by_fixed = fixed.is_empty();
    let (reachable, horizon) = reachable_support(nu)?;
    let by_reach = reachable.distance(&unit) <= PROJECTION_TOL;
    if by_cesaro != by_fixed || by_cesaro != by_reach {
        return Err(Error::Consistency(format!(
            "irreducibility routes disagree: cesaro={by_cesaro}, fixed projections={by_fixed}, reachability={by_reach}"
        )));
    }
    Ok(Irreducibility { irreducible: by_cesaro, cesaro, fixed_projections: fixed, reachable, horizon })
}
