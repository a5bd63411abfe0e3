use nalgebra::DMatrix;

use crate::catalog::{character_elements, dual_values, Origin};
use crate::hopf::{is_group_like_projection, FiniteQuantumGroup};
use crate::multimatrix::{AlgebraElement, LinearFunctional};
use crate::walks::{StochasticOperator, WalkState};
use crate::{Error, Result, C64};

const BALL_SLACK: f64 = 1e-9;
const CAUCHY_TOL: f64 = 1e-10;
const MAX_SQUARINGS: usize = 60;
const CHARACTER_TOL: f64 = 1e-9;

/// Outcome of the Zhang test: `ν(η) > 0` forces the convolution powers to converge.
#[derive(Clone, Debug)]
pub struct ZhangReport {
    pub nu_eta: f64,
    pub applies: bool,
    /// Every eigenvalue satisfies `|λ − ν(η)| ≤ 1 − ν(η)`.
    pub spectral_ball_ok: bool,
    /// Whether `T_ν^k` converged; only computed when the criterion applies.
    pub converges: Option<bool>,
    /// `lim ν^{⋆k}` when it was found.
    pub limit: Option<WalkState>,
}

/// `T^{2^j}` until `T·L = L` and successive squarings agree, giving `lim T^k = L`.
fn power_limit(t: &DMatrix<C64>) -> Option<DMatrix<C64>> {
    let mut l = t.clone();
    for _ in 0..MAX_SQUARINGS {
        let next = &l * &l;
        let step = (t * &next - &next).camax();
        let gap = (&next - &l).camax();
        l = next;
        if gap < CAUCHY_TOL && step < CAUCHY_TOL {
            return Some(l);
        }
    }
    None
}

pub fn zhang_criterion(nu: &WalkState) -> Result<ZhangReport> {
    let g = nu.group();
    let nu_eta = nu.mass_at_identity();
    let op = StochasticOperator::new(nu)?;
    let center = C64::new(nu_eta, 0.0);
    let spectral_ball_ok = op.spectrum().iter().all(|z| (z - center).norm() <= 1.0 - nu_eta + BALL_SLACK);
    let applies = nu_eta > 1e-12;
    let (converges, limit) = if applies {
        match power_limit(op.map().matrix()) {
            Some(l) => {
                let coeffs = l.transpose() * g.counit().coeffs();
                let state = WalkState::from_functional(g, LinearFunctional::new(g.algebra(), coeffs)?)?;
                (Some(true), Some(state))
            }
            None => (Some(false), None),
        }
    } else {
        (None, None)
    };
    Ok(ZhangReport { nu_eta, applies, spectral_ball_ok, converges, limit })
}

/// Outcome of the dual-group test: a witness subgroup on which `u` is a character.
#[derive(Clone, Debug, PartialEq)]
pub struct FreslonReport {
    pub ergodic: bool,
    /// The largest non-trivial subgroup on which `|u| = 1` and `u` is multiplicative.
    pub witness: Option<Vec<usize>>,
}

/// For a state on `ℂG`, ergodicity holds iff no non-trivial subgroup carries `u` as a
/// character.
pub fn freslon_check(u: &WalkState) -> Result<FreslonReport> {
    let g = u.group();
    let Origin::Dual { group, .. } = g.origin() else {
        return Err(Error::Unsupported("the dual-group criterion needs a group algebra".into()));
    };
    let values = dual_values(u)?;
    let mut witness: Option<Vec<usize>> = None;
    for h in group.subgroups()? {
        if h.len() == 1 {
            continue;
        }
        let unimodular = h.iter().all(|&x| (values[x].norm() - 1.0).abs() <= CHARACTER_TOL);
        let multiplicative = unimodular
            && h.iter()
                .all(|&a| h.iter().all(|&b| (values[group.mul(a, b)] - values[a] * values[b]).norm() <= CHARACTER_TOL));
        if multiplicative && witness.as_ref().is_none_or(|w| w.len() < h.len()) {
            witness = Some(h);
        }
    }
    Ok(FreslonReport { ergodic: witness.is_none(), witness })
}

/// One character coefficient `f_α = h(χ_α^* f_ν)`.
#[derive(Clone, Debug, PartialEq)]
pub struct BaraquinCoefficient {
    pub label: String,
    pub coefficient: C64,
    pub dim: usize,
    pub trivial: bool,
}

/// Outcome of the central-state test.
#[derive(Clone, Debug, PartialEq)]
pub struct BaraquinReport {
    pub central: bool,
    pub coefficients: Vec<BaraquinCoefficient>,
    /// `|f_α| < d_α` for every non-trivial `α`; only set for central states.
    pub ergodic: Option<bool>,
}

pub fn baraquin_check(nu: &WalkState) -> Result<BaraquinReport> {
    let g = nu.group();
    let chars = character_elements(g)?;
    let f = nu.density();
    let mut recon = AlgebraElement::zeros(g.algebra());
    let mut coefficients = Vec::with_capacity(chars.len());
    for ch in &chars {
        let c = g.haar().apply(&(&ch.element.adjoint() * f));
        recon = &recon + &ch.element.scale(c);
        coefficients.push(BaraquinCoefficient {
            label: ch.label.clone(),
            coefficient: c,
            dim: ch.dim,
            trivial: ch.trivial,
        });
    }
    let central = recon.distance(f) <= CHARACTER_TOL;
    let ergodic = central.then(|| {
        coefficients.iter().filter(|c| !c.trivial).all(|c| c.coefficient.norm() < c.dim as f64 - CHARACTER_TOL)
    });
    Ok(BaraquinReport { central, coefficients, ergodic })
}

/// A group-like projection comes from a genuine subgroup exactly when it is central.
pub fn quasi_subgroup_is_subgroup(g: &FiniteQuantumGroup, p: &AlgebraElement) -> Result<bool> {
    if !is_group_like_projection(g, p, 1e-8)? {
        return Err(Error::Domain("not a group-like projection".into()));
    }
    Ok(p.is_central(1e-9))
}
