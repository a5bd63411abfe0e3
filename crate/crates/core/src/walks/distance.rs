use super::WalkState;
use crate::multimatrix::{p_norm, PNorm};
use crate::{Error, Result};

/// Allowed increase between consecutive rows of a monotone trace.
pub const MONOTONE_SLACK: f64 = 1e-10;

/// `‖ν − μ‖ = ½ ‖f_ν − f_μ‖₁`.
pub fn total_variation(nu: &WalkState, mu: &WalkState) -> Result<f64> {
    nu.check_group(mu)?;
    let diff = nu.density() - mu.density();
    Ok(0.5 * p_norm(&diff, nu.group().haar(), PNorm::One))
}

/// One row of a distance trace for `ν^{⋆k}` against the Haar state.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TraceRow {
    pub k: u64,
    pub tv: f64,
    /// `‖f_{ν^{⋆k}} − 1‖₂`.
    pub l2: f64,
    /// Quantum separation distance `‖f_{ν^{⋆k}} − 1‖_∞`.
    pub qsd: f64,
}

/// Rows `k = 1..=kmax`. Fails if total variation or separation distance increases by
/// more than [`MONOTONE_SLACK`].
pub fn distances_to_random(nu: &WalkState, kmax: u64) -> Result<Vec<TraceRow>> {
    if kmax == 0 {
        return Err(Error::Validation("kmax must be at least 1".into()));
    }
    let g = nu.group();
    let t = nu.stochastic_map()?;
    let unit = g.unit();
    let mut coeffs = g.counit().clone();
    let mut rows: Vec<TraceRow> = Vec::with_capacity(kmax as usize);
    for k in 1..=kmax {
        coeffs = t.transpose_on_functionals(&coeffs)?;
        let state = WalkState::from_trusted_functional(g, coeffs.clone());
        let diff = state.density() - &unit;
        let row = TraceRow {
            k,
            tv: 0.5 * p_norm(&diff, g.haar(), PNorm::One),
            l2: p_norm(&diff, g.haar(), PNorm::Two),
            qsd: p_norm(&diff, g.haar(), PNorm::Inf),
        };
        if let Some(prev) = rows.last() {
            if row.tv > prev.tv + MONOTONE_SLACK {
                return Err(Error::Consistency(format!("total variation increases at k = {k}")));
            }
            if row.qsd > prev.qsd + MONOTONE_SLACK {
                return Err(Error::Consistency(format!("separation distance increases at k = {k}")));
            }
        }
        rows.push(row);
    }
    Ok(rows)
}
