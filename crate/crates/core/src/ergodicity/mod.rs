//! Irreducibility, periodicity and the ergodic / reducible / periodic verdict, plus the
//! Zhang, Freslon and Baraquin partial criteria.

mod criteria;
mod experiments;
mod irreducible;
mod partition;

pub use criteria::{
    baraquin_check, freslon_check, quasi_subgroup_is_subgroup, zhang_criterion, BaraquinCoefficient, BaraquinReport,
    FreslonReport, ZhangReport,
};
pub use experiments::{
    cesaro_support_chain, cyclic_comultiplication_residuals, support_squares_experiment, SupportSquaresOutcome,
};
pub use irreducible::{is_idempotent_state, is_irreducible, Irreducibility};
pub use partition::{cyclic_partition, CyclicPartition};

use crate::multimatrix::AlgebraElement;
use crate::walks::{spectrum_peripheral, total_variation, StochasticOperator, WalkState, PERIPHERAL_TOL};
use crate::{Error, Result, C64};

/// Equality of projections is tested in operator norm at this tolerance.
pub const PROJECTION_TOL: f64 = 1e-8;
/// Total variation an ergodic walk must reach at the step chosen from its spectral gap.
pub const ERGODIC_TV_TARGET: f64 = 1e-6;

/// Which of the three cases the walk falls into, with its certificate.
#[derive(Clone, Debug)]
pub enum Verdict {
    Ergodic,
    /// Supported on a proper quasi-subgroup, given by its group-like projection.
    Reducible {
        quasi_subgroup: AlgebraElement,
    },
    /// Irreducible but cycling through a partition of unity.
    Periodic {
        partition: CyclicPartition,
    },
}

/// The verdict together with the diagnostics that support it.
#[derive(Clone, Debug)]
pub struct ErgodicityVerdict {
    pub verdict: Verdict,
    pub spectrum: Vec<C64>,
    pub peripheral: Vec<C64>,
    pub cesaro_support: AlgebraElement,
    /// `(k, TV(ν^{⋆k}, π))` samples.
    pub tv_samples: Vec<(u64, f64)>,
}

impl ErgodicityVerdict {
    pub fn tag(&self) -> &'static str {
        match self.verdict {
            Verdict::Ergodic => "ergodic",
            Verdict::Reducible { .. } => "reducible",
            Verdict::Periodic { .. } => "periodic",
        }
    }

    pub fn is_ergodic(&self) -> bool {
        matches!(self.verdict, Verdict::Ergodic)
    }

    pub fn period(&self) -> Option<usize> {
        match &self.verdict {
            Verdict::Periodic { partition } => Some(partition.period),
            _ => None,
        }
    }
}

fn tv_to_haar(nu: &WalkState, k: u64) -> Result<f64> {
    total_variation(&nu.convolution_power(k)?, &WalkState::haar(nu.group()))
}

/// Step at which the subdominant eigenvalue modulus `r` has decayed below `1e−8`.
fn step_from_gap(r: f64, dim: usize) -> u64 {
    if r < 1e-12 {
        return dim as u64;
    }
    let k = ((1e-8f64).ln() / r.ln()).ceil();
    (k.max(1.0).min(1e7) as u64).max(dim as u64)
}

/// Reducibility first (Cesàro support), then the peripheral spectrum decides between
/// ergodic and periodic. Ergodic verdicts are confirmed by total variation at a step
/// chosen from the spectral gap; periodic verdicts carry a verified cyclic partition.
pub fn classify(nu: &WalkState) -> Result<ErgodicityVerdict> {
    let g = nu.group();
    let unit = g.unit();
    let irr = is_irreducible(nu)?;
    let op = StochasticOperator::new(nu)?;
    let spectrum = op.spectrum().to_vec();
    let mut tv_samples = Vec::new();
    for k in [1u64, 10, 100] {
        tv_samples.push((k, tv_to_haar(nu, k)?));
    }

    if !irr.irreducible {
        let s = irr.cesaro.support.clone();
        let mass = nu.evaluate(&s);
        if (mass - C64::new(1.0, 0.0)).norm() > PROJECTION_TOL || s.distance(&unit) <= PROJECTION_TOL {
            return Err(Error::Classification("reducibility certificate is invalid".into()));
        }
        let peripheral = spectrum.iter().copied().filter(|z| z.norm() >= 1.0 - PERIPHERAL_TOL).collect();
        return Ok(ErgodicityVerdict {
            verdict: Verdict::Reducible { quasi_subgroup: s.clone() },
            spectrum,
            peripheral,
            cesaro_support: s,
            tv_samples,
        });
    }

    let per = spectrum_peripheral(&op, PERIPHERAL_TOL)?;
    if per.multiplicity_of_one != 1 {
        return Err(Error::Consistency("irreducible walk with a degenerate eigenvalue 1".into()));
    }
    let d = per.period();
    if d == 1 {
        let mut k = step_from_gap(op.subdominant_modulus(PERIPHERAL_TOL), g.order());
        let mut reached = false;
        for _ in 0..12 {
            let tv = tv_to_haar(nu, k)?;
            tv_samples.push((k, tv));
            if tv < ERGODIC_TV_TARGET {
                reached = true;
                break;
            }
            k = k.saturating_mul(2);
        }
        if !reached {
            return Err(Error::Consistency("spectrally ergodic walk does not approach the Haar state".into()));
        }
        return Ok(ErgodicityVerdict {
            verdict: Verdict::Ergodic,
            spectrum,
            peripheral: per.peripheral,
            cesaro_support: irr.cesaro.support,
            tv_samples,
        });
    }

    let partition = cyclic_partition(nu, d)?;
    let p1 = &partition.projections[1];
    let td = nu.stochastic_map()?.power(d as u64)?;
    if td.apply(p1)?.distance(p1) > PROJECTION_TOL {
        return Err(Error::Classification("T^d does not fix p_1".into()));
    }
    Ok(ErgodicityVerdict {
        verdict: Verdict::Periodic { partition },
        spectrum,
        peripheral: per.peripheral,
        cesaro_support: irr.cesaro.support,
        tv_samples,
    })
}
