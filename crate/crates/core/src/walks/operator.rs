use std::f64::consts::PI;

use nalgebra::{DMatrix, Schur};

use super::WalkState;
use crate::multimatrix::{AlgebraElement, AlgebraMap};
use crate::{Error, Result, C64};

/// Default modulus tolerance for the peripheral spectrum.
pub const PERIPHERAL_TOL: f64 = 1e-9;

/// `T_ν = (ν ⊗ I)∘Δ` with its eigenvalues (algebraic multiplicity) computed once.
#[derive(Clone, Debug)]
pub struct StochasticOperator {
    map: AlgebraMap,
    spectrum: Vec<C64>,
}

/// Orders eigenvalues by modulus, then argument in `(−π, π]`, after flushing tiny parts.
pub fn sort_spectrum(values: &mut [C64]) {
    for z in values.iter_mut() {
        if z.re.abs() < 1e-13 {
            z.re = 0.0;
        }
        if z.im.abs() < 1e-13 {
            z.im = 0.0;
        }
    }
    values.sort_by(|a, b| a.norm().total_cmp(&b.norm()).then_with(|| arg(*a).total_cmp(&arg(*b))));
}

fn arg(z: C64) -> f64 {
    let a = z.im.atan2(z.re);
    if a <= -PI {
        a + 2.0 * PI
    } else {
        a
    }
}

/// Shifted retries: the unshifted QR iteration can stall on exact permutation operators,
/// whose eigenvalues all share one modulus.
const SCHUR_SHIFTS: [(f64, f64); 3] = [(0.0, 0.0), (0.3141, 0.2718), (-0.5772, 0.1618)];

fn eigenvalues(m: &DMatrix<C64>) -> Result<Vec<C64>> {
    let d = m.nrows();
    for (re, im) in SCHUR_SHIFTS {
        let shift = C64::new(re, im);
        let shifted = m + DMatrix::<C64>::identity(d, d) * shift;
        if let Some(schur) = Schur::try_new(shifted, 1e-15, 10_000) {
            let (_, t) = schur.unpack();
            return Ok((0..d).map(|i| t[(i, i)] - shift).collect());
        }
    }
    Err(Error::Numeric("Schur decomposition did not converge".into()))
}

impl StochasticOperator {
    pub fn new(state: &WalkState) -> Result<Self> {
        Self::from_map(state.stochastic_map()?)
    }

    pub fn from_map(map: AlgebraMap) -> Result<Self> {
        let mut spectrum = eigenvalues(map.matrix())?;
        sort_spectrum(&mut spectrum);
        Ok(Self { map, spectrum })
    }

    pub fn map(&self) -> &AlgebraMap {
        &self.map
    }

    pub fn apply(&self, a: &AlgebraElement) -> Result<AlgebraElement> {
        self.map.apply(a)
    }

    /// Eigenvalues ordered by modulus then argument.
    pub fn spectrum(&self) -> &[C64] {
        &self.spectrum
    }

    pub fn power(&self, k: u64) -> Result<AlgebraMap> {
        self.map.power(k)
    }

    /// Largest modulus among eigenvalues off the unit circle.
    pub fn subdominant_modulus(&self, tol: f64) -> f64 {
        self.spectrum.iter().map(|z| z.norm()).filter(|&r| r < 1.0 - tol).fold(0.0, f64::max)
    }

    /// Eigenvalues within `tol` of each other, merged, as `(value, multiplicity)`.
    pub fn spectrum_with_multiplicity(&self, tol: f64) -> Vec<(C64, usize)> {
        let mut out: Vec<(C64, usize, C64)> = Vec::new();
        for &z in &self.spectrum {
            if let Some(entry) = out.iter_mut().find(|(v, _, _)| (v - z).norm() <= tol) {
                entry.1 += 1;
                entry.2 += z;
            } else {
                out.push((z, 1, z));
            }
        }
        let mut merged: Vec<(C64, usize)> = out.into_iter().map(|(_, m, sum)| (sum / m as f64, m)).collect();
        merged.sort_by(|a, b| a.0.norm().total_cmp(&b.0.norm()).then_with(|| arg(a.0).total_cmp(&arg(b.0))));
        merged
    }
}

/// The spectrum split into its peripheral part `|λ| ≥ 1 − tol`.
#[derive(Clone, Debug, PartialEq)]
pub struct PeripheralSpectrum {
    pub all: Vec<C64>,
    pub peripheral: Vec<C64>,
    /// Multiplicity of the eigenvalue 1.
    pub multiplicity_of_one: usize,
}

impl PeripheralSpectrum {
    pub fn period(&self) -> usize {
        self.peripheral.len()
    }
}

/// Checks `σ(T) ⊂ 𝔻̄` and, when 1 is a simple eigenvalue, that the peripheral part is
/// exactly the group of `d`-th roots of unity.
pub fn spectrum_peripheral(op: &StochasticOperator, tol: f64) -> Result<PeripheralSpectrum> {
    let all = op.spectrum().to_vec();
    if let Some(z) = all.iter().find(|z| z.norm() > 1.0 + tol) {
        return Err(Error::Consistency(format!("eigenvalue {z} lies outside the unit disc")));
    }
    let mut peripheral: Vec<C64> = all.iter().copied().filter(|z| z.norm() >= 1.0 - tol).collect();
    peripheral.sort_by(|a, b| {
        let aa = if (a - C64::new(1.0, 0.0)).norm() <= tol { 0.0 } else { arg(*a).rem_euclid(2.0 * PI) };
        let bb = if (b - C64::new(1.0, 0.0)).norm() <= tol { 0.0 } else { arg(*b).rem_euclid(2.0 * PI) };
        aa.total_cmp(&bb)
    });
    let multiplicity_of_one = peripheral.iter().filter(|z| (*z - C64::new(1.0, 0.0)).norm() <= tol).count();
    if multiplicity_of_one == 0 {
        return Err(Error::Consistency("1 is not an eigenvalue of a stochastic operator".into()));
    }
    if multiplicity_of_one == 1 {
        let d = peripheral.len();
        let root_tol = tol.max(1e-9);
        for (k, z) in peripheral.iter().enumerate() {
            let root = C64::from_polar(1.0, 2.0 * PI * k as f64 / d as f64);
            if (z - root).norm() > root_tol {
                return Err(Error::Consistency(format!(
                    "peripheral spectrum is not the group of {d}-th roots of unity"
                )));
            }
        }
    }
    Ok(PeripheralSpectrum { all, peripheral, multiplicity_of_one })
}
