//! States as random walks: densities, convolution powers, stochastic operators,
//! distances to the Haar state, Cesàro limits and supports.

mod cesaro;
mod distance;
mod operator;

use std::sync::Arc;

pub(crate) use cesaro::null_space;
pub use cesaro::{cesaro_limit, CesaroLimit, CESARO_AGREEMENT_TOL};
pub use distance::{distances_to_random, total_variation, TraceRow, MONOTONE_SLACK};
pub use operator::{sort_spectrum, spectrum_peripheral, PeripheralSpectrum, StochasticOperator, PERIPHERAL_TOL};

use crate::hopf::FiniteQuantumGroup;
use crate::multimatrix::{AlgebraElement, AlgebraMap, LinearFunctional};
use crate::{Error, Result, C64};

/// Eigenvalues of a density at or below this are treated as zero when taking supports.
pub const SUPPORT_TOL: f64 = 1e-10;
const DENSITY_TOL: f64 = 1e-9;
const NORMALISATION_TOL: f64 = 1e-10;
const VAN_DAELE_TOL: f64 = 1e-10;

/// A state `ν` on a finite quantum group, held both as its density `f_ν` and as the
/// functional `g ↦ h(f_ν g)`.
#[derive(Clone, Debug)]
pub struct WalkState {
    group: Arc<FiniteQuantumGroup>,
    density: AlgebraElement,
    functional: LinearFunctional,
}

pub(crate) fn same_group(a: &Arc<FiniteQuantumGroup>, b: &Arc<FiniteQuantumGroup>) -> bool {
    Arc::ptr_eq(a, b) || (a.algebra() == b.algebra() && a.comul().matrix() == b.comul().matrix())
}

impl WalkState {
    /// Validates positivity and `h(f) = 1`.
    pub fn from_density(group: &Arc<FiniteQuantumGroup>, density: AlgebraElement) -> Result<Self> {
        if density.structure() != group.algebra() {
            return Err(Error::Shape("density lives on another algebra".into()));
        }
        let scale = density.max_abs().max(1.0);
        if !density.is_positive(DENSITY_TOL * scale) {
            return Err(Error::Validation("density is not positive".into()));
        }
        let mass = group.haar().apply(&density);
        if (mass - C64::new(1.0, 0.0)).norm() > NORMALISATION_TOL {
            return Err(Error::Validation(format!("density has Haar mass {mass}, expected 1")));
        }
        let density = density.hermitian_part();
        let functional = group.functional_of(&density)?;
        Ok(Self { group: group.clone(), density, functional })
    }

    pub fn from_functional(group: &Arc<FiniteQuantumGroup>, functional: LinearFunctional) -> Result<Self> {
        let density = group.density_of(&functional)?;
        Self::from_density(group, density)
    }

    /// Builds a state from coefficients already known to be a state up to round-off.
    pub(crate) fn from_trusted_functional(group: &Arc<FiniteQuantumGroup>, functional: LinearFunctional) -> Self {
        let density = group.density_of(&functional).expect("functional on the group's algebra");
        Self { group: group.clone(), density: density.hermitian_part(), functional }
    }

    /// The counit `ε`, the identity for convolution.
    pub fn counit(group: &Arc<FiniteQuantumGroup>) -> Self {
        Self::from_trusted_functional(group, group.counit().clone())
    }

    /// The Haar state `π`, with density `1_G`.
    pub fn haar(group: &Arc<FiniteQuantumGroup>) -> Self {
        Self { group: group.clone(), density: group.unit(), functional: group.haar().clone() }
    }

    pub fn group(&self) -> &Arc<FiniteQuantumGroup> {
        &self.group
    }

    pub fn density(&self) -> &AlgebraElement {
        &self.density
    }

    pub fn functional(&self) -> &LinearFunctional {
        &self.functional
    }

    pub fn evaluate(&self, a: &AlgebraElement) -> C64 {
        self.functional.apply(a)
    }

    fn check_group(&self, other: &WalkState) -> Result<()> {
        if same_group(&self.group, &other.group) {
            Ok(())
        } else {
            Err(Error::Shape("states live on different quantum groups".into()))
        }
    }

    /// `self ⋆ other = (self ⊗ other)∘Δ`. Debug builds cross-check the density against
    /// the convolution product `f_self ⊛ f_other`.
    pub fn convolve(&self, other: &WalkState) -> Result<WalkState> {
        self.check_group(other)?;
        let functional = self.group.convolve_functionals(&self.functional, &other.functional)?;
        let out = Self::from_trusted_functional(&self.group, functional);
        if cfg!(debug_assertions) {
            let boxed = self.group.box_convolve(&self.density, &other.density)?;
            let gap = boxed.distance(&out.density);
            if gap > VAN_DAELE_TOL * (1.0 + out.density.max_abs()) {
                return Err(Error::Consistency(format!("density convolution disagrees by {gap:.3e}")));
            }
        }
        Ok(out)
    }

    /// `ν^{⋆k}` computed as `ε T_ν^k` with `T_ν^k` by repeated squaring; `k = 0` gives `ε`.
    pub fn convolution_power(&self, k: u64) -> Result<WalkState> {
        if k == 0 {
            return Ok(Self::counit(&self.group));
        }
        let t = self.group.stochastic_map(&self.functional)?.power(k)?;
        let functional = t.transpose_on_functionals(self.group.counit())?;
        Ok(Self::from_trusted_functional(&self.group, functional))
    }

    pub fn stochastic_operator(&self) -> Result<StochasticOperator> {
        StochasticOperator::new(self)
    }

    /// `T_ν = (ν ⊗ I)∘Δ` without the spectral cache.
    pub fn stochastic_map(&self) -> Result<AlgebraMap> {
        self.group.stochastic_map(&self.functional)
    }

    /// The smallest projection `p` with `ν(p) = 1`: the range projection of `f_ν`.
    pub fn support_projection(&self) -> Result<AlgebraElement> {
        let p = self.density.support_of_positive(SUPPORT_TOL)?;
        let mass = self.evaluate(&p);
        if (mass - C64::new(1.0, 0.0)).norm() > 1e-9 {
            return Err(Error::Consistency(format!("support carries mass {mass}")));
        }
        Ok(p)
    }

    pub fn is_faithful(&self) -> Result<bool> {
        Ok(self.support_projection()?.distance(&self.group.unit()) < 1e-8)
    }

    /// `ν(η)`, the mass at the Haar element.
    pub fn mass_at_identity(&self) -> f64 {
        self.evaluate(self.group.haar_element()).re
    }

    /// Convex combination `Σ w_i ν_i`.
    pub fn mixture(parts: &[(f64, &WalkState)]) -> Result<WalkState> {
        let Some((_, first)) = parts.first() else {
            return Err(Error::Validation("empty mixture".into()));
        };
        let mut f = AlgebraElement::zeros(first.group.algebra());
        for (w, s) in parts {
            first.check_group(s)?;
            f = &f + &s.density.scale_real(*w);
        }
        Self::from_density(&first.group, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{classical, classical_state, dual, ClassicalStateSpec, GroupSpec};

    #[test]
    fn density_examples() {
        let g = classical(&GroupSpec::Symmetric(3)).unwrap();
        let pi = WalkState::from_density(&g, g.unit()).unwrap();
        assert!(pi.functional().max_abs_diff(g.haar()) < 1e-12);
        let eta = g.haar_element().clone();
        let mass = g.haar().apply(&eta).re;
        let eps = WalkState::from_density(&g, eta.scale_real(1.0 / mass)).unwrap();
        assert!(eps.functional().max_abs_diff(g.counit()) < 1e-12);
        assert!(WalkState::from_density(&g, g.unit().scale_real(2.0)).is_err());
        assert!(WalkState::from_density(&g, g.unit().scale_real(-1.0)).is_err());

        let q = dual(&GroupSpec::Symmetric(3)).unwrap();
        let eps = WalkState::counit(&q);
        let back = WalkState::from_density(&q, eps.density().clone()).unwrap();
        assert!(back.functional().max_abs_diff(q.counit()) < 1e-12);
    }

    #[test]
    fn convolution_identities() {
        let g = classical(&GroupSpec::Cyclic(2)).unwrap();
        let one = classical_state(&g, &ClassicalStateSpec::Point(1)).unwrap();
        let two = one.convolve(&one).unwrap();
        assert!(two.functional().max_abs_diff(g.counit()) < 1e-12);
        let eps = WalkState::counit(&g);
        assert!(eps.convolve(&one).unwrap().functional().max_abs_diff(one.functional()) < 1e-12);
        assert!(one.convolve(&WalkState::haar(&g)).unwrap().functional().max_abs_diff(g.haar()) < 1e-12);
        assert!(one.convolution_power(0).unwrap().functional().max_abs_diff(g.counit()) < 1e-15);
        assert!(one.convolution_power(1).unwrap().functional().max_abs_diff(one.functional()) < 1e-15);
    }

    #[test]
    fn transpositions_square_to_a3() {
        let g = classical(&GroupSpec::Symmetric(3)).unwrap();
        let t = classical_state(&g, &ClassicalStateSpec::Uniform(vec![1, 2, 3])).unwrap();
        let a3 = classical_state(&g, &ClassicalStateSpec::Uniform(vec![0, 4, 5])).unwrap();
        assert!(t.convolution_power(2).unwrap().functional().max_abs_diff(a3.functional()) < 1e-12);
    }

    #[test]
    fn supports() {
        let g = classical(&GroupSpec::Symmetric(3)).unwrap();
        let p = classical_state(&g, &ClassicalStateSpec::Point(2)).unwrap();
        let s = p.support_projection().unwrap();
        assert!(s.distance(&AlgebraElement::basis(g.algebra(), 2)) < 1e-12);
        assert!(WalkState::haar(&g).is_faithful().unwrap());
    }
}
