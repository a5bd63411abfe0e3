//! Finite quantum groups as C*-Hopf algebras on a multi-matrix algebra.

mod axioms;
mod grouplike;
mod haar;

use std::fmt;

use nalgebra::DMatrix;

pub use axioms::{
    verify_hopf_axioms, HopfData, HopfReport, Residual, ANTIPODE_INVOLUTIVE, COASSOCIATIVITY, LEFT_ANTIPODE,
    LEFT_COUNIT, MULTIPLICATIVE, RIGHT_ANTIPODE, RIGHT_COUNIT, STAR_PRESERVING,
};
pub use grouplike::{find_group_like_projections, group_like_residual, is_group_like_projection};
pub use haar::{compute_haar_state, counit_block, HaarState};

use crate::catalog::Origin;
use crate::multimatrix::{AlgebraElement, AlgebraMap, BlockStructure, LinearFunctional, TensorStructure};
use crate::{Error, Result, C64};

/// Tolerance at which every constructed quantum group must satisfy the Hopf axioms.
pub const AXIOM_TOL: f64 = 1e-9;

/// A finite quantum group: the algebra of functions with its Hopf maps, plus the Haar
/// state and Haar element computed once at construction.
#[derive(Clone)]
pub struct FiniteQuantumGroup {
    label: String,
    data: HopfData,
    tensor: TensorStructure,
    haar: HaarState,
    counit_block: usize,
    haar_element: AlgebraElement,
    origin: Origin,
}

impl fmt::Debug for FiniteQuantumGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteQuantumGroup").field("label", &self.label).field("algebra", &self.data.algebra).finish()
    }
}

impl FiniteQuantumGroup {
    /// Validates the axioms at [`AXIOM_TOL`], then solves for the Haar state.
    pub fn new(label: impl Into<String>, data: HopfData, origin: Origin) -> Result<Self> {
        let report = verify_hopf_axioms(&data, AXIOM_TOL);
        if !report.passed() {
            let names: Vec<String> = report.failures().iter().map(|r| format!("{}={:.3e}", r.name, r.value)).collect();
            return Err(Error::Structural(format!("Hopf axioms fail: {}", names.join(", "))));
        }
        let haar = compute_haar_state(&data)?;
        let counit_block = counit_block(&data)?;
        let haar_element = AlgebraElement::block_unit(&data.algebra, counit_block);
        let tensor = TensorStructure::new(&data.algebra, &data.algebra);
        Ok(Self { label: label.into(), data, tensor, haar, counit_block, haar_element, origin })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn origin(&self) -> &Origin {
        &self.origin
    }

    pub fn algebra(&self) -> &BlockStructure {
        &self.data.algebra
    }

    pub fn hopf_data(&self) -> &HopfData {
        &self.data
    }

    pub fn tensor(&self) -> &TensorStructure {
        &self.tensor
    }

    pub fn comul(&self) -> &AlgebraMap {
        &self.data.comul
    }

    pub fn counit(&self) -> &LinearFunctional {
        &self.data.counit
    }

    pub fn antipode(&self) -> &AlgebraMap {
        &self.data.antipode
    }

    pub fn haar(&self) -> &LinearFunctional {
        &self.haar.functional
    }

    pub fn haar_weights(&self) -> &[f64] {
        &self.haar.weights
    }

    /// The minimal central projection `η` of the counit's 1×1 block.
    pub fn haar_element(&self) -> &AlgebraElement {
        &self.haar_element
    }

    pub fn counit_block(&self) -> usize {
        self.counit_block
    }

    pub fn unit(&self) -> AlgebraElement {
        AlgebraElement::identity(&self.data.algebra)
    }

    pub fn order(&self) -> usize {
        self.data.algebra.total_dim()
    }

    pub fn verify_hopf_axioms(&self, tol: f64) -> HopfReport {
        verify_hopf_axioms(&self.data, tol)
    }

    pub fn comultiply(&self, a: &AlgebraElement) -> Result<AlgebraElement> {
        self.data.comul.apply(a)
    }

    pub fn apply_antipode(&self, a: &AlgebraElement) -> Result<AlgebraElement> {
        self.data.antipode.apply(a)
    }

    /// `φ ↦ f_φ` with `φ(g) = h(f_φ g)`.
    pub fn density_of(&self, phi: &LinearFunctional) -> Result<AlgebraElement> {
        let s = &self.data.algebra;
        if phi.structure() != s {
            return Err(Error::Shape("functional lives on another algebra".into()));
        }
        let c = phi.coeffs();
        let blocks = (0..s.block_count())
            .map(|b| {
                let n = s.block_dim(b);
                let w = self.haar.weights[b];
                DMatrix::from_fn(n, n, |r, col| c[s.coord_index(b, col, r)] / w)
            })
            .collect();
        AlgebraElement::from_blocks(s, blocks)
    }

    /// `f ↦ h(f ·)`.
    pub fn functional_of(&self, f: &AlgebraElement) -> Result<LinearFunctional> {
        let s = &self.data.algebra;
        if f.structure() != s {
            return Err(Error::Shape("density lives on another algebra".into()));
        }
        let mut coeffs = nalgebra::DVector::zeros(s.total_dim());
        for b in 0..s.block_count() {
            let n = s.block_dim(b);
            let w = self.haar.weights[b];
            for r in 0..n {
                for col in 0..n {
                    coeffs[s.coord_index(b, col, r)] = f.block(b)[(r, col)] * w;
                }
            }
        }
        LinearFunctional::new(s, coeffs)
    }

    /// `μ ⋆ ν = (μ ⊗ ν)∘Δ` on functionals.
    pub fn convolve_functionals(&self, mu: &LinearFunctional, nu: &LinearFunctional) -> Result<LinearFunctional> {
        let t = self.tensor.functional(mu, nu)?;
        self.data.comul.transpose_on_functionals(&t)
    }

    /// `T_φ = (φ ⊗ I)∘Δ`.
    pub fn stochastic_map(&self, phi: &LinearFunctional) -> Result<AlgebraMap> {
        self.tensor.slice_left(phi)?.compose(&self.data.comul)
    }

    /// `f ⊛ g = (h ⊗ I)(((S ⊗ I)Δ(g))(f ⊗ 1))`.
    pub fn box_convolve(&self, f: &AlgebraElement, g: &AlgebraElement) -> Result<AlgebraElement> {
        let delta_g = self.comultiply(g)?;
        let s_delta = self.tensor.apply_maps(
            &self.tensor,
            &self.data.antipode,
            &AlgebraMap::identity(&self.data.algebra),
            &delta_g,
        )?;
        let f_one = self.tensor.element(f, &self.unit())?;
        let prod = &s_delta * &f_one;
        self.tensor.slice_left(&self.haar.functional)?.apply(&prod)
    }

    /// `‖τ∘Δ − Δ‖` over the basis; zero exactly for cocommutative groups.
    pub fn cocommutativity_residual(&self) -> f64 {
        (0..self.order())
            .map(|k| {
                let e = AlgebraElement::basis(&self.data.algebra, k);
                let d = self.comultiply(&e).unwrap();
                (&self.tensor.flip(&d).unwrap() - &d).norm_inf()
            })
            .fold(0.0, f64::max)
    }

    /// Scalar `c` as an element.
    pub fn scalar(&self, c: f64) -> AlgebraElement {
        self.unit().scale(C64::new(c, 0.0))
    }
}
