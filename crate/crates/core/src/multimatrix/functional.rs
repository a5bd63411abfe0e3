use nalgebra::DVector;

use super::{AlgebraElement, BlockStructure};
use crate::{Error, Result, C64};

/// A linear functional `φ(a) = Σ_k c_k a_k` on canonical coordinates (no conjugation).
#[derive(Clone, Debug, PartialEq)]
pub struct LinearFunctional {
    structure: BlockStructure,
    coeffs: DVector<C64>,
}

impl LinearFunctional {
    pub fn new(structure: &BlockStructure, coeffs: DVector<C64>) -> Result<Self> {
        if coeffs.len() != structure.total_dim() {
            return Err(Error::Shape(format!(
                "functional has {} coefficients, expected {}",
                coeffs.len(),
                structure.total_dim()
            )));
        }
        Ok(Self { structure: structure.clone(), coeffs })
    }

    pub fn zero(structure: &BlockStructure) -> Self {
        Self { structure: structure.clone(), coeffs: DVector::zeros(structure.total_dim()) }
    }

    /// The weighted trace `a ↦ Σ_i w_i Tr(a_i)`.
    pub fn weighted_trace(structure: &BlockStructure, weights: &[f64]) -> Result<Self> {
        if weights.len() != structure.block_count() {
            return Err(Error::Shape("one weight per block required".into()));
        }
        let mut coeffs = DVector::zeros(structure.total_dim());
        for (b, &w) in weights.iter().enumerate() {
            for r in 0..structure.block_dim(b) {
                coeffs[structure.coord_index(b, r, r)] = C64::new(w, 0.0);
            }
        }
        Ok(Self { structure: structure.clone(), coeffs })
    }

    pub fn structure(&self) -> &BlockStructure {
        &self.structure
    }

    pub fn coeffs(&self) -> &DVector<C64> {
        &self.coeffs
    }

    pub fn apply(&self, a: &AlgebraElement) -> C64 {
        assert_eq!(&self.structure, a.structure(), "structure mismatch in functional");
        self.apply_coords(&a.coords())
    }

    pub fn try_apply(&self, a: &AlgebraElement) -> Result<C64> {
        if &self.structure != a.structure() {
            return Err(Error::Shape("functional applied to element of another algebra".into()));
        }
        Ok(self.apply_coords(&a.coords()))
    }

    pub fn apply_coords(&self, coords: &DVector<C64>) -> C64 {
        self.coeffs.iter().zip(coords.iter()).map(|(c, x)| c * x).sum()
    }

    pub fn add(&self, other: &Self) -> Self {
        Self { structure: self.structure.clone(), coeffs: &self.coeffs + &other.coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self { structure: self.structure.clone(), coeffs: &self.coeffs - &other.coeffs }
    }

    pub fn scale(&self, c: C64) -> Self {
        Self { structure: self.structure.clone(), coeffs: &self.coeffs * c }
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (&self.coeffs - &other.coeffs).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}
