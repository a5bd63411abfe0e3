use nalgebra::DMatrix;

use super::{AlgebraElement, BlockStructure, LinearFunctional};
use crate::{Error, Result, C64};

/// A linear map between multi-matrix algebras, stored as a `D_cod × D_dom` array on
/// canonical coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraMap {
    domain: BlockStructure,
    codomain: BlockStructure,
    matrix: DMatrix<C64>,
}

impl AlgebraMap {
    pub fn new(domain: &BlockStructure, codomain: &BlockStructure, matrix: DMatrix<C64>) -> Result<Self> {
        if matrix.nrows() != codomain.total_dim() || matrix.ncols() != domain.total_dim() {
            return Err(Error::Shape(format!(
                "map array is {}x{}, expected {}x{}",
                matrix.nrows(),
                matrix.ncols(),
                codomain.total_dim(),
                domain.total_dim()
            )));
        }
        Ok(Self { domain: domain.clone(), codomain: codomain.clone(), matrix })
    }

    pub fn identity(structure: &BlockStructure) -> Self {
        let d = structure.total_dim();
        Self { domain: structure.clone(), codomain: structure.clone(), matrix: DMatrix::identity(d, d) }
    }

    /// Builds a map from the images of the basis matrix units.
    pub fn from_basis_images(
        domain: &BlockStructure,
        codomain: &BlockStructure,
        image: impl Fn(usize) -> AlgebraElement,
    ) -> Result<Self> {
        let mut matrix = DMatrix::zeros(codomain.total_dim(), domain.total_dim());
        for k in 0..domain.total_dim() {
            let img = image(k);
            if img.structure() != codomain {
                return Err(Error::Shape("basis image lives in the wrong algebra".into()));
            }
            matrix.set_column(k, &img.coords());
        }
        Ok(Self { domain: domain.clone(), codomain: codomain.clone(), matrix })
    }

    pub fn domain(&self) -> &BlockStructure {
        &self.domain
    }

    pub fn codomain(&self) -> &BlockStructure {
        &self.codomain
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.matrix
    }

    pub fn apply(&self, a: &AlgebraElement) -> Result<AlgebraElement> {
        if a.structure() != &self.domain {
            return Err(Error::Shape("map applied to element of another algebra".into()));
        }
        AlgebraElement::from_coords(&self.codomain, &(&self.matrix * a.coords()))
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &AlgebraMap) -> Result<AlgebraMap> {
        if first.codomain != self.domain {
            return Err(Error::Shape("composition shapes disagree".into()));
        }
        Ok(AlgebraMap {
            domain: first.domain.clone(),
            codomain: self.codomain.clone(),
            matrix: &self.matrix * &first.matrix,
        })
    }

    /// `φ ↦ φ ∘ m`, the transpose action on functionals of the codomain.
    pub fn transpose_on_functionals(&self, phi: &LinearFunctional) -> Result<LinearFunctional> {
        if phi.structure() != &self.codomain {
            return Err(Error::Shape("functional lives on another algebra".into()));
        }
        LinearFunctional::new(&self.domain, self.matrix.transpose() * phi.coeffs())
    }

    pub fn sub(&self, other: &AlgebraMap) -> Result<AlgebraMap> {
        if self.domain != other.domain || self.codomain != other.codomain {
            return Err(Error::Shape("map shapes disagree".into()));
        }
        Ok(AlgebraMap {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            matrix: &self.matrix - &other.matrix,
        })
    }

    /// `m^k` by repeated squaring (square maps only).
    pub fn power(&self, k: u64) -> Result<AlgebraMap> {
        if self.domain != self.codomain {
            return Err(Error::Shape("power of a non-square map".into()));
        }
        let d = self.domain.total_dim();
        let mut result = DMatrix::identity(d, d);
        let mut base = self.matrix.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(AlgebraMap { domain: self.domain.clone(), codomain: self.codomain.clone(), matrix: result })
    }

    /// Largest `‖m(e_k)‖_∞` over basis matrix units.
    pub fn max_basis_residual(&self) -> f64 {
        (0..self.domain.total_dim())
            .map(|k| {
                AlgebraElement::from_coords(&self.codomain, &self.matrix.column(k).into_owned())
                    .map(|e| e.norm_inf())
                    .unwrap_or(f64::INFINITY)
            })
            .fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multimatrix::test_support::{random_element, rng};

    #[test]
    fn identity_and_composition() {
        let s = BlockStructure::new(vec![1, 2]).unwrap();
        let id = AlgebraMap::identity(&s);
        let mut r = rng(7);
        for _ in 0..20 {
            let a = random_element(&s, &mut r);
            assert!(id.apply(&a).unwrap().distance(&a) < 1e-15);
        }
        let adj = AlgebraMap::from_basis_images(&s, &s, |k| {
            let e = AlgebraElement::basis(&s, k);
            e.adjoint()
        })
        .unwrap();
        let sq = adj.compose(&adj).unwrap();
        assert!((sq.matrix() - id.matrix()).norm() < 1e-15);
        let a = random_element(&s, &mut r);
        let phi = LinearFunctional::weighted_trace(&s, &[0.5, 0.25]).unwrap();
        let t = adj.transpose_on_functionals(&phi).unwrap();
        assert!((t.apply(&a) - phi.apply(&adj.apply(&a).unwrap())).norm() < 1e-14);
    }

    #[test]
    fn shape_mismatch() {
        let s1 = BlockStructure::new(vec![1, 2]).unwrap();
        let s2 = BlockStructure::new(vec![1]).unwrap();
        assert!(AlgebraMap::identity(&s1).compose(&AlgebraMap::identity(&s2)).is_err());
        assert!(AlgebraMap::identity(&s2).apply(&AlgebraElement::identity(&s1)).is_err());
    }
}
