use nalgebra::{DMatrix, DVector};

use super::{AlgebraElement, AlgebraMap, BlockStructure, LinearFunctional};
use crate::{Error, Result, C64};

/// The tensor product `A ⊗ B` of two multi-matrix algebras.
///
/// Blocks are all Kronecker blocks `n_i·m_j` in lexicographic `(i, j)` order. Each product
/// coordinate corresponds to exactly one pair `(k_A, k_B)` of factor coordinates; the
/// *pair form* of an element is the `D_A × D_B` array indexed that way, in which
/// `(m₁ ⊗ m₂)(X) = M₁ X M₂ᵀ`.
#[derive(Clone, Debug)]
pub struct TensorStructure {
    left: BlockStructure,
    right: BlockStructure,
    product: BlockStructure,
    pairs: Vec<(usize, usize)>,
    index: Vec<usize>,
}

impl TensorStructure {
    pub fn new(left: &BlockStructure, right: &BlockStructure) -> Self {
        let mut dims = Vec::with_capacity(left.block_count() * right.block_count());
        for &n in left.dims() {
            for &m in right.dims() {
                dims.push(n * m);
            }
        }
        let product = BlockStructure::new(dims).expect("factor dims are positive");
        let db = right.total_dim();
        let mut pairs = vec![(0, 0); product.total_dim()];
        let mut index = vec![0; left.total_dim() * db];
        for i in 0..left.block_count() {
            let n = left.block_dim(i);
            for j in 0..right.block_count() {
                let m = right.block_dim(j);
                let pb = i * right.block_count() + j;
                for r1 in 0..n {
                    for c1 in 0..n {
                        let ka = left.coord_index(i, r1, c1);
                        for r2 in 0..m {
                            for c2 in 0..m {
                                let kb = right.coord_index(j, r2, c2);
                                let coord = product.coord_index(pb, r1 * m + r2, c1 * m + c2);
                                pairs[coord] = (ka, kb);
                                index[ka * db + kb] = coord;
                            }
                        }
                    }
                }
            }
        }
        Self { left: left.clone(), right: right.clone(), product, pairs, index }
    }

    pub fn left(&self) -> &BlockStructure {
        &self.left
    }

    pub fn right(&self) -> &BlockStructure {
        &self.right
    }

    pub fn product(&self) -> &BlockStructure {
        &self.product
    }

    /// Factor coordinates of a product coordinate.
    pub fn pair(&self, coord: usize) -> (usize, usize) {
        self.pairs[coord]
    }

    /// Product coordinate of a pair of factor coordinates.
    pub fn coord(&self, ka: usize, kb: usize) -> usize {
        self.index[ka * self.right.total_dim() + kb]
    }

    pub fn element(&self, a: &AlgebraElement, b: &AlgebraElement) -> Result<AlgebraElement> {
        if a.structure() != &self.left || b.structure() != &self.right {
            return Err(Error::Shape("tensor factors live in the wrong algebras".into()));
        }
        let ca = a.coords();
        let cb = b.coords();
        let v = DVector::from_fn(self.product.total_dim(), |m, _| {
            let (ka, kb) = self.pairs[m];
            ca[ka] * cb[kb]
        });
        AlgebraElement::from_coords(&self.product, &v)
    }

    pub fn functional(&self, mu: &LinearFunctional, nu: &LinearFunctional) -> Result<LinearFunctional> {
        if mu.structure() != &self.left || nu.structure() != &self.right {
            return Err(Error::Shape("tensor factors live in the wrong algebras".into()));
        }
        let v = DVector::from_fn(self.product.total_dim(), |m, _| {
            let (ka, kb) = self.pairs[m];
            mu.coeffs()[ka] * nu.coeffs()[kb]
        });
        LinearFunctional::new(&self.product, v)
    }

    pub fn to_pair_form(&self, x: &AlgebraElement) -> DMatrix<C64> {
        self.coords_to_pair_form(&x.coords())
    }

    pub fn coords_to_pair_form(&self, coords: &DVector<C64>) -> DMatrix<C64> {
        let mut m = DMatrix::zeros(self.left.total_dim(), self.right.total_dim());
        for (coord, &(ka, kb)) in self.pairs.iter().enumerate() {
            m[(ka, kb)] = coords[coord];
        }
        m
    }

    pub fn from_pair_form(&self, pair: &DMatrix<C64>) -> AlgebraElement {
        let v = DVector::from_fn(self.product.total_dim(), |m, _| {
            let (ka, kb) = self.pairs[m];
            pair[(ka, kb)]
        });
        AlgebraElement::from_coords(&self.product, &v).expect("pair form has the product length")
    }

    /// `φ ⊗ I : A ⊗ B → B`.
    pub fn slice_left(&self, phi: &LinearFunctional) -> Result<AlgebraMap> {
        if phi.structure() != &self.left {
            return Err(Error::Shape("slice functional lives on the wrong factor".into()));
        }
        let mut m = DMatrix::zeros(self.right.total_dim(), self.product.total_dim());
        for (coord, &(ka, kb)) in self.pairs.iter().enumerate() {
            m[(kb, coord)] = phi.coeffs()[ka];
        }
        AlgebraMap::new(&self.product, &self.right, m)
    }

    /// `I ⊗ φ : A ⊗ B → A`.
    pub fn slice_right(&self, phi: &LinearFunctional) -> Result<AlgebraMap> {
        if phi.structure() != &self.right {
            return Err(Error::Shape("slice functional lives on the wrong factor".into()));
        }
        let mut m = DMatrix::zeros(self.left.total_dim(), self.product.total_dim());
        for (coord, &(ka, kb)) in self.pairs.iter().enumerate() {
            m[(ka, coord)] = phi.coeffs()[kb];
        }
        AlgebraMap::new(&self.product, &self.left, m)
    }

    /// Applies `m₁ ⊗ m₂` to `x`, landing in `target` (which must be `cod(m₁) ⊗ cod(m₂)`).
    pub fn apply_maps(
        &self,
        target: &TensorStructure,
        first: &AlgebraMap,
        second: &AlgebraMap,
        x: &AlgebraElement,
    ) -> Result<AlgebraElement> {
        if first.domain() != &self.left
            || second.domain() != &self.right
            || first.codomain() != &target.left
            || second.codomain() != &target.right
            || x.structure() != &self.product
        {
            return Err(Error::Shape("tensor map shapes disagree".into()));
        }
        let pair = self.to_pair_form(x);
        let out = first.matrix() * pair * second.matrix().transpose();
        Ok(target.from_pair_form(&out))
    }

    /// The multiplication map `a ⊗ b ↦ ab` (requires equal factors).
    pub fn multiply(&self, x: &AlgebraElement) -> Result<AlgebraElement> {
        if self.left != self.right || x.structure() != &self.product {
            return Err(Error::Shape("multiplication needs A ⊗ A".into()));
        }
        let s = &self.left;
        let mut blocks: Vec<DMatrix<C64>> = s.dims().iter().map(|&n| DMatrix::zeros(n, n)).collect();
        let coords = x.coords();
        for (coord, &(ka, kb)) in self.pairs.iter().enumerate() {
            let z = coords[coord];
            if z == C64::new(0.0, 0.0) {
                continue;
            }
            let (b1, r1, c1) = s.location(ka);
            let (b2, r2, c2) = s.location(kb);
            if b1 == b2 && c1 == r2 {
                blocks[b1][(r1, c2)] += z;
            }
        }
        AlgebraElement::from_blocks(s, blocks)
    }

    /// The flip `a ⊗ b ↦ b ⊗ a` (requires equal factors).
    pub fn flip(&self, x: &AlgebraElement) -> Result<AlgebraElement> {
        if self.left != self.right || x.structure() != &self.product {
            return Err(Error::Shape("flip needs A ⊗ A".into()));
        }
        Ok(self.from_pair_form(&self.to_pair_form(x).transpose()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multimatrix::test_support::{random_element, rng};

    #[test]
    fn block_shapes() {
        let a = BlockStructure::new(vec![1, 1]).unwrap();
        let t = TensorStructure::new(&a, &a);
        assert_eq!(t.product().dims(), &[1, 1, 1, 1]);
        let b = BlockStructure::new(vec![1, 2]).unwrap();
        let t2 = TensorStructure::new(&b, &b);
        assert_eq!(t2.product().dims(), &[1, 2, 2, 4]);
    }

    #[test]
    fn tensor_of_units_is_unit_and_star_commutes() {
        let a = BlockStructure::new(vec![1, 2]).unwrap();
        let b = BlockStructure::new(vec![2, 1, 1]).unwrap();
        let t = TensorStructure::new(&a, &b);
        let one = t.element(&AlgebraElement::identity(&a), &AlgebraElement::identity(&b)).unwrap();
        assert!(one.distance(&AlgebraElement::identity(t.product())) < 1e-15);
        let mut r = rng(11);
        let x = random_element(&a, &mut r);
        let y = random_element(&b, &mut r);
        let lhs = t.element(&x, &y).unwrap().adjoint();
        let rhs = t.element(&x.adjoint(), &y.adjoint()).unwrap();
        assert!(lhs.distance(&rhs) < 1e-13);
        // multiplicativity of the Kronecker embedding
        let x2 = random_element(&a, &mut r);
        let y2 = random_element(&b, &mut r);
        let p1 = &t.element(&x, &y).unwrap() * &t.element(&x2, &y2).unwrap();
        let p2 = t.element(&(&x * &x2), &(&y * &y2)).unwrap();
        assert!(p1.distance(&p2) < 1e-12);
    }

    #[test]
    fn functionals_and_slices() {
        let a = BlockStructure::new(vec![1, 2]).unwrap();
        let t = TensorStructure::new(&a, &a);
        let mut r = rng(12);
        let mu = LinearFunctional::weighted_trace(&a, &[0.3, 0.7]).unwrap();
        let nu = LinearFunctional::new(&a, random_element(&a, &mut r).coords()).unwrap();
        let x = random_element(&a, &mut r);
        let y = random_element(&a, &mut r);
        let xy = t.element(&x, &y).unwrap();
        let f = t.functional(&mu, &nu).unwrap();
        assert!((f.apply(&xy) - mu.apply(&x) * nu.apply(&y)).norm() < 1e-13);
        let left = t.slice_left(&mu).unwrap().apply(&xy).unwrap();
        assert!(left.distance(&y.scale(mu.apply(&x))) < 1e-13);
        let right = t.slice_right(&nu).unwrap().apply(&xy).unwrap();
        assert!(right.distance(&x.scale(nu.apply(&y))) < 1e-13);
        assert!(t.multiply(&xy).unwrap().distance(&(&x * &y)) < 1e-13);
        assert!(t.flip(&xy).unwrap().distance(&t.element(&y, &x).unwrap()) < 1e-13);
    }
}
