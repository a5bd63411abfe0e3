use std::sync::Arc;

use nalgebra::{DMatrix, DVector};

use super::{build_group, FiniteGroup, GroupSpec, IrrepTable, Origin};
use crate::hopf::{FiniteQuantumGroup, HopfData};
use crate::multimatrix::{AlgebraElement, AlgebraMap, BlockStructure, LinearFunctional, TensorStructure};
use crate::{Error, Result, C64};

fn one() -> C64 {
    C64::new(1.0, 0.0)
}

/// `F(G)`: one 1×1 block per element, `Δ(δ_s) = Σ_t δ_{st⁻¹} ⊗ δ_t`, `ε(δ_s) = δ_{s,e}`,
/// `S(δ_s) = δ_{s⁻¹}`. Irreps, when given, are kept for character computations.
pub fn function_algebra(group: &FiniteGroup, irreps: Option<IrrepTable>) -> Result<Arc<FiniteQuantumGroup>> {
    let n = group.order();
    let algebra = BlockStructure::new(vec![1; n])?;
    let tensor = TensorStructure::new(&algebra, &algebra);
    let mut comul = DMatrix::zeros(n * n, n);
    for s in 0..n {
        for t in 0..n {
            let left = group.mul(s, group.inv(t));
            comul[(tensor.coord(left, t), s)] = one();
        }
    }
    let mut antipode = DMatrix::zeros(n, n);
    for s in 0..n {
        antipode[(group.inv(s), s)] = one();
    }
    let mut eps = DVector::zeros(n);
    eps[group.identity()] = one();
    let data = HopfData::new(
        algebra.clone(),
        AlgebraMap::new(&algebra, tensor.product(), comul)?,
        LinearFunctional::new(&algebra, eps)?,
        AlgebraMap::new(&algebra, &algebra, antipode)?,
    )?;
    let origin = Origin::Classical { group: Arc::new(group.clone()), irreps: irreps.map(Arc::new) };
    Ok(Arc::new(FiniteQuantumGroup::new(format!("F({})", group.label()), data, origin)?))
}

/// `ℂG` realised through `g ↦ ⊕_α ρ_α(g)`, with `Δ(δ^g) = δ^g ⊗ δ^g`, `ε(δ^g) = 1` and
/// `S(δ^g) = δ^{g⁻¹}` transported to block coordinates.
pub fn group_algebra(group: &FiniteGroup, irreps: IrrepTable) -> Result<Arc<FiniteQuantumGroup>> {
    let n = group.order();
    let algebra = BlockStructure::new(irreps.dims())?;
    let tensor = TensorStructure::new(&algebra, &algebra);
    let images: Vec<AlgebraElement> = (0..n)
        .map(|g| {
            let blocks = irreps.irreps().iter().map(|r| r.matrices[g].clone()).collect();
            AlgebraElement::from_blocks(&algebra, blocks)
        })
        .collect::<Result<_>>()?;
    let basis = DMatrix::from_fn(n, n, |k, g| images[g].coords()[k]);
    let basis_inv = basis
        .clone()
        .try_inverse()
        .ok_or_else(|| Error::Validation("representation basis change is singular".into()))?;

    let mut squares = DMatrix::zeros(n * n, n);
    for g in 0..n {
        squares.set_column(g, &tensor.element(&images[g], &images[g])?.coords());
    }
    let comul = squares * &basis_inv;

    let eps = basis_inv.transpose() * DVector::from_element(n, one());
    let mut perm = DMatrix::zeros(n, n);
    for g in 0..n {
        perm[(group.inv(g), g)] = one();
    }
    let antipode = &basis * perm * &basis_inv;

    let data = HopfData::new(
        algebra.clone(),
        AlgebraMap::new(&algebra, tensor.product(), comul)?,
        LinearFunctional::new(&algebra, eps)?,
        AlgebraMap::new(&algebra, &algebra, antipode)?,
    )?;
    let origin = Origin::Dual { group: Arc::new(group.clone()), irreps: Arc::new(irreps), basis, basis_inv };
    Ok(Arc::new(FiniteQuantumGroup::new(format!("C{}", group.label()), data, origin)?))
}

/// Default irreps for the catalog families that ship them.
pub fn default_irreps(group: &FiniteGroup, spec: &GroupSpec) -> Result<IrrepTable> {
    match spec {
        GroupSpec::Cyclic(_) => IrrepTable::cyclic(group),
        GroupSpec::Symmetric(3) => IrrepTable::symmetric3(group),
        _ => Err(Error::Unsupported(format!("no bundled irrep table for {}; supply one explicitly", group.label()))),
    }
}

/// `F(G)` for a catalog group, with bundled irreps attached when available.
pub fn classical(spec: &GroupSpec) -> Result<Arc<FiniteQuantumGroup>> {
    let group = build_group(spec)?;
    let irreps = default_irreps(&group, spec).ok();
    function_algebra(&group, irreps)
}

/// `ℂG` for a catalog group with bundled irreps.
pub fn dual(spec: &GroupSpec) -> Result<Arc<FiniteQuantumGroup>> {
    let group = build_group(spec)?;
    let irreps = default_irreps(&group, spec)?;
    group_algebra(&group, irreps)
}

/// `δ^g` as an element of `ℂG`.
pub fn dual_delta(g: &FiniteQuantumGroup, element: usize) -> Result<AlgebraElement> {
    let Origin::Dual { group, basis, .. } = g.origin() else {
        return Err(Error::Unsupported("δ^g needs a group algebra".into()));
    };
    if element >= group.order() {
        return Err(Error::Domain(format!("no group element {element}")));
    }
    AlgebraElement::from_coords(g.algebra(), &basis.column(element).into_owned())
}

/// `χ_H = (1/|H|) Σ_{h∈H} δ^h` in `ℂG`.
pub fn chi_h(g: &FiniteQuantumGroup, subgroup: &[usize]) -> Result<AlgebraElement> {
    let Origin::Dual { group, .. } = g.origin() else {
        return Err(Error::Unsupported("χ_H needs a group algebra".into()));
    };
    if !group.is_subgroup(subgroup) {
        return Err(Error::Domain("χ_H needs a subgroup".into()));
    }
    let mut acc = AlgebraElement::zeros(g.algebra());
    for &h in subgroup {
        acc = &acc + &dual_delta(g, h)?;
    }
    Ok(acc.scale_real(1.0 / subgroup.len() as f64))
}

/// The indicator `1_S` of a subset in `F(G)`.
pub fn indicator(g: &FiniteQuantumGroup, subset: &[usize]) -> Result<AlgebraElement> {
    let Origin::Classical { group, .. } = g.origin() else {
        return Err(Error::Unsupported("indicators need a function algebra".into()));
    };
    let mut scalars = vec![C64::new(0.0, 0.0); group.order()];
    for &s in subset {
        if s >= group.order() {
            return Err(Error::Domain(format!("no group element {s}")));
        }
        scalars[s] = one();
    }
    AlgebraElement::from_block_scalars(g.algebra(), &scalars)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn c2_comultiplication() {
        let g = classical(&GroupSpec::Cyclic(2)).unwrap();
        let d1 = g.comultiply(&AlgebraElement::basis(g.algebra(), 1)).unwrap();
        let t = g.tensor();
        let e0 = AlgebraElement::basis(g.algebra(), 0);
        let e1 = AlgebraElement::basis(g.algebra(), 1);
        let expect = &t.element(&e0, &e1).unwrap() + &t.element(&e1, &e0).unwrap();
        assert!(d1.distance(&expect) < 1e-15);
        assert!(g.verify_hopf_axioms(1e-12).passed());
    }

    #[test]
    fn classical_haar_is_uniform() {
        for spec in [GroupSpec::Cyclic(5), GroupSpec::Symmetric(3), GroupSpec::Dihedral(4)] {
            let g = classical(&spec).unwrap();
            let n = g.order() as f64;
            for w in g.haar_weights() {
                assert!((w - 1.0 / n).abs() < 1e-10);
            }
            assert!(g.haar_element().distance(&AlgebraElement::basis(g.algebra(), 0)) < 1e-15);
        }
    }

    #[test]
    fn dual_c2_and_s3() {
        let c2 = dual(&GroupSpec::Cyclic(2)).unwrap();
        assert_eq!(c2.algebra().dims(), &[1, 1]);
        let d = dual_delta(&c2, 1).unwrap();
        assert!((d.coords()[0] - one()).norm() < 1e-15);
        assert!((d.coords()[1] + one()).norm() < 1e-15);

        let s3 = dual(&GroupSpec::Symmetric(3)).unwrap();
        assert_eq!(s3.algebra().dims(), &[1, 1, 2]);
        assert!(s3.verify_hopf_axioms(1e-10).passed());
        let Origin::Dual { group, .. } = s3.origin() else { unreachable!() };
        for a in 0..6 {
            for b in 0..6 {
                let prod = &dual_delta(&s3, a).unwrap() * &dual_delta(&s3, b).unwrap();
                assert!(prod.distance(&dual_delta(&s3, group.mul(a, b)).unwrap()) < 1e-12);
            }
        }
        // h(δ^g) = [g = e]
        for a in 0..6 {
            let v = s3.haar().apply(&dual_delta(&s3, a).unwrap());
            let expect = if a == 0 { 1.0 } else { 0.0 };
            assert!((v - C64::new(expect, 0.0)).norm() < 1e-10);
        }
        assert!(s3.haar_element().distance(&AlgebraElement::block_unit(s3.algebra(), 0)) < 1e-15);
        assert!(s3.cocommutativity_residual() < 1e-10);
    }

    #[test]
    fn chi_examples() {
        let s3 = dual(&GroupSpec::Symmetric(3)).unwrap();
        let e = chi_h(&s3, &[0]).unwrap();
        assert!(e.distance(&s3.unit()) < 1e-12);
        assert!(chi_h(&s3, &[0, 4]).is_err());
    }
}
