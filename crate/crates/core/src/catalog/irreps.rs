use std::f64::consts::PI;

use nalgebra::DMatrix;

use super::FiniteGroup;
use crate::{Error, Result, C64};

/// One irreducible unitary representation, `matrices[g] = ρ(g)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Irrep {
    pub name: String,
    pub dim: usize,
    pub matrices: Vec<DMatrix<C64>>,
}

impl Irrep {
    pub fn character(&self, g: usize) -> C64 {
        self.matrices[g].trace()
    }
}

/// A complete list of irreducible unitary representations of a finite group.
#[derive(Clone, Debug, PartialEq)]
pub struct IrrepTable {
    irreps: Vec<Irrep>,
}

const UNITARY_TOL: f64 = 1e-10;
const ORTHOGONALITY_TOL: f64 = 1e-9;

/// Representation matrices `g ↦ ρ(g)` for `ρ(g)ρ(h) = ρ(gh)` and unitarity checks.
pub fn check_unitary_representation(group: &FiniteGroup, mats: &[DMatrix<C64>], tol: f64) -> Result<()> {
    if mats.len() != group.order() {
        return Err(Error::Validation("one matrix per group element required".into()));
    }
    let d = mats[0].nrows();
    for (g, m) in mats.iter().enumerate() {
        if m.nrows() != d || m.ncols() != d {
            return Err(Error::Validation(format!("matrix for {} has the wrong shape", group.name(g))));
        }
        if (m.adjoint() * m - DMatrix::<C64>::identity(d, d)).norm() > tol {
            return Err(Error::Validation(format!("matrix for {} is not unitary", group.name(g))));
        }
    }
    for a in 0..group.order() {
        for b in 0..group.order() {
            if (&mats[a] * &mats[b] - &mats[group.mul(a, b)]).norm() > tol {
                return Err(Error::Validation(format!("not a homomorphism at ({}, {})", group.name(a), group.name(b))));
            }
        }
    }
    Ok(())
}

impl IrrepTable {
    /// Validates homomorphism, unitarity, `Σ d² = |G|` and character orthogonality.
    pub fn new(group: &FiniteGroup, irreps: Vec<Irrep>) -> Result<Self> {
        for irrep in &irreps {
            check_unitary_representation(group, &irrep.matrices, UNITARY_TOL)
                .map_err(|e| Error::Validation(format!("{}: {e}", irrep.name)))?;
            if irrep.matrices[0].nrows() != irrep.dim {
                return Err(Error::Validation(format!("{}: declared dimension is wrong", irrep.name)));
            }
        }
        let total: usize = irreps.iter().map(|r| r.dim * r.dim).sum();
        if total != group.order() {
            return Err(Error::Validation(format!(
                "irreps are incomplete: sum of squared dimensions {total} != {}",
                group.order()
            )));
        }
        let n = group.order() as f64;
        for (i, a) in irreps.iter().enumerate() {
            for (j, b) in irreps.iter().enumerate() {
                let ip: C64 = (0..group.order()).map(|g| a.character(g) * b.character(g).conj()).sum::<C64>() / n;
                let expect = if i == j { 1.0 } else { 0.0 };
                if (ip - C64::new(expect, 0.0)).norm() > ORTHOGONALITY_TOL {
                    return Err(Error::Validation(format!(
                        "characters of {} and {} violate orthogonality",
                        a.name, b.name
                    )));
                }
            }
        }
        Ok(Self { irreps })
    }

    /// Characters `k ↦ ω^{jk}` of the cyclic group, `ω = e^{2πi/n}`.
    pub fn cyclic(group: &FiniteGroup) -> Result<Self> {
        let n = group.order();
        let generator_ok = n == 1 || group.element_order(1) == n && (0..n).all(|a| group.mul(1, a) == (a + 1) % n);
        if !generator_ok {
            return Err(Error::Validation("group is not cyclic with generator 1 in standard order".into()));
        }
        let irreps = (0..n)
            .map(|j| Irrep {
                name: format!("chi{j}"),
                dim: 1,
                matrices: (0..n)
                    .map(|k| {
                        let angle = 2.0 * PI * ((j * k) % n) as f64 / n as f64;
                        DMatrix::from_element(1, 1, C64::from_polar(1.0, angle))
                    })
                    .collect(),
            })
            .collect();
        Self::new(group, irreps)
    }

    /// Trivial, sign and the standard representation of `S3`, the latter obtained by
    /// restricting the permutation representation to the sum-zero plane with orthonormal
    /// basis `(1,−1,0)/√2`, `(1,1,−2)/√6`.
    pub fn symmetric3(group: &FiniteGroup) -> Result<Self> {
        let perms = group
            .permutations()
            .filter(|p| p.len() == 6 && p[0].len() == 3)
            .ok_or_else(|| Error::Validation("symmetric3 irreps need the permutation group S3".into()))?;
        let trivial = Irrep {
            name: "trivial".into(),
            dim: 1,
            matrices: vec![DMatrix::from_element(1, 1, C64::new(1.0, 0.0)); 6],
        };
        let sign = Irrep {
            name: "sign".into(),
            dim: 1,
            matrices: (0..6).map(|g| DMatrix::from_element(1, 1, C64::new(group.sign(g).unwrap(), 0.0))).collect(),
        };
        let r2 = 2f64.sqrt();
        let r6 = 6f64.sqrt();
        let basis = DMatrix::from_row_slice(3, 2, &[1.0 / r2, 1.0 / r6, -1.0 / r2, 1.0 / r6, 0.0, -2.0 / r6])
            .map(|x| C64::new(x, 0.0));
        let standard = Irrep {
            name: "standard".into(),
            dim: 2,
            matrices: perms.iter().map(|p| basis.adjoint() * permutation_matrix(p) * &basis).collect(),
        };
        Self::new(group, vec![trivial, sign, standard])
    }

    pub fn irreps(&self) -> &[Irrep] {
        &self.irreps
    }

    pub fn len(&self) -> usize {
        self.irreps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.irreps.is_empty()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.irreps.iter().map(|r| r.dim).collect()
    }

    pub fn find(&self, name: &str) -> Option<&Irrep> {
        self.irreps.iter().find(|r| r.name == name)
    }

    /// The irrep carrying the trivial character.
    pub fn trivial_index(&self) -> usize {
        self.irreps
            .iter()
            .position(|r| r.dim == 1 && r.matrices.iter().all(|m| (m[(0, 0)] - C64::new(1.0, 0.0)).norm() < 1e-12))
            .expect("validated tables contain the trivial representation")
    }
}

/// `M[σ(i), i] = 1`.
pub fn permutation_matrix(perm: &[usize]) -> DMatrix<C64> {
    let n = perm.len();
    let mut m = DMatrix::zeros(n, n);
    for i in 0..n {
        m[(perm[i], i)] = C64::new(1.0, 0.0);
    }
    m
}

/// The permutation representation of a symmetric group.
pub fn permutation_representation(group: &FiniteGroup) -> Result<Vec<DMatrix<C64>>> {
    let perms = group
        .permutations()
        .ok_or_else(|| Error::Validation("permutation representation needs a symmetric group".into()))?;
    Ok(perms.iter().map(|p| permutation_matrix(p)).collect())
}

/// The left regular representation `λ(g)e_h = e_{gh}`.
pub fn regular_representation(group: &FiniteGroup) -> Vec<DMatrix<C64>> {
    group.table().iter().map(|row| permutation_matrix(row)).collect()
}
