use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::{DMatrix, DVector};

use super::{BlockStructure, CLUSTER_TOL, POSITIVITY_TOL};
use crate::{Error, Result, C64};

/// An element of `⊕ M_{n_i}(C)`: functions, densities and projections all live here.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraElement {
    structure: BlockStructure,
    blocks: Vec<DMatrix<C64>>,
}

/// One term `(λ_j, P_j)` of a spectral decomposition.
#[derive(Clone, Debug)]
pub struct SpectralTerm {
    pub eigenvalue: f64,
    pub projection: AlgebraElement,
}

impl AlgebraElement {
    pub fn zeros(structure: &BlockStructure) -> Self {
        let blocks = structure.dims().iter().map(|&n| DMatrix::zeros(n, n)).collect();
        Self { structure: structure.clone(), blocks }
    }

    /// The unit `1_G`.
    pub fn identity(structure: &BlockStructure) -> Self {
        let blocks = structure.dims().iter().map(|&n| DMatrix::identity(n, n)).collect();
        Self { structure: structure.clone(), blocks }
    }

    pub fn from_blocks(structure: &BlockStructure, blocks: Vec<DMatrix<C64>>) -> Result<Self> {
        if blocks.len() != structure.block_count() {
            return Err(Error::Shape(format!("expected {} blocks, got {}", structure.block_count(), blocks.len())));
        }
        for (i, (b, &n)) in blocks.iter().zip(structure.dims()).enumerate() {
            if b.nrows() != n || b.ncols() != n {
                return Err(Error::Shape(format!("block {i} is {}x{}, expected {n}x{n}", b.nrows(), b.ncols())));
            }
        }
        Ok(Self { structure: structure.clone(), blocks })
    }

    pub fn from_coords(structure: &BlockStructure, coords: &DVector<C64>) -> Result<Self> {
        if coords.len() != structure.total_dim() {
            return Err(Error::Shape(format!(
                "coordinate vector has length {}, expected {}",
                coords.len(),
                structure.total_dim()
            )));
        }
        let blocks = structure
            .dims()
            .iter()
            .enumerate()
            .map(|(b, &n)| {
                let off = structure.offset(b);
                DMatrix::from_fn(n, n, |r, c| coords[off + r * n + c])
            })
            .collect();
        Ok(Self { structure: structure.clone(), blocks })
    }

    /// Real-valued diagonal element from one scalar per block (each block gets `c·I`).
    pub fn from_block_scalars(structure: &BlockStructure, scalars: &[C64]) -> Result<Self> {
        if scalars.len() != structure.block_count() {
            return Err(Error::Shape("one scalar per block required".into()));
        }
        let blocks = structure.dims().iter().zip(scalars).map(|(&n, &s)| DMatrix::identity(n, n) * s).collect();
        Ok(Self { structure: structure.clone(), blocks })
    }

    /// Matrix unit at canonical coordinate `k`.
    pub fn basis(structure: &BlockStructure, k: usize) -> Self {
        let mut e = Self::zeros(structure);
        let (b, r, c) = structure.location(k);
        e.blocks[b][(r, c)] = C64::new(1.0, 0.0);
        e
    }

    /// Central projection onto block `b`.
    pub fn block_unit(structure: &BlockStructure, b: usize) -> Self {
        let mut e = Self::zeros(structure);
        let n = structure.block_dim(b);
        e.blocks[b] = DMatrix::identity(n, n);
        e
    }

    pub fn structure(&self) -> &BlockStructure {
        &self.structure
    }

    pub fn blocks(&self) -> &[DMatrix<C64>] {
        &self.blocks
    }

    pub fn block(&self, b: usize) -> &DMatrix<C64> {
        &self.blocks[b]
    }

    pub fn coords(&self) -> DVector<C64> {
        let mut v = DVector::zeros(self.structure.total_dim());
        for (b, m) in self.blocks.iter().enumerate() {
            let n = m.nrows();
            let off = self.structure.offset(b);
            for r in 0..n {
                for c in 0..n {
                    v[off + r * n + c] = m[(r, c)];
                }
            }
        }
        v
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.structure != other.structure {
            return Err(Error::Shape(format!("{:?} vs {:?}", self.structure, other.structure)));
        }
        Ok(())
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&DMatrix<C64>, &DMatrix<C64>) -> DMatrix<C64>) -> Result<Self> {
        self.check_same(other)?;
        let blocks = self.blocks.iter().zip(&other.blocks).map(|(a, b)| f(a, b)).collect();
        Ok(Self { structure: self.structure.clone(), blocks })
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    /// Blockwise matrix product.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a * b)
    }

    /// Blockwise conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self { structure: self.structure.clone(), blocks: self.blocks.iter().map(|b| b.adjoint()).collect() }
    }

    pub fn scale(&self, c: C64) -> Self {
        Self { structure: self.structure.clone(), blocks: self.blocks.iter().map(|b| b * c).collect() }
    }

    pub fn scale_real(&self, c: f64) -> Self {
        self.scale(C64::new(c, 0.0))
    }

    /// Hermitian part `(a + a*)/2`.
    pub fn hermitian_part(&self) -> Self {
        (self + &self.adjoint()).scale_real(0.5)
    }

    /// Largest entry modulus over all blocks.
    pub fn max_abs(&self) -> f64 {
        self.blocks.iter().flat_map(|b| b.iter()).map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// C*-norm: the largest singular value across blocks.
    pub fn norm_inf(&self) -> f64 {
        self.blocks.iter().map(block_operator_norm).fold(0.0, f64::max)
    }

    /// Hilbert–Schmidt norm of the coordinate vector (not the Haar `L²` norm).
    pub fn frobenius(&self) -> f64 {
        self.blocks.iter().map(|b| b.norm_squared()).sum::<f64>().sqrt()
    }

    pub fn distance(&self, other: &Self) -> f64 {
        match self.checked_sub(other) {
            Ok(d) => d.norm_inf(),
            Err(_) => f64::INFINITY,
        }
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.blocks.iter().all(|b| (b - b.adjoint()).iter().all(|z| z.norm() <= tol))
    }

    /// Hermitian within `tol` and every eigenvalue of every block `≥ -tol`.
    pub fn is_positive(&self, tol: f64) -> bool {
        if !self.is_hermitian(tol) {
            return false;
        }
        self.blocks.iter().all(|b| {
            let (vals, _) = hermitian_eigen(b);
            vals.iter().all(|&v| v >= -tol)
        })
    }

    pub fn is_positive_default(&self) -> bool {
        self.is_positive(POSITIVITY_TOL)
    }

    /// `‖a − a*‖_∞ ≤ tol` and `‖a − a²‖_∞ ≤ tol`.
    pub fn is_projection(&self, tol: f64) -> bool {
        let adj = (self - &self.adjoint()).norm_inf();
        let sq = (self - &(self * self)).norm_inf();
        adj <= tol && sq <= tol
    }

    pub fn is_central(&self, tol: f64) -> bool {
        (0..self.structure.total_dim()).all(|k| {
            let e = Self::basis(&self.structure, k);
            (&(self * &e) - &(&e * self)).norm_inf() <= tol
        })
    }

    /// Spectral decomposition of a Hermitian element with the default clustering tolerance.
    pub fn spectral_decomposition(&self) -> Result<Vec<SpectralTerm>> {
        self.spectral_decomposition_with(CLUSTER_TOL)
    }

    /// `Σ λ_j P_j` with ascending eigenvalues; eigenvalues closer than `cluster_tol` (across
    /// all blocks) share one projection.
    pub fn spectral_decomposition_with(&self, cluster_tol: f64) -> Result<Vec<SpectralTerm>> {
        let scale = self.max_abs().max(1.0);
        if !self.is_hermitian(1e-9 * scale) {
            return Err(Error::Domain("spectral decomposition needs a Hermitian element".into()));
        }
        // (eigenvalue, block, eigenvector)
        let mut pieces: Vec<(f64, usize, DVector<C64>)> = Vec::new();
        for (b, m) in self.blocks.iter().enumerate() {
            let h = (m + m.adjoint()) * C64::new(0.5, 0.0);
            let (vals, vecs) = hermitian_eigen(&h);
            for (j, &v) in vals.iter().enumerate() {
                pieces.push((v, b, vecs.column(j).into_owned()));
            }
        }
        pieces.sort_by(|a, b| a.0.total_cmp(&b.0));

        let mut terms: Vec<SpectralTerm> = Vec::new();
        let mut cluster: Vec<&(f64, usize, DVector<C64>)> = Vec::new();
        let flush = |cluster: &mut Vec<&(f64, usize, DVector<C64>)>, terms: &mut Vec<SpectralTerm>| {
            if cluster.is_empty() {
                return;
            }
            let mean = cluster.iter().map(|p| p.0).sum::<f64>() / cluster.len() as f64;
            let mut proj = Self::zeros(&self.structure);
            for (_, b, v) in cluster.iter() {
                proj.blocks[*b] += v * v.adjoint();
            }
            terms.push(SpectralTerm { eigenvalue: mean, projection: proj });
            cluster.clear();
        };
        for p in &pieces {
            if let Some(last) = cluster.last() {
                if p.0 - last.0 > cluster_tol {
                    flush(&mut cluster, &mut terms);
                }
            }
            cluster.push(p);
        }
        flush(&mut cluster, &mut terms);
        Ok(terms)
    }

    /// Range projection of a positive element: the sum of spectral projections with
    /// eigenvalue `> tol`.
    pub fn support_of_positive(&self, tol: f64) -> Result<Self> {
        if !self.is_positive(tol) {
            return Err(Error::Domain("support requested for a non-positive element".into()));
        }
        let mut s = Self::zeros(&self.structure);
        for term in self.spectral_decomposition()? {
            if term.eigenvalue > tol {
                s = &s + &term.projection;
            }
        }
        Ok(s)
    }

    /// `|a| = (a*a)^{1/2}`; Hermitian input is handled through its own spectrum.
    pub fn abs(&self) -> Self {
        let scale = self.max_abs().max(1.0);
        let (base, sqrt) = if self.is_hermitian(1e-12 * scale) {
            (self.hermitian_part(), false)
        } else {
            (&self.adjoint() * self, true)
        };
        let blocks = base
            .blocks
            .iter()
            .map(|m| {
                let (vals, vecs) = hermitian_eigen(m);
                let f: Vec<f64> = vals.iter().map(|&v| if sqrt { v.max(0.0).sqrt() } else { v.abs() }).collect();
                apply_diag(&vecs, &f)
            })
            .collect();
        Self { structure: self.structure.clone(), blocks }
    }

    /// `p ≤ q` for projections: `‖p − q p‖_∞ ≤ tol`.
    pub fn is_subprojection_of(&self, q: &Self, tol: f64) -> bool {
        (self - &(q * self)).norm_inf() <= tol
    }

    /// Rank of a projection (trace summed over blocks, rounded).
    pub fn projection_rank(&self) -> usize {
        self.blocks.iter().map(|b| b.trace().re).sum::<f64>().round().max(0.0) as usize
    }
}

impl Add for &AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, rhs: Self) -> AlgebraElement {
        self.checked_add(rhs).expect("structure mismatch in add")
    }
}

impl Sub for &AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, rhs: Self) -> AlgebraElement {
        self.checked_sub(rhs).expect("structure mismatch in sub")
    }
}

impl Mul for &AlgebraElement {
    type Output = AlgebraElement;
    fn mul(self, rhs: Self) -> AlgebraElement {
        self.checked_mul(rhs).expect("structure mismatch in mul")
    }
}

impl Neg for &AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        self.scale_real(-1.0)
    }
}

/// Eigen-decomposition of a Hermitian matrix, eigenvalues ascending.
pub(crate) fn hermitian_eigen(m: &DMatrix<C64>) -> (Vec<f64>, DMatrix<C64>) {
    let n = m.nrows();
    if n == 1 {
        return (vec![m[(0, 0)].re], DMatrix::identity(1, 1));
    }
    let eig = m.clone().symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let vals = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vecs = DMatrix::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])]);
    (vals, vecs)
}

fn apply_diag(vecs: &DMatrix<C64>, f: &[f64]) -> DMatrix<C64> {
    let n = vecs.nrows();
    let mut out = DMatrix::zeros(n, n);
    for (j, &fj) in f.iter().enumerate() {
        let v = vecs.column(j);
        out += v * v.adjoint() * C64::new(fj, 0.0);
    }
    out
}

pub(crate) fn block_operator_norm(b: &DMatrix<C64>) -> f64 {
    match b.nrows() {
        0 => 0.0,
        1 => b[(0, 0)].norm(),
        _ => b.clone().svd(false, false).singular_values.max(),
    }
}
