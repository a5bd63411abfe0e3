use nalgebra::DMatrix;

use crate::multimatrix::{AlgebraElement, AlgebraMap, BlockStructure, LinearFunctional, TensorStructure};
use crate::{Error, Result, C64};

/// Raw Hopf structure maps on a multi-matrix algebra, before any validation.
#[derive(Clone, Debug)]
pub struct HopfData {
    pub algebra: BlockStructure,
    /// `Δ : A → A ⊗ A`, codomain in [`TensorStructure`] block coordinates.
    pub comul: AlgebraMap,
    pub counit: LinearFunctional,
    pub antipode: AlgebraMap,
}

impl HopfData {
    pub fn new(
        algebra: BlockStructure,
        comul: AlgebraMap,
        counit: LinearFunctional,
        antipode: AlgebraMap,
    ) -> Result<Self> {
        let tensor = TensorStructure::new(&algebra, &algebra);
        if comul.domain() != &algebra || comul.codomain() != tensor.product() {
            return Err(Error::Shape("comultiplication must map A into A ⊗ A".into()));
        }
        if counit.structure() != &algebra {
            return Err(Error::Shape("counit lives on another algebra".into()));
        }
        if antipode.domain() != &algebra || antipode.codomain() != &algebra {
            return Err(Error::Shape("antipode must map A into A".into()));
        }
        Ok(Self { algebra, comul, counit, antipode })
    }

    pub(crate) fn comul_pair(&self, tensor: &TensorStructure, k: usize) -> DMatrix<C64> {
        tensor.coords_to_pair_form(&self.comul.matrix().column(k).into_owned())
    }
}

/// One named axiom residual.
#[derive(Clone, Debug, PartialEq)]
pub struct Residual {
    pub name: &'static str,
    pub value: f64,
}

/// Operator-norm residuals of every Hopf axiom, maximised over a spanning set.
#[derive(Clone, Debug, PartialEq)]
pub struct HopfReport {
    pub residuals: Vec<Residual>,
    pub tol: f64,
}

impl HopfReport {
    pub fn passed(&self) -> bool {
        self.residuals.iter().all(|r| r.value <= self.tol)
    }

    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().map(|r| r.value).fold(0.0, f64::max)
    }

    pub fn get(&self, name: &str) -> Option<f64> {
        self.residuals.iter().find(|r| r.name == name).map(|r| r.value)
    }

    pub fn failures(&self) -> Vec<&Residual> {
        self.residuals.iter().filter(|r| !(r.value <= self.tol)).collect()
    }
}

pub const COASSOCIATIVITY: &str = "coassociativity";
pub const LEFT_COUNIT: &str = "left_counit";
pub const RIGHT_COUNIT: &str = "right_counit";
pub const LEFT_ANTIPODE: &str = "left_antipode";
pub const RIGHT_ANTIPODE: &str = "right_antipode";
pub const STAR_PRESERVING: &str = "comul_star";
pub const MULTIPLICATIVE: &str = "comul_multiplicative";
pub const ANTIPODE_INVOLUTIVE: &str = "antipode_squared";

/// Residuals for coassociativity, both counit laws, both antipode laws, `Δ` being a
/// *-homomorphism, and `S² = I`.
pub fn verify_hopf_axioms(data: &HopfData, tol: f64) -> HopfReport {
    let a = &data.algebra;
    let d = a.total_dim();
    let tensor = TensorStructure::new(a, a);
    let triple = TensorStructure::new(a, tensor.product());
    let unit = AlgebraElement::identity(a);
    let delta = data.comul.matrix();
    let s = data.antipode.matrix();

    let pairs: Vec<DMatrix<C64>> = (0..d).map(|k| data.comul_pair(&tensor, k)).collect();
    let images: Vec<AlgebraElement> =
        (0..d).map(|k| AlgebraElement::from_coords(tensor.product(), &delta.column(k).into_owned()).unwrap()).collect();

    let mut coassoc: f64 = 0.0;
    let mut left_counit: f64 = 0.0;
    let mut right_counit: f64 = 0.0;
    let mut left_antipode: f64 = 0.0;
    let mut right_antipode: f64 = 0.0;
    let mut star: f64 = 0.0;
    let eps = data.counit.coeffs();

    for k in 0..d {
        let v = &pairs[k];
        let ek = AlgebraElement::basis(a, k);

        // (Δ⊗I)Δ in pair form over (A⊗A, A); (I⊗Δ)Δ in pair form over (A, A⊗A).
        let x = delta * v;
        let y = v * delta.transpose();
        let mut z = y.clone();
        for ka in 0..d {
            for mbc in 0..tensor.product().total_dim() {
                let (kb, kc) = tensor.pair(mbc);
                z[(ka, mbc)] -= x[(tensor.coord(ka, kb), kc)];
            }
        }
        coassoc = coassoc.max(triple.from_pair_form(&z).norm_inf());

        let lc = AlgebraElement::from_coords(a, &(v.transpose() * eps)).unwrap();
        left_counit = left_counit.max((&lc - &ek).norm_inf());
        let rc = AlgebraElement::from_coords(a, &(v * eps)).unwrap();
        right_counit = right_counit.max((&rc - &ek).norm_inf());

        let target = unit.scale(eps[k]);
        let la = tensor.multiply(&tensor.from_pair_form(&(s * v))).unwrap();
        left_antipode = left_antipode.max((&la - &target).norm_inf());
        let ra = tensor.multiply(&tensor.from_pair_form(&(v * s.transpose()))).unwrap();
        right_antipode = right_antipode.max((&ra - &target).norm_inf());

        let ek_star = ek.adjoint();
        let lhs = AlgebraElement::from_coords(tensor.product(), &(delta * ek_star.coords())).unwrap();
        star = star.max((&lhs - &images[k].adjoint()).norm_inf());
    }

    let mut mult: f64 = 0.0;
    for j in 0..d {
        let ej = AlgebraElement::basis(a, j);
        for k in 0..d {
            let ek = AlgebraElement::basis(a, k);
            let prod = &ej * &ek;
            let lhs = AlgebraElement::from_coords(tensor.product(), &(delta * prod.coords())).unwrap();
            let rhs = &images[j] * &images[k];
            mult = mult.max((&lhs - &rhs).norm_inf());
        }
    }

    let s2 =
        AlgebraMap::new(a, a, s * s - DMatrix::identity(d, d)).map(|m| m.max_basis_residual()).unwrap_or(f64::INFINITY);

    HopfReport {
        residuals: vec![
            Residual { name: COASSOCIATIVITY, value: coassoc },
            Residual { name: LEFT_COUNIT, value: left_counit },
            Residual { name: RIGHT_COUNIT, value: right_counit },
            Residual { name: LEFT_ANTIPODE, value: left_antipode },
            Residual { name: RIGHT_ANTIPODE, value: right_antipode },
            Residual { name: STAR_PRESERVING, value: star },
            Residual { name: MULTIPLICATIVE, value: mult },
            Residual { name: ANTIPODE_INVOLUTIVE, value: s2 },
        ],
        tol,
    }
}
