//! Structure constants loaded from JSON.
//!
//! Schema (all keys required unless noted):
//!
//! ```text
//! {
//!   "name": string,
//!   "blocks": [n_1, ..., n_m],
//!   "basis": [name for each canonical coordinate, blocks concatenated row-major],
//!   "comultiplication": { basis name: [[re, im, left name, right name], ...] },
//!   "counit": { basis name: [re, im] },            // omitted names map to 0
//!   "antipode": { basis name: [[re, im, name], ...] }
//! }
//! ```
//!
//! Every basis element must appear in `comultiplication` and `antipode`.

use std::collections::BTreeMap;
use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use serde::Deserialize;

use super::Origin;
use crate::hopf::{FiniteQuantumGroup, HopfData};
use crate::multimatrix::{AlgebraMap, BlockStructure, LinearFunctional, TensorStructure};
use crate::{Error, Result, C64};

const KAC_PALJUTKIN: &str = include_str!("data/kac_paljutkin.json");

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct StructureFile {
    name: String,
    blocks: Vec<usize>,
    basis: Vec<String>,
    comultiplication: BTreeMap<String, Vec<(f64, f64, String, String)>>,
    #[serde(default)]
    counit: BTreeMap<String, (f64, f64)>,
    antipode: BTreeMap<String, Vec<(f64, f64, String)>>,
}

/// Parses a structure-constant file into unvalidated Hopf data and its label.
pub fn load_structure_constants(text: &str) -> Result<(String, HopfData)> {
    let file: StructureFile =
        serde_json::from_str(text).map_err(|e| Error::Validation(format!("structure constants: {e}")))?;
    let algebra = BlockStructure::new(file.blocks.clone())?;
    let d = algebra.total_dim();
    if file.basis.len() != d {
        return Err(Error::Validation(format!("basis lists {} names, algebra has dimension {d}", file.basis.len())));
    }
    let index: BTreeMap<&str, usize> = file.basis.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
    if index.len() != d {
        return Err(Error::Validation("basis names must be distinct".into()));
    }
    let lookup =
        |name: &str| index.get(name).copied().ok_or_else(|| Error::Validation(format!("unknown basis name {name}")));
    let check_keys = |keys: Vec<&String>, what: &str| -> Result<()> {
        for k in keys {
            lookup(k).map_err(|_| Error::Validation(format!("{what}: unknown basis name {k}")))?;
        }
        Ok(())
    };
    check_keys(file.comultiplication.keys().collect(), "comultiplication")?;
    check_keys(file.antipode.keys().collect(), "antipode")?;
    check_keys(file.counit.keys().collect(), "counit")?;

    let tensor = TensorStructure::new(&algebra, &algebra);
    let mut comul = DMatrix::zeros(d * d, d);
    let mut antipode = DMatrix::zeros(d, d);
    for (k, name) in file.basis.iter().enumerate() {
        let terms = file
            .comultiplication
            .get(name)
            .ok_or_else(|| Error::Validation(format!("comultiplication of {name} missing")))?;
        for (re, im, l, r) in terms {
            comul[(tensor.coord(lookup(l)?, lookup(r)?), k)] += C64::new(*re, *im);
        }
        let terms = file.antipode.get(name).ok_or_else(|| Error::Validation(format!("antipode of {name} missing")))?;
        for (re, im, t) in terms {
            antipode[(lookup(t)?, k)] += C64::new(*re, *im);
        }
    }
    let eps = DVector::from_fn(d, |k, _| {
        file.counit.get(&file.basis[k]).map(|&(re, im)| C64::new(re, im)).unwrap_or_default()
    });
    let data = HopfData::new(
        algebra.clone(),
        AlgebraMap::new(&algebra, tensor.product(), comul)?,
        LinearFunctional::new(&algebra, eps)?,
        AlgebraMap::new(&algebra, &algebra, antipode)?,
    )?;
    Ok((file.name, data))
}

/// The eight-dimensional Kac–Paljutkin quantum group on `ℂ⁴ ⊕ M₂(ℂ)`, basis
/// `e₁ (= η), e₂, e₃, e₄, E₁₁, E₁₂, E₂₁, E₂₂`.
pub fn kac_paljutkin() -> Result<Arc<FiniteQuantumGroup>> {
    let (name, data) = load_structure_constants(KAC_PALJUTKIN)?;
    Ok(Arc::new(FiniteQuantumGroup::new(name, data, Origin::Quantum)?))
}

/// Central projection onto the four one-dimensional blocks.
pub fn kp_abelian_part(g: &FiniteQuantumGroup) -> crate::multimatrix::AlgebraElement {
    let s = g.algebra();
    let mut acc = crate::multimatrix::AlgebraElement::zeros(s);
    for b in 0..4 {
        acc = &acc + &crate::multimatrix::AlgebraElement::block_unit(s, b);
    }
    acc
}
