//! Concrete quantum groups: function algebras `F(G)`, group algebras `ℂG`, the
//! Kac–Paljutkin algebra, finite-group utilities and state builders.

mod builders;
mod group;
mod irreps;
mod kac_paljutkin;
mod states;

use std::sync::Arc;

use nalgebra::DMatrix;

pub use builders::{chi_h, classical, default_irreps, dual, dual_delta, function_algebra, group_algebra, indicator};
pub use group::{build_group, cycle_notation, FiniteGroup, GroupSpec, SUBGROUP_ORDER_LIMIT};
pub use irreps::{
    check_unitary_representation, permutation_matrix, permutation_representation, regular_representation, Irrep,
    IrrepTable,
};
pub use kac_paljutkin::{kac_paljutkin, kp_abelian_part, load_structure_constants};
pub use states::{
    central_state, character_elements, classical_state, dual_values, positive_definite_values, pure_state,
    state_from_positive_definite, CharacterElement, ClassicalStateSpec,
};

use crate::C64;

/// Where a quantum group came from, kept for constructions that need the classical data.
#[derive(Clone, Debug)]
pub enum Origin {
    /// `F(G)`; block `g` is the point mass at element `g`.
    Classical { group: Arc<FiniteGroup>, irreps: Option<Arc<IrrepTable>> },
    /// `ℂG`; column `g` of `basis` holds the coordinates of `δ^g`.
    Dual { group: Arc<FiniteGroup>, irreps: Arc<IrrepTable>, basis: DMatrix<C64>, basis_inv: DMatrix<C64> },
    /// Given directly by structure constants.
    Quantum,
}

impl Origin {
    pub fn group(&self) -> Option<&FiniteGroup> {
        match self {
            Origin::Classical { group, .. } | Origin::Dual { group, .. } => Some(group),
            Origin::Quantum => None,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Origin::Classical { .. } => "classical",
            Origin::Dual { .. } => "dual",
            Origin::Quantum => "quantum",
        }
    }
}
