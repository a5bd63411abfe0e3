//! Direct sums of complex matrix blocks: arithmetic, positivity, spectral projections,
//! tracial norms, tensor products and linear maps on canonical coordinates.

mod element;
mod functional;
mod map;
mod norms;
mod structure;
mod tensor;

pub use element::{AlgebraElement, SpectralTerm};
pub use functional::LinearFunctional;
pub use map::AlgebraMap;
pub use norms::{p_norm, PNorm};
pub use structure::BlockStructure;
pub use tensor::TensorStructure;

/// Eigenvalues closer than this are merged into one spectral projection.
pub const CLUSTER_TOL: f64 = 1e-8;
/// Eigenvalues above `-POSITIVITY_TOL` count as non-negative.
pub const POSITIVITY_TOL: f64 = 1e-9;

#[cfg(test)]
pub(crate) mod test_support {
    use nalgebra::DMatrix;
    use rand::rngs::StdRng;
    use rand::SeedableRng;
    use rand_distr::{Distribution, StandardNormal};

    use super::{AlgebraElement, BlockStructure};
    use crate::C64;

    pub fn rng(seed: u64) -> StdRng {
        StdRng::seed_from_u64(seed)
    }

    pub fn random_element(s: &BlockStructure, r: &mut StdRng) -> AlgebraElement {
        let blocks = s
            .dims()
            .iter()
            .map(|&n| {
                DMatrix::from_fn(n, n, |_, _| {
                    let re: f64 = StandardNormal.sample(r);
                    let im: f64 = StandardNormal.sample(r);
                    C64::new(re, im)
                })
            })
            .collect();
        AlgebraElement::from_blocks(s, blocks).unwrap()
    }

    pub fn random_hermitian(s: &BlockStructure, r: &mut StdRng) -> AlgebraElement {
        random_element(s, r).hermitian_part()
    }
}
