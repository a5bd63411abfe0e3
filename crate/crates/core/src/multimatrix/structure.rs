use std::fmt;
use std::sync::Arc;

use crate::{Error, Result};

#[derive(Debug, PartialEq, Eq, Hash)]
struct Layout {
    dims: Vec<usize>,
    offsets: Vec<usize>,
    total: usize,
    /// coordinate index -> (block, row, col)
    locations: Vec<(usize, usize, usize)>,
}

/// Block shape `(n_1, …, n_N)` of a multi-matrix algebra `⊕ M_{n_i}(C)`.
///
/// The canonical coordinate form of an element is the concatenation of its blocks in
/// row-major order, so the total dimension is `Σ n_i²`. Cloning is cheap.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BlockStructure(Arc<Layout>);

impl BlockStructure {
    pub fn new(dims: Vec<usize>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::Validation("block structure needs at least one block".into()));
        }
        if let Some(i) = dims.iter().position(|&n| n == 0) {
            return Err(Error::Validation(format!("block {i} has dimension 0")));
        }
        let mut offsets = Vec::with_capacity(dims.len());
        let mut locations = Vec::new();
        let mut total = 0;
        for (b, &n) in dims.iter().enumerate() {
            offsets.push(total);
            total += n * n;
            for r in 0..n {
                for c in 0..n {
                    locations.push((b, r, c));
                }
            }
        }
        Ok(Self(Arc::new(Layout { dims, offsets, total, locations })))
    }

    pub fn dims(&self) -> &[usize] {
        &self.0.dims
    }

    pub fn block_count(&self) -> usize {
        self.0.dims.len()
    }

    pub fn block_dim(&self, block: usize) -> usize {
        self.0.dims[block]
    }

    /// `Σ n_i²`, the length of the coordinate vector.
    pub fn total_dim(&self) -> usize {
        self.0.total
    }

    /// `Σ n_i`, the dimension of the Hilbert space the algebra acts on.
    pub fn hilbert_dim(&self) -> usize {
        self.0.dims.iter().sum()
    }

    pub fn offset(&self, block: usize) -> usize {
        self.0.offsets[block]
    }

    pub fn coord_index(&self, block: usize, row: usize, col: usize) -> usize {
        let n = self.0.dims[block];
        debug_assert!(row < n && col < n);
        self.0.offsets[block] + row * n + col
    }

    pub fn location(&self, coord: usize) -> (usize, usize, usize) {
        self.0.locations[coord]
    }

    pub fn is_commutative(&self) -> bool {
        self.0.dims.iter().all(|&n| n == 1)
    }
}

impl fmt::Debug for BlockStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BlockStructure{:?}", self.0.dims)
    }
}
