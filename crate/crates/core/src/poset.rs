//! Face posets: the facet relation of a finite cell complex together with a
//! total order on its cells.

/// Index of a cell within its complex.
pub type CellId = usize;

/// Facet relation plus a total order on cells.
///
/// `order[c]` is the position of cell `c` in the complex's cell order (lex
/// order of vertex values for simplices and polytopes, the cube order for
/// CAT(0) cubes). Smaller means lower.
#[derive(Clone, Debug)]
pub struct FacePoset {
    dims: Vec<usize>,
    facets: Vec<Vec<CellId>>,
    cofacets: Vec<Vec<CellId>>,
    order: Vec<usize>,
}

impl FacePoset {
    /// `order` must be a permutation of `0..dims.len()`.
    pub fn new(dims: Vec<usize>, facets: Vec<Vec<CellId>>, order: Vec<usize>) -> Self {
        assert_eq!(dims.len(), facets.len());
        assert_eq!(dims.len(), order.len());
        let mut cofacets = vec![Vec::new(); dims.len()];
        for (upper, fs) in facets.iter().enumerate() {
            for &lower in fs {
                debug_assert_eq!(dims[lower] + 1, dims[upper]);
                cofacets[lower].push(upper);
            }
        }
        for c in &mut cofacets {
            c.sort_unstable();
        }
        FacePoset {
            dims,
            facets,
            cofacets,
            order,
        }
    }

    pub fn num_cells(&self) -> usize {
        self.dims.len()
    }

    pub fn dim(&self, cell: CellId) -> usize {
        self.dims[cell]
    }

    pub fn max_dim(&self) -> Option<usize> {
        self.dims.iter().copied().max()
    }

    pub fn facets(&self, cell: CellId) -> &[CellId] {
        &self.facets[cell]
    }

    pub fn cofacets(&self, cell: CellId) -> &[CellId] {
        &self.cofacets[cell]
    }

    /// Position of `cell` in the cell order.
    pub fn order(&self, cell: CellId) -> usize {
        self.order[cell]
    }

    pub fn is_facet(&self, lower: CellId, upper: CellId) -> bool {
        upper < self.num_cells() && self.facets[upper].contains(&lower)
    }

    /// Number of cells per dimension.
    pub fn counts_by_dim(&self) -> Vec<usize> {
        let mut counts = vec![0; self.max_dim().map_or(0, |d| d + 1)];
        for &d in &self.dims {
            counts[d] += 1;
        }
        counts
    }

    pub fn euler_characteristic(&self) -> i64 {
        alternating_sum(&self.counts_by_dim())
    }
}

/// `Σ (-1)^p counts[p]`.
pub fn alternating_sum(counts: &[usize]) -> i64 {
    counts
        .iter()
        .enumerate()
        .map(|(p, &c)| if p % 2 == 0 { c as i64 } else { -(c as i64) })
        .sum()
}
