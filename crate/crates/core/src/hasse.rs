//! Weighted Hasse diagrams of cell complexes.

use serde::{Deserialize, Serialize};

use crate::complex::SimplicialComplex;
use crate::error::Result;
use crate::matching::{greedy_match, Matching, WeightedMatchGraph};
use crate::poset::{CellId, FacePoset};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum HasseVariant {
    /// Every facet relation is an arc.
    #[default]
    Plain,
    /// Only facet relations `σ ≺ τ` with `τ` below `σ` in the cell order.
    Modified,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Arc<W> {
    pub lower: CellId,
    pub upper: CellId,
    pub weight: W,
}

/// Arcs of a Hasse diagram over cells `0..num_cells`.
#[derive(Clone, Debug)]
pub struct HasseDiagram<W> {
    variant: HasseVariant,
    num_cells: usize,
    arcs: Vec<Arc<W>>,
}

impl<W> HasseDiagram<W> {
    pub fn variant(&self) -> HasseVariant {
        self.variant
    }

    pub fn num_cells(&self) -> usize {
        self.num_cells
    }

    pub fn arcs(&self) -> &[Arc<W>] {
        &self.arcs
    }
}

impl<W: Ord + Clone> HasseDiagram<W> {
    /// Diagram over `poset` with arcs chosen by `variant` and weighted by
    /// `weight(lower, upper)`.
    pub fn from_poset(
        poset: &FacePoset,
        variant: HasseVariant,
        mut weight: impl FnMut(CellId, CellId) -> W,
    ) -> Self {
        let mut arcs = Vec::new();
        for upper in 0..poset.num_cells() {
            for &lower in poset.facets(upper) {
                if variant == HasseVariant::Modified && poset.order(upper) > poset.order(lower) {
                    continue;
                }
                arcs.push(Arc {
                    lower,
                    upper,
                    weight: weight(lower, upper),
                });
            }
        }
        arcs.sort_by_key(|a| (a.lower, a.upper));
        HasseDiagram {
            variant,
            num_cells: poset.num_cells(),
            arcs,
        }
    }

    /// The undirected weighted graph the greedy matcher runs on.
    pub fn to_match_graph(&self) -> WeightedMatchGraph<W> {
        WeightedMatchGraph::new(
            0..self.num_cells,
            self.arcs
                .iter()
                .map(|a| (a.lower, a.upper, a.weight.clone())),
        )
        .expect("arcs join distinct cells")
    }

    /// Greedy matching on the diagram, as `(lower, upper)` pairs.
    pub fn greedy_pairs(&self) -> Result<Vec<(CellId, CellId)>> {
        let graph = self.to_match_graph();
        let matching: Matching = greedy_match(&graph)?;
        Ok(matching
            .edges()
            .iter()
            .map(|&e| {
                let (u, v) = (graph.edge(e).u, graph.edge(e).v);
                if self
                    .arcs
                    .binary_search_by_key(&(u, v), |a| (a.lower, a.upper))
                    .is_ok()
                {
                    (u, v)
                } else {
                    (v, u)
                }
            })
            .collect())
    }
}

/// Hasse diagram of a simplicial complex. The arc `σ ≺ τ` is weighted by
/// the rank of `f(τ \ σ)`.
pub fn build_hasse<T>(complex: &SimplicialComplex<T>) -> HasseDiagram<u32> {
    simplicial_hasse(complex, HasseVariant::Plain)
}

/// Modified Hasse diagram over an arbitrary face poset; the cell order is the
/// poset's own order.
pub fn build_modified_hasse<W: Ord + Clone>(
    poset: &FacePoset,
    weight: impl FnMut(CellId, CellId) -> W,
) -> HasseDiagram<W> {
    HasseDiagram::from_poset(poset, HasseVariant::Modified, weight)
}

/// Plain or modified Hasse diagram of a simplicial complex.
pub fn simplicial_hasse<T>(
    complex: &SimplicialComplex<T>,
    variant: HasseVariant,
) -> HasseDiagram<u32> {
    HasseDiagram::from_poset(complex.poset(), variant, |lower, upper| {
        complex.rank(added_vertex(complex, lower, upper))
    })
}

/// The vertex of `upper` missing from its facet `lower`.
pub fn added_vertex<T>(complex: &SimplicialComplex<T>, lower: CellId, upper: CellId) -> usize {
    let sigma = complex.simplex(lower);
    *complex
        .simplex(upper)
        .vertices()
        .iter()
        .find(|v| !sigma.contains(**v))
        .expect("lower is a facet of upper")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::Simplex;

    fn id<T>(c: &SimplicialComplex<T>, vs: &[usize]) -> CellId {
        c.id_of(&Simplex::new(vs.to_vec()).unwrap()).unwrap()
    }

    #[test]
    fn path_complex_arc_weights() {
        let c = SimplicialComplex::from_scalars(
            &[vec![0, 1], vec![1, 2]],
            [(0, 1.0), (1, 2.0), (2, 3.0)],
        )
        .unwrap();
        let h = build_hasse(&c);
        let value = |r: u32| c.value(c.vertex_of_rank(r)).unwrap().clone();
        let got: Vec<_> = h
            .arcs()
            .iter()
            .map(|a| {
                (
                    c.simplex(a.lower).vertices().to_vec(),
                    c.simplex(a.upper).vertices().to_vec(),
                    value(a.weight),
                )
            })
            .collect();
        let expect = vec![
            (vec![0], vec![0, 1], 2.0.into()),
            (vec![1], vec![0, 1], 1.0.into()),
            (vec![1], vec![1, 2], 3.0.into()),
            (vec![2], vec![1, 2], 2.0.into()),
        ];
        assert_eq!(got, expect);
    }

    #[test]
    fn arc_counts() {
        let point = SimplicialComplex::from_scalars(&[vec![0]], [(0, 1.0)]).unwrap();
        let h = build_hasse(&point);
        assert_eq!((h.num_cells(), h.arcs().len()), (1, 0));

        let tri = SimplicialComplex::from_scalars(&[vec![0, 1, 2]], [(0, 1.0), (1, 2.0), (2, 3.0)])
            .unwrap();
        let h = build_hasse(&tri);
        assert_eq!((h.num_cells(), h.arcs().len()), (7, 9));
        assert!(h.to_match_graph().adjacent_tie().is_none());
    }

    #[test]
    fn modified_arc_requires_smaller_upper() {
        // f(a) > f(b) > f(c) with a=0, b=1, c=2.
        let tri = SimplicialComplex::from_scalars(&[vec![0, 1, 2]], [(0, 3.0), (1, 2.0), (2, 1.0)])
            .unwrap();
        let h = simplicial_hasse(&tri, HasseVariant::Modified);
        let has = |lo: &[usize], up: &[usize]| {
            h.arcs()
                .iter()
                .any(|a| a.lower == id(&tri, lo) && a.upper == id(&tri, up))
        };
        assert!(!has(&[0, 2], &[0, 1, 2]));
        assert!(has(&[0, 1], &[0, 1, 2]));
        for a in h.arcs() {
            assert!(tri.cmp_cells(a.upper, a.lower).is_lt());
        }
    }
}
