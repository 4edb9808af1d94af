//! Polyhedral complexes given combinatorially: each cell is its vertex set
//! plus a dimension.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::gradient::DiscreteGradientField;
use crate::hasse::{build_modified_hasse, HasseDiagram};
use crate::ordering::{LexKey, OrderedValue};
use crate::poset::{CellId, FacePoset};
use crate::scalar::Scalar;

#[derive(Clone, Debug)]
pub struct PolyhedralComplex<T> {
    cells: Vec<Vec<usize>>,
    valuation: BTreeMap<usize, OrderedValue<T>>,
    rank: HashMap<usize, u32>,
    keys: Vec<LexKey>,
    poset: FacePoset,
}

impl<T: Scalar> PolyhedralComplex<T> {
    /// `cells` lists every cell, vertices included, as `(vertex ids, dim)`.
    /// `σ ≺ τ` when `σ`'s vertices are a subset of `τ`'s and the dimensions
    /// differ by one.
    pub fn new(
        cells: Vec<(Vec<usize>, usize)>,
        valuation: BTreeMap<usize, OrderedValue<T>>,
    ) -> Result<Self> {
        let mut sorted: Vec<(Vec<usize>, usize)> = Vec::with_capacity(cells.len());
        for (mut vs, dim) in cells {
            if vs.is_empty() {
                return Err(Error::EmptySimplex);
            }
            vs.sort_unstable();
            if vs.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::RepeatedVertex(vs));
            }
            if let Some(&v) = vs.iter().find(|v| !valuation.contains_key(v)) {
                return Err(Error::UnknownVertex(v));
            }
            if dim + 1 > vs.len() {
                return Err(Error::Parse(format!(
                    "cell {vs:?} has too few vertices for dimension {dim}"
                )));
            }
            sorted.push((vs, dim));
        }
        sorted.sort_by(|a, b| (a.1, &a.0).cmp(&(b.1, &b.0)));
        if let Some(w) = sorted.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(Error::Parse(format!("cell {:?} listed twice", w[0].0)));
        }

        let mut by_rank: Vec<usize> = valuation.keys().copied().collect();
        for v in &by_rank {
            valuation[v].depth()?;
        }
        by_rank.sort_by(|a, b| {
            valuation[a]
                .try_cmp(&valuation[b])
                .unwrap_or(std::cmp::Ordering::Equal)
        });
        for w in by_rank.windows(2) {
            valuation[&w[0]].try_cmp(&valuation[&w[1]]).and_then(|o| {
                if o.is_eq() {
                    Err(Error::DuplicateValue(w[0].min(w[1]), w[0].max(w[1])))
                } else {
                    Ok(())
                }
            })?;
        }
        let rank: HashMap<usize, u32> = by_rank
            .iter()
            .enumerate()
            .map(|(r, &v)| (v, r as u32))
            .collect();

        let is_subset = |a: &[usize], b: &[usize]| a.iter().all(|v| b.binary_search(v).is_ok());
        let facets: Vec<Vec<CellId>> = sorted
            .iter()
            .map(|(vs, dim)| {
                (0..sorted.len())
                    .filter(|&c| sorted[c].1 + 1 == *dim && is_subset(&sorted[c].0, vs))
                    .collect()
            })
            .collect();
        let keys: Vec<LexKey> = sorted
            .iter()
            .map(|(vs, _)| LexKey::new(vs.iter().map(|v| rank[v]).collect()))
            .collect();
        let mut by_key: Vec<CellId> = (0..sorted.len()).collect();
        by_key.sort_by(|&a, &b| keys[a].cmp(&keys[b]));
        let mut order = vec![0; sorted.len()];
        for (pos, &c) in by_key.iter().enumerate() {
            order[c] = pos;
        }
        let dims = sorted.iter().map(|c| c.1).collect();
        let cells = sorted.into_iter().map(|c| c.0).collect();
        Ok(PolyhedralComplex {
            cells,
            valuation,
            rank,
            keys,
            poset: FacePoset::new(dims, facets, order),
        })
    }
}

impl<T> PolyhedralComplex<T> {
    pub fn poset(&self) -> &FacePoset {
        &self.poset
    }

    pub fn cells(&self) -> &[Vec<usize>] {
        &self.cells
    }

    pub fn valuation(&self) -> &BTreeMap<usize, OrderedValue<T>> {
        &self.valuation
    }

    pub fn key(&self, cell: CellId) -> &LexKey {
        &self.keys[cell]
    }

    /// Modified Hasse diagram weighted by the value set of `τ \ σ`.
    pub fn modified_hasse(&self) -> HasseDiagram<LexKey> {
        build_modified_hasse(&self.poset, |lower, upper| {
            let sigma = &self.cells[lower];
            LexKey::new(
                self.cells[upper]
                    .iter()
                    .filter(|v| sigma.binary_search(v).is_err())
                    .map(|v| self.rank[v])
                    .collect(),
            )
        })
    }

    pub fn gradient(&self) -> Result<DiscreteGradientField> {
        DiscreteGradientField::from_hasse(&self.poset, &self.modified_hasse())
    }
}
