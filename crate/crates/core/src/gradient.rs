//! Discrete gradient fields built from greedy matchings, V-paths and the
//! checks that tie them back to the vertex valuation.

use std::collections::{BTreeSet, VecDeque};

use rayon::prelude::*;
use serde::Serialize;

use crate::complex::{Simplex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::hasse::{simplicial_hasse, HasseDiagram, HasseVariant};
use crate::poset::{alternating_sum, CellId, FacePoset};

/// What a cell is paired with.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Partner {
    Critical,
    /// Matched with a cofacet: `σ → τ`.
    Up(CellId),
    /// Matched with a facet.
    Down(CellId),
}

/// A discrete vector field: disjoint pairs `σ → τ` with `σ ≺ τ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscreteGradientField {
    partner: Vec<Partner>,
}

impl DiscreteGradientField {
    /// Validates `pairs` against the facet relation of `poset`.
    pub fn from_pairs(
        poset: &FacePoset,
        pairs: impl IntoIterator<Item = (CellId, CellId)>,
    ) -> Result<Self> {
        let n = poset.num_cells();
        let mut partner = vec![Partner::Critical; n];
        for (lower, upper) in pairs {
            for c in [lower, upper] {
                if c >= n {
                    return Err(Error::UnknownCell(c));
                }
                if partner[c] != Partner::Critical {
                    return Err(Error::CellPairedTwice(c));
                }
            }
            if !poset.is_facet(lower, upper) {
                return Err(Error::NotAFacet(lower, upper));
            }
            partner[lower] = Partner::Up(upper);
            partner[upper] = Partner::Down(lower);
        }
        Ok(DiscreteGradientField { partner })
    }

    /// Greedy matching on `hasse`, read as a vector field.
    pub fn from_hasse<W: Ord + Clone>(poset: &FacePoset, hasse: &HasseDiagram<W>) -> Result<Self> {
        Self::from_pairs(poset, hasse.greedy_pairs()?)
    }

    pub fn num_cells(&self) -> usize {
        self.partner.len()
    }

    pub fn partner(&self, cell: CellId) -> Partner {
        self.partner[cell]
    }

    pub fn up(&self, cell: CellId) -> Option<CellId> {
        match self.partner[cell] {
            Partner::Up(t) => Some(t),
            _ => None,
        }
    }

    pub fn down(&self, cell: CellId) -> Option<CellId> {
        match self.partner[cell] {
            Partner::Down(s) => Some(s),
            _ => None,
        }
    }

    pub fn is_critical(&self, cell: CellId) -> bool {
        self.partner[cell] == Partner::Critical
    }

    /// Pairs `(σ, τ)` in increasing order of `σ`.
    pub fn pairs(&self) -> Vec<(CellId, CellId)> {
        (0..self.partner.len())
            .filter_map(|c| self.up(c).map(|t| (c, t)))
            .collect()
    }

    pub fn critical(&self) -> Vec<CellId> {
        (0..self.partner.len())
            .filter(|&c| self.is_critical(c))
            .collect()
    }

    /// Critical cells ordered by dimension, then by the cell order.
    pub fn critical_sorted(&self, poset: &FacePoset) -> Vec<CellId> {
        let mut cells = self.critical();
        cells.sort_by_key(|&c| (poset.dim(c), poset.order(c)));
        cells
    }

    pub fn critical_counts_by_dim(&self, poset: &FacePoset) -> Vec<usize> {
        let mut counts = vec![0; poset.max_dim().map_or(0, |d| d + 1)];
        for c in self.critical() {
            counts[poset.dim(c)] += 1;
        }
        counts
    }
}

/// Greedy gradient of a simplicial complex on its plain or modified Hasse
/// diagram.
pub fn compute_gradient<T>(
    complex: &SimplicialComplex<T>,
    variant: HasseVariant,
) -> Result<DiscreteGradientField> {
    DiscreteGradientField::from_hasse(complex.poset(), &simplicial_hasse(complex, variant))
}

/// A topological order of the V-path digraph: matched pairs point up, every
/// other facet relation points down. Fails on a closed V-path.
pub fn topological_order(poset: &FacePoset, field: &DiscreteGradientField) -> Result<Vec<CellId>> {
    let n = poset.num_cells();
    let successors = |c: CellId| -> Vec<CellId> {
        match field.partner(c) {
            Partner::Up(t) => vec![t],
            p => poset
                .facets(c)
                .iter()
                .copied()
                .filter(|&f| p != Partner::Down(f))
                .collect(),
        }
    };
    let mut indegree = vec![0usize; n];
    for c in 0..n {
        for s in successors(c) {
            indegree[s] += 1;
        }
    }
    let mut queue: VecDeque<CellId> = (0..n).filter(|&c| indegree[c] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(c) = queue.pop_front() {
        order.push(c);
        for s in successors(c) {
            indegree[s] -= 1;
            if indegree[s] == 0 {
                queue.push_back(s);
            }
        }
    }
    match (0..n).find(|&c| indegree[c] > 0) {
        Some(c) => Err(Error::CycleDetected(c)),
        None => Ok(order),
    }
}

/// True iff the field has no non-trivial closed V-path.
pub fn is_gradient(poset: &FacePoset, field: &DiscreteGradientField) -> bool {
    topological_order(poset, field).is_ok()
}

/// `H(σ)`: the vertices of `σ` and of its cofacets, with the `f`-minimiser.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Halo {
    pub members: Vec<usize>,
    pub argmin: usize,
}

pub fn halo<T>(complex: &SimplicialComplex<T>, sigma: &Simplex) -> Result<Halo> {
    Ok(halo_of(complex, complex.require(sigma)?))
}

pub fn halo_of<T>(complex: &SimplicialComplex<T>, cell: CellId) -> Halo {
    let mut members: BTreeSet<usize> = complex.simplex(cell).vertices().iter().copied().collect();
    for &t in complex.poset().cofacets(cell) {
        members.extend(complex.simplex(t).vertices().iter().copied());
    }
    let argmin = *members
        .iter()
        .min_by_key(|&&v| complex.rank(v))
        .expect("simplices are non-empty");
    Halo {
        members: members.into_iter().collect(),
        argmin,
    }
}

/// `h_f(σ)` without materialising the halo.
pub fn halo_min<T>(complex: &SimplicialComplex<T>, cell: CellId) -> usize {
    let own = complex.simplex(cell).vertices().iter().copied();
    let above = complex
        .poset()
        .cofacets(cell)
        .iter()
        .flat_map(|&t| complex.simplex(t).vertices().iter().copied());
    own.chain(above)
        .min_by_key(|&v| complex.rank(v))
        .expect("simplices are non-empty")
}

/// A V-path `σ_0, τ_0, σ_1, …, σ_n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VPath {
    pub cells: Vec<CellId>,
}

impl VPath {
    pub fn sigmas(&self) -> impl Iterator<Item = CellId> + '_ {
        self.cells.iter().step_by(2).copied()
    }

    pub fn taus(&self) -> impl Iterator<Item = CellId> + '_ {
        self.cells.iter().skip(1).step_by(2).copied()
    }

    pub fn first(&self) -> CellId {
        self.cells[0]
    }

    pub fn last(&self) -> CellId {
        *self.cells.last().expect("paths are non-empty")
    }

    /// Number of `σ_i → τ_i` steps.
    pub fn steps(&self) -> usize {
        self.cells.len() / 2
    }

    pub fn is_trivial(&self) -> bool {
        self.cells.len() == 1
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum TraceMode {
    /// Every continuation: one path per leaf of the V-path tree.
    #[default]
    Tree,
    /// Always continue with the facet lowest in the cell order.
    Single,
}

/// Traces V-paths from `start` until they reach a cell that is not matched
/// upward. `budget` caps the number of extension steps.
pub fn trace_vpaths(
    poset: &FacePoset,
    field: &DiscreteGradientField,
    start: CellId,
    mode: TraceMode,
    budget: usize,
) -> Result<Vec<VPath>> {
    if start >= poset.num_cells() {
        return Err(Error::UnknownCell(start));
    }
    let mut out = Vec::new();
    let mut steps = 0usize;
    let mut stack = vec![vec![start]];
    while let Some(cells) = stack.pop() {
        let sigma = *cells.last().expect("non-empty");
        let Some(tau) = field.up(sigma) else {
            out.push(VPath { cells });
            continue;
        };
        let mut next: Vec<CellId> = poset
            .facets(tau)
            .iter()
            .copied()
            .filter(|&s| s != sigma)
            .collect();
        if mode == TraceMode::Single {
            next = next
                .into_iter()
                .min_by_key(|&s| poset.order(s))
                .into_iter()
                .collect();
        }
        if next.is_empty() {
            // τ has σ as its only facet; the path stops at τ's facet σ.
            out.push(VPath { cells });
            continue;
        }
        // Reverse so that the lowest continuation is explored (and reported)
        // first.
        next.sort_by_key(|&s| std::cmp::Reverse(poset.order(s)));
        for s in next {
            steps += 1;
            if steps > budget {
                return Err(Error::BudgetExceeded(budget));
            }
            if cells.iter().step_by(2).any(|&c| c == s) {
                return Err(Error::CycleDetected(s));
            }
            let mut extended = cells.clone();
            extended.push(tau);
            extended.push(s);
            stack.push(extended);
        }
    }
    Ok(out)
}

/// Gained vertices `V_n = {τ_i \ σ_i}` and lost vertices `W_n = {τ_i \ σ_{i+1}}`.
pub fn gain_loss_sets<T>(
    complex: &SimplicialComplex<T>,
    path: &VPath,
) -> (BTreeSet<usize>, BTreeSet<usize>) {
    let mut gained = BTreeSet::new();
    let mut lost = BTreeSet::new();
    let cells = &path.cells;
    for i in (1..cells.len()).step_by(2) {
        let tau = complex.simplex(cells[i]);
        let before = complex.simplex(cells[i - 1]);
        gained.extend(tau.vertices().iter().filter(|v| !before.contains(**v)));
        if let Some(&after) = cells.get(i + 1) {
            let after = complex.simplex(after);
            lost.extend(tau.vertices().iter().filter(|v| !after.contains(**v)));
        }
    }
    (gained, lost)
}

/// A failed check, with the cells that witness it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub rule: &'static str,
    pub cells: Vec<CellId>,
}

impl Violation {
    pub fn new(rule: &'static str, cells: Vec<CellId>) -> Self {
        Violation { rule, cells }
    }
}

/// Steepest descent and criticality: `σ → σ ∪ h_f(σ)` whenever `h_f(σ) ∉ σ`,
/// and a critical `σ` contains `h_f(σ)` while `h_f(σ \ h_f(σ)) ∉ σ`.
pub fn steepest_descent_check<T: Sync>(
    complex: &SimplicialComplex<T>,
    field: &DiscreteGradientField,
) -> Vec<Violation> {
    (0..complex.num_simplices())
        .into_par_iter()
        .flat_map_iter(|cell| {
            let mut found = Vec::new();
            let sigma = complex.simplex(cell);
            let h = halo_min(complex, cell);
            if !sigma.contains(h) {
                let tau = complex
                    .id_of(&sigma.with(h))
                    .expect("halo vertex spans a cofacet");
                if field.up(cell) != Some(tau) {
                    found.push(Violation::new("steepest-descent", vec![cell, tau]));
                }
            }
            if field.is_critical(cell) {
                if !sigma.contains(h) {
                    found.push(Violation::new("critical-contains-minimum", vec![cell]));
                } else if let Some(rest) = sigma.without(h) {
                    let rest = complex.id_of(&rest).expect("faces are closed");
                    if sigma.contains(halo_min(complex, rest)) {
                        found.push(Violation::new("critical-facet-minimum", vec![cell, rest]));
                    }
                }
            }
            found
        })
        .collect()
}

/// For every `σ` matched upward, the highest critical cell reachable by a
/// non-trivial V-path from `σ` (as a position in the cell order).
fn best_reachable_critical(
    poset: &FacePoset,
    field: &DiscreteGradientField,
    topo: &[CellId],
) -> Vec<Option<usize>> {
    let mut best: Vec<Option<usize>> = vec![None; poset.num_cells()];
    for &sigma in topo.iter().rev() {
        let Some(tau) = field.up(sigma) else { continue };
        best[sigma] = poset
            .facets(tau)
            .iter()
            .filter(|&&s| s != sigma)
            .filter_map(|&s| {
                if field.is_critical(s) {
                    Some(poset.order(s))
                } else {
                    best[s]
                }
            })
            .max();
    }
    best
}

/// Every V-path ending at a critical `σ_n` has `σ_n` below each `σ_i`.
pub fn decreasing_flow_check(
    poset: &FacePoset,
    field: &DiscreteGradientField,
) -> Result<Vec<Violation>> {
    let topo = topological_order(poset, field)?;
    let best = best_reachable_critical(poset, field, &topo);
    Ok((0..poset.num_cells())
        .filter(|&c| best[c].is_some_and(|b| b >= poset.order(c)))
        .map(|c| Violation::new("decreasing-flow", vec![c]))
        .collect())
}

/// Same property as [`decreasing_flow_check`], by enumerating the V-path tree
/// from every cell.
pub fn decreasing_flow_by_enumeration(
    poset: &FacePoset,
    field: &DiscreteGradientField,
    budget: usize,
) -> Result<Vec<Violation>> {
    let mut found = Vec::new();
    for start in 0..poset.num_cells() {
        if field.up(start).is_none() {
            continue;
        }
        for path in trace_vpaths(poset, field, start, TraceMode::Tree, budget)? {
            let end = path.last();
            if !field.is_critical(end) {
                continue;
            }
            if path
                .sigmas()
                .take(path.steps())
                .any(|s| poset.order(s) <= poset.order(end))
            {
                found.push(Violation::new("decreasing-flow", path.cells));
            }
        }
    }
    Ok(found)
}

/// Along every V-path ending at a critical cell, `σ_0 > σ_1 > … > σ_n`.
pub fn strict_flow_check(
    poset: &FacePoset,
    field: &DiscreteGradientField,
) -> Result<Vec<Violation>> {
    let topo = topological_order(poset, field)?;
    let mut reaches = vec![false; poset.num_cells()];
    let mut found = Vec::new();
    for &sigma in topo.iter().rev() {
        if field.is_critical(sigma) {
            reaches[sigma] = true;
            continue;
        }
        let Some(tau) = field.up(sigma) else { continue };
        for &next in poset.facets(tau) {
            if next == sigma || !reaches[next] {
                continue;
            }
            reaches[sigma] = true;
            if poset.order(next) >= poset.order(sigma) {
                found.push(Violation::new("strict-flow", vec![sigma, tau, next]));
            }
        }
    }
    Ok(found)
}

/// Every V-path step decreases: `σ_{i+1} < σ_i`, and with `sandwich` also
/// `σ_{i+1} < τ_i < σ_i`.
pub fn modified_flow_check(
    poset: &FacePoset,
    field: &DiscreteGradientField,
    sandwich: bool,
) -> Vec<Violation> {
    let mut found = Vec::new();
    for (sigma, tau) in field.pairs() {
        if sandwich && poset.order(tau) >= poset.order(sigma) {
            found.push(Violation::new("modified-flow", vec![sigma, tau]));
        }
        for &next in poset.facets(tau) {
            if next == sigma {
                continue;
            }
            let bound = if sandwich {
                poset.order(tau)
            } else {
                poset.order(sigma)
            };
            if poset.order(next) >= bound {
                found.push(Violation::new("modified-flow", vec![sigma, tau, next]));
            }
        }
    }
    found
}

/// `σ ⊆ τ ⇒ H(τ) ⊆ H(σ)` and `f(h_f(σ)) ≤ f(h_f(τ))`, over all comparable
/// pairs.
pub fn halo_monotonicity_check<T: Sync>(complex: &SimplicialComplex<T>) -> Vec<Violation> {
    let poset = complex.poset();
    (0..complex.num_simplices())
        .into_par_iter()
        .flat_map_iter(|sigma| {
            let h_sigma = halo_of(complex, sigma);
            let mut found = Vec::new();
            let mut frontier = vec![sigma];
            let mut seen = BTreeSet::new();
            while let Some(c) = frontier.pop() {
                for &tau in poset.cofacets(c) {
                    if !seen.insert(tau) {
                        continue;
                    }
                    frontier.push(tau);
                    let h_tau = halo_of(complex, tau);
                    let subset = h_tau
                        .members
                        .iter()
                        .all(|v| h_sigma.members.binary_search(v).is_ok());
                    if !subset || complex.rank(h_sigma.argmin) > complex.rank(h_tau.argmin) {
                        found.push(Violation::new("halo-monotone", vec![sigma, tau]));
                    }
                }
            }
            found
        })
        .collect()
}

/// Alternating count of critical cells equals the Euler characteristic.
pub fn morse_count_holds(poset: &FacePoset, field: &DiscreteGradientField) -> bool {
    alternating_sum(&field.critical_counts_by_dim(poset)) == poset.euler_characteristic()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(vs: &[usize]) -> Simplex {
        Simplex::new(vs.to_vec()).unwrap()
    }

    fn path_complex() -> SimplicialComplex<f64> {
        SimplicialComplex::from_scalars(&[vec![0, 1], vec![1, 2]], [(0, 1.0), (1, 2.0), (2, 3.0)])
            .unwrap()
    }

    fn described(c: &SimplicialComplex<f64>, cells: &[CellId]) -> Vec<Vec<usize>> {
        cells
            .iter()
            .map(|&x| c.simplex(x).vertices().to_vec())
            .collect()
    }

    #[test]
    fn path_complex_gradient() {
        let c = path_complex();
        let v = compute_gradient(&c, HasseVariant::Plain).unwrap();
        let pairs: Vec<_> = v
            .pairs()
            .into_iter()
            .map(|(a, b)| {
                (
                    c.simplex(a).vertices().to_vec(),
                    c.simplex(b).vertices().to_vec(),
                )
            })
            .collect();
        assert_eq!(pairs, vec![(vec![1], vec![0, 1]), (vec![2], vec![1, 2])]);
        assert_eq!(described(&c, &v.critical()), vec![vec![0]]);
        assert!(is_gradient(c.poset(), &v));
        assert!(morse_count_holds(c.poset(), &v));
    }

    #[test]
    fn single_vertex_and_edge() {
        let p = SimplicialComplex::from_scalars(&[vec![0]], [(0, 1.0)]).unwrap();
        let v = compute_gradient(&p, HasseVariant::Plain).unwrap();
        assert!(v.pairs().is_empty());
        assert_eq!(v.critical(), vec![0]);

        let e = SimplicialComplex::from_scalars(&[vec![0, 1]], [(0, 1.0), (1, 2.0)]).unwrap();
        let v = compute_gradient(&e, HasseVariant::Plain).unwrap();
        assert_eq!(
            v.pairs(),
            vec![(e.id_of(&s(&[1])).unwrap(), e.id_of(&s(&[0, 1])).unwrap())]
        );
        assert_eq!(described(&e, &v.critical()), vec![vec![0]]);
    }

    fn rotating_boundary() -> (SimplicialComplex<f64>, DiscreteGradientField) {
        let c = SimplicialComplex::from_scalars(
            &[vec![0, 1], vec![1, 2], vec![0, 2]],
            [(0, 1.0), (1, 2.0), (2, 3.0)],
        )
        .unwrap();
        let id = |vs: &[usize]| c.id_of(&s(vs)).unwrap();
        let pairs = [
            (id(&[0]), id(&[0, 1])),
            (id(&[1]), id(&[1, 2])),
            (id(&[2]), id(&[0, 2])),
        ];
        let v = DiscreteGradientField::from_pairs(c.poset(), pairs).unwrap();
        (c, v)
    }

    #[test]
    fn rotating_matching_is_not_a_gradient() {
        let (c, v) = rotating_boundary();
        assert!(!is_gradient(c.poset(), &v));
        let start = c.id_of(&s(&[0])).unwrap();
        let err = trace_vpaths(c.poset(), &v, start, TraceMode::Tree, 100).unwrap_err();
        assert!(matches!(err, Error::CycleDetected(_)));
    }

    #[test]
    fn empty_matching_is_a_gradient() {
        let c = path_complex();
        let v = DiscreteGradientField::from_pairs(c.poset(), []).unwrap();
        assert!(is_gradient(c.poset(), &v));
    }

    #[test]
    fn invalid_pairs_rejected() {
        let c = path_complex();
        let id = |vs: &[usize]| c.id_of(&s(vs)).unwrap();
        assert_eq!(
            DiscreteGradientField::from_pairs(c.poset(), [(id(&[2]), id(&[0, 1]))]),
            Err(Error::NotAFacet(id(&[2]), id(&[0, 1])))
        );
        assert_eq!(
            DiscreteGradientField::from_pairs(
                c.poset(),
                [(id(&[1]), id(&[0, 1])), (id(&[1]), id(&[1, 2]))]
            ),
            Err(Error::CellPairedTwice(id(&[1])))
        );
    }

    #[test]
    fn halo_examples() {
        let tri = SimplicialComplex::from_scalars(&[vec![0, 1, 2]], [(0, 1.0), (1, 2.0), (2, 3.0)])
            .unwrap();
        assert_eq!(
            halo(&tri, &s(&[1, 2])).unwrap(),
            Halo {
                members: vec![0, 1, 2],
                argmin: 0
            }
        );
        assert_eq!(
            halo(&tri, &s(&[0])).unwrap(),
            Halo {
                members: vec![0, 1, 2],
                argmin: 0
            }
        );
        assert_eq!(halo(&tri, &s(&[5])), Err(Error::NotInComplex(vec![5])));
        let point = SimplicialComplex::from_scalars(&[vec![0]], [(0, 1.0)]).unwrap();
        assert_eq!(
            halo(&point, &s(&[0])).unwrap(),
            Halo {
                members: vec![0],
                argmin: 0
            }
        );
    }

    #[test]
    fn path_complex_vpath() {
        let c = path_complex();
        let v = compute_gradient(&c, HasseVariant::Plain).unwrap();
        let start = c.id_of(&s(&[2])).unwrap();
        let paths = trace_vpaths(c.poset(), &v, start, TraceMode::Tree, 100).unwrap();
        assert_eq!(paths.len(), 1);
        assert_eq!(
            described(&c, &paths[0].cells),
            vec![vec![2], vec![1, 2], vec![1], vec![0, 1], vec![0]]
        );
        assert!(v.is_critical(paths[0].last()));
        let single = trace_vpaths(c.poset(), &v, start, TraceMode::Single, 100).unwrap();
        assert_eq!(single, paths);

        let (gained, lost) = gain_loss_sets(&c, &paths[0]);
        assert_eq!(gained.into_iter().collect::<Vec<_>>(), vec![0, 1]);
        assert_eq!(lost.into_iter().collect::<Vec<_>>(), vec![1, 2]);

        let crit = c.id_of(&s(&[0])).unwrap();
        let trivial = trace_vpaths(c.poset(), &v, crit, TraceMode::Tree, 100).unwrap();
        assert_eq!(trivial, vec![VPath { cells: vec![crit] }]);
        let (g, l) = gain_loss_sets(&c, &trivial[0]);
        assert!(g.is_empty() && l.is_empty());
    }

    #[test]
    fn closed_path_gains_what_it_loses() {
        let (c, _) = rotating_boundary();
        let id = |vs: &[usize]| c.id_of(&s(vs)).unwrap();
        let closed = VPath {
            cells: vec![
                id(&[0]),
                id(&[0, 1]),
                id(&[1]),
                id(&[1, 2]),
                id(&[2]),
                id(&[0, 2]),
                id(&[0]),
            ],
        };
        let (gained, lost) = gain_loss_sets(&c, &closed);
        assert_eq!(gained, lost);
    }

    #[test]
    fn path_complex_checks_pass() {
        let c = path_complex();
        let v = compute_gradient(&c, HasseVariant::Plain).unwrap();
        assert!(steepest_descent_check(&c, &v).is_empty());
        assert!(decreasing_flow_check(c.poset(), &v).unwrap().is_empty());
        assert!(decreasing_flow_by_enumeration(c.poset(), &v, 1000)
            .unwrap()
            .is_empty());
        assert!(strict_flow_check(c.poset(), &v).unwrap().is_empty());
        assert!(halo_monotonicity_check(&c).is_empty());
    }

    #[test]
    fn wrong_field_fails_steepest_descent() {
        // {0} → {0,1} instead of {1} → {0,1}.
        let c = path_complex();
        let id = |vs: &[usize]| c.id_of(&s(vs)).unwrap();
        let v = DiscreteGradientField::from_pairs(
            c.poset(),
            [(id(&[0]), id(&[0, 1])), (id(&[2]), id(&[1, 2]))],
        )
        .unwrap();
        let rules: BTreeSet<_> = steepest_descent_check(&c, &v)
            .into_iter()
            .map(|x| x.rule)
            .collect();
        assert!(rules.contains("steepest-descent"));
        assert!(rules.contains("critical-contains-minimum"));
    }
}
