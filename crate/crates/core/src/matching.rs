//! Greedy matching on weighted graphs, saturation, threshold subgraphs and
//! maximal alternating paths.

use std::collections::{BTreeMap, HashSet};

use serde::Serialize;

use crate::error::{Error, Result};

/// Index of an edge within its graph.
pub type EdgeId = usize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Edge<W> {
    pub u: usize,
    pub v: usize,
    pub weight: W,
}

impl<W> Edge<W> {
    pub fn other(&self, node: usize) -> usize {
        if node == self.u {
            self.v
        } else {
            self.u
        }
    }

    pub fn touches(&self, node: usize) -> bool {
        self.u == node || self.v == node
    }
}

/// An undirected graph with totally ordered edge weights.
///
/// Node ids are arbitrary; edges are stored with `u < v` and sorted.
#[derive(Clone, Debug)]
pub struct WeightedMatchGraph<W> {
    nodes: Vec<usize>,
    edges: Vec<Edge<W>>,
    incident: BTreeMap<usize, Vec<EdgeId>>,
}

impl<W: Ord + Clone> WeightedMatchGraph<W> {
    pub fn new(
        nodes: impl IntoIterator<Item = usize>,
        edges: impl IntoIterator<Item = (usize, usize, W)>,
    ) -> Result<Self> {
        let mut incident: BTreeMap<usize, Vec<EdgeId>> =
            nodes.into_iter().map(|n| (n, Vec::new())).collect();
        let mut list: Vec<Edge<W>> = Vec::new();
        for (a, b, weight) in edges {
            if a == b {
                return Err(Error::SelfLoop(a));
            }
            for n in [a, b] {
                if !incident.contains_key(&n) {
                    return Err(Error::UnknownNode(n));
                }
            }
            list.push(Edge {
                u: a.min(b),
                v: a.max(b),
                weight,
            });
        }
        list.sort_by_key(|e| (e.u, e.v));
        if let Some(w) = list
            .windows(2)
            .find(|w| (w[0].u, w[0].v) == (w[1].u, w[1].v))
        {
            return Err(Error::DuplicateEdge(w[0].u, w[0].v));
        }
        for (id, e) in list.iter().enumerate() {
            incident.get_mut(&e.u).expect("checked").push(id);
            incident.get_mut(&e.v).expect("checked").push(id);
        }
        let nodes = incident.keys().copied().collect();
        Ok(WeightedMatchGraph {
            nodes,
            edges: list,
            incident,
        })
    }

    /// First pair of adjacent edges with equal weight, if any.
    pub fn adjacent_tie(&self) -> Option<(EdgeId, EdgeId)> {
        for ids in self.incident.values() {
            let mut sorted = ids.clone();
            sorted.sort_by(|&a, &b| {
                self.edges[a]
                    .weight
                    .cmp(&self.edges[b].weight)
                    .then(a.cmp(&b))
            });
            if let Some(w) = sorted
                .windows(2)
                .find(|w| self.edges[w[0]].weight == self.edges[w[1]].weight)
            {
                return Some((w[0], w[1]));
            }
        }
        None
    }

    /// Subgraph induced on `keep`.
    pub fn induced(&self, keep: impl Fn(usize) -> bool) -> Self {
        let nodes: Vec<usize> = self.nodes.iter().copied().filter(|&n| keep(n)).collect();
        let edges: Vec<(usize, usize, W)> = self
            .edges
            .iter()
            .filter(|e| keep(e.u) && keep(e.v))
            .map(|e| (e.u, e.v, e.weight.clone()))
            .collect();
        WeightedMatchGraph::new(nodes, edges).expect("subgraph of a valid graph")
    }

    pub fn find_edge(&self, a: usize, b: usize) -> Option<EdgeId> {
        let key = (a.min(b), a.max(b));
        self.edges.binary_search_by(|e| (e.u, e.v).cmp(&key)).ok()
    }
}

impl<W> WeightedMatchGraph<W> {
    pub fn nodes(&self) -> &[usize] {
        &self.nodes
    }

    pub fn edges(&self) -> &[Edge<W>] {
        &self.edges
    }

    pub fn edge(&self, id: EdgeId) -> &Edge<W> {
        &self.edges[id]
    }

    pub fn incident(&self, node: usize) -> &[EdgeId] {
        self.incident.get(&node).map_or(&[], Vec::as_slice)
    }

    pub fn contains_node(&self, node: usize) -> bool {
        self.incident.contains_key(&node)
    }
}

/// Saturation value of a node: the weight of its matched edge, or `+∞` if
/// unmatched. `NegInfinity` is a threshold below every weight.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Saturation<W> {
    NegInfinity,
    Finite(W),
    Infinity,
}

/// A matching in a particular graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matching {
    matched: Vec<EdgeId>,
    mate: BTreeMap<usize, EdgeId>,
}

impl Matching {
    /// Builds a matching from edge ids; fails if two share a node.
    pub fn from_edges<W>(
        graph: &WeightedMatchGraph<W>,
        edges: impl IntoIterator<Item = EdgeId>,
    ) -> Result<Self> {
        let mut matched: Vec<EdgeId> = edges.into_iter().collect();
        matched.sort_unstable();
        matched.dedup();
        let mut mate = BTreeMap::new();
        for &id in &matched {
            let e = graph.edges.get(id).ok_or(Error::UnknownCell(id))?;
            for n in [e.u, e.v] {
                if mate.insert(n, id).is_some() {
                    return Err(Error::CellPairedTwice(n));
                }
            }
        }
        Ok(Matching { matched, mate })
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.matched
    }

    pub fn len(&self) -> usize {
        self.matched.len()
    }

    pub fn is_empty(&self) -> bool {
        self.matched.is_empty()
    }

    pub fn contains(&self, edge: EdgeId) -> bool {
        self.matched.binary_search(&edge).is_ok()
    }

    /// The matched edge at `node`, if any.
    pub fn mate_edge(&self, node: usize) -> Option<EdgeId> {
        self.mate.get(&node).copied()
    }

    pub fn is_saturated(&self, node: usize) -> bool {
        self.mate.contains_key(&node)
    }

    pub fn saturation<'g, W>(
        &self,
        graph: &'g WeightedMatchGraph<W>,
        node: usize,
    ) -> Saturation<&'g W> {
        match self.mate.get(&node) {
            Some(&e) => Saturation::Finite(&graph.edges[e].weight),
            None => Saturation::Infinity,
        }
    }
}

/// Greedy matching: repeatedly match every remaining edge of globally
/// minimal weight and delete its endpoints.
pub fn greedy_match<W: Ord + Clone>(graph: &WeightedMatchGraph<W>) -> Result<Matching> {
    if let Some((a, b)) = graph.adjacent_tie() {
        return Err(Error::AdjacentTie(a, b));
    }
    let mut by_weight: Vec<EdgeId> = (0..graph.edges.len()).collect();
    by_weight.sort_by(|&a, &b| {
        graph.edges[a]
            .weight
            .cmp(&graph.edges[b].weight)
            .then(a.cmp(&b))
    });

    let mut dead: HashSet<usize> = HashSet::new();
    let mut matched = Vec::new();
    let mut start = 0;
    while start < by_weight.len() {
        let w = &graph.edges[by_weight[start]].weight;
        let end = start
            + by_weight[start..]
                .iter()
                .take_while(|&&e| graph.edges[e].weight == *w)
                .count();
        // Within one weight class the alive edges are pairwise disjoint, so
        // they are all matched before any endpoint is deleted.
        let chosen: Vec<EdgeId> = by_weight[start..end]
            .iter()
            .copied()
            .filter(|&e| !dead.contains(&graph.edges[e].u) && !dead.contains(&graph.edges[e].v))
            .collect();
        for &e in &chosen {
            dead.insert(graph.edges[e].u);
            dead.insert(graph.edges[e].v);
        }
        matched.extend(chosen);
        start = end;
    }
    Matching::from_edges(graph, matched)
}

/// `G_a`: the subgraph induced on nodes whose saturation is at least `a`.
pub fn threshold_subgraph<W: Ord + Clone>(
    graph: &WeightedMatchGraph<W>,
    matching: &Matching,
    a: &Saturation<W>,
) -> WeightedMatchGraph<W> {
    let a = match a {
        Saturation::NegInfinity => Saturation::NegInfinity,
        Saturation::Finite(w) => Saturation::Finite(w),
        Saturation::Infinity => Saturation::Infinity,
    };
    graph.induced(|n| matching.saturation(graph, n) >= a)
}

/// An alternating path, or an alternating cycle when `closed`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlternatingPath {
    /// Visited nodes; for a cycle the first node is repeated at the end.
    pub nodes: Vec<usize>,
    pub edges: Vec<EdgeId>,
    pub closed: bool,
}

impl AlternatingPath {
    /// Edges of minimal weight along the path.
    pub fn e_min<W: Ord>(&self, graph: &WeightedMatchGraph<W>) -> Vec<EdgeId> {
        let Some(min) = self.edges.iter().map(|&e| &graph.edges[e].weight).min() else {
            return Vec::new();
        };
        self.edges
            .iter()
            .copied()
            .filter(|&e| graph.edges[e].weight == *min)
            .collect()
    }

    /// Every saturated node of the path is saturated by one of its edges.
    pub fn is_maximal(&self, matching: &Matching) -> bool {
        self.nodes.iter().all(|&n| match matching.mate_edge(n) {
            Some(e) => self.edges.contains(&e),
            None => true,
        })
    }
}

/// All maximal alternating paths with at most `max_len` edges, including
/// closed alternating cycles. Each path is reported once (not also reversed).
///
/// The search is exhaustive; `budget` caps the number of extension steps.
pub fn enumerate_maximal_alternating_paths<W: Ord>(
    graph: &WeightedMatchGraph<W>,
    matching: &Matching,
    max_len: usize,
    budget: usize,
) -> Result<Vec<AlternatingPath>> {
    let mut search = PathSearch {
        graph,
        matching,
        max_len,
        budget,
        steps: 0,
        nodes: Vec::new(),
        edges: Vec::new(),
        seen_cycles: HashSet::new(),
        out: Vec::new(),
    };
    for &start in &graph.nodes {
        search.nodes.push(start);
        search.extend()?;
        search.nodes.pop();
    }
    Ok(search.out)
}

struct PathSearch<'a, W> {
    graph: &'a WeightedMatchGraph<W>,
    matching: &'a Matching,
    max_len: usize,
    budget: usize,
    steps: usize,
    nodes: Vec<usize>,
    edges: Vec<EdgeId>,
    seen_cycles: HashSet<Vec<EdgeId>>,
    out: Vec<AlternatingPath>,
}

impl<W> PathSearch<'_, W> {
    fn extend(&mut self) -> Result<()> {
        if self.edges.len() == self.max_len {
            return Ok(());
        }
        let tip = *self.nodes.last().expect("non-empty");
        let last_matched = self.edges.last().map(|&e| self.matching.contains(e));
        for &e in self.graph.incident(tip) {
            let is_matched = self.matching.contains(e);
            if last_matched == Some(is_matched) {
                continue;
            }
            self.steps += 1;
            if self.steps > self.budget {
                return Err(Error::BudgetExceeded(self.budget));
            }
            let next = self.graph.edges[e].other(tip);
            if next == self.nodes[0] && self.edges.len() >= 2 {
                let first_matched = self.matching.contains(self.edges[0]);
                if first_matched != is_matched {
                    self.edges.push(e);
                    self.nodes.push(next);
                    self.record_cycle();
                    self.nodes.pop();
                    self.edges.pop();
                }
                continue;
            }
            if self.nodes.contains(&next) {
                continue;
            }
            self.edges.push(e);
            self.nodes.push(next);
            if self.nodes[0] < next {
                self.record_open();
            }
            self.extend()?;
            self.nodes.pop();
            self.edges.pop();
        }
        Ok(())
    }

    fn record_open(&mut self) {
        let path = AlternatingPath {
            nodes: self.nodes.clone(),
            edges: self.edges.clone(),
            closed: false,
        };
        if path.is_maximal(self.matching) {
            self.out.push(path);
        }
    }

    fn record_cycle(&mut self) {
        let mut key = self.edges.clone();
        key.sort_unstable();
        if !self.seen_cycles.insert(key) {
            return;
        }
        let path = AlternatingPath {
            nodes: self.nodes.clone(),
            edges: self.edges.clone(),
            closed: true,
        };
        if path.is_maximal(self.matching) {
            self.out.push(path);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path_graph(w: [u32; 3]) -> WeightedMatchGraph<u32> {
        WeightedMatchGraph::new([1, 2, 3, 4], [(1, 2, w[0]), (2, 3, w[1]), (3, 4, w[2])]).unwrap()
    }

    fn matched_pairs(g: &WeightedMatchGraph<u32>, m: &Matching) -> Vec<(usize, usize)> {
        m.edges()
            .iter()
            .map(|&e| (g.edge(e).u, g.edge(e).v))
            .collect()
    }

    #[test]
    fn greedy_on_paths() {
        let g = path_graph([1, 2, 3]);
        assert_eq!(
            matched_pairs(&g, &greedy_match(&g).unwrap()),
            vec![(1, 2), (3, 4)]
        );
        let g = path_graph([2, 1, 3]);
        assert_eq!(matched_pairs(&g, &greedy_match(&g).unwrap()), vec![(2, 3)]);
        let g = WeightedMatchGraph::new([0, 9], [(9, 0, 42u32)]).unwrap();
        assert_eq!(matched_pairs(&g, &greedy_match(&g).unwrap()), vec![(0, 9)]);
    }

    #[test]
    fn non_adjacent_ties_matched_together() {
        let g = path_graph([1, 5, 1]);
        assert_eq!(
            matched_pairs(&g, &greedy_match(&g).unwrap()),
            vec![(1, 2), (3, 4)]
        );
    }

    #[test]
    fn adjacent_tie_rejected() {
        let g = path_graph([1, 1, 3]);
        assert_eq!(greedy_match(&g), Err(Error::AdjacentTie(0, 1)));
    }

    #[test]
    fn construction_errors() {
        assert_eq!(
            WeightedMatchGraph::new([1], [(1, 1, 0u32)]).unwrap_err(),
            Error::SelfLoop(1)
        );
        assert_eq!(
            WeightedMatchGraph::new([1], [(1, 2, 0u32)]).unwrap_err(),
            Error::UnknownNode(2)
        );
        assert_eq!(
            WeightedMatchGraph::new([1, 2], [(1, 2, 0u32), (2, 1, 3)]).unwrap_err(),
            Error::DuplicateEdge(1, 2)
        );
    }

    #[test]
    fn threshold_subgraphs() {
        let g = path_graph([1, 2, 3]);
        let m = greedy_match(&g).unwrap();
        let g3 = threshold_subgraph(&g, &m, &Saturation::Finite(3));
        assert_eq!(g3.nodes(), &[3, 4]);
        assert_eq!(g3.edges().len(), 1);
        assert_eq!((g3.edge(0).u, g3.edge(0).v, g3.edge(0).weight), (3, 4, 3));
        let all = threshold_subgraph(&g, &m, &Saturation::NegInfinity);
        assert_eq!(all.nodes().len(), 4);
        assert_eq!(all.edges().len(), 3);
        let none = threshold_subgraph(&g, &m, &Saturation::Infinity);
        assert!(none.nodes().is_empty() && none.edges().is_empty());
    }

    #[test]
    fn saturation_values() {
        let g = path_graph([2, 1, 3]);
        let m = greedy_match(&g).unwrap();
        assert_eq!(m.saturation(&g, 1), Saturation::Infinity);
        assert_eq!(m.saturation(&g, 2), Saturation::Finite(&1));
        assert!(Saturation::Finite(&1) < Saturation::Infinity);
    }

    #[test]
    fn single_matched_edge_is_maximal() {
        let g = WeightedMatchGraph::new([0, 1], [(0, 1, 7u32)]).unwrap();
        let m = greedy_match(&g).unwrap();
        let paths = enumerate_maximal_alternating_paths(&g, &m, 8, 1000).unwrap();
        assert_eq!(paths.len(), 1);
        assert_eq!(paths[0].edges, vec![0]);
    }

    #[test]
    fn three_edge_alternating_path_is_maximal() {
        let g = path_graph([1, 2, 3]);
        let m = greedy_match(&g).unwrap();
        let paths = enumerate_maximal_alternating_paths(&g, &m, 8, 1000).unwrap();
        let full: Vec<_> = paths.iter().filter(|p| p.edges.len() == 3).collect();
        assert_eq!(full.len(), 1);
        assert_eq!(full[0].nodes, vec![1, 2, 3, 4]);
        assert_eq!(full[0].e_min(&g), vec![0]);
        // [e23] alone leaves 2 and 3 saturated from outside.
        assert!(paths.iter().all(|p| p.edges != vec![1]));
    }

    #[test]
    fn alternating_cycle_found_once() {
        // Square 0-1-2-3-0 with a perfect matching {01, 23}.
        let g = WeightedMatchGraph::new(
            [0, 1, 2, 3],
            [(0, 1, 1u32), (1, 2, 5), (2, 3, 2), (0, 3, 6)],
        )
        .unwrap();
        let m = greedy_match(&g).unwrap();
        let paths = enumerate_maximal_alternating_paths(&g, &m, 8, 10_000).unwrap();
        assert_eq!(paths.iter().filter(|p| p.closed).count(), 1);
    }

    #[test]
    fn budget_is_enforced() {
        let g = path_graph([1, 2, 3]);
        let m = greedy_match(&g).unwrap();
        assert_eq!(
            enumerate_maximal_alternating_paths(&g, &m, 8, 2),
            Err(Error::BudgetExceeded(2))
        );
    }
}
