//! Posets with inconsistent pairs, their CAT(0) cube complexes, and the
//! collapse certificate produced by greedy matching.

use std::cmp::Ordering;
use std::collections::{BTreeSet, BinaryHeap, HashMap};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gradient::{DiscreteGradientField, Violation};
use crate::hasse::{build_modified_hasse, HasseDiagram};
use crate::ordering::shortlex_cmp;
use crate::poset::{CellId, FacePoset};

/// Largest poset a bitmask can hold.
pub const MAX_ELEMENTS: usize = 64;

/// A finite poset with inconsistent pairs.
///
/// Stores the cover relations and minimal inconsistent pairs as given, plus
/// their closures as bitmasks over element indices.
#[derive(Clone, Debug)]
pub struct Pip {
    names: Vec<String>,
    covers: Vec<(usize, usize)>,
    minimal_inconsistent: Vec<(usize, usize)>,
    below: Vec<u64>,
    above: Vec<u64>,
    conflicts: Vec<u64>,
}

impl Pip {
    /// `covers` holds pairs `(a, b)` with `a < b`.
    pub fn new(
        names: Vec<String>,
        covers: Vec<(usize, usize)>,
        inconsistent: Vec<(usize, usize)>,
    ) -> Result<Self> {
        let n = names.len();
        if n > MAX_ELEMENTS {
            return Err(Error::InvalidPip(format!(
                "{n} elements; at most {MAX_ELEMENTS} supported"
            )));
        }
        if let Some(&(a, b)) = covers
            .iter()
            .chain(&inconsistent)
            .find(|&&(a, b)| a >= n || b >= n)
        {
            return Err(Error::InvalidPip(format!(
                "pair ({a}, {b}) names an unknown element"
            )));
        }
        let mut below = vec![0u64; n];
        let mut changed = true;
        while changed {
            changed = false;
            for &(a, b) in &covers {
                let next = below[b] | bit(a) | below[a];
                if next != below[b] {
                    below[b] = next;
                    changed = true;
                }
            }
        }
        let mut above = vec![0u64; n];
        for (b, &down) in below.iter().enumerate() {
            for a in members(down) {
                above[a] |= bit(b);
            }
        }
        let mut conflicts = vec![0u64; n];
        for &(p, q) in &inconsistent {
            for a in members(above[p] | bit(p)) {
                for b in members(above[q] | bit(q)) {
                    conflicts[a] |= bit(b);
                    conflicts[b] |= bit(a);
                }
            }
        }
        Ok(Pip {
            names,
            covers,
            minimal_inconsistent: inconsistent,
            below,
            above,
            conflicts,
        })
    }

    /// Builds a PIP from element names.
    pub fn from_names(
        elements: Vec<String>,
        covers: &[(String, String)],
        inconsistent: &[(String, String)],
    ) -> Result<Self> {
        let index: HashMap<&str, usize> = elements
            .iter()
            .enumerate()
            .map(|(i, s)| (s.as_str(), i))
            .collect();
        if index.len() != elements.len() {
            return Err(Error::InvalidPip("element names repeat".into()));
        }
        let resolve = |pairs: &[(String, String)]| -> Result<Vec<(usize, usize)>> {
            pairs
                .iter()
                .map(|(a, b)| {
                    let look = |s: &String| {
                        index
                            .get(s.as_str())
                            .copied()
                            .ok_or_else(|| Error::InvalidPip(format!("unknown element {s:?}")))
                    };
                    Ok((look(a)?, look(b)?))
                })
                .collect()
        };
        let covers = resolve(covers)?;
        let inconsistent = resolve(inconsistent)?;
        Pip::new(elements, covers, inconsistent)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn minimal_inconsistent(&self) -> &[(usize, usize)] {
        &self.minimal_inconsistent
    }

    /// `a < b` in the transitive closure.
    pub fn less(&self, a: usize, b: usize) -> bool {
        self.below[b] & bit(a) != 0
    }

    /// Elements strictly below `a`.
    pub fn below(&self, a: usize) -> u64 {
        self.below[a]
    }

    /// Elements strictly above `a`.
    pub fn above(&self, a: usize) -> u64 {
        self.above[a]
    }

    /// `{a, b}` is inconsistent after upward closure.
    pub fn inconsistent(&self, a: usize, b: usize) -> bool {
        self.conflicts[a] & bit(b) != 0
    }

    /// Downward closed and free of inconsistent pairs.
    pub fn is_consistent_ideal(&self, set: u64) -> bool {
        members(set).all(|i| self.below[i] & !set == 0 && self.conflicts[i] & set == 0)
    }

    /// Maximal elements of `set`.
    pub fn maximal(&self, set: u64) -> u64 {
        members(set)
            .filter(|&i| self.above[i] & set == 0)
            .fold(0, |m, i| m | bit(i))
    }

    pub fn describe(&self, set: u64) -> Vec<String> {
        members(set).map(|i| self.names[i].clone()).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum PipViolation {
    /// The order relation has a cycle through this element.
    Cycle { element: String },
    /// A minimal inconsistent pair of comparable elements.
    Comparable { p: String, q: String },
    /// An inconsistent pair with a common upper bound.
    CommonUpperBound { p: String, q: String, r: String },
}

impl fmt::Display for PipViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PipViolation::Cycle { element } => {
                write!(f, "order relation has a cycle through {element}")
            }
            PipViolation::Comparable { p, q } => {
                write!(f, "inconsistent pair {{{p}, {q}}} is comparable")
            }
            PipViolation::CommonUpperBound { p, q, r } => {
                write!(
                    f,
                    "inconsistent pair {{{p}, {q}}} has common upper bound {r}"
                )
            }
        }
    }
}

/// Order axioms and the inconsistency conditions; empty when valid.
pub fn validate_pip(pip: &Pip) -> Vec<PipViolation> {
    let name = |i: usize| pip.names[i].clone();
    let mut found: Vec<PipViolation> = (0..pip.len())
        .filter(|&i| pip.less(i, i))
        .map(|i| PipViolation::Cycle { element: name(i) })
        .collect();
    for &(p, q) in &pip.minimal_inconsistent {
        if p == q || pip.less(p, q) || pip.less(q, p) {
            found.push(PipViolation::Comparable {
                p: name(p),
                q: name(q),
            });
            continue;
        }
        if let Some(r) = members(pip.above[p] & pip.above[q]).next() {
            found.push(PipViolation::CommonUpperBound {
                p: name(p),
                q: name(q),
                r: name(r),
            });
        }
    }
    found
}

fn require_valid(pip: &Pip) -> Result<()> {
    let violations = validate_pip(pip);
    if violations.is_empty() {
        return Ok(());
    }
    let text: Vec<String> = violations.iter().map(ToString::to_string).collect();
    Err(Error::InvalidPip(text.join("; ")))
}

/// All consistent order ideals, as bitmasks in increasing numeric order.
/// Fails when more than `budget` candidate subsets would be examined.
pub fn enumerate_ideals(pip: &Pip, budget: u64) -> Result<Vec<u64>> {
    require_valid(pip)?;
    let n = pip.len();
    if n >= 63 || (1u64 << n) > budget {
        return Err(Error::BudgetExceeded(budget as usize));
    }
    Ok((0..1u64 << n)
        .filter(|&set| pip.is_consistent_ideal(set))
        .collect())
}

/// The cube `C(I, M)`: a consistent ideal `I` and marks `M ⊆ I_max`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CubeCell {
    pub ideal: u64,
    pub marks: u64,
}

impl CubeCell {
    pub fn dim(&self) -> usize {
        self.marks.count_ones() as usize
    }

    /// Facets `(J \ v, N \ v)` and `(J, N \ v)` for each `v ∈ N`.
    pub fn facets(&self) -> Vec<CubeCell> {
        members(self.marks)
            .flat_map(|v| {
                let marks = self.marks & !bit(v);
                [
                    CubeCell {
                        ideal: self.ideal & !bit(v),
                        marks,
                    },
                    CubeCell {
                        ideal: self.ideal,
                        marks,
                    },
                ]
            })
            .collect()
    }

    /// All `3^|N|` faces `(J \ N_1, N \ N_1 \ N_2)`, including the cube itself.
    pub fn faces(&self) -> Vec<CubeCell> {
        let mut out = vec![*self];
        for v in members(self.marks) {
            out = out
                .into_iter()
                .flat_map(|c| {
                    [
                        c,
                        CubeCell {
                            ideal: c.ideal & !bit(v),
                            marks: c.marks & !bit(v),
                        },
                        CubeCell {
                            ideal: c.ideal,
                            marks: c.marks & !bit(v),
                        },
                    ]
                })
                .collect();
        }
        out
    }

    /// The `2^|M|` vertices `I \ S` for `S ⊆ M`.
    pub fn vertices(&self) -> Vec<u64> {
        let marks: Vec<usize> = members(self.marks).collect();
        (0..1u64 << marks.len())
            .map(|k| {
                let removed = marks
                    .iter()
                    .enumerate()
                    .filter(|(t, _)| k >> t & 1 == 1)
                    .fold(0, |m, (_, &v)| m | bit(v));
                self.ideal & !removed
            })
            .collect()
    }
}

/// Positions of `set`'s elements in the linear order, ascending.
fn positioned(set: u64, positions: &[u32]) -> Vec<u32> {
    let mut out: Vec<u32> = members(set).map(|i| positions[i]).collect();
    out.sort_unstable();
    out
}

/// `(I, M) < (I', M')` iff `I <_sl I'`, or `I = I'` and `M >_sl M'`.
pub fn cube_order_cmp(positions: &[u32], a: &CubeCell, b: &CubeCell) -> Ordering {
    shortlex_cmp(
        &positioned(a.ideal, positions),
        &positioned(b.ideal, positions),
    )
    .then_with(|| {
        shortlex_cmp(
            &positioned(b.marks, positions),
            &positioned(a.marks, positions),
        )
    })
}

/// The cube complex `X_P`, with cells numbered in cube order.
#[derive(Clone, Debug)]
pub struct CubeComplex {
    pip: Pip,
    positions: Vec<u32>,
    cells: Vec<CubeCell>,
    index: HashMap<CubeCell, CellId>,
    poset: FacePoset,
}

impl CubeComplex {
    /// `positions[i]` is element `i`'s place in the linear order used by the
    /// cube order; `None` means input order.
    pub fn build(pip: &Pip, positions: Option<Vec<u32>>, budget: u64) -> Result<Self> {
        let positions = positions.unwrap_or_else(|| (0..pip.len() as u32).collect());
        let mut check: Vec<u32> = positions.clone();
        check.sort_unstable();
        if check != (0..pip.len() as u32).collect::<Vec<_>>() {
            return Err(Error::InvalidPip(
                "element order is not a permutation".into(),
            ));
        }
        let ideals = enumerate_ideals(pip, budget)?;
        let mut cells = Vec::new();
        for &ideal in &ideals {
            let top: Vec<usize> = members(pip.maximal(ideal)).collect();
            for k in 0..1u64 << top.len() {
                let marks = top
                    .iter()
                    .enumerate()
                    .filter(|(t, _)| k >> t & 1 == 1)
                    .fold(0, |m, (_, &v)| m | bit(v));
                cells.push(CubeCell { ideal, marks });
            }
        }
        cells.sort_by(|a, b| cube_order_cmp(&positions, a, b));
        let index: HashMap<CubeCell, CellId> =
            cells.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let facets = cells
            .iter()
            .map(|c| {
                let mut fs: Vec<CellId> = c.facets().iter().map(|f| index[f]).collect();
                fs.sort_unstable();
                fs
            })
            .collect();
        let dims = cells.iter().map(CubeCell::dim).collect();
        let poset = FacePoset::new(dims, facets, (0..cells.len()).collect());
        Ok(CubeComplex {
            pip: pip.clone(),
            positions,
            cells,
            index,
            poset,
        })
    }

    pub fn pip(&self) -> &Pip {
        &self.pip
    }

    pub fn positions(&self) -> &[u32] {
        &self.positions
    }

    pub fn poset(&self) -> &FacePoset {
        &self.poset
    }

    pub fn cells(&self) -> &[CubeCell] {
        &self.cells
    }

    pub fn cell(&self, id: CellId) -> CubeCell {
        self.cells[id]
    }

    pub fn id_of(&self, cell: &CubeCell) -> Option<CellId> {
        self.index.get(cell).copied()
    }

    pub fn num_cells(&self) -> usize {
        self.cells.len()
    }

    pub fn compare(&self, a: &CubeCell, b: &CubeCell) -> Ordering {
        cube_order_cmp(&self.positions, a, b)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.poset.euler_characteristic()
    }

    /// `p = max I_max` in the linear order.
    pub fn top_maximal(&self, ideal: u64) -> Option<usize> {
        members(self.pip.maximal(ideal)).max_by_key(|&i| self.positions[i])
    }

    /// Modified Hasse diagram; the arc `σ ≺ τ` across `v` is weighted by the
    /// position of the opposite facet `(J \ v, N \ v)` in cube order.
    pub fn modified_hasse(&self) -> HasseDiagram<CellId> {
        build_modified_hasse(&self.poset, |lower, upper| {
            let tau = self.cells[upper];
            let v = tau.marks & !self.cells[lower].marks;
            self.index[&CubeCell {
                ideal: tau.ideal & !v,
                marks: tau.marks & !v,
            }]
        })
    }

    /// The matching `(I, M \ p) → (I, M)` for `p = max I_max ∈ M`.
    pub fn closed_form_pairs(&self) -> Vec<(CellId, CellId)> {
        let mut pairs: Vec<(CellId, CellId)> = self
            .cells
            .iter()
            .enumerate()
            .filter_map(|(id, c)| {
                let p = bit(self.top_maximal(c.ideal)?);
                (c.marks & p != 0).then(|| {
                    (
                        self.index[&CubeCell {
                            ideal: c.ideal,
                            marks: c.marks & !p,
                        }],
                        id,
                    )
                })
            })
            .collect();
        pairs.sort_unstable();
        pairs
    }
}

/// Greedy gradient on the modified Hasse diagram of `X_P`.
pub fn greedy_cat0_field(complex: &CubeComplex) -> Result<DiscreteGradientField> {
    DiscreteGradientField::from_hasse(complex.poset(), &complex.modified_hasse())
}

/// Each matched arc is strictly lighter than every other arc sharing an
/// endpoint with it.
pub fn matched_arc_weight_check<W: Ord>(
    hasse: &HasseDiagram<W>,
    field: &DiscreteGradientField,
) -> Vec<Violation> {
    let mut by_cell: HashMap<CellId, Vec<usize>> = HashMap::new();
    for (k, a) in hasse.arcs().iter().enumerate() {
        by_cell.entry(a.lower).or_default().push(k);
        by_cell.entry(a.upper).or_default().push(k);
    }
    let mut found = Vec::new();
    for (k, arc) in hasse.arcs().iter().enumerate() {
        if field.up(arc.lower) != Some(arc.upper) {
            continue;
        }
        for cell in [arc.lower, arc.upper] {
            for &other in &by_cell[&cell] {
                let rival = &hasse.arcs()[other];
                if other != k && rival.weight <= arc.weight {
                    found.push(Violation::new(
                        "matched-weight",
                        vec![arc.lower, arc.upper, rival.lower, rival.upper],
                    ));
                }
            }
        }
    }
    found
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CollapseCertificate {
    pub pairs: Vec<(CubeCell, CubeCell)>,
    pub critical: Vec<CubeCell>,
    /// Elementary collapses `(free face, cube)` in the order they apply.
    pub collapse_order: Vec<(CubeCell, CubeCell)>,
}

/// Runs the greedy matching on `X_P` and certifies that it is the closed-form
/// collapse with the single critical vertex `C(∅, ∅)`.
pub fn collapse_cat0(complex: &CubeComplex) -> Result<CollapseCertificate> {
    let field = greedy_cat0_field(complex)?;
    let pairs = field.pairs();
    let expected = complex.closed_form_pairs();
    if pairs != expected {
        let diff = pairs
            .iter()
            .chain(&expected)
            .find(|p| !(pairs.contains(p) && expected.contains(p)));
        let (s, t) = *diff.expect("sets differ");
        return Err(Error::NotCollapsible(format!(
            "greedy matching and the max I_max rule disagree at ({s}, {t})"
        )));
    }
    let critical = field.critical();
    let root = CubeCell { ideal: 0, marks: 0 };
    if critical.len() != 1 || complex.cell(critical[0]) != root {
        return Err(Error::NotCollapsible(format!(
            "{} critical cells",
            critical.len()
        )));
    }
    let order = collapse_order(complex.poset(), &field)?;
    let describe = |ps: &[(CellId, CellId)]| {
        ps.iter()
            .map(|&(s, t)| (complex.cell(s), complex.cell(t)))
            .collect()
    };
    Ok(CollapseCertificate {
        pairs: describe(&pairs),
        critical: vec![root],
        collapse_order: describe(&order),
    })
}

/// Orders the pairs of `field` as elementary collapses: each step removes a
/// pair `(σ, τ)` where `τ` is maximal and `σ` is a free face of `τ` among the
/// remaining cells. Ties go to the pair whose `τ` is highest in cell order.
pub fn collapse_order(
    poset: &FacePoset,
    field: &DiscreteGradientField,
) -> Result<Vec<(CellId, CellId)>> {
    let n = poset.num_cells();
    let mut cofaces: Vec<usize> = (0..n).map(|c| poset.cofacets(c).len()).collect();
    let mut removed = vec![false; n];
    let ready = |c: CellId, cofaces: &[usize]| -> Option<(CellId, CellId)> {
        let (s, t) = match field.up(c) {
            Some(t) => (c, t),
            None => (field.down(c)?, c),
        };
        (cofaces[s] == 1 && cofaces[t] == 0).then_some((s, t))
    };
    let mut heap: BinaryHeap<(usize, CellId, CellId)> = BinaryHeap::new();
    for (s, t) in field.pairs() {
        if ready(s, &cofaces).is_some() {
            heap.push((poset.order(t), s, t));
        }
    }
    let mut out = Vec::new();
    while let Some((_, s, t)) = heap.pop() {
        if removed[s] || ready(s, &cofaces) != Some((s, t)) {
            continue;
        }
        removed[s] = true;
        removed[t] = true;
        out.push((s, t));
        let touched: BTreeSet<CellId> = poset
            .facets(t)
            .iter()
            .chain(poset.facets(s))
            .copied()
            .collect();
        for &f in poset.facets(t) {
            cofaces[f] -= 1;
        }
        for &f in poset.facets(s) {
            cofaces[f] -= 1;
        }
        for f in touched {
            if removed[f] {
                continue;
            }
            if let Some((a, b)) = ready(f, &cofaces) {
                heap.push((poset.order(b), a, b));
            }
        }
    }
    let pairs = field.pairs().len();
    if out.len() != pairs {
        return Err(Error::NotCollapsible(format!(
            "only {} of {pairs} pairs collapse",
            out.len()
        )));
    }
    Ok(out)
}

fn bit(i: usize) -> u64 {
    1u64 << i
}

/// Indices of set bits, ascending.
pub fn members(set: u64) -> impl Iterator<Item = usize> {
    (0..64).filter(move |&i| set >> i & 1 == 1)
}
