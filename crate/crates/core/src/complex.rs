//! Finite simplicial complexes with an injective vertex valuation, and their
//! barycentric subdivisions.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::ordering::{LexKey, OrderedValue, ValueSet};
use crate::poset::{CellId, FacePoset};
use crate::scalar::Scalar;

/// A non-empty set of vertex ids, stored sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex(Vec<usize>);

impl Simplex {
    pub fn new(mut vertices: Vec<usize>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::EmptySimplex);
        }
        vertices.sort_unstable();
        if vertices.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::RepeatedVertex(vertices));
        }
        Ok(Simplex(vertices))
    }

    pub fn vertex(v: usize) -> Self {
        Simplex(vec![v])
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    /// `self \ {v}`; `None` if that would be empty.
    pub fn without(&self, v: usize) -> Option<Simplex> {
        if self.0.len() == 1 {
            return None;
        }
        Some(Simplex(
            self.0.iter().copied().filter(|&x| x != v).collect(),
        ))
    }

    /// `self ∪ {v}`.
    pub fn with(&self, v: usize) -> Simplex {
        let mut vs = self.0.clone();
        if let Err(pos) = vs.binary_search(&v) {
            vs.insert(pos, v);
        }
        Simplex(vs)
    }

    pub fn is_subset(&self, other: &Simplex) -> bool {
        self.0.iter().all(|v| other.contains(*v))
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, v) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

/// A finite simplicial complex `Δ` with an injective valuation `f` on its
/// vertices.
///
/// Cells are numbered by `(dimension, vertex list)`; the face poset carries
/// the lex order of `f(σ) = {f(v) : v ∈ σ}` as its cell order.
#[derive(Clone, Debug)]
pub struct SimplicialComplex<T> {
    simplices: Vec<Simplex>,
    index: HashMap<Simplex, CellId>,
    valuation: BTreeMap<usize, OrderedValue<T>>,
    rank: HashMap<usize, u32>,
    by_rank: Vec<usize>,
    keys: Vec<LexKey>,
    poset: FacePoset,
}

impl<T: Scalar> SimplicialComplex<T> {
    /// Closes `maximal_simplices` under taking non-empty faces.
    ///
    /// Every vertex of the valuation becomes a vertex of the complex, so
    /// isolated vertices may be given through the valuation alone.
    pub fn build(
        maximal_simplices: &[Vec<usize>],
        valuation: BTreeMap<usize, OrderedValue<T>>,
    ) -> Result<Self> {
        let mut generators = Vec::with_capacity(maximal_simplices.len());
        for vs in maximal_simplices {
            let s = Simplex::new(vs.clone())?;
            if let Some(&v) = s.vertices().iter().find(|v| !valuation.contains_key(v)) {
                return Err(Error::UnknownVertex(v));
            }
            generators.push(s);
        }
        let (rank, by_rank) = rank_valuation(&valuation)?;

        let mut all: HashSet<Simplex> = valuation.keys().map(|&v| Simplex::vertex(v)).collect();
        for g in &generators {
            insert_faces(g, &mut all);
        }
        let mut simplices: Vec<Simplex> = all.into_iter().collect();
        simplices.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.cmp(b)));
        let index: HashMap<Simplex, CellId> = simplices
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, s)| (s, i))
            .collect();

        let facets: Vec<Vec<CellId>> = simplices
            .iter()
            .map(|s| {
                if s.dim() == 0 {
                    return Vec::new();
                }
                let mut fs: Vec<CellId> = s
                    .vertices()
                    .iter()
                    .map(|&v| index[&s.without(v).expect("dim > 0")])
                    .collect();
                fs.sort_unstable();
                fs
            })
            .collect();
        let keys: Vec<LexKey> = simplices
            .iter()
            .map(|s| LexKey::new(s.vertices().iter().map(|v| rank[v]).collect()))
            .collect();
        let mut sorted: Vec<CellId> = (0..simplices.len()).collect();
        sorted.sort_by(|&a, &b| keys[a].cmp(&keys[b]));
        let mut order = vec![0; simplices.len()];
        for (pos, &c) in sorted.iter().enumerate() {
            order[c] = pos;
        }
        let dims = simplices.iter().map(Simplex::dim).collect();
        let poset = FacePoset::new(dims, facets, order);

        Ok(SimplicialComplex {
            simplices,
            index,
            valuation,
            rank,
            by_rank,
            keys,
            poset,
        })
    }

    /// Convenience constructor from scalar vertex values.
    pub fn from_scalars(
        maximal_simplices: &[Vec<usize>],
        values: impl IntoIterator<Item = (usize, T)>,
    ) -> Result<Self> {
        let valuation = values
            .into_iter()
            .map(|(v, x)| (v, OrderedValue::Scalar(x)))
            .collect();
        Self::build(maximal_simplices, valuation)
    }

    /// Facets and cofacets of `sigma`.
    pub fn facets_and_cofacets(&self, sigma: &Simplex) -> Result<(Vec<Simplex>, Vec<Simplex>)> {
        let id = self.require(sigma)?;
        let facets = self
            .poset
            .facets(id)
            .iter()
            .map(|&c| self.simplices[c].clone())
            .collect();
        let cofacets = self
            .poset
            .cofacets(id)
            .iter()
            .map(|&c| self.simplices[c].clone())
            .collect();
        Ok((facets, cofacets))
    }

    /// Barycentric subdivision with the induced valuation `b(σ) ↦ f(σ)`.
    ///
    /// Vertex `i` of the result is the barycenter of `self.simplex(i)`.
    pub fn barycentric_subdivide(&self) -> Subdivision<T> {
        let valuation: BTreeMap<usize, OrderedValue<T>> = self
            .simplices
            .iter()
            .enumerate()
            .map(|(id, s)| {
                let values: Vec<OrderedValue<T>> = s
                    .vertices()
                    .iter()
                    .map(|v| self.valuation[v].clone())
                    .collect();
                let set = ValueSet::new(values).expect("valuation was validated");
                (id, OrderedValue::Set(set))
            })
            .collect();

        // Maximal chains: one per ordering of the vertices of each maximal
        // simplex.
        let mut chains = Vec::new();
        for (id, s) in self.simplices.iter().enumerate() {
            if !self.poset.cofacets(id).is_empty() {
                continue;
            }
            for_each_permutation(s.vertices(), |perm| {
                let chain = (1..=perm.len())
                    .map(|k| {
                        let face = Simplex::new(perm[..k].to_vec()).expect("non-empty prefix");
                        self.index[&face]
                    })
                    .collect::<Vec<_>>();
                chains.push(chain);
            });
        }
        let complex = SimplicialComplex::build(&chains, valuation)
            .expect("subdivision of a valid complex is valid");
        Subdivision {
            complex,
            barycenter_of: self.simplices.clone(),
        }
    }
}

impl<T> SimplicialComplex<T> {
    pub fn poset(&self) -> &FacePoset {
        &self.poset
    }

    pub fn num_simplices(&self) -> usize {
        self.simplices.len()
    }

    pub fn simplices(&self) -> &[Simplex] {
        &self.simplices
    }

    pub fn simplex(&self, id: CellId) -> &Simplex {
        &self.simplices[id]
    }

    pub fn id_of(&self, sigma: &Simplex) -> Option<CellId> {
        self.index.get(sigma).copied()
    }

    pub fn require(&self, sigma: &Simplex) -> Result<CellId> {
        self.id_of(sigma)
            .ok_or_else(|| Error::NotInComplex(sigma.vertices().to_vec()))
    }

    pub fn contains(&self, sigma: &Simplex) -> bool {
        self.index.contains_key(sigma)
    }

    /// Dimension of the complex (0 for a single vertex).
    pub fn dim(&self) -> usize {
        self.poset.max_dim().unwrap_or(0)
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = usize> + '_ {
        self.valuation.keys().copied()
    }

    pub fn valuation(&self) -> &BTreeMap<usize, OrderedValue<T>> {
        &self.valuation
    }

    pub fn value(&self, v: usize) -> Option<&OrderedValue<T>> {
        self.valuation.get(&v)
    }

    /// Rank of `f(v)` among all vertex values (0 = smallest).
    pub fn rank(&self, v: usize) -> u32 {
        self.rank[&v]
    }

    pub fn vertex_of_rank(&self, r: u32) -> usize {
        self.by_rank[r as usize]
    }

    /// Lex key of `f(σ)`.
    pub fn key(&self, id: CellId) -> &LexKey {
        &self.keys[id]
    }

    /// Compares `f(σ)` and `f(τ)` in lex order.
    pub fn cmp_cells(&self, a: CellId, b: CellId) -> Ordering {
        self.poset.order(a).cmp(&self.poset.order(b))
    }

    /// Maximal simplices, in cell order.
    pub fn maximal_simplices(&self) -> Vec<&Simplex> {
        (0..self.simplices.len())
            .filter(|&c| self.poset.cofacets(c).is_empty())
            .map(|c| &self.simplices[c])
            .collect()
    }

    pub fn counts_by_dim(&self) -> Vec<usize> {
        self.poset.counts_by_dim()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.poset.euler_characteristic()
    }
}

/// A barycentric subdivision and the simplex each new vertex stands for.
#[derive(Clone, Debug)]
pub struct Subdivision<T> {
    pub complex: SimplicialComplex<T>,
    pub barycenter_of: Vec<Simplex>,
}

fn rank_valuation<T: Scalar>(
    valuation: &BTreeMap<usize, OrderedValue<T>>,
) -> Result<(HashMap<usize, u32>, Vec<usize>)> {
    let mut depth = None;
    for value in valuation.values() {
        let d = value.depth()?;
        if *depth.get_or_insert(d) != d {
            return Err(Error::IncomparableDepth);
        }
    }
    let mut by_rank: Vec<usize> = valuation.keys().copied().collect();
    // Depths are uniform and NaN-free, so comparisons cannot fail here.
    by_rank.sort_by(|a, b| {
        valuation[a]
            .try_cmp(&valuation[b])
            .unwrap_or(Ordering::Equal)
    });
    for w in by_rank.windows(2) {
        if valuation[&w[0]].try_cmp(&valuation[&w[1]])? == Ordering::Equal {
            return Err(Error::DuplicateValue(w[0].min(w[1]), w[0].max(w[1])));
        }
    }
    let rank = by_rank
        .iter()
        .enumerate()
        .map(|(r, &v)| (v, r as u32))
        .collect();
    Ok((rank, by_rank))
}

fn insert_faces(s: &Simplex, out: &mut HashSet<Simplex>) {
    if out.contains(s) {
        return;
    }
    let vs = s.vertices();
    assert!(
        vs.len() < 32,
        "simplex of dimension {} is too large",
        vs.len() - 1
    );
    for mask in 1u32..(1u32 << vs.len()) {
        let face: Vec<usize> = vs
            .iter()
            .enumerate()
            .filter(|(k, _)| mask >> k & 1 == 1)
            .map(|(_, &v)| v)
            .collect();
        out.insert(Simplex(face));
    }
}

fn for_each_permutation(items: &[usize], mut visit: impl FnMut(&[usize])) {
    fn go(prefix: &mut Vec<usize>, rest: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
        if rest.is_empty() {
            visit(prefix);
            return;
        }
        for k in 0..rest.len() {
            let x = rest.remove(k);
            prefix.push(x);
            go(prefix, rest, visit);
            prefix.pop();
            rest.insert(k, x);
        }
    }
    go(&mut Vec::new(), &mut items.to_vec(), &mut visit);
}
