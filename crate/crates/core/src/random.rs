//! Seeded generators for test instances.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complex::SimplicialComplex;
use crate::cubical::Pip;
use crate::matching::WeightedMatchGraph;

/// The generator for trial `trial` of a run seeded with `seed`.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// A random complex on `1..=max_vertices` vertices with simplices of
/// dimension at most `max_dim`, valued by distinct reals.
pub fn random_complex<R: Rng>(
    rng: &mut R,
    max_vertices: usize,
    max_dim: usize,
) -> SimplicialComplex<f64> {
    let n = rng.gen_range(1..=max_vertices.max(1));
    let mut ranks: Vec<usize> = (0..n).collect();
    ranks.shuffle(rng);
    // Distinct integer parts keep the valuation injective.
    let values: Vec<(usize, f64)> = ranks
        .iter()
        .enumerate()
        .map(|(v, &r)| (v, r as f64 + rng.gen_range(0.0..0.5)))
        .collect();

    let vertices: Vec<usize> = (0..n).collect();
    let count = rng.gen_range(1..=n.max(2));
    let maximal: Vec<Vec<usize>> = (0..count)
        .map(|_| {
            let size = rng.gen_range(1..=(max_dim + 1).min(n));
            vertices.choose_multiple(rng, size).copied().collect()
        })
        .collect();
    SimplicialComplex::from_scalars(&maximal, values).expect("generated complexes are valid")
}

/// A random graph on `2..=max_vertices` nodes whose adjacent edges never tie.
/// Weights are drawn from a small range, so non-adjacent ties are common.
pub fn random_weighted_graph<R: Rng>(rng: &mut R, max_vertices: usize) -> WeightedMatchGraph<u32> {
    let n = rng.gen_range(2..=max_vertices.max(2));
    let density: f64 = rng.gen_range(0.2..0.7);
    let range = (n as u32) * 2;
    let mut edges: Vec<(usize, usize, u32)> = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if !rng.gen_bool(density) {
                continue;
            }
            let mut w = rng.gen_range(0..range);
            let clash = |w: u32, edges: &[(usize, usize, u32)]| {
                edges
                    .iter()
                    .any(|&(a, b, x)| x == w && (a == u || b == u || a == v || b == v))
            };
            while clash(w, &edges) {
                w += range;
            }
            edges.push((u, v, w));
        }
    }
    WeightedMatchGraph::new(0..n, edges).expect("generated graphs are valid")
}

/// A random valid PIP on `1..=max_elements` elements.
pub fn random_pip<R: Rng>(rng: &mut R, max_elements: usize) -> Pip {
    let n = rng.gen_range(1..=max_elements.max(1));
    let names: Vec<String> = (0..n).map(|i| format!("e{i}")).collect();
    let order_density = rng.gen_range(0.1..0.5);
    let covers: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .filter(|_| rng.gen_bool(order_density))
        .collect();
    let plain = Pip::new(names.clone(), covers.clone(), Vec::new()).expect("indices in range");
    let bit = |i: usize| 1u64 << i;
    let conflict_density = rng.gen_range(0.1..0.5);
    let mut inconsistent = Vec::new();
    for p in 0..n {
        for q in p + 1..n {
            // No common upper bound (which also rules out p ≤ q and q ≤ p).
            let up_p = plain.above(p) | bit(p);
            let up_q = plain.above(q) | bit(q);
            if up_p & up_q == 0 && rng.gen_bool(conflict_density) {
                inconsistent.push((p, q));
            }
        }
    }
    Pip::new(names, covers, inconsistent).expect("indices in range")
}

/// A uniformly random linear order on `n` elements, as positions.
pub fn random_positions<R: Rng>(rng: &mut R, n: usize) -> Vec<u32> {
    let mut positions: Vec<u32> = (0..n as u32).collect();
    positions.shuffle(rng);
    positions
}
