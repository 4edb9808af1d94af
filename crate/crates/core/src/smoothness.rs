//! Discrete smoothness, the linear-time matcher it enables, and the checks
//! around critical cells of smooth complexes.

use rayon::prelude::*;
use serde::Serialize;

use crate::complex::{Simplex, SimplicialComplex, Subdivision};
use crate::error::{Error, Result};
use crate::gradient::{halo_min, DiscreteGradientField, Violation};
use crate::poset::CellId;

/// A cell `σ` with `h = h_f(σ) ∈ σ` and a cofacet `τ` where
/// `h_f(τ \ h) ≠ h`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SmoothWitness {
    pub sigma: Vec<usize>,
    pub tau: Vec<usize>,
    pub h_sigma: usize,
    pub h_rest: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SmoothnessReport {
    pub smooth: bool,
    pub witnesses: Vec<SmoothWitness>,
}

pub fn check_smooth<T: Sync>(complex: &SimplicialComplex<T>) -> SmoothnessReport {
    let witnesses: Vec<SmoothWitness> = (0..complex.num_simplices())
        .into_par_iter()
        .flat_map_iter(|cell| {
            let sigma = complex.simplex(cell);
            let h = halo_min(complex, cell);
            let mut found = Vec::new();
            if !sigma.contains(h) {
                return found;
            }
            for &t in complex.poset().cofacets(cell) {
                let tau = complex.simplex(t);
                let rest = complex
                    .id_of(&tau.without(h).expect("cofacet has two vertices"))
                    .expect("closed");
                let h_rest = halo_min(complex, rest);
                if h_rest != h {
                    found.push(SmoothWitness {
                        sigma: sigma.vertices().to_vec(),
                        tau: tau.vertices().to_vec(),
                        h_sigma: h,
                        h_rest,
                    });
                }
            }
            found
        })
        .collect();
    SmoothnessReport {
        smooth: witnesses.is_empty(),
        witnesses,
    }
}

/// Pairs `σ → σ ∪ h_f(σ)` whenever `h_f(σ) ∉ σ`. Refuses non-smooth input.
pub fn smooth_fast_match<T: Sync>(complex: &SimplicialComplex<T>) -> Result<DiscreteGradientField> {
    let report = check_smooth(complex);
    if !report.smooth {
        return Err(Error::NotSmooth(report.witnesses.len()));
    }
    let pairs: Vec<(CellId, CellId)> = (0..complex.num_simplices())
        .into_par_iter()
        .filter_map(|cell| {
            let sigma = complex.simplex(cell);
            let h = halo_min(complex, cell);
            (!sigma.contains(h)).then(|| {
                (
                    cell,
                    complex
                        .id_of(&sigma.with(h))
                        .expect("halo vertex spans a cofacet"),
                )
            })
        })
        .collect();
    DiscreteGradientField::from_pairs(complex.poset(), pairs)
}

/// The predicate `h_f(σ) ∈ σ ∧ h_f(σ \ h_f(σ)) ∉ σ`; the second clause is
/// vacuous for vertices.
pub fn critical_predicate<T>(complex: &SimplicialComplex<T>, cell: CellId) -> bool {
    let sigma = complex.simplex(cell);
    let h = halo_min(complex, cell);
    if !sigma.contains(h) {
        return false;
    }
    match sigma.without(h) {
        None => true,
        Some(rest) => !sigma.contains(halo_min(complex, complex.id_of(&rest).expect("closed"))),
    }
}

/// On a smooth complex: facets of critical cells are matched upward,
/// `τ \ h_f(σ) → τ` for every cofacet `τ` of a critical `σ`, and a cell is
/// critical exactly when [`critical_predicate`] holds.
pub fn faithful_critical_check<T: Sync>(
    complex: &SimplicialComplex<T>,
    field: &DiscreteGradientField,
) -> Vec<Violation> {
    let poset = complex.poset();
    (0..complex.num_simplices())
        .into_par_iter()
        .flat_map_iter(|cell| {
            let mut found = Vec::new();
            let critical = field.is_critical(cell);
            if critical != critical_predicate(complex, cell) {
                found.push(Violation::new("critical-biconditional", vec![cell]));
            }
            if !critical {
                return found;
            }
            for &rho in poset.facets(cell) {
                if field.up(rho).is_none() {
                    found.push(Violation::new("critical-above", vec![cell, rho]));
                }
            }
            let h = halo_min(complex, cell);
            for &tau in poset.cofacets(cell) {
                let rest = complex
                    .simplex(tau)
                    .without(h)
                    .and_then(|r| complex.id_of(&r));
                match rest {
                    Some(r) if field.up(r) == Some(tau) => {}
                    _ => found.push(Violation::new("critical-below", vec![cell, tau])),
                }
            }
            found
        })
        .collect()
}

/// For every chain `σ_0 ⊂ … ⊂ σ_p` of the subdivision, the lowest cell
/// `ρ` with `σ_{i-1} ⊂ ρ ⊆ σ_i` is `σ_{i-1} ∪ min(σ_i \ σ_{i-1})`.
pub fn chain_minima_check<T: Sync>(
    original: &SimplicialComplex<T>,
    subdivision: &Subdivision<T>,
) -> Vec<Violation> {
    let sd = &subdivision.complex;
    (0..sd.num_simplices())
        .into_par_iter()
        .flat_map_iter(|chain_id| {
            let mut chain: Vec<CellId> = sd.simplex(chain_id).vertices().to_vec();
            chain.sort_by_key(|&c| original.poset().dim(c));
            let mut found = Vec::new();
            let mut below: Vec<usize> = Vec::new();
            for &upper in &chain {
                let top = original.simplex(upper).vertices();
                let added: Vec<usize> =
                    top.iter().copied().filter(|v| !below.contains(v)).collect();
                let lowest_added = *added
                    .iter()
                    .min_by_key(|&&v| original.rank(v))
                    .expect("chain is strict");
                let mut expected = below.clone();
                expected.push(lowest_added);
                let expected = original
                    .id_of(&Simplex::new(expected).expect("distinct"))
                    .expect("face");

                let brute = (1u32..(1 << added.len()))
                    .map(|mask| {
                        let mut vs = below.clone();
                        vs.extend(
                            added
                                .iter()
                                .enumerate()
                                .filter(|(k, _)| mask >> k & 1 == 1)
                                .map(|(_, &v)| v),
                        );
                        original
                            .id_of(&Simplex::new(vs).expect("distinct"))
                            .expect("face")
                    })
                    .min_by_key(|&rho| sd.rank(rho))
                    .expect("non-empty interval");
                if brute != expected {
                    found.push(Violation::new("chain-minima", vec![chain_id, upper]));
                }
                below = top.to_vec();
            }
            found
        })
        .collect()
}
