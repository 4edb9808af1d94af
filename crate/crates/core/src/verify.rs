//! Randomised verification of the gradient, smoothness and collapsibility
//! properties.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::complex::SimplicialComplex;
use crate::cubical::{
    collapse_cat0, greedy_cat0_field, matched_arc_weight_check, CubeComplex, Pip,
};
use crate::error::{Error, Result};
use crate::gradient::{
    compute_gradient, decreasing_flow_check, halo_monotonicity_check, is_gradient,
    modified_flow_check, morse_count_holds, steepest_descent_check, strict_flow_check,
    DiscreteGradientField, Violation,
};
use crate::hasse::HasseVariant;
use crate::matching::{
    enumerate_maximal_alternating_paths, greedy_match, threshold_subgraph, Saturation,
    WeightedMatchGraph,
};
use crate::random::{
    random_complex, random_pip, random_positions, random_weighted_graph, trial_rng,
};
use crate::smoothness::{
    chain_minima_check, check_smooth, faithful_critical_check, smooth_fast_match,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    AlternatingPaths,
    IsGradient,
    DecreasingFlow,
    SteepestDescent,
    HaloWeights,
    MorseCount,
    BarySmooth,
    FastMatch,
    FaithfulCritical,
    StrictFlow,
    ChainMinima,
    ModifiedFlow,
    Cat0,
}

impl Check {
    pub const ALL: [Check; 13] = [
        Check::AlternatingPaths,
        Check::IsGradient,
        Check::DecreasingFlow,
        Check::SteepestDescent,
        Check::HaloWeights,
        Check::MorseCount,
        Check::BarySmooth,
        Check::FastMatch,
        Check::FaithfulCritical,
        Check::StrictFlow,
        Check::ChainMinima,
        Check::ModifiedFlow,
        Check::Cat0,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::AlternatingPaths => "alternating-paths",
            Check::IsGradient => "is-gradient",
            Check::DecreasingFlow => "decreasing-flow",
            Check::SteepestDescent => "steepest-descent",
            Check::HaloWeights => "halo-weights",
            Check::MorseCount => "morse-count",
            Check::BarySmooth => "bary-smooth",
            Check::FastMatch => "fast-match",
            Check::FaithfulCritical => "faithful-critical",
            Check::StrictFlow => "strict-flow",
            Check::ChainMinima => "chain-minima",
            Check::ModifiedFlow => "modified-flow",
            Check::Cat0 => "cat0",
        }
    }

    /// The module whose guarantee the check exercises.
    pub fn module(self) -> &'static str {
        match self {
            Check::AlternatingPaths => "matching",
            Check::IsGradient
            | Check::DecreasingFlow
            | Check::SteepestDescent
            | Check::HaloWeights
            | Check::MorseCount => "gradient",
            Check::BarySmooth
            | Check::FastMatch
            | Check::FaithfulCritical
            | Check::StrictFlow
            | Check::ChainMinima => "smoothness",
            Check::ModifiedFlow => "hasse",
            Check::Cat0 => "cubical",
        }
    }

    /// Checks that only apply to smooth complexes.
    pub fn needs_smooth(self) -> bool {
        matches!(
            self,
            Check::FastMatch | Check::FaithfulCritical | Check::StrictFlow
        )
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown check {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationSuiteConfig {
    pub seed: u64,
    pub trials: u64,
    pub max_vertices: usize,
    pub max_dim: usize,
    pub max_graph_vertices: usize,
    pub max_pip_elements: usize,
    pub checks: BTreeSet<Check>,
    /// Extension-step cap for exhaustive searches within one trial.
    pub search_budget: usize,
}

impl Default for VerificationSuiteConfig {
    fn default() -> Self {
        VerificationSuiteConfig {
            seed: 0,
            trials: 200,
            max_vertices: 25,
            max_dim: 3,
            max_graph_vertices: 12,
            max_pip_elements: 8,
            checks: Check::ALL.into_iter().collect(),
            search_budget: 5_000_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub trial: u64,
    pub seed: u64,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub check: Check,
    pub module: &'static str,
    /// Instances on which the property was evaluated.
    pub evaluated: usize,
    /// Instances excluded by the hypothesis filter or the search budget.
    pub skipped: usize,
    pub failures: usize,
    pub first_counterexample: Option<Counterexample>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub config: VerificationSuiteConfig,
    pub checks: Vec<CheckReport>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckReport::passed)
    }
}

/// Result of evaluating one property on one instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail(String),
    Skipped,
}

impl Outcome {
    fn from_violations(violations: &[Violation]) -> Self {
        match violations.first() {
            None => Outcome::Pass,
            Some(v) => Outcome::Fail(format!(
                "{} violation(s), first {} at cells {:?}",
                violations.len(),
                v.rule,
                v.cells
            )),
        }
    }

    fn from_result(result: Result<Vec<Violation>>) -> Self {
        match result {
            Ok(v) => Outcome::from_violations(&v),
            Err(Error::BudgetExceeded(_)) => Outcome::Skipped,
            Err(e) => Outcome::Fail(e.to_string()),
        }
    }

    fn merge(self, other: Outcome) -> Outcome {
        match (self, other) {
            (Outcome::Fail(a), _) => Outcome::Fail(a),
            (_, Outcome::Fail(b)) => Outcome::Fail(b),
            (Outcome::Pass, _) | (_, Outcome::Pass) => Outcome::Pass,
            _ => Outcome::Skipped,
        }
    }
}

/// Greedy matching properties on one graph: matched edges survive their own
/// threshold, `E_min(P) ⊆ M` and every node of `P` is saturated at or above
/// the weight of `E_min(P)`, for every maximal alternating path `P`.
pub fn check_alternating_paths(graph: &WeightedMatchGraph<u32>, budget: usize) -> Outcome {
    let matching = match greedy_match(graph) {
        Ok(m) => m,
        Err(e) => return Outcome::Fail(e.to_string()),
    };
    for (id, e) in graph.edges().iter().enumerate() {
        let sub = threshold_subgraph(graph, &matching, &Saturation::Finite(e.weight));
        if sub.find_edge(e.u, e.v).is_some() && !matching.contains(id) {
            return Outcome::Fail(format!(
                "edge {{{}, {}}} survives its threshold but is unmatched",
                e.u, e.v
            ));
        }
    }
    let paths =
        match enumerate_maximal_alternating_paths(graph, &matching, graph.nodes().len(), budget) {
            Ok(p) => p,
            Err(Error::BudgetExceeded(_)) => return Outcome::Skipped,
            Err(e) => return Outcome::Fail(e.to_string()),
        };
    for path in &paths {
        let e_min = path.e_min(graph);
        if let Some(&bad) = e_min.iter().find(|&&e| !matching.contains(e)) {
            return Outcome::Fail(format!(
                "path {:?}: minimal edge {bad} unmatched",
                path.nodes
            ));
        }
        let w = &graph.edge(e_min[0]).weight;
        if path
            .nodes
            .iter()
            .any(|&n| matching.saturation(graph, n) < Saturation::Finite(w))
        {
            return Outcome::Fail(format!(
                "path {:?}: node saturated below its minimal edge",
                path.nodes
            ));
        }
    }
    Outcome::Pass
}

/// Greedy gradient properties on one complex (plain Hasse diagram).
pub fn check_gradient_properties(
    complex: &SimplicialComplex<f64>,
    field: &DiscreteGradientField,
    checks: &BTreeSet<Check>,
) -> Vec<(Check, Outcome)> {
    let poset = complex.poset();
    let mut out = Vec::new();
    if checks.contains(&Check::IsGradient) {
        let ok = is_gradient(poset, field);
        out.push((
            Check::IsGradient,
            if ok {
                Outcome::Pass
            } else {
                Outcome::Fail("closed V-path".into())
            },
        ));
    }
    if checks.contains(&Check::DecreasingFlow) {
        out.push((
            Check::DecreasingFlow,
            Outcome::from_result(decreasing_flow_check(poset, field)),
        ));
    }
    if checks.contains(&Check::SteepestDescent) {
        out.push((
            Check::SteepestDescent,
            Outcome::from_violations(&steepest_descent_check(complex, field)),
        ));
    }
    if checks.contains(&Check::HaloWeights) {
        out.push((
            Check::HaloWeights,
            Outcome::from_violations(&halo_monotonicity_check(complex)),
        ));
    }
    if checks.contains(&Check::MorseCount) {
        let ok = morse_count_holds(poset, field);
        out.push((
            Check::MorseCount,
            if ok {
                Outcome::Pass
            } else {
                Outcome::Fail("alternating sums differ".into())
            },
        ));
    }
    out
}

/// Smooth-only properties; the caller guarantees `complex` is smooth.
pub fn check_smooth_properties(
    complex: &SimplicialComplex<f64>,
    greedy: &DiscreteGradientField,
    checks: &BTreeSet<Check>,
) -> Vec<(Check, Outcome)> {
    let mut out = Vec::new();
    if checks.contains(&Check::FastMatch) {
        let outcome = match smooth_fast_match(complex) {
            Ok(fast) if fast == *greedy => Outcome::Pass,
            Ok(fast) => {
                let differ = fast
                    .pairs()
                    .into_iter()
                    .filter(|p| !greedy.pairs().contains(p))
                    .count();
                Outcome::Fail(format!(
                    "fast matcher differs from greedy on {differ} pair(s)"
                ))
            }
            Err(e) => Outcome::Fail(e.to_string()),
        };
        out.push((Check::FastMatch, outcome));
    }
    if checks.contains(&Check::FaithfulCritical) {
        out.push((
            Check::FaithfulCritical,
            Outcome::from_violations(&faithful_critical_check(complex, greedy)),
        ));
    }
    if checks.contains(&Check::StrictFlow) {
        out.push((
            Check::StrictFlow,
            Outcome::from_result(strict_flow_check(complex.poset(), greedy)),
        ));
    }
    out
}

/// Modified Hasse diagram on a simplicial complex: acyclic, and every V-path
/// step satisfies `σ_{i+1} < τ_i < σ_i`.
pub fn check_modified_flow(complex: &SimplicialComplex<f64>) -> Outcome {
    let field = match compute_gradient(complex, HasseVariant::Modified) {
        Ok(f) => f,
        Err(e) => return Outcome::Fail(e.to_string()),
    };
    if !is_gradient(complex.poset(), &field) {
        return Outcome::Fail("closed V-path".into());
    }
    Outcome::from_violations(&modified_flow_check(complex.poset(), &field, true))
}

/// Collapsibility of `X_P`: certificate, Euler characteristic 1, matched
/// arcs lighter than all rivals, and decreasing V-paths.
pub fn check_cat0(pip: &Pip, positions: Option<Vec<u32>>) -> Outcome {
    let complex = match CubeComplex::build(pip, positions, 1 << 22) {
        Ok(c) => c,
        Err(Error::BudgetExceeded(_)) => return Outcome::Skipped,
        Err(e) => return Outcome::Fail(e.to_string()),
    };
    if complex.euler_characteristic() != 1 {
        return Outcome::Fail(format!(
            "Euler characteristic {}",
            complex.euler_characteristic()
        ));
    }
    if let Err(e) = collapse_cat0(&complex) {
        return Outcome::Fail(e.to_string());
    }
    let field = match greedy_cat0_field(&complex) {
        Ok(f) => f,
        Err(e) => return Outcome::Fail(e.to_string()),
    };
    let mut violations = matched_arc_weight_check(&complex.modified_hasse(), &field);
    violations.extend(modified_flow_check(complex.poset(), &field, false));
    Outcome::from_violations(&violations)
}

fn complex_trial(config: &VerificationSuiteConfig, trial: u64) -> Vec<(Check, Outcome)> {
    let checks = &config.checks;
    let mut rng = trial_rng(config.seed, 3 * trial);
    let complex = random_complex(&mut rng, config.max_vertices, config.max_dim);
    let mut out = Vec::new();

    let greedy = match compute_gradient(&complex, HasseVariant::Plain) {
        Ok(f) => f,
        Err(e) => {
            return checks
                .iter()
                .map(|&c| (c, Outcome::Fail(e.to_string())))
                .collect();
        }
    };
    out.extend(check_gradient_properties(&complex, &greedy, checks));

    if checks.contains(&Check::ModifiedFlow) {
        out.push((Check::ModifiedFlow, check_modified_flow(&complex)));
    }

    let wants_subdivision = [Check::BarySmooth, Check::ChainMinima]
        .iter()
        .any(|c| checks.contains(c))
        || checks.iter().any(|c| c.needs_smooth());
    if !wants_subdivision {
        return out;
    }
    // Smooth-only checks run on the complex itself when it is smooth, and
    // always on its subdivision.
    let smooth_checks: BTreeSet<Check> = checks
        .iter()
        .copied()
        .filter(|c| c.needs_smooth())
        .collect();
    let mut smooth_outcomes: Vec<(Check, Outcome)> = smooth_checks
        .iter()
        .map(|&c| (c, Outcome::Skipped))
        .collect();
    let mut absorb = |found: Vec<(Check, Outcome)>| {
        for (check, outcome) in found {
            let slot = smooth_outcomes
                .iter_mut()
                .find(|(c, _)| *c == check)
                .expect("requested check");
            slot.1 = std::mem::replace(&mut slot.1, Outcome::Skipped).merge(outcome);
        }
    };
    if !smooth_checks.is_empty() && check_smooth(&complex).smooth {
        absorb(check_smooth_properties(&complex, &greedy, &smooth_checks));
    }

    let sd = complex.barycentric_subdivide();
    let sd_smooth = check_smooth(&sd.complex);
    if checks.contains(&Check::BarySmooth) {
        let outcome = if sd_smooth.smooth {
            Outcome::Pass
        } else {
            Outcome::Fail(format!(
                "{} smoothness witnesses, first {:?}",
                sd_smooth.witnesses.len(),
                sd_smooth.witnesses[0]
            ))
        };
        out.push((Check::BarySmooth, outcome));
    }
    if checks.contains(&Check::ChainMinima) {
        out.push((
            Check::ChainMinima,
            Outcome::from_violations(&chain_minima_check(&complex, &sd)),
        ));
    }
    if !smooth_checks.is_empty() && sd_smooth.smooth {
        match compute_gradient(&sd.complex, HasseVariant::Plain) {
            Ok(field) => absorb(check_smooth_properties(&sd.complex, &field, &smooth_checks)),
            Err(e) => absorb(
                smooth_checks
                    .iter()
                    .map(|&c| (c, Outcome::Fail(e.to_string())))
                    .collect(),
            ),
        }
    }
    out.extend(smooth_outcomes);
    out
}

fn run_trial(config: &VerificationSuiteConfig, trial: u64) -> Vec<(Check, Outcome)> {
    let checks = &config.checks;
    let mut out = Vec::new();
    let complex_checks = checks
        .iter()
        .any(|c| !matches!(c, Check::AlternatingPaths | Check::Cat0));
    if complex_checks {
        out.extend(complex_trial(config, trial));
    }
    if checks.contains(&Check::AlternatingPaths) {
        let graph = random_weighted_graph(
            &mut trial_rng(config.seed, 3 * trial + 1),
            config.max_graph_vertices,
        );
        out.push((
            Check::AlternatingPaths,
            check_alternating_paths(&graph, config.search_budget),
        ));
    }
    if checks.contains(&Check::Cat0) {
        let mut rng = trial_rng(config.seed, 3 * trial + 2);
        let pip = random_pip(&mut rng, config.max_pip_elements);
        // Odd trials use a random linear order of the elements.
        let positions = (trial % 2 == 1).then(|| random_positions(&mut rng, pip.len()));
        out.push((Check::Cat0, check_cat0(&pip, positions)));
    }
    out
}

/// Runs every requested check on `config.trials` seeded instances.
pub fn run_verification_suite(config: &VerificationSuiteConfig) -> SuiteReport {
    let per_trial: Vec<Vec<(Check, Outcome)>> = (0..config.trials)
        .into_par_iter()
        .map(|t| run_trial(config, t))
        .collect();
    let checks = config
        .checks
        .iter()
        .map(|&check| {
            let mut report = CheckReport {
                check,
                module: check.module(),
                evaluated: 0,
                skipped: 0,
                failures: 0,
                first_counterexample: None,
            };
            for (trial, outcomes) in per_trial.iter().enumerate() {
                for (_, outcome) in outcomes.iter().filter(|(c, _)| *c == check) {
                    match outcome {
                        Outcome::Pass => report.evaluated += 1,
                        Outcome::Skipped => report.skipped += 1,
                        Outcome::Fail(detail) => {
                            report.evaluated += 1;
                            report.failures += 1;
                            report
                                .first_counterexample
                                .get_or_insert_with(|| Counterexample {
                                    trial: trial as u64,
                                    seed: config.seed,
                                    detail: detail.clone(),
                                });
                        }
                    }
                }
            }
            report
        })
        .collect();
    SuiteReport {
        config: config.clone(),
        checks,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn check_names_roundtrip() {
        for c in Check::ALL {
            assert_eq!(c.name().parse::<Check>().unwrap(), c);
        }
        assert!("nope".parse::<Check>().is_err());
    }

    #[test]
    fn small_suite_passes() {
        let config = VerificationSuiteConfig {
            trials: 12,
            max_vertices: 8,
            max_dim: 2,
            max_graph_vertices: 8,
            max_pip_elements: 5,
            ..Default::default()
        };
        let report = run_verification_suite(&config);
        for c in &report.checks {
            assert!(c.passed(), "{c:?}");
            assert!(c.evaluated > 0, "{c:?}");
        }
    }

    #[test]
    fn same_seed_same_report() {
        let config = VerificationSuiteConfig {
            trials: 5,
            max_vertices: 7,
            max_pip_elements: 4,
            ..Default::default()
        };
        assert_eq!(
            run_verification_suite(&config),
            run_verification_suite(&config)
        );
    }
}
