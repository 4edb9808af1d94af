//! Discrete Morse theory by greedy matching.
//!
//! Builds discrete gradient fields on simplicial, polyhedral and CAT(0)
//! cube complexes by running a greedy matching on a weighted Hasse diagram,
//! and checks the resulting fields against the vertex valuation they came
//! from.
//!
//! ```
//! use greedy_morse::{compute_gradient, ComplexF64, HasseVariant};
//!
//! let path = ComplexF64::from_scalars(&[vec![0, 1], vec![1, 2]], [(0, 1.0), (1, 2.0), (2, 3.0)]).unwrap();
//! let field = compute_gradient(&path, HasseVariant::Plain).unwrap();
//! assert_eq!(field.critical().len(), 1);
//! ```

pub mod complex;
pub mod cubical;
pub mod error;
pub mod gradient;
pub mod hasse;
pub mod io;
pub mod matching;
pub mod ordering;
pub mod polyhedral;
pub mod poset;
pub mod random;
pub mod scalar;
pub mod smoothness;
pub mod verify;

pub use complex::{Simplex, SimplicialComplex, Subdivision};
pub use cubical::{
    collapse_cat0, cube_order_cmp, enumerate_ideals, greedy_cat0_field, validate_pip,
    CollapseCertificate, CubeCell, CubeComplex, Pip, PipViolation,
};
pub use error::{Error, Result};
pub use gradient::{
    compute_gradient, gain_loss_sets, halo, is_gradient, steepest_descent_check, trace_vpaths,
    DiscreteGradientField, Halo, Partner, TraceMode, VPath, Violation,
};
pub use hasse::{build_hasse, build_modified_hasse, HasseDiagram, HasseVariant};
pub use matching::{
    enumerate_maximal_alternating_paths, greedy_match, threshold_subgraph, AlternatingPath,
    Matching, Saturation, WeightedMatchGraph,
};
pub use ordering::{lex_compare, shortlex_compare, OrderedValue, ValueSet};
pub use poset::{CellId, FacePoset};
pub use scalar::Scalar;
pub use smoothness::{check_smooth, faithful_critical_check, smooth_fast_match, SmoothnessReport};
pub use verify::{run_verification_suite, Check, SuiteReport, VerificationSuiteConfig};

/// Exact rationals.
pub type Rational = num_rational::Ratio<i64>;

pub type ComplexF64 = SimplicialComplex<f64>;
pub type ComplexF32 = SimplicialComplex<f32>;
pub type ComplexRational = SimplicialComplex<Rational>;

pub type ValueF64 = OrderedValue<f64>;
pub type ValueRational = OrderedValue<Rational>;
