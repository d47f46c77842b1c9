//! Exact computer algebra for skein-valued cluster transformations.
//!
//! The crate has four layers:
//! - [`coeff`]: Laurent polynomials in s = q^{1/2} and a over Z, and the
//!   localization `RationalSA` inverting the q-numbers and skein eigenvalues;
//! - [`qseries`] / [`torus`]: the q-dilogarithm, its difference equation, the
//!   pentagon identity, and quantum-torus arithmetic truncated along a grade
//!   functional;
//! - [`graph`]: cubic planar graphs as combinatorial maps with homology
//!   labels, edge-flip mutation, admissibility, and the five-term paths;
//! - [`annulus`]: the positive solid-torus skein in the partition basis and
//!   the degree-by-degree solution of (○ - m - γl)·E = 0.

pub mod annulus;
pub mod coeff;
pub mod graph;
pub mod qseries;
pub mod torus;

pub use annulus::{
    c_lambda_mu, calibrate, gz_nonvanishing, lk_specialize, longitude_apply, meridian_eigenvalue,
    solve_e, unknot_value, Calibration, Partition, SkeinError, SkeinSeries,
};
pub use coeff::{parse_scalar_expr, Coeff, CoeffError, LaurentSA, RationalSA};
pub use graph::{
    admissible_check, bigon_annihilation_check, bigon_operator, composable_check,
    five_term_check, five_term_paths, five_term_sides, graph_algebra, intersection_form,
    necklace, standard_weights, CombinatorialMap, GraphError, LabeledGraph, MutationStep, Sign,
};
pub use qseries::{check_difference_eq, qdilog_coeffs, QSeries1};
pub use torus::{
    cluster_conjugate, dilog_qt, pentagon_check, pentagon_sides, wavefunction, GradeFunctional,
    QTElement, SkewLattice, TorusAlgebra, TorusError,
};

/// Quantum-torus element over the localized coefficient ring (the common case).
pub type TorusElem = QTElement<RationalSA>;
/// Quantum-torus element with plain Laurent coefficients.
pub type TorusPoly = QTElement<LaurentSA>;
