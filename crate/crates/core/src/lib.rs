//! Quantum-walk state transfer on circulant graphs.
//!
//! The continuous-time walk on a graph with adjacency matrix `A` evolves by
//! `H(t) = exp(-itA)`. Circulants over Z_n are diagonalized by the group
//! characters, which makes every entry of `H(t)` an O(n) closed-form sum and
//! lets the interesting questions — when does `|H(t)_{u,v}|` approach 1? —
//! be answered with certificates instead of simulations:
//!
//! - [`graph`]: cycles, gcd graphs, unions, complements, Cartesian products.
//! - [`spectra`]: closed-form and exact (cyclotomic-integer) eigenvalues,
//!   rational-independence certificates, integer dependency witnesses.
//! - [`transfer`]: amplitudes, fidelities, periodicity, fidelity scans.
//! - [`kronecker`]: constructive simultaneous approximation; turns the
//!   existence of good transfer times into explicit multipliers q with
//!   `t = 2 q pi`.
//! - [`classify`]: verdicts (PST / PGST / NoPGST / Unknown) with
//!   machine-checkable certificates, plus transfer-time search.
//! - [`literal`]: the textual graph format shared by CLI and serialization.

pub mod arith;
pub mod classify;
pub mod cyclotomic;
pub mod dd;
pub mod error;
pub mod graph;
pub mod kronecker;
pub mod lattice;
pub mod literal;
pub mod spectra;
pub mod transfer;

pub use classify::{
    classify_cycle, classify_cycle_complement, classify_expr, classify_product, classify_union,
    find_time, Certificate, SearchStrategy, Status, TimeConstruction, TimeSearchReport, Verdict,
};
pub use cyclotomic::{cyclotomic_poly, CyclotomicInteger};
pub use error::{Error, Result};
pub use graph::{
    antipodal_pair, gcd_set, is_gcd_set, CirculantGraph, CompositeFactor, CompositeGraph,
    ConnectionSet, DivisorSet,
};
pub use kronecker::{
    pgst_targets, phase_report, phase_report_at_two_pi_multiple, solve_auto, solve_bruteforce,
    solve_lattice, ApproxProblem, ApproxSolution, PhaseReport,
};
pub use literal::{parse_graph_literal, GraphExpr};
pub use spectra::{
    complement_spectrum, dependency_witness, eigenvalues, exact_eigenvalue, is_integral,
    rational_independence, DependencyWitness, IndependenceCertificate, Spectrum,
};
pub use transfer::{
    amplitude, amplitude_at_two_pi_multiple, complement_amplitude, composite_amplitude,
    fidelity_scan, periodicity_check, product_amplitude, AmplitudeQuery, FidelityCurve,
    TransferResult, WalkKernel,
};
