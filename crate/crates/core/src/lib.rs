//! # entropic
//!
//! Classical, tomographic and quantum entropic inequalities for composite
//! systems and for single qudits split into artificial subsystems.
//!
//! A state of dimension `N = n·m` can be read as a bipartite object through
//! the index map `s ↔ (j, k)`, whether or not it describes two physical
//! subsystems. The crate evaluates Shannon, Tsallis and von Neumann
//! entropies on such splittings and checks:
//!
//! | Check | Statement |
//! |-------|-----------|
//! | [`check_classical_subadditivity`] | `H_q(A,B) ≤ H_q(A) + H_q(B)` for a joint table |
//! | [`check_quantum_subadditivity`] | `S_q(ρ) ≤ S_q(R1) + S_q(R2)` for block marginals |
//! | [`check_araki_lieb`] | `\|S(R1) − S(R2)\| ≤ S(ρ)` |
//! | [`check_tomographic_subadditivity`] | subadditivity of the tomogram `w(s, u)` |
//! | [`information_i`] | `I(u) = S(R1(u)) + S(R2(u)) − S(ρ) ≥ 0` |
//!
//! [`minimize_sigma`] searches the unitary group for the smallest marginal
//! entropy sum `Σ(u)`.
//!
//! Entropies are in nats. Random states and unitaries are reproducible from
//! a 64-bit seed; see [`random::stream_seed`] for the sub-stream rule.

#![forbid(unsafe_code)]

pub mod classical;
pub mod error;
pub mod inequalities;
pub mod linalg;
pub mod optimizer;
pub mod random;
pub mod report;
pub mod states;

pub use classical::{
    check_classical_subadditivity, classical_subadditivity_margin, conditional_entropy_q,
    conditional_entropy_shannon, conditional_given_b, marginal_a, marginal_b, reshape_joint,
    shannon_entropy, tsallis_entropy, BipartitionShape, JointTable, ProbabilityVector,
};
pub use error::{Error, Result};
pub use inequalities::{
    check_araki_lieb, check_quantum_subadditivity, check_tomogram_subadditivity,
    check_tomographic_subadditivity, check_unitary_subadditivity, deformed_information,
    information_i, mutual_information_bipartite, quantum_q_entropy, qudit32_conditional_q_entropy,
    tomographic_q_entropy, von_neumann_entropy, LocalInformation,
};
pub use linalg::{hermitian_eig, kron, matrix_function, ComplexMatrix, Spectrum, UnitaryMatrix};
pub use optimizer::{
    build_unitary, minimize_sigma, sigma_sum, OptimizationResult, OptimizerConfig, UnitaryParams,
};
pub use random::{ginibre_density, haar_unitary, stream_seed};
pub use report::{InequalityKind, InequalityReport, InformationKind, InformationValue};
pub use states::{
    block_marginal_first, block_marginal_second, conjugate, eigenbasis_unitary, qudit32_omegas,
    tomogram, validate_density, zero_pad, DensityMatrix, LabelScheme, Tomogram, UnitarySource,
};
