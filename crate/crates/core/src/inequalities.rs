//! Quantum entropies and the inequality checks built on them.
//!
//! Every check evaluates both sides independently from the inputs, so an
//! error in one side cannot cancel against the other.

use crate::classical::{
    marginal_a, marginal_b, reshape_joint, require_q_at_least_one, tsallis_of, validate_q,
    BipartitionShape,
};
use crate::error::Result;
use crate::linalg::UnitaryMatrix;
use crate::report::{InequalityKind, InequalityReport, InformationKind, InformationValue};
use crate::states::{
    block_marginal_first, block_marginal_second, conjugate, eigenbasis_unitary, qudit32_omegas,
    require_spin32, DensityMatrix, LabelScheme, Tomogram,
};

/// `S(ρ) = −Tr ρ ln ρ` over the clipped spectrum.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> f64 {
    tsallis_of(rho.eigenvalues(), 1.0)
}

/// `S_q(ρ) = (1 − Tr ρ^q)/(q − 1)`, the von Neumann entropy at `q = 1`.
pub fn quantum_q_entropy(rho: &DensityMatrix, q: f64) -> Result<f64> {
    validate_q(q)?;
    Ok(tsallis_of(rho.eigenvalues(), q))
}

pub fn tomographic_q_entropy(t: &Tomogram, q: f64) -> Result<f64> {
    validate_q(q)?;
    Ok(tsallis_of(t.probs.as_slice(), q))
}

/// `S_q(ρ) ≤ S_q(R1) + S_q(R2)` for the block marginals of `ρ`.
pub fn check_quantum_subadditivity(
    rho: &DensityMatrix,
    shape: BipartitionShape,
    q: f64,
) -> Result<InequalityReport> {
    require_q_at_least_one(q)?;
    shape.require_dim(rho.dim())?;
    let first = block_marginal_first(rho, shape)?;
    let second = block_marginal_second(rho, shape)?;
    let lhs = quantum_q_entropy(rho, q)?;
    let rhs = quantum_q_entropy(&first, q)? + quantum_q_entropy(&second, q)?;
    Ok(InequalityReport::upper_bound(
        InequalityKind::QuantumSubadditivity,
        lhs,
        rhs,
        q,
        shape,
    ))
}

/// `|S(R1) − S(R2)| ≤ S(ρ)`; the margin is `S(ρ) − |S(R1) − S(R2)|`.
pub fn check_araki_lieb(rho: &DensityMatrix, shape: BipartitionShape) -> Result<InequalityReport> {
    shape.require_dim(rho.dim())?;
    let first = block_marginal_first(rho, shape)?;
    let second = block_marginal_second(rho, shape)?;
    let lhs = (von_neumann_entropy(&first) - von_neumann_entropy(&second)).abs();
    let rhs = von_neumann_entropy(rho);
    Ok(InequalityReport::upper_bound(
        InequalityKind::ArakiLieb,
        lhs,
        rhs,
        1.0,
        shape,
    ))
}

/// Tsallis subadditivity of a tomogram read as a joint distribution.
///
/// Spin-3/2 tomograms use the `Ω₁`, `Ω₂` split, which coincides with the
/// row and column marginals of the `(2, 2)` reshape.
pub fn check_tomogram_subadditivity(
    t: &Tomogram,
    shape: BipartitionShape,
    q: f64,
) -> Result<InequalityReport> {
    require_q_at_least_one(q)?;
    shape.require_dim(t.probs.len())?;
    let lhs = tsallis_of(t.probs.as_slice(), q);
    let rhs = if t.scheme == LabelScheme::Spin && t.probs.len() == 4 && shape.n == 2 {
        let (o1, o2) = qudit32_omegas(t)?;
        tsallis_of(o1.as_slice(), q) + tsallis_of(o2.as_slice(), q)
    } else {
        let joint = reshape_joint(&t.probs, shape)?;
        tsallis_of(marginal_a(&joint).as_slice(), q) + tsallis_of(marginal_b(&joint).as_slice(), q)
    };
    Ok(InequalityReport::upper_bound(
        InequalityKind::TomographicSubadditivity,
        lhs,
        rhs,
        q,
        shape,
    )
    .with_unitary_label(t.unitary.label()))
}

/// Tomographic subadditivity for the tomogram of `ρ` under `u`.
pub fn check_tomographic_subadditivity(
    rho: &DensityMatrix,
    u: &UnitaryMatrix,
    shape: BipartitionShape,
    q: f64,
) -> Result<InequalityReport> {
    require_q_at_least_one(q)?;
    shape.require_dim(rho.dim())?;
    let t = crate::states::tomogram(
        rho,
        u,
        LabelScheme::Pair {
            n: shape.n,
            m: shape.m,
        },
        crate::states::UnitarySource::Matrix(u.matrix().clone()),
    )?;
    let mut report = check_tomogram_subadditivity(&t, shape, q)?;
    report.unitary_label = None;
    Ok(report)
}

/// Spin-3/2 conditional q-entropy `H_q(w) − H_q(Ω₁)`, conditioning on the
/// sign of the spin projection.
pub fn qudit32_conditional_q_entropy(t: &Tomogram, q: f64) -> Result<f64> {
    let w = require_spin32(t)?;
    validate_q(q)?;
    let (sign_split, _) = qudit32_omegas(t)?;
    Ok(tsallis_of(&w, q) - tsallis_of(sign_split.as_slice(), q))
}

/// Sum of marginal entropies after conjugation, `Σ(u) = S(R1(u)) + S(R2(u))`.
pub fn marginal_entropy_sum(
    rho: &DensityMatrix,
    u: &UnitaryMatrix,
    shape: BipartitionShape,
    q: f64,
) -> Result<f64> {
    shape.require_dim(rho.dim())?;
    let rotated = conjugate(rho, u)?;
    let first = block_marginal_first(&rotated, shape)?;
    let second = block_marginal_second(&rotated, shape)?;
    Ok(quantum_q_entropy(&first, q)? + quantum_q_entropy(&second, q)?)
}

/// `I(u) = S(R1(u)) + S(R2(u)) − S(ρ) ≥ 0`.
pub fn information_i(
    rho: &DensityMatrix,
    u: &UnitaryMatrix,
    shape: BipartitionShape,
) -> Result<InformationValue> {
    let sigma = marginal_entropy_sum(rho, u, shape, 1.0)?;
    Ok(InformationValue {
        value: sigma - von_neumann_entropy(rho),
        kind: InformationKind::IOfU,
        q: 1.0,
    })
}

/// Tsallis analogue of [`information_i`], defined for `q ≥ 1`.
pub fn deformed_information(
    rho: &DensityMatrix,
    u: &UnitaryMatrix,
    shape: BipartitionShape,
    q: f64,
) -> Result<InformationValue> {
    require_q_at_least_one(q)?;
    let sigma = marginal_entropy_sum(rho, u, shape, q)?;
    Ok(InformationValue {
        value: sigma - quantum_q_entropy(rho, q)?,
        kind: if q == 1.0 {
            InformationKind::IOfU
        } else {
            InformationKind::DeformedIOfU
        },
        q,
    })
}

/// `S(ρ) ≤ Σ(u)` as a report; the margin is `I(u)`.
pub fn check_unitary_subadditivity(
    rho: &DensityMatrix,
    u: &UnitaryMatrix,
    shape: BipartitionShape,
) -> Result<InequalityReport> {
    let rhs = marginal_entropy_sum(rho, u, shape, 1.0)?;
    let lhs = von_neumann_entropy(rho);
    Ok(InequalityReport::upper_bound(
        InequalityKind::UnitarySubadditivity,
        lhs,
        rhs,
        1.0,
        shape,
    ))
}

/// Information with local diagonalizing transforms, together with those
/// transforms.
#[derive(Debug, Clone)]
pub struct LocalInformation {
    pub information: InformationValue,
    /// Diagonalizes the first block marginal.
    pub first_local: UnitaryMatrix,
    /// Diagonalizes the second block marginal.
    pub second_local: UnitaryMatrix,
}

impl LocalInformation {
    pub fn local_product(&self) -> UnitaryMatrix {
        self.first_local.kron(&self.second_local)
    }
}

/// `I_q = S(R1) + S(R2) − S(ρ)` for the direct block marginals. Entropies
/// are basis invariant, so applying the local diagonalizing transforms
/// `u₁₀ ⊗ u₂₀` leaves the value unchanged.
pub fn mutual_information_bipartite(
    rho: &DensityMatrix,
    shape: BipartitionShape,
) -> Result<LocalInformation> {
    shape.require_dim(rho.dim())?;
    let first = block_marginal_first(rho, shape)?;
    let second = block_marginal_second(rho, shape)?;
    let value = von_neumann_entropy(&first) + von_neumann_entropy(&second) - von_neumann_entropy(rho);
    Ok(LocalInformation {
        information: InformationValue {
            value,
            kind: InformationKind::IQ,
            q: 1.0,
        },
        first_local: eigenbasis_unitary(&first)?,
        second_local: eigenbasis_unitary(&second)?,
    })
}
