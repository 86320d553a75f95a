//! Outcome records for inequality checks and information functionals.

use serde::{Deserialize, Serialize};

use crate::classical::BipartitionShape;

/// Margins at or above this value count as satisfied.
pub const PASS_THRESHOLD: f64 = -1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InequalityKind {
    /// Tsallis subadditivity of a classical joint distribution.
    ClassicalSubadditivity,
    /// Deformed subadditivity of a density matrix and its block marginals.
    QuantumSubadditivity,
    /// `|S(R1) − S(R2)| ≤ S(ρ)` on block marginals.
    ArakiLieb,
    /// Tsallis subadditivity of a tomogram and its reshaped marginals.
    TomographicSubadditivity,
    /// `S(ρ) ≤ S(R1(u)) + S(R2(u))` after global conjugation; the margin is `I(u)`.
    UnitarySubadditivity,
}

impl InequalityKind {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::ClassicalSubadditivity => "classical_subadditivity",
            Self::QuantumSubadditivity => "quantum_subadditivity",
            Self::ArakiLieb => "araki_lieb",
            Self::TomographicSubadditivity => "tomographic_subadditivity",
            Self::UnitarySubadditivity => "unitary_subadditivity",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InequalityReport {
    pub name: InequalityKind,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub q: f64,
    pub shape: BipartitionShape,
    pub satisfied: bool,
    pub seed: Option<u64>,
    pub unitary_label: Option<String>,
}

impl InequalityReport {
    /// Report for `lhs ≤ rhs`; the margin is `rhs − lhs`.
    pub fn upper_bound(name: InequalityKind, lhs: f64, rhs: f64, q: f64, shape: BipartitionShape) -> Self {
        let margin = rhs - lhs;
        Self {
            name,
            lhs,
            rhs,
            margin,
            q,
            shape,
            satisfied: margin >= PASS_THRESHOLD,
            seed: None,
            unitary_label: None,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn with_unitary_label(mut self, label: impl Into<String>) -> Self {
        self.unitary_label = Some(label.into());
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InformationKind {
    /// `I(u) = Σ(u) − S(ρ)` for a given global unitary.
    IOfU,
    /// Marginal entropy sum `Σ(u)`.
    Sigma,
    /// Information with diagonalizing local transforms.
    IQ,
    /// Tsallis analogue of `I(u)`.
    DeformedIOfU,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InformationValue {
    pub value: f64,
    pub kind: InformationKind,
    pub q: f64,
}
