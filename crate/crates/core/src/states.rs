//! Density matrices, block marginals and tomograms.
//!
//! An `N × N` density matrix with `N = n·m` is viewed as an `n × n` grid of
//! `m × m` blocks `R_{jk}`. The first marginal traces each block,
//! `R1[j][k] = Tr R_{jk}`; the second sums the diagonal blocks,
//! `R2 = Σ_j R_{jj}`. For a genuine two-qudit state these are the usual
//! partial traces; for a single qudit they define artificial subsystems.
//!
//! For a zero-padded qutrit `diag-block(ρ, 0)` with basis order `(1, 0, −1)`
//! and shape `(2, 2)`, the construction gives
//! `R1 = [[ρ11 + ρ00, ρ1,−1], [ρ−1,1, ρ−1,−1]]` and
//! `R2 = [[ρ11 + ρ−1,−1, ρ10], [ρ01, ρ00]]`.

use serde::{Deserialize, Serialize};

use crate::classical::{BipartitionShape, ProbabilityVector};
use crate::error::{Error, Result};
use crate::linalg::{clip_spectrum, hermitian_eig, ComplexMatrix, UnitaryMatrix, HERMITIAN_TOL};

const TRACE_TOL: f64 = 1e-9;
const TOMOGRAM_CLIP: f64 = 1e-12;
const TOMOGRAM_RENORMALIZE_TOL: f64 = 1e-10;

/// Hermitian, positive semidefinite, unit-trace matrix together with its
/// clipped spectrum (ascending).
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
    eigenvalues: Vec<f64>,
}

pub fn validate_density(m: ComplexMatrix) -> Result<DensityMatrix> {
    let deviation = m.hermitian_deviation();
    if deviation > HERMITIAN_TOL {
        return Err(Error::NotHermitian { deviation });
    }
    let trace = m.trace().re;
    if (trace - 1.0).abs() > TRACE_TOL {
        return Err(Error::TraceNotOne { trace });
    }
    let spectrum = hermitian_eig(&m)?;
    if let Some(&lowest) = spectrum.eigenvalues.first() {
        if lowest < -crate::linalg::PSD_CLIP {
            return Err(Error::NotPositive { eigenvalue: lowest });
        }
    }
    let eigenvalues = clip_spectrum(spectrum.eigenvalues);
    Ok(DensityMatrix {
        matrix: m.hermitian_part(),
        eigenvalues,
    })
}

impl DensityMatrix {
    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        Self {
            matrix: ComplexMatrix::from_real_diagonal(&vec![1.0 / dim as f64; dim]),
            eigenvalues: vec![1.0 / dim as f64; dim],
        }
    }

    pub fn rank(&self, tol: f64) -> usize {
        self.eigenvalues.iter().filter(|&&l| l > tol).count()
    }
}

impl Serialize for DensityMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.matrix.serialize(s)
    }
}

impl<'de> Deserialize<'de> for DensityMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        validate_density(ComplexMatrix::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

/// `diag-block(ρ, 0)` of dimension `target_dim`.
pub fn zero_pad(rho: &DensityMatrix, target_dim: usize) -> Result<DensityMatrix> {
    let dim = rho.dim();
    if target_dim < dim {
        return Err(Error::InvalidParameter(format!(
            "cannot pad dimension {dim} down to {target_dim}"
        )));
    }
    let mut eigenvalues = vec![0.0; target_dim - dim];
    eigenvalues.extend_from_slice(&rho.eigenvalues);
    eigenvalues.sort_by(f64::total_cmp);
    Ok(DensityMatrix {
        matrix: rho.matrix.embed(target_dim),
        eigenvalues,
    })
}

pub(crate) fn block_traces(a: &ComplexMatrix, shape: BipartitionShape) -> ComplexMatrix {
    let BipartitionShape { n, m } = shape;
    let mut out = ComplexMatrix::zeros(n);
    for j in 0..n {
        for k in 0..n {
            out[(j, k)] = (0..m).map(|r| a[(j * m + r, k * m + r)]).sum();
        }
    }
    out
}

pub(crate) fn diagonal_block_sum(a: &ComplexMatrix, shape: BipartitionShape) -> ComplexMatrix {
    let BipartitionShape { n, m } = shape;
    let mut out = ComplexMatrix::zeros(m);
    for r in 0..m {
        for c in 0..m {
            out[(r, c)] = (0..n).map(|j| a[(j * m + r, j * m + c)]).sum();
        }
    }
    out
}

/// `n × n` matrix of block traces `Tr R_{jk}`.
pub fn block_marginal_first(rho: &DensityMatrix, shape: BipartitionShape) -> Result<DensityMatrix> {
    shape.require_dim(rho.dim())?;
    validate_density(block_traces(&rho.matrix, shape))
}

/// `m × m` sum of diagonal blocks `Σ_j R_{jj}`.
pub fn block_marginal_second(rho: &DensityMatrix, shape: BipartitionShape) -> Result<DensityMatrix> {
    shape.require_dim(rho.dim())?;
    validate_density(diagonal_block_sum(&rho.matrix, shape))
}

pub(crate) fn conjugated(rho: &DensityMatrix, u: &UnitaryMatrix) -> Result<ComplexMatrix> {
    if rho.dim() != u.dim() {
        return Err(Error::DimensionMismatch {
            left: rho.dim(),
            right: u.dim(),
        });
    }
    let left = u.matrix() * &rho.matrix;
    Ok((&left * &u.matrix().adjoint()).hermitian_part())
}

/// `u ρ u†`.
pub fn conjugate(rho: &DensityMatrix, u: &UnitaryMatrix) -> Result<DensityMatrix> {
    validate_density(conjugated(rho, u)?)
}

/// How tomogram outcomes are labelled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LabelScheme {
    /// `s = 1, …, N`.
    Linear,
    /// `(j, k)` under a bipartition, both one-based.
    Pair { n: usize, m: usize },
    /// Spin projections `m = −j, …, j` ascending with `j = (N − 1)/2`.
    Spin,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum OutcomeLabel {
    Index(usize),
    Pair([usize; 2]),
    Projection(f64),
}

impl LabelScheme {
    pub fn labels(self, len: usize) -> Vec<OutcomeLabel> {
        match self {
            Self::Linear => (1..=len).map(OutcomeLabel::Index).collect(),
            Self::Pair { m, .. } => (0..len)
                .map(|s| OutcomeLabel::Pair([s / m + 1, s % m + 1]))
                .collect(),
            Self::Spin => {
                let j = (len as f64 - 1.0) / 2.0;
                (0..len).map(|s| OutcomeLabel::Projection(s as f64 - j)).collect()
            }
        }
    }
}

/// Where the unitary of a tomogram came from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum UnitarySource {
    Matrix(ComplexMatrix),
    Record { kind: String, seed: Option<u64> },
}

impl UnitarySource {
    pub fn identity() -> Self {
        Self::Record {
            kind: "identity".into(),
            seed: None,
        }
    }

    pub fn haar(seed: u64) -> Self {
        Self::Record {
            kind: "haar".into(),
            seed: Some(seed),
        }
    }

    pub fn label(&self) -> String {
        match self {
            Self::Matrix(_) => "matrix".into(),
            Self::Record { kind, seed: Some(s) } => format!("{kind}:{s}"),
            Self::Record { kind, seed: None } => kind.clone(),
        }
    }
}

/// Diagonal of `u ρ u†`: a probability distribution over the basis outcomes.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Tomogram {
    pub labels: Vec<OutcomeLabel>,
    #[serde(serialize_with = "serialize_probs")]
    pub probs: ProbabilityVector,
    pub unitary: UnitarySource,
    #[serde(skip)]
    pub scheme: LabelScheme,
}

fn serialize_probs<S: serde::Serializer>(p: &ProbabilityVector, s: S) -> std::result::Result<S::Ok, S::Error> {
    p.as_slice().serialize(s)
}

impl Tomogram {
    /// Wraps an already-computed probability vector, e.g. a measured tomogram.
    pub fn from_probs(probs: ProbabilityVector, scheme: LabelScheme, unitary: UnitarySource) -> Self {
        Self {
            labels: scheme.labels(probs.len()),
            probs,
            unitary,
            scheme,
        }
    }
}

/// `w(s, u) = (u ρ u†)_{ss}`.
pub fn tomogram(
    rho: &DensityMatrix,
    u: &UnitaryMatrix,
    scheme: LabelScheme,
    source: UnitarySource,
) -> Result<Tomogram> {
    let conj = conjugated(rho, u)?;
    let mut probs: Vec<f64> = conj.diagonal().iter().map(|z| z.re).collect();
    for p in probs.iter_mut() {
        if *p < 0.0 {
            if *p >= -TOMOGRAM_CLIP {
                *p = 0.0;
            } else {
                return Err(Error::NegativeProbability { value: *p });
            }
        }
    }
    let sum: f64 = probs.iter().sum();
    if (sum - 1.0).abs() > TOMOGRAM_RENORMALIZE_TOL {
        return Err(Error::NotNormalized { sum });
    }
    for p in probs.iter_mut() {
        *p /= sum;
    }
    if let LabelScheme::Pair { n, m } = scheme {
        BipartitionShape::new(n, m)?.require_dim(probs.len())?;
    }
    Ok(Tomogram::from_probs(ProbabilityVector::new(probs)?, scheme, source))
}

pub(crate) fn require_spin32(t: &Tomogram) -> Result<[f64; 4]> {
    match (t.scheme, t.probs.as_slice()) {
        (LabelScheme::Spin, &[a, b, c, d]) => Ok([a, b, c, d]),
        _ => Err(Error::WrongLabelScheme),
    }
}

/// Spin-3/2 split into two artificial qubits:
/// `Ω₁ = (w(−3/2) + w(−1/2), w(1/2) + w(3/2))`,
/// `Ω₂ = (w(−3/2) + w(1/2), w(−1/2) + w(3/2))`.
pub fn qudit32_omegas(t: &Tomogram) -> Result<(ProbabilityVector, ProbabilityVector)> {
    let [w0, w1, w2, w3] = require_spin32(t)?;
    Ok((
        ProbabilityVector::new(vec![w0 + w1, w2 + w3])?,
        ProbabilityVector::new(vec![w0 + w2, w1 + w3])?,
    ))
}

/// Column-wise eigenvector basis of `ρ`, as the unitary `V†` that
/// diagonalizes it: `V† ρ V = diag(λ)`.
pub fn eigenbasis_unitary(rho: &DensityMatrix) -> Result<UnitaryMatrix> {
    let spectrum = hermitian_eig(rho.matrix())?;
    Ok(UnitaryMatrix::new_unchecked(spectrum.eigenvectors.adjoint()))
}
