//! Classical probability vectors, joint tables and their entropies.
//!
//! A length-`N` vector with `N = n·m` is read as a joint distribution of two
//! artificial random variables through the row-major index map
//! `s = j·m + k` (zero-based). All entropies are in nats.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::report::{InequalityKind, InequalityReport};

const NEGATIVE_CLIP: f64 = 1e-12;
const NORMALIZATION_TOL: f64 = 1e-9;
const ZERO_EVENT: f64 = 1e-15;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ProbsJson", into = "ProbsJson")]
pub struct ProbabilityVector {
    probs: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct ProbsJson {
    probs: Vec<f64>,
}

impl TryFrom<ProbsJson> for ProbabilityVector {
    type Error = Error;

    fn try_from(raw: ProbsJson) -> Result<Self> {
        Self::new(raw.probs)
    }
}

impl From<ProbabilityVector> for ProbsJson {
    fn from(p: ProbabilityVector) -> Self {
        ProbsJson { probs: p.probs }
    }
}

impl ProbabilityVector {
    /// Validates and clips entries in `[-1e-12, 0)` to zero.
    pub fn new(mut probs: Vec<f64>) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::InvalidParameter("empty probability vector".into()));
        }
        for p in probs.iter_mut() {
            if !p.is_finite() {
                return Err(Error::NonFinite);
            }
            if *p < 0.0 {
                if *p >= -NEGATIVE_CLIP {
                    *p = 0.0;
                } else {
                    return Err(Error::NegativeProbability { value: *p });
                }
            }
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > NORMALIZATION_TOL {
            return Err(Error::NotNormalized { sum });
        }
        Ok(Self { probs })
    }

    pub fn uniform(len: usize) -> Self {
        Self {
            probs: vec![1.0 / len as f64; len],
        }
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.probs
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.probs
    }
}

/// Factor pair `N = n·m` used to split an index into `(j, k)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BipartitionShape {
    pub n: usize,
    pub m: usize,
}

impl BipartitionShape {
    pub fn new(n: usize, m: usize) -> Result<Self> {
        if n == 0 || m == 0 {
            return Err(Error::InvalidParameter(format!("degenerate shape {n}x{m}")));
        }
        Ok(Self { n, m })
    }

    pub fn dim(&self) -> usize {
        self.n * self.m
    }

    pub(crate) fn require_dim(&self, dim: usize) -> Result<()> {
        if self.dim() == dim {
            Ok(())
        } else {
            Err(Error::ShapeMismatch {
                n: self.n,
                m: self.m,
                dim,
            })
        }
    }

    /// Ordered factor pairs `(n, m)` of `dim` with `n, m ≥ 2`, by increasing `n`.
    pub fn factorizations(dim: usize) -> Vec<Self> {
        (2..=dim / 2)
            .filter(|n| dim % n == 0 && dim / n >= 2)
            .map(|n| Self { n, m: dim / n })
            .collect()
    }
}

impl std::fmt::Display for BipartitionShape {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}x{}", self.n, self.m)
    }
}

impl Serialize for BipartitionShape {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.n, self.m].serialize(s)
    }
}

impl<'de> Deserialize<'de> for BipartitionShape {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [n, m] = <[usize; 2]>::deserialize(d)?;
        Self::new(n, m).map_err(serde::de::Error::custom)
    }
}

/// Joint distribution `P(j, k)` stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct JointTable {
    shape: BipartitionShape,
    table: Vec<f64>,
}

impl JointTable {
    pub fn shape(&self) -> BipartitionShape {
        self.shape
    }

    pub fn get(&self, j: usize, k: usize) -> f64 {
        self.table[j * self.shape.m + k]
    }

    pub fn flatten(&self) -> ProbabilityVector {
        ProbabilityVector {
            probs: self.table.clone(),
        }
    }

    pub fn total(&self) -> f64 {
        self.table.iter().sum()
    }
}

pub fn reshape_joint(p: &ProbabilityVector, shape: BipartitionShape) -> Result<JointTable> {
    shape.require_dim(p.len())?;
    Ok(JointTable {
        shape,
        table: p.probs.clone(),
    })
}

/// `P₁(j) = Σ_k P(j, k)`.
pub fn marginal_a(joint: &JointTable) -> ProbabilityVector {
    let BipartitionShape { n, m } = joint.shape;
    ProbabilityVector {
        probs: (0..n).map(|j| (0..m).map(|k| joint.get(j, k)).sum()).collect(),
    }
}

/// `P₂(k) = Σ_j P(j, k)`.
pub fn marginal_b(joint: &JointTable) -> ProbabilityVector {
    let BipartitionShape { n, m } = joint.shape;
    ProbabilityVector {
        probs: (0..m).map(|k| (0..n).map(|j| joint.get(j, k)).sum()).collect(),
    }
}

/// Bayes conditional `P(j | k)` for the zero-based column `k`.
pub fn conditional_given_b(joint: &JointTable, k: usize) -> Result<ProbabilityVector> {
    let BipartitionShape { n, m } = joint.shape;
    if k >= m {
        return Err(Error::InvalidParameter(format!("column {k} out of range 0..{m}")));
    }
    let column: Vec<f64> = (0..n).map(|j| joint.get(j, k)).collect();
    let weight: f64 = column.iter().sum();
    if weight <= ZERO_EVENT {
        return Err(Error::ZeroConditioningEvent { column: k });
    }
    Ok(ProbabilityVector {
        probs: column.into_iter().map(|x| x / weight).collect(),
    })
}

/// Shannon entropy in nats with `0·ln 0 = 0`.
pub fn shannon_entropy(p: &ProbabilityVector) -> f64 {
    shannon_of(&p.probs)
}

pub(crate) fn shannon_of(values: &[f64]) -> f64 {
    // 0.0 - x rather than -x keeps empty sums at +0.0
    0.0 - values
        .iter()
        .filter(|&&x| x > 0.0)
        .map(|&x| x * x.ln())
        .sum::<f64>()
}

pub(crate) fn validate_q(q: f64) -> Result<()> {
    if q.is_finite() && q > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidQ(q))
    }
}

pub(crate) fn require_q_at_least_one(q: f64) -> Result<()> {
    if q.is_finite() && q >= 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidQ(q))
    }
}

/// `(1 − Σ x^q)/(q − 1)` written as `−Σ x·expm1((q−1) ln x)/(q−1)`, which
/// stays accurate as `q → 1`.
pub(crate) fn tsallis_of(values: &[f64], q: f64) -> f64 {
    if q == 1.0 {
        return shannon_of(values);
    }
    let d = q - 1.0;
    0.0 - values
        .iter()
        .filter(|&&x| x > 0.0)
        .map(|&x| x * (d * x.ln()).exp_m1() / d)
        .sum::<f64>()
}

/// Tsallis entropy `H_q`; the `q = 1` branch is the Shannon entropy.
pub fn tsallis_entropy(p: &ProbabilityVector, q: f64) -> Result<f64> {
    validate_q(q)?;
    Ok(tsallis_of(&p.probs, q))
}

/// `H(A|B) = Σ_k P₂(k) H(A | k)`; zero-weight columns contribute nothing.
pub fn conditional_entropy_shannon(joint: &JointTable) -> f64 {
    let weights = marginal_b(joint);
    (0..joint.shape.m)
        .filter(|&k| weights.probs[k] > ZERO_EVENT)
        .map(|k| {
            let cond = conditional_given_b(joint, k).expect("column weight checked above");
            weights.probs[k] * shannon_entropy(&cond)
        })
        .sum()
}

/// `H_q(A|B) = H_q(A, B) − H_q(B)` with `H_q(B)` the Tsallis entropy of the
/// column marginal.
pub fn conditional_entropy_q(joint: &JointTable, q: f64) -> Result<f64> {
    validate_q(q)?;
    Ok(tsallis_of(&joint.table, q) - tsallis_of(&marginal_b(joint).probs, q))
}

/// `H_q(A, B) ≤ H_q(A) + H_q(B)` without the `q ≥ 1` guard, for exploring
/// the `q < 1` regime where the inequality is not guaranteed.
pub fn classical_subadditivity_margin(joint: &JointTable, q: f64) -> Result<InequalityReport> {
    validate_q(q)?;
    let lhs = tsallis_of(&joint.table, q);
    let rhs = tsallis_of(&marginal_a(joint).probs, q) + tsallis_of(&marginal_b(joint).probs, q);
    Ok(InequalityReport::upper_bound(
        InequalityKind::ClassicalSubadditivity,
        lhs,
        rhs,
        q,
        joint.shape,
    ))
}

pub fn check_classical_subadditivity(joint: &JointTable, q: f64) -> Result<InequalityReport> {
    require_q_at_least_one(q)?;
    classical_subadditivity_margin(joint, q)
}
