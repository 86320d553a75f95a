//! Minimization of the marginal entropy sum `Σ(u)` over the unitary group.
//!
//! Unitaries are charted by Hermitian generators, `u = exp(iH(θ))`, with
//! `θ ∈ ℝ^{N²}`. The search is a multi-start Nelder–Mead descent in θ. The
//! landscape is nonconvex, so the result is the best value found, not a
//! certified global minimum.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classical::{tsallis_of, BipartitionShape};
use crate::error::{Error, Result};
use crate::inequalities::von_neumann_entropy;
use crate::linalg::{clip_roundoff, hermitian_eig, ComplexMatrix, Spectrum, UnitaryMatrix, PSD_CLIP};
use crate::random::{haar_unitary, stream_seed};
use crate::states::{block_traces, conjugated, diagonal_block_sum, eigenbasis_unitary, DensityMatrix};

/// Generator coordinates: the `N` diagonal entries of `H`, then
/// `(re, im)` of each strictly-upper entry in row-major order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UnitaryParams {
    pub dim: usize,
    pub theta: Vec<f64>,
}

impl UnitaryParams {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            theta: vec![0.0; dim * dim],
        }
    }

    pub fn new(dim: usize, theta: Vec<f64>) -> Result<Self> {
        if theta.len() != dim * dim {
            return Err(Error::InvalidParameter(format!(
                "expected {} generator coordinates, got {}",
                dim * dim,
                theta.len()
            )));
        }
        Ok(Self { dim, theta })
    }

    pub fn generator(&self) -> ComplexMatrix {
        generator_from(self.dim, &self.theta)
    }

    /// Principal logarithm chart point of `u`: `H = −i log u` with
    /// eigenphases in `(−π, π]`.
    pub fn from_unitary(u: &UnitaryMatrix) -> Result<Self> {
        let h = unitary_log(u)?;
        let dim = u.dim();
        let mut theta = Vec::with_capacity(dim * dim);
        theta.extend((0..dim).map(|i| h[(i, i)].re));
        for i in 0..dim {
            for j in (i + 1)..dim {
                theta.push(h[(i, j)].re);
                theta.push(h[(i, j)].im);
            }
        }
        Ok(Self { dim, theta })
    }
}

fn generator_from(dim: usize, theta: &[f64]) -> ComplexMatrix {
    let mut h = ComplexMatrix::zeros(dim);
    for (i, &t) in theta.iter().take(dim).enumerate() {
        h[(i, i)] = Complex64::new(t, 0.0);
    }
    let mut idx = dim;
    for i in 0..dim {
        for j in (i + 1)..dim {
            let z = Complex64::new(theta[idx], theta[idx + 1]);
            h[(i, j)] = z;
            h[(j, i)] = z.conj();
            idx += 2;
        }
    }
    h
}

/// `exp(iH(θ))` via the spectral decomposition of `H(θ)`.
pub fn build_unitary(params: &UnitaryParams) -> Result<UnitaryMatrix> {
    if params.theta.len() != params.dim * params.dim {
        return Err(Error::InvalidParameter("generator length does not match dimension".into()));
    }
    if params.theta.iter().any(|t| !t.is_finite()) {
        return Err(Error::NonFinite);
    }
    let spectrum = hermitian_eig(&params.generator())?;
    Ok(UnitaryMatrix::new_unchecked(
        spectrum.apply(|l| Complex64::new(0.0, l).exp()),
    ))
}

/// Hermitian `H` with `exp(iH) = u`.
///
/// `u` is normal, so its Hermitian and anti-Hermitian parts commute and are
/// diagonalized by any generic real combination of the two; a few mixing
/// coefficients are tried and the most accurate basis kept.
fn unitary_log(u: &UnitaryMatrix) -> Result<ComplexMatrix> {
    let m = u.matrix();
    let dim = m.dim();
    let adj = m.adjoint();
    let re_part = (m + &adj).scale(Complex64::new(0.5, 0.0));
    let im_part = (m - &adj).scale(Complex64::new(0.0, -0.5));

    let mut best: Option<(f64, Spectrum)> = None;
    for mix in [0.618_033_988_749_894_9, 1.414_213_562_373_095, 0.318_309_886_183_791, 2.718_281_828_459_045] {
        let combo = (&re_part + &im_part.scale(Complex64::new(mix, 0.0))).hermitian_part();
        let basis = hermitian_eig(&combo)?.eigenvectors;
        let diag = &(&basis.adjoint() * m) * &basis;
        let mut off = 0.0f64;
        for i in 0..dim {
            for j in 0..dim {
                if i != j {
                    off = off.max(diag[(i, j)].norm());
                }
            }
        }
        let phases = (0..dim).map(|i| diag[(i, i)].arg()).collect();
        let candidate = Spectrum {
            eigenvalues: phases,
            eigenvectors: basis,
        };
        if best.as_ref().is_none_or(|(e, _)| off < *e) {
            best = Some((off, candidate));
        }
        if off < 1e-12 {
            break;
        }
    }
    let (_, spectrum) = best.expect("at least one mixing coefficient tried");
    Ok(spectrum.reconstruct().hermitian_part())
}

fn entropy_of_block(block: &ComplexMatrix) -> Result<f64> {
    let spectrum = hermitian_eig(block)?;
    if let Some(&lowest) = spectrum.eigenvalues.first() {
        if lowest < -PSD_CLIP {
            return Err(Error::NotPositive { eigenvalue: lowest });
        }
    }
    let clipped: Vec<f64> = spectrum.eigenvalues.into_iter().map(clip_roundoff).collect();
    Ok(tsallis_of(&clipped, 1.0))
}

/// `Σ(u) = S(R1(u)) + S(R2(u))` for the block marginals of `u ρ u†`.
pub fn sigma_sum(rho: &DensityMatrix, u: &UnitaryMatrix, shape: BipartitionShape) -> Result<f64> {
    shape.require_dim(rho.dim())?;
    let rotated = conjugated(rho, u)?;
    Ok(entropy_of_block(&block_traces(&rotated, shape))?
        + entropy_of_block(&diagonal_block_sum(&rotated, shape))?)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OptimizerConfig {
    /// Number of starting points, at least 2: `θ = 0`, the eigenbasis of
    /// `ρ`, then Haar-random chart points.
    pub restarts: usize,
    pub max_iters: usize,
    pub tol: f64,
    pub seed: u64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            restarts: 8,
            max_iters: 5000,
            tol: 1e-8,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OptimizationResult {
    pub params: UnitaryParams,
    /// Best `Σ(u₀)` found.
    pub sigma: f64,
    /// `I(u₀) = Σ(u₀) − S(ρ)`.
    pub information: f64,
    /// Nelder–Mead iterations summed over all restarts.
    pub iterations: usize,
    pub restarts_used: usize,
    /// Whether the winning restart met its stopping criterion before the
    /// iteration budget ran out.
    pub converged: bool,
    pub best_restart: usize,
}

#[derive(Serialize)]
struct ResultJson<'a> {
    sigma: f64,
    information: f64,
    iterations: usize,
    restarts_used: usize,
    converged: bool,
    theta: &'a [f64],
}

impl Serialize for OptimizationResult {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ResultJson {
            sigma: self.sigma,
            information: self.information,
            iterations: self.iterations,
            restarts_used: self.restarts_used,
            converged: self.converged,
            theta: &self.params.theta,
        }
        .serialize(s)
    }
}

impl OptimizationResult {
    pub fn unitary(&self) -> Result<UnitaryMatrix> {
        build_unitary(&self.params)
    }
}

struct RestartOutcome {
    theta: Vec<f64>,
    value: f64,
    iterations: usize,
    converged: bool,
}

/// Starting chart point of restart `index`.
fn restart_point(rho: &DensityMatrix, index: usize, seed: u64) -> Result<Vec<f64>> {
    let dim = rho.dim();
    match index {
        0 => Ok(vec![0.0; dim * dim]),
        1 => Ok(UnitaryParams::from_unitary(&eigenbasis_unitary(rho)?)?.theta),
        _ => {
            let u = haar_unitary(dim, stream_seed(seed, index as u64))?;
            Ok(UnitaryParams::from_unitary(&u)?.theta)
        }
    }
}

/// Best `Σ(u₀)` over all restarts; ties go to the lower restart index.
pub fn minimize_sigma(
    rho: &DensityMatrix,
    shape: BipartitionShape,
    config: &OptimizerConfig,
) -> Result<OptimizationResult> {
    shape.require_dim(rho.dim())?;
    if config.max_iters == 0 || !(config.tol > 0.0) {
        return Err(Error::InvalidParameter("optimizer budget must be positive".into()));
    }
    let restarts = config.restarts.max(2);
    let dim = rho.dim();
    let objective = |theta: &[f64]| -> f64 {
        let u = match build_unitary(&UnitaryParams {
            dim,
            theta: theta.to_vec(),
        }) {
            Ok(u) => u,
            Err(_) => return f64::INFINITY,
        };
        sigma_sum(rho, &u, shape).unwrap_or(f64::INFINITY)
    };

    let outcomes: Vec<RestartOutcome> = (0..restarts)
        .into_par_iter()
        .map(|index| {
            let start = restart_point(rho, index, config.seed)?;
            Ok(nelder_mead(&objective, start, config.max_iters, config.tol))
        })
        .collect::<Result<_>>()?;

    let (best_restart, best) = outcomes
        .iter()
        .enumerate()
        .min_by(|(i, a), (j, b)| a.value.total_cmp(&b.value).then(i.cmp(j)))
        .expect("at least two restarts");
    let sigma = best.value;
    Ok(OptimizationResult {
        params: UnitaryParams {
            dim,
            theta: best.theta.clone(),
        },
        sigma,
        information: sigma - von_neumann_entropy(rho),
        iterations: outcomes.iter().map(|o| o.iterations).sum(),
        restarts_used: restarts,
        converged: best.converged,
        best_restart,
    })
}

const INITIAL_STEP: f64 = 0.2;

/// Nelder–Mead with dimension-adapted coefficients (Gao & Han), which keep
/// the simplex from collapsing prematurely in tens of dimensions.
///
/// Stops when the simplex diameter drops below `tol` or the best value
/// improves by less than `tol` over a window of `10·(n + 1)` iterations.
fn nelder_mead<F: Fn(&[f64]) -> f64>(f: &F, start: Vec<f64>, max_iters: usize, tol: f64) -> RestartOutcome {
    let n = start.len();
    let nf = n as f64;
    let (reflect, expand, contract, shrink) = (1.0, 1.0 + 2.0 / nf, 0.75 - 0.5 / nf, 1.0 - 1.0 / nf);
    let window = 10 * (n + 1);

    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(n + 1);
    let f0 = f(&start);
    simplex.push((start.clone(), f0));
    for i in 0..n {
        let mut x = start.clone();
        x[i] += INITIAL_STEP;
        let fx = f(&x);
        simplex.push((x, fx));
    }

    let mut history: Vec<f64> = Vec::with_capacity(max_iters + 1);
    let mut iterations = 0;
    let mut converged = false;
    let point = |centroid: &[f64], worst: &[f64], coef: f64| -> Vec<f64> {
        centroid
            .iter()
            .zip(worst)
            .map(|(c, w)| c + coef * (c - w))
            .collect()
    };

    while iterations < max_iters {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        history.push(simplex[0].1);

        let best = &simplex[0].0;
        let diameter = simplex[1..]
            .iter()
            .map(|(x, _)| x.iter().zip(best).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
            .fold(0.0, f64::max);
        let stalled = history.len() > window && history[history.len() - 1 - window] - simplex[0].1 < tol;
        if diameter < tol || stalled {
            converged = true;
            break;
        }
        iterations += 1;

        let mut centroid = vec![0.0; n];
        for (x, _) in &simplex[..n] {
            for (c, v) in centroid.iter_mut().zip(x) {
                *c += v / nf;
            }
        }
        let (worst, f_worst) = simplex[n].clone();
        let f_best = simplex[0].1;
        let f_second = simplex[n - 1].1;

        let xr = point(&centroid, &worst, reflect);
        let fr = f(&xr);
        if fr < f_best {
            let xe = point(&centroid, &worst, reflect * expand);
            let fe = f(&xe);
            simplex[n] = if fe < fr { (xe, fe) } else { (xr, fr) };
            continue;
        }
        if fr < f_second {
            simplex[n] = (xr, fr);
            continue;
        }
        let (xc, fc) = if fr < f_worst {
            let xc = point(&centroid, &worst, reflect * contract);
            let fc = f(&xc);
            (xc, fc)
        } else {
            let xc = point(&centroid, &worst, -contract);
            let fc = f(&xc);
            (xc, fc)
        };
        if fc < fr.min(f_worst) {
            simplex[n] = (xc, fc);
            continue;
        }
        let anchor = simplex[0].0.clone();
        for (x, fx) in simplex.iter_mut().skip(1) {
            for (xi, ai) in x.iter_mut().zip(&anchor) {
                *xi = ai + shrink * (*xi - ai);
            }
            *fx = f(x);
        }
    }

    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    let (theta, value) = simplex.swap_remove(0);
    RestartOutcome {
        theta,
        value,
        iterations,
        converged,
    }
}
