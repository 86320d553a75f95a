use std::fs;
use std::io::Write;
use std::path::Path;
use std::time::Instant;

use entropic::random::stream_seed;
use entropic::{
    check_araki_lieb, check_quantum_subadditivity, check_tomogram_subadditivity,
    check_unitary_subadditivity, conditional_entropy_q, ginibre_density, haar_unitary, marginal_a,
    marginal_b, minimize_sigma, mutual_information_bipartite, qudit32_conditional_q_entropy,
    qudit32_omegas, reshape_joint, tomogram, tomographic_q_entropy, tsallis_entropy,
    validate_density, von_neumann_entropy, zero_pad, BipartitionShape, ComplexMatrix,
    DensityMatrix, InequalityReport, LabelScheme, OptimizationResult, OptimizerConfig,
    Tomogram, UnitaryMatrix, UnitarySource,
};
use rayon::prelude::*;
use serde::Serialize;

use crate::config::{
    CheckArgs, Grid, Labels, MinimizeArgs, OutputFormat, SampleArgs, SweepArgs, TomogramArgs,
};
use crate::report::{write_reports_csv, RunConfig, SuiteReport};
use crate::CliError;

/// Smallest dimension `≥ dim` that has a factorization with both factors `≥ 2`.
pub fn padded_dimension(dim: usize) -> usize {
    (dim.max(4)..)
        .find(|&d| !BipartitionShape::factorizations(d).is_empty())
        .expect("every even number is composite")
}

/// Padded dimension and the shapes to check: the requested one, or every
/// factorization of the padded dimension.
pub fn plan_shapes(dim: usize, requested: Option<&[usize]>) -> Result<(usize, Vec<BipartitionShape>), CliError> {
    match requested {
        Some(&[n, m]) => {
            let shape = BipartitionShape::new(n, m)?;
            if shape.dim() < dim {
                return Err(CliError::Config(format!(
                    "shape {shape} is smaller than the state dimension {dim}"
                )));
            }
            Ok((shape.dim(), vec![shape]))
        }
        Some(other) => Err(CliError::Config(format!("--shape takes two integers, got {other:?}"))),
        None => {
            let padded = padded_dimension(dim);
            Ok((padded, BipartitionShape::factorizations(padded)))
        }
    }
}

/// The most balanced factorization `n ≤ m`.
fn balanced_shape(dim: usize, requested: Option<&[usize]>) -> Result<(usize, BipartitionShape), CliError> {
    let (padded, shapes) = plan_shapes(dim, requested)?;
    let shape = shapes
        .iter()
        .filter(|s| s.n <= s.m)
        .max_by_key(|s| s.n)
        .copied()
        .unwrap_or(shapes[0]);
    Ok((padded, shape))
}

fn validate_grid(grid: &Grid, guarded: bool) -> Result<(), CliError> {
    if grid.q.is_empty() {
        return Err(CliError::Config("at least one --q value is required".into()));
    }
    for &q in &grid.q {
        if !(q.is_finite() && q > 0.0) {
            return Err(CliError::Config(format!("q must be positive, got {q}")));
        }
        if guarded && q < 1.0 {
            return Err(CliError::Config(format!(
                "inequality checks are guaranteed only for q >= 1, got {q}"
            )));
        }
    }
    Ok(())
}

pub fn read_state(path: &Path) -> Result<DensityMatrix, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Io(path.display().to_string(), e))?;
    let matrix: ComplexMatrix = serde_json::from_str(&text)?;
    Ok(validate_density(matrix)?)
}

fn pad_to(rho: DensityMatrix, dim: usize) -> Result<DensityMatrix, CliError> {
    if rho.dim() == dim {
        Ok(rho)
    } else {
        Ok(zero_pad(&rho, dim)?)
    }
}

/// Rendered output of a command plus the number of violated checks.
pub struct Output {
    pub body: Vec<u8>,
    pub violations: usize,
}

fn json_body<T: Serialize>(value: &T) -> Result<Vec<u8>, CliError> {
    let mut body = serde_json::to_vec_pretty(value)?;
    body.push(b'\n');
    Ok(body)
}

fn suite_output(suite: &SuiteReport, format: OutputFormat) -> Result<Output, CliError> {
    let body = match format {
        OutputFormat::Json => json_body(suite)?,
        OutputFormat::Csv => {
            let mut buf = Vec::new();
            write_reports_csv(&suite.reports, &mut buf)?;
            buf
        }
    };
    Ok(Output {
        body,
        violations: suite.aggregate.violations,
    })
}

pub fn emit(output: &Output, path: Option<&Path>) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, &output.body).map_err(|e| CliError::Io(p.display().to_string(), e)),
        None => std::io::stdout()
            .write_all(&output.body)
            .map_err(|e| CliError::Io("stdout".into(), e)),
    }
}

pub fn cmd_sample(args: &SampleArgs) -> Result<Output, CliError> {
    if args.dim < 2 {
        return Err(CliError::Config("--dim must be at least 2".into()));
    }
    let rank = args.rank.unwrap_or(args.dim);
    let rho = ginibre_density(args.dim, rank, args.common.seed)?;
    Ok(Output {
        body: json_body(&rho)?,
        violations: 0,
    })
}

/// Quantum subadditivity and Araki–Lieb on the block marginals, and
/// tomographic subadditivity under `trials` Haar unitaries.
pub fn run_check(args: &CheckArgs) -> Result<SuiteReport, CliError> {
    let start = Instant::now();
    validate_grid(&args.grid, true)?;
    let rho = read_state(&args.input)?;
    let dim = rho.dim();
    let (padded, shapes) = plan_shapes(dim, args.grid.shape.as_deref())?;
    let rho = pad_to(rho, padded)?;

    let unitaries: Vec<(u64, UnitaryMatrix)> = (0..args.trials as u64)
        .into_par_iter()
        .map(|i| {
            let seed = stream_seed(args.common.seed, i);
            Ok((seed, haar_unitary(padded, seed)?))
        })
        .collect::<Result<_, CliError>>()?;

    let mut reports = Vec::new();
    for &shape in &shapes {
        reports.push(check_araki_lieb(&rho, shape)?);
        for &q in &args.grid.q {
            reports.push(check_quantum_subadditivity(&rho, shape, q)?);
        }
        let tomographic: Vec<Vec<InequalityReport>> = unitaries
            .par_iter()
            .map(|(seed, u)| {
                let scheme = LabelScheme::Pair { n: shape.n, m: shape.m };
                let t = tomogram(&rho, u, scheme, UnitarySource::haar(*seed))?;
                args.grid
                    .q
                    .iter()
                    .map(|&q| Ok(check_tomogram_subadditivity(&t, shape, q)?.with_seed(*seed)))
                    .collect::<Result<Vec<_>, CliError>>()
            })
            .collect::<Result<_, CliError>>()?;
        reports.extend(tomographic.into_iter().flatten());
    }

    let config = RunConfig {
        command: "check",
        dim,
        padded_dim: padded,
        shapes,
        q_values: args.grid.q.clone(),
        trials: args.trials,
        seed: args.common.seed,
        rank: None,
        input: Some(args.input.display().to_string()),
    };
    Ok(SuiteReport::new(config, reports, start.elapsed()))
}

pub fn cmd_check(args: &CheckArgs) -> Result<(SuiteReport, Output), CliError> {
    let suite = run_check(args)?;
    let output = suite_output(&suite, args.format)?;
    Ok((suite, output))
}

/// Per trial, state and Haar unitary are drawn from `stream_seed(seed, trial)`
/// and `stream_seed(trial_seed, 0)`. Each (trial, shape) cell yields
/// quantum subadditivity for every q, one Araki–Lieb report and one
/// unitary-subadditivity (`I(u) ≥ 0`) report.
pub fn run_sweep(args: &SweepArgs) -> Result<SuiteReport, CliError> {
    let start = Instant::now();
    validate_grid(&args.grid, true)?;
    if args.dim < 2 {
        return Err(CliError::Config("--dim must be at least 2".into()));
    }
    if args.trials == 0 {
        return Err(CliError::Config("--trials must be at least 1".into()));
    }
    let rank = args.rank.unwrap_or(args.dim);
    let (padded, shapes) = plan_shapes(args.dim, args.grid.shape.as_deref())?;

    let per_trial: Vec<Vec<InequalityReport>> = (0..args.trials as u64)
        .into_par_iter()
        .map(|trial| {
            let seed = stream_seed(args.common.seed, trial);
            let rho = pad_to(validate_density(ginibre_density(args.dim, rank, seed)?)?, padded)?;
            let u = haar_unitary(padded, stream_seed(seed, 0))?;
            let mut out = Vec::with_capacity(shapes.len() * (args.grid.q.len() + 2));
            for &shape in &shapes {
                for &q in &args.grid.q {
                    out.push(check_quantum_subadditivity(&rho, shape, q)?.with_seed(seed));
                }
                out.push(check_araki_lieb(&rho, shape)?.with_seed(seed));
                out.push(
                    check_unitary_subadditivity(&rho, &u, shape)?
                        .with_seed(seed)
                        .with_unitary_label("haar"),
                );
            }
            Ok(out)
        })
        .collect::<Result<_, CliError>>()?;

    let config = RunConfig {
        command: "sweep",
        dim: args.dim,
        padded_dim: padded,
        shapes,
        q_values: args.grid.q.clone(),
        trials: args.trials,
        seed: args.common.seed,
        rank: Some(rank),
        input: None,
    };
    Ok(SuiteReport::new(config, per_trial.into_iter().flatten().collect(), start.elapsed()))
}

pub fn cmd_sweep(args: &SweepArgs) -> Result<(SuiteReport, Output), CliError> {
    let suite = run_sweep(args)?;
    let output = suite_output(&suite, args.format)?;
    Ok((suite, output))
}

#[derive(Debug, Serialize)]
pub struct MinimizeReport {
    pub shape: BipartitionShape,
    pub dim: usize,
    pub padded_dim: usize,
    /// `S(ρ)`.
    pub entropy: f64,
    #[serde(flatten)]
    pub result: OptimizationResult,
    /// Information with diagonalizing local transforms.
    pub mutual_information: f64,
    /// `Σ(u₀) − I_q`, reported without interpretation.
    pub sigma_minus_mutual_information: f64,
    pub best_restart: usize,
    pub seed: u64,
}

pub fn run_minimize(args: &MinimizeArgs) -> Result<MinimizeReport, CliError> {
    if args.restarts == 0 || args.max_iters == 0 || !(args.tol > 0.0) {
        return Err(CliError::Config("--restarts, --max-iters and --tol must be positive".into()));
    }
    let rho = read_state(&args.input)?;
    let dim = rho.dim();
    let (padded, shape) = balanced_shape(dim, args.shape.as_deref())?;
    let rho = pad_to(rho, padded)?;
    let config = OptimizerConfig {
        restarts: args.restarts,
        max_iters: args.max_iters,
        tol: args.tol,
        seed: args.common.seed,
    };
    let result = minimize_sigma(&rho, shape, &config)?;
    let local = mutual_information_bipartite(&rho, shape)?;
    Ok(MinimizeReport {
        shape,
        dim,
        padded_dim: padded,
        entropy: von_neumann_entropy(&rho),
        mutual_information: local.information.value,
        sigma_minus_mutual_information: result.sigma - local.information.value,
        best_restart: result.best_restart,
        seed: args.common.seed,
        result,
    })
}

pub fn cmd_minimize(args: &MinimizeArgs) -> Result<(MinimizeReport, Output), CliError> {
    let report = run_minimize(args)?;
    let body = json_body(&report)?;
    Ok((report, Output { body, violations: 0 }))
}

#[derive(Debug, Serialize)]
pub struct EntropyRow {
    pub q: f64,
    /// `H_q` of the whole tomogram.
    pub joint: f64,
    pub marginal_a: f64,
    pub marginal_b: f64,
    /// Entropy of the conditioning variable: the column marginal, or the
    /// spin-sign split `Ω₁` for spin-3/2 labels.
    pub conditioning: f64,
    /// `H_q(A|B) = joint − conditioning`.
    pub conditional: f64,
    /// `joint − (conditional + conditioning)`.
    pub chain_residual: f64,
    /// `marginal_a + marginal_b − joint`.
    pub subadditivity_margin: f64,
}

#[derive(Debug, Serialize)]
pub struct Omegas {
    pub omega1: Vec<f64>,
    pub omega2: Vec<f64>,
}

#[derive(Debug, Serialize)]
pub struct TomogramReport {
    pub dim: usize,
    pub padded_dim: usize,
    pub shape: BipartitionShape,
    pub tomogram: Tomogram,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub omegas: Option<Omegas>,
    pub entropies: Vec<EntropyRow>,
}

fn resolve_unitary(spec: &str, dim: usize, seed: u64) -> Result<(UnitaryMatrix, UnitarySource), CliError> {
    match spec {
        "identity" => Ok((UnitaryMatrix::identity(dim), UnitarySource::identity())),
        "haar" => Ok((haar_unitary(dim, seed)?, UnitarySource::haar(seed))),
        path => {
            let text = fs::read_to_string(path).map_err(|e| CliError::Io(path.to_string(), e))?;
            let matrix: ComplexMatrix = serde_json::from_str(&text)?;
            let u = UnitaryMatrix::new(matrix)?;
            if u.dim() != dim {
                return Err(entropic::Error::DimensionMismatch { left: dim, right: u.dim() }.into());
            }
            let source = UnitarySource::Matrix(u.matrix().clone());
            Ok((u, source))
        }
    }
}

pub fn run_tomogram(args: &TomogramArgs) -> Result<TomogramReport, CliError> {
    validate_grid(&args.grid, false)?;
    let rho = read_state(&args.input)?;
    let dim = rho.dim();
    let (padded, shape) = balanced_shape(dim, args.grid.shape.as_deref())?;
    let rho = pad_to(rho, padded)?;
    let (u, source) = resolve_unitary(&args.unitary, padded, args.common.seed)?;
    let scheme = match args.labels {
        Labels::Linear => LabelScheme::Linear,
        Labels::Spin => LabelScheme::Spin,
    };
    let t = tomogram(&rho, &u, scheme, source)?;
    let spin32 = scheme == LabelScheme::Spin && padded == 4 && shape == BipartitionShape::new(2, 2)?;

    let joint = reshape_joint(&t.probs, shape)?;
    let (first, second) = if spin32 {
        let (o1, o2) = qudit32_omegas(&t)?;
        (o1, o2)
    } else {
        (marginal_a(&joint), marginal_b(&joint))
    };

    let mut entropies = Vec::with_capacity(args.grid.q.len());
    for &q in &args.grid.q {
        let h_joint = tomographic_q_entropy(&t, q)?;
        let h_a = tsallis_entropy(&first, q)?;
        let h_b = tsallis_entropy(&second, q)?;
        let (conditional, conditioning) = if spin32 {
            (qudit32_conditional_q_entropy(&t, q)?, h_a)
        } else {
            (conditional_entropy_q(&joint, q)?, h_b)
        };
        entropies.push(EntropyRow {
            q,
            joint: h_joint,
            marginal_a: h_a,
            marginal_b: h_b,
            conditioning,
            conditional,
            chain_residual: h_joint - (conditional + conditioning),
            subadditivity_margin: h_a + h_b - h_joint,
        });
    }

    Ok(TomogramReport {
        dim,
        padded_dim: padded,
        shape,
        omegas: spin32.then(|| Omegas {
            omega1: first.into_vec(),
            omega2: second.into_vec(),
        }),
        tomogram: t,
        entropies,
    })
}

#[derive(Serialize)]
struct EntropyCsvRow {
    q: f64,
    joint: f64,
    marginal_a: f64,
    marginal_b: f64,
    conditioning: f64,
    conditional: f64,
    chain_residual: f64,
    subadditivity_margin: f64,
}

pub fn cmd_tomogram(args: &TomogramArgs) -> Result<(TomogramReport, Output), CliError> {
    let report = run_tomogram(args)?;
    let body = match args.format {
        OutputFormat::Json => json_body(&report)?,
        OutputFormat::Csv => {
            let mut writer = csv::Writer::from_writer(Vec::new());
            for row in &report.entropies {
                writer.serialize(EntropyCsvRow {
                    q: row.q,
                    joint: row.joint,
                    marginal_a: row.marginal_a,
                    marginal_b: row.marginal_b,
                    conditioning: row.conditioning,
                    conditional: row.conditional,
                    chain_residual: row.chain_residual,
                    subadditivity_margin: row.subadditivity_margin,
                })?;
            }
            writer
                .into_inner()
                .map_err(|e| CliError::Io("csv buffer".into(), e.into_error()))?
        }
    };
    Ok((report, Output { body, violations: 0 }))
}
