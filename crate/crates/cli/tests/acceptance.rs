//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits with
//! a non-zero status if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use entropic::random::{ginibre_density_with, haar_unitary_with, rng_from_seed};
use entropic::{
    block_marginal_first, block_marginal_second, check_araki_lieb, check_classical_subadditivity,
    check_quantum_subadditivity, check_tomogram_subadditivity, conditional_entropy_q,
    conditional_entropy_shannon, conjugate, haar_unitary, information_i, marginal_b,
    minimize_sigma, mutual_information_bipartite, quantum_q_entropy, qudit32_conditional_q_entropy,
    qudit32_omegas, reshape_joint, shannon_entropy, stream_seed, tomogram, tsallis_entropy,
    validate_density, von_neumann_entropy, zero_pad, BipartitionShape, ComplexMatrix,
    DensityMatrix, LabelScheme, OptimizerConfig, ProbabilityVector, UnitarySource,
};
use rand::Rng;
use rayon::prelude::*;

const LN2: f64 = std::f64::consts::LN_2;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

/// Every divisor pair `n · m = dim`, trivial factors included.
fn all_shapes(dim: usize) -> Vec<BipartitionShape> {
    (1..=dim)
        .filter(|n| dim % n == 0)
        .map(|n| BipartitionShape::new(n, dim / n).unwrap())
        .collect()
}

/// Mixture of flat, peaked and sparse distributions.
fn random_probs(len: usize, seed: u64) -> ProbabilityVector {
    let mut rng = rng_from_seed(seed);
    let power = [1.0, 4.0, 16.0][rng.random_range(0..3)];
    let sparsity: f64 = rng.random_range(0.0..0.5);
    let mut p: Vec<f64> = (0..len)
        .map(|_| {
            if rng.random::<f64>() < sparsity {
                0.0
            } else {
                rng.random::<f64>().powf(power)
            }
        })
        .collect();
    if p.iter().all(|&x| x == 0.0) {
        p[rng.random_range(0..len)] = 1.0;
    }
    let total: f64 = p.iter().sum();
    ProbabilityVector::new(p.into_iter().map(|x| x / total).collect()).unwrap()
}

fn random_state(dim: usize, seed: u64) -> DensityMatrix {
    let mut rng = rng_from_seed(seed);
    let rank = rng.random_range(1..=dim);
    validate_density(ginibre_density_with(dim, rank, &mut rng).unwrap()).unwrap()
}

fn worst(values: impl ParallelIterator<Item = f64>) -> f64 {
    values.reduce(|| f64::INFINITY, f64::min)
}

fn largest(values: impl ParallelIterator<Item = f64>) -> f64 {
    values.reduce(|| 0.0, f64::max)
}

fn classical_subadditivity() -> Outcome {
    let start = Instant::now();
    let qs = [1.0, 1.5, 2.0, 3.0];
    let mut min_margin = f64::INFINITY;
    let mut checks = 0usize;
    for len in [4usize, 6, 8, 12] {
        let shapes = all_shapes(len);
        checks += 10_000 * shapes.len() * qs.len();
        let m = worst((0..10_000u64).into_par_iter().map(|i| {
            let p = random_probs(len, stream_seed(1, i * 16 + len as u64));
            let mut lo = f64::INFINITY;
            for &shape in &shapes {
                let joint = reshape_joint(&p, shape).unwrap();
                for q in qs {
                    lo = lo.min(check_classical_subadditivity(&joint, q).unwrap().margin);
                }
            }
            lo
        }));
        min_margin = min_margin.min(m);
    }
    let elapsed = start.elapsed();
    outcome(
        min_margin >= -1e-9 && elapsed <= Duration::from_secs(60),
        format!("{checks} checks, worst margin {min_margin:.3e}, {elapsed:.2?}"),
    )
}

fn chain_relations() -> Outcome {
    let lens = [4usize, 6, 8, 9, 12, 16];
    let results: Vec<(f64, f64)> = (0..10_000u64)
        .into_par_iter()
        .map(|i| {
            let seed = stream_seed(2, i);
            let len = lens[(seed % lens.len() as u64) as usize];
            let shapes = all_shapes(len);
            let shape = shapes[((seed >> 8) % shapes.len() as u64) as usize];
            let p = random_probs(len, seed);
            let joint = reshape_joint(&p, shape).unwrap();
            let hb = shannon_entropy(&marginal_b(&joint));
            let average = conditional_entropy_shannon(&joint);
            let shannon_gap = (average - (shannon_entropy(&p) - hb)).abs();
            let mut deformed = 0.0f64;
            for q in [1.0, 1.5, 2.0, 3.0] {
                let h = tsallis_entropy(&p, q).unwrap();
                let cond = conditional_entropy_q(&joint, q).unwrap();
                let hbq = tsallis_entropy(&marginal_b(&joint), q).unwrap();
                deformed = deformed.max((h - (cond + hbq)).abs());
            }
            (shannon_gap, deformed)
        })
        .collect();
    let shannon = results.iter().map(|r| r.0).fold(0.0, f64::max);
    let deformed = results.iter().map(|r| r.1).fold(0.0, f64::max);
    outcome(
        shannon <= 1e-10 && deformed <= 1e-12,
        format!("average vs difference {shannon:.3e}, deformed residual {deformed:.3e}"),
    )
}

fn ensemble(dim: usize) -> Vec<DensityMatrix> {
    (0..1_000u64)
        .into_par_iter()
        .map(|i| random_state(dim, stream_seed(3 + dim as u64, i)))
        .collect()
}

fn quantum_subadditivity() -> Outcome {
    let start = Instant::now();
    let mut min_margin = f64::INFINITY;
    for dim in [4usize, 6, 8] {
        let states = ensemble(dim);
        let shapes = BipartitionShape::factorizations(dim);
        let m = worst(states.par_iter().map(|rho| {
            let mut lo = f64::INFINITY;
            for &shape in &shapes {
                for q in [1.0, 2.0, 3.0] {
                    lo = lo.min(check_quantum_subadditivity(rho, shape, q).unwrap().margin);
                }
            }
            lo
        }));
        min_margin = min_margin.min(m);
    }
    let elapsed = start.elapsed();
    outcome(
        min_margin >= -1e-8 && elapsed <= Duration::from_secs(300),
        format!("worst margin {min_margin:.3e}, {elapsed:.2?}"),
    )
}

fn araki_lieb() -> Outcome {
    let mut min_margin = f64::INFINITY;
    for dim in [4usize, 6, 8] {
        let states = ensemble(dim);
        let shapes = BipartitionShape::factorizations(dim);
        let m = worst(states.par_iter().map(|rho| {
            shapes
                .iter()
                .map(|&s| check_araki_lieb(rho, s).unwrap().margin)
                .fold(f64::INFINITY, f64::min)
        }));
        min_margin = min_margin.min(m);
    }
    let two = BipartitionShape::new(2, 2).unwrap();
    let qutrits = worst((0..1_000u64).into_par_iter().map(|i| {
        let rho = zero_pad(&random_state(3, stream_seed(30, i)), 4).unwrap();
        check_araki_lieb(&rho, two).unwrap().margin
    }));
    min_margin = min_margin.min(qutrits);
    let bell = check_araki_lieb(&bell(), two).unwrap().margin;
    outcome(
        min_margin >= -1e-8 && bell.abs() <= 1e-8,
        format!("worst margin {min_margin:.3e}, Bell margin {bell:.3e}"),
    )
}

fn bell() -> DensityMatrix {
    validate_density(ComplexMatrix::from_real_rows(&[
        &[0.5, 0.0, 0.0, 0.5],
        &[0.0, 0.0, 0.0, 0.0],
        &[0.0, 0.0, 0.0, 0.0],
        &[0.5, 0.0, 0.0, 0.5],
    ]))
    .unwrap()
}

fn anchors() -> Outcome {
    let two = BipartitionShape::new(2, 2).unwrap();
    let mut failures = Vec::new();
    let mut expect = |label: &str, got: f64, want: f64, tol: f64| {
        if (got - want).abs() > tol {
            failures.push(format!("{label}: {got} vs {want}"));
        }
    };

    let b = bell();
    expect("Bell S", von_neumann_entropy(&b), 0.0, 1e-9);
    expect("Bell S(R1)", von_neumann_entropy(&block_marginal_first(&b, two).unwrap()), LN2, 1e-9);
    expect("Bell S(R2)", von_neumann_entropy(&block_marginal_second(&b, two).unwrap()), LN2, 1e-9);
    expect("Bell MI", mutual_information_bipartite(&b, two).unwrap().information.value, 2.0 * LN2, 1e-9);

    let third = 1.0 / 3.0;
    let qutrit = zero_pad(&validate_density(ComplexMatrix::from_real_diagonal(&[third; 3])).unwrap(), 4).unwrap();
    let marginal_entropy = 0.6365142;
    for (label, r) in [
        ("R1", block_marginal_first(&qutrit, two).unwrap()),
        ("R2", block_marginal_second(&qutrit, two).unwrap()),
    ] {
        let diag = ComplexMatrix::from_real_diagonal(&[2.0 / 3.0, 1.0 / 3.0]);
        expect(label, r.matrix().max_abs_diff(&diag), 0.0, 1e-12);
        expect(label, von_neumann_entropy(&r), marginal_entropy, 1e-6);
    }
    let slack = check_quantum_subadditivity(&qutrit, two, 1.0).unwrap().margin;
    expect("qutrit slack", slack, 2.0 * marginal_entropy - 3f64.ln(), 1e-6);

    let h2 = tsallis_entropy(&ProbabilityVector::uniform(4), 2.0).unwrap();
    if h2 != 0.75 {
        failures.push(format!("uniform H2 {h2}"));
    }
    outcome(
        failures.is_empty(),
        if failures.is_empty() {
            "Bell, padded qutrit and uniform anchors reproduced".into()
        } else {
            failures.join("; ")
        },
    )
}

fn limits_and_invariances() -> Outcome {
    let per_state: Vec<(f64, f64, f64)> = [2usize, 3, 4, 6]
        .into_par_iter()
        .flat_map(|dim| {
            (0..100u64).into_par_iter().map(move |i| {
                let seed = stream_seed(60 + dim as u64, i);
                let rho = random_state(dim, seed);
                let s1 = von_neumann_entropy(&rho);
                let near_one = [1.0 - 1e-5, 1.0 + 1e-5]
                    .iter()
                    .map(|&q| (quantum_q_entropy(&rho, q).unwrap() - s1).abs())
                    .fold(0.0, f64::max);
                let u = haar_unitary(dim, stream_seed(seed, 1)).unwrap();
                let rotated = conjugate(&rho, &u).unwrap();
                let padded = zero_pad(&rho, dim + 2).unwrap();
                let mut unitary = 0.0f64;
                let mut padding = 0.0f64;
                for q in [0.5, 1.0, 1.5, 2.0, 3.0] {
                    let s = quantum_q_entropy(&rho, q).unwrap();
                    unitary = unitary.max((quantum_q_entropy(&rotated, q).unwrap() - s).abs());
                    padding = padding.max((quantum_q_entropy(&padded, q).unwrap() - s).abs());
                }
                (near_one, unitary, padding)
            })
        })
        .collect();
    let near_one = per_state.iter().map(|r| r.0).fold(0.0, f64::max);
    let unitary = per_state.iter().map(|r| r.1).fold(0.0, f64::max);
    let padding = per_state.iter().map(|r| r.2).fold(0.0, f64::max);
    outcome(
        near_one <= 1e-4 && unitary <= 1e-9 && padding <= 1e-10,
        format!("q→1 gap {near_one:.3e}, unitary {unitary:.3e}, padding {padding:.3e}"),
    )
}

fn information_nonnegativity() -> Outcome {
    let mut min_value = f64::INFINITY;
    for dim in [4usize, 6] {
        let shapes = BipartitionShape::factorizations(dim);
        let m = worst((0..100u64).into_par_iter().map(|i| {
            let seed = stream_seed(70 + dim as u64, i);
            let rho = random_state(dim, seed);
            let mut rng = rng_from_seed(stream_seed(seed, 1));
            let mut lo = f64::INFINITY;
            for _ in 0..1_000 {
                let u = haar_unitary_with(dim, &mut rng).unwrap();
                for &shape in &shapes {
                    lo = lo.min(information_i(&rho, &u, shape).unwrap().value);
                }
            }
            lo
        }));
        min_value = min_value.min(m);
    }
    outcome(min_value >= -1e-9, format!("minimum I(u) {min_value:.3e}"))
}

/// Partial traces written directly as index sums over `s = j·m + a`.
fn index_sum_marginals(rho: &ComplexMatrix, n: usize, m: usize) -> (ComplexMatrix, ComplexMatrix) {
    let mut first = ComplexMatrix::zeros(n).as_slice().to_vec();
    let mut second = ComplexMatrix::zeros(m).as_slice().to_vec();
    for j in 0..n {
        for k in 0..n {
            for a in 0..m {
                first[j * n + k] += rho[(j * m + a, k * m + a)];
            }
        }
    }
    for a in 0..m {
        for b in 0..m {
            for j in 0..n {
                second[a * m + b] += rho[(j * m + a, j * m + b)];
            }
        }
    }
    (
        ComplexMatrix::from_vec(n, first).unwrap(),
        ComplexMatrix::from_vec(m, second).unwrap(),
    )
}

fn oracle_equivalence() -> Outcome {
    let deviation = largest((2usize..=12).into_par_iter().flat_map(|dim| {
        let shapes = all_shapes(dim);
        (0..1_000u64).into_par_iter().map(move |i| {
            let rho = random_state(dim, stream_seed(80 + dim as u64, i));
            let mut d = 0.0f64;
            for &shape in &shapes {
                let (first, second) = index_sum_marginals(rho.matrix(), shape.n, shape.m);
                d = d.max(block_marginal_first(&rho, shape).unwrap().matrix().max_abs_diff(&first));
                d = d.max(block_marginal_second(&rho, shape).unwrap().matrix().max_abs_diff(&second));
            }
            d
        })
    }));
    outcome(deviation <= 1e-12, format!("max deviation {deviation:.3e} over all shapes with N ≤ 12"))
}

fn optimizer() -> Outcome {
    let config = OptimizerConfig::default();
    let mut failures = Vec::new();
    let mut worst_pure = 0.0f64;
    let mut slowest = Duration::ZERO;
    for dim in [4usize, 6] {
        let shape = BipartitionShape::factorizations(dim)[0];
        for i in 0..3u64 {
            let mut rng = rng_from_seed(stream_seed(90 + dim as u64, i));
            let rho = validate_density(ginibre_density_with(dim, 1, &mut rng).unwrap()).unwrap();
            let start = Instant::now();
            let result = minimize_sigma(&rho, shape, &config).unwrap();
            let elapsed = start.elapsed();
            slowest = slowest.max(elapsed);
            worst_pure = worst_pure.max(result.sigma);
            if result.sigma > 1e-4 || elapsed > Duration::from_secs(30) {
                failures.push(format!("pure dim {dim} #{i}: Σ {:.3e} in {elapsed:.2?}", result.sigma));
            }
        }
        let mixed = DensityMatrix::maximally_mixed(dim);
        let sigma = minimize_sigma(&mixed, shape, &config).unwrap().sigma;
        if (sigma - (dim as f64).ln()).abs() > 1e-9 {
            failures.push(format!("maximally mixed dim {dim}: Σ {sigma}"));
        }
    }
    let cat = validate_density(ComplexMatrix::from_real_diagonal(&[0.5, 0.0, 0.0, 0.5])).unwrap();
    let sigma = minimize_sigma(&cat, BipartitionShape::new(2, 2).unwrap(), &config).unwrap().sigma;
    if sigma > LN2 + 1e-4 {
        failures.push(format!("diag(1/2,0,0,1/2): Σ {sigma}"));
    }
    outcome(
        failures.is_empty(),
        if failures.is_empty() {
            format!("worst pure Σ {worst_pure:.3e}, slowest {slowest:.2?}, mixed = ln N, diagonal Σ {sigma:.6}")
        } else {
            failures.join("; ")
        },
    )
}

fn qudit32_suite() -> Outcome {
    let two = BipartitionShape::new(2, 2).unwrap();
    let per_pair: Vec<(f64, f64)> = (0..1_000u64)
        .into_par_iter()
        .map(|i| {
            let seed = stream_seed(100, i);
            let rho = random_state(4, seed);
            let u_seed = stream_seed(seed, 1);
            let u = haar_unitary(4, u_seed).unwrap();
            let t = tomogram(&rho, &u, LabelScheme::Spin, UnitarySource::haar(u_seed)).unwrap();
            let (omega1, _) = qudit32_omegas(&t).unwrap();
            let mut margin = f64::INFINITY;
            let mut residual = 0.0f64;
            for q in [1.0, 2.0, 3.0] {
                margin = margin.min(check_tomogram_subadditivity(&t, two, q).unwrap().margin);
                let joint = tsallis_entropy(&t.probs, q).unwrap();
                let split = qudit32_conditional_q_entropy(&t, q).unwrap() + tsallis_entropy(&omega1, q).unwrap();
                residual = residual.max((joint - split).abs());
            }
            (margin, residual)
        })
        .collect();
    let margin = per_pair.iter().map(|r| r.0).fold(f64::INFINITY, f64::min);
    let residual = per_pair.iter().map(|r| r.1).fold(0.0, f64::max);

    let w = ProbabilityVector::new(vec![0.1, 0.2, 0.3, 0.4]).unwrap();
    let t = entropic::Tomogram::from_probs(w, LabelScheme::Spin, UnitarySource::identity());
    let (o1, o2) = qudit32_omegas(&t).unwrap();
    let close = |a: &[f64], b: &[f64]| a.iter().zip(b).all(|(x, y)| (x - y).abs() <= 1e-12);
    let report = check_tomogram_subadditivity(&t, two, 2.0).unwrap();
    let conditional = qudit32_conditional_q_entropy(&t, 1.0).unwrap();
    let worked = close(o1.as_slice(), &[0.3, 0.7])
        && close(o2.as_slice(), &[0.4, 0.6])
        && (report.lhs - 0.70).abs() <= 1e-12
        && (report.rhs - 0.90).abs() <= 1e-12
        && (report.margin - 0.20).abs() <= 1e-12
        && (conditional - 0.66899).abs() <= 5e-6;
    outcome(
        margin >= -1e-9 && residual <= 1e-12 && worked,
        format!(
            "worst margin {margin:.3e}, chain residual {residual:.3e}, worked example {}",
            if worked { "reproduced" } else { "MISMATCH" }
        ),
    )
}

fn cli_determinism() -> Outcome {
    let dir = std::env::temp_dir().join(format!("entropic-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let run = |args: &[&str]| {
        Command::new(env!("CARGO_BIN_EXE_entropic"))
            .args(args)
            .output()
            .expect("binary runs")
    };
    let state = dir.join("rho.json");
    let sampled = run(&["sample", "--dim", "4", "--seed", "5"]);
    std::fs::write(&state, &sampled.stdout).unwrap();
    let state = state.to_str().unwrap().to_owned();

    let invocations: Vec<Vec<&str>> = vec![
        vec!["sample", "--dim", "6", "--rank", "2", "--seed", "5"],
        vec!["check", "--input", &state, "--seed", "5"],
        vec!["check", "--input", &state, "--seed", "5", "--format", "csv"],
        vec!["sweep", "--dim", "6", "--trials", "20", "--seed", "5"],
        vec!["sweep", "--dim", "4", "--trials", "20", "--seed", "5", "--format", "csv"],
        vec!["minimize", "--input", &state, "--seed", "5"],
        vec!["tomogram", "--input", &state, "--unitary", "haar", "--seed", "5", "--labels", "spin"],
        vec!["tomogram", "--input", &state, "--format", "csv"],
    ];
    let mut failures = Vec::new();
    for args in &invocations {
        let a = run(args);
        let b = run(args);
        if a.status.code() != Some(0) || a.stdout.is_empty() || a.stdout != b.stdout {
            failures.push(format!("not reproducible: {}", args.join(" ")));
        }
    }

    let corrupted = [
        ("trace", "{\"dim\":2,\"entries\":[[0.6,0.0],[0.0,0.0],[0.0,0.0],[0.5,0.0]]}"),
        ("hermitian", "{\"dim\":2,\"entries\":[[0.5,0.0],[0.2,0.0],[0.0,0.0],[0.5,0.0]]}"),
        ("negative", "{\"dim\":2,\"entries\":[[1.2,0.0],[0.0,0.0],[0.0,0.0],[-0.2,0.0]]}"),
        ("length", "{\"dim\":2,\"entries\":[[1.0,0.0]]}"),
        ("syntax", "{\"dim\":2,"),
    ];
    for (name, body) in corrupted {
        let path = dir.join(format!("{name}.json"));
        std::fs::write(&path, body).unwrap();
        let code = run(&["check", "--input", path.to_str().unwrap()]).status.code();
        if code != Some(2) {
            failures.push(format!("{name}: exit {code:?}, expected 2"));
        }
    }
    let missing = run(&["tomogram", "--input", "/nonexistent/rho.json"]).status.code();
    if missing != Some(2) {
        failures.push(format!("missing file: exit {missing:?}"));
    }
    let _ = std::fs::remove_dir_all(&dir);
    outcome(
        failures.is_empty(),
        if failures.is_empty() {
            format!("{} invocations byte-identical, corrupted inputs exit 2", invocations.len())
        } else {
            failures.join("; ")
        },
    )
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("classical q-subadditivity", classical_subadditivity),
        ("chain relations", chain_relations),
        ("quantum q-subadditivity", quantum_subadditivity),
        ("Araki-Lieb", araki_lieb),
        ("hand-derived anchors", anchors),
        ("limits and invariances", limits_and_invariances),
        ("information nonnegativity", information_nonnegativity),
        ("block marginal oracle", oracle_equivalence),
        ("optimizer", optimizer),
        ("qudit-3/2 tomograms", qudit32_suite),
        ("CLI determinism and exit codes", cli_determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            outcome(false, format!("panicked: {msg}"))
        });
        if !result.pass {
            failed += 1;
        }
        println!(
            "[{}] {:>2} {name}: {}",
            if result.pass { "PASS" } else { "FAIL" },
            i + 1,
            result.detail
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
