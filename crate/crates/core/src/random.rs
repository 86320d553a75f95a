//! Seeded sampling of Haar unitaries and Ginibre density matrices.
//!
//! Every sampler draws from `ChaCha8Rng`, whose output stream is fixed by
//! its seed on every platform. Independent streams for trials and restarts
//! come from [`stream_seed`].

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, UnitaryMatrix};

pub type SeededRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of sub-stream `index` under `base`:
/// `splitmix64(splitmix64(base) ^ splitmix64(index + 1))`.
pub fn stream_seed(base: u64, index: u64) -> u64 {
    splitmix64(splitmix64(base) ^ splitmix64(index.wrapping_add(1)))
}

/// Complex standard normal with `E|z|² = 1`.
fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// Haar-distributed unitary from the QR factorization of a complex Ginibre
/// matrix. Gram–Schmidt (applied twice for orthogonality) produces `R` with a
/// positive real diagonal, which is exactly the phase normalization that
/// makes `Q` Haar distributed.
pub fn haar_unitary_with<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Result<UnitaryMatrix> {
    if dim == 0 {
        return Err(Error::InvalidParameter("unitary dimension must be positive".into()));
    }
    loop {
        let mut cols: Vec<Vec<Complex64>> = (0..dim)
            .map(|_| (0..dim).map(|_| complex_gaussian(rng)).collect())
            .collect();
        if orthonormalize(&mut cols) {
            let mut m = ComplexMatrix::zeros(dim);
            for (j, col) in cols.iter().enumerate() {
                for (i, &z) in col.iter().enumerate() {
                    m[(i, j)] = z;
                }
            }
            return Ok(UnitaryMatrix::new_unchecked(m));
        }
    }
}

/// Deterministic in `(dim, seed)`.
pub fn haar_unitary(dim: usize, seed: u64) -> Result<UnitaryMatrix> {
    haar_unitary_with(dim, &mut rng_from_seed(seed))
}

/// Returns false if the columns are numerically dependent.
fn orthonormalize(cols: &mut [Vec<Complex64>]) -> bool {
    for j in 0..cols.len() {
        let (done, rest) = cols.split_at_mut(j);
        let v = &mut rest[0];
        for _ in 0..2 {
            for q in done.iter() {
                let proj: Complex64 = q.iter().zip(v.iter()).map(|(a, b)| a.conj() * b).sum();
                for (vi, qi) in v.iter_mut().zip(q) {
                    *vi -= proj * qi;
                }
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-10 {
            return false;
        }
        for vi in v.iter_mut() {
            *vi /= norm;
        }
    }
    true
}

/// `G G† / Tr(G G†)` with `G` a `dim × rank` complex Ginibre matrix.
/// Full rank gives the Hilbert–Schmidt measure on density matrices.
pub fn ginibre_density_with<R: Rng + ?Sized>(
    dim: usize,
    rank: usize,
    rng: &mut R,
) -> Result<ComplexMatrix> {
    if dim == 0 || rank == 0 || rank > dim {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= rank <= dim, got dim {dim}, rank {rank}"
        )));
    }
    let g: Vec<Complex64> = (0..dim * rank).map(|_| complex_gaussian(rng)).collect();
    let mut m = ComplexMatrix::zeros(dim);
    for i in 0..dim {
        for j in i..dim {
            let z: Complex64 = (0..rank)
                .map(|k| g[i * rank + k] * g[j * rank + k].conj())
                .sum();
            m[(i, j)] = z;
            m[(j, i)] = z.conj();
        }
    }
    let trace = m.trace().re;
    for i in 0..dim {
        m[(i, i)] = Complex64::new(m[(i, i)].re, 0.0);
    }
    Ok(m.scale(Complex64::new(1.0 / trace, 0.0)))
}

pub fn ginibre_density(dim: usize, rank: usize, seed: u64) -> Result<ComplexMatrix> {
    ginibre_density_with(dim, rank, &mut rng_from_seed(seed))
}
