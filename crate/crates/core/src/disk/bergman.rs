use std::f64::consts::{PI, TAU};

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::automorphism::{in_open_disk, CocycleConfig, DiskAutomorphism};
use crate::error::{Error, Result};

/// Samples per independently seeded chunk; fixed so results do not depend
/// on the thread count.
const CHUNK: usize = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BergmanOptions {
    pub samples: usize,
    pub seed: u64,
    pub kappa: u32,
    /// Every sampled a is multiplied by this unit number.
    pub rotate: Complex64,
}

impl BergmanOptions {
    pub fn new(samples: usize, seed: u64, kappa: u32) -> Self {
        BergmanOptions { samples, seed, kappa, rotate: Complex64::new(1.0, 0.0) }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BergmanEstimate {
    pub value: Complex64,
    pub stderr: f64,
    pub samples: usize,
    /// Standard error above 10% of |value|.
    pub non_convergent: bool,
}

impl BergmanEstimate {
    fn from_sums(sum: Complex64, sum_sq: f64, n: usize) -> Self {
        let nf = n as f64;
        let mean = sum / nf;
        let var = (sum_sq / nf - mean.norm_sqr()).max(0.0);
        let stderr = (var / nf).sqrt();
        BergmanEstimate { value: mean, stderr, samples: n, non_convergent: stderr > 0.1 * mean.norm() }
    }
}

/// 1/(1 − x ȳ)², the reproducing kernel of the disk for normalised area.
pub fn bergman_closed_form(x: Complex64, y: Complex64) -> Complex64 {
    let d = 1.0 - x * y.conj();
    1.0 / (d * d)
}

fn check_inputs(points: &[Complex64], kappa: u32) -> Result<CocycleConfig> {
    if points.iter().any(|&p| !in_open_disk(p)) {
        return Err(Error::PointOutsideDomain);
    }
    if kappa < 2 {
        return Err(Error::InvalidArgument("the group integral diverges for kappa < 2".into()));
    }
    CocycleConfig::new(kappa)
}

/// Coherent states [π(g)f₀](x) = m(g⁻¹, x)^κ at each point, and the weight
/// π (1 − |a|²)^{−2} turning uniform area sampling of a into Haar measure.
fn coherent(g: &DiskAutomorphism, points: &[Complex64], cocycle: CocycleConfig, out: &mut [Complex64]) -> f64 {
    let inv = g.inverse();
    for (o, &x) in out.iter_mut().zip(points) {
        *o = cocycle.factor(&inv, x);
    }
    let s = 1.0 - g.a().norm_sqr();
    PI / (s * s)
}

fn sample_g(rng: &mut ChaCha8Rng, rotate: Complex64) -> DiskAutomorphism {
    let r = rng.random::<f64>().sqrt();
    let a = Complex64::from_polar(r, TAU * rng.random::<f64>()) * rotate;
    let omega = Complex64::from_polar(1.0, TAU * rng.random::<f64>());
    // r < 1 because random::<f64>() < 1.
    DiskAutomorphism::new(a, omega).expect("sampled inside the disk")
}

/// Monte Carlo estimates of K(x_i, x_j) = ∫_G [π_g f₀](x_i) conj([π_g f₀](x_j)) dg
/// for all pairs, from one sample stream. Returned row-major.
pub fn bergman_gram(points: &[Complex64], opts: &BergmanOptions) -> Result<Vec<Vec<BergmanEstimate>>> {
    let cocycle = check_inputs(points, opts.kappa)?;
    if opts.samples == 0 {
        return Err(Error::InvalidArgument("need at least one sample".into()));
    }
    let k = points.len();
    let chunks = opts.samples.div_ceil(CHUNK);
    let partial: Vec<(Vec<Complex64>, Vec<f64>)> = (0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
            rng.set_stream(chunk as u64);
            let count = CHUNK.min(opts.samples - chunk * CHUNK);
            let mut sum = vec![Complex64::new(0.0, 0.0); k * k];
            let mut sum_sq = vec![0.0; k * k];
            let mut v = vec![Complex64::new(0.0, 0.0); k];
            for _ in 0..count {
                let g = sample_g(&mut rng, opts.rotate);
                let w = coherent(&g, points, cocycle, &mut v);
                for i in 0..k {
                    for j in 0..k {
                        let f = v[i] * v[j].conj() * w;
                        sum[i * k + j] += f;
                        sum_sq[i * k + j] += f.norm_sqr();
                    }
                }
            }
            (sum, sum_sq)
        })
        .collect();
    let mut sum = vec![Complex64::new(0.0, 0.0); k * k];
    let mut sum_sq = vec![0.0; k * k];
    for (s, q) in &partial {
        for i in 0..k * k {
            sum[i] += s[i];
            sum_sq[i] += q[i];
        }
    }
    Ok((0..k)
        .map(|i| (0..k).map(|j| BergmanEstimate::from_sums(sum[i * k + j], sum_sq[i * k + j], opts.samples)).collect())
        .collect())
}

pub fn bergman_kernel(x: Complex64, y: Complex64, opts: &BergmanOptions) -> Result<BergmanEstimate> {
    Ok(bergman_gram(&[x, y], opts)?[0][1])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridOptions {
    pub radii: usize,
    pub angles: usize,
    pub omegas: usize,
    pub kappa: u32,
}

/// Deterministic midpoint rule over radius × angle of a and ω; the stderr
/// field is zero.
pub fn bergman_kernel_grid(x: Complex64, y: Complex64, opts: &GridOptions) -> Result<BergmanEstimate> {
    let cocycle = check_inputs(&[x, y], opts.kappa)?;
    if opts.radii == 0 || opts.angles == 0 || opts.omegas == 0 {
        return Err(Error::InvalidArgument("grid sizes must be positive".into()));
    }
    let (dr, dt, dw) = (1.0 / opts.radii as f64, TAU / opts.angles as f64, TAU / opts.omegas as f64);
    let mut v = [Complex64::new(0.0, 0.0); 2];
    let mut sum = Complex64::new(0.0, 0.0);
    for i in 0..opts.radii {
        let r = (i as f64 + 0.5) * dr;
        for j in 0..opts.angles {
            let a = Complex64::from_polar(r, (j as f64 + 0.5) * dt);
            for l in 0..opts.omegas {
                let w = Complex64::from_polar(1.0, (l as f64 + 0.5) * dw);
                let g = DiskAutomorphism::new(a, w)?;
                // Weight is π/(1−|a|²)² per unit of normalised area.
                let haar = coherent(&g, &[x, y], cocycle, &mut v) / PI;
                sum += v[0] * v[1].conj() * haar * r * dr * dt * dw / TAU;
            }
        }
    }
    Ok(BergmanEstimate {
        value: sum,
        stderr: 0.0,
        samples: opts.radii * opts.angles * opts.omegas,
        non_convergent: false,
    })
}

/// Smallest eigenvalue of the Hermitian part of a Gram matrix.
pub fn gram_min_eigenvalue(gram: &[Vec<BergmanEstimate>]) -> f64 {
    let k = gram.len();
    let m = DMatrix::from_fn(k, k, |i, j| (gram[i][j].value + gram[j][i].value.conj()) * 0.5);
    m.symmetric_eigenvalues().iter().cloned().fold(f64::INFINITY, f64::min)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn rejects_bad_inputs() {
        let o = BergmanOptions::new(10, 1, 2);
        assert_eq!(bergman_kernel(c(1.0, 0.0), c(0.0, 0.0), &o), Err(Error::PointOutsideDomain));
        let o1 = BergmanOptions::new(10, 1, 1);
        assert!(matches!(bergman_kernel(c(0.1, 0.0), c(0.0, 0.0), &o1), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn hermitian_under_matched_streams() {
        let o = BergmanOptions::new(20_000, 5, 2);
        let (x, y) = (c(0.3, 0.1), c(-0.2, 0.4));
        let kxy = bergman_kernel(x, y, &o).unwrap();
        let kyx = bergman_kernel(y, x, &o).unwrap();
        assert_eq!(kxy.value, kyx.value.conj());
    }

    #[test]
    fn estimate_matches_closed_form_times_pi() {
        let o = BergmanOptions::new(200_000, 9, 2);
        let (x, y) = (c(0.2, -0.1), c(0.1, 0.3));
        let k = bergman_kernel(x, y, &o).unwrap();
        let want = bergman_closed_form(x, y) * PI;
        assert!((k.value - want).norm() < 4.0 * k.stderr, "{k:?} vs {want}");
        assert!(!k.non_convergent);
    }

    #[test]
    fn grid_agrees_with_closed_form() {
        let g = GridOptions { radii: 400, angles: 64, omegas: 2, kappa: 2 };
        let (x, y) = (c(0.3, 0.0), c(0.0, 0.2));
        let k = bergman_kernel_grid(x, y, &g).unwrap();
        let want = bergman_closed_form(x, y) * PI;
        assert!((k.value - want).norm() / want.norm() < 1e-3, "{:?} vs {want}", k.value);
    }

    #[test]
    fn gram_is_positive_semidefinite() {
        let o = BergmanOptions::new(30_000, 2, 2);
        let pts = [c(0.1, 0.2), c(-0.4, 0.1), c(0.3, -0.5)];
        let g = bergman_gram(&pts, &o).unwrap();
        assert!(gram_min_eigenvalue(&g) > -1e-9);
        for (i, row) in g.iter().enumerate() {
            assert_eq!(row[i].value.im, 0.0);
            assert!(row[i].value.re > 0.0);
        }
    }
}
