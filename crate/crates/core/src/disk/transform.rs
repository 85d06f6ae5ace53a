use num_complex::Complex64;
use rustfft::FftPlanner;

use super::automorphism::{in_open_disk, CocycleConfig, DiskAutomorphism};
use super::boundary::BoundaryFunction;
use crate::error::{Error, Result};

/// Horner evaluation of Σ c_m z^m.
pub fn polynomial_eval(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c)
}

/// Discrete Fourier coefficients ĉ_m = (1/N) Σ f_k e^{−imθ_k}, m = 0..N−1.
fn spectrum(f: &BoundaryFunction) -> Vec<Complex64> {
    let n = f.values().len();
    let mut buf = f.values().to_vec();
    FftPlanner::new().plan_fft_forward(n).process(&mut buf);
    buf.iter_mut().for_each(|c| *c /= n as f64);
    buf
}

/// Signed frequency of FFT bin k.
fn frequency(k: usize, n: usize) -> i64 {
    if 2 * k < n {
        k as i64
    } else {
        k as i64 - n as i64
    }
}

/// Trigonometric interpolant at angle θ. For even N the Nyquist mode is split
/// evenly between ±N/2 so real data interpolate to real values.
fn interpolate(spec: &[Complex64], theta: f64) -> Complex64 {
    let n = spec.len();
    let mut s = Complex64::new(0.0, 0.0);
    for (k, c) in spec.iter().enumerate() {
        if n.is_multiple_of(2) && 2 * k == n {
            s += c * (theta * (n / 2) as f64).cos();
        } else {
            s += c * Complex64::from_polar(1.0, frequency(k, n) as f64 * theta);
        }
    }
    s
}

/// [π(g)f](z_k) = f(g⁻¹ z_k) m(g⁻¹, z_k)^κ, with f evaluated off the grid by
/// trigonometric interpolation.
pub fn rep_apply(g: &DiskAutomorphism, f: &BoundaryFunction, cocycle: CocycleConfig) -> BoundaryFunction {
    let grid = f.grid();
    let inv = g.inverse();
    let spec = spectrum(f);
    let values = grid.nodes().map(|z| interpolate(&spec, inv.apply(z).arg()) * cocycle.factor(&inv, z)).collect();
    BoundaryFunction::new(grid, values).expect("same grid")
}

/// Ŵf(y) = ⟨f, π(g_y) f₀⟩ / (1 − |y|²)^{κ/2} with g_y = (y, 1). For κ = 1
/// this is the Cauchy integral, so Ŵf = f on the disk for f in the Hardy
/// space.
pub fn wavelet_transform(f: &BoundaryFunction, y: Complex64, cocycle: CocycleConfig) -> Result<Complex64> {
    if !in_open_disk(y) {
        return Err(Error::PointOutsideDomain);
    }
    let g = DiskAutomorphism::new(y, Complex64::new(1.0, 0.0))?;
    wavelet_transform_with(f, &g, cocycle)
}

/// Same transform with an arbitrary group element sending 0 to y.
pub fn wavelet_transform_with(f: &BoundaryFunction, g: &DiskAutomorphism, cocycle: CocycleConfig) -> Result<Complex64> {
    let y = g.a();
    let f0 = BoundaryFunction::vacuum(f.grid());
    let coherent = rep_apply(g, &f0, cocycle);
    let norm = (1.0 - y.norm_sqr()).powf(cocycle.kappa() as f64 / 2.0);
    Ok(f.inner(&coherent)? / norm)
}

/// c_m = ⟨f, V_m⟩ with V_m(θ) = e^{imθ}, m = 0..=order; requires order < N/2.
pub fn taylor_coefficients(f: &BoundaryFunction, order: usize) -> Result<Vec<Complex64>> {
    let n = f.values().len();
    if 2 * order >= n {
        return Err(Error::InvalidArgument(format!("order {order} needs more than {} nodes", 2 * order)));
    }
    Ok(spectrum(f)[..=order].to_vec())
}

/// Share of the discrete spectral energy in negative frequencies; zero for
/// boundary values of analytic polynomials of degree < N/2.
pub fn negative_frequency_fraction(f: &BoundaryFunction) -> f64 {
    let spec = spectrum(f);
    let n = spec.len();
    let total: f64 = spec.iter().map(|c| c.norm_sqr()).sum();
    if total == 0.0 {
        return 0.0;
    }
    let neg: f64 = spec.iter().enumerate().filter(|(k, _)| frequency(*k, n) < 0).map(|(_, c)| c.norm_sqr()).sum();
    neg / total
}

#[cfg(test)]
mod tests {
    use super::super::boundary::BoundaryGrid;
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn k1() -> CocycleConfig {
        CocycleConfig::new(1).unwrap()
    }

    #[test]
    fn identity_acts_trivially() {
        let grid = BoundaryGrid::new(64).unwrap();
        let f = BoundaryFunction::polynomial(grid, &[c(1.0, 2.0), c(0.0, -1.0), c(0.5, 0.0)]);
        let g = rep_apply(&DiskAutomorphism::identity(), &f, k1());
        for (x, y) in f.values().iter().zip(g.values()) {
            assert!((x - y).norm() < 1e-12);
        }
    }

    #[test]
    fn rotations_fix_the_vacuum() {
        let grid = BoundaryGrid::new(128).unwrap();
        let f0 = BoundaryFunction::vacuum(grid);
        for kappa in 1..=3 {
            let h = DiskAutomorphism::rotation(Complex64::from_polar(1.0, 0.7)).unwrap();
            let g = rep_apply(&h, &f0, CocycleConfig::new(kappa).unwrap());
            assert!(g.values().iter().all(|v| (v - 1.0).norm() < 1e-9));
        }
    }

    #[test]
    fn hardy_unitarity_on_the_vacuum() {
        let grid = BoundaryGrid::new(256).unwrap();
        let f0 = BoundaryFunction::vacuum(grid);
        let g = DiskAutomorphism::new(c(0.5, 0.0), c(1.0, 0.0)).unwrap();
        let out = rep_apply(&g, &f0, k1());
        let inv = g.inverse();
        for (z, v) in grid.nodes().zip(out.values()) {
            assert!((v - inv.m(z)).norm() < 1e-12);
        }
        assert!((out.weighted_norm_sq() - f0.weighted_norm_sq()).abs() < 1e-8);
    }

    #[test]
    fn cauchy_examples() {
        let grid = BoundaryGrid::new(256).unwrap();
        let f0 = BoundaryFunction::vacuum(grid);
        assert!((wavelet_transform(&f0, c(0.0, 0.0), k1()).unwrap() - 1.0).norm() < 1e-14);
        let z = BoundaryFunction::monomial(grid, 1);
        assert!((wavelet_transform(&z, c(0.3, 0.0), k1()).unwrap() - 0.3).norm() < 1e-6);
        let z2 = BoundaryFunction::monomial(grid, 2);
        assert!((wavelet_transform(&z2, c(0.0, 0.5), k1()).unwrap() + 0.25).norm() < 1e-6);
        assert_eq!(wavelet_transform(&z2, c(1.0, 0.0), k1()), Err(Error::PointOutsideDomain));
    }

    #[test]
    fn wavelet_is_independent_of_the_rotation_part() {
        let grid = BoundaryGrid::new(128).unwrap();
        let f = BoundaryFunction::polynomial(grid, &[c(0.2, 0.1), c(1.0, 0.0), c(0.0, 0.3)]);
        let y = c(0.4, -0.3);
        let base = wavelet_transform(&f, y, k1()).unwrap();
        for t in [0.3, 1.1, 2.9] {
            let g = DiskAutomorphism::new(y, Complex64::from_polar(1.0, t)).unwrap();
            assert!((wavelet_transform_with(&f, &g, k1()).unwrap() - base).norm() < 1e-9);
        }
    }

    #[test]
    fn taylor_examples() {
        let grid = BoundaryGrid::new(256).unwrap();
        let t = taylor_coefficients(&BoundaryFunction::vacuum(grid), 4).unwrap();
        assert!((t[0] - 1.0).norm() < 1e-15 && t[1..].iter().all(|x| x.norm() < 1e-15));
        let t = taylor_coefficients(&BoundaryFunction::monomial(grid, 2), 6).unwrap();
        for (m, x) in t.iter().enumerate() {
            let want = if m == 2 { 1.0 } else { 0.0 };
            assert!((x - want).norm() < 1e-10);
        }
        assert!(taylor_coefficients(&BoundaryFunction::vacuum(grid), 128).is_err());
    }

    #[test]
    fn hardy_space_is_invariant_up_to_aliasing() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let grid = BoundaryGrid::new(256).unwrap();
        let coeffs: Vec<_> = (0..4).map(|_| c(rng.random(), rng.random())).collect();
        let f = BoundaryFunction::polynomial(grid, &coeffs);
        assert!(negative_frequency_fraction(&f) < 1e-28);
        let g = DiskAutomorphism::new(c(0.3, 0.2), Complex64::from_polar(1.0, 0.4)).unwrap();
        assert!(negative_frequency_fraction(&rep_apply(&g, &f, k1())) < 1e-20);
    }
}
