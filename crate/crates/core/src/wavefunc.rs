//! Coordinate-space realization on uniform grids.
//!
//! Number states are the Hermite functions `ψ_n(x)`, evaluated by the
//! normalized three-term recurrence so nothing overflows. `U(φ)` acts as an
//! integral operator with the Mehler kernel; at `φ ≡ π` it is the parity
//! `ψ(x) → ψ(-x)` and at `φ ≡ 0` the identity.

use std::f64::consts::{FRAC_PI_4, PI, SQRT_2, TAU};
use std::io::{self, Write};

use num_complex::Complex64 as C64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fock::{kitten_vector_series, FockVector};
use crate::gauss_sums::CoprimeFraction;
use crate::superposition::KittenDescriptor;

/// Boundary magnitude above which quadrature over the grid may alias.
pub const BOUNDARY_TOLERANCE: f64 = 1e-12;

/// Uniform grid on `[-half_width, half_width]` with an odd number of points.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridSpec {
    half_width: f64,
    points: usize,
}

impl GridSpec {
    pub fn new(half_width: f64, points: usize) -> Result<Self> {
        if !(half_width.is_finite() && half_width > 0.0) {
            return Err(Error::InvalidGrid(format!(
                "half width {half_width} must be positive"
            )));
        }
        if points < 3 || points.is_multiple_of(2) {
            return Err(Error::InvalidGrid(format!(
                "{points} points: need an odd count >= 3"
            )));
        }
        Ok(Self { half_width, points })
    }

    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn spacing(&self) -> f64 {
        2.0 * self.half_width / (self.points - 1) as f64
    }

    /// `x_i`, computed so that `x(points-1-i) == -x(i)` exactly.
    pub fn x(&self, i: usize) -> f64 {
        let last = (self.points - 1) as f64;
        self.half_width * (2.0 * i as f64 - last) / last
    }

    pub fn xs(&self) -> Vec<f64> {
        (0..self.points).map(|i| self.x(i)).collect()
    }

    /// Index of `-x(i)`.
    pub fn mirror(&self, i: usize) -> usize {
        self.points - 1 - i
    }

    /// Trapezoid weights.
    pub fn weights(&self) -> Vec<f64> {
        let h = self.spacing();
        let mut w = vec![h; self.points];
        w[0] = 0.5 * h;
        w[self.points - 1] = 0.5 * h;
        w
    }
}

/// A wavefunction sampled on a grid.
#[derive(Clone, Debug, PartialEq)]
pub struct WaveSample {
    pub grid: GridSpec,
    pub values: Vec<C64>,
}

impl WaveSample {
    pub fn from_fn(grid: GridSpec, f: impl Fn(f64) -> C64 + Sync) -> Self {
        let values = (0..grid.points())
            .into_par_iter()
            .map(|i| f(grid.x(i)))
            .collect();
        Self { grid, values }
    }

    /// Trapezoid `∫|ψ|² dx`.
    pub fn norm_sq(&self) -> f64 {
        self.grid
            .weights()
            .iter()
            .zip(&self.values)
            .map(|(w, v)| w * v.norm_sqr())
            .sum()
    }

    /// Largest `|ψ|` at the two end points.
    pub fn boundary_magnitude(&self) -> f64 {
        self.values[0]
            .norm()
            .max(self.values[self.values.len() - 1].norm())
    }

    /// CSV with header `x,re_psi,im_psi,abs2`, 17 significant digits.
    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "x,re_psi,im_psi,abs2")?;
        for (i, v) in self.values.iter().enumerate() {
            writeln!(
                out,
                "{:.16e},{:.16e},{:.16e},{:.16e}",
                self.grid.x(i),
                v.re,
                v.im,
                v.norm_sqr()
            )?;
        }
        Ok(())
    }
}

/// Physicists' Hermite polynomials `H_0(x)..H_{n_max}(x)`.
pub fn hermite_values(n_max: usize, x: f64) -> Result<Vec<f64>> {
    let mut h = Vec::with_capacity(n_max + 1);
    h.push(1.0);
    if n_max >= 1 {
        h.push(2.0 * x);
    }
    for n in 1..n_max {
        let next = 2.0 * x * h[n] - 2.0 * n as f64 * h[n - 1];
        if !next.is_finite() {
            return Err(Error::HermiteOverflow { n: n + 1, x });
        }
        h.push(next);
    }
    Ok(h)
}

/// `ψ_0(x)..ψ_{n_max}(x)` by
/// `ψ_{n+1} = √(2/(n+1)) x ψ_n - √(n/(n+1)) ψ_{n-1}`.
pub fn psi_values(n_max: usize, x: f64) -> Vec<f64> {
    let mut psi = Vec::with_capacity(n_max + 1);
    psi.push(PI.powf(-0.25) * (-0.5 * x * x).exp());
    if n_max >= 1 {
        psi.push(SQRT_2 * x * psi[0]);
    }
    for n in 1..n_max {
        let k = n as f64;
        psi.push((2.0 / (k + 1.0)).sqrt() * x * psi[n] - (k / (k + 1.0)).sqrt() * psi[n - 1]);
    }
    psi
}

/// Hermite function `ψ_n(x) = H_n(x) e^{-x²/2} / √(2ⁿ n! √π)`.
pub fn psi_n(n: usize, x: f64) -> f64 {
    psi_values(n, x)[n]
}

/// Coherent state `⟨x|α⟩ = π^{-1/4} exp(-|α|²/2 - α²/2 + √2αx - x²/2)`.
pub fn psi_coherent(alpha: C64, x: f64) -> C64 {
    let exponent = -0.5 * alpha.norm_sqr() - 0.5 * alpha * alpha + SQRT_2 * alpha * x - 0.5 * x * x;
    PI.powf(-0.25) * exponent.exp()
}

/// Parity cat `⟨x|α⟩_P = (√2/π^{1/4}) exp((α² - |α|² - x²)/2) cos(√2αx - π/4)`.
pub fn psi_cat_p(alpha: C64, x: f64) -> C64 {
    let envelope = (0.5 * (alpha * alpha - alpha.norm_sqr() - x * x)).exp();
    SQRT_2 * PI.powf(-0.25) * envelope * (SQRT_2 * alpha * x - FRAC_PI_4).cos()
}

/// Compass state for the Fourier transform,
/// `π^{-1/4} e^{-(|α|²+x²)/2} (e^{-iα²/2} cosh((1+i)αx) + e^{iα²/2+iπ/4} sinh((1-i)αx))`.
pub fn psi_cat_f(alpha: C64, x: f64) -> C64 {
    let i = C64::i();
    let envelope = PI.powf(-0.25) * (-0.5 * (alpha.norm_sqr() + x * x)).exp();
    let a2 = alpha * alpha;
    let even = (-0.5 * i * a2).exp() * ((1.0 + i) * alpha * x).cosh();
    let odd = (0.5 * i * a2 + i * FRAC_PI_4).exp() * ((1.0 - i) * alpha * x).sinh();
    envelope * (even + odd)
}

/// The inverse-transform variant, `(ψ^F_{α*}(x))*`.
pub fn psi_cat_f_inverse(alpha: C64, x: f64) -> C64 {
    psi_cat_f(alpha.conj(), x).conj()
}

/// `Σ_k c_k ⟨x|e^{iθ_k}α⟩` for a descriptor.
pub fn psi_superposition(alpha: C64, desc: &KittenDescriptor, x: f64) -> C64 {
    desc.components
        .iter()
        .map(|c| c.coefficient.value() * psi_coherent(c.rotation.to_complex() * alpha, x))
        .sum()
}

/// `Σ_n v_n ψ_n(x)`.
pub fn psi_fock(v: &FockVector, x: f64) -> C64 {
    let psi = psi_values(v.dim().saturating_sub(1), x);
    v.coeffs.iter().zip(&psi).map(|(c, p)| c * p).sum()
}

/// `(d/dx + x) Σ_n v_n ψ_n(x) = Σ_n v_n √(2n) ψ_{n-1}(x)`.
pub fn ladder_psi_fock(v: &FockVector, x: f64) -> C64 {
    let psi = psi_values(v.dim().saturating_sub(1), x);
    v.coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(n, c)| c * (2.0 * n as f64).sqrt() * psi[n - 1])
        .sum()
}

/// `⟨x|α⟩_φ` on a grid, from the Fock series truncated at `dim`.
pub fn kitten_wavefunction(
    alpha: C64,
    f: CoprimeFraction,
    grid: GridSpec,
    dim: usize,
) -> WaveSample {
    let v = kitten_vector_series(alpha, f, dim);
    WaveSample::from_fn(grid, |x| psi_fock(&v, x))
}

/// `φ` reduced to `(-π, π]`.
fn reduce_angle(phi: f64) -> f64 {
    let r = phi - TAU * (phi / TAU).round();
    if r <= -PI {
        r + TAU
    } else {
        r
    }
}

fn singular(phi_reduced: f64) -> bool {
    phi_reduced.sin().abs() < 1e-12
}

/// Mehler kernel of `U(φ) = e^{-iφ(L-1/2)}`:
/// `μ(φ)/√(2π|sin φ|) · exp(i[(x²+y²)cos φ - 2xy]/(2 sin φ))` with
/// `μ(φ) = e^{i(φ/2 - (π/4) sgn(sin φ))}`, `φ` taken in `(-π, π]`.
pub fn mehler_kernel(x: f64, y: f64, phi: f64) -> Result<C64> {
    let p = reduce_angle(phi);
    if singular(p) {
        return Err(Error::SingularAngle(phi));
    }
    let (s, c) = p.sin_cos();
    let mu = C64::from_polar(1.0, 0.5 * p - FRAC_PI_4 * s.signum());
    let phase = ((x * x + y * y) * c - 2.0 * x * y) / (2.0 * s);
    Ok(mu / (TAU * s.abs()).sqrt() * C64::from_polar(1.0, phase))
}

/// Trapezoid quadrature of `∫ K(x, y; φ) ψ(y) dy` at every point of `out_grid`.
///
/// Warns when the input does not vanish at its boundary.
pub fn frac_fourier(ws: &WaveSample, phi: f64, out_grid: GridSpec) -> Result<WaveSample> {
    let p = reduce_angle(phi);
    if singular(p) {
        return Err(Error::SingularAngle(phi));
    }
    if ws.boundary_magnitude() > BOUNDARY_TOLERANCE {
        log::warn!(
            "input wavefunction is {:.3e} at the grid boundary; quadrature may alias",
            ws.boundary_magnitude()
        );
    }
    let (s, c) = p.sin_cos();
    let prefactor = C64::from_polar(1.0, 0.5 * p - FRAC_PI_4 * s.signum()) / (TAU * s.abs()).sqrt();
    let chirp = |z: f64| C64::from_polar(1.0, z * z * c / (2.0 * s));

    // kernel factors as chirp(x)·chirp(y)·e^{-ixy/sin φ}
    let ys = ws.grid.xs();
    let weighted: Vec<C64> = ys
        .iter()
        .zip(ws.grid.weights())
        .zip(&ws.values)
        .map(|((&y, w), v)| chirp(y) * v * w)
        .collect();
    let values = (0..out_grid.points())
        .into_par_iter()
        .map(|i| {
            let x = out_grid.x(i);
            let sum: C64 = ys
                .iter()
                .zip(&weighted)
                .map(|(&y, g)| C64::from_polar(1.0, -x * y / s) * g)
                .sum();
            prefactor * chirp(x) * sum
        })
        .collect();
    Ok(WaveSample {
        grid: out_grid,
        values,
    })
}

/// `max_x |(d/dx + x)ψ(x) - √2α[U(φ)ψ](x)|` over interior grid points, with
/// `ψ = ⟨x|α⟩_φ` from the Fock series.
///
/// The derivative is analytic. `U(φ)ψ` is the Mehler quadrature, except at
/// `φ = π` (`N = 2`) where it is the parity `ψ(-x)`.
pub fn geneq_residual(alpha: C64, f: CoprimeFraction, grid: GridSpec, dim: usize) -> Result<f64> {
    let v = kitten_vector_series(alpha, f, dim);
    let psi = WaveSample::from_fn(grid, |x| psi_fock(&v, x));
    let lhs = WaveSample::from_fn(grid, |x| ladder_psi_fock(&v, x));
    let transformed: Vec<C64> = if f.n() == 2 {
        (0..grid.points())
            .map(|i| psi.values[grid.mirror(i)])
            .collect()
    } else {
        frac_fourier(&psi, f.phi(), grid)?.values
    };
    let scale = SQRT_2 * alpha;
    Ok((1..grid.points() - 1)
        .map(|i| (lhs.values[i] - scale * transformed[i]).norm())
        .fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{coherent_vector, LadderMatrix};
    use crate::superposition::build_descriptor;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn frac(m: i64, n: i64) -> CoprimeFraction {
        CoprimeFraction::new(m, n).unwrap()
    }

    #[test]
    fn grid_validation() {
        assert!(GridSpec::new(12.0, 2000).is_err());
        assert!(GridSpec::new(12.0, 1).is_err());
        assert!(GridSpec::new(0.0, 11).is_err());
        assert!(GridSpec::new(f64::NAN, 11).is_err());
        let g = GridSpec::new(12.0, 2001).unwrap();
        assert!((g.spacing() - 0.012).abs() < 1e-15);
        assert_eq!(g.x(0), -12.0);
        assert_eq!(g.x(2000), 12.0);
        assert_eq!(g.x(1000), 0.0);
        for i in 0..2001 {
            assert_eq!(g.x(g.mirror(i)), -g.x(i));
        }
    }

    #[test]
    fn hermite_examples() {
        let h = hermite_values(3, 3.0).unwrap();
        assert_eq!(h[0], 1.0);
        assert_eq!(h[1], 6.0);
        assert_eq!(h[2], 34.0);
        assert_eq!(hermite_values(3, 1.0).unwrap()[3], -4.0);
        assert_eq!(hermite_values(0, 5.0).unwrap(), vec![1.0]);
        assert!(matches!(
            hermite_values(400, 1e3),
            Err(Error::HermiteOverflow { .. })
        ));
    }

    #[test]
    fn hermite_functions_match_polynomials() {
        let mut fact = 1.0;
        for n in 0..20 {
            if n > 0 {
                fact *= n as f64;
            }
            for x in [-3.1, -0.4, 0.0, 1.7, 4.2] {
                let h = hermite_values(n, x).unwrap()[n];
                let norm = (2f64.powi(n as i32) * fact * PI.sqrt()).sqrt();
                let expected = h * (-0.5 * x * x).exp() / norm;
                assert!(
                    (psi_n(n, x) - expected).abs() < 1e-12 * (1.0 + expected.abs()),
                    "n={n} x={x}"
                );
            }
        }
    }

    #[test]
    fn psi_n_examples() {
        assert!((psi_n(0, 0.0) - PI.powf(-0.25)).abs() < 1e-16);
        assert_eq!(psi_n(1, 0.0), 0.0);
        let g = GridSpec::new(10.0, 2001).unwrap();
        let w = g.weights();
        let overlap: f64 = g
            .xs()
            .iter()
            .zip(&w)
            .map(|(&x, w)| w * psi_n(3, x) * psi_n(5, x))
            .sum();
        assert!(overlap.abs() < 1e-8);
        let norm: f64 = g
            .xs()
            .iter()
            .zip(&w)
            .map(|(&x, w)| w * psi_n(7, x).powi(2))
            .sum();
        assert!((norm - 1.0).abs() < 1e-10);
        assert!(psi_n(200, 20.0).is_finite());
    }

    #[test]
    fn coherent_wavefunction() {
        assert!((psi_coherent(c(0.0, 0.0), 1.3) - c(psi_n(0, 1.3), 0.0)).norm() < 1e-16);
        // |ψ| peaks at √2·α for real α
        let alpha = 1.2;
        let peak = SQRT_2 * alpha;
        let at = |x: f64| psi_coherent(c(alpha, 0.0), x).norm();
        assert!(at(peak) > at(peak - 1e-3) && at(peak) > at(peak + 1e-3));
        for alpha in [c(1.0, 0.0), c(-1.3, 0.8), c(0.0, 2.0)] {
            let v = coherent_vector(alpha, 64);
            for i in 0..=24 {
                let x = -6.0 + 0.5 * i as f64;
                assert!((psi_coherent(alpha, x) - psi_fock(&v, x)).norm() < 1e-9);
            }
        }
    }

    #[test]
    fn parity_cat_closed_form() {
        let d = build_descriptor(frac(1, 2));
        for alpha in [c(1.0, 0.0), c(0.3, -1.4), c(-2.0, 0.5)] {
            for i in 0..=24 {
                let x = -6.0 + 0.5 * i as f64;
                assert!((psi_cat_p(alpha, x) - psi_superposition(alpha, &d, x)).norm() <= 1e-12);
                assert!((psi_cat_p(-alpha, -x) - psi_cat_p(alpha, x)).norm() <= 1e-12);
            }
        }
        assert!((psi_cat_p(c(0.0, 0.0), 0.0) - c(PI.powf(-0.25), 0.0)).norm() < 1e-15);
    }

    #[test]
    fn compass_closed_form() {
        assert!((psi_cat_f(c(0.0, 0.0), 0.7) - c(psi_n(0, 0.7), 0.0)).norm() < 1e-15);
        let fwd = build_descriptor(frac(3, 4));
        let inv = build_descriptor(frac(1, 4));
        for alpha in [c(1.0, 0.0), c(0.6, 0.9)] {
            for i in 0..=24 {
                let x = -6.0 + 0.5 * i as f64;
                assert!((psi_cat_f(alpha, x) - psi_superposition(alpha, &fwd, x)).norm() <= 1e-10);
                assert!(
                    (psi_cat_f_inverse(alpha, x) - psi_superposition(alpha, &inv, x)).norm()
                        <= 1e-10
                );
            }
        }
        let (a, x) = (c(1.1, 0.0), 0.9);
        assert!((psi_cat_f_inverse(a, x) - psi_cat_f(a, x).conj()).norm() < 1e-15);
    }

    #[test]
    fn kernel_properties() {
        for phi in [0.3, 2.0, -1.1, 2.0 * PI / 5.0, 4.0] {
            for (x, y) in [(0.3, -1.2), (2.0, 0.5)] {
                let k = mehler_kernel(x, y, phi).unwrap();
                assert!((k - mehler_kernel(y, x, phi).unwrap()).norm() < 1e-15);
                assert!((mehler_kernel(x, y, -phi).unwrap() - k.conj()).norm() < 1e-14);
                assert!((mehler_kernel(x, y, phi + TAU).unwrap() - k).norm() < 1e-12);
            }
        }
        // φ = -π/2 is the Fourier kernel e^{ixy}/√(2π)
        let k = mehler_kernel(0.8, -1.5, -PI / 2.0).unwrap();
        let fourier = C64::from_polar(1.0, 0.8 * -1.5) / TAU.sqrt();
        assert!((k - fourier).norm() < 1e-15);
        assert!(matches!(
            mehler_kernel(0.0, 0.0, PI),
            Err(Error::SingularAngle(_))
        ));
        assert!(matches!(
            mehler_kernel(0.0, 0.0, 0.0),
            Err(Error::SingularAngle(_))
        ));
    }

    #[test]
    fn fractional_transform_on_number_states() {
        let g = GridSpec::new(12.0, 2001).unwrap();
        for phi in [PI / 2.0, -2.0 * PI / 3.0] {
            for n in [0, 3, 8] {
                let ws = WaveSample::from_fn(g, |x| c(psi_n(n, x), 0.0));
                let out = frac_fourier(&ws, phi, g).unwrap();
                let eig = C64::from_polar(1.0, -phi * n as f64);
                let err = out
                    .values
                    .iter()
                    .zip(&ws.values)
                    .map(|(o, v)| (o - eig * v).norm())
                    .fold(0.0, f64::max);
                assert!(err < 1e-6, "phi={phi} n={n}: {err}");
            }
        }
    }

    #[test]
    fn fractional_round_trip() {
        let g = GridSpec::new(12.0, 1201).unwrap();
        let ws = WaveSample::from_fn(g, |x| psi_coherent(c(1.0, 0.5), x));
        let phi = 0.9;
        let back = frac_fourier(&frac_fourier(&ws, phi, g).unwrap(), -phi, g).unwrap();
        let err = back
            .values
            .iter()
            .zip(&ws.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        assert!(err < 1e-5);
        assert!(frac_fourier(&ws, PI, g).is_err());
    }

    #[test]
    fn geneq_examples() {
        let g = GridSpec::new(12.0, 2001).unwrap();
        assert!(geneq_residual(c(0.0, 0.0), frac(1, 4), g, 64).unwrap() <= 1e-8);
        assert!(geneq_residual(c(1.0, 0.0), frac(1, 4), g, 64).unwrap() <= 1e-5);
        assert!(geneq_residual(c(1.0, 0.0), frac(1, 2), g, 64).unwrap() <= 1e-10);
    }

    #[test]
    fn geneq_rejects_wrong_state() {
        // the 1/4 state does not solve the 3/4 equation
        let g = GridSpec::new(10.0, 801).unwrap();
        let v = kitten_vector_series(c(1.0, 0.0), frac(1, 4), 64);
        let psi = WaveSample::from_fn(g, |x| psi_fock(&v, x));
        let rhs = frac_fourier(&psi, frac(3, 4).phi(), g).unwrap();
        let err = (0..g.points())
            .map(|i| (ladder_psi_fock(&v, g.x(i)) - SQRT_2 * rhs.values[i]).norm())
            .fold(0.0, f64::max);
        assert!(err > 0.1);
    }

    #[test]
    fn ladder_action_matches_fock_lowering() {
        let v = kitten_vector_series(c(1.2, -0.3), frac(2, 7), 64);
        let lowered = LadderMatrix::lowering(64).apply(&v);
        for i in 0..=20 {
            let x = -5.0 + 0.5 * i as f64;
            let analytic = ladder_psi_fock(&v, x);
            assert!((analytic - SQRT_2 * psi_fock(&lowered, x)).norm() < 1e-12);
            // independent check by central differences
            let h = 1e-5;
            let fd = (psi_fock(&v, x + h) - psi_fock(&v, x - h)) / (2.0 * h) + x * psi_fock(&v, x);
            assert!((analytic - fd).norm() < 1e-8);
        }
    }

    #[test]
    fn normalization() {
        let g = GridSpec::new(12.0, 2001).unwrap();
        for f in [frac(1, 2), frac(3, 4), frac(2, 5), frac(5, 12)] {
            for alpha in [c(1.0, 0.0), c(1.5, 1.2)] {
                let ws = kitten_wavefunction(alpha, f, g, 64);
                assert!((ws.norm_sq() - 1.0).abs() < 1e-6, "{f}");
                assert!(ws.boundary_magnitude() < BOUNDARY_TOLERANCE);
            }
        }
    }

    #[test]
    fn csv_format() {
        let g = GridSpec::new(1.0, 3).unwrap();
        let ws = WaveSample::from_fn(g, |x| c(x, 0.5));
        let mut buf = Vec::new();
        ws.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<_> = text.lines().collect();
        assert_eq!(lines[0], "x,re_psi,im_psi,abs2");
        assert_eq!(lines[1], "-1.0000000000000000e0,-1.0000000000000000e0,5.0000000000000000e-1,1.2500000000000000e0");
        assert_eq!(lines.len(), 4);
    }
}
