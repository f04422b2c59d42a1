//! Truncated Fock-space realization.
//!
//! Vectors hold the coefficients of `|0⟩..|D-1⟩`. Ladder operators act in
//! band form; diagonal operators (`L`, `U(φ)`, `G(φ)`, `e^{-itL}`) act
//! elementwise. Every operator-identity residual drops the rows that
//! truncation provably corrupts: one row per application of `a`.

use std::ops::{Add, Mul, Sub};

use ndarray::{s, Array2};
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::gauss_sums::CoprimeFraction;
use crate::phase::RationalAngle;
use crate::superposition::KittenDescriptor;

pub const DEFAULT_DIM: usize = 64;

#[derive(Clone, Debug, PartialEq)]
pub struct FockVector {
    pub coeffs: Vec<C64>,
}

impl FockVector {
    pub fn zeros(dim: usize) -> Self {
        Self {
            coeffs: vec![C64::new(0.0, 0.0); dim],
        }
    }

    pub fn vacuum(dim: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.coeffs[0] = C64::new(1.0, 0.0);
        v
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn norm_sq(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    /// `⟨self|other⟩`, conjugate-linear in `self`.
    pub fn inner(&self, other: &Self) -> C64 {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// Norm of the first `rows` entries.
    pub fn head_norm(&self, rows: usize) -> f64 {
        self.coeffs[..rows.min(self.dim())]
            .iter()
            .map(|c| c.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }
}

impl Sub for &FockVector {
    type Output = FockVector;

    fn sub(self, rhs: &FockVector) -> FockVector {
        assert_eq!(self.dim(), rhs.dim());
        FockVector {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Add for &FockVector {
    type Output = FockVector;

    fn add(self, rhs: &FockVector) -> FockVector {
        assert_eq!(self.dim(), rhs.dim());
        FockVector {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Mul<&FockVector> for C64 {
    type Output = FockVector;

    fn mul(self, rhs: &FockVector) -> FockVector {
        FockVector {
            coeffs: rhs.coeffs.iter().map(|c| self * c).collect(),
        }
    }
}

/// A diagonal operator in the number basis.
#[derive(Clone, Debug, PartialEq)]
pub struct DiagonalOperator {
    pub entries: Vec<C64>,
}

impl DiagonalOperator {
    fn from_phases(dim: usize, phase: impl Fn(i128) -> RationalAngle) -> Self {
        Self {
            entries: (0..dim as i128).map(|n| phase(n).to_complex()).collect(),
        }
    }

    /// `L` with eigenvalues `n + 1/2`.
    pub fn hamiltonian(dim: usize) -> Self {
        Self {
            entries: (0..dim).map(|n| C64::new(n as f64 + 0.5, 0.0)).collect(),
        }
    }

    /// `U(φ) = e^{-iφ(L - 1/2)}`: entries `e^{-iφn}`, exact for `φ = 2πM/N`.
    pub fn rotation(f: CoprimeFraction, dim: usize) -> Self {
        let (m, n) = (f.m() as i128, f.n() as i128);
        Self::from_phases(dim, |k| RationalAngle::from_wide(-2 * m * k, n))
    }

    /// `U(φ)` for an arbitrary real angle.
    pub fn rotation_by(phi: f64, dim: usize) -> Self {
        Self {
            entries: (0..dim)
                .map(|n| C64::from_polar(1.0, -phi * n as f64))
                .collect(),
        }
    }

    /// Kerr operator `G(φ) = e^{(i/2)φ(L-1/2)(L-3/2)}`: entries `e^{iφ n(n-1)/2}`.
    pub fn kerr(f: CoprimeFraction, dim: usize) -> Self {
        let (m, n) = (f.m() as i128, f.n() as i128);
        Self::from_phases(dim, |k| RationalAngle::from_wide(m * k * (k - 1), n))
    }

    /// `e^{-itL}`: entries `e^{-it(n+1/2)}`.
    pub fn evolution(t: f64, dim: usize) -> Self {
        Self {
            entries: (0..dim)
                .map(|n| C64::from_polar(1.0, -t * (n as f64 + 0.5)))
                .collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    /// Inverse of a unitary diagonal (entrywise conjugate).
    pub fn unitary_inverse(&self) -> Self {
        Self {
            entries: self.entries.iter().map(|e| e.conj()).collect(),
        }
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.entries.iter().all(|e| (e.norm() - 1.0).abs() <= tol)
    }

    pub fn apply(&self, v: &FockVector) -> FockVector {
        assert_eq!(self.dim(), v.dim());
        FockVector {
            coeffs: self
                .entries
                .iter()
                .zip(&v.coeffs)
                .map(|(d, c)| d * c)
                .collect(),
        }
    }

    pub fn to_dense(&self) -> Array2<C64> {
        let mut m = Array2::zeros((self.dim(), self.dim()));
        for (i, e) in self.entries.iter().enumerate() {
            m[[i, i]] = *e;
        }
        m
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ladder {
    /// `a|n⟩ = √n |n-1⟩`
    Lowering,
    /// `a†|n⟩ = √(n+1) |n+1⟩`, truncated at `|D-1⟩`
    Raising,
}

/// `a` or `a†` on the first `dim` number states.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LadderMatrix {
    pub kind: Ladder,
    pub dim: usize,
}

impl LadderMatrix {
    pub fn lowering(dim: usize) -> Self {
        Self {
            kind: Ladder::Lowering,
            dim,
        }
    }

    pub fn raising(dim: usize) -> Self {
        Self {
            kind: Ladder::Raising,
            dim,
        }
    }

    pub fn apply(&self, v: &FockVector) -> FockVector {
        assert_eq!(self.dim, v.dim());
        let mut out = FockVector::zeros(self.dim);
        match self.kind {
            Ladder::Lowering => {
                for n in 0..self.dim.saturating_sub(1) {
                    out.coeffs[n] = v.coeffs[n + 1] * ((n + 1) as f64).sqrt();
                }
            }
            Ladder::Raising => {
                for n in 1..self.dim {
                    out.coeffs[n] = v.coeffs[n - 1] * (n as f64).sqrt();
                }
            }
        }
        out
    }

    pub fn to_dense(&self) -> Array2<C64> {
        let mut m = Array2::zeros((self.dim, self.dim));
        for n in 0..self.dim.saturating_sub(1) {
            let amp = C64::new(((n + 1) as f64).sqrt(), 0.0);
            match self.kind {
                Ladder::Lowering => m[[n, n + 1]] = amp,
                Ladder::Raising => m[[n + 1, n]] = amp,
            }
        }
        m
    }
}

/// Smallest truncation `D` with `|α|² ≤ D - 4√D`.
pub fn required_dim(alpha: C64) -> usize {
    let root = 2.0 + (4.0 + alpha.norm_sqr()).sqrt();
    let mut d = (root * root).ceil() as usize;
    while d > 1 && alpha.norm_sqr() <= (d - 1) as f64 - 4.0 * ((d - 1) as f64).sqrt() {
        d -= 1;
    }
    d.max(1)
}

/// Checks `|α|² ≤ D - 4√D`, beyond which the Poisson tail past `|D-1⟩` is
/// no longer negligible.
pub fn truncation_guard(alpha: C64, dim: usize) -> Result<()> {
    let alpha_sq = alpha.norm_sqr();
    let d = dim as f64;
    if alpha_sq > d - 4.0 * d.sqrt() && alpha_sq > 0.0 {
        return Err(Error::Truncation {
            alpha_sq,
            dim,
            required: required_dim(alpha),
        });
    }
    Ok(())
}

fn warn_on_truncation(alpha: C64, dim: usize) {
    if let Err(e) = truncation_guard(alpha, dim) {
        log::warn!("{e}");
    }
}

/// `|α⟩` truncated to `dim` states: `e^{-|α|²/2} αⁿ/√(n!)`.
pub fn coherent_vector(alpha: C64, dim: usize) -> FockVector {
    assert!(dim >= 1);
    warn_on_truncation(alpha, dim);
    let mut coeffs = Vec::with_capacity(dim);
    let mut entry = C64::new((-0.5 * alpha.norm_sqr()).exp(), 0.0);
    for n in 0..dim {
        coeffs.push(entry);
        entry = entry * alpha / ((n + 1) as f64).sqrt();
    }
    FockVector { coeffs }
}

/// `|α⟩_φ = G(φ)⁻¹|α⟩`: coherent entries dressed with `e^{-iφ n(n-1)/2}`.
pub fn kitten_vector_series(alpha: C64, f: CoprimeFraction, dim: usize) -> FockVector {
    let coherent = coherent_vector(alpha, dim);
    DiagonalOperator::kerr(f, dim)
        .unitary_inverse()
        .apply(&coherent)
}

/// `Σ_k c_k |e^{iθ_k} α⟩` straight from a descriptor.
pub fn kitten_vector_superposition(alpha: C64, desc: &KittenDescriptor, dim: usize) -> FockVector {
    desc.components
        .iter()
        .fold(FockVector::zeros(dim), |acc, c| {
            let rotated = c.rotation.to_complex() * alpha;
            &acc + &(c.coefficient.value() * &coherent_vector(rotated, dim))
        })
}

/// `‖a v - α U(φ) v‖ / ‖v‖` on rows `0..D-1`, `v = |α⟩_φ`.
pub fn eigen_residual(alpha: C64, f: CoprimeFraction, dim: usize) -> f64 {
    let v = kitten_vector_series(alpha, f, dim);
    let lhs = LadderMatrix::lowering(dim).apply(&v);
    let rhs = alpha * &DiagonalOperator::rotation(f, dim).apply(&v);
    (&lhs - &rhs).head_norm(dim - 1) / v.norm()
}

/// As [`eigen_residual`] but over all `D` rows, so it includes the last
/// row where truncation drops `√D·v_D`. Measures the tail, which decays with `D`.
pub fn eigen_residual_all_rows(alpha: C64, f: CoprimeFraction, dim: usize) -> f64 {
    let v = kitten_vector_series(alpha, f, dim);
    let lhs = LadderMatrix::lowering(dim).apply(&v);
    let rhs = alpha * &DiagonalOperator::rotation(f, dim).apply(&v);
    (&lhs - &rhs).norm() / v.norm()
}

/// `‖a² v + α² v‖ / ‖v‖` on rows `0..D-2` for the parity cat `v = |α⟩_{1/2}`.
pub fn a_squared_residual(alpha: C64, dim: usize) -> f64 {
    let f = CoprimeFraction::new(1, 2).expect("1/2");
    let v = kitten_vector_series(alpha, f, dim);
    let a = LadderMatrix::lowering(dim);
    let lhs = a.apply(&a.apply(&v));
    (&lhs + &((alpha * alpha) * &v)).head_norm(dim.saturating_sub(2)) / v.norm()
}

fn frobenius(m: ndarray::ArrayView2<C64>) -> f64 {
    m.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

/// Relative residual of `(U⁻¹a)^N = μ_N a^N` on rows `0..D-N`.
///
/// `a^N` has entries up to `√(D!/(D-N)!)`, so the residual is scaled by
/// `‖a^N‖` on the same rows to make it a rounding-level quantity.
pub fn an_identity_residual(f: CoprimeFraction, dim: usize) -> Result<f64> {
    let n = f.n() as usize;
    if dim <= n {
        return Err(Error::DimensionTooSmall { dim, min: n });
    }
    let a = LadderMatrix::lowering(dim).to_dense();
    let transformed = DiagonalOperator::rotation(f, dim)
        .unitary_inverse()
        .to_dense()
        .dot(&a);
    let mut lhs = Array2::<C64>::eye(dim);
    let mut a_pow = Array2::<C64>::eye(dim);
    for _ in 0..n {
        lhs = lhs.dot(&transformed);
        a_pow = a_pow.dot(&a);
    }
    let mu = C64::new(f.mu() as f64, 0.0);
    let rows = s![..dim - n, ..];
    let diff = &lhs.slice(rows) - &a_pow.slice(rows).mapv(|x| mu * x);
    Ok(frobenius(diff.view()) / frobenius(a_pow.slice(rows)))
}

/// `‖e^{-itL}|α⟩_φ - e^{-it/2}|e^{-it}α⟩_φ‖`.
pub fn time_evolution_residual(alpha: C64, f: CoprimeFraction, t: f64, dim: usize) -> f64 {
    let lhs = DiagonalOperator::evolution(t, dim).apply(&kitten_vector_series(alpha, f, dim));
    let moved = C64::from_polar(1.0, -t) * alpha;
    let rhs = C64::from_polar(1.0, -t / 2.0) * &kitten_vector_series(moved, f, dim);
    (&lhs - &rhs).norm()
}

/// `|⟨α(t)|e^{-itL}|α⟩_φ| / (‖·‖‖·‖)` with `α(t) = e^{-it}α`.
pub fn evolution_fidelity(alpha: C64, f: CoprimeFraction, t: f64, dim: usize) -> f64 {
    let evolved = DiagonalOperator::evolution(t, dim).apply(&kitten_vector_series(alpha, f, dim));
    let target = kitten_vector_series(C64::from_polar(1.0, -t) * alpha, f, dim);
    // squared form so that a single-entry (vacuum) overlap is exactly 1
    (target.inner(&evolved).norm_sqr() / (target.norm_sq() * evolved.norm_sq())).sqrt()
}

/// `‖G(φ)⁻¹|α⟩ - |α⟩_φ‖` with `|α⟩_φ` built entry by entry from its series.
pub fn kerr_identity_residual(alpha: C64, f: CoprimeFraction, dim: usize) -> f64 {
    let via_kerr = DiagonalOperator::kerr(f, dim)
        .unitary_inverse()
        .apply(&coherent_vector(alpha, dim));
    // series entries e^{-|α|²/2} αⁿ/√n! · e^{-iπM n(n-1)/N}, assembled independently
    let (m, n) = (f.m() as i128, f.n() as i128);
    let series = FockVector {
        coeffs: coherent_vector(alpha, dim)
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| {
                let k = k as i128;
                c * RationalAngle::from_wide(-m * (k * (k - 1) % (2 * n)), n).to_complex()
            })
            .collect(),
    };
    (&via_kerr - &series).norm()
}

/// `‖G⁻¹ a G - U⁻¹ a‖` (Frobenius) on rows `0..D-1`.
pub fn kerr_matrix_residual(f: CoprimeFraction, dim: usize) -> f64 {
    let a = LadderMatrix::lowering(dim).to_dense();
    let g = DiagonalOperator::kerr(f, dim);
    let lhs = g.unitary_inverse().to_dense().dot(&a).dot(&g.to_dense());
    let rhs = DiagonalOperator::rotation(f, dim)
        .unitary_inverse()
        .to_dense()
        .dot(&a);
    let rows = s![..dim - 1, ..];
    frobenius((&lhs.slice(rows) - &rhs.slice(rows)).view())
}

/// `[a, a†]` in truncation: returns the largest deviation from the identity
/// on rows `0..D-1` and the corrupted corner entry `(D-1, D-1)`.
pub fn commutator_defect(dim: usize) -> (f64, C64) {
    let a = LadderMatrix::lowering(dim).to_dense();
    let ad = LadderMatrix::raising(dim).to_dense();
    let comm = a.dot(&ad) - ad.dot(&a);
    let eye = Array2::<C64>::eye(dim);
    let dev = (&comm - &eye)
        .slice(s![..dim - 1, ..])
        .iter()
        .map(|c| c.norm())
        .fold(0.0, f64::max);
    (dev, comm[[dim - 1, dim - 1]])
}
