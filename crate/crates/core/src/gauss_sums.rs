//! Quadratic Gauss sum coefficients `c_k` for a coprime fraction `M/N`.
//!
//! Two evaluation routes live here: the defining finite sums, evaluated with
//! exact exponents, and the closed forms obtained by completing the square
//! with the modular inverse `d` of `M` and evaluating the remaining standard
//! Gauss sum through the Jacobi symbol. The superposition module adds a third
//! route through the inverse DFT of the target phase sequence.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::number::{gcd, jacobi_symbol, mod_inverse};
use crate::phase::{RationalAngle, RootTable};

/// `M/N` with `0 < M < N` and `gcd(M, N) = 1`; encodes `φ = 2πM/N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "(i64, i64)", into = "(i64, i64)")]
pub struct CoprimeFraction {
    m: i64,
    n: i64,
}

impl CoprimeFraction {
    pub fn new(m: i64, n: i64) -> Result<Self> {
        if m <= 0 || m >= n {
            return Err(Error::FractionOutOfRange { m, n });
        }
        let g = gcd(m as u64, n as u64)? as i64;
        if g != 1 {
            return Err(Error::NotCoprime { m, n, gcd: g });
        }
        Ok(Self { m, n })
    }

    pub fn m(self) -> i64 {
        self.m
    }

    pub fn n(self) -> i64 {
        self.n
    }

    pub fn is_even(self) -> bool {
        self.n % 2 == 0
    }

    /// `φ = 2πM/N` in radians.
    pub fn phi(self) -> f64 {
        2.0 * PI * self.m as f64 / self.n as f64
    }

    /// `φ` as an exact angle.
    pub fn phi_angle(self) -> RationalAngle {
        RationalAngle::new(2 * self.m, self.n)
    }

    /// `d` with `M·d ≡ 1 (mod N)`, `1 ≤ d ≤ N`.
    pub fn inverse(self) -> i64 {
        mod_inverse(self.m, self.n).expect("coprime by construction")
    }

    /// `μ_N` in `A^N = μ_N a^N`: `-1` for even `N`, `+1` for odd `N`.
    pub fn mu(self) -> i8 {
        if (self.m * (self.n - 1)) % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Every coprime fraction with `2 ≤ N ≤ n_max`, ordered by `N` then `M`.
    pub fn all_up_to(n_max: i64) -> impl Iterator<Item = Self> {
        (2..=n_max).flat_map(|n| (1..n).filter_map(move |m| Self::new(m, n).ok()))
    }
}

impl TryFrom<(i64, i64)> for CoprimeFraction {
    type Error = Error;

    fn try_from((m, n): (i64, i64)) -> Result<Self> {
        Self::new(m, n)
    }
}

impl From<CoprimeFraction> for (i64, i64) {
    fn from(f: CoprimeFraction) -> Self {
        (f.m, f.n)
    }
}

impl fmt::Display for CoprimeFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.m, self.n)
    }
}

/// `sign · e^{iπ·phase} / √inv_sqrt`.
///
/// Equality compares the represented value: the sign is folded into the
/// phase first, so `-1·e^{0}` equals `+1·e^{iπ}`.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct ExactCoefficient {
    pub sign: i8,
    pub inv_sqrt: i64,
    pub phase: RationalAngle,
}

impl ExactCoefficient {
    pub fn new(sign: i8, inv_sqrt: i64, phase: RationalAngle) -> Self {
        debug_assert!(sign == 1 || sign == -1);
        debug_assert!(inv_sqrt >= 1);
        Self {
            sign,
            inv_sqrt,
            phase,
        }
    }

    /// Phase of the value with the sign absorbed.
    pub fn total_phase(&self) -> RationalAngle {
        if self.sign < 0 {
            self.phase + RationalAngle::HALF_TURN
        } else {
            self.phase
        }
    }

    pub fn magnitude(&self) -> f64 {
        1.0 / (self.inv_sqrt as f64).sqrt()
    }

    pub fn value(&self) -> C64 {
        self.total_phase().to_complex() * self.magnitude()
    }
}

impl PartialEq for ExactCoefficient {
    fn eq(&self, other: &Self) -> bool {
        self.inv_sqrt == other.inv_sqrt && self.total_phase() == other.total_phase()
    }
}

impl Eq for ExactCoefficient {}

/// `exp(i·7π/4)/√2`, `-1/√5`.
impl fmt::Display for ExactCoefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sign < 0 {
            write!(f, "-")?;
        }
        if self.phase.is_zero() {
            write!(f, "1/√{}", self.inv_sqrt)
        } else {
            write!(f, "exp(i·{})/√{}", self.phase, self.inv_sqrt)
        }
    }
}

/// Exponent numerator (over `N`, in units of π) of the `ℓ`-th summand of `c_k`.
fn summand_exponent(f: CoprimeFraction, k: i64, l: i64) -> i128 {
    let (m, k, l) = (f.m as i128, k as i128, l as i128);
    if f.is_even() {
        -(m * l * l + 2 * k * l)
    } else {
        -(m * l * (l - 1) + 2 * k * l)
    }
}

fn direct_with_table(f: CoprimeFraction, k: i64, table: &RootTable) -> C64 {
    let k = k.rem_euclid(f.n);
    let sum: C64 = (0..f.n).map(|l| table.get(summand_exponent(f, k, l))).sum();
    sum / f.n as f64
}

/// `c_k` by direct summation of the defining finite sum.
///
/// Odd `N`: `(1/N) Σ_ℓ e^{-πi(Mℓ(ℓ-1) + 2kℓ)/N}`; even `N`:
/// `(1/N) Σ_ℓ e^{-πi(Mℓ² + 2kℓ)/N}`. Each exponent is reduced exactly; the
/// only rounding is in the accumulation (ascending `ℓ`, uncompensated).
pub fn gauss_coefficient_direct(f: CoprimeFraction, k: i64) -> C64 {
    direct_with_table(f, k, &RootTable::new(f.n))
}

/// All `N` coefficients by direct summation, `k = 0..N`.
pub fn gauss_coefficients_direct(f: CoprimeFraction) -> Vec<C64> {
    let table = RootTable::new(f.n);
    (0..f.n).map(|k| direct_with_table(f, k, &table)).collect()
}

/// `Σ_{ℓ=0}^{N-1} (-1)^ℓ e^{-πiMℓ²/N}` for `M`, `N` both odd.
///
/// Takes raw integers so that the degenerate `N = 1` case is expressible.
pub fn gauss_sum_alternating(m: i64, n: i64) -> Result<C64> {
    if m % 2 == 0 || n % 2 == 0 || n < 1 {
        return Err(Error::ParityPrecondition { m, n });
    }
    let table = RootTable::new(n);
    let (mw, nw) = (m as i128, n as i128);
    Ok((0..nw).map(|l| table.get(-mw * l * l + nw * l)).sum())
}

/// `c_k` in closed form, with the phase kept exact.
///
/// With `d = M⁻¹ mod N`:
/// - even `N`: `c_k = (N/M) e^{πi(M/N)(d²k² - N/4)} / √N`
/// - odd `N`, even `M`: `c_k = (M/N) e^{πi(d²(k - M/2)² M/N + (N-1)/4)} / √N`
/// - odd `N`, odd `M`: `c_k = (M/N) (-1)^{d·s} e^{πi(d² s² M/N + (N-1)/4)} / √N`
///   with `s = k + (N-M)/2`
///
/// where `(a/b)` is the Jacobi symbol. `k` is reduced mod `N`.
pub fn gauss_coefficient_closed(f: CoprimeFraction, k: i64) -> ExactCoefficient {
    let (m, n) = (f.m as i128, f.n as i128);
    let k = k.rem_euclid(f.n) as i128;
    let d = f.inverse() as i128;
    let jacobi = |a: i64, b: i64| jacobi_symbol(a, b).expect("odd modulus by dispatch");

    if f.is_even() {
        // squares of d·k only matter mod 2N
        let x = (d * k).rem_euclid(2 * n);
        let phase = RationalAngle::from_wide(4 * m * x * x - m * n, 4 * n);
        ExactCoefficient::new(jacobi(f.n, f.m), f.n, phase)
    } else if f.m % 2 == 0 {
        // (k - M/2)² = (2k - M)²/4, folded into the common denominator 4N
        let y = (d * (2 * k - m)).rem_euclid(4 * n);
        let phase = RationalAngle::from_wide(m * y * y + n * (n - 1), 4 * n);
        ExactCoefficient::new(jacobi(f.m, f.n), f.n, phase)
    } else {
        let s = k + (n - m) / 2;
        let z = (d * s).rem_euclid(2 * n);
        let phase = RationalAngle::from_wide(4 * m * z * z + n * (n - 1), 4 * n);
        let parity = if z % 2 == 0 { 1 } else { -1 };
        ExactCoefficient::new(parity * jacobi(f.m, f.n), f.n, phase)
    }
}

/// All `N` closed-form coefficients, `k = 0..N`.
pub fn gauss_coefficients_closed(f: CoprimeFraction) -> Vec<ExactCoefficient> {
    (0..f.n).map(|k| gauss_coefficient_closed(f, k)).collect()
}
