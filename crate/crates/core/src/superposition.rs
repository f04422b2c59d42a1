//! The finite superposition `Σ_k c_k |e^{iθ_k} α⟩` for a coprime fraction.
//!
//! Odd `N` uses rotations `θ_k = 2πk/N`; even `N` shifts them by `πM/N`,
//! because there the state lives in the `a^N` eigenspace with eigenvalue
//! `-α^N`. Components are kept in `k` order so that `components[k]` carries
//! `c_k`.

use std::collections::HashSet;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gauss_sums::{gauss_coefficient_closed, CoprimeFraction, ExactCoefficient};
use crate::phase::{RationalAngle, RootTable};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(f: CoprimeFraction) -> Self {
        if f.is_even() {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Component {
    pub k: i64,
    pub coefficient: ExactCoefficient,
    /// `θ_k`: the component is `|e^{iθ_k} α⟩`.
    pub rotation: RationalAngle,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "DescriptorJson", try_from = "DescriptorJson")]
pub struct KittenDescriptor {
    pub fraction: CoprimeFraction,
    pub parity: Parity,
    pub components: Vec<Component>,
}

/// Rotation `θ_k` of the `k`-th component.
pub fn rotation(f: CoprimeFraction, k: i64) -> RationalAngle {
    if f.is_even() {
        RationalAngle::new(2 * k + f.m(), f.n())
    } else {
        RationalAngle::new(2 * k, f.n())
    }
}

/// Descriptor with closed-form coefficients.
pub fn build_descriptor(f: CoprimeFraction) -> KittenDescriptor {
    build_descriptor_with(f, gauss_coefficient_closed)
}

/// Descriptor with coefficients from an arbitrary rule `(f, k) ↦ c_k`.
pub fn build_descriptor_with(
    f: CoprimeFraction,
    rule: impl Fn(CoprimeFraction, i64) -> ExactCoefficient,
) -> KittenDescriptor {
    let components = (0..f.n())
        .map(|k| Component {
            k,
            coefficient: rule(f, k),
            rotation: rotation(f, k),
        })
        .collect();
    KittenDescriptor {
        fraction: f,
        parity: Parity::of(f),
        components,
    }
}

impl KittenDescriptor {
    pub fn n(&self) -> usize {
        self.components.len()
    }

    pub fn coefficient_values(&self) -> Vec<C64> {
        self.components
            .iter()
            .map(|c| c.coefficient.value())
            .collect()
    }

    /// The same state written in terms of `e^{iθ}α`: every rotation is
    /// shifted by `θ`.
    pub fn with_alpha_rotated(&self, theta: RationalAngle) -> Self {
        let mut out = self.clone();
        for c in &mut out.components {
            c.rotation = c.rotation + theta;
        }
        out
    }

    /// `α → -iα`; applied to `1/2` this gives the Yurke-Stoler state
    /// `(e^{-iπ/4}|α⟩ + e^{iπ/4}|-α⟩)/√2`.
    pub fn yurke_stoler(&self) -> Self {
        self.with_alpha_rotated(RationalAngle::new(-1, 2))
    }

    /// Components ordered by rotation angle in `[0, 2π)`.
    pub fn sorted_by_rotation(&self) -> Vec<Component> {
        let mut v = self.components.clone();
        v.sort_by(|a, b| {
            let lhs = a.rotation.num() as i128 * b.rotation.den() as i128;
            let rhs = b.rotation.num() as i128 * a.rotation.den() as i128;
            lhs.cmp(&rhs)
        });
        v
    }

    /// `Σ_k |c_k|²`.
    pub fn norm_sq(&self) -> f64 {
        self.components
            .iter()
            .map(|c| c.coefficient.magnitude().powi(2))
            .sum()
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.fraction.n();
        let bad = |msg: String| Err(Error::InvalidDescriptor(msg));
        if self.parity != Parity::of(self.fraction) {
            return bad(format!("parity does not match N = {n}"));
        }
        if self.components.len() as i64 != n {
            return bad(format!("{} components for N = {n}", self.components.len()));
        }
        let mut seen = HashSet::new();
        for (i, c) in self.components.iter().enumerate() {
            if c.k != i as i64 {
                return bad(format!("component {i} has k = {}", c.k));
            }
            if c.coefficient.inv_sqrt != n {
                return bad(format!(
                    "component {i} has magnitude 1/√{}",
                    c.coefficient.inv_sqrt
                ));
            }
            if c.coefficient.sign.abs() != 1 {
                return bad(format!("component {i} has sign {}", c.coefficient.sign));
            }
            if !seen.insert(c.rotation) {
                return bad(format!("rotation {} repeated", c.rotation));
            }
        }
        Ok(())
    }
}

/// Target phases `e^{-πiM n(n-1)/N}` (odd `N`) or `e^{-πiM n²/N}` (even `N`),
/// `n = 0..N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhaseSequence {
    pub values: Vec<RationalAngle>,
}

impl PhaseSequence {
    pub fn new(f: CoprimeFraction) -> Self {
        let (m, n) = (f.m() as i128, f.n() as i128);
        let values = (0..n)
            .map(|t| {
                let q = if f.is_even() { t * t } else { t * (t - 1) };
                RationalAngle::from_wide(-m * q, n)
            })
            .collect();
        Self { values }
    }
}

// numerator of `a` over the denominator `den`, which `a.den()` must divide
fn numerator_over(a: RationalAngle, den: i64) -> i128 {
    a.num() as i128 * (den / a.den()) as i128
}

/// `c_k` by the naive inverse DFT of the target phase sequence.
pub fn coefficients_by_inverse_dft(f: CoprimeFraction) -> Vec<C64> {
    let n = f.n();
    let targets = PhaseSequence::new(f);
    let table = RootTable::new(n);
    (0..n as i128)
        .map(|k| {
            let sum: C64 = targets
                .values
                .iter()
                .enumerate()
                .map(|(t, &phase)| table.get(numerator_over(phase, n) - 2 * k * t as i128))
                .sum();
            sum / n as f64
        })
        .collect()
}

/// `max_n |Σ_k c_k e^{2πikn/N} - target(n)|`.
pub fn verify_forward_dft(f: CoprimeFraction, c: &[C64]) -> Result<f64> {
    let n = f.n();
    if c.len() as i64 != n {
        return Err(Error::LengthMismatch {
            expected: n as usize,
            actual: c.len(),
        });
    }
    let table = RootTable::new(n);
    let targets = PhaseSequence::new(f);
    let err = targets
        .values
        .iter()
        .enumerate()
        .map(|(t, target)| {
            let sum: C64 = c
                .iter()
                .enumerate()
                .map(|(k, ck)| ck * table.get(2 * (k * t) as i128))
                .sum();
            (sum - target.to_complex()).norm()
        })
        .fold(0.0, f64::max);
    Ok(err)
}

// (M, N, rotations, coefficient phases) in units of π; a phase of (1, 1)
// with sign -1 is written as a bare minus sign in the listing
type Listing = (i64, i64, &'static [(i64, i64)], &'static [(i8, i64, i64)]);

const LISTED: &[Listing] = &[
    // parity cat
    (1, 2, &[(1, 2), (3, 2)], &[(1, -1, 4), (1, 1, 4)]),
    // compass state for the Fourier transform
    (
        3,
        4,
        &[(3, 4), (5, 4), (7, 4), (1, 4)],
        &[(1, 5, 4), (1, 0, 1), (1, 1, 4), (1, 0, 1)],
    ),
    // ... and for its inverse (i → -i)
    (
        1,
        4,
        &[(1, 4), (3, 4), (5, 4), (7, 4)],
        &[(1, -1, 4), (1, 0, 1), (1, 3, 4), (1, 0, 1)],
    ),
    (
        1,
        3,
        &[(0, 1), (2, 3), (4, 3)],
        &[(1, -1, 6), (1, -1, 6), (1, 1, 2)],
    ),
    (
        2,
        3,
        &[(0, 1), (2, 3), (4, 3)],
        &[(1, 1, 6), (1, -1, 2), (1, 1, 6)],
    ),
    (
        1,
        5,
        &[(0, 1), (2, 5), (4, 5), (6, 5), (8, 5)],
        &[(1, -1, 5), (1, -1, 5), (1, 1, 5), (-1, 0, 1), (1, 1, 5)],
    ),
    (
        2,
        5,
        &[(0, 1), (2, 5), (4, 5), (6, 5), (8, 5)],
        &[(1, -2, 5), (1, 0, 1), (1, -2, 5), (1, 2, 5), (1, 2, 5)],
    ),
    (
        3,
        5,
        &[(0, 1), (2, 5), (4, 5), (6, 5), (8, 5)],
        &[(1, 2, 5), (1, -2, 5), (1, -2, 5), (1, 2, 5), (1, 0, 1)],
    ),
    (
        4,
        5,
        &[(0, 1), (2, 5), (4, 5), (6, 5), (8, 5)],
        &[(1, 1, 5), (1, -1, 5), (-1, 0, 1), (1, -1, 5), (1, 1, 5)],
    ),
];

/// The explicitly known small states, transcribed as exact data:
/// `N = 2` (`M = 1`), `N = 4` (`M = 3` and `M = 1`), `N = 3` (`M = 1, 2`) and
/// `N = 5` (`M = 1..4`).
pub fn golden_states() -> Vec<(CoprimeFraction, KittenDescriptor)> {
    LISTED
        .iter()
        .map(|&(m, n, rotations, phases)| {
            let fraction = CoprimeFraction::new(m, n).expect("listed fraction");
            let components = rotations
                .iter()
                .zip(phases)
                .enumerate()
                .map(|(k, (&(rn, rd), &(sign, pn, pd)))| Component {
                    k: k as i64,
                    coefficient: ExactCoefficient::new(sign, n, RationalAngle::new(pn, pd)),
                    rotation: RationalAngle::new(rn, rd),
                })
                .collect();
            let d = KittenDescriptor {
                fraction,
                parity: Parity::of(fraction),
                components,
            };
            (fraction, d)
        })
        .collect()
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct CoeffJson {
    sign: i8,
    phase_num: i64,
    phase_den: i64,
    inv_sqrt: i64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct AngleJson {
    num: i64,
    den: i64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct ComponentJson {
    k: i64,
    coeff: CoeffJson,
    rotation: AngleJson,
}

/// Wire form: `{"M", "N", "parity", "components": [{"k", "coeff", "rotation"}]}`
/// with phases meaning `e^{iπ·num/den}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
struct DescriptorJson {
    #[serde(rename = "M")]
    m: i64,
    #[serde(rename = "N")]
    n: i64,
    parity: Parity,
    components: Vec<ComponentJson>,
}

impl From<KittenDescriptor> for DescriptorJson {
    fn from(d: KittenDescriptor) -> Self {
        DescriptorJson {
            m: d.fraction.m(),
            n: d.fraction.n(),
            parity: d.parity,
            components: d
                .components
                .iter()
                .map(|c| ComponentJson {
                    k: c.k,
                    coeff: CoeffJson {
                        sign: c.coefficient.sign,
                        phase_num: c.coefficient.phase.num(),
                        phase_den: c.coefficient.phase.den(),
                        inv_sqrt: c.coefficient.inv_sqrt,
                    },
                    rotation: AngleJson {
                        num: c.rotation.num(),
                        den: c.rotation.den(),
                    },
                })
                .collect(),
        }
    }
}

impl TryFrom<DescriptorJson> for KittenDescriptor {
    type Error = Error;

    fn try_from(j: DescriptorJson) -> Result<Self> {
        let fraction = CoprimeFraction::new(j.m, j.n)?;
        let positive = |den: i64, what: &str| {
            if den > 0 {
                Ok(den)
            } else {
                Err(Error::InvalidDescriptor(format!(
                    "{what} denominator {den}"
                )))
            }
        };
        let mut components = Vec::with_capacity(j.components.len());
        for c in j.components {
            if c.coeff.sign != 1 && c.coeff.sign != -1 {
                return Err(Error::InvalidDescriptor(format!("sign {}", c.coeff.sign)));
            }
            components.push(Component {
                k: c.k,
                coefficient: ExactCoefficient::new(
                    c.coeff.sign,
                    c.coeff.inv_sqrt,
                    RationalAngle::new(c.coeff.phase_num, positive(c.coeff.phase_den, "phase")?),
                ),
                rotation: RationalAngle::new(c.rotation.num, positive(c.rotation.den, "rotation")?),
            });
        }
        let d = KittenDescriptor {
            fraction,
            parity: j.parity,
            components,
        };
        d.validate()?;
        Ok(d)
    }
}
