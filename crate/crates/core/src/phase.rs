//! Exact phases `e^{iπ·num/den}`, identified modulo 2π.

use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// The phase `e^{iπ·num/den}` as a reduced rational multiple of π.
///
/// Always canonical: `gcd(num, den) = 1`, `0 ≤ num < 2·den`, and the zero
/// phase is `0/1`. Equality is therefore equality of phases mod 2π.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RationalAngle {
    num: i64,
    den: i64,
}

impl RationalAngle {
    pub const ZERO: Self = Self { num: 0, den: 1 };
    /// `e^{iπ} = -1`.
    pub const HALF_TURN: Self = Self { num: 1, den: 1 };

    /// `e^{iπ·num/den}`. Panics if `den == 0`.
    pub fn new(num: i64, den: i64) -> Self {
        Self::from_wide(num as i128, den as i128)
    }

    /// As [`RationalAngle::new`] with wide intermediates, for exponents built
    /// from products of several integers.
    pub fn from_wide(num: i128, den: i128) -> Self {
        assert!(den != 0, "RationalAngle with zero denominator");
        let (num, den) = if den < 0 { (-num, -den) } else { (num, den) };
        let num = num.rem_euclid(2 * den);
        if num == 0 {
            return Self::ZERO;
        }
        let g = gcd_u128(num as u128, den as u128) as i128;
        let (num, den) = (num / g, den / g);
        Self {
            num: i64::try_from(num).expect("phase numerator overflow"),
            den: i64::try_from(den).expect("phase denominator overflow"),
        }
    }

    pub fn num(self) -> i64 {
        self.num
    }

    pub fn den(self) -> i64 {
        self.den
    }

    pub fn is_zero(self) -> bool {
        self.num == 0
    }

    /// Numerator in `(-den, den]`, i.e. the angle taken in `(-π, π]`.
    pub fn signed_num(self) -> i64 {
        if self.num > self.den {
            self.num - 2 * self.den
        } else {
            self.num
        }
    }

    /// The angle in radians, in `(-π, π]`.
    pub fn radians(self) -> f64 {
        PI * self.signed_num() as f64 / self.den as f64
    }

    /// Integer multiple of the angle.
    pub fn times(self, k: i64) -> Self {
        Self::from_wide(self.num as i128 * k as i128, self.den as i128)
    }

    /// `e^{iπ·num/den}`. Quarter turns are returned exactly.
    pub fn to_complex(self) -> C64 {
        match (self.num, self.den) {
            (0, 1) => C64::new(1.0, 0.0),
            (1, 2) => C64::new(0.0, 1.0),
            (1, 1) => C64::new(-1.0, 0.0),
            (3, 2) => C64::new(0.0, -1.0),
            _ => C64::from_polar(1.0, self.radians()),
        }
    }
}

impl Default for RationalAngle {
    fn default() -> Self {
        Self::ZERO
    }
}

impl Add for RationalAngle {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        let (a, b) = (self.den as i128, rhs.den as i128);
        Self::from_wide(self.num as i128 * b + rhs.num as i128 * a, a * b)
    }
}

impl Sub for RationalAngle {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for RationalAngle {
    type Output = Self;

    fn neg(self) -> Self {
        Self::from_wide(-(self.num as i128), self.den as i128)
    }
}

/// Multiples of π: `0`, `π`, `7π/4`, `π/4`.
impl fmt::Display for RationalAngle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.num, self.den) {
            (0, _) => write!(f, "0"),
            (1, 1) => write!(f, "π"),
            (n, 1) => write!(f, "{n}π"),
            (1, d) => write!(f, "π/{d}"),
            (n, d) => write!(f, "{n}π/{d}"),
        }
    }
}

/// Table of `e^{iπ·j/den}` for `j` in `0..2·den`.
///
/// Sums whose exponents all share one denominator reduce each exponent
/// exactly and then look the root of unity up here.
#[derive(Clone, Debug)]
pub struct RootTable {
    den: i64,
    roots: Vec<C64>,
}

impl RootTable {
    pub fn new(den: i64) -> Self {
        assert!(den > 0);
        let roots = (0..2 * den)
            .map(|j| RationalAngle::new(j, den).to_complex())
            .collect();
        Self { den, roots }
    }

    pub fn den(&self) -> i64 {
        self.den
    }

    /// `e^{iπ·num/den}` for any integer `num`.
    pub fn get(&self, num: i128) -> C64 {
        self.roots[num.rem_euclid(2 * self.den as i128) as usize]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn canonical_form() {
        assert_eq!(RationalAngle::new(-1, 4), RationalAngle::new(7, 4));
        assert_eq!(RationalAngle::new(2, 8), RationalAngle::new(1, 4));
        assert_eq!(RationalAngle::new(6, 3), RationalAngle::ZERO);
        assert_eq!(RationalAngle::new(3, -4), RationalAngle::new(5, 4));
        let a = RationalAngle::new(-1, 4);
        assert_eq!((a.num(), a.den()), (7, 4));
        assert_eq!(RationalAngle::new(0, 9).den(), 1);
    }

    #[test]
    fn arithmetic() {
        let q = RationalAngle::new(1, 4);
        assert_eq!(q + q, RationalAngle::new(1, 2));
        assert_eq!(q - q, RationalAngle::ZERO);
        assert_eq!(-q, RationalAngle::new(7, 4));
        assert_eq!(q.times(8), RationalAngle::ZERO);
        assert_eq!(
            RationalAngle::new(1, 6) + RationalAngle::new(1, 3),
            RationalAngle::new(1, 2)
        );
    }

    #[test]
    fn complex_values() {
        assert_eq!(RationalAngle::HALF_TURN.to_complex(), C64::new(-1.0, 0.0));
        assert_eq!(RationalAngle::new(1, 2).to_complex(), C64::new(0.0, 1.0));
        let z = RationalAngle::new(7, 4).to_complex();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert!((z - C64::new(s, -s)).norm() < 1e-15);
        assert_eq!(RationalAngle::new(7, 4).signed_num(), -1);
    }

    #[test]
    fn display() {
        assert_eq!(RationalAngle::new(7, 4).to_string(), "7π/4");
        assert_eq!(RationalAngle::new(1, 4).to_string(), "π/4");
        assert_eq!(RationalAngle::HALF_TURN.to_string(), "π");
        assert_eq!(RationalAngle::ZERO.to_string(), "0");
    }

    #[test]
    fn root_table_matches_direct() {
        let t = RootTable::new(7);
        for j in -30..30 {
            assert!((t.get(j) - RationalAngle::new(j as i64, 7).to_complex()).norm() < 1e-15);
        }
    }

    proptest! {
        #[test]
        fn canonical_invariants(num in -1_000_000i64..1_000_000, den in 1i64..10_000) {
            let a = RationalAngle::new(num, den);
            prop_assert!(a.num() >= 0 && a.num() < 2 * a.den());
            if a.num() == 0 {
                prop_assert_eq!(a.den(), 1);
            } else {
                prop_assert_eq!(gcd_u128(a.num() as u128, a.den() as u128), 1);
            }
            let expected = C64::from_polar(1.0, PI * num as f64 / den as f64);
            prop_assert!((a.to_complex() - expected).norm() < 1e-9);
        }

        #[test]
        fn addition_matches_complex_product(a in -500i64..500, b in 1i64..60, c in -500i64..500, d in 1i64..60) {
            let x = RationalAngle::new(a, b);
            let y = RationalAngle::new(c, d);
            prop_assert!(((x + y).to_complex() - x.to_complex() * y.to_complex()).norm() < 1e-13);
        }
    }
}
