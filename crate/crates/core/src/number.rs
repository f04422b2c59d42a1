//! Integer number theory used by the closed-form coefficients.

use crate::error::{Error, Result};

/// Greatest common divisor by Euclid's algorithm.
pub fn gcd(a: u64, b: u64) -> Result<u64> {
    if a == 0 && b == 0 {
        return Err(Error::GcdOfZeros);
    }
    let (mut a, mut b) = (a, b);
    while b != 0 {
        (a, b) = (b, a % b);
    }
    Ok(a)
}

fn gcd_i64(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a as i64
}

/// The unique `d` in `1..=n` with `m·d ≡ 1 (mod n)`.
///
/// `n = 1` returns `1`.
pub fn mod_inverse(m: i64, n: i64) -> Result<i64> {
    if n < 1 {
        return Err(Error::NoInverse { m, n, gcd: 0 });
    }
    if n == 1 {
        return Ok(1);
    }
    // extended Euclid on (m mod n, n)
    let (mut r0, mut r1) = (m.rem_euclid(n) as i128, n as i128);
    let (mut s0, mut s1) = (1i128, 0i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    if r0 != 1 {
        return Err(Error::NoInverse {
            m,
            n,
            gcd: gcd_i64(m, n),
        });
    }
    let d = s0.rem_euclid(n as i128) as i64;
    Ok(if d == 0 { n } else { d })
}

/// Jacobi symbol `(a/b)` for odd `b ≥ 1`.
///
/// Iterative reduction with the supplementary law for 2 and quadratic
/// reciprocity; no factorization. Returns 0 iff `gcd(a, b) > 1`.
pub fn jacobi_symbol(a: i64, b: i64) -> Result<i8> {
    if b <= 0 || b % 2 == 0 {
        return Err(Error::InvalidJacobiModulus(b));
    }
    let mut num = a.rem_euclid(b) as u64;
    let mut den = b as u64;
    let mut acc: i8 = 1;
    while num != 0 {
        let twos = num.trailing_zeros();
        num >>= twos;
        if twos % 2 == 1 && matches!(den % 8, 3 | 5) {
            acc = -acc;
        }
        // num, den both odd now
        if num % 4 == 3 && den % 4 == 3 {
            acc = -acc;
        }
        (num, den) = (den % num, num);
    }
    Ok(if den == 1 { acc } else { 0 })
}
