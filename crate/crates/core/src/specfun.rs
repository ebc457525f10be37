//! Special functions and exact closed-form integrals.
//!
//! Everything a Toeplitz matrix element needs is reduced here to three
//! primitives with closed forms:
//!
//! * sphere monomial integrals
//!   `int_{S^{2n-1}} z^a conj(z)^b dS = [a == b] * 2 pi^n a! / (n-1+|a|)!`,
//! * radial Gaussian moments `int_0^inf r^p exp(-r^2/2) dr`,
//! * radial ball moments `int_0^1 r^p dr = 1/(p+1)`.
//!
//! Factorial-type quantities are kept as exact integers/rationals up to
//! [`DEGREE_CAP`]; beyond the cap the functions refuse rather than lose
//! precision.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::multi_index::MultiIndex;

/// Hard cap on factorial arguments and monomial degrees. Generous compared to
/// any truncation window the solvers use.
pub const DEGREE_CAP: u32 = 4096;

/// Exact factorial, refused beyond [`DEGREE_CAP`].
pub fn factorial(k: u32) -> Result<BigUint> {
    if k > DEGREE_CAP {
        return Err(Error::CapacityExceeded(format!(
            "factorial({k}) exceeds cap {DEGREE_CAP}"
        )));
    }
    let mut acc = BigUint::one();
    for j in 2..=u64::from(k) {
        acc *= j;
    }
    Ok(acc)
}

/// `m! = prod_i m_i!` as an exact integer.
pub fn multi_factorial(m: &MultiIndex) -> Result<BigUint> {
    let mut acc = BigUint::one();
    for &e in m.entries() {
        acc *= factorial(e)?;
    }
    Ok(acc)
}

// Stirling coefficients B_{2k} / (2k (2k-1)).
const STIRLING: [f64; 7] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
];

/// Natural log of the Gamma function for x > 0.
///
/// Stirling series after shifting the argument above 10; relative accuracy is
/// better than 1e-13 across `[0.5, 1e6]`.
pub fn log_gamma(x: f64) -> Result<f64> {
    if x.is_nan() || x <= 0.0 {
        return Err(Error::DomainError(format!(
            "log_gamma requires x > 0, got {x}"
        )));
    }
    let mut shift = 0.0;
    let mut y = x;
    while y < 10.0 {
        shift += y.ln();
        y += 1.0;
    }
    let mut series = 0.0;
    let y2 = y * y;
    let mut pw = y;
    for c in STIRLING {
        series += c / pw;
        pw *= y2;
    }
    let half_log_two_pi = 0.5 * (2.0 * std::f64::consts::PI).ln();
    Ok((y - 0.5) * y.ln() - y + half_log_two_pi + series - shift)
}

/// `Gamma(x+a)/Gamma(x) - x^a`, the remainder whose decay rate `O(x^{a-1})`
/// the weight comparison relies on.
pub fn gamma_ratio_deviation(x: f64, a: f64) -> Result<f64> {
    if x.is_nan() || a.is_nan() || x <= a.abs() + 1.0 {
        return Err(Error::DomainError(format!(
            "gamma_ratio_deviation requires x > |a| + 1, got x = {x}, a = {a}"
        )));
    }
    if a == 0.0 {
        return Ok(0.0);
    }
    Ok((log_gamma(x + a)? - log_gamma(x)?).exp() - x.powf(a))
}

/// Laguerre polynomial L_k(x) by the three-term recurrence
/// `(k+1) L_{k+1} = (2k+1-x) L_k - k L_{k-1}`.
pub fn laguerre(k: u32, x: f64) -> f64 {
    if k == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut cur = 1.0 - x;
    for j in 1..k {
        let jf = j as f64;
        let next = ((2.0 * jf + 1.0 - x) * cur - jf * prev) / (jf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// The rational coefficient `q` with
/// `int_{S^{2n-1}} z^alpha conj(z)^beta dS = q * pi^n`.
///
/// Zero unless `alpha == beta`; for `alpha == beta` it is
/// `2 alpha! / (n-1+|alpha|)!`.
pub fn sphere_monomial_coeff(alpha: &MultiIndex, beta: &MultiIndex) -> Result<BigRational> {
    if alpha.dim() != beta.dim() {
        return Err(Error::DimensionMismatch {
            expected: alpha.dim(),
            found: beta.dim(),
        });
    }
    if alpha != beta {
        return Ok(BigRational::zero());
    }
    let n = alpha.dim() as u32;
    let num = BigInt::from(multi_factorial(alpha)?) * BigInt::from(2);
    let den = BigInt::from(factorial(n - 1 + alpha.total())?);
    Ok(BigRational::new(num, den))
}

/// `int_{S^{2n-1}} z^alpha conj(z)^beta dS` as a float.
pub fn sphere_monomial_integral(alpha: &MultiIndex, beta: &MultiIndex) -> Result<f64> {
    let q = sphere_monomial_coeff(alpha, beta)?;
    Ok(ratio_to_f64(&q) * std::f64::consts::PI.powi(alpha.dim() as i32))
}

/// `int_0^inf r^p exp(-r^2/2) dr = 2^{(p-1)/2} Gamma((p+1)/2)`.
///
/// Odd `p` gives the exact integer `2^k k!` with `k = (p-1)/2`; even `p`
/// gives `(p-1)!! sqrt(pi/2)`.
pub fn radial_gaussian_moment(p: u32) -> f64 {
    if p % 2 == 1 {
        let k = (p - 1) / 2;
        let mut acc = 1.0;
        for j in 1..=k {
            acc *= 2.0 * j as f64;
        }
        acc
    } else {
        let mut acc = 1.0;
        let mut j = 1;
        while j < p {
            acc *= j as f64;
            j += 2;
        }
        acc * (std::f64::consts::PI / 2.0).sqrt()
    }
}

/// Exact value of the odd radial moment, `p = 2k+1 -> 2^k k!`.
pub(crate) fn radial_gaussian_moment_exact_odd(p: u32) -> Result<BigUint> {
    debug_assert_eq!(p % 2, 1);
    let k = (p - 1) / 2;
    Ok(factorial(k)? << k)
}

/// `int_0^1 r^p dr = 1/(p+1)`, exact.
pub fn radial_ball_moment(p: u32) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(p + 1))
}

/// Lossless-as-possible conversion of a big rational to f64, stable even when
/// numerator and denominator individually overflow the f64 range.
pub(crate) fn ratio_to_f64(r: &BigRational) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    let (num_m, num_e) = bigint_mantissa(r.numer());
    let (den_m, den_e) = bigint_mantissa(r.denom());
    (num_m / den_m) * ((num_e - den_e) as f64).exp2()
}

fn bigint_mantissa(x: &BigInt) -> (f64, i64) {
    let bits = x.bits();
    if bits <= 900 {
        (x.to_f64().unwrap_or(0.0), 0)
    } else {
        let shift = bits - 64;
        let reduced: BigInt = x >> shift;
        (reduced.to_f64().unwrap_or(0.0), shift as i64)
    }
}
