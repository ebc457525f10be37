//! Bergman-space calculus on the unit ball and the comparison of its
//! coordinate-compression weights with the Landau-level ones.
//!
//! Both compressions `P Z_i P` are weighted shifts `m -> m + e_i` in the
//! respective monomial bases; only the weight sequences differ, and their
//! difference decays like `1/|m|`. That decay is what ties the two operator
//! algebras together, so it gets a dedicated sweep here.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::multi_index::MultiIndex;
use crate::specfun::{
    factorial, log_gamma, multi_factorial, radial_ball_moment, ratio_to_f64, sphere_monomial_coeff,
};

/// Which space a weighted-shift structure refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Space {
    Landau,
    Bergman,
}

/// Weight of the Landau coordinate compression:
/// `<eta_{m+e_i}, Z_i eta_m> = Gamma(|m|+n+1/2) sqrt(m_i+1) / (|m|+n)!`.
pub fn landau_coordinate_element(n: usize, axis: usize, m: &MultiIndex) -> Result<f64> {
    if axis >= n {
        return Err(Error::IndexOutOfRange { axis, dim: n });
    }
    let s = f64::from(m.total()) + n as f64;
    let lg = log_gamma(s + 0.5)? - log_gamma(s + 1.0)?;
    Ok(lg.exp() * f64::from(m.entry(axis) + 1).sqrt())
}

/// Weight of the Bergman coordinate compression, assembled from first
/// principles (ball moment, sphere integral, exact normalizations). Closed
/// form: `2 sqrt(m_i+1) sqrt(n+|m|+1) / (2|m| + 2n + 1)`.
pub fn bergman_coordinate_element(n: usize, axis: usize, m: &MultiIndex) -> Result<f64> {
    if axis >= n {
        return Err(Error::IndexOutOfRange { axis, dim: n });
    }
    let m_up = m.plus_unit(axis);
    let s = m.total();
    // normalization product: pi^{-n} sqrt((n+|m|)! (n+|m|+1)! / (m! (m+e_i)!))
    let norm_ratio = BigRational::new(
        BigInt::from(factorial(n as u32 + s)?) * BigInt::from(factorial(n as u32 + s + 1)?),
        BigInt::from(multi_factorial(m)?) * BigInt::from(multi_factorial(&m_up)?),
    );
    // integral: ball moment times sphere integral (pi^n cancels the norms)
    let radial = radial_ball_moment(2 * s + 2 * n as u32);
    let sphere = sphere_monomial_coeff(&m_up, &m_up)?;
    Ok(ratio_to_f64(&norm_ratio).sqrt() * ratio_to_f64(&(radial * sphere)))
}

/// First-order large-degree approximation of the Bergman weight:
/// `sqrt(m_i+1) / sqrt(n+|m|+1)`. The exact weight differs from it by the
/// factor `2(n+|m|+1)/(2|m|+2n+1) -> 1`.
pub fn asymptotic_weight(n: usize, axis: usize, m: &MultiIndex) -> Result<f64> {
    if axis >= n {
        return Err(Error::IndexOutOfRange { axis, dim: n });
    }
    Ok(f64::from(m.entry(axis) + 1).sqrt() / (n as f64 + f64::from(m.total()) + 1.0).sqrt())
}

/// Exact inner product `<mu_m, mu_m'>` of normalized ball monomials.
pub fn bergman_inner(n: usize, m: &MultiIndex, m2: &MultiIndex) -> Result<f64> {
    if m.dim() != n || m2.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: m.dim().max(m2.dim()),
        });
    }
    if m != m2 {
        return Ok(0.0);
    }
    let s = m.total();
    let norm_sq = BigRational::new(
        BigInt::from(factorial(n as u32 + s)?),
        BigInt::from(multi_factorial(m)?),
    );
    let radial = radial_ball_moment(2 * s + 2 * n as u32 - 1);
    let sphere = sphere_monomial_coeff(m, m)?;
    Ok(ratio_to_f64(&(norm_sq * radial * sphere)))
}

/// The weighted-shift structure of `P Z_axis P`: target index and weight.
pub fn shift_structure(
    space: Space,
    n: usize,
    axis: usize,
    m: &MultiIndex,
) -> Result<(MultiIndex, f64)> {
    let weight = match space {
        Space::Landau => landau_coordinate_element(n, axis, m)?,
        Space::Bergman => bergman_coordinate_element(n, axis, m)?,
    };
    Ok((m.plus_unit(axis), weight))
}

/// One row of the weight-comparison sweep.
#[derive(Clone, Debug)]
pub struct WeightComparison {
    pub m: MultiIndex,
    pub lambda_eta: f64,
    pub lambda_mu_exact: f64,
    pub lambda_mu_asymptotic: f64,
    pub diff: f64,
    pub diff_times_absm: f64,
}

/// Landau vs Bergman weights for all `|m| <= degree_cap`, graded-lex ordered.
pub fn compare_weights(n: usize, axis: usize, degree_cap: u32) -> Result<Vec<WeightComparison>> {
    if axis >= n {
        return Err(Error::IndexOutOfRange { axis, dim: n });
    }
    MultiIndex::graded_up_to(n, degree_cap)
        .into_iter()
        .map(|m| {
            let lambda_eta = landau_coordinate_element(n, axis, &m)?;
            let lambda_mu_exact = bergman_coordinate_element(n, axis, &m)?;
            let lambda_mu_asymptotic = asymptotic_weight(n, axis, &m)?;
            let diff = (lambda_eta - lambda_mu_exact).abs();
            Ok(WeightComparison {
                diff_times_absm: diff * f64::from(m.total()),
                m,
                lambda_eta,
                lambda_mu_exact,
                lambda_mu_asymptotic,
                diff,
            })
        })
        .collect()
}
