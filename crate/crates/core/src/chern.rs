//! The topological side: winding numbers on the circle and the odd Chern
//! character integral on `S^3`.
//!
//! The `S^3` integral uses the torus parametrization
//! `z1 = cos(theta) e^{i phi1}`, `z2 = sin(theta) e^{i phi2}` with
//! `theta in [0, pi/2]`, `phi_i in [0, 2 pi)`, tensoring Gauss-Legendre in
//! `theta` with trapezoid rules in the angles (spectrally accurate for the
//! periodic directions). Derivatives of symbols are analytic from the term
//! structure; finite differences exist only as a cross-check in the tests.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::pairwise_sum;
use crate::multi_index::MultiIndex;
use crate::specfun::factorial;
use crate::specfun::ratio_to_f64;
use crate::symbols::{BoundarySymbol, ScalarSymbol};

/// Sign relating the coordinate order `(theta, phi1, phi2)` to the boundary
/// orientation of the unit ball in `C^2`. Fixed once: with this sign the
/// standard `SU(2)` symbol pairs to -1, consistent with the circle case
/// where `z/|z|` pairs to -1.
pub const S3_ORIENTATION_SIGN: f64 = -1.0;

/// One quadrature node on the sphere.
#[derive(Clone, Debug)]
pub struct SphereNode {
    /// Parameters: `[theta]` for n = 1 (the angle on the circle),
    /// `[theta, phi1, phi2]` for n = 2.
    pub params: Vec<f64>,
    pub point: Vec<Complex64>,
    /// Weight for coordinate (form) integration `d theta d phi1 d phi2`.
    pub weight_coord: f64,
    /// Weight for surface integration `dS`; sums to `2 pi^n / (n-1)!`.
    pub weight_surface: f64,
}

/// Tensor quadrature on `S^{2n-1}`, n = 1 or 2.
#[derive(Clone, Debug)]
pub struct SphereQuadrature {
    pub n: usize,
    pub nodes: Vec<SphereNode>,
}

impl SphereQuadrature {
    /// Uniform (trapezoid) rule on the circle.
    pub fn circle(m: usize) -> Self {
        let w = 2.0 * std::f64::consts::PI / m as f64;
        let nodes = (0..m)
            .map(|j| {
                let th = w * j as f64;
                SphereNode {
                    params: vec![th],
                    point: vec![Complex64::new(th.cos(), th.sin())],
                    weight_coord: w,
                    weight_surface: w,
                }
            })
            .collect();
        SphereQuadrature { n: 1, nodes }
    }

    /// Gauss-Legendre x trapezoid x trapezoid rule on `S^3`.
    pub fn s3(n_theta: usize, n_phi: usize) -> Self {
        let half_pi = std::f64::consts::FRAC_PI_2;
        let two_pi = 2.0 * std::f64::consts::PI;
        let wphi = two_pi / n_phi as f64;
        let mut nodes = Vec::with_capacity(n_theta * n_phi * n_phi);
        for (x, wx) in gauss_legendre(n_theta) {
            let th = half_pi * (x + 1.0) / 2.0;
            let wth = half_pi / 2.0 * wx;
            let (sin_t, cos_t) = th.sin_cos();
            for j1 in 0..n_phi {
                let p1 = wphi * j1 as f64;
                for j2 in 0..n_phi {
                    let p2 = wphi * j2 as f64;
                    let w_coord = wth * wphi * wphi;
                    nodes.push(SphereNode {
                        params: vec![th, p1, p2],
                        point: vec![
                            Complex64::new(cos_t * p1.cos(), cos_t * p1.sin()),
                            Complex64::new(sin_t * p2.cos(), sin_t * p2.sin()),
                        ],
                        weight_coord: w_coord,
                        weight_surface: w_coord * cos_t * sin_t,
                    });
                }
            }
        }
        SphereQuadrature { n: 2, nodes }
    }

    /// The default acceptance-scale rule: 4096 circle nodes, or 64 x 128^2
    /// on `S^3`.
    pub fn standard(n: usize) -> Result<Self> {
        match n {
            1 => Ok(Self::circle(4096)),
            2 => Ok(Self::s3(64, 128)),
            other => Err(Error::UnsupportedDimension { n: other }),
        }
    }

    pub fn doubled(n: usize) -> Result<Self> {
        match n {
            1 => Ok(Self::circle(8192)),
            2 => Ok(Self::s3(128, 256)),
            other => Err(Error::UnsupportedDimension { n: other }),
        }
    }

    pub fn total_surface(&self) -> f64 {
        self.nodes.iter().map(|nd| nd.weight_surface).sum()
    }

    /// Integrate a scalar function against the surface measure.
    pub fn integrate_surface(&self, f: impl Fn(&SphereNode) -> Complex64) -> Complex64 {
        let vals: Vec<Complex64> = self
            .nodes
            .iter()
            .map(|nd| f(nd) * nd.weight_surface)
            .collect();
        pairwise_sum(&vals)
    }
}

/// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration.
fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut out = vec![(0.0, 0.0); n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0f64, x);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        out[i] = (-x, w);
        out[n - 1 - i] = (x, w);
    }
    out
}

const MAX_MATRIX: usize = 3;

// Stack-allocated N x N complex matrix ops, N <= 3; the quadrature loops are
// allocation-free.
type SmallMat = [[Complex64; MAX_MATRIX]; MAX_MATRIX];

fn zero_mat() -> SmallMat {
    [[Complex64::new(0.0, 0.0); MAX_MATRIX]; MAX_MATRIX]
}

fn mat_mul(a: &SmallMat, b: &SmallMat, size: usize) -> SmallMat {
    let mut out = zero_mat();
    for i in 0..size {
        for k in 0..size {
            let aik = a[i][k];
            if aik == Complex64::new(0.0, 0.0) {
                continue;
            }
            for j in 0..size {
                out[i][j] += aik * b[k][j];
            }
        }
    }
    out
}

fn mat_adjoint(a: &SmallMat, size: usize) -> SmallMat {
    let mut out = zero_mat();
    for i in 0..size {
        for j in 0..size {
            out[i][j] = a[j][i].conj();
        }
    }
    out
}

fn mat_trace(a: &SmallMat, size: usize) -> Complex64 {
    (0..size).map(|i| a[i][i]).sum()
}

fn unitary_defect(u: &SmallMat, size: usize) -> f64 {
    let prod = mat_mul(u, &mat_adjoint(u, size), size);
    let mut worst: f64 = 0.0;
    for i in 0..size {
        for j in 0..size {
            let expect = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((prod[i][j] - Complex64::new(expect, 0.0)).norm());
        }
    }
    worst
}

// Evaluate a scalar symbol and its parameter derivatives at an S^3 node.
fn eval_scalar_s3(s: &ScalarSymbol, th: f64, p1: f64, p2: f64) -> (Complex64, [Complex64; 3]) {
    let (sin_t, cos_t) = th.sin_cos();
    let mut val = Complex64::new(0.0, 0.0);
    let mut d = [Complex64::new(0.0, 0.0); 3];
    for (alpha, beta, c) in s.terms() {
        let a1 = alpha.entry(0);
        let a2 = alpha.entry(1);
        let b1 = beta.entry(0);
        let b2 = beta.entry(1);
        let big_a = (a1 + b1) as i32;
        let big_b = (a2 + b2) as i32;
        let phase_angle = (a1 as f64 - b1 as f64) * p1 + (a2 as f64 - b2 as f64) * p2;
        let phase = Complex64::new(0.0, phase_angle).exp() * c;
        let radial = cos_t.powi(big_a) * sin_t.powi(big_b);
        let v = phase * radial;
        val += v;
        d[1] += Complex64::new(0.0, a1 as f64 - b1 as f64) * v;
        d[2] += Complex64::new(0.0, a2 as f64 - b2 as f64) * v;
        let mut dr = 0.0;
        if big_a > 0 {
            dr -= big_a as f64 * cos_t.powi(big_a - 1) * sin_t * sin_t.powi(big_b);
        }
        if big_b > 0 {
            dr += big_b as f64 * sin_t.powi(big_b - 1) * cos_t * cos_t.powi(big_a);
        }
        d[0] += phase * dr;
    }
    (val, d)
}

fn eval_symbol_s3(u: &BoundarySymbol, th: f64, p1: f64, p2: f64) -> (SmallMat, [SmallMat; 3]) {
    let size = u.size();
    let mut val = zero_mat();
    let mut der = [zero_mat(), zero_mat(), zero_mat()];
    for r in 0..size {
        for c in 0..size {
            let (v, d) = eval_scalar_s3(u.entry(r, c), th, p1, p2);
            val[r][c] = v;
            for k in 0..3 {
                der[k][r][c] = d[k];
            }
        }
    }
    (val, der)
}

// Evaluate a scalar symbol and its angle derivative on the circle.
fn eval_scalar_circle(s: &ScalarSymbol, th: f64) -> (Complex64, Complex64) {
    let mut val = Complex64::new(0.0, 0.0);
    let mut d = Complex64::new(0.0, 0.0);
    for (alpha, beta, c) in s.terms() {
        let freq = alpha.entry(0) as f64 - beta.entry(0) as f64;
        let v = Complex64::new(0.0, freq * th).exp() * c;
        val += v;
        d += Complex64::new(0.0, freq) * v;
    }
    (val, d)
}

/// Winding number `(1/2 pi i) int a^{-1} da` of a scalar symbol on the
/// circle (the determinant is taken first for matrix symbols). Trapezoid
/// rule with analytic derivatives; exact for monomials.
pub fn winding_number(a: &BoundarySymbol, nodes: usize) -> Result<i64> {
    if a.dimension() != 1 {
        return Err(Error::UnsupportedDimension { n: a.dimension() });
    }
    let scalar = if a.size() == 1 {
        a.entry(0, 0).clone()
    } else {
        a.det()?
    };
    let mut acc = Vec::with_capacity(nodes);
    let mut min_abs = f64::INFINITY;
    for j in 0..nodes {
        let th = 2.0 * std::f64::consts::PI * j as f64 / nodes as f64;
        let (v, dv) = eval_scalar_circle(&scalar, th);
        min_abs = min_abs.min(v.norm());
        if v.norm() < 1e-14 {
            return Err(Error::NotInvertibleOnCircle { min_abs: v.norm() });
        }
        acc.push(dv / v);
    }
    if min_abs < DET_CIRCLE_THRESHOLD {
        return Err(Error::NotInvertibleOnCircle { min_abs });
    }
    let total = pairwise_sum(&acc) / Complex64::new(0.0, nodes as f64);
    let w = total.re;
    if (w - w.round()).abs() > 1e-6 || total.im.abs() > 1e-6 {
        return Err(Error::NotConverged {
            value: w,
            tolerance: 1e-6,
        });
    }
    Ok(w.round() as i64)
}

const DET_CIRCLE_THRESHOLD: f64 = 1e-6;

/// The odd Chern character pairing
/// `-(n-1)!/((2n-1)! (2 pi i)^n) int_{S^{2n-1}} tr((u^{-1} du)^{2n-1})`,
/// evaluated by quadrature with analytic derivatives. The symbol must be
/// unitary-valued (checked at the nodes); n = 1 or 2.
pub fn odd_chern_integral(u: &BoundarySymbol, quad: &SphereQuadrature) -> Result<Complex64> {
    if u.dimension() != quad.n {
        return Err(Error::DimensionMismatch {
            expected: quad.n,
            found: u.dimension(),
        });
    }
    if u.size() > MAX_MATRIX {
        return Err(Error::DimensionMismatch {
            expected: MAX_MATRIX,
            found: u.size(),
        });
    }
    match quad.n {
        1 => odd_chern_circle(u, quad),
        2 => odd_chern_s3(u, quad),
        n => Err(Error::UnsupportedDimension { n }),
    }
}

fn odd_chern_circle(u: &BoundarySymbol, quad: &SphereQuadrature) -> Result<Complex64> {
    let size = u.size();
    let mut vals = Vec::with_capacity(quad.nodes.len());
    for node in &quad.nodes {
        let th = node.params[0];
        let mut m = zero_mat();
        let mut dm = zero_mat();
        for r in 0..size {
            for c in 0..size {
                let (v, d) = eval_scalar_circle(u.entry(r, c), th);
                m[r][c] = v;
                dm[r][c] = d;
            }
        }
        let defect = unitary_defect(&m, size);
        if defect > 1e-8 {
            return Err(Error::NotUnitarySymbol(defect));
        }
        let a = mat_mul(&mat_adjoint(&m, size), &dm, size);
        vals.push(mat_trace(&a, size) * node.weight_coord);
    }
    let total = pairwise_sum(&vals);
    // -(0)!/(1! (2 pi i)) * integral
    let coeff = -Complex64::new(0.0, 2.0 * std::f64::consts::PI).inv();
    Ok(coeff * total)
}

fn odd_chern_s3(u: &BoundarySymbol, quad: &SphereQuadrature) -> Result<Complex64> {
    let size = u.size();
    let mut vals = Vec::with_capacity(quad.nodes.len());
    for node in &quad.nodes {
        let t = form_trace_at(u, size, node)?;
        vals.push(t * node.weight_coord);
    }
    let total = pairwise_sum(&vals) * S3_ORIENTATION_SIGN;
    // -(n-1)!/((2n-1)! (2 pi i)^n) for n = 2
    let two_pi_i = Complex64::new(0.0, 2.0 * std::f64::consts::PI);
    let coeff = -(two_pi_i * two_pi_i * 6.0).inv();
    Ok(coeff * total)
}

// tr((u^{-1} du)^3) coefficient against d theta ^ d phi1 ^ d phi2.
fn form_trace_at(u: &BoundarySymbol, size: usize, node: &SphereNode) -> Result<Complex64> {
    let (m, dm) = eval_symbol_s3(u, node.params[0], node.params[1], node.params[2]);
    let defect = unitary_defect(&m, size);
    if defect > 1e-8 {
        return Err(Error::NotUnitarySymbol(defect));
    }
    let inv = mat_adjoint(&m, size);
    let a = [
        mat_mul(&inv, &dm[0], size),
        mat_mul(&inv, &dm[1], size),
        mat_mul(&inv, &dm[2], size),
    ];
    let perms: [([usize; 3], f64); 6] = [
        ([0, 1, 2], 1.0),
        ([1, 2, 0], 1.0),
        ([2, 0, 1], 1.0),
        ([0, 2, 1], -1.0),
        ([2, 1, 0], -1.0),
        ([1, 0, 2], -1.0),
    ];
    let mut t = Complex64::new(0.0, 0.0);
    for (p, sgn) in perms {
        let prod = mat_mul(&mat_mul(&a[p[0]], &a[p[1]], size), &a[p[2]], size);
        t += mat_trace(&prod, size) * sgn;
    }
    Ok(t)
}

/// Report shape of an odd Chern evaluation with its convergence flag.
#[derive(Clone, Debug)]
pub struct ChernReport {
    pub value: Complex64,
    pub nearest: i64,
    pub converged: bool,
    pub nodes: usize,
}

/// Evaluate at the standard node counts, doubling them for the convergence
/// flag.
pub fn odd_chern_report(u: &BoundarySymbol) -> Result<ChernReport> {
    let n = u.dimension();
    let quad = SphereQuadrature::standard(n)?;
    let value = odd_chern_integral(u, &quad)?;
    let fine = odd_chern_integral(u, &SphereQuadrature::doubled(n)?)?;
    Ok(ChernReport {
        value,
        nearest: value.re.round() as i64,
        converged: (value - fine).norm() < 1e-8,
        nodes: quad.nodes.len(),
    })
}

/// Node-wise check of the antisymmetrized trace form for the standard
/// `SU(2)` symbol against its closed form
/// `3 (z1 d(conj z1) - conj(z1) dz1) ^ dz2 ^ d(conj z2) + (1 <-> 2)`,
/// pulled back through the parametrization. Returns the per-node form values
/// once every node agrees within `tol`.
pub fn chern_form_trace(
    u: &BoundarySymbol,
    quad: &SphereQuadrature,
    tol: f64,
) -> Result<Vec<Complex64>> {
    if quad.n != 2 {
        return Err(Error::UnsupportedDimension { n: quad.n });
    }
    let size = u.size();
    let mut out = Vec::with_capacity(quad.nodes.len());
    let mut max_dev: f64 = 0.0;
    for node in &quad.nodes {
        let lhs = form_trace_at(u, size, node)?;
        let rhs = su2_closed_form_at(node);
        max_dev = max_dev.max((lhs - rhs).norm());
        out.push(lhs);
    }
    if max_dev > tol {
        return Err(Error::MismatchExceedsTolerance {
            max_dev,
            tolerance: tol,
        });
    }
    Ok(out)
}

// Pull the closed 3-form back through the torus parametrization at a node by
// wedging the coordinate differentials numerically.
fn su2_closed_form_at(node: &SphereNode) -> Complex64 {
    let th = node.params[0];
    let (p1, p2) = (node.params[1], node.params[2]);
    let (sin_t, cos_t) = th.sin_cos();
    let e1 = Complex64::new(0.0, p1).exp();
    let e2 = Complex64::new(0.0, p2).exp();
    let i = Complex64::new(0.0, 1.0);
    let z1 = cos_t * e1;
    let z2 = sin_t * e2;
    // rows are coefficient vectors against (d theta, d phi1, d phi2)
    let dz1 = [-sin_t * e1, i * cos_t * e1, Complex64::new(0.0, 0.0)];
    let dz2 = [cos_t * e2, Complex64::new(0.0, 0.0), i * sin_t * e2];
    let dz1c = [dz1[0].conj(), dz1[1].conj(), dz1[2].conj()];
    let dz2c = [dz2[0].conj(), dz2[1].conj(), dz2[2].conj()];
    let comb = |z: Complex64, dzc: &[Complex64; 3], zc: Complex64, dz: &[Complex64; 3]| {
        let mut out = [Complex64::new(0.0, 0.0); 3];
        for k in 0..3 {
            out[k] = z * dzc[k] - zc * dz[k];
        }
        out
    };
    let w1 = comb(z1, &dz1c, z1.conj(), &dz1);
    let w2 = comb(z2, &dz2c, z2.conj(), &dz2);
    3.0 * (det3(&w1, &dz2, &dz2c) + det3(&w2, &dz1, &dz1c))
}

fn det3(a: &[Complex64; 3], b: &[Complex64; 3], c: &[Complex64; 3]) -> Complex64 {
    a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0])
        + a[2] * (b[0] * c[1] - b[1] * c[0])
}

/// The full-level index prediction: multiplicity `(l+n-1)! / (l! (n-1)!)`
/// times the odd Chern pairing, with a near-integer check.
pub fn landau_prediction(ell: u32, n: usize, u: &BoundarySymbol) -> Result<i64> {
    let chern = odd_chern_report(u)?;
    landau_prediction_from_value(ell, n, chern.value)
}

/// [`landau_prediction`] from an already computed pairing value.
pub fn landau_prediction_from_value(ell: u32, n: usize, value: Complex64) -> Result<i64> {
    let mult_num = factorial(ell + n as u32 - 1)?;
    let mult_den = factorial(ell)? * factorial(n as u32 - 1)?;
    let mult = ratio_to_f64(&num_rational::BigRational::new(
        mult_num.into(),
        (mult_den).into(),
    ));
    let near = (value.re - value.re.round()).abs() + value.im.abs();
    if near > 1e-6 {
        return Err(Error::NotConverged {
            value: value.re,
            tolerance: 1e-6,
        });
    }
    Ok((mult * value.re).round() as i64)
}

/// Multiplicity of the full level: the number of particular levels summed,
/// `(l+n-1)! / (l! (n-1)!)`.
pub fn level_multiplicity(ell: u32, n: usize) -> usize {
    MultiIndex::exactly(n, ell).len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbols::{coordinate_symbol, su2_symbol, zpow_symbol};
    use approx::assert_relative_eq;

    #[test]
    fn quadrature_total_weights() {
        let pi = std::f64::consts::PI;
        let q = SphereQuadrature::circle(256);
        assert_relative_eq!(q.total_surface(), 2.0 * pi, max_relative = 1e-12);
        let q = SphereQuadrature::s3(32, 64);
        assert_relative_eq!(q.total_surface(), 2.0 * pi * pi, max_relative = 1e-10);
    }

    #[test]
    fn gauss_legendre_integrates_polynomials() {
        // exact for degree <= 2n-1
        let rule = gauss_legendre(8);
        let integral: f64 = rule.iter().map(|(x, w)| w * x.powi(10)).sum();
        assert_relative_eq!(integral, 2.0 / 11.0, max_relative = 1e-12);
        let total: f64 = rule.iter().map(|(_, w)| w).sum();
        assert_relative_eq!(total, 2.0, max_relative = 1e-14);
    }

    #[test]
    fn sphere_quadrature_matches_monomial_integrals() {
        // the S^3 rule reproduces the closed-form sphere integrals
        use crate::specfun::sphere_monomial_integral;
        let q = SphereQuadrature::s3(24, 32);
        for a in MultiIndex::graded_up_to(2, 3) {
            for b in MultiIndex::graded_up_to(2, 3) {
                let num = q.integrate_surface(|nd| {
                    let mut v = Complex64::new(1.0, 0.0);
                    for i in 0..2 {
                        v *= nd.point[i].powu(a.entry(i));
                        v *= nd.point[i].conj().powu(b.entry(i));
                    }
                    v
                });
                let exact = sphere_monomial_integral(&a, &b).unwrap();
                assert!(
                    (num.re - exact).abs() < 1e-8 * (1.0 + exact.abs()),
                    "a={a} b={b}: {} vs {exact}",
                    num.re
                );
                assert!(num.im.abs() < 1e-10);
            }
        }
    }

    #[test]
    fn winding_numbers_of_monomials() {
        assert_eq!(winding_number(&zpow_symbol(1), 4096).unwrap(), 1);
        assert_eq!(winding_number(&zpow_symbol(0), 4096).unwrap(), 0);
        assert_eq!(winding_number(&zpow_symbol(3), 4096).unwrap(), 3);
        assert_eq!(winding_number(&zpow_symbol(-2), 4096).unwrap(), -2);
    }

    #[test]
    fn winding_rejects_vanishing_symbols() {
        // z/|z| - 1 hits zero on the circle
        let a = zpow_symbol(1)
            .add(&zpow_symbol(0).scale(Complex64::new(-1.0, 0.0)))
            .unwrap();
        assert!(matches!(
            winding_number(&a, 4096),
            Err(Error::NotInvertibleOnCircle { .. })
        ));
    }

    #[test]
    fn winding_additivity() {
        for d1 in -2i64..=2 {
            for d2 in -2i64..=2 {
                let prod = zpow_symbol(d1).product(&zpow_symbol(d2)).unwrap();
                assert_eq!(winding_number(&prod, 4096).unwrap(), d1 + d2);
            }
        }
    }

    #[test]
    fn chern_on_circle_is_minus_winding() {
        let q = SphereQuadrature::circle(4096);
        for d in [-3i64, -1, 0, 1, 2] {
            let v = odd_chern_integral(&zpow_symbol(d), &q).unwrap();
            assert_relative_eq!(v.re, -d as f64, epsilon = 1e-10);
            assert_relative_eq!(v.im, 0.0, epsilon = 1e-10);
        }
    }

    #[test]
    fn su2_det_winding_vs_chern() {
        // the naive determinant winding misses the S^3 invariant
        let u = su2_symbol();
        let det = u.det().unwrap();
        assert_eq!(det.degree(), 0); // constant 1 after rebalancing
        let q = SphereQuadrature::s3(32, 64);
        let c = odd_chern_integral(&u, &q).unwrap();
        assert_relative_eq!(c.re, -1.0, epsilon = 1e-9);
    }

    #[test]
    fn su2_chern_is_minus_one() {
        let report = odd_chern_report(&su2_symbol()).unwrap();
        assert_eq!(report.nearest, -1);
        assert!((report.value.re + 1.0).abs() < 1e-10);
        assert!(report.value.im.abs() < 1e-10);
        assert!(report.converged);
    }

    #[test]
    fn constant_unitary_has_zero_chern() {
        let q = SphereQuadrature::s3(16, 32);
        let g = crate::symbols::BoundarySymbol::identity(2, 2);
        let v = odd_chern_integral(&g, &q).unwrap();
        assert_relative_eq!(v.norm(), 0.0, epsilon = 1e-13);
    }

    #[test]
    fn chern_rejects_non_unitary() {
        let q = SphereQuadrature::s3(8, 16);
        assert!(matches!(
            odd_chern_integral(&coordinate_symbol(2, 0).unwrap(), &q),
            Err(Error::NotUnitarySymbol(_))
        ));
    }

    #[test]
    fn conjugation_invariance() {
        // u -> g u g* with constant unitary g leaves the pairing unchanged
        let u = su2_symbol();
        let q = SphereQuadrature::s3(32, 64);
        let base = odd_chern_integral(&u, &q).unwrap();
        let mut rng = crate::sampling::SplitMix64::new(31337);
        for _ in 0..10 {
            // a pseudo-random constant SU(2) matrix
            let t1 = 2.0 * std::f64::consts::PI * rng.next_f64();
            let t2 = 2.0 * std::f64::consts::PI * rng.next_f64();
            let t3 = std::f64::consts::FRAC_PI_2 * rng.next_f64();
            let a = Complex64::new(0.0, t1).exp() * t3.cos();
            let b = Complex64::new(0.0, t2).exp() * t3.sin();
            let n = 2;
            let g = crate::symbols::BoundarySymbol::from_entries(
                n,
                2,
                vec![
                    ScalarSymbol::constant(n, a),
                    ScalarSymbol::constant(n, b),
                    ScalarSymbol::constant(n, -b.conj()),
                    ScalarSymbol::constant(n, a.conj()),
                ],
            );
            let conj = g.product(&u).unwrap().product(&g.adjoint()).unwrap();
            let v = odd_chern_integral(&conj, &q).unwrap();
            assert!((v - base).norm() < 1e-6, "conjugated pairing {v}");
        }
    }

    #[test]
    fn form_trace_matches_closed_form() {
        let q = SphereQuadrature::s3(24, 24);
        let vals = chern_form_trace(&su2_symbol(), &q, 1e-9).unwrap();
        assert_eq!(vals.len(), q.nodes.len());
        // spot value: the form coefficient is 12 cos(theta) sin(theta)
        for (nd, v) in q.nodes.iter().zip(&vals) {
            let expect = 12.0 * nd.params[0].cos() * nd.params[0].sin();
            assert_relative_eq!(v.re, expect, epsilon = 1e-9);
            assert_relative_eq!(v.im, 0.0, epsilon = 1e-9);
        }
    }

    #[test]
    fn form_trace_flags_wrong_symbols() {
        // a constant unitary has vanishing trace form; the su2 closed form
        // does not, so the node-wise comparison must fail
        let q = SphereQuadrature::s3(8, 8);
        let id = crate::symbols::BoundarySymbol::identity(2, 2);
        assert!(matches!(
            chern_form_trace(&id, &q, 1e-9),
            Err(Error::MismatchExceedsTolerance { .. })
        ));
    }

    #[test]
    fn form_trace_degenerate_pole() {
        // at theta = 0 the z2 factor collapses and both sides vanish
        let node = SphereNode {
            params: vec![0.0, 0.3, 1.1],
            point: vec![
                Complex64::new(0.3f64.cos(), 0.3f64.sin()),
                Complex64::new(0.0, 0.0),
            ],
            weight_coord: 1.0,
            weight_surface: 0.0,
        };
        let lhs = form_trace_at(&su2_symbol(), 2, &node).unwrap();
        let rhs = su2_closed_form_at(&node);
        assert_relative_eq!(lhs.norm(), 0.0, epsilon = 1e-12);
        assert_relative_eq!(rhs.norm(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn quadrature_doubling_is_stable() {
        let u = su2_symbol();
        let base = odd_chern_integral(&u, &SphereQuadrature::standard(2).unwrap()).unwrap();
        let fine = odd_chern_integral(&u, &SphereQuadrature::doubled(2).unwrap()).unwrap();
        assert!((base - fine).norm() < 1e-8);
    }

    #[test]
    fn predictions() {
        let u = su2_symbol();
        assert_eq!(landau_prediction(0, 2, &u).unwrap(), -1);
        assert_eq!(landau_prediction(1, 2, &u).unwrap(), -2);
        assert_eq!(landau_prediction(3, 1, &zpow_symbol(1)).unwrap(), -1);
        assert_eq!(level_multiplicity(1, 2), 2);
        assert_eq!(level_multiplicity(2, 3), 6);
    }

    #[test]
    fn analytic_derivatives_match_finite_differences() {
        let u = su2_symbol();
        let (th, p1, p2) = (0.7, 1.3, 2.1);
        let h = 1e-5;
        let (_, der) = eval_symbol_s3(&u, th, p1, p2);
        let probe = |t: f64, a: f64, b: f64| eval_symbol_s3(&u, t, a, b).0;
        let dirs: [(f64, f64, f64); 3] = [(1.0, 0.0, 0.0), (0.0, 1.0, 0.0), (0.0, 0.0, 1.0)];
        for (k, (dt, d1, d2)) in dirs.iter().enumerate() {
            let plus = probe(th + h * dt, p1 + h * d1, p2 + h * d2);
            let minus = probe(th - h * dt, p1 - h * d1, p2 - h * d2);
            for r in 0..2 {
                for c in 0..2 {
                    let fd = (plus[r][c] - minus[r][c]) / (2.0 * h);
                    assert!(
                        (fd - der[k][r][c]).norm() < 1e-9,
                        "k={k} r={r} c={c}: {fd} vs {:?}",
                        der[k][r][c]
                    );
                }
            }
        }
    }
}
