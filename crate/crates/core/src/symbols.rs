//! The symbol algebra on the sphere at infinity.
//!
//! A [`ScalarSymbol`] is a finite sum of terms `c * z^alpha * conj(z)^beta *
//! |z|^{-(|alpha|+|beta|)}`. The `|z|` power is implied by the exponents, so
//! every term is homogeneous of degree zero and the symbol is a genuine
//! function on the unit sphere. [`BoundarySymbol`] is a square matrix of
//! scalar symbols. [`FullSymbol`] extends a boundary symbol into the bulk with
//! radial ramp cutoffs and an optional Gaussian-decay perturbation, staying
//! inside the algebra of functions with uniform radial limits.

use std::collections::BTreeMap;
use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::spectral_norm;
use crate::multi_index::MultiIndex;
use crate::sampling::{unit_sphere_points, SplitMix64};

const COLLECT_EPS: f64 = 1e-12;

/// A scalar symbol on `S^{2n-1}`: a finite, canonically collected sum of
/// homogenized monomials.
#[derive(Clone, PartialEq)]
pub struct ScalarSymbol {
    n: usize,
    terms: BTreeMap<(MultiIndex, MultiIndex), Complex64>,
}

impl ScalarSymbol {
    pub fn zero(n: usize) -> Self {
        ScalarSymbol {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, c: Complex64) -> Self {
        let mut s = Self::zero(n);
        s.push(MultiIndex::zeros(n), MultiIndex::zeros(n), c);
        s
    }

    /// A single monomial term `c * z^alpha * conj(z)^beta / |z|^(|alpha|+|beta|)`.
    pub fn monomial(n: usize, alpha: MultiIndex, beta: MultiIndex, c: Complex64) -> Self {
        assert_eq!(alpha.dim(), n);
        assert_eq!(beta.dim(), n);
        let mut s = Self::zero(n);
        s.push(alpha, beta, c);
        s
    }

    /// The coordinate symbol `z_axis / |z|` (0-based axis).
    pub fn coordinate(n: usize, axis: usize) -> Result<Self> {
        if axis >= n {
            return Err(Error::IndexOutOfRange { axis, dim: n });
        }
        Ok(Self::monomial(
            n,
            MultiIndex::unit(n, axis),
            MultiIndex::zeros(n),
            Complex64::new(1.0, 0.0),
        ))
    }

    /// `conj(z_axis) / |z|`.
    pub fn conj_coordinate(n: usize, axis: usize) -> Result<Self> {
        Ok(Self::coordinate(n, axis)?.adjoint())
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Max of `|alpha| + |beta|` over the terms.
    pub fn degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|(a, b)| a.total() + b.total())
            .max()
            .unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &MultiIndex, Complex64)> {
        self.terms.iter().map(|((a, b), c)| (a, b, *c))
    }

    fn push(&mut self, alpha: MultiIndex, beta: MultiIndex, c: Complex64) {
        if c == Complex64::new(0.0, 0.0) {
            return;
        }
        let entry = self
            .terms
            .entry((alpha.clone(), beta.clone()))
            .or_insert(Complex64::new(0.0, 0.0));
        *entry += c;
        if *entry == Complex64::new(0.0, 0.0) {
            self.terms.remove(&(alpha, beta));
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let mut out = self.clone();
        for (a, b, c) in other.terms() {
            out.push(a.clone(), b.clone(), c);
        }
        out
    }

    pub fn scale(&self, c: Complex64) -> Self {
        let mut out = Self::zero(self.n);
        for (a, b, v) in self.terms() {
            out.push(a.clone(), b.clone(), v * c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let mut out = Self::zero(self.n);
        for (a1, b1, c1) in self.terms() {
            for (a2, b2, c2) in other.terms() {
                out.push(a1.add(a2), b1.add(b2), c1 * c2);
            }
        }
        out.rebalance();
        out
    }

    /// Complex conjugate: swaps holomorphic and antiholomorphic exponents.
    pub fn adjoint(&self) -> Self {
        let mut out = Self::zero(self.n);
        for (a, b, c) in self.terms() {
            out.push(b.clone(), a.clone(), c.conj());
        }
        out
    }

    /// Collapse sphere relations: whenever the complete group of terms
    /// `{(alpha+e_i, beta+e_i)}_i` carries one common coefficient, it equals
    /// that coefficient times `(alpha, beta)` on `|z| = 1` and is rewritten as
    /// such. Keeps products like `u u*` literally equal to the identity
    /// symbol.
    pub fn rebalance(&mut self) {
        'outer: loop {
            let keys: Vec<(MultiIndex, MultiIndex)> = self.terms.keys().cloned().collect();
            for (a, b) in keys {
                for i in 0..self.n {
                    let (Some(base_a), Some(base_b)) =
                        (a.checked_minus_unit(i), b.checked_minus_unit(i))
                    else {
                        continue;
                    };
                    let group: Vec<(MultiIndex, MultiIndex)> = (0..self.n)
                        .map(|j| (base_a.plus_unit(j), base_b.plus_unit(j)))
                        .collect();
                    let Some(coeffs) = group
                        .iter()
                        .map(|k| self.terms.get(k).copied())
                        .collect::<Option<Vec<_>>>()
                    else {
                        continue;
                    };
                    let scale = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
                    let mean = coeffs.iter().sum::<Complex64>() / self.n as f64;
                    if coeffs
                        .iter()
                        .all(|c| (c - mean).norm() <= COLLECT_EPS * (1.0 + scale))
                    {
                        for k in &group {
                            self.terms.remove(k);
                        }
                        self.push(base_a, base_b, mean);
                        continue 'outer;
                    }
                }
            }
            break;
        }
    }

    /// Evaluate at a unit vector (the `|z|` powers drop out).
    pub fn eval_unit(&self, v: &[Complex64]) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (a, b, c) in self.terms() {
            let mut t = c;
            for i in 0..self.n {
                t *= v[i].powu(a.entry(i));
                t *= v[i].conj().powu(b.entry(i));
            }
            acc += t;
        }
        acc
    }

    fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        let diff = self.sub(other);
        let ok = diff.terms().all(|(_, _, c)| c.norm() <= tol);
        ok
    }
}

impl fmt::Debug for ScalarSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (a, b, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({}{:+}i)", c.re, c.im)?;
            for i in 0..self.n {
                if a.entry(i) > 0 {
                    write!(f, "*z{}^{}", i + 1, a.entry(i))?;
                }
                if b.entry(i) > 0 {
                    write!(f, "*zbar{}^{}", i + 1, b.entry(i))?;
                }
            }
            let k = a.total() + b.total();
            if k > 0 {
                write!(f, "*|z|^-{k}")?;
            }
        }
        Ok(())
    }
}

/// An `N x N` matrix of scalar symbols, a continuous matrix function on
/// `S^{2n-1}`.
#[derive(Clone, PartialEq)]
pub struct BoundarySymbol {
    n: usize,
    size: usize,
    entries: Vec<ScalarSymbol>,
}

impl BoundarySymbol {
    pub fn from_entries(n: usize, size: usize, entries: Vec<ScalarSymbol>) -> Self {
        assert_eq!(entries.len(), size * size);
        assert!(entries.iter().all(|e| e.dimension() == n));
        BoundarySymbol { n, size, entries }
    }

    pub fn scalar(s: ScalarSymbol) -> Self {
        let n = s.dimension();
        Self::from_entries(n, 1, vec![s])
    }

    pub fn identity(n: usize, size: usize) -> Self {
        let one = Complex64::new(1.0, 0.0);
        let entries = (0..size * size)
            .map(|idx| {
                if idx / size == idx % size {
                    ScalarSymbol::constant(n, one)
                } else {
                    ScalarSymbol::zero(n)
                }
            })
            .collect();
        Self::from_entries(n, size, entries)
    }

    pub fn zero(n: usize, size: usize) -> Self {
        Self::from_entries(n, size, vec![ScalarSymbol::zero(n); size * size])
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn entry(&self, row: usize, col: usize) -> &ScalarSymbol {
        &self.entries[row * self.size + col]
    }

    pub fn entry_mut(&mut self, row: usize, col: usize) -> &mut ScalarSymbol {
        &mut self.entries[row * self.size + col]
    }

    pub fn degree(&self) -> u32 {
        self.entries
            .iter()
            .map(ScalarSymbol::degree)
            .max()
            .unwrap_or(0)
    }

    pub fn product(&self, other: &Self) -> Result<Self> {
        if self.n != other.n || self.size != other.size {
            return Err(Error::DimensionMismatch {
                expected: self.size,
                found: other.size,
            });
        }
        let mut out = Self::zero(self.n, self.size);
        for r in 0..self.size {
            for c in 0..self.size {
                let mut acc = ScalarSymbol::zero(self.n);
                for k in 0..self.size {
                    acc = acc.add(&self.entry(r, k).mul(other.entry(k, c)));
                }
                acc.rebalance();
                *out.entry_mut(r, c) = acc;
            }
        }
        Ok(out)
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut out = Self::zero(self.n, self.size);
        for r in 0..self.size {
            for c in 0..self.size {
                *out.entry_mut(r, c) = self.entry(c, r).adjoint();
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.n != other.n || self.size != other.size {
            return Err(Error::DimensionMismatch {
                expected: self.size,
                found: other.size,
            });
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.add(b))
            .collect();
        Ok(Self::from_entries(self.n, self.size, entries))
    }

    pub fn scale(&self, c: Complex64) -> Self {
        let entries = self.entries.iter().map(|e| e.scale(c)).collect();
        Self::from_entries(self.n, self.size, entries)
    }

    /// Determinant as a symbol, for matrix sizes up to 3.
    pub fn det(&self) -> Result<ScalarSymbol> {
        match self.size {
            1 => Ok(self.entry(0, 0).clone()),
            2 => {
                let mut d = self
                    .entry(0, 0)
                    .mul(self.entry(1, 1))
                    .sub(&self.entry(0, 1).mul(self.entry(1, 0)));
                d.rebalance();
                Ok(d)
            }
            3 => {
                let perms: [([usize; 3], f64); 6] = [
                    ([0, 1, 2], 1.0),
                    ([1, 2, 0], 1.0),
                    ([2, 0, 1], 1.0),
                    ([0, 2, 1], -1.0),
                    ([2, 1, 0], -1.0),
                    ([1, 0, 2], -1.0),
                ];
                let mut d = ScalarSymbol::zero(self.n);
                for (p, sgn) in perms {
                    let prod = self
                        .entry(0, p[0])
                        .mul(self.entry(1, p[1]))
                        .mul(self.entry(2, p[2]));
                    d = d.add(&prod.scale(Complex64::new(sgn, 0.0)));
                }
                d.rebalance();
                Ok(d)
            }
            other => Err(Error::DimensionMismatch {
                expected: 3,
                found: other,
            }),
        }
    }

    pub fn rebalance(&mut self) {
        for e in &mut self.entries {
            e.rebalance();
        }
    }

    /// Pointwise evaluation at a unit vector.
    pub fn eval_boundary(&self, v: &[Complex64]) -> Result<DMatrix<Complex64>> {
        if v.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: v.len(),
            });
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let deviation = (norm - 1.0).abs();
        if deviation > 1e-12 {
            return Err(Error::NotOnSphere { deviation });
        }
        Ok(self.eval_unit_unchecked(v))
    }

    pub(crate) fn eval_unit_unchecked(&self, v: &[Complex64]) -> DMatrix<Complex64> {
        DMatrix::from_fn(self.size, self.size, |r, c| self.entry(r, c).eval_unit(v))
    }

    /// Checks `a a* = 1` at the term level, after rebalancing.
    pub fn is_unitary_symbol(&self, tol: f64) -> Result<bool> {
        let prod = self.product(&self.adjoint())?;
        let id = Self::identity(self.n, self.size);
        Ok((0..self.size * self.size).all(|i| prod.entries[i].approx_eq(&id.entries[i], tol)))
    }
}

impl fmt::Debug for BoundarySymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.size {
            if r > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for c in 0..self.size {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{:?}", self.entry(r, c))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// The standard unitary `u(z1, z2) = [[z1, z2], [-conj(z2), conj(z1)]]` on
/// `S^3` (n = 2, N = 2, degree 1).
pub fn su2_symbol() -> BoundarySymbol {
    let one = Complex64::new(1.0, 0.0);
    let n = 2;
    let entries = vec![
        ScalarSymbol::coordinate(n, 0).unwrap(),
        ScalarSymbol::coordinate(n, 1).unwrap(),
        ScalarSymbol::conj_coordinate(n, 1).unwrap().scale(-one),
        ScalarSymbol::conj_coordinate(n, 0).unwrap(),
    ];
    BoundarySymbol::from_entries(n, 2, entries)
}

/// The scalar coordinate symbol `z_axis / |z|` as a 1x1 boundary symbol
/// (0-based axis).
pub fn coordinate_symbol(n: usize, axis: usize) -> Result<BoundarySymbol> {
    Ok(BoundarySymbol::scalar(ScalarSymbol::coordinate(n, axis)?))
}

/// `z^d / |z|^d` on the circle for d >= 0, `conj(z)^{-d} / |z|^{-d}` for d < 0.
pub fn zpow_symbol(d: i64) -> BoundarySymbol {
    let one = Complex64::new(1.0, 0.0);
    let (alpha, beta) = if d >= 0 {
        (MultiIndex::new(vec![d as u32]), MultiIndex::zeros(1))
    } else {
        (MultiIndex::zeros(1), MultiIndex::new(vec![(-d) as u32]))
    };
    BoundarySymbol::scalar(ScalarSymbol::monomial(1, alpha, beta, one))
}

/// One radial ramp factor `coeff * chi_radius(|z|)` applied to the boundary
/// part: 0 up to `radius`, 1 from `2 radius` on, linear between.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Ramp {
    pub coeff: f64,
    pub radius: f64,
}

pub(crate) fn ramp_value(r: f64, radius: f64) -> f64 {
    if radius <= 0.0 {
        1.0
    } else if r <= radius {
        0.0
    } else if r >= 2.0 * radius {
        1.0
    } else {
        (r - radius) / radius
    }
}

/// A decaying bulk term `c * z^alpha * conj(z)^beta * exp(-rate |z|^2)`.
#[derive(Clone, Debug, PartialEq)]
pub struct DecayTerm {
    pub coeff: Complex64,
    pub alpha: MultiIndex,
    pub beta: MultiIndex,
    pub rate: f64,
}

/// A symbol on all of `C^n` with uniform radial limits: ramped copies of a
/// boundary symbol plus a Gaussian-decay perturbation per matrix entry.
#[derive(Clone, Debug, PartialEq)]
pub struct FullSymbol {
    pub boundary: BoundarySymbol,
    pub ramps: Vec<Ramp>,
    pub decay: Option<Vec<Vec<DecayTerm>>>,
}

impl FullSymbol {
    /// Extend a boundary symbol with a single ramp starting at `radius`.
    pub fn from_boundary(boundary: BoundarySymbol, radius: f64) -> Self {
        FullSymbol {
            boundary,
            ramps: vec![Ramp { coeff: 1.0, radius }],
            decay: None,
        }
    }

    pub fn dimension(&self) -> usize {
        self.boundary.dimension()
    }

    fn ramp_sum(&self, r: f64) -> f64 {
        self.ramps
            .iter()
            .map(|rm| rm.coeff * ramp_value(r, rm.radius))
            .sum()
    }

    /// Pointwise evaluation in the bulk.
    pub fn eval(&self, z: &[Complex64]) -> DMatrix<Complex64> {
        let size = self.boundary.size();
        let r = z.iter().map(|w| w.norm_sqr()).sum::<f64>().sqrt();
        let chi = self.ramp_sum(r);
        let mut out = DMatrix::from_element(size, size, Complex64::new(0.0, 0.0));
        if chi != 0.0 && r > 0.0 {
            let v: Vec<Complex64> = z.iter().map(|w| w / r).collect();
            out += self.boundary.eval_unit_unchecked(&v) * Complex64::new(chi, 0.0);
        }
        if let Some(decay) = &self.decay {
            let rsq = r * r;
            for row in 0..size {
                for col in 0..size {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for t in &decay[row * size + col] {
                        let mut val = t.coeff * (-t.rate * rsq).exp();
                        for i in 0..z.len() {
                            val *= z[i].powu(t.alpha.entry(i));
                            val *= z[i].conj().powu(t.beta.entry(i));
                        }
                        acc += val;
                    }
                    out[(row, col)] += acc;
                }
            }
        }
        out
    }

    /// Split `a = g + h` with `g` globally Lipschitz with constant `<= eps`
    /// and `h` vanishing at infinity. `lip` is a Lipschitz bound for the
    /// boundary part; when absent it is estimated by pair sampling with a
    /// 1.5x safety factor. The cutoff radius is `1.1 * 2 lip / eps`.
    pub fn lipschitz_split(&self, eps: f64, lip: Option<f64>) -> Result<(FullSymbol, FullSymbol)> {
        if eps.is_nan() || eps <= 0.0 {
            return Err(Error::InvalidEpsilon(eps));
        }
        let c = match lip {
            Some(c) => c,
            None => estimate_lipschitz(&self.boundary, 4000) * 1.5,
        };
        let radius = 1.1 * 2.0 * c / eps;
        let g = FullSymbol {
            boundary: self.boundary.clone(),
            ramps: vec![Ramp { coeff: 1.0, radius }],
            decay: None,
        };
        let mut h_ramps = self.ramps.clone();
        h_ramps.push(Ramp {
            coeff: -1.0,
            radius,
        });
        let h = FullSymbol {
            boundary: self.boundary.clone(),
            ramps: h_ramps,
            decay: self.decay.clone(),
        };
        Ok((g, h))
    }
}

/// Sampled Lipschitz constant of a boundary symbol on the sphere (spectral
/// norm of the difference over chordal distance), over deterministic
/// pseudo-random pairs.
pub fn estimate_lipschitz(b: &BoundarySymbol, pairs: usize) -> f64 {
    let mut rng = SplitMix64::new(0x51_7e_a5_0d);
    let pts = unit_sphere_points(b.dimension(), 2 * pairs, &mut rng);
    let mut best: f64 = 0.0;
    for p in pts.chunks_exact(2) {
        let (v, w) = (&p[0], &p[1]);
        let dist: f64 = v
            .iter()
            .zip(w)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt();
        if dist < 1e-9 {
            continue;
        }
        let dm = b.eval_unit_unchecked(v) - b.eval_unit_unchecked(w);
        best = best.max(spectral_norm(&dm) / dist);
    }
    best
}

mod parse;
pub use parse::{parse_scalar_symbol, parse_symbol};

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn su2_eval_points() {
        let u = su2_symbol();
        let m = u.eval_boundary(&[c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
        assert_eq!(m[(0, 0)], c(1.0, 0.0));
        assert_eq!(m[(1, 1)], c(1.0, 0.0));
        assert_eq!(m[(0, 1)], c(0.0, 0.0));
        let m = u.eval_boundary(&[c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
        assert_eq!(m[(0, 1)], c(1.0, 0.0));
        assert_eq!(m[(1, 0)], c(-1.0, 0.0));
        assert_eq!(m[(0, 0)], c(0.0, 0.0));
    }

    #[test]
    fn su2_unitary_on_sphere() {
        let u = su2_symbol();
        let mut rng = SplitMix64::new(7);
        for v in unit_sphere_points(2, 100, &mut rng) {
            let m = u.eval_boundary(&v).unwrap();
            let prod = &m * m.adjoint();
            for r in 0..2 {
                for cidx in 0..2 {
                    let expect = if r == cidx { 1.0 } else { 0.0 };
                    assert_relative_eq!(prod[(r, cidx)].re, expect, epsilon = 1e-12);
                    assert_relative_eq!(prod[(r, cidx)].im, 0.0, epsilon = 1e-12);
                }
            }
            let det = m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)];
            assert_relative_eq!(det.re, 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn eval_rejects_off_sphere_points() {
        let u = su2_symbol();
        let bad = [c(1.0, 0.0), c(0.5, 0.0)];
        assert!(matches!(
            u.eval_boundary(&bad),
            Err(Error::NotOnSphere { .. })
        ));
    }

    #[test]
    fn coordinate_symbol_basics() {
        let s = coordinate_symbol(1, 0).unwrap();
        let th: f64 = 0.37;
        let v = [c(th.cos(), th.sin())];
        let m = s.eval_boundary(&v).unwrap();
        assert_relative_eq!(m[(0, 0)].re, th.cos(), epsilon = 1e-14);
        assert_relative_eq!(m[(0, 0)].im, th.sin(), epsilon = 1e-14);

        let s2 = coordinate_symbol(2, 1).unwrap();
        let m = s2.eval_boundary(&[c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
        assert_eq!(m[(0, 0)], c(1.0, 0.0));
        assert!(coordinate_symbol(2, 2).is_err());

        // adjoint of z_i is zbar_i
        let adj = s.adjoint();
        let m = adj.eval_boundary(&v).unwrap();
        assert_relative_eq!(m[(0, 0)].im, -th.sin(), epsilon = 1e-14);
    }

    #[test]
    fn product_with_adjoint_collapses_to_identity() {
        let u = su2_symbol();
        let prod = u.product(&u.adjoint()).unwrap();
        let id = BoundarySymbol::identity(2, 2);
        assert_eq!(format!("{prod:?}"), format!("{id:?}"));

        // adjoint(z1).z1 + adjoint(z2).z2 = 1 on S^3
        let z1 = ScalarSymbol::coordinate(2, 0).unwrap();
        let z2 = ScalarSymbol::coordinate(2, 1).unwrap();
        let mut s = z1.adjoint().mul(&z1).add(&z2.adjoint().mul(&z2));
        s.rebalance();
        let one = ScalarSymbol::constant(2, c(1.0, 0.0));
        assert!(s.approx_eq(&one, 1e-14));
    }

    #[test]
    fn det_of_su2_is_one() {
        let u = su2_symbol();
        let d = u.det().unwrap();
        let one = ScalarSymbol::constant(2, c(1.0, 0.0));
        assert!(d.approx_eq(&one, 1e-14), "det = {d:?}");
        // cross-check by evaluation at pseudo-random unit vectors
        let mut rng = SplitMix64::new(99);
        for v in unit_sphere_points(2, 100, &mut rng) {
            let val = d.eval_unit(&v);
            assert_relative_eq!(val.re, 1.0, epsilon = 1e-12);
            assert_relative_eq!(val.im, 0.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn unitarity_check() {
        assert!(su2_symbol().is_unitary_symbol(1e-12).unwrap());
        let not_unitary = coordinate_symbol(2, 0).unwrap();
        assert!(!not_unitary.is_unitary_symbol(1e-12).unwrap());
        assert!(zpow_symbol(-3).is_unitary_symbol(1e-12).unwrap());
    }

    #[test]
    fn lipschitz_split_constant_symbol() {
        let b = BoundarySymbol::identity(1, 1);
        let a = FullSymbol::from_boundary(b, 0.0);
        let (g, h) = a.lipschitz_split(0.5, Some(0.0)).unwrap();
        // C = 0 -> R = 0 -> g is the boundary value everywhere, h vanishes
        let z = [c(3.0, 4.0)];
        let gv = g.eval(&z);
        assert_relative_eq!(gv[(0, 0)].re, 1.0, epsilon = 1e-14);
        let hv = h.eval(&z);
        assert_relative_eq!(hv[(0, 0)].re, 0.0, epsilon = 1e-14);
    }

    #[test]
    fn lipschitz_split_coordinate_symbol() {
        let b = coordinate_symbol(1, 0).unwrap();
        let a = FullSymbol::from_boundary(b, 1.0);
        let eps = 0.1;
        let (g, h) = a.lipschitz_split(eps, Some(2.0)).unwrap();
        assert_relative_eq!(g.ramps[0].radius, 44.0, epsilon = 1e-12);
        // g + h = a exactly at the term level: shared boundary, ramps cancel
        assert_eq!(h.ramps.len(), 2);
        assert_eq!(h.ramps[1].coeff, -1.0);
        assert_eq!(h.ramps[1].radius, g.ramps[0].radius);

        // sampled Lipschitz quotient of g stays below eps
        let mut rng = SplitMix64::new(2024);
        let mut worst: f64 = 0.0;
        for _ in 0..10_000 {
            let z = [c(
                200.0 * (rng.next_f64() - 0.5),
                200.0 * (rng.next_f64() - 0.5),
            )];
            let w = [c(
                200.0 * (rng.next_f64() - 0.5),
                200.0 * (rng.next_f64() - 0.5),
            )];
            let dist = (z[0] - w[0]).norm();
            if dist < 1e-6 {
                continue;
            }
            let dg = g.eval(&z) - g.eval(&w);
            worst = worst.max(dg[(0, 0)].norm() / dist);
        }
        assert!(worst <= eps, "sampled Lipschitz quotient {worst} > {eps}");
        // h vanishes at infinity
        let far = h.eval(&[c(1e6, 0.0)]);
        assert_relative_eq!(far[(0, 0)].norm(), 0.0, epsilon = 1e-12);
        assert!(a.lipschitz_split(0.0, None).is_err());
    }

    #[test]
    fn full_symbol_radial_limits() {
        // homogeneity: boundary eval agrees with bulk eval along rays once
        // past the ramp
        let b = su2_symbol();
        let a = FullSymbol::from_boundary(b.clone(), 1.0);
        let mut rng = SplitMix64::new(5);
        for v in unit_sphere_points(2, 20, &mut rng) {
            let bv = b.eval_boundary(&v).unwrap();
            for r in [2.5, 10.0, 100.0] {
                let z: Vec<Complex64> = v.iter().map(|w| w * r).collect();
                let av = a.eval(&z);
                let diff = (&av - &bv).norm();
                assert!(diff < 1e-12, "r = {r}, diff = {diff}");
            }
        }
    }

    #[test]
    fn full_symbol_with_decay_part() {
        // a decay perturbation vanishes along rays at a Gaussian rate, so the
        // radial limits still converge to the boundary symbol
        let b = coordinate_symbol(1, 0).unwrap();
        let mut a = FullSymbol::from_boundary(b.clone(), 1.0);
        a.decay = Some(vec![vec![DecayTerm {
            coeff: c(3.0, -1.0),
            alpha: MultiIndex::new(vec![1]),
            beta: MultiIndex::zeros(1),
            rate: 0.5,
        }]]);
        let v = [c(0.8, 0.6)];
        let bv = b.eval_boundary(&v).unwrap();
        let mut prev = f64::INFINITY;
        for r in [2.5, 5.0, 10.0] {
            let z = [v[0] * r];
            let diff = (a.eval(&z) - &bv).norm();
            assert!(diff < prev, "radial deviation must decay: {diff} at r={r}");
            prev = diff;
        }
        assert!(prev < 1e-10);
        // near the origin the decay part dominates (the ramp is still zero)
        let z = [c(0.5, 0.0)];
        let inner = a.eval(&z);
        let expect = c(3.0, -1.0) * z[0] * (-0.5 * 0.25f64).exp();
        assert_relative_eq!(inner[(0, 0)].re, expect.re, epsilon = 1e-14);
        assert_relative_eq!(inner[(0, 0)].im, expect.im, epsilon = 1e-14);
    }

    #[test]
    fn lipschitz_split_reassembles_exactly() {
        // g + h = a pointwise everywhere, including the decay part
        let b = su2_symbol();
        let mut a = FullSymbol::from_boundary(b, 2.0);
        a.decay = Some(vec![
            vec![DecayTerm {
                coeff: c(1.0, 0.5),
                alpha: MultiIndex::new(vec![1, 0]),
                beta: MultiIndex::zeros(2),
                rate: 1.0,
            }],
            vec![],
            vec![],
            vec![],
        ]);
        let (g, h) = a.lipschitz_split(0.25, None).unwrap();
        let mut rng = SplitMix64::new(77);
        for v in unit_sphere_points(2, 25, &mut rng) {
            for r in [0.3, 2.0, 9.0, 31.0] {
                let z: Vec<Complex64> = v.iter().map(|w| w * r).collect();
                let sum = g.eval(&z) + h.eval(&z);
                let direct = a.eval(&z);
                assert!((&sum - &direct).norm() < 1e-13);
            }
        }
    }
}
