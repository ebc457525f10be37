//! Landau-level calculus on polynomial-times-Gaussian functions.
//!
//! Convention used throughout this crate: the annihilation and creation
//! operators are
//!
//! ```text
//! q_j  = 2 d/d(conj z_j) + z_j / 2,      q_j* = -2 d/dz_j + conj(z_j) / 2.
//! ```
//!
//! With this normalization the Gaussian vacuum `exp(-|z|^2/4)` is annihilated
//! by every `q_j`, the commutators satisfy `[q_i, q_j*] = 2 delta_ij`, and the
//! weight formulas for the coordinate compressions come out consistent with
//! the monomial basis `eta_m = z^m exp(-|z|^2/4) / sqrt(pi^n 2^(|m|+n) m!)`.
//! (Other normalizations in circulation differ by factors of two and do not
//! annihilate this vacuum; see the crate README.)
//!
//! On functions `p(z, conj z) * exp(-|z|^2/4)` the operators act as exact
//! polynomial maps,
//!
//! ```text
//! q_j :  p -> 2 d p / d(conj z_j),
//! q_j*:  p -> conj(z_j) p - 2 d p / d z_j,
//! ```
//!
//! which is how they are implemented: all coefficients are exact complex
//! rationals, so commutator and eigenvalue identities hold bit for bit.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::multi_index::MultiIndex;
use crate::specfun::{
    laguerre, radial_gaussian_moment, radial_gaussian_moment_exact_odd, ratio_to_f64,
    sphere_monomial_coeff, DEGREE_CAP,
};

pub type ExactComplex = Complex<BigRational>;

fn exact_zero() -> ExactComplex {
    Complex::new(BigRational::zero(), BigRational::zero())
}

fn exact_from_i64(v: i64) -> ExactComplex {
    Complex::new(BigRational::from(BigInt::from(v)), BigRational::zero())
}

pub(crate) fn exact_to_c64(v: &ExactComplex) -> Complex64 {
    Complex64::new(ratio_to_f64(&v.re), ratio_to_f64(&v.im))
}

/// A finite sum of terms `c * z^alpha * conj(z)^beta`, representing the
/// function `poly * exp(-|z|^2/4)`. Terms are canonically collected: no two
/// terms share an exponent pair and zero coefficients are pruned.
#[derive(Clone, PartialEq)]
pub struct PolyGaussian {
    n: usize,
    terms: BTreeMap<(MultiIndex, MultiIndex), ExactComplex>,
}

impl PolyGaussian {
    pub fn zero(n: usize) -> Self {
        PolyGaussian {
            n,
            terms: BTreeMap::new(),
        }
    }

    /// The vacuum `exp(-|z|^2/4)`.
    pub fn vacuum(n: usize) -> Self {
        let mut f = Self::zero(n);
        f.push(
            MultiIndex::zeros(n),
            MultiIndex::zeros(n),
            Complex::new(BigRational::one(), BigRational::zero()),
        );
        f
    }

    /// `z^m exp(-|z|^2/4)`.
    pub fn monomial(n: usize, m: &MultiIndex) -> Self {
        let mut f = Self::zero(n);
        f.push(
            m.clone(),
            MultiIndex::zeros(n),
            Complex::new(BigRational::one(), BigRational::zero()),
        );
        f
    }

    /// A single term `c * z^alpha * conj(z)^beta * exp(-|z|^2/4)`.
    pub fn term(n: usize, alpha: MultiIndex, beta: MultiIndex, coeff: ExactComplex) -> Self {
        assert_eq!(alpha.dim(), n);
        assert_eq!(beta.dim(), n);
        let mut f = Self::zero(n);
        f.push(alpha, beta, coeff);
        f
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Max total degree `|alpha| + |beta|` of the polynomial part.
    pub fn degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|(a, b)| a.total() + b.total())
            .max()
            .unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &MultiIndex, &ExactComplex)> {
        self.terms.iter().map(|((a, b), c)| (a, b, c))
    }

    fn push(&mut self, alpha: MultiIndex, beta: MultiIndex, c: ExactComplex) {
        if c.is_zero() {
            return;
        }
        let slot = self
            .terms
            .entry((alpha.clone(), beta.clone()))
            .or_insert_with(exact_zero);
        *slot = slot.clone() + c;
        if slot.is_zero() {
            self.terms.remove(&(alpha, beta));
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let mut out = self.clone();
        for (a, b, c) in other.terms() {
            out.push(a.clone(), b.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale_i64(-1))
    }

    pub fn scale_i64(&self, v: i64) -> Self {
        self.scale_exact(&exact_from_i64(v))
    }

    pub fn scale_exact(&self, v: &ExactComplex) -> Self {
        let mut out = Self::zero(self.n);
        for (a, b, c) in self.terms() {
            out.push(a.clone(), b.clone(), c.clone() * v.clone());
        }
        out
    }

    /// Evaluate `poly(z, conj z) * exp(-|z|^2/4)` at a point.
    pub fn eval(&self, z: &[Complex64]) -> Complex64 {
        assert_eq!(z.len(), self.n);
        let mut acc = Complex64::new(0.0, 0.0);
        for (a, b, c) in self.terms() {
            let mut t = exact_to_c64(c);
            for i in 0..self.n {
                t *= z[i].powu(a.entry(i));
                t *= z[i].conj().powu(b.entry(i));
            }
            acc += t;
        }
        let nsq: f64 = z.iter().map(|w| w.norm_sqr()).sum();
        acc * (-nsq / 4.0).exp()
    }
}

impl std::fmt::Debug for PolyGaussian {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (a, b, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let v = exact_to_c64(c);
            write!(f, "({}{:+}i)*z^{a}*zbar^{b}", v.re, v.im)?;
        }
        write!(f, " * gauss")
    }
}

/// Annihilation operator `q_axis` as a polynomial map (0-based axis).
pub fn annihilate(axis: usize, f: &PolyGaussian) -> Result<PolyGaussian> {
    if axis >= f.n {
        return Err(Error::IndexOutOfRange { axis, dim: f.n });
    }
    let mut out = PolyGaussian::zero(f.n);
    for (a, b, c) in f.terms() {
        if let Some(b2) = b.checked_minus_unit(axis) {
            let factor = exact_from_i64(2 * i64::from(b.entry(axis)));
            out.push(a.clone(), b2, c.clone() * factor);
        }
    }
    Ok(out)
}

/// Creation operator `q_axis*` as a polynomial map.
pub fn create(axis: usize, f: &PolyGaussian) -> Result<PolyGaussian> {
    if axis >= f.n {
        return Err(Error::IndexOutOfRange { axis, dim: f.n });
    }
    let mut out = PolyGaussian::zero(f.n);
    for (a, b, c) in f.terms() {
        out.push(a.clone(), b.plus_unit(axis), c.clone());
        if let Some(a2) = a.checked_minus_unit(axis) {
            let factor = exact_from_i64(-2 * i64::from(a.entry(axis)));
            out.push(a2, b.clone(), c.clone() * factor);
        }
    }
    Ok(out)
}

/// `q*^k f`, applying each creation operator `k_j` times.
pub fn create_multi(k: &MultiIndex, f: &PolyGaussian) -> Result<PolyGaussian> {
    let mut out = f.clone();
    for axis in 0..k.dim() {
        for _ in 0..k.entry(axis) {
            out = create(axis, &out)?;
        }
    }
    Ok(out)
}

/// The Landau Hamiltonian `sum_j q_j* q_j + n`, applied exactly.
pub fn hamiltonian_apply(f: &PolyGaussian) -> PolyGaussian {
    let mut out = f.scale_i64(f.n as i64);
    for axis in 0..f.n {
        let qf = annihilate(axis, f).expect("axis in range");
        out = out.add(&create(axis, &qf).expect("axis in range"));
    }
    out
}

/// Exact L2 inner product: the rational coefficient `q` (conjugate-linear in
/// `f`) with `<f, g> = q * pi^n`.
pub fn inner_product_exact(f: &PolyGaussian, g: &PolyGaussian) -> Result<ExactComplex> {
    if f.n != g.n {
        return Err(Error::DimensionMismatch {
            expected: f.n,
            found: g.n,
        });
    }
    let n = f.n;
    let mut acc = exact_zero();
    for (a, b, c) in f.terms() {
        for (a2, b2, c2) in g.terms() {
            let left = b.add(a2);
            let right = a.add(b2);
            if left != right {
                continue;
            }
            let p = left.total() + right.total() + 2 * n as u32 - 1;
            let moment = BigRational::from(BigInt::from(radial_gaussian_moment_exact_odd(p)?));
            let sphere = sphere_monomial_coeff(&left, &right)?;
            acc += c.conj() * c2.clone() * Complex::new(moment * sphere, BigRational::zero());
        }
    }
    Ok(acc)
}

/// `<f, g>` over `L^2(C^n)`, conjugate-linear in the first argument.
pub fn inner_product(f: &PolyGaussian, g: &PolyGaussian) -> Result<Complex64> {
    let q = inner_product_exact(f, g)?;
    let pin = std::f64::consts::PI.powi(f.n as i32);
    Ok(exact_to_c64(&q) * pin)
}

/// Matrix element of a homogenized symbol monomial between PolyGaussians:
/// `<f, z^gamma conj(z)^delta |z|^{-(|gamma|+|delta|)} g>`, *unnormalized*
/// and with the overall `pi^n` factor dropped (it cancels against the basis
/// norms, which [`LevelVector::norm_excl_pi`] reports in the same units).
pub fn weighted_raw(
    f: &PolyGaussian,
    g: &PolyGaussian,
    gamma: &MultiIndex,
    delta: &MultiIndex,
) -> Result<Complex64> {
    if f.n != g.n {
        return Err(Error::DimensionMismatch {
            expected: f.n,
            found: g.n,
        });
    }
    let n = f.n;
    let shift = gamma.total() + delta.total();
    let mut acc = Complex64::new(0.0, 0.0);
    for (a, b, c) in f.terms() {
        for (a2, b2, c2) in g.terms() {
            let left = b.add(a2).add(gamma);
            let right = a.add(b2).add(delta);
            if left != right {
                continue;
            }
            // the |z| powers of the symbol cancel in the radial exponent
            let p = left.total() + right.total() - shift + 2 * n as u32 - 1;
            let coeff = exact_to_c64(&(c.conj() * c2.clone()));
            let sphere = ratio_to_f64(&sphere_monomial_coeff(&left, &right)?);
            acc += coeff * radial_gaussian_moment(p) * sphere;
        }
    }
    Ok(acc)
}

/// A particular level or a full level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LevelSpec {
    Particular(MultiIndex),
    Full { n: usize, ell: u32 },
}

impl LevelSpec {
    pub fn particular(k: MultiIndex) -> Self {
        LevelSpec::Particular(k)
    }

    pub fn full(n: usize, ell: u32) -> Self {
        LevelSpec::Full { n, ell }
    }

    pub fn dimension(&self) -> usize {
        match self {
            LevelSpec::Particular(k) => k.dim(),
            LevelSpec::Full { n, .. } => *n,
        }
    }

    /// The particular levels this spec covers, graded-lex ordered.
    pub fn levels(&self) -> Vec<MultiIndex> {
        match self {
            LevelSpec::Particular(k) => vec![k.clone()],
            LevelSpec::Full { n, ell } => MultiIndex::exactly(*n, *ell),
        }
    }

    pub fn describe(&self) -> String {
        match self {
            LevelSpec::Particular(k) => format!("level {k}"),
            LevelSpec::Full { ell, .. } => format!("full level {ell}"),
        }
    }
}

/// One element `xi_{m,k} = q*^k (z^m exp(-|z|^2/4))` of a particular level,
/// kept unnormalized with its exact squared norm (`norm^2 = norm_sq * pi^n`).
#[derive(Clone)]
pub struct LevelVector {
    pub m: MultiIndex,
    pub raw: PolyGaussian,
    pub norm_sq: BigRational,
}

impl LevelVector {
    /// `|xi|` with the `pi^(n/2)` factor dropped, matching [`weighted_raw`].
    pub fn norm_excl_pi(&self) -> f64 {
        ratio_to_f64(&self.norm_sq).sqrt()
    }

    pub fn norm(&self) -> f64 {
        let pin = std::f64::consts::PI.powi(self.raw.dimension() as i32);
        (ratio_to_f64(&self.norm_sq) * pin).sqrt()
    }

    /// Evaluate the normalized vector at a point.
    pub fn eval_normalized(&self, z: &[Complex64]) -> Complex64 {
        self.raw.eval(z) / self.norm()
    }
}

/// Build `xi_{m,k}` with its exact norm.
pub fn level_vector(n: usize, k: &MultiIndex, m: &MultiIndex) -> Result<LevelVector> {
    let raw = create_multi(k, &PolyGaussian::monomial(n, m))?;
    let q = inner_product_exact(&raw, &raw)?;
    debug_assert!(q.im.is_zero());
    Ok(LevelVector {
        m: m.clone(),
        raw,
        norm_sq: q.re,
    })
}

/// The orthonormal-by-normalization basis of the particular level `k`, for
/// all seeds `|m| <= max_degree` in graded-lex order. The raw family is
/// orthogonal, so only exact normalization is involved (no Gram-Schmidt).
pub fn particular_basis(n: usize, k: &MultiIndex, max_degree: u32) -> Result<Vec<LevelVector>> {
    if max_degree > DEGREE_CAP {
        return Err(Error::CapacityExceeded(format!(
            "basis degree {max_degree} exceeds cap {DEGREE_CAP}"
        )));
    }
    MultiIndex::graded_up_to(n, max_degree)
        .iter()
        .map(|m| level_vector(n, k, m))
        .collect()
}

/// Closed form of the level-`k` reproducing kernel before the overall
/// constant: `exp(<z,w>/2 - (|z|^2+|w|^2)/4) prod_j L_{k_j}(|z_j - w_j|^2/2)`.
/// Equals 1 at `z = w = 0`.
pub fn landau_kernel_unscaled(
    n: usize,
    k: &MultiIndex,
    z: &[Complex64],
    w: &[Complex64],
) -> Complex64 {
    debug_assert_eq!(z.len(), n);
    debug_assert_eq!(w.len(), n);
    let mut herm = Complex64::new(0.0, 0.0);
    let mut zsq = 0.0;
    let mut wsq = 0.0;
    let mut lag = 1.0;
    for j in 0..n {
        herm += z[j] * w[j].conj();
        zsq += z[j].norm_sqr();
        wsq += w[j].norm_sqr();
        lag *= laguerre(k.entry(j), (z[j] - w[j]).norm_sqr() / 2.0);
    }
    (herm / 2.0 - (zsq + wsq) / 4.0).exp() * lag
}

/// The reproducing kernel of the particular level `k`, scaled by the global
/// constant `(2 pi)^{-n}` that the basis-sum calibration pins down (see
/// [`fit_kernel_constant`]).
pub fn landau_kernel(n: usize, k: &MultiIndex, z: &[Complex64], w: &[Complex64]) -> Complex64 {
    landau_kernel_unscaled(n, k, z, w) * kernel_constant(n)
}

/// The calibrated global kernel constant for dimension `n`.
pub fn kernel_constant(n: usize) -> f64 {
    (2.0 * std::f64::consts::PI).powi(-(n as i32))
}

/// Partial basis sum `sum_{|m| <= max_degree} xi(z) conj(xi(w))` over the
/// normalized level basis; converges to the kernel as the degree grows.
pub fn kernel_basis_sum(
    n: usize,
    k: &MultiIndex,
    max_degree: u32,
    z: &[Complex64],
    w: &[Complex64],
) -> Result<Complex64> {
    let basis = particular_basis(n, k, max_degree)?;
    let mut acc = Complex64::new(0.0, 0.0);
    for v in &basis {
        acc += v.eval_normalized(z) * v.eval_normalized(w).conj();
    }
    Ok(acc)
}

/// Least-squares fit of the single constant `c` making `c * unscaled kernel`
/// match the basis sum at the given sample pairs.
pub fn fit_kernel_constant(
    n: usize,
    k: &MultiIndex,
    max_degree: u32,
    pairs: &[(Vec<Complex64>, Vec<Complex64>)],
) -> Result<f64> {
    let mut num = 0.0;
    let mut den = 0.0;
    for (z, w) in pairs {
        let u = landau_kernel_unscaled(n, k, z, w);
        let b = kernel_basis_sum(n, k, max_degree, z, w)?;
        num += (u.conj() * b).re;
        den += u.norm_sqr();
    }
    if den == 0.0 {
        return Err(Error::DomainError("degenerate kernel fit".into()));
    }
    Ok(num / den)
}
