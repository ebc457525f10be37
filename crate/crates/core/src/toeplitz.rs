//! Assembly of truncated operators in the graded level bases.
//!
//! Matrix elements are assembled exactly: each symbol term contributes
//! coefficient x radial moment x sphere integral through
//! [`crate::landau::weighted_raw`], with basis norms known as exact
//! rationals. Windows are rectangular by default - rows padded by the symbol
//! degree - so the compression of a degree-raising symbol is exact inside the
//! window and no spurious truncation kernels appear.

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::landau::{level_vector, weighted_raw, LevelSpec, LevelVector};
use crate::linalg;
use crate::multi_index::MultiIndex;
use crate::symbols::BoundarySymbol;

/// Index of one basis vector: particular level, seed multi-index, vector
/// component. Ordered by (level, seed, component), each graded-lex.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct BasisKey {
    pub level: MultiIndex,
    pub m: MultiIndex,
    pub comp: usize,
}

/// A dense truncated operator together with its graded row/column index sets.
#[derive(Clone)]
pub struct GradedMatrix {
    pub rows: Vec<BasisKey>,
    pub cols: Vec<BasisKey>,
    pub data: DMatrix<Complex64>,
    /// Degree band: entries with |row seed degree - col seed degree| above
    /// this are structurally zero.
    pub band: u32,
}

impl GradedMatrix {
    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn adjoint(&self) -> GradedMatrix {
        GradedMatrix {
            rows: self.cols.clone(),
            cols: self.rows.clone(),
            data: self.data.adjoint(),
            band: self.band,
        }
    }

    pub fn multiply(&self, other: &GradedMatrix) -> Result<GradedMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols.len(),
                found: other.rows.len(),
            });
        }
        Ok(GradedMatrix {
            rows: self.rows.clone(),
            cols: other.cols.clone(),
            data: &self.data * &other.data,
            band: self.band + other.band,
        })
    }

    pub fn sub(&self, other: &GradedMatrix) -> Result<GradedMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows.len(),
                found: other.rows.len(),
            });
        }
        Ok(GradedMatrix {
            rows: self.rows.clone(),
            cols: self.cols.clone(),
            data: &self.data - &other.data,
            band: self.band.max(other.band),
        })
    }

    /// Keep only rows/cols selected by the predicates.
    pub fn restrict(
        &self,
        keep_row: impl Fn(&BasisKey) -> bool,
        keep_col: impl Fn(&BasisKey) -> bool,
    ) -> GradedMatrix {
        let row_idx: Vec<usize> = (0..self.rows.len())
            .filter(|&i| keep_row(&self.rows[i]))
            .collect();
        let col_idx: Vec<usize> = (0..self.cols.len())
            .filter(|&j| keep_col(&self.cols[j]))
            .collect();
        let data = DMatrix::from_fn(row_idx.len(), col_idx.len(), |i, j| {
            self.data[(row_idx[i], col_idx[j])]
        });
        GradedMatrix {
            rows: row_idx.iter().map(|&i| self.rows[i].clone()).collect(),
            cols: col_idx.iter().map(|&j| self.cols[j].clone()).collect(),
            data,
            band: self.band,
        }
    }

    /// Square sub-block with both seed degrees bounded by `cap`.
    pub fn head(&self, cap: u32) -> GradedMatrix {
        self.restrict(|k| k.m.total() <= cap, |k| k.m.total() <= cap)
    }

    pub fn singular_values(&self) -> Vec<f64> {
        linalg::singular_values(&self.data)
    }

    pub fn spectral_norm(&self) -> f64 {
        linalg::spectral_norm(&self.data)
    }

    pub fn nullity(&self, rel_tol: f64) -> usize {
        linalg::nullity(&self.data, rel_tol)
    }

    /// Structural degree-bandedness of the entries.
    pub fn is_banded(&self, tol: f64) -> bool {
        for (i, r) in self.rows.iter().enumerate() {
            for (j, c) in self.cols.iter().enumerate() {
                let gap = i64::from(r.m.total()) - i64::from(c.m.total());
                if gap.unsigned_abs() as u32 > self.band && self.data[(i, j)].norm() > tol {
                    return false;
                }
            }
        }
        true
    }
}

/// Cache of level vectors with exact norms, shared across assemblies.
pub struct BasisCache {
    n: usize,
    map: BTreeMap<(MultiIndex, MultiIndex), LevelVector>,
}

impl BasisCache {
    pub fn new(n: usize) -> Self {
        BasisCache {
            n,
            map: BTreeMap::new(),
        }
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    fn populate(&mut self, level: &MultiIndex, max_degree: u32) -> Result<()> {
        for m in MultiIndex::graded_up_to(self.n, max_degree) {
            let key = (level.clone(), m.clone());
            if !self.map.contains_key(&key) {
                self.map.insert(key, level_vector(self.n, level, &m)?);
            }
        }
        Ok(())
    }

    fn get(&self, level: &MultiIndex, m: &MultiIndex) -> &LevelVector {
        self.map
            .get(&(level.clone(), m.clone()))
            .expect("basis cache populated before use")
    }
}

/// The window of one level: seeds of degree `lo..=hi`, all components.
fn level_window(level: &MultiIndex, lo: u32, hi: u32, size: usize) -> Vec<BasisKey> {
    let n = level.dim();
    let mut keys = Vec::new();
    for m in MultiIndex::graded_up_to(n, hi) {
        if m.total() < lo {
            continue;
        }
        for comp in 0..size {
            keys.push(BasisKey {
                level: level.clone(),
                m: m.clone(),
                comp,
            });
        }
    }
    keys
}

fn multi_level_window(levels: &[MultiIndex], lo: u32, hi: u32, size: usize) -> Vec<BasisKey> {
    let mut keys: Vec<BasisKey> = levels
        .iter()
        .flat_map(|k| level_window(k, lo, hi, size))
        .collect();
    keys.sort();
    keys
}

// Angular-momentum reachability: every term of xi_{m,k} has z-exponent minus
// conj-exponent equal to m - k, so a symbol term (gamma, delta) connects
// column (m_c, k_c) to row (m_r, k_r) only if
// m_r - k_r = m_c - k_c + gamma - delta componentwise.
fn term_reaches(row: &BasisKey, col: &BasisKey, gamma: &MultiIndex, delta: &MultiIndex) -> bool {
    for i in 0..gamma.dim() {
        let lhs = i64::from(row.m.entry(i)) - i64::from(row.level.entry(i));
        let rhs = i64::from(col.m.entry(i)) - i64::from(col.level.entry(i))
            + i64::from(gamma.entry(i))
            - i64::from(delta.entry(i));
        if lhs != rhs {
            return false;
        }
    }
    true
}

fn matrix_entry(
    cache: &BasisCache,
    row: &BasisKey,
    col: &BasisKey,
    a: &BoundarySymbol,
) -> Result<Complex64> {
    let scalar = a.entry(row.comp, col.comp);
    let mut acc = Complex64::new(0.0, 0.0);
    let mut touched = false;
    for (gamma, delta, c) in scalar.terms() {
        if !term_reaches(row, col, gamma, delta) {
            continue;
        }
        touched = true;
        let f = cache.get(&row.level, &row.m);
        let g = cache.get(&col.level, &col.m);
        acc += c * weighted_raw(&f.raw, &g.raw, gamma, delta)?;
    }
    if !touched {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let f = cache.get(&row.level, &row.m);
    let g = cache.get(&col.level, &col.m);
    Ok(acc / (f.norm_excl_pi() * g.norm_excl_pi()))
}

fn check_symbol(a: &BoundarySymbol, n: usize) -> Result<()> {
    if a.dimension() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: a.dimension(),
        });
    }
    Ok(())
}

/// The Toeplitz compression `P a P` on the given level(s), columns up to
/// degree `degree_cap`, rows padded by the symbol degree. A full level is
/// assembled as the block-diagonal direct sum over its particular levels.
pub fn assemble_toeplitz(
    spec: &LevelSpec,
    a: &BoundarySymbol,
    degree_cap: u32,
    cache: &mut BasisCache,
) -> Result<GradedMatrix> {
    let n = spec.dimension();
    check_symbol(a, n)?;
    match spec {
        LevelSpec::Particular(_) | LevelSpec::Full { .. } => {
            assemble_direct_sum(&spec.levels(), a, degree_cap, false, cache)
        }
    }
}

/// Block assembly over a set of particular levels. With
/// `include_offdiagonal` the cross-level blocks `P_k a P_k'` are filled in
/// as well; by default they are omitted.
pub fn direct_sum_level(
    n: usize,
    ell: u32,
    a: &BoundarySymbol,
    degree_cap: u32,
    include_offdiagonal: bool,
    cache: &mut BasisCache,
) -> Result<GradedMatrix> {
    check_symbol(a, n)?;
    let levels = MultiIndex::exactly(n, ell);
    assemble_direct_sum(&levels, a, degree_cap, include_offdiagonal, cache)
}

fn assemble_direct_sum(
    levels: &[MultiIndex],
    a: &BoundarySymbol,
    degree_cap: u32,
    include_offdiagonal: bool,
    cache: &mut BasisCache,
) -> Result<GradedMatrix> {
    let d = a.degree();
    let size = a.size();
    for level in levels {
        cache.populate(level, degree_cap + d)?;
    }
    let rows = multi_level_window(levels, 0, degree_cap + d, size);
    let cols = multi_level_window(levels, 0, degree_cap, size);
    let mut data = DMatrix::from_element(rows.len(), cols.len(), Complex64::new(0.0, 0.0));
    for (j, col) in cols.iter().enumerate() {
        for (i, row) in rows.iter().enumerate() {
            if !include_offdiagonal && row.level != col.level {
                continue;
            }
            let v = matrix_entry(cache, row, col, a)?;
            if v != Complex64::new(0.0, 0.0) {
                data[(i, j)] = v;
            }
        }
    }
    Ok(GradedMatrix {
        rows,
        cols,
        data,
        band: d,
    })
}

/// The block of the commutator `[P_k, pi(a)]` on the span of all
/// `xi_{m,k'}` with `|m| <= degree_cap` and `|k'| <= energy_cap`:
/// the row-restriction of `pi(a)` into level `k`, minus its adjoint pattern.
pub fn assemble_commutator(
    k: &MultiIndex,
    a: &BoundarySymbol,
    degree_cap: u32,
    energy_cap: u32,
    cache: &mut BasisCache,
) -> Result<GradedMatrix> {
    commutator_window(k, a, 0, degree_cap, energy_cap, cache)
}

/// Largest singular value of the commutator block on the degree window
/// `(degree_cap, degree_cap + pad]` - the tail that compactness sends to
/// zero as the window moves out. (Head blocks converge to the commutator's
/// norm instead; the tail is the decaying diagnostic.)
pub fn commutator_tail_norm(
    k: &MultiIndex,
    a: &BoundarySymbol,
    degree_cap: u32,
    energy_cap: u32,
    pad: u32,
    cache: &mut BasisCache,
) -> Result<f64> {
    let block = commutator_window(k, a, degree_cap + 1, degree_cap + pad, energy_cap, cache)?;
    Ok(block.spectral_norm())
}

fn commutator_window(
    k: &MultiIndex,
    a: &BoundarySymbol,
    lo: u32,
    hi: u32,
    energy_cap: u32,
    cache: &mut BasisCache,
) -> Result<GradedMatrix> {
    let n = k.dim();
    check_symbol(a, n)?;
    let size = a.size();
    let levels = MultiIndex::graded_up_to(n, energy_cap);
    for level in &levels {
        cache.populate(level, hi)?;
    }
    let keys = multi_level_window(&levels, lo, hi, size);
    let mut data = DMatrix::from_element(keys.len(), keys.len(), Complex64::new(0.0, 0.0));
    for (j, col) in keys.iter().enumerate() {
        for (i, row) in keys.iter().enumerate() {
            let in_row = row.level == *k;
            let in_col = col.level == *k;
            if in_row == in_col {
                continue; // both projected or both cut: commutator cancels
            }
            let v = matrix_entry(cache, row, col, a)?;
            let signed = if in_row { v } else { -v };
            if signed != Complex64::new(0.0, 0.0) {
                data[(i, j)] = signed;
            }
        }
    }
    Ok(GradedMatrix {
        rows: keys.clone(),
        cols: keys,
        data,
        band: a.degree() + 2 * energy_cap,
    })
}
