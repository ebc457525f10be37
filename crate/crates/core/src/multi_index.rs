use std::cmp::Ordering;
use std::fmt;

/// An n-tuple of naturals indexing monomials, basis vectors and particular
/// levels.
///
/// The canonical order everywhere in this crate is *graded lexicographic*:
/// first by total degree `|m|`, then lexicographically on the entries. All
/// basis enumerations and matrix indexings inherit it, so graded truncation
/// always selects a contiguous block.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(entries: impl Into<Vec<u32>>) -> Self {
        let entries = entries.into();
        assert!(!entries.is_empty(), "MultiIndex must have dimension >= 1");
        MultiIndex(entries)
    }

    pub fn zeros(n: usize) -> Self {
        Self::new(vec![0; n])
    }

    /// The unit multi-index e_axis (0-based axis).
    pub fn unit(n: usize, axis: usize) -> Self {
        assert!(axis < n, "axis {axis} out of range for dimension {n}");
        let mut v = vec![0; n];
        v[axis] = 1;
        Self::new(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// Total degree |m| = sum of the entries.
    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn entry(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.dim(), other.dim());
        Self::new(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect::<Vec<_>>(),
        )
    }

    /// Component-wise subtraction; `None` if any entry would go negative.
    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        debug_assert_eq!(self.dim(), other.dim());
        let mut v = Vec::with_capacity(self.dim());
        for (a, b) in self.0.iter().zip(&other.0) {
            v.push(a.checked_sub(*b)?);
        }
        Some(Self::new(v))
    }

    pub fn plus_unit(&self, axis: usize) -> Self {
        let mut v = self.0.clone();
        v[axis] += 1;
        Self::new(v)
    }

    pub fn checked_minus_unit(&self, axis: usize) -> Option<Self> {
        if self.0[axis] == 0 {
            return None;
        }
        let mut v = self.0.clone();
        v[axis] -= 1;
        Some(Self::new(v))
    }

    /// All multi-indices of dimension `n` with total degree exactly `total`,
    /// in lexicographic order.
    pub fn exactly(n: usize, total: u32) -> Vec<MultiIndex> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; n];
        fn rec(out: &mut Vec<MultiIndex>, cur: &mut Vec<u32>, pos: usize, left: u32) {
            if pos + 1 == cur.len() {
                cur[pos] = left;
                out.push(MultiIndex::new(cur.clone()));
                return;
            }
            for v in 0..=left {
                cur[pos] = v;
                rec(out, cur, pos + 1, left - v);
            }
        }
        rec(&mut out, &mut cur, 0, total);
        out
    }

    /// All multi-indices with total degree <= `max_total`, graded-lex ordered.
    pub fn graded_up_to(n: usize, max_total: u32) -> Vec<MultiIndex> {
        (0..=max_total).flat_map(|d| Self::exactly(n, d)).collect()
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total()
            .cmp(&other.total())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}
