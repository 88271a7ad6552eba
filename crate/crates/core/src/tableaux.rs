//! Rectangular semistandard Young tableaux and the dominance order.
//!
//! A tableau with `k` rows and a single column is the index set of a Pluecker
//! coordinate. Multiplying cluster variables corresponds to [`Tableau::union`],
//! dividing to [`Tableau::quotient`].

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Rectangular semistandard tableau: rows weakly increasing, columns strictly
/// increasing, all rows of equal length (possibly zero).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<u32>>", into = "Vec<Vec<u32>>")]
pub struct Tableau {
    rows: Vec<Vec<u32>>,
}

impl TryFrom<Vec<Vec<u32>>> for Tableau {
    type Error = Error;

    fn try_from(rows: Vec<Vec<u32>>) -> Result<Self> {
        Tableau::new(rows)
    }
}

impl From<Tableau> for Vec<Vec<u32>> {
    fn from(t: Tableau) -> Self {
        t.rows
    }
}

impl Tableau {
    pub fn new(rows: Vec<Vec<u32>>) -> Result<Self> {
        let t = Self { rows };
        t.validate()?;
        Ok(t)
    }

    /// The empty tableau with `k` rows (the constant 1).
    pub fn empty(k: usize) -> Self {
        Self {
            rows: vec![Vec::new(); k],
        }
    }

    /// A single-column tableau; entries must be strictly increasing.
    pub fn column(entries: &[u32]) -> Result<Self> {
        Self::new(entries.iter().map(|&e| vec![e]).collect())
    }

    fn validate(&self) -> Result<()> {
        let width = self.width();
        for (r, row) in self.rows.iter().enumerate() {
            if row.len() != width {
                return Err(Error::InvalidTableau(format!("row {r} has length {}, expected {width}", row.len())));
            }
            if row.contains(&0) {
                return Err(Error::InvalidTableau("entries must be positive".into()));
            }
            if row.windows(2).any(|w| w[0] > w[1]) {
                return Err(Error::InvalidTableau(format!("row {r} is not weakly increasing")));
            }
        }
        for pair in self.rows.windows(2) {
            if pair[0].iter().zip(&pair[1]).any(|(a, b)| a >= b) {
                return Err(Error::InvalidTableau("columns are not strictly increasing".into()));
            }
        }
        Ok(())
    }

    pub fn k(&self) -> usize {
        self.rows.len()
    }

    pub fn width(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn is_empty(&self) -> bool {
        self.width() == 0
    }

    pub fn is_single_column(&self) -> bool {
        self.width() == 1
    }

    /// Entries of the only column, if there is exactly one.
    pub fn single_column(&self) -> Option<Vec<u32>> {
        self.is_single_column().then(|| self.rows.iter().map(|r| r[0]).collect())
    }

    pub fn max_entry(&self) -> u32 {
        self.rows.iter().flatten().copied().max().unwrap_or(0)
    }

    fn same_k(&self, other: &Tableau) -> Result<()> {
        if self.k() != other.k() {
            return Err(Error::RowCountMismatch(self.k(), other.k()));
        }
        Ok(())
    }

    /// Row-wise multiset union.
    pub fn union(&self, other: &Tableau) -> Result<Tableau> {
        self.same_k(other)?;
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| {
                let mut row: Vec<u32> = a.iter().chain(b).copied().collect();
                row.sort_unstable();
                row
            })
            .collect();
        Tableau::new(rows)
    }

    pub fn union_all<'a>(k: usize, items: impl IntoIterator<Item = &'a Tableau>) -> Result<Tableau> {
        items.into_iter().try_fold(Tableau::empty(k), |acc, t| acc.union(t))
    }

    /// True iff every row of `self` is a sub-multiset of the matching row of `other`.
    pub fn is_factor_of(&self, other: &Tableau) -> bool {
        self.k() == other.k()
            && self
                .rows
                .iter()
                .zip(&other.rows)
                .all(|(s, t)| multiset_difference(t, s).is_some())
    }

    /// Row-wise multiset difference `self / divisor`.
    pub fn quotient(&self, divisor: &Tableau) -> Result<Tableau> {
        self.same_k(divisor)?;
        let rows = self
            .rows
            .iter()
            .zip(&divisor.rows)
            .map(|(t, s)| multiset_difference(t, s).ok_or(Error::NotAFactor))
            .collect::<Result<Vec<_>>>()?;
        Tableau::new(rows)
    }

    /// Entries `<= i`, left-justified row-wise. The result need not be rectangular.
    pub fn restrict(&self, i: u32) -> Vec<Vec<u32>> {
        self.rows
            .iter()
            .map(|row| row.iter().copied().filter(|&e| e <= i).collect())
            .collect()
    }

    /// Shape of [`Tableau::restrict`].
    pub fn restricted_shape(&self, i: u32) -> Partition {
        Partition(self.rows.iter().map(|row| row.iter().filter(|&&e| e <= i).count() as u32).collect())
    }

    pub fn shape(&self) -> Partition {
        Partition(vec![self.width() as u32; self.k()])
    }
}

/// `t - s` as sorted multisets, or `None` if `s` is not contained in `t`.
fn multiset_difference(t: &[u32], s: &[u32]) -> Option<Vec<u32>> {
    let mut out = Vec::with_capacity(t.len().saturating_sub(s.len()));
    let mut si = s.iter().peekable();
    for &x in t {
        match si.peek() {
            Some(&&y) if y == x => {
                si.next();
            }
            Some(&&y) if y < x => return None,
            _ => out.push(x),
        }
    }
    si.next().is_none().then_some(out)
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(col) = self.single_column() {
            write!(f, "P")?;
            let sep = if col.iter().any(|&e| e >= 10) { "," } else { "" };
            let parts: Vec<String> = col.iter().map(u32::to_string).collect();
            return write!(f, "{}", parts.join(sep));
        }
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| r.iter().map(u32::to_string).collect::<Vec<_>>().join(" "))
            .collect();
        write!(f, "[{}]", rows.join(" | "))
    }
}

/// Weakly decreasing sequence of nonnegative integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidTableau(format!("{parts:?} is not weakly decreasing")));
        }
        Ok(Self(parts))
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    /// `self <= other` in the dominance order: every prefix sum of `self` is
    /// at most the corresponding prefix sum of `other`.
    pub fn dominated_by(&self, other: &Partition) -> bool {
        let len = self.0.len().max(other.0.len());
        let (mut a, mut b) = (0u64, 0u64);
        for i in 0..len {
            a += u64::from(self.0.get(i).copied().unwrap_or(0));
            b += u64::from(other.0.get(i).copied().unwrap_or(0));
            if a > b {
                return false;
            }
        }
        true
    }

    pub fn compare(&self, other: &Partition) -> Dominance {
        Dominance::from_flags(self.dominated_by(other), other.dominated_by(self))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Dominance {
    LessEq,
    GreaterEq,
    Equal,
    Incomparable,
}

impl Dominance {
    fn from_flags(le: bool, ge: bool) -> Self {
        match (le, ge) {
            (true, true) => Dominance::Equal,
            (true, false) => Dominance::LessEq,
            (false, true) => Dominance::GreaterEq,
            (false, false) => Dominance::Incomparable,
        }
    }

    pub fn to_ordering(self) -> Option<Ordering> {
        match self {
            Dominance::LessEq => Some(Ordering::Less),
            Dominance::GreaterEq => Some(Ordering::Greater),
            Dominance::Equal => Some(Ordering::Equal),
            Dominance::Incomparable => None,
        }
    }
}

/// Dominance order on same-shape tableaux: `t <= u` iff
/// `sh(t[i]) <= sh(u[i])` for every `i` up to the largest entry.
pub fn dominance_compare(t: &Tableau, u: &Tableau) -> Result<Dominance> {
    if t.k() != u.k() || t.width() != u.width() {
        return Err(Error::ShapeMismatch);
    }
    let n = t.max_entry().max(u.max_entry());
    let (mut le, mut ge) = (true, true);
    for i in 1..=n {
        let (a, b) = (t.restricted_shape(i), u.restricted_shape(i));
        le &= a.dominated_by(&b);
        ge &= b.dominated_by(&a);
        if !le && !ge {
            break;
        }
    }
    Ok(Dominance::from_flags(le, ge))
}
