//! Closed-form labels of the foldable seed.

use crate::error::{Error, Result};
use crate::seeds::Grid;

use super::symbols::PluckerSymbol;

/// Two cyclic intervals `[a,b] ∪ [c,d]`, endpoints not yet reduced mod `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TwoIntervals {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl TwoIntervals {
    /// Sorted indices in `[1, n]`; `None` if the intervals overlap mod `n`.
    pub fn indices(&self, n: usize) -> Option<Vec<u32>> {
        let n = n as i64;
        let mut out: Vec<u32> = (self.a..=self.b)
            .chain(self.c..=self.d)
            .map(|x| ((x - 1).rem_euclid(n) + 1) as u32)
            .collect();
        let len = out.len();
        out.sort_unstable();
        out.dedup();
        (out.len() == len).then_some(out)
    }
}

fn check_mutable(i: usize, j: usize, k: usize, n: usize) -> Result<Grid> {
    let grid = Grid::new(k, n)?;
    if i == 0 || j == 0 || i > grid.mutable_rows() || j > grid.mutable_cols() {
        return Err(Error::PositionOutOfRange(i, j));
    }
    Ok(grid)
}

/// Intervals predicted at mutable position `(i, j)`.
pub fn predicted_intervals(i: usize, j: usize, k: usize, n: usize) -> Result<TwoIntervals> {
    check_mutable(i, j, k, n)?;
    let (ii, kk) = (i as i64, k as i64);
    let even = (n - k).is_multiple_of(2);
    let l = ((n - k) / 2) as i64;
    let (start, last) = if even {
        (l - ii / 2, l + kk + (ii - 1) / 2)
    } else {
        (l - (ii - 1) / 2, l + kk + ii / 2)
    };
    let mut t = if start < 1 {
        // Rows near the bottom keep their initial label.
        TwoIntervals { a: 1, b: kk - 1, c: kk + ii, d: kk + ii }
    } else {
        TwoIntervals { a: start, b: start + kk - 2, c: last, d: last }
    };
    for col in 2..=j {
        let odd_sum = (i + col + 1) % 2 == 1;
        if odd_sum != even {
            // Shrink: [a, b-1] ∪ [c-1, d]
            t.b -= 1;
            t.c -= 1;
        } else {
            // Grow: [a+1, b] ∪ [c, d+1]
            t.a += 1;
            t.d += 1;
        }
    }
    Ok(t)
}

pub fn predicted_label(i: usize, j: usize, k: usize, n: usize) -> Result<PluckerSymbol> {
    let t = predicted_intervals(i, j, k, n)?;
    let idx = t
        .indices(n)
        .filter(|v| v.len() == k)
        .ok_or_else(|| Error::Structural(format!("predicted intervals at ({i},{j}) collapse: {t:?}")))?;
    PluckerSymbol::from_sorted(idx)
}

/// Row/column-index pair `(a, c)` with `c - a = i + 3`, for `Gr(4,n)`.
pub fn gr4_position(i: i64, n: usize) -> (i64, i64) {
    if n.is_multiple_of(2) {
        let h = (n / 2) as i64;
        (h - i.div_euclid(2) - 2, h + (i + 3).div_euclid(2))
    } else {
        let h = ((n - 1) / 2) as i64;
        (h - (i + 3).div_euclid(2), h + i.div_euclid(2) + 2)
    }
}

/// `Gr(4,n)` label at row `i`, column 1 or 3.
pub fn predicted_label_gr4(i: usize, col: usize, n: usize) -> Result<PluckerSymbol> {
    check_mutable(i, col, 4, n)?;
    let (a, c) = gr4_position(i as i64, n);
    let raw = match col {
        1 => [a, a + 1, a + 2, c],
        3 => [a + 1, c - 1, c, c + 1],
        _ => return Err(Error::PositionOutOfRange(i, col)),
    };
    PluckerSymbol::canonical_nonzero(&raw, n as u32).map(|(s, _)| s)
}
