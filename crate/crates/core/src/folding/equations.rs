//! Folding equations for `Gr(4,n)`: engine-derived from X-coordinate
//! identification, and their closed forms.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::quiver::VertexId;
use crate::seeds::Seed;

use super::predict::gr4_position;
use super::symbols::{equations_equal, EquationForm, PluckerSymbol};

fn symbol_of(seed: &Seed, v: VertexId) -> Result<PluckerSymbol> {
    let col = seed.label(v)?.single_column().ok_or(Error::MultiColumn)?;
    PluckerSymbol::from_sorted(col)
}

fn substitute(seed: &Seed, word: &Monomial<VertexId>) -> Result<Monomial<PluckerSymbol>> {
    let mut out = Monomial::one();
    for (&v, e) in word.iter() {
        out.add_exponent(symbol_of(seed, v)?, e);
    }
    Ok(out)
}

/// Equations `ŷ(i,1) = ŷ(i,3)` for every row `i` of a foldable `Gr(4,n)` seed,
/// with labels substituted and common factors cancelled.
pub fn x_identification_equations(seed: &Seed) -> Result<Vec<EquationForm>> {
    if seed.k() != 4 {
        return Err(Error::InvalidParameters {
            k: seed.k(),
            n: seed.n(),
            reason: "identification equations are defined for k = 4".into(),
        });
    }
    let rows = seed.n() - 5;
    let middle: Vec<PluckerSymbol> = (1..=rows)
        .map(|i| symbol_of(seed, seed.id_at((i, 2))?))
        .collect::<Result<_>>()?;
    let mut out = Vec::with_capacity(rows);
    for i in 1..=rows {
        let q = seed.quiver();
        let left = substitute(seed, &q.x_coordinate(seed.id_at((i, 1))?)?)?;
        let right = substitute(seed, &q.x_coordinate(seed.id_at((i, 3))?)?)?;
        let eq = EquationForm::from_sides(left, right, 1);
        if let Some(s) = eq.symbols().find(|s| middle.contains(s)) {
            return Err(Error::Structural(format!(
                "second-column label {s} survives in row {i}: {eq}"
            )));
        }
        out.push(eq);
    }
    Ok(out)
}

fn shifted(base: i64, offsets: [i64; 4]) -> [i64; 4] {
    offsets.map(|o| base + o)
}

/// `P_{a,a+1,a+2,c} P_{a-1,a,a+1,c+1} / P_{a-1,a,a+1,a+2}
///   = P_{a+1,c-1,c,c+1} P_{a,c,c+1,c+2} / P_{c-1,c,c+1,c+2}`
pub fn closed_form_equation(a: i64, c: i64, n: usize) -> Result<EquationForm> {
    let lhs = [
        ([a, a + 1, a + 2, c], 1),
        ([a - 1, a, a + 1, c + 1], 1),
        (shifted(a, [-1, 0, 1, 2]), -1),
    ];
    let rhs = [
        ([a + 1, c - 1, c, c + 1], 1),
        ([a, c, c + 1, c + 2], 1),
        (shifted(c, [-1, 0, 1, 2]), -1),
    ];
    let l: Vec<(&[i64], i64)> = lhs.iter().map(|(i, e)| (&i[..], *e)).collect();
    let r: Vec<(&[i64], i64)> = rhs.iter().map(|(i, e)| (&i[..], *e)).collect();
    EquationForm::from_raw(&l, &r, n as u32)
}

/// The physical constraint at `(a, c)`, with the extra `P_{a,a+1,c,c+1}` in
/// both denominators. It cancels on construction.
pub fn general_equation(a: i64, c: i64, n: usize) -> Result<EquationForm> {
    let extra = [a, a + 1, c, c + 1];
    let lhs = [
        ([a, a + 1, a + 2, c], 1),
        ([a - 1, a, a + 1, c + 1], 1),
        (shifted(a, [-1, 0, 1, 2]), -1),
        (extra, -1),
    ];
    let rhs = [
        ([a + 1, c - 1, c, c + 1], 1),
        ([a, c, c + 1, c + 2], 1),
        (shifted(c, [-1, 0, 1, 2]), -1),
        (extra, -1),
    ];
    let l: Vec<(&[i64], i64)> = lhs.iter().map(|(i, e)| (&i[..], *e)).collect();
    let r: Vec<(&[i64], i64)> = rhs.iter().map(|(i, e)| (&i[..], *e)).collect();
    EquationForm::from_raw(&l, &r, n as u32)
}

/// The identification at the last row, written with explicit indices.
pub fn boundary_equation(n: usize) -> Result<EquationForm> {
    let m = n as i64;
    EquationForm::from_raw(
        &[(&[1, 2, 3, m - 2], 1), (&[1, 2, m - 1, m], 1), (&[1, 2, 3, m], -1)],
        &[
            (&[2, m - 3, m - 2, m - 1], 1),
            (&[1, m - 2, m - 1, m], 1),
            (&[m - 3, m - 2, m - 1, m], -1),
        ],
        n as u32,
    )
}

/// `(a, c)` of every closed-form equation, indexed by `i ∈ [0, n-6]`.
pub fn closed_form_positions(n: usize) -> Vec<(i64, i64)> {
    (0..=n as i64 - 6).map(|i| gr4_position(i, n)).collect()
}

/// The `n - 5` closed-form folding equations.
pub fn closed_form_equations(n: usize) -> Result<Vec<EquationForm>> {
    if n < 6 {
        return Err(Error::InvalidParameters {
            k: 4,
            n,
            reason: "folding equations need n >= 6".into(),
        });
    }
    let out: Vec<EquationForm> = closed_form_positions(n)
        .into_iter()
        .map(|(a, c)| closed_form_equation(a, c, n))
        .collect::<Result<_>>()?;
    // The last member is the boundary identification, which is also the
    // general form at (a, c) = (n-2, 1) with sides interchanged.
    let boundary = boundary_equation(n)?;
    let swapped = closed_form_equation(n as i64 - 2, 1, n)?.swapped();
    let last = out.last().expect("n >= 6");
    if !equations_equal(&boundary, &swapped) || !equations_equal(&boundary, last) {
        return Err(Error::Structural(format!(
            "boundary equation {boundary} does not match {last}"
        )));
    }
    Ok(out)
}

/// Every `(a, c)` with cyclic separation `c - a ∈ [3, n-3]`, one per unordered pair.
pub fn folding_pairs(n: usize) -> Vec<(i64, i64)> {
    let m = n as i64;
    let mut out = Vec::new();
    for a in 1..=m {
        for d in 3..=m - 3 {
            let c = (a + d - 1).rem_euclid(m) + 1;
            if d < m - d || (d == m - d && a < c) {
                out.push((a, c));
            }
        }
    }
    out
}

/// The full family of `n(n-5)/2` constraints, extra factor cancelled.
pub fn folding_family(n: usize) -> Result<Vec<EquationForm>> {
    folding_pairs(n)
        .into_iter()
        .map(|(a, c)| general_equation(a, c, n))
        .collect()
}

/// Wire form of an equation: each side as `[[indices], exponent]` pairs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquationJson {
    pub lhs: Vec<(Vec<u32>, i64)>,
    pub rhs: Vec<(Vec<u32>, i64)>,
}

impl From<&EquationForm> for EquationJson {
    fn from(e: &EquationForm) -> Self {
        let side = |m: &Monomial<PluckerSymbol>| m.iter().map(|(s, x)| (s.indices().to_vec(), x)).collect();
        Self {
            lhs: side(e.lhs()),
            rhs: side(e.rhs()),
        }
    }
}

impl EquationJson {
    pub fn to_form(&self) -> Result<EquationForm> {
        let side = |v: &[(Vec<u32>, i64)]| -> Result<Monomial<PluckerSymbol>> {
            let mut m = Monomial::one();
            for (idx, e) in v {
                m.add_exponent(PluckerSymbol::from_sorted(idx.clone())?, *e);
            }
            Ok(m)
        };
        Ok(EquationForm::from_sides(side(&self.lhs)?, side(&self.rhs)?, 1))
    }
}
