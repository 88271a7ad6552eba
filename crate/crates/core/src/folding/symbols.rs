//! Pluecker symbols with cyclic indices, and multiplicative equations over them.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::sort_sign;
use crate::monomial::Monomial;

/// A Pluecker coordinate `P_{i1 < ... < ik}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PluckerSymbol(Vec<u32>);

/// A raw index tuple after reduction mod `n` and sorting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Canonical {
    /// Two indices coincide mod `n`; the coordinate vanishes.
    Zero,
    Signed { symbol: PluckerSymbol, sign: i8 },
}

impl PluckerSymbol {
    /// From indices that are already distinct and increasing.
    pub fn from_sorted(indices: Vec<u32>) -> Result<Self> {
        if indices.windows(2).any(|w| w[0] >= w[1]) || indices.contains(&0) {
            return Err(Error::Malformed(format!("{indices:?} is not a strictly increasing positive tuple")));
        }
        Ok(Self(indices))
    }

    /// Reduces every index into `[1, n]` and sorts, recording the sign of
    /// the sorting permutation.
    pub fn canonicalize(raw: &[i64], n: u32) -> Canonical {
        let n = i64::from(n);
        let reduced: Vec<u32> = raw.iter().map(|&i| ((i - 1).rem_euclid(n) + 1) as u32).collect();
        match sort_sign(&reduced) {
            None => Canonical::Zero,
            Some(sign) => {
                let mut sorted = reduced;
                sorted.sort_unstable();
                Canonical::Signed {
                    symbol: PluckerSymbol(sorted),
                    sign: sign as i8,
                }
            }
        }
    }

    /// Like [`canonicalize`](Self::canonicalize) but a vanishing symbol is an error.
    pub fn canonical_nonzero(raw: &[i64], n: u32) -> Result<(Self, i8)> {
        match Self::canonicalize(raw, n) {
            Canonical::Zero => Err(Error::DegenerateSymbol(raw.to_vec())),
            Canonical::Signed { symbol, sign } => Ok((symbol, sign)),
        }
    }

    pub fn indices(&self) -> &[u32] {
        &self.0
    }
}

impl fmt::Display for PluckerSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.0.iter().any(|&i| i >= 10) { "," } else { "" };
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "P{}", parts.join(sep))
    }
}

/// A multiplicative equation `lhs = rhs` between Laurent monomials in
/// canonical Pluecker symbols.
///
/// Raw index tuples are canonicalized on construction; their signs are
/// collected into `net_sign`, so the equation reads
/// `lhs / rhs = net_sign` on canonical symbols. Factors common to both sides
/// are cancelled.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EquationForm {
    lhs: Monomial<PluckerSymbol>,
    rhs: Monomial<PluckerSymbol>,
    net_sign: i8,
}

/// A raw side: `(index tuple, exponent)` pairs, indices taken mod `n`.
pub type RawSide<'a> = &'a [(&'a [i64], i64)];

impl EquationForm {
    pub fn from_raw(lhs: RawSide<'_>, rhs: RawSide<'_>, n: u32) -> Result<Self> {
        let mut sign = 1i8;
        let mut side = |raw: RawSide<'_>| -> Result<Monomial<PluckerSymbol>> {
            let mut m = Monomial::one();
            for &(idx, e) in raw {
                let (sym, s) = PluckerSymbol::canonical_nonzero(idx, n)?;
                if e % 2 != 0 {
                    sign *= s;
                }
                m.add_exponent(sym, e);
            }
            Ok(m)
        };
        let l = side(lhs)?;
        let r = side(rhs)?;
        Ok(Self::from_sides(l, r, sign))
    }

    /// Builds from canonical sides, cancelling common factors.
    pub fn from_sides(lhs: Monomial<PluckerSymbol>, rhs: Monomial<PluckerSymbol>, net_sign: i8) -> Self {
        let word = lhs.div(&rhs);
        let mut l = Monomial::one();
        let mut r = Monomial::one();
        for (sym, e) in word.iter() {
            // Keep each surviving factor on the side it came from.
            if lhs.exponent(sym) != 0 {
                l.add_exponent(sym.clone(), e);
            } else {
                r.add_exponent(sym.clone(), -e);
            }
        }
        Self {
            lhs: l,
            rhs: r,
            net_sign,
        }
    }

    pub fn lhs(&self) -> &Monomial<PluckerSymbol> {
        &self.lhs
    }

    pub fn rhs(&self) -> &Monomial<PluckerSymbol> {
        &self.rhs
    }

    pub fn net_sign(&self) -> i8 {
        self.net_sign
    }

    /// The one-sided Laurent word `lhs / rhs`.
    pub fn exponents(&self) -> Monomial<PluckerSymbol> {
        self.lhs.div(&self.rhs)
    }

    /// Same equation with the two sides interchanged.
    pub fn swapped(&self) -> Self {
        Self {
            lhs: self.rhs.clone(),
            rhs: self.lhs.clone(),
            net_sign: self.net_sign,
        }
    }

    pub fn symbols(&self) -> impl Iterator<Item = &PluckerSymbol> {
        self.lhs.keys().chain(self.rhs.keys())
    }
}

/// Equality of equations up to inversion of the Laurent word.
pub fn equations_equal(a: &EquationForm, b: &EquationForm) -> bool {
    if a.net_sign != b.net_sign {
        return false;
    }
    let (wa, wb) = (a.exponents(), b.exponents());
    wa == wb || wa.is_inverse_of(&wb)
}

/// Set equality under [`equations_equal`].
pub fn equation_sets_equal(a: &[EquationForm], b: &[EquationForm]) -> bool {
    a.len() == b.len()
        && a.iter().all(|x| b.iter().any(|y| equations_equal(x, y)))
        && b.iter().all(|y| a.iter().any(|x| equations_equal(x, y)))
}

impl fmt::Display for EquationForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ratio = |m: &Monomial<PluckerSymbol>| {
            let (num, den) = (m.numerator(), m.denominator());
            if den.is_one() {
                num.to_string()
            } else {
                format!("{num} / {den}")
            }
        };
        let sign = if self.net_sign < 0 { "-" } else { "" };
        write!(f, "{} = {sign}{}", ratio(&self.lhs), ratio(&self.rhs))
    }
}
