//! Laurent monomials with integer exponents over an ordered key set.

use std::collections::BTreeMap;
use std::fmt;

/// A Laurent monomial `Π x_k^{e_k}`. Zero exponents are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial<K: Ord> {
    exponents: BTreeMap<K, i64>,
}

impl<K: Ord> Default for Monomial<K> {
    fn default() -> Self {
        Self {
            exponents: BTreeMap::new(),
        }
    }
}

impl<K: Ord + Clone> Monomial<K> {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (K, i64)>) -> Self {
        let mut m = Self::one();
        for (k, e) in pairs {
            m.add_exponent(k, e);
        }
        m
    }

    pub fn add_exponent(&mut self, key: K, e: i64) {
        if e == 0 {
            return;
        }
        let slot = self.exponents.entry(key.clone()).or_insert(0);
        *slot += e;
        if *slot == 0 {
            self.exponents.remove(&key);
        }
    }

    pub fn exponent(&self, key: &K) -> i64 {
        self.exponents.get(key).copied().unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, i64)> {
        self.exponents.iter().map(|(k, e)| (k, *e))
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.exponents.keys()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, e) in other.iter() {
            out.add_exponent(k.clone(), e);
        }
        out
    }

    pub fn inverse(&self) -> Self {
        Self {
            exponents: self.exponents.iter().map(|(k, e)| (k.clone(), -e)).collect(),
        }
    }

    pub fn div(&self, other: &Self) -> Self {
        self.mul(&other.inverse())
    }

    /// Substitutes every key through `f`; keys that collide have their
    /// exponents added.
    pub fn map_keys<L: Ord + Clone>(&self, mut f: impl FnMut(&K) -> L) -> Monomial<L> {
        Monomial::from_pairs(self.iter().map(|(k, e)| (f(k), e)))
    }

    /// Factors with positive exponents.
    pub fn numerator(&self) -> Self {
        Self::from_pairs(self.iter().filter(|(_, e)| *e > 0).map(|(k, e)| (k.clone(), e)))
    }

    /// Factors with negative exponents, returned with positive exponents.
    pub fn denominator(&self) -> Self {
        Self::from_pairs(self.iter().filter(|(_, e)| *e < 0).map(|(k, e)| (k.clone(), -e)))
    }

    pub fn is_inverse_of(&self, other: &Self) -> bool {
        self.len() == other.len() && self.iter().all(|(k, e)| other.exponent(k) == -e)
    }
}

impl<K: Ord + Clone> FromIterator<(K, i64)> for Monomial<K> {
    fn from_iter<I: IntoIterator<Item = (K, i64)>>(iter: I) -> Self {
        Self::from_pairs(iter)
    }
}

impl<K: Ord + fmt::Display> fmt::Display for Monomial<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponents.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for (k, e) in &self.exponents {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            if *e == 1 {
                write!(f, "{k}")?;
            } else {
                write!(f, "{k}^{e}")?;
            }
        }
        Ok(())
    }
}
