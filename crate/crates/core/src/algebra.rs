//! Sparse exact-rational vectors: group-algebra elements and vectors in the
//! span of a conjugacy class.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::perm::Perm;

/// Sparse linear combination of keys with rational coefficients. Zero
/// coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct AlgebraVector<K: Ord> {
    terms: BTreeMap<K, BigRational>,
}

pub fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

impl<K: Ord + Clone> AlgebraVector<K> {
    pub fn new() -> Self {
        AlgebraVector {
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (K, BigRational)>) -> Self {
        let mut v = Self::new();
        for (k, c) in terms {
            v.add_term(k, c);
        }
        v
    }

    /// Sum of the keys, each with coefficient one.
    pub fn sum_of<'a>(keys: impl IntoIterator<Item = &'a K>) -> Self
    where
        K: 'a,
    {
        Self::from_terms(keys.into_iter().map(|k| (k.clone(), BigRational::one())))
    }

    pub fn add_term(&mut self, key: K, coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn coeff(&self, key: &K) -> BigRational {
        self.terms.get(key).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &BigRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scaled(&self, c: &BigRational) -> Self {
        Self::from_terms(self.terms.iter().map(|(k, v)| (k.clone(), v * c)))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, v) in other.iter() {
            out.add_term(k.clone(), v.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scaled(&-BigRational::one()))
    }

    /// Maps keys through `f`, merging coefficients that land on one key.
    pub fn map_keys<L: Ord + Clone>(&self, mut f: impl FnMut(&K) -> L) -> AlgebraVector<L> {
        AlgebraVector::from_terms(self.terms.iter().map(|(k, v)| (f(k), v.clone())))
    }

    /// If `self = c * other` for a rational c, returns c.
    pub fn ratio_to(&self, other: &Self) -> Option<BigRational> {
        if self.len() != other.len() {
            return None;
        }
        let (k0, v0) = other.terms.iter().next()?;
        let c = self.coeff(k0) / v0;
        other
            .terms
            .iter()
            .all(|(k, v)| self.coeff(k) == v * &c)
            .then_some(c)
    }
}

impl AlgebraVector<Perm> {
    /// Product in the group algebra; `(a)(b)` maps to `a.compose(b)`.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::new();
        for (a, x) in self.iter() {
            for (b, y) in other.iter() {
                out.add_term(a.compose(b), x * y);
            }
        }
        out
    }

    /// `Σ c_σ σ v σ^-1` for a group-algebra element acting on `v` by
    /// conjugation.
    pub fn conjugate_action(&self, v: &Self) -> Self {
        let mut out = Self::new();
        for (s, c) in self.iter() {
            for (x, d) in v.iter() {
                out.add_term(s.conjugate(x), c * d);
            }
        }
        out
    }
}

impl<K: Ord + fmt::Display> fmt::Display for AlgebraVector<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.terms.iter().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let a = c.abs();
            if a.is_one() {
                write!(f, "{k}")?;
            } else {
                write!(f, "{a}·{k}")?;
            }
        }
        Ok(())
    }
}

impl<K: Ord + fmt::Display> fmt::Debug for AlgebraVector<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Perm {
        Perm::parse_cycles(s, 3).unwrap()
    }

    #[test]
    fn zero_coefficients_are_dropped() {
        let mut v = AlgebraVector::new();
        v.add_term(1u32, rational(1, 2));
        v.add_term(1u32, rational(-1, 2));
        assert!(v.is_zero());
        assert_eq!(v.to_string(), "0");
    }

    #[test]
    fn group_algebra_product() {
        let t = p("(1,2)");
        let e = Perm::identity(3);
        let x = AlgebraVector::from_terms([(e.clone(), rational(1, 1)), (t.clone(), rational(1, 1))]);
        // (e + t)^2 = 2(e + t)
        assert_eq!(x.mul(&x), x.scaled(&rational(2, 1)));
        assert_eq!(x.mul(&x).ratio_to(&x), Some(rational(2, 1)));
    }

    #[test]
    fn display() {
        let v = AlgebraVector::from_terms([("b", rational(-1, 42)), ("a", rational(15, 14))]);
        assert_eq!(v.to_string(), "15/14·a - 1/42·b");
    }
}
