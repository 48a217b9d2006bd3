//! Exact rational scalars and sparse linear combinations over them.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational number, always kept in lowest terms.
pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Q::new(n, d))
        }
        None => s.parse::<BigInt>().ok().map(Q::from_integer),
    }
}

pub fn fmt_q(x: &Q) -> String {
    x.to_string()
}

/// Integer value of `x`, if it is one and fits in an `i64`.
pub fn as_i64(x: &Q) -> Option<i64> {
    if x.is_integer() {
        i64::try_from(x.to_integer()).ok()
    } else {
        None
    }
}

pub fn sign_q(negative: bool) -> Q {
    if negative {
        -Q::one()
    } else {
        Q::one()
    }
}

/// A finite linear combination `Σ c_k · k` with no zero coefficients stored.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lin<K: Ord>(BTreeMap<K, Q>);

impl<K: Ord> Default for Lin<K> {
    fn default() -> Self {
        Lin(BTreeMap::new())
    }
}

impl<K: Ord + Clone> Lin<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn term(k: K, c: Q) -> Self {
        let mut m = BTreeMap::new();
        if !c.is_zero() {
            m.insert(k, c);
        }
        Lin(m)
    }

    pub fn basis(k: K) -> Self {
        Self::term(k, Q::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coeff(&self, k: &K) -> Q {
        self.0.get(k).cloned().unwrap_or_else(Q::zero)
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (&K, &Q)> {
        self.0.iter()
    }

    pub fn keys(&self) -> impl DoubleEndedIterator<Item = &K> {
        self.0.keys()
    }

    pub fn max_key(&self) -> Option<&K> {
        self.0.keys().next_back()
    }

    pub fn add_term(&mut self, k: K, c: &Q) {
        if c.is_zero() {
            return;
        }
        let entry = self.0.entry(k);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// `self += c · other`
    pub fn add_scaled(&mut self, other: &Lin<K>, c: &Q) {
        if c.is_zero() {
            return;
        }
        for (k, v) in &other.0 {
            self.add_term(k.clone(), &(v * c));
        }
    }

    pub fn add(&mut self, other: &Lin<K>) {
        self.add_scaled(other, &Q::one());
    }

    pub fn sub(&mut self, other: &Lin<K>) {
        self.add_scaled(other, &-Q::one());
    }

    pub fn scaled(&self, c: &Q) -> Lin<K> {
        if c.is_zero() {
            return Lin::zero();
        }
        Lin(self.0.iter().map(|(k, v)| (k.clone(), v * c)).collect())
    }

    pub fn neg(&self) -> Lin<K> {
        Lin(self.0.iter().map(|(k, v)| (k.clone(), -v.clone())).collect())
    }

    pub fn map_keys<K2: Ord + Clone>(&self, mut f: impl FnMut(&K) -> K2) -> Lin<K2> {
        let mut out = Lin::zero();
        for (k, v) in &self.0 {
            out.add_term(f(k), v);
        }
        out
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (K, Q)>) -> Self {
        let mut out = Lin::zero();
        for (k, c) in terms {
            out.add_term(k, &c);
        }
        out
    }

    pub fn all_integral(&self) -> bool {
        self.0.values().all(|c| c.is_integer())
    }
}

impl<K: Ord + fmt::Debug> fmt::Debug for Lin<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in &self.0 {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if c.is_one() {
                write!(f, "{k:?}")?;
            } else if c.is_negative() || !c.is_integer() {
                write!(f, "({c})·{k:?}")?;
            } else {
                write!(f, "{c}·{k:?}")?;
            }
        }
        Ok(())
    }
}
