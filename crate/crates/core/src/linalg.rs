//! Exact dense and sparse linear algebra over `Q`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::rational::{Lin, Q};

/// Square or rectangular dense matrix stored row-major.
pub type Matrix = Vec<Vec<Q>>;

pub fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Q::one() } else { Q::zero() }).collect())
        .collect()
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let m = b.first().map_or(0, |r| r.len());
    let k = b.len();
    let mut out = vec![vec![Q::zero(); m]; n];
    for i in 0..n {
        for l in 0..k {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..m {
                if !b[l][j].is_zero() {
                    out[i][j] += &a[i][l] * &b[l][j];
                }
            }
        }
    }
    out
}

pub fn transpose(a: &Matrix) -> Matrix {
    let m = a.first().map_or(0, |r| r.len());
    (0..m).map(|j| a.iter().map(|r| r[j].clone()).collect()).collect()
}

/// Determinant by fraction-exact Gaussian elimination.
pub fn determinant(a: &Matrix) -> Q {
    let n = a.len();
    let mut m = a.clone();
    let mut det = Q::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Q::zero();
        };
        if p != col {
            m.swap(p, col);
            det = -det;
        }
        let pivot = m[col][col].clone();
        det *= &pivot;
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] / &pivot;
            for c in col..n {
                let sub = &f * &m[col][c];
                m[r][c] -= sub;
            }
        }
    }
    det
}

/// Gauss–Jordan inverse; `None` when singular.
pub fn inverse(a: &Matrix) -> Option<Matrix> {
    let n = a.len();
    let mut m = a.clone();
    let mut inv = identity(n);
    for col in 0..n {
        let p = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(p, col);
        inv.swap(p, col);
        let pivot = m[col][col].clone();
        for c in 0..n {
            m[col][c] /= &pivot;
            inv[col][c] /= &pivot;
        }
        for r in 0..n {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].clone();
            for c in 0..n {
                let s1 = &f * &m[col][c];
                m[r][c] -= s1;
                let s2 = &f * &inv[col][c];
                inv[r][c] -= s2;
            }
        }
    }
    Some(inv)
}

/// Solves `a x = b` for a square invertible `a`.
pub fn solve(a: &Matrix, b: &[Q]) -> Option<Vec<Q>> {
    let inv = inverse(a)?;
    Some(
        inv.iter()
            .map(|row| row.iter().zip(b).map(|(x, y)| x * y).sum())
            .collect(),
    )
}

/// Incrementally maintained echelon basis of a subspace of the free vector
/// space on `K`. Each stored row has its largest key as pivot with
/// coefficient one, so the rows whose pivot is small span exactly the
/// intersection with any "keys below a bound" subspace.
#[derive(Clone, Debug)]
pub struct EchelonSpan<K: Ord + Clone> {
    rows: BTreeMap<K, Lin<K>>,
}

impl<K: Ord + Clone> Default for EchelonSpan<K> {
    fn default() -> Self {
        EchelonSpan { rows: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> EchelonSpan<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> impl Iterator<Item = (&K, &Lin<K>)> {
        self.rows.iter()
    }

    /// Reduces `v` against the stored rows, returning the remainder. The
    /// remainder is zero exactly when `v` lies in the span.
    pub fn reduce(&self, v: &Lin<K>) -> Lin<K> {
        let mut v = v.clone();
        let mut bound: Option<K> = None;
        loop {
            let next = match &bound {
                None => v.max_key().cloned(),
                Some(b) => v.keys().rev().find(|k| *k < b).cloned(),
            };
            let Some(k) = next else { break };
            if let Some(row) = self.rows.get(&k) {
                let c = v.coeff(&k);
                v.add_scaled(row, &-c);
            }
            bound = Some(k);
        }
        v
    }

    pub fn contains(&self, v: &Lin<K>) -> bool {
        self.reduce(v).is_zero()
    }

    /// Inserts `v`; returns `true` if the span grew.
    pub fn insert(&mut self, v: &Lin<K>) -> bool {
        let r = self.reduce(v);
        match r.max_key().cloned() {
            None => false,
            Some(p) => {
                let c = r.coeff(&p);
                let row = r.scaled(&(Q::one() / c));
                self.rows.insert(p, row);
                true
            }
        }
    }

    /// Number of basis rows whose pivot satisfies `pred`.
    pub fn count_pivots(&self, pred: impl Fn(&K) -> bool) -> usize {
        self.rows.keys().filter(|k| pred(k)).count()
    }
}

/// Coordinates of `target` in terms of `vectors`, if it lies in their span.
/// The vectors need not be independent; the returned combination is one
/// valid choice.
pub fn express_in<K: Ord + Clone>(vectors: &[Lin<K>], target: &Lin<K>) -> Option<Vec<Q>> {
    // Augment each vector with a tag tracking which inputs built it.
    #[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
    enum Slot<K> {
        Tag(usize),
        Key(K),
    }
    let mut span: EchelonSpan<Slot<K>> = EchelonSpan::new();
    for (i, v) in vectors.iter().enumerate() {
        let mut aug = v.map_keys(|k| Slot::Key(k.clone()));
        aug.add_term(Slot::Tag(i), &Q::one());
        span.insert(&aug);
    }
    let aug_target = target.map_keys(|k| Slot::Key(k.clone()));
    let rem = span.reduce(&aug_target);
    if rem.iter().any(|(k, _)| matches!(k, Slot::Key(_))) {
        return None;
    }
    // target - Σ c_i v_i reduced to only tags: rem = target - Σ(...) means
    // tags carry minus the coefficients used.
    let mut coeffs = vec![Q::zero(); vectors.len()];
    for (k, c) in rem.iter() {
        if let Slot::Tag(i) = k {
            coeffs[*i] = -c.clone();
        }
    }
    Some(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qf};

    fn m(rows: &[&[i64]]) -> Matrix {
        rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()
    }

    #[test]
    fn det_and_inverse_small() {
        let b = m(&[&[0, -1, 0], &[-1, 2, -1], &[0, -1, 2]]);
        assert_eq!(determinant(&b), q(-2));
        let inv = inverse(&b).unwrap();
        assert_eq!(inv[0][0], qf(-3, 2));
        assert_eq!(mat_mul(&b, &inv), identity(3));
    }

    #[test]
    fn singular_has_no_inverse() {
        let a = m(&[&[1, 2], &[2, 4]]);
        assert!(inverse(&a).is_none());
        assert_eq!(determinant(&a), q(0));
    }

    #[test]
    fn echelon_membership() {
        let mut s: EchelonSpan<u32> = EchelonSpan::new();
        let v1 = Lin::from_terms([(1, q(1)), (3, q(2))]);
        let v2 = Lin::from_terms([(2, q(1)), (3, q(1))]);
        assert!(s.insert(&v1));
        assert!(s.insert(&v2));
        let comb = Lin::from_terms([(1, q(2)), (2, q(-1)), (3, q(3))]);
        assert!(s.contains(&comb));
        assert!(!s.insert(&comb));
        assert!(!s.contains(&Lin::basis(1)));
        assert_eq!(s.dim(), 2);
    }

    #[test]
    fn express_recovers_coefficients() {
        let v1 = Lin::from_terms([(1u32, q(1)), (3, q(2))]);
        let v2 = Lin::from_terms([(2u32, q(1)), (3, q(1))]);
        let mut t = v1.scaled(&q(2));
        t.add_scaled(&v2, &qf(-1, 3));
        let c = express_in(&[v1.clone(), v2.clone()], &t).unwrap();
        let mut back = v1.scaled(&c[0]);
        back.add_scaled(&v2, &c[1]);
        assert_eq!(back, t);
        assert!(express_in(&[v1], &Lin::basis(2u32)).is_none());
    }
}
