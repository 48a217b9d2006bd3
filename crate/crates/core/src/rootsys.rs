//! Cartan matrices, root systems, weight arithmetic, pseudo-minuscule
//! classification and the extended matrix `B`.
//!
//! Conventions: simple roots use Bourbaki numbering, and `A[i][j] = α_j(h_i)`
//! so that `[h_i, e_j] = A[i][j] e_j`. Roots are integer coordinate vectors
//! in the simple-root basis. Weight labels and fundamental-weight indices in
//! public results are 1-based to match the usual numbering.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{AlgebraError, Result};
use crate::linalg::{determinant, inverse, Matrix};
use crate::rational::{q, Q};

/// Finite Cartan types.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CartanType {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl CartanType {
    pub fn parse(s: &str) -> Result<CartanType> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(CartanType::A),
            "B" => Ok(CartanType::B),
            "C" => Ok(CartanType::C),
            "D" => Ok(CartanType::D),
            "E" => Ok(CartanType::E),
            "F" => Ok(CartanType::F),
            "G" => Ok(CartanType::G),
            other => Err(AlgebraError::Config(format!("unknown Cartan type {other:?}"))),
        }
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

pub type Root = Vec<i64>;

pub fn height(root: &[i64]) -> i64 {
    root.iter().sum()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanData {
    pub label: String,
    /// `matrix[i][j] = α_j(h_i)`.
    pub matrix: Vec<Vec<i64>>,
    /// `d_i` with `d_i A_ij = d_j A_ji`, normalised so the first entry is 1.
    pub symmetriser: Vec<Q>,
    /// Positive roots ordered by height, then lexicographically.
    pub positive_roots: Vec<Root>,
    pub highest_root: Root,
}

impl CartanData {
    pub fn rank(&self) -> usize {
        self.matrix.len()
    }

    /// Coxeter labels: coordinates of the highest root.
    pub fn coxeter_labels(&self) -> &[i64] {
        &self.highest_root
    }

    pub fn roots(&self) -> Vec<Root> {
        let mut out: Vec<Root> = self.positive_roots.clone();
        out.extend(self.positive_roots.iter().map(|r| r.iter().map(|x| -x).collect()));
        out
    }

    pub fn is_root(&self, v: &[i64]) -> bool {
        let pos = v.iter().all(|&x| x >= 0);
        let neg = v.iter().all(|&x| x <= 0);
        if pos {
            self.positive_roots.binary_search_by(|r| root_order(r, v)).is_ok()
        } else if neg {
            let p: Root = v.iter().map(|x| -x).collect();
            self.positive_roots.binary_search_by(|r| root_order(r, &p)).is_ok()
        } else {
            false
        }
    }

    pub fn is_simply_laced(&self) -> bool {
        let r = self.rank();
        (0..r).all(|i| (0..r).all(|j| i == j || self.matrix[i][j] >= -1))
    }

    pub fn is_symmetric(&self) -> bool {
        let r = self.rank();
        (0..r).all(|i| (0..r).all(|j| self.matrix[i][j] == self.matrix[j][i]))
    }

    pub fn det(&self) -> Q {
        determinant(&self.matrix_q())
    }

    pub fn matrix_q(&self) -> Matrix {
        self.matrix.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()
    }

    /// `s_i(β) = β − β(h_i) α_i`.
    pub fn reflect(&self, i: usize, beta: &[i64]) -> Root {
        let pairing: i64 = beta.iter().enumerate().map(|(j, b)| b * self.matrix[i][j]).sum();
        let mut out = beta.to_vec();
        out[i] -= pairing;
        out
    }

    /// Builds the data for an explicit Cartan matrix, validating that it is
    /// a symmetrisable, invertible matrix of finite type.
    pub fn from_matrix(label: impl Into<String>, matrix: Vec<Vec<i64>>) -> Result<CartanData> {
        let r = matrix.len();
        if r == 0 || matrix.iter().any(|row| row.len() != r) {
            return Err(AlgebraError::Config("Cartan matrix must be square and non-empty".into()));
        }
        for i in 0..r {
            if matrix[i][i] != 2 {
                return Err(AlgebraError::Config(format!("A[{i}][{i}] must be 2")));
            }
            for j in 0..r {
                if i != j {
                    if matrix[i][j] > 0 {
                        return Err(AlgebraError::Config(format!("A[{i}][{j}] must be <= 0")));
                    }
                    if (matrix[i][j] == 0) != (matrix[j][i] == 0) {
                        return Err(AlgebraError::Config(format!(
                            "A[{i}][{j}] and A[{j}][{i}] must vanish together"
                        )));
                    }
                }
            }
        }
        let symmetriser = symmetriser(&matrix)?;
        let positive_roots = positive_roots(&matrix)?;
        let max_h = positive_roots.iter().map(|r| height(r)).max().unwrap_or(0);
        let top: Vec<&Root> = positive_roots.iter().filter(|r| height(r) == max_h).collect();
        if top.len() != 1 {
            return Err(AlgebraError::Unsupported(
                "Cartan matrix is decomposable (no unique highest root)".into(),
            ));
        }
        let highest_root = top[0].clone();
        let data = CartanData { label: label.into(), matrix, symmetriser, positive_roots, highest_root };
        if data.det().is_zero() {
            return Err(AlgebraError::Config("Cartan matrix must be invertible".into()));
        }
        Ok(data)
    }

    /// Relabels simple roots: new index `k` is old index `perm[k]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<CartanData> {
        let r = self.rank();
        let m = (0..r).map(|i| (0..r).map(|j| self.matrix[perm[i]][perm[j]]).collect()).collect();
        CartanData::from_matrix(format!("{}[perm {:?}]", self.label, perm), m)
    }
}

fn root_order(a: &[i64], b: &[i64]) -> std::cmp::Ordering {
    height(a).cmp(&height(b)).then_with(|| a.cmp(b))
}

fn symmetriser(a: &[Vec<i64>]) -> Result<Vec<Q>> {
    let r = a.len();
    let mut d: Vec<Option<Q>> = vec![None; r];
    for start in 0..r {
        if d[start].is_some() {
            continue;
        }
        d[start] = Some(Q::one());
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            let di = d[i].clone().unwrap();
            for j in 0..r {
                if i == j || a[i][j] == 0 {
                    continue;
                }
                let dj = &di * q(a[i][j]) / q(a[j][i]);
                match &d[j] {
                    None => {
                        d[j] = Some(dj);
                        queue.push_back(j);
                    }
                    Some(existing) if *existing != dj => {
                        return Err(AlgebraError::Config("Cartan matrix is not symmetrisable".into()))
                    }
                    _ => {}
                }
            }
        }
    }
    Ok(d.into_iter().map(|x| x.unwrap()).collect())
}

const MAX_ROOTS: usize = 20_000;

fn positive_roots(a: &[Vec<i64>]) -> Result<Vec<Root>> {
    let r = a.len();
    let simple: Vec<Root> = (0..r).map(|i| (0..r).map(|j| i64::from(i == j)).collect()).collect();
    let mut seen: BTreeSet<Root> = simple.iter().cloned().collect();
    let mut queue: VecDeque<Root> = simple.iter().cloned().collect();
    while let Some(beta) = queue.pop_front() {
        for i in 0..r {
            if beta == simple[i] {
                continue;
            }
            let pairing: i64 = (0..r).map(|j| beta[j] * a[i][j]).sum();
            let mut img = beta.clone();
            img[i] -= pairing;
            if img.iter().any(|&x| x < 0) {
                return Err(AlgebraError::Unsupported("root system is not of finite type".into()));
            }
            if seen.insert(img.clone()) {
                if seen.len() > MAX_ROOTS {
                    return Err(AlgebraError::Unsupported("root system is not of finite type".into()));
                }
                queue.push_back(img);
            }
        }
    }
    let mut out: Vec<Root> = seen.into_iter().collect();
    out.sort_by(|x, y| root_order(x, y));
    Ok(out)
}

/// Standard Cartan matrix in Bourbaki numbering.
pub fn standard_matrix(ty: CartanType, rank: usize) -> Result<Vec<Vec<i64>>> {
    let bad = || AlgebraError::Config(format!("invalid rank {rank} for type {ty}"));
    let valid = match ty {
        CartanType::A => rank >= 1,
        CartanType::B | CartanType::C => rank >= 2,
        CartanType::D => rank >= 4,
        CartanType::E => (6..=8).contains(&rank),
        CartanType::F => rank == 4,
        CartanType::G => rank == 2,
    };
    if !valid {
        return Err(bad());
    }
    let r = rank;
    let mut m = vec![vec![0i64; r]; r];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut link = |i: usize, j: usize| {
        m[i][j] = -1;
        m[j][i] = -1;
    };
    match ty {
        CartanType::A | CartanType::B | CartanType::C => {
            for i in 0..r - 1 {
                link(i, i + 1);
            }
        }
        CartanType::D => {
            for i in 0..r - 2 {
                link(i, i + 1);
            }
            link(r - 3, r - 1);
        }
        CartanType::E => {
            // Bourbaki: 1-3-4-5-6-7-8 with 2 attached to 4.
            link(0, 2);
            link(1, 3);
            for i in 2..r - 1 {
                link(i, i + 1);
            }
        }
        CartanType::F => {
            link(0, 1);
            link(1, 2);
            link(2, 3);
        }
        CartanType::G => link(0, 1),
    }
    match ty {
        CartanType::B => m[r - 1][r - 2] = -2,
        CartanType::C => m[r - 2][r - 1] = -2,
        CartanType::F => m[2][1] = -2,
        CartanType::G => m[0][1] = -3,
        _ => {}
    }
    Ok(m)
}

pub fn build_cartan(ty: CartanType, rank: usize) -> Result<CartanData> {
    let m = standard_matrix(ty, rank)?;
    CartanData::from_matrix(format!("{ty}{rank}"), m)
}

/// Dynkin labels `λ_k` together with the normalisation `κ(e_k, f_k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightData {
    pub labels: Vec<i64>,
    pub kappa: Vec<Q>,
}

impl WeightData {
    pub fn new(cartan: &CartanData, labels: Vec<i64>, kappa: Vec<Q>) -> Result<WeightData> {
        let r = cartan.rank();
        if labels.len() != r || kappa.len() != r {
            return Err(AlgebraError::Config(format!("expected {r} Dynkin labels and {r} kappa values")));
        }
        if labels.iter().any(|&l| l < 0) {
            return Err(AlgebraError::Config("Dynkin labels must be non-negative".into()));
        }
        if labels.iter().all(|&l| l == 0) {
            return Err(AlgebraError::Config("Dynkin labels must not all be zero".into()));
        }
        if kappa.iter().any(|k| !k.is_positive()) {
            return Err(AlgebraError::Config("kappa values must be positive".into()));
        }
        check_kappa(cartan, &kappa)?;
        Ok(WeightData { labels, kappa })
    }

    /// `λ^∧_k = λ_k / κ(e_k, f_k)`.
    pub fn hat(&self) -> Vec<Q> {
        self.labels.iter().zip(&self.kappa).map(|(&l, k)| q(l) / k).collect()
    }

    pub fn permuted(&self, perm: &[usize]) -> WeightData {
        WeightData {
            labels: perm.iter().map(|&p| self.labels[p]).collect(),
            kappa: perm.iter().map(|&p| self.kappa[p].clone()).collect(),
        }
    }
}

/// `κ(e_k, f_k) = 1` for every `k`; only consistent for symmetric `A`.
pub fn kappa_symmetric(cartan: &CartanData) -> Result<Vec<Q>> {
    let k = vec![Q::one(); cartan.rank()];
    check_kappa(cartan, &k)?;
    Ok(k)
}

/// Normalisation with `κ(e_k, f_k) = 1` at the given (0-based) node and
/// the other values fixed by the symmetriser.
pub fn kappa_adapted(cartan: &CartanData, node: usize) -> Vec<Q> {
    let d = &cartan.symmetriser;
    d.iter().map(|dj| &d[node] / dj).collect()
}

/// The form `(α_i, α_j) = A_ij / κ(e_i, f_i)` must be symmetric.
fn check_kappa(cartan: &CartanData, kappa: &[Q]) -> Result<()> {
    let r = cartan.rank();
    for i in 0..r {
        for j in 0..i {
            let lhs = q(cartan.matrix[i][j]) / &kappa[i];
            let rhs = q(cartan.matrix[j][i]) / &kappa[j];
            if lhs != rhs {
                return Err(AlgebraError::InvalidNormalisation(format!(
                    "kappa ratios inconsistent with the symmetriser at nodes {} and {}",
                    j + 1,
                    i + 1
                )));
            }
        }
    }
    Ok(())
}

/// Symmetric form on the weight space in the simple-root basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightForm {
    /// `(α_i, α_j)`.
    pub gram: Matrix,
    /// Row `i` holds `Λ_i` in the simple-root basis.
    pub fundamental: Matrix,
}

impl WeightForm {
    pub fn pair(&self, x: &[Q], y: &[Q]) -> Q {
        let mut s = Q::zero();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if !yj.is_zero() {
                    s += xi * &self.gram[i][j] * yj;
                }
            }
        }
        s
    }

    /// `Σ λ_i Λ_i` in the simple-root basis.
    pub fn weight_coords(&self, labels: &[i64]) -> Vec<Q> {
        let r = labels.len();
        (0..r)
            .map(|j| labels.iter().enumerate().map(|(i, &l)| q(l) * &self.fundamental[i][j]).sum())
            .collect()
    }
}

pub fn root_q(root: &[i64]) -> Vec<Q> {
    root.iter().map(|&x| q(x)).collect()
}

pub fn weight_form(cartan: &CartanData, kappa: &[Q]) -> Result<WeightForm> {
    check_kappa(cartan, kappa)?;
    let r = cartan.rank();
    let gram: Matrix =
        (0..r).map(|i| (0..r).map(|j| q(cartan.matrix[i][j]) / &kappa[i]).collect()).collect();
    // (Λ_i, α_j) κ_j = δ_ij, so Λ = diag(1/κ) G⁻¹.
    let ginv = inverse(&gram).ok_or_else(|| AlgebraError::Config("degenerate weight form".into()))?;
    let fundamental = (0..r).map(|i| (0..r).map(|j| &ginv[i][j] / &kappa[i]).collect()).collect();
    Ok(WeightForm { gram, fundamental })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PseudoMinusculeVerdict {
    pub is_pseudo_minuscule: bool,
    /// `(λ, θ)`.
    pub lambda_theta: Q,
    pub hat_dominant_integral: bool,
    /// 1-based index `k` with `λ^∧ = Λ_k`, when pseudo-minuscule.
    pub index: Option<usize>,
}

pub fn is_pseudo_minuscule(cartan: &CartanData, weight: &WeightData) -> Result<PseudoMinusculeVerdict> {
    let form = weight_form(cartan, &weight.kappa)?;
    let lam = form.weight_coords(&weight.labels);
    let lambda_theta = form.pair(&lam, &root_q(&cartan.highest_root));
    let hat = weight.hat();
    let hat_dominant_integral = hat.iter().all(|h| h.is_integer() && !h.is_negative());
    let mut index = None;
    if hat_dominant_integral {
        let nonzero: Vec<usize> = (0..hat.len()).filter(|&k| !hat[k].is_zero()).collect();
        if nonzero.len() == 1 && hat[nonzero[0]].is_one() && cartan.highest_root[nonzero[0]] == 1 {
            index = Some(nonzero[0] + 1);
        }
    }
    Ok(PseudoMinusculeVerdict {
        is_pseudo_minuscule: index.is_some(),
        lambda_theta,
        hat_dominant_integral,
        index,
    })
}

/// All 1-based `k` such that `Λ_k` is pseudo-minuscule. Each candidate is
/// tested with `λ^∧ = λ = Λ_k` under the normalisation adapted to node `k`.
pub fn classify(cartan: &CartanData) -> Result<Vec<usize>> {
    let r = cartan.rank();
    let mut out = Vec::new();
    for k in 0..r {
        let kappa = kappa_adapted(cartan, k);
        let mut labels = vec![0; r];
        labels[k] = 1;
        let w = WeightData::new(cartan, labels, kappa)?;
        if is_pseudo_minuscule(cartan, &w)?.is_pseudo_minuscule {
            out.push(k + 1);
        }
    }
    Ok(out)
}

/// Dimension of the irreducible module with highest weight `Σ λ_k Λ_k`,
/// by the Weyl dimension formula.
pub fn weyl_dimension(cartan: &CartanData, labels: &[i64]) -> Q {
    let d = &cartan.symmetriser;
    let mut out = Q::one();
    for root in &cartan.positive_roots {
        let mut num = Q::zero();
        let mut den = Q::zero();
        for (j, &c) in root.iter().enumerate() {
            num += q(c * (labels[j] + 1)) * &d[j];
            den += q(c) * &d[j];
        }
        out *= num / den;
    }
    out
}

/// The extended matrix `B` of order `r+1` and its derived quantities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtendedMatrix {
    pub b: Matrix,
    pub det: Q,
    pub det_a: Q,
    pub inverse: Option<Matrix>,
    /// `⟨e_K | f_K⟩`: 1 at index 0, then `κ(e_k, f_k)`.
    pub ef_norms: Vec<Q>,
}

impl ExtendedMatrix {
    pub fn order(&self) -> usize {
        self.b.len()
    }

    pub fn is_singular(&self) -> bool {
        self.inverse.is_none()
    }

    pub fn inv(&self) -> Result<&Matrix> {
        self.inverse.as_ref().ok_or(AlgebraError::SingularB)
    }

    /// Coefficients `(B⁻¹)_{0I}` of `L = Σ_I (B⁻¹)_{0I} h_I`.
    pub fn l_coefficients(&self) -> Result<Vec<Q>> {
        Ok(self.inv()?[0].clone())
    }

    /// `⟨h_I | h_J⟩ = B_IJ ⟨e_J | f_J⟩`.
    pub fn h_form(&self, i: usize, j: usize) -> Q {
        &self.b[i][j] * &self.ef_norms[j]
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.order();
        (0..n).all(|i| (0..n).all(|j| self.b[i][j] == self.b[j][i]))
    }
}

pub fn build_b(cartan: &CartanData, weight: &WeightData) -> ExtendedMatrix {
    let r = cartan.rank();
    let hat = weight.hat();
    let mut b = vec![vec![Q::zero(); r + 1]; r + 1];
    for i in 0..r {
        b[i + 1][0] = q(-weight.labels[i]);
        b[0][i + 1] = -hat[i].clone();
        for j in 0..r {
            b[i + 1][j + 1] = q(cartan.matrix[i][j]);
        }
    }
    let det = determinant(&b);
    let inverse = if det.is_zero() { None } else { inverse(&b) };
    let mut ef_norms = vec![Q::one()];
    ef_norms.extend(weight.kappa.iter().cloned());
    ExtendedMatrix { b, det, det_a: cartan.det(), inverse, ef_norms }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub lhs: String,
    pub rhs: String,
    pub holds: bool,
}

impl IdentityCheck {
    pub fn new(name: &str, lhs: &Q, rhs: &Q) -> Self {
        IdentityCheck { name: name.into(), lhs: lhs.to_string(), rhs: rhs.to_string(), holds: lhs == rhs }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LIdentityReport {
    /// `⟨L|L⟩` evaluated through the Cartan part of the invariant form.
    pub l_norm: Q,
    pub binv00: Q,
    pub lambda_norm: Q,
    pub checks: Vec<IdentityCheck>,
}

impl LIdentityReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }
}

pub fn check_l_identities(
    cartan: &CartanData,
    weight: &WeightData,
    ext: &ExtendedMatrix,
    form: &WeightForm,
) -> Result<LIdentityReport> {
    let inv = ext.inv()?;
    let n = ext.order();
    let binv00 = inv[0][0].clone();
    let mut l_norm = Q::zero();
    for i in 0..n {
        for j in 0..n {
            l_norm += &inv[0][i] * &inv[0][j] * ext.h_form(i, j);
        }
    }
    let lam = form.weight_coords(&weight.labels);
    let lambda_norm = form.pair(&lam, &lam);
    let mut checks = vec![
        IdentityCheck::new("<L|L> = (B^-1)_00", &l_norm, &binv00),
        IdentityCheck::new("(B^-1)_00 = det A / det B", &binv00, &(&ext.det_a / &ext.det)),
        IdentityCheck::new("(B^-1)_00 = -1/(lambda,lambda)", &binv00, &(-Q::one() / &lambda_norm)),
    ];
    // λ reconstructed as Σ_j (B⁻¹)_{j0}/(B⁻¹)_{00} α_j must have Dynkin labels λ_i.
    let r = cartan.rank();
    let mu: Vec<Q> = (0..r).map(|j| &inv[j + 1][0] / &binv00).collect();
    for i in 0..r {
        let label: Q = (0..r).map(|j| q(cartan.matrix[i][j]) * &mu[j]).sum();
        checks.push(IdentityCheck::new(
            &format!("Dynkin label {} of sum_j (B^-1)_j0/(B^-1)_00 alpha_j", i + 1),
            &label,
            &q(weight.labels[i]),
        ));
    }
    Ok(LIdentityReport { l_norm, binv00, lambda_norm, checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qf;

    fn sym(c: &CartanData) -> Vec<Q> {
        kappa_symmetric(c).unwrap()
    }

    #[test]
    fn a1_basics() {
        let c = build_cartan(CartanType::A, 1).unwrap();
        assert_eq!(c.matrix, vec![vec![2]]);
        assert_eq!(c.roots().len(), 2);
        assert_eq!(c.highest_root, vec![1]);
    }

    #[test]
    fn a2_and_g2_roots() {
        let a2 = build_cartan(CartanType::A, 2).unwrap();
        assert_eq!(a2.roots().len(), 6);
        assert_eq!(a2.highest_root, vec![1, 1]);
        let g2 = build_cartan(CartanType::G, 2).unwrap();
        assert_eq!(g2.roots().len(), 12);
        assert_eq!(g2.highest_root, vec![3, 2]);
    }

    #[test]
    fn classical_root_counts_and_highest_roots() {
        for r in 1..=8 {
            let c = build_cartan(CartanType::A, r).unwrap();
            assert_eq!(c.roots().len(), r * (r + 1));
        }
        for r in 2..=6 {
            let b = build_cartan(CartanType::B, r).unwrap();
            assert_eq!(b.roots().len(), 2 * r * r);
            let mut theta = vec![2; r];
            theta[0] = 1;
            assert_eq!(b.highest_root, theta);
            let c = build_cartan(CartanType::C, r).unwrap();
            let mut theta = vec![2; r];
            theta[r - 1] = 1;
            assert_eq!(c.highest_root, theta);
        }
        assert_eq!(build_cartan(CartanType::E, 8).unwrap().roots().len(), 240);
        assert_eq!(build_cartan(CartanType::F, 4).unwrap().roots().len(), 48);
        assert_eq!(build_cartan(CartanType::E, 6).unwrap().highest_root, vec![1, 2, 2, 3, 2, 1]);
    }

    #[test]
    fn roots_closed_under_reflections() {
        for (t, r) in [(CartanType::B, 3), (CartanType::G, 2), (CartanType::D, 5), (CartanType::F, 4)] {
            let c = build_cartan(t, r).unwrap();
            for root in c.roots() {
                for i in 0..r {
                    assert!(c.is_root(&c.reflect(i, &root)));
                }
            }
        }
    }

    #[test]
    fn invalid_types_rejected() {
        assert!(build_cartan(CartanType::D, 3).is_err());
        assert!(build_cartan(CartanType::E, 9).is_err());
        assert!(build_cartan(CartanType::B, 1).is_err());
        assert!(CartanType::parse("H").is_err());
    }

    #[test]
    fn weight_form_examples() {
        let a1 = build_cartan(CartanType::A, 1).unwrap();
        let f = weight_form(&a1, &sym(&a1)).unwrap();
        assert_eq!(f.gram[0][0], q(2));
        assert_eq!(f.fundamental[0][0], qf(1, 2));
        let l1 = f.weight_coords(&[1]);
        assert_eq!(f.pair(&l1, &l1), qf(1, 2));

        let a2 = build_cartan(CartanType::A, 2).unwrap();
        let f = weight_form(&a2, &sym(&a2)).unwrap();
        assert_eq!(f.gram[0][1], q(-1));
        let l1 = f.weight_coords(&[1, 0]);
        assert_eq!(f.pair(&l1, &l1), qf(2, 3));

        let t = qf(3, 7);
        let scaled: Vec<Q> = sym(&a2).iter().map(|k| k * &t).collect();
        let g = weight_form(&a2, &scaled).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(&g.gram[i][j] * &t, f.gram[i][j]);
            }
        }
    }

    #[test]
    fn weyl_dimensions() {
        let cases = [
            (CartanType::A, 1, vec![1], 2),
            (CartanType::B, 2, vec![1, 0], 5),
            (CartanType::G, 2, vec![1, 0], 7),
            (CartanType::E, 6, vec![1, 0, 0, 0, 0, 0], 27),
            (CartanType::E, 8, vec![1, 0, 0, 0, 0, 0, 0, 0], 3875),
            (CartanType::E, 8, vec![0, 0, 0, 0, 0, 0, 0, 1], 248),
        ];
        for (ty, r, l, dim) in cases {
            let c = build_cartan(ty, r).unwrap();
            assert_eq!(weyl_dimension(&c, &l), q(dim), "{ty:?}{r}");
        }
    }

    #[test]
    fn inconsistent_kappa_rejected() {
        let b2 = build_cartan(CartanType::B, 2).unwrap();
        assert!(matches!(kappa_symmetric(&b2), Err(AlgebraError::InvalidNormalisation(_))));
        assert!(weight_form(&b2, &kappa_adapted(&b2, 0)).is_ok());
    }

    #[test]
    fn pseudo_minuscule_examples() {
        let a2 = build_cartan(CartanType::A, 2).unwrap();
        let w = WeightData::new(&a2, vec![1, 0], sym(&a2)).unwrap();
        let v = is_pseudo_minuscule(&a2, &w).unwrap();
        assert!(v.is_pseudo_minuscule);
        assert_eq!(v.index, Some(1));

        let a1 = build_cartan(CartanType::A, 1).unwrap();
        let w = WeightData::new(&a1, vec![2], sym(&a1)).unwrap();
        let v = is_pseudo_minuscule(&a1, &w).unwrap();
        assert!(!v.is_pseudo_minuscule);
        assert_eq!(v.lambda_theta, q(2));

        let e8 = build_cartan(CartanType::E, 8).unwrap();
        assert!(classify(&e8).unwrap().is_empty());
    }

    #[test]
    fn zero_weight_rejected() {
        let a1 = build_cartan(CartanType::A, 1).unwrap();
        assert!(WeightData::new(&a1, vec![0], sym(&a1)).is_err());
    }

    #[test]
    fn b_matrix_examples() {
        let a1 = build_cartan(CartanType::A, 1).unwrap();
        let w = WeightData::new(&a1, vec![1], sym(&a1)).unwrap();
        let ext = build_b(&a1, &w);
        assert_eq!(ext.b, vec![vec![q(0), q(-1)], vec![q(-1), q(2)]]);
        assert_eq!(ext.det, q(-1));
        assert_eq!(ext.inv().unwrap()[0][0], q(-2));

        let a2 = build_cartan(CartanType::A, 2).unwrap();
        let w = WeightData::new(&a2, vec![1, 0], sym(&a2)).unwrap();
        let ext = build_b(&a2, &w);
        assert_eq!(ext.det, q(-2));
        assert_eq!(ext.inv().unwrap()[0][0], qf(-3, 2));
    }

    #[test]
    fn l_identities_examples() {
        for (t, r, labels, expect_l, expect_norm) in [
            (CartanType::A, 1, vec![1], q(-2), qf(1, 2)),
            (CartanType::A, 2, vec![1, 0], qf(-3, 2), qf(2, 3)),
        ] {
            let c = build_cartan(t, r).unwrap();
            let w = WeightData::new(&c, labels, sym(&c)).unwrap();
            let ext = build_b(&c, &w);
            let form = weight_form(&c, &w.kappa).unwrap();
            let rep = check_l_identities(&c, &w, &ext, &form).unwrap();
            assert!(rep.all_hold(), "{rep:?}");
            assert_eq!(rep.l_norm, expect_l);
            assert_eq!(rep.lambda_norm, expect_norm);
        }
    }

    #[test]
    fn singular_b_is_reported() {
        // det B = -det A (λ,λ) is never zero for finite types, so the
        // singular state is exercised directly.
        let a1 = build_cartan(CartanType::A, 1).unwrap();
        let w = WeightData::new(&a1, vec![1], vec![q(1)]).unwrap();
        let ext = build_b(&a1, &w);
        assert_eq!(ext.det, -a1.det() * qf(1, 2));
        let singular = ExtendedMatrix { inverse: None, ..ext };
        assert_eq!(singular.inv().unwrap_err(), AlgebraError::SingularB);
        assert!(singular.l_coefficients().is_err());
    }
}
