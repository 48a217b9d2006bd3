//! The focally associative local superalgebra `𝓑^ℓ` built over the
//! enveloping algebra `U(𝓑₀)`, its commutator algebra `𝓑^⌐`, and the
//! identity harnesses that exercise them.
//!
//! Degree-zero elements are PBW polynomials. Degree `±1` elements are
//! sums of `x ⊗ u` with `x` in `𝓑±₁` and `u` a PBW monomial.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::RwLock;

use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{AlgebraError, Result};
use crate::rational::{q, sign_q, Lin, Q};
use crate::superlocal::{LieElement, LieTable, LocalLie};

/// Non-decreasing sequence of degree-zero basis indices. Ordered by length
/// first so that echelon pivots respect the filtration.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Mono(pub Vec<u16>);

impl Mono {
    pub fn one() -> Mono {
        Mono(Vec::new())
    }

    pub fn letter(k: usize) -> Mono {
        Mono(vec![k as u16])
    }

    pub fn from_unsorted(mut v: Vec<u16>) -> Mono {
        v.sort_unstable();
        Mono(v)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

pub type EnvElement = Lin<Mono>;

/// `x ⊗ mono`, with the monomial compared first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TKey {
    pub mono: Mono,
    pub x: usize,
}

pub type TensorElement = Lin<TKey>;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BKey {
    Minus(TKey),
    Zero(Mono),
    Plus(TKey),
}

impl BKey {
    pub fn degree(&self) -> i8 {
        match self {
            BKey::Minus(_) => -1,
            BKey::Zero(_) => 0,
            BKey::Plus(_) => 1,
        }
    }

    pub fn filtration(&self) -> usize {
        match self {
            BKey::Minus(t) | BKey::Plus(t) => t.mono.degree(),
            BKey::Zero(m) => m.degree(),
        }
    }

    pub fn tensor(deg: i8, x: usize, mono: Mono) -> BKey {
        let t = TKey { mono, x };
        if deg > 0 {
            BKey::Plus(t)
        } else {
            BKey::Minus(t)
        }
    }
}

/// Element of `𝓑^ℓ`; each key carries its own degree.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LocalElement(pub Lin<BKey>);

impl LocalElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(k: BKey) -> Self {
        LocalElement(Lin::basis(k))
    }

    pub fn scalar(c: Q) -> Self {
        LocalElement(Lin::term(BKey::Zero(Mono::one()), c))
    }

    pub fn env(u: &EnvElement) -> Self {
        LocalElement(u.map_keys(|m| BKey::Zero(m.clone())))
    }

    pub fn tensor(deg: i8, t: &TensorElement) -> Self {
        LocalElement(t.map_keys(|k| BKey::tensor(deg, k.x, k.mono.clone())))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn component(&self, deg: i8) -> LocalElement {
        LocalElement(Lin::from_terms(
            self.0.iter().filter(|(k, _)| k.degree() == deg).map(|(k, c)| (k.clone(), c.clone())),
        ))
    }

    pub fn env_part(&self) -> EnvElement {
        Lin::from_terms(self.0.iter().filter_map(|(k, c)| match k {
            BKey::Zero(m) => Some((m.clone(), c.clone())),
            _ => None,
        }))
    }

    pub fn tensor_part(&self, deg: i8) -> TensorElement {
        Lin::from_terms(self.0.iter().filter_map(|(k, c)| match k {
            BKey::Plus(t) if deg > 0 => Some((t.clone(), c.clone())),
            BKey::Minus(t) if deg < 0 => Some((t.clone(), c.clone())),
            _ => None,
        }))
    }

    /// The single degree present, if homogeneous and nonzero.
    pub fn degree(&self) -> Option<i8> {
        let mut it = self.0.keys().map(|k| k.degree());
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn filtration(&self) -> usize {
        self.0.keys().map(|k| k.filtration()).max().unwrap_or(0)
    }

    pub fn add(&self, o: &LocalElement) -> LocalElement {
        let mut v = self.0.clone();
        v.add(&o.0);
        LocalElement(v)
    }

    pub fn sub(&self, o: &LocalElement) -> LocalElement {
        let mut v = self.0.clone();
        v.sub(&o.0);
        LocalElement(v)
    }

    pub fn scaled(&self, c: &Q) -> LocalElement {
        LocalElement(self.0.scaled(c))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProductConstants {
    #[serde(serialize_with = "ser_q")]
    pub a: Q,
    #[serde(serialize_with = "ser_q")]
    pub b: Q,
    #[serde(serialize_with = "ser_q")]
    pub c: Q,
}

fn ser_q<S: serde::Serializer>(x: &Q, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

impl Default for ProductConstants {
    fn default() -> Self {
        ProductConstants { a: Q::one(), b: Q::one(), c: Q::one() }
    }
}

impl ProductConstants {
    pub fn new(a: Q, b: Q, c: Q) -> Self {
        ProductConstants { a, b, c }
    }

    pub fn is_default(&self) -> bool {
        *self == Self::default()
    }
}

/// PBW normal-form arithmetic in the enveloping algebra of a Lie algebra
/// with basis `0..dim` (purely even).
pub struct Pbw {
    dim: usize,
    br: Vec<Lin<u16>>,
    cache: RwLock<HashMap<(u16, Mono), EnvElement>>,
}

impl Pbw {
    pub fn new(dim: usize, bracket: impl Fn(usize, usize) -> LieElement) -> Pbw {
        let mut br = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                br.push(bracket(i, j).map_keys(|k| *k as u16));
            }
        }
        Pbw { dim, br, cache: RwLock::new(HashMap::new()) }
    }

    /// Enveloping algebra of `𝓑₀`.
    pub fn from_local(lie: &LocalLie) -> Pbw {
        Pbw::new(lie.dim0(), |i, j| lie.table.get(i, j).cloned().unwrap_or_default())
    }

    pub fn from_lie_table(t: &LieTable) -> Pbw {
        Pbw::new(t.basis.len(), |i, j| t.table.get(i, j).cloned().unwrap_or_default())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `z · m` in normal form.
    pub fn left_mul(&self, z: u16, m: &Mono) -> EnvElement {
        if m.0.first().is_none_or(|&m0| z <= m0) {
            let mut v = Vec::with_capacity(m.0.len() + 1);
            v.push(z);
            v.extend_from_slice(&m.0);
            return Lin::basis(Mono(v));
        }
        let key = (z, m.clone());
        if let Some(v) = self.cache.read().unwrap().get(&key) {
            return v.clone();
        }
        let m0 = m.0[0];
        let rest = Mono(m.0[1..].to_vec());
        let mut out = Lin::zero();
        // z m0 rest = m0 (z rest) + [z, m0] rest
        for (n, c) in self.left_mul(z, &rest).iter() {
            out.add_scaled(&self.left_mul(m0, n), c);
        }
        for (k, c) in self.br[z as usize * self.dim + m0 as usize].iter() {
            out.add_scaled(&self.left_mul(*k, &rest), c);
        }
        self.cache.write().unwrap().insert(key, out.clone());
        out
    }

    /// Product of the letters of `word` in the given order.
    pub fn word(&self, word: &[u16]) -> EnvElement {
        let mut acc = Lin::basis(Mono::one());
        for &z in word.iter().rev() {
            acc = self.left_apply(z, &acc);
        }
        acc
    }

    fn left_apply(&self, z: u16, u: &EnvElement) -> EnvElement {
        let mut out = Lin::zero();
        for (n, c) in u.iter() {
            out.add_scaled(&self.left_mul(z, n), c);
        }
        out
    }

    pub fn mono_mul(&self, a: &Mono, b: &Mono) -> EnvElement {
        let mut acc = Lin::basis(b.clone());
        for &z in a.0.iter().rev() {
            acc = self.left_apply(z, &acc);
        }
        acc
    }

    pub fn product(&self, a: &EnvElement, b: &EnvElement) -> EnvElement {
        let mut out = Lin::zero();
        for (m1, c1) in a.iter() {
            for (m2, c2) in b.iter() {
                out.add_scaled(&self.mono_mul(m1, m2), &(c1 * c2));
            }
        }
        out
    }
}

/// All monomials of length `len` in letters `0..dim`, in increasing order.
pub fn monomials(dim: usize, len: usize) -> Vec<Mono> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(len);
    fn rec(dim: usize, len: usize, start: usize, cur: &mut Vec<u16>, out: &mut Vec<Mono>) {
        if cur.len() == len {
            out.push(Mono(cur.clone()));
            return;
        }
        for k in start..dim {
            cur.push(k as u16);
            rec(dim, len, k, cur, out);
            cur.pop();
        }
    }
    rec(dim, len, 0, &mut cur, &mut out);
    out
}

type PeelKey = (usize, Vec<u16>, usize, Mono);

/// Product engine for `𝓑^ℓ`.
pub struct FocalAlgebra {
    pub lie: LocalLie,
    pub consts: ProductConstants,
    pub pbw: Pbw,
    l_env: EnvElement,
    peel_cache: RwLock<HashMap<PeelKey, EnvElement>>,
    prod_cache: RwLock<HashMap<(BKey, BKey), Lin<BKey>>>,
}

impl FocalAlgebra {
    pub fn new(lie: LocalLie, consts: ProductConstants) -> FocalAlgebra {
        let pbw = Pbw::from_local(&lie);
        let l_env = lie.l.map_keys(|k| Mono::letter(*k));
        FocalAlgebra {
            lie,
            consts,
            pbw,
            l_env,
            peel_cache: RwLock::new(HashMap::new()),
            prod_cache: RwLock::new(HashMap::new()),
        }
    }

    pub fn dim0(&self) -> usize {
        self.lie.dim0()
    }

    /// `L` as a degree-one PBW polynomial.
    pub fn l_env(&self) -> &EnvElement {
        &self.l_env
    }

    /// Image of a `𝓑^𝕃` element under `𝓑^𝕃 ⊆ 𝓑^ℓ`.
    pub fn embed(&self, x: &LieElement) -> LocalElement {
        LocalElement(x.map_keys(|&k| match self.lie.basis.degree(k) {
            0 => BKey::Zero(Mono::letter(k)),
            d => BKey::tensor(d, k, Mono::one()),
        }))
    }

    pub fn embed_basis(&self, k: usize) -> LocalElement {
        self.embed(&Lin::basis(k))
    }

    /// `x·y ∈ 𝕂 ⊕ 𝓑₀` for basis elements at opposite nonzero degrees.
    pub fn cross_base(&self, x: usize, y: usize) -> Result<EnvElement> {
        let (dx, dy) = (self.lie.basis.degree(x), self.lie.basis.degree(y));
        if dx == 0 || dx + dy != 0 {
            return Err(AlgebraError::Domain(format!(
                "cross product needs opposite nonzero degrees, got {dx} and {dy}"
            )));
        }
        let k = &self.consts;
        let br = self.lie.bracket_basis(x, y)?;
        let p = self.lie.form_basis(x, y);
        let a = if dx < 0 { -k.a.clone() } else { k.a.clone() };
        let mut out: EnvElement = br.map_keys(|i| Mono::letter(*i)).scaled(&a);
        out.add_scaled(&self.l_env, &(&k.b * &p));
        if dx > 0 {
            out.add_term(Mono::one(), &(&k.c * &p));
        }
        Ok(out)
    }

    /// `z·(y⊗v) = ⟦z,y⟧⊗v + y⊗(zv)` for a degree-zero basis index `z`.
    pub fn left_act(&self, z: usize, t: &TensorElement) -> TensorElement {
        let mut out = Lin::zero();
        for (key, c) in t.iter() {
            let br = self.lie.table.get(z, key.x).expect("degree 0 acts on degree ±1");
            for (y, c2) in br.iter() {
                out.add_term(TKey { mono: key.mono.clone(), x: *y }, &(c * c2));
            }
            for (n, c2) in self.pbw.left_mul(z as u16, &key.mono).iter() {
                out.add_term(TKey { mono: n.clone(), x: key.x }, &(c * c2));
            }
        }
        out
    }

    /// Left action of a `𝓑₀` element given as a combination of basis indices.
    pub fn left_act_lie(&self, z: &LieElement, t: &TensorElement) -> TensorElement {
        let mut out = Lin::zero();
        for (k, c) in z.iter() {
            out.add_scaled(&self.left_act(*k, t), c);
        }
        out
    }

    /// `m·t` with the leftmost letter acting last.
    pub fn mono_act(&self, m: &Mono, t: &TensorElement) -> TensorElement {
        let mut acc = t.clone();
        for &z in m.0.iter().rev() {
            acc = self.left_act(z as usize, &acc);
        }
        acc
    }

    /// `(x⊗word)(y⊗v)` for opposite-degree basis indices `x`, `y`, peeling
    /// the last letter of the word until the base case `x(y⊗v) = (xy)v`.
    pub fn peel(&self, x: usize, word: &[u16], y: usize, v: &Mono) -> Result<EnvElement> {
        if word.is_empty() {
            let xy = self.cross_base(x, y)?;
            return Ok(self.pbw.product(&xy, &Lin::basis(v.clone())));
        }
        let key = (x, word.to_vec(), y, v.clone());
        if let Some(r) = self.peel_cache.read().unwrap().get(&key) {
            return Ok(r.clone());
        }
        let (&z, rest) = word.split_last().unwrap();
        let mut out = Lin::zero();
        for (y2, c) in self.lie.bracket_basis(z as usize, y)?.iter() {
            out.add_scaled(&self.peel(x, rest, *y2, v)?, c);
        }
        for (v2, c) in self.pbw.left_mul(z, v).iter() {
            out.add_scaled(&self.peel(x, rest, y, v2)?, c);
        }
        self.peel_cache.write().unwrap().insert(key, out.clone());
        Ok(out)
    }

    fn product_basis(&self, a: &BKey, b: &BKey) -> Result<Lin<BKey>> {
        let key = (a.clone(), b.clone());
        if let Some(r) = self.prod_cache.read().unwrap().get(&key) {
            return Ok(r.clone());
        }
        let out: Lin<BKey> = match (a, b) {
            (BKey::Zero(m1), BKey::Zero(m2)) => self.pbw.mono_mul(m1, m2).map_keys(|m| BKey::Zero(m.clone())),
            (BKey::Zero(m), t @ (BKey::Plus(k) | BKey::Minus(k))) => {
                let d = t.degree();
                self.mono_act(m, &Lin::basis(k.clone())).map_keys(|k| BKey::tensor(d, k.x, k.mono.clone()))
            }
            (t @ (BKey::Plus(k) | BKey::Minus(k)), BKey::Zero(w)) => {
                let d = t.degree();
                self.pbw.mono_mul(&k.mono, w).map_keys(|m| BKey::tensor(d, k.x, m.clone()))
            }
            (BKey::Minus(k1), BKey::Plus(k2)) | (BKey::Plus(k1), BKey::Minus(k2)) => {
                self.peel(k1.x, &k1.mono.0, k2.x, &k2.mono)?.map_keys(|m| BKey::Zero(m.clone()))
            }
            _ => {
                return Err(AlgebraError::Domain(format!(
                    "product of two elements of degree {} is undefined",
                    a.degree()
                )))
            }
        };
        self.prod_cache.write().unwrap().insert(key, out.clone());
        Ok(out)
    }

    /// Bilinear product; errors on a nonzero pairing with degree sum ±2.
    pub fn product(&self, x: &LocalElement, y: &LocalElement) -> Result<LocalElement> {
        let mut out = Lin::zero();
        for (a, c1) in x.0.iter() {
            for (b, c2) in y.0.iter() {
                out.add_scaled(&self.product_basis(a, b)?, &(c1 * c2));
            }
        }
        Ok(LocalElement(out))
    }

    /// Graded commutator `XY − (−1)^{|X||Y|} YX` with parity = degree mod 2.
    pub fn commutator(&self, x: &LocalElement, y: &LocalElement) -> Result<LocalElement> {
        let mut out = LocalElement::zero();
        for dx in [-1i8, 0, 1] {
            let xc = x.component(dx);
            if xc.is_zero() {
                continue;
            }
            for dy in [-1i8, 0, 1] {
                let yc = y.component(dy);
                if yc.is_zero() {
                    continue;
                }
                let s = sign_q(dx != 0 && dy != 0);
                let xy = self.product(&xc, &yc)?;
                let yx = self.product(&yc, &xc)?;
                out = out.add(&xy).sub(&yx.scaled(&s));
            }
        }
        Ok(out)
    }

    /// Rewrites `Σ x⊗u` as `Σ u'·x'` (returned as pairs `(u', x')`).
    pub fn decompose(&self, t: &TensorElement) -> TensorElement {
        let mut out = Lin::zero();
        for (k, c) in t.iter() {
            out.add_scaled(&self.decompose_key(k.x, &k.mono), c);
        }
        out
    }

    fn decompose_key(&self, x: usize, m: &Mono) -> TensorElement {
        let Some((&z, rest)) = m.0.split_first() else {
            return Lin::basis(TKey { mono: Mono::one(), x });
        };
        let rest = Mono(rest.to_vec());
        // x⊗(z·rest) = z·(x⊗rest) − ⟦z,x⟧⊗rest
        let mut out = Lin::zero();
        for (k, c) in self.decompose_key(x, &rest).iter() {
            for (n, c2) in self.pbw.left_mul(z, &k.mono).iter() {
                out.add_term(TKey { mono: n.clone(), x: k.x }, &(c * c2));
            }
        }
        let br = self.lie.table.get(z as usize, x).expect("degree 0 acts on degree ±1");
        for (y, c) in br.iter() {
            out.add_scaled(&self.decompose_key(*y, &rest), &-c.clone());
        }
        out
    }

    /// Inverse of [`FocalAlgebra::decompose`].
    pub fn recompose(&self, pairs: &TensorElement) -> TensorElement {
        let mut out = Lin::zero();
        for (k, c) in pairs.iter() {
            out.add_scaled(&self.mono_act(&k.mono, &Lin::basis(TKey { mono: Mono::one(), x: k.x })), c);
        }
        out
    }

    /// Basis keys of the given degree and exact filtration.
    pub fn keys(&self, deg: i8, filtration: usize) -> Vec<BKey> {
        let monos = monomials(self.dim0(), filtration);
        if deg == 0 {
            return monos.into_iter().map(BKey::Zero).collect();
        }
        let range = if deg > 0 { self.lie.basis.plus_range() } else { self.lie.basis.minus_range() };
        let mut out = Vec::new();
        for m in monos {
            for x in range.clone() {
                out.push(BKey::tensor(deg, x, m.clone()));
            }
        }
        out
    }

    pub fn render(&self, x: &LocalElement) -> String {
        if x.is_zero() {
            return "0".into();
        }
        let name = |k: u16| self.lie.basis.name(k as usize).to_string();
        let mono = |m: &Mono| m.0.iter().map(|&k| name(k)).collect::<Vec<_>>().join("*");
        let parts: Vec<String> = x
            .0
            .iter()
            .map(|(k, c)| {
                let body = match k {
                    BKey::Zero(m) if m.is_one() => "1".to_string(),
                    BKey::Zero(m) => mono(m),
                    BKey::Plus(t) | BKey::Minus(t) if t.mono.is_one() => name(t.x as u16),
                    BKey::Plus(t) | BKey::Minus(t) => format!("{}⊗{}", name(t.x as u16), mono(&t.mono)),
                };
                format!("({c})*{body}")
            })
            .collect();
        parts.join(" + ")
    }
}

/// Seeded random sampling of sparse elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Sampler {
    pub samples: usize,
    pub seed: u64,
}

impl Sampler {
    pub fn new(samples: usize, seed: u64) -> Self {
        Sampler { samples, seed }
    }
}

/// Random element of degree `deg` with 1–3 terms of filtration ≤ `max_f`.
pub fn random_element(alg: &FocalAlgebra, rng: &mut ChaCha8Rng, deg: i8, max_f: usize) -> LocalElement {
    let n0 = alg.dim0();
    let terms = rng.gen_range(1..=3);
    let mut out = Lin::zero();
    for _ in 0..terms {
        let len = rng.gen_range(0..=max_f);
        let mono = Mono::from_unsorted((0..len).map(|_| rng.gen_range(0..n0) as u16).collect());
        let key = if deg == 0 {
            BKey::Zero(mono)
        } else {
            let range = if deg > 0 { alg.lie.basis.plus_range() } else { alg.lie.basis.minus_range() };
            BKey::tensor(deg, rng.gen_range(range), mono)
        };
        let mut c = rng.gen_range(-3i64..=3);
        if c == 0 {
            c = 1;
        }
        out.add_term(key, &q(c));
    }
    LocalElement(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub args: Vec<String>,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityOutcome {
    pub name: String,
    pub exhaustive: usize,
    pub sampled: usize,
    pub violations: usize,
    pub first_violation: Option<Witness>,
}

impl IdentityOutcome {
    pub fn holds(&self) -> bool {
        self.violations == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub suite: String,
    pub cutoff: usize,
    pub samples: usize,
    pub seed: u64,
    pub constants: ProductConstants,
    /// Whether a violation counts as a failure of the suite.
    pub asserted: bool,
    pub outcomes: Vec<IdentityOutcome>,
    pub total_violations: usize,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.total_violations == 0
    }
}

fn deg_label(d: i8) -> &'static str {
    match d {
        -1 => "-1",
        0 => "0",
        _ => "+1",
    }
}

pub fn config_name(prefix: &str, degs: &[i8]) -> String {
    let parts: Vec<&str> = degs.iter().map(|&d| deg_label(d)).collect();
    format!("{prefix}[{}]", parts.join(","))
}

/// The thirteen degree configurations with at least one degree-zero factor.
pub const FOCAL_CONFIGS: [[i8; 3]; 13] = [
    [0, 0, 0],
    [1, 0, 0],
    [-1, 0, 0],
    [0, 0, 1],
    [0, 0, -1],
    [0, 1, 0],
    [0, -1, 0],
    [0, 1, -1],
    [0, -1, 1],
    [1, -1, 0],
    [-1, 1, 0],
    [1, 0, -1],
    [-1, 0, 1],
];

pub const EXTRA_CONFIGS: [[i8; 3]; 2] = [[1, -1, 1], [-1, 1, -1]];

pub const ANTISYMMETRY_CONFIGS: [[i8; 2]; 3] = [[0, 0], [1, -1], [-1, 1]];

pub const JACOBI_CONFIGS: [[i8; 3]; 5] = [[0, 0, 0], [0, 0, 1], [0, 0, -1], [1, -1, 0], [-1, 1, 0]];

/// Exhaustive basis tuples of the given degrees with total filtration ≤ `cutoff`.
pub fn exhaustive_tuples(alg: &FocalAlgebra, degs: &[i8], cutoff: usize) -> Vec<Vec<BKey>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(alg: &FocalAlgebra, degs: &[i8], budget: usize, cur: &mut Vec<BKey>, out: &mut Vec<Vec<BKey>>) {
        let Some((&d, rest)) = degs.split_first() else {
            out.push(cur.clone());
            return;
        };
        for f in 0..=budget {
            for k in alg.keys(d, f) {
                cur.push(k);
                rec(alg, rest, budget - f, cur, out);
                cur.pop();
            }
        }
    }
    rec(alg, degs, cutoff, &mut cur, &mut out);
    out
}

type Eval<'a> = dyn Fn(&[LocalElement]) -> Result<(LocalElement, LocalElement)> + Sync + 'a;

fn run_identity(
    alg: &FocalAlgebra,
    name: String,
    degs: &[i8],
    cutoff: usize,
    sampled: Vec<Vec<LocalElement>>,
    eval: &Eval<'_>,
) -> IdentityOutcome {
    let exhaustive: Vec<Vec<LocalElement>> = exhaustive_tuples(alg, degs, cutoff)
        .into_iter()
        .map(|t| t.into_iter().map(LocalElement::basis).collect())
        .collect();
    let n_ex = exhaustive.len();
    let n_s = sampled.len();
    let all: Vec<Vec<LocalElement>> = exhaustive.into_iter().chain(sampled).collect();
    let results: Vec<Option<Witness>> = all
        .par_iter()
        .map(|args| match eval(args) {
            Ok((l, r)) if l == r => None,
            Ok((l, r)) => Some(Witness {
                args: args.iter().map(|a| alg.render(a)).collect(),
                lhs: alg.render(&l),
                rhs: alg.render(&r),
            }),
            Err(e) => Some(Witness {
                args: args.iter().map(|a| alg.render(a)).collect(),
                lhs: format!("error: {e}"),
                rhs: String::new(),
            }),
        })
        .collect();
    let violations = results.iter().filter(|r| r.is_some()).count();
    let first_violation = results.into_iter().flatten().next();
    IdentityOutcome { name, exhaustive: n_ex, sampled: n_s, violations, first_violation }
}

/// Draws `sampler.samples` random tuples spread round-robin over `configs`.
fn draw_samples(alg: &FocalAlgebra, sampler: &Sampler, configs: &[Vec<i8>], salt: u64) -> Vec<Vec<Vec<LocalElement>>> {
    let mut rng = ChaCha8Rng::seed_from_u64(sampler.seed ^ salt);
    let mut per: Vec<Vec<Vec<LocalElement>>> = vec![Vec::new(); configs.len()];
    for s in 0..sampler.samples {
        let ci = s % configs.len();
        let tuple = configs[ci].iter().map(|&d| random_element(alg, &mut rng, d, 2)).collect();
        per[ci].push(tuple);
    }
    per
}

fn assoc_suite(
    alg: &FocalAlgebra,
    suite: &str,
    configs: &[[i8; 3]],
    cutoff: usize,
    sampler: &Sampler,
    asserted: bool,
    salt: u64,
) -> CheckReport {
    let cfgs: Vec<Vec<i8>> = configs.iter().map(|c| c.to_vec()).collect();
    let samples = draw_samples(alg, sampler, &cfgs, salt);
    let eval = |a: &[LocalElement]| -> Result<(LocalElement, LocalElement)> {
        let lhs = alg.product(&alg.product(&a[0], &a[1])?, &a[2])?;
        let rhs = alg.product(&a[0], &alg.product(&a[1], &a[2])?)?;
        Ok((lhs, rhs))
    };
    let outcomes: Vec<IdentityOutcome> = configs
        .iter()
        .zip(samples)
        .map(|(c, s)| run_identity(alg, config_name("assoc", c), c, cutoff, s, &eval))
        .collect();
    finish(alg, suite, cutoff, sampler, asserted, outcomes)
}

fn finish(
    alg: &FocalAlgebra,
    suite: &str,
    cutoff: usize,
    sampler: &Sampler,
    asserted: bool,
    outcomes: Vec<IdentityOutcome>,
) -> CheckReport {
    let total_violations = outcomes.iter().map(|o| o.violations).sum();
    CheckReport {
        suite: suite.to_string(),
        cutoff,
        samples: sampler.samples,
        seed: sampler.seed,
        constants: alg.consts.clone(),
        asserted,
        outcomes,
        total_violations,
    }
}

/// The thirteen focal associativity identities.
pub fn check_focal(alg: &FocalAlgebra, cutoff: usize, sampler: &Sampler) -> CheckReport {
    assoc_suite(alg, "focal", &FOCAL_CONFIGS, cutoff, sampler, true, 0)
}

/// The two remaining associativity identities; reported, never asserted.
pub fn check_assoc_extra(alg: &FocalAlgebra, cutoff: usize, sampler: &Sampler) -> CheckReport {
    assoc_suite(alg, "assoc-status", &EXTRA_CONFIGS, cutoff, sampler, false, 0x5a5a)
}

/// Antisymmetry and Jacobi for the commutator algebra `𝓑^⌐`.
pub fn check_local_lie(alg: &FocalAlgebra, cutoff: usize, sampler: &Sampler) -> CheckReport {
    let sign = |x: &[i8]| sign_q(x.iter().all(|&d| d != 0));
    let mut cfgs: Vec<Vec<i8>> = ANTISYMMETRY_CONFIGS.iter().map(|c| c.to_vec()).collect();
    cfgs.extend(JACOBI_CONFIGS.iter().map(|c| c.to_vec()));
    let samples = draw_samples(alg, sampler, &cfgs, 0x1e1e);
    let antisym = |a: &[LocalElement]| -> Result<(LocalElement, LocalElement)> {
        let s = sign(&[a[0].degree().unwrap_or(0), a[1].degree().unwrap_or(0)]);
        let lhs = alg.commutator(&a[0], &a[1])?;
        let rhs = alg.commutator(&a[1], &a[0])?.scaled(&-s);
        Ok((lhs, rhs))
    };
    let jacobi = |a: &[LocalElement]| -> Result<(LocalElement, LocalElement)> {
        let s = sign(&[a[0].degree().unwrap_or(0), a[1].degree().unwrap_or(0)]);
        let lhs = alg.commutator(&alg.commutator(&a[0], &a[1])?, &a[2])?;
        let t1 = alg.commutator(&a[0], &alg.commutator(&a[1], &a[2])?)?;
        let t2 = alg.commutator(&a[1], &alg.commutator(&a[0], &a[2])?)?;
        Ok((lhs, t1.sub(&t2.scaled(&s))))
    };
    let mut outcomes = Vec::new();
    for (c, s) in cfgs.iter().zip(samples) {
        let (name, eval): (String, &Eval<'_>) = if c.len() == 2 {
            (config_name("antisymmetry", c), &antisym)
        } else {
            (config_name("jacobi", c), &jacobi)
        };
        outcomes.push(run_identity(alg, name, c, cutoff, s, eval));
    }
    finish(alg, "lie", cutoff, sampler, true, outcomes)
}

/// Agreement of the commutator with the original bracket on `𝓑^𝕃`
/// basis pairs, and `[x±₁, y∓₁] = ±⟨x|y⟩`.
pub fn check_commutator(alg: &FocalAlgebra) -> CheckReport {
    let lie = &alg.lie;
    let n = lie.basis.len();
    let mut outcomes = Vec::new();
    let groups: [(&str, [i8; 2]); 5] = [
        ("agree[0,0]", [0, 0]),
        ("agree[0,±1]", [0, 2]),
        ("agree[±1,0]", [2, 0]),
        ("pairing[+1,-1]", [1, -1]),
        ("pairing[-1,+1]", [-1, 1]),
    ];
    for (name, [dx, dy]) in groups {
        let matches = |d: i8, want: i8| if want == 2 { d != 0 } else { d == want };
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|&(i, j)| matches(lie.basis.degree(i), dx) && matches(lie.basis.degree(j), dy))
            .collect();
        let results: Vec<Option<Witness>> = pairs
            .par_iter()
            .map(|&(i, j)| {
                let (x, y) = (alg.embed_basis(i), alg.embed_basis(j));
                let lhs = match alg.commutator(&x, &y) {
                    Ok(v) => v,
                    Err(e) => {
                        return Some(Witness {
                            args: vec![alg.render(&x), alg.render(&y)],
                            lhs: format!("error: {e}"),
                            rhs: String::new(),
                        })
                    }
                };
                let rhs = if dx == 1 || dx == -1 {
                    LocalElement::scalar(lie.form_basis(i, j) * q(i64::from(dx)))
                } else {
                    alg.embed(lie.table.get(i, j).unwrap())
                };
                (lhs != rhs).then(|| Witness {
                    args: vec![alg.render(&x), alg.render(&y)],
                    lhs: alg.render(&lhs),
                    rhs: alg.render(&rhs),
                })
            })
            .collect();
        let violations = results.iter().filter(|r| r.is_some()).count();
        outcomes.push(IdentityOutcome {
            name: name.to_string(),
            exhaustive: pairs.len(),
            sampled: 0,
            violations,
            first_violation: results.into_iter().flatten().next(),
        });
    }
    finish(alg, "commutator", 0, &Sampler::new(0, 0), true, outcomes)
}

/// PBW associativity on all monomial triples of total degree ≤ `max_degree`.
pub fn check_pbw_assoc(pbw: &Pbw, max_degree: usize) -> IdentityOutcome {
    let mut triples = Vec::new();
    for f1 in 0..=max_degree {
        for f2 in 0..=max_degree - f1 {
            for f3 in 0..=max_degree - f1 - f2 {
                for a in monomials(pbw.dim(), f1) {
                    for b in monomials(pbw.dim(), f2) {
                        for c in monomials(pbw.dim(), f3) {
                            triples.push((a.clone(), b.clone(), c));
                        }
                    }
                }
            }
        }
    }
    let results: Vec<Option<Witness>> = triples
        .par_iter()
        .map(|(a, b, c)| {
            let (ea, eb, ec) = (Lin::basis(a.clone()), Lin::basis(b.clone()), Lin::basis(c.clone()));
            let lhs = pbw.product(&pbw.product(&ea, &eb), &ec);
            let rhs = pbw.product(&ea, &pbw.product(&eb, &ec));
            (lhs != rhs).then(|| Witness {
                args: vec![format!("{a:?}"), format!("{b:?}"), format!("{c:?}")],
                lhs: format!("{lhs:?}"),
                rhs: format!("{rhs:?}"),
            })
        })
        .collect();
    let violations = results.iter().filter(|r| r.is_some()).count();
    IdentityOutcome {
        name: "pbw-assoc".into(),
        exhaustive: triples.len(),
        sampled: 0,
        violations,
        first_violation: results.into_iter().flatten().next(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{build_cartan, kappa_symmetric, CartanType, WeightData};
    use crate::superlocal::{build_local_part, chevalley_constants};

    fn focal(r: usize, consts: ProductConstants) -> FocalAlgebra {
        let c = build_cartan(CartanType::A, r).unwrap();
        let mut l = vec![0; r];
        l[0] = 1;
        let w = WeightData::new(&c, l, kappa_symmetric(&c).unwrap()).unwrap();
        FocalAlgebra::new(build_local_part(&c, &w).unwrap(), consts)
    }

    fn mono(v: &[usize]) -> Mono {
        Mono::from_unsorted(v.iter().map(|&k| k as u16).collect())
    }

    #[test]
    fn single_rewrite_in_sl2() {
        let g = chevalley_constants(&build_cartan(CartanType::A, 1).unwrap()).unwrap();
        let pbw = Pbw::from_lie_table(&g);
        let (h, e, f) = (0usize, g.simple_e[0], g.simple_f[0]);
        let got = pbw.word(&[f as u16, e as u16]);
        let mut want = Lin::basis(mono(&[e, f]));
        want.add_term(mono(&[h]), &q(-1));
        assert_eq!(got, want);
        let one = Lin::basis(Mono::one());
        assert_eq!(pbw.product(&one, &got), got);
    }

    #[test]
    fn monomial_counts() {
        assert_eq!(monomials(3, 2).len(), 6);
        assert_eq!(monomials(9, 3).len(), 165);
        assert_eq!(monomials(4, 0), vec![Mono::one()]);
    }

    #[test]
    fn cross_base_examples() {
        let alg = focal(1, ProductConstants::default());
        let (e0, f0) = (alg.lie.e(0), alg.lie.f(0));
        let mut want = alg.l_env().neg();
        want.add_term(Mono::letter(0), &q(-1));
        assert_eq!(alg.cross_base(f0, e0).unwrap(), want);
        let mut want = alg.l_env().clone();
        want.add_term(Mono::letter(0), &q(1));
        want.add_term(Mono::one(), &q(1));
        assert_eq!(alg.cross_base(e0, f0).unwrap(), want);
        assert!(alg.cross_base(e0, e0).is_err());
        let c = build_cartan(CartanType::A, 1).unwrap();
        let w = WeightData::new(&c, vec![2], vec![q(1)]).unwrap();
        let alg = FocalAlgebra::new(build_local_part(&c, &w).unwrap(), ProductConstants::default());
        let top = alg.lie.basis.plus_range().last().unwrap();
        assert_eq!(alg.lie.basis.elements[top].weight, vec![1, 2]);
        assert!(alg.cross_base(alg.lie.f(0), top).unwrap().is_zero());
    }

    #[test]
    fn left_action_examples() {
        let alg = focal(1, ProductConstants::default());
        let e0 = alg.lie.e(0);
        let t = Lin::basis(TKey { mono: Mono::one(), x: e0 });
        let got = alg.left_act_lie(&alg.lie.l, &t);
        let mut want = t.clone();
        for (k, c) in alg.lie.l.iter() {
            want.add_term(TKey { mono: Mono::letter(*k), x: e0 }, c);
        }
        assert_eq!(got, want);
        let got = alg.left_act(1, &t);
        let mut want = t.scaled(&alg.lie.ext.b[1][0]);
        want.add_term(TKey { mono: Mono::letter(1), x: e0 }, &q(1));
        assert_eq!(got, want);
    }

    #[test]
    fn peeling_example() {
        let alg = focal(1, ProductConstants::default());
        let (e0, f0) = (alg.lie.e(0), alg.lie.f(0));
        let lhs = alg
            .product(
                &LocalElement::basis(BKey::tensor(-1, f0, Mono::letter(1))),
                &alg.embed_basis(e0),
            )
            .unwrap();
        let f0e = alg.embed_basis(f0);
        let he0 = alg.embed(alg.lie.table.get(1, e0).unwrap());
        let e0h = LocalElement::basis(BKey::tensor(1, e0, Mono::letter(1)));
        let rhs = alg.product(&f0e, &he0).unwrap().add(&alg.product(&f0e, &e0h).unwrap());
        assert_eq!(lhs, rhs);
        let one = LocalElement::scalar(q(1));
        assert_eq!(alg.product(&lhs, &one).unwrap(), lhs);
        assert!(alg.product(&alg.embed_basis(e0), &alg.embed_basis(e0)).is_err());
    }

    #[test]
    fn commutator_examples() {
        let alg = focal(1, ProductConstants::default());
        let (e0, f0) = (alg.lie.e(0), alg.lie.f(0));
        let c = alg.commutator(&alg.embed_basis(f0), &alg.embed_basis(e0)).unwrap();
        assert_eq!(c, LocalElement::scalar(q(1)));
        let c = alg.commutator(&alg.embed_basis(1), &alg.embed_basis(e0)).unwrap();
        assert_eq!(c, alg.embed(alg.lie.table.get(1, e0).unwrap()));
    }

    #[test]
    fn peeling_independent_of_factorisation() {
        let alg = focal(2, ProductConstants::default());
        let (f0, e0) = (alg.lie.f(0), alg.lie.e(0));
        let (a, b) = (3u16, 6u16);
        // word (b, a) equals ab + [b, a] in U
        let via_word = alg.peel(f0, &[b, a], e0, &Mono::one()).unwrap();
        let u = alg.pbw.word(&[b, a]);
        let mut via_normal = Lin::zero();
        for (m, c) in u.iter() {
            via_normal.add_scaled(&alg.peel(f0, &m.0, e0, &Mono::one()).unwrap(), c);
        }
        assert_eq!(via_word, via_normal);
    }

    #[test]
    fn decomposition_round_trip() {
        let alg = focal(2, ProductConstants::default());
        for f in 0..=2 {
            for k in alg.keys(1, f).into_iter().chain(alg.keys(-1, f)) {
                let t = LocalElement::basis(k.clone());
                let d = k.degree();
                let tp = t.tensor_part(d);
                assert_eq!(alg.recompose(&alg.decompose(&tp)), tp);
            }
        }
    }

    #[test]
    fn small_focal_run() {
        let alg = focal(1, ProductConstants::default());
        let rep = check_focal(&alg, 2, &Sampler::new(26, 7));
        assert_eq!(rep.outcomes.len(), 13);
        assert!(rep.passed(), "{:?}", rep.outcomes.iter().find(|o| !o.holds()));
        let rep = check_local_lie(&alg, 2, &Sampler::new(16, 7));
        assert!(rep.passed(), "{:?}", rep.outcomes.iter().find(|o| !o.holds()));
        let rep = check_commutator(&alg);
        assert!(rep.passed(), "{:?}", rep.outcomes.iter().find(|o| !o.holds()));
    }
}
