//! Presentation of the tensor hierarchy algebra `W` (and its variant `S`)
//! and the checks that relate its local part to the subalgebra of `𝓑^⌐`
//! generated by `𝓑₁` and `𝓑₋₁𝓑₀`.

use std::fmt;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{AlgebraError, Result};
use crate::focal::{BKey, FocalAlgebra, LocalElement, Mono, ProductConstants, TKey};
use crate::linalg::EchelonSpan;
use crate::rational::{as_i64, q, Lin, Q};
use crate::rootsys::{is_pseudo_minuscule, CartanData, ExtendedMatrix, WeightData};
use crate::superlocal::{prop41_scan, LocalLie};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Generator {
    pub name: String,
    pub degree: i8,
    pub odd: bool,
}

/// Bracket expression over named generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum Expr {
    Zero,
    Gen { name: String },
    Bracket { left: Box<Expr>, right: Box<Expr> },
    /// `(ad x)^power (target)`.
    AdPow { x: Box<Expr>, power: u32, target: Box<Expr> },
    Scale {
        #[serde(serialize_with = "ser_q")]
        coeff: Q,
        expr: Box<Expr>,
    },
}

fn ser_q<S: serde::Serializer>(x: &Q, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

impl Expr {
    pub fn gen(name: impl Into<String>) -> Expr {
        Expr::Gen { name: name.into() }
    }

    pub fn br(a: Expr, b: Expr) -> Expr {
        Expr::Bracket { left: Box::new(a), right: Box::new(b) }
    }

    pub fn ad_pow(x: Expr, power: u32, target: Expr) -> Expr {
        Expr::AdPow { x: Box::new(x), power, target: Box::new(target) }
    }

    pub fn scale(c: Q, e: Expr) -> Expr {
        if c.is_zero() {
            Expr::Zero
        } else if c.is_one() {
            e
        } else {
            Expr::Scale { coeff: c, expr: Box::new(e) }
        }
    }

    pub fn mentions(&self, name: &str) -> bool {
        match self {
            Expr::Zero => false,
            Expr::Gen { name: n } => n == name,
            Expr::Bracket { left, right } => left.mentions(name) || right.mentions(name),
            Expr::AdPow { x, target, .. } => x.mentions(name) || target.mentions(name),
            Expr::Scale { expr, .. } => expr.mentions(name),
        }
    }

    fn mentions_any(&self, pred: &dyn Fn(&str) -> bool) -> bool {
        match self {
            Expr::Zero => false,
            Expr::Gen { name } => pred(name),
            Expr::Bracket { left, right } => left.mentions_any(pred) || right.mentions_any(pred),
            Expr::AdPow { x, target, .. } => x.mentions_any(pred) || target.mentions_any(pred),
            Expr::Scale { expr, .. } => expr.mentions_any(pred),
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Zero => write!(f, "0"),
            Expr::Gen { name } => write!(f, "{name}"),
            Expr::Bracket { left, right } => write!(f, "[{left},{right}]"),
            Expr::AdPow { x, power, target } => write!(f, "(ad {x})^{power}({target})"),
            Expr::Scale { coeff, expr } => write!(f, "({coeff})*{expr}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Relation {
    pub group: String,
    pub lhs: Expr,
    pub rhs: Expr,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Presentation {
    pub variant: String,
    pub generators: Vec<Generator>,
    pub relations: Vec<Relation>,
}

pub fn name_e(k: usize) -> String {
    format!("e{k}")
}

pub fn name_f(k: usize) -> String {
    format!("f{k}")
}

pub fn name_h(k: usize) -> String {
    format!("h{k}")
}

/// The odd generator replacing `f₀` for index `k ∈ {0, 2, …, r}`.
pub fn name_f0(k: usize) -> String {
    format!("f0_{k}")
}

/// Relation schemas of `W̃` with the entries of `B` substituted.
///
/// Lowercase indices run over `{2, …, r}` in the `e_i [f_j, f_{0K}]`
/// schema; `K` and the index of `f_{0K}` run over `{0, 2, …, r}`.
pub fn w_presentation(ext: &ExtendedMatrix) -> Result<Presentation> {
    ext.inv()?;
    let n = ext.order();
    let r = n - 1;
    let b = &ext.b;
    let ks: Vec<usize> = std::iter::once(0).chain(2..=r).collect();
    let mut gens = Vec::new();
    for k in 0..n {
        gens.push(Generator { name: name_e(k), degree: i8::from(k == 0), odd: k == 0 });
    }
    for k in 1..n {
        gens.push(Generator { name: name_f(k), degree: 0, odd: false });
    }
    for k in 0..n {
        gens.push(Generator { name: name_h(k), degree: 0, odd: false });
    }
    for &k in &ks {
        gens.push(Generator { name: name_f0(k), degree: -1, odd: true });
    }

    let (e, f, h, f0) = (
        |k| Expr::gen(name_e(k)),
        |k| Expr::gen(name_f(k)),
        |k| Expr::gen(name_h(k)),
        |k| Expr::gen(name_f0(k)),
    );
    let mut rels = Vec::new();
    let mut push = |group: &str, lhs: Expr, rhs: Expr| rels.push(Relation { group: group.into(), lhs, rhs });
    for i in 0..n {
        for j in 0..n {
            push("cartan-e", Expr::br(h(i), e(j)), Expr::scale(b[i][j].clone(), e(j)));
        }
    }
    for i in 0..n {
        for j in 1..n {
            push("cartan-f", Expr::br(h(i), f(j)), Expr::scale(-b[i][j].clone(), f(j)));
        }
    }
    for i in 0..n {
        for j in 1..n {
            let rhs = if i == j { h(j) } else { Expr::Zero };
            push("e-f", Expr::br(e(i), f(j)), rhs);
        }
    }
    for i in 0..n {
        for j in 0..n {
            if i == j && !b[i][i].is_zero() {
                continue;
            }
            if let Some(p) = serre_exponent(b, i, j) {
                push("serre-e", Expr::ad_pow(e(i), p, e(j)), Expr::Zero);
            }
        }
    }
    for i in 1..n {
        for j in 1..n {
            if i == j {
                continue;
            }
            if let Some(p) = serre_exponent(b, i, j) {
                push("serre-f", Expr::ad_pow(f(i), p, f(j)), Expr::Zero);
            }
        }
    }
    for &k in &ks {
        push("e0-f0K", Expr::br(e(0), f0(k)), h(k));
    }
    for i in 0..n {
        for &k in &ks {
            push("h-f0K", Expr::br(h(i), f0(k)), Expr::scale(-b[i][0].clone(), f0(k)));
        }
    }
    for i in 2..n {
        for j in 2..n {
            for &k in &ks {
                let rhs = if i == j { Expr::scale(b[k][j].clone(), f0(j)) } else { Expr::Zero };
                push("e-f-f0K", Expr::br(e(i), Expr::br(f(j), f0(k))), rhs);
            }
        }
    }
    if r >= 1 {
        for &k in &ks {
            push("e1-f0K", Expr::br(e(1), f0(k)), Expr::Zero);
        }
        for &k in &ks {
            push("f1-f1-f0K", Expr::br(f(1), Expr::br(f(1), f0(k))), Expr::Zero);
        }
    }
    Ok(Presentation { variant: "W".into(), generators: gens, relations: rels })
}

/// `1 − B_IJ` for `I ≥ 1` (or `I = J = 0`); for `I = 0` the displayed
/// exponent is used when integral.
fn serre_exponent(b: &[Vec<Q>], i: usize, j: usize) -> Option<u32> {
    let raw = if i > 0 && !b[i][i].is_zero() {
        Q::one() - q(2) * &b[i][j] / &b[i][i]
    } else {
        Q::one() - &b[i][j]
    };
    as_i64(&raw).filter(|&p| p >= 1).map(|p| p as u32)
}

/// The variant with `h₀` and `f_{00}` and their relations removed.
pub fn s_presentation(ext: &ExtendedMatrix) -> Result<Presentation> {
    let w = w_presentation(ext)?;
    let dropped = |n: &str| n == name_h(0) || n == name_f0(0);
    Ok(Presentation {
        variant: "S".into(),
        generators: w.generators.into_iter().filter(|g| !dropped(&g.name)).collect(),
        relations: w
            .relations
            .into_iter()
            .filter(|r| !r.lhs.mentions_any(&dropped) && !r.rhs.mentions_any(&dropped))
            .collect(),
    })
}

/// Degree of an expression and whether every subexpression is local.
pub fn expr_degree(pres: &Presentation, e: &Expr) -> Result<(i64, bool)> {
    Ok(match e {
        Expr::Zero => (0, true),
        Expr::Gen { name } => {
            let g = pres
                .generators
                .iter()
                .find(|g| &g.name == name)
                .ok_or_else(|| AlgebraError::Config(format!("unknown generator {name}")))?;
            (i64::from(g.degree), true)
        }
        Expr::Bracket { left, right } => {
            let (a, la) = expr_degree(pres, left)?;
            let (b, lb) = expr_degree(pres, right)?;
            (a + b, la && lb && (-1..=1).contains(&(a + b)))
        }
        Expr::AdPow { x, power, target } => {
            let (a, la) = expr_degree(pres, x)?;
            let (mut d, mut ok) = expr_degree(pres, target)?;
            ok &= la;
            for _ in 0..*power {
                d += a;
                ok &= (-1..=1).contains(&d);
            }
            (d, ok)
        }
        Expr::Scale { expr, .. } => expr_degree(pres, expr)?,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneratorImage {
    pub name: String,
    pub image: String,
    pub degree: i8,
    pub odd: bool,
    pub preserves_grading: bool,
}

/// Images of the generators of `W` in `𝓑^⌐`: `f_{0K} ↦ f₀⊗h_K`, others fixed.
pub struct GeneratorMap {
    pub images: Vec<(Generator, LocalElement)>,
}

impl GeneratorMap {
    pub fn new(alg: &FocalAlgebra, pres: &Presentation) -> Result<GeneratorMap> {
        let lie = &alg.lie;
        let mut images = Vec::new();
        for g in &pres.generators {
            let img = if let Some(k) = g.name.strip_prefix("f0_") {
                let k: usize = k.parse().map_err(|_| AlgebraError::Config(g.name.clone()))?;
                LocalElement::basis(BKey::tensor(-1, lie.f(0), Mono::letter(lie.h(k))))
            } else {
                let (kind, idx) = g.name.split_at(1);
                let k: usize = idx.parse().map_err(|_| AlgebraError::Config(g.name.clone()))?;
                let basis = match kind {
                    "e" => lie.e(k),
                    "f" => lie.f(k),
                    _ => lie.h(k),
                };
                alg.embed_basis(basis)
            };
            images.push((g.clone(), img));
        }
        Ok(GeneratorMap { images })
    }

    pub fn get(&self, name: &str) -> Option<&LocalElement> {
        self.images.iter().find(|(g, _)| g.name == name).map(|(_, v)| v)
    }

    pub fn describe(&self, alg: &FocalAlgebra) -> Vec<GeneratorImage> {
        self.images
            .iter()
            .map(|(g, v)| {
                let d = v.degree();
                GeneratorImage {
                    name: g.name.clone(),
                    image: alg.render(v),
                    degree: g.degree,
                    odd: g.odd,
                    preserves_grading: d == Some(g.degree) && (g.degree != 0) == g.odd,
                }
            })
            .collect()
    }

    pub fn eval(&self, alg: &FocalAlgebra, e: &Expr) -> Result<LocalElement> {
        Ok(match e {
            Expr::Zero => LocalElement::zero(),
            Expr::Gen { name } => self
                .get(name)
                .cloned()
                .ok_or_else(|| AlgebraError::Config(format!("unknown generator {name}")))?,
            Expr::Bracket { left, right } => alg.commutator(&self.eval(alg, left)?, &self.eval(alg, right)?)?,
            Expr::AdPow { x, power, target } => {
                let xv = self.eval(alg, x)?;
                let mut v = self.eval(alg, target)?;
                for _ in 0..*power {
                    v = alg.commutator(&xv, &v)?;
                }
                v
            }
            Expr::Scale { coeff, expr } => self.eval(alg, expr)?.scaled(coeff),
        })
    }
}

/// `w = f₀⊗(h₀ + L)`.
pub fn ideal_generator(alg: &FocalAlgebra) -> LocalElement {
    let f0 = alg.lie.f(0);
    let mut t = Lin::basis(TKey { mono: Mono::letter(alg.lie.h(0)), x: f0 });
    for (k, c) in alg.lie.l.iter() {
        t.add_term(TKey { mono: Mono::letter(*k), x: f0 }, c);
    }
    LocalElement::tensor(-1, &t)
}

/// Fails unless `λ^∧` is pseudo-minuscule; the error carries the first
/// nonvanishing entry of the scan as witness.
pub fn require_pseudo_minuscule(lie: &LocalLie) -> Result<()> {
    let verdict = is_pseudo_minuscule(&lie.cartan, &lie.weight)?;
    if verdict.is_pseudo_minuscule {
        return Ok(());
    }
    let scan = prop41_scan(lie)?;
    let witness = scan.nonzero.first().map(|e| {
        format!("root {:?}: factor {} times [f0, {}] = {}", e.root, e.factor, e.element, e.bracket)
    });
    Err(AlgebraError::Precondition {
        reason: format!("lambda-hat is not pseudo-minuscule ((lambda, theta) = {})", verdict.lambda_theta),
        witness,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BracketCheck {
    pub element: String,
    pub result: String,
    pub zero: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Lemma42Report {
    pub constants: ProductConstants,
    pub generator: String,
    pub checks: Vec<BracketCheck>,
    pub passed: bool,
}

/// `[e₀, w] = 0` and `[e_α, w] = 0` for every basis root vector of `𝓑₁`.
pub fn lemma42_check(alg: &FocalAlgebra) -> Result<Lemma42Report> {
    require_pseudo_minuscule(&alg.lie)?;
    let w = ideal_generator(alg);
    let checks: Vec<BracketCheck> = alg
        .lie
        .basis
        .plus_range()
        .collect::<Vec<_>>()
        .par_iter()
        .map(|&x| {
            let v = alg.commutator(&alg.embed_basis(x), &w)?;
            Ok(BracketCheck { element: alg.lie.basis.name(x).to_string(), result: alg.render(&v), zero: v.is_zero() })
        })
        .collect::<Result<_>>()?;
    let passed = checks.iter().all(|c| c.zero);
    Ok(Lemma42Report { constants: alg.consts.clone(), generator: alg.render(&w), checks, passed })
}

/// A graded subspace of `𝓑^ℓ` held as spanning elements plus echelon forms.
#[derive(Clone, Debug, Default)]
pub struct GradedSpan {
    pub minus: Vec<LocalElement>,
    pub zero: Vec<LocalElement>,
    pub plus: Vec<LocalElement>,
    echelon: [EchelonSpan<BKey>; 3],
}

impl GradedSpan {
    fn slot(d: i8) -> usize {
        (d + 1) as usize
    }

    pub fn part(&self, d: i8) -> &[LocalElement] {
        match d {
            -1 => &self.minus,
            0 => &self.zero,
            _ => &self.plus,
        }
    }

    pub fn dim(&self, d: i8) -> usize {
        self.echelon[Self::slot(d)].dim()
    }

    /// Dimension of the part of degree `d` with filtration ≤ `k`.
    pub fn dim_filtered(&self, d: i8, k: usize) -> usize {
        self.echelon[Self::slot(d)].count_pivots(|key| key.filtration() <= k)
    }

    /// Inserts a homogeneous element; returns `true` if the span grew.
    fn insert(&mut self, d: i8, v: LocalElement) -> bool {
        if !self.echelon[Self::slot(d)].insert(&v.0) {
            return false;
        }
        match d {
            -1 => self.minus.push(v),
            0 => self.zero.push(v),
            _ => self.plus.push(v),
        }
        true
    }

    pub fn reduce(&self, d: i8, v: &LocalElement) -> LocalElement {
        LocalElement(self.echelon[Self::slot(d)].reduce(&v.0))
    }

    pub fn contains(&self, d: i8, v: &LocalElement) -> bool {
        self.reduce(d, v).is_zero()
    }
}

/// The subalgebra `V` of `𝓑^⌐` generated by `𝓑₁` and `𝓑₋₁𝓑₀`.
#[derive(Clone, Debug)]
pub struct Subalgebra {
    pub span: GradedSpan,
    pub cutoff: usize,
    /// Elements dropped for exceeding the filtration cutoff.
    pub dropped: usize,
}

pub fn generated_subalgebra(alg: &FocalAlgebra, cutoff: usize) -> Result<Subalgebra> {
    let lie = &alg.lie;
    let mut span = GradedSpan::default();
    let mut queue: Vec<(i8, LocalElement)> = Vec::new();
    for x in lie.basis.plus_range() {
        queue.push((1, alg.embed_basis(x)));
    }
    for x in lie.basis.minus_range() {
        for z in lie.basis.zero_range() {
            queue.push((-1, alg.product(&alg.embed_basis(x), &alg.embed_basis(z))?));
        }
    }
    let mut dropped = 0;
    while let Some((d, v)) = queue.pop() {
        if v.is_zero() {
            continue;
        }
        if v.filtration() > cutoff {
            dropped += 1;
            continue;
        }
        if !span.insert(d, v.clone()) {
            continue;
        }
        // bracket the new element with everything already present
        let mut partners: Vec<(i8, LocalElement)> = Vec::new();
        for e in [-1i8, 0, 1] {
            if (-1..=1).contains(&(d + e)) {
                partners.extend(span.part(e).iter().map(|u| (e, u.clone())));
            }
        }
        for (e, u) in partners {
            let c = alg.commutator(&v, &u)?;
            queue.push((d + e, c));
        }
    }
    Ok(Subalgebra { span, cutoff, dropped })
}

/// Ideal of `V` generated by `w`, closed under `ad V₀`.
#[derive(Clone, Debug)]
pub struct PeripheralIdealSpan {
    pub generator: String,
    pub span: GradedSpan,
    pub cutoff: usize,
    pub dropped: usize,
}

pub fn ideal_span(alg: &FocalAlgebra, w: &LocalElement, v: &Subalgebra, cutoff: usize) -> Result<PeripheralIdealSpan> {
    let deg = match w.degree() {
        None if w.is_zero() => {
            return Ok(PeripheralIdealSpan {
                generator: "0".into(),
                span: GradedSpan::default(),
                cutoff,
                dropped: 0,
            })
        }
        None => return Err(AlgebraError::Domain("ideal generator must be homogeneous".into())),
        Some(0) => return Err(AlgebraError::NotPeripheral(format!("generator {} has degree 0", alg.render(w)))),
        Some(d) => d,
    };
    if w.filtration() > cutoff {
        return Err(AlgebraError::Config(format!(
            "cutoff {cutoff} is below the filtration {} of the generator",
            w.filtration()
        )));
    }
    let mut span = GradedSpan::default();
    let mut queue = vec![(deg, w.clone())];
    let mut dropped = 0;
    while let Some((d, x)) = queue.pop() {
        if x.is_zero() {
            continue;
        }
        if x.filtration() > cutoff {
            dropped += 1;
            continue;
        }
        if !span.insert(d, x.clone()) {
            continue;
        }
        for u in v.span.part(-d) {
            let c = alg.commutator(u, &x)?;
            if !c.is_zero() {
                return Err(AlgebraError::NotPeripheral(format!(
                    "[{}, {}] = {} has degree 0",
                    alg.render(u),
                    alg.render(&x),
                    alg.render(&c)
                )));
            }
        }
        for u in v.span.part(0) {
            queue.push((d, alg.commutator(u, &x)?));
        }
    }
    Ok(PeripheralIdealSpan { generator: alg.render(w), span, cutoff, dropped })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationStatus {
    pub group: String,
    pub relation: String,
    /// `exact`, `mod-ideal`, `skipped` or `violated`.
    pub status: String,
    pub residue: String,
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Thm43Report {
    pub cutoff: usize,
    pub generator: String,
    pub generator_images: Vec<GeneratorImage>,
    pub dim_v: [usize; 3],
    pub dim_ideal: [usize; 3],
    pub truncated: bool,
    pub degree_zero_contains_b0: bool,
    pub relations: Vec<RelationStatus>,
    pub checked: usize,
    pub skipped: usize,
    pub violations: usize,
    pub passed: bool,
}

fn dims(s: &GradedSpan) -> [usize; 3] {
    [s.dim(-1), s.dim(0), s.dim(1)]
}

/// Checks every local relation of the `W` presentation under
/// `f_{0K} ↦ f₀⊗h_K` modulo the ideal generated by `f₀⊗(h₀+L)`.
pub fn thm43_check(alg: &FocalAlgebra, cutoff: usize) -> Result<Thm43Report> {
    require_pseudo_minuscule(&alg.lie)?;
    if !alg.consts.is_default() {
        return Err(AlgebraError::Precondition {
            reason: "theorem checks require a = b = c = 1".into(),
            witness: None,
        });
    }
    let verdict = is_pseudo_minuscule(&alg.lie.cartan, &alg.lie.weight)?;
    if verdict.index != Some(1) {
        return Err(AlgebraError::Precondition {
            reason: format!("numbering must give lambda-hat = Lambda_1, found Lambda_{}", verdict.index.unwrap_or(0)),
            witness: None,
        });
    }
    let pres = w_presentation(&alg.lie.ext)?;
    let map = GeneratorMap::new(alg, &pres)?;
    let v = generated_subalgebra(alg, cutoff)?;
    let w = ideal_generator(alg);
    let d = ideal_span(alg, &w, &v, cutoff)?;
    let b0_in_v0 = alg.lie.basis.zero_range().all(|k| v.span.contains(0, &alg.embed_basis(k)));

    let statuses: Vec<RelationStatus> = pres
        .relations
        .par_iter()
        .map(|rel| relation_status(alg, &pres, &map, &d, rel))
        .collect::<Result<_>>()?;
    let checked = statuses.iter().filter(|s| s.status != "skipped").count();
    let skipped = statuses.len() - checked;
    let violations = statuses.iter().filter(|s| s.status == "violated").count();
    Ok(Thm43Report {
        cutoff,
        generator: alg.render(&w),
        generator_images: map.describe(alg),
        dim_v: dims(&v.span),
        dim_ideal: dims(&d.span),
        truncated: v.dropped + d.dropped > 0,
        degree_zero_contains_b0: b0_in_v0,
        relations: statuses,
        checked,
        skipped,
        violations,
        passed: violations == 0,
    })
}

fn relation_status(
    alg: &FocalAlgebra,
    pres: &Presentation,
    map: &GeneratorMap,
    ideal: &PeripheralIdealSpan,
    rel: &Relation,
) -> Result<RelationStatus> {
    let (deg, local) = expr_degree(pres, &rel.lhs)?;
    let mut st = RelationStatus {
        group: rel.group.clone(),
        relation: rel.to_string(),
        status: "skipped".into(),
        residue: String::new(),
        note: None,
    };
    if !local {
        st.note = Some(format!("degree {deg} lies outside the local part"));
        return Ok(st);
    }
    let residue = map.eval(alg, &rel.lhs)?.sub(&map.eval(alg, &rel.rhs)?);
    st.residue = alg.render(&residue);
    if residue.is_zero() {
        st.status = "exact".into();
        return Ok(st);
    }
    let mut rem = LocalElement::zero();
    for e in [-1i8, 0, 1] {
        let c = residue.component(e);
        rem = rem.add(&if e == 0 { c } else { ideal.span.reduce(e, &c) });
    }
    st.status = if rem.is_zero() { "mod-ideal" } else { "violated" }.into();
    if !rem.is_zero() {
        st.note = Some(format!("remainder {}", alg.render(&rem)));
    }
    Ok(st)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimensionRow {
    pub degree: i8,
    pub filtration: usize,
    pub v: usize,
    pub ideal: usize,
    pub quotient: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjectureReport {
    pub cutoff: usize,
    pub caveat: String,
    pub rows: Vec<DimensionRow>,
    pub quotient_totals: [usize; 3],
    /// Local part of `W` from the presentation, per degree −1, 0, 1.
    pub w_dims: [Option<usize>; 3],
    pub notes: Vec<String>,
}

/// Dimension table of `V/D` against the local part of `W`; never asserts.
pub fn conjecture_probe(alg: &FocalAlgebra, cutoff: usize) -> Result<ConjectureReport> {
    let v = generated_subalgebra(alg, cutoff)?;
    let w = ideal_generator(alg);
    let mut notes = Vec::new();
    if !alg.lie.cartan.is_simply_laced() {
        notes.push("g is not simply laced; the comparison is outside the conjectured range".into());
    }
    let d = match ideal_span(alg, &w, &v, cutoff.max(w.filtration())) {
        Ok(d) => Some(d),
        Err(e) => {
            notes.push(format!("ideal not peripheral: {e}"));
            None
        }
    };
    let mut rows = Vec::new();
    let mut totals = [0usize; 3];
    for (slot, deg) in [-1i8, 0, 1].into_iter().enumerate() {
        for k in 0..=cutoff {
            let dv = v.span.dim_filtered(deg, k);
            let di = d.as_ref().map_or(0, |d| d.span.dim_filtered(deg, k));
            rows.push(DimensionRow { degree: deg, filtration: k, v: dv, ideal: di, quotient: dv - di });
        }
        totals[slot] = rows.last().map_or(0, |r| r.quotient);
    }
    let lie = &alg.lie;
    let w_zero = lie.cartan.roots().len() + lie.rank() + 1;
    notes.push("W at degree -1 is not computed from the presentation".into());
    Ok(ConjectureReport {
        cutoff,
        caveat: format!("truncated at filtration {cutoff}; dimensions are lower bounds on the untruncated spans"),
        rows,
        quotient_totals: totals,
        w_dims: [None, Some(w_zero), Some(lie.dim1())],
        notes,
    })
}

/// Relabels the simple roots of `g` so that `λ^∧ = Λ₁`. Returns the
/// permutation (new index `k` is old index `perm[k]`, 0-based).
pub fn renumber_for_theorem(cartan: &CartanData, weight: &WeightData) -> Result<(Vec<usize>, CartanData, WeightData)> {
    let verdict = is_pseudo_minuscule(cartan, weight)?;
    let Some(k) = verdict.index else {
        return Err(AlgebraError::Precondition {
            reason: format!("lambda-hat is not pseudo-minuscule ((lambda, theta) = {})", verdict.lambda_theta),
            witness: None,
        });
    };
    let mut perm: Vec<usize> = (0..cartan.rank()).collect();
    perm.swap(0, k - 1);
    if k == 1 {
        return Ok((perm, cartan.clone(), weight.clone()));
    }
    let c2 = cartan.permuted(&perm)?;
    let w2 = WeightData::new(&c2, weight.permuted(&perm).labels, weight.permuted(&perm).kappa)?;
    Ok((perm, c2, w2))
}
