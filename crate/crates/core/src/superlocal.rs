//! The local part `𝓑₋₁ ⊕ 𝓑₀ ⊕ 𝓑₁` of the contragredient Lie superalgebra
//! with Cartan matrix `B`, its bracket, invariant form and grading element.
//!
//! Positive and negative parts are built weight by weight from bracket
//! words `[X_i, b]`. A word of height at least two is zero exactly when
//! every lowering operator kills it, so each weight space is the quotient of
//! the candidate words by the kernel of the lowering map. This is the
//! radical of the contragredient pairing, and imposes the Serre relations
//! without rewriting them symbolically.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{AlgebraError, Result};
use crate::linalg::{express_in, EchelonSpan, Matrix};
use crate::rational::{q, sign_q, Lin, Q};
use crate::rootsys::{build_b, CartanData, ExtendedMatrix, WeightData};

/// Element of `𝓑^𝕃` (or of `𝔤`) as a combination of global basis indices.
pub type LieElement = Lin<usize>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Kind {
    Cartan(usize),
    /// `scale · [X_gen, child]`, with `X = e` on the positive side and `f`
    /// on the negative side. A simple generator has no child.
    Word { positive: bool, gen: usize, child: Option<usize>, scale: Q },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisElement {
    pub name: String,
    pub degree: i8,
    pub odd: bool,
    /// Signed root coordinates (index 0 is `α₀` for the local superalgebra).
    pub weight: Vec<i64>,
    pub kind: Kind,
}

/// Ordered basis: Cartan elements, positive root vectors of degree 0,
/// negative root vectors of degree 0, then degree 1, then degree −1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieBasis {
    pub elements: Vec<BasisElement>,
    pub dim0: usize,
    pub dim1: usize,
}

impl LieBasis {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn zero_range(&self) -> std::ops::Range<usize> {
        0..self.dim0
    }

    pub fn plus_range(&self) -> std::ops::Range<usize> {
        self.dim0..self.dim0 + self.dim1
    }

    pub fn minus_range(&self) -> std::ops::Range<usize> {
        self.dim0 + self.dim1..self.dim0 + 2 * self.dim1
    }

    pub fn degree(&self, i: usize) -> i8 {
        self.elements[i].degree
    }

    pub fn odd(&self, i: usize) -> bool {
        self.elements[i].odd
    }

    pub fn name(&self, i: usize) -> &str {
        &self.elements[i].name
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.elements.iter().position(|e| e.name == name)
    }
}

/// Brackets of basis pairs; `None` marks an undefined configuration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureTable {
    pub dim: usize,
    entries: Vec<Option<LieElement>>,
}

impl StructureTable {
    pub fn get(&self, i: usize, j: usize) -> Option<&LieElement> {
        self.entries[i * self.dim + j].as_ref()
    }
}

/// Nonzero values of the invariant form on basis pairs, in both orders.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct InvariantForm {
    pub entries: BTreeMap<(usize, usize), Q>,
}

impl InvariantForm {
    pub fn get(&self, i: usize, j: usize) -> Q {
        self.entries.get(&(i, j)).cloned().unwrap_or_else(Q::zero)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
enum Ref {
    H(usize),
    S(usize),
}

struct SideElem {
    weight: Vec<i64>,
    gen: usize,
    child: Option<usize>,
    scale: Q,
}

struct Side {
    elems: Vec<SideElem>,
    /// `up[i][b] = [X_i, b]`; `None` when the result would leave the cap.
    up: Vec<Vec<Option<Lin<Ref>>>>,
    /// `down[j][b] = [Y_j, b]` with `Y` the opposite generators.
    down: Vec<Vec<Lin<Ref>>>,
}

fn parity_sign(a: bool, b: bool) -> Q {
    sign_q(a && b)
}

/// Builds one side (`sign = 1`: words in `e`, `sign = -1`: words in `f`)
/// of the contragredient algebra with matrix `m` (`m[I][J] = α_J(h_I)`),
/// keeping weights whose coefficient at `cap.0` is at most `cap.1`.
fn build_side(m: &Matrix, odd: &[bool], cap: Option<(usize, i64)>, sign: i64) -> Result<Side> {
    let n = m.len();
    let within_cap = |w: &[i64]| cap.is_none_or(|(node, max)| w[node] <= max);
    let degree_zero = |w: &[i64]| cap.is_none_or(|(node, _)| w[node] == 0);
    // [Y_i, X_i] = c_i h_i.
    let c_side = |i: usize| if sign > 0 && !odd[i] { -Q::one() } else { Q::one() };
    let unit = |i: usize| -> Vec<i64> { (0..n).map(|k| i64::from(k == i)).collect() };

    let mut elems: Vec<SideElem> = Vec::new();
    let mut spaces: BTreeMap<Vec<i64>, Vec<usize>> = BTreeMap::new();
    let mut up_set: HashMap<(usize, usize), Lin<Ref>> = HashMap::new();
    let mut down: Vec<Vec<Lin<Ref>>> = vec![Vec::new(); n];

    for i in 0..n {
        elems.push(SideElem { weight: unit(i), gen: i, child: None, scale: Q::one() });
        spaces.insert(unit(i), vec![i]);
        for (j, d) in down.iter_mut().enumerate() {
            d.push(if i == j { Lin::term(Ref::H(i), c_side(i)) } else { Lin::zero() });
        }
    }

    let mut frontier: Vec<Vec<i64>> = (0..n).map(unit).collect();
    let mut guard = 0usize;
    while !frontier.is_empty() {
        guard += 1;
        if guard > 400 || elems.len() > 50_000 {
            return Err(AlgebraError::Unsupported("contragredient algebra is not of finite type".into()));
        }
        let mut targets: BTreeSet<Vec<i64>> = BTreeSet::new();
        for w in &frontier {
            for i in 0..n {
                let mut t = w.clone();
                t[i] += 1;
                if within_cap(&t) {
                    targets.insert(t);
                }
            }
        }
        let mut next = Vec::new();
        for gamma in targets {
            let mut cands: Vec<(usize, usize)> = Vec::new();
            for i in 0..n {
                if gamma[i] == 0 {
                    continue;
                }
                let mut beta = gamma.clone();
                beta[i] -= 1;
                if let Some(bs) = spaces.get(&beta) {
                    cands.extend(bs.iter().map(|&b| (i, b)));
                }
            }
            let images: Vec<Lin<(usize, Ref)>> = cands
                .iter()
                .map(|&(i, b)| lowering_image(m, odd, sign, &c_side, &elems, &down, &up_set, i, b))
                .collect::<Result<_>>()?;
            let mut span = EchelonSpan::new();
            let chosen: Vec<usize> = (0..cands.len()).filter(|&k| span.insert(&images[k])).collect();
            if chosen.is_empty() {
                for &(i, b) in &cands {
                    up_set.insert((i, b), Lin::zero());
                }
                continue;
            }
            let mut ids = Vec::new();
            let mut basis_images = Vec::new();
            for &k in &chosen {
                let (i, b) = cands[k];
                let mut scale = Q::one();
                if chosen.len() == 1 && degree_zero(&gamma) {
                    // Chevalley normalisation e_{β+α_i} = [e_i, e_β]/(p+1).
                    let mut p = 0i64;
                    let mut probe = gamma.clone();
                    probe[i] -= 1;
                    loop {
                        if probe[i] == 0 {
                            break;
                        }
                        probe[i] -= 1;
                        if spaces.contains_key(&probe) {
                            p += 1;
                        } else {
                            break;
                        }
                    }
                    scale = Q::one() / q(p + 1);
                }
                let id = elems.len();
                elems.push(SideElem { weight: gamma.clone(), gen: i, child: Some(b), scale: scale.clone() });
                let img = images[k].scaled(&scale);
                for (j, d) in down.iter_mut().enumerate() {
                    let mut part = Lin::zero();
                    for ((jj, r), c) in img.iter() {
                        if *jj == j {
                            part.add_term(*r, c);
                        }
                    }
                    d.push(part);
                }
                basis_images.push(img);
                ids.push(id);
            }
            for (k, &(i, b)) in cands.iter().enumerate() {
                let coords = express_in(&basis_images, &images[k]).ok_or_else(|| {
                    AlgebraError::Domain("internal: candidate outside spanned weight space".into())
                })?;
                let v = Lin::from_terms(ids.iter().zip(coords).map(|(&id, c)| (Ref::S(id), c)));
                up_set.insert((i, b), v);
            }
            spaces.insert(gamma.clone(), ids);
            next.push(gamma);
        }
        frontier = next;
    }

    let mut up = vec![vec![None; elems.len()]; n];
    for (b, e) in elems.iter().enumerate() {
        for (i, row) in up.iter_mut().enumerate() {
            let mut t = e.weight.clone();
            t[i] += 1;
            if !within_cap(&t) {
                continue;
            }
            row[b] = Some(up_set.get(&(i, b)).cloned().unwrap_or_default());
        }
    }
    Ok(Side { elems, up, down })
}

/// `([Y_j, [X_i, b]])_j` expressed through already-built data.
#[allow(clippy::too_many_arguments)]
fn lowering_image(
    m: &Matrix,
    odd: &[bool],
    sign: i64,
    c_side: &dyn Fn(usize) -> Q,
    elems: &[SideElem],
    down: &[Vec<Lin<Ref>>],
    up_set: &HashMap<(usize, usize), Lin<Ref>>,
    i: usize,
    b: usize,
) -> Result<Lin<(usize, Ref)>> {
    let n = m.len();
    let beta = &elems[b].weight;
    let mut out = Lin::zero();
    for j in 0..n {
        if i == j {
            let wt: Q = (0..n).map(|k| q(beta[k]) * &m[i][k]).sum::<Q>() * q(sign);
            out.add_term((j, Ref::S(b)), &(c_side(i) * wt));
        }
        let sgn = parity_sign(odd[i], odd[j]);
        for (r, c) in down[j][b].iter() {
            match *r {
                Ref::H(k) => {
                    // [X_i, h_k] = -sign · m[k][i] · X_i
                    let coeff = &sgn * c * q(-sign) * &m[k][i];
                    out.add_term((j, Ref::S(i)), &coeff);
                }
                Ref::S(id) => {
                    let v = up_set.get(&(i, id)).ok_or_else(|| {
                        AlgebraError::Domain("internal: raising table accessed before construction".into())
                    })?;
                    for (r2, c2) in v.iter() {
                        out.add_term((j, *r2), &(&sgn * c * c2));
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Assembled algebra: basis, generator action tables and memoised brackets.
struct Assembly {
    basis: LieBasis,
    m: Matrix,
    odd_gen: Vec<bool>,
    /// `ad_e[i][g]`, `ad_f[i][g]` for every global `g`.
    ad_e: Vec<Vec<Option<LieElement>>>,
    ad_f: Vec<Vec<Option<LieElement>>>,
    simple_e: Vec<usize>,
    simple_f: Vec<usize>,
}

fn weight_name(prefix: &str, w: &[i64]) -> String {
    let coords: Vec<String> = w.iter().map(|x| x.abs().to_string()).collect();
    format!("{prefix}[{}]", coords.join(","))
}

fn assemble(m: Matrix, odd_gen: Vec<bool>, cap: Option<(usize, i64)>) -> Result<Assembly> {
    let n = m.len();
    let pos = build_side(&m, &odd_gen, cap, 1)?;
    let neg = build_side(&m, &odd_gen, cap, -1)?;
    let deg_of = |w: &[i64]| cap.map_or(0, |(node, _)| w[node]);
    let height = |w: &[i64]| w.iter().sum::<i64>();

    let order = |side: &Side, deg: i64| -> Vec<usize> {
        let mut ids: Vec<usize> = (0..side.elems.len()).filter(|&k| deg_of(&side.elems[k].weight) == deg).collect();
        ids.sort_by(|&a, &b| {
            let (wa, wb) = (&side.elems[a].weight, &side.elems[b].weight);
            height(wa).cmp(&height(wb)).then_with(|| wa.cmp(wb)).then(a.cmp(&b))
        });
        ids
    };
    let pos0 = order(&pos, 0);
    let neg0 = order(&neg, 0);
    let pos1 = if cap.is_some() { order(&pos, 1) } else { Vec::new() };
    let neg1 = if cap.is_some() { order(&neg, 1) } else { Vec::new() };
    if pos1.len() != neg1.len() {
        return Err(AlgebraError::Domain("internal: dim B_1 != dim B_-1".into()));
    }

    let mut pos_map = vec![usize::MAX; pos.elems.len()];
    let mut neg_map = vec![usize::MAX; neg.elems.len()];
    let mut elements: Vec<BasisElement> = (0..n)
        .map(|k| BasisElement {
            name: format!("h{k}"),
            degree: 0,
            odd: false,
            weight: vec![0; n],
            kind: Kind::Cartan(k),
        })
        .collect();
    let mut push = |positive: bool, ids: &[usize], elements: &mut Vec<BasisElement>| {
        let side = if positive { &pos } else { &neg };
        let sgn = if positive { 1 } else { -1 };
        let mut count: BTreeMap<Vec<i64>, usize> = BTreeMap::new();
        for &id in ids {
            let e = &side.elems[id];
            let global = elements.len();
            if positive {
                pos_map[id] = global;
            } else {
                neg_map[id] = global;
            }
            let prefix = if positive { "e" } else { "f" };
            let name = if e.child.is_none() {
                format!("{prefix}{}", e.gen)
            } else {
                let k = count.entry(e.weight.clone()).or_insert(0);
                *k += 1;
                let base = weight_name(prefix, &e.weight);
                if *k > 1 {
                    format!("{base}#{k}")
                } else {
                    base
                }
            };
            let degree = (deg_of(&e.weight) * sgn) as i8;
            elements.push(BasisElement {
                name,
                degree,
                odd: degree % 2 != 0,
                weight: e.weight.iter().map(|x| x * sgn).collect(),
                kind: Kind::Word { positive, gen: e.gen, child: e.child, scale: e.scale.clone() },
            });
        }
    };
    push(true, &pos0, &mut elements);
    push(false, &neg0, &mut elements);
    push(true, &pos1, &mut elements);
    push(false, &neg1, &mut elements);
    for e in elements.iter_mut() {
        if let Kind::Word { positive, child: Some(c), .. } = &mut e.kind {
            *c = if *positive { pos_map[*c] } else { neg_map[*c] };
        }
    }
    let dim0 = n + pos0.len() + neg0.len();
    let dim1 = pos1.len();
    let basis = LieBasis { elements, dim0, dim1 };
    let total = basis.len();

    let map_ref = |r: &Ref, positive: bool| -> usize {
        match *r {
            Ref::H(k) => k,
            Ref::S(id) => {
                if positive {
                    pos_map[id]
                } else {
                    neg_map[id]
                }
            }
        }
    };
    let mut ad_e = vec![vec![None; total]; n];
    let mut ad_f = vec![vec![None; total]; n];
    for i in 0..n {
        for k in 0..n {
            // [e_i, h_k] = -m[k][i] e_i, [f_i, h_k] = m[k][i] f_i
            ad_e[i][k] = Some(Lin::term(pos_map[i], -m[k][i].clone()));
            ad_f[i][k] = Some(Lin::term(neg_map[i], m[k][i].clone()));
        }
        for id in 0..pos.elems.len() {
            let g = pos_map[id];
            ad_e[i][g] = pos.up[i][id].as_ref().map(|v| v.map_keys(|r| map_ref(r, true)));
            ad_f[i][g] = Some(pos.down[i][id].map_keys(|r| map_ref(r, true)));
        }
        for id in 0..neg.elems.len() {
            let g = neg_map[id];
            ad_f[i][g] = neg.up[i][id].as_ref().map(|v| v.map_keys(|r| map_ref(r, false)));
            ad_e[i][g] = Some(neg.down[i][id].map_keys(|r| map_ref(r, false)));
        }
    }
    let simple_e = (0..n).map(|i| pos_map[i]).collect();
    let simple_f = (0..n).map(|i| neg_map[i]).collect();
    Ok(Assembly { basis, m, odd_gen, ad_e, ad_f, simple_e, simple_f })
}

impl Assembly {
    fn eval_weight(&self, w: &[i64], k: usize) -> Q {
        w.iter().enumerate().map(|(j, &c)| q(c) * &self.m[k][j]).sum()
    }

    fn bracket(&self, a: usize, b: usize, memo: &mut HashMap<(usize, usize), LieElement>) -> Result<LieElement> {
        if let Some(v) = memo.get(&(a, b)) {
            return Ok(v.clone());
        }
        let ea = &self.basis.elements[a];
        let eb = &self.basis.elements[b];
        let out = match (&ea.kind, &eb.kind) {
            (Kind::Cartan(k), _) => Lin::term(b, self.eval_weight(&eb.weight, *k)),
            (_, Kind::Cartan(k)) => Lin::term(a, -self.eval_weight(&ea.weight, *k)),
            (Kind::Word { positive, gen, child, scale }, _) => {
                let table = if *positive { &self.ad_e[*gen] } else { &self.ad_f[*gen] };
                let apply = |g: usize| -> Result<LieElement> {
                    table[g].clone().ok_or_else(|| {
                        AlgebraError::Domain(format!("bracket leaves the local part at {}", self.basis.name(g)))
                    })
                };
                match child {
                    None => apply(b)?,
                    Some(c) => {
                        let c = *c;
                        let inner = self.bracket(c, b, memo)?;
                        let mut t1 = Lin::zero();
                        for (g, coef) in inner.iter() {
                            t1.add_scaled(&apply(*g)?, coef);
                        }
                        let xb = apply(b)?;
                        let mut t2 = Lin::zero();
                        for (g, coef) in xb.iter() {
                            t2.add_scaled(&self.bracket(c, *g, memo)?, coef);
                        }
                        let sgn = parity_sign(self.odd_gen[*gen], self.basis.odd(c));
                        t1.add_scaled(&t2, &-sgn);
                        t1.scaled(scale)
                    }
                }
            }
        };
        memo.insert((a, b), out.clone());
        Ok(out)
    }

    fn table(&self, defined: impl Fn(i8, i8) -> bool) -> Result<StructureTable> {
        let dim = self.basis.len();
        let mut memo = HashMap::new();
        let mut entries = vec![None; dim * dim];
        for a in 0..dim {
            for b in 0..dim {
                if defined(self.basis.degree(a), self.basis.degree(b)) {
                    entries[a * dim + b] = Some(self.bracket(a, b, &mut memo)?);
                }
            }
        }
        Ok(StructureTable { dim, entries })
    }
}

/// Chevalley-basis structure constants of the finite-dimensional `𝔤`.
#[derive(Clone, Debug)]
pub struct LieTable {
    pub basis: LieBasis,
    pub table: StructureTable,
    pub simple_e: Vec<usize>,
    pub simple_f: Vec<usize>,
}

impl LieTable {
    pub fn bracket(&self, x: &LieElement, y: &LieElement) -> LieElement {
        let mut out = Lin::zero();
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                if let Some(v) = self.table.get(*i, *j) {
                    out.add_scaled(v, &(a * b));
                }
            }
        }
        out
    }
}

pub fn chevalley_constants(cartan: &CartanData) -> Result<LieTable> {
    let m = cartan.matrix_q();
    let r = m.len();
    let asm = assemble(m, vec![false; r], None)?;
    let table = asm.table(|_, _| true)?;
    Ok(LieTable { basis: asm.basis.clone(), table, simple_e: asm.simple_e.clone(), simple_f: asm.simple_f.clone() })
}

fn local_defined(a: i8, b: i8) -> bool {
    (-1..=1).contains(&(a + b))
}

/// The contragredient local Lie superalgebra `𝓑^𝕃` with its form and `L`.
#[derive(Clone, Debug)]
pub struct LocalLie {
    pub cartan: CartanData,
    pub weight: WeightData,
    pub ext: ExtendedMatrix,
    pub basis: LieBasis,
    pub table: StructureTable,
    pub form: InvariantForm,
    /// `L = Σ_I (B⁻¹)_{0I} h_I`.
    pub l: LieElement,
    pub simple_e: Vec<usize>,
    pub simple_f: Vec<usize>,
}

pub fn build_local_part(cartan: &CartanData, weight: &WeightData) -> Result<LocalLie> {
    let ext = build_b(cartan, weight);
    let l_coeffs = ext.l_coefficients()?;
    let n = ext.order();
    let mut odd = vec![false; n];
    odd[0] = true;
    let asm = assemble(ext.b.clone(), odd, Some((0, 1)))?;
    let table = asm.table(local_defined)?;
    let form = build_form(&asm, &ext)?;
    let l = Lin::from_terms(l_coeffs.into_iter().enumerate());
    Ok(LocalLie {
        cartan: cartan.clone(),
        weight: weight.clone(),
        ext,
        basis: asm.basis.clone(),
        table,
        form,
        l,
        simple_e: asm.simple_e.clone(),
        simple_f: asm.simple_f.clone(),
    })
}

fn build_form(asm: &Assembly, ext: &ExtendedMatrix) -> Result<InvariantForm> {
    let dim = asm.basis.len();
    let mut memo: HashMap<(usize, usize), Q> = HashMap::new();
    let mut form = InvariantForm::default();
    for x in 0..dim {
        for y in 0..dim {
            let (dx, dy) = (asm.basis.degree(x), asm.basis.degree(y));
            if dx + dy != 0 {
                continue;
            }
            let v = form_value(asm, ext, x, y, &mut memo)?;
            if !v.is_zero() {
                form.entries.insert((x, y), v);
            }
        }
    }
    Ok(form)
}

fn form_value(
    asm: &Assembly,
    ext: &ExtendedMatrix,
    x: usize,
    y: usize,
    memo: &mut HashMap<(usize, usize), Q>,
) -> Result<Q> {
    let ex = &asm.basis.elements[x];
    let ey = &asm.basis.elements[y];
    if ex.weight.iter().zip(&ey.weight).any(|(a, b)| a + b != 0) {
        return Ok(Q::zero());
    }
    if let Some(v) = memo.get(&(x, y)) {
        return Ok(v.clone());
    }
    let v = match (&ex.kind, &ey.kind) {
        (Kind::Cartan(i), Kind::Cartan(j)) => ext.h_form(*i, *j),
        (Kind::Cartan(_), _) | (_, Kind::Cartan(_)) => Q::zero(),
        (Kind::Word { positive: true, gen, child, scale }, _) => match child {
            None => {
                if y == asm.simple_f[*gen] {
                    ext.ef_norms[*gen].clone()
                } else {
                    Q::zero()
                }
            }
            Some(c) => {
                // ⟨[e_i, c] | y⟩ = −(−1)^{ic} ⟨c | [e_i, y]⟩
                let ey_img = asm.ad_e[*gen][y].clone().unwrap_or_default();
                let mut s = Q::zero();
                for (g, coef) in ey_img.iter() {
                    s += coef * form_value(asm, ext, *c, *g, memo)?;
                }
                -parity_sign(asm.odd_gen[*gen], asm.basis.odd(*c)) * s * scale
            }
        },
        (Kind::Word { positive: false, .. }, _) => {
            parity_sign(ex.odd, ey.odd) * form_value(asm, ext, y, x, memo)?
        }
    };
    memo.insert((x, y), v.clone());
    Ok(v)
}

impl LocalLie {
    pub fn dim0(&self) -> usize {
        self.basis.dim0
    }

    pub fn dim1(&self) -> usize {
        self.basis.dim1
    }

    pub fn rank(&self) -> usize {
        self.cartan.rank()
    }

    pub fn e(&self, k: usize) -> usize {
        self.simple_e[k]
    }

    pub fn f(&self, k: usize) -> usize {
        self.simple_f[k]
    }

    pub fn h(&self, k: usize) -> usize {
        k
    }

    /// Degree of a homogeneous nonzero element.
    pub fn degree_of(&self, x: &LieElement) -> Option<i8> {
        let mut d = None;
        for k in x.keys() {
            let dk = self.basis.degree(*k);
            match d {
                None => d = Some(dk),
                Some(prev) if prev != dk => return None,
                _ => {}
            }
        }
        d
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> Result<&LieElement> {
        self.table.get(i, j).ok_or_else(|| {
            AlgebraError::Domain(format!(
                "bracket of {} and {} is undefined (degree sum {})",
                self.basis.name(i),
                self.basis.name(j),
                self.basis.degree(i) + self.basis.degree(j)
            ))
        })
    }

    /// Bilinear extension of the basis brackets.
    pub fn bracket(&self, x: &LieElement, y: &LieElement) -> Result<LieElement> {
        let mut out = Lin::zero();
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                out.add_scaled(self.bracket_basis(*i, *j)?, &(a * b));
            }
        }
        Ok(out)
    }

    pub fn pair_basis(&self, i: usize, j: usize) -> Result<Q> {
        let (di, dj) = (self.basis.degree(i), self.basis.degree(j));
        if di == 0 || di + dj != 0 {
            return Err(AlgebraError::Domain(format!(
                "pairing needs opposite nonzero degrees, got {} and {}",
                di, dj
            )));
        }
        Ok(self.form.get(i, j))
    }

    /// `⟨x|y⟩` for `x`, `y` at opposite nonzero degrees.
    pub fn pair(&self, x: &LieElement, y: &LieElement) -> Result<Q> {
        let mut s = Q::zero();
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                s += a * b * self.pair_basis(*i, *j)?;
            }
        }
        Ok(s)
    }

    /// The invariant form on arbitrary basis pairs, including degree zero.
    pub fn form_basis(&self, i: usize, j: usize) -> Q {
        self.form.get(i, j)
    }

    /// `(α₀^∨, α) = Σ_K α_K B_{0K}`.
    pub fn coroot0_pairing(&self, weight: &[i64]) -> Q {
        weight.iter().enumerate().map(|(k, &c)| q(c) * &self.ext.b[0][k]).sum()
    }

    pub fn basis_vec(&self, i: usize) -> LieElement {
        Lin::basis(i)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Prop41Entry {
    pub element: String,
    pub root: Vec<i64>,
    /// `(α₀^∨, α) + 1`.
    pub factor: String,
    /// `⟦f₀, e_α⟧` rendered as a combination of basis names.
    pub bracket: String,
    pub product_is_zero: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Prop41Report {
    pub entries: Vec<Prop41Entry>,
    pub nonzero: Vec<Prop41Entry>,
    pub all_zero: bool,
}

pub fn render(basis: &LieBasis, x: &LieElement) -> String {
    if x.is_zero() {
        return "0".into();
    }
    let parts: Vec<String> = x.iter().map(|(k, c)| format!("({c})*{}", basis.name(*k))).collect();
    parts.join(" + ")
}

/// Scans `((α₀^∨, α) + 1) ⟦f₀, e_α⟧` over all basis root vectors of `𝓑₁`
/// other than `e₀`.
pub fn prop41_scan(alg: &LocalLie) -> Result<Prop41Report> {
    let f0 = alg.f(0);
    let e0 = alg.e(0);
    let mut entries = Vec::new();
    for x in alg.basis.plus_range() {
        if x == e0 {
            continue;
        }
        let w = &alg.basis.elements[x].weight;
        let factor = alg.coroot0_pairing(w) + Q::one();
        let br = alg.bracket_basis(f0, x)?.clone();
        let prod = br.scaled(&factor);
        entries.push(Prop41Entry {
            element: alg.basis.name(x).to_string(),
            root: w.clone(),
            factor: factor.to_string(),
            bracket: render(&alg.basis, &br),
            product_is_zero: prod.is_zero(),
        });
    }
    let nonzero: Vec<Prop41Entry> = entries.iter().filter(|e| !e.product_is_zero).cloned().collect();
    Ok(Prop41Report { all_zero: nonzero.is_empty(), entries, nonzero })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{build_cartan, kappa_adapted, kappa_symmetric, CartanType};

    fn local(t: CartanType, r: usize, labels: Vec<i64>) -> LocalLie {
        let c = build_cartan(t, r).unwrap();
        let node = labels.iter().position(|&x| x != 0).unwrap();
        let kappa = kappa_symmetric(&c).unwrap_or_else(|_| kappa_adapted(&c, node));
        let w = WeightData::new(&c, labels, kappa).unwrap();
        build_local_part(&c, &w).unwrap()
    }

    #[test]
    fn a1_chevalley_relations() {
        let c = build_cartan(CartanType::A, 1).unwrap();
        let g = chevalley_constants(&c).unwrap();
        let (e, f, h) = (g.simple_e[0], g.simple_f[0], 0);
        assert_eq!(g.table.get(e, f).unwrap(), &Lin::basis(h));
        assert_eq!(g.table.get(h, e).unwrap(), &Lin::term(e, q(2)));
        assert_eq!(g.basis.len(), 3);
    }

    #[test]
    fn a2_chevalley_unit_constant() {
        let c = build_cartan(CartanType::A, 2).unwrap();
        let g = chevalley_constants(&c).unwrap();
        let v = g.table.get(g.simple_e[0], g.simple_e[1]).unwrap();
        assert_eq!(v.len(), 1);
        let (k, coef) = v.iter().next().unwrap();
        assert_eq!(g.basis.elements[*k].weight, vec![1, 1]);
        assert_eq!(num_traits::Signed::abs(coef), Q::one());
    }

    #[test]
    fn chevalley_constants_are_integral_and_jacobi() {
        for (t, r) in [(CartanType::B, 2), (CartanType::G, 2), (CartanType::C, 3), (CartanType::A, 3)] {
            let c = build_cartan(t, r).unwrap();
            let g = chevalley_constants(&c).unwrap();
            assert_eq!(g.basis.len(), c.roots().len() + r);
            let n = g.basis.len();
            for a in 0..n {
                for b in 0..n {
                    let v = g.table.get(a, b).unwrap();
                    assert!(v.all_integral(), "{t}{r}: [{},{}] = {v:?}", g.basis.name(a), g.basis.name(b));
                    let w = g.table.get(b, a).unwrap();
                    assert_eq!(v, &w.neg());
                }
            }
            for a in 0..n {
                for b in 0..n {
                    for cc in 0..n {
                        let (x, y, z) = (Lin::basis(a), Lin::basis(b), Lin::basis(cc));
                        let lhs = g.bracket(&g.bracket(&x, &y), &z);
                        let mut rhs = g.bracket(&x, &g.bracket(&y, &z));
                        rhs.sub(&g.bracket(&y, &g.bracket(&x, &z)));
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn non_root_sum_brackets_vanish() {
        let c = build_cartan(CartanType::A, 2).unwrap();
        let g = chevalley_constants(&c).unwrap();
        let roots = c.roots();
        for a in g.basis.elements.iter().enumerate().skip(2) {
            for b in g.basis.elements.iter().enumerate().skip(2) {
                let s: Vec<i64> = a.1.weight.iter().zip(&b.1.weight).map(|(x, y)| x + y).collect();
                if s.iter().any(|&x| x != 0) && !roots.contains(&s) {
                    assert!(g.table.get(a.0, b.0).unwrap().is_zero());
                }
            }
        }
    }

    #[test]
    fn a1_fundamental_local_part() {
        let alg = local(CartanType::A, 1, vec![1]);
        assert_eq!(alg.dim1(), 2);
        assert_eq!(alg.dim0(), 4);
        // ⟦L, e₀⟧ = e₀ and ⟦e₀, f₀⟧ = h₀
        let e0 = Lin::basis(alg.e(0));
        assert_eq!(alg.bracket(&alg.l, &e0).unwrap(), e0);
        assert_eq!(alg.bracket_basis(alg.e(0), alg.f(0)).unwrap(), &Lin::basis(0));
        assert!(alg.bracket_basis(alg.e(0), alg.e(0)).is_err());
        // (ad e₁)² e₀ lies outside the weight spaces: e₁ acts as zero on the top vector.
        let top = alg.bracket_basis(alg.e(1), alg.e(0)).unwrap().clone();
        assert!(alg.bracket(&Lin::basis(alg.e(1)), &top).unwrap().is_zero());
    }

    #[test]
    fn pairing_examples() {
        let alg = local(CartanType::A, 1, vec![1]);
        assert_eq!(alg.pair_basis(alg.f(0), alg.e(0)).unwrap(), -Q::one());
        assert_eq!(alg.pair_basis(alg.e(0), alg.f(0)).unwrap(), Q::one());
        let x = alg.bracket_basis(alg.f(1), alg.f(0)).unwrap().clone();
        let y = alg.bracket_basis(alg.e(1), alg.e(0)).unwrap().clone();
        assert_eq!(alg.pair(&x, &y).unwrap(), Q::one());
        let top = alg.basis.plus_range().last().unwrap();
        assert!(alg.pair_basis(alg.f(0), top).unwrap().is_zero());
        assert!(alg.pair_basis(alg.e(0), alg.e(0)).is_err());
    }

    fn check_structure(alg: &LocalLie) {
        let n = alg.basis.len();
        let defined = |a: usize, b: usize| local_defined(alg.basis.degree(a), alg.basis.degree(b));
        // graded antisymmetry
        for a in 0..n {
            for b in 0..n {
                if !defined(a, b) {
                    continue;
                }
                let s = -parity_sign(alg.basis.odd(a), alg.basis.odd(b));
                assert_eq!(alg.bracket_basis(a, b).unwrap(), &alg.bracket_basis(b, a).unwrap().scaled(&s));
            }
        }
        // Jacobi on every defined triple
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let (da, db, dc) = (alg.basis.degree(a), alg.basis.degree(b), alg.basis.degree(c));
                    let ok = local_defined(da, db)
                        && local_defined(db, dc)
                        && local_defined(da, dc)
                        && local_defined(da + db, dc);
                    if !ok {
                        continue;
                    }
                    let (x, y, z) = (Lin::basis(a), Lin::basis(b), Lin::basis(c));
                    let lhs = alg.bracket(&alg.bracket(&x, &y).unwrap(), &z).unwrap();
                    let mut rhs = alg.bracket(&x, &alg.bracket(&y, &z).unwrap()).unwrap();
                    let s = parity_sign(alg.basis.odd(a), alg.basis.odd(b));
                    rhs.add_scaled(&alg.bracket(&y, &alg.bracket(&x, &z).unwrap()).unwrap(), &-s);
                    assert_eq!(lhs, rhs, "Jacobi {} {} {}", alg.basis.name(a), alg.basis.name(b), alg.basis.name(c));
                }
            }
        }
        // invariance ⟨⟦x₋₁,y₀⟧|z₁⟩ = ⟨x₋₁|⟦y₀,z₁⟧⟩ and on 𝓑₀ too
        for x in 0..n {
            for y in alg.basis.zero_range() {
                for z in 0..n {
                    if alg.basis.degree(x) + alg.basis.degree(z) != 0 {
                        continue;
                    }
                    let xy = alg.bracket_basis(x, y).unwrap();
                    let yz = alg.bracket_basis(y, z).unwrap();
                    let lhs: Q = xy.iter().map(|(k, c)| c * alg.form_basis(*k, z)).sum();
                    let rhs: Q = yz.iter().map(|(k, c)| c * alg.form_basis(x, *k)).sum();
                    assert_eq!(lhs, rhs);
                }
            }
        }
        // graded symmetry
        for (&(i, j), v) in &alg.form.entries {
            let s = parity_sign(alg.basis.odd(i), alg.basis.odd(j));
            assert_eq!(&alg.form_basis(j, i), &(v * s));
        }
        // ⟨h_I|h_J⟩ = B_IJ ⟨e_J|f_J⟩ = B_JI ⟨e_I|f_I⟩
        let r1 = alg.rank() + 1;
        for i in 0..r1 {
            for j in 0..r1 {
                let hij = alg.form_basis(i, j);
                assert_eq!(hij, &alg.ext.b[i][j] * alg.form_basis(alg.e(j), alg.f(j)));
                assert_eq!(hij, &alg.ext.b[j][i] * alg.form_basis(alg.e(i), alg.f(i)));
            }
        }
        // [L, x] = deg(x) x
        for x in 0..n {
            let v = alg.bracket(&alg.l, &Lin::basis(x)).unwrap();
            assert_eq!(v, Lin::term(x, q(alg.basis.degree(x) as i64)));
        }
        // nondegenerate pairing 𝓑₋₁ × 𝓑₁
        let rows: Vec<Lin<usize>> = alg
            .basis
            .minus_range()
            .map(|x| Lin::from_terms(alg.basis.plus_range().map(|y| (y, alg.form_basis(x, y)))))
            .collect();
        let mut span = EchelonSpan::new();
        for r in &rows {
            span.insert(r);
        }
        assert_eq!(span.dim(), alg.dim1());
    }

    #[test]
    fn structure_identities_small_cases() {
        check_structure(&local(CartanType::A, 1, vec![1]));
        check_structure(&local(CartanType::A, 1, vec![2]));
        check_structure(&local(CartanType::A, 2, vec![1, 0]));
        check_structure(&local(CartanType::B, 2, vec![1, 0]));
        check_structure(&local(CartanType::A, 2, vec![1, 1]));
    }

    #[test]
    fn module_dimensions() {
        for r in 1..=4 {
            let mut l = vec![0; r];
            l[0] = 1;
            assert_eq!(local(CartanType::A, r, l).dim1(), r + 1);
        }
        for r in 2..=4 {
            let mut l = vec![0; r];
            l[0] = 1;
            assert_eq!(local(CartanType::B, r, l).dim1(), 2 * r + 1);
        }
        // adjoint-type weight has a zero-weight space of dimension r
        let adj = local(CartanType::A, 2, vec![1, 1]);
        assert_eq!(adj.dim1(), 8);
    }

    #[test]
    fn prop41_examples() {
        let rep = prop41_scan(&local(CartanType::A, 2, vec![1, 0])).unwrap();
        assert!(rep.all_zero);
        assert_eq!(rep.entries.len(), 2);
        let rep = prop41_scan(&local(CartanType::A, 1, vec![2])).unwrap();
        assert!(!rep.all_zero);
        assert_eq!(rep.nonzero[0].root, vec![1, 1]);
        assert_eq!(rep.nonzero[0].factor, "-1");
        assert_eq!(rep.nonzero[0].bracket, "(-2)*e1");
    }
}
