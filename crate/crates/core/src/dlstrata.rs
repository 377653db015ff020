//! Orthogonal geometry over finite fields: isotropic subspaces, the loci S_d and
//! S♯_d, component labels, Frobenius closures and fixed points of isometries.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde_json::{json, Value};

use crate::arith::fq::{field, Embedding, FiniteField};
use crate::arith::fqpoly::FqPoly;
use crate::error::{Budget, Error, Result};
use crate::lattice::combinations;
use crate::linalg::fqmat::{self, FMat};

/// Nondegenerate symmetric bilinear form over F_p (entries are the Gram of [ , ]).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FqQuadSpace {
    pub p: u64,
    pub m: usize,
    pub gram: FMat,
}

impl FqQuadSpace {
    pub fn new(p: u64, gram: FMat) -> Result<Self> {
        crate::arith::check_odd_prime(p)?;
        let m = gram.len();
        if m == 0 || gram.iter().any(|r| r.len() != m) {
            return Err(Error::invalid("gram must be square and nonempty"));
        }
        let gram: FMat = gram.into_iter().map(|r| r.into_iter().map(|x| x % p).collect()).collect();
        if (0..m).any(|i| (0..m).any(|j| gram[i][j] != gram[j][i])) {
            return Err(Error::invalid("gram must be symmetric"));
        }
        if fqmat::det(&field(p, 1), &gram) == 0 {
            return Err(Error::invalid("gram is degenerate over F_p"));
        }
        Ok(FqQuadSpace { p, m, gram })
    }

    pub fn det(&self) -> u64 {
        fqmat::det(&field(self.p, 1), &self.gram)
    }

    /// Whether an even-dimensional space is split over F_{p^k}: (−1)^{m/2}·det is a square.
    pub fn is_split_at(&self, k: u32) -> bool {
        assert!(self.m % 2 == 0);
        let f = field(self.p, k);
        let mut d = self.det();
        if (self.m / 2) % 2 == 1 {
            d = f.neg(d);
        }
        f.is_square(d)
    }

    /// Dimension of maximal isotropic subspaces over F_{p^k}.
    pub fn max_isotropic_dim(&self, k: u32) -> usize {
        if self.m % 2 == 1 {
            (self.m - 1) / 2
        } else if self.is_split_at(k) {
            self.m / 2
        } else {
            self.m / 2 - 1
        }
    }

    /// Witt index over F_p, found by enumeration.
    pub fn witt_index(&self) -> usize {
        let mut r = 0;
        while r < self.m / 2 {
            match enumerate_isotropic(self, r + 1, 1, u128::MAX) {
                Ok(v) if !v.is_empty() => r += 1,
                _ => break,
            }
        }
        r
    }

    pub fn to_json(&self) -> Value {
        json!({"p": self.p, "gram": self.gram})
    }
}

/// Subspace of F_{p^k}^m given by its reduced row echelon basis.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FqSubspace {
    pub p: u64,
    pub k: u32,
    pub rows: FMat,
}

impl FqSubspace {
    pub fn from_rows(p: u64, k: u32, mut rows: FMat) -> Self {
        let f = field(p, k);
        fqmat::rref(&f, &mut rows);
        FqSubspace { p, k, rows }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn field(&self) -> Arc<FiniteField> {
        field(self.p, self.k)
    }

    /// σ(L): coordinate-wise p-th power (the echelon form is preserved).
    pub fn frobenius(&self) -> FqSubspace {
        self.frobenius_pow(1)
    }

    pub fn frobenius_pow(&self, j: u32) -> FqSubspace {
        let f = self.field();
        let rows = self.rows.iter().map(|r| r.iter().map(|&x| f.frobenius_pow(x, j)).collect()).collect();
        FqSubspace { p: self.p, k: self.k, rows }
    }

    pub fn sum(&self, o: &FqSubspace) -> FqSubspace {
        let mut rows = self.rows.clone();
        rows.extend(o.rows.iter().cloned());
        FqSubspace::from_rows(self.p, self.k, rows)
    }

    pub fn intersection_dim(&self, o: &FqSubspace) -> usize {
        self.dim() + o.dim() - self.sum(o).dim()
    }

    /// A ∩ B = (A^⊥ + B^⊥)^⊥ for a nondegenerate form.
    pub fn intersect(&self, o: &FqSubspace, space: &FqQuadSpace) -> FqSubspace {
        self.perp(space).sum(&o.perp(space)).perp(space)
    }

    pub fn contains(&self, o: &FqSubspace) -> bool {
        self.sum(o).dim() == self.dim()
    }

    pub fn is_isotropic(&self, space: &FqQuadSpace) -> bool {
        let f = self.field();
        self.rows.iter().enumerate().all(|(i, a)| self.rows[i..].iter().all(|b| fqmat::bilinear(&f, &space.gram, a, b) == 0))
    }

    /// Orthogonal complement with respect to `space`.
    pub fn perp(&self, space: &FqQuadSpace) -> FqSubspace {
        let f = self.field();
        if self.rows.is_empty() {
            return FqSubspace::from_rows(self.p, self.k, fqmat::identity(space.m));
        }
        let eqs = fqmat::mul(&f, &self.rows, &space.gram);
        FqSubspace::from_rows(self.p, self.k, fqmat::kernel(&f, &eqs, space.m))
    }

    pub fn to_json(&self) -> Value {
        let f = self.field();
        json!({
            "k": self.k,
            "rows": self.rows.iter().map(|r| r.iter().map(|&x| f.to_elt(x)).collect::<Vec<_>>()).collect::<Vec<_>>(),
        })
    }
}

/// All totally isotropic r-dimensional subspaces over F_{p^k}, in canonical echelon order.
pub fn enumerate_isotropic(space: &FqQuadSpace, r: usize, k: u32, cap: u128) -> Result<Vec<FqSubspace>> {
    let f = field(space.p, k);
    let m = space.m;
    let mut budget = Budget::new(cap);
    let mut out = Vec::new();
    if r == 0 {
        return Ok(vec![FqSubspace { p: space.p, k, rows: vec![] }]);
    }
    if r > m {
        return Ok(out);
    }
    for pivots in combinations(m, r) {
        let mut rows: FMat = Vec::with_capacity(r);
        fill_rows(space, &f, &pivots, &mut rows, &mut budget, &mut out)?;
    }
    out.sort();
    Ok(out)
}

fn fill_rows(
    space: &FqQuadSpace,
    f: &FiniteField,
    pivots: &[usize],
    rows: &mut FMat,
    budget: &mut Budget,
    out: &mut Vec<FqSubspace>,
) -> Result<()> {
    let i = rows.len();
    if i == pivots.len() {
        out.push(FqSubspace { p: space.p, k: f.k, rows: rows.clone() });
        return Ok(());
    }
    let m = space.m;
    let free: Vec<usize> = (pivots[i] + 1..m).filter(|c| !pivots.contains(c)).collect();
    let total = (f.q as u128).pow(free.len() as u32);
    let mut v = vec![0u64; m];
    v[pivots[i]] = 1;
    for idx in 0..total {
        budget.charge(1)?;
        let mut t = idx;
        for &c in &free {
            v[c] = (t % f.q as u128) as u64;
            t /= f.q as u128;
        }
        if fqmat::bilinear(f, &space.gram, &v, &v) != 0 {
            continue;
        }
        if rows.iter().any(|w| fqmat::bilinear(f, &space.gram, w, &v) != 0) {
            continue;
        }
        rows.push(v.clone());
        fill_rows(space, f, pivots, rows, budget, out)?;
        rows.pop();
    }
    Ok(())
}

/// Component label: +1 or −1.
pub type Label = i8;

/// Maximal isotropic subspaces of an even-dimensional space with component labels relative to the first.
pub fn max_isotropic_with_component(space: &FqQuadSpace, k: u32, cap: u128) -> Result<Vec<(FqSubspace, Label)>> {
    if space.m % 2 != 0 {
        return Err(Error::invalid("component labels need an even-dimensional space"));
    }
    let d = space.m / 2;
    if !space.is_split_at(k) {
        return Ok(vec![]);
    }
    let all = enumerate_isotropic(space, d, k, cap)?;
    let Some(reference) = all.first().cloned() else { return Ok(vec![]) };
    Ok(all
        .into_iter()
        .map(|l| {
            let lab = if l.intersection_dim(&reference) % 2 == d % 2 { 1 } else { -1 };
            (l, lab)
        })
        .collect())
}

fn check_maximal(l: &FqSubspace, space: &FqQuadSpace, d: usize) -> Result<()> {
    if l.dim() != d || !l.is_isotropic(space) {
        return Err(Error::invalid("subspace is not maximal isotropic"));
    }
    Ok(())
}

/// rk(L ∩ σL) = d − 1 in a 2d-dimensional space.
pub fn in_s_sharp(l: &FqSubspace, space: &FqQuadSpace) -> Result<bool> {
    if space.m % 2 != 0 {
        return Err(Error::invalid("S♯ lives in an even-dimensional space"));
    }
    let d = space.m / 2;
    check_maximal(l, space, d)?;
    let r = l.intersection_dim(&l.frobenius());
    if r == d && !space.is_split_at(1) {
        return Err(Error::Internal("σ-stable Lagrangian in a non-split space".into()));
    }
    Ok(r + 1 == d)
}

/// rk(L ∩ σL) ≥ d − 2 in a (2d−1)-dimensional space.
pub fn in_s(l: &FqSubspace, space: &FqQuadSpace) -> Result<bool> {
    if space.m % 2 != 1 {
        return Err(Error::invalid("S lives in an odd-dimensional space"));
    }
    let d = (space.m + 1) / 2;
    check_maximal(l, space, d - 1)?;
    Ok(l.intersection_dim(&l.frobenius()) + 2 >= d)
}

/// Orthogonal decomposition Ω♯ = Ω ⊕ l for an anisotropic F_p-rational vector.
#[derive(Clone, Debug)]
pub struct OdevSplit {
    pub line: Vec<u64>,
    /// Rows: an F_p-basis of Ω = line^⊥ inside Ω♯.
    pub omega_basis: FMat,
    pub omega: FqQuadSpace,
}

impl OdevSplit {
    /// The first standard basis vector, or sum of two, with nonzero square length.
    pub fn new(space: &FqQuadSpace) -> Result<Self> {
        let f = field(space.p, 1);
        let m = space.m;
        let mut candidates: Vec<Vec<u64>> = (0..m).map(|i| (0..m).map(|j| u64::from(i == j)).collect()).collect();
        for i in 0..m {
            for j in i + 1..m {
                candidates.push((0..m).map(|t| u64::from(t == i || t == j)).collect());
            }
        }
        let line = candidates
            .into_iter()
            .find(|v| fqmat::bilinear(&f, &space.gram, v, v) != 0)
            .ok_or_else(|| Error::Internal("no anisotropic vector".into()))?;
        let eq = vec![fqmat::mul_vec(&f, &space.gram, &line)];
        let omega_basis = fqmat::kernel(&f, &eq, m);
        let g = fqmat::mul(&f, &fqmat::mul(&f, &omega_basis, &space.gram), &fqmat::transpose(&omega_basis));
        let omega = FqQuadSpace::new(space.p, g)?;
        Ok(OdevSplit { line, omega_basis, omega })
    }

    /// L♯ ↦ L♯ ∩ Ω, in Ω coordinates.
    pub fn map(&self, l: &FqSubspace, space: &FqQuadSpace) -> FqSubspace {
        let f = l.field();
        let gl = fqmat::mul_vec(&f, &space.gram, &self.line);
        // coefficient vectors c with (Σ c_i row_i)·G·line = 0
        let vals: Vec<u64> = l.rows.iter().map(|r| r.iter().zip(&gl).fold(0, |a, (&x, &y)| f.add(a, f.mul(x, y)))).collect();
        let ker = fqmat::kernel(&f, &vec![vals], l.dim());
        let vecs: FMat = ker.iter().map(|c| combine(&f, c, &l.rows)).collect();
        // express in the Ω basis: solve coords · omega_basis = v
        let bt = fqmat::transpose(&self.omega_basis);
        let coords: FMat = vecs.iter().map(|v| solve_left(&f, &bt, v).expect("vector lies in Ω")).collect();
        FqSubspace::from_rows(l.p, l.k, coords)
    }

    /// The line l as a level-k subspace of Ω♯.
    pub fn line_subspace(&self, p: u64, k: u32) -> FqSubspace {
        FqSubspace::from_rows(p, k, vec![self.line.clone()])
    }
}

fn combine(f: &FiniteField, c: &[u64], rows: &FMat) -> Vec<u64> {
    let m = rows.first().map_or(0, |r| r.len());
    let mut v = vec![0u64; m];
    for (ci, r) in c.iter().zip(rows) {
        if *ci == 0 {
            continue;
        }
        for (x, &y) in v.iter_mut().zip(r) {
            *x = f.add(*x, f.mul(*ci, y));
        }
    }
    v
}

/// Solve A x = b for a full-column-rank A.
fn solve_left(f: &FiniteField, a: &FMat, b: &[u64]) -> Option<Vec<u64>> {
    let n = a.first().map_or(0, |r| r.len());
    let mut aug: FMat = a.iter().zip(b).map(|(r, &x)| r.iter().copied().chain([x]).collect()).collect();
    let piv = fqmat::rref(f, &mut aug);
    if piv.contains(&n) {
        return None;
    }
    let mut x = vec![0u64; n];
    for (i, &c) in piv.iter().enumerate() {
        x[c] = aug[i][n];
    }
    Some(x)
}

/// d_min with L + σL + … + σ^{d_min}L σ-stable, and that stable subspace.
pub fn frobenius_closure(l: &FqSubspace, k_cap: usize) -> Result<(usize, FqSubspace)> {
    let mut w = l.clone();
    let mut s = l.clone();
    for j in 0..=k_cap {
        if w.frobenius() == w {
            return Ok((j, w));
        }
        s = s.frobenius();
        w = w.sum(&s);
    }
    Err(Error::Internal("Frobenius closure did not stabilize".into()))
}

/// Type label dim U − dim U^⊥ for U = W + W^⊥.
pub fn closure_type_label(w: &FqSubspace, space: &FqQuadSpace) -> usize {
    let u = w.sum(&w.perp(space));
    u.dim() - u.perp(space).dim()
}

/// Rank-degeneration witness: dim(L + σL + … + σ^{i+1}L) ≤ dim L + i.
pub fn closure_witness(l: &FqSubspace, i: usize) -> bool {
    let mut w = l.clone();
    let mut s = l.clone();
    for _ in 0..=i {
        s = s.frobenius();
        w = w.sum(&s);
    }
    w.dim() <= l.dim() + i
}

/// Partition of S♯(F_{p^k}) by Frobenius-closure depth.
#[derive(Clone, Debug)]
pub struct Stratification {
    pub k: u32,
    pub points: usize,
    /// d_min → (count, type labels observed)
    pub strata: BTreeMap<usize, (usize, BTreeSet<usize>)>,
    pub closure_ok: bool,
    /// Odd-side labels equal 2j+1 with j < d.
    pub odd_labels_ok: bool,
    pub odd_labels: BTreeMap<usize, usize>,
    /// j = d_min − 1 exactly when ℓ lies in the stable closure, else j = d_min.
    pub line_rule_ok: bool,
}

impl Stratification {
    pub fn to_json(&self) -> Value {
        json!({
            "k": self.k,
            "points": self.points,
            "strata": self.strata.iter().map(|(d, (c, labels))| json!({"d_min": d, "count": c, "type_labels": labels})).collect::<Vec<_>>(),
            "odd_type_labels": self.odd_labels.iter().map(|(t, c)| json!({"type": t, "count": c})).collect::<Vec<_>>(),
            "closure_ok": self.closure_ok,
            "odd_labels_ok": self.odd_labels_ok,
            "line_rule_ok": self.line_rule_ok,
        })
    }
}

pub fn stratify(space: &FqQuadSpace, k: u32, cap: u128) -> Result<Stratification> {
    if space.m % 2 != 0 {
        return Err(Error::invalid("stratification needs an even-dimensional space"));
    }
    if space.is_split_at(1) {
        return Err(Error::invalid("stratification needs a non-split form"));
    }
    let d = space.m / 2;
    let split = OdevSplit::new(space)?;
    let line = split.line_subspace(space.p, k);
    let pts: Vec<FqSubspace> = max_isotropic_with_component(space, k, cap)?
        .into_iter()
        .map(|(l, _)| l)
        .filter(|l| in_s_sharp(l, space).unwrap_or(false))
        .collect();
    let mut strata: BTreeMap<usize, (usize, BTreeSet<usize>)> = BTreeMap::new();
    let mut depth = Vec::with_capacity(pts.len());
    let mut odd_ok = true;
    let mut rule_ok = true;
    let mut odd_labels: BTreeMap<usize, usize> = BTreeMap::new();
    for l in &pts {
        let (dm, w) = frobenius_closure(l, 2 * d + 2)?;
        let lab = closure_type_label(&w, space);
        let e = strata.entry(dm).or_default();
        e.0 += 1;
        e.1.insert(lab);
        depth.push(dm);
        // odd side: smallest j with L + … + σ^j L + ℓ σ-stable; label read on its trace in Ω = ℓ^⊥
        let mut wl = l.sum(&line);
        let mut s = l.clone();
        let mut dp = 0;
        while wl.frobenius() != wl {
            s = s.frobenius();
            wl = wl.sum(&s);
            dp += 1;
        }
        let omega = line.perp(space);
        let v = wl.intersect(&omega, space);
        let u = v.sum(&v.perp(space).intersect(&omega, space));
        let odd_label = u.dim() - u.perp(space).intersect(&omega, space).dim();
        let expect = if w.contains(&line) { dm - 1 } else { dm };
        odd_ok &= odd_label == 2 * dp + 1 && dp < d && dm >= 1;
        rule_ok &= dp == expect;
        *odd_labels.entry(2 * dp + 1).or_default() += 1;
    }
    let mut closure_ok = true;
    for i in 0..=d {
        for (l, &dm) in pts.iter().zip(&depth) {
            closure_ok &= closure_witness(l, i) == (dm <= i);
        }
    }
    // type labels must be exactly 2·d_min
    closure_ok &= strata.iter().all(|(dm, (_, labels))| labels.iter().all(|&t| t == 2 * dm));
    Ok(Stratification { k, points: pts.len(), strata, closure_ok, odd_labels_ok: odd_ok, odd_labels, line_rule_ok: rule_ok })
}

impl OdevSplit {
    /// Embed an Ω-coordinate subspace back into Ω♯ coordinates.
    pub fn omega_basis_subspace(&self, l: &FqSubspace, k: u32) -> FqSubspace {
        let f = field(l.p, k);
        let rows: FMat = l.rows.iter().map(|c| combine(&f, c, &self.omega_basis)).collect();
        FqSubspace::from_rows(l.p, k, rows)
    }
}

/// Point counts |S♯±(F_{p^k})| and |S_d(F_{p^k})| plus injectivity of L♯ ↦ L♯ ∩ Ω on each component.
#[derive(Clone, Debug)]
pub struct OdevComparison {
    pub k: u32,
    pub plus: usize,
    pub minus: usize,
    pub s_odd: usize,
    pub injective: bool,
    pub image_in_s: bool,
}

impl OdevComparison {
    pub fn agrees(&self) -> bool {
        self.plus == self.s_odd && self.minus == self.s_odd && self.injective && self.image_in_s
    }

    pub fn to_json(&self) -> Value {
        json!({"k": self.k, "s_sharp_plus": self.plus, "s_sharp_minus": self.minus, "s_odd": self.s_odd,
               "injective": self.injective, "image_in_s": self.image_in_s, "agrees": self.agrees()})
    }
}

pub fn odev_compare(space: &FqQuadSpace, k: u32, cap: u128) -> Result<OdevComparison> {
    if space.m % 2 != 0 || space.is_split_at(1) {
        return Err(Error::invalid("the odd-side comparison needs an even-dimensional non-split form"));
    }
    let d = space.m / 2;
    let split = OdevSplit::new(space)?;
    let labelled = max_isotropic_with_component(space, k, cap)?;
    let mut plus = BTreeSet::new();
    let mut minus = BTreeSet::new();
    let (mut np, mut nm) = (0, 0);
    let mut image_in_s = true;
    for (l, lab) in labelled {
        if !in_s_sharp(&l, space)? {
            continue;
        }
        let img = split.map(&l, space);
        image_in_s &= in_s(&img, &split.omega).unwrap_or(false);
        if lab > 0 {
            np += 1;
            plus.insert(img);
        } else {
            nm += 1;
            minus.insert(img);
        }
    }
    let s_odd = enumerate_isotropic(&split.omega, d - 1, k, cap)?
        .into_iter()
        .filter(|l| in_s(l, &split.omega).unwrap_or(false))
        .count();
    Ok(OdevComparison { k, plus: np, minus: nm, s_odd, injective: plus.len() == np && minus.len() == nm, image_in_s })
}

/// A maximal isotropic subspace fixed by ḡ, with its S♯ flag (even spaces only).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct FixedPoint {
    pub subspace: FqSubspace,
    pub in_s_sharp: Option<bool>,
}

/// Check that ḡ (over F_p) is an isometry.
pub fn check_isometry(space: &FqQuadSpace, gbar: &FMat) -> Result<()> {
    let f = field(space.p, 1);
    if gbar.len() != space.m || gbar.iter().any(|r| r.len() != space.m) {
        return Err(Error::invalid("gbar has the wrong shape"));
    }
    let lhs = fqmat::mul(&f, &fqmat::mul(&f, &fqmat::transpose(gbar), &space.gram), gbar);
    if lhs != space.gram {
        return Err(Error::invalid("gbar does not preserve the form"));
    }
    Ok(())
}

/// Smallest multiple K of k over which the characteristic polynomial of ḡ splits.
pub fn splitting_level(gbar: &FMat, p: u64, k: u32) -> Result<u32> {
    let cp = fqmat::charpoly(&field(p, 1), gbar);
    for j in 1..=64u32 {
        let kk = k * j;
        if p.checked_pow(kk).is_none() {
            break;
        }
        let f = field(p, kk);
        let poly = FqPoly::new(cp.clone());
        let total: u32 = poly.roots(&f).iter().map(|&r| poly.root_multiplicity(&f, r)).sum();
        if total as usize == gbar.len() {
            return Ok(kk);
        }
    }
    Err(Error::invalid("characteristic polynomial does not split at a representable level"))
}

/// All maximal isotropic L over F_{p^k} with ḡL = L.
pub fn fixed_points(space: &FqQuadSpace, gbar: &FMat, k: u32, cap: u128) -> Result<Vec<FixedPoint>> {
    check_isometry(space, gbar)?;
    let p = space.p;
    let d = space.max_isotropic_dim(k);
    let big_k = splitting_level(gbar, p, k)?;
    let fb = field(p, big_k);
    let cp = FqPoly::new(fqmat::charpoly(&field(p, 1), gbar));
    let roots = cp.roots(&fb);
    let mut budget = Budget::new(cap);
    let mut visited: BTreeSet<FqSubspace> = BTreeSet::new();
    let mut leaves: BTreeSet<FqSubspace> = BTreeSet::new();
    let start = FqSubspace { p, k: big_k, rows: vec![] };
    extend_fixed(space, gbar, &fb, &roots, d, start, &mut visited, &mut leaves, &mut budget)?;
    let emb = if big_k == k { None } else { Some(Embedding::new(field(p, k), fb.clone())) };
    let mut out = Vec::new();
    for l in leaves {
        let stable = l.rows.iter().all(|r| r.iter().all(|&x| fb.in_subfield(x, k)));
        if !stable {
            continue;
        }
        let rows: FMat = match &emb {
            None => l.rows.clone(),
            Some(e) => l.rows.iter().map(|r| r.iter().map(|&x| e.down(x).expect("entry in subfield")).collect()).collect(),
        };
        let sub = FqSubspace { p, k, rows };
        let flag = if space.m % 2 == 0 && d == space.m / 2 { Some(in_s_sharp(&sub, space)?) } else { None };
        out.push(FixedPoint { subspace: sub, in_s_sharp: flag });
    }
    out.sort();
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn extend_fixed(
    space: &FqQuadSpace,
    gbar: &FMat,
    f: &FiniteField,
    roots: &[u64],
    d: usize,
    w: FqSubspace,
    visited: &mut BTreeSet<FqSubspace>,
    leaves: &mut BTreeSet<FqSubspace>,
    budget: &mut Budget,
) -> Result<()> {
    if w.dim() == d {
        leaves.insert(w);
        return Ok(());
    }
    let m = space.m;
    let e = w.dim();
    for &lam in roots {
        // unknowns (v, c): (ḡ − λ)v − Σ c_i w_i = 0 and w_iᵀ G v = 0
        let mut eqs: FMat = Vec::with_capacity(m + e);
        for r in 0..m {
            let mut row = vec![0u64; m + e];
            for c in 0..m {
                let g = gbar[r][c] % f.p;
                row[c] = if r == c { f.sub(g, lam) } else { g };
            }
            for (i, wi) in w.rows.iter().enumerate() {
                row[m + i] = f.neg(wi[r]);
            }
            eqs.push(row);
        }
        let wg = fqmat::mul(f, &w.rows, &space.gram);
        for r in &wg {
            let mut row = r.clone();
            row.extend(std::iter::repeat(0).take(e));
            eqs.push(row);
        }
        let ker = fqmat::kernel(f, &eqs, m + e);
        let vs: FMat = ker.iter().map(|c| c[..m].to_vec()).collect();
        let s = FqSubspace::from_rows(f.p, f.k, vs);
        // complement of W inside S
        let mut comp: FMat = Vec::new();
        let mut acc = w.clone();
        for r in &s.rows {
            let bigger = acc.sum(&FqSubspace { p: f.p, k: f.k, rows: vec![r.clone()] });
            if bigger.dim() > acc.dim() {
                comp.push(r.clone());
                acc = bigger;
            }
        }
        let ed = comp.len();
        if ed == 0 {
            continue;
        }
        let q = f.q as u128;
        let count = (q.pow(ed as u32) - 1) / (q - 1);
        budget.charge(count)?;
        for lead in 0..ed {
            let tail = ed - lead - 1;
            for idx in 0..q.pow(tail as u32) {
                let mut coef = vec![0u64; ed];
                coef[lead] = 1;
                let mut t = idx;
                for c in coef.iter_mut().skip(lead + 1) {
                    *c = (t % q) as u64;
                    t /= q;
                }
                let v = combine(f, &coef, &comp);
                if fqmat::bilinear(f, &space.gram, &v, &v) != 0 {
                    continue;
                }
                let next = w.sum(&FqSubspace { p: f.p, k: f.k, rows: vec![v] });
                if visited.insert(next.clone()) {
                    extend_fixed(space, gbar, f, roots, d, next, visited, leaves, budget)?;
                }
            }
        }
    }
    Ok(())
}

/// Whether ḡ is regular (its minimal polynomial equals its characteristic polynomial).
pub fn is_regular(gbar: &FMat, p: u64) -> bool {
    let f = field(p, 1);
    let m = gbar.len();
    // the Krylov space of some vector has full dimension iff ḡ is cyclic; over small fields test
    // through the minimal polynomial degree instead of searching vectors
    let mut powers: Vec<Vec<u64>> = Vec::new();
    let mut cur = fqmat::identity(m);
    for _ in 0..=m {
        powers.push(cur.iter().flatten().copied().collect());
        cur = fqmat::mul(&f, &cur, gbar);
    }
    // rank of {I, ḡ, …, ḡ^{m-1}} equals m iff deg(minpoly) = m
    fqmat::rank(&f, &powers[..m].to_vec()) == m
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hyperbolic(p: u64) -> FqQuadSpace {
        FqQuadSpace::new(p, vec![vec![0, 1], vec![1, 0]]).unwrap()
    }

    /// Norm form of F_{p²} scaled: diag(1, −u) with u a non-residue.
    fn anisotropic(p: u64) -> FqQuadSpace {
        let u = crate::arith::least_nonresidue(p);
        FqQuadSpace::new(p, vec![vec![2, 0], vec![0, (2 * (p - u)) % p]]).unwrap()
    }

    fn nonsplit4(p: u64) -> FqQuadSpace {
        let u = crate::arith::least_nonresidue(p);
        FqQuadSpace::new(p, vec![vec![0, 1, 0, 0], vec![1, 0, 0, 0], vec![0, 0, 2, 0], vec![0, 0, 0, (2 * (p - u)) % p]])
            .unwrap()
    }

    fn split4(p: u64) -> FqQuadSpace {
        FqQuadSpace::new(p, vec![vec![0, 1, 0, 0], vec![1, 0, 0, 0], vec![0, 0, 0, 1], vec![0, 0, 1, 0]]).unwrap()
    }

    #[test]
    fn isotropic_line_examples() {
        assert_eq!(enumerate_isotropic(&hyperbolic(3), 1, 1, 1000).unwrap().len(), 2);
        assert_eq!(enumerate_isotropic(&anisotropic(3), 1, 1, 1000).unwrap().len(), 0);
        assert_eq!(enumerate_isotropic(&anisotropic(3), 1, 2, 1000).unwrap().len(), 2);
    }

    #[test]
    fn classical_counts() {
        // isotropic points of a split / non-split quaternary form: (q+1)², (q²+1)
        for p in [3u64, 5] {
            let q = p as usize;
            assert_eq!(enumerate_isotropic(&split4(p), 1, 1, 1 << 20).unwrap().len(), (q + 1) * (q + 1));
            assert_eq!(enumerate_isotropic(&nonsplit4(p), 1, 1, 1 << 20).unwrap().len(), q * q + 1);
        }
    }

    #[test]
    fn components() {
        let s = max_isotropic_with_component(&split4(3), 1, 1 << 20).unwrap();
        assert_eq!(s.len(), 8);
        assert_eq!(s.iter().filter(|x| x.1 > 0).count(), 4);
        assert!(max_isotropic_with_component(&nonsplit4(3), 1, 1 << 20).unwrap().is_empty());
        let ns = max_isotropic_with_component(&nonsplit4(3), 2, 1 << 20).unwrap();
        assert_eq!(ns.len(), 20);
        let labels: BTreeMap<FqSubspace, Label> = ns.iter().cloned().collect();
        for (l, lab) in &ns {
            assert_eq!(labels[&l.frobenius()], -lab);
        }
    }

    #[test]
    fn witt_indices() {
        assert_eq!(hyperbolic(3).witt_index(), 1);
        assert_eq!(anisotropic(3).witt_index(), 0);
        assert_eq!(nonsplit4(3).witt_index(), 1);
        assert_eq!(split4(5).witt_index(), 2);
    }

    #[test]
    fn s_sharp_membership() {
        let lines = enumerate_isotropic(&anisotropic(3), 1, 2, 1000).unwrap();
        for l in &lines {
            assert!(in_s_sharp(l, &anisotropic(3)).unwrap());
        }
        let odd = FqQuadSpace::new(3, vec![vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 2]]).unwrap();
        let l = FqSubspace::from_rows(3, 1, vec![vec![1, 0, 0]]);
        assert!(in_s(&l, &odd).unwrap());
        let not_max = FqSubspace::from_rows(3, 2, vec![]);
        assert!(in_s_sharp(&not_max, &anisotropic(3)).is_err());
    }

    #[test]
    fn closure_examples() {
        let l = FqSubspace::from_rows(3, 2, vec![vec![1, 0, 0]]);
        let (dm, w) = frobenius_closure(&l, 4).unwrap();
        assert_eq!(dm, 0);
        assert_eq!(w, l);
        let lines = enumerate_isotropic(&anisotropic(3), 1, 2, 1000).unwrap();
        let (dm, w) = frobenius_closure(&lines[0], 4).unwrap();
        assert_eq!(dm, 1);
        assert_eq!(w.dim(), 2);
    }

    #[test]
    fn stratification_dim4() {
        let s = stratify(&nonsplit4(3), 2, 1 << 24).unwrap();
        assert_eq!(s.points, 20);
        assert!(s.closure_ok && s.odd_labels_ok && s.line_rule_ok, "{}", s.to_json());
        let s4 = stratify(&nonsplit4(3), 4, 1 << 26).unwrap();
        assert!(s4.strata.contains_key(&2));
        assert!(s4.closure_ok && s4.odd_labels_ok && s4.line_rule_ok, "{}", s4.to_json());
    }

    #[test]
    fn odev_counts() {
        for sp in [anisotropic(3), nonsplit4(3)] {
            let c = odev_compare(&sp, 2, 1 << 24).unwrap();
            assert!(c.agrees(), "{c:?}");
        }
    }

    #[test]
    fn fixed_points_identity() {
        let sp = anisotropic(3);
        let id = fqmat::identity(2);
        let fp = fixed_points(&sp, &id, 2, 1 << 20).unwrap();
        let lines = enumerate_isotropic(&sp, 1, 2, 1000).unwrap();
        assert_eq!(fp.iter().map(|x| x.subspace.clone()).collect::<Vec<_>>(), lines);
        let neg = vec![vec![2, 0], vec![0, 2]];
        let fneg = fixed_points(&sp, &neg, 2, 1 << 20).unwrap();
        assert_eq!(fneg, fp);
        assert!(fixed_points(&sp, &vec![vec![1, 1], vec![0, 1]], 2, 100).is_err());
    }

    #[test]
    fn fixed_points_match_scan() {
        // compare with a direct scan of all Lagrangians for a diagonal isometry of the split form
        let sp = split4(5);
        let g = vec![vec![2, 0, 0, 0], vec![0, 3, 0, 0], vec![0, 0, 4, 0], vec![0, 0, 0, 4]];
        let fp = fixed_points(&sp, &g, 2, 1 << 24).unwrap();
        let f = field(5, 2);
        let scan: Vec<FqSubspace> = enumerate_isotropic(&sp, 2, 2, 1 << 24)
            .unwrap()
            .into_iter()
            .filter(|l| {
                let img: FMat = l.rows.iter().map(|r| fqmat::mul_vec(&f, &g, r)).collect();
                FqSubspace::from_rows(5, 2, img) == *l
            })
            .collect();
        assert_eq!(fp.iter().map(|x| x.subspace.clone()).collect::<Vec<_>>(), scan);
    }

    #[test]
    fn regularity() {
        assert!(!is_regular(&fqmat::identity(2), 3));
        assert!(is_regular(&vec![vec![0, 2], vec![1, 0]], 3));
    }
}
