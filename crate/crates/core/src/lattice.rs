//! Lattices over Z_(p) inside a quadratic space, vertex lattices and their
//! local enumeration.

use std::cmp::Ordering;
use std::sync::Arc;

use num::traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::arith::{mod_int, mod_inv, p_pow, rat, rat_to_string, vp, Rat};
use crate::dlstrata::FqQuadSpace;
use crate::error::{Error, Result};
use crate::linalg::{hermite_padic, is_p_integral, smith_valuations, Mat};
use crate::qspace::{FixedForms, QuadSpace};

/// A full-rank Z_(p)-lattice, stored by its canonical column Hermite form.
#[derive(Clone, Debug)]
pub struct Lattice {
    pub ambient: Arc<QuadSpace>,
    pub basis: Mat,
}

impl PartialEq for Lattice {
    fn eq(&self, o: &Self) -> bool {
        self.basis == o.basis && self.ambient == o.ambient
    }
}

impl Eq for Lattice {}

impl Ord for Lattice {
    fn cmp(&self, o: &Self) -> Ordering {
        self.basis.entries().cmp(o.basis.entries())
    }
}

impl PartialOrd for Lattice {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Lattice {
    /// Lattice generated by the columns of `gens`.
    pub fn new(ambient: Arc<QuadSpace>, gens: &Mat) -> Result<Self> {
        if gens.rows != ambient.dim() {
            return Err(Error::invalid("generator length does not match ambient dimension"));
        }
        let basis = hermite_padic(gens, ambient.p)?;
        Ok(Lattice { ambient, basis })
    }

    pub fn standard(ambient: Arc<QuadSpace>) -> Self {
        let n = ambient.dim();
        Lattice { ambient, basis: Mat::identity(n) }
    }

    pub fn p(&self) -> u64 {
        self.ambient.p
    }

    pub fn dim(&self) -> usize {
        self.basis.cols
    }

    pub fn gram(&self) -> Mat {
        self.ambient.gram_of(&self.basis)
    }

    pub fn dual(&self) -> Lattice {
        let ginv = self.gram().inverse().expect("ambient is nondegenerate");
        Lattice::new(self.ambient.clone(), &self.basis.mul(&ginv)).expect("dual is full rank")
    }

    pub fn scaled(&self, c: &Rat) -> Lattice {
        Lattice::new(self.ambient.clone(), &self.basis.scale(c)).expect("nonzero scaling")
    }

    /// Valuations of the elementary divisors of the Gram matrix.
    pub fn gram_valuations(&self) -> Vec<i64> {
        smith_valuations(&self.gram(), self.p()).expect("nondegenerate")
    }

    pub fn is_vertex(&self) -> bool {
        self.gram_valuations().iter().all(|&v| v == 0 || v == -1)
    }

    /// Type t = length(Λ/Λ^∨) for vertex lattices.
    pub fn vertex_type(&self) -> Option<usize> {
        let v = self.gram_valuations();
        if v.iter().all(|&x| x == 0 || x == -1) {
            Some(v.iter().filter(|&&x| x == -1).count())
        } else {
            None
        }
    }

    /// Whether `o ⊆ self`.
    pub fn contains(&self, o: &Lattice) -> bool {
        let x = self.basis.solve(&o.basis).expect("full-rank basis");
        x.entries().iter().all(|e| is_p_integral(e, self.p()))
    }

    pub fn contains_vector(&self, v: &[Rat]) -> bool {
        let rhs = Mat::from_cols(&[v.to_vec()]);
        let x = self.basis.solve(&rhs).expect("full-rank basis");
        x.entries().iter().all(|e| is_p_integral(e, self.p()))
    }

    pub fn join(&self, o: &Lattice) -> Lattice {
        let mut cols = self.basis.cols_vec();
        cols.extend(o.basis.cols_vec());
        Lattice::new(self.ambient.clone(), &Mat::from_cols(&cols)).expect("full rank")
    }

    pub fn meet(&self, o: &Lattice) -> Lattice {
        self.dual().join(&o.dual()).dual()
    }

    /// Coordinates of `o`'s basis in this lattice's basis.
    pub fn coords_of(&self, o: &Lattice) -> Mat {
        self.basis.solve(&o.basis).expect("full-rank basis")
    }

    pub fn to_json(&self) -> Value {
        json!({
            "basis": self.basis.cols_vec().iter().map(|c| c.iter().map(rat_to_string).collect::<Vec<_>>()).collect::<Vec<_>>(),
        })
    }
}

/// A vertex lattice with its cached type.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct VertexLattice {
    pub lattice: Lattice,
    pub t: usize,
}

impl VertexLattice {
    pub fn from_lattice(l: Lattice) -> Result<Self> {
        let t = l.vertex_type().ok_or_else(|| Error::invalid("not a vertex lattice"))?;
        Ok(VertexLattice { lattice: l, t })
    }

    pub fn to_json(&self) -> Value {
        json!({"type": self.t, "basis": self.lattice.to_json()["basis"]})
    }
}

/// Λ ↦ Λ ⊕ Z_(p)·p⁻¹x₀, from L₀ into L₀♯.
pub fn sharp(l: &Lattice, forms: &FixedForms) -> Result<Lattice> {
    if *l.ambient != *forms.l0 {
        return Err(Error::invalid("lattice does not live in L0"));
    }
    let p = l.p();
    let mut cols = forms.embed.mul(&l.basis).cols_vec();
    cols.push(forms.x0.iter().map(|x| x / rat(p as i64)).collect());
    Lattice::new(forms.l0_sharp.clone(), &Mat::from_cols(&cols))
}

/// Λ′ ↦ Λ′ ∩ L₀ for Λ′ containing p⁻¹x₀.
pub fn unsharp(l: &Lattice, forms: &FixedForms) -> Result<Lattice> {
    if *l.ambient != *forms.l0_sharp {
        return Err(Error::invalid("lattice does not live in L0♯"));
    }
    let p = l.p();
    let px0: Vec<Rat> = forms.x0.iter().map(|x| x / rat(p as i64)).collect();
    if !l.contains_vector(&px0) {
        return Err(Error::NotInSharpImage);
    }
    let sp = &forms.l0_sharp;
    let cols = l.basis.cols_vec();
    let f: Vec<Rat> = cols.iter().map(|c| sp.bil(c, &forms.x0)).collect();
    let i0 = (0..f.len()).filter(|&i| !f[i].is_zero()).min_by_key(|&i| (vp(&f[i], p), i)).unwrap();
    let mut kernel = Vec::new();
    for j in 0..cols.len() {
        if j == i0 {
            continue;
        }
        let c = &f[j] / &f[i0];
        kernel.push(cols[j].iter().zip(&cols[i0]).map(|(a, b)| a - &c * b).collect::<Vec<Rat>>());
    }
    let k = Mat::from_cols(&kernel);
    let coords = forms.embed.solve(&k).ok_or_else(|| Error::Internal("kernel not inside L0".into()))?;
    Lattice::new(forms.l0.clone(), &coords)
}

/// Quotient Λ/Λ^∨ of a vertex lattice with the form p[ , ] mod p.
#[derive(Clone, Debug)]
pub struct QuotientForm {
    pub space: FqQuadSpace,
    /// Indices i of lattice basis vectors whose classes form the quotient basis.
    pub basis_idx: Vec<usize>,
    /// Hermite form of Λ^∨ in Λ-coordinates (pivots 1 or p).
    dual_coords: Mat,
    p: u64,
}

impl QuotientForm {
    /// Quotient coordinates of a vector given in Λ-coordinates (must be p-integral).
    pub fn reduce(&self, c: &[Rat]) -> Result<Vec<u64>> {
        let p = self.p;
        let n = c.len();
        let mut c = c.to_vec();
        if !c.iter().all(|x| is_p_integral(x, p)) {
            return Err(Error::invalid("vector not in the lattice"));
        }
        let mut out = vec![0u64; n];
        for i in (0..n).rev() {
            let piv = &self.dual_coords[(i, i)];
            let f = if piv.is_one() {
                c[i].clone()
            } else {
                let r = mod_int(&c[i], p);
                out[i] = r;
                (&c[i] - rat(r as i64)) / piv
            };
            if !f.is_zero() {
                for r in 0..=i {
                    let t = &f * &self.dual_coords[(r, i)];
                    c[r] -= t;
                }
            }
        }
        Ok(self.basis_idx.iter().map(|&i| out[i]).collect())
    }
}

pub fn quotient_form(l: &Lattice) -> Result<QuotientForm> {
    if !l.is_vertex() {
        return Err(Error::invalid("quotient form needs a vertex lattice"));
    }
    let p = l.p();
    let g = l.gram();
    let ginv = g.inverse().expect("nondegenerate");
    let dual_coords = hermite_padic(&ginv, p)?;
    let basis_idx: Vec<usize> = (0..l.dim()).filter(|&i| !dual_coords[(i, i)].is_one()).collect();
    let pr = rat(p as i64);
    let gram: Vec<Vec<u64>> = basis_idx
        .iter()
        .map(|&a| basis_idx.iter().map(|&b| mod_int(&(&g[(a, b)] * &pr), p)).collect())
        .collect();
    let space = FqQuadSpace::new(p, gram)?;
    Ok(QuotientForm { space, basis_idx, dual_coords, p })
}

/// Number of subgroups of (Z/p²)ⁿ, i.e. candidate lattices in a radius-1 window.
pub fn window_size(n: usize, p: u64) -> u128 {
    let p = p as u128;
    let gauss = |m: usize, k: usize| -> u128 {
        let mut num = 1u128;
        let mut den = 1u128;
        for i in 0..k {
            num *= p.pow((m - i) as u32) - 1;
            den *= p.pow((i + 1) as u32) - 1;
        }
        num / den
    };
    let mut total = 0u128;
    for a in 0..=n {
        for b in 0..=n - a {
            total += p.pow((a * (n - a - b)) as u32) * gauss(n - a, b) * gauss(n, a);
        }
    }
    total
}

/// Every vertex lattice N with pM ⊆ N ⊆ p⁻¹M, canonically sorted.
pub fn enumerate_vertex_near(m: &Lattice, cap: u128) -> Result<Vec<VertexLattice>> {
    let n = m.dim();
    let p = m.p();
    let est = window_size(n, p);
    if est > cap {
        return Err(Error::BudgetExceeded { estimated: est, cap });
    }
    let gm = m.gram();
    let c = (-gm.min_val(p).unwrap_or(0)).max(0);
    let k = (c + 3) as u32;
    let modulus = (p as u128).checked_pow(k).filter(|&x| x < (1u128 << 62)).ok_or_else(|| {
        Error::invalid("Gram matrix valuations too spread for the window enumerator")
    })? as u64;
    let h_scale = p_pow(p, c);
    let h: Vec<Vec<u64>> =
        (0..n).map(|i| (0..n).map(|j| mod_int(&(&gm[(i, j)] * &h_scale), modulus)).collect()).collect();
    let ctx = WindowCtx { n, p, modulus, h, ortho_mod: p.pow(c as u32 + 1), lo: c as u32 + 1 };
    let fvecs: Vec<Vec<u32>> = (0..3usize.pow(n as u32))
        .map(|mut idx| {
            (0..n)
                .map(|_| {
                    let f = (idx % 3) as u32;
                    idx /= 3;
                    f
                })
                .collect()
        })
        .collect();
    let leaves: Vec<(Vec<Vec<i64>>, usize)> = fvecs.par_iter().flat_map_iter(|f| ctx.search(f)).collect();
    let pr = rat(p as i64);
    let mut out: Vec<VertexLattice> = leaves
        .into_par_iter()
        .map(|(x, t)| {
            let xm = Mat::from_rows(x.iter().map(|r| r.iter().map(|&v| rat(v) / &pr).collect()).collect());
            let lat = Lattice::new(m.ambient.clone(), &m.basis.mul(&xm)).expect("full rank");
            VertexLattice { lattice: lat, t }
        })
        .collect();
    out.sort();
    out.dedup();
    Ok(out)
}

struct WindowCtx {
    n: usize,
    p: u64,
    modulus: u64,
    h: Vec<Vec<u64>>,
    ortho_mod: u64,
    lo: u32,
}

impl WindowCtx {
    fn mulm(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.modulus as u128) as u64
    }

    /// xᵀ H y mod p^K.
    fn form(&self, x: &[i64], y: &[i64]) -> u64 {
        let m = self.modulus as i128;
        let mut acc: i128 = 0;
        for i in 0..self.n {
            if x[i] == 0 {
                continue;
            }
            let mut row: i128 = 0;
            for j in 0..self.n {
                if y[j] != 0 {
                    row = (row + self.h[i][j] as i128 * y[j] as i128) % m;
                }
            }
            acc = (acc + x[i] as i128 * row) % m;
        }
        acc.rem_euclid(m) as u64
    }

    fn search(&self, f: &[u32]) -> Vec<(Vec<Vec<i64>>, usize)> {
        let n = self.n;
        let mut x = vec![vec![0i64; n]; n];
        let mut out = Vec::new();
        self.column(f, 0, &mut x, &mut out);
        out
    }

    fn column(&self, f: &[u32], j: usize, x: &mut Vec<Vec<i64>>, out: &mut Vec<(Vec<Vec<i64>>, usize)>) {
        if j == self.n {
            if let Some(t) = self.leaf(x) {
                out.push((x.clone(), t));
            }
            return;
        }
        let p = self.p as i64;
        x[j][j] = p.pow(f[j]);
        let mut y = vec![0i64; self.n];
        y[j] = p.pow(2 - f[j]);
        self.entry(f, j, j as i64 - 1, x, &mut y, out);
        x[j][j] = 0;
    }

    /// Choose X[i][j] for rows i < j, descending, keeping p²e_j inside the span.
    fn entry(
        &self,
        f: &[u32],
        j: usize,
        i: i64,
        x: &mut Vec<Vec<i64>>,
        y: &mut Vec<i64>,
        out: &mut Vec<(Vec<Vec<i64>>, usize)>,
    ) {
        if i < 0 {
            let col: Vec<i64> = (0..self.n).map(|r| x[r][j]).collect();
            for a in 0..=j {
                let ca: Vec<i64> = (0..self.n).map(|r| x[r][a]).collect();
                if self.form(&ca, &col) % self.ortho_mod != 0 {
                    return;
                }
            }
            self.column(f, j + 1, x, out);
            return;
        }
        let i = i as usize;
        let p = self.p as i64;
        let piv = p.pow(f[i]);
        let rest: i64 = (i + 1..j).map(|k| x[i][k] * y[k]).sum();
        for v in 0..piv {
            let s = rest + v * y[j];
            if s % piv != 0 {
                continue;
            }
            x[i][j] = v;
            y[i] = -s / piv;
            self.entry(f, j, i as i64 - 1, x, y, out);
        }
        x[i][j] = 0;
        y[i] = 0;
    }

    /// Type of the candidate when its Gram is vertex, from the Smith form of XᵀHX mod p^K.
    fn leaf(&self, x: &[Vec<i64>]) -> Option<usize> {
        let n = self.n;
        let cols: Vec<Vec<i64>> = (0..n).map(|a| (0..n).map(|r| x[r][a]).collect()).collect();
        let mut a: Vec<Vec<u64>> = (0..n).map(|i| (0..n).map(|j| self.form(&cols[i], &cols[j])).collect()).collect();
        let p = self.p;
        let m = self.modulus;
        let val = |v: u64| -> u32 {
            if v == 0 {
                return u32::MAX;
            }
            let mut v = v;
            let mut e = 0;
            while v % p == 0 {
                v /= p;
                e += 1;
            }
            e
        };
        let mut t = 0;
        for k in 0..n {
            let mut best: Option<(u32, usize, usize)> = None;
            for i in k..n {
                for j in k..n {
                    let v = val(a[i][j]);
                    if v != u32::MAX && best.map_or(true, |(b, _, _)| v < b) {
                        best = Some((v, i, j));
                    }
                }
            }
            let (v, bi, bj) = best?;
            if v > self.lo + 1 || v < self.lo {
                return None;
            }
            if v == self.lo {
                t += 1;
            }
            a.swap(bi, k);
            for row in a.iter_mut() {
                row.swap(bj, k);
            }
            let pv = p.pow(v);
            let unit = a[k][k] / pv;
            let uinv = mod_inv_pk(unit, p, m);
            for i in k + 1..n {
                if a[i][k] == 0 {
                    continue;
                }
                let fct = self.mulm(a[i][k] / pv, uinv);
                for jj in k..n {
                    let s = self.mulm(fct, a[k][jj]);
                    a[i][jj] = (a[i][jj] + m - s) % m;
                }
            }
            for jj in k + 1..n {
                a[k][jj] = 0;
            }
        }
        Some(t)
    }
}

fn mod_inv_pk(u: u64, p: u64, m: u64) -> u64 {
    // Hensel-lift the inverse mod p to mod m = p^K
    let mut inv = mod_inv(u % p, p) as u128;
    let m128 = m as u128;
    let mut cur = p as u128;
    while cur < m128 {
        cur = (cur * cur).min(m128);
        let t = (2 + m128 - (u as u128 * inv) % m128) % m128;
        inv = (inv * t) % m128;
    }
    inv as u64
}

/// All F_p-subspaces of F_pᵈ as row-reduced bases.
pub fn all_subspaces(p: u64, d: usize) -> Vec<Vec<Vec<u64>>> {
    let mut out = vec![vec![]];
    for r in 1..=d {
        for pivots in combinations(d, r) {
            let free: Vec<(usize, usize)> = (0..r)
                .flat_map(|i| (pivots[i] + 1..d).filter(|c| !pivots.contains(c)).map(move |c| (i, c)))
                .collect();
            let total = p.pow(free.len() as u32);
            for idx in 0..total {
                let mut rows = vec![vec![0u64; d]; r];
                for (i, &c) in pivots.iter().enumerate() {
                    rows[i][c] = 1;
                }
                let mut t = idx;
                for &(i, c) in &free {
                    rows[i][c] = t % p;
                    t /= p;
                }
                out.push(rows);
            }
        }
    }
    out
}

pub fn combinations(n: usize, r: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, r, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, r, &mut Vec::new(), &mut out);
    out
}

/// Every vertex lattice containing the vertex lattice `l` (they all lie inside p⁻¹Λ^∨).
pub fn enumerate_vertex_containing(l: &Lattice, cap: u128) -> Result<Vec<VertexLattice>> {
    if !l.is_vertex() {
        return Err(Error::invalid("containing enumeration needs a vertex lattice"));
    }
    let p = l.p();
    let upper = l.dual().scaled(&(Rat::one() / rat(p as i64)));
    let coords = upper.coords_of(l);
    let h = hermite_padic(&coords, p)?;
    let free: Vec<usize> = (0..l.dim()).filter(|&i| !h[(i, i)].is_one()).collect();
    let d = free.len();
    let est: u128 = (0..=d).map(|r| gaussian_binomial(d, r, p)).sum();
    if est > cap {
        return Err(Error::BudgetExceeded { estimated: est, cap });
    }
    let base_cols = l.basis.cols_vec();
    let ucols = upper.basis.cols_vec();
    let mut out: Vec<VertexLattice> = all_subspaces(p, d)
        .into_par_iter()
        .filter_map(|rows| {
            let mut cols = base_cols.clone();
            for r in rows {
                let v: Vec<Rat> = (0..l.dim())
                    .map(|i| free.iter().zip(&r).fold(Rat::zero(), |acc, (&fi, &c)| acc + rat(c as i64) * &ucols[fi][i]))
                    .collect();
                cols.push(v);
            }
            let lat = Lattice::new(l.ambient.clone(), &Mat::from_cols(&cols)).ok()?;
            let t = lat.vertex_type()?;
            Some(VertexLattice { lattice: lat, t })
        })
        .collect();
    out.sort();
    out.dedup();
    Ok(out)
}

pub fn gaussian_binomial(n: usize, k: usize, p: u64) -> u128 {
    if k > n {
        return 0;
    }
    let p = p as u128;
    let mut num = 1u128;
    let mut den = 1u128;
    for i in 0..k {
        num *= p.pow((n - i) as u32) - 1;
        den *= p.pow((i + 1) as u32) - 1;
    }
    num / den
}

/// The vertex lattice (p⁻¹e₁, e₂, …, eₙ) of a diagonal form whose first entry has valuation 1.
pub fn type_one_seed(space: Arc<QuadSpace>) -> Result<Lattice> {
    let p = space.p;
    let n = space.dim();
    let mut b = Mat::identity(n);
    let first = (0..n).find(|&i| vp(&space.gram[(i, i)], p) == 1).ok_or_else(|| Error::invalid("no valuation-one entry"))?;
    b[(first, first)] = Rat::one() / rat(p as i64);
    let l = Lattice::new(space, &b)?;
    if !l.is_vertex() {
        return Err(Error::invalid("seed is not a vertex lattice"));
    }
    Ok(l)
}

/// Climb from `start` through containing vertex lattices until the type stops growing.
pub fn climb_to_max_type(start: &Lattice, cap: u128) -> Result<VertexLattice> {
    let mut cur = VertexLattice::from_lattice(start.clone())?;
    loop {
        let over = enumerate_vertex_containing(&cur.lattice, cap)?;
        let best = over.into_iter().max_by(|a, b| a.t.cmp(&b.t).then_with(|| b.cmp(a))).unwrap();
        if best.t > cur.t {
            cur = best;
        } else {
            return Ok(cur);
        }
    }
}

/// Quotient of a window lattice count by type, as (type, count) pairs.
pub fn type_histogram(v: &[VertexLattice]) -> Vec<(usize, usize)> {
    let mut h: std::collections::BTreeMap<usize, usize> = Default::default();
    for x in v {
        *h.entry(x.t).or_default() += 1;
    }
    h.into_iter().collect()
}

pub fn to_u64_checked(x: &Rat) -> Option<u64> {
    if x.is_integer() {
        x.numer().to_u64()
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ratio;
    use crate::qspace::{sharp_extend, QuadSpace};

    fn space(p: u64, d: &[Rat]) -> Arc<QuadSpace> {
        Arc::new(QuadSpace::diagonal(p, d).unwrap())
    }

    #[test]
    fn dual_examples() {
        let s = space(3, &[rat(1), rat(1), rat(1)]);
        let l = Lattice::standard(s);
        assert_eq!(l.dual(), l);
        let s = space(3, &[ratio(1, 3), rat(1), rat(1)]);
        let l = Lattice::standard(s.clone());
        let expect = Lattice::new(s, &Mat::from_i64(&[&[3, 0, 0], &[0, 1, 0], &[0, 0, 1]])).unwrap();
        assert_eq!(l.dual(), expect);
        assert_eq!(l.dual().dual(), l);
    }

    #[test]
    fn vertex_examples() {
        let l = Lattice::standard(space(3, &[ratio(1, 3), rat(1), rat(1)]));
        assert_eq!(l.vertex_type(), Some(1));
        let u = Lattice::standard(space(3, &[rat(1), rat(2), rat(1)]));
        assert_eq!(u.vertex_type(), Some(0));
        let bad = Lattice::standard(space(3, &[ratio(1, 9), rat(1), rat(1)]));
        assert!(!bad.is_vertex());
    }

    #[test]
    fn meet_join_basics() {
        let l = Lattice::standard(space(3, &[ratio(1, 3), rat(1), rat(1)]));
        assert_eq!(l.meet(&l), l);
        assert_eq!(l.join(&l.dual()), l);
        assert!(l.contains(&l.dual()));
        assert!(!l.dual().contains(&l));
    }

    #[test]
    fn window_sizes_match_subgroup_counts() {
        let expect3 = [3u128, 23, 445, 24033, 3622259];
        for (i, &e) in expect3.iter().enumerate() {
            assert_eq!(window_size(i + 1, 3), e);
        }
        assert_eq!(window_size(4, 5), 810969);
    }

    #[test]
    fn window_contains_standard_vertex() {
        let l = Lattice::standard(space(3, &[ratio(1, 3), rat(1), rat(1)]));
        let found = enumerate_vertex_near(&l, 1_000_000).unwrap();
        assert!(found.iter().any(|v| v.lattice == l && v.t == 1));
        for v in &found {
            assert_eq!(v.lattice.vertex_type(), Some(v.t));
        }
        assert!(matches!(enumerate_vertex_near(&l, 10), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn window_matches_naive_scan() {
        // compare the pruned search with a direct Hermite-form scan in dimension 2
        let s = space(3, &[rat(3), rat(2)]);
        let m = type_one_seed(s.clone()).unwrap();
        let fast = enumerate_vertex_near(&m, 1_000_000).unwrap();
        let mut naive = Vec::new();
        for f0 in 0..3u32 {
            for f1 in 0..3u32 {
                for x01 in 0..3i64.pow(f0) {
                    let x = Mat::from_i64(&[&[3i64.pow(f0), x01], &[0, 3i64.pow(f1)]]).scale(&ratio(1, 3));
                    let cand = Lattice::new(s.clone(), &m.basis.mul(&x)).unwrap();
                    if cand.contains(&m.scaled(&rat(3))) {
                        if let Some(t) = cand.vertex_type() {
                            naive.push(VertexLattice { lattice: cand, t });
                        }
                    }
                }
            }
        }
        naive.sort();
        naive.dedup();
        assert_eq!(fast, naive);
    }

    #[test]
    fn sharp_round_trip_and_errors() {
        let base = QuadSpace::diag_i64(3, &[3, 1, 1]).unwrap();
        let s = sharp_extend(&base).unwrap();
        let forms = s.fixed_forms();
        let seed = type_one_seed(forms.l0.clone()).unwrap();
        let sh = sharp(&seed, &forms).unwrap();
        assert_eq!(sh.vertex_type(), Some(2));
        assert_eq!(unsharp(&sh, &forms).unwrap(), seed);
        let std_sharp = Lattice::standard(forms.l0_sharp.clone());
        assert_eq!(unsharp(&std_sharp, &forms).unwrap_err(), Error::NotInSharpImage);
    }

    #[test]
    fn quotient_form_dimension() {
        let base = QuadSpace::diag_i64(3, &[3, 1, 1]).unwrap();
        let forms = sharp_extend(&base).unwrap().fixed_forms();
        let seed = sharp(&type_one_seed(forms.l0.clone()).unwrap(), &forms).unwrap();
        let qf = quotient_form(&seed).unwrap();
        assert_eq!(qf.space.m, 2);
        assert_eq!(qf.space.witt_index(), 0);
    }

    #[test]
    fn subspace_counts() {
        let all = all_subspaces(3, 3);
        assert_eq!(all.len() as u128, (0..=3).map(|r| gaussian_binomial(3, r, 3)).sum::<u128>());
        assert_eq!(gaussian_binomial(4, 2, 9), 7462);
    }
}
