//! Clifford algebras C(U) of small quadratic spaces with exact rational coefficients.

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use num::traits::{One, Zero};
use serde_json::{json, Value};

use crate::arith::{rat, rat_to_string, Rat};
use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::qspace::{QuadSpace, SharpSpace};

pub const MAX_DIM: usize = 8;

type Terms = Vec<(u32, Rat)>;

/// C(U) for a fixed basis e₀, …, e_{m−1} of U. Monomials are bitmasks of increasing index sets.
#[derive(Debug)]
pub struct CliffordAlgebra {
    pub space: Arc<QuadSpace>,
    pub m: usize,
    /// e_S · e_j in normal order, indexed by S·m + j.
    right_gen: Vec<Terms>,
    /// Regular-representation trace of each monomial.
    trace_of: Vec<Rat>,
    /// e_S · e_T, filled on first use, indexed by S·2^m + T.
    products: Vec<OnceLock<Terms>>,
}

/// An element of C(U); zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliffordElt {
    pub alg: Arc<CliffordAlgebra>,
    pub coeffs: BTreeMap<u32, Rat>,
}

impl PartialEq for CliffordAlgebra {
    fn eq(&self, o: &Self) -> bool {
        self.space.gram == o.space.gram && self.space.p == o.space.p
    }
}

impl Eq for CliffordAlgebra {}

impl CliffordAlgebra {
    pub fn new(space: QuadSpace) -> Result<Arc<Self>> {
        let m = space.dim();
        if m > MAX_DIM {
            return Err(Error::invalid(format!("Clifford algebras are limited to dimension {MAX_DIM}")));
        }
        let n = 1usize << m;
        let mut right_gen: Vec<Terms> = vec![Vec::new(); n * m];
        // masks in increasing order: every recursive call refers to a smaller mask
        for s in 0..n as u32 {
            for j in 0..m {
                let t = Self::gen_product(&space, m, &right_gen, s, j);
                right_gen[s as usize * m + j] = t;
            }
        }
        let products = (0..n * n).map(|_| OnceLock::new()).collect();
        let mut alg = CliffordAlgebra { space: Arc::new(space), m, right_gen, trace_of: Vec::new(), products };
        let mut tr = vec![Rat::zero(); n];
        for (u, slot) in tr.iter_mut().enumerate() {
            let mut acc = Rat::zero();
            for s in 0..n as u32 {
                let prod = alg.mono_mul(u as u32, s);
                if let Some(c) = prod.get(&s) {
                    acc += c;
                }
            }
            *slot = acc;
        }
        alg.trace_of = tr;
        Ok(Arc::new(alg))
    }

    fn gen_product(space: &QuadSpace, m: usize, table: &[Terms], s: u32, j: usize) -> Terms {
        let bit = 1u32 << j;
        if s == 0 {
            return vec![(bit, Rat::one())];
        }
        let top = 31 - s.leading_zeros() as usize;
        if top < j {
            return vec![(s | bit, Rat::one())];
        }
        let rest = s & !(1u32 << top);
        if top == j {
            // e_j e_j = [e_j, e_j] / 2
            let q = &space.gram[(j, j)] / rat(2);
            return if q.is_zero() { vec![] } else { vec![(rest, q)] };
        }
        // e_top e_j = [e_top, e_j] − e_j e_top
        let mut out: BTreeMap<u32, Rat> = BTreeMap::new();
        let b = space.gram[(top, j)].clone();
        if !b.is_zero() {
            *out.entry(rest).or_insert_with(Rat::zero) += b;
        }
        for (t, c) in &table[rest as usize * m + j] {
            // every index of t is below top, so appending e_top keeps normal order
            *out.entry(t | (1u32 << top)).or_insert_with(Rat::zero) -= c;
        }
        out.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }

    fn product(&self, s: u32, t: u32) -> &Terms {
        self.products[((s as usize) << self.m) + t as usize].get_or_init(|| self.mono_mul(s, t).into_iter().collect())
    }

    fn mono_mul(&self, s: u32, t: u32) -> BTreeMap<u32, Rat> {
        let mut cur: BTreeMap<u32, Rat> = BTreeMap::from([(s, Rat::one())]);
        for j in 0..self.m {
            if t & (1 << j) == 0 {
                continue;
            }
            let mut next: BTreeMap<u32, Rat> = BTreeMap::new();
            for (u, c) in &cur {
                for (w, d) in &self.right_gen[*u as usize * self.m + j] {
                    *next.entry(*w).or_insert_with(Rat::zero) += c * d;
                }
            }
            next.retain(|_, c| !c.is_zero());
            cur = next;
        }
        cur
    }

    pub fn dim(&self) -> usize {
        1 << self.m
    }

    pub fn zero(self: &Arc<Self>) -> CliffordElt {
        CliffordElt { alg: self.clone(), coeffs: BTreeMap::new() }
    }

    pub fn scalar(self: &Arc<Self>, c: Rat) -> CliffordElt {
        self.monomial(0, c)
    }

    pub fn one(self: &Arc<Self>) -> CliffordElt {
        self.scalar(Rat::one())
    }

    pub fn monomial(self: &Arc<Self>, s: u32, c: Rat) -> CliffordElt {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(s, c);
        }
        CliffordElt { alg: self.clone(), coeffs }
    }

    /// The generator e_i.
    pub fn gen(self: &Arc<Self>, i: usize) -> CliffordElt {
        self.monomial(1 << i, Rat::one())
    }

    /// The vector Σ vᵢeᵢ.
    pub fn vector(self: &Arc<Self>, v: &[Rat]) -> CliffordElt {
        let mut coeffs = BTreeMap::new();
        for (i, c) in v.iter().enumerate() {
            if !c.is_zero() {
                coeffs.insert(1u32 << i, c.clone());
            }
        }
        CliffordElt { alg: self.clone(), coeffs }
    }

    /// Element from a coordinate vector of length 2^m.
    pub fn from_coords(self: &Arc<Self>, v: &[Rat]) -> CliffordElt {
        let coeffs = v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(s, c)| (s as u32, c.clone())).collect();
        CliffordElt { alg: self.clone(), coeffs }
    }

    /// Product of a sequence of generators e_{i₁}⋯e_{i_k} (indices in any order).
    pub fn word(self: &Arc<Self>, idx: &[usize]) -> CliffordElt {
        idx.iter().fold(self.one(), |acc, &i| cmul(&acc, &self.gen(i)).expect("same algebra"))
    }
}

fn same(a: &CliffordElt, b: &CliffordElt) -> Result<()> {
    if Arc::ptr_eq(&a.alg, &b.alg) || a.alg == b.alg {
        Ok(())
    } else {
        Err(Error::invalid("elements live in different Clifford algebras"))
    }
}

pub fn cmul(a: &CliffordElt, b: &CliffordElt) -> Result<CliffordElt> {
    same(a, b)?;
    let mut acc = vec![Rat::zero(); a.alg.dim()];
    for (s, c) in &a.coeffs {
        for (t, d) in &b.coeffs {
            let cd = c * d;
            for (u, e) in a.alg.product(*s, *t) {
                acc[*u as usize] += &cd * e;
            }
        }
    }
    let coeffs = acc.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(u, c)| (u as u32, c)).collect();
    Ok(CliffordElt { alg: a.alg.clone(), coeffs })
}

impl CliffordElt {
    pub fn add(&self, o: &CliffordElt) -> CliffordElt {
        let mut coeffs = self.coeffs.clone();
        for (s, c) in &o.coeffs {
            *coeffs.entry(*s).or_insert_with(Rat::zero) += c;
        }
        coeffs.retain(|_, c| !c.is_zero());
        CliffordElt { alg: self.alg.clone(), coeffs }
    }

    pub fn scale(&self, c: &Rat) -> CliffordElt {
        let coeffs = if c.is_zero() { BTreeMap::new() } else { self.coeffs.iter().map(|(s, x)| (*s, x * c)).collect() };
        CliffordElt { alg: self.alg.clone(), coeffs }
    }

    pub fn sub(&self, o: &CliffordElt) -> CliffordElt {
        self.add(&o.scale(&rat(-1)))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `Some(c)` when the element is the scalar c.
    pub fn as_scalar(&self) -> Option<Rat> {
        match self.coeffs.len() {
            0 => Some(Rat::zero()),
            1 => self.coeffs.get(&0).cloned(),
            _ => None,
        }
    }

    pub fn coords(&self) -> Vec<Rat> {
        let mut v = vec![Rat::zero(); self.alg.dim()];
        for (s, c) in &self.coeffs {
            v[*s as usize] = c.clone();
        }
        v
    }

    /// Coefficients on the generators, if the element is a vector.
    pub fn as_vector(&self) -> Option<Vec<Rat>> {
        if self.coeffs.keys().any(|s| s.count_ones() != 1) {
            return None;
        }
        Some((0..self.alg.m).map(|i| self.coeffs.get(&(1u32 << i)).cloned().unwrap_or_else(Rat::zero)).collect())
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.coeffs
                .iter()
                .map(|(s, c)| {
                    let mono: Vec<usize> = (0..self.alg.m).filter(|i| s & (1 << i) != 0).map(|i| i + 1).collect();
                    json!({"monomial": mono, "coeff": rat_to_string(c)})
                })
                .collect(),
        )
    }
}

/// (even part, odd part).
pub fn grading_split(a: &CliffordElt) -> (CliffordElt, CliffordElt) {
    let (ev, od): (BTreeMap<u32, Rat>, BTreeMap<u32, Rat>) =
        a.coeffs.iter().map(|(s, c)| (*s, c.clone())).partition(|(s, _)| s.count_ones() % 2 == 0);
    (CliffordElt { alg: a.alg.clone(), coeffs: ev }, CliffordElt { alg: a.alg.clone(), coeffs: od })
}

/// The anti-involution reversing products of vectors.
pub fn dagger(a: &CliffordElt) -> CliffordElt {
    let alg = &a.alg;
    let mut out = alg.zero();
    for (s, c) in &a.coeffs {
        let idx: Vec<usize> = (0..alg.m).rev().filter(|i| s & (1 << i) != 0).collect();
        out = out.add(&alg.word(&idx).scale(c));
    }
    out
}

/// Matrix of x ↦ g·x on the monomial basis.
pub fn left_matrix(g: &CliffordElt) -> Mat {
    let alg = &g.alg;
    let n = alg.dim();
    let mut m = Mat::zeros(n, n);
    for s in 0..n {
        let col = cmul(g, &alg.monomial(s as u32, Rat::one())).expect("same algebra");
        for (t, c) in col.coeffs {
            m[(t as usize, s)] = c;
        }
    }
    m
}

pub fn inverse(g: &CliffordElt) -> Option<CliffordElt> {
    let alg = &g.alg;
    let n = alg.dim();
    let lm = left_matrix(g);
    let mut rhs = Mat::zeros(n, 1);
    rhs[(0, 0)] = Rat::one();
    let x = lm.inverse()?.mul(&rhs);
    Some(alg.from_coords(&x.col(0)))
}

/// Regular-representation trace.
pub fn trace(a: &CliffordElt) -> Rat {
    a.coeffs.iter().fold(Rat::zero(), |acc, (s, c)| acc + c * &a.alg.trace_of[*s as usize])
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GSpinVerdict {
    pub member: bool,
    pub similitude: Option<Rat>,
}

impl GSpinVerdict {
    pub fn to_json(&self) -> Value {
        json!({"member": self.member, "similitude": self.similitude.as_ref().map(rat_to_string)})
    }
}

pub fn is_gspin(g: &CliffordElt) -> Result<GSpinVerdict> {
    let (_, odd) = grading_split(g);
    if !odd.is_zero() {
        return Err(Error::NotEven);
    }
    let no = GSpinVerdict { member: false, similitude: None };
    let Some(gi) = inverse(g) else { return Ok(no) };
    for i in 0..g.alg.m {
        let c = cmul(&cmul(g, &g.alg.gen(i))?, &gi)?;
        if c.as_vector().is_none() {
            return Ok(no);
        }
    }
    match cmul(&dagger(g), g)?.as_scalar() {
        Some(s) if !s.is_zero() => Ok(GSpinVerdict { member: true, similitude: Some(s) }),
        _ => Ok(no),
    }
}

fn require_member(g: &CliffordElt) -> Result<CliffordElt> {
    let v = is_gspin(g)?;
    if !v.member {
        return Err(Error::invalid("element is not in GSpin"));
    }
    inverse(g).ok_or_else(|| Error::Internal("member without inverse".into()))
}

/// g•v = g v g⁻¹.
pub fn act_vector(g: &CliffordElt, v: &[Rat]) -> Result<Vec<Rat>> {
    let gi = require_member(g)?;
    let out = cmul(&cmul(g, &g.alg.vector(v))?, &gi)?;
    out.as_vector().ok_or_else(|| Error::Internal("conjugate left U".into()))
}

/// Matrix of v ↦ g•v (columns are images of basis vectors).
pub fn so_image(g: &CliffordElt) -> Result<Mat> {
    let gi = require_member(g)?;
    let m = g.alg.m;
    let mut out = Mat::zeros(m, m);
    for j in 0..m {
        let img = cmul(&cmul(g, &g.alg.gen(j))?, &gi)?.as_vector().ok_or_else(|| Error::Internal("conjugate left U".into()))?;
        for (i, c) in img.into_iter().enumerate() {
            out[(i, j)] = c;
        }
    }
    Ok(out)
}

/// Matrix of (x, x′) ↦ Tr(x·δ·x′†) on the monomial basis.
pub fn psi_form(delta: &CliffordElt) -> Result<Mat> {
    if dagger(delta) != delta.scale(&rat(-1)) {
        return Err(Error::invalid("δ must satisfy δ† = −δ"));
    }
    let alg = &delta.alg;
    let n = alg.dim();
    let mut m = Mat::zeros(n, n);
    for t in 0..n {
        let y = cmul(delta, &dagger(&alg.monomial(t as u32, Rat::one())))?;
        for s in 0..n {
            m[(s, t)] = trace(&cmul(&alg.monomial(s as u32, Rat::one()), &y)?);
        }
    }
    Ok(m)
}

/// δ₀ = e₀e₁ (the first two basis vectors, assumed orthogonal).
pub fn default_delta(alg: &Arc<CliffordAlgebra>) -> CliffordElt {
    alg.word(&[0, 1])
}

/// μ♯(t) = t⁻¹x₁♯x₂♯ + x₂♯x₁♯ in C(V♯), with V♯ written in its hyperbolic basis.
pub fn mu_sharp(t: &Rat, s: &SharpSpace) -> Result<CliffordElt> {
    if t.is_zero() {
        return Err(Error::invalid("t must be nonzero"));
    }
    let alg = CliffordAlgebra::new(s.sharp_in_basis())?;
    Ok(alg.word(&[0, 1]).scale(&(Rat::one() / t)).add(&alg.word(&[1, 0])))
}

/// g₀ = p⁻¹x₂x₁ in C(V) for the almost self-dual basis of the base.
pub fn g_zero(s: &SharpSpace) -> Result<CliffordElt> {
    if s.n() < 2 {
        return Err(Error::invalid("base dimension must be at least 2"));
    }
    let alg = CliffordAlgebra::new((*s.base).clone())?;
    Ok(alg.word(&[1, 0]).scale(&(Rat::one() / rat(s.p() as i64))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{ratio, vp};
    use crate::qspace::sharp_extend;
    use proptest::prelude::*;

    fn alg(p: u64, gram: &[&[i64]]) -> Arc<CliffordAlgebra> {
        CliffordAlgebra::new(QuadSpace::new(p, Mat::from_i64(gram)).unwrap()).unwrap()
    }

    fn generic4() -> Arc<CliffordAlgebra> {
        alg(3, &[&[6, 1, 0, 2], &[1, 2, 1, 0], &[0, 1, 4, 1], &[2, 0, 1, 10]])
    }

    #[test]
    fn squares_and_relations() {
        let a = alg(3, &[&[6, 0], &[0, 4]]);
        assert_eq!(cmul(&a.gen(0), &a.gen(0)).unwrap(), a.scalar(rat(3)));
        let e12 = a.word(&[0, 1]);
        assert_eq!(cmul(&e12, &e12).unwrap(), a.scalar(rat(-6)));
        let g = generic4();
        for i in 0..4 {
            for j in 0..4 {
                let s = cmul(&g.gen(i), &g.gen(j)).unwrap().add(&cmul(&g.gen(j), &g.gen(i)).unwrap());
                assert_eq!(s, g.scalar(g.space.gram[(i, j)].clone()));
            }
        }
    }

    #[test]
    fn hyperbolic_pair() {
        let s = sharp_extend(&QuadSpace::diag_i64(3, &[3, 1, 2]).unwrap()).unwrap();
        let a = CliffordAlgebra::new(s.sharp_in_basis()).unwrap();
        assert_eq!(a.word(&[0, 1]).add(&a.word(&[1, 0])), a.one());
    }

    #[test]
    fn grading_and_dagger() {
        let a = alg(5, &[&[2, 0, 0], &[0, 4, 0], &[0, 0, 6]]);
        let x = a.word(&[0, 1]).add(&a.gen(2));
        let (ev, od) = grading_split(&x);
        assert_eq!(ev, a.word(&[0, 1]));
        assert_eq!(od, a.gen(2));
        assert_eq!(grading_split(&a.scalar(rat(4))).1, a.zero());
        assert_eq!(dagger(&a.gen(0)), a.gen(0));
        assert_eq!(dagger(&a.word(&[0, 1])), a.word(&[0, 1]).scale(&rat(-1)));
    }

    #[test]
    fn gspin_examples() {
        let a = alg(3, &[&[6, 0, 0], &[0, 4, 0], &[0, 0, 2]]);
        let v = is_gspin(&a.one()).unwrap();
        assert!(v.member && v.similitude == Some(rat(1)));
        let g = a.word(&[0, 1]);
        assert_eq!(is_gspin(&g).unwrap().similitude, Some(rat(6)));
        assert_eq!(act_vector(&g, &[rat(1), rat(0), rat(0)]).unwrap(), vec![rat(-1), rat(0), rat(0)]);
        assert!(matches!(is_gspin(&a.gen(0)), Err(Error::NotEven)));
        let b = generic4();
        let h = b.one().add(&b.word(&[0, 1, 2, 3]));
        let verdict = is_gspin(&h).unwrap();
        // 1 + e₀e₁e₂e₃ does not normalise U for this Gram
        assert!(!verdict.member);
        assert!(!is_gspin(&b.zero()).unwrap().member);
    }

    #[test]
    fn so_image_is_special_orthogonal() {
        let b = generic4();
        let g = cmul(&b.word(&[0, 1]), &b.one().add(&b.word(&[2, 3]))).unwrap();
        let v = is_gspin(&g).unwrap();
        assert!(v.member);
        let m = so_image(&g).unwrap();
        assert_eq!(m.det(), rat(1));
        assert_eq!(m.transpose().mul(&b.space.gram).mul(&m), b.space.gram);
        let h = b.one().add(&b.word(&[0, 2]));
        assert!(is_gspin(&h).unwrap().member);
        let gh = cmul(&g, &h).unwrap();
        assert_eq!(so_image(&gh).unwrap(), m.mul(&so_image(&h).unwrap()));
        assert_eq!(so_image(&g.scale(&ratio(5, 7))).unwrap(), m);
    }

    #[test]
    fn psi_properties() {
        for gram in [vec![3i64, 2, 1, 1], vec![3, 2, 1, 1, 2]] {
            let a = CliffordAlgebra::new(QuadSpace::diag_i64(3, &gram).unwrap()).unwrap();
            let psi = psi_form(&default_delta(&a)).unwrap();
            assert!(psi.det() != rat(0));
            assert_eq!(psi.transpose(), psi.scale(&rat(-1)));
            for s in 0..a.dim() {
                assert!(psi[(s, s)].is_zero());
            }
        }
        let a = alg(3, &[&[6, 0], &[0, 4]]);
        assert!(psi_form(&a.one()).is_err());
    }

    #[test]
    fn psi_similitude() {
        let a = CliffordAlgebra::new(QuadSpace::diag_i64(3, &[3, 2, 1, 1]).unwrap()).unwrap();
        let psi = psi_form(&default_delta(&a)).unwrap();
        let v1 = a.vector(&[rat(1), rat(1), rat(0), rat(0)]);
        let v2 = a.vector(&[rat(0), rat(1), rat(1), rat(2)]);
        let g = cmul(&v1, &v2).unwrap();
        let v = is_gspin(&g).unwrap();
        assert!(v.member);
        let lm = left_matrix(&g);
        assert_eq!(lm.transpose().mul(&psi).mul(&lm), psi.scale(&v.similitude.unwrap()));
        let h = a.word(&[0, 1]);
        let sh = is_gspin(&h).unwrap().similitude.unwrap();
        let lm = left_matrix(&h);
        assert_eq!(lm.transpose().mul(&psi).mul(&lm), psi.scale(&sh));
    }

    #[test]
    fn mu_sharp_table() {
        let s = sharp_extend(&QuadSpace::diag_i64(3, &[3, 1, 2]).unwrap()).unwrap();
        let mu1 = mu_sharp(&rat(1), &s).unwrap();
        assert_eq!(mu1, mu1.alg.one());
        for t in [rat(2), rat(3), ratio(1, 5)] {
            let mu = mu_sharp(&t, &s).unwrap();
            assert!(is_gspin(&mu).unwrap().member);
            let e = |i: usize| -> Vec<Rat> { (0..4).map(|j| rat((i == j) as i64)).collect() };
            let scaled = |v: Vec<Rat>, c: &Rat| -> Vec<Rat> { v.into_iter().map(|x| x * c).collect() };
            assert_eq!(act_vector(&mu, &e(0)).unwrap(), scaled(e(0), &(Rat::one() / &t)));
            assert_eq!(act_vector(&mu, &e(1)).unwrap(), scaled(e(1), &t));
            assert_eq!(act_vector(&mu, &e(2)).unwrap(), e(2));
            assert_eq!(act_vector(&mu, &e(3)).unwrap(), e(3));
        }
        assert!(mu_sharp(&rat(0), &s).is_err());
    }

    #[test]
    fn g_zero_square() {
        let s = sharp_extend(&QuadSpace::diag_i64(3, &[3, 1, 2]).unwrap()).unwrap();
        let g0 = g_zero(&s).unwrap();
        let sq = cmul(&g0, &g0).unwrap().as_scalar().unwrap();
        assert_eq!(sq, ratio(-1, 12));
        assert_eq!(vp(&sq, 3), -1);
        let v = is_gspin(&g0).unwrap();
        assert_eq!(vp(&v.similitude.unwrap(), 3), -1);
        assert_eq!(act_vector(&g0, &[rat(0), rat(0), rat(1)]).unwrap(), vec![rat(0), rat(0), rat(1)]);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]
        #[test]
        fn associative(a in prop::collection::vec(-3i64..4, 16), b in prop::collection::vec(-3i64..4, 16), c in prop::collection::vec(-3i64..4, 16)) {
            let g = generic4();
            let (x, y, z) = (g.from_coords(&a.iter().map(|&t| rat(t)).collect::<Vec<_>>()),
                             g.from_coords(&b.iter().map(|&t| rat(t)).collect::<Vec<_>>()),
                             g.from_coords(&c.iter().map(|&t| rat(t)).collect::<Vec<_>>()));
            prop_assert_eq!(cmul(&cmul(&x, &y).unwrap(), &z).unwrap(), cmul(&x, &cmul(&y, &z).unwrap()).unwrap());
            prop_assert_eq!(dagger(&cmul(&x, &y).unwrap()), cmul(&dagger(&y), &dagger(&x)).unwrap());
            prop_assert_eq!(dagger(&dagger(&x)), x);
        }
    }

}
