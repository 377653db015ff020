//! Quadratic spaces over Q read p-adically: diagonalization, Hilbert symbols,
//! discriminant and Hasse invariant, almost self-dual bases and the sharp extension.
//!
//! Gram matrices always hold the bilinear form [v, w] = Q(v + w) − Q(v) − Q(w),
//! so Q(v) = [v, v] / 2.

use std::sync::Arc;

use num::traits::{One, Zero};
use serde_json::{json, Value};

use crate::arith::{
    check_odd_prime, least_nonresidue, legendre_rat, mod_int, p_pow, parse_rat, rat, rat_to_string, unit_part, vp,
    Rat,
};
use crate::error::{Error, Result};
use crate::linalg::Mat;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadSpace {
    pub p: u64,
    pub gram: Mat,
}

impl QuadSpace {
    pub fn new(p: u64, gram: Mat) -> Result<Self> {
        check_odd_prime(p)?;
        if gram.rows == 0 || !gram.is_symmetric() {
            return Err(Error::invalid("gram must be a nonempty symmetric matrix"));
        }
        if gram.det().is_zero() {
            return Err(Error::invalid("gram is degenerate"));
        }
        Ok(QuadSpace { p, gram })
    }

    pub fn diagonal(p: u64, entries: &[Rat]) -> Result<Self> {
        QuadSpace::new(p, Mat::diag(entries))
    }

    pub fn diag_i64(p: u64, entries: &[i64]) -> Result<Self> {
        QuadSpace::diagonal(p, &entries.iter().map(|&x| rat(x)).collect::<Vec<_>>())
    }

    pub fn dim(&self) -> usize {
        self.gram.rows
    }

    pub fn bil(&self, v: &[Rat], w: &[Rat]) -> Rat {
        self.gram.bilinear(v, w)
    }

    pub fn q(&self, v: &[Rat]) -> Rat {
        self.bil(v, v) / rat(2)
    }

    /// Gram matrix of the columns of `b`.
    pub fn gram_of(&self, b: &Mat) -> Mat {
        b.transpose().mul(&self.gram).mul(b)
    }

    /// The same space in the basis given by the columns of `b`.
    pub fn rebase(&self, b: &Mat) -> Result<QuadSpace> {
        QuadSpace::new(self.p, self.gram_of(b))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "p": self.p,
            "gram": self.gram.to_rows().iter().map(|r| r.iter().map(rat_to_string).collect::<Vec<_>>()).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let p = v["p"].as_u64().ok_or_else(|| Error::invalid("missing p"))?;
        let gram = parse_matrix_value(&v["gram"])?;
        QuadSpace::new(p, gram)
    }
}

/// Parse a JSON array of rows whose entries are integers or "a/b" strings.
pub fn parse_matrix_value(v: &Value) -> Result<Mat> {
    let rows = v.as_array().ok_or_else(|| Error::invalid("matrix must be an array of rows"))?;
    let parsed: Result<Vec<Vec<Rat>>> = rows
        .iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| Error::invalid("matrix row must be an array"))?
                .iter()
                .map(|x| match x {
                    Value::String(s) => parse_rat(s),
                    Value::Number(n) => parse_rat(&n.to_string()),
                    _ => Err(Error::invalid("matrix entry must be a number or string")),
                })
                .collect()
        })
        .collect();
    let parsed = parsed?;
    let c = parsed.first().map_or(0, |r| r.len());
    if parsed.is_empty() || parsed.iter().any(|r| r.len() != c) {
        return Err(Error::invalid("matrix rows must be nonempty and of equal length"));
    }
    Ok(Mat::from_rows(parsed))
}

pub fn parse_matrix(s: &str) -> Result<Mat> {
    let v: Value = serde_json::from_str(s).map_err(|e| Error::invalid(format!("bad matrix JSON: {e}")))?;
    parse_matrix_value(&v)
}

/// Diagonalization (U, a′) with Uᵀ·gram·U = diag(a′) and ord_p(a′ᵢ) ∈ {0, 1}.
pub fn diagonalize(q: &QuadSpace) -> Result<(Mat, Vec<Rat>)> {
    let n = q.dim();
    let p = q.p;
    let mut basis: Vec<Vec<Rat>> = Mat::identity(n).cols_vec();
    let mut done: Vec<Vec<Rat>> = Vec::new();
    let mut diag = Vec::new();
    while !basis.is_empty() {
        let m = basis.len();
        let g = |i: usize, j: usize, b: &Vec<Vec<Rat>>| q.bil(&b[i], &b[j]);
        let diag_min = (0..m).filter(|&i| !g(i, i, &basis).is_zero()).map(|i| (vp(&g(i, i, &basis), p), i)).min();
        let mut off_min: Option<(i64, usize, usize)> = None;
        for i in 0..m {
            for j in i + 1..m {
                let x = g(i, j, &basis);
                if !x.is_zero() {
                    let v = vp(&x, p);
                    if off_min.map_or(true, |(bv, _, _)| v < bv) {
                        off_min = Some((v, i, j));
                    }
                }
            }
        }
        let k = match (diag_min, off_min) {
            (Some((dv, i)), Some((ov, _, _))) if dv <= ov => i,
            (Some((_, i)), None) => i,
            (_, Some((_, i, j))) => {
                let sum: Vec<Rat> = basis[i].iter().zip(&basis[j]).map(|(a, b)| a + b).collect();
                basis[i] = sum;
                i
            }
            (None, None) => return Err(Error::invalid("gram is degenerate")),
        };
        let pivot = basis.remove(k);
        let gp = q.bil(&pivot, &pivot);
        if gp.is_zero() {
            return Err(Error::Internal("zero pivot during diagonalization".into()));
        }
        for b in basis.iter_mut() {
            let c = q.bil(b, &pivot) / &gp;
            if !c.is_zero() {
                for (x, y) in b.iter_mut().zip(&pivot) {
                    *x -= &c * y;
                }
            }
        }
        let v = vp(&gp, p);
        let s = p_pow(p, -v.div_euclid(2));
        let scaled: Vec<Rat> = pivot.iter().map(|x| x * &s).collect();
        diag.push(&gp * &s * &s);
        done.push(scaled);
    }
    Ok((Mat::from_cols(&done), diag))
}

/// Closed-form Hilbert symbol (a, b)_p for odd p.
pub fn hilbert_symbol(a: &Rat, b: &Rat, p: u64) -> Result<i32> {
    check_odd_prime(p)?;
    if a.is_zero() || b.is_zero() {
        return Err(Error::invalid("Hilbert symbol of zero"));
    }
    Ok(hilbert(a, b, p))
}

pub(crate) fn hilbert(a: &Rat, b: &Rat, p: u64) -> i32 {
    let (al, be) = (vp(a, p), vp(b, p));
    let (u, v) = (unit_part(a, p), unit_part(b, p));
    let mut s = 1;
    if (al * be).rem_euclid(2) == 1 && ((p - 1) / 2) % 2 == 1 {
        s = -s;
    }
    if be.rem_euclid(2) == 1 {
        s *= legendre_rat(&u, p);
    }
    if al.rem_euclid(2) == 1 {
        s *= legendre_rat(&v, p);
    }
    s
}

/// Brute-force Hilbert symbol: +1 iff z² = a x² + b y² has a primitive solution mod p⁴.
pub fn hilbert_symbol_bruteforce(a: &Rat, b: &Rat, p: u64) -> i32 {
    const K: u32 = 4;
    let m = p.pow(K);
    let norm = |x: &Rat| {
        let v = vp(x, p);
        mod_int(&(x * p_pow(p, -2 * v.div_euclid(2))), m)
    };
    let (a, b) = (norm(a), norm(b));
    let mut square = vec![false; m as usize];
    let mut unit_square = vec![false; m as usize];
    for z in 0..m {
        let s = (z * z % m) as usize;
        square[s] = true;
        if z % p != 0 {
            unit_square[s] = true;
        }
    }
    let form = |x: u64, y: u64| ((a * (x * x % m)) % m + (b * (y * y % m)) % m) % m;
    // x a unit, scaled to 1
    if (0..m).any(|y| square[form(1, y) as usize]) {
        return 1;
    }
    // x divisible by p, y a unit scaled to 1
    if (0..m).step_by(p as usize).any(|x| square[form(x, 1) as usize]) {
        return 1;
    }
    // x, y divisible by p, z a unit
    for x in (0..m).step_by(p as usize) {
        for y in (0..m).step_by(p as usize) {
            if unit_square[form(x, y) as usize] {
                return 1;
            }
        }
    }
    -1
}

/// Canonical representative of the square class of x in {1, u, p, up}.
pub fn square_class(x: &Rat, p: u64) -> u64 {
    let v = vp(x, p);
    let u = unit_part(x, p);
    let unit = if legendre_rat(&u, p) == 1 { 1 } else { least_nonresidue(p) };
    if v.rem_euclid(2) == 1 {
        unit * p
    } else {
        unit
    }
}

/// Square class of 2ⁿ·∏a′ᵢ.
pub fn discriminant(q: &QuadSpace) -> Result<u64> {
    let (_, d) = diagonalize(q)?;
    let prod = d.iter().fold(Rat::one(), |acc, x| acc * x) * num::traits::pow(rat(2), d.len());
    Ok(square_class(&prod, q.p))
}

/// ε = ∏_{i<j} (a′ᵢ, a′ⱼ)_p.
pub fn hasse_invariant(q: &QuadSpace) -> Result<i32> {
    let (_, d) = diagonalize(q)?;
    Ok(hasse_of_diag(&d, q.p))
}

pub fn hasse_of_diag(d: &[Rat], p: u64) -> i32 {
    let mut e = 1;
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            e *= hilbert(&d[i], &d[j], p);
        }
    }
    e
}

pub fn isometric(a: &QuadSpace, b: &QuadSpace) -> Result<bool> {
    if a.p != b.p {
        return Err(Error::invalid("spaces over different primes"));
    }
    Ok(a.dim() == b.dim() && discriminant(a)? == discriminant(b)? && hasse_invariant(a)? == hasse_invariant(b)?)
}

/// A basis (columns) with Gram diag(p·a₁, a₂, …, aₙ), all aᵢ units.
#[derive(Clone, Debug)]
pub struct AlmostSelfDual {
    pub basis: Mat,
    pub diag: Vec<Rat>,
}

impl AlmostSelfDual {
    pub fn space(&self, p: u64) -> QuadSpace {
        QuadSpace { p, gram: Mat::diag(&self.diag) }
    }
}

pub fn almost_selfdual_form(q: &QuadSpace) -> Result<AlmostSelfDual> {
    let p = q.p;
    if vp(&q.gram.det(), p).rem_euclid(2) == 0 {
        return Err(Error::NoAlmostSelfDualLattice);
    }
    let (u, mut d) = diagonalize(q)?;
    let mut cols = u.cols_vec();
    loop {
        let ones: Vec<usize> = (0..d.len()).filter(|&i| vp(&d[i], p) == 1).collect();
        if ones.len() == 1 {
            break;
        }
        let idx = [ones[0], ones[1], ones[2]];
        let w = split_unit_vector(&idx.map(|i| d[i].clone()), p);
        // w in the span of the three valuation-one vectors, with [w, w] a unit
        let wv: Vec<Rat> = (0..q.dim())
            .map(|r| idx.iter().zip(&w).fold(Rat::zero(), |acc, (&i, c)| acc + c * &cols[i][r]))
            .collect();
        let mut sub: Vec<Vec<Rat>> = idx.iter().map(|&i| cols[i].clone()).collect();
        let ww = q.bil(&wv, &wv);
        for s in sub.iter_mut() {
            let c = q.bil(s, &wv) / &ww;
            for (x, y) in s.iter_mut().zip(&wv) {
                *x -= &c * y;
            }
        }
        // the three projections span a 2-dimensional complement; rediagonalize it
        let sub_m = Mat::from_cols(&sub);
        let (rref, piv) = sub_m.transpose().rref();
        let comp: Vec<Vec<Rat>> = (0..piv.len()).map(|r| rref.row(r)).collect();
        let comp_space = QuadSpace::new(p, q.gram_of(&Mat::from_cols(&comp)))?;
        let (cu, cd) = diagonalize(&comp_space)?;
        let comp_m = Mat::from_cols(&comp).mul(&cu);
        let mut new_cols = Vec::new();
        let mut new_d = Vec::new();
        for i in 0..d.len() {
            if !idx.contains(&i) {
                new_cols.push(cols[i].clone());
                new_d.push(d[i].clone());
            }
        }
        new_cols.push(wv);
        new_d.push(ww);
        for (j, x) in cd.into_iter().enumerate() {
            new_cols.push(comp_m.col(j));
            new_d.push(x);
        }
        cols = new_cols;
        d = new_d;
    }
    let first = (0..d.len()).find(|&i| vp(&d[i], p) == 1).unwrap();
    let mut order = vec![first];
    order.extend((0..d.len()).filter(|&i| i != first));
    let basis = Mat::from_cols(&order.iter().map(|&i| cols[i].clone()).collect::<Vec<_>>());
    let diag: Vec<Rat> = order.iter().map(|&i| d[i].clone()).collect();
    debug_assert_eq!(q.gram_of(&basis), Mat::diag(&diag));
    Ok(AlmostSelfDual { basis, diag })
}

/// For entries e_i = p·d_i (d_i units), coefficients c with Σ e_i c_i² of valuation 0.
fn split_unit_vector(e: &[Rat; 3], p: u64) -> [Rat; 3] {
    let d: Vec<u64> = e.iter().map(|x| mod_int(&(x / rat(p as i64)), p)).collect();
    let p2 = p * p;
    let d2: Vec<u64> = e.iter().map(|x| mod_int(&(x / rat(p as i64)), p2)).collect();
    for x0 in 0..p {
        for x1 in 0..p {
            for x2 in 0..p {
                let x = [x0, x1, x2];
                if x.iter().all(|&t| t == 0) {
                    continue;
                }
                let val = |x: &[u64; 3], m: u64, dd: &[u64]| (0..3).fold(0, |acc, i| (acc + dd[i] * (x[i] * x[i] % m)) % m);
                if val(&x, p, &d) != 0 {
                    continue;
                }
                let mut y = x;
                if val(&y, p2, &d2) == 0 {
                    let j = (0..3).find(|&i| y[i] != 0).unwrap();
                    y[j] += p;
                }
                let s = rat(p as i64);
                return [rat(y[0] as i64) / &s, rat(y[1] as i64) / &s, rat(y[2] as i64) / &s];
            }
        }
    }
    unreachable!("ternary forms over F_p are isotropic")
}

/// V♯ = l_{−pa₁/2} ⊕ V with its distinguished vector x₀.
///
/// `sharp` uses coordinates (x₀, x₁, …, xₙ) with Gram diag(−pa₁, pa₁, a₂, …, aₙ);
/// `basis_sharp` lists x₀♯ = (x₁ + x₀)/2, x₁♯ = (x₁ − x₀)/(pa₁), x₂, …, xₙ in those coordinates.
#[derive(Clone, Debug)]
pub struct SharpSpace {
    pub base: Arc<QuadSpace>,
    pub sharp: Arc<QuadSpace>,
    pub x0: Vec<Rat>,
    pub basis_sharp: Mat,
    /// The units a₁, …, aₙ.
    pub units: Vec<Rat>,
}

fn check_alsd_shape(q: &QuadSpace) -> Result<Vec<Rat>> {
    let p = q.p;
    let n = q.dim();
    let g = &q.gram;
    let diagonal = (0..n).all(|i| (0..n).all(|j| i == j || g[(i, j)].is_zero()));
    if !diagonal || n < 2 {
        return Err(Error::invalid("base must be diagonal of dimension at least 2"));
    }
    if vp(&g[(0, 0)], p) != 1 || (1..n).any(|i| vp(&g[(i, i)], p) != 0) {
        return Err(Error::invalid("base Gram must be diag(p·a1, a2, …, an) with units ai"));
    }
    let mut units = vec![&g[(0, 0)] / rat(p as i64)];
    units.extend((1..n).map(|i| g[(i, i)].clone()));
    Ok(units)
}

pub fn sharp_extend(q: &QuadSpace) -> Result<SharpSpace> {
    let units = check_alsd_shape(q)?;
    let p = q.p;
    let n = q.dim();
    let pa1 = &q.gram[(0, 0)];
    let mut d = vec![-pa1.clone()];
    d.extend((0..n).map(|i| q.gram[(i, i)].clone()));
    let sharp = QuadSpace::diagonal(p, &d)?;
    let mut x0 = vec![Rat::zero(); n + 1];
    x0[0] = Rat::one();
    let mut bs = Mat::zeros(n + 1, n + 1);
    let half = Rat::new(1.into(), 2.into());
    bs[(0, 0)] = half.clone();
    bs[(1, 0)] = half;
    bs[(0, 1)] = -(Rat::one() / pa1);
    bs[(1, 1)] = Rat::one() / pa1;
    for i in 2..=n {
        bs[(i, i)] = Rat::one();
    }
    Ok(SharpSpace { base: Arc::new(q.clone()), sharp: Arc::new(sharp), x0, basis_sharp: bs, units })
}

impl SharpSpace {
    pub fn p(&self) -> u64 {
        self.base.p
    }

    pub fn n(&self) -> usize {
        self.base.dim()
    }

    /// Gram of Q♯ in the basis x₀♯, …, xₙ♯: antidiag(1, 1) ⊕ diag(a₂, …, aₙ).
    pub fn sharp_gram_in_basis(&self) -> Mat {
        self.sharp.gram_of(&self.basis_sharp)
    }

    /// V♯ written in the basis x₀♯, …, xₙ♯.
    pub fn sharp_in_basis(&self) -> QuadSpace {
        QuadSpace { p: self.p(), gram: self.sharp_gram_in_basis() }
    }

    /// Embedding of base coordinates into sharp coordinates.
    pub fn base_embedding(&self) -> Mat {
        let n = self.n();
        let mut e = Mat::zeros(n + 1, n);
        for i in 0..n {
            e[(i + 1, i)] = Rat::one();
        }
        e
    }

    /// Φ♯-fixed forms L₀ ⊂ L₀♯ and the vector x₀ ∈ L₀♯.
    ///
    /// L₀♯ has Gram diag(−pa₁, u·pa₁, u·a₂, a₃, …, aₙ) with u the least non-residue and x₀ the first
    /// basis vector; L₀ = x₀^⊥ is spanned by the remaining basis vectors.
    pub fn fixed_forms(&self) -> FixedForms {
        let p = self.p();
        let n = self.n();
        let u = rat(least_nonresidue(p) as i64);
        let pa1 = &self.base.gram[(0, 0)];
        let mut d = vec![-pa1.clone(), &u * pa1];
        if n >= 2 {
            d.push(&u * &self.units[1]);
        }
        d.extend(self.units.iter().skip(2).cloned());
        let l0_sharp = QuadSpace::diagonal(p, &d).expect("nondegenerate by construction");
        let l0 = QuadSpace::diagonal(p, &d[1..]).expect("nondegenerate by construction");
        let mut x0 = vec![Rat::zero(); n + 1];
        x0[0] = Rat::one();
        FixedForms { l0: Arc::new(l0), l0_sharp: Arc::new(l0_sharp), x0, embed: self.base_embedding() }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "base": self.base.to_json(),
            "sharp": self.sharp.to_json(),
            "x0": self.x0.iter().map(rat_to_string).collect::<Vec<_>>(),
            "basis_sharp": self.basis_sharp.cols_vec().iter().map(|c| c.iter().map(rat_to_string).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "sharp_gram_in_basis": QuadSpace { p: self.p(), gram: self.sharp_gram_in_basis() }.to_json()["gram"],
            "q_sharp_x0": rat_to_string(&self.sharp.q(&self.x0)),
        })
    }
}

/// The pair L₀ ⊂ L₀♯ with x₀ ∈ L₀♯ and L₀ = x₀^⊥ (embedding columns map L₀ coordinates into L₀♯).
#[derive(Clone, Debug)]
pub struct FixedForms {
    pub l0: Arc<QuadSpace>,
    pub l0_sharp: Arc<QuadSpace>,
    pub x0: Vec<Rat>,
    pub embed: Mat,
}

/// Φ♯ in the basis x₀♯, …, xₙ♯.
pub fn phi_sharp_matrix(s: &SharpSpace) -> Mat {
    let n = s.n();
    let pa1 = &s.base.gram[(0, 0)];
    let half_pa1 = pa1 / rat(2);
    let mut m = Mat::identity(n + 1);
    m[(0, 0)] = Rat::zero();
    m[(1, 1)] = Rat::zero();
    m[(1, 0)] = -half_pa1.clone();
    m[(0, 1)] = -(Rat::one() / half_pa1);
    if n >= 2 {
        m[(2, 2)] = -Rat::one();
    }
    m
}

/// (t_max, t♯_max) for an almost self-dual space of dimension n ≥ 3.
pub fn t_max_pair(q: &QuadSpace) -> Result<(usize, usize)> {
    let n = q.dim();
    if n < 3 {
        return Err(Error::invalid("t_max needs n ≥ 3"));
    }
    let t = if n % 2 == 0 {
        n - 1
    } else {
        let eps = hasse_invariant(q)?;
        let sym = hilbert(&rat(q.p as i64), &rat(-1), q.p);
        let target = if ((n - 1) / 2) % 2 == 0 { 1 } else { sym };
        if eps == target {
            n - 2
        } else {
            n
        }
    };
    Ok((t, t + 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ratio;
    use proptest::prelude::*;

    fn sp(p: u64, d: &[i64]) -> QuadSpace {
        QuadSpace::diag_i64(p, d).unwrap()
    }

    #[test]
    fn diagonalize_examples() {
        let (u, d) = diagonalize(&sp(5, &[1, 1])).unwrap();
        assert_eq!(u, Mat::identity(2));
        assert_eq!(d, vec![rat(1), rat(1)]);
        let h = QuadSpace::new(3, Mat::from_i64(&[&[0, 1], &[1, 0]])).unwrap();
        let (u, d) = diagonalize(&h).unwrap();
        assert_eq!(h.gram_of(&u), Mat::diag(&d));
        assert_eq!(square_class(&d[0], 3), square_class(&rat(2), 3));
        assert_eq!(square_class(&d[1], 3), square_class(&rat(-2), 3));
        let (_, d) = diagonalize(&sp(3, &[9, 1])).unwrap();
        assert_eq!(d, vec![rat(1), rat(1)]);
    }

    #[test]
    fn hilbert_examples() {
        assert_eq!(hilbert_symbol(&rat(2), &rat(2), 3).unwrap(), 1);
        assert_eq!(hilbert_symbol(&rat(2), &rat(3), 3).unwrap(), -1);
        assert_eq!(hilbert_symbol(&rat(3), &rat(3), 3).unwrap(), -1);
        assert!(hilbert_symbol(&rat(0), &rat(3), 3).is_err());
        assert_eq!(hilbert_symbol_bruteforce(&rat(2), &rat(3), 3), -1);
        assert_eq!(hilbert_symbol_bruteforce(&rat(3), &rat(3), 3), -1);
        assert_eq!(hilbert_symbol_bruteforce(&rat(2), &rat(2), 3), 1);
    }

    #[test]
    fn discriminant_examples() {
        assert_eq!(discriminant(&sp(5, &[1, 1])).unwrap(), 1);
        assert_eq!(discriminant(&sp(3, &[3, 1, 1, 1, 1])).unwrap(), 6);
        let h = QuadSpace::new(3, Mat::from_i64(&[&[0, 1], &[1, 0]])).unwrap();
        assert_eq!(discriminant(&h).unwrap(), 2);
        assert_eq!(discriminant(&sp(3, &[3, 2])).unwrap(), 6);
    }

    #[test]
    fn hasse_examples() {
        assert_eq!(hasse_invariant(&sp(5, &[1, 1, 1, 1])).unwrap(), 1);
        assert_eq!(hasse_invariant(&sp(3, &[3, 1, 1, 1, 1])).unwrap(), 1);
        assert_eq!(hasse_invariant(&sp(3, &[3, 2])).unwrap(), -1);
    }

    #[test]
    fn isometry_examples() {
        let a = sp(5, &[1, 1]);
        assert!(isometric(&a, &a).unwrap());
        assert!(isometric(&a, &sp(5, &[2, 2])).unwrap());
        let h = QuadSpace::new(3, Mat::from_i64(&[&[0, 1], &[1, 0]])).unwrap();
        assert!(!isometric(&sp(3, &[1, 1]), &h).unwrap());
    }

    #[test]
    fn almost_selfdual_examples() {
        let a = almost_selfdual_form(&sp(3, &[3, 1, 1])).unwrap();
        assert_eq!(a.basis, Mat::identity(3));
        let b = almost_selfdual_form(&sp(3, &[1, 3, 1])).unwrap();
        assert_eq!(b.basis, Mat::from_i64(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]));
        assert_eq!(almost_selfdual_form(&sp(3, &[1, 1])).unwrap_err(), Error::NoAlmostSelfDualLattice);
        let c = sp(3, &[3, 3, 3, 1]);
        let f = almost_selfdual_form(&c).unwrap();
        assert_eq!(c.gram_of(&f.basis), Mat::diag(&f.diag));
        assert_eq!(vp(&f.diag[0], 3), 1);
        assert!(f.diag[1..].iter().all(|x| vp(x, 3) == 0));
        assert!(isometric(&c, &f.space(3)).unwrap());
    }

    #[test]
    fn sharp_extension_example() {
        let s = sharp_extend(&sp(3, &[3, 1, 1])).unwrap();
        let expect = Mat::from_i64(&[&[0, 1, 0, 0], &[1, 0, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]]);
        assert_eq!(s.sharp_gram_in_basis(), expect);
        assert_eq!(s.sharp.q(&s.x0), ratio(-3, 2));
        assert_eq!(vp(&s.sharp.q(&s.x0), 3), 1);
        assert!(sharp_extend(&sp(3, &[1, 3, 1])).is_err());
    }

    #[test]
    fn phi_sharp_table_and_isometry() {
        let s = sharp_extend(&sp(5, &[10, 3, 1, 2])).unwrap();
        let m = phi_sharp_matrix(&s);
        let g = s.sharp_gram_in_basis();
        assert_eq!(m.transpose().mul(&g).mul(&m), g);
        assert_eq!(m.col(2), vec![rat(0), rat(0), rat(-1), rat(0), rat(0)]);
        assert_eq!(m.col(3), vec![rat(0), rat(0), rat(0), rat(1), rat(0)]);
        let m2 = m.mul(&m);
        assert_eq!(m2[(0, 0)], m2[(1, 1)]);
        assert!(m2[(0, 1)].is_zero() && m2[(1, 0)].is_zero());
    }

    #[test]
    fn t_max_examples() {
        assert_eq!(t_max_pair(&sp(3, &[3, 1, 1, 1])).unwrap(), (3, 4));
        assert_eq!(t_max_pair(&sp(3, &[3, 1, 1, 1, 1])).unwrap(), (3, 4));
        assert_eq!(t_max_pair(&sp(3, &[3, 2, 1, 1, 1])).unwrap(), (5, 6));
    }

    #[test]
    fn fixed_forms_share_discriminant_with_sharp() {
        for d in [[3i64, 1, 1], [3, 2, 1], [6, 1, 1], [15, 1, 2]] {
            let p = if d[0] % 5 == 0 { 5 } else { 3 };
            let s = sharp_extend(&sp(p, &d)).unwrap();
            let f = s.fixed_forms();
            assert_eq!(discriminant(&f.l0_sharp).unwrap(), discriminant(&s.sharp).unwrap());
            assert_eq!(f.l0_sharp.q(&f.x0), s.sharp.q(&s.x0));
        }
    }

    proptest! {
        #[test]
        fn hilbert_bimultiplicative(a in 1i64..60, b in 1i64..60, c in 1i64..60, sa in any::<bool>(),
                                    p in prop::sample::select(vec![3u64, 5, 7])) {
            let a = rat(if sa { -a } else { a });
            let (b, c) = (rat(b), rat(c));
            prop_assert_eq!(hilbert(&a, &(&b * &c), p), hilbert(&a, &b, p) * hilbert(&a, &c, p));
            prop_assert_eq!(hilbert(&a, &b, p), hilbert(&b, &a, p));
        }

        #[test]
        fn diagonalization_is_congruence(entries in prop::collection::vec(-20i64..20, 6), p in prop::sample::select(vec![3u64, 5])) {
            let g = Mat::from_i64(&[
                &[entries[0], entries[1], entries[2]],
                &[entries[1], entries[3], entries[4]],
                &[entries[2], entries[4], entries[5]],
            ]);
            prop_assume!(!g.det().is_zero());
            let q = QuadSpace::new(p, g).unwrap();
            let (u, d) = diagonalize(&q).unwrap();
            prop_assert_eq!(q.gram_of(&u), Mat::diag(&d));
            prop_assert!(d.iter().all(|x| (0..=1).contains(&vp(x, p))));
        }
    }
}
