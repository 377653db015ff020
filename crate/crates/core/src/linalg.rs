//! Dense exact linear algebra over Q, Z_(p) and F_q.

use std::fmt;

use num::traits::{One, Signed, Zero};

use crate::arith::{mod_int, p_pow, rat, rat_to_string, unit_part, vp, FiniteField, Rat};
use crate::error::{Error, Result};

/// Row-major rational matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    d: Vec<Rat>,
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> =
            (0..self.rows).map(|i| (0..self.cols).map(|j| rat_to_string(&self[(i, j)])).collect()).collect();
        write!(f, "{rows:?}")
    }
}

impl std::ops::Index<(usize, usize)> for Mat {
    type Output = Rat;
    fn index(&self, (i, j): (usize, usize)) -> &Rat {
        &self.d[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rat {
        &mut self.d[i * self.cols + j]
    }
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, d: vec![Rat::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rat::one();
        }
        m
    }

    pub fn diag(entries: &[Rat]) -> Self {
        let mut m = Mat::zeros(entries.len(), entries.len());
        for (i, a) in entries.iter().enumerate() {
            m[(i, i)] = a.clone();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged matrix");
        Mat { rows: r, cols: c, d: rows.into_iter().flatten().collect() }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Mat::from_rows(rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect())
    }

    pub fn from_cols(cols: &[Vec<Rat>]) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, |x| x.len());
        let mut m = Mat::zeros(r, c);
        for (j, col) in cols.iter().enumerate() {
            for (i, x) in col.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn row(&self, i: usize) -> Vec<Rat> {
        self.d[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<Rat> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn cols_vec(&self) -> Vec<Vec<Rat>> {
        (0..self.cols).map(|j| self.col(j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Rat>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, o: &Mat) -> Mat {
        assert_eq!(self.cols, o.rows, "dimension mismatch");
        let mut r = Mat::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = &o[(k, j)];
                    if !b.is_zero() {
                        r[(i, j)] += a * b;
                    }
                }
            }
        }
        r
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| (0..self.cols).fold(Rat::zero(), |acc, j| acc + &self[(i, j)] * &v[j]))
            .collect()
    }

    pub fn scale(&self, c: &Rat) -> Mat {
        Mat { rows: self.rows, cols: self.cols, d: self.d.iter().map(|x| x * c).collect() }
    }

    pub fn add(&self, o: &Mat) -> Mat {
        Mat { rows: self.rows, cols: self.cols, d: self.d.iter().zip(&o.d).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, o: &Mat) -> Mat {
        Mat { rows: self.rows, cols: self.cols, d: self.d.iter().zip(&o.d).map(|(a, b)| a - b).collect() }
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn entries(&self) -> &[Rat] {
        &self.d
    }

    /// Bilinear value vᵀ M w.
    pub fn bilinear(&self, v: &[Rat], w: &[Rat]) -> Rat {
        let mw = self.mul_vec(w);
        v.iter().zip(&mw).fold(Rat::zero(), |acc, (a, b)| acc + a * b)
    }

    /// Row echelon via Gaussian elimination; returns (echelon form, pivot columns, sign of permutation).
    fn echelon(&self) -> (Mat, Vec<usize>, bool) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut neg = false;
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(piv) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else { continue };
            if piv != r {
                m.swap_rows(piv, r);
                neg = !neg;
            }
            let inv = Rat::one() / &m[(r, c)];
            for i in r + 1..m.rows {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let f = &m[(i, c)] * &inv;
                for j in c..m.cols {
                    let t = &f * &m[(r, j)];
                    m[(i, j)] -= t;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots, neg)
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.d.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.echelon().1.len()
    }

    pub fn det(&self) -> Rat {
        assert_eq!(self.rows, self.cols);
        let (e, piv, neg) = self.echelon();
        if piv.len() < self.rows {
            return Rat::zero();
        }
        let d = (0..self.rows).fold(Rat::one(), |acc, i| acc * &e[(i, i)]);
        if neg {
            -d
        } else {
            d
        }
    }

    /// Solve self · X = rhs; `None` when inconsistent. For singular but consistent systems a particular solution is returned.
    pub fn solve(&self, rhs: &Mat) -> Option<Mat> {
        assert_eq!(self.rows, rhs.rows);
        let n = self.cols;
        let mut aug = Mat::zeros(self.rows, n + rhs.cols);
        for i in 0..self.rows {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..rhs.cols {
                aug[(i, n + j)] = rhs[(i, j)].clone();
            }
        }
        let (rref, pivots) = aug.rref();
        if pivots.iter().any(|&c| c >= n) {
            return None;
        }
        let mut x = Mat::zeros(n, rhs.cols);
        for (r, &c) in pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x[(c, j)] = rref[(r, n + j)].clone();
            }
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Mat> {
        assert_eq!(self.rows, self.cols);
        if self.rank() < self.rows {
            return None;
        }
        self.solve(&Mat::identity(self.rows))
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Mat, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(piv) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else { continue };
            m.swap_rows(piv, r);
            let inv = Rat::one() / &m[(r, c)];
            for j in c..m.cols {
                m[(r, j)] *= &inv;
            }
            for i in 0..m.rows {
                if i != r && !m[(i, c)].is_zero() {
                    let f = m[(i, c)].clone();
                    for j in c..m.cols {
                        let t = &f * &m[(r, j)];
                        m[(i, j)] -= t;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    /// Basis of the right kernel, as columns.
    pub fn kernel(&self) -> Vec<Vec<Rat>> {
        let (rref, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rat::zero(); self.cols];
                v[f] = Rat::one();
                for (r, &c) in pivots.iter().enumerate() {
                    v[c] = -rref[(r, f)].clone();
                }
                v
            })
            .collect()
    }

    /// Minimal valuation over nonzero entries; `None` for the zero matrix.
    pub fn min_val(&self, p: u64) -> Option<i64> {
        self.d.iter().filter(|x| !x.is_zero()).map(|x| vp(x, p)).min()
    }
}

/// Canonical representative of x modulo p^e Z_(p): N / p^s with 0 ≤ N < p^(e+s).
pub fn reduce_mod_pe(x: &Rat, p: u64, e: i64) -> Rat {
    if x.is_zero() {
        return Rat::zero();
    }
    let s = (-vp(x, p)).max(0).max(-e);
    let y = x * p_pow(p, s);
    let m = p_pow(p, e + s);
    let m_int = m.to_integer();
    let yr = Rat::from_integer(mod_floor_rat(&y, &m_int));
    yr / p_pow(p, s)
}

/// For p-integral y, the integer in [0, m) congruent to y modulo m (m a power of p).
fn mod_floor_rat(y: &Rat, m: &num::BigInt) -> num::BigInt {
    use num::Integer;
    let n = y.numer().mod_floor(m);
    let d = y.denom().mod_floor(m);
    let inv = {
        let e = d.extended_gcd(m);
        e.x.mod_floor(m)
    };
    (n * inv).mod_floor(m)
}

/// Column Hermite normal form over Z_(p) of the module generated by the columns of `gens`.
/// Output is square upper triangular with diagonal p^(e_i) and entries above the diagonal
/// reduced modulo the pivot of their row.
pub fn hermite_padic(gens: &Mat, p: u64) -> Result<Mat> {
    let n = gens.rows;
    let mut cols: Vec<Vec<Rat>> = gens.cols_vec();
    let mut out: Vec<Option<Vec<Rat>>> = vec![None; n];
    for i in (0..n).rev() {
        let best = cols
            .iter()
            .enumerate()
            .filter(|(_, c)| !c[i].is_zero())
            .min_by_key(|(j, c)| (vp(&c[i], p), *j))
            .map(|(j, _)| j);
        let Some(b) = best else {
            return Err(Error::invalid("generators do not span a full-rank lattice"));
        };
        let mut piv = cols.remove(b);
        let u = unit_part(&piv[i], p);
        for x in piv.iter_mut() {
            *x = &*x / &u;
        }
        for c in cols.iter_mut() {
            if c[i].is_zero() {
                continue;
            }
            let f = &c[i] / &piv[i];
            for (a, b) in c.iter_mut().zip(&piv) {
                *a -= &f * b;
            }
        }
        out[i] = Some(piv);
    }
    let mut basis: Vec<Vec<Rat>> = out.into_iter().map(|c| c.unwrap()).collect();
    for j in 0..n {
        for i in (0..j).rev() {
            let e = vp(&basis[i][i], p);
            let x = basis[j][i].clone();
            let r = reduce_mod_pe(&x, p, e);
            if r != x {
                let f = (&x - &r) / &basis[i][i];
                let bi = basis[i].clone();
                for (a, b) in basis[j].iter_mut().zip(&bi) {
                    *a -= &f * b;
                }
            }
        }
    }
    Ok(Mat::from_cols(&basis))
}

/// Valuations of the elementary divisors of a square nonsingular matrix over Z_(p), sorted.
pub fn smith_valuations(m: &Mat, p: u64) -> Result<Vec<i64>> {
    assert_eq!(m.rows, m.cols);
    let mut a = m.clone();
    let n = a.rows;
    let mut vals = Vec::with_capacity(n);
    for k in 0..n {
        let mut best: Option<(i64, usize, usize)> = None;
        for i in k..n {
            for j in k..n {
                if !a[(i, j)].is_zero() {
                    let v = vp(&a[(i, j)], p);
                    if best.map_or(true, |(bv, _, _)| v < bv) {
                        best = Some((v, i, j));
                    }
                }
            }
        }
        let Some((v, bi, bj)) = best else {
            return Err(Error::invalid("singular matrix has no full set of elementary divisors"));
        };
        a.swap_rows(bi, k);
        for i in 0..n {
            a.d.swap(i * n + bj, i * n + k);
        }
        let piv = a[(k, k)].clone();
        for i in k + 1..n {
            if a[(i, k)].is_zero() {
                continue;
            }
            let f = &a[(i, k)] / &piv;
            for j in k..n {
                let t = &f * &a[(k, j)];
                a[(i, j)] -= t;
            }
        }
        for j in k + 1..n {
            if a[(k, j)].is_zero() {
                continue;
            }
            let f = &a[(k, j)] / &piv;
            for i in k..n {
                let t = &f * &a[(i, k)];
                a[(i, j)] -= t;
            }
        }
        vals.push(v);
    }
    vals.sort();
    Ok(vals)
}

pub fn is_p_integral(x: &Rat, p: u64) -> bool {
    x.is_zero() || vp(x, p) >= 0
}

pub fn vec_is_zero(v: &[Rat]) -> bool {
    v.iter().all(|x| x.is_zero())
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).fold(Rat::zero(), |acc, (x, y)| acc + x * y)
}

pub fn abs_max(m: &Mat) -> Rat {
    m.d.iter().map(|x| x.abs()).max().unwrap_or_else(Rat::zero)
}

/// Reduce a p-integral matrix entrywise mod p.
pub fn reduce_mod_p(m: &Mat, p: u64) -> Result<Vec<Vec<u64>>> {
    (0..m.rows)
        .map(|i| {
            (0..m.cols)
                .map(|j| {
                    let x = &m[(i, j)];
                    if is_p_integral(x, p) {
                        Ok(mod_int(x, p))
                    } else {
                        Err(Error::invalid("matrix is not p-integral"))
                    }
                })
                .collect()
        })
        .collect()
}

/// Matrices over F_q with entries as packed field elements.
pub mod fqmat {
    use super::*;

    pub type FMat = Vec<Vec<u64>>;

    pub fn identity(n: usize) -> FMat {
        (0..n).map(|i| (0..n).map(|j| u64::from(i == j)).collect()).collect()
    }

    pub fn mul(f: &FiniteField, a: &FMat, b: &FMat) -> FMat {
        let m = b.first().map_or(0, |r| r.len());
        a.iter()
            .map(|row| {
                (0..m)
                    .map(|j| row.iter().enumerate().fold(0, |acc, (k, &x)| f.add(acc, f.mul(x, b[k][j]))))
                    .collect()
            })
            .collect()
    }

    pub fn mul_vec(f: &FiniteField, a: &FMat, v: &[u64]) -> Vec<u64> {
        a.iter().map(|row| row.iter().zip(v).fold(0, |acc, (&x, &y)| f.add(acc, f.mul(x, y)))).collect()
    }

    pub fn transpose(a: &FMat) -> FMat {
        let m = a.first().map_or(0, |r| r.len());
        (0..m).map(|j| a.iter().map(|r| r[j]).collect()).collect()
    }

    /// xᵀ G y.
    pub fn bilinear(f: &FiniteField, g: &FMat, x: &[u64], y: &[u64]) -> u64 {
        let gy = mul_vec(f, g, y);
        x.iter().zip(&gy).fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
    }

    /// Reduced row echelon form in place; returns pivot columns.
    pub fn rref(f: &FiniteField, m: &mut FMat) -> Vec<usize> {
        let rows = m.len();
        let cols = m.first().map_or(0, |r| r.len());
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(piv) = (r..rows).find(|&i| m[i][c] != 0) else { continue };
            m.swap(piv, r);
            let inv = f.inv(m[r][c]);
            for x in m[r].iter_mut() {
                *x = f.mul(*x, inv);
            }
            for i in 0..rows {
                if i != r && m[i][c] != 0 {
                    let fac = m[i][c];
                    for j in 0..cols {
                        let t = f.mul(fac, m[r][j]);
                        m[i][j] = f.sub(m[i][j], t);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        m.truncate(r);
        pivots
    }

    pub fn rank(f: &FiniteField, m: &FMat) -> usize {
        let mut c = m.clone();
        rref(f, &mut c).len()
    }

    /// Basis (rows) of the right kernel {x : m x = 0}.
    pub fn kernel(f: &FiniteField, m: &FMat, cols: usize) -> FMat {
        let mut r = m.clone();
        let pivots = rref(f, &mut r);
        (0..cols)
            .filter(|c| !pivots.contains(c))
            .map(|free| {
                let mut v = vec![0u64; cols];
                v[free] = 1;
                for (i, &c) in pivots.iter().enumerate() {
                    v[c] = f.neg(r[i][free]);
                }
                v
            })
            .collect()
    }

    pub fn det(f: &FiniteField, m: &FMat) -> u64 {
        let n = m.len();
        let mut a = m.clone();
        let mut d = 1u64;
        for c in 0..n {
            let Some(piv) = (c..n).find(|&i| a[i][c] != 0) else { return 0 };
            if piv != c {
                a.swap(piv, c);
                d = f.neg(d);
            }
            d = f.mul(d, a[c][c]);
            let inv = f.inv(a[c][c]);
            for i in c + 1..n {
                if a[i][c] != 0 {
                    let fac = f.mul(a[i][c], inv);
                    for j in c..n {
                        let t = f.mul(fac, a[c][j]);
                        a[i][j] = f.sub(a[i][j], t);
                    }
                }
            }
        }
        d
    }

    pub fn inverse(f: &FiniteField, m: &FMat) -> Option<FMat> {
        let n = m.len();
        let mut aug: FMat = m.iter().zip(identity(n)).map(|(r, e)| r.iter().copied().chain(e).collect()).collect();
        let piv = rref(f, &mut aug);
        if piv.len() < n || piv[n - 1] != n - 1 {
            return None;
        }
        Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
    }

    /// Characteristic polynomial det(T·I − m), coefficients low degree first.
    /// Reduces to upper Hessenberg form by similarity, then expands the standard recurrence.
    pub fn charpoly(f: &FiniteField, m: &FMat) -> Vec<u64> {
        let n = m.len();
        let mut h = m.clone();
        for j in 0..n.saturating_sub(2) {
            let Some(piv) = (j + 1..n).find(|&i| h[i][j] != 0) else { continue };
            if piv != j + 1 {
                h.swap(piv, j + 1);
                for row in h.iter_mut() {
                    row.swap(piv, j + 1);
                }
            }
            let inv = f.inv(h[j + 1][j]);
            for r in j + 2..n {
                if h[r][j] == 0 {
                    continue;
                }
                let u = f.mul(h[r][j], inv);
                for c in 0..n {
                    let t = f.mul(u, h[j + 1][c]);
                    h[r][c] = f.sub(h[r][c], t);
                }
                for row in h.iter_mut() {
                    let t = f.mul(u, row[r]);
                    row[j + 1] = f.add(row[j + 1], t);
                }
            }
        }
        let mut polys: Vec<Vec<u64>> = vec![vec![1]];
        for k in 1..=n {
            let prev = &polys[k - 1];
            let mut next = vec![0u64; k + 1];
            for (i, &c) in prev.iter().enumerate() {
                next[i + 1] = f.add(next[i + 1], c);
                next[i] = f.sub(next[i], f.mul(h[k - 1][k - 1], c));
            }
            let mut prod = 1u64;
            for i in 1..k {
                prod = f.mul(prod, h[k - i][k - i - 1]);
                let coef = f.mul(prod, h[k - i - 1][k - 1]);
                if coef == 0 {
                    continue;
                }
                for (t, &c) in polys[k - i - 1].iter().enumerate() {
                    next[t] = f.sub(next[t], f.mul(coef, c));
                }
            }
            polys.push(next);
        }
        polys.pop().unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{field, ratio};

    #[test]
    fn inverse_and_det() {
        let m = Mat::from_i64(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Mat::identity(3));
        assert_eq!(m.det(), rat(18));
        assert!(Mat::from_i64(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn hermite_is_canonical() {
        let a = Mat::from_i64(&[&[3, 1], &[0, 9]]);
        let b = Mat::from_i64(&[&[3, 4], &[0, 9]]);
        let ha = hermite_padic(&a, 3).unwrap();
        let hb = hermite_padic(&b, 3).unwrap();
        assert_eq!(ha, hb);
        assert_eq!(ha[(1, 1)], rat(9));
        // unit scaling and redundant generators leave the lattice unchanged
        let c = Mat::from_i64(&[&[6, 2, 4], &[0, 18, 36]]);
        assert_eq!(hermite_padic(&c, 3).unwrap(), ha);
    }

    #[test]
    fn hermite_handles_fractions() {
        let a = Mat::from_rows(vec![vec![ratio(1, 3), ratio(2, 9)], vec![rat(0), rat(1)]]);
        let h = hermite_padic(&a, 3).unwrap();
        assert_eq!(h[(0, 0)], ratio(1, 3));
        assert_eq!(h[(0, 1)], ratio(2, 9));
    }

    #[test]
    fn smith_examples() {
        let m = Mat::from_rows(vec![vec![ratio(1, 3), rat(0)], vec![rat(0), rat(1)]]);
        assert_eq!(smith_valuations(&m, 3).unwrap(), vec![-1, 0]);
        let h = Mat::from_i64(&[&[0, 3], &[3, 0]]);
        assert_eq!(smith_valuations(&h, 3).unwrap(), vec![1, 1]);
        let g = Mat::from_i64(&[&[3, 1], &[1, 3]]);
        assert_eq!(smith_valuations(&g, 3).unwrap(), vec![0, 0]);
    }

    #[test]
    fn fq_charpoly() {
        let f = field(5, 1);
        let m = vec![vec![2, 0], vec![0, 3]];
        // (T-2)(T-3) = T^2 - 5T + 6 = T^2 + 1 mod 5
        assert_eq!(fqmat::charpoly(&f, &m), vec![1, 0, 1]);
        let c = vec![vec![0, 0, 4], vec![1, 0, 2], vec![0, 1, 3]];
        // companion matrix of T^3 - 3T^2 - 2T - 4
        assert_eq!(fqmat::charpoly(&f, &c), vec![1, 3, 2, 1]);
        let d = vec![vec![1, 2, 3, 4], vec![0, 1, 4, 2], vec![3, 3, 0, 1], vec![2, 0, 1, 1]];
        let cp = fqmat::charpoly(&f, &d);
        for t in 0..5u64 {
            let shifted: Vec<Vec<u64>> = (0..4)
                .map(|i| (0..4).map(|j| f.sub(if i == j { t } else { 0 }, d[i][j])).collect())
                .collect();
            let val = cp.iter().rev().fold(0, |acc, &a| f.add(f.mul(acc, t), a));
            assert_eq!(val, fqmat::det(&f, &shifted));
        }
    }

    #[test]
    fn fq_kernel_and_inverse() {
        let f = field(3, 2);
        let m = vec![vec![1, 2, 0], vec![2, 1, 0]];
        let k = fqmat::kernel(&f, &m, 3);
        for v in &k {
            assert!(fqmat::mul_vec(&f, &m, v).iter().all(|&x| x == 0));
        }
        let a = vec![vec![1, 3], vec![4, 7]];
        let inv = fqmat::inverse(&f, &a).unwrap();
        assert_eq!(fqmat::mul(&f, &a, &inv), fqmat::identity(2));
    }
}
