//! Polynomials over F_q with Cantor–Zassenhaus root finding.

use super::fq::FiniteField;

/// Coefficients low degree first, trailing zeros trimmed. Operations take the field explicitly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FqPoly {
    pub c: Vec<u64>,
}

impl FqPoly {
    pub fn new(c: Vec<u64>) -> Self {
        let mut f = FqPoly { c };
        f.trim();
        f
    }

    fn trim(&mut self) {
        while self.c.last() == Some(&0) {
            self.c.pop();
        }
    }

    pub fn one() -> Self {
        FqPoly { c: vec![1] }
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn deg(&self) -> i64 {
        self.c.len() as i64 - 1
    }

    fn coeff(&self, i: usize) -> u64 {
        self.c.get(i).copied().unwrap_or(0)
    }

    pub fn eval(&self, f: &FiniteField, x: u64) -> u64 {
        self.c.iter().rev().fold(0, |acc, &a| f.add(f.mul(acc, x), a))
    }

    pub fn sub(&self, o: &FqPoly, f: &FiniteField) -> FqPoly {
        let n = self.c.len().max(o.c.len());
        FqPoly::new((0..n).map(|i| f.sub(self.coeff(i), o.coeff(i))).collect())
    }

    pub fn mul(&self, o: &FqPoly, f: &FiniteField) -> FqPoly {
        if self.is_zero() || o.is_zero() {
            return FqPoly::new(vec![]);
        }
        let mut r = vec![0u64; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                r[i + j] = f.add(r[i + j], f.mul(a, b));
            }
        }
        FqPoly::new(r)
    }

    pub fn div_rem(&self, d: &FqPoly, f: &FiniteField) -> (FqPoly, FqPoly) {
        assert!(!d.is_zero());
        let mut r = self.c.clone();
        let dd = d.c.len() - 1;
        if r.len() <= dd {
            return (FqPoly::new(vec![]), self.clone());
        }
        let inv = f.inv(*d.c.last().unwrap());
        let mut q = vec![0u64; r.len() - dd];
        for i in (dd..r.len()).rev() {
            let coef = f.mul(r[i], inv);
            q[i - dd] = coef;
            if coef != 0 {
                for (j, &b) in d.c.iter().enumerate() {
                    let idx = i - dd + j;
                    r[idx] = f.sub(r[idx], f.mul(coef, b));
                }
            }
        }
        r.truncate(dd);
        (FqPoly::new(q), FqPoly::new(r))
    }

    pub fn monic(&self, f: &FiniteField) -> FqPoly {
        match self.c.last() {
            None => self.clone(),
            Some(&l) => {
                let inv = f.inv(l);
                FqPoly::new(self.c.iter().map(|&a| f.mul(a, inv)).collect())
            }
        }
    }

    pub fn gcd(&self, o: &FqPoly, f: &FiniteField) -> FqPoly {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.div_rem(&b, f).1;
            a = b;
            b = r;
        }
        a.monic(f)
    }

    fn pow_mod(&self, mut e: u128, m: &FqPoly, f: &FiniteField) -> FqPoly {
        let mut base = self.div_rem(m, f).1;
        let mut r = FqPoly::one().div_rem(m, f).1;
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&base, f).div_rem(m, f).1;
            }
            base = base.mul(&base, f).div_rem(m, f).1;
            e >>= 1;
        }
        r
    }

    /// Distinct roots in F_q, sorted by index.
    pub fn roots(&self, f: &FiniteField) -> Vec<u64> {
        if self.deg() < 1 {
            return vec![];
        }
        let m = self.monic(f);
        let x = FqPoly::new(vec![0, 1]);
        // x^q - x mod m, via q = p^k successive p-th powers
        let mut h = x.clone();
        for _ in 0..f.k {
            h = h.pow_mod(f.p as u128, &m, f);
        }
        let g = m.gcd(&h.sub(&x, f), f);
        let mut out = Vec::new();
        split_roots(&g, f, 0, &mut out);
        out.sort();
        out
    }

    /// Multiplicity of a root.
    pub fn root_multiplicity(&self, f: &FiniteField, r: u64) -> u32 {
        let lin = FqPoly::new(vec![f.neg(r), 1]);
        let mut g = self.clone();
        let mut m = 0;
        loop {
            let (q, rem) = g.div_rem(&lin, f);
            if !rem.is_zero() || g.is_zero() {
                return m;
            }
            g = q;
            m += 1;
        }
    }
}

/// Split a product of distinct linear factors using shifts T + a for a = shift, shift+1, ...
fn split_roots(g: &FqPoly, f: &FiniteField, shift: u64, out: &mut Vec<u64>) {
    match g.deg() {
        d if d < 1 => {}
        1 => out.push(f.neg(f.div(g.c[0], g.c[1]))),
        _ => {
            let e = (f.q as u128 - 1) / 2;
            let mut a = shift;
            loop {
                let lin = FqPoly::new(vec![a % f.q, 1]);
                let b = lin.pow_mod(e, g, f).sub(&FqPoly::one(), f);
                let s = g.gcd(&b, f);
                if s.deg() > 0 && s.deg() < g.deg() {
                    let other = g.div_rem(&s, f).0.monic(f);
                    split_roots(&s, f, a + 1, out);
                    split_roots(&other, f, a + 1, out);
                    return;
                }
                a += 1;
                if a >= shift + f.q {
                    // every shift of a squarefree split polynomial eventually separates two roots
                    unreachable!("root splitting failed to separate factors");
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::fq::field;

    #[test]
    fn roots_of_products() {
        let f = field(5, 2);
        let rs = [3u64, 7, 11, 24];
        let poly = rs.iter().fold(FqPoly::one(), |acc, &r| acc.mul(&FqPoly::new(vec![f.neg(r), 1]), &f));
        let mut expect = rs.to_vec();
        expect.sort();
        assert_eq!(poly.roots(&f), expect);
        let sq = poly.mul(&FqPoly::new(vec![f.neg(3), 1]), &f);
        assert_eq!(sq.root_multiplicity(&f, 3), 2);
    }

    #[test]
    fn irreducible_quadratic_splits_upstairs() {
        let f1 = field(3, 1);
        let g = FqPoly::new(vec![1, 0, 1]);
        assert!(g.roots(&f1).is_empty());
        let f2 = field(3, 2);
        assert_eq!(g.roots(&f2).len(), 2);
    }
}
