//! Dense polynomials over F_p and their factorization into monic irreducibles.

use std::cmp::Ordering;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{mod_inv, mod_pow};

/// Polynomial over F_p with coefficients stored low degree first and no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FpPoly {
    pub p: u64,
    pub c: Vec<u64>,
}

impl FpPoly {
    pub fn new(p: u64, coeffs: Vec<u64>) -> Self {
        let mut f = FpPoly { p, c: coeffs.into_iter().map(|x| x % p).collect() };
        f.trim();
        f
    }

    /// From signed integer coefficients, low degree first.
    pub fn from_i64(p: u64, coeffs: &[i64]) -> Self {
        let pi = p as i64;
        FpPoly::new(p, coeffs.iter().map(|&x| x.rem_euclid(pi) as u64).collect())
    }

    pub fn zero(p: u64) -> Self {
        FpPoly { p, c: vec![] }
    }

    pub fn one(p: u64) -> Self {
        FpPoly { p, c: vec![1] }
    }

    pub fn x(p: u64) -> Self {
        FpPoly { p, c: vec![0, 1] }
    }

    pub fn constant(p: u64, a: u64) -> Self {
        FpPoly::new(p, vec![a])
    }

    fn trim(&mut self) {
        while self.c.last() == Some(&0) {
            self.c.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree; the zero polynomial has degree -1.
    pub fn deg(&self) -> i64 {
        self.c.len() as i64 - 1
    }

    pub fn lead(&self) -> u64 {
        *self.c.last().unwrap_or(&0)
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.c.get(i).copied().unwrap_or(0)
    }

    pub fn eval(&self, x: u64) -> u64 {
        let p = self.p;
        self.c.iter().rev().fold(0, |acc, &a| (acc * x + a) % p)
    }

    pub fn add(&self, o: &FpPoly) -> FpPoly {
        let n = self.c.len().max(o.c.len());
        FpPoly::new(self.p, (0..n).map(|i| (self.coeff(i) + o.coeff(i)) % self.p).collect())
    }

    pub fn sub(&self, o: &FpPoly) -> FpPoly {
        let n = self.c.len().max(o.c.len());
        FpPoly::new(self.p, (0..n).map(|i| (self.coeff(i) + self.p - o.coeff(i)) % self.p).collect())
    }

    pub fn scale(&self, a: u64) -> FpPoly {
        FpPoly::new(self.p, self.c.iter().map(|&x| x * (a % self.p) % self.p).collect())
    }

    pub fn mul(&self, o: &FpPoly) -> FpPoly {
        if self.is_zero() || o.is_zero() {
            return FpPoly::zero(self.p);
        }
        let p = self.p;
        let mut r = vec![0u64; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                r[i + j] = (r[i + j] + a * b) % p;
            }
        }
        FpPoly::new(p, r)
    }

    pub fn pow(&self, mut e: u64) -> FpPoly {
        let mut base = self.clone();
        let mut r = FpPoly::one(self.p);
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        r
    }

    pub fn div_rem(&self, d: &FpPoly) -> (FpPoly, FpPoly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let p = self.p;
        let mut r = self.c.clone();
        let dd = d.c.len() - 1;
        if r.len() <= dd {
            return (FpPoly::zero(p), self.clone());
        }
        let inv = mod_inv(d.lead(), p);
        let mut q = vec![0u64; r.len() - dd];
        for i in (dd..r.len()).rev() {
            let coef = r[i] * inv % p;
            q[i - dd] = coef;
            if coef != 0 {
                for (j, &b) in d.c.iter().enumerate() {
                    let idx = i - dd + j;
                    r[idx] = (r[idx] + p * p - coef * b % p) % p;
                }
            }
        }
        r.truncate(dd);
        (FpPoly::new(p, q), FpPoly::new(p, r))
    }

    pub fn rem(&self, d: &FpPoly) -> FpPoly {
        self.div_rem(d).1
    }

    pub fn monic(&self) -> FpPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(mod_inv(self.lead(), self.p))
    }

    pub fn gcd(&self, o: &FpPoly) -> FpPoly {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> FpPoly {
        let p = self.p;
        FpPoly::new(p, self.c.iter().enumerate().skip(1).map(|(i, &a)| a * (i as u64 % p) % p).collect())
    }

    pub fn mul_mod(&self, o: &FpPoly, m: &FpPoly) -> FpPoly {
        self.mul(o).rem(m)
    }

    pub fn pow_mod(&self, mut e: u128, m: &FpPoly) -> FpPoly {
        let mut base = self.rem(m);
        let mut r = FpPoly::one(self.p).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul_mod(&base, m);
            }
            base = base.mul_mod(&base, m);
            e >>= 1;
        }
        r
    }

    /// T^{p^j} mod m, by repeated p-th powering.
    fn frob_power_mod(&self, j: u32, m: &FpPoly) -> FpPoly {
        let mut r = self.rem(m);
        for _ in 0..j {
            r = r.pow_mod(self.p as u128, m);
        }
        r
    }

    /// Rabin's irreducibility test.
    pub fn is_irreducible(&self) -> bool {
        let n = self.deg();
        if n < 1 {
            return false;
        }
        if n == 1 {
            return true;
        }
        let n = n as u32;
        let f = self.monic();
        let x = FpPoly::x(self.p);
        let xn = x.frob_power_mod(n, &f);
        if xn != x.rem(&f) {
            return false;
        }
        for q in prime_factors(n as u64) {
            let h = x.frob_power_mod(n / q as u32, &f).sub(&x);
            if f.gcd(&h).deg() != 0 {
                return false;
            }
        }
        true
    }

    /// Monic reciprocal R*(T) = T^deg R(1/T) / R(0).
    pub fn reciprocal(&self) -> FpPoly {
        assert!(self.coeff(0) != 0, "reciprocal of a polynomial divisible by T");
        let mut c = self.c.clone();
        c.reverse();
        FpPoly::new(self.p, c).monic()
    }

    pub fn is_self_reciprocal(&self) -> bool {
        self.coeff(0) != 0 && self.monic() == self.reciprocal()
    }

    /// p-th root of a polynomial whose derivative vanishes.
    fn pth_root(&self) -> FpPoly {
        let p = self.p as usize;
        FpPoly::new(self.p, self.c.iter().step_by(p).copied().collect())
    }

    /// Squarefree decomposition: list of (squarefree monic factor, multiplicity).
    pub fn squarefree(&self) -> Vec<(FpPoly, u32)> {
        let mut out = Vec::new();
        self.sqf_rec(1, &mut out);
        out.sort_by(|a, b| a.1.cmp(&b.1));
        out
    }

    fn sqf_rec(&self, scale: u32, out: &mut Vec<(FpPoly, u32)>) {
        let f = self.monic();
        if f.deg() <= 0 {
            return;
        }
        let d = f.derivative();
        if d.is_zero() {
            f.pth_root().sqf_rec(scale * self.p as u32, out);
            return;
        }
        let mut c = f.gcd(&d);
        let mut w = f.div_rem(&c).0;
        let mut i = 1u32;
        while w.deg() > 0 {
            let y = w.gcd(&c);
            let z = w.div_rem(&y).0;
            if z.deg() > 0 {
                out.push((z, i * scale));
            }
            i += 1;
            w = y;
            c = c.div_rem(&w).0;
        }
        if c.deg() > 0 {
            c.pth_root().sqf_rec(scale * self.p as u32, out);
        }
    }

    /// Distinct-degree factorization of a squarefree monic polynomial.
    fn distinct_degree(&self) -> Vec<(FpPoly, u32)> {
        let mut out = Vec::new();
        let mut f = self.monic();
        let x = FpPoly::x(self.p);
        let mut h = x.rem(&f);
        let mut d = 1u32;
        while f.deg() >= 2 * d as i64 {
            h = h.pow_mod(self.p as u128, &f);
            let g = f.gcd(&h.sub(&x));
            if g.deg() > 0 {
                out.push((g.clone(), d));
                f = f.div_rem(&g).0;
                h = h.rem(&f);
            }
            d += 1;
        }
        if f.deg() > 0 {
            let dd = f.deg() as u32;
            out.push((f, dd));
        }
        out
    }

    /// Equal-degree splitting (Cantor–Zassenhaus) with a fixed-seed generator.
    fn equal_degree(&self, d: u32, rng: &mut ChaCha8Rng, out: &mut Vec<FpPoly>) {
        let n = self.deg() as u32;
        if n == d {
            out.push(self.monic());
            return;
        }
        let p = self.p;
        let e = ((p as u128).pow(d) - 1) / 2;
        loop {
            let a = FpPoly::new(p, (0..n).map(|_| rng.gen_range(0..p)).collect());
            if a.deg() < 1 {
                continue;
            }
            let g = self.gcd(&a);
            let split = if g.deg() > 0 && g.deg() < n as i64 {
                g
            } else {
                let b = a.pow_mod(e, self).sub(&FpPoly::one(p));
                self.gcd(&b)
            };
            if split.deg() > 0 && split.deg() < n as i64 {
                let other = self.div_rem(&split).0;
                split.equal_degree(d, rng, out);
                other.equal_degree(d, rng, out);
                return;
            }
        }
    }

    /// Factorization into monic irreducibles with multiplicities, sorted canonically.
    pub fn factor(&self) -> Vec<(FpPoly, u32)> {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let mut out: Vec<(FpPoly, u32)> = Vec::new();
        for (sf, m) in self.squarefree() {
            for (g, d) in sf.distinct_degree() {
                let mut pieces = Vec::new();
                g.equal_degree(d, &mut rng, &mut pieces);
                for q in pieces {
                    match out.iter_mut().find(|(f, _)| *f == q) {
                        Some(entry) => entry.1 += m,
                        None => out.push((q, m)),
                    }
                }
            }
        }
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }

    /// Index of a monic polynomial among monic polynomials of its degree.
    pub fn lex_index(&self) -> u128 {
        let n = self.c.len().saturating_sub(1);
        self.c[..n].iter().rev().fold(0u128, |acc, &a| acc * self.p as u128 + a as u128)
    }

    /// Display with coefficients in [0, p), e.g. "T^2+T+1", "T+3".
    pub fn to_display(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for i in (0..self.c.len()).rev() {
            let a = self.c[i];
            if a == 0 {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "T".into(),
                _ => format!("T^{i}"),
            };
            parts.push(match (a, i) {
                (_, 0) => a.to_string(),
                (1, _) => mono,
                _ => format!("{a}{mono}"),
            });
        }
        parts.join("+")
    }
}

impl Ord for FpPoly {
    /// Degree first, then coefficients from the top down.
    fn cmp(&self, o: &Self) -> Ordering {
        self.c.len().cmp(&o.c.len()).then_with(|| self.c.iter().rev().cmp(o.c.iter().rev()))
    }
}

impl PartialOrd for FpPoly {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_display())
    }
}

pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Lowest monic irreducible of degree k, scanning lower coefficients with c_{k-1} most significant.
pub fn lowest_irreducible(p: u64, k: u32) -> FpPoly {
    let total = (p as u128).pow(k);
    for idx in 0..total {
        let mut c = Vec::with_capacity(k as usize + 1);
        let mut t = idx;
        for _ in 0..k {
            c.push((t % p as u128) as u64);
            t /= p as u128;
        }
        c.push(1);
        let f = FpPoly::new(p, c);
        if f.is_irreducible() {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// Value of the Legendre symbol-like test a^((p-1)/2) for convenience in tests.
pub fn is_square_mod(a: u64, p: u64) -> bool {
    a % p == 0 || mod_pow(a, (p - 1) / 2, p) == 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn poly(p: u64, c: &[i64]) -> FpPoly {
        FpPoly::from_i64(p, c)
    }

    fn product(fs: &[(FpPoly, u32)], p: u64) -> FpPoly {
        fs.iter().fold(FpPoly::one(p), |acc, (f, m)| acc.mul(&f.pow(*m as u64)))
    }

    #[test]
    fn irreducibility() {
        assert!(poly(5, &[1, 1, 1]).is_irreducible());
        assert!(poly(5, &[1, 4, 1]).is_irreducible());
        assert!(!poly(5, &[1, 0, 1]).is_irreducible());
        assert!(poly(3, &[1, 0, 1]).is_irreducible());
        assert!(!poly(3, &[1, 1, 1]).is_irreducible());
    }

    #[test]
    fn lowest_moduli() {
        assert_eq!(lowest_irreducible(3, 2), poly(3, &[1, 0, 1]));
        assert_eq!(lowest_irreducible(5, 2), poly(5, &[2, 0, 1]));
        assert_eq!(lowest_irreducible(3, 3), poly(3, &[1, 2, 0, 1]));
    }

    #[test]
    fn factor_examples() {
        let f = poly(5, &[1, 1, 1]).mul(&poly(5, &[-2, 1])).mul(&poly(5, &[-3, 1]));
        let fs = f.factor();
        assert_eq!(fs.len(), 3);
        assert_eq!(product(&fs, 5), f);
        let g = poly(3, &[1, 1]).pow(4);
        assert_eq!(g.factor(), vec![(poly(3, &[1, 1]), 4)]);
        let h = poly(3, &[0, 0, 0, 1]).sub(&poly(3, &[0, 1])).pow(3);
        assert_eq!(product(&h.factor(), 3), h);
    }

    #[test]
    fn reciprocal_normalization() {
        assert_eq!(poly(5, &[-2, 1]).reciprocal(), poly(5, &[-3, 1]));
        assert!(poly(5, &[1, 1, 1]).is_self_reciprocal());
        assert!(poly(3, &[-1, 1]).is_self_reciprocal());
    }

    #[test]
    fn display() {
        assert_eq!(poly(5, &[1, 1, 1]).to_display(), "T^2+T+1");
        assert_eq!(poly(5, &[-2, 1]).to_display(), "T+3");
        assert_eq!(poly(3, &[2, 0, 2]).to_display(), "2T^2+2");
    }

    proptest! {
        #[test]
        fn factorization_multiplies_back(p in prop::sample::select(vec![3u64, 5, 7]),
                                         c in prop::collection::vec(0u64..7, 1..9)) {
            let mut c = c;
            c.push(1);
            let f = FpPoly::new(p, c);
            let fs = f.factor();
            prop_assert_eq!(product(&fs, p), f.monic());
            for (g, _) in &fs {
                prop_assert!(g.is_irreducible());
            }
        }

        #[test]
        fn div_rem_identity(a in prop::collection::vec(0u64..5, 0..8), b in prop::collection::vec(0u64..5, 1..5)) {
            let a = FpPoly::new(5, a);
            let mut b = b;
            b.push(1);
            let b = FpPoly::new(5, b);
            let (q, r) = a.div_rem(&b);
            prop_assert_eq!(q.mul(&b).add(&r), a);
            prop_assert!(r.deg() < b.deg());
        }
    }
}
