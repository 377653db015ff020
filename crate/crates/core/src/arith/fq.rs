//! Finite fields F_{p^k}. Elements are packed as integers sum c_i p^i over the
//! polynomial basis of the stored modulus.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use super::fpoly::{lowest_irreducible, prime_factors, FpPoly};
use super::mod_inv;

/// Fields up to this size get log/exp tables.
const TABLE_LIMIT: u64 = 1 << 20;

#[derive(Debug)]
pub struct FiniteField {
    pub p: u64,
    pub k: u32,
    pub q: u64,
    pub modulus: FpPoly,
    tables: Option<Tables>,
}

#[derive(Debug)]
struct Tables {
    exp: Vec<u64>,
    log: Vec<u32>,
}

/// Public element representation used in JSON.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FqElt {
    pub p: u64,
    pub k: u32,
    pub coeffs: Vec<u64>,
}

static FIELDS: OnceLock<Mutex<HashMap<(u64, u32), Arc<FiniteField>>>> = OnceLock::new();

/// Shared field instance for (p, k).
pub fn field(p: u64, k: u32) -> Arc<FiniteField> {
    let cache = FIELDS.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(f) = cache.lock().unwrap().get(&(p, k)) {
        return f.clone();
    }
    let f = Arc::new(FiniteField::new(p, k));
    cache.lock().unwrap().entry((p, k)).or_insert(f).clone()
}

impl FiniteField {
    pub fn new(p: u64, k: u32) -> Self {
        assert!(k >= 1);
        let q = p.checked_pow(k).expect("field too large");
        let modulus = if k == 1 { FpPoly::x(p) } else { lowest_irreducible(p, k) };
        let mut f = FiniteField { p, k, q, modulus, tables: None };
        if q <= TABLE_LIMIT && k > 1 {
            f.tables = Some(f.build_tables());
        }
        f
    }

    fn build_tables(&self) -> Tables {
        let q = self.q;
        let factors = prime_factors(q - 1);
        let g = (2..q)
            .find(|&g| factors.iter().all(|&r| self.pow_slow(g, (q - 1) / r) != 1))
            .expect("multiplicative group is cyclic");
        let mut exp = Vec::with_capacity(q as usize - 1);
        let mut log = vec![0u32; q as usize];
        let mut x = 1u64;
        for i in 0..q - 1 {
            exp.push(x);
            log[x as usize] = i as u32;
            x = self.mul_slow(x, g);
        }
        Tables { exp, log }
    }

    pub fn digits(&self, a: u64) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.k as usize);
        let mut t = a;
        for _ in 0..self.k {
            out.push(t % self.p);
            t /= self.p;
        }
        out
    }

    pub fn from_digits(&self, d: &[u64]) -> u64 {
        d.iter().rev().fold(0, |acc, &c| acc * self.p + c % self.p)
    }

    pub fn from_int(&self, a: i64) -> u64 {
        a.rem_euclid(self.p as i64) as u64
    }

    /// The class of T in the polynomial basis.
    pub fn theta(&self) -> u64 {
        if self.k == 1 {
            0
        } else {
            self.p
        }
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        if self.k == 1 {
            return (a + b) % self.p;
        }
        let p = self.p;
        let (mut a, mut b) = (a, b);
        let mut r = 0u64;
        let mut w = 1u64;
        for _ in 0..self.k {
            r += ((a % p + b % p) % p) * w;
            a /= p;
            b /= p;
            w *= p;
        }
        r
    }

    pub fn neg(&self, a: u64) -> u64 {
        if self.k == 1 {
            return (self.p - a) % self.p;
        }
        let p = self.p;
        let mut a = a;
        let mut r = 0u64;
        let mut w = 1u64;
        for _ in 0..self.k {
            r += ((p - a % p) % p) * w;
            a /= p;
            w *= p;
        }
        r
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }

    fn mul_slow(&self, a: u64, b: u64) -> u64 {
        let pa = FpPoly::new(self.p, self.digits(a));
        let pb = FpPoly::new(self.p, self.digits(b));
        let r = pa.mul(&pb).rem(&self.modulus);
        self.from_digits(&r.c)
    }

    fn pow_slow(&self, a: u64, mut e: u64) -> u64 {
        let mut base = a;
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul_slow(r, base);
            }
            base = self.mul_slow(base, base);
            e >>= 1;
        }
        r
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        if a == 0 || b == 0 {
            return 0;
        }
        if self.k == 1 {
            return ((a as u128 * b as u128) % self.p as u128) as u64;
        }
        match &self.tables {
            Some(t) => {
                let s = t.log[a as usize] as u64 + t.log[b as usize] as u64;
                t.exp[(s % (self.q - 1)) as usize]
            }
            None => self.mul_slow(a, b),
        }
    }

    pub fn pow(&self, a: u64, e: u64) -> u64 {
        if self.k == 1 {
            return super::mod_pow(a, e, self.p);
        }
        if a == 0 {
            return if e == 0 { 1 } else { 0 };
        }
        match &self.tables {
            Some(t) => {
                let s = (t.log[a as usize] as u128 * e as u128) % (self.q - 1) as u128;
                t.exp[s as usize]
            }
            None => self.pow_slow(a, e),
        }
    }

    pub fn inv(&self, a: u64) -> u64 {
        assert!(a != 0, "inverse of zero in F_q");
        if self.k == 1 {
            return mod_inv(a, self.p);
        }
        match &self.tables {
            Some(t) => {
                let l = t.log[a as usize] as u64;
                t.exp[((self.q - 1 - l) % (self.q - 1)) as usize]
            }
            None => self.pow_slow(a, self.q - 2),
        }
    }

    pub fn div(&self, a: u64, b: u64) -> u64 {
        self.mul(a, self.inv(b))
    }

    /// x ↦ x^p.
    pub fn frobenius(&self, a: u64) -> u64 {
        self.pow(a, self.p)
    }

    /// x ↦ x^{p^j}.
    pub fn frobenius_pow(&self, a: u64, j: u32) -> u64 {
        let mut r = a;
        for _ in 0..(j % self.k) {
            r = self.frobenius(r);
        }
        r
    }

    pub fn is_square(&self, a: u64) -> bool {
        a == 0 || self.pow(a, (self.q - 1) / 2) == 1
    }

    pub fn sqrt(&self, a: u64) -> Option<u64> {
        if a == 0 {
            return Some(0);
        }
        if !self.is_square(a) {
            return None;
        }
        if self.q <= TABLE_LIMIT {
            return (1..self.q).find(|&x| self.mul(x, x) == a);
        }
        super::fqpoly::FqPoly::new(vec![self.neg(a), 0, 1]).roots(self).into_iter().next()
    }

    pub fn to_elt(&self, a: u64) -> FqElt {
        FqElt { p: self.p, k: self.k, coeffs: self.digits(a) }
    }

    pub fn from_elt(&self, e: &FqElt) -> u64 {
        assert_eq!((e.p, e.k), (self.p, self.k));
        self.from_digits(&e.coeffs)
    }

    /// Whether a lies in the subfield F_{p^j}.
    pub fn in_subfield(&self, a: u64, j: u32) -> bool {
        self.frobenius_pow(a, j) == a
    }
}

/// Embedding of F_{p^j} into F_{p^k} for j | k, sending the basis generator to
/// the smallest root of the level-j modulus.
pub struct Embedding {
    pub small: Arc<FiniteField>,
    pub big: Arc<FiniteField>,
    image: Vec<u64>,
    preimage: HashMap<u64, u64>,
}

impl Embedding {
    pub fn new(small: Arc<FiniteField>, big: Arc<FiniteField>) -> Self {
        assert_eq!(small.p, big.p);
        assert_eq!(big.k % small.k, 0, "subfield degree must divide");
        let beta = if small.k == 1 {
            0
        } else {
            let m = super::fqpoly::FqPoly::new(small.modulus.c.clone());
            let mut roots = m.roots(&big);
            roots.sort();
            roots[0]
        };
        let mut image = Vec::with_capacity(small.q as usize);
        let mut preimage = HashMap::new();
        for a in 0..small.q {
            let d = small.digits(a);
            let mut acc = 0u64;
            let mut pw = 1u64;
            for &c in &d {
                acc = big.add(acc, big.mul(c % big.p, pw));
                pw = big.mul(pw, beta);
            }
            image.push(acc);
            preimage.insert(acc, a);
        }
        Embedding { small, big, image, preimage }
    }

    pub fn up(&self, a: u64) -> u64 {
        self.image[a as usize]
    }

    pub fn down(&self, b: u64) -> Option<u64> {
        self.preimage.get(&b).copied()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn field_axioms_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for (p, k) in [(3u64, 2u32), (5, 2), (3, 3), (7, 2)] {
            let f = field(p, k);
            for _ in 0..200 {
                let (a, b, c) = (rng.gen_range(0..f.q), rng.gen_range(0..f.q), rng.gen_range(0..f.q));
                assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a)), 1);
                }
                assert_eq!(f.add(a, f.neg(a)), 0);
            }
        }
    }

    #[test]
    fn table_and_slow_paths_agree() {
        let f = field(3, 4);
        for a in 0..f.q {
            for b in [1u64, 2, 5, 17, 80] {
                assert_eq!(f.mul(a, b), f.mul_slow(a, b));
            }
        }
    }

    #[test]
    fn frobenius_basics() {
        let f = field(3, 2);
        for a in 0..3 {
            assert_eq!(f.frobenius(a), a);
        }
        let t = f.theta();
        assert_eq!(f.frobenius(t), f.mul(t, f.mul(t, t)));
        let f5 = field(5, 2);
        for a in 0..f5.q {
            assert_eq!(f5.frobenius_pow(a, 2), a);
        }
    }

    #[test]
    fn fixed_field_is_prime_field() {
        for p in [3u64, 5] {
            for k in 1..=3 {
                let f = field(p, k);
                let fixed: Vec<u64> = (0..f.q).filter(|&a| f.frobenius(a) == a).collect();
                assert_eq!(fixed, (0..p).collect::<Vec<_>>());
            }
        }
    }

    #[test]
    fn large_field_without_tables() {
        let f = FiniteField::new(3, 13);
        assert!(f.tables.is_none());
        let a = 12345u64;
        assert_eq!(f.mul(a, f.inv(a)), 1);
        assert_eq!(f.frobenius_pow(a, 13), a);
    }

    #[test]
    fn embedding_is_a_homomorphism() {
        let e = Embedding::new(field(3, 2), field(3, 4));
        let (s, b) = (&e.small, &e.big);
        for x in 0..s.q {
            for y in 0..s.q {
                assert_eq!(e.up(s.mul(x, y)), b.mul(e.up(x), e.up(y)));
                assert_eq!(e.up(s.add(x, y)), b.add(e.up(x), e.up(y)));
            }
            assert_eq!(e.down(e.up(x)), Some(x));
        }
    }
}
