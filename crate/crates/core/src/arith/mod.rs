//! Exact arithmetic: rationals with p-adic valuation, F_p polynomials and
//! finite fields F_{p^k} with Frobenius.

pub mod fpoly;
pub mod fq;
pub mod fqpoly;

use num::bigint::{BigInt, Sign};
use num::integer::Integer;
use num::rational::BigRational;
use num::traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub use fq::{field, Embedding, FiniteField, FqElt};

/// Exact rational number. Always stored in lowest terms with a positive denominator.
pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub fn check_odd_prime(p: u64) -> Result<()> {
    if p > 2 && is_prime(p) {
        Ok(())
    } else {
        Err(Error::invalid(format!("p = {p} is not an odd prime")))
    }
}

fn int_val(n: &BigInt, p: u64) -> i64 {
    let pb = BigInt::from(p);
    let mut n = n.clone();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&pb);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

/// ord_p(x), or `None` for x = 0 (the +infinity sentinel).
pub fn padic_valuation(x: &Rat, p: u64) -> Result<Option<i64>> {
    check_odd_prime(p)?;
    Ok(ord(x, p))
}

/// Unchecked valuation; `None` means zero.
pub fn ord(x: &Rat, p: u64) -> Option<i64> {
    if x.is_zero() {
        None
    } else {
        Some(int_val(x.numer(), p) - int_val(x.denom(), p))
    }
}

/// Valuation of a nonzero rational. Panics on zero.
pub fn vp(x: &Rat, p: u64) -> i64 {
    ord(x, p).expect("valuation of zero")
}

pub fn p_pow(p: u64, e: i64) -> Rat {
    let base = Rat::from_integer(BigInt::from(p));
    if e >= 0 {
        num::traits::pow(base, e as usize)
    } else {
        Rat::one() / num::traits::pow(base, (-e) as usize)
    }
}

/// The unit part x / p^ord(x).
pub fn unit_part(x: &Rat, p: u64) -> Rat {
    x / p_pow(p, vp(x, p))
}

/// Reduce a p-integral rational modulo `m` (a power of p), returned in [0, m).
pub fn mod_int(x: &Rat, m: u64) -> u64 {
    let mb = BigInt::from(m);
    let n = x.numer().mod_floor(&mb);
    let d = x.denom().mod_floor(&mb);
    let dinv = mod_inverse_big(&d, &mb).expect("denominator not invertible modulo m");
    ((n * dinv).mod_floor(&mb)).to_u64().unwrap()
}

fn mod_inverse_big(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

pub fn mod_pow(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = ((r as u128 * b as u128) % m as u128) as u64;
        }
        b = ((b as u128 * b as u128) % m as u128) as u64;
        e >>= 1;
    }
    r
}

pub fn mod_inv(a: u64, p: u64) -> u64 {
    assert!(a % p != 0, "inverse of zero mod {p}");
    mod_pow(a, p - 2, p)
}

/// Legendre symbol of an integer residue, in {-1, 0, 1}.
pub fn legendre(a: u64, p: u64) -> i32 {
    let a = a % p;
    if a == 0 {
        return 0;
    }
    if mod_pow(a, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

/// Legendre symbol of a p-adic unit given as a rational.
pub fn legendre_rat(u: &Rat, p: u64) -> i32 {
    legendre(mod_int(u, p), p)
}

/// Least positive quadratic non-residue mod p.
pub fn least_nonresidue(p: u64) -> u64 {
    (2..p).find(|&a| legendre(a, p) == -1).unwrap()
}

/// Square root mod p by search; `None` for non-residues.
pub fn sqrt_mod(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    (0..p).find(|&x| x * x % p == a)
}

pub fn rat_to_string(x: &Rat) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parse "a", "-a/b" or a decimal-free integer string.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::invalid(format!("cannot parse rational '{s}'"));
    if let Some((a, b)) = s.split_once('/') {
        let n: BigInt = a.trim().parse().map_err(|_| bad())?;
        let d: BigInt = b.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        Ok(Rat::new(n, d))
    } else {
        let n: BigInt = s.parse().map_err(|_| bad())?;
        Ok(Rat::from_integer(n))
    }
}

pub fn rat_sign(x: &Rat) -> Sign {
    if x.is_zero() {
        Sign::NoSign
    } else if x.is_positive() {
        Sign::Plus
    } else {
        Sign::Minus
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn valuation_examples() {
        assert_eq!(padic_valuation(&rat(1), 3).unwrap(), Some(0));
        assert_eq!(padic_valuation(&ratio(9, 2), 3).unwrap(), Some(2));
        assert_eq!(padic_valuation(&ratio(2, 25), 5).unwrap(), Some(-2));
        assert_eq!(padic_valuation(&rat(0), 5).unwrap(), None);
        assert_eq!(padic_valuation(&rat(3), 3).unwrap(), Some(1));
    }

    #[test]
    fn valuation_rejects_bad_prime() {
        assert!(matches!(padic_valuation(&rat(1), 2), Err(Error::InvalidInput(_))));
        assert!(matches!(padic_valuation(&rat(1), 9), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn nonresidues() {
        assert_eq!(least_nonresidue(3), 2);
        assert_eq!(least_nonresidue(5), 2);
        assert_eq!(least_nonresidue(7), 3);
    }

    #[test]
    fn rational_roundtrip() {
        for s in ["0", "-3", "5/7", "-12/5"] {
            assert_eq!(rat_to_string(&parse_rat(s).unwrap()), s);
        }
        assert!(parse_rat("1/0").is_err());
    }

    proptest! {
        #[test]
        fn valuation_is_additive(a in 1i64..10_000, b in 1i64..10_000, c in 1i64..10_000, d in 1i64..10_000,
                                 sa in any::<bool>(), p in prop::sample::select(vec![3u64, 5, 7])) {
            let x = ratio(if sa { -a } else { a }, b);
            let y = ratio(c, d);
            prop_assert_eq!(vp(&(&x * &y), p), vp(&x, p) + vp(&y, p));
        }
    }
}
