//! Infix polynomials over T with integer coefficients, reduced mod p.
//!
//! ```text
//! sum     := term (('+' | '-') term)*
//! term    := unary (('*')? unary)*        juxtaposition multiplies
//! unary   := '-' unary | power
//! power   := atom ('^' integer)?
//! atom    := integer | 'T' | '(' sum ')'
//! ```

use crate::arith::fpoly::FpPoly;
use crate::error::{Error, Result};

struct Parser<'a> {
    s: &'a [u8],
    i: usize,
    p: u64,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.i < self.s.len() && self.s[self.i].is_ascii_whitespace() {
            self.i += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.i).copied()
    }

    fn err(&self, what: &str) -> Error {
        Error::invalid(format!("polynomial parse error at byte {}: {what}", self.i))
    }

    fn integer(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.i;
        while self.i < self.s.len() && self.s[self.i].is_ascii_digit() {
            self.i += 1;
        }
        if start == self.i {
            return Err(self.err("expected an integer"));
        }
        std::str::from_utf8(&self.s[start..self.i]).unwrap().parse().map_err(|_| self.err("integer too large"))
    }

    fn sum(&mut self) -> Result<FpPoly> {
        let mut acc = self.term()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.i += 1;
            let t = self.term()?;
            acc = if c == b'+' { acc.add(&t) } else { acc.sub(&t) };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<FpPoly> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.i += 1;
                    acc = acc.mul(&self.unary()?);
                }
                Some(b'(' | b'T' | b't' | b'0'..=b'9') => acc = acc.mul(&self.unary()?),
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<FpPoly> {
        if self.peek() == Some(b'-') {
            self.i += 1;
            return Ok(FpPoly::zero(self.p).sub(&self.unary()?));
        }
        self.power()
    }

    fn power(&mut self) -> Result<FpPoly> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.i += 1;
            let e = self.integer()?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<FpPoly> {
        match self.peek() {
            Some(b'T' | b't') => {
                self.i += 1;
                Ok(FpPoly::x(self.p))
            }
            Some(b'(') => {
                self.i += 1;
                let v = self.sum()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.i += 1;
                Ok(v)
            }
            Some(b'0'..=b'9') => {
                let n = self.integer()?;
                Ok(FpPoly::constant(self.p, n % self.p))
            }
            _ => Err(self.err("unexpected token")),
        }
    }
}

/// Parse an infix polynomial over F_p, or a JSON list of coefficients (low degree first).
pub fn parse_poly(s: &str, p: u64) -> Result<FpPoly> {
    crate::arith::check_odd_prime(p)?;
    let t = s.trim();
    if t.starts_with('[') {
        let v: Vec<i64> = serde_json::from_str(t).map_err(|e| Error::invalid(format!("bad coefficient list: {e}")))?;
        return Ok(FpPoly::from_i64(p, &v));
    }
    let mut ps = Parser { s: t.as_bytes(), i: 0, p };
    let v = ps.sum()?;
    if ps.peek().is_some() {
        return Err(ps.err("trailing input"));
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grammar() {
        let f = parse_poly("(T^2+T+1)(T-2)(T-3)", 5).unwrap();
        assert_eq!(f.to_display(), "T^4+T^3+2T^2+T+1");
        assert_eq!(parse_poly("T^2 + 1", 3).unwrap(), FpPoly::from_i64(3, &[1, 0, 1]));
        assert_eq!(parse_poly("-T+7", 5).unwrap(), FpPoly::from_i64(5, &[2, 4]));
        assert_eq!(parse_poly("2*T*T - T^2", 7).unwrap(), FpPoly::from_i64(7, &[0, 0, 1]));
        assert_eq!(parse_poly("(T+1)^4", 3).unwrap(), FpPoly::from_i64(3, &[1, 1, 0, 1, 1]));
        assert_eq!(parse_poly("[1,1,1]", 5).unwrap(), FpPoly::from_i64(5, &[1, 1, 1]));
        for bad in ["", "T+", "(T+1", "T^", "x+1", "T)"] {
            assert!(parse_poly(bad, 5).is_err(), "{bad}");
        }
    }
}
