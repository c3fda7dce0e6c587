//! Dense univariate polynomials with exact rational coefficients.
//!
//! Coefficients are stored in ascending order of degree; the zero polynomial
//! is the empty vector and the leading coefficient is never zero.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<BigRational>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolyParseError {
    #[error("unexpected character {found:?} at position {pos}")]
    Unexpected { pos: usize, found: char },
    #[error("unexpected end of input at position {pos}")]
    Eof { pos: usize },
    #[error("zero denominator at position {pos}")]
    ZeroDenominator { pos: usize },
    #[error("exponent too large at position {pos}")]
    Exponent { pos: usize },
}

pub fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(q(1))
    }

    pub fn constant(c: BigRational) -> Self {
        Poly::new(vec![c])
    }

    /// `c * t^k`
    pub fn monomial(c: BigRational, k: usize) -> Self {
        let mut v = vec![BigRational::zero(); k + 1];
        v[k] = c;
        Poly::new(v)
    }

    pub fn x() -> Self {
        Poly::monomial(q(1), 1)
    }

    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Poly::new(c.iter().map(|&x| q(x)).collect())
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    /// Order of vanishing at t = 0 (`None` for the zero polynomial).
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) + o.coeff(k)).collect())
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) - o.coeff(k)).collect())
    }

    pub fn neg(&self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        Poly::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![BigRational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Poly::new(v)
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut r = Poly::one();
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    /// Euclidean division; panics on division by zero.
    pub fn divrem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by zero polynomial");
        let lc = d.lead();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut qv = vec![BigRational::zero(); r.len() - dd];
        for k in (dd..r.len()).rev() {
            if r[k].is_zero() {
                continue;
            }
            let c = &r[k] / &lc;
            for (j, dc) in d.coeffs.iter().enumerate() {
                let t = &c * dc;
                r[k - dd + j] -= t;
            }
            qv[k - dd] = c;
        }
        r.truncate(dd);
        (Poly::new(qv), Poly::new(r))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.divrem(d).1
    }

    /// Quotient of an exact division; panics if the remainder is nonzero.
    pub fn exact_div(&self, d: &Poly) -> Poly {
        let (qq, r) = self.divrem(d);
        assert!(r.is_zero(), "inexact polynomial division");
        qq
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let l = self.lead();
        self.scale(&(BigRational::one() / l))
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(&self, o: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Returns `(g, s, t)` with `s*self + t*o = g`, `g` monic.
    pub fn ext_gcd(&self, o: &Poly) -> (Poly, Poly, Poly) {
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Poly::one(), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), Poly::one());
        while !r1.is_zero() {
            let (qq, r) = r0.divrem(&r1);
            let s = s0.sub(&qq.mul(&s1));
            let t = t0.sub(&qq.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = BigRational::one() / r0.lead();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * q(k as i64))
                .collect(),
        )
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// `t^deg * p(1/t)` for a formal degree `deg >= degree(p)`.
    pub fn reversed(&self, deg: usize) -> Poly {
        let mut v = vec![BigRational::zero(); deg + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            assert!(k <= deg, "formal degree below actual degree");
            v[deg - k] = c.clone();
        }
        Poly::new(v)
    }

    /// Multiplicity of the monic irreducible-or-squarefree factor `f` in `self`.
    pub fn multiplicity_of(&self, f: &Poly) -> usize {
        assert!(f.degree().unwrap_or(0) > 0);
        if self.is_zero() {
            return usize::MAX;
        }
        let mut p = self.clone();
        let mut m = 0;
        loop {
            let (qq, r) = p.divrem(f);
            if !r.is_zero() {
                return m;
            }
            p = qq;
            m += 1;
        }
    }

    /// Yun's squarefree decomposition: pairs `(f_i, i)` with `self = c * prod f_i^i`,
    /// each `f_i` monic, squarefree, pairwise coprime and non-constant.
    pub fn squarefree_decomposition(&self) -> Vec<(Poly, usize)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = self.monic();
        let fp = f.derivative();
        let a0 = f.gcd(&fp);
        let mut b = f.exact_div(&a0);
        let c = fp.exact_div(&a0);
        let mut d = c.sub(&b.derivative());
        let mut i = 1;
        while b.degree().unwrap_or(0) > 0 {
            let a = b.gcd(&d);
            if a.degree().unwrap_or(0) > 0 {
                out.push((a.clone(), i));
            }
            b = b.exact_div(&a);
            let c = d.exact_div(&a);
            d = c.sub(&b.derivative());
            i += 1;
        }
        out
    }

    pub fn is_squarefree(&self) -> bool {
        self.squarefree_decomposition().iter().all(|(_, m)| *m == 1)
    }

    /// Rational roots of `self` (each listed once), via the rational root test.
    pub fn rational_roots(&self) -> Vec<BigRational> {
        let mut roots = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return roots;
        }
        let mut p = self.clone();
        if let Some(v) = p.valuation() {
            if v > 0 {
                roots.push(BigRational::zero());
                p = Poly::new(p.coeffs[v..].to_vec());
            }
        }
        if p.degree().unwrap_or(0) == 0 {
            return roots;
        }
        let ints = p.primitive_integer_coeffs();
        let a0 = ints[0].abs();
        let an = ints.last().unwrap().abs();
        let num_divs = int_divisors(&a0);
        let den_divs = int_divisors(&an);
        let mut cands: Vec<BigRational> = Vec::new();
        for nn in &num_divs {
            for dd in &den_divs {
                let r = BigRational::new(nn.clone(), dd.clone());
                for s in [r.clone(), -r] {
                    if !cands.contains(&s) {
                        cands.push(s);
                    }
                }
            }
        }
        for c in cands {
            if p.eval(&c).is_zero() {
                roots.push(c);
            }
        }
        roots.sort();
        roots
    }

    /// Integer coefficients of a primitive integer multiple of `self`.
    pub fn primitive_integer_coeffs(&self) -> Vec<BigInt> {
        let mut l = BigInt::one();
        for c in &self.coeffs {
            l = l.lcm(c.denom());
        }
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * BigRational::from_integer(l.clone())).to_integer())
            .collect();
        let mut g = BigInt::zero();
        for c in &ints {
            g = g.gcd(c);
        }
        if g.is_zero() {
            return ints;
        }
        ints.into_iter().map(|c| c / &g).collect()
    }

    /// Parses the sparse syntax `c*t^k + ...` (rationals as `p/q`, no floats).
    pub fn parse(s: &str, var: char) -> Result<Poly, PolyParseError> {
        PolyParser { s: s.as_bytes(), pos: 0, var: var as u8 }.parse()
    }

    pub fn display_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            if k == 0 {
                out.push_str(&a.to_string());
            } else if a.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{a}*{mono}"));
            }
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_var("t"))
    }
}

fn int_divisors(n: &BigInt) -> Vec<BigInt> {
    // Only used for rational-root candidates; coefficients here stay small.
    let n = n.abs();
    if n.is_zero() {
        return vec![BigInt::one()];
    }
    let mut out = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            out.push(d.clone());
            let o = &n / &d;
            if o != d {
                out.push(o);
            }
        }
        d += 1;
    }
    out
}

struct PolyParser<'a> {
    s: &'a [u8],
    pos: usize,
    var: u8,
}

impl PolyParser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn unexpected(&self) -> PolyParseError {
        match self.s.get(self.pos) {
            Some(&c) => PolyParseError::Unexpected { pos: self.pos, found: c as char },
            None => PolyParseError::Eof { pos: self.pos },
        }
    }

    fn number(&mut self) -> Result<BigInt, PolyParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.unexpected());
        }
        let txt = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
        Ok(txt.parse().unwrap())
    }

    fn rational(&mut self) -> Result<BigRational, PolyParseError> {
        let n = self.number()?;
        if self.peek() == Some(b'/') {
            self.pos += 1;
            let at = self.pos;
            let d = self.number()?;
            if d.is_zero() {
                return Err(PolyParseError::ZeroDenominator { pos: at });
            }
            return Ok(BigRational::new(n, d));
        }
        Ok(BigRational::from_integer(n))
    }

    fn power(&mut self) -> Result<usize, PolyParseError> {
        // after the variable
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let at = self.pos;
            let e = self.number()?;
            return e
                .try_into()
                .ok()
                .filter(|&e: &usize| e <= 4096)
                .ok_or(PolyParseError::Exponent { pos: at });
        }
        Ok(1)
    }

    fn term(&mut self) -> Result<Poly, PolyParseError> {
        match self.peek() {
            Some(c) if c == self.var => {
                self.pos += 1;
                let e = self.power()?;
                Ok(Poly::monomial(q(1), e))
            }
            Some(c) if c.is_ascii_digit() => {
                let c = self.rational()?;
                if self.peek() == Some(b'*') {
                    self.pos += 1;
                    if self.peek() != Some(self.var) {
                        return Err(self.unexpected());
                    }
                    self.pos += 1;
                    let e = self.power()?;
                    return Ok(Poly::monomial(c, e));
                }
                if self.peek() == Some(self.var) {
                    self.pos += 1;
                    let e = self.power()?;
                    return Ok(Poly::monomial(c, e));
                }
                Ok(Poly::constant(c))
            }
            _ => Err(self.unexpected()),
        }
    }

    fn parse(mut self) -> Result<Poly, PolyParseError> {
        let mut acc = Poly::zero();
        let mut sign = 1;
        match self.peek() {
            Some(b'-') => {
                sign = -1;
                self.pos += 1;
            }
            Some(b'+') => self.pos += 1,
            _ => {}
        }
        loop {
            let t = self.term()?;
            acc = if sign < 0 { acc.sub(&t) } else { acc.add(&t) };
            match self.peek() {
                None => return Ok(acc),
                Some(b'+') => sign = 1,
                Some(b'-') => sign = -1,
                Some(_) => return Err(self.unexpected()),
            }
            self.pos += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn test_divrem_roundtrip() {
        let a = Poly::from_ints(&[1, 0, 0, 0, 0, 1]);
        let b = Poly::from_ints(&[1, 1]);
        let (qq, r) = a.divrem(&b);
        assert_eq!(qq.mul(&b).add(&r), a);
        assert!(r.is_zero());
    }

    #[test]
    fn test_gcd_and_ext() {
        let a = Poly::from_ints(&[-1, 0, 1]);
        let b = Poly::from_ints(&[1, 2, 1]);
        assert_eq!(a.gcd(&b), Poly::from_ints(&[1, 1]));
        let (g, s, t) = a.ext_gcd(&b);
        assert_eq!(s.mul(&a).add(&t.mul(&b)), g);
    }

    #[test]
    fn test_squarefree() {
        // (t-1)^2 (t+2)^3 t
        let f = Poly::from_ints(&[-1, 1])
            .pow(2)
            .mul(&Poly::from_ints(&[2, 1]).pow(3))
            .mul(&Poly::x());
        let d = f.squarefree_decomposition();
        assert_eq!(d.len(), 3);
        assert_eq!(d[0], (Poly::from_ints(&[0, 1]), 1));
        assert_eq!(d[1], (Poly::from_ints(&[-1, 1]), 2));
        assert_eq!(d[2], (Poly::from_ints(&[2, 1]), 3));
    }

    #[test]
    fn test_rational_roots() {
        let f = Poly::from_ints(&[-2, 1]).mul(&Poly::from_ints(&[1, 3])).mul(&Poly::from_ints(&[1, 0, 1]));
        assert_eq!(f.rational_roots(), vec![qf(-1, 3), q(2)]);
    }

    #[test]
    fn test_parse_display() {
        let p = Poly::parse("t^11 - 1", 't').unwrap();
        assert_eq!(p.coeff(11), q(1));
        assert_eq!(p.coeff(0), q(-1));
        assert_eq!(p.to_string(), "t^11 - 1");
        let p = Poly::parse("-3/4*t^2 + 2t + 5", 't').unwrap();
        assert_eq!(p.to_string(), "-3/4*t^2 + 2*t + 5");
        assert!(matches!(
            Poly::parse("t + 1.5", 't'),
            Err(PolyParseError::Unexpected { pos: 5, .. })
        ));
        assert!(matches!(Poly::parse("1/0", 't'), Err(PolyParseError::ZeroDenominator { .. })));
    }

    #[test]
    fn test_reversed() {
        let p = Poly::from_ints(&[1, 2]);
        assert_eq!(p.reversed(3), Poly::from_ints(&[0, 0, 2, 1]));
    }
}
