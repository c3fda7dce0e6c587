//! Exact arithmetic in the cyclotomic field Q(zeta_n).
//!
//! Elements are stored in the power basis `1, zeta, ..., zeta^(phi(n)-1)`
//! modulo the n-th cyclotomic polynomial. Every decision made by the solvers
//! in this crate goes through this module; the complex embedding
//! [`to_complex`] exists only so tests can cross-check results numerically.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::numtheory::{divisors, euler_phi, gcd, modn};
use crate::poly::{q, Poly};

/// Largest conductor accepted by default: 66 is the largest n with phi(n) <= 20.
pub const DEFAULT_CONDUCTOR_LIMIT: u64 = 66;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CycError {
    #[error("conductor mismatch: {0} vs {1}")]
    ConductorMismatch(u64, u64),
    #[error("division by zero in Q(zeta_{0})")]
    DivisionByZero(u64),
    #[error("conductor {n} exceeds the limit {limit}")]
    ConductorTooLarge { n: u64, limit: u64 },
    #[error("conductor must be positive")]
    ZeroConductor,
    #[error("exponent {e} is not a unit modulo {n}")]
    NotAUnit { e: i64, n: u64 },
}

/// The n-th cyclotomic polynomial, computed by dividing `x^n - 1` by the
/// cyclotomic polynomials of all proper divisors of `n`.
pub fn cyclotomic_poly(n: u64) -> Poly {
    assert!(n >= 1, "cyclotomic_poly(0)");
    let mut p = Poly::monomial(q(1), n as usize).sub(&Poly::one());
    for d in divisors(n) {
        if d < n {
            p = p.exact_div(&cyclotomic_poly(d));
        }
    }
    p
}

type Moduli = (Arc<Poly>, Arc<Vec<BigInt>>);

/// `Phi_n` as a polynomial and as its integer coefficient vector, cached.
fn moduli(n: u64) -> Moduli {
    static CACHE: OnceLock<Mutex<HashMap<u64, Moduli>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(m) = cache.lock().unwrap().get(&n) {
        return m.clone();
    }
    let p = cyclotomic_poly(n);
    let ints = p.coeffs().iter().map(|c| c.to_integer()).collect();
    let m = (Arc::new(p), Arc::new(ints));
    cache.lock().unwrap().insert(n, m.clone());
    m
}

/// Integer numerators over a common denominator.
fn common_denominator(c: &[BigRational]) -> (Vec<BigInt>, BigInt) {
    let l = c.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    let v = c.iter().map(|x| x.numer() * (&l / x.denom())).collect();
    (v, l)
}

/// Q(zeta_n) together with its defining polynomial.
#[derive(Clone, Debug)]
pub struct CyclotomicField {
    n: u64,
    phi: usize,
    modulus: Arc<Poly>,
    int_modulus: Arc<Vec<BigInt>>,
}

impl CyclotomicField {
    pub fn new(n: u64) -> Result<Self, CycError> {
        Self::with_limit(n, DEFAULT_CONDUCTOR_LIMIT)
    }

    pub fn with_limit(n: u64, limit: u64) -> Result<Self, CycError> {
        if n == 0 {
            return Err(CycError::ZeroConductor);
        }
        if n > limit {
            return Err(CycError::ConductorTooLarge { n, limit });
        }
        let (modulus, int_modulus) = moduli(n);
        Ok(CyclotomicField { n, phi: euler_phi(n) as usize, modulus, int_modulus })
    }

    pub fn conductor(&self) -> u64 {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.phi
    }

    pub fn modulus(&self) -> &Poly {
        &self.modulus
    }

    fn from_poly(&self, p: &Poly) -> CyclotomicNumber {
        let r = p.rem(&self.modulus);
        let mut coeffs = r.coeffs().to_vec();
        coeffs.resize(self.phi, BigRational::zero());
        self.wrap(coeffs)
    }

    fn wrap(&self, coeffs: Vec<BigRational>) -> CyclotomicNumber {
        CyclotomicNumber { n: self.n, coeffs, modulus: self.modulus.clone(), int_modulus: self.int_modulus.clone() }
    }

    pub fn zero(&self) -> CyclotomicNumber {
        self.from_poly(&Poly::zero())
    }

    pub fn one(&self) -> CyclotomicNumber {
        self.from_rational(q(1))
    }

    pub fn from_rational(&self, r: BigRational) -> CyclotomicNumber {
        self.from_poly(&Poly::constant(r))
    }

    /// Element with the given power-basis coordinates (padded or reduced as needed).
    pub fn element(&self, coeffs: Vec<BigRational>) -> CyclotomicNumber {
        self.from_poly(&Poly::new(coeffs))
    }

    /// `zeta_n^(k mod n)`.
    pub fn zeta_pow(&self, k: i64) -> CyclotomicNumber {
        let e = modn(k, self.n) as usize;
        self.from_poly(&Poly::monomial(q(1), e))
    }
}

/// An element of Q(zeta_n).
#[derive(Clone)]
pub struct CyclotomicNumber {
    n: u64,
    coeffs: Vec<BigRational>,
    modulus: Arc<Poly>,
    int_modulus: Arc<Vec<BigInt>>,
}

impl PartialEq for CyclotomicNumber {
    fn eq(&self, o: &Self) -> bool {
        self.n == o.n && self.coeffs == o.coeffs
    }
}

impl Eq for CyclotomicNumber {}

impl fmt::Debug for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(z{})[{}]", self.n, self.as_poly().display_var("z"))
    }
}

impl CyclotomicNumber {
    pub fn conductor(&self) -> u64 {
        self.n
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    fn as_poly(&self) -> Poly {
        Poly::new(self.coeffs.clone())
    }

    fn field(&self) -> CyclotomicField {
        CyclotomicField {
            n: self.n,
            phi: self.coeffs.len(),
            modulus: self.modulus.clone(),
            int_modulus: self.int_modulus.clone(),
        }
    }

    fn check(&self, o: &Self) -> Result<(), CycError> {
        if self.n != o.n {
            Err(CycError::ConductorMismatch(self.n, o.n))
        } else {
            Ok(())
        }
    }

    pub fn add(&self, o: &Self) -> Result<Self, CycError> {
        self.check(o)?;
        let coeffs = self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect();
        Ok(self.field().wrap(coeffs))
    }

    pub fn sub(&self, o: &Self) -> Result<Self, CycError> {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|a| -a).collect();
        self.field().wrap(coeffs)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let coeffs = self.coeffs.iter().map(|a| a * c).collect();
        self.field().wrap(coeffs)
    }

    /// Product over a common denominator; `Phi_n` is monic with integer
    /// coefficients, so the reduction stays in the integers.
    pub fn mul(&self, o: &Self) -> Result<Self, CycError> {
        self.check(o)?;
        let phi = self.coeffs.len();
        let (x, lx) = common_denominator(&self.coeffs);
        let (y, ly) = common_denominator(&o.coeffs);
        let mut r = vec![BigInt::zero(); 2 * phi];
        for (i, a) in x.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in y.iter().enumerate() {
                r[i + j] += a * b;
            }
        }
        let m = &self.int_modulus;
        for k in (phi..r.len()).rev() {
            if r[k].is_zero() {
                continue;
            }
            let c = std::mem::take(&mut r[k]);
            for j in 0..phi {
                r[k - phi + j] -= &c * &m[j];
            }
        }
        let den = lx * ly;
        r.truncate(phi);
        Ok(self.field().wrap(r.into_iter().map(|v| BigRational::new(v, den.clone())).collect()))
    }

    /// Multiplicative inverse: solve `x * y = 1` as an integer linear system
    /// in the power basis, by fraction-free elimination.
    pub fn inv(&self) -> Result<Self, CycError> {
        if self.is_zero() {
            return Err(CycError::DivisionByZero(self.n));
        }
        let phi = self.coeffs.len();
        let (x, l) = common_denominator(&self.coeffs);
        let m = &self.int_modulus;
        // column j is x * zeta^j; stored as rows of the augmented system
        let mut a = vec![vec![BigInt::zero(); phi + 1]; phi];
        let mut col = x;
        for j in 0..phi {
            for i in 0..phi {
                a[i][j] = col[i].clone();
            }
            // multiply by zeta
            let top = col.pop().expect("phi >= 1");
            col.insert(0, BigInt::zero());
            for i in 0..phi {
                col[i] -= &top * &m[i];
            }
        }
        a[0][phi] = l;
        let mut prev = BigInt::one();
        for k in 0..phi {
            let p = (k..phi).find(|&r| !a[r][k].is_zero()).ok_or(CycError::DivisionByZero(self.n))?;
            a.swap(k, p);
            for i in k + 1..phi {
                for j in k + 1..=phi {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
                a[i][k] = BigInt::zero();
            }
            prev = a[k][k].clone();
        }
        let mut y = vec![BigRational::zero(); phi];
        for k in (0..phi).rev() {
            let mut acc = BigRational::from_integer(a[k][phi].clone());
            for j in k + 1..phi {
                acc -= &y[j] * BigRational::from_integer(a[k][j].clone());
            }
            y[k] = acc / BigRational::from_integer(a[k][k].clone());
        }
        Ok(self.field().wrap(y))
    }

    pub fn div(&self, o: &Self) -> Result<Self, CycError> {
        self.mul(&o.inv()?)
    }

    /// Image under the Galois automorphism `zeta -> zeta^e`, `gcd(e, n) = 1`.
    pub fn galois(&self, e: i64) -> Result<Self, CycError> {
        let n = self.n;
        let em = modn(e, n);
        if gcd(em, n) != 1 && n > 1 {
            return Err(CycError::NotAUnit { e, n });
        }
        let mut v = vec![BigRational::zero(); n as usize];
        for (j, c) in self.coeffs.iter().enumerate() {
            let k = (j as u64 * em % n) as usize;
            v[k] += c;
        }
        Ok(self.field().from_poly(&Poly::new(v)))
    }

    /// Complex conjugation, i.e. `zeta -> zeta^(n-1)`.
    pub fn conj(&self) -> Self {
        self.galois(self.n as i64 - 1).expect("n-1 is a unit")
    }
}

pub fn zeta_pow(n: u64, k: i64) -> Result<CyclotomicNumber, CycError> {
    Ok(CyclotomicField::new(n)?.zeta_pow(k))
}

pub fn cyc_add(x: &CyclotomicNumber, y: &CyclotomicNumber) -> Result<CyclotomicNumber, CycError> {
    x.add(y)
}

pub fn cyc_mul(x: &CyclotomicNumber, y: &CyclotomicNumber) -> Result<CyclotomicNumber, CycError> {
    x.mul(y)
}

pub fn cyc_neg(x: &CyclotomicNumber) -> CyclotomicNumber {
    x.neg()
}

pub fn cyc_inv(x: &CyclotomicNumber) -> Result<CyclotomicNumber, CycError> {
    x.inv()
}

pub fn cyc_conj(x: &CyclotomicNumber) -> CyclotomicNumber {
    x.conj()
}

/// Power-basis coordinates; these are the rational linear forms used by the
/// holomorphic Lefschetz solver.
pub fn rational_coordinates(x: &CyclotomicNumber) -> Vec<BigRational> {
    x.coeffs.clone()
}

/// Numeric value at `zeta_n = exp(2 pi i / n)`.
///
/// Test-only cross-check: nothing in the solvers depends on floating point.
pub fn to_complex(x: &CyclotomicNumber) -> Complex64 {
    let n = x.n as f64;
    x.coeffs
        .iter()
        .enumerate()
        .map(|(j, c)| {
            let v = c.to_f64().unwrap_or(f64::NAN);
            Complex64::from_polar(v, 2.0 * std::f64::consts::PI * j as f64 / n)
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::qf;

    fn f(n: u64) -> CyclotomicField {
        CyclotomicField::new(n).unwrap()
    }

    #[test]
    fn test_small_cyclotomic_polys() {
        assert_eq!(cyclotomic_poly(1), Poly::from_ints(&[-1, 1]));
        assert_eq!(cyclotomic_poly(4), Poly::from_ints(&[1, 0, 1]));
        assert_eq!(cyclotomic_poly(3), Poly::from_ints(&[1, 1, 1]));
        assert_eq!(cyclotomic_poly(15).degree(), Some(8));
        assert_eq!(cyclotomic_poly(66).degree(), Some(20));
    }

    #[test]
    fn test_zeta_pow_small() {
        assert_eq!(f(4).zeta_pow(2).coeffs(), &[q(-1), q(0)]);
        assert_eq!(f(3).zeta_pow(2).coeffs(), &[q(-1), q(-1)]);
        assert_eq!(f(5).zeta_pow(-1), f(5).zeta_pow(4));
    }

    #[test]
    fn test_inverse_of_one_minus_zeta3() {
        let k = f(3);
        let x = k.one().sub(&k.zeta_pow(1)).unwrap();
        let y = x.inv().unwrap();
        assert_eq!(y.coeffs(), &[qf(2, 3), qf(1, 3)]);
        assert!(x.mul(&y).unwrap().is_one());
    }

    #[test]
    fn test_conj() {
        assert_eq!(f(4).zeta_pow(1).conj(), f(4).zeta_pow(1).neg());
        assert_eq!(f(15).zeta_pow(2).conj(), f(15).zeta_pow(13));
        assert_eq!(f(7).from_rational(qf(5, 2)).conj(), f(7).from_rational(qf(5, 2)));
    }

    #[test]
    fn test_errors() {
        assert!(matches!(
            f(5).one().add(&f(7).one()),
            Err(CycError::ConductorMismatch(5, 7))
        ));
        assert!(matches!(f(5).zero().inv(), Err(CycError::DivisionByZero(5))));
        assert!(matches!(
            CyclotomicField::new(67),
            Err(CycError::ConductorTooLarge { n: 67, limit: 66 })
        ));
        assert!(CyclotomicField::with_limit(67, 100).is_ok());
    }
}
