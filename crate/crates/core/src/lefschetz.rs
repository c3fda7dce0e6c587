//! Eigenspace dimensions, topological Lefschetz numbers and the holomorphic
//! Lefschetz solver.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use serde::Serialize;
use thiserror::Error;

use crate::cyclotomic::{CycError, CyclotomicField, CyclotomicNumber};
use crate::intsolve::{self, IntProblem, Relation, SideCondition};
use crate::numtheory::{divisors, divisors_desc, euler_phi, gcd, mobius, modn};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LefschetzError {
    #[error(transparent)]
    Cyclotomic(#[from] CycError),
    #[error("{k} does not divide {n}")]
    NotADivisor { k: u64, n: u64 },
    #[error("dimensions do not sum to 22 (got {0})")]
    BadTotal(u64),
    #[error("expected {expected} entries, got {got}")]
    BadLength { expected: usize, got: usize },
    #[error("type index {i} out of range 1..={max} for order {n}")]
    BadTypeIndex { i: usize, n: u64, max: usize },
    #[error("order must be at least 2")]
    OrderTooSmall,
}

/// Sum of the m-th powers of the primitive k-th roots of unity.
pub fn ramanujan(k: u64, m: i64) -> i64 {
    assert!(k >= 1);
    let g = gcd(k, m.unsigned_abs());
    let q = k / g;
    mobius(q) * (euler_phi(k) / euler_phi(q)) as i64
}

/// Dimensions `d_k` of the zeta_k-eigenspaces of sigma^* on H^2(X, C).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EigenDims {
    n: u64,
    d: BTreeMap<u64, u64>,
}

impl EigenDims {
    pub fn new(n: u64, d: BTreeMap<u64, u64>) -> Result<Self, LefschetzError> {
        if n < 2 {
            return Err(LefschetzError::OrderTooSmall);
        }
        let mut full = BTreeMap::new();
        for k in divisors(n) {
            full.insert(k, 0);
        }
        for (&k, &v) in &d {
            if k == 0 || n % k != 0 {
                return Err(LefschetzError::NotADivisor { k, n });
            }
            full.insert(k, v);
        }
        let total: u64 = full.iter().map(|(&k, &v)| euler_phi(k) * v).sum();
        if total != 22 {
            return Err(LefschetzError::BadTotal(total));
        }
        Ok(EigenDims { n, d: full })
    }

    /// Build from the tuple `(d_n, ..., d_1)` listed by decreasing divisor.
    pub fn from_desc(n: u64, tuple: &[u64]) -> Result<Self, LefschetzError> {
        let ds = divisors_desc(n);
        if ds.len() != tuple.len() {
            return Err(LefschetzError::BadLength { expected: ds.len(), got: tuple.len() });
        }
        Self::new(n, ds.into_iter().zip(tuple.iter().copied()).collect())
    }

    pub fn order(&self) -> u64 {
        self.n
    }

    pub fn get(&self, k: u64) -> u64 {
        self.d.get(&k).copied().unwrap_or(0)
    }

    pub fn map(&self) -> &BTreeMap<u64, u64> {
        &self.d
    }

    pub fn to_desc(&self) -> Vec<u64> {
        self.d.values().rev().copied().collect()
    }

    /// Eigenspace dimensions of sigma^m (an automorphism of order n / gcd(n, m)).
    pub fn power(&self, m: u64) -> EigenDims {
        let n2 = self.n / gcd(self.n, m % self.n);
        let mut d = BTreeMap::new();
        for (&k, &v) in &self.d {
            // zeta_k^m is a primitive k'-th root with k' = k / gcd(k, m);
            // phi(k) eigenvalues collapse onto phi(k') of them.
            let k2 = k / gcd(k, m);
            *d.entry(k2).or_insert(0) += v * euler_phi(k) / euler_phi(k2);
        }
        if n2 == 1 {
            // Identity: store as order-1 data; only d_1 = 22 remains.
            return EigenDims { n: 1, d };
        }
        EigenDims::new(n2, d).expect("power of a valid dimension vector")
    }
}

impl fmt::Display for EigenDims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.to_desc().iter().map(|x| x.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

impl Serialize for EigenDims {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("EigenDims", 3)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("divisors", &divisors_desc(self.n))?;
        st.serialize_field("d", &self.to_desc())?;
        st.end()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DimConstraint {
    pub k: u64,
    pub rel: Relation,
    pub value: u64,
}

/// All dimension vectors with `sum phi(k) d_k = 22` meeting the constraints,
/// ordered lexicographically on the tuple `(d_n, ..., d_1)`.
///
/// `d_1 >= 1` is always imposed: the invariant lattice contains an ample class.
pub fn enumerate_dims(
    n: u64,
    constraints: &[DimConstraint],
) -> Result<Vec<EigenDims>, LefschetzError> {
    if n < 2 {
        return Err(LefschetzError::OrderTooSmall);
    }
    for c in constraints {
        if c.k == 0 || n % c.k != 0 {
            return Err(LefschetzError::NotADivisor { k: c.k, n });
        }
    }
    let ds = divisors_desc(n);
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(ds.len());
    fn rec(
        ds: &[u64],
        left: u64,
        cur: &mut Vec<u64>,
        cons: &[DimConstraint],
        out: &mut Vec<Vec<u64>>,
    ) {
        let t = cur.len();
        if t == ds.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let k = ds[t];
        let ph = euler_phi(k);
        for v in 0..=left / ph {
            if k == 1 && v == 0 {
                continue;
            }
            if cons
                .iter()
                .filter(|c| c.k == k)
                .all(|c| c.rel.holds(v as i64, c.value as i64))
            {
                cur.push(v);
                rec(ds, left - v * ph, cur, cons, out);
                cur.pop();
            }
        }
    }
    rec(&ds, 22, &mut cur, constraints, &mut out);
    out.sort();
    Ok(out
        .into_iter()
        .map(|t| EigenDims::from_desc(n, &t).expect("enumerated vector is valid"))
        .collect())
}

/// Topological Lefschetz number chi(Fix(sigma^m)) = 2 + tr(sigma^{*m} | H^2).
pub fn chi_of_power(d: &EigenDims, m: u64) -> i64 {
    2 + d
        .d
        .iter()
        .map(|(&k, &v)| v as i64 * ramanujan(k, m as i64))
        .sum::<i64>()
}

/// chi(Fix(sigma^m)) for every proper power, keyed by `g = gcd(m, n)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChiVector {
    pub n: u64,
    pub chi: BTreeMap<u64, i64>,
}

impl ChiVector {
    pub fn of(d: &EigenDims) -> ChiVector {
        let chi = divisors(d.n)
            .into_iter()
            .filter(|&g| g < d.n)
            .map(|g| (g, chi_of_power(d, g)))
            .collect();
        ChiVector { n: d.n, chi }
    }

    /// chi(Fix(sigma^m)) for 1 <= m < n.
    pub fn get(&self, m: u64) -> Option<i64> {
        self.chi.get(&gcd(m % self.n, self.n)).copied()
    }

    /// chi of the power of order k.
    pub fn of_order(&self, k: u64) -> Option<i64> {
        if k <= 1 || self.n % k != 0 {
            return None;
        }
        self.chi.get(&(self.n / k)).copied()
    }
}

fn check_unit(n: u64, e: i64) -> Result<(), LefschetzError> {
    if n >= 2 && gcd(modn(e, n), n) != 1 {
        return Err(CycError::NotAUnit { e, n }.into());
    }
    Ok(())
}

/// Number of canonical local types for order n: i = 1..=floor((n-1)/2).
pub fn type_count(n: u64) -> usize {
    ((n.max(1) - 1) / 2) as usize
}

/// `1 + conj(zeta_n^e)`.
pub fn holo_lhs(n: u64, e: i64) -> Result<CyclotomicNumber, LefschetzError> {
    check_unit(n, e)?;
    let k = CyclotomicField::new(n)?;
    Ok(k.one().add(&k.zeta_pow(-e))?)
}

fn one_minus(k: &CyclotomicField, j: i64) -> CyclotomicNumber {
    k.one().sub(&k.zeta_pow(j)).expect("same field")
}

/// `1 / ((1 - zeta^(i+1)) (1 - zeta^(n-i)))`.
pub fn point_term(n: u64, i: usize) -> Result<CyclotomicNumber, LefschetzError> {
    point_term_exp(n, 1, i)
}

/// The point term with zeta replaced by zeta^e.
pub fn point_term_exp(n: u64, e: i64, i: usize) -> Result<CyclotomicNumber, LefschetzError> {
    check_unit(n, e)?;
    let max = type_count(n);
    if i == 0 || i > max {
        return Err(LefschetzError::BadTypeIndex { i, n, max });
    }
    let k = CyclotomicField::new(n)?;
    let i = i as i64;
    let den = one_minus(&k, e * (i + 1)).mul(&one_minus(&k, e * (n as i64 - i)))?;
    Ok(den.inv()?)
}

/// `(1 + zeta^e) / (1 - zeta^e)^2`.
pub fn curve_term(n: u64, e: i64) -> Result<CyclotomicNumber, LefschetzError> {
    check_unit(n, e)?;
    let k = CyclotomicField::new(n)?;
    let om = one_minus(&k, e);
    let num = k.one().add(&k.zeta_pow(e))?;
    Ok(num.div(&om.mul(&om)?)?)
}

/// Unknowns of the holomorphic Lefschetz system.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum HoloVar {
    /// `a_{i,n}`, canonical index `i >= 1`.
    A(usize),
    Alpha,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConstraintKind {
    Rel(Relation, i64),
    Mod { rhs: i64, modulus: u64 },
    OneOf(Vec<i64>),
}

/// Extra condition on an integer linear form in the a_i and alpha.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HoloConstraint {
    pub terms: Vec<(HoloVar, i64)>,
    pub kind: ConstraintKind,
}

impl HoloConstraint {
    pub fn rel(terms: Vec<(HoloVar, i64)>, rel: Relation, rhs: i64) -> Self {
        HoloConstraint { terms, kind: ConstraintKind::Rel(rel, rhs) }
    }

    pub fn eq(terms: Vec<(HoloVar, i64)>, rhs: i64) -> Self {
        Self::rel(terms, Relation::Eq, rhs)
    }

    pub fn le(terms: Vec<(HoloVar, i64)>, rhs: i64) -> Self {
        Self::rel(terms, Relation::Le, rhs)
    }

    pub fn ge(terms: Vec<(HoloVar, i64)>, rhs: i64) -> Self {
        Self::rel(terms, Relation::Ge, rhs)
    }

    pub fn congruent(terms: Vec<(HoloVar, i64)>, rhs: i64, modulus: u64) -> Self {
        HoloConstraint { terms, kind: ConstraintKind::Mod { rhs, modulus } }
    }

    pub fn one_of(terms: Vec<(HoloVar, i64)>, values: Vec<i64>) -> Self {
        HoloConstraint { terms, kind: ConstraintKind::OneOf(values) }
    }

    /// Sum of the listed a_i with coefficient one.
    pub fn sum_a(idx: &[usize]) -> Vec<(HoloVar, i64)> {
        idx.iter().map(|&i| (HoloVar::A(i), 1)).collect()
    }

    pub fn holds(&self, s: &HoloSolution) -> bool {
        let v: i64 = self
            .terms
            .iter()
            .map(|&(x, c)| {
                c * match x {
                    HoloVar::A(i) => s.a.get(i.wrapping_sub(1)).map(|&v| v as i64).unwrap_or(0),
                    HoloVar::Alpha => s.alpha,
                }
            })
            .sum();
        match &self.kind {
            ConstraintKind::Rel(r, rhs) => r.holds(v, *rhs),
            ConstraintKind::Mod { rhs, modulus } => (v - rhs).rem_euclid(*modulus as i64) == 0,
            ConstraintKind::OneOf(vals) => vals.contains(&v),
        }
    }
}

impl fmt::Display for HoloConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for &(x, c) in &self.terms {
            let name = match x {
                HoloVar::A(i) => format!("a{i}"),
                HoloVar::Alpha => "alpha".to_string(),
            };
            let sign = if c < 0 { "-" } else if first { "" } else { "+" };
            let mag = if c.abs() == 1 { String::new() } else { format!("{}*", c.abs()) };
            write!(f, "{sign}{mag}{name}")?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        match &self.kind {
            ConstraintKind::Rel(r, rhs) => write!(f, "{}{}", r.symbol(), rhs),
            ConstraintKind::Mod { rhs, modulus } => write!(f, "=={rhs} mod {modulus}"),
            ConstraintKind::OneOf(v) => {
                let s: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                write!(f, " in {{{}}}", s.join(","))
            }
        }
    }
}

/// Search box for the holomorphic solver.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HoloBounds {
    pub a_max: Vec<i64>,
    pub alpha_min: i64,
    pub alpha_max: i64,
}

impl HoloBounds {
    /// `0 <= a_i <= 24`, `-10 <= alpha <= 2`.
    pub fn default_for(n: u64) -> Self {
        HoloBounds { a_max: vec![24; type_count(n)], alpha_min: -10, alpha_max: 2 }
    }

    pub fn uniform(n: u64, a_max: i64, alpha_min: i64, alpha_max: i64) -> Self {
        HoloBounds { a_max: vec![a_max; type_count(n)], alpha_min, alpha_max }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct HoloSolution {
    pub n: u64,
    pub e: i64,
    pub a: Vec<u32>,
    pub alpha: i64,
}

impl HoloSolution {
    pub fn points(&self) -> u32 {
        self.a.iter().sum()
    }

    /// N + 2 alpha.
    pub fn chi(&self) -> i64 {
        self.points() as i64 + 2 * self.alpha
    }

    /// Independent re-substitution into the cyclotomic identity.
    pub fn verify(&self) -> Result<bool, LefschetzError> {
        let k = CyclotomicField::new(self.n)?;
        let mut rhs = curve_term(self.n, self.e)?.scale(&BigRational::from_integer(self.alpha.into()));
        for (idx, &ai) in self.a.iter().enumerate() {
            if ai > 0 {
                let t = point_term_exp(self.n, self.e, idx + 1)?;
                rhs = rhs.add(&t.scale(&BigRational::from_integer(ai.into())))?;
            }
        }
        let lhs = holo_lhs(self.n, self.e)?;
        let _ = k;
        Ok(lhs == rhs)
    }
}

impl fmt::Display for HoloSolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.a.iter().map(|x| x.to_string()).collect();
        write!(f, "a=({}) alpha={}", s.join(","), self.alpha)
    }
}

/// All (a, alpha) within `bounds` satisfying the holomorphic Lefschetz
/// identity for an automorphism of order n acting on the 2-form by
/// zeta_n^e, together with the extra constraints. Sorted on (a, alpha).
pub fn holo_solve(
    n: u64,
    e: i64,
    bounds: &HoloBounds,
    extra: &[HoloConstraint],
) -> Result<Vec<HoloSolution>, LefschetzError> {
    check_unit(n, e)?;
    let kt = type_count(n);
    if bounds.a_max.len() != kt {
        return Err(LefschetzError::BadLength { expected: kt, got: bounds.a_max.len() });
    }
    let nv = kt + 1;
    let col = |x: HoloVar| -> Result<usize, LefschetzError> {
        match x {
            HoloVar::A(i) if i >= 1 && i <= kt => Ok(i - 1),
            HoloVar::A(i) => Err(LefschetzError::BadTypeIndex { i, n, max: kt }),
            HoloVar::Alpha => Ok(kt),
        }
    };

    let mut columns: Vec<Vec<BigRational>> = Vec::with_capacity(nv);
    for i in 1..=kt {
        columns.push(point_term_exp(n, e, i)?.coeffs().to_vec());
    }
    columns.push(curve_term(n, e)?.coeffs().to_vec());
    let lhs = holo_lhs(n, e)?;
    let equations = (0..lhs.coeffs().len())
        .map(|j| (columns.iter().map(|c| c[j].clone()).collect(), lhs.coeffs()[j].clone()))
        .collect();

    let mut side = Vec::new();
    for c in extra {
        let mut coeffs = vec![0i64; nv];
        for &(x, k) in &c.terms {
            coeffs[col(x)?] += k;
        }
        side.push(match &c.kind {
            ConstraintKind::Rel(rel, rhs) => SideCondition::Linear { coeffs, rel: *rel, rhs: *rhs },
            ConstraintKind::Mod { rhs, modulus } => {
                SideCondition::Congruence { coeffs, rhs: *rhs, modulus: *modulus }
            }
            ConstraintKind::OneOf(v) => SideCondition::OneOf { coeffs, values: v.clone() },
        });
    }

    let mut lo = vec![0i64; nv];
    let mut hi = bounds.a_max.clone();
    lo[kt] = bounds.alpha_min;
    hi.push(bounds.alpha_max);
    let prob = IntProblem { lo, hi, equations, side };
    Ok(intsolve::enumerate(&prob)
        .into_iter()
        .map(|x| HoloSolution {
            n,
            e,
            a: x[..kt].iter().map(|&v| v as u32).collect(),
            alpha: x[kt],
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn test_ramanujan_small() {
        assert_eq!(ramanujan(1, 7), 1);
        assert_eq!(ramanujan(22, 1), 1);
        assert_eq!(ramanujan(11, 1), -1);
        assert_eq!(ramanujan(15, 3), -2);
        assert_eq!(ramanujan(6, 0), 2);
    }

    #[test]
    fn test_dims_examples() {
        let v = enumerate_dims(
            22,
            &[DimConstraint { k: 22, rel: Relation::Eq, value: 2 }],
        )
        .unwrap();
        let t: Vec<Vec<u64>> = v.iter().map(|d| d.to_desc()).collect();
        assert_eq!(t, vec![vec![2, 0, 0, 2], vec![2, 0, 1, 1]]);
    }

    #[test]
    fn test_power_dims() {
        let d = EigenDims::from_desc(15, &[2, 0, 1, 4]).unwrap();
        let d3 = d.power(5);
        assert_eq!(d3.order(), 3);
        assert_eq!(chi_of_power(&d, 5), chi_of_power(&d3, 1));
    }
}
