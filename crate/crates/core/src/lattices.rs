//! Gram-matrix arithmetic for even lattices.
//!
//! No isometry testing: a claim such as "this lattice is U" is checked
//! through rank, determinant, parity and signature only.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LatticeError {
    #[error("unknown lattice name {0:?}")]
    UnknownName(String),
    #[error("{0}: external data required (its Gram matrix is not built in; load it with --lattice-data)")]
    ExternalDataRequired(String),
    #[error("Gram matrix is not square")]
    NotSquare,
    #[error("Gram matrix is not symmetric at ({0},{1})")]
    NotSymmetric(usize, usize),
    #[error("class vector {index} has length {got}, expected {expected}")]
    BadClassLength { index: usize, got: usize, expected: usize },
    #[error("bad lattice data: {0}")]
    BadData(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeSpec {
    pub name: String,
    pub gram: Vec<Vec<i64>>,
}

/// Signature of a possibly degenerate form: positive, negative and radical
/// dimensions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Signature {
    pub pos: usize,
    pub neg: usize,
    pub radical: usize,
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.pos, self.neg)?;
        if self.radical > 0 {
            write!(f, " radical {}", self.radical)?;
        }
        Ok(())
    }
}

impl LatticeSpec {
    pub fn new(name: impl Into<String>, gram: Vec<Vec<i64>>) -> Result<Self, LatticeError> {
        let n = gram.len();
        if gram.iter().any(|r| r.len() != n) {
            return Err(LatticeError::NotSquare);
        }
        for i in 0..n {
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(LatticeError::NotSymmetric(i, j));
                }
            }
        }
        Ok(LatticeSpec { name: name.into(), gram })
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn is_even(&self) -> bool {
        self.gram.iter().enumerate().all(|(i, r)| r[i] % 2 == 0)
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> BigInt {
        bareiss(&self.gram)
    }

    /// Determinant as i64, when it fits.
    pub fn det_i64(&self) -> Option<i64> {
        self.det().to_i64()
    }

    /// Sylvester signature from a rational congruence diagonalization.
    pub fn signature(&self) -> Signature {
        let d = congruence_diagonal(&self.gram);
        Signature {
            pos: d.iter().filter(|x| x.is_positive()).count(),
            neg: d.iter().filter(|x| x.is_negative()).count(),
            radical: d.iter().filter(|x| x.is_zero()).count(),
        }
    }

    pub fn is_hyperbolic(&self) -> bool {
        let s = self.signature();
        s.pos == 1 && s.radical == 0
    }
}

fn bareiss(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Diagonal of a form congruent to `m` over the rationals.
fn congruence_diagonal(m: &[Vec<i64>]) -> Vec<BigRational> {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect())
        .collect();
    let mut out = Vec::with_capacity(n);
    let mut live: Vec<usize> = (0..n).collect();
    while !live.is_empty() {
        // find a non-zero diagonal entry, or make one
        let piv = live.iter().copied().find(|&i| !a[i][i].is_zero());
        let piv = match piv {
            Some(i) => i,
            None => {
                let pair = live
                    .iter()
                    .flat_map(|&i| live.iter().map(move |&j| (i, j)))
                    .find(|&(i, j)| i != j && !a[i][j].is_zero());
                match pair {
                    None => {
                        // the remaining block is zero
                        out.extend(live.iter().map(|_| BigRational::zero()));
                        break;
                    }
                    Some((i, j)) => {
                        // e_i -> e_i + e_j gives 2 a_ij on the diagonal
                        for k in 0..n {
                            let v = a[j][k].clone();
                            a[i][k] += v;
                        }
                        for k in 0..n {
                            let v = a[k][j].clone();
                            a[k][i] += v;
                        }
                        i
                    }
                }
            }
        };
        let d = a[piv][piv].clone();
        for &i in &live {
            if i == piv {
                continue;
            }
            let f = &a[i][piv] / &d;
            if f.is_zero() {
                continue;
            }
            for k in 0..n {
                let v = &f * &a[piv][k];
                a[i][k] -= v;
            }
            for k in 0..n {
                let v = &f * &a[k][piv];
                a[k][i] -= v;
            }
        }
        out.push(d);
        live.retain(|&i| i != piv);
    }
    out
}

fn hyperbolic(m: i64) -> Vec<Vec<i64>> {
    vec![vec![0, m], vec![m, 0]]
}

/// Negative definite root lattice from a simply laced Dynkin diagram.
fn root_lattice(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<i64>> {
    let mut g = vec![vec![0; n]; n];
    for (i, row) in g.iter_mut().enumerate() {
        row[i] = -2;
    }
    for &(i, j) in edges {
        g[i][j] = 1;
        g[j][i] = 1;
    }
    g
}

fn a_n(n: usize) -> Vec<Vec<i64>> {
    let e: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
    root_lattice(n, &e)
}

fn d_n(n: usize) -> Vec<Vec<i64>> {
    // chain 0..n-2 with the extra node n-1 attached to n-3
    let mut e: Vec<(usize, usize)> = (1..n - 1).map(|i| (i - 1, i)).collect();
    e.push((n - 3, n - 1));
    root_lattice(n, &e)
}

fn e_n(n: usize) -> Vec<Vec<i64>> {
    // chain 0..n-2 with node n-1 attached to node 2
    let mut e: Vec<(usize, usize)> = (1..n - 1).map(|i| (i - 1, i)).collect();
    e.push((2, n - 1));
    root_lattice(n, &e)
}

/// Lattices whose Gram matrices come from a data file, keyed by name.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExternalLattices {
    pub lattices: BTreeMap<String, ExternalLattice>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExternalLattice {
    pub gram: Vec<Vec<i64>>,
    pub citation: String,
}

impl ExternalLattices {
    pub fn parse(s: &str) -> Result<Self, LatticeError> {
        let e: ExternalLattices = serde_json::from_str(s).map_err(|e| LatticeError::BadData(e.to_string()))?;
        for (name, l) in &e.lattices {
            LatticeSpec::new(name.clone(), l.gram.clone())?;
        }
        Ok(e)
    }
}

/// Names defined outside this crate's sources.
pub const EXTERNAL_NAMES: [&str; 1] = ["H5"];

fn normalize(name: &str) -> String {
    name.chars().filter(|c| !c.is_whitespace() && *c != '_').collect()
}

/// Standard Gram matrix of `U`, `U(m)`, `A_n`, `D_n` (n >= 4), `E_6`,
/// `E_7`, `E_8`. Root lattices are negative definite. `H_5` needs
/// external data, see [`named_lattice_with`].
pub fn named_lattice(name: &str) -> Result<LatticeSpec, LatticeError> {
    named_lattice_with(name, None)
}

pub fn named_lattice_with(name: &str, ext: Option<&ExternalLattices>) -> Result<LatticeSpec, LatticeError> {
    let s = normalize(name);
    let unknown = || LatticeError::UnknownName(name.to_string());
    if EXTERNAL_NAMES.contains(&s.as_str()) {
        return match ext.and_then(|e| e.lattices.get(&s)) {
            Some(l) => LatticeSpec::new(s, l.gram.clone()),
            None => Err(LatticeError::ExternalDataRequired(s)),
        };
    }
    if s == "U" {
        return LatticeSpec::new(s, hyperbolic(1));
    }
    if let Some(rest) = s.strip_prefix("U(").and_then(|r| r.strip_suffix(')')) {
        let m: i64 = rest.parse().map_err(|_| unknown())?;
        if m < 1 {
            return Err(unknown());
        }
        return LatticeSpec::new(s, hyperbolic(m));
    }
    let (letter, num) = s.split_at(1);
    let n: usize = num.parse().map_err(|_| unknown())?;
    let gram = match (letter, n) {
        ("A", n) if n >= 1 => a_n(n),
        ("D", n) if n >= 4 => d_n(n),
        ("E", 6..=8) => e_n(n),
        _ => return Err(unknown()),
    };
    LatticeSpec::new(s, gram)
}

/// Orthogonal direct sum: block-diagonal Gram matrix.
pub fn direct_sum(a: &LatticeSpec, b: &LatticeSpec) -> LatticeSpec {
    let (m, n) = (a.rank(), b.rank());
    let mut g = vec![vec![0; m + n]; m + n];
    for i in 0..m {
        g[i][..m].copy_from_slice(&a.gram[i]);
    }
    for i in 0..n {
        g[m + i][m..].copy_from_slice(&b.gram[i]);
    }
    let name = match (a.name.is_empty(), b.name.is_empty()) {
        (true, _) => b.name.clone(),
        (_, true) => a.name.clone(),
        _ => format!("{}+{}", a.name, b.name),
    };
    LatticeSpec { name, gram: g }
}

/// Parses sums such as `U(2)+D4` or `U ⊕ A_2 ⊕ A_2`.
pub fn parse_lattice_expr(expr: &str, ext: Option<&ExternalLattices>) -> Result<LatticeSpec, LatticeError> {
    let cleaned = expr.replace('⊕', "+");
    let mut acc = LatticeSpec { name: String::new(), gram: vec![] };
    for part in cleaned.split('+') {
        if part.trim().is_empty() {
            return Err(LatticeError::UnknownName(expr.to_string()));
        }
        acc = direct_sum(&acc, &named_lattice_with(part, ext)?);
    }
    Ok(acc)
}

/// Lattice spanned by the given classes, written in a basis with
/// intersection matrix `intersections`: Gram `C M C^T`.
pub fn gram_of_curve_classes(
    name: &str,
    intersections: &[Vec<i64>],
    classes: &[Vec<i64>],
) -> Result<LatticeSpec, LatticeError> {
    let m = LatticeSpec::new(name, intersections.to_vec())?;
    let r = m.rank();
    for (i, c) in classes.iter().enumerate() {
        if c.len() != r {
            return Err(LatticeError::BadClassLength { index: i, got: c.len(), expected: r });
        }
    }
    let dot = |u: &[i64], v: &[i64]| -> i64 {
        (0..r).map(|i| (0..r).map(|j| u[i] * m.gram[i][j] * v[j]).sum::<i64>()).sum()
    };
    let g = classes.iter().map(|u| classes.iter().map(|v| dot(u, v)).collect()).collect();
    LatticeSpec::new(name, g)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LatticeSummary {
    pub name: String,
    pub rank: usize,
    pub det: String,
    pub even: bool,
    pub signature: Signature,
}

pub fn summary(l: &LatticeSpec) -> LatticeSummary {
    LatticeSummary {
        name: l.name.clone(),
        rank: l.rank(),
        det: l.det().to_string(),
        even: l.is_even(),
        signature: l.signature(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn test_named() {
        assert_eq!(named_lattice("U").unwrap().gram, vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(named_lattice("U(11)").unwrap().gram, vec![vec![0, 11], vec![11, 0]]);
        assert_eq!(named_lattice("D_4").unwrap().det_i64(), Some(4));
        assert_eq!(named_lattice("E8").unwrap().det_i64(), Some(1));
        assert_eq!(named_lattice("E7").unwrap().det_i64(), Some(-2));
        assert_eq!(named_lattice("E6").unwrap().det_i64(), Some(3));
        assert!(matches!(named_lattice("H5"), Err(LatticeError::ExternalDataRequired(_))));
        assert!(matches!(named_lattice("D3"), Err(LatticeError::UnknownName(_))));
        assert!(matches!(named_lattice("Q7"), Err(LatticeError::UnknownName(_))));
    }

    #[test]
    fn test_degenerate_signature() {
        let l = LatticeSpec::new("", vec![vec![0, 0], vec![0, -2]]).unwrap();
        assert_eq!(l.signature(), Signature { pos: 0, neg: 1, radical: 1 });
        assert_eq!(l.det_i64(), Some(0));
    }

    #[test]
    fn test_zero_diagonal_pivot() {
        let l = parse_lattice_expr("U+U", None).unwrap();
        assert_eq!(l.signature(), Signature { pos: 2, neg: 2, radical: 0 });
        assert_eq!(l.det_i64(), Some(1));
    }

    #[test]
    fn test_not_symmetric() {
        assert_eq!(
            LatticeSpec::new("x", vec![vec![0, 1], vec![2, 0]]),
            Err(LatticeError::NotSymmetric(1, 0))
        );
    }

    #[test]
    fn test_external() {
        let ext = ExternalLattices::parse(r#"{"lattices":{"H5":{"gram":[[2,1],[1,-2]],"citation":"test"}}}"#).unwrap();
        let l = named_lattice_with("H_5", Some(&ext)).unwrap();
        assert_eq!(l.det_i64(), Some(-5));
    }
}
