//! Integer points of a bounded rational polytope intersected with an affine
//! subspace, plus optional congruence and finite-set side conditions.
//!
//! The equality system is put in reduced row echelon form over Q; pivot
//! variables become affine functions of the free ones. The free variables are
//! then enumerated depth first, and every inequality (including the box bounds
//! of the pivot variables) is used to prune partial assignments by interval
//! arithmetic on the still-unassigned coordinates.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = "=")]
    Eq,
}

impl Relation {
    pub fn holds(self, lhs: i64, rhs: i64) -> bool {
        match self {
            Relation::Le => lhs <= rhs,
            Relation::Ge => lhs >= rhs,
            Relation::Eq => lhs == rhs,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Le => "<=",
            Relation::Ge => ">=",
            Relation::Eq => "=",
        }
    }
}

/// Side condition on an integer linear form `sum coeffs[v] * x_v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SideCondition {
    Linear { coeffs: Vec<i64>, rel: Relation, rhs: i64 },
    Congruence { coeffs: Vec<i64>, rhs: i64, modulus: u64 },
    OneOf { coeffs: Vec<i64>, values: Vec<i64> },
}

impl SideCondition {
    fn form(&self) -> &[i64] {
        match self {
            SideCondition::Linear { coeffs, .. }
            | SideCondition::Congruence { coeffs, .. }
            | SideCondition::OneOf { coeffs, .. } => coeffs,
        }
    }

    pub fn holds(&self, x: &[i64]) -> bool {
        let v: i64 = self.form().iter().zip(x).map(|(c, x)| c * x).sum();
        match self {
            SideCondition::Linear { rel, rhs, .. } => rel.holds(v, *rhs),
            SideCondition::Congruence { rhs, modulus, .. } => {
                (v - rhs).rem_euclid(*modulus as i64) == 0
            }
            SideCondition::OneOf { values, .. } => values.contains(&v),
        }
    }
}

/// Problem description: variables `x_0..x_{V-1}` with `lo[v] <= x_v <= hi[v]`.
#[derive(Clone, Debug)]
pub struct IntProblem {
    pub lo: Vec<i64>,
    pub hi: Vec<i64>,
    /// Rows `(coeffs, rhs)` meaning `sum coeffs[v] x_v = rhs`.
    pub equations: Vec<(Vec<BigRational>, BigRational)>,
    pub side: Vec<SideCondition>,
}

/// Affine form `(c0 + sum c[f] y_f) / den` in the free variables `y`.
#[derive(Clone, Debug)]
struct Affine {
    c0: i128,
    c: Vec<i128>,
    den: i128,
}

/// Inequality `c0 + sum c[f] y_f >= 0`.
#[derive(Clone, Debug)]
struct Ineq {
    c0: i128,
    c: Vec<i128>,
}

fn to_i128(x: &BigInt) -> i128 {
    x.to_i128().expect("coefficient overflow in integer enumeration")
}

/// Integerise `sum r[f] y_f + r0` into `(c0, c, den)` with `den > 0`.
fn integerise(r0: &BigRational, r: &[BigRational]) -> Affine {
    let mut l = r0.denom().clone();
    for x in r {
        l = l.lcm(x.denom());
    }
    let lq = BigRational::from_integer(l.clone());
    let c0 = to_i128(&(r0 * &lq).to_integer());
    let c = r.iter().map(|x| to_i128(&(x * &lq).to_integer())).collect();
    Affine { c0, c, den: to_i128(&l) }
}

/// Reduced row echelon form. Returns pivot columns and the reduced rows, or
/// `None` if the system is inconsistent.
#[allow(clippy::type_complexity)]
fn rref(
    nvars: usize,
    eqs: &[(Vec<BigRational>, BigRational)],
) -> Option<(Vec<usize>, Vec<(Vec<BigRational>, BigRational)>)> {
    let mut rows: Vec<(Vec<BigRational>, BigRational)> = eqs.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..nvars {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i].0[col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = BigRational::one() / rows[r].0[col].clone();
        for x in rows[r].0.iter_mut() {
            *x *= &inv;
        }
        rows[r].1 *= &inv;
        for i in 0..rows.len() {
            if i != r && !rows[i].0[col].is_zero() {
                let f = rows[i].0[col].clone();
                let (pr, prhs) = rows[r].clone();
                for (x, y) in rows[i].0.iter_mut().zip(&pr) {
                    *x -= &f * y;
                }
                rows[i].1 -= &f * &prhs;
            }
        }
        pivots.push(col);
        r += 1;
    }
    for row in &rows[r..] {
        if !row.1.is_zero() {
            return None;
        }
    }
    rows.truncate(r);
    Some((pivots, rows))
}

/// Summary of the affine solution space, useful for reporting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpaceInfo {
    pub rank: usize,
    pub free: Vec<usize>,
}

pub fn solution_space(p: &IntProblem) -> Option<SpaceInfo> {
    let n = p.lo.len();
    let (piv, _) = rref(n, &p.equations)?;
    let free = (0..n).filter(|v| !piv.contains(v)).collect();
    Some(SpaceInfo { rank: piv.len(), free })
}

/// All integer solutions, in lexicographic order of the variable vector.
pub fn enumerate(p: &IntProblem) -> Vec<Vec<i64>> {
    let n = p.lo.len();
    assert_eq!(p.hi.len(), n);
    if (0..n).any(|v| p.lo[v] > p.hi[v]) {
        return Vec::new();
    }
    let Some((pivots, rows)) = rref(n, &p.equations) else {
        return Vec::new();
    };
    let free: Vec<usize> = (0..n).filter(|v| !pivots.contains(v)).collect();
    let nf = free.len();

    // x_v as an affine form in the free variables.
    let mut forms: Vec<Affine> = vec![Affine { c0: 0, c: vec![0; nf], den: 1 }; n];
    for (fi, &v) in free.iter().enumerate() {
        forms[v].c[fi] = 1;
    }
    for (row, &pv) in rows.iter().zip(&pivots) {
        let r: Vec<BigRational> = free.iter().map(|&f| -row.0[f].clone()).collect();
        forms[pv] = integerise(&row.1, &r);
    }

    let mut ineqs: Vec<Ineq> = Vec::new();
    let push_bound = |ineqs: &mut Vec<Ineq>, f: &Affine, bound: i64, upper: bool| {
        // f/den <= bound  <=>  bound*den - f >= 0 ; f/den >= bound <=> f - bound*den >= 0
        let b = bound as i128 * f.den;
        if upper {
            ineqs.push(Ineq { c0: b - f.c0, c: f.c.iter().map(|x| -x).collect() });
        } else {
            ineqs.push(Ineq { c0: f.c0 - b, c: f.c.clone() });
        }
    };
    for &pv in &pivots {
        push_bound(&mut ineqs, &forms[pv], p.lo[pv], false);
        push_bound(&mut ineqs, &forms[pv], p.hi[pv], true);
    }
    // Linear side conditions in terms of free variables.
    let compose = |coeffs: &[i64]| -> Affine {
        let mut l: i128 = 1;
        for (v, &c) in coeffs.iter().enumerate() {
            if c != 0 {
                l = l.lcm(&forms[v].den);
            }
        }
        let mut out = Affine { c0: 0, c: vec![0; nf], den: l };
        for (v, &c) in coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let k = c as i128 * (l / forms[v].den);
            out.c0 += k * forms[v].c0;
            for (o, x) in out.c.iter_mut().zip(&forms[v].c) {
                *o += k * x;
            }
        }
        out
    };
    for s in &p.side {
        match s {
            SideCondition::Linear { coeffs, rel, rhs } => {
                let f = compose(coeffs);
                if matches!(rel, Relation::Le | Relation::Eq) {
                    push_bound(&mut ineqs, &f, *rhs, true);
                }
                if matches!(rel, Relation::Ge | Relation::Eq) {
                    push_bound(&mut ineqs, &f, *rhs, false);
                }
            }
            SideCondition::OneOf { coeffs, values } => {
                if values.is_empty() {
                    return Vec::new();
                }
                let f = compose(coeffs);
                push_bound(&mut ineqs, &f, *values.iter().min().unwrap(), false);
                push_bound(&mut ineqs, &f, *values.iter().max().unwrap(), true);
            }
            SideCondition::Congruence { .. } => {}
        }
    }

    let flo: Vec<i128> = free.iter().map(|&v| p.lo[v] as i128).collect();
    let fhi: Vec<i128> = free.iter().map(|&v| p.hi[v] as i128).collect();
    // maxrest[k][t]: max of sum_{f >= t} c[f] y_f over the box.
    let maxrest: Vec<Vec<i128>> = ineqs
        .iter()
        .map(|q| {
            let mut m = vec![0i128; nf + 1];
            for t in (0..nf).rev() {
                let c = q.c[t];
                m[t] = m[t + 1] + (c * flo[t]).max(c * fhi[t]);
            }
            m
        })
        .collect();

    let mut out = Vec::new();
    let mut y = vec![0i128; nf];
    let mut partial: Vec<i128> = ineqs.iter().map(|q| q.c0).collect();
    dfs(0, &mut y, &mut partial, &ineqs, &maxrest, &flo, &fhi, &mut |y| {
        let mut x = vec![0i64; n];
        for v in 0..n {
            let f = &forms[v];
            let num: i128 = f.c0 + f.c.iter().zip(y).map(|(c, y)| c * y).sum::<i128>();
            if num % f.den != 0 {
                return;
            }
            x[v] = (num / f.den) as i64;
        }
        if (0..n).all(|v| p.lo[v] <= x[v] && x[v] <= p.hi[v]) && p.side.iter().all(|s| s.holds(&x)) {
            out.push(x);
        }
    });
    out.sort();
    out
}

#[allow(clippy::too_many_arguments)]
fn dfs(
    t: usize,
    y: &mut Vec<i128>,
    partial: &mut Vec<i128>,
    ineqs: &[Ineq],
    maxrest: &[Vec<i128>],
    flo: &[i128],
    fhi: &[i128],
    emit: &mut dyn FnMut(&[i128]),
) {
    for (k, m) in maxrest.iter().enumerate() {
        if partial[k] + m[t] < 0 {
            return;
        }
    }
    if t == y.len() {
        emit(y);
        return;
    }
    for v in flo[t]..=fhi[t] {
        y[t] = v;
        for (k, q) in ineqs.iter().enumerate() {
            partial[k] += q.c[t] * v;
        }
        dfs(t + 1, y, partial, ineqs, maxrest, flo, fhi, emit);
        for (k, q) in ineqs.iter().enumerate() {
            partial[k] -= q.c[t] * v;
        }
    }
}

/// Exhaustive reference search over the whole box (no elimination).
pub fn brute_force(p: &IntProblem) -> Vec<Vec<i64>> {
    let n = p.lo.len();
    let mut out = Vec::new();
    let mut x = p.lo.clone();
    if (0..n).any(|v| p.lo[v] > p.hi[v]) {
        return out;
    }
    loop {
        let ok_eq = p.equations.iter().all(|(c, r)| {
            let s: BigRational = c
                .iter()
                .zip(&x)
                .map(|(c, &x)| c * BigRational::from_integer(BigInt::from(x)))
                .fold(BigRational::zero(), |a, b| a + b);
            &s == r
        });
        if ok_eq && p.side.iter().all(|s| s.holds(&x)) {
            out.push(x.clone());
        }
        let mut v = n;
        loop {
            if v == 0 {
                return out;
            }
            v -= 1;
            if x[v] < p.hi[v] {
                x[v] += 1;
                x[v + 1..n].copy_from_slice(&p.lo[v + 1..n]);
                break;
            }
        }
    }
}

pub fn is_nonneg_integer(x: &BigRational) -> bool {
    x.is_integer() && !x.is_negative()
}
