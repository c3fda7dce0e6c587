//! Classification driver: eigenspace dimensions, Euler characteristics of
//! the powers, cited prime-order fixed loci, holomorphic Lefschetz solutions
//! for composite powers and the checks tying the levels together.
//!
//! Every divisor k > 1 of n is a level, the power `sigma_k` of order k. Prime
//! levels come from catalogs, composite levels are solved bottom-up. At the
//! top level all holomorphic solutions within the search box are kept and
//! the checks run in a fixed order so that eliminated rows carry the first
//! violated condition.

use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Mutex, OnceLock};

use serde::Serialize;
use thiserror::Error;

use crate::cli_io::{reference, DataError, DoublingCondition, Pattern, ProfileRef, RefRow, Verdict};
use crate::fixedlocus::{
    compatibility_constraints, cyclic_actions, genus_order_possible, involution_profiles_for_rank,
    point_constraints, push_classes, FixedLocusProfile, GenusOrder,
};
use crate::lefschetz::{
    chi_of_power, enumerate_dims, holo_solve, ChiVector, DimConstraint, EigenDims, HoloBounds,
    HoloConstraint, HoloSolution, HoloVar, LefschetzError,
};
use crate::intsolve::Relation;
use crate::numtheory::{divisors, euler_phi, gcd, is_prime, mobius};

/// Orders whose one-dimensional families are tabulated.
pub const REFERENCE_ORDERS: [u64; 7] = [11, 15, 16, 20, 22, 24, 30];

#[derive(Debug, Error)]
pub enum ClassifyError {
    #[error("no fixed-locus catalog for prime order {p} (needed for n = {n})")]
    UnsupportedPrime { n: u64, p: u64 },
    #[error("order {0} is not one of the tabulated orders 11, 15, 16, 20, 22, 24, 30")]
    NotReference(u64),
    #[error(transparent)]
    Lefschetz(#[from] LefschetzError),
    #[error(transparent)]
    Data(#[from] DataError),
}

/// Upper bound for the dimension of the moduli of pairs (X, sigma) of order n.
pub fn gamma(n: u64) -> i64 {
    assert!(n >= 2);
    (21 / euler_phi(n)) as i64 - 1
}

/// Orders of purely non-symplectic automorphisms of K3 surfaces:
/// all n >= 2 with phi(n) <= 20, except 60.
pub fn tv_k3() -> Vec<u64> {
    // phi(n) >= sqrt(n / 2), so phi(n) <= 20 forces n <= 800.
    (2..=800).filter(|&n| euler_phi(n) <= 20 && n != 60).collect()
}

// ---------------------------------------------------------------------------
// Prime levels

/// Cited fixed loci of `sigma_p` compatible with its eigenspace dimensions.
pub fn prime_profiles(p: u64, dims: &EigenDims) -> Option<Vec<(FixedLocusProfile, String)>> {
    let data = reference();
    let mut out = Vec::new();
    let m = dims.get(p);
    match p {
        2 => {
            let r = dims.get(1);
            for ip in involution_profiles_for_rank(r) {
                let prof = FixedLocusProfile::with_gk(2, Some(ip.g), ip.k, vec![]).expect("order 2 profile");
                out.push((prof, "Nikulin".to_string()));
            }
            for (c, cit) in data.catalog() {
                if c.order == 2 && c.m == r {
                    out.push((FixedLocusProfile::new(2, c.curves, c.a).expect("catalog"), cit.to_string()));
                }
            }
        }
        5 => {
            let t = data.table("order5").expect("order5 table");
            for row in &t.rows {
                let rm = row.extra.as_ref().and_then(|e| e.get("m")).copied();
                if rm != Some(m as i64) {
                    continue;
                }
                let pr = row.profile(5).expect("order5 profile");
                let prof = FixedLocusProfile::new(5, pr.curves.clone().unwrap_or_default(), pr.a.clone().unwrap_or_default())
                    .expect("order5 profile");
                out.push((prof, format!("order5 table, case {}", row.label)));
            }
        }
        _ => {
            let known = data.catalog().iter().any(|(c, _)| c.order == p);
            if !known {
                return None;
            }
            for (c, cit) in data.catalog() {
                if c.order == p && c.m == m {
                    out.push((FixedLocusProfile::new(p, c.curves, c.a).expect("catalog"), cit.to_string()));
                }
            }
        }
    }
    Some(out)
}

/// Whether fixed loci of prime order p are catalogued.
pub fn prime_supported(p: u64) -> bool {
    p == 2 || p == 5 || reference().catalog().iter().any(|(c, _)| c.order == p)
}

// ---------------------------------------------------------------------------
// Doubling facts

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DoublingImplication {
    pub order: u64,
    pub lift_order: u64,
    pub lift_exists: bool,
    pub condition: DoublingCondition,
    pub citation: String,
    /// The source never uses this case; a caller relying on it should say so.
    pub unexercised: bool,
}

/// Existence or non-existence of a square root of order 2p for an
/// automorphism of prime order p with the given fixed locus.
pub fn doubling_facts(p: u64, profile: &FixedLocusProfile) -> Vec<DoublingImplication> {
    let curves = profile.curves.len();
    let pts = profile.points();
    reference()
        .doubling()
        .into_iter()
        .filter(|(f, _)| f.order == p)
        .filter(|(f, _)| match f.condition {
            DoublingCondition::Any => true,
            DoublingCondition::Curve => curves >= 1,
            DoublingCondition::TwoCurves => curves >= 2,
            DoublingCondition::CurveAndTwoPoints => curves >= 1 && pts >= 2,
            DoublingCondition::IsolatedOnly => curves == 0,
        })
        .map(|(f, cit)| DoublingImplication {
            order: p,
            lift_order: 2 * p,
            lift_exists: f.lift,
            condition: f.condition,
            citation: cit.to_string(),
            unexercised: p == 3,
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Rows

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    /// Isolated points of a power not fixed by sigma cannot form orbits.
    PointCount { level: u64, power: u64, constraint: String },
    /// No set of fixed curves with the required alpha.
    CurveSet { level: u64, alpha: i64 },
    /// A curve of genus g would carry an automorphism of an impossible order.
    GenusOrder { genus: u64, order: u64, by_riemann_hurwitz: bool, citation: Option<String> },
    /// Points on fixed curves of the powers cannot be matched with any
    /// action of the group on those curves.
    CurveBucket { level: u64, detail: String },
    DoublingFact { citation: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::PointCount { level, power, constraint } => {
                write!(f, "isolated points of sigma_{power} vs sigma_{level}: {constraint} fails")
            }
            Violation::CurveSet { level, alpha } => {
                write!(f, "no curve set for sigma_{level} with alpha = {alpha}")
            }
            Violation::GenusOrder { genus, order, citation, .. } => {
                match citation {
                    Some(c) => write!(f, "{c}"),
                    None => write!(f, "no genus {genus} curve has an automorphism of order {order}"),
                }
            }
            Violation::CurveBucket { level, detail } => write!(f, "curves at level {level}: {detail}"),
            Violation::DoublingFact { citation } => write!(f, "doubling fact: {citation}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Status {
    Admissible,
    EliminatedArithmetic { reason: Violation },
    RequiresGeometricAnalysis { fact: String, note: String, citation: String },
    MatchesPaperRow { table: String, label: String },
}

impl Status {
    /// Admissible on arithmetic grounds and not flagged.
    pub fn is_admissible(&self) -> bool {
        matches!(self, Status::Admissible | Status::MatchesPaperRow { .. })
    }

    pub fn tag(&self) -> &'static str {
        match self {
            Status::Admissible => "admissible",
            Status::EliminatedArithmetic { .. } => "eliminated",
            Status::RequiresGeometricAnalysis { .. } => "geometric",
            Status::MatchesPaperRow { .. } => "reference-row",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationRow {
    pub n: u64,
    pub label: String,
    pub d: EigenDims,
    pub chi: ChiVector,
    /// Fixed locus per level (order of the power). The top level is absent
    /// when no curve set fits the holomorphic solution.
    pub profiles: BTreeMap<u64, FixedLocusProfile>,
    pub holo: HoloSolution,
    pub status: Status,
}

impl ClassificationRow {
    pub fn top(&self) -> Option<&FixedLocusProfile> {
        self.profiles.get(&self.n)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrunedBranch {
    pub d: Vec<u64>,
    pub level: u64,
    pub profiles: BTreeMap<u64, String>,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub n: u64,
    pub rows: Vec<ClassificationRow>,
    pub pruned: Vec<PrunedBranch>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassifyOptions {
    /// Fix `d_n`; `None` means every `d_n >= 1`.
    pub dn: Option<u64>,
    /// Cap on every `a_i` at every level (on top of the bound from chi).
    pub a_cap: Option<i64>,
    /// Attach the recorded geometric eliminations to surviving rows.
    pub geometric_flags: bool,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions { dn: None, a_cap: None, geometric_flags: true }
    }
}

impl ClassifyOptions {
    pub fn with_dn(dn: u64) -> Self {
        ClassifyOptions { dn: Some(dn), ..Default::default() }
    }
}

type Chain = BTreeMap<u64, FixedLocusProfile>;

fn chain_strings(c: &Chain) -> BTreeMap<u64, String> {
    c.iter().map(|(&k, p)| (k, format!("{} {}", p, show_a(&p.a)))).collect()
}

fn show_a(a: &[u32]) -> String {
    let s: Vec<String> = a.iter().map(|x| x.to_string()).collect();
    format!("a=({})", s.join(","))
}

// ---------------------------------------------------------------------------
// Curve orbits across levels

/// Curves fixed by some power, grouped by genus and by the order f of the
/// largest power fixing them pointwise. Recovered from the per-level curve
/// lists by Moebius inversion over the divisors of k.
fn curve_classes(k: u64, chain: &Chain) -> Result<Vec<(u64, u64, u64)>, String> {
    let mut genera = BTreeSet::new();
    for p in chain.values() {
        genera.extend(p.curves.iter().copied());
    }
    let divs: Vec<u64> = divisors(k).into_iter().filter(|&j| j > 1).collect();
    let mut out = Vec::new();
    for &g in &genera {
        for &f in &divs {
            let mut c = 0i64;
            for &j in &divs {
                if j % f == 0 {
                    let cnt = chain[&j].curves.iter().filter(|&&x| x == g).count() as i64;
                    c += mobius(j / f) * cnt;
                }
            }
            if c < 0 {
                return Err(format!("genus {g} curves of the powers are not nested (order {f})"));
            }
            if c > 0 {
                out.push((g, f, c as u64));
            }
        }
    }
    Ok(out)
}

/// Pairs (j, j'), j' | j, 1 < j' < j <= k, with the number of isolated points
/// of `sigma_j` on curves fixed by `sigma_j'`.
fn bucket_targets(k: u64, chain: &Chain) -> Vec<((u64, u64), u64)> {
    let divs: Vec<u64> = divisors(k).into_iter().filter(|&j| j > 1).collect();
    let mut out = Vec::new();
    for &j in &divs {
        for &jp in &divs {
            if jp < j && j % jp == 0 {
                let (_, on) = push_classes(j, 1, j / jp);
                let a = &chain[&j].a;
                let v: u64 = on.iter().map(|&i| a[i - 1] as u64).sum();
                out.push(((j, jp), v));
            }
        }
    }
    out
}

type ActionKey = (u64, u64);

fn action_summaries(g: u64, m: u64) -> Vec<Vec<u64>> {
    static CACHE: OnceLock<Mutex<HashMap<ActionKey, Vec<Vec<u64>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = cache.lock().unwrap().get(&(g, m)) {
        return v.clone();
    }
    // fixed points of the subgroup of each order t | m
    let ts = divisors(m);
    let mut set = BTreeSet::new();
    for a in cyclic_actions(g, m) {
        set.insert(ts.iter().map(|&t| a.fixed_by_subgroup(t)).collect::<Vec<u64>>());
    }
    let v: Vec<Vec<u64>> = set.into_iter().collect();
    cache.lock().unwrap().insert((g, m), v.clone());
    v
}

/// Possible contributions of one class of curves to the bucket vector.
fn class_options(k: u64, g: u64, f: u64, count: u64, pairs: &[(u64, u64)]) -> BTreeSet<Vec<u64>> {
    // orbit sizes o with f | k / o
    let mut items: Vec<(u64, Vec<u64>)> = Vec::new();
    for o in divisors(k / f) {
        if o > count {
            continue;
        }
        let m = k / (o * f);
        let sums: Vec<Vec<u64>> = if m == 1 { vec![vec![0]] } else { action_summaries(g, m) };
        let ts = divisors(m);
        for s in sums {
            let v: Vec<u64> = pairs
                .iter()
                .map(|&(j, jp)| {
                    if f % jp == 0 && f % j != 0 && (k / o) % j == 0 {
                        let t = j / gcd(j, f);
                        let pos = ts.iter().position(|&x| x == t).expect("t divides m");
                        o * s[pos]
                    } else {
                        0
                    }
                })
                .collect();
            items.push((o, v));
        }
    }
    items.sort();
    items.dedup();
    let mut out = BTreeSet::new();
    fn rec(items: &[(u64, Vec<u64>)], start: usize, left: u64, acc: &mut Vec<u64>, out: &mut BTreeSet<Vec<u64>>) {
        if left == 0 {
            out.insert(acc.clone());
            return;
        }
        for i in start..items.len() {
            let (o, v) = &items[i];
            if *o <= left {
                for (x, y) in acc.iter_mut().zip(v) {
                    *x += y;
                }
                rec(items, i, left - o, acc, out);
                for (x, y) in acc.iter_mut().zip(v) {
                    *x -= y;
                }
            }
        }
    }
    rec(&items, 0, count, &mut vec![0; pairs.len()], &mut out);
    out
}

/// Genus-order check and the joint curve-bucket check for the group of
/// order k acting on all curves fixed by its powers.
fn check_curves(k: u64, chain: &Chain) -> Result<(), Violation> {
    let classes = curve_classes(k, chain).map_err(|detail| Violation::CurveBucket { level: k, detail })?;
    for &(g, f, c) in &classes {
        if g >= 2 && f < k {
            if c > 1 {
                return Err(Violation::CurveBucket {
                    level: k,
                    detail: format!("two curves of genus {g} fixed by sigma_{f}"),
                });
            }
            if let GenusOrder::Impossible { by_riemann_hurwitz, citation } = genus_order_possible(g, k / f) {
                return Err(Violation::GenusOrder {
                    genus: g,
                    order: k / f,
                    by_riemann_hurwitz,
                    citation: citation.map(str::to_string),
                });
            }
        }
    }
    let targets = bucket_targets(k, chain);
    let pairs: Vec<(u64, u64)> = targets.iter().map(|t| t.0).collect();
    let target: Vec<u64> = targets.iter().map(|t| t.1).collect();
    let opts: Vec<Vec<Vec<u64>>> = classes
        .iter()
        .map(|&(g, f, c)| class_options(k, g, f, c, &pairs).into_iter().collect())
        .collect();
    fn rec(opts: &[Vec<Vec<u64>>], i: usize, acc: &mut Vec<u64>, target: &[u64]) -> bool {
        if i == opts.len() {
            return acc == target;
        }
        for v in &opts[i] {
            let ok = acc.iter().zip(v).zip(target).all(|((a, b), t)| a + b <= *t);
            if !ok {
                continue;
            }
            for (x, y) in acc.iter_mut().zip(v) {
                *x += y;
            }
            let hit = rec(opts, i + 1, acc, target);
            for (x, y) in acc.iter_mut().zip(v) {
                *x -= y;
            }
            if hit {
                return true;
            }
        }
        false
    }
    if rec(&opts, 0, &mut vec![0; pairs.len()], &target) {
        Ok(())
    } else {
        let shown: Vec<String> = targets
            .iter()
            .filter(|t| t.1 > 0 || classes.iter().any(|c| c.1 % t.0 .1 == 0))
            .map(|((j, jp), v)| format!("{v} pts of sigma_{j} on curves of sigma_{jp}"))
            .collect();
        Err(Violation::CurveBucket {
            level: k,
            detail: format!("no action of Z/{k} on the fixed curves gives {}", shown.join(", ")),
        })
    }
}

/// Curve sets for `sigma_k`: sub-multisets of the curves of every proper
/// power with the given alpha and at most one curve of genus >= 2.
fn curve_sets(k: u64, chain: &Chain, alpha: i64) -> Vec<Vec<u64>> {
    let mut avail: Option<BTreeMap<u64, usize>> = None;
    for (&j, p) in chain {
        if j == k || k % j != 0 || j == 1 {
            continue;
        }
        let m = p.curve_multiset();
        avail = Some(match avail {
            None => m.into_iter().map(|(g, c)| (g, c as usize)).collect(),
            Some(a) => a
                .into_iter()
                .map(|(g, c)| (g, c.min(m.get(&g).copied().unwrap_or(0) as usize)))
                .filter(|&(_, c)| c > 0)
                .collect(),
        });
    }
    let avail: Vec<(u64, usize)> = avail.unwrap_or_default().into_iter().collect();
    let mut out = Vec::new();
    fn rec(av: &[(u64, usize)], i: usize, cur: &mut Vec<u64>, alpha: i64, out: &mut Vec<Vec<u64>>) {
        if i == av.len() {
            let a: i64 = cur.iter().map(|&g| 1 - g as i64).sum();
            if a == alpha && cur.iter().filter(|&&g| g >= 2).count() <= 1 {
                let mut c = cur.clone();
                c.sort_unstable_by(|x, y| y.cmp(x));
                out.push(c);
            }
            return;
        }
        let (g, c) = av[i];
        for t in 0..=c {
            cur.extend(std::iter::repeat_n(g, t));
            rec(av, i + 1, cur, alpha, out);
            cur.truncate(cur.len() - t);
        }
    }
    rec(&avail, 0, &mut Vec::new(), alpha, &mut out);
    out.sort();
    out
}

fn derived_bounds(k: u64, chain: &Chain, chi: i64, cap: Option<i64>) -> HoloBounds {
    let mut amin = i64::MIN;
    let mut amax = i64::MAX;
    for (&j, p) in chain {
        if j == k || k % j != 0 {
            continue;
        }
        amin = amin.max(p.curves.iter().filter(|&&g| g >= 2).map(|&g| 1 - g as i64).sum());
        amax = amax.min(p.rational_curves() as i64);
    }
    let mut a_max = (chi - 2 * amin).max(0);
    if let Some(c) = cap {
        a_max = a_max.min(c);
    }
    HoloBounds::uniform(k, a_max, amin, amax)
}

fn chi_equation(k: u64, chi: i64) -> HoloConstraint {
    let mut t: Vec<(HoloVar, i64)> = (1..=crate::lefschetz::type_count(k)).map(|i| (HoloVar::A(i), 1)).collect();
    t.push((HoloVar::Alpha, 2));
    HoloConstraint::rel(t, Relation::Eq, chi)
}

struct Ctx<'a> {
    n: u64,
    d: &'a EigenDims,
    opts: &'a ClassifyOptions,
    pruned: Vec<PrunedBranch>,
    rows: Vec<ClassificationRow>,
}

impl Ctx<'_> {
    fn prune(&mut self, level: u64, chain: &Chain, reason: String) {
        self.pruned.push(PrunedBranch {
            d: self.d.to_desc(),
            level,
            profiles: chain_strings(chain),
            reason,
        });
    }

    /// Extends a chain by the composite level k (k < n).
    fn composite_level(&mut self, k: u64, chain: &Chain) -> Result<Vec<Chain>, ClassifyError> {
        let chi = chi_of_power(self.d, self.n / k);
        let mut cons = vec![chi_equation(k, chi)];
        for (&j, p) in chain {
            if k % j == 0 && j < k {
                cons.extend(compatibility_constraints(k, 1, k / j, p));
            }
        }
        let bounds = derived_bounds(k, chain, chi, self.opts.a_cap);
        let sols = if bounds.alpha_min > bounds.alpha_max {
            vec![]
        } else {
            holo_solve(k, 1, &bounds, &cons)?
        };
        if sols.is_empty() {
            self.prune(k, chain, format!("holomorphic Lefschetz formula for sigma_{k} has no solution (chi = {chi})"));
            return Ok(vec![]);
        }
        let mut out = Vec::new();
        let mut last = None;
        for s in sols {
            for c in curve_sets(k, chain, s.alpha) {
                let prof = FixedLocusProfile::new(k, c, s.a.clone()).expect("valid profile");
                let mut ch = chain.clone();
                ch.insert(k, prof);
                let sub: Chain = ch.iter().filter(|(&j, _)| k % j == 0).map(|(&j, p)| (j, p.clone())).collect();
                match check_curves(k, &sub) {
                    Ok(()) => out.push(ch),
                    Err(v) => last = Some(format!("{s}: {v}")),
                }
            }
        }
        if out.is_empty() {
            self.prune(k, chain, last.unwrap_or_else(|| format!("no curve set for sigma_{k}")));
        }
        Ok(out)
    }

    /// Top level: every holomorphic solution with the point bounds and the
    /// chi equation, then the checks in order.
    fn top_level(&mut self, chain: &Chain) -> Result<(), ClassifyError> {
        let n = self.n;
        let chi = chi_of_power(self.d, 1);
        let mut cons = vec![chi_equation(n, chi)];
        let mut orbit_checks = Vec::new();
        for (&j, p) in chain {
            let (b, o) = point_constraints(n, 1, n / j, p);
            cons.extend(b);
            orbit_checks.extend(o.into_iter().map(|c| (j, c)));
        }
        let bounds = derived_bounds(n, chain, chi, self.opts.a_cap);
        let sols = if bounds.alpha_min > bounds.alpha_max {
            vec![]
        } else {
            holo_solve(n, 1, &bounds, &cons)?
        };
        if sols.is_empty() {
            self.prune(n, chain, format!("holomorphic Lefschetz formula for sigma_{n} has no solution (chi = {chi})"));
        }
        for s in sols {
            let row = |profiles: Chain, status: Status| ClassificationRow {
                n,
                label: String::new(),
                d: self.d.clone(),
                chi: ChiVector::of(self.d),
                profiles,
                holo: s.clone(),
                status,
            };
            if let Some((j, c)) = orbit_checks.iter().find(|(_, c)| !c.holds(&s)) {
                let v = Violation::PointCount { level: n, power: *j, constraint: c.to_string() };
                self.rows.push(row(chain.clone(), Status::EliminatedArithmetic { reason: v }));
                continue;
            }
            let sets = curve_sets(n, chain, s.alpha);
            if sets.is_empty() {
                let v = Violation::CurveSet { level: n, alpha: s.alpha };
                self.rows.push(row(chain.clone(), Status::EliminatedArithmetic { reason: v }));
                continue;
            }
            for c in sets {
                let prof = FixedLocusProfile::new(n, c, s.a.clone()).expect("valid profile");
                let mut ch = chain.clone();
                ch.insert(n, prof);
                let status = match check_curves(n, &ch).and_then(|_| check_doubling(n, &ch)) {
                    Err(v) => Status::EliminatedArithmetic { reason: v },
                    Ok(()) => Status::Admissible,
                };
                self.rows.push(row(ch, status));
            }
        }
        Ok(())
    }
}

fn check_doubling(n: u64, chain: &Chain) -> Result<(), Violation> {
    if n % 2 != 0 || !is_prime(n / 2) || n == 4 {
        return Ok(());
    }
    let p = n / 2;
    if let Some(prof) = chain.get(&p) {
        if let Some(f) = doubling_facts(p, prof).into_iter().find(|f| !f.lift_exists) {
            return Err(Violation::DoublingFact { citation: f.citation });
        }
    }
    Ok(())
}

fn profile_matches(pr: &ProfileRef, p: &FixedLocusProfile) -> bool {
    if let Some(c) = &pr.curves {
        let mut c = c.clone();
        c.sort_unstable_by(|x, y| y.cmp(x));
        if c != p.curves {
            return false;
        }
    }
    if let Some(a) = &pr.a {
        if a != &p.a {
            return false;
        }
    }
    if let Some(n) = pr.points {
        if n != p.points() {
            return false;
        }
    }
    if let Some(al) = pr.alpha {
        if al != p.alpha() {
            return false;
        }
    }
    true
}

fn profiles_match(refs: &BTreeMap<String, ProfileRef>, profiles: &BTreeMap<u64, FixedLocusProfile>) -> bool {
    refs.iter().all(|(o, pr)| {
        o.parse::<u64>()
            .ok()
            .and_then(|o| profiles.get(&o))
            .is_some_and(|p| profile_matches(pr, p))
    })
}

/// Whether a classification row agrees with every field given in a
/// reference row.
pub fn row_matches(r: &RefRow, row: &ClassificationRow) -> bool {
    if let Some(n) = r.extra.as_ref().and_then(|e| e.get("n")) {
        if *n != row.n as i64 {
            return false;
        }
    }
    if let Some(d) = &r.d {
        if d != &row.d.to_desc() {
            return false;
        }
    }
    if let Some(chi) = &r.chi {
        for (o, v) in chi {
            let Ok(o) = o.parse::<u64>() else { return false };
            if row.chi.of_order(o) != Some(*v) {
                return false;
            }
        }
    }
    match &r.profiles {
        Some(p) => profiles_match(p, &row.profiles),
        None => true,
    }
}

fn pattern_matches(pat: &Pattern, k: u64, row: &ClassificationRow) -> bool {
    if let Some(d) = &pat.d {
        if d != &row.d.power(row.n / k).to_desc() {
            return false;
        }
    }
    match &pat.profiles {
        Some(p) => profiles_match(p, &row.profiles),
        None => true,
    }
}

/// Reference tables checked, in order, when labelling rows of order n.
pub fn reference_tables_for(n: u64) -> &'static [&'static str] {
    match n {
        11 => &["resumen"],
        15 => &["tab", "resumen"],
        16 => &["resumen", "tab16"],
        20 => &["resumen", "tab:20"],
        22 => &["tab22", "tabB", "resumen"],
        24 => &["resumen"],
        30 => &["resumen", "tab:30", "tab:30-1"],
        _ => &[],
    }
}

fn content_label(row: &ClassificationRow) -> String {
    let mut h = DefaultHasher::new();
    row.n.hash(&mut h);
    row.d.to_desc().hash(&mut h);
    row.profiles.hash(&mut h);
    row.holo.hash(&mut h);
    format!("x{:08x}", h.finish() as u32)
}

fn assign_status(rows: &mut [ClassificationRow], geometric: bool) {
    let data = reference();
    let geo = data.geometric();
    for row in rows.iter_mut() {
        if row.status.is_admissible() && geometric {
            let hit = geo.iter().find(|(g, _)| {
                row.n % g.n == 0 && g.n > 1 && pattern_matches(&g.pattern, g.n, row)
            });
            if let Some((g, cit)) = hit {
                row.status = Status::RequiresGeometricAnalysis {
                    fact: g.label.clone(),
                    note: g.note.clone(),
                    citation: cit.to_string(),
                };
                row.label = g.label.clone();
                continue;
            }
        }
        // a reference label is reused only when the verdicts agree
        let want = match row.status {
            Status::Admissible => Verdict::Admissible,
            Status::EliminatedArithmetic { .. } => Verdict::Eliminated,
            _ => Verdict::Geometric,
        };
        let mut found = None;
        'outer: for tid in reference_tables_for(row.n).iter().chain(label_tables_for(row.n)) {
            let t = data.table(tid).expect("known table");
            for r in &t.rows {
                if r.verdict == want && row_matches(r, row) {
                    found = Some((tid.to_string(), r.label.clone()));
                    break 'outer;
                }
            }
        }
        match found {
            Some((table, label)) if row.status == Status::Admissible => {
                row.label = label.clone();
                row.status = Status::MatchesPaperRow { table, label };
            }
            Some((_, label)) => row.label = label,
            None => row.label = content_label(row),
        }
    }
}

/// Further tables with eliminated cases, used for labels only.
fn label_tables_for(n: u64) -> &'static [&'static str] {
    match n {
        15 => &["tab:F"],
        16 => &["tab16-2"],
        _ => &[],
    }
}

/// Classifies purely non-symplectic automorphisms of order n (acting on the
/// 2-form by zeta_n) with the given options.
pub fn classify_order(n: u64, opts: &ClassifyOptions) -> Result<Classification, ClassifyError> {
    let cons = match opts.dn {
        Some(v) => vec![DimConstraint { k: n, rel: Relation::Eq, value: v }],
        None => vec![DimConstraint { k: n, rel: Relation::Ge, value: 1 }],
    };
    let dims = enumerate_dims(n, &cons)?;
    let levels: Vec<u64> = divisors(n).into_iter().filter(|&k| k > 1).collect();
    for &k in &levels {
        if is_prime(k) && !prime_supported(k) {
            return Err(ClassifyError::UnsupportedPrime { n, p: k });
        }
    }
    let mut rows = Vec::new();
    let mut pruned = Vec::new();
    for d in dims.iter().rev() {
        let mut ctx = Ctx { n, d, opts, pruned: vec![], rows: vec![] };
        let mut chains: Vec<Chain> = vec![Chain::new()];
        for &k in &levels {
            let mut next = Vec::new();
            if is_prime(k) {
                let sub = d.power(n / k);
                let chi = chi_of_power(d, n / k);
                let cands = prime_profiles(k, &sub).expect("checked above");
                let (ok, bad): (Vec<_>, Vec<_>) = cands.into_iter().partition(|(p, _)| p.chi() == chi);
                if ok.is_empty() {
                    let why = if bad.is_empty() {
                        format!("no cited fixed locus for sigma_{k} with dims {sub}")
                    } else {
                        format!("no cited fixed locus for sigma_{k} with chi = {chi}")
                    };
                    for c in &chains {
                        ctx.prune(k, c, why.clone());
                    }
                }
                if k == n {
                    for (p, _) in ok {
                        let mut ch = Chain::new();
                        let holo = HoloSolution { n, e: 1, a: p.a.clone(), alpha: p.alpha() };
                        ch.insert(n, p);
                        ctx.rows.push(ClassificationRow {
                            n,
                            label: String::new(),
                            d: d.clone(),
                            chi: ChiVector::of(d),
                            profiles: ch,
                            holo,
                            status: Status::Admissible,
                        });
                    }
                    break;
                }
                for c in &chains {
                    for (p, _) in &ok {
                        let mut ch = c.clone();
                        ch.insert(k, p.clone());
                        next.push(ch);
                    }
                }
            } else if k < n {
                for c in &chains {
                    next.extend(ctx.composite_level(k, c)?);
                }
            } else {
                for c in &chains {
                    ctx.top_level(c)?;
                }
                break;
            }
            chains = next;
            if chains.is_empty() {
                break;
            }
        }
        rows.extend(ctx.rows);
        pruned.extend(ctx.pruned);
    }
    assign_status(&mut rows, opts.geometric_flags);
    Ok(Classification { n, rows, pruned })
}

/// Structured comparison of the admissible rows with a reference table.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct DiffReport {
    pub table: String,
    pub matched: Vec<(String, String)>,
    pub missing: Vec<String>,
    pub extra: Vec<String>,
    /// Reference rows marked eliminated or geometric that the classifier
    /// finds admissible, and admissible reference rows it flags or eliminates.
    pub status_notes: Vec<String>,
}

impl DiffReport {
    pub fn is_empty(&self) -> bool {
        self.missing.is_empty() && self.extra.is_empty()
    }
}

pub fn compare_with_reference(rows: &[ClassificationRow], table_id: &str) -> Result<DiffReport, ClassifyError> {
    let t = reference().table(table_id)?;
    let ns: BTreeSet<u64> = rows.iter().map(|r| r.n).collect();
    let refs: Vec<&RefRow> = t
        .rows
        .iter()
        .filter(|r| match r.extra.as_ref().and_then(|e| e.get("n")) {
            Some(&n) => ns.contains(&(n as u64)),
            None => true,
        })
        .collect();
    let mut rep = DiffReport { table: table_id.to_string(), ..Default::default() };
    let adm: Vec<&ClassificationRow> = rows.iter().filter(|r| r.status.is_admissible()).collect();
    for r in &refs {
        let hits: Vec<&&ClassificationRow> = adm.iter().filter(|row| row_matches(r, row)).collect();
        if r.verdict == Verdict::Admissible {
            if hits.is_empty() {
                rep.missing.push(r.label.clone());
                for row in rows.iter().filter(|row| row_matches(r, row)) {
                    rep.status_notes.push(format!("{}: classifier says {}", r.label, row.status.tag()));
                }
            }
            for h in hits {
                rep.matched.push((r.label.clone(), h.label.clone()));
            }
        } else if !hits.is_empty() {
            rep.status_notes.push(format!("{}: reference verdict {:?}, classifier admissible", r.label, r.verdict));
        }
    }
    for row in &adm {
        let covered = refs.iter().any(|r| r.verdict == Verdict::Admissible && row_matches(r, row));
        if !covered {
            rep.extra.push(row.label.clone());
        }
    }
    Ok(rep)
}
