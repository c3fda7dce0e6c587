//! Local types of isolated fixed points, their behaviour under powers,
//! Riemann-Hurwitz checks and fixed-locus profiles.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::lefschetz::{type_count, HoloConstraint, HoloVar};
use crate::numtheory::{gcd, inv_mod, is_prime, modn};

/// Local type of an isolated fixed point of an automorphism of order `n`
/// acting on the 2-form by `zeta_n^e`: the tangent action is
/// `diag(zeta^p, zeta^q)` with `p + q = e (mod n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct LocalType {
    pub n: u64,
    pub e: u64,
    pub p: u64,
    pub q: u64,
}

impl LocalType {
    /// The type `A_{i,n}` for exponent `e`: pair `(e(i+1), e(n-i))`.
    pub fn from_index(n: u64, e: u64, i: usize) -> LocalType {
        let i = i as u64;
        LocalType { n, e: e % n, p: e * (i + 1) % n, q: e * (n - i) % n }.canonical()
    }

    /// Canonical index in `1..=floor((n-1)/2)`.
    pub fn index(&self) -> usize {
        let u = inv_mod(self.e, self.n).expect("omega exponent is a unit");
        let i = (modn((u * self.p) as i64 - 1, self.n)) as usize;
        i.min(self.n as usize - 1 - i)
    }

    /// Representative with `p = e(i+1)` for the canonical index `i`.
    pub fn canonical(&self) -> LocalType {
        let i = self.index() as u64;
        let n = self.n;
        LocalType { n, e: self.e, p: self.e * (i + 1) % n, q: self.e * (n - i) % n }
    }

    pub fn is_valid(&self) -> bool {
        self.p % self.n != 0
            && self.q % self.n != 0
            && (self.p + self.q) % self.n == self.e % self.n
            && gcd(self.e, self.n) == 1
    }
}

impl fmt::Display for LocalType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "A_{{{},{}}}", self.index(), self.n)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum PushResult {
    OnFixedCurve,
    Isolated(LocalType),
    /// Never produced for a fixed point; kept for completeness of the tag set.
    NotFixed,
}

/// Behaviour of a fixed point of type `t` under `sigma^m`.
pub fn push_type(t: LocalType, m: u64) -> PushResult {
    let n = t.n;
    let (mp, mq) = (m * t.p % n, m * t.q % n);
    if mp == 0 && mq == 0 {
        return PushResult::NotFixed;
    }
    if mp == 0 || mq == 0 {
        return PushResult::OnFixedCurve;
    }
    let g = gcd(n, m % n);
    let n2 = n / g;
    let e2 = (m / g) * t.e % n2;
    PushResult::Isolated(LocalType { n: n2, e: e2, p: mp / g, q: mq / g }.canonical())
}

/// Convenience: push the canonical type `A_{i,n}` (exponent `e`) by `m`.
pub fn push_index(n: u64, e: u64, i: usize, m: u64) -> PushResult {
    push_type(LocalType::from_index(n, e, i), m)
}

/// `2 - 2g = p(2 - 2g') - N(p - 1)`: returns `g'` when a nonnegative
/// integer solution exists.
pub fn rh_feasible(g: u64, p: u64, n_fixed: u64) -> Option<u64> {
    let lhs = 2 - 2 * g as i64;
    let rhs0 = 2 * p as i64 - n_fixed as i64 * (p as i64 - 1);
    // lhs = rhs0 - 2 p g'
    let diff = rhs0 - lhs;
    if diff < 0 || diff % (2 * p as i64) != 0 {
        return None;
    }
    Some((diff / (2 * p as i64)) as u64)
}

/// Fixed-point counts N for which an automorphism of prime order p on a
/// curve of genus g exists: the Riemann-Hurwitz equation has a solution and
/// the branch data is realizable (N != 1, N = 0 needs g' >= 1, N even for p = 2).
pub fn rh_admissible_counts(g: u64, p: u64) -> Vec<u64> {
    assert!(is_prime(p));
    let max = (2 * g + 2) / (p - 1) + 2;
    (0..=max)
        .filter(|&n| match rh_feasible(g, p, n) {
            None => false,
            Some(gq) => n != 1 && !(n == 0 && gq == 0) && !(p == 2 && n % 2 == 1),
        })
        .collect()
}

/// Signature of a cyclic group of order `m` acting faithfully on a curve:
/// genus of the quotient and the stabilizer orders over the branch points.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CyclicAction {
    pub m: u64,
    pub quotient_genus: u64,
    /// Stabilizer orders, ascending.
    pub branch: Vec<u64>,
}

impl CyclicAction {
    /// Points fixed by the whole group.
    pub fn fixed_points(&self) -> u64 {
        self.branch.iter().filter(|&&s| s == self.m).count() as u64
    }

    /// Points fixed by the subgroup of order `t`.
    pub fn fixed_by_subgroup(&self, t: u64) -> u64 {
        self.branch.iter().filter(|&&s| s % t == 0).map(|&s| self.m / s).sum()
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

fn harvey_ok(m: u64, h: u64, branch: &[u64]) -> bool {
    let all = branch.iter().fold(1, |l, &s| lcm(l, s));
    for i in 0..branch.len() {
        let rest = branch
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .fold(1, |l, (_, &s)| lcm(l, s));
        if rest != all {
            return false;
        }
    }
    if h == 0 && all != m {
        return false;
    }
    if m % 2 == 0 {
        let two = 1u64 << m.trailing_zeros();
        if branch.iter().filter(|&&s| s % two == 0).count() % 2 == 1 {
            return false;
        }
    }
    true
}

/// All signatures of `Z/m` acting faithfully on a curve of genus `g`:
/// solutions of the Riemann-Hurwitz equation satisfying Harvey's
/// conditions for cyclic groups.
pub fn cyclic_actions(g: u64, m: u64) -> Vec<CyclicAction> {
    if m <= 1 {
        return vec![CyclicAction { m: 1, quotient_genus: g, branch: vec![] }];
    }
    let divs: Vec<u64> = crate::numtheory::divisors(m).into_iter().filter(|&s| s > 1).collect();
    let mut out = Vec::new();
    let two_g = 2 * g as i64 - 2;
    let mut h = 0u64;
    loop {
        let target = two_g - m as i64 * (2 * h as i64 - 2);
        if target < 0 {
            break;
        }
        // Each branch point with stabilizer s contributes m - m/s.
        let mut stack = Vec::new();
        branch_sums(&divs, m, target, 0, &mut stack, &mut |b| {
            if harvey_ok(m, h, b) {
                out.push(CyclicAction { m, quotient_genus: h, branch: b.to_vec() });
            }
        });
        h += 1;
    }
    out.sort();
    out
}

fn branch_sums(
    divs: &[u64],
    m: u64,
    target: i64,
    start: usize,
    cur: &mut Vec<u64>,
    f: &mut dyn FnMut(&[u64]),
) {
    if target == 0 {
        f(cur);
        return;
    }
    for i in start..divs.len() {
        let c = (m - m / divs[i]) as i64;
        if c <= target {
            cur.push(divs[i]);
            branch_sums(divs, m, target - c, i, cur, f);
            cur.pop();
        }
    }
}

/// Possible numbers of points fixed by a generator of `Z/m` acting
/// faithfully on a genus-g curve.
pub fn cyclic_fixed_counts(g: u64, m: u64) -> Vec<u64> {
    let mut v: Vec<u64> = cyclic_actions(g, m).iter().map(|a| a.fixed_points()).collect();
    v.sort_unstable();
    v.dedup();
    v
}

/// Embedded facts about curves without automorphisms of a given order.
pub const GENUS_ORDER_FACTS: &[(u64, u64, &str)] = &[
    (3, 5, "Broughton, Table 5: no genus 3 curve has an automorphism of order 5"),
    (6, 11, "Farkas-Kra, Prop. V.2.14: no genus 6 curve has an automorphism of order 11"),
    (9, 11, "Riemann-Hurwitz: no genus 9 curve has an automorphism of order 11"),
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum GenusOrder {
    Possible,
    Impossible { by_riemann_hurwitz: bool, citation: Option<&'static str> },
}

impl GenusOrder {
    pub fn is_impossible(&self) -> bool {
        matches!(self, GenusOrder::Impossible { .. })
    }
}

/// Whether a smooth curve of genus `g` can carry an automorphism of order
/// `ord`, decided by the signature search of [`cyclic_actions`]. A matching
/// entry of [`GENUS_ORDER_FACTS`] is attached as citation.
pub fn genus_order_possible(g: u64, ord: u64) -> GenusOrder {
    let cited = GENUS_ORDER_FACTS
        .iter()
        .find(|&&(gg, o, _)| gg == g && o == ord)
        .map(|&(_, _, c)| c);
    if ord <= 1 {
        return GenusOrder::Possible;
    }
    if cyclic_actions(g, ord).is_empty() {
        GenusOrder::Impossible { by_riemann_hurwitz: true, citation: cited }
    } else if let Some(c) = cited {
        GenusOrder::Impossible { by_riemann_hurwitz: false, citation: Some(c) }
    } else {
        GenusOrder::Possible
    }
}

/// Fixed locus of an automorphism of order n: curves of the listed genera and
/// `a[i-1]` isolated points of type `A_{i,n}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FixedLocusProfile {
    pub n: u64,
    /// Genera of the fixed curves, in decreasing order.
    pub curves: Vec<u64>,
    pub a: Vec<u32>,
}

impl FixedLocusProfile {
    pub fn new(n: u64, mut curves: Vec<u64>, a: Vec<u32>) -> Result<Self, String> {
        curves.sort_unstable_by(|x, y| y.cmp(x));
        if curves.iter().filter(|&&g| g >= 2).count() > 1 {
            return Err("at most one fixed curve of genus >= 2".into());
        }
        if a.len() != type_count(n) {
            return Err(format!("expected {} point types for order {n}, got {}", type_count(n), a.len()));
        }
        Ok(FixedLocusProfile { n, curves, a })
    }

    /// Profile with `g` (if any), `k` rational curves and the given points.
    pub fn with_gk(n: u64, g: Option<u64>, k: u64, a: Vec<u32>) -> Result<Self, String> {
        let mut c: Vec<u64> = g.into_iter().collect();
        c.extend(std::iter::repeat_n(0, k as usize));
        Self::new(n, c, a)
    }

    pub fn points(&self) -> u64 {
        self.a.iter().map(|&x| x as u64).sum()
    }

    pub fn rational_curves(&self) -> u64 {
        self.curves.iter().filter(|&&g| g == 0).count() as u64
    }

    pub fn alpha(&self) -> i64 {
        self.curves.iter().map(|&g| 1 - g as i64).sum()
    }

    pub fn chi(&self) -> i64 {
        self.curves.iter().map(|&g| 2 - 2 * g as i64).sum::<i64>() + self.points() as i64
    }

    /// Largest genus among curves of positive genus, if any.
    pub fn main_genus(&self) -> Option<u64> {
        self.curves.first().copied().filter(|&g| g > 0)
    }

    /// `(g, k)` in the usual notation `C_g + k R`: the first curve and the
    /// number of further curves. `None` when nothing is fixed pointwise.
    pub fn gk(&self) -> Option<(u64, u64)> {
        self.curves.first().map(|&g| (g, self.curves.len() as u64 - 1))
    }

    pub fn curve_multiset(&self) -> BTreeMap<u64, u64> {
        let mut m = BTreeMap::new();
        for &g in &self.curves {
            *m.entry(g).or_insert(0) += 1;
        }
        m
    }
}

impl fmt::Display for FixedLocusProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        for (g, c) in self.curve_multiset().into_iter().rev() {
            let name = if g == 0 { "R".to_string() } else { format!("C{g}") };
            parts.push(if c == 1 { name } else { format!("{c}x{name}") });
        }
        if self.points() > 0 || parts.is_empty() {
            parts.push(format!("{}pts", self.points()));
        }
        write!(f, "{}", parts.join("+"))
    }
}

/// Sizes `s <= total` that can be written as a sum of divisors of `r`
/// larger than one: the number of points that orbits of length > 1 under a
/// group of order `r` can absorb.
pub fn orbit_absorbable(r: u64, total: u64) -> Vec<u64> {
    let divs: Vec<u64> = crate::numtheory::divisors(r).into_iter().filter(|&s| s > 1).collect();
    let mut ok = vec![false; total as usize + 1];
    ok[0] = true;
    for s in 1..=total as usize {
        ok[s] = divs.iter().any(|&d| d as usize <= s && ok[s - d as usize]);
    }
    (0..=total).filter(|&s| ok[s as usize]).collect()
}

/// Isolated fixed points of sigma grouped by the type they have for
/// `sigma^m` (`None`: on a curve fixed by `sigma^m`).
pub fn push_classes(n: u64, e: u64, m: u64) -> (BTreeMap<usize, Vec<usize>>, Vec<usize>) {
    let mut iso: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    let mut on_curve = Vec::new();
    for i in 1..=type_count(n) {
        match push_index(n, e, i, m) {
            PushResult::OnFixedCurve => on_curve.push(i),
            PushResult::Isolated(t) => iso.entry(t.index()).or_default().push(i),
            PushResult::NotFixed => {}
        }
    }
    (iso, on_curve)
}

/// Conditions on the isolated points of sigma coming from the isolated points
/// of `sigma^m`: the upper bounds per type, and separately the orbit
/// conditions (points of `sigma^m` not fixed by sigma come in orbits of
/// length dividing the residual order r; for prime r a congruence).
pub fn point_constraints(
    n: u64,
    e: u64,
    m: u64,
    target: &FixedLocusProfile,
) -> (Vec<HoloConstraint>, Vec<HoloConstraint>) {
    let r = gcd(n, m % n);
    let n2 = n / r;
    let (iso, _) = push_classes(n, e, m);
    let mut bounds = Vec::new();
    let mut orbits = Vec::new();
    for j in 1..=type_count(n2) {
        let idx = iso.get(&j).cloned().unwrap_or_default();
        let bound = target.a.get(j - 1).copied().unwrap_or(0) as i64;
        let terms = HoloConstraint::sum_a(&idx);
        bounds.push(HoloConstraint::le(terms.clone(), bound));
        if is_prime(r) {
            orbits.push(HoloConstraint::congruent(terms, bound, r));
        } else {
            let vals = orbit_absorbable(r, bound as u64).into_iter().map(|s| bound - s as i64).collect();
            orbits.push(HoloConstraint::one_of(terms, vals));
        }
    }
    (bounds, orbits)
}

/// Conditions from the curves of `sigma^m`: the number of isolated points of
/// sigma on them, and alpha, must come from one of the [`curve_distributions`].
pub fn curve_constraints(n: u64, e: u64, m: u64, target: &FixedLocusProfile) -> Vec<HoloConstraint> {
    let r = gcd(n, m % n);
    let (_, on_curve) = push_classes(n, e, m);
    let dists = curve_distributions(&target.curves, r);
    let mut sums: Vec<i64> = dists.iter().map(|d| d.points() as i64).collect();
    sums.sort_unstable();
    sums.dedup();
    let mut alphas: Vec<i64> = dists.iter().map(|d| d.alpha()).collect();
    alphas.sort_unstable();
    alphas.dedup();
    vec![
        HoloConstraint::one_of(HoloConstraint::sum_a(&on_curve), sums),
        HoloConstraint::one_of(vec![(HoloVar::Alpha, 1)], alphas),
    ]
}

/// All constraints on the `a_{i,n}` (and alpha) of sigma implied by a known
/// fixed locus of `sigma^m`: [`point_constraints`] and [`curve_constraints`].
pub fn compatibility_constraints(
    n: u64,
    e: u64,
    m: u64,
    target: &FixedLocusProfile,
) -> Vec<HoloConstraint> {
    let (mut out, orbits) = point_constraints(n, e, m, target);
    out.extend(orbits);
    out.extend(curve_constraints(n, e, m, target));
    out
}

/// A curve fixed by `sigma^m` that sigma maps to itself without fixing it
/// pointwise: sigma acts on it with the given order and fixed points.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct InvariantCurve {
    pub genus: u64,
    pub order: u64,
    pub fixed_points: u64,
}

/// How the fixed curves of `sigma^m` sit under sigma, r being the residual
/// order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CurveDistribution {
    /// Curves pointwise fixed by sigma.
    pub fixed: Vec<u64>,
    pub invariant: Vec<InvariantCurve>,
    /// Permuted curves as (genus, orbit length), one entry per orbit.
    pub permuted: Vec<(u64, u64)>,
}

impl CurveDistribution {
    pub fn points(&self) -> u64 {
        self.invariant.iter().map(|c| c.fixed_points).sum()
    }

    pub fn alpha(&self) -> i64 {
        self.fixed.iter().map(|&g| 1 - g as i64).sum()
    }
}

/// All ways the curves (given by genus) can be fixed by sigma, invariant
/// with a realizable number of fixed points for some order dividing r, or
/// permuted in orbits whose length divides r.
pub fn curve_distributions(curves: &[u64], r: u64) -> Vec<CurveDistribution> {
    let mut by_genus: BTreeMap<u64, u64> = BTreeMap::new();
    for &g in curves {
        *by_genus.entry(g).or_insert(0) += 1;
    }
    let groups: Vec<(u64, u64)> = by_genus.into_iter().collect();
    let divs: Vec<u64> = crate::numtheory::divisors(r).into_iter().filter(|&s| s > 1).collect();
    let mut out = Vec::new();
    let mut cur = CurveDistribution { fixed: vec![], invariant: vec![], permuted: vec![] };
    dist_rec(&groups, &divs, &mut cur, &mut out);
    out.sort();
    out.dedup();
    out
}

fn dist_rec(
    groups: &[(u64, u64)],
    divs: &[u64],
    cur: &mut CurveDistribution,
    out: &mut Vec<CurveDistribution>,
) {
    let Some((&(g, c), rest)) = groups.split_first() else {
        let mut d = cur.clone();
        d.fixed.sort_unstable();
        d.invariant.sort_unstable();
        d.permuted.sort_unstable();
        out.push(d);
        return;
    };
    let options: Vec<InvariantCurve> = divs
        .iter()
        .flat_map(|&o| {
            cyclic_fixed_counts(g, o)
                .into_iter()
                .map(move |n| InvariantCurve { genus: g, order: o, fixed_points: n })
        })
        .collect();
    let mut orbit_choices = Vec::new();
    partitions_into(divs, c, 0, &mut Vec::new(), &mut orbit_choices);
    for orbits in orbit_choices {
        let used: u64 = orbits.iter().sum();
        let left = c - used;
        for nfix in 0..=left {
            let ninv = (left - nfix) as usize;
            let mut choices = Vec::new();
            multisets(&options, ninv, 0, &mut Vec::new(), &mut choices);
            for ch in choices {
                let save = cur.clone();
                cur.fixed.extend(std::iter::repeat_n(g, nfix as usize));
                cur.permuted.extend(orbits.iter().map(|&o| (g, o)));
                cur.invariant.extend(ch);
                dist_rec(rest, divs, cur, out);
                *cur = save;
            }
        }
    }
}

/// Multisets of orbit lengths (from `divs`) with total at most `cap`.
fn partitions_into(divs: &[u64], cap: u64, start: usize, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
    out.push(cur.clone());
    for i in start..divs.len() {
        if divs[i] <= cap {
            cur.push(divs[i]);
            partitions_into(divs, cap - divs[i], i, cur, out);
            cur.pop();
        }
    }
}

fn multisets<T: Clone>(items: &[T], k: usize, start: usize, cur: &mut Vec<T>, out: &mut Vec<Vec<T>>) {
    if k == 0 {
        out.push(cur.clone());
        return;
    }
    for i in start..items.len() {
        cur.push(items[i].clone());
        multisets(items, k - 1, i, cur, out);
        cur.pop();
    }
}

/// Reasons an involution fixed-locus shape is excluded.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum InvolutionExclusion {
    /// `a = 11 - g - k` would be negative.
    NegativeA,
    /// `r = 11 - g + k` would exceed 20.
    RankTooLarge,
    /// `a = 0` forces `r = 2 (mod 8)`.
    EvenUnimodularCongruence,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct InvolutionProfile {
    pub g: u64,
    pub k: u64,
    pub excluded: Option<InvolutionExclusion>,
}

impl InvolutionProfile {
    /// Rank of the invariant lattice, `11 - g + k`.
    pub fn r(&self) -> i64 {
        11 - self.g as i64 + self.k as i64
    }

    pub fn a(&self) -> i64 {
        11 - self.g as i64 - self.k as i64
    }
}

/// Candidate fixed loci `C_g + k R` of a non-symplectic involution with the
/// given Euler characteristic, flagged by Nikulin's constraints on (r, a).
pub fn involution_profiles(chi: i64) -> Vec<InvolutionProfile> {
    let mut out = Vec::new();
    for g in 0..=10u64 {
        for k in 0..=19u64 {
            if 2 - 2 * g as i64 + 2 * k as i64 != chi {
                continue;
            }
            let mut p = InvolutionProfile { g, k, excluded: None };
            p.excluded = if p.a() < 0 {
                Some(InvolutionExclusion::NegativeA)
            } else if p.r() > 20 {
                Some(InvolutionExclusion::RankTooLarge)
            } else if p.a() == 0 && p.r().rem_euclid(8) != 2 {
                Some(InvolutionExclusion::EvenUnimodularCongruence)
            } else {
                None
            };
            out.push(p);
        }
    }
    out
}

/// Non-excluded involution profiles for invariant lattice rank `r`.
pub fn involution_profiles_for_rank(r: u64) -> Vec<InvolutionProfile> {
    involution_profiles(2 * r as i64 - 20)
        .into_iter()
        .filter(|p| p.excluded.is_none())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn test_push_examples() {
        assert_eq!(push_index(15, 1, 4, 3), PushResult::OnFixedCurve);
        match push_index(15, 1, 1, 3) {
            PushResult::Isolated(t) => assert_eq!((t.n, t.index()), (5, 1)),
            other => panic!("{other:?}"),
        }
        assert_eq!(push_index(22, 1, 10, 2), PushResult::OnFixedCurve);
    }

    #[test]
    fn test_rh() {
        assert_eq!(rh_feasible(2, 3, 4), Some(0));
        assert_eq!(rh_feasible(0, 11, 2), Some(0));
        assert_eq!(rh_admissible_counts(1, 5), vec![0]);
        assert_eq!(rh_admissible_counts(0, 7), vec![2]);
        assert_eq!(rh_admissible_counts(2, 5), vec![3]);
        assert_eq!(rh_admissible_counts(6, 2), vec![2, 6, 10, 14]);
    }

    #[test]
    fn test_genus_order() {
        assert!(genus_order_possible(3, 5).is_impossible());
        assert!(genus_order_possible(6, 11).is_impossible());
        assert!(genus_order_possible(9, 11).is_impossible());
        assert_eq!(genus_order_possible(2, 5), GenusOrder::Possible);
        assert_eq!(genus_order_possible(2, 6), GenusOrder::Possible);
        assert_eq!(genus_order_possible(2, 10), GenusOrder::Possible);
        assert!(genus_order_possible(2, 7).is_impossible());
        assert!(genus_order_possible(3, 10).is_impossible());
    }

    #[test]
    fn test_prime_routes_agree() {
        for p in [2, 3, 5, 7, 11, 13] {
            for g in 0..=10 {
                assert_eq!(cyclic_fixed_counts(g, p), rh_admissible_counts(g, p), "g={g} p={p}");
            }
        }
    }

    #[test]
    fn test_cyclic_actions() {
        // Genus 0: Z/m acts with two fixed points.
        assert_eq!(cyclic_fixed_counts(0, 4), vec![2]);
        assert_eq!(cyclic_fixed_counts(0, 6), vec![2]);
        // Elliptic curves: order 4 fixes 0 or 2 points, order 6 fixes 0 or 1.
        assert_eq!(cyclic_fixed_counts(1, 4), vec![0, 2]);
        assert_eq!(cyclic_fixed_counts(1, 6), vec![0, 1]);
        assert!(cyclic_actions(1, 5).iter().all(|a| a.fixed_points() == 0));
        // Only translations have order 8 on an elliptic curve.
        assert_eq!(cyclic_fixed_counts(1, 8), vec![0]);
    }

    #[test]
    fn test_curve_distributions_composite() {
        let d = curve_distributions(&[0, 0], 4);
        assert!(d.iter().any(|x| x.permuted == vec![(0, 2)]));
        assert!(d.iter().any(|x| x.invariant.iter().any(|c| c.order == 4)));
        assert_eq!(orbit_absorbable(6, 5), vec![0, 2, 3, 4, 5]);
    }

    #[test]
    fn test_involutions() {
        let ok: Vec<(u64, u64)> = involution_profiles(-8)
            .into_iter()
            .filter(|p| p.excluded.is_none())
            .map(|p| (p.g, p.k))
            .collect();
        assert_eq!(ok, vec![(5, 0), (6, 1), (7, 2)]);
    }
}
