//! Weierstrass models `y^2 = x^3 + A(t) x + B(t)` over the projective line:
//! singular fibers by the vanishing orders of A, B and the discriminant, and
//! diagonal automorphisms `(t, x, y) -> (lambda t, mu x, nu y)`.

use std::fmt;

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::cli_io::{parse_rational, parse_root, reference, FamilyKind, ParseError};
use crate::poly::{q, Poly};

#[derive(Debug, Error)]
pub enum FibrationError {
    #[error("discriminant is identically zero")]
    ZeroDiscriminant,
    #[error("deg {which} = {deg} exceeds {bound} for scale {scale}")]
    DegreeTooLarge { which: &'static str, deg: usize, bound: usize, scale: u32 },
    #[error("scale must be positive")]
    BadScale,
    #[error("vanishing orders (vA, vB, vD) = ({0}, {1}, {2}) fit no Kodaira type")]
    NoKodairaType(String, String, u32),
    #[error("unknown family {id:?}; known Weierstrass families: {known}")]
    UnknownFamily { id: String, known: String },
    #[error("family {0} has no Weierstrass model")]
    NotWeierstrass(String),
    #[error("missing value for parameter {0}")]
    MissingParameter(String),
    #[error("family has no parameter {0}")]
    UnknownParameter(String),
    #[error("parameter {name}: {err}")]
    BadParameter { name: String, err: ParseError },
    #[error("{0}")]
    Parse(ParseError),
    #[error("mu^3 != nu^2: the action does not preserve the Weierstrass form")]
    BadAction,
}

// ---------------------------------------------------------------------------
// Templates: polynomials in t whose coefficients are polynomials in one
// parameter.

/// `sum_i param^i * coeffs[i](t)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Template {
    pub param: Option<String>,
    pub coeffs: Vec<Poly>,
}

impl Template {
    pub fn constant(p: Poly) -> Self {
        Template { param: None, coeffs: vec![p] }
    }

    /// Parses sums of products of rationals, `t`, `t^k` and a parameter
    /// (optionally raised to a power), e.g. `t^10 - t^5 - a*t^5 + a`.
    pub fn parse(s: &str) -> Result<Self, ParseError> {
        let err = |pos: usize, msg: &str| ParseError { input: s.to_string(), pos, msg: msg.to_string() };
        let b = s.as_bytes();
        let mut pos = 0;
        let mut param: Option<String> = None;
        let mut coeffs: Vec<Poly> = vec![];
        let skip = |pos: &mut usize| {
            while *pos < b.len() && b[*pos].is_ascii_whitespace() {
                *pos += 1;
            }
        };
        let mut first = true;
        loop {
            skip(&mut pos);
            let mut sign = 1i64;
            if pos < b.len() && (b[pos] == b'+' || b[pos] == b'-') {
                if b[pos] == b'-' {
                    sign = -1;
                }
                pos += 1;
                skip(&mut pos);
            } else if !first {
                return Err(err(pos, "expected + or -"));
            }
            if pos >= b.len() {
                return Err(err(pos, "expected a term"));
            }
            first = false;
            let mut c = q(sign);
            let mut tdeg = 0usize;
            let mut pdeg = 0usize;
            loop {
                skip(&mut pos);
                let start = pos;
                if pos < b.len() && b[pos].is_ascii_digit() {
                    while pos < b.len() && (b[pos].is_ascii_digit() || b[pos] == b'/') {
                        pos += 1;
                    }
                    let r = parse_rational(&s[start..pos]).map_err(|e| err(start + e.pos, &e.msg))?;
                    c *= r;
                } else if pos < b.len() && b[pos].is_ascii_alphabetic() {
                    while pos < b.len() && (b[pos].is_ascii_alphanumeric() || b[pos] == b'_') {
                        pos += 1;
                    }
                    let name = &s[start..pos];
                    skip(&mut pos);
                    let mut e = 1usize;
                    if pos < b.len() && b[pos] == b'^' {
                        pos += 1;
                        skip(&mut pos);
                        let es = pos;
                        while pos < b.len() && b[pos].is_ascii_digit() {
                            pos += 1;
                        }
                        e = s[es..pos].parse().map_err(|_| err(es, "expected an exponent"))?;
                        if e > 1000 {
                            return Err(err(es, "exponent too large"));
                        }
                    }
                    if name == "t" {
                        tdeg += e;
                    } else {
                        match &param {
                            Some(p) if p != name => return Err(err(start, "at most one parameter")),
                            _ => param = Some(name.to_string()),
                        }
                        pdeg += e;
                    }
                } else {
                    return Err(err(pos, "expected a number, t or a parameter"));
                }
                skip(&mut pos);
                if pos < b.len() && b[pos] == b'*' {
                    pos += 1;
                } else {
                    break;
                }
            }
            if coeffs.len() <= pdeg {
                coeffs.resize(pdeg + 1, Poly::zero());
            }
            coeffs[pdeg] = coeffs[pdeg].add(&Poly::monomial(c, tdeg));
            skip(&mut pos);
            if pos >= b.len() {
                break;
            }
        }
        while coeffs.len() > 1 && coeffs.last().is_some_and(Poly::is_zero) {
            coeffs.pop();
        }
        Ok(Template { param, coeffs })
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Poly::is_zero)
    }

    pub fn eval(&self, a: &BigRational) -> Poly {
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.scale(a).add(c);
        }
        acc
    }

    fn mul(&self, o: &Template) -> Template {
        let mut out = vec![Poly::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, x) in self.coeffs.iter().enumerate() {
            for (j, y) in o.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&x.mul(y));
            }
        }
        Template { param: self.param.clone().or(o.param.clone()), coeffs: out }
    }

    fn add(&self, o: &Template) -> Template {
        let n = self.coeffs.len().max(o.coeffs.len());
        let get = |t: &Template, i: usize| t.coeffs.get(i).cloned().unwrap_or_else(Poly::zero);
        Template {
            param: self.param.clone().or(o.param.clone()),
            coeffs: (0..n).map(|i| get(self, i).add(&get(o, i))).collect(),
        }
    }

    fn scale(&self, c: i64) -> Template {
        Template { param: self.param.clone(), coeffs: self.coeffs.iter().map(|p| p.scale(&q(c))).collect() }
    }

    /// Factors of t present for every value of the parameter: the gcd of
    /// the coefficients.
    pub fn forced_factor(&self) -> Poly {
        let g = self.coeffs.iter().fold(Poly::zero(), |g, c| g.gcd(c));
        if g.is_zero() {
            Poly::one()
        } else {
            g
        }
    }

    /// Degree in t for a general parameter value.
    pub fn generic_degree(&self) -> Option<usize> {
        self.coeffs.iter().filter_map(Poly::degree).max()
    }
}

// ---------------------------------------------------------------------------
// Models and fibers

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeierstrassModel {
    pub a: Poly,
    pub b: Poly,
    /// A, B and the discriminant are sections of degree 4N, 6N, 12N.
    pub scale: u32,
}

impl WeierstrassModel {
    pub fn new(a: Poly, b: Poly, scale: u32) -> Result<Self, FibrationError> {
        if scale == 0 {
            return Err(FibrationError::BadScale);
        }
        let n = scale as usize;
        for (which, p, bound) in [("A", &a, 4 * n), ("B", &b, 6 * n)] {
            if let Some(d) = p.degree() {
                if d > bound {
                    return Err(FibrationError::DegreeTooLarge { which, deg: d, bound, scale });
                }
            }
        }
        let m = WeierstrassModel { a, b, scale };
        if discriminant(&m).is_zero() {
            return Err(FibrationError::ZeroDiscriminant);
        }
        Ok(m)
    }

    pub fn parse(a: &str, b: &str, scale: u32) -> Result<Self, FibrationError> {
        let a = Template::parse(a).map_err(FibrationError::Parse)?;
        let b = Template::parse(b).map_err(FibrationError::Parse)?;
        if let Some(p) = a.param.clone().or(b.param.clone()) {
            return Err(FibrationError::MissingParameter(p));
        }
        Self::new(a.coeffs[0].clone(), b.coeffs[0].clone(), scale)
    }

    /// The same surface with the base coordinate replaced by 1/t.
    pub fn inverted(&self) -> WeierstrassModel {
        let n = self.scale as usize;
        WeierstrassModel { a: self.a.reversed(4 * n), b: self.b.reversed(6 * n), scale: self.scale }
    }
}

/// `4 A^3 + 27 B^2`.
pub fn discriminant(m: &WeierstrassModel) -> Poly {
    m.a.pow(3).scale(&q(4)).add(&m.b.pow(2).scale(&q(27)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Kodaira {
    I(u32),
    II,
    III,
    IV,
    IStar(u32),
    IVStar,
    IIIStar,
    IIStar,
}

impl Kodaira {
    pub fn euler(self) -> u32 {
        match self {
            Kodaira::I(n) => n,
            Kodaira::II => 2,
            Kodaira::III => 3,
            Kodaira::IV => 4,
            Kodaira::IStar(n) => n + 6,
            Kodaira::IVStar => 8,
            Kodaira::IIIStar => 9,
            Kodaira::IIStar => 10,
        }
    }
}

impl fmt::Display for Kodaira {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kodaira::I(n) => write!(f, "I{n}"),
            Kodaira::II => write!(f, "II"),
            Kodaira::III => write!(f, "III"),
            Kodaira::IV => write!(f, "IV"),
            Kodaira::IStar(n) => write!(f, "I{n}*"),
            Kodaira::IVStar => write!(f, "IV*"),
            Kodaira::IIIStar => write!(f, "III*"),
            Kodaira::IIStar => write!(f, "II*"),
        }
    }
}

/// Vanishing order, `None` for the zero polynomial.
pub type Order = Option<u32>;

fn show_order(v: Order) -> String {
    v.map_or("inf".to_string(), |x| x.to_string())
}

fn ge(v: Order, k: u32) -> bool {
    v.is_none_or(|x| x >= k)
}

/// Kodaira type from the vanishing orders of A, B and the discriminant at a
/// place where the model is minimal. `None` if the orders are inconsistent
/// or the fiber is smooth.
pub fn kodaira_type(va: Order, vb: Order, vd: u32) -> Option<Kodaira> {
    if vd == 0 {
        return None;
    }
    if va == Some(0) && vb == Some(0) {
        return Some(Kodaira::I(vd));
    }
    let t = match vd {
        2 if ge(va, 1) && vb == Some(1) => Kodaira::II,
        3 if va == Some(1) && ge(vb, 2) => Kodaira::III,
        4 if ge(va, 2) && vb == Some(2) => Kodaira::IV,
        6 if ge(va, 2) && ge(vb, 3) => Kodaira::IStar(0),
        d if d > 6 && va == Some(2) && vb == Some(3) => Kodaira::IStar(d - 6),
        8 if ge(va, 3) && vb == Some(4) => Kodaira::IVStar,
        9 if va == Some(3) && ge(vb, 5) => Kodaira::IIIStar,
        10 if ge(va, 4) && vb == Some(5) => Kodaira::IIStar,
        _ => return None,
    };
    Some(t)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Place {
    /// All roots of a squarefree polynomial; each root is one place.
    Finite { factor: String, degree: usize },
    Infinity,
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Finite { factor, .. } => write!(f, "{factor}"),
            Place::Infinity => write!(f, "inf"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiberReport {
    pub place: Place,
    /// Number of places (roots) covered by this report.
    pub count: usize,
    pub va: Order,
    pub vb: Order,
    pub vd: u32,
    /// Number of (vA, vB, vD) reductions by (4, 6, 12).
    pub reductions: u32,
    pub kodaira: Kodaira,
    /// Euler number of one fiber.
    pub euler: u32,
}

impl FiberReport {
    pub fn total_euler(&self) -> u32 {
        self.euler * self.count as u32
    }
}

fn order_at(p: &Poly, f: &Poly) -> Order {
    if p.is_zero() {
        None
    } else {
        Some(p.multiplicity_of(f) as u32)
    }
}

/// Splits a list of squarefree monic polynomials into pairwise coprime
/// pieces with the same product of radicals.
fn coprime_base(mut items: Vec<Poly>) -> Vec<Poly> {
    items.retain(|p| p.degree().unwrap_or(0) > 0);
    loop {
        let mut changed = false;
        'outer: for i in 0..items.len() {
            for j in i + 1..items.len() {
                let g = items[i].gcd(&items[j]);
                if g.degree().unwrap_or(0) > 0 {
                    let a = items[i].exact_div(&g);
                    let b = items[j].exact_div(&g);
                    items.remove(j);
                    items.remove(i);
                    items.extend([g, a, b].into_iter().filter(|p| p.degree().unwrap_or(0) > 0));
                    changed = true;
                    break 'outer;
                }
            }
        }
        if !changed {
            return items;
        }
    }
}

type Typed = (Order, Order, u32, u32, Kodaira);

/// Minimal vanishing orders and type; `None` when the fiber is smooth after
/// reduction.
fn classify_place(va: Order, vb: Order, vd: u32) -> Result<Option<Typed>, FibrationError> {
    let (mut va, mut vb, mut vd, mut red) = (va, vb, vd, 0);
    while ge(va, 4) && ge(vb, 6) && vd >= 12 {
        va = va.map(|x| x - 4);
        vb = vb.map(|x| x - 6);
        vd -= 12;
        red += 1;
    }
    if vd == 0 {
        return Ok(None);
    }
    let k = kodaira_type(va, vb, vd)
        .ok_or_else(|| FibrationError::NoKodairaType(show_order(va), show_order(vb), vd))?;
    Ok(Some((va, vb, vd, red, k)))
}

/// Singular fibers at the roots of the discriminant and at infinity.
/// Places are the roots of a coprime factorization refined by the vanishing
/// of A and B, with rational roots split off; conjugate roots share a report.
pub fn fiber_analysis(m: &WeierstrassModel) -> Result<Vec<FiberReport>, FibrationError> {
    let d = discriminant(m);
    if d.is_zero() {
        return Err(FibrationError::ZeroDiscriminant);
    }
    let mut pieces: Vec<Poly> = d.squarefree_decomposition().into_iter().map(|(f, _)| f).collect();
    for p in [&m.a, &m.b] {
        if !p.is_zero() {
            let rad: Vec<Poly> = p.squarefree_decomposition().into_iter().map(|(f, _)| f).collect();
            for r in rad {
                let g = r.gcd(&d);
                pieces.push(g);
            }
        }
    }
    let mut base = Vec::new();
    for f in coprime_base(pieces) {
        let mut rest = f.clone();
        for r in f.rational_roots() {
            let lin = Poly::new(vec![-r, BigRational::one()]);
            rest = rest.exact_div(&lin);
            base.push(lin);
        }
        if rest.degree().unwrap_or(0) > 0 {
            base.push(rest);
        }
    }
    base.sort_by(|x, y| x.degree().cmp(&y.degree()).then_with(|| x.to_string().cmp(&y.to_string())));
    let mut out = Vec::new();
    for f in base {
        let vd = d.multiplicity_of(&f) as u32;
        let Some((va, vb, vd, red, k)) = classify_place(order_at(&m.a, &f), order_at(&m.b, &f), vd)? else {
            continue;
        };
        let deg = f.degree().unwrap_or(0);
        out.push(FiberReport {
            place: Place::Finite { factor: f.to_string(), degree: deg },
            count: deg,
            va,
            vb,
            vd,
            reductions: red,
            kodaira: k,
            euler: k.euler(),
        });
    }
    let n = m.scale as usize;
    let deficit = |p: &Poly, bound: usize| -> Order { p.degree().map(|x| (bound - x) as u32) };
    let vd = (12 * n - d.degree().expect("nonzero")) as u32;
    if let Some((va, vb, vd, red, k)) = classify_place(deficit(&m.a, 4 * n), deficit(&m.b, 6 * n), vd)? {
        out.push(FiberReport { place: Place::Infinity, count: 1, va, vb, vd, reductions: red, kodaira: k, euler: k.euler() });
    }
    Ok(out)
}

/// Sum of Euler numbers equals 12N.
pub fn euler_check(reports: &[FiberReport], scale: u32) -> bool {
    reports.iter().map(|r| r.total_euler()).sum::<u32>() == 12 * scale
}

/// Fiber types with multiplicities, e.g. `[(II, 1), (I1, 22)]`, sorted.
pub fn fiber_configuration(reports: &[FiberReport]) -> Vec<(Kodaira, usize)> {
    let mut m = std::collections::BTreeMap::new();
    for r in reports {
        *m.entry(r.kodaira).or_insert(0) += r.count;
    }
    m.into_iter().collect()
}

// ---------------------------------------------------------------------------
// Actions

/// `exp(2 pi i * frac)` with `frac` in [0, 1).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct RootOfUnity {
    pub order: u64,
    pub exponent: u64,
}

impl RootOfUnity {
    pub fn new(order: u64, exponent: i64) -> Self {
        assert!(order >= 1);
        let e = exponent.rem_euclid(order as i64) as u64;
        let g = e.gcd(&order);
        RootOfUnity { order: order / g, exponent: e / g }
    }

    pub fn one() -> Self {
        RootOfUnity { order: 1, exponent: 0 }
    }

    pub fn mul(self, o: RootOfUnity) -> Self {
        let l = self.order.lcm(&o.order);
        RootOfUnity::new(l, (self.exponent * (l / self.order) + o.exponent * (l / o.order)) as i64)
    }

    pub fn inv(self) -> Self {
        RootOfUnity::new(self.order, -(self.exponent as i64))
    }

    pub fn pow(self, k: i64) -> Self {
        let e = (self.exponent as i128 * k as i128).rem_euclid(self.order as i128) as i64;
        RootOfUnity::new(self.order, e)
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.order, self.exponent)
    }
}

/// `(t, x, y) -> (lambda t, mu x, nu y)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DiagonalAction {
    pub lambda: RootOfUnity,
    pub mu: RootOfUnity,
    pub nu: RootOfUnity,
}

impl DiagonalAction {
    pub fn parse(lambda: &str, mu: &str, nu: &str) -> Result<Self, ParseError> {
        let r = |s: &str| parse_root(s).map(|(o, e)| RootOfUnity::new(o, e));
        Ok(DiagonalAction { lambda: r(lambda)?, mu: r(mu)?, nu: r(nu)? })
    }

    pub fn compose(self, o: DiagonalAction) -> Self {
        DiagonalAction { lambda: self.lambda.mul(o.lambda), mu: self.mu.mul(o.mu), nu: self.nu.mul(o.nu) }
    }

    /// Order of the automorphism itself.
    pub fn order(&self) -> u64 {
        self.lambda.order.lcm(&self.mu.order).lcm(&self.nu.order)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ActionReport {
    pub equivariant: bool,
    /// Multiplier on `dx ^ dt / y`: `mu * lambda / nu`.
    pub omega_multiplier: RootOfUnity,
    /// Order of the multiplier.
    pub purely_nonsymplectic_order: u64,
    pub order: u64,
}

fn scales_by(p: &Poly, lambda: RootOfUnity, target: RootOfUnity) -> bool {
    p.coeffs()
        .iter()
        .enumerate()
        .all(|(k, c)| c.is_zero() || lambda.pow(k as i64) == target)
}

/// Checks `A(lambda t) = mu^2 A(t)` and `B(lambda t) = nu^2 B(t)` term by
/// term (equivalent to `A(lambda t) mu = nu^2 A(t)` once `mu^3 = nu^2`).
pub fn check_automorphism(m: &WeierstrassModel, act: &DiagonalAction) -> Result<ActionReport, FibrationError> {
    if act.mu.pow(3) != act.nu.pow(2) {
        return Err(FibrationError::BadAction);
    }
    let equivariant = scales_by(&m.a, act.lambda, act.mu.pow(2)) && scales_by(&m.b, act.lambda, act.nu.pow(2));
    let w = act.mu.mul(act.lambda).mul(act.nu.inv());
    Ok(ActionReport { equivariant, omega_multiplier: w, purely_nonsymplectic_order: w.order, order: act.order() })
}

// ---------------------------------------------------------------------------
// Families

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyModel {
    pub id: String,
    pub a: Template,
    pub b: Template,
    pub scale: u32,
    pub action: Option<DiagonalAction>,
}

impl FamilyModel {
    pub fn discriminant(&self) -> Template {
        let a3 = self.a.mul(&self.a).mul(&self.a).scale(4);
        let b2 = self.b.mul(&self.b).scale(27);
        a3.add(&b2)
    }

    pub fn param(&self) -> Option<&str> {
        self.a.param.as_deref().or(self.b.param.as_deref())
    }

    /// The polynomial whose roots move with the parameter: B when A = 0,
    /// A when B = 0, the discriminant otherwise.
    fn moving(&self) -> Template {
        if self.a.is_zero() {
            self.b.clone()
        } else if self.b.is_zero() {
            self.a.clone()
        } else {
            self.discriminant()
        }
    }

    /// Whether a model looks like a general member: the moving polynomial
    /// (see above) keeps its generic degree, and after removing the factors
    /// present for every parameter value it is squarefree and coprime to them.
    pub fn is_generic(&self, m: &WeierstrassModel) -> bool {
        let tmpl = self.moving();
        let p = if self.a.is_zero() {
            m.b.clone()
        } else if self.b.is_zero() {
            m.a.clone()
        } else {
            discriminant(m)
        };
        let d = discriminant(m);
        if d.degree() != self.discriminant().generic_degree() || p.degree() != tmpl.generic_degree() {
            return false;
        }
        let forced = tmpl.forced_factor();
        let (rest, r) = p.divrem(&forced);
        if !r.is_zero() {
            return false;
        }
        rest.is_squarefree() && rest.gcd(&forced).degree() == Some(0)
    }

    /// The action checked on every coefficient of the parameter, so that
    /// equivariance holds for all parameter values at once.
    pub fn check_action(&self, act: &DiagonalAction) -> Result<ActionReport, FibrationError> {
        if act.mu.pow(3) != act.nu.pow(2) {
            return Err(FibrationError::BadAction);
        }
        let ok_a = self.a.coeffs.iter().all(|p| scales_by(p, act.lambda, act.mu.pow(2)));
        let ok_b = self.b.coeffs.iter().all(|p| scales_by(p, act.lambda, act.nu.pow(2)));
        let w = act.mu.mul(act.lambda).mul(act.nu.inv());
        Ok(ActionReport { equivariant: ok_a && ok_b, omega_multiplier: w, purely_nonsymplectic_order: w.order, order: act.order() })
    }

    pub fn specialize(&self, value: Option<&BigRational>) -> Result<Specialized, FibrationError> {
        let v = match (self.param(), value) {
            (None, _) => BigRational::zero(),
            (Some(p), None) => return Err(FibrationError::MissingParameter(p.to_string())),
            (Some(_), Some(v)) => v.clone(),
        };
        let model = WeierstrassModel::new(self.a.eval(&v), self.b.eval(&v), self.scale)?;
        let generic = self.is_generic(&model);
        Ok(Specialized { model, generic })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Specialized {
    pub model: WeierstrassModel,
    pub generic: bool,
}

fn weierstrass_ids() -> Vec<String> {
    reference()
        .families
        .iter()
        .filter(|f| f.kind == FamilyKind::Weierstrass)
        .map(|f| f.id.clone())
        .collect()
}

/// A family with a Weierstrass model from the reference data.
pub fn family_model(id: &str) -> Result<FamilyModel, FibrationError> {
    let f = reference()
        .families
        .iter()
        .find(|f| f.id == id)
        .ok_or_else(|| FibrationError::UnknownFamily { id: id.to_string(), known: weierstrass_ids().join(", ") })?;
    if f.kind != FamilyKind::Weierstrass {
        return Err(FibrationError::NotWeierstrass(id.to_string()));
    }
    let tp = |s: &Option<String>| Template::parse(s.as_deref().unwrap_or("0")).map_err(FibrationError::Parse);
    let action = match &f.action {
        Some(a) => Some(DiagonalAction::parse(&a.lambda, &a.mu, &a.nu).map_err(FibrationError::Parse)?),
        None => None,
    };
    Ok(FamilyModel { id: f.id.clone(), a: tp(&f.a)?, b: tp(&f.b)?, scale: f.scale.unwrap_or(2) as u32, action })
}

/// Substitutes `name=value` assignments (rational values only).
pub fn specialize(id: &str, assignments: &[(String, String)]) -> Result<Specialized, FibrationError> {
    let fam = family_model(id)?;
    let mut value = None;
    for (name, v) in assignments {
        if Some(name.as_str()) != fam.param() {
            return Err(FibrationError::UnknownParameter(name.clone()));
        }
        let r = parse_rational(v).map_err(|err| FibrationError::BadParameter { name: name.clone(), err })?;
        value = Some(r);
    }
    fam.specialize(value.as_ref())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(m: &WeierstrassModel) -> Vec<(Kodaira, usize)> {
        fiber_configuration(&fiber_analysis(m).unwrap())
    }

    #[test]
    fn test_template() {
        let t = Template::parse("t^10 - t^5 - a*t^5 + a").unwrap();
        assert_eq!(t.param.as_deref(), Some("a"));
        assert_eq!(t.coeffs.len(), 2);
        assert_eq!(t.eval(&q(2)).to_string(), "t^10 - 3*t^5 + 2");
        assert_eq!(t.forced_factor().to_string(), "t^5 - 1");
        assert!(Template::parse("t^2 +").is_err());
        assert!(Template::parse("a*b").is_err());
    }

    #[test]
    fn test_kodaira_table() {
        assert_eq!(kodaira_type(Some(0), Some(0), 3), Some(Kodaira::I(3)));
        assert_eq!(kodaira_type(None, Some(1), 2), Some(Kodaira::II));
        assert_eq!(kodaira_type(Some(2), Some(3), 9), Some(Kodaira::IStar(3)));
        assert_eq!(kodaira_type(Some(1), Some(1), 2), Some(Kodaira::II));
        assert_eq!(kodaira_type(Some(1), Some(1), 5), None);
        assert_eq!(kodaira_type(Some(0), Some(0), 0), None);
    }

    #[test]
    fn test_non_minimal_reduced() {
        // smooth at 0 once (vA, vB, vD) = (4, 6, 12) is reduced; the minimal
        // model is a rational surface, so the count is 12, not 24
        let m = WeierstrassModel::parse("t^4", "t^6 + t^7", 2).unwrap();
        let r = fiber_analysis(&m).unwrap();
        assert!(r.iter().all(|x| !matches!(&x.place, Place::Finite { factor, .. } if factor == "t")));
        assert_eq!(r.iter().map(|x| x.total_euler()).sum::<u32>(), 12);
        assert!(!euler_check(&r, 2));
    }

    #[test]
    fn test_inversion_swaps_zero_and_infinity() {
        let m = WeierstrassModel::parse("1", "t", 1).unwrap();
        let c1 = config(&m);
        let c2 = config(&m.inverted());
        assert_eq!(c1, c2);
        assert_eq!(c1, vec![(Kodaira::I(1), 2), (Kodaira::IIStar, 1)]);
    }

    #[test]
    fn test_root_of_unity() {
        let z = RootOfUnity::new(12, 1).mul(RootOfUnity::new(4, 1)).mul(RootOfUnity::new(8, 1).inv());
        assert_eq!(z, RootOfUnity::new(24, 5));
        assert_eq!(RootOfUnity::new(16, 2), RootOfUnity::new(8, 1));
        assert_eq!(RootOfUnity::new(2, 1).pow(2), RootOfUnity::one());
    }

    #[test]
    fn test_bad_inputs() {
        assert!(matches!(WeierstrassModel::parse("0", "0", 2), Err(FibrationError::ZeroDiscriminant)));
        assert!(matches!(WeierstrassModel::parse("t^9", "1", 2), Err(FibrationError::DegreeTooLarge { .. })));
        assert!(matches!(specialize("nope", &[]), Err(FibrationError::UnknownFamily { .. })));
        assert!(matches!(specialize("20", &[]), Err(FibrationError::NotWeierstrass(_))));
        let bad = [("a".to_string(), "cbrt(2)".to_string())];
        assert!(matches!(specialize("22", &bad), Err(FibrationError::BadParameter { .. })));
    }
}
