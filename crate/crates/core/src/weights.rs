//! Weights of `B_m = so(2m+1)`, `D_m = so(2m)` and `u(m)` in the standard
//! basis `ε_1..ε_m`: Weyl vectors, Casimir constants, the invariant
//! `PW(λ) = ⟨λ,λ+2ρ⟩/‖λ‖²`, Weyl dimensions, reality types and the weight
//! multisets of the representations used elsewhere in the crate.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::rational::{q, qi, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LieFamily {
    B,
    D,
    U,
}

/// `so(2m+1)`, `so(2m)` or `u(m)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LieType {
    pub family: LieFamily,
    pub m: usize,
}

impl LieType {
    pub fn new(family: LieFamily, m: usize) -> Result<LieType> {
        if m < 2 {
            return invalid(format!("rank {m} too small; need m >= 2"));
        }
        Ok(LieType { family, m })
    }

    /// `so(n)` for `n ≥ 4`, picking B or D by parity.
    pub fn so(n: usize) -> Result<LieType> {
        if n < 4 {
            return invalid(format!("so({n}) not supported; need n >= 4"));
        }
        LieType::new(if n.is_multiple_of(2) { LieFamily::D } else { LieFamily::B }, n / 2)
    }

    /// Dimension of the defining real (B/D) or complex (U) module.
    pub fn n(&self) -> usize {
        match self.family {
            LieFamily::B => 2 * self.m + 1,
            LieFamily::D => 2 * self.m,
            LieFamily::U => self.m,
        }
    }

    pub fn dim_algebra(&self) -> u64 {
        let n = self.n() as u64;
        match self.family {
            LieFamily::B | LieFamily::D => n * (n - 1) / 2,
            LieFamily::U => n * n,
        }
    }
}

impl fmt::Display for LieType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.m)
    }
}

/// Which weight lattice a weight must belong to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LatticeFlag {
    /// Integer coordinates.
    SO,
    /// All-integer or all-half-odd coordinates.
    Spin,
}

/// A weight `Σ a_i ε_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Weight {
    pub ty: LieType,
    pub coeffs: Vec<Rational>,
}

fn is_half_odd(x: &Rational) -> bool {
    !x.is_integer() && (x * qi(2)).is_integer()
}

impl Weight {
    pub fn new(ty: LieType, coeffs: Vec<Rational>, lattice: LatticeFlag) -> Result<Weight> {
        if coeffs.len() != ty.m {
            return invalid(format!("{} needs {} coordinates, got {}", ty, ty.m, coeffs.len()));
        }
        let all_int = coeffs.iter().all(Rational::is_integer);
        let all_half = coeffs.iter().all(is_half_odd);
        let ok = match (ty.family, lattice) {
            (LieFamily::U, _) | (_, LatticeFlag::SO) => all_int,
            (_, LatticeFlag::Spin) => all_int || all_half,
        };
        if !ok {
            return invalid(format!("coordinates {coeffs:?} not in the {lattice:?} lattice of {ty}"));
        }
        Ok(Weight { ty, coeffs })
    }

    pub fn from_ints(ty: LieType, a: &[i64]) -> Result<Weight> {
        Weight::new(ty, a.iter().map(|&x| qi(x)).collect(), LatticeFlag::SO)
    }

    pub fn zero(ty: LieType) -> Weight {
        Weight { ty, coeffs: vec![Rational::zero(); ty.m] }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    pub fn is_dominant(&self) -> bool {
        let a = &self.coeffs;
        let m = a.len();
        let desc = |upto: usize| (1..upto).all(|i| a[i - 1] >= a[i]);
        match self.ty.family {
            LieFamily::B => desc(m) && !a[m - 1].is_negative(),
            LieFamily::D => desc(m - 1) && a[m - 2] >= a[m - 1].abs(),
            LieFamily::U => desc(m),
        }
    }

    pub fn norm2(&self) -> Rational {
        self.coeffs.iter().map(|x| x * x).sum()
    }

    pub fn add(&self, o: &Weight) -> Weight {
        assert_eq!(self.ty, o.ty);
        Weight { ty: self.ty, coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect() }
    }

    pub fn scale(&self, c: &Rational) -> Weight {
        Weight { ty: self.ty, coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<String> = self.coeffs.iter().map(Rational::to_string).collect();
        write!(f, "{}({})", self.ty, c.join(","))
    }
}

#[derive(Serialize, Deserialize)]
struct WeightJson {
    family: LieFamily,
    m: usize,
    coeffs: Vec<Rational>,
}

impl Serialize for Weight {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        WeightJson { family: self.ty.family, m: self.ty.m, coeffs: self.coeffs.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Weight {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = WeightJson::deserialize(d)?;
        let ty = LieType::new(w.family, w.m).map_err(serde::de::Error::custom)?;
        Weight::new(ty, w.coeffs, LatticeFlag::Spin).map_err(serde::de::Error::custom)
    }
}

/// A dominant weight.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Weight", into = "Weight")]
pub struct DominantWeight(Weight);

impl TryFrom<Weight> for DominantWeight {
    type Error = Error;
    fn try_from(w: Weight) -> Result<Self> {
        DominantWeight::new(w)
    }
}

impl From<DominantWeight> for Weight {
    fn from(d: DominantWeight) -> Weight {
        d.0
    }
}

impl DominantWeight {
    pub fn new(w: Weight) -> Result<DominantWeight> {
        if !w.is_dominant() {
            return invalid(format!("weight {w} is not dominant"));
        }
        Ok(DominantWeight(w))
    }

    pub fn from_ints(ty: LieType, a: &[i64]) -> Result<DominantWeight> {
        DominantWeight::new(Weight::from_ints(ty, a)?)
    }

    pub fn weight(&self) -> &Weight {
        &self.0
    }

    pub fn ty(&self) -> LieType {
        self.0.ty
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.0.coeffs
    }
}

impl fmt::Display for DominantWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Half the sum of positive roots.
pub fn weyl_vector(ty: LieType) -> Vec<Rational> {
    let m = ty.m as i64;
    (1..=m)
        .map(|i| match ty.family {
            LieFamily::D => qi(m - i),
            LieFamily::B => q(2 * (m - i) + 1, 2),
            LieFamily::U => q(m - 2 * i + 1, 2),
        })
        .collect()
}

pub fn inner(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `⟨λ, λ + 2ρ⟩`.
pub fn casimir(l: &DominantWeight) -> Rational {
    let rho = weyl_vector(l.ty());
    l.coeffs().iter().zip(&rho).map(|(a, r)| a * (a + r * qi(2))).sum()
}

/// `PW(λ)`, possibly capped at `dim g`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PwValue {
    pub value: Rational,
    /// Uncapped ratio `Cas/‖λ‖²`.
    pub raw: Rational,
    pub capped: bool,
}

impl fmt::Display for PwValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.capped {
            write!(f, "{} (capped from {})", self.value, self.raw)
        } else {
            write!(f, "{}", self.value)
        }
    }
}

pub fn pw_invariant(l: &DominantWeight) -> Result<PwValue> {
    let n2 = l.weight().norm2();
    if n2.is_zero() {
        return invalid("PW is undefined for the trivial weight");
    }
    let raw = casimir(l) / n2;
    let cap = Rational::from(l.ty().dim_algebra());
    let capped = raw > cap;
    Ok(PwValue { value: if capped { cap } else { raw.clone() }, raw, capped })
}

/// `1 + Σ (n-2j)|a_j| / Σ a_j²` for B and D.
pub fn pw_closed_form(l: &DominantWeight) -> Result<Rational> {
    let ty = l.ty();
    if ty.family == LieFamily::U {
        return Err(Error::Unsupported("closed form is for orthogonal types".into()));
    }
    let n = ty.n() as i64;
    let n2 = l.weight().norm2();
    if n2.is_zero() {
        return invalid("PW is undefined for the trivial weight");
    }
    let s: Rational = l.coeffs().iter().enumerate().map(|(j, a)| qi(n - 2 * (j as i64 + 1)) * a.abs()).sum();
    Ok(Rational::one() + s / n2)
}

pub fn positive_roots(ty: LieType) -> Vec<Vec<Rational>> {
    let m = ty.m;
    let unit = |i: usize, s: i64| {
        let mut v = vec![Rational::zero(); m];
        v[i] = qi(s);
        v
    };
    let mut roots = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            let mut minus = unit(i, 1);
            minus[j] = qi(-1);
            roots.push(minus);
            if ty.family != LieFamily::U {
                let mut plus = unit(i, 1);
                plus[j] = qi(1);
                roots.push(plus);
            }
        }
        if ty.family == LieFamily::B {
            roots.push(unit(i, 1));
        }
    }
    roots
}

/// Weyl dimension formula.
pub fn weyl_dimension(l: &DominantWeight) -> BigInt {
    let rho = weyl_vector(l.ty());
    let lr: Vec<Rational> = l.coeffs().iter().zip(&rho).map(|(a, r)| a + r).collect();
    let d: Rational = positive_roots(l.ty()).iter().map(|al| inner(&lr, al) / inner(&rho, al)).product();
    assert!(d.is_integer(), "Weyl dimension {d} not integral");
    d.numer()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RepType {
    Real,
    Complex,
    Quaternionic,
}

/// Reality type of an irreducible `so(2m)` module. The rule is stated on the
/// Dynkin labels `c_{m-1} = a_{m-1} - a_m`, `c_m = a_{m-1} + a_m` of the last
/// two nodes: complex iff `m` odd and `c_{m-1} ≠ c_m`; quaternionic iff
/// `m ≡ 2 (4)` and `c_{m-1} + c_m` odd; real otherwise.
pub fn rep_type(l: &DominantWeight) -> Result<RepType> {
    let ty = l.ty();
    if ty.family != LieFamily::D {
        return Err(Error::Unsupported("reality type implemented for D only".into()));
    }
    let m = ty.m;
    let a = l.coeffs();
    let c_m1 = &a[m - 2] - &a[m - 1];
    let c_m = &a[m - 2] + &a[m - 1];
    if m % 2 == 1 && c_m1 != c_m {
        return Ok(RepType::Complex);
    }
    let sum = c_m1 + c_m;
    if m % 4 == 2 && sum.numer().is_odd() {
        return Ok(RepType::Quaternionic);
    }
    Ok(RepType::Real)
}

/// Fundamental weight `ω_l` of B or D (`ω_0 = 0`).
pub fn fundamental_weight(ty: LieType, l: usize) -> Result<Weight> {
    let m = ty.m;
    if l > m || ty.family == LieFamily::U {
        return invalid(format!("no fundamental weight ω_{l} for {ty}"));
    }
    let half = q(1, 2);
    let coeffs: Vec<Rational> = match (ty.family, l) {
        (LieFamily::D, l) if l == m => vec![half; m],
        (LieFamily::D, l) if l == m - 1 && l > 0 => {
            let mut v = vec![half.clone(); m];
            v[m - 1] = -half;
            v
        }
        (LieFamily::B, l) if l == m => vec![half; m],
        _ => (0..m).map(|i| if i < l { qi(1) } else { qi(0) }).collect(),
    };
    Ok(Weight { ty, coeffs })
}

/// Representation selector shared by the weight, decomposition and matrix code.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RepKind {
    Defining,
    Wedge(u32),
    Sym(u32),
    /// Traceless symmetric square.
    Sym0,
    Spinor,
    SpinorPlus,
    SpinorMinus,
    /// Full spinor module tensored with a tensor representation.
    SpinorTensor(Box<RepKind>),
}

impl fmt::Display for RepKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RepKind::Defining => write!(f, "defining"),
            RepKind::Wedge(p) => write!(f, "wedge:{p}"),
            RepKind::Sym(p) => write!(f, "sym:{p}"),
            RepKind::Sym0 => write!(f, "sym0:2"),
            RepKind::Spinor => write!(f, "spinor"),
            RepKind::SpinorPlus => write!(f, "spinor+"),
            RepKind::SpinorMinus => write!(f, "spinor-"),
            RepKind::SpinorTensor(r) => write!(f, "spinor*{r}"),
        }
    }
}

impl std::str::FromStr for RepKind {
    type Err = Error;

    /// `defining`, `wedge:p`, `sym:p`, `sym0:2`, `spinor`, `spinor+`,
    /// `spinor-`, `spinor*<rep>`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix("spinor*") {
            return Ok(RepKind::SpinorTensor(Box::new(rest.parse()?)));
        }
        let num = |t: &str| t.parse::<u32>().map_err(|_| Error::Parse(format!("bad representation {s:?}")));
        Ok(match s {
            "defining" => RepKind::Defining,
            "sym0:2" | "sym0" => RepKind::Sym0,
            "spinor" => RepKind::Spinor,
            "spinor+" => RepKind::SpinorPlus,
            "spinor-" => RepKind::SpinorMinus,
            _ => match s.split_once(':') {
                Some(("wedge", p)) => RepKind::Wedge(num(p)?),
                Some(("sym", p)) => RepKind::Sym(num(p)?),
                _ => return Err(Error::Parse(format!("unknown representation {s:?}"))),
            },
        })
    }
}

/// Highest weight when the representation of `so(n)` is irreducible.
pub fn highest_weight(kind: &RepKind, ty: LieType) -> Option<DominantWeight> {
    let m = ty.m;
    let first = |p: usize, c: i64| {
        let v: Vec<i64> = (0..m).map(|i| if i < p { c } else { 0 }).collect();
        DominantWeight::from_ints(ty, &v).ok()
    };
    match (kind, ty.family) {
        (_, LieFamily::U) => None,
        (RepKind::Defining, _) | (RepKind::Sym(1), _) | (RepKind::Wedge(1), _) => first(1, 1),
        (RepKind::Wedge(p), LieFamily::D) if (*p as usize) < m => first(*p as usize, 1),
        (RepKind::Wedge(p), LieFamily::B) if (*p as usize) <= m => first(*p as usize, 1),
        (RepKind::Sym0, _) => {
            let mut v = vec![0i64; m];
            v[0] = 2;
            DominantWeight::from_ints(ty, &v).ok()
        }
        (RepKind::Spinor, LieFamily::B) | (RepKind::SpinorPlus, LieFamily::D) => {
            fundamental_weight(ty, m).ok().and_then(|w| DominantWeight::new(w).ok())
        }
        (RepKind::SpinorMinus, LieFamily::D) => {
            fundamental_weight(ty, m - 1).ok().and_then(|w| DominantWeight::new(w).ok())
        }
        _ => None,
    }
}

/// Weights of the defining module of B or D, with multiplicity.
fn defining_weights(ty: LieType) -> Vec<Vec<Rational>> {
    let m = ty.m;
    let mut out = Vec::new();
    for i in 0..m {
        for s in [1, -1] {
            let mut v = vec![Rational::zero(); m];
            v[i] = qi(s);
            out.push(v);
        }
    }
    if ty.family == LieFamily::B {
        out.push(vec![Rational::zero(); m]);
    }
    out
}

fn sum_vecs<'a>(vs: impl Iterator<Item = &'a Vec<Rational>>, m: usize) -> Vec<Rational> {
    let mut acc = vec![Rational::zero(); m];
    for v in vs {
        for (a, b) in acc.iter_mut().zip(v) {
            *a += b;
        }
    }
    acc
}

/// Weight multiset of a representation of B or D.
pub fn rep_weights(kind: &RepKind, ty: LieType) -> Result<Vec<Weight>> {
    if ty.family == LieFamily::U {
        return Err(Error::Unsupported("weight multisets for u(m)".into()));
    }
    let m = ty.m;
    let base = defining_weights(ty);
    let nb = base.len();
    let raw: Vec<Vec<Rational>> = match kind {
        RepKind::Defining => base,
        RepKind::Wedge(p) => {
            let p = *p as usize;
            if p > nb {
                return invalid(format!("wedge power {p} exceeds {nb}"));
            }
            combos(nb, p, false).into_iter().map(|c| sum_vecs(c.iter().map(|&i| &base[i]), m)).collect()
        }
        RepKind::Sym(p) => {
            combos(nb, *p as usize, true).into_iter().map(|c| sum_vecs(c.iter().map(|&i| &base[i]), m)).collect()
        }
        RepKind::Sym0 => {
            let mut w: Vec<Vec<Rational>> =
                combos(nb, 2, true).into_iter().map(|c| sum_vecs(c.iter().map(|&i| &base[i]), m)).collect();
            let z = w.iter().position(|v| v.iter().all(Rational::is_zero)).unwrap();
            w.remove(z);
            w
        }
        RepKind::Spinor | RepKind::SpinorPlus | RepKind::SpinorMinus => {
            if ty.family == LieFamily::B && *kind != RepKind::Spinor {
                return invalid("spinor halves exist only for even n");
            }
            let mut out = Vec::new();
            for bits in 0u32..(1 << m) {
                let minus = bits.count_ones() as usize;
                let keep = match kind {
                    RepKind::SpinorPlus => minus.is_multiple_of(2),
                    RepKind::SpinorMinus => minus % 2 == 1,
                    _ => true,
                };
                if keep {
                    out.push((0..m).map(|i| if bits >> i & 1 == 1 { q(-1, 2) } else { q(1, 2) }).collect());
                }
            }
            out
        }
        RepKind::SpinorTensor(inner_kind) => {
            let s = rep_weights(&RepKind::Spinor, ty)?;
            let t = rep_weights(inner_kind, ty)?;
            let mut out = Vec::with_capacity(s.len() * t.len());
            for a in &s {
                for b in &t {
                    out.push(a.add(b).coeffs);
                }
            }
            out
        }
    };
    Ok(raw.into_iter().map(|coeffs| Weight { ty, coeffs }).collect())
}

/// `k`-subsets (or multisets when `repeat`) of `0..n` in lexicographic order.
pub(crate) fn combos(n: usize, k: usize, repeat: bool) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, repeat: bool, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(if repeat { i } else { i + 1 }, n, k, repeat, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, repeat, &mut Vec::new(), &mut out);
    out
}
