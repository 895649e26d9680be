//! Pontryagin data of closed manifolds, multiplicative genera, Chern
//! characters of associated bundles, twisted Â-genera and rational
//! cobordism certificates.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{Mutex, OnceLock};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::certificate::{Backend, Certificate, Evidence, Verdict};
use crate::decomp::{pw_spinor_wedge, r_p};
use crate::error::{invalid, Error, Result};
use crate::rational::{binomial, factorial, qi, Rational};
use crate::symfun::{
    bernoulli_numbers, genus_series, monomial_to_elementary, multiplicative_sequence, partitions_of,
    partitions_with_parts, powersums_to_elementary, GenusKind, Partition, PontPoly, PowerSumPoly,
};
use crate::weights::{rep_weights, LieFamily, LieType, RepKind};

/// Largest weight multiset `ch_bundle` will enumerate.
pub const CH_WEIGHT_BUDGET: u128 = 2_000_000;

/// Closed oriented `4k`-manifold, recorded through its Pontryagin numbers.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawManifold")]
pub struct ManifoldData {
    pub dim: u32,
    pub pont: BTreeMap<Partition, Rational>,
    pub spin: bool,
    pub p1_zero: bool,
    pub label: String,
}

#[derive(Deserialize)]
struct RawManifold {
    dim: u32,
    pont: BTreeMap<Partition, Rational>,
    #[serde(default)]
    spin: bool,
    #[serde(default)]
    p1_zero: bool,
    #[serde(default)]
    label: String,
}

impl TryFrom<RawManifold> for ManifoldData {
    type Error = Error;

    fn try_from(r: RawManifold) -> Result<ManifoldData> {
        ManifoldData::new(r.dim, r.pont, r.spin, r.p1_zero, r.label)
    }
}

impl ManifoldData {
    /// Entries with a part equal to 1 must vanish when `p1_zero` is set.
    pub fn new(
        dim: u32,
        pont: BTreeMap<Partition, Rational>,
        spin: bool,
        p1_zero: bool,
        label: impl Into<String>,
    ) -> Result<ManifoldData> {
        if dim == 0 || !dim.is_multiple_of(4) {
            return invalid(format!("dimension {dim} is not a positive multiple of 4"));
        }
        let k = dim / 4;
        if let Some(bad) = pont.keys().find(|p| p.weight() != k) {
            return invalid(format!("partition {bad} does not sum to {k}"));
        }
        if p1_zero {
            if let Some((bad, _)) = pont.iter().find(|(p, v)| p.parts().contains(&1) && !v.is_zero()) {
                return invalid(format!("p1_zero is set but {bad} is nonzero"));
            }
        }
        Ok(ManifoldData { dim, pont, spin, p1_zero, label: label.into() })
    }

    pub fn k(&self) -> u32 {
        self.dim / 4
    }

    /// `p_I`, or an error naming the missing partition.
    pub fn get(&self, part: &Partition) -> Result<Rational> {
        self.pont.get(part).cloned().ok_or_else(|| Error::MissingPontryagin(part.to_string()))
    }

    pub fn is_complete(&self) -> bool {
        partitions_of(self.k()).iter().all(|p| self.pont.contains_key(p))
    }

    /// Pairs the degree-`4k` part of a characteristic class with `[M]`.
    pub fn pair(&self, class: &PontPoly) -> Result<Rational> {
        let k = self.k();
        class.with_bound(k).pair(k, &self.pont)
    }

    /// The class `c·[M]` in rational cobordism; `c = -1` reverses orientation.
    pub fn scaled(&self, c: &Rational) -> ManifoldData {
        ManifoldData {
            dim: self.dim,
            pont: self.pont.iter().map(|(p, v)| (p.clone(), v * c)).collect(),
            spin: self.spin,
            p1_zero: self.p1_zero,
            label: format!("({c})*{}", self.label),
        }
    }

    fn from_total_class(dim: u32, classes: &[Rational], spin: bool, label: &str) -> Result<ManifoldData> {
        // `classes[i]` is `p_i` as a multiple of the unique top-degree generator power.
        let k = dim / 4;
        let pont = partitions_of(k)
            .into_iter()
            .map(|p| {
                let v: Rational = p.parts().iter().map(|&i| classes.get(i as usize).cloned().unwrap_or_default()).product();
                (p, v)
            })
            .collect();
        let p1_zero = classes.get(1).is_none_or(Rational::is_zero);
        ManifoldData::new(dim, pont, spin, p1_zero, label)
    }
}

impl fmt::Display for ManifoldData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (dim {}, spin {}):", self.label, self.dim, self.spin)?;
        for (p, v) in &self.pont {
            write!(f, " p{p}={v}")?;
        }
        Ok(())
    }
}

/// Manifolds with built-in Pontryagin data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Builtin {
    /// `CP^m`, `m` even.
    Cpm(u32),
    Hpk(u32),
    Cap2,
    K4,
    /// Degree `(1,1)` hypersurface in `CP^i × CP^j`.
    Milnor(u32, u32),
}

impl FromStr for Builtin {
    type Err = Error;

    /// `cpm:m`, `hpk:k`, `cap2`, `k4`, `milnor:i:j`.
    fn from_str(s: &str) -> Result<Builtin> {
        let parts: Vec<&str> = s.trim().split(':').collect();
        let num = |t: &str| t.parse::<u32>().map_err(|_| Error::Parse(format!("bad manifold {s:?}")));
        Ok(match parts.as_slice() {
            ["cpm", m] => Builtin::Cpm(num(m)?),
            ["hpk", k] => Builtin::Hpk(num(k)?),
            ["cap2"] => Builtin::Cap2,
            ["k4"] => Builtin::K4,
            ["milnor", i, j] => Builtin::Milnor(num(i)?, num(j)?),
            _ => return Err(Error::Parse(format!("unknown manifold {s:?}"))),
        })
    }
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Builtin::Cpm(m) => write!(f, "cpm:{m}"),
            Builtin::Hpk(k) => write!(f, "hpk:{k}"),
            Builtin::Cap2 => write!(f, "cap2"),
            Builtin::K4 => write!(f, "k4"),
            Builtin::Milnor(i, j) => write!(f, "milnor:{i}:{j}"),
        }
    }
}

fn gate(m: &ManifoldData, what: &str, kind: GenusKind, want: Rational) -> Result<()> {
    let got = genus(m, kind)?.value;
    if got != want {
        return Err(Error::Consistency(format!("{}: {what} is {got}, expected {want}", m.label)));
    }
    Ok(())
}

/// Builds the Pontryagin data and checks it against known genus values.
pub fn builtin_manifold(b: &Builtin) -> Result<ManifoldData> {
    let label = b.to_string();
    match *b {
        Builtin::Cpm(m) => {
            if m == 0 || m % 2 == 1 {
                return invalid(format!("CP^{m} has dimension not divisible by 4"));
            }
            let k = m / 2;
            // p = (1+x²)^{m+1}, u = x² of grade 1
            let c: Vec<Rational> = (0..=k).map(|i| binomial(m as u64 + 1, i as u64)).collect();
            let out = ManifoldData::from_total_class(2 * m, &c, false, &label)?;
            gate(&out, "s_k", GenusKind::Milnor(k), qi(2 * k as i64 + 1))?;
            gate(&out, "signature", GenusKind::L, Rational::one())?;
            Ok(out)
        }
        Builtin::Hpk(k) => {
            if k == 0 {
                return invalid("HP^0 is a point");
            }
            // p = (1+u)^{2k+2} (1+4u)^{-1}
            let c: Vec<Rational> = (0..=k)
                .map(|i| (0..=i).map(|j| binomial(2 * k as u64 + 2, j as u64) * qi(-4).pow((i - j) as i32)).sum())
                .collect();
            let out = ManifoldData::from_total_class(4 * k, &c, true, &label)?;
            gate(&out, "s_k", GenusKind::Milnor(k), qi(2 * k as i64 + 2) - qi(4).pow(k as i32))?;
            gate(&out, "Â", GenusKind::AHat, Rational::zero())?;
            gate(&out, "signature", GenusKind::L, qi(if k % 2 == 0 { 1 } else { 0 }))?;
            Ok(out)
        }
        Builtin::Cap2 => {
            // p₂ = 6u, p₄ = 39u², u of grade 2
            let out = ManifoldData::new(
                16,
                partitions_of(4)
                    .into_iter()
                    .map(|p| {
                        let v = match p.parts() {
                            [2, 2] => qi(36),
                            [4] => qi(39),
                            _ => Rational::zero(),
                        };
                        (p, v)
                    })
                    .collect(),
                true,
                true,
                label,
            )?;
            gate(&out, "Â", GenusKind::AHat, Rational::zero())?;
            gate(&out, "signature", GenusKind::L, Rational::one())?;
            Ok(out)
        }
        Builtin::K4 => {
            // orientation with Â = -2
            let out = ManifoldData::from_total_class(4, &[Rational::one(), qi(48)], true, &label)?;
            gate(&out, "Â", GenusKind::AHat, qi(-2))?;
            Ok(out)
        }
        Builtin::Milnor(i, j) => {
            if i < 2 || j < 2 || (i + j) % 2 == 0 {
                return invalid(format!("milnor({i},{j}) needs i,j >= 2 and i+j odd"));
            }
            let out = milnor_hypersurface(i, j, &label)?;
            let k = (i + j - 1) / 2;
            gate(&out, "s_k", GenusKind::Milnor(k), -binomial((i + j) as u64, i as u64))?;
            Ok(out)
        }
    }
}

/// Builtin expression: factors joined by `*`, summands by `#`, and a leading
/// `-` reverses orientation, e.g. `k4*k4*hpk:4` or `hpk:2#-cap2`.
pub fn manifold_expr(s: &str) -> Result<ManifoldData> {
    let mut acc: Option<ManifoldData> = None;
    for term in s.split('#') {
        let term = term.trim();
        let (neg, body) = match term.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, term),
        };
        let mut m: Option<ManifoldData> = None;
        for f in body.split('*') {
            let x = builtin_manifold(&f.parse()?)?;
            m = Some(match m {
                None => x,
                Some(y) => product(&y, &x)?,
            });
        }
        let mut m = m.ok_or_else(|| Error::Parse(format!("empty manifold expression {s:?}")))?;
        if neg {
            m = m.scaled(&qi(-1));
            m.label = format!("-{body}");
        }
        acc = Some(match acc {
            None => m,
            Some(a) => connected_sum(&a, &m)?,
        });
    }
    acc.ok_or_else(|| Error::Parse(format!("empty manifold expression {s:?}")))
}

/// Truncated polynomial in `a`, `b` with `a^{i+1} = b^{j+1} = 0`.
#[derive(Clone)]
struct Bivariate {
    i: usize,
    j: usize,
    c: Vec<Vec<Rational>>,
}

impl Bivariate {
    fn zero(i: usize, j: usize) -> Bivariate {
        Bivariate { i, j, c: vec![vec![Rational::zero(); j + 1]; i + 1] }
    }

    fn one(i: usize, j: usize) -> Bivariate {
        let mut o = Bivariate::zero(i, j);
        o.c[0][0] = Rational::one();
        o
    }

    fn mul(&self, o: &Bivariate) -> Bivariate {
        let mut r = Bivariate::zero(self.i, self.j);
        for (a1, row) in self.c.iter().enumerate() {
            for (b1, x) in row.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                for a2 in 0..=self.i - a1 {
                    for b2 in 0..=self.j - b1 {
                        if !o.c[a2][b2].is_zero() {
                            r.c[a1 + a2][b1 + b2] += x * &o.c[a2][b2];
                        }
                    }
                }
            }
        }
        r
    }

    /// Part of total degree `d`.
    fn homogeneous(&self, d: usize) -> Bivariate {
        let mut r = Bivariate::zero(self.i, self.j);
        for a in 0..=self.i.min(d) {
            if d - a <= self.j {
                r.c[a][d - a] = self.c[a][d - a].clone();
            }
        }
        r
    }
}

fn milnor_hypersurface(i: u32, j: u32, label: &str) -> Result<ManifoldData> {
    let (iu, ju) = (i as usize, j as usize);
    let k = (i + j - 1) / 2;
    let one = Bivariate::one(iu, ju);
    let mut a2 = Bivariate::zero(iu, ju);
    a2.c[2.min(iu)][0] = Rational::one();
    let mut b2 = Bivariate::zero(iu, ju);
    b2.c[0][2.min(ju)] = Rational::one();
    let mut h = Bivariate::zero(iu, ju);
    h.c[1][0] = Rational::one();
    h.c[0][1] = Rational::one();
    let add = |x: &Bivariate, y: &Bivariate| {
        let mut r = x.clone();
        for (ra, rb) in r.c.iter_mut().zip(&y.c) {
            for (u, v) in ra.iter_mut().zip(rb) {
                *u += v;
            }
        }
        r
    };
    let pow = |x: &Bivariate, e: u32| (0..e).fold(one.clone(), |acc, _| acc.mul(x));
    // (1 + h²)^{-1} = Σ (-h²)^t
    let h2 = h.mul(&h);
    let mut inv = Bivariate::zero(iu, ju);
    let mut term = one.clone();
    for t in 0..=(iu + ju) / 2 {
        let sign = if t % 2 == 0 { Rational::one() } else { -Rational::one() };
        for (ra, rb) in inv.c.iter_mut().zip(&term.c) {
            for (u, v) in ra.iter_mut().zip(rb) {
                *u += &sign * v;
            }
        }
        term = term.mul(&h2);
    }
    let total = pow(&add(&one, &a2), i + 1).mul(&pow(&add(&one, &b2), j + 1)).mul(&inv);
    let classes: Vec<Bivariate> = (0..=k as usize).map(|l| total.homogeneous(2 * l)).collect();
    let pont = partitions_of(k)
        .into_iter()
        .map(|p| {
            let prod = p.parts().iter().fold(h.clone(), |acc, &l| acc.mul(&classes[l as usize]));
            (p, prod.c[iu][ju].clone())
        })
        .collect();
    ManifoldData::new(4 * k, pont, false, false, label)
}

/// Cartesian product; Pontryagin numbers by the Whitney formula.
pub fn product(m: &ManifoldData, n: &ManifoldData) -> Result<ManifoldData> {
    let (km, kn) = (m.k(), n.k());
    let mut pont = BTreeMap::new();
    for part in partitions_of(km + kn) {
        let mut acc = Rational::zero();
        whitney(part.parts(), &mut Vec::new(), &mut Vec::new(), km, m, n, &mut acc)?;
        pont.insert(part, acc);
    }
    ManifoldData::new(m.dim + n.dim, pont, m.spin && n.spin, m.p1_zero && n.p1_zero, format!("{}*{}", m.label, n.label))
}

fn whitney(
    rest: &[u32],
    left: &mut Vec<u32>,
    right: &mut Vec<u32>,
    km: u32,
    m: &ManifoldData,
    n: &ManifoldData,
    acc: &mut Rational,
) -> Result<()> {
    let lw: u32 = left.iter().sum();
    if lw > km {
        return Ok(());
    }
    let Some((&i, tail)) = rest.split_first() else {
        if lw == km {
            let a = m.get(&Partition::new(left.clone()))?;
            let b = n.get(&Partition::new(right.clone()))?;
            *acc += a * b;
        }
        return Ok(());
    };
    for s in 0..=i {
        if s > 0 {
            left.push(s);
        }
        if s < i {
            right.push(i - s);
        }
        whitney(tail, left, right, km, m, n, acc)?;
        if s > 0 {
            left.pop();
        }
        if s < i {
            right.pop();
        }
    }
    Ok(())
}

/// Adds Pontryagin numbers entrywise; a modeling choice for cobordism sums.
pub fn connected_sum(m: &ManifoldData, n: &ManifoldData) -> Result<ManifoldData> {
    if m.dim != n.dim {
        return invalid(format!("connected sum of dimensions {} and {}", m.dim, n.dim));
    }
    let mut pont = m.pont.clone();
    for (p, v) in &n.pont {
        *pont.entry(p.clone()).or_default() += v;
    }
    ManifoldData::new(m.dim, pont, m.spin && n.spin, m.p1_zero && n.p1_zero, format!("{}#{}", m.label, n.label))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GenusValue {
    pub value: Rational,
    pub kind: GenusKind,
}

type SeqCache = Mutex<HashMap<(String, u32), Vec<PontPoly>>>;

/// Cached multiplicative sequence `K_0..=K_k`.
pub fn sequence(kind: GenusKind, k: u32) -> Result<Vec<PontPoly>> {
    static CACHE: OnceLock<SeqCache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let key = (kind.to_string(), k);
    if let Some(v) = cache.lock().unwrap().get(&key) {
        return Ok(v.clone());
    }
    let v = multiplicative_sequence(&genus_series(kind, k as usize), k)?;
    cache.lock().unwrap().insert(key, v.clone());
    Ok(v)
}

/// Total class `1 + K_1 + … + K_k`.
pub fn total_genus_class(kind: GenusKind, k: u32) -> Result<PontPoly> {
    Ok(sequence(kind, k)?.iter().fold(PontPoly::zero(k), |a, b| a.add(b)))
}

pub fn genus(m: &ManifoldData, kind: GenusKind) -> Result<GenusValue> {
    let k = m.k();
    let value = m.pair(&sequence(kind, k)?[k as usize])?;
    Ok(GenusValue { value, kind })
}

fn rep_size(rep: &RepKind, n: u64) -> u128 {
    let b = |a: u64, c: u64| crate::rational::binomial_big(a, c).try_into().unwrap_or(u128::MAX);
    match rep {
        RepKind::Defining => n as u128,
        RepKind::Wedge(p) => b(n, *p as u64),
        RepKind::Sym(p) => b(n + *p as u64 - 1, *p as u64),
        RepKind::Sym0 => b(n + 1, 2) - 1,
        RepKind::Spinor => 1u128 << (n / 2).min(127),
        RepKind::SpinorPlus | RepKind::SpinorMinus => 1u128 << (n / 2 - 1).min(127),
        RepKind::SpinorTensor(r) => (1u128 << (n / 2).min(64)).saturating_mul(rep_size(r, n)),
    }
}

/// `ch(E_ℂ)` of the bundle associated with `rep` over a `4k`-manifold,
/// through degree `4k`, from the weight multiset: the coefficient of the
/// monomial symmetric function `m_μ(x²)` is `Σ_w Π w_i^{2μ_i}/(2μ_i)!`.
pub fn ch_bundle(rep: &RepKind, k: u32) -> Result<PontPoly> {
    if k == 0 {
        return invalid("ch_bundle needs k >= 1");
    }
    let m = 2 * k as usize;
    let needed = rep_size(rep, 2 * m as u64);
    if needed > CH_WEIGHT_BUDGET {
        return Err(Error::Budget { what: format!("weights of {rep}"), needed, budget: CH_WEIGHT_BUDGET });
    }
    let ty = LieType::new(LieFamily::D, m.max(2))?;
    let weights = rep_weights(rep, ty)?;
    let mut coeffs = BTreeMap::new();
    for d in 0..=k {
        for mu in partitions_of(d) {
            let parts = mu.parts();
            let c: Rational = weights
                .iter()
                .map(|w| {
                    parts
                        .iter()
                        .zip(&w.coeffs)
                        .map(|(&e, x)| x.pow(2 * e as i32) / factorial(2 * e as u64))
                        .product::<Rational>()
                })
                .sum();
            if !c.is_zero() {
                coeffs.insert(mu, c);
            }
        }
    }
    monomial_to_elementary(&coeffs, m, k)
}

/// `ψ^s`: scales the grade-`d` part by `s^{2d}`.
pub fn adams(f: &PowerSumPoly, s: i64) -> PowerSumPoly {
    let terms: Vec<(Partition, Rational)> =
        f.terms().map(|(p, c)| (p.clone(), c * qi(s).pow(2 * p.weight() as i32))).collect();
    PowerSumPoly::from_terms(terms, f.grade_bound()).expect("grades preserved")
}

/// `ch(TM_ℂ)` of a `4k`-manifold in power sums of the `x_j²`.
pub fn ch_tangent_powersums(k: u32) -> PowerSumPoly {
    let mut f = PowerSumPoly::constant(qi(4 * k as i64), k);
    for i in 1..=k {
        let g = PowerSumPoly::generator(i, k).unwrap();
        f = f.add(&g.scale(&(qi(2) / factorial(2 * i as u64))));
    }
    f
}

/// `ch(Λ^p E)`, `p = 0..=pmax`, by `p·Λ^p = Σ_j (-1)^{j-1} ψ^j(E) Λ^{p-j}`;
/// with `sym` the signs are dropped and `Sym^p` results.
pub fn lambda_ring_powers(e: &PowerSumPoly, pmax: u32, sym: bool) -> Vec<PowerSumPoly> {
    let k = e.grade_bound();
    let mut out = vec![PowerSumPoly::one(k)];
    for p in 1..=pmax {
        let mut acc = PowerSumPoly::zero(k);
        for j in 1..=p {
            let t = adams(e, j as i64).mul(&out[(p - j) as usize]);
            acc = if sym || j % 2 == 1 { acc.add(&t) } else { acc.sub(&t) };
        }
        out.push(acc.scale(&Rational::new(1, p as i64)));
    }
    out
}

/// `ch(E_ℂ)` through λ-ring operations on `ch(TM_ℂ)`; an independent route
/// to [`ch_bundle`] for tensor representations.
pub fn ch_bundle_adams(rep: &RepKind, k: u32) -> Result<PontPoly> {
    let t = ch_tangent_powersums(k);
    let f = match rep {
        RepKind::Defining => t,
        RepKind::Wedge(p) => lambda_ring_powers(&t, *p, false).pop().unwrap(),
        RepKind::Sym(p) => lambda_ring_powers(&t, *p, true).pop().unwrap(),
        RepKind::Sym0 => lambda_ring_powers(&t, 2, true).pop().unwrap().sub(&PowerSumPoly::one(k)),
        other => return Err(Error::Unsupported(format!("λ-ring route for {other}"))),
    };
    powersums_to_elementary(&f)
}

/// `⟨Â(TM)·class, [M]⟩`.
pub fn twisted_a_hat_class(m: &ManifoldData, class: &PontPoly) -> Result<Rational> {
    let k = m.k();
    m.pair(&total_genus_class(GenusKind::AHat, k)?.mul(&class.with_bound(k)))
}

/// `Â(M, E_ℂ)` for the bundle associated with `rep`.
pub fn twisted_a_hat(m: &ManifoldData, rep: &RepKind) -> Result<Rational> {
    twisted_a_hat_class(m, &ch_bundle(rep, m.k())?)
}

/// Indices `i` for which a positivity hypothesis forces `p_i = 0`: those with
/// `4i` in `[1, n-⌈r⌉] ∪ [⌈r⌉, n-1]`.
pub fn betti_forced_zero_pontryagin(n: u32, r: &Rational) -> BTreeSet<u32> {
    let c = r.ceil();
    let c: i64 = c.try_into().unwrap_or(i64::MAX);
    let n64 = n as i64;
    (1..=n / 4)
        .filter(|&i| {
            let d = 4 * i as i64;
            (d >= 1 && d <= n64 - c) || (d >= c && d < n64)
        })
        .collect()
}

/// Complement of [`betti_forced_zero_pontryagin`] in `1..=k`.
pub fn surviving_pontryagin(n: u32, r: &Rational) -> Vec<u32> {
    let dead = betti_forced_zero_pontryagin(n, r);
    (1..=n / 4).filter(|i| !dead.contains(i)).collect()
}

/// A twisting bundle whose Â-genus is known to vanish.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum Twist {
    /// Untwisted: `Â(M)`.
    Trivial,
    Rep(RepKind),
}

impl fmt::Display for Twist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Twist::Trivial => write!(f, "Â(M)"),
            Twist::Rep(r) => write!(f, "Â(M,{r})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SystemRow {
    pub twist: Twist,
    pub coeffs: Vec<Rational>,
}

/// Parity-dependent Bernoulli condition for the two-unknown families.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BernoulliCondition {
    pub ell: u32,
    pub odd: bool,
    pub value: Rational,
    pub holds: bool,
}

impl BernoulliCondition {
    /// Even `k = 2ℓ`: `B_{2ℓ} - B_{4ℓ}`; odd `k = 2ℓ+1`: the displayed
    /// cubic combination. Also requires `B_{2ℓ} ≠ 0`, which always holds.
    pub fn for_k(k: u32) -> BernoulliCondition {
        let odd = k % 2 == 1;
        let ell = k / 2;
        let b = bernoulli_numbers(4 * ell as usize + 2);
        let l = ell as usize;
        let value = if odd {
            let (b1, b2, b3) = (&b[2 * l], &b[2 * l + 2], &b[4 * l + 2]);
            -qi(4 * ell as i64 + 2) * b1 * b2 + qi(2 * ell as i64 + 2) * b1 * b3 + qi(2 * ell as i64) * b2 * b3
        } else {
            &b[2 * l] - &b[4 * l]
        };
        let holds = !value.is_zero() && !b[2 * l].is_zero();
        BernoulliCondition { ell, odd, value, holds }
    }
}

/// A homogeneous linear system on the surviving Pontryagin numbers.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VanishingSystem {
    pub k: u32,
    pub r: Rational,
    pub survivors: Vec<u32>,
    pub unknowns: Vec<Partition>,
    pub rows: Vec<SystemRow>,
    pub rank: usize,
    pub determinant: Option<Rational>,
    pub nondegenerate: bool,
    pub bernoulli: Option<BernoulliCondition>,
}

/// Which hypothesis set generated a system.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SystemPath {
    /// `k = 2`, Einstein, `r = 5`.
    EinsteinEight,
    /// `k = 3`, `r = 8`, `Â` only.
    Twelve,
    /// Even/odd families with `Â(M) = Â(M,TM_ℂ) = 0`.
    Family,
    /// `k ∈ {4,5,7}` with `Â(M,Λ²TM_ℂ) = 0`.
    WedgeTwist,
}

/// Builds the system for the given survivors and twists.
pub fn linear_system(k: u32, r: &Rational, twists: &[Twist]) -> Result<VanishingSystem> {
    let survivors = surviving_pontryagin(4 * k, r);
    let unknowns = partitions_with_parts(k, &survivors);
    let ahat = total_genus_class(GenusKind::AHat, k)?;
    let mut rows = Vec::new();
    for t in twists {
        let class = match t {
            Twist::Trivial => ahat.clone(),
            Twist::Rep(rep) => ahat.mul(&ch_bundle(rep, k)?),
        };
        let top = class.homogeneous(k);
        rows.push(SystemRow { twist: t.clone(), coeffs: unknowns.iter().map(|p| top.coeff(p)).collect() });
    }
    let mat: Vec<Vec<Rational>> = rows.iter().map(|r| r.coeffs.clone()).collect();
    let rank = rank(&mat, unknowns.len());
    let determinant = (mat.len() == unknowns.len()).then(|| determinant(&mat));
    Ok(VanishingSystem {
        k,
        r: r.clone(),
        nondegenerate: rank == unknowns.len(),
        survivors,
        unknowns,
        rows,
        rank,
        determinant,
        bernoulli: None,
    })
}

/// Positivity index and twists used on each path.
pub fn path_data(k: u32, path: SystemPath) -> Result<(Rational, Vec<Twist>)> {
    let tm = Twist::Rep(RepKind::Defining);
    Ok(match path {
        SystemPath::EinsteinEight if k == 2 => (qi(5), vec![Twist::Trivial, tm]),
        SystemPath::Twelve if k == 3 => (qi(8), vec![Twist::Trivial]),
        SystemPath::Family if k >= 4 => {
            let r = if k.is_multiple_of(2) { 2 * k + 4 } else { 2 * k + 6 };
            (qi(r as i64), vec![Twist::Trivial, tm])
        }
        SystemPath::WedgeTwist if matches!(k, 4 | 5 | 7) => {
            (pw_spinor_wedge(2, 4 * k as u64), vec![Twist::Trivial, Twist::Rep(RepKind::Wedge(2))])
        }
        _ => return invalid(format!("no {path:?} system for k = {k}")),
    })
}

/// The system the cobordism argument uses in dimension `4k`.
pub fn vanishing_system(k: u32) -> Result<VanishingSystem> {
    let path = match k {
        2 => SystemPath::EinsteinEight,
        3 => SystemPath::Twelve,
        4 | 5 | 7 => SystemPath::WedgeTwist,
        k if k >= 6 => SystemPath::Family,
        _ => return invalid(format!("no vanishing system for k = {k}")),
    };
    system_on_path(k, path)
}

pub fn system_on_path(k: u32, path: SystemPath) -> Result<VanishingSystem> {
    let (r, twists) = path_data(k, path)?;
    let mut s = linear_system(k, &r, &twists)?;
    if path == SystemPath::Family {
        s.bernoulli = Some(BernoulliCondition::for_k(k));
    }
    Ok(s)
}

/// Row echelon rank over the rationals.
pub(crate) fn rank(rows: &[Vec<Rational>], ncols: usize) -> usize {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let mut r = 0;
    for c in 0..ncols {
        let Some(piv) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, piv);
        for i in r + 1..m.len() {
            if !m[i][c].is_zero() {
                let f = &m[i][c] / &m[r][c];
                for j in c..ncols {
                    let t = &f * &m[r][j];
                    m[i][j] -= t;
                }
            }
        }
        r += 1;
    }
    r
}

pub(crate) fn determinant(rows: &[Vec<Rational>]) -> Rational {
    let n = rows.len();
    let mut m = rows.to_vec();
    let mut det = Rational::one();
    for c in 0..n {
        let Some(piv) = (c..n).find(|&i| !m[i][c].is_zero()) else { return Rational::zero() };
        if piv != c {
            m.swap(c, piv);
            det = -det;
        }
        det *= &m[c][c];
        for i in c + 1..n {
            let f = &m[i][c] / &m[c][c];
            for j in c..n {
                let t = &f * &m[c][j];
                m[i][j] -= t;
            }
        }
    }
    det
}

/// Curvature hypotheses for [`certify_cobordism`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CobordismAssumptions {
    /// `Σ(r,R) > 0`.
    pub r: Rational,
    /// `scal/8·Id - Ric ⪰ 0`.
    pub ricci_pinch: bool,
    pub einstein: bool,
    /// `scal/8·Id - K(R,Λ²TM) ⪰ 0`.
    pub wedge2_pinch: bool,
}

impl CobordismAssumptions {
    pub fn new(r: Rational) -> CobordismAssumptions {
        CobordismAssumptions { r, ricci_pinch: false, einstein: false, wedge2_pinch: false }
    }
}

fn theorem_tag(k: u32, a: &CobordismAssumptions) -> &'static str {
    let r = &a.r;
    let pinch = a.ricci_pinch || (a.einstein && k >= 2);
    if *r <= qi(2 * k as i64) {
        "rational homology sphere"
    } else if k == 1 {
        "k=1"
    } else if k == 2 && pinch && *r <= qi(5) {
        "einstein 8-manifold"
    } else if k == 3 && *r <= qi(8) {
        "k=3"
    } else if matches!(k, 4 | 5 | 7) && a.wedge2_pinch && *r <= pw_spinor_wedge(2, 4 * k as u64) {
        "wedge twist"
    } else if k >= 6 && k.is_multiple_of(2) && pinch && *r <= qi(2 * k as i64 + 4) {
        "even family"
    } else if k >= 9 && k % 2 == 1 && pinch && *r <= qi(2 * k as i64 + 6) {
        "odd family"
    } else {
        "general"
    }
}

/// Decides whether the hypotheses force every Pontryagin number of a spin
/// `4k`-manifold to vanish, then compares with the manifold's own data:
/// `holds` when the data agrees, `fails` when it contradicts the forced
/// vanishing, `inconclusive` when the system is degenerate.
pub fn certify_cobordism(m: &ManifoldData, a: &CobordismAssumptions) -> Result<Certificate> {
    if !m.spin {
        return invalid(format!("{} is not spin", m.label));
    }
    let k = m.k();
    let n = m.dim;
    let tag = format!("cobordism {}", theorem_tag(k, a));
    if !a.r.is_positive() || a.r > qi(n as i64 - 1) {
        return Ok(Certificate::inconclusive(
            tag,
            format!("r = {} outside (0, {}]; no Betti vanishing applies", a.r, n - 1),
            vec![],
        ));
    }
    let mut evidence = vec![Evidence::new("spin", true, "Â(M) = 0 since Σ(r,R) > 0 forces scal > 0")];
    let mut twists = vec![Twist::Trivial];
    let pinch = a.ricci_pinch || (a.einstein && n >= 8);
    let r1 = r_p(n as u64, 1);
    if pinch && a.r <= r1 {
        twists.push(Twist::Rep(RepKind::Defining));
        evidence.push(Evidence::new("C_1 > 0", true, format!("r = {} <= r_1 = {r1} with Ricci pinching", a.r)));
    }
    let rw = pw_spinor_wedge(2, n as u64);
    if a.wedge2_pinch && a.r <= rw {
        twists.push(Twist::Rep(RepKind::Wedge(2)));
        evidence.push(Evidence::new("Λ² twist", true, format!("r = {} <= {rw} with K(R,Λ²) pinching", a.r)));
    }
    let sys = linear_system(k, &a.r, &twists)?;
    let dead: Vec<String> = betti_forced_zero_pontryagin(n, &a.r).iter().map(|i| format!("p_{i}")).collect();
    evidence.push(Evidence::new(
        "Betti vanishing",
        true,
        format!("surviving classes {:?}; forced zero: {}", sys.survivors, if dead.is_empty() { "none".into() } else { dead.join(", ") }),
    ));
    for row in &sys.rows {
        let terms: Vec<String> = sys.unknowns.iter().zip(&row.coeffs).map(|(p, c)| format!("({c})·p{p}")).collect();
        evidence.push(Evidence::new(format!("{} = 0", row.twist), true, terms.join(" + ")));
    }
    if !sys.nondegenerate {
        let reason = format!(
            "system of rank {} on {} unknowns {:?} has nontrivial solutions",
            sys.rank,
            sys.unknowns.len(),
            sys.unknowns.iter().map(|p| p.to_string()).collect::<Vec<_>>()
        );
        evidence.push(Evidence::new("nondegenerate", false, reason.clone()));
        return Ok(Certificate::inconclusive(tag, reason, evidence));
    }
    evidence.push(Evidence::new("nondegenerate", true, format!("rank {} = number of unknowns", sys.rank)));
    let mut conclusions: Vec<String> = partitions_of(k).iter().map(|p| format!("p{p} = 0")).collect();
    conclusions.push("rationally null-cobordant".into());
    if k == 2 {
        conclusions.push("null-cobordant: the spin cobordism group in dimension 8 is torsion-free".into());
    }
    let mut bad = Vec::new();
    for p in partitions_of(k) {
        match m.pont.get(&p) {
            Some(v) if !v.is_zero() => bad.push(format!("p{p} = {v}")),
            Some(_) => {}
            None => bad.push(format!("p{p} missing")),
        }
    }
    evidence.push(Evidence::new(
        "data agrees",
        bad.is_empty(),
        if bad.is_empty() { "all Pontryagin numbers vanish".to_string() } else { bad.join(", ") },
    ));
    let mut cert = Certificate::from_evidence(tag, evidence, Backend::Exact).with_conclusions(conclusions);
    if cert.verdict == Verdict::Fails {
        cert = cert.failing(format!("{} cannot satisfy the hypotheses: {}", m.label, bad.join(", ")));
    }
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn b(s: &str) -> ManifoldData {
        builtin_manifold(&s.parse().unwrap()).unwrap()
    }

    fn pp(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn builtin_values() {
        let h = b("hpk:2");
        assert_eq!(h.get(&pp("(1,1)")).unwrap(), qi(4));
        assert_eq!(h.get(&pp("(2)")).unwrap(), qi(7));
        assert_eq!(genus(&h, GenusKind::Milnor(2)).unwrap().value, qi(-10));
        let c = b("cap2");
        assert_eq!(genus(&c, GenusKind::AHat).unwrap().value, Rational::zero());
        assert_eq!(genus(&b("k4"), GenusKind::AHat).unwrap().value, qi(-2));
        assert_eq!(genus(&b("cpm:4"), GenusKind::L).unwrap().value, qi(1));
        assert_eq!(genus(&b("cpm:4"), GenusKind::Milnor(2)).unwrap().value, qi(5));
        for s in ["milnor:2:3", "milnor:2:5", "milnor:3:4", "milnor:4:5"] {
            b(s);
        }
        assert!(builtin_manifold(&Builtin::Cpm(3)).is_err());
        assert!(builtin_manifold(&Builtin::Milnor(2, 4)).is_err());
    }

    #[test]
    fn s_numbers_of_projective_spaces() {
        for k in 1..=6u32 {
            let c = b(&format!("cpm:{}", 2 * k));
            assert_eq!(genus(&c, GenusKind::Milnor(k)).unwrap().value, qi(2 * k as i64 + 1));
            let h = b(&format!("hpk:{k}"));
            assert_eq!(genus(&h, GenusKind::Milnor(k)).unwrap().value, qi(2 * k as i64 + 2) - qi(4).pow(k as i32));
        }
    }

    #[test]
    fn products_and_sums() {
        let c2 = b("cpm:2");
        let p = product(&c2, &c2).unwrap();
        assert_eq!(genus(&p, GenusKind::Milnor(2)).unwrap().value, Rational::zero());
        assert_eq!(genus(&p, GenusKind::L).unwrap().value, qi(1));
        let h = b("hpk:2");
        let s = connected_sum(&h, &h).unwrap();
        for (part, v) in &s.pont {
            assert_eq!(*v, h.get(part).unwrap() * qi(2));
        }
        assert!(connected_sum(&h, &c2).is_err());
    }

    #[test]
    fn chern_characters() {
        let t = ch_bundle(&RepKind::Defining, 2).unwrap();
        let p1 = PontPoly::generator(1, 2).unwrap();
        let p2 = PontPoly::generator(2, 2).unwrap();
        let want = PontPoly::constant(qi(8), 2)
            .add(&p1)
            .add(&p1.mul(&p1).sub(&p2.scale(&qi(2))).scale(&q(1, 12)));
        assert_eq!(t, want);
        assert_eq!(ch_bundle(&RepKind::Wedge(0), 3).unwrap(), PontPoly::one(3));
        for k in 1..=4 {
            for rep in [RepKind::Defining, RepKind::Wedge(2), RepKind::Wedge(3), RepKind::Sym(2), RepKind::Sym0] {
                assert_eq!(ch_bundle(&rep, k).unwrap(), ch_bundle_adams(&rep, k).unwrap(), "{rep} k={k}");
            }
            let d = ch_bundle(&RepKind::Defining, k).unwrap();
            let sum = ch_bundle(&RepKind::Wedge(2), k).unwrap().add(&ch_bundle(&RepKind::Sym(2), k).unwrap());
            assert_eq!(sum, d.mul(&d));
        }
    }

    #[test]
    fn twisted_values() {
        assert_eq!(twisted_a_hat(&b("hpk:2"), &RepKind::Defining).unwrap(), qi(-1));
        assert_eq!(twisted_a_hat(&b("cap2"), &RepKind::Wedge(2)).unwrap(), qi(1));
        let k4 = b("k4");
        assert_eq!(twisted_a_hat(&k4, &RepKind::Wedge(0)).unwrap(), qi(-2));
        // spinor twist pairs to the signature
        let s = twisted_a_hat(&b("hpk:2"), &RepKind::Spinor).unwrap();
        assert_eq!(s, genus(&b("hpk:2"), GenusKind::L).unwrap().value);
    }

    #[test]
    fn betti_survivors() {
        assert_eq!(surviving_pontryagin(32, &qi(20)), vec![4, 8]);
        assert_eq!(surviving_pontryagin(44, &qi(28)), vec![5, 6, 11]);
        assert_eq!(surviving_pontryagin(16, &qi(10)), vec![2, 4]);
        assert_eq!(surviving_pontryagin(20, &q(171, 13)), vec![2, 3, 5]);
    }

    #[test]
    fn k4_system_matches() {
        let s = vanishing_system(4).unwrap();
        assert_eq!(s.unknowns, vec![pp("(4)"), pp("(2,2)")]);
        let d1 = qi(2).pow(11) * qi(81) * qi(25) * qi(7);
        let d2 = qi(256 * 3 * 5 * 7);
        assert_eq!(s.rows[0].coeffs.iter().map(|c| c * &d1).collect::<Vec<_>>(), vec![qi(-12), qi(13)]);
        assert_eq!(s.rows[1].coeffs.iter().map(|c| c * &d2).collect::<Vec<_>>(), vec![qi(596), qi(101)]);
        assert!(s.nondegenerate);
    }

    #[test]
    fn family_degeneracy_matches_bernoulli() {
        for k in 4..=13 {
            let s = system_on_path(k, SystemPath::Family).unwrap();
            let bc = s.bernoulli.clone().unwrap();
            assert_eq!(s.nondegenerate, bc.holds, "k={k}");
            assert_eq!(bc.holds, !matches!(k, 4 | 5 | 7), "k={k}");
        }
    }

    #[test]
    fn certificates() {
        let mut a = CobordismAssumptions::new(qi(5));
        a.einstein = true;
        let c = certify_cobordism(&b("hpk:2"), &a).unwrap();
        assert_eq!(c.verdict, Verdict::Fails);
        assert_eq!(c.theorem, "cobordism einstein 8-manifold");
        let zero = ManifoldData::new(12, partitions_of(3).into_iter().map(|p| (p, Rational::zero())).collect(), true, true, "z").unwrap();
        let c = certify_cobordism(&zero, &CobordismAssumptions::new(qi(8))).unwrap();
        assert_eq!(c.verdict, Verdict::Holds);
        assert!(c.conclusions.contains(&"p(3) = 0".to_string()));
        // no pinching at k = 6: degenerate
        let z6 = ManifoldData::new(24, partitions_of(6).into_iter().map(|p| (p, Rational::zero())).collect(), true, true, "z").unwrap();
        let c = certify_cobordism(&z6, &CobordismAssumptions::new(qi(16))).unwrap();
        assert_eq!(c.verdict, Verdict::Inconclusive);
        assert!(certify_cobordism(&b("cpm:4"), &a).is_err());
    }

    #[test]
    fn expressions() {
        let m = manifold_expr("k4*k4*hpk:4").unwrap();
        assert_eq!(m.dim, 24);
        assert_eq!(genus(&m, GenusKind::AHat).unwrap().value, Rational::zero());
        let z = manifold_expr("hpk:2#-hpk:2").unwrap();
        assert!(z.pont.values().all(Rational::is_zero));
        assert!(manifold_expr("hpk:2#k4").is_err());
        assert!(manifold_expr("torus").is_err());
    }

    #[test]
    fn json_round_trip() {
        let h = b("hpk:2");
        let s = serde_json::to_string(&h).unwrap();
        let back: ManifoldData = serde_json::from_str(&s).unwrap();
        assert_eq!(back, h);
        let bad = r#"{"dim":8,"pont":{"(3)":"1"},"spin":true}"#;
        assert!(serde_json::from_str::<ManifoldData>(bad).is_err());
    }
}
