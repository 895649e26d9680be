//! Partitions, Bernoulli numbers, even genus series, multiplicative sequences
//! and polynomials in Pontryagin classes.
//!
//! Pontryagin classes are the elementary symmetric functions `p_i = e_i(t)` in
//! the squared formal roots `t_j = x_j^2`. A monomial `p_{i1}···p_{ir}` is
//! indexed by the partition `(i1,…,ir)`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::marker::PhantomData;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::{binomial, factorial, qi, Rational};

/// Integer partition with parts in non-increasing order and no zero parts.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Partition(Vec<u32>);

impl Partition {
    /// Sorts the parts and drops zeros.
    pub fn new(mut parts: Vec<u32>) -> Partition {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Partition {
        Partition(Vec::new())
    }

    pub fn single(i: u32) -> Partition {
        Partition::new(vec![i])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Sum of the parts.
    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn conjugate(&self) -> Partition {
        let top = self.0.first().copied().unwrap_or(0);
        Partition((1..=top).map(|i| self.0.iter().filter(|&&p| p >= i).count() as u32).collect())
    }

    /// Union of parts (product of the corresponding monomials).
    pub fn join(&self, o: &Partition) -> Partition {
        let mut v = self.0.clone();
        v.extend_from_slice(&o.0);
        Partition::new(v)
    }

    pub fn uses_only(&self, allowed: &[u32]) -> bool {
        self.0.iter().all(|p| allowed.contains(p))
    }

    /// Dominance order `self ⊴ o` for partitions of equal weight.
    pub fn dominated_by(&self, o: &Partition) -> bool {
        let (mut a, mut b) = (0u32, 0u32);
        for i in 0..self.len().max(o.len()) {
            a += self.0.get(i).copied().unwrap_or(0);
            b += o.0.get(i).copied().unwrap_or(0);
            if a > b {
                return false;
            }
        }
        true
    }
}

impl Ord for Partition {
    /// Weight ascending, then reverse lexicographic.
    fn cmp(&self, o: &Self) -> Ordering {
        self.weight().cmp(&o.weight()).then_with(|| o.0.cmp(&self.0))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Parses `(2,2)`, `2,2` or `()`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let inner = t.strip_prefix('(').and_then(|x| x.strip_suffix(')')).unwrap_or(t);
        if inner.trim().is_empty() {
            return Ok(Partition::empty());
        }
        let parts = inner
            .split(',')
            .map(|p| p.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad partition {s:?}"))))
            .collect::<Result<Vec<_>>>()?;
        if parts.contains(&0) {
            return Err(Error::Parse(format!("zero part in partition {s:?}")));
        }
        Ok(Partition::new(parts))
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(D::Error::custom)
    }
}

/// Partitions of `k` in reverse-lexicographic order, `(k)` first.
pub fn partitions_of(k: u32) -> Vec<Partition> {
    fn rec(rem: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for p in (1..=rem.min(max)).rev() {
            cur.push(p);
            rec(rem - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(k, k, &mut Vec::new(), &mut out);
    out
}

/// Partitions of `k` whose parts all lie in `allowed`.
pub fn partitions_with_parts(k: u32, allowed: &[u32]) -> Vec<Partition> {
    partitions_of(k).into_iter().filter(|p| p.uses_only(allowed)).collect()
}

/// `B_0..=B_n` with the convention `B_1 = -1/2`.
pub fn bernoulli_numbers(n: usize) -> Vec<Rational> {
    let mut b = vec![Rational::one()];
    for m in 1..=n {
        let s: Rational = (0..m).map(|j| binomial((m + 1) as u64, j as u64) * &b[j]).sum();
        b.push(-s / qi(m as i64 + 1));
    }
    b
}

pub fn bernoulli(n: usize) -> Rational {
    bernoulli_numbers(n).pop().unwrap()
}

/// Even power series `Σ a_i x^{2i}`; `coeffs[i] = a_i`, `a_0 = 1`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EvenSeries {
    pub coeffs: Vec<Rational>,
}

impl EvenSeries {
    pub fn new(coeffs: Vec<Rational>) -> Result<EvenSeries> {
        if coeffs.first().is_none_or(|c| !c.is_one()) {
            return Err(Error::InvalidArgument("even series must start with 1".into()));
        }
        Ok(EvenSeries { coeffs })
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `x^{2i}`, zero past the stored order.
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }
}

/// Genus selector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GenusKind {
    /// `(x/2)/sinh(x/2)`
    AHat,
    /// `x/tanh x`
    L,
    /// `1 + x^{2k}`, giving the s-number in degree `k`.
    Milnor(u32),
}

impl fmt::Display for GenusKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenusKind::AHat => write!(f, "ahat"),
            GenusKind::L => write!(f, "L"),
            GenusKind::Milnor(k) => write!(f, "s{k}"),
        }
    }
}

pub fn genus_series(kind: GenusKind, order: usize) -> EvenSeries {
    let coeffs = match kind {
        GenusKind::Milnor(k) => {
            let mut c = vec![Rational::zero(); order + 1];
            c[0] = Rational::one();
            if (k as usize) <= order && k > 0 {
                c[k as usize] += Rational::one();
            }
            c
        }
        GenusKind::AHat | GenusKind::L => {
            let b = bernoulli_numbers(2 * order);
            (0..=order)
                .map(|i| {
                    let four_i = qi(4).pow(i as i32);
                    let f = factorial(2 * i as u64);
                    if kind == GenusKind::L {
                        &four_i * &b[2 * i] / f
                    } else {
                        (qi(2) - &four_i) * &b[2 * i] / (four_i * f)
                    }
                })
                .collect()
        }
    };
    EvenSeries { coeffs }
}

/// Basis marker: monomials read as products of Pontryagin classes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PontBasis;

/// Basis marker: monomials read as products of power sums `P_i = Σ t_j^i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PowerSumBasis;

/// Polynomial in graded generators `g_1, g_2, …` (`g_i` of grade `i`), indexed
/// by partitions and truncated above `grade_bound`.
pub struct MonomialPoly<B> {
    terms: BTreeMap<Partition, Rational>,
    grade_bound: u32,
    _basis: PhantomData<B>,
}

impl<B> Clone for MonomialPoly<B> {
    fn clone(&self) -> Self {
        MonomialPoly { terms: self.terms.clone(), grade_bound: self.grade_bound, _basis: PhantomData }
    }
}

/// Equality ignores the grade bound.
impl<B> PartialEq for MonomialPoly<B> {
    fn eq(&self, o: &Self) -> bool {
        self.terms == o.terms
    }
}

/// Polynomial in Pontryagin classes.
pub type PontPoly = MonomialPoly<PontBasis>;
/// Polynomial in power sums of the squared roots.
pub type PowerSumPoly = MonomialPoly<PowerSumBasis>;

impl<B> MonomialPoly<B> {
    pub fn zero(grade_bound: u32) -> Self {
        MonomialPoly { terms: BTreeMap::new(), grade_bound, _basis: PhantomData }
    }

    pub fn one(grade_bound: u32) -> Self {
        Self::constant(Rational::one(), grade_bound)
    }

    pub fn constant(c: Rational, grade_bound: u32) -> Self {
        let mut p = Self::zero(grade_bound);
        p.add_term(Partition::empty(), c);
        p
    }

    /// `c · g_λ`; errors when `|λ|` exceeds the bound.
    pub fn monomial(part: Partition, c: Rational, grade_bound: u32) -> Result<Self> {
        if part.weight() > grade_bound {
            return Err(Error::DegreeOverflow { grade: part.weight(), bound: grade_bound });
        }
        let mut p = Self::zero(grade_bound);
        p.add_term(part, c);
        Ok(p)
    }

    /// Generator `g_i`.
    pub fn generator(i: u32, grade_bound: u32) -> Result<Self> {
        Self::monomial(Partition::single(i), Rational::one(), grade_bound)
    }

    /// Builds from a term map, rejecting terms above the bound.
    pub fn from_terms(terms: impl IntoIterator<Item = (Partition, Rational)>, grade_bound: u32) -> Result<Self> {
        let mut p = Self::zero(grade_bound);
        for (part, c) in terms {
            if part.weight() > grade_bound {
                return Err(Error::DegreeOverflow { grade: part.weight(), bound: grade_bound });
            }
            p.add_term(part, c);
        }
        Ok(p)
    }

    pub fn grade_bound(&self) -> u32 {
        self.grade_bound
    }

    pub fn with_bound(&self, grade_bound: u32) -> Self {
        let mut p = Self::zero(grade_bound);
        for (k, v) in &self.terms {
            if k.weight() <= grade_bound {
                p.add_term(k.clone(), v.clone());
            }
        }
        p
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, part: &Partition) -> Rational {
        self.terms.get(part).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_grade(&self) -> Option<u32> {
        self.terms.keys().map(Partition::weight).max()
    }

    pub fn add_term(&mut self, part: Partition, c: Rational) {
        if c.is_zero() || part.weight() > self.grade_bound {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(part) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        r.grade_bound = self.grade_bound.min(o.grade_bound);
        r.terms.retain(|k, _| k.weight() <= r.grade_bound);
        for (k, v) in &o.terms {
            r.add_term(k.clone(), v.clone());
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut r = Self::zero(self.grade_bound);
        if !c.is_zero() {
            for (k, v) in &self.terms {
                r.terms.insert(k.clone(), v * c);
            }
        }
        r
    }

    /// Product truncated at the smaller grade bound.
    pub fn mul(&self, o: &Self) -> Self {
        let bound = self.grade_bound.min(o.grade_bound);
        let mut acc: BTreeMap<Partition, Rational> = BTreeMap::new();
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                if a.weight() + b.weight() <= bound {
                    *acc.entry(a.join(b)).or_default() += x * y;
                }
            }
        }
        acc.retain(|_, v| !v.is_zero());
        MonomialPoly { terms: acc, grade_bound: bound, _basis: PhantomData }
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(self.grade_bound), |acc, _| acc.mul(self))
    }

    /// Part of grade exactly `d`.
    pub fn homogeneous(&self, d: u32) -> Self {
        let mut r = Self::zero(self.grade_bound);
        for (k, v) in &self.terms {
            if k.weight() == d {
                r.terms.insert(k.clone(), v.clone());
            }
        }
        r
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&Partition::empty())
    }

    /// Substitutes rational values for the monomials of grade `d` and sums.
    /// Errors listing every required monomial absent from `values`.
    pub fn pair(&self, d: u32, values: &BTreeMap<Partition, Rational>) -> Result<Rational> {
        let mut missing = Vec::new();
        let mut s = Rational::zero();
        for (k, v) in &self.terms {
            if k.weight() != d {
                continue;
            }
            match values.get(k) {
                Some(x) => s += v * x,
                None => missing.push(k.to_string()),
            }
        }
        if missing.is_empty() {
            Ok(s)
        } else {
            Err(Error::MissingPontryagin(missing.join(" ")))
        }
    }

    fn fmt_with(&self, f: &mut fmt::Formatter<'_>, sym: &str) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, v)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if k.is_empty() {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}*{sym}{k}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for PontPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(f, "p")
    }
}

impl fmt::Debug for PontPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(f, "p")
    }
}

impl fmt::Display for PowerSumPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(f, "P")
    }
}

impl fmt::Debug for PowerSumPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(f, "P")
    }
}

impl<B> Serialize for MonomialPoly<B> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.terms.len()))?;
        for (k, v) in &self.terms {
            m.serialize_entry(&k.to_string(), &v.to_string())?;
        }
        m.end()
    }
}

impl<'de, B> Deserialize<'de> for MonomialPoly<B> {
    /// The grade bound becomes the largest grade present.
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = BTreeMap::<Partition, Rational>::deserialize(d)?;
        let bound = raw.keys().map(Partition::weight).max().unwrap_or(0);
        MonomialPoly::from_terms(raw, bound).map_err(D::Error::custom)
    }
}

/// Number of 0-1 matrices with row sums `rows` and column sums `cols`.
fn count_01(rows: &[u32], cols: &[u32], memo: &mut HashMap<(Vec<u32>, Vec<u32>), BigInt>) -> BigInt {
    let mut caps: Vec<u32> = rows.iter().copied().filter(|&r| r > 0).collect();
    caps.sort_unstable_by(|a, b| b.cmp(a));
    if cols.is_empty() {
        return if caps.is_empty() { BigInt::one() } else { BigInt::zero() };
    }
    if caps.iter().sum::<u32>() != cols.iter().sum::<u32>() {
        return BigInt::zero();
    }
    let key = (caps.clone(), cols.to_vec());
    if let Some(v) = memo.get(&key) {
        return v.clone();
    }
    // Group equal capacities: (value, multiplicity).
    let mut groups: Vec<(u32, u32)> = Vec::new();
    for &c in &caps {
        match groups.last_mut() {
            Some((v, n)) if *v == c => *n += 1,
            _ => groups.push((c, 1)),
        }
    }
    let mut total = BigInt::zero();
    let mut take = vec![0u32; groups.len()];
    #[allow(clippy::too_many_arguments)]
    fn distribute(
        g: usize,
        left: u32,
        groups: &[(u32, u32)],
        take: &mut Vec<u32>,
        cols: &[u32],
        memo: &mut HashMap<(Vec<u32>, Vec<u32>), BigInt>,
        total: &mut BigInt,
    ) {
        if g == groups.len() {
            if left != 0 {
                return;
            }
            let mut weight = BigInt::one();
            let mut next = Vec::new();
            for (i, &(v, n)) in groups.iter().enumerate() {
                weight *= crate::rational::binomial_big(n as u64, take[i] as u64);
                next.extend(std::iter::repeat_n(v - 1, take[i] as usize));
                next.extend(std::iter::repeat_n(v, (n - take[i]) as usize));
            }
            *total += weight * count_01(&next, &cols[1..], memo);
            return;
        }
        for t in 0..=groups[g].1.min(left) {
            take[g] = t;
            distribute(g + 1, left - t, groups, take, cols, memo, total);
        }
        take[g] = 0;
    }
    distribute(0, cols[0], &groups, &mut take, cols, memo, &mut total);
    memo.insert(key, total.clone());
    total
}

/// Expresses `Σ_λ c_λ m_λ(t_1..t_m)` (monomial symmetric functions in `m`
/// variables) in elementary symmetric functions, i.e. Pontryagin classes.
/// Monomials with more than `m` parts vanish in `m` variables.
pub fn monomial_to_elementary(
    coeffs: &BTreeMap<Partition, Rational>,
    nvars: usize,
    grade_bound: u32,
) -> Result<PontPoly> {
    let mut memo = HashMap::new();
    let mut rest: BTreeMap<Partition, Rational> =
        coeffs.iter().filter(|(k, v)| k.len() <= nvars && !v.is_zero()).map(|(k, v)| (k.clone(), v.clone())).collect();
    let mut out = PontPoly::zero(grade_bound);
    // Within a grade the BTreeMap order is reverse-lex, so the first key of the
    // top grade is lexicographically largest and hence dominance-maximal.
    while let Some(grade) = rest.keys().map(Partition::weight).max() {
        let lead = rest.keys().find(|k| k.weight() == grade).cloned().unwrap();
        let c = rest.remove(&lead).unwrap();
        if grade > grade_bound {
            return Err(Error::DegreeOverflow { grade, bound: grade_bound });
        }
        let conj = lead.conjugate();
        for mu in partitions_of(grade) {
            if mu == lead || mu.len() > nvars || !mu.dominated_by(&lead) {
                continue;
            }
            let a = count_01(conj.parts(), mu.parts(), &mut memo);
            if !a.is_zero() {
                let e = rest.entry(mu).or_default();
                *e -= &c * Rational::from(a);
            }
        }
        rest.retain(|_, v| !v.is_zero());
        out.add_term(conj, c);
    }
    Ok(out)
}

/// Multiplicative sequence `K_0..=K_k` of `q`, reduced in `nvars` variables.
/// Stable (independent of `nvars`) once `nvars ≥ k`.
pub fn multiplicative_sequence_in_vars(q: &EvenSeries, k: u32, nvars: usize) -> Result<Vec<PontPoly>> {
    (0..=k)
        .map(|i| {
            let coeffs: BTreeMap<Partition, Rational> = partitions_of(i)
                .into_iter()
                .filter(|l| l.len() <= nvars)
                .map(|l| {
                    let c: Rational = l.parts().iter().map(|&p| q.coeff(p as usize)).product();
                    (l, c)
                })
                .collect();
            monomial_to_elementary(&coeffs, nvars, k)
        })
        .collect()
}

/// Multiplicative sequence `K_0..=K_k`; `K_i` is homogeneous of grade `i`.
pub fn multiplicative_sequence(q: &EvenSeries, k: u32) -> Result<Vec<PontPoly>> {
    multiplicative_sequence_in_vars(q, k, k as usize)
}

/// `1 + K_1 + … + K_k` as one polynomial.
pub fn total_class(q: &EvenSeries, k: u32) -> Result<PontPoly> {
    Ok(multiplicative_sequence(q, k)?.iter().fold(PontPoly::zero(k), |a, b| a.add(b)))
}

/// Power sums `P_1..=P_k` in Pontryagin classes via Newton's identities.
pub fn newton_power_sums(k: u32) -> Vec<PontPoly> {
    let mut ps: Vec<PontPoly> = vec![PontPoly::zero(k)];
    for i in 1..=k {
        let sign = |j: u32| if j % 2 == 1 { Rational::one() } else { -Rational::one() };
        let mut pi = PontPoly::generator(i, k).unwrap().scale(&(sign(i) * qi(i as i64)));
        for j in 1..i {
            let pj = PontPoly::generator(j, k).unwrap();
            pi = pi.add(&pj.mul(&ps[(i - j) as usize]).scale(&sign(j)));
        }
        ps.push(pi);
    }
    ps
}

/// Rewrites a power-sum polynomial in Pontryagin classes.
pub fn powersums_to_elementary(f: &PowerSumPoly) -> Result<PontPoly> {
    let k = f.grade_bound();
    let ps = newton_power_sums(k);
    let mut out = PontPoly::zero(k);
    for (part, c) in f.terms() {
        let mono = part.parts().iter().fold(PontPoly::one(k), |acc, &i| acc.mul(&ps[i as usize]));
        out = out.add(&mono.scale(c));
    }
    Ok(out)
}

/// Rewrites a Pontryagin polynomial in power sums (inverse of
/// [`powersums_to_elementary`]).
pub fn elementary_to_powersums(f: &PontPoly) -> PowerSumPoly {
    let k = f.grade_bound();
    // e_i = (1/i) Σ_{j=1}^{i} (-1)^{j-1} e_{i-j} P_j
    let mut es: Vec<PowerSumPoly> = vec![PowerSumPoly::one(k)];
    for i in 1..=k {
        let mut acc = PowerSumPoly::zero(k);
        for j in 1..=i {
            let pj = PowerSumPoly::generator(j, k).unwrap();
            let term = es[(i - j) as usize].mul(&pj);
            acc = if j % 2 == 1 { acc.add(&term) } else { acc.sub(&term) };
        }
        es.push(acc.scale(&Rational::new(1, i as i64)));
    }
    let mut out = PowerSumPoly::zero(k);
    for (part, c) in f.terms() {
        let mono = part.parts().iter().fold(PowerSumPoly::one(k), |acc, &i| acc.mul(&es[i as usize]));
        out = out.add(&mono.scale(c));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;
    use proptest::prelude::*;

    fn pp(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn partitions_reverse_lex() {
        let p: Vec<String> = partitions_of(4).iter().map(|x| x.to_string()).collect();
        assert_eq!(p, ["(4)", "(3,1)", "(2,2)", "(2,1,1)", "(1,1,1,1)"]);
        assert_eq!(partitions_of(0), vec![Partition::empty()]);
        // p(n) for n = 0..=12
        let counts: Vec<usize> = (0..=12).map(|n| partitions_of(n).len()).collect();
        assert_eq!(counts, [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77]);
    }

    #[test]
    fn conjugate_involution() {
        for n in 0..=9 {
            for p in partitions_of(n) {
                assert_eq!(p.conjugate().conjugate(), p);
                assert_eq!(p.conjugate().weight(), n);
            }
        }
        assert_eq!(pp("(3,1)").conjugate(), pp("(2,1,1)"));
    }

    #[test]
    fn bernoulli_values() {
        let b = bernoulli_numbers(12);
        assert_eq!(b[1], q(-1, 2));
        assert_eq!(b[2], q(1, 6));
        assert_eq!(b[3], Rational::zero());
        assert_eq!(b[4], q(-1, 30));
        assert_eq!(b[6], q(1, 42));
        assert_eq!(b[8], q(-1, 30));
        assert_eq!(b[10], q(5, 66));
        assert_eq!(b[12], q(-691, 2730));
    }

    /// Akiyama–Tanigawa algorithm; yields B_1 = +1/2.
    fn akiyama_tanigawa(n: usize) -> Rational {
        let mut a: Vec<Rational> = vec![Rational::zero(); n + 1];
        for m in 0..=n {
            a[m] = Rational::new(1, m as i64 + 1);
            for j in (1..=m).rev() {
                a[j - 1] = qi(j as i64) * (&a[j - 1] - &a[j]);
            }
        }
        a[0].clone()
    }

    #[test]
    fn bernoulli_oracle() {
        let b = bernoulli_numbers(30);
        for n in 2..=30 {
            assert_eq!(b[n], akiyama_tanigawa(n), "B_{n}");
        }
    }

    /// Coefficients of `x^{2i}` in `(x/2)/sinh(x/2)` by series inversion.
    fn ahat_by_inversion(order: usize) -> Vec<Rational> {
        // sinh(x/2)/(x/2) = Σ (x/2)^{2i}/(2i+1)!
        let s: Vec<Rational> =
            (0..=order).map(|i| Rational::one() / (qi(4).pow(i as i32) * factorial(2 * i as u64 + 1))).collect();
        invert(&s)
    }

    fn invert(s: &[Rational]) -> Vec<Rational> {
        let mut inv = vec![Rational::one()];
        for n in 1..s.len() {
            let c: Rational = (1..=n).map(|j| &s[j] * &inv[n - j]).sum();
            inv.push(-c);
        }
        inv
    }

    #[test]
    fn series_match_oracles() {
        assert_eq!(genus_series(GenusKind::AHat, 8).coeffs, ahat_by_inversion(8));
        // x/tanh x = (x cosh x)/sinh x; cosh x / (sinh x / x)
        let sh: Vec<Rational> = (0..=8).map(|i| Rational::one() / factorial(2 * i as u64 + 1)).collect();
        let ch: Vec<Rational> = (0..=8).map(|i| Rational::one() / factorial(2 * i as u64)).collect();
        let inv = invert(&sh);
        let l: Vec<Rational> = (0..=8).map(|n| (0..=n).map(|j| &ch[j] * &inv[n - j]).sum()).collect();
        assert_eq!(genus_series(GenusKind::L, 8).coeffs, l);
        assert_eq!(genus_series(GenusKind::AHat, 2).coeffs, vec![qi(1), q(-1, 24), q(7, 5760)]);
    }

    #[test]
    fn ahat_and_l_low_degree() {
        let a = multiplicative_sequence(&genus_series(GenusKind::AHat, 2), 2).unwrap();
        assert_eq!(a[1].coeff(&pp("(1)")), q(-1, 24));
        assert_eq!(a[2].coeff(&pp("(1,1)")), q(7, 5760));
        assert_eq!(a[2].coeff(&pp("(2)")), q(-4, 5760));
        let l = multiplicative_sequence(&genus_series(GenusKind::L, 2), 2).unwrap();
        assert_eq!(l[1].coeff(&pp("(1)")), q(1, 3));
        assert_eq!(l[2].coeff(&pp("(2)")), q(7, 45));
        assert_eq!(l[2].coeff(&pp("(1,1)")), q(-1, 45));
    }

    #[test]
    fn ahat_degree_four_known() {
        // Â_4 numerator over 464486400.
        let a = multiplicative_sequence(&genus_series(GenusKind::AHat, 4), 4).unwrap();
        let d = qi(464486400);
        assert_eq!(a[4].coeff(&pp("(4)")) * &d, qi(-192));
        assert_eq!(a[4].coeff(&pp("(3,1)")) * &d, qi(512));
        assert_eq!(a[4].coeff(&pp("(2,2)")) * &d, qi(208));
        assert_eq!(a[4].coeff(&pp("(2,1,1)")) * &d, qi(-904));
        assert_eq!(a[4].coeff(&pp("(1,1,1,1)")) * &d, qi(381));
    }

    /// Oracle: Π Q(t_j) = exp(Σ_i c_i P_i) with log Q(t) = Σ c_i t^i.
    fn multiplicative_by_powersums(qs: &EvenSeries, k: u32) -> PontPoly {
        let a: Vec<Rational> = (0..=k as usize).map(|i| qs.coeff(i)).collect();
        // log of 1 + u: derivative recurrence n c_n = n a_n - Σ_{j<n} j c_j a_{n-j}
        let mut c = vec![Rational::zero(); k as usize + 1];
        for n in 1..=k as usize {
            let s: Rational = (1..n).map(|j| qi(j as i64) * &c[j] * &a[n - j]).sum();
            c[n] = (qi(n as i64) * &a[n] - s) / qi(n as i64);
        }
        let mut g = PowerSumPoly::zero(k);
        for (i, ci) in c.iter().enumerate().skip(1) {
            g.add_term(Partition::single(i as u32), ci.clone());
        }
        let mut e = PowerSumPoly::one(k);
        let mut term = PowerSumPoly::one(k);
        for n in 1..=k {
            term = term.mul(&g).scale(&Rational::new(1, n as i64));
            e = e.add(&term);
        }
        powersums_to_elementary(&e).unwrap()
    }

    #[test]
    fn multiplicative_sequence_matches_powersum_route() {
        for kind in [GenusKind::AHat, GenusKind::L, GenusKind::Milnor(3)] {
            for k in 1..=7 {
                let s = genus_series(kind, k as usize);
                assert_eq!(total_class(&s, k).unwrap(), multiplicative_by_powersums(&s, k), "{kind} k={k}");
            }
        }
    }

    #[test]
    fn variable_count_stability() {
        for k in 1..=6u32 {
            let s = genus_series(GenusKind::AHat, k as usize);
            let a = multiplicative_sequence_in_vars(&s, k, k as usize).unwrap();
            let b = multiplicative_sequence_in_vars(&s, k, k as usize + 2).unwrap();
            assert_eq!(a, b);
        }
        // With fewer variables than the degree, classes above nvars vanish.
        let s = genus_series(GenusKind::AHat, 2);
        let a = multiplicative_sequence_in_vars(&s, 2, 1).unwrap();
        assert!(a[2].coeff(&pp("(2)")).is_zero());
    }

    #[test]
    fn newton_examples() {
        let p2 = PowerSumPoly::generator(2, 2).unwrap();
        let e = powersums_to_elementary(&p2).unwrap();
        assert_eq!(e.coeff(&pp("(1,1)")), qi(1));
        assert_eq!(e.coeff(&pp("(2)")), qi(-2));
        let over = PowerSumPoly::generator(3, 3).unwrap().with_bound(2);
        assert!(over.is_zero());
        assert!(PowerSumPoly::generator(3, 2).is_err());
    }

    #[test]
    fn milnor_s_is_power_sum() {
        for k in 1..=6u32 {
            let s = multiplicative_sequence(&genus_series(GenusKind::Milnor(k), k as usize), k).unwrap();
            assert_eq!(s[k as usize], newton_power_sums(k)[k as usize]);
        }
    }

    #[test]
    fn json_is_ordered_and_roundtrips() {
        let f = PontPoly::from_terms([(pp("(4)"), q(-12, 1)), (pp("(2,2)"), q(13, 2))], 4).unwrap();
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(s, r#"{"(4)":"-12","(2,2)":"13/2"}"#);
        let g: PontPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn count_01_small() {
        let mut memo = HashMap::new();
        // e_1^2 = m_2 + 2 m_11
        assert_eq!(count_01(&[1, 1], &[1, 1], &mut memo), BigInt::from(2));
        assert_eq!(count_01(&[1, 1], &[2], &mut memo), BigInt::from(1));
        assert_eq!(count_01(&[2], &[2], &mut memo), BigInt::zero());
    }

    fn arb_pont(k: u32) -> impl Strategy<Value = PontPoly> {
        let parts: Vec<Partition> = (0..=k).flat_map(partitions_of).collect();
        proptest::collection::vec((-20i64..20, 1i64..6), parts.len()).prop_map(move |cs| {
            PontPoly::from_terms(parts.iter().cloned().zip(cs.into_iter().map(|(a, b)| q(a, b))), k).unwrap()
        })
    }

    proptest! {
        #[test]
        fn newton_roundtrip(f in arb_pont(5)) {
            let g = powersums_to_elementary(&elementary_to_powersums(&f)).unwrap();
            prop_assert_eq!(g, f);
        }

        #[test]
        fn mul_commutes_and_distributes(a in arb_pont(4), b in arb_pont(4), c in arb_pont(4)) {
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        }

        #[test]
        fn multiplicative_on_random_series(cs in proptest::collection::vec((-9i64..9, 1i64..5), 5)) {
            let mut coeffs = vec![Rational::one()];
            coeffs.extend(cs.into_iter().map(|(a, b)| q(a, b)));
            let s = EvenSeries::new(coeffs).unwrap();
            prop_assert_eq!(total_class(&s, 5).unwrap(), multiplicative_by_powersums(&s, 5));
        }
    }
}
