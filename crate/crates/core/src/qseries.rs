//! q-expansions of the Witten genus and of the modified elliptic genus at the
//! other cusp, modular vanishing thresholds and the resulting certificates.

use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::certificate::{Backend, Certificate, Evidence};
use crate::error::{Error, Result};
use crate::genera::{ch_tangent_powersums, lambda_ring_powers, twisted_a_hat_class, ManifoldData};
use crate::rational::{qi, Rational};
use crate::symfun::{powersums_to_elementary, PontPoly, PowerSumPoly};

/// Largest q-power the bundle series expand to.
pub const MAX_TRUNC: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Group {
    #[serde(rename = "SL2Z")]
    Sl2z,
    #[serde(rename = "Gamma0_2")]
    Gamma02,
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Group::Sl2z => "SL2Z",
            Group::Gamma02 => "Gamma0_2",
        })
    }
}

/// `Σ_{ℓ ≤ trunc} a_ℓ q^ℓ`; `coeffs.len() == trunc + 1`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QSeries {
    pub trunc: usize,
    pub coeffs: Vec<Rational>,
    pub weight: u32,
    pub group: Group,
}

impl QSeries {
    /// Index of the first nonzero coefficient, if any within the truncation.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }
}

/// Truncated series with Chern-character coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct BundleQSeries {
    pub trunc: usize,
    pub coeffs: Vec<PontPoly>,
}

fn check_trunc(trunc: usize) -> Result<()> {
    if trunc > MAX_TRUNC {
        return Err(Error::Budget { what: "q-series truncation".into(), needed: trunc as u128, budget: MAX_TRUNC as u128 });
    }
    Ok(())
}

type PsSeries = Vec<PowerSumPoly>;

fn ps_one(k: u32, trunc: usize) -> PsSeries {
    let mut s = vec![PowerSumPoly::zero(k); trunc + 1];
    s[0] = PowerSumPoly::one(k);
    s
}

fn ps_mul(a: &PsSeries, b: &PsSeries) -> PsSeries {
    let trunc = a.len() - 1;
    let k = a[0].grade_bound();
    let mut out = vec![PowerSumPoly::zero(k); trunc + 1];
    for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
        for (j, y) in b.iter().enumerate().take(trunc + 1 - i) {
            if !y.is_zero() {
                out[i + j] = out[i + j].add(&x.mul(y));
            }
        }
    }
    out
}

/// `Σ_p c_p t^p` with `t = sign·q^step`.
fn spread(powers: &[PowerSumPoly], step: usize, negate: bool, trunc: usize) -> PsSeries {
    let k = powers[0].grade_bound();
    let mut s = vec![PowerSumPoly::zero(k); trunc + 1];
    for (p, c) in powers.iter().enumerate() {
        if p * step > trunc {
            break;
        }
        s[p * step] = if negate && p % 2 == 1 { c.scale(&qi(-1)) } else { c.clone() };
    }
    s
}

fn to_bundle(s: PsSeries) -> Result<BundleQSeries> {
    Ok(BundleQSeries { trunc: s.len() - 1, coeffs: s.iter().map(powersums_to_elementary).collect::<Result<_>>()? })
}

fn sym_t_ps(k: u32, step: usize, trunc: usize) -> PsSeries {
    let pmax = (trunc / step) as u32;
    spread(&lambda_ring_powers(&ch_tangent_powersums(k), pmax, true), step, false, trunc)
}

fn wedge_t_ps(k: u32, step: usize, negate: bool, trunc: usize) -> PsSeries {
    let pmax = ((trunc / step) as u32).min(4 * k);
    spread(&lambda_ring_powers(&ch_tangent_powersums(k), pmax, false), step, negate, trunc)
}

/// `ch(Sym_t TM_ℂ)` at `t = q^step` over a `4k`-manifold.
pub fn sym_t_ch(k: u32, step: usize, trunc: usize) -> Result<BundleQSeries> {
    check_trunc(trunc)?;
    to_bundle(sym_t_ps(k, step.max(1), trunc))
}

/// `ch(Λ_t TM_ℂ)` at `t = ±q^step`.
pub fn wedge_t_ch(k: u32, step: usize, negate: bool, trunc: usize) -> Result<BundleQSeries> {
    check_trunc(trunc)?;
    to_bundle(wedge_t_ps(k, step.max(1), negate, trunc))
}

/// `⊗_{ℓ≥1} Sym_{q^ℓ} TM_ℂ`.
pub fn witten_bundle(k: u32, trunc: usize) -> Result<BundleQSeries> {
    check_trunc(trunc)?;
    let s = (1..=trunc.max(1)).fold(ps_one(k, trunc), |acc, l| ps_mul(&acc, &sym_t_ps(k, l, trunc)));
    to_bundle(s)
}

/// `⊗_{ℓ≥1} Λ_{-q^{2ℓ-1}} TM_ℂ ⊗ Sym_{q^{2ℓ}} TM_ℂ`.
pub fn elliptic_bundle(k: u32, trunc: usize) -> Result<BundleQSeries> {
    check_trunc(trunc)?;
    let mut s = ps_one(k, trunc);
    for l in 1..=trunc.div_ceil(2).max(1) {
        s = ps_mul(&s, &wedge_t_ps(k, 2 * l - 1, true, trunc));
        s = ps_mul(&s, &sym_t_ps(k, 2 * l, trunc));
    }
    to_bundle(s)
}

/// `∏_ℓ (1-q^ℓ)^{e(ℓ)}` by repeated binomial expansion.
pub fn eta_product_direct(e: impl Fn(usize) -> i64, trunc: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); trunc + 1];
    out[0] = qi(1);
    for l in 1..=trunc {
        let ex = e(l);
        // (1 - x)^ex = Σ_j binom(ex, j) (-x)^j, generalized binomial for ex < 0
        let mut factor = vec![Rational::zero(); trunc + 1];
        let mut c = qi(1);
        for j in 0..=trunc / l {
            factor[j * l] = c.clone();
            c = c * qi(ex - j as i64) / qi(j as i64 + 1) * qi(-1);
        }
        let mut next = vec![Rational::zero(); trunc + 1];
        for (i, a) in out.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in factor.iter().enumerate().take(trunc + 1 - i) {
                if !b.is_zero() {
                    next[i + j] += a * b;
                }
            }
        }
        out = next;
    }
    out
}

/// Same product through `n·a_n = Σ_j c_j a_{n-j}` with
/// `c_j = -Σ_{ℓ|j} ℓ·e(ℓ)`, the coefficients of `q·d/dq log`.
pub fn eta_product_logderiv(e: impl Fn(usize) -> i64, trunc: usize) -> Vec<Rational> {
    let c: Vec<i64> = (0..=trunc).map(|j| if j == 0 { 0 } else { -(1..=j).filter(|l| j % l == 0).map(|l| l as i64 * e(l)).sum::<i64>() }).collect();
    let mut a = vec![qi(1)];
    for n in 1..=trunc {
        let s: Rational = (1..=n).map(|j| qi(c[j]) * &a[n - j]).sum();
        a.push(s / qi(n as i64));
    }
    a
}

fn scalar_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let trunc = a.len() - 1;
    (0..=trunc).map(|n| (0..=n).map(|i| &a[i] * &b[n - i]).sum()).collect()
}

fn pair_series(m: &ManifoldData, b: &BundleQSeries) -> Result<Vec<Rational>> {
    b.coeffs.iter().map(|c| twisted_a_hat_class(m, c)).collect()
}

/// `Â(M, ⊗Sym_{q^ℓ}TM_ℂ)·∏(1-q^ℓ)^{4k}`.
pub fn witten_genus(m: &ManifoldData, trunc: usize) -> Result<QSeries> {
    let k = m.k();
    let pairs = pair_series(m, &witten_bundle(k, trunc)?)?;
    let pre = eta_product_direct(|_| 4 * k as i64, trunc);
    Ok(QSeries { trunc, coeffs: scalar_mul(&pairs, &pre), weight: 2 * k, group: Group::Sl2z })
}

/// Exponents of `(∏(1-q^{2ℓ})⁴/(1-q^ℓ)²)^{2k}` as a product of `(1-q^ℓ)^{e(ℓ)}`.
pub fn elliptic_prefactor_exponent(k: u32, l: usize) -> i64 {
    let k = k as i64;
    if l.is_multiple_of(2) {
        8 * k - 4 * k
    } else {
        -4 * k
    }
}

/// Expansion of the modified elliptic genus at `2τ`.
pub fn elliptic_genus_tilde(m: &ManifoldData, trunc: usize) -> Result<QSeries> {
    let k = m.k();
    let pairs = pair_series(m, &elliptic_bundle(k, trunc)?)?;
    let pre = eta_product_direct(|l| elliptic_prefactor_exponent(k, l), trunc);
    Ok(QSeries { trunc, coeffs: scalar_mul(&pairs, &pre), weight: 2 * k, group: Group::Gamma02 })
}

/// A nonzero form of weight `m` has `ord_∞ ≤` this value.
pub fn ord_threshold(m: u32, group: Group) -> i64 {
    let m = m as i64;
    match group {
        Group::Sl2z if m % 12 == 2 => m / 12 - 1,
        Group::Sl2z => m / 12,
        Group::Gamma02 => m / 4,
    }
}

/// Curvature index whose positivity kills the Witten genus in dimension `4k`.
pub fn witten_p_threshold(k: u32) -> i64 {
    let k = k as i64;
    if k % 6 == 1 {
        k / 6 - 1
    } else {
        k / 6
    }
}

fn certify(tag: &str, series: &QSeries, threshold: i64, what: &str) -> Certificate {
    let needed = (threshold + 1).max(0) as usize;
    let mut evidence = vec![Evidence::new(
        "threshold",
        true,
        format!("weight {} on {}: ord > {threshold} forces zero", series.weight, series.group),
    )];
    for (d, c) in series.coeffs.iter().enumerate().take(needed) {
        evidence.push(Evidence::new(format!("a_{d}"), c.is_zero(), c.to_string()));
    }
    let cert = Certificate::from_evidence(tag, evidence, Backend::Exact);
    match series.coeffs.iter().take(needed).position(|c| !c.is_zero()) {
        None => cert.with_conclusions(vec![format!("{what} = 0")]),
        Some(d) => cert.failing(format!("{what} is nonzero: a_{d} = {}", series.coeffs[d])),
    }
}

/// Vanishing of the Witten genus from its first coefficients.
pub fn certify_witten_vanishing(m: &ManifoldData, trunc: Option<usize>) -> Result<Certificate> {
    if !m.spin || !m.p1_zero {
        return Ok(Certificate::inconclusive(
            "witten genus",
            format!("{} must be spin with p1 = 0 for the Witten genus to be modular", m.label),
            vec![],
        ));
    }
    let t = ord_threshold(2 * m.k(), Group::Sl2z);
    let trunc = trunc.unwrap_or(0).max(t.max(0) as usize);
    Ok(certify("witten genus", &witten_genus(m, trunc)?, t, "Witten genus"))
}

/// Vanishing of the elliptic genus, hence of the signature.
pub fn certify_elliptic_vanishing(m: &ManifoldData, trunc: Option<usize>) -> Result<Certificate> {
    if !m.spin {
        return Ok(Certificate::inconclusive("elliptic genus", format!("{} must be spin", m.label), vec![]));
    }
    let t = ord_threshold(2 * m.k(), Group::Gamma02);
    let trunc = trunc.unwrap_or(0).max(t.max(0) as usize);
    let mut c = certify("elliptic genus", &elliptic_genus_tilde(m, trunc)?, t, "elliptic genus");
    if c.conclusions.len() == 1 {
        c.conclusions.push("signature = 0".into());
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genera::{builtin_manifold, genus, product, twisted_a_hat};
    use crate::symfun::{partitions_of, GenusKind};
    use crate::weights::RepKind;
    use crate::Verdict;

    fn b(s: &str) -> ManifoldData {
        builtin_manifold(&s.parse().unwrap()).unwrap()
    }

    #[test]
    fn thresholds() {
        assert_eq!(ord_threshold(24, Group::Sl2z), 2);
        assert_eq!(ord_threshold(26, Group::Sl2z), 1);
        assert_eq!(ord_threshold(16, Group::Gamma02), 4);
        assert_eq!(witten_p_threshold(6), 1);
        assert_eq!(witten_p_threshold(7), 0);
        assert_eq!(witten_p_threshold(13), 1);
        for k in 1..=14 {
            assert_eq!(witten_p_threshold(k), ord_threshold(2 * k, Group::Sl2z));
        }
    }

    #[test]
    fn prefactor_two_ways() {
        for k in 1..=4u32 {
            let w = |_: usize| 4 * k as i64;
            assert_eq!(eta_product_direct(w, 10), eta_product_logderiv(w, 10));
            let e = |l: usize| elliptic_prefactor_exponent(k, l);
            assert_eq!(eta_product_direct(e, 10), eta_product_logderiv(e, 10));
        }
    }

    #[test]
    fn bundle_series_low_terms() {
        let s = sym_t_ch(2, 1, 3).unwrap();
        assert_eq!(s.coeffs[0], PontPoly::one(2));
        let t = crate::genera::ch_bundle(&RepKind::Defining, 2).unwrap();
        assert_eq!(s.coeffs[1], t);
        let w = wedge_t_ch(2, 1, true, 3).unwrap();
        assert_eq!(w.coeffs[1], t.scale(&qi(-1)));
    }

    /// `⊗_ℓ Sym_{q^ℓ}E = exp(Σ_{ℓ,s} ψ^s(E) q^{ℓs}/s)` in power sums.
    fn witten_bundle_exp(k: u32, trunc: usize) -> Vec<PowerSumPoly> {
        let t = ch_tangent_powersums(k);
        let mut log = vec![PowerSumPoly::zero(k); trunc + 1];
        for n in 1..=trunc {
            for s in (1..=n).filter(|s| n % s == 0) {
                log[n] = log[n].add(&crate::genera::adams(&t, s as i64).scale(&Rational::new(1, s as i64)));
            }
        }
        // n·a_n = Σ_j j·log_j·a_{n-j}
        let mut a = vec![PowerSumPoly::one(k)];
        for n in 1..=trunc {
            let mut acc = PowerSumPoly::zero(k);
            for j in 1..=n {
                acc = acc.add(&log[j].mul(&a[n - j]).scale(&qi(j as i64)));
            }
            a.push(acc.scale(&Rational::new(1, n as i64)));
        }
        a
    }

    #[test]
    fn witten_bundle_two_ways() {
        for k in 1..=3 {
            let direct = witten_bundle(k, 4).unwrap();
            let exp: Vec<PontPoly> = witten_bundle_exp(k, 4).iter().map(|p| powersums_to_elementary(p).unwrap()).collect();
            assert_eq!(direct.coeffs, exp);
        }
    }

    #[test]
    fn low_coefficients() {
        for name in ["hpk:1", "hpk:2", "hpk:3", "hpk:4", "cap2", "k4", "cpm:2", "cpm:4", "milnor:2:3"] {
            let m = b(name);
            let k = qi(m.k() as i64);
            let ah = genus(&m, GenusKind::AHat).unwrap().value;
            let at = twisted_a_hat(&m, &RepKind::Defining).unwrap();
            let w = witten_genus(&m, 2).unwrap();
            assert_eq!(w.coeffs[0], ah, "{name}");
            assert_eq!(w.coeffs[1], &at - &k * qi(4) * &ah, "{name}");
            let e = elliptic_genus_tilde(&m, 2).unwrap();
            assert_eq!(e.coeffs[0], ah, "{name}");
            assert_eq!(e.coeffs[1], &k * qi(4) * &ah - &at, "{name}");
        }
    }

    #[test]
    fn product_multiplicative_at_q0() {
        let (x, y) = (b("k4"), b("hpk:2"));
        let p = product(&x, &x).unwrap();
        let w = |m: &ManifoldData| witten_genus(m, 1).unwrap().coeffs[0].clone();
        assert_eq!(w(&p), w(&x) * w(&x));
        let p = product(&x, &y).unwrap();
        assert_eq!(w(&p), w(&x) * w(&y));
    }

    #[test]
    fn certificates() {
        let c = certify_elliptic_vanishing(&b("hpk:2"), None).unwrap();
        assert_eq!(c.verdict, Verdict::Fails);
        assert!(c.reason.contains("a_1 = 1"));
        let z = ManifoldData::new(24, partitions_of(6).into_iter().map(|p| (p, Rational::zero())).collect(), true, true, "z").unwrap();
        assert_eq!(certify_witten_vanishing(&z, None).unwrap().verdict, Verdict::Holds);
        assert_eq!(certify_elliptic_vanishing(&z, None).unwrap().verdict, Verdict::Holds);
        assert_eq!(certify_witten_vanishing(&b("hpk:2"), None).unwrap().verdict, Verdict::Inconclusive);
        assert!(witten_genus(&z, 13).is_err());
    }
}
