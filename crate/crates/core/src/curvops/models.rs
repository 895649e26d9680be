//! Curvature spectra of model spaces, the surgery inequality and the nested
//! chain `scal/4 ≥ C_1 ≥ C_2 ≥ …`.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::Serialize;

use super::spectrum::{pairs, Spectrum};
use crate::certificate::{Backend, Certificate, Evidence};
use crate::error::{invalid, Error, Result};
use crate::rational::{qi, Rational};

/// Model metric. `Scaled(M, c)` multiplies the metric by `c²`, dividing
/// every eigenvalue by `c²`.
#[derive(Clone, Debug, PartialEq)]
pub enum Model {
    Sphere(usize),
    Cpm(usize),
    Hpk(usize),
    Cap2,
    /// `ℝ^{n-d+1} × S^{d-1}`.
    SphereFlat { n: usize, d: usize },
    Flat(usize),
    Scaled(Box<Model>, Rational),
    Product(Vec<Model>),
}

impl Model {
    pub fn dim(&self) -> usize {
        match self {
            Model::Sphere(n) | Model::Flat(n) => *n,
            Model::Cpm(m) => 2 * m,
            Model::Hpk(k) => 4 * k,
            Model::Cap2 => 16,
            Model::SphereFlat { n, .. } => *n,
            Model::Scaled(m, _) => m.dim(),
            Model::Product(fs) => fs.iter().map(Model::dim).sum(),
        }
    }

    fn check(&self) -> Result<()> {
        match self {
            Model::Sphere(n) if *n < 2 => invalid("sphere needs n >= 2"),
            Model::Cpm(m) if *m < 2 => invalid("CP^m needs m >= 2"),
            Model::Hpk(k) if *k < 2 => invalid("HP^k needs k >= 2"),
            Model::SphereFlat { n, d } if *d < 3 || d > n => invalid(format!("need 3 <= d <= n, got d={d}, n={n}")),
            Model::Scaled(m, c) => {
                if !c.is_positive() {
                    return invalid("scale must be positive");
                }
                m.check()
            }
            Model::Product(fs) => {
                if fs.is_empty() {
                    return invalid("empty product");
                }
                fs.iter().try_for_each(Model::check)
            }
            _ => Ok(()),
        }
    }

    /// Nonzero eigenvalues with multiplicity; the rest of `Λ²` is kernel.
    fn nonzero(&self) -> Vec<(Rational, u64)> {
        let u = |x: usize| x as u64;
        match self {
            Model::Sphere(n) => vec![(qi(1), u(pairs(*n)))],
            Model::Flat(_) => vec![],
            Model::Cpm(m) => vec![(qi(2), u(m * m - 1)), (qi(2 * *m as i64 + 2), 1)],
            Model::Hpk(k) => vec![(qi(4), u(k * (2 * k + 1))), (qi(4 * *k as i64), 3)],
            Model::Cap2 => vec![(qi(8), 36)],
            Model::SphereFlat { d, .. } => vec![(qi(1), u(pairs(d - 1)))],
            Model::Scaled(m, c) => {
                let s = (c * c).recip();
                m.nonzero().into_iter().map(|(v, k)| (v * &s, k)).collect()
            }
            Model::Product(fs) => fs.iter().flat_map(Model::nonzero).collect(),
        }
    }

    pub fn spectrum(&self) -> Result<Spectrum> {
        self.check()?;
        let n = self.dim();
        let mut eigs = self.nonzero();
        let used: u64 = eigs.iter().map(|e| e.1).sum();
        eigs.push((Rational::zero(), pairs(n) as u64 - used));
        Spectrum::new(n, eigs)
    }

    /// Largest Ricci eigenvalue: each factor is Einstein.
    pub fn mu(&self) -> Rational {
        match self {
            Model::Sphere(n) => qi(*n as i64 - 1),
            Model::Flat(_) => Rational::zero(),
            Model::Cpm(m) => qi(2 * *m as i64 + 2),
            Model::Hpk(k) => qi(4 * *k as i64 + 8),
            Model::Cap2 => qi(36),
            Model::SphereFlat { d, .. } => qi(*d as i64 - 2),
            Model::Scaled(m, c) => m.mu() / (c * c),
            Model::Product(fs) => fs.iter().map(Model::mu).fold(Rational::zero(), Rational::max_of),
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Model::Sphere(n) => write!(f, "sphere:{n}"),
            Model::Cpm(m) => write!(f, "cpm:{m}"),
            Model::Hpk(k) => write!(f, "hpk:{k}"),
            Model::Cap2 => write!(f, "cap2"),
            Model::SphereFlat { n, d } => write!(f, "sphere-flat:{n}:{d}"),
            Model::Flat(n) => write!(f, "flat:{n}"),
            Model::Scaled(m, c) => write!(f, "{m}/{c}"),
            Model::Product(fs) => {
                let parts: Vec<String> = fs.iter().map(|m| m.to_string()).collect();
                write!(f, "{}", parts.join("*"))
            }
        }
    }
}

impl FromStr for Model {
    type Err = Error;

    /// `sphere:n`, `cpm:m`, `hpk:k`, `cap2`, `sphere-flat:n:d`, `flat:n`;
    /// factors joined by `*`; a factor suffix `/c` scales its metric by `c²`.
    fn from_str(s: &str) -> Result<Model> {
        let factors: Vec<&str> = s.split('*').map(str::trim).collect();
        if factors.len() > 1 {
            return factors.iter().map(|f| f.parse()).collect::<Result<Vec<_>>>().map(Model::Product);
        }
        let s = factors[0];
        if let Some((base, c)) = s.split_once('/') {
            let c: Rational = c.parse().map_err(|_| Error::Parse(format!("bad scale in {s:?}")))?;
            return Ok(Model::Scaled(Box::new(base.parse()?), c));
        }
        let parts: Vec<&str> = s.split(':').collect();
        let num = |i: usize| -> Result<usize> {
            parts.get(i).and_then(|t| t.parse().ok()).ok_or_else(|| Error::Parse(format!("bad model {s:?}")))
        };
        let m = match parts[0] {
            "sphere" => Model::Sphere(num(1)?),
            "cpm" => Model::Cpm(num(1)?),
            "hpk" => Model::Hpk(num(1)?),
            "cap2" => Model::Cap2,
            "flat" => Model::Flat(num(1)?),
            "sphere-flat" => Model::SphereFlat { n: num(1)?, d: num(2)? },
            _ => return Err(Error::Parse(format!("unknown model {s:?}"))),
        };
        m.check()?;
        Ok(m)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SurgeryReport {
    pub n: usize,
    pub d: usize,
    pub p: u64,
    pub stable: bool,
    pub margin: Rational,
    pub cp_value: Rational,
    pub lower_bound: Rational,
    pub bound_holds: bool,
}

/// Codimension-`d` surgery criterion in dimension `n`, together with the
/// exact value of `C_p` on `ℝ^{n-d+1} × S^{d-1}`.
pub fn surgery_stable(n: usize, d: usize, p: u64) -> Result<SurgeryReport> {
    if p == 0 {
        return invalid("p must be positive");
    }
    let model = Model::SphereFlat { n, d };
    let spec = model.spectrum()?;
    let (dq, nq, pq) = (qi(d as i64), qi(n as i64), qi(p as i64));
    let cp_value = spec.c(p, Some(&model.mu()))?;
    let (stable, margin, lower_bound) = if p == 1 {
        (d >= 10, qi(d as i64 - 10), (&dq - qi(2)) * (&dq - qi(9)) / qi(8))
    } else {
        let lhs = (&dq - qi(1)) * (&dq - qi(2));
        let rhs = qi(8) * &pq * (&pq + &nq - qi(2));
        let lb = &lhs / qi(8) - &pq * (&pq + &nq - qi(2));
        (lhs > rhs, lhs - rhs, lb)
    };
    let bound_holds = cp_value >= lower_bound;
    Ok(SurgeryReport { n, d, p, stable, margin, cp_value, lower_bound, bound_holds })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NestedReport {
    /// `C_1, …, C_pmax`.
    pub values: Vec<Rational>,
    pub scal: Rational,
    /// Largest `p` with `C_p ≥ 0`.
    pub top: Option<u64>,
    pub holds: bool,
}

/// Checks `scal/4 ≥ C_1 ≥ … ≥ C_p` for the largest `p ≤ pmax` with
/// `C_p ≥ 0`; vacuous when there is none.
pub fn nested_monotonicity_check(s: &Spectrum, mu: &Rational, pmax: u64) -> Result<NestedReport> {
    if pmax < 2 {
        return invalid("pmax must be at least 2");
    }
    let values: Vec<Rational> = (1..=pmax).map(|p| s.c(p, Some(mu))).collect::<Result<_>>()?;
    let top = (1..=pmax).rev().find(|&p| !values[p as usize - 1].is_negative());
    let scal = s.scal();
    let holds = match top {
        None => true,
        Some(t) => {
            let chain = &values[..t as usize];
            chain.windows(2).all(|w| w[0] >= w[1]) && scal.clone() / qi(4) >= chain[0]
        }
    };
    Ok(NestedReport { values, scal, top, holds })
}

/// Evaluates `C_1 … C_p`; positivity of `C_p` in dimension `4k`, `k ≥ 2`,
/// forces twisted Â-genera to vanish for parallel `E ⊆ TM^{⊗q}`, `q ≤ p`.
pub fn theorem_a_report(s: &Spectrum, mu: &Rational, p: u64) -> Result<Certificate> {
    const TAG: &str = "twisted Dirac";
    if p == 0 {
        return invalid("p must be positive");
    }
    let n = s.n();
    if !n.is_multiple_of(4) || n < 8 {
        return Ok(Certificate::inconclusive(TAG, format!("requires dimension n = 4k with k >= 2, got n = {n}"), vec![]));
    }
    let nested = nested_monotonicity_check(s, mu, p.max(2))?;
    let values = &nested.values[..p as usize];
    let mut evidence: Vec<Evidence> =
        values.iter().enumerate().map(|(i, v)| Evidence::new(format!("C_{}", i + 1), v.is_positive(), v.to_string())).collect();
    let cp = &values[p as usize - 1];
    if !cp.is_positive() {
        return Ok(Certificate::inconclusive(TAG, format!("C_{p} = {cp} is not positive"), evidence));
    }
    evidence.push(Evidence::new("scal/4 >= C_1", nested.scal.clone() / qi(4) >= values[0], nested.scal.to_string()));
    let conclusions = (1..=p)
        .map(|q| format!("A-hat(M, E_C) = 0 for every parallel E in TM^(x{q})"))
        .collect();
    Ok(Certificate::from_evidence(TAG, evidence, Backend::Exact).with_conclusions(conclusions))
}
