//! Exact spectra on `Λ²ℝⁿ`, partial eigenvalue sums and the `C_p` functionals.

use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::decomp::{r_p, r_prime_p};
use crate::error::{invalid, Error, Result};
use crate::rational::{qi, Rational};

/// Sorted eigenvalues with multiplicities; multiplicities sum to `n(n-1)/2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawSpectrum")]
pub struct Spectrum {
    n: usize,
    eigs: Vec<(Rational, u64)>,
}

#[derive(Deserialize)]
struct RawSpectrum {
    n: usize,
    eigs: Vec<(Rational, u64)>,
}

impl TryFrom<RawSpectrum> for Spectrum {
    type Error = Error;
    fn try_from(r: RawSpectrum) -> Result<Spectrum> {
        Spectrum::new(r.n, r.eigs)
    }
}

pub fn pairs(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

impl Spectrum {
    /// Merges equal values and sorts; rejects a wrong total multiplicity.
    pub fn new(n: usize, eigs: Vec<(Rational, u64)>) -> Result<Spectrum> {
        if n < 2 {
            return invalid(format!("dimension {n} too small"));
        }
        let mut eigs: Vec<(Rational, u64)> = eigs.into_iter().filter(|e| e.1 > 0).collect();
        eigs.sort_by(|a, b| a.0.cmp(&b.0));
        let mut merged: Vec<(Rational, u64)> = Vec::with_capacity(eigs.len());
        for (v, k) in eigs {
            match merged.last_mut() {
                Some(last) if last.0 == v => last.1 += k,
                _ => merged.push((v, k)),
            }
        }
        let total: u64 = merged.iter().map(|e| e.1).sum();
        if total as usize != pairs(n) {
            return invalid(format!("multiplicities sum to {total}, expected {}", pairs(n)));
        }
        Ok(Spectrum { n, eigs: merged })
    }

    pub fn from_values(n: usize, values: Vec<Rational>) -> Result<Spectrum> {
        Spectrum::new(n, values.into_iter().map(|v| (v, 1)).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn eigs(&self) -> &[(Rational, u64)] {
        &self.eigs
    }

    /// Eigenvalues in ascending order, repeated by multiplicity.
    pub fn values(&self) -> Vec<Rational> {
        self.eigs.iter().flat_map(|(v, k)| std::iter::repeat_n(v.clone(), *k as usize)).collect()
    }

    pub fn len(&self) -> usize {
        pairs(self.n)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn neg(&self) -> Spectrum {
        Spectrum { n: self.n, eigs: self.eigs.iter().rev().map(|(v, k)| (-v.clone(), *k)).collect() }
    }

    pub fn scale(&self, c: &Rational) -> Spectrum {
        let eigs = self.eigs.iter().map(|(v, k)| (v * c, *k)).collect();
        Spectrum::new(self.n, eigs).expect("scaling preserves multiplicities")
    }

    pub fn min(&self) -> &Rational {
        &self.eigs[0].0
    }

    pub fn max(&self) -> &Rational {
        &self.eigs[self.eigs.len() - 1].0
    }

    /// Twice the sum of all eigenvalues.
    pub fn scal(&self) -> Rational {
        self.eigs.iter().map(|(v, k)| v * qi(*k as i64)).sum::<Rational>() * qi(2)
    }

    pub fn sigma(&self, r: &Rational) -> Result<Rational> {
        sigma_multiset(&self.eigs, r)
    }

    /// `C_1` with the largest Ricci eigenvalue `mu` supplied by the caller.
    pub fn c1(&self, mu: &Rational) -> Result<Rational> {
        let n = self.n as u64;
        let scal8 = self.scal() / qi(8);
        let s = self.sigma(&r_p(n, 1))?;
        let a = (qi(n as i64) / qi(8) + qi(2)) * s;
        Ok(Rational::min_of(a, scal8.clone()) + scal8 - mu)
    }

    /// `C_p` for `p ≥ 2`.
    pub fn cp(&self, p: u64) -> Result<Rational> {
        if p < 2 {
            return invalid("C_p with p < 2 needs the Ricci bound; use c1");
        }
        let n = self.n as u64;
        let (rp, rpp) = (r_p(n, p), r_prime_p(n, p));
        let s = self.sigma(&rp)?;
        let pq = qi(p as i64);
        let nq = qi(n as i64);
        let a = (&nq / qi(8) + &pq * &pq + &pq) * &s;
        let b = &nq * (&nq - qi(1)) / (qi(8) * &rp) * &s;
        Ok(Rational::min_of(a, b) + self.scal() / qi(8) + &pq * &pq * self.neg().sigma(&rpp)?)
    }

    /// `C_p` for any `p ≥ 1`; `mu` is required when `p = 1`.
    pub fn c(&self, p: u64, mu: Option<&Rational>) -> Result<Rational> {
        match (p, mu) {
            (0, _) => invalid("p must be positive"),
            (1, Some(mu)) => self.c1(mu),
            (1, None) => invalid("C_1 needs the largest Ricci eigenvalue"),
            _ => self.cp(p),
        }
    }

    /// The interval the largest Ricci eigenvalue of any curvature operator
    /// with this spectrum lies in.
    pub fn mu_range(&self) -> Result<(Rational, Rational)> {
        let k = qi(self.n as i64 - 1);
        let lo = Rational::max_of(self.scal() / qi(self.n as i64), self.sigma(&k)?);
        let hi = -self.neg().sigma(&k)?;
        Ok((lo, hi))
    }
}

/// `ν_1 + … + ν_⌊r⌋ + (r - ⌊r⌋) ν_{⌊r⌋+1}` over a sorted multiset.
pub fn sigma_multiset(eigs: &[(Rational, u64)], r: &Rational) -> Result<Rational> {
    let total: u64 = eigs.iter().map(|e| e.1).sum();
    if !r.is_positive() || *r > qi(total as i64) {
        return invalid(format!("r = {r} outside (0, {total}]"));
    }
    let whole = r.floor().to_u64().expect("bounded by total");
    let frac = r - Rational::from(r.floor());
    let mut left = whole;
    let mut acc = Rational::zero();
    for (v, k) in eigs {
        if left >= *k {
            acc += v * qi(*k as i64);
            left -= k;
        } else {
            return Ok(acc + v * qi(left as i64) + &frac * v);
        }
    }
    Ok(acc)
}

/// Floating counterpart of `sigma_multiset` over ascending values.
pub fn sigma_f64(values: &[f64], r: f64) -> f64 {
    assert!(r > 0.0 && r <= values.len() as f64 + 1e-12, "r outside range");
    let whole = r.floor() as usize;
    let frac = r - r.floor();
    let mut s: f64 = values[..whole.min(values.len())].iter().sum();
    if whole < values.len() {
        s += frac * values[whole];
    }
    s
}
