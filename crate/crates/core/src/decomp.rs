//! Irreducible decompositions of `Λ^p`, `Sym^p` and their tensor products with
//! the half-spin module `S^+ = π_{ω_m}` of `so(2m)`, the closed forms for the
//! minimal `PW` over their components, and the simplex enumeration bounds.

use std::fmt;

use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::rational::{binomial_big, q, qi, Rational};
use crate::symfun::partitions_of;
use crate::weights::{
    casimir, fundamental_weight, pw_invariant, weyl_dimension, DominantWeight, LieFamily, LieType, Weight,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Component {
    pub weight: DominantWeight,
    pub multiplicity: u64,
    pub dim: u128,
}

/// Direct sum of irreducibles; construction checks that dimensions add up to
/// the product of the two ambient factors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub components: Vec<Component>,
    pub ambient_dims: (u128, u128),
}

impl Decomposition {
    pub fn new(weights: Vec<Weight>, ambient_dims: (u128, u128)) -> Result<Decomposition> {
        let mut components: Vec<Component> = Vec::new();
        for w in weights {
            let w = DominantWeight::new(w)?;
            if let Some(c) = components.iter_mut().find(|c| c.weight == w) {
                c.multiplicity += 1;
                continue;
            }
            let dim = weyl_dimension(&w).to_u128().ok_or_else(|| Error::Unsupported("dimension overflow".into()))?;
            components.push(Component { weight: w, multiplicity: 1, dim });
        }
        let total: u128 = components.iter().map(|c| c.dim * c.multiplicity as u128).sum();
        if total != ambient_dims.0 * ambient_dims.1 {
            return Err(Error::Consistency(format!(
                "component dimensions sum to {total}, expected {}·{}",
                ambient_dims.0, ambient_dims.1
            )));
        }
        Ok(Decomposition { components, ambient_dims })
    }

    pub fn total_dim(&self) -> u128 {
        self.ambient_dims.0 * self.ambient_dims.1
    }

    /// Smallest `PW` over the nontrivial components.
    pub fn min_pw(&self) -> Result<Rational> {
        self.components
            .iter()
            .filter(|c| !c.weight.weight().is_zero())
            .map(|c| pw_invariant(&c.weight).map(|p| p.value))
            .try_fold(None, |acc: Option<Rational>, x| {
                let x = x?;
                Ok(Some(match acc {
                    Some(a) if a <= x => a,
                    _ => x,
                }))
            })?
            .ok_or_else(|| Error::InvalidArgument("no nontrivial component".into()))
    }
}

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .components
            .iter()
            .map(|c| {
                let mult = if c.multiplicity > 1 { format!("{}x", c.multiplicity) } else { String::new() };
                format!("{mult}{} [dim {}]", c.weight, c.dim)
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

fn d_type(m: usize) -> Result<LieType> {
    if m < 3 {
        return invalid(format!("rank {m} too small"));
    }
    LieType::new(LieFamily::D, m)
}

fn even_rank(m: usize) -> Result<LieType> {
    if m < 4 {
        return invalid(format!("half-spin tensor formulas need m >= 4, got m={m}"));
    }
    if m % 2 == 1 {
        return Err(Error::Unsupported(format!("half-spin tensor formulas need even m, got m={m}")));
    }
    d_type(m)
}

/// `ω_l`, `ω_0 = 0`.
fn om(ty: LieType, l: usize) -> Weight {
    fundamental_weight(ty, l).expect("index checked by caller")
}

fn mul(w: &Weight, c: i64) -> Weight {
    w.scale(&qi(c))
}

fn dim_u128(n: u64, k: u64) -> u128 {
    binomial_big(n, k).to_u128().unwrap()
}

fn wedge_weights(ty: LieType, p: usize) -> Vec<Weight> {
    let m = ty.m;
    if p > m {
        return wedge_weights(ty, 2 * m - p);
    }
    if p + 2 <= m {
        vec![om(ty, p)]
    } else if p + 1 == m {
        vec![om(ty, m - 1).add(&om(ty, m))]
    } else {
        vec![mul(&om(ty, m), 2), mul(&om(ty, m - 1), 2)]
    }
}

/// `Λ^p C^{2m}` as a `so(2m)` module.
pub fn wedge_power_decomp(p: usize, m: usize) -> Result<Decomposition> {
    let ty = d_type(m)?;
    if p > 2 * m {
        return invalid(format!("wedge power {p} exceeds {}", 2 * m));
    }
    Decomposition::new(wedge_weights(ty, p), (dim_u128(2 * m as u64, p as u64), 1))
}

/// `Sym^p C^{2m} = ⊕_j π_{(p-2j)ω_1}`.
pub fn sym_power_decomp(p: usize, m: usize) -> Result<Decomposition> {
    let ty = d_type(m)?;
    let w = (0..=p / 2).map(|j| mul(&om(ty, 1), (p - 2 * j) as i64)).collect();
    Decomposition::new(w, (dim_u128((2 * m + p - 1) as u64, p as u64), 1))
}

fn spinor_times_irrep(ty: LieType, target: &Weight) -> Vec<Weight> {
    let m = ty.m;
    let (w_m, w_m1) = (om(ty, m), om(ty, m - 1));
    let is = |w: &Weight| w == target;
    // S+ ⊗ Λ^{m-1}
    if is(&w_m1.add(&w_m)) {
        let mut v = vec![w_m1.add(&mul(&w_m, 2))];
        for j in 1..m {
            v.push(om(ty, m - j - 1).add(&om(ty, m - j % 2)));
        }
        return v;
    }
    if is(&mul(&w_m, 2)) {
        let mut v = vec![mul(&w_m, 3)];
        for j in 1..=m / 2 {
            v.push(om(ty, m - 2 * j).add(&w_m));
        }
        return v;
    }
    if is(&mul(&w_m1, 2)) {
        let mut v = vec![mul(&w_m1, 2).add(&w_m)];
        for j in 1..m / 2 {
            v.push(om(ty, m - 2 * j - 1).add(&w_m1));
        }
        return v;
    }
    // Remaining case: target = ω_p with p ≤ m-2.
    let p = target.coeffs.iter().filter(|c| !c.is_zero()).count();
    (0..=p).map(|j| om(ty, p - j).add(&om(ty, m - j % 2))).collect()
}

/// `S^+ ⊗ Λ^p C^{2m}` for `0 ≤ p ≤ m`, `m` even.
pub fn spinor_tensor_wedge(p: usize, m: usize) -> Result<Decomposition> {
    let ty = even_rank(m)?;
    if p > m {
        return invalid(format!("need p <= m, got p={p}, m={m}"));
    }
    let w: Vec<Weight> = wedge_weights(ty, p).iter().flat_map(|t| spinor_times_irrep(ty, t)).collect();
    Decomposition::new(w, (1u128 << (m - 1), dim_u128(2 * m as u64, p as u64)))
}

/// `S^+ ⊗ Sym^p C^{2m}`, `m` even. Each summand `π_{sω_1}` of `Sym^p`
/// contributes `π_{sω_1+ω_m}` and, for `s ≥ 1`, `π_{(s-1)ω_1+ω_{m-1}}`.
pub fn spinor_tensor_sym(p: usize, m: usize) -> Result<Decomposition> {
    let ty = even_rank(m)?;
    let (w1, w_m, w_m1) = (om(ty, 1), om(ty, m), om(ty, m - 1));
    let mut w = Vec::new();
    for j in 0..=p / 2 {
        w.push(mul(&w1, (p - 2 * j) as i64).add(&w_m));
    }
    for j in 0..p.div_ceil(2) {
        w.push(mul(&w1, (p - 2 * j - 1) as i64).add(&w_m1));
    }
    Decomposition::new(w, (1u128 << (m - 1), dim_u128((2 * m + p - 1) as u64, p as u64)))
}

/// `(n² + (8p-1)n - 8p(p-1)) / (n + 16p)`, the minimal `PW` over `S^+ ⊗ Λ^p`.
pub fn pw_spinor_wedge(p: u64, n: u64) -> Rational {
    let (n, p) = (qi(n as i64), qi(p as i64));
    (&n * &n + (qi(8) * &p - qi(1)) * &n - qi(8) * &p * (&p - qi(1))) / (&n + qi(16) * &p)
}

/// The minimal `PW` over `S^+ ⊗ Sym^p`, which is `r_p`.
pub fn pw_spinor_sym(p: u64, n: u64) -> Rational {
    r_p(n, p)
}

/// `r_p = (n² + (8p-1)n + 8p(p-1)) / (n + 8p(p+1))`.
pub fn r_p(n: u64, p: u64) -> Rational {
    let (n, p) = (qi(n as i64), qi(p as i64));
    (&n * &n + (qi(8) * &p - qi(1)) * &n + qi(8) * &p * (&p - qi(1))) / (&n + qi(8) * &p * (&p + qi(1)))
}

/// `r'_p = (n+p-2)/p`.
pub fn r_prime_p(n: u64, p: u64) -> Rational {
    q(n as i64 + p as i64 - 2, p as i64)
}

/// One side of the simplex lemma.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SimplexSide {
    pub points: usize,
    pub min_pw: Rational,
    pub argmin: Vec<Rational>,
    pub pw_bound: Rational,
    pub cas_range: (Rational, Rational),
    pub cas_bounds: (Rational, Rational),
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SimplexReport {
    pub n: usize,
    pub p: usize,
    pub integer: SimplexSide,
    pub shifted: SimplexSide,
}

impl SimplexReport {
    pub fn pass(&self) -> bool {
        self.integer.pass && self.shifted.pass
    }
}

fn scan(points: Vec<Vec<Rational>>, ty: LieType, pw_bound: Rational, cas_bounds: (Rational, Rational)) -> Result<SimplexSide> {
    let mut min_pw: Option<(Rational, Vec<Rational>)> = None;
    let (mut lo, mut hi): (Option<Rational>, Option<Rational>) = (None, None);
    let count = points.len();
    for c in points {
        let w = DominantWeight::new(Weight::new(ty, c.clone(), crate::weights::LatticeFlag::Spin)?)?;
        let cas = casimir(&w);
        let pw = pw_invariant(&w)?.value;
        if min_pw.as_ref().is_none_or(|(v, _)| pw < *v) {
            min_pw = Some((pw, c));
        }
        lo = Some(lo.map_or(cas.clone(), |l| Rational::min_of(l, cas.clone())));
        hi = Some(hi.map_or(cas.clone(), |h| Rational::max_of(h, cas.clone())));
    }
    let (min_pw, argmin) = min_pw.ok_or_else(|| Error::InvalidArgument("empty simplex".into()))?;
    let (lo, hi) = (lo.unwrap(), hi.unwrap());
    let pass = min_pw >= pw_bound && lo >= cas_bounds.0 && hi <= cas_bounds.1;
    Ok(SimplexSide { points: count, min_pw, argmin, pw_bound, cas_range: (lo, hi), cas_bounds, pass })
}

/// Enumerates the nonzero points of the integer simplex `△_p` and the
/// half-integer simplex shifted by `(½,…,½)`, checking the `PW` and Casimir
/// bounds on each. Errors if more than `budget` points would be visited.
pub fn verify_simplex_bounds(n: usize, p: usize, budget: usize) -> Result<SimplexReport> {
    let ty = LieType::so(n)?;
    let m = ty.m;
    if p == 0 {
        return invalid("p must be positive");
    }
    let parts: Vec<Vec<Rational>> = (0..=p as u32)
        .flat_map(partitions_of)
        .filter(|l| l.len() <= m)
        .map(|l| (0..m).map(|i| qi(l.parts().get(i).copied().unwrap_or(0) as i64)).collect())
        .collect();
    if 2 * parts.len() > budget {
        return Err(Error::Budget { what: "simplex points".into(), needed: 2 * parts.len() as u128, budget: budget as u128 });
    }
    let (nn, pp) = (n as u64, p as u64);
    let integer_pts: Vec<Vec<Rational>> = parts.iter().filter(|v| v.iter().any(|x| !x.is_zero())).cloned().collect();
    let half = q(1, 2);
    let shifted_pts: Vec<Vec<Rational>> = parts.iter().map(|v| v.iter().map(|x| x + &half).collect()).collect();
    let np = qi(n as i64);
    let pq = qi(p as i64);
    let base = &np * (&np - qi(1)) / qi(8);
    let integer = scan(integer_pts, ty, r_prime_p(nn, pp), (Rational::zero(), &pq * (&np + &pq - qi(2))))?;
    let shifted = scan(shifted_pts, ty, r_p(nn, pp), (base.clone(), &pq * (&np + &pq - qi(1)) + &base))?;
    Ok(SimplexReport { n, p, integer, shifted })
}
