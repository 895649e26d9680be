//! `K(R,π) = -Σ_a dπ(R X_a) dπ(X_a)` and the matrix oracles built on it.

use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::reps::{clifford_generators, rep_matrices, RepMatrices};
use super::spectrum::sigma_f64;
use super::tensor::{pair_list, CurvOp};
use crate::certificate::{Backend, Evidence};
use crate::decomp::{sym_power_decomp, wedge_power_decomp};
use crate::error::{invalid, Error, Result};
use crate::matrix::{hermitian_eigenvalues, GMatrix};
use crate::rational::{qi, Gaussian, Rational};
use crate::weights::{casimir, highest_weight, pw_invariant, DominantWeight, LieFamily, LieType, RepKind, Weight};

/// Relative tolerance of the floating backend.
pub const FLOAT_TOL: f64 = 1e-9;

pub fn k_operator(r: &CurvOp, rep: &RepMatrices) -> Result<GMatrix> {
    if r.n() != rep.n {
        return invalid(format!("operator on n = {} but representation of so({})", r.n(), rep.n));
    }
    let np = rep.generators.len();
    let sum = (0..np)
        .into_par_iter()
        .map(|a| {
            let mut col = vec![Rational::zero(); np];
            for (b, v) in r.mat().row(a) {
                col[*b] = v.clone();
            }
            rep.combination(&col).mul(&rep.generators[a])
        })
        .reduce(|| GMatrix::zeros(rep.dim, rep.dim), |x, y| x.add(&y));
    Ok(sum.neg())
}

fn gscalar(x: Rational) -> Gaussian {
    Gaussian::real(x)
}

/// Largest absolute real or imaginary entry of `a - b`.
fn max_dev(a: &GMatrix, b: &GMatrix) -> Rational {
    a.sub(b).iter().map(|(_, _, z)| Rational::max_of(z.re.abs(), z.im.abs())).fold(Rational::zero(), Rational::max_of)
}

/// `K(R, spinor) = scal/8`.
pub fn check_spinor_scal(r: &CurvOp, spinor: &RepMatrices) -> Result<Evidence> {
    let k = k_operator(r, spinor)?;
    let want = r.scal() / qi(8);
    let ok = k.is_scalar(&gscalar(want.clone()));
    Ok(Evidence::new("K(R,spinor) = scal/8", ok, format!("scal/8 = {want}")))
}

/// `K(R, defining) = Ric`.
pub fn check_ricci(r: &CurvOp, defining: &RepMatrices) -> Result<Evidence> {
    let k = k_operator(r, defining)?;
    let ric = r.ricci()?.to_gaussian();
    let dev = max_dev(&k, &ric);
    Ok(Evidence::new("K(R,defining) = Ric", dev.is_zero(), format!("max deviation {dev}")))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WeitzenboeckReport {
    pub rep: String,
    pub dim: usize,
    pub equal: bool,
    pub max_deviation: Rational,
}

/// Builds the twisted Dirac curvature term directly as
/// `Σ_{i<j} (e_ie_j ⊗ 1)(-d(π_S⊗π)(R(e_i∧e_j)))` from Clifford products and
/// compares it with `K(R,π_S⊗π) + scal/8 - 1⊗K(R,π)`.
pub fn verify_weitzenboeck_split(r: &CurvOp, kind: &RepKind, budget: usize) -> Result<WeitzenboeckReport> {
    let n = r.n();
    if n % 2 == 1 {
        return invalid("twisted Dirac split implemented for even n");
    }
    let twisted = rep_matrices(&RepKind::SpinorTensor(Box::new(kind.clone())), n, budget)?;
    let inner = rep_matrices(kind, n, budget)?;
    let e = clifford_generators(n);
    let sdim = e[0].nrows();
    let ip = GMatrix::identity(inner.dim);
    let direct = pair_list(n)
        .into_par_iter()
        .enumerate()
        .map(|(a, (i, j))| {
            let mut col = vec![Rational::zero(); twisted.generators.len()];
            for (b, v) in r.mat().row(a) {
                col[*b] = v.clone();
            }
            e[i].mul(&e[j]).kron(&ip).mul(&twisted.combination(&col)).neg()
        })
        .reduce(|| GMatrix::zeros(twisted.dim, twisted.dim), |x, y| x.add(&y));
    let split = k_operator(r, &twisted)?
        .add(&GMatrix::scalar(twisted.dim, gscalar(r.scal() / qi(8))))
        .sub(&GMatrix::identity(sdim).kron(&k_operator(r, &inner)?));
    let dev = max_dev(&direct, &split);
    Ok(WeitzenboeckReport { rep: kind.to_string(), dim: twisted.dim, equal: dev.is_zero(), max_deviation: dev })
}

fn lie_type(n: usize) -> Result<LieType> {
    LieType::so(n)
}

/// Normalizes spinor halves to the full spinor in odd dimension.
fn irreducible_kind(kind: &RepKind, n: usize) -> RepKind {
    match kind {
        RepKind::SpinorPlus | RepKind::SpinorMinus if n % 2 == 1 => RepKind::Spinor,
        k => k.clone(),
    }
}

/// Highest weight of an irreducible materialized representation.
pub fn irreducible_weight(kind: &RepKind, n: usize) -> Result<DominantWeight> {
    let ty = lie_type(n)?;
    highest_weight(&irreducible_kind(kind, n), ty)
        .ok_or_else(|| Error::Unsupported(format!("{kind} is not irreducible for so({n})")))
}

/// Distinct Casimir constants of the irreducible summands.
pub fn casimir_values(kind: &RepKind, n: usize) -> Result<Vec<Rational>> {
    let ty = lie_type(n)?;
    let m = ty.m;
    let weights: Vec<DominantWeight> = match (kind, ty.family) {
        (RepKind::Spinor, LieFamily::D) => {
            vec![irreducible_weight(&RepKind::SpinorPlus, n)?, irreducible_weight(&RepKind::SpinorMinus, n)?]
        }
        (RepKind::Wedge(p), LieFamily::D) => {
            let p = (*p as usize).min(n - *p as usize);
            if p == 0 {
                vec![DominantWeight::new(Weight::zero(ty))?]
            } else {
                wedge_power_decomp(p, m)?.components.into_iter().map(|c| c.weight).collect()
            }
        }
        (RepKind::Wedge(p), LieFamily::B) => {
            let p = (*p as usize).min(n - *p as usize);
            let v: Vec<i64> = (0..m).map(|i| i64::from(i < p)).collect();
            vec![DominantWeight::from_ints(ty, &v)?]
        }
        (RepKind::Sym(p), LieFamily::D) => sym_power_decomp(*p as usize, m)?.components.into_iter().map(|c| c.weight).collect(),
        (RepKind::Sym(p), LieFamily::B) => (0..=*p / 2)
            .map(|j| {
                let mut v = vec![0i64; m];
                v[0] = (*p - 2 * j) as i64;
                DominantWeight::from_ints(ty, &v)
            })
            .collect::<Result<_>>()?,
        _ => vec![irreducible_weight(kind, n)?],
    };
    let mut out: Vec<Rational> = weights.iter().map(casimir).collect();
    out.sort();
    out.dedup();
    Ok(out)
}

/// `K(Id, π)` acts on each irreducible summand by its Casimir constant:
/// `∏_c (K - c) = 0`, and `K = c·Id` when there is one summand type.
pub fn casimir_check(kind: &RepKind, n: usize, budget: usize) -> Result<Evidence> {
    let rep = rep_matrices(kind, n, budget)?;
    let k = k_operator(&CurvOp::identity(n), &rep)?;
    let cs = casimir_values(kind, n)?;
    let ok = if cs.len() == 1 {
        k.is_scalar(&gscalar(cs[0].clone()))
    } else {
        cs.iter()
            .map(|c| k.sub(&GMatrix::scalar(rep.dim, gscalar(c.clone()))))
            .reduce(|a, b| a.mul(&b))
            .map(|p| p.is_zero())
            .unwrap_or(false)
    };
    let listed: Vec<String> = cs.iter().map(Rational::to_string).collect();
    Ok(Evidence::new(format!("K(Id,{kind}) blockwise Casimir"), ok, format!("Casimir values {}", listed.join(", "))))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LowerBoundReport {
    pub rep: String,
    pub norm2: Rational,
    pub pw: Rational,
    pub lambda_min: f64,
    pub bound: f64,
    pub tol: f64,
    pub holds: bool,
    pub backend: Backend,
}

/// `λ_min K(R,π_λ) ≥ ‖λ‖² Σ(PW(λ), R)` in floating point on exact matrices.
pub fn verify_lower_bound(r: &CurvOp, kind: &RepKind, budget: usize) -> Result<LowerBoundReport> {
    let n = r.n();
    let kind = irreducible_kind(kind, n);
    let hw = irreducible_weight(&kind, n)?;
    let rep = rep_matrices(&kind, n, budget)?;
    let k = k_operator(r, &rep)?;
    let ev = hermitian_eigenvalues(&k, rep.gram.as_deref());
    let norm2 = hw.weight().norm2();
    let pw = pw_invariant(&hw)?.value;
    let eig_r = r.eigenvalues_f64();
    let bound = norm2.to_f64() * sigma_f64(&eig_r, pw.to_f64());
    let scale = ev.iter().chain(eig_r.iter()).fold(1.0f64, |m, x| m.max(x.abs()));
    let tol = FLOAT_TOL * scale;
    let lambda_min = ev[0];
    Ok(LowerBoundReport {
        rep: kind.to_string(),
        norm2,
        pw,
        lambda_min,
        bound,
        tol,
        holds: lambda_min >= bound - tol,
        backend: Backend::Float { tol: FLOAT_TOL },
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LabbiReport {
    pub n: usize,
    pub wedge2_matches: bool,
    pub sym2_kills_metric: bool,
    pub parts_sum: bool,
    pub parts_orthogonal: bool,
}

impl LabbiReport {
    pub fn passed(&self) -> bool {
        self.wedge2_matches && self.sym2_kills_metric && self.parts_sum && self.parts_orthogonal
    }
}

/// `K(R,Λ²) = 2(n-2)R_U + (n-4)R_L - 2R_W + 4R_{Λ⁴}` as operators on `Λ²`,
/// `K(R,Sym²)g = 0`, and the decomposition is orthogonal and complete.
pub fn verify_labbi(r: &CurvOp, budget: usize) -> Result<LabbiReport> {
    let n = r.n();
    if n < 4 {
        return invalid("need n >= 4");
    }
    let parts = r.decompose();
    let nq = qi(n as i64);
    let formula = parts
        .u
        .scale(&(qi(2) * (&nq - qi(2))))
        .add(&parts.l.scale(&(&nq - qi(4))))
        .add(&parts.w.scale(&qi(-2)))
        .add(&parts.wedge4.scale(&qi(4)));
    let k2 = k_operator(r, &rep_matrices(&RepKind::Wedge(2), n, budget)?)?;
    let wedge2_matches = k2 == formula.mat().to_gaussian();

    let sym = rep_matrices(&RepKind::Sym(2), n, budget)?;
    let basis = crate::weights::combos(n, 2, true);
    let g: Vec<Gaussian> = basis.iter().map(|b| if b[0] == b[1] { Gaussian::real(qi(1)) } else { Gaussian::zero() }).collect();
    let sym2_kills_metric = k_operator(r, &sym)?.mul_vec(&g).iter().all(Gaussian::is_zero);

    let sum = parts.u.add(&parts.l).add(&parts.w).add(&parts.wedge4);
    let all = [&parts.u, &parts.l, &parts.w, &parts.wedge4];
    let parts_orthogonal = (0..4).all(|i| (i + 1..4).all(|j| all[i].inner(all[j]).is_zero()));
    Ok(LabbiReport { n, wedge2_matches, sym2_kills_metric, parts_sum: sum.mat() == r.mat(), parts_orthogonal })
}
