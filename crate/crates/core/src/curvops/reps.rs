//! Explicit generators `dπ(e_i∧e_j)` of `so(n)` representations.
//!
//! `e_i∧e_j` acts on `ℝⁿ` as `E_ji - E_ij`. Tensor representations act by
//! derivations on the defining action. The spinor module is realized by
//! Jordan–Wigner matrices with Clifford relations `e_a e_b + e_b e_a = -2δ_ab`
//! and generators `½ e_i e_j`.

use num_traits::{One, Zero};
use serde::Serialize;

use super::spectrum::pairs;
use super::tensor::pair_list;
use crate::error::{invalid, Error, Result};
use crate::matrix::GMatrix;
use crate::rational::{binomial_big, factorial, q, qi, Gaussian, Rational};
use crate::weights::{combos, RepKind};

/// Default cap on the materialized dimension.
pub const DEFAULT_BUDGET: usize = 2000;

#[derive(Clone, Debug)]
pub struct RepMatrices {
    pub kind: RepKind,
    pub n: usize,
    pub dim: usize,
    /// Indexed like the pairs `(i,j)`, `i<j`.
    pub generators: Vec<GMatrix>,
    /// Diagonal Gram matrix of the basis; `None` means orthonormal.
    pub gram: Option<Vec<Rational>>,
    /// Parity labels splitting the spinor module into its halves.
    pub halves: Option<Vec<bool>>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RepSummary {
    pub kind: String,
    pub n: usize,
    pub dim: usize,
}

impl RepMatrices {
    pub fn summary(&self) -> RepSummary {
        RepSummary { kind: self.kind.to_string(), n: self.n, dim: self.dim }
    }

    /// `Σ_a c_a dπ(X_a)` for coefficients indexed by pairs.
    pub fn combination(&self, coeffs: &[Rational]) -> GMatrix {
        let mut acc = GMatrix::zeros(self.dim, self.dim);
        for (c, g) in coeffs.iter().zip(&self.generators) {
            if !c.is_zero() {
                acc = acc.add(&g.scale(&Gaussian::real(c.clone())));
            }
        }
        acc
    }

    /// `gram·X` is anti-Hermitian for every generator.
    pub fn is_skew(&self) -> bool {
        self.generators.iter().all(|g| {
            let gg = match &self.gram {
                Some(w) => diag(w).mul(g),
                None => g.clone(),
            };
            gg.adjoint() == gg.neg()
        })
    }
}

fn diag(w: &[Rational]) -> GMatrix {
    GMatrix::from_triplets(w.len(), w.len(), w.iter().enumerate().map(|(i, v)| (i, i, Gaussian::real(v.clone()))))
}

fn dim_of(kind: &RepKind, n: usize) -> Result<u128> {
    let to = |b: num_bigint::BigInt| -> u128 { b.try_into().unwrap_or(u128::MAX) };
    Ok(match kind {
        RepKind::Defining => n as u128,
        RepKind::Wedge(p) => to(binomial_big(n as u64, *p as u64)),
        RepKind::Sym(p) => to(binomial_big((n + *p as usize).saturating_sub(1) as u64, *p as u64)),
        RepKind::Sym0 => (n * (n + 1) / 2 - 1) as u128,
        RepKind::Spinor => 1u128 << (n / 2),
        RepKind::SpinorPlus | RepKind::SpinorMinus => {
            if n % 2 == 1 {
                1u128 << (n / 2)
            } else {
                1u128 << (n / 2 - 1)
            }
        }
        RepKind::SpinorTensor(r) => (1u128 << (n / 2)).saturating_mul(dim_of(r, n)?),
    })
}

/// Materializes the generators of `kind` for `so(n)`.
pub fn rep_matrices(kind: &RepKind, n: usize, budget: usize) -> Result<RepMatrices> {
    if n < 2 {
        return invalid("n must be at least 2");
    }
    let dim = dim_of(kind, n)?;
    if dim > budget as u128 {
        return Err(Error::Budget { what: format!("{kind} for so({n})"), needed: dim, budget: budget as u128 });
    }
    let ps = pair_list(n);
    let real = |gens: Vec<Vec<(usize, usize, Rational)>>, dim: usize| -> Vec<GMatrix> {
        gens.into_iter()
            .map(|t| GMatrix::from_triplets(dim, dim, t.into_iter().map(|(i, j, v)| (i, j, Gaussian::real(v)))))
            .collect()
    };
    let out = match kind {
        RepKind::Defining | RepKind::Wedge(1) | RepKind::Sym(1) => {
            let gens = ps.iter().map(|&(i, j)| vec![(j, i, qi(1)), (i, j, qi(-1))]).collect();
            RepMatrices { kind: kind.clone(), n, dim: n, generators: real(gens, n), gram: None, halves: None }
        }
        RepKind::Wedge(p) => {
            let (basis, gens) = wedge_generators(n, *p as usize);
            RepMatrices { kind: kind.clone(), n, dim: basis, generators: real(gens, basis), gram: None, halves: None }
        }
        RepKind::Sym(p) => {
            let (gram, gens) = sym_generators(n, *p as usize);
            let d = gram.len();
            RepMatrices { kind: kind.clone(), n, dim: d, generators: real(gens, d), gram: Some(gram), halves: None }
        }
        RepKind::Sym0 => sym0(n)?,
        RepKind::Spinor => spinor(n),
        RepKind::SpinorPlus | RepKind::SpinorMinus => {
            let full = spinor(n);
            if n % 2 == 1 {
                return Ok(RepMatrices { kind: kind.clone(), ..full });
            }
            let want = *kind == RepKind::SpinorPlus;
            let idx: Vec<usize> = full.halves.as_ref().unwrap().iter().enumerate().filter(|(_, &h)| h == want).map(|(i, _)| i).collect();
            let generators = full.generators.iter().map(|g| g.submatrix(&idx, &idx)).collect();
            RepMatrices { kind: kind.clone(), n, dim: idx.len(), generators, gram: None, halves: None }
        }
        RepKind::SpinorTensor(inner) => {
            if matches!(**inner, RepKind::SpinorTensor(_)) {
                return Err(Error::Unsupported("nested spinor tensors".into()));
            }
            let s = spinor(n);
            let p = rep_matrices(inner, n, budget)?;
            let (is, ip) = (GMatrix::identity(s.dim), GMatrix::identity(p.dim));
            let generators = s.generators.iter().zip(&p.generators).map(|(a, b)| a.kron(&ip).add(&is.kron(b))).collect();
            let gram = p.gram.as_ref().map(|w| (0..s.dim).flat_map(|_| w.iter().cloned()).collect());
            RepMatrices { kind: kind.clone(), n, dim: s.dim * p.dim, generators, gram, halves: None }
        }
    };
    debug_assert_eq!(out.generators.len(), pairs(n));
    Ok(out)
}

/// Images of basis vectors under `e_i∧e_j`: `e_i ↦ e_j`, `e_j ↦ -e_i`.
fn act(i: usize, j: usize, k: usize) -> Option<(usize, i64)> {
    if k == i {
        Some((j, 1))
    } else if k == j {
        Some((i, -1))
    } else {
        None
    }
}

fn wedge_generators(n: usize, p: usize) -> (usize, Vec<Vec<(usize, usize, Rational)>>) {
    let basis = combos(n, p, false);
    let index: std::collections::HashMap<Vec<usize>, usize> = basis.iter().cloned().enumerate().map(|(i, b)| (b, i)).collect();
    let gens = pair_list(n)
        .into_iter()
        .map(|(i, j)| {
            let mut t = Vec::new();
            for (col, b) in basis.iter().enumerate() {
                for pos in 0..p {
                    let Some((img, s)) = act(i, j, b[pos]) else { continue };
                    if b.contains(&img) {
                        continue;
                    }
                    let mut v = b.clone();
                    v[pos] = img;
                    let sign = sort_sign(&mut v);
                    t.push((index[&v], col, qi(s * sign)));
                }
            }
            t
        })
        .collect();
    (basis.len(), gens)
}

/// Sorts in place and returns the permutation sign.
fn sort_sign(v: &mut [usize]) -> i64 {
    let mut sign = 1;
    for a in 0..v.len() {
        for b in 0..v.len() - 1 - a {
            if v[b] > v[b + 1] {
                v.swap(b, b + 1);
                sign = -sign;
            }
        }
    }
    sign
}

/// Monomial basis `e^α` of `Sym^p` with Gram weights `α!`.
fn sym_generators(n: usize, p: usize) -> (Vec<Rational>, Vec<Vec<(usize, usize, Rational)>>) {
    let basis = combos(n, p, true);
    let index: std::collections::HashMap<Vec<usize>, usize> = basis.iter().cloned().enumerate().map(|(i, b)| (b, i)).collect();
    let gram = basis
        .iter()
        .map(|b| {
            let mut w = Rational::one();
            let mut k = 0;
            while k < b.len() {
                let run = b[k..].iter().take_while(|&&x| x == b[k]).count();
                w *= factorial(run as u64);
                k += run;
            }
            w
        })
        .collect();
    let gens = pair_list(n)
        .into_iter()
        .map(|(i, j)| {
            let mut acc: std::collections::BTreeMap<(usize, usize), Rational> = Default::default();
            for (col, b) in basis.iter().enumerate() {
                for pos in 0..p {
                    let Some((img, s)) = act(i, j, b[pos]) else { continue };
                    let mut v = b.clone();
                    v[pos] = img;
                    v.sort_unstable();
                    *acc.entry((index[&v], col)).or_insert_with(Rational::zero) += qi(s);
                }
            }
            acc.into_iter().filter(|(_, v)| !v.is_zero()).map(|((r, c), v)| (r, c, v)).collect()
        })
        .collect();
    (gram, gens)
}

/// Traceless part of `Sym²` in the basis `e_ie_j` (`i<j`) followed by the
/// orthogonal traceless diagonals `d_k = Σ_{i<k} e_i² - k e_k²`.
fn sym0(n: usize) -> Result<RepMatrices> {
    let (gram2, gens2) = sym_generators(n, 2);
    let d2 = gram2.len();
    let basis2 = combos(n, 2, true);
    let index: std::collections::HashMap<Vec<usize>, usize> = basis2.iter().cloned().enumerate().map(|(i, b)| (b, i)).collect();
    let mut vecs: Vec<Vec<(usize, Rational)>> = pair_list(n).into_iter().map(|(i, j)| vec![(index[&vec![i, j]], qi(1))]).collect();
    for k in 1..n {
        let mut v: Vec<(usize, Rational)> = (0..k).map(|i| (index[&vec![i, i]], qi(1))).collect();
        v.push((index[&vec![k, k]], qi(-(k as i64))));
        vecs.push(v);
    }
    let gram2 = &gram2;
    let ip = |a: &[(usize, Rational)], b: &[(usize, Rational)]| -> Rational {
        let mut s = Rational::zero();
        for (i, x) in a {
            for (j, y) in b {
                if i == j {
                    s += x * y * &gram2[*i];
                }
            }
        }
        s
    };
    let gram: Vec<Rational> = vecs.iter().map(|v| ip(v, v)).collect();
    let generators = gens2
        .into_iter()
        .map(|t| {
            let x = GMatrix::from_triplets(d2, d2, t.into_iter().map(|(i, j, v)| (i, j, Gaussian::real(v))));
            let mut trip = Vec::new();
            for (col, v) in vecs.iter().enumerate() {
                let mut dense = vec![Gaussian::zero(); d2];
                for (i, c) in v {
                    dense[*i] = Gaussian::real(c.clone());
                }
                let img: Vec<(usize, Rational)> = x
                    .mul_vec(&dense)
                    .into_iter()
                    .enumerate()
                    .filter(|(_, z)| !z.is_zero())
                    .map(|(i, z)| (i, z.re))
                    .collect();
                for (row, b) in vecs.iter().enumerate() {
                    let c = ip(b, &img) / &gram[row];
                    if !c.is_zero() {
                        trip.push((row, col, Gaussian::real(c)));
                    }
                }
            }
            GMatrix::from_triplets(vecs.len(), vecs.len(), trip)
        })
        .collect();
    Ok(RepMatrices { kind: RepKind::Sym0, n, dim: vecs.len(), generators, gram: Some(gram), halves: None })
}

fn pauli() -> [GMatrix; 4] {
    let g = |d: [[(i64, i64); 2]; 2]| {
        GMatrix::from_dense(
            &d.iter().map(|r| r.iter().map(|&(a, b)| Gaussian::new(qi(a), qi(b))).collect()).collect::<Vec<_>>(),
        )
    };
    [
        GMatrix::identity(2),
        g([[(0, 0), (1, 0)], [(1, 0), (0, 0)]]),
        g([[(0, 0), (0, -1)], [(0, 1), (0, 0)]]),
        g([[(1, 0), (0, 0)], [(0, 0), (-1, 0)]]),
    ]
}

fn kron_all(fs: &[GMatrix]) -> GMatrix {
    fs.iter().skip(1).fold(fs[0].clone(), |acc, f| acc.kron(f))
}

/// Clifford generators `e_1 … e_n` on `ℂ^{2^⌊n/2⌋}`: `e_a = iγ_a` with
/// Jordan–Wigner `γ`, plus `i` times the chirality operator when `n` is odd.
pub fn clifford_generators(n: usize) -> Vec<GMatrix> {
    let m = n / 2;
    let [id, sx, sy, sz] = pauli();
    let i = Gaussian::i();
    let mut out = Vec::with_capacity(n);
    for k in 0..m {
        for s in [&sx, &sy] {
            let fs: Vec<GMatrix> =
                (0..m).map(|t| if t < k { sz.clone() } else if t == k { s.clone() } else { id.clone() }).collect();
            out.push(kron_all(&fs).scale(&i));
        }
    }
    if n % 2 == 1 {
        let chir = if m == 0 { GMatrix::identity(1) } else { kron_all(&vec![sz.clone(); m]) };
        out.push(chir.scale(&i));
    }
    out
}

fn spinor(n: usize) -> RepMatrices {
    let e = clifford_generators(n);
    let half = Gaussian::real(q(1, 2));
    let generators = pair_list(n).into_iter().map(|(i, j)| e[i].mul(&e[j]).scale(&half)).collect();
    let m = n / 2;
    let dim = 1usize << m;
    let halves = n.is_multiple_of(2).then(|| (0..dim).map(|b| b.count_ones() % 2 == 0).collect());
    RepMatrices { kind: RepKind::Spinor, n, dim, generators, gram: None, halves }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curvops::tensor::pair_index;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn bracket_consistent(r: &RepMatrices, defining: &RepMatrices, trials: usize, seed: u64) -> bool {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let np = r.generators.len();
        (0..trials).all(|_| {
            let (a, b) = (rng.gen_range(0..np), rng.gen_range(0..np));
            let lhs = r.generators[a].commutator(&r.generators[b]);
            let br = defining.generators[a].commutator(&defining.generators[b]);
            // Coordinates of the bracket in the generator basis.
            let coeffs: Vec<Rational> = pair_list(r.n).iter().map(|&(i, j)| br.get(j, i).re.clone()).collect();
            lhs == r.combination(&coeffs)
        })
    }

    #[test]
    fn generators_are_skew_and_homomorphic() {
        let def = rep_matrices(&RepKind::Defining, 6, DEFAULT_BUDGET).unwrap();
        for kind in ["defining", "wedge:2", "wedge:3", "sym:2", "sym:3", "sym0:2", "spinor", "spinor+", "spinor-", "spinor*defining"] {
            let k: RepKind = kind.parse().unwrap();
            let r = rep_matrices(&k, 6, DEFAULT_BUDGET).unwrap();
            assert!(r.is_skew(), "{kind} not skew");
            assert!(bracket_consistent(&r, &def, 10, 7), "{kind} bracket");
        }
        let def7 = rep_matrices(&RepKind::Defining, 7, DEFAULT_BUDGET).unwrap();
        let s7 = rep_matrices(&RepKind::Spinor, 7, DEFAULT_BUDGET).unwrap();
        assert!(s7.is_skew() && bracket_consistent(&s7, &def7, 10, 1));
    }

    #[test]
    fn clifford_relations() {
        for n in [5usize, 6, 7, 8] {
            let e = clifford_generators(n);
            let d = e[0].nrows();
            for a in 0..n {
                for b in 0..n {
                    let ac = e[a].mul(&e[b]).add(&e[b].mul(&e[a]));
                    let want = if a == b { Gaussian::real(qi(-2)) } else { Gaussian::zero() };
                    assert!(ac.is_scalar(&want), "n={n} a={a} b={b}");
                }
                assert_eq!(e[a].adjoint(), e[a].neg());
            }
            assert_eq!(d, 1 << (n / 2));
        }
    }

    #[test]
    fn dims_and_defining_block() {
        let r = rep_matrices(&RepKind::Defining, 4, DEFAULT_BUDGET).unwrap();
        let g = &r.generators[pair_index(4, 0, 1)];
        assert_eq!(g.get(1, 0), Gaussian::one());
        assert_eq!(g.get(0, 1), Gaussian::real(qi(-1)));
        assert_eq!(rep_matrices(&RepKind::Spinor, 6, DEFAULT_BUDGET).unwrap().dim, 8);
        assert_eq!(rep_matrices(&"spinor*defining".parse().unwrap(), 8, DEFAULT_BUDGET).unwrap().dim, 128);
        assert_eq!(rep_matrices(&RepKind::Sym0, 5, DEFAULT_BUDGET).unwrap().dim, 14);
        assert!(matches!(rep_matrices(&RepKind::Sym(6), 12, DEFAULT_BUDGET), Err(Error::Budget { .. })));
    }
}
