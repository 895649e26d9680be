//! Curvature operators as exact symmetric matrices on `Λ²ℝⁿ` in the
//! orthonormal basis `{e_i∧e_j : i<j}`, and their `O(n)`-decomposition.
//!
//! The 4-tensor is `R(x,y,z,w) = ⟨R(x∧y), w∧z⟩`, so the round sphere has
//! `R = Id` and `g⊘g` acts as `2·Id`.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};

use super::spectrum::{pairs, sigma_f64};
use crate::error::{invalid, Error, Result};
use crate::matrix::{hermitian_eigenvalues, QMatrix};
use crate::rational::{qi, Rational};

/// Index of `e_i∧e_j`, `i<j`, in lexicographic order.
pub fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * (2 * n - i - 1) / 2 + (j - i - 1)
}

pub fn pair_list(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct CurvOp {
    n: usize,
    mat: QMatrix,
    bianchi_checked: bool,
}

/// `R = R_U + R_L + R_W + R_{Λ⁴}`.
#[derive(Clone, Debug, PartialEq)]
pub struct CurvatureParts {
    pub u: CurvOp,
    pub l: CurvOp,
    pub w: CurvOp,
    pub wedge4: CurvOp,
}

impl CurvOp {
    /// Requires an exactly symmetric matrix; records whether the Bianchi
    /// identity holds.
    pub fn new(n: usize, mat: QMatrix) -> Result<CurvOp> {
        if n < 2 || mat.nrows() != pairs(n) || !mat.is_square() {
            return invalid(format!("expected a {0}x{0} matrix for n = {n}", pairs(n)));
        }
        if !mat.is_symmetric() {
            return invalid("curvature operator must be symmetric");
        }
        let mut r = CurvOp { n, mat, bianchi_checked: false };
        r.bianchi_checked = r.bianchi_parts().1.mat.is_zero();
        Ok(r)
    }

    pub fn identity(n: usize) -> CurvOp {
        CurvOp { n, mat: QMatrix::identity(pairs(n)), bianchi_checked: true }
    }

    pub fn from_dense(n: usize, d: &[Vec<Rational>]) -> Result<CurvOp> {
        CurvOp::new(n, QMatrix::from_dense(d))
    }

    fn unchecked(n: usize, mat: QMatrix) -> CurvOp {
        CurvOp { n, mat, bianchi_checked: false }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mat(&self) -> &QMatrix {
        &self.mat
    }

    pub fn is_bianchi(&self) -> bool {
        self.bianchi_checked
    }

    /// `⟨R(e_i∧e_j), e_k∧e_l⟩` extended antisymmetrically in each pair.
    pub fn op_entry(&self, i: usize, j: usize, k: usize, l: usize) -> Rational {
        let (a, sa) = match i.cmp(&j) {
            std::cmp::Ordering::Less => (pair_index(self.n, i, j), 1),
            std::cmp::Ordering::Greater => (pair_index(self.n, j, i), -1),
            std::cmp::Ordering::Equal => return Rational::zero(),
        };
        let (b, sb) = match k.cmp(&l) {
            std::cmp::Ordering::Less => (pair_index(self.n, k, l), 1),
            std::cmp::Ordering::Greater => (pair_index(self.n, l, k), -1),
            std::cmp::Ordering::Equal => return Rational::zero(),
        };
        let v = self.mat.get(a, b);
        if sa * sb < 0 {
            -v
        } else {
            v
        }
    }

    /// `R(x,y,z,w)` on basis vectors.
    pub fn tensor(&self, x: usize, y: usize, z: usize, w: usize) -> Rational {
        self.op_entry(x, y, w, z)
    }

    /// Builds the operator of a 4-tensor with the curvature symmetries.
    pub fn from_tensor(n: usize, t: impl Fn(usize, usize, usize, usize) -> Rational) -> CurvOp {
        let ps = pair_list(n);
        let mut trip = Vec::new();
        for (a, &(i, j)) in ps.iter().enumerate() {
            for (b, &(k, l)) in ps.iter().enumerate() {
                let v = t(i, j, l, k);
                if !v.is_zero() {
                    trip.push((a, b, v));
                }
            }
        }
        CurvOp::unchecked(n, QMatrix::from_triplets(ps.len(), ps.len(), trip))
    }

    /// `(R - b(R), b(R))` with `b` the cyclic average over the first three
    /// slots; `b(R)` is the `Λ⁴` component.
    pub fn bianchi_parts(&self) -> (CurvOp, CurvOp) {
        let b = CurvOp::from_tensor(self.n, |x, y, z, w| {
            (self.tensor(x, y, z, w) + self.tensor(y, z, x, w) + self.tensor(z, x, y, w)) / qi(3)
        });
        let mut rest = CurvOp::unchecked(self.n, self.mat.sub(&b.mat));
        rest.bianchi_checked = true;
        (rest, b)
    }

    pub fn add(&self, o: &CurvOp) -> CurvOp {
        let mut r = CurvOp::unchecked(self.n, self.mat.add(&o.mat));
        r.bianchi_checked = self.bianchi_checked && o.bianchi_checked;
        r
    }

    pub fn sub(&self, o: &CurvOp) -> CurvOp {
        let mut r = CurvOp::unchecked(self.n, self.mat.sub(&o.mat));
        r.bianchi_checked = self.bianchi_checked && o.bianchi_checked;
        r
    }

    pub fn scale(&self, c: &Rational) -> CurvOp {
        CurvOp { n: self.n, mat: self.mat.scale(c), bianchi_checked: self.bianchi_checked }
    }

    /// Trace inner product `tr(AB)`.
    pub fn inner(&self, o: &CurvOp) -> Rational {
        self.mat.mul(&o.mat).trace()
    }

    /// `Ric(x,y) = Σ_j R(x,e_j,e_j,y)`; defined for any symmetric `R`.
    fn ricci_any(&self) -> QMatrix {
        let n = self.n;
        let mut trip = Vec::new();
        for x in 0..n {
            for y in 0..n {
                let v: Rational = (0..n).map(|j| self.tensor(x, j, j, y)).sum();
                if !v.is_zero() {
                    trip.push((x, y, v));
                }
            }
        }
        QMatrix::from_triplets(n, n, trip)
    }

    pub fn ricci(&self) -> Result<QMatrix> {
        if !self.bianchi_checked {
            return Err(Error::NotBianchi);
        }
        Ok(self.ricci_any())
    }

    pub fn scal(&self) -> Rational {
        self.mat.trace() * qi(2)
    }

    /// Kulkarni–Nomizu product of symmetric bilinear forms.
    pub fn kulkarni_nomizu(h: &QMatrix, k: &QMatrix) -> CurvOp {
        let n = h.nrows();
        let mut r = CurvOp::from_tensor(n, |x, y, z, w| {
            h.get(x, w) * k.get(y, z) + h.get(y, z) * k.get(x, w) - h.get(x, z) * k.get(y, w) - h.get(y, w) * k.get(x, z)
        });
        r.bianchi_checked = true;
        r
    }

    /// Pairwise orthogonal parts summing to `R`.
    pub fn decompose(&self) -> CurvatureParts {
        let n = self.n;
        let (b, wedge4) = self.bianchi_parts();
        let g = QMatrix::identity(n);
        let ric = b.ricci_any();
        let scal = ric.trace();
        let u = CurvOp::kulkarni_nomizu(&g, &g).scale(&(&scal / qi(2 * (n * (n - 1)) as i64)));
        let l = if n > 2 {
            let h = ric.sub(&g.scale(&(&scal / qi(n as i64))));
            CurvOp::kulkarni_nomizu(&g, &h).scale(&qi(n as i64 - 2).recip())
        } else {
            CurvOp::unchecked(n, QMatrix::zeros(pairs(n), pairs(n)))
        };
        let mut w = b.sub(&u).sub(&l);
        w.bianchi_checked = true;
        CurvatureParts { u, l, w, wedge4 }
    }

    pub fn eigenvalues_f64(&self) -> Vec<f64> {
        hermitian_eigenvalues(&self.mat, None)
    }

    pub fn sigma_f64(&self, r: f64) -> f64 {
        sigma_f64(&self.eigenvalues_f64(), r)
    }

    /// Largest Ricci eigenvalue from a floating solve of the exact matrix.
    pub fn largest_ricci(&self) -> Result<f64> {
        Ok(*hermitian_eigenvalues(&self.ricci()?, None).last().expect("n >= 2"))
    }

    /// Symmetric matrix with integer entries in `[-bound, bound]`.
    pub fn random_symmetric<G: Rng>(n: usize, bound: i64, rng: &mut G) -> CurvOp {
        let np = pairs(n);
        let mut trip = Vec::new();
        for a in 0..np {
            for b in a..np {
                let v = qi(rng.gen_range(-bound..=bound));
                if !v.is_zero() {
                    trip.push((a, b, v.clone()));
                    if a != b {
                        trip.push((b, a, v));
                    }
                }
            }
        }
        CurvOp::new(n, QMatrix::from_triplets(np, np, trip)).expect("symmetric by construction")
    }

    /// Bianchi part of a random symmetric operator.
    pub fn random_bianchi<G: Rng>(n: usize, bound: i64, rng: &mut G) -> CurvOp {
        CurvOp::random_symmetric(n, bound, rng).bianchi_parts().0
    }

    /// `count` reproducible Bianchi samples with entries bounded by `bound`.
    pub fn seeded_bianchi(n: usize, bound: i64, count: usize, seed: u64) -> Vec<CurvOp> {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        (0..count).map(|_| CurvOp::random_bianchi(n, bound, &mut rng)).collect()
    }

    /// `A Aᵀ` for a random integer `A`, hence positive semidefinite.
    pub fn random_psd<G: Rng>(n: usize, bound: i64, rng: &mut G) -> CurvOp {
        let np = pairs(n);
        let a = QMatrix::from_triplets(
            np,
            np,
            (0..np).flat_map(|i| (0..np).map(move |j| (i, j))).map(|(i, j)| (i, j, qi(rng.gen_range(-bound..=bound)))).collect::<Vec<_>>(),
        );
        CurvOp::new(n, a.mul(&a.transpose())).expect("Gram matrices are symmetric")
    }
}

impl Serialize for CurvOp {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Out<'a> {
            n: usize,
            bianchi: bool,
            mat: &'a [Vec<Rational>],
        }
        Out { n: self.n, bianchi: self.bianchi_checked, mat: &self.mat.to_dense() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for CurvOp {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct In {
            n: usize,
            mat: Vec<Vec<Rational>>,
        }
        let raw = In::deserialize(d)?;
        CurvOp::from_dense(raw.n, &raw.mat).map_err(serde::de::Error::custom)
    }
}

/// True when `h` is the identity up to a scalar `c`, returning `c`.
pub fn scalar_of(h: &QMatrix) -> Option<Rational> {
    let c = h.get(0, 0);
    h.is_scalar(&c).then_some(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn indexing() {
        let n = 6;
        for (a, &(i, j)) in pair_list(n).iter().enumerate() {
            assert_eq!(pair_index(n, i, j), a);
        }
    }

    #[test]
    fn sphere_calibration() {
        let r = CurvOp::identity(5);
        assert!(r.is_bianchi());
        assert_eq!(scalar_of(&r.ricci().unwrap()), Some(qi(4)));
        assert_eq!(r.scal(), qi(20));
        let g = QMatrix::identity(5);
        assert_eq!(CurvOp::kulkarni_nomizu(&g, &g).mat, QMatrix::scalar(10, qi(2)));
        let parts = r.decompose();
        assert_eq!(parts.u, CurvOp::identity(5).decompose().u);
        assert_eq!(parts.u.mat, QMatrix::identity(10));
        assert!(parts.l.mat.is_zero() && parts.w.mat.is_zero() && parts.wedge4.mat.is_zero());
    }

    #[test]
    fn decomposition_orthogonal_and_complete() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..3 {
            let r = CurvOp::random_symmetric(6, 4, &mut rng);
            let p = r.decompose();
            let sum = p.u.add(&p.l).add(&p.w).add(&p.wedge4);
            assert_eq!(sum.mat, r.mat);
            let all = [&p.u, &p.l, &p.w, &p.wedge4];
            for i in 0..4 {
                for j in i + 1..4 {
                    assert!(all[i].inner(all[j]).is_zero(), "parts {i},{j} not orthogonal");
                }
            }
            assert!(p.wedge4.bianchi_parts().0.mat.is_zero());
            assert!(p.w.ricci().unwrap().is_zero());
        }
    }

    #[test]
    fn traceless_ricci_has_no_u_part() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let r = CurvOp::random_bianchi(6, 3, &mut rng);
        let p = r.decompose();
        let shifted = r.sub(&p.u);
        assert!(shifted.scal().is_zero());
        assert!(shifted.decompose().u.mat.is_zero());
    }

    #[test]
    fn json_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let r = CurvOp::random_bianchi(4, 2, &mut rng);
        let s = serde_json::to_string(&r).unwrap();
        let back: CurvOp = serde_json::from_str(&s).unwrap();
        assert_eq!(back, r);
        assert!(back.is_bianchi());
    }
}
