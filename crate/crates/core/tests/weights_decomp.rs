use curvatura::decomp::{pw_spinor_sym, pw_spinor_wedge, r_p, r_prime_p, spinor_tensor_sym, spinor_tensor_wedge};
use curvatura::rational::{q, qi};
use curvatura::weights::{casimir, pw_closed_form, pw_invariant, LatticeFlag};
use curvatura::{DominantWeight, LieFamily, LieType, Rational, Weight};
use proptest::prelude::*;

/// Nonincreasing tuples of length `m` with entries `≥ 0` and sum `≤ total`.
fn chains(m: usize, total: i64, cap: i64) -> Vec<Vec<i64>> {
    if m == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for a in 0..=cap.min(total) {
        for mut rest in chains(m - 1, total - a, a) {
            rest.insert(0, a);
            out.push(rest);
        }
    }
    out
}

/// Dominant weights of `ty` with `Σ|a_j| ≤ 4`, integral and half-odd.
fn dominant_weights(ty: LieType) -> Vec<DominantWeight> {
    let m = ty.m;
    let mut out = Vec::new();
    let mut push = |c: Vec<Rational>| {
        let w = Weight::new(ty, c, LatticeFlag::Spin).unwrap();
        if !w.is_zero() {
            out.push(DominantWeight::new(w).unwrap());
        }
    };
    for c in chains(m, 4, 4) {
        let ints: Vec<Rational> = c.iter().map(|&a| qi(a)).collect();
        push(ints.clone());
        if ty.family == LieFamily::D && c[m - 1] != 0 {
            let mut neg = ints;
            neg[m - 1] = -neg[m - 1].clone();
            push(neg);
        }
    }
    // a_j = b_j + 1/2 with Σ a_j ≤ 4
    for c in chains(m, 4 - (m as i64 + 1) / 2, 4) {
        let sum: i64 = c.iter().sum();
        if 2 * sum + m as i64 > 8 {
            continue;
        }
        let half: Vec<Rational> = c.iter().map(|&b| qi(b) + q(1, 2)).collect();
        push(half.clone());
        if ty.family == LieFamily::D {
            let mut neg = half;
            neg[m - 1] = -neg[m - 1].clone();
            push(neg);
        }
    }
    out
}

fn is_defining(l: &DominantWeight) -> bool {
    let c = l.coeffs();
    c[0] == qi(1) && c[1..].iter().all(|x| *x == qi(0))
}

fn is_spinor(l: &DominantWeight) -> bool {
    l.coeffs().iter().all(|x| x.abs() == q(1, 2))
}

/// `PW ≤ n-1` with equality only at `ω_1` and the half-spin weights, except
/// that the spin weights of odd `n` reach `PW = n` at `ω_m` only.
#[test]
fn pw_maximum_is_n_minus_one() {
    for n in 6..=13 {
        let ty = LieType::so(n).unwrap();
        let top = qi(n as i64 - 1);
        let ws = dominant_weights(ty);
        assert!(ws.len() > 10, "n = {n}");
        for l in ws {
            assert!(casimir(&l) > qi(0), "{:?}", l.coeffs());
            let pw = pw_invariant(&l).unwrap();
            assert!(!pw.capped);
            let half = !l.coeffs()[0].is_integer();
            if n % 2 == 1 && half {
                assert!(pw.value <= qi(n as i64), "n = {n}, {:?}", l.coeffs());
                assert_eq!(pw.value == qi(n as i64), is_spinor(&l), "n = {n}, {:?}", l.coeffs());
            } else {
                assert!(pw.value <= top, "n = {n}, {:?}", l.coeffs());
                assert_eq!(pw.value == top, is_defining(&l) || is_spinor(&l), "n = {n}, {:?}", l.coeffs());
            }
        }
    }
}

#[test]
fn curvature_space_pw() {
    for n in 5..=16 {
        let ty = LieType::so(n).unwrap();
        let mut a = vec![0i64; ty.m];
        a[0] = 2;
        let one = pw_invariant(&DominantWeight::from_ints(ty, &a).unwrap()).unwrap().value;
        a[1] = 2;
        let two = pw_invariant(&DominantWeight::from_ints(ty, &a).unwrap()).unwrap().value;
        assert_eq!(one, q(n as i64, 2));
        assert_eq!(Rational::min_of(one, two), q(n as i64 - 1, 2));
    }
}

#[test]
fn spinor_wedge_closed_form_is_min() {
    for n in [8usize, 12, 16, 24] {
        for p in 0..=n / 2 {
            let d = spinor_tensor_wedge(p, n / 2).unwrap();
            assert_eq!(d.min_pw().unwrap(), pw_spinor_wedge(p as u64, n as u64), "n = {n}, p = {p}");
        }
    }
}

#[test]
fn wedge_dominates_sym() {
    for n in [8u64, 12, 16, 20] {
        for p in 0..=n / 2 {
            let (w, s) = (pw_spinor_wedge(p, n), pw_spinor_sym(p, n));
            assert!(w >= s);
            assert_eq!(w == s, p <= 1, "n = {n}, p = {p}");
            if (1..=3).contains(&p) {
                assert_eq!(spinor_tensor_sym(p as usize, n as usize / 2).unwrap().min_pw().unwrap(), s);
            }
        }
    }
}

#[test]
fn radii_strictly_decrease() {
    for n in 3..=30u64 {
        for p in 1..12 {
            assert!(r_p(n, p + 1) < r_p(n, p), "n = {n}, p = {p}");
            assert!(r_prime_p(n, p + 1) < r_prime_p(n, p), "n = {n}, p = {p}");
        }
    }
}

fn dominant(m: usize) -> impl Strategy<Value = (usize, Vec<i64>, bool, bool)> {
    (3usize..=m).prop_flat_map(|m| (Just(m), proptest::collection::vec(0i64..6, m), any::<bool>(), any::<bool>()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn pw_matches_closed_form((m, mut a, odd, neg) in dominant(8)) {
        a.sort_unstable_by(|x, y| y.cmp(x));
        prop_assume!(a[0] > 0);
        let fam = if odd { LieFamily::B } else { LieFamily::D };
        let ty = LieType::new(fam, m).unwrap();
        if neg && fam == LieFamily::D {
            a[m - 1] = -a[m - 1];
        }
        let l = DominantWeight::from_ints(ty, &a).unwrap();
        prop_assert_eq!(pw_invariant(&l).unwrap().value, pw_closed_form(&l).unwrap());
    }
}
