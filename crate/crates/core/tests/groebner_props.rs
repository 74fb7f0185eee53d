use gkz_hodge_core::groebner::{bernstein_exponent, buchberger, lift_filtered, LiftOutcome};
use gkz_hodge_core::linalg::IntMatrix;
use gkz_hodge_core::weyl::{filtration_degree, is_pure, q, FiltrationSpec, Monomial, Sig, Signature, TermOrder, WeylElement};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const NAMES: [&str; 3] = ["t", "u", "v"];

fn signature(n: usize) -> Sig {
    Signature::new(&NAMES[..n]).unwrap().with_marked("t").unwrap().into_arc()
}

/// A monomial of total degree at most 3 with V-order `k` along `t`.
fn random_monomial(rng: &mut ChaCha8Rng, n: usize, k: i32) -> Option<Monomial> {
    let mut x = vec![0i32; n];
    let mut d = vec![0i32; n];
    if k >= 0 {
        x[0] = k;
    } else {
        d[0] = -k;
    }
    let extra = rng.gen_range(0..=3 - k.abs());
    for _ in 0..extra {
        let i = rng.gen_range(0..n);
        if i == 0 {
            // A t d_t pair keeps the V-order.
            if x.iter().chain(&d).sum::<i32>() + 2 <= 3 {
                x[0] += 1;
                d[0] += 1;
            }
        } else if rng.gen_bool(0.5) {
            x[i] += 1;
        } else {
            d[i] += 1;
        }
    }
    let total: i32 = x.iter().chain(&d).sum();
    (total <= 3).then(|| Monomial::from_parts(&x, &d, &[]))
}

fn random_pure(rng: &mut ChaCha8Rng, s: &Sig) -> WeylElement {
    let n = s.nvars();
    loop {
        let k = rng.gen_range(-1..=1);
        let terms = rng.gen_range(1..=3);
        let mut p = WeylElement::zero(s);
        for _ in 0..terms {
            if let Some(m) = random_monomial(rng, n, k) {
                let c = [-3, -2, -1, 1, 2, 3][rng.gen_range(0..6)];
                p = &p + &WeylElement::monomial(s, m, q(c));
            }
        }
        if !p.is_zero() {
            return p;
        }
    }
}

fn random_system(rng: &mut ChaCha8Rng) -> Vec<WeylElement> {
    let s = signature(rng.gen_range(1..=3));
    let count = rng.gen_range(1..=3);
    (0..count).map(|_| random_pure(rng, &s)).collect()
}

#[test]
fn random_pure_sets_give_pure_bases() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x9e37);
    for case in 0..100 {
        let gens = random_system(&mut rng);
        assert!(gens.iter().all(|g| is_pure(g) == Some(true)));
        let gb = buchberger(&gens, &TermOrder::WeylStd).unwrap_or_else(|e| panic!("case {case}: {e}"));
        assert!(gb.pure_flag, "case {case}: {gens:?} -> {:?}", gb.generators);
        for g in &gb.generators {
            assert_eq!(is_pure(g), Some(true), "case {case}: {g}");
        }
        assert!(gb.verify_s_pair_criterion().unwrap(), "case {case}");
        for g in &gens {
            assert!(gb.contains(g).unwrap(), "case {case}: {g}");
        }
    }
}

fn v_min(p: &WeylElement) -> Option<i64> {
    (!p.is_zero()).then(|| filtration_degree(p, &FiltrationSpec::VAlong(0)).unwrap().degree)
}

#[test]
fn lifts_exist_for_pure_bases() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x51ed);
    let mut lifted = 0;
    for case in 0..60 {
        let gens = random_system(&mut rng);
        let gb = buchberger(&gens, &TermOrder::WeylStd).unwrap();
        if gb.is_unit() {
            continue;
        }
        let s = gb.sig.clone();
        let k = rng.gen_range(0..=1);
        // Q in V^k: a combination of basis multiples and a pure element of V-order >= k.
        let mut qq = WeylElement::zero(&s);
        for g in &gb.generators {
            let m = random_pure(&mut rng, &s);
            if v_min(&(&m * g)).is_some_and(|v| v >= k as i64) {
                qq = &qq + &(&m * g);
            }
        }
        let tail = random_pure(&mut rng, &s);
        if v_min(&tail).is_some_and(|v| v >= k as i64) {
            qq = &qq + &tail;
        }
        if qq.is_zero() {
            continue;
        }
        let p = gb.normal_form(&qq).unwrap();
        let (outcome, lift) = lift_filtered(&p, &qq, k as i64, &gb).unwrap();
        let lift = lift.unwrap_or_else(|| panic!("case {case}: {outcome:?} for {qq} / {:?}", gb.generators));
        assert!(matches!(outcome, LiftOutcome::Lifted { .. }));
        assert!(lift.order().unwrap_or(0) <= p.order().unwrap_or(0).max(0), "case {case}");
        assert!(v_min(&lift).is_none_or(|v| v >= k as i64), "case {case}");
        assert!(gb.contains(&(&lift - &p)).unwrap(), "case {case}");
        lifted += 1;
    }
    assert!(lifted >= 20, "only {lifted} nontrivial cases");
}

fn unimodular(rng: &mut ChaCha8Rng, r: usize) -> IntMatrix {
    let mut u = IntMatrix::identity(r);
    for _ in 0..4 {
        let (i, j) = (rng.gen_range(0..r), rng.gen_range(0..r));
        if i == j {
            continue;
        }
        let c: i64 = [-1, 1, 2][rng.gen_range(0..3)];
        let mut e = IntMatrix::identity(r);
        e.set(i, j, c.into());
        u = e.mul(&u).unwrap();
    }
    u
}

#[test]
fn bernstein_exponent_is_invariant_under_coordinate_changes() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for rows in [vec![vec![1i64, 2, -1, -2], vec![0, 1, 0, 1]], vec![vec![1, 1, 1, 1], vec![0, 1, 0, 1], vec![0, 0, 1, 1]]] {
        let b = IntMatrix::from_rows(&rows).unwrap();
        let base = bernstein_exponent(&b, 6).unwrap();
        for _ in 0..3 {
            let u = unimodular(&mut rng, b.rows());
            assert!(u.is_unimodular());
            let moved = bernstein_exponent(&u.mul(&b).unwrap(), 6).unwrap();
            assert_eq!(moved.m, base.m, "{rows:?} under {u:?}");
            assert_eq!(moved.polynomial, base.polynomial);
        }
    }
}
