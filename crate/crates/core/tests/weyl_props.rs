use std::collections::BTreeMap;

use gkz_hodge_core::weyl::{
    filtration_degree, fourier_laplace, q, FiltrationSpec, Monomial, Sig, Signature, WeylElement,
};
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

const N: usize = 2;

fn sig() -> Sig {
    Signature::new(&["x", "y"]).unwrap().with_marked("x").unwrap().into_arc()
}

type Term = (Vec<i32>, Vec<i32>, i64);

fn term() -> impl Strategy<Value = Term> {
    (prop::collection::vec(0..3i32, N), prop::collection::vec(0..3i32, N), -4..=4i64)
}

fn element(s: &Sig, terms: &[Term]) -> WeylElement {
    terms.iter().fold(WeylElement::zero(s), |acc, (x, d, c)| {
        &acc + &WeylElement::monomial(s, Monomial::from_parts(x, d, &[]), q(*c))
    })
}

fn elem() -> impl Strategy<Value = Vec<Term>> {
    prop::collection::vec(term(), 0..4)
}

/// A commutative polynomial in `N` variables.
type Poly = BTreeMap<Vec<i32>, BigRational>;

fn add_to(p: &mut Poly, e: Vec<i32>, c: BigRational) {
    let v = p.entry(e.clone()).or_insert_with(BigRational::zero);
    *v += c;
    if v.is_zero() {
        p.remove(&e);
    }
}

/// `x^a d^b` acting on polynomials: differentiate, then multiply.
fn act(op: &WeylElement, f: &Poly) -> Poly {
    let mut out = Poly::new();
    for (m, c) in op.terms() {
        let (a, b) = (m.x(N), m.d(N));
        for (e, fc) in f {
            let mut coeff = c * fc;
            let mut e2 = e.clone();
            let mut dead = false;
            for i in 0..N {
                for _ in 0..b[i] {
                    if e2[i] == 0 {
                        dead = true;
                        break;
                    }
                    coeff *= BigRational::from_integer(e2[i].into());
                    e2[i] -= 1;
                }
                e2[i] += a[i];
            }
            if !dead {
                add_to(&mut out, e2, coeff);
            }
        }
    }
    out
}

fn test_functions() -> Vec<Poly> {
    let mut fs = Vec::new();
    for i in 0..=6 {
        for j in 0..=6 {
            fs.push(BTreeMap::from([(vec![i, j], BigRational::one())]));
        }
    }
    fs
}

fn v_pure(s: &Sig, k: i32, raw: &[Term]) -> WeylElement {
    // Adjust the x_0 / d_0 exponents so every monomial has V-order exactly k.
    let terms: Vec<Term> = raw
        .iter()
        .map(|(x, d, c)| {
            let mut x = x.clone();
            let mut d = d.clone();
            let diff = k - (x[0] - d[0]);
            if diff >= 0 {
                x[0] += diff;
            } else {
                d[0] -= diff;
            }
            (x, d, *c)
        })
        .collect();
    element(s, &terms)
}

fn symbol(p: &WeylElement) -> BTreeMap<Vec<i32>, BigRational> {
    let top = p.order().unwrap();
    p.terms()
        .filter(|(m, _)| m.order(N) == top)
        .map(|(m, c)| (m.exponents().to_vec(), c.clone()))
        .collect()
}

fn commutative_product(a: &BTreeMap<Vec<i32>, BigRational>, b: &BTreeMap<Vec<i32>, BigRational>) -> Poly {
    let mut out = Poly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            add_to(&mut out, ea.iter().zip(eb).map(|(x, y)| x + y).collect(), ca * cb);
        }
    }
    out
}

#[test]
fn action_oracle_fixes_the_normal_ordering() {
    let s = sig();
    let dx = WeylElement::partial(&s, 0);
    let x = WeylElement::var(&s, 0);
    assert_eq!(&dx * &x, &(&x * &dx) + &WeylElement::one(&s));
    let f = BTreeMap::from([(vec![2, 0], BigRational::one())]);
    assert_eq!(act(&(&dx * &x), &f), BTreeMap::from([(vec![2, 0], q(3))]));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn product_matches_composition_of_actions(a in elem(), b in elem()) {
        let s = sig();
        let (p, r) = (element(&s, &a), element(&s, &b));
        let pr = &p * &r;
        for f in test_functions() {
            prop_assert_eq!(act(&pr, &f), act(&p, &act(&r, &f)));
        }
    }

    #[test]
    fn associative_and_distributive(a in elem(), b in elem(), c in elem()) {
        let s = sig();
        let (p, r, t) = (element(&s, &a), element(&s, &b), element(&s, &c));
        prop_assert_eq!(&(&p * &r) * &t, &p * &(&r * &t));
        prop_assert_eq!(&p * &(&r + &t), &(&p * &r) + &(&p * &t));
        prop_assert_eq!(&(&p + &r) * &t, &(&p * &t) + &(&r * &t));
    }

    #[test]
    fn pure_times_pure_is_pure(k1 in -2..=2i32, k2 in -2..=2i32, a in prop::collection::vec(term(), 1..4), b in prop::collection::vec(term(), 1..4)) {
        let s = sig();
        let (p, r) = (v_pure(&s, k1, &a), v_pure(&s, k2, &b));
        prop_assume!(!p.is_zero() && !r.is_zero());
        let pr = &p * &r;
        prop_assert!(!pr.is_zero());
        let fd = filtration_degree(&pr, &FiltrationSpec::VAlong(0)).unwrap();
        prop_assert!(fd.pure);
        prop_assert_eq!(fd.degree, i64::from(k1 + k2));
    }

    #[test]
    fn order_and_symbol_are_multiplicative(a in prop::collection::vec(term(), 1..4), b in prop::collection::vec(term(), 1..4)) {
        let s = sig();
        let (p, r) = (element(&s, &a), element(&s, &b));
        prop_assume!(!p.is_zero() && !r.is_zero());
        let pr = &p * &r;
        prop_assert_eq!(pr.order().unwrap(), p.order().unwrap() + r.order().unwrap());
        let expected = commutative_product(&symbol(&p), &symbol(&r));
        let got: Poly = symbol(&pr).into_iter().collect();
        prop_assert_eq!(got, expected);
    }

    #[test]
    fn fourier_laplace_squares_to_the_antipode(a in elem()) {
        let s = sig();
        let p = element(&s, &a);
        let twice = fourier_laplace(&fourier_laplace(&p, &[0, 1]).unwrap(), &[0, 1]).unwrap();
        let flipped = WeylElement::from_terms(&s, p.terms().map(|(m, c)| {
            let sign = if m.total_degree() % 2 == 0 { c.clone() } else { -c.clone() };
            (m.clone(), sign)
        }));
        prop_assert_eq!(twice, flipped);
    }
}
