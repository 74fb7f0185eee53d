use gkz_hodge_core::gkz::build_as;
use gkz_hodge_core::homological::{
    graded_koszul_homology, strictness_check, CommutativeQuotient, FilteredQuotient, Grading, IshidaSetup,
};
use gkz_hodge_core::linalg::IntMatrix;
use gkz_hodge_core::weyl::{parse_element, Signature, WeylElement};
use proptest::prelude::*;

fn setups() -> Vec<IshidaSetup> {
    let mats: Vec<Vec<Vec<i64>>> = vec![
        vec![vec![1]],
        vec![vec![1, 2]],
        vec![vec![1, 1], vec![0, 1]],
        vec![vec![1, 0], vec![0, 1]],
    ];
    mats.into_iter().map(|r| IshidaSetup::new(&build_as(&IntMatrix::from_rows(&r).unwrap()).unwrap()).unwrap()).collect()
}

/// `w d_w + c` as operator text.
fn euler_plus(c: i64) -> String {
    if c < 0 {
        format!("w*d_w - {}", -c)
    } else {
        format!("w*d_w + {c}")
    }
}

fn padded(mut v: Vec<usize>, len: usize) -> Vec<usize> {
    v.resize(len, 0);
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ishida_pieces_are_complexes(which in 0..4usize, x in prop::collection::vec(-6..=4i64, 5)) {
        let setups = setups();
        let s = &setups[which];
        let x = &x[..s.a_s.rows()];
        let piece = s.piece(x);
        prop_assert!(piece.is_complex());
        let cech = s.cech_piece(x);
        prop_assert!(cech.is_complex());
        if s.in_s(x) {
            let len = piece.dims.len().max(cech.dims.len());
            prop_assert_eq!(padded(piece.cohomology(), len), padded(cech.cohomology(), len), "x = {:?}", x);
        }
        // Cohomology can only live in degrees of the localization.
        if !s.in_s(x) {
            prop_assert!(piece.cohomology().iter().all(|&h| h == 0));
        }
    }

    #[test]
    fn koszul_of_powers_of_distinct_variables(a in 1..4usize, b in 1..4usize, c in 1..3usize) {
        let sig = Signature::new(&["x", "y", "z"]).unwrap().into_arc();
        let ring = CommutativeQuotient::new(&sig, &[], vec![vec![1]; 3]).unwrap();
        let second = if b == 1 { "y + x".to_string() } else { format!("y^{b} + x*y^{}", b - 1) };
        let f = [format!("x^{a}"), second, format!("z^{c}")];
        let f: Vec<WeylElement> = f.iter().map(|t| parse_element(&sig, t).unwrap()).collect();
        let rep = graded_koszul_homology(&ring, &f, 6).unwrap();
        prop_assert!(rep.all_complexes);
        prop_assert!(rep.positive_homology_vanishes);
        // H_0 = C[x, y, z] / (x^a, y^b + x y^{b-1}, z^c) has dimension a b c in total.
        let total: usize = rep.h0().values().sum();
        prop_assert_eq!(total, a * b * c);
    }

    #[test]
    fn strictness_is_invariant_under_a_common_shift(
        alpha in -3..=3i64,
        s0 in -2..=2i64,
        t0 in -2..=2i64,
        k in -3..=3i64,
        by_partial in any::<bool>(),
    ) {
        let sig = Signature::new(&["w"]).unwrap().into_arc();
        let (target_rel, mult) = if by_partial {
            (euler_plus(-alpha - 1), "d_w")
        } else {
            (euler_plus(1 - alpha), "w")
        };
        let src_rel = parse_element(&sig, &euler_plus(-alpha)).unwrap();
        let tgt_rel = parse_element(&sig, &target_rel).unwrap();
        let r = parse_element(&sig, mult).unwrap();
        let g = Grading::new(vec![vec![1]]).unwrap();
        let run = |shift: i64| {
            let src = FilteredQuotient::new(std::slice::from_ref(&src_rel), s0 + shift).unwrap();
            let tgt = FilteredQuotient::new(std::slice::from_ref(&tgt_rel), t0 + shift).unwrap();
            strictness_check(&src, &tgt, &r, &g, 3).unwrap()
        };
        let (base, moved) = (run(0), run(k));
        prop_assert_eq!(base.filtered, moved.filtered);
        prop_assert_eq!(base.strict, moved.strict);
        prop_assert_eq!(base.failures.len(), moved.failures.len());
    }
}
