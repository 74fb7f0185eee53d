use gkz_hodge_core::linalg::{
    kernel_lattice, nonneg_integer_solve, rank, smith_normal_form, IntMatrix, NonnegSolve,
};
use gkz_hodge_core::toric::{
    chart_matrix, cprime_decompositions, facet_normals, gorenstein_vector, homogenize, semigroup_membership,
    Membership, DEFAULT_SATURATION_BOUND,
};
use proptest::prelude::*;

fn matrix(rows: usize, cols: usize, lo: i64, hi: i64) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec(lo..=hi, rows * cols).prop_map(move |v| {
        IntMatrix::from_rows(&v.chunks(cols).map(<[i64]>::to_vec).collect::<Vec<_>>()).unwrap()
    })
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Least total degree of `k in {0..=cap}^s` with `M k = t`, by enumeration.
fn brute_min_degree(m: &IntMatrix, t: &[i64], cap: i64) -> Option<i64> {
    let s = m.cols();
    let mut best = None;
    let mut k = vec![0i64; s];
    loop {
        if m.mul_vec_i64(&k).unwrap() == t {
            let deg: i64 = k.iter().sum();
            best = Some(best.map_or(deg, |b: i64| b.min(deg)));
        }
        let mut i = 0;
        while i < s && k[i] == cap {
            k[i] = 0;
            i += 1;
        }
        if i == s {
            return best;
        }
        k[i] += 1;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn smith_recomposes(m in (1..4usize, 1..5usize).prop_flat_map(|(r, c)| matrix(r, c, -6, 6))) {
        let sm = smith_normal_form(&m);
        prop_assert!(sm.verify(&m));
        prop_assert_eq!(sm.rank, rank(&m));
    }

    #[test]
    fn kernel_vectors_are_relations(m in (1..4usize, 1..6usize).prop_flat_map(|(r, c)| matrix(r, c, -4, 4))) {
        let k = kernel_lattice(&m);
        prop_assert_eq!(k.rows(), m.cols() - rank(&m));
        for v in k.to_i64_rows().unwrap() {
            prop_assert!(m.mul_vec_i64(&v).unwrap().iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn nonneg_solutions_reverify(m in matrix(2, 3, 0, 3), t in prop::collection::vec(0..8i64, 2)) {
        let oracle = brute_min_degree(&m, &t, 8);
        match nonneg_integer_solve(&m, &t, 64).unwrap() {
            NonnegSolve::Found(k) => {
                prop_assert!(k.iter().all(|&x| x >= 0));
                prop_assert_eq!(m.mul_vec_i64(&k).unwrap(), t.clone());
                if let Some(d) = oracle {
                    prop_assert!(k.iter().sum::<i64>() <= d);
                }
            }
            NonnegSolve::Infeasible => prop_assert_eq!(oracle, None),
            NonnegSolve::BoundExceeded(_) => {}
        }
    }

    #[test]
    fn membership_is_monotone(
        m in matrix(2, 3, -2, 3),
        extra in prop::collection::vec(-2..=3i64, 2),
        x in prop::collection::vec(-4..=6i64, 2),
    ) {
        prop_assume!(facet_normals(&m).is_ok());
        let mut cols = m.columns_i64().unwrap();
        cols.push(extra);
        let bigger = IntMatrix::from_columns(2, &cols).unwrap();
        if let Membership::Member { k } = semigroup_membership(&m, &x, 64).unwrap() {
            prop_assert_eq!(m.mul_vec_i64(&k).unwrap(), x.clone());
            let again = semigroup_membership(&bigger, &x, 64).unwrap();
            prop_assert!(matches!(again, Membership::Member { .. }), "{:?}", again);
        }
    }

    #[test]
    fn gorenstein_certificates(m in matrix(2, 4, -2, 2)) {
        let Ok(Some(g)) = gorenstein_vector(&m, 12) else { return Ok(()) };
        let cone = facet_normals(&m).unwrap();
        for v in &cone.facet_normals {
            prop_assert_eq!(dot(v, &g.c), 1);
        }
        // Interior points near the origin lie in c + NB.
        for a in -4..=4i64 {
            for b in -4..=4i64 {
                let x = [a, b];
                if cone.is_interior(&x) {
                    let d = [a - g.c[0], b - g.c[1]];
                    prop_assert!(matches!(semigroup_membership(&m, &d, 64).unwrap(), Membership::Member { .. }), "{:?}", x);
                }
            }
        }
        for cp in cprime_decompositions(&m, &g.c).unwrap() {
            let chosen: Vec<usize> = cp.j1.iter().chain(&cp.j2).copied().collect();
            for v in &cone.facet_normals {
                prop_assert_eq!(dot(v, &cp.cprime), dot(v, &g.c));
                let pairings: Vec<i64> = chosen.iter().map(|&j| dot(v, &cone.generators[j])).collect();
                prop_assert_eq!(pairings.iter().filter(|&&p| p == 1).count(), 1);
                prop_assert!(pairings.iter().all(|&p| p == 0 || p == 1));
            }
        }
    }
}

#[test]
fn chart_changes_keep_the_gorenstein_vector() {
    for rows in [vec![vec![1i64, 1]], vec![vec![1, 0, 1], vec![0, 1, 1]], vec![vec![1, 1, 1], vec![0, 1, 2]], vec![vec![1, -1, 0], vec![0, 1, 1]]] {
        let a = IntMatrix::from_rows(&rows).unwrap();
        let at = homogenize(&a);
        let g = gorenstein_vector(&at, DEFAULT_SATURATION_BOUND).unwrap().expect("Gorenstein");
        for u in 0..=a.cols() {
            let (_, c_u) = chart_matrix(&a, u).unwrap();
            let moved = c_u.mul(&at).unwrap();
            let gu = gorenstein_vector(&moved, DEFAULT_SATURATION_BOUND).unwrap().expect("Gorenstein in every chart");
            assert_eq!(gu.c, c_u.mul_vec_i64(&g.c).unwrap(), "{rows:?} u = {u}");
        }
    }
}
