use num_bigint::BigInt;
use proptest::prelude::*;
use vinesieve::obstruction::{
    d_number_test, fp_dimensions_exact, is_algebraic_integer, lambda_min_poly, norm_squared_min_poly, DNumberVerdict,
};
use vinesieve::poly::charpoly::char_poly;
use vinesieve::survey::canonical_vines;
use vinesieve::{Bigraph, IntPoly};

fn poly() -> impl Strategy<Value = IntPoly> {
    prop::collection::vec(-20i64..=20, 2..6).prop_filter_map("nonzero leading term", |c| {
        let p = IntPoly::from_i64s(&c);
        (p.degree() > 0).then_some(p)
    })
}

proptest! {
    #[test]
    fn integrality_ignores_scaling(p in poly(), c in prop_oneof![-9i64..=-1, 1i64..=9]) {
        let scaled = &IntPoly::from_i64s(&[c]) * &p;
        prop_assert_eq!(is_algebraic_integer(&p), is_algebraic_integer(&scaled));
    }

    #[test]
    fn d_number_ignores_sign(p in poly()) {
        prop_assert_eq!(d_number_test(&p), d_number_test(&-&p));
    }

    #[test]
    fn non_monic_is_not_an_integer(p in poly(), c in 2i64..=9) {
        let scaled = &IntPoly::from_i64s(&[c]) * &p;
        prop_assert_eq!(d_number_test(&scaled), DNumberVerdict::NotAlgebraicInteger);
    }

    #[test]
    fn quadratic_d_numbers(t in -30i64..=30, n in -30i64..=30) {
        // x^2 - t x + n is a d-number iff n | t^2
        let m = IntPoly::from_i64s(&[n, -t, 1]);
        let expected = if n == 0 { t == 0 } else { (t * t) % n == 0 };
        prop_assert_eq!(d_number_test(&m).passed(), expected);
    }

    #[test]
    fn rational_integers_are_d_numbers(k in -1000i64..=1000) {
        prop_assert!(d_number_test(&IntPoly::from_i64s(&[-k, 1])).passed());
    }
}

fn small_translate() -> impl Strategy<Value = Bigraph> {
    let vines: Vec<String> = canonical_vines().into_iter().map(|v| v.graph).filter(|g| g.len() <= 24).collect();
    (0..vines.len(), 0usize..3).prop_map(move |(i, j)| Bigraph::parse(&vines[i]).unwrap().translate(j))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn spectrum_is_symmetric(g in small_translate()) {
        let m = g.adjacency_matrix();
        for i in 0..m.size {
            for j in 0..m.size {
                if m.get(i, j) > 0 {
                    prop_assert_ne!(m.parity[i], m.parity[j]);
                }
            }
        }
        let p = char_poly(&m);
        let sign = if m.size % 2 == 0 { BigInt::from(1) } else { BigInt::from(-1) };
        prop_assert_eq!(p.negate_var(), &IntPoly::new(vec![sign]) * &p);
    }

    #[test]
    fn dimensions_are_an_exact_eigenvector(g in small_translate()) {
        let m = g.adjacency_matrix();
        let l2 = norm_squared_min_poly(&g).unwrap();
        let (lambda, dims) = fp_dimensions_exact(&m, &lambda_min_poly(&l2).unwrap()).unwrap();
        prop_assert_eq!(dims[m.start_index].clone(), lambda.field().from_int(1));
        for i in 0..m.size {
            let mut acc = lambda.field().from_int(0);
            for j in 0..m.size {
                acc = acc.add(&lambda.field().from_int(m.get(i, j) as i64).mul(&dims[j]));
            }
            prop_assert_eq!(acc, lambda.mul(&dims[i]));
        }
        prop_assert_eq!(lambda.mul(&lambda).min_poly(), l2);
    }
}
