use flatfloer::coeffs::{rank_over_lambda, NovMatrix, Novikov};
use flatfloer::geom::{generators, surgery, Curve, Deck, Surface, Vec2};
use flatfloer::rational::{int, rat, Rat};
use flatfloer::scene::{curve_text, parse_scene};
use proptest::prelude::*;

fn exponent() -> impl Strategy<Value = Rat> {
    (0i64..=8, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

fn series() -> impl Strategy<Value = Novikov> {
    prop::collection::vec(exponent(), 0..4).prop_map(Novikov::from_exponents)
}

fn nonzero_series() -> impl Strategy<Value = Novikov> {
    series().prop_filter("nonzero", |x| !x.is_zero())
}

fn matrix(max: usize) -> impl Strategy<Value = NovMatrix> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(series(), c), r)).prop_map(NovMatrix::from_rows)
}

fn primitive() -> impl Strategy<Value = (i64, i64)> {
    (-3i64..=3, -3i64..=3).prop_filter("primitive", |&(a, b)| num::integer::gcd(a, b) == 1)
}

fn small_point() -> impl Strategy<Value = Vec2> {
    (-12i64..=12, -12i64..=12).prop_map(|(x, y)| Vec2::new(rat(x, 13), rat(y, 17)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn addition_is_an_abelian_group_of_exponent_two(a in series(), b in series(), c in series()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert!(a.add(&a).is_zero());
        prop_assert_eq!(a.add(&Novikov::zero()), a);
    }

    #[test]
    fn multiplication_is_commutative_associative_and_distributive(a in series(), b in series(), c in series()) {
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.mul(&Novikov::one()), a);
    }

    #[test]
    fn valuation_is_additive(a in nonzero_series(), b in nonzero_series()) {
        let ab = a.mul(&b);
        prop_assert_eq!(ab.valuation().cloned(), Some(a.valuation().unwrap() + b.valuation().unwrap()));
    }

    #[test]
    fn inverse_holds_below_the_order(a in nonzero_series(), order in 1i64..=6) {
        let order = int(order);
        let inv = a.inverse(&order).unwrap();
        prop_assert!(a.mul(&inv).add(&Novikov::one()).is_zero_to_precision());
    }

    #[test]
    fn rank_is_invariant_under_row_operations(m in matrix(4), s in series(), i in 0usize..4, j in 0usize..4) {
        let r = rank_over_lambda(&m).unwrap();
        prop_assert!(r <= m.rows().min(m.cols()));
        let (i, j) = (i % m.rows(), j % m.rows());
        let mut rows: Vec<Vec<Novikov>> = (0..m.rows()).map(|r| (0..m.cols()).map(|c| m.get(r, c).clone()).collect()).collect();
        if i != j {
            for c in 0..m.cols() {
                rows[j][c] = rows[j][c].add(&s.mul(&rows[i][c]));
            }
        }
        rows.swap(0, i);
        prop_assert_eq!(rank_over_lambda(&NovMatrix::from_rows(rows)).unwrap(), r);
    }

    #[test]
    fn rank_of_the_transpose_agrees(m in matrix(4)) {
        let t = NovMatrix::from_rows((0..m.cols()).map(|c| (0..m.rows()).map(|r| m.get(r, c).clone()).collect()).collect());
        prop_assert_eq!(rank_over_lambda(&t).unwrap(), rank_over_lambda(&m).unwrap());
    }

    #[test]
    fn torus_lines_meet_det_times(p in small_point(), q in small_point(), a in primitive(), b in primitive()) {
        let det = a.0 * b.1 - a.1 * b.0;
        prop_assume!(det != 0);
        let l = Curve::line("l", Surface::Torus, p, Vec2::ints(a.0, a.1)).unwrap();
        let m = Curve::line("m", Surface::Torus, q, Vec2::ints(b.0, b.1)).unwrap();
        let lm = generators(Surface::Torus, &l, &m, &None, None).unwrap();
        let ml = generators(Surface::Torus, &m, &l, &None, None).unwrap();
        prop_assert_eq!(lm.len() as i64, det.abs());
        prop_assert_eq!(ml.len(), lm.len());
    }

    #[test]
    fn plane_generator_counts_are_symmetric(p in small_point(), q in small_point(), a in primitive(), b in primitive(), bend in small_point()) {
        let l = Curve::line("l", Surface::Plane, p, Vec2::ints(a.0, a.1)).unwrap();
        let path = Curve::new("m", vec![flatfloer::geom::Component::Path { vertices: vec![q, bend], incoming: Vec2::ints(b.0, b.1), outgoing: Vec2::ints(b.1, -b.0) }]);
        let Ok(m) = path else { return Ok(()) };
        match (generators(Surface::Plane, &l, &m, &None, None), generators(Surface::Plane, &m, &l, &None, None)) {
            (Ok(x), Ok(y)) => prop_assert_eq!(x.len(), y.len()),
            (Err(_), Err(_)) => {}
            (x, y) => prop_assert!(false, "one direction failed: {:?} {:?}", x.map(|g| g.len()), y.map(|g| g.len())),
        }
    }

    #[test]
    fn surgery_adds_homology_classes(a in primitive(), k in -2i64..=2, flip in any::<bool>(), q in small_point()) {
        // Only a single crossing gives an embedded result, so b is drawn with a × b = ±1.
        let g = num::integer::Integer::extended_gcd(&a.0, &a.1);
        let unit = if g.gcd < 0 { -1 } else { 1 };
        let dual = (-g.y * unit, g.x * unit);
        let sign = if flip { -1 } else { 1 };
        let b = (sign * dual.0 + k * a.0, sign * dual.1 + k * a.1);
        let det = a.0 * b.1 - a.1 * b.0;
        prop_assert_eq!(det, sign);
        let l1 = Curve::line("l1", Surface::Torus, Vec2::ints(0, 0), Vec2::ints(a.0, a.1)).unwrap();
        let l2 = Curve::line("l2", Surface::Torus, q, Vec2::ints(b.0, b.1)).unwrap();
        let gens = generators(Surface::Torus, &l1, &l2, &None, None).unwrap();
        // A crossing within eps of a base vertex is rejected as EpsTooLarge.
        let s = surgery(Surface::Torus, &l1, &l2, &gens[0].point, &rat(1, 4096), "s");
        prop_assume!(!matches!(s, Err(flatfloer::geom::GeomError::EpsTooLarge(_))));
        let s = s.unwrap();
        // The l2 arc is traversed against the orientation that makes the corner convex.
        let expected = Deck(a.0 - sign * b.0, a.1 - sign * b.1);
        let got = s.homology_class();
        prop_assert!(got == expected || got == expected.neg(), "{:?} vs {:?}", got, expected);
    }

    #[test]
    fn curve_text_round_trips(vs in prop::collection::vec(small_point(), 1..4), m in primitive()) {
        let c = Curve::new("c", vec![flatfloer::geom::Component::Loop { vertices: vs, monodromy: Deck(m.0, m.1) }]);
        let Ok(c) = c else { return Ok(()) };
        let text = format!("[surface]\nkind = torus\n{}", curve_text(&c));
        if let Ok(scene) = parse_scene(&text) {
            prop_assert_eq!(&scene.curves[0], &c);
            prop_assert_eq!(curve_text(&scene.curves[0]), curve_text(&c));
        }
    }
}
