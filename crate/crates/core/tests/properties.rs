use cyclogon::fields::TowerElement;
use cyclogon::irreducible::{eisenstein, factor_mod_p, factor_over_rationals};
use cyclogon::numeric::{circumradius_sides, PolygonSpec, SolverConfig};
use cyclogon::scalar::parse_rational;
use cyclogon::{BiPoly, Integer, Rational, ZPoly};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn rat() -> impl Strategy<Value = Rational> {
    (-50i64..50, 1i64..12).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

/// Elements of Q(sqrt 2, sqrt(1 + sqrt 2)).
fn tower() -> impl Strategy<Value = TowerElement> {
    (rat(), rat(), rat(), rat()).prop_map(|(a, b, c, d)| {
        let s2 = TowerElement::from(Rational::from_integer(2.into())).sqrt().unwrap();
        let g = (&TowerElement::one() + &s2).sqrt().unwrap();
        let lo = |x: Rational, y: Rational| &TowerElement::from(x) + &(&TowerElement::from(y) * &s2);
        &lo(a, b) + &(&lo(c, d) * &g)
    })
}

fn zpoly(max_deg: usize, bound: i64) -> impl Strategy<Value = ZPoly> {
    prop::collection::vec(-bound..=bound, 1..=max_deg + 1).prop_map(|c| ZPoly::from_i64s(&c, 'x'))
}

fn nonzero_zpoly(max_deg: usize, bound: i64) -> impl Strategy<Value = ZPoly> {
    zpoly(max_deg, bound).prop_filter("nonzero", |p| !p.is_zero_poly())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn tower_text_and_json_round_trip(x in tower()) {
        prop_assert_eq!(TowerElement::parse(&x.to_string()).unwrap(), x.clone());
        let j = serde_json::to_string(&x).unwrap();
        let back: TowerElement = serde_json::from_str(&j).unwrap();
        prop_assert_eq!(back, x);
    }

    #[test]
    fn tower_division_undoes_multiplication(x in tower(), y in tower()) {
        prop_assume!(!y.is_zero_element());
        let p = &x * &y;
        prop_assert_eq!(p.checked_div(&y).unwrap(), x);
        prop_assert_eq!(&y * &y.checked_inv().unwrap(), TowerElement::one());
    }

    #[test]
    fn squares_are_recognized(x in tower()) {
        let sq = &x * &x;
        let r = sq.is_square().expect("a square");
        prop_assert_eq!(&r * &r, sq);
    }

    #[test]
    fn sign_matches_the_float(x in tower()) {
        let f = x.to_f64();
        prop_assume!(f.abs() > 1e-9);
        prop_assert_eq!(x.sign(), if f > 0.0 { 1 } else { -1 });
    }

    #[test]
    fn rational_text_round_trip(q in rat()) {
        prop_assert_eq!(parse_rational(&q.to_string()).unwrap(), q);
    }

    #[test]
    fn shift_is_invertible(f in zpoly(8, 20), c in -5i64..5) {
        let c = Integer::from(c);
        prop_assert_eq!(f.substitute_shift(&c).substitute_shift(&-c.clone()), f);
    }

    #[test]
    fn content_times_primitive(f in nonzero_zpoly(8, 40)) {
        let (c, p) = (f.content(), f.primitive());
        prop_assert!(p.content().is_one());
        prop_assert!(p.scale(&c) == f || p.scale(&-c) == f);
    }

    #[test]
    fn reciprocal_twice_is_primitive(terms in prop::collection::vec((0u32..5, 0u32..4, -9i64..10), 1..8), c0 in 1i64..9) {
        let mut p = BiPoly::zero_in(('t', 'y'));
        p.add_term(0, 0, Rational::from_integer(c0.into()));
        for (i, j, c) in terms {
            p.add_term(i, j, Rational::from_integer(c.into()));
        }
        prop_assume!(p.terms().any(|(&(i, _), _)| i == 0));
        let twice = p.reciprocal_transform().unwrap().reciprocal_transform().unwrap();
        prop_assert_eq!(twice, p.primitive());
    }

    #[test]
    fn degree_is_additive(f in nonzero_zpoly(6, 9), g in nonzero_zpoly(6, 9)) {
        prop_assert_eq!((&f * &g).degree().unwrap(), f.degree().unwrap() + g.degree().unwrap());
    }

    #[test]
    fn factorization_multiplies_back(f in nonzero_zpoly(4, 6), g in nonzero_zpoly(4, 6)) {
        let h = &f * &g;
        prop_assume!(h.degree().unwrap() > 0);
        let fact = factor_over_rationals(&h).unwrap();
        prop_assert_eq!(fact.expand('x'), h);
        for (p, _) in &fact.factors {
            prop_assert!(p.content().is_one());
        }
    }

    #[test]
    fn modular_factors_multiply_back(f in nonzero_zpoly(7, 30), p in prop::sample::select(vec![3u64, 5, 7, 11, 13])) {
        // skipped when f is not squarefree or loses degree mod p
        if let Ok(fs) = factor_mod_p(&f, p) {
            let lc = (f.leading().unwrap() % Integer::from(p) + Integer::from(p)) % Integer::from(p);
            let prod = fs.iter().fold(ZPoly::from_i64s(&[1], 'x'), |acc, g| {
                &acc * &ZPoly::new(g.iter().map(|&c| Integer::from(c)).collect(), 'x')
            });
            let diff = &prod.scale(&lc) - &f;
            prop_assert!(diff.coeffs().iter().all(|c| (c % Integer::from(p)).is_zero()));
        }
    }

    #[test]
    fn eisenstein_polynomials_do_not_split(
        p in prop::sample::select(vec![2i64, 3, 5, 7]),
        lead in 1i64..20,
        mid in prop::collection::vec(-6i64..6, 1..6),
        k in 1i64..6,
    ) {
        prop_assume!(lead % p != 0 && k % p != 0);
        let mut c = vec![p * k];
        c.extend(mid.iter().map(|m| m * p));
        c.push(lead);
        let f = ZPoly::from_i64s(&c, 'x');
        prop_assert!(eisenstein(&f, 0).is_some());
        let fact = factor_over_rationals(&f).unwrap();
        prop_assert_eq!(fact.factors.len(), 1);
        prop_assert_eq!(fact.factors[0].1, 1);
    }

    #[test]
    fn circumradius_scales(sides in prop::collection::vec(1i64..20, 3..8), lambda in 1i64..9) {
        let q: Vec<Rational> = sides.iter().map(|&s| Rational::from_integer(s.into())).collect();
        let spec = PolygonSpec::from_lengths(q.clone());
        prop_assume!(cyclogon::numeric::exists_cyclic(&spec));
        let cfg = SolverConfig::default();
        let r = circumradius_sides::<f64>(&spec, &cfg).unwrap().radius;
        let l = Rational::from_integer(lambda.into());
        let scaled = PolygonSpec::from_lengths(q.iter().map(|s| s * &l).collect());
        let rs = circumradius_sides::<f64>(&scaled, &cfg).unwrap().radius;
        prop_assert!((rs - lambda as f64 * r).abs() <= 1e-9 * rs);
    }

    #[test]
    fn side_order_is_irrelevant(sides in prop::collection::vec(1i64..6, 3..5), seed in any::<u64>()) {
        let q: Vec<Rational> = sides.iter().map(|&s| Rational::from_integer(s.into())).collect();
        prop_assume!(cyclogon::numeric::exists_cyclic(&PolygonSpec::from_lengths(q.clone())));
        let mut shuffled = q.clone();
        let n = shuffled.len();
        shuffled.rotate_left((seed % n as u64) as usize);
        shuffled.swap(0, n - 1);
        let a = cyclogon::report::check_sides(&q).unwrap();
        let b = cyclogon::report::check_sides(&shuffled).unwrap();
        prop_assert_eq!(a.values, b.values);
        prop_assert_eq!(a.verdict, b.verdict);
    }
}

#[test]
fn zero_is_its_own_square_root() {
    let z = TowerElement::zero();
    assert_eq!(z.is_square(), Some(TowerElement::zero()));
}
