use gauduchon::fixtures::find;
use gauduchon::formal::{lck_torsion, ContractionValues, DerivativeTable, Dual};
use gauduchon::geometry::kahler_like_residual;
use gauduchon::report::{build_report, ReportDocument};
use gauduchon::scalar::{format_rational, gauss, parse_rational, rational, GaussRational, Ring};
use gauduchon::system::{determinant, factored_determinant, Coeffs};
use gauduchon::{GaussPoly, RationalPoly};
use num_traits::Zero;
use proptest::prelude::*;

fn small_rational() -> impl Strategy<Value = num_rational::BigRational> {
    (-6i64..=6, 1i64..=4).prop_map(|(p, q)| rational(p, q))
}

fn lck_vector(n: usize) -> impl Strategy<Value = Vec<GaussRational>> {
    prop::collection::vec((small_rational(), small_rational()).prop_map(|(re, im)| gauss(re, im)), n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn lck_family_satisfies_its_constraints(a in (2usize..=4).prop_flat_map(lck_vector)) {
        let n = a.len();
        let p = lck_torsion(&a).unwrap();
        prop_assert_eq!(p.cyclic_residual(), 0.0);
        prop_assert_eq!(p.eta_contraction_residual(), 0.0);
        let one_minus_n = GaussRational::from_i64(1 - n as i64);
        for (e, ai) in p.eta().iter().zip(&a) {
            prop_assert_eq!(e.clone(), one_minus_n.clone() * ai.clone());
        }
        let cv = ContractionValues::compute(n, p.torsion());
        prop_assert_eq!(cv.scalar_a_tilde.clone(), cv.scalar_a.clone() + cv.scalar_a.clone());
        prop_assert!(cv.scalar_c.im.is_zero() && cv.scalar_c.re >= rational(0, 1));
        let ix = cv.ix();
        for i in 0..n {
            for j in 0..n {
                prop_assert_eq!(cv.v[ix.i2(i, j)].clone(), cv.v[ix.i2(j, i)].conj());
                prop_assert_eq!(cv.w[ix.i2(i, j)].clone(), cv.w[ix.i2(j, i)].conj());
            }
        }
    }

    #[test]
    fn derivative_of_conjugate_is_conjugate_of_opposite(a in lck_vector(3)) {
        let p = lck_torsion(&a).unwrap().map(|x| GaussPoly::constant(x.clone()));
        let k = Coeffs::new(GaussPoly::var());
        let tab = DerivativeTable::by_substitution(&p, &k);
        let ix = p.ix();
        for q in 0..27 {
            let (kk, i, j) = (q / 9, (q / 3) % 3, q % 3);
            for m in 0..3 {
                let jet = Dual::new(p.torsion()[q].clone(), k.c.clone() * tab.t_hol(kk, i, j, m).clone(), tab.t_anti[ix.i4(kk, i, j, m)].clone());
                let bar = jet.conj();
                prop_assert_eq!(&bar.d, &tab.t_anti(kk, i, j, m).conj());
                prop_assert_eq!(&bar.db, &(k.c.clone() * tab.t_hol(kk, i, j, m).clone()).conj());
            }
        }
    }

    #[test]
    fn rational_text_round_trips(p in -1000i64..1000, q in 1i64..1000) {
        let r = rational(p, q);
        prop_assert_eq!(parse_rational(&format_rational(&r)), Some(r));
    }

    #[test]
    fn determinant_matches_factored_form_pointwise(s in small_rational()) {
        prop_assert_eq!(determinant().eval(&s), factored_determinant().eval(&s));
    }

    #[test]
    fn torus_is_kahler_like_everywhere(s in small_rational()) {
        let m = find("torus3").unwrap().load();
        let r = kahler_like_residual(&m.model, &s);
        prop_assert!(r.is_kahler_like(1e-12) && r.is_flat(1e-12));
    }

    #[test]
    fn report_json_round_trips(s in prop::collection::vec(small_rational(), 1..5), name in prop::sample::select(vec!["torus2", "iwasawa", "hopf"])) {
        let doc = build_report(&find(name).unwrap().load(), &s, 1e-9);
        prop_assert_eq!(ReportDocument::from_json(&doc.to_json()).unwrap(), doc);
    }
}

#[test]
fn coefficient_polynomials_have_the_documented_shape() {
    let k = Coeffs::new(RationalPoly::var());
    assert_eq!(k.a, RationalPoly::from_i64(&[0, -4, 8, -4]));
    assert_eq!(k.b, RationalPoly::from_i64(&[0, -4, 10, -5]));
    assert_eq!(k.c, RationalPoly::from_i64(&[4, -12, 8]));
    assert!(!k.c.is_zero());
}
