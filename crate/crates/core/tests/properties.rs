use proptest::prelude::*;

use sasaki_core::catalog;
use sasaki_core::scalar::{rational, Chart, Rational, Scalar};
use sasaki_core::tensor::{OneForm, VectorField};

type Terms = Vec<(i64, u32, u32, u32)>;

fn r3() -> Chart {
    Chart::coordinates(["x", "y", "z"]).unwrap()
}

fn poly(chart: &Chart, terms: &Terms) -> Scalar {
    let names = chart.coords();
    let mut acc = Scalar::zero(chart);
    for &(c, a, b, e) in terms {
        let mut t = Scalar::integer(chart, c);
        for (name, k) in names.iter().zip([a, b, e]) {
            t = &t * &Scalar::coordinate(chart, name).unwrap().pow(k);
        }
        acc = &acc + &t;
    }
    acc
}

fn ratfun(chart: &Chart, num: &Terms, den: &Terms) -> Scalar {
    let d = poly(chart, den);
    let d = if d.is_zero() { Scalar::one(chart) } else { d };
    poly(chart, num).checked_div(&d).unwrap()
}

fn terms() -> impl Strategy<Value = Terms> {
    prop::collection::vec((-4i64..=4, 0u32..3, 0u32..3, 0u32..3), 0..4)
}

fn field(chart: &Chart, t: &[Terms; 3]) -> VectorField {
    VectorField::new(chart, t.iter().map(|x| poly(chart, x)).collect()).unwrap()
}

fn field_terms() -> impl Strategy<Value = [Terms; 3]> {
    [terms(), terms(), terms()]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn field_axioms(a in terms(), b in terms(), c in terms(), d in terms(), e in terms(), f in terms()) {
        let ch = r3();
        let (p, q, r) = (ratfun(&ch, &a, &b), ratfun(&ch, &c, &d), ratfun(&ch, &e, &f));
        prop_assert_eq!(&p + &q, &q + &p);
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert!((&p - &p).is_zero());
        if !q.is_zero() {
            prop_assert_eq!(&(&p / &q) * &q, p.clone());
        }
    }

    #[test]
    fn leibniz_and_quotient_rules(a in terms(), b in terms(), c in terms(), d in terms()) {
        let ch = r3();
        let (p, q) = (ratfun(&ch, &a, &b), ratfun(&ch, &c, &d));
        for v in 0..3 {
            prop_assert_eq!((&p * &q).partial(v), &(&p.partial(v) * &q) + &(&p * &q.partial(v)));
            if !q.is_zero() {
                let lhs = (&p / &q).partial(v);
                let rhs = &(&(&p.partial(v) * &q) - &(&p * &q.partial(v))) / &q.pow(2);
                prop_assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn canonical_form_is_stable(a in terms(), b in terms()) {
        let ch = r3();
        let p = ratfun(&ch, &a, &b);
        prop_assert_eq!(p.normalize(), p.clone());
        let back = Scalar::parse(&p.to_expr(), &ch).unwrap();
        prop_assert_eq!(back.to_expr(), p.to_expr());
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in terms(), c in terms(), x in -6i64..6, y in -6i64..6, z in 1i64..5) {
        let ch = r3();
        let (p, q) = (poly(&ch, &a), poly(&ch, &c));
        let pt = [rational(x, 2), rational(y, 3), rational(z, 1)];
        let (pv, qv) = (p.evaluate(&pt).unwrap(), q.evaluate(&pt).unwrap());
        prop_assert_eq!((&p * &q).evaluate(&pt).unwrap(), &pv * &qv);
        prop_assert_eq!((&p + &q).evaluate(&pt).unwrap(), &pv + &qv);
    }

    #[test]
    fn sphere_reduction_preserves_values(a in terms(), c in terms()) {
        let ambient = Chart::coordinates(["x1", "x2", "x3", "x4"]).unwrap();
        let sphere = catalog::s3().unwrap().contact().unwrap().geometry().chart().clone();
        // Lift three-variable terms to four variables by reusing the last exponent on x4.
        let lift = |t: &Terms| -> String {
            let parts: Vec<String> = t
                .iter()
                .map(|&(k, a, b, e)| format!("({k})*x1^{a}*x2^{b}*x3^{e}*x4^{e}"))
                .collect();
            if parts.is_empty() { "0".into() } else { parts.join(" + ") }
        };
        let text = format!("({}) * ({})", lift(&a), lift(&c));
        let reduced = Scalar::parse(&text, &sphere).unwrap();
        let raw = Scalar::parse(&text, &ambient).unwrap();
        let points: [[Rational; 4]; 3] = [
            [rational(3, 5), rational(4, 5), rational(0, 1), rational(0, 1)],
            [rational(2, 3), rational(1, 3), rational(2, 3), rational(0, 1)],
            [rational(1, 2), rational(-1, 2), rational(1, 2), rational(1, 2)],
        ];
        for pt in &points {
            prop_assert_eq!(reduced.evaluate(pt).unwrap(), raw.evaluate(pt).unwrap());
        }
    }

    #[test]
    fn bracket_is_antisymmetric_and_satisfies_jacobi(a in field_terms(), b in field_terms(), c in field_terms()) {
        let ch = r3();
        let (u, v, w) = (field(&ch, &a), field(&ch, &b), field(&ch, &c));
        let uv = u.lie_bracket(&v).unwrap();
        prop_assert!(uv.add(&v.lie_bracket(&u).unwrap()).is_zero());
        let jac = u.lie_bracket(&vw(&v, &w)).unwrap()
            .add(&v.lie_bracket(&vw(&w, &u)).unwrap())
            .add(&w.lie_bracket(&uv).unwrap());
        prop_assert!(jac.is_zero());
    }

    #[test]
    fn exterior_derivative_squares_to_zero(a in terms(), b in terms()) {
        let ch = r3();
        let f = ratfun(&ch, &a, &b);
        prop_assert!(OneForm::differential(&f).exterior_derivative().is_zero());
    }

    #[test]
    fn frame_expansion_round_trips(a in terms(), b in terms(), c in terms()) {
        let entry = catalog::standard_sasakian(1).unwrap();
        let s = entry.contact().unwrap();
        let geom = s.geometry();
        let ch = geom.chart().clone();
        let coeffs = vec![poly(&ch, &a), poly(&ch, &b), poly(&ch, &c)];
        let v = geom.recombine(&coeffs);
        prop_assert_eq!(geom.expand(&v), coeffs);
    }

    #[test]
    fn sphere_frame_expansion_round_trips(a in terms(), b in terms(), c in terms()) {
        let entry = catalog::s3().unwrap();
        let geom = entry.contact().unwrap().geometry().clone();
        let ch = geom.chart().clone();
        let coeffs = vec![poly(&ch, &a), poly(&ch, &b), poly(&ch, &c)];
        let v = geom.recombine(&coeffs);
        prop_assert!(v.check_tangency().unwrap());
        prop_assert_eq!(geom.expand(&v), coeffs);
    }
}

fn vw(v: &VectorField, w: &VectorField) -> VectorField {
    v.lie_bracket(w).unwrap()
}
