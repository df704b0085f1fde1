use ncdeform::abelian::{GroupContext, GroupPoint};
use ncdeform::deform::FourierElement;
use ncdeform::{sampling, Complex64};
use ncdeform_cli::document::{element_from_json, element_to_json, ElementDocument};
use ncdeform_cli::Kind;
use proptest::prelude::*;
use rand::Rng;

fn contexts() -> Vec<GroupContext> {
    vec![
        GroupContext::lattice(1).unwrap(),
        GroupContext::lattice(2).unwrap(),
        GroupContext::lattice(3).unwrap(),
        GroupContext::finite(vec![5]).unwrap(),
        GroupContext::finite(vec![4, 6]).unwrap(),
        GroupContext::finite(vec![3, 3, 3]).unwrap(),
    ]
}

fn bitwise_equal(a: &FourierElement, b: &FourierElement) -> bool {
    a.context() == b.context()
        && a.support_len() == b.support_len()
        && a.iter().zip(b.iter()).all(|((p, x), (q, y))| p == q && x.re.to_bits() == y.re.to_bits() && x.im.to_bits() == y.im.to_bits())
}

#[test]
fn round_trip_500_random_elements_per_context() {
    let mut rng = sampling::seeded(500);
    for ctx in contexts() {
        for k in 0..500 {
            let mut a = sampling::element(&mut rng, &ctx, 8, 6);
            // spread magnitudes so that short and long decimal forms both occur
            let e: i32 = rng.gen_range(-30..30);
            a = a.scale(Complex64::new(10f64.powi(e), 0.0));
            let back = element_from_json(&element_to_json(&a)).unwrap();
            assert!(bitwise_equal(&a, &back), "context {ctx:?}, sample {k}");
        }
    }
}

proptest! {
    #[test]
    fn round_trip_is_bit_exact_for_any_finite_coefficient(re in any::<f64>().prop_filter("finite", |x| x.is_finite()), im in any::<f64>().prop_filter("finite", |x| x.is_finite())) {
        let ctx = GroupContext::lattice(2).unwrap();
        let z = Complex64::new(re, im);
        prop_assume!(z.norm() >= ncdeform::deform::CANONICAL_THRESHOLD || z.norm().is_infinite());
        let a = FourierElement::from_coeffs(&ctx, [(GroupPoint::new(vec![1, -2]), z)]).unwrap();
        prop_assert!(bitwise_equal(&a, &element_from_json(&element_to_json(&a)).unwrap()));
    }
}

#[test]
fn document_layout() {
    let ctx = GroupContext::finite(vec![5]).unwrap();
    let a = FourierElement::from_coeffs(&ctx, [(GroupPoint::new(vec![3]), Complex64::new(0.1, -2.5))]).unwrap();
    let v: serde_json::Value = serde_json::from_str(&element_to_json(&a)).unwrap();
    assert_eq!(
        v,
        serde_json::json!({
            "context": {"rank": 1, "mode": "finite", "moduli": [5]},
            "coefficients": [{"point": [3], "re": "0.1", "im": "-2.5"}]
        })
    );
}

#[test]
fn parse_errors_name_the_offending_coefficient() {
    let text = r#"{"context": {"rank": 2, "mode": "lattice"},
        "coefficients": [{"point": [0, 0], "re": "1", "im": "0"},
                         {"point": [1, 2, 3], "re": "1", "im": "0"}]}"#;
    let err = element_from_json(text).unwrap_err();
    assert_eq!(err.kind, Kind::Validation);
    assert!(err.message.contains("coefficients[1]"), "{}", err.message);

    let bad_number = r#"{"context": {"rank": 1, "mode": "lattice"}, "coefficients": [{"point": [0], "re": "1,5", "im": "0"}]}"#;
    assert!(element_from_json(bad_number).unwrap_err().message.contains("coefficients[0].re"));

    let infinite = r#"{"context": {"rank": 1, "mode": "lattice"}, "coefficients": [{"point": [0], "re": "inf", "im": "0"}]}"#;
    assert!(element_from_json(infinite).unwrap_err().message.contains("finite"));

    let outside = r#"{"context": {"rank": 1, "mode": "finite", "moduli": [5]}, "coefficients": [{"point": [5], "re": "1", "im": "0"}]}"#;
    assert!(element_from_json(outside).unwrap_err().message.contains("coefficients[0].point"));

    let no_moduli = r#"{"context": {"rank": 1, "mode": "finite"}, "coefficients": []}"#;
    assert!(element_from_json(no_moduli).unwrap_err().message.contains("moduli"));
}

#[test]
fn duplicate_points_are_summed() {
    let text = r#"{"context": {"rank": 1, "mode": "lattice"},
        "coefficients": [{"point": [2], "re": "0.5", "im": "0"}, {"point": [2], "re": "0.25", "im": "1"}]}"#;
    let a = element_from_json(text).unwrap();
    assert_eq!(a.support_len(), 1);
    assert_eq!(a.get(&GroupPoint::new(vec![2])), Complex64::new(0.75, 1.0));
    let doc: ElementDocument = serde_json::from_str(&element_to_json(&a)).unwrap();
    assert_eq!(doc.coefficients.len(), 1);
}
