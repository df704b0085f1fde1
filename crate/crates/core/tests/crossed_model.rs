use ncdeform::abelian::{FiniteVector, GroupContext};
use ncdeform::cocycles::{Bicharacter, TwoCocycle};
use ncdeform::crossed::{
    crossed_conv, deformed_dual_action, dual_action, fixed_point_dimension, fixed_point_test, i_map, spectral_project,
    twisted_crossed_dual, verify_i_homomorphism, CrossedElement, DeformedActionData,
};
use ncdeform::{sampling, Complex64};

fn random(ctx: &GroupContext, seed: u64) -> CrossedElement {
    let mut rng = sampling::seeded(seed);
    CrossedElement::from_fn(ctx, |_, _| sampling::unit_disc(&mut rng)).unwrap()
}

#[test]
fn crossed_convolution_is_associative() {
    for ctx in [GroupContext::finite(vec![5]).unwrap(), GroupContext::finite(vec![3, 3]).unwrap()] {
        for seed in 0..5 {
            let (a, b, c) = (random(&ctx, 3 * seed), random(&ctx, 3 * seed + 1), random(&ctx, 3 * seed + 2));
            let lhs = crossed_conv(&crossed_conv(&a, &b).unwrap(), &c).unwrap();
            let rhs = crossed_conv(&a, &crossed_conv(&b, &c).unwrap()).unwrap();
            assert!(lhs.max_abs_diff(&rhs) <= 1e-12);
        }
    }
}

#[test]
fn dual_action_fixes_exactly_the_zero_fibre() {
    let ctx = GroupContext::finite(vec![5]).unwrap();
    let f = FiniteVector::from_fn(&ctx, |x| Complex64::new(1.0 + x.coords()[0] as f64, -0.5)).unwrap();
    let at_zero = CrossedElement::supported_at(&ctx, &ctx.zero(), f.clone()).unwrap();
    let at_two = CrossedElement::supported_at(&ctx, &ctx.point(vec![2]).unwrap(), f).unwrap();
    let moved = ctx.points().any(|xi| dual_action(&xi, &at_two).unwrap().max_abs_diff(&at_two) > 1e-3);
    assert!(moved);
    for xi in ctx.points() {
        assert_eq!(dual_action(&xi, &at_zero).unwrap(), at_zero);
    }
}

#[test]
fn deformed_dual_action_is_a_group_action() {
    // |V| ≤ 9, all pairs
    let ctx = GroupContext::uniform(2, 3).unwrap();
    let sigma = Bicharacter::finite_from_rows(&ctx, &[vec![0, 1], vec![2, 0]]).unwrap();
    let data = DeformedActionData::standard(sigma).unwrap();
    let a = random(&ctx, 4);
    for xi in ctx.points() {
        let axi = deformed_dual_action(&data, &xi, &a).unwrap();
        for eta in ctx.points() {
            let lhs = deformed_dual_action(&data, &eta, &axi).unwrap();
            let rhs = deformed_dual_action(&data, &ctx.add(&xi, &eta), &a).unwrap();
            assert!(lhs.max_abs_diff(&rhs) <= 1e-12);
        }
    }
}

#[test]
fn projection_commutes_with_deformed_action() {
    let ctx = GroupContext::finite(vec![7]).unwrap();
    let data = DeformedActionData::standard(Bicharacter::finite_from_rows(&ctx, &[vec![3]]).unwrap()).unwrap();
    let a = random(&ctx, 21);
    for xi in ctx.points() {
        let lhs = spectral_project(&deformed_dual_action(&data, &xi, &a).unwrap(), &data).unwrap();
        let rhs = deformed_dual_action(&data, &xi, &spectral_project(&a, &data).unwrap()).unwrap();
        assert!(lhs.max_abs_diff(&rhs) <= 1e-12);
    }
}

#[test]
fn fixed_points_form_a_subalgebra() {
    let ctx = GroupContext::finite(vec![5]).unwrap();
    let data = DeformedActionData::standard(Bicharacter::finite_from_rows(&ctx, &[vec![2]]).unwrap()).unwrap();
    let a = spectral_project(&random(&ctx, 1), &data).unwrap();
    let b = spectral_project(&random(&ctx, 2), &data).unwrap();
    assert!(fixed_point_test(&crossed_conv(&a, &b).unwrap(), &data, 1e-12).unwrap().passed);
}

#[test]
fn undeformed_fixed_algebra_is_pointwise_functions() {
    // exhaustive over a basis on Z/5
    let ctx = GroupContext::finite(vec![5]).unwrap();
    let data = DeformedActionData::standard(Bicharacter::trivial(&ctx).unwrap()).unwrap();
    let basis: Vec<CrossedElement> = ctx
        .points()
        .map(|x| CrossedElement::supported_at(&ctx, &ctx.zero(), FiniteVector::delta(&ctx, &x).unwrap()).unwrap())
        .collect();
    for v in ctx.points() {
        for x in ctx.points() {
            let e = CrossedElement::supported_at(&ctx, &v, FiniteVector::delta(&ctx, &x).unwrap()).unwrap();
            let p = spectral_project(&e, &data).unwrap();
            // off-zero fibres are sums of all N-th roots of unity: zero up to rounding
            let off_zero = ctx.points().filter(|w| *w != ctx.zero()).map(|w| p.fibre(&w).norm_l1()).fold(0.0, f64::max);
            assert!(off_zero <= 1e-15);
            assert_eq!(fixed_point_test(&e, &data, 1e-12).unwrap().passed, v == ctx.zero());
        }
    }
    for a in &basis {
        for b in &basis {
            let lhs = i_map(&crossed_conv(a, b).unwrap()).unwrap();
            let rhs = i_map(a).unwrap().mul(&i_map(b).unwrap()).unwrap();
            assert!(lhs.max_abs_diff(&rhs) <= 1e-15);
        }
    }
    // I is injective on the fixed algebra: images of the basis are the deltas
    for (x, a) in ctx.points().zip(&basis) {
        assert_eq!(i_map(a).unwrap(), FiniteVector::delta(&ctx, &x).unwrap());
    }
}

#[test]
fn fixed_point_dimension_equals_group_order() {
    for (n, b) in [(5u64, 1i64), (7, 3), (5, 2)] {
        let ctx = GroupContext::finite(vec![n]).unwrap();
        let data = DeformedActionData::standard(Bicharacter::finite_from_rows(&ctx, &[vec![b]]).unwrap()).unwrap();
        assert_eq!(fixed_point_dimension(&data).unwrap(), n as usize);
    }
    let ctx = GroupContext::uniform(2, 3).unwrap();
    let data = DeformedActionData::standard(Bicharacter::finite_from_rows(&ctx, &[vec![0, 1], vec![2, 0]]).unwrap()).unwrap();
    assert_eq!(fixed_point_dimension(&data).unwrap(), 9);
}

#[test]
fn i_homomorphism_in_rank_two_with_skew_sigma() {
    let ctx = GroupContext::uniform(2, 3).unwrap();
    let data = DeformedActionData::standard(Bicharacter::finite_from_rows(&ctx, &[vec![0, 1], vec![2, 0]]).unwrap()).unwrap();
    assert_eq!(data.adjoint_deviation().unwrap(), 0.0);
    for seed in 0..5 {
        let a = spectral_project(&random(&ctx, 2 * seed), &data).unwrap();
        let b = spectral_project(&random(&ctx, 2 * seed + 1), &data).unwrap();
        assert!(verify_i_homomorphism(&a, &b, &data).unwrap() <= 1e-10);
    }
}

#[test]
fn twisted_dual_is_associative() {
    let ctx = GroupContext::uniform(2, 3).unwrap();
    let s = Bicharacter::finite_from_rows(&ctx, &[vec![1, 2], vec![0, 1]]).unwrap();
    for seed in 0..4 {
        let (a, b, c) = (random(&ctx, 10 * seed), random(&ctx, 10 * seed + 1), random(&ctx, 10 * seed + 2));
        let lhs = twisted_crossed_dual(&twisted_crossed_dual(&a, &b, &s).unwrap(), &c, &s).unwrap();
        let rhs = twisted_crossed_dual(&a, &twisted_crossed_dual(&b, &c, &s).unwrap(), &s).unwrap();
        assert!(lhs.max_abs_diff(&rhs) <= 1e-12);
    }
    let u = ctx.point(vec![1, 2]).unwrap();
    let w = ctx.point(vec![2, 2]).unwrap();
    let prod = twisted_crossed_dual(&CrossedElement::lambda(&ctx, &u).unwrap(), &CrossedElement::lambda(&ctx, &w).unwrap(), &s).unwrap();
    let expect = CrossedElement::lambda(&ctx, &ctx.add(&u, &w)).unwrap().scale(s.value(&ctx.neg(&w), &u));
    assert!(prod.max_abs_diff(&expect) <= 1e-15);
}
