use ncdeform::automorphy::{
    automorphy_check, coboundary, solve_automorphy, solve_automorphy_exhaustive, tau_cocycle_check, u_cocycle_check,
    u_transform, AutomorphyFactor, FiniteGroup, GammaAction, Solution, TauCocycle,
};
use ncdeform::{sampling, Complex64};
use rand::Rng;

/// Actions with |Γ| ≤ 6 and |X| ≤ 8.
fn actions() -> Vec<GammaAction> {
    let s3 = FiniteGroup::symmetric3();
    let z6 = FiniteGroup::cyclic(6).unwrap();
    let z4 = FiniteGroup::cyclic(4).unwrap();
    vec![
        GammaAction::regular(s3.clone()).unwrap(),
        GammaAction::trivial(s3.clone(), 8).unwrap(),
        // S3 on the regular points plus two fixed points
        GammaAction::from_fn(s3.clone(), 8, |k, x| if x < 6 { s3.mul(k, x) } else { x }).unwrap(),
        GammaAction::from_fn(z6, 6, |k, x| (k + x) % 6).unwrap(),
        // Z/4 rotating two squares
        GammaAction::from_fn(z4, 8, |k, x| 4 * (x / 4) + (x % 4 + k) % 4).unwrap(),
    ]
}

#[test]
fn coboundaries_are_cocycles() {
    let mut rng = sampling::seeded(31);
    for act in actions() {
        for _ in 0..3 {
            let phases: Vec<f64> = (0..act.group().order() * act.points()).map(|_| rng.gen_range(0.0..std::f64::consts::TAU)).collect();
            let j = AutomorphyFactor::from_fn(&act, |k, x| Complex64::cis(phases[k * act.points() + x])).unwrap();
            let tau = coboundary(&act, &j).unwrap();
            assert!(tau_cocycle_check(&act, &tau, 1e-12).unwrap().passed);
            assert!(automorphy_check(&act, &tau, &j, 1e-12).unwrap().passed);
            assert!(u_cocycle_check(&act, &tau, &u_transform(&act, &j).unwrap(), 1e-12).unwrap().passed);
        }
    }
}

#[test]
fn solver_recovers_factors_of_root_of_unity_coboundaries() {
    let mut rng = sampling::seeded(32);
    for act in actions() {
        for m in [2u64, 3, 4, 6] {
            let exps: Vec<i64> = (0..act.group().order() * act.points()).map(|_| rng.gen_range(0..m as i64)).collect();
            let j = AutomorphyFactor::from_fn(&act, |k, x| ncdeform::abelian::root_of_unity(exps[k * act.points() + x], m)).unwrap();
            let tau = coboundary(&act, &j).unwrap();
            let Solution::Factor(found) = solve_automorphy(&act, &tau, m).unwrap() else {
                panic!("coboundary must be solvable at M = {m}");
            };
            assert!(automorphy_check(&act, &tau, &found, 1e-12).unwrap().passed);
            assert!(u_cocycle_check(&act, &tau, &u_transform(&act, &found).unwrap(), 1e-12).unwrap().passed);
        }
    }
}

#[test]
fn solver_agrees_with_exhaustive_search_on_tiny_systems() {
    let z2 = FiniteGroup::cyclic(2).unwrap();
    let z3 = FiniteGroup::cyclic(3).unwrap();
    let cases = [
        GammaAction::trivial(z2.clone(), 1).unwrap(),
        GammaAction::trivial(z2.clone(), 2).unwrap(),
        GammaAction::regular(z2).unwrap(),
        GammaAction::trivial(z3, 1).unwrap(),
    ];
    for act in cases {
        let g = act.group().clone();
        for m in [2u64, 4] {
            // τ(a, b) = (-1)^(a·b) on Z/2, and trivial otherwise
            let tau = TauCocycle::from_fn(&act, |a, b, _| {
                if g.order() == 2 && a == 1 && b == 1 {
                    Complex64::new(-1.0, 0.0)
                } else {
                    Complex64::new(1.0, 0.0)
                }
            })
            .unwrap();
            let fast = solve_automorphy(&act, &tau, m).unwrap();
            let slow = solve_automorphy_exhaustive(&act, &tau, m).unwrap();
            assert_eq!(matches!(fast, Solution::Factor(_)), matches!(slow, Solution::Factor(_)), "M = {m}");
        }
    }
}
