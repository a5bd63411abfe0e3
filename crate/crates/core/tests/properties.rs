mod common;

use std::sync::Arc;

use nalgebra::DMatrix;
use proptest::prelude::*;
use qergodic::catalog::{classical, classical_state, ClassicalStateSpec, GroupSpec, Origin};
use qergodic::ergodicity::{baraquin_check, classify, freslon_check, zhang_criterion, Verdict};
use qergodic::hopf::{is_group_like_projection, FiniteQuantumGroup};
use qergodic::multimatrix::{AlgebraElement, BlockStructure};
use qergodic::walks::{total_variation, WalkState};
use qergodic::C64;

use common::{catalog, classical_oracle, random_state, random_state_charging_identity, rng, ChainKind};

fn structure() -> impl Strategy<Value = BlockStructure> {
    prop::collection::vec(1usize..=4, 1..=4)
        .prop_filter("at most 36 coordinates", |d| d.iter().map(|n| n * n).sum::<usize>() <= 36)
        .prop_map(|d| BlockStructure::new(d).unwrap())
}

fn element_in(s: BlockStructure) -> impl Strategy<Value = AlgebraElement> {
    let d = s.total_dim();
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), d).prop_map(move |v| {
        let coords = nalgebra::DVector::from_iterator(d, v.into_iter().map(|(re, im)| C64::new(re, im)));
        AlgebraElement::from_coords(&s, &coords).unwrap()
    })
}

fn element() -> impl Strategy<Value = AlgebraElement> {
    structure().prop_flat_map(element_in)
}

fn pair() -> impl Strategy<Value = (AlgebraElement, AlgebraElement)> {
    structure().prop_flat_map(|s| (element_in(s.clone()), element_in(s)))
}

fn operator_norm(a: &AlgebraElement) -> f64 {
    a.blocks().iter().map(|b| b.clone().singular_values().max()).fold(0.0, f64::max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn spectral_decomposition_reconstructs(a in element()) {
        let h = a.hermitian_part();
        let terms = h.spectral_decomposition().unwrap();
        let mut sum = AlgebraElement::zeros(h.structure());
        for t in &terms {
            prop_assert!(t.projection.is_projection(1e-10));
            sum = &sum + &t.projection.scale_real(t.eigenvalue);
        }
        prop_assert!(sum.distance(&h) <= 1e-10, "error {}", sum.distance(&h));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn star_products_are_positive_with_support(a in element()) {
        let p = &a.adjoint() * &a;
        prop_assert!(p.is_positive(1e-9));
        let s = p.support_of_positive(1e-9).unwrap();
        prop_assert!((&s * &p).distance(&p) <= 1e-9);
        prop_assert!((&p * &s).distance(&p) <= 1e-9);
    }

    #[test]
    fn operator_norm_is_submultiplicative((a, b) in pair()) {
        prop_assert!(operator_norm(&(&a * &b)) <= operator_norm(&a) * operator_norm(&b) + 1e-12);
        prop_assert!((a.norm_inf() - operator_norm(&a)).abs() <= 1e-10);
    }

    #[test]
    fn adjoint_reverses_products((a, b) in pair()) {
        let lhs = (&a * &b).adjoint();
        let rhs = &b.adjoint() * &a.adjoint();
        prop_assert!(lhs.distance(&rhs) <= 1e-12);
    }
}

fn quantum_group() -> impl Strategy<Value = Arc<FiniteQuantumGroup>> {
    let all = catalog();
    (0..all.len()).prop_map(move |i| all[i].clone())
}

fn random_element(g: &FiniteQuantumGroup, seed: u64) -> AlgebraElement {
    use rand::Rng;
    let mut r = rng(seed);
    let blocks = g
        .algebra()
        .dims()
        .iter()
        .map(|&n| DMatrix::from_fn(n, n, |_, _| C64::new(r.random_range(-1.0..1.0), r.random_range(-1.0..1.0))))
        .collect();
    AlgebraElement::from_blocks(g.algebra(), blocks).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn haar_is_tracial(g in quantum_group(), s1 in any::<u64>(), s2 in any::<u64>()) {
        let a = random_element(&g, s1);
        let b = random_element(&g, s2);
        let h = g.haar();
        prop_assert!((h.apply(&(&a * &b)) - h.apply(&(&b * &a))).norm() <= 1e-10);
    }
}

/// A classical group from the catalog together with a probability vector that may
/// vanish on any element.
fn classical_walk() -> impl Strategy<Value = WalkState> {
    let specs: Vec<GroupSpec> = (2..=8).map(GroupSpec::Cyclic).chain([GroupSpec::Symmetric(3)]).collect();
    (0..specs.len()).prop_flat_map(move |i| {
        let g = classical(&specs[i]).unwrap();
        let n = g.order();
        prop::collection::vec((prop::bool::weighted(0.35), 0.05f64..1.0), n)
            .prop_filter("some mass", |v| v.iter().any(|(on, _)| *on))
            .prop_map(move |v| {
                let total: f64 = v.iter().filter(|(on, _)| *on).map(|(_, w)| w).sum();
                let w = v.iter().map(|(on, w)| if *on { w / total } else { 0.0 }).collect();
                classical_state(&g, &ClassicalStateSpec::Weights(w)).unwrap()
            })
    })
}

fn weights_of(nu: &WalkState) -> Vec<f64> {
    let g = nu.group();
    (0..g.order()).map(|s| nu.evaluate(&AlgebraElement::block_unit(g.algebra(), s)).re).collect()
}

fn any_walk() -> impl Strategy<Value = WalkState> {
    prop_oneof![
        classical_walk(),
        (quantum_group(), any::<u64>()).prop_map(|(g, seed)| random_state(&g, &mut rng(seed))),
    ]
}

fn check_certificate(nu: &WalkState) -> Result<(), TestCaseError> {
    let g = nu.group();
    let v = classify(nu).unwrap();
    match &v.verdict {
        Verdict::Ergodic => {
            prop_assert_eq!(v.tag(), "ergodic");
            prop_assert!(v.cesaro_support.distance(&g.unit()) <= 1e-8);
            let &(k, _) = v.tv_samples.last().unwrap();
            let tv = total_variation(&nu.convolution_power(k).unwrap(), &WalkState::haar(g)).unwrap();
            prop_assert!(tv < 1e-6, "TV {tv} at k = {k}");
        }
        Verdict::Reducible { quasi_subgroup: s } => {
            prop_assert_eq!(v.tag(), "reducible");
            prop_assert!(is_group_like_projection(g, s, 1e-8).unwrap());
            prop_assert!(s.distance(&g.unit()) > 1e-8);
            prop_assert!((nu.evaluate(s).re - 1.0).abs() <= 1e-8);
        }
        Verdict::Periodic { partition } => {
            prop_assert_eq!(v.tag(), "periodic");
            prop_assert!(v.cesaro_support.distance(&g.unit()) <= 1e-8);
            let d = partition.period;
            prop_assert_eq!(v.peripheral.len(), d);
            partition.verify(nu).unwrap();
            let p1 = &partition.projections[1];
            for k in 0..=10u64 {
                let m = d as u64 * k + 1;
                let mass = nu.convolution_power(m).unwrap().evaluate(p1).re;
                prop_assert!((mass - 1.0).abs() <= 1e-8, "ν^{{⋆{}}}(p_1) = {}", m, mass);
            }
            prop_assert!(!is_group_like_projection(g, p1, 1e-8).unwrap_or(false));
        }
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn classical_classification_matches_markov_chain(nu in classical_walk()) {
        let group = nu.group().origin().group().unwrap().clone();
        let expect = classical_oracle(&group, &weights_of(&nu));
        let v = classify(&nu).unwrap();
        let got = match v.verdict {
            Verdict::Ergodic => ChainKind::Ergodic,
            Verdict::Reducible { .. } => ChainKind::Reducible,
            Verdict::Periodic { partition } => ChainKind::Periodic(partition.period),
        };
        prop_assert_eq!(got, expect);
    }

    #[test]
    fn verdict_certificates_hold(nu in any_walk()) {
        check_certificate(&nu)?;
    }

    #[test]
    fn zhang_ball_holds_when_identity_is_charged(g in quantum_group(), seed in any::<u64>()) {
        let nu = random_state_charging_identity(&g, &mut rng(seed));
        let report = zhang_criterion(&nu).unwrap();
        prop_assert!(report.applies);
        prop_assert!(report.spectral_ball_ok);
        prop_assert_eq!(report.converges, Some(true));
        let limit = report.limit.unwrap();
        let cesaro = qergodic::walks::cesaro_limit(&nu).unwrap();
        prop_assert!(total_variation(&limit, &cesaro.state).unwrap() <= 1e-8);
    }

    #[test]
    fn dual_and_central_criteria_agree_with_classify(nu in any_walk()) {
        let v = classify(&nu).unwrap();
        if matches!(nu.group().origin(), Origin::Dual { .. }) {
            prop_assert_eq!(freslon_check(&nu).unwrap().ergodic, v.is_ergodic());
        }
        if let Ok(report) = baraquin_check(&nu) {
            if let Some(ergodic) = report.ergodic {
                prop_assert_eq!(ergodic, v.is_ergodic());
            }
        }
    }
}
