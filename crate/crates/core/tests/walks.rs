mod common;

use approx::assert_abs_diff_eq;
use nalgebra::DMatrix;
use qergodic::catalog::{
    chi_h, classical, classical_state, dual, dual_values, indicator, kac_paljutkin, permutation_representation,
    state_from_positive_definite, ClassicalStateSpec, GroupSpec, Origin,
};
use qergodic::multimatrix::{p_norm, AlgebraElement, PNorm};
use qergodic::walks::{
    cesaro_limit, distances_to_random, spectrum_peripheral, total_variation, StochasticOperator, WalkState,
    PERIPHERAL_TOL,
};
use qergodic::C64;
use rand::Rng;

use common::{catalog, random_state, rng, unit_vector};

fn c(x: f64) -> C64 {
    C64::new(x, 0.0)
}

fn perm_rep_walk() -> WalkState {
    let g = dual(&GroupSpec::Symmetric(3)).unwrap();
    let group = g.origin().group().unwrap().clone();
    let rho = permutation_representation(&group).unwrap();
    state_from_positive_definite(&g, &rho, &unit_vector(&[c(1.0), c(-1.0), c(0.0)])).unwrap()
}

fn irrep_walk() -> WalkState {
    let g = dual(&GroupSpec::Symmetric(3)).unwrap();
    let Origin::Dual { irreps, .. } = g.origin() else { unreachable!() };
    let rho = irreps.find("standard").unwrap().matrices.clone();
    state_from_positive_definite(&g, &rho, &unit_vector(&[c(1.0), c(2f64.sqrt())])).unwrap()
}

fn random_element(g: &qergodic::hopf::FiniteQuantumGroup, r: &mut rand::rngs::StdRng) -> AlgebraElement {
    let blocks = g
        .algebra()
        .dims()
        .iter()
        .map(|&n| DMatrix::from_fn(n, n, |_, _| C64::new(r.random_range(-1.0..1.0), r.random_range(-1.0..1.0))))
        .collect();
    AlgebraElement::from_blocks(g.algebra(), blocks).unwrap()
}

#[test]
fn stochastic_operator_identities() {
    let mut r = rng(21);
    for g in catalog() {
        for _ in 0..5 {
            let nu = random_state(&g, &mut r);
            let mu = random_state(&g, &mut r);
            let t = nu.stochastic_map().unwrap();

            // μ T_ν = ν ⋆ μ
            let mu_t = t.transpose_on_functionals(mu.functional()).unwrap();
            assert!(mu_t.max_abs_diff(nu.convolve(&mu).unwrap().functional()) < 1e-12, "{}", g.label());

            // T_ν^k = T_{ν^{⋆k}} and ε T_ν^k = ν^{⋆k}
            for k in 1..=20u64 {
                let tk = t.power(k).unwrap();
                let nuk = nu.convolution_power(k).unwrap();
                let direct = g.stochastic_map(nuk.functional()).unwrap();
                assert!((tk.matrix() - direct.matrix()).camax() < 1e-10, "{} k = {k}", g.label());
                let via = tk.transpose_on_functionals(g.counit()).unwrap();
                assert!(via.max_abs_diff(nuk.functional()) < 1e-12);
            }
            let mut iterated = nu.clone();
            for k in 2..=6u64 {
                iterated = nu.convolve(&iterated).unwrap();
                assert!(iterated.functional().max_abs_diff(nu.convolution_power(k).unwrap().functional()) < 1e-12);
            }

            // unital, positive, preserves states and the Haar state
            assert!(t.apply(&g.unit()).unwrap().distance(&g.unit()) < 1e-12);
            let a = random_element(&g, &mut r);
            let aa = &a.adjoint() * &a;
            assert!(t.apply(&aa).unwrap().is_positive(1e-10));
            let image = WalkState::from_functional(&g, mu_t.clone());
            assert!(image.is_ok());
            let h_t = t.transpose_on_functionals(g.haar()).unwrap();
            assert!(h_t.max_abs_diff(g.haar()) < 1e-12);

            // T_ν(a) = S(f_ν) ⊛ a
            let s_f = g.apply_antipode(nu.density()).unwrap();
            let boxed = g.box_convolve(&s_f, &a).unwrap();
            assert!(boxed.distance(&t.apply(&a).unwrap()) < 1e-10, "{}", g.label());

            // ‖T_ν‖_{∞→∞} = 1
            assert_abs_diff_eq!(t.apply(&g.unit()).unwrap().norm_inf(), 1.0, epsilon = 1e-12);
            for _ in 0..10 {
                let b = random_element(&g, &mut r);
                let b = b.scale_real(1.0 / b.norm_inf());
                assert!(t.apply(&b).unwrap().norm_inf() <= 1.0 + 1e-8);
            }
        }
    }
}

/// `(I_m ⊗ T_ν)` applied to a positive `m × m` matrix over the algebra stays positive.
#[test]
fn stochastic_operator_is_completely_positive() {
    let mut r = rng(22);
    for g in catalog() {
        let s = g.algebra().clone();
        for m in [2usize, 3] {
            let nu = random_state(&g, &mut r);
            let t = nu.stochastic_map().unwrap();
            let z: Vec<Vec<AlgebraElement>> =
                (0..m).map(|_| (0..m).map(|_| random_element(&g, &mut r)).collect()).collect();
            let mut x = vec![vec![AlgebraElement::zeros(&s); m]; m];
            for i in 0..m {
                for j in 0..m {
                    for k in 0..m {
                        x[i][j] = &x[i][j] + &(&z[i][k] * &z[j][k].adjoint());
                    }
                }
            }
            let y: Vec<Vec<AlgebraElement>> =
                x.iter().map(|row| row.iter().map(|e| t.apply(e).unwrap()).collect()).collect();
            for b in 0..s.block_count() {
                let n = s.block_dim(b);
                let big = DMatrix::from_fn(m * n, m * n, |p, q| y[p / n][q / n].block(b)[(p % n, q % n)]);
                let min = big.symmetric_eigenvalues().min();
                assert!(min >= -1e-9, "{} m = {m}: eigenvalue {min}", g.label());
            }
        }
    }
}

#[test]
fn stochastic_operator_examples() {
    let g = classical(&GroupSpec::Symmetric(3)).unwrap();
    let t = WalkState::counit(&g).stochastic_map().unwrap();
    assert!((t.matrix() - DMatrix::<C64>::identity(6, 6)).camax() < 1e-14);

    let group = g.origin().group().unwrap().clone();
    let weights = [0.1, 0.2, 0.3, 0.15, 0.05, 0.2];
    let nu = classical_state(&g, &ClassicalStateSpec::Weights(weights.to_vec())).unwrap();
    // transition kernel P(s_j -> s_i) = ν(s_i s_j^{-1}); the map on functions is its transpose
    let kernel = nu.stochastic_map().unwrap().matrix().transpose();
    for i in 0..6 {
        for j in 0..6 {
            let expect = weights[group.mul(i, group.inv(j))];
            assert_abs_diff_eq!(kernel[(i, j)].re, expect, epsilon = 1e-12);
        }
    }

    let u = perm_rep_walk();
    let q = u.group().clone();
    let values = dual_values(&u).unwrap();
    let t = u.stochastic_map().unwrap();
    for s in 0..6 {
        let d = qergodic::catalog::dual_delta(&q, s).unwrap();
        assert!(t.apply(&d).unwrap().distance(&d.scale(values[s])) < 1e-12);
    }
}

#[test]
fn peripheral_spectrum_examples() {
    let op = StochasticOperator::new(&perm_rep_walk()).unwrap();
    let expected = [-0.5, -0.5, 0.5, 0.5, -1.0, 1.0];
    let mut got: Vec<f64> = op.spectrum().iter().map(|z| z.re).collect();
    assert!(op.spectrum().iter().all(|z| z.im.abs() < 1e-12));
    got.sort_by(f64::total_cmp);
    let mut want = expected.to_vec();
    want.sort_by(f64::total_cmp);
    for (a, b) in got.iter().zip(&want) {
        assert_abs_diff_eq!(a, b, epsilon = 1e-12);
    }
    let per = spectrum_peripheral(&op, PERIPHERAL_TOL).unwrap();
    assert_eq!(per.period(), 2);
    assert_eq!(per.multiplicity_of_one, 1);

    let per = spectrum_peripheral(&StochasticOperator::new(&irrep_walk()).unwrap(), PERIPHERAL_TOL).unwrap();
    assert_eq!(per.peripheral.len(), 1);

    for g in catalog() {
        let op = StochasticOperator::new(&WalkState::haar(&g)).unwrap();
        let ones = op.spectrum().iter().filter(|z| (*z - c(1.0)).norm() < 1e-10).count();
        let zeros = op.spectrum().iter().filter(|z| z.norm() < 1e-10).count();
        assert_eq!((ones, zeros), (1, g.order() - 1), "{}", g.label());
    }
}

#[test]
fn convolution_examples() {
    let mut r = rng(23);
    for g in catalog() {
        let nu = random_state(&g, &mut r);
        let eps = WalkState::counit(&g);
        let pi = WalkState::haar(&g);
        assert!(eps.convolve(&nu).unwrap().functional().max_abs_diff(nu.functional()) < 1e-12);
        assert!(nu.convolve(&eps).unwrap().functional().max_abs_diff(nu.functional()) < 1e-12);
        assert!(pi.convolve(&nu).unwrap().functional().max_abs_diff(pi.functional()) < 1e-12);
        assert!(nu.convolve(&pi).unwrap().functional().max_abs_diff(pi.functional()) < 1e-12);
        assert!(nu.convolution_power(1).unwrap().functional().max_abs_diff(nu.functional()) < 1e-12);
        assert!(nu.convolution_power(0).unwrap().functional().max_abs_diff(g.counit()) < 1e-15);
    }

    // pointwise powers on a cocommutative algebra
    let u = perm_rep_walk();
    let values = dual_values(&u).unwrap();
    for k in 1..=6u64 {
        let powered = dual_values(&u.convolution_power(k).unwrap()).unwrap();
        for (p, v) in powered.iter().zip(&values) {
            assert!((p - v.powu(k as u32)).norm() < 1e-12);
        }
    }
    let squared = dual_values(&u.convolution_power(2).unwrap()).unwrap();
    for (got, want) in squared.iter().zip([1.0, 1.0, 0.25, 0.25, 0.25, 0.25]) {
        assert!((got - c(want)).norm() < 1e-12);
    }

    let kp = kac_paljutkin().unwrap();
    let other = classical(&GroupSpec::Cyclic(8)).unwrap();
    assert!(WalkState::haar(&kp).convolve(&WalkState::haar(&other)).is_err());
}

#[test]
fn distances_examples() {
    let u = irrep_walk();
    let values = dual_values(&u).unwrap();
    let rows = distances_to_random(&u, 40).unwrap();
    for row in &rows {
        let plancherel: f64 = values.iter().skip(1).map(|v| v.norm().powi(2 * row.k as i32)).sum();
        assert_abs_diff_eq!(row.l2 * row.l2, plancherel, epsilon = 1e-10);
    }

    let g = classical(&GroupSpec::Cyclic(2)).unwrap();
    let one = classical_state(&g, &ClassicalStateSpec::Point(1)).unwrap();
    assert_abs_diff_eq!(total_variation(&one, &WalkState::haar(&g)).unwrap(), 0.5, epsilon = 1e-12);
    assert!(distances_to_random(&one, 0).is_err());
}

#[test]
fn total_variation_matches_half_l1() {
    let mut r = rng(24);
    for g in catalog() {
        for _ in 0..10 {
            let nu = random_state(&g, &mut r);
            let mu = random_state(&g, &mut r);
            let diff = nu.density() - mu.density();
            let half_l1 = 0.5 * p_norm(&diff, g.haar(), PNorm::One);
            let positive: AlgebraElement = diff
                .spectral_decomposition()
                .unwrap()
                .into_iter()
                .filter(|t| t.eigenvalue > 0.0)
                .fold(AlgebraElement::zeros(g.algebra()), |acc, t| &acc + &t.projection);
            let attained = (nu.evaluate(&positive) - mu.evaluate(&positive)).re;
            assert_abs_diff_eq!(attained, half_l1, epsilon = 1e-10);
            assert_abs_diff_eq!(total_variation(&nu, &mu).unwrap(), half_l1, epsilon = 1e-14);
        }
    }
}

#[test]
fn support_examples() {
    let mut r = rng(25);
    for g in catalog() {
        let nu = common::random_faithful_state(&g, &mut r);
        assert!(nu.support_projection().unwrap().distance(&g.unit()) < 1e-10);
    }

    let g = classical(&GroupSpec::Symmetric(3)).unwrap();
    let t = g.origin().group().unwrap().index_of("(12)").unwrap();
    let point = classical_state(&g, &ClassicalStateSpec::Point(t)).unwrap();
    assert!(point.support_projection().unwrap().distance(&indicator(&g, &[t]).unwrap()) < 1e-12);

    // an idempotent state is supported on its group-like projection
    let q = dual(&GroupSpec::Symmetric(3)).unwrap();
    let group = q.origin().group().unwrap().clone();
    for h in group.subgroups().unwrap() {
        let p = chi_h(&q, &h).unwrap();
        let mass = q.haar().apply(&p).re;
        let phi = WalkState::from_density(&q, p.scale_real(1.0 / mass)).unwrap();
        assert!(phi.support_projection().unwrap().distance(&p) < 1e-10);
    }

    // minimality: the complement of the support is the null space of ν
    for g in catalog() {
        let nu = random_state(&g, &mut r);
        let p = nu.support_projection().unwrap();
        let q_nu = &g.unit() - &p;
        let a = random_element(&g, &mut r);
        let aq = &a * &q_nu;
        assert!(nu.evaluate(&(&aq.adjoint() * &aq)).norm() < 1e-10);
        let rank = p.projection_rank();
        let weight: f64 = nu
            .density()
            .spectral_decomposition()
            .unwrap()
            .iter()
            .filter(|t| t.eigenvalue > 1e-10)
            .map(|t| t.projection.projection_rank())
            .sum::<usize>() as f64;
        assert_eq!(rank as f64, weight);
    }
}

#[test]
fn cesaro_examples() {
    let u = perm_rep_walk();
    let q = u.group().clone();
    let group = q.origin().group().unwrap().clone();
    let h = [group.identity(), group.index_of("(12)").unwrap()];
    // the walk is irreducible: averaging kills every u(σ)^k with σ != e, leaving the Haar state
    let lim = cesaro_limit(&u).unwrap();
    assert!(lim.state.functional().max_abs_diff(q.haar()) < 1e-10);
    assert!(lim.support.distance(&q.unit()) < 1e-10);
    assert!(lim.agreement < 1e-9);
    // the Cesàro limit of u^{⋆2} does see the subgroup
    let lim2 = cesaro_limit(&u.convolution_power(2).unwrap()).unwrap();
    assert!(lim2.support.distance(&chi_h(&q, &h).unwrap()) < 1e-10);

    let mut r = rng(26);
    for g in catalog() {
        let nu = common::random_faithful_state(&g, &mut r);
        let lim = cesaro_limit(&nu).unwrap();
        assert!(lim.state.functional().max_abs_diff(g.haar()) < 1e-9, "{}", g.label());
        assert_eq!(lim.fixed_dimension, 1);
    }
}

#[test]
fn densities_round_trip() {
    let mut r = rng(27);
    for g in catalog() {
        let nu = random_state(&g, &mut r);
        let back = g.functional_of(nu.density()).unwrap();
        assert!(back.max_abs_diff(nu.functional()) < 1e-12);
        let again = g.density_of(nu.functional()).unwrap();
        assert!(again.distance(nu.density()) < 1e-12);
        for _ in 0..20 {
            let a = random_element(&g, &mut r);
            let value = nu.evaluate(&(&a.adjoint() * &a));
            assert!(value.re >= -1e-12 && value.im.abs() < 1e-10);
        }
    }
}
