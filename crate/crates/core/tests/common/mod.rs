#![allow(dead_code)]

use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use qergodic::catalog::{classical, dual, kac_paljutkin, FiniteGroup, GroupSpec};
use qergodic::hopf::FiniteQuantumGroup;
use qergodic::multimatrix::AlgebraElement;
use qergodic::walks::WalkState;
use qergodic::C64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rand_distr::{Distribution, StandardNormal};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// `F(C_n)` for `n = 2..=8`, `F(S3)`, `ℂC_n` for `n = 2..=8`, `ℂS3` and Kac–Paljutkin.
pub fn catalog() -> Vec<Arc<FiniteQuantumGroup>> {
    let mut out = Vec::new();
    for n in 2..=8 {
        out.push(classical(&GroupSpec::Cyclic(n)).unwrap());
    }
    out.push(classical(&GroupSpec::Symmetric(3)).unwrap());
    for n in 2..=8 {
        out.push(dual(&GroupSpec::Cyclic(n)).unwrap());
    }
    out.push(dual(&GroupSpec::Symmetric(3)).unwrap());
    out.push(kac_paljutkin().unwrap());
    out
}

fn gaussian_block(n: usize, rank: usize, r: &mut StdRng) -> DMatrix<C64> {
    let a = DMatrix::from_fn(n, rank, |_, _| {
        let re: f64 = StandardNormal.sample(r);
        let im: f64 = StandardNormal.sample(r);
        C64::new(re, im)
    });
    &a * a.adjoint()
}

fn normalise(g: &Arc<FiniteQuantumGroup>, blocks: Vec<DMatrix<C64>>) -> WalkState {
    let f = AlgebraElement::from_blocks(g.algebra(), blocks).unwrap();
    let mass = g.haar().apply(&f).re;
    WalkState::from_density(g, f.scale_real(1.0 / mass)).unwrap()
}

/// Full-rank Wishart density in every block; faithful with probability one.
pub fn random_faithful_state(g: &Arc<FiniteQuantumGroup>, r: &mut StdRng) -> WalkState {
    let blocks = g.algebra().dims().iter().map(|&n| gaussian_block(n, n, r)).collect();
    normalise(g, blocks)
}

/// A random state that may vanish on whole blocks or be rank deficient inside one.
pub fn random_state(g: &Arc<FiniteQuantumGroup>, r: &mut StdRng) -> WalkState {
    loop {
        let blocks: Vec<DMatrix<C64>> = g
            .algebra()
            .dims()
            .iter()
            .map(|&n| {
                if r.random_bool(0.3) {
                    DMatrix::zeros(n, n)
                } else {
                    let rank = r.random_range(1..=n);
                    gaussian_block(n, rank, r)
                }
            })
            .collect();
        if blocks.iter().any(|b| b.norm() > 0.0) {
            return normalise(g, blocks);
        }
    }
}

/// Random state with `ν(η) > 0`: a random state mixed with the counit.
pub fn random_state_charging_identity(g: &Arc<FiniteQuantumGroup>, r: &mut StdRng) -> WalkState {
    let base = random_state(g, r);
    let w: f64 = r.random_range(0.05..0.95);
    WalkState::mixture(&[(w, &WalkState::counit(g)), (1.0 - w, &base)]).unwrap()
}

pub fn unit_vector(v: &[C64]) -> DVector<C64> {
    let v = DVector::from_column_slice(v);
    let n = v.norm();
    v / C64::new(n, 0.0)
}

pub fn random_unit_vector(n: usize, r: &mut StdRng) -> DVector<C64> {
    let v: Vec<C64> = (0..n)
        .map(|_| {
            let re: f64 = StandardNormal.sample(r);
            let im: f64 = StandardNormal.sample(r);
            C64::new(re, im)
        })
        .collect();
    unit_vector(&v)
}

/// What the classical Markov chain `x ↦ x·s`, `s ~ ν`, does on a finite group.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChainKind {
    Ergodic,
    Reducible,
    Periodic(usize),
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Brute force on the Cayley table: the walk is reducible when the closure of the
/// support is a proper subgroup, and otherwise its period is the gcd of the return
/// times to the identity.
pub fn classical_oracle(group: &FiniteGroup, weights: &[f64]) -> ChainKind {
    let n = group.order();
    let support: Vec<usize> = (0..n).filter(|&s| weights[s] > 0.0).collect();
    let mut reached = vec![false; n];
    let mut frontier = vec![group.identity()];
    reached[group.identity()] = true;
    while let Some(x) = frontier.pop() {
        for &s in &support {
            let y = group.mul(x, s);
            if !reached[y] {
                reached[y] = true;
                frontier.push(y);
            }
        }
    }
    if reached.iter().any(|r| !r) {
        return ChainKind::Reducible;
    }
    let mut at = vec![false; n];
    at[group.identity()] = true;
    let mut period = 0;
    for k in 1..=(n * n + n) {
        let mut next = vec![false; n];
        for x in (0..n).filter(|&x| at[x]) {
            for &s in &support {
                next[group.mul(x, s)] = true;
            }
        }
        at = next;
        if at[group.identity()] {
            period = gcd(period, k);
        }
    }
    if period == 1 {
        ChainKind::Ergodic
    } else {
        ChainKind::Periodic(period)
    }
}

/// Point masses, uniform measures on every left and right coset of every subgroup,
/// and lazy versions holding at the identity with probability 1/4, 1/2 or 3/4.
pub fn structured_weights(group: &FiniteGroup) -> Vec<Vec<f64>> {
    let n = group.order();
    let mut sets: Vec<Vec<usize>> = (0..n).map(|s| vec![s]).collect();
    for h in group.subgroups().unwrap() {
        for a in 0..n {
            let mut left: Vec<usize> = h.iter().map(|&x| group.mul(a, x)).collect();
            let mut right: Vec<usize> = h.iter().map(|&x| group.mul(x, a)).collect();
            left.sort_unstable();
            right.sort_unstable();
            sets.push(left);
            sets.push(right);
        }
    }
    sets.sort();
    sets.dedup();
    let mut out = Vec::new();
    for set in &sets {
        let mut w = vec![0.0; n];
        for &s in set {
            w[s] = 1.0 / set.len() as f64;
        }
        out.push(w.clone());
        if set.as_slice() == [group.identity()] {
            continue;
        }
        for hold in [0.5, 0.25, 0.75] {
            let mut lazy: Vec<f64> = w.iter().map(|x| (1.0 - hold) * x).collect();
            lazy[group.identity()] += hold;
            out.push(lazy);
        }
    }
    out
}
