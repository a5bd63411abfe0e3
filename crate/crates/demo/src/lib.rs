//! Three interactive walks for the browser page in `www/`. Every export returns a JSON
//! string; failures come back as `{"error": "..."}`.

use std::sync::Arc;

use nalgebra::DVector;
use qergodic::catalog::{
    classical, classical_state, dual, dual_values, kac_paljutkin, pure_state, state_from_positive_definite,
    ClassicalStateSpec, GroupSpec, Origin,
};
use qergodic::ergodicity::{classify, ErgodicityVerdict};
use qergodic::hopf::FiniteQuantumGroup;
use qergodic::walks::{distances_to_random, StochasticOperator, WalkState, PERIPHERAL_TOL};
use qergodic::C64;
use serde::Serialize;
use wasm_bindgen::prelude::*;

const MAX_STEPS: u32 = 2000;

#[derive(Serialize)]
struct Point {
    k: u64,
    tv: f64,
}

#[derive(Serialize)]
struct Summary {
    group: String,
    tag: &'static str,
    period: Option<usize>,
    peripheral: Vec<[f64; 2]>,
    /// Largest eigenvalue modulus below one; sets the decay rate of ergodic walks.
    subdominant: f64,
    support_rank: usize,
    trace: Vec<Point>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    values: Vec<Labelled>,
}

#[derive(Serialize)]
struct Labelled {
    label: String,
    re: f64,
    im: f64,
}

fn bloch(theta: f64, phi: f64) -> DVector<C64> {
    DVector::from_vec(vec![C64::new((theta / 2.0).cos(), 0.0), C64::from_polar((theta / 2.0).sin(), phi)])
}

fn summarise(g: &Arc<FiniteQuantumGroup>, nu: &WalkState, steps: u32) -> qergodic::Result<Summary> {
    let v: ErgodicityVerdict = classify(nu)?;
    let op = StochasticOperator::new(nu)?;
    let trace = distances_to_random(nu, steps.clamp(1, MAX_STEPS) as u64)?
        .into_iter()
        .map(|r| Point { k: r.k, tv: r.tv })
        .collect();
    Ok(Summary {
        group: g.label().to_string(),
        tag: v.tag(),
        period: v.period(),
        peripheral: v.peripheral.iter().map(|z| [z.re, z.im]).collect(),
        subdominant: op.subdominant_modulus(PERIPHERAL_TOL),
        support_rank: nu.support_projection()?.projection_rank(),
        trace,
        values: Vec::new(),
    })
}

fn render(result: qergodic::Result<Summary>) -> String {
    match result {
        Ok(s) => serde_json::to_string(&s).unwrap_or_else(|e| error_json(&e.to_string())),
        Err(e) => error_json(&e.to_string()),
    }
}

fn error_json(msg: &str) -> String {
    serde_json::json!({ "error": msg }).to_string()
}

/// The walk on the dual of `S3` given by the two-dimensional irrep and the unit vector
/// with Bloch angles `(theta, phi)`.
#[wasm_bindgen]
pub fn s3_dual_walk(theta: f64, phi: f64, steps: u32) -> String {
    render((|| {
        let g = dual(&GroupSpec::Symmetric(3))?;
        let Origin::Dual { group, irreps, .. } = g.origin() else { unreachable!("dual returns a group algebra") };
        let rho = &irreps.find("standard").expect("S3 carries its standard irrep").matrices;
        let nu = state_from_positive_definite(&g, rho, &bloch(theta, phi))?;
        let mut s = summarise(&g, &nu, steps)?;
        s.values = dual_values(&nu)?
            .into_iter()
            .enumerate()
            .map(|(i, z)| Labelled { label: group.name(i).to_string(), re: z.re, im: z.im })
            .collect();
        Ok(s)
    })())
}

/// A pure state on the 2×2 block of the Kac–Paljutkin algebra, optionally mixed with
/// the counit to make the walk lazy.
#[wasm_bindgen]
pub fn kp_pure_walk(theta: f64, phi: f64, laziness: f64, steps: u32) -> String {
    render((|| {
        let g = kac_paljutkin()?;
        let block = g.algebra().dims().iter().position(|&n| n == 2).expect("one 2x2 block");
        let pure = pure_state(&g, block, &bloch(theta, phi))?;
        let hold = laziness.clamp(0.0, 1.0);
        let nu = WalkState::mixture(&[(hold, &WalkState::counit(&g)), (1.0 - hold, &pure)])?;
        summarise(&g, &nu, steps)
    })())
}

/// A walk on the cyclic group of order `weights.len()` with the given step law.
#[wasm_bindgen]
pub fn cyclic_walk(weights: Vec<f64>, steps: u32) -> String {
    render((|| {
        let g = classical(&GroupSpec::Cyclic(weights.len()))?;
        let nu = classical_state(&g, &ClassicalStateSpec::Weights(weights.clone()))?;
        summarise(&g, &nu, steps)
    })())
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::Value;

    fn parse(s: String) -> Value {
        serde_json::from_str(&s).unwrap()
    }

    #[test]
    fn s3_irrep_walk_is_ergodic_for_generic_vectors() {
        let v = parse(s3_dual_walk(1.1, 0.4, 20));
        assert_eq!(v["tag"], "ergodic");
        assert_eq!(v["values"].as_array().unwrap().len(), 6);
        assert_eq!(v["trace"].as_array().unwrap().len(), 20);
        assert!((v["values"][0]["re"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn kp_pure_states_alternate() {
        let v = parse(kp_pure_walk(0.7, 1.3, 0.0, 10));
        assert_eq!(v["group"], "KP");
        assert_eq!(v["tag"], "periodic", "{v}");
        assert_eq!(v["period"], 2);
        let lazy = parse(kp_pure_walk(0.7, 1.3, 0.5, 10));
        assert_ne!(lazy["tag"], "periodic");
    }

    #[test]
    fn cyclic_walks() {
        assert_eq!(parse(cyclic_walk(vec![0.0, 1.0, 0.0, 0.0], 5))["period"], 4);
        assert_eq!(parse(cyclic_walk(vec![0.0, 0.0, 1.0, 0.0], 5))["tag"], "reducible");
        assert_eq!(parse(cyclic_walk(vec![0.5, 0.5, 0.0], 5))["tag"], "ergodic");
        assert!(parse(cyclic_walk(vec![0.5, 0.2], 5)).get("error").is_some());
    }
}
