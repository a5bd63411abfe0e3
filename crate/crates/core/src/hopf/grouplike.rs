use std::cmp::Ordering;
use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};

use super::FiniteQuantumGroup;
use crate::multimatrix::AlgebraElement;
use crate::{Error, Result, C64};

const GRID: usize = 64;
const GRID_PAIR: usize = 16;
const ACCEPT: f64 = 1e-9;
const DEDUP: f64 = 1e-6;
const LM_MAX_ITER: usize = 200;

fn residual_element(g: &FiniteQuantumGroup, p: &AlgebraElement) -> Result<AlgebraElement> {
    let t = g.tensor();
    let dp = g.comultiply(p)?;
    let one_p = t.element(&g.unit(), p)?;
    let pp = t.element(p, p)?;
    Ok(&(&dp * &one_p) - &pp)
}

/// `‖Δ(p)(1 ⊗ p) − p ⊗ p‖_∞`.
pub fn group_like_residual(g: &FiniteQuantumGroup, p: &AlgebraElement) -> Result<f64> {
    if p.structure() != g.algebra() {
        return Err(Error::Shape("projection lives on another algebra".into()));
    }
    Ok(residual_element(g, p)?.norm_inf())
}

/// Tests the group-like identity. A positive answer is only returned together with
/// `ε(p) = 1` and `S(p) = p`; a group-like projection violating either is reported as a
/// structural error, since no quantum group admits one.
pub fn is_group_like_projection(g: &FiniteQuantumGroup, p: &AlgebraElement, tol: f64) -> Result<bool> {
    if !p.is_projection(tol.max(1e-12)) {
        return Err(Error::Domain("group-like test needs a projection".into()));
    }
    if group_like_residual(g, p)? > tol {
        return Ok(false);
    }
    let eps = g.counit().apply(p);
    if (eps - C64::new(1.0, 0.0)).norm() > tol {
        return Err(Error::Structural(format!("group-like projection with counit {eps}")));
    }
    let sp = g.apply_antipode(p)?;
    if sp.distance(p) > tol {
        return Err(Error::Structural("group-like projection not fixed by the antipode".into()));
    }
    Ok(true)
}

#[derive(Clone, Copy, Debug, PartialEq)]
enum BlockChoice {
    Zero,
    Full,
    /// Rank-one projection in a 2×2 block, parametrised by the Bloch sphere.
    Sphere,
}

fn rank_one(theta: f64, phi: f64) -> DMatrix<C64> {
    let c = (theta / 2.0).cos();
    let s = (theta / 2.0).sin();
    let v = [C64::new(c, 0.0), C64::from_polar(s, phi)];
    DMatrix::from_fn(2, 2, |r, k| v[r] * v[k].conj())
}

struct Candidate<'a> {
    group: &'a FiniteQuantumGroup,
    choices: Vec<BlockChoice>,
}

impl Candidate<'_> {
    fn spheres(&self) -> usize {
        self.choices.iter().filter(|c| **c == BlockChoice::Sphere).count()
    }

    fn build(&self, params: &[f64]) -> AlgebraElement {
        let s = self.group.algebra();
        let mut next = 0;
        let blocks = self
            .choices
            .iter()
            .enumerate()
            .map(|(b, choice)| {
                let n = s.block_dim(b);
                match choice {
                    BlockChoice::Zero => DMatrix::zeros(n, n),
                    BlockChoice::Full => DMatrix::identity(n, n),
                    BlockChoice::Sphere => {
                        let m = rank_one(params[next], params[next + 1]);
                        next += 2;
                        m
                    }
                }
            })
            .collect();
        AlgebraElement::from_blocks(s, blocks).expect("block shapes follow the structure")
    }

    fn residual_vector(&self, params: &[f64]) -> DVector<f64> {
        let r = residual_element(self.group, &self.build(params)).expect("shapes agree");
        let c = r.coords();
        DVector::from_fn(2 * c.len(), |i, _| if i % 2 == 0 { c[i / 2].re } else { c[i / 2].im })
    }

    fn cost(&self, params: &[f64]) -> f64 {
        self.residual_vector(params).norm()
    }

    /// Levenberg–Marquardt on the stacked real residual with a central-difference Jacobian.
    fn refine(&self, start: &[f64]) -> (Vec<f64>, f64) {
        let n = start.len();
        let mut x = start.to_vec();
        let mut r = self.residual_vector(&x);
        let mut cost = r.norm();
        let mut lambda = 1e-3;
        for _ in 0..LM_MAX_ITER {
            if cost < 1e-14 {
                break;
            }
            let h = 1e-7;
            let mut jac = DMatrix::<f64>::zeros(r.len(), n);
            for j in 0..n {
                let mut xp = x.clone();
                let mut xm = x.clone();
                xp[j] += h;
                xm[j] -= h;
                let col = (self.residual_vector(&xp) - self.residual_vector(&xm)) / (2.0 * h);
                jac.set_column(j, &col);
            }
            let jt = jac.transpose();
            let jtj = &jt * &jac;
            let g = &jt * &r;
            let mut improved = false;
            for _ in 0..20 {
                let mut a = jtj.clone();
                for i in 0..n {
                    a[(i, i)] += lambda * (1.0 + jtj[(i, i)]);
                }
                let Some(step) = a.lu().solve(&(-&g)) else {
                    lambda *= 10.0;
                    continue;
                };
                let trial: Vec<f64> = x.iter().zip(step.iter()).map(|(a, b)| a + b).collect();
                let rt = self.residual_vector(&trial);
                let ct = rt.norm();
                if ct < cost {
                    x = trial;
                    r = rt;
                    let gain = cost - ct;
                    cost = ct;
                    lambda = (lambda / 10.0).max(1e-15);
                    improved = gain > 1e-16 * cost.max(1e-300);
                    break;
                }
                lambda *= 10.0;
            }
            if !improved {
                break;
            }
        }
        (x, cost)
    }

    fn grid(&self) -> Vec<Vec<f64>> {
        let per = if self.spheres() == 1 { GRID } else { GRID_PAIR };
        let axis_theta: Vec<f64> = (0..per).map(|i| PI * i as f64 / (per - 1) as f64).collect();
        let axis_phi: Vec<f64> = (0..per).map(|j| 2.0 * PI * j as f64 / per as f64).collect();
        let mut points = vec![Vec::new()];
        for _ in 0..self.spheres() {
            let mut next = Vec::with_capacity(points.len() * per * per);
            for p in &points {
                for &t in &axis_theta {
                    for &f in &axis_phi {
                        let mut q = p.clone();
                        q.push(t);
                        q.push(f);
                        next.push(q);
                    }
                }
            }
            points = next;
        }
        points
    }

    /// Grid points that are no worse than their axis neighbours (θ clamped, φ periodic).
    fn local_minima(&self) -> Vec<Vec<f64>> {
        let per = if self.spheres() == 1 { GRID } else { GRID_PAIR };
        let points = self.grid();
        let costs: Vec<f64> = points.iter().map(|p| self.cost(p)).collect();
        let dims = 2 * self.spheres();
        let mut strides = vec![1usize; dims];
        for a in (0..dims.saturating_sub(1)).rev() {
            strides[a] = strides[a + 1] * per;
        }
        let mut out = Vec::new();
        for (idx, p) in points.iter().enumerate() {
            let mut is_min = true;
            for a in 0..dims {
                let coord = (idx / strides[a]) % per;
                let periodic = a % 2 == 1;
                for delta in [-1i64, 1] {
                    let nc = coord as i64 + delta;
                    let nc = if periodic {
                        nc.rem_euclid(per as i64) as usize
                    } else if nc < 0 || nc >= per as i64 {
                        continue;
                    } else {
                        nc as usize
                    };
                    let nidx = idx - coord * strides[a] + nc * strides[a];
                    if costs[nidx] < costs[idx] {
                        is_min = false;
                    }
                }
            }
            if is_min {
                out.push(p.clone());
            }
        }
        out
    }
}

fn compare_elements(a: &AlgebraElement, b: &AlgebraElement) -> Ordering {
    let ra = a.projection_rank();
    let rb = b.projection_rank();
    ra.cmp(&rb).then_with(|| {
        let ca = a.coords();
        let cb = b.coords();
        for (x, y) in ca.iter().zip(cb.iter()) {
            let qx = ((x.re * 1e8).round(), (x.im * 1e8).round());
            let qy = ((y.re * 1e8).round(), (y.im * 1e8).round());
            match qy.partial_cmp(&qx).unwrap_or(Ordering::Equal) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    })
}

/// Exhaustive search for group-like projections when every block is at most 2×2.
///
/// Blocks of size one take the values 0 or 1; 2×2 blocks take 0, the identity, or a
/// rank-one projection found by a grid over the Bloch sphere followed by local
/// refinement. At most two 2×2 blocks are supported.
pub fn find_group_like_projections(g: &FiniteQuantumGroup) -> Result<Vec<AlgebraElement>> {
    let s = g.algebra();
    if s.dims().iter().any(|&n| n > 2) {
        return Err(Error::Unsupported("group-like search needs all blocks at most 2x2".into()));
    }
    let big = s.dims().iter().filter(|&&n| n == 2).count();
    if big > 2 {
        return Err(Error::Unsupported("group-like search handles at most two 2x2 blocks".into()));
    }
    let options: Vec<Vec<BlockChoice>> = s
        .dims()
        .iter()
        .map(|&n| {
            if n == 1 {
                vec![BlockChoice::Zero, BlockChoice::Full]
            } else {
                vec![BlockChoice::Zero, BlockChoice::Full, BlockChoice::Sphere]
            }
        })
        .collect();

    let mut found: Vec<AlgebraElement> = Vec::new();
    let push = |p: AlgebraElement, found: &mut Vec<AlgebraElement>| {
        if found.iter().all(|q| q.distance(&p) > DEDUP) {
            found.push(p);
        }
    };

    let total: usize = options.iter().map(|o| o.len()).product();
    for mut code in 0..total {
        let mut choices = Vec::with_capacity(options.len());
        for o in &options {
            choices.push(o[code % o.len()]);
            code /= o.len();
        }
        if choices.iter().all(|c| *c == BlockChoice::Zero) {
            continue;
        }
        let cand = Candidate { group: g, choices };
        if cand.spheres() == 0 {
            let p = cand.build(&[]);
            if group_like_residual(g, &p)? <= ACCEPT {
                push(p, &mut found);
            }
            continue;
        }
        for start in cand.local_minima() {
            let (x, cost) = cand.refine(&start);
            if cost <= ACCEPT {
                push(cand.build(&x), &mut found);
            }
        }
    }

    for p in &found {
        if !is_group_like_projection(g, p, 1e-8)? {
            return Err(Error::Numeric("refined projection fails the group-like test".into()));
        }
    }
    found.sort_by(compare_elements);
    Ok(found)
}
