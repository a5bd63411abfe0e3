use super::PROJECTION_TOL;
use crate::hopf::is_group_like_projection;
use crate::multimatrix::AlgebraElement;
use crate::walks::{cesaro_limit, WalkState};
use crate::{Error, Result, C64};

const PARTITION_TOL: f64 = 1e-8;

/// Projections `p_0, …, p_{d−1}` summing to `1` with `T_ν(p_i) = p_{i−1}`.
#[derive(Clone, Debug)]
pub struct CyclicPartition {
    pub period: usize,
    pub projections: Vec<AlgebraElement>,
}

fn fail(msg: String) -> Error {
    Error::Classification(msg)
}

impl CyclicPartition {
    /// Checks every invariant of a cyclic partition for the walk `ν`.
    pub fn verify(&self, nu: &WalkState) -> Result<()> {
        let g = nu.group();
        let d = self.period;
        if d < 2 || self.projections.len() != d {
            return Err(fail(format!("partition of period {d} has {} pieces", self.projections.len())));
        }
        let t = nu.stochastic_map()?;
        let mut sum = AlgebraElement::zeros(g.algebra());
        for (i, p) in self.projections.iter().enumerate() {
            if !p.is_projection(PARTITION_TOL) {
                return Err(fail(format!("p_{i} is not a projection")));
            }
            for (j, q) in self.projections.iter().enumerate().skip(i + 1) {
                if (p * q).norm_inf() > PARTITION_TOL {
                    return Err(fail(format!("p_{i} and p_{j} are not orthogonal")));
                }
            }
            let prev = &self.projections[(i + d - 1) % d];
            if t.apply(p)?.distance(prev) > PARTITION_TOL {
                return Err(fail(format!("T(p_{i}) differs from p_{}", (i + d - 1) % d)));
            }
            let mass = g.haar().apply(p).re;
            if (mass - 1.0 / d as f64).abs() > PARTITION_TOL {
                return Err(fail(format!("h(p_{i}) = {mass}, expected 1/{d}")));
            }
            sum = &sum + p;
        }
        if sum.distance(&g.unit()) > PARTITION_TOL {
            return Err(fail("partition does not sum to 1".into()));
        }
        let one = C64::new(1.0, 0.0);
        if (g.counit().apply(&self.projections[0]) - one).norm() > PARTITION_TOL {
            return Err(fail("ε(p_0) != 1".into()));
        }
        if (nu.evaluate(&self.projections[1]) - one).norm() > PARTITION_TOL {
            return Err(fail("ν(p_1) != 1".into()));
        }
        if !is_group_like_projection(g, &self.projections[0], PARTITION_TOL)? {
            return Err(fail("p_0 is not group-like".into()));
        }
        Ok(())
    }
}

/// `p_0` is the Cesàro support of `ν^{⋆d}`; then `p_{d−1} = T_ν(p_0)`,
/// `p_{d−2} = T_ν(p_{d−1})`, and so on. The result is verified before it is returned.
pub fn cyclic_partition(nu: &WalkState, d: usize) -> Result<CyclicPartition> {
    if d < 2 {
        return Err(Error::Domain("a cyclic partition needs period at least 2".into()));
    }
    let g = nu.group();
    let phi = nu.convolution_power(d as u64)?;
    let p0 = cesaro_limit(&phi)?.support;
    if p0.distance(&g.unit()) <= PROJECTION_TOL {
        return Err(fail(format!("ν^{{⋆{d}}} is irreducible, so no partition of period {d} exists")));
    }
    let t = nu.stochastic_map()?;
    let mut projections = vec![AlgebraElement::zeros(g.algebra()); d];
    projections[0] = p0;
    let mut current = projections[0].clone();
    for i in (1..d).rev() {
        current = t.apply(&current)?.hermitian_part();
        projections[i] = current.clone();
    }
    let partition = CyclicPartition { period: d, projections };
    partition.verify(nu)?;
    Ok(partition)
}
