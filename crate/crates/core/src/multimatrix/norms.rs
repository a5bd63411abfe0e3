use super::{AlgebraElement, LinearFunctional};

/// Which tracial `L^p` norm to take.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PNorm {
    One,
    Two,
    Inf,
}

/// `‖a‖_p = h(|a|^p)^{1/p}` for a faithful tracial state `h`; `Inf` is the C*-norm.
pub fn p_norm(a: &AlgebraElement, haar: &LinearFunctional, p: PNorm) -> f64 {
    match p {
        PNorm::One => haar.apply(&a.abs()).re,
        PNorm::Two => haar.apply(&(&a.adjoint() * a)).re.max(0.0).sqrt(),
        PNorm::Inf => a.norm_inf(),
    }
}
