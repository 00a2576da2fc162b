//! Exact coefficient arithmetic over `Q(q1, q2)` with `q3 = (q1 q2)^-1`, and
//! specialization to prime fields for modular rank work.

mod ff;
mod kernel;
mod laurent;
mod poly;
mod scalar;

pub use ff::{
    add_mod, from_i64, inv_mod, mul_mod, pow_mod, specialize, sub_mod, EvalAssign, FFElem,
    DEFAULT_PRIMES, GENERIC_ORDER,
};
pub(crate) use ff::point_rng;
pub use kernel::{alpha, elem_sym, elem_syms, kernel_chi, theta_series, KernelPoly};
pub use laurent::ParamLaurent;
pub use scalar::Scalar;
