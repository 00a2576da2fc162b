//! The coproduct `Delta` on the free algebra, windowed tensor components and
//! the checks that `Delta` respects the relations.
//!
//! Tensor components are indexed by the pair of leg bidegrees. A component
//! is kept only when every one of its terms lies in the window on both legs;
//! the others are listed as truncated and never judged.

mod check;
mod delta;
mod tensor;

pub use check::{
    counit_holds, delta_check_relator, eq1_decompose, eq1_term3_formula, eval_tensor,
    oracle_annihilates, CheckReport, ComponentReport, DeltaChecker, Eq1Decomposition,
    LegCertificate, LegReducer, EQ1_MIN_WEIGHT, ORACLE_POINTS,
};
pub use delta::{delta, delta_component, delta_generator, delta_split, delta_terms, sort_theta, DeltaSplit};
pub use tensor::{counit, TensorElem};
