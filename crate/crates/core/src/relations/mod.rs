//! Relator families, windowed linear algebra over `F_p`, quotient ranks and
//! ideal-membership certificates.

mod ideal;
pub mod linalg;
mod relators;
mod tensor_lemma;

pub use ideal::{
    membership, membership_in, membership_minimal, rank_quotient, rank_quotient_exact,
    rank_quotient_seeded, with_retries, CertTerm, Certificate, ComponentSystem, Membership,
    ModularCombination, RankReport, Translate, EXACT_MAX_WORDS, MAX_RETRIES,
};
pub use relators::{
    enumerate_family, enumerate_relators, enumerate_with, nested_commutator, relator_cubic,
    relator_mixed, relator_quad, relator_r, relator_theta_comm, Family, Relator,
};
pub use tensor_lemma::{kernel_tensor_check, kernel_tensor_trials, random_surjection, TensorKernelReport};
