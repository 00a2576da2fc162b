//! Exact symbolic engine for the positive half of the elliptic Hall algebra,
//! presented by the generating series `T1(z)` and `T0+(z)`.
//!
//! The crate is split along the lines of the computation:
//!
//! - [`coeff`]: exact scalars in `Q(q1, q2)` and their specialization to `F_p`.
//! - [`freealg`]: the bigraded free algebra on `u[1,d]`, `Th[0,k]`, series
//!   coefficient extraction and the adjoint action of `u[0,k]`.
//! - [`relations`]: the relator families, windows, modular ranks and
//!   ideal-membership certificates.
//! - [`coproduct`]: the coproduct on generators, windowed tensor components and
//!   the bialgebra checks.
//! - [`shuffle`]: the symmetric rational function oracle standing in for the
//!   canonical morphism.

pub mod coeff;
pub mod coproduct;
pub mod error;
pub mod freealg;
pub mod relations;
pub mod shuffle;
mod status;

pub use error::{Error, Result};
pub use status::Status;
