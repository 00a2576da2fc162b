//! The `Z^2`-graded free algebra on `u[1,d]` (bidegree `(1,d)`) and
//! `Th[0,k]` (bidegree `(0,k)`), with windows, series bookkeeping and the
//! adjoint action of the derived elements `u[0,k]`.

mod adjoint;
mod elem;
pub mod series;
mod window;
mod word;

pub use adjoint::{ad_u0, u0_as_theta};
pub use elem::{mul, project, AlgElem};
pub use window::Window;
pub use word::{Bidegree, Generator, Word};
