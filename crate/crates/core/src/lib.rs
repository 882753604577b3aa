//! Eigenvalues of conformally invariant intertwinors `A_{2r}` on scalar
//! functions over `S^p x S^q`, by three routes (lattice recursion, gamma
//! ratio, factorized polynomial), plus a zonal function algebra on which
//! the defining operator identities are checked.

pub mod closedform;
pub mod error;
pub mod geometry;
pub mod leading;
pub mod spectrum;
pub mod verify;
pub mod zonal;

pub use error::{Error, Result};
pub use geometry::{KType, Quadrant, Signature, Sphere};
pub use leading::{LeadingTerm, SignedLogValue, SpectralValue};
pub use spectrum::{Continuation, SpectralOrder, SpectrumTable};
