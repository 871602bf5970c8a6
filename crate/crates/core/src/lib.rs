//! Exact Coxeter groups, Dunkl operators and the Macdonald-Mehta integral.
//!
//! The crate is organised bottom-up:
//!
//! * [`scalars`]: number fields `ℚ(2cos π/m)` and polynomials in `k`.
//! * [`coxeter`]: root systems, group enumeration, degrees and the rank-two
//!   identities.
//! * [`polynomials`]: sparse polynomials on the reflection representation.
//! * [`dunkl`]: Dunkl operators and the contravariant and Gaussian forms.
//! * [`mmintegral`]: exact Wick moments and seeded Monte Carlo estimates.
//! * [`cli`]: the verification suite behind the `coxdunkl` binary.

pub mod cli;
pub mod coxeter;
pub mod dunkl;
pub mod error;
pub mod mmintegral;
pub mod polynomials;
pub mod scalars;

pub use error::{Error, Result};
