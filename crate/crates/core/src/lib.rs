//! Exact-arithmetic tools for the sparse linear systems whose nonnegative
//! solutions are monomial sphere maps.
//!
//! A monomial map `z ↦ (…, C_α z^α, …)` sends the unit sphere of `C^n` into a
//! unit sphere exactly when the real polynomial `Σ c_α x^α` (with
//! `c_α = |C_α|²`) equals one on the hyperplane `x_1 + … + x_n = 1`.
//! Homogenizing that identity turns it into an underdetermined linear system
//! with a nonnegative right-hand side; the target dimension of the map is the
//! number of nonzero unknowns. This crate builds those systems, finds their
//! sparsest and minimum-coefficient-sum solutions with exact rational
//! arithmetic, generates the known sharp families in closed form and checks
//! candidate polynomials against the degree bounds they must satisfy.
//!
//! Module map:
//!
//! * [`poly`], [`monomial`], [`scalar`]: sparse polynomials over `Q`.
//! * [`system`]: homogenized, eliminated, symmetric and reduced systems.
//! * [`lp`]: exact simplex (Bland's rule) and optimal-vertex enumeration.
//! * [`search`]: minimum-support search and uniqueness enumeration.
//! * [`family`]: invariant polynomials, Whitney maps, tensor operations.
//! * [`newton`]: sources and sinks of the quotient's Newton diagram.
//! * [`certify`]: self-contained sharpness certificates and gap checks.
//! * [`json`]: the JSON interchange formats used by the CLI.

pub mod certify;
pub mod error;
pub mod family;
pub mod json;
pub mod linalg;
pub mod lp;
pub mod monomial;
pub mod newton;
pub mod poly;
pub mod scalar;
pub mod search;
pub mod system;

pub use error::{Error, Result};
pub use monomial::Monomial;
pub use poly::Polynomial;
pub use scalar::Scalar;
