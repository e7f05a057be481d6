//! Exact root-system combinatorics, convergence cones and closed-form
//! evaluators for the c-functions and formal dimensions attached to
//! compactly causal symmetric spaces, plus the quadrature oracles that
//! verify the closed forms at desk scale.
//!
//! The crate is organized around a [`roots::CausalRootDatum`]: a classical
//! root system with a compact/noncompact splitting, multiplicities and
//! half-sums. From a datum one derives strongly orthogonal sets and the
//! double restricted root system ([`cayley`]), the minimal cones and
//! convergence-domain tests ([`cones`]), the closed-form evaluators
//! ([`cfn`]) and the independent integral oracles ([`oracle`]). The `cli`
//! module exposes all of it behind a command-line front end with
//! machine-readable output.

pub mod cases;
pub mod cayley;
pub mod cfn;
pub mod cli;
pub mod cones;
pub mod error;
pub mod oracle;
pub mod quad;
pub mod rat;
pub mod roots;
pub mod simplex;
pub mod special;
pub mod verify;

pub use error::{Error, Result};
