//! Proof-of-assets toolkit core.
//!
//! Compiles the "knows the private key => commit to the balance" statement
//! into an R1CS, proves and verifies it with a Groth16-style SNARK over a
//! BN pairing curve, and aggregates per-address Pedersen commitments into a
//! commitment to total assets.
//!
//! Not hardened against side channels; arithmetic is variable-time and the
//! crate is intended for protocol simulation and analysis, not custody of
//! real keys.

pub mod algebra;
pub mod curves;
pub mod encoding;
pub mod error;

pub use error::Error;
