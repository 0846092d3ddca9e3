//! Elliptic-curve layers: the inner "statement" curve carrying keys and
//! Pedersen commitments, and the outer pairing-friendly curve whose groups
//! G1/G2/GT carry the SNARK.
//!
//! Two configurations exist. The standard profile pairs a BN curve at the
//! ~128-bit level with an embedded inner curve defined over its scalar
//! field (so the whole statement arithmetises natively). The toy profile
//! uses the same construction over small primes (p=103, r=97) so unit tests
//! can exercise group structure exhaustively.

mod engine;
mod inner;
mod outer;
mod pairing;
mod profile;
mod tower;

pub use engine::{toy_engine, BnEngine};
pub use inner::{InnerCurve, InnerPoint};
pub use outer::{msm, AffinePoint, CoordField, FixedBaseTable, JacobianPoint};
pub use pairing::{multi_pairing, pairing, pairing_unchecked, GtElement};
pub use profile::{profile, CurveProfile, ProfileParams};
pub use tower::{Fp12, Fp2, Fp6};

use crate::algebra::FieldParams;

/// BN254 base field (G1/G2 coordinates; also the inner curve's group order).
pub fn bn254_fp() -> &'static FieldParams {
    FieldParams::get(
        [
            0x3c208c16d87cfd47,
            0x97816a916871ca8d,
            0xb85045b68181585d,
            0x30644e72e131a029,
        ],
        "bn254-fp",
    )
}

/// BN254 scalar field: the SNARK field, and the inner curve's base field.
pub fn bn254_fr() -> &'static FieldParams {
    FieldParams::get(
        [
            0x43e1f593f0000001,
            0x2833e84879b97091,
            0xb85045b68181585d,
            0x30644e72e131a029,
        ],
        "bn254-fr",
    )
}

/// Toy outer base field (p = 103).
pub fn toy_fp() -> &'static FieldParams {
    FieldParams::get([103, 0, 0, 0], "toy-fp")
}

/// Toy outer scalar field (r = 97).
pub fn toy_fr() -> &'static FieldParams {
    FieldParams::get([97, 0, 0, 0], "toy-fr")
}

/// Toy inner-curve scalar field (group order 79).
pub fn toy_inner_order() -> &'static FieldParams {
    FieldParams::get([79, 0, 0, 0], "toy-inner-order")
}

/// The standard-profile outer engine.
pub fn bn254_engine() -> &'static BnEngine {
    engine::bn254_engine()
}
