//! Curve profiles bind an outer engine to an inner statement curve and fix
//! the scalar widths used by the circuits, plus the precomputed window
//! tables shared by in-circuit gadgets and witness generation.
//!
//! Window chains accumulate through a seeded offset point N: window g of a
//! chain selects among {O_g, A_g+O_g, 2A_g+O_g, 3A_g+O_g} with
//! O_g = 2^(g+1) * N, the chain starts at N, and one final addition removes
//! the accumulated offset. The offsets make every selected point finite and
//! keep chain collisions behind a discrete-log relation between N and the
//! window base.

use std::sync::OnceLock;

use super::engine::{bn254_engine, toy_engine, BnEngine};
use super::inner::{InnerCurve, InnerPoint};
use crate::algebra::FieldElement;
use crate::error::Error;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CurveProfile {
    Standard,
    Toy,
}

impl CurveProfile {
    pub fn id(&self) -> u8 {
        match self {
            CurveProfile::Standard => 0,
            CurveProfile::Toy => 1,
        }
    }

    pub fn from_id(id: u8) -> Result<Self, Error> {
        match id {
            0 => Ok(CurveProfile::Standard),
            1 => Ok(CurveProfile::Toy),
            other => Err(Error::parse(0, format!("unknown curve profile id {other}"))),
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            CurveProfile::Standard => "standard",
            CurveProfile::Toy => "toy",
        }
    }
}

impl std::str::FromStr for CurveProfile {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "standard" => Ok(CurveProfile::Standard),
            "toy" => Ok(CurveProfile::Toy),
            other => Err(format!("unknown curve profile `{other}` (standard|toy)")),
        }
    }
}

/// A two-bit selection window: constants for bit patterns 00, 01, 10, 11.
#[derive(Clone)]
pub struct Window2 {
    pub t0: InnerPoint,
    pub t1: InnerPoint,
    pub t2: InnerPoint,
    pub t3: InnerPoint,
}

/// A single-bit selection window.
#[derive(Clone)]
pub struct Window1 {
    pub t0: InnerPoint,
    pub t1: InnerPoint,
}

#[derive(Clone)]
pub enum Window {
    Two(Window2),
    One(Window1),
}

/// A full accumulation chain: the ordered windows covering one or more
/// scalar-multiplication segments, the start constant, and the negated
/// total offset removed by the final addition.
#[derive(Clone)]
pub struct MulChain {
    pub windows: Vec<Window>,
    pub start: InnerPoint,
    pub remove: InnerPoint, // -(start + sum of window offsets)
}

/// One scalar-multiplication segment inside a chain.
#[derive(Clone, Copy)]
pub struct Segment {
    pub base: SegmentBase,
    pub bits: u32,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SegmentBase {
    Generator,
    PedersenH,
}

pub struct ProfileParams {
    pub profile: CurveProfile,
    pub engine: &'static BnEngine,
    pub inner: InnerCurve,
    /// Width of private-key and blinding scalars in circuit bits.
    pub key_bits: u32,
    /// Width of balances in circuit bits; balances are < 2^balance_bits.
    pub balance_bits: u32,
    /// Chain for the key multiplication x*G.
    pub key_chain: MulChain,
    /// Chain for the commitment b*G + r*H (balance segment then blinding
    /// segment, one shared accumulator).
    pub commit_chain: MulChain,
}

impl ProfileParams {
    pub fn max_balance(&self) -> u64 {
        (1u64 << self.balance_bits) - 1
    }

    pub fn balance_to_scalar(&self, v: u64) -> FieldElement {
        FieldElement::from_u64(self.inner.scalar, v)
    }

    pub fn balance_to_snark_field(&self, v: u64) -> FieldElement {
        FieldElement::from_u64(self.inner.base, v)
    }
}

fn build_chain(curve: &InnerCurve, segments: &[Segment]) -> Result<MulChain, Error> {
    let n = curve.accumulator;
    let mut windows = Vec::new();
    let mut offset = curve.double(&n); // O_0 = 2N
    let mut total = n; // start S = N
    for seg in segments {
        let base = match seg.base {
            SegmentBase::Generator => curve.generator,
            SegmentBase::PedersenH => curve.pedersen_h,
        };
        let mut step = base; // 2^bit * base for the current bit position
        let mut bit = 0;
        while bit < seg.bits {
            let two_bit = seg.bits - bit >= 2;
            let a = step;
            if two_bit {
                let b = curve.double(&a);
                let c = curve.add(&a, &b);
                let w = Window2 {
                    t0: offset,
                    t1: finite(curve.add(&a, &offset))?,
                    t2: finite(curve.add(&b, &offset))?,
                    t3: finite(curve.add(&c, &offset))?,
                };
                windows.push(Window::Two(w));
                step = curve.double(&curve.double(&step));
                bit += 2;
            } else {
                let w = Window1 {
                    t0: offset,
                    t1: finite(curve.add(&a, &offset))?,
                };
                windows.push(Window::One(w));
                step = curve.double(&step);
                bit += 1;
            }
            total = curve.add(&total, &offset);
            offset = curve.double(&offset);
        }
    }
    Ok(MulChain {
        windows,
        start: n,
        remove: total.neg(),
    })
}

fn finite(p: InnerPoint) -> Result<InnerPoint, Error> {
    if p.infinity {
        Err(Error::ExceptionalPoint)
    } else {
        Ok(p)
    }
}

fn build_params(
    profile: CurveProfile,
    engine: &'static BnEngine,
    name: &'static str,
    a: i64,
    b: i64,
    generator: (u64, &str),
    scalar: &'static crate::algebra::FieldParams,
    key_bits: u32,
    balance_bits: u32,
) -> ProfileParams {
    let base = engine.fr;
    let gx = FieldElement::from_u64(base, generator.0);
    let gy = {
        // decimal string to field element
        let mut acc = FieldElement::zero(base);
        let ten = FieldElement::from_u64(base, 10);
        for ch in generator.1.bytes() {
            acc = acc * ten + FieldElement::from_u64(base, (ch - b'0') as u64);
        }
        acc
    };
    // Derive the accumulator point, retrying candidates whose window tables
    // hit an exceptional fold (possible only on tiny curves).
    let mut acc_counter = 0;
    loop {
        let inner = InnerCurve::new(
            name,
            base,
            scalar,
            FieldElement::from_i64(base, a),
            FieldElement::from_i64(base, b),
            InnerPoint::new(gx, gy),
            acc_counter,
        );
        let key_segments = [Segment { base: SegmentBase::Generator, bits: key_bits }];
        let commit_segments = [
            Segment { base: SegmentBase::Generator, bits: balance_bits },
            Segment { base: SegmentBase::PedersenH, bits: key_bits },
        ];
        match (
            build_chain(&inner, &key_segments),
            build_chain(&inner, &commit_segments),
        ) {
            (Ok(key_chain), Ok(commit_chain)) => {
                return ProfileParams {
                    profile,
                    engine,
                    inner,
                    key_bits,
                    balance_bits,
                    key_chain,
                    commit_chain,
                };
            }
            _ => {
                acc_counter += 1;
                assert!(acc_counter < 100, "no usable accumulator point found");
            }
        }
    }
}

/// Returns the shared parameter set for a profile.
pub fn profile(p: CurveProfile) -> &'static ProfileParams {
    match p {
        CurveProfile::Standard => {
            static PARAMS: OnceLock<ProfileParams> = OnceLock::new();
            PARAMS.get_or_init(|| {
                build_params(
                    CurveProfile::Standard,
                    bn254_engine(),
                    "inner-std",
                    0,
                    -17,
                    (1, "17631683881184975370165255887551781615748388533673675138860"),
                    super::bn254_fp(),
                    256,
                    51,
                )
            })
        }
        CurveProfile::Toy => {
            static PARAMS: OnceLock<ProfileParams> = OnceLock::new();
            PARAMS.get_or_init(|| {
                build_params(
                    CurveProfile::Toy,
                    toy_engine(),
                    "inner-toy",
                    0,
                    5,
                    (1, "43"),
                    super::toy_inner_order(),
                    8,
                    6,
                )
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_profile_shapes() {
        let p = profile(CurveProfile::Standard);
        assert_eq!(p.key_bits, 256);
        assert_eq!(p.balance_bits, 51);
        assert_eq!(p.key_chain.windows.len(), 128);
        // commit chain: 25 two-bit + 1 one-bit balance windows, 128 blind windows
        assert_eq!(p.commit_chain.windows.len(), 26 + 128);
        let ones = p
            .commit_chain
            .windows
            .iter()
            .filter(|w| matches!(w, Window::One(_)))
            .count();
        assert_eq!(ones, 1);
        assert!(2u64.pow(p.balance_bits) > 2_100_000_000_000_000); // covers max supply in satoshi
    }

    #[test]
    fn toy_profile_shapes() {
        let p = profile(CurveProfile::Toy);
        assert_eq!(p.key_chain.windows.len(), 4);
        assert_eq!(p.commit_chain.windows.len(), 3 + 4);
        assert!(p.max_balance() < p.inner.scalar.modulus()[0]);
    }

    #[test]
    fn chain_offsets_telescope() {
        // start + sum of offsets + remove = O, and selecting pattern 00 in
        // every window accumulates exactly the removed offset
        for prof in [CurveProfile::Standard, CurveProfile::Toy] {
            let p = profile(prof);
            let c = &p.inner;
            for chain in [&p.key_chain, &p.commit_chain] {
                let mut acc = chain.start;
                for w in &chain.windows {
                    let sel = match w {
                        Window::Two(w) => w.t0,
                        Window::One(w) => w.t0,
                    };
                    acc = c.add(&acc, &sel);
                }
                assert!(c.add(&acc, &chain.remove).infinity, "{prof:?}");
            }
        }
    }

    #[test]
    fn window_tables_encode_base_multiples() {
        // selecting bits (1,0) in window g adds 4^g * base (plus offset)
        let p = profile(CurveProfile::Toy);
        let c = &p.inner;
        let mut expected = c.generator;
        for w in &p.key_chain.windows {
            match w {
                Window::Two(w) => {
                    assert_eq!(c.sub(&w.t1, &w.t0), expected);
                    assert_eq!(c.sub(&w.t2, &w.t0), c.double(&expected));
                    assert_eq!(
                        c.sub(&w.t3, &w.t0),
                        c.add(&expected, &c.double(&expected))
                    );
                    expected = c.double(&c.double(&expected));
                }
                Window::One(w) => {
                    assert_eq!(c.sub(&w.t1, &w.t0), expected);
                    expected = c.double(&expected);
                }
            }
        }
    }
}
