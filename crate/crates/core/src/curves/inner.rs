//! The inner statement curve: a prime-order short-Weierstrass curve
//! y^2 = x^3 + ax + b over the SNARK scalar field. Private keys, addresses
//! and Pedersen commitments live here. Addition is the affine chord/tangent
//! rule, matching the in-circuit point-addition gadget.

use rand_core::RngCore;
use sha2::{Digest, Sha256};

use crate::algebra::{limbs, FieldElement, FieldParams};
use crate::error::Error;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct InnerPoint {
    pub x: FieldElement,
    pub y: FieldElement,
    pub infinity: bool,
}

impl InnerPoint {
    pub fn infinity(base: &'static FieldParams) -> Self {
        InnerPoint {
            x: FieldElement::zero(base),
            y: FieldElement::zero(base),
            infinity: true,
        }
    }

    pub fn new(x: FieldElement, y: FieldElement) -> Self {
        InnerPoint { x, y, infinity: false }
    }

    pub fn neg(&self) -> Self {
        if self.infinity {
            *self
        } else {
            InnerPoint { x: self.x, y: -self.y, infinity: false }
        }
    }
}

/// Parameters of one inner curve, plus the derived secondary generators.
pub struct InnerCurve {
    pub name: &'static str,
    /// Coordinate field (equals the outer engine's scalar field).
    pub base: &'static FieldParams,
    /// Scalar field: the prime group order q.
    pub scalar: &'static FieldParams,
    pub a: FieldElement,
    pub b: FieldElement,
    pub generator: InnerPoint,
    /// Pedersen second generator; log_G(H) unknown by construction.
    pub pedersen_h: InnerPoint,
    /// Offset point for in-circuit accumulator chains; independent of G, H.
    pub accumulator: InnerPoint,
}

impl InnerCurve {
    /// Builds a curve description and derives H and the accumulator point by
    /// the seeded hash procedure. `acc_counter_start` lets profile setup skip
    /// accumulator candidates whose window tables hit exceptional additions.
    pub fn new(
        name: &'static str,
        base: &'static FieldParams,
        scalar: &'static FieldParams,
        a: FieldElement,
        b: FieldElement,
        generator: InnerPoint,
        acc_counter_start: u64,
    ) -> Self {
        // nonsingular: 4a^3 + 27b^2 != 0
        let four = FieldElement::from_u64(base, 4);
        let twenty_seven = FieldElement::from_u64(base, 27);
        assert!(
            !(four * a * a * a + twenty_seven * b * b).is_zero(),
            "singular curve"
        );
        let mut curve = InnerCurve {
            name,
            base,
            scalar,
            a,
            b,
            generator,
            pedersen_h: InnerPoint::infinity(base),
            accumulator: InnerPoint::infinity(base),
        };
        assert!(curve.is_on_curve(&generator), "generator not on curve");
        let (h, _) = curve.derive_point("pedersen-h", 0);
        // avoid the degenerate case H = +/-G (relevant only for tiny curves)
        let h = if h.x == generator.x {
            curve.derive_point("pedersen-h", 1).0
        } else {
            h
        };
        curve.pedersen_h = h;
        let (acc, _) = curve.derive_point("accumulator", acc_counter_start);
        curve.accumulator = acc;
        curve
    }

    /// Deterministic hash-to-point: SHA-256("poa/<curve>/<label>/<counter>")
    /// is reduced to an x-coordinate; the counter increments until
    /// x^3 + ax + b is a square. The smaller root is taken. Since the group
    /// order is prime, every finite point generates the full group.
    pub fn derive_point(&self, label: &str, counter_start: u64) -> (InnerPoint, u64) {
        let mut counter = counter_start;
        loop {
            let mut hasher = Sha256::new();
            hasher.update(b"poa/hash-to-point/");
            hasher.update(self.name.as_bytes());
            hasher.update(b"/");
            hasher.update(label.as_bytes());
            hasher.update(b"/");
            hasher.update(counter.to_be_bytes());
            let digest = hasher.finalize();
            let x = FieldElement::from_be_bytes_reduce(self.base, &digest);
            let rhs = x * x * x + self.a * x + self.b;
            if let Some(y) = rhs.sqrt() {
                if !y.is_zero() {
                    return (InnerPoint::new(x, y), counter + 1);
                }
            }
            counter += 1;
        }
    }

    pub fn is_on_curve(&self, p: &InnerPoint) -> bool {
        if p.infinity {
            return true;
        }
        p.y * p.y == p.x * p.x * p.x + self.a * p.x + self.b
    }

    /// Chord/tangent addition. Total on the group: handles identity
    /// operands, doubling, and inverse pairs.
    pub fn add(&self, p: &InnerPoint, q: &InnerPoint) -> InnerPoint {
        if p.infinity {
            return *q;
        }
        if q.infinity {
            return *p;
        }
        let m = if p.x == q.x {
            if (p.y + q.y).is_zero() {
                return InnerPoint::infinity(self.base);
            }
            // tangent: (3x^2 + a) / 2y
            let num = FieldElement::from_u64(self.base, 3) * p.x * p.x + self.a;
            num * (p.y.double()).inverse().expect("y != 0 for non-inverse pair")
        } else {
            (q.y - p.y) * (q.x - p.x).inverse().expect("x1 != x2")
        };
        let x3 = m * m - (p.x + q.x);
        let y3 = m * (p.x - x3) - p.y;
        InnerPoint::new(x3, y3)
    }

    pub fn sub(&self, p: &InnerPoint, q: &InnerPoint) -> InnerPoint {
        self.add(p, &q.neg())
    }

    pub fn double(&self, p: &InnerPoint) -> InnerPoint {
        self.add(p, p)
    }

    /// Double-and-add scalar multiplication by a scalar-field element.
    pub fn scalar_mul(&self, k: &FieldElement, p: &InnerPoint) -> InnerPoint {
        assert!(
            std::ptr::eq(k.field(), self.scalar),
            "scalar from wrong field"
        );
        self.scalar_mul_limbs(&k.canonical_limbs(), p)
    }

    pub fn scalar_mul_limbs(&self, k: &limbs::Limbs, p: &InnerPoint) -> InnerPoint {
        let mut acc = InnerPoint::infinity(self.base);
        let nbits = limbs::bits(k);
        for i in (0..nbits).rev() {
            acc = self.double(&acc);
            if limbs::bit(k, i) {
                acc = self.add(&acc, p);
            }
        }
        acc
    }

    pub fn mul_u64(&self, k: u64, p: &InnerPoint) -> InnerPoint {
        self.scalar_mul_limbs(&[k, 0, 0, 0], p)
    }

    /// Pedersen commitment c = mG + blind*H over the inner curve.
    pub fn pedersen_commit(&self, m: &FieldElement, blind: &FieldElement) -> InnerPoint {
        let mg = self.scalar_mul(m, &self.generator);
        let bh = self.scalar_mul(blind, &self.pedersen_h);
        self.add(&mg, &bh)
    }

    /// Opening check: mG + blind*H == c.
    pub fn pedersen_open(&self, c: &InnerPoint, m: &FieldElement, blind: &FieldElement) -> bool {
        self.pedersen_commit(m, blind) == *c
    }

    /// Fresh keypair (x, xG) with x uniform in [1, q).
    pub fn keygen(&self, rng: &mut impl RngCore) -> (FieldElement, InnerPoint) {
        let x = FieldElement::random_nonzero(self.scalar, rng);
        let y = self.scalar_mul(&x, &self.generator);
        (x, y)
    }

    /// Serialised width of a compressed point.
    pub fn compressed_len(&self) -> usize {
        crate::encoding::compressed_point_len(self.base, 1)
    }

    pub fn compress(&self, p: &InnerPoint) -> Vec<u8> {
        let ys = [p.y];
        crate::encoding::compress_coords(self.base, &[p.x], if p.infinity { None } else { Some(&ys) })
    }

    pub fn decompress(&self, bytes: &[u8]) -> Result<InnerPoint, Error> {
        let (xs, flags) = crate::encoding::decompress_coords(self.base, 1, bytes)?;
        if flags.infinity {
            return Ok(InnerPoint::infinity(self.base));
        }
        let x = xs[0];
        let rhs = x * x * x + self.a * x + self.b;
        let y = rhs.sqrt().ok_or(Error::NotCanonical)?;
        let y = crate::encoding::select_root(&[y], flags.y_sign)[0];
        let p = InnerPoint::new(x, y);
        debug_assert!(self.is_on_curve(&p));
        Ok(p)
    }
}
