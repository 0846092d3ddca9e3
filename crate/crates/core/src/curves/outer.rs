//! Group arithmetic for the outer pairing curve and its twist: Jacobian
//! coordinates over a generic coordinate field (Fp for G1, Fp2 for G2),
//! multi-scalar multiplication, and fixed-base window tables.
//!
//! All supported curves have a = 0, which the Jacobian formulas assume.

use crate::algebra::limbs::{self, Limbs};
use crate::algebra::FieldElement;
use crate::error::Error;

use super::tower::Fp2;

/// Coordinate-field operations needed by the curve formulas.
pub trait CoordField: Clone + PartialEq + std::fmt::Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn cf_is_zero(&self) -> bool;
    fn cf_add(&self, o: &Self) -> Self;
    fn cf_sub(&self, o: &Self) -> Self;
    fn cf_mul(&self, o: &Self) -> Self;
    fn cf_neg(&self) -> Self;
    fn cf_inverse(&self) -> Result<Self, Error>;
    fn cf_square(&self) -> Self {
        self.cf_mul(self)
    }
    fn cf_double(&self) -> Self {
        self.cf_add(self)
    }
}

impl CoordField for FieldElement {
    fn zero_like(&self) -> Self {
        FieldElement::zero(self.field())
    }
    fn one_like(&self) -> Self {
        FieldElement::one(self.field())
    }
    fn cf_is_zero(&self) -> bool {
        self.is_zero()
    }
    fn cf_add(&self, o: &Self) -> Self {
        *self + *o
    }
    fn cf_sub(&self, o: &Self) -> Self {
        *self - *o
    }
    fn cf_mul(&self, o: &Self) -> Self {
        *self * *o
    }
    fn cf_neg(&self) -> Self {
        -*self
    }
    fn cf_inverse(&self) -> Result<Self, Error> {
        self.inverse()
    }
}

impl CoordField for Fp2 {
    fn zero_like(&self) -> Self {
        Fp2::zero(self.field())
    }
    fn one_like(&self) -> Self {
        Fp2::one(self.field())
    }
    fn cf_is_zero(&self) -> bool {
        self.is_zero()
    }
    fn cf_add(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn cf_sub(&self, o: &Self) -> Self {
        self.sub(o)
    }
    fn cf_mul(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn cf_neg(&self) -> Self {
        self.neg()
    }
    fn cf_inverse(&self) -> Result<Self, Error> {
        self.inverse()
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct AffinePoint<F: CoordField> {
    pub x: F,
    pub y: F,
    pub infinity: bool,
}

impl<F: CoordField> AffinePoint<F> {
    pub fn new(x: F, y: F) -> Self {
        AffinePoint { x, y, infinity: false }
    }

    pub fn infinity_like(sample: &F) -> Self {
        AffinePoint {
            x: sample.zero_like(),
            y: sample.zero_like(),
            infinity: true,
        }
    }

    pub fn neg(&self) -> Self {
        AffinePoint {
            x: self.x.clone(),
            y: self.y.cf_neg(),
            infinity: self.infinity,
        }
    }

    pub fn to_jacobian(&self) -> JacobianPoint<F> {
        if self.infinity {
            JacobianPoint::identity_like(&self.x)
        } else {
            JacobianPoint {
                x: self.x.clone(),
                y: self.y.clone(),
                z: self.x.one_like(),
            }
        }
    }

    /// y^2 == x^3 + b
    pub fn is_on_curve(&self, b: &F) -> bool {
        if self.infinity {
            return true;
        }
        self.y.cf_square() == self.x.cf_square().cf_mul(&self.x).cf_add(b)
    }
}

#[derive(Clone, Debug)]
pub struct JacobianPoint<F: CoordField> {
    pub x: F,
    pub y: F,
    pub z: F,
}

impl<F: CoordField> JacobianPoint<F> {
    pub fn identity_like(sample: &F) -> Self {
        JacobianPoint {
            x: sample.one_like(),
            y: sample.one_like(),
            z: sample.zero_like(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.z.cf_is_zero()
    }

    pub fn neg(&self) -> Self {
        JacobianPoint { x: self.x.clone(), y: self.y.cf_neg(), z: self.z.clone() }
    }

    /// dbl-2009-l (a = 0).
    pub fn double(&self) -> Self {
        if self.is_identity() {
            return self.clone();
        }
        let a = self.x.cf_square();
        let b = self.y.cf_square();
        let c = b.cf_square();
        let mut d = self.x.cf_add(&b).cf_square().cf_sub(&a).cf_sub(&c);
        d = d.cf_double();
        let e = a.cf_double().cf_add(&a);
        let f = e.cf_square();
        let x3 = f.cf_sub(&d.cf_double());
        let c8 = c.cf_double().cf_double().cf_double();
        let y3 = e.cf_mul(&d.cf_sub(&x3)).cf_sub(&c8);
        let z3 = self.y.cf_mul(&self.z).cf_double();
        JacobianPoint { x: x3, y: y3, z: z3 }
    }

    /// add-2007-bl, handling doubling and inverse pairs.
    pub fn add(&self, o: &Self) -> Self {
        if self.is_identity() {
            return o.clone();
        }
        if o.is_identity() {
            return self.clone();
        }
        let z1z1 = self.z.cf_square();
        let z2z2 = o.z.cf_square();
        let u1 = self.x.cf_mul(&z2z2);
        let u2 = o.x.cf_mul(&z1z1);
        let s1 = self.y.cf_mul(&o.z).cf_mul(&z2z2);
        let s2 = o.y.cf_mul(&self.z).cf_mul(&z1z1);
        if u1 == u2 {
            if s1 == s2 {
                return self.double();
            }
            return Self::identity_like(&self.x);
        }
        let h = u2.cf_sub(&u1);
        let i = h.cf_double().cf_square();
        let j = h.cf_mul(&i);
        let rr = s2.cf_sub(&s1).cf_double();
        let v = u1.cf_mul(&i);
        let x3 = rr.cf_square().cf_sub(&j).cf_sub(&v.cf_double());
        let y3 = rr.cf_mul(&v.cf_sub(&x3)).cf_sub(&s1.cf_mul(&j).cf_double());
        let z3 = self
            .z
            .cf_add(&o.z)
            .cf_square()
            .cf_sub(&z1z1)
            .cf_sub(&z2z2)
            .cf_mul(&h);
        JacobianPoint { x: x3, y: y3, z: z3 }
    }

    /// Mixed addition with an affine operand (madd-2007-bl).
    pub fn add_affine(&self, o: &AffinePoint<F>) -> Self {
        if o.infinity {
            return self.clone();
        }
        if self.is_identity() {
            return o.to_jacobian();
        }
        let z1z1 = self.z.cf_square();
        let u2 = o.x.cf_mul(&z1z1);
        let s2 = o.y.cf_mul(&self.z).cf_mul(&z1z1);
        if u2 == self.x {
            if s2 == self.y {
                return self.double();
            }
            return Self::identity_like(&self.x);
        }
        let h = u2.cf_sub(&self.x);
        let hh = h.cf_square();
        let i = hh.cf_double().cf_double();
        let j = h.cf_mul(&i);
        let rr = s2.cf_sub(&self.y).cf_double();
        let v = self.x.cf_mul(&i);
        let x3 = rr.cf_square().cf_sub(&j).cf_sub(&v.cf_double());
        let y3 = rr.cf_mul(&v.cf_sub(&x3)).cf_sub(&self.y.cf_mul(&j).cf_double());
        let z3 = self.z.cf_add(&h).cf_square().cf_sub(&z1z1).cf_sub(&hh);
        JacobianPoint { x: x3, y: y3, z: z3 }
    }

    pub fn mul_limbs(&self, k: &Limbs) -> Self {
        let mut acc = Self::identity_like(&self.x);
        for i in (0..limbs::bits(k)).rev() {
            acc = acc.double();
            if limbs::bit(k, i) {
                acc = acc.add(self);
            }
        }
        acc
    }

    pub fn to_affine(&self) -> AffinePoint<F> {
        if self.is_identity() {
            return AffinePoint::infinity_like(&self.x);
        }
        let z_inv = self.z.cf_inverse().expect("nonzero z");
        let z2 = z_inv.cf_square();
        let z3 = z2.cf_mul(&z_inv);
        AffinePoint::new(self.x.cf_mul(&z2), self.y.cf_mul(&z3))
    }

    /// Batch conversion with a single inversion chain.
    pub fn batch_to_affine(points: &[Self]) -> Vec<AffinePoint<F>> {
        if points.is_empty() {
            return Vec::new();
        }
        let sample = &points[0].x;
        let one = sample.one_like();
        let mut prefix = Vec::with_capacity(points.len());
        let mut acc = one.clone();
        for p in points {
            prefix.push(acc.clone());
            if !p.is_identity() {
                acc = acc.cf_mul(&p.z);
            }
        }
        let mut inv = acc.cf_inverse().expect("product of nonzero z");
        let mut out = vec![AffinePoint::infinity_like(sample); points.len()];
        for i in (0..points.len()).rev() {
            let p = &points[i];
            if p.is_identity() {
                continue;
            }
            let z_inv = inv.cf_mul(&prefix[i]);
            inv = inv.cf_mul(&p.z);
            let z2 = z_inv.cf_square();
            let z3 = z2.cf_mul(&z_inv);
            out[i] = AffinePoint::new(p.x.cf_mul(&z2), p.y.cf_mul(&z3));
        }
        out
    }

    pub fn equals(&self, o: &Self) -> bool {
        if self.is_identity() || o.is_identity() {
            return self.is_identity() && o.is_identity();
        }
        let z1z1 = self.z.cf_square();
        let z2z2 = o.z.cf_square();
        self.x.cf_mul(&z2z2) == o.x.cf_mul(&z1z1)
            && self.y.cf_mul(&o.z).cf_mul(&z2z2) == o.y.cf_mul(&self.z).cf_mul(&z1z1)
    }
}

/// Windowed-bucket multi-scalar multiplication. Scalars are canonical limb
/// values; output is deterministic in the inputs.
pub fn msm<F: CoordField>(bases: &[AffinePoint<F>], scalars: &[Limbs]) -> JacobianPoint<F> {
    assert_eq!(bases.len(), scalars.len(), "msm length mismatch");
    let sample = match bases.first() {
        Some(b) => b.x.clone(),
        None => panic!("msm needs at least one term"),
    };
    let c: u32 = match bases.len() {
        0..=15 => 3,
        16..=127 => 4,
        128..=1023 => 6,
        1024..=8191 => 8,
        _ => 10,
    };
    let max_bits = scalars
        .iter()
        .map(limbs::bits)
        .max()
        .unwrap_or(0)
        .max(1);
    let windows = (max_bits + c - 1) / c;
    let mut total = JacobianPoint::identity_like(&sample);
    for w in (0..windows).rev() {
        for _ in 0..c {
            total = total.double();
        }
        let mut buckets =
            vec![JacobianPoint::identity_like(&sample); (1usize << c) - 1];
        for (base, scalar) in bases.iter().zip(scalars) {
            if base.infinity {
                continue;
            }
            let mut digit = 0usize;
            for bit in 0..c {
                let idx = w * c + bit;
                if idx < 256 && limbs::bit(scalar, idx) {
                    digit |= 1 << bit;
                }
            }
            if digit != 0 {
                buckets[digit - 1] = buckets[digit - 1].add_affine(base);
            }
        }
        let mut running = JacobianPoint::identity_like(&sample);
        let mut sum = JacobianPoint::identity_like(&sample);
        for b in buckets.iter().rev() {
            running = running.add(b);
            sum = sum.add(&running);
        }
        total = total.add(&sum);
    }
    total
}

/// Precomputed window table for repeated multiplications of one base point.
pub struct FixedBaseTable<F: CoordField> {
    window: u32,
    tables: Vec<Vec<AffinePoint<F>>>,
}

impl<F: CoordField> FixedBaseTable<F> {
    pub fn new(base: &AffinePoint<F>, max_bits: u32) -> Self {
        let window = 4u32;
        let outer = (max_bits + window - 1) / window;
        let mut tables = Vec::with_capacity(outer as usize);
        let mut cur = base.to_jacobian();
        for _ in 0..outer {
            let mut row = Vec::with_capacity((1 << window) - 1);
            let mut acc = cur.clone();
            for _ in 0..(1 << window) - 1 {
                row.push(acc.clone());
                acc = acc.add(&cur);
            }
            tables.push(JacobianPoint::batch_to_affine(&row));
            cur = acc; // base * 2^window
        }
        FixedBaseTable { window, tables }
    }

    pub fn mul(&self, scalar: &Limbs) -> JacobianPoint<F> {
        let sample = &self.tables[0][0].x;
        let mut acc = JacobianPoint::identity_like(sample);
        for (w, row) in self.tables.iter().enumerate() {
            let mut digit = 0usize;
            for bit in 0..self.window {
                let idx = w as u32 * self.window + bit;
                if idx < 256 && limbs::bit(scalar, idx) {
                    digit |= 1 << bit;
                }
            }
            if digit != 0 {
                acc = acc.add_affine(&row[digit - 1]);
            }
        }
        acc
    }

    pub fn mul_fe(&self, scalar: &FieldElement) -> JacobianPoint<F> {
        self.mul(&scalar.canonical_limbs())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand_chacha::ChaCha20Rng;
    use rand_core::SeedableRng;

    fn g1_gen() -> AffinePoint<FieldElement> {
        crate::curves::bn254_engine().g1.clone()
    }

    #[test]
    fn jacobian_matches_naive_double_and_add() {
        let g = g1_gen().to_jacobian();
        let mut naive = JacobianPoint::identity_like(&g.x);
        for k in 0u64..40 {
            assert!(g.mul_limbs(&[k, 0, 0, 0]).equals(&naive), "k = {k}");
            naive = naive.add(&g);
        }
    }

    #[test]
    fn add_handles_doubling_and_inverse() {
        let g = g1_gen().to_jacobian();
        assert!(g.add(&g).equals(&g.double()));
        assert!(g.add(&g.neg()).is_identity());
        let id = JacobianPoint::identity_like(&g.x);
        assert!(g.add(&id).equals(&g));
        assert!(id.add(&g).equals(&g));
    }

    #[test]
    fn msm_matches_naive_sum() {
        let engine = crate::curves::bn254_engine();
        let mut rng = ChaCha20Rng::seed_from_u64(31);
        let g = engine.g1.to_jacobian();
        let mut bases = Vec::new();
        let mut scalars = Vec::new();
        let mut expected = JacobianPoint::identity_like(&g.x);
        for _ in 0..60 {
            let k = crate::algebra::FieldElement::random(engine.fr, &mut rng);
            let b = g.mul_limbs(&k.canonical_limbs()).to_affine();
            let s = crate::algebra::FieldElement::random(engine.fr, &mut rng);
            expected = expected.add(&b.to_jacobian().mul_limbs(&s.canonical_limbs()));
            bases.push(b);
            scalars.push(s.canonical_limbs());
        }
        assert!(msm(&bases, &scalars).equals(&expected));
    }

    #[test]
    fn fixed_base_table_matches_plain_mul() {
        let engine = crate::curves::bn254_engine();
        let mut rng = ChaCha20Rng::seed_from_u64(32);
        let table = FixedBaseTable::new(&engine.g1, engine.fr.bits());
        for _ in 0..20 {
            let k = crate::algebra::FieldElement::random(engine.fr, &mut rng);
            let via_table = table.mul_fe(&k);
            let plain = engine.g1.to_jacobian().mul_limbs(&k.canonical_limbs());
            assert!(via_table.equals(&plain));
        }
    }

    #[test]
    fn batch_to_affine_matches_individual() {
        let g = g1_gen().to_jacobian();
        let pts: Vec<_> = (1u64..10).map(|k| g.mul_limbs(&[k, 0, 0, 0])).collect();
        let batch = JacobianPoint::batch_to_affine(&pts);
        for (j, a) in pts.iter().zip(batch.iter()) {
            assert_eq!(&j.to_affine(), a);
        }
    }
}
