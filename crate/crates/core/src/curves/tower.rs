//! Extension-field tower for the pairing: Fp2 = Fp[u]/(u^2+1),
//! Fp6 = Fp2[v]/(v^3 - xi), Fp12 = Fp6[w]/(w^2 - v).
//!
//! Fp2 is self-contained (both supported base primes are 3 mod 4, so
//! u^2 = -1 works). Fp6/Fp12 operations take the sextic non-residue `xi`
//! from the engine.

use crate::algebra::{limbs::Limbs, FieldElement, FieldParams};
use crate::error::Error;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Fp2 {
    pub c0: FieldElement,
    pub c1: FieldElement,
}

impl Fp2 {
    pub fn new(c0: FieldElement, c1: FieldElement) -> Self {
        Fp2 { c0, c1 }
    }

    pub fn zero(f: &'static FieldParams) -> Self {
        Fp2::new(FieldElement::zero(f), FieldElement::zero(f))
    }

    pub fn one(f: &'static FieldParams) -> Self {
        Fp2::new(FieldElement::one(f), FieldElement::zero(f))
    }

    pub fn from_base(c0: FieldElement) -> Self {
        Fp2::new(c0, FieldElement::zero(c0.field()))
    }

    pub fn field(&self) -> &'static FieldParams {
        self.c0.field()
    }

    pub fn is_zero(&self) -> bool {
        self.c0.is_zero() && self.c1.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.c0.is_one() && self.c1.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        Fp2::new(self.c0 + o.c0, self.c1 + o.c1)
    }

    pub fn sub(&self, o: &Self) -> Self {
        Fp2::new(self.c0 - o.c0, self.c1 - o.c1)
    }

    pub fn neg(&self) -> Self {
        Fp2::new(-self.c0, -self.c1)
    }

    pub fn double(&self) -> Self {
        Fp2::new(self.c0.double(), self.c1.double())
    }

    pub fn mul(&self, o: &Self) -> Self {
        // (a0 + a1 u)(b0 + b1 u) with u^2 = -1
        let t0 = self.c0 * o.c0;
        let t1 = self.c1 * o.c1;
        let sum = (self.c0 + self.c1) * (o.c0 + o.c1);
        Fp2::new(t0 - t1, sum - t0 - t1)
    }

    pub fn square(&self) -> Self {
        // (a0+a1)(a0-a1) + 2 a0 a1 u
        let s = self.c0 + self.c1;
        let d = self.c0 - self.c1;
        let t = self.c0 * self.c1;
        Fp2::new(s * d, t.double())
    }

    pub fn scale(&self, k: FieldElement) -> Self {
        Fp2::new(self.c0 * k, self.c1 * k)
    }

    pub fn mul_small(&self, k: u64) -> Self {
        self.scale(FieldElement::from_u64(self.field(), k))
    }

    pub fn inverse(&self) -> Result<Self, Error> {
        let norm = self.c0.square() + self.c1.square();
        let inv = norm.inverse()?;
        Ok(Fp2::new(self.c0 * inv, -(self.c1 * inv)))
    }

    /// Frobenius endomorphism x -> x^p; conjugation since p = 3 (mod 4).
    pub fn frobenius(&self) -> Self {
        Fp2::new(self.c0, -self.c1)
    }

    pub fn pow_limbs(&self, e: &Limbs) -> Self {
        let mut acc = Fp2::one(self.field());
        let nbits = crate::algebra::limbs::bits(e);
        for i in (0..nbits).rev() {
            acc = acc.square();
            if crate::algebra::limbs::bit(e, i) {
                acc = acc.mul(self);
            }
        }
        acc
    }

    /// Square root via the complex method (p = 3 mod 4). Returns the
    /// lexicographically smaller root.
    pub fn sqrt(&self) -> Option<Self> {
        let f = self.field();
        if self.is_zero() {
            return Some(*self);
        }
        if self.c1.is_zero() {
            // sqrt of a base-field element: either sqrt(c0) or sqrt(-c0)*u
            if let Some(r) = self.c0.sqrt() {
                return Some(smaller(Fp2::from_base(r)));
            }
            let r = (-self.c0).sqrt()?;
            return Some(smaller(Fp2::new(FieldElement::zero(f), r)));
        }
        // alpha = norm = c0^2 + c1^2 must be a square in Fp
        let norm = self.c0.square() + self.c1.square();
        let alpha = norm.sqrt()?;
        let two_inv = FieldElement::from_u64(f, 2).inverse().unwrap();
        let mut delta = (self.c0 + alpha) * two_inv;
        if delta.is_zero() || delta.sqrt().is_none() {
            delta = (self.c0 - alpha) * two_inv;
        }
        let x0 = delta.sqrt()?;
        let x1 = self.c1 * two_inv * x0.inverse().ok()?;
        let cand = Fp2::new(x0, x1);
        if cand.square() == *self {
            Some(smaller(cand))
        } else {
            None
        }
    }
}

fn smaller(x: Fp2) -> Fp2 {
    if crate::encoding::y_sign_of(&[x.c0, x.c1]) {
        x.neg()
    } else {
        x
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Fp6 {
    pub c0: Fp2,
    pub c1: Fp2,
    pub c2: Fp2,
}

impl Fp6 {
    pub fn new(c0: Fp2, c1: Fp2, c2: Fp2) -> Self {
        Fp6 { c0, c1, c2 }
    }

    pub fn zero(f: &'static FieldParams) -> Self {
        Fp6::new(Fp2::zero(f), Fp2::zero(f), Fp2::zero(f))
    }

    pub fn one(f: &'static FieldParams) -> Self {
        Fp6::new(Fp2::one(f), Fp2::zero(f), Fp2::zero(f))
    }

    pub fn is_zero(&self) -> bool {
        self.c0.is_zero() && self.c1.is_zero() && self.c2.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        Fp6::new(self.c0.add(&o.c0), self.c1.add(&o.c1), self.c2.add(&o.c2))
    }

    pub fn sub(&self, o: &Self) -> Self {
        Fp6::new(self.c0.sub(&o.c0), self.c1.sub(&o.c1), self.c2.sub(&o.c2))
    }

    pub fn neg(&self) -> Self {
        Fp6::new(self.c0.neg(), self.c1.neg(), self.c2.neg())
    }

    /// Multiplication by v: (c0, c1, c2) -> (xi*c2, c0, c1).
    pub fn mul_by_v(&self, xi: &Fp2) -> Self {
        Fp6::new(self.c2.mul(xi), self.c0, self.c1)
    }

    pub fn mul(&self, o: &Self, xi: &Fp2) -> Self {
        let v0 = self.c0.mul(&o.c0);
        let v1 = self.c1.mul(&o.c1);
        let v2 = self.c2.mul(&o.c2);
        let c0 = {
            let t = self.c1.add(&self.c2).mul(&o.c1.add(&o.c2)).sub(&v1).sub(&v2);
            v0.add(&t.mul(xi))
        };
        let c1 = {
            let t = self.c0.add(&self.c1).mul(&o.c0.add(&o.c1)).sub(&v0).sub(&v1);
            t.add(&v2.mul(xi))
        };
        let c2 = {
            let t = self.c0.add(&self.c2).mul(&o.c0.add(&o.c2)).sub(&v0).sub(&v2);
            t.add(&v1)
        };
        Fp6::new(c0, c1, c2)
    }

    pub fn square(&self, xi: &Fp2) -> Self {
        self.mul(self, xi)
    }

    pub fn scale2(&self, k: &Fp2) -> Self {
        Fp6::new(self.c0.mul(k), self.c1.mul(k), self.c2.mul(k))
    }

    pub fn inverse(&self, xi: &Fp2) -> Result<Self, Error> {
        let t0 = self.c0.square().sub(&self.c1.mul(&self.c2).mul(xi));
        let t1 = self.c2.square().mul(xi).sub(&self.c0.mul(&self.c1));
        let t2 = self.c1.square().sub(&self.c0.mul(&self.c2));
        let d = self
            .c0
            .mul(&t0)
            .add(&self.c2.mul(&t1).add(&self.c1.mul(&t2)).mul(xi));
        let d_inv = d.inverse()?;
        Ok(Fp6::new(t0.mul(&d_inv), t1.mul(&d_inv), t2.mul(&d_inv)))
    }

    /// One application of the p-power Frobenius; `f1 = xi^((p-1)/3)`,
    /// `f2 = xi^(2(p-1)/3)`.
    pub fn frobenius(&self, f1: &Fp2, f2: &Fp2) -> Self {
        Fp6::new(
            self.c0.frobenius(),
            self.c1.frobenius().mul(f1),
            self.c2.frobenius().mul(f2),
        )
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Fp12 {
    pub c0: Fp6,
    pub c1: Fp6,
}

impl Fp12 {
    pub fn new(c0: Fp6, c1: Fp6) -> Self {
        Fp12 { c0, c1 }
    }

    pub fn one(f: &'static FieldParams) -> Self {
        Fp12::new(Fp6::one(f), Fp6::zero(f))
    }

    pub fn is_one(&self) -> bool {
        self.c1.is_zero() && self.c0.c1.is_zero() && self.c0.c2.is_zero() && self.c0.c0.is_one()
    }

    pub fn mul(&self, o: &Self, xi: &Fp2) -> Self {
        let v0 = self.c0.mul(&o.c0, xi);
        let v1 = self.c1.mul(&o.c1, xi);
        let c0 = v0.add(&v1.mul_by_v(xi));
        let c1 = self
            .c0
            .add(&self.c1)
            .mul(&o.c0.add(&o.c1), xi)
            .sub(&v0)
            .sub(&v1);
        Fp12::new(c0, c1)
    }

    pub fn square(&self, xi: &Fp2) -> Self {
        self.mul(self, xi)
    }

    /// Conjugation in the quadratic extension; equals x -> x^(p^6).
    pub fn conjugate(&self) -> Self {
        Fp12::new(self.c0, self.c1.neg())
    }

    pub fn inverse(&self, xi: &Fp2) -> Result<Self, Error> {
        let d = self.c0.square(xi).sub(&self.c1.square(xi).mul_by_v(xi));
        let d_inv = d.inverse(xi)?;
        Ok(Fp12::new(self.c0.mul(&d_inv, xi), self.c1.mul(&d_inv, xi).neg()))
    }

    /// One application of the p-power Frobenius. `w1 = xi^((p-1)/6)` scales
    /// the odd part; f1/f2 are the Fp6 constants.
    pub fn frobenius(&self, f1: &Fp2, f2: &Fp2, w1: &Fp2) -> Self {
        let c0 = self.c0.frobenius(f1, f2);
        let c1 = self.c1.frobenius(f1, f2).scale2(w1);
        Fp12::new(c0, c1)
    }

    pub fn pow_vec(&self, e: &[u64], xi: &Fp2) -> Self {
        let f = self.c0.c0.field();
        let mut acc = Fp12::one(f);
        let mut started = false;
        for i in (0..e.len() * 64).rev() {
            if started {
                acc = acc.square(xi);
            }
            if (e[i / 64] >> (i % 64)) & 1 == 1 {
                if started {
                    acc = acc.mul(self, xi);
                } else {
                    acc = *self;
                    started = true;
                }
            }
        }
        if started {
            acc
        } else {
            Fp12::one(f)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand_chacha::ChaCha20Rng;
    use rand_core::{RngCore, SeedableRng};

    fn rand_fp2(f: &'static FieldParams, rng: &mut impl RngCore) -> Fp2 {
        Fp2::new(FieldElement::random(f, rng), FieldElement::random(f, rng))
    }

    #[test]
    fn fp2_field_axioms_and_inverse() {
        for f in [crate::curves::bn254_fp(), crate::curves::toy_fp()] {
            let mut rng = ChaCha20Rng::seed_from_u64(21);
            for _ in 0..200 {
                let a = rand_fp2(f, &mut rng);
                let b = rand_fp2(f, &mut rng);
                let c = rand_fp2(f, &mut rng);
                assert_eq!(a.mul(&b), b.mul(&a));
                assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
                assert_eq!(a.square(), a.mul(&a));
                if !a.is_zero() {
                    assert!(a.mul(&a.inverse().unwrap()).is_one());
                }
            }
        }
    }

    #[test]
    fn fp2_frobenius_is_p_power() {
        // exhaustive-ish check on the toy prime where x^p is cheap
        let f = crate::curves::toy_fp();
        let p = *f.modulus();
        let mut rng = ChaCha20Rng::seed_from_u64(22);
        for _ in 0..100 {
            let a = rand_fp2(f, &mut rng);
            assert_eq!(a.frobenius(), a.pow_limbs(&p));
        }
    }

    #[test]
    fn fp2_sqrt_round_trip() {
        for f in [crate::curves::bn254_fp(), crate::curves::toy_fp()] {
            let mut rng = ChaCha20Rng::seed_from_u64(23);
            for _ in 0..100 {
                let a = rand_fp2(f, &mut rng);
                let sq = a.square();
                let r = sq.sqrt().expect("square has root");
                assert_eq!(r.square(), sq);
            }
        }
    }

    fn toy_xi() -> Fp2 {
        let f = crate::curves::toy_fp();
        Fp2::new(FieldElement::from_u64(f, 2), FieldElement::from_u64(f, 1))
    }

    fn rand_fp6(f: &'static FieldParams, rng: &mut impl RngCore) -> Fp6 {
        Fp6::new(rand_fp2(f, rng), rand_fp2(f, rng), rand_fp2(f, rng))
    }

    #[test]
    fn fp6_inverse_and_ring_axioms() {
        let f = crate::curves::toy_fp();
        let xi = toy_xi();
        let mut rng = ChaCha20Rng::seed_from_u64(24);
        for _ in 0..200 {
            let a = rand_fp6(f, &mut rng);
            let b = rand_fp6(f, &mut rng);
            let c = rand_fp6(f, &mut rng);
            assert_eq!(a.mul(&b, &xi), b.mul(&a, &xi));
            assert_eq!(
                a.mul(&b.add(&c), &xi),
                a.mul(&b, &xi).add(&a.mul(&c, &xi))
            );
            assert_eq!(
                a.mul(&b, &xi).mul(&c, &xi),
                a.mul(&b.mul(&c, &xi), &xi)
            );
            if !a.is_zero() {
                let inv = a.inverse(&xi).unwrap();
                let one = a.mul(&inv, &xi);
                assert_eq!(one, Fp6::one(f));
            }
        }
    }

    #[test]
    fn fp12_inverse_and_conjugate() {
        let f = crate::curves::toy_fp();
        let xi = toy_xi();
        let mut rng = ChaCha20Rng::seed_from_u64(25);
        for _ in 0..100 {
            let a = Fp12::new(rand_fp6(f, &mut rng), rand_fp6(f, &mut rng));
            if a.c0.is_zero() && a.c1.is_zero() {
                continue;
            }
            let inv = a.inverse(&xi).unwrap();
            assert!(a.mul(&inv, &xi).is_one());
            // conjugation is multiplicative
            let b = Fp12::new(rand_fp6(f, &mut rng), rand_fp6(f, &mut rng));
            assert_eq!(
                a.mul(&b, &xi).conjugate(),
                a.conjugate().mul(&b.conjugate(), &xi)
            );
        }
    }
}
