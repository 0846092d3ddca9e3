//! Prime-field arithmetic with a runtime field registry.
//!
//! Every [`FieldElement`] carries a tag identifying which prime field it
//! belongs to; mixing elements from different fields is a programming error
//! and panics. Elements are stored in Montgomery form and serialise as
//! fixed-width big-endian byte strings of `ceil(modulus_bits / 8)` bytes.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Mutex;

use rand_core::RngCore;

use super::limbs::{self, Limbs};
use crate::error::Error;

/// Immutable description of one prime field, interned for the process
/// lifetime. Obtain instances through [`FieldParams::get`].
pub struct FieldParams {
    name: &'static str,
    modulus: Limbs,
    bits: u32,
    byte_len: usize,
    inv: u64,
    r1: Limbs,
    r2: Limbs,
    modulus_minus_2: Limbs,
    euler: Limbs, // (p-1)/2
    two_adicity: u32,
    trace: Limbs, // odd part of p-1
    trace_plus_1_half: Limbs,
    two_adic_root: Limbs, // montgomery, multiplicative order 2^two_adicity
}

static REGISTRY: Mutex<Vec<&'static FieldParams>> = Mutex::new(Vec::new());

impl FieldParams {
    /// Interns (or retrieves) the field with the given odd prime modulus.
    /// The caller is responsible for the primality of `modulus`.
    pub fn get(modulus: Limbs, name: &'static str) -> &'static FieldParams {
        let mut reg = REGISTRY.lock().unwrap();
        if let Some(existing) = reg.iter().find(|f| f.modulus == modulus) {
            return existing;
        }
        let params = Box::leak(Box::new(Self::build(modulus, name)));
        reg.push(params);
        params
    }

    fn build(modulus: Limbs, name: &'static str) -> FieldParams {
        assert!(modulus[0] & 1 == 1, "modulus must be odd");
        let bits = limbs::bits(&modulus);
        assert!(bits >= 3 && bits <= 255, "modulus out of range");

        // -p^{-1} mod 2^64 by Newton iteration.
        let mut inv = modulus[0];
        for _ in 0..5 {
            inv = inv.wrapping_mul(2u64.wrapping_sub(modulus[0].wrapping_mul(inv)));
        }
        let inv = inv.wrapping_neg();

        // R mod p and R^2 mod p by repeated modular doubling of 1.
        let mut r1 = limbs::ONE;
        for _ in 0..256 {
            r1 = double_mod(&r1, &modulus);
        }
        let mut r2 = r1;
        for _ in 0..256 {
            r2 = double_mod(&r2, &modulus);
        }

        let (modulus_minus_2, _) = limbs::sub(&modulus, &[2, 0, 0, 0]);
        let (p_minus_1, _) = limbs::sub(&modulus, &limbs::ONE);
        let euler = limbs::shr1(&p_minus_1);
        let two_adicity = limbs::trailing_zeros(&p_minus_1);
        let mut trace = p_minus_1;
        for _ in 0..two_adicity {
            trace = limbs::shr1(&trace);
        }
        let (trace_plus_1, _) = limbs::add(&trace, &limbs::ONE);
        let trace_plus_1_half = limbs::shr1(&trace_plus_1);

        // Smallest quadratic non-residue, lifted to an element of exact
        // multiplicative order 2^two_adicity (used by Tonelli-Shanks).
        // Raw Montgomery arithmetic since `self` is not yet interned.
        let raw_pow = |base: &Limbs, e: &Limbs| -> Limbs {
            let mut acc = r1;
            for i in (0..limbs::bits(e)).rev() {
                acc = limbs::mont_mul(&acc, &acc, &modulus, inv);
                if limbs::bit(e, i) {
                    acc = limbs::mont_mul(&acc, base, &modulus, inv);
                }
            }
            acc
        };
        let mut k = 2u64;
        let two_adic_root = loop {
            let reduced = if limbs::cmp(&[k, 0, 0, 0], &modulus) == Ordering::Less {
                [k, 0, 0, 0]
            } else {
                [k % modulus[0], 0, 0, 0]
            };
            let cand = limbs::mont_mul(&reduced, &r2, &modulus, inv);
            if !limbs::is_zero(&cand) && raw_pow(&cand, &euler) != r1 {
                break raw_pow(&cand, &trace);
            }
            k += 1;
        };

        FieldParams {
            name,
            modulus,
            bits,
            byte_len: ((bits + 7) / 8) as usize,
            inv,
            r1,
            r2,
            modulus_minus_2,
            euler,
            two_adicity,
            trace,
            trace_plus_1_half,
            two_adic_root,
        }
    }

    fn element_from_u64(&'static self, v: u64) -> FieldElement {
        let reduced = if limbs::cmp(&[v, 0, 0, 0], &self.modulus) == Ordering::Less {
            [v, 0, 0, 0]
        } else {
            [v % self.modulus[0], 0, 0, 0] // only possible for single-limb moduli
        };
        FieldElement {
            limbs: limbs::mont_mul(&reduced, &self.r2, &self.modulus, self.inv),
            field: self,
        }
    }

    fn one_element(&'static self) -> FieldElement {
        FieldElement { limbs: self.r1, field: self }
    }

    pub fn name(&self) -> &'static str {
        self.name
    }

    pub fn modulus(&self) -> &Limbs {
        &self.modulus
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    /// Serialised width of one element in bytes.
    pub fn byte_len(&self) -> usize {
        self.byte_len
    }

    pub fn two_adicity(&self) -> u32 {
        self.two_adicity
    }

    /// Whether two leading flag bits fit above the modulus in the top byte of
    /// the fixed-width encoding (used by compressed point formats).
    pub fn has_spare_flag_bits(&self) -> bool {
        self.bits as usize <= 8 * self.byte_len - 2
    }

    /// A fixed element of multiplicative order exactly `2^two_adicity`.
    pub fn two_adic_root(&'static self) -> FieldElement {
        FieldElement { limbs: self.two_adic_root, field: self }
    }
}

impl PartialEq for FieldParams {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self, other)
    }
}
impl Eq for FieldParams {}

impl fmt::Debug for FieldParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldParams({})", self.name)
    }
}

fn double_mod(a: &Limbs, p: &Limbs) -> Limbs {
    let (d, _) = limbs::shl1(a);
    if limbs::cmp(&d, p) != Ordering::Less {
        let (r, _) = limbs::sub(&d, p);
        r
    } else {
        d
    }
}

/// An element of a prime field, tagged with the field it belongs to.
#[derive(Clone, Copy)]
pub struct FieldElement {
    limbs: Limbs, // montgomery form
    field: &'static FieldParams,
}

#[inline]
fn assert_same(a: &FieldElement, b: &FieldElement) {
    assert!(
        std::ptr::eq(a.field, b.field),
        "field mismatch: {} vs {}",
        a.field.name,
        b.field.name
    );
}

impl FieldElement {
    pub fn zero(field: &'static FieldParams) -> Self {
        FieldElement { limbs: limbs::ZERO, field }
    }

    pub fn one(field: &'static FieldParams) -> Self {
        field.one_element()
    }

    pub fn from_u64(field: &'static FieldParams, v: u64) -> Self {
        field.element_from_u64(v)
    }

    pub fn from_i64(field: &'static FieldParams, v: i64) -> Self {
        if v >= 0 {
            Self::from_u64(field, v as u64)
        } else {
            -Self::from_u64(field, v.unsigned_abs())
        }
    }

    /// Builds an element from canonical (non-Montgomery) limbs reduced mod p.
    pub fn from_canonical_limbs(field: &'static FieldParams, raw: Limbs) -> Result<Self, Error> {
        if limbs::cmp(&raw, &field.modulus) != Ordering::Less {
            return Err(Error::NotCanonical);
        }
        Ok(FieldElement {
            limbs: limbs::mont_mul(&raw, &field.r2, &field.modulus, field.inv),
            field,
        })
    }

    /// Interprets up to 32 bytes (big-endian) as an integer, reducing mod p.
    pub fn from_be_bytes_reduce(field: &'static FieldParams, bytes: &[u8]) -> Self {
        let mut raw = limbs::from_be_bytes(bytes);
        // at most two subtractions are insufficient in general; loop on cmp
        while limbs::cmp(&raw, &field.modulus) != Ordering::Less {
            let (r, _) = limbs::sub(&raw, &field.modulus);
            raw = r;
        }
        FieldElement {
            limbs: limbs::mont_mul(&raw, &field.r2, &field.modulus, field.inv),
            field,
        }
    }

    /// Strict fixed-width decoder; rejects values >= p.
    pub fn from_be_bytes(field: &'static FieldParams, bytes: &[u8]) -> Result<Self, Error> {
        if bytes.len() != field.byte_len {
            return Err(Error::NotCanonical);
        }
        Self::from_canonical_limbs(field, limbs::from_be_bytes(bytes))
    }

    pub fn to_be_bytes(&self) -> Vec<u8> {
        limbs::to_be_bytes(&self.canonical_limbs(), self.field.byte_len)
    }

    pub fn canonical_limbs(&self) -> Limbs {
        limbs::mont_mul(&self.limbs, &limbs::ONE, &self.field.modulus, self.field.inv)
    }

    /// Canonical value as u64; panics if it does not fit.
    pub fn as_u64(&self) -> u64 {
        let c = self.canonical_limbs();
        assert!(c[1] == 0 && c[2] == 0 && c[3] == 0, "value does not fit in u64");
        c[0]
    }

    pub fn field(&self) -> &'static FieldParams {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        limbs::is_zero(&self.limbs)
    }

    pub fn is_one(&self) -> bool {
        self.limbs == self.field.r1
    }

    pub fn double(&self) -> Self {
        FieldElement {
            limbs: limbs::add_mod(&self.limbs, &self.limbs, &self.field.modulus),
            field: self.field,
        }
    }

    pub fn square(&self) -> Self {
        FieldElement {
            limbs: limbs::mont_mul(&self.limbs, &self.limbs, &self.field.modulus, self.field.inv),
            field: self.field,
        }
    }

    /// Multiplicative inverse; zero is rejected.
    pub fn inverse(&self) -> Result<Self, Error> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow_limbs(&self.field.modulus_minus_2))
    }

    pub fn pow_u64(&self, e: u64) -> Self {
        self.pow_limbs(&[e, 0, 0, 0])
    }

    pub fn pow_limbs(&self, e: &Limbs) -> Self {
        let mut acc = Self::one(self.field);
        let nbits = limbs::bits(e);
        for i in (0..nbits).rev() {
            acc = acc.square();
            if limbs::bit(e, i) {
                acc = acc * *self;
            }
        }
        acc
    }

    /// Legendre symbol: 1, -1, or 0 encoded as field elements 1, p-1, 0.
    pub fn legendre(&self) -> Self {
        self.pow_limbs(&self.field.euler)
    }

    /// Tonelli-Shanks square root; `None` for non-residues. For residues the
    /// lexicographically smaller of the two roots is returned.
    pub fn sqrt(&self) -> Option<Self> {
        let field = self.field;
        if self.is_zero() {
            return Some(*self);
        }
        if self.legendre() != Self::one(field) {
            return None;
        }
        let mut t = self.pow_limbs(&field.trace);
        let mut r = self.pow_limbs(&field.trace_plus_1_half);
        let mut c = field.two_adic_root();
        let mut m = field.two_adicity;
        while !t.is_one() {
            let mut i = 0;
            let mut t2 = t;
            while !t2.is_one() {
                t2 = t2.square();
                i += 1;
            }
            let mut b = c;
            for _ in 0..(m - i - 1) {
                b = b.square();
            }
            m = i;
            c = b.square();
            t = t * c;
            r = r * b;
        }
        debug_assert_eq!(r.square(), *self);
        let neg = -r;
        if limbs::cmp(&r.canonical_limbs(), &neg.canonical_limbs()) == Ordering::Greater {
            Some(neg)
        } else {
            Some(r)
        }
    }

    /// Uniform element via rejection sampling on the top-masked byte string.
    pub fn random(field: &'static FieldParams, rng: &mut impl RngCore) -> Self {
        let len = field.byte_len;
        let spare = (8 * len) as u32 - field.bits;
        let mask = if spare == 0 { 0xff } else { 0xffu8 >> spare };
        let mut buf = vec![0u8; len];
        loop {
            rng.fill_bytes(&mut buf);
            buf[0] &= mask;
            let raw = limbs::from_be_bytes(&buf);
            if limbs::cmp(&raw, &field.modulus) == Ordering::Less {
                return FieldElement {
                    limbs: limbs::mont_mul(&raw, &field.r2, &field.modulus, field.inv),
                    field,
                };
            }
        }
    }

    /// Uniform nonzero element.
    pub fn random_nonzero(field: &'static FieldParams, rng: &mut impl RngCore) -> Self {
        loop {
            let v = Self::random(field, rng);
            if !v.is_zero() {
                return v;
            }
        }
    }

    /// Batch inversion by Montgomery's trick; errors if any input is zero.
    pub fn batch_inverse(values: &mut [Self]) -> Result<(), Error> {
        if values.is_empty() {
            return Ok(());
        }
        let field = values[0].field;
        let mut prefix = Vec::with_capacity(values.len());
        let mut acc = Self::one(field);
        for v in values.iter() {
            if v.is_zero() {
                return Err(Error::DivisionByZero);
            }
            prefix.push(acc);
            acc = acc * *v;
        }
        let mut inv = acc.inverse()?;
        for i in (0..values.len()).rev() {
            let orig = values[i];
            values[i] = inv * prefix[i];
            inv = inv * orig;
        }
        Ok(())
    }
}

impl std::ops::Add for FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: Self) -> Self {
        assert_same(&self, &rhs);
        FieldElement {
            limbs: limbs::add_mod(&self.limbs, &rhs.limbs, &self.field.modulus),
            field: self.field,
        }
    }
}

impl std::ops::Sub for FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: Self) -> Self {
        assert_same(&self, &rhs);
        FieldElement {
            limbs: limbs::sub_mod(&self.limbs, &rhs.limbs, &self.field.modulus),
            field: self.field,
        }
    }
}

impl std::ops::Mul for FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: Self) -> Self {
        assert_same(&self, &rhs);
        FieldElement {
            limbs: limbs::mont_mul(&self.limbs, &rhs.limbs, &self.field.modulus, self.field.inv),
            field: self.field,
        }
    }
}

impl std::ops::Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> Self {
        FieldElement {
            limbs: limbs::neg_mod(&self.limbs, &self.field.modulus),
            field: self.field,
        }
    }
}

impl std::ops::AddAssign for FieldElement {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}
impl std::ops::SubAssign for FieldElement {
    fn sub_assign(&mut self, rhs: Self) {
        *self = *self - rhs;
    }
}
impl std::ops::MulAssign for FieldElement {
    fn mul_assign(&mut self, rhs: Self) {
        *self = *self * rhs;
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.field, other.field) && self.limbs == other.limbs
    }
}
impl Eq for FieldElement {}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.canonical_limbs();
        write!(f, "Fe<{}>(0x", self.field.name)?;
        let mut started = false;
        for i in (0..4).rev() {
            if started {
                write!(f, "{:016x}", c[i])?;
            } else if c[i] != 0 || i == 0 {
                write!(f, "{:x}", c[i])?;
                started = true;
            }
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;
    use rand_chacha::ChaCha20Rng;
    use rand_core::SeedableRng;

    fn f97() -> &'static FieldParams {
        FieldParams::get([97, 0, 0, 0], "f97-test")
    }

    fn to_big(a: &Limbs) -> BigUint {
        let mut v = BigUint::default();
        for i in (0..4).rev() {
            v = (v << 64) + a[i];
        }
        v
    }

    #[test]
    fn small_field_exhaustive() {
        let f = f97();
        for a in 0..97u64 {
            for b in 0..97u64 {
                let fa = FieldElement::from_u64(f, a);
                let fb = FieldElement::from_u64(f, b);
                assert_eq!((fa + fb).as_u64(), (a + b) % 97);
                assert_eq!((fa * fb).as_u64(), (a * b) % 97);
                assert_eq!((fa - fb).as_u64(), (97 + a - b) % 97);
            }
        }
    }

    #[test]
    fn inverse_matches_extended_euclid_oracle() {
        // independent oracle: extended Euclid on big integers
        let f = crate::curves::bn254_fr();
        let p = to_big(f.modulus());
        let mut rng = ChaCha20Rng::seed_from_u64(7);
        for _ in 0..1000 {
            let a = FieldElement::random_nonzero(f, &mut rng);
            let inv = a.inverse().unwrap();
            assert!((a * inv).is_one());
            let big_a = to_big(&a.canonical_limbs());
            let big_inv = big_a.modpow(&(p.clone() - 2u32), &p);
            assert_eq!(to_big(&inv.canonical_limbs()), big_inv);
        }
    }

    #[test]
    fn inverse_of_zero_rejected() {
        let f = f97();
        assert!(matches!(
            FieldElement::zero(f).inverse(),
            Err(Error::DivisionByZero)
        ));
    }

    #[test]
    fn additive_inverse_identity() {
        let f = crate::curves::bn254_fr();
        let mut rng = ChaCha20Rng::seed_from_u64(8);
        for _ in 0..100 {
            let a = FieldElement::random(f, &mut rng);
            assert!((a + (-a)).is_zero());
            assert_eq!(FieldElement::one(f) * a, a);
        }
    }

    #[test]
    fn field_axioms_randomized() {
        for f in [crate::curves::bn254_fr(), crate::curves::bn254_fp(), f97()] {
            let mut rng = ChaCha20Rng::seed_from_u64(9);
            for _ in 0..1000 {
                let a = FieldElement::random(f, &mut rng);
                let b = FieldElement::random(f, &mut rng);
                let c = FieldElement::random(f, &mut rng);
                assert_eq!((a + b) + c, a + (b + c));
                assert_eq!(a * (b + c), a * b + a * c);
                assert_eq!((a * b) * c, a * (b * c));
                assert_eq!(a * b, b * a);
            }
        }
    }

    #[test]
    fn sqrt_round_trip() {
        for f in [crate::curves::bn254_fr(), crate::curves::bn254_fp(), f97()] {
            let mut rng = ChaCha20Rng::seed_from_u64(10);
            let mut residues = 0;
            for _ in 0..200 {
                let a = FieldElement::random(f, &mut rng);
                let sq = a.square();
                let r = sq.sqrt().expect("square must have a root");
                assert_eq!(r.square(), sq);
                if a.sqrt().is_some() {
                    residues += 1;
                }
            }
            // roughly half of random elements are residues
            assert!(residues > 50 && residues < 150, "residues = {residues}");
        }
    }

    #[test]
    fn byte_round_trip_and_width() {
        let f = crate::curves::bn254_fr();
        assert_eq!(f.byte_len(), 32);
        assert_eq!(f97().byte_len(), 1);
        let mut rng = ChaCha20Rng::seed_from_u64(11);
        for _ in 0..50 {
            let a = FieldElement::random(f, &mut rng);
            let bytes = a.to_be_bytes();
            assert_eq!(bytes.len(), 32);
            assert_eq!(FieldElement::from_be_bytes(f, &bytes).unwrap(), a);
        }
    }

    #[test]
    #[should_panic(expected = "field mismatch")]
    fn cross_field_ops_panic() {
        let a = FieldElement::from_u64(f97(), 1);
        let b = FieldElement::from_u64(crate::curves::bn254_fr(), 1);
        let _ = a + b;
    }
}
