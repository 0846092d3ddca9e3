//! Fixed-width 256-bit unsigned arithmetic used as the backing store for
//! every prime field in the toolkit. Values are four little-endian u64 limbs.

use std::cmp::Ordering;

pub type Limbs = [u64; 4];

pub const ZERO: Limbs = [0, 0, 0, 0];
pub const ONE: Limbs = [1, 0, 0, 0];

#[inline(always)]
pub fn adc(a: u64, b: u64, carry: u64) -> (u64, u64) {
    let t = a as u128 + b as u128 + carry as u128;
    (t as u64, (t >> 64) as u64)
}

#[inline(always)]
pub fn sbb(a: u64, b: u64, borrow: u64) -> (u64, u64) {
    let t = (a as u128).wrapping_sub(b as u128 + borrow as u128);
    (t as u64, ((t >> 64) as u64) & 1)
}

#[inline(always)]
pub fn mac(a: u64, b: u64, c: u64, carry: u64) -> (u64, u64) {
    let t = a as u128 + b as u128 * c as u128 + carry as u128;
    (t as u64, (t >> 64) as u64)
}

pub fn add(a: &Limbs, b: &Limbs) -> (Limbs, u64) {
    let mut out = ZERO;
    let mut carry = 0;
    for i in 0..4 {
        let (v, c) = adc(a[i], b[i], carry);
        out[i] = v;
        carry = c;
    }
    (out, carry)
}

pub fn sub(a: &Limbs, b: &Limbs) -> (Limbs, u64) {
    let mut out = ZERO;
    let mut borrow = 0;
    for i in 0..4 {
        let (v, br) = sbb(a[i], b[i], borrow);
        out[i] = v;
        borrow = br;
    }
    (out, borrow)
}

pub fn cmp(a: &Limbs, b: &Limbs) -> Ordering {
    for i in (0..4).rev() {
        match a[i].cmp(&b[i]) {
            Ordering::Equal => continue,
            ord => return ord,
        }
    }
    Ordering::Equal
}

pub fn is_zero(a: &Limbs) -> bool {
    a.iter().all(|&l| l == 0)
}

pub fn bit(a: &Limbs, i: u32) -> bool {
    (a[(i / 64) as usize] >> (i % 64)) & 1 == 1
}

pub fn bits(a: &Limbs) -> u32 {
    for i in (0..4).rev() {
        if a[i] != 0 {
            return 64 * i as u32 + (64 - a[i].leading_zeros());
        }
    }
    0
}

pub fn shl1(a: &Limbs) -> (Limbs, u64) {
    let mut out = ZERO;
    let mut carry = 0;
    for i in 0..4 {
        out[i] = (a[i] << 1) | carry;
        carry = a[i] >> 63;
    }
    (out, carry)
}

pub fn shr1(a: &Limbs) -> Limbs {
    let mut out = ZERO;
    let mut carry = 0;
    for i in (0..4).rev() {
        out[i] = (a[i] >> 1) | (carry << 63);
        carry = a[i] & 1;
    }
    out
}

pub fn trailing_zeros(a: &Limbs) -> u32 {
    let mut n = 0;
    for &l in a.iter() {
        if l == 0 {
            n += 64;
        } else {
            return n + l.trailing_zeros();
        }
    }
    n
}

/// Big-endian bytes of the low `len` bytes of `a`. `len` must cover `bits(a)`.
pub fn to_be_bytes(a: &Limbs, len: usize) -> Vec<u8> {
    let mut full = [0u8; 32];
    for i in 0..4 {
        full[32 - 8 * (i + 1)..32 - 8 * i].copy_from_slice(&a[i].to_be_bytes());
    }
    full[32 - len..].to_vec()
}

/// Parses up to 32 big-endian bytes into limbs.
pub fn from_be_bytes(bytes: &[u8]) -> Limbs {
    assert!(bytes.len() <= 32, "at most 32 bytes");
    let mut full = [0u8; 32];
    full[32 - bytes.len()..].copy_from_slice(bytes);
    let mut out = ZERO;
    for i in 0..4 {
        let mut w = [0u8; 8];
        w.copy_from_slice(&full[32 - 8 * (i + 1)..32 - 8 * i]);
        out[i] = u64::from_be_bytes(w);
    }
    out
}

/// CIOS Montgomery multiplication: returns a*b*R^{-1} mod p, where R = 2^256.
/// Requires p odd and p < 2^255; result is fully reduced.
pub fn mont_mul(a: &Limbs, b: &Limbs, p: &Limbs, inv: u64) -> Limbs {
    let mut t = ZERO;
    let mut t4 = 0u64;
    let mut t5: u64;
    for i in 0..4 {
        let mut carry = 0;
        for j in 0..4 {
            let (v, c) = mac(t[j], a[i], b[j], carry);
            t[j] = v;
            carry = c;
        }
        let (v, c) = adc(t4, carry, 0);
        t4 = v;
        t5 = c;

        let m = t[0].wrapping_mul(inv);
        let (_, mut carry) = mac(t[0], m, p[0], 0);
        for j in 1..4 {
            let (v, c) = mac(t[j], m, p[j], carry);
            t[j - 1] = v;
            carry = c;
        }
        let (v, c) = adc(t4, carry, 0);
        t[3] = v;
        t4 = t5 + c;
    }
    // t4 is 0 for p < 2^255; a single conditional subtraction canonicalises.
    if t4 != 0 || cmp(&t, p) != Ordering::Less {
        let (r, _) = sub(&t, p);
        return r;
    }
    t
}

pub fn add_mod(a: &Limbs, b: &Limbs, p: &Limbs) -> Limbs {
    let (s, carry) = add(a, b);
    if carry != 0 || cmp(&s, p) != Ordering::Less {
        let (r, _) = sub(&s, p);
        r
    } else {
        s
    }
}

pub fn sub_mod(a: &Limbs, b: &Limbs, p: &Limbs) -> Limbs {
    let (d, borrow) = sub(a, b);
    if borrow != 0 {
        let (r, _) = add(&d, p);
        r
    } else {
        d
    }
}

pub fn neg_mod(a: &Limbs, p: &Limbs) -> Limbs {
    if is_zero(a) {
        ZERO
    } else {
        let (r, _) = sub(p, a);
        r
    }
}

/// Divides by a single-limb divisor, returning (quotient, remainder).
pub fn div_rem_small(a: &Limbs, d: u64) -> (Limbs, u64) {
    assert!(d != 0, "division by zero");
    let mut q = ZERO;
    let mut rem: u128 = 0;
    for i in (0..4).rev() {
        let cur = (rem << 64) | a[i] as u128;
        q[i] = (cur / d as u128) as u64;
        rem = cur % d as u128;
    }
    (q, rem as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    fn to_big(a: &Limbs) -> BigUint {
        let mut v = BigUint::default();
        for i in (0..4).rev() {
            v = (v << 64) + a[i];
        }
        v
    }

    #[test]
    fn add_sub_round_trip() {
        let a = [u64::MAX, 3, 0, 5];
        let b = [7, u64::MAX, 1, 2];
        let (s, carry) = add(&a, &b);
        assert_eq!(to_big(&s) + (BigUint::from(carry) << 256), to_big(&a) + to_big(&b));
        let (d, _) = sub(&s, &b);
        assert_eq!(d, a);
    }

    #[test]
    fn div_rem_small_matches_bigint() {
        let a = [0x0123456789abcdef, 0xfedcba9876543210, 42, 7];
        let (q, r) = div_rem_small(&a, 6);
        assert_eq!(to_big(&q) * 6u64 + r, to_big(&a));
    }

    #[test]
    fn byte_round_trip() {
        let a = [1, 2, 3, 4];
        assert_eq!(from_be_bytes(&to_be_bytes(&a, 32)), a);
    }
}
