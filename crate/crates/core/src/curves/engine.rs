//! Outer-curve engines: the BN parameter set, tower constants derived at
//! construction time, and subgroup membership checks.
//!
//! Every derived constant (Frobenius coefficients, the final-exponentiation
//! hard part, the ate loop NAF) is computed from the primary parameters
//! (p, r, b, xi, x) rather than transcribed, and validated by tests.

use std::sync::OnceLock;

use crate::algebra::limbs::{self, Limbs};
use crate::algebra::{FieldElement, FieldParams};

use super::outer::AffinePoint;
use super::tower::Fp2;

pub struct BnEngine {
    pub name: &'static str,
    /// Base field of G1 coordinates.
    pub fp: &'static FieldParams,
    /// Scalar field (the prime group order of G1, G2, GT).
    pub fr: &'static FieldParams,
    /// G1 curve: y^2 = x^3 + b.
    pub b: FieldElement,
    /// Sextic non-residue defining Fp6 = Fp2[v]/(v^3 - xi).
    pub xi: Fp2,
    /// D-type twist: y^2 = x^3 + b/xi over Fp2.
    pub b2: Fp2,
    pub g1: AffinePoint<FieldElement>,
    pub g2: AffinePoint<Fp2>,
    /// BN parameter x (positive for both supported configurations).
    pub x_param: u128,
    /// NAF digits of 6x+2, most significant first (leading digit is 1).
    pub ate_digits: Vec<i8>,
    /// xi^((p-1)/3), xi^(2(p-1)/3), xi^((p-1)/6)
    pub fp6_f1: Fp2,
    pub fp6_f2: Fp2,
    pub fp12_w1: Fp2,
    /// Untwist-Frobenius-twist constants for G2.
    pub g2_frob_x: Fp2,
    pub g2_frob_y: Fp2,
    /// (p^4 - p^2 + 1) / r, little-endian u64 limbs.
    pub hard_exp: Vec<u64>,
}

impl std::fmt::Debug for BnEngine {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "BnEngine({})", self.name)
    }
}

struct EngineConfig {
    name: &'static str,
    fp: &'static FieldParams,
    fr: &'static FieldParams,
    b: u64,
    g1: (u64, u64),
    xi: (u64, u64),
    g2_x: (Limbs, Limbs),
    g2_y: (Limbs, Limbs),
    x_param: u128,
}

impl BnEngine {
    fn build(cfg: EngineConfig) -> BnEngine {
        let fp = cfg.fp;
        assert_eq!(fp.modulus()[0] & 3, 3, "tower assumes p = 3 (mod 4)");
        let b = FieldElement::from_u64(fp, cfg.b);
        let xi = Fp2::new(
            FieldElement::from_u64(fp, cfg.xi.0),
            FieldElement::from_u64(fp, cfg.xi.1),
        );
        let b2 = Fp2::from_base(b).mul(&xi.inverse().expect("xi nonzero"));
        let g1 = AffinePoint::new(
            FieldElement::from_u64(fp, cfg.g1.0),
            FieldElement::from_u64(fp, cfg.g1.1),
        );
        let g2 = AffinePoint::new(
            Fp2::new(
                FieldElement::from_canonical_limbs(fp, cfg.g2_x.0).unwrap(),
                FieldElement::from_canonical_limbs(fp, cfg.g2_x.1).unwrap(),
            ),
            Fp2::new(
                FieldElement::from_canonical_limbs(fp, cfg.g2_y.0).unwrap(),
                FieldElement::from_canonical_limbs(fp, cfg.g2_y.1).unwrap(),
            ),
        );

        // Frobenius constants from xi powers; p = 1 (mod 6) for BN curves.
        let (p_minus_1, _) = limbs::sub(fp.modulus(), &limbs::ONE);
        let (exp3, rem3) = limbs::div_rem_small(&p_minus_1, 3);
        let (exp6, rem6) = limbs::div_rem_small(&p_minus_1, 6);
        assert!(rem3 == 0 && rem6 == 0, "p must be 1 mod 6");
        let fp6_f1 = xi.pow_limbs(&exp3);
        let fp6_f2 = fp6_f1.square();
        let fp12_w1 = xi.pow_limbs(&exp6);
        assert_eq!(fp12_w1.square(), fp6_f1, "w1^2 must equal f1");
        let g2_frob_x = fp6_f1;
        let g2_frob_y = fp12_w1.mul(&fp6_f1); // xi^((p-1)/2)

        let engine = BnEngine {
            name: cfg.name,
            fp,
            fr: cfg.fr,
            b,
            xi,
            b2,
            g1,
            g2,
            x_param: cfg.x_param,
            ate_digits: naf(6 * cfg.x_param + 2),
            fp6_f1,
            fp6_f2,
            fp12_w1,
            g2_frob_x,
            g2_frob_y,
            hard_exp: hard_part_exponent(fp.modulus(), cfg.fr.modulus()),
        };

        assert!(engine.g1.is_on_curve(&engine.b), "g1 generator off curve");
        assert!(engine.g2.is_on_curve(&engine.b2), "g2 generator off twist");
        assert!(
            engine
                .g2
                .to_jacobian()
                .mul_limbs(cfg.fr.modulus())
                .is_identity(),
            "g2 generator has wrong order"
        );
        assert!(
            engine
                .g1
                .to_jacobian()
                .mul_limbs(cfg.fr.modulus())
                .is_identity(),
            "g1 generator has wrong order"
        );
        engine
    }

    /// G1 membership: BN G1 has cofactor one, so on-curve suffices.
    pub fn g1_contains(&self, p: &AffinePoint<FieldElement>) -> bool {
        p.is_on_curve(&self.b)
    }

    /// G2 membership: on the twist and killed by r.
    pub fn g2_contains(&self, q: &AffinePoint<Fp2>) -> bool {
        q.is_on_curve(&self.b2)
            && q.to_jacobian().mul_limbs(self.fr.modulus()).is_identity()
    }

    /// Untwist-Frobenius-twist endomorphism on G2.
    pub fn g2_frobenius(&self, q: &AffinePoint<Fp2>) -> AffinePoint<Fp2> {
        if q.infinity {
            return q.clone();
        }
        AffinePoint::new(
            q.x.frobenius().mul(&self.g2_frob_x),
            q.y.frobenius().mul(&self.g2_frob_y),
        )
    }

    pub fn g1_generator(&self) -> &AffinePoint<FieldElement> {
        &self.g1
    }

    pub fn g2_generator(&self) -> &AffinePoint<Fp2> {
        &self.g2
    }
}

/// Non-adjacent form, most significant digit first.
fn naf(mut n: u128) -> Vec<i8> {
    assert!(n > 0);
    let mut digits = Vec::new();
    while n > 0 {
        if n & 1 == 1 {
            let d: i8 = if n & 3 == 1 { 1 } else { -1 };
            digits.push(d);
            if d == 1 {
                n -= 1;
            } else {
                n += 1;
            }
        } else {
            digits.push(0);
        }
        n >>= 1;
    }
    digits.reverse();
    assert_eq!(digits[0], 1);
    digits
}

// --- variable-width unsigned helpers for the hard-part exponent ---

fn vu_normalize(v: &mut Vec<u64>) {
    while v.len() > 1 && *v.last().unwrap() == 0 {
        v.pop();
    }
}

fn vu_mul(a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut out = vec![0u64; a.len() + b.len()];
    for (i, &ai) in a.iter().enumerate() {
        let mut carry = 0u128;
        for (j, &bj) in b.iter().enumerate() {
            let t = out[i + j] as u128 + ai as u128 * bj as u128 + carry;
            out[i + j] = t as u64;
            carry = t >> 64;
        }
        let mut k = i + b.len();
        while carry > 0 {
            let t = out[k] as u128 + carry;
            out[k] = t as u64;
            carry = t >> 64;
            k += 1;
        }
    }
    vu_normalize(&mut out);
    out
}

fn vu_sub(a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut out = a.to_vec();
    let mut borrow = 0u64;
    for i in 0..out.len() {
        let bi = *b.get(i).unwrap_or(&0);
        let (v, br) = limbs::sbb(out[i], bi, borrow);
        out[i] = v;
        borrow = br;
    }
    assert_eq!(borrow, 0, "vu_sub underflow");
    vu_normalize(&mut out);
    out
}

fn vu_add_one(a: &[u64]) -> Vec<u64> {
    let mut out = a.to_vec();
    let mut carry = 1u64;
    for limb in out.iter_mut() {
        let (v, c) = limbs::adc(*limb, 0, carry);
        *limb = v;
        carry = c;
    }
    if carry > 0 {
        out.push(carry);
    }
    out
}

fn vu_bits(a: &[u64]) -> usize {
    for i in (0..a.len()).rev() {
        if a[i] != 0 {
            return 64 * i + (64 - a[i].leading_zeros() as usize);
        }
    }
    0
}

fn vu_bit(a: &[u64], i: usize) -> bool {
    (a[i / 64] >> (i % 64)) & 1 == 1
}

fn vu_cmp(a: &[u64], b: &[u64]) -> std::cmp::Ordering {
    let n = a.len().max(b.len());
    for i in (0..n).rev() {
        let ai = *a.get(i).unwrap_or(&0);
        let bi = *b.get(i).unwrap_or(&0);
        match ai.cmp(&bi) {
            std::cmp::Ordering::Equal => continue,
            ord => return ord,
        }
    }
    std::cmp::Ordering::Equal
}

/// Exact binary long division; panics on a nonzero remainder.
fn vu_div_exact(num: &[u64], den: &[u64]) -> Vec<u64> {
    let bits = vu_bits(num);
    let mut quot = vec![0u64; num.len()];
    let mut rem: Vec<u64> = vec![0];
    for i in (0..bits).rev() {
        // rem = rem*2 + bit
        let mut carry = if vu_bit(num, i) { 1u64 } else { 0 };
        for limb in rem.iter_mut() {
            let new_carry = *limb >> 63;
            *limb = (*limb << 1) | carry;
            carry = new_carry;
        }
        if carry > 0 {
            rem.push(carry);
        }
        if vu_cmp(&rem, den) != std::cmp::Ordering::Less {
            rem = vu_sub(&rem, den);
            quot[i / 64] |= 1 << (i % 64);
        }
    }
    assert!(rem.iter().all(|&l| l == 0), "division must be exact");
    vu_normalize(&mut quot);
    quot
}

/// (p^4 - p^2 + 1) / r for the cyclotomic hard part.
fn hard_part_exponent(p: &Limbs, r: &Limbs) -> Vec<u64> {
    let p_vec: Vec<u64> = p.to_vec();
    let r_vec: Vec<u64> = r.to_vec();
    let p2 = vu_mul(&p_vec, &p_vec);
    let p4 = vu_mul(&p2, &p2);
    let num = vu_add_one(&vu_sub(&p4, &p2));
    vu_div_exact(&num, &r_vec)
}

pub fn bn254_engine() -> &'static BnEngine {
    static ENGINE: OnceLock<BnEngine> = OnceLock::new();
    ENGINE.get_or_init(|| {
        BnEngine::build(EngineConfig {
            name: "bn254",
            fp: super::bn254_fp(),
            fr: super::bn254_fr(),
            b: 3,
            g1: (1, 2),
            xi: (9, 1),
            g2_x: (
                [
                    0x46debd5cd992f6ed,
                    0x674322d4f75edadd,
                    0x426a00665e5c4479,
                    0x1800deef121f1e76,
                ],
                [
                    0x97e485b7aef312c2,
                    0xf1aa493335a9e712,
                    0x7260bfb731fb5d25,
                    0x198e9393920d483a,
                ],
            ),
            g2_y: (
                [
                    0x4ce6cc0166fa7daa,
                    0xe3d1e7690c43d37b,
                    0x4aab71808dcb408f,
                    0x12c85ea5db8c6deb,
                ],
                [
                    0x55acdadcd122975b,
                    0xbc4b313370b38ef3,
                    0xec9e99ad690c3395,
                    0x090689d0585ff075,
                ],
            ),
            x_param: 4965661367192848881,
        })
    })
}

/// Small-prime configuration (p=103, r=97, BN parameter x=1). The groups are
/// tiny, letting tests compare against exhaustive computations.
pub fn toy_engine() -> &'static BnEngine {
    static ENGINE: OnceLock<BnEngine> = OnceLock::new();
    ENGINE.get_or_init(|| {
        BnEngine::build(EngineConfig {
            name: "toy-bn",
            fp: super::toy_fp(),
            fr: super::toy_fr(),
            b: 5,
            g1: (2, 42),
            xi: (2, 1),
            g2_x: ([86, 0, 0, 0], [29, 0, 0, 0]),
            g2_y: ([88, 0, 0, 0], [47, 0, 0, 0]),
            x_param: 1,
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn engines_construct_and_validate() {
        let std = bn254_engine();
        assert_eq!(naf(6 * std.x_param + 2).len(), std.ate_digits.len());
        let toy = toy_engine();
        assert_eq!(toy.ate_digits, vec![1, 0, 0, 0]); // 6*1+2 = 8
    }

    #[test]
    fn naf_reconstructs_value() {
        for n in [1u128, 2, 7, 8, 29793968203157093288] {
            let digits = naf(n);
            let mut acc: i128 = 0;
            for d in &digits {
                acc = 2 * acc + *d as i128;
            }
            assert_eq!(acc as u128, n);
        }
    }

    #[test]
    fn hard_exponent_consistency() {
        // toy: p=103, r=97 -> (103^4 - 103^2 + 1)/97
        let toy = toy_engine();
        let expected = (103u128.pow(4) - 103u128.pow(2) + 1) / 97;
        assert_eq!((103u128.pow(4) - 103u128.pow(2) + 1) % 97, 0);
        assert_eq!(toy.hard_exp.len(), 1);
        assert_eq!(toy.hard_exp[0] as u128, expected);
    }

    #[test]
    fn g2_frobenius_stays_on_twist_and_matches_order() {
        for engine in [bn254_engine(), toy_engine()] {
            let q = engine.g2.clone();
            let fq = engine.g2_frobenius(&q);
            assert!(fq.is_on_curve(&engine.b2), "{}", engine.name);
            assert!(engine.g2_contains(&fq));
            // frobenius^12 is the identity map on G2
            let mut acc = q.clone();
            for _ in 0..12 {
                acc = engine.g2_frobenius(&acc);
            }
            assert_eq!(acc, q);
        }
    }

    #[test]
    fn subgroup_checks_reject_off_twist_points() {
        let engine = bn254_engine();
        let bad = AffinePoint::new(engine.g2.x, engine.g2.x);
        assert!(!engine.g2_contains(&bad));
    }
}
