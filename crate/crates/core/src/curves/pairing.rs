//! Optimal ate pairing for BN curves.
//!
//! The Miller loop runs over NAF(6x+2) with the twist point tracked in
//! Jacobian coordinates, so no inversions occur inside the loop. Lines are
//! scaled by the subfield factor 2YZ^3 (doubling) resp. Z*mu (addition),
//! which the final exponentiation kills.

use crate::algebra::limbs::Limbs;
use crate::algebra::FieldElement;
use crate::error::Error;

use super::engine::BnEngine;
use super::outer::AffinePoint;
use super::tower::{Fp12, Fp2, Fp6};

/// Element of the target group GT (the r-th roots of unity in Fp12).
#[derive(Clone, Debug)]
pub struct GtElement {
    engine: &'static BnEngine,
    value: Fp12,
}

impl GtElement {
    pub fn identity(engine: &'static BnEngine) -> Self {
        GtElement { engine, value: Fp12::one(engine.fp) }
    }

    pub fn is_identity(&self) -> bool {
        self.value.is_one()
    }

    pub fn mul(&self, o: &Self) -> Self {
        GtElement {
            engine: self.engine,
            value: self.value.mul(&o.value, &self.engine.xi),
        }
    }

    pub fn inverse(&self) -> Self {
        // elements of GT are unitary: inverse = conjugate
        GtElement { engine: self.engine, value: self.value.conjugate() }
    }

    pub fn pow(&self, e: &Limbs) -> Self {
        GtElement {
            engine: self.engine,
            value: self.value.pow_vec(&e.to_vec(), &self.engine.xi),
        }
    }

    pub fn pow_fe(&self, e: &FieldElement) -> Self {
        self.pow(&e.canonical_limbs())
    }
}

impl PartialEq for GtElement {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value
    }
}
impl Eq for GtElement {}

struct LineEval {
    c00: Fp2,
    c10: Fp2,
    c11: Fp2,
}

fn mul_by_line(f: &Fp12, l: &LineEval, xi: &Fp2) -> Fp12 {
    let fp = l.c00.field();
    let d0 = Fp6::new(l.c00, Fp2::zero(fp), Fp2::zero(fp));
    let d1 = Fp6::new(l.c10, l.c11, Fp2::zero(fp));
    f.mul(&Fp12::new(d0, d1), xi)
}

struct TwistJacobian {
    x: Fp2,
    y: Fp2,
    z: Fp2,
}

/// Doubles T in place and returns the tangent line evaluated at P.
fn doubling_step(t: &mut TwistJacobian, px: FieldElement, py: FieldElement) -> LineEval {
    let xx = t.x.square();
    let yy = t.y.square();
    let yyyy = yy.square();
    let zz = t.z.square();
    let e = xx.double().add(&xx); // 3X^2

    // line first (uses the old coordinates): 2YZ^3*yP - 3X^2Z^2*xP*w + (3X^3 - 2Y^2)*vw
    let z3 = t.y.mul(&t.z).double(); // 2YZ
    let line = LineEval {
        c00: z3.mul(&zz).scale(py),
        c10: e.mul(&zz).scale(px).neg(),
        c11: e.mul(&t.x).sub(&yy.double()),
    };

    let d = t.x.add(&yy).square().sub(&xx).sub(&yyyy).double();
    let f = e.square();
    let x3 = f.sub(&d.double());
    let y3 = e.mul(&d.sub(&x3)).sub(&yyyy.double().double().double());
    t.x = x3;
    t.y = y3;
    t.z = z3;
    line
}

/// Adds the affine point Q to T in place and returns the chord line at P.
fn addition_step(
    t: &mut TwistJacobian,
    q: &AffinePoint<Fp2>,
    px: FieldElement,
    py: FieldElement,
) -> LineEval {
    let zz = t.z.square();
    let u2 = q.x.mul(&zz);
    let s2 = q.y.mul(&t.z).mul(&zz);
    let theta = s2.sub(&t.y); // y2*Z^3 - Y
    let mu = u2.sub(&t.x); // x2*Z^2 - X
    debug_assert!(!mu.is_zero(), "exceptional addition in Miller loop");

    let zmu = t.z.mul(&mu);
    let line = LineEval {
        c00: zmu.scale(py),
        c10: theta.scale(px).neg(),
        c11: theta.mul(&q.x).sub(&zmu.mul(&q.y)),
    };

    let hh = mu.square();
    let i = hh.double().double();
    let j = mu.mul(&i);
    let rr = theta.double();
    let v = t.x.mul(&i);
    let x3 = rr.square().sub(&j).sub(&v.double());
    let y3 = rr.mul(&v.sub(&x3)).sub(&t.y.mul(&j).double());
    let z3 = t.z.add(&mu).square().sub(&zz).sub(&hh);
    t.x = x3;
    t.y = y3;
    t.z = z3;
    line
}

/// Miller loop f_{6x+2,Q}(P) with the two Frobenius correction lines.
pub fn miller_loop(
    engine: &'static BnEngine,
    p: &AffinePoint<FieldElement>,
    q: &AffinePoint<Fp2>,
) -> Fp12 {
    if p.infinity || q.infinity {
        return Fp12::one(engine.fp);
    }
    let xi = &engine.xi;
    let mut f = Fp12::one(engine.fp);
    let mut t = TwistJacobian {
        x: q.x,
        y: q.y,
        z: Fp2::one(engine.fp),
    };
    let neg_q = q.neg();
    for digit in engine.ate_digits.iter().skip(1) {
        f = f.square(xi);
        let line = doubling_step(&mut t, p.x, p.y);
        f = mul_by_line(&f, &line, xi);
        match digit {
            1 => {
                let line = addition_step(&mut t, q, p.x, p.y);
                f = mul_by_line(&f, &line, xi);
            }
            -1 => {
                let line = addition_step(&mut t, &neg_q, p.x, p.y);
                f = mul_by_line(&f, &line, xi);
            }
            _ => {}
        }
    }
    let q1 = engine.g2_frobenius(q);
    let q2 = engine.g2_frobenius(&q1).neg();
    let line = addition_step(&mut t, &q1, p.x, p.y);
    f = mul_by_line(&f, &line, xi);
    let line = addition_step(&mut t, &q2, p.x, p.y);
    f = mul_by_line(&f, &line, xi);
    f
}

/// f^((p^12 - 1)/r): Frobenius-based easy part, then the cyclotomic hard
/// part by plain exponentiation with the precomputed exponent.
pub fn final_exponentiation(engine: &'static BnEngine, f: &Fp12) -> GtElement {
    let xi = &engine.xi;
    let f_inv = f.inverse(xi).expect("miller value nonzero");
    let mut r = f.conjugate().mul(&f_inv, xi); // f^(p^6 - 1)
    let r_frob2 = r
        .frobenius(&engine.fp6_f1, &engine.fp6_f2, &engine.fp12_w1)
        .frobenius(&engine.fp6_f1, &engine.fp6_f2, &engine.fp12_w1);
    r = r_frob2.mul(&r, xi); // ^(p^2 + 1)
    GtElement {
        engine,
        value: r.pow_vec(&engine.hard_exp, xi),
    }
}

/// Subgroup-checked pairing.
pub fn pairing(
    engine: &'static BnEngine,
    p: &AffinePoint<FieldElement>,
    q: &AffinePoint<Fp2>,
) -> Result<GtElement, Error> {
    if !p.infinity && !engine.g1_contains(p) {
        return Err(Error::Subgroup);
    }
    if !q.infinity && !engine.g2_contains(q) {
        return Err(Error::Subgroup);
    }
    Ok(pairing_unchecked(engine, p, q))
}

pub fn pairing_unchecked(
    engine: &'static BnEngine,
    p: &AffinePoint<FieldElement>,
    q: &AffinePoint<Fp2>,
) -> GtElement {
    final_exponentiation(engine, &miller_loop(engine, p, q))
}

/// Product of pairings sharing one final exponentiation.
pub fn multi_pairing(
    engine: &'static BnEngine,
    pairs: &[(AffinePoint<FieldElement>, AffinePoint<Fp2>)],
) -> GtElement {
    let mut f = Fp12::one(engine.fp);
    for (p, q) in pairs {
        f = f.mul(&miller_loop(engine, p, q), &engine.xi);
    }
    final_exponentiation(engine, &f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::{bn254_engine, toy_engine};
    use rand_chacha::ChaCha20Rng;
    use rand_core::SeedableRng;

    fn gen_pair(
        engine: &'static BnEngine,
    ) -> (AffinePoint<FieldElement>, AffinePoint<Fp2>) {
        (engine.g1.clone(), engine.g2.clone())
    }

    #[test]
    fn non_degenerate() {
        for engine in [toy_engine(), bn254_engine()] {
            let (p, q) = gen_pair(engine);
            let e = pairing(engine, &p, &q).unwrap();
            assert!(!e.is_identity(), "{}: e(G1, G2) must not be 1", engine.name);
            // and it has order dividing r
            assert!(e.pow(engine.fr.modulus()).is_identity());
        }
    }

    #[test]
    fn identity_inputs_map_to_identity() {
        for engine in [toy_engine(), bn254_engine()] {
            let (p, q) = gen_pair(engine);
            let o1 = AffinePoint::infinity_like(&p.x);
            let o2 = AffinePoint::infinity_like(&q.x);
            assert!(pairing(engine, &o1, &q).unwrap().is_identity());
            assert!(pairing(engine, &p, &o2).unwrap().is_identity());
        }
    }

    #[test]
    fn bilinearity_instance() {
        for engine in [toy_engine(), bn254_engine()] {
            let (p, q) = gen_pair(engine);
            let p2 = p.to_jacobian().double().to_affine();
            let e1 = pairing(engine, &p2, &q).unwrap();
            let e2 = pairing(engine, &p, &q).unwrap();
            assert_eq!(e1, e2.mul(&e2), "{}: e(2P,Q) = e(P,Q)^2", engine.name);
        }
    }

    #[test]
    fn bilinearity_exponent_bookkeeping_oracle() {
        // e(aP, bQ) == e(P,Q)^(ab) for random exponents
        for (engine, trials) in [(toy_engine(), 100usize), (bn254_engine(), 10)] {
            let mut rng = ChaCha20Rng::seed_from_u64(41);
            let (p, q) = gen_pair(engine);
            let base = pairing(engine, &p, &q).unwrap();
            for _ in 0..trials {
                let a = FieldElement::random(engine.fr, &mut rng);
                let b = FieldElement::random(engine.fr, &mut rng);
                let pa = p.to_jacobian().mul_limbs(&a.canonical_limbs()).to_affine();
                let qb = q.to_jacobian().mul_limbs(&b.canonical_limbs()).to_affine();
                let lhs = pairing(engine, &pa, &qb).unwrap();
                let ab = a * b;
                assert_eq!(lhs, base.pow_fe(&ab), "{}", engine.name);
            }
        }
    }

    #[test]
    fn toy_pairing_exhaustive_over_scalars() {
        // the toy groups have order 97: check e(aP, Q) over every scalar
        let engine = toy_engine();
        let (p, q) = gen_pair(engine);
        let base = pairing(engine, &p, &q).unwrap();
        let mut acc = GtElement::identity(engine);
        for a in 0u64..97 {
            let pa = p.to_jacobian().mul_limbs(&[a, 0, 0, 0]).to_affine();
            assert_eq!(pairing(engine, &pa, &q).unwrap(), acc, "a = {a}");
            acc = acc.mul(&base);
        }
    }

    #[test]
    fn off_subgroup_inputs_rejected() {
        let engine = bn254_engine();
        let bad_q = AffinePoint::new(engine.g2.x, engine.g2.x);
        assert!(matches!(
            pairing(engine, &engine.g1, &bad_q),
            Err(Error::Subgroup)
        ));
    }

    #[test]
    fn multi_pairing_is_product() {
        let engine = toy_engine();
        let (p, q) = gen_pair(engine);
        let p3 = p.to_jacobian().mul_limbs(&[3, 0, 0, 0]).to_affine();
        let q5 = q.to_jacobian().mul_limbs(&[5, 0, 0, 0]).to_affine();
        let prod = multi_pairing(engine, &[(p.clone(), q.clone()), (p3.clone(), q5.clone())]);
        let sep = pairing(engine, &p, &q)
            .unwrap()
            .mul(&pairing(engine, &p3, &q5).unwrap());
        assert_eq!(prod, sep);
    }
}
