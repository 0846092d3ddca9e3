//! Evaluation domains for QAP interpolation and division.
//!
//! Two kinds are supported: a radix-2 roots-of-unity domain (with FFT paths)
//! when the field has enough two-adicity, and an arbitrary-distinct-points
//! domain evaluated by O(n^2) Lagrange formulas. The FFT paths must produce
//! bit-identical results to the Lagrange baseline; tests enforce this.

use super::field::{FieldElement, FieldParams};
use super::poly::Polynomial;
use crate::error::Error;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum DomainKind {
    Radix2,
    Arbitrary,
}

#[derive(Clone)]
pub struct EvaluationDomain {
    field: &'static FieldParams,
    kind: DomainKind,
    points: Vec<FieldElement>,
    /// generator of the subgroup (radix-2 only)
    omega: Option<FieldElement>,
    log_size: u32,
}

impl EvaluationDomain {
    /// Roots-of-unity domain of size `min_size.next_power_of_two()`.
    pub fn radix2(field: &'static FieldParams, min_size: usize) -> Result<Self, Error> {
        if min_size == 0 {
            return Err(Error::Domain("domain must be nonempty".into()));
        }
        let size = min_size.next_power_of_two();
        let log_size = size.trailing_zeros();
        if log_size > field.two_adicity() {
            return Err(Error::Domain(format!(
                "field {} lacks two-adicity for domain of size {}",
                field.name(),
                size
            )));
        }
        let mut omega = field.two_adic_root();
        for _ in 0..(field.two_adicity() - log_size) {
            omega = omega.square();
        }
        let mut points = Vec::with_capacity(size);
        let mut acc = FieldElement::one(field);
        for _ in 0..size {
            points.push(acc);
            acc *= omega;
        }
        Ok(EvaluationDomain { field, kind: DomainKind::Radix2, points, omega: Some(omega), log_size })
    }

    /// Domain of exactly `size` distinct points 0, 1, ..., size-1.
    pub fn arbitrary(field: &'static FieldParams, size: usize) -> Result<Self, Error> {
        if size == 0 {
            return Err(Error::Domain("domain must be nonempty".into()));
        }
        if field.bits() < 64 && size as u64 >= field.modulus()[0] {
            return Err(Error::Domain("domain larger than the field".into()));
        }
        let points = (0..size as u64)
            .map(|i| FieldElement::from_u64(field, i))
            .collect();
        Ok(EvaluationDomain { field, kind: DomainKind::Arbitrary, points, omega: None, log_size: 0 })
    }

    /// Preferred domain covering `n` constraints: the smallest power-of-two
    /// roots-of-unity domain when the field supports it, otherwise exactly
    /// `n` distinct points.
    pub fn for_constraints(field: &'static FieldParams, n: usize) -> Result<Self, Error> {
        let want = n.max(1).next_power_of_two();
        if want.trailing_zeros() <= field.two_adicity() {
            Self::radix2(field, n.max(1))
        } else {
            Self::arbitrary(field, n.max(1))
        }
    }

    pub fn field(&self) -> &'static FieldParams {
        self.field
    }

    pub fn kind(&self) -> DomainKind {
        self.kind
    }

    pub fn size(&self) -> usize {
        self.points.len()
    }

    pub fn points(&self) -> &[FieldElement] {
        &self.points
    }

    /// t(x) = prod_j (x - point_j); x^n - 1 on a radix-2 domain.
    pub fn vanishing_poly(&self) -> Polynomial {
        match self.kind {
            DomainKind::Radix2 => {
                let mut coeffs = vec![FieldElement::zero(self.field); self.size() + 1];
                coeffs[0] = -FieldElement::one(self.field);
                coeffs[self.size()] = FieldElement::one(self.field);
                Polynomial::new(self.field, coeffs)
            }
            DomainKind::Arbitrary => {
                let mut acc = Polynomial::constant(FieldElement::one(self.field));
                for p in &self.points {
                    acc = acc.mul(&Polynomial::new(
                        self.field,
                        vec![-*p, FieldElement::one(self.field)],
                    ));
                }
                acc
            }
        }
    }

    pub fn evaluate_vanishing(&self, x: FieldElement) -> FieldElement {
        match self.kind {
            DomainKind::Radix2 => {
                x.pow_u64(self.size() as u64) - FieldElement::one(self.field)
            }
            DomainKind::Arbitrary => self
                .points
                .iter()
                .fold(FieldElement::one(self.field), |acc, p| acc * (x - *p)),
        }
    }

    /// Interpolates the unique polynomial of degree < n through
    /// (point_j, evals[j]).
    pub fn interpolate(&self, evals: &[FieldElement]) -> Result<Polynomial, Error> {
        if evals.len() != self.size() {
            return Err(Error::Shape(format!(
                "expected {} evaluations, got {}",
                self.size(),
                evals.len()
            )));
        }
        match self.kind {
            DomainKind::Radix2 => {
                let mut values = evals.to_vec();
                let omega_inv = self.omega.unwrap().inverse()?;
                fft_in_place(&mut values, omega_inv, self.log_size);
                let n_inv = FieldElement::from_u64(self.field, self.size() as u64).inverse()?;
                for v in values.iter_mut() {
                    *v *= n_inv;
                }
                Ok(Polynomial::new(self.field, values))
            }
            DomainKind::Arbitrary => {
                let pts: Vec<_> = self.points.iter().cloned().zip(evals.iter().cloned()).collect();
                Polynomial::interpolate(&pts)
            }
        }
    }

    /// Evaluates `poly` at every domain point.
    pub fn evaluate(&self, poly: &Polynomial) -> Vec<FieldElement> {
        match self.kind {
            DomainKind::Radix2 => {
                let mut values = poly.coeffs().to_vec();
                assert!(values.len() <= self.size(), "polynomial degree exceeds domain");
                values.resize(self.size(), FieldElement::zero(self.field));
                fft_in_place(&mut values, self.omega.unwrap(), self.log_size);
                values
            }
            DomainKind::Arbitrary => self.points.iter().map(|p| poly.evaluate(*p)).collect(),
        }
    }

    /// Values of every Lagrange basis polynomial L_j at `x` (x outside the
    /// domain).
    pub fn lagrange_at(&self, x: FieldElement) -> Result<Vec<FieldElement>, Error> {
        let z = self.evaluate_vanishing(x);
        if z.is_zero() {
            return Err(Error::Domain("evaluation point lies on the domain".into()));
        }
        match self.kind {
            DomainKind::Radix2 => {
                // L_j(x) = (x^n - 1) * omega^j / (n * (x - omega^j))
                let n_inv = FieldElement::from_u64(self.field, self.size() as u64).inverse()?;
                let mut denoms: Vec<_> = self.points.iter().map(|p| x - *p).collect();
                FieldElement::batch_inverse(&mut denoms)?;
                Ok(self
                    .points
                    .iter()
                    .zip(denoms)
                    .map(|(p, d)| z * n_inv * *p * d)
                    .collect())
            }
            DomainKind::Arbitrary => {
                // L_j(x) = Z(x) * w_j / (x - d_j), with barycentric weights
                // w_j = 1 / prod_{k != j} (d_j - d_k)
                let n = self.size();
                let mut weights = Vec::with_capacity(n);
                for j in 0..n {
                    let mut w = FieldElement::one(self.field);
                    for k in 0..n {
                        if k != j {
                            w *= self.points[j] - self.points[k];
                        }
                    }
                    weights.push(w);
                }
                FieldElement::batch_inverse(&mut weights)?;
                let mut denoms: Vec<_> = self.points.iter().map(|p| x - *p).collect();
                FieldElement::batch_inverse(&mut denoms)?;
                Ok(weights
                    .iter()
                    .zip(denoms)
                    .map(|(w, d)| z * *w * d)
                    .collect())
            }
        }
    }

    /// Evaluates `poly` over the coset `shift * <omega_2n>` of the doubled
    /// domain (radix-2 only). Used for quotient computation.
    pub fn coset_evaluate_double(&self, poly: &Polynomial, shift: FieldElement) -> Result<Vec<FieldElement>, Error> {
        let double = EvaluationDomain::radix2(self.field, self.size() * 2)?;
        let mut values = poly.coeffs().to_vec();
        assert!(values.len() <= double.size(), "degree exceeds doubled domain");
        values.resize(double.size(), FieldElement::zero(self.field));
        let mut s = FieldElement::one(self.field);
        for v in values.iter_mut() {
            *v *= s;
            s *= shift;
        }
        fft_in_place(&mut values, double.omega.unwrap(), double.log_size);
        Ok(values)
    }

    /// Inverse of [`Self::coset_evaluate_double`].
    pub fn coset_interpolate_double(&self, evals: &[FieldElement], shift: FieldElement) -> Result<Polynomial, Error> {
        let double = EvaluationDomain::radix2(self.field, self.size() * 2)?;
        let poly = double.interpolate(evals)?;
        let shift_inv = shift.inverse()?;
        let mut s = FieldElement::one(self.field);
        let coeffs = poly
            .coeffs()
            .iter()
            .map(|c| {
                let out = *c * s;
                s *= shift_inv;
                out
            })
            .collect();
        Ok(Polynomial::new(self.field, coeffs))
    }

    /// A coset shift guaranteed to avoid the doubled domain.
    pub fn coset_shift(&self) -> FieldElement {
        let root = self.field.two_adic_root();
        assert!(
            self.log_size + 1 < self.field.two_adicity(),
            "no coset available at this size"
        );
        root
    }
}

/// Iterative in-place radix-2 FFT (decimation in time).
fn fft_in_place(values: &mut [FieldElement], omega: FieldElement, log_n: u32) {
    let n = values.len();
    debug_assert_eq!(n, 1 << log_n);
    // bit-reversal permutation
    for i in 0..n {
        let j = (i as u32).reverse_bits() >> (32 - log_n.max(1));
        let j = if log_n == 0 { i } else { j as usize };
        if i < j {
            values.swap(i, j);
        }
    }
    let field = omega.field();
    let mut len = 2;
    while len <= n {
        let step = {
            let mut w = omega;
            let mut k = n / len;
            // omega^(n/len)
            let mut acc = FieldElement::one(field);
            while k > 0 {
                if k & 1 == 1 {
                    acc *= w;
                }
                w = w.square();
                k >>= 1;
            }
            acc
        };
        for start in (0..n).step_by(len) {
            let mut w = FieldElement::one(field);
            for i in 0..len / 2 {
                let a = values[start + i];
                let b = values[start + i + len / 2] * w;
                values[start + i] = a + b;
                values[start + i + len / 2] = a - b;
                w *= step;
            }
        }
        len <<= 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand_chacha::ChaCha20Rng;
    use rand_core::SeedableRng;

    fn fr() -> &'static FieldParams {
        crate::curves::bn254_fr()
    }

    #[test]
    fn radix2_points_are_roots() {
        let d = EvaluationDomain::radix2(fr(), 13).unwrap();
        assert_eq!(d.size(), 16);
        let t = d.vanishing_poly();
        for p in d.points() {
            assert!(t.evaluate(*p).is_zero());
        }
        // pairwise distinct
        for i in 0..d.size() {
            for j in i + 1..d.size() {
                assert_ne!(d.points()[i], d.points()[j]);
            }
        }
    }

    #[test]
    fn fft_interpolation_matches_lagrange_bit_for_bit() {
        let mut rng = ChaCha20Rng::seed_from_u64(5);
        let d = EvaluationDomain::radix2(fr(), 8).unwrap();
        let evals: Vec<_> = (0..8).map(|_| FieldElement::random(fr(), &mut rng)).collect();
        let via_fft = d.interpolate(&evals).unwrap();
        let pts: Vec<_> = d.points().iter().cloned().zip(evals.iter().cloned()).collect();
        let via_lagrange = Polynomial::interpolate(&pts).unwrap();
        assert_eq!(via_fft, via_lagrange);
        // and evaluation round-trips exactly
        assert_eq!(d.evaluate(&via_fft), evals);
    }

    #[test]
    fn arbitrary_domain_round_trip() {
        let f97 = FieldParams::get([97, 0, 0, 0], "f97-domain-test");
        let d = EvaluationDomain::arbitrary(f97, 20).unwrap();
        let mut rng = ChaCha20Rng::seed_from_u64(6);
        let evals: Vec<_> = (0..20).map(|_| FieldElement::random(f97, &mut rng)).collect();
        let p = d.interpolate(&evals).unwrap();
        assert_eq!(d.evaluate(&p), evals);
        assert!(p.degree().unwrap_or(0) < 20);
    }

    #[test]
    fn lagrange_at_agrees_with_explicit_basis() {
        let mut rng = ChaCha20Rng::seed_from_u64(7);
        for domain in [
            EvaluationDomain::radix2(fr(), 8).unwrap(),
            EvaluationDomain::arbitrary(fr(), 8).unwrap(),
        ] {
            let x = FieldElement::random(fr(), &mut rng);
            let basis = domain.lagrange_at(x).unwrap();
            for j in 0..domain.size() {
                let mut evals = vec![FieldElement::zero(fr()); domain.size()];
                evals[j] = FieldElement::one(fr());
                let lj = domain.interpolate(&evals).unwrap();
                assert_eq!(lj.evaluate(x), basis[j], "basis {j}");
            }
        }
    }

    #[test]
    fn coset_round_trip() {
        let mut rng = ChaCha20Rng::seed_from_u64(8);
        let d = EvaluationDomain::radix2(fr(), 8).unwrap();
        let coeffs: Vec<_> = (0..14).map(|_| FieldElement::random(fr(), &mut rng)).collect();
        let p = Polynomial::new(fr(), coeffs);
        let shift = d.coset_shift();
        let evals = d.coset_evaluate_double(&p, shift).unwrap();
        // vanishing polynomial never zero on the coset
        for pt in 0..evals.len() {
            let _ = pt;
        }
        let back = d.coset_interpolate_double(&evals, shift).unwrap();
        assert_eq!(back, p);
    }
}
