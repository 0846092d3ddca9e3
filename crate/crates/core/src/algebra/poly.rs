//! Dense univariate polynomials in coefficient form, lowest degree first.
//! The zero polynomial is the empty coefficient vector; nonzero polynomials
//! keep a nonzero leading coefficient (canonical form).

use super::field::{FieldElement, FieldParams};
use crate::error::Error;

#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    field: &'static FieldParams,
    coeffs: Vec<FieldElement>,
}

impl Polynomial {
    pub fn new(field: &'static FieldParams, mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { field, coeffs }
    }

    pub fn zero(field: &'static FieldParams) -> Self {
        Polynomial { field, coeffs: Vec::new() }
    }

    pub fn constant(c: FieldElement) -> Self {
        Polynomial::new(c.field(), vec![c])
    }

    pub fn field(&self) -> &'static FieldParams {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of the polynomial; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs
            .get(i)
            .copied()
            .unwrap_or_else(|| FieldElement::zero(self.field))
    }

    pub fn evaluate(&self, x: FieldElement) -> FieldElement {
        let mut acc = FieldElement::zero(self.field);
        for c in self.coeffs.iter().rev() {
            acc = acc * x + *c;
        }
        acc
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) + other.coeff(i));
        }
        Polynomial::new(self.field, out)
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) - other.coeff(i));
        }
        Polynomial::new(self.field, out)
    }

    pub fn scale(&self, k: FieldElement) -> Polynomial {
        Polynomial::new(self.field, self.coeffs.iter().map(|c| *c * k).collect())
    }

    /// Schoolbook product; the baseline that any FFT path must reproduce.
    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(self.field);
        }
        let mut out =
            vec![FieldElement::zero(self.field); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += *a * *b;
            }
        }
        Polynomial::new(self.field, out)
    }

    /// Long division: returns (quotient, remainder) with
    /// `self = quotient * divisor + remainder` and deg(rem) < deg(divisor).
    pub fn divide(&self, divisor: &Polynomial) -> Result<(Polynomial, Polynomial), Error> {
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let d = divisor.coeffs.len() - 1;
        if self.coeffs.len() <= d {
            return Ok((Polynomial::zero(self.field), self.clone()));
        }
        let lead_inv = divisor.coeffs[d].inverse()?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![FieldElement::zero(self.field); rem.len() - d];
        for i in (d..rem.len()).rev() {
            let q = rem[i] * lead_inv;
            quot[i - d] = q;
            if q.is_zero() {
                continue;
            }
            for j in 0..=d {
                let t = divisor.coeffs[j] * q;
                rem[i - d + j] -= t;
            }
        }
        rem.truncate(d);
        Ok((Polynomial::new(self.field, quot), Polynomial::new(self.field, rem)))
    }

    /// Lagrange interpolation through distinct points; O(n^2) baseline.
    pub fn interpolate(points: &[(FieldElement, FieldElement)]) -> Result<Polynomial, Error> {
        if points.is_empty() {
            return Err(Error::Domain("interpolation needs at least one point".into()));
        }
        let field = points[0].0.field();
        for i in 0..points.len() {
            for j in i + 1..points.len() {
                if points[i].0 == points[j].0 {
                    return Err(Error::Domain("duplicate interpolation points".into()));
                }
            }
        }
        let mut acc = Polynomial::zero(field);
        for (i, (xi, yi)) in points.iter().enumerate() {
            if yi.is_zero() {
                continue;
            }
            // numerator prod_{j!=i} (x - x_j), denominator prod_{j!=i} (x_i - x_j)
            let mut basis = Polynomial::constant(FieldElement::one(field));
            let mut denom = FieldElement::one(field);
            for (j, (xj, _)) in points.iter().enumerate() {
                if i == j {
                    continue;
                }
                basis = basis.mul(&Polynomial::new(
                    field,
                    vec![-*xj, FieldElement::one(field)],
                ));
                denom *= *xi - *xj;
            }
            acc = acc.add(&basis.scale(*yi * denom.inverse()?));
        }
        Ok(acc)
    }
}

impl std::fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Poly[deg={:?}]", self.degree())
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

    fn fe(v: u64) -> FieldElement {
        FieldElement::from_u64(fr(), v)
    }

    #[test]
    fn single_point_is_constant() {
        let p = Polynomial::interpolate(&[(fe(1), fe(5))]).unwrap();
        assert_eq!(p.coeffs(), &[fe(5)]);
    }

    #[test]
    fn exact_fit_of_square() {
        // y = x^2 through 3 points -> coefficients (0, 0, 1)
        let pts: Vec<_> = [1u64, 2, 3].iter().map(|&x| (fe(x), fe(x * x))).collect();
        let p = Polynomial::interpolate(&pts).unwrap();
        assert_eq!(p.coeffs(), &[fe(0), fe(0), fe(1)]);
    }

    #[test]
    fn interpolate_round_trip_degree_7() {
        let mut rng = ChaCha20Rng::seed_from_u64(42);
        let coeffs: Vec<_> = (0..8).map(|_| FieldElement::random(fr(), &mut rng)).collect();
        let p = Polynomial::new(fr(), coeffs.clone());
        let pts: Vec<_> = (1..=8u64).map(|x| (fe(x), p.evaluate(fe(x)))).collect();
        let q = Polynomial::interpolate(&pts).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn duplicate_points_rejected() {
        let r = Polynomial::interpolate(&[(fe(1), fe(5)), (fe(1), fe(6))]);
        assert!(matches!(r, Err(Error::Domain(_))));
    }

    #[test]
    fn factored_division() {
        // (x^2 - 1) / (x - 1) = x + 1 rem 0
        let num = Polynomial::new(fr(), vec![-fe(1), fe(0), fe(1)]);
        let den = Polynomial::new(fr(), vec![-fe(1), fe(1)]);
        let (q, r) = num.divide(&den).unwrap();
        assert_eq!(q.coeffs(), &[fe(1), fe(1)]);
        assert!(r.is_zero());
    }

    #[test]
    fn division_reconstruction_randomized() {
        let mut rng = ChaCha20Rng::seed_from_u64(43);
        for _ in 0..50 {
            let a: Vec<_> = (0..20).map(|_| FieldElement::random(fr(), &mut rng)).collect();
            let b: Vec<_> = (0..7).map(|_| FieldElement::random(fr(), &mut rng)).collect();
            let pa = Polynomial::new(fr(), a);
            let pb = Polynomial::new(fr(), b);
            if pb.is_zero() {
                continue;
            }
            let (q, r) = pa.divide(&pb).unwrap();
            assert_eq!(pb.mul(&q).add(&r), pa);
            if let (Some(rd), Some(bd)) = (r.degree(), pb.degree()) {
                assert!(rd < bd);
            }
        }
    }

    #[test]
    fn zero_divisor_rejected() {
        let num = Polynomial::new(fr(), vec![fe(1)]);
        assert!(matches!(
            num.divide(&Polynomial::zero(fr())),
            Err(Error::DivisionByZero)
        ));
    }
}
