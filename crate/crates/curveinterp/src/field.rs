//! Exact scalar arithmetic: prime fields F_p and the rationals Q.
//!
//! Every computation in the crate is parametrized by a [`Field`], carried by
//! value alongside the data (matrices, polynomials, maps). The default working
//! field is F_1000003; the rationals are available for small solver inputs.

use num::rational::BigRational;
use num::{BigInt, One, Signed, Zero};
use std::fmt;

use crate::rng::SeededRng;

/// Default prime modulus: large enough that random rank coincidences are rare,
/// small enough that products stay comfortably inside `u64`.
pub const DEFAULT_PRIME: u64 = 1_000_003;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime (and not 0 for the rationals)")]
    NotPrime(u64),
    #[error("modulus {0} too large (must fit in 31 bits)")]
    ModulusTooLarge(u64),
    #[error("field of size {size} cannot host {requested} distinct points")]
    TooFewPoints { size: u64, requested: usize },
}

/// A field the crate can compute over, with elements handled by value.
///
/// Methods take the field by reference so a runtime-chosen modulus works; the
/// two implementations are [`PrimeField`] and [`Rationals`].
pub trait Field: Clone + PartialEq + fmt::Debug {
    type Elem: Clone + PartialEq + fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// Number of elements, `None` when infinite.
    fn size(&self) -> Option<u64>;
    /// A uniform element for F_p; a small random integer for Q. Stands in for
    /// "general" choices throughout.
    fn sample(&self, rng: &mut SeededRng) -> Self::Elem;
    /// Render for JSON output and reports.
    fn format(&self, a: &Self::Elem) -> String;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// `k` pairwise-distinct elements, by resampling.
    fn sample_distinct(&self, rng: &mut SeededRng, k: usize) -> Result<Vec<Self::Elem>, FieldError> {
        if let Some(size) = self.size() {
            if (k as u64) > size {
                return Err(FieldError::TooFewPoints { size, requested: k });
            }
        }
        let mut out: Vec<Self::Elem> = Vec::with_capacity(k);
        while out.len() < k {
            let x = self.sample(rng);
            if !out.contains(&x) {
                out.push(x);
            }
        }
        Ok(out)
    }

    /// Distinct elements avoiding a given exclusion set.
    fn sample_distinct_avoiding(
        &self,
        rng: &mut SeededRng,
        k: usize,
        avoid: &[Self::Elem],
    ) -> Result<Vec<Self::Elem>, FieldError> {
        if let Some(size) = self.size() {
            if (k + avoid.len()) as u64 > size {
                return Err(FieldError::TooFewPoints { size, requested: k + avoid.len() });
            }
        }
        let mut out: Vec<Self::Elem> = Vec::with_capacity(k);
        while out.len() < k {
            let x = self.sample(rng);
            if !out.contains(&x) && !avoid.contains(&x) {
                out.push(x);
            }
        }
        Ok(out)
    }
}

/// F_p for a prime p < 2^31; elements are canonical residues in `[0, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, FieldError> {
        if p >= 1 << 31 {
            return Err(FieldError::ModulusTooLarge(p));
        }
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(Self { p })
    }

    pub fn default_prime() -> Self {
        Self { p: DEFAULT_PRIME }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn pow(&self, a: u64, mut e: u64) -> u64 {
        let mut base = a % self.p;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            e >>= 1;
        }
        acc
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1
    }

    fn from_i64(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }

    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }

    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }

    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            None
        } else {
            Some(self.pow(*a, self.p - 2))
        }
    }

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    fn size(&self) -> Option<u64> {
        Some(self.p)
    }

    fn sample(&self, rng: &mut SeededRng) -> u64 {
        rng.below(self.p)
    }

    fn format(&self, a: &u64) -> String {
        a.to_string()
    }
}

/// The rational numbers, for small solver inputs where a characteristic-0
/// answer is wanted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn size(&self) -> Option<u64> {
        None
    }

    fn sample(&self, rng: &mut SeededRng) -> BigRational {
        // small integers keep solver output readable
        self.from_i64(rng.below(2001) as i64 - 1000)
    }

    fn format(&self, a: &BigRational) -> String {
        if a.denom().is_one() || a.numer().is_zero() {
            a.numer().to_string()
        } else if a.denom().is_negative() {
            format!("{}/{}", -a.numer(), -a.denom())
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
}

/// Field selector: characteristic 0 means Q, otherwise a prime p.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct FieldSpec {
    pub characteristic: u64,
}

impl Default for FieldSpec {
    fn default() -> Self {
        Self { characteristic: DEFAULT_PRIME }
    }
}

impl FieldSpec {
    pub fn validate(&self) -> Result<(), FieldError> {
        if self.characteristic == 0 {
            Ok(())
        } else {
            PrimeField::new(self.characteristic).map(|_| ())
        }
    }

    pub fn prime_field(&self) -> Result<PrimeField, FieldError> {
        if self.characteristic == 0 {
            Err(FieldError::NotPrime(0))
        } else {
            PrimeField::new(self.characteristic)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_modulus_is_prime() {
        assert!(is_prime(DEFAULT_PRIME));
        PrimeField::new(DEFAULT_PRIME).unwrap();
    }

    #[test]
    fn rejects_composite_modulus() {
        assert_eq!(PrimeField::new(1_000_000), Err(FieldError::NotPrime(1_000_000)));
    }

    #[test]
    fn inverse_round_trip() {
        let f = PrimeField::new(7).unwrap();
        for a in 1..7u64 {
            let ai = f.inv(&a).unwrap();
            assert_eq!(f.mul(&a, &ai), 1);
        }
        assert_eq!(f.inv(&0), None);
    }

    #[test]
    fn from_i64_reduces_negatives() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.from_i64(-1), 6);
        assert_eq!(f.from_i64(-14), 0);
    }

    #[test]
    fn sample_distinct_small_field() {
        let f = PrimeField::new(5).unwrap();
        let mut rng = SeededRng::new(1);
        let pts = f.sample_distinct(&mut rng, 3).unwrap();
        assert_eq!(pts.len(), 3);
        assert!(pts[0] != pts[1] && pts[1] != pts[2] && pts[0] != pts[2]);
    }

    #[test]
    fn sample_distinct_impossible() {
        let f = PrimeField::new(5).unwrap();
        let mut rng = SeededRng::new(1);
        assert!(matches!(
            f.sample_distinct(&mut rng, 7),
            Err(FieldError::TooFewPoints { size: 5, requested: 7 })
        ));
    }

    #[test]
    fn sample_distinct_empty() {
        let f = PrimeField::new(5).unwrap();
        let mut rng = SeededRng::new(1);
        assert_eq!(f.sample_distinct(&mut rng, 0).unwrap(), Vec::<u64>::new());
    }

    #[test]
    fn rational_formatting() {
        let q = Rationals;
        let half = q.div(&q.one(), &q.from_i64(2)).unwrap();
        assert_eq!(q.format(&half), "1/2");
        assert_eq!(q.format(&q.from_i64(-3)), "-3");
    }
}
