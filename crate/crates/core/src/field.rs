//! Arithmetic in GF(2^k) for small k (k <= 8), in a fixed polynomial basis.
//!
//! An element is the bit vector of its coordinates over GF(2): bit i holds the
//! coefficient of x^i. Addition is XOR; multiplication is carry-less polynomial
//! multiplication reduced by the field's irreducible modulus. Squaring is the
//! Frobenius automorphism, so every element has a unique square root.

use std::fmt;
use thiserror::Error;

/// Largest supported extension degree.
pub const MAX_DEGREE: u32 = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("extension degree {0} is outside 1..={MAX_DEGREE}")]
    DegreeOutOfRange(u32),
    #[error("field order {0} is not 2^k with 1 <= k <= {MAX_DEGREE}")]
    BadOrder(u64),
    #[error("modulus {modulus:#b} does not have degree {degree}")]
    BadModulusDegree { modulus: u16, degree: u32 },
    #[error("modulus {0:#b} is reducible")]
    ReducibleModulus(u16),
    #[error("bit pattern {bits:#04x} is not an element of GF(2^{degree})")]
    NotAnElement { bits: u16, degree: u32 },
    #[error("operands belong to different fields")]
    MixedFields,
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
}

/// A field GF(2^k), identified by its extension degree and reduction modulus.
///
/// The modulus includes the leading x^k bit, e.g. `0b111` is x^2+x+1. Two
/// specs are the same field exactly when degree and modulus agree; elements of
/// distinct specs never mix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldSpec {
    degree: u32,
    modulus: u16,
}

/// Default moduli per degree, indexed by k-1. Standard primitive choices.
const DEFAULT_MODULI: [u16; 8] = [
    0b10,        // x
    0b111,       // x^2+x+1
    0b1011,      // x^3+x+1
    0b10011,     // x^4+x+1
    0b100101,    // x^5+x^2+1
    0b1000011,   // x^6+x+1
    0b10000011,  // x^7+x+1
    0b100011011, // x^8+x^4+x^3+x+1
];

impl FieldSpec {
    /// Builds GF(2^k) with an explicit modulus, validating degree and
    /// irreducibility (trial division by every lower-degree polynomial).
    pub fn new(degree: u32, modulus: u16) -> Result<Self, FieldError> {
        if degree == 0 || degree > MAX_DEGREE {
            return Err(FieldError::DegreeOutOfRange(degree));
        }
        if poly_degree(modulus) != Some(degree) {
            return Err(FieldError::BadModulusDegree { modulus, degree });
        }
        for d in 2..(1u16 << degree) {
            if poly_degree(d).is_none_or(|dd| dd >= degree) {
                continue;
            }
            if poly_rem(modulus, d) == 0 {
                return Err(FieldError::ReducibleModulus(modulus));
            }
        }
        Ok(FieldSpec { degree, modulus })
    }

    /// Builds GF(q) with the default modulus for q = 2^k.
    pub fn from_order(q: u64) -> Result<Self, FieldError> {
        let degree = Self::degree_of_order(q)?;
        Self::new(degree, DEFAULT_MODULI[(degree - 1) as usize])
    }

    /// Builds GF(q) with an explicit modulus bit string.
    pub fn from_order_with_modulus(q: u64, modulus: u16) -> Result<Self, FieldError> {
        Self::new(Self::degree_of_order(q)?, modulus)
    }

    fn degree_of_order(q: u64) -> Result<u32, FieldError> {
        if q.is_power_of_two() && (2..=(1 << MAX_DEGREE)).contains(&q) {
            Ok(q.trailing_zeros())
        } else {
            Err(FieldError::BadOrder(q))
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn modulus(&self) -> u16 {
        self.modulus
    }

    /// Number of elements, 2^k.
    pub fn order(&self) -> u64 {
        1 << self.degree
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            bits: 0,
            field: *self,
        }
    }

    pub fn one(&self) -> FieldElement {
        FieldElement {
            bits: 1,
            field: *self,
        }
    }

    /// Wraps a bit pattern as an element; out-of-range bits are rejected.
    pub fn element(&self, bits: u16) -> Result<FieldElement, FieldError> {
        if u64::from(bits) < self.order() {
            Ok(FieldElement {
                bits: bits as u8,
                field: *self,
            })
        } else {
            Err(FieldError::NotAnElement {
                bits,
                degree: self.degree,
            })
        }
    }

    /// All 2^k elements exactly once, in lexicographic (numeric) order of
    /// their bit representation.
    pub fn enumerate(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.order()).map(move |b| FieldElement {
            bits: b as u8,
            field: *self,
        })
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.order())
    }
}

/// An element of GF(2^k) in the polynomial basis of its [`FieldSpec`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldElement {
    bits: u8,
    field: FieldSpec,
}

impl FieldElement {
    pub fn bits(&self) -> u8 {
        self.bits
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    pub fn is_one(&self) -> bool {
        self.bits == 1
    }

    fn check_same(&self, other: &FieldElement) -> Result<(), FieldError> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(FieldError::MixedFields)
        }
    }

    /// Coordinate-wise sum. Self-inverse: a + a = 0.
    pub fn add(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.check_same(other)?;
        Ok(FieldElement {
            bits: self.bits ^ other.bits,
            field: self.field,
        })
    }

    /// Polynomial product reduced by the field modulus.
    pub fn mul(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.check_same(other)?;
        let bits = mul_bits(self.bits, other.bits, self.field.degree, self.field.modulus);
        Ok(FieldElement {
            bits,
            field: self.field,
        })
    }

    /// The Frobenius automorphism a -> a^2.
    pub fn square(&self) -> FieldElement {
        FieldElement {
            bits: mul_bits(self.bits, self.bits, self.field.degree, self.field.modulus),
            field: self.field,
        }
    }

    /// The unique b with b^2 = a, computed as a^(2^(k-1)).
    pub fn sqrt(&self) -> FieldElement {
        let mut r = *self;
        for _ in 0..self.field.degree - 1 {
            r = r.square();
        }
        r
    }

    /// Multiplicative inverse, a^(2^k - 2). Zero is rejected.
    pub fn inv(&self) -> Result<FieldElement, FieldError> {
        if self.is_zero() {
            return Err(FieldError::ZeroInverse);
        }
        Ok(self.pow(self.field.order() - 2))
    }

    pub fn pow(&self, mut e: u64) -> FieldElement {
        let mut base = *self;
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = FieldElement {
                    bits: mul_bits(acc.bits, base.bits, self.field.degree, self.field.modulus),
                    field: self.field,
                };
            }
            base = base.square();
            e >>= 1;
        }
        acc
    }

    /// Multiplicative order; zero is rejected.
    pub fn multiplicative_order(&self) -> Result<u64, FieldError> {
        if self.is_zero() {
            return Err(FieldError::ZeroInverse);
        }
        let mut r = *self;
        let mut ord = 1;
        while !r.is_one() {
            r = r.mul(self).expect("same field");
            ord += 1;
        }
        Ok(ord)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", poly_string(self.bits as u16))
    }
}

/// Renders a GF(2) polynomial bit pattern like `x^2+x+1`.
pub(crate) fn poly_string(bits: u16) -> String {
    if bits == 0 {
        return "0".to_string();
    }
    let mut terms = Vec::new();
    for i in (0..16).rev() {
        if bits >> i & 1 == 1 {
            terms.push(match i {
                0 => "1".to_string(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            });
        }
    }
    terms.join("+")
}

fn poly_degree(p: u16) -> Option<u32> {
    if p == 0 {
        None
    } else {
        Some(15 - p.leading_zeros())
    }
}

/// Remainder of polynomial division over GF(2).
fn poly_rem(mut a: u16, b: u16) -> u16 {
    let db = poly_degree(b).expect("nonzero divisor");
    while let Some(da) = poly_degree(a) {
        if da < db {
            break;
        }
        a ^= b << (da - db);
    }
    a
}

/// Carry-less multiply of two degree-<k polynomials, reduced mod `modulus`.
fn mul_bits(a: u8, b: u8, degree: u32, modulus: u16) -> u8 {
    let mut prod: u16 = 0;
    let mut a = a as u16;
    let mut b = b as u16;
    while b != 0 {
        if b & 1 == 1 {
            prod ^= a;
        }
        a <<= 1;
        b >>= 1;
    }
    // reduce: degrees 2k-2 down to k
    for d in (degree..2 * degree).rev() {
        if prod >> d & 1 == 1 {
            prod ^= modulus << (d - degree);
        }
    }
    prod as u8
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(q: u64) -> FieldSpec {
        FieldSpec::from_order(q).unwrap()
    }

    #[test]
    fn default_moduli_are_irreducible() {
        for k in 1..=MAX_DEGREE {
            let spec = FieldSpec::new(k, DEFAULT_MODULI[(k - 1) as usize]);
            assert!(spec.is_ok(), "degree {k}");
        }
    }

    #[test]
    fn reducible_modulus_rejected() {
        // x^2+1 = (x+1)^2
        assert_eq!(
            FieldSpec::new(2, 0b101),
            Err(FieldError::ReducibleModulus(0b101))
        );
        // x^4+x^2+1 = (x^2+x+1)^2
        assert_eq!(
            FieldSpec::new(4, 0b10101),
            Err(FieldError::ReducibleModulus(0b10101))
        );
    }

    #[test]
    fn bad_spec_parameters_rejected() {
        assert_eq!(FieldSpec::new(0, 0b1), Err(FieldError::DegreeOutOfRange(0)));
        assert_eq!(FieldSpec::new(9, 0b1), Err(FieldError::DegreeOutOfRange(9)));
        assert_eq!(FieldSpec::from_order(6), Err(FieldError::BadOrder(6)));
        assert_eq!(FieldSpec::from_order(512), Err(FieldError::BadOrder(512)));
        assert!(matches!(
            FieldSpec::new(3, 0b111),
            Err(FieldError::BadModulusDegree { .. })
        ));
    }

    #[test]
    fn addition_is_characteristic_two() {
        let f2 = gf(2);
        let one = f2.one();
        assert_eq!(one.add(&one).unwrap(), f2.zero());

        let f4 = gf(4);
        let x = f4.element(0b10).unwrap();
        assert_eq!(x.add(&x).unwrap(), f4.zero());
        assert_eq!(x.add(&f4.one()).unwrap(), f4.element(0b11).unwrap());
    }

    #[test]
    fn multiplication_frozen_cases() {
        // GF(4), x^2 == x+1 mod x^2+x+1
        let f4 = gf(4);
        let x = f4.element(0b10).unwrap();
        assert_eq!(x.mul(&x).unwrap(), f4.element(0b11).unwrap());

        // GF(8), x^2 * x^2 = x^4 = x*(x+1) = x^2+x mod x^3+x+1
        let f8 = gf(8);
        let x2 = f8.element(0b100).unwrap();
        assert_eq!(x2.mul(&x2).unwrap(), f8.element(0b110).unwrap());

        for f in [gf(2), gf(4), gf(8), gf(16)] {
            for a in f.enumerate() {
                assert_eq!(a.mul(&f.one()).unwrap(), a);
            }
        }
    }

    #[test]
    fn inverse_frozen_cases() {
        assert_eq!(gf(2).one().inv().unwrap(), gf(2).one());

        // GF(4): x*(x+1) = x^2+x = 1
        let f4 = gf(4);
        assert_eq!(
            f4.element(0b10).unwrap().inv().unwrap(),
            f4.element(0b11).unwrap()
        );

        // GF(8): x*(x^2+1) = x^3+x = 1
        let f8 = gf(8);
        assert_eq!(
            f8.element(0b10).unwrap().inv().unwrap(),
            f8.element(0b101).unwrap()
        );

        assert_eq!(f8.zero().inv(), Err(FieldError::ZeroInverse));
    }

    #[test]
    fn every_nonzero_element_has_inverse() {
        for q in [2, 4, 8, 16, 32, 64, 128, 256] {
            let f = gf(q);
            for a in f.enumerate().skip(1) {
                assert_eq!(a.mul(&a.inv().unwrap()).unwrap(), f.one());
            }
        }
    }

    #[test]
    fn sqrt_frozen_cases() {
        let f4 = gf(4);
        assert_eq!(f4.zero().sqrt(), f4.zero());
        assert_eq!(f4.one().sqrt(), f4.one());
        // x^2 = x+1, so sqrt(x+1) = x
        assert_eq!(f4.element(0b11).unwrap().sqrt(), f4.element(0b10).unwrap());
    }

    #[test]
    fn squaring_is_a_bijection_with_inverse_sqrt() {
        for q in [2, 4, 8, 16, 32, 64, 128, 256] {
            let f = gf(q);
            let mut seen = vec![false; q as usize];
            for a in f.enumerate() {
                let sq = a.square();
                assert!(!seen[sq.bits() as usize]);
                seen[sq.bits() as usize] = true;
                assert_eq!(sq.sqrt(), a);
                assert_eq!(a.sqrt().square(), a);
            }
            assert!(seen.iter().all(|&s| s));
        }
    }

    #[test]
    fn unit_group_is_cyclic_of_order_q_minus_1() {
        for q in [2u64, 4, 8, 16, 32, 64, 128, 256] {
            let f = gf(q);
            let max = f
                .enumerate()
                .skip(1)
                .map(|a| a.multiplicative_order().unwrap())
                .max()
                .unwrap();
            assert_eq!(max, q - 1, "GF({q})");
            assert_eq!((q - 1) % 2, 1);
        }
    }

    #[test]
    fn enumerate_yields_each_element_once() {
        for q in [2u64, 4, 8] {
            let els: Vec<_> = gf(q).enumerate().collect();
            assert_eq!(els.len(), q as usize);
            for (i, e) in els.iter().enumerate() {
                assert_eq!(e.bits() as usize, i);
            }
        }
    }

    #[test]
    fn mixed_field_operands_rejected() {
        let a = gf(4).one();
        let b = gf(8).one();
        assert_eq!(a.add(&b), Err(FieldError::MixedFields));
        assert_eq!(a.mul(&b), Err(FieldError::MixedFields));
        // same order, different modulus: still distinct fields
        let alt = FieldSpec::new(3, 0b1101).unwrap();
        assert_eq!(gf(8).one().add(&alt.one()), Err(FieldError::MixedFields));
    }

    #[test]
    fn field_axioms_exhaustive_small_fields() {
        for q in [2u64, 4, 8] {
            let f = gf(q);
            let els: Vec<_> = f.enumerate().collect();
            for a in &els {
                for b in &els {
                    assert_eq!(a.add(b).unwrap(), b.add(a).unwrap());
                    assert_eq!(a.mul(b).unwrap(), b.mul(a).unwrap());
                    for c in &els {
                        let ab_c = a.add(b).unwrap().add(c).unwrap();
                        let a_bc = a.add(&b.add(c).unwrap()).unwrap();
                        assert_eq!(ab_c, a_bc);
                        let mul_assoc_l = a.mul(b).unwrap().mul(c).unwrap();
                        let mul_assoc_r = a.mul(&b.mul(c).unwrap()).unwrap();
                        assert_eq!(mul_assoc_l, mul_assoc_r);
                        let dist_l = a.mul(&b.add(c).unwrap()).unwrap();
                        let dist_r = a.mul(b).unwrap().add(&a.mul(c).unwrap()).unwrap();
                        assert_eq!(dist_l, dist_r);
                    }
                }
            }
        }
    }

    #[test]
    fn display_renders_polynomials() {
        let f8 = gf(8);
        assert_eq!(f8.zero().to_string(), "0");
        assert_eq!(f8.one().to_string(), "1");
        assert_eq!(f8.element(0b110).unwrap().to_string(), "x^2+x");
        assert_eq!(f8.to_string(), "GF(8)");
    }
}
