//! Binary extension fields GF(2^k) with an explicit irreducible modulus.
//!
//! Elements are bitmasks: bit `i` is the coefficient of `x^i` in the
//! canonical residue of degree `< k`. The modulus is stored with its leading
//! bit, so `x^4 + x + 1` is `0x13`.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::FieldError;

/// Largest supported extension degree.
pub const MAX_DEGREE: u32 = 16;

/// Degree of a nonzero bit polynomial.
fn bit_degree(p: u64) -> Option<u32> {
    if p == 0 {
        None
    } else {
        Some(63 - p.leading_zeros())
    }
}

fn bit_rem(mut a: u64, m: u64) -> u64 {
    let dm = bit_degree(m).expect("nonzero modulus");
    while let Some(da) = bit_degree(a) {
        if da < dm {
            break;
        }
        a ^= m << (da - dm);
    }
    a
}

/// Irreducibility over F₂ by trial division against every polynomial of
/// degree `1..=deg/2`.
pub fn is_irreducible_f2(p: u64) -> bool {
    let Some(d) = bit_degree(p) else {
        return false;
    };
    if d == 0 {
        return false;
    }
    for dd in 1..=d / 2 {
        for q in (1u64 << dd)..(1u64 << (dd + 1)) {
            if bit_rem(p, q) == 0 {
                return false;
            }
        }
    }
    true
}

/// The field GF(2^k) together with the modulus defining it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldSpec {
    k: u32,
    modulus: u32,
}

impl FieldSpec {
    pub fn new(k: u32, modulus: u32) -> Result<Self, FieldError> {
        if k == 0 || k > MAX_DEGREE {
            return Err(FieldError::DegreeOutOfRange(k));
        }
        if bit_degree(modulus as u64) != Some(k) {
            return Err(FieldError::ModulusDegree { k, modulus });
        }
        if !is_irreducible_f2(modulus as u64) {
            return Err(FieldError::Reducible(modulus));
        }
        Ok(Self { k, modulus })
    }

    /// The prime field, modulus `x + 1`.
    pub fn f2() -> Self {
        Self { k: 1, modulus: 0b11 }
    }

    /// The numerically smallest irreducible modulus of degree `k`.
    pub fn default_for_degree(k: u32) -> Result<Self, FieldError> {
        if k == 0 || k > MAX_DEGREE {
            return Err(FieldError::DegreeOutOfRange(k));
        }
        let lo = 1u32 << k;
        (lo..lo << 1)
            .find(|&m| is_irreducible_f2(m as u64))
            .map(|modulus| Self { k, modulus })
            .ok_or(FieldError::DegreeOutOfRange(k))
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn order(&self) -> u64 {
        1u64 << self.k
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement { spec: *self, bits: 0 }
    }

    pub fn one(&self) -> FieldElement {
        FieldElement { spec: *self, bits: 1 }
    }

    /// The class of `x`; a generator of the field over F₂ (not necessarily primitive).
    pub fn generator(&self) -> FieldElement {
        FieldElement { spec: *self, bits: bit_rem(0b10, self.modulus as u64) as u32 }
    }

    pub fn element(&self, bits: u32) -> Result<FieldElement, FieldError> {
        if (bits as u64) >= self.order() {
            return Err(FieldError::ElementOutOfRange { bits, k: self.k });
        }
        Ok(FieldElement { spec: *self, bits })
    }

    /// Parses a hex literal such as `0x3` or `3`.
    pub fn parse_element(&self, s: &str) -> Result<FieldElement, FieldError> {
        let t = s.trim();
        let digits = t.strip_prefix("0x").or_else(|| t.strip_prefix("0X")).unwrap_or(t);
        let bits = u32::from_str_radix(digits, 16).map_err(|_| FieldError::BadLiteral(s.to_string()))?;
        self.element(bits)
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        let spec = *self;
        (0..(1u32 << self.k)).map(move |bits| FieldElement { spec, bits })
    }

    /// True when GF(2^k) embeds in `other`, i.e. `k` divides the other degree.
    pub fn is_subfield_of(&self, other: &FieldSpec) -> bool {
        other.k.is_multiple_of(self.k)
    }

    /// A field homomorphism into a field whose degree is a multiple of ours.
    ///
    /// The image of `x` is the smallest root of our modulus in the target.
    pub fn embedding_into(&self, target: &FieldSpec) -> Result<Embedding, FieldError> {
        if !self.is_subfield_of(target) {
            return Err(FieldError::NotSubfield { from: *self, to: *target });
        }
        if self == target {
            return Ok(Embedding::identity(*self));
        }
        let modulus = self.modulus;
        let root = target
            .elements()
            .find(|r| {
                let mut acc = target.zero();
                for i in (0..=self.k).rev() {
                    acc *= *r;
                    if modulus >> i & 1 == 1 {
                        acc += target.one();
                    }
                }
                acc.is_zero()
            })
            .ok_or(FieldError::NotSubfield { from: *self, to: *target })?;
        let mut images = Vec::with_capacity(self.k as usize);
        let mut p = target.one();
        for _ in 0..self.k {
            images.push(p.bits);
            p *= root;
        }
        Ok(Embedding { from: *self, to: *target, images })
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "gf{}:{:#x}", 1u64 << self.k, self.modulus)
    }
}

impl FromStr for FieldSpec {
    type Err = FieldError;

    /// Parses `gf<2^k>:<hex modulus>`, e.g. `gf16:0x13`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || FieldError::BadFieldSpec(s.to_string());
        let rest = s.trim().strip_prefix("gf").ok_or_else(bad)?;
        let (order, modulus) = rest.split_once(':').ok_or_else(bad)?;
        let order: u64 = order.parse().map_err(|_| bad())?;
        if order < 2 || !order.is_power_of_two() {
            return Err(bad());
        }
        let k = order.trailing_zeros();
        let digits = modulus.strip_prefix("0x").or_else(|| modulus.strip_prefix("0X")).unwrap_or(modulus);
        let modulus = u32::from_str_radix(digits, 16).map_err(|_| bad())?;
        FieldSpec::new(k, modulus)
    }
}

impl Serialize for FieldSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for FieldSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// An injective field homomorphism GF(2^k) → GF(2^K).
#[derive(Clone, Debug)]
pub struct Embedding {
    from: FieldSpec,
    to: FieldSpec,
    images: Vec<u32>,
}

impl Embedding {
    fn identity(spec: FieldSpec) -> Self {
        Self { from: spec, to: spec, images: (0..spec.k).map(|i| 1u32 << i).collect() }
    }

    pub fn source(&self) -> FieldSpec {
        self.from
    }

    pub fn target(&self) -> FieldSpec {
        self.to
    }

    pub fn apply(&self, a: FieldElement) -> FieldElement {
        assert_eq!(a.spec, self.from, "embedding applied to an element of the wrong field");
        let bits = self
            .images
            .iter()
            .enumerate()
            .filter(|(i, _)| a.bits >> i & 1 == 1)
            .fold(0, |acc, (_, img)| acc ^ img);
        FieldElement { spec: self.to, bits }
    }
}

/// An element of GF(2^k).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    spec: FieldSpec,
    bits: u32,
}

/// Arithmetic selector for [`ff_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Mul,
    Div,
    /// Exponent taken from the integer encoding of the second operand.
    Pow,
}

/// Checked binary arithmetic on two elements of the same field.
pub fn ff_arith(a: FieldElement, b: FieldElement, op: ArithOp) -> Result<FieldElement, FieldError> {
    if a.spec != b.spec {
        return Err(FieldError::Mismatch(a.spec, b.spec));
    }
    match op {
        ArithOp::Add => Ok(a + b),
        ArithOp::Mul => Ok(a * b),
        ArithOp::Div => a.checked_div(b),
        ArithOp::Pow => Ok(a.pow(b.bits as u64)),
    }
}

impl FieldElement {
    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    pub fn is_one(&self) -> bool {
        self.bits == 1
    }

    fn mul_bits(&self, a: u32, b: u32) -> u32 {
        let mut acc: u64 = 0;
        let (a, mut b) = (a as u64, b);
        let mut shift = 0;
        while b != 0 {
            if b & 1 == 1 {
                acc ^= a << shift;
            }
            b >>= 1;
            shift += 1;
        }
        bit_rem(acc, self.spec.modulus as u64) as u32
    }

    pub fn square(self) -> Self {
        self * self
    }

    pub fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = self.spec.one();
        while e > 0 {
            if e & 1 == 1 {
                acc *= base;
            }
            base = base.square();
            e >>= 1;
        }
        acc
    }

    pub fn inv(self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(self.pow(self.spec.order() - 2))
    }

    pub fn checked_div(self, rhs: Self) -> Result<Self, FieldError> {
        if self.spec != rhs.spec {
            return Err(FieldError::Mismatch(self.spec, rhs.spec));
        }
        Ok(self * rhs.inv()?)
    }

    /// The unique square root; Frobenius is bijective on a finite field of characteristic 2.
    pub fn sqrt(self) -> Self {
        self.pow(1u64 << (self.spec.k - 1))
    }

    /// Hex literal as used in field-element serializations.
    pub fn to_hex(&self) -> String {
        format!("{:#x}", self.bits)
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#x}", self.bits)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#x}", self.bits)
    }
}

impl Add for FieldElement {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        assert_eq!(self.spec, rhs.spec, "field mismatch");
        Self { spec: self.spec, bits: self.bits ^ rhs.bits }
    }
}

// characteristic 2: subtraction is addition
#[allow(clippy::suspicious_arithmetic_impl)]
impl Sub for FieldElement {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + rhs
    }
}

impl Neg for FieldElement {
    type Output = Self;
    fn neg(self) -> Self {
        self
    }
}

impl Mul for FieldElement {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        assert_eq!(self.spec, rhs.spec, "field mismatch");
        Self { spec: self.spec, bits: self.mul_bits(self.bits, rhs.bits) }
    }
}

impl AddAssign for FieldElement {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

#[allow(clippy::suspicious_op_assign_impl)]
impl SubAssign for FieldElement {
    fn sub_assign(&mut self, rhs: Self) {
        *self += rhs;
    }
}

impl MulAssign for FieldElement {
    fn mul_assign(&mut self, rhs: Self) {
        *self = *self * rhs;
    }
}

impl Serialize for FieldElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_hex())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(s: &str) -> FieldSpec {
        s.parse().unwrap()
    }

    #[test]
    fn gf4_generator_squares_to_t_plus_one() {
        let f = gf("gf4:0x7");
        let t = f.generator();
        assert_eq!((t * t).bits(), 0b11);
    }

    #[test]
    fn gf16_t4_reduces() {
        let f = gf("gf16:0x13");
        assert_eq!(f.generator().pow(4).bits(), 0b11);
    }

    #[test]
    fn self_sum_vanishes() {
        let f = gf("gf16:0x13");
        for a in f.elements() {
            assert!((a + a).is_zero());
        }
    }

    #[test]
    fn rejects_reducible_and_misdegree_moduli() {
        assert!(matches!(FieldSpec::new(2, 0b101), Err(FieldError::Reducible(_))));
        assert!(matches!(FieldSpec::new(3, 0b111), Err(FieldError::ModulusDegree { .. })));
        assert!(matches!(FieldSpec::new(17, 0), Err(FieldError::DegreeOutOfRange(17))));
        assert!("gf12:0x13".parse::<FieldSpec>().is_err());
        assert!("gf16:0x15".parse::<FieldSpec>().is_err());
        assert!("gf16:0x1f".parse::<FieldSpec>().is_ok());
    }

    #[test]
    fn display_round_trips() {
        let f = gf("gf256:0x11b");
        assert_eq!(f.to_string(), "gf256:0x11b");
        assert_eq!(f.to_string().parse::<FieldSpec>().unwrap(), f);
    }

    #[test]
    fn default_moduli() {
        assert_eq!(FieldSpec::default_for_degree(2).unwrap().modulus(), 0x7);
        assert_eq!(FieldSpec::default_for_degree(4).unwrap().modulus(), 0x13);
        assert_eq!(FieldSpec::default_for_degree(8).unwrap().modulus(), 0x11b);
    }

    #[test]
    fn division_errors() {
        let f = gf("gf16:0x13");
        let g = gf("gf4:0x7");
        assert_eq!(ff_arith(f.one(), f.zero(), ArithOp::Div), Err(FieldError::DivisionByZero));
        assert!(matches!(ff_arith(f.one(), g.one(), ArithOp::Add), Err(FieldError::Mismatch(..))));
        for a in f.elements().skip(1) {
            assert!(ff_arith(a, a, ArithOp::Div).unwrap().is_one());
        }
    }

    #[test]
    fn frobenius_additive_exhaustive_small() {
        for s in ["gf2:0x3", "gf4:0x7", "gf8:0xb", "gf16:0x13"] {
            let f = gf(s);
            for a in f.elements() {
                for b in f.elements() {
                    assert_eq!((a + b).square(), a.square() + b.square());
                }
                assert_eq!(a.sqrt().square(), a);
            }
        }
    }

    #[test]
    fn embedding_is_a_ring_homomorphism() {
        let small = gf("gf16:0x13");
        let big = FieldSpec::default_for_degree(8).unwrap();
        let e = small.embedding_into(&big).unwrap();
        for a in small.elements() {
            for b in small.elements() {
                assert_eq!(e.apply(a * b), e.apply(a) * e.apply(b));
                assert_eq!(e.apply(a + b), e.apply(a) + e.apply(b));
            }
        }
        assert!(small.embedding_into(&FieldSpec::default_for_degree(6).unwrap()).is_err());
    }
}
