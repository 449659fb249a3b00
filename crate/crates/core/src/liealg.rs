//! The restricted Lie algebra 𝔤 = 𝔞⋊𝔟 over GF(2^k) and its square 𝔤⊕𝔤.
//!
//! 𝔞 is three-dimensional abelian with zero 2-map, spanned by the vector
//! fields `u⁻⁴D, u⁻²D, D` (with `D = D_{u⁻¹}`); 𝔟 is spanned by `e = uD_u`
//! with `e^[2] = e`. In characteristic 2 the structure is
//!
//! ```text
//! [a + λe, a' + λ'e] = λa' + λ'a
//! (a + λe)^[2]       = λ(a + λe)
//! ```

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gf2k::{FieldElement, FieldError, FieldSpec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LieError {
    #[error("p-closedness is undefined for the zero vector")]
    ZeroVector,
    #[error("vector is not p-closed")]
    NotClosed,
    #[error("expected 4 coordinates [l4, l2, l0, tau], got {0}")]
    Arity(usize),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Order-2 group schemes in characteristic 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GroupType {
    Mu2,
    Alpha2,
}

impl fmt::Display for GroupType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GroupType::Mu2 => "mu2",
            GroupType::Alpha2 => "alpha2",
        })
    }
}

/// `a + λe` with `a = (λ₄, λ₂, λ₀)` in the 𝔞-basis.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct LieElement {
    pub a: [FieldElement; 3],
    pub lambda: FieldElement,
}

impl LieElement {
    pub fn new(a: [FieldElement; 3], lambda: FieldElement) -> Self {
        let f = lambda.spec();
        assert!(a.iter().all(|c| c.spec() == f), "coordinates from different fields");
        Self { a, lambda }
    }

    pub fn zero(field: FieldSpec) -> Self {
        Self { a: [field.zero(); 3], lambda: field.zero() }
    }

    /// From `[λ₄, λ₂, λ₀, τ]` bit encodings.
    pub fn from_bits(field: FieldSpec, bits: [u32; 4]) -> Result<Self, FieldError> {
        Ok(Self {
            a: [field.element(bits[0])?, field.element(bits[1])?, field.element(bits[2])?],
            lambda: field.element(bits[3])?,
        })
    }

    pub fn field(&self) -> FieldSpec {
        self.lambda.spec()
    }

    pub fn coords(&self) -> [FieldElement; 4] {
        [self.a[0], self.a[1], self.a[2], self.lambda]
    }

    pub fn is_zero(&self) -> bool {
        self.coords().iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            a: [self.a[0] + other.a[0], self.a[1] + other.a[1], self.a[2] + other.a[2]],
            lambda: self.lambda + other.lambda,
        }
    }

    pub fn scale(&self, c: FieldElement) -> Self {
        Self { a: self.a.map(|x| x * c), lambda: self.lambda * c }
    }

    /// Every element of 𝔤 over a finite field.
    pub fn all(field: FieldSpec) -> impl Iterator<Item = Self> {
        let q = field.order() as u32;
        (0..q.pow(4)).map(move |mut n| {
            let mut c = [0u32; 4];
            for slot in &mut c {
                *slot = n % q;
                n /= q;
            }
            Self::from_bits(field, c).expect("in range")
        })
    }

    /// JSON form: `[λ₄, λ₂, λ₀, τ]` as hex literals.
    pub fn to_hex(&self) -> [String; 4] {
        self.coords().map(|c| c.to_hex())
    }

    pub fn parse_hex(field: FieldSpec, items: &[String]) -> Result<Self, LieError> {
        if items.len() != 4 {
            return Err(LieError::Arity(items.len()));
        }
        let c: Vec<FieldElement> = items.iter().map(|s| field.parse_element(s)).collect::<Result<_, _>>()?;
        Ok(Self::new([c[0], c[1], c[2]], c[3]))
    }
}

impl fmt::Debug for LieElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}, {:?}, {:?}; {:?})", self.a[0], self.a[1], self.a[2], self.lambda)
    }
}

impl Serialize for LieElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_hex().serialize(s)
    }
}

/// An element `(x, x')` of 𝔤⊕𝔤.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ProductLieElement {
    pub left: LieElement,
    pub right: LieElement,
}

impl ProductLieElement {
    pub fn new(left: LieElement, right: LieElement) -> Self {
        assert_eq!(left.field(), right.field());
        Self { left, right }
    }

    pub fn is_zero(&self) -> bool {
        self.left.is_zero() && self.right.is_zero()
    }

    fn coords(&self) -> [FieldElement; 8] {
        let (l, r) = (self.left.coords(), self.right.coords());
        [l[0], l[1], l[2], l[3], r[0], r[1], r[2], r[3]]
    }
}

pub fn bracket(x: &LieElement, y: &LieElement) -> LieElement {
    let a = [0, 1, 2].map(|i| x.lambda * y.a[i] + y.lambda * x.a[i]);
    LieElement { a, lambda: x.field().zero() }
}

pub fn bracket_product(x: &ProductLieElement, y: &ProductLieElement) -> ProductLieElement {
    ProductLieElement { left: bracket(&x.left, &y.left), right: bracket(&x.right, &y.right) }
}

/// The 2-map `x ↦ λ·x`.
pub fn p_map(x: &LieElement) -> LieElement {
    x.scale(x.lambda)
}

pub fn p_map_product(x: &ProductLieElement) -> ProductLieElement {
    ProductLieElement { left: p_map(&x.left), right: p_map(&x.right) }
}

/// Returns `c` with `y = c·x` if `y` lies on the line through `x`.
fn proportionality(x: &[FieldElement], y: &[FieldElement]) -> Option<FieldElement> {
    let i = x.iter().position(|c| !c.is_zero())?;
    let c = y[i].checked_div(x[i]).ok()?;
    x.iter().zip(y).all(|(&a, &b)| a * c == b).then_some(c)
}

/// Anything with a 2-map that can be tested for p-closedness.
pub trait Restricted {
    fn is_zero_vector(&self) -> bool;
    fn flat(&self) -> Vec<FieldElement>;
    fn p_image(&self) -> Vec<FieldElement>;
}

impl Restricted for LieElement {
    fn is_zero_vector(&self) -> bool {
        self.is_zero()
    }
    fn flat(&self) -> Vec<FieldElement> {
        self.coords().to_vec()
    }
    fn p_image(&self) -> Vec<FieldElement> {
        p_map(self).coords().to_vec()
    }
}

impl Restricted for ProductLieElement {
    fn is_zero_vector(&self) -> bool {
        self.is_zero()
    }
    fn flat(&self) -> Vec<FieldElement> {
        self.coords().to_vec()
    }
    fn p_image(&self) -> Vec<FieldElement> {
        p_map_product(self).coords().to_vec()
    }
}

/// The eigenvalue `c` with `x^[2] = c·x`, or `None` when `x^[2]` leaves the line `kx`.
///
/// This is a rank test on `{x, x^[2]}`; it does not assume the shape of the 2-map.
pub fn is_p_closed<T: Restricted>(x: &T) -> Result<Option<FieldElement>, LieError> {
    if x.is_zero_vector() {
        return Err(LieError::ZeroVector);
    }
    Ok(proportionality(&x.flat(), &x.p_image()))
}

/// μ₂ for a nonzero eigenvalue, α₂ for eigenvalue zero.
pub fn classify_line<T: Restricted>(x: &T) -> Result<GroupType, LieError> {
    match is_p_closed(x)? {
        None => Err(LieError::NotClosed),
        Some(c) if c.is_zero() => Ok(GroupType::Alpha2),
        Some(_) => Ok(GroupType::Mu2),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf4() -> FieldSpec {
        "gf4:0x7".parse().unwrap()
    }

    fn el(field: FieldSpec, bits: [u32; 4]) -> LieElement {
        LieElement::from_bits(field, bits).unwrap()
    }

    #[test]
    fn bracket_examples() {
        let f = FieldSpec::f2();
        let x = el(f, [1, 0, 0, 0]);
        let y = el(f, [0, 0, 0, 1]);
        assert_eq!(bracket(&x, &y), el(f, [1, 0, 0, 0]));
        for x in LieElement::all(f) {
            assert!(bracket(&x, &x).is_zero());
        }
        assert!(bracket(&el(f, [1, 1, 0, 0]), &el(f, [0, 1, 1, 0])).is_zero());
    }

    #[test]
    fn p_map_examples() {
        let f = gf4();
        assert!(p_map(&el(f, [1, 0, 0, 0])).is_zero());
        let x = el(f, [1, 1, 0, 1]);
        assert_eq!(p_map(&x), x);
        let t = f.generator();
        let e = LieElement::new([f.zero(); 3], t);
        assert_eq!(p_map(&e), LieElement::new([f.zero(); 3], t.square()));
    }

    #[test]
    fn p_map_product_examples() {
        let f = gf4();
        let z = ProductLieElement::new(LieElement::zero(f), LieElement::zero(f));
        assert!(p_map_product(&z).is_zero());
        let x = ProductLieElement::new(el(f, [1, 2, 3, 1]), el(f, [3, 0, 1, 1]));
        assert_eq!(p_map_product(&x), x);
        let ab = ProductLieElement::new(el(f, [1, 2, 3, 0]), el(f, [3, 0, 1, 0]));
        assert!(p_map_product(&ab).is_zero());
    }

    #[test]
    fn p_closed_examples() {
        let f = FieldSpec::f2();
        let x = ProductLieElement::new(el(f, [1, 0, 0, 1]), el(f, [0, 1, 0, 1]));
        assert_eq!(is_p_closed(&x).unwrap(), Some(f.one()));
        let y = ProductLieElement::new(el(f, [1, 0, 0, 1]), el(f, [0, 1, 0, 0]));
        // image ((1,0,0),1 ; 0) is not proportional to the input
        assert_eq!(p_map_product(&y), ProductLieElement::new(el(f, [1, 0, 0, 1]), LieElement::zero(f)));
        assert_eq!(is_p_closed(&y).unwrap(), None);
        assert_eq!(is_p_closed(&LieElement::zero(f)), Err(LieError::ZeroVector));
        assert_eq!(classify_line(&y), Err(LieError::NotClosed));
    }

    #[test]
    fn classification() {
        let f = gf4();
        assert_eq!(classify_line(&el(f, [1, 1, 0, 0])).unwrap(), GroupType::Alpha2);
        assert_eq!(classify_line(&el(f, [1, 0, 0, 1])).unwrap(), GroupType::Mu2);
        let t = f.generator().bits();
        let d = ProductLieElement::new(el(f, [1, 0, 2, t]), el(f, [0, 3, 0, t]));
        assert_eq!(classify_line(&d).unwrap(), GroupType::Mu2);
    }

    #[test]
    fn jacobi_identity_gf2() {
        let f = FieldSpec::f2();
        let all: Vec<_> = LieElement::all(f).collect();
        for x in &all {
            for y in &all {
                for z in &all {
                    let s = bracket(x, &bracket(y, z))
                        .add(&bracket(y, &bracket(z, x)))
                        .add(&bracket(z, &bracket(x, y)));
                    assert!(s.is_zero());
                }
            }
        }
    }

    #[test]
    fn hex_round_trip() {
        let f: FieldSpec = "gf16:0x13".parse().unwrap();
        let x = el(f, [0xa, 0, 3, 0xf]);
        let json = serde_json::to_string(&x).unwrap();
        assert_eq!(json, r#"["0xa","0x0","0x3","0xf"]"#);
        let items: Vec<String> = serde_json::from_str(&json).unwrap();
        assert_eq!(LieElement::parse_hex(f, &items).unwrap(), x);
        assert_eq!(LieElement::parse_hex(f, &items[..3]), Err(LieError::Arity(3)));
    }
}
