//! Exact arithmetic over GF(2^k): field elements, univariate and multivariate
//! polynomials, root finding, additive polynomials and ideal colengths.

mod additive;
mod field;
mod groebner;
mod multipoly;
mod poly;

use thiserror::Error;

pub use additive::additive_solve;
pub use field::{ff_arith, is_irreducible_f2, ArithOp, Embedding, FieldElement, FieldSpec, MAX_DEGREE};
pub use groebner::{groebner_basis, ideal_colength, normal_form, standard_monomials, Colength, MAX_COLENGTH_VARS};
pub use multipoly::{grlex, Exponent, MultiPoly, MAX_VARS};
pub use poly::UniPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("extension degree {0} outside 1..=16")]
    DegreeOutOfRange(u32),
    #[error("modulus {modulus:#x} does not have degree {k}")]
    ModulusDegree { k: u32, modulus: u32 },
    #[error("modulus {0:#x} is reducible over F2")]
    Reducible(u32),
    #[error("element {bits:#x} does not fit in GF(2^{k})")]
    ElementOutOfRange { bits: u32, k: u32 },
    #[error("cannot parse field spec `{0}` (expected e.g. gf16:0x13)")]
    BadFieldSpec(String),
    #[error("cannot parse field element literal `{0}`")]
    BadLiteral(String),
    #[error("operands live in different fields ({0} vs {1})")]
    Mismatch(FieldSpec, FieldSpec),
    #[error("division by zero")]
    DivisionByZero,
    #[error("{from} is not a subfield of {to}")]
    NotSubfield { from: FieldSpec, to: FieldSpec },
    #[error("the zero polynomial has no finite root set")]
    ZeroPolynomial,
    #[error("separability is undefined for constant polynomials")]
    ConstantPolynomial,
    #[error("additive map with all coefficients zero")]
    ZeroAdditiveMap,
    #[error("{0} variables exceed the supported maximum")]
    TooManyVariables(usize),
}
