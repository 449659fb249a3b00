//! Dense univariate polynomials over GF(2^k).

use std::fmt;

use super::field::{Embedding, FieldElement, FieldSpec};
use super::FieldError;

/// Coefficients lowest degree first, trimmed so the leading coefficient is nonzero.
#[derive(Clone, PartialEq, Eq)]
pub struct UniPoly {
    field: FieldSpec,
    coeffs: Vec<FieldElement>,
}

impl UniPoly {
    pub fn new(field: FieldSpec, coeffs: Vec<FieldElement>) -> Self {
        assert!(coeffs.iter().all(|c| c.spec() == field), "coefficient from another field");
        let mut p = Self { field, coeffs };
        p.trim();
        p
    }

    pub fn zero(field: FieldSpec) -> Self {
        Self { field, coeffs: Vec::new() }
    }

    pub fn constant(c: FieldElement) -> Self {
        Self::new(c.spec(), vec![c])
    }

    /// The monic linear polynomial `x + r`.
    pub fn linear(r: FieldElement) -> Self {
        Self::new(r.spec(), vec![r, r.spec().one()])
    }

    /// Builds `Σ c_i x^{e_i}` from sparse terms.
    pub fn from_terms(field: FieldSpec, terms: &[(usize, FieldElement)]) -> Self {
        let deg = terms.iter().map(|t| t.0).max().unwrap_or(0);
        let mut coeffs = vec![field.zero(); deg + 1];
        for &(e, c) in terms {
            coeffs[e] += c;
        }
        Self::new(field, coeffs)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).copied().unwrap_or(self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<FieldElement> {
        self.coeffs.last().copied()
    }

    pub fn eval(&self, x: FieldElement) -> FieldElement {
        self.coeffs.iter().rev().fold(self.field.zero(), |acc, &c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| if i % 2 == 1 { c } else { self.field.zero() })
            .collect();
        Self::new(self.field, coeffs)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(self.field, (0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.field);
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(self.field, out)
    }

    pub fn scale(&self, c: FieldElement) -> Self {
        Self::new(self.field, self.coeffs.iter().map(|&a| a * c).collect())
    }

    /// Polynomial composition `self(g)`.
    pub fn compose(&self, g: &Self) -> Self {
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(self.field), |acc, &c| acc.mul(g).add(&Self::constant(c)))
    }

    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self), FieldError> {
        let lead = divisor.leading().ok_or(FieldError::DivisionByZero)?;
        let inv = lead.inv()?;
        let dd = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![self.field.zero(); rem.len().saturating_sub(dd)];
        while rem.len() > dd {
            let top = *rem.last().unwrap();
            let shift = rem.len() - 1 - dd;
            if !top.is_zero() {
                let q = top * inv;
                quot[shift] = q;
                for (i, &d) in divisor.coeffs.iter().enumerate() {
                    rem[shift + i] -= q * d;
                }
            }
            rem.pop();
        }
        Ok((Self::new(self.field, quot), Self::new(self.field, rem)))
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(l) => self.scale(l.inv().expect("nonzero leading coefficient")),
            None => self.clone(),
        }
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).expect("nonzero divisor").1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Maps coefficients through a field embedding.
    pub fn embed(&self, e: &Embedding) -> Self {
        Self::new(e.target(), self.coeffs.iter().map(|&c| e.apply(c)).collect())
    }

    /// All roots in the coefficient field with multiplicities, by exhaustive
    /// evaluation and deflation. The sum of multiplicities is at most the degree.
    pub fn roots(&self) -> Result<Vec<(FieldElement, usize)>, FieldError> {
        if self.is_zero() {
            return Err(FieldError::ZeroPolynomial);
        }
        let mut rest = self.clone();
        let mut out = Vec::new();
        for r in self.field.elements() {
            if rest.degree() == Some(0) {
                break;
            }
            if !rest.eval(r).is_zero() {
                continue;
            }
            let lin = Self::linear(r);
            let mut mult = 0;
            loop {
                let (q, rem) = rest.div_rem(&lin)?;
                if !rem.is_zero() {
                    break;
                }
                rest = q;
                mult += 1;
            }
            out.push((r, mult));
        }
        Ok(out)
    }

    /// True when the roots (with multiplicity) account for the whole degree.
    pub fn splits(&self) -> Result<bool, FieldError> {
        let total: usize = self.roots()?.iter().map(|r| r.1).sum();
        Ok(Some(total) == self.degree())
    }

    /// `gcd(f, f') = 1`.
    pub fn is_separable(&self) -> Result<bool, FieldError> {
        match self.degree() {
            None | Some(0) => Err(FieldError::ConstantPolynomial),
            Some(_) => Ok(self.gcd(&self.derivative()).degree() == Some(0)),
        }
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("{c}"),
                1 => format!("{c}*x"),
                _ => format!("{c}*x^{i}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(s: &str) -> FieldSpec {
        s.parse().unwrap()
    }

    fn poly(field: FieldSpec, bits: &[u32]) -> UniPoly {
        UniPoly::new(field, bits.iter().map(|&b| field.element(b).unwrap()).collect())
    }

    #[test]
    fn x4_plus_x_over_gf4_has_four_simple_roots() {
        let f = gf("gf4:0x7");
        let p = poly(f, &[0, 1, 0, 0, 1]);
        let roots = p.roots().unwrap();
        // brute force: every element of GF(4) satisfies x^4 = x
        let brute: Vec<_> = f.elements().filter(|&x| p.eval(x).is_zero()).collect();
        assert_eq!(roots.iter().map(|r| r.0).collect::<Vec<_>>(), brute);
        assert!(roots.iter().all(|r| r.1 == 1));
    }

    #[test]
    fn x2_plus_1_over_gf2_is_a_double_root() {
        let p = poly(FieldSpec::f2(), &[1, 0, 1]);
        assert_eq!(p.roots().unwrap(), vec![(FieldSpec::f2().one(), 2)]);
        assert!(!p.is_separable().unwrap());
    }

    #[test]
    fn u4_u2_u_over_gf16() {
        let f = gf("gf16:0x13");
        let p = poly(f, &[0, 1, 1, 0, 1]);
        assert_eq!(p.derivative(), poly(f, &[1]));
        assert!(p.is_separable().unwrap());
        let roots = p.roots().unwrap();
        let brute = f.elements().filter(|&x| p.eval(x).is_zero()).count();
        assert_eq!(roots.len(), brute);
        assert!(roots.iter().all(|r| r.1 == 1));
        // u^3 + u + 1 is irreducible of degree 3, so only u = 0 is in GF(16)
        assert_eq!(brute, 1);
        let big = FieldSpec::default_for_degree(12).unwrap();
        let e = f.embedding_into(&big).unwrap();
        let lifted = p.embed(&e);
        assert_eq!(lifted.roots().unwrap().len(), 4);
        assert!(lifted.splits().unwrap());
    }

    #[test]
    fn separability_examples() {
        let f = gf("gf16:0x13");
        // beta^4 + beta^2 is inseparable
        assert!(!poly(f, &[0, 0, 1, 0, 1]).is_separable().unwrap());
        assert!(poly(f, &[1, 1]).is_separable().unwrap());
        // l4 b^4 + l2 b^2 + tau b + c with tau != 0
        assert!(poly(f, &[5, 3, 7, 0, 2]).is_separable().unwrap());
        assert_eq!(poly(f, &[3]).is_separable(), Err(FieldError::ConstantPolynomial));
        assert_eq!(UniPoly::zero(f).roots(), Err(FieldError::ZeroPolynomial));
    }

    #[test]
    fn div_rem_reconstructs() {
        let f = gf("gf16:0x13");
        let a = poly(f, &[3, 0, 7, 1, 9, 2]);
        let b = poly(f, &[1, 4, 5]);
        let (q, r) = a.div_rem(&b).unwrap();
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree().unwrap_or(0) < 2);
    }
}
