//! Sparse multivariate polynomials over GF(2^k).
//!
//! Variables are named and ordered; the order fixes the graded-lexicographic
//! monomial order used by [`super::groebner`]. When indeterminate coefficients
//! are needed, they are simply extra variables over the prime field.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::field::{FieldElement, FieldSpec};
use super::FieldError;

/// Maximum number of variables in a ring.
pub const MAX_VARS: usize = 10;

pub type Exponent = Vec<u32>;

/// Graded lexicographic order, earlier variables dominate.
pub fn grlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    field: FieldSpec,
    vars: Arc<[String]>,
    terms: BTreeMap<Exponent, FieldElement>,
}

impl MultiPoly {
    pub fn zero(field: FieldSpec, vars: &[&str]) -> Result<Self, FieldError> {
        if vars.len() > MAX_VARS {
            return Err(FieldError::TooManyVariables(vars.len()));
        }
        Ok(Self {
            field,
            vars: vars.iter().map(|s| s.to_string()).collect(),
            terms: BTreeMap::new(),
        })
    }

    /// Zero polynomial in the same ring as `self`.
    pub fn zero_like(&self) -> Self {
        Self { field: self.field, vars: self.vars.clone(), terms: BTreeMap::new() }
    }

    pub fn constant_like(&self, c: FieldElement) -> Self {
        self.monomial_like(vec![0; self.vars.len()], c)
    }

    pub fn monomial_like(&self, exp: Exponent, c: FieldElement) -> Self {
        assert_eq!(exp.len(), self.vars.len());
        let mut p = self.zero_like();
        if !c.is_zero() {
            p.terms.insert(exp, c);
        }
        p
    }

    /// The generators of the ring, one polynomial per variable.
    pub fn variables(field: FieldSpec, vars: &[&str]) -> Result<Vec<Self>, FieldError> {
        let z = Self::zero(field, vars)?;
        Ok((0..vars.len())
            .map(|i| {
                let mut e = vec![0; vars.len()];
                e[i] = 1;
                z.monomial_like(e, field.one())
            })
            .collect())
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn var_names(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &FieldElement)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: &[u32]) -> FieldElement {
        self.terms.get(exp).copied().unwrap_or(self.field.zero())
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    fn same_ring(&self, other: &Self) {
        assert!(
            self.field == other.field && self.vars == other.vars,
            "polynomials from different rings"
        );
    }

    fn add_term(&mut self, exp: Exponent, c: FieldElement) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = *o.get() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.same_ring(other);
        let mut out = self.clone();
        for (e, &c) in &other.terms {
            out.add_term(e.clone(), c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.same_ring(other);
        let mut out = self.zero_like();
        for (ea, &ca) in &self.terms {
            for (eb, &cb) in &other.terms {
                let e = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: FieldElement) -> Self {
        let mut out = self.zero_like();
        for (e, &a) in &self.terms {
            out.add_term(e.clone(), a * c);
        }
        out
    }

    /// Multiplies by `c·x^shift`.
    pub fn mul_term(&self, shift: &[u32], c: FieldElement) -> Self {
        let mut out = self.zero_like();
        for (e, &a) in &self.terms {
            out.add_term(e.iter().zip(shift).map(|(x, y)| x + y).collect(), a * c);
        }
        out
    }

    pub fn pow(&self, mut n: u32) -> Self {
        let mut base = self.clone();
        let mut acc = self.constant_like(self.field.one());
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            n >>= 1;
        }
        acc
    }

    /// Formal partial derivative with respect to variable `i`.
    pub fn partial(&self, i: usize) -> Self {
        let mut out = self.zero_like();
        for (e, &c) in &self.terms {
            // exponent parity is the integer multiplier in characteristic 2
            if e[i] % 2 == 1 {
                let mut d = e.clone();
                d[i] -= 1;
                out.add_term(d, c);
            }
        }
        out
    }

    /// Replaces variable `i` of `self` by `images[i]`; all images share one target ring.
    pub fn substitute(&self, images: &[MultiPoly]) -> Self {
        assert_eq!(images.len(), self.vars.len(), "one image per variable");
        let target = images.first().expect("at least one variable").zero_like();
        let mut out = target.clone();
        for (e, &c) in &self.terms {
            let mut term = target.constant_like(c);
            for (img, &k) in images.iter().zip(e) {
                if k > 0 {
                    term = term.mul(&img.pow(k));
                }
            }
            out = out.add(&term);
        }
        out
    }

    /// Leading exponent and coefficient under grlex.
    pub fn leading(&self) -> Option<(&Exponent, FieldElement)> {
        self.terms.iter().max_by(|a, b| grlex(a.0, b.0)).map(|(e, &c)| (e, c))
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some((_, c)) => self.scale(c.inv().expect("nonzero leading coefficient")),
            None => self.clone(),
        }
    }

    pub fn eval(&self, point: &[FieldElement]) -> FieldElement {
        assert_eq!(point.len(), self.vars.len());
        self.terms.iter().fold(self.field.zero(), |acc, (e, &c)| {
            acc + e.iter().zip(point).fold(c, |t, (&k, &x)| t * x.pow(k as u64))
        })
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| grlex(b.0, a.0));
        let parts: Vec<String> = terms
            .iter()
            .map(|(e, c)| {
                let mono: Vec<String> = e
                    .iter()
                    .zip(self.vars.iter())
                    .filter(|(k, _)| **k > 0)
                    .map(|(k, v)| if *k == 1 { v.clone() } else { format!("{v}^{k}") })
                    .collect();
                match (c.is_one(), mono.is_empty()) {
                    (_, true) => format!("{c}"),
                    (true, false) => mono.join("*"),
                    (false, false) => format!("{c}*{}", mono.join("*")),
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
