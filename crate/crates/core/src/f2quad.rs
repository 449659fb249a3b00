//! Quadratic forms over F₂ in at most 64 variables.
//!
//! A form is stored as an upper-triangular bit matrix `U` (row `i` holds the
//! bits `j ≥ i`), with `q(x) = Σ_{i≤j} U_ij x_i x_j`. Vectors are bitmasks.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

pub const MAX_DIM: usize = 64;
/// Largest dimension for which [`count_zeros`] enumerates all vectors.
pub const MAX_BRUTE_DIM: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuadError {
    #[error("dimension {0} exceeds {MAX_DIM}")]
    TooLarge(usize),
    #[error("dimension {0} is too large for exhaustive counting")]
    TooLargeToCount(usize),
    #[error("row {row} has bits below the diagonal")]
    NotUpper { row: usize },
    #[error("form is degenerate (radical of dimension {0})")]
    Degenerate(usize),
    #[error("r must be 2 or 6 modulo 8, got {0}")]
    BadResidue(u32),
    #[error("need r = 2 mod 4 and 1 <= sigma <= r/2, got r={r}, sigma={sigma}")]
    BadRankSigma { r: u32, sigma: u32 },
    #[error("subspace is not totally singular")]
    NotTotallySingular,
    #[error("vector {0:#x} outside the ambient space")]
    OutOfRange(u64),
    #[error("bad hex row `{0}`")]
    BadRow(String),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct F2QuadForm {
    dim: usize,
    upper: Vec<u64>,
}

fn parity(x: u64) -> u64 {
    (x.count_ones() & 1) as u64
}

fn mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

impl F2QuadForm {
    pub fn new(upper: Vec<u64>) -> Result<Self, QuadError> {
        let dim = upper.len();
        if dim > MAX_DIM {
            return Err(QuadError::TooLarge(dim));
        }
        for (i, &row) in upper.iter().enumerate() {
            if row & !(mask(dim) & !mask(i)) != 0 {
                return Err(QuadError::NotUpper { row: i });
            }
        }
        Ok(Self { dim, upper })
    }

    pub fn zero_form(dim: usize) -> Result<Self, QuadError> {
        Self::new(vec![0; dim])
    }

    /// Builds a form from arbitrary coefficients `c_ij` (any `i, j`), folding
    /// `c_ij + c_ji` into the upper triangle.
    pub fn from_coeffs(dim: usize, coeffs: &[(usize, usize)]) -> Result<Self, QuadError> {
        let mut upper = vec![0u64; dim];
        for &(i, j) in coeffs {
            let (a, b) = (i.min(j), i.max(j));
            if b >= dim {
                return Err(QuadError::OutOfRange(b as u64));
            }
            upper[a] ^= 1 << b;
        }
        Self::new(upper)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rows(&self) -> &[u64] {
        &self.upper
    }

    pub fn eval(&self, x: u64) -> u8 {
        let mut acc = 0;
        let mut rest = x;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            acc ^= parity(self.upper[i] & x);
            rest &= rest - 1;
        }
        acc as u8
    }

    /// Polar form `B(x, y) = q(x+y) + q(x) + q(y)`.
    pub fn polar(&self, x: u64, y: u64) -> u8 {
        self.eval(x ^ y) ^ self.eval(x) ^ self.eval(y)
    }

    /// Rows of the alternating matrix `U + Uᵀ`.
    pub fn polar_matrix(&self) -> Vec<u64> {
        let mut b: Vec<u64> = self.upper.iter().enumerate().map(|(i, r)| r & !(1 << i)).collect();
        for i in 0..self.dim {
            for j in (i + 1)..self.dim {
                if self.upper[i] >> j & 1 == 1 {
                    b[j] |= 1 << i;
                }
            }
        }
        b
    }

    /// `{x : B(x, ·) = 0}`, as an echelon basis.
    pub fn radical(&self) -> Vec<u64> {
        kernel(&self.polar_matrix(), self.dim)
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.radical().is_empty()
    }

    fn require_nondegenerate(&self) -> Result<(), QuadError> {
        match self.radical().len() {
            0 => Ok(()),
            n => Err(QuadError::Degenerate(n)),
        }
    }

    /// The form restricted to the span of `basis`, in those coordinates.
    pub fn restrict(&self, basis: &[u64]) -> F2QuadForm {
        let n = basis.len();
        let mut upper = vec![0u64; n];
        for i in 0..n {
            upper[i] |= (self.eval(basis[i]) as u64) << i;
            for j in (i + 1)..n {
                upper[i] |= (self.polar(basis[i], basis[j]) as u64) << j;
            }
        }
        F2QuadForm { dim: n, upper }
    }

    /// Hex bit-rows, row `i` first.
    pub fn to_hex_rows(&self) -> Vec<String> {
        self.upper.iter().map(|r| format!("{r:#x}")).collect()
    }

    pub fn from_hex_rows<S: AsRef<str>>(rows: &[S]) -> Result<Self, QuadError> {
        let upper = rows
            .iter()
            .map(|s| {
                let s = s.as_ref();
                let t = s.trim().trim_start_matches("0x").trim_start_matches("0X");
                u64::from_str_radix(t, 16).map_err(|_| QuadError::BadRow(s.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(upper)
    }
}

impl fmt::Debug for F2QuadForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F2QuadForm({})", self)
    }
}

/// Polynomial notation, variables `t1..tn`.
impl fmt::Display for F2QuadForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for i in 0..self.dim {
            for j in i..self.dim {
                if self.upper[i] >> j & 1 == 1 {
                    terms.push(if i == j { format!("t{}^2", i + 1) } else { format!("t{}t{}", i + 1, j + 1) });
                }
            }
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join("+"))
        }
    }
}

#[derive(Serialize, Deserialize)]
struct FormRepr {
    dim: usize,
    rows: Vec<String>,
}

impl Serialize for F2QuadForm {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        FormRepr { dim: self.dim, rows: self.to_hex_rows() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for F2QuadForm {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = FormRepr::deserialize(d)?;
        let q = Self::from_hex_rows(&r.rows).map_err(serde::de::Error::custom)?;
        if q.dim != r.dim {
            return Err(serde::de::Error::custom("dim does not match row count"));
        }
        Ok(q)
    }
}

/// Reduces `v` against an echelon basis whose pivots are the highest set bits.
fn reduce(v: u64, basis: &[u64]) -> u64 {
    basis.iter().fold(v, |acc, &b| if acc >> (63 - b.leading_zeros()) & 1 == 1 { acc ^ b } else { acc })
}

/// Inserts into an echelon basis (sorted by descending pivot); false if dependent.
fn insert(basis: &mut Vec<u64>, v: u64) -> bool {
    let r = reduce(v, basis);
    if r == 0 {
        return false;
    }
    let pivot = 63 - r.leading_zeros();
    for b in basis.iter_mut() {
        if *b >> pivot & 1 == 1 {
            *b ^= r;
        }
    }
    let pos = basis.iter().position(|b| b.leading_zeros() > r.leading_zeros()).unwrap_or(basis.len());
    basis.insert(pos, r);
    true
}

/// Reduced echelon basis of the span.
pub fn rref(vectors: &[u64]) -> Vec<u64> {
    let mut basis = Vec::new();
    for &v in vectors {
        insert(&mut basis, v);
    }
    basis
}

/// Kernel of the linear map whose `i`-th row gives the image coordinates paired against `e_i`,
/// i.e. `{x : parity(rows[i] & x) = 0 for all i}`.
fn kernel(rows: &[u64], dim: usize) -> Vec<u64> {
    // solve by elimination on the rows, then read off free variables
    let mut r: Vec<u64> = Vec::new();
    for &row in rows {
        insert(&mut r, row & mask(dim));
    }
    let pivots: Vec<u32> = r.iter().map(|b| 63 - b.leading_zeros()).collect();
    let mut out = Vec::new();
    for free in 0..dim as u32 {
        if pivots.contains(&free) {
            continue;
        }
        let mut x = 1u64 << free;
        for (b, &p) in r.iter().zip(&pivots) {
            if parity(b & (1 << free)) == 1 {
                x |= 1 << p;
            }
        }
        out.push(x);
    }
    rref(&out)
}

/// The two standard nondegenerate forms in `2σ` variables: `t₁t₂ + … + t_{2σ−1}t_{2σ}`
/// when `r ≡ 2 mod 8`, and that plus `t₁² + t₂²` when `r ≡ 6 mod 8`.
pub fn standard_form(sigma: u32, r_mod_8: u32) -> Result<F2QuadForm, QuadError> {
    let n = 2 * sigma as usize;
    if n > MAX_DIM {
        return Err(QuadError::TooLarge(n));
    }
    let mut upper = vec![0u64; n];
    for i in (0..n).step_by(2) {
        upper[i] |= 1 << (i + 1);
    }
    match r_mod_8 {
        2 => {}
        6 if n >= 2 => {
            upper[0] |= 1;
            upper[1] |= 1 << 1;
        }
        6 => {}
        other => return Err(QuadError::BadResidue(other)),
    }
    F2QuadForm::new(upper)
}

/// Number of `x` with `q(x) = 0` (including `x = 0`).
pub fn count_zeros(q: &F2QuadForm) -> Result<u64, QuadError> {
    q.require_nondegenerate()?;
    if q.dim > MAX_BRUTE_DIM {
        return Err(QuadError::TooLargeToCount(q.dim));
    }
    Ok((0..1u64 << q.dim).filter(|&x| q.eval(x) == 0).count() as u64)
}

/// `2^{2σ−1} + 2^{σ−1}` for Arf 0 and `2^{2σ−1} − 2^{σ−1}` for Arf 1 (`σ ≥ 1`).
pub fn zeros_closed_form(sigma: u32, arf: u8) -> u64 {
    assert!(sigma >= 1);
    let (a, b) = (1u64 << (2 * sigma - 1), 1u64 << (sigma - 1));
    if arf == 0 {
        a + b
    } else {
        a - b
    }
}

/// Arf invariant of a nondegenerate form; the empty form has Arf 0.
pub fn arf_invariant(q: &F2QuadForm) -> Result<u8, QuadError> {
    q.require_nondegenerate()?;
    if q.dim == 0 {
        return Ok(0);
    }
    let zeros = count_zeros(q)?;
    Ok(if zeros == zeros_closed_form(q.dim as u32 / 2, 0) { 0 } else { 1 })
}

/// Equivalence data `(dim, radical dim, Arf)`. The Arf value is only present
/// for nondegenerate forms; those are classified by this triple.
pub fn classify(q: &F2QuadForm) -> (usize, usize, Option<u8>) {
    let rad = q.radical().len();
    (q.dim, rad, if rad == 0 { arf_invariant(q).ok() } else { None })
}

pub fn is_totally_singular(q: &F2QuadForm, basis: &[u64]) -> bool {
    basis.iter().enumerate().all(|(i, &v)| q.eval(v) == 0 && basis[..i].iter().all(|&w| q.polar(v, w) == 0))
}

/// All `d`-dimensional subspaces on which `q` vanishes, each given by its
/// reduced echelon basis; the list is sorted.
pub fn totally_singular_subspaces(q: &F2QuadForm, d: usize) -> Vec<Vec<u64>> {
    if d == 0 {
        return vec![Vec::new()];
    }
    if q.dim > MAX_BRUTE_DIM {
        return Vec::new();
    }
    let singular: Vec<u64> = (1..1u64 << q.dim).filter(|&x| q.eval(x) == 0).collect();
    let mut level: BTreeSet<Vec<u64>> = singular.iter().map(|&v| vec![v]).collect();
    for _ in 1..d {
        let mut next = BTreeSet::new();
        for s in &level {
            for &v in &singular {
                if s.iter().all(|&w| q.polar(v, w) == 0) {
                    let mut b = s.clone();
                    if insert(&mut b, v) {
                        next.insert(b);
                    }
                }
            }
        }
        level = next;
    }
    level.into_iter().collect()
}

/// Number of even overlattices of index 2 of an even 2-elementary lattice of
/// rank `r` and Artin invariant `σ`: `2^{2σ−1} + (−1)^ε 2^{σ−1} − 1`, `ε = (r−2)/4`.
pub fn overlattice_count(r: u32, sigma: u32) -> Result<u64, QuadError> {
    if r % 4 != 2 || sigma == 0 || 2 * sigma > r {
        return Err(QuadError::BadRankSigma { r, sigma });
    }
    let eps = ((r - 2) / 4) % 2;
    Ok(zeros_closed_form(sigma, eps as u8) - 1)
}

/// The induced form on `H⊥/H` for a totally singular `H`.
pub fn subquotient(q: &F2QuadForm, h: &[u64]) -> Result<F2QuadForm, QuadError> {
    if let Some(&v) = h.iter().find(|&&v| v & !mask(q.dim) != 0) {
        return Err(QuadError::OutOfRange(v));
    }
    if !is_totally_singular(q, h) {
        return Err(QuadError::NotTotallySingular);
    }
    let b = q.polar_matrix();
    // x ∈ H⊥ iff Σ_i x_i B(e_i, h) = 0, i.e. parity((B h) & x) = 0
    let constraints: Vec<u64> = h
        .iter()
        .map(|&v| (0..q.dim).filter(|&i| parity(b[i] & v) == 1).fold(0u64, |acc, i| acc | 1 << i))
        .collect();
    let perp = kernel(&constraints, q.dim);
    let mut span = rref(h);
    let complement: Vec<u64> = perp.into_iter().filter(|&v| insert(&mut span, v)).collect();
    Ok(q.restrict(&complement))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_forms() {
        let h = standard_form(1, 2).unwrap();
        assert_eq!(h.to_string(), "t1t2");
        let m = standard_form(1, 6).unwrap();
        assert_eq!(m.to_string(), "t1^2+t1t2+t2^2");
        assert_eq!(standard_form(0, 2).unwrap().dim(), 0);
        assert_eq!(standard_form(1, 4), Err(QuadError::BadResidue(4)));
    }

    #[test]
    fn zero_counts() {
        assert_eq!(count_zeros(&standard_form(1, 2).unwrap()).unwrap(), 3);
        assert_eq!(count_zeros(&standard_form(1, 6).unwrap()).unwrap(), 1);
        assert_eq!(count_zeros(&standard_form(2, 2).unwrap()).unwrap(), 10);
        let deg = F2QuadForm::from_coeffs(2, &[(0, 0)]).unwrap();
        assert_eq!(count_zeros(&deg), Err(QuadError::Degenerate(2)));
    }

    #[test]
    fn arf_values() {
        assert_eq!(arf_invariant(&standard_form(1, 2).unwrap()).unwrap(), 0);
        assert_eq!(arf_invariant(&standard_form(1, 6).unwrap()).unwrap(), 1);
        assert_eq!(arf_invariant(&standard_form(5, 6).unwrap()).unwrap(), 1);
    }

    #[test]
    fn singular_subspaces_of_sigma3_minus() {
        let q = standard_form(3, 6).unwrap();
        assert_eq!(totally_singular_subspaces(&q, 1).len(), 27);
        assert_eq!(totally_singular_subspaces(&q, 2).len(), 45);
        assert!(totally_singular_subspaces(&standard_form(1, 6).unwrap(), 1).is_empty());
    }

    #[test]
    fn closed_form_counts() {
        assert_eq!(overlattice_count(22, 3).unwrap(), 27);
        assert_eq!(overlattice_count(22, 1).unwrap(), 0);
        assert_eq!(overlattice_count(22, 5).unwrap(), 495);
        assert!(overlattice_count(20, 3).is_err());
        assert!(overlattice_count(22, 0).is_err());
        assert!(overlattice_count(6, 4).is_err());
    }

    #[test]
    fn subquotient_drops_two_dimensions() {
        let q = standard_form(3, 6).unwrap();
        for line in totally_singular_subspaces(&q, 1) {
            let s = subquotient(&q, &line).unwrap();
            assert_eq!(classify(&s), (4, 0, Some(1)));
        }
        assert_eq!(subquotient(&q, &[0b1]), Err(QuadError::NotTotallySingular));
    }

    #[test]
    fn hex_round_trip() {
        let q = standard_form(2, 6).unwrap();
        let back = F2QuadForm::from_hex_rows(&q.to_hex_rows()).unwrap();
        assert_eq!(back, q);
        let json = serde_json::to_string(&q).unwrap();
        assert_eq!(json, r#"{"dim":4,"rows":["0x3","0x2","0x8","0x0"]}"#);
        assert_eq!(serde_json::from_str::<F2QuadForm>(&json).unwrap(), q);
        assert!(F2QuadForm::new(vec![0b10, 0b01]).is_err());
    }

    #[test]
    fn radical_of_degenerate_form() {
        // t1t2 + t3^2 in three variables: radical spanned by e3
        let q = F2QuadForm::from_coeffs(3, &[(0, 1), (2, 2)]).unwrap();
        assert_eq!(q.radical(), vec![0b100]);
        assert_eq!(classify(&q), (3, 1, None));
    }
}
