//! Integral lattices given by Gram matrices, with exact big-integer arithmetic.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::f2quad::F2QuadForm;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("rows have different lengths")]
    Ragged,
    #[error("matrix is {0}x{1}, expected square")]
    NotSquare(usize, usize),
    #[error("Gram matrix is not symmetric")]
    NotSymmetric,
    #[error("lattice is degenerate")]
    Degenerate,
    #[error("lattice is not even")]
    NotEven,
    #[error("lattice is not 2-elementary")]
    NotTwoElementary,
    #[error("{0} elementary divisors equal 2; an alternating form needs an even number")]
    OddTwoRank(usize),
    #[error("discriminant bilinear form is not alternating")]
    NotAlternating,
    #[error("invalid root lattice `{0}`")]
    BadRoot(String),
    #[error("glue group is not totally singular")]
    NotTotallySingular,
    #[error("glue vector {0:#x} outside the discriminant group")]
    GlueOutOfRange(u64),
    #[error("glue produces a non-integral or odd Gram matrix")]
    BadGlue,
    #[error("{0} labels for rank {1}")]
    LabelCount(usize, usize),
    #[error("entry does not fit in 64 bits")]
    Overflow,
}

/// Dense integer matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self, LatticeError> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(LatticeError::Ragged);
        }
        Ok(Self { rows: rows.len(), cols, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Result<Self, LatticeError> {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_i64(&self) -> Result<Vec<Vec<i64>>, LatticeError> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|x| x.to_i64().ok_or(LatticeError::Overflow)).collect())
            .collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * &other[(k, j)];
                }
            }
        }
        out
    }

    /// Rows `0..r`.
    pub fn top_rows(&self, r: usize) -> Self {
        Self { rows: r, cols: self.cols, data: self.data[..r * self.cols].to_vec() }
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// `row[dst] -= k·row[src]`
    fn sub_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        for j in 0..self.cols {
            let t = k * &self[(src, j)];
            self[(dst, j)] -= t;
        }
    }

    /// `col[dst] -= k·col[src]`
    fn sub_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        for i in 0..self.rows {
            let t = k * &self[(i, src)];
            self[(i, dst)] -= t;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let x = -&self[(i, j)];
            self[(i, j)] = x;
        }
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Result<BigInt, LatticeError> {
        if self.rows != self.cols {
            return Err(LatticeError::NotSquare(self.rows, self.cols));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        a.swap_rows(i, k);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)]) / &prev;
                    a[(i, j)] = v;
                }
            }
            prev = a[(k, k)].clone();
        }
        Ok(sign * &a[(n - 1, n - 1)])
    }

    pub fn rank(&self) -> usize {
        hermite_rows(self).rank
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> =
            (0..self.rows).map(|i| self.row(i).iter().map(ToString::to_string).collect()).collect();
        write!(f, "{rows:?}")
    }
}

/// Row echelon form `H = U·M` with `U` unimodular.
pub struct Hermite {
    pub h: IntMatrix,
    pub u: IntMatrix,
    /// Number of nonzero rows of `h`.
    pub rank: usize,
}

/// Integer row reduction. Pivots are positive and entries above a pivot are
/// reduced into `[0, pivot)`; rows past `rank` are zero.
pub fn hermite_rows(m: &IntMatrix) -> Hermite {
    let (rows, cols) = (m.rows, m.cols);
    let mut h = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        loop {
            let Some(p) = (r..rows).filter(|&i| !h[(i, c)].is_zero()).min_by_key(|&i| h[(i, c)].abs()) else {
                break;
            };
            h.swap_rows(p, r);
            u.swap_rows(p, r);
            let mut clean = true;
            for i in r + 1..rows {
                if h[(i, c)].is_zero() {
                    continue;
                }
                let q = h[(i, c)].div_floor(&h[(r, c)]);
                h.sub_row(i, r, &q);
                u.sub_row(i, r, &q);
                clean &= h[(i, c)].is_zero();
            }
            if clean {
                if h[(r, c)].is_negative() {
                    h.negate_row(r);
                    u.negate_row(r);
                }
                for i in 0..r {
                    let q = h[(i, c)].div_floor(&h[(r, c)]);
                    if !q.is_zero() {
                        h.sub_row(i, r, &q);
                        u.sub_row(i, r, &q);
                    }
                }
                r += 1;
                break;
            }
        }
    }
    Hermite { h, u, rank: r }
}

/// `U·M·V = D` with `U`, `V` unimodular and `D` diagonal, `d₁ | d₂ | …`, `dᵢ ≥ 0`.
pub struct Smith {
    /// Diagonal of `D`, length `min(rows, cols)`.
    pub divisors: Vec<BigInt>,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

pub fn smith_normal_form(m: &IntMatrix) -> Smith {
    let (rows, cols) = (m.rows, m.cols);
    let mut a = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    let n = rows.min(cols);
    'outer: for t in 0..n {
        loop {
            let best = (t..rows)
                .flat_map(|i| (t..cols).map(move |j| (i, j)))
                .filter(|&(i, j)| !a[(i, j)].is_zero())
                .min_by_key(|&(i, j)| a[(i, j)].abs());
            let Some((pi, pj)) = best else {
                break 'outer;
            };
            a.swap_rows(pi, t);
            u.swap_rows(pi, t);
            a.swap_cols(pj, t);
            v.swap_cols(pj, t);
            let mut clean = true;
            for i in t + 1..rows {
                let q = a[(i, t)].div_floor(&a[(t, t)]);
                if !q.is_zero() {
                    a.sub_row(i, t, &q);
                    u.sub_row(i, t, &q);
                }
                clean &= a[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                let q = a[(t, j)].div_floor(&a[(t, t)]);
                if !q.is_zero() {
                    a.sub_col(j, t, &q);
                    v.sub_col(j, t, &q);
                }
                clean &= a[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[(i, j)].is_multiple_of(&a[(t, t)])));
            if let Some(i) = bad {
                // row t += row i, then the next pass leaves a smaller remainder
                let m1 = BigInt::from(-1);
                a.sub_row(t, i, &m1);
                u.sub_row(t, i, &m1);
                continue;
            }
            if a[(t, t)].is_negative() {
                a.negate_row(t);
                u.negate_row(t);
            }
            break;
        }
    }
    Smith { divisors: (0..n).map(|i| a[(i, i)].clone()).collect(), u, v }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Positive,
    Negative,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RootKind {
    A(usize),
    D(usize),
    E(usize),
}

impl FromStr for RootKind {
    type Err = LatticeError;

    /// `A1`, `D4`, `E8`, …
    fn from_str(s: &str) -> Result<Self, LatticeError> {
        let bad = || LatticeError::BadRoot(s.to_string());
        let mut chars = s.chars();
        let head = chars.next().ok_or_else(bad)?;
        let n: usize = chars.as_str().parse().map_err(|_| bad())?;
        let kind = match head.to_ascii_uppercase() {
            'A' => RootKind::A(n),
            'D' => RootKind::D(n),
            'E' => RootKind::E(n),
            _ => return Err(bad()),
        };
        kind.validate()?;
        Ok(kind)
    }
}

impl fmt::Display for RootKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RootKind::A(n) => write!(f, "A{n}"),
            RootKind::D(n) => write!(f, "D{n}"),
            RootKind::E(n) => write!(f, "E{n}"),
        }
    }
}

impl RootKind {
    fn validate(&self) -> Result<(), LatticeError> {
        let ok = match *self {
            RootKind::A(n) => n >= 1,
            RootKind::D(n) => n >= 4,
            RootKind::E(n) => (6..=8).contains(&n),
        };
        if ok {
            Ok(())
        } else {
            Err(LatticeError::BadRoot(self.to_string()))
        }
    }

    pub fn rank(&self) -> usize {
        match *self {
            RootKind::A(n) | RootKind::D(n) | RootKind::E(n) => n,
        }
    }

    /// Edges of the Dynkin diagram on nodes `0..n`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        match *self {
            RootKind::A(n) => (1..n).map(|i| (i - 1, i)).collect(),
            RootKind::D(n) => {
                let mut e: Vec<_> = (1..n - 1).map(|i| (i - 1, i)).collect();
                e.push((n - 3, n - 1));
                e
            }
            RootKind::E(n) => {
                let mut e: Vec<_> = (1..n - 1).map(|i| (i - 1, i)).collect();
                e.push((2, n - 1));
                e
            }
        }
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Lattice {
    gram: IntMatrix,
    labels: Option<Vec<String>>,
}

impl fmt::Debug for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Lattice{:?}", self.gram)
    }
}

pub fn root_lattice(kind: RootKind, sign: Sign) -> Result<Lattice, LatticeError> {
    kind.validate()?;
    let n = kind.rank();
    let s: i64 = if sign == Sign::Positive { 1 } else { -1 };
    let mut g = IntMatrix::zeros(n, n);
    for i in 0..n {
        g[(i, i)] = BigInt::from(2 * s);
    }
    for (i, j) in kind.edges() {
        g[(i, j)] = BigInt::from(-s);
        g[(j, i)] = BigInt::from(-s);
    }
    Lattice::new(g)
}

pub fn hyperbolic_u() -> Lattice {
    Lattice::from_i64(&[vec![0, 1], vec![1, 0]]).expect("symmetric")
}

pub fn direct_sum(parts: &[Lattice]) -> Lattice {
    let n: usize = parts.iter().map(Lattice::rank).sum();
    let mut g = IntMatrix::zeros(n, n);
    let mut off = 0;
    for p in parts {
        for i in 0..p.rank() {
            for j in 0..p.rank() {
                g[(off + i, off + j)] = p.gram[(i, j)].clone();
            }
        }
        off += p.rank();
    }
    let labels = parts
        .iter()
        .map(|p| p.labels.clone())
        .collect::<Option<Vec<_>>>()
        .map(|ls| ls.into_iter().flatten().collect());
    Lattice { gram: g, labels }
}

fn rat(x: &BigInt) -> BigRational {
    BigRational::from_integer(x.clone())
}

/// Representative of `x` modulo `m` in `[0, m)`.
fn rat_mod(x: &BigRational, m: i64) -> BigRational {
    let m = BigRational::from_integer(BigInt::from(m));
    let q = (x / &m).floor();
    x - q * m
}

impl Lattice {
    pub fn new(gram: IntMatrix) -> Result<Self, LatticeError> {
        if gram.rows != gram.cols {
            return Err(LatticeError::NotSquare(gram.rows, gram.cols));
        }
        if !gram.is_symmetric() {
            return Err(LatticeError::NotSymmetric);
        }
        Ok(Self { gram, labels: None })
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Result<Self, LatticeError> {
        Self::new(IntMatrix::from_i64(rows)?)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, LatticeError> {
        if labels.len() != self.rank() {
            return Err(LatticeError::LabelCount(labels.len(), self.rank()));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Number of basis vectors (the matrix size).
    pub fn rank(&self) -> usize {
        self.gram.rows
    }

    pub fn det(&self) -> BigInt {
        self.gram.det().expect("square")
    }

    pub fn is_even(&self) -> bool {
        (0..self.rank()).all(|i| self.gram[(i, i)].is_even())
    }

    pub fn is_nondegenerate(&self) -> bool {
        !self.det().is_zero()
    }

    fn require_nondegenerate(&self) -> Result<(), LatticeError> {
        if self.is_nondegenerate() {
            Ok(())
        } else {
            Err(LatticeError::Degenerate)
        }
    }

    /// `xᵀ G y` for rational coordinate vectors.
    pub fn pair(&self, x: &[BigRational], y: &[BigRational]) -> BigRational {
        let mut acc = BigRational::zero();
        for i in 0..self.rank() {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..self.rank() {
                if !y[j].is_zero() && !self.gram[(i, j)].is_zero() {
                    acc += &x[i] * rat(&self.gram[(i, j)]) * &y[j];
                }
            }
        }
        acc
    }

    /// `(n₊, n₋)` by congruence diagonalization over ℚ.
    pub fn signature(&self) -> Result<(usize, usize), LatticeError> {
        self.require_nondegenerate()?;
        let n = self.rank();
        let mut a: Vec<Vec<BigRational>> =
            (0..n).map(|i| (0..n).map(|j| rat(&self.gram[(i, j)])).collect()).collect();
        let (mut pos, mut neg) = (0, 0);
        for k in 0..n {
            if a[k][k].is_zero() {
                if let Some(i) = (k + 1..n).find(|&i| !a[i][i].is_zero()) {
                    a.swap(i, k);
                    for row in a.iter_mut() {
                        row.swap(i, k);
                    }
                } else if let Some(j) = (k + 1..n).find(|&j| !a[k][j].is_zero()) {
                    // e_k += e_j turns a hyperbolic pair into a nonzero pivot 2a_kj
                    for c in 0..n {
                        let t = a[j][c].clone();
                        a[k][c] += t;
                    }
                    for row in a.iter_mut() {
                        let t = row[j].clone();
                        row[k] += t;
                    }
                } else {
                    return Err(LatticeError::Degenerate);
                }
            }
            let p = a[k][k].clone();
            if p.is_positive() {
                pos += 1;
            } else {
                neg += 1;
            }
            for i in k + 1..n {
                if a[i][k].is_zero() {
                    continue;
                }
                let f = &a[i][k] / &p;
                for c in k..n {
                    let t = &f * &a[k][c];
                    a[i][c] -= t;
                }
                for row in a.iter_mut().skip(k) {
                    let t = &f * &row[k];
                    row[i] -= t;
                }
            }
        }
        Ok((pos, neg))
    }

    pub fn elementary_divisors(&self) -> Vec<BigInt> {
        smith_normal_form(&self.gram).divisors
    }

    pub fn is_2_elementary(&self) -> bool {
        self.is_nondegenerate() && self.elementary_divisors().iter().all(|d| *d == BigInt::one() || *d == 2.into())
    }

    /// The sublattice basis spanning the image of ℤⁿ modulo the radical:
    /// returns the induced nondegenerate lattice and the `r × n` coefficient
    /// matrix of its basis in the original basis.
    pub fn nondegenerate_quotient(&self) -> (Lattice, IntMatrix) {
        let hf = hermite_rows(&self.gram);
        let basis = hf.u.top_rows(hf.rank);
        let g = basis.mul(&self.gram).mul(&basis.transpose());
        (Lattice { gram: g, labels: None }, basis)
    }
}

impl fmt::Display for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.gram)
    }
}

#[derive(Serialize, Deserialize)]
struct LatticeRepr {
    labels: Option<Vec<String>>,
    gram: Vec<Vec<i64>>,
}

impl Serialize for Lattice {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let gram = self.gram.to_i64().map_err(serde::ser::Error::custom)?;
        LatticeRepr { labels: self.labels.clone(), gram }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Lattice {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = LatticeRepr::deserialize(d)?;
        let l = Lattice::from_i64(&r.gram).map_err(serde::de::Error::custom)?;
        match r.labels {
            Some(ls) => l.with_labels(ls).map_err(serde::de::Error::custom),
            None => Ok(l),
        }
    }
}

/// `L*/L` with its discriminant forms, from the Smith form of the Gram matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscriminantGroup {
    /// Invariant factors greater than 1.
    pub elementary_divisors: Vec<BigInt>,
    /// Dual vectors (coordinates in the lattice basis) generating the cyclic factors.
    pub generators: Vec<Vec<BigRational>>,
    /// `q(gᵢ)` in `[0, 2)`.
    pub q_values: Vec<BigRational>,
    /// `b(gᵢ, gⱼ)` in `[0, 1)`.
    pub b_matrix: Vec<Vec<BigRational>>,
}

impl DiscriminantGroup {
    pub fn order(&self) -> BigInt {
        self.elementary_divisors.iter().product()
    }

    pub fn is_2_elementary(&self) -> bool {
        self.elementary_divisors.iter().all(|d| *d == 2.into())
    }

    /// `b(x, x) ≡ 0` for every `x`: each `q(gᵢ)` is integral and each `2b(gᵢ, gⱼ)` too.
    pub fn is_alternating(&self) -> bool {
        let two = BigRational::from_integer(2.into());
        self.q_values.iter().all(|q| q.is_integer())
            && self.b_matrix.iter().all(|row| row.iter().all(|b| (b * &two).is_integer()))
    }

    /// `q(Σ cᵢ gᵢ)` modulo 2.
    pub fn q_of(&self, c: &[BigInt]) -> BigRational {
        let mut acc = BigRational::zero();
        for i in 0..c.len() {
            acc += rat(&(&c[i] * &c[i])) * &self.q_values[i];
            for j in 0..i {
                acc += rat(&(BigInt::from(2) * &c[i] * &c[j])) * &self.b_matrix[i][j];
            }
        }
        rat_mod(&acc, 2)
    }
}

pub fn discriminant_group(l: &Lattice) -> Result<DiscriminantGroup, LatticeError> {
    l.require_nondegenerate()?;
    if !l.is_even() {
        return Err(LatticeError::NotEven);
    }
    let s = smith_normal_form(&l.gram);
    let mut elementary_divisors = Vec::new();
    let mut generators = Vec::new();
    for (i, d) in s.divisors.iter().enumerate() {
        if d.is_one() {
            continue;
        }
        let dq = rat(d);
        generators.push((0..l.rank()).map(|r| rat(&s.v[(r, i)]) / &dq).collect::<Vec<_>>());
        elementary_divisors.push(d.clone());
    }
    let q_values = generators.iter().map(|g| rat_mod(&l.pair(g, g), 2)).collect();
    let b_matrix = generators
        .iter()
        .map(|x| generators.iter().map(|y| rat_mod(&l.pair(x, y), 1)).collect())
        .collect();
    Ok(DiscriminantGroup { elementary_divisors, generators, q_values, b_matrix })
}

pub fn is_2_elementary(l: &Lattice) -> bool {
    l.is_2_elementary()
}

/// Half the number of elementary divisors equal to 2.
pub fn artin_sigma(l: &Lattice) -> Result<usize, LatticeError> {
    if !l.is_2_elementary() {
        return Err(LatticeError::NotTwoElementary);
    }
    let twos = l.elementary_divisors().iter().filter(|d| **d == 2.into()).count();
    if twos % 2 == 1 {
        return Err(LatticeError::OddTwoRank(twos));
    }
    Ok(twos / 2)
}

/// `q_L` on `(ℤ/2)^{2σ}` as an F₂-valued form, in the coordinates of the
/// discriminant-group generators.
pub fn discriminant_form_f2(l: &Lattice) -> Result<F2QuadForm, LatticeError> {
    let dg = discriminant_group(l)?;
    if !dg.is_2_elementary() {
        return Err(LatticeError::NotTwoElementary);
    }
    if !dg.is_alternating() {
        return Err(LatticeError::NotAlternating);
    }
    let n = dg.generators.len();
    let bit = |x: &BigRational| -> u64 { x.to_integer().is_odd() as u64 };
    let two = BigRational::from_integer(2.into());
    let upper = (0..n)
        .map(|i| {
            let mut row = bit(&dg.q_values[i]) << i;
            for j in i + 1..n {
                row |= bit(&(&dg.b_matrix[i][j] * &two)) << j;
            }
            row
        })
        .collect();
    Ok(F2QuadForm::new(upper).expect("upper triangular"))
}

/// A subgroup of a 2-elementary discriminant group, spanned by F₂-vectors in
/// the coordinates of [`DiscriminantGroup::generators`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GlueGroup {
    pub generators: Vec<u64>,
}

fn lift(dg: &DiscriminantGroup, v: u64) -> Vec<BigRational> {
    let n = dg.generators.first().map_or(0, Vec::len);
    let mut x = vec![BigRational::zero(); n];
    for (i, g) in dg.generators.iter().enumerate() {
        if v >> i & 1 == 1 {
            for (xi, gi) in x.iter_mut().zip(g) {
                *xi += gi;
            }
        }
    }
    x
}

/// The even overlattice generated by `L` and lifts of the glue vectors.
pub fn overlattice_from_glue(l: &Lattice, h: &GlueGroup) -> Result<Lattice, LatticeError> {
    let dg = discriminant_group(l)?;
    if !dg.is_2_elementary() {
        return Err(LatticeError::NotTwoElementary);
    }
    let dim = dg.generators.len();
    if let Some(&v) = h.generators.iter().find(|&&v| dim < 64 && v >> dim != 0) {
        return Err(LatticeError::GlueOutOfRange(v));
    }
    let lifts: Vec<Vec<BigRational>> = h.generators.iter().map(|&v| lift(&dg, v)).collect();
    for (i, x) in lifts.iter().enumerate() {
        if !rat_mod(&l.pair(x, x), 2).is_zero() || lifts[..i].iter().any(|y| !rat_mod(&l.pair(x, y), 1).is_zero()) {
            return Err(LatticeError::NotTotallySingular);
        }
    }
    // all lifts have denominator dividing 2
    let n = l.rank();
    let mut rows: Vec<Vec<BigInt>> =
        (0..n).map(|i| (0..n).map(|j| BigInt::from(if i == j { 2 } else { 0 })).collect()).collect();
    for x in &lifts {
        rows.push(x.iter().map(|c| (c * BigRational::from_integer(2.into())).to_integer()).collect());
    }
    let hf = hermite_rows(&IntMatrix::from_rows(rows)?);
    let basis = hf.h.top_rows(hf.rank);
    let g = basis.mul(&l.gram).mul(&basis.transpose());
    let mut out = IntMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let (q, r) = g[(i, j)].div_rem(&BigInt::from(4));
            if !r.is_zero() {
                return Err(LatticeError::BadGlue);
            }
            out[(i, j)] = q;
        }
    }
    let res = Lattice::new(out)?;
    if !res.is_even() {
        return Err(LatticeError::BadGlue);
    }
    Ok(res)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::f2quad::{count_zeros, totally_singular_subspaces};

    fn d4() -> Lattice {
        root_lattice(RootKind::D(4), Sign::Negative).unwrap()
    }

    fn u_d4_5() -> Lattice {
        let mut parts = vec![hyperbolic_u()];
        parts.extend(std::iter::repeat_n(d4(), 5));
        direct_sum(&parts)
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn root_lattice_determinants() {
        assert_eq!(root_lattice(RootKind::A(1), Sign::Negative).unwrap().det(), BigInt::from(-2));
        assert_eq!(d4().det(), BigInt::from(4));
        assert_eq!(root_lattice(RootKind::E(8), Sign::Positive).unwrap().det(), BigInt::from(1));
        assert_eq!(root_lattice(RootKind::E(7), Sign::Positive).unwrap().det(), BigInt::from(2));
        assert_eq!(root_lattice(RootKind::E(6), Sign::Positive).unwrap().det(), BigInt::from(3));
        assert_eq!(root_lattice(RootKind::D(8), Sign::Positive).unwrap().det(), BigInt::from(4));
        assert_eq!(root_lattice(RootKind::A(4), Sign::Positive).unwrap().det(), BigInt::from(5));
        assert!(root_lattice(RootKind::D(3), Sign::Positive).is_err());
        assert!("E9".parse::<RootKind>().is_err());
        assert_eq!("d4".parse::<RootKind>().unwrap(), RootKind::D(4));
    }

    #[test]
    fn hyperbolic_plane() {
        let u = hyperbolic_u();
        assert_eq!(u.det(), BigInt::from(-1));
        assert!(u.is_even());
        assert_eq!(u.signature().unwrap(), (1, 1));
        assert_eq!(artin_sigma(&u).unwrap(), 0);
        assert_eq!(discriminant_form_f2(&u).unwrap().dim(), 0);
    }

    #[test]
    fn sums() {
        let l = u_d4_5();
        assert_eq!(l.rank(), 22);
        assert_eq!(l.det(), BigInt::from(-1024));
        assert_eq!(direct_sum(&[]).rank(), 0);
        let a1 = root_lattice(RootKind::A(1), Sign::Negative).unwrap();
        assert_eq!(direct_sum(&[a1.clone(), a1]).det(), BigInt::from(4));
    }

    #[test]
    fn smith_forms() {
        let a1 = root_lattice(RootKind::A(1), Sign::Negative).unwrap();
        assert_eq!(a1.elementary_divisors(), ints(&[2]));
        assert_eq!(d4().elementary_divisors(), ints(&[1, 1, 2, 2]));
        assert_eq!(hyperbolic_u().elementary_divisors(), ints(&[1, 1]));
        let m = IntMatrix::from_i64(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]).unwrap();
        let s = smith_normal_form(&m);
        assert_eq!(s.divisors, ints(&[2, 6, 12]));
        let d = s.u.mul(&m).mul(&s.v);
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(d[(i, j)], if i == j { s.divisors[i].clone() } else { BigInt::zero() });
            }
        }
    }

    #[test]
    fn discriminant_of_a1_is_not_alternating() {
        let a1 = root_lattice(RootKind::A(1), Sign::Negative).unwrap();
        let dg = discriminant_group(&a1).unwrap();
        assert_eq!(dg.elementary_divisors, ints(&[2]));
        assert_eq!(dg.q_values[0], BigRational::new(3.into(), 2.into()));
        assert!(!dg.is_alternating());
        assert_eq!(discriminant_form_f2(&a1), Err(LatticeError::NotAlternating));
    }

    #[test]
    fn discriminant_of_d4() {
        let dg = discriminant_group(&d4()).unwrap();
        assert_eq!(dg.elementary_divisors, ints(&[2, 2]));
        assert!(dg.is_alternating());
        let q = discriminant_form_f2(&d4()).unwrap();
        assert!(q.is_nondegenerate());
        assert_eq!(q.dim(), 2);
    }

    #[test]
    fn u_plus_five_d4() {
        let l = u_d4_5();
        assert!(l.is_2_elementary());
        assert_eq!(artin_sigma(&l).unwrap(), 5);
        assert_eq!(l.signature().unwrap(), (1, 21));
        let q = discriminant_form_f2(&l).unwrap();
        assert_eq!(q.dim(), 10);
        assert_eq!(count_zeros(&q).unwrap(), (1 << 9) - (1 << 4));
    }

    #[test]
    fn sigma_errors() {
        let a2 = root_lattice(RootKind::A(2), Sign::Negative).unwrap();
        assert!(!a2.is_2_elementary());
        assert_eq!(artin_sigma(&a2), Err(LatticeError::NotTwoElementary));
        let a1 = root_lattice(RootKind::A(1), Sign::Negative).unwrap();
        assert_eq!(artin_sigma(&a1), Err(LatticeError::OddTwoRank(1)));
    }

    #[test]
    fn gluing() {
        let l = u_d4_5();
        assert_eq!(overlattice_from_glue(&l, &GlueGroup::default()).unwrap().det(), l.det());
        let q = discriminant_form_f2(&l).unwrap();
        let line = &totally_singular_subspaces(&q, 1)[0];
        let l1 = overlattice_from_glue(&l, &GlueGroup { generators: line.clone() }).unwrap();
        assert_eq!(l1.det(), BigInt::from(-256));
        assert_eq!(artin_sigma(&l1).unwrap(), 4);
        let plane = &totally_singular_subspaces(&q, 2)[0];
        let l2 = overlattice_from_glue(&l, &GlueGroup { generators: plane.clone() }).unwrap();
        assert_eq!(l2.det(), BigInt::from(-64));
        assert_eq!(artin_sigma(&l2).unwrap(), 3);
        assert!(l2.is_even());
        let bad = (1u64..1 << 10).find(|&v| q.eval(v) == 1).unwrap();
        assert_eq!(overlattice_from_glue(&l, &GlueGroup { generators: vec![bad] }), Err(LatticeError::NotTotallySingular));
    }

    #[test]
    fn signature_of_degenerate_errors() {
        let l = Lattice::from_i64(&[vec![0, 0], vec![0, -2]]).unwrap();
        assert_eq!(l.signature(), Err(LatticeError::Degenerate));
        assert!(Lattice::from_i64(&[vec![0, 1], vec![0, 0]]).is_err());
    }

    #[test]
    fn quotient_by_radical() {
        // affine D̃4: rank 4, quotient isomorphic to D4
        let mut g = IntMatrix::zeros(5, 5);
        for i in 0..5 {
            g[(i, i)] = BigInt::from(-2);
        }
        for j in 1..5 {
            g[(0, j)] = BigInt::one();
            g[(j, 0)] = BigInt::one();
        }
        let l = Lattice::new(g).unwrap();
        assert_eq!(l.gram().rank(), 4);
        let (q, basis) = l.nondegenerate_quotient();
        assert_eq!(q.rank(), 4);
        assert_eq!(basis.nrows(), 4);
        assert_eq!(q.det(), BigInt::from(4));
        assert_eq!(q.signature().unwrap(), (0, 4));
    }

    #[test]
    fn json_shape() {
        let l = hyperbolic_u().with_labels(vec!["e".into(), "f".into()]).unwrap();
        let s = serde_json::to_string(&l).unwrap();
        assert_eq!(s, r#"{"labels":["e","f"],"gram":[[0,1],[1,0]]}"#);
        assert_eq!(serde_json::from_str::<Lattice>(&s).unwrap(), l);
    }
}
