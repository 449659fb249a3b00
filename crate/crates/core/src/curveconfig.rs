//! Dual graphs of configurations of smooth rational curves on a surface,
//! fiber recognition, trivial lattices, and the checks run on the two
//! built-in configurations.
//!
//! Text format, one declaration per line (`#` starts a comment):
//!
//! ```text
//! curve E0            # self-intersection defaults to -2
//! curve F self=0
//! meet E0 E1          # intersection multiplicity defaults to 1
//! meet E0 F 2
//! ```

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::Serialize;
use thiserror::Error;

use crate::gf2k::{ideal_colength, Colength, FieldSpec, MultiPoly};
use crate::lattice::{direct_sum, hyperbolic_u, root_lattice, IntMatrix, Lattice, LatticeError, RootKind, Sign};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurveError {
    #[error("unknown curve `{0}`")]
    UnknownLabel(String),
    #[error("curve `{0}` declared twice")]
    DuplicateLabel(String),
    #[error("curve `{0}` cannot meet itself")]
    Loop(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("cannot parse divisor `{0}`")]
    BadDivisor(String),
    #[error("divisor is zero")]
    EmptyDivisor,
    #[error("support of the divisor is not connected")]
    Disconnected,
    #[error("{0} is not a recognized fiber")]
    NotFiber(String),
    #[error("section `{section}` meets fiber {fiber} with multiplicity {value}, expected 1")]
    Section { section: String, fiber: usize, value: i64 },
    #[error("fibers {0} and {1} are not disjoint")]
    FibersMeet(usize, usize),
    #[error("curves do not form an ADE configuration")]
    NotAde,
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CurveGraph {
    vertices: Vec<String>,
    index: HashMap<String, usize>,
    self_int: Vec<i64>,
    edges: BTreeMap<(usize, usize), u32>,
}

impl CurveGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_curve(&mut self, label: &str, self_int: i64) -> Result<(), CurveError> {
        if self.index.contains_key(label) {
            return Err(CurveError::DuplicateLabel(label.to_string()));
        }
        self.index.insert(label.to_string(), self.vertices.len());
        self.vertices.push(label.to_string());
        self.self_int.push(self_int);
        Ok(())
    }

    /// Adds `mult` to the intersection number of two distinct curves.
    pub fn add_meet(&mut self, a: &str, b: &str, mult: u32) -> Result<(), CurveError> {
        let (i, j) = (self.index_of(a)?, self.index_of(b)?);
        if i == j {
            return Err(CurveError::Loop(a.to_string()));
        }
        *self.edges.entry((i.min(j), i.max(j))).or_insert(0) += mult;
        Ok(())
    }

    pub fn index_of(&self, label: &str) -> Result<usize, CurveError> {
        self.index.get(label).copied().ok_or_else(|| CurveError::UnknownLabel(label.to_string()))
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn self_intersection(&self, label: &str) -> Result<i64, CurveError> {
        Ok(self.self_int[self.index_of(label)?])
    }

    /// Distinct meeting pairs.
    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = (&str, &str, u32)> + '_ {
        self.edges.iter().map(|(&(i, j), &m)| (self.vertices[i].as_str(), self.vertices[j].as_str(), m))
    }

    fn meet_idx(&self, i: usize, j: usize) -> i64 {
        if i == j {
            self.self_int[i]
        } else {
            self.edges.get(&(i.min(j), i.max(j))).copied().unwrap_or(0) as i64
        }
    }

    pub fn intersection(&self, a: &str, b: &str) -> Result<i64, CurveError> {
        Ok(self.meet_idx(self.index_of(a)?, self.index_of(b)?))
    }

    pub fn neighbors(&self, label: &str) -> Result<Vec<&str>, CurveError> {
        let i = self.index_of(label)?;
        Ok((0..self.len()).filter(|&j| j != i && self.meet_idx(i, j) != 0).map(|j| self.vertices[j].as_str()).collect())
    }

    pub fn degree(&self, label: &str) -> Result<usize, CurveError> {
        Ok(self.neighbors(label)?.len())
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (v, s) in self.vertices.iter().zip(&self.self_int) {
            if *s == -2 {
                out.push_str(&format!("curve {v}\n"));
            } else {
                out.push_str(&format!("curve {v} self={s}\n"));
            }
        }
        for (a, b, m) in self.edges() {
            if m == 1 {
                out.push_str(&format!("meet {a} {b}\n"));
            } else {
                out.push_str(&format!("meet {a} {b} {m}\n"));
            }
        }
        out
    }

    /// Induced subgraph on `labels`, in that order.
    pub fn induced(&self, labels: &[&str]) -> Result<CurveGraph, CurveError> {
        let mut g = CurveGraph::new();
        for l in labels {
            g.add_curve(l, self.self_intersection(l)?)?;
        }
        for (i, a) in labels.iter().enumerate() {
            for b in &labels[..i] {
                let m = self.intersection(a, b)?;
                if m != 0 {
                    g.add_meet(b, a, m as u32)?;
                }
            }
        }
        Ok(g)
    }

    fn is_connected_on(&self, idx: &[usize]) -> bool {
        let Some(&start) = idx.first() else {
            return true;
        };
        let set: BTreeSet<usize> = idx.iter().copied().collect();
        let mut seen = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for &w in &set {
                if !seen.contains(&w) && self.meet_idx(v, w) != 0 {
                    seen.insert(w);
                    stack.push(w);
                }
            }
        }
        seen.len() == set.len()
    }
}

impl FromStr for CurveGraph {
    type Err = CurveError;

    fn from_str(text: &str) -> Result<Self, CurveError> {
        let mut g = CurveGraph::new();
        for (n, raw) in text.lines().enumerate() {
            let line = n + 1;
            let perr = |msg: String| CurveError::Parse { line, msg };
            let body = raw.split('#').next().unwrap_or("").trim();
            let words: Vec<&str> = body.split_whitespace().collect();
            match words.as_slice() {
                [] => {}
                ["curve", label] => g.add_curve(label, -2)?,
                ["curve", label, opt] => {
                    let s = opt
                        .strip_prefix("self=")
                        .and_then(|v| v.parse().ok())
                        .ok_or_else(|| perr(format!("bad option `{opt}`")))?;
                    g.add_curve(label, s)?
                }
                ["meet", a, b] => g.add_meet(a, b, 1)?,
                ["meet", a, b, m] => {
                    let m: u32 = m.parse().ok().filter(|&m| m >= 1).ok_or_else(|| perr(format!("bad multiplicity `{m}`")))?;
                    g.add_meet(a, b, m)?
                }
                _ => return Err(perr(format!("cannot parse `{body}`"))),
            }
        }
        Ok(g)
    }
}

/// Integer combination of curves. Coefficients may be negative so that
/// differences of divisors can be intersected too.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Divisor {
    mult: BTreeMap<String, i64>,
}

impl Divisor {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_terms(terms: &[(&str, i64)]) -> Self {
        let mut d = Self::new();
        for &(l, m) in terms {
            d.add(l, m);
        }
        d
    }

    pub fn add(&mut self, label: &str, m: i64) {
        let e = self.mult.entry(label.to_string()).or_insert(0);
        *e += m;
        if *e == 0 {
            self.mult.remove(label);
        }
    }

    pub fn get(&self, label: &str) -> i64 {
        self.mult.get(label).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&str, i64)> {
        self.mult.iter().map(|(l, &m)| (l.as_str(), m))
    }

    pub fn support(&self) -> Vec<&str> {
        self.mult.keys().map(String::as_str).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.mult.is_empty()
    }

    pub fn is_effective(&self) -> bool {
        self.mult.values().all(|&m| m > 0)
    }

    pub fn scaled(&self, k: i64) -> Self {
        let mut d = Self::new();
        for (l, m) in self.terms() {
            d.add(l, k * m);
        }
        d
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut d = self.clone();
        for (l, m) in other.terms() {
            d.add(l, m);
        }
        d
    }
}

impl FromStr for Divisor {
    type Err = CurveError;

    /// `C0+2E0+E1`, `2C'0-C'1-C'2`, …
    fn from_str(s: &str) -> Result<Self, CurveError> {
        let bad = || CurveError::BadDivisor(s.to_string());
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad());
        }
        let mut d = Divisor::new();
        let mut rest = compact.as_str();
        while !rest.is_empty() {
            let sign = match rest.as_bytes()[0] {
                b'-' => -1,
                _ => 1,
            };
            rest = rest.strip_prefix(['+', '-']).unwrap_or(rest);
            let end = rest.find(['+', '-']).unwrap_or(rest.len());
            let term = &rest[..end];
            rest = &rest[end..];
            let split = term.find(|c: char| !c.is_ascii_digit()).ok_or_else(bad)?;
            let coeff: i64 = if split == 0 { 1 } else { term[..split].parse().map_err(|_| bad())? };
            let label = &term[split..];
            if label.is_empty() {
                return Err(bad());
            }
            d.add(label, sign * coeff);
        }
        Ok(d)
    }
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (l, m)) in self.terms().enumerate() {
            let sign = if m < 0 { "-" } else if n > 0 { "+" } else { "" };
            match m.abs() {
                1 => write!(f, "{sign}{l}")?,
                a => write!(f, "{sign}{a}{l}")?,
            }
        }
        Ok(())
    }
}

/// Kodaira symbol of a recognized fiber.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FiberType {
    I(u32),
    IStar(u32),
    Unrecognized,
}

impl fmt::Display for FiberType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FiberType::I(n) => write!(f, "I{n}"),
            FiberType::IStar(n) => write!(f, "I{n}*"),
            FiberType::Unrecognized => write!(f, "unrecognized"),
        }
    }
}

impl Serialize for FiberType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl FiberType {
    /// Root lattice of the components not meeting a section.
    pub fn root_kind(&self) -> Option<RootKind> {
        match *self {
            FiberType::I(n) if n >= 2 => Some(RootKind::A(n as usize - 1)),
            FiberType::IStar(n) => Some(RootKind::D(n as usize + 4)),
            _ => None,
        }
    }

    pub fn components(&self) -> Option<u32> {
        match *self {
            FiberType::I(n) => Some(n),
            FiberType::IStar(n) => Some(n + 5),
            FiberType::Unrecognized => None,
        }
    }
}

pub fn gram_from_graph(g: &CurveGraph) -> Lattice {
    let n = g.len();
    let mut m = IntMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] = BigInt::from(g.meet_idx(i, j));
        }
    }
    Lattice::new(m).expect("symmetric").with_labels(g.vertices.clone()).expect("label count")
}

/// The nondegenerate lattice spanned by the curves (modulo numerically
/// trivial combinations).
pub fn lattice_generated_by(g: &CurveGraph) -> Lattice {
    gram_from_graph(g).nondegenerate_quotient().0
}

fn vector_of(g: &CurveGraph, d: &Divisor) -> Result<Vec<i64>, CurveError> {
    let mut v = vec![0; g.len()];
    for (l, m) in d.terms() {
        v[g.index_of(l)?] += m;
    }
    Ok(v)
}

/// `(d·C)` for every curve `C`, in vertex order.
pub fn intersection_vector(g: &CurveGraph, d: &Divisor) -> Result<Vec<i64>, CurveError> {
    let v = vector_of(g, d)?;
    Ok((0..g.len()).map(|i| (0..g.len()).map(|j| v[j] * g.meet_idx(j, i)).sum()).collect())
}

pub fn intersection_number(g: &CurveGraph, d1: &Divisor, d2: &Divisor) -> Result<i64, CurveError> {
    let w = vector_of(g, d2)?;
    Ok(intersection_vector(g, d1)?.iter().zip(w).map(|(a, b)| a * b).sum())
}

/// Recognizes `d` as a Kodaira fiber from its multiplicities and the dual
/// graph of its support.
pub fn is_fiber(g: &CurveGraph, d: &Divisor) -> Result<FiberType, CurveError> {
    if d.is_zero() {
        return Err(CurveError::EmptyDivisor);
    }
    let idx: Vec<usize> = d.support().iter().map(|l| g.index_of(l)).collect::<Result<_, _>>()?;
    if !g.is_connected_on(&idx) {
        return Err(CurveError::Disconnected);
    }
    let iv = intersection_vector(g, d)?;
    if !d.is_effective() || idx.iter().any(|&i| iv[i] != 0) {
        return Ok(FiberType::Unrecognized);
    }
    let n = idx.len();
    let mults: Vec<i64> = d.support().iter().map(|l| d.get(l)).collect();
    let adj = |a: usize, b: usize| g.meet_idx(idx[a], idx[b]);
    let nbrs = |a: usize| (0..n).filter(move |&b| b != a && adj(a, b) != 0).collect::<Vec<_>>();
    let all_minus_two = idx.iter().all(|&i| g.self_int[i] == -2);

    if mults.iter().all(|&m| m == 1) {
        return Ok(match n {
            1 if g.self_int[idx[0]] == 0 => FiberType::I(1),
            2 if all_minus_two && adj(0, 1) == 2 => FiberType::I(2),
            _ if n >= 3 && all_minus_two && (0..n).all(|a| nbrs(a).len() == 2 && nbrs(a).iter().all(|&b| adj(a, b) == 1)) => {
                FiberType::I(n as u32)
            }
            _ => FiberType::Unrecognized,
        });
    }
    if !all_minus_two || n < 5 || mults.iter().any(|&m| m > 2) {
        return Ok(FiberType::Unrecognized);
    }
    if (0..n).any(|a| nbrs(a).iter().any(|&b| adj(a, b) != 1)) {
        return Ok(FiberType::Unrecognized);
    }
    let chain: Vec<usize> = (0..n).filter(|&a| mults[a] == 2).collect();
    let ends: Vec<usize> = (0..n).filter(|&a| mults[a] == 1).collect();
    if ends.len() != 4 || chain.len() != n - 4 {
        return Ok(FiberType::Unrecognized);
    }
    // reduced components are leaves hanging off the chain
    if ends.iter().any(|&e| nbrs(e).len() != 1 || mults[nbrs(e)[0]] != 2) {
        return Ok(FiberType::Unrecognized);
    }
    let chain_deg = |a: usize| nbrs(a).iter().filter(|&&b| mults[b] == 2).count();
    let leaves = |a: usize| nbrs(a).iter().filter(|&&b| mults[b] == 1).count();
    let ok = if chain.len() == 1 {
        leaves(chain[0]) == 4
    } else {
        let terminals: Vec<usize> = chain.iter().copied().filter(|&a| chain_deg(a) == 1).collect();
        terminals.len() == 2
            && chain.iter().all(|&a| chain_deg(a) <= 2)
            && terminals.iter().all(|&a| leaves(a) == 2)
            && chain.iter().filter(|a| !terminals.contains(a)).all(|&a| leaves(a) == 0)
    };
    Ok(if ok { FiberType::IStar(chain.len() as u32 - 1) } else { FiberType::Unrecognized })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrivialLattice {
    pub fibers: Vec<FiberType>,
    pub lattice: Lattice,
}

impl TrivialLattice {
    pub fn rank(&self) -> usize {
        self.lattice.rank()
    }

    pub fn det(&self) -> BigInt {
        self.lattice.det()
    }
}

/// `U ⊕ (root lattices of the fibers)`, after checking that the fibers are
/// disjoint and each is met once by the section.
pub fn trivial_lattice(g: &CurveGraph, fibers: &[Divisor], section: &str) -> Result<TrivialLattice, CurveError> {
    let s = Divisor::from_terms(&[(section, 1)]);
    let mut types = Vec::new();
    for (k, f) in fibers.iter().enumerate() {
        let t = is_fiber(g, f)?;
        if t == FiberType::Unrecognized {
            return Err(CurveError::NotFiber(f.to_string()));
        }
        let value = intersection_number(g, &s, f)?;
        if value != 1 || f.get(section) != 0 {
            return Err(CurveError::Section { section: section.to_string(), fiber: k, value });
        }
        for (j, other) in fibers[..k].iter().enumerate() {
            let shared = f.support().iter().any(|l| other.get(l) != 0);
            if shared || intersection_number(g, f, other)? != 0 {
                return Err(CurveError::FibersMeet(j, k));
            }
        }
        types.push(t);
    }
    let mut parts = vec![hyperbolic_u()];
    for t in &types {
        if let Some(kind) = t.root_kind() {
            parts.push(root_lattice(kind, Sign::Negative)?);
        }
    }
    Ok(TrivialLattice { fibers: types, lattice: direct_sum(&parts) })
}

/// ADE type of the configuration spanned by `labels`, e.g. `16A1+D4`.
pub fn ade_type(g: &CurveGraph, labels: &[&str]) -> Result<Vec<(RootKind, usize)>, CurveError> {
    let sub = g.induced(labels)?;
    if sub.self_int.iter().any(|&s| s != -2) || sub.edges.values().any(|&m| m != 1) {
        return Err(CurveError::NotAde);
    }
    let n = sub.len();
    let mut seen = vec![false; n];
    let mut counts: BTreeMap<(u8, usize), usize> = BTreeMap::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut comp = vec![start];
        seen[start] = true;
        let mut k = 0;
        while k < comp.len() {
            let v = comp[k];
            for w in 0..n {
                if !seen[w] && sub.meet_idx(v, w) != 0 {
                    seen[w] = true;
                    comp.push(w);
                }
            }
            k += 1;
        }
        let kind = dynkin_type(&sub, &comp).ok_or(CurveError::NotAde)?;
        let key = match kind {
            RootKind::A(r) => (0, r),
            RootKind::D(r) => (1, r),
            RootKind::E(r) => (2, r),
        };
        *counts.entry(key).or_insert(0) += 1;
    }
    Ok(counts
        .into_iter()
        .map(|((t, r), c)| (if t == 0 { RootKind::A(r) } else if t == 1 { RootKind::D(r) } else { RootKind::E(r) }, c))
        .collect())
}

pub fn ade_string(types: &[(RootKind, usize)]) -> String {
    types
        .iter()
        .map(|(k, c)| if *c == 1 { k.to_string() } else { format!("{c}{k}") })
        .collect::<Vec<_>>()
        .join("+")
}

fn dynkin_type(g: &CurveGraph, comp: &[usize]) -> Option<RootKind> {
    let n = comp.len();
    let edges = comp.iter().enumerate().flat_map(|(a, &i)| comp[..a].iter().filter(move |&&j| g.meet_idx(i, j) != 0)).count();
    if edges != n - 1 {
        return None;
    }
    let deg = |i: usize| comp.iter().filter(|&&j| j != i && g.meet_idx(i, j) != 0).count();
    let branches: Vec<usize> = comp.iter().copied().filter(|&i| deg(i) >= 3).collect();
    match branches.as_slice() {
        [] => Some(RootKind::A(n)),
        [b] if deg(*b) == 3 => {
            // arm lengths from the branch vertex
            let mut arms: Vec<usize> = comp
                .iter()
                .copied()
                .filter(|&j| j != *b && g.meet_idx(*b, j) != 0)
                .map(|first| {
                    let (mut prev, mut cur, mut len) = (*b, first, 1);
                    loop {
                        let next = comp.iter().copied().find(|&j| j != prev && j != cur && g.meet_idx(cur, j) != 0);
                        match next {
                            Some(nx) => {
                                prev = cur;
                                cur = nx;
                                len += 1;
                            }
                            None => break len,
                        }
                    }
                })
                .collect();
            arms.sort();
            match arms.as_slice() {
                [1, 1, _] => Some(RootKind::D(n)),
                [1, 2, 2] | [1, 2, 3] | [1, 2, 4] => Some(RootKind::E(n)),
                _ => None,
            }
        }
        _ => None,
    }
}

fn c(i: usize) -> String {
    format!("C{i}")
}

fn cp(j: usize) -> String {
    format!("C'{j}")
}

fn e(i: usize, j: usize) -> String {
    format!("E{i}{j}")
}

fn build(vertices: &[String], edges: &[(String, String)]) -> CurveGraph {
    let mut g = CurveGraph::new();
    for v in vertices {
        g.add_curve(v, -2).expect("distinct labels");
    }
    for (a, b) in edges {
        g.add_meet(a, b, 1).expect("known labels");
    }
    g
}

/// The thirty curves `E_ij`, `E₀..E₃`, `C₀..C₄`, `C′₀..C′₄` and their 45 meetings.
pub fn builtin_figure1() -> CurveGraph {
    let mut v: Vec<String> = (0..=4).map(c).chain((0..=4).map(cp)).chain((0..=3).map(|k| format!("E{k}"))).collect();
    v.extend((1..=4).flat_map(|i| (1..=4).map(move |j| e(i, j))));
    let mut ed: Vec<(String, String)> = (1..=3).map(|k| ("E0".to_string(), format!("E{k}"))).collect();
    ed.push(("E0".into(), c(0)));
    ed.push(("E0".into(), cp(0)));
    for k in 1..=4 {
        ed.push((c(0), cp(k)));
        ed.push((cp(0), c(k)));
    }
    for i in 1..=4 {
        for j in 1..=4 {
            ed.push((c(i), e(i, j)));
            ed.push((cp(j), e(i, j)));
        }
    }
    build(&v, &ed)
}

const FIGURE2_EDGES: [(&str, &str); 29] = [
    ("E11", "E12"),
    ("E12", "C1"),
    ("C1", "E13"),
    ("E13", "E14"),
    ("C'1", "C0"),
    ("C0", "C'4"),
    ("C1", "C'0"),
    ("C'0", "C4"),
    ("C0", "E0"),
    ("E0", "C'0"),
    ("E41", "E42"),
    ("E42", "C4"),
    ("C4", "E43"),
    ("E43", "E44"),
    ("E11", "E21"),
    ("E21", "C'1"),
    ("C'1", "E31"),
    ("E31", "E41"),
    ("E11", "E22"),
    ("E41", "E32"),
    ("E44", "E33"),
    ("E14", "E23"),
    ("E14", "E24"),
    ("E24", "C'4"),
    ("C'4", "E34"),
    ("E34", "E44"),
    ("E1", "E0"),
    ("E0", "E2"),
    ("E0", "E3"),
];

/// The twenty-six curve configuration. Its sixteen unnamed exceptional curves
/// are labelled `E_ij` by their grid position in the drawing: row `i` from the
/// top, column `j` from the left.
pub fn builtin_figure2() -> CurveGraph {
    let mut v: Vec<String> = ["C1", "C4", "C0", "C'0", "C'1", "C'4"].iter().map(|s| s.to_string()).collect();
    v.extend((1..=4).flat_map(|i| (1..=4).map(move |j| e(i, j))));
    v.extend((0..=3).map(|k| format!("E{k}")));
    let ed: Vec<(String, String)> = FIGURE2_EDGES.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
    build(&v, &ed)
}

/// The five fibers `C₀ + 2E₀ + E₁ + E₂ + E₃` and `2Cᵢ + Σⱼ E_ij` of the first fibration.
pub fn figure1_fibers_f() -> Vec<Divisor> {
    let mut out = vec!["C0+2E0+E1+E2+E3".parse().expect("valid")];
    for i in 1..=4 {
        let mut d = Divisor::from_terms(&[(&c(i), 2)]);
        for j in 1..=4 {
            d.add(&e(i, j), 1);
        }
        out.push(d);
    }
    out
}

/// The five fibers `C′₀ + 2E₀ + E₁ + E₂ + E₃` and `2C′ⱼ + Σᵢ E_ij` of the second fibration.
pub fn figure1_fibers_g() -> Vec<Divisor> {
    let mut out = vec!["C'0+2E0+E1+E2+E3".parse().expect("valid")];
    for j in 1..=4 {
        let mut d = Divisor::from_terms(&[(&cp(j), 2)]);
        for i in 1..=4 {
            d.add(&e(i, j), 1);
        }
        out.push(d);
    }
    out
}

/// The sixteen-curve cycle `C₁–E₁₁–C′₁–E₄₁–C₄–E₄₂–C′₂–E₂₂–C₂–E₂₃–C′₃–E₃₃–C₃–E₃₄–C′₄–E₁₄`.
pub fn figure1_cycle16() -> Divisor {
    "C1+E11+C'1+E41+C4+E42+C'2+E22+C2+E23+C'3+E33+C3+E34+C'4+E14".parse().expect("valid")
}

/// The eight-curve cycle `C₁–E₁₃–C′₃–E₄₃–C₄–E₄₂–C′₂–E₁₂`.
pub fn figure1_cycle8() -> Divisor {
    "C1+E13+C'3+E43+C4+E42+C'2+E12".parse().expect("valid")
}

/// Tjurina number of a hypersurface germ `f ∈ F₂[x, y, z]`, computed as a
/// global colength, so `f` should have a single singular point.
fn tjurina(f: &MultiPoly) -> Colength {
    let gens = vec![f.clone(), f.partial(0), f.partial(1), f.partial(2)];
    ideal_colength(&gens).expect("three variables")
}

/// `(τ(A₁), τ(D₄))` for `z² + xy` and `z² + x²y + xy²`.
pub fn tjurina_a1_d4() -> (u64, u64) {
    let v = MultiPoly::variables(FieldSpec::f2(), &["x", "y", "z"]).expect("three variables");
    let (x, y, z) = (&v[0], &v[1], &v[2]);
    let a1 = z.pow(2).add(&x.mul(y));
    let d4 = z.pow(2).add(&x.pow(2).mul(y)).add(&x.mul(&y.pow(2)));
    match (tjurina(&a1), tjurina(&d4)) {
        (Colength::Finite(a), Colength::Finite(d)) => (a, d),
        _ => unreachable!("isolated singularities"),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ContractionReport {
    pub eight_disjoint: bool,
    pub star_is_d4: bool,
    pub star_disjoint_from_eight: bool,
    pub contracted: usize,
    pub ade: String,
    pub tjurina_total: u64,
    pub pass: bool,
}

/// Checks that `C₁..C₄, C′₁..C′₄` are disjoint (−2)-curves and `E₀..E₃` a D₄
/// star away from them, then totals the Tjurina numbers of the contraction.
pub fn contraction_check_sec6(g: &CurveGraph) -> Result<ContractionReport, CurveError> {
    let eight: Vec<String> = (1..=4).map(c).chain((1..=4).map(cp)).collect();
    let star: Vec<String> = (0..=3).map(|k| format!("E{k}")).collect();
    let mut eight_disjoint = true;
    for (a, x) in eight.iter().enumerate() {
        eight_disjoint &= g.self_intersection(x)? == -2;
        for y in &eight[..a] {
            eight_disjoint &= g.intersection(x, y)? == 0;
        }
    }
    let star_refs: Vec<&str> = star.iter().map(String::as_str).collect();
    let star_is_d4 = matches!(ade_type(g, &star_refs).as_deref(), Ok([(RootKind::D(4), 1)]));
    let mut star_disjoint_from_eight = true;
    for x in &eight {
        for y in &star {
            star_disjoint_from_eight &= g.intersection(x, y)? == 0;
        }
    }
    let all: Vec<&str> = eight.iter().chain(&star).map(String::as_str).collect();
    let ade = ade_type(g, &all).map(|t| ade_string(&t)).unwrap_or_else(|_| "not ADE".into());
    let (ta1, td4) = tjurina_a1_d4();
    let tjurina_total = 8 * ta1 + td4;
    let pass = eight_disjoint && star_is_d4 && star_disjoint_from_eight;
    Ok(ContractionReport {
        eight_disjoint,
        star_is_d4,
        star_disjoint_from_eight,
        contracted: all.len(),
        ade,
        tjurina_total,
        pass,
    })
}

/// Bounds for a fibration whose fibers include an `I₁₆` and an `I_n*` with
/// `s = n + 5` components on a surface of Picard number `rho`: the trivial
/// lattice has rank `≥ 15 + (s − 1) + 2 = s + 16 ≤ rho`. Returns `(max s, max n)`.
pub fn sec6_fiber_bound(rho: u32) -> Option<(u32, u32)> {
    let s = rho.checked_sub(16)?;
    Some((s, s.checked_sub(5)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn figure1_shape() {
        let g = builtin_figure1();
        assert_eq!(g.len(), 30);
        assert_eq!(g.num_edges(), 45);
        for i in 1..=4 {
            for j in 1..=4 {
                assert_eq!(g.neighbors(&e(i, j)).unwrap(), vec![c(i).as_str(), cp(j).as_str()]);
            }
        }
    }

    #[test]
    fn figure2_shape() {
        let g = builtin_figure2();
        assert_eq!(g.len(), 26);
        assert_eq!(g.num_edges(), 29);
        let mut star = g.neighbors("E0").unwrap();
        star.sort();
        assert_eq!(star, vec!["C'0", "C0", "E1", "E2", "E3"]);
    }

    #[test]
    fn text_round_trip() {
        let g = builtin_figure2();
        let back: CurveGraph = g.to_text().parse().unwrap();
        assert_eq!(back, g);
        let h: CurveGraph = "curve A\ncurve B self=0 # fiber\nmeet A B 2\n".parse().unwrap();
        assert_eq!(h.intersection("A", "B").unwrap(), 2);
        assert_eq!(h.self_intersection("B").unwrap(), 0);
        assert!(matches!("curve A\nmeet A A".parse::<CurveGraph>(), Err(CurveError::Loop(_))));
        assert!(matches!("bogus".parse::<CurveGraph>(), Err(CurveError::Parse { line: 1, .. })));
        assert!(matches!("meet A B".parse::<CurveGraph>(), Err(CurveError::UnknownLabel(_))));
    }

    #[test]
    fn small_grams() {
        let one: CurveGraph = "curve A".parse().unwrap();
        assert_eq!(gram_from_graph(&one).det(), BigInt::from(-2));
        let two: CurveGraph = "curve A\ncurve B".parse().unwrap();
        assert_eq!(gram_from_graph(&two).gram().to_i64().unwrap(), vec![vec![-2, 0], vec![0, -2]]);
        assert_eq!(lattice_generated_by(&one).det(), BigInt::from(-2));
    }

    #[test]
    fn divisor_parsing() {
        let d: Divisor = "2C'0 - C'1 + E11".parse().unwrap();
        assert_eq!(d.get("C'0"), 2);
        assert_eq!(d.get("C'1"), -1);
        assert_eq!(d.to_string(), "2C'0-C'1+E11");
        assert!("3".parse::<Divisor>().is_err());
        assert!("".parse::<Divisor>().is_err());
    }

    #[test]
    fn fibers_on_figure1() {
        let g = builtin_figure1();
        for f in figure1_fibers_f().iter().chain(&figure1_fibers_g()) {
            assert_eq!(is_fiber(&g, f).unwrap(), FiberType::IStar(0), "{f}");
        }
        assert_eq!(is_fiber(&g, &figure1_cycle16()).unwrap(), FiberType::I(16));
        assert_eq!(is_fiber(&g, &figure1_cycle8()).unwrap(), FiberType::I(8));
        let not: Divisor = "C0+E0+E1+E2+E3".parse().unwrap();
        assert_eq!(is_fiber(&g, &not).unwrap(), FiberType::Unrecognized);
        assert_eq!(is_fiber(&g, &Divisor::new()), Err(CurveError::EmptyDivisor));
        assert_eq!(is_fiber(&g, &"C1+C2".parse().unwrap()), Err(CurveError::Disconnected));
    }

    #[test]
    fn i_n_star_with_chain() {
        // D̃5: chain a-b of multiplicity 2 with two leaves at each end
        let g: CurveGraph = "curve a\ncurve b\ncurve p\ncurve q\ncurve r\ncurve s\nmeet a b\nmeet a p\nmeet a q\nmeet b r\nmeet b s"
            .parse()
            .unwrap();
        let d: Divisor = "2a+2b+p+q+r+s".parse().unwrap();
        assert_eq!(is_fiber(&g, &d).unwrap(), FiberType::IStar(1));
        let two: CurveGraph = "curve a\ncurve b\nmeet a b 2".parse().unwrap();
        assert_eq!(is_fiber(&two, &"a+b".parse().unwrap()).unwrap(), FiberType::I(2));
    }

    #[test]
    fn sec4_numbers() {
        let g = builtin_figure1();
        let f1 = &figure1_fibers_f()[1];
        let g1 = &figure1_fibers_g()[1];
        assert_eq!(intersection_number(&g, f1, g1).unwrap(), 2);
        assert_eq!(intersection_number(&g, f1, f1).unwrap(), 0);
        assert_eq!(intersection_number(&g, f1, &figure1_fibers_f()[2]).unwrap(), 0);
        let a: Divisor = "2C0-C1-C2-C3-C4".parse().unwrap();
        let b: Divisor = "2C'0-C'1-C'2-C'3-C'4".parse().unwrap();
        assert_eq!(intersection_vector(&g, &a).unwrap(), intersection_vector(&g, &b).unwrap());
        assert!(intersection_vector(&g, &Divisor::new()).unwrap().iter().all(|&x| x == 0));
    }

    #[test]
    fn trivial_lattices() {
        let g = builtin_figure1();
        let t = trivial_lattice(&g, &figure1_fibers_f(), "C'1").unwrap();
        assert_eq!(t.rank(), 22);
        assert_eq!(t.det(), BigInt::from(-1024));
        let one = trivial_lattice(&g, &figure1_fibers_f()[..1], "C'1").unwrap();
        assert_eq!(one.det(), BigInt::from(-4));
        assert!(matches!(trivial_lattice(&g, &figure1_fibers_f(), "C1"), Err(CurveError::Section { .. })));
    }

    #[test]
    fn sec6_contraction() {
        let g = builtin_figure1();
        let r = contraction_check_sec6(&g).unwrap();
        assert!(r.pass);
        assert_eq!(r.contracted, 12);
        assert_eq!(r.tjurina_total, 24);
        assert_eq!(r.ade, "8A1+D4");
        let mut bad = g.clone();
        bad.add_meet("C1", "C2", 1).unwrap();
        let r = contraction_check_sec6(&bad).unwrap();
        assert!(!r.pass && !r.eight_disjoint);
        assert_eq!(sec6_fiber_bound(22), Some((6, 1)));
    }

    #[test]
    fn white_vertices_are_16a1_d4() {
        let g = builtin_figure1();
        let mut white: Vec<String> = (1..=4).flat_map(|i| (1..=4).map(move |j| e(i, j))).collect();
        white.extend((0..=3).map(|k| format!("E{k}")));
        let refs: Vec<&str> = white.iter().map(String::as_str).collect();
        assert_eq!(ade_string(&ade_type(&g, &refs).unwrap()), "16A1+D4");
    }

    #[test]
    fn ade_shapes() {
        let e8 = root_lattice_graph(RootKind::E(8));
        let all: Vec<&str> = e8.vertices().iter().map(String::as_str).collect();
        assert_eq!(ade_type(&e8, &all).unwrap(), vec![(RootKind::E(8), 1)]);
        let d6 = root_lattice_graph(RootKind::D(6));
        let all: Vec<&str> = d6.vertices().iter().map(String::as_str).collect();
        assert_eq!(ade_type(&d6, &all).unwrap(), vec![(RootKind::D(6), 1)]);
    }

    fn root_lattice_graph(k: RootKind) -> CurveGraph {
        let mut g = CurveGraph::new();
        for i in 0..k.rank() {
            g.add_curve(&format!("v{i}"), -2).unwrap();
        }
        for (a, b) in k.edges() {
            g.add_meet(&format!("v{a}"), &format!("v{b}"), 1).unwrap();
        }
        g
    }
}
