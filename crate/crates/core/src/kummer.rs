//! The diagonal order-2 action on C×C given by a global vector field
//!
//! ```text
//! δ = (λ₄u⁴ + λ₂u² + λ₀)D_u + (μ₄v⁴ + μ₂v² + μ₀)D_v + τ(uD_u + vD_v)
//! ```
//!
//! where `u`, `v` here stand for the coordinates `u⁻¹`, `v⁻¹` at which the
//! action is expressed. Everything below is phrased in those coordinates, so
//! the one-variable data of each factor is
//! `P(u) = λ₄u⁴ + λ₂u² + τu + λ₀` and `Q(v) = μ₄v⁴ + μ₂v² + τv + μ₀`.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::gf2k::{
    additive_solve, ideal_colength, Colength, Embedding, FieldElement, FieldError, FieldSpec, MultiPoly, UniPoly,
    MAX_DEGREE,
};
use crate::liealg::{GroupType, LieElement, ProductLieElement};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KummerError {
    #[error("the action is not faithful on both factors (P or Q vanishes identically)")]
    NotFaithful,
    #[error("quotient is not normal: lambda4 and mu4 must both be nonzero")]
    NotNormal,
    #[error("P or Q does not split over {0}; retry over a larger field")]
    NotSplit(FieldSpec),
    #[error("solution counts did not certify over any extension of {0} up to degree 16")]
    Unstable(FieldSpec),
    #[error("the Artin invariant formula applies to mu2 actions only")]
    Alpha2,
    #[error("expected 7 comma-separated coefficients, got {0}")]
    Arity(usize),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// The seven coefficients of δ, all in one field.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct DeltaField {
    pub lam4: FieldElement,
    pub lam2: FieldElement,
    pub lam0: FieldElement,
    pub mu4: FieldElement,
    pub mu2: FieldElement,
    pub mu0: FieldElement,
    pub tau: FieldElement,
}

impl fmt::Debug for DeltaField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.coeffs();
        write!(f, "δ[{:?},{:?},{:?},{:?},{:?},{:?},{:?}]", c[0], c[1], c[2], c[3], c[4], c[5], c[6])
    }
}

impl DeltaField {
    /// Coefficients in the order `λ₄, λ₂, λ₀, μ₄, μ₂, μ₀, τ`.
    pub fn new(c: [FieldElement; 7]) -> Result<Self, KummerError> {
        let f = c[0].spec();
        if let Some(bad) = c.iter().find(|x| x.spec() != f) {
            return Err(FieldError::Mismatch(f, bad.spec()).into());
        }
        let d = Self { lam4: c[0], lam2: c[1], lam0: c[2], mu4: c[3], mu2: c[4], mu0: c[5], tau: c[6] };
        if d.p_poly().is_zero() || d.q_poly().is_zero() {
            return Err(KummerError::NotFaithful);
        }
        Ok(d)
    }

    pub fn from_bits(field: FieldSpec, bits: [u32; 7]) -> Result<Self, KummerError> {
        let mut c = [field.zero(); 7];
        for (slot, b) in c.iter_mut().zip(bits) {
            *slot = field.element(b)?;
        }
        Self::new(c)
    }

    /// Parses seven comma-separated hex literals.
    pub fn parse(field: FieldSpec, s: &str) -> Result<Self, KummerError> {
        let items: Vec<&str> = s.split(',').collect();
        if items.len() != 7 {
            return Err(KummerError::Arity(items.len()));
        }
        let mut c = [field.zero(); 7];
        for (slot, item) in c.iter_mut().zip(items) {
            *slot = field.parse_element(item)?;
        }
        Self::new(c)
    }

    pub fn coeffs(&self) -> [FieldElement; 7] {
        [self.lam4, self.lam2, self.lam0, self.mu4, self.mu2, self.mu0, self.tau]
    }

    pub fn field(&self) -> FieldSpec {
        self.tau.spec()
    }

    pub fn group_type(&self) -> GroupType {
        if self.tau.is_zero() {
            GroupType::Alpha2
        } else {
            GroupType::Mu2
        }
    }

    /// `P(u) = λ₄u⁴ + λ₂u² + τu + λ₀`.
    pub fn p_poly(&self) -> UniPoly {
        UniPoly::new(self.field(), vec![self.lam0, self.tau, self.lam2, self.field().zero(), self.lam4])
    }

    /// `Q(v) = μ₄v⁴ + μ₂v² + τv + μ₀`.
    pub fn q_poly(&self) -> UniPoly {
        UniPoly::new(self.field(), vec![self.mu0, self.tau, self.mu2, self.field().zero(), self.mu4])
    }

    /// δ as an element of 𝔤⊕𝔤: `((λ₄,λ₂,λ₀;τ), (μ₄,μ₂,μ₀;τ))`.
    pub fn as_lie(&self) -> ProductLieElement {
        ProductLieElement::new(
            LieElement::new([self.lam4, self.lam2, self.lam0], self.tau),
            LieElement::new([self.mu4, self.mu2, self.mu0], self.tau),
        )
    }

    pub fn embed(&self, e: &Embedding) -> Self {
        let c = self.coeffs().map(|x| e.apply(x));
        Self { lam4: c[0], lam2: c[1], lam0: c[2], mu4: c[3], mu2: c[4], mu0: c[5], tau: c[6] }
    }

    fn embed_into(&self, target: &FieldSpec) -> Result<Self, KummerError> {
        Ok(self.embed(&self.field().embedding_into(target)?))
    }
}

/// Fields GF(2^{jk}) for `j = 1, 2, …` with `jk ≤ 16`, starting at `base` itself.
pub fn extension_tower(base: FieldSpec) -> impl Iterator<Item = FieldSpec> {
    let k = base.degree();
    (1..=MAX_DEGREE / k).map(move |j| {
        if j == 1 {
            base
        } else {
            FieldSpec::default_for_degree(j * k).expect("degree within cap")
        }
    })
}

pub fn is_normal(d: &DeltaField) -> bool {
    !d.lam4.is_zero() && !d.mu4.is_zero()
}

/// One closed point of the fixed scheme: a root of P paired with a root of Q.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixedPoint {
    pub u: FieldElement,
    pub u_mult: usize,
    pub v: FieldElement,
    pub v_mult: usize,
}

impl FixedPoint {
    pub fn length(&self) -> usize {
        self.u_mult * self.v_mult
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixedScheme {
    pub field: FieldSpec,
    pub points: Vec<FixedPoint>,
}

impl FixedScheme {
    pub fn length(&self) -> usize {
        self.points.iter().map(FixedPoint::length).sum()
    }

    pub fn is_reduced(&self) -> bool {
        self.points.iter().all(|p| p.length() == 1)
    }
}

/// The fixed scheme `{P = 0} × {Q = 0}` over `field`, which must contain the
/// field of δ and split both P and Q.
pub fn fixed_scheme(d: &DeltaField, field: &FieldSpec) -> Result<FixedScheme, KummerError> {
    if !is_normal(d) {
        return Err(KummerError::NotNormal);
    }
    let e = d.embed_into(field)?;
    let (p, q) = (e.p_poly(), e.q_poly());
    let (pr, qr) = (p.roots()?, q.roots()?);
    let total = |r: &[(FieldElement, usize)]| r.iter().map(|x| x.1).sum::<usize>();
    if Some(total(&pr)) != p.degree() || Some(total(&qr)) != q.degree() {
        return Err(KummerError::NotSplit(*field));
    }
    let points = pr
        .iter()
        .flat_map(|&(u, um)| qr.iter().map(move |&(v, vm)| FixedPoint { u, u_mult: um, v, v_mult: vm }))
        .collect();
    Ok(FixedScheme { field: *field, points })
}

/// `dim k[u, v]/(P(u), Q(v)) = deg P · deg Q`, which needs no splitting field.
pub fn fixed_length(d: &DeltaField) -> Result<usize, KummerError> {
    if !is_normal(d) {
        return Err(KummerError::NotNormal);
    }
    Ok(d.p_poly().degree().unwrap_or(0) * d.q_poly().degree().unwrap_or(0))
}

/// [`fixed_scheme`] over the first field of the extension tower that splits P and Q.
pub fn fixed_scheme_split(d: &DeltaField) -> Result<FixedScheme, KummerError> {
    for f in extension_tower(d.field()) {
        match fixed_scheme(d, &f) {
            Err(KummerError::NotSplit(_)) => continue,
            other => return other,
        }
    }
    Err(KummerError::Unstable(d.field()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct RationalPoint {
    pub alpha: FieldElement,
    pub beta: FieldElement,
}

/// All solutions of
///
/// ```text
/// λ₄α⁴ + μ₄α = 0,   λ₂α² + μ₂α = 0,   λ₄β⁴ + λ₂β² + λ₀ + τβ = μ₀α
/// ```
///
/// over `field`, the first field of the extension tower in which every
/// polynomial involved splits. Counts there equal counts over the algebraic closure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RationalPoints {
    pub field: FieldSpec,
    pub alphas: Vec<FieldElement>,
    pub points: Vec<RationalPoint>,
    pub m: u32,
}

fn alpha_polynomial(d: &DeltaField) -> UniPoly {
    let f = d.field();
    let g1 = UniPoly::from_terms(f, &[(4, d.lam4), (1, d.mu4)]);
    let g2 = UniPoly::from_terms(f, &[(2, d.lam2), (1, d.mu2)]);
    g1.gcd(&g2)
}

fn beta_polynomial(d: &DeltaField, alpha: FieldElement) -> UniPoly {
    UniPoly::from_terms(d.field(), &[(4, d.lam4), (2, d.lam2), (1, d.tau), (0, d.lam0 + d.mu0 * alpha)])
}

/// Solves over one field; `None` when some polynomial fails to split there.
fn points_over(d: &DeltaField, field: &FieldSpec) -> Result<Option<RationalPoints>, KummerError> {
    let e = d.embed_into(field)?;
    let ga = alpha_polynomial(&e);
    if !ga.splits()? {
        return Ok(None);
    }
    let alphas: Vec<FieldElement> = ga.roots()?.into_iter().map(|r| r.0).collect();
    let mut points = Vec::new();
    for &alpha in &alphas {
        if !beta_polynomial(&e, alpha).splits()? {
            return Ok(None);
        }
        let c = e.lam0 + e.mu0 * alpha;
        for beta in additive_solve(e.lam4, e.lam2, e.tau, c)? {
            points.push(RationalPoint { alpha, beta });
        }
    }
    points.sort();
    let n = alphas.len();
    debug_assert!(n.is_power_of_two(), "α-solutions form an F₂-subspace");
    Ok(Some(RationalPoints { field: *field, m: n.trailing_zeros(), alphas, points }))
}

pub fn rational_points(d: &DeltaField) -> Result<RationalPoints, KummerError> {
    rational_points_from(d, &d.field())
}

/// Like [`rational_points`], but the search starts at `field`, which must contain
/// the coefficients. Results are reported over the first certified extension.
pub fn rational_points_from(d: &DeltaField, field: &FieldSpec) -> Result<RationalPoints, KummerError> {
    if !is_normal(d) {
        return Err(KummerError::NotNormal);
    }
    d.field().embedding_into(field)?;
    for f in extension_tower(*field) {
        if let Some(r) = points_over(d, &f)? {
            return Ok(r);
        }
    }
    Err(KummerError::Unstable(*field))
}

/// The substitution `u = αv + β` carries `P(u)D_u` to `αQ(v)D_v`, checked as a
/// polynomial identity `P(αv + β) = α·Q(v)`.
pub fn verify_substitution(d: &DeltaField, pt: &RationalPoint) -> Result<bool, KummerError> {
    let field = pt.alpha.spec();
    let e = d.embed_into(&field)?;
    let sub = UniPoly::new(field, vec![pt.beta, pt.alpha]);
    Ok(e.p_poly().compose(&sub) == e.q_poly().scale(pt.alpha))
}

/// `|Z_K(K)|` from the group type, whether `λ₂ = 0`, and `m`.
pub fn point_count_formula(group: GroupType, lam2_is_zero: bool, m: u32) -> u64 {
    match (group, lam2_is_zero) {
        (GroupType::Mu2, _) => 1 << (2 + m),
        (GroupType::Alpha2, false) => 1 << (1 + m),
        (GroupType::Alpha2, true) => 1 << m,
    }
}

/// σ = 3 − m, from the index relation `10 = 2σ + 2(2 + m)`.
pub fn artin_from_m(m: u32) -> u32 {
    assert!(m <= 2, "m ranges over 0..=2");
    (10 - 2 * (2 + m)) / 2
}

pub fn artin_invariant(d: &DeltaField) -> Result<u32, KummerError> {
    if !is_normal(d) {
        return Err(KummerError::NotNormal);
    }
    if d.group_type() == GroupType::Alpha2 {
        return Err(KummerError::Alpha2);
    }
    Ok(artin_from_m(rational_points(d)?.m))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum SingularityType {
    A1,
    D4,
    D8,
    Elliptic,
}

impl fmt::Display for SingularityType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SingularityCount {
    #[serde(rename = "type")]
    pub kind: SingularityType,
    pub count: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Singularities {
    pub list: Vec<SingularityCount>,
    pub k3: bool,
}

impl Singularities {
    /// `16A1+D4` style summary.
    pub fn summary(&self) -> String {
        self.list
            .iter()
            .map(|s| if s.count == 1 { s.kind.to_string() } else { format!("{}{}", s.count, s.kind) })
            .collect::<Vec<_>>()
            .join("+")
    }
}

/// Singularities of `(C×C)/G`. The quadruple point always contributes a D₄.
///
/// For α₂ the fixed points are pairs of roots of `P = (√λ₄u² + √λ₂u + √λ₀)²`
/// and `Q`: two double roots each when `λ₂, μ₂ ≠ 0` (four D₄ points), one
/// quadruple root on the side whose quadratic coefficient vanishes (two D₈
/// points), or a single point of length 16 (elliptic) when both vanish.
pub fn classify_singularities(d: &DeltaField) -> Result<Singularities, KummerError> {
    use SingularityType::*;
    if !is_normal(d) {
        return Err(KummerError::NotNormal);
    }
    let sc = |kind, count| SingularityCount { kind, count };
    let (list, k3) = match (d.group_type(), d.lam2.is_zero(), d.mu2.is_zero()) {
        (GroupType::Mu2, _, _) => (vec![sc(A1, 16), sc(D4, 1)], true),
        (GroupType::Alpha2, false, false) => (vec![sc(D4, 5)], true),
        (GroupType::Alpha2, true, true) => (vec![sc(Elliptic, 1), sc(D4, 1)], false),
        (GroupType::Alpha2, _, _) => (vec![sc(D8, 2), sc(D4, 1)], true),
    };
    Ok(Singularities { list, k3 })
}

/// Everything the toolkit derives from δ. Fields past `normal` are `None`
/// when the quotient is not normal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurfaceReport {
    pub group_type: GroupType,
    pub normal: bool,
    pub fixed_length: Option<usize>,
    pub m: Option<u32>,
    pub point_count: Option<u64>,
    pub artin_sigma: Option<u32>,
    pub singularities: Option<Vec<SingularityCount>>,
    pub k3: bool,
}

pub fn surface_report(d: &DeltaField) -> Result<SurfaceReport, KummerError> {
    let group_type = d.group_type();
    if !is_normal(d) {
        return Ok(SurfaceReport {
            group_type,
            normal: false,
            fixed_length: None,
            m: None,
            point_count: None,
            artin_sigma: None,
            singularities: None,
            k3: false,
        });
    }
    let fixed_length = fixed_length(d)?;
    let pts = rational_points(d)?;
    let sing = classify_singularities(d)?;
    let artin_sigma = (group_type == GroupType::Mu2).then(|| artin_from_m(pts.m));
    Ok(SurfaceReport {
        group_type,
        normal: true,
        fixed_length: Some(fixed_length),
        m: Some(pts.m),
        point_count: Some(pts.points.len() as u64),
        artin_sigma,
        singularities: Some(sing.list),
        k3: sing.k3,
    })
}

/// Where to evaluate the invariant-ring relation.
#[derive(Clone, Copy, Debug)]
pub enum RelationMode {
    /// Over F₂ with the seven coefficients as indeterminates.
    Symbolic,
    Specialized(DeltaField),
}

const COEFF_NAMES: [&str; 7] = ["l4", "l2", "l0", "m4", "m2", "m0", "t"];

/// The ring `k[u, v]` (plus coefficient indeterminates in symbolic mode), the
/// invariants `a = u², b = v²`, `c = τuv + (μ₄v⁴+μ₂v²+μ₀)u + (λ₄u⁴+λ₂u²+λ₀)v`
/// and the relation among them.
pub struct InvariantRing {
    mode: RelationMode,
    u: MultiPoly,
    v: MultiPoly,
    coeffs: [MultiPoly; 7],
}

/// `c² + τ²ab + (μ₄²b⁴ + μ₂²b² + μ₀²)a + (λ₄²a⁴ + λ₂²a² + λ₀²)b`, built in the
/// ring of its arguments.
pub fn relation_polynomial(a: &MultiPoly, b: &MultiPoly, c: &MultiPoly, k: &[MultiPoly; 7]) -> MultiPoly {
    let [l4, l2, l0, m4, m2, m0, t] = k;
    let sq = |p: &MultiPoly| p.pow(2);
    let qb = sq(m4).mul(&b.pow(4)).add(&sq(m2).mul(&b.pow(2))).add(&sq(m0));
    let pa = sq(l4).mul(&a.pow(4)).add(&sq(l2).mul(&a.pow(2))).add(&sq(l0));
    c.pow(2).add(&sq(t).mul(a).mul(b)).add(&qb.mul(a)).add(&pa.mul(b))
}

impl InvariantRing {
    pub fn new(mode: RelationMode) -> Result<Self, KummerError> {
        match mode {
            RelationMode::Symbolic => {
                let mut names = vec!["u", "v"];
                names.extend(COEFF_NAMES);
                let vars = MultiPoly::variables(FieldSpec::f2(), &names)?;
                let coeffs = std::array::from_fn(|i| vars[2 + i].clone());
                Ok(Self { mode, u: vars[0].clone(), v: vars[1].clone(), coeffs })
            }
            RelationMode::Specialized(d) => {
                let vars = MultiPoly::variables(d.field(), &["u", "v"])?;
                let coeffs = d.coeffs().map(|c| vars[0].constant_like(c));
                Ok(Self { mode, u: vars[0].clone(), v: vars[1].clone(), coeffs })
            }
        }
    }

    /// `[a, b, c]` as polynomials in `u, v`.
    pub fn generators(&self) -> [MultiPoly; 3] {
        let [l4, l2, l0, m4, m2, m0, t] = &self.coeffs;
        let (u, v) = (&self.u, &self.v);
        let p0 = l4.mul(&u.pow(4)).add(&l2.mul(&u.pow(2))).add(l0);
        let q0 = m4.mul(&v.pow(4)).add(&m2.mul(&v.pow(2))).add(m0);
        let c = t.mul(u).mul(v).add(&q0.mul(u)).add(&p0.mul(v));
        [u.pow(2), v.pow(2), c]
    }

    /// The relation as a polynomial in `a, b, c` (and the coefficient symbols in symbolic mode).
    pub fn relation(&self) -> Result<MultiPoly, KummerError> {
        let (field, mut names) = match self.mode {
            RelationMode::Symbolic => (FieldSpec::f2(), vec!["a", "b", "c"]),
            RelationMode::Specialized(d) => (d.field(), vec!["a", "b", "c"]),
        };
        let symbolic = matches!(self.mode, RelationMode::Symbolic);
        if symbolic {
            names.extend(COEFF_NAMES);
        }
        let vars = MultiPoly::variables(field, &names)?;
        let k: [MultiPoly; 7] = match self.mode {
            RelationMode::Symbolic => std::array::from_fn(|i| vars[3 + i].clone()),
            RelationMode::Specialized(d) => d.coeffs().map(|c| vars[0].constant_like(c)),
        };
        Ok(relation_polynomial(&vars[0], &vars[1], &vars[2], &k))
    }

    /// Substitutes the generators (and coefficient symbols) into a polynomial
    /// from the ring of [`Self::relation`].
    pub fn substitute(&self, rel: &MultiPoly) -> MultiPoly {
        let mut images: Vec<MultiPoly> = self.generators().to_vec();
        if matches!(self.mode, RelationMode::Symbolic) {
            images.extend(self.coeffs.iter().cloned());
        }
        rel.substitute(&images)
    }

    /// `δ(p) = P(u)∂p/∂u + Q(v)∂p/∂v`.
    pub fn derivation(&self, p: &MultiPoly) -> MultiPoly {
        let [l4, l2, l0, m4, m2, m0, t] = &self.coeffs;
        let (u, v) = (&self.u, &self.v);
        let pu = l4.mul(&u.pow(4)).add(&l2.mul(&u.pow(2))).add(l0).add(&t.mul(u));
        let qv = m4.mul(&v.pow(4)).add(&m2.mul(&v.pow(2))).add(m0).add(&t.mul(v));
        pu.mul(&p.partial(0)).add(&qv.mul(&p.partial(1)))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RelationCheck {
    pub relation_vanishes: bool,
    pub generators_invariant: bool,
}

impl RelationCheck {
    pub fn holds(&self) -> bool {
        self.relation_vanishes && self.generators_invariant
    }
}

pub fn check_relation(ring: &InvariantRing, rel: &MultiPoly) -> RelationCheck {
    RelationCheck {
        relation_vanishes: ring.substitute(rel).is_zero(),
        generators_invariant: ring.generators().iter().all(|g| ring.derivation(g).is_zero()),
    }
}

pub fn invariant_relation_check(mode: RelationMode) -> Result<RelationCheck, KummerError> {
    let ring = InvariantRing::new(mode)?;
    let rel = ring.relation()?;
    Ok(check_relation(&ring, &rel))
}

/// Colength of `(f, ∂f/∂a, ∂f/∂b, ∂f/∂c)` for the relation `f` of the μ₂
/// quotient, over the affine chart `k[a, b, c]`.
pub fn tjurina_total_chart(d: &DeltaField) -> Result<Colength, KummerError> {
    if !is_normal(d) {
        return Err(KummerError::NotNormal);
    }
    let vars = MultiPoly::variables(d.field(), &["a", "b", "c"])?;
    let k = d.coeffs().map(|c| vars[0].constant_like(c));
    let f = relation_polynomial(&vars[0], &vars[1], &vars[2], &k);
    let gens = vec![f.partial(0), f.partial(1), f.partial(2), f];
    Ok(ideal_colength(&gens)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf16() -> FieldSpec {
        "gf16:0x13".parse().unwrap()
    }

    fn delta(field: FieldSpec, bits: [u32; 7]) -> DeltaField {
        DeltaField::from_bits(field, bits).unwrap()
    }

    #[test]
    fn report_when_p_and_q_split_over_incompatible_fields() {
        // P has a cubic factor and Q a quadratic one: no field up to 2^16 splits both
        let d = delta(gf16(), [1, 1, 0, 1, 2, 0, 1]);
        assert!(matches!(fixed_scheme_split(&d), Err(KummerError::Unstable(_))));
        let r = surface_report(&d).unwrap();
        assert_eq!((r.fixed_length, r.m, r.point_count), (Some(16), Some(0), Some(4)));
    }

    #[test]
    fn normality() {
        let f = gf16();
        assert!(is_normal(&delta(f, [1, 0, 0, 1, 0, 0, 1])));
        assert!(!is_normal(&delta(f, [0, 1, 0, 1, 0, 0, 1])));
        assert!(!is_normal(&delta(f, [1, 0, 0, 0, 1, 0, 1])));
    }

    #[test]
    fn unfaithful_is_rejected() {
        assert_eq!(DeltaField::from_bits(gf16(), [0, 0, 0, 1, 0, 0, 0]), Err(KummerError::NotFaithful));
        assert_eq!(DeltaField::parse(gf16(), "1,0,0"), Err(KummerError::Arity(3)));
    }

    #[test]
    fn mu2_fixed_scheme_is_sixteen_reduced_points() {
        let d = delta(gf16(), [1, 0, 0, 1, 0, 0, 1]);
        let fs = fixed_scheme(&d, &gf16()).unwrap();
        assert_eq!(fs.points.len(), 16);
        assert!(fs.is_reduced());
        assert_eq!(fs.length(), 16);
    }

    #[test]
    fn alpha2_fixed_scheme_multiplicities() {
        let f = gf16();
        // P = u^4 + u^2 + 1 = (u^2 + u + 1)^2: two double roots (in GF(4) ⊂ GF(16))
        let d = delta(f, [1, 1, 1, 1, 1, 0, 0]);
        let fs = fixed_scheme_split(&d).unwrap();
        let pr = d.p_poly().embed(&f.embedding_into(&fs.field).unwrap()).roots().unwrap();
        assert_eq!(pr.iter().map(|r| r.1).collect::<Vec<_>>(), vec![2, 2]);
        assert_eq!(fs.length(), 16);
        assert_eq!(fs.points.len(), 4);
        // λ₂ = 0: P = u^4 + 1 = (u + 1)^4
        let d = delta(f, [1, 0, 1, 1, 1, 0, 0]);
        let fs = fixed_scheme_split(&d).unwrap();
        assert_eq!(fs.points.len(), 2);
        assert!(fs.points.iter().all(|p| p.u_mult == 4 && p.v_mult == 2));
        assert_eq!(fs.length(), 16);
    }

    #[test]
    fn fixed_scheme_reports_small_field() {
        // u^4 + u^2 + u has roots outside GF(16)
        let d = delta(gf16(), [1, 1, 0, 1, 0, 0, 1]);
        assert_eq!(fixed_scheme(&d, &gf16()), Err(KummerError::NotSplit(gf16())));
        assert_eq!(fixed_scheme_split(&d).unwrap().length(), 16);
    }

    #[test]
    fn point_counts_by_formula() {
        assert_eq!(point_count_formula(GroupType::Mu2, true, 2), 16);
        assert_eq!(point_count_formula(GroupType::Alpha2, false, 0), 2);
        assert_eq!(point_count_formula(GroupType::Alpha2, true, 0), 1);
    }

    #[test]
    fn artin_values() {
        assert_eq!(artin_from_m(0), 3);
        assert_eq!(artin_from_m(1), 2);
        assert_eq!(artin_from_m(2), 1);
        let d = delta(gf16(), [1, 1, 0, 1, 0, 0, 0]);
        assert_eq!(artin_invariant(&d), Err(KummerError::Alpha2));
    }

    #[test]
    fn singularity_tables() {
        let f = gf16();
        let s = classify_singularities(&delta(f, [1, 0, 0, 1, 0, 0, 1])).unwrap();
        assert_eq!(s.summary(), "16A1+D4");
        assert!(s.k3);
        let s = classify_singularities(&delta(f, [1, 0, 1, 1, 0, 1, 0])).unwrap();
        assert_eq!(s.summary(), "Elliptic+D4");
        assert!(!s.k3);
        let s = classify_singularities(&delta(f, [1, 1, 0, 1, 0, 1, 0])).unwrap();
        assert_eq!(s.summary(), "2D8+D4");
        let s = classify_singularities(&delta(f, [1, 1, 0, 1, 3, 1, 0])).unwrap();
        assert_eq!(s.summary(), "5D4");
        assert_eq!(classify_singularities(&delta(f, [0, 1, 0, 1, 0, 1, 1])), Err(KummerError::NotNormal));
    }

    #[test]
    fn relation_symbolic_and_specialized() {
        assert!(invariant_relation_check(RelationMode::Symbolic).unwrap().holds());
        let d = delta("gf4:0x7".parse().unwrap(), [1, 0, 0, 1, 0, 0, 1]);
        assert!(invariant_relation_check(RelationMode::Specialized(d)).unwrap().holds());
    }

    #[test]
    fn dropping_the_tau_term_breaks_the_relation() {
        let ring = InvariantRing::new(RelationMode::Symbolic).unwrap();
        let rel = ring.relation().unwrap();
        // exponent of τ²ab in [a, b, c, l4, l2, l0, m4, m2, m0, t]
        let e = vec![1, 1, 0, 0, 0, 0, 0, 0, 0, 2];
        assert!(rel.coeff(&e).is_one());
        let perturbed = rel.add(&rel.monomial_like(e, FieldSpec::f2().one()));
        let check = check_relation(&ring, &perturbed);
        assert!(!check.relation_vanishes);
        assert!(!check.holds());
    }

    #[test]
    fn tjurina_chart() {
        let d = delta(gf16(), [1, 0, 0, 1, 0, 0, 1]);
        assert_eq!(tjurina_total_chart(&d).unwrap(), Colength::Finite(32));
    }

    #[test]
    fn not_normal_report() {
        let d = delta(gf16(), [0, 1, 0, 1, 0, 0, 1]);
        let r = surface_report(&d).unwrap();
        assert!(!r.normal && !r.k3);
        assert_eq!(r.m, None);
        assert_eq!(r.singularities, None);
    }
}
