//! The reproduction suite behind `kummer selftest`: ten numbered checks, each
//! recomputing a published value from scratch.

use num_bigint::BigInt;
use serde::Serialize;

use crate::curveconfig::{
    builtin_figure1, contraction_check_sec6, figure1_cycle16, figure1_cycle8, figure1_fibers_f, figure1_fibers_g,
    intersection_number, intersection_vector, is_fiber, lattice_generated_by, tjurina_a1_d4, trivial_lattice, Divisor,
    FiberType,
};
use crate::f2quad::{overlattice_count, standard_form, totally_singular_subspaces};
use crate::gf2k::{Colength, FieldSpec};
use crate::kummer::{
    artin_invariant, invariant_relation_check, point_count_formula, rational_points, tjurina_total_chart,
    verify_substitution, DeltaField, RelationMode,
};
use crate::lattice::artin_sigma;
use crate::liealg::{bracket, bracket_product, is_p_closed, p_map, LieElement, ProductLieElement};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub id: u8,
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

pub const CHECK_NAMES: [&str; 10] = [
    "overlattice closed form vs enumeration",
    "overlattice chain count",
    "rational point counts",
    "invariant ring relation",
    "tjurina numbers",
    "figure 1 lattice",
    "fiber recognition",
    "intersection checks on figure 1",
    "contraction checks",
    "restricted lie algebra",
];

/// Smallest `r ≥ 2σ` with the given residue modulo 8.
pub fn rank_for(sigma: u32, residue: u32) -> u32 {
    let mut r = residue;
    while r < 2 * sigma {
        r += 8;
    }
    r
}

fn check(id: u8, f: impl FnOnce() -> Result<String, String>) -> Check {
    let (pass, detail) = match f() {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    Check { id, name: CHECK_NAMES[id as usize - 1], pass, detail }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn overlattice_counts() -> Result<String, String> {
    for sigma in 1..=5 {
        for residue in [2, 6] {
            let r = rank_for(sigma, residue);
            let formula = overlattice_count(r, sigma).map_err(|e| e.to_string())?;
            let q = standard_form(sigma, residue).map_err(|e| e.to_string())?;
            let lines = totally_singular_subspaces(&q, 1).len() as u64;
            ensure(formula == lines, || format!("r={r} sigma={sigma}: formula {formula}, enumerated {lines}"))?;
        }
    }
    let n = overlattice_count(22, 3).map_err(|e| e.to_string())?;
    ensure(n == 27, || format!("n(22,3) = {n}"))?;
    Ok("10 (r, sigma) cases agree; n(22,3) = 27".into())
}

fn chain_count() -> Result<String, String> {
    let q = standard_form(3, 6).map_err(|e| e.to_string())?;
    let lines = totally_singular_subspaces(&q, 1);
    let planes = totally_singular_subspaces(&q, 2);
    ensure(planes.len() == 45, || format!("{} planes", planes.len()))?;
    let contains = |p: &[u64], l: u64| p.iter().fold(vec![0u64], |acc, &b| acc.iter().flat_map(|&x| [x, x ^ b]).collect()).contains(&l);
    let per_line: Vec<usize> = lines.iter().map(|l| planes.iter().filter(|p| contains(p, l[0])).count()).collect();
    let flags: usize = per_line.iter().sum();
    ensure(per_line.iter().all(|&c| c == 5), || format!("planes per line {per_line:?}"))?;
    ensure(lines.len() == 27 && flags == lines.len() * 5 && flags == planes.len() * 3, || format!("{flags} flags"))?;
    Ok(format!("{} lines, {} planes, {flags} flags", lines.len(), planes.len()))
}

/// The three coefficient sets over GF(16) realizing `m = 0, 1, 2`.
pub fn witnesses() -> Vec<(u32, DeltaField)> {
    let f: FieldSpec = "gf16:0x13".parse().expect("valid");
    let t = f.generator();
    // a primitive cube root of unity
    let omega = t.pow(5);
    let one = f.one();
    let zero = f.zero();
    vec![
        (0, DeltaField::new([one, one, zero, one, t, zero, one]).expect("faithful")),
        (1, DeltaField::new([one, one, zero, one, omega, zero, one]).expect("faithful")),
        (2, DeltaField::new([one, zero, zero, one, zero, zero, one]).expect("faithful")),
    ]
}

fn point_counts() -> Result<String, String> {
    let mut out = Vec::new();
    for (m, d) in witnesses() {
        let pts = rational_points(&d).map_err(|e| e.to_string())?;
        ensure(pts.m == m, || format!("expected m={m}, got {}", pts.m))?;
        let expected = point_count_formula(d.group_type(), d.lam2.is_zero(), m);
        ensure(pts.points.len() as u64 == expected, || format!("m={m}: {} points", pts.points.len()))?;
        for p in &pts.points {
            ensure(verify_substitution(&d, p).map_err(|e| e.to_string())?, || format!("substitution fails at {p:?}"))?;
        }
        let sigma = artin_invariant(&d).map_err(|e| e.to_string())?;
        ensure(sigma == 3 - m, || format!("sigma {sigma} for m={m}"))?;
        out.push(format!("m={m}: {} points, sigma={sigma}", pts.points.len()));
    }
    Ok(out.join("; "))
}

fn relation() -> Result<String, String> {
    let c = invariant_relation_check(RelationMode::Symbolic).map_err(|e| e.to_string())?;
    ensure(c.relation_vanishes, || "relation does not vanish".into())?;
    ensure(c.generators_invariant, || "generators are not invariant".into())?;
    Ok("relation vanishes identically over F2 in 9 variables; a, b, c invariant".into())
}

fn tjurina() -> Result<String, String> {
    let (a1, d4) = tjurina_a1_d4();
    ensure(a1 == 2 && d4 == 8, || format!("tau(A1)={a1}, tau(D4)={d4}"))?;
    let budget = 8 * a1 + d4;
    ensure(budget == 24, || format!("budget {budget}"))?;
    let f: FieldSpec = "gf16:0x13".parse().expect("valid");
    let samples: [[u32; 7]; 4] =
        [[1, 0, 0, 1, 0, 0, 1], [0x3, 0x7, 0x1, 0x9, 0x2, 0xe, 0x5], [0xf, 0x0, 0xa, 0x1, 0xb, 0x0, 0x2], [0x6, 0xd, 0x4, 0xc, 0x8, 0x3, 0xb]];
    for bits in samples {
        let d = DeltaField::from_bits(f, bits).map_err(|e| e.to_string())?;
        let t = tjurina_total_chart(&d).map_err(|e| e.to_string())?;
        ensure(t == Colength::Finite(32), || format!("chart total {t} at {bits:x?}"))?;
    }
    Ok(format!("A1=2, D4=8, budget=24, chart total=32 at {} coefficient sets", samples.len()))
}

fn figure1_lattice() -> Result<String, String> {
    let g = builtin_figure1();
    let l = lattice_generated_by(&g);
    ensure(l.rank() == 22, || format!("rank {}", l.rank()))?;
    ensure(l.det() == BigInt::from(-64), || format!("det {}", l.det()))?;
    let sigma = artin_sigma(&l).map_err(|e| e.to_string())?;
    ensure(sigma == 3, || format!("sigma {sigma}"))?;
    let t = trivial_lattice(&g, &figure1_fibers_f(), "C'1").map_err(|e| e.to_string())?;
    ensure(t.rank() == 22 && t.det() == BigInt::from(-1024), || format!("trivial lattice rank {} det {}", t.rank(), t.det()))?;
    // [P : L] = 2^{2+m} with 10 = 2σ + 2(2 + m)
    let m = (10 - 2 * sigma as i64) / 2 - 2;
    ensure(m == 0, || format!("m = {m}"))?;
    let ratio = t.det() / l.det();
    let index = BigInt::from(1) << (2 + m);
    ensure(ratio == &index * &index, || format!("det ratio {ratio}"))?;
    Ok("rank 22, det -2^6, sigma 3; trivial lattice rank 22, det -2^10; m = 0".into())
}

fn fibers() -> Result<String, String> {
    let g = builtin_figure1();
    for d in figure1_fibers_f().iter().chain(&figure1_fibers_g()) {
        let t = is_fiber(&g, d).map_err(|e| e.to_string())?;
        ensure(t == FiberType::IStar(0), || format!("{d} classified as {t}"))?;
    }
    let t16 = is_fiber(&g, &figure1_cycle16()).map_err(|e| e.to_string())?;
    ensure(t16 == FiberType::I(16), || format!("16-cycle is {t16}"))?;
    let t8 = is_fiber(&g, &figure1_cycle8()).map_err(|e| e.to_string())?;
    ensure(t8 == FiberType::I(8), || format!("8-cycle is {t8}"))?;
    Ok("10 fibers I0*, I16, I8".into())
}

fn sec4() -> Result<String, String> {
    let g = builtin_figure1();
    let n = intersection_number(&g, &figure1_fibers_f()[1], &figure1_fibers_g()[1]).map_err(|e| e.to_string())?;
    ensure(n == 2, || format!("intersection {n}"))?;
    let a: Divisor = "2C0-C1-C2-C3-C4".parse().map_err(|e: crate::curveconfig::CurveError| e.to_string())?;
    let b: Divisor = "2C'0-C'1-C'2-C'3-C'4".parse().map_err(|e: crate::curveconfig::CurveError| e.to_string())?;
    let (va, vb) = (intersection_vector(&g, &a).map_err(|e| e.to_string())?, intersection_vector(&g, &b).map_err(|e| e.to_string())?);
    ensure(va == vb, || "intersection vectors differ".into())?;
    Ok("fiber intersection 2; intersection vectors agree".into())
}

fn sec6() -> Result<String, String> {
    let r = contraction_check_sec6(&builtin_figure1()).map_err(|e| e.to_string())?;
    ensure(r.eight_disjoint, || "C1..C4, C'1..C'4 not disjoint".into())?;
    ensure(r.pass && r.contracted == 12, || format!("{r:?}"))?;
    Ok(format!("contracted {}, {}, tjurina total {}", r.contracted, r.ade, r.tjurina_total))
}

fn lie() -> Result<String, String> {
    let mut count = 0usize;
    for spec in ["gf2:0x3", "gf4:0x7"] {
        let f: FieldSpec = spec.parse().expect("valid");
        let all: Vec<LieElement> = LieElement::all(f).collect();
        for x in &all {
            if !x.is_zero() {
                let c = is_p_closed(x).map_err(|e| e.to_string())?;
                ensure(c == Some(x.lambda), || format!("{x:?} not closed with its own lambda"))?;
            }
            for c in f.elements() {
                ensure(p_map(&x.scale(c)) == p_map(x).scale(c * c), || format!("homogeneity fails at {x:?}"))?;
            }
            for y in &all {
                let px = p_map(x);
                ensure(bracket(&px, y) == bracket(x, &bracket(x, y)), || format!("[x^[2],y] fails at {x:?}, {y:?}"))?;
                ensure(p_map(&x.add(y)) == px.add(&p_map(y)).add(&bracket(x, y)), || format!("additivity fails at {x:?}, {y:?}"))?;
                count += 1;
                if x.is_zero() || y.is_zero() {
                    continue;
                }
                let pair = ProductLieElement::new(*x, *y);
                let closed = is_p_closed(&pair).map_err(|e| e.to_string())?;
                ensure(closed.is_some() == (x.lambda == y.lambda), || format!("product criterion fails at {pair:?}"))?;
                ensure(bracket_product(&pair, &pair).is_zero(), || "bracket not alternating".into())?;
            }
        }
    }
    Ok(format!("{count} pairs over GF(2) and GF(4)"))
}

pub fn run() -> Vec<Check> {
    vec![
        check(1, overlattice_counts),
        check(2, chain_count),
        check(3, point_counts),
        check(4, relation),
        check(5, tjurina),
        check(6, figure1_lattice),
        check(7, fibers),
        check(8, sec4),
        check(9, sec6),
        check(10, lie),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranks_for_residues() {
        assert_eq!(rank_for(3, 6), 6);
        assert_eq!(rank_for(5, 2), 10);
        assert_eq!(rank_for(5, 6), 14);
    }

    #[test]
    fn all_checks_pass() {
        for c in run() {
            assert!(c.pass, "check {} ({}) failed: {}", c.id, c.name, c.detail);
        }
    }
}
