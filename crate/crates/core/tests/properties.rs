use num_bigint::BigInt;
use num_traits::Signed;
use proptest::prelude::*;

use kummer_core::f2quad::{self, F2QuadForm};
use kummer_core::gf2k::{FieldSpec, UniPoly};
use kummer_core::lattice::{self, GlueGroup, IntMatrix, Lattice, RootKind, Sign};

fn field(k: u32) -> FieldSpec {
    FieldSpec::default_for_degree(k).unwrap()
}

fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..5, 1usize..5).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-6i64..7, c), r))
}

fn u_d4_5() -> Lattice {
    let d4 = lattice::root_lattice("D4".parse::<RootKind>().unwrap(), Sign::Negative).unwrap();
    let mut parts = vec![lattice::hyperbolic_u()];
    parts.extend(std::iter::repeat_n(d4, 5));
    lattice::direct_sum(&parts)
}

proptest! {
    #[test]
    fn field_axioms(k in 1u32..=16, a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
        let f = field(k);
        let mask = (f.order() - 1) as u32;
        let [a, b, c] = [a, b, c].map(|x| f.element(x & mask).unwrap());
        prop_assert_eq!((a * b) * c, a * (b * c));
        prop_assert_eq!(a * (b + c), a * b + a * c);
        prop_assert_eq!((a + b).square(), a.square() + b.square());
        prop_assert_eq!(a.sqrt().square(), a);
        prop_assert_eq!(a.pow(f.order()), a);
        if !a.is_zero() {
            prop_assert!((a * a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn embedding_is_a_ring_map(a in 0u32..16, b in 0u32..16) {
        let (small, big) = (field(4), field(8));
        let e = small.embedding_into(&big).unwrap();
        let (a, b) = (small.element(a).unwrap(), small.element(b).unwrap());
        prop_assert_eq!(e.apply(a * b), e.apply(a) * e.apply(b));
        prop_assert_eq!(e.apply(a + b), e.apply(a) + e.apply(b));
    }

    #[test]
    fn roots_of_a_product_of_linear_factors(bits in prop::collection::btree_set(0u32..256, 1..6)) {
        let f = field(8);
        let roots: Vec<_> = bits.iter().map(|&b| f.element(b).unwrap()).collect();
        let p = roots.iter().fold(UniPoly::constant(f.one()), |acc, &r| acc.mul(&UniPoly::linear(r)));
        let mut found: Vec<u32> = p.roots().unwrap().into_iter().map(|(r, mult)| { assert_eq!(mult, 1); r.bits() }).collect();
        found.sort();
        prop_assert_eq!(found, bits.into_iter().collect::<Vec<_>>());
    }

    #[test]
    fn smith_and_hermite_transforms(rows in small_matrix()) {
        let m = IntMatrix::from_i64(&rows).unwrap();
        let s = lattice::smith_normal_form(&m);
        let d = s.u.mul(&m).mul(&s.v);
        for i in 0..d.nrows() {
            for j in 0..d.ncols() {
                let expect = if i == j { s.divisors[i].clone() } else { BigInt::from(0) };
                prop_assert_eq!(&d[(i, j)], &expect);
            }
        }
        for w in s.divisors.windows(2) {
            prop_assert!(w[0] == BigInt::from(0) && w[1] == BigInt::from(0) || (w[0] != BigInt::from(0) && (&w[1] % &w[0]) == BigInt::from(0)));
        }
        prop_assert_eq!(s.u.det().unwrap().abs(), BigInt::from(1));
        prop_assert_eq!(s.v.det().unwrap().abs(), BigInt::from(1));
        let h = lattice::hermite_rows(&m);
        prop_assert_eq!(h.u.mul(&m), h.h.clone());
        prop_assert_eq!(h.u.det().unwrap().abs(), BigInt::from(1));
        prop_assert_eq!(h.rank, m.rank());
    }

    #[test]
    fn zero_count_is_invariant_under_change_of_basis(sigma in 1u32..=4, minus in any::<bool>(), seed in any::<u64>()) {
        let q = f2quad::standard_form(sigma, if minus { 6 } else { 2 }).unwrap();
        let n = 2 * sigma as usize;
        // random invertible basis by repeated elementary operations
        let mut basis: Vec<u64> = (0..n).map(|i| 1u64 << i).collect();
        let mut s = seed;
        for _ in 0..40 {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let (i, j) = ((s >> 33) as usize % n, (s >> 45) as usize % n);
            if i != j {
                basis[i] ^= basis[j];
            }
        }
        let r = q.restrict(&basis);
        prop_assert!(r.is_nondegenerate());
        prop_assert_eq!(f2quad::count_zeros(&r).unwrap(), f2quad::count_zeros(&q).unwrap());
        prop_assert_eq!(f2quad::arf_invariant(&r).unwrap(), minus as u8);
        prop_assert_eq!(f2quad::count_zeros(&r).unwrap(), f2quad::zeros_closed_form(sigma, minus as u8));
    }

    #[test]
    fn gluing_a_singular_vector_divides_det_by_four(pick in 0usize..495) {
        let l = u_d4_5();
        let form = lattice::discriminant_form_f2(&l).unwrap();
        let singular: Vec<u64> = (1..1u64 << form.dim()).filter(|&v| form.eval(v) == 0).collect();
        prop_assert_eq!(singular.len() + 1, 496);
        let m = lattice::overlattice_from_glue(&l, &GlueGroup { generators: vec![singular[pick]] }).unwrap();
        prop_assert_eq!(m.det() * BigInt::from(4), l.det());
        prop_assert!(m.is_even());
        prop_assert_eq!(lattice::artin_sigma(&m).unwrap(), 4);
    }
}

#[test]
fn nonsingular_glue_is_rejected() {
    let l = u_d4_5();
    let form = lattice::discriminant_form_f2(&l).unwrap();
    let v = (1..1u64 << form.dim()).find(|&v| form.eval(v) == 1).unwrap();
    assert!(lattice::overlattice_from_glue(&l, &GlueGroup { generators: vec![v] }).is_err());
}

#[test]
fn serde_round_trips() {
    let q = f2quad::standard_form(3, 6).unwrap();
    let back: F2QuadForm = serde_json::from_str(&serde_json::to_string(&q).unwrap()).unwrap();
    assert_eq!(back, q);
    let l = u_d4_5();
    let back: Lattice = serde_json::from_str(&serde_json::to_string(&l).unwrap()).unwrap();
    assert_eq!(back.gram(), l.gram());
}

#[test]
fn figure1_span_has_the_expected_discriminant_form() {
    let g = kummer_core::curveconfig::builtin_figure1();
    let l = kummer_core::curveconfig::lattice_generated_by(&g);
    let form = lattice::discriminant_form_f2(&l).unwrap();
    assert_eq!(f2quad::classify(&form), (6, 0, Some(1)));
    assert_eq!(f2quad::count_zeros(&form).unwrap() - 1, 27);
}
