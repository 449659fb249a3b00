//! Buchberger's algorithm and quotient-algebra dimension for ideals in at most
//! three variables.
//!
//! Pairs are processed in creation order, with the product criterion as the
//! only pruning rule, so output is deterministic for a given generator list.

use std::cmp::Ordering;
use std::collections::VecDeque;
use std::fmt;

use serde::Serialize;

use super::multipoly::{grlex, Exponent, MultiPoly};
use super::FieldError;

/// Maximum number of variables accepted by [`ideal_colength`].
pub const MAX_COLENGTH_VARS: usize = 3;

/// Dimension of `k[x]/I` as a vector space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Colength {
    Finite(u64),
    Infinite,
}

impl fmt::Display for Colength {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Colength::Finite(n) => write!(f, "{n}"),
            Colength::Infinite => write!(f, "infinite"),
        }
    }
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn lcm(a: &[u32], b: &[u32]) -> Exponent {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

/// Full reduction of `p` modulo `basis` (every term, not just the leading one).
pub fn normal_form(p: &MultiPoly, basis: &[MultiPoly]) -> MultiPoly {
    let leads: Vec<(Exponent, _)> = basis
        .iter()
        .filter_map(|g| g.leading().map(|(e, c)| (e.clone(), c.inv().expect("nonzero"))))
        .collect();
    let mut rem = p.zero_like();
    let mut work = p.clone();
    while let Some((e, c)) = work.leading().map(|(e, c)| (e.clone(), c)) {
        match leads.iter().position(|(le, _)| divides(le, &e)) {
            Some(i) => {
                let shift: Exponent = e.iter().zip(&leads[i].0).map(|(x, y)| x - y).collect();
                work = work.add(&basis[i].mul_term(&shift, c * leads[i].1));
            }
            None => {
                let t = work.monomial_like(e, c);
                rem = rem.add(&t);
                work = work.add(&t);
            }
        }
    }
    rem
}

fn s_polynomial(f: &MultiPoly, g: &MultiPoly) -> MultiPoly {
    let (ef, cf) = f.leading().expect("nonzero");
    let (eg, cg) = g.leading().expect("nonzero");
    let l = lcm(ef, eg);
    let sf: Exponent = l.iter().zip(ef).map(|(x, y)| x - y).collect();
    let sg: Exponent = l.iter().zip(eg).map(|(x, y)| x - y).collect();
    f.mul_term(&sf, cg).add(&g.mul_term(&sg, cf))
}

/// Reduced Gröbner basis under grlex, monic, sorted by leading monomial.
pub fn groebner_basis(gens: &[MultiPoly]) -> Vec<MultiPoly> {
    let mut basis: Vec<MultiPoly> = gens.iter().filter(|g| !g.is_zero()).map(|g| g.monic()).collect();
    let mut pairs: VecDeque<(usize, usize)> =
        (0..basis.len()).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    while let Some((i, j)) = pairs.pop_front() {
        let (ei, _) = basis[i].leading().unwrap();
        let (ej, _) = basis[j].leading().unwrap();
        if ei.iter().zip(ej).all(|(a, b)| *a == 0 || *b == 0) {
            continue;
        }
        let r = normal_form(&s_polynomial(&basis[i], &basis[j]), &basis);
        if !r.is_zero() {
            let n = basis.len();
            basis.push(r.monic());
            pairs.extend((0..n).map(|i| (i, n)));
        }
    }
    reduce_basis(basis)
}

fn reduce_basis(mut basis: Vec<MultiPoly>) -> Vec<MultiPoly> {
    // drop elements whose leading monomial is divisible by another's
    basis.sort_by(|a, b| grlex(a.leading().unwrap().0, b.leading().unwrap().0));
    let mut minimal: Vec<MultiPoly> = Vec::new();
    for g in basis {
        let lg = g.leading().unwrap().0.clone();
        if !minimal.iter().any(|h| divides(h.leading().unwrap().0, &lg)) {
            minimal.push(g);
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<MultiPoly> =
            minimal.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, g)| g.clone()).collect();
        let (lead, c) = minimal[i].leading().map(|(e, c)| (e.clone(), c)).unwrap();
        let tail = minimal[i].add(&minimal[i].monomial_like(lead.clone(), c));
        let reduced = minimal[i].monomial_like(lead, c).add(&normal_form(&tail, &others));
        out.push(reduced.monic());
    }
    out.sort_by(|a, b| grlex(a.leading().unwrap().0, b.leading().unwrap().0));
    out
}

/// Monomials outside the leading-term ideal, or `None` if there are infinitely many.
pub fn standard_monomials(basis: &[MultiPoly]) -> Option<Vec<Exponent>> {
    let n = basis.first()?.nvars();
    let leads: Vec<&Exponent> = basis.iter().filter_map(|g| g.leading().map(|l| l.0)).collect();
    // each variable needs a pure power among the leading monomials
    let mut bounds = Vec::with_capacity(n);
    for v in 0..n {
        let b = leads
            .iter()
            .filter(|e| e.iter().enumerate().all(|(i, &k)| i == v || k == 0) && e[v] > 0)
            .map(|e| e[v])
            .min()?;
        bounds.push(b);
    }
    let mut out = Vec::new();
    let mut cur = vec![0u32; n];
    loop {
        if !leads.iter().any(|l| divides(l, &cur)) {
            out.push(cur.clone());
        }
        let mut i = 0;
        loop {
            if i == n {
                out.sort_by(|a, b| grlex(a, b));
                return Some(out);
            }
            cur[i] += 1;
            if cur[i] < bounds[i] {
                break;
            }
            cur[i] = 0;
            i += 1;
        }
    }
}

/// `dim_k k[x₁..x_n]/(gens)` for `n ≤ 3`.
pub fn ideal_colength(gens: &[MultiPoly]) -> Result<Colength, FieldError> {
    let Some(first) = gens.first() else {
        return Ok(Colength::Infinite);
    };
    if first.nvars() > MAX_COLENGTH_VARS {
        return Err(FieldError::TooManyVariables(first.nvars()));
    }
    let basis = groebner_basis(gens);
    if basis.is_empty() {
        return Ok(Colength::Infinite);
    }
    if basis.iter().any(|g| g.leading().unwrap().0.iter().all(|&k| k == 0)) {
        // unit ideal
        return Ok(Colength::Finite(0));
    }
    Ok(match standard_monomials(&basis) {
        Some(m) => Colength::Finite(m.len() as u64),
        None => Colength::Infinite,
    })
}

impl PartialOrd for Colength {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Colength {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Colength::Finite(a), Colength::Finite(b)) => a.cmp(b),
            (Colength::Finite(_), Colength::Infinite) => Ordering::Less,
            (Colength::Infinite, Colength::Finite(_)) => Ordering::Greater,
            (Colength::Infinite, Colength::Infinite) => Ordering::Equal,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2k::FieldSpec;

    fn xyz() -> Vec<MultiPoly> {
        MultiPoly::variables(FieldSpec::f2(), &["x", "y", "z"]).unwrap()
    }

    #[test]
    fn maximal_ideal_has_colength_one() {
        let v = xyz();
        assert_eq!(ideal_colength(&v).unwrap(), Colength::Finite(1));
    }

    #[test]
    fn a1_normal_form() {
        let v = xyz();
        let f = v[2].pow(2).add(&v[0].mul(&v[1]));
        let gens = vec![f.clone(), f.partial(0), f.partial(1), f.partial(2)];
        assert_eq!(ideal_colength(&gens).unwrap(), Colength::Finite(2));
    }

    #[test]
    fn d4_normal_form() {
        let v = xyz();
        let (x, y, z) = (&v[0], &v[1], &v[2]);
        let f = z.pow(2).add(&x.pow(2).mul(y)).add(&x.mul(&y.pow(2)));
        let gens = vec![f.clone(), f.partial(0), f.partial(1), f.partial(2)];
        assert_eq!(ideal_colength(&gens).unwrap(), Colength::Finite(8));
    }

    #[test]
    fn non_zero_dimensional_and_empty() {
        let v = xyz();
        assert_eq!(ideal_colength(&[v[0].clone(), v[1].clone()]).unwrap(), Colength::Infinite);
        assert_eq!(ideal_colength(&[]).unwrap(), Colength::Infinite);
        let one = v[0].constant_like(FieldSpec::f2().one());
        assert_eq!(ideal_colength(&[one, v[0].clone()]).unwrap(), Colength::Finite(0));
    }

    #[test]
    fn gb_elements_reduce_to_zero() {
        let v = xyz();
        let (x, y, z) = (&v[0], &v[1], &v[2]);
        let gens = vec![
            x.pow(2).add(&y.mul(z)),
            y.pow(2).add(&x.mul(z)).add(x),
            z.pow(3).add(&x.mul(y)),
        ];
        let gb = groebner_basis(&gens);
        for g in &gens {
            assert!(normal_form(g, &gb).is_zero());
        }
        for i in 0..gb.len() {
            for j in 0..i {
                assert!(normal_form(&s_polynomial(&gb[i], &gb[j]), &gb).is_zero());
            }
        }
    }
}
