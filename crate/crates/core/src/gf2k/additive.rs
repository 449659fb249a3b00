//! Solving `λ₄β⁴ + λ₂β² + τβ = c` by F₂-linear algebra.
//!
//! Squaring is additive in characteristic 2, so `β ↦ λ₄β⁴ + λ₂β² + τβ` is an
//! F₂-linear endomorphism of GF(2^k). Its matrix in the basis `1, x, …, x^{k-1}`
//! is reduced once; the solution set is then a particular solution plus the kernel.

use super::field::FieldElement;
use super::FieldError;

/// Kernel basis and (optional) particular solution of an F₂-linear system `A·x = c`
/// where columns of `A` are bitmasks.
fn solve_f2(columns: &[u32], rhs: u32, k: usize) -> (Vec<u32>, Option<u32>) {
    // Augmented rows: row i = (bit i of each column, bit i of rhs).
    let mut rows: Vec<(u32, bool)> = (0..k)
        .map(|i| {
            let mut r = 0u32;
            for (j, &c) in columns.iter().enumerate() {
                r |= (c >> i & 1) << j;
            }
            (r, rhs >> i & 1 == 1)
        })
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..k {
        let Some(p) = (row..k).find(|&r| rows[r].0 >> col & 1 == 1) else {
            continue;
        };
        rows.swap(row, p);
        for r in 0..k {
            if r != row && rows[r].0 >> col & 1 == 1 {
                rows[r].0 ^= rows[row].0;
                rows[r].1 ^= rows[row].1;
            }
        }
        pivots.push(col);
        row += 1;
    }
    let consistent = rows[row..].iter().all(|r| !r.1);
    let particular = consistent.then(|| {
        pivots
            .iter()
            .enumerate()
            .filter(|(i, _)| rows[*i].1)
            .fold(0u32, |acc, (_, &col)| acc | 1 << col)
    });
    let free: Vec<usize> = (0..k).filter(|c| !pivots.contains(c)).collect();
    let kernel = free
        .iter()
        .map(|&f| {
            let mut v = 1u32 << f;
            for (i, &col) in pivots.iter().enumerate() {
                if rows[i].0 >> f & 1 == 1 {
                    v |= 1 << col;
                }
            }
            v
        })
        .collect();
    (kernel, particular)
}

/// All β with `λ₄β⁴ + λ₂β² + τβ = c`, sorted by encoding. Empty when the
/// equation has no solution in the field; otherwise a coset of the kernel.
pub fn additive_solve(
    lam4: FieldElement,
    lam2: FieldElement,
    tau: FieldElement,
    c: FieldElement,
) -> Result<Vec<FieldElement>, FieldError> {
    let field = lam4.spec();
    for e in [lam2, tau, c] {
        if e.spec() != field {
            return Err(FieldError::Mismatch(field, e.spec()));
        }
    }
    if lam4.is_zero() && lam2.is_zero() && tau.is_zero() {
        return Err(FieldError::ZeroAdditiveMap);
    }
    let k = field.degree() as usize;
    let map = |b: FieldElement| lam4 * b.pow(4) + lam2 * b.square() + tau * b;
    let columns: Vec<u32> = (0..k).map(|i| map(field.element(1 << i).unwrap()).bits()).collect();
    let (kernel, particular) = solve_f2(&columns, c.bits(), k);
    let Some(p) = particular else {
        return Ok(Vec::new());
    };
    let mut out: Vec<FieldElement> = (0u32..1 << kernel.len())
        .map(|mask| {
            let shift = kernel
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .fold(0, |acc, (_, &v)| acc ^ v);
            field.element(p ^ shift).unwrap()
        })
        .collect();
    out.sort();
    Ok(out)
}
