//! Brute-force definitional oracle: enumerates every candidate over a finite
//! ring and keeps those satisfying the raw definition of an inverse kind.
//! Memberships and annihilator equalities are decided by enumeration as well,
//! so the oracle shares no code path with the linear solvers it validates.

use crate::error::Error;
use crate::matrix::{all_matrices, matrix_count, prod, Matrix};
use crate::weighted::InverseKind;

use super::Instance;

/// Every y in M_k(ring) satisfying the raw definition of the given kind, in
/// enumeration order. The candidate count n^(k²) must stay within `budget`;
/// note that the membership kinds cost another factor of n^(k²) per
/// candidate.
pub fn oracle_search(
    kind: InverseKind,
    inst: &Instance,
    budget: u64,
) -> Result<Vec<Matrix>, Error> {
    let ring = &inst.ring;
    let k = inst.k;
    let Some(count) = matrix_count(ring, k) else {
        return Err(Error::BudgetExceeded(
            "oracle enumeration requires a finite coefficient ring".into(),
        ));
    };
    if count > budget as u128 {
        return Err(Error::BudgetExceeded(format!(
            "{count} candidates exceed the budget of {budget}"
        )));
    }
    let all: Vec<Matrix> = all_matrices(ring, k).expect("finite ring").collect();

    let sat: Box<dyn Fn(&Matrix) -> bool> = match kind {
        InverseKind::Bc => {
            let ctx = inst.weighted_context()?;
            Box::new(move |y: &Matrix| {
                let (a, b, c, v, w) = (&ctx.a, &ctx.b, &ctx.c, &ctx.v, &ctx.w);
                if prod(&[y, v, a, w, b]) != *b || prod(&[c, v, a, w, y]) != *c {
                    return false;
                }
                let wy = w * y;
                let yv = y * v;
                in_sandwich(&all, b, &wy, y) && in_sandwich(&all, &yv, c, y)
            })
        }
        InverseKind::Hybrid => {
            let ctx = inst.weighted_context()?;
            Box::new(move |y: &Matrix| {
                let (a, b, c, v, w) = (&ctx.a, &ctx.b, &ctx.c, &ctx.v, &ctx.w);
                if prod(&[y, v, a, w, y]) != *y {
                    return false;
                }
                let yv = y * v;
                let wy = w * y;
                in_right(&all, b, &yv)
                    && in_right(&all, &yv, b)
                    && rann_same(&all, &wy, c)
            })
        }
        InverseKind::Annihilator => {
            let ctx = inst.weighted_context()?;
            Box::new(move |y: &Matrix| {
                let (a, b, c, v, w) = (&ctx.a, &ctx.b, &ctx.c, &ctx.v, &ctx.w);
                if prod(&[y, v, a, w, y]) != *y {
                    return false;
                }
                let yv = y * v;
                let wy = w * y;
                lann_same(&all, &yv, b) && rann_same(&all, &wy, c)
            })
        }
        InverseKind::BottDuffin => {
            let ctx = inst.bott_duffin_context()?;
            Box::new(move |z: &Matrix| {
                let (a, v, w, e, f) = (&ctx.a, &ctx.v, &ctx.w, &ctx.e, &ctx.f);
                prod(&[e, w, z]) == *z
                    && prod(&[z, v, f]) == *z
                    && prod(&[z, v, a, w, e]) == *e
                    && prod(&[f, v, a, w, z]) == *f
            })
        }
        InverseKind::AlongD => {
            let a = inst.get("a")?.clone();
            let d = inst.get("d")?.clone();
            let v = inst.get("v")?.clone();
            let w = inst.get("w")?.clone();
            Box::new(move |y: &Matrix| {
                if prod(&[y, &v, &a, &w, &d]) != d || prod(&[&d, &v, &a, &w, y]) != d {
                    return false;
                }
                let wy = &w * y;
                let yv = y * &v;
                in_left(&all, &d, &wy) && in_right(&all, &d, &yv)
            })
        }
    };

    Ok(all_matrices(ring, k)
        .expect("finite ring")
        .filter(|y| sat(y))
        .collect())
}

/// x ∈ g·R by enumeration.
fn in_right(all: &[Matrix], g: &Matrix, x: &Matrix) -> bool {
    all.iter().any(|r| &(g * r) == x)
}

/// x ∈ R·g by enumeration.
fn in_left(all: &[Matrix], g: &Matrix, x: &Matrix) -> bool {
    all.iter().any(|r| &(r * g) == x)
}

/// x ∈ l·R·r by enumeration.
fn in_sandwich(all: &[Matrix], l: &Matrix, r: &Matrix, x: &Matrix) -> bool {
    all.iter().any(|m| prod(&[l, m, r]) == *x)
}

/// rann(m1) = rann(m2) by enumeration of all annihilated elements.
fn rann_same(all: &[Matrix], m1: &Matrix, m2: &Matrix) -> bool {
    all.iter()
        .all(|z| (m1 * z).is_zero() == (m2 * z).is_zero())
}

/// lann(m1) = lann(m2) by enumeration.
fn lann_same(all: &[Matrix], m1: &Matrix, m2: &Matrix) -> bool {
    all.iter()
        .all(|z| (z * m1).is_zero() == (z * m2).is_zero())
}
