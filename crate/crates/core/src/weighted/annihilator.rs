//! The annihilator weighted (b,c)-inverse: the unique y with yvawy = y,
//! lann(yv) = lann(b), and rann(wy) = rann(c). Requires v or w invertible.
//!
//! With the weight hypothesis the definition is equivalent to the system
//! yvawb = b, cvawy = c, rann(c) ⊆ rann(wy), lann(b) ⊆ lann(yv) — and every
//! part of that system is linear in y, because the containments only
//! constrain y against finitely many annihilator generators.

use crate::error::Error;
use crate::matrix::{prod, Matrix};
use crate::solve::{ann_contained, ann_equal, lann, rann, MatEq, Side};

use super::{
    assert_unique_on_small_rings, checks, is_annihilator_inverse, require_weight_invertible,
    verified_or_internal, InverseKind, InverseReport, WeightedContext,
};

pub fn annihilator_inverse(ctx: &WeightedContext) -> Result<InverseReport, Error> {
    require_weight_invertible(ctx)?;
    let ring = ctx.ring();
    let k = ctx.k();
    let one = Matrix::one(ring, k);
    let zero = Matrix::zero(ring, k);

    let vawb = ctx.vawb();
    let cvaw = ctx.cvaw();
    let rc = rann(&ctx.c);
    let lb = lann(&ctx.b);

    let mut eq = MatEq::new(ring, k);
    eq.constraint(&[(&one, &vawb)], &ctx.b); // y·vawb = b
    eq.constraint(&[(&cvaw, &one)], &ctx.c); // cvaw·y = c
    for z in &rc.vectors {
        eq.constraint(&[(&ctx.w, z)], &zero); // w·y·z = 0 for z in rann(c)
    }
    for x in &lb.vectors {
        eq.constraint(&[(x, &ctx.v)], &zero); // x·y·v = 0 for x in lann(b)
    }

    let Some(y) = eq.solve() else {
        return Ok(InverseReport::absent(
            InverseKind::Annihilator,
            checks(vec![("defining linear system solvable", false)]),
        ));
    };
    // a second solution would be a second annihilator inverse
    let unique = eq.kernel().is_empty();

    let yv = &y * &ctx.v;
    let wy = &ctx.w * &y;
    let mut cs = checks(vec![
        ("yvawb=b", prod(&[&y, &ctx.v, &ctx.a, &ctx.w, &ctx.b]) == ctx.b),
        ("cvawy=c", prod(&[&ctx.c, &ctx.v, &ctx.a, &ctx.w, &y]) == ctx.c),
        (
            "rann(c)<=rann(wy)",
            ann_contained(&ctx.c, &wy, Side::Right)?,
        ),
        ("lann(b)<=lann(yv)", ann_contained(&ctx.b, &yv, Side::Left)?),
        ("yvawy=y", prod(&[&y, &ctx.v, &ctx.a, &ctx.w, &y]) == y),
        ("lann(yv)=lann(b)", ann_equal(&yv, &ctx.b, Side::Left)?),
        ("rann(wy)=rann(c)", ann_equal(&wy, &ctx.c, Side::Right)?),
        ("unique", unique),
    ]);
    if let Some(true) =
        assert_unique_on_small_rings(ctx.ring(), ctx.k(), &y, "annihilator", |cand| {
            is_annihilator_inverse(ctx, cand)
        })?
    {
        cs.push(("unique by exhaustive scan".into(), true));
    }
    verified_or_internal(InverseKind::Annihilator, y, Vec::new(), cs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::all_matrices;
    use crate::ring::RingSpec;
    use crate::weighted::{bc_exists, bc_inverse};

    fn gf2() -> RingSpec {
        RingSpec::prime_field(2).unwrap()
    }

    #[test]
    fn identity_context() {
        let q = RingSpec::rationals();
        let one = Matrix::one(&q, 2);
        let ctx = WeightedContext::new(
            one.clone(),
            one.clone(),
            one.clone(),
            one.clone(),
            one.clone(),
        )
        .unwrap();
        let rep = annihilator_inverse(&ctx).unwrap();
        assert!(rep.exists);
        assert_eq!(rep.value.unwrap(), one);
    }

    #[test]
    fn precondition_enforced() {
        let q = RingSpec::rationals();
        let one = Matrix::one(&q, 2);
        let zero = Matrix::zero(&q, 2);
        let ctx =
            WeightedContext::new(one.clone(), one.clone(), one, zero.clone(), zero).unwrap();
        assert!(matches!(
            annihilator_inverse(&ctx),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn bc_inverse_is_annihilator_inverse_over_gf2() {
        // exhaustive: whenever the weighted (b,c)-inverse exists, the
        // annihilator inverse exists and coincides with it
        let gf2 = gf2();
        let one = Matrix::one(&gf2, 2);
        let all: Vec<Matrix> = all_matrices(&gf2, 2).unwrap().collect();
        let mut compared = 0;
        for a in &all {
            for b in &all {
                for c in &all {
                    let ctx = WeightedContext::new(
                        a.clone(),
                        b.clone(),
                        c.clone(),
                        one.clone(),
                        one.clone(),
                    )
                    .unwrap();
                    if !bc_exists(&ctx).0 {
                        continue;
                    }
                    let bc = bc_inverse(&ctx).unwrap();
                    let ann = annihilator_inverse(&ctx).unwrap();
                    assert!(ann.exists, "bc-inverse exists but annihilator inverse missing");
                    assert_eq!(ann.value, bc.value);
                    compared += 1;
                }
            }
        }
        assert!(compared > 100);
    }

    #[test]
    fn along_example() {
        let ctx = crate::weighted::bc::tests::paper_along_ctx();
        let rep = annihilator_inverse(&ctx).unwrap();
        assert!(rep.exists);
        assert_eq!(rep.value.unwrap(), ctx.b);
    }
}
