//! The hybrid weighted (b,c)-inverse: the unique y with yvawy = y,
//! yvR = bR, and rann(wy) = rann(c). Requires v or w invertible.

use crate::error::Error;
use crate::geninv::group_inverse;
use crate::matrix::prod;
use crate::solve::{
    ann_contained, ann_equal, in_right_ideal, solve_right_mat, CertRole, Certificate, Side,
};

use super::{
    assert_unique_on_small_rings, checks, is_hybrid_inverse, require_weight_invertible,
    verified_or_internal, InverseKind, InverseReport, WeightedContext,
};

/// Existence test: rann(cvawb) ⊆ rann(b) and c ∈ cvawb·R. The certificate
/// carries t with c = cvawb·t.
pub fn hybrid_exists(ctx: &WeightedContext) -> (bool, Option<Certificate>) {
    let m = ctx.cvawb();
    let contained = ann_contained(&m, &ctx.b, Side::Right).expect("homogeneous context");
    match (contained, solve_right_mat(&m, &ctx.c)) {
        (true, Some(t)) => (
            true,
            Some(Certificate::new(CertRole::MembershipRight, [("t", t)])),
        ),
        _ => (false, None),
    }
}

/// Computes the hybrid inverse as b·t from the existence witness t, then
/// verifies the definition.
pub fn hybrid_inverse(ctx: &WeightedContext) -> Result<InverseReport, Error> {
    require_weight_invertible(ctx)?;
    let (exists, cert) = hybrid_exists(ctx);
    if !exists {
        let m = ctx.cvawb();
        let contained = ann_contained(&m, &ctx.b, Side::Right)?;
        let member = solve_right_mat(&m, &ctx.c).is_some();
        return Ok(InverseReport::absent(
            InverseKind::Hybrid,
            checks(vec![
                ("rann(cvawb)<=rann(b)", contained),
                ("c in cvawb.R", member),
            ]),
        ));
    }
    let cert = cert.expect("existence certificate");
    let t = cert.witness("t").expect("witness t").clone();
    let y = &ctx.b * &t;

    let yv = &y * &ctx.v;
    let wy = &ctx.w * &y;
    let mut cs = checks(vec![
        ("yvawy=y", prod(&[&y, &ctx.v, &ctx.a, &ctx.w, &y]) == y),
        (
            "yvR=bR",
            in_right_ideal(&ctx.b, &yv) && in_right_ideal(&yv, &ctx.b),
        ),
        (
            "rann(wy)=rann(c)",
            ann_equal(&wy, &ctx.c, Side::Right)?,
        ),
    ]);
    if let Some(true) =
        assert_unique_on_small_rings(ctx.ring(), ctx.k(), &y, "hybrid", |cand| {
            is_hybrid_inverse(ctx, cand)
        })?
    {
        cs.push(("unique".into(), true));
    }
    verified_or_internal(InverseKind::Hybrid, y, vec![cert], cs)
}

/// Group-inverse criterion: under rann(vawb) = rann(b) = rann(c), the hybrid
/// inverse exists iff vawb is group invertible, and then equals b·(vawb)#.
pub fn hybrid_via_group(ctx: &WeightedContext) -> Result<InverseReport, Error> {
    require_weight_invertible(ctx)?;
    let vawb = ctx.vawb();
    if !(ann_equal(&vawb, &ctx.b, Side::Right)? && ann_equal(&ctx.b, &ctx.c, Side::Right)?) {
        return Err(Error::Precondition(
            "rann(vawb) = rann(b) = rann(c) does not hold".into(),
        ));
    }
    let direct = hybrid_inverse(ctx)?;
    match group_inverse(&vawb)? {
        None => {
            if direct.exists {
                return Err(Error::InternalInconsistency(
                    "hybrid inverse exists but vawb is not group invertible".into(),
                ));
            }
            Ok(InverseReport::absent(
                InverseKind::Hybrid,
                checks(vec![("vawb group invertible", false)]),
            ))
        }
        Some(g) => {
            let y = &ctx.b * &g.value;
            let cs = checks(vec![
                ("vawb group invertible", true),
                ("b(vawb)# satisfies the definition", is_hybrid_inverse(ctx, &y)),
                (
                    "matches the direct construction",
                    direct.exists && direct.value.as_ref() == Some(&y),
                ),
            ]);
            verified_or_internal(InverseKind::Hybrid, y, vec![g.witnesses], cs)
        }
    }
}
