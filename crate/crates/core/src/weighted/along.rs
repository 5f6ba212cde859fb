//! The weighted inverse along an element d: y with yvawd = d = dvawy,
//! Rwy ⊆ Rd and yvR ⊆ dR. Computed as the weighted (d,d)-inverse; when v or
//! w is invertible the report additionally records the seven equivalent
//! characterizations, which must all agree.

use crate::error::Error;
use crate::matrix::{prod, Matrix};
use crate::solve::{in_left_ideal, in_right_ideal, Side};

use super::{
    ann_contained_unchecked, ann_equal_unchecked, bc_inverse, checks, is_along_d_inverse,
    is_bc_inverse, is_hybrid_inverse, left_ideal_eq, right_ideal_eq, verified_or_internal,
    InverseKind, InverseReport, WeightedContext,
};

pub fn along_d(a: &Matrix, d: &Matrix, v: &Matrix, w: &Matrix) -> Result<InverseReport, Error> {
    let ctx = WeightedContext::new(a.clone(), d.clone(), d.clone(), v.clone(), w.clone())?;
    let base = bc_inverse(&ctx)?;
    if !base.exists {
        return Ok(InverseReport {
            kind: InverseKind::AlongD,
            exists: false,
            value: None,
            certificates: base.certificates,
            checks: base.checks,
        });
    }
    let y = base.value.clone().expect("existing inverse");
    let wy = w * &y;
    let yv = &y * v;

    let mut cs = checks(vec![
        ("yvawd=d", prod(&[&y, v, a, w, d]) == *d),
        ("dvawy=d", prod(&[d, v, a, w, &y]) == *d),
        ("Rwy<=Rd", in_left_ideal(d, &wy)),
        ("yvR<=dR", in_right_ideal(d, &yv)),
    ]);
    if v.is_invertible() || w.is_invertible() {
        cs.extend(seven_characterizations(&ctx, &y));
    }
    verified_or_internal(InverseKind::AlongD, y, base.certificates, cs)
}

/// The seven equivalent descriptions of "y is the weighted inverse along d"
/// (valid when v or w is invertible), each evaluated independently.
pub(crate) fn seven_characterizations(
    ctx: &WeightedContext,
    y: &Matrix,
) -> Vec<(String, bool)> {
    let (a, d, v, w) = (&ctx.a, &ctx.b, &ctx.v, &ctx.w);
    let wy = w * y;
    let yv = y * v;
    let yvawd_eq = prod(&[y, v, a, w, d]) == *d;
    let dvawy_eq = prod(&[d, v, a, w, y]) == *d;
    let yvawy_eq = prod(&[y, v, a, w, y]) == *y;

    checks(vec![
        ("char-i", is_along_d_inverse(a, d, v, w, y)),
        (
            "char-ii",
            yvawd_eq
                && dvawy_eq
                && in_left_ideal(d, &wy)
                && ann_contained_unchecked(d, &yv, Side::Left),
        ),
        (
            "char-iii",
            yvawy_eq && left_ideal_eq(d, &wy) && ann_equal_unchecked(&yv, d, Side::Left),
        ),
        (
            "char-iv",
            yvawd_eq
                && dvawy_eq
                && in_right_ideal(d, &yv)
                && ann_equal_unchecked(&wy, d, Side::Right),
        ),
        (
            "char-v",
            yvawy_eq && right_ideal_eq(d, &yv) && ann_equal_unchecked(&wy, d, Side::Right),
        ),
        ("char-vi", is_hybrid_inverse(ctx, y)),
        ("char-vii", is_bc_inverse(ctx, y)),
    ])
}
