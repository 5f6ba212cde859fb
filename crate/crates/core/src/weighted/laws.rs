//! Composition laws for annihilator weighted (b,c)-inverses: the reverse
//! order law for products, the sum formula, and commutation transport between
//! intertwined contexts.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::matrix::{prod, Matrix};

use super::{
    annihilator_inverse, bc_inverse, checks, is_annihilator_inverse, InverseKind, InverseReport,
    WeightedContext,
};

/// Result of checking an algebraic law on one instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LawReport {
    pub law: String,
    pub checks: Vec<(String, bool)>,
    pub passed: bool,
}

impl LawReport {
    fn new(law: &str, cs: Vec<(String, bool)>) -> LawReport {
        let passed = !cs.is_empty() && cs.iter().all(|(_, ok)| *ok);
        LawReport {
            law: law.to_string(),
            checks: cs,
            passed,
        }
    }
}

/// Reverse order law: when b commutes with vtw and c commutes with vsw, the
/// annihilator inverse of the weighted product s∘t := s·w·v·t is t⁻ · s⁻
/// (annihilator inverses w.r.t. the same (b,c) and weights).
///
/// s∘t is the natural product for (v,w)-weighted notions (x ↦ vxw is a
/// homomorphism onto the w·v-twisted ring); it reduces to the plain product
/// s·t whenever w·v = 1. The plain product does not satisfy the law for
/// general weights — see the regression test below for a counterexample.
pub fn reverse_order(
    s: &Matrix,
    t: &Matrix,
    b: &Matrix,
    c: &Matrix,
    v: &Matrix,
    w: &Matrix,
) -> Result<InverseReport, Error> {
    let s_ctx = WeightedContext::new(s.clone(), b.clone(), c.clone(), v.clone(), w.clone())?;
    let t_ctx = WeightedContext::new(t.clone(), b.clone(), c.clone(), v.clone(), w.clone())?;
    if !s_ctx.weight_invertible() {
        return Err(Error::Precondition("neither v nor w is invertible".into()));
    }
    let vtw = prod(&[v, t, w]);
    if (b * &vtw) != (&vtw * b) {
        return Err(Error::Precondition("b·vtw = vtw·b does not hold".into()));
    }
    let vsw = prod(&[v, s, w]);
    if (c * &vsw) != (&vsw * c) {
        return Err(Error::Precondition("c·vsw = vsw·c does not hold".into()));
    }
    let ys = annihilator_inverse(&s_ctx)?;
    let yt = annihilator_inverse(&t_ctx)?;
    let (Some(ys), Some(yt)) = (ys.value, yt.value) else {
        return Err(Error::Precondition(
            "annihilator inverses of both factors must exist".into(),
        ));
    };
    let y = &yt * &ys;
    let st = prod(&[s, w, v, t]);
    let st_ctx = WeightedContext::new(st, b.clone(), c.clone(), v.clone(), w.clone())?;
    let direct = annihilator_inverse(&st_ctx)?;
    let cs = checks(vec![
        (
            "t~s~ satisfies the definition at s.w.v.t",
            is_annihilator_inverse(&st_ctx, &y),
        ),
        (
            "matches the direct computation",
            direct.exists && direct.value.as_ref() == Some(&y),
        ),
    ]);
    let passed = cs.iter().all(|(_, ok)| *ok);
    Ok(InverseReport {
        kind: InverseKind::Annihilator,
        exists: passed,
        value: Some(y),
        certificates: Vec::new(),
        checks: cs,
    })
}

/// Sum formula: with v and w invertible and y1, y2 the annihilator inverses
/// of a1, a2 w.r.t. the same (b,c), both of
/// y1+y2 = y1·v(a1+a2)w·y2 = y2·v(a1+a2)w·y1 hold exactly.
pub fn sum_formula(
    a1: &Matrix,
    a2: &Matrix,
    b: &Matrix,
    c: &Matrix,
    v: &Matrix,
    w: &Matrix,
) -> Result<LawReport, Error> {
    if !(v.is_invertible() && w.is_invertible()) {
        return Err(Error::Precondition("v and w must both be invertible".into()));
    }
    let ctx1 = WeightedContext::new(a1.clone(), b.clone(), c.clone(), v.clone(), w.clone())?;
    let ctx2 = WeightedContext::new(a2.clone(), b.clone(), c.clone(), v.clone(), w.clone())?;
    let y1 = annihilator_inverse(&ctx1)?;
    let y2 = annihilator_inverse(&ctx2)?;
    let (Some(y1), Some(y2)) = (y1.value, y2.value) else {
        return Err(Error::Precondition(
            "annihilator inverses of both summands must exist".into(),
        ));
    };
    let sum = a1 + a2;
    let lhs = &y1 + &y2;
    Ok(LawReport::new(
        "sum-formula",
        checks(vec![
            (
                "y1+y2 = y1.v(a1+a2)w.y2",
                lhs == prod(&[&y1, v, &sum, w, &y2]),
            ),
            (
                "y1+y2 = y2.v(a1+a2)w.y1",
                lhs == prod(&[&y2, v, &sum, w, &y1]),
            ),
        ]),
    ))
}

/// Commutation transport: if r intertwines two contexts (rc1 = c2r,
/// r·va1w = va2w·r, rb1 = b2r) then r·y1 = y2·r, for the annihilator variant
/// (v, w invertible) and for the plain weighted (b,c)-inverse.
#[allow(clippy::too_many_arguments)]
pub fn commuting_transport(
    a1: &Matrix,
    a2: &Matrix,
    b1: &Matrix,
    b2: &Matrix,
    c1: &Matrix,
    c2: &Matrix,
    v: &Matrix,
    w: &Matrix,
    r: &Matrix,
) -> Result<LawReport, Error> {
    let ctx1 = WeightedContext::new(a1.clone(), b1.clone(), c1.clone(), v.clone(), w.clone())?;
    let ctx2 = WeightedContext::new(a2.clone(), b2.clone(), c2.clone(), v.clone(), w.clone())?;
    r.same_shape(a1)?;
    let va1w = prod(&[v, a1, w]);
    let va2w = prod(&[v, a2, w]);
    if (r * c1) != (c2 * r) || (r * &va1w) != (&va2w * r) || (r * b1) != (b2 * r) {
        return Err(Error::Precondition(
            "the intertwining identities do not hold".into(),
        ));
    }
    let mut cs = Vec::new();
    if v.is_invertible() && w.is_invertible() {
        let y1 = annihilator_inverse(&ctx1)?;
        let y2 = annihilator_inverse(&ctx2)?;
        if let (Some(y1), Some(y2)) = (y1.value, y2.value) {
            cs.push((
                "annihilator: r.y1 = y2.r".to_string(),
                (r * &y1) == (&y2 * r),
            ));
        }
    }
    let y1 = bc_inverse(&ctx1)?;
    let y2 = bc_inverse(&ctx2)?;
    if let (Some(y1), Some(y2)) = (y1.value, y2.value) {
        cs.push(("bc: r.y1 = y2.r".to_string(), (r * &y1) == (&y2 * r)));
    }
    if cs.is_empty() {
        return Err(Error::Precondition(
            "no variant applicable: the required inverses do not exist".into(),
        ));
    }
    Ok(LawReport::new("commuting-transport", cs))
}
