//! The weighted Bott-Duffin (e,f)-inverse for idempotents e, f: an element z
//! with z = ewz = zvf, zvawe = e, fvawz = f. All four constraints are linear
//! in z, so existence is one linear solve; uniqueness is triviality of the
//! homogeneous solution space.

use crate::error::Error;
use crate::geninv::is_symmetric_idempotent;
use crate::matrix::{prod, Matrix};
use crate::solve::{
    in_left_ideal, in_right_ideal, sandwich_witness, CertRole, Certificate, MatEq,
};

use super::{checks, verified_or_internal, BottDuffinContext, InverseKind, InverseReport};

pub fn bott_duffin(ctx: &BottDuffinContext) -> Result<InverseReport, Error> {
    let ring = ctx.ring();
    let k = ctx.k();
    let one = Matrix::one(ring, k);
    let zero = Matrix::zero(ring, k);

    let ew = &ctx.e * &ctx.w;
    let vf = &ctx.v * &ctx.f;
    let vawe = prod(&[&ctx.v, &ctx.a, &ctx.w, &ctx.e]);
    let fvaw = prod(&[&ctx.f, &ctx.v, &ctx.a, &ctx.w]);

    let mut eq = MatEq::new(ring, k);
    let one_minus_ew = &one - &ew;
    eq.constraint(&[(&one_minus_ew, &one)], &zero); // z = ewz
    let one_minus_vf = &one - &vf;
    eq.constraint(&[(&one, &one_minus_vf)], &zero); // z = zvf
    eq.constraint(&[(&one, &vawe)], &ctx.e); // zvawe = e
    eq.constraint(&[(&fvaw, &one)], &ctx.f); // fvawz = f

    let Some(z) = eq.solve() else {
        return Ok(InverseReport::absent(
            InverseKind::BottDuffin,
            checks(vec![("defining linear system solvable", false)]),
        ));
    };
    let unique = eq.kernel().is_empty();

    let cs = checks(vec![
        ("z=ewz", prod(&[&ctx.e, &ctx.w, &z]) == z),
        ("z=zvf", prod(&[&z, &ctx.v, &ctx.f]) == z),
        ("zvawe=e", prod(&[&z, &vawe]) == ctx.e),
        ("fvawz=f", prod(&[&fvaw, &z]) == ctx.f),
        ("unique", unique),
    ]);
    verified_or_internal(InverseKind::BottDuffin, z, Vec::new(), cs)
}

/// Necessary condition for existence: e ∈ eR·fvawe and f ∈ fvawe·Rf. On
/// success the certificate exhibits m, n together with the invertible
/// p = m·fvawe + 1 - e and q = fvawe·n + 1 - f.
pub fn bott_duffin_necessary(
    ctx: &BottDuffinContext,
) -> Result<(bool, Option<Certificate>), Error> {
    let g = ctx.fvawe();
    let one = Matrix::one(ctx.ring(), ctx.k());
    let x = sandwich_witness(&ctx.e, &g, &ctx.e); // e·X·fvawe = e
    let y = sandwich_witness(&g, &ctx.f, &ctx.f); // fvawe·Y·f = f
    let (Some(x), Some(y)) = (x, y) else {
        return Ok((false, None));
    };
    let m = &ctx.e * &x; // m in eR with m·fvawe = e
    let n = &y * &ctx.f; // n in Rf with fvawe·n = f
    let p = &(&m * &g) + &(&one - &ctx.e);
    let q = &(&g * &n) + &(&one - &ctx.f);
    if !p.is_invertible() || !q.is_invertible() {
        return Err(Error::InternalInconsistency(
            "p or q failed to be invertible with constructed witnesses".into(),
        ));
    }
    let pinv = p.inverse()?;
    let qinv = q.inverse()?;
    if prod(&[&g, &pinv, &n]) != ctx.f || prod(&[&m, &qinv, &g]) != ctx.e {
        return Err(Error::InternalInconsistency(
            "invertibility witnesses failed their side equations".into(),
        ));
    }
    Ok((
        true,
        Some(Certificate::new(
            CertRole::Decomposition,
            [("m", m), ("n", n), ("p", p), ("q", q)],
        )),
    ))
}

/// Involution form for symmetric idempotents e = e* = e², f = f* = f²: when
/// the inverse exists, (fvawe)*fvawe + 1 - e and fvawe(fvawe)* + 1 - f are
/// invertible and recover f and e by conjugation.
pub fn bott_duffin_star(ctx: &BottDuffinContext) -> Result<InverseReport, Error> {
    if !is_symmetric_idempotent(&ctx.e) || !is_symmetric_idempotent(&ctx.f) {
        return Err(Error::Precondition(
            "e = e* = e^2 and f = f* = f^2 are required".into(),
        ));
    }
    let base = bott_duffin(ctx)?;
    if !base.exists {
        return Err(Error::Precondition(
            "the weighted Bott-Duffin inverse does not exist".into(),
        ));
    }
    let one = Matrix::one(ctx.ring(), ctx.k());
    let g = ctx.fvawe();
    let gs = g.transpose();
    let gsg = &gs * &g;
    let ggs = &g * &gs;

    let p = &gsg + &(&one - &ctx.e);
    let q = &ggs + &(&one - &ctx.f);
    let p_inv = p.is_invertible();
    let q_inv = q.is_invertible();
    let cs = checks(vec![
        ("e in R.(fvawe)*fvawe", in_left_ideal(&gsg, &ctx.e)),
        ("f in fvawe(fvawe)*.R", in_right_ideal(&ggs, &ctx.f)),
        ("p=(fvawe)*fvawe+1-e invertible", p_inv),
        (
            "fvawe.p^-1.(fvawe)*=f",
            p_inv && prod(&[&g, &p.inverse()?, &gs]) == ctx.f,
        ),
        ("q=fvawe(fvawe)*+1-f invertible", q_inv),
        (
            "(fvawe)*.q^-1.fvawe=e",
            q_inv && prod(&[&gs, &q.inverse()?, &g]) == ctx.e,
        ),
    ]);
    let value = base.value.clone().expect("existing inverse");
    verified_or_internal(InverseKind::BottDuffin, value, base.certificates, cs)
}
