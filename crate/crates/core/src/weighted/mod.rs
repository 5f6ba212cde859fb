//! The five weighted inverse notions over a context (a, b, c, v, w):
//! weighted (b,c)-inverses, their hybrid and annihilator relaxations, the
//! weighted Bott-Duffin (e,f)-inverse, and the weighted inverse along an
//! element.
//!
//! Every operation is construct-and-verify: a returned value has been checked
//! against the raw defining equations, and on small finite rings uniqueness is
//! re-established by exhaustive scan. A verification failure means a solver
//! bug and surfaces as `Error::InternalInconsistency`, never as a value.

mod along;
mod annihilator;
mod bc;
mod bott_duffin;
mod hybrid;
mod laws;

pub use along::along_d;
pub(crate) use along::seven_characterizations;
pub use annihilator::annihilator_inverse;
pub use bc::{bc_exists, bc_inverse, bc_inverse_via_group};
pub use bott_duffin::{bott_duffin, bott_duffin_necessary, bott_duffin_star};
pub use hybrid::{hybrid_exists, hybrid_inverse, hybrid_via_group};
pub use laws::{commuting_transport, reverse_order, sum_formula, LawReport};

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::geninv::is_idempotent;
use crate::matrix::{all_matrices, prod, Matrix};
use crate::ring::RingSpec;
use crate::solve::{
    ann_contained, ann_equal, in_left_ideal, in_right_ideal, sandwich_witness, Certificate, Side,
};

/// The tuple (a, b, c, v, w) every weighted inverse notion is defined against.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightedContext {
    pub a: Matrix,
    pub b: Matrix,
    pub c: Matrix,
    pub v: Matrix,
    pub w: Matrix,
}

impl WeightedContext {
    pub fn new(a: Matrix, b: Matrix, c: Matrix, v: Matrix, w: Matrix) -> Result<Self, Error> {
        for m in [&b, &c, &v, &w] {
            a.same_shape(m)?;
        }
        Ok(WeightedContext { a, b, c, v, w })
    }

    pub fn ring(&self) -> &RingSpec {
        self.a.ring()
    }

    pub fn k(&self) -> usize {
        self.a.k()
    }

    pub(crate) fn cvawb(&self) -> Matrix {
        prod(&[&self.c, &self.v, &self.a, &self.w, &self.b])
    }

    pub(crate) fn vawb(&self) -> Matrix {
        prod(&[&self.v, &self.a, &self.w, &self.b])
    }

    pub(crate) fn cvaw(&self) -> Matrix {
        prod(&[&self.c, &self.v, &self.a, &self.w])
    }

    pub(crate) fn vaw(&self) -> Matrix {
        prod(&[&self.v, &self.a, &self.w])
    }

    pub fn weight_invertible(&self) -> bool {
        self.v.is_invertible() || self.w.is_invertible()
    }
}

/// Context for the weighted Bott-Duffin inverse; e and f must be idempotent.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BottDuffinContext {
    pub a: Matrix,
    pub v: Matrix,
    pub w: Matrix,
    pub e: Matrix,
    pub f: Matrix,
}

impl BottDuffinContext {
    pub fn new(a: Matrix, v: Matrix, w: Matrix, e: Matrix, f: Matrix) -> Result<Self, Error> {
        for m in [&v, &w, &e, &f] {
            a.same_shape(m)?;
        }
        if !is_idempotent(&e) {
            return Err(Error::NotIdempotent("e".into()));
        }
        if !is_idempotent(&f) {
            return Err(Error::NotIdempotent("f".into()));
        }
        Ok(BottDuffinContext { a, v, w, e, f })
    }

    pub fn ring(&self) -> &RingSpec {
        self.a.ring()
    }

    pub fn k(&self) -> usize {
        self.a.k()
    }

    pub(crate) fn fvawe(&self) -> Matrix {
        prod(&[&self.f, &self.v, &self.a, &self.w, &self.e])
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InverseKind {
    Bc,
    Hybrid,
    Annihilator,
    BottDuffin,
    AlongD,
}

impl InverseKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            InverseKind::Bc => "bc",
            InverseKind::Hybrid => "hybrid",
            InverseKind::Annihilator => "annihilator",
            InverseKind::BottDuffin => "bott-duffin",
            InverseKind::AlongD => "along-d",
        }
    }
}

/// Outcome of an inverse computation: verdict, value, witnesses, and the list
/// of defining equations that were checked. `exists` implies every listed
/// check passed exactly.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InverseReport {
    pub kind: InverseKind,
    pub exists: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<Matrix>,
    pub certificates: Vec<Certificate>,
    pub checks: Vec<(String, bool)>,
}

impl InverseReport {
    pub(crate) fn absent(kind: InverseKind, checks: Vec<(String, bool)>) -> Self {
        InverseReport {
            kind,
            exists: false,
            value: None,
            certificates: Vec::new(),
            checks,
        }
    }

    pub fn all_checks_pass(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }
}

pub(crate) fn checks(pairs: Vec<(&str, bool)>) -> Vec<(String, bool)> {
    pairs.into_iter().map(|(n, b)| (n.to_string(), b)).collect()
}

pub(crate) fn require_weight_invertible(ctx: &WeightedContext) -> Result<(), Error> {
    if ctx.weight_invertible() {
        Ok(())
    } else {
        Err(Error::Precondition("neither v nor w is invertible".into()))
    }
}

// ---------------------------------------------------------------------------
// definition checkers (solver-based decision procedures)
// ---------------------------------------------------------------------------

/// y ∈ bRwy ∩ yvRc, yvawb = b, cvawy = c.
pub fn is_bc_inverse(ctx: &WeightedContext, y: &Matrix) -> bool {
    if prod(&[y, &ctx.v, &ctx.a, &ctx.w, &ctx.b]) != ctx.b {
        return false;
    }
    if prod(&[&ctx.c, &ctx.v, &ctx.a, &ctx.w, y]) != ctx.c {
        return false;
    }
    let wy = &ctx.w * y;
    let yv = y * &ctx.v;
    sandwich_witness(&ctx.b, &wy, y).is_some() && sandwich_witness(&yv, &ctx.c, y).is_some()
}

/// yvawy = y, yvR = bR, rann(wy) = rann(c).
pub fn is_hybrid_inverse(ctx: &WeightedContext, y: &Matrix) -> bool {
    if prod(&[y, &ctx.v, &ctx.a, &ctx.w, y]) != *y {
        return false;
    }
    let yv = y * &ctx.v;
    if !(in_right_ideal(&ctx.b, &yv) && in_right_ideal(&yv, &ctx.b)) {
        return false;
    }
    let wy = &ctx.w * y;
    ann_equal(&wy, &ctx.c, Side::Right).expect("homogeneous context")
}

/// yvawy = y, lann(yv) = lann(b), rann(wy) = rann(c).
pub fn is_annihilator_inverse(ctx: &WeightedContext, y: &Matrix) -> bool {
    if prod(&[y, &ctx.v, &ctx.a, &ctx.w, y]) != *y {
        return false;
    }
    let yv = y * &ctx.v;
    if !ann_equal(&yv, &ctx.b, Side::Left).expect("homogeneous context") {
        return false;
    }
    let wy = &ctx.w * y;
    ann_equal(&wy, &ctx.c, Side::Right).expect("homogeneous context")
}

/// z = ewz = zvf, zvawe = e, fvawz = f.
pub fn is_bott_duffin_inverse(ctx: &BottDuffinContext, z: &Matrix) -> bool {
    prod(&[&ctx.e, &ctx.w, z]) == *z
        && prod(&[z, &ctx.v, &ctx.f]) == *z
        && prod(&[z, &ctx.v, &ctx.a, &ctx.w, &ctx.e]) == ctx.e
        && prod(&[&ctx.f, &ctx.v, &ctx.a, &ctx.w, z]) == ctx.f
}

/// yvawd = d = dvawy, Rwy ⊆ Rd, yvR ⊆ dR.
pub fn is_along_d_inverse(a: &Matrix, d: &Matrix, v: &Matrix, w: &Matrix, y: &Matrix) -> bool {
    if prod(&[y, v, a, w, d]) != *d || prod(&[d, v, a, w, y]) != *d {
        return false;
    }
    let wy = w * y;
    let yv = y * v;
    in_left_ideal(d, &wy) && in_right_ideal(d, &yv)
}

/// Rx = Rg.
pub(crate) fn left_ideal_eq(g: &Matrix, x: &Matrix) -> bool {
    in_left_ideal(g, x) && in_left_ideal(x, g)
}

/// xR = gR.
pub(crate) fn right_ideal_eq(g: &Matrix, x: &Matrix) -> bool {
    in_right_ideal(g, x) && in_right_ideal(x, g)
}

pub(crate) fn ann_contained_unchecked(x: &Matrix, y: &Matrix, side: Side) -> bool {
    ann_contained(x, y, side).expect("homogeneous context")
}

pub(crate) fn ann_equal_unchecked(x: &Matrix, y: &Matrix, side: Side) -> bool {
    ann_equal(x, y, side).expect("homogeneous context")
}

// ---------------------------------------------------------------------------
// exhaustive uniqueness scans on small finite rings
// ---------------------------------------------------------------------------

const SCAN_MAX_MODULUS: u64 = 4;
const SCAN_MAX_DIM: usize = 2;

/// On rings with at most 4 elements and k <= 2, exhaustively confirms that
/// `expected` is the only element satisfying `check`. Returns `Ok(None)` when
/// the ring is too large to scan; a uniqueness violation is an internal error.
pub(crate) fn assert_unique_on_small_rings(
    ring: &RingSpec,
    k: usize,
    expected: &Matrix,
    label: &str,
    check: impl Fn(&Matrix) -> bool,
) -> Result<Option<bool>, Error> {
    let Some(n) = ring.size() else {
        return Ok(None);
    };
    if n > SCAN_MAX_MODULUS || k > SCAN_MAX_DIM {
        return Ok(None);
    }
    let mut found: Option<Matrix> = None;
    for cand in all_matrices(ring, k).expect("finite ring") {
        if check(&cand) {
            if found.is_some() {
                return Err(Error::InternalInconsistency(format!(
                    "{label}: exhaustive scan found more than one satisfying element"
                )));
            }
            found = Some(cand);
        }
    }
    match found {
        Some(f) if &f == expected => Ok(Some(true)),
        Some(_) => Err(Error::InternalInconsistency(format!(
            "{label}: exhaustive scan found a different value"
        ))),
        None => Err(Error::InternalInconsistency(format!(
            "{label}: exhaustive scan found no satisfying element"
        ))),
    }
}

pub(crate) fn verified_or_internal(
    kind: InverseKind,
    value: Matrix,
    certificates: Vec<Certificate>,
    checks: Vec<(String, bool)>,
) -> Result<InverseReport, Error> {
    if let Some((name, _)) = checks.iter().find(|(_, ok)| !ok) {
        return Err(Error::InternalInconsistency(format!(
            "{} inverse candidate failed check {name:?}",
            kind.as_str()
        )));
    }
    Ok(InverseReport {
        kind,
        exists: true,
        value: Some(value),
        certificates,
        checks,
    })
}
