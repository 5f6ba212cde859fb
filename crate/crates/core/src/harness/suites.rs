//! One suite per characterization theorem. A suite draws instances from an
//! `InstanceSpace`, checks the theorem's hypotheses first (instances where
//! they fail are skipped, not failed), evaluates the assertion, and records
//! every violation with a replayable instance.
//!
//! Exhaustive spaces pin the weight slots v, w to 1; random spaces draw them
//! (invertible where the theorem assumes it). Slots are drawn in their listed
//! order from a ChaCha stream seeded with the space's seed.

use std::collections::HashSet;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::geninv::{group_inverse, is_group_invertible, is_idempotent};
use crate::matrix::{all_matrices, matrix_count, prod, Matrix};
use crate::ring::RingSpec;
use crate::solve::{
    ann_contained, ann_equal, direct_sum_check, in_left_ideal, in_right_ideal, inner_inverse_mat,
    intersection_trivial, is_regular, lann, left_ideal_basis, rank, rann, right_ideal_basis,
    sandwich_witness, solve_left_mat, solve_right_mat, subspace_equal, Side,
};
use crate::weighted::{
    bc_exists, commuting_transport, hybrid_exists, hybrid_inverse,
    is_annihilator_inverse, is_along_d_inverse, is_bc_inverse, is_hybrid_inverse, left_ideal_eq,
    reverse_order, right_ideal_eq, seven_characterizations, sum_formula, WeightedContext,
};

use super::{
    budget, constraint_holds, encode, random_idempotent, random_invertible, random_matrix,
    random_scalar_matrix, rng_for, Instance, InstanceSpace, Mode, SuiteFailure, SuiteResult,
};

#[derive(Clone, Copy, PartialEq, Eq)]
enum SlotKind {
    /// Free matrix slot; enumerated in exhaustive mode.
    Any,
    /// Weight with no invertibility hypothesis: 1 in exhaustive mode, free in
    /// random mode.
    Weight,
    /// Weight the theorem assumes invertible: 1 in exhaustive mode, a random
    /// invertible matrix in random mode.
    InvWeight,
    /// Idempotent slot: filtered enumeration / rejection sampling.
    Idempotent,
    /// Scalar multiple of the identity (central by construction).
    ScalarMat,
}

struct Slot {
    name: &'static str,
    kind: SlotKind,
}

const fn slot(name: &'static str, kind: SlotKind) -> Slot {
    Slot { name, kind }
}

pub(crate) enum Outcome {
    Skip,
    Pass,
    Fail(Vec<String>),
}

impl Outcome {
    fn from_failures(failed: Vec<String>) -> Outcome {
        if failed.is_empty() {
            Outcome::Pass
        } else {
            Outcome::Fail(failed)
        }
    }
}

struct SuiteDef {
    name: &'static str,
    slots: &'static [Slot],
    eval: fn(&Instance) -> Result<Outcome, Error>,
}

use SlotKind::{Any, Idempotent, InvWeight, ScalarMat, Weight};

static SUITES: &[SuiteDef] = &[
    SuiteDef {
        name: "idempotent-ann",
        slots: &[slot("a", Any)],
        eval: eval_idempotent_ann,
    },
    SuiteDef {
        name: "prop-annihilators",
        slots: &[slot("d", Any), slot("y", Any), slot("v", Weight), slot("w", Weight)],
        eval: eval_prop_annihilators,
    },
    SuiteDef {
        name: "regularity",
        slots: &[
            slot("a", Any),
            slot("b", Any),
            slot("c", Any),
            slot("v", Weight),
            slot("w", Weight),
        ],
        eval: eval_regularity,
    },
    SuiteDef {
        name: "thm-8way",
        slots: &[
            slot("a", Any),
            slot("b", Any),
            slot("c", Any),
            slot("v", Weight),
            slot("w", Weight),
        ],
        eval: eval_thm_8way,
    },
    SuiteDef {
        name: "thm-5way",
        slots: &[
            slot("a", Any),
            slot("b", Any),
            slot("c", Any),
            slot("v", Weight),
            slot("w", Weight),
        ],
        eval: eval_thm_5way,
    },
    SuiteDef {
        name: "hybrid-decomp",
        slots: &[
            slot("a", Any),
            slot("b", Any),
            slot("c", Any),
            slot("v", InvWeight),
            slot("w", Weight),
        ],
        eval: eval_hybrid_decomp,
    },
    SuiteDef {
        name: "rann-equalities",
        slots: &[
            slot("a", Any),
            slot("b", Any),
            slot("c", Any),
            slot("v", InvWeight),
            slot("w", Weight),
        ],
        eval: eval_rann_equalities,
    },
    SuiteDef {
        name: "group-iff",
        slots: &[
            slot("a", Any),
            slot("b", Any),
            slot("c", Any),
            slot("v", InvWeight),
            slot("w", Weight),
        ],
        eval: eval_group_iff,
    },
    SuiteDef {
        name: "hybrid-regular",
        slots: &[
            slot("a", Any),
            slot("b", Any),
            slot("c", Any),
            slot("v", InvWeight),
            slot("w", Weight),
        ],
        eval: eval_hybrid_regular,
    },
    SuiteDef {
        name: "along-d-7way",
        slots: &[slot("a", Any), slot("d", Any), slot("v", InvWeight), slot("w", Weight)],
        eval: eval_along_d_7way,
    },
    SuiteDef {
        name: "along-e-8way",
        slots: &[slot("a", Any), slot("e", Any), slot("v", InvWeight), slot("w", Weight)],
        eval: eval_along_e_8way,
    },
    SuiteDef {
        name: "bott-duffin-4way",
        slots: &[
            slot("a", Any),
            slot("e", Idempotent),
            slot("f", Idempotent),
            slot("v", Weight),
            slot("w", Weight),
        ],
        eval: eval_bott_duffin_4way,
    },
    SuiteDef {
        name: "reverse-order",
        slots: &[
            slot("s", Any),
            slot("t", Any),
            slot("b", ScalarMat),
            slot("c", ScalarMat),
            slot("v", InvWeight),
            slot("w", Weight),
        ],
        eval: eval_reverse_order,
    },
    SuiteDef {
        name: "sum-formula",
        slots: &[
            slot("a1", Any),
            slot("a2", Any),
            slot("b", Any),
            slot("c", Any),
            slot("v", InvWeight),
            slot("w", InvWeight),
        ],
        eval: eval_sum_formula,
    },
    SuiteDef {
        name: "commuting-transport",
        slots: &[
            slot("a", Any),
            slot("b", Any),
            slot("c", Any),
            slot("r", ScalarMat),
            slot("v", InvWeight),
            slot("w", InvWeight),
        ],
        eval: eval_commuting_transport,
    },
];

pub fn suite_names() -> Vec<&'static str> {
    SUITES.iter().map(|s| s.name).collect()
}

pub fn run_suite(name: &str, space: &InstanceSpace) -> Result<SuiteResult, Error> {
    let def = SUITES
        .iter()
        .find(|s| s.name == name)
        .ok_or_else(|| Error::UnknownSuite(name.to_string()))?;
    let start = Instant::now();
    let mut tested = 0u64;
    let mut skipped = 0u64;
    let mut failures = Vec::new();
    for_each_instance(space, def.slots, &mut |inst| {
        for c in &space.constraints {
            if !constraint_holds(*c, &inst)? {
                skipped += 1;
                return Ok(());
            }
        }
        match (def.eval)(&inst)? {
            Outcome::Skip => skipped += 1,
            Outcome::Pass => tested += 1,
            Outcome::Fail(props) => {
                tested += 1;
                for property in props {
                    failures.push(SuiteFailure {
                        suite: def.name.to_string(),
                        property,
                        instance: inst.clone(),
                    });
                }
            }
        }
        Ok(())
    })?;
    Ok(SuiteResult {
        suite: name.to_string(),
        tested,
        skipped,
        failures,
        elapsed_ms: start.elapsed().as_millis(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "lowercase")]
pub enum ReplayOutcome {
    Skipped,
    Passed,
    Failed { properties: Vec<String> },
}

/// Re-runs one suite's property check on a single recorded instance.
pub fn replay(suite: &str, inst: &Instance) -> Result<ReplayOutcome, Error> {
    let def = SUITES
        .iter()
        .find(|s| s.name == suite)
        .ok_or_else(|| Error::UnknownSuite(suite.to_string()))?;
    Ok(match (def.eval)(inst)? {
        Outcome::Skip => ReplayOutcome::Skipped,
        Outcome::Pass => ReplayOutcome::Passed,
        Outcome::Fail(properties) => ReplayOutcome::Failed { properties },
    })
}

// ---------------------------------------------------------------------------
// instance streams
// ---------------------------------------------------------------------------

fn exhaustive_candidates(space: &InstanceSpace, kind: SlotKind) -> Result<Vec<Matrix>, Error> {
    let ring = &space.ring;
    let k = space.k;
    if matrix_count(ring, k).is_none() {
        return Err(Error::BudgetExceeded(
            "exhaustive mode requires a finite coefficient ring".into(),
        ));
    }
    Ok(match kind {
        Any => all_matrices(ring, k).expect("finite").collect(),
        Weight | InvWeight => vec![Matrix::one(ring, k)],
        Idempotent => all_matrices(ring, k)
            .expect("finite")
            .filter(is_idempotent)
            .collect(),
        ScalarMat => {
            let n = ring.size().expect("finite");
            (0..n)
                .map(|s| Matrix::scalar(ring, k, &crate::ring::Scalar::Residue(s)))
                .collect()
        }
    })
}

fn for_each_instance(
    space: &InstanceSpace,
    slots: &[Slot],
    f: &mut dyn FnMut(Instance) -> Result<(), Error>,
) -> Result<(), Error> {
    match space.mode {
        Mode::Exhaustive => {
            let lists: Vec<Vec<Matrix>> = slots
                .iter()
                .map(|s| exhaustive_candidates(space, s.kind))
                .collect::<Result<_, _>>()?;
            if lists.iter().any(Vec::is_empty) {
                return Ok(());
            }
            let total: u128 = lists.iter().map(|l| l.len() as u128).product();
            if total > budget() as u128 {
                return Err(Error::BudgetExceeded(format!(
                    "{total} candidate tuples exceed the budget of {}",
                    budget()
                )));
            }
            let mut idx = vec![0usize; lists.len()];
            loop {
                let mut inst = Instance::new(&space.ring, space.k);
                for (pos, s) in slots.iter().enumerate() {
                    inst.set(s.name, lists[pos][idx[pos]].clone());
                }
                f(inst)?;
                let mut pos = lists.len();
                loop {
                    if pos == 0 {
                        return Ok(());
                    }
                    pos -= 1;
                    idx[pos] += 1;
                    if idx[pos] < lists[pos].len() {
                        break;
                    }
                    idx[pos] = 0;
                }
            }
        }
        Mode::Random { seed, count } => {
            let mut rng = rng_for(seed);
            for _ in 0..count {
                let mut inst = Instance::new(&space.ring, space.k);
                for s in slots {
                    let m = match s.kind {
                        Any | Weight => random_matrix(&space.ring, space.k, &mut rng),
                        InvWeight => random_invertible(&space.ring, space.k, &mut rng),
                        Idempotent => random_idempotent(&space.ring, space.k, &mut rng),
                        ScalarMat => random_scalar_matrix(&space.ring, space.k, &mut rng),
                    };
                    inst.set(s.name, m);
                }
                f(inst)?;
            }
            Ok(())
        }
    }
}

fn finite_elements(inst: &Instance) -> Result<Vec<Matrix>, Error> {
    all_matrices(&inst.ring, inst.k)
        .map(Iterator::collect)
        .ok_or_else(|| Error::BadInput("this suite requires a finite coefficient ring".into()))
}

// ---------------------------------------------------------------------------
// element-level decomposition checks for Z_n (n <= 4, k <= 2)
// ---------------------------------------------------------------------------

fn require_small_zn(ring: &RingSpec, k: usize) -> Result<(), Error> {
    match ring.size() {
        Some(n) if n <= 4 && k <= 2 => Ok(()),
        _ => Err(Error::BadInput(
            "decomposition checks over Z_n are supported for n <= 4, k <= 2 only".into(),
        )),
    }
}

fn elem_set(elems: &[Matrix]) -> HashSet<u64> {
    elems.iter().map(encode).collect()
}

/// Every element decomposes as u + h with u in `us`, h in `h_set`, and the
/// intersection is trivial.
fn elem_direct_sum(all: &[Matrix], us: &[Matrix], h_set: &HashSet<u64>) -> bool {
    let zero_code = encode(&Matrix::zero(all[0].ring(), all[0].k()));
    let u_set = elem_set(us);
    let inter_trivial = u_set
        .intersection(h_set)
        .all(|&code| code == zero_code);
    inter_trivial && all.iter().all(|r| us.iter().any(|u| h_set.contains(&encode(&(r - u)))))
}

fn elem_inter_trivial(a_set: &HashSet<u64>, b_set: &HashSet<u64>, zero_code: u64) -> bool {
    a_set.intersection(b_set).all(|&code| code == zero_code)
}

/// R = R·m ⊕ lann(b), decided by ranks over fields and by element
/// enumeration over small Z_n.
fn left_decomposition(inst: &Instance, m: &Matrix, b: &Matrix) -> Result<bool, Error> {
    if inst.ring.is_field() {
        direct_sum_check(&left_ideal_basis(m), &lann(b))
    } else {
        require_small_zn(&inst.ring, inst.k)?;
        let all = finite_elements(inst)?;
        let us: Vec<Matrix> = dedup(all.iter().map(|x| x * m));
        let h: HashSet<u64> = all
            .iter()
            .filter(|x| (*x * b).is_zero())
            .map(encode)
            .collect();
        Ok(elem_direct_sum(&all, &us, &h))
    }
}

/// R = m·R ⊕ rann(c).
fn right_decomposition(inst: &Instance, m: &Matrix, c: &Matrix) -> Result<bool, Error> {
    if inst.ring.is_field() {
        direct_sum_check(&right_ideal_basis(m), &rann(c))
    } else {
        require_small_zn(&inst.ring, inst.k)?;
        let all = finite_elements(inst)?;
        let us: Vec<Matrix> = dedup(all.iter().map(|x| m * x));
        let h: HashSet<u64> = all
            .iter()
            .filter(|z| (c * *z).is_zero())
            .map(encode)
            .collect();
        Ok(elem_direct_sum(&all, &us, &h))
    }
}

/// lann(x) ∩ R·g = 0.
fn lann_meets_left_ideal_trivially(inst: &Instance, x: &Matrix, g: &Matrix) -> Result<bool, Error> {
    if inst.ring.is_field() {
        intersection_trivial(&lann(x), &left_ideal_basis(g))
    } else {
        require_small_zn(&inst.ring, inst.k)?;
        let all = finite_elements(inst)?;
        let zero_code = encode(&Matrix::zero(&inst.ring, inst.k));
        let a: HashSet<u64> = all
            .iter()
            .filter(|z| (*z * x).is_zero())
            .map(encode)
            .collect();
        let b: HashSet<u64> = all.iter().map(|z| encode(&(z * g))).collect();
        Ok(elem_inter_trivial(&a, &b, zero_code))
    }
}

/// rann(x) ∩ g·R = 0.
fn rann_meets_right_ideal_trivially(
    inst: &Instance,
    x: &Matrix,
    g: &Matrix,
) -> Result<bool, Error> {
    if inst.ring.is_field() {
        intersection_trivial(&rann(x), &right_ideal_basis(g))
    } else {
        require_small_zn(&inst.ring, inst.k)?;
        let all = finite_elements(inst)?;
        let zero_code = encode(&Matrix::zero(&inst.ring, inst.k));
        let a: HashSet<u64> = all
            .iter()
            .filter(|z| (x * *z).is_zero())
            .map(encode)
            .collect();
        let b: HashSet<u64> = all.iter().map(|z| encode(&(g * z))).collect();
        Ok(elem_inter_trivial(&a, &b, zero_code))
    }
}

fn dedup(items: impl Iterator<Item = Matrix>) -> Vec<Matrix> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for m in items {
        if seen.insert(encode(&m)) {
            out.push(m);
        }
    }
    out
}

// ---------------------------------------------------------------------------
// suite bodies
// ---------------------------------------------------------------------------

/// For idempotent a: rann(a) = (1-a)R and lann(a) = R(1-a); over fields also
/// the dimension formula dim rann(a) = k(k - rank a).
fn eval_idempotent_ann(inst: &Instance) -> Result<Outcome, Error> {
    let a = inst.get("a")?;
    if !is_idempotent(a) {
        return Ok(Outcome::Skip);
    }
    let one = Matrix::one(&inst.ring, inst.k);
    let complement = &one - a;
    let mut failed = Vec::new();
    if !subspace_equal(&rann(a), &right_ideal_basis(&complement))? {
        failed.push("rann(a)=(1-a)R".to_string());
    }
    if !subspace_equal(&lann(a), &left_ideal_basis(&complement))? {
        failed.push("lann(a)=R(1-a)".to_string());
    }
    if inst.ring.is_field() {
        let k = inst.k;
        let r = rank(a)?;
        if rann(a).dim() != k * (k - r) || lann(a).dim() != k * (k - r) {
            failed.push("dim ann(a) = k(k - rank a)".to_string());
        }
    }
    Ok(Outcome::from_failures(failed))
}

/// Ideal containments vs annihilator containments for the pair (d, y):
/// Rwy ⊆ Rd forces rann(d) ⊆ rann(wy) (and the regular converse), mirrored
/// on the right.
fn eval_prop_annihilators(inst: &Instance) -> Result<Outcome, Error> {
    let d = inst.get("d")?;
    let y = inst.get("y")?;
    let v = inst.get("v")?;
    let w = inst.get("w")?;
    let wy = w * y;
    let yv = y * v;
    let mut failed = Vec::new();

    if in_left_ideal(d, &wy) && !ann_contained(d, &wy, Side::Right)? {
        failed.push("Rwy in Rd => rann(d) in rann(wy)".to_string());
    }
    if left_ideal_eq(d, &wy) && !ann_equal(&wy, d, Side::Right)? {
        failed.push("Rwy = Rd => rann(wy) = rann(d)".to_string());
    }
    if in_right_ideal(d, &yv) && !ann_contained(d, &yv, Side::Left)? {
        failed.push("yvR in dR => lann(d) in lann(yv)".to_string());
    }
    if right_ideal_eq(d, &yv) && !ann_equal(&yv, d, Side::Left)? {
        failed.push("yvR = dR => lann(yv) = lann(d)".to_string());
    }
    let d_regular = is_regular(d);
    if ann_contained(d, &wy, Side::Right)? && d_regular && !in_left_ideal(d, &wy) {
        failed.push("rann(d) in rann(wy), d regular => Rwy in Rd".to_string());
    }
    if ann_contained(d, &yv, Side::Left)? && d_regular && !in_right_ideal(d, &yv) {
        failed.push("lann(d) in lann(yv), d regular => yvR in dR".to_string());
    }
    Ok(Outcome::from_failures(failed))
}

/// When the weighted (b,c)-inverse exists, b and c are regular.
fn eval_regularity(inst: &Instance) -> Result<Outcome, Error> {
    let ctx = inst.weighted_context()?;
    if !bc_exists(&ctx).0 {
        return Ok(Outcome::Skip);
    }
    let mut failed = Vec::new();
    if inner_inverse_mat(&ctx.b).is_none() {
        failed.push("b regular".to_string());
    }
    if inner_inverse_mat(&ctx.c).is_none() {
        failed.push("c regular".to_string());
    }
    Ok(Outcome::from_failures(failed))
}

/// Eight equivalent descriptions of "y is the weighted (b,c)-inverse":
/// conditions (i)-(vi) agree for every candidate y, and the y-free conditions
/// (vii), (viii) agree with existence.
fn eval_thm_8way(inst: &Instance) -> Result<Outcome, Error> {
    let ctx = inst.weighted_context()?;
    let all = finite_elements(inst)?;
    let (a, b, c, v, w) = (&ctx.a, &ctx.b, &ctx.c, &ctx.v, &ctx.w);
    let exists = bc_exists(&ctx).0;
    let b_inner = inner_inverse_mat(b);
    let c_inner = inner_inverse_mat(c);
    let mut failed = Vec::new();

    let (c7, c8) = match (&b_inner, &c_inner) {
        (Some(bi), Some(ci)) => {
            let bb = b * bi;
            let cc = ci * c;
            let mid = prod(&[&cc, v, a, w, &bb]);
            let c7 = in_left_ideal(&mid, &bb) && in_right_ideal(&mid, &cc);
            let t = solve_left_mat(&mid, &bb);
            let s = solve_right_mat(&mid, &cc);
            let c8 = match (t, s) {
                (Some(t), Some(s)) => &t * &mid == bb && &mid * &s == cc,
                _ => false,
            };
            (c7, c8)
        }
        _ => (false, false),
    };
    if c7 != exists {
        failed.push("(vii) <=> existence".to_string());
    }
    if c8 != exists {
        failed.push("(viii) <=> existence".to_string());
    }

    let mut any_definition_hit = false;
    for y in &all {
        let c1 = is_bc_inverse(&ctx, y);
        any_definition_hit |= c1;
        let yvawy = prod(&[y, v, a, w, y]) == *y;
        let yv = y * v;
        let wy = w * y;
        let yv_br = right_ideal_eq(b, &yv);
        let wy_cl = left_ideal_eq(c, &wy);
        let l_eq = ann_equal(&yv, b, Side::Left)?;
        let r_eq = ann_equal(&wy, c, Side::Right)?;
        let c2 = yvawy && yv_br && wy_cl;
        let c3 = yvawy && l_eq && wy_cl && b_inner.is_some();
        let c4 = yvawy && yv_br && r_eq && c_inner.is_some();
        let c5 = yvawy && l_eq && r_eq && b_inner.is_some() && c_inner.is_some();
        let c6 = match (&b_inner, &c_inner) {
            (Some(bi), Some(ci)) => {
                let bb = b * bi;
                let cc = ci * c;
                &bb * y == *y
                    && prod(&[y, v, a, w, &bb]) == bb
                    && y * &cc == *y
                    && prod(&[&cc, v, a, w, y]) == cc
            }
            _ => false,
        };
        if !(c1 == c2 && c2 == c3 && c3 == c4 && c4 == c5 && c5 == c6) {
            failed.push(format!("(i)-(vi) disagree at y={}", encode(y)));
        }
    }
    if any_definition_hit != exists {
        failed.push("definition satisfiable <=> existence lemma".to_string());
    }
    Ok(Outcome::from_failures(failed))
}

/// Five equivalent existence criteria through one-sided decompositions.
fn eval_thm_5way(inst: &Instance) -> Result<Outcome, Error> {
    let ctx = inst.weighted_context()?;
    let m = ctx.cvawb();
    let vaw = ctx.vaw();
    let cvaw = ctx.cvaw();
    let vawb = ctx.vawb();

    let s1 = bc_exists(&ctx).0;
    let dec_left = left_decomposition(inst, &cvaw, &ctx.b)?;
    let tri_left = lann_meets_left_ideal_trivially(inst, &vaw, &ctx.c)?;
    let dec_right = right_decomposition(inst, &vawb, &ctx.c)?;
    let tri_right = rann_meets_right_ideal_trivially(inst, &vaw, &ctx.b)?;
    let m_regular = is_regular(&m);
    let s2 = is_regular(&ctx.b) && dec_left && tri_left;
    let s3 = dec_left && tri_left && m_regular;
    let s4 = is_regular(&ctx.c) && dec_right && tri_right;
    let s5 = dec_right && tri_right && m_regular;

    let mut failed = Vec::new();
    for (name, val) in [("(ii)", s2), ("(iii)", s3), ("(iv)", s4), ("(v)", s5)] {
        if val != s1 {
            failed.push(format!("{name} <=> (i)"));
        }
    }
    Ok(Outcome::from_failures(failed))
}

/// Hybrid existence iff R = vawb·R ⊕ rann(c) and rann(vaw) ∩ bR = 0.
fn eval_hybrid_decomp(inst: &Instance) -> Result<Outcome, Error> {
    let ctx = inst.weighted_context()?;
    if !ctx.weight_invertible() {
        return Ok(Outcome::Skip);
    }
    let lhs = hybrid_exists(&ctx).0;
    let rhs = right_decomposition(inst, &ctx.vawb(), &ctx.c)?
        && rann_meets_right_ideal_trivially(inst, &ctx.vaw(), &ctx.b)?;
    if lhs != rhs {
        return Ok(Outcome::Fail(vec![
            "exists <=> R = vawbR + rann(c) direct with rann(vaw) meet bR = 0".to_string(),
        ]));
    }
    Ok(Outcome::Pass)
}

/// When the hybrid inverse exists: rann(vawb) = rann(b); and under
/// rann(b) = rann(c), rann(vawbs) = rann(vawb) for any s with
/// vawb = (vawb)²s.
fn eval_rann_equalities(inst: &Instance) -> Result<Outcome, Error> {
    let ctx = inst.weighted_context()?;
    if !ctx.weight_invertible() || !hybrid_exists(&ctx).0 {
        return Ok(Outcome::Skip);
    }
    let vawb = ctx.vawb();
    let mut failed = Vec::new();
    if !ann_equal(&vawb, &ctx.b, Side::Right)? {
        failed.push("rann(vawb)=rann(b)".to_string());
    }
    if ann_equal(&ctx.b, &ctx.c, Side::Right)? {
        let sq = &vawb * &vawb;
        match solve_right_mat(&sq, &vawb) {
            None => failed.push("some s with vawb=(vawb)^2 s".to_string()),
            Some(s) => {
                let vawbs = &vawb * &s;
                if !ann_equal(&vawbs, &vawb, Side::Right)? {
                    failed.push("rann(vawbs)=rann(vawb)".to_string());
                }
            }
        }
    }
    Ok(Outcome::from_failures(failed))
}

/// Group-inverse criterion for the hybrid inverse: under the rann equalities
/// rann(vawb) = rann(b) = rann(c), existence iff vawb is group invertible,
/// with value b(vawb)#; and given existence, the rann equalities force group
/// invertibility.
///
/// The converse of the last part (given existence, group invertibility
/// forcing the rann equalities) is not checked: it fails, e.g. over
/// M_2(GF(2)) with a = b = e11, c = e11 + e12, v = w = 1, where the hybrid
/// inverse e11 + e12 exists and vawb = e11 is group invertible while
/// rann(b) differs from rann(c).
fn eval_group_iff(inst: &Instance) -> Result<Outcome, Error> {
    let ctx = inst.weighted_context()?;
    if !ctx.weight_invertible() {
        return Ok(Outcome::Skip);
    }
    let vawb = ctx.vawb();
    let gi = is_group_invertible(&vawb);
    let ranns_equal =
        ann_equal(&vawb, &ctx.b, Side::Right)? && ann_equal(&ctx.b, &ctx.c, Side::Right)?;
    let hy = hybrid_exists(&ctx).0;
    let mut evaluated = false;
    let mut failed = Vec::new();

    if ranns_equal {
        evaluated = true;
        if hy != gi {
            failed.push("hybrid exists <=> vawb group invertible".to_string());
        }
        if hy && gi {
            let g = group_inverse(&vawb)?.expect("group invertible");
            let y = &ctx.b * &g.value;
            if !is_hybrid_inverse(&ctx, &y) {
                failed.push("b(vawb)# is the hybrid inverse".to_string());
            }
            let direct = hybrid_inverse(&ctx)?;
            if direct.value.as_ref() != Some(&y) {
                failed.push("group route matches the direct construction".to_string());
            }
        }
    }
    if hy && ranns_equal {
        evaluated = true;
        if !gi {
            failed.push("rann equalities force vawb group invertible".to_string());
        }
    }
    if !evaluated {
        return Ok(Outcome::Skip);
    }
    Ok(Outcome::from_failures(failed))
}

/// Given the hybrid inverse exists: the (b,c)-inverse exists iff cvawb is
/// regular iff c is regular.
fn eval_hybrid_regular(inst: &Instance) -> Result<Outcome, Error> {
    let ctx = inst.weighted_context()?;
    if !ctx.weight_invertible() || !hybrid_exists(&ctx).0 {
        return Ok(Outcome::Skip);
    }
    let bc = bc_exists(&ctx).0;
    let m_reg = is_regular(&ctx.cvawb());
    let c_reg = is_regular(&ctx.c);
    if bc == m_reg && m_reg == c_reg {
        Ok(Outcome::Pass)
    } else {
        Ok(Outcome::Fail(vec![
            "bc exists <=> cvawb regular <=> c regular".to_string(),
        ]))
    }
}

/// The seven equivalent descriptions of the inverse along d agree for every
/// candidate y.
fn eval_along_d_7way(inst: &Instance) -> Result<Outcome, Error> {
    let a = inst.get("a")?;
    let d = inst.get("d")?;
    let v = inst.get("v")?;
    let w = inst.get("w")?;
    if !(v.is_invertible() || w.is_invertible()) {
        return Ok(Outcome::Skip);
    }
    let all = finite_elements(inst)?;
    let ctx = WeightedContext::new(a.clone(), d.clone(), d.clone(), v.clone(), w.clone())?;
    let mut failed = Vec::new();
    for y in &all {
        let chars = seven_characterizations(&ctx, y);
        let first = chars[0].1;
        if chars.iter().any(|(_, val)| *val != first) {
            failed.push(format!("seven characterizations disagree at y={}", encode(y)));
        }
    }
    Ok(Outcome::from_failures(failed))
}

/// The eight equivalent descriptions of the inverse along a regular element
/// agree for every candidate y.
fn eval_along_e_8way(inst: &Instance) -> Result<Outcome, Error> {
    let a = inst.get("a")?;
    let e = inst.get("e")?;
    let v = inst.get("v")?;
    let w = inst.get("w")?;
    if !(v.is_invertible() || w.is_invertible()) || !is_regular(e) {
        return Ok(Outcome::Skip);
    }
    let all = finite_elements(inst)?;
    let ctx = WeightedContext::new(a.clone(), e.clone(), e.clone(), v.clone(), w.clone())?;
    let mut failed = Vec::new();
    for y in &all {
        let yvawe_eq = prod(&[y, v, a, w, e]) == *e;
        let evawy_eq = prod(&[e, v, a, w, y]) == *e;
        let yvawy_eq = prod(&[y, v, a, w, y]) == *y;
        let wy = w * y;
        let yv = y * v;
        let o = [
            is_along_d_inverse(a, e, v, w, y),
            yvawe_eq
                && evawy_eq
                && in_left_ideal(e, &wy)
                && ann_contained(e, &yv, Side::Left)?,
            yvawy_eq && in_left_ideal(e, &wy) && ann_equal(&yv, e, Side::Left)?,
            yvawe_eq
                && evawy_eq
                && in_right_ideal(e, &yv)
                && ann_contained(e, &wy, Side::Right)?,
            yvawy_eq && in_right_ideal(e, &yv) && ann_equal(&wy, e, Side::Right)?,
            is_hybrid_inverse(&ctx, y),
            is_bc_inverse(&ctx, y),
            is_annihilator_inverse(&ctx, y),
        ];
        if o.iter().any(|&val| val != o[0]) {
            failed.push(format!("eight characterizations disagree at y={}", encode(y)));
        }
    }
    Ok(Outcome::from_failures(failed))
}

/// Four equivalent invertibility conditions for the idempotent pair (e, f):
/// sandwich memberships iff witnesses m, n exist making p = m·fvawe + 1 - e
/// and q = fvawe·n + 1 - f invertible (with their side equations).
fn eval_bott_duffin_4way(inst: &Instance) -> Result<Outcome, Error> {
    let a = inst.get("a")?;
    let e = inst.get("e")?;
    let f = inst.get("f")?;
    let v = inst.get("v")?;
    let w = inst.get("w")?;
    if !is_idempotent(e) || !is_idempotent(f) {
        return Ok(Outcome::Skip);
    }
    let all = finite_elements(inst)?;
    let one = Matrix::one(&inst.ring, inst.k);
    let g = prod(&[f, v, a, w, e]);

    let b1 = sandwich_witness(e, &g, e).is_some() && sandwich_witness(&g, f, f).is_some();

    let mut b2 = false;
    let mut p_invertible_exists = false;
    for m in &all {
        let p = &(m * &g) + &(&one - e);
        if !p.is_invertible() {
            continue;
        }
        p_invertible_exists = true;
        if b2 {
            continue;
        }
        let gp = &g * &p.inverse()?;
        if solve_right_mat(&gp, f).is_some() {
            b2 = true;
        }
    }
    let mut b3 = false;
    let mut q_invertible_exists = false;
    for n in &all {
        let q = &(&g * n) + &(&one - f);
        if !q.is_invertible() {
            continue;
        }
        q_invertible_exists = true;
        if b3 {
            continue;
        }
        let qg = &q.inverse()? * &g;
        if solve_left_mat(&qg, e).is_some() {
            b3 = true;
        }
    }
    let b4 = p_invertible_exists && q_invertible_exists;

    let mut failed = Vec::new();
    for (name, val) in [("(ii)", b2), ("(iii)", b3), ("(iv)", b4)] {
        if val != b1 {
            failed.push(format!("{name} <=> (i)"));
        }
    }
    Ok(Outcome::from_failures(failed))
}

/// Reverse order law on instances with central (b, c).
fn eval_reverse_order(inst: &Instance) -> Result<Outcome, Error> {
    let s = inst.get("s")?;
    let t = inst.get("t")?;
    let b = inst.get("b")?;
    let c = inst.get("c")?;
    let v = inst.get("v")?;
    let w = inst.get("w")?;
    match reverse_order(s, t, b, c, v, w) {
        Err(Error::Precondition(_)) => Ok(Outcome::Skip),
        Err(e) => Err(e),
        Ok(rep) => {
            let failed: Vec<String> = rep
                .checks
                .iter()
                .filter(|(_, ok)| !ok)
                .map(|(name, _)| format!("reverse order: {name}"))
                .collect();
            Ok(Outcome::from_failures(failed))
        }
    }
}

/// Sum formula for annihilator inverses with shared (b, c).
fn eval_sum_formula(inst: &Instance) -> Result<Outcome, Error> {
    let a1 = inst.get("a1")?;
    let a2 = inst.get("a2")?;
    let b = inst.get("b")?;
    let c = inst.get("c")?;
    let v = inst.get("v")?;
    let w = inst.get("w")?;
    match sum_formula(a1, a2, b, c, v, w) {
        Err(Error::Precondition(_)) => Ok(Outcome::Skip),
        Err(e) => Err(e),
        Ok(rep) => {
            let failed: Vec<String> = rep
                .checks
                .iter()
                .filter(|(_, ok)| !ok)
                .map(|(name, _)| format!("sum formula: {name}"))
                .collect();
            Ok(Outcome::from_failures(failed))
        }
    }
}

/// Commutation transport with a scalar r over a shared context.
fn eval_commuting_transport(inst: &Instance) -> Result<Outcome, Error> {
    let a = inst.get("a")?;
    let b = inst.get("b")?;
    let c = inst.get("c")?;
    let r = inst.get("r")?;
    let v = inst.get("v")?;
    let w = inst.get("w")?;
    match commuting_transport(a, a, b, b, c, c, v, w, r) {
        Err(Error::Precondition(_)) => Ok(Outcome::Skip),
        Err(e) => Err(e),
        Ok(rep) => {
            let failed: Vec<String> = rep
                .checks
                .iter()
                .filter(|(_, ok)| !ok)
                .map(|(name, _)| format!("transport: {name}"))
                .collect();
            Ok(Outcome::from_failures(failed))
        }
    }
}
