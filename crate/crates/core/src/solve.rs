//! Linear machinery behind every existence test: solving a·x = c and x·a = b,
//! annihilator bases, sandwich memberships l·X·r = t, inner inverses, and
//! direct-sum decomposition checks.
//!
//! Over fields everything reduces to Gaussian elimination (first nonzero pivot
//! in column order, for reproducibility). Over Z_n, systems are solved through
//! the Smith normal form of the integer lift, which is exact and needs no
//! search.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::matrix::Matrix;
use crate::ring::{RingSpec, Scalar};
use crate::snf::{self, Snf};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// A basis (over fields) or generating set (over Z_n) for a subspace of M_k
/// viewed as a k²-dimensional space: annihilators, ideals, kernels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubspaceBasis {
    pub ring: RingSpec,
    pub k: usize,
    pub side: Side,
    pub vectors: Vec<Matrix>,
    /// Additive orders of the generators over Z_n; `None` over fields.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub invariant_factors: Option<Vec<u64>>,
}

impl SubspaceBasis {
    /// Dimension over a field; generator count over Z_n.
    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    /// Membership of `m` in the generated subspace/submodule.
    pub fn contains(&self, m: &Matrix) -> Result<bool, Error> {
        if m.ring() != &self.ring {
            return Err(Error::RingMismatch(m.ring().name(), self.ring.name()));
        }
        if m.k() != self.k {
            return Err(Error::DimensionMismatch(m.k(), self.k));
        }
        Ok(span_contains(&self.ring, &self.vectors, m))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CertRole {
    MembershipRight,
    MembershipLeft,
    InnerInverse,
    Regularity,
    Decomposition,
}

/// Named witness elements; replaying the witness equations yields exact
/// equality (the issuing operation states which equations those are).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub role: CertRole,
    pub witnesses: BTreeMap<String, Matrix>,
}

impl Certificate {
    pub fn new(role: CertRole, witnesses: impl IntoIterator<Item = (&'static str, Matrix)>) -> Self {
        Certificate {
            role,
            witnesses: witnesses
                .into_iter()
                .map(|(k, v)| (k.to_string(), v))
                .collect(),
        }
    }

    pub fn witness(&self, name: &str) -> Option<&Matrix> {
        self.witnesses.get(name)
    }
}

// ---------------------------------------------------------------------------
// unified linear systems over the coefficient ring
// ---------------------------------------------------------------------------

pub(crate) enum LinSolver {
    Field(FieldSolver),
    Zn(ZnSolver),
}

impl LinSolver {
    pub(crate) fn new(ring: &RingSpec, rows: Vec<Vec<Scalar>>, cols: usize) -> LinSolver {
        match ring.modulus() {
            Some(n) if !ring.is_field() => LinSolver::Zn(ZnSolver::new(n, rows, cols)),
            _ => LinSolver::Field(FieldSolver::new(ring, rows, cols)),
        }
    }

    pub(crate) fn solve(&self, rhs: &[Scalar]) -> Option<Vec<Scalar>> {
        match self {
            LinSolver::Field(f) => f.solve(rhs),
            LinSolver::Zn(z) => z.solve(rhs),
        }
    }

    pub(crate) fn kernel(&self) -> Vec<Vec<Scalar>> {
        match self {
            LinSolver::Field(f) => f.kernel(),
            LinSolver::Zn(z) => z.kernel().0,
        }
    }

    pub(crate) fn kernel_with_orders(&self) -> (Vec<Vec<Scalar>>, Option<Vec<u64>>) {
        match self {
            LinSolver::Field(f) => (f.kernel(), None),
            LinSolver::Zn(z) => {
                let (gens, orders) = z.kernel();
                (gens, Some(orders))
            }
        }
    }
}

/// Row-reduced system over a field, factored once so many right-hand sides can
/// be solved against the same coefficient matrix.
pub(crate) struct FieldSolver {
    ring: RingSpec,
    cols: usize,
    rref: Vec<Vec<Scalar>>,
    /// transform · A = rref
    transform: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl FieldSolver {
    pub(crate) fn new(ring: &RingSpec, mut rows: Vec<Vec<Scalar>>, cols: usize) -> FieldSolver {
        debug_assert!(ring.is_field());
        let nrows = rows.len();
        let mut transform: Vec<Vec<Scalar>> = (0..nrows)
            .map(|i| {
                (0..nrows)
                    .map(|j| if i == j { ring.one() } else { ring.zero() })
                    .collect()
            })
            .collect();
        let mut pivots = Vec::new();
        let mut next = 0usize;
        for col in 0..cols {
            let Some(p) = (next..nrows).find(|&r| !rows[r][col].is_zero()) else {
                continue;
            };
            rows.swap(next, p);
            transform.swap(next, p);
            let pinv = ring.inv(&rows[next][col]).expect("nonzero pivot");
            scale_row(ring, &mut rows[next], &pinv);
            scale_row(ring, &mut transform[next], &pinv);
            for r in 0..nrows {
                if r == next || rows[r][col].is_zero() {
                    continue;
                }
                let factor = rows[r][col].clone();
                sub_scaled(ring, &mut rows, r, next, &factor);
                sub_scaled(ring, &mut transform, r, next, &factor);
            }
            pivots.push(col);
            next += 1;
            if next == nrows {
                break;
            }
        }
        FieldSolver {
            ring: ring.clone(),
            cols,
            rref: rows,
            transform,
            pivots,
        }
    }

    pub(crate) fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// One solution with free variables set to zero, or `None`.
    pub(crate) fn solve(&self, rhs: &[Scalar]) -> Option<Vec<Scalar>> {
        let ring = &self.ring;
        let y: Vec<Scalar> = self
            .transform
            .iter()
            .map(|trow| dot(ring, trow, rhs))
            .collect();
        for i in self.pivots.len()..y.len() {
            if !y[i].is_zero() {
                return None;
            }
        }
        let mut x = vec![ring.zero(); self.cols];
        for (i, &pc) in self.pivots.iter().enumerate() {
            x[pc] = y[i].clone();
        }
        Some(x)
    }

    /// Canonical kernel basis (one vector per free column).
    pub(crate) fn kernel(&self) -> Vec<Vec<Scalar>> {
        let ring = &self.ring;
        let pivot_set: Vec<bool> = {
            let mut v = vec![false; self.cols];
            for &p in &self.pivots {
                v[p] = true;
            }
            v
        };
        let mut basis = Vec::new();
        for f in 0..self.cols {
            if pivot_set[f] {
                continue;
            }
            let mut v = vec![ring.zero(); self.cols];
            v[f] = ring.one();
            for (i, &pc) in self.pivots.iter().enumerate() {
                v[pc] = ring.neg(&self.rref[i][f]);
            }
            basis.push(v);
        }
        basis
    }
}

/// Z_n system factored through the Smith normal form of the integer lift.
pub(crate) struct ZnSolver {
    n: u64,
    rows: usize,
    cols: usize,
    snf: Snf,
}

impl ZnSolver {
    pub(crate) fn new(n: u64, rows: Vec<Vec<Scalar>>, cols: usize) -> ZnSolver {
        let nrows = rows.len();
        let lift: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|s| match s {
                        Scalar::Residue(v) => BigInt::from(*v),
                        Scalar::Rational(_) => panic!("residue scalar expected"),
                    })
                    .collect()
            })
            .collect();
        ZnSolver {
            n,
            rows: nrows,
            cols,
            snf: snf::smith(&lift),
        }
    }

    fn diag_mod_n(&self, i: usize) -> u64 {
        (&self.snf.d[i] % BigInt::from(self.n))
            .to_owned()
            .try_into()
            .unwrap()
    }

    pub(crate) fn solve(&self, rhs: &[Scalar]) -> Option<Vec<Scalar>> {
        let n = self.n;
        let b: Vec<u64> = rhs
            .iter()
            .map(|s| match s {
                Scalar::Residue(v) => *v,
                Scalar::Rational(_) => panic!("residue scalar expected"),
            })
            .collect();
        // b' = U·b mod n
        let bp: Vec<u64> = (0..self.rows)
            .map(|i| {
                let mut acc = BigInt::from(0);
                for j in 0..self.rows {
                    acc += &self.snf.u[i][j] * BigInt::from(b[j]);
                }
                acc.mod_floor(&BigInt::from(n)).try_into().unwrap()
            })
            .collect();
        let dim = self.snf.d.len();
        let mut y = vec![0u64; self.cols];
        for i in 0..self.rows {
            if i < dim {
                let d = self.diag_mod_n(i);
                let g = d.gcd(&n);
                if !bp[i].is_multiple_of(g) {
                    return None;
                }
                if g == n {
                    // d ≡ 0: any y works, keep 0
                    continue;
                }
                let n_g = n / g;
                let inv = inv_mod(d / g % n_g, n_g).expect("unit after dividing by gcd");
                y[i] = ((bp[i] / g % n_g) as u128 * inv as u128 % n_g as u128) as u64;
            } else if bp[i] != 0 {
                return None;
            }
        }
        // x = V·y mod n
        Some(self.apply_v(&y))
    }

    fn apply_v(&self, y: &[u64]) -> Vec<Scalar> {
        let n = BigInt::from(self.n);
        (0..self.cols)
            .map(|i| {
                let mut acc = BigInt::from(0);
                for j in 0..self.cols {
                    acc += &self.snf.v[i][j] * BigInt::from(y[j]);
                }
                Scalar::Residue(acc.mod_floor(&n).try_into().unwrap())
            })
            .collect()
    }

    /// Generators of the solution module of the homogeneous system, with their
    /// additive orders.
    pub(crate) fn kernel(&self) -> (Vec<Vec<Scalar>>, Vec<u64>) {
        let n = self.n;
        let dim = self.snf.d.len();
        let mut gens = Vec::new();
        let mut orders = Vec::new();
        for i in 0..self.cols {
            let mult = if i < dim {
                let g = self.diag_mod_n(i).gcd(&n);
                if g == 1 {
                    continue; // unit diagonal entry: no kernel contribution
                }
                n / g
            } else {
                1 // column beyond the diagonal: fully free
            };
            let mut y = vec![0u64; self.cols];
            y[i] = mult % n;
            let gen = self.apply_v(&y);
            if gen.iter().all(|s| s.is_zero()) {
                continue;
            }
            // mult divides n, so the additive order of the generator is n/mult
            orders.push(n / mult);
            gens.push(gen);
        }
        (gens, orders)
    }
}

fn inv_mod(a: u64, n: u64) -> Option<u64> {
    if n == 1 {
        return Some(0);
    }
    let (g, x, _) = crate::ring::egcd(a as i128, n as i128);
    (g == 1).then(|| x.rem_euclid(n as i128) as u64)
}

fn scale_row(ring: &RingSpec, row: &mut [Scalar], factor: &Scalar) {
    for x in row.iter_mut() {
        *x = ring.mul(x, factor);
    }
}

fn sub_scaled(ring: &RingSpec, rows: &mut [Vec<Scalar>], target: usize, source: usize, factor: &Scalar) {
    for j in 0..rows[target].len() {
        let s = ring.mul(factor, &rows[source][j]);
        rows[target][j] = ring.sub(&rows[target][j], &s);
    }
}

fn dot(ring: &RingSpec, a: &[Scalar], b: &[Scalar]) -> Scalar {
    let mut acc = ring.zero();
    for (x, y) in a.iter().zip(b) {
        acc = ring.add(&acc, &ring.mul(x, y));
    }
    acc
}

// ---------------------------------------------------------------------------
// linear matrix equations  Σ L_t · X · R_t = rhs
// ---------------------------------------------------------------------------

/// Builder for systems that are linear in one unknown matrix X. Each
/// constraint contributes k² scalar equations; unknowns are the k² entries of
/// X in row-major order.
pub(crate) struct MatEq {
    ring: RingSpec,
    k: usize,
    rows: Vec<Vec<Scalar>>,
    rhs: Vec<Scalar>,
}

impl MatEq {
    pub(crate) fn new(ring: &RingSpec, k: usize) -> MatEq {
        MatEq {
            ring: ring.clone(),
            k,
            rows: Vec::new(),
            rhs: Vec::new(),
        }
    }

    /// Adds the constraint Σ_t  left_t · X · right_t = rhs.
    pub(crate) fn constraint(&mut self, terms: &[(&Matrix, &Matrix)], rhs: &Matrix) {
        let k = self.k;
        let ring = self.ring.clone();
        for i in 0..k {
            for j in 0..k {
                let mut row = vec![ring.zero(); k * k];
                for (l, r) in terms {
                    for x in 0..k {
                        for m in 0..k {
                            let coeff = ring.mul(l.at(i, x), r.at(m, j));
                            row[x * k + m] = ring.add(&row[x * k + m], &coeff);
                        }
                    }
                }
                self.rows.push(row);
                self.rhs.push(rhs.at(i, j).clone());
            }
        }
    }

    pub(crate) fn solver(&self) -> LinSolver {
        LinSolver::new(&self.ring, self.rows.clone(), self.k * self.k)
    }

    pub(crate) fn solve(&self) -> Option<Matrix> {
        let x = self.solver().solve(&self.rhs)?;
        Some(unflatten(&self.ring, self.k, &x))
    }

    /// Generators of the homogeneous solution space.
    pub(crate) fn kernel(&self) -> Vec<Matrix> {
        self.solver()
            .kernel()
            .into_iter()
            .map(|v| unflatten(&self.ring, self.k, &v))
            .collect()
    }
}

pub(crate) fn flatten(m: &Matrix) -> Vec<Scalar> {
    m.entries().to_vec()
}

pub(crate) fn unflatten(ring: &RingSpec, k: usize, v: &[Scalar]) -> Matrix {
    Matrix::from_fn(ring, k, |i, j| v[i * k + j].clone())
}

// ---------------------------------------------------------------------------
// public operations
// ---------------------------------------------------------------------------

/// Witness for c ∈ aR: some q with a·q = c.
pub(crate) fn solve_right_mat(a: &Matrix, c: &Matrix) -> Option<Matrix> {
    let ring = a.ring();
    let k = a.k();
    let rows: Vec<Vec<Scalar>> = (0..k)
        .map(|i| (0..k).map(|j| a.at(i, j).clone()).collect())
        .collect();
    let solver = LinSolver::new(ring, rows, k);
    let mut cols = Vec::with_capacity(k);
    for j in 0..k {
        let rhs: Vec<Scalar> = (0..k).map(|i| c.at(i, j).clone()).collect();
        cols.push(solver.solve(&rhs)?);
    }
    Some(Matrix::from_fn(ring, k, |i, j| cols[j][i].clone()))
}

/// Witness for b ∈ Ra: some p with p·a = b.
pub(crate) fn solve_left_mat(a: &Matrix, b: &Matrix) -> Option<Matrix> {
    solve_right_mat(&a.transpose(), &b.transpose()).map(|x| x.transpose())
}

/// Membership of c in the right ideal aR, with witness q (a·q = c).
pub fn solve_right(a: &Matrix, c: &Matrix) -> Result<Option<Certificate>, Error> {
    a.same_shape(c)?;
    Ok(solve_right_mat(a, c).map(|q| {
        debug_assert_eq!(&(a * &q), c);
        Certificate::new(CertRole::MembershipRight, [("q", q)])
    }))
}

/// Membership of b in the left ideal Ra, with witness p (p·a = b).
pub fn solve_left(a: &Matrix, b: &Matrix) -> Result<Option<Certificate>, Error> {
    a.same_shape(b)?;
    Ok(solve_left_mat(a, b).map(|p| {
        debug_assert_eq!(&(&p * a), b);
        Certificate::new(CertRole::MembershipLeft, [("p", p)])
    }))
}

/// x ∈ g·R
pub fn in_right_ideal(g: &Matrix, x: &Matrix) -> bool {
    solve_right_mat(g, x).is_some()
}

/// x ∈ R·g
pub fn in_left_ideal(g: &Matrix, x: &Matrix) -> bool {
    solve_left_mat(g, x).is_some()
}

/// Witness X with l·X·r = target, if any.
pub fn sandwich_witness(l: &Matrix, r: &Matrix, target: &Matrix) -> Option<Matrix> {
    let mut eq = MatEq::new(l.ring(), l.k());
    eq.constraint(&[(l, r)], target);
    eq.solve()
}

/// Basis/generating set of rann(a) = {z : a·z = 0}.
pub fn rann(a: &Matrix) -> SubspaceBasis {
    ann_impl(a, Side::Right)
}

/// Basis/generating set of lann(a) = {x : x·a = 0}.
pub fn lann(a: &Matrix) -> SubspaceBasis {
    ann_impl(a, Side::Left)
}

fn ann_impl(a: &Matrix, side: Side) -> SubspaceBasis {
    let ring = a.ring();
    let k = a.k();
    let one = Matrix::one(ring, k);
    let zero = Matrix::zero(ring, k);
    let mut eq = MatEq::new(ring, k);
    match side {
        Side::Right => eq.constraint(&[(a, &one)], &zero),
        Side::Left => eq.constraint(&[(&one, a)], &zero),
    }
    let (gens, orders) = eq.solver().kernel_with_orders();
    let vectors: Vec<Matrix> = gens.iter().map(|v| unflatten(ring, k, v)).collect();
    let vectors = if ring.is_field() {
        canonical_basis(ring, k, &vectors)
    } else {
        vectors
    };
    SubspaceBasis {
        ring: ring.clone(),
        k,
        side,
        vectors,
        invariant_factors: orders,
    }
}

/// Row-reduces a list of flattened matrices into the canonical basis of their
/// span (fields only). Set equality of subspaces becomes basis equality.
pub(crate) fn canonical_basis(ring: &RingSpec, k: usize, vectors: &[Matrix]) -> Vec<Matrix> {
    let rows: Vec<Vec<Scalar>> = vectors.iter().map(flatten).collect();
    let solver = FieldSolver::new(ring, rows, k * k);
    solver
        .rref
        .iter()
        .take(solver.rank())
        .map(|v| unflatten(ring, k, v))
        .collect()
}

/// ann(x) ⊆ ann(y) on the given side: every generator of ann(x) annihilates y.
pub fn ann_contained(x: &Matrix, y: &Matrix, side: Side) -> Result<bool, Error> {
    x.same_shape(y)?;
    let basis = ann_impl(x, side);
    Ok(basis.vectors.iter().all(|g| match side {
        Side::Right => (y * g).is_zero(),
        Side::Left => (g * y).is_zero(),
    }))
}

/// ann(x) = ann(y) via mutual containment; works over fields and Z_n alike.
pub fn ann_equal(x: &Matrix, y: &Matrix, side: Side) -> Result<bool, Error> {
    Ok(ann_contained(x, y, side)? && ann_contained(y, x, side)?)
}

/// An inner inverse: g with a·g·a = a, as a certificate. Always exists over a
/// field; over Z_n it may not.
pub fn inner_inverse(a: &Matrix) -> Option<Certificate> {
    inner_inverse_mat(a).map(|g| {
        debug_assert_eq!(crate::matrix::prod(&[a, &g, a]), *a);
        Certificate::new(CertRole::InnerInverse, [("g", g)])
    })
}

pub(crate) fn inner_inverse_mat(a: &Matrix) -> Option<Matrix> {
    sandwich_witness(a, a, a)
}

pub fn is_regular(a: &Matrix) -> bool {
    inner_inverse_mat(a).is_some()
}

/// The right ideal m·R as a subspace: span of {m·E_ij}.
pub fn right_ideal_basis(m: &Matrix) -> SubspaceBasis {
    ideal_basis(m, Side::Right)
}

/// The left ideal R·m as a subspace: span of {E_ij·m}.
pub fn left_ideal_basis(m: &Matrix) -> SubspaceBasis {
    ideal_basis(m, Side::Left)
}

fn ideal_basis(m: &Matrix, side: Side) -> SubspaceBasis {
    let ring = m.ring();
    let k = m.k();
    let mut gens = Vec::new();
    for i in 0..k {
        for j in 0..k {
            let e = Matrix::from_fn(ring, k, |r, c| {
                if (r, c) == (i, j) {
                    ring.one()
                } else {
                    ring.zero()
                }
            });
            let g = match side {
                Side::Right => m * &e,
                Side::Left => &e * m,
            };
            if !g.is_zero() {
                gens.push(g);
            }
        }
    }
    let vectors = if ring.is_field() {
        canonical_basis(ring, k, &gens)
    } else {
        gens
    };
    SubspaceBasis {
        ring: ring.clone(),
        k,
        side,
        vectors,
        invariant_factors: None,
    }
}

/// Membership of `x` in the span (field) / generated module (Z_n) of `gens`.
pub(crate) fn span_contains(ring: &RingSpec, gens: &[Matrix], x: &Matrix) -> bool {
    if x.is_zero() {
        return true;
    }
    if gens.is_empty() {
        return false;
    }
    let k = x.k();
    let flats: Vec<Vec<Scalar>> = gens.iter().map(flatten).collect();
    let rows: Vec<Vec<Scalar>> = (0..k * k)
        .map(|r| flats.iter().map(|f| f[r].clone()).collect())
        .collect();
    let solver = LinSolver::new(ring, rows, gens.len());
    solver.solve(&flatten(x)).is_some()
}

/// Equality of generated subspaces. Over a field this is equality of the
/// canonical bases; over Z_n, mutual containment of the generating sets.
pub fn subspace_equal(u: &SubspaceBasis, v: &SubspaceBasis) -> Result<bool, Error> {
    check_compatible(u, v)?;
    if u.ring.is_field() {
        let cu = canonical_basis(&u.ring, u.k, &u.vectors);
        let cv = canonical_basis(&v.ring, v.k, &v.vectors);
        Ok(cu == cv)
    } else {
        Ok(u.vectors.iter().all(|g| span_contains(&u.ring, &v.vectors, g))
            && v.vectors.iter().all(|g| span_contains(&u.ring, &u.vectors, g)))
    }
}

fn check_compatible(u: &SubspaceBasis, v: &SubspaceBasis) -> Result<(), Error> {
    if u.ring != v.ring {
        return Err(Error::RingMismatch(u.ring.name(), v.ring.name()));
    }
    if u.k != v.k {
        return Err(Error::DimensionMismatch(u.k, v.k));
    }
    Ok(())
}

fn stacked_rank(ring: &RingSpec, k: usize, parts: &[&[Matrix]]) -> usize {
    let rows: Vec<Vec<Scalar>> = parts
        .iter()
        .flat_map(|vs| vs.iter().map(flatten))
        .collect();
    FieldSolver::new(ring, rows, k * k).rank()
}

/// Whether M_k = U ⊕ V: dim U + dim V = k² and U ∩ V = {0}. Fields only.
pub fn direct_sum_check(u: &SubspaceBasis, v: &SubspaceBasis) -> Result<bool, Error> {
    check_compatible(u, v)?;
    if !u.ring.is_field() {
        return Err(Error::FieldRequired(u.ring.name()));
    }
    let k = u.k;
    let ru = stacked_rank(&u.ring, k, &[&u.vectors]);
    let rv = stacked_rank(&u.ring, k, &[&v.vectors]);
    let rboth = stacked_rank(&u.ring, k, &[&u.vectors, &v.vectors]);
    Ok(ru + rv == k * k && rboth == k * k)
}

/// Whether U ∩ V = {0}. Fields only.
pub fn intersection_trivial(u: &SubspaceBasis, v: &SubspaceBasis) -> Result<bool, Error> {
    check_compatible(u, v)?;
    if !u.ring.is_field() {
        return Err(Error::FieldRequired(u.ring.name()));
    }
    let k = u.k;
    let ru = stacked_rank(&u.ring, k, &[&u.vectors]);
    let rv = stacked_rank(&u.ring, k, &[&v.vectors]);
    let rboth = stacked_rank(&u.ring, k, &[&u.vectors, &v.vectors]);
    Ok(rboth == ru + rv)
}

/// Rank of a matrix over a field.
pub fn rank(a: &Matrix) -> Result<usize, Error> {
    if !a.ring().is_field() {
        return Err(Error::FieldRequired(a.ring().name()));
    }
    let k = a.k();
    let rows: Vec<Vec<Scalar>> = (0..k)
        .map(|i| (0..k).map(|j| a.at(i, j).clone()).collect())
        .collect();
    Ok(FieldSolver::new(a.ring(), rows, k).rank())
}

impl Matrix {
    /// Two-sided inverse; `Err(NotInvertible)` when none exists.
    pub fn inverse(&self) -> Result<Matrix, Error> {
        let one = Matrix::one(self.ring(), self.k());
        let x = solve_right_mat(self, &one).ok_or(Error::NotInvertible)?;
        // a right inverse in a matrix ring over a commutative ring is two-sided
        assert_eq!(&x * self, one, "one-sided inverse found");
        Ok(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::prod;

    fn q() -> RingSpec {
        RingSpec::rationals()
    }
    fn gf2() -> RingSpec {
        RingSpec::prime_field(2).unwrap()
    }
    fn gf3() -> RingSpec {
        RingSpec::prime_field(3).unwrap()
    }
    fn z4() -> RingSpec {
        RingSpec::modular(4).unwrap()
    }

    /// All k×k matrices over a residue ring, in base-n digit order.
    fn all_matrices(ring: &RingSpec, k: usize) -> Vec<Matrix> {
        let n = ring.size().unwrap();
        let total = n.pow((k * k) as u32);
        (0..total)
            .map(|idx| {
                let mut digits = idx;
                Matrix::from_fn(ring, k, |_, _| {
                    let d = digits % n;
                    digits /= n;
                    Scalar::Residue(d)
                })
            })
            .collect()
    }

    #[test]
    fn solve_right_identity_and_self() {
        let one = Matrix::one(&q(), 2);
        let c = Matrix::from_strs(&q(), &[&["1", "2"], &["3", "4"]]).unwrap();
        let cert = solve_right(&one, &c).unwrap().unwrap();
        assert_eq!(cert.witness("q").unwrap(), &c);

        let a = Matrix::from_strs(&q(), &[&["1", "1"], &["0", "0"]]).unwrap();
        let cert = solve_right(&a, &a).unwrap().unwrap();
        let x = cert.witness("q").unwrap();
        assert_eq!(&(&a * x), &a);
    }

    #[test]
    fn solve_right_row_space_violation() {
        // c = [[0,0],[1,0]] has a nonzero second row, a = [[1,1],[0,0]] cannot produce one.
        let a = Matrix::from_strs(&q(), &[&["1", "1"], &["0", "0"]]).unwrap();
        let c = Matrix::from_strs(&q(), &[&["0", "0"], &["1", "0"]]).unwrap();
        assert!(solve_right(&a, &c).unwrap().is_none());

        // exhaustive confirmation on the GF(2) analogue
        let a2 = Matrix::from_strs(&gf2(), &[&["1", "1"], &["0", "0"]]).unwrap();
        let c2 = Matrix::from_strs(&gf2(), &[&["0", "0"], &["1", "0"]]).unwrap();
        assert!(!all_matrices(&gf2(), 2).iter().any(|x| &a2 * x == c2));
        assert!(solve_right(&a2, &c2).unwrap().is_none());
    }

    #[test]
    fn solve_left_mirrors_solve_right() {
        let one = Matrix::one(&gf3(), 2);
        let b = Matrix::from_strs(&gf3(), &[&["1", "2"], &["0", "1"]]).unwrap();
        let cert = solve_left(&one, &b).unwrap().unwrap();
        assert_eq!(cert.witness("p").unwrap(), &b);

        let zero = Matrix::zero(&gf3(), 2);
        let a = Matrix::from_strs(&gf3(), &[&["1", "1"], &["0", "0"]]).unwrap();
        let cert = solve_left(&a, &zero).unwrap().unwrap();
        assert_eq!(&(cert.witness("p").unwrap() * &a), &zero);
    }

    #[test]
    fn solve_left_constructed_instances_replay() {
        // b := r·a is always solvable; replay the witness
        let mut seed = 7u64;
        let mut rand_mat = || {
            Matrix::from_fn(&gf3(), 2, |_, _| {
                seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                Scalar::Residue((seed >> 33) % 3)
            })
        };
        for _ in 0..25 {
            let a = rand_mat();
            let r = rand_mat();
            let b = &r * &a;
            let cert = solve_left(&a, &b).unwrap().expect("constructed to be solvable");
            assert_eq!(&(cert.witness("p").unwrap() * &a), &b);
        }
    }

    #[test]
    fn ann_dimensions() {
        let one = Matrix::one(&q(), 2);
        assert_eq!(rann(&one).dim(), 0);
        let zero = Matrix::zero(&q(), 2);
        assert_eq!(rann(&zero).dim(), 4);

        // idempotent e = diag(1,0): rann(e) = (1-e)R of dimension 2
        let e = Matrix::from_strs(&q(), &[&["1", "0"], &["0", "0"]]).unwrap();
        let r = rann(&e);
        assert_eq!(r.dim(), 2);
        let one_minus_e = &one - &e;
        let ideal = right_ideal_basis(&one_minus_e);
        assert!(subspace_equal(&r, &ideal).unwrap());
        // and every basis element is annihilated
        for g in &r.vectors {
            assert!((&e * g).is_zero());
        }
    }

    #[test]
    fn ann_dimension_formula_over_fields() {
        for a in all_matrices(&gf3(), 2) {
            let rk = rank(&a).unwrap();
            assert_eq!(rann(&a).dim(), 2 * (2 - rk));
            assert_eq!(lann(&a).dim(), 2 * (2 - rk));
        }
    }

    #[test]
    fn ann_contained_trivial_cases() {
        let one = Matrix::one(&gf2(), 2);
        let a = Matrix::from_strs(&gf2(), &[&["1", "1"], &["0", "0"]]).unwrap();
        assert!(ann_contained(&a, &a, Side::Right).unwrap());
        for m in all_matrices(&gf2(), 2) {
            assert!(ann_contained(&one, &m, Side::Right).unwrap());
            assert!(ann_contained(&one, &m, Side::Left).unwrap());
        }
    }

    #[test]
    fn ann_contained_agrees_with_enumeration_over_gf2() {
        // brute-force both annihilator sets and compare with the solver verdict
        let all = all_matrices(&gf2(), 2);
        let mut seed = 11u64;
        let mut pick = || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            all[(seed >> 33) as usize % all.len()].clone()
        };
        for _ in 0..50 {
            let x = pick();
            let y = pick();
            let rann_x: Vec<&Matrix> = all.iter().filter(|z| (&x * z).is_zero()).collect();
            let brute = rann_x.iter().all(|z| (&y * *z).is_zero());
            assert_eq!(ann_contained(&x, &y, Side::Right).unwrap(), brute);

            let lann_x: Vec<&Matrix> = all.iter().filter(|z| (*z * &x).is_zero()).collect();
            let brute_l = lann_x.iter().all(|z| (*z * &y).is_zero());
            assert_eq!(ann_contained(&x, &y, Side::Left).unwrap(), brute_l);
        }
    }

    #[test]
    fn inner_inverse_examples() {
        // invertible: the only inner inverse is the inverse
        let a = Matrix::from_strs(&q(), &[&["2", "1"], &["1", "1"]]).unwrap();
        let g = inner_inverse(&a).unwrap();
        assert_eq!(g.witness("g").unwrap(), &a.inverse().unwrap());

        // zero: the canonical solution is zero
        let zero = Matrix::zero(&q(), 2);
        let g = inner_inverse(&zero).unwrap();
        assert!(g.witness("g").unwrap().is_zero());

        // diag(2,0) over Z_4 is not regular: exhaust all 4^4 candidates
        let a = Matrix::from_strs(&z4(), &[&["2", "0"], &["0", "0"]]).unwrap();
        assert!(!all_matrices(&z4(), 2)
            .iter()
            .any(|y| prod(&[&a, y, &a]) == a));
        assert!(inner_inverse(&a).is_none());
    }

    #[test]
    fn inner_inverse_always_exists_over_fields() {
        for a in all_matrices(&gf3(), 2) {
            let g = inner_inverse_mat(&a).expect("regular over a field");
            assert_eq!(prod(&[&a, &g, &a]), a);
        }
    }

    #[test]
    fn solver_matches_enumeration_over_gf2() {
        let all = all_matrices(&gf2(), 2);
        let mut seed = 3u64;
        let mut pick = || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            all[(seed >> 33) as usize % all.len()].clone()
        };
        for _ in 0..60 {
            let a = pick();
            let c = pick();
            let brute = all.iter().any(|x| &a * x == c);
            assert_eq!(solve_right_mat(&a, &c).is_some(), brute);
        }
    }

    #[test]
    fn zn_solver_exhaustive_agreement() {
        // every Z_4 pair: SNF verdict == enumeration verdict
        let all = all_matrices(&z4(), 2);
        let mut seed = 0x9E3779B97F4A7C15u64;
        let mut pick = || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            all[(seed >> 33) as usize % all.len()].clone()
        };
        for _ in 0..80 {
            let a = pick();
            let c = pick();
            let brute = all.iter().find(|x| &a * *x == c);
            let solved = solve_right_mat(&a, &c);
            assert_eq!(solved.is_some(), brute.is_some());
            if let Some(x) = solved {
                assert_eq!(&a * &x, c);
            }
        }
    }

    #[test]
    fn zn_kernel_generates_whole_kernel() {
        let a = Matrix::from_strs(&z4(), &[&["2", "0"], &["0", "1"]]).unwrap();
        let basis = rann(&a);
        // brute-force kernel
        for z in all_matrices(&z4(), 2) {
            let in_kernel = (&a * &z).is_zero();
            assert_eq!(basis.contains(&z).unwrap(), in_kernel);
        }
        assert!(basis.invariant_factors.is_some());
    }

    #[test]
    fn direct_sum_examples() {
        let one = Matrix::one(&gf3(), 2);
        let whole = right_ideal_basis(&one);
        let zero_space = rann(&one);
        assert!(direct_sum_check(&whole, &zero_space).unwrap());

        let e = Matrix::from_strs(&gf3(), &[&["1", "0"], &["0", "0"]]).unwrap();
        let u = right_ideal_basis(&e);
        assert!(!direct_sum_check(&u, &u).unwrap());

        let z4ring = z4();
        let m = Matrix::one(&z4ring, 2);
        let u4 = right_ideal_basis(&m);
        assert!(matches!(
            direct_sum_check(&u4, &u4),
            Err(Error::FieldRequired(_))
        ));
    }

    #[test]
    fn sandwich_membership() {
        let b = Matrix::from_strs(&q(), &[&["1", "0"], &["0", "0"]]).unwrap();
        let r = Matrix::from_strs(&q(), &[&["0", "0"], &["0", "1"]]).unwrap();
        // e11·X·e22 = X[0,1]·e12, so only multiples of e12 are reachable
        let target = Matrix::from_strs(&q(), &[&["0", "5"], &["0", "0"]]).unwrap();
        let x = sandwich_witness(&b, &r, &target).unwrap();
        assert_eq!(prod(&[&b, &x, &r]), target);
        let bad = Matrix::from_strs(&q(), &[&["1", "0"], &["0", "0"]]).unwrap();
        assert!(sandwich_witness(&b, &r, &bad).is_none());
    }

    #[test]
    fn matrix_inverse_round_trip() {
        let z6 = RingSpec::modular(6).unwrap();
        let m = Matrix::from_strs(&z6, &[&["1", "1"], &["0", "1"]]).unwrap();
        let inv = m.inverse().unwrap();
        let expect = Matrix::from_strs(&z6, &[&["1", "5"], &["0", "1"]]).unwrap();
        assert_eq!(inv, expect);
        assert_eq!(&m * &inv, Matrix::one(&z6, 2));
        assert_eq!(&inv * &m, Matrix::one(&z6, 2));

        let singular = Matrix::from_strs(&q(), &[&["1", "2"], &["0", "0"]]).unwrap();
        assert_eq!(singular.inverse(), Err(Error::NotInvertible));
    }

    #[test]
    fn ideal_membership_from_prop_witnesses() {
        // whenever wy ∈ Rd, every z with dz = 0 has wyz = 0
        let all = all_matrices(&gf2(), 2);
        for d in &all {
            for y in &all {
                if in_left_ideal(d, y) {
                    assert!(ann_contained(d, y, Side::Right).unwrap());
                }
                // and the converse given d regular (always, over a field)
                if ann_contained(d, y, Side::Right).unwrap() {
                    assert!(in_left_ideal(d, y));
                }
            }
        }
    }
}
