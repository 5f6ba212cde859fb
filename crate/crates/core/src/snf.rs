//! Integer matrix kernels: Smith normal form and exact determinants over
//! BigInt. These back every linear solve over Z_n, so no intermediate result
//! is allowed to overflow.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// U * A * V = diag(d) with U, V unimodular, d[i] >= 0 and d[i] | d[i+1].
pub(crate) struct Snf {
    pub u: Vec<Vec<BigInt>>,
    pub v: Vec<Vec<BigInt>>,
    pub d: Vec<BigInt>,
}

pub(crate) fn smith(a: &[Vec<BigInt>]) -> Snf {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut m: Vec<Vec<BigInt>> = a.to_vec();
    let mut u = identity(rows);
    let mut v = identity(cols);
    let dim = rows.min(cols);

    let mut t = 0;
    while t < dim {
        let Some((pi, pj)) = min_nonzero(&m, t, rows, cols) else {
            break;
        };
        swap_rows(&mut m, &mut u, t, pi);
        swap_cols(&mut m, &mut v, t, pj);
        loop {
            clear_cross(&mut m, &mut u, &mut v, t, rows, cols);
            // the pivot must divide the trailing block for the invariant chain;
            // fold an offending row into row t and re-clear
            let mut offender = None;
            'scan: for i in t + 1..rows {
                for j in t + 1..cols {
                    if !(&m[i][j] % &m[t][t]).is_zero() {
                        offender = Some(i);
                        break 'scan;
                    }
                }
            }
            match offender {
                Some(i) => add_row(&mut m, &mut u, t, i),
                None => break,
            }
        }
        if m[t][t].is_negative() {
            negate_row(&mut m, &mut u, t);
        }
        t += 1;
    }

    let d = (0..dim).map(|i| m[i][i].clone()).collect();
    Snf { u, v, d }
}

/// Exact determinant via fraction-free (Bareiss) elimination.
pub(crate) fn det_bareiss(a: &[Vec<BigInt>]) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut m: Vec<Vec<BigInt>> = a.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, r);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = num / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    &m[n - 1][n - 1] * sign
}

fn min_nonzero(m: &[Vec<BigInt>], t: usize, rows: usize, cols: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..rows {
        for j in t..cols {
            if m[i][j].is_zero() {
                continue;
            }
            match best {
                None => best = Some((i, j)),
                Some((bi, bj)) => {
                    if m[i][j].abs() < m[bi][bj].abs() {
                        best = Some((i, j));
                    }
                }
            }
        }
    }
    best
}

/// Zeroes row t and column t outside the pivot by repeated Euclidean steps.
fn clear_cross(
    m: &mut [Vec<BigInt>],
    u: &mut [Vec<BigInt>],
    v: &mut [Vec<BigInt>],
    t: usize,
    rows: usize,
    cols: usize,
) {
    loop {
        let mut clean = true;
        for i in t + 1..rows {
            if m[i][t].is_zero() {
                continue;
            }
            let q = &m[i][t] / &m[t][t];
            sub_row(m, u, i, t, &q);
            if !m[i][t].is_zero() {
                // remainder strictly smaller than the pivot: promote it
                swap_rows_slice(m, u, t, i);
                clean = false;
            }
        }
        for j in t + 1..cols {
            if m[t][j].is_zero() {
                continue;
            }
            let q = &m[t][j] / &m[t][t];
            sub_col(m, v, j, t, &q);
            if !m[t][j].is_zero() {
                swap_cols_slice(m, v, t, j);
                clean = false;
            }
        }
        if clean {
            break;
        }
    }
}

fn identity(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect()
}

fn swap_rows(m: &mut [Vec<BigInt>], u: &mut [Vec<BigInt>], a: usize, b: usize) {
    if a != b {
        m.swap(a, b);
        u.swap(a, b);
    }
}

fn swap_rows_slice(m: &mut [Vec<BigInt>], u: &mut [Vec<BigInt>], a: usize, b: usize) {
    swap_rows(m, u, a, b);
}

fn swap_cols(m: &mut [Vec<BigInt>], v: &mut [Vec<BigInt>], a: usize, b: usize) {
    if a == b {
        return;
    }
    for row in m.iter_mut() {
        row.swap(a, b);
    }
    for row in v.iter_mut() {
        row.swap(a, b);
    }
}

fn swap_cols_slice(m: &mut [Vec<BigInt>], v: &mut [Vec<BigInt>], a: usize, b: usize) {
    swap_cols(m, v, a, b);
}

/// row_i -= q * row_t
fn sub_row(m: &mut [Vec<BigInt>], u: &mut [Vec<BigInt>], i: usize, t: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for j in 0..m[0].len() {
        let x = &m[t][j] * q;
        m[i][j] -= x;
    }
    for j in 0..u[0].len() {
        let x = &u[t][j] * q;
        u[i][j] -= x;
    }
}

/// col_j -= q * col_t
fn sub_col(m: &mut [Vec<BigInt>], v: &mut [Vec<BigInt>], j: usize, t: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for row in m.iter_mut() {
        let x = &row[t] * q;
        row[j] -= x;
    }
    for row in v.iter_mut() {
        let x = &row[t] * q;
        row[j] -= x;
    }
}

/// row_t += row_i
fn add_row(m: &mut [Vec<BigInt>], u: &mut [Vec<BigInt>], t: usize, i: usize) {
    for j in 0..m[0].len() {
        let x = m[i][j].clone();
        m[t][j] += x;
    }
    for j in 0..u[0].len() {
        let x = u[i][j].clone();
        u[t][j] += x;
    }
}

fn negate_row(m: &mut [Vec<BigInt>], u: &mut [Vec<BigInt>], t: usize) {
    for x in m[t].iter_mut() {
        *x = -std::mem::take(x);
    }
    for x in u[t].iter_mut() {
        *x = -std::mem::take(x);
    }
}
