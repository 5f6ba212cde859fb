//! Square matrices over an exact coefficient ring. This is the universal
//! element type: every ring element manipulated by the library is a k x k
//! matrix with canonical entries.

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::ring::{RingSpec, Scalar};
use crate::snf;

/// Matrices larger than this are rejected; the library targets desk-scale
/// verification, not performance at large k.
pub const MAX_DIM: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "MatrixDto", into = "MatrixDto")]
pub struct Matrix {
    ring: RingSpec,
    k: usize,
    /// Row-major, canonical representatives.
    entries: Vec<Scalar>,
}

pub(crate) fn check_dim(k: usize) -> Result<(), Error> {
    if (1..=MAX_DIM).contains(&k) {
        Ok(())
    } else {
        Err(Error::DimensionOutOfRange(k))
    }
}

impl Matrix {
    pub fn zero(ring: &RingSpec, k: usize) -> Matrix {
        check_dim(k).expect("dimension out of range");
        Matrix {
            ring: ring.clone(),
            k,
            entries: vec![ring.zero(); k * k],
        }
    }

    /// The multiplicative identity of M_k.
    pub fn one(ring: &RingSpec, k: usize) -> Matrix {
        let mut m = Matrix::zero(ring, k);
        for i in 0..k {
            m.entries[i * k + i] = ring.one();
        }
        m
    }

    /// s * identity.
    pub fn scalar(ring: &RingSpec, k: usize, s: &Scalar) -> Matrix {
        let mut m = Matrix::zero(ring, k);
        for i in 0..k {
            m.entries[i * k + i] = s.clone();
        }
        m
    }

    pub fn from_fn(ring: &RingSpec, k: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Matrix {
        check_dim(k).expect("dimension out of range");
        let mut entries = Vec::with_capacity(k * k);
        for i in 0..k {
            for j in 0..k {
                entries.push(f(i, j));
            }
        }
        Matrix {
            ring: ring.clone(),
            k,
            entries,
        }
    }

    pub fn from_rows(ring: &RingSpec, rows: Vec<Vec<Scalar>>) -> Result<Matrix, Error> {
        let k = rows.len();
        check_dim(k)?;
        for r in &rows {
            if r.len() != k {
                return Err(Error::DimensionMismatch(r.len(), k));
            }
        }
        Ok(Matrix {
            ring: ring.clone(),
            k,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// Parses a grid of decimal strings (the JSON wire form of entries).
    pub fn from_grid(ring: &RingSpec, k: usize, grid: &[Vec<String>]) -> Result<Matrix, Error> {
        check_dim(k)?;
        if grid.len() != k {
            return Err(Error::DimensionMismatch(grid.len(), k));
        }
        let mut rows = Vec::with_capacity(k);
        for row in grid {
            if row.len() != k {
                return Err(Error::DimensionMismatch(row.len(), k));
            }
            rows.push(
                row.iter()
                    .map(|s| ring.parse(s))
                    .collect::<Result<Vec<_>, _>>()?,
            );
        }
        Matrix::from_rows(ring, rows)
    }

    /// Test-friendly constructor from string literals.
    pub fn from_strs(ring: &RingSpec, rows: &[&[&str]]) -> Result<Matrix, Error> {
        let grid: Vec<Vec<String>> = rows
            .iter()
            .map(|r| r.iter().map(|s| s.to_string()).collect())
            .collect();
        Matrix::from_grid(ring, rows.len(), &grid)
    }

    pub fn to_grid(&self) -> Vec<Vec<String>> {
        (0..self.k)
            .map(|i| (0..self.k).map(|j| self.ring.format(self.at(i, j))).collect())
            .collect()
    }

    pub fn ring(&self) -> &RingSpec {
        &self.ring
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn at(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.k + j]
    }

    pub(crate) fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn is_one(&self) -> bool {
        *self == Matrix::one(&self.ring, self.k)
    }

    pub(crate) fn same_shape(&self, other: &Matrix) -> Result<(), Error> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(self.ring.name(), other.ring.name()));
        }
        if self.k != other.k {
            return Err(Error::DimensionMismatch(self.k, other.k));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Matrix) -> Result<Matrix, Error> {
        self.same_shape(other)?;
        Ok(Matrix::from_fn(&self.ring, self.k, |i, j| {
            self.ring.add(self.at(i, j), other.at(i, j))
        }))
    }

    pub fn checked_sub(&self, other: &Matrix) -> Result<Matrix, Error> {
        self.same_shape(other)?;
        Ok(Matrix::from_fn(&self.ring, self.k, |i, j| {
            self.ring.sub(self.at(i, j), other.at(i, j))
        }))
    }

    pub fn checked_mul(&self, other: &Matrix) -> Result<Matrix, Error> {
        self.same_shape(other)?;
        let ring = &self.ring;
        Ok(Matrix::from_fn(ring, self.k, |i, j| {
            let mut acc = ring.zero();
            for l in 0..self.k {
                acc = ring.add(&acc, &ring.mul(self.at(i, l), other.at(l, j)));
            }
            acc
        }))
    }

    /// The involution of the matrix ring: transposition. It is an
    /// anti-automorphism of order two.
    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(&self.ring, self.k, |i, j| self.at(j, i).clone())
    }

    /// Exact determinant.
    pub fn det(&self) -> Scalar {
        match self.ring {
            RingSpec::Modular { n } => {
                let lift = self.lift();
                let d = snf::det_bareiss(&lift);
                Scalar::Residue(d.mod_floor(&BigInt::from(n)).try_into().unwrap())
            }
            _ => self.det_field(),
        }
    }

    fn det_field(&self) -> Scalar {
        let ring = &self.ring;
        let k = self.k;
        let mut rows: Vec<Vec<Scalar>> = (0..k)
            .map(|i| (0..k).map(|j| self.at(i, j).clone()).collect())
            .collect();
        let mut det = ring.one();
        for col in 0..k {
            let Some(p) = (col..k).find(|&r| !rows[r][col].is_zero()) else {
                return ring.zero();
            };
            if p != col {
                rows.swap(p, col);
                det = ring.neg(&det);
            }
            let pivot = rows[col][col].clone();
            det = ring.mul(&det, &pivot);
            let pinv = ring.inv(&pivot).expect("nonzero field element");
            for r in col + 1..k {
                if rows[r][col].is_zero() {
                    continue;
                }
                let factor = ring.mul(&rows[r][col], &pinv);
                for c in col..k {
                    let sub = ring.mul(&factor, &rows[col][c]);
                    rows[r][c] = ring.sub(&rows[r][c], &sub);
                }
            }
        }
        det
    }

    /// Over a field: det != 0; over Z_n: det is a unit mod n.
    pub fn is_invertible(&self) -> bool {
        self.ring.is_unit(&self.det())
    }

    /// Integer lift of a residue matrix (entries already in `[0, n)`).
    pub(crate) fn lift(&self) -> Vec<Vec<BigInt>> {
        (0..self.k)
            .map(|i| {
                (0..self.k)
                    .map(|j| match self.at(i, j) {
                        Scalar::Residue(r) => BigInt::from(*r),
                        Scalar::Rational(_) => panic!("lift requires residue entries"),
                    })
                    .collect()
            })
            .collect()
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        self.checked_add(rhs).expect("matrix shape mismatch")
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        self.checked_sub(rhs).expect("matrix shape mismatch")
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        self.checked_mul(rhs).expect("matrix shape mismatch")
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        Matrix::from_fn(self.ring(), self.k(), |i, j| self.ring().neg(self.at(i, j)))
    }
}

/// Left-to-right product of a nonempty factor list.
pub fn prod(factors: &[&Matrix]) -> Matrix {
    let (first, rest) = factors.split_first().expect("empty product");
    rest.iter().fold((*first).clone(), |acc, m| &acc * m)
}

/// Number of k×k matrices over the ring; `None` for Q.
pub fn matrix_count(ring: &RingSpec, k: usize) -> Option<u128> {
    ring.size().map(|n| (n as u128).pow((k * k) as u32))
}

/// Iterator over every k×k matrix of a finite coefficient ring, in base-n
/// digit order with the (0,0) entry as the least significant digit.
pub fn all_matrices(ring: &RingSpec, k: usize) -> Option<MatrixIter> {
    let n = ring.size()?;
    Some(MatrixIter {
        ring: ring.clone(),
        k,
        n,
        idx: 0,
        total: matrix_count(ring, k).unwrap(),
    })
}

pub struct MatrixIter {
    ring: RingSpec,
    k: usize,
    n: u64,
    idx: u128,
    total: u128,
}

impl Iterator for MatrixIter {
    type Item = Matrix;
    fn next(&mut self) -> Option<Matrix> {
        if self.idx >= self.total {
            return None;
        }
        let mut digits = self.idx;
        self.idx += 1;
        let n = self.n as u128;
        Some(Matrix::from_fn(&self.ring, self.k, |_, _| {
            let d = (digits % n) as u64;
            digits /= n;
            Scalar::Residue(d)
        }))
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixDto {
    ring: RingSpec,
    k: usize,
    entries: Vec<Vec<String>>,
}

impl TryFrom<MatrixDto> for Matrix {
    type Error = Error;
    fn try_from(dto: MatrixDto) -> Result<Matrix, Error> {
        dto.ring.validate()?;
        Matrix::from_grid(&dto.ring, dto.k, &dto.entries)
    }
}

impl From<Matrix> for MatrixDto {
    fn from(m: Matrix) -> MatrixDto {
        MatrixDto {
            entries: m.to_grid(),
            ring: m.ring,
            k: m.k,
        }
    }
}
