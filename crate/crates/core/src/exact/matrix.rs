//! Dense matrices over the Gaussian rationals.
//!
//! Square matrices of a fixed size form the ring with involution that every
//! other module works in; the involution is the conjugate transpose.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::scalar::GaussRational;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<GaussRational>,
}

/// Reduced row echelon form with its pivot columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub reduced: Mat,
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Column,
    Row,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Equal,
    Included,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![GaussRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = GaussRational::one();
        }
        m
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> GaussRational,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Builds from row vectors; every row must have the same length.
    pub fn from_rows(rows: Vec<Vec<GaussRational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|row| row.len() != c) {
            return Err(Error::Shape {
                op: "from_rows",
                left: (r, c),
                right: (1, bad.len()),
            });
        }
        Ok(Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Integer literal helper, mostly for tests. Panics on ragged input.
    pub fn from_ints<const C: usize>(rows: &[[i64; C]]) -> Self {
        Self::from_fn(rows.len(), C, |i, j| GaussRational::from_int(rows[i][j]))
    }

    pub fn diag(entries: &[GaussRational]) -> Self {
        let n = entries.len();
        Self::from_fn(n, n, |i, j| {
            if i == j {
                entries[i].clone()
            } else {
                GaussRational::zero()
            }
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[GaussRational] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[GaussRational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Self::identity(self.rows)
    }

    pub fn is_hermitian(&self) -> bool {
        self.is_square() && *self == self.adjoint()
    }

    pub fn is_idempotent(&self) -> bool {
        self.is_square() && &(self * self) == self
    }

    pub(crate) fn require_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare(self.rows, self.cols))
        }
    }

    fn same_shape(&self, other: &Mat, op: &'static str) -> Result<()> {
        if self.shape() == other.shape() {
            Ok(())
        } else {
            Err(Error::Shape {
                op,
                left: self.shape(),
                right: other.shape(),
            })
        }
    }

    pub fn try_add(&self, other: &Mat) -> Result<Mat> {
        self.same_shape(other, "add")?;
        Ok(Mat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn try_sub(&self, other: &Mat) -> Result<Mat> {
        self.same_shape(other, "sub")?;
        Ok(Mat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn try_mul(&self, other: &Mat) -> Result<Mat> {
        if self.cols != other.rows {
            return Err(Error::Shape {
                op: "mul",
                left: self.shape(),
                right: other.shape(),
            });
        }
        let mut out = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other.data[k * other.cols + j];
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, s: &GaussRational) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    /// Conjugate transpose, the involution `*`.
    pub fn adjoint(&self) -> Mat {
        Mat::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    /// `self^m`, with `self^0 = I`. Panics if not square.
    pub fn pow(&self, m: usize) -> Mat {
        assert!(self.is_square(), "pow of non-square matrix");
        let mut result = Mat::identity(self.rows);
        let mut base = self.clone();
        let mut e = m;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Smallest `m` with `self^m = 0`, or `None` if the matrix is not nilpotent.
    pub fn nilpotency_index(&self) -> Option<usize> {
        assert!(self.is_square(), "nilpotency of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Some(0);
        }
        let mut power = self.clone();
        for m in 1..=n {
            if power.is_zero() {
                return Some(m);
            }
            power = &power * self;
        }
        None
    }

    pub fn is_nilpotent(&self) -> bool {
        self.nilpotency_index().is_some()
    }

    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut lead_row = 0;
        for c in 0..m.cols {
            if lead_row == m.rows {
                break;
            }
            let Some(p) = (lead_row..m.rows).find(|&r| !m[(r, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(p, lead_row);
            let inv = m[(lead_row, c)].inv().expect("pivot is nonzero");
            for j in c..m.cols {
                let v = &m[(lead_row, j)] * &inv;
                m[(lead_row, j)] = v;
            }
            for r in 0..m.rows {
                if r == lead_row || m[(r, c)].is_zero() {
                    continue;
                }
                let factor = m[(r, c)].clone();
                for j in c..m.cols {
                    let delta = &factor * &m[(lead_row, j)];
                    m[(r, j)] -= &delta;
                }
            }
            pivots.push(c);
            lead_row += 1;
        }
        Rref { reduced: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Exact inverse by Gauss-Jordan elimination on `[A | I]`.
    pub fn inverse(&self) -> Result<Mat> {
        let n = self.require_square()?;
        let aug = self.hstack(&Mat::identity(n))?;
        let r = aug.rref();
        let rank = r.pivots.iter().filter(|&&p| p < n).count();
        if rank < n {
            return Err(Error::Singular { rank, size: n });
        }
        Ok(r.reduced.submatrix(0, n, n, n))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// `A = B C` with `B` the pivot columns of `A` and `C` the nonzero rows
    /// of `rref(A)`.
    pub fn full_rank_factorization(&self) -> Result<(Mat, Mat)> {
        let r = self.rref();
        if r.pivots.is_empty() {
            return Err(Error::ZeroMatrix);
        }
        let b = self.select_columns(&r.pivots);
        let c = r.reduced.submatrix(0, 0, r.rank(), self.cols);
        Ok((b, c))
    }

    /// Basis of the null space as columns, one per free variable, in the
    /// parametric form read off `rref` (free variable set to 1).
    pub fn null_space(&self) -> Mat {
        let r = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !r.pivots.contains(c)).collect();
        let mut basis = Mat::zeros(self.cols, free.len());
        for (k, &f) in free.iter().enumerate() {
            basis[(f, k)] = GaussRational::one();
            for (row, &p) in r.pivots.iter().enumerate() {
                basis[(p, k)] = -&r.reduced[(row, f)];
            }
        }
        basis
    }

    /// Basis of the column space: the pivot columns of `self`.
    pub fn column_basis(&self) -> Mat {
        self.select_columns(&self.rref().pivots)
    }

    /// One solution `X` of `self * X = rhs`, with free variables set to zero.
    pub fn solve(&self, rhs: &Mat) -> Result<Option<Mat>> {
        if rhs.rows != self.rows {
            return Err(Error::Shape {
                op: "solve",
                left: self.shape(),
                right: rhs.shape(),
            });
        }
        let n = self.cols;
        let r = self.hstack(rhs)?.rref();
        if r.pivots.iter().any(|&p| p >= n) {
            return Ok(None);
        }
        let mut x = Mat::zeros(n, rhs.cols);
        for (row, &p) in r.pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x[(p, j)] = r.reduced[(row, n + j)].clone();
            }
        }
        Ok(Some(x))
    }

    pub fn select_columns(&self, cols: &[usize]) -> Mat {
        Mat::from_fn(self.rows, cols.len(), |i, j| self[(i, cols[j])].clone())
    }

    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Mat {
        assert!(
            r0 + rows <= self.rows && c0 + cols <= self.cols,
            "submatrix out of range"
        );
        Mat::from_fn(rows, cols, |i, j| self[(r0 + i, c0 + j)].clone())
    }

    pub fn hstack(&self, other: &Mat) -> Result<Mat> {
        if self.rows != other.rows {
            return Err(Error::Shape {
                op: "hstack",
                left: self.shape(),
                right: other.shape(),
            });
        }
        Ok(Mat::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                other[(i, j - self.cols)].clone()
            }
        }))
    }

    pub fn vstack(&self, other: &Mat) -> Result<Mat> {
        if self.cols != other.cols {
            return Err(Error::Shape {
                op: "vstack",
                left: self.shape(),
                right: other.shape(),
            });
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(Mat {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    /// `[[b11, b12], [b21, b22]]`; any block may be empty.
    pub fn from_blocks(b11: &Mat, b12: &Mat, b21: &Mat, b22: &Mat) -> Result<Mat> {
        let top = b11.hstack(b12)?;
        let bottom = b21.hstack(b22)?;
        top.vstack(&bottom)
    }

    pub fn block_diag(a: &Mat, b: &Mat) -> Mat {
        Mat::from_blocks(
            a,
            &Mat::zeros(a.rows, b.cols),
            &Mat::zeros(b.rows, a.cols),
            b,
        )
        .expect("block shapes conform by construction")
    }

    /// Column/row space inclusion or equality.
    ///
    /// Column inclusion `R(A) ⊆ R(B)` is tested as `rank([B | A]) = rank(B)`;
    /// row relations go through the conjugate transpose.
    pub fn space_relation(&self, other: &Mat, side: Side, relation: Relation) -> Result<bool> {
        let (a, b) = match side {
            Side::Column => (self.clone(), other.clone()),
            Side::Row => (self.adjoint(), other.adjoint()),
        };
        let included = |x: &Mat, y: &Mat| -> Result<bool> { Ok(y.hstack(x)?.rank() == y.rank()) };
        match relation {
            Relation::Included => included(&a, &b),
            Relation::Equal => Ok(included(&a, &b)? && included(&b, &a)?),
        }
    }

    pub fn column_space_included_in(&self, other: &Mat) -> bool {
        self.space_relation(other, Side::Column, Relation::Included)
            .expect("conforming row counts")
    }
}

impl Index<(usize, usize)> for Mat {
    type Output = GaussRational;
    fn index(&self, (i, j): (usize, usize)) -> &GaussRational {
        assert!(i < self.rows && j < self.cols, "index out of range");
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut GaussRational {
        assert!(i < self.rows && j < self.cols, "index out of range");
        &mut self.data[i * self.cols + j]
    }
}

// Operator forms panic on shape mismatch; the `try_*` methods report it.

impl Add for &Mat {
    type Output = Mat;
    fn add(self, rhs: &Mat) -> Mat {
        self.try_add(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Sub for &Mat {
    type Output = Mat;
    fn sub(self, rhs: &Mat) -> Mat {
        self.try_sub(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Mul for &Mat {
    type Output = Mat;
    fn mul(self, rhs: &Mat) -> Mat {
        self.try_mul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Neg for &Mat {
    type Output = Mat;
    fn neg(self) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| -a).collect(),
        }
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            write!(f, "]")?;
        }
        write!(f, "] ({}x{})", self.rows, self.cols)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a0() -> Mat {
        Mat::from_ints(&[[1, 1], [0, 0]])
    }

    fn b0() -> Mat {
        Mat::from_ints(&[[1, 0], [0, 0]])
    }

    fn shift2() -> Mat {
        Mat::from_ints(&[[0, 1], [0, 0]])
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(&a0() + &b0(), Mat::from_ints(&[[2, 1], [0, 0]]));
        assert_eq!(&Mat::identity(2) * &a0(), a0());
        assert_eq!(&a0() * &a0(), a0());
        let err = a0().try_mul(&Mat::zeros(3, 1)).unwrap_err();
        assert!(matches!(
            err,
            Error::Shape {
                left: (2, 2),
                right: (3, 1),
                ..
            }
        ));
        assert!(a0().try_add(&Mat::zeros(2, 3)).is_err());
        let half = GaussRational::ratio(1, 2);
        assert_eq!(
            Mat::from_ints(&[[2, 4]]).scale(&half),
            Mat::from_ints(&[[1, 2]])
        );
    }

    #[test]
    fn adjoint_examples() {
        assert_eq!(shift2().adjoint(), Mat::from_ints(&[[0, 0], [1, 0]]));
        let m = Mat::diag(&[GaussRational::i(), GaussRational::zero()]);
        assert_eq!(
            m.adjoint(),
            Mat::diag(&[-GaussRational::i(), GaussRational::zero()])
        );
        assert_eq!((&a0() * &b0()).adjoint(), &b0().adjoint() * &a0().adjoint());
    }

    #[test]
    fn rref_examples() {
        let r = Mat::identity(2).rref();
        assert_eq!((r.reduced, r.pivots), (Mat::identity(2), vec![0, 1]));
        let r = a0().rref();
        assert_eq!(r.reduced, a0());
        assert_eq!(r.pivots, vec![0]);
        assert_eq!(r.rank(), 1);
        let r = Mat::zeros(2, 2).rref();
        assert_eq!(r.reduced, Mat::zeros(2, 2));
        assert!(r.pivots.is_empty());
    }

    #[test]
    fn inverse_examples() {
        let m = Mat::from_ints(&[[2, 0], [0, 1]]);
        let expected = Mat::diag(&[GaussRational::ratio(1, 2), GaussRational::one()]);
        assert_eq!(m.inverse().unwrap(), expected);
        assert_eq!(Mat::identity(3).inverse().unwrap(), Mat::identity(3));
        assert!(matches!(
            a0().inverse(),
            Err(Error::Singular { rank: 1, size: 2 })
        ));
        assert!(matches!(
            Mat::zeros(2, 3).inverse(),
            Err(Error::NotSquare(2, 3))
        ));
        assert_eq!(Mat::zeros(0, 0).inverse().unwrap(), Mat::zeros(0, 0));
    }

    #[test]
    fn full_rank_factorization_examples() {
        let (b, c) = a0().full_rank_factorization().unwrap();
        assert_eq!(b, Mat::from_ints(&[[1], [0]]));
        assert_eq!(c, Mat::from_ints(&[[1, 1]]));
        let (b, c) = Mat::identity(2).full_rank_factorization().unwrap();
        assert_eq!((b, c), (Mat::identity(2), Mat::identity(2)));
        let (b, c) = shift2().full_rank_factorization().unwrap();
        assert_eq!(b, Mat::from_ints(&[[1], [0]]));
        assert_eq!(c, Mat::from_ints(&[[0, 1]]));
        assert!(matches!(
            Mat::zeros(2, 2).full_rank_factorization(),
            Err(Error::ZeroMatrix)
        ));
    }

    #[test]
    fn powers_and_nilpotency() {
        assert_eq!(a0().pow(2), a0());
        assert!(shift2().pow(2).is_zero());
        assert_eq!(a0().pow(0), Mat::identity(2));
        assert_eq!(shift2().nilpotency_index(), Some(2));
        assert_eq!(Mat::identity(2).nilpotency_index(), None);
        let shift3 = Mat::from_ints(&[[0, 1, 0], [0, 0, 1], [0, 0, 0]]);
        assert_eq!(shift3.nilpotency_index(), Some(3));
        assert_eq!(Mat::zeros(2, 2).nilpotency_index(), Some(1));
    }

    #[test]
    fn space_relation_examples() {
        use Relation::*;
        use Side::*;
        assert!(a0().space_relation(&b0(), Column, Equal).unwrap());
        assert!(Mat::zeros(2, 2)
            .space_relation(&b0(), Column, Included)
            .unwrap());
        assert!(!a0().space_relation(&b0(), Row, Equal).unwrap());
        assert!(a0()
            .space_relation(&Mat::zeros(3, 3), Column, Included)
            .is_err());
    }

    #[test]
    fn null_space_and_solve() {
        let ns = a0().null_space();
        assert_eq!(ns, Mat::from_ints(&[[-1], [1]]));
        assert!((&a0() * &ns).is_zero());
        let x = a0().solve(&Mat::from_ints(&[[3], [0]])).unwrap().unwrap();
        assert_eq!(&a0() * &x, Mat::from_ints(&[[3], [0]]));
        assert!(a0().solve(&Mat::from_ints(&[[0], [1]])).unwrap().is_none());
    }

    #[test]
    fn empty_blocks() {
        let e = Mat::zeros(0, 2);
        let m = Mat::from_blocks(&Mat::zeros(0, 0), &e, &Mat::zeros(2, 0), &a0()).unwrap();
        assert_eq!(m, a0());
        assert_eq!(Mat::block_diag(&Mat::zeros(0, 0), &a0()), a0());
    }
}
