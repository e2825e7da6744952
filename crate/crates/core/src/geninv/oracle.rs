//! Independent cross-check route: linear matrix equations solved on the
//! vectorized unknown.
//!
//! Nothing here calls the full-rank-factorization machinery, so it can
//! audit the Cline recursion.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::{GaussRational, Mat};

/// A system of equations `Σ_t L_t X R_t = C` in an unknown `X` of fixed shape.
pub struct LinearMatrixSystem {
    unknown: (usize, usize),
    rows: Vec<Vec<GaussRational>>,
    rhs: Vec<GaussRational>,
}

impl LinearMatrixSystem {
    pub fn new(rows: usize, cols: usize) -> Self {
        Self {
            unknown: (rows, cols),
            rows: Vec::new(),
            rhs: Vec::new(),
        }
    }

    /// Adds `Σ (left · X · right) = target` for the listed `(left, right)` terms.
    pub fn equation(&mut self, terms: &[(Mat, Mat)], target: &Mat) -> Result<&mut Self> {
        let (p, q) = self.unknown;
        for (l, r) in terms {
            if l.cols() != p
                || r.rows() != q
                || l.rows() != target.rows()
                || r.cols() != target.cols()
            {
                return Err(Error::Shape {
                    op: "linear system term",
                    left: l.shape(),
                    right: r.shape(),
                });
            }
        }
        for i in 0..target.rows() {
            for j in 0..target.cols() {
                let mut coeffs = vec![GaussRational::zero(); p * q];
                for (l, r) in terms {
                    for u in 0..p {
                        if l[(i, u)].is_zero() {
                            continue;
                        }
                        for v in 0..q {
                            coeffs[u * q + v] += &(&l[(i, u)] * &r[(v, j)]);
                        }
                    }
                }
                self.rows.push(coeffs);
                self.rhs.push(target[(i, j)].clone());
            }
        }
        Ok(self)
    }

    fn coefficient_matrix(&self) -> Mat {
        let n = self.unknown.0 * self.unknown.1;
        Mat::from_fn(self.rows.len(), n, |i, j| self.rows[i][j].clone())
    }

    /// One solution with free variables set to zero, reshaped to the unknown's shape.
    pub fn solve(&self) -> Option<Mat> {
        let (p, q) = self.unknown;
        let a = self.coefficient_matrix();
        let b = Mat::from_fn(self.rhs.len(), 1, |i, _| self.rhs[i].clone());
        let x = a.solve(&b).expect("rhs is a column of matching height")?;
        Some(Mat::from_fn(p, q, |i, j| x[(i * q + j, 0)].clone()))
    }

    /// Dimension of the solution set (as an affine space) when it is nonempty.
    pub fn solution_dimension(&self) -> usize {
        let n = self.unknown.0 * self.unknown.1;
        n - self.coefficient_matrix().rank()
    }

    /// Basis of the homogeneous solutions, each reshaped to the unknown's shape.
    pub fn homogeneous_basis(&self) -> Vec<Mat> {
        let (p, q) = self.unknown;
        let ns = self.coefficient_matrix().null_space();
        (0..ns.cols())
            .map(|k| Mat::from_fn(p, q, |i, j| ns[(i * q + j, k)].clone()))
            .collect()
    }
}

/// Drazin inverse from linear conditions only.
///
/// With `X = A^n W`, the equations `X A^{n+1} = A^n` and `A X = X A` pin
/// `X` down uniquely, since `n` bounds the index.
pub fn drazin_by_linear_system(a: &Mat) -> Result<Mat> {
    let n = a.require_square()?;
    if n == 0 {
        return Ok(Mat::zeros(0, 0));
    }
    let an = a.pow(n);
    let an1 = &an * a;
    let id = Mat::identity(n);
    let mut sys = LinearMatrixSystem::new(n, n);
    sys.equation(&[(an.clone(), an1.clone())], &an)?
        .equation(&[(an1.clone(), id), (-&an, a.clone())], &Mat::zeros(n, n))?;
    let w = sys.solve().ok_or_else(|| Error::Verification {
        what: "linear Drazin oracle".into(),
        detail: "system has no solution".into(),
    })?;
    Ok(&an * &w)
}
