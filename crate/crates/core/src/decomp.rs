//! Core-nilpotent decomposition `A = P diag(C, N) P^{-1}` and the block
//! conditions it induces on a perturbation `B`.

use serde::{Deserialize, Serialize};

use crate::addabs::{self, ConditionReport};
use crate::error::{Error, Result};
use crate::exact::Mat;
use crate::geninv;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoreNilpotentForm {
    pub p: Mat,
    pub p_inv: Mat,
    pub c: Mat,
    pub n: Mat,
    pub k: usize,
    pub rank: usize,
}

impl CoreNilpotentForm {
    pub fn size(&self) -> usize {
        self.p.rows()
    }

    pub fn reconstruct(&self) -> Mat {
        &(&self.p * &Mat::block_diag(&self.c, &self.n)) * &self.p_inv
    }

    /// `P diag(C^{-1}, 0) P^{-1}`.
    pub fn drazin(&self) -> Mat {
        let c_inv = self.c.inverse().expect("the core block is invertible");
        let zero = Mat::zeros(self.n.rows(), self.n.cols());
        &(&self.p * &Mat::block_diag(&c_inv, &zero)) * &self.p_inv
    }
}

/// P's first columns are the pivot columns of `A^k`, the rest span `N(A^k)`.
pub fn core_nilpotent(a: &Mat) -> Result<CoreNilpotentForm> {
    let size = a.require_square()?;
    let k = geninv::drazin_index(a)?;
    let ak = a.pow(k);
    let range = ak.column_basis();
    let p = range.hstack(&ak.null_space())?;
    let r = range.cols();
    let p_inv = p.inverse().map_err(|_| Error::Verification {
        what: "core-nilpotent basis".into(),
        detail: "R(A^k) and N(A^k) are not complementary".into(),
    })?;
    let similar = &(&p_inv * a) * &p;
    let form = CoreNilpotentForm {
        c: similar.submatrix(0, 0, r, r),
        n: similar.submatrix(r, r, size - r, size - r),
        p,
        p_inv,
        k,
        rank: r,
    };
    let off_diagonal_zero = similar.submatrix(0, r, r, size - r).is_zero()
        && similar.submatrix(r, 0, size - r, r).is_zero();
    if !off_diagonal_zero || !form.c.is_invertible() || !form.n.is_nilpotent() {
        return Err(Error::Verification {
            what: "core-nilpotent form".into(),
            detail: "A is not block diagonal in the computed basis".into(),
        });
    }
    Ok(form)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockSplit {
    pub b1: Mat,
    pub b2: Mat,
    pub b3: Mat,
    pub b4: Mat,
}

impl BlockSplit {
    pub fn assemble(&self) -> Result<Mat> {
        Mat::from_blocks(&self.b1, &self.b2, &self.b3, &self.b4)
    }
}

/// Blocks of `P^{-1} B P` in the form's coordinates.
pub fn blocks(form: &CoreNilpotentForm, b: &Mat) -> Result<BlockSplit> {
    let n = form.size();
    if b.shape() != (n, n) {
        return Err(Error::Shape {
            op: "blocks",
            left: (n, n),
            right: b.shape(),
        });
    }
    let r = form.rank;
    let m = &(&form.p_inv * b) * &form.p;
    Ok(BlockSplit {
        b1: m.submatrix(0, 0, r, r),
        b2: m.submatrix(0, r, r, n - r),
        b3: m.submatrix(r, 0, n - r, r),
        b4: m.submatrix(r, r, n - r, n - r),
    })
}

/// `B3 = 0`, `C + B1` invertible and `N + B4` nilpotent. A 0×0 block
/// counts as both invertible and nilpotent.
pub fn block_condition(form: &CoreNilpotentForm, split: &BlockSplit) -> bool {
    split.b3.is_zero()
        && (&form.c + &split.b1).is_invertible()
        && (&form.n + &split.b4).is_nilpotent()
}

fn perturbation_inverse(x: &Mat, b: &Mat) -> Option<Mat> {
    (&Mat::identity(b.rows()) + &(x * b)).inverse().ok()
}

/// Absorption law for core-EP inverses with the block criterion.
pub fn suite_cor_coreep_blocks(a: &Mat, f: &Mat) -> Result<ConditionReport> {
    let inner = addabs::absorption_pcore(a, f)?;
    let mut r = ConditionReport::new("cor-blocks");
    r.pre("f square of matching size", true);
    for label in ["1", "2", "3"] {
        r.cond(
            label,
            inner.condition(label).expect("absorption-pcore label"),
        );
    }
    let form = core_nilpotent(a)?;
    let split = blocks(&form, &(f - a))?;
    r.cond("4", block_condition(&form, &split));
    r.witness("P", &form.p);
    r.witness("B3", &split.b3);
    Ok(r)
}

/// Core-EP inverse of `A` absorbed against the Drazin inverse of `F`.
pub fn suite_cor_mixed(a: &Mat, f: &Mat) -> Result<ConditionReport> {
    addabs::same_square(a, f, "cor-mixed")?;
    let mut r = ConditionReport::new("cor-mixed");
    r.pre("f square of matching size", true);
    let b = f - a;
    let apc = geninv::pseudo_core(a)?.inverse;
    let fpc = geninv::pseudo_core(f)?.inverse;
    let fd = geninv::drazin(f)?.inverse;
    let cand = perturbation_inverse(&apc, &b).map(|al| &al * &apc);
    r.cond("1", (&(&apc * &(a + f)) * &fd) == (&apc + &fd));
    r.cond(
        "2",
        geninv::is_star_dmp(f)?.is_some() && cand.as_ref() == Some(&fpc),
    );
    r.cond("3", cand.as_ref() == Some(&fd));
    r.witness("f_drazin", &fd);
    Ok(r)
}

/// Two-sided absorption: Drazin against core-EP plus dual core-EP.
pub fn suite_cor_dual(a: &Mat, f: &Mat) -> Result<ConditionReport> {
    addabs::same_square(a, f, "cor-dual")?;
    let mut r = ConditionReport::new("cor-dual");
    r.pre("f square of matching size", true);
    let b = f - a;
    let af = a + f;
    let ad = geninv::drazin(a)?.inverse;
    let fd = geninv::drazin(f)?.inverse;
    let apc = geninv::pseudo_core(a)?.inverse;
    let fpc = geninv::pseudo_core(f)?.inverse;
    let adual = geninv::dual_pseudo_core(a)?.inverse;
    let fdual = geninv::dual_pseudo_core(f)?.inverse;
    let alpha = perturbation_inverse(&ad, &b);
    let beta = (&Mat::identity(b.rows()) + &(&b * &ad)).inverse().ok();

    r.cond("1", (&(&ad * &af) * &fd) == (&ad + &fd));
    r.cond("2", alpha.as_ref().is_some_and(|al| (al * &ad) == fd));
    r.cond(
        "3",
        (&(&apc * &af) * &fpc) == (&apc + &fpc) && (&(&adual * &af) * &fdual) == (&adual + &fdual),
    );
    let c4 = match (&alpha, &beta) {
        (Some(al), Some(be)) => (al * &apc) == fpc && (&adual * be) == fdual,
        _ => false,
    };
    r.cond("4", c4);
    r.witness("f_drazin", &fd);
    Ok(r)
}

/// Absorption law for weak group inverses.
pub fn suite_cor_weakgroup(a: &Mat, f: &Mat) -> Result<ConditionReport> {
    addabs::same_square(a, f, "cor-weakgroup")?;
    let mut r = ConditionReport::new("cor-weakgroup");
    r.pre("f square of matching size", true);
    let b = f - a;
    let aw = geninv::weak_group(a)?.inverse;
    let fw = geninv::weak_group(f)?.inverse;
    r.cond("1", (&(&aw * &(a + f)) * &fw) == (&aw + &fw));
    r.cond(
        "2",
        perturbation_inverse(&aw, &b).is_some_and(|al| &al * &aw == fw),
    );
    r.witness("a_weak_group", &aw);
    r.witness("f_weak_group", &fw);
    Ok(r)
}
