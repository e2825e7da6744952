//! Suites for pseudo core (core-EP) inverses, where `p = a a^⊕` is Hermitian.

use super::mwd::{left_block_vanishes, positive_s};
use super::{complement, inverse_opt, same_square, z_panel, ConditionReport, PANEL_RANDOM};
use crate::error::Result;
use crate::exact::Mat;
use crate::geninv;
use crate::weakdrazin::WeakDrazinBase;

/// Shared data for `a`, `b` and `f = a + b`.
struct Ctx {
    a: WeakDrazinBase,
    b: Mat,
    f: Mat,
    fb: WeakDrazinBase,
    /// `a^⊕`
    apc: Mat,
    /// `f^⊕`
    fpc: Mat,
    /// `a a^⊕`
    p: Mat,
    /// `(1 + a^⊕ b)^{-1}`, when it exists.
    alpha: Option<Mat>,
}

impl Ctx {
    fn new(a: &Mat, b: &Mat, op: &'static str) -> Result<Self> {
        same_square(a, b, op)?;
        let f = a + b;
        let apc = geninv::pseudo_core(a)?.inverse;
        let fpc = geninv::pseudo_core(&f)?.inverse;
        let id = Mat::identity(a.rows());
        let alpha = inverse_opt(&(&id + &(&apc * b)));
        Ok(Self {
            p: a * &apc,
            a: WeakDrazinBase::new(a)?,
            fb: WeakDrazinBase::new(&f)?,
            b: b.clone(),
            f,
            apc,
            fpc,
            alpha,
        })
    }

    fn candidate(&self) -> Option<Mat> {
        self.alpha.as_ref().map(|al| al * &self.apc)
    }

    fn q(&self) -> Mat {
        complement(&self.p)
    }

    fn lower_left_zero(&self) -> bool {
        left_block_vanishes(&self.p, &self.b)
    }

    /// `(1 + a^D b)^{-1} a^D ∈ T_l(f)`.
    fn drazin_candidate_in_tl(&self) -> Result<bool> {
        let id = Mat::identity(self.f.rows());
        let ad = self.a.drazin();
        match inverse_opt(&(&id + &(ad * &self.b))) {
            Some(al) => self.fb.tl_contains(&(&al * ad)),
            None => Ok(false),
        }
    }

    /// `α x ∈ T_l(f)` for every `x` of the panel parametrization of `T_l(a)`.
    fn panel_in_tl(&self) -> Result<bool> {
        let Some(alpha) = &self.alpha else {
            return Ok(false);
        };
        for z in z_panel(self.f.rows(), PANEL_RANDOM) {
            if !self.fb.tl_contains(&(alpha * &self.a.tl_value(&z)?))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn fpc_matches(&self) -> bool {
        self.candidate().is_some_and(|c| c == self.fpc)
    }

    fn record_witnesses(&self, r: &mut ConditionReport) {
        r.witness("a_pcore", &self.apc);
        r.witness("f_pcore", &self.fpc);
        if let Some(al) = &self.alpha {
            r.witness("alpha", al);
        }
    }
}

pub fn suite_thm_pd31(a: &Mat, b: &Mat, s: usize) -> Result<ConditionReport> {
    positive_s(s)?;
    let cx = Ctx::new(a, b, "pd31")?;
    let mut r = ConditionReport::new("pd31");
    if !r.pre("1+a⊕b invertible", cx.alpha.is_some()) {
        return Ok(r);
    }
    let q = cx.q();
    let index_ok = cx.fb.index() <= s;
    r.cond(
        "1",
        cx.lower_left_zero() && (&(&q * &cx.f.pow(s)) * &q).is_zero(),
    );
    r.cond("2", index_ok && cx.fpc_matches());
    r.cond("3", index_ok && cx.drazin_candidate_in_tl()?);
    r.cond("4", index_ok && cx.panel_in_tl()?);
    cx.record_witnesses(&mut r);
    Ok(r)
}

pub fn suite_cor_pd32(a: &Mat, b: &Mat, s: usize) -> Result<ConditionReport> {
    positive_s(s)?;
    let cx = Ctx::new(a, b, "pd32")?;
    let mut r = ConditionReport::new("pd32");
    if !r.pre("1+a⊕b invertible", cx.alpha.is_some()) {
        return Ok(r);
    }
    r.cond(
        "1",
        cx.lower_left_zero() && (&cx.q() * &cx.f.pow(s)).is_zero(),
    );
    r.cond("2", cx.fb.index() <= s && cx.fpc_matches());
    cx.record_witnesses(&mut r);
    Ok(r)
}

pub fn suite_thm_pd33(a: &Mat, b: &Mat, s: usize) -> Result<ConditionReport> {
    positive_s(s)?;
    let cx = Ctx::new(a, b, "pd33")?;
    let mut r = ConditionReport::new("pd33");
    if !r.pre("1+a⊕b invertible", cx.alpha.is_some()) {
        return Ok(r);
    }
    let q = cx.q();
    let fs = cx.f.pow(s);
    let index_ok = cx.fb.index() <= s;
    let cand = cx.candidate().expect("alpha exists");
    r.cond("1", cx.lower_left_zero() && (&fs * &q).is_zero());
    r.cond("2", &cx.f * &cx.p == &cx.p * &cx.f && (&q * &fs).is_zero());
    r.cond(
        "3",
        index_ok && geninv::is_star_dmp(&cx.f)?.is_some() && cx.fpc == cand,
    );
    r.cond("4", index_ok && cx.fb.drazin() == &cand);
    cx.record_witnesses(&mut r);
    r.witness("f_drazin", cx.fb.drazin());
    Ok(r)
}

pub fn suite_prop_ep(a: &Mat, b: &Mat) -> Result<ConditionReport> {
    let cx = Ctx::new(a, b, "prop-ep")?;
    let mut r = ConditionReport::new("prop-ep");
    if !r.pre("1+a⊕b invertible", cx.alpha.is_some()) {
        return Ok(r);
    }
    let fp = &cx.f * &cx.p;
    r.cond("1", cx.lower_left_zero() && (&cx.f * &cx.q()).is_zero());
    r.cond("2", fp == &cx.p * &cx.f && fp == cx.f);
    let c3 = if geninv::is_ep(&cx.f)? {
        let core = geninv::core_inverse(&cx.f)?.inverse;
        r.witness("f_core", &core);
        cx.candidate().is_some_and(|c| c == core)
    } else {
        false
    };
    r.cond("3", c3);
    cx.record_witnesses(&mut r);
    Ok(r)
}

/// Absorption law for pseudo core inverses, `F = A + B`.
pub fn absorption_pcore(a: &Mat, f: &Mat) -> Result<ConditionReport> {
    same_square(a, f, "absorption-pcore")?;
    let cx = Ctx::new(a, &(f - a), "absorption-pcore")?;
    let mut r = ConditionReport::new("absorption-pcore");
    r.pre("f square of matching size", true);
    let lhs = &(&cx.apc * &(a + f)) * &cx.fpc;
    r.cond("1", lhs == &cx.apc + &cx.fpc);
    r.cond("2", cx.fpc_matches());
    r.cond("3", cx.drazin_candidate_in_tl()?);
    r.cond("4", cx.panel_in_tl()?);
    cx.record_witnesses(&mut r);
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::addabs::Verdict;
    use crate::exact::GaussRational;

    fn a0() -> Mat {
        Mat::from_ints(&[[1, 1], [0, 0]])
    }
    fn b0() -> Mat {
        Mat::from_ints(&[[1, 0], [0, 0]])
    }

    #[test]
    fn counterexample_pair() {
        let r = suite_thm_pd31(&a0(), &b0(), 1).unwrap();
        assert!(r.preconditions_hold() && r.all_true(), "{r:?}");
        let mut half = Mat::zeros(2, 2);
        half[(0, 0)] = GaussRational::ratio(1, 2);
        assert_eq!(r.witnesses["f_pcore"], half);

        let r = suite_cor_pd32(&a0(), &b0(), 1).unwrap();
        assert!(r.all_true());

        let r = suite_thm_pd33(&a0(), &b0(), 1).unwrap();
        assert!(r.preconditions_hold());
        assert_eq!(r.conditions.len(), 4);
        assert!(r.conditions.iter().all(|c| !c.1), "{r:?}");

        let r = suite_prop_ep(&a0(), &b0()).unwrap();
        assert!(r.conditions.iter().all(|c| !c.1), "{r:?}");
    }

    #[test]
    fn trivial_instances() {
        let zero = Mat::zeros(2, 2);
        assert!(suite_thm_pd31(&a0(), &zero, 1).unwrap().all_true());
        let herm = Mat::from_ints(&[[2, 1], [1, 0]]);
        assert!(suite_thm_pd33(&herm, &zero, 1).unwrap().all_true());
        assert!(suite_prop_ep(&herm, &zero).unwrap().all_true());
        let r = absorption_pcore(&a0(), &a0()).unwrap();
        assert!(r.all_true());
        assert_eq!(r.verdict(), Verdict::Agree);
    }

    #[test]
    fn absorption_on_counterexample_pair() {
        let f = &a0() + &b0();
        let r = absorption_pcore(&a0(), &f).unwrap();
        assert!(r.all_true(), "{r:?}");
    }
}
