//! Suites built on an arbitrary minimal weak Drazin inverse `a⁺ ∈ T_l(a)`.

use super::{
    alpha_beta_unchecked, complement, inverse_opt, same_square, transport_holds, z_panel,
    ConditionReport, PANEL_RANDOM,
};
use crate::error::{Error, Result};
use crate::exact::{Mat, Relation, Side};
use crate::weakdrazin::WeakDrazinBase;

/// `(1 - p) b p = 0` where `p = a a⁺`.
pub(crate) fn left_block_vanishes(p: &Mat, b: &Mat) -> bool {
    (&(&complement(p) * b) * p).is_zero()
}

pub fn suite_lemma_pd12(a: &Mat, aplus: &Mat, b: &Mat) -> Result<ConditionReport> {
    same_square(a, aplus, "pd12")?;
    same_square(a, b, "pd12")?;
    let mut r = ConditionReport::new("pd12");
    let base = WeakDrazinBase::new(a)?;
    if !r.pre("a+ in T_l(a)", base.tl_contains(aplus)?) {
        return Ok(r);
    }
    let ab = alpha_beta_unchecked(aplus, b);
    if !r.pre("1+a+b invertible", ab.is_some()) {
        return Ok(r);
    }
    let ab = ab.unwrap();
    let f = a + b;
    let p = a * aplus;
    let ff0 = &f * &ab.f0;
    let q = complement(&p);

    r.cond("1", (&f * &(&ab.f0 * &ab.f0)) == ab.f0);
    r.cond("2", p.column_space_included_in(&ff0));
    r.cond("3", ff0 == p);
    r.cond("4", p.space_relation(&ff0, Side::Column, Relation::Equal)?);
    r.cond("5", (&(&q * b) * aplus).is_zero());
    r.cond("6", left_block_vanishes(&p, b));
    r.cond("7", (&(&q * &ab.beta) * aplus).is_zero());
    r.check("ff0 idempotent", ff0.is_idempotent());
    r.witness("alpha", &ab.alpha);
    r.witness("beta", &ab.beta);
    r.witness("f0", &ab.f0);
    Ok(r)
}

pub fn suite_lemma_23(a: &Mat, aplus: &Mat, apm: &Mat, b: &Mat) -> Result<ConditionReport> {
    same_square(a, aplus, "23")?;
    same_square(a, apm, "23")?;
    same_square(a, b, "23")?;
    let mut r = ConditionReport::new("23");
    let base = WeakDrazinBase::new(a)?;
    let ok1 = r.pre("a+ in T_l(a)", base.tl_contains(aplus)?);
    let ok2 = r.pre("a± in T_l(a)", base.tl_contains(apm)?);
    if !(ok1 && ok2) {
        return Ok(r);
    }
    let ab_plus = alpha_beta_unchecked(aplus, b);
    let ab_pm = alpha_beta_unchecked(apm, b);
    let c1 = r.cond(
        "1",
        ab_plus.is_some() && left_block_vanishes(&(a * aplus), b),
    );
    let c2 = r.cond("2", ab_pm.is_some() && left_block_vanishes(&(a * apm), b));
    if c1 && c2 {
        let (ap, am) = (ab_plus.unwrap(), ab_pm.unwrap());
        let lhs = &ap.alpha * apm;
        let rhs = &am.alpha * apm;
        r.check("(1+a+b)^-1 a± = (1+a±b)^-1 a±", lhs == rhs);
        r.witness("alpha", &ap.alpha);
        r.witness("alpha_pm", &am.alpha);
    }
    Ok(r)
}

pub fn suite_thm_pd27(
    a: &Mat,
    aplus: &Mat,
    apm: &Mat,
    b: &Mat,
    s: usize,
) -> Result<ConditionReport> {
    same_square(a, aplus, "pd27")?;
    same_square(a, apm, "pd27")?;
    same_square(a, b, "pd27")?;
    positive_s(s)?;
    let mut r = ConditionReport::new("pd27");
    let base = WeakDrazinBase::new(a)?;
    let ok1 = r.pre("a+ in T_l(a)", base.tl_contains(aplus)?);
    let ok2 = r.pre("a± in T_l(a)", base.tl_contains(apm)?);
    if !(ok1 && ok2) {
        return Ok(r);
    }
    let Some(ab) = alpha_beta_unchecked(aplus, b) else {
        r.pre("1+a+b invertible", false);
        return Ok(r);
    };
    r.pre("1+a+b invertible", true);
    let f = a + b;
    let fb = WeakDrazinBase::new(&f)?;
    let p = a * aplus;
    let q = complement(&p);
    let index_ok = fb.index() <= s;

    let c1 = left_block_vanishes(&p, b) && (&(&q * &f.pow(s)) * &q).is_zero();
    r.cond("1", c1);
    let cand_plus = &ab.alpha * aplus;
    let cand_pm = &ab.alpha * apm;
    let c2 = r.cond("2", index_ok && fb.tl_contains(&cand_plus)?);
    let c3 = r.cond("3", index_ok && fb.tl_contains(&cand_pm)?);
    r.witness("alpha", &ab.alpha);
    r.witness("candidate_plus", &cand_plus);
    r.witness("candidate_pm", &cand_pm);
    if c1 && c2 && c3 {
        let alpha_inv = inverse_opt(&ab.alpha).expect("alpha is an inverse");
        let zs = z_panel(a.rows(), PANEL_RANDOM);
        r.check(
            "T_l(f) = alpha T_l(a)",
            transport_holds(&base, &fb, &ab.alpha, &alpha_inv, &zs)?,
        );
    }
    Ok(r)
}

pub(crate) fn positive_s(s: usize) -> Result<()> {
    if s == 0 {
        Err(Error::Domain("s must be a positive integer".into()))
    } else {
        Ok(())
    }
}

/// `T_l(A + B) = α T_l(A)` sampled on `zs`, with `α = (1 + A^D B)^{-1}`.
pub fn tl_transport_check(a: &Mat, b: &Mat, zs: &[Mat]) -> Result<bool> {
    same_square(a, b, "tl_transport_check")?;
    let base = WeakDrazinBase::new(a)?;
    let Some(ab) = alpha_beta_unchecked(base.drazin(), b) else {
        return Err(Error::Domain("1+a^D b is not invertible".into()));
    };
    let f = a + b;
    let fb = WeakDrazinBase::new(&f)?;
    let cand = &ab.alpha * base.drazin();
    if !left_block_vanishes(base.projector(), b) || !fb.tl_contains(&cand)? {
        return Err(Error::Domain(
            "transport needs (alpha a^D) in T_l(a+b)".into(),
        ));
    }
    let alpha_inv = inverse_opt(&ab.alpha).expect("alpha is an inverse");
    transport_holds(&base, &fb, &ab.alpha, &alpha_inv, zs)
}

/// Absorption law for minimal weak Drazin inverses of `a` and `f`.
pub fn absorption_mwd(a: &Mat, aplus: &Mat, f: &Mat, fplus: &Mat) -> Result<ConditionReport> {
    same_square(a, aplus, "pd38")?;
    same_square(a, f, "pd38")?;
    same_square(a, fplus, "pd38")?;
    let mut r = ConditionReport::new("pd38");
    let ok1 = r.pre("a+ in T_l(a)", WeakDrazinBase::new(a)?.tl_contains(aplus)?);
    let ok2 = r.pre("f+ in T_l(f)", WeakDrazinBase::new(f)?.tl_contains(fplus)?);
    if !(ok1 && ok2) {
        return Ok(r);
    }
    let b = f - a;
    let c1 = r.cond("1", (&(aplus * &(a + f)) * fplus) == (aplus + fplus));
    let ab = alpha_beta_unchecked(aplus, &b);
    r.cond("2", ab.as_ref().is_some_and(|ab| &ab.f0 == fplus));
    let pivot = (f * fplus) == (a * aplus);
    r.check("(ff+ = aa+) iff (1)", pivot == c1);
    if let Some(ab) = ab {
        r.witness("alpha", &ab.alpha);
        r.witness("f0", &ab.f0);
    }
    Ok(r)
}

/// Additive property for outer inverses `x` of `a` and `y` of `f`.
pub fn suite_outer(a: &Mat, x: &Mat, f: &Mat, y: &Mat) -> Result<ConditionReport> {
    same_square(a, x, "outer")?;
    same_square(a, f, "outer")?;
    same_square(a, y, "outer")?;
    let mut r = ConditionReport::new("outer");
    let ok1 = r.pre("xax=x", &(&(x * a) * x) == x);
    let ok2 = r.pre("yfy=y", &(&(y * f) * y) == y);
    if !(ok1 && ok2) {
        return Ok(r);
    }
    let b = f - a;
    let af = a + f;
    let sum = x + y;
    let left = (&(x * &af) * y) == sum;
    let right = (&(y * &af) * x) == sum;
    r.detail("x(a+f)y=x+y", left);
    r.detail("y(a+f)x=x+y", right);
    r.detail("(1) halves split", left != right);
    r.cond("1", left && right);
    r.cond(
        "2",
        x.space_relation(y, Side::Column, Relation::Equal)?
            && x.space_relation(y, Side::Row, Relation::Equal)?,
    );
    let one_xb = &Mat::identity(a.rows()) + &(x * &b);
    let inv = inverse_opt(&one_xb);
    r.cond("3", inv.as_ref().is_some_and(|m| &(m * x) == y));
    r.check("(1+xb)y=x iff x(a+f)y=x+y", (&(&one_xb * y) == x) == left);
    Ok(r)
}

/// Range hypotheses on `B` that keep `X (I + BX)^{-1}` in `T_l(A + B)`.
pub fn suite_mosic(a: &Mat, b: &Mat, x: &Mat) -> Result<ConditionReport> {
    same_square(a, b, "mosic")?;
    same_square(a, x, "mosic")?;
    let mut r = ConditionReport::new("mosic");
    let base = WeakDrazinBase::new(a)?;
    if !r.pre("x in T_l(a)", base.tl_contains(x)?) {
        return Ok(r);
    }
    let Some(inv) = inverse_opt(&(&Mat::identity(a.rows()) + &(b * x))) else {
        r.pre("I+BX invertible", false);
        return Ok(r);
    };
    r.pre("I+BX invertible", true);
    let ak = a.pow(base.index());
    let h1 = b.column_space_included_in(&ak);
    let h2 = b.space_relation(&(x * a), Side::Row, Relation::Included)?;
    let y = x * &inv;
    let f = a + b;
    let concl = WeakDrazinBase::new(&f)?.tl_contains(&y)?;
    r.detail("R(B) in R(A^k)", h1);
    r.detail("R(B*) in R((XA)*)", h2);
    r.detail("X(I+BX)^-1 in T_l(F)", concl);
    r.check("hypotheses imply conclusion", !(h1 && h2) || concl);
    r.witness("candidate", &y);
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::GaussRational;
    use crate::geninv;

    fn a0() -> Mat {
        Mat::from_ints(&[[1, 1], [0, 0]])
    }
    fn e11() -> Mat {
        Mat::from_ints(&[[1, 0], [0, 0]])
    }

    #[test]
    fn pd12_examples() {
        let r = suite_lemma_pd12(&a0(), &e11(), &e11()).unwrap();
        assert_eq!(r.conditions.len(), 7);
        assert!(r.all_true(), "{r:?}");
        assert!(r.checks.iter().all(|c| c.1));

        let a = Mat::from_ints(&[[1, 2, 0], [0, 0, 1], [0, 0, 0]]);
        let ad = geninv::drazin(&a).unwrap().inverse;
        let r = suite_lemma_pd12(&a, &ad, &Mat::zeros(3, 3)).unwrap();
        assert!(r.all_true());

        let r = suite_lemma_pd12(&a0(), &e11(), &Mat::from_ints(&[[0, 0], [1, 0]])).unwrap();
        assert!(r.conditions_agree(), "{r:?}");
    }

    #[test]
    fn pd12_reports_failed_preconditions() {
        let r = suite_lemma_pd12(&a0(), &Mat::identity(2), &e11()).unwrap();
        assert!(!r.preconditions_hold());
        assert!(r.conditions.is_empty());
    }

    #[test]
    fn lemma23_examples() {
        let r = suite_lemma_23(&a0(), &e11(), &a0(), &e11()).unwrap();
        assert_eq!(r.conditions, vec![("1".into(), true), ("2".into(), true)]);
        assert_eq!(r.checks.len(), 1);
        assert!(r.checks[0].1);
    }

    #[test]
    fn pd27_examples() {
        let r = suite_thm_pd27(&a0(), &e11(), &a0(), &e11(), 1).unwrap();
        assert!(
            r.all_true() && r.verdict() == super::super::Verdict::Agree,
            "{r:?}"
        );
        let half = GaussRational::ratio(1, 2);
        let mut expected = Mat::zeros(2, 2);
        expected[(0, 0)] = half;
        assert_eq!(r.witnesses["candidate_plus"], expected);

        let r = suite_thm_pd27(&a0(), &e11(), &a0(), &Mat::zeros(2, 2), 1).unwrap();
        assert!(r.all_true());
        assert_eq!(r.witnesses["candidate_plus"], e11());
    }

    #[test]
    fn transport_on_counterexample_pair() {
        let zs = vec![Mat::zeros(2, 2), Mat::from_ints(&[[0, 0], [1, 0]])];
        assert!(tl_transport_check(&a0(), &e11(), &zs).unwrap());
    }

    #[test]
    fn absorption_examples() {
        let r = absorption_mwd(&a0(), &e11(), &a0(), &e11()).unwrap();
        assert!(r.all_true());
        let f = Mat::from_ints(&[[2, 1], [0, 0]]);
        let mut fplus = Mat::zeros(2, 2);
        fplus[(0, 0)] = GaussRational::ratio(1, 2);
        let r = absorption_mwd(&a0(), &e11(), &f, &fplus).unwrap();
        assert!(r.all_true(), "{r:?}");
        // Another member of T_l(f) whose ff+ differs from aa+.
        let other = WeakDrazinBase::new(&f)
            .unwrap()
            .tl_value(&Mat::from_ints(&[[0, 1], [0, 0]]))
            .unwrap();
        let r = absorption_mwd(&a0(), &e11(), &f, &other).unwrap();
        assert!(r.preconditions_hold());
        assert_eq!(r.verdict(), super::super::Verdict::Agree);
        assert!(!r.conditions[0].1, "{r:?}");
    }

    #[test]
    fn outer_examples() {
        let a = Mat::from_ints(&[[2, 1], [1, 1]]);
        let ai = a.inverse().unwrap();
        let r = suite_outer(&a, &ai, &a, &ai).unwrap();
        assert!(r.all_true());
        let f = Mat::from_ints(&[[2, 1], [0, 0]]);
        let mut y = Mat::zeros(2, 2);
        y[(0, 0)] = GaussRational::ratio(1, 2);
        let r = suite_outer(&a0(), &e11(), &f, &y).unwrap();
        assert!(r.preconditions_hold());
        assert_eq!(r.verdict(), super::super::Verdict::Agree, "{r:?}");
    }

    #[test]
    fn mosic_examples() {
        let a = Mat::from_ints(&[[1, 2, 0], [0, 0, 1], [0, 0, 0]]);
        let ad = geninv::drazin(&a).unwrap().inverse;
        let r = suite_mosic(&a, &Mat::zeros(3, 3), &ad).unwrap();
        assert!(r.details.iter().all(|d| d.1));
        let p = &a * &ad;
        let b0 = Mat::from_ints(&[[1, -1, 2], [0, 3, 1], [1, 1, 1]]);
        let b = &(&p * &b0) * &p;
        let r = suite_mosic(&a, &b, &ad).unwrap();
        if r.preconditions_hold() {
            assert!(r.details[0].1 && r.details[1].1 && r.details[2].1, "{r:?}");
        }
    }
}
