//! Suites for Drazin inverses, where `p = a a^D` commutes with `a`.

use super::mwd::{left_block_vanishes, positive_s};
use super::{
    complement, inverse_opt, right_transport_holds, same_square, transport_holds, z_panel,
    ConditionReport, PANEL_RANDOM,
};
use crate::error::Result;
use crate::exact::Mat;
use crate::geninv;
use crate::weakdrazin::WeakDrazinBase;

/// `α = (1 + a^D b)^{-1}` and `β = (1 + b a^D)^{-1}`.
fn drazin_alpha_beta(base: &WeakDrazinBase, b: &Mat) -> Option<(Mat, Mat)> {
    let id = Mat::identity(b.rows());
    let ad = base.drazin();
    let alpha = inverse_opt(&(&id + &(ad * b)))?;
    let beta = inverse_opt(&(&id + &(b * ad))).expect("Jacobson's lemma");
    Some((alpha, beta))
}

pub fn suite_thm_pd210(a: &Mat, b: &Mat, s: usize) -> Result<ConditionReport> {
    same_square(a, b, "pd210")?;
    positive_s(s)?;
    let mut r = ConditionReport::new("pd210");
    let base = WeakDrazinBase::new(a)?;
    let Some((alpha, beta)) = drazin_alpha_beta(&base, b) else {
        r.pre("1+a^D b invertible", false);
        return Ok(r);
    };
    r.pre("1+a^D b invertible", true);
    let f = a + b;
    let fb = WeakDrazinBase::new(&f)?;
    let p = base.projector();
    let q = complement(p);
    let fs = f.pow(s);
    let left_zero = (&q * &fs).is_zero();
    let cand = &alpha * base.drazin();

    let c1 = r.cond("1", left_block_vanishes(p, b) && (&fs * &q).is_zero());
    let c2 = r.cond("2", (&(p * b) * &q).is_zero() && left_zero);
    let c3 = r.cond("3", (p * b) == (b * p) && left_zero);
    let c4 = r.cond("4", fb.index() <= s && fb.drazin() == &cand);
    r.witness("alpha", &alpha);
    r.witness("beta", &beta);
    r.witness("f_drazin", fb.drazin());
    if c1 && c2 && c3 && c4 {
        let zs = z_panel(a.rows(), PANEL_RANDOM);
        let alpha_inv = inverse_opt(&alpha).expect("alpha is an inverse");
        let beta_inv = inverse_opt(&beta).expect("beta is an inverse");
        r.check(
            "T_l(f) = alpha T_l(a)",
            transport_holds(&base, &fb, &alpha, &alpha_inv, &zs)?,
        );
        r.check(
            "T_r(f) = T_r(a) beta",
            right_transport_holds(&base, &fb, &beta, &beta_inv, &zs)?,
        );
    }
    Ok(r)
}

/// Absorption law for Drazin inverses; `k = i(f)`.
pub fn suite_thm_pd318(a: &Mat, f: &Mat) -> Result<ConditionReport> {
    same_square(a, f, "pd318")?;
    let mut r = ConditionReport::new("pd318");
    let base = WeakDrazinBase::new(a)?;
    let fb = WeakDrazinBase::new(f)?;
    r.pre("f has a Drazin inverse", true);
    let b = f - a;
    let k = fb.index();
    let (ad, fd) = (base.drazin(), fb.drazin());
    let p = base.projector();
    let q = complement(p);
    let fk = f.pow(k);
    let ab = drazin_alpha_beta(&base, &b);
    let inv = ab.is_some();
    let left_zero = (&q * &fk).is_zero();

    r.cond("1", (&(ad * &(a + f)) * fd) == (ad + fd));
    r.cond("2", ab.as_ref().is_some_and(|(al, _)| &(al * ad) == fd));
    r.cond("3", inv && (p * &b) == (&b * p) && left_zero);
    r.cond(
        "4a",
        inv && left_block_vanishes(p, &b) && (&fk * &q).is_zero(),
    );
    r.cond("4b", inv && (&(p * &b) * &q).is_zero() && left_zero);
    r.witness("f_drazin", fd);
    Ok(r)
}

/// Perturbation under commuting hypotheses; condition (2) searches `m` up to
/// `n·i(a) + n`.
pub fn suite_cor_czwe(a: &Mat, b: &Mat) -> Result<ConditionReport> {
    let n = same_square(a, b, "czwe")?;
    let mut r = ConditionReport::new("czwe");
    let base = WeakDrazinBase::new(a)?;
    let p = base.projector();
    let q = complement(p);
    let ab = drazin_alpha_beta(&base, b);
    let h1 = r.pre("1+a^D b invertible", ab.is_some());
    let h2 = r.pre("aa^D b = b aa^D", (p * b) == (b * p));
    let aq = a * &q;
    let h3 = r.pre("a(1-aa^D)b = ba(1-aa^D)", (&aq * b) == (b * &aq));
    if !(h1 && h2 && h3) {
        return Ok(r);
    }
    let (alpha, _) = ab.unwrap();
    let f = a + b;
    let fb = WeakDrazinBase::new(&f)?;
    r.cond("1", fb.drazin() == &(&alpha * base.drazin()));
    let bound = n * base.index() + n;
    let mut power = b.clone();
    let mut found = None;
    for m in 1..=bound.max(1) {
        if (p * &power) == power {
            found = Some(m);
            break;
        }
        power = &power * b;
    }
    r.cond("2", found.is_some());
    if let Some(m) = found {
        r.detail(format!("m={m}"), true);
    }
    r.witness("alpha", &alpha);
    Ok(r)
}

/// Group-inverse perturbation `B = A + E`.
pub fn suite_cor_wei(a: &Mat, e: &Mat) -> Result<ConditionReport> {
    same_square(a, e, "wei")?;
    let mut r = ConditionReport::new("wei");
    let base = WeakDrazinBase::new(a)?;
    let Some((alpha, _)) = drazin_alpha_beta(&base, e) else {
        r.pre("I+A^D E invertible", false);
        return Ok(r);
    };
    r.pre("I+A^D E invertible", true);
    let bm = a + e;
    let ad = base.drazin();
    let p = base.projector();
    let cand = &alpha * ad;
    let c1 = match geninv::group_inverse(&bm) {
        Ok(g) => {
            r.witness("b_group", &g.inverse);
            g.inverse == cand
        }
        Err(crate::error::Error::NotGroupInvertible { .. }) => false,
        Err(err) => return Err(err),
    };
    r.cond("1", c1);
    let rank_ok = bm.rank() == a.pow(base.index()).rank();
    let pe = p * e;
    let rhs = &(a - &(&(a * a) * ad)) + e;
    r.cond("2", rank_ok && pe == e * p && pe == rhs);
    r.witness("alpha", &alpha);
    Ok(r)
}
