//! Condition suites for additive properties and absorption laws.
//!
//! Every suite evaluates, exactly, each condition that one theorem declares
//! equivalent and returns them as a [`ConditionReport`]. On an instance whose
//! preconditions hold, a correct implementation of a true theorem yields
//! conditions that are all true or all false.

mod drazin;
mod mwd;
mod pcore;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::Mat;
use crate::harness::rng::InstanceRng;
use crate::weakdrazin::WeakDrazinBase;

pub use drazin::{suite_cor_czwe, suite_cor_wei, suite_thm_pd210, suite_thm_pd318};
pub use mwd::{
    absorption_mwd, suite_lemma_23, suite_lemma_pd12, suite_mosic, suite_outer, suite_thm_pd27,
    tl_transport_check,
};
pub use pcore::{absorption_pcore, suite_cor_pd32, suite_prop_ep, suite_thm_pd31, suite_thm_pd33};

pub type Labeled = Vec<(String, bool)>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionReport {
    #[serde(rename = "theorem_id")]
    pub theorem: String,
    pub preconditions: Labeled,
    /// The theorem's numbered items, in order.
    pub conditions: Labeled,
    /// Consequences that must be true whenever the preconditions hold
    /// (e.g. "in this case" clauses, evaluated once the conditions are true).
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub checks: Labeled,
    /// Informational observations; never judged.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub details: Labeled,
    pub witnesses: BTreeMap<String, Mat>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// Some precondition failed; nothing is claimed.
    Skipped,
    Agree,
    Disagree,
}

impl ConditionReport {
    pub fn new(theorem: &str) -> Self {
        Self {
            theorem: theorem.to_string(),
            preconditions: Vec::new(),
            conditions: Vec::new(),
            checks: Vec::new(),
            details: Vec::new(),
            witnesses: BTreeMap::new(),
        }
    }

    pub(crate) fn pre(&mut self, label: &str, ok: bool) -> bool {
        self.preconditions.push((label.to_string(), ok));
        ok
    }

    pub(crate) fn cond(&mut self, label: &str, ok: bool) -> bool {
        self.conditions.push((label.to_string(), ok));
        ok
    }

    pub(crate) fn check(&mut self, label: &str, ok: bool) {
        self.checks.push((label.to_string(), ok));
    }

    pub(crate) fn detail(&mut self, label: impl Into<String>, ok: bool) {
        self.details.push((label.into(), ok));
    }

    pub(crate) fn witness(&mut self, name: &str, m: &Mat) {
        self.witnesses.insert(name.to_string(), m.clone());
    }

    pub fn preconditions_hold(&self) -> bool {
        self.preconditions.iter().all(|(_, ok)| *ok)
    }

    pub fn conditions_agree(&self) -> bool {
        let mut values = self.conditions.iter().map(|(_, ok)| *ok);
        match values.next() {
            None => true,
            Some(first) => values.all(|v| v == first),
        }
    }

    /// True when every condition holds (vacuously when there are none).
    pub fn all_true(&self) -> bool {
        self.conditions.iter().all(|(_, ok)| *ok)
    }

    pub fn verdict(&self) -> Verdict {
        if !self.preconditions_hold() {
            Verdict::Skipped
        } else if self.conditions_agree() && self.checks.iter().all(|(_, ok)| *ok) {
            Verdict::Agree
        } else {
            Verdict::Disagree
        }
    }

    pub fn condition(&self, label: &str) -> Option<bool> {
        self.conditions
            .iter()
            .find(|(l, _)| l == label)
            .map(|(_, v)| *v)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serialization is infallible")
    }
}

pub(crate) fn identity_like(a: &Mat) -> Mat {
    Mat::identity(a.rows())
}

pub(crate) fn complement(p: &Mat) -> Mat {
    &identity_like(p) - p
}

pub(crate) fn inverse_opt(m: &Mat) -> Option<Mat> {
    m.inverse().ok()
}

pub(crate) fn same_square(a: &Mat, b: &Mat, op: &'static str) -> Result<usize> {
    let n = a.require_square()?;
    if b.shape() != a.shape() {
        return Err(Error::Shape {
            op,
            left: a.shape(),
            right: b.shape(),
        });
    }
    Ok(n)
}

/// `α = (1 + a⁺b)^{-1}`, `β = (1 + b a⁺)^{-1}` and `f₀ = α a⁺`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlphaBeta {
    pub alpha: Mat,
    pub beta: Mat,
    pub f0: Mat,
}

/// Returns `Ok(None)` when `1 + a⁺b` is singular, which is an ordinary outcome.
pub fn alpha_beta(a: &Mat, aplus: &Mat, b: &Mat) -> Result<Option<AlphaBeta>> {
    same_square(a, aplus, "alpha_beta")?;
    same_square(a, b, "alpha_beta")?;
    if !WeakDrazinBase::new(a)?.tl_contains(aplus)? {
        return Err(Error::Domain("alpha_beta: a+ is not in T_l(a)".into()));
    }
    Ok(alpha_beta_unchecked(aplus, b))
}

pub(crate) fn alpha_beta_unchecked(aplus: &Mat, b: &Mat) -> Option<AlphaBeta> {
    let id = identity_like(aplus);
    let alpha = inverse_opt(&(&id + &(aplus * b)))?;
    // Jacobson: 1 + b a⁺ is invertible together with 1 + a⁺ b.
    let beta = inverse_opt(&(&id + &(b * aplus))).expect("Jacobson's lemma");
    let f0 = &alpha * aplus;
    assert_eq!(f0, aplus * &beta, "push-through identity α a⁺ = a⁺ β");
    Some(AlphaBeta { alpha, beta, f0 })
}

/// Jacobson identity on one pair: when `I - XY` is invertible, returns
/// whether `I - YX` is invertible with inverse `I + Y (I - XY)^{-1} X`.
pub fn jacobson_check(x: &Mat, y: &Mat) -> Result<Option<bool>> {
    let xy = x.try_mul(y)?;
    let yx = y.try_mul(x)?;
    let Some(left) = inverse_opt(&(&identity_like(&xy) - &xy)) else {
        return Ok(None);
    };
    let Some(right) = inverse_opt(&(&identity_like(&yx) - &yx)) else {
        return Ok(Some(false));
    };
    let formula = &identity_like(&yx) + &(&(y * &left) * x);
    Ok(Some(right == formula))
}

/// Deterministic panel of parameters for quantifiers over `T_l(a)`:
/// zero, every elementary matrix, then `random` seeded draws.
pub fn z_panel(n: usize, random: usize) -> Vec<Mat> {
    let mut panel = vec![Mat::zeros(n, n)];
    for i in 0..n {
        for j in 0..n {
            let mut e = Mat::zeros(n, n);
            e[(i, j)] = num_traits::One::one();
            panel.push(e);
        }
    }
    let mut rng = InstanceRng::for_trial(0x5eed, "z-panel", n as u64);
    panel.extend((0..random).map(|_| rng.matrix(n, n, 3)));
    panel
}

pub(crate) const PANEL_RANDOM: usize = 3;

/// `α x ∈ T_l(f)` for every sampled `x ∈ T_l(a)`, and `α^{-1} y ∈ T_l(a)` for
/// every sampled `y ∈ T_l(f)`.
pub(crate) fn transport_holds(
    a: &WeakDrazinBase,
    f: &WeakDrazinBase,
    alpha: &Mat,
    alpha_inv: &Mat,
    zs: &[Mat],
) -> Result<bool> {
    for z in zs {
        if !f.tl_contains(&(alpha * &a.tl_value(z)?))? {
            return Ok(false);
        }
        if !a.tl_contains(&(alpha_inv * &f.tl_value(z)?))? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `T_r(f) = T_r(a) β`, sampled in both directions.
pub(crate) fn right_transport_holds(
    a: &WeakDrazinBase,
    f: &WeakDrazinBase,
    beta: &Mat,
    beta_inv: &Mat,
    zs: &[Mat],
) -> Result<bool> {
    for z in zs {
        if !f.tr_contains(&(&a.tr_value(z)? * beta))? {
            return Ok(false);
        }
        if !a.tr_contains(&(&f.tr_value(z)? * beta_inv))? {
            return Ok(false);
        }
    }
    Ok(true)
}
