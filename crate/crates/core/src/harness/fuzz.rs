//! Fuzz driver: random instances per suite, verdict tallies and minimized
//! disagreement witnesses.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::gen::{
    build_in, conforming_b, czwe_b, random_outer_inverse, random_with_index, wei_e, Coords,
    Profile, Recipe, Tail, Upper,
};
use super::rng::InstanceRng;
use crate::addabs::{self, ConditionReport, Verdict};
use crate::decomp;
use crate::error::{Error, Result};
use crate::exact::Mat;
use crate::geninv;
use crate::weakdrazin::WeakDrazinBase;

/// Registered suite ids, in reporting order.
pub const THEOREMS: [&str; 19] = [
    "pd12",
    "23",
    "pd27",
    "pd38",
    "outer",
    "pd210",
    "pd318",
    "czwe",
    "wei",
    "pd31",
    "pd32",
    "pd33",
    "prop-ep",
    "absorption-pcore",
    "mosic",
    "cor-blocks",
    "cor-mixed",
    "cor-dual",
    "cor-weakgroup",
];

/// Matrix inputs of each suite, by the names used in instances and on the
/// command line, plus whether the suite takes `s`.
pub fn inputs(theorem: &str) -> Result<(&'static [&'static str], bool)> {
    Ok(match theorem {
        "pd12" => (&["a", "aplus", "b"], false),
        "23" => (&["a", "aplus", "apm", "b"], false),
        "pd27" => (&["a", "aplus", "apm", "b"], true),
        "pd38" => (&["a", "aplus", "f", "fplus"], false),
        "outer" => (&["a", "x", "f", "y"], false),
        "pd210" | "pd31" | "pd32" | "pd33" => (&["a", "b"], true),
        "czwe" | "prop-ep" => (&["a", "b"], false),
        "wei" => (&["a", "e"], false),
        "mosic" => (&["a", "b", "x"], false),
        "pd318" | "absorption-pcore" | "cor-blocks" | "cor-mixed" | "cor-dual"
        | "cor-weakgroup" => (&["a", "f"], false),
        other => return Err(Error::UnknownTheorem(other.to_string())),
    })
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Instance {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<usize>,
    pub matrices: BTreeMap<String, Mat>,
}

impl Instance {
    fn new(s: Option<usize>) -> Self {
        Self {
            s,
            matrices: BTreeMap::new(),
        }
    }

    fn with(mut self, name: &str, m: Mat) -> Self {
        self.matrices.insert(name.to_string(), m);
        self
    }

    fn get(&self, name: &str) -> Result<&Mat> {
        self.matrices
            .get(name)
            .ok_or_else(|| Error::Domain(format!("missing matrix '{name}'")))
    }
}

/// Runs the named suite on an instance.
pub fn evaluate(theorem: &str, inst: &Instance) -> Result<ConditionReport> {
    let (names, needs_s) = inputs(theorem)?;
    let m: Vec<&Mat> = names.iter().map(|n| inst.get(n)).collect::<Result<_>>()?;
    let s = if needs_s {
        inst.s
            .ok_or_else(|| Error::Domain(format!("{theorem} needs s")))?
    } else {
        0
    };
    match theorem {
        "pd12" => addabs::suite_lemma_pd12(m[0], m[1], m[2]),
        "23" => addabs::suite_lemma_23(m[0], m[1], m[2], m[3]),
        "pd27" => addabs::suite_thm_pd27(m[0], m[1], m[2], m[3], s),
        "pd38" => addabs::absorption_mwd(m[0], m[1], m[2], m[3]),
        "outer" => addabs::suite_outer(m[0], m[1], m[2], m[3]),
        "pd210" => addabs::suite_thm_pd210(m[0], m[1], s),
        "pd318" => addabs::suite_thm_pd318(m[0], m[1]),
        "czwe" => addabs::suite_cor_czwe(m[0], m[1]),
        "wei" => addabs::suite_cor_wei(m[0], m[1]),
        "pd31" => addabs::suite_thm_pd31(m[0], m[1], s),
        "pd32" => addabs::suite_cor_pd32(m[0], m[1], s),
        "pd33" => addabs::suite_thm_pd33(m[0], m[1], s),
        "prop-ep" => addabs::suite_prop_ep(m[0], m[1]),
        "absorption-pcore" => addabs::absorption_pcore(m[0], m[1]),
        "mosic" => addabs::suite_mosic(m[0], m[1], m[2]),
        "cor-blocks" => decomp::suite_cor_coreep_blocks(m[0], m[1]),
        "cor-mixed" => decomp::suite_cor_mixed(m[0], m[1]),
        "cor-dual" => decomp::suite_cor_dual(m[0], m[1]),
        "cor-weakgroup" => decomp::suite_cor_weakgroup(m[0], m[1]),
        _ => unreachable!("inputs() rejected unknown ids"),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FuzzConfig {
    pub n_max: usize,
    pub index_max: usize,
    pub entry_bound: i64,
    pub seed: u64,
}

impl FuzzConfig {
    pub fn new(n_max: usize, index_max: usize, seed: u64) -> Self {
        Self {
            n_max,
            index_max,
            entry_bound: 3,
            seed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Disagreement {
    pub trial: usize,
    pub instance: Instance,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub report: Option<ConditionReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FuzzReport {
    pub theorem: String,
    pub config: FuzzConfig,
    pub trials: usize,
    pub agreements: usize,
    pub precondition_skips: usize,
    /// How many agreeing instances had all conditions true.
    pub all_true: usize,
    pub disagreements: Vec<Disagreement>,
    /// Per label, how often an informational detail came out true.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub detail_counts: BTreeMap<String, usize>,
}

impl FuzzReport {
    pub fn is_clean(&self) -> bool {
        self.disagreements.is_empty()
    }
}

enum Outcome {
    Report(ConditionReport),
    Failed(Instance, Option<ConditionReport>, String),
}

pub fn fuzz_theorem(theorem: &str, cfg: &FuzzConfig, trials: usize) -> Result<FuzzReport> {
    inputs(theorem)?;
    if cfg.n_max == 0 || cfg.index_max == 0 {
        return Err(Error::Domain("n and index bounds must be positive".into()));
    }
    let outcomes: Vec<Outcome> = (0..trials)
        .into_par_iter()
        .map(|t| run_trial(theorem, cfg, t))
        .collect();
    let mut report = FuzzReport {
        theorem: theorem.to_string(),
        config: cfg.clone(),
        trials,
        agreements: 0,
        precondition_skips: 0,
        all_true: 0,
        disagreements: Vec::new(),
        detail_counts: BTreeMap::new(),
    };
    for (trial, outcome) in outcomes.into_iter().enumerate() {
        match outcome {
            Outcome::Report(r) => {
                match r.verdict() {
                    Verdict::Skipped => report.precondition_skips += 1,
                    Verdict::Agree => {
                        report.agreements += 1;
                        if r.all_true() && !r.conditions.is_empty() {
                            report.all_true += 1;
                        }
                    }
                    Verdict::Disagree => unreachable!("disagreements are returned as failures"),
                }
                for (label, v) in &r.details {
                    if *v {
                        *report.detail_counts.entry(label.clone()).or_default() += 1;
                    }
                }
            }
            Outcome::Failed(instance, r, msg) => report.disagreements.push(Disagreement {
                trial,
                instance,
                report: r,
                error: if msg.is_empty() { None } else { Some(msg) },
            }),
        }
    }
    Ok(report)
}

/// Every registered suite, in order.
pub fn fuzz_all(cfg: &FuzzConfig, trials: usize) -> Result<Vec<FuzzReport>> {
    THEOREMS
        .iter()
        .map(|t| fuzz_theorem(t, cfg, trials))
        .collect()
}

fn run_trial(theorem: &str, cfg: &FuzzConfig, trial: usize) -> Outcome {
    let mut rng = InstanceRng::for_trial(cfg.seed, theorem, trial as u64);
    let inst = match generate(theorem, cfg, &mut rng) {
        Ok(i) => i,
        Err(e) => return Outcome::Failed(Instance::new(None), None, format!("generator: {e}")),
    };
    match evaluate(theorem, &inst) {
        Ok(r) if r.verdict() == Verdict::Disagree => {
            let small = minimize(theorem, inst);
            let r = evaluate(theorem, &small).ok();
            Outcome::Failed(small, r, String::new())
        }
        Ok(r) => Outcome::Report(r),
        Err(e) => Outcome::Failed(inst, None, e.to_string()),
    }
}

fn still_disagrees(theorem: &str, inst: &Instance) -> bool {
    matches!(evaluate(theorem, inst), Ok(r) if r.verdict() == Verdict::Disagree)
}

/// Greedy entry zeroing: keep any single-entry zeroing that preserves the
/// disagreement, until no entry can be cleared.
pub fn minimize(theorem: &str, mut inst: Instance) -> Instance {
    let names: Vec<String> = inst.matrices.keys().cloned().collect();
    loop {
        let mut changed = false;
        for name in &names {
            let (rows, cols) = inst.matrices[name].shape();
            for i in 0..rows {
                for j in 0..cols {
                    if num_traits::Zero::is_zero(&inst.matrices[name][(i, j)]) {
                        continue;
                    }
                    let mut trial = inst.clone();
                    trial.matrices.get_mut(name).unwrap()[(i, j)] = num_traits::Zero::zero();
                    if still_disagrees(theorem, &trial) {
                        inst = trial;
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            return inst;
        }
    }
}

/// Which family of perturbation a trial draws.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Slot {
    Positive,
    Negative(usize),
    Random,
}

fn slot(rng: &mut InstanceRng) -> Slot {
    match rng.below(10) {
        0..=5 => Slot::Positive,
        6..=8 => Slot::Negative(rng.below(3) as usize),
        _ => Slot::Random,
    }
}

fn base_matrix(rng: &mut InstanceRng, cfg: &FuzzConfig) -> Result<(Mat, usize)> {
    let n = rng.usize_in(1, cfg.n_max);
    let k = rng.usize_in(1, cfg.index_max.min(n));
    let s = rng.usize_in(1, cfg.index_max);
    Ok((random_with_index(rng, n, k, cfg.entry_bound)?, s))
}

/// Draws a perturbation for `slot`, falling back to an unconstrained matrix
/// when the split of `a` cannot host the requested profile.
fn perturbation(
    rng: &mut InstanceRng,
    a: &Mat,
    slot: Slot,
    positive: Profile,
    negatives: &[Profile],
    s: usize,
    bound: i64,
) -> Result<Mat> {
    let profile = match slot {
        Slot::Positive => positive,
        Slot::Negative(i) => negatives[i % negatives.len()],
        Slot::Random => Profile::Unconstrained,
    };
    match conforming_b(rng, a, profile, s, bound) {
        Err(Error::Profile(_)) => conforming_b(rng, a, Profile::Unconstrained, s, bound),
        other => other,
    }
}

/// Perturbation in coordinates split by the idempotent `e = a a⁺`.
fn perturbation_along(
    rng: &mut InstanceRng,
    a: &Mat,
    e: &Mat,
    slot: Slot,
    s: usize,
    bound: i64,
) -> Result<Mat> {
    let recipe = |lower_nonzero, tail| Recipe {
        upper: Upper::Random,
        lower_nonzero,
        tail,
    };
    let recipe = match slot {
        Slot::Positive => recipe(false, Tail::Nilpotent),
        Slot::Negative(0) => recipe(true, Tail::Nilpotent),
        Slot::Negative(_) => recipe(false, Tail::NonNilpotent),
        Slot::Random => return Ok(rng.matrix(a.rows(), a.cols(), bound)),
    };
    let coords = Coords::along(a, e)?;
    match build_in(rng, a, &coords, recipe, s, bound) {
        Err(Error::Profile(_)) => Ok(rng.matrix(a.rows(), a.cols(), bound)),
        other => other,
    }
}

/// A member of `T_l(a)`: `a^D` one time in four, otherwise a random sample.
fn tl_member(rng: &mut InstanceRng, base: &WeakDrazinBase, bound: i64) -> Result<Mat> {
    if rng.chance(1, 4) {
        return Ok(base.drazin().clone());
    }
    let n = base.base().rows();
    base.tl_value(&rng.matrix(n, n, bound))
}

fn generate(theorem: &str, cfg: &FuzzConfig, rng: &mut InstanceRng) -> Result<Instance> {
    use Profile::*;
    let bound = cfg.entry_bound;
    let (a, s) = base_matrix(rng, cfg)?;
    let n = a.rows();
    let sl = slot(rng);
    let inst = match theorem {
        "pd12" | "23" | "pd27" => {
            let base = WeakDrazinBase::new(&a)?;
            let aplus = tl_member(rng, &base, bound)?;
            let apm = tl_member(rng, &base, bound)?;
            let b = perturbation_along(rng, &a, &(&a * &aplus), sl, s, bound)?;
            let mut inst = Instance::new((theorem == "pd27").then_some(s))
                .with("a", a)
                .with("aplus", aplus)
                .with("b", b);
            if theorem != "pd12" {
                inst = inst.with("apm", apm);
            }
            inst
        }
        "pd38" => {
            let base = WeakDrazinBase::new(&a)?;
            let aplus = tl_member(rng, &base, bound)?;
            let b = perturbation_along(rng, &a, &(&a * &aplus), sl, n, bound)?;
            let f = &a + &b;
            let fbase = WeakDrazinBase::new(&f)?;
            let id = Mat::identity(n);
            let formula = (&id + &(&aplus * &b))
                .inverse()
                .ok()
                .map(|al| &al * &aplus)
                .filter(|c| fbase.tl_contains(c).unwrap_or(false));
            let fplus = match (sl, formula) {
                (Slot::Positive, Some(c)) => c,
                _ => tl_member(rng, &fbase, bound)?,
            };
            Instance::new(None)
                .with("a", a)
                .with("aplus", aplus)
                .with("f", f)
                .with("fplus", fplus)
        }
        "outer" => {
            let b = rng.matrix(n, n, bound);
            let f = &a + &b;
            let t = rng.usize_in(1, n);
            let x = random_outer_inverse(rng, &a, t, bound).unwrap_or_else(|| Mat::zeros(n, n));
            let y = match sl {
                Slot::Positive => (&Mat::identity(n) + &(&x * &b))
                    .inverse()
                    .map(|m| &m * &x)
                    .unwrap_or_else(|_| Mat::zeros(n, n)),
                _ => {
                    let t = rng.usize_in(1, n);
                    random_outer_inverse(rng, &f, t, bound).unwrap_or_else(|| Mat::zeros(n, n))
                }
            };
            Instance::new(None)
                .with("a", a)
                .with("x", x)
                .with("f", f)
                .with("y", y)
        }
        "pd210" | "pd318" | "cor-dual" => {
            let b = perturbation(
                rng,
                &a,
                sl,
                CommutingBlocks,
                &[NegativeB3, NegativeB2, NegativeTail],
                s,
                bound,
            )?;
            match theorem {
                "pd210" => Instance::new(Some(s)).with("a", a).with("b", b),
                _ => {
                    let f = &a + &b;
                    Instance::new(None).with("a", a).with("f", f)
                }
            }
        }
        "czwe" => {
            let b = match sl {
                Slot::Positive => czwe_b(rng, &a, false, bound)?,
                Slot::Negative(_) => match czwe_b(rng, &a, true, bound) {
                    Err(Error::Profile(_)) => czwe_b(rng, &a, false, bound)?,
                    other => other?,
                },
                Slot::Random => rng.matrix(n, n, bound),
            };
            Instance::new(None).with("a", a).with("b", b)
        }
        "wei" => {
            let e = match sl {
                Slot::Positive => wei_e(rng, &a, false, bound)?,
                Slot::Negative(_) => match wei_e(rng, &a, true, bound) {
                    Err(Error::Profile(_)) => rng.matrix(n, n, bound),
                    other => other?,
                },
                Slot::Random => rng.matrix(n, n, bound),
            };
            Instance::new(None).with("a", a).with("e", e)
        }
        "pd31" | "pd32" | "absorption-pcore" | "cor-blocks" => {
            let b = perturbation(
                rng,
                &a,
                sl,
                ProjectorCompatible,
                &[NegativeProjectorB3, NegativeProjectorTail, NegativeB3],
                s,
                bound,
            )?;
            if theorem.starts_with("pd") {
                Instance::new(Some(s)).with("a", a).with("b", b)
            } else {
                let f = &a + &b;
                Instance::new(None).with("a", a).with("f", f)
            }
        }
        "pd33" | "cor-mixed" => {
            let b = perturbation(
                rng,
                &a,
                sl,
                DmpCompatible,
                &[
                    NegativeProjectorB2,
                    NegativeProjectorB3,
                    NegativeProjectorTail,
                ],
                s,
                bound,
            )?;
            if theorem == "pd33" {
                Instance::new(Some(s)).with("a", a).with("b", b)
            } else {
                let f = &a + &b;
                Instance::new(None).with("a", a).with("f", f)
            }
        }
        "prop-ep" => {
            let b = perturbation(
                rng,
                &a,
                sl,
                EpCompatible,
                &[ProjectorCompatible, NegativeProjectorB3, DmpCompatible],
                s,
                bound,
            )?;
            Instance::new(None).with("a", a).with("b", b)
        }
        "cor-weakgroup" => {
            let b = perturbation(
                rng,
                &a,
                sl,
                WeakGroupCompatible,
                &[
                    ProjectorCompatible,
                    NegativeProjectorB3,
                    NegativeProjectorTail,
                ],
                s,
                bound,
            )?;
            let f = &a + &b;
            Instance::new(None).with("a", a).with("f", f)
        }
        "mosic" => {
            let base = WeakDrazinBase::new(&a)?;
            let x = tl_member(rng, &base, bound)?;
            let b = match sl {
                Slot::Positive => {
                    let ak = a.pow(base.index());
                    &(&ak * &rng.matrix(n, n, bound)) * &(&x * &a)
                }
                Slot::Negative(_) => {
                    // Breaks only the row-space hypothesis.
                    &a.pow(base.index()) * &rng.matrix(n, n, bound)
                }
                Slot::Random => rng.matrix(n, n, bound),
            };
            Instance::new(None).with("a", a).with("b", b).with("x", x)
        }
        other => return Err(Error::UnknownTheorem(other.to_string())),
    };
    Ok(inst)
}

/// The curated 2x2 pair that separates the pseudo core conditions.
pub fn curated_instance(theorem: &str) -> Result<Instance> {
    let a0 = Mat::from_ints(&[[1, 1], [0, 0]]);
    let b0 = Mat::from_ints(&[[1, 0], [0, 0]]);
    let (names, needs_s) = inputs(theorem)?;
    let mut inst = Instance::new(needs_s.then_some(1));
    for name in names {
        let m = match *name {
            "a" => a0.clone(),
            "b" | "e" => b0.clone(),
            "f" => &a0 + &b0,
            "aplus" | "x" => geninv::pseudo_core(&a0)?.inverse,
            "apm" => geninv::drazin(&a0)?.inverse,
            "fplus" | "y" => geninv::pseudo_core(&(&a0 + &b0))?.inverse,
            other => return Err(Error::Domain(format!("no curated value for {other}"))),
        };
        inst.matrices.insert(name.to_string(), m);
    }
    Ok(inst)
}
